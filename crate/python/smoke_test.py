"""Smoke test for the omql extension module.

Build it first, e.g. `maturin develop -m crates/python/Cargo.toml`, or
`cargo build -p omql-py --release --features extension-module` and copy
target/release/libomql.so to omql.so somewhere on PYTHONPATH.
"""

import omql


def main():
    a = omql.Poset.builtin("fig1")
    assert len(a) == 20
    assert a.imp(["a", "b"], ["f", "i"]) == ["a'", "b'"]
    assert a.odot("a", "a") == ["a"]
    assert a.compare("le1", ["a", "b"], ["f'", "i'"])
    assert a.is_valid()
    assert len(a.cover_pairs()) == 54

    t = omql.TimeFrame.chain_le(3)
    assert omql.tense(a, t, "G", ["b'", "a'", "a'"]) == [["f", "i"], ["a'"], ["a'"]]
    assert omql.star(a, t, "P", "P", ["a", "b", "b"])[0] == ["a"]

    reports = omql.check_dynamic_pair(a, t, "PG", sample=50, seed=1)
    assert all(r.passed for r in reports), [r.line for r in reports]

    rec = omql.reconstruct(a, t, "star")
    assert rec.contains_original and rec.extra == []

    try:
        omql.tense(a, omql.TimeFrame.chain_lt(3), "P", ["a", "b", "c"])
    except omql.OmqlError as e:
        assert "fiber" in str(e)
    else:
        raise AssertionError("non-serial frame accepted")

    print(omql.example1(), end="")
    print("smoke test ok")


if __name__ == "__main__":
    main()
