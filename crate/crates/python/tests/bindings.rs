use omql::{check_laws, reconstruct, star, tense, Names, Poset, TimeFrame};
use pyo3::prelude::*;

#[test]
fn connectives_and_tense_through_the_wrappers() {
    let a = Poset::builtin("fig1").unwrap();
    let f = TimeFrame::chain_le(3);
    let imp = a.imp(
        Names::Many(vec!["a".into(), "b".into()]),
        Names::Many(vec!["f".into(), "i".into()]),
    );
    assert_eq!(imp.unwrap(), ["a'", "b'"]);
    assert_eq!(a.inv("a'").unwrap(), "a");
    let q: Vec<String> = ["b'", "a'", "a'"].map(String::from).to_vec();
    assert_eq!(
        tense(&a, &f, "G", q).unwrap(),
        [vec!["f", "i"], vec!["a'"], vec!["a'"]]
    );
    let r: Vec<String> = ["a", "b", "b"].map(String::from).to_vec();
    let pp = star(&a, &f, "P", "P", r).unwrap();
    assert_eq!(pp[0], ["a"]);
}

#[test]
fn reports_and_reconstruction() {
    let a = Poset::builtin("bool2").unwrap();
    let f = TimeFrame::chain_le(2);
    let laws = check_laws(&a, &f, true, None, None, 100_000).unwrap();
    assert_eq!(laws.len(), 28);
    assert!(laws.iter().all(|r| r.passed()));
    let rec = reconstruct(&a, &f, "star", None, None, 100_000).unwrap();
    assert!(rec.contains_original && rec.definitive);
    assert_eq!(rec.relation, f.matrix());
}

#[test]
fn errors_become_python_exceptions() {
    Python::attach(|py| {
        let a = Poset::builtin("fig1").unwrap();
        let f = TimeFrame::chain_lt(3);
        let e = tense(&a, &f, "P", ["a", "b", "c"].map(String::from).to_vec()).unwrap_err();
        assert!(e.is_instance_of::<pyo3::exceptions::PyValueError>(py));
        assert!(e.to_string().contains("fiber"), "{e}");
        assert!(Poset::builtin("nope").is_err());
    });
}
