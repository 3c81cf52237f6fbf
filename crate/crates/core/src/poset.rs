//! Finite bounded posets with an antitone involution.
//!
//! The order is stored twice, as principal up-sets and principal down-sets,
//! so cones reduce to word-wise intersections.

use std::collections::HashMap;
use std::fmt;

use crate::error::{OmqlError, Result};
use crate::subset::{Elem, Subset};

#[derive(Clone)]
pub struct OmpPoset {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    /// `up[a]` = { x | a ≤ x }
    up: Vec<Subset>,
    /// `down[a]` = { x | x ≤ a }
    down: Vec<Subset>,
    inv: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    /// Row-major n×n tables of sup/inf where they exist.
    joins: Vec<Option<Elem>>,
    meets: Vec<Option<Elem>>,
}

impl fmt::Debug for OmpPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OmpPoset")
            .field("elements", &self.names)
            .finish_non_exhaustive()
    }
}

impl OmpPoset {
    /// Builds a poset from a full order matrix and an involution table.
    ///
    /// Only structural shape is checked here (square matrix, permutation,
    /// unique names, existing bounds); the order and orthomodular axioms are
    /// left to [`crate::validate::validate_omp`] so that broken inputs can be
    /// reported with witnesses.
    pub fn from_matrix(names: Vec<String>, leq: Vec<Vec<bool>>, inv: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(OmqlError::Malformed("poset has no elements".into()));
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(OmqlError::Malformed(format!("order matrix is not {n}x{n}")));
        }
        if inv.len() != n {
            return Err(OmqlError::Malformed(format!(
                "involution table has {} entries for {n} elements",
                inv.len()
            )));
        }
        let mut seen = vec![false; n];
        for &j in &inv {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(OmqlError::Malformed(
                    "involution table is not a permutation".into(),
                ));
            }
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), Elem::new(i)).is_some() {
                return Err(OmqlError::Malformed(format!("duplicate element `{name}`")));
            }
        }

        let mut up = vec![Subset::empty(n); n];
        let mut down = vec![Subset::empty(n); n];
        for (a, row) in leq.iter().enumerate() {
            for (b, &le) in row.iter().enumerate() {
                if le {
                    up[a].insert(Elem::new(b));
                    down[b].insert(Elem::new(a));
                }
            }
        }
        let find_bound = |cones: &[Subset], what: &str| -> Result<Elem> {
            let full = Subset::full(n);
            let hits: Vec<usize> = (0..n).filter(|&i| cones[i] == full).collect();
            match hits.as_slice() {
                [i] => Ok(Elem::new(*i)),
                [] => Err(OmqlError::Malformed(format!("no {what} element"))),
                _ => Err(OmqlError::Malformed(format!(
                    "{what} element is not unique"
                ))),
            }
        };
        let bottom = find_bound(&up, "bottom")?;
        let top = find_bound(&down, "top")?;

        let mut poset = OmpPoset {
            names,
            index,
            up,
            down,
            inv: inv.into_iter().map(Elem::new).collect(),
            bottom,
            top,
            joins: Vec::new(),
            meets: Vec::new(),
        };
        let (joins, meets) = poset.bound_tables();
        poset.joins = joins;
        poset.meets = meets;
        Ok(poset)
    }

    fn bound_tables(&self) -> (Vec<Option<Elem>>, Vec<Option<Elem>>) {
        let n = self.len();
        let mut joins = Vec::with_capacity(n * n);
        let mut meets = Vec::with_capacity(n * n);
        for a in self.elems() {
            for b in self.elems() {
                let ub = self.up[a.index()].intersection(&self.up[b.index()]);
                joins.push(self.minimal(&ub).as_singleton());
                let lb = self.down[a.index()].intersection(&self.down[b.index()]);
                meets.push(self.maximal(&lb).as_singleton());
            }
        }
        (joins, meets)
    }

    pub(crate) fn override_bounds(&mut self, bottom: Option<Elem>, top: Option<Elem>) {
        if let Some(b) = bottom {
            self.bottom = b;
        }
        if let Some(t) = top {
            self.top = t;
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.len()).map(Elem::new)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.index()]
    }

    /// Looks up an element by display name.
    pub fn element(&self, name: &str) -> Result<Elem> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| OmqlError::UnknownElement(name.to_string()))
    }

    /// Validates a raw index against this poset.
    pub fn elem_at(&self, index: usize) -> Result<Elem> {
        if index < self.len() {
            Ok(Elem::new(index))
        } else {
            Err(OmqlError::ForeignElement {
                index,
                size: self.len(),
            })
        }
    }

    pub fn check(&self, e: Elem) -> Result<Elem> {
        self.elem_at(e.index())
    }

    pub fn check_subset(&self, s: &Subset) -> Result<()> {
        s.check_universe(self.len())
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a.index()]
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a.index()].contains(b)
    }

    pub fn try_leq(&self, a: Elem, b: Elem) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.leq(a, b))
    }

    /// a ≤ b′, which is symmetric in a and b for an antitone involution.
    pub fn orthogonal(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, self.inv(b))
    }

    /// Principal up-set of `a`.
    pub fn above(&self, a: Elem) -> &Subset {
        &self.up[a.index()]
    }

    /// Principal down-set of `a`.
    pub fn below(&self, a: Elem) -> &Subset {
        &self.down[a.index()]
    }

    pub fn empty_set(&self) -> Subset {
        Subset::empty(self.len())
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn singleton(&self, a: Elem) -> Subset {
        Subset::singleton(self.len(), a)
    }

    /// Builds a subset from element names.
    pub fn subset<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> Result<Subset> {
        let mut s = self.empty_set();
        for name in names {
            s.insert(self.element(name)?);
        }
        Ok(s)
    }

    /// U(B): every element above all of `b`. U(∅) = A.
    pub fn upper_cone(&self, b: &Subset) -> Subset {
        let mut acc = self.full_set();
        for e in b.iter() {
            acc.intersect_with(&self.up[e.index()]);
        }
        acc
    }

    /// L(B): every element below all of `b`. L(∅) = A.
    pub fn lower_cone(&self, b: &Subset) -> Subset {
        let mut acc = self.full_set();
        for e in b.iter() {
            acc.intersect_with(&self.down[e.index()]);
        }
        acc
    }

    /// Maximal elements of `b`; empty iff `b` is empty.
    pub fn maximal(&self, b: &Subset) -> Subset {
        let mut out = self.empty_set();
        for x in b.iter() {
            if self.up[x.index()].intersection(b).is_singleton() {
                out.insert(x);
            }
        }
        out
    }

    /// Minimal elements of `b`; empty iff `b` is empty.
    pub fn minimal(&self, b: &Subset) -> Subset {
        let mut out = self.empty_set();
        for x in b.iter() {
            if self.down[x.index()].intersection(b).is_singleton() {
                out.insert(x);
            }
        }
        out
    }

    /// Max B for non-empty B.
    pub fn max_of(&self, b: &Subset) -> Result<Subset> {
        self.check_subset(b)?;
        b.require_non_empty("Max")?;
        Ok(self.maximal(b))
    }

    /// Min B for non-empty B.
    pub fn min_of(&self, b: &Subset) -> Result<Subset> {
        self.check_subset(b)?;
        b.require_non_empty("Min")?;
        Ok(self.minimal(b))
    }

    /// Min U(B), the set the past/future operators and ⊙ draw from.
    pub fn min_upper(&self, b: &Subset) -> Subset {
        self.minimal(&self.upper_cone(b))
    }

    /// Max L(B).
    pub fn max_lower(&self, b: &Subset) -> Subset {
        self.maximal(&self.lower_cone(b))
    }

    /// sup(a, b) if it exists.
    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.joins[a.index() * self.len() + b.index()]
    }

    /// inf(a, b) if it exists.
    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.meets[a.index() * self.len() + b.index()]
    }

    /// a ∨ B = { a ∨ b | b ∈ B }; every join must exist.
    pub fn pointwise_join(&self, a: Elem, b: &Subset) -> Result<Subset> {
        self.check(a)?;
        self.check_subset(b)?;
        let mut out = self.empty_set();
        for x in b.iter() {
            let j = self.join(a, x).ok_or_else(|| self.partial("join", a, x))?;
            out.insert(j);
        }
        Ok(out)
    }

    /// a ∧ B = { a ∧ b | b ∈ B }; every meet must exist.
    pub fn pointwise_meet(&self, a: Elem, b: &Subset) -> Result<Subset> {
        self.check(a)?;
        self.check_subset(b)?;
        let mut out = self.empty_set();
        for x in b.iter() {
            let m = self.meet(a, x).ok_or_else(|| self.partial("meet", a, x))?;
            out.insert(m);
        }
        Ok(out)
    }

    fn partial(&self, op: &'static str, a: Elem, b: Elem) -> OmqlError {
        OmqlError::Partial {
            op,
            a: self.name(a).to_string(),
            b: self.name(b).to_string(),
        }
    }

    /// B′ = { b′ | b ∈ B }.
    pub fn inv_set(&self, b: &Subset) -> Subset {
        Subset::from_elems(self.len(), b.iter().map(|e| self.inv(e)))
    }

    /// Renders a subset the way the tables print it: a singleton as the bare
    /// name, anything else as `{x,y,...}` in declaration order.
    pub fn fmt_subset(&self, s: &Subset) -> String {
        if let Some(e) = s.as_singleton() {
            return self.name(e).to_string();
        }
        let parts: Vec<&str> = s.iter().map(|e| self.name(e)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Member names in declaration order.
    pub fn subset_names(&self, s: &Subset) -> Vec<String> {
        s.iter().map(|e| self.name(e).to_string()).collect()
    }
}

/// Incremental construction from cover or order pairs.
#[derive(Debug, Default, Clone)]
pub struct PosetBuilder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    pairs: Vec<(usize, usize)>,
    inv: HashMap<usize, usize>,
    bottom: Option<usize>,
    top: Option<usize>,
}

impl PosetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn element(&mut self, name: &str) -> Result<&mut Self> {
        if self.index.contains_key(name) {
            return Err(OmqlError::Malformed(format!("duplicate element `{name}`")));
        }
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        Ok(self)
    }

    fn lookup(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| OmqlError::UnknownElement(name.to_string()))
    }

    /// Records lo ≤ hi; cover pairs and arbitrary order pairs are treated alike
    /// since the closure is taken at build time.
    pub fn le(&mut self, lo: &str, hi: &str) -> Result<&mut Self> {
        let pair = (self.lookup(lo)?, self.lookup(hi)?);
        self.pairs.push(pair);
        Ok(self)
    }

    pub fn inv(&mut self, a: &str, b: &str) -> Result<&mut Self> {
        let (ia, ib) = (self.lookup(a)?, self.lookup(b)?);
        for (x, y) in [(ia, ib), (ib, ia)] {
            match self.inv.insert(x, y) {
                Some(prev) if prev != y => {
                    return Err(OmqlError::Malformed(format!(
                        "conflicting complements for `{}`",
                        self.names[x]
                    )))
                }
                _ => {}
            }
        }
        Ok(self)
    }

    pub fn bottom(&mut self, name: &str) -> Result<&mut Self> {
        self.bottom = Some(self.lookup(name)?);
        Ok(self)
    }

    pub fn top(&mut self, name: &str) -> Result<&mut Self> {
        self.top = Some(self.lookup(name)?);
        Ok(self)
    }

    /// Takes the reflexive-transitive closure, rejects cycles and hands the
    /// result to [`OmpPoset::from_matrix`].
    #[allow(clippy::needless_range_loop)]
    pub fn build(&self) -> Result<OmpPoset> {
        let n = self.names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &self.pairs {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(OmqlError::Malformed(format!(
                        "order is not antisymmetric: `{}` and `{}` lie on a cycle",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }
        let mut inv = Vec::with_capacity(n);
        for (i, name) in self.names.iter().enumerate() {
            match self.inv.get(&i) {
                Some(&j) => inv.push(j),
                None => {
                    return Err(OmqlError::Malformed(format!(
                        "no complement declared for `{name}`"
                    )))
                }
            }
        }
        let mut poset = OmpPoset::from_matrix(self.names.clone(), leq, inv)?;
        poset.override_bounds(self.bottom.map(Elem::new), self.top.map(Elem::new));
        Ok(poset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(p: &OmpPoset, s: &Subset) -> Vec<String> {
        p.subset_names(s)
    }

    #[test]
    fn fig1_basic_order() {
        let p = fixtures::fig1();
        let e = |n: &str| p.element(n).unwrap();
        assert!(p.leq(p.bottom(), e("a")));
        assert!(!p.leq(e("a"), e("a'")));
        assert!(p.leq(e("a"), e("i'")));
        assert!(!p.orthogonal(e("a"), e("b")));
        assert!(p.orthogonal(e("a"), e("a'")));
        assert!(p.elems().all(|x| p.orthogonal(p.bottom(), x)));
    }

    #[test]
    fn fig1_cones() {
        let p = fixtures::fig1();
        let ab = p.subset(["a", "b"]).unwrap();
        assert_eq!(names(&p, &p.upper_cone(&ab)), ["f'", "i'", "1"]);
        let fi = p.subset(["i'", "f'"]).unwrap();
        assert_eq!(names(&p, &p.lower_cone(&fi)), ["0", "a", "b"]);
        assert_eq!(p.upper_cone(&p.singleton(p.bottom())), p.full_set());
        assert_eq!(p.upper_cone(&p.empty_set()), p.full_set());

        assert_eq!(
            names(&p, &p.max_of(&p.lower_cone(&fi)).unwrap()),
            ["a", "b"]
        );
        assert_eq!(
            names(&p, &p.min_of(&p.upper_cone(&ab)).unwrap()),
            ["f'", "i'"]
        );
        let a = p.subset(["a"]).unwrap();
        assert_eq!(p.max_of(&a).unwrap(), a);
    }

    #[test]
    fn max_of_empty_is_an_error() {
        let p = fixtures::fig1();
        assert!(matches!(
            p.max_of(&p.empty_set()),
            Err(OmqlError::EmptyOperand(_))
        ));
        assert!(p.min_of(&p.empty_set()).is_err());
    }

    #[test]
    fn fig1_partial_operations() {
        let p = fixtures::fig1();
        let e = |n: &str| p.element(n).unwrap();
        assert_eq!(p.join(e("a"), p.bottom()), Some(e("a")));
        assert_eq!(p.join(e("a"), e("b")), None);
        assert_eq!(p.meet(e("i'"), e("f'")), None);
        assert_eq!(p.meet(e("i'"), e("b'")), Some(e("d")));

        let bp = p.subset(["b'"]).unwrap();
        assert_eq!(names(&p, &p.pointwise_meet(e("i'"), &bp).unwrap()), ["d"]);
        let b = p.subset(["a", "c'", "f"]).unwrap();
        assert_eq!(p.pointwise_join(p.bottom(), &b).unwrap(), b);
        let a = p.subset(["a"]).unwrap();
        assert_eq!(
            p.pointwise_meet(e("a'"), &a).unwrap(),
            p.singleton(p.bottom())
        );
        match p.pointwise_join(e("a"), &p.subset(["b"]).unwrap()) {
            Err(OmqlError::Partial { op, a, b }) => {
                assert_eq!((op, a.as_str(), b.as_str()), ("join", "a", "b"));
            }
            other => panic!("expected partiality error, got {other:?}"),
        }
    }

    #[test]
    fn foreign_elements_rejected() {
        let p = fixtures::boolean(1);
        assert!(matches!(
            p.try_leq(Elem::new(0), Elem::new(7)),
            Err(OmqlError::ForeignElement { index: 7, size: 2 })
        ));
        let other = Subset::empty(20);
        assert!(matches!(
            p.max_of(&other),
            Err(OmqlError::UniverseMismatch { .. })
        ));
        assert!(p.element("zz").is_err());
    }

    #[test]
    fn builder_rejects_cycles_and_missing_complements() {
        let mut b = PosetBuilder::new();
        b.element("0")
            .unwrap()
            .element("x")
            .unwrap()
            .element("1")
            .unwrap();
        b.le("0", "x")
            .unwrap()
            .le("x", "1")
            .unwrap()
            .le("1", "0")
            .unwrap();
        b.inv("0", "1").unwrap();
        assert!(matches!(b.build(), Err(OmqlError::Malformed(_))));

        let mut b = PosetBuilder::new();
        b.element("0").unwrap().element("1").unwrap();
        b.le("0", "1").unwrap();
        assert!(b.build().is_err());
        b.inv("0", "1").unwrap();
        assert!(b.build().is_ok());
        assert!(b.clone().inv("0", "0").is_err());
    }

    #[test]
    fn from_matrix_structural_errors() {
        let names = vec!["0".to_string(), "1".to_string()];
        let leq = vec![vec![true, true], vec![false, true]];
        assert!(OmpPoset::from_matrix(names.clone(), vec![vec![true]], vec![1, 0]).is_err());
        assert!(OmpPoset::from_matrix(names.clone(), leq.clone(), vec![1, 1]).is_err());
        assert!(OmpPoset::from_matrix(names, leq, vec![1, 0]).is_ok());
    }

    #[test]
    fn de_morgan_through_inv() {
        let p = fixtures::fig1();
        for a in p.elems() {
            for b in p.elems() {
                let s = Subset::from_elems(p.len(), [a, b]);
                assert_eq!(p.upper_cone(&p.inv_set(&s)), p.inv_set(&p.lower_cone(&s)));
            }
        }
    }
}
