//! A closed expression language over bound valuations and a prefix parser
//! for it.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr := ident
//!       | ("P" | "F" | "H" | "G" | "phi" | "prime") "(" expr ")"
//!       | ("odot" | "imp") "(" expr "," expr ")"
//! ```

use std::collections::BTreeMap;
use std::fmt;

use super::universe::Coverage;
use super::{LawReport, Witness};
use crate::connectives::{imp_setval, odot_setval};
use crate::error::{OmqlError, Result};
use crate::frame::TimeFrame;
use crate::order::{cmp_families, first_violation, Comparison, RelationKind};
use crate::poset::OmpPoset;
use crate::tense::{tense, tense_family, TenseOp};
use crate::valuation::{phi, SetValuation, Valuation, ValuationFamily, DEFAULT_PHI_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    Tense(TenseOp, Box<Expr>),
    Phi(Box<Expr>),
    Odot(Box<Expr>, Box<Expr>),
    Imp(Box<Expr>, Box<Expr>),
    Prime(Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn tense(op: TenseOp, e: Expr) -> Expr {
        Expr::Tense(op, Box::new(e))
    }

    pub fn phi(e: Expr) -> Expr {
        Expr::Phi(Box::new(e))
    }

    pub fn odot(a: Expr, b: Expr) -> Expr {
        Expr::Odot(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Expr, b: Expr) -> Expr {
        Expr::Imp(Box::new(a), Box::new(b))
    }

    pub fn prime(e: Expr) -> Expr {
        Expr::Prime(Box::new(e))
    }

    pub fn parse(src: &str) -> Result<Expr> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(OmqlError::Type(format!(
                "unexpected `{}` after expression",
                p.tokens[p.pos]
            )));
        }
        Ok(e)
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, bare: bool) -> fmt::Result {
        let infix = |f: &mut fmt::Formatter<'_>, a: &Expr, sym: &str, b: &Expr| {
            if !bare {
                f.write_str("(")?;
            }
            a.render(f, false)?;
            f.write_str(sym)?;
            b.render(f, false)?;
            if !bare {
                f.write_str(")")?;
            }
            Ok(())
        };
        match self {
            Expr::Var(v) => f.write_str(v),
            Expr::Tense(op, e) => {
                write!(f, "{op}(")?;
                e.render(f, true)?;
                f.write_str(")")
            }
            Expr::Phi(e) => {
                f.write_str("φ(")?;
                e.render(f, true)?;
                f.write_str(")")
            }
            Expr::Odot(a, b) => infix(f, a, "⊙", b),
            Expr::Imp(a, b) => infix(f, a, "→", b),
            Expr::Prime(e) => {
                e.render(f, false)?;
                f.write_str("′")
            }
        }
    }
}

/// Paper-style rendering: `H(φ(p⊙q))`, `(H(p)⊙H(q))`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Open,
    Close,
    Comma,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => f.write_str(s),
            Token::Open => f.write_str("("),
            Token::Close => f.write_str(")"),
            Token::Comma => f.write_str(","),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            ',' => {
                chars.next();
                out.push(Token::Comma);
            }
            c if c.is_alphanumeric() || c == '_' || c == '\'' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(s));
            }
            other => return Err(OmqlError::Type(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(OmqlError::Type(format!("expected `{want}`, found `{t}`"))),
            None => Err(OmqlError::Type(format!(
                "expected `{want}`, found end of input"
            ))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let name = match self.next() {
            Some(Token::Ident(s)) => s,
            Some(t) => return Err(OmqlError::Type(format!("expected a name, found `{t}`"))),
            None => return Err(OmqlError::Type("empty expression".into())),
        };
        if self.tokens.get(self.pos) != Some(&Token::Open) {
            return Ok(Expr::Var(name));
        }
        self.pos += 1;
        let first = self.expr()?;
        let e = match name.as_str() {
            "P" | "F" | "H" | "G" => Expr::tense(name.parse()?, first),
            "phi" => Expr::phi(first),
            "prime" => Expr::prime(first),
            "odot" | "imp" => {
                self.expect(Token::Comma)?;
                let second = self.expr()?;
                if name == "odot" {
                    Expr::odot(first, second)
                } else {
                    Expr::imp(first, second)
                }
            }
            other => return Err(OmqlError::Type(format!("unknown function `{other}`"))),
        };
        self.expect(Token::Close)?;
        Ok(e)
    }
}

/// Result of evaluating an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Exact(Valuation),
    Set(SetValuation),
    Family(ValuationFamily),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Exact(_) => "valuation",
            Value::Set(_) => "set-valuation",
            Value::Family(_) => "valuation family",
        }
    }

    /// Valuations are read as singleton-valued set-valuations.
    pub fn as_setvaluation(&self, poset: &OmpPoset) -> Result<SetValuation> {
        match self {
            Value::Exact(q) => Ok(q.lift(poset)),
            Value::Set(x) => Ok(x.clone()),
            Value::Family(_) => Err(OmqlError::Type(
                "a valuation family cannot be used as a set-valuation; apply a tense operator"
                    .into(),
            )),
        }
    }

    fn time_len(&self) -> usize {
        match self {
            Value::Exact(q) => q.len(),
            Value::Set(x) => x.len(),
            Value::Family(b) => b.time_len(),
        }
    }

    /// Rendered per time point; families render their member list.
    pub fn render(&self, poset: &OmpPoset) -> Vec<String> {
        match self {
            Value::Exact(q) => q
                .values()
                .iter()
                .map(|&e| poset.name(e).to_string())
                .collect(),
            Value::Set(x) => x.render(poset),
            Value::Family(b) => b
                .enumerate(DEFAULT_PHI_CAP)
                .map(|ms| ms.iter().map(|q| q.render(poset)).collect())
                .unwrap_or_else(|_| vec![format!("<family of {} valuations>", b.size())]),
        }
    }
}

pub type Bindings = BTreeMap<String, Value>;

/// Evaluation context.
pub struct Env<'a> {
    pub poset: &'a OmpPoset,
    pub frame: &'a TimeFrame,
    pub bindings: Bindings,
}

impl<'a> Env<'a> {
    pub fn new(poset: &'a OmpPoset, frame: &'a TimeFrame) -> Self {
        Env {
            poset,
            frame,
            bindings: Bindings::new(),
        }
    }

    pub fn bind(&mut self, name: &str, value: Value) -> Result<()> {
        match &value {
            Value::Exact(q) => q.check(self.poset, self.frame.len())?,
            Value::Set(x) => x.check(self.poset, self.frame.len())?,
            Value::Family(b) if b.time_len() != self.frame.len() => {
                return Err(OmqlError::TimeMismatch {
                    expected: self.frame.len(),
                    found: b.time_len(),
                })
            }
            Value::Family(_) => {}
        }
        self.bindings.insert(name.to_string(), value);
        Ok(())
    }

    pub fn eval(&self, e: &Expr) -> Result<Value> {
        let poset = self.poset;
        Ok(match e {
            Expr::Var(v) => self
                .bindings
                .get(v)
                .cloned()
                .ok_or_else(|| OmqlError::Type(format!("unbound variable `{v}`")))?,
            Expr::Tense(op, inner) => match self.eval(inner)? {
                Value::Exact(q) => Value::Set(tense(poset, self.frame, *op, &q)?),
                Value::Family(b) => Value::Set(tense_family(poset, self.frame, *op, &b)?),
                Value::Set(x) => match x.as_exact() {
                    Some(q) => Value::Set(tense(poset, self.frame, *op, &q)?),
                    None => {
                        return Err(OmqlError::Type(format!(
                        "{op} takes a valuation or a family; wrap the set-valuation {inner} in φ"
                    )))
                    }
                },
            },
            Expr::Phi(inner) => match self.eval(inner)? {
                Value::Exact(q) => Value::Family(ValuationFamily::singleton(q)),
                Value::Set(x) => Value::Family(phi(&x)),
                Value::Family(_) => {
                    return Err(OmqlError::Type(
                        "φ takes a set-valuation, found a family".into(),
                    ))
                }
            },
            Expr::Odot(a, b) | Expr::Imp(a, b) => {
                let x = self.eval(a)?.as_setvaluation(poset)?;
                let y = self.eval(b)?.as_setvaluation(poset)?;
                if x.len() != y.len() {
                    return Err(OmqlError::TimeMismatch {
                        expected: x.len(),
                        found: y.len(),
                    });
                }
                Value::Set(match e {
                    Expr::Odot(..) => odot_setval(poset, &x, &y)?,
                    _ => imp_setval(poset, &x, &y)?,
                })
            }
            Expr::Prime(inner) => match self.eval(inner)? {
                Value::Exact(q) => Value::Exact(q.prime(poset)),
                Value::Set(x) => Value::Set(x.prime(poset)),
                Value::Family(b) => Value::Family(b.prime(poset)),
            },
        })
    }
}

/// Whether `lhs cmp rhs` holds; families compare as families, anything else
/// pointwise as set-valuations. Returns the failing time point if known.
fn compare(env: &Env, cmp: Comparison, lhs: &Value, rhs: &Value) -> Result<(bool, Option<usize>)> {
    if lhs.time_len() != rhs.time_len() {
        return Err(OmqlError::TimeMismatch {
            expected: lhs.time_len(),
            found: rhs.time_len(),
        });
    }
    let poset = env.poset;
    match (lhs, rhs) {
        (Value::Family(b), Value::Family(c)) => {
            let rel = |k| cmp_families(poset, k, b, c, DEFAULT_PHI_CAP);
            let back = |k| cmp_families(poset, k, c, b, DEFAULT_PHI_CAP);
            let ok = match cmp {
                Comparison::Rel(k) => rel(k)?,
                Comparison::Equiv1 => {
                    rel(RelationKind::ExistsUpper)? && back(RelationKind::ExistsUpper)?
                }
                Comparison::Equiv2 => {
                    rel(RelationKind::ExistsLower)? && back(RelationKind::ExistsLower)?
                }
                Comparison::Equal => b.same_members(c, DEFAULT_PHI_CAP)?,
            };
            Ok((ok, None))
        }
        (Value::Family(_), _) | (_, Value::Family(_)) => Err(OmqlError::Type(format!(
            "cannot compare a {} with a {}",
            lhs.kind(),
            rhs.kind()
        ))),
        _ => {
            let x = lhs.as_setvaluation(poset)?;
            let y = rhs.as_setvaluation(poset)?;
            let t = first_violation(poset, cmp, &x, &y);
            Ok((t.is_none(), t))
        }
    }
}

/// Evaluates both sides and compares them with `cmp`.
pub fn eval_inequality(env: &Env, lhs: &Expr, cmp: Comparison, rhs: &Expr) -> Result<LawReport> {
    let l = env.eval(lhs)?;
    let r = env.eval(rhs)?;
    let (ok, t) = compare(env, cmp, &l, &r)?;
    let report = LawReport::new(
        format!("{lhs} {cmp} {rhs}"),
        super::frame_label(env.frame),
        Coverage::Instance,
    )
    .checked(1);
    if ok {
        return Ok(report);
    }
    let bindings = env
        .bindings
        .iter()
        .map(|(k, v)| (k.clone(), format!("({})", v.render(env.poset).join(", "))))
        .collect();
    let detail = match t {
        Some(t) => format!("{} vs {}", l.render(env.poset)[t], r.render(env.poset)[t]),
        None => String::new(),
    };
    Ok(report.failed(Witness {
        bindings,
        time: t.map(|t| env.frame.name(t).to_string()),
        detail,
    }))
}

/// `lhs cmp rhs` holds, the sides differ and `rhs cmp lhs` does not hold.
pub fn is_proper(env: &Env, lhs: &Expr, cmp: Comparison, rhs: &Expr) -> Result<bool> {
    let l = env.eval(lhs)?;
    let r = env.eval(rhs)?;
    let forward = compare(env, cmp, &l, &r)?.0;
    let backward = compare(env, cmp, &r, &l)?.0;
    let equal = compare(env, Comparison::Equal, &l, &r)?.0;
    Ok(forward && !backward && !equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn example1() -> (OmpPoset, TimeFrame) {
        (fixtures::fig1(), TimeFrame::chain_le(3))
    }

    fn env<'a>(a: &'a OmpPoset, f: &'a TimeFrame) -> Env<'a> {
        let (p, q) = fixtures::example1_valuations(a);
        let mut env = Env::new(a, f);
        env.bind("p", Value::Exact(p)).unwrap();
        env.bind("q", Value::Exact(q)).unwrap();
        env
    }

    #[test]
    fn parse_and_render() {
        let e = Expr::parse("H(phi(odot(p, q)))").unwrap();
        assert_eq!(e.to_string(), "H(φ(p⊙q))");
        let e = Expr::parse("odot(H(p),H(q))").unwrap();
        assert_eq!(e.to_string(), "(H(p)⊙H(q))");
        assert_eq!(
            Expr::parse("prime(imp(p,q))").unwrap().to_string(),
            "(p→q)′"
        );
        assert!(Expr::parse("H(p").is_err());
        assert!(Expr::parse("odot(p)").is_err());
        assert!(Expr::parse("K(p)").is_err());
        assert!(Expr::parse("p q").is_err());
    }

    #[test]
    fn example1_relations_are_proper() {
        let (a, f) = example1();
        let env = env(&a, &f);
        let cases = [
            ("H(phi(odot(p,q)))", "le", "odot(H(p),H(q))"),
            ("H(phi(imp(p,q)))", "le2", "imp(H(p),H(q))"),
            ("G(phi(odot(p,q)))", "le", "odot(G(p),G(q))"),
            ("G(phi(imp(p,q)))", "le1", "imp(G(p),G(q))"),
        ];
        for (l, c, r) in cases {
            let (l, r) = (Expr::parse(l).unwrap(), Expr::parse(r).unwrap());
            let c: Comparison = c.parse().unwrap();
            let rep = eval_inequality(&env, &l, c, &r).unwrap();
            assert!(rep.passed(), "{}", rep.line());
            assert!(is_proper(&env, &l, c, &r).unwrap(), "{l} {c} {r}");
        }
    }

    #[test]
    fn reflexivity_and_type_errors() {
        let (a, f) = example1();
        let env = env(&a, &f);
        let x = Expr::parse("imp(G(p),G(q))").unwrap();
        assert!(
            eval_inequality(&env, &x, Comparison::Rel(RelationKind::ExistsUpper), &x)
                .unwrap()
                .passed()
        );
        // Tense operators do not apply to genuine set-valuations.
        assert!(matches!(
            env.eval(&Expr::parse("H(odot(G(p),G(q)))").unwrap()),
            Err(OmqlError::Type(_))
        ));
        assert!(env.eval(&Expr::parse("H(r)").unwrap()).is_err());
        let fam = Expr::parse("phi(odot(p,q))").unwrap();
        assert!(eval_inequality(&env, &fam, Comparison::Rel(RelationKind::All), &x).is_err());
    }

    #[test]
    fn failing_inequality_has_witness() {
        let (a, f) = example1();
        let env = env(&a, &f);
        let l = Expr::parse("odot(H(p),H(q))").unwrap();
        let r = Expr::parse("H(phi(odot(p,q)))").unwrap();
        let rep = eval_inequality(&env, &l, Comparison::Rel(RelationKind::All), &r).unwrap();
        assert!(!rep.passed());
        assert!(rep.witness.unwrap().time.is_some());
    }

    #[test]
    fn family_comparisons() {
        let (a, f) = example1();
        let env = env(&a, &f);
        let x = Expr::parse("phi(imp(p,q))").unwrap();
        let rep = eval_inequality(&env, &x, Comparison::Equal, &x).unwrap();
        assert!(rep.passed());
        let y = Expr::parse("prime(phi(imp(p,q)))").unwrap();
        let z = Expr::parse("phi(prime(imp(p,q)))").unwrap();
        assert!(eval_inequality(&env, &y, Comparison::Equal, &z)
            .unwrap()
            .passed());
    }
}
