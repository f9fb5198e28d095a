//! Terms over `{+, *, 0, 1}` and exhaustive identity checking on finite
//! semirings, including the two Mal'cev-type term schemes for
//! distributivity at 0 and for directly decomposable congruence kernels.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::semiring::{is_unitary, FiniteSemiring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("term uses the constant 1 but {0} has no multiplicative unit")]
    NoUnit(String),
    #[error("variable x{} is not bound (arity {arity})", .index + 1)]
    Unbound { index: usize, arity: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed scheme: {0}")]
    Scheme(String),
}

/// Variables are 0-based: `Var(0)` is `x1` (alias `x`), `Var(1)` is `x2`
/// (alias `y`), and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Zero,
    One,
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

const ALIASES: [&str; 5] = ["x", "y", "z", "u", "v"];

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn x() -> Term {
        Term::Var(0)
    }

    pub fn y() -> Term {
        Term::Var(1)
    }

    pub fn plus(self, rhs: Term) -> Term {
        Term::Add(Box::new(self), Box::new(rhs))
    }

    pub fn times(self, rhs: Term) -> Term {
        Term::Mul(Box::new(self), Box::new(rhs))
    }

    /// One more than the largest variable index, 0 for ground terms.
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(k) => k + 1,
            Term::Zero | Term::One => 0,
            Term::Add(a, b) | Term::Mul(a, b) => a.arity().max(b.arity()),
        }
    }

    pub fn uses_one(&self) -> bool {
        match self {
            Term::One => true,
            Term::Var(_) | Term::Zero => false,
            Term::Add(a, b) | Term::Mul(a, b) => a.uses_one() || b.uses_one(),
        }
    }

    /// Replaces `Var(k)` by `args[k]`.
    pub fn substitute(&self, args: &[Term]) -> Term {
        match self {
            Term::Var(k) => args[*k].clone(),
            Term::Zero => Term::Zero,
            Term::One => Term::One,
            Term::Add(a, b) => a.substitute(args).plus(b.substitute(args)),
            Term::Mul(a, b) => a.substitute(args).times(b.substitute(args)),
        }
    }

    pub fn parse(input: &str) -> Result<Term, TermError> {
        let mut p = Parser {
            src: input.as_bytes(),
            pos: 0,
        };
        let t = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(t)
    }

    fn eval_unchecked(&self, s: &FiniteSemiring, one: usize, env: &[usize]) -> usize {
        match self {
            Term::Var(k) => env[*k],
            Term::Zero => s.zero(),
            Term::One => one,
            Term::Add(a, b) => s.add(a.eval_unchecked(s, one, env), b.eval_unchecked(s, one, env)),
            Term::Mul(a, b) => s.mul(a.eval_unchecked(s, one, env), b.eval_unchecked(s, one, env)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(k) => match ALIASES.get(*k) {
                Some(a) => f.write_str(a),
                None => write!(f, "x{}", k + 1),
            },
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Add(a, b) => write!(f, "{a}+{b}"),
            Term::Mul(a, b) => {
                let wrap = |t: &Term| match t {
                    Term::Add(..) => format!("({t})"),
                    _ => t.to_string(),
                };
                write!(f, "{}*{}", wrap(a), wrap(b))
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> TermError {
        TermError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Term, TermError> {
        let mut t = self.product()?;
        while self.eat(b'+') {
            t = t.plus(self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<Term, TermError> {
        let mut t = self.atom()?;
        while self.eat(b'*') {
            t = t.times(self.atom()?);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, TermError> {
        self.skip_ws();
        let Some(&c) = self.src.get(self.pos) else {
            return Err(self.error("unexpected end of term"));
        };
        match c {
            b'(' => {
                self.pos += 1;
                let t = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(t)
            }
            b'0' => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            b'1' => {
                self.pos += 1;
                Ok(Term::One)
            }
            b'a'..=b'z' => {
                let start = self.pos;
                self.pos += 1;
                let digits_start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if c == b'x' && self.pos > digits_start {
                    let k: usize = name[1..].parse().map_err(|_| self.error("bad variable index"))?;
                    if k == 0 {
                        return Err(TermError::Parse {
                            pos: start,
                            msg: "variables start at x1".into(),
                        });
                    }
                    return Ok(Term::Var(k - 1));
                }
                match ALIASES.iter().position(|a| *a == name) {
                    Some(k) => Ok(Term::Var(k)),
                    None => Err(TermError::Parse {
                        pos: start,
                        msg: format!("unknown variable `{name}`"),
                    }),
                }
            }
            _ => Err(self.error("expected a variable, constant or `(`")),
        }
    }
}

fn unit_for(s: &FiniteSemiring, terms: &[&Term]) -> Result<usize, TermError> {
    if terms.iter().any(|t| t.uses_one()) {
        is_unitary(s).ok_or_else(|| TermError::NoUnit(s.name().to_string()))
    } else {
        Ok(s.zero())
    }
}

/// Evaluates `t` with `Var(k)` bound to `assignment[k]`.
pub fn eval_term(s: &FiniteSemiring, t: &Term, assignment: &[usize]) -> Result<usize, TermError> {
    let one = unit_for(s, &[t])?;
    if t.arity() > assignment.len() {
        return Err(TermError::Unbound {
            index: t.arity() - 1,
            arity: assignment.len(),
        });
    }
    Ok(t.eval_unchecked(s, one, assignment))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// First failing assignment, earlier variables most significant.
    pub witness: Option<Vec<usize>>,
}

/// Checks `lhs ≈ rhs` under all `|S|^arity` assignments.
pub fn check_identity(s: &FiniteSemiring, lhs: &Term, rhs: &Term, arity: usize) -> Result<IdentityCheck, TermError> {
    let one = unit_for(s, &[lhs, rhs])?;
    let needed = lhs.arity().max(rhs.arity());
    if needed > arity {
        return Err(TermError::Unbound {
            index: needed - 1,
            arity,
        });
    }
    let n = s.len();
    let total = n.checked_pow(arity as u32).expect("assignment space fits in usize");
    let decode = |mut code: usize| {
        let mut env = vec![0; arity];
        for slot in env.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        env
    };
    let failing = (0..total).into_par_iter().find_first(|&code| {
        let env = decode(code);
        lhs.eval_unchecked(s, one, &env) != rhs.eval_unchecked(s, one, &env)
    });
    Ok(IdentityCheck {
        holds: failing.is_none(),
        witness: failing.map(decode),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Distributivity at 0.
    Dist0,
    /// Directly decomposable congruence kernels.
    Ddck,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Dist0 => "dist0",
            Scheme::Ddck => "ddck",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityResult {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
    pub holds: bool,
    /// Values of `(x, y)` at the first failure.
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeReport {
    pub scheme: Scheme,
    pub identities: Vec<IdentityResult>,
}

impl SchemeReport {
    pub fn passes(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }

    pub fn first_failure(&self) -> Option<&IdentityResult> {
        self.identities.iter().find(|i| !i.holds)
    }
}

fn check_all(
    s: &FiniteSemiring,
    scheme: Scheme,
    identities: Vec<(String, Term, Term)>,
) -> Result<SchemeReport, TermError> {
    let all: Vec<&Term> = identities.iter().flat_map(|(_, l, r)| [l, r]).collect();
    unit_for(s, &all)?;
    let identities = identities
        .into_iter()
        .map(|(name, lhs, rhs)| {
            let check = check_identity(s, &lhs, &rhs, 2)?;
            Ok(IdentityResult {
                name,
                lhs,
                rhs,
                holds: check.holds,
                witness: check.witness,
            })
        })
        .collect::<Result<_, TermError>>()?;
    Ok(SchemeReport { scheme, identities })
}

fn require_arity(terms: &[Term], max: usize, what: &str) -> Result<(), TermError> {
    match terms.iter().position(|t| t.arity() > max) {
        Some(i) => Err(TermError::Scheme(format!(
            "{what} term {} has more than {max} variables",
            i + 1
        ))),
        None => Ok(()),
    }
}

/// Checks the identity families for binary terms `t0, .., tn`:
/// `t0(x,y) ≈ 0`; `ti(0,y) ≈ 0` for all i; `ti(x,0) ≈ ti+1(x,0)` for even i;
/// `ti(x,x) ≈ ti+1(x,x)` for odd i; `tn(x,y) ≈ x`.
pub fn verify_dist0_scheme(s: &FiniteSemiring, terms: &[Term]) -> Result<SchemeReport, TermError> {
    if terms.len() < 2 {
        return Err(TermError::Scheme("need at least two terms t0, t1".into()));
    }
    require_arity(terms, 2, "binary")?;
    let n = terms.len() - 1;
    let (x, y) = (Term::x(), Term::y());
    let mut ids = vec![("t0(x,y) = 0".to_string(), terms[0].clone(), Term::Zero)];
    for (i, t) in terms.iter().enumerate() {
        ids.push((
            format!("t{i}(0,y) = 0"),
            t.substitute(&[Term::Zero, y.clone()]),
            Term::Zero,
        ));
    }
    for i in 0..n {
        if i % 2 == 0 {
            let args = [x.clone(), Term::Zero];
            ids.push((
                format!("t{i}(x,0) = t{}(x,0)", i + 1),
                terms[i].substitute(&args),
                terms[i + 1].substitute(&args),
            ));
        } else {
            let args = [x.clone(), x.clone()];
            ids.push((
                format!("t{i}(x,x) = t{}(x,x)", i + 1),
                terms[i].substitute(&args),
                terms[i + 1].substitute(&args),
            ));
        }
    }
    ids.push((format!("t{n}(x,y) = x"), terms[n].clone(), x));
    check_all(s, Scheme::Dist0, ids)
}

/// Checks the six identity families for binary `s1..sm`, `t1..tm` and
/// `(m+2)`-ary `u1..un`.
pub fn verify_ddck_scheme(
    s: &FiniteSemiring,
    s_terms: &[Term],
    t_terms: &[Term],
    u_terms: &[Term],
) -> Result<SchemeReport, TermError> {
    let m = s_terms.len();
    let n = u_terms.len();
    if m == 0 || n == 0 || t_terms.len() != m {
        return Err(TermError::Scheme(format!(
            "need m >= 1 terms s and t each and n >= 1 terms u (got {m}, {}, {n})",
            t_terms.len()
        )));
    }
    require_arity(s_terms, 2, "s")?;
    require_arity(t_terms, 2, "t")?;
    require_arity(u_terms, m + 2, "u")?;
    let (x, y) = (Term::x(), Term::y());
    // u(first, second, c1, .., cm)
    let apply = |u: &Term, first: &Term, second: &Term, consts: &[Term]| {
        let mut args = vec![first.clone(), second.clone()];
        args.extend_from_slice(consts);
        u.substitute(&args)
    };
    let (st, tt) = (s_terms, t_terms);
    let mut ids = vec![
        ("u1(x,y,s) = x".to_string(), apply(&u_terms[0], &x, &y, st), x.clone()),
        ("u1(y,x,t) = x".to_string(), apply(&u_terms[0], &y, &x, tt), x.clone()),
    ];
    for i in 0..n - 1 {
        ids.push((
            format!("u{}(y,x,s) = u{}(x,y,s)", i + 1, i + 2),
            apply(&u_terms[i], &y, &x, st),
            apply(&u_terms[i + 1], &x, &y, st),
        ));
    }
    for i in 0..n - 1 {
        ids.push((
            format!("u{}(x,y,t) = u{}(y,x,t)", i + 1, i + 2),
            apply(&u_terms[i], &x, &y, tt),
            apply(&u_terms[i + 1], &y, &x, tt),
        ));
    }
    ids.push((
        format!("u{n}(y,x,s) = x"),
        apply(&u_terms[n - 1], &y, &x, st),
        x.clone(),
    ));
    ids.push((format!("u{n}(x,y,t) = y"), apply(&u_terms[n - 1], &x, &y, tt), y));
    check_all(s, Scheme::Ddck, ids)
}

/// The term lists `(s, t, u)` of the ddck scheme.
pub type DdckTerms = (Vec<Term>, Vec<Term>, Vec<Term>);

/// `t0 = 0, t1 = xy, t2 = x`, valid on idempotent semirings.
pub fn dist0_idempotent_witness() -> Vec<Term> {
    vec![Term::Zero, Term::x().times(Term::y()), Term::x()]
}

/// `s = (1, 0, 0)`, `t = (0, 1, y)`, `u1 = xz + yu`, `u2 = yz + v`, valid on
/// unitary semirings.
pub fn ddck_unitary_witness() -> DdckTerms {
    let v = Term::var;
    (
        vec![Term::One, Term::Zero, Term::Zero],
        vec![Term::Zero, Term::One, Term::y()],
        vec![v(0).times(v(2)).plus(v(1).times(v(3))), v(1).times(v(2)).plus(v(4))],
    )
}

/// Splits a flat list of ddck terms `s1..sm t1..tm u1..un` given `m`.
pub fn split_ddck_terms(terms: &[Term], m: usize) -> Result<DdckTerms, TermError> {
    if m == 0 || terms.len() < 2 * m + 1 {
        return Err(TermError::Scheme(format!(
            "{} terms cannot hold m = {m} terms s, m terms t and at least one u",
            terms.len()
        )));
    }
    Ok((terms[..m].to_vec(), terms[m..2 * m].to_vec(), terms[2 * m..].to_vec()))
}
