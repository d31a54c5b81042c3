use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{FactorSide, Sym};
use crate::error::{Error, Result};
use crate::grp::Perm;

/// A formal composite: a variable `xᵢ` (`i ≥ 1`) or a symbol applied to terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(Sym, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(s: Sym, children: Vec<Term>) -> Term {
        Term::App(s, children)
    }

    /// `f(x₁, …, xₙ)`.
    pub fn corolla(s: Sym, n: usize) -> Term {
        Term::App(s, (1..=n).map(Term::Var).collect())
    }

    /// Number of operation symbols.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, ch) => 1 + ch.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Variable indices in left-to-right order.
    pub fn variables(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Term::Var(i) => out.push(*i),
            Term::App(_, ch) => ch.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    /// Number of distinct variables.
    pub fn arity(&self) -> usize {
        let mut v = self.variables();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    /// Each of `x₁, …, xₙ` occurs exactly once.
    pub fn is_operadic(&self) -> bool {
        let mut v = self.variables();
        v.sort_unstable();
        v.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    fn require_operadic(&self) -> Result<usize> {
        if self.is_operadic() {
            Ok(self.variables().len())
        } else {
            Err(Error::Arity(format!("{self} is not operadic")))
        }
    }

    /// `t · σ`: each `xᵢ` becomes `x_{σ⁻¹i}`.
    pub fn act_sigma(&self, sigma: &Perm) -> Result<Term> {
        let n = self.require_operadic()?;
        if sigma.degree() != n {
            return Err(Error::Arity(format!("permutation of degree {} on an {n}-ary term", sigma.degree())));
        }
        let si = sigma.inverse();
        Ok(self.rename(&|i| si.apply(i - 1) + 1))
    }

    fn rename(&self, f: &dyn Fn(usize) -> usize) -> Term {
        match self {
            Term::Var(i) => Term::Var(f(*i)),
            Term::App(s, ch) => Term::App(*s, ch.iter().map(|c| c.rename(f)).collect()),
        }
    }

    /// `γ(t; s₁, …, sₖ)`: shift the variables of `sᵢ` by `j₁ + … + j_{i−1}`
    /// and substitute the results for `x₁, …, xₖ`.
    pub fn gamma(&self, subs: &[Term]) -> Result<Term> {
        let k = self.require_operadic()?;
        if k != subs.len() {
            return Err(Error::Arity(format!("{k}-ary term composed with {} terms", subs.len())));
        }
        let mut shifted = Vec::with_capacity(k);
        let mut offset = 0;
        for s in subs {
            let j = s.require_operadic()?;
            shifted.push(s.rename(&|i| i + offset));
            offset += j;
        }
        Ok(self.substitute(&shifted))
    }

    /// Replaces `xᵢ` by `subs[i − 1]`.
    pub(crate) fn substitute(&self, subs: &[Term]) -> Term {
        match self {
            Term::Var(i) => subs[i - 1].clone(),
            Term::App(s, ch) => Term::App(*s, ch.iter().map(|c| c.substitute(subs)).collect()),
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        match (path.split_first(), self) {
            (None, _) => Some(self),
            (Some((&i, rest)), Term::App(_, ch)) => ch.get(i)?.subterm(rest),
            _ => None,
        }
    }

    pub(crate) fn replace_at(&self, path: &[usize], new: Term) -> Term {
        match (path.split_first(), self) {
            (None, _) => new,
            (Some((&i, rest)), Term::App(s, ch)) => {
                let mut ch = ch.clone();
                ch[i] = ch[i].replace_at(rest, new);
                Term::App(*s, ch)
            }
            _ => unreachable!("path leaves the term"),
        }
    }

    /// The same term with every symbol moved to factor `side`.
    pub fn with_side(&self, side: FactorSide) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::App(s, ch) => Term::App(Sym { side, id: s.id }, ch.iter().map(|c| c.with_side(side)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(s, ch) => {
                write!(f, "({s}")?;
                for c in ch {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Term {
    type Err = Error;

    /// Parses `(X:0 (Y:1 x1 x2) x3)`; a bare symbol is a nullary application.
    fn from_str(src: &str) -> Result<Term> {
        let spaced = src.replace('(', " ( ").replace(')', " ) ");
        let tokens: Vec<&str> = spaced.split_whitespace().collect();
        let mut pos = 0;
        let t = parse(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input after {t}")));
        }
        Ok(t)
    }
}

fn parse_sym(tok: &str) -> Result<Sym> {
    let (side, id) = tok.split_once(':').ok_or_else(|| Error::Parse(format!("bad symbol {tok}")))?;
    let side = match side {
        "X" => FactorSide::X,
        "Y" => FactorSide::Y,
        _ => return Err(Error::Parse(format!("bad factor in {tok}"))),
    };
    let id = id.parse().map_err(|_| Error::Parse(format!("bad symbol id in {tok}")))?;
    Ok(Sym { side, id })
}

fn parse(tokens: &[&str], pos: &mut usize) -> Result<Term> {
    let tok = *tokens.get(*pos).ok_or_else(|| Error::Parse("unexpected end of term".into()))?;
    *pos += 1;
    match tok {
        "(" => {
            let head = *tokens.get(*pos).ok_or_else(|| Error::Parse("missing symbol".into()))?;
            *pos += 1;
            let s = parse_sym(head)?;
            let mut ch = Vec::new();
            while tokens.get(*pos) != Some(&")") {
                if *pos >= tokens.len() {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
                ch.push(parse(tokens, pos)?);
            }
            *pos += 1;
            Ok(Term::App(s, ch))
        }
        ")" => Err(Error::Parse("unexpected )".into())),
        _ if tok.starts_with('x') => {
            let i: usize = tok[1..].parse().map_err(|_| Error::Parse(format!("bad variable {tok}")))?;
            if i == 0 {
                return Err(Error::Parse("variables are numbered from 1".into()));
            }
            Ok(Term::Var(i))
        }
        _ => Ok(Term::App(parse_sym(tok)?, Vec::new())),
    }
}
