use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::{Factor, FactorSide, Mode, Signature, Sym, Term};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Coproduct (a): `id_X(t) ⇝ t`.
    IdentityX,
    /// Coproduct (b): `id_Y(t) ⇝ t`.
    IdentityY,
    /// Coproduct (c): `h(…, f(…), …) ⇝ ℓ(t_{σ⁻¹1}, …)` for `h ∘ₖ f = ℓ · σ` in `X`.
    ComposeX,
    /// Coproduct (d): the same in `Y`.
    ComposeY,
    /// Tensor (a): `h(f(…), …, f(…)) ⇝ f(h(…), …, h(…))`.
    Interchange,
    /// Tensor (b): interchange with some blocks equal to `z()`.
    PaddedInterchange,
    /// Tensor (c): `ℓ(z(), …, z()) ⇝ z()`.
    Collapse,
    /// Tensor (d): `e() ⇝ z()` for nullary `e ≠ z`.
    NullaryToZ,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::IdentityX | Rule::Interchange => "a",
            Rule::IdentityY | Rule::PaddedInterchange => "b",
            Rule::ComposeX | Rule::Collapse => "c",
            Rule::ComposeY | Rule::NullaryToZ => "d",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::IdentityX => "identity X",
            Rule::IdentityY => "identity Y",
            Rule::ComposeX => "compose X",
            Rule::ComposeY => "compose Y",
            Rule::Interchange => "interchange",
            Rule::PaddedInterchange => "padded interchange",
            Rule::Collapse => "collapse",
            Rule::NullaryToZ => "nullary to z",
        };
        write!(f, "({}) {name}", self.tag())
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// One single substitution applied to a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduct {
    pub term: Term,
    pub rule: Rule,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub rule: Rule,
    pub path: Vec<usize>,
    pub before: Term,
    pub after: Term,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostInnermost,
    Random(u64),
}

/// Every legal single substitution at every position, each once, in
/// preorder of positions.
pub fn one_step_reducts(sig: &Signature, mode: Mode, t: &Term) -> Vec<Reduct> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    visit(sig, mode, t, t, &mut path, &mut out);
    out
}

fn visit(sig: &Signature, mode: Mode, root: &Term, node: &Term, path: &mut Vec<usize>, out: &mut Vec<Reduct>) {
    for (rule, new) in local_rewrites(sig, mode, node) {
        out.push(Reduct { term: root.replace_at(path, new), rule, path: path.clone() });
    }
    if let Term::App(_, ch) = node {
        for (i, c) in ch.iter().enumerate() {
            path.push(i);
            visit(sig, mode, root, c, path, out);
            path.pop();
        }
    }
}

fn local_rewrites(sig: &Signature, mode: Mode, node: &Term) -> Vec<(Rule, Term)> {
    let Term::App(s, ch) = node else { return Vec::new() };
    let mut out = Vec::new();
    match mode {
        Mode::Coproduct => {
            let factor = sig.factor(s.side);
            let (id_rule, comp_rule) = match s.side {
                FactorSide::X => (Rule::IdentityX, Rule::ComposeX),
                FactorSide::Y => (Rule::IdentityY, Rule::ComposeY),
            };
            if factor.is_identity(s.id) && ch.len() == 1 {
                out.push((id_rule, ch[0].clone()));
            }
            if let Factor::Assoc { .. } = factor {
                for (k, c) in ch.iter().enumerate() {
                    if let Term::App(f, fch) = c {
                        if f.side == s.side {
                            out.push((comp_rule, compose_assoc(factor, s.side, ch, k, fch)));
                        }
                    }
                }
            }
        }
        Mode::Tensor { z } => {
            let zt = Term::App(Sym::y(z), Vec::new());
            if ch.is_empty() {
                if *s != Sym::y(z) {
                    out.push((Rule::NullaryToZ, zt));
                }
                return out;
            }
            if ch.iter().all(|c| *c == zt) {
                out.push((Rule::Collapse, zt.clone()));
            }
            if s.side == FactorSide::X {
                if let Some((rule, new)) = interchange(sig, *s, ch, &zt) {
                    out.push((rule, new));
                }
            }
        }
    }
    out
}

/// `h ∘ₖ f` for associativity symbols `h = μₘ` (children `ch`) and `f = μₚ`
/// at child `k`, re-expressed as `μ_N(a_{c(w⁻¹1)}, …)` where `c` is the word
/// of the composite pattern and `w` the word of `μ_N`.
fn compose_assoc(factor: &Factor, side: FactorSide, ch: &[Term], k: usize, fch: &[Term]) -> Term {
    let m = ch.len();
    let p = fch.len();
    let n = m + p - 1;
    let wh = factor.rep_word(m);
    let wf = factor.rep_word(p);
    let mut word = Vec::with_capacity(n);
    for &a in &wh {
        match a.cmp(&k) {
            Ordering::Less => word.push(a),
            Ordering::Equal => word.extend(wf.iter().map(|&b| k + b)),
            Ordering::Greater => word.push(a + p - 1),
        }
    }
    let args: Vec<&Term> = ch[..k].iter().chain(fch).chain(&ch[k + 1..]).collect();
    let wn = factor.rep_word(n);
    let mut wn_inv = vec![0; n];
    for (i, &x) in wn.iter().enumerate() {
        wn_inv[x] = i;
    }
    Term::App(Sym { side, id: n as u32 }, (0..n).map(|i| args[word[wn_inv[i]]].clone()).collect())
}

fn interchange(sig: &Signature, h: Sym, ch: &[Term], zt: &Term) -> Option<(Rule, Term)> {
    let mut f: Option<Sym> = None;
    let mut padded = false;
    for c in ch {
        if c == zt {
            padded = true;
            continue;
        }
        match c {
            Term::App(s, fch) if s.side == FactorSide::Y && !fch.is_empty() => match f {
                None => f = Some(*s),
                Some(prev) if prev == *s => {}
                _ => return None,
            },
            _ => return None,
        }
    }
    let f = f?;
    let n = sig.arity(f)?;
    let blocks = (0..n)
        .map(|j| {
            let row = ch
                .iter()
                .map(|c| match c {
                    Term::App(_, fch) if c != zt => fch[j].clone(),
                    _ => zt.clone(),
                })
                .collect();
            Term::App(h, row)
        })
        .collect();
    Some((if padded { Rule::PaddedInterchange } else { Rule::Interchange }, Term::App(f, blocks)))
}

/// Coproduct: number of symbols. Tensor: symbols other than `z` plus
/// `Σ d(f)·|f|` over `Y`-symbols, `d` the nesting depth.
pub fn complexity(mode: Mode, t: &Term) -> u64 {
    match mode {
        Mode::Coproduct => t.size() as u64,
        Mode::Tensor { z } => tensor_complexity(Sym::y(z), t, 0),
    }
}

fn tensor_complexity(z: Sym, t: &Term, depth: u64) -> u64 {
    match t {
        Term::Var(_) => 0,
        Term::App(s, ch) => {
            let own = u64::from(*s != z) + if s.side == FactorSide::Y { depth * ch.len() as u64 } else { 0 };
            own + ch.iter().map(|c| tensor_complexity(z, c, depth + 1)).sum::<u64>()
        }
    }
}

pub fn is_reduced(sig: &Signature, mode: Mode, t: &Term) -> bool {
    one_step_reducts(sig, mode, t).is_empty()
}

/// Postorder on positions: descendants first, then left to right.
fn innermost_first(a: &[usize], b: &[usize]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x.cmp(y);
        }
    }
    b.len().cmp(&a.len())
}

/// Rewrites until no rule applies, within `complexity(t)` steps.
pub fn reduce(sig: &Signature, mode: Mode, t: &Term, strategy: Strategy) -> Result<(Term, Trace)> {
    let budget = complexity(mode, t);
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Strategy::LeftmostInnermost => None,
    };
    let mut cur = t.clone();
    let mut trace = Trace::default();
    loop {
        let mut reducts = one_step_reducts(sig, mode, &cur);
        if reducts.is_empty() {
            return Ok((cur, trace));
        }
        if trace.steps.len() as u64 >= budget {
            return Err(Error::StepBudget(budget));
        }
        let pick = match rng.as_mut() {
            Some(r) => reducts.swap_remove(r.gen_range(0..reducts.len())),
            None => {
                let best = (0..reducts.len())
                    .min_by(|&i, &j| innermost_first(&reducts[i].path, &reducts[j].path).then(i.cmp(&j)))
                    .expect("nonempty");
                reducts.swap_remove(best)
            }
        };
        trace.steps.push(TraceStep { rule: pick.rule, path: pick.path, before: cur, after: pick.term.clone() });
        cur = pick.term;
    }
}

/// Whether `a` and `b` reach a common term within `steps` rewrites each.
/// Normal forms are compared first; the reachable sets are searched only
/// when those differ.
pub fn joinable(sig: &Signature, mode: Mode, a: &Term, b: &Term, steps: u64) -> Result<bool> {
    if a == b {
        return Ok(true);
    }
    let na = reduce(sig, mode, a, Strategy::LeftmostInnermost)?.0;
    let nb = reduce(sig, mode, b, Strategy::LeftmostInnermost)?.0;
    if na == nb {
        return Ok(true);
    }
    let ra = reachable(sig, mode, a, steps);
    let rb = reachable(sig, mode, b, steps);
    Ok(!ra.is_disjoint(&rb))
}

fn reachable(sig: &Signature, mode: Mode, t: &Term, steps: u64) -> HashSet<Term> {
    let mut seen = HashSet::from([t.clone()]);
    let mut frontier = vec![t.clone()];
    for _ in 0..steps {
        let mut next = Vec::new();
        for u in &frontier {
            for r in one_step_reducts(sig, mode, u) {
                if seen.insert(r.term.clone()) {
                    next.push(r.term);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::Perm;
    use crate::rewrite::setups;

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    #[test]
    fn coproduct_identity_and_reduced_mixed() {
        let (sig, mode) = setups::coproduct_assoc();
        let r = one_step_reducts(&sig, mode, &t("(X:1 x1)"));
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].rule, r[0].term.clone()), (Rule::IdentityX, t("x1")));
        assert!(is_reduced(&sig, mode, &t("(X:2 (Y:2 x1 x2) x3)")));
        assert_eq!(complexity(mode, &t("(X:2 (X:2 x1 x2) x3)")), 2);
        assert_eq!(complexity(mode, &t("x1")), 0);
    }

    #[test]
    fn reversed_composite_carries_a_permutation() {
        // X uses reversed words: μ₂(a, b) is b·a, so μ₂(μ₂(x1, x2), x3) is x3 x2 x1,
        // which is μ₃(x1, x2, x3) with μ₃ reading right to left.
        let (sig, mode) = setups::coproduct_assoc();
        let (nf, trace) = reduce(&sig, mode, &t("(X:2 (X:2 x1 x2) x3)"), Strategy::LeftmostInnermost).unwrap();
        assert_eq!(nf, t("(X:3 x1 x2 x3)"));
        assert_eq!(trace.steps.len(), 1);
        let (nf, _) = reduce(&sig, mode, &t("(X:2 x1 (X:2 x2 x3))"), Strategy::LeftmostInnermost).unwrap();
        assert_eq!(nf, t("(X:3 x1 x2 x3)"));
        let (nf, _) = reduce(&sig, mode, &t("(X:2 x3 (X:2 x1 x2))"), Strategy::LeftmostInnermost).unwrap();
        assert_eq!(nf, t("(X:3 x3 x1 x2)"));
        // In Y words read left to right and the same shapes land on identity orders.
        let (nf, _) = reduce(&sig, mode, &t("(Y:2 (Y:2 x1 x2) x3)"), Strategy::LeftmostInnermost).unwrap();
        assert_eq!(nf, t("(Y:3 x1 x2 x3)"));
        // A unit collapses a binary product to the identity, which then disappears.
        let (nf, _) = reduce(&sig, mode, &t("(X:2 x1 (X:0))"), Strategy::LeftmostInnermost).unwrap();
        assert_eq!(nf, t("x1"));
    }

    #[test]
    fn reversed_composite_against_word_semantics() {
        // μ₂(μ₂(x2, x1), x3) in X is x3 x1 x2; μ₃ = reversed reads (x_{a3} x_{a2} x_{a1}).
        let (sig, mode) = setups::coproduct_assoc();
        let (nf, _) = reduce(&sig, mode, &t("(X:2 (X:2 x2 x1) x3)"), Strategy::LeftmostInnermost).unwrap();
        assert_eq!(nf, t("(X:3 x2 x1 x3)"));
        let sigma = Perm::from_images(vec![1, 0, 2]).unwrap();
        assert_eq!(t("(X:3 x1 x2 x3)").act_sigma(&sigma).unwrap(), nf);
    }

    #[test]
    fn tensor_rules() {
        let (sig, mode) = setups::tensor_free();
        let z = mode.z_term().unwrap();
        let r = one_step_reducts(&sig, mode, &t("(X:2 (Y:0 x1) (Y:0 x2))"));
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].rule, r[0].term.clone()), (Rule::Interchange, t("(Y:0 (X:2 x1 x2))")));
        let padded = Term::app(Sym::x(2), vec![z.clone(), t("(Y:2 x1 x2)")]);
        let r = one_step_reducts(&sig, mode, &padded);
        assert_eq!(r[0].rule, Rule::PaddedInterchange);
        assert_eq!(
            r[0].term,
            Term::app(Sym::y(2), vec![
                Term::app(Sym::x(2), vec![z.clone(), t("x1")]),
                Term::app(Sym::x(2), vec![z.clone(), t("x2")]),
            ])
        );
        let collapse = Term::app(Sym::x(2), vec![z.clone(), z.clone()]);
        let (nf, trace) = reduce(&sig, mode, &collapse, Strategy::LeftmostInnermost).unwrap();
        assert_eq!((nf, trace.steps.len()), (z.clone(), 1));
        let r = one_step_reducts(&sig, mode, &t("(X:0)"));
        assert_eq!((r[0].rule, r[0].term.clone()), (Rule::NullaryToZ, z.clone()));
        assert!(is_reduced(&sig, mode, &z));
        // Different Y-symbols under h block the interchange.
        assert!(one_step_reducts(&sig, mode, &t("(X:2 (Y:0 x1) (Y:1 x2))")).is_empty());
        let h = Term::app(Sym::x(2), vec![z.clone(), t("(Y:0 x1)")]);
        assert_eq!(complexity(mode, &h), 3);
    }

    #[test]
    fn leftmost_innermost_order() {
        assert_eq!(innermost_first(&[0, 1], &[0]), Ordering::Less);
        assert_eq!(innermost_first(&[0], &[1, 0]), Ordering::Less);
        assert_eq!(innermost_first(&[], &[0]), Ordering::Greater);
    }
}
