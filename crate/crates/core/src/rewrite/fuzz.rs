use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{complexity, is_reduced, joinable, one_step_reducts, reduce, FactorSide, Mode, Signature, Strategy, Sym, Term};
use crate::error::Result;
use crate::grp::Perm;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub cases: usize,
    pub max_size: usize,
    pub seed: u64,
    pub random_strategies: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { cases: 500, max_size: 12, seed: 0, random_strategies: 20 }
    }
}

/// Random operadic terms grown by grafting symbols of both factors.
/// In tensor mode an `X`-symbol is often given a row of equal `Y`-blocks
/// and `z()` entries, so that interchange redexes are common.
#[derive(Clone, Debug)]
pub struct TermGen {
    pools: [Vec<(Sym, usize)>; 2],
    nullary: Vec<Sym>,
    z: Option<Sym>,
}

const MAX_FUZZ_ARITY: usize = 3;

impl TermGen {
    pub fn new(sig: &Signature, mode: Mode) -> Self {
        let pool = |side: FactorSide| -> Vec<(Sym, usize)> {
            let f = sig.factor(side);
            f.symbols_up_to(MAX_FUZZ_ARITY)
                .into_iter()
                .map(|id| (Sym { side, id }, f.arity(id).expect("listed")))
                .collect()
        };
        let pools = [pool(FactorSide::X), pool(FactorSide::Y)];
        let nullary = pools.iter().flatten().filter(|(_, n)| *n == 0).map(|(s, _)| *s).collect();
        let z = match mode {
            Mode::Tensor { z } => Some(Sym::y(z)),
            Mode::Coproduct => None,
        };
        TermGen { pools, nullary, z }
    }

    /// An operadic term with between 1 and `max_size` symbols and shuffled variables.
    pub fn term(&self, rng: &mut impl Rng, max_size: usize) -> Term {
        loop {
            let mut budget = rng.gen_range(1..=max_size.max(1));
            let shape = self.grow(rng, &mut budget, false);
            if shape.size() > max_size {
                continue;
            }
            let (t, n) = number_holes(&shape, 0);
            let mut images: Vec<usize> = (0..n).collect();
            images.shuffle(rng);
            return t.act_sigma(&Perm::from_images(images).expect("shuffle")).expect("operadic");
        }
    }

    /// A term without variables, when the factors have nullary symbols.
    pub fn closed_term(&self, rng: &mut impl Rng, max_size: usize) -> Option<Term> {
        if self.nullary.is_empty() {
            return None;
        }
        loop {
            let mut budget = rng.gen_range(1..=max_size.max(1));
            let t = self.grow(rng, &mut budget, true);
            if t.size() <= max_size {
                return Some(t);
            }
        }
    }

    fn leaf(&self, rng: &mut impl Rng, closed: bool) -> Term {
        if closed {
            Term::App(*self.nullary.choose(rng).expect("nonempty"), Vec::new())
        } else {
            Term::Var(0)
        }
    }

    fn grow(&self, rng: &mut impl Rng, budget: &mut usize, closed: bool) -> Term {
        if *budget == 0 || rng.gen_bool(0.25) {
            return self.leaf(rng, closed);
        }
        let side = if self.pools[1].is_empty() || (!self.pools[0].is_empty() && rng.gen_bool(0.5)) { 0 } else { 1 };
        let Some(&(s, n)) = self.pools[side].choose(rng) else { return self.leaf(rng, closed) };
        *budget -= 1;
        if let (Some(z), 0, true) = (self.z, side, n > 0) {
            let blocks: Vec<&(Sym, usize)> = self.pools[1].iter().filter(|(_, m)| *m > 0).collect();
            if !blocks.is_empty() && rng.gen_bool(0.5) {
                let &&(f, m) = blocks.choose(rng).expect("nonempty");
                let children = (0..n)
                    .map(|_| {
                        if rng.gen_bool(0.25) {
                            Term::App(z, Vec::new())
                        } else if *budget > 0 {
                            *budget -= 1;
                            Term::App(f, (0..m).map(|_| self.grow(rng, budget, closed)).collect())
                        } else {
                            self.leaf(rng, closed)
                        }
                    })
                    .collect();
                return Term::App(s, children);
            }
        }
        Term::App(s, (0..n).map(|_| self.grow(rng, budget, closed)).collect())
    }
}

/// Numbers the `Var(0)` holes left to right from `next + 1`.
fn number_holes(t: &Term, next: usize) -> (Term, usize) {
    match t {
        Term::Var(_) => (Term::Var(next + 1), next + 1),
        Term::App(s, ch) => {
            let mut n = next;
            let children = ch
                .iter()
                .map(|c| {
                    let (c, m) = number_holes(c, n);
                    n = m;
                    c
                })
                .collect();
            (Term::App(*s, children), n)
        }
    }
}

fn random_perm(rng: &mut impl Rng, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::from_images(images).expect("shuffle")
}

#[derive(Clone, Debug, Serialize)]
pub struct CriteriaReport {
    pub mode: String,
    pub config: FuzzConfig,
    pub passed: bool,
    pub checks: Vec<Report>,
}

/// Fuzzes the reduction system: complexity descent, local joinability of
/// every pair of one-step reducts, agreement of normal forms across
/// strategies, `G × Σ`-equivariance of reduction and of reducedness,
/// compatibility with composition, and (tensor) normalization of nullary
/// terms to `z()`.
pub fn check_criteria(sig: &Signature, mode: Mode, cfg: &FuzzConfig) -> Result<CriteriaReport> {
    mode.validate(sig)?;
    let gen = TermGen::new(sig, mode);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut descent = Report::new("complexity strictly decreases along every step");
    let mut joins = Report::new("one-step reducts are joinable within complexity(t) steps");
    let mut strategies = Report::new(format!("leftmost-innermost and {} random strategies agree", cfg.random_strategies));
    let mut equivariance = Report::new("reduce(g * (t · σ)) = g * (reduce(t) · σ)");
    let mut closure = Report::new("reduced terms are closed under G × Σ");
    let mut congruence = Report::new("reduce(γ(t; s)) = reduce(γ(reduce t; reduce s))");
    let mut nullary = Report::new("nullary terms reduce to z()");
    let order = sig.group().order();

    for _ in 0..cfg.cases {
        let t = gen.term(&mut rng, cfg.max_size);
        let c = complexity(mode, &t);
        let reducts = one_step_reducts(sig, mode, &t);

        let bad = reducts.iter().find(|r| complexity(mode, &r.term) >= c);
        descent.check(bad.is_none(), || {
            let r = bad.expect("failing case");
            format!("{t} ⇝ {} by {} at {:?}", r.term, r.rule, r.path)
        });

        let mut unjoined = None;
        'pairs: for (i, a) in reducts.iter().enumerate() {
            for b in &reducts[i + 1..] {
                if !joinable(sig, mode, &a.term, &b.term, c)? {
                    unjoined = Some((a.term.clone(), b.term.clone()));
                    break 'pairs;
                }
            }
        }
        joins.check(unjoined.is_none(), || {
            let (a, b) = unjoined.clone().expect("failing case");
            format!("{t} ⇝ {a} and {t} ⇝ {b}")
        });

        let (nf, _) = reduce(sig, mode, &t, Strategy::LeftmostInnermost)?;
        let mut split = None;
        for _ in 0..cfg.random_strategies {
            let seed = rng.gen();
            let (other, _) = reduce(sig, mode, &t, Strategy::Random(seed))?;
            if other != nf {
                split = Some((seed, other));
                break;
            }
        }
        strategies.check(split.is_none(), || {
            let (seed, other) = split.clone().expect("failing case");
            format!("{t}: leftmost-innermost gives {nf}, seed {seed} gives {other}")
        });

        let g = rng.gen_range(0..order);
        let sigma = random_perm(&mut rng, t.variables().len());
        let moved = sig.act_g(g, &t.act_sigma(&sigma)?);
        let lhs = reduce(sig, mode, &moved, Strategy::LeftmostInnermost)?.0;
        let rhs = sig.act_g(g, &nf.act_sigma(&sigma)?);
        equivariance.check(lhs == rhs, || format!("t = {t}, g = {g}, σ = {sigma:?}: {lhs} vs {rhs}"));
        let ok = is_reduced(sig, mode, &t) == is_reduced(sig, mode, &moved) && is_reduced(sig, mode, &rhs);
        closure.check(ok, || format!("t = {t}, g = {g}, σ = {sigma:?}"));

        let k = t.variables().len();
        let subs: Vec<Term> = (0..k).map(|_| gen.term(&mut rng, 3)).collect();
        let reduced_subs = subs
            .iter()
            .map(|s| reduce(sig, mode, s, Strategy::LeftmostInnermost).map(|r| r.0))
            .collect::<Result<Vec<_>>>()?;
        let whole = reduce(sig, mode, &t.gamma(&subs)?, Strategy::LeftmostInnermost)?.0;
        let parts = reduce(sig, mode, &nf.gamma(&reduced_subs)?, Strategy::LeftmostInnermost)?.0;
        congruence.check(whole == parts, || {
            let shown: Vec<String> = subs.iter().map(Term::to_string).collect();
            format!("t = {t}, s = [{}]: {whole} vs {parts}", shown.join(", "))
        });

        if let Some(z) = mode.z_term() {
            if let Some(closed) = gen.closed_term(&mut rng, cfg.max_size) {
                let out = reduce(sig, mode, &closed, Strategy::LeftmostInnermost)?.0;
                nullary.check(out == z, || format!("{closed} reduces to {out}"));
            }
        }
    }

    let mut checks = vec![descent, joins, strategies, equivariance, closure, congruence];
    if mode.z_term().is_some() {
        checks.push(nullary);
    }
    let mode_name = match mode {
        Mode::Coproduct => "coproduct".to_string(),
        Mode::Tensor { z } => format!("tensor (z = Y:{z})"),
    };
    Ok(CriteriaReport { mode: mode_name, config: *cfg, passed: checks.iter().all(|r| r.passed), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{setups, Factor, Rule};

    fn small() -> FuzzConfig {
        FuzzConfig { cases: 150, seed: 3, ..FuzzConfig::default() }
    }

    #[test]
    fn generated_terms_are_operadic_and_bounded() {
        let (sig, mode) = setups::tensor_free();
        let gen = TermGen::new(&sig, mode);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut interchange_shapes = 0;
        for _ in 0..200 {
            let t = gen.term(&mut rng, 12);
            assert!(t.is_operadic() && t.size() <= 12, "{t}");
            sig.check_term(&t).unwrap();
            if one_step_reducts(&sig, mode, &t).iter().any(|r| matches!(r.rule, Rule::Interchange | Rule::PaddedInterchange)) {
                interchange_shapes += 1;
            }
        }
        assert!(interchange_shapes > 20, "{interchange_shapes}");
        let closed = gen.closed_term(&mut rng, 12).unwrap();
        assert_eq!(closed.variables().len(), 0);
    }

    #[test]
    fn all_setups_pass() {
        for name in ["coproduct", "coproduct-mixed", "tensor"] {
            let (sig, mode) = setups::by_name(name).unwrap();
            let r = check_criteria(&sig, mode, &small()).unwrap();
            assert!(r.passed, "{name}: {:#?}", r.checks);
        }
    }

    #[test]
    fn single_generator_passes_trivially() {
        let g = crate::grp::group_by_name("C2").unwrap();
        let x = Factor::free(vec![super::super::SymbolData {
            arity: 2,
            g_action: vec![(0, Perm::identity(2)), (0, Perm::transposition(2, 0, 1))],
        }]);
        let y = Factor::free(Vec::new());
        let sig = Signature::new(&g, x, y).unwrap();
        let r = check_criteria(&sig, Mode::Coproduct, &small()).unwrap();
        assert!(r.passed && r.checks.iter().all(|c| c.cases == 150));
    }

    #[test]
    fn corrupted_action_breaks_equivariance() {
        // The override is a valid C₂-action, but it does not commute with composing
        // products: g * μ₂(μ₂(x1, x2), x3) = μ₂(x3, μ₂(x2, x1)) reduces to μ₃(x3, x2, x1).
        let (mut sig, mode) = setups::coproduct_assoc();
        sig.factor_mut(FactorSide::X).set_action(2, 1, (2, Perm::transposition(2, 0, 1)));
        let g = sig.group().clone();
        let sig = Signature::new(&g, sig.factor(FactorSide::X).clone(), sig.factor(FactorSide::Y).clone()).unwrap();
        let r = check_criteria(&sig, mode, &small()).unwrap();
        assert!(!r.passed);
        let eq = r.checks.iter().find(|c| c.law.starts_with("reduce(g")).unwrap();
        assert!(!eq.passed && eq.counterexample.is_some());
        let t: Term = "(X:2 (X:2 x1 x2) x3)".parse().unwrap();
        let lhs = reduce(&sig, mode, &sig.act_g(1, &t), Strategy::LeftmostInnermost).unwrap().0;
        assert_eq!(lhs.to_string(), "(X:3 x3 x2 x1)");
        let rhs = sig.act_g(1, &reduce(&sig, mode, &t, Strategy::LeftmostInnermost).unwrap().0);
        assert_eq!(rhs.to_string(), "(X:3 x1 x2 x3)");
    }
}
