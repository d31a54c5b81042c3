use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grp::{factorial, hsets_up_to_iso, FiniteGSet, Group, Perm, ProdElem, Side, Subgroup};
use crate::indexing::transfer_from_membership;
use crate::report::Report;
use crate::transfer::{meet, TransferSystem};

/// `Set(X, As)` for a nonempty right `G`-set `X`.
#[derive(Clone, Debug)]
pub struct CoindAsOperad {
    xset: FiniteGSet,
}

impl CoindAsOperad {
    pub fn new(xset: FiniteGSet) -> Result<Self> {
        if xset.side() != Side::Right || xset.domain() != &xset.group().whole() {
            return Err(Error::InvalidAction("expected a right G-set over all of G".into()));
        }
        if xset.size() == 0 {
            return Err(Error::InvalidAction("X must be nonempty".into()));
        }
        Ok(CoindAsOperad { xset })
    }

    pub fn xset(&self) -> &FiniteGSet {
        &self.xset
    }

    pub fn group(&self) -> &Arc<Group> {
        self.xset.group()
    }

    /// Every `h ∈ H` fixing a point of `X` must act trivially on `T`.
    pub fn admits(&self, h: &Subgroup, t: &FiniteGSet) -> Result<bool> {
        if !h.group().same(self.group()) || t.domain() != h || t.side() != Side::Left {
            return Err(Error::GroupMismatch);
        }
        Ok(h.members().into_iter().all(|x| {
            let fixes = (0..self.xset.size()).any(|p| self.xset.act(x, p) == p);
            !fixes || (0..t.size()).all(|i| t.act(x, i) == i)
        }))
    }

    /// The transfer system of orbits `H/K` admitted by the criterion.
    pub fn transfer(&self) -> Result<TransferSystem> {
        transfer_from_membership(self.group(), |h, t| self.admits(h, t))
    }

    /// Level `n`, all functions `X → Σₙ`, provided `(n!)^|X| ≤ guard`.
    pub fn level(&self, n: usize, guard: u64) -> Result<CoindLevel> {
        let base = factorial(n) as u128;
        let size = (0..self.xset.size()).try_fold(1u128, |acc, _| acc.checked_mul(base).filter(|&s| s <= guard as u128));
        match size {
            Some(size) => Ok(CoindLevel { xset: self.xset.clone(), n, size: size as usize }),
            None => Err(Error::Guard(base.saturating_pow(self.xset.size() as u32))),
        }
    }
}

/// A materialized level of `Set(X, As)`. Point `i` is the function whose value
/// at `x` has rank given by the `x`-th digit of `i` in base `n!`.
#[derive(Clone, Debug)]
pub struct CoindLevel {
    xset: FiniteGSet,
    n: usize,
    size: usize,
}

impl CoindLevel {
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn decode(&self, i: usize) -> Vec<Perm> {
        let base = factorial(self.n);
        let mut rest = i as u64;
        (0..self.xset.size())
            .map(|_| {
                let p = Perm::unrank(self.n, rest % base);
                rest /= base;
                p
            })
            .collect()
    }

    pub fn encode(&self, phi: &[Perm]) -> usize {
        let base = factorial(self.n);
        phi.iter().rev().fold(0u64, |acc, p| acc * base + p.rank()) as usize
    }

    /// `((g, τ)·φ)(x) = φ(x·g) ∘ τ⁻¹`.
    pub fn act(&self, q: &ProdElem, i: usize) -> usize {
        let phi = self.decode(i);
        let ti = q.1.inverse();
        let out: Vec<Perm> = (0..self.xset.size()).map(|x| phi[self.xset.act(q.0, x)].compose(&ti)).collect();
        self.encode(&out)
    }

    /// The constant functions, which are fixed by `G × 1`.
    pub fn constants(&self) -> Vec<usize> {
        Perm::all(self.n).iter().map(|p| self.encode(&vec![p.clone(); self.xset.size()])).collect()
    }

    /// Whether some `φ` is fixed by every `(h, σ_T(h))`.
    pub fn has_graph_fixed_point(&self, h: &Subgroup, t: &FiniteGSet) -> bool {
        let gens: Vec<ProdElem> = h.members().into_iter().map(|x| (x, t.perm(x))).collect();
        (0..self.size).any(|i| gens.iter().all(|q| self.act(q, i) == i))
    }

    /// Pointwise composition `γ(φ; ψ₁, …, ψₖ)(x) = γ_As(φ(x); ψ₁(x), …, ψₖ(x))`.
    pub fn compose(&self, phi: &[Perm], psis: &[Vec<Perm>]) -> Result<Vec<Perm>> {
        (0..self.xset.size())
            .map(|x| {
                let inner: Vec<Perm> = psis.iter().map(|p| p[x].clone()).collect();
                as_compose(&phi[x], &inner)
            })
            .collect()
    }
}

/// Operadic composition in `As`, with `σ ∈ Σₖ` read as the word `σ(0)…σ(k−1)`:
/// each letter `j` is replaced by the word of `τⱼ` shifted past the earlier blocks.
pub fn as_compose(sigma: &Perm, taus: &[Perm]) -> Result<Perm> {
    if sigma.degree() != taus.len() {
        return Err(Error::Arity(format!("{} inputs for arity {}", taus.len(), sigma.degree())));
    }
    let mut offsets = Vec::with_capacity(taus.len());
    let mut total = 0;
    for t in taus {
        offsets.push(total);
        total += t.degree();
    }
    let mut word = Vec::with_capacity(total);
    for pos in 0..sigma.degree() {
        let j = sigma.apply(pos);
        word.extend(taus[j].images().iter().map(|&l| l + offsets[j]));
    }
    Perm::from_images(word)
}

/// `Set(X ⊔ Y, As)` against the meet of `Set(X, As)` and `Set(Y, As)`: the
/// criterion pointwise on all `H`-sets of size at most `window`, and the
/// resulting transfer systems.
pub fn coind_as_product_check(x: &FiniteGSet, y: &FiniteGSet, window: usize) -> Result<Report> {
    let ox = CoindAsOperad::new(x.clone())?;
    let oy = CoindAsOperad::new(y.clone())?;
    let oxy = CoindAsOperad::new(x.disjoint_union(y)?)?;
    let g = ox.group().clone();
    let mut report = Report::new("Set(X ⊔ Y, As) = Set(X, As) × Set(Y, As) on admissibles");
    for h in g.all_subgroups() {
        for n in 0..=window {
            for t in hsets_up_to_iso(&h, n) {
                let both = ox.admits(&h, &t)? && oy.admits(&h, &t)?;
                let joint = oxy.admits(&h, &t)?;
                report.check(both == joint, || format!("H = {h:?}, T = {t:?}"));
            }
        }
    }
    let lhs = oxy.transfer()?;
    let rhs = meet(&ox.transfer()?, &oy.transfer()?)?;
    report.check(lhs == rhs, || format!("transfer of X ⊔ Y is {lhs:?}, meet is {rhs:?}"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{coset_set, group_by_name, right_coset_set};

    fn coind(g: &Arc<Group>, h: usize) -> CoindAsOperad {
        CoindAsOperad::new(right_coset_set(g, &g.subgroup(h)).unwrap()).unwrap()
    }

    #[test]
    fn free_x_admits_everything() {
        let c4 = group_by_name("C4").unwrap();
        let op = coind(&c4, 0);
        for h in c4.all_subgroups() {
            for t in hsets_up_to_iso(&h, 4) {
                assert!(op.admits(&h, &t).unwrap());
            }
        }
        assert_eq!(op.transfer().unwrap(), TransferSystem::complete(&c4));
    }

    #[test]
    fn c2_cosets_in_c4() {
        let c4 = group_by_name("C4").unwrap();
        let op = coind(&c4, 1);
        let w = c4.whole();
        assert!(op.admits(&w, &coset_set(&w, &c4.subgroup(1)).unwrap()).unwrap());
        assert!(!op.admits(&w, &coset_set(&w, &c4.trivial_subgroup()).unwrap()).unwrap());
        assert_eq!(op.transfer().unwrap().nontrivial_pairs(), vec![(1, 2)]);
    }

    #[test]
    fn fixed_point_means_only_trivial_sets() {
        let s3 = group_by_name("S3").unwrap();
        let op = coind(&s3, 5);
        for h in s3.all_subgroups() {
            for t in hsets_up_to_iso(&h, 3) {
                assert_eq!(op.admits(&h, &t).unwrap(), t.orbit_types().iter().all(|&k| k == h.id()));
            }
        }
    }

    #[test]
    fn criterion_matches_materialized_fixed_points() {
        for (name, sub) in [("C2", 0), ("C2", 1), ("C4", 1), ("C4", 2), ("S3", 1), ("S3", 4), ("K4", 2)] {
            let g = group_by_name(name).unwrap();
            let op = coind(&g, sub);
            for n in 0..=3 {
                let Ok(level) = op.level(n, 50_000) else { continue };
                for c in level.constants() {
                    for x in 0..g.order() {
                        assert_eq!(level.act(&(x, Perm::identity(n)), c), c);
                    }
                }
                for h in g.all_subgroups() {
                    for t in hsets_up_to_iso(&h, n) {
                        assert_eq!(
                            op.admits(&h, &t).unwrap(),
                            level.has_graph_fixed_point(&h, &t),
                            "{name} X = H{sub}\\G, H = {h:?}, T = {t:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn level_is_sigma_free_and_guarded() {
        let c4 = group_by_name("C4").unwrap();
        let op = coind(&c4, 1);
        let level = op.level(3, 1000).unwrap();
        assert_eq!(level.len(), 36);
        for i in 0..level.len() {
            for s in Perm::all(3).iter().skip(1) {
                assert_ne!(level.act(&(0, s.clone()), i), i);
            }
        }
        assert!(matches!(coind(&c4, 0).level(6, 1000), Err(Error::Guard(_))));
    }

    #[test]
    fn as_composition() {
        let id2 = Perm::identity(2);
        let swap = Perm::transposition(2, 0, 1);
        assert_eq!(as_compose(&id2, &[swap.clone(), Perm::identity(1)]).unwrap().images(), &[1, 0, 2]);
        assert_eq!(as_compose(&swap, &[Perm::identity(1), id2.clone()]).unwrap().images(), &[1, 2, 0]);
        assert!(as_compose(&swap, &[id2]).is_err());
    }

    #[test]
    fn product_law_examples() {
        let c4 = group_by_name("C4").unwrap();
        let x = right_coset_set(&c4, &c4.subgroup(1)).unwrap();
        let y = right_coset_set(&c4, &c4.whole()).unwrap();
        assert!(coind_as_product_check(&x, &y, 4).unwrap().passed);
        assert!(coind_as_product_check(&x, &x, 4).unwrap().passed);
        let free = right_coset_set(&c4, &c4.trivial_subgroup()).unwrap();
        let xy = CoindAsOperad::new(free.disjoint_union(&x).unwrap()).unwrap();
        assert_eq!(xy.transfer().unwrap(), coind(&c4, 1).transfer().unwrap());
    }
}
