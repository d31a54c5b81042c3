//! Symmetric sequences of orbits, free marked presentations of transfer
//! systems, coinduced associativity operads and change of group on generators.

mod change;
mod checks;
mod coind;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grp::{coset_set, factorial, graph_subgroup, CosetSpace, Group, GraphSubgroup, Perm, ProductSubgroup};
use crate::transfer::TransferSystem;

pub use change::{
    induce_symseq, noninjective_induction_counterexample, restrict_symseq, NonFreeWitness, Restriction,
};
pub use checks::{
    coproduct_join_check, double_coset_check, free_model_round_trip, theorem_b_coind_check, theorem_b_ind_check,
    theorem_b_res_check,
};
pub use coind::{as_compose, coind_as_product_check, CoindAsOperad, CoindLevel};

/// Default bound on the number of points materialized for one orbit.
pub const DEFAULT_GUARD: u64 = 2_000_000;

/// One orbit `(G × Σₙ)/Γ` of a level, named by its stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    stabilizer: ProductSubgroup,
}

impl Orbit {
    pub fn new(stabilizer: ProductSubgroup) -> Self {
        Orbit { stabilizer }
    }

    pub fn stabilizer(&self) -> &ProductSubgroup {
        &self.stabilizer
    }

    pub fn arity(&self) -> usize {
        self.stabilizer.degree()
    }

    pub fn graph(&self) -> Result<GraphSubgroup> {
        self.stabilizer.as_graph()
    }

    /// Number of points, `|G| · n! / |Γ|`.
    pub fn size(&self) -> u64 {
        self.stabilizer.group().order() as u64 * factorial(self.arity()) / self.stabilizer.order() as u64
    }
}

/// A symmetric sequence of finite `G`-sets given levelwise as disjoint unions
/// of transitive `(G × Σₙ)`-sets, for arities `0..=window`.
#[derive(Clone, Debug)]
pub struct SymmetricSequence {
    group: Arc<Group>,
    levels: Vec<Vec<Orbit>>,
}

impl SymmetricSequence {
    /// The empty sequence with levels `0..=window`.
    pub fn new(group: &Arc<Group>, window: usize) -> Self {
        SymmetricSequence { group: group.clone(), levels: vec![Vec::new(); window + 1] }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn window(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn add_orbit(&mut self, stabilizer: ProductSubgroup) -> Result<()> {
        if !stabilizer.group().same(&self.group) {
            return Err(Error::GroupMismatch);
        }
        let n = stabilizer.degree();
        if n > self.window() {
            return Err(Error::Window { requested: n, available: self.window() });
        }
        self.levels[n].push(Orbit::new(stabilizer));
        Ok(())
    }

    /// The orbits at arity `n`; empty slice beyond the window.
    pub fn level(&self, n: usize) -> &[Orbit] {
        self.levels.get(n).map_or(&[], |l| l.as_slice())
    }

    pub fn orbits(&self) -> impl Iterator<Item = &Orbit> {
        self.levels.iter().flatten()
    }

    pub fn orbit_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn level_size(&self, n: usize) -> u64 {
        self.level(n).iter().map(Orbit::size).sum()
    }

    /// Levelwise disjoint union; the window is the larger of the two.
    pub fn disjoint_union(&self, other: &SymmetricSequence) -> Result<SymmetricSequence> {
        if !self.group.same(&other.group) {
            return Err(Error::GroupMismatch);
        }
        let mut out = SymmetricSequence::new(&self.group, self.window().max(other.window()));
        for o in self.orbits().chain(other.orbits()) {
            out.add_orbit(o.stabilizer.clone())?;
        }
        Ok(out)
    }

    pub fn is_sigma_free(&self) -> bool {
        self.orbits().all(|o| o.stabilizer.is_sigma_free())
    }

    /// The orbits at arity `n` as explicit coset spaces.
    pub fn materialize(&self, n: usize, guard: u64) -> Result<Vec<CosetSpace>> {
        self.level(n).iter().map(|o| CosetSpace::new(&o.stabilizer, guard)).collect()
    }
}

/// Generators `S` of the marked free operad `F₊(S) = F(triv₀ ⊔ triv₂ ⊔ S)`.
#[derive(Clone, Debug)]
pub struct FreeMarkedPresentation {
    generators: SymmetricSequence,
}

impl FreeMarkedPresentation {
    pub fn new(generators: SymmetricSequence) -> Self {
        FreeMarkedPresentation { generators }
    }

    pub fn generators(&self) -> &SymmetricSequence {
        &self.generators
    }

    /// `triv₀ ⊔ triv₂ ⊔ S`: adds the orbits `(G × Σ₀)/G` and `(G × Σ₂)/G`.
    pub fn full_generators(&self) -> SymmetricSequence {
        let g = &self.generators.group;
        let mut out = SymmetricSequence::new(g, self.generators.window().max(2));
        for n in [0, 2] {
            let t = crate::grp::FiniteGSet::trivial(&g.whole(), n);
            out.add_orbit(graph_subgroup(g, &g.whole(), &t).expect("trivial set").subgroup().clone())
                .expect("within window");
        }
        for o in self.generators.orbits() {
            out.add_orbit(o.stabilizer.clone()).expect("within window");
        }
        out
    }

    /// `⟨A(S)⟩`.
    pub fn transfer(&self) -> Result<TransferSystem> {
        crate::indexing::generated_transfer(&crate::indexing::admissible_sets_of_symseq(&self.generators, None)?)
    }

    pub fn coproduct(&self, other: &FreeMarkedPresentation) -> Result<FreeMarkedPresentation> {
        Ok(FreeMarkedPresentation::new(self.generators.disjoint_union(&other.generators)?))
    }
}

/// One orbit `(G × Σ_{|H:K|})/Γ(H/K)` per nontrivial pair `K → H`, with window `|G|`.
pub fn free_model(t: &TransferSystem) -> FreeMarkedPresentation {
    let g = t.group();
    let mut s = SymmetricSequence::new(g, g.order());
    for (k, h) in t.nontrivial_pairs() {
        let hs = g.subgroup(h);
        let hk = coset_set(&hs, &g.subgroup(k)).expect("K ≤ H");
        s.add_orbit(graph_subgroup(g, &hs, &hk).expect("H-set").subgroup().clone()).expect("index ≤ |G|");
    }
    FreeMarkedPresentation::new(s)
}

/// `Γ(T)` for the given group and `H`-set, as a bare product subgroup.
pub(crate) fn graph_of(g: &Arc<Group>, h: usize, t: &crate::grp::FiniteGSet) -> ProductSubgroup {
    graph_subgroup(g, &g.subgroup(h), t).expect("H-set over H").subgroup().clone()
}

/// `(e, id) ∈ G × Σₙ`.
pub(crate) fn identity_elem(n: usize) -> crate::grp::ProdElem {
    (0, Perm::identity(n))
}
