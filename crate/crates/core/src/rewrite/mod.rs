//! Free operad terms over `Σ`-orbit representatives and the reduction systems
//! presenting coproducts and tensor products as sub-sequences of reduced terms.

mod fuzz;
mod rules;
mod term;
mod witness;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grp::{Group, Perm};
use crate::operad::SymmetricSequence;

pub use fuzz::{check_criteria, CriteriaReport, FuzzConfig, TermGen};
pub use rules::{
    complexity, is_reduced, joinable, one_step_reducts, reduce, Reduct, Rule, Strategy, Trace, TraceStep,
};
pub use term::Term;
pub use witness::{
    admissibility_witness, is_fixed_by, marked_tensor_obstruction, witness_signature, AdmissibilityWitness,
    TensorObstruction,
};

/// Which factor a symbol belongs to: `X` for the first operad, `Y` for the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorSide {
    X,
    Y,
}

impl fmt::Display for FactorSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorSide::X => "X",
            FactorSide::Y => "Y",
        })
    }
}

/// An operation symbol: an orbit representative of one factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub side: FactorSide,
    pub id: u32,
}

impl Sym {
    pub fn x(id: u32) -> Self {
        Sym { side: FactorSide::X, id }
    }

    pub fn y(id: u32) -> Self {
        Sym { side: FactorSide::Y, id }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.side, self.id)
    }
}

/// Arity and `G`-action of one free generator: `g · f = f′ · σ` is `g_action[g] = (f′, σ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolData {
    pub arity: usize,
    pub g_action: Vec<(u32, Perm)>,
}

/// One factor of the presentation.
#[derive(Clone, Debug)]
pub enum Factor {
    /// Orbit representatives of a `Σ`-free symmetric sequence, with no
    /// composite rules. `origins[i]` is `(orbit index, coset representative)`
    /// for symbols read off a sequence.
    Free { symbols: Vec<SymbolData>, origins: Vec<Option<(usize, usize)>> },
    /// The associativity operad with one representative `μₙ` per arity, `id = n`.
    /// `μₙ(t₁, …, tₙ)` denotes the product of the `tᵢ` in the order of the
    /// representative word: identity, or reversed when `reversed`.
    /// The `G`-action is trivial apart from explicit overrides.
    Assoc { reversed: bool, overrides: HashMap<(u32, usize), (u32, Perm)> },
}

impl Factor {
    pub fn free(symbols: Vec<SymbolData>) -> Self {
        let origins = vec![None; symbols.len()];
        Factor::Free { symbols, origins }
    }

    pub fn assoc(reversed: bool) -> Self {
        Factor::Assoc { reversed, overrides: HashMap::new() }
    }

    /// One symbol per coset `gH` for every orbit `(G × Σₙ)/Γ(T)` of `S`:
    /// `f_{gH} = (g, id)Γ`, and `g′ · f_{gH} = f_{g₁H} · σ_T(h)` when `g′g = g₁h`.
    pub fn from_symseq(s: &SymmetricSequence) -> Result<Self> {
        let g = s.group();
        let mut symbols = Vec::new();
        let mut origins = Vec::new();
        for (oi, orbit) in s.orbits().enumerate() {
            let graph = orbit.graph()?;
            let h = graph.h();
            let reps = crate::grp::coset_reps_of(&g.whole(), h);
            let base = symbols.len() as u32;
            for &r in &reps {
                let g_action = (0..g.order())
                    .map(|x| {
                        let y = g.mul(x, r);
                        let j = reps.iter().position(|&q| h.contains(g.mul(g.inv(q), y))).expect("coset");
                        let hh = g.mul(g.inv(reps[j]), y);
                        (base + j as u32, graph.sigma(hh))
                    })
                    .collect();
                symbols.push(SymbolData { arity: orbit.arity(), g_action });
                origins.push(Some((oi, r)));
            }
        }
        Ok(Factor::Free { symbols, origins })
    }

    /// Appends a `G`-fixed nullary symbol and returns its id.
    pub fn push_fixed_nullary(&mut self, order: usize) -> Result<u32> {
        match self {
            Factor::Free { symbols, origins } => {
                symbols.push(SymbolData { arity: 0, g_action: (0..order).map(|_| (symbols.len() as u32, Perm::identity(0))).collect() });
                origins.push(None);
                Ok(symbols.len() as u32 - 1)
            }
            Factor::Assoc { .. } => Err(Error::Signature("associativity factor has a fixed unit already".into())),
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Factor::Free { .. })
    }

    pub fn arity(&self, id: u32) -> Option<usize> {
        match self {
            Factor::Free { symbols, .. } => symbols.get(id as usize).map(|s| s.arity),
            Factor::Assoc { .. } => Some(id as usize),
        }
    }

    /// `g · f = f′ · σ`.
    pub fn action(&self, g: usize, id: u32) -> (u32, Perm) {
        match self {
            Factor::Free { symbols, .. } => symbols[id as usize].g_action[g].clone(),
            Factor::Assoc { overrides, .. } => {
                overrides.get(&(id, g)).cloned().unwrap_or_else(|| (id, Perm::identity(id as usize)))
            }
        }
    }

    /// Replaces one entry of the action table; used to inject faults.
    pub fn set_action(&mut self, id: u32, g: usize, value: (u32, Perm)) {
        match self {
            Factor::Free { symbols, .. } => symbols[id as usize].g_action[g] = value,
            Factor::Assoc { overrides, .. } => {
                overrides.insert((id, g), value);
            }
        }
    }

    pub fn is_identity(&self, id: u32) -> bool {
        matches!(self, Factor::Assoc { .. }) && id == 1
    }

    /// The word of `μₙ` for an associativity factor.
    pub(crate) fn rep_word(&self, n: usize) -> Vec<usize> {
        match self {
            Factor::Assoc { reversed: true, .. } => (0..n).rev().collect(),
            _ => (0..n).collect(),
        }
    }

    pub fn origin(&self, id: u32) -> Option<(usize, usize)> {
        match self {
            Factor::Free { origins, .. } => origins.get(id as usize).copied().flatten(),
            Factor::Assoc { .. } => None,
        }
    }

    /// Symbol ids with arity at most `max_arity`, for fuzzing and witness search.
    pub fn symbols_up_to(&self, max_arity: usize) -> Vec<u32> {
        match self {
            Factor::Free { symbols, .. } => {
                (0..symbols.len() as u32).filter(|&i| symbols[i as usize].arity <= max_arity).collect()
            }
            Factor::Assoc { .. } => (0..=max_arity as u32).collect(),
        }
    }

    /// Ids whose action table is checked: every free symbol, and for an
    /// associativity factor the small arities and every override.
    fn checked_ids(&self) -> Vec<u32> {
        match self {
            Factor::Free { symbols, .. } => (0..symbols.len() as u32).collect(),
            Factor::Assoc { overrides, .. } => {
                let mut ids: Vec<u32> = (0..=4).chain(overrides.keys().map(|(i, _)| *i)).collect();
                ids.sort_unstable();
                ids.dedup();
                ids
            }
        }
    }
}

/// Two factors over a common group.
#[derive(Clone, Debug)]
pub struct Signature {
    group: Arc<Group>,
    x: Factor,
    y: Factor,
}

impl Signature {
    /// Validates both action tables: identity acts trivially, arities are
    /// preserved and `(gh) · f = g · (h · f)`.
    pub fn new(group: &Arc<Group>, x: Factor, y: Factor) -> Result<Self> {
        let sig = Signature { group: group.clone(), x, y };
        for side in [FactorSide::X, FactorSide::Y] {
            let factor = sig.factor(side);
            if let Factor::Free { symbols, .. } = factor {
                if symbols.iter().any(|s| s.g_action.len() != group.order()) {
                    return Err(Error::Signature(format!("{side}: action table needs {} rows", group.order())));
                }
            }
            let ids = factor.checked_ids();
            for &id in &ids {
                let n = factor.arity(id).expect("checked id");
                let (e_img, e_perm) = factor.action(0, id);
                if e_img != id || !e_perm.is_identity() {
                    return Err(Error::Signature(format!("identity moves {}", Sym { side, id })));
                }
                for g in 0..group.order() {
                    let (img, p) = factor.action(g, id);
                    if factor.arity(img) != Some(n) || p.degree() != n {
                        return Err(Error::Signature(format!("g = {g} on {} changes the arity", Sym { side, id })));
                    }
                }
            }
            for id in ids {
                for g in 0..group.order() {
                    for h in 0..group.order() {
                        let (f1, s1) = factor.action(h, id);
                        let (f2, s2) = factor.action(g, f1);
                        if factor.action(group.mul(g, h), id) != (f2, s2.compose(&s1)) {
                            return Err(Error::Signature(format!(
                                "action on {} is not associative at ({g}, {h})",
                                Sym { side, id }
                            )));
                        }
                    }
                }
            }
        }
        Ok(sig)
    }

    /// Builds a signature without validating the action tables.
    pub fn unchecked(group: &Arc<Group>, x: Factor, y: Factor) -> Self {
        Signature { group: group.clone(), x, y }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn factor(&self, side: FactorSide) -> &Factor {
        match side {
            FactorSide::X => &self.x,
            FactorSide::Y => &self.y,
        }
    }

    pub fn factor_mut(&mut self, side: FactorSide) -> &mut Factor {
        match side {
            FactorSide::X => &mut self.x,
            FactorSide::Y => &mut self.y,
        }
    }

    pub fn arity(&self, s: Sym) -> Option<usize> {
        self.factor(s.side).arity(s.id)
    }

    /// `g * x_i = x_i` and `g * f(t₁, …, tₙ) = f′(g * t_{σ⁻¹1}, …, g * t_{σ⁻¹n})` for `g · f = f′ · σ`.
    pub fn act_g(&self, g: usize, t: &Term) -> Term {
        match t {
            Term::Var(i) => Term::Var(*i),
            Term::App(s, ch) => {
                let (img, sigma) = self.factor(s.side).action(g, s.id);
                let si = sigma.inverse();
                let children = (0..ch.len()).map(|i| self.act_g(g, &ch[si.apply(i)])).collect();
                Term::App(Sym { side: s.side, id: img }, children)
            }
        }
    }

    /// Every symbol of `t` exists with the arity it is applied at.
    pub fn check_term(&self, t: &Term) -> Result<()> {
        match t {
            Term::Var(0) => Err(Error::Arity("variables are numbered from 1".into())),
            Term::Var(_) => Ok(()),
            Term::App(s, ch) => {
                match self.arity(*s) {
                    Some(n) if n == ch.len() => {}
                    Some(n) => return Err(Error::Arity(format!("{s} has arity {n}, applied to {}", ch.len()))),
                    None => return Err(Error::Signature(format!("unknown symbol {s}"))),
                }
                ch.iter().try_for_each(|c| self.check_term(c))
            }
        }
    }
}

/// The reduction system in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Rules removing identities and composing within one factor.
    Coproduct,
    /// Interchange of `X` over `Y`, collapse to the `G`-fixed nullary `Y:z`.
    Tensor { z: u32 },
}

impl Mode {
    /// Tensor mode needs free factors and a `G`-fixed nullary `z`.
    pub fn validate(&self, sig: &Signature) -> Result<()> {
        if let Mode::Tensor { z } = *self {
            if !sig.x.is_free() || !sig.y.is_free() {
                return Err(Error::Signature("tensor mode needs free factors".into()));
            }
            if sig.y.arity(z) != Some(0) {
                return Err(Error::Signature(format!("Y:{z} is not a nullary symbol")));
            }
            if (0..sig.group.order()).any(|g| sig.y.action(g, z).0 != z) {
                return Err(Error::Signature(format!("Y:{z} is not G-fixed")));
            }
        }
        Ok(())
    }

    pub fn z_term(&self) -> Option<Term> {
        match self {
            Mode::Tensor { z } => Some(Term::App(Sym::y(*z), Vec::new())),
            Mode::Coproduct => None,
        }
    }
}

/// Standard presentations used by the criteria checks and the CLI.
pub mod setups {
    use super::*;
    use crate::grp::{coset_set, group_by_name, FiniteGSet};
    use crate::operad::graph_of;

    fn c2() -> Arc<Group> {
        group_by_name("C2").expect("catalog group")
    }

    /// `Γ(C₂/1)` at arity 2, the free binary orbit `(C₂ × Σ₂)/Γ(C₂/1)`.
    fn norm_orbit(g: &Arc<Group>) -> crate::grp::ProductSubgroup {
        graph_of(g, g.whole().id(), &coset_set(&g.whole(), &g.trivial_subgroup()).expect("e ≤ G"))
    }

    /// `(C₂ × Σₙ)/e` restricted to its `Σ`-free orbit with trivial stabilizer.
    fn regular_orbit(g: &Arc<Group>, n: usize) -> crate::grp::ProductSubgroup {
        graph_of(g, g.trivial_subgroup().id(), &FiniteGSet::trivial(&g.trivial_subgroup(), n))
    }

    /// `As` with reversed representatives against `As` with identity ones, over `C₂`.
    pub fn coproduct_assoc() -> (Signature, Mode) {
        let g = c2();
        (Signature::new(&g, Factor::assoc(true), Factor::assoc(false)).expect("valid"), Mode::Coproduct)
    }

    /// `As` with reversed representatives against free `C₂`-generators.
    pub fn coproduct_mixed() -> (Signature, Mode) {
        let g = c2();
        let mut s = SymmetricSequence::new(&g, 2);
        s.add_orbit(norm_orbit(&g)).expect("window");
        s.add_orbit(regular_orbit(&g, 1)).expect("window");
        let y = Factor::from_symseq(&s).expect("graph orbits");
        (Signature::new(&g, Factor::assoc(true), y).expect("valid"), Mode::Coproduct)
    }

    /// Free `C₂`-generators on both sides, with a fixed nullary `z` in `Y`.
    /// Ids follow arity. `X`: a nullary regular orbit (`X:0`, `X:1`), the binary
    /// norm orbit (`X:2`) and a binary regular orbit (`X:3`, `X:4`). `Y`: a unary
    /// regular orbit (`Y:0`, `Y:1`), the binary norm orbit (`Y:2`) and `z` (`Y:3`).
    pub fn tensor_free() -> (Signature, Mode) {
        let g = c2();
        let mut sx = SymmetricSequence::new(&g, 2);
        sx.add_orbit(norm_orbit(&g)).expect("window");
        sx.add_orbit(regular_orbit(&g, 2)).expect("window");
        sx.add_orbit(regular_orbit(&g, 0)).expect("window");
        let mut sy = SymmetricSequence::new(&g, 2);
        sy.add_orbit(norm_orbit(&g)).expect("window");
        sy.add_orbit(regular_orbit(&g, 1)).expect("window");
        let x = Factor::from_symseq(&sx).expect("graph orbits");
        let mut y = Factor::from_symseq(&sy).expect("graph orbits");
        let z = y.push_fixed_nullary(g.order()).expect("free factor");
        (Signature::new(&g, x, y).expect("valid"), Mode::Tensor { z })
    }

    /// The setups by CLI name: `coproduct`, `coproduct-mixed`, `tensor`.
    pub fn by_name(name: &str) -> Result<(Signature, Mode)> {
        match name {
            "coproduct" => Ok(coproduct_assoc()),
            "coproduct-mixed" => Ok(coproduct_mixed()),
            "tensor" => Ok(tensor_free()),
            _ => Err(Error::Parse(format!("unknown rewrite mode {name}"))),
        }
    }
}
