//! Indexing systems through their transfer systems, and admissible sets.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grp::{coset_set, graph_subgroup, hsets_up_to_iso, FiniteGSet, GraphSubgroup, Group, Perm, ProdElem, Side, Subgroup};
use crate::operad::SymmetricSequence;
use crate::transfer::{generate, validate, Relation, TransferSystem};

/// An indexing system, stored as the equivalent transfer system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexingSystem {
    transfer: TransferSystem,
}

impl IndexingSystem {
    pub fn transfer(&self) -> &TransferSystem {
        &self.transfer
    }

    pub fn group(&self) -> &Arc<Group> {
        self.transfer.group()
    }
}

pub fn indexing_of_transfer(t: &TransferSystem) -> IndexingSystem {
    IndexingSystem { transfer: t.clone() }
}

/// Reads the transfer relation off membership of the orbits `H/K`.
pub fn transfer_of_indexing(i: &IndexingSystem) -> Result<TransferSystem> {
    transfer_from_membership(i.group(), |h, t| admits(i, h, t))
}

/// `{(K, H) : member(H, H/K)}`, validated.
pub fn transfer_from_membership(
    g: &Arc<Group>,
    mut member: impl FnMut(&Subgroup, &FiniteGSet) -> Result<bool>,
) -> Result<TransferSystem> {
    let lat = g.lattice();
    let mut r = Relation::empty(g);
    for h in 0..lat.len() {
        for k in 0..lat.len() {
            if lat.leq(k, h) {
                let hs = g.subgroup(h);
                if member(&hs, &coset_set(&hs, &g.subgroup(k))?)? {
                    r.insert(k, h);
                }
            }
        }
    }
    validate(&r)
}

/// Every orbit of `T` has the form `H/K` with `K → H`.
pub fn admits(i: &IndexingSystem, h: &Subgroup, t: &FiniteGSet) -> Result<bool> {
    if !h.group().same(i.group()) || t.domain() != h || t.side() != Side::Left {
        return Err(Error::GroupMismatch);
    }
    let hid = h.id();
    Ok(t.orbits().iter().all(|o| i.transfer.contains(t.stabilizer(o[0]).id(), hid)))
}

/// A set of pairs `(H, T)` up to isomorphism of `H`-sets.
#[derive(Clone, Debug)]
pub struct AdmissibleClass {
    group: Arc<Group>,
    entries: Vec<(Subgroup, FiniteGSet)>,
    keys: std::collections::HashSet<(usize, Vec<usize>)>,
}

impl AdmissibleClass {
    pub fn new(group: &Arc<Group>) -> Self {
        AdmissibleClass { group: group.clone(), entries: Vec::new(), keys: Default::default() }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// Adds `(H, T)` unless an isomorphic entry is present; returns whether it was new.
    pub fn insert(&mut self, h: &Subgroup, t: &FiniteGSet) -> bool {
        if self.keys.insert((h.id(), t.orbit_types())) {
            self.entries.push((h.clone(), t.clone()));
            true
        } else {
            false
        }
    }

    pub fn contains(&self, h: &Subgroup, t: &FiniteGSet) -> bool {
        self.keys.contains(&(h.id(), t.orbit_types()))
    }

    pub fn entries(&self) -> &[(Subgroup, FiniteGSet)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries as `(H id, [(K id, multiplicity)])` with `K` the class representatives.
    pub fn signatures(&self) -> Vec<(usize, Vec<(usize, usize)>)> {
        let mut out: Vec<_> = self
            .entries
            .iter()
            .map(|(h, t)| (h.id(), multiplicities(&t.orbit_types())))
            .collect();
        out.sort();
        out
    }
}

pub(crate) fn multiplicities(types: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &k in types {
        match out.last_mut() {
            Some((last, m)) if *last == k => *m += 1,
            _ => out.push((k, 1)),
        }
    }
    out
}

/// `⟨A⟩`: generated by `(stab(x), H)` for a point `x` in every orbit of every entry.
pub fn generated_transfer(a: &AdmissibleClass) -> Result<TransferSystem> {
    let mut r = Relation::equality(&a.group);
    for (h, t) in &a.entries {
        for o in t.orbits() {
            r.insert(t.stabilizer(o[0]).id(), h.id());
        }
    }
    generate(&r)
}

/// All `(H, T)` with `|T| ≤ window` such that level `|T|` of `S` has a
/// `Γ(T)`-fixed point. `window` defaults to the sequence's own window and
/// may not exceed it.
pub fn admissible_sets_of_symseq(s: &SymmetricSequence, window: Option<usize>) -> Result<AdmissibleClass> {
    let w = window.unwrap_or(s.window());
    if w > s.window() {
        return Err(Error::Window { requested: w, available: s.window() });
    }
    let g = s.group().clone();
    let mut out = AdmissibleClass::new(&g);
    for n in 0..=w {
        let level = s.level(n);
        if level.is_empty() {
            continue;
        }
        let graphs: Vec<Option<GraphSubgroup>> = level.iter().map(|o| o.graph().ok()).collect();
        let perms = Perm::all(n);
        for h in g.all_subgroups() {
            for t in hsets_up_to_iso(&h, n) {
                let types = t.orbit_types();
                let fixed = level.iter().zip(&graphs).any(|(orbit, graph)| match graph {
                    Some(gr) => graph_has_fixed_point(&h, &types, gr),
                    None => {
                        let gamma = graph_subgroup(&g, &h, &t).expect("H-set over H");
                        has_fixed_point(&g, &perms, gamma.subgroup().elements(), orbit.stabilizer())
                    }
                });
                if fixed {
                    out.insert(&h, &t);
                }
            }
        }
    }
    Ok(out)
}

/// `Γ(T) ≤ (g, s) Γ(T′) (g, s)⁻¹` exactly when `H ≤ gH′g⁻¹` and `T` is
/// isomorphic to the restriction of `c_g T′` to `H`, so only `g` is searched.
fn graph_has_fixed_point(h: &Subgroup, types: &[usize], delta: &GraphSubgroup) -> bool {
    let g = h.group();
    (0..g.order()).any(|x| {
        let c = delta.tset().conjugate(x);
        h.is_subgroup_of(c.domain()) && c.restrict(h).expect("H below").orbit_types() == types
    })
}

/// Whether `Γ(T) ≤ x Δ x⁻¹` for some `x ∈ G × Σₙ`, i.e. `(G × Σₙ)/Δ` has a `Γ(T)`-fixed point.
pub(crate) fn has_fixed_point(g: &Arc<Group>, perms: &[Perm], gamma: &[ProdElem], delta: &crate::grp::ProductSubgroup) -> bool {
    if !delta.order().is_multiple_of(gamma.len()) {
        return false;
    }
    (0..g.order()).any(|x| {
        let xi = g.inv(x);
        perms.iter().any(|s| {
            let si = s.inverse();
            gamma.iter().all(|(h, p)| delta.contains(&(g.mul(g.mul(xi, *h), x), si.compose(p).compose(s))))
        })
    })
}
