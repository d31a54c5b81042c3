//! Transfer systems on `Sub(G)`.
//!
//! A relation is a boolean matrix over subgroup ids, one `u128` row per
//! source subgroup: bit `j` of row `i` means `Hᵢ → Hⱼ`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grp::Group;

/// Default number of search nodes `enumerate_all` may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone)]
pub struct Relation {
    group: Arc<Group>,
    rows: Vec<u128>,
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.group.same(&other.group)
    }
}

impl Eq for Relation {}

/// Lexicographic order on the row-major flattened matrix.
impl Ord for Relation {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.rows.iter().zip(&other.rows) {
            if a != b {
                let j = (a ^ b).trailing_zeros();
                return if a >> j & 1 == 1 { Ordering::Greater } else { Ordering::Less };
            }
        }
        self.rows.len().cmp(&other.rows.len())
    }
}

impl PartialOrd for Relation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.group.name(), self.nontrivial_pairs())
    }
}

impl Relation {
    pub fn empty(group: &Arc<Group>) -> Self {
        Relation { group: group.clone(), rows: vec![0; group.lattice().len()] }
    }

    /// The equality relation.
    pub fn equality(group: &Arc<Group>) -> Self {
        let mut r = Relation::empty(group);
        for i in 0..r.rows.len() {
            r.rows[i] |= 1 << i;
        }
        r
    }

    /// The inclusion order `⊆`.
    pub fn inclusion(group: &Arc<Group>) -> Self {
        let lat = group.lattice();
        let rows = (0..lat.len())
            .map(|i| (0..lat.len()).filter(|&j| lat.leq(i, j)).fold(0u128, |a, j| a | 1 << j))
            .collect();
        Relation { group: group.clone(), rows }
    }

    /// Builds a relation from pairs, checking that it refines inclusion.
    pub fn from_pairs(group: &Arc<Group>, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = Relation::empty(group);
        let n = r.rows.len();
        for &(i, j) in pairs {
            if i >= n || j >= n || !group.lattice().leq(i, j) {
                return Err(Error::NotRefining(i, j));
            }
            r.rows[i] |= 1 << j;
        }
        Ok(r)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i] |= 1 << j;
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.rows[i] &= !(1 << j);
    }

    pub fn row(&self, i: usize) -> u128 {
        self.rows[i]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rows.len();
        (0..n).flat_map(|i| (0..n).filter(move |&j| self.contains(i, j)).map(move |j| (i, j))).collect()
    }

    pub fn nontrivial_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs().into_iter().filter(|(i, j)| i != j).collect()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.same_group(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a | b).collect();
        Ok(Relation { group: self.group.clone(), rows })
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.same_group(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a & b).collect();
        Ok(Relation { group: self.group.clone(), rows })
    }

    fn same_group(&self, other: &Relation) -> Result<()> {
        if self.group.same(&other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn check_refines(&self) -> Result<()> {
        let lat = self.group.lattice();
        for (i, j) in self.pairs() {
            if !lat.leq(i, j) {
                return Err(Error::NotRefining(i, j));
            }
        }
        Ok(())
    }

    /// First failed transfer-system axiom, checked in the order
    /// reflexivity, transitivity, conjugation, restriction.
    pub fn first_violation(&self) -> Option<Violation> {
        let lat = self.group.lattice();
        let n = self.rows.len();
        if let Some(h) = (0..n).find(|&h| !self.contains(h, h)) {
            return Some(Violation::Reflexive { h });
        }
        for (k, h) in self.pairs() {
            for l in 0..n {
                if self.contains(h, l) && !self.contains(k, l) {
                    return Some(Violation::Transitive { k, h, l });
                }
            }
        }
        for (k, h) in self.pairs() {
            for g in 0..self.group.order() {
                if !self.contains(lat.conj(g, k), lat.conj(g, h)) {
                    return Some(Violation::Conjugation { k, h, g });
                }
            }
        }
        for (k, h) in self.pairs() {
            for l in 0..n {
                if lat.leq(l, h) && !self.contains(lat.meet(l, k), l) {
                    return Some(Violation::Restriction { k, h, l });
                }
            }
        }
        None
    }

    /// The reflexive-transitive closure.
    pub fn rt_closure(&self) -> Relation {
        let mut r = self.clone();
        r.rt_close();
        r
    }

    fn rt_close(&mut self) {
        let n = self.rows.len();
        for i in 0..n {
            self.rows[i] |= 1 << i;
        }
        for k in 0..n {
            for i in 0..n {
                if self.rows[i] >> k & 1 == 1 {
                    self.rows[i] |= self.rows[k];
                }
            }
        }
    }

    /// Adds conjugates and restrictions of every pair until nothing new appears.
    fn saturate(&mut self) {
        let g = self.group.clone();
        let lat = g.lattice();
        let mut work = self.pairs();
        while let Some((k, h)) = work.pop() {
            let conjugates = (0..g.order()).map(|x| (lat.conj(x, k), lat.conj(x, h)));
            let restrictions = grp_bits(lat.below(h)).map(|l| (lat.meet(l, k), l));
            for (a, b) in conjugates.chain(restrictions).collect::<Vec<_>>() {
                if !self.contains(a, b) {
                    self.insert(a, b);
                    work.push((a, b));
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Reflexive { h: usize },
    /// `K → H` and `H → L` but not `K → L`.
    Transitive { k: usize, h: usize, l: usize },
    /// `K → H` but not `gKg⁻¹ → gHg⁻¹`.
    Conjugation { k: usize, h: usize, g: usize },
    /// `K → H` and `L ⊆ H` but not `L ∩ K → L`.
    Restriction { k: usize, h: usize, l: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Reflexive { h } => write!(f, "reflexivity fails at {h}"),
            Violation::Transitive { k, h, l } => {
                write!(f, "transitivity: {k}->{h} and {h}->{l} but not {k}->{l}")
            }
            Violation::Conjugation { k, h, g } => {
                write!(f, "conjugation: {k}->{h} is not preserved by element {g}")
            }
            Violation::Restriction { k, h, l } => {
                write!(f, "restriction: {k}->{h} with L={l} demands ({l} meet {k})->{l}")
            }
        }
    }
}

/// A relation that satisfies every transfer-system axiom.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TransferSystem(Relation);

impl fmt::Debug for TransferSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::ops::Deref for TransferSystem {
    type Target = Relation;
    fn deref(&self) -> &Relation {
        &self.0
    }
}

impl TransferSystem {
    pub fn discrete(group: &Arc<Group>) -> Self {
        TransferSystem(Relation::equality(group))
    }

    pub fn complete(group: &Arc<Group>) -> Self {
        TransferSystem(Relation::inclusion(group))
    }

    pub fn relation(&self) -> &Relation {
        &self.0
    }

    pub fn into_relation(self) -> Relation {
        self.0
    }

    /// Wraps a relation the caller knows to be a transfer system.
    pub(crate) fn trusted(r: Relation) -> Self {
        debug_assert!(r.first_violation().is_none(), "{r:?}");
        TransferSystem(r)
    }

    /// Matrix containment.
    pub fn refines(&self, other: &TransferSystem) -> bool {
        self.0.is_subset(&other.0)
    }
}

pub fn validate(r: &Relation) -> Result<TransferSystem> {
    r.check_refines()?;
    match r.first_violation() {
        Some(v) => Err(Error::Axiom(v)),
        None => Ok(TransferSystem(r.clone())),
    }
}

/// The least transfer system containing `r`.
pub fn generate(r: &Relation) -> Result<TransferSystem> {
    r.check_refines()?;
    let mut cur = r.clone();
    loop {
        let before = cur.rows.clone();
        cur.saturate();
        cur.rt_close();
        if cur.rows == before {
            return Ok(TransferSystem(cur));
        }
    }
}

/// The largest transfer system contained in the partial order `p`: keeps
/// `K ⊆ H` iff `(gKg⁻¹ ∩ L, L) ∈ p` for every `g` and every `L ⊆ gHg⁻¹`.
pub fn cogenerate(p: &Relation) -> Result<TransferSystem> {
    p.check_refines()?;
    let n = p.size();
    if let Some(h) = (0..n).find(|&h| !p.contains(h, h)) {
        return Err(Error::NotPartialOrder(format!("({h}, {h}) missing")));
    }
    for (i, j) in p.pairs() {
        for l in 0..n {
            if p.contains(j, l) && !p.contains(i, l) {
                return Err(Error::NotPartialOrder(format!(
                    "({i}, {j}) and ({j}, {l}) without ({i}, {l})"
                )));
            }
        }
    }
    let g = p.group().clone();
    let lat = g.lattice();
    let mut out = Relation::empty(&g);
    for h in 0..n {
        for k in grp_bits(lat.below(h)) {
            let keep = (0..g.order()).all(|x| {
                let (gk, gh) = (lat.conj(x, k), lat.conj(x, h));
                grp_bits(lat.below(gh)).all(|l| p.contains(lat.meet(gk, l), l))
            });
            if keep {
                out.insert(k, h);
            }
        }
    }
    Ok(TransferSystem(out))
}

pub fn meet(s: &TransferSystem, t: &TransferSystem) -> Result<TransferSystem> {
    Ok(TransferSystem(s.0.intersection(&t.0)?))
}

/// Reflexive-transitive closure of the union.
pub fn join(s: &TransferSystem, t: &TransferSystem) -> Result<TransferSystem> {
    let mut u = s.0.union(&t.0)?;
    u.rt_close();
    Ok(TransferSystem(u))
}

/// Every transfer system on `g`, sorted canonically.
pub fn enumerate_all(g: &Arc<Group>, budget: u64) -> Result<Vec<TransferSystem>> {
    let lat = g.lattice();
    let n = lat.len();
    let candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| i != j && lat.leq(i, j)).map(move |j| (i, j)))
        .collect();
    let mut search = Search { candidates: &candidates, budget, visits: 0, found: Vec::new() };
    let start = generate(&Relation::equality(g))?.0;
    let excluded = Relation::empty(g);
    search.run(0, start, excluded)?;
    let mut found = search.found;
    found.sort();
    found.dedup();
    Ok(found.into_iter().map(TransferSystem).collect())
}

struct Search<'a> {
    candidates: &'a [(usize, usize)],
    budget: u64,
    visits: u64,
    found: Vec<Relation>,
}

impl Search<'_> {
    fn run(&mut self, idx: usize, cur: Relation, excluded: Relation) -> Result<()> {
        self.visits += 1;
        if self.visits > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let Some(&(k, h)) = self.candidates.get(idx) else {
            self.found.push(cur);
            return Ok(());
        };
        if cur.contains(k, h) || excluded.contains(k, h) {
            return self.run(idx + 1, cur, excluded);
        }
        let mut with = cur.clone();
        with.insert(k, h);
        let with = generate(&with)?.0;
        if with.rows.iter().zip(&excluded.rows).all(|(a, b)| a & b == 0) {
            self.run(idx + 1, with, excluded.clone())?;
        }
        let mut excluded = excluded;
        excluded.insert(k, h);
        self.run(idx + 1, cur, excluded)
    }
}

/// Cover pairs `(i, j)` of the containment order on `lattice`, by index.
pub fn hasse(lattice: &[TransferSystem]) -> Vec<(usize, usize)> {
    let n = lattice.len();
    let lt = |a: usize, b: usize| a != b && lattice[a].refines(&lattice[b]);
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                covers.push((a, b));
            }
        }
    }
    covers
}

pub fn refines(s: &TransferSystem, t: &TransferSystem) -> bool {
    s.refines(t)
}

/// DOT for the Hasse diagram; edges point from smaller to larger systems.
pub fn to_dot(lattice: &[TransferSystem]) -> String {
    let mut out = String::from("digraph transfer_systems {\n  rankdir=BT;\n");
    for (i, t) in lattice.iter().enumerate() {
        let pairs = t.nontrivial_pairs();
        let label = if pairs.is_empty() {
            "discrete".to_string()
        } else {
            pairs.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" ")
        };
        out.push_str(&format!("  t{i} [label=\"{label}\"];\n"));
    }
    for (a, b) in hasse(lattice) {
        out.push_str(&format!("  t{a} -> t{b};\n"));
    }
    out.push_str("}\n");
    out
}

pub(crate) fn grp_bits(bits: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |i| bits >> i & 1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::group_by_name;

    #[test]
    fn discrete_and_complete_validate() {
        for name in ["1", "C4", "K4", "S3", "D8"] {
            let g = group_by_name(name).unwrap();
            assert!(validate(&Relation::equality(&g)).is_ok());
            assert!(validate(&Relation::inclusion(&g)).is_ok());
        }
    }

    #[test]
    fn c4_top_pair_alone_fails_restriction() {
        let c4 = group_by_name("C4").unwrap();
        let mut r = Relation::equality(&c4);
        r.insert(0, 2);
        assert_eq!(validate(&r).unwrap_err(), Error::Axiom(Violation::Restriction { k: 0, h: 2, l: 1 }));
        // restriction forces 1 -> C2; nothing forces C2 -> C4
        let expected = Relation::from_pairs(&c4, &[(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)]).unwrap();
        assert_eq!(generate(&r).unwrap().relation(), &expected);
    }

    #[test]
    fn refinement_failure_is_separate() {
        let c4 = group_by_name("C4").unwrap();
        let mut r = Relation::equality(&c4);
        r.insert(2, 0);
        assert_eq!(validate(&r).unwrap_err(), Error::NotRefining(2, 0));
    }

    #[test]
    fn k4_cogenerate_top_pair_is_discrete() {
        let k4 = group_by_name("K4").unwrap();
        let mut p = Relation::equality(&k4);
        p.insert(0, 4);
        assert_eq!(cogenerate(&p).unwrap(), TransferSystem::discrete(&k4));
        assert_eq!(cogenerate(&Relation::inclusion(&k4)).unwrap(), TransferSystem::complete(&k4));
        assert!(cogenerate(&Relation::empty(&k4)).is_err());
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = ["1", "C2", "C4", "C8"]
            .iter()
            .map(|n| enumerate_all(&group_by_name(n).unwrap(), DEFAULT_BUDGET).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 14]);
    }

    #[test]
    fn budget_is_enforced() {
        let g = group_by_name("S3").unwrap();
        assert_eq!(enumerate_all(&g, 3).unwrap_err(), Error::BudgetExceeded(3));
    }

    #[test]
    fn c2_hasse_single_cover() {
        let c2 = group_by_name("C2").unwrap();
        let lat = enumerate_all(&c2, DEFAULT_BUDGET).unwrap();
        assert_eq!(hasse(&lat), vec![(0, 1)]);
        assert!(to_dot(&lat).contains("t0 -> t1"));
    }

    #[test]
    fn cp2_join_of_generated_pieces_is_complete() {
        let c4 = group_by_name("C4").unwrap();
        let a = generate(&Relation::from_pairs(&c4, &[(0, 1)]).unwrap()).unwrap();
        let b = generate(&Relation::from_pairs(&c4, &[(1, 2)]).unwrap()).unwrap();
        assert_eq!(join(&a, &b).unwrap(), TransferSystem::complete(&c4));
    }
}
