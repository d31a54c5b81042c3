use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{factorial, FiniteGSet, Group, Homomorphism, Perm, Side, Subgroup};
use crate::error::{Error, Result};

/// An element `(g, σ)` of `G × Σₙ`; multiplication is componentwise.
pub type ProdElem = (usize, Perm);

pub(crate) fn pmul(g: &Group, a: &ProdElem, b: &ProdElem) -> ProdElem {
    (g.mul(a.0, b.0), a.1.compose(&b.1))
}

pub(crate) fn pinv(g: &Group, a: &ProdElem) -> ProdElem {
    (g.inv(a.0), a.1.inverse())
}

/// Dense index of `(g, σ)`: `g · n! + rank(σ)`.
pub(crate) fn key(n: usize, a: &ProdElem) -> u64 {
    a.0 as u64 * factorial(n) + a.1.rank()
}

pub(crate) fn unkey(n: usize, k: u64) -> ProdElem {
    let f = factorial(n);
    ((k / f) as usize, Perm::unrank(n, k % f))
}

/// A subgroup of `G × Σₙ`, stored as its sorted element list.
#[derive(Clone, Debug)]
pub struct ProductSubgroup {
    group: Arc<Group>,
    degree: usize,
    elements: Vec<ProdElem>,
}

impl PartialEq for ProductSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.group.same(&other.group) && self.elements == other.elements
    }
}

impl Eq for ProductSubgroup {}

impl ProductSubgroup {
    /// The subgroup generated by `gens`.
    pub fn generated(group: &Arc<Group>, degree: usize, gens: &[ProdElem]) -> Self {
        let id = (0, Perm::identity(degree));
        let mut seen: HashSet<ProdElem> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for s in gens {
                let y = pmul(group, &x, s);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut elements: Vec<ProdElem> = seen.into_iter().collect();
        elements.sort();
        ProductSubgroup { group: group.clone(), degree, elements }
    }

    /// Checks closure of an explicit element list.
    pub fn from_elements(group: &Arc<Group>, degree: usize, mut elements: Vec<ProdElem>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let set: HashSet<&ProdElem> = elements.iter().collect();
        let closed = set.contains(&(0, Perm::identity(degree)))
            && elements.iter().all(|a| elements.iter().all(|b| set.contains(&pmul(group, a, b))));
        if !closed {
            return Err(Error::NotSubgroup(format!("{} elements of {} x S{degree}", elements.len(), group.name())));
        }
        Ok(ProductSubgroup { group: group.clone(), degree, elements })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[ProdElem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: &ProdElem) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &ProductSubgroup) -> bool {
        self.elements.iter().all(|a| other.contains(a))
    }

    /// `p Γ p⁻¹`.
    pub fn conjugate(&self, p: &ProdElem) -> ProductSubgroup {
        let pi = pinv(&self.group, p);
        let mut elements: Vec<ProdElem> =
            self.elements.iter().map(|a| pmul(&self.group, &pmul(&self.group, p, a), &pi)).collect();
        elements.sort();
        ProductSubgroup { group: self.group.clone(), degree: self.degree, elements }
    }

    /// Trivial intersection with `1 × Σₙ`. For the stabilizer `Γ` of a
    /// transitive set this is exactly freeness of the `Σₙ`-action.
    pub fn is_sigma_free(&self) -> bool {
        self.elements.iter().all(|(g, s)| *g != 0 || s.is_identity())
    }

    /// `1 × Σₙ ∩ Γ`, the permutations that fix the base point.
    pub fn sigma_part(&self) -> Vec<Perm> {
        self.elements.iter().filter(|(g, _)| *g == 0).map(|(_, s)| s.clone()).collect()
    }

    /// `(f × id)(Γ)` inside `G′ × Σₙ`.
    pub fn image_under(&self, f: &Homomorphism) -> ProductSubgroup {
        let mut elements: Vec<ProdElem> = self.elements.iter().map(|(g, s)| (f.apply(*g), s.clone())).collect();
        elements.sort();
        elements.dedup();
        ProductSubgroup { group: f.target().clone(), degree: self.degree, elements }
    }

    /// Whether `Γ` and `Δ` are conjugate in `G × Σₙ`, by scanning all conjugators.
    pub fn is_conjugate_to(&self, other: &ProductSubgroup) -> bool {
        if self.order() != other.order() || self.degree != other.degree {
            return false;
        }
        let perms = Perm::all(self.degree);
        (0..self.group.order()).any(|g| perms.iter().any(|s| self.conjugate(&(g, s.clone())) == *other))
    }

    /// The graph description `(H, T)` when `Γ` meets `1 × Σₙ` trivially.
    pub fn as_graph(&self) -> Result<GraphSubgroup> {
        if !self.is_sigma_free() {
            return Err(Error::NotGraph);
        }
        let members: Vec<usize> = self.elements.iter().map(|(g, _)| *g).collect();
        let h = self.group.subgroup_from_members(&members)?;
        let table: HashMap<usize, &Perm> = self.elements.iter().map(|(g, s)| (*g, s)).collect();
        let t = FiniteGSet::from_fn(&h, self.degree, Side::Left, |g, x| table[&g].apply(x))?;
        Ok(GraphSubgroup { subgroup: self.clone(), h, tset: t })
    }
}

/// `Γ(T) = {(h, σ_T(h))} ≤ G × Σₙ` together with the `H`-set it encodes.
#[derive(Clone, Debug)]
pub struct GraphSubgroup {
    subgroup: ProductSubgroup,
    h: Subgroup,
    tset: FiniteGSet,
}

/// The graph of the permutation representation of the left `H`-set `T`
/// in its own point order.
pub fn graph_subgroup(g: &Arc<Group>, h: &Subgroup, t: &FiniteGSet) -> Result<GraphSubgroup> {
    if !h.group().same(g) || t.domain() != h || t.side() != Side::Left {
        return Err(Error::GroupMismatch);
    }
    let mut elements: Vec<ProdElem> = h.members().into_iter().map(|x| (x, t.perm(x))).collect();
    elements.sort();
    Ok(GraphSubgroup {
        subgroup: ProductSubgroup { group: g.clone(), degree: t.size(), elements },
        h: h.clone(),
        tset: t.clone(),
    })
}

impl GraphSubgroup {
    pub fn subgroup(&self) -> &ProductSubgroup {
        &self.subgroup
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    pub fn tset(&self) -> &FiniteGSet {
        &self.tset
    }

    pub fn degree(&self) -> usize {
        self.tset.size()
    }

    /// `σ_T(h)`.
    pub fn sigma(&self, h: usize) -> Perm {
        self.tset.perm(h)
    }
}

/// The transitive `(G × Σₙ)`-set `(G × Σₙ)/Γ`, materialized as left cosets.
///
/// Each coset is named by the smallest dense index among its elements.
pub struct CosetSpace {
    group: Arc<Group>,
    degree: usize,
    stab: ProductSubgroup,
    points: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl CosetSpace {
    pub fn new(stab: &ProductSubgroup, guard: u64) -> Result<Self> {
        let group = stab.group.clone();
        let n = stab.degree;
        let size = group.order() as u64 * factorial(n) / stab.order() as u64;
        if size > guard {
            return Err(Error::Guard(size as u128));
        }
        let mut space = CosetSpace {
            group: group.clone(),
            degree: n,
            stab: stab.clone(),
            points: Vec::new(),
            index: HashMap::new(),
        };
        let gens = product_generators(&group, n);
        let start = space.canonical(&(0, Perm::identity(n)));
        space.index.insert(start, 0);
        space.points.push(start);
        let mut i = 0;
        while i < space.points.len() {
            let p = unkey(n, space.points[i]);
            for s in &gens {
                let q = space.canonical(&pmul(&group, s, &p));
                if !space.index.contains_key(&q) {
                    space.index.insert(q, space.points.len());
                    space.points.push(q);
                }
            }
            i += 1;
        }
        debug_assert_eq!(space.points.len() as u64, size);
        Ok(space)
    }

    fn canonical(&self, p: &ProdElem) -> u64 {
        self.stab.elements.iter().map(|s| key(self.degree, &pmul(&self.group, p, s))).min().unwrap()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// A group element whose coset is point `i`.
    pub fn representative(&self, i: usize) -> ProdElem {
        unkey(self.degree, self.points[i])
    }

    pub fn act(&self, q: &ProdElem, i: usize) -> usize {
        let p = self.representative(i);
        self.index[&self.canonical(&pmul(&self.group, q, &p))]
    }

    /// Orbits under `G₀ × Σₙ` acting through `f × id`, each listed by its points.
    pub fn orbits_along(&self, f: &Homomorphism) -> Vec<Vec<usize>> {
        let gens: Vec<ProdElem> = product_generators(f.source(), self.degree)
            .into_iter()
            .map(|(g, s)| (f.apply(g), s))
            .collect();
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let c = out.len();
            comp[start] = c;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                for s in &gens {
                    let y = self.act(s, orbit[i]);
                    if comp[y] == usize::MAX {
                        comp[y] = c;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Stabilizer of point `i` in `G₀ × Σₙ` acting through `f × id`,
    /// found by acting with every element.
    pub fn stabilizer_along(&self, f: &Homomorphism, i: usize) -> ProductSubgroup {
        let perms = Perm::all(self.degree);
        let mut elements = Vec::new();
        for g in 0..f.source().order() {
            for s in &perms {
                if self.act(&(f.apply(g), s.clone()), i) == i {
                    elements.push((g, s.clone()));
                }
            }
        }
        ProductSubgroup { group: f.source().clone(), degree: self.degree, elements }
    }
}

/// All of `G × {id}` together with the adjacent transpositions in `1 × Σₙ`.
pub(crate) fn product_generators(g: &Arc<Group>, n: usize) -> Vec<ProdElem> {
    let mut gens: Vec<ProdElem> = (1..g.order()).map(|x| (x, Perm::identity(n))).collect();
    gens.extend((1..n).map(|i| (0, Perm::transposition(n, i - 1, i))));
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{coset_set, group_by_name, hsets_up_to_iso};

    #[test]
    fn regular_c2_graph() {
        let c2 = group_by_name("C2").unwrap();
        let t = coset_set(&c2.whole(), &c2.trivial_subgroup()).unwrap();
        let gamma = graph_subgroup(&c2, &c2.whole(), &t).unwrap();
        assert_eq!(
            gamma.subgroup().elements(),
            &[(0, Perm::identity(2)), (1, Perm::transposition(2, 0, 1))]
        );
    }

    #[test]
    fn trivial_set_graph_is_h_times_identity() {
        let s3 = group_by_name("S3").unwrap();
        let h = s3.whole();
        let gamma = graph_subgroup(&s3, &h, &FiniteGSet::trivial(&h, 3)).unwrap();
        assert!(gamma.subgroup().elements().iter().all(|(_, s)| s.is_identity()));
        assert_eq!(gamma.subgroup().order(), 6);
    }

    #[test]
    fn c4_mod_c2_graph_sends_generator_to_swap() {
        let c4 = group_by_name("C4").unwrap();
        let t = coset_set(&c4.whole(), &c4.subgroup(1)).unwrap();
        let gamma = graph_subgroup(&c4, &c4.whole(), &t).unwrap();
        assert_eq!(gamma.subgroup().order(), 4);
        assert_eq!(gamma.sigma(1), Perm::transposition(2, 0, 1));
        assert_eq!(gamma.subgroup().as_graph().unwrap().h(), &c4.whole());
    }

    #[test]
    fn coset_space_size_and_orbits() {
        let c4 = group_by_name("C4").unwrap();
        let t = coset_set(&c4.whole(), &c4.subgroup(1)).unwrap();
        let gamma = graph_subgroup(&c4, &c4.whole(), &t).unwrap();
        let space = CosetSpace::new(gamma.subgroup(), 1 << 20).unwrap();
        assert_eq!(space.len(), 4 * 2 / 4);
        let id = Homomorphism::identity(&c4);
        assert_eq!(space.orbits_along(&id).len(), 1);
        let st = space.stabilizer_along(&id, 0);
        assert!(st.is_conjugate_to(gamma.subgroup()));
    }

    #[test]
    fn isomorphic_hsets_have_conjugate_graphs() {
        let s3 = group_by_name("S3").unwrap();
        let h = s3.whole();
        for t in hsets_up_to_iso(&h, 4) {
            let relabel = Perm::from_images(vec![3, 1, 0, 2]).unwrap();
            let inv = relabel.inverse();
            let moved = FiniteGSet::from_fn(&h, 4, Side::Left, |g, x| {
                relabel.apply(t.act(g, inv.apply(x)))
            })
            .unwrap();
            let a = graph_subgroup(&s3, &h, &t).unwrap();
            let b = graph_subgroup(&s3, &h, &moved).unwrap();
            assert!(a.subgroup().is_conjugate_to(b.subgroup()));
        }
    }
}
