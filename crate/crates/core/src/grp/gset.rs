use std::sync::Arc;

use super::{Group, Perm, Subgroup};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite set with an action of a subgroup `H` (the domain) of some group.
///
/// `act(g, x)` is `g·x` on the left or `x·g` on the right.
#[derive(Clone)]
pub struct FiniteGSet {
    domain: Subgroup,
    size: usize,
    side: Side,
    /// One row per element of the ambient group; rows of non-members are empty.
    act: Vec<Vec<usize>>,
}

impl std::fmt::Debug for FiniteGSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GSet(over {:?}, size {}, {:?})", self.domain, self.size, self.side)
    }
}

impl FiniteGSet {
    /// Builds the set from an action function and checks the action laws.
    pub fn from_fn(
        domain: &Subgroup,
        size: usize,
        side: Side,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let group = domain.group();
        let mut act = vec![Vec::new(); group.order()];
        for g in domain.members() {
            act[g] = (0..size).map(|x| f(g, x)).collect();
        }
        let set = FiniteGSet { domain: domain.clone(), size, side, act };
        set.check()?;
        Ok(set)
    }

    fn check(&self) -> Result<()> {
        let g = self.domain.group();
        for a in self.domain.members() {
            let row = &self.act[a];
            if Perm::from_images(row.clone()).is_err() {
                return Err(Error::InvalidAction(format!("element {a} does not act bijectively")));
            }
        }
        if self.act[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::InvalidAction("identity acts nontrivially".into()));
        }
        for a in self.domain.members() {
            for b in self.domain.members() {
                let ab = g.mul(a, b);
                for x in 0..self.size {
                    let ok = match self.side {
                        Side::Left => self.act[a][self.act[b][x]] == self.act[ab][x],
                        Side::Right => self.act[b][self.act[a][x]] == self.act[ab][x],
                    };
                    if !ok {
                        return Err(Error::InvalidAction(format!(
                            "action law fails at ({a}, {b}, {x})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(domain: &Subgroup, size: usize) -> Self {
        let mut act = vec![Vec::new(); domain.group().order()];
        for g in domain.members() {
            act[g] = (0..size).collect();
        }
        FiniteGSet { domain: domain.clone(), size, side: Side::Left, act }
    }

    pub fn group(&self) -> &Arc<Group> {
        self.domain.group()
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        assert!(self.domain.contains(g), "element {g} is outside the acting subgroup");
        self.act[g][x]
    }

    /// The permutation `x ↦ act(g, x)`.
    pub fn perm(&self, g: usize) -> Perm {
        Perm::from_images(self.act[g].clone()).expect("validated action")
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in 0..self.size {
            if !seen[x] {
                let orbit = self.orbit(x);
                for &y in &orbit {
                    seen[y] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.domain.members().iter().map(|&g| self.act[g][x]).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let bits = self
            .domain
            .members()
            .into_iter()
            .filter(|&g| self.act[g][x] == x)
            .fold(0u32, |a, g| a | 1 << g);
        self.domain.group().subgroup_from_members(&super::members_of(bits)).expect("stabilizer")
    }

    pub fn fixed_points(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.size).filter(|&x| h.members().iter().all(|&g| self.act[g][x] == x)).collect()
    }

    /// Canonical isomorphism invariant: sorted conjugacy-class ids of orbit stabilizers.
    pub fn orbit_types(&self) -> Vec<usize> {
        let lat = self.group().lattice();
        let h = self.domain.id();
        let mut t: Vec<usize> = self
            .orbits()
            .iter()
            .map(|o| lat.class_rep_in(h, self.stabilizer(o[0]).id()))
            .collect();
        t.sort_unstable();
        t
    }

    /// Isomorphism of H-sets over the same acting subgroup and side.
    pub fn is_isomorphic(&self, other: &FiniteGSet) -> bool {
        self.domain == other.domain
            && self.side == other.side
            && self.size == other.size
            && self.orbit_types() == other.orbit_types()
    }

    pub fn is_transitive(&self) -> bool {
        self.size > 0 && self.orbit(0).len() == self.size
    }

    pub fn restrict(&self, l: &Subgroup) -> Result<FiniteGSet> {
        if !l.is_subgroup_of(&self.domain) {
            return Err(Error::NotSubgroup(format!("{l:?} in {:?}", self.domain)));
        }
        let mut act = vec![Vec::new(); self.act.len()];
        for g in l.members() {
            act[g] = self.act[g].clone();
        }
        Ok(FiniteGSet { domain: l.clone(), size: self.size, side: self.side, act })
    }

    /// `c_g T`: the `gHg⁻¹`-set with `(g h g⁻¹)·x = h·x`.
    pub fn conjugate(&self, g: usize) -> FiniteGSet {
        let grp = self.group().clone();
        let dom = self.domain.conjugate(g);
        let mut act = vec![Vec::new(); self.act.len()];
        for h in self.domain.members() {
            act[grp.conj(g, h)] = self.act[h].clone();
        }
        FiniteGSet { domain: dom, size: self.size, side: self.side, act }
    }

    pub fn disjoint_union(&self, other: &FiniteGSet) -> Result<FiniteGSet> {
        if self.domain != other.domain || self.side != other.side {
            return Err(Error::GroupMismatch);
        }
        let mut act = vec![Vec::new(); self.act.len()];
        for g in self.domain.members() {
            let mut row = self.act[g].clone();
            row.extend(other.act[g].iter().map(|&y| y + self.size));
            act[g] = row;
        }
        Ok(FiniteGSet { domain: self.domain.clone(), size: self.size + other.size, side: self.side, act })
    }

    /// An equivariant bijection `π` with `π(h·x) = h·π(x)`, when one exists.
    pub fn isomorphism_to(&self, other: &FiniteGSet) -> Option<Perm> {
        if self.domain != other.domain || self.side != other.side || self.size != other.size {
            return None;
        }
        let mut image = vec![usize::MAX; self.size];
        let mut used = vec![false; other.size];
        let members = self.domain.members();
        for orbit in self.orbits() {
            let x = orbit[0];
            let stab = self.stabilizer(x);
            let y = (0..other.size).find(|&y| !used[y] && other.stabilizer(y) == stab)?;
            for &h in &members {
                let (a, b) = (self.act(h, x), other.act(h, y));
                image[a] = b;
                used[b] = true;
            }
        }
        Perm::from_images(image).ok()
    }

    /// `H ×_K T` for a left `K`-set `T` and `K ≤ H`, with points `(coset, t)`
    /// ordered coset-major using the coset order of [`coset_set`].
    pub fn induce(&self, h: &Subgroup) -> Result<FiniteGSet> {
        let k = &self.domain;
        if self.side != Side::Left || !k.is_subgroup_of(h) {
            return Err(Error::NotSubgroup(format!("{k:?} in {h:?}")));
        }
        let g = self.group().clone();
        let reps = coset_reps(h, k);
        let n = self.size;
        let locate = |x: usize| -> (usize, usize) {
            // x = reps[i] · κ with κ ∈ K
            for (i, &r) in reps.iter().enumerate() {
                let kappa = g.mul(g.inv(r), x);
                if k.contains(kappa) {
                    return (i, kappa);
                }
            }
            unreachable!("coset representatives cover H")
        };
        FiniteGSet::from_fn(h, reps.len() * n, Side::Left, |a, p| {
            let (i, t) = (p / n, p % n);
            let (j, kappa) = locate(g.mul(a, reps[i]));
            j * n + self.act[kappa][t]
        })
    }

    /// Pulls the action back along `map`, a homomorphism from `domain` into this set's domain.
    pub fn pullback(&self, domain: &Subgroup, map: impl Fn(usize) -> usize) -> Result<FiniteGSet> {
        FiniteGSet::from_fn(domain, self.size, self.side, |g, x| self.act(map(g), x))
    }
}

/// Representatives of the left cosets `hK` in `H`: the minimum of each coset, in increasing order.
pub(crate) fn coset_reps(h: &Subgroup, k: &Subgroup) -> Vec<usize> {
    let g = h.group();
    let mut covered = 0u32;
    let mut reps = Vec::new();
    for x in h.members() {
        if covered >> x & 1 == 0 {
            reps.push(x);
            for y in k.members() {
                covered |= 1 << g.mul(x, y);
            }
        }
    }
    reps
}

/// The left `H`-set `H/K`; the point `i` is the coset of the `i`-th smallest representative.
pub fn coset_set(h: &Subgroup, k: &Subgroup) -> Result<FiniteGSet> {
    if !k.is_subgroup_of(h) {
        return Err(Error::NotSubgroup(format!("{k:?} in {h:?}")));
    }
    let g = h.group().clone();
    let reps = coset_reps(h, k);
    let which = |x: usize| reps.iter().position(|&r| k.contains(g.mul(g.inv(r), x))).unwrap();
    FiniteGSet::from_fn(h, reps.len(), Side::Left, |a, i| which(g.mul(a, reps[i])))
}

/// The right `G`-set `H\G` of right cosets `Hg`, ordered by their minima.
pub fn right_coset_set(g: &Arc<Group>, h: &Subgroup) -> Result<FiniteGSet> {
    let mut covered = 0u32;
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if covered >> x & 1 == 0 {
            reps.push(x);
            for y in h.members() {
                covered |= 1 << g.mul(y, x);
            }
        }
    }
    let which = |x: usize| reps.iter().position(|&r| h.contains(g.mul(x, g.inv(r)))).unwrap();
    FiniteGSet::from_fn(&g.whole(), reps.len(), Side::Right, |a, i| which(g.mul(reps[i], a)))
}

/// One `H`-set per isomorphism class of cardinality `n`, as disjoint unions of
/// `H/K` over conjugacy-class representatives `K` (smallest id in each class).
/// Classes are listed by the nondecreasing sequence of orbit types, lexicographically.
pub fn hsets_up_to_iso(h: &Subgroup, n: usize) -> Vec<FiniteGSet> {
    let g = h.group();
    let lat = g.lattice();
    let hid = h.id();
    let mut types: Vec<usize> = iter_bits_u128(lat.below(hid)).map(|k| lat.class_rep_in(hid, k)).collect();
    types.sort_unstable();
    types.dedup();
    let sizes: Vec<usize> = types.iter().map(|&k| lat.index_in(k, hid)).collect();
    let orbits: Vec<FiniteGSet> =
        types.iter().map(|&k| coset_set(h, &g.subgroup(k)).expect("K ≤ H")).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        start: usize,
        left: usize,
        sizes: &[usize],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(chosen.clone());
            return;
        }
        for i in start..sizes.len() {
            if sizes[i] <= left {
                chosen.push(i);
                rec(i, left - sizes[i], sizes, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut combos = Vec::new();
    rec(0, n, &sizes, &mut chosen, &mut combos);
    for combo in combos {
        let mut set = FiniteGSet::trivial(h, 0);
        for i in combo {
            set = set.disjoint_union(&orbits[i]).expect("same domain");
        }
        out.push(set);
    }
    out
}

pub(crate) fn iter_bits_u128(bits: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |i| bits >> i & 1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::group_by_name;

    #[test]
    fn c4_on_cosets_of_c2() {
        let c4 = group_by_name("C4").unwrap();
        let x = coset_set(&c4.whole(), &c4.subgroup(1)).unwrap();
        assert_eq!(x.size(), 2);
        for p in 0..2 {
            assert_eq!(x.stabilizer(p), c4.subgroup(1));
        }
    }

    #[test]
    fn orbit_stabilizer_on_cosets_and_regular_action() {
        for name in ["C4", "K4", "S3", "D8"] {
            let g = group_by_name(name).unwrap();
            for k in g.all_subgroups() {
                let x = coset_set(&g.whole(), &k).unwrap();
                for p in 0..x.size() {
                    assert_eq!(x.orbit(p).len() * x.stabilizer(p).order(), g.order());
                }
                assert_eq!(x.fixed_points(&g.trivial_subgroup()).len(), x.size());
            }
            let regular = coset_set(&g.whole(), &g.trivial_subgroup()).unwrap();
            assert_eq!(regular.orbits().len(), 1);
            assert_eq!(regular.stabilizer(0).order(), 1);
            let triv = FiniteGSet::trivial(&g.whole(), 3);
            assert_eq!(triv.orbits().len(), 3);
            assert_eq!(triv.stabilizer(2), g.whole());
        }
    }

    #[test]
    fn hset_class_counts() {
        let c2 = group_by_name("C2").unwrap();
        assert_eq!(hsets_up_to_iso(&c2.whole(), 0).len(), 1);
        assert_eq!(hsets_up_to_iso(&c2.whole(), 2).len(), 2);
        let c4 = group_by_name("C4").unwrap();
        // orbit sizes 1, 2, 4 with one subgroup each: 1111, 112, 22, 4
        assert_eq!(hsets_up_to_iso(&c4.whole(), 4).len(), 4);
        for t in hsets_up_to_iso(&c4.whole(), 4) {
            assert_eq!(t.size(), 4);
        }
    }

    #[test]
    fn hset_classes_are_pairwise_non_isomorphic() {
        let s3 = group_by_name("S3").unwrap();
        for n in 0..=6 {
            let sets = hsets_up_to_iso(&s3.whole(), n);
            for (i, a) in sets.iter().enumerate() {
                for b in &sets[i + 1..] {
                    assert!(!a.is_isomorphic(b));
                }
            }
        }
    }

    #[test]
    fn right_cosets_act_on_the_right() {
        let c4 = group_by_name("C4").unwrap();
        let x = right_coset_set(&c4, &c4.subgroup(1)).unwrap();
        assert_eq!(x.size(), 2);
        assert_eq!(x.side(), Side::Right);
        assert_eq!(x.act(1, 0), 1);
        assert_eq!(x.act(2, 0), 0);
    }

    #[test]
    fn induction_matches_cosets() {
        let c4 = group_by_name("C4").unwrap();
        let c2 = c4.subgroup(1);
        let t = coset_set(&c2, &c4.trivial_subgroup()).unwrap();
        let ind = t.induce(&c4.whole()).unwrap();
        let direct = coset_set(&c4.whole(), &c4.trivial_subgroup()).unwrap();
        assert!(ind.is_isomorphic(&direct));
    }

    #[test]
    fn bad_action_is_rejected() {
        let c2 = group_by_name("C2").unwrap();
        assert!(FiniteGSet::from_fn(&c2.whole(), 2, Side::Left, |g, x| if g == 1 { 0 } else { x }).is_err());
    }
}
