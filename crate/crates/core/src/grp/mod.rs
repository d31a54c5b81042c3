//! Finite groups as Cayley tables, their subgroups, homomorphisms,
//! finite G-sets and the groups `G × Σₙ` in which graph subgroups live.

mod gset;
mod perm;
mod product;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use gset::{coset_set, hsets_up_to_iso, right_coset_set, FiniteGSet, Side};
pub use perm::{factorial, Perm};
pub(crate) use gset::coset_reps as coset_reps_of;
pub(crate) use product::{key, pmul, product_generators, unkey};
pub use product::{graph_subgroup, CosetSpace, GraphSubgroup, ProdElem, ProductSubgroup};

use crate::error::{Error, Result};

/// Largest group order the constructors accept.
pub const MAX_ORDER: usize = 24;
/// Largest subgroup count; relation rows are stored as `u128`.
pub const MAX_SUBGROUPS: usize = 128;

/// A finite group given by its multiplication table. Element `0` is the identity.
pub struct Group {
    name: String,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    lattice: SubgroupLattice,
}

impl Group {
    pub fn from_table(name: impl Into<String>, mul: Vec<Vec<usize>>) -> Result<Arc<Group>> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        for (a, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {a} has length {}", row.len())));
            }
            if let Some(&c) = row.iter().find(|&&c| c >= n) {
                return Err(Error::InvalidTable(format!("entry {c} out of range in row {a}")));
            }
        }
        if (0..n).any(|a| mul[0][a] != a || mul[a][0] != a) {
            return Err(Error::InvalidTable("element 0 is not a two-sided identity".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == 0 && mul[b][a] == 0) {
                Some(b) => inv[a] = b,
                None => return Err(Error::InvalidTable(format!("element {a} has no inverse"))),
            }
        }
        let lattice = SubgroupLattice::build(&mul, &inv)?;
        Ok(Arc::new(Group { name: name.into(), mul, inv, lattice }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g a g⁻¹`.
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul[self.mul[g][a]][self.inv[g]]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn same(self: &Arc<Self>, other: &Arc<Group>) -> bool {
        Arc::ptr_eq(self, other) || (self.name == other.name && self.mul == other.mul)
    }

    pub fn subgroup(self: &Arc<Self>, id: usize) -> Subgroup {
        Subgroup { group: self.clone(), bits: self.lattice.masks[id] }
    }

    /// Every subgroup, in canonical order: by size, then by sorted member list.
    pub fn all_subgroups(self: &Arc<Self>) -> Vec<Subgroup> {
        (0..self.lattice.len()).map(|i| self.subgroup(i)).collect()
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        self.subgroup(0)
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        self.subgroup(self.lattice.len() - 1)
    }

    pub fn subgroup_from_members(self: &Arc<Self>, members: &[usize]) -> Result<Subgroup> {
        let bits = members.iter().try_fold(0u32, |acc, &m| {
            if m < self.order() {
                Ok(acc | 1 << m)
            } else {
                Err(Error::NotSubgroup(format!("{members:?}")))
            }
        })?;
        if self.lattice.index.contains_key(&bits) {
            Ok(Subgroup { group: self.clone(), bits })
        } else {
            Err(Error::NotSubgroup(format!("{members:?}")))
        }
    }

    pub fn generated(self: &Arc<Self>, gens: &[usize]) -> Subgroup {
        let bits = closure(&self.mul, gens.iter().fold(1u32, |acc, &g| acc | 1 << g));
        Subgroup { group: self.clone(), bits }
    }

    /// `H` as a group in its own right, with its inclusion into `self`.
    /// Elements of the new group are the members of `H` in increasing order.
    pub fn from_subgroup(self: &Arc<Self>, h: &Subgroup) -> Result<(Arc<Group>, Homomorphism)> {
        let members = h.members();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mul = members
            .iter()
            .map(|&a| members.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        let name = format!("{}[{}]", self.name, h.id());
        let sub = Group::from_table(name, mul)?;
        let inc = Homomorphism::new(sub, self.clone(), members)?;
        Ok((inc.source.clone(), inc))
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.order())
    }
}

fn closure(mul: &[Vec<usize>], mut bits: u32) -> u32 {
    loop {
        let mut next = bits;
        for a in iter_bits(bits) {
            for b in iter_bits(bits) {
                next |= 1 << mul[a][b];
            }
        }
        if next == bits {
            return bits;
        }
        bits = next;
    }
}

pub(crate) fn iter_bits(bits: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| bits >> i & 1 == 1)
}

pub(crate) fn members_of(bits: u32) -> Vec<usize> {
    iter_bits(bits).collect()
}

/// Precomputed structure of `Sub(G)`: canonical ids, inclusion, intersection, conjugation.
pub struct SubgroupLattice {
    masks: Vec<u32>,
    index: HashMap<u32, usize>,
    below: Vec<u128>,
    meet: Vec<Vec<usize>>,
    conj: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    fn build(mul: &[Vec<usize>], inv: &[usize]) -> Result<Self> {
        let n = mul.len();
        let mut found: Vec<u32> = vec![1];
        let mut seen: std::collections::HashSet<u32> = found.iter().copied().collect();
        let mut i = 0;
        while i < found.len() {
            let s = found[i];
            for g in 0..n {
                if s >> g & 1 == 0 {
                    let t = closure(mul, s | 1 << g);
                    if seen.insert(t) {
                        found.push(t);
                    }
                }
            }
            i += 1;
        }
        if found.len() > MAX_SUBGROUPS {
            return Err(Error::TooManySubgroups(found.len()));
        }
        found.sort_by(|a, b| {
            a.count_ones().cmp(&b.count_ones()).then_with(|| members_of(*a).cmp(&members_of(*b)))
        });
        let index: HashMap<u32, usize> = found.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let k = found.len();
        let below = (0..k)
            .map(|j| {
                (0..k).filter(|&i| found[i] & !found[j] == 0).fold(0u128, |acc, i| acc | 1 << i)
            })
            .collect();
        let meet = (0..k).map(|i| (0..k).map(|j| index[&(found[i] & found[j])]).collect()).collect();
        let conj = (0..n)
            .map(|g| {
                found
                    .iter()
                    .map(|&m| {
                        let c = iter_bits(m).fold(0u32, |acc, a| acc | 1 << mul[mul[g][a]][inv[g]]);
                        index[&c]
                    })
                    .collect()
            })
            .collect();
        Ok(SubgroupLattice { masks: found, index, below, meet, conj })
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, i: usize) -> u32 {
        self.masks[i]
    }

    pub fn id_of(&self, mask: u32) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    pub fn order_of(&self, i: usize) -> usize {
        self.masks[i].count_ones() as usize
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j] >> i & 1 == 1
    }

    /// Bitset of the ids contained in subgroup `j`.
    pub fn below(&self, j: usize) -> u128 {
        self.below[j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    /// Id of `g H_i g⁻¹`.
    pub fn conj(&self, g: usize, i: usize) -> usize {
        self.conj[g][i]
    }

    pub fn index_in(&self, k: usize, h: usize) -> usize {
        self.order_of(h) / self.order_of(k)
    }

    /// Smallest id conjugate to `k` by an element of subgroup `h`.
    pub fn class_rep_in(&self, h: usize, k: usize) -> usize {
        iter_bits(self.masks[h]).map(|g| self.conj[g][k]).min().unwrap_or(k)
    }
}

/// A subgroup of a particular group, identified by its member set.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<Group>,
    bits: u32,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.group.same(&other.group)
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]{:?}", self.group.name(), self.id(), self.members())
    }
}

impl Subgroup {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn id(&self) -> usize {
        self.group.lattice.index[&self.bits]
    }

    pub fn members(&self) -> Vec<usize> {
        members_of(self.bits)
    }

    pub fn order(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, g: usize) -> bool {
        g < 32 && self.bits >> g & 1 == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup { group: self.group.clone(), bits: self.bits & other.bits }
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        self.group.subgroup(self.group.lattice.conj(g, self.id()))
    }

    pub fn index_in(&self, over: &Subgroup) -> usize {
        over.order() / self.order()
    }
}

/// Catalog of groups the constructors know how to build.
#[derive(Clone, Debug)]
pub enum GroupKind {
    Cyclic(usize),
    KleinFour,
    Symmetric(usize),
    /// Symmetries of the regular `n`-gon, of order `2n`.
    Dihedral(usize),
    DirectProduct(Arc<Group>, Arc<Group>),
}

/// Element orderings: `Cyclic` uses powers of a generator; `Symmetric` lists
/// permutations lexicographically; `Dihedral(n)` puts `rⁱ` at `i` and `s rⁱ`
/// at `n + i`; `DirectProduct(A, B)` puts `(a, b)` at `a·|B| + b`.
pub fn make_group(kind: GroupKind) -> Result<Arc<Group>> {
    match kind {
        GroupKind::Cyclic(n) => {
            if n == 0 || n > MAX_ORDER {
                return Err(Error::UnknownGroup(format!("cyclic {n}")));
            }
            let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
            Group::from_table(format!("C{n}"), mul)
        }
        GroupKind::KleinFour => {
            let mul = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
            Group::from_table("K4", mul)
        }
        GroupKind::Symmetric(n) => {
            if n == 0 || factorial(n) as usize > MAX_ORDER {
                return Err(Error::UnknownGroup(format!("symmetric {n}")));
            }
            let perms = Perm::all(n);
            let pos: HashMap<Perm, usize> =
                perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
            let mul = perms
                .iter()
                .map(|p| perms.iter().map(|q| pos[&p.compose(q)]).collect())
                .collect();
            Group::from_table(format!("S{n}"), mul)
        }
        GroupKind::Dihedral(n) => {
            if n < 1 || 2 * n > MAX_ORDER {
                return Err(Error::UnknownGroup(format!("dihedral {}", 2 * n)));
            }
            let elem = |refl: bool, i: usize| if refl { n + i } else { i };
            let mul = (0..2 * n)
                .map(|a| {
                    (0..2 * n)
                        .map(|b| {
                            let (sa, i) = (a >= n, a % n);
                            let (sb, j) = (b >= n, b % n);
                            match (sa, sb) {
                                (false, false) => elem(false, (i + j) % n),
                                (false, true) => elem(true, (j + n - i) % n),
                                (true, false) => elem(true, (i + j) % n),
                                (true, true) => elem(false, (j + n - i) % n),
                            }
                        })
                        .collect()
                })
                .collect();
            Group::from_table(format!("D{}", 2 * n), mul)
        }
        GroupKind::DirectProduct(a, b) => {
            let (na, nb) = (a.order(), b.order());
            if na * nb > MAX_ORDER {
                return Err(Error::OrderTooLarge(na * nb));
            }
            let mul = (0..na * nb)
                .map(|x| {
                    (0..na * nb)
                        .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                        .collect()
                })
                .collect();
            Group::from_table(format!("{}x{}", a.name(), b.name()), mul)
        }
    }
}

/// Parses catalog names: `1`, `C<n>`, `K4`, `S<n>`, `D<2n>`, and `AxB` products.
pub fn group_by_name(name: &str) -> Result<Arc<Group>> {
    let unknown = || Error::UnknownGroup(name.to_string());
    if let Some((a, b)) = name.split_once('x') {
        return make_group(GroupKind::DirectProduct(group_by_name(a)?, group_by_name(b)?));
    }
    if name == "1" {
        return make_group(GroupKind::Cyclic(1));
    }
    if name == "K4" {
        return make_group(GroupKind::KleinFour);
    }
    let (head, tail) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
    let n: usize = tail.parse().map_err(|_| unknown())?;
    match head {
        "C" => make_group(GroupKind::Cyclic(n)),
        "S" => make_group(GroupKind::Symmetric(n)),
        "D" if n.is_multiple_of(2) => make_group(GroupKind::Dihedral(n / 2)),
        _ => Err(unknown()),
    }
}

/// A group homomorphism given by its table of images.
#[derive(Clone)]
pub struct Homomorphism {
    source: Arc<Group>,
    target: Arc<Group>,
    map: Vec<usize>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.source.name(), self.target.name(), self.map)
    }
}

impl Homomorphism {
    pub fn new(source: Arc<Group>, target: Arc<Group>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::InvalidHom(format!(
                "map has {} entries for a group of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&x) = map.iter().find(|&&x| x >= target.order()) {
            return Err(Error::InvalidHom(format!("image {x} out of range")));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotMultiplicative { a, b });
                }
            }
        }
        Ok(Homomorphism { source, target, map })
    }

    pub fn identity(g: &Arc<Group>) -> Self {
        Homomorphism { source: g.clone(), target: g.clone(), map: (0..g.order()).collect() }
    }

    /// The unique map `G → 1`.
    pub fn to_trivial(g: &Arc<Group>) -> Self {
        let one = make_group(GroupKind::Cyclic(1)).expect("trivial group");
        Homomorphism { source: g.clone(), target: one, map: vec![0; g.order()] }
    }

    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Group> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn is_injective(&self) -> bool {
        (1..self.map.len()).all(|g| self.map[g] != 0)
    }

    pub fn kernel(&self) -> Subgroup {
        let bits = (0..self.map.len()).filter(|&g| self.map[g] == 0).fold(0u32, |a, g| a | 1 << g);
        Subgroup { group: self.source.clone(), bits }
    }

    pub fn image_subgroup(&self, h: &Subgroup) -> Subgroup {
        let bits = h.members().into_iter().fold(0u32, |a, g| a | 1 << self.map[g]);
        Subgroup { group: self.target.clone(), bits }
    }

    pub fn preimage_subgroup(&self, h: &Subgroup) -> Subgroup {
        let bits = (0..self.map.len()).filter(|&g| h.contains(self.map[g])).fold(0u32, |a, g| a | 1 << g);
        Subgroup { group: self.source.clone(), bits }
    }

    pub fn image(&self) -> Subgroup {
        self.image_subgroup(&self.source.whole())
    }

    /// Image on subgroup ids: entry `i` is the id of `f(Hᵢ)`.
    pub fn image_ids(&self) -> Vec<usize> {
        self.source.all_subgroups().iter().map(|h| self.image_subgroup(h).id()).collect()
    }

    /// Preimage on subgroup ids: entry `i` is the id of `f⁻¹(H′ᵢ)`.
    pub fn preimage_ids(&self) -> Vec<usize> {
        self.target.all_subgroups().iter().map(|h| self.preimage_subgroup(h).id()).collect()
    }

    /// `k ∘ self`.
    pub fn then(&self, k: &Homomorphism) -> Result<Homomorphism> {
        if !self.target.same(&k.source) {
            return Err(Error::NotComposable);
        }
        Ok(Homomorphism {
            source: self.source.clone(),
            target: k.target.clone(),
            map: self.map.iter().map(|&g| k.map[g]).collect(),
        })
    }
}

/// One representative (the smallest element) per double coset `A g B`, in increasing order.
pub fn double_cosets(g: &Arc<Group>, a: &Subgroup, b: &Subgroup) -> Vec<usize> {
    let mut covered = 0u32;
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if covered >> x & 1 == 1 {
            continue;
        }
        reps.push(x);
        for p in a.members() {
            for q in b.members() {
                covered |= 1 << g.mul(g.mul(p, x), q);
            }
        }
    }
    reps
}

/// The set `A g B`.
pub fn double_coset(g: &Arc<Group>, a: &Subgroup, x: usize, b: &Subgroup) -> Vec<usize> {
    let mut bits = 0u32;
    for p in a.members() {
        for q in b.members() {
            bits |= 1 << g.mul(g.mul(p, x), q);
        }
    }
    members_of(bits)
}
