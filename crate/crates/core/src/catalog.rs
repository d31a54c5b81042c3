//! Named groups and homomorphisms used by the CLI and the verification suites.

use crate::error::{Error, Result};
use crate::grp::{group_by_name, Homomorphism};

/// Groups listed by `group list`.
pub const GROUPS: &[&str] = &["1", "C2", "C3", "C4", "C6", "C8", "K4", "S3", "D8", "S4"];

/// The groups the verification suites range over.
pub const RUNNING_GROUPS: &[&str] = &["1", "C2", "C4", "C8", "K4", "S3"];

/// Named homomorphisms between running groups, as `(name, source, target, map)`.
/// Element 1 of `S3` is the transposition `(2 3)`.
const NAMED: &[(&str, &str, &str, &[usize])] = &[
    ("C2_into_C4", "C2", "C4", &[0, 2]),
    ("C2_into_C8", "C2", "C8", &[0, 4]),
    ("C4_into_C8", "C4", "C8", &[0, 2, 4, 6]),
    ("C4_onto_C2", "C4", "C2", &[0, 1, 0, 1]),
    ("C8_onto_C4", "C8", "C4", &[0, 1, 2, 3, 0, 1, 2, 3]),
    ("C4_to_S3", "C4", "S3", &[0, 1, 0, 1]),
    ("C2_into_S3", "C2", "S3", &[0, 1]),
];

/// Resolves `C2_into_C4`-style names, `bang_<G>` (`G → 1`), `id_<G>`, and
/// `sub_<G>_<i>` (inclusion of subgroup `i` of `G`).
pub fn hom_by_name(name: &str) -> Result<Homomorphism> {
    if let Some(&(_, s, t, map)) = NAMED.iter().find(|(n, ..)| *n == name) {
        return Homomorphism::new(group_by_name(s)?, group_by_name(t)?, map.to_vec());
    }
    let unknown = || Error::UnknownHom(name.to_string());
    if let Some(g) = name.strip_prefix("bang_") {
        return Ok(Homomorphism::to_trivial(&group_by_name(g)?));
    }
    if let Some(g) = name.strip_prefix("id_") {
        return Ok(Homomorphism::identity(&group_by_name(g)?));
    }
    if let Some(rest) = name.strip_prefix("sub_") {
        let (g, i) = rest.rsplit_once('_').ok_or_else(unknown)?;
        let g = group_by_name(g)?;
        let i: usize = i.parse().map_err(|_| unknown())?;
        if i >= g.lattice().len() {
            return Err(unknown());
        }
        return Ok(g.from_subgroup(&g.subgroup(i))?.1);
    }
    Err(unknown())
}

/// Every catalog homomorphism: the named ones, `G → 1`, and all subgroup
/// inclusions, for each running group.
pub fn all_homs() -> Vec<(String, Homomorphism)> {
    let mut names: Vec<String> = NAMED.iter().map(|(n, ..)| n.to_string()).collect();
    for g in RUNNING_GROUPS {
        names.push(format!("bang_{g}"));
        let count = group_by_name(g).expect("catalog group").lattice().len();
        names.extend((0..count).map(|i| format!("sub_{g}_{i}")));
    }
    names.into_iter().map(|n| {
        let f = hom_by_name(&n).expect("catalog hom");
        (n, f)
    }).collect()
}

/// Composable pairs `(h, k)` used for functoriality checks.
pub const CHAINS: &[(&str, &str)] = &[
    ("C2_into_C4", "C4_to_S3"),
    ("C4_onto_C2", "C2_into_S3"),
    ("C2_into_C4", "C4_onto_C2"),
    ("C2_into_C4", "C4_into_C8"),
    ("C8_onto_C4", "C4_to_S3"),
    ("C4_to_S3", "bang_S3"),
    ("sub_S3_4", "bang_S3"),
    ("sub_K4_1", "id_K4"),
    ("id_C4", "id_C4"),
];
