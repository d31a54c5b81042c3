//! JSON wire formats for groups, homomorphisms, transfer systems, admissible
//! classes and symmetric sequences. Catalog groups are written by name;
//! anything else carries its full Cayley table.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grp::{coset_set, graph_subgroup, group_by_name, make_group, FiniteGSet, Group, GroupKind, Homomorphism, Perm, ProductSubgroup, Subgroup};
use crate::indexing::{multiplicities, AdmissibleClass};
use crate::operad::SymmetricSequence;
use crate::transfer::{Relation, TransferSystem};

fn bad(what: &str) -> Error {
    Error::Parse(format!("malformed {what}"))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(what))
}

fn as_usize_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array().ok_or_else(|| bad(what))?.iter().map(|x| as_usize(x, what)).collect()
}

pub fn group_to_json(g: &Arc<Group>) -> Value {
    match group_by_name(g.name()) {
        Ok(known) if known.table() == g.table() => json!(g.name()),
        _ => group_table_json(g),
    }
}

/// `{"name", "order", "mul"}` regardless of whether the group is cataloged.
pub fn group_table_json(g: &Arc<Group>) -> Value {
    json!({ "name": g.name(), "order": g.order(), "mul": g.table() })
}

/// A catalog name, `{"name", "mul"}`, or `{"kind": "cyclic" | "symmetric" | "dihedral" | "klein", "n"}`.
pub fn group_from_json(v: &Value) -> Result<Arc<Group>> {
    if let Some(name) = v.as_str() {
        return group_by_name(name);
    }
    let obj = v.as_object().ok_or_else(|| bad("group"))?;
    if let Some(mul) = obj.get("mul") {
        let rows = mul
            .as_array()
            .ok_or_else(|| bad("Cayley table"))?
            .iter()
            .map(|r| as_usize_list(r, "Cayley table"))
            .collect::<Result<Vec<_>>>()?;
        let name = obj.get("name").and_then(Value::as_str).unwrap_or("G");
        return Group::from_table(name, rows);
    }
    let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| bad("group"))?;
    let n = || obj.get("n").ok_or_else(|| bad("group")).and_then(|n| as_usize(n, "group order"));
    match kind {
        "cyclic" => make_group(GroupKind::Cyclic(n()?)),
        "symmetric" => make_group(GroupKind::Symmetric(n()?)),
        "dihedral" => make_group(GroupKind::Dihedral(n()?)),
        "klein" => make_group(GroupKind::KleinFour),
        _ => Err(Error::UnknownGroup(kind.to_string())),
    }
}

pub fn hom_to_json(f: &Homomorphism) -> Value {
    json!({ "source": group_to_json(f.source()), "target": group_to_json(f.target()), "map": f.map() })
}

pub fn hom_from_json(v: &Value) -> Result<Homomorphism> {
    let source = group_from_json(v.get("source").ok_or_else(|| bad("homomorphism"))?)?;
    let target = group_from_json(v.get("target").ok_or_else(|| bad("homomorphism"))?)?;
    let map = as_usize_list(v.get("map").ok_or_else(|| bad("homomorphism"))?, "homomorphism map")?;
    Homomorphism::new(source, target, map)
}

/// `{"group", "pairs": [[i, j], …]}` listing the nontrivial pairs.
pub fn relation_to_json(r: &Relation) -> Value {
    let pairs: Vec<[usize; 2]> = r.nontrivial_pairs().into_iter().map(|(i, j)| [i, j]).collect();
    json!({ "group": group_to_json(r.group()), "pairs": pairs })
}

pub fn transfer_to_json(t: &TransferSystem) -> Value {
    relation_to_json(t.relation())
}

/// The raw relation, reflexive pairs added; validity is left to the caller.
pub fn relation_from_json(v: &Value) -> Result<Relation> {
    let g = group_from_json(v.get("group").ok_or_else(|| bad("transfer system"))?)?;
    let pairs = v
        .get("pairs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("transfer system"))?
        .iter()
        .map(|p| match as_usize_list(p, "pair")?.as_slice() {
            &[i, j] => Ok((i, j)),
            _ => Err(bad("pair")),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut r = Relation::from_pairs(&g, &pairs)?;
    for i in 0..r.size() {
        r.insert(i, i);
    }
    Ok(r)
}

/// List of `{"H", "orbits": [[K, multiplicity], …]}`.
pub fn admissible_to_json(a: &AdmissibleClass) -> Value {
    Value::Array(
        a.signatures()
            .into_iter()
            .map(|(h, orbits)| json!({ "H": h, "orbits": orbits.into_iter().map(|(k, m)| [k, m]).collect::<Vec<_>>() }))
            .collect(),
    )
}

fn stabilizer_to_json(s: &ProductSubgroup) -> Value {
    match s.as_graph() {
        Ok(graph) => json!({
            "H": graph.h().id(),
            "orbits": multiplicities(&graph.tset().orbit_types()).into_iter().map(|(k, m)| [k, m]).collect::<Vec<_>>(),
        }),
        Err(_) => json!({
            "elements": s.elements().iter().map(|(g, p)| json!([g, p.images()])).collect::<Vec<_>>(),
        }),
    }
}

/// `{"group", "window", "levels": {n: [{"stabilizer": …}]}}`.
pub fn symseq_to_json(s: &SymmetricSequence) -> Value {
    let levels: BTreeMap<String, Vec<Value>> = (0..=s.window())
        .filter(|&n| !s.level(n).is_empty())
        .map(|n| (n.to_string(), s.level(n).iter().map(|o| json!({ "stabilizer": stabilizer_to_json(o.stabilizer()) })).collect()))
        .collect();
    json!({ "group": group_to_json(s.group()), "window": s.window(), "levels": levels })
}

/// `⊔ₖ (H/K)^{⊔m}` as an `H`-set.
fn hset_from_orbits(h: &Subgroup, orbits: &[(usize, usize)]) -> Result<FiniteGSet> {
    let mut out = FiniteGSet::trivial(h, 0);
    for &(k, m) in orbits {
        let piece = coset_set(h, &h.group().subgroup(k))?;
        for _ in 0..m {
            out = out.disjoint_union(&piece)?;
        }
    }
    Ok(out)
}

fn stabilizer_from_json(g: &Arc<Group>, n: usize, v: &Value) -> Result<ProductSubgroup> {
    if let Some(elements) = v.get("elements") {
        let elems = elements
            .as_array()
            .ok_or_else(|| bad("stabilizer"))?
            .iter()
            .map(|e| {
                let g = as_usize(e.get(0).ok_or_else(|| bad("stabilizer"))?, "stabilizer")?;
                let p = Perm::from_images(as_usize_list(e.get(1).ok_or_else(|| bad("stabilizer"))?, "stabilizer")?)?;
                Ok((g, p))
            })
            .collect::<Result<Vec<_>>>()?;
        return ProductSubgroup::from_elements(g, n, elems);
    }
    let h_id = as_usize(v.get("H").ok_or_else(|| bad("stabilizer"))?, "stabilizer")?;
    if h_id >= g.lattice().len() {
        return Err(bad("subgroup id"));
    }
    let orbits = v
        .get("orbits")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("stabilizer"))?
        .iter()
        .map(|p| match as_usize_list(p, "orbit")?.as_slice() {
            &[k, m] if k < g.lattice().len() => Ok((k, m)),
            _ => Err(bad("orbit")),
        })
        .collect::<Result<Vec<_>>>()?;
    let h = g.subgroup(h_id);
    let t = hset_from_orbits(&h, &orbits)?;
    if t.size() != n {
        return Err(Error::Arity(format!("orbit spec of size {} at level {n}", t.size())));
    }
    Ok(graph_subgroup(g, &h, &t)?.subgroup().clone())
}

pub fn symseq_from_json(v: &Value) -> Result<SymmetricSequence> {
    let g = group_from_json(v.get("group").ok_or_else(|| bad("symmetric sequence"))?)?;
    let levels = v.get("levels").and_then(Value::as_object).ok_or_else(|| bad("symmetric sequence"))?;
    let mut parsed = Vec::new();
    for (n, orbits) in levels {
        let n: usize = n.parse().map_err(|_| bad("level index"))?;
        for o in orbits.as_array().ok_or_else(|| bad("level"))? {
            parsed.push(stabilizer_from_json(&g, n, o.get("stabilizer").ok_or_else(|| bad("orbit"))?)?);
        }
    }
    let top = parsed.iter().map(ProductSubgroup::degree).max().unwrap_or(0);
    let window = match v.get("window") {
        Some(w) => as_usize(w, "window")?,
        None => top,
    };
    let mut s = SymmetricSequence::new(&g, window);
    for stab in parsed {
        s.add_orbit(stab)?;
    }
    Ok(s)
}
