//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ninfty::catalog::{all_homs, hom_by_name, CHAINS, GROUPS};
use ninfty::functors::{check_pointwise_order, image_r, verify_functoriality};
use ninfty::grp::{group_by_name, right_coset_set, Group};
use ninfty::operad::{coind_as_product_check, CoindAsOperad, DEFAULT_GUARD};
use ninfty::rewrite::FuzzConfig;
use ninfty::transfer::{cogenerate, enumerate_all, generate, hasse, join, meet, Relation, TransferSystem, DEFAULT_BUDGET};
use ninfty::verify::{galois_check, run_suite, Suite, VerifyConfig};

type Outcome = Result<String, String>;
type Cache = HashMap<String, Vec<TransferSystem>>;
type Criterion = Box<dyn FnOnce(&mut Cache) -> Outcome>;

/// Every transfer system of `g` by filtering all subsets of the proper
/// inclusions against the axioms, computed on raw member masks.
fn naive_transfer_systems(g: &Arc<Group>) -> Vec<BTreeSet<(u32, u32)>> {
    let lat = g.lattice();
    let masks: Vec<u32> = (0..lat.len()).map(|i| lat.mask(i)).collect();
    let sub = |a: u32, b: u32| a & b == a;
    let conj = |x: usize, m: u32| (0..g.order()).filter(|&a| m >> a & 1 == 1).fold(0u32, |acc, a| acc | 1 << g.conj(x, a));
    let proper: Vec<(u32, u32)> =
        masks.iter().flat_map(|&k| masks.iter().filter(move |&&h| h != k && sub(k, h)).map(move |&h| (k, h))).collect();
    assert!(proper.len() <= 16, "naive oracle limited to 16 proper inclusions");
    let mut out = Vec::new();
    for bits in 0u32..1 << proper.len() {
        let mut r: BTreeSet<(u32, u32)> = masks.iter().map(|&m| (m, m)).collect();
        r.extend(proper.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &p)| p));
        let transitive = r.iter().all(|&(a, b)| r.iter().filter(|&&(c, _)| c == b).all(|&(_, d)| r.contains(&(a, d))));
        let conjugation = r.iter().all(|&(k, h)| (0..g.order()).all(|x| r.contains(&(conj(x, k), conj(x, h)))));
        let restriction = r.iter().all(|&(k, h)| masks.iter().filter(|&&l| sub(l, h)).all(|&l| r.contains(&(k & l, l))));
        if transitive && conjugation && restriction {
            out.push(r);
        }
    }
    out
}

fn covers_of<T>(items: &[T], leq: impl Fn(&T, &T) -> bool) -> Vec<(usize, usize)> {
    let n = items.len();
    let lt = |a: usize, b: usize| a != b && leq(&items[a], &items[b]);
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Clone, PartialEq)]
enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

fn trees(leaves: usize) -> Vec<Tree> {
    if leaves == 1 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    for l in 1..leaves {
        for a in trees(l) {
            for b in trees(leaves - l) {
                out.push(Tree::Node(Box::new(a.clone()), Box::new(b)));
            }
        }
    }
    out
}

/// Every tree reachable from `t` by one right rotation `(a b) c → a (b c)`.
fn rotations(t: &Tree) -> Vec<Tree> {
    let Tree::Node(l, r) = t else { return Vec::new() };
    let mut out = Vec::new();
    if let Tree::Node(a, b) = l.as_ref() {
        out.push(Tree::Node(a.clone(), Box::new(Tree::Node(b.clone(), r.clone()))));
    }
    out.extend(rotations(l).into_iter().map(|x| Tree::Node(Box::new(x), r.clone())));
    out.extend(rotations(r).into_iter().map(|x| Tree::Node(l.clone(), Box::new(x))));
    out
}

/// The 1-skeleton of the associahedron on five letters as the Tamari
/// rotation graph of binary trees with five leaves.
fn associahedron_k5() -> UnGraph<(), ()> {
    let ts = trees(5);
    let mut g = UnGraph::new_undirected();
    let nodes: Vec<_> = ts.iter().map(|_| g.add_node(())).collect();
    for (i, t) in ts.iter().enumerate() {
        for r in rotations(t) {
            let j = ts.iter().position(|x| *x == r).expect("rotation stays in the set");
            g.add_edge(nodes[i], nodes[j], ());
        }
    }
    g
}

fn golden(name: &str) -> serde_json::Value {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(&path).expect("golden file")).expect("golden JSON")
}

fn lattice(cache: &mut Cache, g: &Arc<Group>) -> Vec<TransferSystem> {
    cache.entry(g.name().to_string()).or_insert_with(|| enumerate_all(g, DEFAULT_BUDGET).expect("enumeration")).clone()
}

fn suite(s: Suite, cfg: VerifyConfig) -> Outcome {
    let r = run_suite(s, &cfg).map_err(|e| e.to_string())?;
    if r.passed {
        Ok(format!("{} checks, {} cases", r.checks.len(), r.cases))
    } else {
        Err(r.counterexample.unwrap_or_else(|| "failed without a counterexample".into()))
    }
}

fn lattice_counts() -> Outcome {
    let counts = golden("lattices.json");
    let mut summary = Vec::new();
    for name in ["1", "C2", "C4", "C8", "K4", "S3"] {
        let g = group_by_name(name).map_err(|e| e.to_string())?;
        let found = enumerate_all(&g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let naive = naive_transfer_systems(&g);
        let as_masks: BTreeSet<BTreeSet<(u32, u32)>> = found
            .iter()
            .map(|t| t.pairs().into_iter().map(|(i, j)| (g.lattice().mask(i), g.lattice().mask(j))).collect())
            .collect();
        if as_masks != naive.iter().cloned().collect() {
            return Err(format!("{name}: enumerator and subset filter disagree"));
        }
        let covers = hasse(&found).len();
        let naive_covers = covers_of(&naive, |a, b| a.is_subset(b)).len();
        let want = &counts[name];
        if covers != naive_covers || want["nodes"] != found.len() || want["covers"] != covers {
            return Err(format!("{name}: {} nodes / {covers} covers, oracle {naive_covers} covers, golden {want}", found.len()));
        }
        summary.push(format!("{name}:{}", found.len()));
    }
    let g = group_by_name("C8").map_err(|e| e.to_string())?;
    let c8 = enumerate_all(&g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let mut diagram = UnGraph::<(), ()>::new_undirected();
    let nodes: Vec<_> = c8.iter().map(|_| diagram.add_node(())).collect();
    for (a, b) in hasse(&c8) {
        diagram.add_edge(nodes[a], nodes[b], ());
    }
    if !is_isomorphic(&diagram, &associahedron_k5()) {
        return Err("Hasse diagram of Tr(C8) is not the K5 skeleton".into());
    }
    Ok(format!("{}; Tr(C8) Hasse diagram is the K5 skeleton", summary.join(" ")))
}

fn lattice_laws(cache: &mut Cache) -> Outcome {
    let mut cases = 0;
    for name in ["C4", "C8", "K4", "S3"] {
        let g = group_by_name(name).map_err(|e| e.to_string())?;
        let lat = lattice(cache, &g);
        for s in &lat {
            for t in &lat {
                let lower: Vec<_> = lat.iter().filter(|x| x.refines(s) && x.refines(t)).collect();
                let upper: Vec<_> = lat.iter().filter(|x| s.refines(x) && t.refines(x)).collect();
                let glb = lower.iter().find(|x| lower.iter().all(|y| y.refines(x))).ok_or("no glb")?;
                let lub = upper.iter().find(|x| upper.iter().all(|y| x.refines(y))).ok_or("no lub")?;
                let (m, j) = (meet(s, t).map_err(|e| e.to_string())?, join(s, t).map_err(|e| e.to_string())?);
                if &&m != glb || &&j != lub {
                    return Err(format!("{name}: s = {s:?}, t = {t:?}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} pairs"))
}

fn random_relation(g: &Arc<Group>, rng: &mut ChaCha8Rng, density: f64) -> Relation {
    let lat = g.lattice();
    let mut r = Relation::equality(g);
    for k in 0..lat.len() {
        for h in 0..lat.len() {
            if k != h && lat.leq(k, h) && rng.gen_bool(density) {
                r.insert(k, h);
            }
        }
    }
    r
}

fn closure_operators(cache: &mut Cache) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut oracle_groups = 0;
    for name in GROUPS {
        let g = group_by_name(name).map_err(|e| e.to_string())?;
        let lat = if g.lattice().len() <= 10 { Some(lattice(cache, &g)) } else { None };
        oracle_groups += usize::from(lat.is_some());
        for case in 0..1000 {
            let fail = |what: &str| format!("{name} case {case}: {what}");
            let density = rng.gen_range(0.0..0.5);
            let r = random_relation(&g, &mut rng, density);
            let bigger = r.union(&random_relation(&g, &mut rng, 0.2)).map_err(|e| e.to_string())?;
            let gr = generate(&r).map_err(|e| e.to_string())?;
            let gb = generate(&bigger).map_err(|e| e.to_string())?;
            if !r.is_subset(&gr) {
                return Err(fail("generate is not extensive"));
            }
            if generate(&gr).map_err(|e| e.to_string())? != gr {
                return Err(fail("generate is not idempotent"));
            }
            if !gr.refines(&gb) {
                return Err(fail("generate is not monotone"));
            }
            let p = r.rt_closure();
            let q = bigger.rt_closure();
            let cp = cogenerate(&p).map_err(|e| e.to_string())?;
            let cq = cogenerate(&q).map_err(|e| e.to_string())?;
            if !cp.is_subset(&p) {
                return Err(fail("cogenerate is not contractive"));
            }
            if cogenerate(&cp).map_err(|e| e.to_string())? != cp {
                return Err(fail("cogenerate is not idempotent"));
            }
            if !cp.refines(&cq) {
                return Err(fail("cogenerate is not monotone"));
            }
            if let Some(lat) = &lat {
                let above: Vec<_> = lat.iter().filter(|t| r.is_subset(t)).collect();
                let below: Vec<_> = lat.iter().filter(|t| t.is_subset(&p)).collect();
                if !above.iter().all(|t| gr.refines(t)) || !above.contains(&&gr) {
                    return Err(fail("generate is not the least system above r"));
                }
                if !below.iter().all(|t| t.refines(&cp)) || !below.contains(&&cp) {
                    return Err(fail("cogenerate is not the largest system below p"));
                }
            }
        }
    }
    Ok(format!("{} groups x 1000 relations, lattice oracle on {oracle_groups}", GROUPS.len()))
}

fn galois(cache: &mut Cache) -> Outcome {
    let mut cases = 0;
    let homs = all_homs();
    for (name, f) in &homs {
        let (a, b) = (lattice(cache, f.source()), lattice(cache, f.target()));
        let r = galois_check(f, &a, &b).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!("{name}: {}", r.counterexample.unwrap_or_default()));
        }
        cases += r.cases;
    }
    Ok(format!("{} homs, {cases} pairs", homs.len()))
}

fn functoriality(cache: &mut Cache) -> Outcome {
    let mut cases = 0;
    for (h, k) in CHAINS {
        let (h, k) = (hom_by_name(h).map_err(|e| e.to_string())?, hom_by_name(k).map_err(|e| e.to_string())?);
        let r = verify_functoriality(&h, &k, &lattice(cache, h.source()), &lattice(cache, k.target())).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(r.counterexample.unwrap_or_default());
        }
        cases += r.cases;
    }
    Ok(format!("{} chains, {cases} cases", CHAINS.len()))
}

fn injectivity_collapse(cache: &mut Cache) -> Outcome {
    let (mut injective, mut noninjective) = (0, 0);
    for (name, f) in all_homs() {
        let r = check_pointwise_order(&f, &lattice(cache, f.target())).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!("{name}: {}", r.counterexample.unwrap_or_default()));
        }
        if f.is_injective() {
            injective += 1;
        } else {
            noninjective += 1;
        }
    }
    Ok(format!("{injective} injective, {noninjective} noninjective homs"))
}

fn meet_criterion() -> Outcome {
    let mut pairs = 0;
    for name in ["C4", "K4", "S3"] {
        let g = group_by_name(name).map_err(|e| e.to_string())?;
        let subs = g.all_subgroups();
        for (i, a) in subs.iter().enumerate() {
            for b in &subs[i..] {
                let x = right_coset_set(&g, a).map_err(|e| e.to_string())?;
                let y = right_coset_set(&g, b).map_err(|e| e.to_string())?;
                let r = coind_as_product_check(&x, &y, 4).map_err(|e| e.to_string())?;
                if !r.passed {
                    return Err(r.counterexample.unwrap_or_default());
                }
                pairs += 1;
            }
        }
    }
    if pairs < 10 {
        return Err(format!("only {pairs} pairs"));
    }
    Ok(format!("{pairs} (X, Y) pairs"))
}

fn coinduction() -> Outcome {
    let mut pairs = 0;
    for name in ["C4", "C8", "K4", "S3"] {
        let g = group_by_name(name).map_err(|e| e.to_string())?;
        for h in g.all_subgroups() {
            let direct = CoindAsOperad::new(right_coset_set(&g, &h).map_err(|e| e.to_string())?)
                .and_then(|o| o.transfer())
                .map_err(|e| e.to_string())?;
            let (sub, inc) = g.from_subgroup(&h).map_err(|e| e.to_string())?;
            let via = image_r(&inc, &TransferSystem::discrete(&sub)).map_err(|e| e.to_string())?;
            if direct != via {
                return Err(format!("{name}, H = {}: {direct:?} vs {via:?}", h.id()));
            }
            pairs += 1;
        }
    }
    let suite_line = suite(Suite::CoindB, VerifyConfig::default())?;
    Ok(format!("{pairs} subgroup pairs; suite: {suite_line}"))
}

fn rewriting() -> Outcome {
    let cfg = VerifyConfig { seed: 7, cases: FuzzConfig::default().cases, ..VerifyConfig::default() };
    let r = run_suite(Suite::RewriteCriteria, &cfg).map_err(|e| e.to_string())?;
    if let Some(c) = r.checks.iter().find(|c| c.cases < 500) {
        return Err(format!("{} ran only {} cases", c.law, c.cases));
    }
    if !r.passed {
        return Err(r.counterexample.unwrap_or_default());
    }
    Ok(format!("3 modes, {} checks, {} cases, seed 7", r.checks.len(), r.cases))
}

fn main() -> ExitCode {
    let mut cache = HashMap::new();
    let criteria: Vec<(&str, Duration, Criterion)> = vec![
        ("lattice counts and K5", Duration::from_secs(30), Box::new(|_| lattice_counts())),
        ("meet and join are glb and lub", Duration::from_secs(60), Box::new(lattice_laws)),
        ("closure and interior operators", Duration::from_secs(60), Box::new(closure_operators)),
        ("Galois connections", Duration::from_secs(120), Box::new(galois)),
        ("functoriality", Duration::MAX, Box::new(functoriality)),
        ("injectivity collapse", Duration::MAX, Box::new(injectivity_collapse)),
        ("coinduced As meet", Duration::MAX, Box::new(|_| meet_criterion())),
        (
            "free model joins and fixed witnesses",
            Duration::from_secs(120),
            Box::new(|_| {
                let joins = suite(Suite::JoinA, VerifyConfig::default())?;
                let witnesses = suite(Suite::TensorA, VerifyConfig::default())?;
                Ok(format!("joins: {joins}; witnesses: {witnesses}"))
            }),
        ),
        (
            "restriction and induction",
            Duration::MAX,
            Box::new(|_| {
                let res = suite(Suite::ResB, VerifyConfig::default())?;
                let ind = suite(Suite::IndB, VerifyConfig::default())?;
                Ok(format!("res: {res}; ind: {ind}"))
            }),
        ),
        ("coinduction", Duration::MAX, Box::new(|_| coinduction())),
        (
            "double coset formula",
            Duration::MAX,
            Box::new(|_| suite(Suite::DoubleCoset, VerifyConfig { guard: DEFAULT_GUARD, ..VerifyConfig::default() })),
        ),
        ("noninjective induction", Duration::MAX, Box::new(|_| suite(Suite::NoninjInd, VerifyConfig::default()))),
        ("rewriting", Duration::from_secs(180), Box::new(|_| rewriting())),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&mut cache))).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:.0?}")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
