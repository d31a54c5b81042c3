use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::{reduce, Factor, FactorSide, Mode, Signature, Strategy, Sym, SymbolData, Term, Trace};
use crate::error::{Error, Result};
use crate::grp::{coset_reps_of, coset_set, graph_subgroup, FiniteGSet, GraphSubgroup, Group, Perm, Side, Subgroup};
use crate::operad::SymmetricSequence;

/// `X` read off `S`, `Y` read off `T` plus a `G`-fixed nullary `z`, which is returned.
pub fn witness_signature(s: &SymmetricSequence, t: &SymmetricSequence) -> Result<(Signature, u32)> {
    if !s.group().same(t.group()) {
        return Err(Error::GroupMismatch);
    }
    let g = s.group();
    let x = Factor::from_symseq(s)?;
    let mut y = Factor::from_symseq(t)?;
    let z = y.push_fixed_nullary(g.order())?;
    Ok((Signature::new(g, x, y)?, z))
}

/// `h * u = u · σ_T(h)` for every `h ∈ H`.
pub fn is_fixed_by(sig: &Signature, u: &Term, h: &Subgroup, t: &FiniteGSet) -> bool {
    if t.domain() != h || t.side() != Side::Left || u.variables().len() != t.size() || !u.is_operadic() {
        return false;
    }
    h.members().into_iter().all(|x| u.act_sigma(&t.perm(x)).is_ok_and(|moved| sig.act_g(x, u) == moved))
}

#[derive(Clone, Debug)]
pub struct AdmissibilityWitness {
    /// `K = H₀ < H₁ < … < H_r = H`, as subgroup ids.
    pub chain: Vec<usize>,
    /// The generator used for each step of the chain.
    pub symbols: Vec<Sym>,
    pub term: Term,
    pub graph: GraphSubgroup,
    pub normal_form: Term,
    pub trace: Trace,
    pub verified: bool,
}

/// A generator `s` with `b · s = s · τ_b` for all `b ∈ B`, where the
/// `B`-set `b ↦ τ_b` is transitive; `v = s(x₁, …)·π` is then `Γ(B/A)`-fixed.
#[derive(Clone, Debug)]
struct Step {
    sym: Sym,
    term: Term,
}

fn direct_steps(sig: &Signature) -> HashMap<(usize, usize), Step> {
    let g = sig.group();
    let mut out = HashMap::new();
    for side in [FactorSide::X, FactorSide::Y] {
        let factor = sig.factor(side);
        let Factor::Free { symbols, .. } = factor else { continue };
        for (id, data) in symbols.iter().enumerate() {
            let id = id as u32;
            if data.arity < 2 {
                continue;
            }
            for b in g.all_subgroups() {
                if b.members().iter().any(|&x| factor.action(x, id).0 != id) {
                    continue;
                }
                let Ok(ts) = symbol_set(&b, data) else { continue };
                if !ts.is_transitive() {
                    continue;
                }
                let sym = Sym { side, id };
                for p in 0..ts.size() {
                    let a = ts.stabilizer(p);
                    if out.contains_key(&(a.id(), b.id())) {
                        continue;
                    }
                    let Ok(ba) = coset_set(&b, &a) else { continue };
                    let Some(pi) = ba.isomorphism_to(&ts) else { continue };
                    let term = Term::corolla(sym, data.arity).act_sigma(&pi).expect("corolla is operadic");
                    out.insert((a.id(), b.id()), Step { sym, term });
                }
            }
        }
    }
    out
}

fn symbol_set(b: &Subgroup, data: &SymbolData) -> Result<FiniteGSet> {
    FiniteGSet::from_fn(b, data.arity, Side::Left, |x, i| data.g_action[x].1.apply(i))
}

/// Shortest chain from `k` to `h` along directly witnessed steps.
fn find_chain(steps: &HashMap<(usize, usize), Step>, k: usize, h: usize) -> Option<Vec<usize>> {
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::from([k]);
    let mut seen = vec![k];
    while let Some(a) = queue.pop_front() {
        if a == h {
            let mut chain = vec![h];
            let mut cur = h;
            while let Some(&p) = prev.get(&cur) {
                chain.push(p);
                cur = p;
            }
            chain.reverse();
            return Some(chain);
        }
        let mut next: Vec<usize> = steps.keys().filter(|(x, _)| *x == a).map(|&(_, b)| b).collect();
        next.sort_unstable();
        for b in next {
            if !seen.contains(&b) {
                seen.push(b);
                prev.insert(b, a);
                queue.push_back(b);
            }
        }
    }
    None
}

/// A `Γ(H/K)`-fixed term composed from fixed generators along a chain
/// `K = H₀ < … < H_r = H` of steps each witnessed by one generator. At each
/// step `u ↦ γ(v; g₁ * u, …, g_m * u)` over coset representatives `gⱼ` of
/// `H_{i+1}/H_i`, transported from `H_{i+1} ×_{H_i} H_i/K` to `H_{i+1}/K`.
pub fn admissibility_witness(sig: &Signature, mode: Mode, k: usize, h: usize) -> Result<AdmissibilityWitness> {
    mode.validate(sig)?;
    let g = sig.group().clone();
    let (ks, hs) = (g.subgroup(k), g.subgroup(h));
    if !ks.is_subgroup_of(&hs) {
        return Err(Error::NotSubgroup(format!("{ks:?} in {hs:?}")));
    }
    let steps = direct_steps(sig);
    let chain = find_chain(&steps, k, h).ok_or(Error::NoChain(k, h))?;
    let mut u = Term::var(1);
    let mut symbols = Vec::new();
    for w in chain.windows(2) {
        let (lo, hi) = (g.subgroup(w[0]), g.subgroup(w[1]));
        let step = &steps[&(w[0], w[1])];
        symbols.push(step.sym);
        let blocks: Vec<Term> = coset_reps_of(&hi, &lo).into_iter().map(|r| sig.act_g(r, &u)).collect();
        let composed = step.term.gamma(&blocks)?;
        let induced = coset_set(&lo, &ks)?.induce(&hi)?;
        let pi = coset_set(&hi, &ks)?.isomorphism_to(&induced).expect("H ×_L L/K ≅ H/K");
        u = composed.act_sigma(&pi)?;
    }
    let hk = coset_set(&hs, &ks)?;
    let graph = graph_subgroup(&g, &hs, &hk)?;
    let (normal_form, trace) = reduce(sig, mode, &u, Strategy::LeftmostInnermost)?;
    let verified = is_fixed_by(sig, &u, &hs, &hk) && is_fixed_by(sig, &normal_form, &hs, &hk);
    Ok(AdmissibilityWitness { chain, symbols, term: u, graph, normal_form, trace, verified })
}

/// The interchange identity applied to the marked product `p` of two copies
/// of the same operad, once the two factors are identified.
#[derive(Clone, Debug)]
pub struct TensorObstruction {
    pub element: usize,
    /// `p(p(x₁, x₂), p(x₃, x₄))` with the outer `p` from `X`, the inner from `Y`.
    pub term: Term,
    /// Its interchange `p(p(x₁, x₃), p(x₂, x₄))`.
    pub interchanged: Term,
    /// `(2 3)`, with `interchanged = term · (2 3)` after identification.
    pub sigma: Perm,
    /// Whether `σ` fixes the identified class, so the level is not `Σ`-free.
    pub sigma_stabilizes: bool,
    /// Whether the class is fixed by `(g, σ)`, so the `⟨g⟩`-set with a free
    /// orbit `{2, 3}` is admissible.
    pub graph_fixed: bool,
    /// The `⟨g⟩`-set `σ` on four points.
    pub tset: FiniteGSet,
}

/// For `g` of order 2, with `p` a `G`-fixed binary product on both sides.
pub fn marked_tensor_obstruction(group: &Arc<Group>, element: usize) -> Result<TensorObstruction> {
    if element == 0 || group.mul(element, element) != 0 {
        return Err(Error::InvalidAction(format!("element {element} does not have order 2")));
    }
    let fixed = || {
        Factor::free(vec![SymbolData {
            arity: 2,
            g_action: (0..group.order()).map(|_| (0, Perm::identity(2))).collect(),
        }])
    };
    let mut y = fixed();
    let z = y.push_fixed_nullary(group.order())?;
    let sig = Signature::new(group, fixed(), y)?;
    let term: Term = "(X:0 (Y:0 x1 x2) (Y:0 x3 x4))".parse()?;
    let (interchanged, _) = reduce(&sig, Mode::Tensor { z }, &term, Strategy::LeftmostInnermost)?;
    let sigma = Perm::transposition(4, 1, 2);
    let identified = term.with_side(FactorSide::X);
    let sigma_stabilizes = interchanged.with_side(FactorSide::X) == identified.act_sigma(&sigma)?;
    let sub = group.generated(&[element]);
    let tset = FiniteGSet::from_fn(&sub, 4, Side::Left, |x, i| if x == 0 { i } else { sigma.apply(i) })?;
    // `g` fixes the term itself and `σ` fixes its class, so `(g, σ)` fixes the class.
    let graph_fixed = sigma_stabilizes && sig.act_g(element, &identified) == identified;
    Ok(TensorObstruction { element, term, interchanged, sigma, sigma_stabilizes, graph_fixed, tset })
}
