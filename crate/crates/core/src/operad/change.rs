use crate::error::{Error, Result};
use crate::grp::{
    coset_set, double_cosets, key, pmul, product_generators, unkey, CosetSpace, Homomorphism, Perm,
    ProductSubgroup,
};
use crate::report::Report;

use super::{graph_of, identity_elem, SymmetricSequence};

/// Output of [`restrict_symseq`].
#[derive(Clone, Debug)]
pub struct Restriction {
    /// The levelwise pullback, one orbit per directly computed orbit.
    pub sequence: SymmetricSequence,
    /// For each source orbit, its arity and the graph subgroups predicted by double cosets.
    pub predicted: Vec<(usize, Vec<ProductSubgroup>)>,
    /// Agreement of the prediction with the direct pullback, up to conjugacy.
    pub check: Report,
}

/// Pulls `S` back along `f × id`.
///
/// Each orbit `(G′ × Σₙ)/Γ(T)` with `T` an `H`-set splits over the double
/// cosets `im(f) r H` into orbits with stabilizers `Γ(T_r)`, where `T_r` is
/// `T` viewed over `f⁻¹(rHr⁻¹)` via `g ↦ r⁻¹ f(g) r`. The split is also
/// computed directly on the materialized coset space and the two are compared.
pub fn restrict_symseq(f: &Homomorphism, s: &SymmetricSequence, guard: u64) -> Result<Restriction> {
    if !f.target().same(s.group()) {
        return Err(Error::GroupMismatch);
    }
    let g = f.source();
    let g2 = f.target();
    let mut out = SymmetricSequence::new(g, s.window());
    let mut predicted = Vec::new();
    let mut check = Report::new(format!("double-coset decomposition along {f:?}"));
    for orbit in s.orbits() {
        let n = orbit.arity();
        let graph = orbit.graph()?;
        let h = graph.h();
        let mut pred = Vec::new();
        for r in double_cosets(g2, &f.image(), h) {
            let ri = g2.inv(r);
            let conj = |x: usize| g2.mul(g2.mul(ri, f.apply(x)), r);
            let dom = f.preimage_subgroup(&h.conjugate(r));
            let tr = graph.tset().pullback(&dom, conj)?;
            pred.push(graph_of(g, dom.id(), &tr));
        }
        let space = CosetSpace::new(orbit.stabilizer(), guard)?;
        let direct: Vec<ProductSubgroup> =
            space.orbits_along(f).iter().map(|o| space.stabilizer_along(f, o[0])).collect();
        let mut unmatched: Vec<&ProductSubgroup> = pred.iter().collect();
        let mut all_matched = direct.len() == pred.len();
        for d in &direct {
            match unmatched.iter().position(|p| p.is_conjugate_to(d)) {
                Some(i) => {
                    unmatched.swap_remove(i);
                }
                None => all_matched = false,
            }
        }
        check.check(all_matched, || {
            format!("orbit {:?}: {} direct orbits, {} predicted", orbit.stabilizer(), direct.len(), pred.len())
        });
        for d in direct {
            out.add_orbit(d)?;
        }
        predicted.push((n, pred));
    }
    Ok(Restriction { sequence: out, predicted, check })
}

/// Induces `S` along an injective `m`: `(G × Σₙ)/Γ ↦ (G′ × Σₙ)/(m × id)Γ`.
pub fn induce_symseq(m: &Homomorphism, s: &SymmetricSequence) -> Result<SymmetricSequence> {
    if !m.source().same(s.group()) {
        return Err(Error::GroupMismatch);
    }
    if !m.is_injective() {
        return Err(Error::NotInjective);
    }
    let mut out = SymmetricSequence::new(m.target(), s.window());
    for o in s.orbits() {
        out.add_orbit(o.stabilizer().image_under(m))?;
    }
    Ok(out)
}

/// Certificate that inducing along a noninjective map destroys `Σ`-freeness.
#[derive(Clone, Debug)]
pub struct NonFreeWitness {
    /// `(G × Σ_{|G|})/Γ(G/e)`.
    pub source: SymmetricSequence,
    /// Its orbit relabelled as `(G′ × Σ_{|G|})/(f × id)Γ(G/e)`.
    pub induced: SymmetricSequence,
    /// A nonidentity element of `ker f`.
    pub kernel_element: usize,
    /// `σ(k)`, the permutation by which it acts on `G/e`.
    pub sigma: Perm,
    /// Whether `(e, σ(k))` fixes the class of `((e, id), Γ)`.
    pub fixes_base_class: bool,
    /// True when the check ran on the explicit balanced product rather than
    /// on the equivalent coset space.
    pub balanced_product: bool,
}

/// Builds `S = (G × Σ_{|G|})/Γ(G/e)`, induces it along `f × id` and finds
/// `(e, σ(k))`, `k ∈ ker f`, fixing the base class of the balanced product.
pub fn noninjective_induction_counterexample(f: &Homomorphism, guard: u64) -> Result<NonFreeWitness> {
    if f.is_injective() {
        return Err(Error::Injective);
    }
    let g = f.source();
    let n = g.order();
    let regular = coset_set(&g.whole(), &g.trivial_subgroup())?;
    let gamma = graph_of(g, g.whole().id(), &regular);
    let mut source = SymmetricSequence::new(g, n);
    source.add_orbit(gamma.clone())?;
    let mut induced = SymmetricSequence::new(f.target(), n);
    induced.add_orbit(gamma.image_under(f))?;
    let k = f.kernel().members().into_iter().find(|&x| x != 0).expect("noninjective");
    let sigma = regular.perm(k);
    let space = CosetSpace::new(&gamma, guard)?;
    let nodes = f.target().order() as u64 * crate::grp::factorial(n) * space.len() as u64;
    let (fixes_base_class, balanced_product) = if nodes <= guard {
        (fixed_in_balanced_product(f, &space, &sigma), true)
    } else {
        let image = CosetSpace::new(&gamma.image_under(f), guard)?;
        (image.act(&(0, sigma.clone()), 0) == 0, false)
    };
    Ok(NonFreeWitness { source, induced, kernel_element: k, sigma, fixes_base_class, balanced_product })
}

/// Quotients `(G′ × Σₙ) × X` by `(p (f×id)(q), x) ~ (p, q x)` and compares
/// the classes of `((e, σ), x₀)` and `((e, id), x₀)`.
fn fixed_in_balanced_product(f: &Homomorphism, space: &CosetSpace, sigma: &Perm) -> bool {
    let n = space.degree();
    let width = space.len();
    let outer = f.target().order() * crate::grp::factorial(n) as usize;
    let mut parent: Vec<usize> = (0..outer * width).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let gens = product_generators(f.source(), n);
    let g2 = f.target();
    for pk in 0..outer {
        let p = unkey(n, pk as u64);
        for q in &gens {
            let fq = (f.apply(q.0), q.1.clone());
            let left = key(n, &pmul(g2, &p, &fq)) as usize;
            for x in 0..width {
                let a = find(&mut parent, left * width + x);
                let b = find(&mut parent, pk * width + space.act(q, x));
                parent[a] = b;
            }
        }
    }
    let moved = key(n, &(0, sigma.clone())) as usize * width;
    let base = key(n, &identity_elem(n)) as usize * width;
    find(&mut parent, moved) == find(&mut parent, base)
}
