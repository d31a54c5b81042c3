//! The image and inverse-image functors on transfer systems along `f: G → G′`.
//!
//! `f_L` and `f⁻¹_L` are computed from simplified generator sets followed by a
//! reflexive-transitive closure; `f_R` and `f⁻¹_R` by cogenerating pulled-back
//! relations. Adjointness and functoriality are checked, never assumed.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grp::Homomorphism;
use crate::report::Report;
use crate::transfer::{cogenerate, generate, Relation, TransferSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctorKind {
    /// `f_L`, from `Tr(G)` to `Tr(G′)`.
    ImageL,
    /// `f⁻¹_L`, from `Tr(G′)` to `Tr(G)`.
    PreimageL,
    /// `f_R`, from `Tr(G)` to `Tr(G′)`.
    ImageR,
    /// `f⁻¹_R`, from `Tr(G′)` to `Tr(G)`.
    PreimageR,
}

impl FunctorKind {
    /// True for the two functors `Tr(G) → Tr(G′)`.
    pub fn is_forward(self) -> bool {
        matches!(self, FunctorKind::ImageL | FunctorKind::ImageR)
    }
}

impl fmt::Display for FunctorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctorKind::ImageL => "fL",
            FunctorKind::PreimageL => "finvL",
            FunctorKind::ImageR => "fR",
            FunctorKind::PreimageR => "finvR",
        })
    }
}

impl FromStr for FunctorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fL" => Ok(FunctorKind::ImageL),
            "finvL" => Ok(FunctorKind::PreimageL),
            "fR" => Ok(FunctorKind::ImageR),
            "finvR" => Ok(FunctorKind::PreimageR),
            _ => Err(Error::Parse(format!("unknown functor kind {s}"))),
        }
    }
}

pub fn apply(kind: FunctorKind, f: &Homomorphism, t: &TransferSystem) -> Result<TransferSystem> {
    match kind {
        FunctorKind::ImageL => image_l(f, t),
        FunctorKind::PreimageL => preimage_l(f, t),
        FunctorKind::ImageR => image_r(f, t),
        FunctorKind::PreimageR => preimage_r(f, t),
    }
}

fn on_source(f: &Homomorphism, t: &TransferSystem) -> Result<()> {
    if f.source().same(t.group()) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

fn on_target(f: &Homomorphism, t: &TransferSystem) -> Result<()> {
    if f.target().same(t.group()) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// `f_L(t)`: closure of `{(g f(K) g⁻¹, g f(H) g⁻¹) : K → H, g ∈ G′}`.
pub fn image_l(f: &Homomorphism, t: &TransferSystem) -> Result<TransferSystem> {
    on_source(f, t)?;
    let img = f.image_ids();
    let tg = f.target();
    let lat = tg.lattice();
    let mut r = Relation::empty(tg);
    for (k, h) in t.pairs() {
        for g in 0..tg.order() {
            r.insert(lat.conj(g, img[k]), lat.conj(g, img[h]));
        }
    }
    Ok(TransferSystem::trusted(r.rt_closure()))
}

/// `⟨f_⊂(t)⟩`, the defining formula for `f_L`.
pub fn image_l_generated(f: &Homomorphism, t: &TransferSystem) -> Result<TransferSystem> {
    on_source(f, t)?;
    let img = f.image_ids();
    let pairs: Vec<_> = t.pairs().into_iter().map(|(k, h)| (img[k], img[h])).collect();
    generate(&Relation::from_pairs(f.target(), &pairs)?)
}

/// `f⁻¹_L(t′)`: closure of `{(f⁻¹K′ ∩ L, L) : K′ ⇝ H′, L ⊆ f⁻¹H′}`.
pub fn preimage_l(f: &Homomorphism, t: &TransferSystem) -> Result<TransferSystem> {
    on_target(f, t)?;
    let pre = f.preimage_ids();
    let sg = f.source();
    let lat = sg.lattice();
    let mut r = Relation::empty(sg);
    for (k, h) in t.pairs() {
        for l in 0..lat.len() {
            if lat.leq(l, pre[h]) {
                r.insert(lat.meet(pre[k], l), l);
            }
        }
    }
    Ok(TransferSystem::trusted(r.rt_closure()))
}

/// `⟨(f⁻¹)_⊂(t′)⟩`, the defining formula for `f⁻¹_L`.
pub fn preimage_l_generated(f: &Homomorphism, t: &TransferSystem) -> Result<TransferSystem> {
    on_target(f, t)?;
    let pre = f.preimage_ids();
    let pairs: Vec<_> = t.pairs().into_iter().map(|(k, h)| (pre[k], pre[h])).collect();
    generate(&Relation::from_pairs(f.source(), &pairs)?)
}

/// `{(K′, H′) : K′ ⊆ H′, (f⁻¹K′, f⁻¹H′) ∈ t}` on `G′`.
fn pushforward_relation(f: &Homomorphism, t: &TransferSystem) -> Relation {
    let pre = f.preimage_ids();
    let tg = f.target();
    let lat = tg.lattice();
    let mut r = Relation::empty(tg);
    for k in 0..lat.len() {
        for h in 0..lat.len() {
            if lat.leq(k, h) && t.contains(pre[k], pre[h]) {
                r.insert(k, h);
            }
        }
    }
    r
}

/// `{(K, H) : K ⊆ H, (fK, fH) ∈ t′}` on `G`, the raw pullback.
pub fn pullback_relation(f: &Homomorphism, t: &TransferSystem) -> Result<Relation> {
    on_target(f, t)?;
    let img = f.image_ids();
    let sg = f.source();
    let lat = sg.lattice();
    let mut r = Relation::empty(sg);
    for k in 0..lat.len() {
        for h in 0..lat.len() {
            if lat.leq(k, h) && t.contains(img[k], img[h]) {
                r.insert(k, h);
            }
        }
    }
    Ok(r)
}

/// `f_R(t)`.
pub fn image_r(f: &Homomorphism, t: &TransferSystem) -> Result<TransferSystem> {
    on_source(f, t)?;
    cogenerate(&pushforward_relation(f, t))
}

/// `f⁻¹_R(t′)`.
pub fn preimage_r(f: &Homomorphism, t: &TransferSystem) -> Result<TransferSystem> {
    cogenerate(&pullback_relation(f, t)?)
}

/// Checks `lower(x) ⊆ y ⇔ x ⊆ upper(y)` over the given lattices.
///
/// `lattice_g` and `lattice_g2` enumerate `Tr(G)` and `Tr(G′)`. The pair must
/// run in opposite directions; a well-typed but non-adjoint pair simply fails.
pub fn check_galois(
    f: &Homomorphism,
    lower: FunctorKind,
    upper: FunctorKind,
    lattice_g: &[TransferSystem],
    lattice_g2: &[TransferSystem],
) -> Result<Report> {
    if lower.is_forward() == upper.is_forward() {
        return Err(Error::Pairing(format!("{lower} and {upper} both map the same way")));
    }
    let (xs, ys) = if lower.is_forward() { (lattice_g, lattice_g2) } else { (lattice_g2, lattice_g) };
    let mut report = Report::new(format!("{lower} -| {upper} along {f:?}"));
    let uppers: Vec<TransferSystem> = ys.iter().map(|y| apply(upper, f, y)).collect::<Result<_>>()?;
    for x in xs {
        let lx = apply(lower, f, x)?;
        for (y, uy) in ys.iter().zip(&uppers) {
            let ok = lx.refines(y) == x.refines(uy);
            report.check(ok, || format!("x = {x:?}, y = {y:?}"));
        }
    }
    Ok(report)
}

/// All four composite laws for `G --h--> G′ --k--> G″`.
pub fn verify_functoriality(
    h: &Homomorphism,
    k: &Homomorphism,
    lattice_g: &[TransferSystem],
    lattice_g3: &[TransferSystem],
) -> Result<Report> {
    let kh = h.then(k)?;
    let mut report = Report::new(format!("functoriality of {h:?} then {k:?}"));
    for t in lattice_g {
        for (name, a, b) in [
            ("k_L h_L = (kh)_L", image_l(k, &image_l(h, t)?)?, image_l(&kh, t)?),
            ("k_R h_R = (kh)_R", image_r(k, &image_r(h, t)?)?, image_r(&kh, t)?),
        ] {
            report.check(a == b, || format!("{name} fails at {t:?}"));
        }
    }
    for t in lattice_g3 {
        for (name, a, b) in [
            ("h⁻¹_L k⁻¹_L = (kh)⁻¹_L", preimage_l(h, &preimage_l(k, t)?)?, preimage_l(&kh, t)?),
            ("h⁻¹_R k⁻¹_R = (kh)⁻¹_R", preimage_r(h, &preimage_r(k, t)?)?, preimage_r(&kh, t)?),
        ] {
            report.check(a == b, || format!("{name} fails at {t:?}"));
        }
    }
    Ok(report)
}

/// `f⁻¹_L(t) ⊆ f⁻¹_R(t)` for all `t`, with equality exactly when `f` is
/// injective; otherwise `(1, ker f)` must separate the two sides.
pub fn check_pointwise_order(f: &Homomorphism, lattice_target: &[TransferSystem]) -> Result<Report> {
    let injective = f.is_injective();
    let ker = f.kernel().id();
    let mut report = Report::new(format!(
        "finvL <= finvR along {f:?} ({})",
        if injective { "equality" } else { "strict, witness (1, ker f)" }
    ));
    for t in lattice_target {
        let l = preimage_l(f, t)?;
        let r = preimage_r(f, t)?;
        let ok = if injective {
            l == r
        } else {
            l.refines(&r) && l != r && r.contains(0, ker) && !l.contains(0, ker)
        };
        report.check(ok, || format!("t = {t:?}: finvL = {l:?}, finvR = {r:?}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::grp::group_by_name;

    #[test]
    fn bang_preimages_are_extremes() {
        let c4 = group_by_name("C4").unwrap();
        let bang = Homomorphism::to_trivial(&c4);
        let one = TransferSystem::discrete(bang.target());
        assert_eq!(preimage_l(&bang, &one).unwrap(), TransferSystem::discrete(&c4));
        assert_eq!(preimage_r(&bang, &one).unwrap(), TransferSystem::complete(&c4));
        assert_eq!(image_r(&bang, &TransferSystem::complete(&c4)).unwrap(), one);
    }

    #[test]
    fn inclusion_c2_c4_examples() {
        let i = catalog::hom_by_name("C2_into_C4").unwrap();
        let c2 = i.source().clone();
        let c4 = i.target().clone();
        let r = i_r_expected(&c4);
        assert_eq!(image_r(&i, &TransferSystem::discrete(&c2)).unwrap().relation(), &r);
        let l = image_l(&i, &TransferSystem::complete(&c2)).unwrap();
        assert_eq!(l.nontrivial_pairs(), vec![(0, 1)]);
        assert_eq!(preimage_l(&i, &TransferSystem::complete(&c4)).unwrap(), TransferSystem::complete(&c2));
    }

    fn i_r_expected(c4: &std::sync::Arc<crate::grp::Group>) -> Relation {
        let mut r = Relation::equality(c4);
        r.insert(1, 2);
        r
    }

    #[test]
    fn both_directions_same_way_is_rejected() {
        let i = catalog::hom_by_name("C2_into_C4").unwrap();
        let err = check_galois(&i, FunctorKind::ImageL, FunctorKind::ImageR, &[], &[]).unwrap_err();
        assert!(matches!(err, Error::Pairing(_)));
    }
}
