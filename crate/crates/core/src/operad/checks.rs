//! Exhaustive checks comparing transfer systems of generator sequences with
//! the change-of-group functors.

use crate::error::Result;
use crate::functors::{image_l, image_r, preimage_l};
use crate::grp::{right_coset_set, Group, Homomorphism};
use crate::indexing::{admissible_sets_of_symseq, generated_transfer};
use crate::report::Report;
use crate::transfer::{join, TransferSystem};

use super::{free_model, induce_symseq, restrict_symseq, CoindAsOperad, SymmetricSequence};

fn transfer_of(s: &SymmetricSequence) -> Result<TransferSystem> {
    generated_transfer(&admissible_sets_of_symseq(s, None)?)
}

/// `⟨A(free_model(t))⟩ = t` for every `t` in the lattice.
pub fn free_model_round_trip(lattice: &[TransferSystem]) -> Result<Report> {
    let mut report = Report::new("generated transfer of the free model recovers t");
    for t in lattice {
        let back = free_model(t).transfer()?;
        report.check(&back == t, || format!("t = {t:?} came back as {back:?}"));
    }
    Ok(report)
}

/// `⟨A(res_f S(t′))⟩ = f⁻¹_L(t′)` with `S(t′)` the free model generators.
pub fn theorem_b_res_check(f: &Homomorphism, lattice_g2: &[TransferSystem], guard: u64) -> Result<Report> {
    let mut report = Report::new(format!("restriction along {f:?} computes finvL"));
    for t in lattice_g2 {
        let r = restrict_symseq(f, free_model(t).generators(), guard)?;
        let lhs = transfer_of(&r.sequence)?;
        let rhs = preimage_l(f, t)?;
        report.check(lhs == rhs, || format!("t′ = {t:?}: restricted generators give {lhs:?}, finvL gives {rhs:?}"));
    }
    Ok(report)
}

/// The double-coset prediction against the direct pullback, on every level
/// of every restricted free model.
pub fn double_coset_check(f: &Homomorphism, lattice_g2: &[TransferSystem], guard: u64) -> Result<Report> {
    let mut report = Report::new(format!("double-coset decomposition along {f:?}"));
    for t in lattice_g2 {
        let r = restrict_symseq(f, free_model(t).generators(), guard)?;
        report.absorb(r.check);
    }
    Ok(report)
}

/// `⟨A(ind_m S(t))⟩ = m_L(t)` for injective `m`.
pub fn theorem_b_ind_check(m: &Homomorphism, lattice_g: &[TransferSystem]) -> Result<Report> {
    let mut report = Report::new(format!("induction along {m:?} computes fL"));
    for t in lattice_g {
        let ind = induce_symseq(m, free_model(t).generators())?;
        let lhs = transfer_of(&ind)?;
        let rhs = image_l(m, t)?;
        report.check(lhs == rhs, || format!("t = {t:?}: induced generators give {lhs:?}, fL gives {rhs:?}"));
    }
    Ok(report)
}

/// For every `H ≤ G`: the criterion transfer of `Set(H\G, As)` equals
/// `i_R` of the discrete system along `i: H ↪ G`.
pub fn theorem_b_coind_check(g: &std::sync::Arc<Group>) -> Result<Report> {
    let mut report = Report::new(format!("coinduced As over {} computes i_R(discrete)", g.name()));
    for h in g.all_subgroups() {
        let lhs = CoindAsOperad::new(right_coset_set(g, &h)?)?.transfer()?;
        let (gh, inc) = g.from_subgroup(&h)?;
        let rhs = image_r(&inc, &TransferSystem::discrete(&gh))?;
        report.check(lhs == rhs, || format!("H = {h:?}: criterion gives {lhs:?}, i_R gives {rhs:?}"));
    }
    Ok(report)
}

/// `⟨A(S ⊔ T)⟩ = ⟨A(S)⟩ ∨ ⟨A(T)⟩` over all pairs of free models.
pub fn coproduct_join_check(lattice: &[TransferSystem]) -> Result<Report> {
    let mut report = Report::new("coproduct of free models computes the join");
    let models: Vec<_> = lattice.iter().map(free_model).collect();
    for (s, ms) in lattice.iter().zip(&models) {
        for (t, mt) in lattice.iter().zip(&models) {
            let lhs = ms.coproduct(mt)?.transfer()?;
            let rhs = join(s, t)?;
            report.check(lhs == rhs, || format!("s = {s:?}, t = {t:?}: coproduct gives {lhs:?}"));
        }
    }
    Ok(report)
}
