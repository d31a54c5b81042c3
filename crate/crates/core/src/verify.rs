//! Named verification suites, each a matrix of law checks over the catalog.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::catalog::{all_homs, hom_by_name, CHAINS};
use crate::error::{Error, Result};
use crate::functors::{apply, check_pointwise_order, verify_functoriality, FunctorKind};
use crate::grp::{group_by_name, right_coset_set, Group, Homomorphism};
use crate::operad::{
    coind_as_product_check, coproduct_join_check, double_coset_check, free_model, noninjective_induction_counterexample,
    theorem_b_coind_check, theorem_b_ind_check, theorem_b_res_check,
};
use crate::report::Report;
use crate::rewrite::{admissibility_witness, check_criteria, marked_tensor_obstruction, setups, witness_signature, FuzzConfig, Mode};
use crate::transfer::{enumerate_all, join, TransferSystem, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Galois,
    Functoriality,
    InjectiveCollapse,
    MeetA,
    JoinA,
    TensorA,
    ResB,
    IndB,
    CoindB,
    RewriteCriteria,
    DoubleCoset,
    NoninjInd,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Galois,
        Suite::Functoriality,
        Suite::InjectiveCollapse,
        Suite::MeetA,
        Suite::JoinA,
        Suite::TensorA,
        Suite::ResB,
        Suite::IndB,
        Suite::CoindB,
        Suite::RewriteCriteria,
        Suite::DoubleCoset,
        Suite::NoninjInd,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Galois => "galois",
            Suite::Functoriality => "functoriality",
            Suite::InjectiveCollapse => "injective-collapse",
            Suite::MeetA => "thmA-meet",
            Suite::JoinA => "thmA-join",
            Suite::TensorA => "thmA-tensor",
            Suite::ResB => "thmB-res",
            Suite::IndB => "thmB-ind",
            Suite::CoindB => "thmB-coind",
            Suite::RewriteCriteria => "rewrite-criteria",
            Suite::DoubleCoset => "double-coset",
            Suite::NoninjInd => "noninj-ind",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.id() == s).ok_or_else(|| Error::Parse(format!("unknown suite {s}")))
    }
}

/// Inputs shared by all suites. `homs` and `groups` replace the default
/// matrices when nonempty.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub homs: Vec<String>,
    pub groups: Vec<String>,
    pub seed: u64,
    pub budget: u64,
    pub guard: u64,
    pub window: usize,
    pub cases: usize,
    pub mode: Option<String>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            homs: Vec::new(),
            groups: Vec::new(),
            seed: 0,
            budget: DEFAULT_BUDGET,
            guard: crate::operad::DEFAULT_GUARD,
            window: 4,
            cases: 500,
            mode: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: VerifyConfig,
    pub cases: usize,
    pub failures: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub checks: Vec<Report>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Lattices enumerated once per group.
struct Lattices {
    budget: u64,
    cache: HashMap<String, Vec<TransferSystem>>,
}

impl Lattices {
    fn get(&mut self, g: &Arc<Group>) -> Result<Vec<TransferSystem>> {
        if let Some(l) = self.cache.get(g.name()) {
            return Ok(l.clone());
        }
        let l = enumerate_all(g, self.budget)?;
        self.cache.insert(g.name().to_string(), l.clone());
        Ok(l)
    }
}

fn homs_or(cfg: &VerifyConfig, default: &[&str]) -> Result<Vec<Homomorphism>> {
    if cfg.homs.is_empty() {
        default.iter().map(|n| hom_by_name(n)).collect()
    } else {
        cfg.homs.iter().map(|n| hom_by_name(n)).collect()
    }
}

fn groups_or(cfg: &VerifyConfig, default: &[&str]) -> Result<Vec<Arc<Group>>> {
    let names: Vec<&str> = if cfg.groups.is_empty() { default.to_vec() } else { cfg.groups.iter().map(String::as_str).collect() };
    names.into_iter().map(group_by_name).collect()
}

/// Both adjunctions at once: one case per pair `(s, t) ∈ Tr(G) × Tr(G′)`.
pub fn galois_check(f: &Homomorphism, lattice_g: &[TransferSystem], lattice_g2: &[TransferSystem]) -> Result<Report> {
    let mut report = Report::new(format!("fL -| finvR and finvL -| fR along {f:?}"));
    let fl: Vec<_> = lattice_g.iter().map(|s| apply(FunctorKind::ImageL, f, s)).collect::<Result<_>>()?;
    let fr: Vec<_> = lattice_g.iter().map(|s| apply(FunctorKind::ImageR, f, s)).collect::<Result<_>>()?;
    let gl: Vec<_> = lattice_g2.iter().map(|t| apply(FunctorKind::PreimageL, f, t)).collect::<Result<_>>()?;
    let gr: Vec<_> = lattice_g2.iter().map(|t| apply(FunctorKind::PreimageR, f, t)).collect::<Result<_>>()?;
    for (i, s) in lattice_g.iter().enumerate() {
        for (j, t) in lattice_g2.iter().enumerate() {
            let first = fl[i].refines(t) == s.refines(&gr[j]);
            let second = gl[j].refines(s) == t.refines(&fr[i]);
            report.check(first && second, || {
                let which = if first { "finvL -| fR" } else { "fL -| finvR" };
                format!("{which} fails at s = {s:?}, t = {t:?}")
            });
        }
    }
    Ok(report)
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut lattices = Lattices { budget: cfg.budget, cache: HashMap::new() };
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    match suite {
        Suite::Galois => {
            let homs = if cfg.homs.is_empty() {
                all_homs().into_iter().map(|(_, f)| f).collect()
            } else {
                homs_or(cfg, &[])?
            };
            for f in homs {
                let (a, b) = (lattices.get(f.source())?, lattices.get(f.target())?);
                checks.push(galois_check(&f, &a, &b)?);
            }
        }
        Suite::Functoriality => {
            let pairs: Vec<(Homomorphism, Homomorphism)> = if cfg.homs.is_empty() {
                CHAINS.iter().map(|(h, k)| Ok((hom_by_name(h)?, hom_by_name(k)?))).collect::<Result<_>>()?
            } else {
                let homs = homs_or(cfg, &[])?;
                homs.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
            };
            for (h, k) in pairs {
                let (a, c) = (lattices.get(h.source())?, lattices.get(k.target())?);
                checks.push(verify_functoriality(&h, &k, &a, &c)?);
            }
        }
        Suite::InjectiveCollapse => {
            let homs = if cfg.homs.is_empty() {
                all_homs().into_iter().map(|(_, f)| f).collect()
            } else {
                homs_or(cfg, &[])?
            };
            for f in homs {
                let t = lattices.get(f.target())?;
                checks.push(check_pointwise_order(&f, &t)?);
            }
        }
        Suite::MeetA => {
            for g in groups_or(cfg, &["C4", "K4", "S3"])? {
                let subs = g.all_subgroups();
                for (i, a) in subs.iter().enumerate() {
                    for b in &subs[i..] {
                        let x = right_coset_set(&g, a)?;
                        let y = right_coset_set(&g, b)?;
                        let mut r = coind_as_product_check(&x, &y, cfg.window)?;
                        r.law = format!("{} over {}: X = H{}\\G, Y = H{}\\G", r.law, g.name(), a.id(), b.id());
                        checks.push(r);
                    }
                }
            }
        }
        Suite::JoinA => {
            for g in groups_or(cfg, &["C4", "K4"])? {
                let mut r = coproduct_join_check(&lattices.get(&g)?)?;
                r.law = format!("{} over {}", r.law, g.name());
                checks.push(r);
            }
        }
        Suite::TensorA => {
            for g in groups_or(cfg, &["C4", "K4"])? {
                let lattice = lattices.get(&g)?;
                let mut r = Report::new(format!("join pairs over {} have fixed witnesses in both modes", g.name()));
                let mut differing = 0;
                for s in &lattice {
                    for t in &lattice {
                        let (sig, z) = witness_signature(free_model(s).generators(), free_model(t).generators())?;
                        for (k, h) in join(s, t)?.nontrivial_pairs() {
                            let c = admissibility_witness(&sig, Mode::Coproduct, k, h)?;
                            let w = admissibility_witness(&sig, Mode::Tensor { z }, k, h)?;
                            differing += usize::from(c.normal_form != w.normal_form);
                            r.check(c.verified && w.verified, || format!("s = {s:?}, t = {t:?}, {k} → {h}: {}", c.term));
                        }
                    }
                }
                notes.push(format!("{}: {differing} witnesses with different normal forms in the two modes", g.name()));
                checks.push(r);
                if let Some(x) = (1..g.order()).find(|&x| g.mul(x, x) == 0) {
                    let o = marked_tensor_obstruction(&g, x)?;
                    notes.push(format!(
                        "marked tensor over {}: {} interchanges to {}; (2 3) stabilizes the identified class: {}",
                        g.name(),
                        o.term,
                        o.interchanged,
                        o.sigma_stabilizes
                    ));
                }
            }
        }
        Suite::ResB | Suite::DoubleCoset => {
            for f in homs_or(cfg, &["C4_to_S3", "C2_into_C4", "C4_onto_C2"])? {
                let lattice = lattices.get(f.target())?;
                checks.push(if suite == Suite::ResB {
                    theorem_b_res_check(&f, &lattice, cfg.guard)?
                } else {
                    double_coset_check(&f, &lattice, cfg.guard)?
                });
            }
        }
        Suite::IndB => {
            let default = ["C2_into_C4", "C2_into_C8", "C4_into_C8", "sub_C4_0", "sub_C4_1", "sub_C8_0", "sub_C8_1", "sub_C8_2"];
            for m in homs_or(cfg, &default)? {
                let lattice = lattices.get(m.source())?;
                checks.push(theorem_b_ind_check(&m, &lattice)?);
            }
        }
        Suite::CoindB => {
            for g in groups_or(cfg, &["C4", "C8", "K4", "S3"])? {
                checks.push(theorem_b_coind_check(&g)?);
            }
        }
        Suite::RewriteCriteria => {
            let names: Vec<&str> = match &cfg.mode {
                Some(m) => vec![m.as_str()],
                None => vec!["coproduct", "coproduct-mixed", "tensor"],
            };
            let fuzz = FuzzConfig { cases: cfg.cases, seed: cfg.seed, ..FuzzConfig::default() };
            for name in names {
                let (sig, mode) = setups::by_name(name)?;
                let report = check_criteria(&sig, mode, &fuzz)?;
                for mut c in report.checks {
                    c.law = format!("{name}: {}", c.law);
                    checks.push(c);
                }
            }
        }
        Suite::NoninjInd => {
            for f in homs_or(cfg, &["bang_C2", "C4_onto_C2"])? {
                let w = noninjective_induction_counterexample(&f, cfg.guard)?;
                let mut r = Report::new(format!("induction along {f:?} is not Σ-free"));
                let ok = w.fixes_base_class && !w.sigma.is_identity() && !w.induced.is_sigma_free();
                r.check(ok, || format!("kernel element {} acting by {:?} does not fix the base class", w.kernel_element, w.sigma));
                notes.push(format!(
                    "{f:?}: (e, {:?}) fixes the class of ((e, id), Γ) for kernel element {} ({})",
                    w.sigma,
                    w.kernel_element,
                    if w.balanced_product { "explicit balanced product" } else { "coset space" }
                ));
                checks.push(r);
            }
        }
    }
    let cases = checks.iter().map(|c| c.cases).sum();
    let failures = checks.iter().map(|c| c.failures).sum();
    let counterexample = checks.iter().find(|c| !c.passed).and_then(|c| c.counterexample.as_ref().map(|x| format!("{}: {x}", c.law)));
    Ok(SuiteReport {
        suite: suite.id().to_string(),
        config: cfg.clone(),
        cases,
        failures,
        passed: failures == 0,
        counterexample,
        checks,
        notes,
    })
}
