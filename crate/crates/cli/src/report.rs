//! The JSON report for one `analyze` run, and its verdict registry.
//!
//! Every check the pipeline knows about appears exactly once in `verdicts`,
//! in registry order, whether it passed, failed or was skipped.

use serde::Serialize;
use sha2::{Digest, Sha256};

use reflmono::analysis::{Analysis, CarouselOrbit, HyperplaneCarousel};
use reflmono::chi::ChiInvariants;
use reflmono::cyclo::CycNumber;
use reflmono::error::Error;
use reflmono::extdata::{canonical_i_generators, Character, ExtensionDatum, Status, ValidationReport, VALIDATION_CHECKS};
use reflmono::hecke::{FactorKind, HeckeAlgebra};
use reflmono::induce::{build_i_action, IAction, Ledger, Regime};
use reflmono::reflgrp::FiniteGroup;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

const STAGES: &[&str] = &["validation", "chi", "carousel", "hecke", "induce"];

/// (stage, check) for every verdict, in report order.
pub fn registry() -> Vec<(&'static str, &'static str)> {
    let mut v: Vec<(&str, &str)> = VALIDATION_CHECKS.iter().map(|&c| ("validation", c)).collect();
    let rest: &[(&str, &[&str])] = &[
        (
            "chi",
            &["w_chi_zero_in_w_chi", "w_chi_zero_meets_w_alpha", "w_chi_zero_generation", "parameters_consistent"],
        ),
        (
            "carousel",
            &[
                "lambda_inverse",
                "minpoly_invertible",
                "deg_r_equals_n",
                "r_is_rbar_of_power",
                "rbar_mu_theta_identity",
                "mu_moves_u0_to_ue",
                "mu_commutes_with_lambda",
                "lambda_inv_closed_form",
                "carousel_rbar_closed_form",
                "carousel_orbit_constancy",
            ],
        ),
        (
            "hecke",
            &[
                "rbar_annihilates_generators",
                "braid_relations",
                "basis_certificate",
                "generator_minpolys",
                "specializes_to_group_algebra",
                "reflection_conjugate_to_simple",
                "factors_commute",
                "hecke_dimension",
            ],
        ),
        (
            "induce",
            &[
                "block_characters_distinct",
                "fiber_compatible",
                "inertia_part_in_kernel",
                "module_dimension",
                "i_action_matches_ledger",
                "conjugation_identity",
                "braid_relations_hold",
                "generators_are_permutations",
            ],
        ),
    ];
    for (stage, names) in rest {
        v.extend(names.iter().map(|&n| (*stage, n)));
    }
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub check: &'static str,
    pub stage: &'static str,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Debug, Clone, Serialize)]
pub struct Input {
    pub datum_name: Option<String>,
    pub fingerprint: String,
    pub chi: String,
    pub rbar: bool,
    pub convention: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub rank: usize,
    pub order: usize,
    pub cyclotomic_order: u32,
    pub wtilde_order: usize,
    pub kernel_order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct HyperplaneSummary {
    pub index: usize,
    pub order: usize,
    pub orbit: usize,
    pub normal: Vec<CycNumber>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ArrangementSummary {
    pub hyperplanes: Vec<HyperplaneSummary>,
    pub orbits: Vec<Vec<usize>>,
    pub reflection_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CarouselSection {
    pub hyperplanes: Vec<HyperplaneCarousel>,
    pub orbits: Vec<CarouselOrbit>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MChiSection {
    pub regime: Option<Regime>,
    pub ledger: Ledger,
    pub i_action: Vec<IAction>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Sections {
    pub group: Option<GroupSummary>,
    pub arrangement: Option<ArrangementSummary>,
    pub validation: Option<ValidationReport>,
    pub chi_invariants: Option<ChiInvariants>,
    pub carousel: Option<CarouselSection>,
    pub hecke: Option<HeckeAlgebra>,
    pub m_chi: Option<MChiSection>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub input: Input,
    pub exit_code: i32,
    pub error: Option<String>,
    pub sections: Sections,
    pub verdicts: Vec<Verdict>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// sha256 over the datum bytes and every option that affects the result.
pub fn fingerprint(datum: &[u8], chi: &str, rbar: Option<&[u8]>, convention: &str) -> String {
    let mut h = Sha256::new();
    h.update(datum);
    h.update([0]);
    h.update(chi.as_bytes());
    h.update([0]);
    h.update(rbar.unwrap_or_default());
    h.update([0]);
    h.update(convention.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn stage_index(stage: &str) -> usize {
    let s = if stage == "ledger" { "induce" } else { stage };
    STAGES.iter().position(|&x| x == s).expect("known stage")
}

fn aggregate<'a>(statuses: impl Iterator<Item = &'a Status>) -> Option<Status> {
    let mut out = None;
    for s in statuses {
        match s {
            Status::Fail(_) => return Some(s.clone()),
            Status::Pass => out = Some(Status::Pass),
            Status::Skipped(_) if out.is_none() => out = Some(s.clone()),
            Status::Skipped(_) => {}
        }
    }
    out
}

fn verdict(a: &Analysis, stage: &'static str, check: &'static str) -> Status {
    if stage == "validation" {
        return a
            .validation
            .checks
            .iter()
            .find(|c| c.name == check)
            .map(|c| c.status.clone())
            .unwrap_or_else(|| Status::Skipped("not evaluated".into()));
    }
    if !a.validation.passed() {
        return Status::Skipped("validation failed".into());
    }
    if let Some(f) = &a.failure {
        match &f.kind {
            Error::Integrity { check: c, witness } if c == check => return Status::Fail(witness.clone()),
            Error::Parameter(m) if check == "parameters_consistent" => return Status::Fail(m.clone()),
            _ => {}
        }
        if stage_index(f.stage) <= stage_index(stage) {
            return Status::Skipped(format!("pipeline stopped at stage {}", f.stage));
        }
    }
    match stage {
        "chi" => Status::Pass,
        "carousel" if a.carousels.is_empty() => Status::Skipped("no hyperplanes".into()),
        "carousel" => Status::Pass,
        "hecke" => match &a.hecke {
            None => Status::Skipped(match a.invariants.as_ref().map(|i| i.w_chi_zero.len()) {
                Some(1) => "W_χ⁰ is trivial".into(),
                _ => "Hecke algebra not constructed".into(),
            }),
            Some(_) if check == "hecke_dimension" => Status::Pass,
            Some(h) => aggregate(
                h.certificates
                    .iter()
                    .chain(h.factors.iter().flat_map(|f| &f.certificates))
                    .filter(|c| c.name == check)
                    .map(|c| &c.status),
            )
            .unwrap_or_else(|| {
                let coxeter = h.factors.iter().any(|f| matches!(f.kind, FactorKind::Coxeter { .. }));
                if check == "reflection_conjugate_to_simple" && coxeter {
                    Status::Pass
                } else {
                    Status::Skipped("not applicable to these factors".into())
                }
            }),
        },
        _ => match check {
            "block_characters_distinct" => Status::Pass,
            "fiber_compatible" | "inertia_part_in_kernel" if a.module.is_some() => Status::Pass,
            _ if a.module.is_none() => Status::Skipped("ledger only".into()),
            _ => aggregate(a.module_checks.iter().filter(|c| c.name == check).map(|c| &c.status))
                .unwrap_or_else(|| Status::Skipped("not evaluated".into())),
        },
    }
}

pub fn verdicts(a: &Analysis) -> Vec<Verdict> {
    registry()
        .into_iter()
        .map(|(stage, check)| Verdict {
            check,
            stage,
            status: verdict(a, stage, check),
        })
        .collect()
}

/// Verdicts for a run that stopped before the pipeline started.
pub fn skipped_verdicts(reason: &str) -> Vec<Verdict> {
    registry()
        .into_iter()
        .map(|(stage, check)| Verdict {
            check,
            stage,
            status: Status::Skipped(reason.into()),
        })
        .collect()
}

pub fn sections(e: &ExtensionDatum, chi: &Character, a: &Analysis) -> Sections {
    let g = &e.group;
    let group = GroupSummary {
        name: e.name.clone(),
        rank: g.rank(),
        order: g.order(),
        cyclotomic_order: g.cyclotomic_order(),
        wtilde_order: e.wtilde.order(),
        kernel_order: e.kernel.len(),
    };
    let arrangement = ArrangementSummary {
        hyperplanes: e
            .arrangement
            .hyperplanes
            .iter()
            .enumerate()
            .map(|(index, h)| HyperplaneSummary {
                index,
                order: h.order,
                orbit: h.orbit,
                normal: h.normal.clone(),
            })
            .collect(),
        orbits: e.arrangement.orbits().to_vec(),
        reflection_count: e.arrangement.reflection_count(),
    };
    let carousel = a.invariants.as_ref().map(|_| CarouselSection {
        hyperplanes: a.carousels.clone(),
        orbits: a.carousel_orbits.clone(),
    });
    let m_chi = a.ledger.as_ref().map(|l| MChiSection {
        regime: a.regime,
        ledger: l.clone(),
        i_action: build_i_action(e, chi, l, &canonical_i_generators(e)),
    });
    Sections {
        group: Some(group),
        arrangement: Some(arrangement),
        validation: Some(a.validation.clone()),
        chi_invariants: a.invariants.clone(),
        carousel,
        hecke: a.hecke.clone(),
        m_chi,
    }
}
