//! The full pipeline for one datum and one character: validation, χ-invariants,
//! rank-one carousels, the Hecke algebra of W_χ⁰, the ledger and, where a
//! regime applies, the explicit module with its consistency checks.
//!
//! A failing stage stops the pipeline; everything computed before it is kept
//! so that a report can still be written.

use serde::Serialize;

use crate::carousel::{build_carousel, carousel_minpolys, default_rbar, twist_from_extension, CarouselPolys};
use crate::chi::{check_generation, compute_chi_invariants, AlphaClass, ChiInvariants, RbarParams};
use crate::cyclo::{CycNumber, CycPoly};
use crate::error::{Error, Result};
use crate::extdata::{validate, Character, Check, Convention, ExtensionDatum, Status, ValidationReport};
use crate::hecke::{build_hecke, HeckeAlgebra, ReflectionInput};
use crate::induce::{build_ledger, choose_regime, module_checks, Ledger, Module, R1Module, R2Module, Regime};
use crate::par::Exec;
use crate::reflgrp::FiniteGroup;

#[derive(Debug, Clone, Serialize)]
pub struct HyperplaneCarousel {
    pub hyperplane: usize,
    pub n: usize,
    pub e: usize,
    pub sgn: i8,
    pub twist: CycNumber,
    #[serde(flatten)]
    pub polys: CarouselPolys,
    pub class: AlphaClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct CarouselOrbit {
    pub hyperplanes: Vec<usize>,
    pub rbar: CycPoly,
}

/// Where the pipeline stopped, and why.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub stage: &'static str,
    pub error: String,
    #[serde(skip)]
    pub kind: Error,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_STRUCTURAL: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_INTEGRITY: i32 = 4;

/// Exit code for an error that stopped the pipeline. An unsupported regime
/// is not a failure.
pub fn error_exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::Structural(_) | Error::Capacity { .. } => EXIT_STRUCTURAL,
        Error::Regime { .. } => EXIT_OK,
        Error::Integrity { .. } | Error::Parameter(_) | Error::Domain(_) | Error::DivisionByZero => EXIT_INTEGRITY,
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub convention: Option<Convention>,
    pub exec: Exec,
}

#[derive(Serialize)]
pub struct Analysis {
    pub validation: ValidationReport,
    pub invariants: Option<ChiInvariants>,
    pub generation: Option<Status>,
    pub carousels: Vec<HyperplaneCarousel>,
    pub carousel_orbits: Vec<CarouselOrbit>,
    pub carousel_orbit_constancy: Option<Status>,
    /// R̄ used for each A⁰ hyperplane (supplied, else the carousel default).
    pub rbar_used: Vec<Option<CycPoly>>,
    pub hecke: Option<HeckeAlgebra>,
    pub ledger: Option<Ledger>,
    pub regime: Option<Regime>,
    pub module_checks: Vec<Check>,
    pub warnings: Vec<String>,
    pub failure: Option<Failure>,
    #[serde(skip)]
    pub module: Option<Module>,
}

impl Analysis {
    fn empty(validation: ValidationReport) -> Self {
        Analysis {
            validation,
            invariants: None,
            generation: None,
            carousels: vec![],
            carousel_orbits: vec![],
            carousel_orbit_constancy: None,
            rbar_used: vec![],
            hecke: None,
            ledger: None,
            regime: None,
            module_checks: vec![],
            warnings: vec![],
            failure: None,
            module: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if !self.validation.passed() {
            return EXIT_VALIDATION;
        }
        self.failure.as_ref().map_or(EXIT_OK, |f| error_exit_code(&f.kind))
    }

    fn fail(mut self, stage: &'static str, err: Error) -> Self {
        self.failure = Some(Failure {
            stage,
            error: err.to_string(),
            kind: err,
        });
        self
    }
}

pub fn carousel_for(e: &ExtensionDatum, chi: &Character, inv: &ChiInvariants, a: usize) -> Result<HyperplaneCarousel> {
    let h = e.arrangement.get(a);
    let twist = twist_from_extension(e, a, chi).to_cyc()?;
    let m = build_carousel(h.order, inv.hyperplanes[a].e_alpha, e.sgn[a], &twist)?;
    let mut polys = carousel_minpolys(&m)?;
    let closed = default_rbar(&m)?;
    if closed != polys.rbar {
        return Err(Error::integrity(
            "carousel_rbar_closed_form",
            format!("α = {a}: {} ≠ {closed}", polys.rbar),
        ));
    }
    polys.rbar = closed;
    Ok(HyperplaneCarousel {
        hyperplane: a,
        n: m.n,
        e: m.e,
        sgn: m.sgn,
        twist,
        polys,
        class: inv.hyperplanes[a].class,
    })
}

pub fn analyze(e: &ExtensionDatum, chi: &Character, rbar: Option<&RbarParams>, opts: Options) -> Analysis {
    let validation = validate(e);
    let ok = validation.passed();
    let mut out = Analysis::empty(validation);
    if !ok {
        return out;
    }

    let inv = match compute_chi_invariants(e, chi, rbar) {
        Ok(i) => i,
        Err(err) => return out.fail("chi", err),
    };
    out.generation = Some(match check_generation(e, &inv) {
        Ok(()) => Status::Pass,
        Err(w) => Status::Fail(w),
    });
    if let Some(Status::Fail(w)) = &out.generation {
        let w = w.clone();
        out.invariants = Some(inv);
        return out.fail("chi", Error::integrity("w_chi_zero_generation", w));
    }

    let cars = opts
        .exec
        .map_range(e.hyperplane_count(), |a| carousel_for(e, chi, &inv, a));
    for c in cars {
        match c {
            Ok(c) => out.carousels.push(c),
            Err(err) => {
                out.invariants = Some(inv);
                return out.fail("carousel", err);
            }
        }
    }
    let mut constancy = Status::Pass;
    for orbit in e.arrangement.orbits_under(&inv.w_chi) {
        let rb = out.carousels[orbit[0]].polys.rbar.clone();
        if let Some(&b) = orbit.iter().find(|&&b| out.carousels[b].polys.rbar != rb) {
            if !constancy.is_fail() {
                constancy = Status::Fail(format!("R̄ differs on α = {} and α = {b}", orbit[0]));
            }
        }
        out.carousel_orbits.push(CarouselOrbit {
            hyperplanes: orbit,
            rbar: rb,
        });
    }
    let constancy_failed = constancy.is_fail();
    out.carousel_orbit_constancy = Some(constancy);
    if constancy_failed {
        out.invariants = Some(inv);
        return out.fail("carousel", Error::integrity("carousel_orbit_constancy", "see orbits"));
    }

    out.rbar_used = (0..e.hyperplane_count())
        .map(|a| match inv.hyperplanes[a].class {
            AlphaClass::A0 => Some(inv.rbar[a].clone().unwrap_or_else(|| out.carousels[a].polys.rbar.clone())),
            AlphaClass::A1 => None,
        })
        .collect();

    if inv.w_chi_zero.len() > 1 {
        let input: Vec<ReflectionInput> = inv
            .a0()
            .into_iter()
            .map(|a| {
                let h = e.arrangement.get(a);
                ReflectionInput {
                    hyperplane: a,
                    reflection: e.group.pow(h.generator, inv.hyperplanes[a].e_alpha as i64),
                    normal: h.normal.clone(),
                    rbar: out.rbar_used[a].clone().expect("A⁰"),
                }
            })
            .collect();
        match build_hecke(&e.group, &input, opts.exec) {
            Ok(h) => {
                if h.dim != inv.w_chi_zero.len() {
                    let err = Error::integrity("hecke_dimension", format!("{} ≠ |W_χ⁰| = {}", h.dim, inv.w_chi_zero.len()));
                    out.invariants = Some(inv);
                    return out.fail("hecke", err);
                }
                out.hecke = Some(h);
            }
            Err(Error::Regime { regime, reason }) => {
                out.warnings.push(format!(
                    "Hecke algebra not constructed ({regime}): {reason}; dim H = |W_χ⁰| = {} is asserted, not certified",
                    inv.w_chi_zero.len()
                ));
            }
            Err(err) => {
                out.invariants = Some(inv);
                return out.fail("hecke", err);
            }
        }
    }

    let convention = opts.convention.unwrap_or(e.convention);
    let ledger = match build_ledger(e, chi, &inv, convention) {
        Ok(l) => l,
        Err(err) => {
            out.invariants = Some(inv);
            return out.fail("ledger", err);
        }
    };

    let regime = match choose_regime(e, &inv) {
        Ok(Regime::R2) if out.hecke.is_none() => {
            out.warnings
                .push("regime R2 applies but the Hecke algebra is unavailable; ledger only".into());
            Regime::LedgerOnly
        }
        Ok(r) => r,
        Err(reason) => {
            out.warnings.push(format!("no constructive regime: {reason}; ledger only"));
            Regime::LedgerOnly
        }
    };
    out.regime = Some(regime);
    let module = match regime {
        Regime::R1 => Some(Module::R1(R1Module::new(e, chi, &ledger))),
        Regime::R2 => match R2Module::new(out.hecke.clone().expect("checked above"), chi) {
            Ok(m) => Some(Module::R2(m)),
            Err(err) => {
                out.invariants = Some(inv);
                out.ledger = Some(ledger);
                return out.fail("induce", err);
            }
        },
        Regime::LedgerOnly => None,
    };
    if let Some(m) = &module {
        match module_checks(e, chi, &ledger, m, opts.exec) {
            Ok(c) => out.module_checks = c,
            Err(err) => {
                out.invariants = Some(inv);
                out.ledger = Some(ledger);
                return out.fail("induce", err);
            }
        }
    }
    out.invariants = Some(inv);
    out.ledger = Some(ledger);
    out.module = module;
    if let Some(c) = out.module_checks.iter().find(|c| c.status.is_fail()) {
        let Status::Fail(w) = c.status.clone() else { unreachable!() };
        let name = c.name;
        return out.fail("induce", Error::integrity(name, w));
    }
    out
}
