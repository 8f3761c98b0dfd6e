use serde::Serialize;

use super::{tau_character, act_on_character, ExtensionDatum};
use crate::reflgrp::{is_subgroup, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "detail")]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Status {
    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail(_))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// Conditions taken on trust, listed for the reader of the report.
    pub assumptions: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| c.status.is_fail())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status.is_fail())
    }
}

/// Every check `validate` performs, in report order.
pub const VALIDATION_CHECKS: &[&str] = &[
    "wtilde_group",
    "q_homomorphism",
    "q_surjective",
    "kernel_matches",
    "splitting_complete",
    "splitting_lifts_s_alpha_inverse",
    "splitting_in_local_subgroup",
    "local_subgroup_in_preimage",
    "local_subgroup_i_invariant",
    "tau_sign_valued",
    "tau_multiplicative",
    "tau_w_invariant",
];

fn first_failure<T>(items: impl IntoIterator<Item = T>, bad: impl Fn(&T) -> Option<String>) -> Status {
    for it in items {
        if let Some(w) = bad(&it) {
            return Status::Fail(w);
        }
    }
    Status::Pass
}

/// Checks every algebraic condition on the datum. Failures carry a witness;
/// checks that depend on an earlier failure are skipped.
pub fn validate(e: &ExtensionDatum) -> ValidationReport {
    let t = &e.wtilde;
    let w = &e.group;
    let nt = t.order();
    let na = e.hyperplane_count();
    let mut checks = Vec::new();
    let mut push = |name: &'static str, status: Status| checks.push(Check { name, status });

    // the table passed its structural checks on load
    push("wtilde_group", Status::Pass);

    let gens = t.generators();
    let q_hom = first_failure(
        (0..nt).flat_map(|a| gens.iter().map(move |&g| (a, g))),
        |&(a, g)| {
            (e.q[t.mul(a, g)] != w.mul(e.q[a], e.q[g]))
                .then(|| format!("q({a}·{g}) ≠ q({a})·q({g})"))
        },
    );
    let hom_ok = !q_hom.is_fail();
    push("q_homomorphism", q_hom);

    let mut hit = vec![false; w.order()];
    for &x in &e.q {
        hit[x] = true;
    }
    let surj = first_failure(0..w.order(), |&x| (!hit[x]).then(|| format!("W element {x} has no preimage")));
    let surj_ok = !surj.is_fail();
    push("q_surjective", surj);

    push(
        "kernel_matches",
        match &e.supplied_kernel {
            None => Status::Skipped("no kernel supplied".into()),
            Some(k) if *k == e.kernel => Status::Pass,
            Some(k) => Status::Fail(format!("supplied {k:?}, ker q = {:?}", e.kernel)),
        },
    );

    let complete = first_failure(0..na, |&a| e.splitting[a].is_none().then(|| format!("α = {a} has no r_α")));
    let complete_ok = !complete.is_fail();
    push("splitting_complete", complete);

    if complete_ok {
        push(
            "splitting_lifts_s_alpha_inverse",
            first_failure(0..na, |&a| {
                (e.q[e.r(a)] != e.p_sigma(a)).then(|| {
                    format!("α = {a}: q(r_α) = {} but s_α^{{-1}} = {}", e.q[e.r(a)], e.p_sigma(a))
                })
            }),
        );
        push(
            "splitting_in_local_subgroup",
            first_failure(0..na, |&a| {
                e.wtilde_alpha[a]
                    .binary_search(&e.r(a))
                    .is_err()
                    .then(|| format!("α = {a}: r_α = {} ∉ W̃_α", e.r(a)))
            }),
        );
    } else {
        push("splitting_lifts_s_alpha_inverse", Status::Skipped("splitting incomplete".into()));
        push("splitting_in_local_subgroup", Status::Skipped("splitting incomplete".into()));
    }

    let local = first_failure(0..na, |&a| {
        let h = &e.wtilde_alpha[a];
        let st = &e.arrangement.get(a).stabilizer;
        if !is_subgroup(t, h) {
            return Some(format!("α = {a}: W̃_α is not a subgroup"));
        }
        h.iter()
            .find(|&&x| st.binary_search(&e.q[x]).is_err())
            .map(|x| format!("α = {a}: {x} ∈ W̃_α maps outside W_α"))
    });
    push("local_subgroup_in_preimage", local);

    push(
        "local_subgroup_i_invariant",
        first_failure(
            (0..na).flat_map(|a| e.kernel.iter().map(move |&x| (a, x))),
            |&(a, x)| {
                let h = &e.wtilde_alpha[a];
                h.iter()
                    .find(|&&y| h.binary_search(&t.conjugate(x, y)).is_err())
                    .map(|y| format!("α = {a}: {x}·{y}·{x}^{{-1}} ∉ W̃_α"))
            },
        ),
    );

    let outside = &e.tau_keys_outside_kernel;
    let signs = if let Some(x) = outside.first() {
        Status::Fail(format!("τ given on {x} ∉ I"))
    } else {
        first_failure(e.kernel.iter(), |&&x| (e.tau[x] == 0).then(|| format!("τ({x}) is not ±1")))
    };
    let signs_ok = !signs.is_fail();
    push("tau_sign_valued", signs);
    if signs_ok {
        push(
            "tau_multiplicative",
            first_failure(
                e.kernel.iter().flat_map(|&x| e.kernel.iter().map(move |&y| (x, y))),
                |&(x, y)| {
                    (e.tau[t.mul(x, y)] != e.tau[x] * e.tau[y])
                        .then(|| format!("τ({x}·{y}) ≠ τ({x})·τ({y})"))
                },
            ),
        );
    } else {
        push("tau_multiplicative", Status::Skipped("τ not sign-valued".into()));
    }
    if signs_ok && hom_ok && surj_ok {
        let tau = tau_character(e);
        push(
            "tau_w_invariant",
            first_failure(0..w.order(), |&v| {
                (act_on_character(e, v, &tau) != tau).then(|| format!("w = {v} moves τ"))
            }),
        );
    } else {
        push("tau_w_invariant", Status::Skipped("earlier check failed".into()));
    }

    let mut assumptions = vec![
        "the splitting is evaluated letter-wise from r_α; its extension over all braid relations is not certified".to_string(),
    ];
    let defaults: Vec<usize> = (0..na).filter(|&a| e.wtilde_alpha_default[a]).collect();
    if !defaults.is_empty() {
        assumptions.push(format!(
            "W̃_α taken as the full preimage q^{{-1}}(W_α) for α ∈ {defaults:?}"
        ));
    }
    ValidationReport {
        checks,
        assumptions,
    }
}
