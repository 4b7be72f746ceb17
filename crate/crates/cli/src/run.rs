//! Dispatch from a model kind to the verifiers, with oracle cross-checks.

use pncalc_core::calculus::{
    compatibility_defect, magri_morosi, nijenhuis_torsion, schouten_bivector, Bivector, EndoField, Tensor,
};
use pncalc_core::groupoid::{direct_sum_pn, groupoid_axioms_report, trivial_pn_verify_with, Assembly};
use pncalc_core::liealg::{lambda_n_verify, lie_poisson_from_table, LieAlgebra, LieAlgebraError};
use pncalc_core::liegroup::{group_verify, theorem31_verify, GroupError, PolyGroup};
use pncalc_core::oracle::{
    randomized_identity_check, recipe_compatibility_defect, recipe_concomitant, recipe_nijenhuis_torsion,
    recipe_schouten, SamplePlan,
};
use pncalc_core::calculus::pn_verify;
use pncalc_core::report::{Check, StructureReport, Verdict, Witness};

use crate::model::{ModelFile, Payload};

/// Runs every check for `model`. With `plan` set, each derivative-based
/// verdict is paired with a finite-difference oracle outcome.
pub fn run_checks(model: &ModelFile, plan: Option<&SamplePlan>) -> StructureReport {
    let mut r = StructureReport::default();
    match &model.payload {
        Payload::ManifoldPn { p, n } => {
            r = pn_verify(p, n);
            if let Some(plan) = plan {
                attach_pn(&mut r, "", p, n, plan);
            }
        }
        Payload::LieAlgebra { table } => {
            let verdict = match LieAlgebra::new(table.clone()) {
                Ok(_) => Verdict::Pass,
                Err(LieAlgebraError::JacobiFailure(w)) => Verdict::Fail(w),
                Err(e) => Verdict::Blocked(e.to_string()),
            };
            r.push(Check::new("jacobi", verdict));
            let lp = lie_poisson_from_table(table);
            let mut check = Check::timed("lie_poisson", || {
                Verdict::from_witness(schouten_bivector(&lp, &lp).expect("one chart").first_nonzero())
            });
            if let Some(plan) = plan {
                let s = schouten_bivector(&lp, &lp).expect("one chart");
                check.oracle = Some(randomized_identity_check(&s, &*recipe_schouten(&lp, &lp, plan), plan));
            }
            r.push(check);
        }
        Payload::LambdaN { algebra, lambda, n } => r = lambda_n_verify(algebra, lambda, n),
        Payload::PolyGroup { law } => {
            r.push(Check::timed("group_axioms", || match group_verify(law) {
                Ok(()) => Verdict::Pass,
                Err(e) => group_failure(e),
            }));
            if r.passed() {
                let group = PolyGroup::new(law.clone());
                let (jac, alg) = match &group {
                    Ok(_) => (Verdict::Pass, Verdict::Pass),
                    Err(e @ GroupError::NonConstantDeterminant(_)) => {
                        (group_failure(e.clone()), Verdict::Blocked("translation Jacobian".into()))
                    }
                    Err(e) => (Verdict::Pass, group_failure(e.clone())),
                };
                r.push(Check::new("translation_jacobian", jac));
                r.push(Check::new("lie_algebra", alg));
                if let Ok(g) = group {
                    r.note(format!("structure constants: {}", describe_constants(g.algebra())));
                }
            } else {
                for name in ["translation_jacobian", "lie_algebra"] {
                    r.push(Check::new(name, Verdict::Blocked("group axioms fail".into())));
                }
            }
        }
        Payload::GroupPn { group, lambda, n } => {
            r = theorem31_verify(group, lambda, n);
            if let (Some(plan), Ok(p), Ok(nn)) = (plan, group.extend_bivector(lambda), group.extend_endo(n)) {
                attach_pn(&mut r, "manifold.", &p, &nn, plan);
            }
        }
        Payload::TrivialGroupoidPn { groupoid, data, symmetric } => {
            r.absorb("groupoid", groupoid_axioms_report(groupoid));
            r.absorb("", trivial_pn_verify_with(groupoid, data, *symmetric));
            for c in &mut r.checks {
                if let Some(rest) = c.name.strip_prefix('.') {
                    c.name = rest.to_string();
                }
            }
            if let Some(plan) = plan {
                attach_pn(&mut r, "base.", &data.pi_m, &data.n_m, plan);
                let group = groupoid.group().expect("built from a verified group");
                if let (Ok(p), Ok(nn)) = (group.extend_bivector(&data.lambda_g), group.extend_endo(&data.n_g)) {
                    attach_pn(&mut r, "group.manifold.", &p, &nn, plan);
                }
                if let Ok((p, nn)) = direct_sum_pn(groupoid, data, Assembly::RightInvariant) {
                    attach_pn(&mut r, "total.", &p, &nn, plan);
                }
            }
        }
    }
    r
}

fn group_failure(e: GroupError) -> Verdict {
    match e {
        GroupError::Identity(w) | GroupError::Associativity(w) | GroupError::Inverse(w) => Verdict::Fail(w),
        GroupError::NonConstantDeterminant(d) => Verdict::Fail(Witness {
            component: "det J(g)".into(),
            indices: vec![],
            value: d,
        }),
        GroupError::Jacobi(LieAlgebraError::JacobiFailure(w)) => Verdict::Fail(w),
        other => Verdict::Blocked(other.to_string()),
    }
}

fn describe_constants(g: &LieAlgebra) -> String {
    let d = g.dim();
    let mut parts = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..d {
                let c = g.c(k, i, j);
                if *c != Default::default() {
                    parts.push(format!("c^{}_{}{} = {}", k + 1, i + 1, j + 1, c));
                }
            }
        }
    }
    if parts.is_empty() {
        "all zero".into()
    } else {
        parts.join(", ")
    }
}

/// Attaches oracle outcomes to the `poisson`, `nijenhuis`, `compatible` and
/// `concomitant_zero` checks named under `prefix`.
fn attach_pn(r: &mut StructureReport, prefix: &str, p: &Bivector, n: &EndoField, plan: &SamplePlan) {
    let mut set = |name: &str, outcome| {
        if let Some(c) = r.get_mut(&format!("{prefix}{name}")) {
            c.oracle = Some(outcome);
        }
    };
    let s = schouten_bivector(p, p).expect("one chart");
    set("poisson", randomized_identity_check(&s, &*recipe_schouten(p, p, plan), plan));
    let t = nijenhuis_torsion(n);
    set("nijenhuis", randomized_identity_check(&t, &*recipe_nijenhuis_torsion(n, plan), plan));
    let d = compatibility_defect(n, p).expect("one chart");
    set("compatible", randomized_identity_check(&d, &*recipe_compatibility_defect(n, p), plan));
    if let Ok(c) = magri_morosi(p, n) {
        set("concomitant_zero", randomized_identity_check(&c, &*recipe_concomitant(p, n, plan), plan));
    }
}
