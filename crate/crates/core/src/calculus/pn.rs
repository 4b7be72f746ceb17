use crate::expr::Poly;
use crate::report::{Check, StructureReport, Verdict};

use super::ops::{nijenhuis_torsion, oneform_bracket, schouten_bivector};
use super::tensors::{Bivector, ConcomitantTensor, EndoField, OneForm, SymmetricDefect, Tensor};
use super::{CalculusError, Result};

/// `N·P − P·Nᵀ`; symmetric, and zero iff `N∘Π♯ = Π♯∘N*`.
pub fn compatibility_defect(n: &EndoField, p: &Bivector) -> Result<SymmetricDefect> {
    if n.chart() != p.chart() {
        return Err(CalculusError::ChartMismatch);
    }
    let chart = p.chart();
    let dim = chart.dim();
    let pm = p.to_matrix();
    let np = |i: usize, j: usize| {
        (0..dim).fold(Poly::zero(chart), |acc, k| acc + n.get(i, k) * &pm[k][j])
    };
    let pnt = |i: usize, j: usize| {
        (0..dim).fold(Poly::zero(chart), |acc, k| acc + &pm[i][k] * n.get(j, k))
    };
    let m = (0..dim)
        .map(|i| (0..dim).map(|j| np(i, j) - pnt(i, j)).collect())
        .collect();
    Ok(SymmetricDefect::new(chart, m))
}

/// The bivector `NΠ` with matrix `N·P`; requires `N·P = P·Nᵀ`.
pub fn np_bivector(n: &EndoField, p: &Bivector) -> Result<Bivector> {
    let defect = compatibility_defect(n, p)?;
    if let Some(w) = defect.first_nonzero() {
        return Err(CalculusError::NotCompatible {
            witness: w.to_string(),
        });
    }
    let chart = p.chart();
    let dim = chart.dim();
    let pm = p.to_matrix();
    Ok(Bivector::from_fn(chart, |i, j| {
        (0..dim).fold(Poly::zero(chart), |acc, k| acc + n.get(i, k) * &pm[k][j])
    }))
}

/// Magri–Morosi concomitant on coordinate coframes:
/// `C(α,β) = [α,β]_{NΠ} − ([N*α,β]_Π + [α,N*β]_Π − N*[α,β]_Π)`.
pub fn magri_morosi(p: &Bivector, n: &EndoField) -> Result<ConcomitantTensor> {
    let np = np_bivector(n, p)?;
    let chart = p.chart();
    let coframes: Vec<OneForm> = (0..chart.dim()).map(|i| OneForm::coordinate(chart, i)).collect();
    let dual: Vec<OneForm> = coframes.iter().map(|a| n.apply_dual(a)).collect();
    Ok(ConcomitantTensor::from_fn(chart, |i, j| {
        let (a, b) = (&coframes[i], &coframes[j]);
        let lhs = oneform_bracket(&np, a, b).expect("same chart");
        let t1 = oneform_bracket(p, &dual[i], b).expect("same chart");
        let t2 = oneform_bracket(p, a, &dual[j]).expect("same chart");
        let t3 = n.apply_dual(&oneform_bracket(p, a, b).expect("same chart"));
        lhs.sub(&t1.add(&t2).sub(&t3))
    }))
}

/// Runs the four Poisson–Nijenhuis conditions on `(P, N)`.
///
/// Mandatory checks: `poisson`, `nijenhuis`, `compatible`, `concomitant_zero`.
/// `concomitant_skew` is reported but never decides the overall verdict.
pub fn pn_verify(p: &Bivector, n: &EndoField) -> StructureReport {
    let mut report = StructureReport::default();
    if p.chart() != n.chart() {
        let msg = format!("P lives on ({}) but N on ({})", p.chart(), n.chart());
        for name in ["poisson", "nijenhuis", "compatible", "concomitant_zero"] {
            report.push(Check::new(name, Verdict::Blocked(msg.clone())));
        }
        return report;
    }
    report.push(Check::timed("poisson", || {
        Verdict::from_witness(schouten_bivector(p, p).expect("same chart").first_nonzero())
    }));
    report.push(Check::timed("nijenhuis", || {
        Verdict::from_witness(nijenhuis_torsion(n).first_nonzero())
    }));
    let defect = compatibility_defect(n, p).expect("same chart");
    let compat_witness = defect.first_nonzero();
    let compatible = compat_witness.is_none();
    report.push(Check::timed("compatible", || Verdict::from_witness(compat_witness)));
    if compatible {
        let start = std::time::Instant::now();
        let c = magri_morosi(p, n).expect("compatibility already checked");
        let elapsed = start.elapsed();
        let mut zero = Check::new("concomitant_zero", Verdict::from_witness(c.first_nonzero()));
        zero.elapsed = elapsed;
        report.push(zero);
        report.push(Check::new("concomitant_skew", Verdict::from_witness(c.skew_defect())).optional());
    } else {
        let blocked = Verdict::Blocked("N·P ≠ P·Nᵀ, so NΠ is not a bivector".into());
        report.push(Check::new("concomitant_zero", blocked.clone()));
        report.push(Check::new("concomitant_skew", blocked).optional());
    }
    report
}
