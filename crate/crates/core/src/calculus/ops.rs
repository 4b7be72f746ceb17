use crate::expr::{rat, Poly};

use super::tensors::{Bivector, EndoField, OneForm, TorsionTensor, Trivector, VectorField};
use super::{CalculusError, Result};

fn same_chart(a: &crate::expr::Chart, b: &crate::expr::Chart) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(CalculusError::ChartMismatch)
    }
}

/// `[X,Y]ᵏ = Σᵢ (Xⁱ ∂ᵢYᵏ − Yⁱ ∂ᵢXᵏ)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    same_chart(x.chart(), y.chart())?;
    Ok(bracket(x, y))
}

fn bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let comps = (0..x.chart().dim())
        .map(|k| x.apply(y.component(k)) - y.apply(x.component(k)))
        .collect();
    VectorField::new(x.chart(), comps).expect("same shape")
}

/// `τN(X,Y) = [NX,NY] − N[NX,Y] − N[X,NY] + N²[X,Y]` evaluated on arbitrary fields.
pub fn torsion_on_fields(n: &EndoField, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    same_chart(n.chart(), x.chart())?;
    same_chart(n.chart(), y.chart())?;
    let nx = n.apply(x);
    let ny = n.apply(y);
    let t1 = bracket(&nx, &ny);
    let t2 = n.apply(&bracket(&nx, y));
    let t3 = n.apply(&bracket(x, &ny));
    let t4 = n.apply(&n.apply(&bracket(x, y)));
    Ok(t1.sub(&t2).sub(&t3).add(&t4))
}

/// Components of the Nijenhuis torsion on coordinate fields.
pub fn nijenhuis_torsion(n: &EndoField) -> TorsionTensor {
    let chart = n.chart();
    TorsionTensor::from_fn(chart, |i, j| {
        torsion_on_fields(
            n,
            &VectorField::coordinate(chart, i),
            &VectorField::coordinate(chart, j),
        )
        .expect("same chart")
    })
}

/// `[X,Y]_N = [NX,Y] + [X,NY] − N[X,Y]`.
pub fn deformed_bracket(n: &EndoField, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    same_chart(n.chart(), x.chart())?;
    same_chart(n.chart(), y.chart())?;
    let a = bracket(&n.apply(x), y);
    let b = bracket(x, &n.apply(y));
    let c = n.apply(&bracket(x, y));
    Ok(a.add(&b).sub(&c))
}

/// Schouten–Nijenhuis bracket of two bivectors (see the module docs for the normalization).
pub fn schouten_bivector(p: &Bivector, q: &Bivector) -> Result<Trivector> {
    same_chart(p.chart(), q.chart())?;
    let chart = p.chart();
    let n = chart.dim();
    // d[l][a][b] = ∂ₗ Q^{ab}, and likewise for P; computed once.
    let dq: Vec<Vec<Vec<Poly>>> = (0..n)
        .map(|l| (0..n).map(|a| (0..n).map(|b| q.get(a, b).derivative(l)).collect()).collect())
        .collect();
    let dp: Vec<Vec<Vec<Poly>>> = (0..n)
        .map(|l| (0..n).map(|a| (0..n).map(|b| p.get(a, b).derivative(l)).collect()).collect())
        .collect();
    let pm = p.to_matrix();
    let qm = q.to_matrix();
    let one_half = rat(1, 2);
    let half = |a: usize, b: usize, c: usize| -> Poly {
        let mut acc = Poly::zero(chart);
        for l in 0..n {
            if !pm[a][l].is_zero() && !dq[l][b][c].is_zero() {
                acc = acc + &pm[a][l] * &dq[l][b][c];
            }
            if !qm[a][l].is_zero() && !dp[l][b][c].is_zero() {
                acc = acc + &qm[a][l] * &dp[l][b][c];
            }
        }
        acc
    };
    Ok(Trivector::from_fn(chart, |i, j, k| {
        (half(i, j, k) + half(j, k, i) + half(k, i, j)).scale(&one_half)
    }))
}

/// `(Π♯α)ⁱ = Σⱼ Πʲⁱ αⱼ`.
pub fn sharp(p: &Bivector, alpha: &OneForm) -> Result<VectorField> {
    same_chart(p.chart(), alpha.chart())?;
    let chart = p.chart();
    let n = chart.dim();
    let comps = (0..n)
        .map(|i| {
            (0..n).fold(Poly::zero(chart), |acc, j| {
                let a = alpha.component(j);
                if a.is_zero() {
                    acc
                } else {
                    acc + p.get(j, i) * a
                }
            })
        })
        .collect();
    VectorField::new(chart, comps)
}

/// `df = Σ ∂ᵢf dxⁱ`.
pub fn d_function(f: &Poly) -> OneForm {
    let chart = f.chart();
    OneForm::new(chart, (0..chart.dim()).map(|i| f.derivative(i)).collect()).expect("same shape")
}

/// `(L_X α)ᵢ = Σⱼ (Xʲ ∂ⱼαᵢ + αⱼ ∂ᵢXʲ)`.
pub fn lie_derivative_oneform(x: &VectorField, alpha: &OneForm) -> Result<OneForm> {
    same_chart(x.chart(), alpha.chart())?;
    Ok(lie_derivative(x, alpha))
}

fn lie_derivative(x: &VectorField, alpha: &OneForm) -> OneForm {
    let chart = x.chart();
    let n = chart.dim();
    let comps = (0..n)
        .map(|i| {
            let mut acc = x.apply(alpha.component(i));
            for j in 0..n {
                let a = alpha.component(j);
                if !a.is_zero() {
                    acc = acc + a * &x.component(j).derivative(i);
                }
            }
            acc
        })
        .collect();
    OneForm::new(chart, comps).expect("same shape")
}

/// `[α,β]_Π = L_{Π♯α}β − L_{Π♯β}α − d(Π(α,β))`.
pub fn oneform_bracket(p: &Bivector, alpha: &OneForm, beta: &OneForm) -> Result<OneForm> {
    same_chart(p.chart(), alpha.chart())?;
    same_chart(p.chart(), beta.chart())?;
    let pa = sharp(p, alpha)?;
    let pb = sharp(p, beta)?;
    Ok(lie_derivative(&pa, beta)
        .sub(&lie_derivative(&pb, alpha))
        .sub(&d_function(&p.contract(alpha, beta))))
}
