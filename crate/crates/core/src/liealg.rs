//! Finite-dimensional Lie algebras given by structure constants, and the
//! algebraic (Λ, n) conditions on them.
//!
//! A Lie algebra is treated as a Lie algebroid over a point: the anchor is
//! zero, so the algebroid differential of a constant function vanishes and
//! `(L_X α)(Y) = −α([X,Y])`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::calculus::Bivector;
use crate::expr::{Chart, Poly, Rational};
use crate::report::{Check, StructureReport, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieAlgebraError {
    #[error("structure constants are not antisymmetric: c^{k}_{i}{j} ≠ −c^{k}_{j}{i} (1-based)", k = .k + 1, i = .i + 1, j = .j + 1)]
    NotAntisymmetric { k: usize, i: usize, j: usize },
    #[error("Jacobi identity fails: {0}")]
    JacobiFailure(Witness),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("matrix is not antisymmetric at ({i}, {j})")]
    MatrixNotAntisymmetric { i: usize, j: usize },
    #[error("n·Λ ≠ Λ·nᵀ: {0}")]
    NotCompatible(Witness),
}

pub type Result<T, E = LieAlgebraError> = std::result::Result<T, E>;

pub type RatMatrix = Vec<Vec<Rational>>;

pub(crate) fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub(crate) fn transpose(a: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub(crate) fn identity_matrix(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

fn mat_vec(a: &RatMatrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

fn check_square(m: &RatMatrix, dim: usize) -> Result<()> {
    if m.len() != dim {
        return Err(LieAlgebraError::DimensionMismatch {
            expected: dim,
            found: m.len(),
        });
    }
    for row in m {
        if row.len() != dim {
            return Err(LieAlgebraError::DimensionMismatch {
                expected: dim,
                found: row.len(),
            });
        }
    }
    Ok(())
}

fn basis_label(idx: &[usize]) -> String {
    idx.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join(",")
}

/// Raw table `cᵏᵢⱼ` with `[eᵢ,eⱼ] = Σₖ cᵏᵢⱼ eₖ`; not yet validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    dim: usize,
    data: Vec<Rational>,
}

impl StructureTable {
    pub fn zero(dim: usize) -> Self {
        StructureTable {
            dim,
            data: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Table from `(i, j, k, c)` entries meaning `cᵏᵢⱼ = c` (zero-based),
    /// completed antisymmetrically. Later entries overwrite earlier ones.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut t = Self::zero(dim);
        for (i, j, k, c) in entries {
            for &idx in [i, j, k] {
                if idx >= dim {
                    return Err(LieAlgebraError::IndexOutOfRange(idx));
                }
            }
            if i == j {
                if !c.is_zero() {
                    return Err(LieAlgebraError::NotAntisymmetric { k: *k, i: *i, j: *j });
                }
                continue;
            }
            t.set(*k, *i, *j, c.clone());
            t.set(*k, *j, *i, -c.clone());
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &Rational {
        &self.data[(k * self.dim + i) * self.dim + j]
    }

    /// Sets one entry without completing antisymmetry.
    pub fn set(&mut self, k: usize, i: usize, j: usize, c: Rational) {
        let d = self.dim;
        self.data[(k * d + i) * d + j] = c;
    }

    fn antisymmetry_defect(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    if !(self.get(k, i, j) + self.get(k, j, i)).is_zero() {
                        return Some((k, i, j));
                    }
                }
            }
        }
        None
    }

    /// Jacobi sum `Σₗ (cˡᵢⱼ cᵐₗₖ + cˡⱼₖ cᵐₗᵢ + cˡₖᵢ cᵐₗⱼ)`.
    pub fn jacobi_sum(&self, i: usize, j: usize, k: usize, m: usize) -> Rational {
        (0..self.dim).fold(Rational::zero(), |acc, l| {
            acc + self.get(l, i, j) * self.get(m, l, k)
                + self.get(l, j, k) * self.get(m, l, i)
                + self.get(l, k, i) * self.get(m, l, j)
        })
    }

    fn jacobi_witness(&self) -> Option<Witness> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for m in 0..n {
                        let s = self.jacobi_sum(i, j, k, m);
                        if !s.is_zero() {
                            return Some(Witness {
                                component: format!(
                                    "Jac(e{},e{},e{})^e{}",
                                    i + 1,
                                    j + 1,
                                    k + 1,
                                    m + 1
                                ),
                                indices: vec![i, j, k, m],
                                value: s.to_string(),
                            });
                        }
                    }
                }
            }
        }
        None
    }
}

/// True iff every Jacobi sum vanishes. The table must be antisymmetric.
pub fn jacobi_check(table: &StructureTable) -> Result<bool> {
    if let Some((k, i, j)) = table.antisymmetry_defect() {
        return Err(LieAlgebraError::NotAntisymmetric { k, i, j });
    }
    Ok(table.jacobi_witness().is_none())
}

/// A validated Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    table: StructureTable,
}

impl LieAlgebra {
    pub fn new(table: StructureTable) -> Result<Self> {
        if let Some((k, i, j)) = table.antisymmetry_defect() {
            return Err(LieAlgebraError::NotAntisymmetric { k, i, j });
        }
        if let Some(w) = table.jacobi_witness() {
            return Err(LieAlgebraError::JacobiFailure(w));
        }
        Ok(LieAlgebra { table })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            table: StructureTable::zero(dim),
        }
    }

    /// The Heisenberg algebra `[e1,e2] = e3`.
    pub fn heisenberg() -> Self {
        let t = StructureTable::from_brackets(3, &[(0, 1, 2, Rational::one())]).expect("static table");
        LieAlgebra { table: t }
    }

    pub fn dim(&self) -> usize {
        self.table.dim
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn c(&self, k: usize, i: usize, j: usize) -> &Rational {
        self.table.get(k, i, j)
    }

    pub fn bracket(&self, v: &[Rational], w: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if w[j].is_zero() {
                    continue;
                }
                let vw = &v[i] * &w[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(k, i, j);
                    if !c.is_zero() {
                        *o += &vw * c;
                    }
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<Rational> {
        let mut e = vec![Rational::zero(); self.dim()];
        e[i] = Rational::one();
        e
    }
}

/// `Λ = ½ Σ λ^{ij} eᵢ∧eⱼ` with antisymmetric `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgBivector {
    matrix: RatMatrix,
}

impl AlgBivector {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        let n = matrix.len();
        check_square(&matrix, n)?;
        for i in 0..n {
            for j in i..n {
                if !(&matrix[i][j] + &matrix[j][i]).is_zero() {
                    return Err(LieAlgebraError::MatrixNotAntisymmetric { i, j });
                }
            }
        }
        Ok(AlgBivector { matrix })
    }

    /// `eᵢ∧eⱼ` (zero-based).
    pub fn wedge(dim: usize, i: usize, j: usize) -> Self {
        let mut m = vec![vec![Rational::zero(); dim]; dim];
        m[i][j] = Rational::one();
        m[j][i] = -Rational::one();
        AlgBivector { matrix: m }
    }

    pub fn zero(dim: usize) -> Self {
        AlgBivector {
            matrix: vec![vec![Rational::zero(); dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AlgBivector {
            matrix: self.matrix.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(),
        }
    }

    /// `(Λ♯α)ⁱ = Σⱼ λ^{ji} αⱼ`.
    pub fn sharp(&self, alpha: &[Rational]) -> Vec<Rational> {
        mat_vec(&transpose(&self.matrix), alpha)
    }
}

/// Linear endomorphism `n` with `(n v)ⁱ = Σⱼ nⁱⱼ vʲ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgEndo {
    matrix: RatMatrix,
}

impl AlgEndo {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        check_square(&matrix, matrix.len())?;
        Ok(AlgEndo { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        AlgEndo {
            matrix: identity_matrix(dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        AlgEndo {
            matrix: vec![vec![Rational::zero(); dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.matrix, v)
    }

    /// `n*α = nᵀ α`.
    pub fn apply_dual(&self, alpha: &[Rational]) -> Vec<Rational> {
        mat_vec(&transpose(&self.matrix), alpha)
    }
}

/// Dense rank-3 rational array `data[a][b][c]`; the meaning of the slots is
/// fixed by the producing operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgTensor3 {
    dim: usize,
    symbol: &'static str,
    data: Vec<Rational>,
}

impl AlgTensor3 {
    fn from_fn(dim: usize, symbol: &'static str, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    data.push(f(a, b, c));
                }
            }
        }
        AlgTensor3 { dim, symbol, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.data[(a * self.dim + b) * self.dim + c]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AlgTensor3 {
            dim: self.dim,
            symbol: self.symbol,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn first_nonzero(&self) -> Option<Witness> {
        let n = self.dim;
        (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .find(|&(a, b, c)| !self.get(a, b, c).is_zero())
            .map(|(a, b, c)| Witness {
                component: format!("{}[{}]", self.symbol, basis_label(&[a, b, c])),
                indices: vec![a, b, c],
                value: self.get(a, b, c).to_string(),
            })
    }
}

fn ensure_dim(g: &LieAlgebra, found: usize) -> Result<()> {
    if g.dim() == found {
        Ok(())
    } else {
        Err(LieAlgebraError::DimensionMismatch {
            expected: g.dim(),
            found,
        })
    }
}

/// Linear Poisson structure `Π^{ij}(x) = Σₖ cᵏᵢⱼ xₖ` on a fresh chart `x1..xn`.
pub fn lie_poisson_bivector(g: &LieAlgebra) -> Bivector {
    lie_poisson_from_table(g.table())
}

/// Same as [`lie_poisson_bivector`] for a table that may fail Jacobi.
pub fn lie_poisson_from_table(t: &StructureTable) -> Bivector {
    let chart = Chart::numbered("x", t.dim()).expect("dimension ≥ 1");
    Bivector::from_fn(&chart, |i, j| {
        (0..t.dim()).fold(Poly::zero(&chart), |acc, k| {
            acc + Poly::var(&chart, k).scale(t.get(k, i, j))
        })
    })
}

/// `[Λ,Λ]^{ijk} = Σ_{l,m} λ^{il} λ^{jm} cᵏₗₘ + cyclic permutations of (i,j,k)`.
pub fn alg_schouten(g: &LieAlgebra, lambda: &AlgBivector) -> Result<AlgTensor3> {
    ensure_dim(g, lambda.dim())?;
    let n = g.dim();
    let l = &lambda.matrix;
    let term = |i: usize, j: usize, k: usize| -> Rational {
        let mut acc = Rational::zero();
        for a in 0..n {
            if l[i][a].is_zero() {
                continue;
            }
            for b in 0..n {
                if l[j][b].is_zero() {
                    continue;
                }
                acc += &l[i][a] * &l[j][b] * g.c(k, a, b);
            }
        }
        acc
    };
    Ok(AlgTensor3::from_fn(n, "[L,L]", |i, j, k| {
        term(i, j, k) + term(j, k, i) + term(k, i, j)
    }))
}

/// `τn(eᵢ,eⱼ) = [neᵢ,neⱼ] − n[neᵢ,eⱼ] − n[eᵢ,neⱼ] + n²[eᵢ,eⱼ]`, stored as `data[k][i][j]`.
pub fn alg_torsion(g: &LieAlgebra, n: &AlgEndo) -> Result<AlgTensor3> {
    ensure_dim(g, n.dim())?;
    let dim = g.dim();
    let values: Vec<Vec<Vec<Rational>>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let (ei, ej) = (g.basis(i), g.basis(j));
                    let (nei, nej) = (n.apply(&ei), n.apply(&ej));
                    let t1 = g.bracket(&nei, &nej);
                    let t2 = n.apply(&g.bracket(&nei, &ej));
                    let t3 = n.apply(&g.bracket(&ei, &nej));
                    let t4 = n.apply(&n.apply(&g.bracket(&ei, &ej)));
                    (0..dim).map(|k| &t1[k] - &t2[k] - &t3[k] + &t4[k]).collect()
                })
                .collect()
        })
        .collect();
    Ok(AlgTensor3::from_fn(dim, "tau_n", |k, i, j| values[i][j][k].clone()))
}

/// `n·Λ − Λ·nᵀ`; symmetric.
pub fn alg_compatibility_defect(lambda: &AlgBivector, n: &AlgEndo) -> RatMatrix {
    let a = mat_mul(&n.matrix, &lambda.matrix);
    let b = mat_mul(&lambda.matrix, &transpose(&n.matrix));
    a.iter()
        .zip(&b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

fn compat_witness(lambda: &AlgBivector, n: &AlgEndo) -> Option<Witness> {
    let d = alg_compatibility_defect(lambda, n);
    let dim = d.len();
    (0..dim)
        .flat_map(|i| (i..dim).map(move |j| (i, j)))
        .find(|&(i, j)| !d[i][j].is_zero())
        .map(|(i, j)| Witness {
            component: format!("(nL-Ln^T)[{}]", basis_label(&[i, j])),
            indices: vec![i, j],
            value: d[i][j].to_string(),
        })
}

/// `(L_X β)_m = −Σ β_k X^p cᵏ_{pm}`.
fn lie_derivative_point(g: &LieAlgebra, x: &[Rational], beta: &[Rational]) -> Vec<Rational> {
    let n = g.dim();
    (0..n)
        .map(|m| {
            let mut acc = Rational::zero();
            for (p, xp) in x.iter().enumerate() {
                if xp.is_zero() {
                    continue;
                }
                for (k, bk) in beta.iter().enumerate() {
                    if !bk.is_zero() {
                        acc -= bk * xp * g.c(k, p, m);
                    }
                }
            }
            acc
        })
        .collect()
}

/// `[α,β]_Λ = L_{Λ♯α}β − L_{Λ♯β}α` over a point.
pub fn alg_oneform_bracket(g: &LieAlgebra, lambda: &AlgBivector, alpha: &[Rational], beta: &[Rational]) -> Vec<Rational> {
    let a = lie_derivative_point(g, &lambda.sharp(alpha), beta);
    let b = lie_derivative_point(g, &lambda.sharp(beta), alpha);
    a.iter().zip(&b).map(|(x, y)| x - y).collect()
}

/// Algebraic concomitant `C(Λ,n)(εⁱ,εʲ) = Σₖ Cᵢⱼᵏ εᵏ`, stored as `data[i][j][k]`.
pub fn alg_concomitant(g: &LieAlgebra, lambda: &AlgBivector, n: &AlgEndo) -> Result<AlgTensor3> {
    ensure_dim(g, lambda.dim())?;
    ensure_dim(g, n.dim())?;
    if let Some(w) = compat_witness(lambda, n) {
        return Err(LieAlgebraError::NotCompatible(w));
    }
    let dim = g.dim();
    let n_lambda = AlgBivector {
        matrix: mat_mul(&n.matrix, &lambda.matrix),
    };
    let values: Vec<Vec<Vec<Rational>>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let (a, b) = (g.basis(i), g.basis(j));
                    let lhs = alg_oneform_bracket(g, &n_lambda, &a, &b);
                    let t1 = alg_oneform_bracket(g, lambda, &n.apply_dual(&a), &b);
                    let t2 = alg_oneform_bracket(g, lambda, &a, &n.apply_dual(&b));
                    let t3 = n.apply_dual(&alg_oneform_bracket(g, lambda, &a, &b));
                    (0..dim).map(|k| &lhs[k] - (&t1[k] + &t2[k] - &t3[k])).collect()
                })
                .collect()
        })
        .collect();
    Ok(AlgTensor3::from_fn(dim, "C", |i, j, k| values[i][j][k].clone()))
}

pub(crate) const ITEM_COUNT_NOTE: &str =
    "the (Λ, n) conditions checked are exactly four: Schouten, Nijenhuis, compatibility, concomitant";

/// The four algebraic (Λ, n) conditions, named like the manifold checks of
/// [`crate::calculus::pn_verify`].
pub fn lambda_n_verify(g: &LieAlgebra, lambda: &AlgBivector, n: &AlgEndo) -> StructureReport {
    let mut report = StructureReport::default();
    report.note(ITEM_COUNT_NOTE);
    let dims_ok = lambda.dim() == g.dim() && n.dim() == g.dim();
    if !dims_ok {
        let msg = format!(
            "algebra has dimension {}, Λ {}, n {}",
            g.dim(),
            lambda.dim(),
            n.dim()
        );
        for name in ["poisson", "nijenhuis", "compatible", "concomitant_zero"] {
            report.push(Check::new(name, Verdict::Blocked(msg.clone())));
        }
        return report;
    }
    report.push(Check::timed("poisson", || {
        Verdict::from_witness(alg_schouten(g, lambda).expect("dims checked").first_nonzero())
    }));
    report.push(Check::timed("nijenhuis", || {
        Verdict::from_witness(alg_torsion(g, n).expect("dims checked").first_nonzero())
    }));
    let cw = compat_witness(lambda, n);
    let compatible = cw.is_none();
    report.push(Check::timed("compatible", || Verdict::from_witness(cw)));
    if compatible {
        report.push(Check::timed("concomitant_zero", || {
            Verdict::from_witness(alg_concomitant(g, lambda, n).expect("compatible").first_nonzero())
        }));
    } else {
        report.push(Check::new(
            "concomitant_zero",
            Verdict::Blocked("n·Λ ≠ Λ·nᵀ, so nΛ is not a bivector".into()),
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{schouten_bivector, Tensor};
    use crate::expr::{int, rat};

    /// Brute-force oracle: expands every Jacobi sum from the raw definition
    /// `[[eᵢ,eⱼ],eₖ] + [[eⱼ,eₖ],eᵢ] + [[eₖ,eᵢ],eⱼ]` using vector brackets.
    fn brute_jacobi(t: &StructureTable) -> bool {
        let n = t.dim();
        let br = |v: &[Rational], w: &[Rational]| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); n];
            for i in 0..n {
                for j in 0..n {
                    for (k, o) in out.iter_mut().enumerate() {
                        *o += &v[i] * &w[j] * t.get(k, i, j);
                    }
                }
            }
            out
        };
        let e = |i: usize| -> Vec<Rational> {
            (0..n).map(|k| if k == i { int(1) } else { int(0) }).collect()
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = br(&br(&e(i), &e(j)), &e(k));
                    let b = br(&br(&e(j), &e(k)), &e(i));
                    let c = br(&br(&e(k), &e(i)), &e(j));
                    if (0..n).any(|m| !(&a[m] + &b[m] + &c[m]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn jacobi_examples() {
        assert!(jacobi_check(&StructureTable::zero(4)).unwrap());
        let h = StructureTable::from_brackets(3, &[(0, 1, 2, int(1))]).unwrap();
        assert!(brute_jacobi(&h));
        assert!(jacobi_check(&h).unwrap());
        // c¹₁₂ = c²₂₃ = c³₃₁ = 1: [e1,e2] = e1, [e2,e3] = e2, [e3,e1] = e3.
        let t = StructureTable::from_brackets(
            3,
            &[(0, 1, 0, int(1)), (1, 2, 1, int(1)), (2, 0, 2, int(1))],
        )
        .unwrap();
        let verdict = jacobi_check(&t).unwrap();
        assert_eq!(verdict, brute_jacobi(&t));
        assert!(!verdict);
        assert!(matches!(LieAlgebra::new(t), Err(LieAlgebraError::JacobiFailure(_))));
    }

    #[test]
    fn non_antisymmetric_table_is_rejected() {
        let mut t = StructureTable::zero(2);
        t.set(0, 0, 1, int(1));
        assert_eq!(
            jacobi_check(&t),
            Err(LieAlgebraError::NotAntisymmetric { k: 0, i: 0, j: 1 })
        );
    }

    #[test]
    fn lie_poisson_examples() {
        let ab = lie_poisson_bivector(&LieAlgebra::abelian(3));
        assert!(ab.is_zero());
        let h = lie_poisson_bivector(&LieAlgebra::heisenberg());
        assert_eq!(h.get(0, 1), Poly::var(h.chart(), 2));
        assert!(h.get(0, 2).is_zero() && h.get(1, 2).is_zero());
        assert!(schouten_bivector(&h, &h).unwrap().is_zero());
        // so(3): [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
        let so3 = LieAlgebra::new(
            StructureTable::from_brackets(3, &[(0, 1, 2, int(1)), (1, 2, 0, int(1)), (2, 0, 1, int(1))]).unwrap(),
        )
        .unwrap();
        let p = lie_poisson_bivector(&so3);
        assert!(!p.is_zero());
        assert!(schouten_bivector(&p, &p).unwrap().is_zero());
    }

    /// Oracle for `alg_schouten`: expand on every (unsorted) basis triple
    /// straight from the defining sum.
    fn brute_schouten(g: &LieAlgebra, l: &AlgBivector, i: usize, j: usize, k: usize) -> Rational {
        let n = g.dim();
        let m = l.matrix();
        let mut acc = Rational::zero();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for p in 0..n {
                for q in 0..n {
                    acc += &m[a][p] * &m[b][q] * g.c(c, p, q);
                }
            }
        }
        acc
    }

    #[test]
    fn alg_schouten_examples() {
        let ab = LieAlgebra::abelian(3);
        let l = AlgBivector::new(vec![
            vec![int(0), int(2), rat(1, 3)],
            vec![int(-2), int(0), int(5)],
            vec![rat(-1, 3), int(-5), int(0)],
        ])
        .unwrap();
        assert!(alg_schouten(&ab, &l).unwrap().is_zero());
        let h = LieAlgebra::heisenberg();
        assert!(alg_schouten(&h, &AlgBivector::wedge(3, 0, 2)).unwrap().is_zero());
        let s = alg_schouten(&h, &AlgBivector::wedge(3, 0, 1)).unwrap();
        assert!(!s.is_zero());
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let l12 = AlgBivector::wedge(3, 0, 1);
                    assert_eq!(s.get(i, j, k), &brute_schouten(&h, &l12, i, j, k));
                }
            }
        }
        assert!(!s.get(0, 1, 2).is_zero());
    }

    #[test]
    fn alg_schouten_is_totally_antisymmetric_and_quadratic() {
        let h = LieAlgebra::heisenberg();
        let l = AlgBivector::new(vec![
            vec![int(0), int(3), int(-1)],
            vec![int(-3), int(0), rat(2, 7)],
            vec![int(1), rat(-2, 7), int(0)],
        ])
        .unwrap();
        let s = alg_schouten(&h, &l).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(s.get(i, j, k), &-s.get(j, i, k).clone());
                    assert_eq!(s.get(i, j, k), &-s.get(i, k, j).clone());
                }
            }
        }
        let c = rat(-5, 2);
        assert_eq!(alg_schouten(&h, &l.scale(&c)).unwrap(), s.scale(&(&c * &c)));
    }

    #[test]
    fn alg_torsion_examples() {
        let h = LieAlgebra::heisenberg();
        assert!(alg_torsion(&h, &AlgEndo::identity(3)).unwrap().is_zero());
        assert!(alg_torsion(&h, &AlgEndo::zero(3)).unwrap().is_zero());
        // n(e1) = e2, n(e2) = n(e3) = 0: columns of the matrix are images.
        let mut m = vec![vec![int(0); 3]; 3];
        m[1][0] = int(1);
        let n = AlgEndo::new(m).unwrap();
        let t = alg_torsion(&h, &n).unwrap();
        // τ(e1,e2) = [e2,0] − n[e2,e2] − n[e1,0] + n²[e1,e2] = n²e3 = 0;
        // τ(e1,e3) = [e2,0] − n[e2,e3] − 0 + n²[e1,e3] = 0; τ(e2,e3) = 0.
        assert!(t.is_zero());
        // n(e1) = e1, n(e2) = 0: τ(e1,e2) = [e1,0] − n[e1,e2] − 0 + n²e3 = 0.
        // n = e3⊗e1* (n(e1) = e3): τ(e1,e2) = [e3,0] − n[e3,e2] − n[e1,0] + n²e3 = 0.
        // A non-Nijenhuis example: n(e1) = e1, n(e2) = e2, n(e3) = 0.
        let n = AlgEndo::new(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(0)],
        ])
        .unwrap();
        // τ(e1,e2) = [e1,e2] − n[e1,e2] − n[e1,e2] + n²[e1,e2] = e3 − 0 − 0 + 0 = e3
        let t = alg_torsion(&h, &n).unwrap();
        assert_eq!(t.get(2, 0, 1), &int(1));
        assert_eq!(t.get(2, 1, 0), &int(-1));
    }

    #[test]
    fn alg_concomitant_examples() {
        let ab = LieAlgebra::abelian(3);
        let l = AlgBivector::wedge(3, 0, 1);
        let n = AlgEndo::new(vec![
            vec![int(2), int(0), int(0)],
            vec![int(0), int(2), int(0)],
            vec![int(0), int(0), int(7)],
        ])
        .unwrap();
        assert!(alg_compatibility_defect(&l, &n).iter().flatten().all(Zero::is_zero));
        assert!(alg_concomitant(&ab, &l, &n).unwrap().is_zero());
        let h = LieAlgebra::heisenberg();
        let l13 = AlgBivector::wedge(3, 0, 2);
        assert!(alg_concomitant(&h, &l13, &AlgEndo::identity(3)).unwrap().is_zero());
        let bad = AlgEndo::new(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(2), int(0)],
            vec![int(0), int(0), int(3)],
        ])
        .unwrap();
        assert!(matches!(alg_concomitant(&h, &l13, &bad), Err(LieAlgebraError::NotCompatible(_))));
    }

    #[test]
    fn lambda_n_verify_examples() {
        let ab = LieAlgebra::abelian(2);
        assert!(lambda_n_verify(&ab, &AlgBivector::wedge(2, 0, 1), &AlgEndo::identity(2)).passed());
        let h = LieAlgebra::heisenberg();
        let r = lambda_n_verify(&h, &AlgBivector::wedge(3, 0, 1), &AlgEndo::identity(3));
        assert!(!r.passed());
        let w = r.verdict("poisson").unwrap().witness().unwrap();
        assert!(!w.value.is_empty() && w.value != "0");
        let r = lambda_n_verify(&h, &AlgBivector::wedge(3, 0, 2), &AlgEndo::identity(3));
        assert!(r.passed());
        assert!(!r.notes.is_empty());
    }
}
