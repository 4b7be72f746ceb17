//! Numeric cross-validation of the symbolic operators.
//!
//! Inputs are evaluated exactly at seeded rational points; derivatives are
//! taken by central differences with two rounds of Richardson extrapolation
//! (steps `h`, `h/2`, `h/4`), all in exact rational arithmetic. None of the
//! recipes below touches [`Poly::derivative`] or the calculus operators, so a
//! bug in the symbolic code cannot confirm itself.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::calculus::{Bivector, EndoField, OneForm, Tensor, VectorField};
use crate::expr::{int, rat, Chart, Poly, Rational};

/// Sample points are drawn on this grid inside the coordinate range.
const GRID: i64 = 1000;
const LEVELS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("count must be at least 1")]
    EmptyCount,
    #[error("fd_step must lie in (0, 1), got {0}")]
    Step(Rational),
    #[error("tolerance must be positive, got {0}")]
    Tolerance(Rational),
    #[error("coordinate range [{0}, {1}] is empty")]
    Range(Rational, Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePlan {
    pub seed: u64,
    pub count: usize,
    pub range: (Rational, Rational),
    pub fd_step: Rational,
    pub tolerance: Rational,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            seed: 42,
            count: 20,
            range: (int(-5), int(5)),
            fd_step: rat(1, 10_000),
            tolerance: rat(1, 1_000_000),
        }
    }
}

impl SamplePlan {
    pub fn new(
        seed: u64,
        count: usize,
        range: (Rational, Rational),
        fd_step: Rational,
        tolerance: Rational,
    ) -> Result<Self, PlanError> {
        let plan = SamplePlan {
            seed,
            count,
            range,
            fd_step,
            tolerance,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn with_seed(seed: u64) -> Self {
        SamplePlan {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), PlanError> {
        if self.count == 0 {
            return Err(PlanError::EmptyCount);
        }
        if !self.fd_step.is_positive() || self.fd_step >= Rational::one() {
            return Err(PlanError::Step(self.fd_step.clone()));
        }
        if !self.tolerance.is_positive() {
            return Err(PlanError::Tolerance(self.tolerance.clone()));
        }
        let (lo, hi) = self.grid_bounds();
        if lo > hi {
            return Err(PlanError::Range(self.range.0.clone(), self.range.1.clone()));
        }
        Ok(())
    }

    fn grid_bounds(&self) -> (i64, i64) {
        let g = int(GRID);
        let lo = (&self.range.0 * &g).ceil().to_integer();
        let hi = (&self.range.1 * &g).floor().to_integer();
        (lo.to_i64().unwrap_or(i64::MIN / 2), hi.to_i64().unwrap_or(i64::MAX / 2))
    }

    /// `count` points in `range^dim`, identical for identical seeds.
    pub fn points(&self, dim: usize) -> Vec<Vec<Rational>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let (lo, hi) = self.grid_bounds();
        (0..self.count)
            .map(|_| (0..dim).map(|_| rat(rng.gen_range(lo..=hi), GRID)).collect())
            .collect()
    }
}

/// Result of comparing a symbolic tensor with a numeric recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub max_deviation: Rational,
    /// Point at which `max_deviation` was attained; empty when no sample deviates.
    pub worst_point: Vec<Rational>,
    /// Index into `labeled_components` of the worst component.
    pub worst_component: Option<usize>,
    pub samples: usize,
    pub tolerance: Rational,
}

impl CheckOutcome {
    pub fn max_deviation_f64(&self) -> f64 {
        self.max_deviation.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Values of some input data at a point and at the finite-difference probes
/// `x ± (h/2ˢ)·e_l`, `s < 3`.
pub struct Jet<D> {
    h: Rational,
    center: D,
    probes: Vec<Vec<(D, D)>>,
}

impl<D> Jet<D> {
    pub fn sample(point: &[Rational], h: &Rational, data: impl Fn(&[Rational]) -> D) -> Self {
        let mut probes = Vec::with_capacity(point.len());
        for l in 0..point.len() {
            let mut levels = Vec::with_capacity(LEVELS);
            let mut step = h.clone();
            for _ in 0..LEVELS {
                let mut plus = point.to_vec();
                let mut minus = point.to_vec();
                plus[l] += &step;
                minus[l] -= &step;
                levels.push((data(&plus), data(&minus)));
                step /= int(2);
            }
            probes.push(levels);
        }
        Jet {
            h: h.clone(),
            center: data(point),
            probes,
        }
    }

    pub fn center(&self) -> &D {
        &self.center
    }

    pub fn dim(&self) -> usize {
        self.probes.len()
    }

    /// `∂_l g` at the center, by extrapolated central differences.
    pub fn partial(&self, l: usize, g: impl Fn(&D) -> Vec<Rational>) -> Vec<Rational> {
        let mut step = self.h.clone();
        let mut d: Vec<Vec<Rational>> = Vec::with_capacity(LEVELS);
        for (plus, minus) in &self.probes[l] {
            let two_h = &step * int(2);
            d.push(g(plus).iter().zip(g(minus)).map(|(a, b)| (a - b) / &two_h).collect());
            step /= int(2);
        }
        let r1: Vec<Vec<Rational>> = (0..LEVELS - 1)
            .map(|s| d[s].iter().zip(&d[s + 1]).map(|(a, b)| (b * int(4) - a) / int(3)).collect())
            .collect();
        r1[0].iter().zip(&r1[1]).map(|(a, b)| (b * int(16) - a) / int(15)).collect()
    }

    /// `jac[l][i] = ∂_l gᵢ`.
    pub fn jacobian(&self, g: impl Fn(&D) -> Vec<Rational>) -> Vec<Vec<Rational>> {
        (0..self.dim()).map(|l| self.partial(l, &g)).collect()
    }

    pub fn gradient(&self, g: impl Fn(&D) -> Rational) -> Vec<Rational> {
        (0..self.dim()).map(|l| self.partial(l, |d| vec![g(d)])[0].clone()).collect()
    }
}

type Mat = Vec<Vec<Rational>>;

fn eval_vec(polys: &[Poly], pt: &[Rational]) -> Vec<Rational> {
    polys.iter().map(|p| p.evaluate(pt).expect("point matches chart")).collect()
}

fn eval_bivector(p: &Bivector, pt: &[Rational]) -> Mat {
    let n = p.dim();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (idx, c) in p.labeled_components() {
        let v = c.evaluate(pt).expect("point matches chart");
        m[idx[1]][idx[0]] = -v.clone();
        m[idx[0]][idx[1]] = v;
    }
    m
}

fn eval_endo(n: &EndoField, pt: &[Rational]) -> Mat {
    n.matrix().iter().map(|row| eval_vec(row, pt)).collect()
}

fn mat_vec(m: &Mat, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

fn mat_t_vec(m: &Mat, v: &[Rational]) -> Vec<Rational> {
    let n = m.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| m.iter().zip(v).fold(Rational::zero(), |acc, (row, b)| acc + &row[j] * b))
        .collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(Rational::zero(), |acc, (x, r)| acc + x * &r[j]))
                .collect()
        })
        .collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
}

fn flatten(m: &Mat) -> Vec<Rational> {
    m.iter().flatten().cloned().collect()
}

/// `[X,Y]ᵏ = Σ_l (Xˡ ∂_l Yᵏ − Yˡ ∂_l Xᵏ)` at the jet center.
fn bracket_at<D>(jet: &Jet<D>, x: impl Fn(&D) -> Vec<Rational>, y: impl Fn(&D) -> Vec<Rational>) -> Vec<Rational> {
    let (xv, yv) = (x(jet.center()), y(jet.center()));
    let (jx, jy) = (jet.jacobian(&x), jet.jacobian(&y));
    (0..xv.len())
        .map(|k| {
            (0..jet.dim()).fold(Rational::zero(), |acc, l| acc + &xv[l] * &jy[l][k] - &yv[l] * &jx[l][k])
        })
        .collect()
}

/// `L_X α = i_X dα + d(α(X))`.
fn lie_derivative_at<D>(
    jet: &Jet<D>,
    x: impl Fn(&D) -> Vec<Rational>,
    alpha: impl Fn(&D) -> Vec<Rational>,
) -> Vec<Rational> {
    let xv = x(jet.center());
    let ja = jet.jacobian(&alpha);
    let grad = jet.gradient(|d| dot(&alpha(d), &x(d)));
    (0..jet.dim())
        .map(|i| {
            let contraction = (0..jet.dim()).fold(Rational::zero(), |acc, j| {
                acc + &xv[j] * (&ja[j][i] - &ja[i][j])
            });
            contraction + &grad[i]
        })
        .collect()
}

/// `[α,β]_Π = L_{Π♯α}β − L_{Π♯β}α − d(Π(α,β))` with `(Π♯α)ⁱ = Σⱼ Πʲⁱ αⱼ`.
fn oneform_bracket_at<D>(
    jet: &Jet<D>,
    p: impl Fn(&D) -> Mat,
    alpha: impl Fn(&D) -> Vec<Rational>,
    beta: impl Fn(&D) -> Vec<Rational>,
) -> Vec<Rational> {
    let sharp_a = |d: &D| mat_t_vec(&p(d), &alpha(d));
    let sharp_b = |d: &D| mat_t_vec(&p(d), &beta(d));
    let la = lie_derivative_at(jet, sharp_a, &beta);
    let lb = lie_derivative_at(jet, sharp_b, &alpha);
    let grad = jet.gradient(|d| dot(&beta(d), &mat_t_vec(&p(d), &alpha(d))));
    sub(&sub(&la, &lb), &grad)
}

fn torsion_at<D>(
    jet: &Jet<D>,
    n: impl Fn(&D) -> Mat,
    x: impl Fn(&D) -> Vec<Rational>,
    y: impl Fn(&D) -> Vec<Rational>,
) -> Vec<Rational> {
    let nx = |d: &D| mat_vec(&n(d), &x(d));
    let ny = |d: &D| mat_vec(&n(d), &y(d));
    let nm = n(jet.center());
    let t1 = bracket_at(jet, nx, ny);
    let t2 = mat_vec(&nm, &bracket_at(jet, nx, &y));
    let t3 = mat_vec(&nm, &bracket_at(jet, &x, ny));
    let t4 = mat_vec(&nm, &mat_vec(&nm, &bracket_at(jet, &x, &y)));
    add(&sub(&sub(&t1, &t2), &t3), &t4)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Numeric value of a tensor at a point, components in `labeled_components` order.
pub type Recipe<'a> = Box<dyn Fn(&[Rational]) -> Vec<Rational> + 'a>;

/// Finite-difference value of `[X,Y]` at `point`.
pub fn fd_lie_bracket(x: &VectorField, y: &VectorField, point: &[Rational], plan: &SamplePlan) -> Vec<Rational> {
    let jet = Jet::sample(point, &plan.fd_step, |pt| (eval_vec(x.comps(), pt), eval_vec(y.comps(), pt)));
    bracket_at(&jet, |d| d.0.clone(), |d| d.1.clone())
}

pub fn recipe_lie_bracket<'a>(x: &'a VectorField, y: &'a VectorField, plan: &'a SamplePlan) -> Recipe<'a> {
    Box::new(move |pt| fd_lie_bracket(x, y, pt, plan))
}

pub fn recipe_torsion_on_fields<'a>(
    n: &'a EndoField,
    x: &'a VectorField,
    y: &'a VectorField,
    plan: &'a SamplePlan,
) -> Recipe<'a> {
    Box::new(move |pt| {
        let jet = Jet::sample(pt, &plan.fd_step, |q| {
            (eval_endo(n, q), eval_vec(x.comps(), q), eval_vec(y.comps(), q))
        });
        torsion_at(&jet, |d| d.0.clone(), |d| d.1.clone(), |d| d.2.clone())
    })
}

/// Torsion on coordinate fields, ordered `(k, i<j)`.
pub fn recipe_nijenhuis_torsion<'a>(n: &'a EndoField, plan: &'a SamplePlan) -> Recipe<'a> {
    Box::new(move |pt| {
        let dim = pt.len();
        let jet = Jet::sample(pt, &plan.fd_step, |q| eval_endo(n, q));
        let per_pair: Vec<Vec<Rational>> = pairs(dim)
            .map(|(i, j)| torsion_at(&jet, Mat::clone, |_| unit(dim, i), |_| unit(dim, j)))
            .collect();
        (0..dim).flat_map(|k| per_pair.iter().map(move |v| v[k].clone())).collect()
    })
}

pub fn recipe_deformed_bracket<'a>(
    n: &'a EndoField,
    x: &'a VectorField,
    y: &'a VectorField,
    plan: &'a SamplePlan,
) -> Recipe<'a> {
    Box::new(move |pt| {
        let jet = Jet::sample(pt, &plan.fd_step, |q| {
            (eval_endo(n, q), eval_vec(x.comps(), q), eval_vec(y.comps(), q))
        });
        let nm = &jet.center().0;
        let a = bracket_at(&jet, |d| mat_vec(&d.0, &d.1), |d| d.2.clone());
        let b = bracket_at(&jet, |d| d.1.clone(), |d| mat_vec(&d.0, &d.2));
        let c = mat_vec(nm, &bracket_at(&jet, |d| d.1.clone(), |d| d.2.clone()));
        sub(&add(&a, &b), &c)
    })
}

/// `[P,Q]^{ijk} = ½ Σₗ ↻(Pⁱˡ ∂ₗQʲᵏ + Qⁱˡ ∂ₗPʲᵏ)` on `i<j<k`.
pub fn recipe_schouten<'a>(p: &'a Bivector, q: &'a Bivector, plan: &'a SamplePlan) -> Recipe<'a> {
    Box::new(move |pt| {
        let n = pt.len();
        let jet = Jet::sample(pt, &plan.fd_step, |x| (eval_bivector(p, x), eval_bivector(q, x)));
        let (pm, qm) = jet.center();
        let dp = jet.jacobian(|d| flatten(&d.0));
        let dq = jet.jacobian(|d| flatten(&d.1));
        let half = |a: usize, b: usize, c: usize| {
            (0..n).fold(Rational::zero(), |acc, l| {
                acc + &pm[a][l] * &dq[l][b * n + c] + &qm[a][l] * &dp[l][b * n + c]
            })
        };
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    out.push((half(i, j, k) + half(j, k, i) + half(k, i, j)) / int(2));
                }
            }
        }
        out
    })
}

/// `Π♯α`; no differencing involved.
pub fn recipe_sharp<'a>(p: &'a Bivector, alpha: &'a OneForm) -> Recipe<'a> {
    Box::new(move |pt| mat_t_vec(&eval_bivector(p, pt), &eval_vec(alpha.comps(), pt)))
}

pub fn recipe_d_function<'a>(f: &'a Poly, plan: &'a SamplePlan) -> Recipe<'a> {
    Box::new(move |pt| {
        let jet = Jet::sample(pt, &plan.fd_step, |q| f.evaluate(q).expect("point matches chart"));
        jet.gradient(Rational::clone)
    })
}

/// Lie derivative by the Cartan formula.
pub fn recipe_lie_derivative<'a>(x: &'a VectorField, alpha: &'a OneForm, plan: &'a SamplePlan) -> Recipe<'a> {
    Box::new(move |pt| {
        let jet = Jet::sample(pt, &plan.fd_step, |q| (eval_vec(x.comps(), q), eval_vec(alpha.comps(), q)));
        lie_derivative_at(&jet, |d| d.0.clone(), |d| d.1.clone())
    })
}

pub fn recipe_oneform_bracket<'a>(
    p: &'a Bivector,
    alpha: &'a OneForm,
    beta: &'a OneForm,
    plan: &'a SamplePlan,
) -> Recipe<'a> {
    Box::new(move |pt| {
        let jet = Jet::sample(pt, &plan.fd_step, |q| {
            (eval_bivector(p, q), eval_vec(alpha.comps(), q), eval_vec(beta.comps(), q))
        });
        oneform_bracket_at(&jet, |d| d.0.clone(), |d| d.1.clone(), |d| d.2.clone())
    })
}

/// `N·P` on `i<j`; no differencing involved.
pub fn recipe_np_bivector<'a>(n: &'a EndoField, p: &'a Bivector) -> Recipe<'a> {
    Box::new(move |pt| {
        let m = mat_mul(&eval_endo(n, pt), &eval_bivector(p, pt));
        pairs(pt.len()).map(|(i, j)| m[i][j].clone()).collect()
    })
}

/// `N·P − P·Nᵀ` on `i ≤ j`; no differencing involved.
pub fn recipe_compatibility_defect<'a>(n: &'a EndoField, p: &'a Bivector) -> Recipe<'a> {
    Box::new(move |pt| {
        let (nm, pm) = (eval_endo(n, pt), eval_bivector(p, pt));
        let dim = pt.len();
        let mut out = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                let np = (0..dim).fold(Rational::zero(), |acc, k| acc + &nm[i][k] * &pm[k][j]);
                let pn = (0..dim).fold(Rational::zero(), |acc, k| acc + &pm[i][k] * &nm[j][k]);
                out.push(np - pn);
            }
        }
        out
    })
}

/// A field value at the jet center with its first partials, `jac[l][k] = ∂_l vₖ`.
struct Local {
    val: Vec<Rational>,
    jac: Vec<Vec<Rational>>,
}

impl Local {
    fn constant(v: Vec<Rational>) -> Self {
        let n = v.len();
        Local {
            jac: vec![vec![Rational::zero(); n]; n],
            val: v,
        }
    }

    /// Row `i` of an `n×n` matrix stored flat in `val`/`jac`.
    fn row(flat: &Local, n: usize, i: usize) -> Self {
        Local {
            val: flat.val[i * n..(i + 1) * n].to_vec(),
            jac: flat.jac.iter().map(|d| d[i * n..(i + 1) * n].to_vec()).collect(),
        }
    }

    /// `∂_l (self · other)` by the product rule.
    fn grad_dot(&self, other: &Local) -> Vec<Rational> {
        (0..self.jac.len())
            .map(|l| dot(&self.jac[l], &other.val) + dot(&self.val, &other.jac[l]))
            .collect()
    }
}

/// `[α,β]_Q` from `x = Q♯α`, `y = Q♯β`: `L_xβ − L_yα − d(β(x))`, with
/// `L_Xα = i_X dα + d(α(X))`.
fn oneform_bracket_local(x: &Local, y: &Local, alpha: &Local, beta: &Local) -> Vec<Rational> {
    let lie = |v: &Local, a: &Local| -> Vec<Rational> {
        let g = a.grad_dot(v);
        (0..g.len())
            .map(|i| {
                (0..g.len()).fold(g[i].clone(), |acc, j| acc + &v.val[j] * (&a.jac[j][i] - &a.jac[i][j]))
            })
            .collect()
    };
    sub(&sub(&lie(x, beta), &lie(y, alpha)), &beta.grad_dot(x))
}

/// Concomitant on coordinate coframes, ordered `(i, j, k)`.
///
/// Differences `P`, `N` and `N·P` once per point; the brackets are then
/// assembled from the Cartan formula, using `P♯(N*dxᵢ) = (N·P)♯dxᵢ`.
pub fn recipe_concomitant<'a>(p: &'a Bivector, n: &'a EndoField, plan: &'a SamplePlan) -> Recipe<'a> {
    Box::new(move |pt| {
        let dim = pt.len();
        let jet = Jet::sample(pt, &plan.fd_step, |q| {
            let (pm, nm) = (eval_bivector(p, q), eval_endo(n, q));
            let npm = mat_mul(&nm, &pm);
            (flatten(&pm), flatten(&nm), flatten(&npm))
        });
        let local = |pick: fn(&(Vec<Rational>, Vec<Rational>, Vec<Rational>)) -> &Vec<Rational>| Local {
            val: pick(jet.center()).clone(),
            jac: jet.jacobian(|d| pick(d).clone()),
        };
        let (pl, nl, npl) = (local(|d| &d.0), local(|d| &d.1), local(|d| &d.2));
        let nt: Mat = (0..dim).map(|i| nl.val[i * dim..(i + 1) * dim].to_vec()).collect();
        let e: Vec<Local> = (0..dim).map(|i| Local::constant(unit(dim, i))).collect();
        let p_row: Vec<Local> = (0..dim).map(|i| Local::row(&pl, dim, i)).collect();
        let n_row: Vec<Local> = (0..dim).map(|i| Local::row(&nl, dim, i)).collect();
        let np_row: Vec<Local> = (0..dim).map(|i| Local::row(&npl, dim, i)).collect();
        let mut out = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let lhs = oneform_bracket_local(&np_row[i], &np_row[j], &e[i], &e[j]);
                let t1 = oneform_bracket_local(&np_row[i], &p_row[j], &n_row[i], &e[j]);
                let t2 = oneform_bracket_local(&p_row[i], &np_row[j], &e[i], &n_row[j]);
                let t3 = mat_t_vec(&nt, &oneform_bracket_local(&p_row[i], &p_row[j], &e[i], &e[j]));
                out.extend(sub(&lhs, &sub(&add(&t1, &t2), &t3)));
            }
        }
        out
    })
}

/// Compares `symbolic` with `recipe` at `plan.count` seeded points.
///
/// Panics if the recipe yields a different number of components than the
/// tensor; that is a wiring error, not a verdict.
pub fn randomized_identity_check(symbolic: &dyn Tensor, recipe: &dyn Fn(&[Rational]) -> Vec<Rational>, plan: &SamplePlan) -> CheckOutcome {
    let comps = symbolic.components();
    let mut max_dev = Rational::zero();
    let mut worst_point = Vec::new();
    let mut worst_component = None;
    let points = plan.points(symbolic.chart().dim());
    for pt in &points {
        let numeric = recipe(pt);
        assert_eq!(
            numeric.len(),
            comps.len(),
            "recipe for {} has the wrong number of components",
            symbolic.symbol()
        );
        for (idx, (c, v)) in comps.iter().zip(&numeric).enumerate() {
            let dev = (c.evaluate(pt).expect("point matches chart") - v).abs();
            if dev > max_dev {
                max_dev = dev;
                worst_point = pt.clone();
                worst_component = Some(idx);
            }
        }
    }
    CheckOutcome {
        passed: max_dev <= plan.tolerance,
        max_deviation: max_dev,
        worst_point,
        worst_component,
        samples: points.len(),
        tolerance: plan.tolerance.clone(),
    }
}

/// A tensor with `delta` added to one of its components; used to confirm
/// that the oracle notices single-component faults.
pub struct Perturbed<'a> {
    inner: &'a dyn Tensor,
    component: usize,
    delta: Rational,
}

impl<'a> Perturbed<'a> {
    pub fn new(inner: &'a dyn Tensor, component: usize, delta: Rational) -> Self {
        Perturbed {
            inner,
            component,
            delta,
        }
    }
}

impl Tensor for Perturbed<'_> {
    fn chart(&self) -> &Chart {
        self.inner.chart()
    }
    fn symbol(&self) -> &'static str {
        self.inner.symbol()
    }
    fn labeled_components(&self) -> Vec<(Vec<usize>, Poly)> {
        let mut comps = self.inner.labeled_components();
        if let Some((_, p)) = comps.get_mut(self.component) {
            *p = &*p + &Poly::constant(self.inner.chart(), self.delta.clone());
        }
        comps
    }
}

/// Random polynomial with at most `terms` monomials of degree ≤ `max_degree`
/// and nonzero integer coefficients in `[−5, 5]`.
pub fn random_poly(rng: &mut impl Rng, chart: &Chart, max_degree: u32, terms: usize) -> Poly {
    let n = chart.dim();
    let mut out = Poly::zero(chart);
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; n];
        for _ in 0..degree {
            exps[rng.gen_range(0..n)] += 1;
        }
        let mut c = rng.gen_range(-5i64..=4);
        if c >= 0 {
            c += 1;
        }
        let m = Poly::from_terms(chart, [(exps, int(c))]).expect("exponents sized to chart");
        out = out + m;
    }
    out
}

pub fn random_vector_field(rng: &mut impl Rng, chart: &Chart, max_degree: u32) -> VectorField {
    let comps = (0..chart.dim()).map(|_| random_poly(rng, chart, max_degree, 3)).collect();
    VectorField::new(chart, comps).expect("sized to chart")
}

pub fn random_oneform(rng: &mut impl Rng, chart: &Chart, max_degree: u32) -> OneForm {
    let comps = (0..chart.dim()).map(|_| random_poly(rng, chart, max_degree, 3)).collect();
    OneForm::new(chart, comps).expect("sized to chart")
}

pub fn random_bivector(rng: &mut impl Rng, chart: &Chart, max_degree: u32) -> Bivector {
    Bivector::from_fn(chart, |_, _| random_poly(rng, chart, max_degree, 2))
}

pub fn random_endo(rng: &mut impl Rng, chart: &Chart, max_degree: u32) -> EndoField {
    EndoField::from_fn(chart, |_, _| random_poly(rng, chart, max_degree, 2))
}
