use crate::expr::{Chart, Poly, Rational};
use crate::report::Witness;

use super::{CalculusError, Result};

/// Position of the pair `i < j` in row-major strictly-upper-triangular storage.
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
}

fn check_len(chart: &Chart, found: usize) -> Result<()> {
    if found == chart.dim() {
        Ok(())
    } else {
        Err(CalculusError::Dimension {
            expected: chart.dim(),
            found,
        })
    }
}

fn check_charts<'a>(chart: &Chart, polys: impl IntoIterator<Item = &'a Poly>) -> Result<()> {
    for p in polys {
        if p.chart() != chart {
            return Err(CalculusError::ChartMismatch);
        }
    }
    Ok(())
}

/// Common view of every tensor type: a chart plus an ordered list of
/// independent components, each labelled by its index tuple.
pub trait Tensor {
    fn chart(&self) -> &Chart;

    /// Symbol used in witness labels, e.g. `"X"` or `"[P,P]"`.
    fn symbol(&self) -> &'static str;

    /// Independent components in a fixed canonical order.
    fn labeled_components(&self) -> Vec<(Vec<usize>, Poly)>;

    fn components(&self) -> Vec<Poly> {
        self.labeled_components().into_iter().map(|(_, p)| p).collect()
    }

    fn is_zero(&self) -> bool {
        self.labeled_components().iter().all(|(_, p)| p.is_zero())
    }

    /// First nonzero component, or `None` when the tensor vanishes identically.
    fn first_nonzero(&self) -> Option<Witness> {
        let chart = self.chart().clone();
        self.labeled_components()
            .into_iter()
            .find(|(_, p)| !p.is_zero())
            .map(|(idx, p)| Witness {
                component: format!(
                    "{}[{}]",
                    self.symbol(),
                    idx.iter()
                        .map(|&i| chart.name(i))
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                indices: idx,
                value: p.to_string(),
            })
    }
}

/// `X = Σ Xⁱ ∂ᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    chart: Chart,
    comps: Vec<Poly>,
}

impl VectorField {
    pub fn new(chart: &Chart, comps: Vec<Poly>) -> Result<Self> {
        check_len(chart, comps.len())?;
        check_charts(chart, &comps)?;
        Ok(VectorField {
            chart: chart.clone(),
            comps,
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        VectorField {
            chart: chart.clone(),
            comps: vec![Poly::zero(chart); chart.dim()],
        }
    }

    /// The coordinate field `∂ᵢ`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let mut v = Self::zero(chart);
        v.comps[i] = Poly::one(chart);
        v
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    /// Directional derivative `X(f) = Σ Xⁱ ∂ᵢf`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(&self.chart);
        for (i, xi) in self.comps.iter().enumerate() {
            if !xi.is_zero() {
                out = out + xi * &f.derivative(i);
            }
        }
        out
    }

    pub fn scale(&self, f: &Poly) -> Self {
        self.map(|c| f * c)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Vec<Rational> {
        self.comps.iter().map(|c| c.evaluate(point).expect("point dimension")).collect()
    }
}

impl Tensor for VectorField {
    fn chart(&self) -> &Chart {
        &self.chart
    }
    fn symbol(&self) -> &'static str {
        "X"
    }
    fn labeled_components(&self) -> Vec<(Vec<usize>, Poly)> {
        self.comps.iter().cloned().enumerate().map(|(i, p)| (vec![i], p)).collect()
    }
}

/// `α = Σ αᵢ dxⁱ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    chart: Chart,
    comps: Vec<Poly>,
}

impl OneForm {
    pub fn new(chart: &Chart, comps: Vec<Poly>) -> Result<Self> {
        check_len(chart, comps.len())?;
        check_charts(chart, &comps)?;
        Ok(OneForm {
            chart: chart.clone(),
            comps,
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        OneForm {
            chart: chart.clone(),
            comps: vec![Poly::zero(chart); chart.dim()],
        }
    }

    /// The coordinate coframe `dxⁱ`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let mut a = Self::zero(chart);
        a.comps[i] = Poly::one(chart);
        a
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    /// Pairing `α(X)`.
    pub fn pair(&self, x: &VectorField) -> Poly {
        self.comps
            .iter()
            .zip(x.comps())
            .fold(Poly::zero(&self.chart), |acc, (a, v)| acc + a * v)
    }

    pub fn scale(&self, f: &Poly) -> Self {
        OneForm {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|c| f * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        OneForm {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        OneForm {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Tensor for OneForm {
    fn chart(&self) -> &Chart {
        &self.chart
    }
    fn symbol(&self) -> &'static str {
        "alpha"
    }
    fn labeled_components(&self) -> Vec<(Vec<usize>, Poly)> {
        self.comps.iter().cloned().enumerate().map(|(i, p)| (vec![i], p)).collect()
    }
}

/// Antisymmetric `Π^{ij}`, stored on `i < j` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivector {
    chart: Chart,
    upper: Vec<Poly>,
}

impl Bivector {
    pub fn zero(chart: &Chart) -> Self {
        let n = chart.dim();
        Bivector {
            chart: chart.clone(),
            upper: vec![Poly::zero(chart); n * n.saturating_sub(1) / 2],
        }
    }

    /// Builds from the `i < j` entries produced by `f`.
    pub fn from_fn(chart: &Chart, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let n = chart.dim();
        Bivector {
            chart: chart.clone(),
            upper: pairs(n).map(|(i, j)| f(i, j)).collect(),
        }
    }

    /// Builds from a full matrix, which must be antisymmetric.
    pub fn from_matrix(chart: &Chart, m: &[Vec<Poly>]) -> Result<Self> {
        let n = chart.dim();
        check_len(chart, m.len())?;
        for row in m {
            check_len(chart, row.len())?;
            check_charts(chart, row)?;
        }
        for i in 0..n {
            for j in i..n {
                if !(&m[i][j] + &m[j][i]).is_zero() {
                    return Err(CalculusError::NotAntisymmetric { i, j });
                }
            }
        }
        Ok(Self::from_fn(chart, |i, j| m[i][j].clone()))
    }

    /// `e_i ∧ e_j` with constant coefficient 1.
    pub fn wedge(chart: &Chart, i: usize, j: usize) -> Self {
        assert_ne!(i, j);
        let mut b = Self::zero(chart);
        let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        b.upper[pair_index(chart.dim(), lo, hi)] = Poly::constant(chart, crate::expr::int(sign));
        b
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> Poly {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(self.dim(), i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.upper[pair_index(self.dim(), j, i)],
            std::cmp::Ordering::Equal => Poly::zero(&self.chart),
        }
    }

    pub fn to_matrix(&self) -> Vec<Vec<Poly>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn scale(&self, f: &Poly) -> Self {
        Bivector {
            chart: self.chart.clone(),
            upper: self.upper.iter().map(|p| f * p).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Bivector {
            chart: self.chart.clone(),
            upper: self.upper.iter().zip(&other.upper).map(|(a, b)| a + b).collect(),
        }
    }

    /// `Π(α, β) = Σ Π^{ij} αᵢ βⱼ`.
    pub fn contract(&self, alpha: &OneForm, beta: &OneForm) -> Poly {
        let mut out = Poly::zero(&self.chart);
        for (i, j) in pairs(self.dim()) {
            let p = &self.upper[pair_index(self.dim(), i, j)];
            if p.is_zero() {
                continue;
            }
            let cross = alpha.component(i) * beta.component(j)
                - alpha.component(j) * beta.component(i);
            out = out + p * &cross;
        }
        out
    }
}

impl Tensor for Bivector {
    fn chart(&self) -> &Chart {
        &self.chart
    }
    fn symbol(&self) -> &'static str {
        "P"
    }
    fn labeled_components(&self) -> Vec<(Vec<usize>, Poly)> {
        pairs(self.dim())
            .zip(self.upper.iter().cloned())
            .map(|((i, j), p)| (vec![i, j], p))
            .collect()
    }
}

/// Totally antisymmetric rank-3 contravariant tensor, stored on `i < j < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivector {
    chart: Chart,
    comps: Vec<((usize, usize, usize), Poly)>,
}

impl Trivector {
    pub fn from_fn(chart: &Chart, mut f: impl FnMut(usize, usize, usize) -> Poly) -> Self {
        Trivector {
            chart: chart.clone(),
            comps: triples(chart.dim()).map(|(i, j, k)| ((i, j, k), f(i, j, k))).collect(),
        }
    }

    pub fn zero(chart: &Chart) -> Self {
        Self::from_fn(chart, |_, _, _| Poly::zero(chart))
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// Component on an arbitrary (possibly unsorted) triple.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Poly {
        let mut idx = [i, j, k];
        if i == j || j == k || i == k {
            return Poly::zero(&self.chart);
        }
        let mut sign = 1;
        for a in 0..3 {
            for b in 0..2 - a {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        let p = self
            .comps
            .iter()
            .find(|(t, _)| *t == (idx[0], idx[1], idx[2]))
            .map(|(_, p)| p.clone())
            .expect("sorted triple is stored");
        if sign < 0 {
            -p
        } else {
            p
        }
    }
}

impl Tensor for Trivector {
    fn chart(&self) -> &Chart {
        &self.chart
    }
    fn symbol(&self) -> &'static str {
        "[P,P]"
    }
    fn labeled_components(&self) -> Vec<(Vec<usize>, Poly)> {
        self.comps
            .iter()
            .map(|((i, j, k), p)| (vec![*i, *j, *k], p.clone()))
            .collect()
    }
}

/// (1,1)-tensor `Nⁱⱼ`, acting by `(NX)ⁱ = Σⱼ Nⁱⱼ Xʲ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoField {
    chart: Chart,
    m: Vec<Vec<Poly>>,
}

impl EndoField {
    pub fn from_matrix(chart: &Chart, m: Vec<Vec<Poly>>) -> Result<Self> {
        check_len(chart, m.len())?;
        for row in &m {
            check_len(chart, row.len())?;
            check_charts(chart, row)?;
        }
        Ok(EndoField {
            chart: chart.clone(),
            m,
        })
    }

    pub fn from_fn(chart: &Chart, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let n = chart.dim();
        EndoField {
            chart: chart.clone(),
            m: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn identity(chart: &Chart) -> Self {
        Self::from_fn(chart, |i, j| {
            if i == j {
                Poly::one(chart)
            } else {
                Poly::zero(chart)
            }
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        Self::from_fn(chart, |_, _| Poly::zero(chart))
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.m[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.m
    }

    pub fn apply(&self, x: &VectorField) -> VectorField {
        let n = self.chart.dim();
        let comps = (0..n)
            .map(|i| {
                (0..n).fold(Poly::zero(&self.chart), |acc, j| acc + &self.m[i][j] * x.component(j))
            })
            .collect();
        VectorField {
            chart: self.chart.clone(),
            comps,
        }
    }

    /// `N*α`, i.e. `(N*α)ⱼ = Σᵢ Nⁱⱼ αᵢ`.
    pub fn apply_dual(&self, alpha: &OneForm) -> OneForm {
        let n = self.chart.dim();
        let comps = (0..n)
            .map(|j| {
                (0..n).fold(Poly::zero(&self.chart), |acc, i| acc + &self.m[i][j] * alpha.component(i))
            })
            .collect();
        OneForm {
            chart: self.chart.clone(),
            comps,
        }
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &EndoField) -> EndoField {
        let n = self.chart.dim();
        Self::from_fn(&self.chart, |i, j| {
            (0..n).fold(Poly::zero(&self.chart), |acc, k| acc + &self.m[i][k] * &other.m[k][j])
        })
    }
}

impl Tensor for EndoField {
    fn chart(&self) -> &Chart {
        &self.chart
    }
    fn symbol(&self) -> &'static str {
        "N"
    }
    fn labeled_components(&self) -> Vec<(Vec<usize>, Poly)> {
        let n = self.chart.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (vec![i, j], self.m[i][j].clone()))
            .collect()
    }
}

/// Nijenhuis torsion components `τᵏᵢⱼ`, stored for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionTensor {
    chart: Chart,
    /// `comps[k][pair_index(i, j)]`
    comps: Vec<Vec<Poly>>,
}

impl TorsionTensor {
    pub(crate) fn from_fn(chart: &Chart, mut f: impl FnMut(usize, usize) -> VectorField) -> Self {
        let n = chart.dim();
        let mut comps = vec![Vec::with_capacity(n * n.saturating_sub(1) / 2); n];
        for (i, j) in pairs(n) {
            let v = f(i, j);
            for (k, c) in v.comps.into_iter().enumerate() {
                comps[k].push(c);
            }
        }
        TorsionTensor {
            chart: chart.clone(),
            comps,
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> Poly {
        let n = self.chart.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.comps[k][pair_index(n, i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.comps[k][pair_index(n, j, i)],
            std::cmp::Ordering::Equal => Poly::zero(&self.chart),
        }
    }

    /// `τ(X, Y)` by tensorial contraction.
    pub fn contract(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let n = self.chart.dim();
        let mut comps = vec![Poly::zero(&self.chart); n];
        for (i, j) in pairs(n) {
            let cross = x.component(i) * y.component(j) - x.component(j) * y.component(i);
            if cross.is_zero() {
                continue;
            }
            for (k, c) in comps.iter_mut().enumerate() {
                let t = &self.comps[k][pair_index(n, i, j)];
                if !t.is_zero() {
                    *c = &*c + &(t * &cross);
                }
            }
        }
        VectorField {
            chart: self.chart.clone(),
            comps,
        }
    }
}

impl Tensor for TorsionTensor {
    fn chart(&self) -> &Chart {
        &self.chart
    }
    fn symbol(&self) -> &'static str {
        "tau"
    }
    fn labeled_components(&self) -> Vec<(Vec<usize>, Poly)> {
        let n = self.chart.dim();
        (0..n)
            .flat_map(|k| pairs(n).map(move |(i, j)| (k, i, j)))
            .map(|(k, i, j)| (vec![k, i, j], self.comps[k][pair_index(n, i, j)].clone()))
            .collect()
    }
}

/// Magri–Morosi concomitant components `C(dxⁱ, dxʲ) = Σₖ Cᵢⱼᵏ dxᵏ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcomitantTensor {
    chart: Chart,
    /// `comps[i][j]` is the one-form `C(dxⁱ, dxʲ)`.
    comps: Vec<Vec<OneForm>>,
}

impl ConcomitantTensor {
    pub(crate) fn from_fn(chart: &Chart, mut f: impl FnMut(usize, usize) -> OneForm) -> Self {
        let n = chart.dim();
        ConcomitantTensor {
            chart: chart.clone(),
            comps: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Poly {
        self.comps[i][j].component(k)
    }

    pub fn on_coframes(&self, i: usize, j: usize) -> &OneForm {
        &self.comps[i][j]
    }

    /// `C(α, β)` by bilinear contraction of the coframe components.
    pub fn contract(&self, alpha: &OneForm, beta: &OneForm) -> OneForm {
        let n = self.chart.dim();
        let mut out = OneForm::zero(&self.chart);
        for i in 0..n {
            if alpha.component(i).is_zero() {
                continue;
            }
            for j in 0..n {
                let coeff = alpha.component(i) * beta.component(j);
                if !coeff.is_zero() {
                    out = out.add(&self.comps[i][j].scale(&coeff));
                }
            }
        }
        out
    }

    /// First `(i, j, k)` with `C(dxⁱ,dxʲ) + C(dxʲ,dxⁱ)` nonzero in slot `k`.
    pub fn skew_defect(&self) -> Option<Witness> {
        let n = self.chart.dim();
        for i in 0..n {
            for j in i..n {
                let s = self.comps[i][j].add(&self.comps[j][i]);
                if let Some(k) = (0..n).find(|&k| !s.component(k).is_zero()) {
                    return Some(Witness {
                        component: format!(
                            "C[{0},{1},{2}] + C[{1},{0},{2}]",
                            self.chart.name(i),
                            self.chart.name(j),
                            self.chart.name(k)
                        ),
                        indices: vec![i, j, k],
                        value: s.component(k).to_string(),
                    });
                }
            }
        }
        None
    }
}

impl Tensor for ConcomitantTensor {
    fn chart(&self) -> &Chart {
        &self.chart
    }
    fn symbol(&self) -> &'static str {
        "C"
    }
    fn labeled_components(&self) -> Vec<(Vec<usize>, Poly)> {
        let n = self.chart.dim();
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.push((vec![i, j, k], self.comps[i][j].component(k).clone()));
                }
            }
        }
        out
    }
}

/// A symmetric matrix of polynomials, used for the compatibility defect `N·P − P·Nᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricDefect {
    chart: Chart,
    m: Vec<Vec<Poly>>,
}

impl SymmetricDefect {
    pub(crate) fn new(chart: &Chart, m: Vec<Vec<Poly>>) -> Self {
        SymmetricDefect {
            chart: chart.clone(),
            m,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.m[i][j]
    }
}

impl Tensor for SymmetricDefect {
    fn chart(&self) -> &Chart {
        &self.chart
    }
    fn symbol(&self) -> &'static str {
        "(NP-PN^T)"
    }
    fn labeled_components(&self) -> Vec<(Vec<usize>, Poly)> {
        let n = self.chart.dim();
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| (vec![i, j], self.m[i][j].clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;

    fn chart3() -> Chart {
        Chart::numbered("x", 3).unwrap()
    }

    #[test]
    fn pair_index_is_dense() {
        let n = 5;
        let idx: Vec<usize> = pairs(n).map(|(i, j)| pair_index(n, i, j)).collect();
        assert_eq!(idx, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn bivector_antisymmetry_is_structural() {
        let c = chart3();
        let p = Bivector::from_fn(&c, |i, j| parse_poly(&format!("x{}*{}", i + 1, j + 1), &c).unwrap());
        for i in 0..3 {
            assert!(p.get(i, i).is_zero());
            for j in 0..3 {
                assert_eq!(p.get(i, j), -p.get(j, i));
            }
        }
        let m = p.to_matrix();
        assert_eq!(Bivector::from_matrix(&c, &m).unwrap(), p);
        let mut bad = m.clone();
        bad[0][1] = Poly::one(&c);
        assert!(matches!(
            Bivector::from_matrix(&c, &bad),
            Err(CalculusError::NotAntisymmetric { i: 0, j: 1 })
        ));
    }

    #[test]
    fn trivector_sign_of_permutation() {
        let c = Chart::numbered("x", 4).unwrap();
        let t = Trivector::from_fn(&c, |i, j, k| Poly::constant(&c, crate::expr::int((100 * i + 10 * j + k) as i64)));
        assert_eq!(t.get(0, 1, 2), t.get(1, 2, 0));
        assert_eq!(t.get(0, 1, 2), -t.get(1, 0, 2));
        assert_eq!(t.get(1, 3, 2), -t.get(1, 2, 3));
        assert!(t.get(1, 1, 2).is_zero());
    }

    #[test]
    fn witness_reports_first_nonzero() {
        let c = chart3();
        let mut comps = vec![Poly::zero(&c); 3];
        comps[1] = parse_poly("x1 - x2", &c).unwrap();
        let v = VectorField::new(&c, comps).unwrap();
        let w = v.first_nonzero().unwrap();
        assert_eq!(w.indices, vec![1]);
        assert_eq!(w.value, "x1 - x2");
        assert_eq!(w.component, "X[x2]");
        assert!(VectorField::zero(&c).first_nonzero().is_none());
    }

    #[test]
    fn vector_field_validation() {
        let c = chart3();
        assert!(matches!(
            VectorField::new(&c, vec![Poly::zero(&c)]),
            Err(CalculusError::Dimension { expected: 3, found: 1 })
        ));
        let other = Chart::numbered("y", 3).unwrap();
        assert!(matches!(
            VectorField::new(&c, vec![Poly::zero(&other); 3]),
            Err(CalculusError::ChartMismatch)
        ));
    }
}
