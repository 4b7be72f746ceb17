use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Chart, ExprError, Rational, Result};

/// Exponent vector, one entry per chart coordinate.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the first coordinate, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, index: usize) -> Self {
        let mut e = vec![0; dim];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with exact rational coefficients on a chart.
///
/// No stored coefficient is zero, so two polynomials on the same chart are
/// equal iff their term maps are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    chart: Chart,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(chart: &Chart) -> Self {
        Poly {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Chart, c: Rational) -> Self {
        let mut p = Poly::zero(chart);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(chart.dim()), c);
        }
        p
    }

    pub fn one(chart: &Chart) -> Self {
        Poly::constant(chart, Rational::one())
    }

    /// The coordinate function `chart[index]`.
    pub fn var(chart: &Chart, index: usize) -> Self {
        assert!(index < chart.dim(), "coordinate index out of range");
        let mut p = Poly::zero(chart);
        p.terms
            .insert(Monomial::var(chart.dim(), index), Rational::one());
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(chart: &Chart, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Poly::zero(chart);
        for (exps, c) in terms {
            if exps.len() != chart.dim() {
                return Err(ExprError::DimensionMismatch {
                    expected: chart.dim(),
                    found: exps.len(),
                });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = Poly::zero(&self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.chart);
        }
        Poly {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::one(&self.chart);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to the coordinate at `index`.
    pub fn derivative(&self, index: usize) -> Poly {
        let mut out = Poly::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Partial derivative with respect to the named coordinate.
    pub fn differentiate(&self, coordinate: &str) -> Result<Poly> {
        let index = self
            .chart
            .index_of(coordinate)
            .ok_or_else(|| ExprError::UnknownVariable(coordinate.to_string()))?;
        Ok(self.derivative(index))
    }

    /// Exact value at `point`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.chart.dim() {
            return Err(ExprError::DimensionMismatch {
                expected: self.chart.dim(),
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes `images[i]` for coordinate `i`. All images must share one
    /// chart, which becomes the chart of the result.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.chart.dim() {
            return Err(ExprError::DimensionMismatch {
                expected: self.chart.dim(),
                found: images.len(),
            });
        }
        let target = images[0].chart.clone();
        for img in &images[1..] {
            target.ensure_same(&img.chart)?;
        }
        // powers[i][e] = images[i]^e, filled lazily
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|img| vec![Poly::one(&target), img.clone()])
            .collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Re-expresses the polynomial on `target`, sending coordinate `i` to
    /// target coordinate `positions[i]`.
    pub fn embed(&self, target: &Chart, positions: &[usize]) -> Poly {
        assert_eq!(positions.len(), self.chart.dim(), "embedding arity");
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.dim()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[positions[i]] += e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Floating-point evaluation, for diagnostics only.
    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                for (x, &e) in point.iter().zip(&m.0) {
                    v *= x.powi(e as i32);
                }
                v
            })
            .sum()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            /// Panics when the operands live on different charts; use the
            /// `checked_*` form for untrusted operands.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial operands on different charts")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

/// Ring operations selectable at runtime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Neg,
    Pow(u32),
    Scale(Rational),
}

/// Applies `op` to `operands`, checking arity and charts.
pub fn poly_algebra(op: &PolyOp, operands: &[Poly]) -> Result<Poly> {
    let arity = |name: &'static str, expected: usize| -> Result<()> {
        if operands.len() == expected {
            Ok(())
        } else {
            Err(ExprError::Arity {
                op: name,
                expected,
                found: operands.len(),
            })
        }
    };
    match op {
        PolyOp::Add => {
            arity("add", 2)?;
            operands[0].checked_add(&operands[1])
        }
        PolyOp::Sub => {
            arity("sub", 2)?;
            operands[0].checked_sub(&operands[1])
        }
        PolyOp::Mul => {
            arity("mul", 2)?;
            operands[0].checked_mul(&operands[1])
        }
        PolyOp::Neg => {
            arity("neg", 1)?;
            Ok(-&operands[0])
        }
        PolyOp::Pow(e) => {
            arity("pow", 1)?;
            Ok(operands[0].pow(*e))
        }
        PolyOp::Scale(c) => {
            arity("scale", 1)?;
            Ok(operands[0].scale(c))
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, chart: &Chart, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(chart.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    /// Descending graded-lex order. The output re-parses to the same
    /// polynomial; in the grammar unary minus binds tighter than `^`, so a
    /// leading `-x^2` is written `-1*x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            let leading_power = m.0.iter().find(|&&e| e > 0).copied().unwrap_or(0);
            if !abs.is_one() || (k == 0 && negative && leading_power > 1) {
                write!(f, "{abs}*")?;
            }
            write_monomial(f, &self.chart, m)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.chart, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{int, parse_poly, rat};

    fn chart2() -> Chart {
        Chart::new(["x1", "x2"]).unwrap()
    }

    #[test]
    fn direct_construction_matches_parse() {
        let c = chart2();
        let p = parse_poly("x1*x2 + 2", &c).unwrap();
        let q = Poly::from_terms(&c, [(vec![1, 1], int(1)), (vec![0, 0], int(2))]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn additive_inverse_and_products() {
        let c = chart2();
        let p = parse_poly("3*x1^2 - x2 + 1/2", &c).unwrap();
        assert!((&p + &(-&p)).is_zero());
        let x1 = Poly::var(&c, 0);
        let x2 = Poly::var(&c, 1);
        assert_eq!(&x1 * &x2, parse_poly("x1*x2", &c).unwrap());
    }

    #[test]
    fn pow_of_sum() {
        let c = chart2();
        let s = parse_poly("x1 + x2", &c).unwrap();
        assert_eq!(
            s.pow(2),
            parse_poly("x1^2 + 2*x1*x2 + x2^2", &c).unwrap()
        );
        assert_eq!(s.pow(0), Poly::one(&c));
    }

    #[test]
    fn chart_mismatch_is_reported() {
        let a = Poly::var(&chart2(), 0);
        let b = Poly::var(&Chart::new(["y"]).unwrap(), 0);
        assert!(matches!(
            a.checked_add(&b),
            Err(ExprError::ChartMismatch { .. })
        ));
        assert!(matches!(
            poly_algebra(&PolyOp::Mul, &[a, b]),
            Err(ExprError::ChartMismatch { .. })
        ));
    }

    #[test]
    fn poly_algebra_dispatch() {
        let c = chart2();
        let p = parse_poly("x1 + 1", &c).unwrap();
        let sq = poly_algebra(&PolyOp::Pow(2), &[p.clone()]).unwrap();
        assert_eq!(sq, parse_poly("x1^2 + 2*x1 + 1", &c).unwrap());
        let half = poly_algebra(&PolyOp::Scale(rat(1, 2)), &[p.clone()]).unwrap();
        assert_eq!(half, parse_poly("1/2*x1 + 1/2", &c).unwrap());
        assert!(poly_algebra(&PolyOp::Add, &[p]).is_err());
    }

    #[test]
    fn derivatives() {
        let c = chart2();
        let p = parse_poly("x1^2*x2", &c).unwrap();
        assert_eq!(p.differentiate("x1").unwrap(), parse_poly("2*x1*x2", &c).unwrap());
        assert!(Poly::var(&c, 0).differentiate("x2").unwrap().is_zero());
        assert_eq!(
            p.differentiate("z"),
            Err(ExprError::UnknownVariable("z".into()))
        );
    }

    #[test]
    fn evaluation() {
        let c = chart2();
        let p = parse_poly("x1*x2 + 2", &c).unwrap();
        assert_eq!(p.evaluate(&[int(3), int(5)]).unwrap(), int(17));
        assert_eq!(Poly::zero(&c).evaluate(&[int(7), rat(1, 3)]).unwrap(), int(0));
        let c1 = Chart::new(["x1"]).unwrap();
        let q = parse_poly("(x1+1)^2", &c1).unwrap();
        assert_eq!(q.evaluate(&[rat(1, 2)]).unwrap(), rat(9, 4));
        assert!(matches!(
            q.evaluate(&[int(1), int(2)]),
            Err(ExprError::DimensionMismatch { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn is_zero_decides() {
        let c = chart2();
        let p = parse_poly("x1 - 7*x2^3", &c).unwrap();
        assert!((&p - &p).is_zero());
        assert!(!Poly::var(&c, 0).is_zero());
        let a = parse_poly("x1 + x2", &c).unwrap();
        let b = parse_poly("x1 - 3", &c).unwrap();
        let comm = &(&a * &b) - &(&b * &a);
        assert!((&comm - &comm).is_zero());
        assert!(comm.is_zero());
    }

    #[test]
    fn compose_and_embed() {
        let c = chart2();
        let p = parse_poly("x1*x2 + x2^2", &c).unwrap();
        let t = Chart::new(["u"]).unwrap();
        let u = Poly::var(&t, 0);
        let r = p.compose(&[u.clone() + Poly::one(&t), u.clone()]).unwrap();
        assert_eq!(r, parse_poly("2*u^2 + u", &t).unwrap());
        let big = Chart::new(["a", "x2", "x1"]).unwrap();
        let e = p.embed(&big, &[2, 1]);
        assert_eq!(e, parse_poly("x1*x2 + x2^2", &big).unwrap());
    }

    #[test]
    fn printing_is_graded_lex_descending() {
        let c = chart2();
        let p = parse_poly("1 + x2 + x1 + x1*x2 - x1^2", &c).unwrap();
        assert_eq!(p.to_string(), "-1*x1^2 + x1*x2 + x1 + x2 + 1");
        let q = parse_poly("-x1*x2 - 3/2", &c).unwrap();
        assert_eq!(q.to_string(), "-x1*x2 - 3/2");
        assert_eq!(Poly::zero(&c).to_string(), "0");
    }
}
