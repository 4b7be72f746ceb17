#![allow(dead_code)]

use pncalc_core::calculus::{Bivector, EndoField, OneForm, VectorField};
use pncalc_core::expr::{rat, Chart, Poly, Rational};
use pncalc_core::liealg::{AlgBivector, AlgEndo};
use proptest::prelude::*;

pub fn chart(n: usize) -> Chart {
    Chart::numbered("x", n).unwrap()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

/// Up to `terms` monomials with each exponent ≤ `max_exp`.
pub fn poly(c: Chart, max_exp: u32, terms: usize) -> impl Strategy<Value = Poly> {
    let n = c.dim();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), rational()), 0..=terms)
        .prop_map(move |t| Poly::from_terms(&c, t).unwrap())
}

pub fn polys(c: Chart, count: usize, max_exp: u32, terms: usize) -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(poly(c, max_exp, terms), count)
}

pub fn vector_field(c: Chart, max_exp: u32) -> impl Strategy<Value = VectorField> {
    let n = c.dim();
    polys(c.clone(), n, max_exp, 2).prop_map(move |p| VectorField::new(&c, p).unwrap())
}

pub fn oneform(c: Chart, max_exp: u32) -> impl Strategy<Value = OneForm> {
    let n = c.dim();
    polys(c.clone(), n, max_exp, 2).prop_map(move |p| OneForm::new(&c, p).unwrap())
}

pub fn bivector(c: Chart, max_exp: u32) -> impl Strategy<Value = Bivector> {
    let n = c.dim();
    polys(c.clone(), n * n, max_exp, 2).prop_map(move |p| Bivector::from_fn(&c, |i, j| p[i * n + j].clone()))
}

pub fn endo(c: Chart, max_exp: u32) -> impl Strategy<Value = EndoField> {
    let n = c.dim();
    polys(c.clone(), n * n, max_exp, 2).prop_map(move |p| EndoField::from_fn(&c, |i, j| p[i * n + j].clone()))
}

pub fn rat_vec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

pub fn alg_bivector(n: usize) -> impl Strategy<Value = AlgBivector> {
    prop::collection::vec(rational(), n * n).prop_map(move |v| {
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Less => v[i * n + j].clone(),
                        std::cmp::Ordering::Greater => -v[j * n + i].clone(),
                        std::cmp::Ordering::Equal => rat(0, 1),
                    })
                    .collect()
            })
            .collect();
        AlgBivector::new(m).unwrap()
    })
}

pub fn alg_endo(n: usize) -> impl Strategy<Value = AlgEndo> {
    prop::collection::vec(rational(), n * n)
        .prop_map(move |v| AlgEndo::new((0..n).map(|i| v[i * n..(i + 1) * n].to_vec()).collect()).unwrap())
}
