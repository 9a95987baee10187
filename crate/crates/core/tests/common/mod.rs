#![allow(dead_code)]

use carnot::poly::{rat, Monomial, Polynomial};
use carnot::vecfield::VectorField;
use proptest::prelude::*;

/// Exponent vectors of total degree at most `max_degree` on `n` coordinates.
pub fn exponents(n: usize, max_degree: u32) -> impl Strategy<Value = Vec<u32>> {
    (0..=max_degree as usize)
        .prop_flat_map(move |d| proptest::collection::vec(0..n, d))
        .prop_map(move |picks| {
            let mut e = vec![0; n];
            for j in picks {
                e[j] += 1;
            }
            e
        })
}

pub fn polynomial(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((exponents(n, max_degree), -6i64..=6, 1i64..=4), 0..=max_terms).prop_map(
        move |terms| {
            Polynomial::from_terms(
                n,
                terms.into_iter().map(|(e, a, b)| (Monomial::from_exponents(e), rat(a, b))),
            )
            .unwrap()
        },
    )
}

/// Fields on R^n with components of degree at most 3.
pub fn field(n: usize) -> impl Strategy<Value = VectorField> {
    proptest::collection::vec(polynomial(n, 3, 3), n)
        .prop_map(|comps| VectorField::new(comps).unwrap())
}

/// Three fields on a shared R^n with `1 <= n <= 8`.
pub fn field_triple() -> impl Strategy<Value = (VectorField, VectorField, VectorField)> {
    (1usize..=8).prop_flat_map(|n| (field(n), field(n), field(n)))
}
