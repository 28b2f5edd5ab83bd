use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::formula::Formula;
use crate::hilbert::{CMatrix, Lattice, Projector, StateVector};

/// Random formulas over `atoms` with depth at most `depth`. Never emits `=`.
pub(crate) fn arb_formula(atoms: &[&'static str], depth: u32) -> BoxedStrategy<Formula> {
    let names: Vec<&'static str> = atoms.to_vec();
    let leaf = prop_oneof![
        6 => proptest::sample::select(names).prop_map(Formula::atom),
        1 => Just(Formula::Top),
        1 => Just(Formula::Bottom),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::iff(l, r)),
        ]
    })
    .boxed()
}

/// Like [`arb_formula`] but may also contain the identity connective.
pub(crate) fn arb_formula_with_identity(
    atoms: &[&'static str],
    depth: u32,
) -> BoxedStrategy<Formula> {
    let names: Vec<&'static str> = atoms.to_vec();
    let leaf = prop_oneof![
        6 => proptest::sample::select(names).prop_map(Formula::atom),
        1 => Just(Formula::Top),
        1 => Just(Formula::Bottom),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::iff(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::identity(l, r)),
        ]
    })
    .boxed()
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    let entries = (0..n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    StateVector::new(entries).unwrap()
}

pub(crate) fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    let v = random_vector(rng, n);
    v.scale(Complex64::new(1.0 / v.norm(), 0.0))
}

pub(crate) fn random_projector(rng: &mut ChaCha8Rng, n: usize, rank: Option<usize>) -> Projector {
    let k = rank.unwrap_or_else(|| rng.random_range(0..=n));
    let vs: Vec<StateVector> = (0..k).map(|_| random_vector(rng, n)).collect();
    Lattice::default().projector_from_basis(n, &vs).unwrap()
}

/// `(P, Q)` with `ran P ⊆ ran Q`.
pub(crate) fn random_nested_pair(rng: &mut ChaCha8Rng, n: usize) -> (Projector, Projector) {
    let k = rng.random_range(0..=n);
    let outer: Vec<StateVector> = (0..k).map(|_| random_vector(rng, n)).collect();
    let j = rng.random_range(0..=k);
    let inner: Vec<StateVector> = (0..j)
        .map(|_| {
            outer.iter().fold(
                StateVector::new(vec![Complex64::new(0.0, 0.0); n]).unwrap(),
                |acc, v| {
                    let z = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
                    acc.add(&v.scale(z)).unwrap()
                },
            )
        })
        .collect();
    let lat = Lattice::default();
    (
        lat.projector_from_basis(n, &inner).unwrap(),
        lat.projector_from_basis(n, &outer).unwrap(),
    )
}

/// Two projectors diagonal in a shared random orthonormal basis.
pub(crate) fn random_commuting_pair(rng: &mut ChaCha8Rng, n: usize) -> (Projector, Projector) {
    let basis: Vec<StateVector> = (0..n).map(|_| random_vector(rng, n)).collect();
    let lat = Lattice::default();
    // orthonormalize by peeling rank-one pieces off successive spans
    let mut cols: Vec<Projector> = Vec::new();
    let mut prev = Projector::zero(n);
    for k in 1..=n {
        let span = lat.projector_from_basis(n, &basis[..k]).unwrap();
        cols.push(Projector::from_trusted(span.matrix() - prev.matrix()));
        prev = span;
    }
    let mut pick = |cols: &[Projector]| {
        let mut m = CMatrix::zeros(n, n);
        for col in cols {
            if rng.random_bool(0.5) {
                m += col.matrix();
            }
        }
        Projector::from_trusted(m)
    };
    (pick(&cols), pick(&cols))
}
