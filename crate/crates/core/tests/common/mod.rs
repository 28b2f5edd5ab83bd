//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use qtruth_core::{Formula, Lattice, Projector, StateVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    StateVector::new((0..n).map(|_| gaussian(rng)).collect()).unwrap()
}

pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    let v = random_vector(rng, n);
    v.scale(Complex64::new(1.0 / v.norm(), 0.0))
}

/// Projector onto the span of `k` Gaussian vectors; `k` uniform in `0..=n`.
pub fn random_projector(rng: &mut ChaCha8Rng, n: usize) -> Projector {
    let k = rng.random_range(0..=n);
    let vs: Vec<StateVector> = (0..k).map(|_| random_vector(rng, n)).collect();
    Lattice::default().projector_from_basis(n, &vs).unwrap()
}

/// Two projectors sharing a random common subspace, so their meet is not trivially zero.
pub fn random_overlapping_pair(rng: &mut ChaCha8Rng, n: usize) -> (Projector, Projector) {
    let shared = rng.random_range(0..=n / 2);
    let common: Vec<StateVector> = (0..shared).map(|_| random_vector(rng, n)).collect();
    let side = |rng: &mut ChaCha8Rng| {
        let extra = rng.random_range(0..=n - shared);
        let mut vs = common.clone();
        vs.extend((0..extra).map(|_| random_vector(rng, n)));
        Lattice::default().projector_from_basis(n, &vs).unwrap()
    };
    let p = side(rng);
    let q = side(rng);
    (p, q)
}

/// `(P, Q)` with `ran P ⊆ ran Q`.
pub fn random_nested_pair(rng: &mut ChaCha8Rng, n: usize) -> (Projector, Projector) {
    let k = rng.random_range(0..=n);
    let outer: Vec<StateVector> = (0..k).map(|_| random_vector(rng, n)).collect();
    let j = rng.random_range(0..=k);
    let inner: Vec<StateVector> = (0..j)
        .map(|_| {
            let mut acc = StateVector::new(vec![Complex64::new(0.0, 0.0); n]).unwrap();
            for v in &outer {
                acc = acc.add(&v.scale(gaussian(rng))).unwrap();
            }
            acc
        })
        .collect();
    let lat = Lattice::default();
    (
        lat.projector_from_basis(n, &inner).unwrap(),
        lat.projector_from_basis(n, &outer).unwrap(),
    )
}

/// Columns of a random unitary, from the QR factorization of a Gaussian matrix.
pub fn random_orthonormal_basis(rng: &mut ChaCha8Rng, n: usize) -> Vec<StateVector> {
    let m = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let q = m.qr().q();
    (0..n)
        .map(|j| StateVector::new(q.column(j).iter().copied().collect()).unwrap())
        .collect()
}

/// Two projectors diagonal in a shared random orthonormal basis.
pub fn random_commuting_pair(rng: &mut ChaCha8Rng, n: usize) -> (Projector, Projector) {
    let basis = random_orthonormal_basis(rng, n);
    let lat = Lattice::default();
    let pick = |rng: &mut ChaCha8Rng| {
        let chosen: Vec<StateVector> = basis
            .iter()
            .filter(|_| rng.random_bool(0.5))
            .cloned()
            .collect();
        lat.projector_from_basis(n, &chosen).unwrap()
    };
    let p = pick(rng);
    let q = pick(rng);
    (p, q)
}

/// Random formula over `atoms` of depth at most `depth`, without `=`.
pub fn random_formula(rng: &mut ChaCha8Rng, atoms: &[String], depth: usize) -> Formula {
    if depth == 0 || rng.random_bool(0.25) {
        return match rng.random_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => Formula::atom(atoms[rng.random_range(0..atoms.len())].clone()),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_formula(rng, atoms, depth - 1);
    match rng.random_range(0..5) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        _ => Formula::iff(sub(rng), sub(rng)),
    }
}

/// Proptest strategy over formulas on `atoms`, depth at most `depth`, `=` included.
pub fn arb_formula(atoms: &[&'static str], depth: u32) -> BoxedStrategy<Formula> {
    let names = atoms.to_vec();
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
