//! Random subspaces and small helpers shared by the integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subspace_angles::subspace::{gaussian_matrix, random_unitary};
use subspace_angles::{FieldTag, Matrix, Subspace, Tolerance, C64};

pub fn tol() -> Tolerance {
    Tolerance::default()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field_of(rng: &mut ChaCha8Rng) -> FieldTag {
    if rng.random_bool(0.5) {
        FieldTag::Real
    } else {
        FieldTag::Complex
    }
}

/// Span of `p` Gaussian vectors, keeping the raw vectors as its source basis.
pub fn gaussian_subspace(n: usize, p: usize, field: FieldTag, rng: &mut ChaCha8Rng) -> Subspace {
    Subspace::from_columns(field, gaussian_matrix(n, p, field, rng), &tol()).expect("finite input")
}

/// `k` random combinations of the basis of `s`.
pub fn random_combinations(s: &Subspace, k: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let coeffs = gaussian_matrix(s.dim(), k, s.field(), rng);
    s.basis().matmul(&coeffs).expect("shapes agree")
}

/// A random `k`-dimensional subspace of `s`.
pub fn random_subspace_of(s: &Subspace, k: usize, rng: &mut ChaCha8Rng) -> Subspace {
    assert!(k <= s.dim());
    let m = random_combinations(s, k, rng);
    Subspace::from_columns(s.field(), m, &tol()).expect("finite input")
}

/// `s` extended by `extra` random directions.
pub fn random_superspace(s: &Subspace, extra: usize, rng: &mut ChaCha8Rng) -> Subspace {
    let n = s.ambient_dim();
    let m = s
        .basis()
        .hstack(&gaussian_matrix(n, extra, s.field(), rng))
        .expect("same rows");
    Subspace::from_columns(s.field(), m, &tol()).expect("finite input")
}

/// The same subspace spanned by a different, non-orthonormal basis.
pub fn respanned(s: &Subspace, rng: &mut ChaCha8Rng) -> Subspace {
    let m = random_combinations(s, s.dim(), rng);
    Subspace::from_columns(s.field(), m, &tol()).expect("finite input")
}

pub fn unitary(n: usize, field: FieldTag, rng: &mut ChaCha8Rng) -> Matrix {
    random_unitary(n, field, rng)
}

/// A subspace related to `anchor` in a random way: equal, inside, around,
/// or unrelated. Produces containments and coincidences often.
pub fn related(anchor: &Subspace, rng: &mut ChaCha8Rng) -> Subspace {
    let (n, p) = (anchor.ambient_dim(), anchor.dim());
    match rng.random_range(0..5u8) {
        0 => respanned(anchor, rng),
        1 => {
            let k = rng.random_range(0..=p);
            random_subspace_of(anchor, k, rng)
        }
        2 => {
            let extra = rng.random_range(0..=n - p);
            random_superspace(anchor, extra, rng)
        }
        _ => {
            let q = rng.random_range(0..=n);
            gaussian_subspace(n, q, anchor.field(), rng)
        }
    }
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest singular value of `P_V - P_W`.
pub fn projector_distance(v: &Subspace, w: &Subspace) -> f64 {
    v.projector()
        .sub(&w.projector())
        .expect("same ambient")
        .operator_norm()
        .expect("finite")
}
