//! Subspaces of `F^n`, principal angles and principal bases.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{dim_err, domain_err, Error, Result};
use crate::numerics::{
    self, complete_orthonormal, norm, orthonormalize, svd, FieldTag, Matrix, Tolerance, C64, ZERO,
};

/// A linear subspace of `F^n`, held as an orthonormal column basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    field: FieldTag,
    basis: Matrix,
    source: Option<Matrix>,
    rank_deficient: bool,
}

impl Subspace {
    /// Span of the columns of `columns` (an `n x k` matrix).
    ///
    /// Columns need not be orthonormal or independent. A rank-deficient input
    /// yields a smaller subspace and sets [`Subspace::is_rank_deficient`].
    pub fn from_columns(field: FieldTag, columns: Matrix, tol: &Tolerance) -> Result<Self> {
        if !columns.is_finite() {
            return Err(domain_err("basis has non-finite entries"));
        }
        if field == FieldTag::Real && !columns.is_real() {
            return Err(domain_err("real subspace given complex entries"));
        }
        let basis = orthonormalize(&columns, field, tol)?;
        let rank_deficient = basis.cols() < columns.cols();
        let source = (!rank_deficient && columns.cols() > 0).then_some(columns);
        Ok(Subspace {
            field,
            basis,
            source,
            rank_deficient,
        })
    }

    /// Span of the given vectors, each of length `n`.
    pub fn from_rows(
        field: FieldTag,
        n: usize,
        vectors: &[Vec<C64>],
        tol: &Tolerance,
    ) -> Result<Self> {
        Self::from_columns(field, Matrix::from_columns(n, vectors)?, tol)
    }

    pub fn from_real_rows(n: usize, vectors: &[Vec<f64>], tol: &Tolerance) -> Result<Self> {
        Self::from_columns(FieldTag::Real, Matrix::from_real_columns(n, vectors)?, tol)
    }

    /// Wraps columns that are already orthonormal, without re-orthonormalizing.
    pub(crate) fn from_orthonormal(field: FieldTag, basis: Matrix) -> Self {
        debug_assert!(
            basis.cols() == 0
                || numerics::gram(&basis, field)
                    .sub(&Matrix::identity(basis.cols()))
                    .is_ok_and(|d| d.max_abs() < 1e-8),
            "basis is not orthonormal"
        );
        Subspace {
            field,
            basis,
            source: None,
            rank_deficient: false,
        }
    }

    pub fn zero(n: usize, field: FieldTag) -> Self {
        Subspace::from_orthonormal(field, Matrix::zeros(n, 0))
    }

    pub fn full(n: usize, field: FieldTag) -> Self {
        Subspace::from_orthonormal(field, Matrix::identity(n))
    }

    /// Span of the canonical basis vectors with the given 0-based indices.
    pub fn coordinate(n: usize, field: FieldTag, indices: &[usize]) -> Result<Self> {
        if indices.iter().any(|&i| i >= n) {
            return Err(dim_err(format!("coordinate index outside 0..{n}")));
        }
        Ok(Subspace::from_orthonormal(
            field,
            Matrix::identity(n).select_columns(indices),
        ))
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// Orthonormal basis, one column per dimension.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// The caller's original spanning vectors when they were independent,
    /// otherwise the orthonormal basis.
    pub fn source_basis(&self) -> &Matrix {
        self.source.as_ref().unwrap_or(&self.basis)
    }

    /// Set when the input vectors were linearly dependent.
    pub fn is_rank_deficient(&self) -> bool {
        self.rank_deficient
    }

    /// Orthogonal projector `B B^H` onto the subspace.
    pub fn projector(&self) -> Matrix {
        self.basis
            .matmul(&self.basis.adjoint())
            .expect("square product")
    }

    /// Largest distance from a unit vector of `other` to `self`.
    pub fn containment_residual(&self, other: &Subspace) -> Result<f64> {
        check_pair(self, other)?;
        if other.is_zero() {
            return Ok(0.0);
        }
        let coeff = self.basis.adjoint_mul(&other.basis)?;
        let resid = other.basis.sub(&self.basis.matmul(&coeff)?)?;
        resid.operator_norm()
    }

    /// True when `other` lies in `self` up to a residual of `angle_tol`.
    pub fn contains(&self, other: &Subspace, tol: &Tolerance) -> Result<bool> {
        Ok(self.containment_residual(other)? <= tol.angle_tol.max(1e-12))
    }

    /// Image under a linear map of `F^n`.
    pub fn transform(&self, map: &Matrix, tol: &Tolerance) -> Result<Subspace> {
        if map.cols() != self.ambient_dim() {
            return Err(dim_err("map does not act on the ambient space"));
        }
        Subspace::from_columns(self.field, map.matmul(&self.basis)?, tol)
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace, tol: &Tolerance) -> Result<Subspace> {
        check_pair(self, other)?;
        let stacked = self.basis.hstack(&other.basis)?;
        let mut s = Subspace::from_columns(self.field, stacked, tol)?;
        s.source = None;
        s.rank_deficient = false;
        Ok(s)
    }

    /// `self ⊖ inner`: the orthogonal complement of `inner` inside `self`.
    pub fn relative_complement(&self, inner: &Subspace) -> Result<Subspace> {
        check_pair(self, inner)?;
        let coeff = inner.basis.adjoint_mul(&self.basis)?;
        let resid = self.basis.sub(&inner.basis.matmul(&coeff)?)?;
        let target = self.dim().saturating_sub(inner.dim());
        if target == 0 {
            return Ok(Subspace::zero(self.ambient_dim(), self.field));
        }
        let dec = svd(&resid)?;
        let cols: Vec<usize> = (0..target).collect();
        let mut basis = dec.u.select_columns(&cols);
        for j in 0..basis.cols() {
            let mut c = basis.column(j);
            numerics::fix_phase(&mut c);
            if self.field == FieldTag::Real {
                c.iter_mut().for_each(|z| z.im = 0.0);
            }
            basis.set_column(j, &c);
        }
        Ok(Subspace::from_orthonormal(self.field, basis))
    }

    /// Dimension of `self ∩ other` from the numerical rank of the stacked bases.
    pub fn intersection_dim(&self, other: &Subspace, tol: &Tolerance) -> Result<usize> {
        check_pair(self, other)?;
        let stacked = self.basis.hstack(&other.basis)?;
        let rank = numerical_rank(&stacked, tol)?;
        Ok(self.dim() + other.dim() - rank)
    }
}

/// Numerical rank with the relative cutoff of [`Tolerance::rank_tol`].
pub fn numerical_rank(m: &Matrix, tol: &Tolerance) -> Result<usize> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0);
    }
    let sigma = svd(m)?.sigma;
    let cutoff = if sigma[0] > 0.0 {
        tol.rank_tol * sigma[0]
    } else {
        tol.rank_tol
    };
    Ok(sigma.iter().filter(|&&s| s >= cutoff && s > 0.0).count())
}

pub(crate) fn check_pair(v: &Subspace, w: &Subspace) -> Result<()> {
    if v.ambient_dim() != w.ambient_dim() {
        return Err(dim_err(format!(
            "subspaces of F^{} and F^{}",
            v.ambient_dim(),
            w.ambient_dim()
        )));
    }
    if v.field != w.field {
        return Err(dim_err(format!(
            "subspaces over {} and {} fields",
            v.field, w.field
        )));
    }
    Ok(())
}

/// Principal angles and associated principal bases of a pair `(V, W)`.
#[derive(Debug, Clone)]
pub struct PrincipalDecomposition {
    /// `θ_1 <= ... <= θ_m`, `m = min(p, q)`, in radians.
    pub angles: Vec<f64>,
    /// `cos θ_i`, the singular values of the cross-Gram matrix.
    pub cosines: Vec<f64>,
    /// `sin θ_i`, from the residuals of the left principal vectors.
    pub sines: Vec<f64>,
    /// Orthonormal basis `e_1..e_p` of `V`.
    pub left_basis: Matrix,
    /// Orthonormal basis `f_1..f_q` of `W` with `<e_i, f_j> = δ_ij cos θ_i`.
    pub right_basis: Matrix,
}

impl PrincipalDecomposition {
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Number of angles below `angle_tol`, i.e. `dim(V ∩ W)`.
    pub fn zero_count(&self, tol: &Tolerance) -> usize {
        self.angles.iter().filter(|&&t| t < tol.angle_tol).count()
    }
}

/// Principal angles and bases via the SVD of `E°^H F°` for orthonormal bases.
pub fn principal_decomposition(
    v: &Subspace,
    w: &Subspace,
    _tol: &Tolerance,
) -> Result<PrincipalDecomposition> {
    check_pair(v, w)?;
    if v.is_zero() || w.is_zero() {
        return Err(domain_err("principal angles need nonzero subspaces"));
    }
    let (p, q) = (v.dim(), w.dim());
    let m = p.min(q);
    let cross = v.basis.adjoint_mul(&w.basis)?;
    let dec = svd(&cross)?;

    let u_full = complete_square(&dec.u, p);
    let v_full = complete_square(&dec.v, q);
    let left = v.basis.matmul(&u_full)?;
    let right = w.basis.matmul(&v_full)?;

    let mut cosines = Vec::with_capacity(m);
    for &s in dec.sigma.iter().take(m) {
        if s > 1.0 + numerics::COSINE_OVERSHOOT {
            return Err(Error::Numerical(format!("principal cosine {s} exceeds 1")));
        }
        cosines.push(s.min(1.0));
    }

    // sin θ_i = |e_i - P_W e_i|, accurate where arccos is not.
    let proj = w.basis.matmul(&w.basis.adjoint_mul(&left)?)?;
    let resid = left.sub(&proj)?;
    let sines: Vec<f64> = (0..m).map(|i| norm(&resid.column(i)).min(1.0)).collect();

    let mut angles = Vec::with_capacity(m);
    let mut floor = 0.0f64;
    for i in 0..m {
        let (c, s) = (cosines[i], sines[i]);
        let theta = if c * c >= 0.5 { s.asin() } else { c.acos() };
        floor = floor.max(theta);
        angles.push(floor);
    }
    Ok(PrincipalDecomposition {
        angles,
        cosines,
        sines,
        left_basis: left,
        right_basis: right,
    })
}

/// Extends a `k x m` matrix with orthonormal columns to a `k x k` unitary.
fn complete_square(m: &Matrix, k: usize) -> Matrix {
    let cols = m.columns();
    if cols.len() >= k {
        return m.clone();
    }
    let extra = complete_orthonormal(k, &cols, k - cols.len());
    let all: Vec<Vec<C64>> = cols.into_iter().chain(extra).collect();
    Matrix::from_columns(k, &all).expect("consistent lengths")
}

/// `dim W < dim V` or some principal angle equals π/2.
///
/// `V = {0}` is never partially orthogonal; a nonzero `V` always is to `{0}`.
pub fn is_partially_orthogonal(v: &Subspace, w: &Subspace, tol: &Tolerance) -> Result<bool> {
    check_pair(v, w)?;
    if v.is_zero() {
        return Ok(false);
    }
    if w.dim() < v.dim() {
        return Ok(true);
    }
    let dec = principal_decomposition(v, w, tol)?;
    Ok(dec
        .angles
        .iter()
        .any(|&t| t >= std::f64::consts::FRAC_PI_2 - tol.angle_tol))
}

/// Splits `W = W_P ⊕ W_⊥` along a principal basis: `W_P` pairs with `V`.
pub fn projective_split(
    v: &Subspace,
    w: &Subspace,
    tol: &Tolerance,
) -> Result<(Subspace, Subspace)> {
    check_pair(v, w)?;
    let n = v.ambient_dim();
    if v.is_zero() || w.is_zero() {
        return Ok((Subspace::zero(n, w.field), w.clone()));
    }
    let dec = principal_decomposition(v, w, tol)?;
    let m = dec.len();
    let head: Vec<usize> = (0..m).collect();
    let tail: Vec<usize> = (m..w.dim()).collect();
    Ok((
        Subspace::from_orthonormal(w.field, dec.right_basis.select_columns(&head)),
        Subspace::from_orthonormal(w.field, dec.right_basis.select_columns(&tail)),
    ))
}

/// The orthogonal projection `P_W(V)`.
pub fn project_onto(v: &Subspace, w: &Subspace, tol: &Tolerance) -> Result<Subspace> {
    check_pair(v, w)?;
    let n = v.ambient_dim();
    if v.is_zero() || w.is_zero() {
        return Ok(Subspace::zero(n, w.field));
    }
    let dec = principal_decomposition(v, w, tol)?;
    let keep: Vec<usize> = dec
        .angles
        .iter()
        .enumerate()
        .filter(|(_, &t)| t < std::f64::consts::FRAC_PI_2 - tol.angle_tol)
        .map(|(i, _)| i)
        .collect();
    Ok(Subspace::from_orthonormal(
        w.field,
        dec.right_basis.select_columns(&keep),
    ))
}

/// `V^⊥`, completed from canonical basis vectors in index order.
pub fn orthogonal_complement(v: &Subspace) -> Subspace {
    let n = v.ambient_dim();
    let extra = complete_orthonormal(n, &v.basis.columns(), n - v.dim());
    let basis = Matrix::from_columns(n, &extra).expect("consistent lengths");
    Subspace::from_orthonormal(v.field, basis)
}

/// The underlying real subspace of `R^{2n}` of a complex subspace.
///
/// Coordinate `k` of `C^n` maps to the real pair `(Re, Im)` at positions
/// `2k, 2k+1`; each basis column `b` contributes `b` and `i b`.
pub fn underlying_real(v: &Subspace) -> Result<Subspace> {
    if v.field != FieldTag::Complex {
        return Err(domain_err("underlying real space needs a complex subspace"));
    }
    let n = v.ambient_dim();
    let mut cols = Vec::with_capacity(2 * v.dim());
    for b in v.basis.columns() {
        let mut re = vec![ZERO; 2 * n];
        let mut im = vec![ZERO; 2 * n];
        for (k, z) in b.iter().enumerate() {
            re[2 * k] = C64::new(z.re, 0.0);
            re[2 * k + 1] = C64::new(z.im, 0.0);
            im[2 * k] = C64::new(-z.im, 0.0);
            im[2 * k + 1] = C64::new(z.re, 0.0);
        }
        cols.push(re);
        cols.push(im);
    }
    Ok(Subspace::from_orthonormal(
        FieldTag::Real,
        Matrix::from_columns(2 * n, &cols)?,
    ))
}

/// Maps a complex vector of `C^n` to its real image in `R^{2n}`.
pub fn realify_vector(v: &[C64]) -> Vec<C64> {
    v.iter()
        .flat_map(|z| [C64::new(z.re, 0.0), C64::new(z.im, 0.0)])
        .collect()
}

/// Independent standard normal entries; complex entries get normal real and imaginary parts.
pub fn gaussian_matrix(rows: usize, cols: usize, field: FieldTag, rng: &mut ChaCha8Rng) -> Matrix {
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = match field {
            FieldTag::Real => 0.0,
            FieldTag::Complex => StandardNormal.sample(rng),
        };
        data.push(C64::new(re, im));
    }
    Matrix::from_row_major(rows, cols, data).expect("sized to fit")
}

/// A `p`-dimensional subspace of `F^n` drawn from the invariant distribution.
pub fn random_subspace(n: usize, p: usize, field: FieldTag, seed: u64) -> Result<Subspace> {
    if p > n {
        return Err(domain_err(format!("cannot draw a {p}-subspace of F^{n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_subspace_with(n, p, field, &mut rng)
}

pub fn random_subspace_with(
    n: usize,
    p: usize,
    field: FieldTag,
    rng: &mut ChaCha8Rng,
) -> Result<Subspace> {
    if p > n {
        return Err(domain_err(format!("cannot draw a {p}-subspace of F^{n}")));
    }
    if p == 0 {
        return Ok(Subspace::zero(n, field));
    }
    let tol = Tolerance::default();
    loop {
        let g = gaussian_matrix(n, p, field, rng);
        let s = Subspace::from_columns(field, g, &tol)?;
        if s.dim() == p {
            let mut s = s;
            s.source = None;
            return Ok(s);
        }
    }
}

/// Haar-distributed unitary (orthogonal for the real field).
pub fn random_unitary(n: usize, field: FieldTag, rng: &mut ChaCha8Rng) -> Matrix {
    random_subspace_with(n, n, field, rng)
        .expect("n <= n")
        .basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn real_example() -> (Subspace, Subspace) {
        let h = FRAC_1_SQRT_2;
        let v =
            Subspace::from_real_rows(5, &[vec![h, 0., h, 0., 0.], vec![0., h, 0., h, 0.]], &tol())
                .unwrap();
        let w = Subspace::coordinate(5, FieldTag::Real, &[0, 1, 4]).unwrap();
        (v, w)
    }

    fn complex_example() -> (Subspace, Subspace) {
        let h = FRAC_1_SQRT_2;
        let r3 = 3f64.sqrt() / 2.0;
        let v = Subspace::from_rows(
            FieldTag::Complex,
            4,
            &[
                vec![c(h, 0.), c(h, 0.), c(0., 0.), c(0., 0.)],
                vec![c(0., 0.), c(0., 0.), c(0., 0.5), c(r3, 0.)],
            ],
            &tol(),
        )
        .unwrap();
        let w = Subspace::from_rows(
            FieldTag::Complex,
            4,
            &[
                vec![c(0.5, 0.5), c(0.5, -0.5), c(0., 0.), c(0., 0.)],
                vec![c(0., 0.), c(0., 0.), c(0., 1.), c(0., 0.)],
            ],
            &tol(),
        )
        .unwrap();
        (v, w)
    }

    #[test]
    fn real_example_angles() {
        let (v, w) = real_example();
        let d = principal_decomposition(&v, &w, &tol()).unwrap();
        assert_abs_diff_eq!(d.angles[0], FRAC_PI_4, epsilon = 1e-12);
        assert_abs_diff_eq!(d.angles[1], FRAC_PI_4, epsilon = 1e-12);
    }

    #[test]
    fn identical_subspaces_have_zero_angles() {
        let (v, _) = real_example();
        let d = principal_decomposition(&v, &v, &tol()).unwrap();
        assert!(d.angles.iter().all(|&t| t < 1e-14));
    }

    #[test]
    fn complex_example_angles() {
        let (v, w) = complex_example();
        let d = principal_decomposition(&v, &w, &tol()).unwrap();
        assert_abs_diff_eq!(d.angles[0], FRAC_PI_4, epsilon = 1e-12);
        assert_abs_diff_eq!(d.angles[1], FRAC_PI_3, epsilon = 1e-12);
    }

    #[test]
    fn principal_bases_are_biorthogonal() {
        let (v, w) = complex_example();
        let d = principal_decomposition(&v, &w, &tol()).unwrap();
        let cross = d.left_basis.adjoint_mul(&d.right_basis).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let z = cross[(i, j)];
                if i == j {
                    assert_abs_diff_eq!(z.re, d.angles[i].cos(), epsilon = 1e-12);
                    assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-12);
                } else {
                    assert_abs_diff_eq!(z.norm(), 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn zero_subspace_is_rejected() {
        let (v, _) = real_example();
        let z = Subspace::zero(5, FieldTag::Real);
        assert!(matches!(
            principal_decomposition(&v, &z, &tol()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn partial_orthogonality() {
        let plane = Subspace::coordinate(3, FieldTag::Real, &[0, 1]).unwrap();
        let line = Subspace::coordinate(3, FieldTag::Real, &[0]).unwrap();
        assert!(is_partially_orthogonal(&plane, &line, &tol()).unwrap());
        assert!(!is_partially_orthogonal(&line, &plane, &tol()).unwrap());
        let z = Subspace::zero(3, FieldTag::Real);
        assert!(!is_partially_orthogonal(&z, &line, &tol()).unwrap());
        assert!(is_partially_orthogonal(&line, &z, &tol()).unwrap());

        // [C] and [D] of the contraction example.
        let cc = Subspace::from_real_rows(
            5,
            &[
                vec![0., 1., 0., 0., 1.],
                vec![0., 0., 1., -1., 0.],
                vec![0., 0., 0., 1., 0.],
            ],
            &tol(),
        )
        .unwrap();
        let dd = Subspace::from_real_rows(
            5,
            &[
                vec![2., -1., 0., 0., 0.],
                vec![2., 0., 1., 0., 0.],
                vec![0., 0., 1., 0., 0.],
            ],
            &tol(),
        )
        .unwrap();
        assert!(is_partially_orthogonal(&cc, &dd, &tol()).unwrap());
    }

    #[test]
    fn projective_split_examples() {
        let line = Subspace::from_real_rows(3, &[vec![1., 1., 0.]], &tol()).unwrap();
        let full = Subspace::full(3, FieldTag::Real);
        let (wp, wperp) = projective_split(&line, &full, &tol()).unwrap();
        assert_eq!(wp.dim(), 1);
        assert!(wp.contains(&line, &tol()).unwrap());
        assert_eq!(wperp.dim(), 2);
        assert_abs_diff_eq!(
            line.basis().adjoint_mul(wperp.basis()).unwrap().max_abs(),
            0.0,
            epsilon = 1e-14
        );

        let (v, w) = real_example();
        let (wp, wperp) = projective_split(&v, &w, &tol()).unwrap();
        let f12 = Subspace::coordinate(5, FieldTag::Real, &[0, 1]).unwrap();
        let f5 = Subspace::coordinate(5, FieldTag::Real, &[4]).unwrap();
        assert!(f12.contains(&wp, &tol()).unwrap() && wp.dim() == 2);
        assert!(f5.contains(&wperp, &tol()).unwrap() && wperp.dim() == 1);

        let z = Subspace::zero(5, FieldTag::Real);
        let (wp, wperp) = projective_split(&z, &w, &tol()).unwrap();
        assert!(wp.is_zero());
        assert_eq!(wperp, w);
    }

    #[test]
    fn project_onto_examples() {
        let e1 = Subspace::coordinate(3, FieldTag::Real, &[0]).unwrap();
        let e23 = Subspace::coordinate(3, FieldTag::Real, &[1, 2]).unwrap();
        assert!(project_onto(&e1, &e23, &tol()).unwrap().is_zero());
        let e12 = Subspace::coordinate(3, FieldTag::Real, &[0, 1]).unwrap();
        let p = project_onto(&e1, &e12, &tol()).unwrap();
        assert!(p.contains(&e1, &tol()).unwrap() && p.dim() == 1);

        // P_W v for v = (1,0,1,0): least squares against w1=(0,1,1,0), w2=(1,2,2,-1)
        // gives coefficients (-1/2, 1/2), i.e. P_W v = (1/2, 1/2, 1/2, -1/2).
        let v = Subspace::from_real_rows(4, &[vec![1., 0., 1., 0.]], &tol()).unwrap();
        let w = Subspace::from_real_rows(4, &[vec![0., 1., 1., 0.], vec![1., 2., 2., -1.]], &tol())
            .unwrap();
        let p = project_onto(&v, &w, &tol()).unwrap();
        let expected = Subspace::from_real_rows(4, &[vec![0.5, 0.5, 0.5, -0.5]], &tol()).unwrap();
        assert_abs_diff_eq!(
            p.projector().sub(&expected.projector()).unwrap().max_abs(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn orthogonal_complement_examples() {
        let z = Subspace::zero(4, FieldTag::Complex);
        assert!(orthogonal_complement(&z).is_full());

        let e1 = Subspace::coordinate(3, FieldTag::Real, &[0]).unwrap();
        let comp = orthogonal_complement(&e1);
        let e23 = Subspace::coordinate(3, FieldTag::Real, &[1, 2]).unwrap();
        assert_eq!(comp.projector(), e23.projector());

        let (_, w) = real_example();
        let comp = orthogonal_complement(&w);
        let f34 = Subspace::coordinate(5, FieldTag::Real, &[2, 3]).unwrap();
        assert_abs_diff_eq!(
            comp.projector().sub(&f34.projector()).unwrap().max_abs(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn underlying_real_examples() {
        let (v, w) = complex_example();
        let vr = underlying_real(&v).unwrap();
        let h = FRAC_1_SQRT_2;
        let e1 = vr.basis().column(0);
        for (got, want) in e1.iter().zip([h, 0., h, 0., 0., 0., 0., 0.]) {
            assert_abs_diff_eq!(got.re, want, epsilon = 1e-15);
        }
        let wr = underlying_real(&w).unwrap();
        let d = principal_decomposition(&vr, &wr, &tol()).unwrap();
        let want = [FRAC_PI_4, FRAC_PI_4, FRAC_PI_3, FRAC_PI_3];
        for (got, want) in d.angles.iter().zip(want) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }

        let line = Subspace::from_rows(FieldTag::Complex, 2, &[vec![c(1., 1.), c(0., 2.)]], &tol())
            .unwrap();
        let lr = underlying_real(&line).unwrap();
        assert_eq!((lr.ambient_dim(), lr.dim()), (4, 2));
        assert!(underlying_real(&Subspace::full(2, FieldTag::Real)).is_err());
    }

    #[test]
    fn random_subspace_examples() {
        assert!(random_subspace(4, 0, FieldTag::Real, 1).unwrap().is_zero());
        assert!(random_subspace(4, 4, FieldTag::Complex, 1)
            .unwrap()
            .is_full());
        let a = random_subspace(6, 3, FieldTag::Complex, 99).unwrap();
        let b = random_subspace(6, 3, FieldTag::Complex, 99).unwrap();
        assert_eq!(a, b);
        assert!(random_subspace(3, 4, FieldTag::Real, 0).is_err());
    }

    #[test]
    fn rank_deficient_input_sets_flag() {
        let s = Subspace::from_real_rows(3, &[vec![1., 2., 3.], vec![2., 4., 6.]], &tol()).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.is_rank_deficient());
    }

    #[test]
    fn non_finite_input_is_rejected() {
        assert!(Subspace::from_real_rows(2, &[vec![f64::INFINITY, 0.]], &tol()).is_err());
    }

    #[test]
    fn right_angle_pairs() {
        let e1 = Subspace::coordinate(2, FieldTag::Real, &[0]).unwrap();
        let e2 = Subspace::coordinate(2, FieldTag::Real, &[1]).unwrap();
        let d = principal_decomposition(&e1, &e2, &tol()).unwrap();
        assert_eq!(d.angles, vec![FRAC_PI_2]);
    }
}
