//! Dense field-generic linear algebra.
//!
//! Every matrix stores `Complex64` entries. Over the real field the imaginary
//! parts are kept at zero, so one code path serves both fields and the
//! [`FieldTag`] only decides validation and conjugation semantics.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{dim_err, domain_err, Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Largest amount by which a cosine may exceed 1 before it is treated as an
/// error instead of roundoff.
pub const COSINE_OVERSHOOT: f64 = 1e-8;

const MAX_JACOBI_SWEEPS: usize = 80;

/// The scalar field of a vector space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Real,
    Complex,
}

impl FieldTag {
    pub fn conj(self, x: C64) -> C64 {
        match self {
            FieldTag::Real => x,
            FieldTag::Complex => x.conj(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FieldTag::Real => "real",
            FieldTag::Complex => "complex",
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Numerical thresholds shared by all decisions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Relative singular-value cutoff for rank decisions.
    pub rank_tol: f64,
    /// Absolute angle threshold (radians) for "zero" and "right" angles.
    pub angle_tol: f64,
    /// Absolute threshold for comparing against golden values.
    pub match_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rank_tol: 1e-10,
            angle_tol: 1e-9,
            match_tol: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x >= 0.0;
        if ok(self.rank_tol) && ok(self.angle_tol) && ok(self.match_tol) {
            Ok(())
        } else {
            Err(domain_err("tolerances must be finite and nonnegative"))
        }
    }
}

/// Dense row-major matrix of complex scalars.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                if z.im == 0.0 {
                    write!(f, "{:>10.6} ", z.re)?;
                } else {
                    write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(dim_err(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(dim_err("rows have different lengths"));
        }
        let data = rows.iter().flatten().copied().collect();
        Self::from_row_major(rows.len(), cols, data)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Builds an `n x k` matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<C64>]) -> Result<Self> {
        let mut m = Self::zeros(n, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != n {
                return Err(dim_err(format!(
                    "column {j} has length {}, expected {n}",
                    c.len()
                )));
            }
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Ok(m)
    }

    pub fn from_real_columns(n: usize, columns: &[Vec<f64>]) -> Result<Self> {
        let cols: Vec<Vec<C64>> = columns
            .iter()
            .map(|c| c.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_columns(n, &cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<C64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C64]) {
        debug_assert_eq!(v.len(), self.rows);
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for (k, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, k)] = self[(i, j)];
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            m.data[k * self.cols..(k + 1) * self.cols].copy_from_slice(self.row(i));
        }
        m
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(dim_err(format!(
                "cannot stack {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        Ok(m)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(dim_err(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    m.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(m)
    }

    /// `self^H * other`, the matrix of inner products of columns.
    pub fn adjoint_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(dim_err(format!(
                "cannot form A^H B for {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Matrix::zeros(self.cols, other.cols);
        for k in 0..self.rows {
            for i in 0..self.cols {
                let a = self[(k, i)].conj();
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    m.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(m)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(C64, C64) -> C64) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(dim_err(format!(
                "shape {:?} does not match {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: C64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> Result<f64> {
        Ok(svd(self)?.sigma.first().copied().unwrap_or(0.0))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics on a shape mismatch; use [`Matrix::matmul`] for a fallible product.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs).expect("matrix shapes must agree")
    }
}

/// Inner product, conjugate-linear in the first argument.
pub fn inner(v: &[C64], w: &[C64], field: FieldTag) -> Result<C64> {
    if v.len() != w.len() {
        return Err(dim_err(format!(
            "vectors of length {} and {}",
            v.len(),
            w.len()
        )));
    }
    Ok(v.iter().zip(w).map(|(&a, &b)| field.conj(a) * b).sum())
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Gram matrix of the columns: entry `(i, j)` is `<col_i, col_j>`.
pub fn gram(columns: &Matrix, field: FieldTag) -> Matrix {
    let mut g = columns.adjoint_mul(columns).expect("same row count");
    if field == FieldTag::Real {
        for z in &mut g.data {
            z.im = 0.0;
        }
    }
    g
}

/// Thin singular value decomposition `m = u * diag(sigma) * v^H`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows x k` with orthonormal columns, `k = min(rows, cols)`.
    pub u: Matrix,
    /// Nonincreasing, nonnegative.
    pub sigma: Vec<f64>,
    /// `cols x k` with orthonormal columns.
    pub v: Matrix,
}

/// One-sided (Hestenes) Jacobi SVD.
///
/// Deterministic for a fixed input: the sweep order is fixed and ties in the
/// final sort keep their column order.
pub fn svd(m: &Matrix) -> Result<Svd> {
    if !m.is_finite() {
        return Err(Error::Numerical("svd input has non-finite entries".into()));
    }
    if m.rows < m.cols {
        let t = jacobi_tall(&m.adjoint())?;
        return Ok(Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        });
    }
    jacobi_tall(m)
}

fn jacobi_tall(m: &Matrix) -> Result<Svd> {
    let (rows, cols) = m.shape();
    // Column-major working copies so rotations touch contiguous memory.
    let mut a: Vec<Vec<C64>> = m.columns();
    let mut v: Vec<Vec<C64>> = Matrix::identity(cols).columns();

    // Columns at roundoff level relative to the whole matrix carry no
    // information; rotating them only chases noise.
    let noise = (f64::EPSILON * m.frobenius_norm()).powi(2);
    let mut converged = cols < 2;
    for _ in 0..MAX_JACOBI_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for i in 0..cols {
            for j in (i + 1)..cols {
                let (alpha, beta, g) = {
                    let (x, y) = (&a[i], &a[j]);
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut g = ZERO;
                    for k in 0..rows {
                        alpha += x[k].norm_sqr();
                        beta += y[k].norm_sqr();
                        g += x[k].conj() * y[k];
                    }
                    (alpha, beta, g)
                };
                let gabs = g.norm();
                if gabs == 0.0
                    || gabs <= f64::EPSILON * (alpha * beta).sqrt()
                    || alpha <= noise
                    || beta <= noise
                {
                    continue;
                }
                rotated = true;
                let phase = (g / gabs).conj();
                let zeta = (beta - alpha) / (2.0 * gabs);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut a, i, j, c, s, phase);
                rotate_pair(&mut v, i, j, c, s, phase);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "Jacobi SVD did not converge in {MAX_JACOBI_SWEEPS} sweeps"
        )));
    }

    let norms: Vec<f64> = a.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&p, &q| norms[q].total_cmp(&norms[p]));

    let sigma: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    // Left vectors of tiny singular values are mostly roundoff, so each one is
    // reorthogonalized against the previous ones and replaced by a canonical
    // completion if little survives.
    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(cols);
    let mut missing = Vec::new();
    for (pos, &k) in order.iter().enumerate() {
        let mut col = vec![ZERO; rows];
        if norms[k] > noise.sqrt() && norms[k] > f64::MIN_POSITIVE {
            col = a[k].iter().map(|&z| z / norms[k]).collect();
            for _ in 0..2 {
                for b in u_cols.iter().filter(|b| norm(b) > 0.0) {
                    let c: C64 = b.iter().zip(&col).map(|(&x, &y)| x.conj() * y).sum();
                    for (ci, &bi) in col.iter_mut().zip(b) {
                        *ci -= c * bi;
                    }
                }
            }
            let nc = norm(&col);
            if nc > 0.5 {
                col.iter_mut().for_each(|z| *z /= nc);
            } else {
                col = vec![ZERO; rows];
            }
        }
        if norm(&col) == 0.0 {
            missing.push(pos);
        }
        u_cols.push(col);
    }
    if !missing.is_empty() {
        let found: Vec<Vec<C64>> = u_cols
            .iter()
            .enumerate()
            .filter(|(p, _)| !missing.contains(p))
            .map(|(_, c)| c.clone())
            .collect();
        let extra = complete_orthonormal(rows, &found, missing.len());
        for (pos, col) in missing.into_iter().zip(extra) {
            u_cols[pos] = col;
        }
    }
    let v_cols: Vec<Vec<C64>> = order.iter().map(|&k| v[k].clone()).collect();
    Ok(Svd {
        u: Matrix::from_columns(rows, &u_cols)?,
        sigma,
        v: Matrix::from_columns(cols, &v_cols)?,
    })
}

fn rotate_pair(cols: &mut [Vec<C64>], i: usize, j: usize, c: f64, s: f64, phase: C64) {
    let (left, right) = cols.split_at_mut(j);
    let (x, y) = (&mut left[i], &mut right[0]);
    for k in 0..x.len() {
        let xi = x[k];
        let yt = y[k] * phase;
        x[k] = xi * c - yt * s;
        y[k] = xi * s + yt * c;
    }
}

/// Extends an orthonormal family of vectors in `F^n` by `count` further
/// orthonormal vectors.
///
/// Canonical basis vectors are orthogonalized against everything chosen so
/// far, in index order, and accepted when their residual exceeds
/// `1/sqrt(2n)`. Some canonical vector always has residual at least
/// `1/sqrt(n)` against a proper subspace, so the scan never runs dry.
pub fn complete_orthonormal(n: usize, found: &[Vec<C64>], count: usize) -> Vec<Vec<C64>> {
    let threshold = 1.0 / (2.0 * n.max(1) as f64).sqrt();
    let mut basis: Vec<Vec<C64>> = found.to_vec();
    let mut extra = Vec::with_capacity(count);
    for k in 0..n {
        if extra.len() == count {
            break;
        }
        let mut r = vec![ZERO; n];
        r[k] = ONE;
        for _ in 0..2 {
            for b in &basis {
                let c: C64 = b.iter().zip(&r).map(|(&x, &y)| x.conj() * y).sum();
                for (ri, &bi) in r.iter_mut().zip(b) {
                    *ri -= c * bi;
                }
            }
        }
        let nr = norm(&r);
        if nr > threshold {
            let unit: Vec<C64> = r.iter().map(|&z| z / nr).collect();
            basis.push(unit.clone());
            extra.push(unit);
        }
    }
    debug_assert_eq!(
        extra.len(),
        count,
        "canonical completion ran out of vectors"
    );
    extra
}

/// Orthonormal basis of the column span.
///
/// The numerical rank counts singular values `>= rank_tol * sigma_max`
/// (absolute `rank_tol` when `sigma_max == 0`). Columns are processed by
/// modified Gram-Schmidt with reorthogonalization in input order; if that
/// disagrees with the SVD rank, the leading left singular vectors are used.
/// The first nonzero component of every output column is made real positive.
pub fn orthonormalize(columns: &Matrix, field: FieldTag, tol: &Tolerance) -> Result<Matrix> {
    let n = columns.rows();
    if columns.cols() == 0 || n == 0 {
        return Ok(Matrix::zeros(n, 0));
    }
    let dec = svd(columns)?;
    let smax = dec.sigma[0];
    let cutoff = if smax > 0.0 {
        tol.rank_tol * smax
    } else {
        tol.rank_tol
    };
    let rank = dec
        .sigma
        .iter()
        .filter(|&&s| s >= cutoff && s > 0.0)
        .count();

    let mut accepted: Vec<Vec<C64>> = Vec::with_capacity(rank);
    for j in 0..columns.cols() {
        let mut r = columns.column(j);
        for _ in 0..2 {
            for b in &accepted {
                let c: C64 = b.iter().zip(&r).map(|(&x, &y)| x.conj() * y).sum();
                for (ri, &bi) in r.iter_mut().zip(b) {
                    *ri -= c * bi;
                }
            }
        }
        let nr = norm(&r);
        if nr >= cutoff && nr > 0.0 {
            accepted.push(r.iter().map(|&z| z / nr).collect());
        }
    }
    if accepted.len() != rank {
        accepted = (0..rank).map(|k| dec.u.column(k)).collect();
    }
    for c in &mut accepted {
        fix_phase(c);
        if field == FieldTag::Real {
            for z in c.iter_mut() {
                z.im = 0.0;
            }
        }
    }
    Matrix::from_columns(n, &accepted)
}

/// Rotates a vector so its first non-negligible component is real positive.
pub fn fix_phase(v: &mut [C64]) {
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return;
    }
    if let Some(lead) = v.iter().copied().find(|z| z.norm() > 1e-10 * scale) {
        let ph = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= ph;
        }
    }
}

/// LU factorization with partial pivoting, returning the determinant.
pub fn determinant(m: &Matrix) -> Result<C64> {
    if m.rows() != m.cols() {
        return Err(dim_err(format!("determinant of {}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut det = ONE;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm()))
            .expect("nonempty range");
        if a[(p, k)] == ZERO {
            return Ok(ZERO);
        }
        if p != k {
            for j in 0..n {
                let t = a[(k, j)];
                a[(k, j)] = a[(p, j)];
                a[(p, j)] = t;
            }
            det = -det;
        }
        let pivot = a[(k, k)];
        det *= pivot;
        for i in (k + 1)..n {
            let f = a[(i, k)] / pivot;
            if f == ZERO {
                continue;
            }
            for j in k..n {
                let t = a[(k, j)];
                a[(i, j)] -= f * t;
            }
        }
    }
    Ok(det)
}

/// Solves `a * x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    if a.cols() != n || b.rows() != n {
        return Err(dim_err(format!(
            "cannot solve {}x{} system with {}x{} right-hand side",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut lu = a.clone();
    let mut x = b.clone();
    let scale = a.max_abs();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| lu[(i, k)].norm().total_cmp(&lu[(j, k)].norm()))
            .expect("nonempty range");
        if lu[(p, k)].norm() <= f64::EPSILON * scale * n as f64 {
            return Err(Error::DegenerateBasis("singular system".into()));
        }
        if p != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = t;
            }
            for j in 0..x.cols() {
                let t = x[(k, j)];
                x[(k, j)] = x[(p, j)];
                x[(p, j)] = t;
            }
        }
        let pivot = lu[(k, k)];
        for i in (k + 1)..n {
            let f = lu[(i, k)] / pivot;
            for j in k..n {
                let t = lu[(k, j)];
                lu[(i, j)] -= f * t;
            }
            for j in 0..x.cols() {
                let t = x[(k, j)];
                x[(i, j)] -= f * t;
            }
        }
    }
    for k in (0..n).rev() {
        for j in 0..x.cols() {
            let mut s = x[(k, j)];
            for i in (k + 1)..n {
                s -= lu[(k, i)] * x[(i, j)];
            }
            x[(k, j)] = s / lu[(k, k)];
        }
    }
    Ok(x)
}

/// Converts a cosine to an angle in `[0, pi/2]`, clamping roundoff.
pub fn cos_to_angle(c: f64) -> Result<f64> {
    if !c.is_finite() || !(-COSINE_OVERSHOOT..=1.0 + COSINE_OVERSHOOT).contains(&c) {
        return Err(Error::Numerical(format!("cosine {c} outside [0, 1]")));
    }
    Ok(c.clamp(0.0, 1.0).acos())
}

/// `1 - prod(1 - x_i)` for `x_i` in `[0, 1]` without cancellation.
pub fn one_minus_product_complement(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter()
        .fold(0.0, |acc, x| acc + (1.0 - acc) * x.clamp(0.0, 1.0))
}

/// `det(M^H M)`, the squared volume spanned by the columns.
///
/// Computed as the product of squared Gram-Schmidt residual norms, so a
/// nearly dependent set gives a tiny value with small absolute error rather
/// than the `sqrt(eps)`-sized noise of a determinant of the Gram matrix.
pub fn column_volume_sq(m: &Matrix) -> f64 {
    let mut done: Vec<Vec<C64>> = Vec::with_capacity(m.cols());
    let mut vol = 1.0;
    for j in 0..m.cols() {
        let mut r = m.column(j);
        for _ in 0..2 {
            for b in &done {
                let c: C64 = b.iter().zip(&r).map(|(&x, &y)| x.conj() * y).sum();
                for (ri, &bi) in r.iter_mut().zip(b) {
                    *ri -= c * bi;
                }
            }
        }
        let nr = norm(&r);
        vol *= nr * nr;
        if nr == 0.0 {
            return 0.0;
        }
        done.push(r.iter().map(|&z| z / nr).collect());
    }
    vol
}

/// `1 - det(I - N)` for `N` similar to a positive semidefinite matrix with
/// spectrum in `[0, 1]`.
///
/// When the determinant exceeds 1/2 every eigenvalue is below 1/2 and
/// `log det(I - N) = -Σ tr(N^k) / k` converges geometrically, which keeps
/// small results accurate.
pub fn one_minus_det_complement(n: &Matrix) -> Result<f64> {
    let size = n.rows();
    let d = determinant(&Matrix::identity(size).sub(n)?)?.re;
    if d <= 0.5 {
        return Ok(1.0 - d);
    }
    let mut power = n.clone();
    let mut log_det = 0.0;
    for k in 1..=400 {
        let term = (0..size).map(|i| power[(i, i)].re).sum::<f64>() / k as f64;
        log_det -= term;
        if term.abs() <= 1e-18 * log_det.abs() || term == 0.0 {
            return Ok(-log_det.exp_m1());
        }
        power = power.matmul(n)?;
    }
    Err(Error::Numerical(
        "trace series for 1 - det(I - N) did not converge".into(),
    ))
}
