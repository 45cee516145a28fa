//! The asymmetric angle Θ, the disjointness angle Υ and the supplementation
//! angle Ψ, each through principal angles, Gram determinants and exterior
//! algebra, plus the identities relating them.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain_err, Error, Result};
use crate::exterior::{self, blade_from_basis, MultiIndex, Multivector, Orientation};
use crate::numerics::{
    self, complete_orthonormal, determinant, gram, one_minus_product_complement, solve, FieldTag,
    Matrix, Tolerance, C64,
};
use crate::subspace::{
    check_pair, principal_decomposition, project_onto, underlying_real, PrincipalDecomposition,
    Subspace,
};

/// How an angle is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AngleRoute {
    /// Products of sines and cosines of principal angles.
    #[default]
    PrincipalAngles,
    /// Determinants of Gram matrices of the input bases.
    GramDeterminant,
    /// Norms of contractions, wedges and regressive products of blades.
    ExteriorAlgebra,
}

impl AngleRoute {
    pub const ALL: [AngleRoute; 3] = [
        AngleRoute::PrincipalAngles,
        AngleRoute::GramDeterminant,
        AngleRoute::ExteriorAlgebra,
    ];

    pub fn flag(self) -> &'static str {
        match self {
            AngleRoute::PrincipalAngles => "principal",
            AngleRoute::GramDeterminant => "gram",
            AngleRoute::ExteriorAlgebra => "exterior",
        }
    }
}

impl fmt::Display for AngleRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.flag())
    }
}

impl FromStr for AngleRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AngleRoute::ALL
            .into_iter()
            .find(|r| r.flag() == s)
            .ok_or_else(|| {
                domain_err(format!(
                    "unknown route {s:?}; expected principal, gram or exterior"
                ))
            })
    }
}

/// `atan2` of a sine and a cosine that are each accurate in absolute terms.
fn angle_from(sin: f64, cos: f64) -> f64 {
    sin.max(0.0).atan2(cos.max(0.0))
}

fn angle_from_sin2(x: f64) -> Result<f64> {
    if !x.is_finite()
        || !(-numerics::COSINE_OVERSHOOT..=1.0 + numerics::COSINE_OVERSHOOT).contains(&x)
    {
        return Err(Error::Numerical(format!("squared sine {x} outside [0, 1]")));
    }
    Ok(x.clamp(0.0, 1.0).sqrt().asin())
}

fn check_exterior_cap(n: usize) -> Result<()> {
    if n > exterior::MAX_AMBIENT {
        return Err(domain_err(format!(
            "exterior route supports ambient dimension up to {}, got {n}",
            exterior::MAX_AMBIENT
        )));
    }
    Ok(())
}

// Shared conventions for zero and full subspaces.

fn theta_convention(p: usize, q: usize) -> Option<f64> {
    if p == 0 {
        Some(0.0)
    } else if p > q {
        Some(FRAC_PI_2)
    } else {
        None
    }
}

fn upsilon_convention(p: usize, q: usize) -> Option<f64> {
    (p == 0 || q == 0).then_some(FRAC_PI_2)
}

fn psi_convention(p: usize, q: usize, n: usize) -> Option<f64> {
    if p == n || q == n {
        Some(FRAC_PI_2)
    } else if p == 0 || q == 0 {
        Some(0.0)
    } else {
        None
    }
}

/// Θ_{V,W}: how far `V` is from being contained in `W`, in `[0, π/2]`.
pub fn asymmetric_angle(
    v: &Subspace,
    w: &Subspace,
    route: AngleRoute,
    tol: &Tolerance,
) -> Result<f64> {
    check_pair(v, w)?;
    if let Some(t) = theta_convention(v.dim(), w.dim()) {
        return Ok(t);
    }
    match route {
        AngleRoute::PrincipalAngles => {
            let dec = principal_decomposition(v, w, tol)?;
            Ok(theta_from_principal(&dec))
        }
        AngleRoute::GramDeterminant => {
            gram_asymmetric_angle(v.source_basis(), w.source_basis(), v.field(), tol)
        }
        AngleRoute::ExteriorAlgebra => {
            exterior_asymmetric_angle(v.source_basis(), w.source_basis(), v.field())
        }
    }
}

fn theta_from_principal(dec: &PrincipalDecomposition) -> f64 {
    let cos: f64 = dec.cosines.iter().product();
    let sin2 = one_minus_product_complement(dec.sines.iter().map(|s| s * s));
    angle_from(sin2.sqrt(), cos)
}

/// Volume contraction factor of the projection `V -> W`: `cos Θ` over the
/// reals, `cos² Θ` over the complexes.
pub fn projection_factor(v: &Subspace, w: &Subspace, tol: &Tolerance) -> Result<f64> {
    check_pair(v, w)?;
    let (p, q) = (v.dim(), w.dim());
    if p == 0 {
        return Ok(1.0);
    }
    if p > q {
        return Ok(0.0);
    }
    let dec = principal_decomposition(v, w, tol)?;
    let cos: f64 = dec.cosines.iter().product();
    Ok(match v.field() {
        FieldTag::Real => cos,
        FieldTag::Complex => cos * cos,
    })
}

/// `(cos Θ_{V_R, W_R}, cos² Θ_{V,W})`, equal for every complex pair.
pub fn real_complex_relation_check(
    v: &Subspace,
    w: &Subspace,
    tol: &Tolerance,
) -> Result<(f64, f64)> {
    check_pair(v, w)?;
    if v.field() != FieldTag::Complex {
        return Err(domain_err(
            "the real/complex relation needs complex subspaces",
        ));
    }
    let vr = underlying_real(v)?;
    let wr = underlying_real(w)?;
    let lhs = asymmetric_angle(&vr, &wr, AngleRoute::PrincipalAngles, tol)?.cos();
    let rhs = asymmetric_angle(v, w, AngleRoute::PrincipalAngles, tol)?
        .cos()
        .powi(2);
    Ok((lhs, rhs))
}

/// Υ_{V,W}: zero exactly when `V ∩ W ≠ {0}`; symmetric.
pub fn disjointness_angle(
    v: &Subspace,
    w: &Subspace,
    route: AngleRoute,
    tol: &Tolerance,
) -> Result<f64> {
    check_pair(v, w)?;
    if let Some(t) = upsilon_convention(v.dim(), w.dim()) {
        return Ok(t);
    }
    match route {
        AngleRoute::PrincipalAngles => {
            let dec = principal_decomposition(v, w, tol)?;
            let sin: f64 = dec.sines.iter().product();
            let cos2 = one_minus_product_complement(dec.cosines.iter().map(|c| c * c));
            Ok(angle_from(sin, cos2.sqrt()))
        }
        AngleRoute::GramDeterminant => {
            gram_disjointness_angle(v.source_basis(), w.source_basis(), v.field(), tol)
        }
        AngleRoute::ExteriorAlgebra => {
            exterior_disjointness_angle(v.source_basis(), w.source_basis(), v.field())
        }
    }
}

/// Ψ together with a flag for pairs where it is ill-conditioned.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupplementationAngle {
    pub value: f64,
    /// Set when some principal angle lies in `[angle_tol, sqrt(angle_tol))`,
    /// so that `V + W = X` is decided close to the threshold.
    pub ill_conditioned: bool,
}

/// Ψ_{V,W}: zero exactly when `V + W ≠ X`; symmetric.
pub fn supplementation_angle(
    v: &Subspace,
    w: &Subspace,
    route: AngleRoute,
    tol: &Tolerance,
) -> Result<f64> {
    Ok(supplementation_angle_with_condition(v, w, route, tol)?.value)
}

pub fn supplementation_angle_with_condition(
    v: &Subspace,
    w: &Subspace,
    route: AngleRoute,
    tol: &Tolerance,
) -> Result<SupplementationAngle> {
    check_pair(v, w)?;
    let (p, q, n) = (v.dim(), w.dim(), v.ambient_dim());
    if let Some(t) = psi_convention(p, q, n) {
        return Ok(SupplementationAngle {
            value: t,
            ill_conditioned: false,
        });
    }
    let dec = principal_decomposition(v, w, tol)?;
    let ill_conditioned = dec
        .angles
        .iter()
        .any(|&t| t >= tol.angle_tol && t < tol.angle_tol.sqrt());
    let value = match route {
        AngleRoute::PrincipalAngles => principal_supplementation(v, w, &dec, tol)?,
        AngleRoute::GramDeterminant => {
            gram_supplementation_angle(v.source_basis(), w.basis(), v.field(), tol)?
        }
        AngleRoute::ExteriorAlgebra => {
            exterior_supplementation_angle(v.source_basis(), w.source_basis(), v.field())?
        }
    };
    Ok(SupplementationAngle {
        value,
        ill_conditioned,
    })
}

fn principal_supplementation(
    v: &Subspace,
    w: &Subspace,
    dec: &PrincipalDecomposition,
    tol: &Tolerance,
) -> Result<f64> {
    let (p, q, n) = (v.dim(), w.dim(), v.ambient_dim());
    let r = dec.zero_count(tol);
    let by_rank = v.intersection_dim(w, tol)?;
    if r != by_rank {
        return Err(Error::Numerical(format!(
            "dim(V ∩ W) is ambiguous: {r} principal angles below angle_tol, stacked rank gives {by_rank}"
        )));
    }
    if p + q - r != n {
        return Ok(0.0);
    }
    let sin: f64 = dec.sines[r..].iter().product();
    let cos2 = one_minus_product_complement(dec.cosines[r..].iter().map(|c| c * c));
    Ok(angle_from(sin, cos2.sqrt()))
}

// Gram determinant route. These accept arbitrary (independent) basis columns.

// Negated comparisons so that NaN counts as singular.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn hadamard_check(g: &Matrix, det: f64, what: &str, tol: &Tolerance) -> Result<()> {
    let diag: f64 = (0..g.rows()).map(|i| g[(i, i)].re).product();
    if !(diag > 0.0) || !(det / diag >= tol.rank_tol) {
        return Err(Error::DegenerateBasis(format!(
            "Gram matrix of the {what} basis is numerically singular"
        )));
    }
    Ok(())
}

/// The columns of `V` split along and across `W`, computed from Gram data.
struct GramSplit {
    det_a: f64,
    a: Matrix,
    /// `W B^{-1} C`, the projections of the `V` columns onto `W`.
    along: Matrix,
    /// `V - W B^{-1} C`.
    across: Matrix,
}

fn gram_split(
    v_cols: &Matrix,
    w_cols: &Matrix,
    field: FieldTag,
    tol: &Tolerance,
) -> Result<GramSplit> {
    let a = gram(v_cols, field);
    let b = gram(w_cols, field);
    let c = w_cols.adjoint_mul(v_cols)?;
    let det_a = determinant(&a)?.re;
    hadamard_check(&a, det_a, "first", tol)?;
    let det_b = determinant(&b)?.re;
    hadamard_check(&b, det_b, "second", tol)?;
    let along = w_cols.matmul(&solve(&b, &c)?)?;
    let across = v_cols.sub(&along)?;
    Ok(GramSplit {
        det_a,
        a,
        along,
        across,
    })
}

impl GramSplit {
    /// `det(X^H X) / det A`.
    fn volume_ratio(&self, x: &Matrix) -> f64 {
        numerics::column_volume_sq(x) / self.det_a
    }

    /// `1 - det(A^{-1} (A - X^H X))`.
    fn complement_ratio(&self, x: &Matrix, field: FieldTag) -> Result<f64> {
        let n = solve(&self.a, &gram(x, field))?;
        numerics::one_minus_det_complement(&n)
    }
}

fn check_unit_interval(x: f64, what: &str) -> Result<f64> {
    if !x.is_finite()
        || !(-numerics::COSINE_OVERSHOOT..=1.0 + numerics::COSINE_OVERSHOOT).contains(&x)
    {
        return Err(Error::Numerical(format!("{what} {x} outside [0, 1]")));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// Θ from `cos² Θ = det(C^H B^{-1} C) / det A`, with `A`, `B` the Gram
/// matrices of the two bases and `C` their cross inner products.
///
/// `C^H B^{-1} C` is the Gram matrix of the projected columns `P_W v_i`;
/// its determinant is taken as their squared volume, and `sin² Θ` as
/// `1 - det(A^{-1}(A - C^H B^{-1} C))`.
pub fn gram_asymmetric_angle(
    v_cols: &Matrix,
    w_cols: &Matrix,
    field: FieldTag,
    tol: &Tolerance,
) -> Result<f64> {
    let (p, q, n) = (v_cols.cols(), w_cols.cols(), v_cols.rows());
    if let Some(t) = theta_convention(p, q) {
        return Ok(t);
    }
    if q == n {
        return Ok(0.0);
    }
    let split = gram_split(v_cols, w_cols, field, tol)?;
    let cos2 = check_unit_interval(split.volume_ratio(&split.along), "squared cosine")?;
    let sin2 = check_unit_interval(
        split.complement_ratio(&split.across, field)?,
        "squared sine",
    )?;
    Ok(angle_from(sin2.sqrt(), cos2.sqrt()))
}

/// Υ from `sin² Υ = det(A - C^H B^{-1} C) / det A`.
pub fn gram_disjointness_angle(
    v_cols: &Matrix,
    w_cols: &Matrix,
    field: FieldTag,
    tol: &Tolerance,
) -> Result<f64> {
    let (p, q, n) = (v_cols.cols(), w_cols.cols(), v_cols.rows());
    if let Some(t) = upsilon_convention(p, q) {
        return Ok(t);
    }
    if p + q > n {
        return Ok(0.0);
    }
    let split = gram_split(v_cols, w_cols, field, tol)?;
    let sin2 = check_unit_interval(split.volume_ratio(&split.across), "squared sine")?;
    let cos2 = check_unit_interval(
        split.complement_ratio(&split.along, field)?,
        "squared cosine",
    )?;
    Ok(angle_from(sin2.sqrt(), cos2.sqrt()))
}

/// Ψ from `sin² Ψ = Σ |det M_i|² / det A`, where `M_i` stacks the `V`
/// columns with `n - p` columns of an orthonormal `W` basis.
pub fn gram_supplementation_angle(
    v_cols: &Matrix,
    w_orthonormal: &Matrix,
    field: FieldTag,
    tol: &Tolerance,
) -> Result<f64> {
    let (p, q, n) = (v_cols.cols(), w_orthonormal.cols(), v_cols.rows());
    if let Some(t) = psi_convention(p, q, n) {
        return Ok(t);
    }
    if p + q < n {
        return Ok(0.0);
    }
    let a = gram(v_cols, field);
    let det_a = determinant(&a)?.re;
    hadamard_check(&a, det_a, "first", tol)?;
    let mut total = 0.0;
    for idx in MultiIndex::all_of_grade(q, n - p) {
        let cols: Vec<usize> = idx.indices().iter().map(|i| i - 1).collect();
        let m = v_cols.hstack(&w_orthonormal.select_columns(&cols))?;
        total += determinant(&m)?.norm_sqr();
    }
    angle_from_sin2(total / det_a)
}

// Exterior algebra route.

/// `(cos Θ, sin Θ)` between `[a]` and `[b_unit]` for a `p`-blade `a` and a unit
/// `q`-blade `b_unit`, `p <= q`.
///
/// The sine comes from `|a - P a|` with `P a = ±(a ⌟ b) ⌟ b`, which stays
/// accurate for nearly contained pairs.
fn exterior_cos_sin(
    a: &Multivector,
    b_unit: &Multivector,
    p: usize,
    q: usize,
) -> Result<(f64, f64)> {
    let na = a.norm();
    let inner = exterior::contraction(a, b_unit)?;
    let cos = inner.norm() / na;
    let sign = if (p * (q - p)).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let proj = exterior::contraction(&inner, b_unit)?.scale(C64::new(sign, 0.0));
    let sin = a.sub(&proj)?.norm() / na;
    Ok((cos, sin))
}

fn unit_blade(cols: &Matrix, field: FieldTag) -> Result<Multivector> {
    let b = blade_from_basis(cols, field)?;
    let nb = b.norm();
    if nb == 0.0 {
        return Err(Error::DegenerateBasis("basis columns are dependent".into()));
    }
    Ok(b.scale(C64::new(1.0 / nb, 0.0)))
}

/// Θ from `|A ⌟ B| = |A| |B| cos Θ`.
pub fn exterior_asymmetric_angle(v_cols: &Matrix, w_cols: &Matrix, field: FieldTag) -> Result<f64> {
    let (p, q, n) = (v_cols.cols(), w_cols.cols(), v_cols.rows());
    check_exterior_cap(n)?;
    if let Some(t) = theta_convention(p, q) {
        return Ok(t);
    }
    let a = unit_blade(v_cols, field)?;
    let b = unit_blade(w_cols, field)?;
    let (cos, sin) = exterior_cos_sin(&a, &b, p, q)?;
    Ok(angle_from(sin, cos))
}

/// Υ from `|A ∧ B| = |A| |B| sin Υ`.
pub fn exterior_disjointness_angle(
    v_cols: &Matrix,
    w_cols: &Matrix,
    field: FieldTag,
) -> Result<f64> {
    let (p, q, n) = (v_cols.cols(), w_cols.cols(), v_cols.rows());
    check_exterior_cap(n)?;
    if let Some(t) = upsilon_convention(p, q) {
        return Ok(t);
    }
    let a = unit_blade(v_cols, field)?;
    let b = unit_blade(w_cols, field)?;
    let sin = exterior::wedge(&a, &b)?.norm();
    // cos Υ = sin Θ_{V, W^⊥}, with W^⊥ represented by B*.
    let cos = if p + q <= n {
        let omega = Orientation::canonical(n, field)?;
        let b_star = exterior::star(&b, &omega)?;
        exterior_cos_sin(&a, &b_star, p, n - q)?.1
    } else {
        1.0
    };
    Ok(angle_from(sin, cos))
}

/// Ψ from `|A ∨ B| = |A| |B| sin Ψ`.
pub fn exterior_supplementation_angle(
    v_cols: &Matrix,
    w_cols: &Matrix,
    field: FieldTag,
) -> Result<f64> {
    let (p, q, n) = (v_cols.cols(), w_cols.cols(), v_cols.rows());
    check_exterior_cap(n)?;
    if let Some(t) = psi_convention(p, q, n) {
        return Ok(t);
    }
    let a = unit_blade(v_cols, field)?;
    let b = unit_blade(w_cols, field)?;
    let omega = Orientation::canonical(n, field)?;
    let sin = exterior::regressive(&a, &b, &omega)?.norm();
    // cos Ψ = sin Θ_{V^⊥, W}, with V^⊥ represented by A*.
    let cos = if n - p <= q {
        let a_star = exterior::star(&a, &omega)?;
        exterior_cos_sin(&a_star, &b, n - p, q)?.1
    } else {
        1.0
    };
    Ok(angle_from(sin, cos))
}

// Identities.

fn check_orthonormal_basis(basis: &Matrix, field: FieldTag, n: usize) -> Result<()> {
    if basis.rows() != n || basis.cols() != n {
        return Err(domain_err(format!(
            "expected {n} basis vectors of length {n}, got a {}x{} matrix",
            basis.rows(),
            basis.cols()
        )));
    }
    let dev = gram(basis, field).sub(&Matrix::identity(n))?.max_abs();
    if dev > 1e-9 {
        return Err(domain_err(format!(
            "basis is not orthonormal (deviation {dev:.3e})"
        )));
    }
    Ok(())
}

/// Θ_{V,[w_i]} for every coordinate `p`-subspace of an orthonormal basis.
///
/// `basis` holds the basis vectors as columns.
pub fn coordinate_angles(
    v: &Subspace,
    basis: &Matrix,
    tol: &Tolerance,
) -> Result<Vec<(MultiIndex, f64)>> {
    let n = v.ambient_dim();
    check_orthonormal_basis(basis, v.field(), n)?;
    if n > exterior::MAX_AMBIENT {
        return Err(domain_err(
            "coordinate subspaces are indexed up to dimension 20",
        ));
    }
    MultiIndex::all_of_grade(n, v.dim())
        .into_iter()
        .map(|idx| {
            let cols: Vec<usize> = idx.indices().iter().map(|i| i - 1).collect();
            let coord = Subspace::from_columns(v.field(), basis.select_columns(&cols), tol)?;
            Ok((
                idx,
                asymmetric_angle(v, &coord, AngleRoute::PrincipalAngles, tol)?,
            ))
        })
        .collect()
}

/// `Σ_i cos² Θ_{V,[w_i]}` over all coordinate `p`-subspaces; equals 1.
pub fn pythagorean_sum(v: &Subspace, basis: &Matrix, tol: &Tolerance) -> Result<f64> {
    if v.is_zero() {
        return Err(domain_err(
            "the Pythagorean identity needs a nonzero subspace",
        ));
    }
    Ok(coordinate_angles(v, basis, tol)?
        .into_iter()
        .map(|(_, t)| t.cos().powi(2))
        .sum())
}

/// `(Σ cos² Θ_{V,[f_i]}, sin² Θ_{V,W})`, the sum running over coordinate
/// subspaces of a principal basis of `W` (completed to all of `X`) that are
/// not inside `W`.
pub fn sine_identity_sum(v: &Subspace, w: &Subspace, tol: &Tolerance) -> Result<(f64, f64)> {
    check_pair(v, w)?;
    if v.is_zero() || w.is_zero() {
        return Err(domain_err("the sine identity needs nonzero subspaces"));
    }
    let n = v.ambient_dim();
    let q = w.dim();
    let dec = principal_decomposition(v, w, tol)?;
    let found = dec.right_basis.columns();
    let extra = complete_orthonormal(n, &found, n - q);
    let all: Vec<Vec<C64>> = found.into_iter().chain(extra).collect();
    let basis = Matrix::from_columns(n, &all)?;
    let inside = MultiIndex::full(q);
    let sum = coordinate_angles(v, &basis, tol)?
        .into_iter()
        .filter(|(idx, _)| !idx.is_subset_of(inside))
        .map(|(_, t)| t.cos().powi(2))
        .sum();
    let sin2 = asymmetric_angle(v, w, AngleRoute::PrincipalAngles, tol)?
        .sin()
        .powi(2);
    Ok((sum, sin2))
}

/// `(cos Θ_{V,W'}, cos Θ_{V,P_W(V)} · cos Θ_{P_W(V),W'})` for `W' ⊂ W`.
pub fn spherical_pythagorean_check(
    v: &Subspace,
    w: &Subspace,
    w_sub: &Subspace,
    tol: &Tolerance,
) -> Result<(f64, f64)> {
    check_pair(v, w)?;
    check_pair(w, w_sub)?;
    let resid = w.containment_residual(w_sub)?;
    if resid >= 1e-9 {
        return Err(domain_err(format!(
            "W' is not contained in W (residual {resid:.3e})"
        )));
    }
    let route = AngleRoute::PrincipalAngles;
    let pv = project_onto(v, w, tol)?;
    let lhs = asymmetric_angle(v, w_sub, route, tol)?.cos();
    let rhs = asymmetric_angle(v, &pv, route, tol)?.cos()
        * asymmetric_angle(&pv, w_sub, route, tol)?.cos();
    Ok((lhs, rhs))
}

/// `(cos Θ_{V'⊕V'',W}, cos Θ_{V',W'} · cos Θ_{V'',W''})` with `W' = P_W(V')`
/// and `W''` its orthogonal complement in `W`.
pub fn orthogonal_partition_check(
    v1: &Subspace,
    v2: &Subspace,
    w: &Subspace,
    tol: &Tolerance,
) -> Result<(f64, f64)> {
    check_pair(v1, v2)?;
    check_pair(v1, w)?;
    let overlap = v1.basis().adjoint_mul(v2.basis())?.max_abs();
    if overlap > 1e-9 {
        return Err(domain_err(format!(
            "V' and V'' are not orthogonal (overlap {overlap:.3e})"
        )));
    }
    let route = AngleRoute::PrincipalAngles;
    let v = v1.sum(v2, tol)?;
    let w1 = project_onto(v1, w, tol)?;
    let w2 = w.relative_complement(&w1)?;
    let lhs = asymmetric_angle(&v, w, route, tol)?.cos();
    let rhs =
        asymmetric_angle(v1, &w1, route, tol)?.cos() * asymmetric_angle(v2, &w2, route, tol)?.cos();
    Ok((lhs, rhs))
}

/// All angles of an ordered pair of subspaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleReport {
    pub theta_vw: f64,
    pub theta_wv: f64,
    pub upsilon: f64,
    pub psi: f64,
    pub psi_ill_conditioned: bool,
    pub principal_angles: Vec<f64>,
    pub projection_factor: f64,
    /// `(p, q, n)`.
    pub dims: (usize, usize, usize),
    pub route: AngleRoute,
}

impl AngleReport {
    /// `max(Υ, Ψ) <= θ_i <= Θ` for every nonzero principal angle `θ_i`.
    pub fn ordering_holds(&self, slack: f64) -> bool {
        self.principal_angles
            .iter()
            .filter(|&&t| t > slack)
            .all(|&t| self.upsilon.max(self.psi) <= t + slack && t <= self.theta_vw + slack)
    }
}

pub fn angle_report(
    v: &Subspace,
    w: &Subspace,
    route: AngleRoute,
    tol: &Tolerance,
) -> Result<AngleReport> {
    check_pair(v, w)?;
    let principal_angles = if v.is_zero() || w.is_zero() {
        Vec::new()
    } else {
        principal_decomposition(v, w, tol)?.angles
    };
    let psi = supplementation_angle_with_condition(v, w, route, tol)?;
    Ok(AngleReport {
        theta_vw: asymmetric_angle(v, w, route, tol)?,
        theta_wv: asymmetric_angle(w, v, route, tol)?,
        upsilon: disjointness_angle(v, w, route, tol)?,
        psi: psi.value,
        psi_ill_conditioned: psi.ill_conditioned,
        principal_angles,
        projection_factor: projection_factor(v, w, tol)?,
        dims: (v.dim(), w.dim(), v.ambient_dim()),
        route,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::orthogonal_complement;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    const ANGLE_EPS: f64 = 1e-7;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn real(n: usize, rows: &[Vec<f64>]) -> Subspace {
        Subspace::from_real_rows(n, rows, &tol()).unwrap()
    }

    fn all_routes(f: impl Fn(AngleRoute) -> f64, want: f64) {
        for route in AngleRoute::ALL {
            let got = f(route);
            assert!(
                (got - want).abs() < ANGLE_EPS,
                "{route}: got {got}, want {want}"
            );
        }
    }

    // Contraction example in R^5.
    fn blades() -> [Subspace; 4] {
        [
            real(5, &[vec![2., -1., 0., 0., 0.], vec![2., 0., 1., 0., 0.]]),
            real(5, &[vec![0., 1., 0., 0., 1.], vec![0., 0., 1., -1., 0.]]),
            real(
                5,
                &[
                    vec![0., 1., 0., 0., 1.],
                    vec![0., 0., 1., -1., 0.],
                    vec![0., 0., 0., 1., 0.],
                ],
            ),
            real(
                5,
                &[
                    vec![2., -1., 0., 0., 0.],
                    vec![2., 0., 1., 0., 0.],
                    vec![0., 0., 1., 0., 0.],
                ],
            ),
        ]
    }

    #[test]
    fn contraction_example_all_routes() {
        let [a, b, cc, d] = blades();
        let t = tol();
        all_routes(
            |r| asymmetric_angle(&a, &b, r, &t).unwrap(),
            (1.0f64 / 6.0).acos(),
        );
        all_routes(
            |r| asymmetric_angle(&a, &cc, r, &t).unwrap(),
            (1.0 / (3.0 * 2f64.sqrt())).acos(),
        );
        all_routes(|r| asymmetric_angle(&cc, &d, r, &t).unwrap(), FRAC_PI_2);

        all_routes(
            |r| disjointness_angle(&a, &b, r, &t).unwrap(),
            (17f64.sqrt() / 6.0).asin(),
        );
        all_routes(
            |r| disjointness_angle(&a, &cc, r, &t).unwrap(),
            (2f64.sqrt() / 3.0).asin(),
        );
        all_routes(|r| disjointness_angle(&cc, &d, r, &t).unwrap(), 0.0);

        all_routes(|r| supplementation_angle(&a, &b, r, &t).unwrap(), 0.0);
        all_routes(
            |r| supplementation_angle(&a, &cc, r, &t).unwrap(),
            (2f64.sqrt() / 3.0).asin(),
        );
        all_routes(
            |r| supplementation_angle(&cc, &d, r, &t).unwrap(),
            FRAC_PI_4,
        );
    }

    #[test]
    fn distinct_dimension_example() {
        let v = real(4, &[vec![1., 0., 1., 0.]]);
        let w = real(4, &[vec![0., 1., 1., 0.], vec![1., 2., 2., -1.]]);
        let t = tol();
        all_routes(|r| asymmetric_angle(&v, &w, r, &t).unwrap(), FRAC_PI_4);
        all_routes(|r| asymmetric_angle(&w, &v, r, &t).unwrap(), FRAC_PI_2);
        all_routes(|r| disjointness_angle(&v, &w, r, &t).unwrap(), FRAC_PI_4);
        all_routes(|r| disjointness_angle(&w, &v, r, &t).unwrap(), FRAC_PI_4);
        all_routes(|r| supplementation_angle(&v, &w, r, &t).unwrap(), 0.0);
    }

    fn xi_example() -> (Subspace, Subspace) {
        let xi = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let zero = c(0., 0.);
        let one = c(1., 0.);
        let v = Subspace::from_rows(
            FieldTag::Complex,
            3,
            &[vec![one, -xi, zero], vec![zero, xi, -xi * xi]],
            &tol(),
        )
        .unwrap();
        let w = Subspace::from_rows(
            FieldTag::Complex,
            3,
            &[vec![one, zero, zero], vec![zero, xi, zero]],
            &tol(),
        )
        .unwrap();
        (v, w)
    }

    #[test]
    fn complex_bases_example() {
        let (v, w) = xi_example();
        let t = tol();
        all_routes(
            |r| asymmetric_angle(&v, &w, r, &t).unwrap(),
            (1.0 / 3f64.sqrt()).acos(),
        );
        all_routes(|r| disjointness_angle(&v, &w, r, &t).unwrap(), 0.0);
        all_routes(
            |r| supplementation_angle(&v, &w, r, &t).unwrap(),
            (2.0f64 / 3.0).sqrt().asin(),
        );
    }

    #[test]
    fn planes_in_r4_do_not_supplement() {
        let v = real(4, &[vec![1., -1., 0., 1.], vec![0., 1., 1., -1.]]);
        let w = Subspace::coordinate(4, FieldTag::Real, &[0, 2]).unwrap();
        let t = tol();
        all_routes(|r| supplementation_angle(&v, &w, r, &t).unwrap(), 0.0);
    }

    fn real_example() -> (Subspace, Subspace) {
        let h = FRAC_1_SQRT_2;
        (
            real(5, &[vec![h, 0., h, 0., 0.], vec![0., h, 0., h, 0.]]),
            Subspace::coordinate(5, FieldTag::Real, &[0, 1, 4]).unwrap(),
        )
    }

    #[test]
    fn real_example_asymmetric_angles() {
        let (v, w) = real_example();
        let t = tol();
        all_routes(
            |r| asymmetric_angle(&v, &w, r, &t).unwrap(),
            60f64.to_radians(),
        );
        all_routes(|r| asymmetric_angle(&w, &v, r, &t).unwrap(), FRAC_PI_2);
        let wp = orthogonal_complement(&w);
        all_routes(
            |r| asymmetric_angle(&v, &wp, r, &t).unwrap(),
            60f64.to_radians(),
        );
        assert_abs_diff_eq!(projection_factor(&v, &w, &t).unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn sine_identity_example() {
        let (v, w) = real_example();
        let (sum, sin2) = sine_identity_sum(&v, &w, &tol()).unwrap();
        assert_abs_diff_eq!(sum, 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(sin2, 0.75, epsilon = 1e-12);

        let inner = Subspace::coordinate(5, FieldTag::Real, &[0]).unwrap();
        let (sum, sin2) = sine_identity_sum(&inner, &w, &tol()).unwrap();
        assert_abs_diff_eq!(sum, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(sin2, 0.0, epsilon = 1e-12);
    }

    fn complex_example() -> (Subspace, Subspace) {
        let h = FRAC_1_SQRT_2;
        let r3 = 3f64.sqrt() / 2.0;
        let z = c(0., 0.);
        (
            Subspace::from_rows(
                FieldTag::Complex,
                4,
                &[
                    vec![c(h, 0.), c(h, 0.), z, z],
                    vec![z, z, c(0., 0.5), c(r3, 0.)],
                ],
                &tol(),
            )
            .unwrap(),
            Subspace::from_rows(
                FieldTag::Complex,
                4,
                &[
                    vec![c(0.5, 0.5), c(0.5, -0.5), z, z],
                    vec![z, z, c(0., 1.), z],
                ],
                &tol(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn complex_example_factor() {
        let (v, w) = complex_example();
        let t = tol();
        assert_abs_diff_eq!(
            projection_factor(&v, &w, &t).unwrap(),
            0.125,
            epsilon = 1e-12
        );
        let (lhs, rhs) = real_complex_relation_check(&v, &w, &t).unwrap();
        assert_abs_diff_eq!(lhs, 0.125, epsilon = 1e-12);
        assert_abs_diff_eq!(rhs, 0.125, epsilon = 1e-12);
        let theta = asymmetric_angle(&v, &w, AngleRoute::PrincipalAngles, &t).unwrap();
        assert_abs_diff_eq!(theta.to_degrees(), 69.295, epsilon = 1e-3);
        assert!(real_complex_relation_check(&real_example().0, &real_example().1, &t).is_err());
    }

    #[test]
    fn pythagorean_examples() {
        let t = tol();
        let v = Subspace::from_rows(
            FieldTag::Complex,
            2,
            &[vec![c(0., 0.5), c(3f64.sqrt() / 2.0, 0.)]],
            &t,
        )
        .unwrap();
        let id2 = Matrix::identity(2);
        let angles = coordinate_angles(&v, &id2, &t).unwrap();
        assert_abs_diff_eq!(angles[0].1, 60f64.to_radians(), epsilon = 1e-12);
        assert_abs_diff_eq!(angles[1].1, 30f64.to_radians(), epsilon = 1e-12);
        assert_abs_diff_eq!(pythagorean_sum(&v, &id2, &t).unwrap(), 1.0, epsilon = 1e-12);

        let vr = underlying_real(&v).unwrap();
        assert_abs_diff_eq!(
            pythagorean_sum(&vr, &Matrix::identity(4), &t).unwrap(),
            1.0,
            epsilon = 1e-12
        );

        let coord = Subspace::coordinate(4, FieldTag::Real, &[1, 3]).unwrap();
        let angles = coordinate_angles(&coord, &Matrix::identity(4), &t).unwrap();
        let ones = angles.iter().filter(|(_, t)| t.abs() < 1e-12).count();
        assert_eq!(ones, 1);

        let bad = Matrix::from_real_rows(&[vec![1., 1.], vec![0., 1.]]).unwrap();
        assert!(pythagorean_sum(&v, &bad, &t).is_err());
    }

    #[test]
    fn xi_coordinate_planes() {
        let (v, _) = xi_example();
        let angles = coordinate_angles(&v, &Matrix::identity(3), &tol()).unwrap();
        for (_, theta) in angles {
            assert_abs_diff_eq!(theta.cos(), 1.0 / 3f64.sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn spherical_pythagorean_trivial_cases() {
        let (v, w) = real_example();
        let t = tol();
        let (lhs, rhs) = spherical_pythagorean_check(&v, &w, &w, &t).unwrap();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
        let outside = Subspace::coordinate(5, FieldTag::Real, &[2]).unwrap();
        assert!(spherical_pythagorean_check(&v, &w, &outside, &t).is_err());
    }

    #[test]
    fn orthogonal_partition_trivial_cases() {
        let t = tol();
        let (v, w) = real_example();
        let zero = Subspace::zero(5, FieldTag::Real);
        let (lhs, rhs) = orthogonal_partition_check(&v, &zero, &w, &t).unwrap();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);

        let perp = Subspace::coordinate(5, FieldTag::Real, &[2]).unwrap();
        let other = Subspace::coordinate(5, FieldTag::Real, &[0]).unwrap();
        let (lhs, rhs) = orthogonal_partition_check(&perp, &other, &w, &t).unwrap();
        assert_abs_diff_eq!(lhs, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rhs, 0.0, epsilon = 1e-12);

        assert!(orthogonal_partition_check(&other, &other, &w, &t).is_err());
    }

    #[test]
    fn conventions_for_zero_and_full() {
        let t = tol();
        let z = Subspace::zero(3, FieldTag::Real);
        let x = Subspace::full(3, FieldTag::Real);
        let l = Subspace::coordinate(3, FieldTag::Real, &[0]).unwrap();
        for r in AngleRoute::ALL {
            assert_eq!(asymmetric_angle(&z, &l, r, &t).unwrap(), 0.0);
            assert_eq!(asymmetric_angle(&l, &z, r, &t).unwrap(), FRAC_PI_2);
            assert_eq!(disjointness_angle(&z, &l, r, &t).unwrap(), FRAC_PI_2);
            assert_eq!(supplementation_angle(&z, &l, r, &t).unwrap(), 0.0);
            assert_eq!(supplementation_angle(&x, &z, r, &t).unwrap(), FRAC_PI_2);
            assert_eq!(asymmetric_angle(&l, &x, r, &t).unwrap(), 0.0);
        }
    }

    #[test]
    fn route_flags_round_trip() {
        for r in AngleRoute::ALL {
            assert_eq!(r.flag().parse::<AngleRoute>().unwrap(), r);
        }
        assert!("svd".parse::<AngleRoute>().is_err());
    }

    #[test]
    fn gram_route_rejects_singular_basis() {
        let v = Matrix::from_real_columns(3, &[vec![1., 0., 0.]]).unwrap();
        let w = Matrix::from_real_columns(3, &[vec![0., 1., 0.], vec![0., 2., 0.]]).unwrap();
        assert!(matches!(
            gram_asymmetric_angle(&v, &w, FieldTag::Real, &tol()),
            Err(Error::DegenerateBasis(_))
        ));
    }

    #[test]
    fn report_ordering() {
        let [a, b, _, _] = blades();
        let rep = angle_report(&a, &b, AngleRoute::PrincipalAngles, &tol()).unwrap();
        assert!(rep.ordering_holds(1e-9));
        assert_eq!(rep.dims, (2, 2, 5));
    }
}
