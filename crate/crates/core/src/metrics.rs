//! Distances between subspaces: the nine classic metrics on `G_p(X)`, their
//! asymmetric extensions to subspaces of any dimensions, the gap family, and
//! helpers for checking metric axioms and inequality chains.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain_err, Error, Result};
use crate::numerics::{one_minus_product_complement, FieldTag, Matrix, Tolerance, C64};
use crate::subspace::{check_pair, principal_decomposition, random_unitary, Subspace};

/// The metrics on `G_p(X)` expressed through principal angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricName {
    Geodesic,
    ChordalFrobenius,
    ProjectionFrobenius,
    FubiniStudy,
    ChordalWedge,
    BinetCauchy,
    Asimov,
    Chordal2Norm,
    Projection2Norm,
}

impl MetricName {
    pub const ALL: [MetricName; 9] = [
        MetricName::Geodesic,
        MetricName::ChordalFrobenius,
        MetricName::ProjectionFrobenius,
        MetricName::FubiniStudy,
        MetricName::ChordalWedge,
        MetricName::BinetCauchy,
        MetricName::Asimov,
        MetricName::Chordal2Norm,
        MetricName::Projection2Norm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MetricName::Geodesic => "geodesic",
            MetricName::ChordalFrobenius => "chordal_frobenius",
            MetricName::ProjectionFrobenius => "projection_frobenius",
            MetricName::FubiniStudy => "fubini_study",
            MetricName::ChordalWedge => "chordal_wedge",
            MetricName::BinetCauchy => "binet_cauchy",
            MetricName::Asimov => "asimov",
            MetricName::Chordal2Norm => "chordal_2norm",
            MetricName::Projection2Norm => "projection_2norm",
        }
    }

    /// Values are angles for the angular metrics, plain lengths otherwise.
    pub fn units(self) -> &'static str {
        match self {
            MetricName::Geodesic | MetricName::FubiniStudy | MetricName::Asimov => "radians",
            _ => "dimensionless",
        }
    }
}

impl fmt::Display for MetricName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetricName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricName::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| domain_err(format!("unknown metric {s:?}")))
    }
}

/// A metric as a function of principal angles together with the diameter
/// used when the source subspace is larger than the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricDescriptor {
    name: MetricName,
}

impl MetricDescriptor {
    /// Panics if the hardcoded diameter disagrees with `f_p(π/2, ..., π/2)`.
    pub fn new(name: MetricName) -> Self {
        let desc = MetricDescriptor { name };
        for p in 1..=8 {
            let right = vec![FRAC_PI_2; p];
            let (d, f) = (desc.diam(p), desc.f_p(&right));
            assert!(
                (d - f).abs() <= 1e-12 * d.max(1.0),
                "{name}: diameter {d} differs from f_p(π/2..) = {f} at p = {p}"
            );
        }
        desc
    }

    pub fn all() -> Vec<MetricDescriptor> {
        MetricName::ALL
            .into_iter()
            .map(MetricDescriptor::new)
            .collect()
    }

    pub fn name(&self) -> MetricName {
        self.name
    }

    /// The metric on `G_p` evaluated at principal angles `θ_1 <= ... <= θ_p`.
    pub fn f_p(&self, angles: &[f64]) -> f64 {
        let sum = |f: &dyn Fn(f64) -> f64| angles.iter().map(|&t| f(t)).sum::<f64>();
        let largest = angles.iter().copied().fold(0.0, f64::max);
        match self.name {
            MetricName::Geodesic => sum(&|t| t * t).sqrt(),
            MetricName::ChordalFrobenius => 2.0 * sum(&|t| (t / 2.0).sin().powi(2)).sqrt(),
            MetricName::ProjectionFrobenius => sum(&|t| t.sin().powi(2)).sqrt(),
            MetricName::FubiniStudy => fubini_study(angles),
            MetricName::ChordalWedge => 2.0 * (fubini_study(angles) / 2.0).sin(),
            MetricName::BinetCauchy => fubini_study(angles).sin(),
            MetricName::Asimov => largest,
            MetricName::Chordal2Norm => 2.0 * (largest / 2.0).sin(),
            MetricName::Projection2Norm => largest.sin(),
        }
    }

    /// Supremum of the metric over all pairs of `p`-subspaces in any ambient space.
    pub fn diam(&self, p: usize) -> f64 {
        if p == 0 {
            return 0.0;
        }
        let pf = p as f64;
        match self.name {
            MetricName::Geodesic => FRAC_PI_2 * pf.sqrt(),
            MetricName::ChordalFrobenius => (2.0 * pf).sqrt(),
            MetricName::ProjectionFrobenius => pf.sqrt(),
            MetricName::FubiniStudy | MetricName::Asimov => FRAC_PI_2,
            MetricName::ChordalWedge | MetricName::Chordal2Norm => 2f64.sqrt(),
            MetricName::BinetCauchy | MetricName::Projection2Norm => 1.0,
        }
    }
}

/// `arccos(∏ cos θ_i)`, evaluated as an `atan2` so both ends stay accurate.
fn fubini_study(angles: &[f64]) -> f64 {
    let cos: f64 = angles.iter().map(|t| t.cos()).product();
    let sin2 = one_minus_product_complement(angles.iter().map(|t| t.sin().powi(2)));
    sin2.sqrt().atan2(cos)
}

/// Which branch of the extended distance produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionCase {
    EqualDim,
    LowToHigh,
    HighToLowDiameter,
    ZeroFrom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub value: f64,
    pub metric: MetricName,
    /// `(dim V, dim W)` for the direction `V -> W`.
    pub direction: (usize, usize),
    pub case: ExtensionCase,
}

fn leading_angles(v: &Subspace, w: &Subspace, tol: &Tolerance) -> Result<Vec<f64>> {
    if v.is_zero() || w.is_zero() {
        return Ok(Vec::new());
    }
    Ok(principal_decomposition(v, w, tol)?.angles)
}

/// A metric of the table between subspaces of equal dimension.
pub fn equal_dim_distance(
    name: MetricName,
    v: &Subspace,
    w: &Subspace,
    tol: &Tolerance,
) -> Result<f64> {
    check_pair(v, w)?;
    if v.dim() != w.dim() || v.is_zero() {
        return Err(domain_err(format!(
            "{name} needs subspaces of equal positive dimension, got {} and {}",
            v.dim(),
            w.dim()
        )));
    }
    Ok(MetricDescriptor::new(name).f_p(&leading_angles(v, w, tol)?))
}

/// The asymmetric extension `d(V, W) = inf { d_p(V, W') : W' ⊂ W, dim W' = p }`
/// in closed form.
pub fn asymmetric_distance(
    desc: &MetricDescriptor,
    v: &Subspace,
    w: &Subspace,
    tol: &Tolerance,
) -> Result<DistanceResult> {
    check_pair(v, w)?;
    let (p, q) = (v.dim(), w.dim());
    let (value, case) = if p == 0 {
        (0.0, ExtensionCase::ZeroFrom)
    } else if p > q {
        (desc.diam(p), ExtensionCase::HighToLowDiameter)
    } else {
        let case = if p == q {
            ExtensionCase::EqualDim
        } else {
            ExtensionCase::LowToHigh
        };
        (desc.f_p(&leading_angles(v, w, tol)?), case)
    };
    Ok(DistanceResult {
        value,
        metric: desc.name(),
        direction: (p, q),
        case,
    })
}

/// `δ(V, W) = max |v - P_W v|` over unit `v ∈ V`.
pub fn containment_gap(v: &Subspace, w: &Subspace, tol: &Tolerance) -> Result<f64> {
    check_pair(v, w)?;
    let (p, q) = (v.dim(), w.dim());
    if p == 0 {
        return Ok(0.0);
    }
    if p > q {
        return Ok(1.0);
    }
    let dec = principal_decomposition(v, w, tol)?;
    Ok(dec.angles[p - 1].sin())
}

/// Largest singular value of `P_V - P_W`.
fn projector_gap_norm(v: &Subspace, w: &Subspace) -> Result<f64> {
    v.projector().sub(&w.projector())?.operator_norm()
}

/// `max(δ(V, W), δ(W, V))`, cross-checked against `|P_V - P_W|`.
pub fn gap(v: &Subspace, w: &Subspace, tol: &Tolerance) -> Result<f64> {
    let value = containment_gap(v, w, tol)?.max(containment_gap(w, v, tol)?);
    let check = projector_gap_norm(v, w)?;
    if (value - check).abs() > 1e-9 {
        return Err(Error::Numerical(format!(
            "gap {value} disagrees with projector norm {check}"
        )));
    }
    Ok(value)
}

/// `sqrt(Σ_i |e_i - P_W e_i|²)` over an orthonormal basis of `V`.
pub fn directional_distance(v: &Subspace, w: &Subspace, tol: &Tolerance) -> Result<f64> {
    check_pair(v, w)?;
    if v.is_zero() {
        return Err(domain_err("directional distance needs a nonzero source"));
    }
    let (p, q) = (v.dim(), w.dim());
    let angles = leading_angles(v, w, tol)?;
    let sines: f64 = angles.iter().map(|t| t.sin().powi(2)).sum();
    Ok((p.saturating_sub(q) as f64 + sines).sqrt())
}

/// `sqrt(|p - q| + Σ sin² θ_i)`, the larger of the two directional distances.
///
/// Cross-checked against the projector difference through
/// `|P_V - P_W|_F² = |p - q| + 2 Σ sin² θ_i`, which reduces to
/// `|P_V - P_W|_F / sqrt 2` only when `p = q`.
pub fn symmetric_distance(v: &Subspace, w: &Subspace, tol: &Tolerance) -> Result<f64> {
    check_pair(v, w)?;
    let angles = leading_angles(v, w, tol)?;
    let sines: f64 = angles.iter().map(|t| t.sin().powi(2)).sum();
    let dim_gap = v.dim().abs_diff(w.dim()) as f64;
    let value = (dim_gap + sines).sqrt();
    let frob = v.projector().sub(&w.projector())?.frobenius_norm();
    let check = (0.5 * (frob * frob + dim_gap)).sqrt();
    if (value - check).abs() > 1e-9 {
        return Err(Error::Numerical(format!(
            "symmetric distance {value} disagrees with projector norm {check}"
        )));
    }
    Ok(value)
}

/// A quantity reported for reference that is not a metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub value: f64,
    pub infinite: bool,
    pub non_metric: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `sin θ_1`.
    pub max_correlation: Diagnostic,
    /// `sqrt(-log ∏ cos² θ_i)`, infinite when some `θ_i = π/2`.
    pub martin: Diagnostic,
}

pub fn diagnostic_quantities(v: &Subspace, w: &Subspace, tol: &Tolerance) -> Result<Diagnostics> {
    check_pair(v, w)?;
    if v.is_zero() || w.is_zero() {
        return Err(domain_err("diagnostic quantities need nonzero subspaces"));
    }
    let dec = principal_decomposition(v, w, tol)?;
    let right = dec.angles.iter().any(|&t| t >= FRAC_PI_2 - tol.angle_tol);
    let martin = if right {
        f64::INFINITY
    } else {
        // ln cos² θ = ln(1 - sin² θ), accurate for small angles.
        (-dec.sines.iter().map(|s| (-s * s).ln_1p()).sum::<f64>())
            .max(0.0)
            .sqrt()
    };
    Ok(Diagnostics {
        max_correlation: Diagnostic {
            value: dec.sines[0],
            infinite: false,
            non_metric: true,
        },
        martin: Diagnostic {
            value: martin,
            infinite: right,
            non_metric: true,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetrizeMode {
    Max,
    Mean,
}

impl FromStr for SymmetrizeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(SymmetrizeMode::Max),
            "mean" => Ok(SymmetrizeMode::Mean),
            _ => Err(domain_err(format!("unknown symmetrization {s:?}"))),
        }
    }
}

/// Symmetric metric built from the two directions of an asymmetric one.
pub fn symmetrize(d_fwd: f64, d_bwd: f64, mode: SymmetrizeMode) -> Result<f64> {
    if !(d_fwd >= 0.0 && d_bwd >= 0.0) {
        return Err(domain_err("distances must be nonnegative"));
    }
    Ok(match mode {
        SymmetrizeMode::Max => d_fwd.max(d_bwd),
        SymmetrizeMode::Mean => 0.5 * (d_fwd + d_bwd),
    })
}

/// Dimensions and shape parameters of a triple built by [`make_equality_triple`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleShape {
    pub ambient: usize,
    /// `dim R <= dim S <= dim T`.
    pub nested: (usize, usize, usize),
    pub kappa: f64,
    pub lambda: f64,
}

/// A triple `U = [u] ⊕ R`, `V = [v] ⊕ S`, `W = [w] ⊕ T` with
/// `Θ_{U,W} = Θ_{U,V} + Θ_{V,W}`.
#[derive(Debug, Clone)]
pub struct EqualityTriple {
    pub u: Subspace,
    pub v: Subspace,
    pub w: Subspace,
    /// Free unit direction orthogonal to `T`, `u` and `w`, when the ambient space has room.
    spare: Option<Vec<C64>>,
    v_dir: Vec<C64>,
    s_basis: Matrix,
}

impl EqualityTriple {
    /// Rotates the direction `v` by `angle` out of the plane of `u` and `w`,
    /// which makes the triangle inequality strict.
    pub fn perturbed(&self, angle: f64, tol: &Tolerance) -> Result<EqualityTriple> {
        let e = self.spare.as_ref().ok_or_else(|| {
            domain_err("perturbation needs an ambient dimension of at least dim T + 3")
        })?;
        let (c, s) = (angle.cos(), angle.sin());
        let v_dir: Vec<C64> = self
            .v_dir
            .iter()
            .zip(e)
            .map(|(&a, &b)| a * c + b * s)
            .collect();
        let n = v_dir.len();
        let v = Subspace::from_columns(
            FieldTag::Real,
            Matrix::from_columns(n, std::slice::from_ref(&v_dir))?.hstack(&self.s_basis)?,
            tol,
        )?;
        Ok(EqualityTriple {
            u: self.u.clone(),
            v,
            w: self.w.clone(),
            spare: self.spare.clone(),
            v_dir,
            s_basis: self.s_basis.clone(),
        })
    }
}

/// Builds a real triple realizing equality in the triangle inequality for Θ.
///
/// `u` and `w` are unit vectors at an angle in `[0.2, 0.8]` spanning a plane
/// orthogonal to `T`, `v = κ u + λ w`, and `R ⊂ S ⊂ T` are spans of leading
/// columns of a random orthogonal matrix.
pub fn make_equality_triple(
    shape: TripleShape,
    seed: u64,
    tol: &Tolerance,
) -> Result<EqualityTriple> {
    let TripleShape {
        ambient: n,
        nested: (r, s, t),
        kappa,
        lambda,
    } = shape;
    if !(kappa > 0.0 && lambda > 0.0 && kappa.is_finite() && lambda.is_finite()) {
        return Err(domain_err("κ and λ must be positive and finite"));
    }
    if !(r <= s && s <= t) {
        return Err(domain_err("nested dimensions must satisfy r <= s <= t"));
    }
    if n < t + 2 {
        return Err(domain_err(format!(
            "ambient dimension {n} cannot host T of dimension {t} and a plane orthogonal to it"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_unitary(n, FieldTag::Real, &mut rng);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let delta: f64 = rng.random_range(0.2..=0.8);
    let (p1, p2) = (q.column(t), q.column(t + 1));
    let in_plane = |angle: f64| -> Vec<C64> {
        p1.iter()
            .zip(&p2)
            .map(|(&a, &b)| a * angle.cos() + b * angle.sin())
            .collect()
    };
    let u_dir = in_plane(phi);
    let w_dir = in_plane(phi + delta);
    let v_dir: Vec<C64> = u_dir
        .iter()
        .zip(&w_dir)
        .map(|(&a, &b)| a * kappa + b * lambda)
        .collect();
    let norm = crate::numerics::norm(&v_dir);
    let v_dir: Vec<C64> = v_dir.iter().map(|&z| z / norm).collect();

    let leading = |k: usize| q.select_columns(&(0..k).collect::<Vec<_>>());
    let with = |dir: &[C64], k: usize| -> Result<Subspace> {
        let m = Matrix::from_columns(n, &[dir.to_vec()])?.hstack(&leading(k))?;
        Subspace::from_columns(FieldTag::Real, m, tol)
    };
    let spare = (n >= t + 3).then(|| q.column(t + 2));
    Ok(EqualityTriple {
        u: with(&u_dir, r)?,
        v: with(&v_dir, s)?,
        w: with(&w_dir, t)?,
        spare,
        v_dir,
        s_basis: leading(s),
    })
}

/// Result of checking one link of an inequality chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainOutcome {
    Holds,
    /// A strict comparison whose sides differ by less than the margin.
    Indeterminate,
    Violated,
}

/// Margin below which a strict comparison is reported indeterminate.
pub const STRICT_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Relation {
    AtLeast,
    Greater,
    Equal,
}

fn compare(lhs: f64, rel: Relation, rhs: f64) -> ChainOutcome {
    match rel {
        Relation::AtLeast if lhs >= rhs - STRICT_MARGIN => ChainOutcome::Holds,
        Relation::Greater if lhs - rhs > STRICT_MARGIN => ChainOutcome::Holds,
        Relation::Greater if (lhs - rhs).abs() <= STRICT_MARGIN => ChainOutcome::Indeterminate,
        Relation::Equal if (lhs - rhs).abs() <= 1e-9 => ChainOutcome::Holds,
        _ => ChainOutcome::Violated,
    }
}

/// One chain `a R1 b R2 c R3 d` with its outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub label: &'static str,
    pub values: [f64; 4],
    pub outcome: ChainOutcome,
}

fn chain(label: &'static str, values: [f64; 4], rels: [Relation; 3]) -> ChainReport {
    let mut outcome = ChainOutcome::Holds;
    for k in 0..3 {
        match compare(values[k], rels[k], values[k + 1]) {
            ChainOutcome::Violated => {
                outcome = ChainOutcome::Violated;
                break;
            }
            ChainOutcome::Indeterminate => outcome = ChainOutcome::Indeterminate,
            ChainOutcome::Holds => {}
        }
    }
    ChainReport {
        label,
        values,
        outcome,
    }
}

fn metric_values(angles: &[f64]) -> impl Fn(MetricName) -> f64 + '_ {
    move |name| MetricDescriptor { name }.f_p(angles)
}

/// Row chains for distinct `V, W ∈ G_p`, from their principal angles:
/// `(π/2) d_pF >= d_g > d_cF > d_pF` and the analogues for the product and
/// largest-angle families.
pub fn row_chains(angles: &[f64]) -> Vec<ChainReport> {
    use MetricName::*;
    use Relation::*;
    let d = metric_values(angles);
    let rels = [AtLeast, Greater, Greater];
    vec![
        chain(
            "frobenius",
            [
                FRAC_PI_2 * d(ProjectionFrobenius),
                d(Geodesic),
                d(ChordalFrobenius),
                d(ProjectionFrobenius),
            ],
            rels,
        ),
        chain(
            "product",
            [
                FRAC_PI_2 * d(BinetCauchy),
                d(FubiniStudy),
                d(ChordalWedge),
                d(BinetCauchy),
            ],
            rels,
        ),
        chain(
            "largest",
            [
                FRAC_PI_2 * d(Projection2Norm),
                d(Asimov),
                d(Chordal2Norm),
                d(Projection2Norm),
            ],
            rels,
        ),
    ]
}

/// Column chains `sqrt(p) d_A >= d_g > d_FS > d_A` and analogues; the strict
/// links become equalities when `dim(V ∩ W) >= p - 1`.
pub fn column_chains(angles: &[f64], intersection_dim: usize) -> Vec<ChainReport> {
    use MetricName::*;
    use Relation::*;
    let p = angles.len();
    let d = metric_values(angles);
    let sp = (p as f64).sqrt();
    let rels = if intersection_dim + 1 >= p {
        [AtLeast, Equal, Equal]
    } else {
        [AtLeast, Greater, Greater]
    };
    vec![
        chain(
            "angular",
            [sp * d(Asimov), d(Geodesic), d(FubiniStudy), d(Asimov)],
            rels,
        ),
        chain(
            "chordal",
            [
                sp * d(Chordal2Norm),
                d(ChordalFrobenius),
                d(ChordalWedge),
                d(Chordal2Norm),
            ],
            rels,
        ),
        chain(
            "gap",
            [
                sp * d(Projection2Norm),
                d(ProjectionFrobenius),
                d(BinetCauchy),
                d(Projection2Norm),
            ],
            rels,
        ),
    ]
}
