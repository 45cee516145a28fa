//! Identity suites run by the `verify` command.
//!
//! Every comparison uses `match_tol`, except values quoted to a few decimals.
//! An identity that cannot be evaluated counts as failed.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angles::{
    asymmetric_angle, disjointness_angle, pythagorean_sum, sine_identity_sum,
    supplementation_angle, AngleRoute,
};
use crate::error::{Error, Result};
use crate::exterior::MAX_AMBIENT;
use crate::metrics::{asymmetric_distance, MetricDescriptor};
use crate::numerics::{FieldTag, Matrix, Tolerance};
use crate::subspace::{gaussian_matrix, orthogonal_complement, Subspace};

/// Subspaces sharing an ambient space.
#[derive(Debug, Clone)]
pub struct Group {
    pub name: String,
    pub members: Vec<(String, Subspace)>,
}

impl Group {
    pub fn new(name: &str, members: Vec<(String, Subspace)>) -> Self {
        Group {
            name: name.to_string(),
            members,
        }
    }

    /// Panics on an unknown id; only used with fixed ids.
    pub fn get(&self, id: &str) -> &Subspace {
        &self
            .members
            .iter()
            .find(|(name, _)| name == id)
            .unwrap_or_else(|| panic!("no subspace {id} in {}", self.name))
            .1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub label: String,
    /// `inf` when the identity could not be evaluated.
    pub deviation: f64,
    pub allowed: f64,
    pub error: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.deviation <= self.allowed
    }
}

/// Collects outcomes in the order the checks ran.
#[derive(Debug, Clone)]
pub struct Checker {
    tol: Tolerance,
    pub outcomes: Vec<CheckOutcome>,
}

impl Checker {
    pub fn new(tol: Tolerance) -> Self {
        Checker {
            tol,
            outcomes: Vec::new(),
        }
    }

    fn record(
        &mut self,
        suite: &'static str,
        label: String,
        got: Result<f64>,
        want: f64,
        allowed: f64,
    ) {
        let (deviation, error) = match got {
            Ok(x) if x.is_finite() => ((x - want).abs(), None),
            Ok(x) => (f64::INFINITY, Some(format!("non-finite value {x}"))),
            Err(e) => (f64::INFINITY, Some(e.to_string())),
        };
        self.outcomes.push(CheckOutcome {
            suite,
            label,
            deviation,
            allowed,
            error,
        });
    }

    pub fn angle(
        &mut self,
        suite: &'static str,
        label: impl Into<String>,
        got: Result<f64>,
        want: f64,
    ) {
        let allowed = self.tol.match_tol;
        self.record(suite, label.into(), got, want, allowed);
    }

    pub fn value(
        &mut self,
        suite: &'static str,
        label: impl Into<String>,
        got: Result<f64>,
        want: f64,
    ) {
        let allowed = self.tol.match_tol;
        self.record(suite, label.into(), got, want, allowed);
    }

    /// Fixed tolerance, for values quoted to a few decimals.
    pub fn within(
        &mut self,
        suite: &'static str,
        label: impl Into<String>,
        got: Result<f64>,
        want: f64,
        allowed: f64,
    ) {
        self.record(suite, label.into(), got, want, allowed);
    }

    /// `lhs <= rhs` up to `slack`.
    fn at_most(
        &mut self,
        suite: &'static str,
        label: String,
        lhs: Result<f64>,
        rhs: Result<f64>,
        slack: f64,
    ) {
        let diff = lhs.and_then(|l| Ok(l - rhs?));
        let got = diff.map(|d| d.max(0.0));
        self.record(suite, label, got, 0.0, slack);
    }

    pub fn error(&mut self, suite: &'static str, label: impl Into<String>, e: Error) {
        self.record(suite, label.into(), Err(e), 0.0, 0.0);
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|c| !c.passed())
    }

    /// One line per suite, then every failing check.
    pub fn render(&self) -> String {
        let mut suites: Vec<&'static str> = Vec::new();
        for c in &self.outcomes {
            if !suites.contains(&c.suite) {
                suites.push(c.suite);
            }
        }
        let mut out = String::new();
        for suite in suites {
            let all: Vec<&CheckOutcome> =
                self.outcomes.iter().filter(|c| c.suite == suite).collect();
            let failed = all.iter().filter(|c| !c.passed()).count();
            let worst = all
                .iter()
                .filter(|c| c.error.is_none())
                .map(|c| c.deviation)
                .fold(0.0, f64::max);
            let status = if failed == 0 { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status} {suite}: {} checks, {failed} failed, max deviation {worst:.3e}",
                all.len()
            );
        }
        for c in self.outcomes.iter().filter(|c| !c.passed()) {
            match &c.error {
                Some(e) => {
                    let _ = writeln!(out, "  failed {}: {}: {e}", c.suite, c.label);
                }
                None => {
                    let _ = writeln!(
                        out,
                        "  failed {}: {}: deviation {:.3e} > {:.3e}",
                        c.suite, c.label, c.deviation, c.allowed
                    );
                }
            }
        }
        out
    }
}

fn skip_gram(route: AngleRoute, got: &Result<f64>) -> bool {
    route == AngleRoute::GramDeterminant && matches!(got, Err(Error::DegenerateBasis(_)))
}

fn route_agreement(ck: &mut Checker, label: &str, v: &Subspace, w: &Subspace, tol: &Tolerance) {
    type AngleFn = fn(&Subspace, &Subspace, AngleRoute, &Tolerance) -> Result<f64>;
    let kinds: [(&str, AngleFn); 3] = [
        ("Θ", asymmetric_angle),
        ("Υ", disjointness_angle),
        ("Ψ", supplementation_angle),
    ];
    let allowed = tol.match_tol;
    for (name, f) in kinds {
        let reference = f(v, w, AngleRoute::PrincipalAngles, tol);
        let Ok(want) = reference else {
            ck.record(
                "route_agreement",
                format!("{name}{label} [principal]"),
                reference,
                0.0,
                0.0,
            );
            continue;
        };
        for route in [AngleRoute::GramDeterminant, AngleRoute::ExteriorAlgebra] {
            if route == AngleRoute::ExteriorAlgebra && v.ambient_dim() > MAX_AMBIENT {
                continue;
            }
            let got = f(v, w, route, tol);
            if skip_gram(route, &got) {
                continue;
            }
            ck.record(
                "route_agreement",
                format!("{name}{label} [{route}]"),
                got,
                want,
                allowed,
            );
        }
    }
}

/// Coordinate subspaces grow as `C(n, p)`; keep the enumeration small.
fn pythagorean_feasible(s: &Subspace) -> bool {
    let (n, p) = (s.ambient_dim() as u64, s.dim() as u64);
    let mut count = 1u64;
    for k in 0..p {
        count = count * (n - k) / (k + 1);
    }
    s.dim() > 0 && n as usize <= MAX_AMBIENT && count <= 5000
}

/// Pythagorean identity, sine identity, route agreement, perp duality and
/// the triangle inequality over every pair and triple of a group.
pub fn identity_suites(ck: &mut Checker, group: &Group, tol: &Tolerance) {
    let members = &group.members;
    for (id, s) in members {
        if pythagorean_feasible(s) {
            let basis = Matrix::identity(s.ambient_dim());
            ck.value(
                "pythagorean",
                format!("{}: Σcos² over coordinate subspaces of {id}", group.name),
                pythagorean_sum(s, &basis, tol),
                1.0,
            );
        }
    }
    for (vi, v) in members {
        for (wj, w) in members {
            let label = format!("({vi},{wj}) in {}", group.name);
            if !v.is_zero() && !w.is_zero() && v.ambient_dim() <= MAX_AMBIENT {
                match sine_identity_sum(v, w, tol) {
                    Ok((sum, sin2)) => ck.value("sine_identity", label.clone(), Ok(sum), sin2),
                    Err(e) => ck.error("sine_identity", label.clone(), e),
                }
            }
            route_agreement(ck, &label, v, w, tol);
            let route = AngleRoute::PrincipalAngles;
            let dual = asymmetric_angle(
                &orthogonal_complement(w),
                &orthogonal_complement(v),
                route,
                tol,
            );
            match asymmetric_angle(v, w, route, tol) {
                Ok(theta) => ck.angle("perp_duality", format!("Θ{label}"), dual, theta),
                Err(e) => ck.error("perp_duality", format!("Θ{label}"), e),
            }
        }
    }
    let slack = tol.match_tol;
    let descriptors = MetricDescriptor::all();
    for (a, u) in members {
        for (b, v) in members {
            for (c, w) in members {
                for desc in &descriptors {
                    let d = |x: &Subspace, y: &Subspace| {
                        asymmetric_distance(desc, x, y, tol).map(|r| r.value)
                    };
                    let rhs = d(u, v).and_then(|x| Ok(x + d(v, w)?));
                    ck.at_most(
                        "triangle",
                        format!("{} {a}->{c} via {b} in {}", desc.name(), group.name),
                        d(u, w),
                        rhs,
                        slack,
                    );
                }
            }
        }
    }
}

/// Route agreement on seeded random pairs with `n <= 7` over both fields,
/// spanned by raw Gaussian vectors.
pub fn random_route_suite(ck: &mut Checker, seed: u64, pairs: usize, tol: &Tolerance) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..pairs {
        let n = rng.random_range(1..=7usize);
        let field = if rng.random_bool(0.5) {
            FieldTag::Real
        } else {
            FieldTag::Complex
        };
        let p = rng.random_range(0..=n);
        let q = rng.random_range(0..=n);
        let (a, b) = (
            gaussian_matrix(n, p, field, &mut rng),
            gaussian_matrix(n, q, field, &mut rng),
        );
        let pair = Subspace::from_columns(field, a, tol)
            .and_then(|v| Ok((v, Subspace::from_columns(field, b, tol)?)));
        match pair {
            Ok((v, w)) => {
                let label = format!(" random pair {k} ({field}, n={n}, p={p}, q={q})");
                route_agreement(ck, &label, &v, &w, tol);
            }
            Err(e) => ck.error("route_agreement", format!("random pair {k}"), e),
        }
    }
}
