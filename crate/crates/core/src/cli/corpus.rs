//! Built-in worked examples with known answers.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use super::verify::{Checker, Group};
use crate::angles::{
    asymmetric_angle, coordinate_angles, disjointness_angle, projection_factor,
    real_complex_relation_check, sine_identity_sum, supplementation_angle, AngleRoute,
};
use crate::error::Result;
use crate::numerics::{FieldTag, Matrix, Tolerance, C64};
use crate::subspace::{principal_decomposition, underlying_real, Subspace};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn real(n: usize, rows: &[Vec<f64>], tol: &Tolerance) -> Result<Subspace> {
    Subspace::from_real_rows(n, rows, tol)
}

fn complex(n: usize, rows: &[Vec<C64>], tol: &Tolerance) -> Result<Subspace> {
    Subspace::from_rows(FieldTag::Complex, n, rows, tol)
}

fn named(items: Vec<(&str, Subspace)>) -> Vec<(String, Subspace)> {
    items
        .into_iter()
        .map(|(id, s)| (id.to_string(), s))
        .collect()
}

/// The example subspaces, grouped by ambient space.
pub fn builtin_groups(tol: &Tolerance) -> Result<Vec<Group>> {
    let h = FRAC_1_SQRT_2;
    let r3 = 3f64.sqrt() / 2.0;
    let z = c(0., 0.);
    let one = c(1., 0.);
    let xi = C64::from_polar(1.0, 2.0 * PI / 3.0);

    let real_pair = Group::new(
        "real pair in R^5",
        named(vec![
            (
                "V",
                real(5, &[vec![h, 0., h, 0., 0.], vec![0., h, 0., h, 0.]], tol)?,
            ),
            ("W", Subspace::coordinate(5, FieldTag::Real, &[0, 1, 4])?),
        ]),
    );
    let complex_pair = Group::new(
        "complex pair in C^4",
        named(vec![
            (
                "V",
                complex(
                    4,
                    &[
                        vec![c(h, 0.), c(h, 0.), z, z],
                        vec![z, z, c(0., 0.5), c(r3, 0.)],
                    ],
                    tol,
                )?,
            ),
            (
                "W",
                complex(
                    4,
                    &[
                        vec![c(0.5, 0.5), c(0.5, -0.5), z, z],
                        vec![z, z, c(0., 1.), z],
                    ],
                    tol,
                )?,
            ),
        ]),
    );
    let blades = Group::new(
        "blades in R^5",
        named(vec![
            (
                "A",
                real(
                    5,
                    &[vec![2., -1., 0., 0., 0.], vec![2., 0., 1., 0., 0.]],
                    tol,
                )?,
            ),
            (
                "B",
                real(
                    5,
                    &[vec![0., 1., 0., 0., 1.], vec![0., 0., 1., -1., 0.]],
                    tol,
                )?,
            ),
            (
                "C",
                real(
                    5,
                    &[
                        vec![0., 1., 0., 0., 1.],
                        vec![0., 0., 1., -1., 0.],
                        vec![0., 0., 0., 1., 0.],
                    ],
                    tol,
                )?,
            ),
            (
                "D",
                real(
                    5,
                    &[
                        vec![2., -1., 0., 0., 0.],
                        vec![2., 0., 1., 0., 0.],
                        vec![0., 0., 1., 0., 0.],
                    ],
                    tol,
                )?,
            ),
        ]),
    );
    let line_plane = Group::new(
        "line and plane in R^4",
        named(vec![
            ("V", real(4, &[vec![1., 0., 1., 0.]], tol)?),
            (
                "W",
                real(4, &[vec![0., 1., 1., 0.], vec![1., 2., 2., -1.]], tol)?,
            ),
        ]),
    );
    let xi_pair = Group::new(
        "planes in C^3",
        named(vec![
            (
                "V",
                complex(3, &[vec![one, -xi, z], vec![z, xi, -xi * xi]], tol)?,
            ),
            ("W", complex(3, &[vec![one, z, z], vec![z, xi, z]], tol)?),
        ]),
    );
    let planes_r4 = Group::new(
        "planes in R^4",
        named(vec![
            (
                "V",
                real(4, &[vec![1., -1., 0., 1.], vec![0., 1., 1., -1.]], tol)?,
            ),
            ("W", Subspace::coordinate(4, FieldTag::Real, &[0, 2])?),
        ]),
    );
    let line_c2 = complex(2, &[vec![c(0., 0.5), c(r3, 0.)]], tol)?;
    let line_c2_real = underlying_real(&line_c2)?;
    let pythagorean_c2 = Group::new("line in C^2", named(vec![("v", line_c2)]));
    let pythagorean_r4 = Group::new("realified line in R^4", named(vec![("v", line_c2_real)]));

    Ok(vec![
        real_pair,
        complex_pair,
        blades,
        line_plane,
        xi_pair,
        planes_r4,
        pythagorean_c2,
        pythagorean_r4,
    ])
}

fn every_route(ck: &mut Checker, label: &str, want: f64, f: impl Fn(AngleRoute) -> Result<f64>) {
    for route in AngleRoute::ALL {
        let got = f(route);
        ck.angle("golden", format!("{label} [{route}]"), got, want);
    }
}

/// Compares the corpus against its known values.
pub fn golden_checks(groups: &[Group], ck: &mut Checker, tol: &Tolerance) {
    let get = |g: usize, id: &str| groups[g].get(id);
    let deg = f64::to_radians;

    // Real principal angles.
    let (v, w) = (get(0, "V"), get(0, "W"));
    match principal_decomposition(v, w, tol) {
        Ok(dec) => {
            for (i, &t) in dec.angles.iter().enumerate() {
                ck.angle("golden", format!("real pair θ_{}", i + 1), Ok(t), FRAC_PI_4);
            }
        }
        Err(e) => ck.error("golden", "real pair principal angles", e),
    }
    every_route(ck, "real pair Θ(V,W)", deg(60.0), |r| {
        asymmetric_angle(v, w, r, tol)
    });
    every_route(ck, "real pair Θ(W,V)", FRAC_PI_2, |r| {
        asymmetric_angle(w, v, r, tol)
    });
    ck.value(
        "golden",
        "real pair projection factor",
        projection_factor(v, w, tol),
        0.5,
    );
    match sine_identity_sum(v, w, tol) {
        Ok((sum, sin2)) => {
            ck.value("golden", "sine identity sum", Ok(sum), 0.75);
            ck.value("golden", "sine identity sin²Θ", Ok(sin2), 0.75);
        }
        Err(e) => ck.error("golden", "sine identity", e),
    }

    // Complex principal angles and the underlying real pair.
    let (v, w) = (get(1, "V"), get(1, "W"));
    match principal_decomposition(v, w, tol) {
        Ok(dec) => {
            let want = [deg(45.0), deg(60.0)];
            for (i, (&t, &x)) in dec.angles.iter().zip(&want).enumerate() {
                ck.angle("golden", format!("complex pair θ_{}", i + 1), Ok(t), x);
            }
        }
        Err(e) => ck.error("golden", "complex pair principal angles", e),
    }
    let theta = (2f64.sqrt() / 4.0).acos();
    every_route(ck, "complex pair Θ(V,W)", theta, |r| {
        asymmetric_angle(v, w, r, tol)
    });
    ck.within(
        "golden",
        "complex pair Θ(V,W) in degrees",
        asymmetric_angle(v, w, AngleRoute::PrincipalAngles, tol).map(f64::to_degrees),
        69.295,
        1e-3,
    );
    match real_complex_relation_check(v, w, tol) {
        Ok((real_cos, cos2)) => {
            ck.value("golden", "complex pair cos Θ_R", Ok(real_cos), 0.125);
            ck.value("golden", "complex pair cos² Θ", Ok(cos2), 0.125);
        }
        Err(e) => ck.error("golden", "complex pair realification", e),
    }
    let real_theta = underlying_real(v)
        .and_then(|vr| Ok((vr, underlying_real(w)?)))
        .and_then(|(vr, wr)| asymmetric_angle(&vr, &wr, AngleRoute::PrincipalAngles, tol));
    ck.angle(
        "golden",
        "complex pair Θ_R",
        real_theta.clone(),
        0.125f64.acos(),
    );
    ck.within(
        "golden",
        "complex pair Θ_R in degrees",
        real_theta.map(f64::to_degrees),
        82.819,
        1e-3,
    );

    // Contraction example.
    let (a, b, cc, d) = (get(2, "A"), get(2, "B"), get(2, "C"), get(2, "D"));
    let cases = [
        (
            "A,B",
            a,
            b,
            (1.0f64 / 6.0).acos(),
            (17f64.sqrt() / 6.0).asin(),
            0.0,
        ),
        (
            "A,C",
            a,
            cc,
            (1.0 / (3.0 * 2f64.sqrt())).acos(),
            (2f64.sqrt() / 3.0).asin(),
            (2f64.sqrt() / 3.0).asin(),
        ),
        ("C,D", cc, d, FRAC_PI_2, 0.0, FRAC_PI_4),
    ];
    for (pair, x, y, th, up, ps) in cases {
        every_route(ck, &format!("blades Θ({pair})"), th, |r| {
            asymmetric_angle(x, y, r, tol)
        });
        every_route(ck, &format!("blades Υ({pair})"), up, |r| {
            disjointness_angle(x, y, r, tol)
        });
        every_route(ck, &format!("blades Ψ({pair})"), ps, |r| {
            supplementation_angle(x, y, r, tol)
        });
    }

    // Line and plane of different dimensions.
    let (v, w) = (get(3, "V"), get(3, "W"));
    every_route(ck, "line/plane Θ(V,W)", FRAC_PI_4, |r| {
        asymmetric_angle(v, w, r, tol)
    });
    every_route(ck, "line/plane Θ(W,V)", FRAC_PI_2, |r| {
        asymmetric_angle(w, v, r, tol)
    });
    every_route(ck, "line/plane Υ(V,W)", FRAC_PI_4, |r| {
        disjointness_angle(v, w, r, tol)
    });
    every_route(ck, "line/plane Υ(W,V)", FRAC_PI_4, |r| {
        disjointness_angle(w, v, r, tol)
    });
    every_route(ck, "line/plane Ψ(V,W)", 0.0, |r| {
        supplementation_angle(v, w, r, tol)
    });

    // Complex planes.
    let (v, w) = (get(4, "V"), get(4, "W"));
    every_route(ck, "C^3 planes Θ(V,W)", (1.0 / 3f64.sqrt()).acos(), |r| {
        asymmetric_angle(v, w, r, tol)
    });
    every_route(ck, "C^3 planes Υ(V,W)", 0.0, |r| {
        disjointness_angle(v, w, r, tol)
    });
    every_route(
        ck,
        "C^3 planes Ψ(V,W)",
        (2.0f64 / 3.0).sqrt().asin(),
        |r| supplementation_angle(v, w, r, tol),
    );
    match coordinate_angles(v, &Matrix::identity(3), tol) {
        Ok(list) => {
            for (idx, t) in list {
                ck.value(
                    "golden",
                    format!("C^3 planes cos Θ(V,[e{idx}])"),
                    Ok(t.cos()),
                    1.0 / 3f64.sqrt(),
                );
            }
        }
        Err(e) => ck.error("golden", "C^3 coordinate planes", e),
    }

    // Planes in R^4 that do not supplement.
    let (v, w) = (get(5, "V"), get(5, "W"));
    every_route(ck, "R^4 planes Ψ(V,W)", 0.0, |r| {
        supplementation_angle(v, w, r, tol)
    });

    // Pythagorean identity in C^2 and its realification.
    let v = get(6, "v");
    match coordinate_angles(v, &Matrix::identity(2), tol) {
        Ok(list) => {
            for ((idx, t), want) in list.into_iter().zip([60.0, 30.0]) {
                ck.angle(
                    "golden",
                    format!("C^2 line Θ(v,[e{idx}])"),
                    Ok(t),
                    deg(want),
                );
            }
        }
        Err(e) => ck.error("golden", "C^2 coordinate lines", e),
    }
    let v = get(7, "v");
    match coordinate_angles(v, &Matrix::identity(4), tol) {
        Ok(list) => {
            let mut got: Vec<f64> = list.iter().map(|(_, t)| t.to_degrees()).collect();
            got.sort_by(f64::total_cmp);
            let mut want = [75.5, 64.3, 64.3, 90.0, 90.0, 41.4];
            want.sort_by(f64::total_cmp);
            for (k, (g, x)) in got.into_iter().zip(want).enumerate() {
                ck.within(
                    "golden",
                    format!("R^4 realified line angle {}", k + 1),
                    Ok(g),
                    x,
                    0.05,
                );
            }
            let sum: f64 = list.iter().map(|(_, t)| t.cos().powi(2)).sum();
            ck.value("golden", "R^4 realified line Σcos²", Ok(sum), 1.0);
        }
        Err(e) => ck.error("golden", "R^4 coordinate planes", e),
    }
}
