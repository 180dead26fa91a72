//! The pentagon seen from the centre of the sphere on the tangent plane `z = 1`.
//!
//! The projected vertices `R_i = (x_i, y_i)` lie on an axis-aligned ellipse
//! with semi-axes `sqrt(-G/G')`, `sqrt(-G/G'')`. Each vertex can be rebuilt
//! from its two next-nearest neighbours, or from its two neighbours together
//! with the spectrum, and the eccentric anomalies satisfy Gauss's half-angle
//! relations.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::spectrum::SpectralTriple;
use crate::uniformization::PentagonFrame;

pub type Point = [f64; 2];

/// Tolerance for points lying on the fitted ellipse.
pub const ELLIPSE_TOL: f64 = 1e-9;

const SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarPentagon {
    pub points: [Point; 5],
    /// Semi-axes along x and y.
    pub axes: (f64, f64),
    /// Eccentric anomalies in `[0, 2 pi)`.
    pub anomalies: [f64; 5],
}

impl PlanarPentagon {
    /// Fits an origin-centred axis-aligned ellipse through five points.
    ///
    /// The two unknowns `1/a^2`, `1/b^2` are solved exactly from the
    /// best-conditioned pair of points; the other three are verified.
    pub fn from_points(points: [Point; 5]) -> Result<Self> {
        let mut best = (0, 1, 0.0f64);
        for i in 0..5 {
            for j in i + 1..5 {
                let (p, q) = (points[i], points[j]);
                let det = p[0] * p[0] * q[1] * q[1] - p[1] * p[1] * q[0] * q[0];
                if det.abs() > best.2.abs() {
                    best = (i, j, det);
                }
            }
        }
        let (i, j, det) = best;
        if det.abs() < SINGULAR_TOL {
            return Err(Error::Invariant(
                "points do not determine an axis-aligned ellipse".into(),
            ));
        }
        let (p, q) = (points[i], points[j]);
        let inv_a2 = (q[1] * q[1] - p[1] * p[1]) / det;
        let inv_b2 = (p[0] * p[0] - q[0] * q[0]) / det;
        if !(inv_a2 > 0.0 && inv_b2 > 0.0) {
            return Err(Error::Invariant(format!(
                "fitted conic (1/a^2, 1/b^2) = ({inv_a2}, {inv_b2}) is not an ellipse"
            )));
        }
        let axes = (inv_a2.sqrt().recip(), inv_b2.sqrt().recip());
        let mut anomalies = [0.0; 5];
        for (phi, point) in anomalies.iter_mut().zip(&points) {
            *phi = eccentric_anomaly(point, axes).map_err(|e| {
                Error::Invariant(format!("points are not on a common ellipse: {e}"))
            })?;
        }
        Ok(Self {
            points,
            axes,
            anomalies,
        })
    }

    /// Drops the constant third coordinate of the frame vectors.
    pub fn from_frame(frame: &PentagonFrame) -> Result<Self> {
        Self::from_points(frame.vectors.map(|r| [r[0], r[1]]))
    }

    /// Anomalies lifted to an increasing sequence, each step in `[0, 2 pi)`.
    pub fn unwrapped_anomalies(&self) -> [f64; 5] {
        unwrap_increasing(&self.anomalies)
    }

    pub fn recover_from_pm2(&self, i: usize) -> Result<Point> {
        recover_from_pm2(&self.points, i)
    }

    pub fn recover_from_pm1(&self, spectral: &SpectralTriple, i: usize) -> Result<Point> {
        recover_from_pm1(&self.points, spectral, i)
    }

    pub fn confocal_residual(&self, spectral: &SpectralTriple, i: usize) -> f64 {
        confocal_residual(&self.points, spectral, i)
    }

    pub fn orthogonality_residuals(&self) -> [f64; 5] {
        orthogonality_residuals(&self.points)
    }

    pub fn gauss_residuals(&self, spectral: &SpectralTriple) -> GaussResiduals {
        gauss_theorem_residuals(&self.anomalies, spectral)
    }
}

pub fn pentagon_from_frame(f: &PentagonFrame) -> Result<PlanarPentagon> {
    PlanarPentagon::from_frame(f)
}

/// Eccentric anomaly in `[0, 2 pi)` of a point on the ellipse with the given semi-axes.
pub fn eccentric_anomaly(point: &Point, axes: (f64, f64)) -> Result<f64> {
    let (u, v) = (point[0] / axes.0, point[1] / axes.1);
    let residual = u * u + v * v - 1.0;
    if residual.abs() > ELLIPSE_TOL {
        return Err(Error::OffEllipse {
            x: point[0],
            y: point[1],
            residual,
        });
    }
    let phi = v.atan2(u);
    Ok(if phi < 0.0 { phi + TAU } else { phi })
}

fn unwrap_increasing(angles: &[f64; 5]) -> [f64; 5] {
    let mut out = *angles;
    for j in 1..5 {
        out[j] = out[j - 1] + (angles[j] - angles[j - 1]).rem_euclid(TAU);
    }
    out
}

fn at(points: &[Point; 5], i: isize) -> Point {
    points[i.rem_euclid(5) as usize]
}

/// Rebuilds `R_i` from `R_{i-2}` and `R_{i+2}` using the two right angles at the centre.
pub fn recover_from_pm2(points: &[Point; 5], i: usize) -> Result<Point> {
    let i = i as isize;
    let (m, p) = (at(points, i - 2), at(points, i + 2));
    let den = p[0] * m[1] - p[1] * m[0];
    if den.abs() < SINGULAR_TOL {
        return Err(Error::Singular(format!(
            "vertices {} and {} are collinear with the origin",
            (i - 2).rem_euclid(5),
            (i + 2).rem_euclid(5)
        )));
    }
    Ok([(p[1] - m[1]) / den, (m[0] - p[0]) / den])
}

/// Rebuilds `R_i` from `R_{i-1}` and `R_{i+1}` through the confocal chord relation.
pub fn recover_from_pm1(points: &[Point; 5], spectral: &SpectralTriple, i: usize) -> Result<Point> {
    let i = i as isize;
    let (m, p) = (at(points, i - 1), at(points, i + 1));
    let den = m[0] * p[1] - p[0] * m[1];
    if den.abs() < SINGULAR_TOL {
        return Err(Error::Singular(format!(
            "vertices {} and {} are collinear with the origin",
            (i - 1).rem_euclid(5),
            (i + 1).rem_euclid(5)
        )));
    }
    let (g, g1, g2) = (spectral.negative, spectral.lower, spectral.upper);
    let base = 2.0 * g - 1.0;
    Ok([
        -(2.0 * g1 - 1.0) / base * (p[1] - m[1]) / den,
        (2.0 * g2 - 1.0) / base * (p[0] - m[0]) / den,
    ])
}

/// `x_i x_{i+1}/(2G'-1) + y_i y_{i+1}/(2G''-1) + 1/(2G-1)`.
pub fn confocal_residual(points: &[Point; 5], spectral: &SpectralTriple, i: usize) -> f64 {
    let (a, b) = (at(points, i as isize), at(points, i as isize + 1));
    a[0] * b[0] / (2.0 * spectral.lower - 1.0)
        + a[1] * b[1] / (2.0 * spectral.upper - 1.0)
        + 1.0 / (2.0 * spectral.negative - 1.0)
}

/// `x_{i-1} x_{i+1} + y_{i-1} y_{i+1} + 1` for each `i`.
pub fn orthogonality_residuals(points: &[Point; 5]) -> [f64; 5] {
    std::array::from_fn(|i| {
        let (a, b) = (at(points, i as isize - 1), at(points, i as isize + 1));
        a[0] * b[0] + a[1] * b[1] + 1.0
    })
}

/// Squared tangents of the angles subtended at the centre by consecutive
/// vertices, written out in plane coordinates.
pub fn chord_alphas(points: &[Point; 5]) -> [f64; 5] {
    std::array::from_fn(|i| {
        let (a, b) = (points[i], points[(i + 1) % 5]);
        let inner = a[0] * b[0] + a[1] * b[1] + 1.0;
        chord_numerator(&a, &b) / (inner * inner)
    })
}

/// Squared sines of the same angles.
pub fn chord_betas(points: &[Point; 5]) -> [f64; 5] {
    std::array::from_fn(|i| {
        let (a, b) = (points[i], points[(i + 1) % 5]);
        let na = a[0] * a[0] + a[1] * a[1] + 1.0;
        let nb = b[0] * b[0] + b[1] * b[1] + 1.0;
        chord_numerator(&a, &b) / (na * nb)
    })
}

fn chord_numerator(a: &Point, b: &Point) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let w = a[0] * b[1] - a[1] * b[0];
    dx * dx + dy * dy + w * w
}

/// Residuals of Gauss's four half-angle relations between eccentric anomalies.
///
/// With `S = (phi_{i-s} + phi_{i+s})/2` and `D = (phi_{i-s} - phi_{i+s})/2`:
/// for `s = 2`, `sin S / cos D = (G/G'') sin phi_i` and
/// `cos S / cos D = (G/G') cos phi_i`; for `s = 1` the factors become
/// `G(2G-1)/(G''(2G''-1))` and `G(2G-1)/(G'(2G'-1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussResiduals {
    pub far_sin: [f64; 5],
    pub far_cos: [f64; 5],
    pub near_sin: [f64; 5],
    pub near_cos: [f64; 5],
    /// `sqrt(G(G-1)/(X(X-1))) - G(2G-1)/(X(2X-1))` for `X = G''` and `X = G'`.
    pub root_forms: [f64; 2],
}

impl GaussResiduals {
    pub fn values(&self) -> [f64; 20] {
        let mut out = [0.0; 20];
        for (chunk, src) in
            out.chunks_mut(5)
                .zip([&self.far_sin, &self.far_cos, &self.near_sin, &self.near_cos])
        {
            chunk.copy_from_slice(src);
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.values()
            .iter()
            .chain(&self.root_forms)
            .fold(0.0, |m, r| m.max(r.abs()))
    }
}

pub fn gauss_theorem_residuals(anomalies: &[f64; 5], spectral: &SpectralTriple) -> GaussResiduals {
    let lifted = unwrap_increasing(anomalies);
    let phi = |j: isize| lifted[j.rem_euclid(5) as usize] + TAU * j.div_euclid(5) as f64;
    let (g, g1, g2) = (spectral.negative, spectral.lower, spectral.upper);
    let near = |x: f64| g * (2.0 * g - 1.0) / (x * (2.0 * x - 1.0));
    let relation = |i: isize, s: isize, sin_factor: f64, cos_factor: f64| {
        let (a, b, mid) = (phi(i - s), phi(i + s), phi(i));
        let (sum, diff) = (0.5 * (a + b), 0.5 * (a - b));
        let c = diff.cos();
        (
            sum.sin() / c - sin_factor * mid.sin(),
            sum.cos() / c - cos_factor * mid.cos(),
        )
    };
    let mut out = GaussResiduals {
        far_sin: [0.0; 5],
        far_cos: [0.0; 5],
        near_sin: [0.0; 5],
        near_cos: [0.0; 5],
        root_forms: [
            (g * (g - 1.0) / (g2 * (g2 - 1.0))).sqrt() - near(g2),
            (g * (g - 1.0) / (g1 * (g1 - 1.0))).sqrt() - near(g1),
        ],
    };
    for i in 0..5 {
        (out.far_sin[i], out.far_cos[i]) = relation(i as isize, 2, g / g2, g / g1);
        (out.near_sin[i], out.near_cos[i]) = relation(i as isize, 1, near(g2), near(g1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pentagram::GOLDEN;
    use crate::spectrum::solve_characteristic;
    use crate::uniformization::{frame_vectors, omega_of_k};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn planar(k: f64, u: f64) -> (PlanarPentagon, SpectralTriple) {
        let f = frame_vectors(k, u).unwrap();
        let s = solve_characteristic(omega_of_k(k).unwrap()).unwrap();
        (PlanarPentagon::from_frame(&f).unwrap(), s)
    }

    #[test]
    fn regular_pentagon_on_circle() {
        let (p, s) = planar(0.0, 0.0);
        let radius = (2.0 / GOLDEN).sqrt();
        assert_abs_diff_eq!(p.axes.0, radius, epsilon = 1e-12);
        assert_abs_diff_eq!(p.axes.1, radius, epsilon = 1e-12);
        let lifted = p.unwrapped_anomalies();
        for j in 1..5 {
            assert_abs_diff_eq!(lifted[j] - lifted[j - 1], 2.0 * PI / 5.0, epsilon = 1e-12);
        }
        assert!(p.gauss_residuals(&s).max_abs() < 1e-10);
        for i in 0..5 {
            assert!(p.confocal_residual(&s, i).abs() < 1e-9);
            let r = p.recover_from_pm2(i).unwrap();
            assert!((r[0] - p.points[i][0]).abs() < 1e-9 && (r[1] - p.points[i][1]).abs() < 1e-9);
        }
    }

    #[test]
    fn axes_match_spectrum() {
        let k = crate::uniformization::k_of_omega(20.0).unwrap();
        let (p, s) = planar(k, 0.2);
        let (a, b) = s.semi_axes();
        assert_abs_diff_eq!(p.axes.0, a, epsilon = 1e-8);
        assert_abs_diff_eq!(p.axes.1, b, epsilon = 1e-8);
    }

    #[test]
    fn anomaly_basics() {
        let axes = (2.0, 0.5);
        assert_eq!(eccentric_anomaly(&[2.0, 0.0], axes).unwrap(), 0.0);
        assert_abs_diff_eq!(
            eccentric_anomaly(&[0.0, 0.5], axes).unwrap(),
            PI / 2.0,
            epsilon = 1e-15
        );
        let p = [2.0 * 1f64.cos(), 0.5 * 1f64.sin()];
        assert_abs_diff_eq!(eccentric_anomaly(&p, axes).unwrap(), 1.0, epsilon = 1e-15);
        let p = [2.0 * 4f64.cos(), 0.5 * 4f64.sin()];
        assert_abs_diff_eq!(eccentric_anomaly(&p, axes).unwrap(), 4.0, epsilon = 1e-14);
        assert!(matches!(
            eccentric_anomaly(&[1.0, 1.0], axes),
            Err(Error::OffEllipse { .. })
        ));
    }

    #[test]
    fn recovery_and_confocal_relation() {
        for k in [0.2, 0.5, 0.8] {
            let (p, s) = planar(k, 0.35);
            for i in 0..5 {
                let a = p.recover_from_pm2(i).unwrap();
                let b = p.recover_from_pm1(&s, i).unwrap();
                for c in 0..2 {
                    assert!((a[c] - p.points[i][c]).abs() < 1e-9);
                    assert!((b[c] - p.points[i][c]).abs() < 1e-9);
                    assert!((a[c] - b[c]).abs() < 1e-8);
                }
                assert!(p.confocal_residual(&s, i).abs() < 1e-9);
            }
            for r in p.orthogonality_residuals() {
                assert!(r.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn chord_quantities_match_frame() {
        let f = frame_vectors(0.6, 1.3).unwrap();
        let p = PlanarPentagon::from_frame(&f).unwrap();
        let alphas = f.alphas().unwrap().values();
        let betas = chord_betas(&p.points);
        for ((a, b), c) in chord_alphas(&p.points).iter().zip(alphas).zip(betas) {
            assert!((a - b).abs() < 1e-10 * b.max(1.0));
            assert_abs_diff_eq!(c, a / (1.0 + a), epsilon = 1e-13);
        }
    }

    #[test]
    fn gauss_relations() {
        for k in [0.2, 0.5, crate::uniformization::k_of_omega(20.0).unwrap()] {
            let (p, s) = planar(k, -0.6);
            let r = p.gauss_residuals(&s);
            assert!(r.max_abs() < 1e-8, "k={k}: {r:?}");
        }
    }

    #[test]
    fn perturbed_anomalies_break_the_relations() {
        let (p, s) = planar(0.5, 0.1);
        let mut phis = p.anomalies;
        phis[2] += 0.05;
        assert!(gauss_theorem_residuals(&phis, &s).max_abs() > 1e-3);
    }

    #[test]
    fn negative_controls() {
        let (_, s) = planar(0.5, 0.0);
        let pts = [[0.3, 0.9], [-1.2, 0.4], [0.1, -0.7], [2.0, 0.0], [0.5, 0.5]];
        assert!(confocal_residual(&pts, &s, 0).abs() > 0.1);
        let collinear = [[0.3, 0.1], [1.0, 1.0], [0.5, 0.5], [2.0, 2.0], [0.0, 1.0]];
        assert!(matches!(
            recover_from_pm2(&collinear, 0),
            Err(Error::Singular(_))
        ));
        assert!(matches!(
            recover_from_pm1(&collinear, &s, 2),
            Err(Error::Singular(_))
        ));
        assert!(matches!(
            PlanarPentagon::from_points(pts),
            Err(Error::Invariant(_))
        ));
    }
}
