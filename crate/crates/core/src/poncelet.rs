//! Poncelet's chord construction between two nested circles and Jacobi's
//! elliptic solution of its closure problem.
//!
//! The outer circle of radius `R` is centred at the origin, the inner circle
//! of radius `r` at `(-a, 0)`. A vertex on the outer circle at polar angle
//! `2 phi` is recorded by its half-angle `phi`. Consecutive half-angles satisfy
//!
//! ```text
//! (R + a) cos phi_{i+1} cos phi_i + (R - a) sin phi_{i+1} sin phi_i = r
//! ```
//!
//! and are shadowed by `phi_i = am(u_0 + i t)` with `t = F(alpha, k)`,
//! `cos alpha = r/(R + a)`, `k^2 = 4Ra/((R + a)^2 - r^2)`.

use std::f64::consts::PI;

use crate::elliptic::EllipticContext;
use crate::error::{domain, Error, Result};

const RECURSION_TOL: f64 = 1e-10;

/// Two strictly nested circles with the centre of the outer one inside the inner one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoCircleConfig {
    outer: f64,
    inner: f64,
    offset: f64,
}

impl TwoCircleConfig {
    pub fn new(outer: f64, inner: f64, offset: f64) -> Result<Self> {
        let geometry = |msg: String| Err(Error::Geometry(msg));
        if !(outer.is_finite() && inner.is_finite() && offset.is_finite()) {
            return geometry(format!(
                "radii and offset must be finite ({outer}, {inner}, {offset})"
            ));
        }
        if outer <= 0.0 || inner <= 0.0 {
            return geometry(format!("radii must be positive (R = {outer}, r = {inner})"));
        }
        if offset < 0.0 {
            return geometry(format!("offset a = {offset} must be non-negative"));
        }
        if offset >= inner {
            return geometry(format!(
                "offset a = {offset} must be smaller than the inner radius r = {inner}"
            ));
        }
        if offset + inner >= outer {
            return geometry(format!(
                "inner circle is not strictly inside: a + r = {} >= R = {outer}",
                offset + inner
            ));
        }
        Ok(Self {
            outer,
            inner,
            offset,
        })
    }

    pub fn outer(&self) -> f64 {
        self.outer
    }

    pub fn inner(&self) -> f64 {
        self.inner
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// The same configuration scaled to `R = 1`.
    pub fn normalized(&self) -> Self {
        Self {
            outer: 1.0,
            inner: self.inner / self.outer,
            offset: self.offset / self.outer,
        }
    }

    pub fn modulus(&self) -> Result<ConfigModulus> {
        let (big, small, a) = (self.outer, self.inner, self.offset);
        let span = (big + a) * (big + a) - small * small;
        let k2 = 4.0 * big * a / span;
        if k2 >= 1.0 {
            return Err(domain(format!(
                "configuration modulus k^2 = {k2} is not below 1"
            )));
        }
        let k = k2.sqrt();
        let alpha = (small / (big + a)).acos();
        Ok(ConfigModulus {
            k,
            alpha,
            dn_residual: (1.0 - k2 * alpha.sin().powi(2)).sqrt() - (big - a) / (big + a),
            k2_residual: k2 - (1.0 - ((big - a) * (big - a) - small * small) / span),
        })
    }

    fn coefficients(&self) -> (f64, f64) {
        (self.outer + self.offset, self.outer - self.offset)
    }
}

/// The modulus `k` and step amplitude `alpha` of a configuration, together
/// with the residuals of `sqrt(1 - k^2 sin^2 alpha) = (R-a)/(R+a)` and of the
/// two printed forms of `k^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfigModulus {
    pub k: f64,
    pub alpha: f64,
    pub dn_residual: f64,
    pub k2_residual: f64,
}

/// Validates and rescales to `R = 1`.
pub fn validate_config(c: &TwoCircleConfig) -> Result<TwoCircleConfig> {
    Ok(TwoCircleConfig::new(c.outer, c.inner, c.offset)?.normalized())
}

pub fn modulus_of_config(c: &TwoCircleConfig) -> Result<(f64, f64)> {
    let m = c.modulus()?;
    Ok((m.k, m.alpha))
}

/// Residual of `(R+a) cos phi' cos phi + (R-a) sin phi' sin phi - r`.
pub fn chord_residual(c: &TwoCircleConfig, phi: f64, next: f64) -> f64 {
    let (plus, minus) = c.coefficients();
    plus * next.cos() * phi.cos() + minus * next.sin() * phi.sin() - c.inner
}

/// Residual of `tan((phi_{i+1} + phi_{i-1})/2) = (R-a)/(R+a) tan phi_i`, with
/// both sides multiplied through by the cosines so that it stays finite.
pub fn recursion_residual(c: &TwoCircleConfig, prev: f64, phi: f64, next: f64) -> f64 {
    let (plus, minus) = c.coefficients();
    let half = 0.5 * (next + prev);
    (plus * half.sin() * phi.cos() - minus * half.cos() * phi.sin()) / plus
}

/// Next half-angle along the counterclockwise tangent from `phi`.
pub fn chord_step(c: &TwoCircleConfig, phi: f64, prev: Option<f64>) -> Result<f64> {
    let (plus, minus) = c.coefficients();
    let a = plus * phi.cos();
    let b = minus * phi.sin();
    let rho = a.hypot(b);
    if rho < c.inner {
        return Err(Error::NoTangent(phi));
    }
    // (a, b) lies in the same quadrant as phi, so the raw angle is within pi/2 of it
    let raw = b.atan2(a);
    let centre = phi + (raw - phi + PI).rem_euclid(2.0 * PI) - PI;
    let next = centre + (c.inner / rho).acos();
    if let Some(prev) = prev {
        let r = recursion_residual(c, prev, phi, next);
        if r.abs() > RECURSION_TOL {
            return Err(Error::Invariant(format!(
                "chord recursion fails at phi = {phi} by {r:e}"
            )));
        }
    }
    Ok(next)
}

/// Half-angles of successive vertices, stored without wrapping.
#[derive(Debug, Clone, PartialEq)]
pub struct PonceletTrajectory {
    pub phis: Vec<f64>,
    pub config: TwoCircleConfig,
}

impl PonceletTrajectory {
    /// Number of full turns made by the vertex angle `2 phi`.
    pub fn turns(&self) -> f64 {
        (self.phis[self.phis.len() - 1] - self.phis[0]) / PI
    }

    pub fn chord_residuals(&self) -> Vec<f64> {
        self.phis
            .windows(2)
            .map(|w| chord_residual(&self.config, w[0], w[1]))
            .collect()
    }

    pub fn recursion_residuals(&self) -> Vec<f64> {
        self.phis
            .windows(3)
            .map(|w| recursion_residual(&self.config, w[0], w[1], w[2]))
            .collect()
    }

    /// `phi_i - am(u_0 + i t)` for every vertex.
    pub fn shadowing_residuals(&self) -> Result<Vec<f64>> {
        let m = self.config.modulus()?;
        let ctx = EllipticContext::new(m.k)?;
        let step = ctx.incomplete_f(m.alpha);
        let start = ctx.incomplete_f(self.phis[0]);
        Ok(self
            .phis
            .iter()
            .enumerate()
            .map(|(i, phi)| phi - ctx.amplitude(start + i as f64 * step))
            .collect())
    }

    /// Vertices on the outer circle at polar angle `2 phi`.
    pub fn vertices(&self) -> Vec<[f64; 2]> {
        let big = self.config.outer;
        self.phis
            .iter()
            .map(|phi| [big * (2.0 * phi).cos(), big * (2.0 * phi).sin()])
            .collect()
    }

    /// Distance from the inner centre to each chord line, minus `r`.
    pub fn tangency_residuals(&self) -> Vec<f64> {
        let centre = [-self.config.offset, 0.0];
        self.vertices()
            .windows(2)
            .map(|w| {
                let (p, q) = (w[0], w[1]);
                let d = [q[0] - p[0], q[1] - p[1]];
                let len = d[0].hypot(d[1]);
                let cross = d[0] * (centre[1] - p[1]) - d[1] * (centre[0] - p[0]);
                cross.abs() / len - self.config.inner
            })
            .collect()
    }
}

pub fn trajectory(c: &TwoCircleConfig, phi0: f64, n: usize) -> Result<PonceletTrajectory> {
    if n == 0 {
        return Err(domain("trajectory needs at least one step"));
    }
    let mut phis = Vec::with_capacity(n + 1);
    phis.push(phi0);
    for i in 0..n {
        let prev = if i > 0 { Some(phis[i - 1]) } else { None };
        phis.push(chord_step(c, phis[i], prev)?);
    }
    Ok(PonceletTrajectory { phis, config: *c })
}

/// `F(alpha, k) - (m/n) F(pi, k)`; zero exactly when the construction closes
/// after `n` chords and `m` turns.
pub fn closure_residual(c: &TwoCircleConfig, n: usize, m: usize) -> Result<f64> {
    if n == 0 {
        return Err(domain("closure needs n >= 1"));
    }
    let modulus = c.modulus()?;
    let ctx = EllipticContext::new(modulus.k)?;
    Ok(ctx.incomplete_f(modulus.alpha) - m as f64 / n as f64 * ctx.incomplete_f(PI))
}

/// Finds the centre offset `a` for which the construction closes after `n`
/// chords and `m` turns, by bisection on `[0, min(r, R - r))`.
pub fn search_closing_config(
    n: usize,
    m: usize,
    outer: f64,
    inner: f64,
) -> Result<TwoCircleConfig> {
    if n < 3 || m == 0 || m >= n {
        return Err(domain(format!(
            "need n >= 3 and 1 <= m < n, got n = {n}, m = {m}"
        )));
    }
    if !(outer > 0.0 && inner > 0.0 && inner < outer) {
        return Err(Error::Geometry(format!(
            "need 0 < r < R, got R = {outer}, r = {inner}"
        )));
    }
    let residual = |a: f64| closure_residual(&TwoCircleConfig::new(outer, inner, a)?, n, m);
    let mut lo = 0.0;
    let mut hi = inner.min(outer - inner) - 1e-9 * outer;
    let (f_lo, f_hi) = (residual(lo)?, residual(hi)?);
    if f_lo == 0.0 {
        return TwoCircleConfig::new(outer, inner, 0.0);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSolution(format!(
            "closure residual for n = {n}, m = {m}, R = {outer}, r = {inner} keeps its sign on \
             [0, {hi}] (from {f_lo:.6e} to {f_hi:.6e})"
        )));
    }
    while hi - lo > 1e-13 * outer {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = residual(mid)?;
        if f == 0.0 {
            return TwoCircleConfig::new(outer, inner, mid);
        }
        if f.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    TwoCircleConfig::new(outer, inner, 0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn config_validation() {
        assert!(TwoCircleConfig::new(1.0, 0.5, 0.2).is_ok());
        assert!(matches!(
            TwoCircleConfig::new(1.0, 0.5, 0.6),
            Err(Error::Geometry(_))
        ));
        assert!(matches!(
            TwoCircleConfig::new(1.0, 0.9, 0.2),
            Err(Error::Geometry(_))
        ));
        assert!(matches!(
            TwoCircleConfig::new(-1.0, 0.5, 0.0),
            Err(Error::Geometry(_))
        ));
        let c = validate_config(&TwoCircleConfig::new(4.0, 2.0, 0.8).unwrap()).unwrap();
        assert_eq!((c.outer(), c.inner(), c.offset()), (1.0, 0.5, 0.2));
    }

    #[test]
    fn modulus_examples() {
        let c = TwoCircleConfig::new(1.0, 0.5, 0.0).unwrap();
        let (k, alpha) = modulus_of_config(&c).unwrap();
        assert_eq!(k, 0.0);
        assert_abs_diff_eq!(alpha.cos(), 0.5, epsilon = 1e-15);

        let c = TwoCircleConfig::new(1.0, 0.5, 0.2).unwrap();
        let m = c.modulus().unwrap();
        assert_abs_diff_eq!(m.k * m.k, 0.8 / 1.19, epsilon = 1e-15);
        assert!(m.dn_residual.abs() < 1e-12 && m.k2_residual.abs() < 1e-12);

        let c = TwoCircleConfig::new(1.0, 0.3, 0.25).unwrap();
        let m = c.modulus().unwrap();
        assert_abs_diff_eq!(m.k * m.k, 1.0 / 1.4725, epsilon = 1e-15);
        assert!(m.dn_residual.abs() < 1e-12);
    }

    #[test]
    fn concentric_steps_are_constant() {
        let c = TwoCircleConfig::new(1.0, 0.6, 0.0).unwrap();
        let t = trajectory(&c, 0.3, 12).unwrap();
        let step = 0.6f64.acos();
        for (i, phi) in t.phis.iter().enumerate() {
            assert_abs_diff_eq!(*phi, 0.3 + i as f64 * step, epsilon = 1e-13);
        }
    }

    #[test]
    fn first_step_from_zero() {
        let c = TwoCircleConfig::new(1.0, 0.5, 0.2).unwrap();
        let next = chord_step(&c, 0.0, None).unwrap();
        assert_abs_diff_eq!(next, (0.5f64 / 1.2).acos(), epsilon = 1e-15);
        assert_abs_diff_eq!(next, c.modulus().unwrap().alpha, epsilon = 1e-15);
    }

    #[test]
    fn trajectory_identities() {
        let c = TwoCircleConfig::new(1.0, 0.5, 0.2).unwrap();
        let t = trajectory(&c, 0.4, 50).unwrap();
        for w in t.phis.windows(2) {
            assert!(w[1] > w[0]);
        }
        for r in t.chord_residuals() {
            assert!(r.abs() < 1e-12);
        }
        for r in t.recursion_residuals() {
            assert!(r.abs() < 1e-10);
        }
        for r in t.tangency_residuals() {
            assert!(r.abs() < 1e-12);
        }
        for r in t.shadowing_residuals().unwrap() {
            assert!(r.abs() < 1e-9);
        }
        // the centre-distance form of the chord relation
        for w in t.phis.windows(2) {
            let alt = (w[1] - w[0]).cos() + 0.2 * (w[1] + w[0]).cos();
            assert_abs_diff_eq!(alt, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn concentric_closure() {
        for (n, m) in [(5, 1), (5, 2), (7, 3), (8, 1)] {
            let ratio = (m as f64 * PI / n as f64).cos();
            let c = TwoCircleConfig::new(1.0, ratio, 0.0).unwrap();
            assert!(closure_residual(&c, n, m).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn non_closing_config() {
        let c = TwoCircleConfig::new(1.0, 0.5, 0.2).unwrap();
        assert!(closure_residual(&c, 5, 2).unwrap().abs() > 1e-4);
    }

    #[test]
    fn search_reproduces_euler_and_fuss() {
        // triangle: a^2 = R^2 - 2Rr
        let c = search_closing_config(3, 1, 1.0, 0.45).unwrap();
        assert_abs_diff_eq!(c.offset(), (1.0f64 - 0.9).sqrt(), epsilon = 1e-11);
        // quadrilateral: (R^2 - a^2)^2 = 2 r^2 (R^2 + a^2)
        let c = search_closing_config(4, 1, 1.0, 0.6).unwrap();
        let a2 = c.offset().powi(2);
        assert_abs_diff_eq!((1.0 - a2).powi(2), 2.0 * 0.36 * (1.0 + a2), epsilon = 1e-11);
    }

    #[test]
    fn pentagram_search_needs_a_small_inner_circle() {
        let c = search_closing_config(5, 2, 1.0, 0.3).unwrap();
        assert!(closure_residual(&c, 5, 2).unwrap().abs() < 1e-12);
        for phi0 in [0.0, 0.7, 1.9, 2.6, -1.1] {
            let t = trajectory(&c, phi0, 5).unwrap();
            assert!((t.phis[5] - phi0 - 2.0 * PI).abs() < 1e-8);
        }
        // cos(2 pi/5) is the largest inner radius that admits a (5, 2) pentagram
        assert!(matches!(
            search_closing_config(5, 2, 1.0, 0.4),
            Err(Error::NoSolution(_))
        ));
    }

    #[test]
    fn search_argument_errors() {
        assert!(matches!(
            search_closing_config(2, 1, 1.0, 0.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            search_closing_config(5, 5, 1.0, 0.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            search_closing_config(5, 1, 1.0, 1.5),
            Err(Error::Geometry(_))
        ));
    }
}
