//! The cone through the pentagram vertices and the spectrum of its matrix.
//!
//! The eigenvalues of the cone are the roots of `t(2t - 1)^2 = omega (t - 1)`,
//! i.e. `4t^3 - 4t^2 + (1 - omega) t + omega = 0`. For `omega` at or above the
//! critical value `golden^5` all three roots are real: one negative root `G`
//! and two roots `1 < G' <= G''`.

use std::f64::consts::PI;

use crate::elliptic::EllipticContext;
use crate::error::{domain, Error, Result};
use crate::pentagram::{AlphaCycle, GOLDEN};
use crate::vec3::Vec3;

/// Below `critical_omega() - SUBCRITICAL_SLACK` the cubic has a single real root.
pub const SUBCRITICAL_SLACK: f64 = 1e-12;

/// Within this distance above the critical value the double root is returned exactly.
pub const CRITICAL_BAND: f64 = 1e-10;

/// `((1 + sqrt 5)/2)^5 = (11 + 5 sqrt 5)/2`.
pub fn critical_omega() -> f64 {
    (11.0 + 5.0 * 5f64.sqrt()) / 2.0
}

/// The quadric cone `z^2 + p xz + q yz + r xy = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeQuadric {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl ConeQuadric {
    pub fn new(p: f64, q: f64, r: f64) -> Self {
        Self { p, q, r }
    }

    /// Cone through the sphere vertices of the pentagram with `alpha_0 = alpha`
    /// and `alpha_2 = gamma`.
    pub fn from_alpha_gamma(alpha: f64, gamma: f64) -> Result<Self> {
        if !(alpha > 0.0 && gamma > 0.0) {
            return Err(domain(format!(
                "alpha = {alpha} and gamma = {gamma} must both be positive"
            )));
        }
        Ok(Self {
            p: -alpha.sqrt(),
            q: -gamma.sqrt(),
            r: -(1.0 + alpha + gamma) / (alpha * gamma).sqrt(),
        })
    }

    pub fn from_cycle(c: &AlphaCycle) -> Result<Self> {
        Self::from_alpha_gamma(c.get(0), c.get(2))
    }

    pub fn evaluate(&self, v: &Vec3) -> f64 {
        let [x, y, z] = *v;
        z * z + self.p * x * z + self.q * y * z + self.r * x * y
    }

    /// The symmetric matrix of the quadratic form.
    pub fn matrix(&self) -> [[f64; 3]; 3] {
        let (p, q, r) = (0.5 * self.p, 0.5 * self.q, 0.5 * self.r);
        [[0.0, r, p], [r, 0.0, q], [p, q, 1.0]]
    }

    /// Coefficients `[c0, c1, c2]` of `det(tI - A) = t^3 - t^2 + c1 t + c0`, with `c2 = -1`.
    pub fn characteristic_polynomial(&self) -> [f64; 3] {
        let (p, q, r) = (self.p, self.q, self.r);
        [-r * (p * q - r) / 4.0, -(p * p + q * q + r * r) / 4.0, -1.0]
    }
}

pub fn cone_coefficients(alpha: f64, gamma: f64) -> Result<ConeQuadric> {
    ConeQuadric::from_alpha_gamma(alpha, gamma)
}

pub fn characteristic_matrix(c: &ConeQuadric) -> [[f64; 3]; 3] {
    c.matrix()
}

/// The three real roots of the characteristic cubic, sorted `G < 0 < G' <= G''`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralTriple {
    pub negative: f64,
    pub lower: f64,
    pub upper: f64,
    pub omega: f64,
}

impl SpectralTriple {
    pub fn roots(&self) -> [f64; 3] {
        [self.negative, self.lower, self.upper]
    }

    /// `t(2t-1)^2 - omega (t-1)` at each root.
    pub fn root_residuals(&self) -> [f64; 3] {
        self.roots().map(|t| cubic(self.omega, t))
    }

    /// Residuals of `G G' G'' = -omega/4`, `(G-1)(G'-1)(G''-1) = -1/4`
    /// and `(2G-1)(2G'-1)(2G''-1) = -omega`.
    pub fn product_identities(&self) -> [f64; 3] {
        let [a, b, c] = self.roots();
        [
            a * b * c + self.omega / 4.0,
            (a - 1.0) * (b - 1.0) * (c - 1.0) + 0.25,
            (2.0 * a - 1.0) * (2.0 * b - 1.0) * (2.0 * c - 1.0) + self.omega,
        ]
    }

    /// Semi-axes `sqrt(-G/G')` and `sqrt(-G/G'')` of the projected ellipse.
    pub fn semi_axes(&self) -> (f64, f64) {
        (
            (-self.negative / self.lower).sqrt(),
            (-self.negative / self.upper).sqrt(),
        )
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }
}

fn cubic(omega: f64, t: f64) -> f64 {
    ((4.0 * t - 4.0) * t + (1.0 - omega)) * t + omega
}

fn cubic_derivative(omega: f64, t: f64) -> f64 {
    (12.0 * t - 8.0) * t + (1.0 - omega)
}

fn polish(omega: f64, mut t: f64) -> f64 {
    let mut f = cubic(omega, t);
    for _ in 0..4 {
        let d = cubic_derivative(omega, t);
        if d == 0.0 || f == 0.0 {
            break;
        }
        let next = t - f / d;
        let g = cubic(omega, next);
        if g.abs() >= f.abs() {
            break;
        }
        t = next;
        f = g;
    }
    t
}

/// Solves `t(2t - 1)^2 = omega (t - 1)` in the three-real-root regime.
pub fn solve_characteristic(omega: f64) -> Result<SpectralTriple> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(domain(format!(
            "omega = {omega} must be positive and finite"
        )));
    }
    let critical = critical_omega();
    if omega < critical - SUBCRITICAL_SLACK {
        return Err(Error::Subcritical { omega, critical });
    }
    if omega - critical < CRITICAL_BAND {
        let double = GOLDEN * GOLDEN / 2.0;
        return Ok(SpectralTriple {
            negative: -GOLDEN,
            lower: double,
            upper: double,
            omega,
        });
    }
    // monic t^3 - t^2 + b t + c, shifted by t = s + 1/3 to s^3 + p s + q
    let b = (1.0 - omega) / 4.0;
    let c = omega / 4.0;
    let p = b - 1.0 / 3.0;
    let q = -2.0 / 27.0 + b / 3.0 + c;
    let m = 2.0 * (-p / 3.0).sqrt();
    let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
    let theta = arg.acos() / 3.0;
    let mut roots: [f64; 3] = std::array::from_fn(|j| {
        polish(
            omega,
            m * (theta - 2.0 * PI * j as f64 / 3.0).cos() + 1.0 / 3.0,
        )
    });
    roots.sort_by(|a, b| a.total_cmp(b));
    Ok(SpectralTriple {
        negative: roots[0],
        lower: roots[1],
        upper: roots[2],
        omega,
    })
}

/// Elliptic data read off the spectrum: the modulus `k` and the values
/// `cn w = -G'/G`, `dn w = G'/G''` at the fifth-period step `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralModulus {
    pub k: f64,
    pub cn_w: f64,
    pub dn_w: f64,
}

pub fn modulus_from_spectrum(s: &SpectralTriple) -> Result<SpectralModulus> {
    let (g, g1, g2) = (s.negative, s.lower, s.upper);
    if !(g < 0.0 && g1 > 0.0 && g1 <= g2) {
        return Err(Error::Invariant(format!(
            "roots ({g}, {g1}, {g2}) are not ordered G < 0 < G' <= G''"
        )));
    }
    let cn_w = -g1 / g;
    let dn_w = g1 / g2;
    // k^2 = (G'^-2 - G''^-2) / (G'^-2 - G^-2), factored to keep the near-double-root difference exact
    let k2 = (g2 - g1) * (g2 + g1) * g * g / (g2 * g2 * (g - g1) * (g + g1));
    let k = k2.sqrt();
    if !(0.0..1.0).contains(&k) {
        return Err(domain(format!("spectral modulus {k} is outside [0, 1)")));
    }
    Ok(SpectralModulus { k, cn_w, dn_w })
}

/// Residuals `cn(2K/5) + G'/G` and `dn(2K/5) - G'/G''` for the spectral modulus.
pub fn bridge_residuals(s: &SpectralTriple) -> Result<(f64, f64)> {
    let m = modulus_from_spectrum(s)?;
    let ctx = EllipticContext::new(m.k)?;
    let t = ctx.jacobi(0.4 * ctx.quarter_period());
    Ok((t.cn - m.cn_w, t.dn - m.dn_w))
}
