//! Real Jacobi elliptic functions and the elliptic integral of the first kind
//! for a modulus `0 <= k < 1`.
//!
//! The quarter period K comes from the arithmetic-geometric mean. The
//! amplitude (and with it sn, cn, dn) is obtained by running the descending
//! Landen transformation backwards through the stored AGM ladder. The
//! incomplete integral F uses Carlson's symmetric form R_F, so that `am` and
//! `F` are computed along unrelated paths and their round trip is a real check.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// Default evaluation tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Largest accepted modulus. K grows like `ln(4/k')` and loses accuracy beyond this.
pub const MAX_MODULUS: f64 = 1.0 - 1e-12;

const MAX_AGM_STEPS: usize = 64;

/// Values of sn, cn and dn at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

impl JacobiTriple {
    /// Residuals of `sn² + cn² = 1` and `dn² + k² sn² = 1`.
    pub fn identity_residuals(&self, k: f64) -> (f64, f64) {
        (
            self.sn * self.sn + self.cn * self.cn - 1.0,
            self.dn * self.dn + k * k * self.sn * self.sn - 1.0,
        )
    }

    /// Largest componentwise difference from another triple.
    pub fn max_abs_diff(&self, other: &JacobiTriple) -> f64 {
        (self.sn - other.sn)
            .abs()
            .max((self.cn - other.cn).abs())
            .max((self.dn - other.dn).abs())
    }
}

/// A fixed modulus together with its quarter period and the AGM ladder used
/// to evaluate the elliptic functions.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticContext {
    k: f64,
    kc: f64,
    quarter_period: f64,
    tol: f64,
    // (a_n, c_n) for n = 0..=N
    ladder: Vec<(f64, f64)>,
}

impl EllipticContext {
    pub fn new(k: f64) -> Result<Self> {
        check_modulus(k)?;
        // (1-k)(1+k) keeps k' accurate for k near 1
        let kc = ((1.0 - k) * (1.0 + k)).sqrt();
        let mut a = 1.0;
        let mut b = kc;
        let mut c = k;
        let mut ladder = vec![(a, c)];
        while c > f64::EPSILON * a && ladder.len() < MAX_AGM_STEPS {
            let next_a = 0.5 * (a + b);
            let next_b = (a * b).sqrt();
            // c_{n+1} = (a_n - b_n)/2 without the cancellation
            c = c * c / (4.0 * next_a);
            a = next_a;
            b = next_b;
            ladder.push((a, c));
        }
        Ok(Self {
            k,
            kc,
            quarter_period: PI / (2.0 * a),
            tol: DEFAULT_TOL,
            ladder,
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn modulus(&self) -> f64 {
        self.k
    }

    pub fn complementary_modulus(&self) -> f64 {
        self.kc
    }

    /// The complete integral K(k).
    pub fn quarter_period(&self) -> f64 {
        self.quarter_period
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Amplitude `am(u)`, continuous and strictly increasing on the whole real line.
    pub fn amplitude(&self, u: f64) -> f64 {
        if self.k == 0.0 {
            return u;
        }
        let half_period = 2.0 * self.quarter_period;
        let winding = (u / half_period).round();
        let reduced = u - winding * half_period;
        self.reduced_amplitude(reduced) + winding * PI
    }

    // Backward Landen recursion, valid for |u| <= K.
    fn reduced_amplitude(&self, u: f64) -> f64 {
        let depth = self.ladder.len() - 1;
        let (a_last, _) = self.ladder[depth];
        let mut phi = (1u64 << depth) as f64 * a_last * u;
        for &(a, c) in self.ladder[1..].iter().rev() {
            phi = 0.5 * (phi + (c / a * phi.sin()).asin());
        }
        phi
    }

    pub fn jacobi(&self, u: f64) -> JacobiTriple {
        let phi = self.amplitude(u);
        let (sn, cn) = phi.sin_cos();
        JacobiTriple {
            sn,
            cn,
            dn: self.delta(cn),
        }
    }

    // dn = sqrt(k'^2 + k^2 cn^2), which avoids 1 - k^2 sn^2 cancelling near k = 1
    fn delta(&self, cn: f64) -> f64 {
        (self.kc * self.kc + self.k * self.k * cn * cn).sqrt()
    }

    /// Incomplete integral F(phi, k), extended to all real phi by oddness and
    /// `F(phi + pi) = F(phi) + 2K`.
    pub fn incomplete_f(&self, phi: f64) -> f64 {
        if self.k == 0.0 {
            return phi;
        }
        let winding = (phi / PI).round();
        let reduced = phi - winding * PI;
        let (s, c) = reduced.sin_cos();
        let y = self.kc * self.kc + self.k * self.k * c * c;
        s * carlson_rf(c * c, y, 1.0) + winding * 2.0 * self.quarter_period
    }

    /// Addition formulas for sn, cn, dn at `u + v`.
    pub fn sum(&self, u: f64, v: f64) -> Result<JacobiTriple> {
        let a = self.jacobi(u);
        let b = self.jacobi(v);
        let k2 = self.k * self.k;
        let den = 1.0 - k2 * a.sn * a.sn * b.sn * b.sn;
        if den.abs() < self.tol {
            return Err(domain(format!(
                "addition formula denominator {den:e} vanishes at u={u}, v={v}"
            )));
        }
        Ok(JacobiTriple {
            sn: (a.sn * b.cn * b.dn + a.cn * b.sn * a.dn) / den,
            cn: (a.cn * b.cn - a.sn * b.sn * a.dn * b.dn) / den,
            dn: (a.dn * b.dn - k2 * a.sn * b.sn * a.cn * b.cn) / den,
        })
    }

    /// `tan((am x + am y)/2)`, cross-checked against `dn((x-y)/2) tan am((x+y)/2)`.
    pub fn half_angle_tan(&self, x: f64, y: f64) -> Result<f64> {
        let half = 0.5 * (self.amplitude(x) + self.amplitude(y));
        let mid = self.amplitude(0.5 * (x + y));
        if half.cos().abs() < self.tol || mid.cos().abs() < self.tol {
            return Err(Error::NearPole(format!(
                "(am({x}) + am({y}))/2 = {half} is within {} of an odd multiple of pi/2",
                self.tol
            )));
        }
        let lhs = half.tan();
        let rhs = self.jacobi(0.5 * (x - y)).dn * mid.tan();
        if (lhs - rhs).abs() > 1e-10 * (1.0 + lhs.abs()) {
            return Err(Error::Invariant(format!(
                "half-angle identity failed at x={x}, y={y}: {lhs} vs {rhs}"
            )));
        }
        Ok(lhs)
    }
}

fn check_modulus(k: f64) -> Result<()> {
    if !k.is_finite() || k < 0.0 {
        return Err(domain(format!(
            "modulus {k} must be a finite non-negative number"
        )));
    }
    if k >= 1.0 {
        return Err(domain(format!("modulus {k} must be below 1")));
    }
    if k > MAX_MODULUS {
        return Err(domain(format!(
            "modulus {k} is above the supported maximum {MAX_MODULUS}"
        )));
    }
    Ok(())
}

/// Carlson's symmetric integral R_F(x, y, z) by the duplication theorem.
pub(crate) fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    let a0 = (x + y + z) / 3.0;
    let spread = (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let q = (3.0 * f64::EPSILON).powf(-1.0 / 6.0) * spread;
    let (mut xm, mut ym, mut zm, mut am) = (x, y, z, a0);
    let mut scale = 1.0;
    for _ in 0..64 {
        if q * scale < am.abs() {
            break;
        }
        let (sx, sy, sz) = (xm.sqrt(), ym.sqrt(), zm.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        xm = 0.25 * (xm + lambda);
        ym = 0.25 * (ym + lambda);
        zm = 0.25 * (zm + lambda);
        am = 0.25 * (am + lambda);
        scale *= 0.25;
    }
    let dx = (a0 - x) * scale / am;
    let dy = (a0 - y) * scale / am;
    let dz = -dx - dy;
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / am.sqrt()
}

/// Complete elliptic integral of the first kind K(k).
pub fn complete_k(k: f64) -> Result<f64> {
    Ok(EllipticContext::new(k)?.quarter_period())
}

pub fn incomplete_f(phi: f64, k: f64) -> Result<f64> {
    Ok(EllipticContext::new(k)?.incomplete_f(phi))
}

pub fn am(u: f64, k: f64) -> Result<f64> {
    Ok(EllipticContext::new(k)?.amplitude(u))
}

pub fn jacobi_triple(u: f64, k: f64) -> Result<JacobiTriple> {
    Ok(EllipticContext::new(k)?.jacobi(u))
}

pub fn jacobi_sum(u: f64, v: f64, k: f64) -> Result<JacobiTriple> {
    EllipticContext::new(k)?.sum(u, v)
}

pub fn half_angle_tan(x: f64, y: f64, k: f64) -> Result<f64> {
    EllipticContext::new(k)?.half_angle_tan(x, y)
}
