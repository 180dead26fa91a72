//! Parametrization of Napier pentagons by Jacobi elliptic functions at the
//! fifth-period lattice.
//!
//! For a modulus `k` with quarter period `K` and a real `u`, the vectors
//!
//! ```text
//! r_j = ( cn(u + 4jK/5) / sqrt(c),  sqrt(d) sn(u + 4jK/5) / sqrt(c),  1 ),
//! c = cn(2K/5),  d = dn(2K/5)
//! ```
//!
//! span a self-polar spherical pentagon: `r_{j-1}` and `r_{j+1}` are
//! orthogonal, and the squared tangents of the angles between neighbours form
//! an [`AlphaCycle`]. The product of that cycle is independent of `u` and
//! strictly increasing in `k`, starting at the critical value for `k = 0`.

use crate::elliptic::{EllipticContext, MAX_MODULUS};
use crate::error::{domain, Error, Result};
use crate::pentagram::AlphaCycle;
use crate::spectrum::{
    critical_omega, modulus_from_spectrum, solve_characteristic, SpectralTriple,
};
use crate::vec3::{self, Vec3};

/// Relative size below which an adjacent inner product counts as zero.
const CHORD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PentagonFrame {
    pub k: f64,
    pub u: f64,
    pub vectors: [Vec3; 5],
    /// `cn(2K/5)`
    pub cn_fifth: f64,
    /// `dn(2K/5)`
    pub dn_fifth: f64,
    ctx: EllipticContext,
}

impl PentagonFrame {
    pub fn new(ctx: &EllipticContext, u: f64) -> Result<Self> {
        let t = ctx.jacobi(0.4 * ctx.quarter_period());
        if t.cn <= 0.0 {
            return Err(Error::Invariant(format!(
                "cn(2K/5) = {} is not positive for k = {}",
                t.cn,
                ctx.modulus()
            )));
        }
        let mut frame = Self {
            k: ctx.modulus(),
            u,
            vectors: [[0.0; 3]; 5],
            cn_fifth: t.cn,
            dn_fifth: t.dn,
            ctx: ctx.clone(),
        };
        frame.vectors = std::array::from_fn(|j| frame.vector_at(j as i64));
        Ok(frame)
    }

    /// `r_j` for any integer `j`; the sequence has period 5.
    pub fn vector_at(&self, j: i64) -> Vec3 {
        let step = 0.8 * self.ctx.quarter_period();
        let t = self.ctx.jacobi(self.u + j as f64 * step);
        let scale = self.cn_fifth.sqrt().recip();
        [t.cn * scale, self.dn_fifth.sqrt() * t.sn * scale, 1.0]
    }

    /// Semi-axes `(1/sqrt c, sqrt(d/c))` of the ellipse traced in the plane `z = 1`.
    pub fn semi_axes(&self) -> (f64, f64) {
        (
            self.cn_fifth.sqrt().recip(),
            (self.dn_fifth / self.cn_fifth).sqrt(),
        )
    }

    /// Amplitudes `am(u + 4jK/5)`, which are the eccentric anomalies of the planar points.
    pub fn amplitudes(&self) -> [f64; 5] {
        let step = 0.8 * self.ctx.quarter_period();
        std::array::from_fn(|j| self.ctx.amplitude(self.u + j as f64 * step))
    }

    pub fn context(&self) -> &EllipticContext {
        &self.ctx
    }

    fn check_chords(&self) -> Result<()> {
        for j in 0..5 {
            let (a, b) = (&self.vectors[j], &self.vectors[(j + 1) % 5]);
            let inner = vec3::dot(a, b);
            if inner.abs() < CHORD_TOL * (vec3::norm_sq(a) * vec3::norm_sq(b)).sqrt() {
                return Err(Error::ChordDegenerate {
                    index: j,
                    next: (j + 1) % 5,
                    inner,
                });
            }
        }
        Ok(())
    }

    /// `alpha_j = |r_j x r_{j+1}|^2 / (r_j . r_{j+1})^2`.
    pub fn alphas(&self) -> Result<AlphaCycle> {
        self.check_chords()?;
        AlphaCycle::new(std::array::from_fn(|j| {
            vec3::tan_sq_angle(&self.vectors[j], &self.vectors[(j + 1) % 5])
        }))
    }

    /// `beta_j = |r_j x r_{j+1}|^2 / (|r_j|^2 |r_{j+1}|^2)`.
    pub fn betas(&self) -> Result<[f64; 5]> {
        self.check_chords()?;
        Ok(std::array::from_fn(|j| {
            vec3::sin_sq_angle(&self.vectors[j], &self.vectors[(j + 1) % 5])
        }))
    }
}

pub fn frame_vectors(k: f64, u: f64) -> Result<PentagonFrame> {
    PentagonFrame::new(&EllipticContext::new(k)?, u)
}

pub fn alpha_sequence(f: &PentagonFrame) -> Result<AlphaCycle> {
    f.alphas()
}

pub fn beta_sequence(f: &PentagonFrame) -> Result<[f64; 5]> {
    f.betas()
}

/// The shape invariant of the frame at parameter `u`.
pub fn omega_at(k: f64, u: f64) -> Result<f64> {
    Ok(frame_vectors(k, u)?.alphas()?.omega())
}

pub fn omega_of_k(k: f64) -> Result<f64> {
    omega_at(k, 0.0)
}

/// Inverts [`omega_of_k`] by bisection on `[0, MAX_MODULUS]`.
pub fn k_of_omega(omega: f64) -> Result<f64> {
    if !omega.is_finite() {
        return Err(domain(format!("omega = {omega} is not finite")));
    }
    let critical = critical_omega();
    if omega < critical - crate::spectrum::SUBCRITICAL_SLACK {
        return Err(Error::Subcritical { omega, critical });
    }
    if omega <= critical {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, MAX_MODULUS);
    let top = omega_of_k(hi)?;
    if omega > top {
        return Err(domain(format!(
            "omega = {omega} exceeds {top}, the value at the largest supported modulus"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if omega_of_k(mid)? < omega {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Comparison between the frame at modulus `k` and the spectrum of its invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bridge {
    pub k: f64,
    pub omega: f64,
    pub spectral: SpectralTriple,
    /// Modulus recovered from the roots alone.
    pub spectral_k: f64,
    /// `cn(2K/5) + G'/G`
    pub cn_residual: f64,
    /// `dn(2K/5) - G'/G''`
    pub dn_residual: f64,
}

pub fn bridge_from_k(k: f64) -> Result<Bridge> {
    let frame = frame_vectors(k, 0.0)?;
    let omega = frame.alphas()?.omega();
    let spectral = solve_characteristic(omega)?;
    let spectral_k = modulus_from_spectrum(&spectral)?.k;
    Ok(Bridge {
        k,
        omega,
        spectral,
        spectral_k,
        cn_residual: frame.cn_fifth + spectral.lower / spectral.negative,
        dn_residual: frame.dn_fifth - spectral.lower / spectral.upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pentagram::GOLDEN;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn regular_frame() {
        for u in [0.0, 0.4, -2.3] {
            let f = frame_vectors(0.0, u).unwrap();
            for r in &f.vectors {
                assert_abs_diff_eq!(vec3::norm_sq(r), 5f64.sqrt(), epsilon = 1e-12);
                assert_eq!(r[2], 1.0);
            }
            for a in f.alphas().unwrap().values() {
                assert_abs_diff_eq!(a, GOLDEN, epsilon = 1e-12);
            }
            for b in f.betas().unwrap() {
                assert_abs_diff_eq!(b, 0.618_033_988_749_895, epsilon = 1e-12);
            }
        }
        let f = frame_vectors(0.0, 0.0).unwrap();
        assert_abs_diff_eq!(f.cn_fifth, (PI / 5.0).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.vectors[0][0], (2.0 / GOLDEN).sqrt(), epsilon = 1e-14);
        assert_eq!(f.vectors[0][1], 0.0);
    }

    #[test]
    fn period_five_in_index() {
        for k in [0.0, 0.3, 0.7, 0.95] {
            let f = frame_vectors(k, 0.77).unwrap();
            let (r5, r0) = (f.vector_at(5), f.vectors[0]);
            for i in 0..3 {
                assert!((r5[i] - r0[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pentagram_law_and_betas() {
        let f = frame_vectors(0.5, 0.3).unwrap();
        let a = f.alphas().unwrap();
        assert!(a.max_relation_residual() < 1e-10);
        for (b, a) in f.betas().unwrap().iter().zip(a.values()) {
            assert!(*b < 1.0);
            assert_abs_diff_eq!(*b, a / (1.0 + a), epsilon = 1e-12);
        }
    }

    #[test]
    fn shift_by_a_fifth_period_rotates_the_cycle() {
        let ctx = EllipticContext::new(0.5).unwrap();
        let step = 0.8 * ctx.quarter_period();
        let a = PentagonFrame::new(&ctx, 0.3).unwrap().alphas().unwrap();
        let b = PentagonFrame::new(&ctx, 0.3 + step)
            .unwrap()
            .alphas()
            .unwrap();
        for (x, y) in b.values().iter().zip(a.shifted().values()) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn omega_curve() {
        assert_abs_diff_eq!(
            omega_of_k(0.0).unwrap(),
            11.090_169_943_749_474,
            epsilon = 1e-12
        );
        let mut last = omega_of_k(0.0).unwrap();
        for i in 1..20 {
            let k = i as f64 / 20.0;
            let w = omega_of_k(k).unwrap();
            assert!(w > last, "omega not increasing at k={k}");
            assert!((w - omega_at(k, 1.1).unwrap()).abs() < 1e-9);
            last = w;
        }
    }

    #[test]
    fn inverse_of_omega() {
        assert_eq!(k_of_omega(critical_omega()).unwrap(), 0.0);
        let k = k_of_omega(12.0).unwrap();
        assert!((omega_of_k(k).unwrap() - 12.0).abs() < 1e-9);
        assert!(matches!(k_of_omega(5.0), Err(Error::Subcritical { .. })));
        let k20 = k_of_omega(20.0).unwrap();
        let spectral = modulus_from_spectrum(&solve_characteristic(20.0).unwrap()).unwrap();
        assert!((k20 - spectral.k).abs() < 1e-9);
    }

    #[test]
    fn bridge_at_half() {
        let b = bridge_from_k(0.5).unwrap();
        assert!(b.cn_residual.abs() < 1e-9 && b.dn_residual.abs() < 1e-9);
        assert!((b.spectral_k - 0.5).abs() < 1e-9);
    }

    #[test]
    fn invalid_modulus() {
        assert!(matches!(frame_vectors(1.5, 0.0), Err(Error::Domain(_))));
        assert!(matches!(omega_of_k(-0.2), Err(Error::Domain(_))));
    }
}
