//! Napier's rules for right spherical triangles and the algebra of the
//! self-polar spherical pentagon.
//!
//! Indices are zero-based and cyclic mod 5. Side `i` of a pentagon is the arc
//! between vertices `i+2` and `i+3`, and vertices `i-1`, `i+1` are always a
//! quarter circle apart.

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Error, Result};
use crate::spectrum::ConeQuadric;
use crate::vec3::{self, Vec3};

/// The golden ratio `(1 + sqrt 5)/2`.
pub const GOLDEN: f64 = 1.618_033_988_749_895;

const MIN_ALPHA: f64 = 1e-8;
const MAX_ALPHA: f64 = 1e8;

/// Geometric tolerance for the sphere construction.
pub const GEOMETRIC_TOL: f64 = 1e-10;

/// The five cyclically ordered parts `(a, b, pi/2 - alpha, pi/2 - c, pi/2 - beta)`
/// of a right spherical triangle with legs `a, b`, hypotenuse `c` and angles
/// `alpha`, `beta` opposite the legs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NapierParts([f64; 5]);

impl NapierParts {
    pub fn new(parts: [f64; 5]) -> Self {
        Self(parts)
    }

    pub fn from_triangle(a: f64, b: f64, c: f64, alpha: f64, beta: f64) -> Self {
        Self([a, b, FRAC_PI_2 - alpha, FRAC_PI_2 - c, FRAC_PI_2 - beta])
    }

    /// Solves the right triangle with legs `a` and `b`.
    pub fn from_legs(a: f64, b: f64) -> Result<Self> {
        for (name, leg) in [("a", a), ("b", b)] {
            if !(leg > 0.0 && leg < FRAC_PI_2) {
                return Err(domain(format!("leg {name} = {leg} must lie in (0, pi/2)")));
            }
        }
        let c = (a.cos() * b.cos()).acos();
        let alpha = (a.tan() / b.sin()).atan();
        let beta = (b.tan() / a.sin()).atan();
        Ok(Self::from_triangle(a, b, c, alpha, beta))
    }

    pub fn parts(&self) -> [f64; 5] {
        self.0
    }

    /// Napierian rotation: the cyclic shift `(t0, .., t4) -> (t1, .., t4, t0)`.
    pub fn rotate(&self) -> Self {
        let t = self.0;
        Self([t[1], t[2], t[3], t[4], t[0]])
    }

    /// Gaussian reflection, the rotation applied twice.
    pub fn reflect(&self) -> Self {
        self.rotate().rotate()
    }

    /// Residuals of both rules at every position `i` taken as the middle part:
    /// rule one `sin t_i = tan t_{i-1} tan t_{i+1}`, rule two
    /// `sin t_i = cos t_{i+2} cos t_{i+3}`.
    pub fn residuals(&self) -> NapierResiduals {
        let t = self.0;
        let mut rule_one = [0.0; 5];
        let mut rule_two = [0.0; 5];
        for i in 0..5 {
            let mid = t[i].sin();
            rule_one[i] = mid - t[(i + 4) % 5].tan() * t[(i + 1) % 5].tan();
            rule_two[i] = mid - t[(i + 2) % 5].cos() * t[(i + 3) % 5].cos();
        }
        NapierResiduals { rule_one, rule_two }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NapierResiduals {
    pub rule_one: [f64; 5],
    pub rule_two: [f64; 5],
}

impl NapierResiduals {
    pub fn values(&self) -> [f64; 10] {
        let mut out = [0.0; 10];
        out[..5].copy_from_slice(&self.rule_one);
        out[5..].copy_from_slice(&self.rule_two);
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.values().iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}

pub fn napier_rotate(t: &NapierParts) -> NapierParts {
    t.rotate()
}

pub fn gauss_reflect(t: &NapierParts) -> NapierParts {
    t.reflect()
}

pub fn verify_napier(t: &NapierParts) -> NapierResiduals {
    t.residuals()
}

/// Parts of the `i`-th right triangle cut out of a pentagon with the given
/// sides: `(p'_{i+1}, p'_{i+4}, p'_{i+2}, p'_i, p'_{i+3})` with `p' = pi/2 - p`.
/// Triangle `i + 1` is the Gaussian reflection of triangle `i`.
pub fn pentagon_triangle(sides: &[f64; 5], i: usize) -> NapierParts {
    let co = |j: usize| FRAC_PI_2 - sides[(i + j) % 5];
    NapierParts([co(1), co(4), co(2), co(0), co(3)])
}

/// Squared tangents `tan^2 p_i` of the five sides of a pentagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaCycle([f64; 5]);

impl AlphaCycle {
    pub fn new(values: [f64; 5]) -> Result<Self> {
        for (i, v) in values.iter().enumerate() {
            if !(v.is_finite() && (MIN_ALPHA..=MAX_ALPHA).contains(v)) {
                return Err(domain(format!(
                    "alpha_{i} = {v} is outside [{MIN_ALPHA:e}, {MAX_ALPHA:e}]"
                )));
            }
        }
        Ok(Self(values))
    }

    /// Rebuilds the cycle `(alpha, beta, gamma, delta, epsilon)` from its first and third entries.
    pub fn complete_from_two(alpha: f64, gamma: f64) -> Result<Self> {
        if !(alpha > 0.0 && gamma > 0.0) {
            return Err(domain(format!(
                "alpha = {alpha} and gamma = {gamma} must both be positive"
            )));
        }
        let beta = (1.0 + alpha + gamma) / (alpha * gamma);
        let delta = (1.0 + alpha) / gamma;
        let epsilon = (1.0 + gamma) / alpha;
        Self::new([alpha, beta, gamma, delta, epsilon])
    }

    /// The regular pentagram, every entry the golden ratio.
    pub fn regular() -> Self {
        Self([GOLDEN; 5])
    }

    pub fn from_sides(sides: &[f64; 5]) -> Result<Self> {
        let mut values = [0.0; 5];
        for (v, &p) in values.iter_mut().zip(sides) {
            if !(p > 0.0 && p < FRAC_PI_2) {
                return Err(domain(format!("side {p} must lie in (0, pi/2)")));
            }
            *v = p.tan().powi(2);
        }
        Self::new(values)
    }

    pub fn values(&self) -> [f64; 5] {
        self.0
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i % 5]
    }

    /// Side lengths `arctan sqrt(alpha_i)`.
    pub fn sides(&self) -> [f64; 5] {
        self.0.map(|a| a.sqrt().atan())
    }

    /// The cycle shifted by one place, `alpha'_i = alpha_{i+1}`.
    pub fn shifted(&self) -> Self {
        let a = self.0;
        Self([a[1], a[2], a[3], a[4], a[0]])
    }

    /// Relative residuals `(1 + alpha_i - alpha_{i+2} alpha_{i+3}) / (1 + alpha_i)`.
    pub fn relation_residuals(&self) -> [f64; 5] {
        std::array::from_fn(|i| {
            let lhs = 1.0 + self.get(i);
            (lhs - self.get(i + 2) * self.get(i + 3)) / lhs
        })
    }

    pub fn max_relation_residual(&self) -> f64 {
        self.relation_residuals()
            .iter()
            .fold(0.0, |m, r| m.max(r.abs()))
    }

    pub fn is_pentagram(&self, tol: f64) -> bool {
        self.max_relation_residual() <= tol
    }

    /// The shape invariant `omega`, the product of all five entries.
    pub fn omega(&self) -> f64 {
        self.0.iter().product()
    }

    pub fn invariants(&self) -> PentagramInvariants {
        PentagramInvariants {
            sum_form: 3.0 + self.0.iter().sum::<f64>(),
            product: self.omega(),
            sqrt_form: self.0.iter().map(|a| 1.0 + a).product::<f64>().sqrt(),
        }
    }
}

/// The three expressions `3 + sum`, `product` and `sqrt(prod(1 + alpha_i))`,
/// which coincide on a genuine pentagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PentagramInvariants {
    pub sum_form: f64,
    pub product: f64,
    pub sqrt_form: f64,
}

impl PentagramInvariants {
    pub fn max_spread(&self) -> f64 {
        let v = [self.sum_form, self.product, self.sqrt_form];
        let hi = v.iter().cloned().fold(f64::MIN, f64::max);
        let lo = v.iter().cloned().fold(f64::MAX, f64::min);
        hi - lo
    }
}

pub fn alphas_from_sides(p: &[f64; 5]) -> Result<AlphaCycle> {
    AlphaCycle::from_sides(p)
}

pub fn complete_from_two(alpha: f64, gamma: f64) -> Result<AlphaCycle> {
    AlphaCycle::complete_from_two(alpha, gamma)
}

pub fn pentagram_invariants(c: &AlphaCycle) -> PentagramInvariants {
    c.invariants()
}

pub fn sides_from_alphas(c: &AlphaCycle) -> [f64; 5] {
    c.sides()
}

/// Five unit vertices on the sphere with `<P_{k-1}, P_{k+1}> = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePentagon {
    pub vertices: [Vec3; 5],
    pub sides: [f64; 5],
}

impl SpherePentagon {
    /// Places `P_2 = e_x` and `P_0 = e_y`; the remaining vertices follow from
    /// the sides. `P_1` is taken along the normal of the plane through
    /// `P_3` and `P_4` and scaled to unit length.
    pub fn build(cycle: &AlphaCycle) -> Result<Self> {
        let sides = cycle.sides();
        let (s, c): (Vec<f64>, Vec<f64>) = sides.iter().map(|p| p.sin_cos()).unzip();
        let vertices = [
            [0.0, 1.0, 0.0],
            vec3::normalize(&[c[4], c[3], -c[2] * s[4]]),
            [1.0, 0.0, 0.0],
            [c[0], 0.0, s[0]],
            [0.0, c[2], s[2]],
        ];
        let pentagon = Self { vertices, sides };

        let ortho = pentagon.orthogonality_residuals();
        if let Some((k, r)) = ortho
            .iter()
            .enumerate()
            .find(|(_, r)| r.abs() > GEOMETRIC_TOL)
        {
            return Err(Error::Invariant(format!(
                "vertices {} and {} are not orthogonal (inner product {r:e})",
                (k + 4) % 5,
                (k + 1) % 5
            )));
        }
        for (i, (m, p)) in pentagon.measured_sides().iter().zip(&sides).enumerate() {
            if (m - p).abs() > GEOMETRIC_TOL {
                return Err(Error::Invariant(format!(
                    "side {i} measures {m} on the sphere but the cycle asks for {p}"
                )));
            }
        }
        let cone = ConeQuadric::from_cycle(cycle)?;
        for (k, v) in vertices.iter().enumerate() {
            let r = cone.evaluate(v);
            if r.abs() > GEOMETRIC_TOL {
                return Err(Error::Invariant(format!(
                    "vertex {k} is off the cone by {r:e}"
                )));
            }
        }
        Ok(pentagon)
    }

    /// `<P_{k-1}, P_{k+1}>` for each `k`.
    pub fn orthogonality_residuals(&self) -> [f64; 5] {
        std::array::from_fn(|k| vec3::dot(&self.vertices[(k + 4) % 5], &self.vertices[(k + 1) % 5]))
    }

    /// Arc lengths recomputed from the vertices.
    pub fn measured_sides(&self) -> [f64; 5] {
        std::array::from_fn(|i| {
            let (a, b) = (&self.vertices[(i + 2) % 5], &self.vertices[(i + 3) % 5]);
            vec3::norm_sq(&vec3::cross(a, b))
                .sqrt()
                .atan2(vec3::dot(a, b))
        })
    }

    /// Squared tangents of the sides, recomputed from the vertices.
    pub fn measured_alphas(&self) -> Result<AlphaCycle> {
        AlphaCycle::new(std::array::from_fn(|i| {
            vec3::tan_sq_angle(&self.vertices[(i + 2) % 5], &self.vertices[(i + 3) % 5])
        }))
    }
}

pub fn build_sphere_vertices(c: &AlphaCycle) -> Result<SpherePentagon> {
    SpherePentagon::build(c)
}
