//! Independent reference evaluations used to cross-check the fast kernels:
//! adaptive Gauss-Legendre quadrature of the defining integrals, plain series
//! summation, and right spherical triangles built from vectors on the sphere.

use std::f64::consts::{FRAC_PI_2, PI};

/// Gauss-Legendre rule on `[-1, 1]` with nodes found by Newton's method.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a quadrature rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn integrate(&self, f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Adaptive bisection driven by a 20-point rule, stopping when a panel and
/// its two halves agree to `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let rule = GaussLegendre::new(20);
    let whole = rule.integrate(&f, a, b);
    refine(&rule, &f, a, b, whole, tol, 0)
}

fn refine(
    rule: &GaussLegendre,
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(f, a, mid);
    let right = rule.integrate(f, mid, b);
    if (left + right - whole).abs() <= tol || depth >= 40 {
        return left + right;
    }
    refine(rule, f, a, mid, left, 0.5 * tol, depth + 1)
        + refine(rule, f, mid, b, right, 0.5 * tol, depth + 1)
}

/// `int_0^phi dx / sqrt(1 - k^2 sin^2 x)`.
pub fn quad_incomplete_f(phi: f64, k: f64) -> f64 {
    let k2 = k * k;
    integrate(
        |x| (1.0 - k2 * x.sin().powi(2)).sqrt().recip(),
        0.0,
        phi,
        1e-15,
    )
}

pub fn quad_complete_k(k: f64) -> f64 {
    quad_incomplete_f(FRAC_PI_2, k)
}

/// Inverts [`quad_incomplete_f`] by Newton's method.
pub fn quad_am(u: f64, k: f64) -> f64 {
    let mut phi = u;
    for _ in 0..60 {
        let delta = (1.0 - k * k * phi.sin().powi(2)).sqrt();
        let step = (quad_incomplete_f(phi, k) - u) * delta;
        phi -= step;
        if step.abs() < 1e-15 * (1.0 + phi.abs()) {
            break;
        }
    }
    phi
}

/// `sum_{n >= 1} x^n / n^2` without any functional equation; slow near 1.
pub fn li2_series(x: f64) -> f64 {
    assert!((0.0..1.0).contains(&x), "the plain series needs 0 <= x < 1");
    let mut sum = 0.0;
    let mut power = x;
    let mut n = 1u64;
    while power > 1e-19 && n < 10_000_000 {
        sum += power / (n * n) as f64;
        power *= x;
        n += 1;
    }
    sum
}

/// `-int_0^x ln(1 - t)/t dt`.
pub fn li2_quadrature(x: f64) -> f64 {
    integrate(|t| -(-t).ln_1p() / t, 0.0, x, 1e-15)
}

/// A right spherical triangle with legs `a`, `b`, hypotenuse `c` and angles
/// `alpha`, `beta` opposite the legs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RightTriangle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Places the right angle at the north pole with the legs along two
/// meridians, measures the hypotenuse from the dot product, and recovers the
/// remaining angles from the spherical law of cosines.
pub fn right_triangle(a: f64, b: f64) -> RightTriangle {
    let pa = [b.sin(), 0.0, b.cos()];
    let pb = [0.0, a.sin(), a.cos()];
    let c = (pa[0] * pb[0] + pa[1] * pb[1] + pa[2] * pb[2])
        .clamp(-1.0, 1.0)
        .acos();
    let angle = |opp: f64, s1: f64, s2: f64| {
        ((opp.cos() - s1.cos() * s2.cos()) / (s1.sin() * s2.sin()))
            .clamp(-1.0, 1.0)
            .acos()
    };
    RightTriangle {
        a,
        b,
        c,
        alpha: angle(a, b, c),
        beta: angle(b, a, c),
    }
}
