//! Euler and Rogers dilogarithms and the pentagon five-term relation.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::pentagram::AlphaCycle;

const ZETA2: f64 = PI * PI / 6.0;

fn series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut power = x;
    for n in 1..200 {
        let term = power / (n * n) as f64;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
        power *= x;
    }
    sum
}

/// `Li2(x) = sum x^n / n^2` on `[0, 1]`.
pub fn li2(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("li2 needs 0 <= x <= 1, got {x}")));
    }
    Ok(if x == 0.0 {
        0.0
    } else if x == 1.0 {
        ZETA2
    } else if x <= 0.5 {
        series(x)
    } else {
        ZETA2 - x.ln() * (-x).ln_1p() - series(1.0 - x)
    })
}

/// Rogers' dilogarithm `L(x) = Li2(x) + ln(x) ln(1-x)/2`, extended by
/// continuity to `L(0) = 0`, `L(1) = pi^2/6`.
pub fn rogers_l(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("Rogers L needs 0 <= x <= 1, got {x}")));
    }
    if x == 0.0 || x == 1.0 {
        return li2(x);
    }
    // the reflected branch cancels the logarithmic term exactly
    Ok(if x <= 0.5 {
        series(x) + 0.5 * x.ln() * (-x).ln_1p()
    } else {
        ZETA2 - series(1.0 - x) - 0.5 * x.ln() * (-x).ln_1p()
    })
}

fn open_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "{name} = {v} must lie strictly between 0 and 1"
        )))
    }
}

/// `L(x) + L(1-x) - pi^2/6`.
pub fn reflection_residual(x: f64) -> Result<f64> {
    Ok(rogers_l(x)? + rogers_l(1.0 - x)? - ZETA2)
}

/// `L(x) + L(y) - L(xy) - L(x(1-y)/(1-xy)) - L(y(1-x)/(1-xy))`.
pub fn spence_residual(x: f64, y: f64) -> Result<f64> {
    open_unit("x", x)?;
    open_unit("y", y)?;
    let d = 1.0 - x * y;
    Ok(rogers_l(x)? + rogers_l(y)?
        - rogers_l(x * y)?
        - rogers_l(x * (1.0 - y) / d)?
        - rogers_l(y * (1.0 - x) / d)?)
}

/// A five-periodic sequence with `b_{n-1} b_{n+1} = 1 - b_n`, and its
/// companion `a_n = b_n/(1 - b_n)` satisfying `a_{n-2} a_{n+2} = 1 + a_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiveCycle {
    b: [f64; 5],
    a: [f64; 5],
}

impl FiveCycle {
    /// `(x, 1 - xy, y, (1-y)/(1-xy), (1-x)/(1-xy))`.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        open_unit("x", x)?;
        open_unit("y", y)?;
        let d = 1.0 - x * y;
        Ok(Self::from_b([x, d, y, (1.0 - y) / d, (1.0 - x) / d]))
    }

    fn from_b(b: [f64; 5]) -> Self {
        Self {
            b,
            a: b.map(|v| v / (1.0 - v)),
        }
    }

    /// The cycle with `a_n = alpha_n`; the two recurrences coincide under
    /// this labelling since `i + 3 = i - 2 (mod 5)`.
    pub fn from_alpha_cycle(alphas: &AlphaCycle) -> Self {
        let a = alphas.values();
        Self {
            b: a.map(|v| v / (1.0 + v)),
            a,
        }
    }

    pub fn b(&self) -> [f64; 5] {
        self.b
    }

    pub fn a(&self) -> [f64; 5] {
        self.a
    }

    /// `b_{n-1} b_{n+1} - (1 - b_n)` for `n = 0..5`.
    pub fn b_residuals(&self) -> [f64; 5] {
        let b = &self.b;
        std::array::from_fn(|n| b[(n + 4) % 5] * b[(n + 1) % 5] - (1.0 - b[n]))
    }

    /// `(a_{n-2} a_{n+2} - (1 + a_n)) / (1 + a_n)` for `n = 0..5`.
    pub fn a_residuals(&self) -> [f64; 5] {
        let a = &self.a;
        std::array::from_fn(|n| (a[(n + 3) % 5] * a[(n + 2) % 5] - (1.0 + a[n])) / (1.0 + a[n]))
    }

    /// `sum L(b_n) - pi^2/2`.
    pub fn rogers_sum_residual(&self) -> Result<f64> {
        pentagon_five_term(&self.b)
    }
}

pub fn five_cycle(x: f64, y: f64) -> Result<FiveCycle> {
    FiveCycle::new(x, y)
}

/// `sum L(beta_j) - pi^2/2`.
pub fn pentagon_five_term(betas: &[f64; 5]) -> Result<f64> {
    let mut sum = 0.0;
    for (j, &b) in betas.iter().enumerate() {
        open_unit(&format!("beta_{j}"), b)?;
        sum += rogers_l(b)?;
    }
    Ok(sum - 0.5 * PI * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pentagram::GOLDEN;
    use crate::uniformization::frame_vectors;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn li2_values() {
        assert_eq!(li2(0.0).unwrap(), 0.0);
        assert_eq!(li2(1.0).unwrap(), ZETA2);
        let ln2 = 2f64.ln();
        assert_abs_diff_eq!(
            li2(0.5).unwrap(),
            PI * PI / 12.0 - 0.5 * ln2 * ln2,
            epsilon = 1e-15
        );
        // mpmath.polylog(2, x)
        assert_abs_diff_eq!(li2(0.3).unwrap(), 0.326_129_510_075_476, epsilon = 1e-15);
        assert_abs_diff_eq!(li2(0.9).unwrap(), 1.299_714_723_004_958_8, epsilon = 1e-14);
        assert!(li2(-0.1).is_err() && li2(1.1).is_err() && li2(f64::NAN).is_err());
    }

    #[test]
    fn rogers_values() {
        assert_eq!(rogers_l(0.0).unwrap(), 0.0);
        assert_eq!(rogers_l(1.0).unwrap(), ZETA2);
        assert_abs_diff_eq!(rogers_l(0.5).unwrap(), PI * PI / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            rogers_l(1.0 / GOLDEN).unwrap(),
            PI * PI / 10.0,
            epsilon = 1e-14
        );
        assert!(reflection_residual(0.3).unwrap().abs() < 1e-14);
        // continuity at both ends
        assert!(rogers_l(1e-12).unwrap() < 1e-10);
        assert!((rogers_l(1.0 - 1e-12).unwrap() - ZETA2).abs() < 1e-10);
    }

    #[test]
    fn spence_examples() {
        assert!(spence_residual(0.5, 0.5).unwrap().abs() < 1e-14);
        assert!(spence_residual(0.4, 1e-6).unwrap().abs() < 1e-14);
        assert!(spence_residual(0.0, 0.5).is_err());
        assert!(spence_residual(0.5, 1.0).is_err());
    }

    #[test]
    fn golden_fixed_point() {
        let x = 1.0 / GOLDEN;
        let c = FiveCycle::new(x, x).unwrap();
        for (b, a) in c.b().iter().zip(c.a()) {
            assert_abs_diff_eq!(*b, x, epsilon = 1e-15);
            assert_abs_diff_eq!(a, GOLDEN, epsilon = 1e-14);
        }
        assert!(c.rogers_sum_residual().unwrap().abs() < 1e-13);
    }

    #[test]
    fn cycle_invariants() {
        let c = FiveCycle::new(0.2, 0.7).unwrap();
        assert_eq!(c.b()[1], 1.0 - 0.14);
        for r in c.b_residuals().iter().chain(c.a_residuals().iter()) {
            assert!(r.abs() < 1e-13);
        }
        assert!(c.rogers_sum_residual().unwrap().abs() < 1e-13);
        let alphas = AlphaCycle::new(c.a()).unwrap();
        assert!(alphas.max_relation_residual() < 1e-13);
    }

    #[test]
    fn frame_betas_form_a_five_cycle() {
        let f = frame_vectors(0.5, 0.3).unwrap();
        let c = FiveCycle::from_alpha_cycle(&f.alphas().unwrap());
        let betas = f.betas().unwrap();
        for (b, beta) in c.b().iter().zip(betas) {
            assert_abs_diff_eq!(*b, beta, epsilon = 1e-12);
        }
        let rebuilt = FiveCycle::new(betas[0], betas[2]).unwrap();
        for (x, y) in rebuilt.b().iter().zip(betas) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-10);
        }
        assert!(pentagon_five_term(&betas).unwrap().abs() < 1e-10);
    }

    #[test]
    fn five_term_negative_control() {
        assert!(pentagon_five_term(&[0.1; 5]).unwrap().abs() > 1.0);
        assert!(pentagon_five_term(&[0.1, 0.2, 1.0, 0.3, 0.4]).is_err());
    }

    proptest! {
        #[test]
        fn reflection_holds(x in 0.0f64..=1.0) {
            prop_assert!(reflection_residual(x).unwrap().abs() < 1e-13);
        }

        #[test]
        fn spence_holds(x in 1e-9f64..1.0, y in 1e-9f64..1.0) {
            prop_assert!(spence_residual(x, y).unwrap().abs() < 1e-12);
        }

        #[test]
        fn five_cycles_sum(x in 1e-6f64..0.999_999, y in 1e-6f64..0.999_999) {
            let c = FiveCycle::new(x, y).unwrap();
            prop_assert!(c.rogers_sum_residual().unwrap().abs() < 1e-12);
            for r in c.b_residuals() {
                prop_assert!(r.abs() < 1e-13);
            }
        }
    }
}
