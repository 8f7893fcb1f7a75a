//! Built-in test functions f1..f5 with their analyticity parameters
//! (opening angle d, endpoint decay exponent µ, default shape exponent ν),
//! plus a registry hook for user-supplied functions.
//!
//! Every evaluator is δ-aware: 1−x² is always obtained through
//! [`one_minus_x_sq`] and arctanh through [`atanh_stable`], so values stay
//! fully accurate down to 1−|x| = 10⁻¹⁶ and are exactly 0 at x = ±1.

use std::sync::Arc;

use num_complex::Complex64;

use crate::kernel::SpaceParams;
use crate::numerics::{atanh_stable, one_minus_x_sq, Real, UnitPoint};
use crate::{Error, Result};

enum Evaluator<R: Real> {
    Builtin(fn(UnitPoint<R>) -> R),
    Custom(Arc<dyn Fn(UnitPoint<R>) -> R + Send + Sync>),
}

impl<R: Real> Clone for Evaluator<R> {
    fn clone(&self) -> Self {
        match self {
            Evaluator::Builtin(f) => Evaluator::Builtin(*f),
            Evaluator::Custom(f) => Evaluator::Custom(Arc::clone(f)),
        }
    }
}

/// A target function together with the parameters that drive the two
/// approximation schemes.
#[derive(Clone)]
pub struct TestFunction<R: Real> {
    pub id: String,
    pub params: SpaceParams<R>,
    pub nu_default: R,
    /// Branch points closest to the interval, other than ±1 (informational).
    pub singularities: Vec<Complex64>,
    eval: Evaluator<R>,
}

impl<R: Real> TestFunction<R> {
    pub fn eval(&self, p: UnitPoint<R>) -> R {
        match &self.eval {
            Evaluator::Builtin(f) => f(p),
            Evaluator::Custom(f) => f(p),
        }
    }
}

pub fn eval_test_function<R: Real>(f: &TestFunction<R>, p: UnitPoint<R>) -> R {
    f.eval(p)
}

/// √(w/(2−w)) = √((1−x²)/(1+x²))
fn f1<R: Real>(p: UnitPoint<R>) -> R {
    let w = one_minus_x_sq(p);
    (w / (R::from_f64(2.0) - w)).sqrt()
}

/// √(3w/(4−3w)) = √(3(1−x²)/(1+3x²))
fn f2<R: Real>(p: UnitPoint<R>) -> R {
    let w = one_minus_x_sq(p);
    let three = R::from_f64(3.0);
    (three * w / (R::from_f64(4.0) - three * w)).sqrt()
}

/// √(w/(4−w)) = √((1−x²)/(3+x²))
fn f3<R: Real>(p: UnitPoint<R>) -> R {
    let w = one_minus_x_sq(p);
    (w / (R::from_f64(4.0) - w)).sqrt()
}

/// (1−x²)^{1/√2}·√(cos(4 arctanh x) + cosh π)
fn f4<R: Real>(p: UnitPoint<R>) -> R {
    let w = one_minus_x_sq(p);
    if w == R::zero() {
        return R::zero();
    }
    let theta = atanh_stable(p).expect("w > 0 implies |x| < 1");
    let inv_sqrt2 = R::from_f64(2.0).sqrt().recip();
    let osc = (R::from_f64(4.0) * theta).cos() + R::pi().cosh();
    w.powf(inv_sqrt2) * osc.sqrt()
}

/// (w/(2−w))^{3/2} = ((1−x²)/(1+x²))^{3/2}
fn f5<R: Real>(p: UnitPoint<R>) -> R {
    let w = one_minus_x_sq(p);
    let t = w / (R::from_f64(2.0) - w);
    t * t.sqrt()
}

fn ratio<R: Real>(num: i64, den: i64) -> R {
    R::from_i64(num) / R::from_i64(den)
}

/// Look up one of the built-in functions f1..f5.
pub fn test_function<R: Real>(id: &str) -> Result<TestFunction<R>> {
    let one = R::one();
    let two = R::from_f64(2.0);
    let (params, nu_default, singularities, eval): (_, _, _, fn(UnitPoint<R>) -> R) = match id {
        "f1" => (
            SpaceParams::new(ratio(157, 100), one)?,
            one,
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)],
            f1,
        ),
        "f2" => (
            SpaceParams::new(ratio(1047, 1000), one)?,
            one,
            vec![
                Complex64::new(0.0, 1.0 / 3f64.sqrt()),
                Complex64::new(0.0, -1.0 / 3f64.sqrt()),
            ],
            f2,
        ),
        "f3" => (
            SpaceParams::new(ratio(2094, 1000), one)?,
            one,
            vec![
                Complex64::new(0.0, 3f64.sqrt()),
                Complex64::new(0.0, -3f64.sqrt()),
            ],
            f3,
        ),
        "f4" => {
            // branch points tanh[(m + (1±i)π/2)/2] at m = 0, on ∂Λ_{π/2}
            let s = (Complex64::new(1.0, 1.0) * std::f64::consts::FRAC_PI_2 / 2.0).tanh();
            (
                SpaceParams::new(R::frac_pi_2(), two.sqrt())?,
                one,
                vec![s, s.conj()],
                f4,
            )
        }
        "f5" => (
            SpaceParams::new(ratio(157, 100), R::from_f64(3.0))?,
            two,
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)],
            f5,
        ),
        other => return Err(Error::UnknownFunction(other.to_string())),
    };
    Ok(TestFunction {
        id: id.to_string(),
        params,
        nu_default,
        singularities,
        eval: Evaluator::Builtin(eval),
    })
}

/// All built-in ids, in table order.
pub const BUILTIN_IDS: [&str; 5] = ["f1", "f2", "f3", "f4", "f5"];

/// Register a user-supplied function with explicit analyticity parameters;
/// no attempt is made to infer d or µ from the evaluator.
pub fn custom_function<R: Real>(
    id: impl Into<String>,
    d: R,
    mu: R,
    nu: R,
    eval: impl Fn(UnitPoint<R>) -> R + Send + Sync + 'static,
) -> Result<TestFunction<R>> {
    Ok(TestFunction {
        id: id.into(),
        params: SpaceParams::new(d, mu)?,
        nu_default: nu,
        singularities: Vec::new(),
        eval: Evaluator::Custom(Arc::new(eval)),
    })
}
