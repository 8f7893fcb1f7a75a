//! The two approximation schemes: the optimal-rate interpolation formula
//! built on the modified Ganelius nodes, and the single-exponential Sinc
//! baseline it is compared against.

use crate::corpus::TestFunction;
use crate::kernel::{log_singular_quotient, se_map, se_map_inv, sinc_kernel, SpaceParams};
use crate::numerics::{
    atanh_stable, ln_abs_tanh, logcosh, one_minus_x_sq, CompensatedSum, Real, UnitPoint,
};
use crate::sampling::{ganelius_nodes, transform_nodes, TransformedNodes};
use crate::{Error, Result};

/// Approximation scheme selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Ganelius,
    Sesinc,
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scheme::Ganelius => "ganelius",
            Scheme::Sesinc => "sesinc",
        })
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ganelius" => Ok(Scheme::Ganelius),
            "sesinc" => Ok(Scheme::Sesinc),
            other => Err(Error::UnknownFunction(format!("scheme {other}"))),
        }
    }
}

/// Default shape exponent: ⌈µ/2⌉, which lies inside the admissible open
/// interval (µ/2, µ/2+1) unless µ/2 is an integer; in that case the
/// midpoint µ/2 + 1/2 is used.
pub fn default_nu<R: Real>(mu: R) -> R {
    let half = mu * R::from_f64(0.5);
    if half == half.ceil() {
        half + R::from_f64(0.5)
    } else {
        half.ceil()
    }
}

/// Interpolation formula over the 2N transformed Ganelius nodes.
pub struct GaneliusApproximant<R: Real> {
    pub params: SpaceParams<R>,
    pub nu: R,
    pub n: u32,
    pub nodes: TransformedNodes<R>,
    /// f(β_k) for k = 1..N, then k = −1..−N.
    pub samples: Vec<R>,
    /// x-independent log factor per positive k:
    /// ln|σ_k| + 2(ν−1)·ln cosh θ_k + ln(2d/π).
    coeff_log: Vec<R>,
}

/// Single-exponential Sinc formula on the grid ψ(jh), j = −N..N.
pub struct SesincApproximant<R: Real> {
    pub params: SpaceParams<R>,
    pub h: R,
    pub n: u32,
    /// f(ψ(jh)) for j = −N..N at index j+N.
    pub samples: Vec<R>,
}

/// Either scheme behind one evaluation interface.
pub enum Approximant<R: Real> {
    Ganelius(GaneliusApproximant<R>),
    Sesinc(SesincApproximant<R>),
}

impl<R: Real> Approximant<R> {
    pub fn eval(&self, p: UnitPoint<R>) -> R {
        match self {
            Approximant::Ganelius(a) => eval_ganelius(a, p),
            Approximant::Sesinc(a) => eval_sesinc(a, p),
        }
    }

    pub fn scheme(&self) -> Scheme {
        match self {
            Approximant::Ganelius(_) => Scheme::Ganelius,
            Approximant::Sesinc(_) => Scheme::Sesinc,
        }
    }

    pub fn n(&self) -> u32 {
        match self {
            Approximant::Ganelius(a) => a.n,
            Approximant::Sesinc(a) => a.n,
        }
    }
}

/// Build the Ganelius approximant of f with r = dµ/π.
pub fn build_ganelius<R: Real>(
    f: &TestFunction<R>,
    params: SpaceParams<R>,
    nu: R,
    n: u32,
) -> Result<GaneliusApproximant<R>> {
    let half_mu = params.mu * R::from_f64(0.5);
    if !(nu > half_mu && nu < half_mu + R::one()) {
        return Err(Error::NuOutOfRange {
            nu: nu.to_f64(),
            mu: params.mu.to_f64(),
            lo: half_mu.to_f64(),
            hi: (half_mu + R::one()).to_f64(),
        });
    }
    let r = params.d * params.mu / R::pi();
    let nodes = transform_nodes(&ganelius_nodes(n, r)?, params.d)?;
    let nn = n as usize;
    let mut samples = Vec::with_capacity(2 * nn);
    for k in 1..=nn {
        samples.push(f.eval(nodes.beta(k as i32)));
    }
    for k in 1..=nn {
        samples.push(f.eval(nodes.beta(-(k as i32))));
    }
    let two_d_over_pi_log = (params.d / R::frac_pi_2()).ln();
    let two = R::from_f64(2.0);
    let coeff_log = (0..nn)
        .map(|i| {
            nodes.sigma[i].logmag
                + (nu - R::one()) * two * logcosh(nodes.theta[i])
                + two_d_over_pi_log
        })
        .collect();
    Ok(GaneliusApproximant { params, nu, n, nodes, samples, coeff_log })
}

/// Evaluate f̃_{ν,N} at one point in O(N): the full Blaschke log-product is
/// accumulated once, each term then removes its own factor and replaces it
/// by the stable singular quotient.
pub fn eval_ganelius<R: Real>(a: &GaneliusApproximant<R>, p: UnitPoint<R>) -> R {
    let w = one_minus_x_sq(p);
    if w == R::zero() {
        return R::zero();
    }
    let theta_x = atanh_stable(p).expect("w > 0 implies |x| < 1");
    let c = R::frac_pi_2() / a.nodes.d;
    let nn = a.n as usize;
    let nu_log_w = a.nu * w.ln();

    // factor pass: flat index i covers k = 1..N then k = −1..−N
    let mut flog = Vec::with_capacity(2 * nn);
    let mut s_acc = CompensatedSum::new();
    let mut sign_total = 1i8;
    let mut zero_at: Option<usize> = None;
    for i in 0..2 * nn {
        let th = if i < nn { a.nodes.theta[i] } else { -a.nodes.theta[i - nn] };
        let dth = theta_x - th;
        if dth == R::zero() {
            zero_at = Some(i);
            flog.push(R::zero());
            continue;
        }
        if dth < R::zero() {
            sign_total = -sign_total;
        }
        let l = ln_abs_tanh(c * dth);
        flog.push(l);
        s_acc.add(l);
    }
    let s_total = s_acc.value();

    let term_logmag = |i: usize, include_own_factor: bool| -> R {
        let (idx, th) = if i < nn {
            (i, a.nodes.theta[i])
        } else {
            (i - nn, -a.nodes.theta[i - nn])
        };
        let mut lm = s_total + nu_log_w + a.coeff_log[idx]
            + log_singular_quotient(c, theta_x, th);
        if include_own_factor {
            lm = lm - flog[i];
        }
        lm
    };
    let sigma_sign = |i: usize| -> i8 {
        if i < nn {
            a.nodes.sigma[i].sign
        } else {
            -a.nodes.sigma[i - nn].sign
        }
    };

    if let Some(m) = zero_at {
        // x is exactly a node: every other term carries a zero factor
        let v = term_logmag(m, false).exp();
        let sign = sign_total * sigma_sign(m);
        return a.samples[m] * if sign < 0 { -v } else { v };
    }

    let mut total = CompensatedSum::new();
    for i in 0..2 * nn {
        let v = term_logmag(i, true).exp();
        let factor_sign = if theta_x
            < (if i < nn { a.nodes.theta[i] } else { -a.nodes.theta[i - nn] })
        {
            -1i8
        } else {
            1
        };
        let sign = sign_total * factor_sign * sigma_sign(i);
        total.add(a.samples[i] * if sign < 0 { -v } else { v });
    }
    total.value()
}

/// Build the SE-Sinc approximant with mesh h = √(2πd/(µN)).
pub fn build_sesinc<R: Real>(
    f: &TestFunction<R>,
    params: SpaceParams<R>,
    n: u32,
) -> Result<SesincApproximant<R>> {
    if n == 0 {
        return Err(Error::NonPositiveParameter { name: "N", value: 0.0 });
    }
    let h = (R::from_f64(2.0) * R::pi() * params.d
        / (params.mu * R::from_i64(i64::from(n))))
    .sqrt();
    let samples = (-(n as i64)..=n as i64)
        .map(|j| f.eval(se_map(R::from_i64(j) * h)))
        .collect();
    Ok(SesincApproximant { params, h, n, samples })
}

/// Evaluate the SE-Sinc formula at one point.
pub fn eval_sesinc<R: Real>(a: &SesincApproximant<R>, p: UnitPoint<R>) -> R {
    if p.is_unit() {
        return R::zero();
    }
    let t = se_map_inv(p).expect("non-unit point");
    let mut total = CompensatedSum::new();
    for (i, &s) in a.samples.iter().enumerate() {
        let j = i as i64 - a.n as i64;
        total.add(s * sinc_kernel(j, a.h, t));
    }
    total.value()
}
