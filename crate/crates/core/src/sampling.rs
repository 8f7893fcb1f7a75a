//! Modified Ganelius sampling points, their transforms into (−1,1), and the
//! coefficients σ_k of the approximation formula.

use crate::numerics::{signed_log_product, Real, SignedLog, UnitPoint};
use crate::{Error, Result};

/// The three-segment node set on (0,1).
///
/// With N0 = N − ⌈(π/4)√(Nr)⌉ and φ(x) = exp(π√(x/r)):
/// a_k = φ(k−1)/φ(N0) for k ≤ N0, a_{N0+1} = φ(N0−1/2)/φ(N0), and
/// a_k = 1 − (k−N0−1)/(5(N−N0−1)) for k ≥ N0+2.
#[derive(Clone, Debug)]
pub struct GaneliusNodes<R: Real> {
    pub n: u32,
    pub r: R,
    pub n0: u32,
    /// a_1..a_N at index k−1.
    pub a: Vec<R>,
    /// ln a_k, carried in exact exponent form for the φ-segment where a_k
    /// underflows all relative accuracy (a_1 reaches e^{−52} at N = 144).
    pub ln_a: Vec<R>,
}

/// Nodes mapped into (−1,1) together with the formula coefficients.
///
/// Only the positive half k = 1..N is stored; the k < 0 half follows from
/// the exact antisymmetry b_{−k} = −b_k, β_{−k} = −β_k, σ_{−k} = −σ_k.
#[derive(Clone, Debug)]
pub struct TransformedNodes<R: Real> {
    pub n: u32,
    pub d: R,
    /// arctanh b_k; the primary representation of b_k (1−b_1 is far below
    /// binary64 epsilon for large N).
    pub theta_b: Vec<R>,
    /// arctanh β_k = (2d/π)·arctanh b_k.
    pub theta: Vec<R>,
    pub b: Vec<UnitPoint<R>>,
    pub beta: Vec<UnitPoint<R>>,
    pub sigma: Vec<SignedLog<R>>,
}

fn split_index<R: Real>(n: u32, r: R) -> i64 {
    let nr = R::from_i64(i64::from(n)) * r;
    let c = (R::pi() * R::from_f64(0.25)) * nr.sqrt();
    i64::from(n) - c.ceil().to_f64() as i64
}

/// Modified Ganelius sampling points. Rejects parameter pairs whose split
/// index N0 falls below 2, where the first segment degenerates.
pub fn ganelius_nodes<R: Real>(n: u32, r: R) -> Result<GaneliusNodes<R>> {
    build_nodes(n, r, 2)
}

/// As [`ganelius_nodes`] but admitting N0 = 1, needed when scanning small N
/// against large r in the verification sweeps.
pub fn ganelius_nodes_relaxed<R: Real>(n: u32, r: R) -> Result<GaneliusNodes<R>> {
    build_nodes(n, r, 1)
}

fn build_nodes<R: Real>(n: u32, r: R, min_n0: i64) -> Result<GaneliusNodes<R>> {
    if !(r > R::zero()) {
        return Err(Error::NonPositiveParameter { name: "r", value: r.to_f64() });
    }
    let n0 = split_index(n, r);
    if n0 < min_n0 {
        return Err(Error::InvalidSplitIndex { n, r: r.to_f64(), n0, min: min_n0 });
    }
    if n0 <= 3 {
        log::warn!(
            "N={n}, r={}: split index N0={n0} is small; the phi-segment is near-degenerate",
            r.to_f64()
        );
    }
    let n0 = n0 as u32;

    let sqrt_inv_r = r.recip().sqrt();
    let sqrt_n0 = (R::from_i64(i64::from(n0)) * r.recip()).sqrt();
    // ln a_k = pi*(sqrt(x/r) - sqrt(N0/r)); never the ratio of two exponentials
    let phi_log = |x: R| R::pi() * (x.sqrt() * sqrt_inv_r - sqrt_n0);

    let mut a = Vec::with_capacity(n as usize);
    let mut ln_a = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let la = if k <= n0 {
            phi_log(R::from_i64(i64::from(k) - 1))
        } else if k == n0 + 1 {
            phi_log(R::from_i64(i64::from(n0)) - R::from_f64(0.5))
        } else {
            let m = i64::from(n) - i64::from(n0) - 1;
            let u = R::from_i64(i64::from(k) - i64::from(n0) - 1) / R::from_i64(5 * m);
            let ak = R::one() - u;
            a.push(ak);
            ln_a.push((-u).ln_1p());
            continue;
        };
        a.push(la.exp());
        ln_a.push(la);
    }

    for w in ln_a[..n0 as usize + 1].windows(2) {
        assert!(w[0] < w[1], "phi-segment must be strictly increasing");
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let tol = R::from_f64(4.0) * R::epsilon() * a[i].max(a[j]);
            if (a[i] - a[j]).abs() <= tol {
                return Err(Error::NodeCollision { i: i + 1, j: j + 1 });
            }
        }
    }

    Ok(GaneliusNodes { n, r, n0, a, ln_a })
}

/// Maps nodes into (−1,1) via b_k = √((1−a_k)/(1+a_k)), tilts them by the
/// opening angle d through β_k = tanh((2d/π)·arctanh b_k), and accumulates
/// the coefficients σ_k = ∏′_{ℓ≠k} (1−b_ℓ b_k)/(b_k−b_ℓ) over ℓ = ±1..±N.
///
/// Everything runs in θ-space: with b = tanh θ each σ factor equals
/// coth(θb_k − θb_ℓ) exactly, which stays well conditioned when the b's
/// crowd against 1.
pub fn transform_nodes<R: Real>(nodes: &GaneliusNodes<R>, d: R) -> Result<TransformedNodes<R>> {
    if !(d > R::zero() && d < R::pi()) {
        return Err(Error::InvalidAngle(d.to_f64()));
    }
    let n = nodes.a.len();
    let half = R::from_f64(0.5);

    // arctanh b_k = ln(1+b_k) + (ln(1+a_k) - ln 2 - ln a_k)/2, exact in the
    // stored exponent form of ln a_k
    let mut theta_b = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for k in 0..n {
        let ak = nodes.a[k];
        let bk = ((R::one() - ak) / (R::one() + ak)).sqrt();
        let th = bk.ln_1p() + half * (ak.ln_1p() - R::ln_2() - nodes.ln_a[k]);
        theta_b.push(th);
        b.push(UnitPoint::from_theta(th));
    }

    let scale = d / R::frac_pi_2();
    let theta: Vec<R> = theta_b.iter().map(|&t| t * scale).collect();
    let beta: Vec<UnitPoint<R>> = theta.iter().map(|&t| UnitPoint::from_theta(t)).collect();

    let mut sigma = Vec::with_capacity(n);
    for k in 0..n {
        for l in 0..n {
            if l != k && theta_b[k] == theta_b[l] {
                return Err(Error::NodeCollision { i: k + 1, j: l + 1 });
            }
        }
        let tk = theta_b[k];
        let factors = (0..n)
            .filter(move |&l| l != k)
            .map(|l| (tk - theta_b[l]).tanh().recip())
            .chain((0..n).map(|l| (tk + theta_b[l]).tanh().recip()));
        sigma.push(signed_log_product(factors));
    }

    Ok(TransformedNodes { n: nodes.n, d, theta_b, theta, b, beta, sigma })
}

impl<R: Real> TransformedNodes<R> {
    fn idx(&self, k: i32) -> usize {
        debug_assert!(k != 0 && k.unsigned_abs() <= self.n);
        (k.unsigned_abs() - 1) as usize
    }

    /// b_k for signed index k ∈ ±1..±N.
    pub fn b(&self, k: i32) -> UnitPoint<R> {
        let p = self.b[self.idx(k)];
        if k < 0 { p.neg() } else { p }
    }

    /// β_k for signed index k.
    pub fn beta(&self, k: i32) -> UnitPoint<R> {
        let p = self.beta[self.idx(k)];
        if k < 0 { p.neg() } else { p }
    }

    /// arctanh β_k for signed index k.
    pub fn theta(&self, k: i32) -> R {
        let t = self.theta[self.idx(k)];
        if k < 0 { -t } else { t }
    }

    /// arctanh b_k for signed index k.
    pub fn theta_b(&self, k: i32) -> R {
        let t = self.theta_b[self.idx(k)];
        if k < 0 { -t } else { t }
    }

    /// σ_k for signed index k; σ_{−k} = −σ_k exactly.
    pub fn sigma(&self, k: i32) -> SignedLog<R> {
        let s = self.sigma[self.idx(k)];
        if k < 0 { SignedLog { sign: -s.sign, logmag: s.logmag } } else { s }
    }
}
