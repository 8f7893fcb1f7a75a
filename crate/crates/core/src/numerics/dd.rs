//! Double-double arithmetic: each value is an unevaluated sum `hi + lo` of
//! two binary64 numbers with `|lo| <= ulp(hi)/2`, giving roughly 106
//! significand bits (about 31 decimal digits).
//!
//! The arithmetic core follows the classical error-free-transformation
//! algorithms (two_sum / two_prod with FMA, three-term division, Karp sqrt).
//! The transcendental layer is implemented here as well: argument reduction
//! plus Taylor/Newton kernels, accurate to a few units in the 1e-31 place on
//! the argument ranges this crate uses (|x| up to ~750 for exp, ~1e4 for
//! sin/cos reduction).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Debug, Default)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b| or a == 0
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
pub const PI: Dd = Dd { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
pub const FRAC_PI_2: Dd = Dd { hi: 1.5707963267948966, lo: 6.123233995736766e-17 };
pub const LN_2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };

// residuals beyond the two-f64 representation, used in argument reduction
const LN_2_TAIL: f64 = 5.707708438416212e-34;
const FRAC_PI_2_TAIL: f64 = -1.4973849048591698e-33;

impl Dd {
    /// Builds from an already-normalized pair (`|lo| <= ulp(hi)/2`).
    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    /// Builds from any two f64 values.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_i64(n: i64) -> Self {
        let hi = n as f64;
        // |n| < 2^63 so the rounding residual fits exactly in an i64 and an f64
        let lo = if hi.abs() < 9.007199254740992e15 {
            0.0
        } else {
            n.wrapping_sub(hi as i64) as f64
        };
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_nan(self) -> bool {
        self.hi.is_nan() || self.lo.is_nan()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn is_sign_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.is_sign_negative() {
            -self
        } else {
            self
        }
    }

    /// Exact multiplication by a power of two.
    #[inline]
    pub fn mul_pwr2(self, p: f64) -> Self {
        Dd { hi: self.hi * p, lo: self.lo * p }
    }

    pub fn floor(self) -> Self {
        let fhi = self.hi.floor();
        if fhi == self.hi {
            let (hi, lo) = quick_two_sum(fhi, self.lo.floor());
            Dd { hi, lo }
        } else {
            Dd { hi: fhi, lo: 0.0 }
        }
    }

    pub fn ceil(self) -> Self {
        let chi = self.hi.ceil();
        if chi == self.hi {
            let (hi, lo) = quick_two_sum(chi, self.lo.ceil());
            Dd { hi, lo }
        } else {
            Dd { hi: chi, lo: 0.0 }
        }
    }

    pub fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            self.ceil()
        }
    }

    pub fn round(self) -> Self {
        (self + Dd::new(0.5, 0.0)).floor()
    }

    pub fn recip(self) -> Self {
        ONE / self
    }

    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return ZERO;
        }
        if self.hi < 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        // Karp & Markstein: one high-precision correction of the f64 root
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let (p, e) = two_prod(ax, ax);
        let resid = ((self - Dd { hi: p, lo: e }).hi) * (x * 0.5);
        let (hi, lo) = quick_two_sum(ax, resid);
        Dd { hi, lo }
    }

    // ---- transcendental layer ----

    pub fn exp(self) -> Self {
        if self.hi <= -745.0 {
            return ZERO;
        }
        if self.hi >= 709.8 {
            return Dd::from_f64(f64::INFINITY);
        }
        let m = (self.hi / LN_2.hi).round();
        // r = self - m*ln2, carried to ~160 bits of ln2
        let r = (self - LN_2 * m) - Dd::from_f64(m * LN_2_TAIL);
        let r = r.mul_pwr2(1.0 / 512.0);
        // s = e^r - 1 by Taylor; then 9 doublings of s via s <- 2s + s^2
        let mut term = r * r * r;
        let mut s = r + (r * r).mul_pwr2(0.5);
        let mut fact = 6.0;
        let mut k = 3.0;
        loop {
            let t = term.div_f64(fact);
            s += t;
            if t.hi.abs() < 1e-40 {
                break;
            }
            term *= r;
            k += 1.0;
            fact *= k;
        }
        for _ in 0..9 {
            s = s.mul_pwr2(2.0) + s * s;
        }
        s += ONE;
        let scale = libm_ldexp(m as i32);
        s.mul_pwr2(scale)
    }

    pub fn exp_m1(self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return ZERO;
        }
        if self.hi.abs() < 0.5 {
            // Taylor sum x^k/k!, k >= 1
            let mut sum = self;
            let mut term = self;
            let mut k = 2.0;
            loop {
                term = (term * self).div_f64(k);
                sum += term;
                if term.hi.abs() <= 1e-36 * sum.hi.abs() {
                    return sum;
                }
                k += 1.0;
            }
        }
        self.exp() - ONE
    }

    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 && self.lo == 0.0 {
                Dd::from_f64(f64::NEG_INFINITY)
            } else {
                Dd::from_f64(f64::NAN)
            };
        }
        if self == ONE {
            return ZERO;
        }
        if self.hi > 0.5 && self.hi < 1.5 {
            // keep full relative accuracy near 1: 2 atanh(u/(2+u))
            let u = self - ONE;
            let z = u / (Dd::new(2.0, 0.0) + u);
            return (z * atanh_ratio(z * z)).mul_pwr2(2.0);
        }
        self.ln_newton()
    }

    /// Newton's iteration on exp(x) = a from the f64 seed; one step takes
    /// the 1e-16 seed error to ~1e-32. Requires hi > 0.
    fn ln_newton(self) -> Self {
        let x = Dd::from_f64(self.hi.ln());
        x + self * (-x).exp() - ONE
    }

    pub fn ln_1p(self) -> Self {
        if self.hi.abs() < 0.5 {
            // 2 atanh(u/(2+u)); |z| < 1/3 so the odd series converges
            let z = self / (Dd::new(2.0, 0.0) + self);
            return (z * atanh_ratio(z * z)).mul_pwr2(2.0);
        }
        (ONE + self).ln()
    }

    pub fn sinh(self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return ZERO;
        }
        if self.hi.abs() < 0.5 {
            // odd Taylor series
            let x2 = self * self;
            let mut sum = self;
            let mut term = self;
            let mut k = 1.0;
            loop {
                term = (term * x2).div_f64((k + 1.0) * (k + 2.0));
                sum += term;
                if term.hi.abs() <= 1e-36 * sum.hi.abs() {
                    return sum;
                }
                k += 2.0;
            }
        }
        let e = self.exp();
        (e - e.recip()).mul_pwr2(0.5)
    }

    pub fn cosh(self) -> Self {
        let e = self.abs().exp();
        (e + e.recip()).mul_pwr2(0.5)
    }

    pub fn tanh(self) -> Self {
        let a = self.abs();
        if a.hi < 0.5 {
            let em = self.mul_pwr2(2.0).exp_m1();
            return em / (em + Dd::new(2.0, 0.0));
        }
        // 1 - 2q/(1+q) with q = e^{-2|x|}; q <= e^{-1} so no cancellation
        let q = (-a.mul_pwr2(2.0)).exp();
        let t = (ONE - q) / (ONE + q);
        if self.is_sign_negative() {
            -t
        } else {
            t
        }
    }

    pub fn atanh(self) -> Self {
        let a = self.abs();
        if a.hi >= 1.0 {
            return Dd::from_f64(f64::NAN);
        }
        let v = if a.hi <= 0.25 {
            a * atanh_ratio(a * a)
        } else {
            ((a.mul_pwr2(2.0)) / (ONE - a)).ln_1p().mul_pwr2(0.5)
        };
        if self.is_sign_negative() {
            -v
        } else {
            v
        }
    }

    pub fn sin(self) -> Self {
        let (r, quadrant) = reduce_pi_2(self);
        match quadrant {
            0 => sin_taylor(r),
            1 => cos_taylor(r),
            2 => -sin_taylor(r),
            _ => -cos_taylor(r),
        }
    }

    pub fn cos(self) -> Self {
        let (r, quadrant) = reduce_pi_2(self);
        match quadrant {
            0 => cos_taylor(r),
            1 => -sin_taylor(r),
            2 => -cos_taylor(r),
            _ => sin_taylor(r),
        }
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base *= base;
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn powf(self, y: Dd) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return if y.hi == 0.0 { ONE } else { ZERO };
        }
        if self.hi < 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        (y * self.ln()).exp()
    }

    #[inline]
    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    #[inline]
    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let mut r = self - Dd { hi: p, lo: e };
        let q2 = r.hi / b;
        let (p, e) = two_prod(q2, b);
        r -= Dd { hi: p, lo: e };
        let q3 = r.hi / b;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }

    /// Formats with `digits` significant digits in scientific notation.
    pub fn format_sig(self, digits: usize) -> String {
        if self.is_nan() {
            return "NaN".into();
        }
        if !self.is_finite() {
            return if self.hi > 0.0 { "inf".into() } else { "-inf".into() };
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return format!("{:.*e}", digits.saturating_sub(1), 0.0);
        }
        let neg = self.is_sign_negative();
        let mut v = self.abs();
        let mut e10 = v.hi.log10().floor() as i32;
        v = v / Dd::new(10.0, 0.0).powi(e10);
        while v.hi >= 10.0 {
            v = v.div_f64(10.0);
            e10 += 1;
        }
        while v.hi < 1.0 {
            v *= Dd::new(10.0, 0.0);
            e10 -= 1;
        }
        // extract digits+1 raw digits; the lo limb can push a remainder
        // slightly out of [0,10), so normalize with a borrow/carry pass
        let mut ds: Vec<i32> = Vec::with_capacity(digits + 2);
        for _ in 0..=digits {
            let d = v.hi.floor();
            ds.push(d as i32);
            v = (v - Dd::from_f64(d)) * Dd::new(10.0, 0.0);
        }
        for i in (1..ds.len()).rev() {
            if ds[i] < 0 {
                ds[i] += 10;
                ds[i - 1] -= 1;
            } else if ds[i] > 9 {
                ds[i] -= 10;
                ds[i - 1] += 1;
            }
        }
        if ds[0] > 9 {
            ds.insert(0, 1);
            ds[1] -= 10;
            ds.pop();
            e10 += 1;
        } else if ds[0] == 0 {
            ds.remove(0);
            ds.push(0);
            e10 -= 1;
        }
        // round away the guard digit
        if ds[digits] >= 5 {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds[0] = 1;
                    e10 += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        let mut out = String::with_capacity(digits + 8);
        if neg {
            out.push('-');
        }
        out.push((b'0' + ds[0] as u8) as char);
        if digits > 1 {
            out.push('.');
            for &d in &ds[1..digits] {
                out.push((b'0' + d as u8) as char);
            }
        }
        out.push('e');
        out.push_str(&e10.to_string());
        out
    }

    /// Parses decimal notation, optionally with exponent (`-1.25e-7`).
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let (neg, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (mant, exp10) = match rest.find(['e', 'E']) {
            Some(i) => (&rest[..i], rest[i + 1..].parse::<i32>().ok()?),
            None => (rest, 0),
        };
        let (int_part, frac_part) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let mut acc = ZERO;
        let mut ndigits = 0i32;
        for c in int_part.bytes().chain(frac_part.bytes()) {
            if !c.is_ascii_digit() {
                return None;
            }
            acc = acc * Dd::new(10.0, 0.0) + Dd::from_f64(f64::from(c - b'0'));
            ndigits += 1;
        }
        let _ = ndigits;
        let scale = exp10 - frac_part.len() as i32;
        let p = Dd::new(10.0, 0.0).powi(scale.abs());
        let v = if scale >= 0 { acc * p } else { acc / p };
        Some(if neg { -v } else { v })
    }
}

/// 2^m as f64 (|m| <= 1023).
fn libm_ldexp(m: i32) -> f64 {
    2f64.powi(m)
}

/// atanh(z)/z = sum z^{2k}/(2k+1), given z^2 with |z^2| <= 1/16.
fn atanh_ratio(z2: Dd) -> Dd {
    let mut sum = ONE;
    let mut p = z2;
    let mut k = 3.0;
    loop {
        let t = p.div_f64(k);
        sum += t;
        if t.hi.abs() < 1e-35 {
            return sum;
        }
        p *= z2;
        k += 2.0;
    }
}

/// Reduces to r = x - k*pi/2 with |r| <= pi/4, returning (r, k mod 4).
fn reduce_pi_2(x: Dd) -> (Dd, u32) {
    debug_assert!(x.hi.abs() < 1e12, "sin/cos argument out of reduction range");
    let k = (x.hi / FRAC_PI_2.hi).round();
    let r = (x - FRAC_PI_2 * k) - Dd::from_f64(k * FRAC_PI_2_TAIL);
    let q = ((k as i64 % 4) + 4) % 4;
    (r, q as u32)
}

fn sin_taylor(r: Dd) -> Dd {
    if r.hi == 0.0 && r.lo == 0.0 {
        return ZERO;
    }
    let mr2 = -(r * r);
    let mut sum = r;
    let mut term = r;
    let mut k = 1.0;
    loop {
        term = (term * mr2).div_f64((k + 1.0) * (k + 2.0));
        sum += term;
        if term.hi.abs() < 1e-35 {
            return sum;
        }
        k += 2.0;
    }
}

fn cos_taylor(r: Dd) -> Dd {
    let mr2 = -(r * r);
    let mut sum = ONE;
    let mut term = ONE;
    let mut k = 0.0;
    loop {
        term = (term * mr2).div_f64((k + 1.0) * (k + 2.0));
        sum += term;
        if term.hi.abs() < 1e-35 {
            return sum;
        }
        k += 2.0;
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

/// Exact-residual three-term division (relative error ~2^-104).
impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: f64) -> Dd {
        let (p, e) = two_prod(self.hi, rhs);
        let (hi, lo) = quick_two_sum(p, f64::mul_add(self.lo, rhs, e));
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, rhs: Dd) {
        *self = *self + rhs;
    }
}

impl SubAssign for Dd {
    #[inline]
    fn sub_assign(&mut self, rhs: Dd) {
        *self = *self - rhs;
    }
}

impl MulAssign for Dd {
    #[inline]
    fn mul_assign(&mut self, rhs: Dd) {
        *self = *self * rhs;
    }
}

impl DivAssign for Dd {
    #[inline]
    fn div_assign(&mut self, rhs: Dd) {
        *self = *self / rhs;
    }
}

impl PartialEq for Dd {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for Dd {
    #[inline]
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_sig(36))
    }
}
