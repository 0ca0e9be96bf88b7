//! Log-magnitude arithmetic and a double-double accumulator.
//!
//! Factorials up to `(2j)!` with `j = 50` and powers such as `cosh(ξ)^(2j)`
//! leave the range of `f64`, so the series code carries values as a sign and
//! a natural-log magnitude. Alternating sums that cancel heavily are summed
//! in [`DoubleDouble`] instead.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Largest `n` with an exact `n!` in `u64`.
const EXACT_TABLE_MAX: u32 = 20;

/// `ln(n!)`.
///
/// Exact product for `n <= 20`, log-gamma above.
pub fn log_factorial(n: u32) -> f64 {
    if n <= EXACT_TABLE_MAX {
        let mut f: u64 = 1;
        for k in 2..=u64::from(n) {
            f *= k;
        }
        (f as f64).ln()
    } else {
        libm::lgamma(f64::from(n) + 1.0)
    }
}

/// Precomputed `ln(k!)` for `k = 0..=max`.
#[derive(Debug, Clone)]
pub struct LogFactorials(Vec<f64>);

impl LogFactorials {
    pub fn up_to(max: u32) -> Self {
        Self((0..=max).map(log_factorial).collect())
    }

    #[inline]
    pub fn get(&self, n: u32) -> f64 {
        self.0[n as usize]
    }
}

/// `ln(cosh x)` without overflow for large `|x|`.
pub fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// Stable `ln(Σ exp(v))`; `-inf` for an empty or all `-inf` input.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

/// A real number stored as sign and `ln|x|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaled {
    sign: i8,
    log_mag: f64,
}

impl LogScaled {
    pub const ZERO: LogScaled = LogScaled {
        sign: 0,
        log_mag: f64::NEG_INFINITY,
    };
    pub const ONE: LogScaled = LogScaled {
        sign: 1,
        log_mag: 0.0,
    };

    /// Builds from a sign and a log-magnitude. A sign of zero, or a
    /// `-inf` magnitude, yields [`LogScaled::ZERO`].
    pub fn new(sign: i8, log_mag: f64) -> Self {
        if sign == 0 || log_mag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            Self {
                sign: sign.signum(),
                log_mag,
            }
        }
    }

    pub fn from_log(log_mag: f64) -> Self {
        Self::new(1, log_mag)
    }

    pub fn from_real(x: f64) -> Self {
        match x.partial_cmp(&0.0) {
            Some(Ordering::Greater) => Self {
                sign: 1,
                log_mag: x.ln(),
            },
            Some(Ordering::Less) => Self {
                sign: -1,
                log_mag: (-x).ln(),
            },
            _ => Self::ZERO,
        }
    }

    pub fn to_real(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_mag.exp(),
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// `ln|x|`; `-inf` for zero.
    pub fn log_mag(self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            self.log_mag
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// `self / other` as an ordinary float, useful when the quotient is
    /// representable even though neither operand is.
    pub fn ratio(self, other: LogScaled) -> f64 {
        (self / other).to_real()
    }
}

impl Mul for LogScaled {
    type Output = LogScaled;
    fn mul(self, rhs: LogScaled) -> LogScaled {
        LogScaled::new(self.sign * rhs.sign, self.log_mag + rhs.log_mag)
    }
}

impl Div for LogScaled {
    type Output = LogScaled;
    fn div(self, rhs: LogScaled) -> LogScaled {
        assert!(rhs.sign != 0, "LogScaled division by zero");
        LogScaled::new(self.sign * rhs.sign, self.log_mag - rhs.log_mag)
    }
}

impl Neg for LogScaled {
    type Output = LogScaled;
    fn neg(self) -> LogScaled {
        LogScaled {
            sign: -self.sign,
            log_mag: self.log_mag,
        }
    }
}

impl Add for LogScaled {
    type Output = LogScaled;
    fn add(self, rhs: LogScaled) -> LogScaled {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.log_mag >= rhs.log_mag {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let d = (small.log_mag - big.log_mag).exp();
        if big.sign == small.sign {
            LogScaled::new(big.sign, big.log_mag + d.ln_1p())
        } else if d == 1.0 {
            LogScaled::ZERO
        } else {
            LogScaled::new(big.sign, big.log_mag + (-d).ln_1p())
        }
    }
}

impl Sub for LogScaled {
    type Output = LogScaled;
    fn sub(self, rhs: LogScaled) -> LogScaled {
        self + (-rhs)
    }
}

impl std::iter::Sum for LogScaled {
    fn sum<I: Iterator<Item = LogScaled>>(iter: I) -> LogScaled {
        iter.fold(LogScaled::ZERO, |acc, x| acc + x)
    }
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, roughly 106 bits.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, self.lo.mul_add(b, e));
        Self { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - DoubleDouble::from_f64(b).mul_f64(q1);
        let q2 = r.hi / b;
        let r = r - DoubleDouble::from_f64(b).mul_f64(q2);
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::from_f64(q3)
    }
}

impl Add for DoubleDouble {
    type Output = DoubleDouble;
    fn add(self, b: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = DoubleDouble;
    fn neg(self) -> DoubleDouble {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = DoubleDouble;
    fn sub(self, b: DoubleDouble) -> DoubleDouble {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = DoubleDouble;
    fn mul(self, b: DoubleDouble) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = DoubleDouble;
    fn div(self, b: DoubleDouble) -> DoubleDouble {
        let q1 = self.hi / b.hi;
        let r = self - b * DoubleDouble::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * DoubleDouble::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::from_f64(q3)
    }
}
