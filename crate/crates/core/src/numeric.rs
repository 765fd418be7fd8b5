//! Harmonic numbers: exact rationals and a double-double sweep.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact `H_m = 1 + 1/2 + ... + 1/m` (`H_0 = 0`).
pub fn harmonic(m: usize) -> BigRational {
    harmonic_prefix(m).pop().unwrap_or_else(BigRational::zero)
}

/// `[H_0, H_1, ..., H_m]`, exact.
pub fn harmonic_prefix(m: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(m + 1);
    let mut h = BigRational::zero();
    out.push(h.clone());
    for j in 1..=m {
        h += BigRational::new(BigInt::one(), BigInt::from(j));
        out.push(h.clone());
    }
    out
}

/// Exact `H_m` by binary splitting; fast for large `m` where summing term by
/// term would reduce huge fractions at every step.
pub fn harmonic_split(m: usize) -> BigRational {
    if m == 0 {
        return BigRational::zero();
    }
    // sum_{j in lo..hi} 1/j = p/q
    fn split(lo: usize, hi: usize) -> (BigInt, BigInt) {
        if hi - lo == 1 {
            return (BigInt::one(), BigInt::from(lo));
        }
        let mid = lo + (hi - lo) / 2;
        let (p1, q1) = split(lo, mid);
        let (p2, q2) = split(mid, hi);
        (p1 * &q2 + p2 * &q1, q1 * q2)
    }
    let (p, q) = split(1, m + 1);
    BigRational::new(p, q)
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`; about 106 bits.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    fn two_sum(a: f64, b: f64) -> DoubleDouble {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        DoubleDouble { hi: s, lo: err }
    }

    pub fn add(self, other: DoubleDouble) -> DoubleDouble {
        let s = Self::two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        Self::two_sum(s.hi, lo)
    }

    /// `1/m` to double-double precision.
    pub fn recip(m: usize) -> DoubleDouble {
        let x = m as f64;
        let hi = 1.0 / x;
        // residual 1 - m*hi is exact with fma
        let lo = (-hi).mul_add(x, 1.0) / x;
        Self::two_sum(hi, lo)
    }

    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    /// `self - x` rounded to f64.
    pub fn minus(self, x: f64) -> f64 {
        (self.hi - x) + self.lo
    }
}

/// Double-double `H_1..=H_m` in order; index 0 holds `H_1`.
pub fn harmonic_dd(m: usize) -> Vec<DoubleDouble> {
    let mut h = DoubleDouble::default();
    (1..=m)
        .map(|j| {
            h = h.add(DoubleDouble::recip(j));
            h
        })
        .collect()
}

/// Checks `ln(m+1) <= H_m <= ln m + 1` with a `guard` of slack on each side.
pub fn harmonic_bounds_ok(m: usize, h: DoubleDouble, guard: f64) -> bool {
    let lower = ((m + 1) as f64).ln();
    let upper = (m as f64).ln() + 1.0;
    h.minus(lower) >= -guard && h.minus(upper) <= guard
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSweep {
    pub max_m: usize,
    /// Values of m failing the two-sided bound.
    pub bound_violations: Vec<usize>,
    /// Pairs `(i, j)`, `i <= j`, with `H_j - H_i > ln j - ln i` beyond the guard.
    pub difference_violations: Vec<(usize, usize)>,
    /// Largest gap `|H_m(double-double) - H_m(exact)|` over the checkpoints.
    pub checkpoint_error: f64,
}

impl HarmonicSweep {
    pub fn ok(&self) -> bool {
        self.bound_violations.is_empty() && self.difference_violations.is_empty()
    }
}

/// Sweeps every `m <= max_m`. The all-pairs difference bound is equivalent to
/// `H_j - ln j <= min_{i <= j} (H_i - ln i)`, so one running minimum covers
/// every pair.
pub fn harmonic_sweep(max_m: usize, guard: f64, checkpoints: &[usize]) -> HarmonicSweep {
    let values = harmonic_dd(max_m);
    let mut bound_violations = Vec::new();
    let mut difference_violations = Vec::new();
    let mut best = (f64::INFINITY, 0usize);
    for (idx, &h) in values.iter().enumerate() {
        let m = idx + 1;
        if !harmonic_bounds_ok(m, h, guard) {
            bound_violations.push(m);
        }
        let e = h.minus((m as f64).ln());
        if e < best.0 {
            best = (e, m);
        }
        if e - best.0 > guard {
            difference_violations.push((best.1, m));
        }
    }
    let mut checkpoint_error = 0.0f64;
    for &c in checkpoints.iter().filter(|&&c| c >= 1 && c <= max_m) {
        let diff = harmonic_split(c) - rational_from_dd(values[c - 1]);
        checkpoint_error = checkpoint_error.max(to_f64(&diff).abs());
    }
    HarmonicSweep {
        max_m,
        bound_violations,
        difference_violations,
        checkpoint_error,
    }
}

fn rational_from_dd(x: DoubleDouble) -> BigRational {
    let hi = BigRational::from_float(x.hi).expect("finite");
    let lo = BigRational::from_float(x.lo).expect("finite");
    hi + lo
}

/// Nearest-ish f64 of a rational (good to a few ulps).
pub fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn exact_values() {
        assert_eq!(harmonic(0), q(0, 1));
        assert_eq!(harmonic(1), q(1, 1));
        assert_eq!(harmonic(4), q(25, 12));
        assert_eq!(harmonic(10), q(7381, 2520));
    }

    #[test]
    fn split_matches_prefix() {
        let prefix = harmonic_prefix(300);
        for m in [0, 1, 2, 3, 17, 64, 255, 300] {
            assert_eq!(harmonic_split(m), prefix[m]);
        }
    }

    #[test]
    fn double_double_tracks_exact() {
        let sweep = harmonic_sweep(3000, 1e-12, &[1, 2, 7, 100, 2999, 3000]);
        assert!(sweep.ok());
        assert!(sweep.checkpoint_error < 1e-28, "{}", sweep.checkpoint_error);
    }

    #[test]
    fn bound_is_tight_at_one() {
        // H_1 = ln 1 + 1 exactly
        let h = harmonic_dd(1)[0];
        assert!(harmonic_bounds_ok(1, h, 0.0));
        assert!(!harmonic_bounds_ok(1, DoubleDouble { hi: 1.0 + 1e-9, lo: 0.0 }, 1e-12));
    }

    #[test]
    fn reversed_difference_bound_is_false() {
        // i >= j does not give H_j - H_i <= ln j - ln i: take i = 2, j = 1
        let lhs = 1.0 - 1.5;
        let rhs = 1f64.ln() - 2f64.ln();
        assert!(lhs > rhs);
    }
}
