//! Exact sign determination for real cyclotomic numbers.
//!
//! The sign of a nonzero real element of `Q(zeta_n)` under the standard
//! embedding `zeta_n -> exp(2 pi i/n)` is decided with rational interval
//! arithmetic: enclose `cos(2 pi k/n)` by Taylor polynomials with certified
//! tails and refine until the enclosure excludes zero. Termination is
//! guaranteed because zero is excluded exactly beforehand.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclo::Cyclo;
use crate::error::{QgError, QgResult};

#[derive(Clone, Debug)]
struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    fn point(q: BigRational) -> Interval {
        Interval { lo: q.clone(), hi: q }
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    fn mul(&self, o: &Interval) -> Interval {
        let candidates = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    fn scale(&self, q: &BigRational) -> Interval {
        if q.is_negative() {
            Interval { lo: &self.hi * q, hi: &self.lo * q }
        } else {
            Interval { lo: &self.lo * q, hi: &self.hi * q }
        }
    }

    fn widen(&self, eps: &BigRational) -> Interval {
        Interval { lo: &self.lo - eps, hi: &self.hi + eps }
    }

    /// Round endpoints outward onto the dyadic grid 2^-bits to keep the
    /// rationals small.
    fn coarsen(&self, bits: u32) -> Interval {
        Interval { lo: round_down(&self.lo, bits), hi: round_up(&self.hi, bits) }
    }

    fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

fn round_down(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = q * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.floor().to_integer(), scale)
}

fn round_up(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = q * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.ceil().to_integer(), scale)
}

/// arctan(1/x) for integer x > 1 with error below 2^-bits, via the
/// alternating series with its first-omitted-term bound.
fn atan_inv(x: i64, bits: u32) -> Interval {
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let xq = BigRational::from_integer(BigInt::from(x));
    let x2 = &xq * &xq;
    let mut term = BigRational::new(BigInt::one(), BigInt::from(x));
    let mut sum = BigRational::zero();
    let mut k = 0u32;
    loop {
        let contribution = &term / BigRational::from_integer(BigInt::from(2 * k as i64 + 1));
        if contribution < eps {
            // Alternating series: truncation error bounded by this term.
            let s = Interval::point(sum);
            return s.widen(&contribution).coarsen(bits + 8);
        }
        if k % 2 == 0 {
            sum += &contribution;
        } else {
            sum -= &contribution;
        }
        term = &term / &x2;
        k += 1;
    }
}

/// Enclosure of pi with error ~2^-bits (Machin's formula).
fn pi_interval(bits: u32) -> Interval {
    let a = atan_inv(5, bits + 6);
    let b = atan_inv(239, bits + 6);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    a.scale(&sixteen).sub(&b.scale(&four)).coarsen(bits)
}

/// cos over an interval argument via degree-capped Taylor with certified tail.
/// Valid for |theta| <= 7.
fn cos_interval(theta: &Interval, bits: u32) -> Interval {
    // cos x = sum (-1)^j x^(2j) / (2j)!; for |x| <= 7 the terms decrease once
    // 2j >= 14, so the tail after the term with 2j = 2m is bounded by the
    // next term provided 2m + 2 >= 16.
    let m = std::cmp::max(8, (bits as usize) / 3 + 12);
    let x2 = theta.mul(theta).coarsen(bits + 16);
    let mut sum = Interval::point(BigRational::one());
    let mut term = Interval::point(BigRational::one());
    for j in 1..=m {
        let denom = BigRational::from_integer(BigInt::from((2 * j - 1) as i64 * (2 * j) as i64));
        term = term.mul(&x2).scale(&denom.recip()).coarsen(bits + 16);
        if j % 2 == 1 {
            sum = sum.sub(&term);
        } else {
            sum = sum.add(&term);
        }
    }
    // Tail bound: |x|^(2m+2) / (2m+2)! <= max(|term|) * 49 / ((2m+1)(2m+2)).
    let bound = term
        .mul(&x2)
        .scale(&BigRational::from_integer(BigInt::from((2 * m + 1) as i64 * (2 * m + 2) as i64)).recip());
    let tail = std::cmp::max(bound.lo.abs(), bound.hi.abs());
    sum.widen(&tail).coarsen(bits)
}

/// Enclosure of the standard-embedding value of a real cyclotomic number.
fn enclose(value: &Cyclo, bits: u32) -> Interval {
    let (n, coeffs) = value.parts();
    let pi = pi_interval(bits + 16);
    let two_over_n = BigRational::new(BigInt::from(2), BigInt::from(n));
    let mut total = Interval::point(BigRational::zero());
    for (k, q) in coeffs.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        if k == 0 {
            total = total.add(&Interval::point(q.clone()));
            continue;
        }
        // theta = 2 pi k / n in [0, 2 pi); fold into [-pi, pi] by subtracting
        // 2 pi when k/n > 1/2 so the Taylor series converges fast.
        let frac = &two_over_n * BigRational::from_integer(BigInt::from(k));
        let frac = if frac > BigRational::one() {
            frac - BigRational::from_integer(BigInt::from(2))
        } else {
            frac
        };
        let theta = pi.scale(&frac);
        let c = cos_interval(&theta, bits + 8);
        total = total.add(&c.scale(q));
    }
    total.coarsen(bits)
}

/// Exact sign of a real cyclotomic number.
pub fn sign(value: &Cyclo) -> QgResult<Ordering> {
    if !value.is_real() {
        return Err(QgError::MathCheckFailed(
            "sign requested for a non-real scalar".into(),
        ));
    }
    if value.is_zero() {
        return Ok(Ordering::Equal);
    }
    if let Some(q) = value.as_rational() {
        return Ok(q.cmp(&BigRational::zero()));
    }
    let mut bits = 32u32;
    loop {
        let enc = enclose(value, bits);
        if let Some(s) = enc.sign() {
            return Ok(s);
        }
        bits *= 2;
        if bits > 1 << 16 {
            return Err(QgError::MathCheckFailed(
                "sign determination did not converge".into(),
            ));
        }
    }
}

pub fn is_positive(value: &Cyclo) -> QgResult<bool> {
    Ok(sign(value)? == Ordering::Greater)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclo {
        Cyclo::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn rational_fast_path() {
        assert_eq!(sign(&Cyclo::from_ratio(-3, 7)).unwrap(), Ordering::Less);
        assert_eq!(sign(&Cyclo::zero()).unwrap(), Ordering::Equal);
    }

    #[test]
    fn sqrt2_variants() {
        let sqrt2 = &z(8, 1) + &z(8, 7);
        assert_eq!(sign(&sqrt2).unwrap(), Ordering::Greater);
        let x = &sqrt2 - &Cyclo::from_ratio(3, 2); // sqrt(2) - 1.5 < 0
        assert_eq!(sign(&x).unwrap(), Ordering::Less);
        let y = &sqrt2 - &Cyclo::from_ratio(7, 5); // sqrt(2) - 1.4 > 0
        assert_eq!(sign(&y).unwrap(), Ordering::Greater);
    }

    #[test]
    fn golden_ratio_sign() {
        // 2 cos(2 pi / 5) = (sqrt(5) - 1)/2 ~ 0.618
        let c = &z(5, 1) + &z(5, 4);
        assert_eq!(sign(&c).unwrap(), Ordering::Greater);
        let d = &c - &Cyclo::from_ratio(2, 3);
        assert_eq!(sign(&d).unwrap(), Ordering::Less);
    }

    #[test]
    fn tight_difference() {
        // sqrt(2) - 141421356/100000000 is positive and very small.
        let sqrt2 = &z(8, 1) + &z(8, 7);
        let approx = Cyclo::from_rational(BigRational::new(
            BigInt::from(141421356i64),
            BigInt::from(100000000i64),
        ));
        let delta = &sqrt2 - &approx;
        assert_eq!(sign(&delta).unwrap(), Ordering::Greater);
    }

    #[test]
    fn non_real_rejected() {
        assert!(sign(&z(4, 1)).is_err());
    }
}
