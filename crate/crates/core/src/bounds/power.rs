//! Rational powers of non-negative rationals as certified enclosures.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::field::format_rational;

/// Bits of binary precision used for irrational powers.
pub const PRECISION_BITS: u32 = 64;

/// `lower ≤ x ≤ upper` with both endpoints exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lower: BigRational,
    pub upper: BigRational,
}

impl Enclosure {
    pub fn exact(x: BigRational) -> Self {
        Enclosure {
            lower: x.clone(),
            upper: x,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// Product of two enclosures of non-negative numbers.
    pub fn mul(&self, o: &Enclosure) -> Enclosure {
        Enclosure {
            lower: &self.lower * &o.lower,
            upper: &self.upper * &o.upper,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Enclosure {
        Enclosure {
            lower: &self.lower * c,
            upper: &self.upper * c,
        }
    }

    pub fn invert(&self) -> Enclosure {
        Enclosure {
            lower: self.upper.recip(),
            upper: self.lower.recip(),
        }
    }
}

#[derive(Serialize)]
struct EnclosureJson {
    lower: String,
    upper: String,
}

impl Serialize for Enclosure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        EnclosureJson {
            lower: format_rational(&self.lower),
            upper: format_rational(&self.upper),
        }
        .serialize(s)
    }
}

fn pow_rat(x: &BigRational, e: u64) -> BigRational {
    BigRational::new(
        num_traits::pow(x.numer().clone(), e as usize),
        num_traits::pow(x.denom().clone(), e as usize),
    )
}

/// Size cap, in bits, for evaluating a power exactly.
const EXACT_BITS: u64 = 1 << 14;

/// Working precision of the rounded fallback.
const ROUNDED_BITS: u64 = 192;

/// Enclose `base^exp` for `base ≥ 0`.
///
/// Integral exponents are evaluated exactly. Otherwise `exp = p/q` and the
/// `q`-th root of `base^p` is bracketed by integer roots at
/// [`PRECISION_BITS`] bits, which also yields an exact answer whenever the
/// root is rational at that scale. Powers too large for exact arithmetic
/// are bracketed with directed rounding instead.
pub fn rational_power(base: &BigRational, exp: &BigRational) -> Enclosure {
    assert!(!base.is_negative(), "negative base");
    if exp.is_zero() {
        return Enclosure::exact(BigRational::one());
    }
    if base.is_zero() {
        assert!(exp.is_positive(), "zero to a negative power");
        return Enclosure::exact(BigRational::zero());
    }
    let p = exp.numer().abs().to_u64().expect("exponent numerator fits in u64");
    let q = exp.denom().to_u64().expect("exponent denominator fits in u64");
    let size = base.numer().bits() + base.denom().bits();
    let exact_cost = size.saturating_mul(p).saturating_add(q.saturating_mul(PRECISION_BITS as u64 + size));
    let enc = if exact_cost <= EXACT_BITS {
        exact_root(base, p, q as u32)
    } else {
        rounded_power(base, p, q)
    };
    if exp.is_negative() {
        enc.invert()
    } else {
        enc
    }
}

fn exact_root(base: &BigRational, p: u64, q: u32) -> Enclosure {
    let powered = pow_rat(base, p);
    if q == 1 {
        return Enclosure::exact(powered);
    }
    let (u, v) = (powered.numer().clone(), powered.denom().clone());
    // (u/v)^{1/q} = (u·v^{q−1})^{1/q} / v
    let scale = BigInt::one() << (PRECISION_BITS as usize);
    let radicand = u * num_traits::pow(v.clone(), q as usize - 1) * num_traits::pow(scale.clone(), q as usize);
    let root = radicand.nth_root(q);
    let den = v * scale;
    let lower = BigRational::new(root.clone(), den.clone());
    let upper = if num_traits::pow(root.clone(), q as usize) == radicand {
        lower.clone()
    } else {
        BigRational::new(root + 1, den)
    };
    Enclosure { lower, upper }
}

/// `m · 2^e` with `m > 0`.
#[derive(Clone)]
struct Dyadic {
    m: BigInt,
    e: i64,
}

impl Dyadic {
    fn round(x: &BigRational, up: bool) -> Dyadic {
        let shift = ROUNDED_BITS as i64 - (x.numer().bits() as i64 - x.denom().bits() as i64);
        let scaled = if shift >= 0 {
            BigRational::new(x.numer() << shift as usize, x.denom().clone())
        } else {
            BigRational::new(x.numer().clone(), x.denom() << (-shift) as usize)
        };
        let m = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
        Dyadic { m, e: -shift }.normalize(up)
    }

    fn normalize(mut self, up: bool) -> Dyadic {
        let excess = self.m.bits() as i64 - ROUNDED_BITS as i64;
        if excess > 0 {
            let kept = &self.m >> excess as usize;
            let exact = (&kept << excess as usize) == self.m;
            self.m = if up && !exact { kept + 1 } else { kept };
            self.e += excess;
        }
        self
    }

    fn mul(&self, o: &Dyadic, up: bool) -> Dyadic {
        Dyadic {
            m: &self.m * &o.m,
            e: self.e + o.e,
        }
        .normalize(up)
    }

    fn pow(&self, mut p: u64, up: bool) -> Dyadic {
        let mut acc = Dyadic { m: BigInt::one(), e: 0 };
        let mut sq = self.clone();
        while p > 0 {
            if p & 1 == 1 {
                acc = acc.mul(&sq, up);
            }
            p >>= 1;
            if p > 0 {
                sq = sq.mul(&sq, up);
            }
        }
        acc
    }

    fn root(&self, q: u64, up: bool) -> Dyadic {
        if q == 1 {
            return self.clone();
        }
        if q > 64 {
            return self.root_by_guess(q, up);
        }
        // m·2^e = (m·2^(rem + q·PREC))·2^(q·(k − PREC)) with e = q·k + rem
        let k = self.e.div_euclid(q as i64);
        let rem = self.e.rem_euclid(q as i64);
        let extra = rem as u64 + q * ROUNDED_BITS;
        let radicand = &self.m << extra as usize;
        let mut r = radicand.nth_root(q as u32);
        if up && num_traits::pow(r.clone(), q as usize) != radicand {
            r += 1;
        }
        Dyadic {
            m: r,
            e: k - ROUNDED_BITS as i64,
        }
        .normalize(up)
    }

    /// Float guess, then widened until its `q`-th power certifies the side.
    fn root_by_guess(&self, q: u64, up: bool) -> Dyadic {
        let top = self.m.bits().saturating_sub(60);
        let lead = (&self.m >> top as usize).to_f64().expect("finite");
        let log2 = (lead.log2() + top as f64 + self.e as f64) / q as f64;
        let whole = log2.floor();
        let mant = BigInt::from((2f64.powf(log2 - whole) * (1u64 << 52) as f64) as u64);
        let target = self.to_rational();
        let mut delta = (&mant >> 40usize) + 1;
        loop {
            let m = if up { &mant + &delta } else { &mant - &delta };
            let cand = Dyadic {
                m,
                e: whole as i64 - 52,
            };
            let ok = if up {
                cand.pow(q, false).to_rational() >= target
            } else {
                cand.m.is_positive() && cand.pow(q, true).to_rational() <= target
            };
            if ok {
                return cand;
            }
            delta *= 2;
        }
    }

    fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from_integer(&self.m << self.e as usize)
        } else {
            BigRational::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }
}

fn rounded_power(base: &BigRational, p: u64, q: u64) -> Enclosure {
    let lo = Dyadic::round(base, false).pow(p, false).root(q, false);
    let hi = Dyadic::round(base, true).pow(p, true).root(q, true);
    Enclosure {
        lower: lo.to_rational(),
        upper: hi.to_rational(),
    }
}

/// `log10 |x|` for a nonzero big integer, without overflowing `f64`.
pub fn log10_int(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().expect("finite").log10();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift as usize).to_f64().expect("finite");
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

pub fn log10_rational(x: &BigRational) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    log10_int(x.numer()) - log10_int(x.denom())
}

pub fn to_f64_saturating(log10: f64) -> f64 {
    if log10 > 308.0 {
        f64::INFINITY
    } else {
        10f64.powf(log10)
    }
}

/// `x^(1/k) ≤ y^(1/l)` decided exactly for non-negative rationals.
pub fn root_le(x: &BigRational, k: u64, y: &BigRational, l: u64) -> bool {
    pow_rat(x, l) <= pow_rat(y, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn exact_powers() {
        assert_eq!(rational_power(&rat(2, 3), &rat(3, 1)), Enclosure::exact(rat(8, 27)));
        assert_eq!(rational_power(&rat(4, 9), &rat(1, 2)), Enclosure::exact(rat(2, 3)));
        assert_eq!(rational_power(&rat(16, 1), &rat(-3, 4)), Enclosure::exact(rat(1, 8)));
        assert_eq!(rational_power(&rat(0, 1), &rat(5, 2)), Enclosure::exact(rat(0, 1)));
    }

    #[test]
    fn irrational_powers_are_bracketed() {
        let e = rational_power(&rat(2, 1), &rat(1, 2));
        assert!(!e.is_exact());
        assert!(&e.lower * &e.lower <= rat(2, 1));
        assert!(&e.upper * &e.upper >= rat(2, 1));
        let width = &e.upper - &e.lower;
        assert!(width < rat(1, 1 << 60));
    }

    #[test]
    fn rounded_path_brackets_the_exact_path() {
        for (b, e) in [(rat(3, 2), rat(5001, 7)), (rat(7, 3), rat(2000, 1)), (rat(2, 1), rat(-3001, 99)), (rat(5, 1), rat(1001, 1000))] {
            let r = rounded_power(&b, e.numer().abs().to_u64().unwrap(), e.denom().to_u64().unwrap());
            let x = exact_root(&b, e.numer().abs().to_u64().unwrap(), e.denom().to_u32().unwrap());
            assert!(r.lower <= x.lower && x.upper <= r.upper);
            let rel = (&r.upper - &r.lower) / &r.lower;
            assert!(rel < rat(1, 1 << 30));
        }
    }

    #[test]
    fn root_comparison() {
        assert!(root_le(&rat(4, 1), 1, &rat(16, 1), 2));
        assert!(root_le(&rat(16, 1), 2, &rat(4, 1), 1));
        assert!(!root_le(&rat(5, 1), 1, &rat(16, 1), 2));
    }

    #[test]
    fn logarithms_of_huge_numbers() {
        let x = num_traits::pow(BigInt::from(3), 20_000);
        let l = log10_int(&x);
        assert!((l - 20_000.0 * 3f64.log10()).abs() < 1e-6);
    }
}
