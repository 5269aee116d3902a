//! Arithmetic in the maximal order `O = Z[ω]` of an imaginary quadratic field.
//!
//! Only the five norm-Euclidean discriminants −3, −4, −7, −8, −11 are
//! supported, so every pair of elements admits a division with remainder
//! whose norm is strictly smaller than the divisor's.
//!
//! An element is stored as `a + bω` with
//! `ω = √D / 2` when `D ≡ 0 (mod 4)` and `ω = (1 + √D) / 2` otherwise.
//! Multiplication uses `ω² = t·ω − n` where `t = tr(ω)` and `n = N(ω)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fundamental discriminant of a norm-Euclidean imaginary quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Discriminant(i64);

impl Discriminant {
    pub const SUPPORTED: [i64; 5] = [-3, -4, -7, -8, -11];

    pub fn new(value: i64) -> Result<Self> {
        if Self::SUPPORTED.contains(&value) {
            Ok(Discriminant(value))
        } else {
            Err(Error::domain(format!(
                "discriminant {value} is not one of the norm-Euclidean maximal discriminants {:?}",
                Self::SUPPORTED
            )))
        }
    }

    pub fn all() -> impl Iterator<Item = Discriminant> {
        Self::SUPPORTED.iter().map(|&d| Discriminant(d))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// Trace of ω.
    pub fn omega_trace(self) -> i128 {
        if self.0.rem_euclid(4) == 0 {
            0
        } else {
            1
        }
    }

    /// Norm of ω.
    pub fn omega_norm(self) -> i128 {
        let d = self.0 as i128;
        if d.rem_euclid(4) == 0 {
            -d / 4
        } else {
            (1 - d) / 4
        }
    }

    /// Number of units of the order.
    pub fn unit_count(self) -> usize {
        match self.0 {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }

    pub fn units(self) -> Vec<OrderElement> {
        let e = |a, b| OrderElement::new(a, b, self);
        match self.0 {
            // ω = (1 + √−3)/2 is a primitive sixth root of unity
            -3 => vec![e(1, 0), e(0, 1), e(-1, 1), e(-1, 0), e(0, -1), e(1, -1)],
            -4 => vec![e(1, 0), e(0, 1), e(-1, 0), e(0, -1)],
            _ => vec![e(1, 0), e(-1, 0)],
        }
    }

    pub fn zero(self) -> OrderElement {
        OrderElement::new(0, 0, self)
    }

    pub fn one(self) -> OrderElement {
        OrderElement::new(1, 0, self)
    }

    pub fn omega(self) -> OrderElement {
        OrderElement::new(0, 1, self)
    }

    pub fn int(self, a: i128) -> OrderElement {
        OrderElement::new(a, 0, self)
    }
}

impl TryFrom<i64> for Discriminant {
    type Error = Error;
    fn try_from(value: i64) -> Result<Self> {
        Discriminant::new(value)
    }
}

impl From<Discriminant> for i64 {
    fn from(d: Discriminant) -> i64 {
        d.0
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The element `a + bω` of the maximal order of discriminant `disc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderElement {
    pub a: i128,
    pub b: i128,
    pub disc: Discriminant,
}

impl OrderElement {
    pub const fn new(a: i128, b: i128, disc: Discriminant) -> Self {
        OrderElement { a, b, disc }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_one(&self) -> bool {
        self.a == 1 && self.b == 0
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    pub fn conj(&self) -> Self {
        let t = self.disc.omega_trace();
        OrderElement::new(self.a + self.b * t, -self.b, self.disc)
    }

    pub fn norm(&self) -> i128 {
        let t = self.disc.omega_trace();
        let n = self.disc.omega_norm();
        self.a * self.a + t * self.a * self.b + n * self.b * self.b
    }

    pub fn trace(&self) -> i128 {
        2 * self.a + self.disc.omega_trace() * self.b
    }

    pub fn scale(&self, k: i128) -> Self {
        OrderElement::new(self.a * k, self.b * k, self.disc)
    }

    fn same_disc(&self, other: &Self) -> Result<()> {
        if self.disc == other.disc {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "mismatched discriminants {} and {}",
                self.disc, other.disc
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_disc(other)?;
        Ok(*self + *other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_disc(other)?;
        Ok(*self - *other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_disc(other)?;
        Ok(*self * *other)
    }

    /// Division with remainder: `self = q·divisor + r` with `N(r) < N(divisor)`.
    ///
    /// The quotient is the lattice point nearest to `self / divisor`; among
    /// equidistant candidates the lexicographically smallest `(a, b)` wins.
    pub fn euclid_div(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_disc(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = divisor.norm();
        let num = *self * divisor.conj();
        let (fa, fb) = (num.a.div_euclid(m), num.b.div_euclid(m));
        let mut best: Option<(i128, Self, Self)> = None;
        for da in -1..=1 {
            for db in -1..=1 {
                let q = OrderElement::new(fa + da, fb + db, self.disc);
                let r = *self - q * *divisor;
                let nr = r.norm();
                let better = match &best {
                    None => true,
                    Some((bn, bq, _)) => nr < *bn || (nr == *bn && q.lex_cmp(bq) == Ordering::Less),
                };
                if better {
                    best = Some((nr, q, r));
                }
            }
        }
        let (nr, q, r) = best.expect("candidate set is non-empty");
        debug_assert!(nr < m, "order is not norm-Euclidean for this quotient");
        Ok((q, r))
    }

    /// Exact quotient when `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.euclid_div(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        (self.a, self.b).cmp(&(other.a, other.b))
    }

    /// The canonical representative of the unit orbit of `self`: the
    /// lexicographically largest `(a, b)` among associates with `a > 0`,
    /// or `a = 0` and `b > 0`.
    pub fn canonical_associate(&self) -> Self {
        self.canonical_with_unit().0
    }

    /// Canonical associate together with the unit `u` such that
    /// `canonical = u·self`.
    pub fn canonical_with_unit(&self) -> (Self, Self) {
        if self.is_zero() {
            return (*self, self.disc.one());
        }
        self.disc
            .units()
            .into_iter()
            .map(|u| (u * *self, u))
            .filter(|(x, _)| x.a > 0 || (x.a == 0 && x.b > 0))
            .max_by(|(x, _), (y, _)| x.lex_cmp(y))
            .expect("some associate is in the positive half-plane")
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_associate() == *self
    }

    /// Reduce both coordinates modulo a positive integer, giving the
    /// representative of the class in `O/nO` with `0 ≤ a, b < n`.
    pub fn reduce_mod(&self, n: i128) -> Self {
        OrderElement::new(self.a.rem_euclid(n), self.b.rem_euclid(n), self.disc)
    }

    /// Parse with an explicit discriminant.
    pub fn parse(s: &str, disc: Discriminant) -> Result<Self> {
        let (a, b) = parse_components(s)?;
        Ok(OrderElement::new(a, b, disc))
    }
}

impl fmt::Display for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, 0) => write!(f, "0"),
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}*w"),
            (a, b) if b < 0 => write!(f, "{a}-{}*w", -b),
            (a, b) => write!(f, "{a}+{b}*w"),
        }
    }
}

/// Parse the `a+b*w` text encoding into its two integer components.
///
/// Accepted forms include `3`, `-2`, `w`, `-w`, `2+w`, `2-3*w`, `3*w`
/// and `1+0*w`; whitespace is ignored.
pub fn parse_components(s: &str) -> Result<(i128, i128)> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::parse(format!("{s:?}"), "empty order element"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in compact.char_indices() {
        if (c == '+' || c == '-') && i > 0 && !compact[..i].ends_with('*') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);

    let (mut a, mut b) = (0i128, 0i128);
    let (mut seen_a, mut seen_b) = (false, false);
    for term in terms {
        let bad = || Error::parse(format!("{s:?}"), format!("malformed term {term:?}"));
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        if let Some(coef) = body.strip_suffix('w') {
            if seen_b {
                return Err(bad());
            }
            seen_b = true;
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            b = if coef.is_empty() {
                sign
            } else {
                sign * coef.parse::<i128>().map_err(|_| bad())?
            };
        } else {
            if seen_a || body.is_empty() {
                return Err(bad());
            }
            seen_a = true;
            a = sign * body.parse::<i128>().map_err(|_| bad())?;
        }
    }
    Ok((a, b))
}

impl FromStr for Discriminant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v = s
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::parse(format!("{s:?}"), "discriminant must be an integer"))?;
        Discriminant::new(v)
    }
}

impl Add for OrderElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.disc, rhs.disc, "mismatched discriminants");
        OrderElement::new(self.a + rhs.a, self.b + rhs.b, self.disc)
    }
}

impl Sub for OrderElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.disc, rhs.disc, "mismatched discriminants");
        OrderElement::new(self.a - rhs.a, self.b - rhs.b, self.disc)
    }
}

impl Mul for OrderElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.disc, rhs.disc, "mismatched discriminants");
        let t = self.disc.omega_trace();
        let n = self.disc.omega_norm();
        let bd = self.b * rhs.b;
        OrderElement::new(
            self.a * rhs.a - n * bd,
            self.a * rhs.b + self.b * rhs.a + t * bd,
            self.disc,
        )
    }
}

impl Neg for OrderElement {
    type Output = Self;
    fn neg(self) -> Self {
        OrderElement::new(-self.a, -self.b, self.disc)
    }
}

impl AddAssign for OrderElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for OrderElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

/// Greatest common divisor, normalised to its canonical associate.
pub fn gcd(x: &OrderElement, y: &OrderElement) -> Result<OrderElement> {
    Ok(xgcd(x, y)?.0)
}

/// Extended gcd: returns `(g, s, t)` with `s·x + t·y = g` and `g` canonical.
pub fn xgcd(x: &OrderElement, y: &OrderElement) -> Result<(OrderElement, OrderElement, OrderElement)> {
    x.same_disc(y)?;
    if x.is_zero() && y.is_zero() {
        return Err(Error::domain("gcd(0, 0) is undefined"));
    }
    let d = x.disc;
    let (mut r0, mut r1) = (*x, *y);
    let (mut s0, mut s1) = (d.one(), d.zero());
    let (mut t0, mut t1) = (d.zero(), d.one());
    while !r1.is_zero() {
        let (q, r) = r0.euclid_div(&r1)?;
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    let (g, u) = r0.canonical_with_unit();
    Ok((g, u * s0, u * t0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::new(v).unwrap()
    }

    #[test]
    fn rejects_unsupported_discriminants() {
        for v in [-1, -19, -5, 0, 5, -163] {
            assert!(Discriminant::new(v).is_err(), "{v}");
        }
    }

    #[test]
    fn norms_from_examples() {
        assert_eq!(OrderElement::new(2, 1, d(-4)).norm(), 5);
        assert_eq!(OrderElement::new(1, 1, d(-3)).norm(), 3);
        for disc in Discriminant::all() {
            assert_eq!(disc.zero().norm(), 0);
            let x = OrderElement::new(3, -7, disc);
            assert_eq!(x.conj().conj(), x);
            assert_eq!((x * x.conj()).b, 0);
            assert_eq!((x * x.conj()).a, x.norm());
            assert_eq!(x + x.conj(), disc.int(x.trace()));
        }
    }

    #[test]
    fn omega_satisfies_its_minimal_polynomial() {
        for disc in Discriminant::all() {
            let w = disc.omega();
            let t = disc.omega_trace();
            let n = disc.omega_norm();
            assert_eq!(w * w, w.scale(t) - disc.int(n));
            // discriminant of x² − t x + n
            assert_eq!(t * t - 4 * n, disc.value() as i128);
        }
    }

    #[test]
    fn unit_groups() {
        for disc in Discriminant::all() {
            let units = disc.units();
            assert_eq!(units.len(), disc.unit_count());
            assert!(units.iter().all(|u| u.norm() == 1));
        }
    }

    #[test]
    fn mismatched_discriminants_are_rejected() {
        let x = OrderElement::new(1, 1, d(-3));
        let y = OrderElement::new(1, 1, d(-4));
        assert!(x.checked_mul(&y).is_err());
        assert!(x.euclid_div(&y).is_err());
        assert!(gcd(&x, &y).is_err());
    }

    #[test]
    fn euclid_div_examples() {
        let disc = d(-4);
        let five = disc.int(5);
        let y = OrderElement::new(2, 1, disc);
        let (q, r) = five.euclid_div(&y).unwrap();
        assert_eq!(q * y + r, five);
        assert!(r.norm() < 5);
        // 5 = (2 + i)(2 − i)
        assert!(r.is_zero());
        assert_eq!(q, OrderElement::new(2, -1, disc));

        let x = OrderElement::new(7, -3, disc);
        assert_eq!(x.euclid_div(&disc.one()).unwrap(), (x, disc.zero()));
        assert_eq!(disc.zero().euclid_div(&y).unwrap(), (disc.zero(), disc.zero()));
        assert_eq!(x.euclid_div(&disc.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        let disc = d(-4);
        let x = OrderElement::new(-3, 0, disc);
        assert_eq!(gcd(&x, &disc.zero()).unwrap(), disc.int(3));
        let p = OrderElement::new(1, 1, disc);
        let q = OrderElement::new(1, -1, disc);
        let g = gcd(&p, &q).unwrap();
        assert_eq!(g, p.canonical_associate());
        assert_eq!(g.norm(), 2);
        assert_eq!(gcd(&disc.int(2), &disc.int(3)).unwrap(), disc.one());
        assert!(gcd(&disc.zero(), &disc.zero()).is_err());
    }

    #[test]
    fn xgcd_bezout_identity() {
        for disc in Discriminant::all() {
            let x = OrderElement::new(14, 3, disc);
            let y = OrderElement::new(-5, 9, disc);
            let (g, s, t) = xgcd(&x, &y).unwrap();
            assert_eq!(s * x + t * y, g);
            assert!(g.divides(&x) && g.divides(&y));
        }
    }

    #[test]
    fn canonical_associate_examples() {
        let disc = d(-4);
        let x = OrderElement::new(1, 1, disc);
        for u in disc.units() {
            assert_eq!((u * x).canonical_associate(), OrderElement::new(1, 1, disc));
        }
        assert_eq!(disc.omega().canonical_associate(), disc.one());
        assert_eq!(disc.int(-4).canonical_associate(), disc.int(4));
    }

    #[test]
    fn text_round_trip() {
        let disc = d(-7);
        for (s, a, b) in [
            ("3", 3, 0),
            ("-2", -2, 0),
            ("w", 0, 1),
            ("-w", 0, -1),
            ("2+w", 2, 1),
            ("2-3*w", 2, -3),
            ("3*w", 0, 3),
            ("1+0*w", 1, 0),
            (" -1 + 2*w ", -1, 2),
        ] {
            assert_eq!(OrderElement::parse(s, disc).unwrap(), OrderElement::new(a, b, disc), "{s}");
        }
        for x in [OrderElement::new(2, -3, disc), OrderElement::new(0, -1, disc), disc.zero()] {
            assert_eq!(OrderElement::parse(&x.to_string(), disc).unwrap(), x);
        }
        for bad in ["", "2+", "w+w", "x", "1+2", "2*"] {
            assert!(OrderElement::parse(bad, disc).is_err(), "{bad}");
        }
    }
}
