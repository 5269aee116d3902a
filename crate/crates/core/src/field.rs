//! The CM field `L = Q(ω)` with exact rational coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::orders::{Discriminant, OrderElement};

/// `q + w·ω` with rational `q`, `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QElem {
    pub q: BigRational,
    pub w: BigRational,
    pub disc: Discriminant,
}

pub fn rat(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(format!("{s:?}"), "expected an integer or a fraction p/q");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl QElem {
    pub fn new(q: BigRational, w: BigRational, disc: Discriminant) -> Self {
        QElem { q, w, disc }
    }

    pub fn zero(disc: Discriminant) -> Self {
        QElem::new(BigRational::zero(), BigRational::zero(), disc)
    }

    pub fn one(disc: Discriminant) -> Self {
        QElem::new(BigRational::one(), BigRational::zero(), disc)
    }

    pub fn from_rational(q: BigRational, disc: Discriminant) -> Self {
        QElem::new(q, BigRational::zero(), disc)
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero() && self.w.is_zero()
    }

    /// Whether the element is fixed by complex conjugation.
    pub fn is_rational(&self) -> bool {
        self.w.is_zero()
    }

    pub fn conj(&self) -> Self {
        let t = BigRational::from_integer(self.disc.omega_trace().into());
        QElem::new(&self.q + &self.w * t, -self.w.clone(), self.disc)
    }

    /// `x · conj(x)`, a non-negative rational.
    pub fn norm(&self) -> BigRational {
        let t = BigRational::from_integer(self.disc.omega_trace().into());
        let n = BigRational::from_integer(self.disc.omega_norm().into());
        &self.q * &self.q + t * &self.q * &self.w + n * &self.w * &self.w
    }

    /// Real part under the complex embedding: `q + w·tr(ω)/2`.
    pub fn real_part(&self) -> BigRational {
        let t = BigRational::from_integer(self.disc.omega_trace().into());
        &self.q + &self.w * t / BigRational::from_integer(2.into())
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(QElem::new(c.q / &n, c.w / n, self.disc))
    }

    pub fn is_positive_rational(&self) -> bool {
        self.is_rational() && self.q.is_positive()
    }
}

impl From<OrderElement> for QElem {
    fn from(x: OrderElement) -> Self {
        QElem::new(
            BigRational::from_integer(x.a.into()),
            BigRational::from_integer(x.b.into()),
            x.disc,
        )
    }
}

impl Add for &QElem {
    type Output = QElem;
    fn add(self, o: &QElem) -> QElem {
        assert_eq!(self.disc, o.disc, "mismatched discriminants");
        QElem::new(&self.q + &o.q, &self.w + &o.w, self.disc)
    }
}

impl Sub for &QElem {
    type Output = QElem;
    fn sub(self, o: &QElem) -> QElem {
        assert_eq!(self.disc, o.disc, "mismatched discriminants");
        QElem::new(&self.q - &o.q, &self.w - &o.w, self.disc)
    }
}

impl Mul for &QElem {
    type Output = QElem;
    fn mul(self, o: &QElem) -> QElem {
        assert_eq!(self.disc, o.disc, "mismatched discriminants");
        let t = BigRational::from_integer(self.disc.omega_trace().into());
        let n = BigRational::from_integer(self.disc.omega_norm().into());
        let ww = &self.w * &o.w;
        QElem::new(
            &self.q * &o.q - &n * &ww,
            &self.q * &o.w + &self.w * &o.q + t * ww,
            self.disc,
        )
    }
}

impl Neg for &QElem {
    type Output = QElem;
    fn neg(self) -> QElem {
        QElem::new(-self.q.clone(), -self.w.clone(), self.disc)
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.q.is_zero(), self.w.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.q)),
            (true, false) => write!(f, "({})*w", format_rational(&self.w)),
            _ => write!(f, "{}+({})*w", format_rational(&self.q), format_rational(&self.w)),
        }
    }
}

/// JSON form `{"q": "1/2", "w": "0"}`; integers are also accepted.
#[derive(Serialize, Deserialize)]
pub struct QElemJson {
    pub q: RationalJson,
    #[serde(default)]
    pub w: RationalJson,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RationalJson(pub BigRational);

impl Serialize for RationalJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(RationalJson(BigRational::from_integer(n.into()))),
            Raw::Text(s) => parse_rational(&s).map(RationalJson).map_err(serde::de::Error::custom),
        }
    }
}

impl QElemJson {
    pub fn from_elem(x: &QElem) -> Self {
        QElemJson {
            q: RationalJson(x.q.clone()),
            w: RationalJson(x.w.clone()),
        }
    }

    pub fn into_elem(self, disc: Discriminant) -> QElem {
        QElem::new(self.q.0, self.w.0, disc)
    }
}

/// `#[serde(with = "serde_rational")]` for `BigRational` fields.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalJson(x.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        RationalJson::deserialize(d).map(|r| r.0)
    }
}

/// Determinant of a square matrix over `L`.
pub fn determinant(m: &[Vec<QElem>], disc: Discriminant) -> Result<QElem> {
    let n = m.len();
    let mut a: Vec<Vec<QElem>> = m.to_vec();
    let mut det = QElem::one(disc);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(QElem::zero(disc));
        };
        if p != k {
            a.swap(p, k);
            det = -&det;
        }
        let inv = a[k][k].inv()?;
        det = &det * &a[k][k];
        for i in k + 1..n {
            let f = &a[i][k] * &inv;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = &a[i][j] - &(&f * &a[k][j]);
                a[i][j] = v;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        for disc in Discriminant::all() {
            let x = QElem::new(rat(1, 2), rat(-3, 4), disc);
            let y = QElem::new(rat(2, 3), rat(5, 1), disc);
            let prod = &x * &y;
            assert_eq!(prod.norm(), x.norm() * y.norm());
            assert_eq!(&x * &x.inv().unwrap(), QElem::one(disc));
            assert_eq!(x.conj().conj(), x);
            assert!((&x * &x.conj()).is_rational());
        }
    }

    #[test]
    fn embeds_the_order() {
        let disc = Discriminant::new(-3).unwrap();
        let a = OrderElement::new(2, -1, disc);
        let b = OrderElement::new(1, 3, disc);
        assert_eq!(QElem::from(a * b), &QElem::from(a) * &QElem::from(b));
        assert_eq!(QElem::from(a).norm(), BigRational::from_integer(a.norm().into()));
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat(-4, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
    }

    #[test]
    fn determinant_of_hermitian_is_rational() {
        let disc = Discriminant::new(-7).unwrap();
        let off = QElem::new(rat(1, 3), rat(1, 2), disc);
        let m = vec![
            vec![QElem::from_rational(rat(2, 1), disc), off.clone()],
            vec![off.conj(), QElem::from_rational(rat(3, 1), disc)],
        ];
        let d = determinant(&m, disc).unwrap();
        assert!(d.is_rational());
        assert_eq!(d.q, rat(6, 1) - off.norm());
    }
}
