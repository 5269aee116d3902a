//! Explicit effective bounds as exact exponent records.
//!
//! Every bound has the shape `c · Π base_i^(e_i + η·k_i)` where `c` is an
//! implied constant (configurable, default 1), `e_i` an exact rational and
//! `k_i` the coefficient of the free parameter `η`. [`evaluate_bound`]
//! returns the exponents together with a certified enclosure of the value.

mod catalog;
use catalog::Special;
pub mod identities;
pub mod power;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{format_rational, rat};
use crate::subgroups::{SubgroupMatrix, SurrogateKind};

pub use catalog::{a1, a2, b1, b2, b1_uniform, b2_uniform, d1, d2, d3, d4, theorem_ids, TheoremInfo, CATALOG};
pub use identities::{exponent_identities, IdentityCheck, IdentityReport};
pub use power::{rational_power, Enclosure};

/// Inputs shared by all catalog entries.
///
/// `d` is `dim V`, `r` is `codim B`, `t` the rank of the coordinate module.
/// Curve bounds read `deg_v` as `deg C` and `k_v` as `[k(C):k]`.
/// Ingredient bounds take further named inputs from `aux`.
#[derive(Debug, Clone)]
pub struct BoundParams {
    pub n: u32,
    pub d: u32,
    pub r: u32,
    pub t: u32,
    pub h_v: BigRational,
    pub deg_v: BigRational,
    pub ktor_v: BigRational,
    pub k_v: BigRational,
    pub h_g: BigRational,
    pub eta: BigRational,
    pub constants: BTreeMap<String, BigRational>,
    pub aux: BTreeMap<String, BigRational>,
    pub surrogate: Option<SurrogateKind>,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams {
            n: 3,
            d: 1,
            r: 2,
            t: 1,
            h_v: BigRational::one(),
            deg_v: BigRational::one(),
            ktor_v: BigRational::one(),
            k_v: BigRational::one(),
            h_g: BigRational::zero(),
            eta: rat(1, 10),
            constants: BTreeMap::new(),
            aux: BTreeMap::new(),
            surrogate: None,
        }
    }
}

impl BoundParams {
    pub fn new(n: u32, d: u32) -> Self {
        BoundParams {
            n,
            d,
            ..Default::default()
        }
    }

    pub fn with_r(mut self, r: u32) -> Self {
        self.r = r;
        self
    }

    pub fn with_t(mut self, t: u32) -> Self {
        self.t = t;
        self
    }

    pub fn with_eta(mut self, eta: BigRational) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_aux(mut self, key: &str, value: BigRational) -> Self {
        self.aux.insert(key.to_string(), value);
        self
    }

    pub fn with_constant(mut self, id: &str, value: BigRational) -> Self {
        self.constants.insert(id.to_string(), value);
        self
    }

    /// Use a degree surrogate of `b` as the `deg_b` input.
    pub fn with_subgroup_degree(mut self, b: &SubgroupMatrix, kind: SurrogateKind) -> Self {
        let deg = b.degree_surrogate().get(kind);
        self.aux.insert("deg_b".into(), BigRational::from_integer(deg.into()));
        self.surrogate = Some(kind);
        self
    }

    pub fn constant(&self, id: &str) -> BigRational {
        self.constants.get(id).cloned().unwrap_or_else(BigRational::one)
    }

    fn aux_value(&self, id: &str, key: &str) -> Result<BigRational> {
        self.aux
            .get(key)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("{id} needs the input {key}")))
    }

    fn validate(&self) -> Result<()> {
        if !self.eta.is_positive() {
            return Err(Error::domain("eta must be positive"));
        }
        if self.h_v.is_negative() || self.h_g.is_negative() {
            return Err(Error::domain("heights must be non-negative"));
        }
        if !self.deg_v.is_positive() {
            return Err(Error::domain("deg V must be positive"));
        }
        if self.ktor_v < BigRational::one() || self.k_v < BigRational::one() {
            return Err(Error::domain("field degrees must be at least 1"));
        }
        for (k, c) in &self.constants {
            if !c.is_positive() {
                return Err(Error::domain(format!("constant {k} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Upper,
    Lower,
    Interval,
    Exact,
}

/// `base^(exponent + η·eta_coef)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub name: String,
    pub base: BigRational,
    pub exponent: BigRational,
    pub eta_coef: BigRational,
}

impl Factor {
    pub fn new(name: &str, base: BigRational, exponent: BigRational, eta_coef: i64) -> Self {
        Factor {
            name: name.to_string(),
            base,
            exponent,
            eta_coef: BigRational::from_integer(eta_coef.into()),
        }
    }

    pub fn total_exponent(&self, eta: &BigRational) -> BigRational {
        &self.exponent + eta * &self.eta_coef
    }

    /// `2+η`, `29/2`, `1-η` style rendering.
    pub fn exponent_text(&self) -> String {
        let e = format_rational(&self.exponent);
        let k = &self.eta_coef;
        if k.is_zero() {
            e
        } else if k.is_one() {
            format!("{e}+η")
        } else if *k == -BigRational::one() {
            format!("{e}-η")
        } else if k.is_negative() {
            format!("{e}-{}η", format_rational(&-k.clone()))
        } else {
            format!("{e}+{}η", format_rational(k))
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundResult {
    pub theorem_id: String,
    pub direction: Direction,
    pub constant: BigRational,
    pub eta: BigRational,
    pub factors: Vec<Factor>,
    /// Certified enclosure of the value (for intervals: of the upper end).
    pub value: Enclosure,
    /// Lower end of an interval result.
    pub interval_lower: Option<BigRational>,
    pub log10: f64,
    pub surrogate: Option<SurrogateKind>,
    pub notes: Vec<String>,
}

impl BoundResult {
    pub fn exponents(&self) -> Vec<BigRational> {
        self.factors.iter().map(|f| f.exponent.clone()).collect()
    }

    pub fn factor(&self, name: &str) -> Option<&Factor> {
        self.factors.iter().find(|f| f.name == name)
    }

    /// The exact value when no irrational power occurs.
    pub fn exact_value(&self) -> Option<&BigRational> {
        self.value.is_exact().then_some(&self.value.lower)
    }

    pub fn approx(&self) -> f64 {
        power::to_f64_saturating(self.log10)
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|f| {
                json!({
                    "name": f.name,
                    "base": format_rational(&f.base),
                    "exponent": format_rational(&f.exponent),
                    "eta_coef": format_rational(&f.eta_coef),
                    "exponent_text": f.exponent_text(),
                    "total_exponent": format_rational(&f.total_exponent(&self.eta)),
                })
            })
            .collect();
        json!({
            "theorem_id": self.theorem_id,
            "direction": self.direction,
            "constant": format_rational(&self.constant),
            "eta": format_rational(&self.eta),
            "exponents": factors,
            "value": self.exact_value().map(format_rational),
            "enclosure": self.value,
            "interval_lower": self.interval_lower.as_ref().map(format_rational),
            "log10": self.log10,
            "surrogate": self.surrogate,
            "notes": self.notes,
        })
    }
}

fn realize(info: &TheoremInfo, p: &BoundParams, formula: catalog::Formula) -> BoundResult {
    let constant = p.constant(info.id);
    let mut value = Enclosure::exact(constant.clone());
    let mut log10 = power::log10_rational(&constant);
    for f in &formula.factors {
        let e = f.total_exponent(&p.eta);
        value = value.mul(&rational_power(&f.base, &e));
        log10 += e.to_f64().unwrap_or(f64::NAN) * power::log10_rational(&f.base);
    }
    let mut interval_lower = None;
    match formula.special {
        Special::Plain => {}
        Special::Interval(div) => interval_lower = Some(&value.lower / div),
        Special::Fixed(v) => {
            log10 = power::log10_rational(&v);
            value = Enclosure::exact(v);
        }
    }
    BoundResult {
        theorem_id: info.id.to_string(),
        direction: info.direction,
        constant,
        eta: p.eta.clone(),
        factors: formula.factors,
        value,
        interval_lower,
        log10,
        surrogate: if formula.uses_deg_b { p.surrogate } else { None },
        notes: formula.notes,
    }
}

fn checked_entry(theorem_id: &str, params: &BoundParams) -> Result<&'static TheoremInfo> {
    params.validate()?;
    let info = CATALOG
        .iter()
        .find(|t| t.id == theorem_id)
        .ok_or_else(|| Error::domain(format!("unknown theorem id {theorem_id}")))?;
    (info.check_range)(params).map_err(|violated| Error::Range {
        theorem: theorem_id.to_string(),
        violated,
    })?;
    if let Some(threshold) = (info.eta_threshold)(params) {
        if params.eta >= threshold {
            return Err(Error::Range {
                theorem: theorem_id.to_string(),
                violated: format!("eta < {}", format_rational(&threshold)),
            });
        }
    }
    Ok(info)
}

/// Evaluate a catalog entry. See [`CATALOG`] for ids and ranges.
pub fn evaluate_bound(theorem_id: &str, params: &BoundParams) -> Result<BoundResult> {
    let info = checked_entry(theorem_id, params)?;
    let formula = catalog::formula(info, params)?;
    Ok(realize(info, params, formula))
}

/// The exponent record of a catalog entry, without evaluating its value.
pub fn bound_exponents(theorem_id: &str, params: &BoundParams) -> Result<Vec<Factor>> {
    let info = checked_entry(theorem_id, params)?;
    Ok(catalog::formula(info, params)?.factors)
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi needs n >= 1");
    let mut m = n;
    let mut phi = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// `2^(2g+1) · g^(4g) · ((g+1)!)^(2g)`.
pub fn kappa(g0: u32) -> BigInt {
    let fact: BigInt = (1..=g0 as u64 + 1).map(BigInt::from).product();
    num_traits::pow(BigInt::from(2), 2 * g0 as usize + 1)
        * num_traits::pow(BigInt::from(g0), 4 * g0 as usize)
        * num_traits::pow(fact, 2 * g0 as usize)
}

/// Minimum of `(deg_V / deg_H)^(1/codim)` over the candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaMin {
    pub base: BigRational,
    pub exponent: BigRational,
    pub index: usize,
    /// Other candidates attaining the same value.
    pub ties: Vec<usize>,
    pub value: Enclosure,
}

pub fn omega_min(deg_h: &BigRational, candidates: &[(BigRational, u32)]) -> Result<OmegaMin> {
    if candidates.is_empty() {
        return Err(Error::domain("omega_min needs at least one candidate"));
    }
    if !deg_h.is_positive() {
        return Err(Error::domain("deg H must be positive"));
    }
    for (deg, codim) in candidates {
        if !deg.is_positive() || *codim == 0 {
            return Err(Error::domain("candidates need positive degree and codimension"));
        }
    }
    let bases: Vec<BigRational> = candidates.iter().map(|(d, _)| d / deg_h).collect();
    let mut best = 0;
    for i in 1..candidates.len() {
        if !power::root_le(&bases[best], candidates[best].1 as u64, &bases[i], candidates[i].1 as u64) {
            best = i;
        }
    }
    let (bb, bc) = (&bases[best], candidates[best].1 as u64);
    let ties = (0..candidates.len())
        .filter(|&i| i != best)
        .filter(|&i| {
            let ci = candidates[i].1 as u64;
            power::root_le(&bases[i], ci, bb, bc) && power::root_le(bb, bc, &bases[i], ci)
        })
        .collect();
    let exponent = rat(1, bc as i128);
    Ok(OmegaMin {
        value: rational_power(bb, &exponent),
        base: bb.clone(),
        exponent,
        index: best,
        ties,
    })
}
