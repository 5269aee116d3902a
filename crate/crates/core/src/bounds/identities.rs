//! Cross-checks between catalog entries over parameter sweeps.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::{a1, a2, b1, b1_uniform, b2, b2_uniform, bound_exponents, evaluate_bound, BoundParams};
use crate::field::{format_rational, rat};

/// Largest ambient dimension covered by the sweeps.
pub const SWEEP_MAX_N: u32 = 12;

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub params: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub all_hold: bool,
}

impl IdentityReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

fn small_eta() -> BigRational {
    rat(1, 1000)
}

fn exps(id: &str, p: BoundParams) -> Vec<BigRational> {
    let p = p.with_eta(small_eta());
    bound_exponents(id, &p)
        .unwrap_or_else(|e| panic!("{id} outside its range in a sweep: {e}"))
        .into_iter()
        .map(|f| f.exponent)
        .collect()
}

fn show(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

struct Collector(Vec<IdentityCheck>);

impl Collector {
    fn eq(&mut self, name: &str, params: String, lhs: Vec<BigRational>, rhs: Vec<BigRational>) {
        let holds = lhs == rhs;
        let detail = format!("{} vs {}", show(&lhs), show(&rhs));
        self.0.push(IdentityCheck {
            name: name.into(),
            params,
            holds,
            detail,
        });
    }

    fn truth(&mut self, name: &str, params: String, holds: bool, detail: String) {
        self.0.push(IdentityCheck {
            name: name.into(),
            params,
            holds,
            detail,
        });
    }
}

/// Run every identity over `N ≤ SWEEP_MAX_N`.
pub fn exponent_identities() -> IdentityReport {
    let mut c = Collector(Vec::new());
    let big = SWEEP_MAX_N;

    for n in 3..=big {
        c.eq(
            "teoremone_i = tadimzero2_S at d=1",
            format!("N={n}"),
            exps("teoremone_i", BoundParams::new(n, 1)),
            exps("tadimzero2_S", BoundParams::new(n, 1)),
        );
        c.eq(
            "ml1 = tadimzero_hY0 at d=1",
            format!("N={n}"),
            exps("ml1", BoundParams::new(n, 1)),
            exps("tadimzero_hY0", BoundParams::new(n, 1)),
        );
        for d in 1..n - 1 {
            c.eq(
                "main_hY = tadimzero_hY0",
                format!("N={n}, d={d}"),
                exps("main_hY", BoundParams::new(n, d)),
                exps("tadimzero_hY0", BoundParams::new(n, d)),
            );
            let (x, y) = (a1(n, d), a2(n, d));
            let b1v = BigRational::from_integer(((n + 1) as i64).pow(4).into());
            let b2v = BigRational::from_integer(((n as i64).pow(3)).into());
            c.truth(
                "A1 <= (N+1)^4 and A2 <= N^3",
                format!("N={n}, d={d}"),
                x <= b1v && y <= b2v,
                format!("A1={}, A2={}", format_rational(&x), format_rational(&y)),
            );
        }
    }

    c.eq(
        "teoremone_ii = tadimzero2_S at N=3, d=1",
        "N=3, d=1".into(),
        exps("teoremone_ii", BoundParams::new(2, 1)),
        exps("tadimzero2_S", BoundParams::new(3, 1)),
    );
    c.eq(
        "s2c_h = tadimzero_hY0 at N=3, d=1",
        "N=3, d=1".into(),
        exps("s2c_h", BoundParams::new(3, 1)),
        exps("tadimzero_hY0", BoundParams::new(3, 1)),
    );
    let s2c = exps("s2c_deg", BoundParams::new(3, 1));
    c.eq(
        "s2c_deg = tadimzero2_kY0 at N=3, d=1",
        "N=3, d=1".into(),
        vec![s2c[0].clone(), s2c[0].clone()],
        exps("tadimzero2_kY0", BoundParams::new(3, 1)),
    );

    for n in 3..=big {
        for t in 1..n {
            if 2 * t < n {
                let r = n - t;
                c.eq(
                    "teoremone_iii = curva_S at r=N-t",
                    format!("N={n}, t={t}"),
                    exps("teoremone_iii", BoundParams::new(n, 1).with_t(t)),
                    exps("curva_S", BoundParams::new(n, 1).with_r(r))
                        .into_iter()
                        .rev()
                        .collect(),
                );
                c.eq(
                    "mlr = curva_hY0 at r=N-t",
                    format!("N={n}, t={t}"),
                    exps("mlr", BoundParams::new(n, 1).with_t(t)),
                    exps("curva_hY0", BoundParams::new(n, 1).with_r(r)),
                );
            }
        }
    }

    for n in 2..=big {
        for t in 1..n {
            c.eq(
                "teoremone_iv = curva_S at (N+t, r=N)",
                format!("N={n}, t={t}"),
                exps("teoremone_iv", BoundParams::new(n, 1).with_t(t)),
                exps("curva_S", BoundParams::new(n + t, 1).with_r(n))
                    .into_iter()
                    .rev()
                    .collect(),
            );
            let mut lhs = exps("mltre", BoundParams::new(n, 1).with_t(t));
            lhs.reverse();
            c.eq(
                "mltre = curva_hY0 at (N+t, r=N)",
                format!("N={n}, t={t}"),
                lhs,
                exps("curva_hY0", BoundParams::new(n + t, 1).with_r(n)),
            );
        }
    }

    for n in 3..=big {
        let half = rat((n + 1) as i128, 2);
        let best = (n / 2 + 1..n)
            .map(|r| rat(r as i128, (2 * r - n) as i128))
            .max()
            .expect("nonempty range for N >= 3");
        let odd = n % 2 == 1;
        c.truth(
            "max_r r/(2r-N) <= (N+1)/2, equality iff N odd",
            format!("N={n}"),
            best <= half && ((best == half) == odd),
            format!("max {} vs {}", format_rational(&best), format_rational(&half)),
        );
        if odd {
            let r = n.div_ceil(2);
            if r >= 2 {
                c.eq(
                    "uniform B1, B2 = r-dependent B1, B2 at r=(N+1)/2",
                    format!("N={n}"),
                    vec![b1_uniform(n), b2_uniform(n)],
                    vec![b1(n, r), b2(n, r)],
                );
                c.eq(
                    "altezzacurva_h = curva_hY0 at r=(N+1)/2",
                    format!("N={n}"),
                    exps("altezzacurva_h", BoundParams::new(n, 1)),
                    exps("curva_hY0", BoundParams::new(n, 1).with_r(r)),
                );
                c.eq(
                    "altezzacurva_deg = curva_kY0 at r=(N+1)/2",
                    format!("N={n}"),
                    exps("altezzacurva_deg", BoundParams::new(n, 1)),
                    exps("curva_kY0", BoundParams::new(n, 1).with_r(r)),
                );
            }
        }
    }

    let p = BoundParams::new(3, 1)
        .with_aux("deg_b", rat(7, 1))
        .with_aux("dim_b", BigRational::one())
        .with_eta(small_eta());
    let res = evaluate_bound("carrizosa_lower", &p).expect("in range");
    let eta = small_eta();
    let got: Vec<BigRational> = res.factors.iter().map(|f| f.total_exponent(&eta)).collect();
    c.eq(
        "carrizosa_lower at dim B = 1 is (1-η, -(1+η))",
        "eta=1/1000".into(),
        got,
        vec![BigRational::one() - &eta, -(BigRational::one() + &eta)],
    );

    let checks = c.0;
    let all_hold = checks.iter().all(|c| c.holds);
    IdentityReport { checks, all_hold }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold() {
        let report = exponent_identities();
        let bad: Vec<_> = report.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert!(report.checks.len() > 100);
    }
}
