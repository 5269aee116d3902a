use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{BoundParams, Direction, Factor};
use crate::error::Result;
use crate::field::{format_rational, rat};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn fr(a: i64, b: i64) -> BigRational {
    rat(a as i128, b as i128)
}

pub fn a1(n: u32, d: u32) -> BigRational {
    let (n, d) = (n as i64, d as i64);
    let c = n - d - 1;
    fr((n - 1) * (2 * (n + 1) * c + d * n * (2 * n + 1)), 2 * c * c)
}

pub fn a2(n: u32, d: u32) -> BigRational {
    let (n, d) = (n as i64, d as i64);
    fr(n * (n - 1) * (2 * n + 1), 2 * (n - d - 1))
}

pub fn b1(n: u32, r: u32) -> BigRational {
    let (n, r) = (n as i64, r as i64);
    fr(r * n * (2 * n + 1), 2 * (r - 1))
}

pub fn b2(n: u32, r: u32) -> BigRational {
    let (n, r) = (n as i64, r as i64);
    fr(
        r * (n - r) * (2 * r * n + 2 * r - 2 + 2 * n * n - n),
        2 * (2 * r - n) * (r - 1),
    )
}

pub fn b1_uniform(n: u32) -> BigRational {
    let n = n as i64;
    fr(n * (n + 1) * (2 * n + 1), 2 * (n - 1))
}

pub fn b2_uniform(n: u32) -> BigRational {
    let n = n as i64;
    fr((3 * n * n + n - 1) * (n + 1), 4)
}

fn r1(n: u32, d: u32, r: u32) -> i64 {
    r as i64 - (n as i64 - d as i64) + 1
}

pub fn d1(n: u32, r: u32) -> BigRational {
    let (n, r) = (n as i64, r as i64);
    fr(r * n * (2 * n + 1), 2)
}

pub fn d2(n: u32, r: u32) -> BigRational {
    let (n, r) = (n as i64, r as i64);
    fr((3 * r - 1) * n * (2 * n + 1), 2) + q(1)
}

fn field_h_exponent(n: u32, d: u32, r: u32) -> BigRational {
    let cv = n as i64 - d as i64;
    let ri = r as i64;
    fr((2 * ri - 1) * r1(n, d, r) + ri * (ri - 1), cv - 1)
}

fn field_ktor_exponent(n: u32, d: u32, r: u32) -> BigRational {
    let cv = n as i64 - d as i64;
    fr((3 * r as i64 - 2) * r1(n, d, r), cv - 1)
}

pub fn d3(n: u32, d: u32, r: u32) -> BigRational {
    let cv = n as i64 - d as i64;
    let ni = n as i64;
    fr((ni + 1) * r as i64, cv - 1) + fr(ni * (2 * ni + 1), 2) * field_h_exponent(n, d, r)
}

pub fn d4(n: u32, d: u32, r: u32) -> BigRational {
    let cv = n as i64 - d as i64;
    let ni = n as i64;
    fr((ni + 1) * r as i64, cv - 1) + fr(ni * (2 * ni + 1), 2) * field_ktor_exponent(n, d, r)
}

type RangeCheck = fn(&BoundParams) -> std::result::Result<(), String>;
type Threshold = fn(&BoundParams) -> Option<BigRational>;

pub struct TheoremInfo {
    pub id: &'static str,
    pub description: &'static str,
    pub direction: Direction,
    pub check_range: RangeCheck,
    pub eta_threshold: Threshold,
    sample: fn() -> BoundParams,
}

impl TheoremInfo {
    /// A parameter set inside the valid range, used by tests and the CLI.
    pub fn sample_params(&self) -> BoundParams {
        (self.sample)()
    }
}

pub fn theorem_ids() -> Vec<&'static str> {
    CATALOG.iter().map(|t| t.id).collect()
}

fn require(cond: bool, what: &str) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn no_range(_: &BoundParams) -> std::result::Result<(), String> {
    Ok(())
}

fn no_threshold(_: &BoundParams) -> Option<BigRational> {
    None
}

fn range_points(p: &BoundParams) -> std::result::Result<(), String> {
    require(p.d >= 1, "1 <= d")?;
    require(p.d + 1 < p.n, "d < N-1")
}

fn range_codim_one(p: &BoundParams) -> std::result::Result<(), String> {
    require(p.d + 1 < p.n, "codim V >= 2")?;
    require(p.r + p.d >= p.n, "codim B >= codim V")?;
    require(p.r + 1 < p.n, "codim B <= N-2")
}

fn range_curve(p: &BoundParams) -> std::result::Result<(), String> {
    require(2 * p.r > p.n, "2r > N")?;
    require(p.r < p.n, "r <= N-1")?;
    require(p.r >= 2, "r >= 2")
}

fn range_curve_uniform(p: &BoundParams) -> std::result::Result<(), String> {
    require(p.n >= 2, "N >= 2")
}

fn range_n3(p: &BoundParams) -> std::result::Result<(), String> {
    require(p.n == 3, "N = 3")
}

fn range_ml1(p: &BoundParams) -> std::result::Result<(), String> {
    require(p.n > 2, "N > 2")
}

fn range_ml2(p: &BoundParams) -> std::result::Result<(), String> {
    require(p.n == 2, "N = 2")
}

fn range_mlr(p: &BoundParams) -> std::result::Result<(), String> {
    require(p.t >= 1, "t >= 1")?;
    require(2 * p.t < p.n, "2t < N")
}

fn range_mltre(p: &BoundParams) -> std::result::Result<(), String> {
    require(p.t >= 1, "t >= 1")?;
    require(p.t < p.n, "t < N")
}

fn range_teoremone_iii(p: &BoundParams) -> std::result::Result<(), String> {
    range_mlr(p)?;
    require(p.n - p.t >= 2, "N-t >= 2")
}

fn range_teoremone_iv(p: &BoundParams) -> std::result::Result<(), String> {
    require(p.n >= 2, "N >= 2")?;
    range_mltre(p)
}

fn range_positive_n(p: &BoundParams) -> std::result::Result<(), String> {
    require(p.n >= 1, "N >= 1")
}

fn threshold_points(p: &BoundParams) -> Option<BigRational> {
    Some(fr(p.n as i64 - 1 - p.d as i64, 2 * (p.n as i64 - 1)))
}

fn threshold_codim_one(p: &BoundParams) -> Option<BigRational> {
    Some(fr(p.n as i64 - p.d as i64 - 1, 2 * p.r as i64))
}

fn curve_threshold(n: i64, r: i64) -> BigRational {
    fr(2 * r - n, r * (n - r))
}

fn threshold_curve(p: &BoundParams) -> Option<BigRational> {
    Some(curve_threshold(p.n as i64, p.r as i64))
}

fn threshold_curve_uniform(p: &BoundParams) -> Option<BigRational> {
    let n = p.n as i64;
    Some(curve_threshold(n, n / 2 + 1))
}

fn threshold_ml1(p: &BoundParams) -> Option<BigRational> {
    Some(fr(p.n as i64 - 2, 2 * (p.n as i64 - 1)))
}

fn threshold_ml2(_: &BoundParams) -> Option<BigRational> {
    Some(fr(1, 4))
}

fn threshold_mlr(p: &BoundParams) -> Option<BigRational> {
    let (n, t) = (p.n as i64, p.t as i64);
    Some(curve_threshold(n, n - t))
}

fn threshold_mltre(p: &BoundParams) -> Option<BigRational> {
    let (n, t) = (p.n as i64, p.t as i64);
    Some(curve_threshold(n + t, n))
}

fn threshold_galateau(p: &BoundParams) -> Option<BigRational> {
    let db = p.aux.get("dim_b")?;
    let dy = p.aux.get("dim_y")?;
    (db > dy).then(|| (db - dy).recip())
}

fn threshold_carrizosa(p: &BoundParams) -> Option<BigRational> {
    p.aux.get("dim_b").filter(|d| !d.is_zero()).map(|d| d.recip())
}

fn sample_default() -> BoundParams {
    BoundParams::new(3, 1)
}

fn sample_codim_one() -> BoundParams {
    BoundParams::new(5, 2).with_r(3)
}

fn sample_ml2() -> BoundParams {
    BoundParams::new(2, 1).with_t(1)
}

fn sample_mlr() -> BoundParams {
    BoundParams::new(5, 1).with_t(2)
}

fn sample_bezout() -> BoundParams {
    BoundParams::new(3, 1)
        .with_aux("deg_x", q(2))
        .with_aux("h_x", q(3))
        .with_aux("deg_y", q(4))
        .with_aux("h_y", q(5))
}

fn sample_galateau() -> BoundParams {
    BoundParams::new(3, 1)
        .with_aux("deg_b", q(9))
        .with_aux("deg_y", q(2))
        .with_aux("dim_b", q(2))
        .with_aux("dim_y", q(1))
}

fn sample_carrizosa() -> BoundParams {
    BoundParams::new(3, 1).with_aux("deg_b", q(9)).with_aux("dim_b", q(1))
}

fn sample_kappa() -> BoundParams {
    BoundParams::new(3, 1).with_aux("g0", q(1))
}

fn sample_count_subgroups() -> BoundParams {
    BoundParams::new(3, 1).with_aux("deg_b", q(4))
}

fn sample_count_torsion() -> BoundParams {
    BoundParams::new(2, 1).with_aux("m", q(5))
}

fn sample_small() -> BoundParams {
    BoundParams::new(2, 1)
}

macro_rules! entry {
    ($id:expr, $desc:expr, $dir:ident, $range:expr, $thr:expr, $sample:expr) => {
        TheoremInfo {
            id: $id,
            description: $desc,
            direction: Direction::$dir,
            check_range: $range,
            eta_threshold: $thr,
            sample: $sample,
        }
    };
}

pub static CATALOG: &[TheoremInfo] = &[
    entry!("main_hY", "height of maximal relative codimension one anomalous varieties", Upper, range_points, threshold_points, sample_default),
    entry!("main_degY", "degree of maximal relative codimension one anomalous varieties", Upper, range_points, threshold_points, sample_default),
    entry!("weakstrict_degB", "degree of the minimal subgroup, non-translate case", Upper, range_codim_one, threshold_codim_one, sample_codim_one),
    entry!("weakstrict_hY", "height of Y, non-translate case", Upper, range_codim_one, threshold_codim_one, sample_codim_one),
    entry!("weakstrict_degY", "degree of Y, non-translate case", Upper, range_codim_one, threshold_codim_one, sample_codim_one),
    entry!("tadimzero_degB", "degree of the minimal subgroup for an anomalous point", Upper, range_points, threshold_points, sample_default),
    entry!("tadimzero_hY0", "height of an anomalous point", Upper, range_points, threshold_points, sample_default),
    entry!("tadimzero_ktorY0", "relative degree of an anomalous point over k_tor", Upper, range_points, threshold_points, sample_default),
    entry!("tadimzero2_kY0", "degree of the field of definition of an anomalous point", Upper, range_points, threshold_points, sample_default),
    entry!("tadimzero2_ordzeta", "order of the torsion translate", Upper, range_points, threshold_points, sample_default),
    entry!("tadimzero2_S", "number of anomalous points", Upper, range_points, threshold_points, sample_default),
    entry!("trasla_degB", "degree of the minimal subgroup of an anomalous translate", Upper, range_codim_one, threshold_codim_one, sample_codim_one),
    entry!("trasla_h", "height of an anomalous translate", Upper, range_codim_one, threshold_codim_one, sample_codim_one),
    entry!("trasla_deg", "degree of an anomalous translate", Upper, range_codim_one, threshold_codim_one, sample_codim_one),
    entry!("trasla2_field", "degree of the field of definition of an anomalous translate", Upper, range_codim_one, threshold_codim_one, sample_codim_one),
    entry!("trasla2_ord", "order of the torsion part of an anomalous translate", Upper, range_codim_one, threshold_codim_one, sample_codim_one),
    entry!("trasla2_S", "number of anomalous translates", Upper, range_codim_one, threshold_codim_one, sample_codim_one),
    entry!("curva_degH", "degree of the subgroup for points on a curve, codim r", Upper, range_curve, threshold_curve, sample_default),
    entry!("curva_hY0", "height of points of S_r(C)", Upper, range_curve, threshold_curve, sample_default),
    entry!("curva_kY0", "field degree of points of S_r(C)", Upper, range_curve, threshold_curve, sample_default),
    entry!("curva_S", "number of points of S_r(C)", Upper, range_curve, threshold_curve, sample_default),
    entry!("curva_S_uniform", "number of points of S_r(C), exponents uniform in r", Upper, range_curve_uniform, threshold_curve_uniform, sample_default),
    entry!("altezzacurva_h", "height on a curve, uniform in r", Upper, range_curve_uniform, threshold_curve_uniform, sample_default),
    entry!("altezzacurva_deg", "field degree on a curve, uniform in r", Upper, range_curve_uniform, threshold_curve_uniform, sample_default),
    entry!("s2c_h", "height of points of S_2(C) in E^3", Upper, range_n3, threshold_points, sample_default),
    entry!("s2c_deg", "field degree of points of S_2(C) in E^3", Upper, range_n3, threshold_points, sample_default),
    entry!("ml1", "height of C ∩ Γ, rank one, N > 2", Upper, range_ml1, threshold_ml1, sample_default),
    entry!("ml2", "height of C ∩ Γ, rank one, N = 2", Upper, range_ml2, threshold_ml2, sample_ml2),
    entry!("mlr", "height of C ∩ Γ, rank t < N/2", Upper, range_mlr, threshold_mlr, sample_mlr),
    entry!("mltre", "height of C ∩ Γ, transverse, any rank", Upper, range_mltre, threshold_mltre, sample_default),
    entry!("teoremone_i", "cardinality of C ∩ Γ, rank one, N > 2", Upper, range_ml1, threshold_ml1, sample_default),
    entry!("teoremone_ii", "cardinality of C ∩ Γ, rank one, N = 2", Upper, range_ml2, threshold_ml2, sample_ml2),
    entry!("teoremone_iii", "cardinality of C ∩ Γ, rank t < N/2", Upper, range_teoremone_iii, threshold_mlr, sample_mlr),
    entry!("teoremone_iv", "cardinality of C ∩ Γ, transverse, any rank", Upper, range_teoremone_iv, threshold_mltre, sample_default),
    entry!("zhang_sandwich", "essential minimum between h/((1+dim)deg) and h/deg", Interval, no_range, no_threshold, sample_default),
    entry!("bezout", "arithmetic Bézout inequality", Upper, no_range, no_threshold, sample_bezout),
    entry!("galateau_lower", "essential minimum lower bound in a translate", Lower, no_range, threshold_galateau, sample_galateau),
    entry!("carrizosa_lower", "height lower bound for non-torsion points", Lower, no_range, threshold_carrizosa, sample_carrizosa),
    entry!("kappa", "kappa(g0)", Exact, no_range, no_threshold, sample_kappa),
    entry!("serre_order", "order of a torsion point from its field degree", Upper, range_positive_n, no_threshold, sample_default),
    entry!("count_subgroups", "number of subgroups of bounded degree", Upper, range_positive_n, no_threshold, sample_count_subgroups),
    entry!("count_torsion", "number of torsion points of order at most M", Upper, range_positive_n, no_threshold, sample_count_torsion),
    entry!("mw_field", "degree of the field of definition of E^N torsion data", Exact, range_positive_n, no_threshold, sample_small),
    entry!("bombieri_zannier", "degree of a maximal translate", Upper, no_range, no_threshold, sample_default),
];

pub(super) enum Special {
    Plain,
    /// Interval whose lower end is the value divided by this.
    Interval(BigRational),
    /// A value that is not a monomial in the factors.
    Fixed(BigRational),
}

pub(super) struct Formula {
    pub factors: Vec<Factor>,
    pub notes: Vec<String>,
    pub uses_deg_b: bool,
    pub special: Special,
}

impl Formula {
    fn plain(factors: Vec<Factor>, notes: Vec<String>) -> Self {
        Formula {
            factors,
            notes,
            uses_deg_b: false,
            special: Special::Plain,
        }
    }

    fn with_deg_b(factors: Vec<Factor>, notes: Vec<String>) -> Self {
        Formula {
            uses_deg_b: true,
            ..Formula::plain(factors, notes)
        }
    }
}

pub(super) fn formula(info: &TheoremInfo, p: &BoundParams) -> Result<Formula> {
    let id = info.id;
    let n = p.n as i64;
    let d = p.d as i64;
    let r = p.r as i64;
    let t = p.t as i64;
    let cv = n - d;
    let hd = &p.h_v + &p.deg_v;
    let hk = &hd * &p.ktor_v;
    let hg_line = &p.h_v + (&p.h_g + q(1)) * &p.deg_v;
    let f = Factor::new;
    let mut notes = Vec::new();

    let factors = match id {
        "main_hY" | "tadimzero_hY0" => vec![
            f("h+deg", hd, fr(n - 1, n - 1 - d), 1),
            f("ktor", p.ktor_v.clone(), fr(d, n - 1 - d), 1),
        ],
        "main_degY" => vec![
            f("h+deg", hd, fr(n - 2, n - 1 - d), 1),
            f("ktor", p.ktor_v.clone(), fr(d - 1, n - 1 - d), 1),
        ],
        "weakstrict_degB" | "weakstrict_hY" => vec![f("h+deg", hd, fr(r, cv - 1), 1)],
        "weakstrict_degY" => vec![
            f("degV", p.deg_v.clone(), q(1), 0),
            f("h+deg", hd, fr(r, cv - 1) - q(1), 1),
        ],
        "tadimzero_degB" => vec![f("(h+deg)*ktor", hk, fr(n - 1, n - 1 - d), 1)],
        "tadimzero_ktorY0" => vec![
            f("degV", p.deg_v.clone(), q(1), 0),
            f("ktor", p.ktor_v.clone(), fr(n - 1, n - 1 - d), 1),
            f("h+deg", hd, fr(d, n - 1 - d), 1),
        ],
        "tadimzero2_kY0" | "tadimzero2_ordzeta" => {
            let c = n - 1 - d;
            let mut fs = vec![
                f("(h+deg)*ktor", hk, fr(d * (n - 1), c * c), 1),
                f("degV*k", &p.deg_v * &p.k_v, fr(n - 1, c), 1),
            ];
            if id == "tadimzero2_ordzeta" {
                scale_exponents(&mut fs, &fr(n, 2));
                notes.push("exponents of kY0 scaled by N/2; eta absorbed into one eta per factor".into());
            }
            fs
        }
        "tadimzero2_S" => vec![
            f("(h+deg)*ktor", hk, a1(p.n, p.d), 1),
            f("degV", p.deg_v.clone(), a2(p.n, p.d) + q(1), 1),
            f("k", p.k_v.clone(), a2(p.n, p.d), 1),
        ],
        "trasla_degB" => vec![f("(h+deg)*ktor", hk, fr(r, cv - 1), 1)],
        "trasla_h" => vec![
            f("h+deg", hd, fr(r, cv - 1), 1),
            f("ktor", p.ktor_v.clone(), fr(r1(p.n, p.d, p.r), cv - 1), 1),
        ],
        "trasla_deg" => vec![
            f("degV", p.deg_v.clone(), q(1), 0),
            f("(h+deg)*ktor", hk, fr(r1(p.n, p.d, p.r), cv - 1), 1),
        ],
        "trasla2_field" | "trasla2_ord" => {
            let mut fs = vec![
                f("k", p.k_v.clone(), q(r), 1),
                f("degV", p.deg_v.clone(), q(3 * r - 1), 0),
                f("h+deg", hd, field_h_exponent(p.n, p.d, p.r), 1),
                f("ktor", p.ktor_v.clone(), field_ktor_exponent(p.n, p.d, p.r), 0),
            ];
            if id == "trasla2_ord" {
                scale_exponents(&mut fs, &fr(n, 2));
                notes.push("exponents of the field bound scaled by N/2; eta absorbed into one eta per factor".into());
            }
            fs
        }
        "trasla2_S" => vec![
            f("k", p.k_v.clone(), d1(p.n, p.r), 0),
            f("degV", p.deg_v.clone(), d2(p.n, p.r), 0),
            f("h+deg", hd, d3(p.n, p.d, p.r), 0),
            f("ktor", p.ktor_v.clone(), d4(p.n, p.d, p.r), 0),
        ],
        "curva_degH" => vec![
            f("(h+deg)*ktor", hk, fr(r * (n - r) * (n + 2 * r - 2), 2 * (r - 1) * (2 * r - n)), 1),
            f("kC*degC", &p.k_v * &p.deg_v, fr(n * r, 2 * (r - 1)), 1),
        ],
        "curva_hY0" => vec![
            f("h+deg", hd, fr(r, 2 * r - n), 1),
            f("ktor", p.ktor_v.clone(), fr(n - r, 2 * r - n), 1),
        ],
        "curva_kY0" => vec![
            f("kC*degC", &p.k_v * &p.deg_v, fr(r, r - 1), 1),
            f("(h+deg)*ktor", hk, fr(r * (n - r), (2 * r - n) * (r - 1)), 1),
        ],
        "curva_S" => vec![
            f("kC", p.k_v.clone(), b1(p.n, p.r), 0),
            f("degC", p.deg_v.clone(), b1(p.n, p.r) + q(1), 1),
            f("(h+deg)*ktor", hk, b2(p.n, p.r), 1),
        ],
        "curva_S_uniform" => vec![
            f("kC", p.k_v.clone(), b1_uniform(p.n), 0),
            f("degC", p.deg_v.clone(), b1_uniform(p.n) + q(1), 1),
            f("(h+deg)*ktor", hk, b2_uniform(p.n), 1),
        ],
        "altezzacurva_h" => vec![
            f("h+deg", hd, fr(n + 1, 2), 1),
            f("ktor", p.ktor_v.clone(), fr(n - 1, 2), 1),
        ],
        "altezzacurva_deg" => vec![
            f("kC*degC", &p.k_v * &p.deg_v, fr(n + 1, n - 1), 1),
            f("(h+deg)*ktor", hk, fr(n + 1, 2), 1),
        ],
        "s2c_h" => vec![f("h+deg", hd, q(2), 1), f("ktor", p.ktor_v.clone(), q(1), 1)],
        "s2c_deg" => vec![f("degC*(h+deg)*ktor*kC", &p.deg_v * &hk * &p.k_v, q(2), 1)],
        "ml1" => vec![
            f("h+deg", hd, fr(n - 1, n - 2), 1),
            f("ktor", p.ktor_v.clone(), fr(1, n - 2), 1),
        ],
        "ml2" => vec![
            f("ktor", p.ktor_v.clone(), q(1), 1),
            f("h+(hg+1)deg", hg_line, q(2), 1),
        ],
        "mlr" => vec![
            f("h+deg", hd, fr(n - t, n - 2 * t), 1),
            f("ktor", p.ktor_v.clone(), fr(t, n - 2 * t), 1),
        ],
        "mltre" => vec![
            f("ktor", p.ktor_v.clone(), fr(t, n - t), 1),
            f("h+(hg+1)deg", hg_line, fr(n, n - t), 1),
        ],
        "teoremone_i" => vec![
            f("(h+deg)*ktor", hk, fr((n - 1) * (4 * n * n - n - 4), 2 * (n - 2) * (n - 2)), 1),
            f("degC", p.deg_v.clone(), fr(2 * n * n * n - n * n + n - 4, 2 * (n - 2)), 1),
            f("kC", p.k_v.clone(), fr(n * (n - 1) * (2 * n + 1), 2 * (n - 2)), 1),
        ],
        "teoremone_ii" => vec![
            f("ktor*(h+(hg+1)deg)", &p.ktor_v * &hg_line, q(29), 1),
            f("degC", p.deg_v.clone(), q(22), 1),
            f("kC", p.k_v.clone(), q(21), 1),
        ],
        "teoremone_iii" => {
            let s = fr(n * (2 * n + 1) * (n - t), 2 * (n - t - 1));
            vec![
                f(
                    "(h+deg)*ktor",
                    hk,
                    fr(t * (n - t) * (4 * n * n - 2 * n * t + n - 2 * t - 2), 2 * (n - 2 * t) * (n - t - 1)),
                    1,
                ),
                f("degC", p.deg_v.clone(), &s + q(1), 1),
                f("kC", p.k_v.clone(), s, 1),
            ]
        }
        "teoremone_iv" => {
            let s = fr((n + t) * n * (2 * n + 2 * t + 1), 2 * (n - 1));
            vec![
                f(
                    "ktor*(h+(hg+1)deg)",
                    &p.ktor_v * &hg_line,
                    fr(n * t * (4 * n * n + 2 * t * t + 6 * n * t + n - t - 2), 2 * (n - t) * (n - 1)),
                    1,
                ),
                f("degC", p.deg_v.clone(), &s + q(1), 1),
                f("kC", p.k_v.clone(), s, 1),
            ]
        }
        "zhang_sandwich" => {
            return Ok(Formula {
                special: Special::Interval(q(1 + d)),
                ..Formula::plain(
                    vec![f("h", p.h_v.clone(), q(1), 0), f("deg", p.deg_v.clone(), q(-1), 0)],
                    vec!["essential minimum of V with dim V = d".into()],
                )
            });
        }
        "bezout" => return bezout(p),
        "galateau_lower" => {
            let db = p.aux_value(id, "dim_b")?;
            let dy = p.aux_value(id, "dim_y")?;
            if db <= dy {
                return Err(crate::Error::Range {
                    theorem: id.into(),
                    violated: "dim B > dim Y".into(),
                });
            }
            let e = (db - dy).recip();
            let fs = vec![
                f("degB", p.aux_value(id, "deg_b")?, e.clone(), -1),
                f("degY", p.aux_value(id, "deg_y")?, -e, -1),
            ];
            return Ok(Formula::with_deg_b(fs, notes));
        }
        "carrizosa_lower" => {
            let db = p.aux_value(id, "dim_b")?;
            if db.is_zero() {
                return Err(crate::Error::Range {
                    theorem: id.into(),
                    violated: "dim B >= 1".into(),
                });
            }
            let e = db.recip();
            let fs = vec![
                f("degB", p.aux_value(id, "deg_b")?, e.clone(), -1),
                f("ktor", p.ktor_v.clone(), -e, -1),
            ];
            return Ok(Formula::with_deg_b(fs, notes));
        }
        "kappa" => {
            let g0 = aux_count(p, id, "g0")?;
            let fact: BigInt = (1..=g0 + 1).map(BigInt::from).product();
            vec![
                f("2", q(2), q(2 * g0 as i64 + 1), 0),
                f("g0", q(g0 as i64), q(4 * g0 as i64), 0),
                f("(g0+1)!", BigRational::from_integer(fact), q(2 * g0 as i64), 0),
            ]
        }
        "serre_order" => vec![f("k", p.k_v.clone(), fr(n, 2), 1)],
        "count_subgroups" => {
            let fs = vec![f("degB", p.aux_value(id, "deg_b")?, q(n), 1)];
            return Ok(Formula::with_deg_b(fs, notes));
        }
        "count_torsion" => {
            let m = aux_count(p, id, "m")?;
            let exact: BigInt = (1..=m).map(|i| num_traits::pow(BigInt::from(i), 2 * p.n as usize)).sum();
            notes.push(format!("sum of i^(2N) for i <= M is {exact}"));
            vec![f("M", q(m as i64), q(2 * n + 1), 0)]
        }
        "mw_field" => vec![f("3", q(3), q(16 * n * n * n * n), 0)],
        "bombieri_zannier" => vec![f("degV", p.deg_v.clone(), q(1i64 << p.d.min(62)), 0)],
        other => unreachable!("catalog entry {other} has no formula"),
    };
    Ok(Formula::plain(factors, notes))
}

fn scale_exponents(fs: &mut [Factor], s: &BigRational) {
    for f in fs {
        f.exponent = &f.exponent * s;
        if !f.eta_coef.is_zero() {
            f.eta_coef = BigRational::one();
        }
    }
}

fn aux_count(p: &BoundParams, id: &str, key: &str) -> Result<u64> {
    let v = p.aux_value(id, key)?;
    if !v.is_integer() || v < BigRational::one() {
        return Err(crate::Error::domain(format!("{key} must be a positive integer")));
    }
    v.to_integer()
        .to_u64()
        .ok_or_else(|| crate::Error::domain(format!("{key} is too large")))
}

fn bezout(p: &BoundParams) -> Result<Formula> {
    let id = "bezout";
    let dx = p.aux_value(id, "deg_x")?;
    let hx = p.aux_value(id, "h_x")?;
    let dy = p.aux_value(id, "deg_y")?;
    let hy = p.aux_value(id, "h_y")?;
    let c = p.constant(id);
    let value = &dx * &hy + &dy * &hx + &c * &dx * &dy;
    let note = format!(
        "sum of h(Z) over components <= degX*hY + degY*hX + c*degX*degY with c = {}",
        format_rational(&c)
    );
    Ok(Formula {
        special: Special::Fixed(value),
        ..Formula::plain(Vec::new(), vec![note])
    })
}
