//! Text and JSON encodings.
//!
//! Matrix files start with a header `disc N r` followed by `r` lines of `N`
//! entries `a+b*w`. Torsion points are written `level: n; coords: [..]`.
//! JSON files use the same field names.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::enumeration::{SubgroupListing, TorsionCount};
use crate::error::{Error, Result};
use crate::field::{format_rational, QElemJson};
use crate::matrix::OMatrix;
use crate::mordell_weil::{ModulePoint, ModuleSpec, PointInEN};
use crate::orders::{Discriminant, OrderElement};
use crate::reductions::{AnomalyReport, GammaPoint, Lift, Reduction, TorsionVariety};
use crate::siegel::{Completion, SiegelSolution};
use crate::subgroups::{Complement, SubgroupMatrix, TorsionCoset, TorsionPoint};

fn parse_elem_at(s: &str, disc: Discriminant, location: impl Fn() -> String) -> Result<OrderElement> {
    OrderElement::parse(s, disc).map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse {
            location: location(),
            message,
        },
        other => other,
    })
}

/// Parse the `disc N r` matrix text format.
pub fn parse_matrix(text: &str) -> Result<OMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| Error::parse("line 1", "missing header `disc N r`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let loc = |msg: &str| Error::parse(format!("line {hline}"), msg);
    if fields.len() != 3 {
        return Err(loc("header must be `disc N r`"));
    }
    let disc_v: i64 = fields[0].parse().map_err(|_| loc("discriminant is not an integer"))?;
    let disc = Discriminant::new(disc_v).map_err(|e| loc(&e.to_string()))?;
    let n: usize = fields[1].parse().map_err(|_| loc("N is not a non-negative integer"))?;
    let r: usize = fields[2].parse().map_err(|_| loc("r is not a non-negative integer"))?;
    let mut rows = Vec::with_capacity(r);
    for (lineno, line) in lines {
        if rows.len() == r {
            return Err(Error::parse(format!("line {lineno}"), format!("more than {r} rows")));
        }
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != n {
            return Err(Error::parse(
                format!("line {lineno}"),
                format!("expected {n} entries, found {}", entries.len()),
            ));
        }
        let row = entries
            .iter()
            .enumerate()
            .map(|(j, e)| parse_elem_at(e, disc, || format!("line {lineno}, entry {}", j + 1)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != r {
        return Err(Error::parse("end of file", format!("expected {r} rows, found {}", rows.len())));
    }
    OMatrix::from_rows_with_cols(disc, n, rows)
}

pub fn format_matrix(m: &OMatrix) -> String {
    let mut out = format!("{} {} {}\n", m.disc(), m.cols(), m.rows());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parse `level: n; coords: [a+b*w, ...]`.
pub fn parse_torsion_point(text: &str, disc: Discriminant) -> Result<TorsionPoint> {
    let t = text.trim();
    let bad = |m: &str| Error::parse("torsion point", m);
    let (lpart, cpart) = t.split_once(';').ok_or_else(|| bad("expected `level: n; coords: [..]`"))?;
    let level: i128 = lpart
        .trim()
        .strip_prefix("level:")
        .ok_or_else(|| bad("missing `level:`"))?
        .trim()
        .parse()
        .map_err(|_| bad("level is not an integer"))?;
    let inner = cpart
        .trim()
        .strip_prefix("coords:")
        .ok_or_else(|| bad("missing `coords:`"))?
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad("coords must be bracketed"))?;
    let coords = inner
        .split(',')
        .enumerate()
        .map(|(j, e)| parse_elem_at(e, disc, || format!("torsion point, coordinate {}", j + 1)))
        .collect::<Result<Vec<_>>>()?;
    TorsionPoint::new(level, coords)
}

fn elem_strings(v: &[OrderElement]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn matrix_json(m: &OMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| elem_strings(m.row(i))).collect();
    json!({"disc": m.disc().value(), "N": m.cols(), "r": m.rows(), "rows": rows})
}

pub fn torsion_json(p: &TorsionPoint) -> Value {
    json!({"level": p.level() as i64, "coords": elem_strings(p.coords()), "order": p.order() as i64})
}

pub fn coset_json(c: &TorsionCoset) -> Value {
    json!({"dim": c.dim(), "subgroup": matrix_json(c.subgroup.matrix()), "zeta": torsion_json(&c.zeta)})
}

#[derive(Deserialize)]
struct MatrixFile {
    disc: i64,
    #[serde(rename = "N")]
    n: usize,
    rows: Vec<Vec<String>>,
}

/// A matrix from either the text format or its JSON form.
pub fn read_matrix(text: &str) -> Result<OMatrix> {
    if !text.trim_start().starts_with('{') {
        return parse_matrix(text);
    }
    let f: MatrixFile = serde_json::from_str(text).map_err(json_error)?;
    let disc = Discriminant::new(f.disc)?;
    let rows = f
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != f.n {
                return Err(Error::parse(format!("rows[{i}]"), format!("expected {} entries", f.n)));
            }
            row.iter()
                .enumerate()
                .map(|(j, e)| parse_elem_at(e, disc, || format!("rows[{i}][{j}]")))
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    OMatrix::from_rows_with_cols(disc, f.n, rows)
}

pub fn read_subgroup(text: &str) -> Result<SubgroupMatrix> {
    SubgroupMatrix::new(read_matrix(text)?)
}

pub fn json_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

#[derive(Deserialize)]
struct PointCoordJson {
    free: Vec<String>,
    #[serde(default)]
    torsion: Option<String>,
}

#[derive(Deserialize)]
struct ModuleFile {
    disc: i64,
    #[serde(default)]
    rank: Option<usize>,
    gram: Vec<Vec<QElemJson>>,
    #[serde(default = "one")]
    torsion_order: i128,
    #[serde(default)]
    points: Vec<Vec<PointCoordJson>>,
}

fn one() -> i128 {
    1
}

/// A module description with any points listed alongside it.
#[derive(Debug, Clone)]
pub struct ModuleFileData {
    pub spec: ModuleSpec,
    pub points: Vec<PointInEN>,
}

fn point_from_json(spec: &ModuleSpec, coords: &[PointCoordJson], at: &str) -> Result<PointInEN> {
    let disc = spec.disc();
    let pts = coords
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let free = c
                .free
                .iter()
                .enumerate()
                .map(|(j, e)| parse_elem_at(e, disc, || format!("{at}[{i}].free[{j}]")))
                .collect::<Result<Vec<_>>>()?;
            let torsion = match &c.torsion {
                Some(t) => parse_elem_at(t, disc, || format!("{at}[{i}].torsion"))?,
                None => disc.zero(),
            };
            spec.point(free, torsion).map_err(|e| Error::parse(format!("{at}[{i}]"), e.to_string()))
        })
        .collect::<Result<Vec<ModulePoint>>>()?;
    Ok(PointInEN::new(pts))
}

pub fn read_module(text: &str) -> Result<ModuleFileData> {
    let f: ModuleFile = serde_json::from_str(text).map_err(json_error)?;
    let disc = Discriminant::new(f.disc)?;
    if let Some(r) = f.rank {
        if r != f.gram.len() {
            return Err(Error::parse("rank", format!("rank {r} but gram has {} rows", f.gram.len())));
        }
    }
    let gram = f
        .gram
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.into_elem(disc)).collect())
        .collect();
    let spec = ModuleSpec::new(disc, gram, f.torsion_order)?;
    let points = f
        .points
        .iter()
        .enumerate()
        .map(|(k, p)| point_from_json(&spec, p, &format!("points[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModuleFileData { spec, points })
}

pub fn module_json(spec: &ModuleSpec, points: &[PointInEN]) -> Value {
    let gram: Vec<Vec<Value>> = spec
        .gram()
        .iter()
        .map(|row| row.iter().map(|x| serde_json::to_value(QElemJson::from_elem(x)).expect("plain data")).collect())
        .collect();
    let pts: Vec<Value> = points.iter().map(point_json).collect();
    json!({
        "disc": spec.disc().value(),
        "rank": spec.rank(),
        "gram": gram,
        "torsion_order": spec.torsion_order() as i64,
        "points": pts,
    })
}

pub fn point_json(x: &PointInEN) -> Value {
    let coords: Vec<Value> = x
        .coords
        .iter()
        .map(|p| json!({"free": elem_strings(&p.free), "torsion": p.torsion.to_string()}))
        .collect();
    Value::Array(coords)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointFile {
    Bare(Vec<PointCoordJson>),
    Wrapped { coords: Vec<PointCoordJson> },
}

/// A point as `[{free, torsion}, ...]` or `{"coords": [...]}`.
pub fn read_point(text: &str, spec: &ModuleSpec) -> Result<PointInEN> {
    let f: PointFile = serde_json::from_str(text).map_err(json_error)?;
    let coords = match f {
        PointFile::Bare(c) | PointFile::Wrapped { coords: c } => c,
    };
    let x = point_from_json(spec, &coords, "coords")?;
    spec.check(&x)?;
    Ok(x)
}

#[derive(Deserialize)]
struct GammaFile {
    a: Vec<String>,
    b: Vec<Vec<String>>,
    #[serde(default)]
    zeta: Option<Vec<String>>,
}

/// A point given by relations `{a, b, zeta}`.
pub fn read_gamma(text: &str, spec: &ModuleSpec) -> Result<GammaPoint> {
    let f: GammaFile = serde_json::from_str(text).map_err(json_error)?;
    let disc = spec.disc();
    let parse_list = |v: &[String], at: &str| {
        v.iter()
            .enumerate()
            .map(|(j, e)| parse_elem_at(e, disc, || format!("{at}[{j}]")))
            .collect::<Result<Vec<_>>>()
    };
    let a = parse_list(&f.a, "a")?;
    let rows = f
        .b
        .iter()
        .enumerate()
        .map(|(i, r)| parse_list(r, &format!("b[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let b = OMatrix::from_rows_with_cols(disc, spec.rank(), rows)?;
    let zeta = match &f.zeta {
        Some(z) => parse_list(z, "zeta")?,
        None => vec![disc.zero(); a.len()],
    };
    GammaPoint::new(spec, a, b, zeta)
}

pub fn gamma_json(x: &GammaPoint) -> Value {
    let b: Vec<Vec<String>> = (0..x.b.rows()).map(|i| elem_strings(x.b.row(i))).collect();
    json!({"a": elem_strings(&x.a), "b": b, "zeta": elem_strings(&x.zeta)})
}

pub fn report_json(r: &AnomalyReport) -> Value {
    json!({
        "verdict": r.verdict,
        "dimB": r.dim_b,
        "relative_codim": r.relative_codim,
        "relative_codim_one": r.relative_codim_one(),
        "theorem_id": r.theorem_id,
        "coset": coset_json(&r.coset),
        "notes": r.notes,
    })
}

fn variety_json(v: &TorsionVariety) -> Value {
    json!({
        "codim": v.codim(),
        "equations": matrix_json(&v.equations),
        "rhs": torsion_json(&v.rhs),
        "coset": coset_json(&v.coset),
    })
}

pub fn reduction_json(r: &Reduction) -> Value {
    match r {
        Reduction::TorsionPoint => json!({"kind": "torsion_point", "height": "0"}),
        Reduction::Variety(v) => json!({"kind": "torsion_variety", "variety": variety_json(v)}),
    }
}

pub fn lift_json(l: &Lift) -> Value {
    json!({
        "point": gamma_json(&l.point),
        "variety": variety_json(&l.variety),
        "degenerate": l.degenerate,
    })
}

pub fn siegel_json(s: &SiegelSolution) -> Value {
    let vectors: Vec<Vec<String>> = s.vectors.iter().map(|v| elem_strings(v)).collect();
    json!({"vectors": vectors, "certificate": s.certificate})
}

pub fn completion_json(c: &Completion) -> Value {
    json!({"matrix": matrix_json(&c.matrix), "det": c.det.to_string(), "certificate": c.certificate})
}

pub fn complement_json(b: &SubgroupMatrix, c: &Complement) -> Value {
    json!({
        "subgroup": matrix_json(b.matrix()),
        "complement": matrix_json(c.complement.matrix()),
        "intersection": c.intersection.to_string(),
        "ratio": format!("{}/{}", c.ratio.0, c.ratio.1),
    })
}

pub fn listing_json(l: &SubgroupListing, include: bool) -> Value {
    let subgroups: Vec<Value> = if include {
        l.subgroups
            .iter()
            .map(|s| json!({"row_product": s.row_product as i64, "matrix": matrix_json(s.subgroup.matrix())}))
            .collect()
    } else {
        Vec::new()
    };
    json!({
        "count": l.count(),
        "partial": l.partial,
        "tuples_examined": l.tuples_examined,
        "witness_level": l.witness_level as i64,
        "subgroups": subgroups,
    })
}

pub fn torsion_count_json(t: &TorsionCount, include: bool) -> Value {
    let mut v = serde_json::to_value(t).expect("plain data");
    if include {
        if let Some(pts) = &t.listing {
            v["points"] = Value::Array(pts.iter().map(torsion_json).collect());
        }
    }
    v
}

pub fn rational_string(x: &num_rational::BigRational) -> String {
    format_rational(x)
}
