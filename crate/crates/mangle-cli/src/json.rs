//! Strict JSON input parsing and exact-value serialization.
//!
//! Numbers are JSON integers or `"p/q"` strings; floats are rejected.
//! Gaussian rationals use strings like `"i"`, `"-1/2i"`, `"1+i"`,
//! `"3/4-2i"`. Face lists are 1-based and follow the maximal-face
//! convention: the downward closure is taken automatically.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use mangle_core::complex::SimplicialComplex;
use mangle_core::fan::FanData;
use mangle_core::matrix::Mat;
use mangle_core::presentation::Presentation;
use mangle_core::quadric::{QuadricSystem, Realm};
use mangle_core::scalar::{as_integer, GaussianRational, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{Map, Value};

use crate::CliError;

/// One parsed input file: metadata plus at most one mathematical object
/// and an optional Psi matrix.
pub struct InputFile {
    pub name: Option<String>,
    pub presentation: Option<Presentation>,
    pub fan: Option<FanData>,
    pub quadrics: Option<QuadricSystem>,
    pub psi: Option<Mat<GaussianRational>>,
    /// Stderr notices accumulated while parsing (face-list closure).
    pub notices: Vec<String>,
}

impl InputFile {
    /// Ground-set size of whichever object the file carries.
    pub fn m(&self) -> Option<usize> {
        if let Some(p) = &self.presentation {
            Some(p.m())
        } else if let Some(f) = &self.fan {
            Some(f.m())
        } else if let Some(q) = &self.quadrics {
            Some(q.m())
        } else {
            self.psi.as_ref().map(Mat::rows)
        }
    }
}

fn parse_err(path: &Path, message: String) -> CliError {
    CliError::Parse {
        path: path.display().to_string(),
        message,
    }
}

/// Reads and validates one input file against the schema.
pub fn parse_input(path: &Path) -> Result<InputFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| parse_err(path, e.to_string()))?;
    let Value::Object(map) = value else {
        return Err(parse_err(path, "top level must be a JSON object".into()));
    };

    const KNOWN: &[&str] = &[
        "name",
        "description",
        "verb",
        "report",
        "presentation",
        "fan",
        "quadrics",
        "psi",
    ];
    for key in map.keys() {
        if !KNOWN.contains(&key.as_str()) {
            return Err(parse_err(path, format!("unknown key \"{key}\"")));
        }
    }

    let name = match map.get("name") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(parse_err(path, "\"name\" must be a string".into())),
    };

    let data_keys: Vec<&str> = ["presentation", "fan", "quadrics"]
        .into_iter()
        .filter(|k| map.contains_key(*k))
        .collect();
    if data_keys.len() > 1 {
        return Err(parse_err(
            path,
            format!("at most one of presentation/fan/quadrics allowed, found {data_keys:?}"),
        ));
    }
    if data_keys.is_empty() && !map.contains_key("psi") {
        return Err(parse_err(
            path,
            "no presentation, fan, quadrics, or psi object found".into(),
        ));
    }

    let mut notices = Vec::new();
    let presentation = match map.get("presentation") {
        None => None,
        Some(v) => Some(parse_presentation(path, v)?),
    };
    let fan = match map.get("fan") {
        None => None,
        Some(v) => Some(parse_fan(path, v, &mut notices)?),
    };
    let quadrics = match map.get("quadrics") {
        None => None,
        Some(v) => Some(parse_quadrics(path, v)?),
    };
    let psi = match map.get("psi") {
        None => None,
        Some(v) => Some(parse_gauss_matrix(path, v, "psi")?),
    };

    Ok(InputFile {
        name,
        presentation,
        fan,
        quadrics,
        psi,
        notices,
    })
}

fn object<'v>(path: &Path, v: &'v Value, field: &str) -> Result<&'v Map<String, Value>, CliError> {
    v.as_object()
        .ok_or_else(|| parse_err(path, format!("\"{field}\" must be an object")))
}

fn array<'v>(path: &Path, v: &'v Value, field: &str) -> Result<&'v Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| parse_err(path, format!("\"{field}\" must be an array")))
}

fn check_keys(
    path: &Path,
    map: &Map<String, Value>,
    field: &str,
    allowed: &[&str],
) -> Result<(), CliError> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(parse_err(path, format!("unknown key \"{field}.{key}\"")));
        }
    }
    Ok(())
}

fn require<'v>(
    path: &Path,
    map: &'v Map<String, Value>,
    field: &str,
    key: &str,
) -> Result<&'v Value, CliError> {
    map.get(key)
        .ok_or_else(|| parse_err(path, format!("missing key \"{field}.{key}\"")))
}

/// Parses one exact rational: a JSON integer or a `"p/q"` string.
fn parse_rational(path: &Path, v: &Value, field: &str) -> Result<Rational, CliError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(BigInt::from(i)))
            } else {
                Err(parse_err(
                    path,
                    format!("{field}: floats are rejected; write rationals as \"p/q\" (got {n})"),
                ))
            }
        }
        Value::String(s) => parse_rational_str(s)
            .ok_or_else(|| parse_err(path, format!("{field}: malformed rational \"{s}\""))),
        other => Err(parse_err(
            path,
            format!("{field}: expected an integer or \"p/q\" string, got {other}"),
        )),
    }
}

fn parse_rational_str(s: &str) -> Option<Rational> {
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = parse_bigint(numer)?;
    let d = parse_bigint(denom)?;
    if d.is_zero() || d.is_negative() {
        return None;
    }
    Some(Rational::new(n, d))
}

fn parse_bigint(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses one Gaussian rational: a rational, or a string with an `i`
/// term (`"i"`, `"-i"`, `"2i"`, `"1+i"`, `"1/2-3/4i"`).
fn parse_gauss(path: &Path, v: &Value, field: &str) -> Result<GaussianRational, CliError> {
    let bad = || parse_err(path, format!("{field}: malformed Gaussian rational {v}"));
    match v {
        Value::String(s) if s.ends_with('i') => {
            let body = &s[..s.len() - 1];
            let split = body
                .get(1..)
                .and_then(|tail| tail.rfind(['+', '-']))
                .map(|i| i + 1);
            let (re_str, im_str) = match split {
                Some(i) => (&body[..i], &body[i..]),
                None => ("0", body),
            };
            let re = parse_rational_str(re_str).ok_or_else(bad)?;
            let im = match im_str {
                "" | "+" => parse_rational_str("1"),
                "-" => parse_rational_str("-1"),
                t => parse_rational_str(t.strip_prefix('+').unwrap_or(t)),
            }
            .ok_or_else(bad)?;
            Ok(GaussianRational::new(re, im))
        }
        other => Ok(GaussianRational::from_real(parse_rational(
            path, other, field,
        )?)),
    }
}

fn parse_rational_vec(path: &Path, v: &Value, field: &str) -> Result<Vec<Rational>, CliError> {
    array(path, v, field)?
        .iter()
        .enumerate()
        .map(|(i, entry)| parse_rational(path, entry, &format!("{field}[{i}]")))
        .collect()
}

fn parse_rational_rows(
    path: &Path,
    v: &Value,
    field: &str,
) -> Result<Vec<Vec<Rational>>, CliError> {
    array(path, v, field)?
        .iter()
        .enumerate()
        .map(|(i, row)| parse_rational_vec(path, row, &format!("{field}[{i}]")))
        .collect()
}

fn parse_gauss_matrix(
    path: &Path,
    v: &Value,
    field: &str,
) -> Result<Mat<GaussianRational>, CliError> {
    let rows: Vec<Vec<GaussianRational>> = array(path, v, field)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            array(path, row, &format!("{field}[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, entry)| parse_gauss(path, entry, &format!("{field}[{i}][{j}]")))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(parse_err(path, format!("{field}: ragged rows")));
    }
    Ok(Mat::from_rows(rows))
}

fn parse_presentation(path: &Path, v: &Value) -> Result<Presentation, CliError> {
    let map = object(path, v, "presentation")?;
    check_keys(path, map, "presentation", &["columns", "b"])?;
    let columns = parse_rational_rows(
        path,
        require(path, map, "presentation", "columns")?,
        "presentation.columns",
    )?;
    let b = parse_rational_vec(
        path,
        require(path, map, "presentation", "b")?,
        "presentation.b",
    )?;
    if b.len() != columns.len() {
        return Err(parse_err(
            path,
            format!(
                "presentation.b has {} entries for {} columns",
                b.len(),
                columns.len()
            ),
        ));
    }
    let n = columns.first().map_or(0, Vec::len);
    if columns.iter().any(|c| c.len() != n) {
        return Err(parse_err(path, "presentation.columns: ragged rows".into()));
    }
    Presentation::from_columns(&columns, b).map_err(CliError::from)
}

fn parse_fan(path: &Path, v: &Value, notices: &mut Vec<String>) -> Result<FanData, CliError> {
    let map = object(path, v, "fan")?;
    check_keys(path, map, "fan", &["m", "faces", "vectors"])?;
    let m = require(path, map, "fan", "m")?
        .as_u64()
        .ok_or_else(|| parse_err(path, "fan.m must be a nonnegative integer".into()))?
        as usize;
    let face_rows = array(path, require(path, map, "fan", "faces")?, "fan.faces")?;
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for (i, row) in face_rows.iter().enumerate() {
        let field = format!("fan.faces[{i}]");
        let mut face = Vec::new();
        for entry in array(path, row, &field)? {
            let label = entry
                .as_u64()
                .ok_or_else(|| parse_err(path, format!("{field}: vertices are integers")))?;
            if label == 0 || label as usize > m {
                return Err(parse_err(
                    path,
                    format!("{field}: vertex {label} outside 1..{m}"),
                ));
            }
            face.push(label as usize - 1);
        }
        faces.push(face);
    }
    let complex = SimplicialComplex::from_faces(m, &faces).map_err(CliError::from)?;
    let listed: BTreeSet<Vec<usize>> = faces
        .iter()
        .filter(|f| !f.is_empty())
        .map(|f| {
            let mut sorted = f.clone();
            sorted.sort_unstable();
            sorted.dedup();
            sorted
        })
        .collect();
    let closed: BTreeSet<Vec<usize>> = complex
        .face_masks()
        .filter(|&mask| mask != 0)
        .map(|mask| mask_indices(mask))
        .collect();
    if listed != closed {
        notices.push(format!(
            "{}: face list extended to all subsets (maximal-face convention)",
            path.display()
        ));
    }
    let vectors = parse_rational_rows(
        path,
        require(path, map, "fan", "vectors")?,
        "fan.vectors",
    )?;
    FanData::new(complex, vectors).map_err(CliError::from)
}

fn parse_quadrics(path: &Path, v: &Value) -> Result<QuadricSystem, CliError> {
    let map = object(path, v, "quadrics")?;
    check_keys(path, map, "quadrics", &["gamma_rows", "delta", "realm"])?;
    let rows = parse_rational_rows(
        path,
        require(path, map, "quadrics", "gamma_rows")?,
        "quadrics.gamma_rows",
    )?;
    let delta = parse_rational_vec(
        path,
        require(path, map, "quadrics", "delta")?,
        "quadrics.delta",
    )?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(parse_err(path, "quadrics.gamma_rows: ragged rows".into()));
    }
    let realm = match map.get("realm") {
        None => Realm::Hermitian,
        Some(Value::String(s)) if s == "hermitian" => Realm::Hermitian,
        Some(Value::String(s)) if s == "real" => Realm::Real,
        Some(other) => {
            return Err(parse_err(
                path,
                format!("quadrics.realm must be \"hermitian\" or \"real\", got {other}"),
            ))
        }
    };
    QuadricSystem::new(Mat::from_rows(rows), delta, realm).map_err(CliError::from)
}

pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Formats a rational exactly as the parser reads it back.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn rational_value(r: &Rational) -> Value {
    match as_integer(r).and_then(|n| i64::try_from(n).ok()) {
        Some(i) => Value::from(i),
        None => Value::from(fmt_rational(r)),
    }
}

pub fn bigint_value(n: &BigInt) -> Value {
    match i64::try_from(n.clone()) {
        Ok(i) => Value::from(i),
        Err(_) => Value::from(n.to_string()),
    }
}

/// Formats a Gaussian rational in the input grammar.
pub fn fmt_gauss(g: &GaussianRational) -> String {
    let re_zero = g.re.is_zero();
    let im_zero = g.im.is_zero();
    if im_zero {
        return fmt_rational(&g.re);
    }
    let im_part = |im: &Rational, signed: bool| -> String {
        let mag = im.abs();
        let coeff = if mag == Rational::from_integer(BigInt::from(1)) {
            String::new()
        } else {
            fmt_rational(&mag)
        };
        let sign = if im.is_negative() {
            "-"
        } else if signed {
            "+"
        } else {
            ""
        };
        format!("{sign}{coeff}i")
    };
    if re_zero {
        im_part(&g.im, false)
    } else {
        format!("{}{}", fmt_rational(&g.re), im_part(&g.im, true))
    }
}

pub fn gauss_value(g: &GaussianRational) -> Value {
    if g.im.is_zero() {
        rational_value(&g.re)
    } else {
        Value::from(fmt_gauss(g))
    }
}

pub fn rational_vec_value(v: &[Rational]) -> Value {
    Value::from(v.iter().map(rational_value).collect::<Vec<_>>())
}

pub fn rational_mat_rows_value(m: &Mat<Rational>) -> Value {
    Value::from(
        (0..m.rows())
            .map(|r| rational_vec_value(m.row(r)))
            .collect::<Vec<_>>(),
    )
}

pub fn gauss_mat_rows_value(m: &Mat<GaussianRational>) -> Value {
    Value::from(
        (0..m.rows())
            .map(|r| Value::from(m.row(r).iter().map(gauss_value).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    )
}

/// 1-based copy of an index list.
pub fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|&i| i + 1).collect()
}

pub fn indices_value(indices: &[usize]) -> Value {
    Value::from(one_based(indices))
}

/// The input-schema echo of a presentation.
pub fn presentation_value(p: &Presentation) -> Value {
    let mut map = Map::new();
    map.insert(
        "columns".into(),
        Value::from(
            (0..p.m())
                .map(|i| rational_vec_value(&p.normal(i)))
                .collect::<Vec<_>>(),
        ),
    );
    map.insert("b".into(), rational_vec_value(p.b()));
    Value::Object(map)
}

/// The input-schema echo of a fan, listing maximal faces 1-based.
pub fn fan_value(fan: &FanData) -> Value {
    let masks: Vec<u32> = fan.complex.face_masks().collect();
    let mut faces: Vec<Vec<usize>> = masks
        .iter()
        .filter(|&&f| f != 0 && !masks.iter().any(|&g| g != f && g & f == f))
        .map(|&f| one_based(&mask_indices(f)))
        .collect();
    faces.sort();
    let mut map = Map::new();
    map.insert("m".into(), Value::from(fan.m() as u64));
    map.insert(
        "faces".into(),
        Value::from(
            faces
                .into_iter()
                .map(Value::from)
                .collect::<Vec<_>>(),
        ),
    );
    map.insert(
        "vectors".into(),
        Value::from(
            fan.vectors
                .iter()
                .map(|v| rational_vec_value(v))
                .collect::<Vec<_>>(),
        ),
    );
    Value::Object(map)
}

/// The input-schema echo of a quadric system.
pub fn quadrics_value(q: &QuadricSystem) -> Value {
    let mut map = Map::new();
    map.insert("gamma_rows".into(), rational_mat_rows_value(q.gamma()));
    map.insert("delta".into(), rational_vec_value(q.delta()));
    map.insert(
        "realm".into(),
        Value::from(match q.realm() {
            Realm::Hermitian => "hermitian",
            Realm::Real => "real",
        }),
    );
    Value::Object(map)
}
