//! Plain-text rendering helpers shared by the verb reports.

use mangle_core::matrix::Mat;
use mangle_core::scalar::{GaussianRational, Rational};
use mangle_core::topology::TopologyDescription;
use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::json::{fmt_gauss, fmt_rational, indices_value, one_based, rational_vec_value};

pub fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `(0, 1/2)` from coordinates.
pub fn point(coords: &[Rational]) -> String {
    let parts: Vec<String> = coords.iter().map(fmt_rational).collect();
    format!("({})", parts.join(", "))
}

/// `{1, 4}` from 0-based indices, printed 1-based.
pub fn index_set(indices: &[usize]) -> String {
    let parts: Vec<String> = one_based(indices).iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn aligned_rows(cells: Vec<Vec<String>>, indent: &str) -> Vec<String> {
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            cells
                .iter()
                .filter_map(|row| row.get(c).map(String::len))
                .max()
                .unwrap_or(0)
        })
        .collect();
    cells
        .iter()
        .map(|row| {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, s)| format!("{s:>width$}", width = widths[c]))
                .collect();
            format!("{indent}{}", line.join(" "))
        })
        .collect()
}

pub fn rational_matrix_lines(m: &Mat<Rational>, indent: &str) -> Vec<String> {
    let cells = (0..m.rows())
        .map(|r| m.row(r).iter().map(fmt_rational).collect())
        .collect();
    aligned_rows(cells, indent)
}

pub fn gauss_matrix_lines(m: &Mat<GaussianRational>, indent: &str) -> Vec<String> {
    let cells = (0..m.rows())
        .map(|r| m.row(r).iter().map(fmt_gauss).collect())
        .collect();
    aligned_rows(cells, indent)
}

pub fn rational_row(v: &[Rational]) -> String {
    v.iter().map(fmt_rational).collect::<Vec<_>>().join(" ")
}

pub fn usize_row(v: &[usize]) -> String {
    v.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// `Z/2 x Z/4` from invariant factors; `none` when the list is empty.
pub fn torsion(factors: &[BigInt]) -> String {
    if factors.is_empty() {
        return "none".into();
    }
    factors
        .iter()
        .map(|d| format!("Z/{d}"))
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Structured JSON form of a classification, carrying the variant tag,
/// a display string, and the variant's numeric fields.
pub fn topology_value(t: &TopologyDescription) -> Value {
    let mut map = Map::new();
    map.insert("tag".into(), Value::from(t.tag()));
    map.insert("display".into(), Value::from(t.to_string()));
    match t {
        TopologyDescription::SphereProductTorus {
            sphere_dims,
            torus_dim,
        } => {
            map.insert(
                "sphere_dims".into(),
                Value::from(sphere_dims.iter().map(|&d| d as u64).collect::<Vec<_>>()),
            );
            map.insert("torus_dim".into(), Value::from(*torus_dim as u64));
        }
        TopologyDescription::NOfM { m } => {
            map.insert("m".into(), Value::from(*m as u64));
        }
        TopologyDescription::NKpq { k, p, q } => {
            map.insert("k".into(), Value::from(*k as u64));
            map.insert("p".into(), Value::from(*p as u64));
            map.insert("q".into(), Value::from(*q as u64));
        }
        TopologyDescription::SurfaceBundle {
            genus,
            base_torus_dim,
            components,
        } => {
            map.insert("genus".into(), Value::from(*genus));
            map.insert("base_torus_dim".into(), Value::from(*base_torus_dim as u64));
            map.insert("components".into(), Value::from(*components));
        }
        TopologyDescription::BundleGeneric {
            fiber_dim,
            base_torus_dim,
        } => {
            map.insert("fiber_dim".into(), Value::from(*fiber_dim as u64));
            map.insert("base_torus_dim".into(), Value::from(*base_torus_dim as u64));
        }
        TopologyDescription::ImmersionOnly => {}
        TopologyDescription::Unclassified { reason } => {
            map.insert("reason".into(), Value::from(reason.clone()));
        }
    }
    if let Some(note) = t.orientation_note() {
        map.insert("orientation".into(), Value::from(note));
    }
    Value::Object(map)
}

/// JSON form of one vertex: point coordinates plus 1-based active set.
pub fn vertex_value(point: &[Rational], active: &[usize]) -> Value {
    let mut map = Map::new();
    map.insert("point".into(), rational_vec_value(point));
    map.insert("active".into(), indices_value(active));
    Value::Object(map)
}
