//! Polyhedron presentations `P(A, b)`: the set of points `x` with
//! `<a_i, x> + b_i >= 0` for the columns `a_i` of `A`.

use alloc::vec;
use alloc::vec::Vec;

use crate::lp::{exists_positive_relation, feasible_nonneg, LpOutcome, SystemBuilder};
use crate::matrix::Mat;
use crate::scalar::{rat, Field, Rational};
use crate::util::combinations;
use crate::{Error, Result};

/// A presentation by `m` affine inequalities in `R^n`, with the normals
/// stored as the columns of an `n x m` matrix.
///
/// The normals are required to span `R^n`, so the polyhedron is pointed:
/// every nonempty face contains a vertex.
#[derive(Clone, PartialEq, Debug)]
pub struct Presentation {
    a: Mat<Rational>,
    b: Vec<Rational>,
}

impl Presentation {
    pub fn new(a: Mat<Rational>, b: Vec<Rational>) -> Result<Self> {
        if b.len() != a.cols() {
            return Err(Error::DimensionMismatch {
                expected: a.cols(),
                got: b.len(),
            });
        }
        let rank = a.rank();
        if rank != a.rows() {
            return Err(Error::RankDeficient {
                rank,
                required: a.rows(),
            });
        }
        Ok(Presentation { a, b })
    }

    /// Builds from the normal vectors `a_i` given one by one.
    pub fn from_columns(columns: &[Vec<Rational>], b: Vec<Rational>) -> Result<Self> {
        let n = columns.first().map_or(0, Vec::len);
        for c in columns {
            if c.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.len(),
                });
            }
        }
        let a = Mat::from_fn(n, columns.len(), |i, j| columns[j][i].clone());
        Presentation::new(a, b)
    }

    pub fn from_i64_columns(columns: &[&[i64]], b: &[i64]) -> Result<Self> {
        let cols: Vec<Vec<Rational>> = columns
            .iter()
            .map(|c| c.iter().map(|&v| rat(v)).collect())
            .collect();
        Presentation::from_columns(&cols, b.iter().map(|&v| rat(v)).collect())
    }

    /// Ambient dimension `n`.
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Number of inequalities `m`.
    pub fn m(&self) -> usize {
        self.a.cols()
    }

    pub fn a(&self) -> &Mat<Rational> {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    /// The normal vector `a_i`.
    pub fn normal(&self, i: usize) -> Vec<Rational> {
        self.a.col_vec(i)
    }

    /// Evaluates `<a_i, x> + b_i`.
    pub fn eval(&self, i: usize, x: &[Rational]) -> Rational {
        let mut acc = self.b[i].clone();
        for r in 0..self.n() {
            acc += self.a.at(r, i) * &x[r];
        }
        acc
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        (0..self.m()).all(|i| self.eval(i, x) >= Rational::zero())
    }
}

/// A vertex together with the full set of inequalities active there.
#[derive(Clone, PartialEq, Debug)]
pub struct Vertex {
    pub point: Vec<Rational>,
    pub active: Vec<usize>,
}

/// All vertices of a presentation, sorted by point coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct VertexData {
    pub vertices: Vec<Vertex>,
}

/// Enumerates vertices by solving every nonsingular `n`-subset of the
/// inequality system and keeping the feasible solutions.
pub fn enumerate_vertices(p: &Presentation) -> VertexData {
    let n = p.n();
    let m = p.m();
    let mut vertices: Vec<Vertex> = Vec::new();
    for subset in combinations(m, n) {
        let rows = Mat::from_fn(n, n, |r, c| p.a.at(c, subset[r]).clone());
        if rows.rank() != n {
            continue;
        }
        let rhs: Vec<Rational> = subset.iter().map(|&i| -p.b[i].clone()).collect();
        let Some(x) = rows.solve(&rhs) else {
            continue;
        };
        if !p.contains(&x) {
            continue;
        }
        if vertices.iter().any(|v| v.point == x) {
            continue;
        }
        let active: Vec<usize> = (0..m).filter(|&i| p.eval(i, &x).is_zero()).collect();
        vertices.push(Vertex { point: x, active });
    }
    vertices.sort_by(|u, v| u.point.cmp(&v.point));
    VertexData { vertices }
}

/// Emptiness / boundedness status of the polyhedron.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Empty,
    Polytope,
    Unbounded,
}

/// Summary report of a presentation's geometry.
#[derive(Clone, PartialEq, Debug)]
pub struct Analysis {
    pub status: Status,
    /// Every point of the polyhedron has linearly independent active
    /// normals; false for the empty polyhedron.
    pub generic: bool,
    /// Every vertex lies on exactly `n` facets; false for the empty
    /// polyhedron.
    pub simple: bool,
    /// The normals admit a strictly positive linear relation, so the
    /// polyhedron is bounded for every right-hand side.
    pub bounded: bool,
    /// Indices whose facet `P intersect {<a_i, x> + b_i = 0}` is empty.
    pub redundant: Vec<usize>,
}

fn facet_row(p: &Presentation, i: usize) -> (Vec<Rational>, Rational) {
    (p.normal(i), -p.b[i].clone())
}

fn is_nonempty(p: &Presentation) -> bool {
    let mut sys = SystemBuilder::new(p.n());
    for i in 0..p.m() {
        let (coeffs, rhs) = facet_row(p, i);
        sys.at_least(coeffs, rhs);
    }
    sys.solve().is_some()
}

fn facet_is_nonempty(p: &Presentation, i: usize) -> bool {
    let mut sys = SystemBuilder::new(p.n());
    let (coeffs, rhs) = facet_row(p, i);
    sys.equal(coeffs, rhs);
    for j in 0..p.m() {
        if j != i {
            let (coeffs, rhs) = facet_row(p, j);
            sys.at_least(coeffs, rhs);
        }
    }
    sys.solve().is_some()
}

/// Positive-proportionality class key for an inequality: the vector
/// `(a_i, b_i)` scaled so its first nonzero entry has absolute value one.
fn class_key(p: &Presentation, i: usize) -> Vec<Rational> {
    let mut v = p.normal(i);
    v.push(p.b[i].clone());
    if let Some(first) = v.iter().find(|c| !c.is_zero()) {
        let scale = if *first < Rational::zero() {
            -first.clone()
        } else {
            first.clone()
        };
        for c in v.iter_mut() {
            *c = &*c / &scale;
        }
    }
    v
}

/// Tests whether inequality class `class` cuts out a facet: some point of
/// the polyhedron satisfies the class with equality and every inequality
/// outside the class strictly.
fn class_is_facet(p: &Presentation, classes: &[usize], class: usize) -> bool {
    let mut eq = Vec::new();
    let mut gt = Vec::new();
    for i in 0..p.m() {
        let row = facet_row(p, i);
        if classes[i] == class {
            eq.push(row);
        } else {
            gt.push(row);
        }
    }
    crate::lp::affine_strict_feasible(p.n(), &eq, &[], &gt).is_some()
}

/// Computes genericity, simplicity, boundedness, and redundancy.
pub fn analyze_presentation(p: &Presentation) -> Analysis {
    let bounded = exists_positive_relation(
        &(0..p.m()).map(|i| p.normal(i)).collect::<Vec<_>>(),
    )
    .expect("columns share the ambient dimension")
    .is_some();
    if !is_nonempty(p) {
        return Analysis {
            status: Status::Empty,
            generic: false,
            simple: false,
            bounded,
            redundant: (0..p.m()).collect(),
        };
    }
    let status = if bounded {
        Status::Polytope
    } else {
        Status::Unbounded
    };
    let redundant: Vec<usize> = (0..p.m()).filter(|&i| !facet_is_nonempty(p, i)).collect();
    let vertices = enumerate_vertices(p);
    let generic = !vertices.vertices.is_empty()
        && vertices.vertices.iter().all(|v| v.active.len() == p.n());
    let simple = if generic {
        true
    } else if vertices.vertices.is_empty() {
        false
    } else {
        let mut keys: Vec<Vec<Rational>> = Vec::new();
        let mut classes = vec![0usize; p.m()];
        for i in 0..p.m() {
            let key = class_key(p, i);
            match keys.iter().position(|k| *k == key) {
                Some(idx) => classes[i] = idx,
                None => {
                    classes[i] = keys.len();
                    keys.push(key);
                }
            }
        }
        let facet_classes: Vec<bool> = (0..keys.len())
            .map(|c| class_is_facet(p, &classes, c))
            .collect();
        vertices.vertices.iter().all(|v| {
            let mut seen = vec![false; keys.len()];
            for &i in &v.active {
                seen[classes[i]] = true;
            }
            let count = seen
                .iter()
                .enumerate()
                .filter(|(c, s)| **s && facet_classes[*c])
                .count();
            count == p.n()
        })
    };
    Analysis {
        status,
        generic,
        simple,
        bounded,
        redundant,
    }
}

/// Translates an interior point to the origin and rescales every
/// inequality so that all `b_i = 1`. Requires a bounded polytope with
/// nonempty interior; the interior point used is the vertex barycenter.
pub fn normalize_to_unit_b(p: &Presentation) -> Result<Presentation> {
    let analysis = analyze_presentation(p);
    if !analysis.bounded {
        return Err(Error::Unbounded);
    }
    if analysis.status == Status::Empty {
        return Err(Error::EmptyPolyhedron);
    }
    let vertices = enumerate_vertices(p);
    let count = rat(vertices.vertices.len() as i64);
    let mut center = vec![Rational::zero(); p.n()];
    for v in &vertices.vertices {
        for (c, x) in center.iter_mut().zip(v.point.iter()) {
            *c += x;
        }
    }
    for c in center.iter_mut() {
        *c = &*c / &count;
    }
    let mut columns = Vec::with_capacity(p.m());
    let mut b = Vec::with_capacity(p.m());
    for i in 0..p.m() {
        let shifted = p.eval(i, &center);
        if shifted <= Rational::zero() {
            return Err(Error::EmptyInterior);
        }
        columns.push(
            p.normal(i)
                .into_iter()
                .map(|c| c / &shifted)
                .collect::<Vec<_>>(),
        );
        b.push(rat(1));
    }
    Presentation::from_columns(&columns, b)
}

/// For a presentation with all `b_i = 1`, the polar polytope is the convex
/// hull of the normals; returns the indices and coordinates of the normals
/// that are vertices of it (the non-redundant inequalities).
pub fn polar_vertices(p: &Presentation) -> Result<Vec<(usize, Vec<Rational>)>> {
    if p.b.iter().any(|b| *b != rat(1)) {
        return Err(Error::NotNormalized);
    }
    let mut out = Vec::new();
    for i in 0..p.m() {
        let others: Vec<usize> = (0..p.m()).filter(|&j| j != i).collect();
        let c = Mat::from_fn(p.n() + 1, others.len(), |r, k| {
            if r < p.n() {
                p.a.at(r, others[k]).clone()
            } else {
                rat(1)
            }
        });
        let mut d = p.normal(i);
        d.push(rat(1));
        let inside = matches!(feasible_nonneg(&c, &d), LpOutcome::Feasible(_));
        if !inside {
            out.push((i, p.normal(i)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> Presentation {
        Presentation::from_i64_columns(&[&[1, 0], &[0, 1], &[-1, -1]], &[0, 0, 1]).unwrap()
    }

    pub(crate) fn pentagon() -> Presentation {
        Presentation::from_i64_columns(
            &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[-1, -1]],
            &[0, 0, 2, 2, 3],
        )
        .unwrap()
    }

    fn ratv(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    #[test]
    fn rejects_rank_deficient_normals() {
        let err = Presentation::from_i64_columns(&[&[1, 0], &[-1, 0]], &[1, 1]).unwrap_err();
        assert_eq!(
            err,
            Error::RankDeficient {
                rank: 1,
                required: 2
            }
        );
    }

    #[test]
    fn triangle_vertices() {
        let vd = enumerate_vertices(&triangle());
        let points: Vec<Vec<Rational>> = vd.vertices.iter().map(|v| v.point.clone()).collect();
        assert_eq!(points, vec![ratv(&[0, 0]), ratv(&[0, 1]), ratv(&[1, 0])]);
        assert!(vd.vertices.iter().all(|v| v.active.len() == 2));
    }

    #[test]
    fn pentagon_vertices() {
        let vd = enumerate_vertices(&pentagon());
        let points: Vec<Vec<Rational>> = vd.vertices.iter().map(|v| v.point.clone()).collect();
        assert_eq!(
            points,
            vec![
                ratv(&[0, 0]),
                ratv(&[0, 2]),
                ratv(&[1, 2]),
                ratv(&[2, 0]),
                ratv(&[2, 1]),
            ]
        );
    }

    #[test]
    fn pentagon_analysis() {
        let a = analyze_presentation(&pentagon());
        assert_eq!(a.status, Status::Polytope);
        assert!(a.generic && a.simple && a.bounded);
        assert!(a.redundant.is_empty());
    }

    #[test]
    fn redundant_inequality_detected() {
        let p = Presentation::from_i64_columns(
            &[&[1, 0], &[0, 1], &[-1, -1], &[-1, -1]],
            &[0, 0, 1, 2],
        )
        .unwrap();
        let a = analyze_presentation(&p);
        assert!(a.generic);
        assert_eq!(a.redundant, vec![3]);
    }

    #[test]
    fn empty_polyhedron_status() {
        let p = Presentation::from_i64_columns(&[&[1, 0], &[-1, 0], &[0, 1]], &[0, -1, 0])
            .unwrap();
        let a = analyze_presentation(&p);
        assert_eq!(a.status, Status::Empty);
        assert!(!a.generic && !a.simple);
        assert_eq!(a.redundant, vec![0, 1, 2]);
    }

    #[test]
    fn unbounded_quadrant() {
        let p = Presentation::from_i64_columns(&[&[1, 0], &[0, 1]], &[0, 0]).unwrap();
        let a = analyze_presentation(&p);
        assert_eq!(a.status, Status::Unbounded);
        assert!(!a.bounded);
        assert!(a.generic);
        let err = normalize_to_unit_b(&p).unwrap_err();
        assert_eq!(err, Error::Unbounded);
    }

    #[test]
    fn non_generic_pyramid_over_square_apex() {
        let p = Presentation::from_i64_columns(
            &[&[1, 0, 0], &[0, 1, 0], &[-1, 0, -1], &[0, -1, -1], &[0, 0, 1]],
            &[0, 0, 1, 1, 0],
        )
        .unwrap();
        let a = analyze_presentation(&p);
        assert!(!a.generic);
        assert!(!a.simple);
        assert_eq!(a.status, Status::Polytope);
    }

    #[test]
    fn duplicated_inequality_keeps_simplicity() {
        let p = Presentation::from_i64_columns(
            &[&[1, 0], &[1, 0], &[0, 1], &[-1, -1]],
            &[0, 0, 0, 1],
        )
        .unwrap();
        let a = analyze_presentation(&p);
        assert!(!a.generic);
        assert!(a.simple);
    }

    #[test]
    fn normalization_gives_unit_b() {
        let q = normalize_to_unit_b(&pentagon()).unwrap();
        assert!(q.b().iter().all(|b| *b == rat(1)));
        assert!(q.contains(&ratv(&[0, 0])));
        let before = enumerate_vertices(&pentagon());
        let after = enumerate_vertices(&q);
        assert_eq!(before.vertices.len(), after.vertices.len());
        let mut actives_before: Vec<Vec<usize>> =
            before.vertices.iter().map(|v| v.active.clone()).collect();
        let mut actives_after: Vec<Vec<usize>> =
            after.vertices.iter().map(|v| v.active.clone()).collect();
        actives_before.sort();
        actives_after.sort();
        assert_eq!(actives_before, actives_after);
    }

    #[test]
    fn normalization_rejects_flat_polytope() {
        let p = Presentation::from_i64_columns(&[&[1], &[-1]], &[0, 0]).unwrap();
        let err = normalize_to_unit_b(&p).unwrap_err();
        assert_eq!(err, Error::EmptyInterior);
    }

    #[test]
    fn polar_vertices_of_simplex() {
        let q = normalize_to_unit_b(&triangle()).unwrap();
        let polar = polar_vertices(&q).unwrap();
        assert_eq!(polar.len(), 3);
    }

    #[test]
    fn polar_drops_redundant_normal() {
        let p = Presentation::from_i64_columns(
            &[&[1, 0], &[0, 1], &[-1, -1], &[-1, -1]],
            &[0, 0, 1, 2],
        )
        .unwrap();
        let q = normalize_to_unit_b(&p).unwrap();
        let polar = polar_vertices(&q).unwrap();
        let indices: Vec<usize> = polar.iter().map(|(i, _)| *i).collect();
        assert_eq!(indices, vec![0, 1, 2]);
        let a = analyze_presentation(&p);
        assert_eq!(a.redundant, vec![3]);
    }

    #[test]
    fn polar_requires_normalization() {
        let err = polar_vertices(&pentagon()).unwrap_err();
        assert_eq!(err, Error::NotNormalized);
    }
}
