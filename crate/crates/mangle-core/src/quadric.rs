//! The dictionary between polyhedron presentations and systems of
//! quadrics: construction in both directions, nondegeneracy with
//! certificates, the link normal form, small-codimension topology, and
//! moment-map diagnostics.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::fan::is_delzant;
use crate::gale::gale_dual;
use crate::lattice::Lattice;
use crate::lp::{
    exists_positive_functional, exists_positive_relation, in_cone, ConeMembership,
};
use crate::matrix::Mat;
use crate::presentation::{analyze_presentation, enumerate_vertices, Presentation};
use crate::scalar::Rational;
use crate::topology::TopologyDescription;
use crate::util::{combinations, dot};
use crate::{Error, Result};

/// Whether the coordinates `z_k` range over complex or real numbers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Realm {
    Hermitian,
    Real,
}

/// The system `sum_k gamma_k |z_k|^2 = delta` of `m - n` quadrics in `m`
/// coordinates, with `gamma_k` the columns of the coefficient matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadricSystem {
    gamma: Mat<Rational>,
    delta: Vec<Rational>,
    realm: Realm,
}

impl QuadricSystem {
    pub fn new(gamma: Mat<Rational>, delta: Vec<Rational>, realm: Realm) -> Result<Self> {
        if delta.len() != gamma.rows() {
            return Err(Error::DimensionMismatch {
                expected: gamma.rows(),
                got: delta.len(),
            });
        }
        Ok(QuadricSystem {
            gamma,
            delta,
            realm,
        })
    }

    pub fn gamma(&self) -> &Mat<Rational> {
        &self.gamma
    }

    pub fn delta(&self) -> &[Rational] {
        &self.delta
    }

    pub fn realm(&self) -> Realm {
        self.realm
    }

    pub fn with_realm(mut self, realm: Realm) -> Self {
        self.realm = realm;
        self
    }

    /// Number of coordinates.
    pub fn m(&self) -> usize {
        self.gamma.cols()
    }

    /// Number of quadrics, `m - n`.
    pub fn codim(&self) -> usize {
        self.gamma.rows()
    }

    pub fn column(&self, k: usize) -> Vec<Rational> {
        self.gamma.col_vec(k)
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.m()).map(|k| self.column(k)).collect()
    }
}

/// The Hermitian quadric system cutting out the level set over `P(A, b)`:
/// the coefficient matrix is the Gale dual of `A` and the right-hand side
/// is its image of `b`, so `delta = Gamma b` holds exactly.
pub fn quadrics_from_presentation(p: &Presentation) -> QuadricSystem {
    let gamma = gale_dual(p.a()).expect("presentations have full row rank");
    let delta = (0..gamma.rows())
        .map(|r| dot(gamma.row(r), p.b()))
        .collect();
    QuadricSystem {
        gamma,
        delta,
        realm: Realm::Hermitian,
    }
}

/// The presentation whose level set the system cuts out: rows of `A` form
/// the canonical basis of solutions of the homogeneous system and `b` is a
/// particular solution of `Gamma y = delta`.
pub fn polyhedron_from_quadrics(q: &QuadricSystem) -> Result<Presentation> {
    let rank = q.gamma.rank();
    if rank != q.codim() {
        return Err(Error::RankDeficient {
            rank,
            required: q.codim(),
        });
    }
    let b = q.gamma.solve(&q.delta).ok_or(Error::InconsistentSystem)?;
    let a = q.gamma.kernel_basis();
    Presentation::new(a, b)
}

/// Certificate attached to a nondegeneracy verdict.
#[derive(Clone, PartialEq, Debug)]
pub enum NondegeneracyWitness {
    /// Coefficients expressing delta in the cone of all columns.
    InCone(Vec<Rational>),
    /// Functional separating delta from the cone of all columns.
    Separation(Vec<Rational>),
    /// A column subset of size `codim - 1` whose cone contains delta.
    SmallSubset(Vec<usize>),
}

#[derive(Clone, PartialEq, Debug)]
pub struct Nondegeneracy {
    pub nondegenerate: bool,
    pub witness: NondegeneracyWitness,
}

/// A system is nondegenerate when delta lies in the cone of all the
/// columns but in no cone spanned by `codim - 1` of them. The subset scan
/// runs in lexicographic order and stops at the first violation.
pub fn is_nondegenerate(q: &QuadricSystem) -> Nondegeneracy {
    let m = q.m();
    let codim = q.codim();
    if codim == 0 {
        return Nondegeneracy {
            nondegenerate: true,
            witness: NondegeneracyWitness::InCone(alloc::vec![Rational::zero(); m]),
        };
    }
    let columns = q.columns();
    let lambda = match in_cone(&columns, &q.delta).expect("columns match delta in length") {
        ConeMembership::Inside(lambda) => lambda,
        ConeMembership::Outside(y) => {
            return Nondegeneracy {
                nondegenerate: false,
                witness: NondegeneracyWitness::Separation(y),
            }
        }
    };
    for subset in combinations(m, codim - 1) {
        let sub: Vec<Vec<Rational>> = subset.iter().map(|&k| columns[k].clone()).collect();
        if let ConeMembership::Inside(_) =
            in_cone(&sub, &q.delta).expect("columns match delta in length")
        {
            return Nondegeneracy {
                nondegenerate: false,
                witness: NondegeneracyWitness::SmallSubset(subset),
            };
        }
    }
    Nondegeneracy {
        nondegenerate: true,
        witness: NondegeneracyWitness::InCone(lambda),
    }
}

/// The homogeneous normal form `sum_k g_k |w_k|^2 = 0` left after scaling
/// the first equation of a bounded nondegenerate system to the unit
/// sphere. Each column is a positive multiple of the corresponding Gale
/// diagram vector in a fixed basis.
#[derive(Clone, PartialEq, Debug)]
pub struct LinkForm {
    pub g: Mat<Rational>,
}

impl LinkForm {
    /// Counts of positive and negative entries in one row.
    pub fn row_sign_counts(&self, row: usize) -> (usize, usize) {
        let mut pos = 0;
        let mut neg = 0;
        for k in 0..self.g.cols() {
            let v = self.g.at(row, k);
            if v.is_positive() {
                pos += 1;
            } else if v.is_negative() {
                neg += 1;
            }
        }
        (pos, neg)
    }
}

/// Computes the link normal form of a bounded nondegenerate system. The
/// sphere equation is eliminated by a functional `c` that is positive on
/// every column and scaled so `c . delta = 1`; the remaining rows are the
/// canonical basis of the orthogonal complement of delta, applied to the
/// columns and divided by their `c`-values. Each row is then signed so its
/// first nonzero entry is positive.
pub fn link_normal_form(q: &QuadricSystem) -> Result<LinkForm> {
    if !is_nondegenerate(q).nondegenerate {
        return Err(Error::Degenerate);
    }
    let columns = q.columns();
    let c0 = exists_positive_functional(&columns)
        .expect("columns share a dimension")
        .ok_or(Error::Unbounded)?;
    let scale = dot(&c0, &q.delta);
    assert!(
        scale.is_positive(),
        "a nondegenerate delta has positive pairing with the positive functional"
    );
    let c: Vec<Rational> = c0.iter().map(|v| v / &scale).collect();
    let delta_row = Mat::from_rows(alloc::vec![q.delta.clone()]);
    let d = delta_row.kernel_basis();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(d.rows());
    for j in 0..d.rows() {
        let mut row: Vec<Rational> = (0..q.m())
            .map(|k| dot(d.row(j), &columns[k]) / dot(&c, &columns[k]))
            .collect();
        if let Some(first) = row.iter().find(|v| !v.is_zero()) {
            if first.is_negative() {
                row = row.into_iter().map(|v| -v).collect();
            }
        }
        rows.push(row);
    }
    Ok(LinkForm {
        g: if rows.is_empty() {
            Mat::from_fn(0, q.m(), |_, _| Rational::zero())
        } else {
            Mat::from_rows(rows)
        },
    })
}

/// Classifies the level set of a bounded nondegenerate Hermitian system
/// when at most two quadrics remain after removing redundant coordinates.
/// Every removed coordinate contributes a circle factor; one remaining
/// quadric gives a sphere and two give a product of two odd spheres read
/// off the link form's sign counts. More quadrics return an honest
/// `Unclassified`.
pub fn classify_intersection_small(q: &QuadricSystem) -> Result<TopologyDescription> {
    if q.realm != Realm::Hermitian {
        return Err(Error::WrongRealm);
    }
    if !is_nondegenerate(q).nondegenerate {
        return Err(Error::Degenerate);
    }
    let p = polyhedron_from_quadrics(q)?;
    let analysis = analyze_presentation(&p);
    if !analysis.bounded {
        return Err(Error::Unbounded);
    }
    let circles = analysis.redundant.len();
    let kept: Vec<usize> = (0..p.m())
        .filter(|i| !analysis.redundant.contains(i))
        .collect();
    let cols: Vec<Vec<Rational>> = kept.iter().map(|&i| p.normal(i)).collect();
    let b: Vec<Rational> = kept.iter().map(|&i| p.b()[i].clone()).collect();
    let stripped = Presentation::from_columns(&cols, b)
        .expect("removing redundant inequalities keeps the normals spanning");
    let codim = stripped.m() - stripped.n();
    match codim {
        0 => Ok(TopologyDescription::SphereProductTorus {
            sphere_dims: Vec::new(),
            torus_dim: circles,
        }),
        1 => Ok(TopologyDescription::SphereProductTorus {
            sphere_dims: alloc::vec![2 * stripped.m() - 1],
            torus_dim: circles,
        }),
        2 => {
            let form = link_normal_form(&quadrics_from_presentation(&stripped))?;
            let (pos, neg) = form.row_sign_counts(0);
            assert_eq!(
                pos + neg,
                stripped.m(),
                "an irredundant nondegenerate two-quadric link form has no zero entries"
            );
            let mut sphere_dims = alloc::vec![2 * pos - 1, 2 * neg - 1];
            sphere_dims.sort_unstable();
            Ok(TopologyDescription::SphereProductTorus {
                sphere_dims,
                torus_dim: circles,
            })
        }
        _ => Ok(TopologyDescription::Unclassified {
            reason: format!(
                "{codim} independent quadrics remain; such level sets are reported through cohomology only"
            ),
        }),
    }
}

/// Finite stabilizer of the torus action over one vertex of the
/// associated polyhedron, recorded by the vertex's active set.
#[derive(Clone, PartialEq, Debug)]
pub struct VertexStabilizer {
    pub support: Vec<usize>,
    pub torsion: Vec<BigInt>,
}

/// Diagnostics for the moment map of the torus action on the level set.
#[derive(Clone, PartialEq, Debug)]
pub struct MomentMapReport {
    /// The map is proper: there is a positive relation among the columns
    /// of the dual presentation's normal matrix.
    pub proper: bool,
    /// delta is a regular value, equivalently the system is nondegenerate.
    pub regular_value: bool,
    /// The torus action on the level set is free, equivalently the
    /// associated polyhedron satisfies the Delzant condition.
    pub action_free: bool,
    pub stabilizers: Vec<VertexStabilizer>,
    pub note: Option<String>,
}

/// Computes properness, regularity, freeness, and per-vertex stabilizers.
/// Stabilizers compare the lattice generated by all columns with the
/// sublattice generated by the columns inactive at the vertex.
pub fn moment_map_report(q: &QuadricSystem) -> MomentMapReport {
    let a = q.gamma.kernel_basis();
    let a_cols: Vec<Vec<Rational>> = (0..a.cols()).map(|k| a.col_vec(k)).collect();
    let proper = exists_positive_relation(&a_cols)
        .expect("columns share a dimension")
        .is_some();
    let regular_value = is_nondegenerate(q).nondegenerate;
    let presentation = if q.gamma.rank() == q.codim() {
        q.gamma
            .solve(&q.delta)
            .map(|b| Presentation::new(q.gamma.kernel_basis(), b))
            .transpose()
            .expect("canonical kernel bases have independent rows")
    } else {
        None
    };
    let action_free = match &presentation {
        Some(p) if regular_value && proper => {
            is_delzant(p)
                .expect("nondegenerate bounded systems have generic bounded polyhedra")
                .delzant
        }
        _ => false,
    };
    let mut stabilizers = Vec::new();
    if let Some(p) = &presentation {
        let columns = q.columns();
        let lattice = Lattice::from_generators(q.codim(), &columns)
            .expect("columns live in the codimension space");
        for v in enumerate_vertices(p).vertices {
            let complement: Vec<Vec<Rational>> = (0..q.m())
                .filter(|j| !v.active.contains(j))
                .map(|j| columns[j].clone())
                .collect();
            let sub = Lattice::from_generators(q.codim(), &complement)
                .expect("columns live in the codimension space");
            let shape = lattice
                .quotient(&sub)
                .expect("a sublattice generated by a subset of the columns");
            stabilizers.push(VertexStabilizer {
                support: v.active,
                torsion: shape.torsion,
            });
        }
    }
    let note = diagonal_circle_note(q);
    MomentMapReport {
        proper,
        regular_value,
        action_free,
        stabilizers,
        note,
    }
}

fn diagonal_circle_note(q: &QuadricSystem) -> Option<String> {
    if q.codim() != 1 || q.m() == 0 {
        return None;
    }
    let first = q.gamma.at(0, 0);
    if first.is_zero() {
        return None;
    }
    if (1..q.m()).all(|k| q.gamma.at(0, k) == first) {
        Some(format!(
            "all coefficients equal: the circle acts diagonally and the ambient toric variety is CP^{}",
            q.m() - 1
        ))
    } else {
        None
    }
}
