//! Simplicial fans given by a complex plus marked generator vectors:
//! validity, completeness, rationality, regularity, Delzant testing,
//! normal fans, and Cox quotient data.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complex::{indices_of, nerve, SimplicialComplex};
use crate::intmat::{content, IMat};
use crate::lattice::Lattice;
use crate::lp::{in_cone, relint_intersects, ConeMembership};
use crate::matrix::Mat;
use crate::presentation::{
    analyze_presentation, enumerate_vertices, Presentation, Status, Vertex,
};
use crate::scalar::Rational;
use crate::{Error, Result};

/// A simplicial complex with one marked vector per ground-set element.
/// Ghost vertices may carry the zero vector.
#[derive(Clone, PartialEq, Debug)]
pub struct FanData {
    pub complex: SimplicialComplex,
    pub vectors: Vec<Vec<Rational>>,
}

impl FanData {
    pub fn new(complex: SimplicialComplex, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if vectors.len() != complex.m() {
            return Err(Error::DimensionMismatch {
                expected: complex.m(),
                got: vectors.len(),
            });
        }
        let n = vectors.first().map_or(0, Vec::len);
        for v in &vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        Ok(FanData { complex, vectors })
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    pub fn m(&self) -> usize {
        self.complex.m()
    }

    fn face_vectors(&self, mask: u32) -> Vec<Vec<Rational>> {
        indices_of(mask)
            .into_iter()
            .map(|i| self.vectors[i].clone())
            .collect()
    }
}

/// Verdicts of `validate_fan`.
#[derive(Clone, PartialEq, Debug)]
pub struct FanReport {
    /// Cones over distinct faces have disjoint relative interiors and
    /// every face's vectors are independent.
    pub is_fan: bool,
    /// A face whose vectors are dependent, when one exists.
    pub dependent_face: Option<Vec<usize>>,
    /// A pair of faces whose cones' relative interiors meet.
    pub overlap_pair: Option<(Vec<usize>, Vec<usize>)>,
    /// The cones cover all of `R^n` (decided by the ridge test).
    pub complete: bool,
    /// Every generator is a rational vector; always true here since the
    /// input type is rational.
    pub rational: bool,
    /// Every maximal cone's marked vectors extend to a basis of the
    /// standard lattice `Z^n` (all Smith invariant factors equal one).
    pub regular: bool,
    /// A maximal face failing regularity, when one exists.
    pub irregular_face: Option<Vec<usize>>,
    /// The lattice generated by the nonzero marked vectors.
    pub lattice: Lattice,
    /// Per vector, the positive factor relating it to its primitive
    /// integer representative (zero for zero vectors).
    pub primitivization: Vec<Rational>,
}

fn primitive_factor(v: &[Rational]) -> Rational {
    let mut lcm = BigInt::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let scaled: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = content(&scaled);
    if g.is_zero() {
        return Rational::zero();
    }
    Rational::new(g, lcm)
}

fn faces_as_indices(masks: &[u32]) -> Vec<Vec<usize>> {
    masks.iter().map(|&m| indices_of(m)).collect()
}

/// Checks fan validity, completeness, rationality, and regularity.
pub fn validate_fan(fan: &FanData) -> FanReport {
    let n = fan.n();
    let lattice = Lattice::from_generators(
        n,
        &fan.vectors
            .iter()
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .cloned()
            .collect::<Vec<_>>(),
    )
    .expect("vector dimensions were checked at construction");
    let primitivization: Vec<Rational> =
        fan.vectors.iter().map(|v| primitive_factor(v)).collect();

    let mut dependent_face = None;
    let faces: Vec<u32> = fan.complex.face_masks().collect();
    for &mask in &faces {
        let vs = fan.face_vectors(mask);
        if vs.is_empty() {
            continue;
        }
        let mat = Mat::from_fn(vs.len(), n, |i, j| vs[i][j].clone());
        if mat.rank() != vs.len() {
            dependent_face = Some(indices_of(mask));
            break;
        }
    }

    let mut overlap_pair = None;
    if dependent_face.is_none() {
        'outer: for (idx, &a) in faces.iter().enumerate() {
            for &b in faces.iter().skip(idx + 1) {
                let va = fan.face_vectors(a);
                let vb = fan.face_vectors(b);
                if relint_intersects(&va, &vb).expect("dimensions agree") {
                    overlap_pair = Some((indices_of(a), indices_of(b)));
                    break 'outer;
                }
            }
        }
    }
    let is_fan = dependent_face.is_none() && overlap_pair.is_none();

    let complete = is_fan && is_complete(fan);

    let mut regular = is_fan;
    let mut irregular_face = None;
    if is_fan {
        for &mask in &faces {
            let indices = indices_of(mask);
            if indices.is_empty() || !is_maximal(&faces, mask) {
                continue;
            }
            if !face_is_regular(fan, &indices) {
                regular = false;
                irregular_face = Some(indices);
                break;
            }
        }
    }

    FanReport {
        is_fan,
        dependent_face,
        overlap_pair,
        complete,
        rational: true,
        regular,
        irregular_face,
        lattice,
        primitivization,
    }
}

fn is_maximal(faces: &[u32], mask: u32) -> bool {
    !faces.iter().any(|&g| g != mask && g & mask == mask)
}

fn face_is_regular(fan: &FanData, indices: &[usize]) -> bool {
    let n = fan.n();
    let mat = Mat::from_fn(indices.len(), n, |i, j| fan.vectors[indices[i]][j].clone());
    let Ok(int) = IMat::try_from_rational(&mat) else {
        return false;
    };
    int.smith().diagonal.iter().all(|d| d.is_one()) && int.hermite().rank == indices.len()
}

/// Ridge test for covering `R^n`: purity, every ridge in exactly two
/// maximal cones, ridge-connectivity. A deterministic sample of
/// directions is then located in the fan as a cross-check; disagreement
/// would be a bug and panics.
fn is_complete(fan: &FanData) -> bool {
    let n = fan.n();
    let k = &fan.complex;
    if n == 0 {
        return k.max_card() == 0;
    }
    if k.max_card() != n {
        return false;
    }
    let facets = k.faces_of_card(n);
    if k.maximal_faces().len() != facets.len() {
        return false;
    }
    let ridges = k.faces_of_card(n - 1);
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); facets.len()];
    for &ridge in &ridges {
        let over: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, &f)| f & ridge == ridge)
            .map(|(i, _)| i)
            .collect();
        if over.len() != 2 {
            return false;
        }
        adjacency[over[0]].push(over[1]);
        adjacency[over[1]].push(over[0]);
    }
    let mut seen = vec![false; facets.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &j in &adjacency[i] {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return false;
    }
    for sample in sample_directions(n) {
        let covered = facets.iter().any(|&f| {
            let gens = fan.face_vectors(f);
            matches!(
                in_cone(&gens, &sample).expect("dimensions agree"),
                ConeMembership::Inside(_)
            )
        });
        assert!(
            covered,
            "ridge test reported complete but a sample direction is uncovered"
        );
    }
    true
}

fn sample_directions(n: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for signs in 0..(1u32 << n) {
        out.push(
            (0..n)
                .map(|i| {
                    if signs & (1 << i) != 0 {
                        crate::scalar::rat(-1)
                    } else {
                        crate::scalar::rat(1)
                    }
                })
                .collect(),
        );
    }
    for i in 0..n {
        for sign in [1i64, -1] {
            let mut e = vec![Rational::zero(); n];
            e[i] = crate::scalar::rat(sign);
            out.push(e);
        }
    }
    out
}

/// Outcome of the Delzant test.
#[derive(Clone, PartialEq, Debug)]
pub struct DelzantReport {
    pub delzant: bool,
    /// The lattice generated by all the normals.
    pub lattice: Lattice,
    /// A vertex whose active normals fail to be a lattice basis.
    pub failing_vertex: Option<Vertex>,
}

/// Tests the Delzant condition: at every vertex the active normals form a
/// basis of the lattice generated by all the normals.
pub fn is_delzant(p: &Presentation) -> Result<DelzantReport> {
    let analysis = analyze_presentation(p);
    if !analysis.generic {
        return Err(Error::NotGeneric);
    }
    if !analysis.bounded {
        return Err(Error::Unbounded);
    }
    let columns: Vec<Vec<Rational>> = (0..p.m()).map(|i| p.normal(i)).collect();
    let lattice = Lattice::from_generators(p.n(), &columns)?;
    let vd = enumerate_vertices(p);
    for v in &vd.vertices {
        let active: Vec<Vec<Rational>> = v.active.iter().map(|&i| p.normal(i)).collect();
        if !lattice.is_basis(&active)? {
            return Ok(DelzantReport {
                delzant: false,
                lattice,
                failing_vertex: Some(v.clone()),
            });
        }
    }
    Ok(DelzantReport {
        delzant: true,
        lattice,
        failing_vertex: None,
    })
}

/// Normal fan of a generic bounded presentation: the nerve complex with
/// the normals as marked vectors. The result always passes the
/// completeness test.
pub fn normal_fan(p: &Presentation) -> Result<FanData> {
    let analysis = analyze_presentation(p);
    if analysis.status == Status::Empty {
        return Err(Error::EmptyPolyhedron);
    }
    if !analysis.bounded {
        return Err(Error::Unbounded);
    }
    if !analysis.generic {
        return Err(Error::NotGeneric);
    }
    let complex = nerve(p)?;
    let vectors: Vec<Vec<Rational>> = (0..p.m()).map(|i| p.normal(i)).collect();
    let fan = FanData::new(complex, vectors)?;
    let report = validate_fan(&fan);
    assert!(
        report.is_fan && report.complete,
        "normal fan of a generic bounded presentation must be complete"
    );
    Ok(fan)
}

/// How the Cox quotient group acts on the arrangement complement.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoxAction {
    Free,
    AlmostFree,
    Neither,
}

/// Cox construction data for a fan with integer generators.
#[derive(Clone, PartialEq, Debug)]
pub struct CoxData {
    /// Generators of the coordinate arrangement (equivalently of the
    /// Stanley-Reisner ideal), as index sets.
    pub minimal_nonfaces: Vec<Vec<usize>>,
    /// Free rank of the quotient group, `m - n`.
    pub g_rank: usize,
    /// Finite cyclic factors of the quotient group.
    pub g_torsion: Vec<BigInt>,
    pub action: CoxAction,
}

/// Computes Cox quotient data: arrangement generators, the kernel group's
/// rank and torsion from the Smith form of the generator matrix, and the
/// action quality.
pub fn cox_data(fan: &FanData) -> Result<CoxData> {
    let n = fan.n();
    let m = fan.m();
    let mat = Mat::from_fn(n, m, |i, j| fan.vectors[j][i].clone());
    if mat.rank() != n {
        return Err(Error::SpanFailure);
    }
    let int = IMat::try_from_rational(&mat)?;
    let smith = int.smith();
    if smith.diagonal.len() != n {
        return Err(Error::SpanFailure);
    }
    let g_torsion: Vec<BigInt> = smith
        .diagonal
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    let report = validate_fan(fan);
    let action = if report.regular {
        CoxAction::Free
    } else if report.is_fan {
        CoxAction::AlmostFree
    } else {
        CoxAction::Neither
    };
    Ok(CoxData {
        minimal_nonfaces: faces_as_indices(&fan.complex.minimal_nonfaces()),
        g_rank: m - n,
        g_torsion,
        action,
    })
}
