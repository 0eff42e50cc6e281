//! Simplicial complexes on a ground set `{0, .., m-1}` with ghost
//! vertices, stored as bit masks.
//!
//! The empty simplex always belongs to the complex. A ghost vertex is a
//! ground-set element that appears in no face; ghosts matter because the
//! associated moment-angle space gains a circle factor per ghost.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::Mat;
use crate::presentation::{analyze_presentation, enumerate_vertices, Presentation, Status};
use crate::scalar::{rat, Field, Rational};
use crate::{Error, Result};

pub const MAX_GROUND_SET: usize = 31;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    m: usize,
    faces: BTreeSet<u32>,
}

pub(crate) fn mask_of(indices: &[usize]) -> u32 {
    let mut mask = 0u32;
    for &i in indices {
        mask |= 1 << i;
    }
    mask
}

pub(crate) fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

impl SimplicialComplex {
    /// Builds the downward closure of the given faces on `m` vertices.
    pub fn from_faces(m: usize, faces: &[Vec<usize>]) -> Result<Self> {
        if m > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge {
                m,
                max: MAX_GROUND_SET,
            });
        }
        let mut set = BTreeSet::new();
        set.insert(0u32);
        for face in faces {
            for &i in face {
                if i >= m {
                    return Err(Error::IndexOutOfRange { index: i, bound: m });
                }
            }
            let full = mask_of(face);
            let mut sub = full;
            loop {
                set.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & full;
            }
        }
        Ok(SimplicialComplex { m, faces: set })
    }

    /// The complex `{ empty set }` on `m` ghost vertices.
    pub fn empty(m: usize) -> Result<Self> {
        SimplicialComplex::from_faces(m, &[])
    }

    /// Boundary of the `(m-1)`-simplex: all proper subsets of `[m]`.
    pub fn simplex_boundary(m: usize) -> Result<Self> {
        let mut faces = Vec::new();
        for drop in 0..m {
            faces.push((0..m).filter(|&i| i != drop).collect());
        }
        SimplicialComplex::from_faces(m, &faces)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn contains_mask(&self, mask: u32) -> bool {
        self.faces.contains(&mask)
    }

    pub fn contains(&self, indices: &[usize]) -> bool {
        self.contains_mask(mask_of(indices))
    }

    pub fn face_masks(&self) -> impl Iterator<Item = u32> + '_ {
        self.faces.iter().copied()
    }

    pub fn faces_of_card(&self, k: usize) -> Vec<u32> {
        self.faces
            .iter()
            .copied()
            .filter(|f| f.count_ones() as usize == k)
            .collect()
    }

    /// Largest cardinality of a face.
    pub fn max_card(&self) -> usize {
        self.faces
            .iter()
            .map(|f| f.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Dimension of the complex; `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.max_card() as isize - 1
    }

    /// Ground-set elements that appear in no face.
    pub fn ghosts(&self) -> Vec<usize> {
        (0..self.m)
            .filter(|&i| !self.contains_mask(1 << i))
            .collect()
    }

    /// Faces not properly contained in another face.
    pub fn maximal_faces(&self) -> Vec<u32> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| {
                !self
                    .faces
                    .iter()
                    .any(|&g| g != f && g & f == f)
            })
            .collect()
    }

    /// Subsets of the ground set that are not faces but whose proper
    /// subsets all are; ghosts appear as singletons.
    pub fn minimal_nonfaces(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let total: u64 = 1u64 << self.m;
        for mask in 1..total {
            let mask = mask as u32;
            if self.contains_mask(mask) {
                continue;
            }
            let mut minimal = true;
            for i in 0..self.m {
                let bit = 1u32 << i;
                if mask & bit != 0 && !self.contains_mask(mask & !bit) {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                out.push(mask);
            }
        }
        out
    }

    /// Join of two complexes on the disjoint union of their ground sets.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let m = self.m + other.m;
        if m > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge {
                m,
                max: MAX_GROUND_SET,
            });
        }
        let mut faces = BTreeSet::new();
        for &a in &self.faces {
            for &b in &other.faces {
                faces.insert(a | (b << self.m));
            }
        }
        Ok(SimplicialComplex { m, faces })
    }

    /// Full subcomplex on the (sorted) vertex subset, re-indexed to
    /// `{0, .., |subset|-1}`.
    pub fn full_subcomplex(&self, subset: &[usize]) -> Result<SimplicialComplex> {
        for &i in subset {
            if i >= self.m {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    bound: self.m,
                });
            }
        }
        let sub_mask = mask_of(subset);
        let mut faces = BTreeSet::new();
        for &f in &self.faces {
            if f & sub_mask == f {
                let mut re = 0u32;
                for (new, &old) in subset.iter().enumerate() {
                    if f & (1 << old) != 0 {
                        re |= 1 << new;
                    }
                }
                faces.insert(re);
            }
        }
        Ok(SimplicialComplex {
            m: subset.len(),
            faces,
        })
    }

    /// Face numbers `(f_{-1}=1, f_0, .., f_{dim})`.
    pub fn f_vector(&self) -> Vec<u64> {
        let n = self.max_card();
        let mut f = vec![0u64; n + 1];
        for &face in &self.faces {
            f[face.count_ones() as usize] += 1;
        }
        f
    }

    /// The `h`-vector `(h_0, .., h_n)` defined by
    /// `sum_i f_{i-1} (t-1)^{n-i} = sum_k h_k t^{n-k}`.
    pub fn h_vector(&self) -> Vec<i64> {
        let f = self.f_vector();
        let n = self.max_card();
        let mut poly = vec![0i64; n + 1];
        for (i, &fi) in f.iter().enumerate() {
            let d = n - i;
            for j in 0..=d {
                let sign = if (d - j) % 2 == 0 { 1 } else { -1 };
                poly[j] += fi as i64 * sign * binomial(d, j);
            }
        }
        (0..=n).map(|k| poly[n - k]).collect()
    }

    /// Reduced Euler characteristic `sum_{faces} (-1)^{card - 1}`.
    pub fn reduced_euler(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| {
                if f.count_ones() % 2 == 0 {
                    -1i64
                } else {
                    1i64
                }
            })
            .sum()
    }

    /// Dimensions of reduced rational cohomology, indexed from degree
    /// `-1` (slot 0) up to the dimension of the complex.
    pub fn reduced_cohomology_dims(&self) -> Vec<usize> {
        let n = self.max_card();
        let by_card: Vec<Vec<u32>> = (0..=n).map(|k| self.faces_of_card(k)).collect();
        let mut boundary_ranks = vec![0usize; n + 1];
        for k in 1..=n {
            let rows = &by_card[k - 1];
            let cols = &by_card[k];
            if rows.is_empty() || cols.is_empty() {
                continue;
            }
            let mat = Mat::from_fn(rows.len(), cols.len(), |r, c| {
                boundary_coefficient(cols[c], rows[r])
            });
            boundary_ranks[k] = mat.rank();
        }
        let mut dims = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let cells = by_card[k].len();
            let rank_out = boundary_ranks[k];
            let rank_in = if k < n { boundary_ranks[k + 1] } else { 0 };
            dims.push(cells - rank_out - rank_in);
        }
        dims
    }

    /// Reduced cohomology dimension in a single degree (`-1`-based
    /// degrees; out-of-range degrees give zero).
    pub fn reduced_cohomology_dim(&self, degree: isize) -> usize {
        let slot = degree + 1;
        if slot < 0 {
            return 0;
        }
        let dims = self.reduced_cohomology_dims();
        dims.get(slot as usize).copied().unwrap_or(0)
    }

    /// Tests the combinatorial sphere conditions on the non-ghost part:
    /// purity, every ridge in exactly two facets, ridge-connectivity, and
    /// the Euler characteristic of a sphere. `true` is a strong signal,
    /// not a proof, that the complex triangulates a sphere.
    pub fn passes_sphere_checks(&self) -> bool {
        let support: Vec<usize> = (0..self.m)
            .filter(|&i| self.contains_mask(1 << i))
            .collect();
        if support.is_empty() {
            return true;
        }
        let k = self.full_subcomplex(&support).expect("support is in range");
        let nk = k.max_card();
        let facets = k.faces_of_card(nk);
        if k.maximal_faces().len() != facets.len() {
            return false;
        }
        let ridges = k.faces_of_card(nk - 1);
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
        let expected = if nk % 2 == 0 { -1 } else { 1 };
        k.reduced_euler() == expected
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

fn boundary_coefficient(face: u32, sub: u32) -> Rational {
    if face & sub != sub || (face ^ sub).count_ones() != 1 {
        return Rational::zero();
    }
    let dropped = (face ^ sub).trailing_zeros();
    let below = (face & ((1 << dropped) - 1)).count_ones();
    if below % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Face and `h`-vector of a pure complex; ghosts are ignored, and purity
/// of the non-ghost part is required.
pub fn fh_vectors(k: &SimplicialComplex) -> Result<(Vec<u64>, Vec<i64>)> {
    let n = k.max_card();
    if k
        .maximal_faces()
        .iter()
        .any(|f| f.count_ones() as usize != n)
    {
        return Err(Error::NotPure);
    }
    Ok((k.f_vector(), k.h_vector()))
}

/// Nerve of a bounded presentation: the complex of index sets cutting out
/// nonempty faces. Redundant inequalities become ghost vertices.
pub fn nerve(p: &Presentation) -> Result<SimplicialComplex> {
    let analysis = analyze_presentation(p);
    if analysis.status == Status::Empty {
        return Err(Error::EmptyPolyhedron);
    }
    if !analysis.bounded {
        return Err(Error::Unbounded);
    }
    let vd = enumerate_vertices(p);
    let faces: Vec<Vec<usize>> = vd.vertices.iter().map(|v| v.active.clone()).collect();
    SimplicialComplex::from_faces(p.m(), &faces)
}

/// One cell of the moment-angle complex: a disc factor per face element
/// and a circle factor per non-element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentAngleCell {
    pub face: Vec<usize>,
    pub disc_dim: usize,
    pub torus_dim: usize,
}

impl MomentAngleCell {
    pub fn total_dim(&self) -> usize {
        self.disc_dim + self.torus_dim
    }
}

/// The moment-angle complex `Z_K` described cell by cell.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentAngleComplex {
    pub cells: Vec<MomentAngleCell>,
    pub total_dim: usize,
    /// Passes the sphere checks on the non-ghost part, which makes the
    /// complex a manifold for every bundled example class.
    pub manifold: bool,
}

/// Builds the cell catalogue of the moment-angle complex of `k`.
pub fn moment_angle_cells(k: &SimplicialComplex) -> MomentAngleComplex {
    let m = k.m();
    let cells: Vec<MomentAngleCell> = k
        .face_masks()
        .map(|mask| {
            let face = indices_of(mask);
            let card = face.len();
            MomentAngleCell {
                face,
                disc_dim: 2 * card,
                torus_dim: m - card,
            }
        })
        .collect();
    MomentAngleComplex {
        total_dim: m + k.max_card(),
        manifold: k.passes_sphere_checks(),
        cells,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon_cycle() -> SimplicialComplex {
        SimplicialComplex::from_faces(
            5,
            &[vec![0, 1], vec![1, 2], vec![2, 4], vec![3, 4], vec![0, 3]],
        )
        .unwrap()
    }

    #[test]
    fn closure_and_ghosts() {
        let k = SimplicialComplex::from_faces(4, &[vec![0, 1, 2]]).unwrap();
        assert!(k.contains(&[0, 2]));
        assert!(k.contains(&[]));
        assert_eq!(k.ghosts(), vec![3]);
        assert_eq!(k.max_card(), 3);
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn simplex_boundary_counts() {
        let k = SimplicialComplex::simplex_boundary(3).unwrap();
        assert_eq!(k.f_vector(), vec![1, 3, 3]);
        assert_eq!(k.h_vector(), vec![1, 1, 1]);
        assert_eq!(k.dim(), 1);
        assert!(k.passes_sphere_checks());
    }

    #[test]
    fn pentagon_fh_vectors() {
        let k = pentagon_cycle();
        assert_eq!(k.f_vector(), vec![1, 5, 5]);
        assert_eq!(k.h_vector(), vec![1, 3, 1]);
        assert!(k.passes_sphere_checks());
    }

    #[test]
    fn join_of_boundaries() {
        let a = SimplicialComplex::simplex_boundary(2).unwrap();
        let b = SimplicialComplex::simplex_boundary(3).unwrap();
        let j = a.join(&b).unwrap();
        assert_eq!(j.m(), 5);
        assert_eq!(j.f_vector(), vec![1, 5, 9, 6]);
        assert_eq!(j.h_vector(), vec![1, 2, 2, 1]);
        assert!(j.passes_sphere_checks());
        assert_eq!(j.reduced_euler(), 1);
    }

    #[test]
    fn empty_complex_is_minus_one_sphere() {
        let k = SimplicialComplex::empty(3).unwrap();
        assert_eq!(k.dim(), -1);
        assert_eq!(k.ghosts(), vec![0, 1, 2]);
        assert!(k.passes_sphere_checks());
        assert_eq!(k.reduced_cohomology_dims(), vec![1]);
    }

    #[test]
    fn minimal_nonfaces_of_cycle() {
        let k = pentagon_cycle();
        let nf = k.minimal_nonfaces();
        assert_eq!(nf.len(), 5);
        assert!(nf.iter().all(|f| f.count_ones() == 2));
        assert!(nf.contains(&mask_of(&[0, 2])));
    }

    #[test]
    fn ghost_is_minimal_nonface() {
        let k = SimplicialComplex::from_faces(3, &[vec![0, 1]]).unwrap();
        let nf = k.minimal_nonfaces();
        assert_eq!(nf, vec![mask_of(&[2])]);
    }

    #[test]
    fn circle_cohomology() {
        let k = pentagon_cycle();
        assert_eq!(k.reduced_cohomology_dims(), vec![0, 0, 1]);
        assert_eq!(k.reduced_cohomology_dim(1), 1);
        assert_eq!(k.reduced_cohomology_dim(-1), 0);
    }

    #[test]
    fn two_points_cohomology() {
        let k = SimplicialComplex::from_faces(2, &[vec![0], vec![1]]).unwrap();
        assert_eq!(k.reduced_cohomology_dims(), vec![0, 1]);
        assert!(k.passes_sphere_checks());
    }

    #[test]
    fn disc_fails_sphere_checks() {
        let k = SimplicialComplex::from_faces(3, &[vec![0, 1, 2]]).unwrap();
        assert!(!k.passes_sphere_checks());
    }

    #[test]
    fn full_subcomplex_of_cycle() {
        let k = pentagon_cycle();
        let sub = k.full_subcomplex(&[0, 1, 2]).unwrap();
        assert_eq!(sub.f_vector(), vec![1, 3, 2]);
        assert_eq!(sub.reduced_cohomology_dims(), vec![0, 0, 0]);
        let opposite = k.full_subcomplex(&[0, 2]).unwrap();
        assert_eq!(opposite.reduced_cohomology_dims(), vec![0, 1]);
    }

    #[test]
    fn nerve_of_pentagon_presentation() {
        let p = Presentation::from_i64_columns(
            &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[-1, -1]],
            &[0, 0, 2, 2, 3],
        )
        .unwrap();
        let k = nerve(&p).unwrap();
        assert_eq!(k.f_vector(), vec![1, 5, 5]);
        assert!(k.passes_sphere_checks());
        assert!(k.contains(&[0, 1]));
        assert!(!k.contains(&[0, 2]));
    }

    #[test]
    fn nerve_ghosts_from_redundancy() {
        let p = Presentation::from_i64_columns(
            &[&[1, 0], &[0, 1], &[-1, -1], &[-1, -1]],
            &[0, 0, 1, 2],
        )
        .unwrap();
        let k = nerve(&p).unwrap();
        assert_eq!(k.ghosts(), vec![3]);
        assert_eq!(k.f_vector(), vec![1, 3, 3]);
    }

    #[test]
    fn moment_angle_cells_of_simplex_boundary() {
        for m in 2..=5usize {
            let k = SimplicialComplex::simplex_boundary(m).unwrap();
            let z = moment_angle_cells(&k);
            assert_eq!(z.total_dim, 2 * m - 1);
            assert!(z.manifold);
            assert_eq!(z.cells.len(), (1usize << m) - 1);
        }
    }

    #[test]
    fn moment_angle_torus_from_ghosts() {
        let k = SimplicialComplex::empty(2).unwrap();
        let z = moment_angle_cells(&k);
        assert_eq!(z.total_dim, 2);
        assert!(z.manifold);
        assert_eq!(z.cells.len(), 1);
        assert_eq!(z.cells[0].torus_dim, 2);
    }
}
