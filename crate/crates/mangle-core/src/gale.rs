//! Gale duality: linear duals of normal configurations and affine Gale
//! diagrams of normalized polytopes.

use alloc::vec::Vec;

use crate::lp::{feasible_nonneg, LpOutcome};
use crate::matrix::Mat;
use crate::presentation::{analyze_presentation, Presentation};
use crate::scalar::{rat, Field, Rational};
use crate::{Error, Result};

/// Computes the Gale dual of a full-rank `n x m` normal matrix: the
/// canonical `(m-n) x m` kernel basis, so that `Gamma A^T = 0`.
pub fn gale_dual(a: &Mat<Rational>) -> Result<Mat<Rational>> {
    let rank = a.rank();
    if rank != a.rows() {
        return Err(Error::RankDeficient {
            rank,
            required: a.rows(),
        });
    }
    Ok(a.kernel_basis())
}

/// Affine Gale diagram of a normalized bounded presentation: columns
/// `g_i` with `G A^T = 0` and `sum_i g_i = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct GaleDiagram {
    g: Mat<Rational>,
}

impl GaleDiagram {
    pub fn matrix(&self) -> &Mat<Rational> {
        &self.g
    }

    /// Number of points (columns).
    pub fn m(&self) -> usize {
        self.g.cols()
    }

    /// Dimension of the diagram, `m - n - 1`.
    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn point(&self, i: usize) -> Vec<Rational> {
        self.g.col_vec(i)
    }
}

/// Builds the Gale diagram of a bounded presentation with all `b_i = 1`:
/// the canonical basis of affine dependencies among the normals.
pub fn gale_diagram(p: &Presentation) -> Result<GaleDiagram> {
    if p.b().iter().any(|b| *b != rat(1)) {
        return Err(Error::NotNormalized);
    }
    if !analyze_presentation(p).bounded {
        return Err(Error::Unbounded);
    }
    let n = p.n();
    let m = p.m();
    let stacked = Mat::from_fn(n + 1, m, |i, j| {
        if i < n {
            p.a().at(i, j).clone()
        } else {
            rat(1)
        }
    });
    let g = stacked.kernel_basis();
    debug_assert_eq!(g.rows(), m - n - 1);
    Ok(GaleDiagram { g })
}

/// Decides whether the face `F_I` cut out by the inequalities in `i_set`
/// is nonempty, reading the answer off the Gale diagram: the face is
/// nonempty exactly when the origin lies in the convex hull of the
/// complementary diagram points.
pub fn face_from_gale(g: &GaleDiagram, i_set: &[usize]) -> Result<bool> {
    let m = g.m();
    for &i in i_set {
        if i >= m {
            return Err(Error::IndexOutOfRange { index: i, bound: m });
        }
    }
    let complement: Vec<usize> = (0..m).filter(|j| !i_set.contains(j)).collect();
    if complement.is_empty() {
        return Ok(false);
    }
    let dim = g.dim();
    let c = Mat::from_fn(dim + 1, complement.len(), |r, k| {
        if r < dim {
            g.g.at(r, complement[k]).clone()
        } else {
            rat(1)
        }
    });
    let mut d = alloc::vec![Rational::zero(); dim];
    d.push(rat(1));
    Ok(matches!(feasible_nonneg(&c, &d), LpOutcome::Feasible(_)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{enumerate_vertices, normalize_to_unit_b};

    fn simplex(n: usize) -> Presentation {
        let mut cols: Vec<Vec<Rational>> = Vec::new();
        for i in 0..n {
            let mut e = alloc::vec![rat(0); n];
            e[i] = rat(1);
            cols.push(e);
        }
        cols.push(alloc::vec![rat(-1); n]);
        let mut b = alloc::vec![rat(0); n];
        b.push(rat(1));
        Presentation::from_columns(&cols, b).unwrap()
    }

    fn square() -> Presentation {
        Presentation::from_i64_columns(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[0, 0, 1, 1])
            .unwrap()
    }

    fn pentagon() -> Presentation {
        Presentation::from_i64_columns(
            &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[-1, -1]],
            &[0, 0, 2, 2, 3],
        )
        .unwrap()
    }

    #[test]
    fn simplex_dual_is_all_ones() {
        for n in 1..=4 {
            let p = simplex(n);
            let gamma = gale_dual(p.a()).unwrap();
            assert_eq!(gamma.rows(), 1);
            for j in 0..=n {
                assert_eq!(*gamma.at(0, j), rat(1));
            }
        }
    }

    #[test]
    fn square_dual_pairs_opposite_facets() {
        let gamma = gale_dual(square().a()).unwrap();
        assert_eq!(gamma.rows(), 2);
        assert_eq!(gamma.row_vec(0), alloc::vec![rat(1), rat(0), rat(1), rat(0)]);
        assert_eq!(gamma.row_vec(1), alloc::vec![rat(0), rat(1), rat(0), rat(1)]);
    }

    #[test]
    fn dual_annihilates_normals() {
        let p = pentagon();
        let gamma = gale_dual(p.a()).unwrap();
        assert_eq!(gamma.rows(), 3);
        let product = gamma.matmul(&p.a().transpose());
        assert!(product.is_zero());
    }

    #[test]
    fn simplex_diagram_is_empty() {
        let p = normalize_to_unit_b(&simplex(2)).unwrap();
        let g = gale_diagram(&p).unwrap();
        assert_eq!(g.dim(), 0);
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn square_diagram_pattern() {
        let p = normalize_to_unit_b(&square()).unwrap();
        let g = gale_diagram(&p).unwrap();
        assert_eq!(g.dim(), 1);
        assert_eq!(g.point(0), g.point(2));
        assert_eq!(g.point(1), g.point(3));
        let sum = g.point(0)[0].clone() + g.point(1)[0].clone();
        assert!(sum.is_zero());
        assert!(!g.point(0)[0].is_zero());
    }

    #[test]
    fn diagram_columns_sum_to_zero() {
        let p = normalize_to_unit_b(&pentagon()).unwrap();
        let g = gale_diagram(&p).unwrap();
        assert_eq!(g.dim(), 2);
        for r in 0..g.dim() {
            let mut acc = Rational::zero();
            for j in 0..g.m() {
                acc += g.matrix().at(r, j);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn diagram_requires_unit_b() {
        assert_eq!(gale_diagram(&pentagon()).unwrap_err(), Error::NotNormalized);
    }

    #[test]
    fn diagram_requires_bounded() {
        let p = Presentation::from_i64_columns(&[&[1, 0], &[0, 1], &[-1, 1]], &[1, 1, 1])
            .unwrap();
        assert_eq!(gale_diagram(&p).unwrap_err(), Error::Unbounded);
    }

    #[test]
    fn faces_match_vertex_active_sets() {
        let p = normalize_to_unit_b(&pentagon()).unwrap();
        let g = gale_diagram(&p).unwrap();
        let vd = enumerate_vertices(&p);
        for i in 0..5usize {
            for j in (i + 1)..5usize {
                let expected = vd
                    .vertices
                    .iter()
                    .any(|v| v.active.contains(&i) && v.active.contains(&j));
                assert_eq!(
                    face_from_gale(&g, &[i, j]).unwrap(),
                    expected,
                    "pair ({i},{j})"
                );
            }
        }
        assert!(face_from_gale(&g, &[]).unwrap());
        assert!(!face_from_gale(&g, &[0, 1, 2, 3, 4]).unwrap());
    }

    #[test]
    fn face_query_checks_bounds() {
        let p = normalize_to_unit_b(&square()).unwrap();
        let g = gale_diagram(&p).unwrap();
        assert_eq!(
            face_from_gale(&g, &[7]).unwrap_err(),
            Error::IndexOutOfRange { index: 7, bound: 4 }
        );
    }
}
