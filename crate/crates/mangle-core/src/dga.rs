//! A bigraded differential algebra engine: exterior generators in
//! bidegrees (1,0) and (0,1) over a graded base ring whose generators sit
//! in bidegree (1,1), with a differential of bidegree (0,1) that vanishes
//! on the base and on the (0,1) generators.
//!
//! Because the differential preserves the first grading, the total
//! complex splits as a direct sum over it, so the per-total-degree ranks
//! reported by [`BigradedDGA::betti`] are exact, not spectral-sequence
//! bounds.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::Mat;
use crate::scalar::Field;
use crate::toric::GradedRingData;
use crate::{Error, Result};

/// An exterior generator: `holomorphic` selects bidegree (1,0), whose
/// differential is a degree-one base class, over bidegree (0,1), which is
/// closed. Both have total degree one.
#[derive(Clone, PartialEq, Debug)]
pub struct ExtGenerator<F: Field> {
    pub name: String,
    pub holomorphic: bool,
    pub differential: Vec<F>,
}

impl<F: Field> ExtGenerator<F> {
    pub fn closed(name: String, holomorphic: bool, dim1: usize) -> Self {
        ExtGenerator {
            name,
            holomorphic,
            differential: vec![F::zero(); dim1],
        }
    }
}

/// An exterior algebra on [`ExtGenerator`]s tensored with a
/// [`GradedRingData`] base, carrying the induced derivation.
#[derive(Clone, PartialEq, Debug)]
pub struct BigradedDGA<F: Field> {
    base: GradedRingData<F>,
    generators: Vec<ExtGenerator<F>>,
    holo_mask: u32,
}

const MAX_GENERATORS: usize = 31;

impl<F: Field> BigradedDGA<F> {
    /// Checks the differential lengths, that (0,1) generators are closed,
    /// and that the induced derivation squares to zero on every bidegree.
    pub fn new(base: GradedRingData<F>, generators: Vec<ExtGenerator<F>>) -> Result<Self> {
        if generators.len() > MAX_GENERATORS {
            return Err(Error::GroundSetTooLarge {
                m: generators.len(),
                max: MAX_GENERATORS,
            });
        }
        let dim1 = base.dim(1);
        for g in &generators {
            if g.differential.len() != dim1 {
                return Err(Error::DimensionMismatch {
                    expected: dim1,
                    got: g.differential.len(),
                });
            }
            if !g.holomorphic && g.differential.iter().any(|c| !c.is_zero()) {
                return Err(Error::Internal(
                    "a (0,1) generator carries a nonzero differential".into(),
                ));
            }
        }
        let holo_mask = generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.holomorphic)
            .fold(0u32, |acc, (t, _)| acc | 1 << t);
        let dga = BigradedDGA {
            base,
            generators,
            holo_mask,
        };
        dga.verify_square_zero()?;
        Ok(dga)
    }

    pub fn base(&self) -> &GradedRingData<F> {
        &self.base
    }

    pub fn generators(&self) -> &[ExtGenerator<F>] {
        &self.generators
    }

    /// Largest first grading with nonzero entries.
    pub fn p_max(&self) -> usize {
        self.holo_mask.count_ones() as usize + self.base.top()
    }

    /// Largest second grading with nonzero entries.
    pub fn q_max(&self) -> usize {
        let anti = self.generators.len() - self.holo_mask.count_ones() as usize;
        anti + self.base.top()
    }

    /// Basis of the bidegree-(p, q) piece: triples of a generator mask, a
    /// base degree, and a base basis index, masks ascending.
    fn bidegree_basis(&self, p: usize, q: usize) -> Vec<(u32, usize, usize)> {
        let full: u32 = if self.generators.is_empty() {
            0
        } else {
            (1u32 << self.generators.len()) - 1
        };
        let mut out = Vec::new();
        for mask in 0..=full {
            let a = (mask & self.holo_mask).count_ones() as usize;
            let b = (mask & !self.holo_mask & full).count_ones() as usize;
            if a > p || b > q || p - a != q - b {
                continue;
            }
            let s = p - a;
            for idx in 0..self.base.dim(s) {
                out.push((mask, s, idx));
            }
        }
        out
    }

    /// Matrix of the differential from the span of `cols` to the span of
    /// `rows`, acting on coordinate columns.
    fn d_matrix(&self, cols: &[(u32, usize, usize)], rows: &[(u32, usize, usize)]) -> Mat<F> {
        let row_index: BTreeMap<(u32, usize, usize), usize> = rows
            .iter()
            .enumerate()
            .map(|(i, &key)| (key, i))
            .collect();
        let mut mat: Mat<F> = Mat::zero(rows.len(), cols.len());
        for (c, &(mask, s, idx)) in cols.iter().enumerate() {
            for t in 0..self.generators.len() {
                if mask >> t & 1 == 0 || !self.generators[t].holomorphic {
                    continue;
                }
                let flip = (mask & ((1u32 << t) - 1)).count_ones() % 2 == 1;
                for (vc, coeff) in self.generators[t].differential.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    for (tidx, w) in self.base.product(1, vc, s, idx) {
                        let r = row_index[&(mask & !(1u32 << t), s + 1, tidx)];
                        let mut term = coeff.mul(&w);
                        if flip {
                            term = term.neg();
                        }
                        let updated = mat.at(r, c).add(&term);
                        *mat.at_mut(r, c) = updated;
                    }
                }
            }
        }
        mat
    }

    fn verify_square_zero(&self) -> Result<()> {
        for p in 0..=self.p_max() {
            let mut here = self.bidegree_basis(p, 1);
            let mut d_below = self.d_matrix(&self.bidegree_basis(p, 0), &here);
            for q in 1..=self.q_max() {
                let above = self.bidegree_basis(p, q + 1);
                let d_here = self.d_matrix(&here, &above);
                if !d_here.matmul(&d_below).is_zero() {
                    return Err(Error::Internal(
                        "differential does not square to zero".into(),
                    ));
                }
                here = above;
                d_below = d_here;
            }
        }
        Ok(())
    }

    /// Cohomology dimensions per bidegree; only nonzero entries appear.
    pub fn cohomology(&self) -> BTreeMap<(usize, usize), usize> {
        let mut table = BTreeMap::new();
        for p in 0..=self.p_max() {
            let mut prev_rank = 0usize;
            let mut cur = self.bidegree_basis(p, 0);
            for q in 0..=self.q_max() {
                let next = self.bidegree_basis(p, q + 1);
                let rank = self.d_matrix(&cur, &next).rank();
                let h = cur.len() - rank - prev_rank;
                if h > 0 {
                    table.insert((p, q), h);
                }
                prev_rank = rank;
                cur = next;
            }
        }
        table
    }

    /// Cohomology ranks of the total complex, per total degree.
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![0usize; self.p_max() + self.q_max() + 1];
        for ((p, q), h) in self.cohomology() {
            b[p + q] += h;
        }
        b
    }

    /// Tensor product of models: the bases are tensored and each factor's
    /// generators act on its own side.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let base = self.base.tensor(&other.base);
        let dim1 = base.dim(1);
        let offset = other.base.dim(1);
        let mut generators = Vec::with_capacity(self.generators.len() + other.generators.len());
        for g in &self.generators {
            let mut differential = vec![F::zero(); dim1];
            for (c, coeff) in g.differential.iter().enumerate() {
                differential[offset + c] = coeff.clone();
            }
            generators.push(ExtGenerator {
                name: g.name.clone(),
                holomorphic: g.holomorphic,
                differential,
            });
        }
        for g in &other.generators {
            let mut differential = vec![F::zero(); dim1];
            for (c, coeff) in g.differential.iter().enumerate() {
                differential[c] = coeff.clone();
            }
            generators.push(ExtGenerator {
                name: g.name.clone(),
                holomorphic: g.holomorphic,
                differential,
            });
        }
        BigradedDGA::new(base, generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::FanData;
    use crate::scalar::{rat, Rational};
    use crate::toric::toric_cohomology;
    use crate::complex::SimplicialComplex;
    use alloc::string::ToString;

    fn line_ring() -> GradedRingData<Rational> {
        let k = SimplicialComplex::from_faces(2, &[vec![0], vec![1]]).unwrap();
        let fan = FanData::new(k, vec![vec![rat(1)], vec![rat(-1)]]).unwrap();
        toric_cohomology(&fan).unwrap()
    }

    fn sphere_model() -> BigradedDGA<Rational> {
        let base = line_ring();
        let u = ExtGenerator {
            name: "u_1".to_string(),
            holomorphic: true,
            differential: vec![rat(1)],
        };
        BigradedDGA::new(base, vec![u]).unwrap()
    }

    #[test]
    fn one_sphere_factor() {
        let model = sphere_model();
        assert_eq!(model.betti(), vec![1, 0, 0, 1]);
        let table = model.cohomology();
        assert_eq!(table.get(&(0, 0)), Some(&1));
        assert_eq!(table.get(&(2, 1)), Some(&1));
        assert_eq!(table.len(), 2);
    }

    #[test]
    fn closed_generators_give_a_torus() {
        let point = GradedRingData::point();
        let gens = vec![
            ExtGenerator::closed("u_1".to_string(), true, 0),
            ExtGenerator::closed("u_2".to_string(), true, 0),
        ];
        let model: BigradedDGA<Rational> = BigradedDGA::new(point, gens).unwrap();
        assert_eq!(model.betti(), vec![1, 2, 1]);
        assert_eq!(model.cohomology().get(&(2, 0)), Some(&1));
    }

    #[test]
    fn mixed_bidegrees_split_the_square() {
        let point = GradedRingData::point();
        let gens = vec![
            ExtGenerator::closed("xi_1".to_string(), true, 0),
            ExtGenerator::closed("eta_1".to_string(), false, 0),
        ];
        let model: BigradedDGA<Rational> = BigradedDGA::new(point, gens).unwrap();
        let table = model.cohomology();
        for key in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            assert_eq!(table.get(&key), Some(&1));
        }
        assert_eq!(table.len(), 4);
    }

    #[test]
    fn tensor_of_spheres() {
        let model = sphere_model().tensor(&sphere_model()).unwrap();
        assert_eq!(model.betti(), vec![1, 0, 0, 2, 0, 0, 1]);
    }

    #[test]
    fn open_antiholomorphic_generator_rejected() {
        let base = line_ring();
        let eta = ExtGenerator {
            name: "eta_1".to_string(),
            holomorphic: false,
            differential: vec![rat(1)],
        };
        assert!(matches!(
            BigradedDGA::new(base, vec![eta]),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn differential_length_checked() {
        let base = line_ring();
        let u = ExtGenerator {
            name: "u_1".to_string(),
            holomorphic: true,
            differential: vec![rat(1), rat(2)],
        };
        assert!(matches!(
            BigradedDGA::new(base, vec![u]),
            Err(Error::DimensionMismatch { expected: 1, got: 2 })
        ));
    }
}
