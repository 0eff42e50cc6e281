//! Finitely generated lattices in rational space, with membership tests,
//! quotient invariants, and dual bases.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::intmat::{content, IMat};
use crate::scalar::Rational;
use crate::{Error, Result};

/// A lattice `(1/denom) * rowspan_Z(basis)` inside rational `ambient`-space.
///
/// The representation is canonical: `basis` is in row Hermite normal form
/// with no zero rows, and `denom` shares no common factor with the entries
/// of `basis`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    ambient: usize,
    denom: BigInt,
    basis: IMat,
}

/// Shape of a quotient of one lattice by a sublattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientShape {
    /// Finite cyclic factors, each dividing the next, all `> 1`.
    pub torsion: Vec<BigInt>,
    /// Rank of the free part.
    pub free_rank: usize,
}

impl QuotientShape {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }
}

impl Lattice {
    /// The standard integer lattice `Z^n`.
    pub fn standard(n: usize) -> Self {
        Lattice {
            ambient: n,
            denom: BigInt::one(),
            basis: IMat::identity(n),
        }
    }

    /// Lattice generated by the given rational vectors.
    pub fn from_generators(ambient: usize, generators: &[Vec<Rational>]) -> Result<Self> {
        let mut lcm = BigInt::one();
        for g in generators {
            if g.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: g.len(),
                });
            }
            for v in g {
                lcm = lcm.lcm(v.denom());
            }
        }
        let rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect()
            })
            .collect();
        let cleared = if rows.is_empty() {
            IMat::zero(0, ambient)
        } else {
            IMat::from_rows(rows)
        };
        Ok(Lattice::reduce(ambient, lcm, cleared))
    }

    /// Lattice generated by the columns of an integer matrix.
    pub fn from_integer_columns(m: &IMat) -> Self {
        let rows: Vec<Vec<BigInt>> = (0..m.cols())
            .map(|j| (0..m.rows()).map(|i| m.at(i, j).clone()).collect())
            .collect();
        let gens = if rows.is_empty() {
            IMat::zero(0, m.rows())
        } else {
            IMat::from_rows(rows)
        };
        Lattice::reduce(m.rows(), BigInt::one(), gens)
    }

    fn reduce(ambient: usize, denom: BigInt, generators: IMat) -> Self {
        let hnf = generators.hermite();
        let mut kept = Vec::with_capacity(hnf.rank);
        for i in 0..hnf.rank {
            kept.push(hnf.h.row_vec(i));
        }
        let mut entries: Vec<BigInt> = kept.iter().flatten().cloned().collect();
        entries.push(denom.clone());
        let g = content(&entries);
        let (denom, basis) = if g.is_one() || g.is_zero() {
            (
                denom,
                if kept.is_empty() {
                    IMat::zero(0, ambient)
                } else {
                    IMat::from_rows(kept)
                },
            )
        } else {
            let reduced: Vec<Vec<BigInt>> = kept
                .iter()
                .map(|row| row.iter().map(|v| v / &g).collect())
                .collect();
            (
                &denom / &g,
                if reduced.is_empty() {
                    IMat::zero(0, ambient)
                } else {
                    IMat::from_rows(reduced)
                },
            )
        };
        Lattice {
            ambient,
            denom,
            basis,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn basis(&self) -> &IMat {
        &self.basis
    }

    /// Basis vectors as rational rows (basis divided by the denominator).
    pub fn rational_basis(&self) -> Vec<Vec<Rational>> {
        (0..self.rank())
            .map(|i| {
                (0..self.ambient)
                    .map(|j| {
                        Rational::new(self.basis.at(i, j).clone(), self.denom.clone())
                    })
                    .collect()
            })
            .collect()
    }

    /// Integer coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<BigInt>> {
        let x = self.rational_coords(v)?;
        let mut out = Vec::with_capacity(x.len());
        for c in x {
            if !c.denom().is_one() {
                return None;
            }
            out.push(c.numer().clone());
        }
        Some(out)
    }

    /// Rational coordinates of `v` in the basis, if `v` lies in the span.
    pub fn rational_coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient {
            return None;
        }
        let bt = self.basis.to_rational().transpose();
        let denom = Rational::from_integer(self.denom.clone());
        let rhs: Vec<Rational> = v.iter().map(|c| c * &denom).collect();
        bt.solve(&rhs)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_lattice(&self, sub: &Lattice) -> bool {
        sub.rational_basis().iter().all(|row| self.contains(row))
    }

    /// Invariant factors of `self / sub` for a sublattice `sub`.
    pub fn quotient(&self, sub: &Lattice) -> Result<QuotientShape> {
        if sub.ambient != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: sub.ambient,
            });
        }
        let mut rows = Vec::with_capacity(sub.rank());
        for g in sub.rational_basis() {
            let c = self.coords(&g).ok_or(Error::NotInLattice)?;
            rows.push(c);
        }
        let coord = if rows.is_empty() {
            IMat::zero(0, self.rank())
        } else {
            IMat::from_rows(rows)
        };
        let smith = coord.smith();
        let torsion = smith
            .diagonal
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        Ok(QuotientShape {
            torsion,
            free_rank: self.rank() - sub.rank(),
        })
    }

    /// Tests whether the given vectors form a basis of the lattice
    /// (generate it with index one).
    pub fn is_basis(&self, vectors: &[Vec<Rational>]) -> Result<bool> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            let c = self.coords(v).ok_or(Error::NotInLattice)?;
            rows.push(c);
        }
        if vectors.len() != self.rank() {
            return Ok(false);
        }
        if vectors.is_empty() {
            return Ok(true);
        }
        Ok(IMat::from_rows(rows).is_unimodular())
    }

    /// Dual lattice `{ y : <x, y> in Z for all x in self }`.
    ///
    /// Requires full rank equal to the ambient dimension.
    pub fn dual(&self) -> Result<Lattice> {
        if self.rank() != self.ambient {
            return Err(Error::RankDeficient {
                rank: self.rank(),
                required: self.ambient,
            });
        }
        let b = self.basis.to_rational();
        let n = self.ambient;
        let mut dual_rows = Vec::with_capacity(n);
        let denom = Rational::from_integer(self.denom.clone());
        for i in 0..n {
            let mut e = alloc::vec![Rational::zero(); n];
            e[i] = denom.clone();
            let col = b
                .transpose()
                .solve(&e)
                .ok_or_else(|| Error::Internal(alloc::format!("dual basis solve failed")))?;
            dual_rows.push(col);
        }
        let mut transposed = Vec::with_capacity(n);
        for j in 0..n {
            transposed.push((0..n).map(|i| dual_rows[i][j].clone()).collect());
        }
        Lattice::from_generators(n, &transposed)
    }
}
