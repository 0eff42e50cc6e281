//! The complex-structure parameter of a moment-angle manifold: an
//! `ell`-dimensional complex subspace of `C^m` whose real part projects
//! isomorphically onto the kernel of the fan's vector matrix, and the
//! Chern matrix it induces on the degree-one ring classes.

use alloc::vec::Vec;

use crate::fan::FanData;
use crate::matrix::Mat;
use crate::scalar::{GaussianRational, Rational};
use crate::{Error, Result};

/// An `m x ell` matrix over the Gaussian rationals whose columns span a
/// subspace meeting its conjugate only in zero and annihilated by the
/// complexified vector matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct PsiMap {
    psi: Mat<GaussianRational>,
}

impl PsiMap {
    /// Wraps a caller-supplied matrix after checking the two subspace
    /// conditions against the fan.
    pub fn verified(fan: &FanData, psi: Mat<GaussianRational>) -> Result<Self> {
        let a = vector_matrix(fan);
        check_shape(fan, &a)?;
        if psi.rows() != fan.m() {
            return Err(Error::DimensionMismatch {
                expected: fan.m(),
                got: psi.rows(),
            });
        }
        let ell = (fan.m() - fan.n()) / 2;
        if psi.cols() != ell {
            return Err(Error::DimensionMismatch {
                expected: ell,
                got: psi.cols(),
            });
        }
        verify_conditions(&a, &psi)?;
        Ok(PsiMap { psi })
    }

    pub fn matrix(&self) -> &Mat<GaussianRational> {
        &self.psi
    }

    /// Complex dimension of the subspace.
    pub fn ell(&self) -> usize {
        self.psi.cols()
    }

    pub fn m(&self) -> usize {
        self.psi.rows()
    }
}

/// The canonical subspace: consecutive rows of the reduced kernel basis
/// of the vector matrix are paired as `kappa_{2j} - i * kappa_{2j+1}`.
pub fn build_psi(fan: &FanData) -> Result<PsiMap> {
    let a = vector_matrix(fan);
    check_shape(fan, &a)?;
    let kernel = a.kernel_basis();
    let ell = (fan.m() - fan.n()) / 2;
    let psi = Mat::from_fn(fan.m(), ell, |r, j| {
        GaussianRational::new(
            kernel.at(2 * j, r).clone(),
            -kernel.at(2 * j + 1, r).clone(),
        )
    });
    verify_conditions(&a, &psi)?;
    Ok(PsiMap { psi })
}

/// The `ell x m` matrix `M` with `M Psi = 0` whose rows have linearly
/// independent images under the Gale matrix, reduced to row echelon
/// form. Row `j` lists the coefficients of the differential of the
/// `j`-th holomorphic exterior generator on the ring classes.
pub fn chern_matrix(psi: &PsiMap, fan: &FanData) -> Result<Mat<GaussianRational>> {
    let a = vector_matrix(fan);
    check_shape(fan, &a)?;
    verify_conditions(&a, psi.matrix())?;
    let ell = psi.ell();
    let m = fan.m();
    if ell == 0 {
        return Ok(Mat::zero(0, m));
    }
    let gamma = a
        .kernel_basis()
        .map(|c| GaussianRational::from_real(c.clone()));
    let annihilator = psi.matrix().transpose().kernel_basis();
    let mut chosen: Vec<Vec<GaussianRational>> = Vec::with_capacity(ell);
    let mut images: Vec<Vec<GaussianRational>> = Vec::with_capacity(ell);
    for r in 0..annihilator.rows() {
        if chosen.len() == ell {
            break;
        }
        let row = annihilator.row_vec(r);
        let image = gamma.mul_vec(&row);
        let mut trial = images.clone();
        trial.push(image.clone());
        if Mat::from_rows(trial).rank() == images.len() + 1 {
            chosen.push(row);
            images.push(image);
        }
    }
    assert_eq!(
        chosen.len(),
        ell,
        "the annihilator of the subspace surjects onto an ell-dimensional complement"
    );
    let (reduced, _) = Mat::from_rows(chosen).rref();
    assert!(reduced.matmul(psi.matrix()).is_zero());
    assert_eq!(gamma.matmul(&reduced.transpose()).rank(), ell);
    Ok(reduced)
}

fn vector_matrix(fan: &FanData) -> Mat<Rational> {
    Mat::from_fn(fan.n(), fan.m(), |j, k| fan.vectors[k][j].clone())
}

fn check_shape(fan: &FanData, a: &Mat<Rational>) -> Result<()> {
    if a.rank() != fan.n() {
        return Err(Error::SpanFailure);
    }
    if (fan.m() - fan.n()) % 2 != 0 {
        return Err(Error::OddCodimension {
            m: fan.m(),
            n: fan.n(),
        });
    }
    Ok(())
}

fn verify_conditions(a: &Mat<Rational>, psi: &Mat<GaussianRational>) -> Result<()> {
    let complexified = a.map(|c| GaussianRational::from_real(c.clone()));
    if !complexified.matmul(psi).is_zero() {
        return Err(Error::InvalidPsi(
            "the image does not lie in the kernel of the vector matrix".into(),
        ));
    }
    let ell = psi.cols();
    let paired = Mat::from_fn(psi.rows(), 2 * ell, |r, c| {
        if c < ell {
            psi.at(r, c).clone()
        } else {
            psi.at(r, c - ell).conj()
        }
    });
    if paired.rank() != 2 * ell {
        return Err(Error::InvalidPsi(
            "the image meets its complex conjugate".into(),
        ));
    }
    Ok(())
}
