//! Rational Betti numbers of moment-angle manifolds: a small differential
//! model over the toric cohomology ring for regular complete fans, and an
//! independent full-subcomplex oracle that works for any complex on a
//! small ground set.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::SimplicialComplex;
use crate::dga::{BigradedDGA, ExtGenerator};
use crate::fan::{validate_fan, FanData};
use crate::matrix::Mat;
use crate::scalar::Rational;
use crate::toric::toric_cohomology;
use crate::{Error, Result};

/// Betti numbers of the moment-angle manifold over a regular complete
/// fan, from the model `Λ[u_1..u_{m-n}] ⊗ H*(V_Σ)` with `du_j` given by
/// the rows of the kernel basis of the fan's vector matrix.
pub fn zk_betti_model(fan: &FanData) -> Result<Vec<usize>> {
    Ok(zk_model(fan)?.betti())
}

/// The differential graded model behind [`zk_betti_model`], with one
/// degree-one generator per kernel row.
pub fn zk_model(fan: &FanData) -> Result<BigradedDGA<Rational>> {
    let report = validate_fan(fan);
    if !report.is_fan {
        return Err(Error::NotAFan);
    }
    if !report.complete {
        return Err(Error::NotComplete);
    }
    if !report.regular {
        return Err(Error::NotRegular);
    }
    let ring = toric_cohomology(fan)?;
    let a = Mat::from_fn(fan.n(), fan.m(), |j, k| fan.vectors[k][j].clone());
    let kernel = a.kernel_basis();
    let mut generators = Vec::with_capacity(kernel.rows());
    for j in 0..kernel.rows() {
        generators.push(ExtGenerator {
            name: format!("u_{}", j + 1),
            holomorphic: true,
            differential: ring.linear_class(kernel.row(j)),
        });
    }
    BigradedDGA::new(ring, generators)
}

/// Betti numbers of the moment-angle complex of `K` by summing reduced
/// cohomology of all full subcomplexes: the degree-`d` classes of `K_J`
/// land in degree `d + |J| + 1`. Exponential in the ground set, hence the
/// size cap; disagreements with [`zk_betti_model`] are impossible inputs.
pub fn zk_betti_oracle(k: &SimplicialComplex) -> Result<Vec<usize>> {
    let m = k.m();
    if m > 10 {
        return Err(Error::GroundSetTooLarge { m, max: 10 });
    }
    let mut betti = vec![0usize; m + k.max_card() + 1];
    for subset_mask in 0u32..1 << m {
        let subset: Vec<usize> = (0..m).filter(|&i| subset_mask >> i & 1 == 1).collect();
        let sub = k.full_subcomplex(&subset).expect("indices in range");
        for (slot, dim) in sub.reduced_cohomology_dims().into_iter().enumerate() {
            betti[slot + subset.len()] += dim;
        }
    }
    Ok(betti)
}
