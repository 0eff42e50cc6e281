//! Dolbeault cohomology of moment-angle manifolds over complete regular
//! fans: the bigraded model, the Hodge number table, and the bounds the
//! table must satisfy, enforced on every run.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::dga::{BigradedDGA, ExtGenerator};
use crate::fan::{validate_fan, FanData};
use crate::psi::{chern_matrix, PsiMap};
use crate::scalar::{Field, GaussianRational};
use crate::toric::{toric_cohomology, GradedRingData};
use crate::{Error, Result};

/// Hodge numbers `h^{p,q}` keyed by bidegree (zero entries omitted),
/// together with the two parameters the bounds depend on: the number of
/// zero vectors and the complex fiber dimension.
#[derive(Clone, PartialEq, Debug)]
pub struct HodgeTable {
    entries: BTreeMap<(usize, usize), usize>,
    ghost_count: usize,
    ell: usize,
}

impl HodgeTable {
    pub fn entry(&self, p: usize, q: usize) -> usize {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.entries
    }

    /// Number of zero vectors in the defining configuration.
    pub fn ghost_count(&self) -> usize {
        self.ghost_count
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Per-total-degree sums of the table.
    pub fn degree_sums(&self) -> Vec<usize> {
        let top = self.entries.keys().map(|&(p, q)| p + q).max().unwrap_or(0);
        let mut sums = alloc::vec![0usize; top + 1];
        for (&(p, q), &h) in &self.entries {
            sums[p + q] += h;
        }
        sums
    }
}

/// The Dolbeault model of the moment-angle manifold: the toric ring over
/// the Gaussian rationals with `ell` holomorphic and `ell`
/// antiholomorphic exterior generators, the former differentiated by the
/// rows of the Chern matrix.
pub fn hodge_model(fan: &FanData, psi: &PsiMap) -> Result<BigradedDGA<GaussianRational>> {
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
    let ring = toric_cohomology(fan)?.map_field(|c| GaussianRational::from_real(c.clone()));
    let chern = chern_matrix(psi, fan)?;
    let mut generators = Vec::with_capacity(2 * psi.ell());
    for j in 0..psi.ell() {
        generators.push(ExtGenerator {
            name: format!("xi_{}", j + 1),
            holomorphic: true,
            differential: ring.linear_class(chern.row(j)),
        });
    }
    for j in 0..psi.ell() {
        generators.push(ExtGenerator::closed(
            format!("eta_{}", j + 1),
            false,
            ring.dim(1),
        ));
    }
    BigradedDGA::new(ring, generators)
}

/// Hodge numbers of the moment-angle manifold, by per-bidegree rank
/// computation in the model, checked against the bounds that
/// characterize them: `h^{0,q}` binomial, holomorphic-form bounds, the
/// `h^{1,q}` formula, the `h^{2,1}` window, and a vanishing Euler
/// characteristic. Any violation reports an internal error.
pub fn hodge_numbers(fan: &FanData, psi: &PsiMap) -> Result<HodgeTable> {
    let model = hodge_model(fan, psi)?;
    let ghost_count = fan
        .vectors
        .iter()
        .filter(|v| v.iter().all(Field::is_zero))
        .count();
    let table = HodgeTable {
        entries: model.cohomology(),
        ghost_count,
        ell: psi.ell(),
    };
    let h2 = fan.complex.h_vector().get(2).copied().unwrap_or(0);
    validate_bounds(&table, h2, model.p_max(), model.q_max())?;
    Ok(table)
}

/// Tensor product of Dolbeault models; Hodge and Betti numbers follow
/// the Künneth convolution. An empty list gives the one-point model.
pub fn product_model(
    models: &[BigradedDGA<GaussianRational>],
) -> Result<BigradedDGA<GaussianRational>> {
    let mut result = BigradedDGA::new(GradedRingData::point(), Vec::new())?;
    for model in models {
        result = result.tensor(model)?;
    }
    Ok(result)
}

fn validate_bounds(table: &HodgeTable, h2: i64, p_max: usize, q_max: usize) -> Result<()> {
    let ell = table.ell as i64;
    let k = table.ghost_count as i64;
    for q in 0..=q_max {
        let expected = binomial(ell, q);
        if table.entry(0, q) as i64 != expected {
            return Err(bound_violation("h^{0,q}", 0, q, table.entry(0, q)));
        }
    }
    for p in 0..=p_max {
        let h = table.entry(p, 0) as i64;
        if h < binomial(k - ell, p) || h > binomial(k / 2, p) {
            return Err(bound_violation("h^{p,0}", p, 0, table.entry(p, 0)));
        }
    }
    let h10 = table.entry(1, 0) as i64;
    for q in 1..=q_max {
        let expected = (ell - k) * binomial(ell, q - 1) + h10 * binomial(ell + 1, q);
        if table.entry(1, q) as i64 != expected {
            return Err(bound_violation("h^{1,q}", 1, q, table.entry(1, q)));
        }
    }
    let h20 = table.entry(2, 0) as i64;
    let h21 = table.entry(2, 1) as i64;
    let upper = ell * (3 * ell + 1) / 2 - ell * k + (ell + 1) * h20;
    if h21 < upper - h2 || h21 > upper {
        return Err(bound_violation("h^{2,1}", 2, 1, table.entry(2, 1)));
    }
    if table.ell >= 1 {
        let mut chi = 0i64;
        for (&(p, q), &h) in &table.entries {
            if (p + q) % 2 == 0 {
                chi += h as i64;
            } else {
                chi -= h as i64;
            }
        }
        if chi != 0 {
            return Err(Error::Internal(format!(
                "euler characteristic {chi} of the hodge table is nonzero"
            )));
        }
    }
    Ok(())
}

fn bound_violation(name: &str, p: usize, q: usize, value: usize) -> Error {
    Error::Internal(format!(
        "hodge number {name} at ({p},{q}) = {value} violates its proven bound"
    ))
}

/// Binomial coefficient with the empty-selection conventions: one when
/// `k` is zero, zero when fewer than `k` items are available.
fn binomial(a: i64, k: usize) -> i64 {
    if k == 0 {
        return 1;
    }
    if a < k as i64 {
        return 0;
    }
    let mut value = 1i64;
    for i in 0..k as i64 {
        value = value * (a - i) / (i + 1);
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::zk_betti_model;
    use crate::complex::SimplicialComplex;
    use crate::matrix::Mat;
    use crate::psi::build_psi;
    use crate::scalar::{rat, Rational};
    use alloc::vec;

    fn gauss(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(rat(re), rat(im))
    }

    fn ratv(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    fn hopf_fan() -> FanData {
        let k =
            SimplicialComplex::from_faces(4, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        FanData::new(
            k,
            vec![ratv(&[1, 0]), ratv(&[0, 1]), ratv(&[-1, -1]), ratv(&[0, 0])],
        )
        .unwrap()
    }

    fn torus_fan() -> FanData {
        let k = SimplicialComplex::empty(2).unwrap();
        FanData::new(k, vec![Vec::new(), Vec::new()]).unwrap()
    }

    /// Normal fan data of a product of two simplices, with the standard
    /// subspace `(1,..,1,i,..,i)` splitting the units at `p + 1`.
    fn calabi_eckmann(p: usize, q: usize) -> (FanData, PsiMap) {
        let n = p + q;
        let m = n + 2;
        let left: Vec<usize> = (0..=p).collect();
        let right: Vec<usize> = (p + 1..m).collect();
        let mut faces = Vec::new();
        for &i in &left {
            for &j in &right {
                let mut face: Vec<usize> = left.iter().chain(right.iter()).copied().collect();
                face.retain(|&v| v != i && v != j);
                faces.push(face);
            }
        }
        let k = SimplicialComplex::from_faces(m, &faces).unwrap();
        let mut vectors = Vec::with_capacity(m);
        let basis_index = |v: usize| -> Option<usize> {
            if v < p {
                Some(v)
            } else if v > p && v < m - 1 {
                Some(v - 1)
            } else {
                None
            }
        };
        for v in 0..m {
            let mut coords = vec![rat(0); n];
            match basis_index(v) {
                Some(i) => coords[i] = rat(1),
                None => {
                    let block: &[usize] = if v == p { &left } else { &right };
                    for &w in block {
                        if let Some(i) = basis_index(w) {
                            coords[i] = rat(-1);
                        }
                    }
                }
            }
            vectors.push(coords);
        }
        let fan = FanData::new(k, vectors).unwrap();
        let psi = Mat::from_fn(m, 1, |r, _| {
            if r <= p {
                gauss(1, 0)
            } else {
                gauss(0, 1)
            }
        });
        let psi = PsiMap::verified(&fan, psi).unwrap();
        (fan, psi)
    }

    #[test]
    fn hopf_hodge_numbers() {
        let fan = hopf_fan();
        let psi = build_psi(&fan).unwrap();
        let table = hodge_numbers(&fan, &psi).unwrap();
        let expected: BTreeMap<(usize, usize), usize> =
            [((0, 0), 1), ((0, 1), 1), ((3, 2), 1), ((3, 3), 1)]
                .into_iter()
                .collect();
        assert_eq!(table.entries(), &expected);
        assert_eq!(table.ghost_count(), 1);
        assert_eq!(table.ell(), 1);
    }

    #[test]
    fn torus_hodge_numbers() {
        let fan = torus_fan();
        let psi = build_psi(&fan).unwrap();
        let table = hodge_numbers(&fan, &psi).unwrap();
        for p in 0..=1 {
            for q in 0..=1 {
                assert_eq!(table.entry(p, q), 1);
            }
        }
        assert_eq!(table.entries().len(), 4);
        assert_eq!(table.ghost_count(), 2);
    }

    #[test]
    fn calabi_eckmann_12_hodge_numbers() {
        let (fan, psi) = calabi_eckmann(1, 2);
        let table = hodge_numbers(&fan, &psi).unwrap();
        let expected: BTreeMap<(usize, usize), usize> = [
            ((0, 0), 1),
            ((0, 1), 1),
            ((1, 1), 1),
            ((1, 2), 1),
            ((3, 2), 1),
            ((3, 3), 1),
            ((4, 3), 1),
            ((4, 4), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(table.entries(), &expected);
    }

    #[test]
    fn calabi_eckmann_chern_class_mixes_the_factors() {
        let (fan, psi) = calabi_eckmann(1, 2);
        let chern = chern_matrix(&psi, &fan).unwrap();
        let ring =
            toric_cohomology(&fan).unwrap().map_field(|c| GaussianRational::from_real(c.clone()));
        let class = ring.linear_class(chern.row(0));
        assert_eq!(class.len(), 2);
        assert!(class.iter().all(|c| !c.is_zero()));
    }

    #[test]
    fn calabi_eckmann_products_differ() {
        let small = {
            let (fan, psi) = calabi_eckmann(1, 1);
            hodge_model(&fan, &psi).unwrap()
        };
        let large = {
            let (fan, psi) = calabi_eckmann(2, 2);
            hodge_model(&fan, &psi).unwrap()
        };
        let mixed = product_model(&[small, large]).unwrap();
        assert_eq!(mixed.cohomology().get(&(2, 1)), Some(&1));

        let (fan, psi) = calabi_eckmann(1, 2);
        let ce12 = hodge_model(&fan, &psi).unwrap();
        let squared = product_model(&[ce12.clone(), ce12]).unwrap();
        assert_eq!(squared.cohomology().get(&(2, 1)), None);
    }

    #[test]
    fn point_is_a_product_unit() {
        let (fan, psi) = calabi_eckmann(1, 1);
        let model = hodge_model(&fan, &psi).unwrap();
        let padded = product_model(&[model.clone()]).unwrap();
        assert_eq!(padded.cohomology(), model.cohomology());
    }

    #[test]
    fn frolicher_inequality_on_examples() {
        for (fan, psi) in [calabi_eckmann(1, 1), calabi_eckmann(1, 2)] {
            let betti = zk_betti_model(&fan).unwrap();
            let sums = hodge_numbers(&fan, &psi).unwrap().degree_sums();
            for (r, &b) in betti.iter().enumerate() {
                let h = sums.get(r).copied().unwrap_or(0);
                assert!(b <= h, "betti {b} above hodge sum {h} in degree {r}");
            }
        }
    }

    #[test]
    fn irregular_fan_refused() {
        let k = SimplicialComplex::from_faces(
            4,
            &[vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        let fan = FanData::new(
            k,
            vec![ratv(&[1, 0]), ratv(&[0, 1]), ratv(&[-1, -2]), ratv(&[0, 0])],
        )
        .unwrap();
        let psi = build_psi(&fan).unwrap();
        assert!(matches!(
            hodge_numbers(&fan, &psi),
            Err(Error::NotRegular)
        ));
    }
}
