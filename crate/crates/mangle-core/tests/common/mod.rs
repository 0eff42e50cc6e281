#![allow(dead_code)]

use mangle_core::complex::SimplicialComplex;
use mangle_core::fan::FanData;
use mangle_core::matrix::Mat;
use mangle_core::presentation::Presentation;
use mangle_core::psi::PsiMap;
use mangle_core::scalar::{rat, GaussianRational, Rational};

pub fn ratv(vals: &[i64]) -> Vec<Rational> {
    vals.iter().map(|&v| rat(v)).collect()
}

pub fn gauss(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(rat(re), rat(im))
}

pub fn simplex(n: usize) -> Presentation {
    let mut columns: Vec<Vec<i64>> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        columns.push(e);
    }
    columns.push(vec![-1; n]);
    let refs: Vec<&[i64]> = columns.iter().map(Vec::as_slice).collect();
    let mut b = vec![0i64; n];
    b.push(1);
    Presentation::from_i64_columns(&refs, &b).unwrap()
}

pub fn square() -> Presentation {
    Presentation::from_i64_columns(
        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
        &[0, 0, 1, 1],
    )
    .unwrap()
}

pub fn bad_square() -> Presentation {
    Presentation::from_i64_columns(
        &[&[1, 0], &[0, 1], &[-1, 0], &[1, -2]],
        &[0, 0, 2, 2],
    )
    .unwrap()
}

pub fn degenerate_square() -> Presentation {
    Presentation::from_i64_columns(
        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[1, 1]],
        &[0, 0, 1, 1, 0],
    )
    .unwrap()
}

pub fn pentagon() -> Presentation {
    Presentation::from_i64_columns(
        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[-1, -1]],
        &[0, 0, 2, 2, 3],
    )
    .unwrap()
}

pub fn prod_simplices() -> Presentation {
    Presentation::from_i64_columns(
        &[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[-1, -1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[0, 0, -1, -1],
        ],
        &[0, 0, 1, 0, 0, 1],
    )
    .unwrap()
}

/// The fan of CP^n plus one ghost vector, the base of the Hopf family.
pub fn hopf_fan(n: usize) -> FanData {
    let m = n + 2;
    let mut faces = Vec::with_capacity(n + 1);
    for drop in 0..=n {
        faces.push((0..=n).filter(|&v| v != drop).collect::<Vec<usize>>());
    }
    let k = SimplicialComplex::from_faces(m, &faces).unwrap();
    let mut vectors: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        vectors.push(ratv(&e));
    }
    vectors.push(ratv(&vec![-1i64; n]));
    vectors.push(ratv(&vec![0i64; n]));
    FanData::new(k, vectors).unwrap()
}

/// Normal fan data of a product of two simplices, with the standard
/// subspace `(1,..,1,i,..,i)` splitting the units at `p + 1`.
pub fn calabi_eckmann(p: usize, q: usize) -> (FanData, PsiMap) {
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
    let psi = Mat::from_fn(m, 1, |r, _| if r <= p { gauss(1, 0) } else { gauss(0, 1) });
    let psi = PsiMap::verified(&fan, psi).unwrap();
    (fan, psi)
}

/// The complete fan of two opposite rays in R^1 with three ghost
/// vectors: the smallest case with more zero vectors than `ell`.
pub fn two_points_with_ghosts() -> FanData {
    let k = SimplicialComplex::from_faces(5, &[vec![0], vec![1]]).unwrap();
    FanData::new(
        k,
        vec![ratv(&[1]), ratv(&[-1]), ratv(&[0]), ratv(&[0]), ratv(&[0])],
    )
    .unwrap()
}

/// Deterministic xorshift generator for seeded random sweeps.
pub struct XorShift(u64);

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift(seed | 1)
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn pick(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

pub fn random_gauss(rng: &mut XorShift) -> GaussianRational {
    let re = Rational::new(rng.pick(-2, 2).into(), rng.pick(1, 2).into());
    let im = Rational::new(rng.pick(-2, 2).into(), rng.pick(1, 2).into());
    GaussianRational::new(re, im)
}

/// Draws verified Psi maps by combining the kernel basis of the vector
/// matrix with random Gaussian coefficients; rejected candidates are
/// simply redrawn.
pub fn random_psis(fan: &FanData, count: usize, rng: &mut XorShift) -> Vec<PsiMap> {
    let n = fan.n();
    let m = fan.m();
    let a = Mat::from_fn(n, m, |r, c| fan.vectors[c][r].clone());
    let kernel_t = a
        .kernel_basis()
        .transpose()
        .map(|v| GaussianRational::from_real(v.clone()));
    let ell = (m - n) / 2;
    let mut found = Vec::new();
    let mut attempts = 0;
    while found.len() < count {
        attempts += 1;
        assert!(attempts < 200 * count, "verified Psi maps are abundant");
        let c = Mat::from_fn(m - n, ell, |_, _| random_gauss(rng));
        if let Ok(psi) = PsiMap::verified(fan, kernel_t.matmul(&c)) {
            found.push(psi);
        }
    }
    found
}

/// Binomial coefficient counting `k`-subsets: `binom(a, 0) = 1` for any
/// `a`, and zero whenever `k < 0` or `0 <= a < k`.
pub fn binom(a: i64, k: i64) -> i64 {
    if k == 0 {
        return 1;
    }
    if k < 0 || a < k {
        return 0;
    }
    let mut value = 1i64;
    for i in 0..k {
        value = value * (a - i) / (i + 1);
    }
    value
}
