//! Cohomology rings of complete simplicial toric varieties as exact
//! graded-linear-algebra data: per-degree monomial bases, structure
//! constants, and the classes of the ring generators.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::SimplicialComplex;
use crate::fan::{validate_fan, FanData};
use crate::matrix::Mat;
use crate::scalar::{Field, Rational};
use crate::{Error, Result};

/// A graded commutative algebra presented by generators `v_1, ..., v_m`
/// of degree one, stored degreewise: a monomial basis per degree, the
/// expansion of every product of basis elements, and the class of each
/// generator. Degrees here are algebraic; the topological degree of a
/// class in degree `p` is `2p`.
///
/// Products of basis elements whose degrees sum past `top` are zero; the
/// structure-constant table stores only nonzero expansions.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedRingData<F: Field> {
    m: usize,
    degrees: Vec<usize>,
    basis: Vec<Vec<Vec<u32>>>,
    var_classes: Vec<Vec<F>>,
    products: BTreeMap<(usize, usize, usize, usize), Vec<(usize, F)>>,
    smooth: bool,
}

impl<F: Field> GradedRingData<F> {
    /// The coefficient field sitting in degree zero, with no generators.
    pub fn point() -> Self {
        GradedRingData {
            m: 0,
            degrees: vec![1],
            basis: vec![vec![Vec::new()]],
            var_classes: Vec::new(),
            products: BTreeMap::new(),
            smooth: true,
        }
    }

    /// Number of generators.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Highest degree carried by the ring.
    pub fn top(&self) -> usize {
        self.degrees.len() - 1
    }

    /// Dimension per degree, `0..=top`.
    pub fn dims(&self) -> &[usize] {
        &self.degrees
    }

    pub fn dim(&self, p: usize) -> usize {
        self.degrees.get(p).copied().unwrap_or(0)
    }

    /// Exponent vectors of the monomial basis in degree `p`.
    pub fn basis(&self, p: usize) -> &[Vec<u32>] {
        self.basis.get(p).map_or(&[], Vec::as_slice)
    }

    /// The class of the generator `v_k`, in degree-one basis coordinates.
    pub fn var_class(&self, k: usize) -> &[F] {
        &self.var_classes[k]
    }

    /// The class of `sum_k coeffs[k] * v_k`, in degree-one basis
    /// coordinates.
    pub fn linear_class(&self, coeffs: &[F]) -> Vec<F> {
        assert_eq!(coeffs.len(), self.m, "one coefficient per generator");
        let mut out = vec![F::zero(); self.dim(1)];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, w) in self.var_class(k).iter().enumerate() {
                out[i] = out[i].add(&c.mul(w));
            }
        }
        out
    }

    pub fn smooth(&self) -> bool {
        self.smooth
    }

    /// Expands the product of the `i`-th degree-`p` and the `j`-th
    /// degree-`q` basis element in the degree-`p + q` basis.
    pub fn product(&self, p: usize, i: usize, q: usize, j: usize) -> Vec<(usize, F)> {
        assert!(i < self.dim(p), "basis index out of range");
        assert!(j < self.dim(q), "basis index out of range");
        let ((p, i), (q, j)) = if (p, i) <= (q, j) {
            ((p, i), (q, j))
        } else {
            ((q, j), (p, i))
        };
        if p == 0 {
            return vec![(j, F::one())];
        }
        self.products.get(&(p, i, q, j)).cloned().unwrap_or_default()
    }

    /// Applies `f` to every coefficient, changing the field.
    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> GradedRingData<G> {
        GradedRingData {
            m: self.m,
            degrees: self.degrees.clone(),
            basis: self.basis.clone(),
            var_classes: self
                .var_classes
                .iter()
                .map(|cls| cls.iter().map(|c| f(c)).collect())
                .collect(),
            products: self
                .products
                .iter()
                .map(|(key, expn)| (*key, expn.iter().map(|(i, c)| (*i, f(c))).collect()))
                .collect(),
            smooth: self.smooth,
        }
    }

    /// Tensor product over the coefficient field. Generators of `other`
    /// follow the `m` generators of `self`; the degree-`d` basis is
    /// grouped by the degree split `(a, d - a)` with `a` ascending.
    pub fn tensor(&self, other: &Self) -> Self {
        let m = self.m + other.m;
        let top = self.top() + other.top();

        let mut degrees = vec![0usize; top + 1];
        let mut basis: Vec<Vec<Vec<u32>>> = Vec::with_capacity(top + 1);
        let mut blocks: Vec<Vec<(usize, usize, usize, usize)>> = Vec::with_capacity(top + 1);
        let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let mut degree_basis = Vec::new();
            let mut degree_blocks = Vec::new();
            let mut offs = vec![usize::MAX; d + 1];
            for a in 0..=d {
                let b = d - a;
                if a > self.top() || b > other.top() {
                    continue;
                }
                offs[a] = degree_basis.len();
                for (i, e1) in self.basis(a).iter().enumerate() {
                    for (j, e2) in other.basis(b).iter().enumerate() {
                        let mut e = Vec::with_capacity(m);
                        e.extend_from_slice(e1);
                        e.extend_from_slice(e2);
                        degree_basis.push(e);
                        degree_blocks.push((a, i, b, j));
                    }
                }
            }
            degrees[d] = degree_basis.len();
            basis.push(degree_basis);
            blocks.push(degree_blocks);
            offsets.push(offs);
        }
        let index = |d: usize, a: usize, i: usize, j: usize| -> usize {
            offsets[d][a] + i * other.dim(d - a) + j
        };

        let dim1 = degrees.get(1).copied().unwrap_or(0);
        let mut var_classes = Vec::with_capacity(m);
        for k in 0..self.m {
            let mut cls = vec![F::zero(); dim1];
            if self.top() >= 1 {
                for (i, c) in self.var_class(k).iter().enumerate() {
                    cls[index(1, 1, i, 0)] = c.clone();
                }
            }
            var_classes.push(cls);
        }
        for k in 0..other.m {
            let mut cls = vec![F::zero(); dim1];
            if other.top() >= 1 {
                for (j, c) in other.var_class(k).iter().enumerate() {
                    cls[index(1, 0, 0, j)] = c.clone();
                }
            }
            var_classes.push(cls);
        }

        let mut products = BTreeMap::new();
        for p in 1..=top {
            for q in p..=top {
                if p + q > top {
                    break;
                }
                for (ip, &(a1, i1, b1, j1)) in blocks[p].iter().enumerate() {
                    for (jq, &(a2, i2, b2, j2)) in blocks[q].iter().enumerate() {
                        if p == q && jq < ip {
                            continue;
                        }
                        let left = self.product(a1, i1, a2, i2);
                        if left.is_empty() {
                            continue;
                        }
                        let right = other.product(b1, j1, b2, j2);
                        if right.is_empty() {
                            continue;
                        }
                        let mut expn = Vec::with_capacity(left.len() * right.len());
                        for (r, cr) in &left {
                            for (s, ds) in &right {
                                expn.push((index(p + q, a1 + a2, *r, *s), cr.mul(ds)));
                            }
                        }
                        expn.sort_by_key(|(idx, _)| *idx);
                        products.insert((p, ip, q, jq), expn);
                    }
                }
            }
        }

        GradedRingData {
            m,
            degrees,
            basis,
            var_classes,
            products,
            smooth: self.smooth && other.smooth,
        }
    }
}

/// The rational cohomology ring of the toric variety (orbifold, when the
/// fan is merely simplicial) of a complete simplicial rational fan.
///
/// Degreewise, the ring is the span of face-supported monomials modulo
/// the relations `theta_j * mu` with `theta_j = sum_k a_k[j] v_k` running
/// over the fan vectors and `mu` over face-supported monomials one degree
/// down; monomials whose support is a nonface are zero. The basis in each
/// degree is the set of non-pivot monomials of the reduced relation
/// matrix, so results are reproducible. The dimensions equal the
/// `h`-vector of the underlying complex, and the ring vanishes above
/// degree `n`.
pub fn toric_cohomology(fan: &FanData) -> Result<GradedRingData<Rational>> {
    let report = validate_fan(fan);
    if !report.is_fan {
        return Err(Error::NotAFan);
    }
    if !report.complete {
        return Err(Error::NotComplete);
    }
    let n = fan.n();
    let m = fan.m();

    let mut degrees: Vec<usize> = Vec::with_capacity(n + 1);
    let mut basis: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n + 1);
    let mut monomials: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n + 1);
    let mut index: Vec<BTreeMap<Vec<u32>, usize>> = Vec::with_capacity(n + 1);
    let mut reduce: Vec<Vec<Vec<(usize, Rational)>>> = Vec::with_capacity(n + 1);

    for p in 0..=n {
        let mons = face_monomials(&fan.complex, p);
        let idx: BTreeMap<Vec<u32>, usize> = mons
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        if p == 0 {
            degrees.push(1);
            basis.push(vec![vec![0; m]]);
            reduce.push(vec![vec![(0, Rational::one())]]);
            monomials.push(mons);
            index.push(idx);
            continue;
        }
        let cols = mons.len();
        if cols == 0 {
            degrees.push(0);
            basis.push(Vec::new());
            reduce.push(Vec::new());
            monomials.push(mons);
            index.push(idx);
            continue;
        }
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for mu in &monomials[p - 1] {
            for j in 0..n {
                let mut row = vec![Rational::zero(); cols];
                for (k, vector) in fan.vectors.iter().enumerate() {
                    if vector[j].is_zero() {
                        continue;
                    }
                    let mut e = mu.clone();
                    e[k] += 1;
                    if let Some(&c) = idx.get(&e) {
                        row[c] = vector[j].clone();
                    }
                }
                rows.push(row);
            }
        }
        let (rr, pivots) = Mat::from_rows(rows).rref();
        let mut is_pivot = vec![false; cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis_of_col = vec![usize::MAX; cols];
        for (bi, &c) in free.iter().enumerate() {
            basis_of_col[c] = bi;
        }
        let mut red: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(cols);
        for c in 0..cols {
            if !is_pivot[c] {
                red.push(vec![(basis_of_col[c], Rational::one())]);
            } else {
                let r = pivots.iter().position(|&pc| pc == c).expect("pivot row");
                let mut expn = Vec::new();
                for &fc in &free {
                    let coeff = rr.at(r, fc);
                    if !coeff.is_zero() {
                        expn.push((basis_of_col[fc], -coeff.clone()));
                    }
                }
                red.push(expn);
            }
        }
        degrees.push(free.len());
        basis.push(free.iter().map(|&c| mons[c].clone()).collect());
        reduce.push(red);
        monomials.push(mons);
        index.push(idx);
    }

    let dim1 = degrees.get(1).copied().unwrap_or(0);
    let mut var_classes = Vec::with_capacity(m);
    for k in 0..m {
        let mut cls = vec![Rational::zero(); dim1];
        if n >= 1 {
            let mut e = vec![0u32; m];
            e[k] = 1;
            if let Some(&c) = index[1].get(&e) {
                for (bi, coeff) in &reduce[1][c] {
                    cls[*bi] = coeff.clone();
                }
            }
        }
        var_classes.push(cls);
    }

    let mut products = BTreeMap::new();
    for p in 1..=n {
        for q in p..=n {
            if p + q > n {
                break;
            }
            for i in 0..degrees[p] {
                let start = if p == q { i } else { 0 };
                for j in start..degrees[q] {
                    let mut e = basis[p][i].clone();
                    for (t, x) in basis[q][j].iter().enumerate() {
                        e[t] += x;
                    }
                    let Some(&c) = index[p + q].get(&e) else {
                        continue;
                    };
                    let expn = reduce[p + q][c].clone();
                    if !expn.is_empty() {
                        products.insert((p, i, q, j), expn);
                    }
                }
            }
        }
    }

    Ok(GradedRingData {
        m,
        degrees,
        basis,
        var_classes,
        products,
        smooth: report.regular,
    })
}

/// All exponent vectors of total degree `p` whose support is a face,
/// sorted lexicographically.
fn face_monomials(k: &SimplicialComplex, p: usize) -> Vec<Vec<u32>> {
    let m = k.m();
    if p == 0 {
        return vec![vec![0; m]];
    }
    let mut out = Vec::new();
    for mask in k.face_masks() {
        let card = mask.count_ones() as usize;
        if card == 0 || card > p {
            continue;
        }
        let verts: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let mut exps = vec![0u32; m];
        fill_compositions(&verts, 0, p as u32, &mut exps, &mut out);
    }
    out.sort();
    out
}

/// Distributes `remaining` over `verts[at..]`, at least one each.
fn fill_compositions(
    verts: &[usize],
    at: usize,
    remaining: u32,
    exps: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if at + 1 == verts.len() {
        exps[verts[at]] = remaining;
        out.push(exps.clone());
        exps[verts[at]] = 0;
        return;
    }
    let spare = remaining - (verts.len() - at - 1) as u32;
    for take in 1..=spare {
        exps[verts[at]] = take;
        fill_compositions(verts, at + 1, remaining - take, exps, out);
        exps[verts[at]] = 0;
    }
}
