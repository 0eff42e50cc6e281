//! Exact linear feasibility over the rationals.
//!
//! Everything reduces to one primitive: feasibility of `{ x >= 0 : C x = d }`
//! decided by a phase-one simplex with Bland's rule. Infeasibility comes with
//! a Farkas certificate `y` satisfying `y . d > 0` and `y^T C <= 0`, and both
//! outcomes are re-verified before being returned.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::Mat;
use crate::scalar::{rat, Field, Rational};
use crate::{Error, Result};

/// Outcome of the nonnegative feasibility primitive.
pub enum LpOutcome {
    /// A point `x >= 0` with `C x = d`.
    Feasible(Vec<Rational>),
    /// A functional `y` with `y . d > 0` and `y . column <= 0` for every
    /// column of `C`, proving infeasibility.
    Infeasible(Vec<Rational>),
}

/// Decides feasibility of `{ x >= 0 : C x = d }`.
pub fn feasible_nonneg(c: &Mat<Rational>, d: &[Rational]) -> LpOutcome {
    let m = c.rows();
    let n = c.cols();
    assert_eq!(d.len(), m, "rhs length must match row count");

    let mut flip = vec![false; m];
    let width = n + m + 1;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let neg = d[i] < Rational::zero();
        flip[i] = neg;
        let mut row = Vec::with_capacity(width);
        for j in 0..n {
            let v = c.at(i, j).clone();
            row.push(if neg { -v } else { v });
        }
        for k in 0..m {
            row.push(if k == i { rat(1) } else { rat(0) });
        }
        row.push(if neg { -d[i].clone() } else { d[i].clone() });
        tab.push(row);
    }

    let mut z = vec![Rational::zero(); width];
    for (j, slot) in z.iter_mut().enumerate().take(n) {
        let mut acc = Rational::zero();
        for row in &tab {
            acc -= &row[j];
        }
        *slot = acc;
    }
    let mut obj = Rational::zero();
    for row in &tab {
        obj -= &row[width - 1];
    }
    z[width - 1] = obj;

    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(enter) = (0..n + m).find(|&j| z[j] < Rational::zero()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if tab[i][enter] > Rational::zero() {
                let ratio = &tab[i][width - 1] / &tab[i][enter];
                let take = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                    }
                };
                if take {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            unreachable!("phase-one objective is bounded below");
        };
        let pivot = tab[r][enter].clone();
        for v in tab[r].iter_mut() {
            *v = &*v / &pivot;
        }
        for i in 0..m {
            if i != r && !tab[i][enter].is_zero() {
                let factor = tab[i][enter].clone();
                for j in 0..width {
                    let delta = &factor * &tab[r][j];
                    tab[i][j] -= delta;
                }
            }
        }
        if !z[enter].is_zero() {
            let factor = z[enter].clone();
            for j in 0..width {
                let delta = &factor * &tab[r][j];
                z[j] -= delta;
            }
        }
        basis[r] = enter;
    }

    let objective = -z[width - 1].clone();
    if objective.is_zero() {
        let mut x = vec![Rational::zero(); n];
        for i in 0..m {
            if basis[i] < n {
                x[basis[i]] = tab[i][width - 1].clone();
            }
        }
        for (i, xi) in x.iter().enumerate() {
            assert!(*xi >= Rational::zero(), "solution coordinate {i} negative");
        }
        for i in 0..m {
            let mut acc = Rational::zero();
            for j in 0..n {
                acc += c.at(i, j) * &x[j];
            }
            assert_eq!(acc, d[i], "solution fails equation {i}");
        }
        LpOutcome::Feasible(x)
    } else {
        let mut y = Vec::with_capacity(m);
        for i in 0..m {
            let mut yi = rat(1) - &z[n + i];
            if flip[i] {
                yi = -yi;
            }
            y.push(yi);
        }
        let mut yd = Rational::zero();
        for i in 0..m {
            yd += &y[i] * &d[i];
        }
        assert!(yd > Rational::zero(), "certificate fails y.d > 0");
        for j in 0..n {
            let mut acc = Rational::zero();
            for i in 0..m {
                acc += &y[i] * c.at(i, j);
            }
            assert!(
                acc <= Rational::zero(),
                "certificate fails on column {j}"
            );
        }
        LpOutcome::Infeasible(y)
    }
}

/// Result of a cone membership query.
pub enum ConeMembership {
    /// Nonnegative coefficients expressing the target in the generators.
    Inside(Vec<Rational>),
    /// A functional strictly positive on the target and nonpositive on
    /// every generator.
    Outside(Vec<Rational>),
}

/// Tests whether `target` lies in the cone spanned by `generators`.
pub fn in_cone(generators: &[Vec<Rational>], target: &[Rational]) -> Result<ConeMembership> {
    let dim = target.len();
    for g in generators {
        if g.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: g.len(),
            });
        }
    }
    let c = Mat::from_fn(dim, generators.len(), |i, j| generators[j][i].clone());
    match feasible_nonneg(&c, target) {
        LpOutcome::Feasible(lambda) => Ok(ConeMembership::Inside(lambda)),
        LpOutcome::Infeasible(y) => Ok(ConeMembership::Outside(y)),
    }
}

/// A system of affine equations and (weak) inequalities in free variables.
#[derive(Default)]
pub struct SystemBuilder {
    vars: usize,
    eq: Vec<(Vec<Rational>, Rational)>,
    ge: Vec<(Vec<Rational>, Rational)>,
}

impl SystemBuilder {
    pub fn new(vars: usize) -> Self {
        SystemBuilder {
            vars,
            eq: Vec::new(),
            ge: Vec::new(),
        }
    }

    /// Adds `<coeffs, x> = rhs`.
    pub fn equal(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.vars);
        self.eq.push((coeffs, rhs));
        self
    }

    /// Adds `<coeffs, x> >= rhs`.
    pub fn at_least(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.vars);
        self.ge.push((coeffs, rhs));
        self
    }

    /// Finds any solution, encoding each free variable as a difference of
    /// two nonnegative ones and each inequality with a slack.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        let n = self.vars;
        let slacks = self.ge.len();
        let total = 2 * n + slacks;
        let rows = self.eq.len() + self.ge.len();
        let mut c = Mat::zero(rows, total);
        let mut d = Vec::with_capacity(rows);
        for (r, (coeffs, rhs)) in self.eq.iter().enumerate() {
            for j in 0..n {
                *c.at_mut(r, j) = coeffs[j].clone();
                *c.at_mut(r, n + j) = -coeffs[j].clone();
            }
            d.push(rhs.clone());
        }
        for (k, (coeffs, rhs)) in self.ge.iter().enumerate() {
            let r = self.eq.len() + k;
            for j in 0..n {
                *c.at_mut(r, j) = coeffs[j].clone();
                *c.at_mut(r, n + j) = -coeffs[j].clone();
            }
            *c.at_mut(r, 2 * n + k) = rat(-1);
            d.push(rhs.clone());
        }
        match feasible_nonneg(&c, &d) {
            LpOutcome::Feasible(x) => Some(
                (0..n)
                    .map(|j| x[j].clone().sub(&x[n + j]))
                    .collect(),
            ),
            LpOutcome::Infeasible(_) => None,
        }
    }
}

/// Finds a linear functional `c` with `<c, v> > 0` for every given vector,
/// or reports that none exists.
pub fn exists_positive_functional(vectors: &[Vec<Rational>]) -> Result<Option<Vec<Rational>>> {
    let Some(first) = vectors.first() else {
        return Ok(Some(Vec::new()));
    };
    let dim = first.len();
    let mut sys = SystemBuilder::new(dim);
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        sys.at_least(v.clone(), rat(1));
    }
    Ok(sys.solve())
}

/// Finds strictly positive coefficients with `sum alpha_k v_k = 0`,
/// or reports that none exist.
pub fn exists_positive_relation(vectors: &[Vec<Rational>]) -> Result<Option<Vec<Rational>>> {
    if vectors.is_empty() {
        return Ok(None);
    }
    let dim = vectors[0].len();
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    let k = vectors.len();
    let c = Mat::from_fn(dim, k, |i, j| vectors[j][i].clone());
    let mut d = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut acc = Rational::zero();
        for v in vectors {
            acc -= &v[i];
        }
        d.push(acc);
    }
    match feasible_nonneg(&c, &d) {
        LpOutcome::Feasible(beta) => {
            Ok(Some(beta.into_iter().map(|b| b + rat(1)).collect()))
        }
        LpOutcome::Infeasible(_) => Ok(None),
    }
}

/// Tests whether the relative interiors of `cone(a)` and `cone(b)` meet,
/// assuming each generator list is linearly independent.
pub fn relint_intersects(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Result<bool> {
    if a.is_empty() || b.is_empty() {
        return Ok(a.is_empty() && b.is_empty());
    }
    let dim = a[0].len();
    for v in a.iter().chain(b.iter()) {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    let ka = a.len();
    let kb = b.len();
    let c = Mat::from_fn(dim, ka + kb, |i, j| {
        if j < ka {
            a[j][i].clone()
        } else {
            -b[j - ka][i].clone()
        }
    });
    let mut d = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut acc = Rational::zero();
        for v in b {
            acc += &v[i];
        }
        for v in a {
            acc -= &v[i];
        }
        d.push(acc);
    }
    Ok(matches!(feasible_nonneg(&c, &d), LpOutcome::Feasible(_)))
}

/// Finds a point satisfying all equations, weak inequalities, and strict
/// inequalities, or reports that none exists.
///
/// Strictness is handled by homogenizing with a scale variable `t >= 1`
/// and demanding slack at least one; a strict solution exists exactly when
/// a scaled one does.
pub fn affine_strict_feasible(
    vars: usize,
    eq: &[(Vec<Rational>, Rational)],
    ge: &[(Vec<Rational>, Rational)],
    gt: &[(Vec<Rational>, Rational)],
) -> Option<Vec<Rational>> {
    let mut sys = SystemBuilder::new(vars + 1);
    let extend = |coeffs: &[Rational], shift: Rational| {
        let mut row: Vec<Rational> = coeffs.to_vec();
        row.push(shift);
        row
    };
    for (coeffs, rhs) in eq {
        sys.equal(extend(coeffs, -rhs.clone()), Rational::zero());
    }
    for (coeffs, rhs) in ge {
        sys.at_least(extend(coeffs, -rhs.clone()), Rational::zero());
    }
    for (coeffs, rhs) in gt {
        sys.at_least(extend(coeffs, -rhs.clone()), rat(1));
    }
    let mut t_row = vec![Rational::zero(); vars];
    t_row.push(rat(1));
    sys.at_least(t_row, rat(1));
    let sol = sys.solve()?;
    let t = sol[vars].clone();
    Some(sol[..vars].iter().map(|v| v / &t).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratv(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    #[test]
    fn cone_membership_both_ways() {
        let gens = vec![ratv(&[1, 0]), ratv(&[1, 1])];
        match in_cone(&gens, &ratv(&[2, 1])).unwrap() {
            ConeMembership::Inside(lambda) => {
                assert_eq!(lambda, ratv(&[1, 1]));
            }
            ConeMembership::Outside(_) => panic!("(2,1) lies in the cone"),
        }
        match in_cone(&gens, &ratv(&[0, 1])).unwrap() {
            ConeMembership::Inside(_) => panic!("(0,1) lies outside the cone"),
            ConeMembership::Outside(y) => {
                assert_eq!(y.len(), 2);
            }
        }
    }

    #[test]
    fn zero_is_in_every_cone() {
        let gens = vec![ratv(&[1, 2]), ratv(&[3, -1])];
        assert!(matches!(
            in_cone(&gens, &ratv(&[0, 0])).unwrap(),
            ConeMembership::Inside(_)
        ));
        let empty: Vec<Vec<Rational>> = Vec::new();
        assert!(matches!(
            in_cone(&empty, &ratv(&[0, 0])).unwrap(),
            ConeMembership::Inside(_)
        ));
        assert!(matches!(
            in_cone(&empty, &ratv(&[1, 0])).unwrap(),
            ConeMembership::Outside(_)
        ));
    }

    #[test]
    fn positive_functional() {
        let c = exists_positive_functional(&[ratv(&[1, 0]), ratv(&[0, 1])])
            .unwrap()
            .expect("first quadrant admits one");
        assert!(c[0] > Rational::zero() && c[1] > Rational::zero());
        assert!(exists_positive_functional(&[ratv(&[1, 0]), ratv(&[-1, 0])])
            .unwrap()
            .is_none());
    }

    #[test]
    fn positive_relation() {
        let alpha = exists_positive_relation(&[ratv(&[1, 0]), ratv(&[-1, 0])])
            .unwrap()
            .expect("opposite vectors balance");
        assert_eq!(alpha[0], alpha[1]);
        assert!(alpha[0] > Rational::zero());
        assert!(exists_positive_relation(&[ratv(&[1, 0]), ratv(&[0, 1])])
            .unwrap()
            .is_none());
    }

    #[test]
    fn relative_interiors() {
        let quadrant = vec![ratv(&[1, 0]), ratv(&[0, 1])];
        let diagonal = vec![ratv(&[1, 1])];
        let axis = vec![ratv(&[1, 0])];
        let other_axis = vec![ratv(&[0, 1])];
        assert!(relint_intersects(&quadrant, &diagonal).unwrap());
        assert!(!relint_intersects(&axis, &other_axis).unwrap());
        assert!(!relint_intersects(&quadrant, &axis).unwrap());
        assert!(relint_intersects(&axis, &axis).unwrap());
    }

    #[test]
    fn strict_feasibility() {
        let x = affine_strict_feasible(
            1,
            &[],
            &[],
            &[(ratv(&[1]), rat(0)), (ratv(&[-1]), rat(-1))],
        )
        .expect("open interval (0,1) is nonempty");
        assert!(x[0] > Rational::zero() && x[0] < rat(1));
        assert!(affine_strict_feasible(
            1,
            &[],
            &[],
            &[(ratv(&[1]), rat(0)), (ratv(&[-1]), rat(0))],
        )
        .is_none());
    }

    #[test]
    fn strict_with_equalities() {
        let x = affine_strict_feasible(
            2,
            &[(ratv(&[1, 1]), rat(10))],
            &[(ratv(&[1, 0]), rat(0))],
            &[(ratv(&[0, 1]), rat(3))],
        )
        .expect("feasible");
        assert_eq!(x[0].clone() + x[1].clone(), rat(10));
        assert!(x[1] > rat(3));
        assert!(x[0] >= Rational::zero());
    }
}
