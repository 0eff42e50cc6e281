mod common;

use mangle_core::gale::gale_dual;
use mangle_core::matrix::Mat;
use mangle_core::scalar::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn reduce_row(row: &mut [i128]) {
    let mut g: i128 = 0;
    for &v in row.iter() {
        g = g.gcd(&v);
    }
    if g > 1 {
        for v in row.iter_mut() {
            *v /= g;
        }
    }
}

/// Rank by fraction-free elimination; entries stay small thanks to the
/// per-row gcd reduction, so i128 never overflows at these sizes.
fn int_rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            if rows[r][col] == 0 {
                continue;
            }
            let a = rows[rank][col];
            let b = rows[r][col];
            let g = a.gcd(&b);
            let (fa, fb) = (b / g, a / g);
            for c in col..cols {
                rows[r][c] = rows[r][c] * fb - rows[rank][c] * fa;
            }
            reduce_row(&mut rows[r]);
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Clears denominators of one vector; scaling does not change spans.
fn scaled_int_vec(col: &[Rational]) -> Vec<i128> {
    let mut l = BigInt::from(1);
    for v in col {
        l = l.lcm(v.denom());
    }
    col.iter()
        .map(|v| {
            ((v.numer() * &l) / v.denom())
                .to_i128()
                .expect("kernel basis entries stay small")
        })
        .collect()
}

fn column_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (0usize..=(8 - n)).prop_flat_map(move |extra| {
                proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), n + extra)
            })
        })
        .prop_filter("full row rank", |cols| {
            let n = cols[0].len();
            let rows: Vec<Vec<i128>> = (0..n)
                .map(|r| cols.iter().map(|c| c[r] as i128).collect())
                .collect();
            int_rank(rows) == n
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// For every subset I of the columns of A, the set `{a_i : i in I}`
    /// is linearly independent exactly when the complementary Gale dual
    /// columns span the whole quotient space, and the duality identity
    /// `Gamma A^T = 0` holds exactly.
    #[test]
    fn gale_dual_is_exact_and_matches_subset_spans(cols in column_matrix()) {
        let n = cols[0].len();
        let m = cols.len();
        let a = Mat::from_fn(n, m, |r, c| Rational::from_integer(cols[c][r].into()));
        let gamma = gale_dual(&a).unwrap();
        prop_assert_eq!(gamma.rows(), m - n);
        prop_assert_eq!(gamma.cols(), m);
        prop_assert!(gamma.matmul(&a.transpose()).is_zero());
        let gamma_cols: Vec<Vec<i128>> =
            (0..m).map(|j| scaled_int_vec(&gamma.col_vec(j))).collect();
        for mask in 0u32..(1u32 << m) {
            let chosen: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
            let selected: Vec<Vec<i128>> = chosen
                .iter()
                .map(|&i| cols[i].iter().map(|&v| v as i128).collect())
                .collect();
            let independent = int_rank(selected) == chosen.len();
            let complement: Vec<Vec<i128>> = (0..m)
                .filter(|i| mask & (1 << i) == 0)
                .map(|j| gamma_cols[j].clone())
                .collect();
            let spans = int_rank(complement) == m - n;
            prop_assert_eq!(
                independent, spans,
                "subset {:?} of a full-rank {}x{} matrix",
                chosen, n, m
            );
        }
    }
}
