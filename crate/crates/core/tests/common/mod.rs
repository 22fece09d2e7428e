//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use lghodge::les::{ArrowFlag, ExactSequenceSpec};
use lghodge::rational::{int, Rational};
use lghodge::RationalMatrix;
use num_traits::Zero;

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &RationalMatrix) -> Rational {
    let n = m.rows();
    let rows: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    laplace(&rows)
}

fn laplace(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return int(1);
    }
    let mut acc = Rational::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &rows[0][j] * laplace(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest `k` with a nonzero `k x k` minor.
pub fn minor_rank(m: &RationalMatrix) -> usize {
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub: Vec<Vec<Rational>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[(i, j)].clone()).collect())
                    .collect();
                if !laplace(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Every assignment of arrow ranks in `0..=bound` satisfying `spec`, with
/// the term dimensions it implies.
pub fn enumerate_sequences(spec: &ExactSequenceSpec, bound: u64) -> Vec<(Vec<u64>, Vec<u64>)> {
    let n = spec.terms.len();
    let m = spec.arrows.len();
    let mut out = Vec::new();
    let mut ranks = vec![0u64; m];
    loop {
        let r = |j: isize| if j < 0 || j as usize >= m { 0 } else { ranks[j as usize] };
        let dims: Vec<u64> = (0..n as isize).map(|i| r(i - 1) + r(i)).collect();
        let ok = spec.terms.iter().zip(&dims).all(|(t, &d)| t.dim.map_or(true, |x| x == d))
            && spec.arrows.iter().enumerate().all(|(j, a)| {
                a.rank.map_or(true, |x| x == ranks[j])
                    && a.flags.iter().all(|f| match f {
                        ArrowFlag::Injective => ranks[j] == dims[j],
                        ArrowFlag::Surjective => ranks[j] == dims[j + 1],
                        ArrowFlag::Zero => ranks[j] == 0,
                    })
            });
        if ok {
            out.push((dims, ranks.clone()));
        }
        let mut k = 0;
        loop {
            if k == m {
                return out;
            }
            if ranks[k] < bound {
                ranks[k] += 1;
                break;
            }
            ranks[k] = 0;
            k += 1;
        }
    }
}

/// Values shared by every solution, per coordinate.
pub fn forced<T: PartialEq + Copy>(columns: impl Iterator<Item = Vec<T>>, len: usize) -> Vec<Option<T>> {
    let mut acc: Option<Vec<Option<T>>> = None;
    for row in columns {
        acc = Some(match acc {
            None => row.into_iter().map(Some).collect(),
            Some(prev) => prev
                .into_iter()
                .zip(row)
                .map(|(p, x)| p.filter(|&p| p == x))
                .collect(),
        });
    }
    acc.unwrap_or_else(|| vec![None; len])
}
