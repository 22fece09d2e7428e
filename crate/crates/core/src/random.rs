//! Random instance generators for property sweeps and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::les::{ArrowFlag, ExactSequenceSpec};
use crate::matrix::RationalMatrix;
use crate::nilpotent::nilpotent_exp;
use crate::rational::{int, one};

/// Random partition of `dim` with every part at most `max_part`.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_part: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = dim;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(max_part.max(1)));
        parts.push(s);
        left -= s;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Direct sum of lower-shift Jordan blocks of the given sizes.
pub fn jordan_matrix(partition: &[usize]) -> RationalMatrix {
    let n: usize = partition.iter().sum();
    let mut m = RationalMatrix::zeros(n, n);
    let mut offset = 0;
    for &s in partition {
        for i in 0..s.saturating_sub(1) {
            m[(offset + i + 1, offset + i)] = one();
        }
        offset += s;
    }
    m
}

/// Random invertible matrix with small integer entries, with its inverse.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (RationalMatrix, RationalMatrix) {
    loop {
        let mut p = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] = int(rng.gen_range(-2..=2));
            }
        }
        if let Some(inv) = p.inverse().expect("square") {
            return (p, inv);
        }
    }
}

/// `P J P^{-1}` for a random partition `J` of `dim` and random `P`.
pub fn random_nilpotent<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_part: usize,
) -> (RationalMatrix, Vec<usize>) {
    let partition = random_partition(rng, dim, max_part);
    let (p, inv) = random_invertible(rng, dim);
    let j = jordan_matrix(&partition);
    (&(&p * &j) * &inv, partition)
}

/// `P exp(U) P^{-1}` for a random strictly upper triangular `U`.
pub fn random_unipotent<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> RationalMatrix {
    let mut u = RationalMatrix::zeros(dim, dim);
    let density = rng.gen_range(0.2..=1.0);
    for i in 0..dim {
        for j in i + 1..dim {
            if rng.gen_bool(density) {
                u[(i, j)] = int(rng.gen_range(-3..=3));
            }
        }
    }
    let t = nilpotent_exp(&u).expect("strictly triangular");
    let (p, inv) = random_invertible(rng, dim);
    &(&p * &t) * &inv
}

/// A consistent sequence spec together with the ranks it was generated from.
#[derive(Clone, Debug)]
pub struct HiddenSequence {
    pub spec: ExactSequenceSpec,
    pub dims: Vec<u64>,
    pub ranks: Vec<u64>,
}

/// Draws arrow ranks first, derives the term dimensions, then erases a
/// random subset of dimensions and ranks and adds some true flags.
pub fn random_sequence<R: Rng + ?Sized>(rng: &mut R, max_terms: usize, max_rank: u64) -> HiddenSequence {
    let n = rng.gen_range(1..=max_terms.max(1));
    let ranks: Vec<u64> = (0..n - 1).map(|_| rng.gen_range(0..=max_rank)).collect();
    let rank = |j: isize| -> u64 {
        if j < 0 || j as usize >= ranks.len() {
            0
        } else {
            ranks[j as usize]
        }
    };
    let dims: Vec<u64> = (0..n as isize).map(|i| rank(i - 1) + rank(i)).collect();

    let erase_dim = rng.gen_range(0.0..=1.0);
    let mut spec = ExactSequenceSpec::new(
        dims.iter()
            .enumerate()
            .map(|(i, &d)| (format!("V{i}"), (!rng.gen_bool(erase_dim)).then_some(d))),
    );
    for (j, arrow) in spec.arrows.iter_mut().enumerate() {
        if rng.gen_bool(0.15) {
            arrow.rank = Some(ranks[j]);
        }
        let mut true_flags = Vec::new();
        if ranks[j] == dims[j] {
            true_flags.push(ArrowFlag::Injective);
        }
        if ranks[j] == dims[j + 1] {
            true_flags.push(ArrowFlag::Surjective);
        }
        if ranks[j] == 0 {
            true_flags.push(ArrowFlag::Zero);
        }
        if let Some(&flag) = true_flags.choose(rng) {
            if rng.gen_bool(0.3) {
                arrow.flags.insert(flag);
            }
        }
    }
    HiddenSequence { spec, dims, ranks }
}
