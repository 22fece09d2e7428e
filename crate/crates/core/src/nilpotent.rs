//! Jordan analysis of nilpotent operators and logarithms of unipotent ones.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::rational::{int, Rational};
use crate::subspace::Subspace;

/// Order in which kernel basis vectors are offered as chain tops.
///
/// Both orders produce a valid Jordan basis; they differ only in which one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChainOrder {
    #[default]
    Canonical,
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentProfile {
    pub dim: usize,
    /// `rank(N^k)` for `k = 0..=index`; the last entry is 0.
    pub power_ranks: Vec<usize>,
    /// Jordan block sizes, largest first.
    pub partition: Vec<usize>,
    /// Each chain is `[v, N v, ..., N^{s-1} v]` with `N^s v = 0`.
    pub chains: Vec<Vec<Vec<Rational>>>,
}

impl NilpotentProfile {
    /// Smallest `k` with `N^k = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.power_ranks.len() - 1
    }

    /// Number of Jordan blocks of size exactly `s`, read off the power ranks.
    pub fn blocks_of_size(&self, s: usize) -> usize {
        blocks_of_size(&self.power_ranks, s)
    }

    pub fn chain_partition(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.chains.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// Checks that the chains form a Jordan basis for `n`.
    pub fn verify_chains(&self, n: &RationalMatrix) -> bool {
        if n.rows() != self.dim || !n.is_square() {
            return false;
        }
        let mut all = Vec::with_capacity(self.dim);
        for chain in &self.chains {
            for (j, v) in chain.iter().enumerate() {
                let image = n.apply(v);
                let ok = match chain.get(j + 1) {
                    Some(next) => image == *next,
                    None => image.iter().all(Zero::is_zero),
                };
                if !ok {
                    return false;
                }
                all.push(v.clone());
            }
        }
        all.len() == self.dim
            && Subspace::span(self.dim, all).map_or(false, |s| s.is_full())
    }
}

fn blocks_of_size(ranks: &[usize], s: usize) -> usize {
    let r = |k: usize| ranks.get(k).copied().unwrap_or(0);
    // r_{s-1} - 2 r_s + r_{s+1} is nonnegative for genuine rank sequences
    r(s - 1) + r(s + 1) - 2 * r(s)
}

pub fn require_nilpotent(n: &RationalMatrix) -> Result<usize> {
    n.require_square()?;
    n.nilpotency_index()?
        .ok_or(Error::NotNilpotent { dim: n.rows() })
}

pub fn jordan_profile(n: &RationalMatrix) -> Result<NilpotentProfile> {
    jordan_profile_with(n, ChainOrder::Canonical)
}

/// Jordan partition and chain basis of a nilpotent operator.
///
/// Block sizes are processed largest first. For size `s`, chain tops are
/// taken greedily from the canonical basis of `ker N^s`, keeping a vector
/// only if it is independent of `ker N^{s-1}` plus the part of the longer
/// chains already inside `ker N^s`.
pub fn jordan_profile_with(n: &RationalMatrix, order: ChainOrder) -> Result<NilpotentProfile> {
    let index = require_nilpotent(n)?;
    let dim = n.rows();

    let mut powers = Vec::with_capacity(index + 1);
    powers.push(RationalMatrix::identity(dim));
    for k in 1..=index {
        let next = &powers[k - 1] * n;
        powers.push(next);
    }
    let power_ranks: Vec<usize> = powers.iter().map(RationalMatrix::rank).collect();
    let kernels: Vec<Subspace> = powers.iter().map(RationalMatrix::kernel).collect();

    let mut chains: Vec<Vec<Vec<Rational>>> = Vec::new();
    let mut covered = Subspace::zero(dim);
    for s in (1..=index).rev() {
        let wanted = blocks_of_size(&power_ranks, s);
        if wanted == 0 {
            continue;
        }
        let mut excluded = kernels[s - 1].sum(&covered.intersection(&kernels[s])?)?;
        let mut candidates: Vec<&Vec<Rational>> = kernels[s].basis().iter().collect();
        if order == ChainOrder::Reversed {
            candidates.reverse();
        }
        let mut tops = Vec::with_capacity(wanted);
        for c in candidates {
            if tops.len() == wanted {
                break;
            }
            if !excluded.contains_vector(c)? {
                excluded = excluded.sum(&Subspace::span(dim, vec![c.clone()])?)?;
                tops.push(c.clone());
            }
        }
        assert_eq!(tops.len(), wanted, "kernel filtration yields exactly the block count");
        for top in tops {
            let mut chain = vec![top];
            for _ in 1..s {
                let next = n.apply(chain.last().expect("nonempty"));
                chain.push(next);
            }
            covered = covered.sum(&Subspace::span(dim, chain.clone())?)?;
            chains.push(chain);
        }
    }

    let partition: Vec<usize> = (1..=index)
        .rev()
        .flat_map(|s| std::iter::repeat(s).take(blocks_of_size(&power_ranks, s)))
        .collect();
    Ok(NilpotentProfile {
        dim,
        power_ranks,
        partition,
        chains,
    })
}

/// `log T = sum_{k>=1} (-1)^{k+1} (T - I)^k / k`, a finite sum for unipotent `T`.
pub fn unipotent_log(t: &RationalMatrix) -> Result<RationalMatrix> {
    t.require_square()?;
    let dim = t.rows();
    let d = t - &RationalMatrix::identity(dim);
    let index = d.nilpotency_index()?.ok_or(Error::NotUnipotent)?;
    let mut log = RationalMatrix::zeros(dim, dim);
    let mut power = RationalMatrix::identity(dim);
    for k in 1..index {
        power = &power * &d;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let coeff = Rational::new(sign.into(), (k as i64).into());
        log = &log + &power.scale(&coeff);
    }
    Ok(log)
}

/// `exp N = sum_k N^k / k!`, a finite sum for nilpotent `N`.
pub fn nilpotent_exp(n: &RationalMatrix) -> Result<RationalMatrix> {
    let index = require_nilpotent(n)?;
    let dim = n.rows();
    let mut acc = RationalMatrix::identity(dim);
    let mut power = RationalMatrix::identity(dim);
    let mut factorial = Rational::one();
    for k in 1..index {
        power = &power * n;
        factorial *= int(k as i64);
        acc = &acc + &power.scale(&factorial.recip());
    }
    Ok(acc)
}
