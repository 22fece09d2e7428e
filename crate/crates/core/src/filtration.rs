//! Monodromy weight filtration of a nilpotent operator.
//!
//! For `N` with `N^{m+1} = 0`, the weight filtration centered at `m` is the
//! unique increasing chain `0 ⊆ W_0 ⊆ ... ⊆ W_{2m} = V` such that
//!
//! 1. `N(W_i) ⊆ W_{i-2}`, and
//! 2. `N^l : gr_{m+l} -> gr_{m-l}` is an isomorphism for every `l >= 0`.
//!
//! It is built from a Jordan basis: in a chain of length `s` the vector
//! `N^j v` gets weight `m + (s - 1) - 2j`, and `W_k` is spanned by the chain
//! vectors of weight at most `k`. [`verify_filtration_axioms`] re-checks both
//! properties using subspace arithmetic alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::nilpotent::{jordan_profile_with, require_nilpotent, ChainOrder};
use crate::rational::{format_rational, parse_rational};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFiltration {
    center: usize,
    subspaces: Vec<Subspace>,
    graded_dims: Vec<usize>,
}

impl WeightFiltration {
    /// Wraps `W_0, ..., W_{2m}` without checking any axiom.
    pub fn from_subspaces(center: usize, subspaces: Vec<Subspace>) -> Result<Self> {
        if subspaces.len() != 2 * center + 1 {
            return Err(Error::DimensionMismatch(format!(
                "a filtration centered at {center} needs {} steps, got {}",
                2 * center + 1,
                subspaces.len()
            )));
        }
        let ambient = subspaces[0].ambient_dim();
        if subspaces.iter().any(|s| s.ambient_dim() != ambient) {
            return Err(Error::DimensionMismatch(
                "filtration steps live in different ambient spaces".into(),
            ));
        }
        let graded_dims = graded(&subspaces);
        Ok(Self {
            center,
            subspaces,
            graded_dims,
        })
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspaces[0].ambient_dim()
    }

    /// `W_k`, with `W_k = 0` for negative `k` and `W_k = W_{2m}` above the top.
    pub fn step(&self, k: isize) -> Subspace {
        if k < 0 {
            Subspace::zero(self.ambient_dim())
        } else {
            let k = (k as usize).min(self.subspaces.len() - 1);
            self.subspaces[k].clone()
        }
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    /// `dim W_k - dim W_{k-1}` for `k = 0..=2m`.
    pub fn graded_dims(&self) -> &[usize] {
        &self.graded_dims
    }

    pub fn graded_dim(&self, k: usize) -> usize {
        self.graded_dims.get(k).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> FiltrationJson {
        FiltrationJson {
            center: self.center,
            graded_dims: self.graded_dims.clone(),
            bases: self
                .subspaces
                .iter()
                .map(|s| {
                    s.basis()
                        .iter()
                        .map(|v| v.iter().map(format_rational).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(raw: &FiltrationJson, ambient_dim: usize) -> Result<Self> {
        let subspaces = raw
            .bases
            .iter()
            .map(|basis| {
                let vectors = basis
                    .iter()
                    .map(|v| v.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Subspace::span(ambient_dim, vectors)
            })
            .collect::<Result<Vec<_>>>()?;
        let w = Self::from_subspaces(raw.center, subspaces)?;
        if w.graded_dims != raw.graded_dims {
            return Err(Error::Json("graded_dims disagree with the bases".into()));
        }
        Ok(w)
    }
}

/// `{"center": m, "graded_dims": [...], "bases": [[vector, ...], ...]}`, one
/// basis per step `W_0..W_{2m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationJson {
    pub center: usize,
    pub graded_dims: Vec<usize>,
    pub bases: Vec<Vec<Vec<String>>>,
}

fn graded(subspaces: &[Subspace]) -> Vec<usize> {
    let mut prev = 0;
    subspaces
        .iter()
        .map(|s| {
            let g = s.dim().saturating_sub(prev);
            prev = s.dim();
            g
        })
        .collect()
}

pub fn weight_filtration(n: &RationalMatrix, center: usize) -> Result<WeightFiltration> {
    weight_filtration_with(n, center, ChainOrder::Canonical)
}

pub fn weight_filtration_with(
    n: &RationalMatrix,
    center: usize,
    order: ChainOrder,
) -> Result<WeightFiltration> {
    let index = require_nilpotent(n)?;
    if index > center + 1 {
        return Err(Error::CenterTooSmall { center });
    }
    let profile = jordan_profile_with(n, order)?;
    let dim = profile.dim;
    let top = 2 * center;
    let mut by_weight: Vec<Vec<_>> = vec![Vec::new(); top + 1];
    for chain in &profile.chains {
        let s = chain.len();
        for (j, v) in chain.iter().enumerate() {
            // s <= m + 1 keeps the weight inside 0..=2m
            let weight = center + (s - 1) - 2 * j;
            by_weight[weight].push(v.clone());
        }
    }
    let mut subspaces = Vec::with_capacity(top + 1);
    let mut acc = Vec::new();
    for vectors in by_weight {
        acc.extend(vectors);
        subspaces.push(Subspace::span(dim, acc.clone())?);
    }
    WeightFiltration::from_subspaces(center, subspaces)
}

/// Outcome of checking a candidate filtration against `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    /// Steps are nested and `W_{2m}` is the whole space.
    pub well_formed: bool,
    /// `N(W_i) ⊆ W_{i-2}` for every `i`.
    pub lowers_weight: bool,
    /// `N^l : gr_{m+l} -> gr_{m-l}` is an isomorphism for every `l`.
    pub graded_isomorphisms: bool,
}

impl FiltrationReport {
    pub fn all_pass(&self) -> bool {
        self.well_formed && self.lowers_weight && self.graded_isomorphisms
    }
}

pub fn verify_filtration_axioms(n: &RationalMatrix, w: &WeightFiltration) -> Result<FiltrationReport> {
    n.require_square()?;
    if n.rows() != w.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator on Q^{} but filtration of Q^{}",
            n.rows(),
            w.ambient_dim()
        )));
    }
    let m = w.center() as isize;
    let top = 2 * m;

    let mut well_formed = w.step(top).is_full();
    for k in 1..=top {
        well_formed &= w.step(k).contains(&w.step(k - 1))?;
    }

    let mut lowers_weight = true;
    for i in 0..=top {
        lowers_weight &= w.step(i - 2).contains(&w.step(i).image_under(n)?)?;
    }

    let mut graded_isomorphisms = true;
    let mut power = RationalMatrix::identity(n.rows());
    for l in 0..=m {
        if l > 0 {
            power = &power * n;
        }
        let upper = w.step(m + l);
        let upper_below = w.step(m + l - 1);
        let lower = w.step(m - l);
        let lower_below = w.step(m - l - 1);
        let g_up = upper.dim() as isize - upper_below.dim() as isize;
        let g_down = lower.dim() as isize - lower_below.dim() as isize;

        let image = upper.image_under(&power)?;
        let lands = lower.contains(&image)? && lower_below.contains(&upper_below.image_under(&power)?)?;
        let induced_rank = image.sum(&lower_below)?.dim() as isize - lower_below.dim() as isize;
        graded_isomorphisms &= lands && g_up == g_down && induced_rank == g_up;
    }

    Ok(FiltrationReport {
        well_formed,
        lowers_weight,
        graded_isomorphisms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::one;

    fn single_block(s: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(s, s);
        for i in 0..s - 1 {
            m[(i + 1, i)] = one();
        }
        m
    }

    #[test]
    fn zero_operator_concentrates_at_center() {
        let n = RationalMatrix::zeros(4, 4);
        for m in 0..4 {
            let w = weight_filtration(&n, m).unwrap();
            for k in 0..=2 * m {
                assert_eq!(w.step(k as isize).dim(), if k < m { 0 } else { 4 });
                assert_eq!(w.graded_dim(k), if k == m { 4 } else { 0 });
            }
            assert!(verify_filtration_axioms(&n, &w).unwrap().all_pass());
        }
    }

    #[test]
    fn single_block_of_three_at_center_two() {
        let n = single_block(3);
        let w = weight_filtration(&n, 2).unwrap();
        assert_eq!(w.graded_dims(), &[1, 0, 1, 0, 1]);
        assert!(verify_filtration_axioms(&n, &w).unwrap().all_pass());
    }

    #[test]
    fn shifted_filtration_breaks_graded_isomorphism() {
        let n = single_block(3);
        let w = weight_filtration(&n, 2).unwrap();
        let shifted: Vec<Subspace> = (0..5).map(|k| w.step(k + 1)).collect();
        let shifted = WeightFiltration::from_subspaces(2, shifted).unwrap();
        let report = verify_filtration_axioms(&n, &shifted).unwrap();
        assert!(!report.graded_isomorphisms);
        assert!(!report.all_pass());
    }

    #[test]
    fn center_too_small() {
        let n = single_block(3);
        assert_eq!(weight_filtration(&n, 1), Err(Error::CenterTooSmall { center: 1 }));
        assert!(matches!(
            weight_filtration(&RationalMatrix::identity(2), 3),
            Err(Error::NotNilpotent { .. })
        ));
    }

    #[test]
    fn larger_center_pads_with_zero_steps() {
        let n = single_block(2);
        let w = weight_filtration(&n, 3).unwrap();
        assert_eq!(w.graded_dims(), &[0, 0, 1, 0, 1, 0, 0]);
        assert!(verify_filtration_axioms(&n, &w).unwrap().all_pass());
    }

    #[test]
    fn verifier_rejects_dimension_mismatch() {
        let w = weight_filtration(&single_block(3), 2).unwrap();
        assert!(matches!(
            verify_filtration_axioms(&single_block(2), &w),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let n = single_block(3);
        let w = weight_filtration(&n, 2).unwrap();
        let raw = w.to_json();
        assert_eq!(WeightFiltration::from_json(&raw, 3).unwrap(), w);
    }
}
