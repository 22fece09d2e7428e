//! Landau-Ginzburg Hodge numbers `h^{p,q}`, `f^{p,q}`, the mirror del Pezzo
//! diamond, and the divisibility obstruction for `i^{p,q}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{check_d, Error, Result};
use crate::filtration::weight_filtration;
use crate::les::{ArrowFlag, ExactSequenceSpec};
use crate::matrix::RationalMatrix;
use crate::surface::{build_surface_model, cohomology_ladder, relative_partition, Chase, SurfaceModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HodgeFamily {
    /// From the monodromy weight filtration.
    H,
    /// From f-adapted logarithmic forms.
    F,
    /// Hodge numbers of the mirror variety.
    X,
    /// Candidate tables for the vanishing-cycle numbers.
    IConstraint,
}

/// `(p, q) -> value` for `0 <= p, q <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HodgeTable {
    pub family: HodgeFamily,
    n: usize,
    entries: Vec<u64>,
}

impl HodgeTable {
    pub fn zeros(family: HodgeFamily, n: usize) -> Self {
        Self {
            family,
            n,
            entries: vec![0; (n + 1) * (n + 1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `None` outside `0..=n`.
    pub fn get(&self, p: usize, q: usize) -> Option<u64> {
        (p <= self.n && q <= self.n).then(|| self.entries[p * (self.n + 1) + q])
    }

    pub fn set(&mut self, p: usize, q: usize, value: u64) {
        assert!(p <= self.n && q <= self.n, "({p},{q}) outside the diamond");
        self.entries[p * (self.n + 1) + q] = value;
    }

    /// `sum_{p+q=m} value(p, q)`.
    pub fn degree_sum(&self, m: usize) -> u64 {
        (0..=self.n)
            .filter(|&p| m >= p && m - p <= self.n)
            .map(|p| self.get(p, m - p).unwrap_or(0))
            .sum()
    }

    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        let n = self.n;
        (0..=n).flat_map(move |p| (0..=n).map(move |q| ((p, q), self.get(p, q).unwrap_or(0))))
    }

    /// Entrywise equality, ignoring the family tag.
    pub fn same_numbers(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }

    /// `(p, q) -> value(p, n - q)`.
    pub fn rotated(&self) -> Self {
        let mut out = Self::zeros(self.family, self.n);
        for ((p, q), v) in self.cells() {
            out.set(p, self.n - q, v);
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.cells().all(|((p, q), v)| self.get(q, p) == Some(v))
    }
}

impl Serialize for HodgeTable {
    /// `{"p,q": value}` over the whole square.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for ((p, q), v) in self.cells() {
            map.serialize_entry(&format!("{p},{q}"), &v)?;
        }
        map.end()
    }
}

impl fmt::Display for HodgeTable {
    /// Rows `q = n..0` top to bottom, columns `p = 0..n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in (0..=self.n).rev() {
            let row: Vec<String> = (0..=self.n)
                .map(|p| format!("{:>3}", self.get(p, q).unwrap_or(0)))
                .collect();
            write!(f, "q={q} |{}", row.join(""))?;
            if q > 0 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Relative cohomology `H^{n+a}(Y, Y_b)` with the logarithm of monodromy on
/// each group, keyed by `a`. Missing groups are zero.
#[derive(Clone, Debug)]
pub struct RelativeCohomology {
    pub n: usize,
    pub groups: BTreeMap<isize, RationalMatrix>,
}

impl RelativeCohomology {
    /// For a surface only `H^2(Y, Y_b)` (`a = 0`) is nonzero.
    pub fn from_model(model: &SurfaceModel) -> Self {
        debug_assert!(model.h_rel.iter().enumerate().all(|(k, &dim)| k == 2 || dim == 0));
        let mut groups = BTreeMap::new();
        groups.insert(0, model.n_rel_cohomology());
        Self { n: 2, groups }
    }

    /// `N^{n-|a|} != 0` and `N^{n-|a|+1} = 0` on every nonzero `H^{n+a}`.
    pub fn is_fano_type(&self) -> bool {
        self.groups.iter().all(|(&a, n_op)| {
            if n_op.rows() == 0 {
                return true;
            }
            let Some(c) = self.n.checked_sub(a.unsigned_abs()) else {
                return false;
            };
            let below = n_op.pow(c).expect("square");
            let at = &below * n_op;
            !below.is_zero() && at.is_zero()
        })
    }

    /// `h^{p,n-q} = dim gr_{2(n-p)} W(N, n-a) H^{n+p-q}` when `a = p - q >= 0`,
    /// and `dim gr_{2(n-q)} W(N, n+a) H^{n+p-q}` when `a < 0`.
    pub fn h_numbers(&self) -> Result<HodgeTable> {
        let n = self.n;
        let mut filtrations = BTreeMap::new();
        for (&a, n_op) in &self.groups {
            let Some(center) = n.checked_sub(a.unsigned_abs()) else {
                continue;
            };
            filtrations.insert(a, weight_filtration(n_op, center)?);
        }
        let mut table = HodgeTable::zeros(HodgeFamily::H, n);
        for p in 0..=n {
            for q in 0..=n {
                let a = p as isize - q as isize;
                let Some(w) = filtrations.get(&a) else {
                    continue;
                };
                let index = if a >= 0 { 2 * (n - p) } else { 2 * (n - q) };
                table.set(p, n - q, w.graded_dim(index) as u64);
            }
        }
        Ok(table)
    }
}

pub fn h_table(model: &SurfaceModel) -> Result<HodgeTable> {
    let rel = RelativeCohomology::from_model(model);
    if !rel.is_fano_type() {
        return Err(Error::NotFanoType { d: model.d });
    }
    rel.h_numbers()
}

/// The f-number computation together with its intermediate results.
#[derive(Clone, Debug, Serialize)]
pub struct FDerivation {
    pub d: usize,
    /// `h^i(Z, O_Z)`, rational surface.
    pub h_structure_sheaf: Vec<u64>,
    /// `h^i(Z, omega_Z)` by Serre duality.
    pub h_canonical: Vec<u64>,
    /// `h^i(Z, Omega^1(log D)(-D))` from the degenerate spectral sequence.
    pub h_log1_twisted: Vec<u64>,
    /// `h^i(Z, Omega^1(log D, f))` from its extension by `O_D`.
    pub h_log1_adapted: Vec<u64>,
    pub chases: Vec<Chase>,
    pub table: HodgeTable,
}

/// `f^{p,q} = h^p(Z, Omega^q_Z(log D, f))`.
///
/// 1. `h(O_Z) = (1, 0, 0)`, so `h(omega_Z) = (0, 0, 1)` by Serre duality.
/// 2. `Omega^0(log D)(-D) = Omega^2(log D)(-D) = omega_Z`, and the spectral
///    sequence of the resolution of `j_! C_Y` degenerates at `E_1`, so
///    `h^k_c(Y) = h^k(Omega^0(-D)) + h^{k-1}(Omega^1(-D)) + h^{k-2}(Omega^2(-D))`.
///    Each degree is chased as two short exact sequences through the middle
///    filtration step.
/// 3. `Omega^0(log D, f) = omega_Z`, `Omega^2(log D, f) = O_Z`, and
///    `0 -> Omega^1(log D)(-D) -> Omega^1(log D, f) -> O_D -> 0` with a nonzero
///    connecting map `H^0(O_D) -> H^1(Omega^1(log D)(-D))`.
pub fn f_derivation(d: usize) -> Result<FDerivation> {
    check_d(d, 0, 9)?;
    let model = build_surface_model(d)?;
    f_derivation_from(&model)
}

pub fn f_derivation_from(model: &SurfaceModel) -> Result<FDerivation> {
    let h_structure_sheaf = vec![1u64, 0, 0];
    let h_canonical: Vec<u64> = h_structure_sheaf.iter().rev().copied().collect();
    let outer = &h_canonical;
    let hc = &model.hc_y;
    let at = |v: &[u64], k: isize| -> u64 {
        if k < 0 {
            0
        } else {
            v.get(k as usize).copied().unwrap_or(0)
        }
    };

    let mut chases = Vec::new();
    let mut h_log1_twisted = vec![0u64; 3];
    for k in 0..=4isize {
        // 0 -> F^1 -> H^k_c(Y) -> H^k(Omega^0(-D)) -> 0
        let top = Chase::run(
            &format!("E1 degeneration, degree {k}: top quotient"),
            &["Omega^0(log D)(-D) = omega_Z", "E_1 degeneration"],
            ExactSequenceSpec::new([
                (format!("F1H{k}"), None),
                (format!("H{k}c(Y)"), Some(at(hc, k))),
                (format!("H{k}(Omega0(-D))"), Some(at(outer, k))),
            ]),
        )?;
        let f1 = top.solution.solved_dims()[0];
        // 0 -> H^{k-2}(Omega^2(-D)) -> F^1 -> H^{k-1}(Omega^1(-D)) -> 0
        let middle_degree = k - 1;
        let middle_known = !(0..=2).contains(&middle_degree);
        let bottom = Chase::run(
            &format!("E1 degeneration, degree {k}: bottom step"),
            &["Omega^2(log D)(-D) = omega_Z", "E_1 degeneration"],
            ExactSequenceSpec::new([
                (format!("H{}(Omega2(-D))", k - 2), Some(at(outer, k - 2))),
                (format!("F1H{k}"), Some(f1)),
                (
                    format!("H{middle_degree}(Omega1(-D))"),
                    middle_known.then_some(0),
                ),
            ]),
        )?;
        if !middle_known {
            h_log1_twisted[middle_degree as usize] = bottom.solution.solved_dims()[2];
        }
        chases.push(top);
        chases.push(bottom);
    }

    let h_structure_d = [1u64, 1, 0];
    let adapted = Chase::run(
        "extension of Omega^1(log D)(-D) by O_D",
        &[
            "h(O_D) = (1, 1, 0)",
            "the connecting map H^0(O_D) -> H^1(Omega^1(log D)(-D)) is nonzero",
        ],
        cohomology_ladder(
            ["Omega1(-D)", "Omega1(f)", "O_D"],
            [
                &h_log1_twisted.iter().copied().map(Some).collect::<Vec<_>>(),
                &[],
                &h_structure_d.map(Some),
            ],
            2,
        )
        .with_flag(2, ArrowFlag::Injective),
    )?;
    let h_log1_adapted: Vec<u64> = adapted.solution.solved_dims().into_iter().skip(1).step_by(3).collect();
    chases.push(adapted);

    let mut table = HodgeTable::zeros(HodgeFamily::F, 2);
    for p in 0..=2 {
        table.set(p, 0, h_canonical[p]);
        table.set(p, 1, h_log1_adapted[p]);
        table.set(p, 2, h_structure_sheaf[p]);
    }
    Ok(FDerivation {
        d: model.d,
        h_structure_sheaf,
        h_canonical,
        h_log1_twisted,
        h_log1_adapted,
        chases,
        table,
    })
}

pub fn f_table(d: usize) -> Result<HodgeTable> {
    Ok(f_derivation(d)?.table)
}

/// Hodge diamond of the degree-`d` del Pezzo surface, the blowup of `P^2`
/// in `9 - d` points: each blowup adds one to `h^{1,1}`.
pub fn x_hodge_table(d: usize) -> Result<HodgeTable> {
    if d == 0 {
        return Err(Error::NotDelPezzo);
    }
    check_d(d, 1, 9)?;
    let mut table = HodgeTable::zeros(HodgeFamily::X, 2);
    for p in 0..=2 {
        table.set(p, p, 1);
    }
    let blown_up_points = 9 - d as u64;
    table.set(1, 1, 1 + blown_up_points);
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum IVerdict {
    /// Some table with entries divisible by the fiber count matches `h`.
    Holds,
    /// No divisible table matches `h`, so `i != h`.
    CounterexampleImpossibleToAvoid,
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IObstruction {
    pub d: usize,
    /// Number of singular fibers, each with a single node.
    pub nodal_fibers: usize,
    pub verdict: IVerdict,
    /// Every table with entries divisible by `nodal_fibers` and the right
    /// degree sums.
    pub candidates: Vec<HodgeTable>,
    /// Whether `h` itself has an entry not divisible by `nodal_fibers`.
    pub h_violates_divisibility: bool,
    /// `true` except at `d = 9`; the obstruction for other `d` is an
    /// extension of the same counting argument.
    pub extension: bool,
}

/// All `n = 2` tables with entries in `divisor * N` and `degree_sum(m) = sums[m]`.
pub fn divisible_tables(divisor: u64, sums: &[u64]) -> Vec<HodgeTable> {
    let n = 2;
    let mut per_degree: Vec<Vec<Vec<u64>>> = Vec::new();
    for m in 0..=2 * n {
        let target = sums.get(m).copied().unwrap_or(0);
        let cells = (0..=n).filter(|&p| m >= p && m - p <= n).count();
        let mut options = Vec::new();
        if target % divisor == 0 {
            compositions(target / divisor, cells, &mut Vec::new(), &mut options);
        }
        for o in &mut options {
            o.iter_mut().for_each(|x| *x *= divisor);
        }
        per_degree.push(options);
    }
    let mut out = vec![HodgeTable::zeros(HodgeFamily::IConstraint, n)];
    for (m, options) in per_degree.iter().enumerate() {
        let ps: Vec<usize> = (0..=n).filter(|&p| m >= p && m - p <= n).collect();
        out = out
            .into_iter()
            .flat_map(|t| {
                options.iter().map({
                    let ps = &ps;
                    move |o| {
                        let mut t = t.clone();
                        for (&p, &v) in ps.iter().zip(o) {
                            t.set(p, m - p, v);
                        }
                        t
                    }
                })
            })
            .collect();
    }
    out
}

fn compositions(total: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Every nodal fiber contributes the same vanishing cohomology, so each
/// `i^{p,q}` is a multiple of the number `12 - d` of nodal fibers, while
/// `sum_{p+q=m} i^{p,q} = dim H^m(Y, Y_b)`. Searches all such tables for one
/// equal to the `h`-table.
pub fn i_obstruction(d: usize) -> IObstruction {
    let nodal_fibers = 12usize.saturating_sub(d);
    let not_applicable = |reason: &str| IObstruction {
        d,
        nodal_fibers,
        verdict: IVerdict::NotApplicable(reason.to_string()),
        candidates: Vec::new(),
        h_violates_divisibility: false,
        extension: d != 9,
    };
    if d > 9 {
        return not_applicable("d must lie in 1..=9 for a del Pezzo mirror with 12 - d nodal fibers");
    }
    let model = build_surface_model(d).expect("d is in range");
    let h = match h_table(&model) {
        Ok(h) => h,
        Err(_) => return not_applicable("the h-numbers are undefined: not of Fano type"),
    };
    let divisor = nodal_fibers as u64;
    let candidates = divisible_tables(divisor, &model.h_rel);
    let matched = candidates.iter().any(|c| c.same_numbers(&h));
    let h_violates_divisibility = h.cells().any(|(_, v)| v % divisor != 0);
    IObstruction {
        d,
        nodal_fibers,
        verdict: if matched {
            IVerdict::Holds
        } else {
            IVerdict::CounterexampleImpossibleToAvoid
        },
        candidates,
        h_violates_divisibility,
        extension: d != 9,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Pass,
    Fail,
    NotApplicable,
}

impl Check {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }

    pub fn is_fail(self) -> bool {
        self == Check::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumIdentity {
    /// `dim H^m(Y, Y_b)` for `m = 0..=4`.
    pub expected: Vec<u64>,
    /// Per degree, `None` when the family is undefined.
    pub h: Option<Vec<bool>>,
    pub f: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub d: usize,
    pub h: Option<HodgeTable>,
    pub f: HodgeTable,
    pub x: Option<HodgeTable>,
    pub fano_type: bool,
    pub jordan_partition: Vec<usize>,
    pub sum_identity: SumIdentity,
    pub f_equals_h: Check,
    pub mirror_rotation: Check,
    pub i_obstruction: IObstruction,
}

impl ConjectureReport {
    /// Every applicable check passed. An `i`-counterexample is an expected
    /// verdict, not a failure.
    pub fn all_applicable_pass(&self) -> bool {
        self.sum_identity.f.iter().all(|&b| b)
            && self
                .sum_identity
                .h
                .as_ref()
                .map_or(true, |h| h.iter().all(|&b| b))
            && !self.f_equals_h.is_fail()
            && !self.mirror_rotation.is_fail()
    }
}

pub fn check_all(d: usize) -> Result<ConjectureReport> {
    check_d(d, 0, 9)?;
    let model = build_surface_model(d)?;
    let fano_type = RelativeCohomology::from_model(&model).is_fano_type();
    let jordan_partition = relative_partition(&model)?;
    let h = if fano_type { Some(h_table(&model)?) } else { None };
    let f = f_derivation_from(&model)?.table;
    let x = if d >= 1 { Some(x_hodge_table(d)?) } else { None };

    let expected = model.h_rel.clone();
    let sums = |t: &HodgeTable| -> Vec<bool> {
        expected
            .iter()
            .enumerate()
            .map(|(m, &e)| t.degree_sum(m) == e)
            .collect()
    };
    let sum_identity = SumIdentity {
        h: h.as_ref().map(&sums),
        f: sums(&f),
        expected: expected.clone(),
    };
    let f_equals_h = match &h {
        Some(h) => Check::from_bool(f.same_numbers(h)),
        None => Check::NotApplicable,
    };
    let mirror_rotation = match &x {
        Some(x) => Check::from_bool(f.same_numbers(&x.rotated())),
        None => Check::NotApplicable,
    };
    Ok(ConjectureReport {
        d,
        h,
        f,
        x,
        fano_type,
        jordan_partition,
        sum_identity,
        f_equals_h,
        mirror_rotation,
        i_obstruction: i_obstruction(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::one;

    fn table(rows: [[u64; 3]; 3]) -> HodgeTable {
        let mut t = HodgeTable::zeros(HodgeFamily::H, 2);
        for p in 0..3 {
            for q in 0..3 {
                t.set(p, q, rows[p][q]);
            }
        }
        t
    }

    fn antidiagonal(outer: u64, middle: u64) -> HodgeTable {
        table([[0, 0, outer], [0, middle, 0], [outer, 0, 0]])
    }

    #[test]
    fn h_numbers_at_three_and_nine() {
        let h = h_table(&build_surface_model(3).unwrap()).unwrap();
        assert!(h.same_numbers(&antidiagonal(1, 7)));
        let h = h_table(&build_surface_model(9).unwrap()).unwrap();
        assert!(h.same_numbers(&antidiagonal(1, 1)));
        assert!(h.is_symmetric());
    }

    #[test]
    fn h_numbers_need_fano_type() {
        assert_eq!(
            h_table(&build_surface_model(0).unwrap()),
            Err(Error::NotFanoType { d: 0 })
        );
    }

    #[test]
    fn f_numbers() {
        assert!(f_table(1).unwrap().same_numbers(&antidiagonal(1, 9)));
        assert_eq!(f_table(0).unwrap().get(1, 1), Some(10));
        for d in 0..=9 {
            let der = f_derivation(d).unwrap();
            assert_eq!(der.h_canonical, vec![0, 0, 1]);
            assert_eq!(der.h_log1_twisted, vec![0, 10 - d as u64, 0]);
            assert_eq!(der.h_log1_adapted, der.h_log1_twisted);
            let t = der.table;
            assert_eq!(t.degree_sum(2), 12 - d as u64);
            for m in [0, 1, 3, 4] {
                assert_eq!(t.degree_sum(m), 0);
            }
        }
    }

    #[test]
    fn del_pezzo_diamonds() {
        assert_eq!(x_hodge_table(9).unwrap().get(1, 1), Some(1));
        assert_eq!(x_hodge_table(1).unwrap().get(1, 1), Some(9));
        for d in 1..=9 {
            let x = x_hodge_table(d).unwrap();
            assert_eq!(x.cells().map(|(_, v)| v).sum::<u64>(), 12 - d as u64);
        }
        assert_eq!(x_hodge_table(0), Err(Error::NotDelPezzo));
        assert!(matches!(x_hodge_table(10), Err(Error::DOutOfRange { .. })));
    }

    #[test]
    fn i_obstruction_verdicts() {
        let nine = i_obstruction(9);
        assert_eq!(nine.verdict, IVerdict::CounterexampleImpossibleToAvoid);
        assert!(nine.h_violates_divisibility);
        assert!(!nine.extension);
        assert_eq!(nine.nodal_fibers, 3);
        assert_eq!(nine.candidates.len(), 3);

        assert!(matches!(i_obstruction(11).verdict, IVerdict::NotApplicable(_)));
        assert!(matches!(i_obstruction(0).verdict, IVerdict::NotApplicable(_)));

        let eight = i_obstruction(8);
        assert_eq!(eight.verdict, IVerdict::CounterexampleImpossibleToAvoid);
        assert!(eight.extension);
    }

    #[test]
    fn rotation_and_degree_sums() {
        let t = table([[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        let r = t.rotated();
        assert_eq!(r.get(0, 2), Some(1));
        assert_eq!(r.get(2, 0), Some(9));
        assert_eq!(t.degree_sum(2), 3 + 5 + 7);
        assert_eq!(t.degree_sum(4), 9);
        assert_eq!(t.get(3, 0), None);
    }

    fn block(sizes: &[usize]) -> RationalMatrix {
        let n: usize = sizes.iter().sum();
        let mut m = RationalMatrix::zeros(n, n);
        let mut offset = 0;
        for &s in sizes {
            for i in 0..s - 1 {
                m[(offset + i + 1, offset + i)] = one();
            }
            offset += s;
        }
        m
    }

    #[test]
    fn general_formula_reads_every_even_step_once() {
        // n = 3 with groups at a = -1, 0, 2
        let mut groups = BTreeMap::new();
        groups.insert(0, block(&[4, 2, 1]));
        groups.insert(-1, block(&[3, 1, 1]));
        groups.insert(2, block(&[2, 1]));
        let rel = RelativeCohomology { n: 3, groups };
        let h = rel.h_numbers().unwrap();
        for (&a, n_op) in &rel.groups {
            let center = 3 - a.unsigned_abs();
            let w = weight_filtration(n_op, center).unwrap();
            let even: usize = (0..=2 * center).step_by(2).map(|k| w.graded_dim(k)).sum();
            assert_eq!(h.degree_sum((3 + a) as usize), even as u64, "a = {a}");
        }
        assert!(rel.is_fano_type());
        let mut groups = rel.groups.clone();
        groups.insert(1, RationalMatrix::zeros(2, 2));
        assert!(!RelativeCohomology { n: 3, groups }.is_fano_type());
    }
}
