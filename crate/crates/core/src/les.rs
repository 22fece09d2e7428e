//! Dimension chasing in long exact sequences.
//!
//! A sequence `0 -> V_0 -> V_1 -> ... -> V_{n-1} -> 0` is described by the
//! dimensions of its terms and the ranks of its arrows, any of which may be
//! unknown. Exactness at `V_i` together with rank-nullity gives
//!
//! ```text
//! dim V_i = rank(incoming) + rank(outgoing)
//! ```
//!
//! with the boundary arrows having rank 0. Arrow flags add
//! `injective => rank = dim source` (and the previous arrow is zero),
//! `surjective => rank = dim target` (and the next arrow is zero), and
//! `zero => rank = 0`. The solver propagates integer intervals over all
//! unknowns to a fixpoint.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on every unknown, so propagation always terminates.
pub const DIM_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowFlag {
    Injective,
    Surjective,
    Zero,
}

impl fmt::Display for ArrowFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArrowFlag::Injective => "injective",
            ArrowFlag::Surjective => "surjective",
            ArrowFlag::Zero => "zero",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub label: String,
    #[serde(default)]
    pub dim: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Arrow {
    #[serde(default)]
    pub rank: Option<u64>,
    #[serde(default)]
    pub flags: BTreeSet<ArrowFlag>,
}

/// `{"terms": [{"label": "...", "dim": n|null}, ...],
///   "arrows": [{"rank": n|null, "flags": ["surjective", ...]}, ...]}`
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactSequenceSpec {
    pub terms: Vec<Term>,
    pub arrows: Vec<Arrow>,
}

impl ExactSequenceSpec {
    /// Terms with the given labels and dimensions, joined by unconstrained arrows.
    pub fn new<S: Into<String>>(terms: impl IntoIterator<Item = (S, Option<u64>)>) -> Self {
        let terms: Vec<Term> = terms
            .into_iter()
            .map(|(label, dim)| Term {
                label: label.into(),
                dim,
            })
            .collect();
        let arrows = vec![Arrow::default(); terms.len().saturating_sub(1)];
        Self { terms, arrows }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Adds a flag to the arrow leaving term `arrow`.
    pub fn with_flag(mut self, arrow: usize, flag: ArrowFlag) -> Self {
        self.arrows[arrow].flags.insert(flag);
        self
    }

    pub fn with_rank(mut self, arrow: usize, rank: u64) -> Self {
        self.arrows[arrow].rank = Some(rank);
        self
    }

    pub fn with_dim(mut self, term: usize, dim: u64) -> Self {
        self.terms[term].dim = Some(dim);
        self
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.label == label)
    }

    pub fn arrow_label(&self, arrow: usize) -> String {
        format!("{}->{}", self.terms[arrow].label, self.terms[arrow + 1].label)
    }

    /// Rejects specs whose shape or flags contradict each other on their face.
    pub fn validate(&self) -> Result<()> {
        if self.terms.is_empty() {
            return Err(Error::MalformedSpec("a sequence needs at least one term".into()));
        }
        if self.arrows.len() + 1 != self.terms.len() {
            return Err(Error::MalformedSpec(format!(
                "{} terms need {} arrows, got {}",
                self.terms.len(),
                self.terms.len() - 1,
                self.arrows.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for t in &self.terms {
            if !seen.insert(t.label.as_str()) {
                return Err(Error::MalformedSpec(format!("duplicate label {:?}", t.label)));
            }
        }
        for (j, a) in self.arrows.iter().enumerate() {
            let source = self.terms[j].dim;
            let target = self.terms[j + 1].dim;
            let zero = a.flags.contains(&ArrowFlag::Zero);
            let name = self.arrow_label(j);
            if zero && a.rank.is_some_and(|r| r != 0) {
                return Err(Error::MalformedSpec(format!("{name} is zero but has nonzero rank")));
            }
            if zero && a.flags.contains(&ArrowFlag::Injective) && source.is_some_and(|d| d > 0) {
                return Err(Error::MalformedSpec(format!(
                    "{name} is zero and injective from a nonzero source"
                )));
            }
            if zero && a.flags.contains(&ArrowFlag::Surjective) && target.is_some_and(|d| d > 0) {
                return Err(Error::MalformedSpec(format!(
                    "{name} is zero and surjective onto a nonzero target"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum ChaseStatus {
    Solved,
    /// Labels of the terms and arrows whose values are not forced.
    Underdetermined(Vec<String>),
    /// The first constraint found to be unsatisfiable.
    Inconsistent(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChaseSolution {
    pub labels: Vec<String>,
    /// Forced dimension of each term, `None` if not forced.
    pub dims: Vec<Option<u64>>,
    /// Forced rank of each arrow, `None` if not forced.
    pub ranks: Vec<Option<u64>>,
    pub status: ChaseStatus,
}

impl ChaseSolution {
    pub fn is_solved(&self) -> bool {
        self.status == ChaseStatus::Solved
    }

    pub fn dim(&self, label: &str) -> Option<u64> {
        let i = self.labels.iter().position(|l| l == label)?;
        self.dims[i]
    }

    /// Dimensions in term order; panics unless solved.
    pub fn solved_dims(&self) -> Vec<u64> {
        assert!(self.is_solved(), "sequence is not solved: {:?}", self.status);
        self.dims.iter().map(|d| d.expect("solved")).collect()
    }

    /// Literal re-check of every constraint of `spec` against the forced values.
    pub fn satisfies(&self, spec: &ExactSequenceSpec) -> bool {
        if !self.is_solved() {
            return false;
        }
        let dims = self.solved_dims();
        let ranks: Vec<u64> = self.ranks.iter().map(|r| r.expect("solved")).collect();
        let rank = |j: isize| -> u64 {
            if j < 0 || j as usize >= ranks.len() {
                0
            } else {
                ranks[j as usize]
            }
        };
        let exact = (0..dims.len()).all(|i| dims[i] == rank(i as isize - 1) + rank(i as isize));
        let known_dims = spec
            .terms
            .iter()
            .zip(&dims)
            .all(|(t, &d)| t.dim.map_or(true, |k| k == d));
        let arrows = spec.arrows.iter().enumerate().all(|(j, a)| {
            a.rank.map_or(true, |k| k == ranks[j])
                && a.flags.iter().all(|flag| match flag {
                    ArrowFlag::Injective => ranks[j] == dims[j],
                    ArrowFlag::Surjective => ranks[j] == dims[j + 1],
                    ArrowFlag::Zero => ranks[j] == 0,
                })
        });
        exact && known_dims && arrows
    }

    /// Alternating sum of the dimensions vanishes; `None` if any is unknown.
    pub fn euler_check(&self) -> Option<bool> {
        alternating_sum(&self.dims).map(|s| s == 0)
    }
}

impl fmt::Display for ChaseSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<u64>| v.map_or_else(|| "?".to_string(), |x| x.to_string());
        let width = self.labels.iter().map(String::len).max().unwrap_or(4).max(4);
        writeln!(f, "{:<width$}  {:>6}  {:>14}", "term", "dim", "rank(outgoing)")?;
        for (i, label) in self.labels.iter().enumerate() {
            let rank = if i < self.ranks.len() {
                show(self.ranks[i])
            } else {
                "-".to_string()
            };
            writeln!(f, "{label:<width$}  {:>6}  {rank:>14}", show(self.dims[i]))?;
        }
        match &self.status {
            ChaseStatus::Solved => write!(f, "status: solved"),
            ChaseStatus::Underdetermined(free) => {
                write!(f, "status: underdetermined (free: {})", free.join(", "))
            }
            ChaseStatus::Inconsistent(why) => write!(f, "status: inconsistent ({why})"),
        }
    }
}

fn alternating_sum(dims: &[Option<u64>]) -> Option<i128> {
    dims.iter().enumerate().try_fold(0i128, |acc, (i, d)| {
        let d = i128::from((*d)?);
        Some(if i % 2 == 0 { acc + d } else { acc - d })
    })
}

/// `true` iff every dimension is known and their alternating sum vanishes.
pub fn euler_check(spec: &ExactSequenceSpec) -> Option<bool> {
    let dims: Vec<Option<u64>> = spec.terms.iter().map(|t| t.dim).collect();
    alternating_sum(&dims).map(|s| s == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Var {
    Dim(usize),
    Rank(usize),
}

#[derive(Clone, Debug)]
enum Constraint {
    Fixed(Var, u64),
    Equal(Var, Var),
    /// `total = sum(parts)`
    Sum(Var, Vec<Var>),
}

struct Intervals {
    lo: Vec<u64>,
    hi: Vec<u64>,
    terms: usize,
}

impl Intervals {
    fn slot(&self, v: Var) -> usize {
        match v {
            Var::Dim(i) => i,
            Var::Rank(j) => self.terms + j,
        }
    }

    fn get(&self, v: Var) -> (u64, u64) {
        let s = self.slot(v);
        (self.lo[s], self.hi[s])
    }

    /// Narrows `v` to `[lo, hi]`; returns `(changed, nonempty)`.
    fn narrow(&mut self, v: Var, lo: i128, hi: i128) -> (bool, bool) {
        let s = self.slot(v);
        let new_lo = lo.max(i128::from(self.lo[s]));
        let new_hi = hi.min(i128::from(self.hi[s]));
        if new_lo > new_hi {
            return (false, false);
        }
        let changed = new_lo != i128::from(self.lo[s]) || new_hi != i128::from(self.hi[s]);
        self.lo[s] = new_lo as u64;
        self.hi[s] = new_hi as u64;
        (changed, true)
    }
}

fn describe(spec: &ExactSequenceSpec, c: &Constraint) -> String {
    let name = |v: &Var| match *v {
        Var::Dim(i) => format!("dim {}", spec.terms[i].label),
        Var::Rank(j) => format!("rank {}", spec.arrow_label(j)),
    };
    match c {
        Constraint::Fixed(v, x) => format!("{} = {x}", name(v)),
        Constraint::Equal(a, b) => format!("{} = {}", name(a), name(b)),
        Constraint::Sum(t, parts) if parts.is_empty() => format!("{} = 0 (exactness)", name(t)),
        Constraint::Sum(t, parts) => format!(
            "{} = {} (exactness)",
            name(t),
            parts.iter().map(name).collect::<Vec<_>>().join(" + ")
        ),
    }
}

fn constraints(spec: &ExactSequenceSpec) -> Vec<Constraint> {
    let n = spec.terms.len();
    let mut out = Vec::new();
    for (i, t) in spec.terms.iter().enumerate() {
        if let Some(d) = t.dim {
            out.push(Constraint::Fixed(Var::Dim(i), d));
        }
    }
    for (j, a) in spec.arrows.iter().enumerate() {
        if let Some(r) = a.rank {
            out.push(Constraint::Fixed(Var::Rank(j), r));
        }
        for flag in &a.flags {
            match flag {
                ArrowFlag::Zero => out.push(Constraint::Fixed(Var::Rank(j), 0)),
                ArrowFlag::Injective => {
                    out.push(Constraint::Equal(Var::Rank(j), Var::Dim(j)));
                    if j > 0 {
                        out.push(Constraint::Fixed(Var::Rank(j - 1), 0));
                    }
                }
                ArrowFlag::Surjective => {
                    out.push(Constraint::Equal(Var::Rank(j), Var::Dim(j + 1)));
                    if j + 1 < spec.arrows.len() {
                        out.push(Constraint::Fixed(Var::Rank(j + 1), 0));
                    }
                }
            }
        }
    }
    for i in 0..n {
        let mut parts = Vec::with_capacity(2);
        if i > 0 {
            parts.push(Var::Rank(i - 1));
        }
        if i + 1 < n {
            parts.push(Var::Rank(i));
        }
        out.push(Constraint::Sum(Var::Dim(i), parts));
    }
    out
}

/// Propagates one constraint; `Err(())` when it empties some interval.
fn propagate(c: &Constraint, iv: &mut Intervals) -> std::result::Result<bool, ()> {
    let mut changed = false;
    let mut apply = |iv: &mut Intervals, v: Var, lo: i128, hi: i128| {
        let (c, ok) = iv.narrow(v, lo, hi);
        changed |= c;
        if ok {
            Ok(())
        } else {
            Err(())
        }
    };
    match c {
        Constraint::Fixed(v, x) => apply(iv, *v, i128::from(*x), i128::from(*x))?,
        Constraint::Equal(a, b) => {
            let (blo, bhi) = iv.get(*b);
            apply(iv, *a, blo.into(), bhi.into())?;
            let (alo, ahi) = iv.get(*a);
            apply(iv, *b, alo.into(), ahi.into())?;
        }
        Constraint::Sum(total, parts) => {
            let sum_lo: i128 = parts.iter().map(|p| i128::from(iv.get(*p).0)).sum();
            let sum_hi: i128 = parts.iter().map(|p| i128::from(iv.get(*p).1)).sum();
            apply(iv, *total, sum_lo, sum_hi)?;
            let (tlo, thi) = iv.get(*total);
            for (k, p) in parts.iter().enumerate() {
                let others_lo: i128 = parts
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != k)
                    .map(|(_, o)| i128::from(iv.get(*o).0))
                    .sum();
                let others_hi: i128 = parts
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != k)
                    .map(|(_, o)| i128::from(iv.get(*o).1))
                    .sum();
                apply(iv, *p, i128::from(tlo) - others_hi, i128::from(thi) - others_lo)?;
            }
        }
    }
    Ok(changed)
}

/// Solves a sequence spec by interval propagation to a fixpoint.
pub fn solve(spec: &ExactSequenceSpec) -> Result<ChaseSolution> {
    spec.validate()?;
    let n = spec.terms.len();
    let m = spec.arrows.len();
    let mut iv = Intervals {
        lo: vec![0; n + m],
        hi: vec![DIM_BOUND; n + m],
        terms: n,
    };
    let cs = constraints(spec);
    let labels: Vec<String> = spec.terms.iter().map(|t| t.label.clone()).collect();

    let mut inconsistent = None;
    'fixpoint: loop {
        let mut changed = false;
        for c in &cs {
            match propagate(c, &mut iv) {
                Ok(ch) => changed |= ch,
                Err(()) => {
                    inconsistent = Some(describe(spec, c));
                    break 'fixpoint;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let forced = |s: usize| (iv.lo[s] == iv.hi[s]).then_some(iv.lo[s]);
    let dims: Vec<Option<u64>> = (0..n).map(forced).collect();
    let ranks: Vec<Option<u64>> = (0..m).map(|j| forced(n + j)).collect();
    let status = if let Some(why) = inconsistent {
        ChaseStatus::Inconsistent(why)
    } else {
        let mut free: Vec<String> = (0..n)
            .filter(|&i| dims[i].is_none())
            .map(|i| labels[i].clone())
            .collect();
        free.extend((0..m).filter(|&j| ranks[j].is_none()).map(|j| spec.arrow_label(j)));
        if free.is_empty() {
            ChaseStatus::Solved
        } else {
            ChaseStatus::Underdetermined(free)
        }
    };
    Ok(ChaseSolution {
        labels,
        dims,
        ranks,
        status,
    })
}
