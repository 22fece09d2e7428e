//! Topological model of a rational elliptic surface `f : Z -> P^1` with an
//! `I_d` fiber `D` at infinity, its complement `Y = Z \ D` and a smooth fiber
//! `Y_b`.
//!
//! Cohomology tables come from dimension chases over the relevant long exact
//! sequences, seeded with a handful of standard facts (listed on each chase).
//! The monodromy on `H_2(Y, Y_b)` is assembled as an explicit matrix
//! `T = I + ell . boundary`, where `boundary : H_2(Y, Y_b) -> H_1(Y_b)` and
//! `ell : H_1(Y_b) -> H_2(Y, Y_b)` sends a cycle to the relative cycle it sweeps
//! out once around infinity, so that `boundary . ell = T_b - I`.
//!
//! Basis of `H_2(Y, Y_b)`: `a_1, ..., a_{10-d}` spanning the image of `H_2(Y)`,
//! followed by lifts `e~_1, e~_2` of a basis `e_1, e_2` of `H_1(Y_b)`.

use serde::Serialize;

use crate::error::{check_d, Error, Result};
use crate::les::{solve, ArrowFlag, ChaseSolution, ExactSequenceSpec};
use crate::lattice::{restriction_surjective, Surjectivity};
use crate::matrix::RationalMatrix;
use crate::nilpotent::{jordan_profile, unipotent_log};
use crate::rational::{int, one};
use crate::subspace::Subspace;

/// Topological Euler characteristic of a rational elliptic surface.
pub const EULER_Z: i64 = 12;

/// A sequence spec, the facts it encodes, and its solution.
#[derive(Clone, Debug, Serialize)]
pub struct Chase {
    pub name: String,
    pub facts: Vec<String>,
    pub spec: ExactSequenceSpec,
    pub solution: ChaseSolution,
}

impl Chase {
    pub(crate) fn run(name: &str, facts: &[&str], spec: ExactSequenceSpec) -> Result<Self> {
        let solution = solve(&spec)?;
        if !solution.is_solved() {
            return Err(Error::MalformedSpec(format!(
                "{name} did not solve: {:?}",
                solution.status
            )));
        }
        Ok(Self {
            name: name.to_string(),
            facts: facts.iter().map(|s| s.to_string()).collect(),
            spec,
            solution,
        })
    }

    /// Solved dimensions of every `stride`-th term starting at `offset`.
    fn column(&self, offset: usize, stride: usize) -> Vec<u64> {
        self.solution
            .solved_dims()
            .into_iter()
            .skip(offset)
            .step_by(stride)
            .collect()
    }
}

/// Builds the spec of the long exact cohomology sequence of `0 -> A -> B -> C -> 0`,
/// degrees `0..=top`, with terms `A^0, B^0, C^0, A^1, ...`.
pub(crate) fn cohomology_ladder(
    names: [&str; 3],
    dims: [&[Option<u64>]; 3],
    top: usize,
) -> ExactSequenceSpec {
    let mut terms = Vec::with_capacity(3 * (top + 1));
    for i in 0..=top {
        for (name, column) in names.iter().zip(dims) {
            terms.push((format!("H{i}({name})"), column.get(i).copied().flatten()));
        }
    }
    ExactSequenceSpec::new(terms)
}

fn known(v: &[u64]) -> Vec<Option<u64>> {
    v.iter().copied().map(Some).collect()
}

/// `h^i(D)` from the normalization sequence `0 -> C_D -> pi_* C -> (+) C_{p_i} -> 0`.
pub fn boundary_cohomology_chase(d: usize) -> Result<Chase> {
    check_d(d, 1, 9)?;
    let d = d as u64;
    let spec = cohomology_ladder(
        ["C_D", "normalization", "nodes"],
        [&[Some(1)], &known(&[d, 0, d]), &known(&[d, 0, 0])],
        2,
    )
    .with_flag(0, ArrowFlag::Injective);
    Chase::run(
        "normalization sequence of D",
        &[
            "D is connected: h^0(D) = 1",
            "the normalization is d disjoint copies of P^1",
            "D has d nodes",
            "H^0(C_D) -> H^0(normalization) is injective",
        ],
        spec,
    )
}

/// `h^i_c(Y)` from `0 -> j_! C_Y -> C_Z -> C_D -> 0`, with the restriction maps
/// `r` (degree 0) and `s` (degree 2) known to be surjective.
pub fn compact_support_chase(h_z: &[u64], h_d: &[u64], s_surjective: bool) -> Result<Chase> {
    // D is a curve: nothing above degree 2
    let mut h_d = h_d.to_vec();
    h_d.resize(5, 0);
    let mut spec = cohomology_ladder(
        ["j!C_Y", "Z", "D"],
        [&[], &known(h_z), &known(&h_d)],
        4,
    )
    .with_flag(1, ArrowFlag::Surjective);
    if s_surjective {
        spec = spec.with_flag(7, ArrowFlag::Surjective);
    }
    Chase::run(
        "compactly supported cohomology of Y",
        &[
            "r : H^0(Z) -> H^0(D) is surjective",
            "s : H^2(Z) -> H^2(D) is surjective (see the surjectivity certificate)",
        ],
        spec,
    )
}

/// `h^k(Y, Y_b)` from the pair sequence `H^k(Y, Y_b) -> H^k(Y) -> H^k(Y_b)`.
pub fn relative_cohomology_chase(h_y: &[u64]) -> Result<Chase> {
    let h_fiber = [1, 2, 1, 0, 0];
    let spec = cohomology_ladder(["Y,Yb", "Y", "Yb"], [&[], &known(h_y), &known(&h_fiber)], 4)
        .with_flag(1, ArrowFlag::Surjective)
        .with_flag(7, ArrowFlag::Surjective);
    Chase::run(
        "cohomology of the pair (Y, Y_b)",
        &[
            "Y_b is an elliptic curve: h(Y_b) = (1, 2, 1)",
            "H^0(Y) -> H^0(Y_b) is surjective (Y_b is connected)",
            "H^2(Y) -> H^2(Y_b) is surjective (restriction of an ample class)",
        ],
        spec,
    )
}

/// `0 -> H_2(Y_b) -> H_2(Y) -> H_2(Y, Y_b) -> H_1(Y_b) -> 0`.
pub fn homology_piece_chase(h2_y: u64) -> Result<Chase> {
    let spec = ExactSequenceSpec::new([
        ("H2(Yb)", Some(1)),
        ("H2(Y)", Some(h2_y)),
        ("H2(Y,Yb)", None),
        ("H1(Yb)", Some(2)),
    ])
    .with_flag(0, ArrowFlag::Injective);
    Chase::run(
        "homology sequence of (Y, Y_b) around degree 2",
        &[
            "H_2(Y_b) -> H_2(Y) is injective",
            "H_1(Y) = 0",
        ],
        spec,
    )
}

/// Explicit pieces of the monodromy on `H_2(Y, Y_b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyAssembly {
    pub d: usize,
    /// Dimension of the image of `H_2(Y)` in `H_2(Y, Y_b)`.
    pub a_dim: usize,
    /// Dimension of `H_1(Y_b)`.
    pub b_dim: usize,
    /// `H_1(Y_b) -> H_2(Y, Y_b)`, a `(12-d) x 2` matrix.
    pub ell: RationalMatrix,
    /// `H_2(Y, Y_b) -> H_1(Y_b)`, a `2 x (12-d)` matrix.
    pub boundary: RationalMatrix,
    /// Monodromy of the smooth fiber on `H_1(Y_b)`.
    pub fiber_monodromy: RationalMatrix,
    pub t_rel: RationalMatrix,
}

/// Outcome of checking the assembly identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AssemblyChecks {
    pub ell_injective: bool,
    pub boundary_ell_is_fiber_log: bool,
    pub t_rel_formula: bool,
    pub fixed_space_is_kernel_of_boundary: bool,
    pub fixed_space_dim: usize,
}

impl AssemblyChecks {
    pub fn all_pass(&self) -> bool {
        self.ell_injective
            && self.boundary_ell_is_fiber_log
            && self.t_rel_formula
            && self.fixed_space_is_kernel_of_boundary
    }
}

/// Kodaira monodromy of an `I_d` fiber on `H_1` of a nearby smooth fiber:
/// `e_1 -> e_1`, `e_2 -> e_2 + d e_1`.
pub fn fiber_monodromy(d: usize) -> RationalMatrix {
    RationalMatrix::from_i64_rows(&[[1, d as i64], [0, 1]])
}

impl MonodromyAssembly {
    pub fn new(d: usize) -> Result<Self> {
        check_d(d, 0, 9)?;
        let n = 12 - d;
        let a_dim = 10 - d;
        let mut ell = RationalMatrix::zeros(n, 2);
        ell[(0, 0)] = one();
        if d == 0 {
            ell[(1, 1)] = one();
        } else {
            ell[(a_dim, 1)] = int(d as i64);
        }
        Self::with_ell(d, ell)
    }

    /// Assembly for an arbitrary `ell`; the identities are not enforced here,
    /// see [`MonodromyAssembly::verify`].
    pub fn with_ell(d: usize, ell: RationalMatrix) -> Result<Self> {
        check_d(d, 0, 9)?;
        let n = 12 - d;
        let a_dim = 10 - d;
        if ell.rows() != n || ell.cols() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "ell must be {n}x2, got {}x{}",
                ell.rows(),
                ell.cols()
            )));
        }
        let mut boundary = RationalMatrix::zeros(2, n);
        boundary[(0, a_dim)] = one();
        boundary[(1, a_dim + 1)] = one();
        let t_rel = &RationalMatrix::identity(n) + &(&ell * &boundary);
        Ok(Self {
            d,
            a_dim,
            b_dim: 2,
            ell,
            boundary,
            fiber_monodromy: fiber_monodromy(d),
            t_rel,
        })
    }

    pub fn dim(&self) -> usize {
        self.a_dim + self.b_dim
    }

    /// Span of `a_1, ..., a_{10-d}`.
    pub fn a_block(&self) -> Subspace {
        let n = self.dim();
        let vectors = (0..self.a_dim)
            .map(|i| {
                let mut v = vec![int(0); n];
                v[i] = one();
                v
            })
            .collect();
        Subspace::span(n, vectors).expect("ambient length")
    }

    pub fn verify(&self) -> Result<AssemblyChecks> {
        let n = self.dim();
        let id = RationalMatrix::identity(n);
        let fiber_log = &self.fiber_monodromy - &RationalMatrix::identity(2);
        let fixed = (&self.t_rel - &id).kernel();
        let kernel_boundary = self.boundary.kernel();
        Ok(AssemblyChecks {
            ell_injective: self.ell.rank() == self.b_dim,
            boundary_ell_is_fiber_log: self.boundary.checked_mul(&self.ell)? == fiber_log,
            t_rel_formula: self.t_rel == &id + &(&self.ell * &self.boundary),
            fixed_space_is_kernel_of_boundary: fixed == kernel_boundary
                && fixed.contains(&self.a_block())?,
            fixed_space_dim: fixed.dim(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub d: usize,
    pub euler_z: i64,
    pub h_z: Vec<u64>,
    pub h_d: Vec<u64>,
    pub hc_y: Vec<u64>,
    pub h_y: Vec<u64>,
    pub h_rel: Vec<u64>,
    pub surjectivity: Surjectivity,
    pub chases: Vec<Chase>,
    pub monodromy: MonodromyAssembly,
    pub t_rel: RationalMatrix,
    /// Logarithm of `t_rel`, acting on `H_2(Y, Y_b)`.
    pub n_rel: RationalMatrix,
}

impl SurfaceModel {
    pub fn fiber_monodromy(&self) -> &RationalMatrix {
        &self.monodromy.fiber_monodromy
    }

    /// The logarithm of monodromy on `H^2(Y, Y_b)`, dual to `n_rel`.
    pub fn n_rel_cohomology(&self) -> RationalMatrix {
        self.n_rel.transpose()
    }

    pub fn euler_characteristic_z(&self) -> i64 {
        alternating(&self.h_z)
    }
}

fn alternating(h: &[u64]) -> i64 {
    h.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// `h^i(Z)` for a rational surface: `b_1 = b_3 = 0`, `b_0 = b_4 = 1`, and `b_2`
/// from the Euler characteristic.
pub fn rational_surface_cohomology() -> Vec<u64> {
    let b2 = EULER_Z - 2;
    vec![1, 0, b2 as u64, 0, 1]
}

pub fn build_surface_model(d: usize) -> Result<SurfaceModel> {
    check_d(d, 0, 9)?;
    let h_z = rational_surface_cohomology();
    let mut chases = Vec::new();

    let h_d = if d == 0 {
        // smooth elliptic curve
        vec![1, 2, 1]
    } else {
        let chase = boundary_cohomology_chase(d)?;
        let h = chase.column(0, 3);
        chases.push(chase);
        h
    };

    let surjectivity = restriction_surjective(d)?;
    let compact = compact_support_chase(&h_z, &h_d, surjectivity.surjective)?;
    let hc_y = compact.column(0, 3);
    chases.push(compact);

    let h_y: Vec<u64> = hc_y.iter().rev().copied().collect();
    let relative = relative_cohomology_chase(&h_y)?;
    let h_rel = relative.column(0, 3);
    chases.push(relative);

    let piece = homology_piece_chase(h_y[2])?;
    let h2_rel_homology = piece.solution.solved_dims()[2];
    chases.push(piece);

    let monodromy = MonodromyAssembly::new(d)?;
    let checks = monodromy.verify()?;
    if !checks.all_pass() || monodromy.dim() as u64 != h_rel[2] || h2_rel_homology != h_rel[2] {
        return Err(Error::DimensionMismatch(format!(
            "monodromy assembly inconsistent with the cohomology tables at d = {d}: {checks:?}"
        )));
    }
    let t_rel = monodromy.t_rel.clone();
    let n_rel = unipotent_log(&t_rel)?;

    Ok(SurfaceModel {
        d,
        euler_z: EULER_Z,
        h_z,
        h_d,
        hc_y,
        h_y,
        h_rel,
        surjectivity,
        chases,
        monodromy,
        t_rel,
        n_rel,
    })
}

/// Jordan partition of the logarithm of the relative monodromy.
pub fn relative_partition(model: &SurfaceModel) -> Result<Vec<usize>> {
    Ok(jordan_profile(&model.n_rel)?.partition)
}

/// Fano type for a surface (`n = 2`): only `H^2(Y, Y_b)` is nonzero, and there
/// `N^2 != 0`, `N^3 = 0` must hold. The vanishing groups satisfy the condition
/// vacuously.
pub fn fano_type(model: &SurfaceModel) -> bool {
    crate::hodge::RelativeCohomology::from_model(model).is_fano_type()
}
