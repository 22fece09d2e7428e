//! Intersection lattice of the wheel `D = D_1 + ... + D_d` at infinity.

use serde::Serialize;

use crate::error::{check_d, Error, Result};
use crate::matrix::RationalMatrix;
use crate::rational::{int, Rational};

/// Gram matrix `(D_i . D_j)` of a wheel of `d >= 2` smooth rational curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelLattice {
    pub d: usize,
    pub gram: RationalMatrix,
}

impl WheelLattice {
    /// Present when the Gram matrix rests on a convention rather than a
    /// directly stated intersection pattern.
    pub fn modeling_note(&self) -> Option<&'static str> {
        (self.d == 2).then_some(
            "d = 2: the two components meet in two points, so D_1.D_2 = 2 (modeling choice)",
        )
    }
}

/// `D_i^2 = -2` and `D_i . D_j = 1` for cyclic neighbours.
pub fn wheel_gram(d: usize) -> Result<WheelLattice> {
    if d < 2 {
        return Err(Error::DOutOfRange {
            d,
            lo: 2,
            hi: usize::MAX,
        });
    }
    let mut gram = RationalMatrix::zeros(d, d);
    for i in 0..d {
        gram[(i, i)] = int(-2);
        let next = (i + 1) % d;
        gram[(i, next)] += int(1);
        gram[(next, i)] += int(1);
    }
    // for d = 2 both cyclic neighbours coincide, giving the entry 2
    Ok(WheelLattice { d, gram })
}

/// Intersection matrix `(F_i . D_j)` with `F_i = D_i` for `i < d` and
/// `F_d = E` a section meeting only `D_d`, transversally once.
pub fn section_augmented_matrix(d: usize) -> Result<RationalMatrix> {
    let WheelLattice { gram, .. } = wheel_gram(d)?;
    let mut m = gram;
    for j in 0..d {
        m[(d - 1, j)] = int(if j == d - 1 { 1 } else { 0 });
    }
    Ok(m)
}

pub fn section_augmented_det(d: usize) -> Result<Rational> {
    section_augmented_matrix(d)?.determinant()
}

/// Why `H^2(Z) -> H^2(D)` is onto.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurjectivityCertificate {
    /// Divisors on `Z` whose intersection matrix with the components of `D`
    /// has this nonzero determinant.
    Determinant { det: String },
    /// `D` is irreducible, so `NS(D) ⊗ Q` is spanned by the restriction of
    /// any ample class (axiom, not computed).
    AmpleRestriction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Surjectivity {
    pub surjective: bool,
    pub certificate: SurjectivityCertificate,
}

pub fn restriction_surjective(d: usize) -> Result<Surjectivity> {
    check_d(d, 0, 9)?;
    if d < 2 {
        return Ok(Surjectivity {
            surjective: true,
            certificate: SurjectivityCertificate::AmpleRestriction,
        });
    }
    let det = section_augmented_det(d)?;
    Ok(Surjectivity {
        surjective: det != int(0),
        certificate: SurjectivityCertificate::Determinant {
            det: crate::rational::format_rational(&det),
        },
    })
}
