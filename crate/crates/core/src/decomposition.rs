//! Decomposition numbers that reduce to lattice quotients: simple surface
//! singularities (subregular class) and the minimal class.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::int_linalg::{cokernel, is_prime, tensor_f_dimension};
use crate::orbit_cohomology::middle_via_lattice;
use crate::root_system::{build, Series, TypeLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SymmetryGroup {
    Trivial,
    Z2,
    S3,
}

impl fmt::Display for SymmetryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryGroup::Trivial => "1",
            SymmetryGroup::Z2 => "Z/2",
            SymmetryGroup::S3 => "S3",
        })
    }
}

/// Irreducible characters of the symmetry group: trivial, sign, and the degree-two
/// character of `S3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CharacterLabel {
    Trivial,
    Epsilon,
    Psi,
}

impl CharacterLabel {
    pub fn degree(self) -> usize {
        match self {
            CharacterLabel::Psi => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CharacterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharacterLabel::Trivial => "1",
            CharacterLabel::Epsilon => "eps",
            CharacterLabel::Psi => "psi",
        })
    }
}

impl Serialize for CharacterLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleSingularityData {
    pub gamma: TypeLabel,
    pub gamma_hat: TypeLabel,
    pub symmetry_group: SymmetryGroup,
    /// Invariant factors of `P/Q` for the root system of `gamma_hat`.
    pub quotient: Vec<u64>,
}

pub fn simple_singularity(gamma: TypeLabel) -> SimpleSingularityData {
    let n = gamma.rank();
    let hat = |series, rank| TypeLabel::new(series, rank).expect("valid rank");
    let (gamma_hat, symmetry_group) = match gamma.series() {
        Series::A | Series::D | Series::E => (gamma, SymmetryGroup::Trivial),
        Series::B => (hat(Series::A, 2 * n - 1), SymmetryGroup::Z2),
        // D3 is A3
        Series::C if n == 2 => (hat(Series::A, 3), SymmetryGroup::Z2),
        Series::C => (hat(Series::D, n + 1), SymmetryGroup::Z2),
        Series::F => (hat(Series::E, 6), SymmetryGroup::Z2),
        Series::G => (hat(Series::D, 4), SymmetryGroup::S3),
    };
    let quotient = cokernel(build(gamma_hat).cartan())
        .expect("small invariant factors")
        .torsion;
    SimpleSingularityData {
        gamma,
        gamma_hat,
        symmetry_group,
        quotient,
    }
}

fn require_prime(ell: u64) -> Result<()> {
    if is_prime(ell) {
        Ok(())
    } else {
        Err(Error::domain(format!("{ell} is not prime")))
    }
}

/// `d_{(x_min,1),(0,1)}`: dimension of `F ⊗ P∨/Q∨` for the long simple subsystem.
pub fn decomp_minimal(gamma: TypeLabel, ell: u64) -> Result<usize> {
    require_prime(ell)?;
    tensor_f_dimension(&middle_via_lattice(&build(gamma)), 0, ell)
}

/// `d_{(x_reg,1),(x_subreg,ρ)}` for each modular irreducible character `ρ` of the symmetry group.
pub fn decomp_subregular(gamma: TypeLabel, ell: u64) -> Result<BTreeMap<CharacterLabel, usize>> {
    use CharacterLabel::{Epsilon, Psi, Trivial};
    require_prime(ell)?;
    let n = gamma.rank() as u64;
    let entries: Vec<(CharacterLabel, usize)> = match gamma.series() {
        Series::A | Series::D | Series::E => {
            let q = simple_singularity(gamma).quotient;
            vec![(Trivial, tensor_f_dimension(&q, 0, ell)?)]
        }
        Series::B if ell == 2 => vec![(Trivial, 1)],
        Series::B => vec![(Trivial, 0), (Epsilon, usize::from(n.is_multiple_of(ell)))],
        Series::C if ell == 2 => vec![(Trivial, if n.is_multiple_of(2) { 1 } else { 2 })],
        Series::C => vec![(Trivial, 0), (Epsilon, 0)],
        Series::F if ell == 2 => vec![(Trivial, 0)],
        Series::F if ell == 3 => vec![(Trivial, 0), (Epsilon, 1)],
        Series::F => vec![(Trivial, 0), (Epsilon, 0)],
        Series::G if ell == 2 => vec![(Trivial, 0), (Psi, 1)],
        Series::G if ell == 3 => vec![(Trivial, 0), (Epsilon, 0)],
        Series::G => vec![(Trivial, 0), (Epsilon, 0), (Psi, 0)],
    };
    Ok(entries.into_iter().collect())
}
