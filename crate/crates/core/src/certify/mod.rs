//! Certificates and experiments built on the canonical function.

pub mod char2;
pub mod experiments;
pub mod identities;
pub mod lefschetz;
pub mod probe;

pub use char2::{aniso_char2_certificate, verify_certificate};
pub use experiments::{
    diffop_fixture, MoveStep, ProductDegree,
    degree_argument_experiment, diffop_experiment, move_invariance_experiment, suspension_experiment, DegreeArgumentReport,
    DiffopReport, MoveInvarianceReport, SuspensionReport,
};
pub use identities::{identity_suite, IdentityCheck};
pub use lefschetz::{lefschetz_check, LefschetzReport};
pub use probe::{aniso_random_probe, aniso_random_probe_with, ProbeReport};

use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{det, Matrix};
use crate::algebra::{Embed, Scalar};
use crate::complex::Face;
use crate::error::Result;
use crate::reduction::{numeric_pairing, PsiContext, VMono, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertStatus {
    Anisotropic,
    NotAnisotropic,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertWitness {
    /// Nonzero minor of the parity matrix at `point`; rows are (pairing vertex, parity class).
    Minor { point: Vec<(String, String)>, rows: Vec<(usize, String)>, minor: String },
    /// Full column rank established by fraction-free elimination.
    ExactRank { rank: usize },
    /// Coefficients `l_i` with `Σ l_i² Ψ(μ_i² ·) = 0`.
    Kernel { coefficients: Vec<String> },
    None { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub v: u32,
    pub complex: String,
    pub char: u64,
    pub degree: usize,
    pub status: CertStatus,
    pub basis: Vec<Vec<usize>>,
    pub basis_witness: Option<Witness>,
    pub witness: CertWitness,
    pub seed: u64,
    pub field_bits: u32,
    pub error_bound_log2: i64,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// Recomputes the pairing minor recorded in a basis witness.
pub fn verify_basis_witness<F: Scalar, E: Scalar + Embed<F>>(ctx: &PsiContext<F>, w: &Witness) -> Result<bool> {
    if w.rows.len() != w.cols.len() {
        return Ok(false);
    }
    let point = char2::parse_point::<E>(&w.point)?;
    let psi = ctx.specialize::<E>(&point, 0)?;
    let rows: Vec<VMono> = w.rows.iter().map(VMono::face).collect();
    let cols: Vec<VMono> = w.cols.iter().map(VMono::face).collect();
    let m: Matrix<E> = numeric_pairing(&psi, &rows, &cols)?;
    let value = if m.is_empty() { E::one() } else { det(&m) };
    Ok(!value.is_zero() && value.to_text() == w.minor)
}

pub(crate) fn faces_text(faces: &[Face]) -> Vec<Vec<usize>> {
    faces.iter().map(|f| f.vertices().to_vec()).collect()
}

#[cfg(test)]
mod tests;
