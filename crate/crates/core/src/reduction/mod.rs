//! Top-degree evaluation in the reduced face ring.

pub mod basis;
pub mod element;
pub mod oracle;
pub mod psi;

pub use basis::{
    face_monomial_span, is_zero, numeric_pairing, pairing_matrix, select_basis, BasisRequest, DegreeBasis, PairingMatrix, Witness,
};
pub use element::{Coeff, RingElement, TermJson, VMono};
pub use oracle::{oracle_psi, OracleTable};
pub use psi::{Factored, Geometry, Mode, NumericPsi, PsiContext};

use crate::complex::Face;

/// Monomials of the given degree whose support is admissible for the mode,
/// ordered by support and then exponent vector.
pub fn admissible_monomials(geom: &Geometry, degree: usize) -> Vec<VMono> {
    let mut out = Vec::new();
    if degree == 0 {
        if geom.admissible(&Face::empty()) {
            out.push(VMono::one());
        }
        return out;
    }
    for f in geom.complex().all_faces() {
        if f.is_empty() || f.len() > degree || !geom.admissible(&f) {
            continue;
        }
        let mut exps = vec![1u32; f.len()];
        distribute(&f, &mut exps, 0, (degree - f.len()) as u32, &mut out);
    }
    out
}

fn distribute(f: &Face, exps: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<VMono>) {
    if pos + 1 == exps.len() {
        exps[pos] += left;
        out.push(VMono::new(f.vertices().iter().copied().zip(exps.iter().copied())));
        exps[pos] -= left;
        return;
    }
    for e in (0..=left).rev() {
        exps[pos] += e;
        distribute(f, exps, pos + 1, left - e, out);
        exps[pos] -= e;
    }
}

#[cfg(test)]
mod tests;
