use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{rank, EchelonBasis, Matrix};
use crate::algebra::{Embed, Scalar};
use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::lsop::generic_lsop;
use crate::reduction::basis::point_to_text;
use crate::reduction::{numeric_pairing, NumericPsi, PsiContext, RingElement, VMono};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub complex: String,
    pub point: Vec<(String, String)>,
    pub omega: Vec<String>,
    /// Rank of `·ω^{d-2i}: k(Δ)_i → k(Δ)_{d-i}` for `i = 0..=⌊d/2⌋`.
    pub ranks: Vec<usize>,
    pub expected: Vec<i64>,
    pub holds: bool,
}

/// Greedy basis of degree `i` at this specialization, from face monomials.
fn local_basis<E: Scalar>(k: &SimplicialComplex, psi: &NumericPsi<E>, i: usize) -> Result<Vec<VMono>> {
    let d = k.d();
    let cols: Vec<VMono> = k.faces_of_dim(d as i64 - i as i64 - 1)?.iter().map(VMono::face).collect();
    let mut ech = EchelonBasis::<E>::default();
    let mut out = Vec::new();
    for f in k.faces_of_dim(i as i64 - 1)? {
        let mu = VMono::face(&f);
        if ech.insert(numeric_pairing(psi, std::slice::from_ref(&mu), &cols)?.remove(0)) {
            out.push(mu);
        }
    }
    Ok(out)
}

/// Hard Lefschetz ranks for a random `ω` at a random specialization of the
/// generic l.s.o.p.: `[Ψ(ω^{d-2i} μ_a ν_b)]` must have rank `h_i`.
pub fn lefschetz_check<F: Scalar, E: Scalar + Embed<F>>(k: &SimplicialComplex, seed: u64) -> Result<LefschetzReport> {
    let ctx = PsiContext::<F>::sphere(k, generic_lsop::<F>(k))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (point, psi) = ctx.random_specialization::<E, _>(&mut rng, 16)?;
    let omega: Vec<E> = (0..k.m()).map(|_| E::random(&mut rng)).collect();
    let w = RingElement::linear(k, &omega)?;
    let h = k.fh_vectors()?.h;
    let d = k.d();
    let mut ranks = Vec::new();
    for i in 0..=d / 2 {
        let basis = local_basis(k, &psi, i)?;
        let wp = w.pow((d - 2 * i) as u32, k);
        let mut m: Matrix<E> = Vec::new();
        for mu in &basis {
            let left = wp.mul(&RingElement::monomial(k, mu.clone(), E::one())?, k);
            let mut row = Vec::new();
            for nu in &basis {
                let prod = left.mul(&RingElement::monomial(k, nu.clone(), E::one())?, k);
                row.push(psi.psi_element(&prod)?);
            }
            m.push(row);
        }
        ranks.push(if m.is_empty() { 0 } else { rank(&m) });
    }
    let expected: Vec<i64> = h[..=d / 2].to_vec();
    let holds = ranks.iter().zip(&expected).all(|(&r, &e)| r as i64 == e);
    Ok(LefschetzReport {
        complex: k.canonical_hash(),
        point: point_to_text(&point),
        omega: omega.iter().map(|c| c.to_text()).collect(),
        ranks,
        expected,
        holds,
    })
}
