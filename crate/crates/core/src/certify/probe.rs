use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::text::ratfunc_to_text;
use crate::algebra::{Embed, MultiPoly, RatFunc, Ring, Scalar};
use crate::complex::{is_homology_sphere, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lsop::{generic_lsop, LsopMatrix};
use crate::reduction::{select_basis, BasisRequest, PsiContext, RingElement, VMono};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub complex: String,
    pub char: u64,
    pub degree: usize,
    pub basis: Vec<Vec<usize>>,
    pub trials: usize,
    /// Trials where `Ψ(α² ·)` vanished at the specialization.
    pub numeric_zeros: usize,
    /// Coefficient vectors `l` of confirmed isotropic elements.
    pub counterexamples: Vec<Vec<String>>,
}

impl ProbeReport {
    pub fn verdict(&self) -> String {
        if self.counterexamples.is_empty() {
            format!("no counterexample in {} trials", self.trials)
        } else {
            format!("{} isotropic elements found", self.counterexamples.len())
        }
    }
}

/// Degree-`d` test monomials for `α²`: itself for even `d`, times each vertex for odd `d`.
fn square_pairings(k: &SimplicialComplex) -> Vec<Option<usize>> {
    if k.d() % 2 == 0 {
        vec![None]
    } else {
        (1..=k.m()).map(Some).collect()
    }
}

fn times<R: Ring>(k: &SimplicialComplex, a: &RingElement<R>, j: Option<usize>) -> Result<RingElement<R>> {
    Ok(match j {
        None => a.clone(),
        Some(j) => a.mul(&RingElement::monomial(k, VMono::var(j), R::one())?, k),
    })
}

/// Random search for isotropic elements in the middle degree with the generic l.s.o.p.
pub fn aniso_random_probe<F: Scalar, E: Scalar + Embed<F>>(k: &SimplicialComplex, trials: usize, seed: u64) -> Result<ProbeReport> {
    aniso_random_probe_with::<F, E>(k, generic_lsop::<F>(k), trials, seed)
}

pub fn aniso_random_probe_with<F: Scalar, E: Scalar + Embed<F>>(
    k: &SimplicialComplex,
    lsop: LsopMatrix<MultiPoly<F>>,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if !is_homology_sphere(k, F::characteristic())? {
        return Err(Error::NotHomologySphere);
    }
    let ctx = PsiContext::<F>::sphere(k, lsop)?;
    let n = k.d() / 2;
    let mut report = ProbeReport {
        complex: k.canonical_hash(),
        char: F::characteristic(),
        degree: n,
        basis: Vec::new(),
        trials,
        numeric_zeros: 0,
        counterexamples: Vec::new(),
    };
    if trials == 0 {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = select_basis::<F, E, _>(&ctx, &BasisRequest::new(n), &mut rng)?;
    report.basis = super::faces_text(&basis.faces);
    let tests = square_pairings(k);
    for _ in 0..trials {
        let mut l: Vec<F> = basis.faces.iter().map(|_| F::small_random(&mut rng, 9)).collect();
        if l.iter().all(|c| c.is_zero()) {
            l[0] = F::one();
        }
        let alpha_sym = element(k, &basis.faces, &l)?;
        let (_, psi) = ctx.random_specialization::<E, _>(&mut rng, 16)?;
        let le: Vec<E> = l.iter().map(|c| E::embed(c).ok_or(Error::DenominatorVanishes)).collect::<Result<_>>()?;
        let alpha = element(k, &basis.faces, &le)?;
        let sq = alpha.mul(&alpha, k);
        let mut all_zero = true;
        for &j in &tests {
            if !psi.psi_element(&times(k, &sq, j)?)?.is_zero() {
                all_zero = false;
                break;
            }
        }
        if !all_zero {
            continue;
        }
        report.numeric_zeros += 1;
        let a = alpha_sym.map(|c| RatFunc::constant(c.clone()));
        let sq = a.mul(&a, k);
        let mut exact_zero = true;
        for &j in &tests {
            if !ctx.psi_element(&times(k, &sq, j)?)?.is_zero() {
                exact_zero = false;
                break;
            }
        }
        if exact_zero {
            report.counterexamples.push(l.iter().map(|c| ratfunc_to_text(&RatFunc::constant(c.clone()))).collect());
        }
    }
    Ok(report)
}

fn element<R: Ring>(k: &SimplicialComplex, faces: &[Face], l: &[R]) -> Result<RingElement<R>> {
    let n = faces.first().map_or(0, |f| f.len());
    RingElement::new(k, n, faces.iter().zip(l).map(|(f, c)| (VMono::face(f), c.clone())))
}
