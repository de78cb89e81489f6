//! Face-monomial bases of graded pieces, certified by a nonzero pairing minor.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::element::{RingElement, VMono};
use super::psi::{NumericPsi, PsiContext};
use super::admissible_monomials;
use crate::algebra::linalg::{det, EchelonBasis, Matrix};
use crate::algebra::text::ratfunc_to_text;
use crate::algebra::{Embed, RatFunc, Ring, Scalar, VarId, VarIdx};
use crate::complex::Face;
use crate::error::{Error, Result};

/// Faces of size `i` in lex order, restricted by `filter`.
pub fn face_monomial_span(
    k: &crate::complex::SimplicialComplex,
    i: usize,
    filter: &dyn Fn(&Face) -> bool,
) -> Result<Vec<Face>> {
    if i > k.d() {
        return Err(Error::DegreeOutOfRange(i));
    }
    Ok(k.faces_of_dim(i as i64 - 1)?.into_iter().filter(|f| filter(f)).collect())
}

/// Matrix `[Ψ(x^{r_a} x^{c_b})]`, zero where the product is not admissible.
pub fn numeric_pairing<E: Scalar>(psi: &NumericPsi<E>, rows: &[VMono], cols: &[VMono]) -> Result<Matrix<E>> {
    rows.iter().map(|r| cols.iter().map(|c| psi.psi_product(r, c)).collect()).collect()
}

/// Evidence that the rows of a basis are independent: a nonzero minor of
/// the pairing matrix at a specialization.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Witness {
    /// Specialization point, variable name to field element text.
    pub point: Vec<(String, String)>,
    pub rows: Vec<Face>,
    pub cols: Vec<Face>,
    pub minor: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DegreeBasis {
    pub degree: usize,
    pub faces: Vec<Face>,
    /// Target dimension `h_i`.
    pub expected: i64,
    pub witness: Witness,
}

impl DegreeBasis {
    pub fn is_complete(&self) -> bool {
        self.faces.len() as i64 == self.expected
    }
}

pub struct BasisRequest<'a> {
    pub degree: usize,
    pub must_include: Vec<Face>,
    pub filter: Option<&'a dyn Fn(&Face) -> bool>,
    pub attempts: usize,
}

impl<'a> BasisRequest<'a> {
    pub fn new(degree: usize) -> Self {
        BasisRequest { degree, must_include: Vec::new(), filter: None, attempts: 8 }
    }
}

pub fn point_to_text<E: Scalar>(point: &HashMap<VarIdx, E>) -> Vec<(String, String)> {
    let mut v: Vec<_> = point.iter().collect();
    v.sort_by_key(|(k, _)| **k);
    v.into_iter().map(|(k, e)| (VarId::from_index(*k).to_string(), e.to_text())).collect()
}

/// Greedily selects independent face monomials of degree `i`, required faces
/// first, testing independence through the pairing at a random point over `E`.
///
/// The returned set has the size of the greedy rank, which may differ from
/// `h_i` if the complex or l.s.o.p. is not what the caller assumed.
pub fn select_basis<F, E, G>(ctx: &PsiContext<F>, req: &BasisRequest<'_>, rng: &mut G) -> Result<DegreeBasis>
where
    F: Scalar,
    E: Scalar + Embed<F>,
    G: Rng + ?Sized,
{
    let k = ctx.complex();
    let d = k.d();
    let i = req.degree;
    if i > d {
        return Err(Error::DegreeOutOfRange(i));
    }
    for f in &req.must_include {
        if f.len() != i {
            return Err(Error::WrongDegree { got: f.len(), expected: i });
        }
        if !k.contains(f) {
            return Err(Error::FaceNotInComplex(f.clone()));
        }
    }
    let expected = k.fh_vectors()?.h[i];
    let all = |_: &Face| true;
    let filter = req.filter.unwrap_or(&all);
    let mut candidates = req.must_include.clone();
    for f in face_monomial_span(k, i, filter)? {
        if !candidates.contains(&f) {
            candidates.push(f);
        }
    }
    let cols: Vec<VMono> = admissible_monomials(ctx.geometry(), d - i)
        .into_iter()
        .filter(|m| m.pairs().iter().all(|&(_, e)| e == 1))
        .collect();
    for _ in 0..req.attempts.max(1) {
        let (point, psi) = ctx.random_specialization::<E, G>(rng, 16)?;
        let mut ech = EchelonBasis::<E>::default();
        let mut chosen = Vec::new();
        let mut chosen_rows = Vec::new();
        let mut required_ok = true;
        for (n, f) in candidates.iter().enumerate() {
            let row = numeric_pairing(&psi, &[VMono::face(f)], &cols)?.remove(0);
            if ech.insert(row.clone()) {
                chosen.push(f.clone());
                chosen_rows.push(row);
            } else if n < req.must_include.len() {
                required_ok = false;
            }
        }
        if !required_ok {
            continue;
        }
        let pivots = ech.pivots();
        let sub: Matrix<E> = chosen_rows.iter().map(|r| pivots.iter().map(|&p| r[p].clone()).collect()).collect();
        let minor = if sub.is_empty() { E::one() } else { det(&sub) };
        let basis = DegreeBasis {
            degree: i,
            faces: chosen.clone(),
            expected,
            witness: Witness {
                point: point_to_text(&point),
                rows: chosen,
                cols: pivots.iter().map(|&p| cols[p].support()).collect(),
                minor: minor.to_text(),
            },
        };
        if basis.faces.len() as i64 >= expected {
            return Ok(basis);
        }
    }
    Err(Error::WitnessSearchFailed)
}

/// Exact pairing `[Ψ(x_ρ x_τ)]` between face monomials of complementary degrees.
#[derive(Clone, Debug)]
pub struct PairingMatrix<F: Scalar> {
    pub rows: Vec<Face>,
    pub cols: Vec<Face>,
    pub entries: Matrix<RatFunc<F>>,
}

impl<F: Scalar> PairingMatrix<F> {
    pub fn to_text_grid(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(ratfunc_to_text).collect()).collect()
    }
}

/// In ball mode, `cols` must be interior faces for the pairing to be perfect.
pub fn pairing_matrix<F: Scalar>(ctx: &PsiContext<F>, rows: &[Face], cols: &[Face]) -> Result<PairingMatrix<F>> {
    let d = ctx.complex().d();
    if let Some((r, c)) = rows.iter().flat_map(|r| cols.iter().map(move |c| (r, c))).find(|(r, c)| r.len() + c.len() != d) {
        return Err(Error::WrongDegree { got: r.len() + c.len(), expected: d });
    }
    let entries = rows
        .iter()
        .map(|r| cols.iter().map(|c| ctx.psi_product(&VMono::face(r), &VMono::face(c))).collect())
        .collect::<Result<_>>()?;
    Ok(PairingMatrix { rows: rows.to_vec(), cols: cols.to_vec(), entries })
}

/// Zero test through the pairing: `α = 0` iff `Ψ(α · x_τ) = 0` for every
/// admissible face `τ` of complementary size.
pub fn is_zero<F: Scalar>(ctx: &PsiContext<F>, alpha: &RingElement<RatFunc<F>>) -> Result<bool> {
    let d = ctx.complex().d();
    let i = alpha.degree();
    if i > d {
        return Err(Error::DegreeOutOfRange(i));
    }
    if alpha.is_empty() {
        return Ok(true);
    }
    for tau in admissible_monomials(ctx.geometry(), d - i) {
        if tau.pairs().iter().any(|&(_, e)| e > 1) {
            continue;
        }
        let mut acc = RatFunc::zero();
        for (m, c) in alpha.terms() {
            let p = m.mul(&tau);
            if ctx.geometry().admissible(&p.support()) {
                acc = acc.add(&c.mul(&ctx.psi_monomial(&p)?));
            }
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
