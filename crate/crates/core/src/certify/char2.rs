//! Exact generic-anisotropy certificates in characteristic 2.
//!
//! In characteristic 2, `α ↦ Ψ(α²)` is additive, so anisotropy of the middle
//! degree reduces to independence of the values `c_i = Ψ(μ_i²)` over the
//! subfield of squares. After clearing denominators by squares, this is the
//! column rank of the matrix of parity-class roots.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CertStatus, CertWitness, Certificate};
use crate::algebra::linalg::{det, exact_kernel, EchelonBasis, Matrix};
use crate::algebra::text::{parse_poly, poly_to_text};
use crate::algebra::{frobenius_decompose, Gf2k, Mono, MultiPoly, RatFunc, Ring, Scalar, VarIdx, F2};
use crate::complex::{is_homology_sphere, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lsop::normalized_lsop;
use crate::reduction::basis::point_to_text;
use crate::reduction::{select_basis, BasisRequest, Factored, PsiContext, VMono};

/// Target bound on the probability that a random witness search misses.
pub const TARGET_ERROR_LOG2: i64 = -40;

/// Label of a row of the parity matrix: pairing vertex (0 for even `d`) and parity class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct RowLabel {
    vertex: usize,
    class: Mono,
}

/// Everything derived deterministically from the complex and the basis.
struct ParityData {
    rows: Vec<RowLabel>,
    /// `entries[r][i]`, root of the parity class `rows[r]` of `P_i`.
    entries: Matrix<MultiPoly<F2>>,
    /// Values `c_{i,j}` before scaling, keyed by pairing vertex.
    values: Vec<Vec<(usize, Factored<F2>)>>,
    /// Square roots `S_i` of the scaling factors.
    scale: Vec<MultiPoly<F2>>,
}

/// Degree-`d` monomials `μ²` (even `d`) or `μ² x_j` (odd `d`) paired with `μ`.
fn pairings(k: &SimplicialComplex, mu: &Face) -> Vec<(usize, VMono)> {
    let sq = VMono::face(mu).pow(2);
    if k.d() % 2 == 0 {
        return vec![(0, sq)];
    }
    (1..=k.m())
        .filter(|&j| k.contains(&mu.with(j)))
        .map(|j| (j, sq.mul(&VMono::var(j))))
        .collect()
}

fn parity_data(ctx: &PsiContext<F2>, basis: &[Face]) -> Result<ParityData> {
    let k = ctx.complex();
    let mut values = Vec::new();
    let mut polys_by_i = Vec::new();
    let mut scale = Vec::new();
    for mu in basis {
        let cs: Vec<(usize, Factored<F2>)> = pairings(k, mu)
            .into_iter()
            .map(|(j, m)| ctx.psi_factored(&m).map(|v| (j, v)))
            .collect::<Result<_>>()?;
        // S_i = Π p^{⌈E_p/2⌉} over the largest exponent E_p of each denominator factor
        let mut top: Vec<(MultiPoly<F2>, u32)> = Vec::new();
        for (_, c) in &cs {
            for (p, e) in &c.den {
                match top.iter_mut().find(|(q, _)| q == p) {
                    Some(t) => t.1 = t.1.max(*e),
                    None => top.push((p.clone(), *e)),
                }
            }
        }
        let s = top.iter().fold(MultiPoly::one(), |acc, (p, e)| acc.mul(&p.pow(e.div_ceil(2) as u64)));
        let ps: Vec<(usize, MultiPoly<F2>)> = cs
            .iter()
            .map(|(j, c)| {
                let mut p = c.num.clone();
                for (q, e) in &top {
                    let own = c.den.iter().find(|(r, _)| r == q).map_or(0, |x| x.1);
                    p = p.mul(&q.pow((2 * e.div_ceil(2) - own) as u64));
                }
                (*j, p)
            })
            .collect();
        values.push(cs);
        polys_by_i.push(ps);
        scale.push(s);
    }
    let mut table: BTreeMap<RowLabel, Vec<MultiPoly<F2>>> = BTreeMap::new();
    let s = basis.len();
    for (i, ps) in polys_by_i.iter().enumerate() {
        for (j, p) in ps {
            for (class, root) in frobenius_decompose(p)?.classes {
                let row = table.entry(RowLabel { vertex: *j, class }).or_insert_with(|| vec![MultiPoly::zero(); s]);
                row[i] = root;
            }
        }
    }
    let (rows, entries) = table.into_iter().unzip();
    Ok(ParityData { rows, entries, values, scale })
}

fn eval_matrix<const K: u32>(m: &Matrix<MultiPoly<F2>>, point: &HashMap<VarIdx, Gf2k<K>>) -> Result<Matrix<Gf2k<K>>> {
    m.iter()
        .map(|r| r.iter().map(|p| p.eval(&|v| point.get(&v).copied()).ok_or(Error::UnassignedVariable)).collect())
        .collect()
}

/// Selects `s` independent rows of an `R × s` matrix.
fn independent_rows<E: crate::algebra::Field>(m: &Matrix<E>) -> Vec<usize> {
    let mut ech = EchelonBasis::<E>::default();
    let mut out = Vec::new();
    for (r, row) in m.iter().enumerate() {
        if ech.insert(row.clone()) {
            out.push(r);
        }
    }
    out
}

fn error_plan(max_degree: u32, s: usize, bits: u32) -> (u32, i64) {
    // the minor has total degree at most s · max entry degree
    let deg = (s as u64 * max_degree as u64).max(1);
    let log_deg = 64 - (deg - 1).leading_zeros() as i64;
    let per_trial = log_deg - bits as i64;
    if per_trial >= 0 {
        return (1, 0);
    }
    let trials = ((-TARGET_ERROR_LOG2) as u64).div_ceil((-per_trial) as u64) as u32;
    (trials, trials as i64 * per_trial)
}

/// Certifies generic anisotropy of `k(Δ)` in degree `⌊d/2⌋` over `F_2`,
/// with random witnesses drawn from `F_{2^K}`.
pub fn aniso_char2_certificate<const K: u32>(k: &SimplicialComplex, seed: u64) -> Result<Certificate> {
    if !is_homology_sphere(k, 2)? {
        return Err(Error::NotHomologySphere);
    }
    let d = k.d();
    let n = d / 2;
    let ctx = PsiContext::<F2>::sphere(k, normalized_lsop::<F2>(k, None)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cert = Certificate {
        v: 1,
        complex: k.canonical_hash(),
        char: 2,
        degree: n,
        status: CertStatus::Inconclusive,
        basis: Vec::new(),
        basis_witness: None,
        witness: CertWitness::None { reason: String::new() },
        seed,
        field_bits: K,
        error_bound_log2: 0,
    };
    let basis = match select_basis::<F2, Gf2k<K>, _>(&ctx, &BasisRequest::new(n), &mut rng) {
        Ok(b) => b,
        Err(Error::WitnessSearchFailed) => {
            cert.witness = CertWitness::None { reason: "basis witness search failed".into() };
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    cert.basis = basis.faces.iter().map(|f| f.vertices().to_vec()).collect();
    cert.basis_witness = Some(basis.witness.clone());
    if !basis.is_complete() {
        cert.witness = CertWitness::None { reason: format!("basis has {} faces, h = {}", basis.faces.len(), basis.expected) };
        return Ok(cert);
    }
    let s = basis.faces.len();
    let data = parity_data(&ctx, &basis.faces)?;
    let max_degree = data.entries.iter().flatten().filter_map(|p| p.total_degree()).max().unwrap_or(0);
    let (trials, bound) = error_plan(max_degree, s, K);
    cert.error_bound_log2 = bound;
    let vars: BTreeSet<VarIdx> = data.entries.iter().flatten().flat_map(|p| p.vars()).collect();
    for _ in 0..trials {
        let point: HashMap<VarIdx, Gf2k<K>> = vars.iter().map(|&v| (v, Gf2k::<K>::random(&mut rng))).collect();
        let num = eval_matrix(&data.entries, &point)?;
        let rows = independent_rows(&num);
        if rows.len() == s {
            let sub: Matrix<Gf2k<K>> = rows.iter().map(|&r| num[r].clone()).collect();
            cert.status = CertStatus::Anisotropic;
            cert.witness = CertWitness::Minor {
                point: point_to_text(&point),
                rows: rows.iter().map(|&r| row_text(&data.rows[r])).collect(),
                minor: det(&sub).to_text(),
            };
            return Ok(cert);
        }
    }
    // no witness at random points: decide exactly
    let kernel = exact_kernel(&data.entries, s);
    match kernel.first() {
        None => {
            cert.status = CertStatus::Anisotropic;
            cert.witness = CertWitness::ExactRank { rank: s };
        }
        Some(l) => {
            let coeffs: Vec<MultiPoly<F2>> = l.iter().zip(&data.scale).map(|(li, si)| li.mul(si)).collect();
            if !isotropic(&data, &coeffs) {
                return Err(Error::BadParams("kernel vector failed re-verification".into()));
            }
            cert.status = CertStatus::NotAnisotropic;
            cert.witness = CertWitness::Kernel { coefficients: coeffs.iter().map(poly_to_text).collect() };
        }
    }
    Ok(cert)
}

fn row_text(r: &RowLabel) -> (usize, String) {
    (r.vertex, crate::algebra::text::mono_to_text(&r.class))
}

/// Checks `Σ_i l_i² c_{i,j} = 0` for every pairing vertex by exact arithmetic.
fn isotropic(data: &ParityData, coeffs: &[MultiPoly<F2>]) -> bool {
    let mut by_vertex: BTreeMap<usize, RatFunc<F2>> = BTreeMap::new();
    for (i, cs) in data.values.iter().enumerate() {
        let l2 = RatFunc::from_poly(coeffs[i].mul(&coeffs[i]));
        for (j, c) in cs {
            let e = by_vertex.entry(*j).or_insert_with(RatFunc::zero);
            *e = e.add(&l2.mul(&c.to_ratfunc()));
        }
    }
    coeffs.iter().any(|c| !c.is_zero()) && by_vertex.values().all(|v| v.is_zero())
}

/// Re-derives the parity matrix from the stored basis and checks the witness.
pub fn verify_certificate<const K: u32>(k: &SimplicialComplex, cert: &Certificate) -> Result<bool> {
    if cert.complex != k.canonical_hash() || cert.field_bits != K || cert.char != 2 {
        return Ok(false);
    }
    let ctx = PsiContext::<F2>::sphere(k, normalized_lsop::<F2>(k, None)?)?;
    let basis: Vec<Face> = cert.basis.iter().map(|f| Face::new(f.clone())).collect();
    if basis.iter().any(|f| f.len() != cert.degree || !k.contains(f)) {
        return Ok(false);
    }
    if let Some(w) = &cert.basis_witness {
        if !super::verify_basis_witness::<F2, Gf2k<K>>(&ctx, w)? {
            return Ok(false);
        }
    }
    let data = parity_data(&ctx, &basis)?;
    match (&cert.status, &cert.witness) {
        (CertStatus::Anisotropic, CertWitness::Minor { point, rows, minor }) => {
            let point = parse_point::<Gf2k<K>>(point)?;
            let idx: Vec<usize> = rows
                .iter()
                .map(|r| data.rows.iter().position(|x| row_text(x) == *r))
                .collect::<Option<_>>()
                .ok_or(Error::Parse("witness row not in the parity matrix".into()))?;
            let sub: Matrix<MultiPoly<F2>> = idx.iter().map(|&r| data.entries[r].clone()).collect();
            let value = det(&eval_matrix(&sub, &point)?);
            Ok(!value.is_zero() && value.to_text() == *minor && idx.len() == basis.len())
        }
        (CertStatus::Anisotropic, CertWitness::ExactRank { rank }) => {
            Ok(*rank == basis.len() && exact_kernel(&data.entries, basis.len()).is_empty())
        }
        (CertStatus::NotAnisotropic, CertWitness::Kernel { coefficients }) => {
            let coeffs: Vec<MultiPoly<F2>> = coefficients.iter().map(|t| parse_poly(t)).collect::<Result<_>>()?;
            Ok(coeffs.len() == basis.len() && isotropic(&data, &coeffs))
        }
        _ => Ok(false),
    }
}

pub(crate) fn parse_point<E: Scalar>(point: &[(String, String)]) -> Result<HashMap<VarIdx, E>> {
    point
        .iter()
        .map(|(v, x)| {
            let var = parse_poly::<F2>(v)?;
            let idx = match var.terms() {
                [(m, _)] if m.degree() == 1 => m.pairs()[0].0,
                _ => return Err(Error::Parse(format!("not a variable: {v}"))),
            };
            let val = E::parse_text(x).ok_or_else(|| Error::Parse(format!("bad field element {x}")))?;
            Ok((idx, val))
        })
        .collect()
}
