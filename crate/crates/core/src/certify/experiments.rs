use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{aniso_char2_certificate, faces_text, CertStatus};
use crate::algebra::probe::ProbeQ;
use crate::algebra::text::ratfunc_to_text;
use crate::algebra::{Degree, Field, Gf2k, MultiPoly, RatFunc, Rational, Ring, Scalar, VarId, F2};
use crate::complex::{build_from_facets, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lsop::{cone_lsop, theorem41_lsop, ConeVariant, LsopMatrix};
use crate::moves::{apply_move, random_walk, BistellarMove, MoveLog};
use crate::reduction::{select_basis, BasisRequest, PsiContext, RingElement, VMono};

/// `Some(1)` if `a = b`, `Some(-1)` if `a = -b`, `Some(0)` if both vanish.
pub(crate) fn sign_relation<F: Scalar>(a: &RatFunc<F>, b: &RatFunc<F>) -> Option<i8> {
    if a.is_zero() && b.is_zero() {
        Some(0)
    } else if a == b {
        Some(1)
    } else if *a == b.neg() {
        Some(-1)
    } else {
        None
    }
}

/// All nonzero signs agree.
pub(crate) fn uniform_sign(signs: &[Option<i8>]) -> Option<i8> {
    let mut out = 0;
    for s in signs {
        match *s {
            None => return None,
            Some(0) => {}
            Some(x) if out == 0 => out = x,
            Some(x) if x != out => return None,
            Some(_) => {}
        }
    }
    Some(if out == 0 { 1 } else { out })
}

fn degree_value(d: Degree) -> Option<i64> {
    match d {
        Degree::NegInfinity => None,
        Degree::Finite(x) => Some(x),
    }
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoveStep {
    /// The move leading into this complex (`None` for the start).
    pub mv: Option<BistellarMove>,
    pub complex: String,
    pub m: usize,
    pub status: CertStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoveInvarianceReport {
    pub seed: u64,
    pub log: MoveLog,
    pub steps: Vec<MoveStep>,
    pub constant: bool,
}

/// Certifies every complex along a random bistellar walk of `num_moves` steps.
pub fn move_invariance_experiment<const K: u32>(
    k: &SimplicialComplex,
    num_moves: usize,
    seed: u64,
    vertex_cap: Option<usize>,
) -> Result<MoveInvarianceReport> {
    let (_, log) = random_walk(k, num_moves, seed, vertex_cap)?;
    let mut cur = k.clone();
    let mut steps = vec![MoveStep {
        mv: None,
        complex: cur.canonical_hash(),
        m: cur.m(),
        status: aniso_char2_certificate::<K>(&cur, seed)?.status,
    }];
    for mv in &log.moves {
        cur = apply_move(&cur, mv)?;
        steps.push(MoveStep {
            mv: Some(mv.clone()),
            complex: cur.canonical_hash(),
            m: cur.m(),
            status: aniso_char2_certificate::<K>(&cur, seed)?.status,
        });
    }
    let constant = steps.iter().all(|s| s.status == steps[0].status);
    Ok(MoveInvarianceReport { seed, log, steps, constant })
}

// ---------------------------------------------------------------------------

/// The 3-sphere left by the 1-move `({3,4,5}, {1,2})`, labeled for `theorem41_lsop(q=1, n=2)`.
pub fn diffop_fixture() -> SimplicialComplex {
    let facets = [[1, 2, 3, 4], [1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 6], [1, 3, 5, 6], [1, 4, 5, 6], [2, 3, 4, 6], [2, 3, 5, 6], [2, 4, 5, 6]];
    build_from_facets(6, facets.iter().map(|f| f.to_vec()).collect()).expect("fixture")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffopReport {
    pub complex: String,
    pub q: usize,
    pub n: usize,
    pub basis: Vec<Vec<usize>>,
    /// Variables `b_i` differentiated by `P`.
    pub operator: Vec<usize>,
    /// `Ψ(x_1⋯x_{2n})`.
    pub top_value: String,
    pub top_is_unit: bool,
    /// `Ψ(x_{σ₁}²)`.
    pub c1: String,
    pub fact_c: bool,
    pub p_c1: String,
    /// `P Ψ(x_{σ_i}²) = 0` for `i ≥ 2`.
    pub others_vanish: Vec<bool>,
    pub holds: bool,
}

fn b_rat(i: usize) -> RatFunc<F2> {
    RatFunc::from_poly(MultiPoly::var(VarId::B(i as u16)))
}

/// Differential-operator argument for a `q`-move on a `(2n-1)`-sphere over `F_2`.
pub fn diffop_experiment(k: &SimplicialComplex, q: usize, n: usize, seed: u64) -> Result<DiffopReport> {
    let ctx = PsiContext::<F2>::sphere(k, theorem41_lsop::<F2>(k, q, n)?)?;
    let sigma1 = Face::new((1..=n).collect());
    let tau = Face::new((1..=q + 1).collect());
    let outside = |f: &Face| !k.contains(&f.union(&tau));
    let mut req = BasisRequest::new(n);
    req.must_include = vec![sigma1.clone()];
    req.filter = Some(&outside);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = select_basis::<F2, Gf2k<20>, _>(&ctx, &req, &mut rng)?;
    if !basis.is_complete() {
        return Err(Error::WitnessSearchFailed);
    }

    let top = ctx.psi_monomial(&VMono::face(&Face::new((1..=2 * n).collect())))?;
    let c1 = ctx.psi_monomial(&VMono::face(&sigma1).pow(2))?;
    let num = (q + 2..=n).fold(RatFunc::one(), |acc, i| acc.mul(&b_rat(i)));
    let den = (n + 1..=2 * n).fold(RatFunc::one(), |acc, i| acc.mul(&b_rat(i)));
    let factor = num.div(&den).ok_or(Error::DenominatorVanishes)?;
    let fact_c = c1 == factor.mul(&top);

    let operator: Vec<usize> = (2 * n - q..=2 * n).collect();
    let apply_p = |phi: &RatFunc<F2>| operator.iter().fold(phi.clone(), |acc, &i| acc.derivative(VarId::B(i as u16).index()));
    let p_c1 = apply_p(&c1);
    let mut others_vanish = Vec::new();
    for f in &basis.faces[1..] {
        others_vanish.push(apply_p(&ctx.psi_monomial(&VMono::face(f).pow(2))?).is_zero());
    }
    let top_is_unit = top.is_one() || top == RatFunc::one().neg();
    let holds = top_is_unit && fact_c && !p_c1.is_zero() && others_vanish.iter().all(|&z| z);
    Ok(DiffopReport {
        complex: k.canonical_hash(),
        q,
        n,
        basis: faces_text(&basis.faces),
        operator,
        top_value: ratfunc_to_text(&top),
        top_is_unit,
        c1: ratfunc_to_text(&c1),
        fact_c,
        p_c1: ratfunc_to_text(&p_c1),
        others_vanish,
        holds,
    })
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductDegree {
    /// `"ss"`, `"tt"` or `"st"`.
    pub kind: String,
    pub i: usize,
    pub j: usize,
    /// Degree in `a_{1,1}`; `None` for the zero function.
    pub degree: Option<i64>,
    pub a11_free: bool,
    /// Sign `s` with `Ψ_K - s·Ψ_{L₁}·a_{1,1}` free of `a_{1,1}` (σσ products only).
    pub sign: Option<i8>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeArgumentReport {
    pub complex: String,
    pub apex: usize,
    pub rho: Vec<Vec<usize>>,
    pub pi: Vec<Vec<usize>>,
    pub products: Vec<ProductDegree>,
    pub holds: bool,
}

fn a11() -> VarId {
    VarId::A(1, 1)
}

/// Degrees in `a_{1,1}` of `Ψ_K` on products of the cone basis, for `K = {v} * Δ`
/// with `λ_v = e_1` and `λ_1 = (a_{1,1}, 1, 0, …, 0)`.
pub fn degree_argument_experiment(delta: &SimplicialComplex, seed: u64) -> Result<DegreeArgumentReport> {
    let dd = delta.d();
    if dd % 2 == 0 {
        return Err(Error::BadParams("the sphere must be even-dimensional".into()));
    }
    let n = (dd - 1) / 2;
    let v = delta.m() + 1;
    let big_k = delta.cone();
    let d = big_k.d();
    let mut col1 = vec![MultiPoly::var(a11()), MultiPoly::one()];
    col1.resize(d, MultiPoly::zero());
    let lsop = cone_lsop::<Rational>(&big_k, ConeVariant::Theorem53)?.with_column(1, col1)?;
    let ctx_k = PsiContext::ball(&big_k, lsop.clone())?;

    let rows_delta: Vec<usize> = (2..=d).collect();
    let cols_delta: Vec<usize> = (1..=delta.m()).collect();
    let ctx_delta = PsiContext::sphere(delta, lsop.submatrix(&rows_delta, &cols_delta))?;
    let link = delta.link(&Face::from([1]))?;
    let rows_link: Vec<usize> = (3..=d).collect();
    let ctx_link = PsiContext::sphere(&link.complex, lsop.submatrix(&rows_link, &link.vertex_map))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho_local = select_basis::<Rational, ProbeQ, _>(&ctx_link, &BasisRequest::new(n), &mut rng)?;
    if !rho_local.is_complete() {
        return Err(Error::WitnessSearchFailed);
    }
    let rho: Vec<Face> = rho_local.faces.iter().map(|f| link.face_to_parent(f)).collect();
    let off_star = |f: &Face| !delta.contains(&f.with(1));
    let mut req = BasisRequest::new(n);
    req.must_include = rho.clone();
    req.filter = Some(&off_star);
    let full = select_basis::<Rational, ProbeQ, _>(&ctx_delta, &req, &mut rng)?;
    if !full.is_complete() {
        return Err(Error::WitnessSearchFailed);
    }
    let pi: Vec<Face> = full.faces[rho.len()..].to_vec();

    let sigma: Vec<VMono> = rho.iter().map(|f| VMono::face(&f.with(v))).collect();
    let tau: Vec<VMono> = pi.iter().map(|f| VMono::face(&f.with(v))).collect();
    let a = RatFunc::from_poly(MultiPoly::var(a11()));
    let idx = a11().index();
    let mut products = Vec::new();
    for i in 0..sigma.len() {
        for j in i..sigma.len() {
            let psi = ctx_k.psi_product(&sigma[i], &sigma[j])?;
            let lower =
                ctx_link.psi_product(&VMono::face(&rho_local.faces[i]), &VMono::face(&rho_local.faces[j]))?.mul(&a);
            let sign = [1i64, -1].into_iter().find(|&s| psi.sub(&lower.mul(&RatFunc::from_i64(s))).derivative(idx).is_zero());
            let (deg, lc) = psi.degree_lc(idx);
            let degree = degree_value(deg);
            let lc_ok = sign.is_some_and(|s| lower.is_zero() || (degree == Some(1) && lc.mul(&a) == lower.mul(&RatFunc::from_i64(s))));
            let ok = sign.is_some() && lc_ok;
            products.push(ProductDegree {
                kind: "ss".into(),
                i,
                j,
                degree,
                a11_free: psi.derivative(idx).is_zero(),
                sign: sign.map(|s| s as i8),
                ok,
            });
        }
    }
    let mut free_check = |kind: &str, left: &[VMono], right: &[VMono], tri: bool| -> Result<()> {
        for i in 0..left.len() {
            for j in if tri { i } else { 0 }..right.len() {
                let psi = ctx_k.psi_product(&left[i], &right[j])?;
                let free = psi.derivative(idx).is_zero();
                products.push(ProductDegree {
                    kind: kind.into(),
                    i,
                    j,
                    degree: degree_value(psi.degree_lc(idx).0),
                    a11_free: free,
                    sign: None,
                    ok: free,
                });
            }
        }
        Ok(())
    };
    free_check("tt", &tau, &tau, true)?;
    free_check("st", &sigma, &tau, false)?;
    let holds = products.iter().all(|p| p.ok);
    Ok(DegreeArgumentReport { complex: delta.canonical_hash(), apex: v, rho: faces_text(&rho), pi: faces_text(&pi), products, holds })
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuspensionReport {
    pub complex: String,
    pub degree: usize,
    pub rows: Vec<Vec<usize>>,
    pub cols: Vec<Vec<usize>>,
    /// Sign `s` with `Ψ_K(x_v μν) = s·Ψ_Δ(μν)` on every pair, if uniform.
    pub sign: Option<i8>,
    /// `Ψ_K(θ₁ μν) = 0` on every pair.
    pub relation_vanishes: bool,
    pub holds: bool,
}

fn theta_row<F: Scalar>(k: &SimplicialComplex, lsop: &LsopMatrix<MultiPoly<F>>, i: usize) -> Result<RingElement<RatFunc<F>>> {
    let coeffs: Vec<RatFunc<F>> = (1..=k.m()).map(|j| RatFunc::from_poly(lsop.entry(i, j).clone())).collect();
    RingElement::linear(k, &coeffs)
}

/// Compares `Ψ` on the suspension (apexes `v = m+1`, `w = m+2`, `λ_v = e_1`,
/// `λ_w = e_2`) against `Ψ_Δ` for the rows `2..` of the l.s.o.p.
pub fn suspension_experiment(delta: &SimplicialComplex, seed: u64) -> Result<SuspensionReport> {
    let big_k = delta.suspension();
    let v = delta.m() + 1;
    let lsop = cone_lsop::<Rational>(&big_k, ConeVariant::Suspension)?;
    let ctx_k = PsiContext::sphere(&big_k, lsop.clone())?;
    let rows: Vec<usize> = (2..=big_k.d()).collect();
    let cols: Vec<usize> = (1..=delta.m()).collect();
    let ctx_delta = PsiContext::sphere(delta, lsop.submatrix(&rows, &cols))?;

    let dd = delta.d();
    let i = dd / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = select_basis::<Rational, ProbeQ, _>(&ctx_delta, &BasisRequest::new(i), &mut rng)?;
    let hi = select_basis::<Rational, ProbeQ, _>(&ctx_delta, &BasisRequest::new(dd - i), &mut rng)?;
    if !lo.is_complete() || !hi.is_complete() {
        return Err(Error::WitnessSearchFailed);
    }
    let theta1 = theta_row(&big_k, &lsop, 1)?;
    let xv = VMono::var(v);
    let mut signs = Vec::new();
    let mut relation_vanishes = true;
    for a in &lo.faces {
        for b in &hi.faces {
            let mu = VMono::face(a).mul(&VMono::face(b));
            let lower = ctx_delta.psi_monomial(&mu)?;
            let upper = ctx_k.psi_monomial(&xv.mul(&mu))?;
            signs.push(sign_relation(&upper, &lower));
            let rel = theta1.mul(&RingElement::monomial(&big_k, mu, RatFunc::one())?, &big_k);
            relation_vanishes &= ctx_k.psi_element(&rel)?.is_zero();
        }
    }
    let sign = uniform_sign(&signs);
    Ok(SuspensionReport {
        complex: delta.canonical_hash(),
        degree: i,
        rows: faces_text(&lo.faces),
        cols: faces_text(&hi.faces),
        sign,
        relation_vanishes,
        holds: sign.is_some() && relation_vanishes,
    })
}
