//! The ten acceptance criteria, shared by the `acceptance` test target and
//! `corpus run`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::probe::ProbeQ;
use crate::algebra::{frobenius_decompose, Degree, Embed, Gf2_20, Mono, MultiPoly, RatFunc, Rational, Ring, Scalar, VarId, F101, F2};
use crate::certify::{
    aniso_char2_certificate, degree_argument_experiment, diffop_experiment, diffop_fixture, identity_suite, lefschetz_check,
    move_invariance_experiment, verify_certificate, CertStatus,
};
use crate::complex::{boundary_simplex, cyclic_polytope_boundary, octahedron, SimplicialComplex};
use crate::corpus;
use crate::error::Result;
use crate::lsop::{generic_lsop, normalized_lsop};
use crate::reduction::{admissible_monomials, oracle_psi, select_basis, BasisRequest, PsiContext, RingElement, VMono};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2}. {} ({:.1}s / {:.0}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            self.budget_seconds,
            self.detail
        )
    }
}

pub const TITLES: [&str; 10] = [
    "Stanley dimension check",
    "Psi well-definedness",
    "oracle equivalence",
    "char-2 certification",
    "move invariance",
    "identity suite",
    "differential operator",
    "degree argument",
    "Lefschetz for 2-spheres",
    "algebra layer",
];

const BUDGETS: [f64; 10] = [60.0, 30.0, 300.0, 600.0, 600.0, 60.0, 120.0, 120.0, 120.0, 60.0];

/// Runs criterion `id` (1-based). Errors count as failures.
pub fn run_criterion(id: usize) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => stanley_dimensions(),
        2 => well_definedness(),
        3 => oracle_equivalence(),
        4 => char2_certification(),
        5 => move_invariance(),
        6 => identities(),
        7 => differential_operator(),
        8 => degree_argument(),
        9 => lefschetz_two_spheres(),
        10 => algebra_layer(),
        _ => panic!("no criterion {id}"),
    };
    let seconds = start.elapsed().as_secs_f64();
    let budget = BUDGETS[id - 1];
    let (ok, mut detail) = match outcome {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    if seconds > budget {
        detail.push_str("; over the time budget");
    }
    CriterionResult { id, title: TITLES[id - 1].into(), passed: ok && seconds <= budget, detail, seconds, budget_seconds: budget }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=10).map(run_criterion).collect()
}

type Outcome = Result<(bool, String)>;

fn stanley_dimensions() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (seed, (name, k)) in corpus::spheres()?.into_iter().enumerate() {
        let ctx = PsiContext::sphere(&k, generic_lsop::<Rational>(&k))?;
        let h = k.fh_vectors()?.h;
        let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
        for (i, &hi) in h.iter().enumerate() {
            let b = select_basis::<Rational, ProbeQ, _>(&ctx, &BasisRequest::new(i), &mut rng)?;
            checked += 1;
            if b.faces.len() as i64 != hi {
                failures.push(format!("{name} degree {i}: {} vs h = {hi}", b.faces.len()));
            }
        }
    }
    Ok((failures.is_empty(), format!("{checked} degrees checked; mismatches: {failures:?}")))
}

/// Oriented facet determinants times Ψ agree on all facets, and Ψ kills
/// `θ_i x_ρ` for every ridge `ρ`.
fn well_definedness() -> Outcome {
    let mut bad = Vec::new();
    let (mut pairs, mut relations) = (0, 0);
    for (name, k) in [("boundary-simplex(3)", boundary_simplex(3)?), ("boundary-simplex(4)", boundary_simplex(4)?), ("octahedron", octahedron())] {
        let ctx = PsiContext::sphere(&k, generic_lsop::<Rational>(&k))?;
        let mut values = Vec::new();
        for (f, &s) in k.facets().iter().zip(&ctx.geometry().oriented.signs) {
            let det = RatFunc::from_poly(ctx.lsop().minor(f.vertices())?).mul(&RatFunc::from_i64(s as i64));
            values.push(det.mul(&ctx.psi_monomial(&VMono::face(f))?));
        }
        pairs += values.len() * (values.len() - 1) / 2;
        if values.iter().any(|v| *v != values[0]) {
            bad.push(format!("{name}: facet values disagree"));
        }
        let thetas: Vec<RingElement<RatFunc<Rational>>> = (1..=k.d())
            .map(|i| {
                let c: Vec<_> = (1..=k.m()).map(|j| RatFunc::from_poly(ctx.lsop().entry(i, j).clone())).collect();
                RingElement::linear(&k, &c)
            })
            .collect::<Result<_>>()?;
        for rho in k.faces_of_dim(k.d() as i64 - 2)? {
            let x = RingElement::face(&k, &rho)?;
            for t in &thetas {
                relations += 1;
                if !ctx.psi_element(&t.mul(&x, &k))?.is_zero() {
                    bad.push(format!("{name}: Psi(theta x_{rho}) != 0"));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{pairs} facet pairs, {relations} ridge relations; failures: {bad:?}")))
}

fn compare_at_points<F, E>(name: &str, ctx: &PsiContext<F>, symbolic: bool, seed: u64, mismatches: &mut Vec<String>) -> Result<usize>
where
    F: Scalar,
    E: Scalar + Embed<F>,
{
    let geom = ctx.geometry();
    let monos = admissible_monomials(geom, geom.d());
    let exact: Vec<RatFunc<F>> = if symbolic { monos.iter().map(|m| ctx.psi_monomial(m)).collect::<Result<_>>()? } else { Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut compared = 0;
    for _ in 0..20 {
        let (point, psi) = ctx.random_specialization::<E, _>(&mut rng, 32)?;
        let table = oracle_psi(geom, &ctx.lsop().specialize(&point)?)?;
        for (n, mu) in monos.iter().enumerate() {
            let want = table.get(mu).cloned().unwrap_or_else(E::zero);
            let lee = if symbolic { exact[n].eval(&|v| point.get(&v).cloned())? } else { psi.psi_monomial(mu)? };
            compared += 1;
            if lee != want {
                mismatches.push(format!("{name} {mu:?}"));
            }
        }
    }
    Ok(compared)
}

/// Lee's formula against the linear-algebra oracle. Numeric Lee at points of
/// the generic l.s.o.p. everywhere; symbolic Ψ specialized afterwards where
/// the normalized l.s.o.p. has few variables.
fn oracle_equivalence() -> Outcome {
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for (n, (name, k)) in corpus::spheres()?.into_iter().enumerate().filter(|(_, (_, k))| k.m() <= 8) {
        let seed = n as u64;
        let g2 = PsiContext::sphere(&k, generic_lsop::<F2>(&k))?;
        compared += compare_at_points::<F2, Gf2_20>(&name, &g2, false, seed, &mut mismatches)?;
        let g101 = PsiContext::sphere(&k, generic_lsop::<F101>(&k))?;
        compared += compare_at_points::<F101, F101>(&name, &g101, false, seed, &mut mismatches)?;
        if k.d() * (k.m() - k.d()) <= SYMBOLIC_VARS {
            let s2 = PsiContext::sphere(&k, normalized_lsop::<F2>(&k, None)?)?;
            compared += compare_at_points::<F2, Gf2_20>(&name, &s2, true, seed, &mut mismatches)?;
            let s101 = PsiContext::sphere(&k, normalized_lsop::<F101>(&k, None)?)?;
            compared += compare_at_points::<F101, F101>(&name, &s101, true, seed, &mut mismatches)?;
        }
    }
    mismatches.truncate(10);
    Ok((mismatches.is_empty(), format!("{compared} values compared; mismatches: {mismatches:?}")))
}

/// Variable budget for the symbolic route of the oracle comparison.
const SYMBOLIC_VARS: usize = 12;

fn char2_certification() -> Outcome {
    let spheres: Vec<(String, SimplicialComplex)> = corpus::spheres()?.into_iter().filter(|(_, k)| k.m() <= 10 && k.d() <= 5).collect();
    let results: Vec<Result<(String, CertStatus, bool, i64)>> = spheres
        .par_iter()
        .enumerate()
        .map(|(n, (name, k))| {
            let cert = aniso_char2_certificate::<20>(k, n as u64)?;
            let ok = verify_certificate::<20>(k, &cert)?;
            Ok((name.clone(), cert.status, ok, cert.error_bound_log2))
        })
        .collect();
    let mut bad = Vec::new();
    let mut worst = i64::MIN;
    for r in results {
        let (name, status, verified, bound) = r?;
        worst = worst.max(bound);
        if status != CertStatus::Anisotropic || !verified || bound > -40 {
            bad.push(format!("{name}: {status:?}, verified={verified}, bound=2^{bound}"));
        }
    }
    Ok((bad.is_empty(), format!("{} spheres, worst error bound 2^{worst}; failures: {bad:?}", spheres.len())))
}

fn move_invariance() -> Outcome {
    let mut bad = Vec::new();
    let mut runs = 0;
    for (name, k) in [("octahedron", octahedron()), ("cyclic(4,7)", cyclic_polytope_boundary(4, 7)?)] {
        for seed in 0..5 {
            let r = move_invariance_experiment::<20>(&k, 5, seed, Some(k.m() + 2))?;
            runs += 1;
            if !r.constant || r.steps.iter().any(|s| s.status != CertStatus::Anisotropic) {
                bad.push(format!("{name} seed {seed}: {:?}", r.steps.iter().map(|s| s.status).collect::<Vec<_>>()));
            }
        }
    }
    Ok((bad.is_empty(), format!("{runs} walks of 5 moves; non-constant: {bad:?}")))
}

fn identities() -> Outcome {
    let checks = identity_suite()?;
    let failed: Vec<String> = checks.iter().filter(|c| !c.holds).map(|c| format!("{} on {}", c.name, c.fixture)).collect();
    Ok((failed.is_empty(), format!("{} identities; failed: {failed:?}", checks.len())))
}

fn differential_operator() -> Outcome {
    let r = diffop_experiment(&diffop_fixture(), 1, 2, 0)?;
    Ok((r.holds, format!("P(c1) = {}, {} other basis squares vanish: {:?}", r.p_c1, r.others_vanish.len(), r.others_vanish)))
}

fn degree_argument() -> Outcome {
    let r = degree_argument_experiment(&octahedron(), 0)?;
    let summary: Vec<String> = r.products.iter().map(|p| format!("{}{}{}:{:?}", p.kind, p.i, p.j, p.degree)).collect();
    Ok((r.holds, format!("degrees in a11: {}", summary.join(" "))))
}

fn lefschetz_two_spheres() -> Outcome {
    let mut bad = Vec::new();
    let mut runs = 0;
    for (name, k) in corpus::spheres()?.into_iter().filter(|(_, k)| k.d() == 3) {
        for seed in 0..5 {
            let r = lefschetz_check::<Rational, ProbeQ>(&k, seed)?;
            runs += 1;
            if !r.holds {
                bad.push(format!("{name} seed {seed}: ranks {:?} vs {:?}", r.ranks, r.expected));
            }
        }
    }
    Ok((bad.is_empty(), format!("{runs} checks; failures: {bad:?}")))
}

fn random_poly<F: Scalar, G: Rng>(rng: &mut G, vars: &[VarId], terms: usize, max_exp: u16) -> MultiPoly<F> {
    let ts: Vec<(Mono, F)> = (0..terms)
        .map(|_| {
            let m = Mono::from_pairs(vars.iter().map(|v| (v.index(), rng.gen_range(0..=max_exp))));
            let c = if F::order_log2().is_some() { F::random(rng) } else { F::small_random(rng, 5) };
            (m, c)
        })
        .collect();
    MultiPoly::from_terms(ts)
}

fn algebra_layer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let vars = [VarId::A(1, 1), VarId::A(1, 2), VarId::A(2, 1), VarId::B(1)];
    let (mut frob, mut deriv, mut lead) = (0, 0, 0);
    for _ in 0..1000 {
        let n = rng.gen_range(0..12);
        let f = random_poly::<Gf2_20, _>(&mut rng, &vars, n, 5);
        if frobenius_decompose(&f)?.reassemble() != f {
            frob += 1;
        }
        let g = random_poly::<F2, _>(&mut rng, &vars, n, 4);
        if frobenius_decompose(&g)?.reassemble() != g {
            frob += 1;
        }
        let sq = g.mul(&g);
        if vars.iter().any(|v| !sq.derivative(v.index()).is_zero()) {
            deriv += 1;
        }
        if !leading_law_holds(&mut rng, &vars) {
            lead += 1;
        }
    }
    Ok((frob + deriv + lead == 0, format!("failures: roundtrip {frob}, derivative of square {deriv}, degree law {lead}")))
}

/// One random instance of the degree law for a sum of rational functions in `a_{1,1}`.
fn leading_law_holds<G: Rng>(rng: &mut G, vars: &[VarId]) -> bool {
    let x = vars[0].index();
    let count = rng.gen_range(1..5);
    let mut phis: Vec<RatFunc<Rational>> = Vec::new();
    for _ in 0..count {
        let terms = rng.gen_range(1..4);
        let num = random_poly::<Rational, _>(rng, vars, terms, 3);
        let terms = rng.gen_range(1..3);
        let mut den = random_poly::<Rational, _>(rng, vars, terms, 2);
        if den.is_zero() {
            den = MultiPoly::one();
        }
        phis.push(RatFunc::new(num, den).expect("nonzero denominator"));
    }
    if rng.gen_bool(0.3) {
        // force a cancellation of the top-degree part
        let top = phis[0].clone();
        let tail = RatFunc::from_poly(random_poly::<Rational, _>(rng, &vars[1..], 1, 1));
        phis.push(top.neg().add(&tail));
    }
    let alpha = phis.iter().fold(RatFunc::zero(), |acc, p| acc.add(p));
    let m = phis.iter().map(|p| p.degree_lc(x).0).max().unwrap();
    let lc_sum = phis.iter().filter(|p| p.degree_lc(x).0 == m).fold(RatFunc::zero(), |acc, p| acc.add(&p.degree_lc(x).1));
    let deg = alpha.degree_lc(x).0;
    if alpha.is_zero() {
        return m == Degree::NegInfinity || lc_sum.is_zero();
    }
    deg <= m && ((deg == m) == !lc_sum.is_zero())
}
