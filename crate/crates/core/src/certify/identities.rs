use serde::{Deserialize, Serialize};

use super::experiments::{diffop_experiment, diffop_fixture, sign_relation, uniform_sign};
use crate::algebra::text::ratfunc_to_text;
use crate::algebra::{Field, MultiPoly, RatFunc, Rational, Ring, VarId};
use crate::complex::{boundary_simplex, build_from_facets, Face, SimplicialComplex};
use crate::corpus;
use crate::error::{Error, Result};
use crate::lsop::{generic_lsop, LsopKind, LsopMatrix};
use crate::moves::{apply_move, BistellarMove};
use crate::reduction::{admissible_monomials, PsiContext, VMono};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub fixture: String,
    pub holds: bool,
    /// Sign that occurred for identities stated up to orientation.
    pub sign: Option<i8>,
    pub detail: String,
}

type Q = Rational;

fn a(i: usize, j: usize) -> RatFunc<Q> {
    RatFunc::from_poly(MultiPoly::var(VarId::A(i as u16, j as u16)))
}

fn product(it: impl Iterator<Item = RatFunc<Q>>) -> RatFunc<Q> {
    it.fold(RatFunc::one(), |acc, x| acc.mul(&x))
}

/// Generic l.s.o.p. with the identity block on columns `1..=d`.
fn identity_block_lsop(k: &SimplicialComplex) -> Result<LsopMatrix<MultiPoly<Q>>> {
    let d = k.d();
    let cols = generic_lsop::<Q>(k)
        .columns()
        .iter()
        .enumerate()
        .map(|(j, c)| if j < d { (0..d).map(|i| if i == j { MultiPoly::one() } else { MultiPoly::zero() }).collect() } else { c.clone() })
        .collect();
    LsopMatrix::from_columns(cols, LsopKind::Custom)
}

fn facet_values(name: &str, k: &SimplicialComplex) -> Result<IdentityCheck> {
    let ctx = PsiContext::sphere(k, generic_lsop::<Q>(k))?;
    let (mut pos, mut neg, mut bad) = (0, 0, 0);
    for f in k.facets() {
        let psi = ctx.psi_monomial(&VMono::face(f))?;
        let inv = RatFunc::from_poly(ctx.lsop().minor(f.vertices())?).inv().ok_or(Error::DenominatorVanishes)?;
        match sign_relation(&psi, &inv) {
            Some(1) => pos += 1,
            Some(-1) => neg += 1,
            _ => bad += 1,
        }
    }
    Ok(IdentityCheck {
        name: "facet value 1/det".into(),
        fixture: name.into(),
        holds: bad == 0,
        sign: None,
        detail: format!("{} facets: {pos} with sign +1, {neg} with sign -1, {bad} failures", k.facets().len()),
    })
}

/// 0-move on the facet `[d]` of an even-`d` sphere `delta`, adding vertex `m`.
fn zero_move_checks(name: &str, delta: &SimplicialComplex) -> Result<Vec<IdentityCheck>> {
    let d = delta.d();
    let n = d / 2;
    let facet = Face::new((1..=d).collect());
    let after = apply_move(delta, &BistellarMove::new(facet, [delta.m() + 1]))?;
    let m = after.m();
    let ctx = PsiContext::sphere(&after, identity_block_lsop(&after)?)?;

    let sigma1 = Face::new((1..n).collect()).with(m);
    let square = ctx.psi_monomial(&VMono::face(&sigma1).pow(2))?;
    let top = ctx.psi_monomial(&VMono::face(&Face::new((1..d).collect()).with(m)))?;
    let head = product((1..n).map(|i| a(i, m)));
    let ratio = head.div(&product((n..d).map(|i| a(i, m)))).ok_or(Error::DenominatorVanishes)?;
    let ring_ok = square == ratio.neg().mul(&top);
    let closed = head.div(&product((n..=d).map(|i| a(i, m)))).ok_or(Error::DenominatorVanishes)?;
    let closed_sign = sign_relation(&square, &closed);

    // Ψ agrees with the smaller sphere away from the star of the new vertex.
    let ctx_small = PsiContext::sphere(delta, ctx.lsop().submatrix(&(1..=d).collect::<Vec<_>>(), &(1..m).collect::<Vec<_>>()))?;
    let mut signs = Vec::new();
    let mut count = 0;
    for mu in admissible_monomials(ctx.geometry(), d) {
        let s = mu.support();
        if after.contains(&s.with(m)) || !delta.contains(&s) {
            continue;
        }
        count += 1;
        signs.push(sign_relation(&ctx.psi_monomial(&mu)?, &ctx_small.psi_monomial(&mu)?));
    }
    let restrict_sign = uniform_sign(&signs);

    Ok(vec![
        IdentityCheck {
            name: "0-move square of x_sigma1".into(),
            fixture: name.into(),
            holds: ring_ok,
            sign: Some(-1),
            detail: format!("Psi(x_sigma1^2) = {}", ratfunc_to_text(&square)),
        },
        IdentityCheck {
            name: "0-move value of Psi(x_sigma1^2)".into(),
            fixture: name.into(),
            holds: closed_sign.is_some_and(|s| s != 0),
            sign: closed_sign,
            detail: format!("expected ±{}", ratfunc_to_text(&closed)),
        },
        IdentityCheck {
            name: "0-move restriction off the new star".into(),
            fixture: name.into(),
            holds: restrict_sign.is_some() && count > 0,
            sign: restrict_sign,
            detail: format!("{count} monomials compared"),
        },
    ])
}

fn square() -> SimplicialComplex {
    build_from_facets(4, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).expect("square")
}

/// Every displayed identity on its fixture, by exact symbolic equality.
pub fn identity_suite() -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    for (name, k) in corpus::spheres()? {
        out.push(facet_values(&name, &k)?);
    }
    out.extend(zero_move_checks("pentagon from the square", &square())?);
    out.extend(zero_move_checks("0-move on boundary-simplex(4)", &boundary_simplex(4)?)?);
    let r = diffop_experiment(&diffop_fixture(), 1, 2, 0)?;
    out.push(IdentityCheck {
        name: "structured top value".into(),
        fixture: "diffop fixture (q=1, n=2)".into(),
        holds: r.top_is_unit,
        sign: Some(if r.top_value.starts_with('-') { -1 } else { 1 }),
        detail: format!("Psi(x_1...x_4) = {}", r.top_value),
    });
    out.push(IdentityCheck {
        name: "structured square of x_sigma1".into(),
        fixture: "diffop fixture (q=1, n=2)".into(),
        holds: r.fact_c,
        sign: None,
        detail: format!("Psi(x_1^2 x_2^2) = {}", r.c1),
    });
    Ok(out)
}
