//! Fast proof of coprimality by univariate images.
//!
//! For every variable `v` of `g`, the other variables are set to a random
//! point of a large field. If both leading coefficients in `v` survive and the
//! univariate images are coprime, no common factor involves `v`. Passing for
//! every variable of `g` proves `gcd(f, g) = 1`. A failed probe proves nothing.

use std::collections::{BTreeSet, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Scalar};
use super::poly::MultiPoly;
use super::var::VarIdx;

/// Prime used for images of rational polynomials.
pub type ProbeQ = super::field::Fp<4_294_967_291>;

pub(crate) fn coprime_by_images<F: Scalar, K: Scalar>(
    f: &MultiPoly<F>,
    g: &MultiPoly<F>,
    conv: &dyn Fn(&F) -> Option<K>,
) -> bool {
    let gv = g.vars();
    if gv.is_empty() {
        return true;
    }
    let mut all: BTreeSet<VarIdx> = f.vars();
    all.extend(gv.iter().copied());
    let mut rng = ChaCha8Rng::seed_from_u64((f.len() as u64) << 32 ^ g.len() as u64);
    let point: HashMap<VarIdx, K> = all.iter().map(|&v| (v, K::random(&mut rng))).collect();
    let (Some(fc), Some(gc)) = (convert(f, conv), convert(g, conv)) else { return false };
    for &v in &gv {
        let fu = image(&fc, v, &point);
        let gu = image(&gc, v, &point);
        if fu.len() as u32 != f.degree_in(v).unwrap_or(0) + 1 || gu.len() as u32 != g.degree_in(v).unwrap() + 1 {
            return false;
        }
        if fu.len() > 1 && univariate_gcd_degree(fu, gu) > 0 {
            return false;
        }
    }
    true
}

fn convert<F: Scalar, K: Scalar>(f: &MultiPoly<F>, conv: &dyn Fn(&F) -> Option<K>) -> Option<Vec<(Vec<(VarIdx, u16)>, K)>> {
    f.terms().iter().map(|(m, c)| Some((m.pairs().to_vec(), conv(c)?))).collect()
}

/// Coefficients in `v` (trimmed) after substituting `point` for the rest.
fn image<K: Scalar>(f: &[(Vec<(VarIdx, u16)>, K)], v: VarIdx, point: &HashMap<VarIdx, K>) -> Vec<K> {
    let mut out: Vec<K> = Vec::new();
    for (pairs, c) in f {
        let mut val = c.clone();
        let mut e = 0usize;
        for &(u, k) in pairs {
            if u == v {
                e = k as usize;
            } else {
                val = val.mul(&point[&u].pow(k as u64));
            }
        }
        if out.len() <= e {
            out.resize(e + 1, K::zero());
        }
        out[e] = out[e].add(&val);
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn univariate_gcd_degree<K: Field>(mut a: Vec<K>, mut b: Vec<K>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = b.last().unwrap().inv().unwrap();
        while a.len() >= b.len() {
            let q = a.last().unwrap().mul(&inv);
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[shift + i] = a[shift + i].sub(&q.mul(c));
            }
            a.pop();
            while a.last().is_some_and(|c| c.is_zero()) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, Ring, VarId};

    #[test]
    fn detects_coprime_and_shared() {
        let x = MultiPoly::<Rational>::var(VarId::A(1, 1));
        let y = MultiPoly::<Rational>::var(VarId::A(1, 2));
        let f = x.mul(&y).add(&MultiPoly::one());
        let g = x.add(&y);
        let conv = |c: &Rational| <ProbeQ as crate::algebra::Embed<Rational>>::embed(c);
        assert!(coprime_by_images(&f, &g, &conv));
        assert!(!coprime_by_images(&f.mul(&g), &g.mul(&y), &conv));
    }
}
