//! Multivariate polynomial gcd by recursive content / primitive-part
//! extraction and primitive pseudo-remainder sequences, one variable at a time.

use super::field::{Ring, Scalar};
use super::poly::{Mono, MultiPoly};
use super::var::VarIdx;

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd<F: Scalar>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> MultiPoly<F> {
    if !f.is_constant() && !g.is_constant() && f.len() > 1 && g.len() > 1 {
        let (big, small) = if f.vars().len() >= g.vars().len() { (f, g) } else { (g, f) };
        if F::quick_coprime(big, small) {
            return MultiPoly::one();
        }
    }
    gcd_rec(f, g).monic()
}

fn gcd_rec<F: Scalar>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> MultiPoly<F> {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one();
    }
    if let Some(m) = monomial_gcd(f, g) {
        return m;
    }
    let fv = f.vars();
    let gv = g.vars();
    // variables present in only one argument can only enter through contents
    if let Some(&v) = fv.iter().find(|v| !gv.contains(v)) {
        return gcd_rec(&content(f, v), g);
    }
    if let Some(&v) = gv.iter().find(|v| !fv.contains(v)) {
        return gcd_rec(f, &content(g, v));
    }
    // main variable: the one with the smallest degree keeps the PRS short
    let v = *fv
        .iter()
        .min_by_key(|&&v| f.degree_in(v).unwrap().min(g.degree_in(v).unwrap()))
        .unwrap();
    let cf = content(f, v);
    let cg = content(g, v);
    let c = gcd_rec(&cf, &cg);
    let pf = f.div_exact_poly(&cf).expect("content divides").monic();
    let pg = g.div_exact_poly(&cg).expect("content divides").monic();
    let (mut a, mut b) = if pf.degree_in(v) >= pg.degree_in(v) { (pf, pg) } else { (pg, pf) };
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == Some(0) {
            b = MultiPoly::one();
            break;
        }
        a = b;
        // dropping the scalar content keeps coefficients from swelling over Q
        b = primitive_part(&r, v).monic();
    }
    let pb = if b.is_constant() { MultiPoly::one() } else { primitive_part(&b, v) };
    c.mul(&pb).monic()
}

/// Shortcut when one argument is a single term: the gcd is a monomial.
fn monomial_gcd<F: Scalar>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> Option<MultiPoly<F>> {
    let (single, other) = if f.len() == 1 {
        (f, g)
    } else if g.len() == 1 {
        (g, f)
    } else {
        return None;
    };
    let m = &single.terms()[0].0;
    let mut pairs: Vec<(VarIdx, u16)> = m.pairs().to_vec();
    for (n, _) in other.terms() {
        for p in pairs.iter_mut() {
            p.1 = p.1.min(n.exponent(p.0));
        }
    }
    Some(MultiPoly::monomial(Mono::from_pairs(pairs), F::one()))
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `v`.
pub fn content<F: Scalar>(f: &MultiPoly<F>, v: VarIdx) -> MultiPoly<F> {
    let mut coeffs = f.coeffs_in(v);
    coeffs.retain(|c| !c.is_zero());
    coeffs.sort_by_key(|c| c.len());
    let mut acc = MultiPoly::zero();
    for c in coeffs {
        acc = gcd_rec(&acc, &c);
        if acc.is_constant() {
            return MultiPoly::one();
        }
    }
    acc.monic()
}

pub fn primitive_part<F: Scalar>(f: &MultiPoly<F>, v: VarIdx) -> MultiPoly<F> {
    let c = content(f, v);
    f.div_exact_poly(&c).expect("content divides")
}

/// Remainder of `lc(b)^k * a` modulo `b` in the variable `v`.
fn pseudo_rem<F: Scalar>(a: &MultiPoly<F>, b: &MultiPoly<F>, v: VarIdx) -> MultiPoly<F> {
    let db = b.degree_in(v).unwrap();
    let bc = b.coeffs_in(v);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(v) {
        if r.is_zero() || dr < db {
            break;
        }
        let lr = r.lc_in(v);
        let shift = Mono::var(v, (dr - db) as u16);
        let t = b.mul(&lr).mul_term(&shift, &F::one());
        r = r.mul(&lb).sub(&t);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Rational, F2, F101};
    use crate::algebra::var::VarId;

    fn v<F: Scalar>(i: u16, j: u16) -> MultiPoly<F> {
        MultiPoly::var(VarId::A(i, j))
    }

    #[test]
    fn recovers_common_factor_over_q() {
        let x = v::<Rational>(1, 1);
        let y = v::<Rational>(1, 2);
        let z = v::<Rational>(2, 1);
        let common = x.mul(&y).sub(&z).add(&MultiPoly::from_i64(2));
        let f = common.mul(&x.add(&z));
        let g = common.mul(&y.mul(&y).sub(&x));
        assert_eq!(gcd(&f, &g), common.monic());
    }

    #[test]
    fn coprime_over_f2() {
        let x = v::<F2>(1, 1);
        let y = v::<F2>(1, 2);
        let f = x.mul(&y).add(&MultiPoly::one());
        let g = x.add(&y);
        assert!(gcd(&f, &g).is_one());
    }

    #[test]
    fn determinant_factors_over_f101() {
        let d1 = v::<F101>(1, 1).mul(&v(2, 2)).sub(&v::<F101>(1, 2).mul(&v(2, 1)));
        let d2 = v::<F101>(1, 1).mul(&v(2, 3)).sub(&v::<F101>(1, 3).mul(&v(2, 1)));
        let f = d1.mul(&d1).mul(&d2);
        let g = d1.mul(&d2.mul(&d2)).mul(&v(3, 3));
        assert_eq!(gcd(&f, &g), d1.mul(&d2).monic());
    }

    #[test]
    fn monomial_gcd_shortcut() {
        let x = v::<F101>(1, 1);
        let y = v::<F101>(1, 2);
        let f = x.mul(&x).mul(&y);
        let g = x.mul(&y).add(&x.mul(&x));
        assert_eq!(gcd(&f, &g), x);
    }

    #[test]
    fn no_coefficient_swell_over_q() {
        use crate::algebra::ratfunc::RatFunc;
        use crate::algebra::text::parse_ratfunc;
        let p = |t: &str| parse_ratfunc::<Rational>(t).unwrap();
        let f = p("(-1 * a[1][2]^2 * a[2][1]^3 * b[1]^3 + 4 * a[1][1]^3 * a[1][2] * b[1] + -2 * a[1][2] * b[1]) / (a[1][1]^2 * a[2][1]^2 + -2 * a[1][1] * a[1][2] * a[2][1])");
        let g = p("(-1/2 * a[1][1]^3 * b[1]^2 + -1 * a[1][1] * a[1][2]^2 * a[2][1]^2) / (a[1][2]^2 * a[2][1] * b[1])");
        let h = p("(a[1][1] * a[1][2]^3 * a[2][1]^2 * b[1]^2 + 3/5 * a[1][1]^3 * a[1][2] * a[2][1]^3 + -2/5 * a[1][2]^2 * b[1]^2) / (a[1][2]^2 * a[2][1] * b[1] + -3/5 * a[2][1]^2 * b[1])");
        let sum: RatFunc<Rational> = f.add(&g).add(&h).add(&f.neg());
        assert_eq!(sum, g.add(&h));
    }
}
