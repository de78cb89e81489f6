//! Polynomial text format: terms `c * a[i][j]^e * b[i]^e` joined by ` + `.
//! A unit coefficient is omitted, exponent 1 is omitted and the zero
//! polynomial prints as `0`. Rational functions print as `(num) / (den)`.

use super::field::Scalar;
use super::poly::{Mono, MultiPoly};
use super::ratfunc::RatFunc;
use super::var::VarId;
use crate::error::{Error, Result};

pub fn mono_to_text(m: &Mono) -> String {
    m.pairs()
        .iter()
        .map(|&(v, e)| {
            let name = VarId::from_index(v).to_string();
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

pub fn poly_to_text<F: Scalar>(p: &MultiPoly<F>) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.terms()
        .iter()
        .map(|(m, c)| {
            if m.is_one() {
                c.to_text()
            } else if c.is_one() {
                mono_to_text(m)
            } else {
                format!("{} * {}", c.to_text(), mono_to_text(m))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn ratfunc_to_text<F: Scalar>(r: &RatFunc<F>) -> String {
    if r.is_polynomial() {
        poly_to_text(r.num())
    } else {
        format!("({}) / ({})", poly_to_text(r.num()), poly_to_text(r.den()))
    }
}

fn parse_var(s: &str) -> Result<VarId> {
    let bad = || Error::Parse(format!("bad variable `{s}`"));
    let idx = |t: &str| -> Result<u16> {
        let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        t.parse::<u16>().map_err(|_| bad()).and_then(|v| if v == 0 { Err(bad()) } else { Ok(v) })
    };
    if let Some(rest) = s.strip_prefix('a') {
        let split = rest.find("][").ok_or_else(bad)?;
        let (i, j) = rest.split_at(split + 1);
        Ok(VarId::A(idx(i)?, idx(j)?))
    } else if let Some(rest) = s.strip_prefix('b') {
        Ok(VarId::B(idx(rest)?))
    } else if let Some(rest) = s.strip_prefix('c') {
        Ok(VarId::C(idx(rest)?))
    } else {
        Err(bad())
    }
}

fn parse_term<F: Scalar>(t: &str) -> Result<(Mono, F)> {
    let mut coeff = F::one();
    let mut pairs = Vec::new();
    for (k, factor) in t.split('*').map(str::trim).enumerate() {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{t}`")));
        }
        let starts_var = factor.starts_with(['a', 'b', 'c']) && factor[1..].starts_with('[');
        if !starts_var {
            if k != 0 {
                return Err(Error::Parse(format!("coefficient must come first in `{t}`")));
            }
            coeff = F::parse_text(factor).ok_or_else(|| Error::Parse(format!("bad coefficient `{factor}`")))?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n, e.trim().parse::<u16>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
            None => (factor, 1),
        };
        pairs.push((parse_var(name.trim())?.index(), exp));
    }
    Ok((Mono::from_pairs(pairs), coeff))
}

pub fn parse_poly<F: Scalar>(s: &str) -> Result<MultiPoly<F>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let terms = s.split(" + ").map(parse_term::<F>).collect::<Result<Vec<_>>>()?;
    Ok(MultiPoly::from_terms(terms))
}

pub fn parse_ratfunc<F: Scalar>(s: &str) -> Result<RatFunc<F>> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('(') {
        if let Some((num, den)) = rest.split_once(") / (") {
            let den = den.strip_suffix(')').ok_or_else(|| Error::Parse("unbalanced parentheses".into()))?;
            return RatFunc::new(parse_poly(num)?, parse_poly(den)?);
        }
    }
    Ok(RatFunc::from_poly(parse_poly(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Gf2_20, Rational, Ring, F101};

    #[test]
    fn print_format() {
        let p = MultiPoly::<Rational>::var(VarId::A(1, 2))
            .pow(2)
            .scale(&Rational::new(-3, 2))
            .add(&MultiPoly::var(VarId::B(4)))
            .add(&MultiPoly::constant(Rational::from_i64(5)));
        assert_eq!(poly_to_text(&p), "-3/2 * a[1][2]^2 + b[4] + 5");
        assert_eq!(poly_to_text(&MultiPoly::<F101>::zero()), "0");
    }

    #[test]
    fn roundtrip() {
        let x = MultiPoly::<F101>::var(VarId::A(3, 11));
        let y = MultiPoly::<F101>::var(VarId::C(2));
        let p = x.mul(&y).scale(&F101::from_i64(7)).add(&y.pow(3)).sub(&MultiPoly::one());
        assert_eq!(parse_poly::<F101>(&poly_to_text(&p)).unwrap(), p);
        let r = RatFunc::new(p.clone(), x.add(&MultiPoly::one())).unwrap();
        assert_eq!(parse_ratfunc::<F101>(&ratfunc_to_text(&r)).unwrap(), r);
        let g = MultiPoly::<Gf2_20>::var(VarId::B(1)).scale(&Gf2_20::new(0xabc));
        assert_eq!(parse_poly::<Gf2_20>(&poly_to_text(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly::<F101>("a[1] * 3").is_err());
        assert!(parse_poly::<F101>("").is_err());
        assert!(parse_poly::<F101>("a[0][1]").is_err());
    }
}
