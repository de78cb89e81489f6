use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::text::{parse_ratfunc, ratfunc_to_text};
use crate::algebra::{RatFunc, Ring, Scalar};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// Monomial in the face-ring variables `x_1, ..., x_m`: sorted `(vertex, exponent)` pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct VMono(Vec<(usize, u32)>);

impl VMono {
    pub fn one() -> Self {
        VMono(Vec::new())
    }

    pub fn new(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *acc.entry(v).or_default() += e;
            }
        }
        VMono(acc.into_iter().collect())
    }

    /// Square-free monomial `x_F`.
    pub fn face(f: &Face) -> Self {
        VMono(f.vertices().iter().map(|&v| (v, 1)).collect())
    }

    pub fn var(v: usize) -> Self {
        VMono(vec![(v, 1)])
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn support(&self) -> Face {
        Face::from_sorted(self.0.iter().map(|&(v, _)| v).collect())
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, o: &VMono) -> VMono {
        VMono::new(self.0.iter().chain(o.0.iter()).copied())
    }

    pub fn pow(&self, k: u32) -> VMono {
        VMono(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    pub fn to_map(&self) -> BTreeMap<usize, u32> {
        self.0.iter().copied().collect()
    }
}

impl fmt::Display for VMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Coefficients that can appear in ring elements and their JSON form.
pub trait Coeff: Ring {
    fn to_text(&self) -> String;
    fn from_text(s: &str) -> Result<Self>;
}

impl<F: Scalar> Coeff for F {
    fn to_text(&self) -> String {
        Scalar::to_text(self)
    }
    fn from_text(s: &str) -> Result<Self> {
        F::parse_text(s).ok_or_else(|| Error::Parse(format!("bad coefficient `{s}`")))
    }
}

impl<F: Scalar> Coeff for RatFunc<F> {
    fn to_text(&self) -> String {
        ratfunc_to_text(self)
    }
    fn from_text(s: &str) -> Result<Self> {
        parse_ratfunc(s)
    }
}

/// Homogeneous element of a face ring; terms whose support is not a face are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct RingElement<R> {
    degree: usize,
    terms: BTreeMap<VMono, R>,
}

impl<R: Ring> RingElement<R> {
    pub fn zero(degree: usize) -> Self {
        RingElement { degree, terms: BTreeMap::new() }
    }

    pub fn new(k: &SimplicialComplex, degree: usize, terms: impl IntoIterator<Item = (VMono, R)>) -> Result<Self> {
        let mut out = Self::zero(degree);
        for (mono, c) in terms {
            if mono.degree() != degree {
                return Err(Error::WrongDegree { got: mono.degree(), expected: degree });
            }
            if let Some(&(v, _)) = mono.pairs().iter().find(|&&(v, _)| v == 0 || v > k.m()) {
                return Err(Error::VertexOutOfRange(v, k.m()));
            }
            if k.contains(&mono.support()) {
                out.add_term(mono, c);
            }
        }
        Ok(out)
    }

    pub fn monomial(k: &SimplicialComplex, mono: VMono, c: R) -> Result<Self> {
        let d = mono.degree();
        Self::new(k, d, [(mono, c)])
    }

    pub fn face(k: &SimplicialComplex, f: &Face) -> Result<Self> {
        Self::monomial(k, VMono::face(f), R::one())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VMono, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mono: VMono, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if o.degree != self.degree && !o.is_empty() && !self.is_empty() {
            return Err(Error::WrongDegree { got: o.degree, expected: self.degree });
        }
        let mut out = self.clone();
        if out.is_empty() {
            out.degree = o.degree;
        }
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.degree);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.mul(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&R::one().neg())
    }

    pub fn mul(&self, o: &Self, k: &SimplicialComplex) -> Self {
        let mut out = Self::zero(self.degree + o.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                if k.contains(&m.support()) {
                    out.add_term(m, c1.mul(c2));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32, k: &SimplicialComplex) -> Self {
        let mut acc = RingElement { degree: 0, terms: BTreeMap::from([(VMono::one(), R::one())]) };
        for _ in 0..e {
            acc = acc.mul(self, k);
        }
        acc
    }

    /// Linear form `Σ c_j x_j`.
    pub fn linear(k: &SimplicialComplex, coeffs: &[R]) -> Result<Self> {
        if coeffs.len() != k.m() {
            return Err(Error::DimensionMismatch);
        }
        Self::new(k, 1, coeffs.iter().enumerate().map(|(j, c)| (VMono::var(j + 1), c.clone())))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> RingElement<S> {
        let mut out = RingElement::zero(self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: BTreeMap<usize, u32>,
    pub coeff: String,
}

impl<R: Coeff> RingElement<R> {
    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms.iter().map(|(m, c)| TermJson { exps: m.to_map(), coeff: c.to_text() }).collect()
    }

    pub fn from_json(k: &SimplicialComplex, degree: usize, terms: &[TermJson]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|t| Ok((VMono::new(t.exps.iter().map(|(&v, &e)| (v, e))), R::from_text(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, degree, parsed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, F101};
    use crate::complex::octahedron;

    #[test]
    fn non_face_terms_vanish() {
        let k = octahedron();
        let e = RingElement::<F101>::new(
            &k,
            2,
            [(VMono::new([(1, 1), (4, 1)]), F101::one()), (VMono::new([(1, 2)]), F101::one())],
        )
        .unwrap();
        assert_eq!(e.len(), 1);
        let x1 = RingElement::<F101>::face(&k, &Face::from([1])).unwrap();
        let x4 = RingElement::<F101>::face(&k, &Face::from([4])).unwrap();
        assert!(x1.mul(&x4, &k).is_empty());
        assert_eq!(x1.pow(3, &k).len(), 1);
        assert!(RingElement::<F101>::new(&k, 2, [(VMono::var(1), F101::one())]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let k = octahedron();
        let x = RingElement::<RatFunc<Rational>>::linear(
            &k,
            &(1..=6).map(|j| RatFunc::constant(Rational::new(j, 3))).collect::<Vec<_>>(),
        )
        .unwrap();
        let j = serde_json::to_string(&x.to_json()).unwrap();
        let t: Vec<TermJson> = serde_json::from_str(&j).unwrap();
        assert_eq!(RingElement::from_json(&k, 1, &t).unwrap(), x);
    }
}
