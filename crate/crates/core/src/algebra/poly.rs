//! Sparse multivariate polynomials over a [`Scalar`] field.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

use super::field::{Embed, ExactDiv, Ring, Scalar};
use super::var::{VarId, VarIdx};

/// Monomial as a sorted list of `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Mono {
    deg: u32,
    exps: SmallVec<[(VarIdx, u16); 8]>,
}

impl Hash for Mono {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn var(v: VarIdx, e: u16) -> Self {
        if e == 0 {
            return Mono::one();
        }
        let mut exps = SmallVec::new();
        exps.push((v, e));
        Mono { deg: e as u32, exps }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs; repeated variables accumulate.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarIdx, u16)>) -> Self {
        let mut map: BTreeMap<VarIdx, u16> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        let exps: SmallVec<[(VarIdx, u16); 8]> = map.into_iter().filter(|&(_, e)| e > 0).collect();
        let deg = exps.iter().map(|&(_, e)| e as u32).sum();
        Mono { deg, exps }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn pairs(&self) -> &[(VarIdx, u16)] {
        &self.exps
    }

    pub fn exponent(&self, v: VarIdx) -> u16 {
        match self.exps.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut exps = SmallVec::with_capacity(self.exps.len() + o.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < o.exps.len() {
            let (a, b) = (self.exps[i], o.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    exps.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&o.exps[j..]);
        Mono { deg: self.deg + o.deg, exps }
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        if o.deg > self.deg {
            return None;
        }
        let mut exps = SmallVec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            if j < o.exps.len() && o.exps[j].0 < v {
                return None;
            }
            if j < o.exps.len() && o.exps[j].0 == v {
                let f = o.exps[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    exps.push((v, e - f));
                }
                j += 1;
            } else {
                exps.push((v, e));
            }
        }
        if j < o.exps.len() {
            return None;
        }
        Some(Mono { deg: self.deg - o.deg, exps })
    }

    pub fn without(&self, v: VarIdx) -> Mono {
        let exps: SmallVec<[(VarIdx, u16); 8]> = self.exps.iter().copied().filter(|&(w, _)| w != v).collect();
        let deg = exps.iter().map(|&(_, e)| e as u32).sum();
        Mono { deg, exps }
    }

    /// Splits `x^e` as `x^(e mod 2) * (x^(e div 2))^2`.
    pub fn parity_split(&self) -> (Mono, Mono) {
        let odd = Mono::from_pairs(self.exps.iter().map(|&(v, e)| (v, e % 2)));
        let half = Mono::from_pairs(self.exps.iter().map(|&(v, e)| (v, e / 2)));
        (odd, half)
    }

    pub fn pow(&self, k: u16) -> Mono {
        Mono::from_pairs(self.exps.iter().map(|&(v, e)| (v, e * k)))
    }
}

impl Ord for Mono {
    /// Graded lexicographic order; variables with smaller index are larger.
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| {
            for (&(va, ea), &(vb, eb)) in self.exps.iter().zip(o.exps.iter()) {
                if va != vb {
                    return if va < vb { Ordering::Greater } else { Ordering::Less };
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
            self.exps.len().cmp(&o.exps.len())
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial; terms sorted by decreasing monomial, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly<F> {
    terms: Vec<(Mono, F)>,
}

impl<F: Scalar> Default for MultiPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Scalar> MultiPoly<F> {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn var(v: VarId) -> Self {
        MultiPoly { terms: vec![(Mono::var(v.index(), 1), F::one())] }
    }

    pub fn monomial(m: Mono, c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    /// Normalizes an arbitrary list of terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, F)>) -> Self {
        let mut map: HashMap<Mono, F> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(map)
    }

    fn from_map(map: HashMap<Mono, F>) -> Self {
        let mut terms: Vec<(Mono, F)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { terms }
    }

    /// Terms already sorted (descending) and free of zeros.
    fn from_sorted(terms: Vec<(Mono, F)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        MultiPoly { terms }
    }

    pub fn terms(&self) -> &[(Mono, F)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, F)> {
        self.terms.first()
    }

    pub fn lc(&self) -> F {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn vars(&self) -> BTreeSet<VarIdx> {
        self.terms.iter().flat_map(|t| t.0.pairs().iter().map(|p| p.0)).collect()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // multiplying by a monomial preserves the order
        MultiPoly { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.mul(c))).collect() }
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    fn merge(&self, o: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let fix = |c: &F| if negate_other { c.neg() } else { c.clone() };
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), fix(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { ca.sub(cb) } else { ca.add(cb) };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(|(m, c)| (m.clone(), fix(c))));
        Self::from_sorted(out)
    }

    fn mul_poly(&self, o: &Self) -> Self {
        if self.is_empty() || o.is_empty() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.mul_term(m, c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.mul_term(m, c);
        }
        let mut map: HashMap<Mono, F> = HashMap::with_capacity(self.terms.len() * o.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let c = ca.mul(cb);
                let m = ma.mul(mb);
                match map.get_mut(&m) {
                    Some(acc) => *acc = acc.add(&c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(map)
    }

    /// Degree in variable `v` (`None` for the zero polynomial).
    pub fn degree_in(&self, v: VarIdx) -> Option<u32> {
        self.terms.iter().map(|t| t.0.exponent(v) as u32).max()
    }

    /// Coefficients with respect to `v`: `self = sum_k out[k] * v^k`.
    pub fn coeffs_in(&self, v: VarIdx) -> Vec<MultiPoly<F>> {
        let Some(top) = self.degree_in(v) else { return vec![] };
        let mut buckets: Vec<Vec<(Mono, F)>> = vec![Vec::new(); top as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            // removing one variable keeps relative order within a bucket
            buckets[e].push((m.without(v), c.clone()));
        }
        buckets.into_iter().map(Self::from_sorted_bucket).collect()
    }

    fn from_sorted_bucket(mut terms: Vec<(Mono, F)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self::from_sorted(terms)
    }

    pub fn from_coeffs_in(v: VarIdx, coeffs: &[MultiPoly<F>]) -> Self {
        let mut acc = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.merge(&c.mul_term(&Mono::var(v, k as u16), &F::one()), false);
            }
        }
        acc
    }

    /// Leading coefficient with respect to `v`, a polynomial free of `v`.
    pub fn lc_in(&self, v: VarIdx) -> MultiPoly<F> {
        self.coeffs_in(v).pop().unwrap_or_else(Self::zero)
    }

    pub fn derivative(&self, v: VarIdx) -> Self {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            if e == 0 {
                return None;
            }
            let c = c.mul(&F::from_i64(e as i64));
            if c.is_zero() {
                return None;
            }
            let reduced = m.div(&Mono::var(v, 1)).expect("variable present");
            Some((reduced, c))
        });
        Self::from_terms(terms)
    }

    /// Evaluates at a point given by `assign`; `None` if a variable is unassigned
    /// or a coefficient does not embed.
    pub fn eval<E: Scalar + Embed<F>>(&self, assign: &dyn Fn(VarIdx) -> Option<E>) -> Option<E> {
        let mut cache: HashMap<VarIdx, Vec<E>> = HashMap::new();
        let mut acc = E::zero();
        for (m, c) in &self.terms {
            let mut t = E::embed(c)?;
            for &(v, e) in m.pairs() {
                let powers = match cache.get_mut(&v) {
                    Some(p) => p,
                    None => {
                        let x = assign(v)?;
                        cache.entry(v).or_insert_with(|| vec![E::one(), x])
                    }
                };
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap().mul(&powers[1]);
                    powers.push(next);
                }
                t = t.mul(&powers[e as usize]);
            }
            acc = acc.add(&t);
        }
        Some(acc)
    }

    /// Substitutes polynomials for some variables.
    pub fn substitute(&self, subst: &dyn Fn(VarIdx) -> Option<MultiPoly<F>>) -> Self {
        let mut acc = Self::zero();
        let mut cache: HashMap<(VarIdx, u16), MultiPoly<F>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut keep = Vec::new();
            let mut t = MultiPoly::constant(c.clone());
            for &(v, e) in m.pairs() {
                match subst(v) {
                    Some(p) => {
                        let pe = cache.entry((v, e)).or_insert_with(|| p.pow(e as u64)).clone();
                        t = t.mul_poly(&pe);
                    }
                    None => keep.push((v, e)),
                }
            }
            let t = t.mul_term(&Mono::from_pairs(keep), &F::one());
            acc = acc.merge(&t, false);
        }
        acc
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn div_exact_poly(&self, g: &Self) -> Option<Self> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = g.constant_value() {
            return Some(self.scale(&c.inv()?));
        }
        let (glm, glc) = g.leading().unwrap().clone();
        let ginv = glc.inv()?;
        if g.terms.len() == 1 {
            let terms: Option<Vec<_>> = self.terms.iter().map(|(m, c)| Some((m.div(&glm)?, c.mul(&ginv)))).collect();
            return terms.map(Self::from_sorted);
        }
        // quick rejection on per-variable degrees
        for (v, dg) in g.vars().into_iter().map(|v| (v, g.degree_in(v).unwrap())) {
            if self.degree_in(v).unwrap_or(0) < dg {
                return None;
            }
        }
        let mut rem: BTreeMap<Mono, F> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, F)> = Vec::new();
        while let Some((lm, lc)) = rem.pop_last() {
            let qm = lm.div(&glm)?;
            let qc = lc.mul(&ginv);
            for (m, c) in g.terms.iter().skip(1) {
                let key = m.mul(&qm);
                let delta = c.mul(&qc);
                match rem.get_mut(&key) {
                    Some(acc) => {
                        *acc = acc.sub(&delta);
                        if acc.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, delta.neg());
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Self::from_sorted(quot))
    }

    /// Maps coefficients into another field.
    pub fn map_coeffs<G: Scalar + Embed<F>>(&self) -> Option<MultiPoly<G>> {
        let terms: Option<Vec<_>> = self.terms.iter().map(|(m, c)| Some((m.clone(), G::embed(c)?))).collect();
        terms.map(MultiPoly::from_terms)
    }
}

impl<F: Scalar> Ring for MultiPoly<F> {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }
    fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_poly(o)
    }
    fn neg(&self) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }
    fn from_i64(v: i64) -> Self {
        MultiPoly::constant(F::from_i64(v))
    }
    fn characteristic() -> u64 {
        F::characteristic()
    }
}

impl<F: Scalar> ExactDiv for MultiPoly<F> {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.div_exact_poly(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Rational, F2, F101};

    fn a(i: u16, j: u16) -> MultiPoly<Rational> {
        MultiPoly::var(VarId::A(i, j))
    }

    #[test]
    fn difference_of_squares_over_q() {
        let p = a(1, 1).add(&a(1, 2)).mul(&a(1, 1).sub(&a(1, 2)));
        let expect = a(1, 1).mul(&a(1, 1)).sub(&a(1, 2).mul(&a(1, 2)));
        assert_eq!(p, expect);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn frobenius_square_over_f2() {
        let x = MultiPoly::<F2>::var(VarId::A(1, 1));
        let y = MultiPoly::<F2>::var(VarId::A(1, 2));
        let s = x.add(&y);
        assert_eq!(s.mul(&s), x.mul(&x).add(&y.mul(&y)));
    }

    #[test]
    fn graded_lex_leading_term() {
        // a11 > a12 > a21 in degree one; degree dominates
        let p = a(2, 1).add(&a(1, 2)).add(&a(1, 1));
        assert_eq!(p.leading().unwrap().0, Mono::var(VarId::A(1, 1).index(), 1));
        let q = p.add(&a(2, 1).mul(&a(2, 1)));
        assert_eq!(q.leading().unwrap().0.degree(), 2);
    }

    #[test]
    fn exact_division_roundtrip() {
        let f = a(1, 1).add(&a(2, 3)).add(&MultiPoly::from_i64(3));
        let g = a(1, 2).mul(&a(1, 1)).sub(&a(2, 2));
        let h = f.mul(&g);
        assert_eq!(h.div_exact(&g), Some(f.clone()));
        assert_eq!(h.div_exact(&f), Some(g.clone()));
        assert_eq!(h.add(&MultiPoly::one()).div_exact(&g), None);
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let x = MultiPoly::<F101>::var(VarId::A(1, 1));
        let y = MultiPoly::<F101>::var(VarId::A(1, 2));
        let f = x.mul(&y).add(&MultiPoly::one());
        let assign = |v: VarIdx| -> Option<F101> {
            match VarId::from_index(v) {
                VarId::A(1, 1) => Some(F101::from_i64(2)),
                VarId::A(1, 2) => Some(F101::from_i64(3)),
                _ => None,
            }
        };
        assert_eq!(f.eval(&assign), Some(F101::from_i64(7)));
    }

    #[test]
    fn coefficient_split_roundtrip() {
        let v = VarId::A(1, 1).index();
        let f = a(1, 1).mul(&a(1, 1)).mul(&a(2, 2)).add(&a(1, 1)).add(&a(3, 3));
        let cs = f.coeffs_in(v);
        assert_eq!(cs.len(), 3);
        assert_eq!(MultiPoly::from_coeffs_in(v, &cs), f);
    }
}
