//! The canonical function Ψ by Lee's formula, symbolically (rational
//! functions with factored minor denominators) and at a specialization.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::{Arc, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::element::{RingElement, VMono};
use crate::algebra::gcd::gcd;
use crate::algebra::{Embed, MultiPoly, RatFunc, Ring, Scalar, VarId, VarIdx};
use crate::complex::{is_homology_ball, is_homology_sphere, orient, Face, OrientedComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lsop::{is_lsop, LsopMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Sphere,
    /// Relative ring `k(Δ, ∂Δ)` of a homology ball.
    Ball,
}

/// Combinatorial data shared by symbolic and numeric evaluation.
#[derive(Debug)]
pub struct Geometry {
    pub oriented: OrientedComplex,
    pub mode: Mode,
    boundary_faces: HashSet<Face>,
}

impl Geometry {
    pub fn new(oriented: OrientedComplex, mode: Mode) -> Result<Self> {
        let boundary_faces = match mode {
            Mode::Sphere => HashSet::new(),
            Mode::Ball => {
                let mut s = HashSet::new();
                for r in oriented.complex.boundary_ridges() {
                    for k in 0..=r.len() {
                        s.extend(r.subsets(k));
                    }
                }
                s
            }
        };
        Ok(Geometry { oriented, mode, boundary_faces })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.oriented.complex
    }

    pub fn d(&self) -> usize {
        self.complex().d()
    }

    pub fn m(&self) -> usize {
        self.complex().m()
    }

    pub fn is_interior(&self, f: &Face) -> bool {
        self.complex().contains(f) && !self.boundary_faces.contains(f)
    }

    /// Faces whose monomials lie in the top-degree module.
    pub fn admissible(&self, f: &Face) -> bool {
        match self.mode {
            Mode::Sphere => self.complex().contains(f),
            Mode::Ball => self.is_interior(f),
        }
    }

    fn check_monomial(&self, e: &VMono) -> Result<()> {
        if e.degree() != self.d() {
            return Err(Error::WrongDegree { got: e.degree(), expected: self.d() });
        }
        let s = e.support();
        if !self.admissible(&s) {
            return Err(Error::SupportNotAFace(s));
        }
        Ok(())
    }
}

/// Sorted column set; index `m + 1` stands for the replacement vector.
pub(crate) type Key = Vec<usize>;

/// One facet's summand `sign · Π num / Π den`.
#[derive(Clone, Debug)]
pub(crate) struct LeeTerm {
    pub facet: Face,
    pub sign: i8,
    pub num: Vec<(Key, u32)>,
    pub den: Vec<(Key, u32)>,
}

fn replaced_key(f: &Face, pos: usize, repl: usize) -> (Key, i8) {
    let d = f.len();
    let mut k: Key = f.vertices().iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &v)| v).collect();
    k.push(repl);
    (k, if (d - 1 - pos) % 2 == 0 { 1 } else { -1 })
}

/// Summands of Lee's formula over the facets of the star of the support,
/// with determinants taken in sorted facet order and orientation signs folded in.
pub(crate) fn lee_terms(geom: &Geometry, e: &VMono) -> Result<Vec<LeeTerm>> {
    geom.check_monomial(e)?;
    let sigma = e.support();
    let repl = geom.m() + 1;
    let k = geom.complex();
    let mut terms = Vec::new();
    for (idx, f) in k.facets().iter().enumerate() {
        if !sigma.is_subset(f) {
            continue;
        }
        let mut sign = geom.oriented.signs[idx];
        let mut num = Vec::new();
        let mut den = vec![(f.vertices().to_vec(), 1)];
        for (pos, &v) in f.vertices().iter().enumerate() {
            let (key, s) = replaced_key(f, pos, repl);
            let r = e.exponent(v);
            if r == 0 {
                sign *= s;
                den.push((key, 1));
            } else if r > 1 {
                if (r - 1) % 2 == 1 {
                    sign *= s;
                }
                num.push((key, r - 1));
            }
        }
        terms.push(LeeTerm { facet: f.clone(), sign, num, den });
    }
    Ok(terms)
}

/// Keys `(F ∖ i) ∪ {a}` for every facet `F` of the star and every `i ∈ F`.
fn required_repl_keys(terms: &[LeeTerm], repl: usize) -> Vec<Key> {
    let mut out: Vec<Key> = terms
        .iter()
        .flat_map(|t| (0..t.facet.len()).map(move |p| replaced_key(&t.facet, p, repl).0))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Orders terms so that summands sharing denominator factors are adjacent.
fn adjacency_order(terms: &[LeeTerm]) -> Vec<usize> {
    let mut by_key: HashMap<&Key, Vec<usize>> = HashMap::new();
    for (t, term) in terms.iter().enumerate() {
        for (k, _) in &term.den {
            by_key.entry(k).or_default().push(t);
        }
    }
    let mut seen = vec![false; terms.len()];
    let mut order = Vec::with_capacity(terms.len());
    for start in 0..terms.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(t) = q.pop_front() {
            order.push(t);
            for (k, _) in &terms[t].den {
                for &u in &by_key[k] {
                    if !seen[u] {
                        seen[u] = true;
                        q.push_back(u);
                    }
                }
            }
        }
    }
    order
}

/// Symbolic replacement-vector candidates: unit vectors, sums of two unit
/// vectors, the all-ones vector, random small constants, then fresh variables.
fn symbolic_candidate<F: Scalar>(d: usize, idx: usize) -> Vec<MultiPoly<F>> {
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|k| (k + 1..d).map(move |l| (k, l))).collect();
    let unit = |set: &[usize]| (0..d).map(|i| if set.contains(&i) { MultiPoly::one() } else { MultiPoly::zero() }).collect();
    if idx < d {
        return unit(&[idx]);
    }
    let idx = idx - d;
    if idx < pairs.len() {
        let (k, l) = pairs[idx];
        return unit(&[k, l]);
    }
    let idx = idx - pairs.len();
    if idx == 0 {
        return unit(&(0..d).collect::<Vec<_>>());
    }
    if idx <= RANDOM_CANDIDATES {
        let mut rng = ChaCha8Rng::seed_from_u64(idx as u64);
        return (0..d).map(|_| MultiPoly::constant(F::small_random(&mut rng, 50))).collect();
    }
    (1..=d).map(|i| MultiPoly::var(VarId::C(i as u16))).collect()
}

const RANDOM_CANDIDATES: usize = 16;

fn symbolic_candidate_count(d: usize) -> usize {
    d + d * (d - 1) / 2 + 1 + RANDOM_CANDIDATES + 1
}

type Cache<K, V> = RwLock<HashMap<K, V>>;

fn cached<K: std::hash::Hash + Eq + Clone, V: Clone>(c: &Cache<K, V>, k: &K, f: impl FnOnce() -> V) -> V {
    if let Some(v) = c.read().unwrap().get(k) {
        return v.clone();
    }
    let v = f();
    c.write().unwrap().insert(k.clone(), v.clone());
    v
}

/// Symbolic Ψ over the rational function field of the l.s.o.p. variables.
pub struct PsiContext<F: Scalar> {
    geom: Arc<Geometry>,
    lsop: LsopMatrix<MultiPoly<F>>,
    minors: Cache<Key, MultiPoly<F>>,
    repl_minors: Cache<(usize, Key), MultiPoly<F>>,
    memo: Cache<VMono, RatFunc<F>>,
}

impl<F: Scalar> PsiContext<F> {
    /// Validates the mode (homology sphere or ball over the coefficient
    /// characteristic), the l.s.o.p. and the orientation.
    pub fn new(k: &SimplicialComplex, lsop: LsopMatrix<MultiPoly<F>>, mode: Mode) -> Result<Self> {
        lsop.check_dims(k)?;
        let p = F::characteristic();
        match mode {
            Mode::Sphere if !is_homology_sphere(k, p)? => return Err(Error::NotHomologySphere),
            Mode::Ball if !is_homology_ball(k, p)? => return Err(Error::NotHomologyBall),
            _ => {}
        }
        if !is_lsop(k, &lsop)? {
            return Err(Error::NotLsop);
        }
        Self::with_orientation(orient(k)?, lsop, mode)
    }

    pub fn sphere(k: &SimplicialComplex, lsop: LsopMatrix<MultiPoly<F>>) -> Result<Self> {
        Self::new(k, lsop, Mode::Sphere)
    }

    pub fn ball(k: &SimplicialComplex, lsop: LsopMatrix<MultiPoly<F>>) -> Result<Self> {
        Self::new(k, lsop, Mode::Ball)
    }

    /// Uses a caller-supplied coherent orientation; no homology check.
    pub fn with_orientation(oriented: OrientedComplex, lsop: LsopMatrix<MultiPoly<F>>, mode: Mode) -> Result<Self> {
        lsop.check_dims(&oriented.complex)?;
        if !oriented.is_coherent() {
            return Err(Error::NonOrientable);
        }
        Ok(PsiContext {
            geom: Arc::new(Geometry::new(oriented, mode)?),
            lsop,
            minors: RwLock::default(),
            repl_minors: RwLock::default(),
            memo: RwLock::default(),
        })
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geom
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.geom.complex()
    }

    pub fn lsop(&self) -> &LsopMatrix<MultiPoly<F>> {
        &self.lsop
    }

    pub fn mode(&self) -> Mode {
        self.geom.mode
    }

    fn key_poly(&self, key: &Key, cand: usize) -> MultiPoly<F> {
        let repl = self.lsop.m + 1;
        if key.last() == Some(&repl) {
            cached(&self.repl_minors, &(cand, key.clone()), || {
                self.lsop.key_minor(key, &symbolic_candidate::<F>(self.lsop.d, cand))
            })
        } else {
            cached(&self.minors, key, || self.lsop.key_minor(key, &[]))
        }
    }

    /// First replacement-vector candidate whose required minors are all nonzero.
    fn choose_candidate(&self, terms: &[LeeTerm]) -> Result<usize> {
        let keys = required_repl_keys(terms, self.lsop.m + 1);
        (0..symbolic_candidate_count(self.lsop.d))
            .find(|&c| keys.iter().all(|k| !self.key_poly(k, c).is_zero()))
            .ok_or(Error::MinorVanishes)
    }

    /// `Ψ(x^e)` for a monomial of degree `d` supported on a face (interior face in ball mode).
    pub fn psi_monomial(&self, e: &VMono) -> Result<RatFunc<F>> {
        if let Some(v) = self.memo.read().unwrap().get(e) {
            return Ok(v.clone());
        }
        let terms = lee_terms(&self.geom, e)?;
        let value = self.psi_factored_terms(&terms)?.to_ratfunc();
        self.memo.write().unwrap().insert(e.clone(), value.clone());
        Ok(value)
    }

    fn psi_factored_terms(&self, terms: &[LeeTerm]) -> Result<Factored<F>> {
        for t in terms {
            if self.key_poly(&t.den[0].0, 0).is_zero() {
                return Err(Error::MinorVanishes);
            }
        }
        let cand = self.choose_candidate(terms)?;
        Ok(factored_sum(terms, |k| self.key_poly(k, cand)))
    }

    /// `Ψ(x^e)` without the final reduction to lowest terms.
    pub fn psi_factored(&self, e: &VMono) -> Result<Factored<F>> {
        self.psi_factored_terms(&lee_terms(&self.geom, e)?)
    }

    pub fn psi_element(&self, alpha: &RingElement<RatFunc<F>>) -> Result<RatFunc<F>> {
        if alpha.is_empty() {
            return Ok(RatFunc::zero());
        }
        if alpha.degree() != self.geom.d() {
            return Err(Error::WrongDegree { got: alpha.degree(), expected: self.geom.d() });
        }
        let mut acc = RatFunc::zero();
        for (m, c) in alpha.terms() {
            acc = acc.add(&c.mul(&self.psi_monomial(m)?));
        }
        Ok(acc)
    }

    /// Ψ of the product `x^a · x^b`, zero when the support is not admissible.
    pub fn psi_product(&self, a: &VMono, b: &VMono) -> Result<RatFunc<F>> {
        let p = a.mul(b);
        if !self.geom.admissible(&p.support()) {
            return Ok(RatFunc::zero());
        }
        self.psi_monomial(&p)
    }

    /// Specializes the l.s.o.p. at `point`, giving a numeric evaluator.
    pub fn specialize<E: Scalar + Embed<F>>(&self, point: &HashMap<VarIdx, E>, seed: u64) -> Result<NumericPsi<E>> {
        NumericPsi::new(self.geom.clone(), self.lsop.specialize(point)?, seed)
    }

    /// Random specialization over `E` at which the l.s.o.p. stays valid.
    pub fn random_specialization<E: Scalar + Embed<F>, G: Rng + ?Sized>(
        &self,
        rng: &mut G,
        attempts: usize,
    ) -> Result<(HashMap<VarIdx, E>, NumericPsi<E>)> {
        for _ in 0..attempts {
            let point = self.lsop.random_point::<E, _>(rng);
            let spec = self.lsop.specialize(&point)?;
            if is_lsop(self.complex(), &spec)? {
                let num = NumericPsi::new(self.geom.clone(), spec, rng.gen())?;
                return Ok((point, num));
            }
        }
        Err(Error::WitnessSearchFailed)
    }
}

/// Value `num / Π den_k^{e_k}` with the denominator kept as a product of minors.
#[derive(Clone, Debug)]
pub struct Factored<F: Scalar> {
    pub num: MultiPoly<F>,
    pub den: Vec<(MultiPoly<F>, u32)>,
}

impl<F: Scalar> Factored<F> {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Reduces to lowest terms.
    pub fn to_ratfunc(&self) -> RatFunc<F> {
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        let mut total = self.num.clone();
        let mut copies: Vec<MultiPoly<F>> = Vec::new();
        for (p, e) in &self.den {
            for _ in 0..*e {
                copies.push(p.clone());
            }
        }
        // cheap exact division first, gcds only for what is left
        for c in copies.iter_mut() {
            if let Some(q) = total.div_exact_poly(c) {
                total = q;
                *c = MultiPoly::one();
            }
        }
        for c in copies.iter_mut() {
            while !c.is_constant() {
                let g = gcd(&total, c);
                if g.is_constant() {
                    break;
                }
                total = total.div_exact_poly(&g).unwrap();
                *c = c.div_exact_poly(&g).unwrap();
            }
        }
        let den = copies.iter().fold(MultiPoly::one(), |acc, c| acc.mul(c));
        RatFunc::from_coprime(total, den)
    }
}

/// Sums `Σ sign · Π num / Π den` keeping denominators as products of minors,
/// cancelling each factor once no later summand uses it.
fn factored_sum<F: Scalar>(terms: &[LeeTerm], poly: impl Fn(&Key) -> MultiPoly<F>) -> Factored<F> {
    struct Prepared<F: Scalar> {
        coeff: F,
        num: MultiPoly<F>,
        den: Vec<(Key, u32)>,
    }
    let mut polys: HashMap<Key, MultiPoly<F>> = HashMap::new();
    let prepared: Vec<Prepared<F>> = terms
        .iter()
        .map(|t| {
            let mut coeff = F::from_i64(t.sign as i64);
            let mut num = MultiPoly::one();
            for (k, e) in &t.num {
                let p = polys.entry(k.clone()).or_insert_with(|| poly(k)).clone();
                match p.constant_value() {
                    Some(c) => coeff = coeff.mul(&c.pow(*e as u64)),
                    None => num = num.mul(&p.pow(*e as u64)),
                }
            }
            let mut den = Vec::new();
            for (k, e) in &t.den {
                let p = polys.entry(k.clone()).or_insert_with(|| poly(k)).clone();
                match p.constant_value() {
                    Some(c) => coeff = coeff.mul(&c.pow(*e as u64).inv().expect("nonzero minor")),
                    None => den.push((k.clone(), *e)),
                }
            }
            Prepared { coeff, num, den }
        })
        .collect();

    let order = adjacency_order(terms);
    let mut pending: HashMap<&Key, usize> = HashMap::new();
    for t in &prepared {
        for (k, _) in &t.den {
            *pending.entry(k).or_default() += 1;
        }
    }
    let mut mult: BTreeMap<Key, u32> = BTreeMap::new();
    let mut total = MultiPoly::<F>::zero();
    for &ti in &order {
        let t = &prepared[ti];
        for (k, e) in &t.den {
            let cur = mult.entry(k.clone()).or_default();
            if *e > *cur {
                total = total.mul(&polys[k].pow((*e - *cur) as u64));
                *cur = *e;
            }
        }
        let mut cof = t.num.scale(&t.coeff);
        for (k, &l) in &mult {
            let e = t.den.iter().find(|(kk, _)| kk == k).map_or(0, |x| x.1);
            if l > e {
                cof = cof.mul(&polys[k].pow((l - e) as u64));
            }
        }
        total = total.add(&cof);
        for (k, _) in &t.den {
            let c = pending.get_mut(k).unwrap();
            *c -= 1;
            if *c == 0 {
                let p = &polys[k];
                let e = mult.get_mut(k).unwrap();
                while *e > 0 {
                    let Some(q) = total.div_exact_poly(p) else { break };
                    total = q;
                    *e -= 1;
                }
            }
        }
    }
    if total.is_zero() {
        return Factored { num: total, den: Vec::new() };
    }
    let den = mult.into_iter().filter(|&(_, e)| e > 0).map(|(k, e)| (polys.remove(&k).unwrap(), e)).collect();
    Factored { num: total, den }
}

/// Ψ at a specialization with a random numeric replacement vector.
pub struct NumericPsi<E: Scalar> {
    geom: Arc<Geometry>,
    lsop: LsopMatrix<E>,
    seed: u64,
    minors: Cache<Key, E>,
    repl_minors: Cache<(usize, Key), E>,
    memo: Cache<VMono, E>,
}

const NUMERIC_CANDIDATES: usize = 64;

impl<E: Scalar> NumericPsi<E> {
    pub fn new(geom: Arc<Geometry>, lsop: LsopMatrix<E>, seed: u64) -> Result<Self> {
        lsop.check_dims(geom.complex())?;
        Ok(NumericPsi {
            geom,
            lsop,
            seed,
            minors: RwLock::default(),
            repl_minors: RwLock::default(),
            memo: RwLock::default(),
        })
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geom
    }

    pub fn lsop(&self) -> &LsopMatrix<E> {
        &self.lsop
    }

    fn candidate(&self, idx: usize) -> Vec<E> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        (0..self.lsop.d).map(|_| E::random(&mut rng)).collect()
    }

    fn key_value(&self, key: &Key, cand: usize) -> E {
        let repl = self.lsop.m + 1;
        if key.last() == Some(&repl) {
            cached(&self.repl_minors, &(cand, key.clone()), || self.lsop.key_minor(key, &self.candidate(cand)))
        } else {
            cached(&self.minors, key, || self.lsop.key_minor(key, &[]))
        }
    }

    pub fn psi_monomial(&self, e: &VMono) -> Result<E> {
        if let Some(v) = self.memo.read().unwrap().get(e) {
            return Ok(v.clone());
        }
        let terms = lee_terms(&self.geom, e)?;
        let keys = required_repl_keys(&terms, self.lsop.m + 1);
        let cand = (0..NUMERIC_CANDIDATES)
            .find(|&c| keys.iter().all(|k| !self.key_value(k, c).is_zero()))
            .ok_or(Error::MinorVanishes)?;
        let mut acc = E::zero();
        for t in &terms {
            let mut num = E::from_i64(t.sign as i64);
            for (k, ex) in &t.num {
                num = num.mul(&self.key_value(k, cand).pow(*ex as u64));
            }
            let mut den = E::one();
            for (k, ex) in &t.den {
                den = den.mul(&self.key_value(k, cand).pow(*ex as u64));
            }
            acc = acc.add(&num.div(&den).ok_or(Error::MinorVanishes)?);
        }
        self.memo.write().unwrap().insert(e.clone(), acc.clone());
        Ok(acc)
    }

    pub fn psi_element(&self, alpha: &RingElement<E>) -> Result<E> {
        if alpha.is_empty() {
            return Ok(E::zero());
        }
        if alpha.degree() != self.geom.d() {
            return Err(Error::WrongDegree { got: alpha.degree(), expected: self.geom.d() });
        }
        let mut acc = E::zero();
        for (m, c) in alpha.terms() {
            acc = acc.add(&c.mul(&self.psi_monomial(m)?));
        }
        Ok(acc)
    }

    pub fn psi_product(&self, a: &VMono, b: &VMono) -> Result<E> {
        let p = a.mul(b);
        if !self.geom.admissible(&p.support()) {
            return Ok(E::zero());
        }
        self.psi_monomial(&p)
    }
}
