//! Coefficient domains: prime fields `F_p`, binary extension fields `F_{2^k}`
//! and the rationals.
//!
//! Arithmetic goes through the [`Ring`] and [`Field`] traits rather than the
//! `std::ops` operators so that polynomial and rational-function types can
//! implement the same interface and be used as matrix entries.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use super::poly::MultiPoly;
use super::probe::{coprime_by_images, ProbeQ};

/// A commutative ring with unit.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Characteristic of the underlying coefficient field (0 for Q).
    fn characteristic() -> u64;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// A ring in which nonzero elements are invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

/// Ring elements supporting exact division (`None` when the quotient is not in the ring).
pub trait ExactDiv: Ring {
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

/// Scalar fields usable as polynomial coefficients: hashable, printable,
/// parseable and sampleable.
pub trait Scalar: Field + Eq + Hash + Display {
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;
    /// Element of small absolute size, used for random linear combinations.
    fn small_random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        Self::from_i64(rng.gen_range(-bound..=bound))
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn parse_text(s: &str) -> Option<Self>;
    /// Square root under the Frobenius map, available in characteristic 2.
    fn frobenius_root(&self) -> Option<Self> {
        None
    }
    /// Order of the field when finite (saturating), `None` for Q.
    fn order_log2() -> Option<u32>;
    /// `true` only if `f` and `g` are proven coprime by a cheap test.
    fn quick_coprime(_f: &MultiPoly<Self>, _g: &MultiPoly<Self>) -> bool {
        false
    }
}

/// Embedding of one coefficient field into another (specialization target).
pub trait Embed<F>: Sized {
    fn embed(f: &F) -> Option<Self>;
}

impl<F: Scalar> ExactDiv for F {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.div(other)
    }
}

// ---------------------------------------------------------------------------
// prime fields

/// Element of the prime field `F_P`. `P` must be prime and below 2^32.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F101 = Fp<101>;
pub type F65521 = Fp<65521>;

impl<const P: u64> Fp<P> {
    pub const fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    fn characteristic() -> u64 {
        P
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }
    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        s.parse::<i64>().ok().map(Self::from_i64)
    }
    fn frobenius_root(&self) -> Option<Self> {
        (P == 2).then_some(*self)
    }
    fn order_log2() -> Option<u32> {
        Some(64 - P.leading_zeros() - 1)
    }
    fn quick_coprime(f: &MultiPoly<Self>, g: &MultiPoly<Self>) -> bool {
        if P == 2 {
            coprime_by_images::<Self, Gf2_20>(f, g, &|c| Some(Gf2k::new(c.value())))
        } else if P >= 65_521 {
            coprime_by_images::<Self, Self>(f, g, &|c| Some(*c))
        } else {
            false
        }
    }
}

impl<const P: u64> Embed<Fp<P>> for Fp<P> {
    fn embed(f: &Fp<P>) -> Option<Self> {
        Some(*f)
    }
}

impl<const P: u64> Embed<Rational> for Fp<P> {
    fn embed(f: &Rational) -> Option<Self> {
        let p = BigInt::from(P);
        let num = (f.0.numer() % &p + &p) % &p;
        let den = (f.0.denom() % &p + &p) % &p;
        let n = Fp::<P>(num.to_u64()?);
        let d = Fp::<P>(den.to_u64()?);
        n.div(&d)
    }
}

// ---------------------------------------------------------------------------
// binary extension fields

/// Irreducible polynomial (without the leading `x^K` term) defining `F_{2^K}`.
///
/// Only the extension degrees listed here are supported; the table entries
/// are checked by the Ben-Or irreducibility test in this module's tests.
pub const fn gf2_modulus(k: u32) -> u64 {
    match k {
        2 => 0b11,
        3 => 0b11,
        4 => 0b11,
        8 => 0x1B,
        16 => 0x2B,
        20 => 0b1001,
        24 => 0x1B,
        32 => 0x8D,
        40 => 0b11_1001,
        48 => 0x2D,
        56 => 0x95,
        63 => 0b11,
        _ => 0,
    }
}

/// Extension degrees with a tabulated modulus.
pub const SUPPORTED_FIELD_BITS: [u32; 12] = [2, 3, 4, 8, 16, 20, 24, 32, 40, 48, 56, 63];

/// Element of `F_{2^K}`, stored as the coefficient bits of a polynomial over F_2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2k<const K: u32>(u64);

pub type Gf2_20 = Gf2k<20>;

impl<const K: u32> Gf2k<K> {
    const MASK: u64 = if K == 64 { u64::MAX } else { (1u64 << K) - 1 };

    pub fn new(bits: u64) -> Self {
        assert!(gf2_modulus(K) != 0, "unsupported extension degree {K}");
        Gf2k(bits & Self::MASK)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    fn clmul_reduce(a: u64, b: u64) -> u64 {
        let mut prod: u128 = 0;
        let mut x = a as u128;
        let mut y = b;
        while y != 0 {
            if y & 1 == 1 {
                prod ^= x;
            }
            x <<= 1;
            y >>= 1;
        }
        let modulus = gf2_modulus(K) as u128;
        // reduce from the top bit down to degree K
        let mut deg = 127 - prod.leading_zeros() as i64;
        while prod != 0 && deg >= K as i64 {
            if (prod >> deg) & 1 == 1 {
                let shift = deg - K as i64;
                prod ^= 1u128 << deg;
                prod ^= modulus << shift;
            }
            deg -= 1;
        }
        prod as u64
    }
}

impl<const K: u32> Debug for Gf2k<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x}", self.0)
    }
}

impl<const K: u32> Display for Gf2k<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x}", self.0)
    }
}

impl<const K: u32> Ring for Gf2k<K> {
    fn zero() -> Self {
        Gf2k(0)
    }
    fn one() -> Self {
        Gf2k(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Gf2k(self.0 ^ o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Gf2k(self.0 ^ o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Gf2k(Self::clmul_reduce(self.0, o.0))
    }
    fn neg(&self) -> Self {
        *self
    }
    fn from_i64(v: i64) -> Self {
        Gf2k((v & 1) as u64)
    }
    fn characteristic() -> u64 {
        2
    }
}

impl<const K: u32> Field for Gf2k<K> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // a^(2^K - 2)
        let mut acc = Self::one();
        let mut sq = *self;
        for _ in 1..K {
            sq = sq.mul(&sq);
            acc = acc.mul(&sq);
        }
        Some(acc)
    }
}

impl<const K: u32> Scalar for Gf2k<K> {
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Gf2k::new(rng.gen::<u64>())
    }
    fn small_random<R: Rng + ?Sized>(rng: &mut R, _bound: i64) -> Self {
        Self::random(rng)
    }
    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        let v = if let Some(h) = s.strip_prefix("0x") {
            u64::from_str_radix(h, 16).ok()?
        } else {
            s.parse::<u64>().ok()?
        };
        (v <= Self::MASK).then(|| Gf2k::new(v))
    }
    fn frobenius_root(&self) -> Option<Self> {
        // sqrt(a) = a^(2^(K-1))
        let mut r = *self;
        for _ in 0..K - 1 {
            r = r.mul(&r);
        }
        Some(r)
    }
    fn order_log2() -> Option<u32> {
        Some(K)
    }
    fn quick_coprime(f: &MultiPoly<Self>, g: &MultiPoly<Self>) -> bool {
        K >= 16 && coprime_by_images::<Self, Self>(f, g, &|c| Some(*c))
    }
}

impl<const K: u32> Embed<Fp<2>> for Gf2k<K> {
    fn embed(f: &Fp<2>) -> Option<Self> {
        Some(Gf2k(f.value()))
    }
}

impl<const K: u32> Embed<Gf2k<K>> for Gf2k<K> {
    fn embed(f: &Gf2k<K>) -> Option<Self> {
        Some(*f)
    }
}

// ---------------------------------------------------------------------------
// rationals

/// Arbitrary-precision rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(n: i64, d: i64) -> Self {
        Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational(BigRational::zero())
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Rational(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn characteristic() -> u64 {
        0
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
}

impl Scalar for Rational {
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Rational::from_i64(rng.gen_range(-1_000_000..=1_000_000))
    }
    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                (!d.is_zero()).then(|| Rational(BigRational::new(n, d)))
            }
            None => s.parse::<BigInt>().ok().map(|n| Rational(BigRational::from_integer(n))),
        }
    }
    fn order_log2() -> Option<u32> {
        None
    }
    fn quick_coprime(f: &MultiPoly<Self>, g: &MultiPoly<Self>) -> bool {
        coprime_by_images::<Self, ProbeQ>(f, g, &|c| <ProbeQ as Embed<Rational>>::embed(c))
    }
}

impl Embed<Rational> for Rational {
    fn embed(f: &Rational) -> Option<Self> {
        Some(f.clone())
    }
}

impl Rational {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// x^(2^e) mod f over F_2, polynomials as bit vectors (f includes x^k).
    fn x_pow_2e_mod(e: u32, k: u32, f: u128) -> u128 {
        let mulmod = |a: u128, b: u128| -> u128 {
            let mut p: u128 = 0;
            let mut x = a;
            let mut y = b;
            // a, b have degree < k <= 63, product degree < 126
            while y != 0 {
                if y & 1 == 1 {
                    p ^= x;
                }
                x <<= 1;
                y >>= 1;
            }
            for d in (k..128).rev() {
                if (p >> d) & 1 == 1 {
                    p ^= f << (d - k);
                }
            }
            p
        };
        let mut r: u128 = 2; // x
        for _ in 0..e {
            r = mulmod(r, r);
        }
        r
    }

    fn gcd_f2(mut a: u128, mut b: u128) -> u128 {
        let deg = |p: u128| 127 - p.leading_zeros() as i32;
        while b != 0 {
            while a != 0 && deg(a) >= deg(b) {
                a ^= b << (deg(a) - deg(b));
            }
            std::mem::swap(&mut a, &mut b);
        }
        a
    }

    fn prime_divisors(mut n: u32) -> Vec<u32> {
        let mut out = vec![];
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                out.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    #[test]
    fn tabulated_moduli_are_irreducible() {
        // Rabin's test: f | x^(2^k) - x and gcd(f, x^(2^(k/r)) - x) = 1 for primes r | k
        for &k in &SUPPORTED_FIELD_BITS {
            let f = (1u128 << k) | gf2_modulus(k) as u128;
            assert_eq!(x_pow_2e_mod(k, k, f), 2, "x^(2^{k}) != x mod f for k={k}");
            for r in prime_divisors(k) {
                let h = x_pow_2e_mod(k / r, k, f) ^ 2;
                assert_eq!(gcd_f2(f, h), 1, "k={k} fails at divisor {r}");
            }
        }
    }

    #[test]
    fn gf2k_inverse_and_sqrt() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = Gf2_20::random(&mut rng);
            if a.is_zero() {
                continue;
            }
            assert_eq!(a.mul(&a.inv().unwrap()), Gf2_20::one());
            let r = a.frobenius_root().unwrap();
            assert_eq!(r.mul(&r), a);
        }
    }

    #[test]
    fn prime_field_basics() {
        let a = F101::from_i64(-3);
        assert_eq!(a.value(), 98);
        assert_eq!(a.mul(&a.inv().unwrap()), F101::one());
        assert_eq!(F101::from_i64(6).add(&F101::one()), F101::from_i64(7));
        let seven = Fp::<7>::from_i64(6).add(&Fp::<7>::one());
        assert!(seven.is_zero());
    }

    #[test]
    fn rational_embeds_mod_p() {
        let half = Rational::new(1, 2);
        let h: F101 = Embed::embed(&half).unwrap();
        assert_eq!(h.mul(&F101::from_i64(2)), F101::one());
        let bad = Rational::new(1, 101);
        assert!(<F101 as Embed<Rational>>::embed(&bad).is_none());
    }
}
