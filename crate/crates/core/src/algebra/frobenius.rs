//! Characteristic-2 parity decomposition `f = sum_e m_e * P_e^2` over
//! squarefree monomials `m_e`.

use std::collections::BTreeMap;

use super::field::{Ring, Scalar};
use super::poly::{Mono, MultiPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityDecomposition<F: Scalar> {
    /// Squarefree monomial `m_e` to the polynomial `P_e`.
    pub classes: BTreeMap<Mono, MultiPoly<F>>,
}

pub fn frobenius_decompose<F: Scalar>(f: &MultiPoly<F>) -> Result<ParityDecomposition<F>> {
    if F::characteristic() != 2 {
        return Err(Error::WrongCharacteristic(F::characteristic()));
    }
    let mut buckets: BTreeMap<Mono, Vec<(Mono, F)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let (odd, half) = m.parity_split();
        let root = c.frobenius_root().ok_or(Error::WrongCharacteristic(2))?;
        buckets.entry(odd).or_default().push((half, root));
    }
    let classes = buckets.into_iter().map(|(k, ts)| (k, MultiPoly::from_terms(ts))).collect();
    Ok(ParityDecomposition { classes })
}

impl<F: Scalar> ParityDecomposition<F> {
    pub fn reassemble(&self) -> MultiPoly<F> {
        self.classes.iter().fold(MultiPoly::zero(), |acc, (m, p)| acc.add(&p.mul(p).mul_term(m, &F::one())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Gf2_20, F2, F3};
    use crate::algebra::var::VarId;

    fn x(i: u16, j: u16) -> MultiPoly<F2> {
        MultiPoly::var(VarId::A(i, j))
    }

    #[test]
    fn odd_class_split() {
        // a11^3 a12 = (a11 a12) * a11^2
        let f = x(1, 1).pow(3).mul(&x(1, 2));
        let d = frobenius_decompose(&f).unwrap();
        let key = Mono::from_pairs([(VarId::A(1, 1).index(), 1), (VarId::A(1, 2).index(), 1)]);
        assert_eq!(d.classes.len(), 1);
        assert_eq!(d.classes[&key], x(1, 1));
    }

    #[test]
    fn even_class() {
        let f = x(1, 1).pow(2).add(&x(1, 2).pow(2));
        let d = frobenius_decompose(&f).unwrap();
        assert_eq!(d.classes[&Mono::one()], x(1, 1).add(&x(1, 2)));
    }

    #[test]
    fn extension_coefficients_take_square_roots() {
        let c = Gf2_20::new(0x1234);
        let f = MultiPoly::monomial(Mono::var(0, 3), c);
        let d = frobenius_decompose(&f).unwrap();
        assert_eq!(d.reassemble(), f);
    }

    #[test]
    fn rejects_odd_characteristic() {
        let f = MultiPoly::<F3>::var(VarId::A(1, 1));
        assert!(matches!(frobenius_decompose(&f), Err(Error::WrongCharacteristic(3))));
    }
}
