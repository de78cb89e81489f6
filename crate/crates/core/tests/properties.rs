use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use aniso_core::algebra::{frobenius_decompose, Gf2_20, Mono, MultiPoly, Ring, Scalar, VarId, F101, F2};
use aniso_core::certify::{aniso_char2_certificate, verify_certificate};
use aniso_core::complex::{is_homology_sphere, stacked_sphere, SimplicialComplex};
use aniso_core::lsop::{generic_lsop, normalized_lsop, LsopMatrix};
use aniso_core::moves::{apply_move, valid_moves};
use aniso_core::reduction::{admissible_monomials, oracle_psi, PsiContext};

fn small_sphere() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=4, 0usize..=3, any::<u64>()).prop_map(|(d, k, seed)| stacked_sphere(d, k, seed).unwrap())
}

fn poly<F: Scalar>(seed: u64, terms: usize) -> MultiPoly<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = [VarId::A(1, 1), VarId::A(2, 3), VarId::B(1), VarId::C(2)];
    MultiPoly::from_terms((0..terms).map(|_| {
        let m = Mono::from_pairs(vars.iter().map(|v| (v.index(), rng.gen_range(0..=5))));
        (m, F::random(&mut rng))
    }))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn stacked_h_vector(d in 2usize..=5, k in 0usize..=4, seed in any::<u64>()) {
        let s = stacked_sphere(d, k, seed).unwrap();
        let fh = s.fh_vectors().unwrap();
        prop_assert_eq!(fh.h.len(), d + 1);
        for i in 0..=d {
            prop_assert_eq!(fh.h[i], fh.h[d - i]);
            let want = if i == 0 || i == d { 1 } else { k as i64 + 1 };
            prop_assert_eq!(fh.h[i], want);
        }
        prop_assert_eq!(fh.h.iter().sum::<i64>() as u64, fh.f[d - 1]);
    }

    #[test]
    fn moves_are_undone_by_their_inverse(k in small_sphere(), pick in any::<prop::sample::Index>()) {
        let moves = valid_moves(&k).unwrap();
        prop_assume!(!moves.is_empty());
        let mv = &moves[pick.index(moves.len())];
        let after = apply_move(&k, mv).unwrap();
        prop_assert!(is_homology_sphere(&after, 2).unwrap());
        let back = apply_move(&after, &mv.inverse(&k)).unwrap();
        // removing vertex v compacts labels, and the re-added vertex comes back as m
        let expected = match mv.sigma.vertices() {
            &[v] => {
                let perm: Vec<usize> = (1..=k.m()).map(|w| if w == v { k.m() } else if w > v { w - 1 } else { w }).collect();
                k.relabel(&perm).unwrap()
            }
            _ => k.clone(),
        };
        prop_assert_eq!(back.canonical_hash(), expected.canonical_hash());
    }

    #[test]
    fn complex_json_roundtrip(k in small_sphere()) {
        let back = SimplicialComplex::from_json(&k.to_json()).unwrap();
        prop_assert_eq!(back.canonical_hash(), k.canonical_hash());
        prop_assert_eq!(back, k);
    }

    #[test]
    fn lsop_json_roundtrip(k in small_sphere()) {
        let l = normalized_lsop::<F101>(&k, None).unwrap();
        prop_assert_eq!(LsopMatrix::from_json(&l.to_json()).unwrap(), l);
    }

    #[test]
    fn frobenius_roundtrip(seed in any::<u64>(), terms in 0usize..12) {
        let f = poly::<Gf2_20>(seed, terms);
        prop_assert_eq!(frobenius_decompose(&f).unwrap().reassemble(), f);
    }

    #[test]
    fn squares_have_no_derivative_in_char_2(seed in any::<u64>(), terms in 0usize..10) {
        let f = poly::<F2>(seed, terms);
        let sq = f.mul(&f);
        for v in sq.vars() {
            prop_assert!(sq.derivative(v).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn certificates_are_deterministic(k in small_sphere(), seed in any::<u64>()) {
        let a = aniso_char2_certificate::<20>(&k, seed).unwrap();
        let b = aniso_char2_certificate::<20>(&k, seed).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
        prop_assert!(verify_certificate::<20>(&k, &a).unwrap());
    }

    #[test]
    fn lee_matches_oracle(k in small_sphere(), seed in any::<u64>()) {
        let ctx = PsiContext::sphere(&k, generic_lsop::<F101>(&k)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (point, psi) = ctx.random_specialization::<F101, _>(&mut rng, 32).unwrap();
        let table = oracle_psi(ctx.geometry(), &ctx.lsop().specialize(&point).unwrap()).unwrap();
        for mu in admissible_monomials(ctx.geometry(), k.d()) {
            let want = table.get(&mu).cloned().unwrap_or_else(F101::zero);
            prop_assert_eq!(psi.psi_monomial(&mu).unwrap(), want, "{:?}", mu);
        }
    }
}
