use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::linalg::det_columns;
use crate::algebra::{Field, MultiPoly, RatFunc, VarId, Rational, Ring, Scalar, F65521};
use crate::complex::{boundary_simplex, build_from_facets, octahedron, SimplicialComplex};
use crate::lsop::generic_lsop;

fn square() -> SimplicialComplex {
    build_from_facets(4, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).unwrap()
}

fn ctx(k: &SimplicialComplex) -> PsiContext<Rational> {
    PsiContext::sphere(k, generic_lsop::<Rational>(k)).unwrap()
}

#[test]
fn facet_values_are_signed_inverse_determinants() {
    let k = boundary_simplex(3).unwrap();
    let c = ctx(&k);
    for (idx, f) in k.facets().iter().enumerate() {
        let det = c.lsop().minor(f.vertices()).unwrap();
        let want = RatFunc::from_poly(det).inv().unwrap();
        let want = if c.geometry().oriented.signs[idx] < 0 { want.neg() } else { want };
        assert_eq!(c.psi_monomial(&VMono::face(f)).unwrap(), want);
    }
}

fn compare_routes(k: &SimplicialComplex, mode: Mode, lsop: crate::lsop::LsopMatrix<crate::algebra::MultiPoly<Rational>>) {
    let c = PsiContext::new(k, lsop, mode).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (point, num) = c.random_specialization::<F65521, _>(&mut rng, 8).unwrap();
    let table = oracle_psi(c.geometry(), num.lsop()).unwrap();
    assert_eq!(table.kernel_dim, 1);
    for m in admissible_monomials(c.geometry(), k.d()) {
        let o = table.get(&m).unwrap().clone();
        assert_eq!(num.psi_monomial(&m).unwrap(), o, "numeric {m}");
        let s = c.psi_monomial(&m).unwrap().eval(&|v| point.get(&v).copied()).unwrap();
        assert_eq!(s, o, "symbolic {m}");
    }
}

#[test]
fn lee_matches_oracle_on_small_spheres() {
    for k in [square(), boundary_simplex(3).unwrap(), octahedron()] {
        compare_routes(&k, Mode::Sphere, generic_lsop::<Rational>(&k));
    }
}

#[test]
fn lee_matches_oracle_on_ball() {
    let k = square().cone();
    compare_routes(&k, Mode::Ball, generic_lsop::<Rational>(&k));
}

#[test]
fn pentagon_new_vertex_square() {
    // square with edge {1,2} subdivided by 5; columns 1, 2 form the identity
    let k = build_from_facets(5, vec![vec![1, 5], vec![2, 5], vec![2, 3], vec![3, 4], vec![1, 4]]).unwrap();
    let one = MultiPoly::<Rational>::one;
    let zero = MultiPoly::<Rational>::zero;
    let lsop = generic_lsop::<Rational>(&k).with_column(1, vec![one(), zero()]).unwrap().with_column(2, vec![zero(), one()]).unwrap();
    let c = PsiContext::sphere(&k, lsop).unwrap();
    let v = c.psi_monomial(&VMono::new([(5, 2)])).unwrap();
    let prod = MultiPoly::var(VarId::A(1, 5)).mul(&MultiPoly::var(VarId::A(2, 5)));
    let r = v.mul(&RatFunc::from_poly(prod));
    assert!(r == RatFunc::one() || r == RatFunc::one().neg(), "{r:?}");
}

#[test]
fn rejects_bad_monomials() {
    let k = square();
    let c = ctx(&k);
    assert!(matches!(c.psi_monomial(&VMono::new([(1, 1), (3, 1)])), Err(crate::Error::SupportNotAFace(_))));
    assert!(matches!(c.psi_monomial(&VMono::var(1)), Err(crate::Error::WrongDegree { .. })));
}

#[test]
fn octahedron_bases_have_h_vector_sizes() {
    let k = octahedron();
    let c = ctx(&k);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (i, h) in [1, 3, 3, 1].into_iter().enumerate() {
        let b = select_basis::<_, F65521, _>(&c, &BasisRequest::new(i), &mut rng).unwrap();
        assert_eq!(b.faces.len(), h);
        assert!(b.is_complete());
        assert_ne!(b.witness.minor, Scalar::to_text(&F65521::zero()));
    }
}

#[test]
fn oracle_lemma_ratio_is_orientation_sign() {
    let k = octahedron();
    let c = ctx(&k);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (_, num) = c.random_specialization::<F65521, _>(&mut rng, 8).unwrap();
    let table = oracle_psi(c.geometry(), num.lsop()).unwrap();
    let f = k.facets();
    let value = |i: usize| {
        let cols: Vec<&[F65521]> = f[i].vertices().iter().map(|&j| num.lsop().column(j)).collect();
        det_columns(&cols).mul(table.get(&VMono::face(&f[i])).unwrap())
    };
    let s = &c.geometry().oriented.signs;
    for i in 1..f.len() {
        let want = if s[i] == s[0] { value(0) } else { value(0).neg() };
        assert_eq!(value(i), want);
    }
}
