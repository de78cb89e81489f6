use super::*;
use crate::algebra::{Fp, Gf2_20, Rational, F2};
use crate::complex::{boundary_simplex, cross_polytope, cyclic_polytope_boundary, octahedron, rp2};
use crate::error::Error;

type P = Fp<4_294_967_291>;

#[test]
fn char2_certificates_on_small_spheres() {
    for k in [boundary_simplex(2).unwrap(), boundary_simplex(3).unwrap(), octahedron(), cross_polytope(2).unwrap()] {
        let cert = aniso_char2_certificate::<20>(&k, 7).unwrap();
        assert_eq!(cert.status, CertStatus::Anisotropic, "{}", cert.to_json());
        assert!(verify_certificate::<20>(&k, &cert).unwrap());
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let k = octahedron();
    let mut cert = aniso_char2_certificate::<20>(&k, 3).unwrap();
    cert.complex = "0".repeat(64);
    assert!(!verify_certificate::<20>(&k, &cert).unwrap());
}

#[test]
fn char2_rejects_non_sphere() {
    assert!(matches!(aniso_char2_certificate::<20>(&rp2(), 1), Err(Error::NotHomologySphere)));
}

#[test]
fn lefschetz_ranks_match_h_vector() {
    let c47 = cyclic_polytope_boundary(4, 7).unwrap();
    let r = lefschetz_check::<Rational, P>(&c47, 5).unwrap();
    assert_eq!(r.ranks, vec![1, 3, 6]);
    assert!(r.holds);
    let r = lefschetz_check::<F2, Gf2_20>(&octahedron(), 5).unwrap();
    assert_eq!(r.ranks, vec![1, 3]);
    assert!(r.holds);
}

#[test]
fn probe_finds_nothing_on_octahedron() {
    let r = aniso_random_probe::<F2, Gf2_20>(&octahedron(), 5, 11).unwrap();
    assert_eq!(r.trials, 5);
    assert!(r.counterexamples.is_empty());
}

#[test]
fn identity_suite_passes() {
    for c in identity_suite().unwrap() {
        assert!(c.holds, "{c:?}");
    }
}

#[test]
fn diffop_on_fixture() {
    let r = diffop_experiment(&diffop_fixture(), 1, 2, 0).unwrap();
    assert!(r.holds, "{r:?}");
    assert_eq!(r.operator, vec![3, 4]);
}

#[test]
fn degree_argument_on_octahedron() {
    let r = degree_argument_experiment(&octahedron(), 0).unwrap();
    assert_eq!(r.rho.len(), 2);
    assert_eq!(r.pi.len(), 1);
    assert!(r.holds, "{r:?}");
}

#[test]
fn suspension_of_octahedron() {
    let r = suspension_experiment(&octahedron(), 0).unwrap();
    assert!(r.holds, "{r:?}");
}

#[test]
fn zero_moves_keep_status() {
    let r = move_invariance_experiment::<20>(&boundary_simplex(3).unwrap(), 0, 0, None).unwrap();
    assert_eq!(r.steps.len(), 1);
    let r = move_invariance_experiment::<20>(&octahedron(), 3, 1, Some(8)).unwrap();
    assert!(r.constant);
    assert!(r.steps.iter().all(|s| s.status == CertStatus::Anisotropic));
}
