use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use aniso_core::algebra::{Rational, F2};
use aniso_core::certify::aniso_char2_certificate;
use aniso_core::complex::{cyclic_polytope_boundary, octahedron};
use aniso_core::lsop::{generic_lsop, normalized_lsop};
use aniso_core::reduction::{admissible_monomials, PsiContext};

fn symbolic_psi(c: &mut Criterion) {
    let k = octahedron();
    let ctx = PsiContext::sphere(&k, normalized_lsop::<Rational>(&k, None).unwrap()).unwrap();
    let monos = admissible_monomials(ctx.geometry(), k.d());
    c.bench_function("psi/octahedron/normalized/all-degree-d", |b| {
        b.iter(|| {
            for mu in &monos {
                black_box(ctx.psi_monomial(mu).unwrap());
            }
        })
    });
}

fn numeric_psi(c: &mut Criterion) {
    let k = cyclic_polytope_boundary(4, 8).unwrap();
    let ctx = PsiContext::sphere(&k, generic_lsop::<F2>(&k)).unwrap();
    let monos = admissible_monomials(ctx.geometry(), k.d());
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0);
    let (_, psi) = ctx.random_specialization::<aniso_core::algebra::Gf2_20, _>(&mut rng, 32).unwrap();
    c.bench_function("psi/cyclic(4,8)/gf2^20/all-degree-d", |b| {
        b.iter(|| {
            for mu in &monos {
                black_box(psi.psi_monomial(mu).unwrap());
            }
        })
    });
}

fn certificate(c: &mut Criterion) {
    let k = octahedron();
    c.bench_function("cert/octahedron/gf2^20", |b| b.iter(|| black_box(aniso_char2_certificate::<20>(&k, 0).unwrap())));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = symbolic_psi, numeric_psi, certificate
}
criterion_main!(benches);
