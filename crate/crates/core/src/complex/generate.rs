//! Corpus generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{build_from_facets, Face, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generator {
    BoundarySimplex { d: usize },
    CrossPolytope { n: usize },
    Cyclic { d: usize, m: usize },
    Stacked { d: usize, k: usize, seed: u64 },
    Rp2,
}

impl Generator {
    pub fn build(&self) -> Result<SimplicialComplex> {
        match *self {
            Generator::BoundarySimplex { d } => boundary_simplex(d),
            Generator::CrossPolytope { n } => cross_polytope(n),
            Generator::Cyclic { d, m } => cyclic_polytope_boundary(d, m),
            Generator::Stacked { d, k, seed } => stacked_sphere(d, k, seed),
            Generator::Rp2 => Ok(rp2()),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Generator::BoundarySimplex { d } => format!("boundary-simplex({d})"),
            Generator::CrossPolytope { n } => format!("cross-polytope({n})"),
            Generator::Cyclic { d, m } => format!("cyclic({d},{m})"),
            Generator::Stacked { d, k, seed } => format!("stacked({d},{k},{seed})"),
            Generator::Rp2 => "rp2".into(),
        }
    }
}

/// Boundary of the `d`-simplex: `d + 1` vertices, facets of size `d`.
pub fn boundary_simplex(d: usize) -> Result<SimplicialComplex> {
    if d == 0 {
        return Err(Error::BadParams("boundary_simplex needs d >= 1".into()));
    }
    let all = Face::new((1..=d + 1).collect());
    build_from_facets(d + 1, all.subsets(d).into_iter().map(|f| f.vertices().to_vec()).collect())
}

/// Boundary of the `n`-dimensional cross-polytope; vertex `i` is antipodal to `i + n`.
pub fn cross_polytope(n: usize) -> Result<SimplicialComplex> {
    if n == 0 || n > 12 {
        return Err(Error::BadParams(format!("cross_polytope needs 1 <= n <= 12, got {n}")));
    }
    let facets = (0..1usize << n).map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { i + 1 + n } else { i + 1 }).collect());
    build_from_facets(2 * n, facets.collect())
}

pub fn octahedron() -> SimplicialComplex {
    cross_polytope(3).unwrap()
}

/// Boundary of the cyclic `d`-polytope on `m` vertices by Gale's evenness condition.
pub fn cyclic_polytope_boundary(d: usize, m: usize) -> Result<SimplicialComplex> {
    if d < 2 || m < d + 2 || m > 24 {
        return Err(Error::BadParams(format!("cyclic polytope needs d >= 2 and d + 2 <= m <= 24, got d={d}, m={m}")));
    }
    let all = Face::new((1..=m).collect());
    let facets: Vec<Vec<usize>> = all
        .subsets(d)
        .into_iter()
        .filter(|s| {
            let gaps: Vec<usize> = (1..=m).filter(|v| !s.contains(*v)).collect();
            gaps.windows(2).all(|w| s.vertices().iter().filter(|&&v| w[0] < v && v < w[1]).count() % 2 == 0)
        })
        .map(|s| s.vertices().to_vec())
        .collect();
    build_from_facets(m, facets)
}

/// `boundary_simplex(d)` followed by `k` stellar subdivisions of random facets.
pub fn stacked_sphere(d: usize, k: usize, seed: u64) -> Result<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut facets: Vec<Face> = boundary_simplex(d)?.facets().to_vec();
    let mut m = d + 1;
    for _ in 0..k {
        let f = facets.swap_remove(rng.gen_range(0..facets.len()));
        m += 1;
        for &v in f.vertices() {
            facets.push(f.without(v).with(m));
        }
    }
    build_from_facets(m, facets.into_iter().map(|f| f.vertices().to_vec()).collect())
}

/// Six-vertex triangulation of the real projective plane.
pub fn rp2() -> SimplicialComplex {
    let facets = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [3, 4, 6],
        [2, 4, 5],
        [3, 5, 6],
        [2, 4, 6],
    ];
    build_from_facets(6, facets.iter().map(|f| f.to_vec()).collect()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_homology_sphere;

    #[test]
    fn octahedron_matches_explicit_list() {
        let explicit: Vec<Vec<usize>> = vec![
            vec![1, 2, 3],
            vec![1, 2, 6],
            vec![1, 5, 3],
            vec![1, 5, 6],
            vec![4, 2, 3],
            vec![4, 2, 6],
            vec![4, 5, 3],
            vec![4, 5, 6],
        ];
        let k = build_from_facets(6, explicit).unwrap();
        assert_eq!(k, octahedron());
        assert_eq!(k.faces_of_dim(1).unwrap().len(), 12);
        assert_eq!(k.fh_vectors().unwrap().h, vec![1, 3, 3, 1]);
    }

    #[test]
    fn cyclic_h_vectors() {
        // C(4,7) as the boundary complex of a neighborly 4-polytope: f = (7, 21, 28, 14)
        let k = cyclic_polytope_boundary(4, 7).unwrap();
        let fh = k.fh_vectors().unwrap();
        assert_eq!(fh.f, vec![7, 21, 28, 14]);
        assert_eq!(fh.h, vec![1, 3, 6, 3, 1]);
        assert_eq!(cyclic_polytope_boundary(3, 6).unwrap().fh_vectors().unwrap().h, vec![1, 3, 3, 1]);
        assert!(cyclic_polytope_boundary(4, 5).is_err());
    }

    #[test]
    fn generated_spheres() {
        for k in [
            boundary_simplex(4).unwrap(),
            cross_polytope(4).unwrap(),
            cyclic_polytope_boundary(4, 8).unwrap(),
            stacked_sphere(3, 4, 9).unwrap(),
        ] {
            assert!(is_homology_sphere(&k, 2).unwrap());
        }
        let s = stacked_sphere(3, 4, 9).unwrap();
        assert_eq!(s.m(), 8);
        assert_eq!(s, stacked_sphere(3, 4, 9).unwrap());
    }
}
