//! Reduced simplicial homology over `F_p` (or `Q` for `p = 0`) via dense
//! boundary-matrix ranks.

use std::collections::HashMap;

use super::{Face, SimplicialComplex};
use crate::algebra::field::{Rational, Ring};
use crate::algebra::linalg;
use crate::error::{Error, Result};

fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let inv = |a: u64| {
        let (mut r, mut b, mut e) = (1u64, a, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let iv = inv(m[rank][c]);
        for k in c..cols {
            m[rank][k] = m[rank][k] * iv % p;
        }
        for i in rank + 1..rows {
            let f = m[i][c];
            if f != 0 {
                for k in c..cols {
                    m[i][k] = (m[i][k] + (p - f) * m[rank][k]) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank of the boundary map from `i`-faces to `(i-1)`-faces.
fn boundary_rank(k: &SimplicialComplex, i: i64, p: u64) -> usize {
    if i < 0 || i > k.dim() {
        return 0;
    }
    let lower = k.faces_of_dim(i - 1).unwrap();
    let upper = k.faces_of_dim(i).unwrap();
    let index: HashMap<&Face, usize> = lower.iter().enumerate().map(|(j, f)| (f, j)).collect();
    let entries = |f: &Face| -> Vec<(usize, i64)> {
        f.vertices()
            .iter()
            .enumerate()
            .map(|(pos, &v)| (index[&f.without(v)], if pos % 2 == 0 { 1 } else { -1 }))
            .collect()
    };
    if p == 0 {
        let mut m = vec![vec![Rational::zero(); lower.len()]; upper.len()];
        for (r, f) in upper.iter().enumerate() {
            for (c, s) in entries(f) {
                m[r][c] = Rational::from_i64(s);
            }
        }
        linalg::rank(&m)
    } else {
        let mut m = vec![vec![0u64; lower.len()]; upper.len()];
        for (r, f) in upper.iter().enumerate() {
            for (c, s) in entries(f) {
                m[r][c] = if s > 0 { 1 % p } else { p - 1 };
            }
        }
        rank_mod_p(m, p)
    }
}

/// Reduced Betti numbers `b~_{-1}, ..., b~_{dim}`.
pub fn reduced_betti(k: &SimplicialComplex, p: u64) -> Vec<usize> {
    let ranks: Vec<usize> = (-1..=k.dim() + 1).map(|i| boundary_rank(k, i, p)).collect();
    (-1..=k.dim())
        .map(|i| {
            let n = k.faces_of_dim(i).unwrap().len();
            let j = (i + 1) as usize;
            n - ranks[j] - ranks[j + 1]
        })
        .collect()
}

/// Reduced Betti numbers in dimensions `0..=dim`.
pub fn homology_ranks(k: &SimplicialComplex, p: u64) -> Vec<usize> {
    reduced_betti(k, p)[1..].to_vec()
}

fn is_sphere_homology(betti: &[usize], dim: i64) -> bool {
    // betti[0] is dimension -1
    betti.iter().enumerate().all(|(j, &b)| b == usize::from(j as i64 - 1 == dim))
}

pub fn is_homology_sphere(k: &SimplicialComplex, p: u64) -> Result<bool> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let d = k.d() as i64;
    for s in k.all_faces() {
        let l = k.link(&s)?;
        let betti = reduced_betti(&l.complex, p);
        let want = d - 1 - s.len() as i64;
        if l.complex.dim() != want || !is_sphere_homology(&betti, want) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_homology_ball(k: &SimplicialComplex, p: u64) -> Result<bool> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    if reduced_betti(k, p).iter().any(|&b| b != 0) {
        return Ok(false);
    }
    let d = k.d() as i64;
    for s in k.all_faces().into_iter().filter(|s| !s.is_empty()) {
        let l = k.link(&s)?;
        let want = d - 1 - s.len() as i64;
        let betti = reduced_betti(&l.complex, p);
        let acyclic = betti.iter().all(|&b| b == 0);
        if l.complex.dim() != want || !(acyclic || is_sphere_homology(&betti, want)) {
            return Ok(false);
        }
    }
    let Ok(b) = k.boundary_complex() else { return Ok(false) };
    is_homology_sphere(&b.complex, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_simplex, build_from_facets, octahedron, rp2};

    #[test]
    fn sphere_and_simplex() {
        let s = boundary_simplex(3).unwrap();
        assert_eq!(homology_ranks(&s, 2), vec![0, 0, 1]);
        assert_eq!(homology_ranks(&s, 0), vec![0, 0, 1]);
        let full = build_from_facets(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(homology_ranks(&full, 2), vec![0, 0, 0]);
        assert!(is_homology_sphere(&octahedron(), 2).unwrap());
        assert!(!is_homology_sphere(&full, 2).unwrap());
        assert!(is_homology_ball(&full, 2).unwrap());
    }

    #[test]
    fn projective_plane() {
        let k = rp2();
        assert_eq!(homology_ranks(&k, 2), vec![0, 1, 1]);
        assert_eq!(homology_ranks(&k, 3), vec![0, 0, 0]);
        assert_eq!(homology_ranks(&k, 0), vec![0, 0, 0]);
        assert!(!is_homology_sphere(&k, 2).unwrap());
    }

    #[test]
    fn cone_is_ball() {
        let c = octahedron().cone();
        assert!(is_homology_ball(&c, 2).unwrap());
        assert!(!is_homology_sphere(&c, 2).unwrap());
        assert!(!is_homology_ball(&octahedron(), 2).unwrap());
    }
}
