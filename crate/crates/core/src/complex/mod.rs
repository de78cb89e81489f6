//! Simplicial complexes on the vertex set `[m]`: construction, faces,
//! f/h-vectors, links, stars, joins, homology and orientation.

mod face;
mod generate;
mod homology;
mod orient;

pub use face::Face;
pub use generate::{
    boundary_simplex, cross_polytope, cyclic_polytope_boundary, octahedron, rp2, stacked_sphere, Generator,
};
pub use homology::{homology_ranks, is_homology_ball, is_homology_sphere, reduced_betti};
pub use orient::{orient, OrientedComplex};

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<Face>,
    dim: i64,
    pure: bool,
    faces: HashSet<Face>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FHVectors {
    /// `f_0, ..., f_{d-1}`.
    pub f: Vec<u64>,
    /// `h_0, ..., h_d`.
    pub h: Vec<i64>,
}

/// A complex on fresh labels `1..=k` together with the injection back into
/// the labels of the parent complex: new vertex `j` is `vertex_map[j - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeled {
    pub complex: SimplicialComplex,
    pub vertex_map: Vec<usize>,
}

impl Relabeled {
    pub fn to_parent(&self, v: usize) -> usize {
        self.vertex_map[v - 1]
    }

    pub fn from_parent(&self, v: usize) -> Option<usize> {
        self.vertex_map.iter().position(|&w| w == v).map(|j| j + 1)
    }

    pub fn face_to_parent(&self, f: &Face) -> Face {
        f.map(|v| self.to_parent(v))
    }
}

pub fn build_from_facets(m: usize, facets: Vec<Vec<usize>>) -> Result<SimplicialComplex> {
    if facets.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut fs: Vec<Face> = Vec::with_capacity(facets.len());
    for f in facets {
        if let Some(&v) = f.iter().find(|&&v| v == 0 || v > m) {
            return Err(Error::VertexOutOfRange(v, m));
        }
        fs.push(Face::new(f));
    }
    SimplicialComplex::from_faces(m, fs)
}

impl SimplicialComplex {
    fn from_faces(m: usize, mut fs: Vec<Face>) -> Result<Self> {
        fs.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        fs.dedup();
        let mut faces: HashSet<Face> = HashSet::new();
        let mut facets = Vec::new();
        for f in fs {
            if faces.contains(&f) {
                continue;
            }
            for k in 0..=f.len() {
                for s in f.subsets(k) {
                    faces.insert(s);
                }
            }
            facets.push(f);
        }
        facets.sort();
        let used: BTreeSet<usize> = facets.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        if let Some(v) = (1..=m).find(|v| !used.contains(v)) {
            return Err(Error::BadParams(format!("vertex {v} lies in no facet")));
        }
        let dim = facets.iter().map(|f| f.dim()).max().unwrap();
        let pure = facets.iter().all(|f| f.dim() == dim);
        Ok(SimplicialComplex { m, facets, dim, pure, faces })
    }

    /// The complex `{∅}` with no vertices.
    pub fn void_sphere() -> Self {
        Self::from_faces(0, vec![Face::empty()]).unwrap()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    /// Facet size `d = dim + 1`.
    pub fn d(&self) -> usize {
        (self.dim + 1) as usize
    }

    pub fn is_pure(&self) -> bool {
        self.pure
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.faces.contains(f)
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn faces_of_dim(&self, i: i64) -> Result<Vec<Face>> {
        if i < -1 || i > self.dim {
            return Err(Error::DimensionOutOfRange(i));
        }
        let mut out: Vec<Face> = self.faces.iter().filter(|f| f.dim() == i).cloned().collect();
        out.sort();
        Ok(out)
    }

    pub fn all_faces(&self) -> Vec<Face> {
        let mut out: Vec<Face> = self.faces.iter().cloned().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; (self.dim + 1).max(0) as usize];
        for face in &self.faces {
            if !face.is_empty() {
                f[face.len() - 1] += 1;
            }
        }
        f
    }

    pub fn fh_vectors(&self) -> Result<FHVectors> {
        if !self.pure {
            return Err(Error::NotPure);
        }
        let f = self.f_vector();
        let d = f.len();
        // h_k = sum_i (-1)^(k-i) C(d-i, k-i) f_{i-1}, with f_{-1} = 1
        let fm = |i: usize| if i == 0 { 1i64 } else { f[i - 1] as i64 };
        let h = (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let s = if (k - i) % 2 == 0 { 1 } else { -1 };
                        s * binom(d - i, k - i) * fm(i)
                    })
                    .sum()
            })
            .collect();
        Ok(FHVectors { f, h })
    }

    pub fn facets_containing<'a>(&'a self, s: &'a Face) -> impl Iterator<Item = &'a Face> + 'a {
        self.facets.iter().filter(move |f| s.is_subset(f))
    }

    /// Re-indexes a family of faces onto `1..=k`.
    fn relabel_faces(faces: Vec<Face>) -> Relabeled {
        let verts: Vec<usize> =
            faces.iter().flat_map(|f| f.vertices().iter().copied()).collect::<BTreeSet<_>>().into_iter().collect();
        let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(j, &v)| (v, j + 1)).collect();
        let fs = faces.iter().map(|f| f.map(|v| pos[&v])).collect();
        Relabeled { complex: Self::from_faces(verts.len(), fs).unwrap(), vertex_map: verts }
    }

    pub fn link(&self, s: &Face) -> Result<Relabeled> {
        if !self.contains(s) {
            return Err(Error::FaceNotInComplex(s.clone()));
        }
        Ok(Self::relabel_faces(self.facets_containing(s).map(|f| f.minus(s)).collect()))
    }

    pub fn star(&self, s: &Face) -> Result<Relabeled> {
        if !self.contains(s) {
            return Err(Error::FaceNotInComplex(s.clone()));
        }
        Ok(Self::relabel_faces(self.facets_containing(s).cloned().collect()))
    }

    /// Ridges lying in exactly one facet.
    pub fn boundary_ridges(&self) -> Vec<Face> {
        let mut count: HashMap<Face, usize> = HashMap::new();
        for f in &self.facets {
            for &v in f.vertices() {
                *count.entry(f.without(v)).or_default() += 1;
            }
        }
        let mut out: Vec<Face> = count.into_iter().filter(|(_, c)| *c == 1).map(|(f, _)| f).collect();
        out.sort();
        out
    }

    pub fn boundary_complex(&self) -> Result<Relabeled> {
        if !self.pure {
            return Err(Error::NotPure);
        }
        let ridges = self.boundary_ridges();
        if ridges.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Self::relabel_faces(ridges))
    }

    /// Applies a vertex permutation `v -> perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let fs = self.facets.iter().map(|f| f.vertices().iter().map(|&v| perm[v - 1]).collect()).collect();
        build_from_facets(self.m, fs)
    }

    /// Join with `other`, whose vertices are shifted by `self.m()`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut fs = Vec::new();
        for a in &self.facets {
            for b in &other.facets {
                fs.push(a.union(&b.map(|v| v + self.m)));
            }
        }
        Self::from_faces(self.m + other.m, fs).unwrap()
    }

    /// Join of two complexes given on a common label set; the vertex sets must be disjoint.
    pub fn join_disjoint(&self, other: &SimplicialComplex, other_labels: &[usize]) -> Result<SimplicialComplex> {
        if other_labels.len() != other.m || other_labels.iter().any(|&v| v <= self.m && v >= 1) {
            return Err(Error::VertexClash);
        }
        let m = other_labels.iter().copied().max().unwrap_or(0).max(self.m);
        let mut fs = Vec::new();
        for a in &self.facets {
            for b in &other.facets {
                fs.push(a.union(&b.map(|v| other_labels[v - 1])));
            }
        }
        Self::from_faces(m, fs)
    }

    /// Cone with apex `m + 1`.
    pub fn cone(&self) -> SimplicialComplex {
        let apex = self.m + 1;
        Self::from_faces(apex, self.facets.iter().map(|f| f.with(apex)).collect()).unwrap()
    }

    /// Suspension with new vertices `m + 1` and `m + 2`.
    pub fn suspension(&self) -> SimplicialComplex {
        let (v, w) = (self.m + 1, self.m + 2);
        let fs = self.facets.iter().flat_map(|f| [f.with(v), f.with(w)]).collect();
        Self::from_faces(self.m + 2, fs).unwrap()
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson { v: 1, m: self.m, facets: self.facets.iter().map(|f| f.vertices().to_vec()).collect() }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        build_from_facets(j.m, j.facets.clone())
    }

    /// SHA-256 (hex) of the compact JSON form of the sorted facet list.
    pub fn canonical_hash(&self) -> String {
        let list: Vec<&[usize]> = self.facets.iter().map(|f| f.vertices()).collect();
        let bytes = serde_json::to_vec(&list).expect("facet list serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    #[serde(default = "one")]
    pub v: u32,
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
}

fn one() -> u32 {
    1
}

pub(crate) fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fvec(v: &[&[usize]]) -> Vec<Vec<usize>> {
        v.iter().map(|f| f.to_vec()).collect()
    }

    #[test]
    fn maximality_drops_contained_faces() {
        let k = build_from_facets(3, fvec(&[&[1, 2], &[2, 3], &[1, 3], &[1]])).unwrap();
        assert_eq!(k.facets().len(), 3);
        assert!(k.is_pure());
        assert_eq!(build_from_facets(3, vec![]), Err(Error::EmptyInput));
        assert_eq!(build_from_facets(3, fvec(&[&[1, 4]])).unwrap_err(), Error::VertexOutOfRange(4, 3));
    }

    #[test]
    fn simplex_boundary_faces() {
        let k = boundary_simplex(3).unwrap();
        assert_eq!(k.faces_of_dim(1).unwrap().len(), 6);
        assert_eq!(k.faces_of_dim(-1).unwrap(), vec![Face::empty()]);
        assert!(k.faces_of_dim(3).is_err());
        let fh = k.fh_vectors().unwrap();
        assert_eq!(fh.f, vec![4, 6, 4]);
        assert_eq!(fh.h, vec![1, 1, 1, 1]);
    }

    #[test]
    fn point_is_degenerate_cone() {
        let k = build_from_facets(1, fvec(&[&[1]])).unwrap();
        let fh = k.fh_vectors().unwrap();
        assert_eq!(fh.f, vec![1]);
        assert_eq!(fh.h, vec![1, 0]);
    }

    #[test]
    fn links_and_stars() {
        let k = boundary_simplex(3).unwrap();
        let l = k.link(&Face::from([1])).unwrap();
        assert_eq!(l.vertex_map, vec![2, 3, 4]);
        assert_eq!(l.complex, boundary_simplex(2).unwrap());
        let l0 = k.link(&Face::empty()).unwrap();
        assert_eq!(l0.complex, k);
        assert_eq!(k.star(&Face::empty()).unwrap().complex, k);
        assert!(matches!(k.link(&Face::from([1, 2, 3, 4])), Err(Error::FaceNotInComplex(_))));
        let lf = k.link(&Face::from([1, 2, 3])).unwrap();
        assert_eq!(lf.complex, SimplicialComplex::void_sphere());
    }

    #[test]
    fn joins() {
        let two_points = boundary_simplex(1).unwrap();
        let c4 = two_points.join(&two_points);
        assert_eq!(c4.facets().len(), 4);
        assert_eq!(c4.fh_vectors().unwrap().h, vec![1, 2, 1]);
        let unit = SimplicialComplex::void_sphere();
        assert_eq!(c4.join(&unit), c4);
        assert_eq!(
            c4.suspension().canonical_hash(),
            octahedron().relabel(&[1, 3, 5, 2, 4, 6]).unwrap().canonical_hash()
        );
        assert_eq!(c4.join_disjoint(&two_points, &[1, 7]), Err(Error::VertexClash));
    }

    #[test]
    fn cone_boundary() {
        let s = boundary_simplex(2).unwrap();
        let b = s.cone().boundary_complex().unwrap();
        assert_eq!(b.complex, s);
        assert_eq!(b.vertex_map, vec![1, 2, 3]);
    }

    #[test]
    fn json_roundtrip_and_hash() {
        let k = octahedron();
        let j = serde_json::to_string(&k.to_json()).unwrap();
        let back = SimplicialComplex::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, k);
        assert_eq!(back.canonical_hash(), k.canonical_hash());
        assert_eq!(k.canonical_hash().len(), 64);
    }
}
