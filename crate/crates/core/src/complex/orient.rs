use std::collections::{HashMap, VecDeque};

use super::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// A complex with one sign per facet, relative to the facet's sorted vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedComplex {
    pub complex: SimplicialComplex,
    /// `signs[k]` belongs to `complex.facets()[k]`.
    pub signs: Vec<i8>,
}

impl OrientedComplex {
    pub fn sign_of(&self, f: &Face) -> Option<i8> {
        self.complex.facets().binary_search(f).ok().map(|k| self.signs[k])
    }

    /// Every interior ridge receives opposite induced orientations from its two facets.
    pub fn is_coherent(&self) -> bool {
        let mut seen: HashMap<Face, i8> = HashMap::new();
        for (f, &s) in self.complex.facets().iter().zip(&self.signs) {
            for (pos, &v) in f.vertices().iter().enumerate() {
                let induced = if pos % 2 == 0 { s } else { -s };
                match seen.insert(f.without(v), induced) {
                    Some(prev) if prev != -induced => return false,
                    _ => {}
                }
            }
        }
        true
    }
}

/// Coherent orientation by breadth-first propagation from the first facet.
pub fn orient(k: &SimplicialComplex) -> Result<OrientedComplex> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let facets = k.facets();
    let mut ridges: HashMap<Face, Vec<(usize, usize)>> = HashMap::new();
    for (idx, f) in facets.iter().enumerate() {
        for (pos, &v) in f.vertices().iter().enumerate() {
            ridges.entry(f.without(v)).or_default().push((idx, pos));
        }
    }
    if ridges.values().any(|r| r.len() > 2) {
        return Err(Error::NotPseudomanifold);
    }
    let mut signs = vec![0i8; facets.len()];
    signs[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let f = &facets[idx];
        for (pos, &v) in f.vertices().iter().enumerate() {
            let r = &ridges[&f.without(v)];
            let Some(&(other, opos)) = r.iter().find(|(o, _)| *o != idx) else { continue };
            // induced signs (-1)^pos s_F and (-1)^opos s_G must be opposite
            let parity = if (pos + opos) % 2 == 0 { 1 } else { -1 };
            let want = -signs[idx] * parity;
            if signs[other] == 0 {
                signs[other] = want;
                queue.push_back(other);
            } else if signs[other] != want {
                return Err(Error::NonOrientable);
            }
        }
    }
    if signs.iter().any(|&s| s == 0) {
        return Err(Error::DisconnectedDualGraph);
    }
    Ok(OrientedComplex { complex: k.clone(), signs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_simplex, build_from_facets, rp2};

    #[test]
    fn simplex_boundary_alternates() {
        let o = orient(&boundary_simplex(3).unwrap()).unwrap();
        // facets 123, 124, 134, 234: omitted vertex 4, 3, 2, 1
        assert_eq!(o.signs, vec![1, -1, 1, -1]);
        assert!(o.is_coherent());
    }

    #[test]
    fn projective_plane_is_not_orientable() {
        assert_eq!(orient(&rp2()), Err(Error::NonOrientable));
    }

    #[test]
    fn single_facet_and_disconnected() {
        let one = build_from_facets(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(orient(&one).unwrap().signs, vec![1]);
        let two = build_from_facets(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(orient(&two), Err(Error::DisconnectedDualGraph));
    }
}
