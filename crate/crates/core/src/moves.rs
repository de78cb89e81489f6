//! Bistellar moves: detection, application, random walks and reduction to
//! the boundary of a simplex.
//!
//! A move `(σ, τ)` on a complex with facet size `d` requires `lk σ = ∂τ` and
//! `τ ∉ K`, with `|σ| + |τ| = d + 1`. Moves on a facet introduce the fresh vertex
//! `m + 1`. Moves that delete a vertex `v` compact the labels: vertices above `v`
//! shift down by one, so the result again lives on `[m - 1]`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{build_from_facets, Face, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BistellarMove {
    pub sigma: Face,
    pub tau: Face,
}

impl BistellarMove {
    pub fn new(sigma: impl Into<Face>, tau: impl Into<Face>) -> Self {
        BistellarMove { sigma: sigma.into(), tau: tau.into() }
    }

    /// Move index `i = |τ| - 1`.
    pub fn index(&self) -> usize {
        self.tau.len() - 1
    }

    /// Change in the total number of faces (including ∅).
    pub fn energy_delta(&self) -> i64 {
        (1i64 << self.sigma.len()) - (1i64 << self.tau.len())
    }

    /// The move undoing `self`, expressed in the labels of the result.
    pub fn inverse(&self, before: &SimplicialComplex) -> BistellarMove {
        match removed_vertex(self) {
            Some(v) => {
                let shift = |w: usize| if w > v { w - 1 } else { w };
                BistellarMove { sigma: self.tau.map(shift), tau: Face::from([before.m()]) }
            }
            None => BistellarMove { sigma: self.tau.clone(), tau: self.sigma.clone() },
        }
    }
}

fn removed_vertex(mv: &BistellarMove) -> Option<usize> {
    (mv.sigma.len() == 1).then(|| mv.sigma.vertices()[0])
}

fn check_move(k: &SimplicialComplex, mv: &BistellarMove) -> bool {
    let d = k.d();
    if mv.sigma.is_empty() || mv.tau.is_empty() || mv.sigma.len() + mv.tau.len() != d + 1 {
        return false;
    }
    if !k.contains(&mv.sigma) || k.contains(&mv.tau) || !mv.sigma.is_disjoint(&mv.tau) {
        return false;
    }
    if mv.tau.len() == 1 && mv.tau.vertices()[0] > k.m() {
        return mv.tau.vertices()[0] == k.m() + 1 && mv.sigma.len() == d;
    }
    let link: Vec<Face> = k.facets_containing(&mv.sigma).map(|f| f.minus(&mv.sigma)).collect();
    link.len() == mv.tau.len() && link.iter().all(|r| r.len() + 1 == mv.tau.len() && r.is_subset(&mv.tau))
}

pub fn valid_moves(k: &SimplicialComplex) -> Result<Vec<BistellarMove>> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let d = k.d();
    let mut out = Vec::new();
    for s in k.all_faces().into_iter().filter(|s| !s.is_empty()) {
        let tau = if s.len() == d {
            Face::from([k.m() + 1])
        } else {
            let link: Vec<Face> = k.facets_containing(&s).map(|f| f.minus(&s)).collect();
            let verts = link.iter().fold(Face::empty(), |acc, f| acc.union(f));
            if verts.len() != d + 1 - s.len() || link.len() != verts.len() {
                continue;
            }
            verts
        };
        let mv = BistellarMove { sigma: s, tau };
        if check_move(k, &mv) {
            out.push(mv);
        }
    }
    out.sort();
    Ok(out)
}

pub fn apply_move(k: &SimplicialComplex, mv: &BistellarMove) -> Result<SimplicialComplex> {
    if !k.is_pure() || !check_move(k, mv) {
        return Err(Error::InvalidMove);
    }
    let mut facets: Vec<Face> = k.facets().iter().filter(|f| !mv.sigma.is_subset(f)).cloned().collect();
    for &s in mv.sigma.vertices() {
        facets.push(mv.sigma.without(s).union(&mv.tau));
    }
    let mut m = k.m().max(mv.tau.max_vertex());
    if let Some(v) = removed_vertex(mv) {
        facets = facets.into_iter().map(|f| f.map(|w| if w > v { w - 1 } else { w })).collect();
        m -= 1;
    }
    build_from_facets(m, facets.into_iter().map(|f| f.vertices().to_vec()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveLog {
    #[serde(default = "one")]
    pub v: u32,
    pub start: String,
    pub moves: Vec<BistellarMove>,
    pub end: String,
}

fn one() -> u32 {
    1
}

impl MoveLog {
    pub fn replay(&self, k: &SimplicialComplex) -> Result<SimplicialComplex> {
        if k.canonical_hash() != self.start {
            return Err(Error::BadParams("log start hash does not match the complex".into()));
        }
        let mut cur = k.clone();
        for mv in &self.moves {
            cur = apply_move(&cur, mv)?;
        }
        if cur.canonical_hash() != self.end {
            return Err(Error::BadParams("replay does not reach the logged end hash".into()));
        }
        Ok(cur)
    }
}

/// Uniform random walk; 0-moves are skipped once the vertex count reaches `vertex_cap`.
pub fn random_walk(
    k: &SimplicialComplex,
    steps: usize,
    seed: u64,
    vertex_cap: Option<usize>,
) -> Result<(SimplicialComplex, MoveLog)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = k.canonical_hash();
    let mut cur = k.clone();
    let mut moves = Vec::with_capacity(steps);
    for _ in 0..steps {
        let cands: Vec<BistellarMove> = valid_moves(&cur)?
            .into_iter()
            .filter(|mv| vertex_cap.map_or(true, |cap| mv.tau.max_vertex() <= cap))
            .collect();
        let Some(mv) = cands.choose(&mut rng) else { break };
        cur = apply_move(&cur, mv)?;
        moves.push(mv.clone());
    }
    let end = cur.canonical_hash();
    Ok((cur, MoveLog { v: 1, start, moves, end }))
}

pub fn is_boundary_simplex(k: &SimplicialComplex) -> bool {
    k.is_pure() && k.m() == k.d() + 1 && k.facets().len() == k.d() + 1
}

pub const T_START: f64 = 2.0;
pub const T_END: f64 = 0.01;

/// Greedy descent on the total face count with simulated-annealing escapes.
/// Failure is inconclusive: reported as [`Error::BudgetExhausted`].
pub fn reduce_to_boundary_simplex(k: &SimplicialComplex, budget: usize, seed: u64) -> Result<MoveLog> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = k.canonical_hash();
    let mut cur = k.clone();
    let mut moves = Vec::new();
    for step in 0..budget {
        if is_boundary_simplex(&cur) {
            break;
        }
        let cands = valid_moves(&cur)?;
        let best = cands.iter().map(BistellarMove::energy_delta).min().ok_or(Error::BudgetExhausted)?;
        let mv = if best < 0 {
            let ties: Vec<&BistellarMove> = cands.iter().filter(|mv| mv.energy_delta() == best).collect();
            (*ties.choose(&mut rng).unwrap()).clone()
        } else {
            let frac = if budget > 1 { step as f64 / (budget - 1) as f64 } else { 0.0 };
            let t = T_START * (T_END / T_START).powf(frac);
            let mv = cands.choose(&mut rng).unwrap();
            let delta = mv.energy_delta() as f64;
            if delta > 0.0 && rng.gen::<f64>() >= (-delta / t).exp() {
                continue;
            }
            mv.clone()
        };
        cur = apply_move(&cur, &mv)?;
        moves.push(mv);
    }
    if !is_boundary_simplex(&cur) {
        return Err(Error::BudgetExhausted);
    }
    Ok(MoveLog { v: 1, start, moves, end: cur.canonical_hash() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_simplex, octahedron, stacked_sphere};

    #[test]
    fn simplex_boundary_has_only_zero_moves() {
        let k = boundary_simplex(3).unwrap();
        let mv = valid_moves(&k).unwrap();
        assert_eq!(mv.len(), 4);
        assert!(mv.iter().all(|m| m.index() == 0 && m.tau == Face::from([5])));
    }

    #[test]
    fn octahedron_moves() {
        let mv = valid_moves(&octahedron()).unwrap();
        assert_eq!(mv.iter().filter(|m| m.index() == 0).count(), 8);
        assert_eq!(mv.iter().filter(|m| m.index() == 1).count(), 12);
        assert_eq!(mv.iter().filter(|m| m.index() == 2).count(), 0);
    }

    #[test]
    fn zero_move_then_inverse() {
        let k = boundary_simplex(3).unwrap();
        let mv = BistellarMove::new([1, 2, 3], [5]);
        let k2 = apply_move(&k, &mv).unwrap();
        assert_eq!(k2.f_vector(), vec![5, 9, 6]);
        let inv = mv.inverse(&k);
        assert_eq!(inv, BistellarMove::new([5], [1, 2, 3]));
        assert!(valid_moves(&k2).unwrap().contains(&inv));
        assert_eq!(apply_move(&k2, &inv).unwrap(), k);
        assert_eq!(apply_move(&k, &BistellarMove::new([1, 2], [3, 4])), Err(Error::InvalidMove));
    }

    #[test]
    fn edge_flip_keeps_f_vector() {
        let k = octahedron();
        let mv = BistellarMove::new([1, 2], [3, 6]);
        let k2 = apply_move(&k, &mv).unwrap();
        assert_eq!(k2.f_vector(), k.f_vector());
        assert!(!k2.contains(&Face::from([1, 2])));
        assert!(k2.contains(&Face::from([3, 6])));
        assert_eq!(apply_move(&k2, &mv.inverse(&k)).unwrap(), k);
    }

    #[test]
    fn walks_are_deterministic() {
        let k = octahedron();
        let (a, la) = random_walk(&k, 10, 7, None).unwrap();
        let (b, lb) = random_walk(&k, 10, 7, None).unwrap();
        assert_eq!(la, lb);
        assert_eq!(la.replay(&k).unwrap(), a);
        assert_eq!(a, b);
        let (same, l0) = random_walk(&k, 0, 7, None).unwrap();
        assert_eq!(same, k);
        assert!(l0.moves.is_empty() && l0.start == l0.end);
    }

    #[test]
    fn reductions() {
        assert!(reduce_to_boundary_simplex(&boundary_simplex(3).unwrap(), 10, 0).unwrap().moves.is_empty());
        let s = stacked_sphere(3, 4, 1).unwrap();
        assert_eq!(s.m(), 8);
        let log = reduce_to_boundary_simplex(&s, 100, 0).unwrap();
        assert_eq!(log.moves.len(), 4);
        assert!(log.moves.iter().all(|m| m.sigma.len() == 1));
        let log = reduce_to_boundary_simplex(&octahedron(), 10_000, 0).unwrap();
        assert!(is_boundary_simplex(&log.replay(&octahedron()).unwrap()));
    }
}
