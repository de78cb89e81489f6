//! The fixed corpus of spheres used by the acceptance run.

use crate::complex::{Generator, SimplicialComplex};
use crate::error::Result;

/// Vertex counts of the stacked spheres by facet size `2..=5`.
const STACKED_VERTICES: [usize; 4] = [10, 10, 9, 8];

pub fn stacked_generator(seed: u64) -> Generator {
    let d = 2 + (seed % 4) as usize;
    Generator::Stacked { d, k: STACKED_VERTICES[d - 2] - d - 1, seed }
}

pub fn generators() -> Vec<Generator> {
    let mut out: Vec<Generator> = (2..=6).map(|d| Generator::BoundarySimplex { d }).collect();
    out.extend((2..=4).map(|n| Generator::CrossPolytope { n }));
    out.extend((6..=8).map(|m| Generator::Cyclic { d: 4, m }));
    out.extend((0..10).map(stacked_generator));
    out
}

pub fn spheres() -> Result<Vec<(String, SimplicialComplex)>> {
    generators().into_iter().map(|g| Ok((g.name(), g.build()?))).collect()
}
