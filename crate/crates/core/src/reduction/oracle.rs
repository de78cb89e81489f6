//! Ψ by brute-force linear algebra: the top-degree graded piece of the face
//! ring modulo the l.s.o.p. is solved directly, with no use of Lee's formula.

use std::collections::HashMap;

use super::element::VMono;
use super::psi::Geometry;
use super::admissible_monomials;
use crate::algebra::linalg::{det_columns, kernel};
use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::lsop::LsopMatrix;

/// Largest vertex count the oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 10;

/// Values of Ψ on every admissible monomial of top degree.
#[derive(Clone, Debug)]
pub struct OracleTable<E> {
    pub values: HashMap<VMono, E>,
    /// Dimension of the solution space before normalization.
    pub kernel_dim: usize,
}

impl<E: Field> OracleTable<E> {
    pub fn get(&self, m: &VMono) -> Option<&E> {
        self.values.get(m)
    }
}

/// Solves `Σ_j λ_ij ψ(μ x_j) = 0` for all rows `i` and admissible `μ` of
/// degree `d - 1`, then normalizes by the first facet.
pub fn oracle_psi<E: Field>(geom: &Geometry, lsop: &LsopMatrix<E>) -> Result<OracleTable<E>> {
    let k = geom.complex();
    lsop.check_dims(k)?;
    if k.m() > ORACLE_MAX_VERTICES {
        return Err(Error::CostGuard(ORACLE_MAX_VERTICES));
    }
    let d = geom.d();
    let unknowns = admissible_monomials(geom, d);
    let index: HashMap<&VMono, usize> = unknowns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for mu in admissible_monomials(geom, d - 1) {
        for i in 1..=d {
            let mut row = vec![E::zero(); unknowns.len()];
            let mut any = false;
            for j in 1..=k.m() {
                let c = lsop.entry(i, j);
                if c.is_zero() {
                    continue;
                }
                if let Some(&u) = index.get(&mu.mul(&VMono::var(j))) {
                    row[u] = row[u].add(c);
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    let ker = kernel(&rows, unknowns.len());
    if ker.len() != 1 {
        return Err(Error::NotLsop);
    }
    let f0 = &k.facets()[0];
    let det = det_columns(&f0.vertices().iter().map(|&j| lsop.column(j)).collect::<Vec<_>>());
    let target = E::from_i64(geom.oriented.signs[0] as i64).div(&det).ok_or(Error::NotLsop)?;
    let v = &ker[0];
    let at = v[index[&VMono::face(f0)]].clone();
    let scale = target.div(&at).ok_or(Error::NotLsop)?;
    let values = unknowns.iter().cloned().zip(v.iter().map(|x| x.mul(&scale))).collect();
    Ok(OracleTable { values, kernel_dim: ker.len() })
}
