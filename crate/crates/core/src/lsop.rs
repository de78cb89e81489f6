//! Linear systems of parameters as `d × m` matrices `M_Θ`, structured
//! variants, validity checks and determinant minors.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::det_columns;
use crate::algebra::text::{parse_poly, poly_to_text};
use crate::algebra::{Embed, MultiPoly, Ring, Scalar, VarId, VarIdx};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum LsopKind {
    Generic,
    Normalized { pin: Face },
    Theorem41 { q: usize, n: usize },
    ConeTheorem53,
    ConeSuspension,
    Custom,
}

/// `d × m` matrix stored by columns; column `j` is `λ_j` (1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct LsopMatrix<R> {
    pub d: usize,
    pub m: usize,
    cols: Vec<Vec<R>>,
    pub kind: LsopKind,
}

impl<R: Ring> LsopMatrix<R> {
    pub fn from_columns(cols: Vec<Vec<R>>, kind: LsopKind) -> Result<Self> {
        let d = cols.first().map_or(0, |c| c.len());
        if d == 0 || cols.iter().any(|c| c.len() != d) {
            return Err(Error::DimensionMismatch);
        }
        Ok(LsopMatrix { d, m: cols.len(), cols, kind })
    }

    pub fn column(&self, j: usize) -> &[R] {
        &self.cols[j - 1]
    }

    pub fn columns(&self) -> &[Vec<R>] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &R {
        &self.cols[j - 1][i - 1]
    }

    /// Replaces column `j`.
    pub fn with_column(&self, j: usize, col: Vec<R>) -> Result<Self> {
        if col.len() != self.d || j == 0 || j > self.m {
            return Err(Error::DimensionMismatch);
        }
        let mut out = self.clone();
        out.cols[j - 1] = col;
        out.kind = LsopKind::Custom;
        Ok(out)
    }

    /// Rows `rows` and columns `cols` (all 1-based), in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let c = cols.iter().map(|&j| rows.iter().map(|&i| self.entry(i, j).clone()).collect()).collect();
        LsopMatrix { d: rows.len(), m: cols.len(), cols: c, kind: LsopKind::Custom }
    }

    /// `A_I = det M(I)` for an ordered column list.
    pub fn minor(&self, cols: &[usize]) -> Result<R> {
        self.minor_replaced(cols, None)
    }

    /// Determinant of the columns `cols` where column `i` (if given) is replaced by `a`.
    pub fn minor_replaced(&self, cols: &[usize], repl: Option<(usize, &[R])>) -> Result<R> {
        if cols.len() != self.d {
            return Err(Error::BadIndex(format!("minor needs {} columns, got {}", self.d, cols.len())));
        }
        if let Some(&j) = cols.iter().find(|&&j| j == 0 || j > self.m) {
            return Err(Error::BadIndex(format!("column {j} out of range")));
        }
        let mut cs: Vec<&[R]> = cols.iter().map(|&j| self.column(j)).collect();
        if let Some((i, a)) = repl {
            let pos = cols.iter().position(|&j| j == i).ok_or_else(|| Error::BadIndex(format!("{i} not in I")))?;
            if a.len() != self.d {
                return Err(Error::DimensionMismatch);
            }
            cs[pos] = a;
        }
        Ok(det_columns(&cs))
    }

    /// Determinant for a sorted key where index `m + 1` denotes the vector `a`.
    pub(crate) fn key_minor(&self, key: &[usize], a: &[R]) -> R {
        let cs: Vec<&[R]> = key.iter().map(|&j| if j == self.m + 1 { a } else { self.column(j) }).collect();
        det_columns(&cs)
    }

    pub fn check_dims(&self, k: &SimplicialComplex) -> Result<()> {
        if self.d != k.d() || self.m != k.m() {
            return Err(Error::DimensionMismatch);
        }
        Ok(())
    }
}

impl<F: Scalar> LsopMatrix<MultiPoly<F>> {
    pub fn vars(&self) -> BTreeSet<VarIdx> {
        self.cols.iter().flatten().flat_map(|p| p.vars()).collect()
    }

    pub fn specialize<E: Scalar + Embed<F>>(&self, point: &HashMap<VarIdx, E>) -> Result<LsopMatrix<E>> {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter().map(|p| p.eval(&|v| point.get(&v).cloned()).ok_or(Error::UnassignedVariable)).collect()
            })
            .collect::<Result<Vec<Vec<E>>>>()?;
        Ok(LsopMatrix { d: self.d, m: self.m, cols, kind: self.kind.clone() })
    }

    /// Uniform random point on the matrix variables.
    pub fn random_point<E: Scalar, G: Rng + ?Sized>(&self, rng: &mut G) -> HashMap<VarIdx, E> {
        self.vars().into_iter().map(|v| (v, E::random(rng))).collect()
    }

    pub fn to_json(&self) -> LsopJson {
        let entries = (1..=self.d).map(|i| (1..=self.m).map(|j| poly_to_text(self.entry(i, j))).collect()).collect();
        LsopJson { v: 1, kind: self.kind.clone(), d: self.d, m: self.m, entries }
    }

    pub fn from_json(j: &LsopJson) -> Result<Self> {
        if j.entries.len() != j.d || j.entries.iter().any(|r| r.len() != j.m) {
            return Err(Error::DimensionMismatch);
        }
        let cols = (0..j.m)
            .map(|c| (0..j.d).map(|r| parse_poly::<F>(&j.entries[r][c])).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut out = Self::from_columns(cols, j.kind.clone())?;
        out.kind = j.kind.clone();
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LsopJson {
    #[serde(default = "one")]
    pub v: u32,
    pub kind: LsopKind,
    pub d: usize,
    pub m: usize,
    /// Row-major entries in the polynomial text format.
    pub entries: Vec<Vec<String>>,
}

fn one() -> u32 {
    1
}

fn a_var<F: Scalar>(i: usize, j: usize) -> MultiPoly<F> {
    MultiPoly::var(VarId::A(i as u16, j as u16))
}

fn b_var<F: Scalar>(i: usize) -> MultiPoly<F> {
    MultiPoly::var(VarId::B(i as u16))
}

fn unit<F: Scalar>(d: usize, k: usize) -> Vec<MultiPoly<F>> {
    (1..=d).map(|i| if i == k { MultiPoly::one() } else { MultiPoly::zero() }).collect()
}

fn generic_column<F: Scalar>(d: usize, j: usize) -> Vec<MultiPoly<F>> {
    (1..=d).map(|i| a_var(i, j)).collect()
}

/// `θ_i = Σ_j a_ij x_j` with `d·m` independent variables.
pub fn generic_lsop<F: Scalar>(k: &SimplicialComplex) -> LsopMatrix<MultiPoly<F>> {
    let d = k.d();
    let cols = (1..=k.m()).map(|j| generic_column(d, j)).collect();
    LsopMatrix { d, m: k.m(), cols, kind: LsopKind::Generic }
}

/// `(I_d | A)` with the identity block on the pinned facet (default: the lex-least facet).
pub fn normalized_lsop<F: Scalar>(k: &SimplicialComplex, pin: Option<&Face>) -> Result<LsopMatrix<MultiPoly<F>>> {
    let pin = match pin {
        Some(p) if k.facets().binary_search(p).is_ok() && p.len() == k.d() => p.clone(),
        Some(_) => return Err(Error::NoPinningFacet),
        None => k.facets().first().cloned().ok_or(Error::NoPinningFacet)?,
    };
    let d = k.d();
    let cols = (1..=k.m())
        .map(|j| match pin.position(j) {
            Some(p) => unit(d, p + 1),
            None => generic_column(d, j),
        })
        .collect();
    Ok(LsopMatrix { d, m: k.m(), cols, kind: LsopKind::Normalized { pin } })
}

/// The structured matrix `Θ₁` for a `q`-move on a `(2n-1)`-sphere labeled with
/// `τ = [q+1]` and `σ = [2n+1] ∖ [q+1]`, checked on the complex after the move.
pub fn theorem41_lsop<F: Scalar>(k: &SimplicialComplex, q: usize, n: usize) -> Result<LsopMatrix<MultiPoly<F>>> {
    if n == 0 || q == 0 || q >= n {
        return Err(Error::BadParams(format!("need 0 < q < n, got q={q}, n={n}")));
    }
    let d = 2 * n;
    if k.d() != d || k.m() < d + 1 {
        return Err(Error::DimensionMismatch);
    }
    let tau = Face::new((1..=q + 1).collect());
    let sigma = Face::new((q + 2..=2 * n + 1).collect());
    if !k.contains(&tau) || k.contains(&sigma) {
        return Err(Error::BadLabeling(format!("expected τ={tau} in the complex and σ={sigma} not")));
    }
    let link: Vec<Face> = k.facets_containing(&tau).map(|f| f.minus(&tau)).collect();
    if link.len() != sigma.len() || !link.iter().all(|r| r.len() + 1 == sigma.len() && r.is_subset(&sigma)) {
        return Err(Error::BadLabeling(format!("link of {tau} is not the boundary of {sigma}")));
    }
    let off = 2 * n - q - 1;
    let cols = (1..=k.m())
        .map(|j| {
            if j >= 2 * n + 2 {
                generic_column(d, j)
            } else if j == 2 * n + 1 {
                (1..=d).map(|i| if i <= off { b_var(i) } else { MultiPoly::zero() }).collect()
            } else {
                (1..=d)
                    .map(|i| {
                        if i == j {
                            MultiPoly::one()
                        } else if i >= j && i - j == off {
                            b_var(i)
                        } else {
                            MultiPoly::zero()
                        }
                    })
                    .collect()
            }
        })
        .collect();
    Ok(LsopMatrix { d, m: k.m(), cols, kind: LsopKind::Theorem41 { q, n } })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeVariant {
    /// `{v} * Δ` with apex `m`, `λ_v = e_1`.
    Theorem53,
    /// Suspension with apexes `m - 1`, `m`: `(λ_v, λ_v') = (e_1, e_2)`.
    Suspension,
}

pub fn cone_lsop<F: Scalar>(k: &SimplicialComplex, variant: ConeVariant) -> Result<LsopMatrix<MultiPoly<F>>> {
    let (m, d) = (k.m(), k.d());
    match variant {
        ConeVariant::Theorem53 => {
            if d < 1 || !k.facets().iter().all(|f| f.contains(m)) {
                return Err(Error::NotACone);
            }
            let cols = (1..=m).map(|j| if j == m { unit(d, 1) } else { generic_column(d, j) }).collect();
            Ok(LsopMatrix { d, m, cols, kind: LsopKind::ConeTheorem53 })
        }
        ConeVariant::Suspension => {
            if d < 2 || m < 3 {
                return Err(Error::NotACone);
            }
            let (v, w) = (m - 1, m);
            let ok = k.facets().iter().all(|f| f.contains(v) != f.contains(w));
            let lv: BTreeSet<Face> = k.facets_containing(&Face::from([v])).map(|f| f.without(v)).collect();
            let lw: BTreeSet<Face> = k.facets_containing(&Face::from([w])).map(|f| f.without(w)).collect();
            if !ok || lv != lw {
                return Err(Error::NotACone);
            }
            let cols = (1..=m)
                .map(|j| {
                    if j == v {
                        unit(d, 1)
                    } else if j == w {
                        unit(d, 2)
                    } else {
                        generic_column(d, j)
                    }
                })
                .collect();
            Ok(LsopMatrix { d, m, cols, kind: LsopKind::ConeSuspension })
        }
    }
}

/// Every facet minor is nonzero (exactly: as a polynomial or field element).
pub fn is_lsop<R: Ring>(k: &SimplicialComplex, mat: &LsopMatrix<R>) -> Result<bool> {
    mat.check_dims(k)?;
    for f in k.facets() {
        if mat.minor(f.vertices())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, F101, F2};
    use crate::complex::{boundary_simplex, build_from_facets, octahedron};

    type P = MultiPoly<Rational>;

    #[test]
    fn generic_and_normalized_shapes() {
        let k = boundary_simplex(3).unwrap();
        let g = generic_lsop::<Rational>(&k);
        assert_eq!((g.d, g.m, g.vars().len()), (3, 4, 12));
        assert!(is_lsop(&k, &g).unwrap());
        let n = normalized_lsop::<Rational>(&k, Some(&Face::from([1, 2, 3]))).unwrap();
        assert_eq!(n.vars().len(), 3);
        assert!(n.minor(&[1, 2, 3]).unwrap().is_one());
        let o = octahedron();
        let no = normalized_lsop::<F2>(&o, None).unwrap();
        assert_eq!(no.vars().len(), 9);
        assert_eq!(generic_lsop::<F2>(&o).vars().len(), 18);
        assert!(is_lsop(&o, &no).unwrap());
        assert_eq!(normalized_lsop::<F2>(&o, Some(&Face::from([1, 4, 2]))), Err(Error::NoPinningFacet));
    }

    #[test]
    fn minors_alternate_and_replace() {
        let k = boundary_simplex(3).unwrap();
        let g = generic_lsop::<Rational>(&k);
        let a = g.minor(&[1, 2, 3]).unwrap();
        assert_eq!(g.minor(&[2, 1, 3]).unwrap(), a.neg());
        let lam = g.column(2).to_vec();
        assert_eq!(g.minor_replaced(&[1, 2, 3], Some((2, &lam))).unwrap(), a);
        assert!(g.minor(&[1, 2]).is_err());
        assert!(g.minor_replaced(&[1, 2, 3], Some((4, &lam))).is_err());
    }

    #[test]
    fn zero_column_breaks_validity() {
        let k = boundary_simplex(3).unwrap();
        let g = generic_lsop::<Rational>(&k).with_column(4, vec![P::zero(); 3]).unwrap();
        assert!(!is_lsop(&k, &g).unwrap());
        let pts = boundary_simplex(1).unwrap();
        let m = LsopMatrix::from_columns(vec![vec![P::var(VarId::A(1, 1))], vec![P::zero()]], LsopKind::Custom).unwrap();
        assert!(!is_lsop(&pts, &m).unwrap());
        assert!(is_lsop(&pts, &generic_lsop::<Rational>(&pts)).unwrap());
    }

    #[test]
    fn theorem41_columns() {
        // stacked 3-sphere after the 1-move, labeled τ = {1,2}, σ = {3,4,5}
        let facets = vec![
            vec![1, 2, 3, 4],
            vec![1, 2, 3, 5],
            vec![1, 2, 4, 5],
            vec![1, 3, 4, 6],
            vec![1, 3, 5, 6],
            vec![1, 4, 5, 6],
            vec![2, 3, 4, 6],
            vec![2, 3, 5, 6],
            vec![2, 4, 5, 6],
        ];
        let k = build_from_facets(6, facets).unwrap();
        let t = theorem41_lsop::<F101>(&k, 1, 2).unwrap();
        let b = |i| MultiPoly::<F101>::var(VarId::B(i));
        assert_eq!(t.column(5), &[b(1), b(2), MultiPoly::zero(), MultiPoly::zero()]);
        assert_eq!(t.column(1), &[MultiPoly::one(), MultiPoly::zero(), b(3), MultiPoly::zero()]);
        assert!(t.minor(&[1, 2, 3, 4]).unwrap().is_one());
        assert!(is_lsop(&k, &t).unwrap());
        assert!(matches!(theorem41_lsop::<F101>(&octahedron(), 1, 2), Err(Error::DimensionMismatch)));
    }

    #[test]
    fn cone_variants() {
        let c = octahedron().cone();
        let l = cone_lsop::<Rational>(&c, ConeVariant::Theorem53).unwrap();
        assert_eq!((l.d, l.m), (4, 7));
        assert_eq!(l.column(7), &unit::<Rational>(4, 1)[..]);
        assert!(is_lsop(&c, &l).unwrap());
        let s = octahedron().suspension();
        let ls = cone_lsop::<Rational>(&s, ConeVariant::Suspension).unwrap();
        assert_eq!(ls.column(7), &unit::<Rational>(4, 1)[..]);
        assert_eq!(ls.column(8), &unit::<Rational>(4, 2)[..]);
        assert!(is_lsop(&s, &ls).unwrap());
        assert_eq!(cone_lsop::<Rational>(&octahedron(), ConeVariant::Theorem53), Err(Error::NotACone));
    }

    #[test]
    fn json_roundtrip() {
        let k = octahedron();
        let n = normalized_lsop::<F101>(&k, None).unwrap();
        let j = serde_json::to_string(&n.to_json()).unwrap();
        let back = LsopMatrix::<MultiPoly<F101>>::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, n);
    }
}
