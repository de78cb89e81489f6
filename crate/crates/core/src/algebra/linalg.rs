//! Exact dense linear algebra: Gaussian elimination over fields,
//! fraction-free (Bareiss) elimination over exact-division rings, and
//! determinant expansion for small matrices over any commutative ring.

use super::field::{ExactDiv, Field, Ring, Scalar};
use super::poly::MultiPoly;
use super::ratfunc::RatFunc;

/// Row-major dense matrix.
pub type Matrix<T> = Vec<Vec<T>>;

/// Reduces `m` in place to row echelon form; returns pivot columns.
fn echelon<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for k in c..cols {
            m[r][k] = m[r][k].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    let t = f.mul(&m[r][k]);
                    m[i][k] = m[i][k].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut w = m.clone();
    echelon(&mut w).len()
}

pub fn det<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    let mut w = m.clone();
    let mut acc = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero()) else { return F::zero() };
        if p != c {
            w.swap(p, c);
            acc = acc.neg();
        }
        acc = acc.mul(&w[c][c]);
        let inv = w[c][c].inv().unwrap();
        for i in c + 1..n {
            if w[i][c].is_zero() {
                continue;
            }
            let f = w[i][c].mul(&inv);
            for k in c..n {
                let t = f.mul(&w[c][k]);
                w[i][k] = w[i][k].sub(&t);
            }
        }
    }
    acc
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut w = m.clone();
    let pivots = echelon(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); cols];
            x[f] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = w[r][f].neg();
            }
            x
        })
        .collect()
}

/// Determinant of the square matrix with the given columns by expansion over
/// row subsets; `O(2^d d)` ring operations, suited to sparse symbolic entries.
pub fn det_columns<R: Ring>(cols: &[&[R]]) -> R {
    let d = cols.len();
    if d == 0 {
        return R::one();
    }
    assert!(cols.iter().all(|c| c.len() == d));
    assert!(d <= 20);
    // minors[S] = det of rows S (ascending) against the first |S| columns
    let mut minors: Vec<Option<R>> = vec![None; 1 << d];
    minors[0] = Some(R::one());
    for mask in 1usize..(1 << d) {
        let k = mask.count_ones() as usize - 1;
        let col = cols[k];
        let mut acc = R::zero();
        // expand along column k over rows in mask; sign by position of row in mask
        let mut pos = 0;
        for r in 0..d {
            if mask & (1 << r) == 0 {
                continue;
            }
            let rest = mask & !(1 << r);
            if !col[r].is_zero() {
                if let Some(sub) = &minors[rest] {
                    if !sub.is_zero() {
                        let t = col[r].mul(sub);
                        // row r sits at `pos` among the rows of mask; the column is the last one
                        let sign_odd = (k - pos) % 2 == 1;
                        acc = if sign_odd { acc.sub(&t) } else { acc.add(&t) };
                    }
                }
            }
            pos += 1;
        }
        minors[mask] = Some(acc);
    }
    minors[(1 << d) - 1].take().unwrap()
}

/// Bareiss fraction-free elimination; returns the rank and the last pivot
/// (the determinant, up to the recorded row-swap sign, for square full-rank input).
pub fn bareiss<R: ExactDiv>(m: &Matrix<R>) -> (usize, R, bool) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut w = m.clone();
    let mut prev = R::one();
    let mut r = 0;
    let mut negate = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !w[i][c].is_zero()) else { continue };
        if p != r {
            w.swap(p, r);
            negate = !negate;
        }
        for i in r + 1..rows {
            for k in c + 1..cols {
                let t = w[r][c].mul(&w[i][k]).sub(&w[i][c].mul(&w[r][k]));
                w[i][k] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            w[i][c] = R::zero();
        }
        prev = w[r][c].clone();
        r += 1;
    }
    (r, prev, negate)
}

pub fn bareiss_det<R: ExactDiv>(m: &Matrix<R>) -> R {
    let n = m.len();
    let (rank, last, negate) = bareiss(m);
    if rank < n {
        return R::zero();
    }
    if negate {
        last.neg()
    } else {
        last
    }
}

/// Kernel of a polynomial matrix with polynomial basis vectors (denominators cleared).
pub fn exact_kernel<F: Scalar>(m: &Matrix<MultiPoly<F>>, cols: usize) -> Vec<Vec<MultiPoly<F>>> {
    let lifted: Matrix<RatFunc<F>> = m.iter().map(|r| r.iter().cloned().map(RatFunc::from_poly).collect()).collect();
    kernel(&lifted, cols)
        .into_iter()
        .map(|v| {
            let mut den = MultiPoly::one();
            for x in &v {
                let g = super::gcd::gcd(&den, x.den());
                den = den.mul(&x.den().div_exact_poly(&g).unwrap());
            }
            v.iter().map(|x| x.num().mul(&den.div_exact_poly(x.den()).unwrap())).collect()
        })
        .collect()
}

/// Incrementally maintained row echelon basis for greedy independent-row selection.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F> {
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Default for EchelonBasis<F> {
    fn default() -> Self {
        EchelonBasis { rows: Vec::new() }
    }
}

impl<F: Field> EchelonBasis<F> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot column of each accepted row, in insertion order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Adds `v` if it is independent of the rows so far.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv().unwrap();
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Rational, F101};
    use crate::algebra::var::VarId;

    fn fm(rows: &[&[i64]]) -> Matrix<F101> {
        rows.iter().map(|r| r.iter().map(|&x| F101::from_i64(x)).collect()).collect()
    }

    #[test]
    fn identity_rank_and_det() {
        let m = fm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(rank(&m), 3);
        assert_eq!(det(&m), F101::one());
    }

    #[test]
    fn vandermonde_matches_product_of_differences() {
        let pts = [3i64, 7, 11, 20, 55];
        let m: Matrix<F101> = pts.iter().map(|&x| (0..5).map(|k| F101::from_i64(x).pow(k)).collect()).collect();
        let mut expect = F101::one();
        for i in 0..5 {
            for j in i + 1..5 {
                expect = expect.mul(&F101::from_i64(pts[j] - pts[i]));
            }
        }
        assert_eq!(det(&m), expect);
        let cols: Vec<Vec<F101>> = (0..5).map(|c| m.iter().map(|r| r[c]).collect()).collect();
        let refs: Vec<&[F101]> = cols.iter().map(|c| c.as_slice()).collect();
        assert_eq!(det_columns(&refs), expect);
        assert_eq!(bareiss_det(&m), expect);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = fm(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = kernel(&m, 4);
        assert_eq!(k.len(), 2);
        for v in k {
            for row in &m {
                let s = row.iter().zip(&v).fold(F101::zero(), |a, (x, y)| a.add(&x.mul(y)));
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn symbolic_determinants_agree() {
        let a = |i, j| MultiPoly::<Rational>::var(VarId::A(i, j));
        let m: Matrix<MultiPoly<Rational>> = (1..=3).map(|i| (1..=3).map(|j| a(i, j)).collect()).collect();
        let cols: Vec<Vec<_>> = (0..3).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect();
        let refs: Vec<&[MultiPoly<Rational>]> = cols.iter().map(|c| c.as_slice()).collect();
        let d1 = det_columns(&refs);
        let d2 = bareiss_det(&m);
        assert_eq!(d1, d2);
        assert_eq!(d1.len(), 6);
    }

    #[test]
    fn polynomial_kernel() {
        let a = |i, j| MultiPoly::<Rational>::var(VarId::A(i, j));
        // rank-one 2x2 matrix [[x, y], [x z, y z]]
        let m = vec![vec![a(1, 1), a(1, 2)], vec![a(1, 1).mul(&a(2, 2)), a(1, 2).mul(&a(2, 2))]];
        let k = exact_kernel(&m, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let s = m[0][0].mul(&v[0]).add(&m[0][1].mul(&v[1]));
        assert!(s.is_zero());
        assert_eq!(bareiss(&m).0, 1);
    }
}
