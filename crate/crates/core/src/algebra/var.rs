use std::fmt;

use serde::{Deserialize, Serialize};

/// Polynomial variable.
///
/// `A(i, j)` is the l.s.o.p. entry in row `i` and column (vertex) `j`,
/// `B(i)` the auxiliary parameters of structured l.s.o.p.s and `C(i)` the
/// entries of a symbolic replacement vector. All indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum VarId {
    A(u16, u16),
    B(u16),
    C(u16),
}

/// Packed variable index; its numeric order is the canonical variable order
/// (A entries row-major, then B ascending, then C ascending).
pub type VarIdx = u16;

const A_ROWS: u16 = 32;
const A_COLS: u16 = 256;
const B_BASE: u16 = A_ROWS * A_COLS;
const C_BASE: u16 = B_BASE + 4096;

impl VarId {
    pub fn index(self) -> VarIdx {
        match self {
            VarId::A(i, j) => {
                assert!((1..=A_ROWS).contains(&i) && (1..=A_COLS).contains(&j), "variable a[{i}][{j}] out of range");
                (i - 1) * A_COLS + (j - 1)
            }
            VarId::B(i) => {
                assert!((1..=4096).contains(&i));
                B_BASE + i - 1
            }
            VarId::C(i) => {
                assert!((1..=4096).contains(&i));
                C_BASE + i - 1
            }
        }
    }

    pub fn from_index(idx: VarIdx) -> VarId {
        if idx < B_BASE {
            VarId::A(idx / A_COLS + 1, idx % A_COLS + 1)
        } else if idx < C_BASE {
            VarId::B(idx - B_BASE + 1)
        } else {
            VarId::C(idx - C_BASE + 1)
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::A(i, j) => write!(f, "a[{i}][{j}]"),
            VarId::B(i) => write!(f, "b[{i}]"),
            VarId::C(i) => write!(f, "c[{i}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_order_matches_variable_order() {
        let vars = [VarId::A(1, 1), VarId::A(1, 7), VarId::A(2, 1), VarId::A(6, 10), VarId::B(1), VarId::B(4), VarId::C(1)];
        for w in vars.windows(2) {
            assert!(w[0].index() < w[1].index());
            assert!(w[0] < w[1]);
        }
        for v in vars {
            assert_eq!(VarId::from_index(v.index()), v);
        }
    }
}
