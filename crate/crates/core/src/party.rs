use serde::{Deserialize, Serialize};

/// One of the three subsystems. Flat indices put `A` slowest and `C` fastest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    pub fn index(self) -> usize {
        match self {
            Party::A => 0,
            Party::B => 1,
            Party::C => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn letter(self) -> char {
        match self {
            Party::A => 'A',
            Party::B => 'B',
            Party::C => 'C',
        }
    }
}

/// Local dimensions `(d_A, d_B, d_C)`.
pub type Dims = [usize; 3];

pub fn total_dim(dims: &Dims) -> usize {
    dims.iter().product()
}

/// `((a * d_B) + b) * d_C + c` for 0-based local indices.
#[inline]
pub fn flat_index(dims: &Dims, idx: [usize; 3]) -> usize {
    (idx[0] * dims[1] + idx[1]) * dims[2] + idx[2]
}

#[inline]
pub fn multi_index(dims: &Dims, flat: usize) -> [usize; 3] {
    let c = flat % dims[2];
    let rest = flat / dims[2];
    [rest / dims[1], rest % dims[1], c]
}
