//! Bipartite splits of the three parties and the operations that depend on
//! them: partial transposition, reindexing to `left ⊗ right` order and Schmidt
//! decomposition.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::party::{multi_index, total_dim, Dims, Party};
use crate::states::{MultipartiteState, PureVector};
use crate::tensor::{hermitian_eig, svd, vector, ComplexVector, DenseMatrix, C64, HERMITIAN_TOL};

/// An ordered split of `{A, B, C}` into two nonempty groups. Inside each group
/// the original party order is kept, so `(AB)-C` and `A-(BC)` leave the flat
/// index unchanged while `B-(AC)` permutes it.
#[derive(Clone, PartialEq, Eq)]
pub struct Bipartition {
    left: Vec<Party>,
    right: Vec<Party>,
    dims: Dims,
    left_dim: usize,
    right_dim: usize,
    /// tripartite flat index -> `l * right_dim + r`
    to_pair: Vec<usize>,
    /// inverse of `to_pair`
    from_pair: Vec<usize>,
}

impl fmt::Debug for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bipartition({} {:?})", self.name(), self.dims)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for Bipartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

fn group_index(parties: &[Party], dims: &Dims, idx: &[usize; 3]) -> usize {
    parties.iter().fold(0, |acc, p| acc * dims[p.index()] + idx[p.index()])
}

impl Bipartition {
    pub fn new(left: &[Party], dims: Dims) -> Result<Self> {
        let mut l: Vec<Party> = left.to_vec();
        l.sort();
        l.dedup();
        if l.is_empty() || l.len() == 3 {
            return Err(Error::InvalidSplit(format!(
                "left group {left:?} must be a nonempty proper subset"
            )));
        }
        let right: Vec<Party> = Party::ALL.iter().copied().filter(|p| !l.contains(p)).collect();
        let left_dim = l.iter().map(|p| dims[p.index()]).product();
        let right_dim = right.iter().map(|p| dims[p.index()]).product();
        let d = total_dim(&dims);
        let mut to_pair = vec![0; d];
        let mut from_pair = vec![0; d];
        for (flat, slot) in to_pair.iter_mut().enumerate() {
            let idx = multi_index(&dims, flat);
            let pair = group_index(&l, &dims, &idx) * right_dim + group_index(&right, &dims, &idx);
            *slot = pair;
            from_pair[pair] = flat;
        }
        Ok(Self {
            left: l,
            right,
            dims,
            left_dim,
            right_dim,
            to_pair,
            from_pair,
        })
    }

    pub fn ab_c(dims: Dims) -> Self {
        Self::new(&[Party::A, Party::B], dims).expect("valid split")
    }

    pub fn a_bc(dims: Dims) -> Self {
        Self::new(&[Party::A], dims).expect("valid split")
    }

    pub fn b_ac(dims: Dims) -> Self {
        Self::new(&[Party::B], dims).expect("valid split")
    }

    /// `(AB)-C`, `A-(BC)`, `B-(AC)`.
    pub fn standard(dims: Dims) -> [Self; 3] {
        [Self::ab_c(dims), Self::a_bc(dims), Self::b_ac(dims)]
    }

    /// Parses `"(AB)-C"`, `"AB-C"`, `"A-(BC)"`, `"B-AC"` and similar.
    pub fn parse(name: &str, dims: Dims) -> Result<Self> {
        let cleaned: String = name.chars().filter(|c| !matches!(c, '(' | ')' | ' ')).collect();
        let (l, r) = cleaned
            .split_once(['-', '|'])
            .ok_or_else(|| Error::InvalidSplit(name.to_string()))?;
        let parse_group = |g: &str| -> Result<Vec<Party>> {
            g.chars()
                .map(|c| match c.to_ascii_uppercase() {
                    'A' => Ok(Party::A),
                    'B' => Ok(Party::B),
                    'C' => Ok(Party::C),
                    _ => Err(Error::InvalidSplit(name.to_string())),
                })
                .collect()
        };
        let (lp, mut rp) = (parse_group(l)?, parse_group(r)?);
        let split = Self::new(&lp, dims)?;
        rp.sort();
        if rp != split.right {
            return Err(Error::InvalidSplit(name.to_string()));
        }
        Ok(split)
    }

    pub fn name(&self) -> String {
        let g = |ps: &[Party]| {
            let s: String = ps.iter().map(|p| p.letter()).collect();
            if ps.len() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}-{}", g(&self.left), g(&self.right))
    }

    pub fn left(&self) -> &[Party] {
        &self.left
    }

    pub fn right(&self) -> &[Party] {
        &self.right
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn dim(&self) -> usize {
        self.left_dim * self.right_dim
    }

    /// Tripartite flat index -> `(left, right)` indices.
    pub fn pair_of(&self, flat: usize) -> (usize, usize) {
        let p = self.to_pair[flat];
        (p / self.right_dim, p % self.right_dim)
    }

    pub fn flat_of(&self, l: usize, r: usize) -> usize {
        self.from_pair[l * self.right_dim + r]
    }

    /// Reorders rows and columns from tripartite order to `left ⊗ right` order.
    pub fn to_bipartite(&self, m: &DenseMatrix) -> DenseMatrix {
        m.permute_symmetric(&self.from_pair)
    }

    pub fn from_bipartite(&self, m: &DenseMatrix) -> DenseMatrix {
        m.permute_symmetric(&self.to_pair)
    }

    pub fn vector_to_bipartite(&self, v: &[C64]) -> ComplexVector {
        self.from_pair.iter().map(|&f| v[f]).collect()
    }

    pub fn vector_from_bipartite(&self, v: &[C64]) -> ComplexVector {
        self.to_pair.iter().map(|&p| v[p]).collect()
    }

    /// `left ⊗ right` mapped back to tripartite order.
    pub fn assemble(&self, left: &[C64], right: &[C64]) -> ComplexVector {
        self.vector_from_bipartite(&vector::kron(left, right))
    }

    /// `ρ^{T_right}` in `left ⊗ right` order.
    pub fn pt_right(&self, rho: &DenseMatrix) -> Result<DenseMatrix> {
        let pt = partial_transpose(rho, self.dims, &self.right)?;
        Ok(self.to_bipartite(&pt))
    }

    fn check_dims(&self, dims: Dims) -> Result<()> {
        if dims != self.dims {
            return Err(Error::SplitMismatch(format!(
                "split built for {:?}, state has {:?}",
                self.dims, dims
            )));
        }
        Ok(())
    }

    pub fn check_state(&self, state: &MultipartiteState) -> Result<()> {
        self.check_dims(state.dims())
    }
}

/// Transposes the indices of the parties in `subset` between row and column.
pub fn partial_transpose(rho: &DenseMatrix, dims: Dims, subset: &[Party]) -> Result<DenseMatrix> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let d = total_dim(&dims);
    if rho.rows() != d || rho.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: format!("{d}x{d}"),
            found: format!("{}x{}", rho.rows(), rho.cols()),
        });
    }
    let mut mask = [false; 3];
    for p in subset {
        mask[p.index()] = true;
    }
    let idx: Vec<[usize; 3]> = (0..d).map(|f| multi_index(&dims, f)).collect();
    Ok(DenseMatrix::from_fn(d, d, |i, j| {
        let (mut r, mut c) = (idx[i], idx[j]);
        for k in 0..3 {
            if mask[k] {
                std::mem::swap(&mut r[k], &mut c[k]);
            }
        }
        rho.get(
            (r[0] * dims[1] + r[1]) * dims[2] + r[2],
            (c[0] * dims[1] + c[1]) * dims[2] + c[2],
        )
    }))
}

pub fn partial_transpose_state(state: &MultipartiteState, subset: &[Party]) -> Result<DenseMatrix> {
    partial_transpose(state.rho(), state.dims(), subset)
}

/// `v = Σ_k c_k left_k ⊗ right_k` with `c` descending.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    pub coefficients: Vec<f64>,
    pub left: Vec<ComplexVector>,
    pub right: Vec<ComplexVector>,
}

impl SchmidtDecomposition {
    pub fn rank(&self, tol: f64) -> usize {
        let top = self.coefficients.first().copied().unwrap_or(0.0);
        self.coefficients.iter().filter(|&&c| c > tol * top).count()
    }
}

/// Schmidt decomposition of a vector given in `left ⊗ right` order.
pub fn schmidt_decompose(v: &[C64], left_dim: usize, right_dim: usize) -> Result<SchmidtDecomposition> {
    if v.len() != left_dim * right_dim {
        return Err(Error::DimensionMismatch {
            expected: format!("{}", left_dim * right_dim),
            found: format!("{}", v.len()),
        });
    }
    let m = DenseMatrix::new(left_dim, right_dim, v.to_vec())?;
    let d = svd(&m);
    let k = d.singular_values.len();
    Ok(SchmidtDecomposition {
        coefficients: d.singular_values,
        left: (0..k).map(|j| d.u.column(j)).collect(),
        right: (0..k).map(|j| vector::conj(&d.v.column(j))).collect(),
    })
}

/// Number of Schmidt coefficients above `tol · c_max` across `split`.
pub fn schmidt_rank(v: &PureVector, split: &Bipartition, tol: f64) -> Result<usize> {
    split.check_dims(v.dims)?;
    if vector::norm(&v.amplitudes) == 0.0 {
        return Err(Error::ZeroVector);
    }
    let bip = split.vector_to_bipartite(&v.amplitudes);
    Ok(schmidt_decompose(&bip, split.left_dim(), split.right_dim())?.rank(tol))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MinorWitness {
    pub i: usize,
    pub j: usize,
    /// `M[i,i]·M[j,j] - |M[i,j]|²`
    pub value: f64,
}

/// The most negative 2x2 principal minor, reported when it lies below `-tol`.
pub fn minor2_scan(m: &DenseMatrix, tol: f64) -> Result<Option<MinorWitness>> {
    m.ensure_hermitian(HERMITIAN_TOL)?;
    let mut best: Option<MinorWitness> = None;
    for i in 0..m.rows() {
        for j in (i + 1)..m.rows() {
            let value = m.get(i, i).re * m.get(j, j).re - m.get(i, j).norm_sqr();
            if best.is_none_or(|w| value < w.value) {
                best = Some(MinorWitness { i, j, value });
            }
        }
    }
    Ok(best.filter(|w| w.value < -tol))
}

/// `λ_min` of `ρ^{T_right}` together with its eigenvector (tripartite order).
pub fn pt_min_eigen(state: &MultipartiteState, split: &Bipartition) -> Result<(f64, ComplexVector)> {
    split.check_state(state)?;
    let pt = partial_transpose_state(state, split.right())?;
    let e = hermitian_eig(&pt, HERMITIAN_TOL)?;
    Ok((e.min(), e.vector(0)))
}
