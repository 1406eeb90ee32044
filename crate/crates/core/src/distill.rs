//! One-copy distillability: Schmidt-rank-2 minimization of `<ψ|ρ^Γ|ψ>`, the
//! M-matrix scan and two-dimensional projector compressions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bipartition::{schmidt_decompose, Bipartition};
use crate::error::{Error, Result};
use crate::search::random_complex;
use crate::states::MultipartiteState;
use crate::tensor::{hermitian_eig, orthonormalize, re, vector, ComplexVector, DenseMatrix, C64, HERMITIAN_TOL, ZERO};

/// Tolerance on orthonormality of supplied vector pairs.
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// `ψ = c_1 u_1 ⊗ v_1 + c_2 u_2 ⊗ v_2` across a split.
#[derive(Clone, Debug, Serialize)]
pub struct SchmidtRank2Vector {
    pub split: Bipartition,
    pub c: [f64; 2],
    pub u: [ComplexVector; 2],
    pub v: [ComplexVector; 2],
}

fn orthonormal_defect(a: &[C64], b: &[C64]) -> f64 {
    let d1 = (vector::norm(a) - 1.0).abs();
    let d2 = (vector::norm(b) - 1.0).abs();
    d1.max(d2).max(vector::inner(a, b).norm())
}

/// A unit vector orthogonal to `a` (unit), taken from the standard basis.
fn complement(a: &[C64]) -> ComplexVector {
    let cols: Vec<ComplexVector> = std::iter::once(a.to_vec())
        .chain((0..a.len()).map(|k| vector::basis(a.len(), k)))
        .collect();
    orthonormalize(&cols, 1e-8)
        .into_iter()
        .nth(1)
        .expect("dimension at least 2")
}

impl SchmidtRank2Vector {
    /// Validates orthonormality and renormalizes `c`.
    pub fn new(split: Bipartition, c: [f64; 2], u: [ComplexVector; 2], v: [ComplexVector; 2]) -> Result<Self> {
        let (dl, dr) = (split.left_dim(), split.right_dim());
        if u.iter().any(|x| x.len() != dl) || v.iter().any(|x| x.len() != dr) {
            return Err(Error::DimensionMismatch {
                expected: format!("factors of length ({dl}, {dr})"),
                found: format!("({}, {})", u[0].len(), v[0].len()),
            });
        }
        let defect = orthonormal_defect(&u[0], &u[1]).max(orthonormal_defect(&v[0], &v[1]));
        if defect > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal(defect));
        }
        let norm = c[0].hypot(c[1]);
        if norm == 0.0 || c.iter().any(|x| *x < 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            split,
            c: [c[0] / norm, c[1] / norm],
            u,
            v,
        })
    }

    /// Reads a vector given in `left ⊗ right` order; it must have Schmidt rank
    /// at most 2 (the tail beyond two coefficients is dropped after a check).
    pub fn from_bipartite(split: &Bipartition, psi: &[C64]) -> Result<Self> {
        let sd = schmidt_decompose(psi, split.left_dim(), split.right_dim())?;
        let top = sd.coefficients.first().copied().unwrap_or(0.0);
        if top == 0.0 {
            return Err(Error::ZeroVector);
        }
        let tail = sd.coefficients.iter().skip(2).fold(0.0, |m: f64, x| m.max(*x));
        if tail > 1e-8 * top {
            return Err(Error::NotProductForm(format!(
                "Schmidt coefficient {tail:e} beyond rank 2"
            )));
        }
        let c2 = sd.coefficients.get(1).copied().unwrap_or(0.0);
        let (u2, v2) = if sd.left.len() > 1 {
            (sd.left[1].clone(), sd.right[1].clone())
        } else {
            (complement(&sd.left[0]), complement(&sd.right[0]))
        };
        Self::new(
            split.clone(),
            [top, c2],
            [sd.left[0].clone(), u2],
            [sd.right[0].clone(), v2],
        )
    }

    /// `Σ_k c_k u_k ⊗ v_k` in `left ⊗ right` order.
    pub fn bipartite(&self) -> ComplexVector {
        let a = vector::scale(&vector::kron(&self.u[0], &self.v[0]), re(self.c[0]));
        let b = vector::scale(&vector::kron(&self.u[1], &self.v[1]), re(self.c[1]));
        vector::add(&a, &b)
    }

    pub fn flat(&self) -> ComplexVector {
        self.split.vector_from_bipartite(&self.bipartite())
    }
}

/// `ρ^{T_right}` in `left ⊗ right` order, reused across evaluations.
#[derive(Clone, Debug)]
pub struct PartialTransposeOperator {
    pub split: Bipartition,
    pub matrix: DenseMatrix,
}

impl PartialTransposeOperator {
    pub fn new(state: &MultipartiteState, split: &Bipartition) -> Result<Self> {
        split.check_state(state)?;
        Ok(Self {
            split: split.clone(),
            matrix: split.pt_right(state.rho())?,
        })
    }

    pub fn value(&self, psi: &[C64]) -> f64 {
        self.matrix.quadratic(psi).re
    }

    pub fn lambda_min(&self) -> Result<(f64, ComplexVector)> {
        let e = hermitian_eig(&self.matrix, HERMITIAN_TOL)?;
        Ok((e.min(), e.vector(0)))
    }

    /// `(V ⊗ I)^H R (V ⊗ I)` for `V` with two columns on the left space.
    fn left_compression(&self, v: &[ComplexVector; 2]) -> DenseMatrix {
        let dr = self.split.right_dim();
        let dl = self.split.left_dim();
        let r = &self.matrix;
        DenseMatrix::from_fn(2 * dr, 2 * dr, |row, col| {
            let (k, j) = (row / dr, row % dr);
            let (k2, j2) = (col / dr, col % dr);
            let mut acc = ZERO;
            for i in 0..dl {
                let vi = v[k][i].conj();
                if vi == ZERO {
                    continue;
                }
                for i2 in 0..dl {
                    acc += vi * r.get(i * dr + j, i2 * dr + j2) * v[k2][i2];
                }
            }
            acc
        })
    }

    /// `M[(k,i),(k',i')] = Σ conj(v_k[j]) R[(i,j),(i',j')] v_k'[j']`.
    fn right_compression(&self, v: &[ComplexVector; 2]) -> DenseMatrix {
        let dr = self.split.right_dim();
        let dl = self.split.left_dim();
        let r = &self.matrix;
        DenseMatrix::from_fn(2 * dl, 2 * dl, |row, col| {
            let (k, i) = (row / dl, row % dl);
            let (k2, i2) = (col / dl, col % dl);
            let mut acc = ZERO;
            for j in 0..dr {
                let vj = v[k][j].conj();
                if vj == ZERO {
                    continue;
                }
                for j2 in 0..dr {
                    acc += vj * r.get(i * dr + j, i2 * dr + j2) * v[k2][j2];
                }
            }
            acc
        })
    }
}

/// `<ψ|ρ^{T_right}|ψ>`.
pub fn pt_expectation(state: &MultipartiteState, split: &Bipartition, psi: &SchmidtRank2Vector) -> Result<f64> {
    if psi.split != *split {
        return Err(Error::SplitMismatch(format!(
            "vector built for {}, evaluated on {}",
            psi.split, split
        )));
    }
    let op = PartialTransposeOperator::new(state, split)?;
    let z = op.matrix.quadratic(&psi.bipartite());
    if z.im.abs() > 1e-12 * (1.0 + z.re.abs()) {
        return Err(Error::NotHermitian {
            defect: z.im.abs(),
            allowed: 1e-12,
        });
    }
    Ok(z.re)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchBudget {
    pub restarts: usize,
    pub iters: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            restarts: 64,
            iters: 200,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rank2Method {
    /// `min(dL, dR) ≤ 2`: every vector has Schmidt rank at most 2.
    Exact,
    SeeSaw,
}

#[derive(Clone, Debug, Serialize)]
pub struct Rank2Result {
    pub split: String,
    pub method: Rank2Method,
    pub value: f64,
    pub witness: SchmidtRank2Vector,
    /// `λ_min(ρ^{T_right})`, a lower bound on `value`.
    pub lambda_min: f64,
    pub gap: f64,
    pub budget: SearchBudget,
    /// Restart that achieved `value` (see-saw only).
    pub best_restart: Option<usize>,
    /// Total see-saw iterations over all restarts.
    pub iterations: usize,
    /// No restart ever increased its objective.
    pub monotone: bool,
}

struct SeeSawRun {
    value: f64,
    psi: ComplexVector,
    iterations: usize,
    monotone: bool,
}

fn min_eig(m: &DenseMatrix) -> (f64, ComplexVector) {
    // compressions of a Hermitian matrix are Hermitian up to rounding
    let e = hermitian_eig(m, 1e-9).expect("compressions of a Hermitian matrix are Hermitian");
    (e.min(), e.vector(0))
}

fn two_columns(cols: &[ComplexVector], dim: usize) -> [ComplexVector; 2] {
    let mut list = cols.to_vec();
    list.extend((0..dim).map(|k| vector::basis(dim, k)));
    let q = orthonormalize(&list, 1e-8);
    [q[0].clone(), q[1].clone()]
}

fn see_saw_run(op: &PartialTransposeOperator, start: [ComplexVector; 2], iters: usize) -> SeeSawRun {
    let (dl, dr) = (op.split.left_dim(), op.split.right_dim());
    let mut v_left = start;
    let mut best = f64::INFINITY;
    let mut psi = vec![ZERO; dl * dr];
    let mut monotone = true;
    let mut iterations = 0;
    for _ in 0..iters {
        iterations += 1;
        // step A: optimal vector in V ⊗ C^{dR}
        let (val_a, w) = min_eig(&op.left_compression(&v_left));
        let mut cand = vec![ZERO; dl * dr];
        for k in 0..2 {
            for i in 0..dl {
                for j in 0..dr {
                    cand[i * dr + j] += v_left[k][i] * w[k * dr + j];
                }
            }
        }
        // step B: fix the right Schmidt vectors, optimize the left parts
        let sd = schmidt_decompose(&cand, dl, dr).expect("consistent dimensions");
        let right = two_columns(&sd.right[..sd.right.len().min(2)], dr);
        let (val_b, y) = min_eig(&op.right_compression(&right));
        let mut next = vec![ZERO; dl * dr];
        for k in 0..2 {
            for i in 0..dl {
                for j in 0..dr {
                    next[i * dr + j] += y[k * dl + i] * right[k][j];
                }
            }
        }
        let value = val_a.min(val_b);
        if value > best + 1e-12 {
            monotone = false;
        }
        let improvement = best - value;
        if value < best {
            best = value;
            psi = if val_b <= val_a { next } else { cand };
        }
        let parts: Vec<ComplexVector> = (0..2).map(|k| y[k * dl..(k + 1) * dl].to_vec()).collect();
        v_left = two_columns(&parts, dl);
        if improvement.is_finite() && improvement < 1e-12 {
            break;
        }
    }
    SeeSawRun {
        value: best,
        psi,
        iterations,
        monotone,
    }
}

/// Starting subspaces: all coordinate pairs first, then random ones.
fn starts(dl: usize, budget: &SearchBudget) -> Vec<[ComplexVector; 2]> {
    let mut out = Vec::with_capacity(budget.restarts);
    'pairs: for i in 0..dl {
        for j in (i + 1)..dl {
            if out.len() == budget.restarts {
                break 'pairs;
            }
            out.push([vector::basis(dl, i), vector::basis(dl, j)]);
        }
    }
    let fixed = out.len();
    for k in fixed..budget.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed.wrapping_add(k as u64));
        let a = random_complex(&mut rng, dl);
        let b = random_complex(&mut rng, dl);
        out.push(two_columns(&[a, b], dl));
    }
    out
}

/// See-saw minimization of `<ψ|ρ^Γ|ψ>` over Schmidt-rank-2 vectors,
/// regardless of dimensions.
pub fn rank2_see_saw(state: &MultipartiteState, split: &Bipartition, budget: &SearchBudget) -> Result<Rank2Result> {
    let op = PartialTransposeOperator::new(state, split)?;
    see_saw_on(&op, budget)
}

fn see_saw_on(op: &PartialTransposeOperator, budget: &SearchBudget) -> Result<Rank2Result> {
    let dl = op.split.left_dim();
    if dl < 2 || op.split.right_dim() < 2 {
        return Err(Error::InvalidSplit("both sides need dimension at least 2".into()));
    }
    let (lambda_min, _) = op.lambda_min()?;
    let starts = starts(dl, budget);
    let run = |s: &[ComplexVector; 2]| see_saw_run(op, s.clone(), budget.iters);

    #[cfg(feature = "parallel")]
    let runs: Vec<SeeSawRun> = {
        use rayon::prelude::*;
        starts.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let runs: Vec<SeeSawRun> = starts.iter().map(run).collect();

    let (best_idx, best) = runs
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .ok_or_else(|| Error::InvalidSplit("zero restarts".into()))?;
    let witness = SchmidtRank2Vector::from_bipartite(&op.split, &best.psi)?;
    Ok(Rank2Result {
        split: op.split.name(),
        method: Rank2Method::SeeSaw,
        value: best.value,
        witness,
        lambda_min,
        gap: best.value - lambda_min,
        budget: *budget,
        best_restart: Some(best_idx),
        iterations: runs.iter().map(|r| r.iterations).sum(),
        monotone: runs.iter().all(|r| r.monotone),
    })
}

/// Minimum of `<ψ|ρ^{T_right}|ψ>` over Schmidt-rank-2 unit vectors: exact
/// when either side has dimension at most 2, see-saw otherwise.
pub fn rank2_min(state: &MultipartiteState, split: &Bipartition, budget: &SearchBudget) -> Result<Rank2Result> {
    let op = PartialTransposeOperator::new(state, split)?;
    if split.left_dim().min(split.right_dim()) <= 2 {
        let (lambda_min, vec) = op.lambda_min()?;
        let witness = SchmidtRank2Vector::from_bipartite(split, &vec)?;
        return Ok(Rank2Result {
            split: split.name(),
            method: Rank2Method::Exact,
            value: lambda_min,
            witness,
            lambda_min,
            gap: 0.0,
            budget: *budget,
            best_restart: None,
            iterations: 0,
            monotone: true,
        });
    }
    see_saw_on(&op, budget)
}

/// `M` built on a pair of orthonormal right vectors.
#[derive(Clone, Debug, Serialize)]
pub struct MMatrix {
    pub v1: ComplexVector,
    pub v2: ComplexVector,
    #[serde(skip)]
    pub matrix: DenseMatrix,
}

impl MMatrix {
    /// `Y^H M Y` with `Y = (c_1 u_1; c_2 u_2)`.
    pub fn value(&self, y: &[C64]) -> f64 {
        self.matrix.quadratic(y).re
    }

    pub fn lambda_min(&self) -> Result<f64> {
        Ok(hermitian_eig(&self.matrix, 1e-9)?.min())
    }
}

pub fn build_m(state: &MultipartiteState, split: &Bipartition, v1: &[C64], v2: &[C64]) -> Result<MMatrix> {
    let op = PartialTransposeOperator::new(state, split)?;
    build_m_on(&op, v1, v2)
}

fn build_m_on(op: &PartialTransposeOperator, v1: &[C64], v2: &[C64]) -> Result<MMatrix> {
    let dr = op.split.right_dim();
    if v1.len() != dr || v2.len() != dr {
        return Err(Error::DimensionMismatch {
            expected: format!("right vectors of length {dr}"),
            found: format!("({}, {})", v1.len(), v2.len()),
        });
    }
    let defect = orthonormal_defect(v1, v2);
    if defect > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal(defect));
    }
    Ok(MMatrix {
        v1: v1.to_vec(),
        v2: v2.to_vec(),
        matrix: op.right_compression(&[v1.to_vec(), v2.to_vec()]),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairOrigin {
    BasisPair,
    Random,
    Optimized,
}

#[derive(Clone, Debug, Serialize)]
pub struct MScan {
    pub split: String,
    pub samples: usize,
    pub seed: u64,
    pub min_lambda: f64,
    pub worst_pair: [ComplexVector; 2],
    pub worst_origin: PairOrigin,
}

/// Smallest `λ_min(M)` over `samples` random orthonormal pairs plus the pair
/// of right Schmidt vectors of the `λ_min` eigenvector of `ρ^{T_right}`.
pub fn m_positivity_scan(state: &MultipartiteState, split: &Bipartition, samples: usize, seed: u64) -> Result<MScan> {
    let op = PartialTransposeOperator::new(state, split)?;
    let dr = split.right_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<([ComplexVector; 2], PairOrigin)> = Vec::with_capacity(samples + 1);
    let (_, ev) = op.lambda_min()?;
    let sd = schmidt_decompose(&ev, split.left_dim(), dr)?;
    pairs.push((
        two_columns(&sd.right[..sd.right.len().min(2)], dr),
        PairOrigin::Optimized,
    ));
    for _ in 0..samples {
        let a = random_complex(&mut rng, dr);
        let b = random_complex(&mut rng, dr);
        pairs.push((two_columns(&[a, b], dr), PairOrigin::Random));
    }
    let eval =
        |(p, _): &([ComplexVector; 2], PairOrigin)| -> Result<f64> { build_m_on(&op, &p[0], &p[1])?.lambda_min() };

    #[cfg(feature = "parallel")]
    let values: Vec<Result<f64>> = {
        use rayon::prelude::*;
        pairs.par_iter().map(eval).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let values: Vec<Result<f64>> = pairs.iter().map(eval).collect();

    let mut best = (f64::INFINITY, 0);
    for (k, v) in values.into_iter().enumerate() {
        let v = v?;
        if v < best.0 {
            best = (v, k);
        }
    }
    let (pair, origin) = pairs.swap_remove(best.1);
    Ok(MScan {
        split: split.name(),
        samples,
        seed,
        min_lambda: best.0,
        worst_pair: pair,
        worst_origin: origin,
    })
}

/// Two-dimensional subspaces `P` (left) and `Q` (right).
#[derive(Clone, Debug, Serialize)]
pub struct ProjectorPair {
    pub p: [ComplexVector; 2],
    pub q: [ComplexVector; 2],
    pub origin: PairOrigin,
    /// 0-based coordinate indices for basis pairs.
    pub indices: Option<([usize; 2], [usize; 2])>,
}

impl ProjectorPair {
    pub fn basis(left_dim: usize, right_dim: usize, p: [usize; 2], q: [usize; 2]) -> Self {
        Self {
            p: [vector::basis(left_dim, p[0]), vector::basis(left_dim, p[1])],
            q: [vector::basis(right_dim, q[0]), vector::basis(right_dim, q[1])],
            origin: PairOrigin::BasisPair,
            indices: Some((p, q)),
        }
    }

    /// Random orthonormal pairs drawn from a seeded generator.
    pub fn random(left_dim: usize, right_dim: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = [random_complex(&mut rng, left_dim), random_complex(&mut rng, left_dim)];
        let q = [random_complex(&mut rng, right_dim), random_complex(&mut rng, right_dim)];
        Self {
            p: two_columns(&p, left_dim),
            q: two_columns(&q, right_dim),
            origin: PairOrigin::Random,
            indices: None,
        }
    }
}

/// All `C(dL,2)·C(dR,2)` coordinate pairs, ordered lexicographically.
pub fn basis_pairs(left_dim: usize, right_dim: usize) -> Vec<ProjectorPair> {
    let pairs = |d: usize| -> Vec<[usize; 2]> { (0..d).flat_map(|i| ((i + 1)..d).map(move |j| [i, j])).collect() };
    let (lp, rp) = (pairs(left_dim), pairs(right_dim));
    lp.iter()
        .flat_map(|p| {
            rp.iter()
                .map(move |q| ProjectorPair::basis(left_dim, right_dim, *p, *q))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Compression {
    /// `((P⊗Q) ρ (P⊗Q))^{T_Q}` in the basis `p_a ⊗ q_b`, index `2a + b`.
    #[serde(skip)]
    pub matrix: DenseMatrix,
    pub eigenvalues: Vec<f64>,
}

/// Compresses `ρ` to `span(P) ⊗ span(Q)` and transposes the `Q` factor in the
/// `(q_1, q_2)` coordinates.
pub fn projector_compress(state: &MultipartiteState, split: &Bipartition, pair: &ProjectorPair) -> Result<Compression> {
    split.check_state(state)?;
    let (dl, dr) = (split.left_dim(), split.right_dim());
    if pair.p.iter().any(|x| x.len() != dl) || pair.q.iter().any(|x| x.len() != dr) {
        return Err(Error::SplitMismatch(format!(
            "projector pair does not fit {} with dims ({dl}, {dr})",
            split.name()
        )));
    }
    compress_bipartite(&split.to_bipartite(state.rho()), pair)
}

fn compress_bipartite(rho_bip: &DenseMatrix, pair: &ProjectorPair) -> Result<Compression> {
    let cols: Vec<ComplexVector> = (0..4).map(|k| vector::kron(&pair.p[k / 2], &pair.q[k % 2])).collect();
    let w = DenseMatrix::from_columns(rho_bip.rows(), &cols);
    let c = w.adjoint().matmul(rho_bip).matmul(&w);
    let matrix = DenseMatrix::from_fn(4, 4, |r, s| {
        let (a, b) = (r / 2, r % 2);
        let (a2, b2) = (s / 2, s % 2);
        c.get(2 * a + b2, 2 * a2 + b)
    });
    let eigenvalues = hermitian_eig(&matrix, 1e-9)?.eigenvalues;
    Ok(Compression { matrix, eigenvalues })
}

/// Tolerance for matching entries against the five printed patterns.
pub const FORM_TOL: f64 = 1e-10;

/// The five 4x4 patterns with the third one completed to a Hermitian matrix.
pub fn five_form_patterns(a: f64) -> [[[f64; 4]; 4]; 5] {
    let mut f = crate::states::reference::five_forms(a);
    for form in f.iter_mut() {
        for i in 0..4 {
            for j in 0..4 {
                let m = form[i][j].max(form[j][i]);
                form[i][j] = m;
            }
        }
    }
    f
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedCompression {
    pub p: [usize; 2],
    pub q: [usize; 2],
    /// 1-based form number, `None` when no pattern matches.
    pub form: Option<usize>,
    pub has_zero_row: bool,
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiveFormReport {
    pub n: usize,
    pub a: f64,
    pub total: usize,
    pub counts: [usize; 5],
    /// Compressions matching none of the five patterns.
    pub residual: usize,
    /// Residual compressions with a zero row.
    pub residual_with_zero_row: usize,
    pub coverage: f64,
    /// All compressions PSD within `-1e-12`.
    pub all_psd: bool,
    pub min_eigenvalue: f64,
    /// Compressions with an eigenvalue below `-1e-12`.
    pub exceptional: Vec<ClassifiedCompression>,
    pub entries: Vec<ClassifiedCompression>,
}

fn matches_pattern(j: &DenseMatrix, form: &[[f64; 4]; 4], perm: &[usize; 4]) -> bool {
    (0..4).all(|r| (0..4).all(|c| (j.get(perm[r], perm[c]) - re(form[r][c])).norm() <= FORM_TOL))
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| (0..i).all(|k| p[k] != p[i])) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// 1-based index of the first pattern that `j` equals up to a simultaneous
/// row/column permutation.
pub fn classify_form(j: &DenseMatrix, a: f64) -> Option<usize> {
    let forms = five_form_patterns(a);
    let perms = permutations4();
    forms
        .iter()
        .position(|f| perms.iter().any(|p| matches_pattern(j, f, p)))
        .map(|k| k + 1)
}

/// Classifies every basis-pair compression of `ρ^{T_BC}` (split `A-(BC)`),
/// scaled by `(8n³-1)a + 1`, against the five patterns.
///
/// `state` should be the consistent-variant `ρ_a` with the printed weights, for
/// which the scaled entries are exactly the symbolic values.
pub fn five_form_classify(state: &MultipartiteState, n: usize, a: f64) -> Result<FiveFormReport> {
    let d = 2 * n;
    let split = Bipartition::a_bc([d, d, d]);
    split.check_state(state)?;
    let scale = crate::states::mixing_count(n) * a + 1.0;
    let pt = split.pt_right(state.rho())?.scale_real(scale);
    let pairs = basis_pairs(split.left_dim(), split.right_dim());
    let classify = |pair: &ProjectorPair| -> Result<ClassifiedCompression> {
        let (p, q) = pair.indices.expect("basis pairs carry indices");
        let idx: Vec<usize> = (0..4).map(|k| p[k / 2] * split.right_dim() + q[k % 2]).collect();
        let j = pt.principal_submatrix(&idx);
        let has_zero_row = (0..4).any(|r| (0..4).all(|c| j.get(r, c).norm() <= FORM_TOL));
        let min_eigenvalue = hermitian_eig(&j, 1e-9)?.min() / scale;
        Ok(ClassifiedCompression {
            p,
            q,
            form: classify_form(&j, a),
            has_zero_row,
            min_eigenvalue,
        })
    };

    #[cfg(feature = "parallel")]
    let entries: Vec<Result<ClassifiedCompression>> = {
        use rayon::prelude::*;
        pairs.par_iter().map(classify).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let entries: Vec<Result<ClassifiedCompression>> = pairs.iter().map(classify).collect();
    let entries: Vec<ClassifiedCompression> = entries.into_iter().collect::<Result<_>>()?;

    let mut counts = [0; 5];
    let mut residual = 0;
    let mut residual_with_zero_row = 0;
    for e in &entries {
        match e.form {
            Some(k) => counts[k - 1] += 1,
            None => {
                residual += 1;
                if e.has_zero_row {
                    residual_with_zero_row += 1;
                }
            }
        }
    }
    let min_eigenvalue = entries.iter().map(|e| e.min_eigenvalue).fold(f64::INFINITY, f64::min);
    let exceptional: Vec<ClassifiedCompression> =
        entries.iter().filter(|e| e.min_eigenvalue < -1e-12).cloned().collect();
    let total = entries.len();
    Ok(FiveFormReport {
        n,
        a,
        total,
        counts,
        residual,
        residual_with_zero_row,
        coverage: if total == 0 {
            0.0
        } else {
            (total - residual) as f64 / total as f64
        },
        all_psd: exceptional.is_empty(),
        min_eigenvalue,
        exceptional,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{sigma_b, ConstructionVariant, ExtraProjector, Normalization};

    #[test]
    fn product_vector_value_nonnegative() {
        let s = sigma_b(0.5).unwrap();
        let split = Bipartition::a_bc([2, 2, 2]);
        let psi = SchmidtRank2Vector::new(
            split.clone(),
            [1.0, 0.0],
            [vector::basis(2, 0), vector::basis(2, 1)],
            [vector::basis(4, 1), vector::basis(4, 2)],
        )
        .unwrap();
        assert!(pt_expectation(&s, &split, &psi).unwrap() >= -1e-12);
        let other = Bipartition::b_ac([2, 2, 2]);
        assert!(matches!(pt_expectation(&s, &other, &psi), Err(Error::SplitMismatch(_))));
    }

    #[test]
    fn exact_and_see_saw_agree_for_qubit_side() {
        let s = sigma_b(0.5).unwrap();
        for split in [Bipartition::a_bc([2, 2, 2]), Bipartition::b_ac([2, 2, 2])] {
            let exact = rank2_min(&s, &split, &SearchBudget::default()).unwrap();
            let saw = rank2_see_saw(
                &s,
                &split,
                &SearchBudget {
                    restarts: 4,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(exact.method, Rank2Method::Exact);
            assert!(exact.value < 0.0);
            assert!((exact.value - saw.value).abs() < 1e-8);
            assert!(saw.monotone);
            let w = pt_expectation(&s, &split, &exact.witness).unwrap();
            assert!((w - exact.value).abs() < 1e-12);
        }
    }

    #[test]
    fn m_identity_on_random_y() {
        let s = sigma_b(0.5).unwrap();
        let split = Bipartition::a_bc([2, 2, 2]);
        let m = build_m(&s, &split, &vector::basis(4, 0), &vector::basis(4, 1)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let y = vector::normalized(&random_complex(&mut rng, 4)).unwrap();
            let (u1, u2) = (y[..2].to_vec(), y[2..].to_vec());
            let (c1, c2) = (vector::norm(&u1), vector::norm(&u2));
            let psi = vector::add(
                &vector::kron(&u1, &vector::basis(4, 0)),
                &vector::kron(&u2, &vector::basis(4, 1)),
            );
            let op = PartialTransposeOperator::new(&s, &split).unwrap();
            assert!((op.value(&psi) - m.value(&y)).abs() < 1e-12);
            assert!((c1 * c1 + c2 * c2 - 1.0).abs() < 1e-12);
        }
        assert!(matches!(
            build_m(&s, &split, &vector::basis(4, 0), &vector::basis(4, 0)),
            Err(Error::NotOrthonormal(_))
        ));
    }

    #[test]
    fn compression_eigenvalues_at_half() {
        let s = sigma_b(0.5).unwrap();
        let split = Bipartition::a_bc([2, 2, 2]);
        let c = projector_compress(&s, &split, &ProjectorPair::basis(2, 4, [0, 1], [0, 1])).unwrap();
        let mut nz: Vec<f64> = c.eigenvalues.iter().copied().filter(|x| x.abs() > 1e-12).collect();
        nz.sort_by(f64::total_cmp);
        let r = 0.5f64.sqrt() / 2.0;
        let expect = [1.0 / 9.0, (1.0 - r) / 4.5, (1.0 + r) / 4.5];
        assert_eq!(nz.len(), 3);
        for (x, e) in nz.iter().zip(expect) {
            assert!((x - e).abs() < 1e-12, "{x} vs {e}");
        }
    }

    #[test]
    fn form_one_for_identity_pattern() {
        let a = 0.4;
        let j = DenseMatrix::diag_real(&[a, a, a, a]);
        assert_eq!(classify_form(&j, a), Some(1));
        let mut k = DenseMatrix::diag_real(&[a, a, (1.0 + a) / 2.0, a]);
        assert_eq!(classify_form(&k, a), Some(2));
        k = DenseMatrix::diag_real(&[a, 0.0, a, a]);
        assert_eq!(classify_form(&k, a), None);
    }

    #[test]
    fn five_forms_n1() {
        let v = ConstructionVariant::new(ExtraProjector::Consistent, Normalization::PrintedWeights);
        let s = crate::states::rho_a(1, 0.5, v).unwrap();
        let r = five_form_classify(&s, 1, 0.5).unwrap();
        assert_eq!(r.total, 6);
        assert_eq!(r.counts.iter().sum::<usize>() + r.residual, 6);
    }
}
