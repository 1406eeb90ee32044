//! Random generators and property checks shared by the property suite and the
//! acceptance run. Each check returns `Err(description)` on the first violation.

#![allow(dead_code)]

use std::collections::BTreeMap;

use entwb_core::bipartition::{partial_transpose, schmidt_decompose};
use entwb_core::party::{Dims, Party};
use entwb_core::relations::relation_check;
use entwb_core::states::MultipartiteState;
use entwb_core::tensor::{inertia_of, kron, orthonormalize, svd, vector, ComplexVector, DenseMatrix, C64, ZERO};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn gauss(rng: &mut ChaCha8Rng) -> C64 {
    let r: f64 = StandardNormal.sample(rng);
    let i: f64 = StandardNormal.sample(rng);
    C64::new(r, i)
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> ComplexVector {
    (0..len).map(|_| gauss(rng)).collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| gauss(rng))
}

pub fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> DenseMatrix {
    loop {
        let cols: Vec<ComplexVector> = (0..d).map(|_| random_vector(rng, d)).collect();
        let q = orthonormalize(&cols, 1e-6);
        if q.len() == d {
            return DenseMatrix::from_columns(d, &q);
        }
    }
}

/// `G G† / tr` with `G` square Gaussian.
pub fn random_state(rng: &mut ChaCha8Rng, dims: Dims) -> MultipartiteState {
    let d = dims.iter().product();
    let g = random_matrix(rng, d, d);
    let rho = g.matmul(&g.adjoint());
    let t = rho.trace().re;
    MultipartiteState::new(dims, rho.scale_real(1.0 / t), "random", BTreeMap::new(), None).expect("hermitian")
}

const SUBSETS: [&[Party]; 7] = [
    &[Party::A],
    &[Party::B],
    &[Party::C],
    &[Party::A, Party::B],
    &[Party::A, Party::C],
    &[Party::B, Party::C],
    &[Party::A, Party::B, Party::C],
];

/// Partial transpose is an involution and preserves trace and diagonal.
pub fn check_pt(state: &MultipartiteState) -> Result<(), String> {
    let rho = state.rho();
    for s in SUBSETS {
        let pt = partial_transpose(rho, state.dims(), s).map_err(|e| e.to_string())?;
        let back = partial_transpose(&pt, state.dims(), s).map_err(|e| e.to_string())?;
        if back.max_abs_diff(rho) != 0.0 {
            return Err(format!("involution fails on {s:?}: {}", back.max_abs_diff(rho)));
        }
        if (pt.trace() - rho.trace()).norm() > 1e-14 {
            return Err(format!("trace changes on {s:?}"));
        }
        if (0..rho.rows()).any(|i| pt.get(i, i) != rho.get(i, i)) {
            return Err(format!("diagonal changes on {s:?}"));
        }
    }
    Ok(())
}

/// Random vector of Schmidt rank `r`: rank bound, recovered rank and
/// invariance of the coefficients under `U ⊗ V`.
pub fn check_schmidt(rng: &mut ChaCha8Rng, dl: usize, dr: usize) -> Result<(), String> {
    let r = rng.random_range(1..=dl.min(dr));
    let mut v = vec![ZERO; dl * dr];
    for _ in 0..r {
        v = vector::add(&v, &vector::kron(&random_vector(rng, dl), &random_vector(rng, dr)));
    }
    let sd = schmidt_decompose(&v, dl, dr).map_err(|e| e.to_string())?;
    let rank = sd.rank(1e-9);
    if rank > dl.min(dr) || rank != r {
        return Err(format!("rank {rank}, built {r}, dims ({dl},{dr})"));
    }
    let w = kron(&random_unitary(rng, dl), &random_unitary(rng, dr)).mul_vec(&v);
    let sw = schmidt_decompose(&w, dl, dr).map_err(|e| e.to_string())?;
    let scale = sd.coefficients[0].max(1.0);
    let diff = sd
        .coefficients
        .iter()
        .zip(&sw.coefficients)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if diff > 1e-10 * scale {
        return Err(format!("coefficients move by {diff} under local unitaries"));
    }
    Ok(())
}

/// Inertia of `H` equals inertia of `S H S†` for well-conditioned `S`.
pub fn check_inertia_congruence(rng: &mut ChaCha8Rng, d: usize) -> Result<(), String> {
    let lambdas: Vec<f64> = (0..d)
        .map(|_| match rng.random_range(0..3) {
            0 => rng.random_range(0.5..2.0),
            1 => -rng.random_range(0.5..2.0),
            _ => 0.0,
        })
        .collect();
    let u = random_unitary(rng, d);
    let h = u.matmul(&DenseMatrix::diag_real(&lambdas)).matmul(&u.adjoint());
    let sv: Vec<f64> = (0..d).map(|_| rng.random_range(0.5..2.0)).collect();
    let s = random_unitary(rng, d)
        .matmul(&DenseMatrix::diag_real(&sv))
        .matmul(&random_unitary(rng, d));
    let t = s.matmul(&h).matmul(&s.adjoint());
    let t = t.add(&t.adjoint()).scale_real(0.5);
    let a = inertia_of(&h, 1e-9).map_err(|e| e.to_string())?;
    let b = inertia_of(&t, 1e-9).map_err(|e| e.to_string())?;
    if a.counts() != b.counts() {
        return Err(format!("inertia {:?} vs {:?}", a.counts(), b.counts()));
    }
    Ok(())
}

/// Coefficient sets `(s, Ã)` satisfying the shift and wrap relations: `Ã`
/// from a structured family, `s` a random element of the solution space with
/// randomly forced zeros.
pub fn random_relation_set(rng: &mut ChaCha8Rng) -> (usize, Vec<C64>, Vec<C64>) {
    let n = rng.random_range(1..=2);
    let half = 2 * n * n;
    let d = 2 * n;
    let at: Vec<C64> = match rng.random_range(0..4) {
        0 => {
            let t = C64::from_polar(rng.random_range(0.8..1.25), rng.random_range(0.0..6.3));
            (0..d).map(|j| t.powi(j as i32)).collect()
        }
        1 => vector::basis(d, rng.random_range(0..d)),
        2 => (0..d)
            .map(|_| if rng.random_bool(0.5) { ZERO } else { gauss(rng) })
            .collect(),
        _ => random_vector(rng, d),
    };
    let len = 2 * half;
    let mut rows: Vec<Vec<C64>> = Vec::new();
    // 0-based: s index m-1, Ã index j-1
    for m in 2..=half {
        for j in 1..d {
            let mut r = vec![ZERO; len];
            r[m - 1] += at[j];
            r[half + m - 1] -= at[j - 1];
            rows.push(r);
        }
        let mut r = vec![ZERO; len];
        r[m - 2] += at[0];
        r[half + m - 1] -= at[d - 1];
        rows.push(r);
    }
    for k in 0..len {
        if rng.random_bool(0.2) {
            rows.push(vector::basis(len, k));
        }
    }
    while rows.len() < len {
        rows.push(vec![ZERO; len]);
    }
    let k = DenseMatrix::from_fn(rows.len(), len, |i, j| rows[i][j]);
    let dec = svd(&k);
    let top = dec.singular_values[0].max(1.0);
    let null: Vec<ComplexVector> = (0..len)
        .filter(|&j| dec.singular_values[j] <= 1e-12 * top)
        .map(|j| dec.v.column(j))
        .collect();
    let mut s = vec![ZERO; len];
    if !null.is_empty() {
        if rng.random_bool(0.3) {
            s = null[rng.random_range(0..null.len())].clone();
        } else {
            for v in &null {
                s = vector::add(&s, &vector::scale(v, gauss(rng)));
            }
        }
    }
    // exact zeros where the solution space forces them numerically
    for z in s.iter_mut() {
        if z.norm() < 1e-13 {
            *z = ZERO;
        }
    }
    (n, s, at)
}

/// Implications hold, or the assembled vector `s ⊗ Ã` vanishes.
pub fn check_relations(n: usize, s: &[C64], at: &[C64]) -> Result<(), String> {
    let r = relation_check(n, s, at, 1e-10).map_err(|e| e.to_string())?;
    if !r.relations_hold() {
        return Err(format!(
            "generator produced a set violating the relations: shift {} wrap {}",
            r.shift_defect, r.wrap_defect
        ));
    }
    if !(r.implications_hold() || r.assembled_zero) {
        return Err(format!("implication fails for n={n}: {:?} {:?}", r.forward, r.backward));
    }
    Ok(())
}

/// Dims with each entry in `1..=4`.
pub fn random_dims(rng: &mut ChaCha8Rng) -> Dims {
    [
        rng.random_range(1..=4),
        rng.random_range(1..=4),
        rng.random_range(1..=4),
    ]
}
