//! Alternating-projection search for product vectors inside a subspace of
//! `C^{dL} ⊗ C^{dR}`.
//!
//! Each restart starts from a random vector of the subspace and alternates
//! between the nearest product vector (best rank-1 approximation of the
//! `dL x dR` reshaping) and the orthogonal projection back onto the subspace.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::bipartition::schmidt_decompose;
use crate::tensor::{vector, ComplexVector, DenseMatrix, C64, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub iters: usize,
    pub seed: u64,
    /// Acceptance threshold for both the subspace residual and the
    /// Schmidt-rank-2 defect of a fixed point.
    pub accept_tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            iters: 4000,
            seed: 0,
            accept_tol: 1e-8,
        }
    }
}

/// A product vector `left ⊗ right` (unit factors) found in the subspace.
#[derive(Clone, Debug, Serialize)]
pub struct ProductHit {
    pub left: ComplexVector,
    pub right: ComplexVector,
    /// Relative distance of `left ⊗ right` from the subspace.
    pub residual: f64,
    /// `c_2 / c_1` of the projected vector.
    pub schmidt_defect: f64,
    pub restart: usize,
}

impl ProductHit {
    pub fn vector(&self) -> ComplexVector {
        vector::kron(&self.left, &self.right)
    }
}

/// Two vectors are the same ray when `| |<p,q>| - |p||q| | < tol·|p||q|`.
pub fn same_ray(p: &[C64], q: &[C64], tol: f64) -> bool {
    let (np, nq) = (vector::norm(p), vector::norm(q));
    (vector::inner(p, q).norm() - np * nq).abs() < tol * np * nq
}

pub(crate) fn random_complex(rng: &mut ChaCha8Rng, len: usize) -> ComplexVector {
    (0..len)
        .map(|_| {
            let r: f64 = StandardNormal.sample(rng);
            let i: f64 = StandardNormal.sample(rng);
            C64::new(r, i)
        })
        .collect()
}

/// Puts the phase on the left factor so the largest right entry is real positive.
fn fix_phase(left: &mut [C64], right: &mut [C64]) {
    let (k, _) = right.iter().enumerate().fold(
        (0, -1.0),
        |(bk, bv), (k, z)| if z.norm() > bv + 1e-12 { (k, z.norm()) } else { (bk, bv) },
    );
    let ph = right[k] / right[k].norm();
    for z in right.iter_mut() {
        *z /= ph;
    }
    for z in left.iter_mut() {
        *z *= ph;
    }
}

fn project(basis: &DenseMatrix, cols: &[ComplexVector], v: &[C64]) -> ComplexVector {
    let mut out = vec![ZERO; basis.rows()];
    for c in cols {
        let a = vector::inner(c, v);
        for (o, x) in out.iter_mut().zip(c) {
            *o += x * a;
        }
    }
    out
}

fn run_restart(
    basis: &DenseMatrix,
    cols: &[ComplexVector],
    dl: usize,
    dr: usize,
    cfg: &SearchConfig,
    restart: usize,
) -> Option<ProductHit> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(restart as u64));
    let coeffs = random_complex(&mut rng, cols.len());
    let mut v = vector::normalized(&basis.mul_vec(&coeffs))?;
    let mut best: Option<ProductHit> = None;
    for _ in 0..cfg.iters {
        let sd = schmidt_decompose(&v, dl, dr).ok()?;
        let c1 = sd.coefficients[0];
        if c1 == 0.0 {
            return None;
        }
        let defect = sd.coefficients.get(1).copied().unwrap_or(0.0) / c1;
        let p = vector::scale(&vector::kron(&sd.left[0], &sd.right[0]), C64::new(c1, 0.0));
        let proj = project(basis, cols, &p);
        let residual = vector::norm(&vector::sub(&p, &proj)) / vector::norm(&p);
        let mut left = sd.left[0].clone();
        let mut right = sd.right[0].clone();
        fix_phase(&mut left, &mut right);
        best = Some(ProductHit {
            left,
            right,
            residual,
            schmidt_defect: defect,
            restart,
        });
        if residual < cfg.accept_tol * 1e-3 && defect < cfg.accept_tol * 1e-3 {
            break;
        }
        v = vector::normalized(&proj)?;
    }
    best.filter(|h| h.residual < cfg.accept_tol && h.schmidt_defect < cfg.accept_tol)
}

/// Product vectors in `span(basis)` (columns orthonormal, `left ⊗ right`
/// order), deduplicated up to phase and scale and sorted by residual, then
/// lexicographically by amplitudes.
pub fn product_vector_search(
    basis: &DenseMatrix,
    left_dim: usize,
    right_dim: usize,
    cfg: &SearchConfig,
) -> Vec<ProductHit> {
    assert_eq!(basis.rows(), left_dim * right_dim, "basis rows must equal dL·dR");
    if basis.cols() == 0 {
        return Vec::new();
    }
    let cols = basis.columns();
    let run = |k: usize| run_restart(basis, &cols, left_dim, right_dim, cfg, k);

    #[cfg(feature = "parallel")]
    let hits: Vec<Option<ProductHit>> = {
        use rayon::prelude::*;
        (0..cfg.restarts).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let hits: Vec<Option<ProductHit>> = (0..cfg.restarts).map(run).collect();

    merge_hits(hits.into_iter().flatten().collect())
}

/// Product vectors `a ⊗ c` with `a ⊗ c ∈ span(first)` and `a ⊗ c̄ ∈ span(second)`.
///
/// Each iteration projects `a ⊗ c` onto the first subspace and `a ⊗ c̄` onto
/// the second, then refits `(a, c)` by alternating least squares against both
/// projections. `residual` is the larger of the two relative residuals.
pub fn qualifying_product_search(
    first: &DenseMatrix,
    second: &DenseMatrix,
    left_dim: usize,
    right_dim: usize,
    cfg: &SearchConfig,
) -> Vec<ProductHit> {
    let d = left_dim * right_dim;
    assert_eq!(first.rows(), d, "basis rows must equal dL·dR");
    assert_eq!(second.rows(), d, "basis rows must equal dL·dR");
    if first.cols() == 0 || second.cols() == 0 {
        return Vec::new();
    }
    let (c1, c2) = (first.columns(), second.columns());
    let run = |k: usize| run_joint(first, &c1, second, &c2, left_dim, right_dim, cfg, k);

    #[cfg(feature = "parallel")]
    let hits: Vec<Option<ProductHit>> = {
        use rayon::prelude::*;
        (0..cfg.restarts).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let hits: Vec<Option<ProductHit>> = (0..cfg.restarts).map(run).collect();

    merge_hits(hits.into_iter().flatten().collect())
}

#[allow(clippy::too_many_arguments)]
fn run_joint(
    first: &DenseMatrix,
    c1: &[ComplexVector],
    second: &DenseMatrix,
    c2: &[ComplexVector],
    dl: usize,
    dr: usize,
    cfg: &SearchConfig,
    restart: usize,
) -> Option<ProductHit> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(restart as u64));
    let mut a = random_complex(&mut rng, dl);
    let mut c = random_complex(&mut rng, dr);
    let mut residual = f64::INFINITY;
    for _ in 0..cfg.iters {
        let w1 = project(first, c1, &vector::kron(&a, &c));
        let w2 = project(second, c2, &vector::kron(&a, &vector::conj(&c)));
        // minimize |W1 - a c^T|² + |W2 - a c^H|² alternately in a and c
        for _ in 0..2 {
            let nc = vector::norm(&c).powi(2);
            a = (0..dl)
                .map(|l| {
                    (0..dr)
                        .map(|r| w1[l * dr + r] * c[r].conj() + w2[l * dr + r] * c[r])
                        .sum::<C64>()
                        / (2.0 * nc)
                })
                .collect();
            let na = vector::norm(&a).powi(2);
            if na == 0.0 {
                return None;
            }
            c = (0..dr)
                .map(|r| {
                    (0..dl)
                        .map(|l| w1[l * dr + r] * a[l].conj() + w2[l * dr + r].conj() * a[l])
                        .sum::<C64>()
                        / (2.0 * na)
                })
                .collect();
        }
        let nc = vector::norm(&c);
        if nc == 0.0 {
            return None;
        }
        c = vector::scale(&c, C64::new(1.0 / nc, 0.0));
        a = vector::normalized(&a)?;
        let p = vector::kron(&a, &c);
        let q = vector::kron(&a, &vector::conj(&c));
        let r1 = vector::norm(&vector::sub(&p, &project(first, c1, &p)));
        let r2 = vector::norm(&vector::sub(&q, &project(second, c2, &q)));
        residual = r1.max(r2);
        if residual < cfg.accept_tol * 1e-3 {
            break;
        }
    }
    if residual >= cfg.accept_tol {
        return None;
    }
    fix_phase(&mut a, &mut c);
    Some(ProductHit {
        left: a,
        right: c,
        residual,
        schmidt_defect: 0.0,
        restart,
    })
}

fn merge_hits(mut hits: Vec<ProductHit>) -> Vec<ProductHit> {
    hits.sort_by(|a, b| {
        a.residual.total_cmp(&b.residual).then_with(|| {
            let (va, vb) = (a.vector(), b.vector());
            va.iter()
                .zip(&vb)
                .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    let mut unique: Vec<ProductHit> = Vec::new();
    for h in hits {
        let v = h.vector();
        if !unique.iter().any(|u| same_ray(&u.vector(), &v, 1e-8)) {
            unique.push(h);
        }
    }
    unique
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{re, subspace_residual};

    #[test]
    fn recovers_single_product() {
        let p = vector::normalized(&vector::kron(
            &[re(1.0), C64::new(0.0, 2.0), re(-0.5)],
            &[re(0.3), re(1.0)],
        ))
        .unwrap();
        let basis = DenseMatrix::from_columns(6, std::slice::from_ref(&p));
        let hits = product_vector_search(
            &basis,
            3,
            2,
            &SearchConfig {
                restarts: 4,
                ..Default::default()
            },
        );
        assert_eq!(hits.len(), 1);
        assert!(same_ray(&hits[0].vector(), &p, 1e-10));
    }

    #[test]
    fn entangled_line_has_no_products() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = vec![re(s), ZERO, ZERO, re(s)];
        let basis = DenseMatrix::from_columns(4, &[bell]);
        let hits = product_vector_search(
            &basis,
            2,
            2,
            &SearchConfig {
                restarts: 8,
                iters: 200,
                ..Default::default()
            },
        );
        assert!(hits.is_empty());
    }

    #[test]
    fn hits_lie_in_subspace() {
        // span{e0⊗e0, e1⊗e1, e0⊗e1}: products e0⊗(α,β) and (α,β)⊗e1 fill it.
        let cols = vec![vector::basis(4, 0), vector::basis(4, 3), vector::basis(4, 1)];
        let basis = DenseMatrix::from_columns(4, &cols);
        let hits = product_vector_search(
            &basis,
            2,
            2,
            &SearchConfig {
                restarts: 6,
                ..Default::default()
            },
        );
        assert!(!hits.is_empty());
        for h in hits {
            assert!(subspace_residual(&h.vector(), &basis).unwrap() < 1e-8);
        }
    }
}
