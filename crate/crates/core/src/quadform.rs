//! Closed-form real quadratic forms `Xᵀ ρ^Γ X` as sums of squares, evaluated
//! literally (1-based variable indices, un-normalized coefficients), and the
//! checker comparing them against the actual partially transposed matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bipartition::partial_transpose_state;
use crate::error::{Error, Result};
use crate::party::Party;
use crate::states::{mixing_count, rho_a, sigma_b, ConstructionVariant, ExtraProjector, Normalization};
use crate::tensor::{re, ComplexVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadFormKind {
    /// `σ_b^{T_BC}` on 2⊗2⊗2.
    SigmaTbc,
    /// `σ_b^{T_AC}` on 2⊗2⊗2.
    SigmaTac,
    /// `ρ_a^{T_C}` on (2n)^{⊗3}.
    RhoTc,
    /// `ρ_a^{T_BC}` on (2n)^{⊗3}.
    RhoTbc,
    /// `ρ_a^{T_AC}` on (2n)^{⊗3}.
    RhoTac,
}

impl QuadFormKind {
    pub const ALL: [QuadFormKind; 5] = [
        QuadFormKind::SigmaTbc,
        QuadFormKind::SigmaTac,
        QuadFormKind::RhoTc,
        QuadFormKind::RhoTbc,
        QuadFormKind::RhoTac,
    ];

    pub fn transposed_parties(self) -> &'static [Party] {
        match self {
            QuadFormKind::SigmaTbc | QuadFormKind::RhoTbc => &[Party::B, Party::C],
            QuadFormKind::SigmaTac | QuadFormKind::RhoTac => &[Party::A, Party::C],
            QuadFormKind::RhoTc => &[Party::C],
        }
    }

    pub fn is_sigma(self) -> bool {
        matches!(self, QuadFormKind::SigmaTbc | QuadFormKind::SigmaTac)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadFormSpec {
    pub kind: QuadFormKind,
    /// `b` for the σ kinds, `a` for the ρ kinds.
    pub param: f64,
    /// Ignored (treated as 1) for the σ kinds.
    pub n: usize,
}

impl QuadFormSpec {
    pub fn sigma(kind: QuadFormKind, b: f64) -> Self {
        Self { kind, param: b, n: 1 }
    }

    pub fn rho(kind: QuadFormKind, n: usize, a: f64) -> Self {
        Self { kind, param: a, n }
    }

    fn n_eff(&self) -> usize {
        if self.kind.is_sigma() {
            1
        } else {
            self.n
        }
    }

    /// Number of variables, `8n³`.
    pub fn arity(&self) -> usize {
        8 * self.n_eff().pow(3)
    }

    /// The normalization the closed form omits: `7b + 1` or `(8n³ - 1)a + 1`.
    pub fn prefactor(&self) -> f64 {
        mixing_count(self.n_eff()) * self.param + 1.0
    }

    /// `coef · (Σ w_k x_{i_k})²` terms with 1-based (possibly out-of-range) indices.
    fn terms(&self) -> Vec<(f64, Vec<(i64, f64)>)> {
        let p = self.param;
        let (sp, sm) = (((1.0 + p) / 2.0).sqrt(), ((1.0 - p) / 2.0).sqrt());
        let n = self.n_eff() as i64;
        let n3 = 4 * n * n * n;
        let sq = |i: i64| vec![(i, 1.0)];
        let pair = |i: i64, j: i64| vec![(i, 1.0), (j, 1.0)];
        let mut t: Vec<(f64, Vec<(i64, f64)>)> = Vec::new();
        match self.kind {
            QuadFormKind::SigmaTbc => {
                t.push((p, sq(1)));
                t.push((p, sq(8)));
                t.push((-p, sq(5)));
                t.push((p, pair(2, 5)));
                t.push((p, pair(3, 6)));
                t.push((p, pair(4, 7)));
                t.push((1.0, vec![(5, sp), (6, sm)]));
            }
            QuadFormKind::SigmaTac => {
                t.push((p, sq(2)));
                t.push((p, sq(7)));
                t.push((-p, sq(5)));
                t.push((p, pair(1, 6)));
                t.push((p, pair(3, 8)));
                t.push((p, pair(4, 5)));
                t.push((1.0, vec![(5, sp), (6, sm)]));
            }
            QuadFormKind::RhoTc => {
                for k in 0..2 * n * n {
                    for i in 2..=2 * n {
                        t.push((p, pair(i + 2 * n * k, n3 + i + 2 * n * k - 1)));
                    }
                }
                for k in 0..=(2 * n * n - 2) {
                    t.push((p, pair(1 + 2 * n * k, n3 + 4 * n + 2 * n * k)));
                }
                t.push((p, sq(n3 - 2 * n + 1)));
                t.push((1.0, vec![(n3 + 1, sm), (n3 + 2 * n, sp)]));
            }
            QuadFormKind::RhoTbc => {
                for k in 0..n {
                    for i in 2..=4 * n * n {
                        t.push((p, pair(i + 4 * k * n * n, n3 + 4 * k * n * n + i - 1)));
                    }
                }
                for k in 0..=(n - 2) {
                    t.push((p, pair(1 + 4 * k * n * n, n3 + (8 + 4 * k) * n * n)));
                }
                t.push((1.0, vec![(n3 + 2 * n, sm), (n3 + 1, sp)]));
                t.push((p, sq(n3 - 4 * n * n + 1)));
                t.push((p, sq(n3 + 4 * n * n)));
                t.push((-p, sq(n3 + 1)));
            }
            QuadFormKind::RhoTac => {
                for k in 0..2 * n * n {
                    for i in 1..2 * n {
                        t.push((p, pair(i + 2 * k * n, n3 + 2 * k * n + i - 1)));
                    }
                }
                for k in 0..=(2 * n * n - 2) {
                    t.push((p, pair(2 * n * (2 + k), n3 + 2 * k * n + 1)));
                }
                t.push((1.0, vec![(n3 + 2 * n, sm), (n3 + 1, sp)]));
                t.push((p, sq(n3 + 2 * n + 1)));
                t.push((p, sq(2 * n)));
                t.push((-p, sq(n3 + 1)));
            }
        }
        t
    }
}

/// Evaluates the closed form at a real vector of length `8n³`.
pub fn quad_form_closed(spec: &QuadFormSpec, x: &[f64]) -> Result<f64> {
    let dim = spec.arity();
    if x.len() != dim {
        return Err(Error::ArityMismatch {
            expected: dim,
            found: x.len(),
        });
    }
    let mut total = 0.0;
    for (coef, lin) in spec.terms() {
        let mut s = 0.0;
        for (idx, w) in lin {
            if idx < 1 || idx as usize > dim {
                return Err(Error::FormIndexOutOfRange { index: idx, dim });
            }
            s += w * x[idx as usize - 1];
        }
        total += coef * s * s;
    }
    Ok(total)
}

/// The partially transposed matrix the closed form is meant to reproduce.
///
/// The ρ kinds use the consistent projector with the written weights, since
/// the closed forms carry bare `a` coefficients.
pub fn target_matrix(spec: &QuadFormSpec) -> Result<crate::tensor::DenseMatrix> {
    let state = if spec.kind.is_sigma() {
        sigma_b(spec.param)?
    } else {
        rho_a(
            spec.n,
            spec.param,
            ConstructionVariant::new(ExtraProjector::Consistent, Normalization::PrintedWeights),
        )?
    };
    partial_transpose_state(&state, spec.kind.transposed_parties())
}

#[derive(Clone, Debug, Serialize)]
pub struct FormEntryMismatch {
    /// 1-based variable indices.
    pub i: usize,
    pub j: usize,
    pub closed_form: f64,
    pub matrix: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub spec: QuadFormSpec,
    pub samples: usize,
    pub seed: u64,
    /// `max |f(X) - prefactor · Xᵀ M X|` over the samples.
    pub max_abs_diff: f64,
    /// `max |f(X) - prefactor · Xᵀ M X| / (1 + |f(X)|)`.
    pub max_rel_diff: f64,
    pub tolerance: f64,
    pub holds: bool,
    /// Set when the literal form references a variable outside `1..=8n³`.
    pub evaluation_error: Option<String>,
    /// Symmetric-coefficient entries that disagree, first few only.
    pub entry_mismatches: Vec<FormEntryMismatch>,
    pub entry_mismatch_count: usize,
}

/// Relative tolerance for the identity `f(X) = prefactor · Xᵀ M X`.
pub const IDENTITY_TOL: f64 = 1e-10;

/// Compares the closed form against `prefactor · Xᵀ M X` on `samples` random
/// real vectors with entries in `[-1, 1]`, and entry by entry via polarization.
pub fn identity_check(spec: &QuadFormSpec, samples: usize, seed: u64) -> Result<IdentityCheck> {
    let m = target_matrix(spec)?;
    let dim = spec.arity();
    let pref = spec.prefactor();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check = IdentityCheck {
        spec: *spec,
        samples,
        seed,
        max_abs_diff: 0.0,
        max_rel_diff: 0.0,
        tolerance: IDENTITY_TOL,
        holds: true,
        evaluation_error: None,
        entry_mismatches: Vec::new(),
        entry_mismatch_count: 0,
    };
    for _ in 0..samples {
        let x: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let f = match quad_form_closed(spec, &x) {
            Ok(f) => f,
            Err(e) => {
                check.evaluation_error = Some(e.to_string());
                check.holds = false;
                return Ok(check);
            }
        };
        let xc: ComplexVector = x.iter().map(|&v| re(v)).collect();
        let q = pref * m.quadratic(&xc).re;
        let diff = (f - q).abs();
        check.max_abs_diff = check.max_abs_diff.max(diff);
        check.max_rel_diff = check.max_rel_diff.max(diff / (1.0 + f.abs()));
    }
    check.holds = check.max_rel_diff <= IDENTITY_TOL;

    // Symmetric coefficient matrix of the closed form, accumulated term by term.
    let mut coef = vec![0.0; dim * dim];
    for (c, lin) in spec.terms() {
        for &(i, wi) in &lin {
            for &(j, wj) in &lin {
                coef[(i as usize - 1) * dim + (j as usize - 1)] += c * wi * wj;
            }
        }
    }
    for i in 0..dim {
        for j in i..dim {
            let target = pref * m.get(i, j).re;
            let got = coef[i * dim + j];
            if (got - target).abs() > IDENTITY_TOL * (1.0 + target.abs()) {
                check.entry_mismatch_count += 1;
                if check.entry_mismatches.len() < 16 {
                    check.entry_mismatches.push(FormEntryMismatch {
                        i: i + 1,
                        j: j + 1,
                        closed_form: got,
                        matrix: target,
                    });
                }
            }
        }
    }
    if check.entry_mismatch_count > 0 {
        check.holds = false;
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(dim: usize, k1: usize) -> Vec<f64> {
        let mut x = vec![0.0; dim];
        x[k1 - 1] = 1.0;
        x
    }

    #[test]
    fn sigma_tbc_on_basis_vectors() {
        let spec = QuadFormSpec::sigma(QuadFormKind::SigmaTbc, 0.5);
        assert!((quad_form_closed(&spec, &unit(8, 5)).unwrap() - 0.75).abs() < 1e-15);
        for b in [0.1, 0.6] {
            let s = QuadFormSpec::sigma(QuadFormKind::SigmaTbc, b);
            assert!((quad_form_closed(&s, &unit(8, 1)).unwrap() - b).abs() < 1e-15);
        }
    }

    #[test]
    fn arity_checked() {
        let spec = QuadFormSpec::sigma(QuadFormKind::SigmaTbc, 0.5);
        assert_eq!(
            quad_form_closed(&spec, &[0.0; 7]),
            Err(Error::ArityMismatch { expected: 8, found: 7 })
        );
        assert_eq!(QuadFormSpec::rho(QuadFormKind::RhoTc, 2, 0.5).arity(), 64);
    }

    #[test]
    fn sigma_forms_match_direct_quadratic() {
        for kind in [QuadFormKind::SigmaTbc, QuadFormKind::SigmaTac] {
            let c = identity_check(&QuadFormSpec::sigma(kind, 0.5), 200, 7).unwrap();
            assert!(c.holds, "{kind:?}: {c:?}");
            assert!(c.max_rel_diff <= 1e-10);
        }
    }

    #[test]
    fn rho_forms_at_n1_reduce_to_sigma_forms_where_printed_consistently() {
        let tbc = identity_check(&QuadFormSpec::rho(QuadFormKind::RhoTbc, 1, 0.4), 100, 3).unwrap();
        assert!(tbc.holds);
        let tc = identity_check(&QuadFormSpec::rho(QuadFormKind::RhoTc, 1, 0.4), 100, 3).unwrap();
        assert!(tc.holds);
        // The T_AC family pairs x1 with x4 and never touches x8 at n = 1, so the
        // identity cannot hold there.
        let tac = identity_check(&QuadFormSpec::rho(QuadFormKind::RhoTac, 1, 0.4), 100, 3).unwrap();
        assert!(!tac.holds);
        assert!(tac.entry_mismatch_count > 0);
    }
}
