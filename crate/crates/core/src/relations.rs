//! Coefficient relations for product vectors `s ⊗ Ã` in the range of `ρ_a^{T_C}`.
//!
//! With `s` of length `4n²` and `Ã` of length `2n` (1-based indices), for
//! `m = 2..=2n²`:
//!
//! * shift relation: `s_m (Ã_2, …, Ã_{2n}) = s_{2n²+m} (Ã_1, …, Ã_{2n-1})`
//! * wrap relation: `s_{m-1} Ã_1 = s_{2n²+m} Ã_{2n}`
//!
//! and the implications drawn from them:
//!
//! * forward implication: `s_{m-1} = 0 ⟹ s_{2n²+m} = 0` for `m = 2..=2n²`
//! * backward implication: `s_{2n²+m} = 0 ⟹ s_m = 0` for `m = 2..=2n²-1`

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::{vector, C64};

/// Default zero test, relative to `1 + max |input|`.
pub const RELATION_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ImplicationOutcome {
    pub m: usize,
    pub premise: bool,
    pub conclusion: bool,
}

impl ImplicationOutcome {
    pub fn holds(&self) -> bool {
        !self.premise || self.conclusion
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub tolerance: f64,
    /// Largest violation of the shift relation over `m` and components.
    pub shift_defect: f64,
    pub wrap_defect: f64,
    pub shift_holds: bool,
    pub wrap_holds: bool,
    pub forward: Vec<ImplicationOutcome>,
    pub backward: Vec<ImplicationOutcome>,
    /// `s ⊗ Ã` vanishes within tolerance.
    pub assembled_zero: bool,
    /// Relations fail (nothing to check), or the implications hold, or the
    /// assembled vector is zero.
    pub consistent: bool,
}

impl RelationReport {
    pub fn relations_hold(&self) -> bool {
        self.shift_holds && self.wrap_holds
    }

    pub fn implications_hold(&self) -> bool {
        self.forward.iter().chain(&self.backward).all(ImplicationOutcome::holds)
    }
}

/// Evaluates the relations and implications for one coefficient set.
pub fn relation_check(n: usize, s: &[C64], a_tilde: &[C64], tol: f64) -> Result<RelationReport> {
    if n == 0 {
        return Err(Error::ParamOutOfRange {
            name: "n",
            value: 0.0,
            range: "n >= 1",
        });
    }
    let half = 2 * n * n;
    let d = 2 * n;
    if s.len() != 2 * half {
        return Err(Error::ArityMismatch {
            expected: 2 * half,
            found: s.len(),
        });
    }
    if a_tilde.len() != d {
        return Err(Error::ArityMismatch {
            expected: d,
            found: a_tilde.len(),
        });
    }
    let scale = 1.0 + s.iter().chain(a_tilde).map(|z| z.norm()).fold(0.0, f64::max);
    let eps = tol * scale;
    let is_zero = |z: C64| z.norm() <= eps;
    // 1-based accessors
    let sv = |k: usize| s[k - 1];
    let at = |k: usize| a_tilde[k - 1];

    let mut shift_defect: f64 = 0.0;
    let mut wrap_defect: f64 = 0.0;
    for m in 2..=half {
        for j in 1..d {
            shift_defect = shift_defect.max((sv(m) * at(j + 1) - sv(half + m) * at(j)).norm());
        }
        wrap_defect = wrap_defect.max((sv(m - 1) * at(1) - sv(half + m) * at(d)).norm());
    }
    // the products are quadratic in the inputs
    let rel_eps = tol * scale * scale;
    let forward = (2..=half)
        .map(|m| ImplicationOutcome {
            m,
            premise: is_zero(sv(m - 1)),
            conclusion: is_zero(sv(half + m)),
        })
        .collect();
    let backward = (2..half)
        .map(|m| ImplicationOutcome {
            m,
            premise: is_zero(sv(half + m)),
            conclusion: is_zero(sv(m)),
        })
        .collect();
    let assembled = vector::kron(s, a_tilde);
    let assembled_zero = assembled.iter().all(|z| z.norm() <= rel_eps);
    let mut report = RelationReport {
        n,
        tolerance: tol,
        shift_defect,
        wrap_defect,
        shift_holds: shift_defect <= rel_eps,
        wrap_holds: wrap_defect <= rel_eps,
        forward,
        backward,
        assembled_zero,
        consistent: false,
    };
    report.consistent = !report.relations_hold() || report.assembled_zero || report.implications_hold();
    Ok(report)
}

/// `s` and `Ã` of the `v4` pattern: `q = (y+1)/y`, `s_m = q^{2m-2}`,
/// `s_{2n²+1} = 1`, `s_{2n²+m} = q^{2m-3}`, `Ã = (q, 1, …, 1)`.
pub fn v4_pattern(n: usize, a: f64) -> (Vec<C64>, Vec<C64>) {
    let y = ((1.0 + a) / (1.0 - a)).sqrt();
    let q = (y + 1.0) / y;
    let half = 2 * n * n;
    let mut s = vec![C64::new(0.0, 0.0); 2 * half];
    for m in 1..=half {
        s[m - 1] = C64::new(q.powi(2 * m as i32 - 2), 0.0);
    }
    s[half] = C64::new(1.0, 0.0);
    for m in 2..=half {
        s[half + m - 1] = C64::new(q.powi(2 * m as i32 - 3), 0.0);
    }
    let mut at = vec![C64::new(1.0, 0.0); 2 * n];
    at[0] = C64::new(q, 0.0);
    (s, at)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{ONE, ZERO};

    #[test]
    fn zero_coefficients_hold_vacuously() {
        let r = relation_check(2, &[ZERO; 16], &[ONE, ONE, ZERO, ONE], RELATION_TOL).unwrap();
        assert!(r.relations_hold() && r.assembled_zero && r.consistent);
    }

    #[test]
    fn arity_is_checked() {
        assert!(matches!(
            relation_check(2, &[ZERO; 8], &[ONE; 4], RELATION_TOL),
            Err(Error::ArityMismatch { expected: 16, found: 8 })
        ));
        assert!(relation_check(1, &[ZERO; 4], &[ONE; 3], RELATION_TOL).is_err());
    }

    #[test]
    fn v4_pattern_by_substitution() {
        // n = 1: both relations reduce to identities between powers of q.
        let (s, at) = v4_pattern(1, 0.5);
        let r = relation_check(1, &s, &at, RELATION_TOL).unwrap();
        assert!(r.relations_hold());
        // n = 2: the second component of the shift relation needs s_m = s_{2n²+m}, i.e. q = 1.
        let (s, at) = v4_pattern(2, 0.5);
        let r = relation_check(2, &s, &at, RELATION_TOL).unwrap();
        assert!(r.wrap_holds);
        assert!(!r.shift_holds);
        assert!(r.shift_defect > 0.1);
    }

    #[test]
    fn premise_with_generic_factor_forces_zero() {
        // n = 1: s_1 = 0, s_4 ≠ 0; the wrap relation then needs Ã_2 = 0 and the shift relation Ã_1 = 0.
        let s = [ZERO, C64::new(0.4, 0.1), C64::new(1.0, 0.0), C64::new(0.3, 0.0)];
        let at = [C64::new(0.5, 0.2), C64::new(-0.7, 0.3)];
        let r = relation_check(1, &s, &at, RELATION_TOL).unwrap();
        assert!(!r.relations_hold());
        let r = relation_check(1, &s, &[ZERO, ZERO], RELATION_TOL).unwrap();
        assert!(r.relations_hold() && r.assembled_zero && r.consistent);
    }
}
