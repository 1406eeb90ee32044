//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string; errors surface as JS exceptions. The
//! `*_json` functions hold the logic and are usable from native code.

use entwb_core::bipartition::{partial_transpose_state, Bipartition};
use entwb_core::distill::{projector_compress, rank2_min, ProjectorPair, SearchBudget};
use entwb_core::party::Party;
use entwb_core::states::{rho_a, sigma_b, ConstructionVariant};
use entwb_core::tensor::{hermitian_eig, HERMITIAN_TOL};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct SpectrumPoint {
    b: f64,
    t_c: Vec<f64>,
    t_bc: Vec<f64>,
    t_ac: Vec<f64>,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Eigenvalues of `σ_b^{T_C}`, `σ_b^{T_BC}` and `σ_b^{T_AC}` on `steps`
/// evenly spaced `b` in `[lo, hi]`.
pub fn pt_spectra_json(lo: f64, hi: f64, steps: usize) -> Result<String, String> {
    if steps == 0 || steps > 1000 {
        return Err("steps must be in 1..=1000".into());
    }
    let mut points = Vec::with_capacity(steps);
    for k in 0..steps {
        let b = if steps == 1 {
            lo
        } else {
            lo + (hi - lo) * k as f64 / (steps - 1) as f64
        };
        let s = sigma_b(b).map_err(err)?;
        let spec = |parties: &[Party]| -> Result<Vec<f64>, String> {
            let pt = partial_transpose_state(&s, parties).map_err(err)?;
            Ok(hermitian_eig(&pt, HERMITIAN_TOL).map_err(err)?.eigenvalues)
        };
        points.push(SpectrumPoint {
            b,
            t_c: spec(&[Party::C])?,
            t_bc: spec(&[Party::B, Party::C])?,
            t_ac: spec(&[Party::A, Party::C])?,
        });
    }
    serde_json::to_string(&points).map_err(err)
}

/// Eigenvalues of the `P ⊗ Q` compression of `σ_b^Γ`, with `P`, `Q` spanned
/// by the basis vectors at the given 0-based indices of the two sides.
pub fn compression_json(b: f64, split: &str, p: [usize; 2], q: [usize; 2]) -> Result<String, String> {
    let s = sigma_b(b).map_err(err)?;
    let split = Bipartition::parse(split, s.dims()).map_err(err)?;
    let (dl, dr) = (split.left_dim(), split.right_dim());
    if p[0] == p[1] || q[0] == q[1] || p.iter().any(|&i| i >= dl) || q.iter().any(|&i| i >= dr) {
        return Err(format!(
            "need two distinct indices below {dl} for P and below {dr} for Q"
        ));
    }
    let c = projector_compress(&s, &split, &ProjectorPair::basis(dl, dr, p, q)).map_err(err)?;
    serde_json::to_string(&serde_json::json!({
        "b": b,
        "split": split.name(),
        "eigenvalues": c.eigenvalues,
        "psd": c.eigenvalues[0] >= -1e-12,
    }))
    .map_err(err)
}

/// Minimum of `<ψ|ρ^Γ|ψ>` over Schmidt-rank-2 `ψ` for `ρ_a` (`σ_a` at `n = 1`).
pub fn rank2_json(n: usize, a: f64, split: &str, restarts: usize, iters: usize, seed: u64) -> Result<String, String> {
    if n == 0 || n > 2 {
        return Err("n must be 1 or 2 in the browser".into());
    }
    let s = rho_a(n, a, ConstructionVariant::default()).map_err(err)?;
    let split = Bipartition::parse(split, s.dims()).map_err(err)?;
    let r = rank2_min(&s, &split, &SearchBudget { restarts, iters, seed }).map_err(err)?;
    serde_json::to_string(&serde_json::json!({
        "n": n,
        "a": a,
        "split": r.split,
        "method": r.method,
        "value": r.value,
        "lambda_min": r.lambda_min,
        "gap": r.gap,
        "schmidt_coefficients": r.witness.c,
        "iterations": r.iterations,
        "monotone": r.monotone,
    }))
    .map_err(err)
}

#[wasm_bindgen]
pub fn pt_spectra(lo: f64, hi: f64, steps: usize) -> Result<String, JsError> {
    pt_spectra_json(lo, hi, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn compression(b: f64, split: &str, p0: usize, p1: usize, q0: usize, q1: usize) -> Result<String, JsError> {
    compression_json(b, split, [p0, p1], [q0, q1]).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn rank2(n: usize, a: f64, split: &str, restarts: usize, iters: usize, seed: u64) -> Result<String, JsError> {
    rank2_json(n, a, split, restarts, iters, seed).map_err(|e| JsError::new(&e))
}
