//! The two state families: `σ_b` on 2⊗2⊗2 and `ρ_a` on 2n⊗2n⊗2n.
//!
//! Basis labels in the public constructors are 1-based (`e_1, e_2, ...`);
//! flat indices are 0-based with party A slowest and C fastest.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::party::{flat_index, total_dim, Dims};
use crate::tensor::{re, vector, ComplexVector, DenseMatrix, C64, HERMITIAN_TOL, ZERO};

/// Which basis product carries the lone diagonal weight in `ρ_insep`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtraProjector {
    /// `e_n ⊗ e_2n ⊗ e_n`, as written for the general family.
    Printed,
    /// `e_n ⊗ e_2n ⊗ e_2n`, which reduces to `e_1 ⊗ e_2 ⊗ e_2` at `n = 1`.
    Consistent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Weights `2/(8n³-1)` and `1/(8n³-1)` exactly as written; unit trace only at `n = 1`.
    PrintedWeights,
    /// `ρ_insep` divided by its own trace before mixing.
    Renormalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstructionVariant {
    pub extra_projector: ExtraProjector,
    pub normalization: Normalization,
}

impl Default for ConstructionVariant {
    fn default() -> Self {
        Self {
            extra_projector: ExtraProjector::Consistent,
            normalization: Normalization::Renormalized,
        }
    }
}

impl ConstructionVariant {
    pub fn new(extra_projector: ExtraProjector, normalization: Normalization) -> Self {
        Self {
            extra_projector,
            normalization,
        }
    }
}

impl fmt::Display for ConstructionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = match self.extra_projector {
            ExtraProjector::Printed => "printed",
            ExtraProjector::Consistent => "consistent",
        };
        let n = match self.normalization {
            Normalization::PrintedWeights => "printed-weights",
            Normalization::Renormalized => "renormalized",
        };
        write!(f, "{e}/{n}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PureVector {
    pub dims: Dims,
    pub amplitudes: ComplexVector,
    pub label: String,
}

impl PureVector {
    pub fn new(dims: Dims, amplitudes: ComplexVector, label: impl Into<String>) -> Result<Self> {
        if amplitudes.len() != total_dim(&dims) {
            return Err(Error::DimensionMismatch {
                expected: format!("{} amplitudes", total_dim(&dims)),
                found: format!("{}", amplitudes.len()),
            });
        }
        Ok(Self {
            dims,
            amplitudes,
            label: label.into(),
        })
    }

    pub fn norm(&self) -> f64 {
        vector::norm(&self.amplitudes)
    }

    pub fn projector(&self) -> DenseMatrix {
        DenseMatrix::outer(&self.amplitudes)
    }

    /// `(|x> + |y>)/√2`.
    fn bell_pair(x: &PureVector, y: &PureVector, label: String) -> PureVector {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        PureVector {
            dims: x.dims,
            amplitudes: x
                .amplitudes
                .iter()
                .zip(&y.amplitudes)
                .map(|(a, b)| (a + b) * s)
                .collect(),
            label,
        }
    }
}

/// A tripartite density matrix with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct MultipartiteState {
    dims: Dims,
    rho: DenseMatrix,
    label: String,
    params: BTreeMap<String, f64>,
    variant: Option<ConstructionVariant>,
}

impl MultipartiteState {
    pub fn new(
        dims: Dims,
        rho: DenseMatrix,
        label: impl Into<String>,
        params: BTreeMap<String, f64>,
        variant: Option<ConstructionVariant>,
    ) -> Result<Self> {
        let d = total_dim(&dims);
        if rho.rows() != d || rho.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: format!("{d}x{d} for dims {dims:?}"),
                found: format!("{}x{}", rho.rows(), rho.cols()),
            });
        }
        rho.ensure_hermitian(HERMITIAN_TOL)?;
        Ok(Self {
            dims,
            rho,
            label: label.into(),
            params,
            variant,
        })
    }

    /// Normalized identity on the given local dimensions.
    pub fn maximally_mixed(dims: Dims) -> Self {
        let d = total_dim(&dims);
        Self {
            dims,
            rho: DenseMatrix::identity(d).scale_real(1.0 / d as f64),
            label: "maximally-mixed".into(),
            params: BTreeMap::new(),
            variant: None,
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn dim(&self) -> usize {
        total_dim(&self.dims)
    }

    pub fn rho(&self) -> &DenseMatrix {
        &self.rho
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.get(name).copied()
    }

    pub fn variant(&self) -> Option<ConstructionVariant> {
        self.variant
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }
}

fn check_unit_interval(name: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange {
            name,
            value: x,
            range: "[0, 1]",
        })
    }
}

/// `e_a ⊗ e_b ⊗ e_c` with 1-based labels.
pub fn basis_product(labels: [usize; 3], dims: Dims) -> Result<PureVector> {
    for (party, (&l, &d)) in labels.iter().zip(&dims).enumerate() {
        if l == 0 || l > d {
            return Err(Error::IndexOutOfRange {
                party,
                label: l,
                dim: d,
            });
        }
    }
    let flat = flat_index(&dims, [labels[0] - 1, labels[1] - 1, labels[2] - 1]);
    PureVector::new(
        dims,
        vector::basis(total_dim(&dims), flat),
        format!("e{}e{}e{}", labels[0], labels[1], labels[2]),
    )
}

fn mix_vector(dims: Dims, terms: &[(C64, &PureVector)], label: String) -> PureVector {
    let mut amp = vec![ZERO; total_dim(&dims)];
    for (c, v) in terms {
        for (a, x) in amp.iter_mut().zip(&v.amplitudes) {
            *a += c * x;
        }
    }
    PureVector {
        dims,
        amplitudes: amp,
        label,
    }
}

/// Vectors building `σ_b`: `Ψ_1, Ψ_2, Ψ_3`, `Φ_b` and the lone product `e_1 ⊗ e_2 ⊗ e_2`.
#[derive(Clone, Debug)]
pub struct SigmaVectors {
    pub psi: [PureVector; 3],
    pub phi: PureVector,
    pub extra: PureVector,
}

pub fn sigma_vectors(b: f64) -> Result<SigmaVectors> {
    check_unit_interval("b", b)?;
    let d = [2, 2, 2];
    let e = |i, j, k| basis_product([i, j, k], d).expect("labels within 1..=2");
    let psi = [
        PureVector::bell_pair(&e(1, 1, 1), &e(2, 1, 2), "Psi1".into()),
        PureVector::bell_pair(&e(1, 1, 2), &e(2, 2, 1), "Psi2".into()),
        PureVector::bell_pair(&e(1, 2, 1), &e(2, 2, 2), "Psi3".into()),
    ];
    let (cp, cm) = (((1.0 + b) / 2.0).sqrt(), ((1.0 - b) / 2.0).sqrt());
    let phi = mix_vector(d, &[(re(cp), &e(2, 1, 1)), (re(cm), &e(2, 1, 2))], "Phi_b".into());
    Ok(SigmaVectors {
        psi,
        phi,
        extra: e(1, 2, 2),
    })
}

/// Sums weighted rank-one projectors into a dense buffer.
struct ProjectorSum {
    n: usize,
    buf: Vec<C64>,
}

impl ProjectorSum {
    fn new(n: usize) -> Self {
        Self {
            n,
            buf: vec![ZERO; n * n],
        }
    }

    fn add(&mut self, v: &PureVector, weight: f64) {
        let support: Vec<(usize, C64)> = v
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != ZERO)
            .map(|(i, &z)| (i, z))
            .collect();
        for &(i, zi) in &support {
            for &(j, zj) in &support {
                self.buf[i * self.n + j] += zi * zj.conj() * weight;
            }
        }
    }

    fn finish(self) -> DenseMatrix {
        DenseMatrix::new(self.n, self.n, self.buf).expect("square buffer")
    }
}

/// `σ_insep = (2/7) Σ P_Ψi + (1/7) P_{e1 e2 e2}`.
pub fn sigma_insep() -> MultipartiteState {
    let v = sigma_vectors(0.0).expect("b = 0 is in range");
    let mut sum = ProjectorSum::new(8);
    for p in &v.psi {
        sum.add(p, 2.0 / 7.0);
    }
    sum.add(&v.extra, 1.0 / 7.0);
    let rho = sum.finish();
    MultipartiteState {
        dims: [2, 2, 2],
        rho,
        label: "sigma_insep".into(),
        params: BTreeMap::new(),
        variant: None,
    }
}

/// `σ_b = (7b σ_insep + P_Φb) / (7b + 1)` for `b ∈ [0, 1]`.
pub fn sigma_b(b: f64) -> Result<MultipartiteState> {
    let v = sigma_vectors(b)?;
    let insep = sigma_insep();
    let w = 7.0 * b;
    let rho = insep
        .rho
        .scale_real(w)
        .add(&v.phi.projector())
        .scale_real(1.0 / (w + 1.0));
    Ok(MultipartiteState {
        dims: [2, 2, 2],
        rho,
        label: "sigma_b".into(),
        params: BTreeMap::from([("b".to_string(), b)]),
        variant: None,
    })
}

/// Vectors building `ρ_a` on `(2n)^{⊗3}`.
#[derive(Clone, Debug)]
pub struct RhoVectors {
    pub n: usize,
    /// `Ψ_ijk`, `i ∈ 1..=n`, `j ∈ 1..=2n`, `k ∈ 1..2n`.
    pub psi_ijk: Vec<PureVector>,
    /// `Ψ_ik`, `i ∈ 1..=n`, `k ∈ 1..2n`.
    pub psi_ik: Vec<PureVector>,
    pub phi: PureVector,
    pub extra: PureVector,
}

impl RhoVectors {
    pub fn paired(&self) -> impl Iterator<Item = &PureVector> {
        self.psi_ijk.iter().chain(&self.psi_ik)
    }
}

pub fn rho_vectors(n: usize, a: f64, extra: ExtraProjector) -> Result<RhoVectors> {
    if n == 0 {
        return Err(Error::ParamOutOfRange {
            name: "n",
            value: 0.0,
            range: "n >= 1",
        });
    }
    check_unit_interval("a", a)?;
    let d = 2 * n;
    let dims = [d, d, d];
    let e = |i, j, k| basis_product([i, j, k], dims).expect("labels within 1..=2n");
    let mut psi_ijk = Vec::with_capacity(n * d * (d - 1));
    for i in 1..=n {
        for j in 1..=d {
            for k in 1..d {
                psi_ijk.push(PureVector::bell_pair(
                    &e(i, j, k),
                    &e(n + i, j, k + 1),
                    format!("Psi_{i},{j},{k}"),
                ));
            }
        }
    }
    let mut psi_ik = Vec::with_capacity(n * (d - 1));
    for i in 1..=n {
        for k in 1..d {
            psi_ik.push(PureVector::bell_pair(
                &e(i, k, d),
                &e(n + i, k + 1, 1),
                format!("Psi_{i},{k}"),
            ));
        }
    }
    let (cp, cm) = (((1.0 + a) / 2.0).sqrt(), ((1.0 - a) / 2.0).sqrt());
    let phi = mix_vector(
        dims,
        &[(re(cp), &e(n + 1, 1, 1)), (re(cm), &e(n + 1, 1, d))],
        "Phi_a".into(),
    );
    let extra = match extra {
        ExtraProjector::Printed => e(n, d, n),
        ExtraProjector::Consistent => e(n, d, d),
    };
    Ok(RhoVectors {
        n,
        psi_ijk,
        psi_ik,
        phi,
        extra,
    })
}

/// `N = 8n³ - 1`.
pub fn mixing_count(n: usize) -> f64 {
    8.0 * (n as f64).powi(3) - 1.0
}

/// Trace of `ρ_insep` with the written weights: `(2(4n³ - n) + 1) / (8n³ - 1)`.
pub fn insep_weight_trace(n: usize) -> f64 {
    let nf = n as f64;
    (2.0 * (4.0 * nf.powi(3) - nf) + 1.0) / mixing_count(n)
}

/// Trace of `ρ_a` in printed-weights mode.
pub fn printed_weights_trace(n: usize, a: f64) -> f64 {
    let na = mixing_count(n) * a;
    insep_weight_trace(n) * na / (na + 1.0) + 1.0 / (na + 1.0)
}

pub fn rho_insep(n: usize, variant: ConstructionVariant) -> Result<MultipartiteState> {
    let v = rho_vectors(n, 0.0, variant.extra_projector)?;
    let d = 2 * n;
    let big_n = mixing_count(n);
    let mut sum = ProjectorSum::new(d * d * d);
    for p in v.paired() {
        sum.add(p, 2.0 / big_n);
    }
    sum.add(&v.extra, 1.0 / big_n);
    let mut rho = sum.finish();
    if variant.normalization == Normalization::Renormalized {
        let t = rho.trace().re;
        rho = rho.scale_real(1.0 / t);
    }
    Ok(MultipartiteState {
        dims: [d, d, d],
        rho,
        label: "rho_insep".into(),
        params: BTreeMap::from([("n".to_string(), n as f64)]),
        variant: Some(variant),
    })
}

/// `ρ_a = (N a ρ_insep + P_Φa) / (N a + 1)` with `N = 8n³ - 1`.
pub fn rho_a(n: usize, a: f64, variant: ConstructionVariant) -> Result<MultipartiteState> {
    let v = rho_vectors(n, a, variant.extra_projector)?;
    let insep = rho_insep(n, variant)?;
    let w = mixing_count(n) * a;
    let rho = insep
        .rho
        .scale_real(w)
        .add(&v.phi.projector())
        .scale_real(1.0 / (w + 1.0));
    Ok(MultipartiteState {
        dims: insep.dims,
        rho,
        label: "rho_a".into(),
        params: BTreeMap::from([("a".to_string(), a), ("n".to_string(), n as f64)]),
        variant: Some(variant),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    /// 0-based.
    pub row: usize,
    pub col: usize,
    pub computed: C64,
    pub reference: C64,
}

/// Every position where `|computed - reference| > tol`, in row-major order.
pub fn matrix_compare(computed: &DenseMatrix, reference: &DenseMatrix, tol: f64) -> Result<Vec<Mismatch>> {
    if (computed.rows(), computed.cols()) != (reference.rows(), reference.cols()) {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{}", reference.rows(), reference.cols()),
            found: format!("{}x{}", computed.rows(), computed.cols()),
        });
    }
    let mut out = Vec::new();
    for i in 0..computed.rows() {
        for j in 0..computed.cols() {
            let (c, r) = (computed.get(i, j), reference.get(i, j));
            if (c - r).norm() > tol {
                out.push(Mismatch {
                    row: i,
                    col: j,
                    computed: c,
                    reference: r,
                });
            }
        }
    }
    Ok(out)
}

/// Matrices for `σ_b` transcribed exactly as published, including the
/// `(1-b)/2` entry at 1-based position (6,6) of the state itself.
pub mod reference {
    use crate::tensor::DenseMatrix;

    fn scaled(b: f64, rows: [[f64; 8]; 8]) -> DenseMatrix {
        let flat: Vec<f64> = rows.iter().flatten().map(|x| x / (7.0 * b + 1.0)).collect();
        DenseMatrix::from_real(8, 8, &flat).expect("8x8")
    }

    pub fn sigma_b(b: f64) -> DenseMatrix {
        let (p, m, s) = ((1.0 + b) / 2.0, (1.0 - b) / 2.0, (1.0 - b * b).sqrt() / 2.0);
        scaled(
            b,
            [
                [b, 0., 0., 0., 0., b, 0., 0.],
                [0., b, 0., 0., 0., 0., b, 0.],
                [0., 0., b, 0., 0., 0., 0., b],
                [0., 0., 0., b, 0., 0., 0., 0.],
                [0., 0., 0., 0., p, s, 0., 0.],
                [b, 0., 0., 0., s, m, 0., 0.],
                [0., b, 0., 0., 0., 0., b, 0.],
                [0., 0., b, 0., 0., 0., 0., b],
            ],
        )
    }

    /// Partial transpose on C.
    pub fn sigma_b_tc(b: f64) -> DenseMatrix {
        let (p, s) = ((1.0 + b) / 2.0, (1.0 - b * b).sqrt() / 2.0);
        scaled(
            b,
            [
                [b, 0., 0., 0., 0., 0., 0., b],
                [0., b, 0., 0., b, 0., 0., 0.],
                [0., 0., b, 0., 0., 0., 0., 0.],
                [0., 0., 0., b, 0., 0., b, 0.],
                [0., b, 0., 0., p, s, 0., 0.],
                [0., 0., 0., 0., s, p, 0., 0.],
                [0., 0., 0., b, 0., 0., b, 0.],
                [b, 0., 0., 0., 0., 0., 0., b],
            ],
        )
    }

    /// Partial transpose on B and C.
    pub fn sigma_b_tbc(b: f64) -> DenseMatrix {
        let (p, s) = ((1.0 + b) / 2.0, (1.0 - b * b).sqrt() / 2.0);
        scaled(
            b,
            [
                [b, 0., 0., 0., 0., 0., 0., 0.],
                [0., b, 0., 0., b, 0., 0., 0.],
                [0., 0., b, 0., 0., b, 0., 0.],
                [0., 0., 0., b, 0., 0., b, 0.],
                [0., b, 0., 0., p, s, 0., 0.],
                [0., 0., b, 0., s, p, 0., 0.],
                [0., 0., 0., b, 0., 0., b, 0.],
                [0., 0., 0., 0., 0., 0., 0., b],
            ],
        )
    }

    /// The five 4x4 patterns for compressed `ρ_a^{T_BC}` blocks, scaled by
    /// `(8n³-1)a + 1`. The third pattern is published with an asymmetric
    /// (1,4)/(4,1) pair; it is returned as published.
    pub fn five_forms(a: f64) -> [[[f64; 4]; 4]; 5] {
        let (p, s) = ((1.0 + a) / 2.0, (1.0 - a * a).sqrt() / 2.0);
        [
            [[a, 0., 0., 0.], [0., a, 0., 0.], [0., 0., a, 0.], [0., 0., 0., a]],
            [[p, 0., 0., 0.], [0., a, 0., 0.], [0., 0., a, 0.], [0., 0., 0., a]],
            [[a, 0., 0., a], [0., a, a, 0.], [0., a, a, 0.], [0., 0., 0., a]],
            [[a, 0., 0., 0.], [0., a, a, 0.], [0., a, p, 0.], [0., 0., 0., a]],
            [[a, 0., 0., 0.], [0., a, 0., 0.], [0., 0., p, s], [0., 0., s, p]],
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::party::multi_index;

    fn enumerate_position(labels: [usize; 3], dims: Dims) -> usize {
        let mut k = 0;
        for a in 1..=dims[0] {
            for b in 1..=dims[1] {
                for c in 1..=dims[2] {
                    if [a, b, c] == labels {
                        return k;
                    }
                    k += 1;
                }
            }
        }
        unreachable!()
    }

    fn hot(v: &PureVector) -> usize {
        v.amplitudes.iter().position(|z| *z != ZERO).unwrap()
    }

    #[test]
    fn basis_product_flat_positions() {
        let d = [2, 2, 2];
        for (labels, expected) in [([1, 1, 1], 0), ([2, 1, 2], 5), ([1, 2, 2], 3)] {
            let v = basis_product(labels, d).unwrap();
            assert_eq!(hot(&v), expected);
            assert_eq!(enumerate_position(labels, d), expected);
        }
        let flat = hot(&basis_product([2, 3, 1], [2, 4, 3]).unwrap());
        assert_eq!(flat, enumerate_position([2, 3, 1], [2, 4, 3]));
        assert_eq!(multi_index(&[2, 4, 3], flat), [1, 2, 0]);
    }

    #[test]
    fn basis_product_rejects_bad_labels() {
        assert!(matches!(
            basis_product([0, 1, 1], [2, 2, 2]),
            Err(Error::IndexOutOfRange { party: 0, .. })
        ));
        assert!(matches!(
            basis_product([1, 1, 3], [2, 2, 2]),
            Err(Error::IndexOutOfRange { party: 2, .. })
        ));
    }

    #[test]
    fn sigma_b_entries() {
        let s = sigma_b(0.5).unwrap();
        let r = s.rho();
        assert!((r[(0, 0)].re - 1.0 / 9.0).abs() < 1e-15);
        assert!((r[(4, 4)].re - 1.0 / 6.0).abs() < 1e-15);
        assert!((r[(5, 5)].re - 1.0 / 6.0).abs() < 1e-15);
        assert!((s.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sigma_b_expands_mixture_directly() {
        // Oracle: build the mixture from explicit outer products.
        for b in [0.1, 0.37, 0.9] {
            let v = sigma_vectors(b).unwrap();
            let mut m = DenseMatrix::zeros(8, 8);
            for p in &v.psi {
                m = m.add(&p.projector().scale_real(2.0 * b));
            }
            m = m.add(&v.extra.projector().scale_real(b));
            m = m.add(&v.phi.projector());
            m = m.scale_real(1.0 / (7.0 * b + 1.0));
            assert!(m.max_abs_diff(sigma_b(b).unwrap().rho()) < 1e-15);
        }
    }

    #[test]
    fn sigma_b_parameter_checked() {
        assert!(matches!(sigma_b(1.5), Err(Error::ParamOutOfRange { .. })));
        assert!(matches!(sigma_b(-0.1), Err(Error::ParamOutOfRange { .. })));
        assert!(sigma_b(0.0).is_ok() && sigma_b(1.0).is_ok());
    }

    #[test]
    fn sigma_b_at_zero_is_phi_projector() {
        let s = sigma_b(0.0).unwrap();
        let phi = sigma_vectors(0.0).unwrap().phi;
        assert!(s.rho().max_abs_diff(&phi.projector()) < 1e-15);
    }

    #[test]
    fn published_matrix_differs_only_at_sixth_diagonal() {
        for b in [0.1, 0.5, 0.9] {
            let mm = matrix_compare(sigma_b(b).unwrap().rho(), &reference::sigma_b(b), 1e-12).unwrap();
            assert_eq!(mm.len(), 1);
            assert_eq!((mm[0].row, mm[0].col), (5, 5));
            assert!((mm[0].computed.re - (1.0 + b) / (2.0 * (7.0 * b + 1.0))).abs() < 1e-15);
        }
    }

    #[test]
    fn matrix_compare_self_and_shape() {
        let m = sigma_b(0.3).unwrap().rho().clone();
        assert!(matrix_compare(&m, &m, 0.0).unwrap().is_empty());
        assert!(matches!(
            matrix_compare(&m, &DenseMatrix::zeros(4, 4), 1e-12),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rho_n1_consistent_reduces_to_sigma() {
        for a in [0.1, 0.5, 0.9] {
            let r = rho_a(1, a, ConstructionVariant::default()).unwrap();
            let s = sigma_b(a).unwrap();
            assert!(r.rho().max_abs_diff(s.rho()) <= 1e-14);
        }
    }

    #[test]
    fn rho_n1_literal_differs_at_swapped_projector() {
        let a = 0.5;
        let lit = rho_a(
            1,
            a,
            ConstructionVariant::new(ExtraProjector::Printed, Normalization::Renormalized),
        )
        .unwrap();
        let s = sigma_b(a).unwrap();
        let diff = matrix_compare(lit.rho(), s.rho(), 1e-14).unwrap();
        // e1e2e1 -> flat 2, e1e2e2 -> flat 3.
        let pos: Vec<_> = diff.iter().map(|m| (m.row, m.col)).collect();
        assert_eq!(pos, vec![(2, 2), (3, 3)]);
    }

    #[test]
    fn rho_vectors_pair_distinct_products() {
        for n in 1..=3 {
            let v = rho_vectors(n, 0.5, ExtraProjector::Consistent).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            let mut count = 0;
            for p in v.paired() {
                assert!((p.norm() - 1.0).abs() < 1e-12);
                for (k, z) in p.amplitudes.iter().enumerate() {
                    if *z != ZERO {
                        seen.insert(k);
                        count += 1;
                    }
                }
            }
            let nf = n as f64;
            assert_eq!(count as f64, 2.0 * (4.0 * nf.powi(3) - nf));
            assert_eq!(seen.len(), count, "products reused for n = {n}");
            assert!(!seen.contains(&hot(&v.extra)), "extra projector paired for n = {n}");
        }
    }

    #[test]
    fn renormalized_rho_has_unit_trace() {
        for n in 1..=3 {
            let r = rho_a(n, 0.5, ConstructionVariant::default()).unwrap();
            assert!((r.trace() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn printed_weights_trace_formula() {
        for n in 1..=3 {
            for a in [0.2, 0.7] {
                let v = ConstructionVariant::new(ExtraProjector::Consistent, Normalization::PrintedWeights);
                let t = rho_a(n, a, v).unwrap().trace();
                assert!((t - printed_weights_trace(n, a)).abs() < 1e-12);
                assert_eq!((t - 1.0).abs() < 1e-12, n == 1);
            }
        }
    }
}
