//! PPT test, candidate product vectors and the range criterion.

use std::fmt;

use serde::Serialize;

use crate::bipartition::{partial_transpose_state, Bipartition};
use crate::error::{Error, Result};
use crate::party::Party;
use crate::search::{qualifying_product_search, same_ray, ProductHit, SearchConfig};
use crate::states::MultipartiteState;
use crate::tensor::{
    hermitian_eig, range_basis, re, subspace_residual, vector, ComplexVector, DenseMatrix, C64, HERMITIAN_TOL,
    MEMBER_TOL, ONE, RANK_TOL, ZERO,
};

/// Default absolute tolerance on `λ_min` for the PPT test.
pub const PSD_TOL: f64 = 1e-12;
/// Residuals above this are definite non-members; between [`MEMBER_TOL`] and
/// this value membership is undecided.
pub const NONMEMBER_TOL: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PptVerdict {
    Ppt,
    Npt,
}

#[derive(Clone, Debug, Serialize)]
pub struct PptOutcome {
    pub split: String,
    pub verdict: PptVerdict,
    pub lambda_min: f64,
    pub threshold: f64,
    /// Eigenvector of `λ_min` (tripartite order), present for NPT.
    pub witness: Option<ComplexVector>,
}

/// NPT iff `λ_min(ρ^{T_right}) < -tol·max(1, ||ρ^{T_right}||_2)`.
pub fn ppt_test(state: &MultipartiteState, split: &Bipartition, tol: f64) -> Result<PptOutcome> {
    split.check_state(state)?;
    let pt = partial_transpose_state(state, split.right())?;
    let e = hermitian_eig(&pt, HERMITIAN_TOL)?;
    let threshold = e.threshold(tol);
    let lambda_min = e.min();
    let npt = lambda_min < -threshold;
    Ok(PptOutcome {
        split: split.name(),
        verdict: if npt { PptVerdict::Npt } else { PptVerdict::Ppt },
        lambda_min,
        threshold,
        witness: npt.then(|| e.vector(0)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    U1,
    U2,
    U3,
    U4,
    V1,
    V2,
    V3,
    V4,
    Searched,
}

impl Family {
    pub const U: [Family; 4] = [Family::U1, Family::U2, Family::U3, Family::U4];
    pub const V: [Family; 4] = [Family::V1, Family::V2, Family::V3, Family::V4];

    pub fn is_u(self) -> bool {
        matches!(self, Family::U1 | Family::U2 | Family::U3 | Family::U4)
    }

    pub fn is_v(self) -> bool {
        matches!(self, Family::V1 | Family::V2 | Family::V3 | Family::V4)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::U1 => "u1",
            Family::U2 => "u2",
            Family::U3 => "u3",
            Family::U4 => "u4",
            Family::V1 => "v1",
            Family::V2 => "v2",
            Family::V3 => "v3",
            Family::V4 => "v4",
            Family::Searched => "searched",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

/// Free coefficients and derived quantities of a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CandidateParams {
    /// Overall coefficient (`A_1`, `A_4`, `A_5`, `B`, `A_{4n³-2n+1}` or `A_2`).
    pub coefficient: C64,
    /// `s_{2n²+1}` for `v3`.
    pub s: Option<C64>,
    /// `b` or `a`.
    pub param: Option<f64>,
    /// `x = sqrt((1+b)/(1-b))` or `y = sqrt((1+a)/(1-a))`.
    pub ratio: Option<f64>,
    pub n: usize,
    /// Whether the right factor has been conjugated.
    pub conjugated: bool,
}

impl CandidateParams {
    fn plain() -> Self {
        Self {
            coefficient: ONE,
            s: None,
            param: None,
            ratio: None,
            n: 1,
            conjugated: false,
        }
    }
}

/// A bipartite product vector `left_factor ⊗ right_factor` with its family tag.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateProductVector {
    pub split: Bipartition,
    pub left_factor: ComplexVector,
    pub right_factor: ComplexVector,
    pub family: Family,
    pub params: CandidateParams,
}

impl CandidateProductVector {
    pub fn new(
        split: Bipartition,
        left_factor: ComplexVector,
        right_factor: ComplexVector,
        family: Family,
        params: CandidateParams,
    ) -> Result<Self> {
        let c = Self {
            split,
            left_factor,
            right_factor,
            family,
            params,
        };
        c.check_form()?;
        Ok(c)
    }

    fn check_form(&self) -> Result<()> {
        if self.left_factor.len() != self.split.left_dim() || self.right_factor.len() != self.split.right_dim() {
            return Err(Error::NotProductForm(format!(
                "factor lengths ({}, {}) do not match {} dims ({}, {})",
                self.left_factor.len(),
                self.right_factor.len(),
                self.split.name(),
                self.split.left_dim(),
                self.split.right_dim()
            )));
        }
        Ok(())
    }

    /// `left ⊗ right` in bipartite order.
    pub fn bipartite(&self) -> ComplexVector {
        vector::kron(&self.left_factor, &self.right_factor)
    }

    /// The assembled vector in tripartite flat order.
    pub fn flat(&self) -> ComplexVector {
        self.split.assemble(&self.left_factor, &self.right_factor)
    }

    pub fn norm(&self) -> f64 {
        vector::norm(&self.left_factor) * vector::norm(&self.right_factor)
    }

    /// Conjugates the factor on `side` entrywise.
    pub fn partial_conjugate(&self, side: Side) -> Result<Self> {
        self.check_form()?;
        let mut out = self.clone();
        match side {
            Side::Left => out.left_factor = vector::conj(&self.left_factor),
            Side::Right => {
                out.right_factor = vector::conj(&self.right_factor);
                out.params.conjugated = !self.params.conjugated;
            }
        }
        Ok(out)
    }
}

pub fn partial_conjugate(v: &CandidateProductVector, side: Side) -> Result<CandidateProductVector> {
    v.partial_conjugate(side)
}

/// Inputs for [`build_candidate`]. `param` is `b` for the u-families and `a`
/// for the v-families.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CandidateSpec {
    pub param: f64,
    pub n: usize,
    pub coefficient: C64,
    /// `s_{2n²+1}`, used by `v3` only.
    pub s: C64,
}

impl CandidateSpec {
    pub fn sigma(b: f64) -> Self {
        Self {
            param: b,
            n: 1,
            coefficient: ONE,
            s: DEFAULT_S,
        }
    }

    pub fn rho(n: usize, a: f64) -> Self {
        Self {
            param: a,
            n,
            coefficient: ONE,
            s: DEFAULT_S,
        }
    }
}

/// Generic nonzero `s_{2n²+1}` used when none is given.
pub const DEFAULT_S: C64 = C64::new(0.7, 0.2);

fn open_unit(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::ParamOutOfRange {
            name,
            value: v,
            range: "(0, 1)",
        });
    }
    Ok(())
}

fn nonzero(name: &'static str, z: C64) -> Result<()> {
    if z == ZERO {
        return Err(Error::ParamOutOfRange {
            name,
            value: 0.0,
            range: "nonzero",
        });
    }
    Ok(())
}

fn unit(dim: usize, k1: usize) -> ComplexVector {
    vector::basis(dim, k1 - 1)
}

/// `sqrt((1+t)/(1-t))`.
pub fn ratio_of(t: f64) -> f64 {
    ((1.0 + t) / (1.0 - t)).sqrt()
}

/// The printed candidate of `family` on the `(AB)-C` split.
pub fn build_candidate(family: Family, spec: &CandidateSpec) -> Result<CandidateProductVector> {
    if family == Family::Searched {
        return Err(Error::NotProductForm("searched vectors have no closed form".into()));
    }
    let name = if family.is_u() { "b" } else { "a" };
    open_unit(name, spec.param)?;
    nonzero("coefficient", spec.coefficient)?;
    let t = ratio_of(spec.param);
    let mut params = CandidateParams {
        coefficient: spec.coefficient,
        s: None,
        param: Some(spec.param),
        ratio: Some(t),
        n: spec.n,
        conjugated: false,
    };
    let (left, right, dims) = if family.is_u() {
        if spec.n != 1 {
            return Err(Error::ParamOutOfRange {
                name: "n",
                value: spec.n as f64,
                range: "n = 1 for the u-families",
            });
        }
        params.n = 1;
        let x = t;
        let (l, r) = match family {
            Family::U1 => (vec![ONE, ONE, re(x / (x - 1.0)), ONE], vec![ONE, ONE]),
            Family::U2 => (vec![ONE, ZERO, re(-x), ZERO], vec![ONE, ZERO]),
            Family::U3 => (vec![ZERO, ONE, ZERO, ZERO], vec![ZERO, ONE]),
            _ => (vec![ZERO, ZERO, ONE, ZERO], vec![re(x), ONE]),
        };
        (l, r, [2, 2, 2])
    } else {
        if spec.n == 0 {
            return Err(Error::ParamOutOfRange {
                name: "n",
                value: 0.0,
                range: "n >= 1",
            });
        }
        let n = spec.n;
        let d = 2 * n;
        let ld = d * d;
        let half = 2 * n * n;
        let y = t;
        let (l, r) = match family {
            Family::V1 => {
                let mut r = unit(d, 1);
                r[d - 1] = re(y);
                (unit(ld, half + 1), r)
            }
            Family::V2 => (unit(ld, half), unit(d, 1)),
            Family::V3 => {
                nonzero("s", spec.s)?;
                params.s = Some(spec.s);
                let mut l = unit(ld, 1);
                l[half] = spec.s;
                let mut r = vec![ZERO; d];
                let mut p = ONE;
                for z in r.iter_mut().skip(1) {
                    *z = p;
                    p *= spec.s;
                }
                (l, r)
            }
            _ => {
                let q = (y + 1.0) / y;
                let mut l = vec![ZERO; ld];
                for m in 1..=half {
                    l[m - 1] = re(q.powi(2 * m as i32 - 2));
                }
                l[half] = ONE;
                for m in 2..=half {
                    l[half + m - 1] = re(q.powi(2 * m as i32 - 3));
                }
                let mut r = vec![ONE; d];
                r[0] = re(q);
                (l, r)
            }
        };
        (l, r, [d, d, d])
    };
    let left = vector::scale(&left, spec.coefficient);
    CandidateProductVector::new(Bipartition::ab_c(dims), left, right, family, params)
}

/// Product vectors in `range(σ_b)` outside the printed families:
/// `(1/p, p, x/(p(xp-1)), 1) ⊗ (1, p)` for `p ≠ 0, 1/x`.
///
/// For `|p| = 1` the right-conjugated vector lies in `range(σ_b^{T_C})`.
pub fn sigma_product_curve(b: f64, p: C64) -> Result<CandidateProductVector> {
    open_unit("b", b)?;
    let x = ratio_of(b);
    let denom = p * (p * x - 1.0);
    if p == ZERO || denom.norm() < 1e-14 {
        return Err(Error::ParamOutOfRange {
            name: "p",
            value: p.norm(),
            range: "p != 0 and p != 1/x",
        });
    }
    let left = vec![ONE / p, p, re(x) / denom, ONE];
    let params = CandidateParams {
        param: Some(b),
        ratio: Some(x),
        ..CandidateParams::plain()
    };
    CandidateProductVector::new(
        Bipartition::ab_c([2, 2, 2]),
        left,
        vec![ONE, p],
        Family::Searched,
        params,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MemberStatus {
    Member,
    NonMember,
    Gray,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Membership {
    pub residual: f64,
    pub status: MemberStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MembershipTolerances {
    pub member: f64,
    pub nonmember: f64,
}

impl Default for MembershipTolerances {
    fn default() -> Self {
        Self {
            member: MEMBER_TOL,
            nonmember: NONMEMBER_TOL,
        }
    }
}

impl MembershipTolerances {
    pub fn classify(&self, residual: f64) -> Membership {
        let status = if residual < self.member {
            MemberStatus::Member
        } else if residual > self.nonmember {
            MemberStatus::NonMember
        } else {
            MemberStatus::Gray
        };
        Membership { residual, status }
    }
}

/// Which operator a range refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    State,
    PartialTranspose,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RangeVerdict {
    Entangled,
    NotDetected,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchVerdict {
    /// Qualifying product vectors were found spanning both ranges.
    CriterionSatisfied,
    /// The vectors found do not span; absence of further vectors is not proven.
    NoSpanningSetFound,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateCheck {
    pub candidate: CandidateProductVector,
    /// Unit-normalized candidate against the candidate space.
    pub in_candidate_space: Membership,
    /// Unit-normalized right-conjugated candidate against the partner space.
    pub conjugate_in_partner_space: Membership,
    pub qualifies: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QualifyingSearchReport {
    pub config: SearchConfig,
    pub found: usize,
    pub vectors: Vec<CandidateProductVector>,
    /// Found vectors that coincide with a printed family member.
    pub matched_families: Vec<Family>,
    /// `dim(candidate space) - rank(found ∪ qualifying families)`.
    pub spanning_defect: usize,
    /// `dim(partner space) - rank(conjugates)`.
    pub conjugate_spanning_defect: usize,
    pub verdict: SearchVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct RangeCriterionReport {
    pub state_label: String,
    pub split: String,
    pub params: Vec<(String, f64)>,
    pub candidate_space: Space,
    pub partner_space: Space,
    pub candidate_space_dim: usize,
    pub partner_space_dim: usize,
    pub tolerances: MembershipTolerances,
    pub candidates: Vec<CandidateCheck>,
    /// `dim(candidate space) - rank(qualifying family candidates)`.
    pub family_spanning_defect: usize,
    /// Verdict from the printed families alone.
    pub verdict: RangeVerdict,
    pub search: Option<QualifyingSearchReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RangeOptions {
    pub tolerances: MembershipTolerances,
    pub rank_tol: f64,
    /// Free coefficient of `v3`.
    pub s: C64,
    pub search: Option<SearchConfig>,
}

impl Default for RangeOptions {
    fn default() -> Self {
        Self {
            tolerances: MembershipTolerances::default(),
            rank_tol: RANK_TOL,
            s: DEFAULT_S,
            search: Some(SearchConfig {
                restarts: 24,
                iters: 3000,
                ..SearchConfig::default()
            }),
        }
    }
}

fn normalized_residual(v: &[C64], basis: &DenseMatrix) -> Result<f64> {
    let u = vector::normalized(v).ok_or(Error::ZeroVector)?;
    subspace_residual(&u, basis)
}

/// Rank of `vectors` after expressing them in the coordinates of `basis`.
fn rank_in(basis: &DenseMatrix, vectors: &[ComplexVector], tol: f64) -> usize {
    let bh = basis.adjoint();
    let coords: Vec<ComplexVector> = vectors
        .iter()
        .filter_map(|v| vector::normalized(v))
        .map(|v| bh.mul_vec(&v))
        .collect();
    crate::tensor::span_rank(&coords, basis.cols(), tol)
}

/// Range criterion across `split`.
///
/// For `σ_b` the u-families are drawn from `range(ρ)` and their conjugates
/// tested against `range(ρ^{T_right})`; for `ρ_a` the v-families are drawn from
/// `range(ρ^{T_right})` and tested against `range(ρ)`. Other states get no
/// printed families. The printed-family verdict is `entangled` when the
/// qualifying candidates leave a spanning defect or some candidate in the
/// candidate space has its conjugate outside the partner space; any gray
/// residual makes it `inconclusive`. The optional search looks for
/// qualifying product vectors directly.
pub fn range_criterion(
    state: &MultipartiteState,
    split: &Bipartition,
    opts: &RangeOptions,
) -> Result<RangeCriterionReport> {
    split.check_state(state)?;
    let is_sigma = state.label() == "sigma_b";
    let is_rho = state.label() == "rho_a";
    let param = if is_sigma {
        state.param("b")
    } else if is_rho {
        state.param("a")
    } else {
        None
    };
    if let Some(t) = param {
        if t <= 0.0 || t >= 1.0 {
            return Err(Error::DegenerateParameter(t));
        }
    }
    let on_ab_c = split.right() == [Party::C];
    let (cand_space, partner_space) = if is_rho {
        (Space::PartialTranspose, Space::State)
    } else {
        (Space::State, Space::PartialTranspose)
    };

    let rho_bip = split.to_bipartite(state.rho());
    let pt_bip = split.pt_right(state.rho())?;
    let space = |s: Space| -> Result<DenseMatrix> {
        match s {
            Space::State => range_basis(&rho_bip, opts.rank_tol),
            Space::PartialTranspose => range_basis(&pt_bip, opts.rank_tol),
        }
    };
    let cand_basis = space(cand_space)?;
    let partner_basis = space(partner_space)?;

    let families: Vec<Family> = match (param, on_ab_c) {
        (Some(_), true) if is_sigma => Family::U.to_vec(),
        (Some(_), true) => Family::V.to_vec(),
        _ => Vec::new(),
    };
    let mut candidates = Vec::with_capacity(families.len());
    for f in families {
        let spec = CandidateSpec {
            param: param.expect("families require a parameter"),
            n: if is_rho {
                state.param("n").map_or(1, |n| n as usize)
            } else {
                1
            },
            coefficient: ONE,
            s: opts.s,
        };
        let cand = build_candidate(f, &spec)?;
        let conj = cand.partial_conjugate(Side::Right)?;
        let in_c = opts
            .tolerances
            .classify(normalized_residual(&cand.bipartite(), &cand_basis)?);
        let in_p = opts
            .tolerances
            .classify(normalized_residual(&conj.bipartite(), &partner_basis)?);
        let qualifies = in_c.status == MemberStatus::Member && in_p.status == MemberStatus::Member;
        candidates.push(CandidateCheck {
            candidate: cand,
            in_candidate_space: in_c,
            conjugate_in_partner_space: in_p,
            qualifies,
        });
    }
    let qualifying: Vec<ComplexVector> = candidates
        .iter()
        .filter(|c| c.qualifies)
        .map(|c| c.candidate.bipartite())
        .collect();
    let family_spanning_defect = cand_basis.cols() - rank_in(&cand_basis, &qualifying, opts.rank_tol);
    let gray = candidates.iter().any(|c| {
        c.in_candidate_space.status == MemberStatus::Gray || c.conjugate_in_partner_space.status == MemberStatus::Gray
    });
    let fails = candidates.iter().any(|c| {
        c.in_candidate_space.status == MemberStatus::Member
            && c.conjugate_in_partner_space.status == MemberStatus::NonMember
    });
    let verdict = if gray {
        RangeVerdict::Inconclusive
    } else if family_spanning_defect > 0 || fails {
        RangeVerdict::Entangled
    } else {
        RangeVerdict::NotDetected
    };

    let search = opts.search.map(|cfg| {
        let hits = qualifying_product_search(&cand_basis, &partner_basis, split.left_dim(), split.right_dim(), &cfg);
        summarize_search(
            split,
            &cfg,
            &hits,
            &candidates,
            &cand_basis,
            &partner_basis,
            opts.rank_tol,
        )
    });

    Ok(RangeCriterionReport {
        state_label: state.label().to_string(),
        split: split.name(),
        params: state.params().iter().map(|(k, v)| (k.clone(), *v)).collect(),
        candidate_space: cand_space,
        partner_space,
        candidate_space_dim: cand_basis.cols(),
        partner_space_dim: partner_basis.cols(),
        tolerances: opts.tolerances,
        candidates,
        family_spanning_defect,
        verdict,
        search,
    })
}

fn summarize_search(
    split: &Bipartition,
    cfg: &SearchConfig,
    hits: &[ProductHit],
    candidates: &[CandidateCheck],
    cand_basis: &DenseMatrix,
    partner_basis: &DenseMatrix,
    rank_tol: f64,
) -> QualifyingSearchReport {
    let vectors: Vec<CandidateProductVector> = hits
        .iter()
        .map(|h| {
            CandidateProductVector::new(
                split.clone(),
                h.left.clone(),
                h.right.clone(),
                Family::Searched,
                CandidateParams::plain(),
            )
            .expect("search factors match the split")
        })
        .collect();
    let mut matched_families: Vec<Family> = candidates
        .iter()
        .filter(|c| {
            vectors
                .iter()
                .any(|v| same_ray(&v.bipartite(), &c.candidate.bipartite(), 1e-8))
        })
        .map(|c| c.candidate.family)
        .collect();
    matched_families.dedup();
    let mut span: Vec<ComplexVector> = vectors.iter().map(|v| v.bipartite()).collect();
    let mut conj_span: Vec<ComplexVector> = vectors
        .iter()
        .map(|v| vector::kron(&v.left_factor, &vector::conj(&v.right_factor)))
        .collect();
    for c in candidates.iter().filter(|c| c.qualifies) {
        span.push(c.candidate.bipartite());
        conj_span.push(vector::kron(
            &c.candidate.left_factor,
            &vector::conj(&c.candidate.right_factor),
        ));
    }
    let spanning_defect = cand_basis.cols() - rank_in(cand_basis, &span, rank_tol);
    let conjugate_spanning_defect = partner_basis.cols() - rank_in(partner_basis, &conj_span, rank_tol);
    let verdict = if spanning_defect == 0 && conjugate_spanning_defect == 0 {
        SearchVerdict::CriterionSatisfied
    } else {
        SearchVerdict::NoSpanningSetFound
    };
    QualifyingSearchReport {
        config: *cfg,
        found: vectors.len(),
        vectors,
        matched_families,
        spanning_defect,
        conjugate_spanning_defect,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{rho_a, sigma_b, ConstructionVariant};

    fn approx(a: &[C64], b: &[C64]) -> bool {
        vector::max_abs_diff(a, b) < 1e-14
    }

    #[test]
    fn u1_matches_printed_vector() {
        let c = build_candidate(Family::U1, &CandidateSpec::sigma(0.5)).unwrap();
        let x = 3f64.sqrt();
        assert!(approx(&c.left_factor, &[ONE, ONE, re(x / (x - 1.0)), ONE]));
        assert!(approx(&c.right_factor, &[ONE, ONE]));
    }

    #[test]
    fn u3_is_fourth_basis_vector() {
        let c = build_candidate(Family::U3, &CandidateSpec::sigma(0.5)).unwrap();
        assert!(approx(&c.flat(), &vector::basis(8, 3)));
    }

    #[test]
    fn v2_at_n1_is_enumerated_basis_product() {
        // left index 2n² = 2 is (A, B) = (1, 2); right index 1 is C = 1.
        let c = build_candidate(Family::V2, &CandidateSpec::rho(1, 0.5)).unwrap();
        let flat = crate::party::flat_index(&[2, 2, 2], [0, 1, 0]);
        assert_eq!(flat, 2);
        assert!(approx(&c.flat(), &vector::basis(8, flat)));
    }

    #[test]
    fn candidates_reject_bad_parameters() {
        assert!(matches!(
            build_candidate(Family::U1, &CandidateSpec::sigma(1.0)),
            Err(Error::ParamOutOfRange { .. })
        ));
        let mut spec = CandidateSpec::rho(2, 0.5);
        spec.s = ZERO;
        assert!(build_candidate(Family::V3, &spec).is_err());
        spec.coefficient = ZERO;
        assert!(build_candidate(Family::V1, &spec).is_err());
    }

    #[test]
    fn partial_conjugation_cases() {
        let split = Bipartition::ab_c([1, 2, 2]);
        let i = C64::new(0.0, 1.0);
        let a = CandidateProductVector::new(
            split.clone(),
            vec![ONE, i],
            vec![ONE, ZERO],
            Family::Searched,
            CandidateParams::plain(),
        )
        .unwrap();
        assert!(approx(
            &a.partial_conjugate(Side::Right).unwrap().bipartite(),
            &a.bipartite()
        ));
        let b = CandidateProductVector::new(
            split.clone(),
            vec![ONE, ZERO],
            vec![ONE, i],
            Family::Searched,
            CandidateParams::plain(),
        )
        .unwrap();
        assert!(approx(
            &b.partial_conjugate(Side::Right).unwrap().right_factor,
            &[ONE, -i]
        ));
        let mut bad = b.clone();
        bad.right_factor.push(ONE);
        assert!(matches!(
            bad.partial_conjugate(Side::Right),
            Err(Error::NotProductForm(_))
        ));
    }

    #[test]
    fn sigma_ppt_and_npt_splits() {
        let s = sigma_b(0.5).unwrap();
        let [abc, a_bc, _] = Bipartition::standard([2, 2, 2]);
        assert_eq!(ppt_test(&s, &abc, PSD_TOL).unwrap().verdict, PptVerdict::Ppt);
        let npt = ppt_test(&s, &a_bc, PSD_TOL).unwrap();
        assert_eq!(npt.verdict, PptVerdict::Npt);
        assert!(npt.lambda_min < 0.0 && npt.witness.is_some());
    }

    #[test]
    fn range_criterion_sigma() {
        let s = sigma_b(0.5).unwrap();
        let r = range_criterion(&s, &Bipartition::ab_c([2, 2, 2]), &RangeOptions::default()).unwrap();
        assert_eq!(r.candidate_space_dim, 5);
        assert!(r.candidates.iter().all(|c| c.in_candidate_space.residual < 1e-10));
        assert!(r.candidates[0].conjugate_in_partner_space.residual < 1e-10);
        for c in &r.candidates[1..] {
            assert!(c.conjugate_in_partner_space.residual > 0.05);
        }
        assert_eq!(r.family_spanning_defect, 4);
        assert_eq!(r.verdict, RangeVerdict::Entangled);
        let search = r.search.unwrap();
        assert_eq!(search.spanning_defect, 0);
        assert_eq!(search.verdict, SearchVerdict::CriterionSatisfied);
    }

    #[test]
    fn product_curve_lies_in_sigma_range() {
        let s = sigma_b(0.5).unwrap();
        let split = Bipartition::ab_c([2, 2, 2]);
        let r = range_basis(s.rho(), RANK_TOL).unwrap();
        let rt = range_basis(&split.pt_right(s.rho()).unwrap(), RANK_TOL).unwrap();
        for p in [C64::new(0.3, -1.2), C64::from_polar(1.0, 0.7)] {
            let c = sigma_product_curve(0.5, p).unwrap();
            assert!(normalized_residual(&c.flat(), &r).unwrap() < 1e-12);
        }
        let c = sigma_product_curve(0.5, C64::from_polar(1.0, 2.1)).unwrap();
        let conj = c.partial_conjugate(Side::Right).unwrap();
        assert!(normalized_residual(&conj.flat(), &rt).unwrap() < 1e-12);
    }

    #[test]
    fn degenerate_parameter_rejected() {
        let s = sigma_b(1.0).unwrap();
        assert!(matches!(
            range_criterion(&s, &Bipartition::ab_c([2, 2, 2]), &RangeOptions::default()),
            Err(Error::DegenerateParameter(_))
        ));
    }

    #[test]
    fn rho_v_families_n1() {
        let r = rho_a(1, 0.5, ConstructionVariant::default()).unwrap();
        let opts = RangeOptions {
            search: None,
            ..RangeOptions::default()
        };
        let rep = range_criterion(&r, &Bipartition::ab_c([2, 2, 2]), &opts).unwrap();
        assert_eq!(rep.candidates.len(), 4);
        assert_eq!(rep.candidate_space, Space::PartialTranspose);
    }
}
