//! One-shot analysis of a state: partial transposes over the three standard
//! splits, Schmidt-rank-2 search, range criterion on `(AB)-C` and, for `ρ_a`,
//! the five-form classification.

use serde::Serialize;

use crate::bipartition::Bipartition;
use crate::claims::Tolerances;
use crate::criteria::{
    ppt_test, range_criterion, MembershipTolerances, PptVerdict, RangeCriterionReport, RangeOptions,
};
use crate::distill::{five_form_classify, rank2_min, FiveFormReport, Rank2Result, SearchBudget};
use crate::error::Result;
use crate::search::SearchConfig;
use crate::states::{rho_a, ConstructionVariant, ExtraProjector, MultipartiteState, Normalization};
use crate::tensor::{hermitian_eig, Inertia, HERMITIAN_TOL};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisOptions {
    pub tolerances: Tolerances,
    pub budget: SearchBudget,
    /// Joint product-vector search inside the range criterion; `None` runs
    /// the candidate families only.
    pub range_search: Option<SearchConfig>,
    pub five_forms: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            budget: SearchBudget::default(),
            range_search: None,
            five_forms: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistillVerdict {
    /// A Schmidt-rank-2 vector with negative expectation was found.
    NptRank2Witness,
    /// Absence of a witness within the search budget; not a proof.
    NoViolationFound,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitAnalysis {
    pub split: String,
    pub lambda_min: f64,
    pub inertia: Inertia,
    pub ppt: PptVerdict,
    pub rank2: Rank2Result,
    pub distillability: DistillVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub label: String,
    pub params: Vec<(String, f64)>,
    pub variant: Option<ConstructionVariant>,
    pub dim: usize,
    pub trace: f64,
    pub rank: usize,
    pub splits: Vec<SplitAnalysis>,
    pub range: Option<RangeCriterionReport>,
    pub five_forms: Option<FiveFormReport>,
}

pub fn analyze(state: &MultipartiteState, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let tol = &opts.tolerances;
    let mut splits = Vec::new();
    for split in Bipartition::standard(state.dims()) {
        let pt = split.pt_right(state.rho())?;
        let e = hermitian_eig(&pt, HERMITIAN_TOL)?;
        let ppt = ppt_test(state, &split, tol.psd)?;
        let rank2 = rank2_min(state, &split, &opts.budget)?;
        let distillability = if rank2.value < -tol.psd {
            DistillVerdict::NptRank2Witness
        } else {
            DistillVerdict::NoViolationFound
        };
        splits.push(SplitAnalysis {
            split: split.name(),
            lambda_min: e.min(),
            inertia: e.inertia(tol.rank),
            ppt: ppt.verdict,
            rank2,
            distillability,
        });
    }
    let param = match state.label() {
        "sigma_b" => state.param("b"),
        "rho_a" => state.param("a"),
        _ => None,
    };
    let interior = param.is_some_and(|p| p > 0.0 && p < 1.0);
    let range = if interior {
        let ro = RangeOptions {
            tolerances: MembershipTolerances {
                member: tol.member,
                nonmember: tol.nonmember,
            },
            rank_tol: tol.rank,
            search: opts.range_search,
            ..RangeOptions::default()
        };
        Some(range_criterion(state, &Bipartition::ab_c(state.dims()), &ro)?)
    } else {
        None
    };
    let five_forms = match (state.label(), param, state.param("n")) {
        ("rho_a", Some(a), Some(n)) if opts.five_forms && interior => {
            // the printed forms are scaled to the unnormalized weights
            let pw = rho_a(
                n as usize,
                a,
                ConstructionVariant::new(ExtraProjector::Consistent, Normalization::PrintedWeights),
            )?;
            Some(five_form_classify(&pw, n as usize, a)?)
        }
        _ => None,
    };
    let e = hermitian_eig(state.rho(), HERMITIAN_TOL)?;
    Ok(AnalysisReport {
        label: state.label().to_string(),
        params: state.params().iter().map(|(k, v)| (k.clone(), *v)).collect(),
        variant: state.variant(),
        dim: state.dim(),
        trace: state.trace(),
        rank: e.inertia(tol.rank).rank(),
        splits,
        range,
        five_forms,
    })
}
