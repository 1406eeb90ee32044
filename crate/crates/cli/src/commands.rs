use std::fs;
use std::path::Path;

use entwb_core::analysis::{analyze, AnalysisOptions, AnalysisReport};
use entwb_core::bipartition::Bipartition;
use entwb_core::claims::{run_claims, ClaimVerdict, ClaimsConfig};
use entwb_core::distill::{rank2_min, SearchBudget};
use entwb_core::io::state_to_json;
use entwb_core::search::SearchConfig;
use entwb_core::states::{matrix_compare, rho_a, sigma_b, ConstructionVariant, ExtraProjector, MultipartiteState};
use entwb_core::tensor::{hermitian_eig, HERMITIAN_TOL};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{FamilyArg, FormatArg, RunConfig, RunMeta};
use crate::CliError;

/// Files produced by a command, written together once the run succeeded.
pub type Outputs = Vec<(String, Vec<u8>)>;

pub fn write_outputs(dir: &Path, outputs: &Outputs) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    for (name, bytes) in outputs {
        let tmp = dir.join(format!(".{name}.tmp"));
        fs::write(&tmp, bytes)?;
        fs::rename(&tmp, dir.join(name))?;
    }
    Ok(())
}

fn pretty<T: Serialize>(v: &T) -> Result<Vec<u8>, CliError> {
    let mut s = serde_json::to_vec_pretty(v)?;
    s.push(b'\n');
    Ok(s)
}

fn extra_tag(v: ConstructionVariant) -> &'static str {
    match v.extra_projector {
        ExtraProjector::Printed => "printed",
        ExtraProjector::Consistent => "consistent",
    }
}

/// A state of the configured family with its sort key.
struct Task {
    key: (usize, String, String),
    state: MultipartiteState,
}

fn family_states(cfg: &RunConfig, variant: ConstructionVariant) -> Result<Vec<Task>, CliError> {
    let mut out = Vec::new();
    match cfg.family {
        FamilyArg::Sigma => {
            for &b in &cfg.b_grid {
                out.push(Task {
                    key: (1, format!("{b}"), String::new()),
                    state: sigma_b(b)?,
                });
            }
        }
        FamilyArg::Rho => {
            for &n in &cfg.n_list {
                for &a in &cfg.a_grid {
                    out.push(Task {
                        key: (n, format!("{a}"), extra_tag(variant).into()),
                        state: rho_a(n, a, variant)?,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::Sigma => "sigma",
        FamilyArg::Rho => "rho",
    }
}

fn budget(cfg: &RunConfig) -> SearchBudget {
    SearchBudget {
        restarts: cfg.restarts,
        iters: cfg.iters,
        seed: cfg.seed,
    }
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

pub fn construct(cfg: &RunConfig) -> Result<Outputs, CliError> {
    let mut outputs = Vec::new();
    let mut per_variant = Vec::new();
    for &v in &cfg.variants {
        let tasks = family_states(cfg, v)?;
        for t in &tasks {
            let name = match cfg.family {
                FamilyArg::Sigma => format!("sigma_b{}.json", t.key.1),
                FamilyArg::Rho => format!("rho_n{}_a{}_{}.json", t.key.0, t.key.1, t.key.2),
            };
            outputs.push((name, state_to_json(&t.state).into_bytes()));
        }
        per_variant.push((v, tasks));
    }
    if cfg.family == FamilyArg::Rho && per_variant.len() == 2 {
        let (pv, printed) = &per_variant[0];
        let (cv, consistent) = &per_variant[1];
        for (p, c) in printed.iter().zip(consistent) {
            let diff = matrix_compare(p.state.rho(), c.state.rho(), 0.0)?;
            let entries: Vec<Value> = diff
                .iter()
                .map(|m| {
                    json!({
                        "row": m.row,
                        "col": m.col,
                        "printed": [m.computed.re, m.computed.im],
                        "consistent": [m.reference.re, m.reference.im],
                    })
                })
                .collect();
            let doc = json!({
                "n": p.key.0,
                "a": p.state.param("a"),
                "variants": [pv.to_string(), cv.to_string()],
                "index_base": 0,
                "differences": entries,
            });
            outputs.push((
                format!("rho_n{}_a{}_variant_diff.json", p.key.0, p.key.1),
                pretty(&doc)?,
            ));
        }
    }
    let meta = RunMeta::new(cfg);
    outputs.push(("construct.meta.json".into(), pretty(&meta)?));
    Ok(outputs)
}

#[derive(Serialize)]
struct AnalysisBundle<'a> {
    meta: RunMeta,
    reports: &'a [AnalysisReport],
}

pub fn analyze_cmd(cfg: &RunConfig) -> Result<Outputs, CliError> {
    let opts = AnalysisOptions {
        tolerances: cfg.tolerances,
        budget: budget(cfg),
        range_search: Some(SearchConfig {
            restarts: 24,
            iters: 3000,
            seed: cfg.seed,
            accept_tol: 1e-8,
        }),
        five_forms: true,
    };
    let tasks = family_states(cfg, cfg.variant())?;
    let reports = tasks
        .iter()
        .map(|t| analyze(&t.state, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let meta = RunMeta::new(cfg);
    match cfg.format {
        FormatArg::Json => Ok(vec![(
            "analysis.json".into(),
            pretty(&AnalysisBundle {
                meta,
                reports: &reports,
            })?,
        )]),
        FormatArg::Csv => {
            let mut rows = Vec::new();
            for (t, r) in tasks.iter().zip(&reports) {
                let range = r.range.as_ref().map(|x| format!("{:?}", x.verdict)).unwrap_or_default();
                for s in &r.splits {
                    rows.push(vec![
                        family_name(cfg.family).into(),
                        t.key.0.to_string(),
                        t.key.1.clone(),
                        s.split.clone(),
                        s.lambda_min.to_string(),
                        s.inertia.rank().to_string(),
                        format!("{:?}", s.ppt),
                        s.rank2.value.to_string(),
                        format!("{:?}", s.distillability),
                        range.clone(),
                    ]);
                }
            }
            let header = [
                "family",
                "n",
                "param",
                "split",
                "lambda_min",
                "rank",
                "ppt",
                "rank2_value",
                "distillability",
                "range_verdict",
            ];
            Ok(vec![
                ("analysis.csv".into(), csv_bytes(&header, &rows)?),
                ("analysis.meta.json".into(), pretty(&meta)?),
            ])
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub family: String,
    pub n: usize,
    pub param: f64,
    pub variant: String,
    pub split: String,
    pub lambda_min: f64,
    pub rank: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    pub rank2_value: f64,
    pub rank2_method: String,
}

pub fn sweep(cfg: &RunConfig) -> Result<Outputs, CliError> {
    let tasks = family_states(cfg, cfg.variant())?;
    let jobs: Vec<(&Task, Bipartition)> = tasks
        .iter()
        .flat_map(|t| Bipartition::standard(t.state.dims()).into_iter().map(move |s| (t, s)))
        .collect();
    let b = budget(cfg);
    let mut rows: Vec<((usize, String, String), SweepRow)> = jobs
        .par_iter()
        .map(|(t, split)| -> Result<_, CliError> {
            let e = hermitian_eig(&split.pt_right(t.state.rho())?, HERMITIAN_TOL)?;
            let inertia = e.inertia(cfg.tolerances.rank);
            let r2 = rank2_min(&t.state, split, &b)?;
            let param = t.state.param("b").or(t.state.param("a")).unwrap_or(f64::NAN);
            Ok((
                (t.key.0, t.key.1.clone(), split.name()),
                SweepRow {
                    family: family_name(cfg.family).into(),
                    n: t.key.0,
                    param,
                    variant: t.state.variant().map(|v| v.to_string()).unwrap_or_default(),
                    split: split.name(),
                    lambda_min: e.min(),
                    rank: inertia.rank(),
                    n_plus: inertia.n_plus,
                    n_minus: inertia.n_minus,
                    n_zero: inertia.n_zero,
                    rank2_value: r2.value,
                    rank2_method: serde_json::to_value(r2.method)?.as_str().unwrap_or_default().into(),
                },
            ))
        })
        .collect::<Result<_, _>>()?;
    rows.sort_by(|x, y| {
        (x.0 .0, &x.1.param, &x.0 .2)
            .partial_cmp(&(y.0 .0, &y.1.param, &y.0 .2))
            .expect("finite params")
    });
    let rows: Vec<SweepRow> = rows.into_iter().map(|(_, r)| r).collect();
    let meta = RunMeta::new(cfg);
    match cfg.format {
        FormatArg::Json => Ok(vec![(
            "sweep.json".into(),
            pretty(&json!({ "meta": meta, "rows": rows }))?,
        )]),
        FormatArg::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            Ok(vec![
                ("sweep.csv".into(), bytes),
                ("sweep.meta.json".into(), pretty(&meta)?),
            ])
        }
    }
}

/// One element of `claims.json`.
#[derive(Serialize)]
pub struct ClaimRecord<'a> {
    #[serde(flatten)]
    pub verdict: &'a ClaimVerdict,
    pub toolkit_version: &'a str,
    pub config_hash: &'a str,
    pub seed: u64,
}

pub fn verify_claims(cfg: &RunConfig) -> Result<Outputs, CliError> {
    let defaults = ClaimsConfig::default();
    let ccfg = ClaimsConfig {
        b_grid: cfg.b_grid.clone(),
        a_grid: cfg.a_grid.clone(),
        n_list: cfg.n_list.clone(),
        seed: cfg.seed,
        tolerances: cfg.tolerances,
        variant: cfg.variant(),
        budget: budget(cfg),
        range_search: SearchConfig {
            seed: cfg.seed,
            ..defaults.range_search
        },
        ..defaults
    };
    let verdicts = run_claims(&ccfg)?;
    let meta = RunMeta::new(cfg);
    let records: Vec<ClaimRecord> = verdicts
        .iter()
        .map(|v| ClaimRecord {
            verdict: v,
            toolkit_version: &meta.toolkit_version,
            config_hash: &meta.config_hash,
            seed: meta.seed,
        })
        .collect();
    let rows: Vec<Vec<String>> = verdicts
        .iter()
        .map(|v| {
            vec![
                v.claim_id.clone(),
                serde_json::to_value(v.status)
                    .ok()
                    .and_then(|s| s.as_str().map(String::from))
                    .unwrap_or_default(),
                v.anchor.clone(),
                v.statement.clone(),
                v.cross_references.join(" "),
            ]
        })
        .collect();
    Ok(vec![
        ("claims.json".into(), pretty(&records)?),
        (
            "summary.csv".into(),
            csv_bytes(
                &["claim_id", "status", "anchor", "statement", "cross_references"],
                &rows,
            )?,
        ),
        ("claims.meta.json".into(), pretty(&meta)?),
    ])
}

#[derive(Serialize)]
struct DistillabilityReport {
    state: String,
    params: Vec<(String, f64)>,
    split: String,
    method: Value,
    best_value: f64,
    lambda_min: f64,
    gap: f64,
    witness: Value,
    search_stats: Value,
    verdict: &'static str,
}

pub fn search_distill(cfg: &RunConfig, splits: &[String]) -> Result<Outputs, CliError> {
    let tasks = family_states(cfg, cfg.variant())?;
    let b = budget(cfg);
    let mut reports = Vec::new();
    for t in &tasks {
        let chosen: Vec<Bipartition> = if splits.is_empty() {
            Bipartition::standard(t.state.dims()).to_vec()
        } else {
            splits
                .iter()
                .map(|s| Bipartition::parse(s, t.state.dims()))
                .collect::<Result<_, _>>()?
        };
        for split in chosen {
            let r = rank2_min(&t.state, &split, &b)?;
            reports.push(DistillabilityReport {
                state: t.state.label().into(),
                params: t.state.params().iter().map(|(k, v)| (k.clone(), *v)).collect(),
                split: r.split.clone(),
                method: serde_json::to_value(r.method)?,
                best_value: r.value,
                lambda_min: r.lambda_min,
                gap: r.gap,
                witness: serde_json::to_value(&r.witness)?,
                search_stats: json!({
                    "restarts": r.budget.restarts,
                    "iters": r.budget.iters,
                    "seed": r.budget.seed,
                    "best_restart": r.best_restart,
                    "iterations": r.iterations,
                    "monotone": r.monotone,
                }),
                verdict: if r.value < -cfg.tolerances.psd {
                    "npt-rank2-witness"
                } else {
                    "no-violation-found"
                },
            });
        }
    }
    let meta = RunMeta::new(cfg);
    Ok(vec![(
        "distill.json".into(),
        pretty(&json!({ "meta": meta, "reports": reports }))?,
    )])
}
