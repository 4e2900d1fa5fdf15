//! Round-robin experiments over privacy behaviors and the model population.

mod mps;
mod results;

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agent::PrivacyBehavior;
use crate::argumentation::Side;
use crate::dataset::Dataset;
use crate::dispute::{run_dispute, AgentSpec, EngineOptions, PreparedCase, Teams};
use crate::error::{Error, Result};
use crate::seed::derive_seed;

pub use mps::{build_mps, experiment2, focal_agents, Mps, MPS_COUNTS};
pub use results::{parse_results, results_csv, write_results, RunManifest, RESULTS_HEADER};

pub const EXPERIMENT1: u64 = 1;
pub const EXPERIMENT2: u64 = 2;

/// How much of the full experiment to run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScaleConfig {
    /// Cases taken from the front of the dataset; all when absent.
    pub cases: Option<usize>,
    /// Every `grid_stride`-th behavior of the 80-cell grid takes part.
    pub grid_stride: usize,
    /// Whether a behavior also plays against itself.
    pub include_self_play: bool,
}

impl Default for ScaleConfig {
    fn default() -> Self {
        ScaleConfig::full()
    }
}

impl ScaleConfig {
    pub fn full() -> Self {
        ScaleConfig {
            cases: None,
            grid_stride: 1,
            include_self_play: true,
        }
    }

    /// Desk-sized run of `experiment`: 20 cases for the grid, 50 for the
    /// population experiment.
    pub fn desk(experiment: u64) -> Self {
        ScaleConfig {
            cases: Some(if experiment == EXPERIMENT2 { 50 } else { 20 }),
            ..ScaleConfig::full()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_stride == 0 {
            return Err(Error::invalid("grid_stride must be at least 1"));
        }
        if self.cases == Some(0) {
            return Err(Error::invalid("a scale with zero cases runs nothing"));
        }
        Ok(())
    }
}

/// One dispute of a matchup, seen from agent A.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DisputeRecord {
    pub case_index: usize,
    pub a_side: Side,
    pub a_won: bool,
    pub a_concealment: f64,
    pub b_concealment: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchupResult {
    pub a: PrivacyBehavior,
    pub b: PrivacyBehavior,
    /// Cases played; each one twice with the roles swapped.
    pub cases: usize,
    /// In play order: per case, A as proponent then A as opponent.
    pub records: Vec<DisputeRecord>,
}

impl MatchupResult {
    pub fn disputes(&self) -> usize {
        self.records.len()
    }

    pub fn a_wins(&self) -> usize {
        self.records.iter().filter(|r| r.a_won).count()
    }

    pub fn b_wins(&self) -> usize {
        self.disputes() - self.a_wins()
    }

    pub fn a_concealment_sum(&self) -> f64 {
        self.records.iter().map(|r| r.a_concealment).sum()
    }

    pub fn b_concealment_sum(&self) -> f64 {
        self.records.iter().map(|r| r.b_concealment).sum()
    }
}

/// Validates and prepares dataset cases once, keeping the first `limit`.
pub fn prepare_cases(dataset: &Dataset, limit: Option<usize>) -> Result<Vec<Arc<PreparedCase>>> {
    let n = limit
        .unwrap_or(dataset.cases.len())
        .min(dataset.cases.len());
    dataset.cases[..n]
        .par_iter()
        .map(|c| c.clone().prepare().map(Arc::new))
        .collect()
}

/// Plays every case twice, A as proponent and then as opponent. Dispute
/// seeds derive from `(seed, case index, role)`.
pub fn run_matchup(
    a: PrivacyBehavior,
    b: PrivacyBehavior,
    cases: &[Arc<PreparedCase>],
    seed: u64,
) -> Result<MatchupResult> {
    let mut records = Vec::with_capacity(2 * cases.len());
    let spec_a = AgentSpec::new("a", a);
    let spec_b = AgentSpec::new("b", b);
    for (i, case) in cases.iter().enumerate() {
        for (role, a_side) in [Side::Proponent, Side::Opponent].into_iter().enumerate() {
            let teams = match a_side {
                Side::Proponent => Teams::duel(spec_a.clone(), spec_b.clone()),
                Side::Opponent => Teams::duel(spec_b.clone(), spec_a.clone()),
            };
            let dispute_seed = derive_seed(&[seed, i as u64, role as u64]);
            let outcome = run_dispute(case, &teams, dispute_seed, EngineOptions::default())
                .map_err(|e| e.in_case(case.id()))?;
            // participant 0 is the proponent
            let (ia, ib) = if a_side == Side::Proponent {
                (0, 1)
            } else {
                (1, 0)
            };
            records.push(DisputeRecord {
                case_index: i,
                a_side,
                a_won: outcome.winner == a_side,
                a_concealment: outcome.concealment[ia],
                b_concealment: outcome.concealment[ib],
            });
        }
    }
    Ok(MatchupResult {
        a,
        b,
        cases: cases.len(),
        records,
    })
}

/// Aggregated metrics for one agent.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRow {
    pub label: String,
    pub behavior: PrivacyBehavior,
    pub w_avg: f64,
    pub c_avg: f64,
    pub combined: f64,
    pub disputes: usize,
}

impl MetricsRow {
    /// Row from the focal agent's side of `matchups`, summed in order.
    pub fn from_matchups(
        label: String,
        behavior: PrivacyBehavior,
        matchups: &[MatchupResult],
    ) -> Self {
        let mut wins = 0usize;
        let mut conceal = 0.0;
        let mut disputes = 0usize;
        for m in matchups {
            wins += m.a_wins();
            conceal += m.a_concealment_sum();
            disputes += m.disputes();
        }
        MetricsRow::new(label, behavior, wins as f64, conceal, disputes)
    }

    fn new(
        label: String,
        behavior: PrivacyBehavior,
        wins: f64,
        conceal: f64,
        disputes: usize,
    ) -> Self {
        let (w_avg, c_avg) = if disputes == 0 {
            (0.0, 0.0)
        } else {
            (wins / disputes as f64, conceal / disputes as f64)
        };
        MetricsRow {
            label,
            behavior,
            w_avg,
            c_avg,
            combined: (w_avg + c_avg) / 2.0,
            disputes,
        }
    }
}

/// Per-row mean over several runs with the same row layout (e.g. one run per
/// master seed). Dispute counts add up.
pub fn average_rows(runs: &[Vec<MetricsRow>]) -> Result<Vec<MetricsRow>> {
    let Some(first) = runs.first() else {
        return Ok(Vec::new());
    };
    if runs.iter().any(|r| r.len() != first.len()) {
        return Err(Error::invalid("runs have different row counts"));
    }
    let k = runs.len() as f64;
    (0..first.len())
        .map(|i| {
            let label = &first[i].label;
            if runs.iter().any(|r| &r[i].label != label) {
                return Err(Error::invalid(format!(
                    "row {i} differs in label across runs"
                )));
            }
            let w = runs.iter().map(|r| r[i].w_avg).sum::<f64>() / k;
            let c = runs.iter().map(|r| r[i].c_avg).sum::<f64>() / k;
            Ok(MetricsRow {
                label: label.clone(),
                behavior: first[i].behavior,
                w_avg: w,
                c_avg: c,
                combined: (w + c) / 2.0,
                disputes: runs.iter().map(|r| r[i].disputes).sum(),
            })
        })
        .collect()
}

/// Seed of the matchups against opponent `opponent_index`. The focal agent
/// is deliberately left out so every focal behavior meets an opponent under
/// the same random draws.
pub fn matchup_seed(master: u64, experiment: u64, opponent_index: usize) -> u64 {
    derive_seed(&[master, experiment, opponent_index as u64])
}

/// Behaviors taking part at `scale`, in grid order.
pub fn grid_at(scale: &ScaleConfig) -> Vec<PrivacyBehavior> {
    PrivacyBehavior::grid()
        .into_iter()
        .step_by(scale.grid_stride.max(1))
        .collect()
}

/// Every grid behavior plays every grid behavior over the dataset; one row
/// per behavior in grid order.
pub fn experiment1(
    dataset: &Dataset,
    scale: &ScaleConfig,
    master_seed: u64,
) -> Result<Vec<MetricsRow>> {
    scale.validate()?;
    let cases = prepare_cases(dataset, scale.cases)?;
    let grid = grid_at(scale);
    let pairs: Vec<(usize, usize)> = (0..grid.len())
        .flat_map(|f| (0..grid.len()).map(move |o| (f, o)))
        .filter(|(f, o)| scale.include_self_play || f != o)
        .collect();
    let matchups: Vec<(usize, MatchupResult)> = pairs
        .par_iter()
        .map(|&(f, o)| {
            run_matchup(
                grid[f],
                grid[o],
                &cases,
                matchup_seed(master_seed, EXPERIMENT1, o),
            )
            .map(|m| (f, m))
        })
        .collect::<Result<_>>()?;
    Ok(rows_by_focal(&grid, matchups, |b| b.label()))
}

fn rows_by_focal(
    focal: &[PrivacyBehavior],
    matchups: Vec<(usize, MatchupResult)>,
    label: impl Fn(&PrivacyBehavior) -> String,
) -> Vec<MetricsRow> {
    let mut grouped: Vec<Vec<MatchupResult>> = vec![Vec::new(); focal.len()];
    for (f, m) in matchups {
        grouped[f].push(m);
    }
    focal
        .iter()
        .zip(grouped)
        .map(|(b, ms)| MetricsRow::from_matchups(label(b), *b, &ms))
        .collect()
}
