//! The model population set and the personalized-agent experiment.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::{
    matchup_seed, prepare_cases, rows_by_focal, run_matchup, MetricsRow, ScaleConfig, EXPERIMENT2,
};
use crate::agent::{personalize, PrivacyBehavior, UserProfile, UserType};
use crate::dataset::Dataset;
use crate::error::Result;
use crate::seed::{label_tag, rng_from};

/// Members per user type, out of 100.
pub const MPS_COUNTS: [(UserType, usize); 5] = [
    (UserType::Fundamentalist, 3),
    (UserType::LazyExpert, 22),
    (UserType::Technician, 18),
    (UserType::Amateur, 34),
    (UserType::MarginallyConcerned, 23),
];

/// A roster of users distributed like the surveyed population.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mps {
    pub members: Vec<UserProfile>,
}

impl Mps {
    pub fn count(&self, t: UserType) -> usize {
        self.members
            .iter()
            .filter(|m| m.privacy_type() == t)
            .count()
    }

    pub fn behaviors(&self) -> Vec<PrivacyBehavior> {
        self.members.iter().map(personalize).collect()
    }
}

/// The 100 members in a seed-dependent order.
pub fn build_mps(master_seed: u64) -> Mps {
    let mut members: Vec<UserProfile> = MPS_COUNTS
        .iter()
        .flat_map(|&(t, n)| std::iter::repeat_n(UserProfile::of_type(t), n))
        .collect();
    members.shuffle(&mut rng_from(&[master_seed, label_tag("mps")]));
    Mps { members }
}

/// The indifferent agent followed by one personalized agent per user type.
pub fn focal_agents() -> Vec<(String, PrivacyBehavior)> {
    std::iter::once(("indifferent".to_string(), PrivacyBehavior::INDIFFERENT))
        .chain(UserType::ALL.iter().map(|t| {
            (
                t.as_str().to_string(),
                personalize(&UserProfile::of_type(*t)),
            )
        }))
        .collect()
}

/// Each focal agent plays every member of the population over the dataset.
pub fn experiment2(
    dataset: &Dataset,
    scale: &ScaleConfig,
    master_seed: u64,
) -> Result<Vec<MetricsRow>> {
    scale.validate()?;
    let cases = prepare_cases(dataset, scale.cases)?;
    let roster = build_mps(master_seed).behaviors();
    let focal = focal_agents();
    let pairs: Vec<(usize, usize)> = (0..focal.len())
        .flat_map(|f| (0..roster.len()).map(move |o| (f, o)))
        .collect();
    let matchups = pairs
        .par_iter()
        .map(|&(f, o)| {
            run_matchup(
                focal[f].1,
                roster[o],
                &cases,
                matchup_seed(master_seed, EXPERIMENT2, o),
            )
            .map(|m| (f, m))
        })
        .collect::<Result<Vec<_>>>()?;
    let behaviors: Vec<PrivacyBehavior> = focal.iter().map(|f| f.1).collect();
    let mut rows = rows_by_focal(&behaviors, matchups, |_| String::new());
    for (row, (name, _)) in rows.iter_mut().zip(focal) {
        row.label = name;
    }
    Ok(rows)
}
