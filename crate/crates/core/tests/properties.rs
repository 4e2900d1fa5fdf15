//! Invariants of the dispute machinery over generated inputs.

mod common;

use std::collections::HashSet;
use std::sync::Arc;

use common::prepared;
use privarg_core::agent::{build_oskb, decide_drop, Dedication, Division, PrivacyBehavior, Scope};
use privarg_core::argumentation::{construct_arguments, ContentId, Side, Vocabulary};
use privarg_core::dataset::{generate_dataset, parse, serialize, Dataset, GenParams};
use privarg_core::dispute::{
    run_dispute, AgentSpec, DisputeOutcome, DisputeState, EngineOptions, PreparedCase, Teams,
};
use privarg_core::seed::rng_from;
use proptest::prelude::*;

fn small_dataset(seed: u64, amount: usize, size: usize, arg: usize, branches: usize) -> Dataset {
    generate_dataset(&GenParams {
        dispute_amount: amount,
        dispute_size: size,
        max_argument_size: arg,
        max_branches: branches,
        seed,
        ..GenParams::default()
    })
    .unwrap()
}

fn one_case(seed: u64) -> Arc<PreparedCase> {
    let ds = small_dataset(seed, 1, 12, 5, 2);
    prepared(ds.cases.into_iter().next().unwrap())
}

fn behavior() -> impl Strategy<Value = PrivacyBehavior> {
    (0..PrivacyBehavior::grid().len()).prop_map(|i| PrivacyBehavior::grid()[i])
}

fn scope() -> impl Strategy<Value = Scope> {
    prop::sample::select(Scope::ALL.to_vec())
}

fn duel(
    case: &Arc<PreparedCase>,
    p: PrivacyBehavior,
    o: PrivacyBehavior,
    seed: u64,
) -> DisputeOutcome {
    let teams = Teams::duel(AgentSpec::new("p", p), AgentSpec::new("o", o));
    run_dispute(case, &teams, seed, EngineOptions::default()).unwrap()
}

fn hashes(state: &DisputeState) -> Vec<(u32, Vec<String>)> {
    state
        .move_log()
        .iter()
        .map(|m| {
            (
                m.actor.0,
                m.added_arguments
                    .iter()
                    .map(|a| a.hash().to_string())
                    .collect(),
            )
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn turns_alternate_and_terminate(case_seed: u64, seed: u64, p in behavior(), o in behavior()) {
        let case = one_case(case_seed);
        let out = duel(&case, p, o, seed);
        let log = out.state.move_log();
        prop_assert!(log.len() <= 10 * case.case().content_len());
        for (i, m) in log.iter().enumerate() {
            let side = out.state.participant(m.actor).side;
            let expected = if i % 2 == 0 { Side::Proponent } else { Side::Opponent };
            prop_assert_eq!(side, expected);
            prop_assert!(!m.added_arguments.is_empty());
            prop_assert_eq!(m.turn_index, i);
        }
        let next = if log.len().is_multiple_of(2) { Side::Proponent } else { Side::Opponent };
        prop_assert_eq!(out.forfeited_by, next);
        if out.forfeited_by == Side::Proponent {
            prop_assert_eq!(out.winner, Side::Opponent);
        }
    }

    #[test]
    fn concealment_never_increases(case_seed: u64, seed: u64, p in behavior(), o in behavior()) {
        let case = one_case(case_seed);
        let out = duel(&case, p, o, seed);
        let log: Vec<_> = out
            .state
            .move_log()
            .iter()
            .map(|m| (m.actor, m.added_arguments.iter().map(|a| a.hash()).collect::<Vec<_>>()))
            .collect();
        let participants = out.participants().to_vec();
        let mut last = [1.0f64; 2];
        for k in 0..=log.len() {
            let st = DisputeState::replay(Arc::clone(&case), participants.clone(), &log[..k], false).unwrap();
            for (i, prev) in last.iter_mut().enumerate() {
                let c = st.concealment(privarg_core::dispute::AgentId(i as u32));
                prop_assert!(c <= *prev + 1e-12);
                prop_assert!((0.0..=1.0).contains(&c));
                *prev = c;
            }
        }
        prop_assert_eq!(last.to_vec(), out.concealment);
    }

    #[test]
    fn replay_reproduces_the_outcome(case_seed: u64, seed: u64, p in behavior(), o in behavior()) {
        let case = one_case(case_seed);
        let out = duel(&case, p, o, seed);
        let log: Vec<_> = out
            .state
            .move_log()
            .iter()
            .map(|m| (m.actor, m.added_arguments.iter().map(|a| a.hash()).collect::<Vec<_>>()))
            .collect();
        let st = DisputeState::replay(Arc::clone(&case), out.participants().to_vec(), &log, true).unwrap();
        let again = DisputeOutcome::from_state(st).unwrap();
        prop_assert_eq!(again.winner, out.winner);
        prop_assert_eq!(again.forfeited_by, out.forfeited_by);
        prop_assert_eq!(&again.concealment, &out.concealment);
        prop_assert_eq!(again.state.trace(), out.state.trace());
        prop_assert_eq!(again.state.labels(), out.state.labels());
        // the same seed gives the same dispute
        let rerun = duel(&case, p, o, seed);
        prop_assert_eq!(hashes(&rerun.state), hashes(&out.state));
    }

    #[test]
    fn undivided_agents_ignore_dedication(case_seed: u64, seed: u64, s in scope(), o in behavior()) {
        let case = one_case(case_seed);
        let base = duel(&case, PrivacyBehavior::new(s, Division::None, 0), o, seed);
        for theta in [25, 50, 75, 100] {
            let b = PrivacyBehavior::new(s, Division::None, theta);
            let as_pro = duel(&case, b, o, seed);
            prop_assert_eq!(as_pro.state.trace(), base.state.trace());
            prop_assert_eq!(&as_pro.concealment, &base.concealment);
        }
        let base = duel(&case, o, PrivacyBehavior::new(s, Division::None, 0), seed);
        for theta in [25, 50, 75, 100] {
            let as_opp = duel(&case, o, PrivacyBehavior::new(s, Division::None, theta), seed);
            prop_assert_eq!(as_opp.state.trace(), base.state.trace());
        }
    }

    #[test]
    fn oskb_levels_partition_content(case_seed: u64, seed: u64, d in prop::sample::select(Division::ALL.to_vec())) {
        let mut rng = rng_from(&[case_seed]);
        let mut v = Vocabulary::new();
        let kb = common::random_kb(&mut rng, &mut v, 6, "k");
        prop_assume!(!kb.is_empty());
        let args = construct_arguments(&kb, &v).unwrap();
        let oskb = build_oskb(&kb, &args, d, None, &mut rng_from(&[seed])).unwrap();
        let mut seen: HashSet<ContentId> = HashSet::new();
        for level in oskb.levels() {
            prop_assert!(!level.is_empty());
            for c in level.content() {
                prop_assert!(seen.insert(c), "content placed twice");
            }
        }
        let all: HashSet<ContentId> = kb.content().into_iter().collect();
        prop_assert_eq!(seen, all);
        match d {
            Division::None => prop_assert_eq!(oskb.len(), 1),
            Division::AllContent => prop_assert_eq!(oskb.len(), kb.content_len()),
            Division::HalfArgs => prop_assert!(oskb.len() <= 2),
            Division::AllArgs => {}
        }
    }

    #[test]
    fn datasets_round_trip(seed: u64, amount in 1usize..6, size in 1usize..25, arg in 1usize..10, branches in 1usize..4) {
        let ds = small_dataset(seed, amount, size, arg, branches);
        let text = serialize(&ds);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &ds);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn extreme_dedication_is_certain(seed: u64) {
        let mut rng = rng_from(&[seed]);
        for _ in 0..50 {
            prop_assert!(!decide_drop(Dedication::new(0).unwrap(), &mut rng));
            prop_assert!(decide_drop(Dedication::new(100).unwrap(), &mut rng));
        }
    }
}
