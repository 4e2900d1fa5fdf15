//! Dataset files: a hand-written fixture, generator output and error reports.

mod common;

use common::prepared;
use privarg_core::agent::PrivacyBehavior;
use privarg_core::argumentation::{Bias, PremiseKind, Side};
use privarg_core::dataset::{content_hash, generate_dataset, parse, serialize, GenParams};
use privarg_core::dispute::{run_dispute, AgentSpec, EngineOptions, Teams};
use privarg_core::error::Error;

const FIXTURE: &str = include_str!("fixtures/two_arguments.toml");

#[test]
fn hand_written_fixture_parses_and_plays() {
    let ds = parse(FIXTURE).unwrap();
    assert_eq!(ds.cases.len(), 1);
    assert_eq!(ds.params.seed, 0);
    let case = &ds.cases[0];
    let v = &case.vocabulary;
    assert_eq!(v.statement_name(case.subject), "s");
    let q = v.lookup_statement("q").unwrap();
    assert!(case.shared_contraries.contains(q, case.subject));
    assert_eq!(
        case.proponent_kbs[0].premises()[0].kind,
        PremiseKind::Ordinary
    );
    assert_eq!(case.opponent_kbs[0].biases, vec![Bias("prefers q".into())]);

    let c = prepared(case.clone());
    assert_eq!(c.pools(Side::Proponent)[0].arguments.len(), 1);
    assert_eq!(c.pools(Side::Opponent)[0].arguments.len(), 1);
    let teams = Teams::duel(
        AgentSpec::new("p", PrivacyBehavior::INDIFFERENT),
        AgentSpec::new("o", PrivacyBehavior::INDIFFERENT),
    );
    let out = run_dispute(&c, &teams, 0, EngineOptions::default()).unwrap();
    assert_eq!(out.state.move_log().len(), 2);
    assert_eq!(out.winner, Side::Opponent);

    // re-serializing and parsing again is lossless
    assert_eq!(parse(&serialize(&ds)).unwrap(), ds);
}

#[test]
fn errors_carry_locations() {
    let cases = [
        (
            FIXTURE.replace(
                "kind = \"ordinary\" }]\nrules = []\n\n[[cases.opponent]]",
                "kind = \"maybe\" }]\nrules = []\n\n[[cases.opponent]]",
            ),
            "line",
        ),
        (FIXTURE.replace("version = 1", "version = 7"), "version"),
        (
            FIXTURE.replace("subject = \"s\"", "subject = \"nowhere\""),
            "cases[0].subject",
        ),
        (
            FIXTURE.replace("[[\"q\", \"s\"]]", "[[\"q\", \"x\"]]"),
            "cases[0]",
        ),
        (
            FIXTURE.replace("seed = \"0\"", "seed = \"minus one\""),
            "params.seed",
        ),
        (
            FIXTURE.replace("id = \"pair\"", "id = \"pair\"\ncolour = \"red\""),
            "line",
        ),
    ];
    for (text, location) in cases {
        let err = parse(&text).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
        assert!(
            err.to_string().contains(location),
            "expected `{location}` in: {err}"
        );
        assert!(err.is_usage());
    }
}

#[test]
fn duplicate_case_ids_are_rejected() {
    let ds = parse(FIXTURE).unwrap();
    let mut twice = ds.clone();
    twice.cases.push(ds.cases[0].clone());
    assert!(parse(&serialize(&twice)).is_err());
}

#[test]
fn generation_is_reproducible() {
    let params = GenParams {
        dispute_amount: 30,
        seed: 77,
        ..GenParams::default()
    };
    let a = serialize(&generate_dataset(&params).unwrap());
    let b = serialize(&generate_dataset(&params).unwrap());
    assert_eq!(content_hash(&a), content_hash(&b));
    let other = serialize(&generate_dataset(&GenParams { seed: 78, ..params }).unwrap());
    assert_ne!(content_hash(&a), content_hash(&other));
}

#[test]
fn every_generated_case_prepares_and_opens() {
    let ds = generate_dataset(&GenParams {
        dispute_amount: 50,
        seed: 3,
        ..GenParams::default()
    })
    .unwrap();
    for case in ds.cases {
        let c = prepared(case);
        let subject = c.subject();
        assert!(
            c.pools(Side::Proponent)[0]
                .arguments
                .iter()
                .any(|a| a.conclusion() == subject),
            "case {} has no argument for its subject",
            c.id()
        );
    }
}
