//! Hand-built disputes small enough to work out by hand.

mod common;

use std::sync::Arc;

use common::{prepared, three_argument_case};
use privarg_core::agent::{Division, PrivacyBehavior, Scope};
use privarg_core::argumentation::{
    ContraryRelation, KnowledgeBase, Label, Premise, Rule, Side, Vocabulary,
};
use privarg_core::dispute::{
    run_dispute, AgentId, AgentSpec, DisputeCase, DisputeState, EngineOptions, Participant, Team,
    Teams,
};
use privarg_core::error::Error;

fn indifferent(name: &str) -> AgentSpec {
    AgentSpec::new(name, PrivacyBehavior::INDIFFERENT)
}

fn duel_teams() -> Teams {
    Teams::duel(indifferent("p"), indifferent("o"))
}

fn case(
    id: &str,
    build: impl FnOnce(&mut Vocabulary, &mut KnowledgeBase, &mut KnowledgeBase, &mut ContraryRelation),
) -> DisputeCase {
    let mut v = Vocabulary::new();
    let subject = v.statement("s");
    let (mut pro, mut opp, mut c) = (
        KnowledgeBase::new(),
        KnowledgeBase::new(),
        ContraryRelation::new(),
    );
    build(&mut v, &mut pro, &mut opp, &mut c);
    DisputeCase {
        id: id.into(),
        vocabulary: v,
        subject,
        proponent_kbs: vec![pro],
        opponent_kbs: vec![opp],
        shared_contraries: c,
    }
}

#[test]
fn unattackable_opening_wins_in_one_move() {
    let c = prepared(case("solid", |v, pro, opp, _| {
        pro.add_premise(Premise::necessary(v.statement("s")))
            .unwrap();
        opp.add_premise(Premise::ordinary(v.statement("q")))
            .unwrap();
    }));
    let out = run_dispute(&c, &duel_teams(), 1, EngineOptions::default()).unwrap();
    assert_eq!(out.state.move_log().len(), 1);
    assert_eq!(out.winner, Side::Proponent);
    assert_eq!(out.forfeited_by, Side::Opponent);
    assert_eq!(out.concealment, vec![0.0, 1.0]);
}

#[test]
fn proponent_without_subject_argument_forfeits() {
    let c = prepared(case("empty-handed", |v, pro, opp, _| {
        pro.add_premise(Premise::ordinary(v.statement("a")))
            .unwrap();
        opp.add_premise(Premise::ordinary(v.statement("q")))
            .unwrap();
    }));
    let out = run_dispute(&c, &duel_teams(), 1, EngineOptions::default()).unwrap();
    assert!(out.state.move_log().is_empty());
    assert_eq!(out.winner, Side::Opponent);
    assert_eq!(out.forfeited_by, Side::Proponent);
    assert_eq!(out.concealment, vec![1.0, 1.0]);
}

#[test]
fn three_argument_dispute() {
    let c = prepared(three_argument_case());
    for scope in Scope::ALL {
        let b = PrivacyBehavior::new(scope, Division::AllContent, 100);
        let teams = Teams::duel(AgentSpec::new("p", b), AgentSpec::new("o", b));
        let out = run_dispute(&c, &teams, 3, EngineOptions::default()).unwrap();
        let st = &out.state;
        assert_eq!(st.move_log().len(), 3);
        assert_eq!(out.winner, Side::Proponent);
        assert_eq!(st.graph().len(), 3);
        assert_eq!(st.graph().edges().len(), 2);
        let labels: Vec<Label> = (0..3).map(|i| st.labels().label(i)).collect();
        assert_eq!(labels, vec![Label::In, Label::Out, Label::In]);
        // the proponent used p, r1 and t; the opponent's only premise is q
        assert_eq!(out.concealment, vec![0.0, 0.0]);
        assert_eq!(st.trace().lines().count(), 3);
    }
}

#[test]
fn strict_dedication_stops_at_the_first_level() {
    // all content at θ0: the proponent can only use its first level
    let c = prepared(three_argument_case());
    let p = PrivacyBehavior::new(Scope::All, Division::AllContent, 0);
    let teams = Teams::duel(AgentSpec::new("p", p), indifferent("o"));
    let out = run_dispute(&c, &teams, 0, EngineOptions::default()).unwrap();
    // the subject argument needs two of the three pieces, so nothing is playable
    assert!(out.state.move_log().is_empty());
    assert_eq!(out.winner, Side::Opponent);
    assert_eq!(out.concealment[0], 1.0);
}

#[test]
fn opponent_forfeit_still_needs_grounded_acceptance() {
    // p and q attack each other, q also attacks the subject argument
    let c = prepared(case("mirror", |v, pro, opp, c| {
        let (s, p, q) = (v.statement("s"), v.statement("p"), v.statement("q"));
        pro.add_premise(Premise::ordinary(p)).unwrap();
        pro.add_rule(Rule::defeasible(v.rule("r1"), vec![p], s).unwrap())
            .unwrap();
        opp.add_premise(Premise::ordinary(q)).unwrap();
        c.insert(q, p).unwrap();
        c.insert(p, q).unwrap();
    }));
    let out = run_dispute(&c, &duel_teams(), 0, EngineOptions::default()).unwrap();
    assert_eq!(out.state.move_log().len(), 3);
    assert_eq!(out.forfeited_by, Side::Opponent);
    assert_eq!(out.winner, Side::Opponent);
    assert!(out
        .state
        .labels()
        .labels()
        .iter()
        .all(|l| *l == Label::Undec));
}

#[test]
fn team_members_take_turns() {
    let mut v = Vocabulary::new();
    let [s, p, t, q, u] = ["s", "p", "t", "q", "u"].map(|n| v.statement(n));
    let mut pro = KnowledgeBase::new();
    pro.add_premise(Premise::ordinary(p)).unwrap();
    pro.add_premise(Premise::ordinary(t)).unwrap();
    pro.add_rule(Rule::defeasible(v.rule("r1"), vec![p], s).unwrap())
        .unwrap();
    let mut o1 = KnowledgeBase::new();
    o1.add_premise(Premise::ordinary(q)).unwrap();
    let mut o2 = KnowledgeBase::new();
    o2.add_premise(Premise::ordinary(u)).unwrap();
    let mut c = ContraryRelation::new();
    c.insert(q, p).unwrap();
    c.insert(t, q).unwrap();
    c.insert(u, t).unwrap();
    let case = prepared(DisputeCase {
        id: "team".into(),
        vocabulary: v,
        subject: s,
        proponent_kbs: vec![pro],
        opponent_kbs: vec![o1, o2],
        shared_contraries: c,
    });
    let teams = Teams::new(
        Team::solo(Side::Proponent, indifferent("p")),
        Team::new(Side::Opponent, vec![indifferent("o1"), indifferent("o2")]).unwrap(),
    )
    .unwrap();
    let out = run_dispute(&case, &teams, 0, EngineOptions::default()).unwrap();
    let actors: Vec<u32> = out.state.move_log().iter().map(|m| m.actor.0).collect();
    assert_eq!(actors, vec![0, 1, 0, 2]);
    assert_eq!(out.forfeited_by, Side::Proponent);
    assert_eq!(out.winner, Side::Opponent);
    assert_eq!(out.state.participant(AgentId(2)).kb_index, 1);
}

#[test]
fn turn_ceiling_is_enforced() {
    let c = prepared(three_argument_case());
    let opts = EngineOptions {
        turn_ceiling: Some(1),
    };
    let err = run_dispute(&c, &duel_teams(), 0, opts).unwrap_err();
    assert!(matches!(err, Error::EngineInvariant(_)), "{err}");
}

#[test]
fn illegal_extensions_are_rejected() {
    let c = prepared(three_argument_case());
    let participants = vec![
        Participant {
            name: "p".into(),
            side: Side::Proponent,
            kb_index: 0,
        },
        Participant {
            name: "o".into(),
            side: Side::Opponent,
            kb_index: 0,
        },
    ];
    let mut st = DisputeState::new(Arc::clone(&c), participants).unwrap();
    let pro_pool = &c.pools(Side::Proponent)[0].arguments;
    let opp_pool = &c.pools(Side::Opponent)[0].arguments;
    let opening = pro_pool
        .iter()
        .find(|a| a.conclusion() == c.subject())
        .unwrap()
        .clone();
    let other = pro_pool
        .iter()
        .find(|a| a.conclusion() != c.subject())
        .unwrap()
        .clone();

    assert!(matches!(
        st.extend(AgentId(1), opp_pool.to_vec()),
        Err(Error::IllegalMove(_))
    ));
    assert!(matches!(
        st.extend(AgentId(0), vec![]),
        Err(Error::IllegalMove(_))
    ));
    assert!(matches!(
        st.extend(AgentId(0), vec![other]),
        Err(Error::ProtocolViolation {
            reason: "argument is not useful",
            ..
        })
    ));
    assert!(matches!(
        st.extend(AgentId(0), vec![opp_pool[0].clone()]),
        Err(Error::ProtocolViolation { .. })
    ));
    assert!(matches!(
        st.extend(AgentId(0), vec![opening.clone(), opening.clone()]),
        Err(Error::ProtocolViolation { .. })
    ));
    st.extend(AgentId(0), vec![opening.clone()]).unwrap();
    assert_eq!(st.turn(), Side::Opponent);
    assert!(st.forfeit(Side::Proponent).is_err());
    assert_eq!(st.forfeit(Side::Opponent).unwrap(), Side::Proponent);
    assert!(matches!(
        st.extend(AgentId(1), opp_pool.to_vec()),
        Err(Error::IllegalMove(_))
    ));
}
