use super::*;
use crate::algebra::{Axis, NamedOp, RootExponent};
use crate::circuit::{Control, Gate};
use crate::semantics::is_equivalent;
use crate::text::{parse, print};

fn circ(text: &str) -> Circuit {
    parse(text).unwrap()
}

fn run(step: RewriteStep, c: &Circuit) -> Circuit {
    let out = apply(&step, c).unwrap();
    assert!(is_equivalent(c, &out).unwrap(), "{step} broke equivalence");
    out
}

fn z_param(b: Axis) -> RuleParams {
    RuleParams {
        b_axis: Some(b),
        ..RuleParams::default()
    }
}

#[test]
fn thm1_applies_to_controlled_s() {
    let c = circ("qubits 2\ns 1 ctrl +0");
    assert!(applicable(RuleId::Thm1RemoveControl, &c, 0, &RuleParams::default()).unwrap().applicable);
}

#[test]
fn merge_reports_differing_controls() {
    let c = circ("qubits 3\ncx 0 2\ncx 1 2");
    let a = applicable(RuleId::MergeSameControls, &c, 0, &RuleParams::default()).unwrap();
    assert!(!a.applicable);
    assert_eq!(a.diagnostic.as_deref(), Some("control sets differ"));
}

#[test]
fn thm2_applies_to_doubly_controlled_v() {
    let c = circ("qubits 3\nv 2 ctrl +0 +1");
    assert!(applicable(RuleId::Thm2BarencoExtended, &c, 0, &RuleParams::default()).unwrap().applicable);
}

#[test]
fn thm1_on_controlled_s_gives_t_pattern() {
    // Control below the target.
    let c = circ("qubits 2\ns 0 ctrl +1");
    let out = run(RewriteStep::with(RuleId::Thm1RemoveControl, 0, z_param(Axis::X)), &c);
    assert_eq!(out.len(), 5);
    let stats = out.stats().unwrap();
    assert_eq!(stats.t_count, 3);
    assert_eq!(stats.counts.get("cx"), Some(&2));
    assert!(!stats.controlled_t);
}

#[test]
fn thm2_on_toffoli_gives_barenco() {
    let c = circ("qubits 3\nx 2 ctrl +0 +1");
    let out = run(RewriteStep::new(RuleId::Thm2BarencoExtended, 0), &c);
    let expected = "qubits 3\nv 2 ctrl +1\ncx 0 1\nvdg 2 ctrl +1\ncx 0 1\nv 2 ctrl +0\n";
    assert_eq!(print(&out, true), expected);
}

#[test]
fn eliminate_both_polarities() {
    let c = circ("qubits 2\nh 1 ctrl -0\nh 1 ctrl +0");
    let out = run(RewriteStep::new(RuleId::EliminateBothPolarities, 0), &c);
    assert_eq!(out.gates(), &[Gate::h(1)]);
}

#[test]
fn swap_t_conjugation_instance() {
    let c = circ("qubits 2\ncx 0 1\nt 1\ncx 0 1");
    let out = run(RewriteStep::new(RuleId::SwapTConjugation, 0), &c);
    assert_eq!(print(&out, true), "qubits 2\ncx 1 0\nt 0\ncx 1 0\n");
}

#[test]
fn lemma1_with_quarter_roots() {
    // C⁻(X^{-1/4}) C(X^{1/4}) with b = Z.
    let c = circ("qubits 2\nroot x -1/4 1 ctrl -0\nroot x 1/4 1 ctrl +0");
    let out = run(RewriteStep::with(RuleId::Lemma1Case, 0, z_param(Axis::Z)), &c);
    assert_eq!(out.len(), 4);
    let back = run(
        RewriteStep::with(
            RuleId::Lemma1Case,
            0,
            RuleParams {
                direction: Direction::Backward,
                ..z_param(Axis::Z)
            },
        ),
        &out,
    );
    assert_eq!(back, c);
}

#[test]
fn merge_to_zero_deletes_both() {
    let c = circ("qubits 2\nt 1 ctrl +0\ntdg 1 ctrl +0\nh 0");
    let out = run(RewriteStep::new(RuleId::MergeSameControls, 0), &c);
    assert_eq!(out.gates(), &[Gate::h(0)]);
}

#[test]
fn merge_adds_exponents() {
    let c = circ("qubits 1\nt 0\nt 0");
    let out = run(RewriteStep::new(RuleId::MergeSameControls, 0), &c);
    assert_eq!(out.gates(), &[Gate::root(Axis::Z, RootExponent::root(2), 0, vec![])]);
}

#[test]
fn untouched_gates_keep_their_order() {
    let c = circ("qubits 3\nh 0\ncx 1 2\ncx 1 2\nt 0\ns 2");
    let out = run(RewriteStep::new(RuleId::CancelAdjacentInverses, 1), &c);
    assert_eq!(print(&out, true), "qubits 3\nh 0\nt 0\ns 2\n");
}

#[test]
fn anchor_out_of_bounds_is_invalid_argument() {
    let c = circ("qubits 1\nt 0");
    assert!(matches!(
        applicable(RuleId::MergeSameControls, &c, 5, &RuleParams::default()),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(
        apply(&RewriteStep::new(RuleId::MergeSameControls, 0), &c),
        Err(Error::NotApplicable { .. })
    ));
}

#[test]
fn unused_params_are_rejected() {
    let c = circ("qubits 2\ncx 0 1\ncx 0 1");
    let step = RewriteStep::with(RuleId::CancelAdjacentInverses, 0, z_param(Axis::X));
    assert!(matches!(apply(&step, &c), Err(Error::InvalidArgument(_))));
}

#[test]
fn insert_identity_pair_past_the_end() {
    let c = circ("qubits 2\nh 0");
    let step = RewriteStep::with(
        RuleId::InsertIdentityPair,
        1,
        RuleParams {
            gate: Some("cx 0 1".into()),
            ..RuleParams::default()
        },
    );
    let out = run(step, &c);
    assert_eq!(out.gates(), &[Gate::h(0), Gate::cx(0, 1), Gate::cx(0, 1)]);
}

#[test]
fn relabel_between_swaps() {
    let swap = "cx 0 1\ncx 1 0\ncx 0 1\n";
    let c = circ(&format!("qubits 3\n{swap}t 0\ncx 0 2\n{swap}"));
    let out = run(RewriteStep::new(RuleId::RelabelBetweenSwaps, 0), &c);
    assert_eq!(print(&out, true), "qubits 3\nt 1\ncx 1 2\n");
}

#[test]
fn theorem1_first_gate_commutes_with_the_rest() {
    for b in [Axis::X, Axis::Y] {
        let c = circ("qubits 2\nroot z 1/2 1 ctrl +0");
        let out = run(RewriteStep::with(RuleId::Thm1RemoveControl, 0, z_param(b)), &c);
        let g = out.gates();
        let rotated = Circuit::new(2, [&g[1..], &g[..1]].concat()).unwrap();
        assert!(is_equivalent(&out, &rotated).unwrap());
    }
}

#[test]
fn moves_on_cnot_pair_include_cancel() {
    let c = circ("qubits 2\ncx 0 1\ncx 0 1");
    let moves = enumerate_moves(&c).unwrap();
    let cancel = moves
        .iter()
        .find(|m| m.step.rule == RuleId::CancelAdjacentInverses)
        .unwrap();
    assert_eq!(cancel.delta.gate_count, -2);
    for m in &moves {
        let out = apply(&m.step, &c).unwrap();
        assert_eq!(
            m.delta,
            StatsDelta::between(&c.stats().unwrap(), &out.stats().unwrap())
        );
    }
}

#[test]
fn moves_on_controlled_s_include_thm1() {
    let c = circ("qubits 2\ns 1 ctrl +0");
    let moves = enumerate_moves(&c).unwrap();
    assert!(moves.iter().any(|m| m.step.rule == RuleId::Thm1RemoveControl));
    assert!(enumerate_moves(&Circuit::empty(3)).unwrap().is_empty());
}

#[test]
fn every_listed_move_is_sound() {
    let c = circ(
        "qubits 3\nh 2\nv 2 ctrl +1\ncx 0 1\nvdg 2 ctrl +1\ncx 0 1\nv 2 ctrl +0\nt 0\ns 1 ctrl -0\nh 2",
    );
    for m in enumerate_moves(&c).unwrap() {
        run(m.step, &c);
    }
}

#[test]
fn rule_names_round_trip() {
    for r in RuleId::ALL {
        assert_eq!(r.name().parse::<RuleId>().unwrap(), r);
        assert!(!r.description().is_empty());
    }
    assert_eq!("cancel-adjacent-inverses".parse::<RuleId>().unwrap(), RuleId::CancelAdjacentInverses);
    assert!("nope".parse::<RuleId>().is_err());
}

#[test]
fn steps_serialize_compactly() {
    let s = RewriteStep::new(RuleId::CnotRuleD7, 3);
    let json = serde_json::to_value(&s).unwrap();
    assert_eq!(json["anchor"], 3);
    assert_eq!(json["params"], serde_json::json!({}));
    let back: RewriteStep = serde_json::from_value(json).unwrap();
    assert_eq!(back, s);
    let bad = serde_json::json!({"rule": s.rule, "anchor": 0, "params": {"bogus": 1}});
    assert!(serde_json::from_value::<RewriteStep>(bad).is_err());
}

#[test]
fn flip_moves_control_to_target() {
    let c = Circuit::new(3, vec![Gate::new(NamedOp::root(Axis::Z, 1, 2), 2, vec![Control::pos(0), Control::neg(1)])]).unwrap();
    let out = run(RewriteStep::new(RuleId::FlipZRootControlTarget, 0), &c);
    assert_eq!(out.gates()[0].target, 0);
    assert_eq!(out.gates()[0].control_on(2), Some(crate::circuit::Polarity::Positive));
}
