//! Step-by-step derivation of the T-depth 2 full adder from a pair of
//! Peres gates.

use crate::algebra::Axis;
use crate::circuit::{Circuit, Gate};
use crate::error::Result;
use crate::rules::{RuleId, RuleParams};
use crate::text::parse;

use super::builtins::builtin;
use super::mapping::translate_library;
use super::script::{DerivationScript, ScriptBuilder};

use RuleId::{CnotRuleD7 as D7, CommuteAdjacent as Commute, SwapTConjugation as SwapT};

fn gates(body: &str) -> Vec<Gate> {
    parse(&format!("qubits 4\n{body}"))
        .expect("well-formed milestone")
        .into_gates()
}

fn run(b: &mut ScriptBuilder, offset: usize, steps: &[(RuleId, usize, RuleParams)]) -> Result<()> {
    for (rule, anchor, params) in steps {
        b.step_with(*rule, offset + anchor, params.clone())?;
    }
    Ok(())
}

/// The derivation script. Its final circuit prints identically to the
/// `full-adder-final` builtin.
pub fn derive_full_adder() -> Result<DerivationScript> {
    let start = builtin("peres-pair-adder").expect("builtin");
    let mut b = ScriptBuilder::new("full-adder", start);
    let d = RuleParams::default;
    let back_mirror = || RuleParams {
        mirror: Some(true),
        ..RuleParams::backward()
    };

    // Expand both Toffolis; each leaves a CNOT that cancels its neighbour.
    b.step(RuleId::Thm2BarencoExtended, 0)?;
    b.swap(4)?;
    b.step(RuleId::CancelAdjacentInverses, 3)?;
    b.step(RuleId::Thm2BarencoExtended, 4)?;
    b.swap(8)?;
    b.step(RuleId::CancelAdjacentInverses, 7)?;

    // The controlled V and V† on line 1 meet and cancel.
    b.merge(2, 7)?;
    b.reorder_to(&gates(
        "v 3 ctrl +2\nv 3 ctrl +1\nv 3 ctrl +0\ncx 0 1\ncx 1 2\nvdg 3 ctrl +2",
    ))?;

    // Controlled S gates between Hadamards, inner Hadamards cancelled.
    for i in [5, 2, 1, 0] {
        b.step(RuleId::TranslateRoot, i)?;
    }
    b.step(RuleId::CancelInvolution, 2)?;
    b.step(RuleId::CancelInvolution, 3)?;
    b.move_gate(4, 6)?;
    b.step(RuleId::CancelInvolution, 6)?;
    b.step(RuleId::FlipZRootControlTarget, 2)?;
    b.step(RuleId::FlipZRootControlTarget, 3)?;

    // Remove the controls of all but the last controlled S, collect the
    // Z roots on line 3 and carry them past the last one before removing it.
    for i in [3, 2] {
        b.step(RuleId::Thm1RemoveControl, i)?;
    }
    b.step_with(
        RuleId::Thm1RemoveControl,
        1,
        RuleParams {
            first_to_end: Some(true),
            ..d()
        },
    )?;
    b.merge(5, 9)?;
    b.merge(5, 13)?;
    b.move_gate(5, 16)?;
    b.step_with(
        RuleId::Thm1RemoveControl,
        15,
        RuleParams {
            first_to_end: Some(true),
            ..d()
        },
    )?;
    b.step(RuleId::MergeSameControls, 19)?;
    b.reorder_to(&gates(
        "h 3\ncx 2 3\nt 0\nt 1\nt 2\ntdg 3\ncx 2 3\ncx 3 1\ntdg 1\ncx 3 1\ncx 3 0\ntdg 0\ncx 3 0\n\
         cx 0 1\ncx 1 2\ncx 2 3\ntdg 2\nt 3\ncx 2 3\ns 3\nh 3",
    ))?;

    run(
        &mut b,
        9,
        &[
            (Commute, 0, d()),
            (Commute, 1, d()),
            (Commute, 2, d()),
            (Commute, 6, d()),
            (SwapT, 7, d()),
            (D7, 2, back_mirror()),
            (Commute, 3, d()),
            (Commute, 4, d()),
            (Commute, 5, d()),
            (Commute, 6, d()),
            (Commute, 7, d()),
            (SwapT, 5, d()),
            (Commute, 8, d()),
            (Commute, 4, d()),
        ],
    )?;

    b.insert_pair(6, &Gate::cx(0, 1), "a CNOT pair on lines 0 and 1 opens a T-depth saving")?;
    run(
        &mut b,
        7,
        &[
            (Commute, 3, d()),
            (Commute, 4, d()),
            (D7, 6, d()),
            (Commute, 5, d()),
            (Commute, 7, d()),
            (Commute, 8, d()),
            (Commute, 9, d()),
            (Commute, 10, d()),
            (Commute, 6, d()),
            (Commute, 7, d()),
            (Commute, 4, d()),
            (Commute, 5, d()),
            (Commute, 6, d()),
            (Commute, 4, d()),
            (Commute, 0, d()),
        ],
    )?;
    run(
        &mut b,
        8,
        &[
            (Commute, 1, d()),
            (D7, 0, RuleParams::backward()),
            (D7, 1, back_mirror()),
        ],
    )?;

    let expected: Circuit = builtin("full-adder-final").expect("builtin");
    Ok(b.finish(Some(expected)))
}

/// The full adder carried into the X basis: every T becomes a
/// Hadamard-conjugated fourth root of X.
pub fn derive_w_adder() -> Result<Circuit> {
    let run = derive_full_adder()?.execute()?;
    translate_library(run.final_circuit(), Axis::X)
}
