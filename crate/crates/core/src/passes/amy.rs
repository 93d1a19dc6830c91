//! Step-by-step derivation of the T-depth 3 Toffoli from the five-gate NCV
//! realization.

use crate::algebra::Axis;
use crate::circuit::{Circuit, Gate};
use crate::error::Result;
use crate::rules::{RuleId, RuleParams};
use crate::text::parse;

use super::builtins::builtin;
use super::script::{DerivationScript, ScriptBuilder};

use RuleId::{CnotRuleD7 as D7, CommuteAdjacent as Commute, SwapTConjugation as SwapT};

fn gates(body: &str) -> Vec<Gate> {
    parse(&format!("qubits 3\n{body}"))
        .expect("well-formed milestone")
        .into_gates()
}

fn mirror() -> RuleParams {
    RuleParams {
        mirror: Some(true),
        ..RuleParams::default()
    }
}

/// Runs `(rule, anchor, params)` triples with anchors shifted by `offset`.
fn run(b: &mut ScriptBuilder, offset: usize, steps: &[(RuleId, usize, RuleParams)]) -> Result<()> {
    for (rule, anchor, params) in steps {
        b.step_with(*rule, offset + anchor, params.clone())?;
    }
    Ok(())
}

/// The derivation script. Its final circuit prints identically to the
/// `amy-toffoli` builtin.
pub fn derive_amy_toffoli() -> Result<DerivationScript> {
    let start = builtin("barenco-toffoli").expect("builtin");
    let mut b = ScriptBuilder::new("amy-toffoli", start);
    let d = RuleParams::default;

    // Back to the Toffoli, then re-expand with controlled S gates between
    // Hadamards and flip the middle one onto line 1.
    b.step_with(RuleId::Thm2BarencoExtended, 0, RuleParams::backward())?;
    b.step_with(
        RuleId::Thm2BarencoExtended,
        0,
        RuleParams {
            b_axis: Some(Axis::Z),
            ..d()
        },
    )?;
    b.step(RuleId::FlipZRootControlTarget, 3)?;

    // Remove every control, right to left so anchors stay put.
    for i in [5, 3, 1] {
        b.step(RuleId::Thm1RemoveControl, i)?;
    }

    // Gather the first T layer and cancel a T/T† pair on the target line.
    b.reorder_to(&gates(
        "h 2\nt 0\nt 1\nt 2\ncx 1 2\ntdg 2\ncx 1 2\ncx 0 1\ntdg 1\ncx 2 1\nt 1\ncx 2 1\ncx 0 1\n\
         tdg 2\nt 2\ncx 0 2\ntdg 2\ncx 0 2\nh 2",
    ))?;
    b.step(RuleId::MergeSameControls, 13)?;

    run(
        &mut b,
        0,
        &[
            (Commute, 12, d()),
            (D7, 11, RuleParams::backward()),
            (Commute, 10, d()),
            (D7, 9, mirror()),
            (Commute, 9, d()),
        ],
    )?;
    run(
        &mut b,
        0,
        &[
            (SwapT, 7, d()),
            (Commute, 6, d()),
            (Commute, 5, d()),
            (Commute, 4, d()),
            (SwapT, 5, d()),
            (Commute, 13, d()),
            (Commute, 7, d()),
            (Commute, 6, d()),
        ],
    )?;
    run(&mut b, 0, &[(D7, 9, d()), (Commute, 10, d()), (D7, 8, mirror())])?;

    b.reorder_to(&gates(
        "h 2\nt 0\nt 1\nt 2\ncx 1 0\ncx 2 1\ncx 0 2\ntdg 1\ncx 0 1\ncx 2 1\ncx 1 2\ntdg 0\n\
         cx 1 0\ncx 2 1\nt 1\ntdg 2\ncx 2 1\ncx 0 2\nh 2",
    ))?;
    run(
        &mut b,
        11,
        &[
            (Commute, 4, d()),
            (SwapT, 2, d()),
            (Commute, 1, d()),
            (Commute, 2, d()),
            (Commute, 3, d()),
            (Commute, 4, d()),
            (D7, 5, d()),
            (SwapT, 1, d()),
            (Commute, 6, d()),
            (Commute, 5, d()),
            (Commute, 3, d()),
            (Commute, 0, d()),
        ],
    )?;

    // Two SWAPs of lines 1 and 2 enclose the last T layer; relabel it.
    b.insert_pair(17, &Gate::cx(2, 1), "complete a second SWAP of lines 1 and 2")?;
    b.step(RuleId::RelabelBetweenSwaps, 9)?;
    b.swap(10)?;

    let expected: Circuit = builtin("amy-toffoli").expect("builtin");
    Ok(b.finish(Some(expected)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::print;

    #[test]
    fn reaches_the_builtin() {
        let script = derive_amy_toffoli().unwrap();
        let run = script.execute().unwrap();
        assert_eq!(
            print(run.final_circuit(), true),
            print(&builtin("amy-toffoli").unwrap(), true)
        );
        let s = run.final_circuit().stats().unwrap();
        assert_eq!(s.t_depth, 3);
        let inserts = script
            .steps
            .iter()
            .filter(|s| s.step.rule == RuleId::InsertIdentityPair)
            .count();
        assert_eq!(inserts, 1);
        assert!(script.steps.iter().all(|s| s.note.is_some() == (s.step.rule == RuleId::InsertIdentityPair)));
    }

    #[test]
    fn passes_through_the_controlled_s_form() {
        let script = derive_amy_toffoli().unwrap();
        let run = script.execute().unwrap();
        let cs = "qubits 3\nh 2\ns 2 ctrl +1\ncx 0 1\nsdg 1 ctrl +2\ncx 0 1\ns 2 ctrl +0\nh 2\n";
        assert!(run.circuits.iter().any(|c| print(c, true) == cs));
    }
}
