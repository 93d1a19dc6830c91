//! Derivation scripts: an initial circuit plus anchored rewrite steps,
//! replayed with an equivalence check after every step.

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::rules::{apply, RewriteStep, RuleId, RuleParams};
use crate::semantics::equivalent;
use crate::text::{print, print_gate};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScriptStep {
    #[serde(flatten)]
    pub step: RewriteStep,
    /// Why a manual step was taken, e.g. an inserted CNOT pair.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivationScript {
    pub name: String,
    pub initial: Circuit,
    pub steps: Vec<ScriptStep>,
    pub expected_final: Option<Circuit>,
}

/// The circuits visited by a successful run, starting with the initial one.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub circuits: Vec<Circuit>,
}

impl Derivation {
    pub fn final_circuit(&self) -> &Circuit {
        self.circuits.last().expect("contains the initial circuit")
    }
}

impl DerivationScript {
    /// Replays every step, checking that each one applies, that every
    /// intermediate is equivalent to the initial circuit, and that the end
    /// result prints identically to `expected_final` when given.
    pub fn execute(&self) -> Result<Derivation> {
        let fail = |step: usize, reason: String| Error::Script {
            script: self.name.clone(),
            step,
            reason,
        };
        let mut circuits = vec![self.initial.clone()];
        for (i, s) in self.steps.iter().enumerate() {
            let cur = circuits.last().expect("nonempty");
            let next = apply(&s.step, cur).map_err(|e| fail(i, e.to_string()))?;
            if equivalent(&self.initial, &next)?.is_none() {
                return Err(Error::Soundness(format!(
                    "script `{}` step {i} ({}) changed the unitary",
                    self.name, s.step
                )));
            }
            circuits.push(next);
        }
        if let Some(expected) = &self.expected_final {
            let got = print(circuits.last().expect("nonempty"), true);
            let want = print(expected, true);
            if got != want {
                return Err(fail(
                    self.steps.len(),
                    format!("final circuit differs from the expected one:\n{got}"),
                ));
            }
        }
        Ok(Derivation { circuits })
    }
}

/// Builds a script by applying steps as they are added.
#[derive(Debug, Clone)]
pub struct ScriptBuilder {
    name: String,
    initial: Circuit,
    current: Circuit,
    steps: Vec<ScriptStep>,
}

/// Rules tried, in order, to swap two neighbouring gates.
const SWAPS: [(RuleId, bool); 4] = [
    (RuleId::CommuteAdjacent, false),
    (RuleId::CommuteOppositePolarity, false),
    (RuleId::MoveZRootOverControl, false),
    (RuleId::MoveZRootOverControl, true),
];

impl ScriptBuilder {
    pub fn new(name: &str, initial: Circuit) -> ScriptBuilder {
        ScriptBuilder {
            name: name.to_string(),
            current: initial.clone(),
            initial,
            steps: Vec::new(),
        }
    }

    pub fn current(&self) -> &Circuit {
        &self.current
    }

    pub fn push(&mut self, step: RewriteStep, note: Option<&str>) -> Result<&mut Self> {
        let next = apply(&step, &self.current).map_err(|e| Error::Script {
            script: self.name.clone(),
            step: self.steps.len(),
            reason: e.to_string(),
        })?;
        self.current = next;
        self.steps.push(ScriptStep {
            step,
            note: note.map(str::to_string),
        });
        Ok(self)
    }

    pub fn step(&mut self, rule: RuleId, anchor: usize) -> Result<&mut Self> {
        self.push(RewriteStep::new(rule, anchor), None)
    }

    pub fn step_with(&mut self, rule: RuleId, anchor: usize, params: RuleParams) -> Result<&mut Self> {
        self.push(RewriteStep::with(rule, anchor, params), None)
    }

    /// Inserts `g` twice before position `at`.
    pub fn insert_pair(&mut self, at: usize, g: &Gate, note: &str) -> Result<&mut Self> {
        let params = RuleParams {
            gate: Some(print_gate(g, true)),
            ..RuleParams::default()
        };
        self.push(RewriteStep::with(RuleId::InsertIdentityPair, at, params), Some(note))
    }

    /// Swaps the gates at `i` and `i + 1` with the first commutation rule
    /// that applies.
    pub fn swap(&mut self, i: usize) -> Result<&mut Self> {
        for (rule, back) in SWAPS {
            let params = if back { RuleParams::backward() } else { RuleParams::default() };
            let step = RewriteStep::with(rule, i, params);
            if let Ok(next) = apply(&step, &self.current) {
                if next.gates().get(i) == self.current.gates().get(i + 1) {
                    self.current = next;
                    self.steps.push(ScriptStep { step, note: None });
                    return Ok(self);
                }
            }
        }
        Err(Error::Script {
            script: self.name.clone(),
            step: self.steps.len(),
            reason: format!("gates {i} and {} do not commute", i + 1),
        })
    }

    /// Moves the gate at `from` to position `to` by adjacent swaps.
    pub fn move_gate(&mut self, from: usize, to: usize) -> Result<&mut Self> {
        if from > to {
            for i in (to..from).rev() {
                self.swap(i)?;
            }
        } else {
            for i in from..to {
                self.swap(i)?;
            }
        }
        Ok(self)
    }

    /// Brings the gate at `j` next to the one at `i < j` by commutations
    /// and merges the two.
    pub fn merge(&mut self, i: usize, j: usize) -> Result<&mut Self> {
        self.move_gate(j, i + 1)?;
        self.step(RuleId::MergeSameControls, i)
    }

    /// Reorders the current gates into `target`, a permutation of them,
    /// using only commutations. Gates are placed left to right; for each
    /// slot the first matching gate that can travel there is used.
    pub fn reorder_to(&mut self, target: &[Gate]) -> Result<&mut Self> {
        if target.len() != self.current.len() {
            return Err(self.reorder_error("gate counts differ"));
        }
        for (i, want) in target.iter().enumerate() {
            let candidates: Vec<usize> = (i..self.current.len())
                .filter(|&j| self.current.gates()[j] == *want)
                .collect();
            let mut placed = false;
            for j in candidates {
                let mut trial = self.clone();
                if trial.move_gate(j, i).is_ok() {
                    *self = trial;
                    placed = true;
                    break;
                }
            }
            if !placed {
                return Err(self.reorder_error(&format!(
                    "cannot bring `{}` to position {i}",
                    print_gate(want, true)
                )));
            }
        }
        Ok(self)
    }

    fn reorder_error(&self, reason: &str) -> Error {
        Error::Script {
            script: self.name.clone(),
            step: self.steps.len(),
            reason: reason.to_string(),
        }
    }

    pub fn finish(self, expected_final: Option<Circuit>) -> DerivationScript {
        DerivationScript {
            name: self.name,
            initial: self.initial,
            steps: self.steps,
            expected_final,
        }
    }
}
