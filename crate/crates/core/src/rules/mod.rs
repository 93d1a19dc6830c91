//! Position-anchored rewrite rules over circuits.
//!
//! A rule matches a window of consecutive gates starting at the anchor and
//! replaces it. Rules declared bidirectional also match their right-hand side
//! when applied with `direction: backward`.

mod catalog;
pub mod soundness;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Axis;
use crate::circuit::{Circuit, CircuitStats, StatsDelta};
use crate::error::{Error, Result};

pub use soundness::{check_soundness, Counterexample, SoundnessReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    MergeSameControls,
    CommuteOppositePolarity,
    EliminateBothPolarities,
    CaseGateSplit,
    FlipZRootControlTarget,
    ConjugateByTranslation,
    MoveZRootOverControl,
    CnotRuleD7,
    Lemma1Case,
    Lemma1CaseCorollary,
    Thm1RemoveControl,
    Thm2BarencoExtended,
    SwapTConjugation,
    CancelAdjacentInverses,
    CancelInvolution,
    TranslateRoot,
    CommuteAdjacent,
    InsertIdentityPair,
    RelabelBetweenSwaps,
}

impl RuleId {
    pub const ALL: [RuleId; 19] = [
        RuleId::MergeSameControls,
        RuleId::CommuteOppositePolarity,
        RuleId::EliminateBothPolarities,
        RuleId::CaseGateSplit,
        RuleId::FlipZRootControlTarget,
        RuleId::ConjugateByTranslation,
        RuleId::MoveZRootOverControl,
        RuleId::CnotRuleD7,
        RuleId::Lemma1Case,
        RuleId::Lemma1CaseCorollary,
        RuleId::Thm1RemoveControl,
        RuleId::Thm2BarencoExtended,
        RuleId::SwapTConjugation,
        RuleId::CancelAdjacentInverses,
        RuleId::CancelInvolution,
        RuleId::TranslateRoot,
        RuleId::CommuteAdjacent,
        RuleId::InsertIdentityPair,
        RuleId::RelabelBetweenSwaps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::MergeSameControls => "MergeSameControls",
            RuleId::CommuteOppositePolarity => "CommuteOppositePolarity",
            RuleId::EliminateBothPolarities => "EliminateBothPolarities",
            RuleId::CaseGateSplit => "CaseGateSplit",
            RuleId::FlipZRootControlTarget => "FlipZRootControlTarget",
            RuleId::ConjugateByTranslation => "ConjugateByTranslation",
            RuleId::MoveZRootOverControl => "MoveZRootOverControl",
            RuleId::CnotRuleD7 => "CnotRuleD7",
            RuleId::Lemma1Case => "Lemma1Case",
            RuleId::Lemma1CaseCorollary => "Lemma1CaseCorollary",
            RuleId::Thm1RemoveControl => "Thm1RemoveControl",
            RuleId::Thm2BarencoExtended => "Thm2BarencoExtended",
            RuleId::SwapTConjugation => "SwapTConjugation",
            RuleId::CancelAdjacentInverses => "CancelAdjacentInverses",
            RuleId::CancelInvolution => "CancelInvolution",
            RuleId::TranslateRoot => "TranslateRoot",
            RuleId::CommuteAdjacent => "CommuteAdjacent",
            RuleId::InsertIdentityPair => "InsertIdentityPair",
            RuleId::RelabelBetweenSwaps => "RelabelBetweenSwaps",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            RuleId::MergeSameControls => "merge two same-axis roots with identical controls",
            RuleId::CommuteOppositePolarity => "swap gates with opposite-polarity controls on a shared line",
            RuleId::EliminateBothPolarities => "C-(U) C+(U) on one line is the uncontrolled U",
            RuleId::CaseGateSplit => "case gate C-(U1) C+(U2) becomes U1 C+(U1^-1 U2)",
            RuleId::FlipZRootControlTarget => "swap control and target of a controlled Z-root",
            RuleId::ConjugateByTranslation => "flip a controlled root by conjugating both lines with translations",
            RuleId::MoveZRootOverControl => "move an uncontrolled Z-root across a control on its line",
            RuleId::CnotRuleD7 => "CX(a,b) CX(b,c) = CX(b,c) CX(a,b) CX(a,c)",
            RuleId::Lemma1Case => "case gate of a root and its adjoint as sigma_b conjugation (negative exponent first)",
            RuleId::Lemma1CaseCorollary => "case gate of a root and its adjoint as sigma_b conjugation (positive exponent first)",
            RuleId::Thm1RemoveControl => "remove one control from a controlled root by doubling its degree",
            RuleId::Thm2BarencoExtended => "doubly-controlled root as five singly-controlled gates",
            RuleId::SwapTConjugation => "CX(c,t) Z^e(t) CX(c,t) = CX(t,c) Z^e(c) CX(t,c)",
            RuleId::CancelAdjacentInverses => "drop a gate followed by its inverse",
            RuleId::CancelInvolution => "drop two equal adjacent involutions",
            RuleId::TranslateRoot => "re-express a root on another axis between translation gates",
            RuleId::CommuteAdjacent => "swap adjacent gates that commute line by line",
            RuleId::InsertIdentityPair => "insert two copies of an involutory gate",
            RuleId::RelabelBetweenSwaps => "remove a pair of SWAP networks by relabelling the gates between them",
        }
    }

    /// Whether `direction: backward` is meaningful.
    pub fn is_bidirectional(self) -> bool {
        !matches!(
            self,
            RuleId::MergeSameControls
                | RuleId::CancelAdjacentInverses
                | RuleId::CancelInvolution
                | RuleId::InsertIdentityPair
                | RuleId::RelabelBetweenSwaps
        )
    }

    /// Rules whose pattern and replacement have the same shape; backward is
    /// the same operation as forward.
    pub fn is_self_inverse(self) -> bool {
        matches!(
            self,
            RuleId::CommuteOppositePolarity
                | RuleId::FlipZRootControlTarget
                | RuleId::SwapTConjugation
                | RuleId::CommuteAdjacent
        )
    }

    fn accepted_params(self) -> &'static [Param] {
        use Param::*;
        match self {
            RuleId::MergeSameControls
            | RuleId::CancelAdjacentInverses
            | RuleId::CancelInvolution
            | RuleId::RelabelBetweenSwaps => &[],
            RuleId::CommuteOppositePolarity
            | RuleId::MoveZRootOverControl
            | RuleId::SwapTConjugation
            | RuleId::CommuteAdjacent
            | RuleId::CaseGateSplit => &[Direction],
            RuleId::EliminateBothPolarities => &[Direction, Line],
            RuleId::FlipZRootControlTarget | RuleId::ConjugateByTranslation => &[Direction, Line],
            RuleId::CnotRuleD7 => &[Direction, Mirror],
            RuleId::Lemma1Case | RuleId::Lemma1CaseCorollary | RuleId::TranslateRoot => {
                &[Direction, BAxis]
            }
            RuleId::Thm1RemoveControl => &[Direction, BAxis, Line, FirstToEnd, ZPos, FlipCz],
            RuleId::Thm2BarencoExtended => {
                &[Direction, BAxis, SwapControls, DaggerRoots, LastRootSlot]
            }
            RuleId::InsertIdentityPair => &[Gate],
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    /// Accepts the canonical name or a case-insensitive kebab/snake spelling.
    fn from_str(s: &str) -> Result<RuleId> {
        let squash = |x: &str| {
            x.chars()
                .filter(|c| c.is_ascii_alphanumeric())
                .collect::<String>()
                .to_ascii_lowercase()
        };
        let key = squash(s);
        RuleId::ALL
            .into_iter()
            .find(|r| squash(r.name()) == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown rule `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Forward,
    Backward,
}

impl Direction {
    fn is_forward(&self) -> bool {
        *self == Direction::Forward
    }
}

/// Where the Z-root on the freed control line sits in the control-removal
/// pattern, relative to the two controlled `σ_b` gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZPosition {
    Before,
    #[default]
    Middle,
    After,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Param {
    Direction,
    BAxis,
    Line,
    FirstToEnd,
    ZPos,
    FlipCz,
    SwapControls,
    DaggerRoots,
    LastRootSlot,
    Mirror,
    Gate,
}

impl Param {
    fn name(self) -> &'static str {
        match self {
            Param::Direction => "direction",
            Param::BAxis => "b_axis",
            Param::Line => "line",
            Param::FirstToEnd => "first_to_end",
            Param::ZPos => "z_position",
            Param::FlipCz => "flip_cz",
            Param::SwapControls => "swap_controls",
            Param::DaggerRoots => "dagger_roots",
            Param::LastRootSlot => "last_root_slot",
            Param::Mirror => "mirror",
            Param::Gate => "gate",
        }
    }
}

/// Optional knobs of a rewrite. Unset fields take rule defaults; setting a
/// field the rule does not use is an error.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RuleParams {
    #[serde(skip_serializing_if = "Direction::is_forward")]
    pub direction: Direction,
    /// The `σ_b` axis for control removal and case gates, the second root
    /// axis for the doubly-controlled expansion, or the target axis of
    /// `TranslateRoot`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_axis: Option<Axis>,
    /// A line choice: the control to remove or flip, or the new control line
    /// when splitting a gate into both polarities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_to_end: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_position: Option<ZPosition>,
    /// Controlled-Z gates with control and target exchanged (`b = z` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flip_cz: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub swap_controls: Option<bool>,
    /// Replace every controlled root by its adjoint (target a Pauli only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dagger_roots: Option<bool>,
    /// Position 0..=4 of the last controlled root among the inner gates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub last_root_slot: Option<u8>,
    /// Use the mirrored CNOT identity `CX(b,c) CX(a,b) = CX(a,b) CX(a,c) CX(b,c)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mirror: Option<bool>,
    /// A gate directive in `.prc` syntax, e.g. `cx 0 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate: Option<String>,
}

impl RuleParams {
    pub fn backward() -> RuleParams {
        RuleParams {
            direction: Direction::Backward,
            ..RuleParams::default()
        }
    }

    pub fn is_backward(&self) -> bool {
        self.direction == Direction::Backward
    }

    fn present(&self) -> Vec<Param> {
        let mut out = Vec::new();
        if self.direction != Direction::Forward {
            out.push(Param::Direction);
        }
        let flags = [
            (self.b_axis.is_some(), Param::BAxis),
            (self.line.is_some(), Param::Line),
            (self.first_to_end.is_some(), Param::FirstToEnd),
            (self.z_position.is_some(), Param::ZPos),
            (self.flip_cz.is_some(), Param::FlipCz),
            (self.swap_controls.is_some(), Param::SwapControls),
            (self.dagger_roots.is_some(), Param::DaggerRoots),
            (self.last_root_slot.is_some(), Param::LastRootSlot),
            (self.mirror.is_some(), Param::Mirror),
            (self.gate.is_some(), Param::Gate),
        ];
        out.extend(flags.into_iter().filter(|(set, _)| *set).map(|(_, p)| p));
        out
    }

    fn check_for(&self, rule: RuleId) -> Result<()> {
        let accepted = rule.accepted_params();
        for p in self.present() {
            if !accepted.contains(&p) {
                let why = if p == Param::Direction {
                    "rule is forward-only".to_string()
                } else {
                    "not meaningful for this rule".to_string()
                };
                return Err(Error::InvalidArgument(format!(
                    "parameter `{}` rejected by {rule}: {why}",
                    p.name()
                )));
            }
        }
        if let Some(slot) = self.last_root_slot {
            if slot > 4 {
                return Err(Error::InvalidArgument(format!(
                    "last_root_slot must be within 0..=4, got {slot}"
                )));
            }
        }
        Ok(())
    }
}

/// One anchored rule application.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub rule: RuleId,
    pub anchor: usize,
    #[serde(default)]
    pub params: RuleParams,
}

impl RewriteStep {
    pub fn new(rule: RuleId, anchor: usize) -> RewriteStep {
        RewriteStep {
            rule,
            anchor,
            params: RuleParams::default(),
        }
    }

    pub fn with(rule: RuleId, anchor: usize, params: RuleParams) -> RewriteStep {
        RewriteStep {
            rule,
            anchor,
            params,
        }
    }

    pub fn backward(rule: RuleId, anchor: usize) -> RewriteStep {
        RewriteStep::with(rule, anchor, RuleParams::backward())
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.rule, self.anchor)?;
        let p = serde_json::to_string(&self.params).unwrap_or_default();
        if p != "{}" {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

/// Outcome of an applicability check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Applicability {
    pub applicable: bool,
    /// The first structural condition that failed, when not applicable.
    pub diagnostic: Option<String>,
}

fn check_anchor(rule: RuleId, c: &Circuit, anchor: usize) -> Result<()> {
    // Insertion may target the position just past the last gate.
    let limit = if rule == RuleId::InsertIdentityPair {
        c.len() + 1
    } else {
        c.len()
    };
    if anchor >= limit {
        return Err(Error::InvalidArgument(format!(
            "anchor {anchor} out of bounds for a circuit of {} gates",
            c.len()
        )));
    }
    Ok(())
}

fn matched(rule: RuleId, c: &Circuit, anchor: usize, params: &RuleParams) -> Result<catalog::Match> {
    c.ensure_valid()?;
    params.check_for(rule)?;
    check_anchor(rule, c, anchor)?;
    Ok(catalog::rewrite(rule, c, anchor, params))
}

pub fn applicable(rule: RuleId, c: &Circuit, anchor: usize, params: &RuleParams) -> Result<Applicability> {
    Ok(match matched(rule, c, anchor, params)? {
        Ok(_) => Applicability {
            applicable: true,
            diagnostic: None,
        },
        Err(d) => Applicability {
            applicable: false,
            diagnostic: Some(d),
        },
    })
}

/// Applies a step. The result is structurally rewritten only; callers that
/// need a semantic guarantee check equivalence separately.
pub fn apply(step: &RewriteStep, c: &Circuit) -> Result<Circuit> {
    match matched(step.rule, c, step.anchor, &step.params)? {
        Ok(rw) => {
            let out = c.splice(step.anchor, rw.len, rw.replacement);
            out.ensure_valid()?;
            Ok(out)
        }
        Err(diagnostic) => Err(Error::NotApplicable {
            rule: step.rule,
            anchor: step.anchor,
            diagnostic,
        }),
    }
}

/// Number of gates the step would replace, if applicable.
pub fn window_len(step: &RewriteStep, c: &Circuit) -> Result<Option<usize>> {
    Ok(matched(step.rule, c, step.anchor, &step.params)?
        .ok()
        .map(|rw| rw.len))
}

/// Parameter variants tried at every anchor when listing moves.
fn canonical_variants(rule: RuleId) -> Vec<RuleParams> {
    let mut v = vec![RuleParams::default()];
    if rule == RuleId::CnotRuleD7 {
        v.push(RuleParams {
            mirror: Some(true),
            ..RuleParams::default()
        });
    }
    if rule.is_bidirectional() && !rule.is_self_inverse() {
        let n = v.len();
        for i in 0..n {
            v.push(RuleParams {
                direction: Direction::Backward,
                ..v[i].clone()
            });
        }
    }
    v
}

/// A listed move with the metric change it would cause.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Move {
    #[serde(flatten)]
    pub step: RewriteStep,
    pub delta: StatsDelta,
}

/// Every applicable `(rule, anchor, canonical params)` on `c`. Insertion of
/// identity pairs is never listed since it applies everywhere.
pub fn enumerate_moves(c: &Circuit) -> Result<Vec<Move>> {
    let before: CircuitStats = c.stats()?;
    let mut out = Vec::new();
    for rule in RuleId::ALL {
        if rule == RuleId::InsertIdentityPair {
            continue;
        }
        for params in canonical_variants(rule) {
            for anchor in 0..c.len() {
                let step = RewriteStep::with(rule, anchor, params.clone());
                if let Ok(after) = apply(&step, c) {
                    let delta = StatsDelta::between(&before, &after.stats()?);
                    out.push(Move { step, delta });
                }
            }
        }
    }
    out.sort_by_key(|m| (m.step.anchor, m.step.rule));
    Ok(out)
}

#[cfg(test)]
mod tests;
