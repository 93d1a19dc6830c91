//! Gates with mixed-polarity controls, circuits, validation and the
//! depth / T-depth metrics.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Axis, LocalAlgebra, NamedOp, RootExponent};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flipped(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }

    pub fn sign(self) -> char {
        match self {
            Polarity::Positive => '+',
            Polarity::Negative => '-',
        }
    }

    /// Basis value of the line on which the control fires.
    pub fn fires_on(self) -> usize {
        match self {
            Polarity::Positive => 1,
            Polarity::Negative => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Control {
    pub line: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn pos(line: usize) -> Control {
        Control {
            line,
            polarity: Polarity::Positive,
        }
    }

    pub fn neg(line: usize) -> Control {
        Control {
            line,
            polarity: Polarity::Negative,
        }
    }
}

/// One target operation plus a set of controls. Controls are kept sorted by
/// line so structural equality ignores the order they were given in.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub op: NamedOp,
    pub target: usize,
    controls: Vec<Control>,
}

impl Gate {
    pub fn new(op: NamedOp, target: usize, mut controls: Vec<Control>) -> Gate {
        controls.sort();
        Gate {
            op,
            target,
            controls,
        }
    }

    pub fn single(op: NamedOp, target: usize) -> Gate {
        Gate::new(op, target, Vec::new())
    }

    pub fn root(axis: Axis, exp: RootExponent, target: usize, controls: Vec<Control>) -> Gate {
        Gate::new(NamedOp::PauliRoot { axis, exp }, target, controls)
    }

    pub fn cx(control: usize, target: usize) -> Gate {
        Gate::new(NamedOp::pauli(Axis::X), target, vec![Control::pos(control)])
    }

    pub fn ccx(c1: usize, c2: usize, target: usize) -> Gate {
        Gate::new(
            NamedOp::pauli(Axis::X),
            target,
            vec![Control::pos(c1), Control::pos(c2)],
        )
    }

    pub fn h(target: usize) -> Gate {
        Gate::single(NamedOp::hadamard(), target)
    }

    /// `Z^{m/4}` on an uncontrolled line.
    pub fn t_power(m: i64, target: usize) -> Gate {
        Gate::single(NamedOp::root(Axis::Z, m, 4), target)
    }

    pub fn controls(&self) -> &[Control] {
        &self.controls
    }

    pub fn with_controls(&self, controls: Vec<Control>) -> Gate {
        Gate::new(self.op, self.target, controls)
    }

    pub fn with_op(&self, op: NamedOp) -> Gate {
        Gate {
            op,
            target: self.target,
            controls: self.controls.clone(),
        }
    }

    pub fn is_controlled(&self) -> bool {
        !self.controls.is_empty()
    }

    pub fn control_on(&self, line: usize) -> Option<Polarity> {
        self.controls
            .iter()
            .find(|c| c.line == line)
            .map(|c| c.polarity)
    }

    pub fn control_lines(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().map(|c| c.line)
    }

    /// Target first, then control lines in ascending order.
    pub fn lines(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.target).chain(self.control_lines())
    }

    pub fn touches(&self, line: usize) -> bool {
        self.target == line || self.control_on(line).is_some()
    }

    pub fn shares_line_with(&self, other: &Gate) -> bool {
        self.lines().any(|l| other.touches(l))
    }

    /// A positively singly-controlled X.
    pub fn is_cx(&self) -> bool {
        self.controls.len() == 1
            && self.controls[0].polarity == Polarity::Positive
            && self.op.is_pauli_on(Axis::X)
    }

    pub fn inverse(&self) -> Gate {
        self.with_op(self.op.inverse())
    }

    /// Same controls and target, and the ops cancel structurally.
    pub fn is_inverse_of(&self, other: &Gate) -> bool {
        self.target == other.target
            && self.controls == other.controls
            && self.op.is_inverse_of(&other.op)
    }

    /// Rename lines through `map` (old line -> new line).
    pub fn relabel(&self, map: &[usize]) -> Gate {
        Gate::new(
            self.op,
            map[self.target],
            self.controls
                .iter()
                .map(|c| Control {
                    line: map[c.line],
                    polarity: c.polarity,
                })
                .collect(),
        )
    }

    /// The commutative algebra the gate's action lies in when restricted to
    /// `line`: controls and Z-roots are diagonal, other targets carry their
    /// op's own algebra.
    pub(crate) fn local_algebra(&self, line: usize) -> LocalAlgebra {
        if self.control_on(line).is_some() {
            LocalAlgebra::Axis(Axis::Z)
        } else if self.target == line {
            self.op.algebra()
        } else {
            LocalAlgebra::Identity
        }
    }

    /// Sufficient structural condition for `self` and `other` to commute:
    /// on every shared line both gates act inside one commutative algebra.
    pub fn commutes_structurally(&self, other: &Gate) -> bool {
        self.lines()
            .all(|l| self.local_algebra(l).commutes_with(other.local_algebra(l)))
    }

    /// Uncontrolled `Z^{m/4}` with odd `m`, i.e. a T-type gate.
    pub fn is_t_like(&self) -> bool {
        !self.is_controlled() && is_odd_quarter_z(&self.op)
    }

    /// Short mnemonic used for stats keys, e.g. `t`, `cx`, `ccx`, `cs`.
    pub fn kind_name(&self) -> String {
        let prefix = "c".repeat(self.controls.len());
        format!("{prefix}{}", op_kind_name(&self.op))
    }
}

fn is_odd_quarter_z(op: &NamedOp) -> bool {
    matches!(op.as_root(), Some((Axis::Z, e)) if e.denom() == 4)
}

/// Sugar mnemonic of an op if it has one.
pub fn sugar_name(op: &NamedOp) -> Option<&'static str> {
    match *op {
        NamedOp::PauliRoot { axis, exp } => {
            let e = exp.normalized();
            let name = match (axis, e.numer(), e.denom()) {
                (Axis::X, 1, 1) => "x",
                (Axis::Y, 1, 1) => "y",
                (Axis::Z, 1, 1) => "z",
                (Axis::Z, 1, 2) => "s",
                (Axis::Z, -1, 2) => "sdg",
                (Axis::Z, 1, 4) => "t",
                (Axis::Z, -1, 4) => "tdg",
                (Axis::X, 1, 2) => "v",
                (Axis::X, -1, 2) => "vdg",
                (Axis::X, 1, 4) => "w",
                (Axis::X, -1, 4) => "wdg",
                _ => return None,
            };
            (e == exp).then_some(name)
        }
        NamedOp::Translation { a: Axis::X, b: Axis::Z } => Some("h"),
        _ => None,
    }
}

fn op_kind_name(op: &NamedOp) -> String {
    if let Some(s) = sugar_name(op) {
        return s.to_string();
    }
    match *op {
        NamedOp::PauliRoot { axis, exp } => format!("root_{axis}_{exp}"),
        NamedOp::Translation { a, b } => format!("trans_{a}{b}"),
        NamedOp::Negator { axis, .. } => format!("neg_{axis}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    NoQubits,
    TargetOutOfRange { target: usize },
    ControlOutOfRange { line: usize },
    DuplicateControl { line: usize },
    TargetIsControl { line: usize },
    NonFiniteAngle,
}

/// A well-formedness problem, located at a gate position when applicable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub gate: Option<usize>,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(i) = self.gate {
            write!(f, "gate {i}: ")?;
        }
        match &self.kind {
            ViolationKind::NoQubits => write!(f, "circuit must have at least one qubit"),
            ViolationKind::TargetOutOfRange { target } => {
                write!(f, "target line {target} out of range")
            }
            ViolationKind::ControlOutOfRange { line } => {
                write!(f, "control line {line} out of range")
            }
            ViolationKind::DuplicateControl { line } => write!(f, "duplicate control on line {line}"),
            ViolationKind::TargetIsControl { line } => {
                write!(f, "line {line} is both target and control")
            }
            ViolationKind::NonFiniteAngle => write!(f, "negator angle is not finite"),
        }
    }
}

/// Per-gate structural violations against an `n`-line circuit.
pub fn gate_violations(g: &Gate, n: usize, index: Option<usize>) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |kind| out.push(Violation { gate: index, kind });
    if g.target >= n {
        push(ViolationKind::TargetOutOfRange { target: g.target });
    }
    for (i, c) in g.controls.iter().enumerate() {
        if c.line >= n {
            push(ViolationKind::ControlOutOfRange { line: c.line });
        }
        if c.line == g.target {
            push(ViolationKind::TargetIsControl { line: c.line });
        }
        if i > 0 && g.controls[i - 1].line == c.line {
            push(ViolationKind::DuplicateControl { line: c.line });
        }
    }
    if let NamedOp::Negator { theta, .. } = g.op {
        if !theta.is_finite() {
            push(ViolationKind::NonFiniteAngle);
        }
    }
    out
}

/// Qubit count plus a gate list in temporal order.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Builds a circuit, rejecting it if any violation is found.
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Circuit> {
        let c = Circuit { n, gates };
        let v = c.validate();
        if v.is_empty() {
            Ok(c)
        } else {
            Err(Error::Validation(v))
        }
    }

    /// Builds a circuit without validating it.
    pub fn unchecked(n: usize, gates: Vec<Gate>) -> Circuit {
        Circuit { n, gates }
    }

    pub fn empty(n: usize) -> Circuit {
        Circuit {
            n,
            gates: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push(Violation {
                gate: None,
                kind: ViolationKind::NoQubits,
            });
        }
        for (i, g) in self.gates.iter().enumerate() {
            out.extend(gate_violations(g, self.n, Some(i)));
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }

    /// Appends a gate, validating it first.
    pub fn push(&mut self, g: Gate) -> Result<()> {
        let v = gate_violations(&g, self.n, Some(self.gates.len()));
        if !v.is_empty() {
            return Err(Error::Validation(v));
        }
        self.gates.push(g);
        Ok(())
    }

    /// Replaces `gates[start..start+len]` with `with`.
    pub fn splice(&self, start: usize, len: usize, with: Vec<Gate>) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len() + with.len());
        gates.extend_from_slice(&self.gates[..start]);
        gates.extend(with);
        gates.extend_from_slice(&self.gates[start + len..]);
        Circuit { n: self.n, gates }
    }

    pub fn reversed(&self) -> Circuit {
        Circuit {
            n: self.n,
            gates: self.gates.iter().rev().cloned().collect(),
        }
    }

    /// The inverse circuit: reversed order, each op inverted.
    pub fn dagger(&self) -> Circuit {
        Circuit {
            n: self.n,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn concat(&self, other: &Circuit) -> Result<Circuit> {
        if self.n != other.n {
            return Err(Error::InvalidArgument(format!(
                "cannot concatenate {}-qubit and {}-qubit circuits",
                self.n, other.n
            )));
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(Circuit { n: self.n, gates })
    }

    /// 1-based DAG stage of every gate: one more than the latest stage among
    /// earlier gates sharing a line with it.
    pub fn stages(&self) -> Result<Vec<usize>> {
        self.ensure_valid()?;
        Ok(self.levels(|_| true))
    }

    fn levels(&self, counts: impl Fn(&Gate) -> bool) -> Vec<usize> {
        let mut line_level = vec![0usize; self.n];
        self.gates
            .iter()
            .map(|g| {
                let base = g.lines().map(|l| line_level[l]).max().unwrap_or(0);
                let level = base + usize::from(counts(g));
                for l in g.lines() {
                    line_level[l] = level;
                }
                level
            })
            .collect()
    }

    pub fn critical_depth(&self) -> Result<usize> {
        Ok(self.stages()?.into_iter().max().unwrap_or(0))
    }

    /// Longest dependency chain counting only uncontrolled odd-quarter Z-roots.
    pub fn t_depth(&self) -> Result<usize> {
        self.ensure_valid()?;
        Ok(self.levels(Gate::is_t_like).into_iter().max().unwrap_or(0))
    }

    /// T-stage of each gate (0 before the first T-type gate on its path).
    pub fn t_stages(&self) -> Result<Vec<usize>> {
        self.ensure_valid()?;
        Ok(self.levels(Gate::is_t_like))
    }

    pub fn stats(&self) -> Result<CircuitStats> {
        let depth = self.critical_depth()?;
        let t_depth = self.t_depth()?;
        let mut counts = BTreeMap::new();
        for g in &self.gates {
            *counts.entry(g.kind_name()).or_insert(0) += 1;
        }
        Ok(CircuitStats {
            depth,
            t_depth,
            gate_count: self.gates.len(),
            t_count: self.gates.iter().filter(|g| g.is_t_like()).count(),
            counts,
            controlled_t: self
                .gates
                .iter()
                .any(|g| g.is_controlled() && is_odd_quarter_z(&g.op)),
        })
    }
}

/// Aggregated metrics of a circuit.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CircuitStats {
    pub depth: usize,
    pub t_depth: usize,
    pub gate_count: usize,
    pub t_count: usize,
    pub counts: BTreeMap<String, usize>,
    /// Set when controlled `Z^{±1/4}` gates are present; those do not count
    /// toward `t_depth`.
    pub controlled_t: bool,
}

/// Signed difference `after - before` of the headline metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StatsDelta {
    pub depth: i64,
    pub t_depth: i64,
    pub gate_count: i64,
    pub t_count: i64,
}

impl StatsDelta {
    pub fn between(before: &CircuitStats, after: &CircuitStats) -> StatsDelta {
        let d = |a: usize, b: usize| b as i64 - a as i64;
        StatsDelta {
            depth: d(before.depth, after.depth),
            t_depth: d(before.t_depth, after.t_depth),
            gate_count: d(before.gate_count, after.gate_count),
            t_count: d(before.t_count, after.t_count),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(line: usize) -> Gate {
        Gate::t_power(1, line)
    }

    fn v(target: usize, control: usize) -> Gate {
        Gate::root(Axis::X, RootExponent::root(2), target, vec![Control::pos(control)])
    }

    fn barenco() -> Circuit {
        let vdg = Gate::root(
            Axis::X,
            RootExponent::new(-1, 2).unwrap(),
            2,
            vec![Control::pos(1)],
        );
        Circuit::new(3, vec![v(2, 1), Gate::cx(0, 1), vdg, Gate::cx(0, 1), v(2, 0)]).unwrap()
    }

    #[test]
    fn validation_reports_each_problem() {
        assert!(Circuit::empty(1).validate().is_empty());
        let bad = Circuit::unchecked(
            2,
            vec![
                Gate::cx(0, 1),
                Gate::new(NamedOp::pauli(Axis::X), 1, vec![Control::pos(1)]),
                Gate::new(NamedOp::pauli(Axis::X), 5, vec![Control::pos(0), Control::neg(0)]),
            ],
        );
        let v = bad.validate();
        assert_eq!(v[0].gate, Some(1));
        assert_eq!(v[0].kind, ViolationKind::TargetIsControl { line: 1 });
        assert!(v.iter().any(|x| x.kind == ViolationKind::TargetOutOfRange { target: 5 }));
        assert!(v.iter().any(|x| x.kind == ViolationKind::DuplicateControl { line: 0 }));
        assert!(barenco().is_valid());
        assert!(matches!(Circuit::new(0, vec![]), Err(Error::Validation(_))));
    }

    #[test]
    fn depth_basics() {
        assert_eq!(Circuit::empty(2).critical_depth().unwrap(), 0);
        let c = Circuit::new(2, vec![Gate::cx(0, 1)]).unwrap();
        assert_eq!(c.critical_depth().unwrap(), 1);
        assert_eq!(c.t_depth().unwrap(), 0);
        let tt = Circuit::new(1, vec![t(0), t(0)]).unwrap();
        assert_eq!(tt.t_depth().unwrap(), 2);
        let par = Circuit::new(2, vec![t(0), t(1)]).unwrap();
        assert_eq!(par.critical_depth().unwrap(), 1);
    }

    #[test]
    fn controlled_t_is_flagged_not_counted() {
        let ct = Gate::root(Axis::Z, RootExponent::root(4), 1, vec![Control::pos(0)]);
        let s = Circuit::new(2, vec![ct]).unwrap().stats().unwrap();
        assert_eq!(s.t_depth, 0);
        assert!(s.controlled_t);
    }

    #[test]
    fn barenco_stats() {
        let s = barenco().stats().unwrap();
        assert_eq!(s.gate_count, 5);
        assert_eq!(s.counts["cv"], 2);
        assert_eq!(s.counts["cvdg"], 1);
        assert_eq!(s.counts["cx"], 2);
    }

    #[test]
    fn structural_commutation() {
        // Shared control line only.
        assert!(Gate::cx(0, 1).commutes_structurally(&Gate::cx(0, 2)));
        // Shared X target.
        assert!(Gate::cx(0, 2).commutes_structurally(&Gate::cx(1, 2)));
        // Z-root on a control line.
        assert!(t(0).commutes_structurally(&Gate::cx(0, 1)));
        assert!(!t(1).commutes_structurally(&Gate::cx(0, 1)));
        assert!(!Gate::cx(0, 1).commutes_structurally(&Gate::cx(1, 2)));
    }

    fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
        (0..n, 0..n, any::<bool>(), 1i64..8).prop_map(move |(t, c, ctrl, m)| {
            let controls = if ctrl && c != t { vec![Control::pos(c)] } else { vec![] };
            Gate::root(Axis::Z, RootExponent::new(m, 4).unwrap(), t, controls)
        })
    }

    proptest! {
        #[test]
        fn appending_never_decreases_metrics(gates in prop::collection::vec(arb_gate(3), 0..12), extra in arb_gate(3)) {
            let c = Circuit::new(3, gates.clone()).unwrap();
            let mut longer = gates;
            longer.push(extra);
            let d = Circuit::new(3, longer).unwrap();
            prop_assert!(d.critical_depth().unwrap() >= c.critical_depth().unwrap());
            prop_assert!(d.t_depth().unwrap() >= c.t_depth().unwrap());
        }

        #[test]
        fn depth_is_reversal_symmetric(gates in prop::collection::vec(arb_gate(4), 0..16)) {
            let c = Circuit::new(4, gates).unwrap();
            prop_assert_eq!(c.critical_depth().unwrap(), c.reversed().critical_depth().unwrap());
            let s = c.stats().unwrap();
            prop_assert!(s.t_depth <= s.depth && s.depth <= s.gate_count);
            prop_assert!(s.t_depth <= s.t_count);
        }
    }
}
