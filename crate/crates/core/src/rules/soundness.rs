//! Randomized soundness checking: generate applicable instances of a rule in
//! random contexts and compare unitaries before and after.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Axis, NamedOp, RootExponent};
use crate::circuit::{Circuit, Control, Gate, Polarity};
use crate::semantics::is_equivalent;
use crate::text::{print, print_gate};

use super::{apply, Direction, RewriteStep, RuleId, RuleParams, ZPosition};

/// A failing instance, serialized as `.prc` text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub step: RewriteStep,
    pub reason: String,
    pub before: String,
    pub after: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub rule: RuleId,
    pub trials: usize,
    pub seed: u64,
    /// Trials whose backward application was also checked.
    pub reversed: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

const KS: [i64; 3] = [1, 2, 4];

fn axis(rng: &mut ChaCha8Rng) -> Axis {
    *Axis::ALL.choose(rng).expect("three axes")
}

fn other_axis(rng: &mut ChaCha8Rng, a: Axis) -> Axis {
    loop {
        let b = axis(rng);
        if b != a {
            return b;
        }
    }
}

/// Random nonzero exponent `m/k`, `k ∈ {1, 2, 4}`, normalized into `(-1, 1]`.
fn exponent(rng: &mut ChaCha8Rng) -> RootExponent {
    let k = *KS.choose(rng).expect("nonempty");
    loop {
        let m = rng.gen_range(-2 * k..=2 * k);
        let e = RootExponent::new(m, k).expect("k > 0").normalized();
        if !e.is_zero() {
            return e;
        }
    }
}

fn root(rng: &mut ChaCha8Rng) -> NamedOp {
    NamedOp::PauliRoot {
        axis: axis(rng),
        exp: exponent(rng),
    }
}

fn any_op(rng: &mut ChaCha8Rng) -> NamedOp {
    match rng.gen_range(0..6) {
        0 => NamedOp::translation(axis(rng), axis(rng)),
        1 => NamedOp::negator(axis(rng), rng.gen_range(-3.0..3.0)),
        _ => root(rng),
    }
}

fn involution(rng: &mut ChaCha8Rng) -> NamedOp {
    if rng.gen_bool(0.5) {
        NamedOp::pauli(axis(rng))
    } else {
        let a = axis(rng);
        NamedOp::translation(a, other_axis(rng, a))
    }
}

fn polarity(rng: &mut ChaCha8Rng) -> Polarity {
    if rng.gen_bool(0.5) {
        Polarity::Positive
    } else {
        Polarity::Negative
    }
}

/// `count` distinct lines out of `0..n`, in random order.
fn lines(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(count);
    all
}

/// Random controls on a subset of `free`.
fn controls(rng: &mut ChaCha8Rng, free: &[usize], max: usize) -> Vec<Control> {
    let count = rng.gen_range(0..=max.min(free.len()));
    free[..count]
        .iter()
        .map(|&line| Control {
            line,
            polarity: polarity(rng),
        })
        .collect()
}

fn random_gate(rng: &mut ChaCha8Rng, n: usize) -> Gate {
    let ls = lines(rng, n, n);
    let cs = controls(rng, &ls[1..], 2);
    Gate::new(any_op(rng), ls[0], cs)
}

fn ctl(line: usize, p: Polarity) -> Control {
    Control { line, polarity: p }
}

/// An applicable window for `rule`: qubit count, gates and parameters.
fn instance(rule: RuleId, rng: &mut ChaCha8Rng) -> (usize, Vec<Gate>, RuleParams) {
    let min_n = match rule {
        RuleId::CnotRuleD7 | RuleId::Thm2BarencoExtended => 3,
        _ => 2,
    };
    let n = rng.gen_range(min_n..=4);
    let mut p = RuleParams::default();
    let ls = lines(rng, n, n);
    let t = ls[0];
    let gates = match rule {
        RuleId::MergeSameControls => {
            let k = controls(rng, &ls[1..], 2);
            if rng.gen_bool(0.2) {
                let a = axis(rng);
                vec![
                    Gate::new(NamedOp::negator(a, rng.gen_range(-3.0..3.0)), t, k.clone()),
                    Gate::new(NamedOp::negator(a, rng.gen_range(-3.0..3.0)), t, k),
                ]
            } else {
                let a = axis(rng);
                let r = |e| NamedOp::PauliRoot { axis: a, exp: e };
                vec![
                    Gate::new(r(exponent(rng)), t, k.clone()),
                    Gate::new(r(exponent(rng)), t, k),
                ]
            }
        }
        RuleId::CommuteOppositePolarity => {
            let l = ls[1];
            let pol = polarity(rng);
            let rest: Vec<usize> = ls.iter().copied().filter(|&x| x != l).collect();
            let mk = |rng: &mut ChaCha8Rng, pol: Polarity| {
                let mut r = rest.clone();
                r.shuffle(rng);
                let mut cs = controls(rng, &r[1..], 1);
                cs.push(ctl(l, pol));
                Gate::new(any_op(rng), r[0], cs)
            };
            vec![mk(rng, pol), mk(rng, pol.flipped())]
        }
        RuleId::EliminateBothPolarities => {
            let l = ls[1];
            let k = controls(rng, &ls[2..], 1);
            let g = Gate::new(any_op(rng), t, k.clone());
            if rng.gen_bool(0.5) {
                p.direction = Direction::Backward;
                p.line = Some(l);
                vec![g]
            } else {
                let pol = polarity(rng);
                vec![
                    g.with_controls(with(&k, ctl(l, pol))),
                    g.with_controls(with(&k, ctl(l, pol.flipped()))),
                ]
            }
        }
        RuleId::CaseGateSplit => {
            let l = ls[1];
            let k = controls(rng, &ls[2..], 1);
            let a = axis(rng);
            let e1 = exponent(rng);
            let mut e2 = exponent(rng);
            while e2 == e1 {
                e2 = exponent(rng);
            }
            vec![
                Gate::root(a, e1, t, with(&k, Control::neg(l))),
                Gate::root(a, e2, t, with(&k, Control::pos(l))),
            ]
        }
        RuleId::FlipZRootControlTarget | RuleId::ConjugateByTranslation => {
            let l = ls[1];
            let k = controls(rng, &ls[2..], 1);
            let a = if rule == RuleId::FlipZRootControlTarget {
                Axis::Z
            } else {
                axis(rng)
            };
            if rng.gen_bool(0.5) {
                p.line = Some(l);
            }
            let k = if p.line.is_none() {
                k.into_iter().filter(|c| c.line > l || c.polarity == Polarity::Negative).collect()
            } else {
                k
            };
            vec![Gate::root(a, exponent(rng), t, with(&k, Control::pos(l)))]
        }
        RuleId::MoveZRootOverControl => {
            let l = ls[1];
            let z = Gate::root(Axis::Z, exponent(rng), l, vec![]);
            let mut cs = controls(rng, &ls[2..], 1);
            cs.push(ctl(l, polarity(rng)));
            let g = Gate::new(any_op(rng), t, cs);
            if rng.gen_bool(0.5) {
                vec![z, g]
            } else {
                p.direction = Direction::Backward;
                vec![g, z]
            }
        }
        RuleId::CnotRuleD7 => {
            let (a, b, c) = (ls[0], ls[1], ls[2]);
            if rng.gen_bool(0.5) {
                p.mirror = Some(true);
                vec![Gate::cx(b, c), Gate::cx(a, b)]
            } else {
                vec![Gate::cx(a, b), Gate::cx(b, c)]
            }
        }
        RuleId::Lemma1Case | RuleId::Lemma1CaseCorollary => {
            let l = ls[1];
            let k = controls(rng, &ls[2..], 1);
            let a = axis(rng);
            let mut f = exponent(rng);
            while f == RootExponent::ONE {
                f = exponent(rng);
            }
            let want_positive = rule == RuleId::Lemma1CaseCorollary;
            if (f.as_f64() > 0.0) != want_positive {
                f = -f;
            }
            if rng.gen_bool(0.5) {
                p.b_axis = Some(other_axis(rng, a));
            }
            vec![
                Gate::root(a, f, t, with(&k, Control::neg(l))),
                Gate::root(a, -f, t, with(&k, Control::pos(l))),
            ]
        }
        RuleId::Thm1RemoveControl => {
            let l = ls[1];
            let k = controls(rng, &ls[2..], 1);
            let a = axis(rng);
            let b = other_axis(rng, a);
            p.b_axis = Some(b);
            p.line = Some(l);
            p.first_to_end = Some(rng.gen_bool(0.5));
            p.z_position = Some(*[ZPosition::Before, ZPosition::Middle, ZPosition::After]
                .choose(rng)
                .expect("nonempty"));
            if b == Axis::Z && rng.gen_bool(0.5) {
                p.flip_cz = Some(true);
            }
            vec![Gate::root(a, exponent(rng), t, with(&k, Control::pos(l)))]
        }
        RuleId::Thm2BarencoExtended => {
            let a = axis(rng);
            let e = exponent(rng);
            p.b_axis = Some(axis(rng));
            p.swap_controls = Some(rng.gen_bool(0.5));
            p.last_root_slot = Some(rng.gen_range(0..=4));
            if e == RootExponent::ONE && rng.gen_bool(0.5) {
                p.dagger_roots = Some(true);
            }
            vec![Gate::root(a, e, t, vec![Control::pos(ls[1]), Control::pos(ls[2])])]
        }
        RuleId::SwapTConjugation => {
            let c = ls[1];
            vec![
                Gate::cx(c, t),
                Gate::root(Axis::Z, exponent(rng), t, vec![]),
                Gate::cx(c, t),
            ]
        }
        RuleId::CancelAdjacentInverses => {
            let g = random_gate(rng, n);
            vec![g.clone(), g.inverse()]
        }
        RuleId::CancelInvolution => {
            let g = Gate::new(involution(rng), t, controls(rng, &ls[1..], 2));
            vec![g.clone(), g]
        }
        RuleId::TranslateRoot => {
            let g = Gate::new(root(rng), t, controls(rng, &ls[1..], 2));
            let (a, _) = g.op.as_root().expect("root");
            p.b_axis = Some(other_axis(rng, a));
            vec![g]
        }
        RuleId::CommuteAdjacent => loop {
            let g0 = random_gate(rng, n);
            let g1 = if rng.gen_bool(0.5) {
                random_gate(rng, n)
            } else {
                // Same-algebra partner: reuse the target with a compatible op.
                let mut h = random_gate(rng, n);
                if !h.touches(g0.target) && g0.op.as_root().is_some() {
                    let (ax, _) = g0.op.as_root().expect("root");
                    h = Gate::root(ax, exponent(rng), g0.target, vec![]);
                }
                h
            };
            if g0.commutes_structurally(&g1) {
                break vec![g0, g1];
            }
        },
        RuleId::InsertIdentityPair => {
            let g = Gate::new(involution(rng), t, controls(rng, &ls[1..], 2));
            p.gate = Some(print_gate(&g, rng.gen_bool(0.5)));
            vec![]
        }
        RuleId::RelabelBetweenSwaps => {
            let (x, y) = (ls[0], ls[1]);
            let swap = [Gate::cx(x, y), Gate::cx(y, x), Gate::cx(x, y)];
            let mut v = swap.to_vec();
            for _ in 0..rng.gen_range(0..4) {
                v.push(random_gate(rng, n));
            }
            if rng.gen_bool(0.5) {
                v.extend([Gate::cx(y, x), Gate::cx(x, y), Gate::cx(y, x)]);
            } else {
                v.extend(swap);
            }
            v
        }
    };
    (n, gates, p)
}

fn with(k: &[Control], c: Control) -> Vec<Control> {
    let mut v = k.to_vec();
    v.push(c);
    v
}

/// Parameters that undo an application made with `params`, when the rule
/// has a distinct inverse form.
fn reverse_params(rule: RuleId, params: &RuleParams, window: &[Gate]) -> Option<RuleParams> {
    if !rule.is_bidirectional() || rule.is_self_inverse() {
        return None;
    }
    let flipped = match params.direction {
        Direction::Forward => Direction::Backward,
        Direction::Backward => Direction::Forward,
    };
    if rule == RuleId::EliminateBothPolarities {
        return match params.direction {
            Direction::Backward => Some(RuleParams::default()),
            // The backward form always emits the negative control first.
            Direction::Forward => {
                let c = window[0]
                    .controls()
                    .iter()
                    .find(|c| window[1].control_on(c.line) != Some(c.polarity))?;
                (c.polarity == Polarity::Negative).then(|| RuleParams {
                    direction: flipped,
                    line: Some(c.line),
                    ..RuleParams::default()
                })
            }
        };
    }
    if rule == RuleId::ConjugateByTranslation && params.direction == Direction::Forward {
        // A controlled Z-root only swaps control and target, so undoing it
        // has to name the old target.
        if let Some((Axis::Z, _)) = window[0].op.as_root() {
            return Some(RuleParams {
                direction: flipped,
                line: Some(window[0].target),
                ..RuleParams::default()
            });
        }
    }
    Some(RuleParams {
        direction: flipped,
        ..params.clone()
    })
}

fn rule_seed(rule: RuleId, seed: u64) -> u64 {
    let idx = RuleId::ALL.iter().position(|r| *r == rule).unwrap_or(0) as u64;
    seed ^ (idx + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs `trials` random instances of `rule`. Each instance is checked for
/// applicability, locality of the rewrite, equivalence, and, for rules with
/// a distinct backward form, that applying it restores the original window.
pub fn check_soundness(rule: RuleId, trials: usize, seed: u64) -> SoundnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(rule_seed(rule, seed));
    let mut report = SoundnessReport {
        rule,
        trials,
        seed,
        reversed: 0,
        counterexamples: Vec::new(),
    };
    for trial in 0..trials {
        let (n, window, params) = instance(rule, &mut rng);
        let prefix: Vec<Gate> = (0..rng.gen_range(0..3)).map(|_| random_gate(&mut rng, n)).collect();
        let suffix: Vec<Gate> = (0..rng.gen_range(0..3)).map(|_| random_gate(&mut rng, n)).collect();
        let anchor = prefix.len();
        let mut gates = prefix.clone();
        gates.extend(window.iter().cloned());
        gates.extend(suffix.iter().cloned());
        let before = Circuit::unchecked(n, gates);
        let step = RewriteStep::with(rule, anchor, params.clone());
        let fail = |reason: String, after: Option<&Circuit>| Counterexample {
            trial,
            step: step.clone(),
            reason,
            before: print(&before, true),
            after: after.map(|c| print(c, true)),
        };
        let after = match apply(&step, &before) {
            Ok(c) => c,
            Err(e) => {
                report.counterexamples.push(fail(format!("generated instance rejected: {e}"), None));
                continue;
            }
        };
        let tail = after.len().checked_sub(suffix.len());
        let local = after.gates()[..anchor] == prefix[..]
            && tail.is_some_and(|t| t >= anchor && after.gates()[t..] == suffix[..]);
        if !local {
            report.counterexamples.push(fail("gates outside the window changed".into(), Some(&after)));
            continue;
        }
        match is_equivalent(&before, &after) {
            Ok(true) => {}
            Ok(false) => {
                report.counterexamples.push(fail("unitary changed".into(), Some(&after)));
                continue;
            }
            Err(e) => {
                report.counterexamples.push(fail(format!("simulation failed: {e}"), Some(&after)));
                continue;
            }
        }
        if let Some(back_params) = reverse_params(rule, &params, &window) {
            let back = RewriteStep::with(rule, anchor, back_params);
            match apply(&back, &after) {
                Ok(restored) if restored == before => report.reversed += 1,
                Ok(restored) => report.counterexamples.push(fail(
                    "backward application did not restore the window".into(),
                    Some(&restored),
                )),
                Err(e) => report
                    .counterexamples
                    .push(fail(format!("backward application failed: {e}"), Some(&after))),
            }
        }
    }
    report
}
