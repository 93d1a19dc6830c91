//! Pattern matchers and replacements for every rule.

use crate::algebra::{Axis, NamedOp, RootExponent};
use crate::circuit::{Circuit, Control, Gate, Polarity};
use crate::text::parse_gate_line;

use super::{RuleId, RuleParams, ZPosition};

pub(crate) struct Rewrite {
    pub len: usize,
    pub replacement: Vec<Gate>,
}

/// A rewrite, or the diagnostic naming the first failed condition.
pub(crate) type Match = Result<Rewrite, String>;

type Check<T> = Result<T, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Check<()> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn window(c: &Circuit, anchor: usize, len: usize) -> Check<&[Gate]> {
    c.gates()
        .get(anchor..anchor + len)
        .ok_or_else(|| format!("needs {len} gates starting at the anchor"))
}

fn done(len: usize, replacement: Vec<Gate>) -> Match {
    Ok(Rewrite { len, replacement })
}

fn root_of(g: &Gate, which: &str) -> Check<(Axis, RootExponent)> {
    g.op.as_root()
        .ok_or_else(|| format!("{which} gate is not a Pauli root"))
}

fn default_b(a: Axis) -> Axis {
    if a == Axis::Z {
        Axis::X
    } else {
        Axis::Z
    }
}

fn root_op(axis: Axis, exp: RootExponent) -> NamedOp {
    NamedOp::PauliRoot { axis, exp }
}

fn same_op(a: &NamedOp, b: &NamedOp) -> bool {
    match (a.as_root(), b.as_root()) {
        (Some((x, e)), Some((y, f))) => x == y && e.congruent(f),
        _ => a == b,
    }
}

/// Orders two gates that act on disjoint lines by target line, the way
/// parallel gates in one column are listed.
fn par(a: Gate, b: Gate) -> [Gate; 2] {
    if !a.shares_line_with(&b) && b.target < a.target {
        [b, a]
    } else {
        [a, b]
    }
}

fn without_line(controls: &[Control], line: usize) -> Vec<Control> {
    controls.iter().copied().filter(|c| c.line != line).collect()
}

fn with_control(controls: &[Control], extra: Control) -> Vec<Control> {
    let mut v = controls.to_vec();
    v.push(extra);
    v
}

/// The control picked by `line`, defaulting to the lowest positive one; it
/// must be positive.
fn pick_positive_control(g: &Gate, line: Option<usize>) -> Check<usize> {
    match line {
        Some(l) => match g.control_on(l) {
            Some(Polarity::Positive) => Ok(l),
            Some(Polarity::Negative) => Err(format!("control on line {l} is negative")),
            None => Err(format!("gate has no control on line {l}")),
        },
        None => g
            .controls()
            .iter()
            .find(|c| c.polarity == Polarity::Positive)
            .map(|c| c.line)
            .ok_or_else(|| "gate has no positive control".to_string()),
    }
}

/// The single line on which two control sets disagree in polarity, with
/// every other control identical. Returns the line and `a`'s polarity there.
fn single_polarity_split(a: &Gate, b: &Gate) -> Check<(usize, Polarity)> {
    ensure(a.controls().len() == b.controls().len(), "control sets differ")?;
    let mut split = None;
    for (x, y) in a.controls().iter().zip(b.controls()) {
        ensure(x.line == y.line, "control sets differ")?;
        if x.polarity != y.polarity {
            ensure(split.is_none(), "polarities differ on more than one line")?;
            split = Some((x.line, x.polarity));
        }
    }
    split.ok_or_else(|| "no line carries both polarities".to_string())
}

fn opts<T: Clone>(given: Option<T>, all: &[T]) -> Vec<T> {
    match given {
        Some(v) => vec![v],
        None => all.to_vec(),
    }
}

/// Backward matching: each candidate left-hand side is expanded forward
/// under each parameter variant and compared with the window.
fn backward_search(
    rule: RuleId,
    c: &Circuit,
    anchor: usize,
    len: usize,
    candidates: Vec<(Vec<Gate>, RuleParams)>,
) -> Match {
    let w = window(c, anchor, len)?;
    for (lhs, params) in candidates {
        let synthetic = Circuit::unchecked(c.n(), lhs.clone());
        if !synthetic.is_valid() {
            continue;
        }
        if let Ok(rw) = forward(rule, &synthetic, 0, &params) {
            if rw.len == lhs.len() && rw.replacement == w {
                return done(len, lhs);
            }
        }
    }
    Err("window is not a right-hand side of this rule".to_string())
}

pub(crate) fn rewrite(rule: RuleId, c: &Circuit, anchor: usize, p: &RuleParams) -> Match {
    if p.is_backward() && !rule.is_self_inverse() {
        backward(rule, c, anchor, p)
    } else {
        forward(rule, c, anchor, p)
    }
}

fn forward(rule: RuleId, c: &Circuit, i: usize, p: &RuleParams) -> Match {
    match rule {
        RuleId::MergeSameControls => merge(c, i),
        RuleId::CommuteOppositePolarity => commute_opposite(c, i),
        RuleId::EliminateBothPolarities => eliminate(c, i),
        RuleId::CaseGateSplit => case_split(c, i),
        RuleId::FlipZRootControlTarget => flip_z(c, i, p),
        RuleId::ConjugateByTranslation => conjugate(c, i, p),
        RuleId::MoveZRootOverControl => move_z(c, i, true),
        RuleId::CnotRuleD7 => d7(c, i, p.mirror.unwrap_or(false)),
        RuleId::Lemma1Case => lemma1(c, i, p, false),
        RuleId::Lemma1CaseCorollary => lemma1(c, i, p, true),
        RuleId::Thm1RemoveControl => thm1(c, i, p),
        RuleId::Thm2BarencoExtended => thm2(c, i, p),
        RuleId::SwapTConjugation => swap_t(c, i),
        RuleId::CancelAdjacentInverses => cancel_inverses(c, i),
        RuleId::CancelInvolution => cancel_involution(c, i),
        RuleId::TranslateRoot => translate(c, i, p),
        RuleId::CommuteAdjacent => commute_adjacent(c, i),
        RuleId::InsertIdentityPair => insert_pair(c, i, p),
        RuleId::RelabelBetweenSwaps => relabel_between_swaps(c, i),
    }
}

fn backward(rule: RuleId, c: &Circuit, i: usize, p: &RuleParams) -> Match {
    match rule {
        RuleId::EliminateBothPolarities => eliminate_back(c, i, p),
        RuleId::CaseGateSplit => case_split_back(c, i),
        RuleId::ConjugateByTranslation => conjugate_back(c, i, p),
        RuleId::MoveZRootOverControl => move_z(c, i, false),
        RuleId::CnotRuleD7 => d7_back(c, i, p.mirror.unwrap_or(false)),
        RuleId::Lemma1Case | RuleId::Lemma1CaseCorollary => lemma1_back(rule, c, i, p),
        RuleId::Thm1RemoveControl => thm1_back(c, i, p),
        RuleId::Thm2BarencoExtended => thm2_back(c, i, p),
        RuleId::TranslateRoot => translate_back(c, i, p),
        _ => Err(format!("{rule} has no backward form")),
    }
}

fn merge(c: &Circuit, i: usize) -> Match {
    let w = window(c, i, 2)?;
    let (g0, g1) = (&w[0], &w[1]);
    ensure(g0.controls() == g1.controls(), "control sets differ")?;
    ensure(g0.target == g1.target, "targets differ")?;
    match (g0.op, g1.op) {
        (NamedOp::PauliRoot { axis: a, exp: e }, NamedOp::PauliRoot { axis: b, exp: f }) => {
            ensure(a == b, "root axes differ")?;
            let sum = e.add(f).normalized();
            if sum.is_zero() {
                done(2, vec![])
            } else {
                done(2, vec![g0.with_op(root_op(a, sum))])
            }
        }
        (NamedOp::Negator { axis: a, theta: s }, NamedOp::Negator { axis: b, theta: t }) => {
            ensure(a == b, "negator axes differ")?;
            done(2, vec![g0.with_op(NamedOp::negator(a, s + t))])
        }
        _ => Err("gates are not two roots or two negators".into()),
    }
}

fn commute_opposite(c: &Circuit, i: usize) -> Match {
    let w = window(c, i, 2)?;
    let opposite = w[0]
        .controls()
        .iter()
        .any(|x| w[1].control_on(x.line) == Some(x.polarity.flipped()));
    ensure(opposite, "no line carries opposite-polarity controls of both gates")?;
    done(2, vec![w[1].clone(), w[0].clone()])
}

fn eliminate(c: &Circuit, i: usize) -> Match {
    let w = window(c, i, 2)?;
    ensure(w[0].target == w[1].target, "targets differ")?;
    ensure(same_op(&w[0].op, &w[1].op), "target operations differ")?;
    let (line, _) = single_polarity_split(&w[0], &w[1])?;
    done(2, vec![w[0].with_controls(without_line(w[0].controls(), line))])
}

fn eliminate_back(c: &Circuit, i: usize, p: &RuleParams) -> Match {
    let g = window(c, i, 1)?[0].clone();
    let l = p.line.ok_or("backward form needs `line`, the new control line")?;
    ensure(l < c.n(), format!("line {l} out of range"))?;
    ensure(!g.touches(l), format!("gate already uses line {l}"))?;
    done(
        1,
        vec![
            g.with_controls(with_control(g.controls(), Control::neg(l))),
            g.with_controls(with_control(g.controls(), Control::pos(l))),
        ],
    )
}

fn case_split(c: &Circuit, i: usize) -> Match {
    let w = window(c, i, 2)?;
    let (a, e1) = root_of(&w[0], "first")?;
    let (b, e2) = root_of(&w[1], "second")?;
    ensure(w[0].target == w[1].target, "targets differ")?;
    ensure(a == b, "root axes differ")?;
    let (line, pol) = single_polarity_split(&w[0], &w[1])?;
    ensure(pol == Polarity::Negative, "first gate must carry the negative control")?;
    let d = e2.sub(e1).normalized();
    ensure(!d.is_zero(), "both cases apply the same root")?;
    done(
        2,
        vec![
            w[0].with_controls(without_line(w[0].controls(), line)),
            w[1].with_op(root_op(a, d)),
        ],
    )
}

fn case_split_back(c: &Circuit, i: usize) -> Match {
    let w = window(c, i, 2)?;
    let (a, e1) = root_of(&w[0], "first")?;
    let (b, d) = root_of(&w[1], "second")?;
    ensure(w[0].target == w[1].target, "targets differ")?;
    ensure(a == b, "root axes differ")?;
    let extra: Vec<&Control> = w[1]
        .controls()
        .iter()
        .filter(|x| w[0].control_on(x.line).is_none())
        .collect();
    ensure(
        extra.len() == 1 && w[1].controls().len() == w[0].controls().len() + 1,
        "second gate must add exactly one control",
    )?;
    ensure(
        w[0].controls().iter().all(|x| w[1].controls().contains(x)),
        "control sets differ",
    )?;
    let l = *extra[0];
    ensure(l.polarity == Polarity::Positive, "added control must be positive")?;
    done(
        2,
        vec![
            w[0].with_controls(with_control(w[0].controls(), Control::neg(l.line))),
            w[1].with_op(root_op(a, e1.add(d).normalized())),
        ],
    )
}

fn flipped_z(g: &Gate, line: Option<usize>) -> Check<Gate> {
    let (axis, _) = root_of(g, "anchor")?;
    ensure(axis == Axis::Z, "target root is not on the Z axis")?;
    let l = pick_positive_control(g, line)?;
    let controls = with_control(&without_line(g.controls(), l), Control::pos(g.target));
    Ok(Gate::new(g.op, l, controls))
}

fn flip_z(c: &Circuit, i: usize, p: &RuleParams) -> Match {
    let g = &window(c, i, 1)?[0];
    done(1, vec![flipped_z(g, p.line)?])
}

fn conjugate(c: &Circuit, i: usize, p: &RuleParams) -> Match {
    let g = &window(c, i, 1)?[0];
    let (a, _) = root_of(g, "anchor")?;
    if a == Axis::Z {
        return done(1, vec![flipped_z(g, p.line)?]);
    }
    let l = pick_positive_control(g, p.line)?;
    let t = g.target;
    let rho = NamedOp::translation(a, Axis::Z);
    let (lo, hi) = (l.min(t), l.max(t));
    let inner = Gate::new(
        g.op,
        l,
        with_control(&without_line(g.controls(), l), Control::pos(t)),
    );
    done(
        1,
        vec![
            Gate::single(rho, lo),
            Gate::single(rho, hi),
            inner,
            Gate::single(rho, lo),
            Gate::single(rho, hi),
        ],
    )
}

fn conjugate_back(c: &Circuit, i: usize, p: &RuleParams) -> Match {
    let g = &window(c, i, 1)?[0];
    if matches!(g.op.as_root(), Some((Axis::Z, _))) && g.is_controlled() {
        return done(1, vec![flipped_z(g, p.line)?]);
    }
    let w = window(c, i, 5)?;
    let mid = &w[2];
    let (a, _) = root_of(mid, "middle")?;
    let lines = [w[0].target, w[1].target];
    let t = lines
        .into_iter()
        .find(|&l| l != mid.target)
        .ok_or("translation lines do not straddle the middle gate")?;
    ensure(mid.control_on(t).is_some(), "middle gate is not controlled by the partner line")?;
    let lhs = Gate::new(
        mid.op,
        t,
        with_control(&without_line(mid.controls(), t), Control::pos(mid.target)),
    );
    ensure(a != Axis::Z, "Z-roots flip without translations")?;
    let params = RuleParams {
        line: Some(mid.target),
        ..RuleParams::default()
    };
    backward_search(RuleId::ConjugateByTranslation, c, i, 5, vec![(vec![lhs], params)])
}

fn is_plain_z_root(g: &Gate) -> bool {
    !g.is_controlled() && matches!(g.op.as_root(), Some((Axis::Z, _)))
}

/// `right = true` moves the Z-root at the anchor to the right.
fn move_z(c: &Circuit, i: usize, right: bool) -> Match {
    let w = window(c, i, 2)?;
    let (z, other) = if right { (&w[0], &w[1]) } else { (&w[1], &w[0]) };
    ensure(is_plain_z_root(z), "no uncontrolled Z-root on the moving side")?;
    ensure(
        other.control_on(z.target).is_some(),
        "other gate has no control on the Z-root's line",
    )?;
    done(2, vec![w[1].clone(), w[0].clone()])
}

fn cx_pair(g: &Gate) -> Option<(usize, usize)> {
    g.is_cx().then(|| (g.controls()[0].line, g.target))
}

fn d7(c: &Circuit, i: usize, mirror: bool) -> Match {
    let w = window(c, i, 2)?;
    let (x0, y0) = cx_pair(&w[0]).ok_or("first gate is not a CNOT")?;
    let (x1, y1) = cx_pair(&w[1]).ok_or("second gate is not a CNOT")?;
    if !mirror {
        // CX(a,b) CX(b,c)
        let (a, b, c2) = (x0, y0, y1);
        ensure(x1 == b, "second CNOT is not controlled by the first one's target")?;
        ensure(c2 != a, "three distinct lines required")?;
        done(2, vec![Gate::cx(b, c2), Gate::cx(a, b), Gate::cx(a, c2)])
    } else {
        // CX(b,c) CX(a,b)
        let (b, c2, a) = (x0, y0, x1);
        ensure(y1 == b, "second CNOT does not target the first one's control")?;
        ensure(a != c2, "three distinct lines required")?;
        done(2, vec![Gate::cx(a, b), Gate::cx(a, c2), Gate::cx(b, c2)])
    }
}

fn d7_back(c: &Circuit, i: usize, mirror: bool) -> Match {
    let w = window(c, i, 3)?;
    let pairs: Vec<(usize, usize)> = w
        .iter()
        .map(cx_pair)
        .collect::<Option<_>>()
        .ok_or("window is not three CNOTs")?;
    let lhs = if !mirror {
        // CX(b,c) CX(a,b) CX(a,c)
        let ((b, c2), (a, _)) = (pairs[0], pairs[1]);
        vec![Gate::cx(a, b), Gate::cx(b, c2)]
    } else {
        // CX(a,b) CX(a,c) CX(b,c)
        let ((a, b), (b2, c2)) = (pairs[0], pairs[2]);
        ensure(b2 == b, "last CNOT is not controlled by the first one's target")?;
        vec![Gate::cx(b, c2), Gate::cx(a, b)]
    };
    let params = RuleParams {
        mirror: Some(mirror),
        ..RuleParams::default()
    };
    backward_search(RuleId::CnotRuleD7, c, i, 3, vec![(lhs, params)])
}

fn lemma1(c: &Circuit, i: usize, p: &RuleParams, corollary: bool) -> Match {
    let w = window(c, i, 2)?;
    let (a, f) = root_of(&w[0], "first")?;
    let (a2, g) = root_of(&w[1], "second")?;
    ensure(w[0].target == w[1].target, "targets differ")?;
    ensure(a == a2, "root axes differ")?;
    let (l, pol) = single_polarity_split(&w[0], &w[1])?;
    ensure(pol == Polarity::Negative, "first gate must carry the negative control")?;
    ensure(f.add(g).congruent(RootExponent::ZERO), "the two cases are not mutually adjoint")?;
    let f = f.normalized();
    ensure(!f.is_zero(), "roots are trivial")?;
    if corollary {
        ensure(f.as_f64() > 0.0, "negative-controlled root must have a positive exponent")?;
    } else {
        ensure(f.as_f64() < 0.0, "negative-controlled root must have a negative exponent")?;
    }
    let b = p.b_axis.unwrap_or(default_b(a));
    ensure(b != a, "b axis must differ from the root axis")?;
    let t = w[0].target;
    let k = without_line(w[0].controls(), l);
    let sb = Gate::new(NamedOp::pauli(b), t, with_control(&k, Control::pos(l)));
    let z = Gate::new(root_op(Axis::Z, -f), l, k.clone());
    let s = Gate::new(root_op(a, f), t, k);
    let [m0, m1] = par(z, s);
    done(2, vec![sb.clone(), m0, m1, sb])
}

fn lemma1_back(rule: RuleId, c: &Circuit, i: usize, p: &RuleParams) -> Match {
    let w = window(c, i, 4)?;
    ensure(w[0] == w[3], "outer gates differ")?;
    let t = w[0].target;
    let (b, _) = root_of(&w[0], "outer")?;
    let (s, z) = if w[1].target == t { (&w[1], &w[2]) } else { (&w[2], &w[1]) };
    let (a, f) = root_of(s, "middle")?;
    let l = z.target;
    ensure(w[0].control_on(l) == Some(Polarity::Positive), "Z-root line is not an outer control")?;
    let k = without_line(w[0].controls(), l);
    let lhs = vec![
        Gate::new(root_op(a, f), t, with_control(&k, Control::neg(l))),
        Gate::new(root_op(a, (-f).normalized()), t, with_control(&k, Control::pos(l))),
    ];
    let params = RuleParams {
        b_axis: Some(p.b_axis.unwrap_or(b)),
        ..RuleParams::default()
    };
    backward_search(rule, c, i, 4, vec![(lhs, params)])
}

fn thm1(c: &Circuit, i: usize, p: &RuleParams) -> Match {
    let g = &window(c, i, 1)?[0];
    let (a, e) = root_of(g, "anchor")?;
    let l = pick_positive_control(g, p.line)?;
    let b = p.b_axis.unwrap_or(default_b(a));
    ensure(b != a, "b axis must differ from the root axis")?;
    let flip = p.flip_cz.unwrap_or(false);
    ensure(!flip || b == Axis::Z, "flip_cz requires b = z")?;
    let t = g.target;
    let k = without_line(g.controls(), l);
    let h = e.half();
    let sb = if flip {
        Gate::new(NamedOp::pauli(Axis::Z), l, with_control(&k, Control::pos(t)))
    } else {
        Gate::new(NamedOp::pauli(b), t, with_control(&k, Control::pos(l)))
    };
    let z = Gate::new(root_op(Axis::Z, h), l, k.clone());
    let plus = Gate::new(root_op(a, h), t, k.clone());
    let minus = Gate::new(root_op(a, -h), t, k);
    let mut core = match p.z_position.unwrap_or_default() {
        ZPosition::Middle => {
            let [m0, m1] = par(z, minus);
            vec![sb.clone(), m0, m1, sb]
        }
        ZPosition::Before => vec![z, sb.clone(), minus, sb],
        ZPosition::After => vec![sb.clone(), minus, sb, z],
    };
    let out = if p.first_to_end.unwrap_or(false) {
        let last = core.pop().expect("four-gate core");
        let [x, y] = par(last, plus);
        core.extend([x, y]);
        core
    } else {
        let first = core.remove(0);
        let [x, y] = par(plus, first);
        let mut v = vec![x, y];
        v.extend(core);
        v
    };
    done(1, out)
}

fn thm1_back(c: &Circuit, i: usize, p: &RuleParams) -> Match {
    let w = window(c, i, 5)?;
    let mut candidates = Vec::new();
    for plus in [&w[0], &w[1], &w[3], &w[4]] {
        let Some((a, h)) = plus.op.as_root() else { continue };
        let t = plus.target;
        let k = plus.controls().to_vec();
        let mut others: Vec<usize> = w
            .iter()
            .flat_map(|g| g.lines().collect::<Vec<_>>())
            .filter(|&x| x != t && k.iter().all(|y| y.line != x))
            .collect();
        others.sort_unstable();
        others.dedup();
        let [l] = others[..] else { continue };
        let lhs = Gate::new(root_op(a, h.double()), t, with_control(&k, Control::pos(l)));
        let b_choices: Vec<Axis> = w
            .iter()
            .filter(|g| g.op.is_pauli() && g.controls().len() == k.len() + 1)
            .filter_map(|g| g.op.as_root().map(|(ax, _)| ax))
            .collect();
        for b in opts(p.b_axis, &b_choices) {
            for fte in opts(p.first_to_end, &[false, true]) {
                for zp in opts(p.z_position, &[ZPosition::Middle, ZPosition::Before, ZPosition::After]) {
                    for flip in opts(p.flip_cz, &[false, true]) {
                        candidates.push((
                            vec![lhs.clone()],
                            RuleParams {
                                b_axis: Some(b),
                                line: Some(l),
                                first_to_end: Some(fte),
                                z_position: Some(zp),
                                flip_cz: Some(flip),
                                ..RuleParams::default()
                            },
                        ));
                    }
                }
            }
        }
    }
    backward_search(RuleId::Thm1RemoveControl, c, i, 5, candidates)
}

fn thm2(c: &Circuit, i: usize, p: &RuleParams) -> Match {
    let g = &window(c, i, 1)?[0];
    let (a, e) = root_of(g, "anchor")?;
    let cs = g.controls();
    ensure(
        cs.len() == 2 && cs.iter().all(|x| x.polarity == Polarity::Positive),
        "needs exactly two positive controls",
    )?;
    let (mut c1, mut c2) = (cs[0].line, cs[1].line);
    if p.swap_controls.unwrap_or(false) {
        std::mem::swap(&mut c1, &mut c2);
    }
    let b = p.b_axis.unwrap_or(a);
    let mut h = e.half();
    if p.dagger_roots.unwrap_or(false) {
        ensure(e.congruent(RootExponent::ONE), "adjoint roots need a Pauli target")?;
        h = -h;
    }
    let t = g.target;
    let r = |exp: RootExponent, ctl: usize| Gate::new(root_op(b, exp), t, vec![Control::pos(ctl)]);
    let mut inner = vec![r(h, c2), Gate::cx(c1, c2), r(-h, c2), Gate::cx(c1, c2)];
    inner.insert(usize::from(p.last_root_slot.unwrap_or(4)), r(h, c1));
    if a != b {
        let rho = Gate::single(NamedOp::translation(a, b), t);
        inner.insert(0, rho.clone());
        inner.push(rho);
    }
    done(1, inner)
}

fn thm2_back(c: &Circuit, i: usize, p: &RuleParams) -> Match {
    let first = &window(c, i, 1)?[0];
    let (len, rho) = match first.op {
        NamedOp::Translation { a, b } if a != b && !first.is_controlled() => (7, Some((a, b))),
        _ => (5, None),
    };
    let w = window(c, i, len)?;
    let inner = if rho.is_some() { &w[1..6] } else { w };
    let cx = inner
        .iter()
        .find_map(cx_pair)
        .ok_or("no CNOT between the controlled roots")?;
    let roots: Vec<&Gate> = inner.iter().filter(|g| !g.is_cx()).collect();
    ensure(roots.len() == 3, "expected three controlled roots")?;
    let (b, _) = root_of(roots[0], "inner")?;
    let t = roots[0].target;
    let r3 = roots
        .iter()
        .find(|g| g.control_on(cx.0).is_some())
        .ok_or("no root controlled by the CNOT control line")?;
    let (_, h) = root_of(r3, "inner")?;
    let a = match rho {
        Some((x, y)) if x == b => y,
        Some((x, y)) if y == b => x,
        Some(_) => return Err("translation does not involve the root axis".into()),
        None => b,
    };
    let mut candidates = Vec::new();
    for e in [h.double(), (-h).double()] {
        let lhs = Gate::new(root_op(a, e), t, vec![Control::pos(cx.0), Control::pos(cx.1)]);
        for swap in opts(p.swap_controls, &[false, true]) {
            for dagger in opts(p.dagger_roots, &[false, true]) {
                for slot in opts(p.last_root_slot, &[0, 1, 2, 3, 4]) {
                    candidates.push((
                        vec![lhs.clone()],
                        RuleParams {
                            b_axis: Some(p.b_axis.unwrap_or(b)),
                            swap_controls: Some(swap),
                            dagger_roots: Some(dagger),
                            last_root_slot: Some(slot),
                            ..RuleParams::default()
                        },
                    ));
                }
            }
        }
    }
    backward_search(RuleId::Thm2BarencoExtended, c, i, len, candidates)
}

fn swap_t(c: &Circuit, i: usize) -> Match {
    let w = window(c, i, 3)?;
    let (ctl, t) = cx_pair(&w[0]).ok_or("first gate is not a CNOT")?;
    ensure(w[2] == w[0], "outer CNOTs differ")?;
    ensure(is_plain_z_root(&w[1]), "middle gate is not an uncontrolled Z-root")?;
    ensure(w[1].target == t, "Z-root is not on the CNOT target")?;
    done(
        3,
        vec![
            Gate::cx(t, ctl),
            Gate::single(w[1].op, ctl),
            Gate::cx(t, ctl),
        ],
    )
}

fn cancel_inverses(c: &Circuit, i: usize) -> Match {
    let w = window(c, i, 2)?;
    ensure(w[0].is_inverse_of(&w[1]), "gates are not mutually inverse")?;
    done(2, vec![])
}

fn cancel_involution(c: &Circuit, i: usize) -> Match {
    let w = window(c, i, 2)?;
    ensure(
        w[0].target == w[1].target
            && w[0].controls() == w[1].controls()
            && same_op(&w[0].op, &w[1].op),
        "gates differ",
    )?;
    ensure(w[0].op.is_involution(), "gate is not an involution")?;
    done(2, vec![])
}

fn translate(c: &Circuit, i: usize, p: &RuleParams) -> Match {
    let g = &window(c, i, 1)?[0];
    let (a, e) = root_of(g, "anchor")?;
    let b = p.b_axis.unwrap_or(default_b(a));
    ensure(b != a, "b axis must differ from the root axis")?;
    let rho = Gate::single(NamedOp::translation(a, b), g.target);
    done(1, vec![rho.clone(), g.with_op(root_op(b, e)), rho])
}

fn translate_back(c: &Circuit, i: usize, p: &RuleParams) -> Match {
    let w = window(c, i, 3)?;
    let NamedOp::Translation { a: x, b: y } = w[0].op else {
        return Err("first gate is not a translation".into());
    };
    ensure(x != y && !w[0].is_controlled(), "first gate is not a proper translation")?;
    ensure(w[2] == w[0], "outer translations differ")?;
    let (b, e) = root_of(&w[1], "middle")?;
    ensure(w[1].target == w[0].target, "middle gate is on another line")?;
    let a = if b == x {
        y
    } else if b == y {
        x
    } else {
        return Err("translation does not involve the root axis".into());
    };
    ensure(p.b_axis.is_none_or(|pb| pb == b), "b axis does not match the middle root")?;
    done(3, vec![w[1].with_op(root_op(a, e))])
}

fn commute_adjacent(c: &Circuit, i: usize) -> Match {
    let w = window(c, i, 2)?;
    ensure(
        w[0].commutes_structurally(&w[1]),
        "gates do not commute on every shared line",
    )?;
    done(2, vec![w[1].clone(), w[0].clone()])
}

fn insert_pair(c: &Circuit, i: usize, p: &RuleParams) -> Match {
    let text = p.gate.as_deref().ok_or("needs `gate`, the gate to insert")?;
    let g = parse_gate_line(text, c.n()).map_err(|e| format!("bad gate `{text}`: {}", e.message))?;
    ensure(g.op.is_involution(), "inserted gate must be an involution")?;
    ensure(i <= c.len(), "insertion point out of range")?;
    done(0, vec![g.clone(), g])
}

/// Line pair of a three-CNOT SWAP network starting at `i`.
fn swap_triple(gates: &[Gate], i: usize) -> Option<(usize, usize)> {
    let w = gates.get(i..i + 3)?;
    let (x, y) = cx_pair(&w[0])?;
    (w[2] == w[0] && cx_pair(&w[1]) == Some((y, x))).then_some((x.min(y), x.max(y)))
}

fn relabel_between_swaps(c: &Circuit, i: usize) -> Match {
    let gates = c.gates();
    let pair = swap_triple(gates, i).ok_or("no SWAP network at the anchor")?;
    let j = (i + 3..gates.len())
        .find(|&j| swap_triple(gates, j) == Some(pair))
        .ok_or("no closing SWAP network on the same lines")?;
    let mut map: Vec<usize> = (0..c.n()).collect();
    map.swap(pair.0, pair.1);
    let middle = gates[i + 3..j].iter().map(|g| g.relabel(&map)).collect();
    done(j + 3 - i, middle)
}
