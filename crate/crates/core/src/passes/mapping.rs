//! Whole-circuit passes built from rewrite rules: NCV expansion, control
//! removal, Clifford+T mapping and translation between root axes.

use crate::algebra::{Axis, NamedOp, RootExponent};
use crate::circuit::{Circuit, Gate, Polarity};
use crate::error::{Error, Result};
use crate::rules::{apply, RewriteStep, RuleId, RuleParams};
use crate::semantics::is_equivalent;

fn step(c: &Circuit, rule: RuleId, anchor: usize, params: RuleParams) -> Result<Circuit> {
    apply(&RewriteStep::with(rule, anchor, params), c)
}

fn checked(name: &str, before: &Circuit, after: Circuit) -> Result<Circuit> {
    if is_equivalent(before, &after)? {
        Ok(after)
    } else {
        Err(Error::Soundness(format!("pass `{name}` changed the unitary")))
    }
}

fn is_multi_x(g: &Gate) -> bool {
    g.op.is_pauli_on(Axis::X) && g.controls().len() >= 2
}

/// Replaces every doubly controlled X by five NCV gates.
pub fn expand_ncv(c: &Circuit) -> Result<Circuit> {
    let mut out = c.clone();
    for i in (0..c.len()).rev() {
        let g = &c.gates()[i];
        if !is_multi_x(g) {
            continue;
        }
        if g.controls().len() > 2 {
            return Err(Error::Unsupported(format!(
                "gate {i} has {} controls; only two are expanded",
                g.controls().len()
            )));
        }
        if g.controls().iter().any(|x| x.polarity == Polarity::Negative) {
            return Err(Error::Unsupported(format!("gate {i} has a negative control")));
        }
        out = step(&out, RuleId::Thm2BarencoExtended, i, RuleParams::default())?;
    }
    checked("expand-ncv", c, out)
}

/// Removes one positive control from the Pauli root at `index`, doubling
/// the root degree. Remaining controls stay on every gate of the pattern.
pub fn remove_control(c: &Circuit, index: usize, b_axis: Option<Axis>) -> Result<Circuit> {
    let g = c.gates().get(index).ok_or_else(|| {
        Error::InvalidArgument(format!("gate index {index} is past the end ({} gates)", c.len()))
    })?;
    if g.op.as_root().is_none() {
        return Err(Error::Unsupported(format!("gate {index} is not a Pauli root")));
    }
    if !g.is_controlled() {
        return Err(Error::InvalidArgument(format!("gate {index} has no control to remove")));
    }
    let params = RuleParams {
        b_axis,
        ..RuleParams::default()
    };
    let out = step(c, RuleId::Thm1RemoveControl, index, params)?;
    checked("remove-control", c, out)
}

/// NCV expansion, controlled X roots rewritten as Hadamard-conjugated
/// Z roots, every control removed, then cleanup.
pub fn ncv_to_clifford_t(c: &Circuit) -> Result<Circuit> {
    let mut out = expand_ncv(c)?;
    for i in (0..out.len()).rev() {
        let g = &out.gates()[i];
        if let Some((Axis::X, e)) = g.op.as_root() {
            if g.is_controlled() && !e.congruent(RootExponent::ONE) {
                let params = RuleParams {
                    b_axis: Some(Axis::Z),
                    ..RuleParams::default()
                };
                out = step(&out, RuleId::TranslateRoot, i, params)?;
            }
        }
    }
    for i in (0..out.len()).rev() {
        let g = &out.gates()[i];
        if let Some((Axis::Z, _)) = g.op.as_root() {
            if g.controls().len() == 1 && g.controls()[0].polarity == Polarity::Positive {
                out = step(&out, RuleId::Thm1RemoveControl, i, RuleParams::default())?;
            }
        }
    }
    let out = cleanup(&out)?;
    checked("ncv-to-clifford-t", c, out)
}

const CLEANUP: [RuleId; 3] = [
    RuleId::CancelAdjacentInverses,
    RuleId::CancelInvolution,
    RuleId::MergeSameControls,
];

/// Leftmost pair `(i, j)` whose gates cancel or merge once `j` is commuted
/// next to `i`, with the rewritten circuit.
fn cleanup_once(c: &Circuit) -> Result<Option<Circuit>> {
    let g = c.gates();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if (i + 1..j).any(|k| !g[k].commutes_structurally(&g[j])) {
                continue;
            }
            let mut moved = c.clone();
            for k in (i + 1..j).rev() {
                moved = step(&moved, RuleId::CommuteAdjacent, k, RuleParams::default())?;
            }
            for rule in CLEANUP {
                if let Ok(next) = step(&moved, rule, i, RuleParams::default()) {
                    return Ok(Some(next));
                }
            }
        }
    }
    Ok(None)
}

/// Cancels and merges gates that commutations bring together, to a fixed
/// point or `10 · gate_count` rounds.
pub fn cleanup(c: &Circuit) -> Result<Circuit> {
    let cap = 10 * c.len().max(1);
    let mut cur = c.clone();
    for _ in 0..cap {
        match cleanup_once(&cur)? {
            Some(next) => cur = next,
            None => return checked("cleanup", c, cur),
        }
    }
    checked("cleanup", c, cur)
}

/// Conjugates every uncontrolled Pauli root into `target` by translation
/// gates, cancelling equal adjacent translations as they appear.
pub fn translate_library(c: &Circuit, target: Axis) -> Result<Circuit> {
    let mut out: Vec<Gate> = Vec::with_capacity(c.len());
    let mut push = |g: Gate| {
        let cancels = matches!(g.op, NamedOp::Translation { .. })
            && !g.is_controlled()
            && out.last() == Some(&g);
        if cancels {
            out.pop();
        } else {
            out.push(g);
        }
    };
    for g in c.gates() {
        match g.op.as_root() {
            Some((a, e)) if a != target && !g.is_controlled() => {
                let rho = Gate::single(NamedOp::translation(a, target), g.target);
                push(rho.clone());
                push(g.with_op(NamedOp::PauliRoot { axis: target, exp: e }));
                push(rho);
            }
            _ => push(g.clone()),
        }
    }
    checked("translate", c, Circuit::new(c.n(), out)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::passes::builtins::builtin;
    use crate::text::{parse, print};

    fn circ(t: &str) -> Circuit {
        parse(t).unwrap()
    }

    #[test]
    fn expand_single_toffoli() {
        let out = expand_ncv(&circ("qubits 3\nx 2 ctrl +0 +1")).unwrap();
        assert_eq!(out.len(), 5);
        let plain = circ("qubits 2\nh 0\ncx 0 1");
        assert_eq!(expand_ncv(&plain).unwrap(), plain);
    }

    #[test]
    fn expand_peres_pair_gives_ten() {
        let out = expand_ncv(&builtin("peres-pair-adder").unwrap()).unwrap();
        assert_eq!(out.len(), 12);
        let ncv = out.gates().iter().filter(|g| !g.is_cx()).count();
        assert_eq!(ncv, 6);
        assert_eq!(out.gates().iter().filter(|g| g.is_cx()).count(), 6);
    }

    #[test]
    fn three_controls_are_unsupported() {
        let c = circ("qubits 4\nx 3 ctrl +0 +1 +2");
        assert!(matches!(expand_ncv(&c), Err(Error::Unsupported(_))));
    }

    #[test]
    fn remove_control_doubles_the_degree() {
        let c = circ("qubits 2\nv 1 ctrl +0");
        let out = remove_control(&c, 0, None).unwrap();
        assert_eq!(out.len(), 5);
        let mut z = 0;
        for g in out.gates() {
            let (axis, e) = g.op.as_root().unwrap();
            if e.congruent(RootExponent::ONE) {
                assert!(g.is_controlled());
                continue;
            }
            assert_eq!(e.denom(), 4, "{}", print(&out, true));
            z += usize::from(axis == Axis::Z);
        }
        assert_eq!(z, 1);
    }

    #[test]
    fn remove_control_preconditions() {
        assert!(matches!(
            remove_control(&circ("qubits 1\nt 0"), 0, None),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            remove_control(&circ("qubits 2\nh 1 ctrl +0"), 0, None),
            Err(Error::Unsupported(_))
        ));
        assert!(remove_control(&circ("qubits 1\nt 0"), 3, None).is_err());
    }

    #[test]
    fn remove_one_of_two_controls() {
        let out = remove_control(&circ("qubits 3\nx 2 ctrl +0 +1"), 0, None).unwrap();
        assert!(out.gates().iter().all(|g| g.controls().len() <= 2));
    }

    #[test]
    fn toffoli_to_clifford_t() {
        let out = ncv_to_clifford_t(&circ("qubits 3\nx 2 ctrl +0 +1")).unwrap();
        for g in out.gates() {
            let ok = g.is_cx()
                || (!g.is_controlled()
                    && (g.op == NamedOp::hadamard()
                        || matches!(g.op.as_root(), Some((Axis::Z, e)) if 4 % e.denom() == 0)));
            assert!(ok, "not Clifford+T: {}", print(&out, true));
        }
        assert!(out.stats().unwrap().t_count <= 9);
    }

    #[test]
    fn single_t_translates_to_conjugated_w() {
        let out = translate_library(&circ("qubits 1\nt 0"), Axis::X).unwrap();
        assert_eq!(print(&out, true), "qubits 1\nh 0\nw 0\nh 0\n");
    }

    #[test]
    fn translation_round_trip() {
        let c = builtin("full-adder-final").unwrap();
        let w = translate_library(&c, Axis::X).unwrap();
        for g in w.gates() {
            let ok = g.is_controlled()
                || matches!(g.op, NamedOp::Translation { .. })
                || matches!(g.op.as_root(), Some((Axis::X, _)));
            assert!(ok);
        }
        let back = translate_library(&w, Axis::Z).unwrap();
        assert!(is_equivalent(&c, &back).unwrap());
        assert_eq!(back.stats().unwrap(), c.stats().unwrap());
        let x_only = circ("qubits 2\nv 0\ncx 0 1\nx 1");
        assert_eq!(translate_library(&x_only, Axis::X).unwrap(), x_only);
    }

    #[test]
    fn cleanup_cancels_through_commuting_gates() {
        let c = circ("qubits 3\nt 0\ncx 1 2\nt 0\nh 2\nh 2\ntdg 1");
        assert_eq!(print(&cleanup(&c).unwrap(), true), "qubits 3\ns 0\ncx 1 2\ntdg 1\n");
    }
}
