//! Exhaustive matrix checks of the Pauli-root identities the rewrite rules
//! rest on. Each right-hand side is built from its written form, not from
//! the rule implementations, so the suite doubles as an oracle for them.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    equal_up_to_phase, hadamard, kron, levi_civita, kronecker_delta, negator_matrix, pauli,
    pauli_root_matrix, rotation_matrix, translation_matrix, Axis, Matrix, NamedOp, RootExponent,
};
use crate::circuit::{Circuit, Control, Gate};
use crate::clifford::clifford_identities_check;
use crate::semantics::circuit_unitary;

pub const EPS: f64 = 1e-9;
pub const KS: [i64; 3] = [1, 2, 4];
const THETAS: [f64; 5] = [-2.9, -0.8, 0.3, 1.1, 2.7];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub cases: usize,
    pub max_error: f64,
    pub holds: bool,
}

#[derive(Default)]
struct Acc {
    cases: usize,
    max_error: f64,
}

impl Acc {
    fn exact(&mut self, lhs: &Matrix, rhs: &Matrix) {
        self.cases += 1;
        self.max_error = self.max_error.max(lhs.max_abs_diff(rhs));
    }

    fn phase(&mut self, lhs: &Matrix, rhs: &Matrix) {
        self.cases += 1;
        let err = match equal_up_to_phase(lhs, rhs, EPS) {
            Ok(Some(l)) => lhs.max_abs_diff(&rhs.scale(l)),
            _ => f64::INFINITY,
        };
        self.max_error = self.max_error.max(err);
    }

    fn circuits(&mut self, n: usize, lhs: Vec<Gate>, rhs: Vec<Gate>) {
        let u = |g: Vec<Gate>| circuit_unitary(&Circuit::new(n, g).expect("well-formed identity"));
        match (u(lhs), u(rhs)) {
            (Ok(a), Ok(b)) => self.phase(&a, &b),
            _ => {
                self.cases += 1;
                self.max_error = f64::INFINITY;
            }
        }
    }

    fn report(self, name: &str) -> IdentityReport {
        IdentityReport {
            name: name.to_string(),
            cases: self.cases,
            holds: self.cases > 0 && self.max_error <= EPS,
            max_error: self.max_error,
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn e_i(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn rot(a: Axis, theta: f64) -> Matrix {
    rotation_matrix(a, theta).expect("finite angle")
}

fn root(a: Axis, m: i64, k: i64) -> Matrix {
    pauli_root_matrix(a, RootExponent::new(m, k).expect("k > 0"))
}

fn pairs() -> impl Iterator<Item = (Axis, Axis)> {
    Axis::ALL
        .into_iter()
        .flat_map(|a| Axis::ALL.into_iter().map(move |b| (a, b)))
}

fn distinct_pairs() -> impl Iterator<Item = (Axis, Axis)> {
    pairs().filter(|(a, b)| a != b)
}

fn root_op(a: Axis, m: i64, k: i64) -> NamedOp {
    NamedOp::root(a, m, k)
}

/// Target ops used where a rule holds for any `U`.
fn sample_ops() -> Vec<NamedOp> {
    let mut v = Vec::new();
    for a in Axis::ALL {
        for k in KS {
            v.push(root_op(a, 1, k));
            v.push(root_op(a, -1, k));
        }
        v.push(NamedOp::translation(a, a.third(a).unwrap_or(a)));
        v.push(NamedOp::negator(a, 0.7));
    }
    v.retain(|op| !matches!(op, NamedOp::Translation { a, b } if a == b));
    v
}

fn g(op: NamedOp, target: usize, controls: Vec<Control>) -> Gate {
    Gate::new(op, target, controls)
}

fn single_qubit() -> Vec<IdentityReport> {
    let i = Complex64::i();
    let mut out = Vec::new();

    let mut acc = Acc::default();
    for a in Axis::ALL {
        acc.exact(&pauli(a), &rot(a, PI).scale(i));
    }
    out.push(acc.report("Pauli matrix is a half turn"));

    let mut acc = Acc::default();
    for (a, b) in distinct_pairs() {
        for t in THETAS {
            acc.exact(&rot(a, t).adjoint(), &rot(a, -t));
            acc.exact(&rot(a, t).adjoint(), &Matrix::product([&pauli(b), &rot(a, t), &pauli(b)]));
        }
    }
    out.push(acc.report("rotation adjoint by negation or Pauli conjugation"));

    let mut acc = Acc::default();
    for a in Axis::ALL {
        for t1 in THETAS {
            for t2 in THETAS {
                acc.exact(&rot(a, t1).mul(&rot(a, t2)), &rot(a, t1 + t2));
            }
        }
    }
    out.push(acc.report("rotation angles add"));

    let mut acc = Acc::default();
    for a in Axis::ALL {
        for k in KS {
            let kf = k as f64;
            let r = rot(a, PI / kf);
            acc.exact(&root(a, 1, k), &r.scale(e_i(PI / (2.0 * kf))));
            acc.exact(&root(a, -1, k), &r.adjoint().scale(e_i(-PI / (2.0 * kf))));
            acc.exact(&root(a, -1, k), &root(a, 1, k).adjoint());
            acc.exact(&r, &root(a, 1, k).scale(e_i(-PI / (2.0 * kf))));
            acc.exact(&r.adjoint(), &root(a, -1, k).scale(e_i(PI / (2.0 * kf))));
        }
    }
    out.push(acc.report("roots and rotations convert"));

    let mut acc = Acc::default();
    for (a, b) in distinct_pairs() {
        for k in KS {
            let kf = k as f64;
            let sb = pauli(b);
            acc.exact(
                &root(a, 1, k),
                &Matrix::product([&sb, &root(a, -1, k), &sb]).scale(e_i(PI / kf)),
            );
            acc.exact(
                &root(a, -1, k),
                &Matrix::product([&sb, &root(a, 1, k), &sb]).scale(e_i(-PI / kf)),
            );
        }
    }
    out.push(acc.report("root equals phased Pauli conjugate of its adjoint"));

    let mut acc = Acc::default();
    for (a, b) in distinct_pairs() {
        let rho = translation_matrix(a, b);
        let sum = pauli(a).add(&pauli(b)).scale(c(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        acc.exact(&rho, &sum);
        acc.exact(&rho, &translation_matrix(b, a));
        let h = rot(a, PI / 2.0);
        acc.exact(&rho, &Matrix::product([&h, &rot(b, PI / 2.0), &h]).scale(i));
        acc.exact(&pauli(a), &Matrix::product([&rho, &pauli(b), &rho]));
        for k in KS {
            for m in [1, -1] {
                acc.exact(&root(a, m, k), &Matrix::product([&rho, &root(b, m, k), &rho]));
            }
        }
    }
    for a in Axis::ALL {
        acc.exact(&translation_matrix(a, a), &Matrix::identity(2));
    }
    out.push(acc.report("translation matrices"));

    let mut acc = Acc::default();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h_lit = Matrix::from_rows(vec![vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(-s, 0.0)]])
        .expect("square");
    let (x, z) = (pauli(Axis::X), pauli(Axis::Z));
    acc.exact(&hadamard(), &h_lit);
    acc.exact(&hadamard(), &x.add(&z).scale(c(s, 0.0)));
    let r1 = rot(Axis::X, PI / 2.0);
    acc.exact(&hadamard(), &Matrix::product([&r1, &rot(Axis::Z, PI / 2.0), &r1]).scale(i));
    acc.exact(&hadamard(), &translation_matrix(Axis::X, Axis::Z));
    acc.exact(&z, &Matrix::product([&h_lit, &x, &h_lit]));
    acc.exact(&x, &Matrix::product([&h_lit, &z, &h_lit]));
    out.push(acc.report("Hadamard forms and X/Z exchange"));

    let mut acc = Acc::default();
    for (a, b) in pairs() {
        let (sa, sb) = (pauli(a), pauli(b));
        let mut eps_sum = Matrix::zeros(2);
        for cc in Axis::ALL {
            let e = f64::from(levi_civita(a, b, cc));
            eps_sum = eps_sum.add(&pauli(cc).scale(c(0.0, e)));
        }
        let delta = Matrix::identity(2).scale(c(f64::from(kronecker_delta(a, b)), 0.0));
        let ab = sa.mul(&sb);
        let ba = sb.mul(&sa);
        acc.exact(&ab.sub(&ba).add(&ab.add(&ba)), &eps_sum.add(&delta).scale(c(2.0, 0.0)));
        acc.exact(&ab, &eps_sum.add(&delta));
    }
    out.push(acc.report("Pauli products via Levi-Civita"));

    let mut acc = Acc::default();
    for (a, b) in distinct_pairs() {
        let cc = a.third(b).expect("distinct axes");
        if levi_civita(a, b, cc) != 1 {
            continue;
        }
        let half = root(cc, 1, 2);
        for k in KS {
            acc.exact(&root(b, 1, k), &Matrix::product([&half, &root(a, 1, k), &half.adjoint()]));
        }
    }
    out.push(acc.report("root rotated by the square root of the third Pauli (cyclic)"));

    out
}

fn controlled() -> Vec<IdentityReport> {
    let ops = sample_ops();
    let mut out = Vec::new();
    let pos = Control::pos;
    let neg = Control::neg;

    // Two-line circuits with the control on either line.
    let orientations = [(0usize, 1usize), (1, 0)];

    let mut acc = Acc::default();
    for &(cl, t) in &orientations {
        for u1 in &ops {
            for u2 in &ops {
                let product = Matrix::product([&u1.matrix(), &u2.matrix()]);
                for ctl in [pos(cl), neg(cl)] {
                    let lhs = circuit_unitary(
                        &Circuit::new(2, vec![g(*u2, t, vec![ctl]), g(*u1, t, vec![ctl])]).expect("valid"),
                    )
                    .expect("small");
                    let rhs = controlled_matrix(&product, cl, t, ctl.polarity == crate::circuit::Polarity::Positive);
                    acc.phase(&lhs, &rhs);
                }
            }
        }
    }
    out.push(acc.report("same-control gates multiply"));

    let mut acc = Acc::default();
    for &(cl, t) in &orientations {
        for u1 in &ops {
            for u2 in &ops {
                acc.circuits(
                    2,
                    vec![g(*u2, t, vec![pos(cl)]), g(*u1, t, vec![neg(cl)])],
                    vec![g(*u1, t, vec![neg(cl)]), g(*u2, t, vec![pos(cl)])],
                );
            }
        }
    }
    out.push(acc.report("opposite polarities commute"));

    let mut acc = Acc::default();
    for &(cl, t) in &orientations {
        for u in &ops {
            acc.circuits(2, vec![g(*u, t, vec![pos(cl)]), g(*u, t, vec![neg(cl)])], vec![g(*u, t, vec![])]);
            acc.circuits(2, vec![g(*u, t, vec![neg(cl)]), g(*u, t, vec![pos(cl)])], vec![g(*u, t, vec![])]);
        }
    }
    out.push(acc.report("both polarities remove the control"));

    let mut acc = Acc::default();
    let p0 = projector(0);
    let p1 = projector(1);
    for u1 in &ops {
        for u2 in &ops {
            let lhs = circuit_unitary(
                &Circuit::new(2, vec![g(*u1, 1, vec![neg(0)]), g(*u2, 1, vec![pos(0)])]).expect("valid"),
            )
            .expect("small");
            let rhs = kron(&p0, &u1.matrix()).add(&kron(&p1, &u2.matrix()));
            acc.exact(&lhs, &rhs);
        }
    }
    out.push(acc.report("case gate as a block diagonal"));

    let mut acc = Acc::default();
    for k in KS {
        for m in [1, -1] {
            let zr = root_op(Axis::Z, m, k);
            acc.circuits(2, vec![g(zr, 1, vec![pos(0)])], vec![g(zr, 0, vec![pos(1)])]);
        }
    }
    out.push(acc.report("controlled Z root is symmetric"));

    let mut acc = Acc::default();
    for a in Axis::ALL {
        let rho = NamedOp::translation(a, Axis::Z);
        for k in KS {
            let r = root_op(a, 1, k);
            let zr = root_op(Axis::Z, 1, k);
            let lhs = vec![g(r, 1, vec![pos(0)])];
            let mid = vec![g(rho, 1, vec![]), g(zr, 1, vec![pos(0)]), g(rho, 1, vec![])];
            let flipped = vec![g(rho, 1, vec![]), g(zr, 0, vec![pos(1)]), g(rho, 1, vec![])];
            let both = vec![
                g(rho, 0, vec![]),
                g(rho, 1, vec![]),
                g(r, 0, vec![pos(1)]),
                g(rho, 0, vec![]),
                g(rho, 1, vec![]),
            ];
            acc.circuits(2, lhs.clone(), mid);
            acc.circuits(2, lhs.clone(), flipped);
            acc.circuits(2, lhs, both);
        }
    }
    out.push(acc.report("controlled root turned around by translations"));

    let mut acc = Acc::default();
    for k in KS {
        for m in [1, -1] {
            let zr = root_op(Axis::Z, m, k);
            for u in &ops {
                acc.circuits(
                    2,
                    vec![g(zr, 0, vec![]), g(*u, 1, vec![pos(0)])],
                    vec![g(*u, 1, vec![pos(0)]), g(zr, 0, vec![])],
                );
            }
        }
    }
    out.push(acc.report("Z root moves across a positive control"));

    let mut acc = Acc::default();
    acc.circuits(
        3,
        vec![Gate::cx(0, 1), Gate::cx(1, 2)],
        vec![Gate::cx(1, 2), Gate::cx(0, 1), Gate::cx(0, 2)],
    );
    out.push(acc.report("CNOT chain rule"));

    let mut acc = Acc::default();
    for (a, b) in distinct_pairs() {
        for k in KS {
            let sb = NamedOp::pauli(b);
            for (sign, name_sign) in [(1i64, 1i64), (-1, -1)] {
                // sign = 1: case(root†, root); sign = -1: case(root, root†).
                let lhs = vec![
                    g(root_op(a, -sign, k), 1, vec![neg(0)]),
                    g(root_op(a, sign, k), 1, vec![pos(0)]),
                ];
                let rhs = vec![
                    g(sb, 1, vec![pos(0)]),
                    g(root_op(Axis::Z, name_sign, k), 0, vec![]),
                    g(root_op(a, -sign, k), 1, vec![]),
                    g(sb, 1, vec![pos(0)]),
                ];
                acc.circuits(2, lhs, rhs);
            }
        }
    }
    out.push(acc.report("case gate of a root and its adjoint (both orders)"));

    let mut acc = Acc::default();
    for (a, b) in distinct_pairs() {
        for k in KS {
            let sb = NamedOp::pauli(b);
            acc.circuits(
                2,
                vec![g(root_op(a, 1, k), 1, vec![pos(0)])],
                vec![
                    g(root_op(a, 1, 2 * k), 1, vec![]),
                    g(sb, 1, vec![pos(0)]),
                    g(root_op(Axis::Z, 1, 2 * k), 0, vec![]),
                    g(root_op(a, -1, 2 * k), 1, vec![]),
                    g(sb, 1, vec![pos(0)]),
                ],
            );
        }
    }
    out.push(acc.report("one control removed by doubling the root"));

    let mut acc = Acc::default();
    for (a, b) in pairs() {
        for k in KS {
            let rb = |m| root_op(b, m, 2 * k);
            let mut rhs = vec![
                g(rb(1), 2, vec![pos(1)]),
                Gate::cx(0, 1),
                g(rb(-1), 2, vec![pos(1)]),
                Gate::cx(0, 1),
                g(rb(1), 2, vec![pos(0)]),
            ];
            if a != b {
                let rho = g(NamedOp::translation(a, b), 2, vec![]);
                rhs.insert(0, rho.clone());
                rhs.push(rho);
            }
            acc.circuits(3, vec![g(root_op(a, 1, k), 2, vec![pos(0), pos(1)])], rhs);
        }
    }
    out.push(acc.report("doubly controlled root in five gates"));

    let mut acc = Acc::default();
    for m in [1, -1] {
        let t = |l| Gate::t_power(m, l);
        acc.circuits(
            2,
            vec![Gate::cx(0, 1), t(1), Gate::cx(0, 1)],
            vec![Gate::cx(1, 0), t(0), Gate::cx(1, 0)],
        );
    }
    out.push(acc.report("T under a CNOT pair swaps lines"));

    out
}

fn projector(bit: usize) -> Matrix {
    let mut m = Matrix::zeros(2);
    m.set(bit, bit, c(1.0, 0.0));
    m
}

fn controlled_matrix(u: &Matrix, control: usize, target: usize, positive: bool) -> Matrix {
    let (fire, idle) = if positive { (projector(1), projector(0)) } else { (projector(0), projector(1)) };
    let id = Matrix::identity(2);
    if control < target {
        kron(&idle, &id).add(&kron(&fire, u))
    } else {
        kron(&id, &idle).add(&kron(u, &fire))
    }
}

/// Every identity, one report per family.
pub fn algebra_suite() -> Vec<IdentityReport> {
    let mut out = single_qubit();
    out.extend(controlled());
    for r in clifford_identities_check() {
        out.push(IdentityReport {
            name: format!("Clifford example {}", r.name),
            cases: 1,
            max_error: r.max_error,
            holds: r.holds,
        });
    }
    out
}

/// `N_a(θ) = e^{iθ} R_a(2θ)` at each sample and axis.
pub fn negator_check(thetas: &[f64]) -> IdentityReport {
    let mut acc = Acc::default();
    for a in Axis::ALL {
        for &t in thetas {
            match negator_matrix(a, t) {
                Ok(n) => acc.exact(&n, &rot(a, 2.0 * t).scale(e_i(t))),
                Err(_) => {
                    acc.cases += 1;
                    acc.max_error = f64::INFINITY;
                }
            }
        }
    }
    acc.report("negator is a phased rotation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identity_holds() {
        for r in algebra_suite() {
            assert!(r.holds, "{} failed: max error {:e} over {} cases", r.name, r.max_error, r.cases);
        }
    }

    #[test]
    fn anti_cyclic_prefactor_reading_fails_beyond_paulis() {
        // With the sign read as a scalar prefactor the anti-cyclic triple
        // only works for k = 1.
        let (a, b, cc) = (Axis::Y, Axis::X, Axis::Z);
        assert_eq!(levi_civita(a, b, cc), -1);
        let half = root(cc, 1, 2);
        let rhs = |k| Matrix::product([&half, &root(a, 1, k), &half.adjoint()]).scale(c(-1.0, 0.0));
        assert!(equal_up_to_phase(&root(b, 1, 1), &rhs(1), EPS).unwrap().is_some());
        assert!(!root(b, 1, 2).approx_eq(&rhs(2), EPS));
    }

    #[test]
    fn negator_samples() {
        let thetas: Vec<f64> = (0..100).map(|i| -PI + (i as f64 + 0.5) * 2.0 * PI / 100.0).collect();
        assert!(negator_check(&thetas).holds);
    }

    #[test]
    fn broken_identity_is_reported() {
        let mut acc = Acc::default();
        acc.exact(&pauli(Axis::X), &pauli(Axis::Z));
        assert!(!acc.report("x").holds);
    }
}
