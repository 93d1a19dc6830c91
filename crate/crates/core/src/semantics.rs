//! Dense unitary semantics. Qubit 0 is the most significant bit of a basis
//! index, so it is the top line of a drawn circuit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{equal_up_to_phase, Matrix, EPS};
use crate::circuit::{gate_violations, Circuit, Gate};
use crate::error::{Error, Result};

/// Largest qubit count the dense simulator accepts.
pub const MAX_QUBITS: usize = 12;

fn bit(n: usize, line: usize) -> usize {
    1 << (n - 1 - line)
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        Err(Error::Resource(format!(
            "{n} qubits exceeds the dense simulation limit of {MAX_QUBITS}"
        )))
    } else {
        Ok(())
    }
}

/// Left-multiplies `m` (a `2^n`-dimensional matrix) by the unitary of `g`.
pub(crate) fn apply_gate(m: &mut Matrix, g: &Gate, n: usize) {
    let op = g.op.matrix();
    let (a, b, c, d) = (op.get(0, 0), op.get(0, 1), op.get(1, 0), op.get(1, 1));
    let tbit = bit(n, g.target);
    let (mut mask, mut want) = (0usize, 0usize);
    for ctl in g.controls() {
        mask |= bit(n, ctl.line);
        if ctl.polarity.fires_on() == 1 {
            want |= bit(n, ctl.line);
        }
    }
    let dim = m.dim();
    let data = m.entries_mut();
    for r0 in 0..dim {
        if r0 & tbit != 0 || r0 & mask != want {
            continue;
        }
        let r1 = r0 | tbit;
        for col in 0..dim {
            let x0 = data[r0 * dim + col];
            let x1 = data[r1 * dim + col];
            data[r0 * dim + col] = a * x0 + b * x1;
            data[r1 * dim + col] = c * x0 + d * x1;
        }
    }
}

pub fn gate_unitary(g: &Gate, n: usize) -> Result<Matrix> {
    let v = gate_violations(g, n, None);
    if !v.is_empty() {
        return Err(Error::Validation(v));
    }
    check_size(n)?;
    let mut m = Matrix::identity(1 << n);
    apply_gate(&mut m, g, n);
    Ok(m)
}

/// Product of the gate unitaries with the first gate applied first.
pub fn circuit_unitary(c: &Circuit) -> Result<Matrix> {
    c.ensure_valid()?;
    check_size(c.n())?;
    let mut m = Matrix::identity(1 << c.n());
    for g in c.gates() {
        apply_gate(&mut m, g, c.n());
    }
    Ok(m)
}

/// The global phase `λ` with `U(c1) = λ·U(c2)` when the circuits are
/// equivalent, `None` otherwise.
pub fn equivalent(c1: &Circuit, c2: &Circuit) -> Result<Option<Complex64>> {
    if c1.n() != c2.n() {
        return Err(Error::InvalidArgument(format!(
            "qubit counts differ: {} vs {}",
            c1.n(),
            c2.n()
        )));
    }
    equal_up_to_phase(&circuit_unitary(c1)?, &circuit_unitary(c2)?, EPS)
}

pub fn is_equivalent(c1: &Circuit, c2: &Circuit) -> Result<bool> {
    Ok(equivalent(c1, c2)?.is_some())
}

/// Classical action of a circuit: basis state `x` maps to `perm[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTable {
    pub n: usize,
    pub perm: Vec<usize>,
    /// False when the nonzero entries carry differing phases, i.e. the
    /// circuit is classical only up to relative phases.
    pub uniform_phase: bool,
}

impl TruthTable {
    /// Bit of `line` in the image of basis state `x`.
    pub fn output_bit(&self, x: usize, line: usize) -> usize {
        (self.perm[x] >> (self.n - 1 - line)) & 1
    }
}

/// Returns the permutation realized by `c` if its unitary has exactly one
/// unit-modulus entry per column, `None` if it is not classical.
pub fn truth_table(c: &Circuit) -> Result<Option<TruthTable>> {
    let u = circuit_unitary(c)?;
    let dim = u.dim();
    let mut perm = Vec::with_capacity(dim);
    let mut phase: Option<Complex64> = None;
    let mut uniform = true;
    for col in 0..dim {
        let mut hit = None;
        for row in 0..dim {
            let z = u.get(row, col);
            if z.norm() > EPS {
                if hit.is_some() || (z.norm() - 1.0).abs() > EPS {
                    return Ok(None);
                }
                hit = Some((row, z));
            }
        }
        let Some((row, z)) = hit else {
            return Ok(None);
        };
        match phase {
            None => phase = Some(z),
            Some(p) if (p - z).norm() > EPS => uniform = false,
            _ => {}
        }
        perm.push(row);
    }
    Ok(Some(TruthTable {
        n: c.n(),
        perm,
        uniform_phase: uniform,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{pauli_root_matrix, Axis, NamedOp, RootExponent};
    use crate::circuit::Control;
    use crate::text::parse;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn cnot_is_permutation() {
        let u = gate_unitary(&Gate::cx(0, 1), 2).unwrap();
        let expected = [(0, 0), (1, 1), (2, 3), (3, 2)];
        for (r, col) in expected {
            assert_eq!(u.get(r, col), c(1.0));
        }
        assert_eq!(u.entries().iter().filter(|z| z.norm() > 0.0).count(), 4);
    }

    #[test]
    fn negative_control_leaves_one_branch_alone() {
        let g = Gate::new(NamedOp::hadamard(), 1, vec![Control::neg(0)]);
        let u = gate_unitary(&g, 2).unwrap();
        assert_eq!(u.get(2, 2), c(1.0));
        assert_eq!(u.get(3, 3), c(1.0));
        assert_eq!(u.get(2, 3), c(0.0));
    }

    #[test]
    fn controlled_z_roots_flip() {
        for k in [1, 2, 4, 8] {
            let e = RootExponent::root(k);
            let a = Gate::root(Axis::Z, e, 0, vec![Control::pos(1)]);
            let b = Gate::root(Axis::Z, e, 1, vec![Control::pos(0)]);
            assert!(gate_unitary(&a, 2).unwrap().approx_eq(&gate_unitary(&b, 2).unwrap(), EPS));
        }
    }

    #[test]
    fn single_line_embedding_matches_kron() {
        let g = Gate::root(Axis::X, RootExponent::root(2), 1, vec![]);
        let v = pauli_root_matrix(Axis::X, RootExponent::root(2));
        let id = Matrix::identity(2);
        let k = crate::algebra::kron(&crate::algebra::kron(&id, &v), &id);
        assert!(gate_unitary(&g, 3).unwrap().approx_eq(&k, EPS));
    }

    #[test]
    fn equivalence_basics() {
        let barenco = parse("qubits 3\nv 2 ctrl +1\ncx 0 1\nvdg 2 ctrl +1\ncx 0 1\nv 2 ctrl +0").unwrap();
        let toffoli = parse("qubits 3\nx 2 ctrl +0 +1").unwrap();
        let cnot = parse("qubits 3\ncx 0 2").unwrap();
        assert!(is_equivalent(&barenco, &toffoli).unwrap());
        assert!(!is_equivalent(&toffoli, &cnot).unwrap());
        let round = barenco.concat(&barenco.dagger()).unwrap();
        assert!(is_equivalent(&round, &Circuit::empty(3)).unwrap());
        assert!(equivalent(&barenco, &Circuit::empty(2)).is_err());
        assert!(circuit_unitary(&Circuit::empty(1)).unwrap().approx_eq(&Matrix::identity(2), 0.0));
    }

    #[test]
    fn too_many_qubits_is_a_resource_error() {
        assert!(matches!(
            circuit_unitary(&Circuit::empty(MAX_QUBITS + 1)),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn truth_tables() {
        let toffoli = parse("qubits 3\nx 2 ctrl +0 +1").unwrap();
        let tt = truth_table(&toffoli).unwrap().unwrap();
        assert_eq!(tt.perm, vec![0, 1, 2, 3, 4, 5, 7, 6]);
        assert!(tt.uniform_phase);
        assert!(truth_table(&parse("qubits 1\nh 0").unwrap()).unwrap().is_none());
    }
}
