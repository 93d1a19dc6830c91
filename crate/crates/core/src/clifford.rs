//! Pauli words, Clifford membership by the normalizer condition, and
//! breadth-first group closure modulo global phase.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{equal_up_to_phase, Axis, Matrix, NamedOp, EPS};
use crate::circuit::{Control, Gate};
use crate::error::{Error, Result};
use crate::semantics::gate_unitary;

/// Default cap on the number of elements a closure may reach.
pub const DEFAULT_MAX_ORDER: usize = 20_000;

const GRID: f64 = 1e6;

fn qubits_of(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "dimension {dim} is not a power of two"
        )));
    }
    Ok(dim.trailing_zeros() as usize)
}

fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `i^phase` times a tensor product of identities and Pauli matrices, with
/// `labels[0]` acting on qubit 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliWord {
    pub labels: Vec<Option<Axis>>,
    pub phase: u8,
}

impl PauliWord {
    pub fn identity(n: usize) -> PauliWord {
        PauliWord {
            labels: vec![None; n],
            phase: 0,
        }
    }

    /// `σ_a` on `line`, identity elsewhere.
    pub fn single(n: usize, line: usize, a: Axis) -> PauliWord {
        let mut w = PauliWord::identity(n);
        w.labels[line] = Some(a);
        w
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::identity(1);
        for l in &self.labels {
            let f = match l {
                Some(a) => a.pauli(),
                None => Matrix::identity(2),
            };
            m = crate::algebra::kron(&m, &f);
        }
        m.scale(i_pow(self.phase))
    }

    /// Product with phase arithmetic mod 4, using
    /// `σ_a σ_b = δ_ab I + i ε_abc σ_c`.
    pub fn mul(&self, other: &PauliWord) -> Result<PauliWord> {
        if self.n() != other.n() {
            return Err(Error::InvalidArgument("Pauli words of different length".into()));
        }
        let mut phase = self.phase + other.phase;
        let labels = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(x, y)| match (x, y) {
                (None, l) | (l, None) => *l,
                (Some(a), Some(b)) if a == b => None,
                (Some(a), Some(b)) => {
                    let c = a.third(*b).expect("distinct axes");
                    // i ε_abc: +i for cyclic order, -i otherwise.
                    phase += if crate::algebra::levi_civita(*a, *b, c) > 0 { 1 } else { 3 };
                    Some(c)
                }
            })
            .collect();
        Ok(PauliWord {
            labels,
            phase: phase % 4,
        })
    }

    /// Every phased word on `n` qubits.
    pub fn all(n: usize) -> Vec<PauliWord> {
        let mut out = Vec::new();
        for code in 0..4usize.pow(n as u32) {
            let labels = (0..n)
                .map(|j| Axis::from_index(((code >> (2 * (n - 1 - j))) & 3) as i32))
                .collect::<Vec<_>>();
            for phase in 0..4 {
                out.push(PauliWord {
                    labels: labels.clone(),
                    phase,
                });
            }
        }
        out
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["", "i·", "-", "-i·"][self.phase as usize])?;
        for l in &self.labels {
            match l {
                Some(a) => write!(f, "{}", a.letter().to_ascii_uppercase())?,
                None => f.write_str("I")?,
            }
        }
        Ok(())
    }
}

/// Decodes `u` as a phased Pauli word if it is one.
pub fn is_pauli_word(u: &Matrix) -> Result<Option<PauliWord>> {
    let n = qubits_of(u.dim())?;
    // A Pauli word maps |0…0> to a multiple of |x>, where x marks the X and
    // Y positions; the relative sign on |e_j> then separates Z from I and
    // Y from X.
    let Some(x) = (0..u.dim()).find(|&r| u.get(r, 0).norm() > 0.5) else {
        return Ok(None);
    };
    let base = u.get(x, 0);
    let mut labels = Vec::with_capacity(n);
    for j in 0..n {
        let b = 1 << (n - 1 - j);
        let ratio = u.get(x ^ b, b) / base;
        let flip = x & b != 0;
        let z = ratio.re < 0.0;
        labels.push(match (flip, z) {
            (false, false) => None,
            (false, true) => Some(Axis::Z),
            (true, false) => Some(Axis::X),
            (true, true) => Some(Axis::Y),
        });
    }
    let word = PauliWord { labels, phase: 0 };
    let Some(lambda) = equal_up_to_phase(u, &word.matrix(), EPS)? else {
        return Ok(None);
    };
    let phase = (0..4u8).find(|&k| (i_pow(k) - lambda).norm() < EPS);
    Ok(phase.map(|phase| PauliWord { phase, ..word }))
}

/// A generator whose conjugate left the Pauli group.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordWitness {
    /// The generator, e.g. `X0` or `Z1`.
    pub generator: String,
    pub conjugate: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliffordCheck {
    pub is_clifford: bool,
    pub witness: Option<CliffordWitness>,
}

/// Tests `U P U† ∈ P_n` for the generators `X_i`, `Z_i` of the Pauli group.
pub fn is_clifford(u: &Matrix) -> Result<CliffordCheck> {
    let n = qubits_of(u.dim())?;
    if !u.is_unitary(10.0 * EPS) {
        return Err(Error::InvalidArgument("matrix is not unitary".into()));
    }
    let ud = u.adjoint();
    for line in 0..n {
        for a in [Axis::X, Axis::Z] {
            let p = PauliWord::single(n, line, a).matrix();
            let conj = u.mul(&p).mul(&ud);
            if is_pauli_word(&conj)?.is_none() {
                return Ok(CliffordCheck {
                    is_clifford: false,
                    witness: Some(CliffordWitness {
                        generator: format!("{}{line}", a.letter().to_ascii_uppercase()),
                        conjugate: conj,
                    }),
                });
            }
        }
    }
    Ok(CliffordCheck {
        is_clifford: true,
        witness: None,
    })
}

/// Representative of `u` modulo global phase. The pivot is the first entry
/// clearly above half the largest magnitude, so that entries sitting exactly
/// at half never flip the choice through rounding noise.
fn canonical(u: &Matrix) -> Matrix {
    let max = u.entries().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = u
        .entries()
        .iter()
        .find(|z| z.norm() > 0.5 * max + 1e-7)
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    u.scale(pivot.conj() / pivot.norm())
}

fn grid_key(u: &Matrix) -> Vec<i64> {
    u.entries()
        .iter()
        .flat_map(|z| [(z.re * GRID).round() as i64, (z.im * GRID).round() as i64])
        .collect()
}

/// A finite matrix group modulo global phase, with a generating word for
/// every element.
#[derive(Debug, Clone)]
pub struct GroupClosure {
    dim: usize,
    elements: Vec<Matrix>,
    /// `(parent, generator)` that first reached each element; the identity
    /// has none.
    parents: Vec<Option<(usize, usize)>>,
    index: HashMap<Vec<i64>, Vec<usize>>,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    fn find(&self, canon: &Matrix) -> Option<usize> {
        self.index
            .get(&grid_key(canon))?
            .iter()
            .copied()
            .find(|&i| self.elements[i].approx_eq(canon, 1e-6))
    }

    /// Membership modulo global phase.
    pub fn contains(&self, u: &Matrix) -> bool {
        u.dim() == self.dim && self.find(&canonical(u)).is_some()
    }

    /// Generator indices whose product, applied left to right in time
    /// (rightmost matrix first), yields element `i`.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = i;
        while let Some((p, g)) = self.parents[cur] {
            w.push(g);
            cur = p;
        }
        w.reverse();
        w
    }

    pub fn same_set(&self, other: &GroupClosure) -> bool {
        self.dim == other.dim
            && self.order() == other.order()
            && self.elements.iter().all(|e| other.find(e).is_some())
    }

    fn insert(&mut self, canon: Matrix, parent: Option<(usize, usize)>) -> usize {
        let i = self.elements.len();
        self.index.entry(grid_key(&canon)).or_default().push(i);
        self.elements.push(canon);
        self.parents.push(parent);
        i
    }
}

/// Closure of `gens` under multiplication, breadth first from the identity.
pub fn bfs_closure(gens: &[Matrix], max_order: usize) -> Result<GroupClosure> {
    let dim = gens.first().map_or(1, Matrix::dim);
    for g in gens {
        if g.dim() != dim {
            return Err(Error::InvalidArgument("generators differ in dimension".into()));
        }
        if !g.is_unitary(10.0 * EPS) {
            return Err(Error::InvalidArgument("generator is not unitary".into()));
        }
    }
    let gens: Vec<Matrix> = gens.iter().map(canonical).collect();
    let mut group = GroupClosure {
        dim,
        elements: Vec::new(),
        parents: Vec::new(),
        index: HashMap::new(),
    };
    group.insert(Matrix::identity(dim), None);
    let mut head = 0;
    while head < group.order() {
        for (gi, g) in gens.iter().enumerate() {
            let next = canonical(&g.mul(&group.elements[head]));
            if group.find(&next).is_none() {
                if group.order() >= max_order {
                    return Err(Error::Resource(format!(
                        "closure exceeds {max_order} elements (partial order {})",
                        group.order()
                    )));
                }
                group.insert(next, Some((head, gi)));
            }
        }
        head += 1;
    }
    Ok(group)
}

pub fn generators_equivalent(a: &[Matrix], b: &[Matrix], max_order: usize) -> Result<bool> {
    Ok(bfs_closure(a, max_order)?.same_set(&bfs_closure(b, max_order)?))
}

/// Named generator families for the closure checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorSet {
    /// `C(X)`, `S`, `H`.
    Standard,
    /// `C(σ_a)`, `√σ_a`, `ρ_ab`.
    Rooted,
    /// `C(σ_a)`, `√σ_b`, `ρ_ab`.
    Corollary,
    /// `C(σ_a)`, `N_a(π/4)`, `ρ_ab`.
    Negator,
}

impl std::str::FromStr for GeneratorSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<GeneratorSet> {
        match s {
            "standard" => Ok(GeneratorSet::Standard),
            "rooted" => Ok(GeneratorSet::Rooted),
            "corollary" => Ok(GeneratorSet::Corollary),
            "negator" => Ok(GeneratorSet::Negator),
            _ => Err(Error::InvalidArgument(format!("unknown generator set `{s}`"))),
        }
    }
}

/// Generator matrices on `n ∈ {1, 2}` qubits. One-qubit gates are placed on
/// every line and two-qubit gates in both orientations; on one qubit the
/// controlled gate is dropped. `a` and `b` are ignored for the standard set.
pub fn generators(set: GeneratorSet, n: usize, a: Axis, b: Axis) -> Result<Vec<Matrix>> {
    if !(1..=2).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "generator sets are defined on 1 or 2 qubits, not {n}"
        )));
    }
    if set != GeneratorSet::Standard && a == b {
        return Err(Error::InvalidArgument("axes a and b must differ".into()));
    }
    let (ctl, singles) = match set {
        GeneratorSet::Standard => (
            NamedOp::pauli(Axis::X),
            vec![NamedOp::root(Axis::Z, 1, 2), NamedOp::hadamard()],
        ),
        GeneratorSet::Rooted => (
            NamedOp::pauli(a),
            vec![NamedOp::root(a, 1, 2), NamedOp::translation(a, b)],
        ),
        GeneratorSet::Corollary => (
            NamedOp::pauli(a),
            vec![NamedOp::root(b, 1, 2), NamedOp::translation(a, b)],
        ),
        GeneratorSet::Negator => (
            NamedOp::pauli(a),
            vec![
                NamedOp::negator(a, std::f64::consts::FRAC_PI_4),
                NamedOp::translation(a, b),
            ],
        ),
    };
    let mut gates = Vec::new();
    if n == 2 {
        gates.push(Gate::new(ctl, 1, vec![Control::pos(0)]));
        gates.push(Gate::new(ctl, 0, vec![Control::pos(1)]));
    }
    for op in singles {
        for line in 0..n {
            gates.push(Gate::single(op, line));
        }
    }
    gates.iter().map(|g| gate_unitary(g, n)).collect()
}

/// One line of [`clifford_identities_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub name: String,
    pub holds: bool,
    pub max_error: f64,
}

/// `Z = SS`, `X = HSSH`, `Y = SHSSHSSS` and `Y = S X S†` as exact products.
pub fn clifford_identities_check() -> Vec<IdentityResult> {
    let s = NamedOp::root(Axis::Z, 1, 2).matrix();
    let sd = s.adjoint();
    let h = crate::algebra::hadamard();
    let (x, y, z) = (Axis::X.pauli(), Axis::Y.pauli(), Axis::Z.pauli());
    let cases: [(&str, Matrix, Vec<&Matrix>); 4] = [
        ("Z = SS", z, vec![&s, &s]),
        ("X = HSSH", x.clone(), vec![&h, &s, &s, &h]),
        ("Y = SHSSHSSS", y.clone(), vec![&s, &h, &s, &s, &h, &s, &s, &s]),
        ("Y = SXS†", y, vec![&s, &x, &sd]),
    ];
    cases
        .into_iter()
        .map(|(name, expect, factors)| {
            let got = Matrix::product(factors);
            let max_error = got.max_abs_diff(&expect);
            IdentityResult {
                name: name.to_string(),
                holds: max_error <= EPS,
                max_error,
            }
        })
        .collect()
}
