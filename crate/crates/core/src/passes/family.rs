//! The parametrized three-line family `x3 ⊕ f(x1, x2)` whose T gates point
//! in directions chosen by three bits.

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};

/// `true` selects the adjoint of the gate at that position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ToffoliFamilyParams {
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

impl ToffoliFamilyParams {
    pub fn new(a: bool, b: bool, c: bool) -> Self {
        ToffoliFamilyParams { a, b, c }
    }

    /// All eight assignments, `(0,0,0)` first.
    pub fn all() -> impl Iterator<Item = ToffoliFamilyParams> {
        (0..8u8).map(|m| ToffoliFamilyParams::new(m & 4 != 0, m & 2 != 0, m & 1 != 0))
    }

    /// The control function realized on the target line, with `x1` on
    /// line 0. The net rotation on the target is `a·x2 + b·(x1⊕x2) + c·x1`
    /// quarter turns with signs from the bits, so `b = a ≠ c` fires only on
    /// `x1 = 0, x2 = 1`.
    pub fn function(self) -> fn(bool, bool) -> bool {
        let ToffoliFamilyParams { a, b, c } = self;
        if a == b && b == c {
            |x1, x2| x1 || x2
        } else if c == a {
            |x1, x2| x1 && x2
        } else if b == a {
            |x1, x2| !x1 && x2
        } else {
            |x1, x2| x1 && !x2
        }
    }
}

fn t(adjoint: bool, line: usize) -> Gate {
    Gate::t_power(if adjoint { -1 } else { 1 }, line)
}

pub fn toffoli_family(p: ToffoliFamilyParams) -> Circuit {
    let ToffoliFamilyParams { a, b, c } = p;
    let mut g = vec![
        Gate::h(2),
        Gate::cx(1, 2),
        t(c, 0),
        t(a, 1),
        t(!a, 2),
        Gate::cx(0, 2),
        Gate::cx(0, 1),
        t(!b, 2),
        Gate::cx(1, 2),
    ];
    // T^a T^b on the target: S, S† or nothing.
    if a == b {
        g.push(Gate::t_power(if a { -2 } else { 2 }, 2));
    }
    g.extend([
        Gate::cx(2, 0),
        t(!c, 0),
        t(b, 1),
        t(c, 2),
        Gate::cx(2, 0),
        Gate::cx(0, 1),
        Gate::h(2),
    ]);
    Circuit::new(3, g).expect("three-line family")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{is_equivalent, truth_table};
    use crate::text::parse;

    #[test]
    fn truth_tables_match_the_control_function() {
        for p in ToffoliFamilyParams::all() {
            let tt = truth_table(&toffoli_family(p)).unwrap().expect("classical");
            let f = p.function();
            for x in 0..8 {
                let bit = |l: usize| (x >> (2 - l)) & 1 == 1;
                let want = x ^ usize::from(f(bit(0), bit(1)));
                assert_eq!(tt.perm[x], want, "{p:?} on input {x:03b}");
            }
        }
    }

    #[test]
    fn toffoli_rows_have_depth_ten_and_t_depth_three() {
        let toffoli = parse("qubits 3\nx 2 ctrl +0 +1").unwrap();
        for p in [ToffoliFamilyParams::new(false, true, false), ToffoliFamilyParams::new(true, false, true)] {
            let c = toffoli_family(p);
            assert!(is_equivalent(&c, &toffoli).unwrap());
            let s = c.stats().unwrap();
            assert_eq!((s.depth, s.t_depth, s.t_count), (10, 3, 7));
        }
    }

    #[test]
    fn all_equal_is_or() {
        let f = ToffoliFamilyParams::new(false, false, false).function();
        assert!(f(true, false) && f(false, true) && !f(false, false));
    }
}
