//! Named reference circuits, stored as `.prc` text.

use crate::circuit::Circuit;
use crate::text::parse;

const BARENCO_TOFFOLI: &str = "\
qubits 3
v 2 ctrl +1
cx 0 1
vdg 2 ctrl +1
cx 0 1
v 2 ctrl +0
";

const AMY_TOFFOLI: &str = "\
qubits 3
h 2
t 0
t 1
t 2
cx 1 0
cx 2 1
cx 0 2
tdg 1
cx 0 1
tdg 0
tdg 1
t 2
cx 2 1
cx 0 2
cx 1 0
h 2
";

// Two Peres gates; line 3 receives the carry-out, lines 1 and 2 the two
// intermediate sums.
const PERES_PAIR_ADDER: &str = "\
qubits 4
x 3 ctrl +0 +1
cx 0 1
x 3 ctrl +1 +2
cx 1 2
";

const FULL_ADDER_FINAL: &str = "\
qubits 4
h 3
cx 2 3
t 0
t 1
t 2
tdg 3
cx 0 1
cx 2 3
cx 3 0
cx 1 2
cx 0 1
cx 2 3
tdg 0
tdg 1
tdg 2
t 3
cx 0 1
cx 2 3
s 3
cx 3 0
h 3
";

const W_ADDER: &str = "\
qubits 4
h 0
h 1
h 2
cx 3 2
w 0
w 1
w 2
wdg 3
cx 1 0
cx 3 2
cx 0 3
cx 2 1
cx 1 0
cx 3 2
wdg 0
wdg 1
wdg 2
w 3
cx 1 0
cx 3 2
v 3
cx 0 3
h 0
h 1
h 2
";

/// Names accepted by [`builtin`] and [`builtin_text`].
pub const BUILTIN_NAMES: [&str; 5] = [
    "barenco-toffoli",
    "amy-toffoli",
    "peres-pair-adder",
    "full-adder-final",
    "w-adder",
];

pub fn builtin_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "barenco-toffoli" => BARENCO_TOFFOLI,
        "amy-toffoli" => AMY_TOFFOLI,
        "peres-pair-adder" => PERES_PAIR_ADDER,
        "full-adder-final" => FULL_ADDER_FINAL,
        "w-adder" => W_ADDER,
        _ => return None,
    })
}

pub fn builtin(name: &str) -> Option<Circuit> {
    builtin_text(name).map(|t| parse(t).expect("builtin circuits parse"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::is_equivalent;
    use crate::text::print;

    fn toffoli() -> Circuit {
        parse("qubits 3\nx 2 ctrl +0 +1").unwrap()
    }

    #[test]
    fn all_builtins_parse_and_print_canonically() {
        for name in BUILTIN_NAMES {
            let c = builtin(name).unwrap();
            assert!(c.is_valid());
            assert_eq!(print(&c, true), builtin_text(name).unwrap(), "{name}");
        }
        assert!(builtin("nope").is_none());
    }

    #[test]
    fn toffoli_realizations() {
        assert!(is_equivalent(&builtin("barenco-toffoli").unwrap(), &toffoli()).unwrap());
        assert!(is_equivalent(&builtin("amy-toffoli").unwrap(), &toffoli()).unwrap());
    }

    #[test]
    fn adders_agree() {
        let peres = builtin("peres-pair-adder").unwrap();
        assert!(is_equivalent(&builtin("full-adder-final").unwrap(), &peres).unwrap());
        assert!(is_equivalent(&builtin("w-adder").unwrap(), &peres).unwrap());
    }

    #[test]
    fn amy_toffoli_metrics() {
        let s = builtin("amy-toffoli").unwrap().stats().unwrap();
        assert_eq!(s.t_depth, 3);
        assert_eq!(s.t_count, 7);
        assert_eq!(s.gate_count, 16);
        // The line-occupancy critical path of this layout is 9.
        assert_eq!(s.depth, 9);
        let s = builtin("full-adder-final").unwrap().stats().unwrap();
        assert_eq!(s.t_depth, 2);
    }
}
