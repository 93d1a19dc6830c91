//! End-to-end acceptance checks. Each criterion prints one line and the
//! test fails if any of them does.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pauli_forge::clifford::{bfs_closure, generators, GeneratorSet, DEFAULT_MAX_ORDER};
use pauli_forge::identities::{algebra_suite, negator_check};
use pauli_forge::passes::{
    builtin, derive_amy_toffoli, derive_full_adder, toffoli_family, translate_library,
    ToffoliFamilyParams,
};
use pauli_forge::rules::check_soundness;
use pauli_forge::semantics::{circuit_unitary, equivalent, truth_table};
use pauli_forge::text::{parse, print};
use pauli_forge::{Axis, Circuit, Control, Gate, NamedOp, RuleId};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn toffoli() -> Circuit {
    parse("qubits 3\nx 2 ctrl +0 +1\n").unwrap()
}

fn equiv(a: &Circuit, b: &Circuit) -> bool {
    matches!(equivalent(a, b), Ok(Some(_)))
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    let e = t.elapsed();
    if e < limit {
        Ok(())
    } else {
        Err(format!("took {e:?}, limit {limit:?}"))
    }
}

fn ncv_toffoli_golden() -> Verdict {
    let t = Instant::now();
    let ok = equiv(&builtin("barenco-toffoli").unwrap(), &toffoli());
    within(t, Duration::from_secs(1))?;
    ok.then(|| format!("equivalent in {:?}", t.elapsed()))
        .ok_or_else(|| "not equivalent to a Toffoli".into())
}

fn t_depth_toffoli_golden() -> Verdict {
    let c = builtin("amy-toffoli").unwrap();
    let s = c.stats().map_err(|e| e.to_string())?;
    let msg = format!("depth={} t_depth={}", s.depth, s.t_depth);
    if !equiv(&c, &toffoli()) {
        return Err(format!("not Toffoli-equivalent; {msg}"));
    }
    if s.depth == 10 && s.t_depth == 3 {
        Ok(msg)
    } else {
        Err(format!("{msg}, expected depth=10 t_depth=3"))
    }
}

fn toffoli_replay() -> Verdict {
    let run = derive_amy_toffoli()
        .and_then(|s| s.execute())
        .map_err(|e| e.to_string())?;
    let first = &run.circuits[0];
    if !equiv(first, &toffoli()) {
        return Err("initial circuit is not a Toffoli".into());
    }
    if let Some(i) = run.circuits.iter().position(|c| !equiv(c, first)) {
        return Err(format!("intermediate {i} differs"));
    }
    let want = print(&builtin("amy-toffoli").unwrap(), true);
    if print(run.final_circuit(), true) != want {
        return Err("final text differs from the builtin".into());
    }
    Ok(format!("{} steps", run.circuits.len() - 1))
}

/// Control function of each assignment as listed in the published table.
fn tabulated(p: ToffoliFamilyParams) -> fn(bool, bool) -> bool {
    let ToffoliFamilyParams { a, b, c } = p;
    if a == b && b == c {
        |x1, x2| x1 || x2
    } else if c == a {
        |x1, x2| x1 && x2
    } else if b == a {
        |x1, x2| x1 && !x2
    } else {
        |x1, x2| !x1 && x2
    }
}

fn toffoli_family_table() -> Verdict {
    let mut bad = Vec::new();
    for p in ToffoliFamilyParams::all() {
        let c = toffoli_family(p);
        let tt = truth_table(&c)
            .map_err(|e| e.to_string())?
            .ok_or("circuit is not classical")?;
        let f = tabulated(p);
        let matches = (0..8).all(|x| {
            let bit = |l: usize| (x >> (2 - l)) & 1 == 1;
            tt.perm[x] == x ^ usize::from(f(bit(0), bit(1)))
        });
        if !matches {
            bad.push(format!("({},{},{})", p.a as u8, p.b as u8, p.c as u8));
        }
        if p.a == p.c && p.b != p.a {
            let s = c.stats().map_err(|e| e.to_string())?;
            if !equiv(&c, &toffoli()) || s.depth != 10 || s.t_depth != 3 {
                bad.push(format!("Toffoli row depth={} t_depth={}", s.depth, s.t_depth));
            }
        }
    }
    if bad.is_empty() {
        Ok("8 assignments".into())
    } else {
        Err(format!("mismatch for {}", bad.join(", ")))
    }
}

fn full_adder() -> Verdict {
    let run = derive_full_adder()
        .and_then(|s| s.execute())
        .map_err(|e| e.to_string())?;
    let fin = run.final_circuit();
    if !equiv(fin, &builtin("peres-pair-adder").unwrap()) {
        return Err("not equivalent to the Peres pair".into());
    }
    let s = fin.stats().map_err(|e| e.to_string())?;
    if s.t_depth == 2 {
        Ok(format!("t_depth=2 depth={} t_count={}", s.depth, s.t_count))
    } else {
        Err(format!("t_depth={}", s.t_depth))
    }
}

fn w_translation() -> Verdict {
    let src = builtin("full-adder-final").unwrap();
    let w = translate_library(&src, Axis::X).map_err(|e| e.to_string())?;
    if !equiv(&w, &src) {
        return Err("translation changed the unitary".into());
    }
    let allowed = |g: &Gate| {
        g.is_controlled()
            || match g.op {
                NamedOp::Translation { .. } => true,
                NamedOp::PauliRoot { axis, exp } => axis == Axis::X && [1, 2, 4].contains(&exp.denom()),
                NamedOp::Negator { .. } => false,
            }
    };
    match w.gates().iter().position(|g| !allowed(g)) {
        None => Ok(format!("{} gates", w.gates().len())),
        Some(i) => Err(format!("gate {i} is outside the W library")),
    }
}

fn rule_soundness() -> Verdict {
    let t = Instant::now();
    let failing: Vec<&str> = RuleId::ALL
        .iter()
        .map(|&r| check_soundness(r, 200, 0))
        .filter(|r| !r.passed())
        .map(|r| r.rule.name())
        .collect();
    within(t, Duration::from_secs(60))?;
    if failing.is_empty() {
        Ok(format!("{} rules in {:?}", RuleId::ALL.len(), t.elapsed()))
    } else {
        Err(format!("counterexamples for {}", failing.join(", ")))
    }
}

fn algebra() -> Verdict {
    let suite = algebra_suite();
    let bad: Vec<String> = suite
        .iter()
        .filter(|r| !r.holds)
        .map(|r| format!("{} ({:e})", r.name, r.max_error))
        .collect();
    let worst = suite.iter().map(|r| r.max_error).fold(0.0, f64::max);
    if bad.is_empty() {
        Ok(format!("{} families, max error {worst:.1e}", suite.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn closure(set: GeneratorSet, n: usize, a: Axis, b: Axis) -> Result<pauli_forge::clifford::GroupClosure, String> {
    let g = generators(set, n, a, b).map_err(|e| e.to_string())?;
    bfs_closure(&g, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())
}

fn clifford_closures() -> Verdict {
    let t = Instant::now();
    let sh = closure(GeneratorSet::Standard, 1, Axis::X, Axis::Z)?;
    let vh: Vec<_> = [NamedOp::root(Axis::X, 1, 2), NamedOp::hadamard()]
        .into_iter()
        .map(|op| circuit_unitary(&Circuit::new(1, vec![Gate::single(op, 0)]).unwrap()).unwrap())
        .collect();
    let vh = bfs_closure(&vh, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
    let mut one = vec![("{S,H}".to_string(), sh.clone()), ("{V,H}".to_string(), vh)];
    for a in Axis::ALL {
        for b in Axis::ALL.into_iter().filter(|&b| b != a) {
            for set in [GeneratorSet::Rooted, GeneratorSet::Corollary] {
                one.push((format!("{set:?}({a:?},{b:?})"), closure(set, 1, a, b)?));
            }
        }
    }
    for (name, g) in &one {
        if g.order() != 24 || !g.same_set(&sh) {
            return Err(format!("{name} has order {}", g.order()));
        }
    }
    let std2 = closure(GeneratorSet::Standard, 2, Axis::X, Axis::Z)?;
    let rooted2 = closure(GeneratorSet::Rooted, 2, Axis::X, Axis::Z)?;
    if std2.order() != 11520 || rooted2.order() != 11520 || !std2.same_set(&rooted2) {
        return Err(format!("two-qubit orders {} and {}", std2.order(), rooted2.order()));
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{} one-qubit sets of 24, two-qubit 11520, {:?}", one.len(), t.elapsed()))
}

fn negator() -> Verdict {
    let thetas: Vec<f64> = (0..100).map(|i| -PI + (f64::from(i) + 0.5) * 2.0 * PI / 100.0).collect();
    let r = negator_check(&thetas);
    if !r.holds {
        return Err(format!("max error {:e}", r.max_error));
    }
    let std1 = closure(GeneratorSet::Standard, 1, Axis::X, Axis::Z)?;
    for a in Axis::ALL {
        for b in Axis::ALL.into_iter().filter(|&b| b != a) {
            let g = closure(GeneratorSet::Negator, 1, a, b)?;
            if !g.same_set(&std1) {
                return Err(format!("negator set ({a:?},{b:?}) has order {}", g.order()));
            }
        }
    }
    Ok(format!("{} samples, max error {:.1e}", r.cases, r.max_error))
}

fn random_circuit(rng: &mut ChaCha8Rng) -> Circuit {
    let n = rng.gen_range(1..6);
    let axis = |rng: &mut ChaCha8Rng| Axis::ALL[rng.gen_range(0..3)];
    let gates = (0..rng.gen_range(0..12))
        .map(|_| {
            let op = match rng.gen_range(0..3) {
                0 => NamedOp::root(axis(rng), rng.gen_range(-9..10), rng.gen_range(1..9)),
                1 => NamedOp::translation(axis(rng), axis(rng)),
                _ => NamedOp::negator(axis(rng), rng.gen_range(-3.2..3.2)),
            };
            let target = rng.gen_range(0..n);
            let mut controls = Vec::new();
            for l in (0..n).filter(|&l| l != target) {
                if rng.gen_bool(0.3) {
                    controls.push(if rng.gen() { Control::pos(l) } else { Control::neg(l) });
                }
            }
            Gate::new(op, target, controls)
        })
        .collect();
    Circuit::new(n, gates).unwrap()
}

fn parser() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let c = random_circuit(&mut rng);
        for sugar in [false, true] {
            let text = print(&c, sugar);
            match parse(&text) {
                Ok(back) if back == c => {}
                _ => return Err(format!("circuit {i} does not round trip:\n{text}")),
            }
        }
    }
    let bad = [
        "", "x 0", "qubits 0", "qubits 2\nfoo 0", "qubits 2\nroot z 1/0 0", "qubits 2\nroot q 1/2 0",
        "qubits 2\nroot z 1/2", "qubits 2\nx 2", "qubits 2\ncx 1 1", "qubits 3\nx 0 ctrl +1 -1",
        "qubits 2\nx 0 +1", "qubits 2\nneg x nan 0", "qubits 2\nqubits 2",
    ];
    for text in bad {
        let e = match parse(text) {
            Ok(_) => return Err(format!("{text:?} parsed")),
            Err(e) => e,
        };
        let lines = text.split('\n').count();
        if e.span.line == 0 || e.span.line > lines || e.span.start == 0 || e.span.end < e.span.start {
            return Err(format!("{text:?} has span {:?}", e.span));
        }
    }
    Ok(format!("1000 round trips, {} error cases with spans", bad.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("barenco toffoli golden", ncv_toffoli_golden),
        ("amy toffoli golden", t_depth_toffoli_golden),
        ("toffoli derivation replay", toffoli_replay),
        ("toffoli family table", toffoli_family_table),
        ("full adder t-depth", full_adder),
        ("W translation", w_translation),
        ("rule soundness", rule_soundness),
        ("algebra suite", algebra),
        ("clifford closures", clifford_closures),
        ("negator", negator),
        ("parser", parser),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(msg) => println!("PASS {name}: {msg}"),
            Err(msg) => {
                println!("FAIL {name}: {msg}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {}", failed.join(", "));
}
