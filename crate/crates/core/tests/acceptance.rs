//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Run alone with `cargo test -p qtruth-core --test acceptance`.

mod common;

use std::time::Instant;

use proptest::test_runner::{Config, TestCaseError, TestRunner};

use qtruth_core::formula::{equivalent2, eval2, find_valuations, parse, Valuation2};
use qtruth_core::hilbert::{commutator_norm, pauli_eigenprojectors, Axis};
use qtruth_core::scenario::{
    copenhagen_walkthrough, detector_projectors, ExperimentConfig, CONDITIONALS, CONDITIONALS_TRUE,
    LEFT_PROHIBITION, NEGATED_CONDITIONALS_FALSE, PHILO_FORM_TRUE,
};
use qtruth_core::semantics::{
    phase_truth, ql_classify, ql_copy, sentence_identity, tarski_copy, CopyResult, PhaseSpaceModel,
    QlClass,
};
use qtruth_core::trivalent::{eval3, identity_value, TruthValue3, Valuation3, VALUES3};
use qtruth_core::{Formula, Lattice, Projector, Tolerance, TruthValue2};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(text: &str) -> Formula {
    parse(text).expect("criterion formula parses")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn frob(m: &nalgebra::DMatrix<num_complex::Complex64>) -> f64 {
    m.norm()
}

fn commutation_table() -> Outcome {
    let a = detector_projectors();
    let get = |n: &str| a.get(n).unwrap().matrix().clone();
    let zero_l = frob(&(get("D1L") * get("D2L")));
    let zero_r = frob(&(get("D2R") * get("D3R")));
    ensure(zero_l <= 1e-12, format!("|P_D1L P_D2L|_F = {zero_l:e}"))?;
    ensure(zero_r <= 1e-12, format!("|P_D2R P_D3R|_F = {zero_r:e}"))?;
    // hand expansion: [P_z+, P_x±] = ±(1/2)[[0, 1], [-1, 0]], Frobenius norm 1/sqrt(2)
    let oracle = std::f64::consts::FRAC_1_SQRT_2;
    let mut shown = Vec::new();
    for m in ["D2R", "D3R"] {
        let c = commutator_norm(a.get("D1R").unwrap(), a.get(m).unwrap());
        ensure(c > 0.1, format!("|[P_D1R, P_{m}]|_F = {c}"))?;
        ensure(
            (c - oracle).abs() <= 1e-12,
            format!("|[P_D1R, P_{m}]|_F = {c}, hand value {oracle}"),
        )?;
        shown.push(format!("|[D1R,{m}]|_F = {c:.6}"));
    }
    Ok(format!(
        "products {zero_l:.1e}, {zero_r:.1e}; {}",
        shown.join(", ")
    ))
}

fn t_sentences() -> Outcome {
    let a = detector_projectors();
    let lat = Lattice::default();
    let t1 = tarski_copy(&p("D1R | (D2R | D3R)"), &a, &lat).map_err(|e| e.to_string())?;
    let d1 = t1.projector().map(|q| q.distance(&Projector::identity(2)));
    ensure(
        matches!(d1, Some(d) if d <= 1e-9),
        format!("T1 copy {t1:?}"),
    )?;
    let t3 = tarski_copy(&p("D2R & D3R"), &a, &lat).map_err(|e| e.to_string())?;
    let d3 = t3.projector().map(|q| q.distance(&Projector::zero(2)));
    ensure(
        matches!(d3, Some(d) if d <= 1e-9),
        format!("T3 copy {t3:?}"),
    )?;
    for m in ["D2R", "D3R"] {
        let t2 = tarski_copy(&p(&format!("D1R & {m}")), &a, &lat).map_err(|e| e.to_string())?;
        ensure(t2 == CopyResult::Gap, format!("T2 for {m} gave {t2:?}"))?;
    }
    Ok(format!(
        "T1 = I ({:.1e}), T2 = GAP for m = 2, 3, T3 = 0 ({:.1e})",
        d1.unwrap(),
        d3.unwrap()
    ))
}

fn closing_identities() -> Outcome {
    let a = detector_projectors();
    let lat = Lattice::default();
    let max = p("D1R | (D2R | D3R)");
    let x =
        sentence_identity(&max, &p("D1R | (D2R & D3R)"), &a, &lat).map_err(|e| e.to_string())?;
    ensure(x == TruthValue3::F, format!("first identity = {x}"))?;
    for (m, k) in [("D2R", "D3R"), ("D3R", "D2R")] {
        let rhs = p(&format!("(D1R & {m}) & {k}"));
        let y = sentence_identity(&max, &rhs, &a, &lat).map_err(|e| e.to_string())?;
        ensure(
            y == TruthValue3::U,
            format!("second identity (m = {m}) = {y}"),
        )?;
    }
    Ok("f and u".into())
}

fn quantum_logic() -> Outcome {
    let a = detector_projectors();
    let lat = Lattice::default();
    let e = |e: qtruth_core::Error| e.to_string();
    let q = ql_copy(&p(CONDITIONALS), &a, &lat).map_err(e)?;
    let dq = q.distance(&Projector::identity(2));
    ensure(
        dq <= 1e-9,
        format!("conditionals copy at distance {dq:e} from I"),
    )?;
    let left = ql_classify(&p(LEFT_PROHIBITION), &a, &lat).map_err(e)?;
    ensure(
        left == QlClass::Tautology,
        format!("!(D1L & D2L) is {left}"),
    )?;
    let both = p("D1L & D1R");
    let class = ql_classify(&both, &a, &lat).map_err(e)?;
    ensure(
        class == QlClass::Contingent,
        format!("D1L & D1R is {class}"),
    )?;
    let (zp, _) = pauli_eigenprojectors(Axis::Z);
    let dz = ql_copy(&both, &a, &lat).map_err(e)?.distance(&zp);
    ensure(
        dz <= 1e-9,
        format!("D1L & D1R copy at distance {dz:e} from P_z+"),
    )?;
    Ok(format!("conditionals = I ({dq:.1e}); left prohibition TAUTOLOGY; D1L & D1R CONTINGENT, copy P_z+ ({dz:.1e})"))
}

fn nondistributivity() -> Outcome {
    let (zp, _) = pauli_eigenprojectors(Axis::Z);
    let (xp, xm) = pauli_eigenprojectors(Axis::X);
    let w = Lattice::default()
        .distributivity_witness(&zp, &xp, &xm)
        .map_err(|e| e.to_string())?;
    let (dl, dr) = (w.lhs.distance(&zp), w.rhs.distance(&Projector::zero(2)));
    ensure(dl <= 1e-9, format!("lhs at distance {dl:e} from P_z+"))?;
    ensure(dr <= 1e-9, format!("rhs at distance {dr:e} from 0"))?;
    ensure(!w.distributive, "reported distributive")?;
    Ok(format!(
        "lhs = P_z+ ({dl:.1e}), rhs = 0 ({dr:.1e}), distributive = false"
    ))
}

fn classical_chain() -> Outcome {
    let e = |e: qtruth_core::Error| e.to_string();
    let (eq4, eq5, eq7) = (
        p(NEGATED_CONDITIONALS_FALSE),
        p(CONDITIONALS_TRUE),
        p(PHILO_FORM_TRUE),
    );
    ensure(
        equivalent2(&eq4, &eq5).map_err(e)?,
        "negated conditionals step not equivalent",
    )?;
    ensure(
        equivalent2(&eq5, &eq7).map_err(e)?,
        "Philo step not equivalent",
    )?;
    // independent row-by-row oracle over the 2^5 valuations
    let atoms = ["D1L", "D2L", "D1R", "D2R", "D3R"];
    for row in 0u32..32 {
        let v: Valuation2 = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (*a, TruthValue2::from(row >> i & 1 == 1)))
            .collect();
        let (x, y, z) = (
            eval2(&eq4, &v).map_err(e)?,
            eval2(&eq5, &v).map_err(e)?,
            eval2(&eq7, &v).map_err(e)?,
        );
        ensure(x == y && y == z, format!("rows disagree at {row:05b}"))?;
    }
    let found = find_valuations(&[eq5, p(LEFT_PROHIBITION)], &p("D2R & D3R")).map_err(e)?;
    ensure(!found.is_empty(), "no valuation makes D2R & D3R true")?;
    for v in &found {
        ensure(
            eval2(&p("D2R & D3R"), v).map_err(e)?.as_bool(),
            "exhibit does not satisfy D2R & D3R",
        )?;
    }
    Ok(format!(
        "both steps hold on all 32 rows; {} valuations exhibit D2R & D3R",
        found.len()
    ))
}

fn three_valued() -> Outcome {
    use TruthValue3::U;
    let e = |e: qtruth_core::Error| e.to_string();
    let mut count = 0;
    for x in VALUES3 {
        if x == U {
            ensure(x.negate() == U, "!u is not u")?;
        }
        for y in VALUES3 {
            if x == U || y == U {
                for (name, got) in [
                    ("&", x.and(y)),
                    ("|", x.or(y)),
                    ("->", x.implies(y)),
                    ("<->", x.iff(y)),
                    ("=", identity_value(x, y)),
                ] {
                    ensure(got == U, format!("{x} {name} {y} = {got}"))?;
                    count += 1;
                }
            }
        }
    }
    // the same through the evaluator, with a gappy operand and arbitrary S
    for s in VALUES3 {
        let v = Valuation3::new().with("D", U).with("S", s);
        for text in ["!D", "D & S", "D | S", "D = S", "S -> D", "D <-> S"] {
            let got = eval3(&p(text), &v).map_err(e)?;
            ensure(got == U, format!("{text} with D = u, S = {s} gives {got}"))?;
            count += 1;
        }
    }
    let mut runner = TestRunner::new(Config {
        cases: 1024,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (arb_formula(&["A", "B", "C"], 4), 0u8..8);
    runner
        .run(&strategy, |(f, bits)| {
            let v2: Valuation2 = ["A", "B", "C"]
                .iter()
                .enumerate()
                .map(|(i, a)| (*a, TruthValue2::from(bits >> i & 1 == 1)))
                .collect();
            let v3: Valuation3 = v2.iter().map(|(a, b)| (a, TruthValue3::from(b))).collect();
            let (x, y) = (eval3(&f, &v3).unwrap(), eval2(&f, &v2).unwrap());
            if x == TruthValue3::from(y) {
                Ok(())
            } else {
                Err(TestCaseError::fail(format!(
                    "{f}: trivalent {x}, classical {y}"
                )))
            }
        })
        .map_err(|err| err.to_string())?;
    Ok(format!(
        "{count} gap cases absorb; 1024 generated formulas agree with classical on t/f"
    ))
}

fn copenhagen() -> Outcome {
    let r = copenhagen_walkthrough(&ExperimentConfig::default()).map_err(|e| e.to_string())?;
    if let Some(bad) = r.failures().next() {
        return Err(format!(
            "{}: expected {}, computed {}",
            bad.label, bad.expected, bad.computed
        ));
    }
    let excluded: Vec<_> = r
        .checks
        .iter()
        .filter(|c| c.label.contains(" excluded at "))
        .collect();
    // three right-side conjunctions at each of the four collapsed states
    ensure(
        excluded.len() == 12,
        format!("{} conjunction checks, expected 12", excluded.len()),
    )?;
    ensure(
        excluded.iter().all(|c| c.computed == "FALSE"),
        "a conjunction is not FALSE",
    )?;
    Ok(format!(
        "{} checks pass; D1R & Dm R and D2R & D3R FALSE at all 4 collapsed states",
        r.checks.len()
    ))
}

fn lattice_laws() -> Outcome {
    let lat = Lattice::new(Tolerance::default());
    let e = |e: qtruth_core::Error| e.to_string();
    const LAW: f64 = 1e-8;
    const COMMUTING: f64 = 1e-9;
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    for n in 2..=6 {
        let mut r = rng(900 + n as u64);
        for i in 0..200 {
            let (a, b) = if i % 2 == 0 {
                random_overlapping_pair(&mut r, n)
            } else {
                (random_projector(&mut r, n), random_projector(&mut r, n))
            };
            let c = random_projector(&mut r, n);
            let (ab, ba) = (lat.meet(&a, &b).map_err(e)?, lat.meet(&b, &a).map_err(e)?);
            let (jab, jba) = (lat.join(&a, &b).map_err(e)?, lat.join(&b, &a).map_err(e)?);
            let laws = [
                ("meet commutativity", ab.distance(&ba)),
                ("join commutativity", jab.distance(&jba)),
                (
                    "meet idempotence",
                    lat.meet(&a, &a).map_err(e)?.distance(&a),
                ),
                (
                    "join idempotence",
                    lat.join(&a, &a).map_err(e)?.distance(&a),
                ),
                (
                    "absorption a & (a | b)",
                    lat.meet(&a, &jab).map_err(e)?.distance(&a),
                ),
                (
                    "absorption a | (a & b)",
                    lat.join(&a, &ab).map_err(e)?.distance(&a),
                ),
                (
                    "De Morgan !(a & b)",
                    ab.ortho()
                        .distance(&lat.join(&a.ortho(), &b.ortho()).map_err(e)?),
                ),
                (
                    "De Morgan !(a | b)",
                    jab.ortho()
                        .distance(&lat.meet(&a.ortho(), &b.ortho()).map_err(e)?),
                ),
                (
                    "meet associativity",
                    lat.meet(&ab, &c)
                        .map_err(e)?
                        .distance(&lat.meet(&a, &lat.meet(&b, &c).map_err(e)?).map_err(e)?),
                ),
                (
                    "join associativity",
                    lat.join(&jab, &c)
                        .map_err(e)?
                        .distance(&lat.join(&a, &lat.join(&b, &c).map_err(e)?).map_err(e)?),
                ),
            ];
            for (name, d) in laws {
                ensure(
                    d <= LAW,
                    format!("{name} off by {d:e} in dimension {n}, case {i}"),
                )?;
                worst = worst.max(d);
                cases += 1;
            }

            let (inner, outer) = random_nested_pair(&mut r, n);
            let rebuilt = lat
                .join(&inner, &lat.meet(&outer, &inner.ortho()).map_err(e)?)
                .map_err(e)?;
            let d = rebuilt.distance(&outer);
            ensure(
                d <= LAW,
                format!("orthomodular law off by {d:e} in dimension {n}, case {i}"),
            )?;
            worst = worst.max(d);

            let (pc, qc) = random_commuting_pair(&mut r, n);
            let prod = pc.matrix() * qc.matrix();
            let dm = (lat.meet(&pc, &qc).map_err(e)?.matrix() - &prod).norm();
            let dj = (lat.join(&pc, &qc).map_err(e)?.matrix()
                - (pc.matrix() + qc.matrix() - &prod))
                .norm();
            ensure(
                dm <= COMMUTING,
                format!("commuting meet off PQ by {dm:e} in dimension {n}"),
            )?;
            ensure(
                dj <= COMMUTING,
                format!("commuting join off P+Q-PQ by {dj:e} in dimension {n}"),
            )?;
            cases += 3;
        }
    }
    Ok(format!(
        "{cases} law instances over dims 2-6, worst deviation {worst:.1e}"
    ))
}

fn phase_space() -> Outcome {
    let e = |e: qtruth_core::Error| e.to_string();
    let mut r = rng(2024);
    let mut evaluations = 0usize;
    use rand::Rng;
    for model in 0..100 {
        let npoints = r.random_range(1..=10);
        let natoms = r.random_range(1..=5);
        let points: Vec<String> = (0..npoints).map(|i| format!("q{i}")).collect();
        let atoms: Vec<String> = (0..natoms).map(|i| format!("S{i}")).collect();
        let mut m = PhaseSpaceModel::new(points.clone()).map_err(e)?;
        for atom in &atoms {
            let subset: Vec<String> = points
                .iter()
                .filter(|_| r.random_bool(0.5))
                .cloned()
                .collect();
            m.insert(atom.clone(), subset).map_err(e)?;
        }
        for _ in 0..20 {
            let f = random_formula(&mut r, &atoms, 4);
            for q in &points {
                let v: Valuation2 = atoms
                    .iter()
                    .map(|a| {
                        (
                            a.as_str(),
                            TruthValue2::from(m.subset(a).unwrap().contains(q)),
                        )
                    })
                    .collect();
                let (x, y) = (
                    phase_truth(&f, &m, q).map_err(e)?,
                    eval2(&f, &v).map_err(e)?,
                );
                ensure(
                    x == y,
                    format!("model {model}, {f} at {q}: phase {x}, classical {y}"),
                )?;
                evaluations += 1;
            }
        }
    }
    Ok(format!(
        "{evaluations} point evaluations over 100 models agree exactly"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("commutation table", commutation_table),
        ("T-sentences T1 T2 T3", t_sentences),
        ("closing identities f, u", closing_identities),
        ("quantum-logic resolution", quantum_logic),
        ("nondistributivity witness", nondistributivity),
        ("classical paradox chain", classical_chain),
        ("three-valued tables", three_valued),
        ("Copenhagen walkthrough", copenhagen),
        ("lattice law suite", lattice_laws),
        ("phase-space semantics", phase_space),
    ];
    let start = Instant::now();
    let mut failed = 0;
    println!("\nacceptance criteria");
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
