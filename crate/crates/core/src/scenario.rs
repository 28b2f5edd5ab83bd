//! The Stern-Gerlach detector experiment.
//!
//! A spin-1/2 pair is split: the left particle hits detector D1L (z+) or D2L
//! (z-); on the right the z+ beam reaches D1R and the z- beam passes an x-axis
//! magnet and reaches D2R (x+) or D3R (x-).
//!
//! Detector projectors come in two conventions. The single-spin list lives in
//! C^2, where D1L and D1R share `P_z+`. The collapse walkthrough needs the
//! two-particle state and works in C^2 ⊗ C^2 with left-factor-first basis
//! order `|00>, |01>, |10>, |11>`. Every check record names its space.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{equivalent2, find_valuations, parse, render, Formula};
use crate::hilbert::{
    commutator_norm, pauli_eigenprojectors, pauli_eigenvectors, Axis, Lattice, Projector,
    StateVector, Tolerance,
};
use crate::semantics::{
    distributivity_formulas, distributivity_identity_demo, phase_eval, phase_truth, ql_classify,
    ql_copy, sentence_identity, tarski_copy, tsentence_eval, CopyResult, PhaseSpaceModel,
    ProjectorAssignment, SemanticVerdict,
};
use crate::trivalent::{eval3, TruthValue3, Valuation3, VALUES3};

/// Detector atoms, left side first.
pub const DETECTORS: [&str; 5] = ["D1L", "D2L", "D1R", "D2R", "D3R"];

/// Pairs of distinct detectors on the same side.
pub const SAME_SIDE_PAIRS: [(&str, &str); 4] = [
    ("D1L", "D2L"),
    ("D1R", "D2R"),
    ("D1R", "D3R"),
    ("D2R", "D3R"),
];

/// `(D1L -> D1R) | (D2L -> (D2R | D3R))`
pub const CONDITIONALS: &str = "(D1L -> D1R) | (D2L -> (D2R | D3R))";
pub const NEGATED_CONDITIONALS_FALSE: &str = "!(D1L -> D1R) & !(D2L -> (D2R | D3R)) <-> F";
pub const CONDITIONALS_TRUE: &str = "(D1L -> D1R) | (D2L -> (D2R | D3R)) <-> T";
pub const PHILO_FORM_TRUE: &str = "!(D1L & D2L) | (D1R | (D2R | D3R)) <-> T";
pub const RIGHT_DISJUNCTION: &str = "D1R | (D2R | D3R)";
pub const LEFT_PROHIBITION: &str = "!(D1L & D2L)";

// ---------------------------------------------------------------------------
// Configuration

/// Branch amplitudes `b1, b2` and sub-branch amplitudes `c1, c2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub b1: Complex64,
    pub b2: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub tolerance: Tolerance,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        ExperimentConfig {
            b1: h,
            b2: h,
            c1: h,
            c2: h,
            tolerance: Tolerance::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        for z in [self.b1, self.b2, self.c1, self.c2] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        for (which, x, y) in [("b", self.b1, self.b2), ("c", self.c1, self.c2)] {
            let norm_sq = x.norm_sqr() + y.norm_sqr();
            if (norm_sq - 1.0).abs() > self.tolerance.eps() {
                return Err(Error::Normalization {
                    which: which.to_string(),
                    norm_sq,
                });
            }
        }
        Ok(())
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::new(self.tolerance)
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub label: String,
    pub formulas: Vec<String>,
    pub semantics: String,
    pub space: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn new(
        label: impl Into<String>,
        formulas: Vec<String>,
        semantics: &str,
        space: &str,
        expected: impl ToString,
        computed: impl ToString,
    ) -> CheckRecord {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        CheckRecord {
            label: label.into(),
            formulas,
            semantics: semantics.to_string(),
            space: space.to_string(),
            pass: expected == computed,
            expected,
            computed,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> CheckRecord {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub title: String,
    pub checks: Vec<CheckRecord>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl ScenarioReport {
    pub fn new(title: impl Into<String>) -> ScenarioReport {
        ScenarioReport {
            title: title.into(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: ScenarioReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn find(&self, label: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.label == label)
    }
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "[{mark}] {} ({}, {})", c.label, c.semantics, c.space)?;
            for text in &c.formulas {
                writeln!(f, "       {text}")?;
            }
            writeln!(
                f,
                "       expected {} | computed {}",
                c.expected, c.computed
            )?;
            if let Some(note) = &c.note {
                writeln!(f, "       note: {note}")?;
            }
        }
        for note in &self.notes {
            writeln!(f, "* {note}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

// ---------------------------------------------------------------------------
// Projectors and states

/// Single-spin detector projectors in C^2.
pub fn detector_projectors() -> ProjectorAssignment {
    let (zp, zm) = pauli_eigenprojectors(Axis::Z);
    let (xp, xm) = pauli_eigenprojectors(Axis::X);
    let mut a = ProjectorAssignment::new(2);
    for (name, p) in [
        ("D1L", zp.clone()),
        ("D2L", zm),
        ("D1R", zp),
        ("D2R", xp),
        ("D3R", xm),
    ] {
        a.insert(name, p).expect("detector names are valid atoms");
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// `P ⊗ I` on the left factor, `I ⊗ P` on the right.
pub fn lift(p: &Projector, side: Side) -> Result<Projector> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    let id = Projector::identity(2);
    Ok(match side {
        Side::Left => p.tensor(&id),
        Side::Right => id.tensor(p),
    })
}

fn side_of(name: &str) -> Side {
    if name.ends_with('L') {
        Side::Left
    } else {
        Side::Right
    }
}

/// Detector projectors acting on the two-particle space C^4.
pub fn lifted_detector_projectors() -> ProjectorAssignment {
    let single = detector_projectors();
    let mut a = ProjectorAssignment::new(4);
    for (name, p) in single.iter() {
        let lifted = lift(p, side_of(name)).expect("single-spin projectors are 2x2");
        a.insert(name, lifted).expect("lifted dimension is 4");
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationTable {
    pub atoms: Vec<String>,
    pub commutes: Vec<Vec<bool>>,
}

impl CommutationTable {
    pub fn get(&self, a: &str, b: &str) -> Option<bool> {
        let i = self.atoms.iter().position(|x| x == a)?;
        let j = self.atoms.iter().position(|x| x == b)?;
        Some(self.commutes[i][j])
    }
}

pub fn commutation_table() -> CommutationTable {
    let a = detector_projectors();
    let lat = Lattice::default();
    let commutes = DETECTORS
        .iter()
        .map(|x| {
            DETECTORS
                .iter()
                .map(|y| {
                    lat.commutes(a.get(x).unwrap(), a.get(y).unwrap())
                        .expect("detector projectors share dimension 2")
                })
                .collect()
        })
        .collect();
    CommutationTable {
        atoms: DETECTORS.iter().map(|s| s.to_string()).collect(),
        commutes,
    }
}

/// `b1 (z+ ⊗ z+) + b2 (z- ⊗ (c1 x+ + c2 x-))`.
pub fn build_state(c: &ExperimentConfig) -> Result<StateVector> {
    c.validate()?;
    let (zp, zm) = pauli_eigenvectors(Axis::Z);
    let (xp, xm) = pauli_eigenvectors(Axis::X);
    let branch1 = zp.tensor(&zp);
    let right = xp.scale(c.c1).add(&xm.scale(c.c2))?;
    let branch2 = zm.tensor(&right);
    branch1.scale(c.b1).add(&branch2.scale(c.b2))
}

/// `P psi / |P psi|` at the default tolerance.
pub fn collapse(psi: &StateVector, p: &Projector) -> Result<StateVector> {
    Lattice::default().collapse(psi, p)
}

/// Short label for a projector copy: `P_⊤`, `P_⊥`, `GAP`, or the rank.
pub fn describe_copy(copy: &CopyResult, tol: Tolerance) -> String {
    match copy {
        CopyResult::Gap => "GAP".to_string(),
        CopyResult::Unique(p) => describe_projector(p, tol),
    }
}

pub fn describe_projector(p: &Projector, tol: Tolerance) -> String {
    if p.is_identity(tol) {
        "P_⊤".to_string()
    } else if p.is_zero(tol) {
        "P_⊥".to_string()
    } else {
        format!("P (rank {})", p.rank())
    }
}

// ---------------------------------------------------------------------------
// Walkthroughs

fn f(text: &str) -> Formula {
    parse(text).expect("built-in formula parses")
}

fn texts(list: &[&str]) -> Vec<String> {
    list.iter().map(|t| render(&f(t))).collect()
}

const REACHABLE: &str = "REACHABLE";
const VACUOUS: &str = "VACUOUS";

/// Outcome of trying to reach one collapse branch.
fn try_branch(
    report: &mut ScenarioReport,
    label: &str,
    from: Option<&StateVector>,
    p: &Projector,
    amplitude: f64,
    lat: &Lattice,
) -> Result<Option<StateVector>> {
    let expected = if amplitude > lat.tolerance().eps() {
        REACHABLE
    } else {
        VACUOUS
    };
    let (computed, state) = match from {
        None => (VACUOUS, None),
        Some(psi) => match lat.collapse(psi, p) {
            Ok(s) => (REACHABLE, Some(s)),
            Err(Error::ZeroAmplitude { .. }) => (VACUOUS, None),
            Err(e) => return Err(e),
        },
    };
    let mut check = CheckRecord::new(label, vec![], "hilbert", "C4", expected, computed);
    if computed == VACUOUS {
        check = check.with_note("branch unreachable; its checks are skipped");
    }
    report.push(check);
    Ok(state)
}

fn verdict_checks(
    report: &mut ScenarioReport,
    at: &str,
    psi: &StateVector,
    expected: &[(&str, SemanticVerdict)],
    a: &ProjectorAssignment,
    lat: &Lattice,
) -> Result<()> {
    for (text, want) in expected {
        let got = tsentence_eval(&f(text), a, psi, lat)?;
        report.push(CheckRecord::new(
            format!("{text} at {at}"),
            texts(&[text]),
            "tarski",
            "C4",
            want,
            got,
        ));
    }
    Ok(())
}

fn prohibition_check(
    report: &mut ScenarioReport,
    at: &str,
    psi: &StateVector,
    a: &ProjectorAssignment,
    lat: &Lattice,
) -> Result<()> {
    let mut violated = Vec::new();
    for (x, y) in SAME_SIDE_PAIRS {
        let tx = lat.apply_and_classify(a.get(x)?, psi)?;
        let ty = lat.apply_and_classify(a.get(y)?, psi)?;
        if tx == crate::hilbert::StateClass::True && ty == crate::hilbert::StateClass::True {
            violated.push(format!("{x}+{y}"));
        }
    }
    let computed = if violated.is_empty() {
        "RESPECTED".to_string()
    } else {
        format!("VIOLATED ({})", violated.join(", "))
    };
    report.push(
        CheckRecord::new(
            format!("prohibition at {at}"),
            SAME_SIDE_PAIRS
                .iter()
                .map(|(x, y)| format!("{x} & {y}"))
                .collect(),
            "tarski",
            "C4",
            "RESPECTED",
            computed,
        )
        .with_note("no two same-side detectors are both TRUE"),
    );
    // conjunctions excluded after collapse: evaluated through the lattice meet
    for text in ["D1R & D2R", "D1R & D3R", "D2R & D3R"] {
        let meet = ql_copy(&f(text), a, lat)?;
        let got: SemanticVerdict = lat.apply_and_classify(&meet, psi)?.into();
        report.push(CheckRecord::new(
            format!("{text} excluded at {at}"),
            texts(&[text]),
            "quantum",
            "C4",
            SemanticVerdict::False,
            got,
        ));
    }
    Ok(())
}

/// Collapse sequence from the superposed two-particle state.
pub fn copenhagen_walkthrough(c: &ExperimentConfig) -> Result<ScenarioReport> {
    let psi = build_state(c)?;
    let lat = c.lattice();
    let a = lifted_detector_projectors();
    let mut report = ScenarioReport::new("Copenhagen collapse walkthrough");
    use SemanticVerdict::{False, IndeterminateState, True};

    let both = |x: Complex64, y: Complex64| {
        x.norm() > lat.tolerance().eps() && y.norm() > lat.tolerance().eps()
    };
    if both(c.b1, c.b2) {
        verdict_checks(
            &mut report,
            "Psi",
            &psi,
            &[("D1L", IndeterminateState), ("D2L", IndeterminateState)],
            &a,
            &lat,
        )?;
    }

    let psi1 = try_branch(
        &mut report,
        "branch 1 (D1L clicks)",
        Some(&psi),
        a.get("D1L")?,
        c.b1.norm(),
        &lat,
    )?;
    if let Some(s) = &psi1 {
        verdict_checks(
            &mut report,
            "Psi1",
            s,
            &[("D1L", True), ("D1R", True), ("D1L -> D1R", True)],
            &a,
            &lat,
        )?;
        prohibition_check(&mut report, "Psi1", s, &a, &lat)?;
    }

    let psi2 = try_branch(
        &mut report,
        "branch 2 (D2L clicks)",
        Some(&psi),
        a.get("D2L")?,
        c.b2.norm(),
        &lat,
    )?;
    if let Some(s) = &psi2 {
        verdict_checks(
            &mut report,
            "Psi2",
            s,
            &[("D2L", True), ("D2L -> (D2R | D3R)", True)],
            &a,
            &lat,
        )?;
        if both(c.c1, c.c2) {
            // right-hand outcome is still open: no truth value before the sub-collapse
            verdict_checks(
                &mut report,
                "Psi2",
                s,
                &[
                    ("D2R", IndeterminateState),
                    ("D3R", IndeterminateState),
                    ("!D2R", IndeterminateState),
                ],
                &a,
                &lat,
            )?;
        }
        prohibition_check(&mut report, "Psi2", s, &a, &lat)?;
    }

    let subs = [
        (
            "x+",
            "D2R",
            c.c1,
            [("D2L", True), ("D2R", True), ("D3R", False)],
        ),
        (
            "x-",
            "D3R",
            c.c2,
            [("D2L", True), ("D2R", False), ("D3R", True)],
        ),
    ];
    for (tag, atom, amp, expect) in subs {
        let label = format!("branch 2, {tag} sub-branch ({atom} clicks)");
        let sub = try_branch(
            &mut report,
            &label,
            psi2.as_ref(),
            a.get(atom)?,
            (c.b2 * amp).norm(),
            &lat,
        )?;
        if let Some(s) = &sub {
            let at = format!("Psi2{tag}");
            verdict_checks(&mut report, &at, s, &expect, &a, &lat)?;
            prohibition_check(&mut report, &at, s, &a, &lat)?;
        }
    }

    // weak-Kleene reading of the gap before the sub-collapse
    for atom in ["D2R", "D3R"] {
        for pattern in ["!{}", "{} & S", "{} | S", "{} = S"] {
            let text = pattern.replace("{}", atom);
            let formula = f(&text);
            let mut values: Vec<&str> = Vec::new();
            for s in VALUES3 {
                let v = Valuation3::new().with(atom, TruthValue3::U).with("S", s);
                let x = eval3(&formula, &v)?.symbol();
                if !values.contains(&x) {
                    values.push(x);
                }
            }
            report.push(
                CheckRecord::new(
                    format!("{text} with {atom} = u"),
                    vec![render(&formula)],
                    "trivalent",
                    "-",
                    TruthValue3::U,
                    values.join("/"),
                )
                .with_note("S ranges over t, f, u"),
            );
        }
    }

    report.note(
        "after a collapse the right-side conjunctions are FALSE, never TRUE: the prohibition holds",
    );
    report.note(
        "before the collapse the right-side sentences have no truth value, so bivalence fails there \
         and holds after it; applying both readings to one sentence gives A1 & !A1 |- S for any S",
    );
    Ok(report)
}

fn sat_label(n: usize) -> &'static str {
    if n > 0 {
        "SATISFIABLE"
    } else {
        "UNSATISFIABLE"
    }
}

fn equivalence_check(label: &str, x: &str, y: &str) -> Result<CheckRecord> {
    let eq = equivalent2(&f(x), &f(y))?;
    Ok(CheckRecord::new(
        label,
        texts(&[x, y]),
        "classical",
        "-",
        "EQUIVALENT",
        if eq { "EQUIVALENT" } else { "NOT EQUIVALENT" },
    ))
}

/// Classical derivation of the paradox from the two conditionals.
pub fn paradox_walkthrough() -> Result<ScenarioReport> {
    let mut report = ScenarioReport::new("Paradox of classical reasoning");
    report.push(equivalence_check(
        "De Morgan step",
        NEGATED_CONDITIONALS_FALSE,
        CONDITIONALS_TRUE,
    )?);
    report.push(equivalence_check(
        "Philo step",
        CONDITIONALS_TRUE,
        PHILO_FORM_TRUE,
    )?);

    let base = [f(PHILO_FORM_TRUE), f(LEFT_PROHIBITION)];
    let max = f(RIGHT_DISJUNCTION);
    let can_true = !find_valuations(&base, &max)?.is_empty();
    let can_false = !find_valuations(&base, &Formula::not(max.clone()))?.is_empty();
    let computed = match (can_true, can_false) {
        (true, true) => "UNDETERMINED",
        (true, false) => "TRUE",
        (false, true) => "FALSE",
        (false, false) => "INCONSISTENT",
    };
    report.push(CheckRecord::new(
        "right disjunction left open by the prohibition",
        texts(&[PHILO_FORM_TRUE, LEFT_PROHIBITION, RIGHT_DISJUNCTION]),
        "classical",
        "-",
        "UNDETERMINED",
        computed,
    ));

    let both_right = f("D2R & D3R");
    let constraints = [f(CONDITIONALS_TRUE), f(LEFT_PROHIBITION)];
    let found = find_valuations(&constraints, &both_right)?;
    let mut exhibit = CheckRecord::new(
        "simultaneous right clicks exhibited",
        texts(&[CONDITIONALS_TRUE, LEFT_PROHIBITION, "D2R & D3R"]),
        "classical",
        "-",
        "SATISFIABLE",
        sat_label(found.len()),
    );
    if let Some(v) = found.first() {
        let shown: Vec<String> = v.iter().map(|(k, x)| format!("{k}={x}")).collect();
        exhibit = exhibit.with_note(format!(
            "{} valuations, e.g. {}",
            found.len(),
            shown.join(" ")
        ));
    }
    report.push(exhibit);

    let relaxed = find_valuations(&[f(CONDITIONALS_TRUE)], &both_right)?;
    report.push(CheckRecord::new(
        "exhibit survives dropping the prohibition",
        texts(&[CONDITIONALS_TRUE, "D2R & D3R"]),
        "classical",
        "-",
        "SATISFIABLE",
        sat_label(relaxed.len()),
    ));

    let mut full: Vec<Formula> = vec![f(CONDITIONALS_TRUE)];
    full.extend(
        SAME_SIDE_PAIRS
            .iter()
            .map(|(x, y)| f(&format!("!({x} & {y})"))),
    );
    let clash = find_valuations(&full, &both_right)?;
    report.push(
        CheckRecord::new(
            "exhibit contradicts the full prohibition",
            full.iter()
                .map(render)
                .chain([render(&both_right)])
                .collect(),
            "classical",
            "-",
            "UNSATISFIABLE",
            sat_label(clash.len()),
        )
        .with_note("bivalence and consistency cannot hold together"),
    );

    report.push(equivalence_check(
        "A1 -> !A2 restates the conclusion",
        "!A1 | !A2",
        "A1 -> !A2",
    )?);
    report.push(equivalence_check(
        "A2 -> !A1 restates the conclusion",
        "!A1 | !A2",
        "A2 -> !A1",
    )?);
    report.note("conclusion: (!A1 | !A2) <-> T, A1 = bivalence, A2 = consistency");
    Ok(report)
}

fn class_check(
    label: &str,
    text: &str,
    a: &ProjectorAssignment,
    lat: &Lattice,
    expected: &str,
) -> Result<CheckRecord> {
    let class = ql_classify(&f(text), a, lat)?;
    Ok(CheckRecord::new(
        label,
        texts(&[text]),
        "quantum",
        "C2",
        expected,
        class,
    ))
}

/// Quantum-logic reading of the experiment on the C^2 detector projectors.
pub fn quantum_resolution() -> Result<ScenarioReport> {
    let a = detector_projectors();
    let lat = Lattice::default();
    let tol = lat.tolerance();
    let mut report = ScenarioReport::new("Resolution by quantum logic");

    report.push(class_check(
        "conditionals always true",
        CONDITIONALS,
        &a,
        &lat,
        "TAUTOLOGY",
    )?);
    report.push(class_check(
        "left prohibition",
        LEFT_PROHIBITION,
        &a,
        &lat,
        "TAUTOLOGY",
    )?);
    report.push(class_check(
        "D1L & D1R",
        "D1L & D1R",
        &a,
        &lat,
        "CONTINGENT",
    )?);
    let copy = ql_copy(&f("D1L & D1R"), &a, &lat)?;
    report.push(CheckRecord::new(
        "D1L & D1R has the copy of D1L",
        texts(&["D1L & D1R", "D1L"]),
        "quantum",
        "C2",
        "EQUAL",
        if copy.approx_eq(a.get("D1L")?, tol) {
            "EQUAL"
        } else {
            "DIFFERENT"
        },
    ));
    report.push(class_check(
        "D2L & (D2R | D3R)",
        "D2L & (D2R | D3R)",
        &a,
        &lat,
        "CONTINGENT",
    )?);
    report.push(class_check(
        "D2R | D3R",
        "D2R | D3R",
        &a,
        &lat,
        "TAUTOLOGY",
    )?);
    report.push(class_check(
        "excluded middle on the left",
        "(!D1L | D1L) | (!D2L | D2L)",
        &a,
        &lat,
        "TAUTOLOGY",
    )?);
    for (x, y) in SAME_SIDE_PAIRS {
        let text = format!("{x} & {y}");
        report.push(class_check(
            &format!("prohibition {text}"),
            &text,
            &a,
            &lat,
            "CONTRADICTION",
        )?);
    }

    let (zp, _) = pauli_eigenprojectors(Axis::Z);
    let w = lat.distributivity_witness(a.get("D1R")?, a.get("D2R")?, a.get("D3R")?)?;
    let shape = format!(
        "lhs {}, rhs {}",
        if w.lhs.approx_eq(&zp, tol) {
            "P_z+"
        } else {
            "other"
        },
        describe_projector(&w.rhs, tol)
    );
    report.push(CheckRecord::new(
        "distributivity witness (P_z+, P_x+, P_x-)",
        texts(&["D1R & (D2R | D3R)", "(D1R & D2R) | (D1R & D3R)"]),
        "quantum",
        "C2",
        "lhs P_z+, rhs P_⊥",
        shape,
    ));
    report.push(CheckRecord::new(
        "lattice is not distributive",
        vec![],
        "quantum",
        "C2",
        "NONDISTRIBUTIVE",
        if w.distributive {
            "DISTRIBUTIVE"
        } else {
            "NONDISTRIBUTIVE"
        },
    ));

    let table = commutation_table();
    for (x, y, commute) in [
        ("D1L", "D2L", true),
        ("D2R", "D3R", true),
        ("D1R", "D2R", false),
        ("D1R", "D3R", false),
    ] {
        let got = table.get(x, y).expect("detector names are in the table");
        let nc = commutator_norm(a.get(x)?, a.get(y)?);
        let word = |b: bool| if b { "COMMUTE" } else { "NO COMMUTE" };
        report.push(
            CheckRecord::new(
                format!("{x}, {y} commutation"),
                vec![],
                "hilbert",
                "C2",
                word(commute),
                word(got),
            )
            .with_note(format!("|[P, Q]|_F = {nc:.6}")),
        );
    }
    report.note("the paradox does not arise: the conditionals are the equivalence T <-> T");
    Ok(report)
}

fn copy_check(
    label: &str,
    text: &str,
    a: &ProjectorAssignment,
    space: &str,
    lat: &Lattice,
    expected: &str,
) -> Result<CheckRecord> {
    let copy = tarski_copy(&f(text), a, lat)?;
    Ok(CheckRecord::new(
        label,
        texts(&[text]),
        "tarski",
        space,
        expected,
        describe_copy(&copy, lat.tolerance()),
    ))
}

/// Projector-copy reading: truth of a sentence is moved to its copy.
pub fn tarski_resolution() -> Result<ScenarioReport> {
    let lat = Lattice::default();
    let mut report = ScenarioReport::new("Resolution by projector copies");
    for (a, space) in [
        (detector_projectors(), "C2"),
        (lifted_detector_projectors(), "C4"),
    ] {
        report.push(copy_check(
            "T1: right disjunction",
            RIGHT_DISJUNCTION,
            &a,
            space,
            &lat,
            "P_⊤",
        )?);
        report.push(copy_check(
            "T2: D1R & D2R",
            "D1R & D2R",
            &a,
            space,
            &lat,
            "GAP",
        )?);
        report.push(copy_check(
            "T2: D1R & D3R",
            "D1R & D3R",
            &a,
            space,
            &lat,
            "GAP",
        )?);
        report.push(copy_check(
            "T3: D2R & D3R",
            "D2R & D3R",
            &a,
            space,
            &lat,
            "P_⊥",
        )?);
    }

    let a = detector_projectors();
    let max = f(RIGHT_DISJUNCTION);
    for (other, want) in [
        ("D1R | (D2R & D3R)", TruthValue3::F),
        ("(D1R & D2R) & D3R", TruthValue3::U),
        ("(D1R & D3R) & D2R", TruthValue3::U),
    ] {
        let got = sentence_identity(&max, &f(other), &a, &lat)?;
        report.push(CheckRecord::new(
            format!("identity with {other}"),
            vec![render(&Formula::identity(max.clone(), f(other)))],
            "tarski",
            "C2",
            want,
            got,
        ));
    }

    let demo = distributivity_identity_demo(&a, "D1R", "D2R", &lat)?;
    let (lhs, rhs) = distributivity_formulas("D1R", "D2R");
    report.push(
        CheckRecord::new(
            "distributive law has no value on D1R, D2R",
            vec![render(&Formula::identity(lhs, rhs))],
            "tarski",
            "C2",
            TruthValue3::U,
            demo.value,
        )
        .with_note(if demo.inputs_commute {
            "inputs commute: the demo is uninformative"
        } else {
            "inputs do not commute: the law is not refuted"
        }),
    );
    let literal = f("D1R | (D2R & !D2R) = (D1R | D2R) & (D2R | !D2R)");
    let (l, r) = match &literal {
        Formula::Identity(l, r) => (l.as_ref(), r.as_ref()),
        _ => unreachable!("parsed as an identity"),
    };
    report.push(CheckRecord::new(
        "absorbed form has no value on D1R, D2R",
        vec![render(&literal)],
        "tarski",
        "C2",
        TruthValue3::U,
        sentence_identity(l, r, &a, &lat)?,
    ));
    report.note(
        "the right disjunction is never identical to a TRUE simultaneous click: A2 holds, A1 fails",
    );
    Ok(report)
}

/// Both resolutions in one report.
pub fn resolutions_walkthrough() -> Result<ScenarioReport> {
    let mut report = quantum_resolution()?;
    report.title = "Resolutions".to_string();
    report.extend(tarski_resolution()?);
    Ok(report)
}

/// Six-point phase space used by [`phase_space_demo`].
pub fn sample_phase_model() -> PhaseSpaceModel {
    PhaseSpaceModel::new(["q1", "q2", "q3", "q4", "q5", "q6"])
        .and_then(|m| m.with("S", ["q1", "q2"]))
        .and_then(|m| m.with("S1", ["q1", "q2", "q3"]))
        .and_then(|m| m.with("S2", ["q3", "q4", "q5"]))
        .expect("sample model is well formed")
}

fn show_set<'a>(items: impl IntoIterator<Item = &'a String>) -> String {
    let v: Vec<&str> = items.into_iter().map(|s| s.as_str()).collect();
    format!("{{{}}}", v.join(", "))
}

/// Boolean set semantics on a classical phase space.
pub fn phase_space_demo() -> Result<ScenarioReport> {
    let m = sample_phase_model();
    let mut report = ScenarioReport::new("Phase-space semantics");
    let member = |atom: &str, q: &String| m.subset(atom).map(|s| s.contains(q));

    let mut expected_sets: Vec<(&str, Vec<String>)> = Vec::new();
    let mut collect = |text: &'static str, keep: &dyn Fn(&String) -> Result<bool>| -> Result<()> {
        let mut v = Vec::new();
        for q in m.points() {
            if keep(q)? {
                v.push(q.clone());
            }
        }
        expected_sets.push((text, v));
        Ok(())
    };
    collect("S", &|q| member("S", q))?;
    collect("!S", &|q| Ok(!member("S", q)?))?;
    collect("S1 & S2", &|q| Ok(member("S1", q)? && member("S2", q)?))?;
    collect("S1 | S2", &|q| Ok(member("S1", q)? || member("S2", q)?))?;

    for (text, want) in &expected_sets {
        let mut got: Vec<String> = phase_eval(&f(text), &m)?.into_iter().collect();
        got.sort_by_key(|q| m.points().iter().position(|p| p == q));
        report.push(CheckRecord::new(
            format!("set of {text}"),
            texts(&[text]),
            "phase",
            "phase",
            show_set(want),
            show_set(&got),
        ));
    }

    for text in [
        "S",
        "!S",
        "S1 & S2",
        "S1 | S2",
        "(S1 -> S2) <-> (!S1 | S2)",
        "!(S & S1) | (S2 -> S)",
    ] {
        let formula = f(text);
        let mut bad = Vec::new();
        for q in m.points() {
            let v = ["S", "S1", "S2"]
                .iter()
                .map(|atom| Ok((*atom, m.subset(atom)?.contains(q).into())))
                .collect::<Result<crate::formula::Valuation2>>()?;
            if phase_truth(&formula, &m, q)? != crate::formula::eval2(&formula, &v)? {
                bad.push(q.clone());
            }
        }
        let computed = if bad.is_empty() {
            "AGREE".to_string()
        } else {
            format!("DISAGREE at {}", show_set(&bad))
        };
        report.push(CheckRecord::new(
            format!("{text} pointwise against truth tables"),
            vec![render(&formula)],
            "phase",
            "phase",
            "AGREE",
            computed,
        ));
    }
    report.note("a sentence is true at q exactly when q lies in its set");
    Ok(report)
}
