//! Model-theoretic evaluators over projector assignments and phase spaces.
//!
//! * quantum logic: sentences denote subspaces, connectives are the lattice
//!   operations and the conditional is the Sasaki hook;
//! * projector copies: a compound sentence has a unique copy only when the
//!   copies of its parts commute, otherwise it has a truth-value gap;
//! * phase space: sentences denote sets of points and connectives are the
//!   Boolean set operations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{is_valid_atom_name, Formula, TruthValue2};
use crate::hilbert::{check_dim, Lattice, Projector, StateClass, StateVector};
use crate::trivalent::TruthValue3;

/// Atom names mapped to projectors on a common space.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorAssignment {
    dim: usize,
    atoms: BTreeMap<String, Projector>,
}

impl ProjectorAssignment {
    pub fn new(dim: usize) -> ProjectorAssignment {
        ProjectorAssignment {
            dim,
            atoms: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, name: impl Into<String>, p: Projector) -> Result<()> {
        let name = name.into();
        if !is_valid_atom_name(&name) {
            return Err(Error::InvalidAtomName(name));
        }
        check_dim(self.dim, p.dim())?;
        self.atoms.insert(name, p);
        Ok(())
    }

    pub fn with(mut self, name: impl Into<String>, p: Projector) -> Result<Self> {
        self.insert(name, p)?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, name: &str) -> Result<&Projector> {
        self.atoms
            .get(name)
            .ok_or_else(|| Error::MissingAtom(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Projector)> {
        self.atoms.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn names(&self) -> Vec<String> {
        self.atoms.keys().cloned().collect()
    }

    /// Same assignment with every projector sent through `f`.
    pub fn map(
        &self,
        dim: usize,
        f: impl Fn(&Projector) -> Projector,
    ) -> Result<ProjectorAssignment> {
        let mut out = ProjectorAssignment::new(dim);
        for (name, p) in &self.atoms {
            out.insert(name.clone(), f(p))?;
        }
        Ok(out)
    }
}

/// Projector copy of a sentence, or a gap when none is unique.
#[derive(Debug, Clone, PartialEq)]
pub enum CopyResult {
    Unique(Projector),
    Gap,
}

impl CopyResult {
    pub fn projector(&self) -> Option<&Projector> {
        match self {
            CopyResult::Unique(p) => Some(p),
            CopyResult::Gap => None,
        }
    }

    pub fn is_gap(&self) -> bool {
        matches!(self, CopyResult::Gap)
    }
}

/// Verdict of a sentence at a state. The two gap sources are kept apart:
/// an indeterminate state versus a sentence with no unique copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SemanticVerdict {
    True,
    False,
    IndeterminateState,
    GapNoUniqueCopy,
}

impl SemanticVerdict {
    /// Collapse both gap sources into `u`.
    pub fn merged(self) -> TruthValue3 {
        match self {
            SemanticVerdict::True => TruthValue3::T,
            SemanticVerdict::False => TruthValue3::F,
            SemanticVerdict::IndeterminateState | SemanticVerdict::GapNoUniqueCopy => {
                TruthValue3::U
            }
        }
    }
}

impl From<StateClass> for SemanticVerdict {
    fn from(c: StateClass) -> Self {
        match c {
            StateClass::True => SemanticVerdict::True,
            StateClass::False => SemanticVerdict::False,
            StateClass::Indeterminate => SemanticVerdict::IndeterminateState,
        }
    }
}

impl fmt::Display for SemanticVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemanticVerdict::True => "TRUE",
            SemanticVerdict::False => "FALSE",
            SemanticVerdict::IndeterminateState => "INDETERMINATE",
            SemanticVerdict::GapNoUniqueCopy => "GAP",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QlClass {
    Tautology,
    Contradiction,
    Contingent,
}

impl fmt::Display for QlClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QlClass::Tautology => "TAUTOLOGY",
            QlClass::Contradiction => "CONTRADICTION",
            QlClass::Contingent => "CONTINGENT",
        })
    }
}

// ---------------------------------------------------------------------------
// Quantum logic

/// Subspace denoted by `f` in the Hilbert lattice.
pub fn ql_copy(f: &Formula, a: &ProjectorAssignment, lat: &Lattice) -> Result<Projector> {
    let n = a.dim();
    match f {
        Formula::Atom(name) => Ok(a.get(name)?.clone()),
        Formula::Top => Ok(Projector::identity(n)),
        Formula::Bottom => Ok(Projector::zero(n)),
        Formula::Not(g) => Ok(ql_copy(g, a, lat)?.ortho()),
        Formula::And(l, r) => lat.meet(&ql_copy(l, a, lat)?, &ql_copy(r, a, lat)?),
        Formula::Or(l, r) => lat.join(&ql_copy(l, a, lat)?, &ql_copy(r, a, lat)?),
        Formula::Implies(l, r) => lat.sasaki_hook(&ql_copy(l, a, lat)?, &ql_copy(r, a, lat)?),
        Formula::Iff(l, r) => {
            let (p, q) = (ql_copy(l, a, lat)?, ql_copy(r, a, lat)?);
            lat.meet(&lat.sasaki_hook(&p, &q)?, &lat.sasaki_hook(&q, &p)?)
        }
        Formula::Identity(..) => Err(Error::IdentityUnsupported),
    }
}

pub fn classify_projector(p: &Projector, lat: &Lattice) -> QlClass {
    if p.is_identity(lat.tolerance()) {
        QlClass::Tautology
    } else if p.is_zero(lat.tolerance()) {
        QlClass::Contradiction
    } else {
        QlClass::Contingent
    }
}

pub fn ql_classify(f: &Formula, a: &ProjectorAssignment, lat: &Lattice) -> Result<QlClass> {
    Ok(classify_projector(&ql_copy(f, a, lat)?, lat))
}

// ---------------------------------------------------------------------------
// Projector copies

/// Copy of `f`: `1 - P` for negation, `PQ` and `P + Q - PQ` for commuting
/// conjunction and disjunction, `!A | B` for the conditional. A non-commuting
/// pair of sub-copies yields a gap, and gaps propagate upward.
pub fn tarski_copy(f: &Formula, a: &ProjectorAssignment, lat: &Lattice) -> Result<CopyResult> {
    use CopyResult::Unique;
    let n = a.dim();
    Ok(match f {
        Formula::Atom(name) => Unique(a.get(name)?.clone()),
        Formula::Top => Unique(Projector::identity(n)),
        Formula::Bottom => Unique(Projector::zero(n)),
        Formula::Not(g) => copy_not(tarski_copy(g, a, lat)?),
        Formula::And(l, r) => copy_and(tarski_copy(l, a, lat)?, tarski_copy(r, a, lat)?, lat)?,
        Formula::Or(l, r) => copy_or(tarski_copy(l, a, lat)?, tarski_copy(r, a, lat)?, lat)?,
        Formula::Implies(l, r) => copy_or(
            copy_not(tarski_copy(l, a, lat)?),
            tarski_copy(r, a, lat)?,
            lat,
        )?,
        Formula::Iff(l, r) => {
            let (p, q) = (tarski_copy(l, a, lat)?, tarski_copy(r, a, lat)?);
            let forward = copy_or(copy_not(p.clone()), q.clone(), lat)?;
            let backward = copy_or(copy_not(q), p, lat)?;
            copy_and(forward, backward, lat)?
        }
        Formula::Identity(..) => return Err(Error::IdentityUnsupported),
    })
}

fn copy_not(x: CopyResult) -> CopyResult {
    match x {
        CopyResult::Unique(p) => CopyResult::Unique(p.ortho()),
        CopyResult::Gap => CopyResult::Gap,
    }
}

fn commuting_pair(
    x: CopyResult,
    y: CopyResult,
    lat: &Lattice,
) -> Result<Option<(Projector, Projector)>> {
    match (x, y) {
        (CopyResult::Unique(p), CopyResult::Unique(q)) if lat.commutes(&p, &q)? => Ok(Some((p, q))),
        _ => Ok(None),
    }
}

fn copy_and(x: CopyResult, y: CopyResult, lat: &Lattice) -> Result<CopyResult> {
    Ok(match commuting_pair(x, y, lat)? {
        Some((p, q)) => CopyResult::Unique(Projector::from_trusted(p.matrix() * q.matrix())),
        None => CopyResult::Gap,
    })
}

fn copy_or(x: CopyResult, y: CopyResult, lat: &Lattice) -> Result<CopyResult> {
    Ok(match commuting_pair(x, y, lat)? {
        Some((p, q)) => CopyResult::Unique(Projector::from_trusted(
            p.matrix() + q.matrix() - p.matrix() * q.matrix(),
        )),
        None => CopyResult::Gap,
    })
}

/// Truth of `f` at `psi`: the copy's eigen-equation `P psi = psi`.
pub fn tsentence_eval(
    f: &Formula,
    a: &ProjectorAssignment,
    psi: &StateVector,
    lat: &Lattice,
) -> Result<SemanticVerdict> {
    check_dim(a.dim(), psi.dim())?;
    if !psi.is_normalized(lat.tolerance()) {
        return Err(Error::NotNormalized { norm: psi.norm() });
    }
    match tarski_copy(f, a, lat)? {
        CopyResult::Gap => Ok(SemanticVerdict::GapNoUniqueCopy),
        CopyResult::Unique(p) => Ok(lat.apply_and_classify(&p, psi)?.into()),
    }
}

/// Three-valued identity of two sentences by their copies.
pub fn sentence_identity(
    f: &Formula,
    g: &Formula,
    a: &ProjectorAssignment,
    lat: &Lattice,
) -> Result<TruthValue3> {
    let (x, y) = (tarski_copy(f, a, lat)?, tarski_copy(g, a, lat)?);
    Ok(match (x, y) {
        (CopyResult::Unique(p), CopyResult::Unique(q)) => p.approx_eq(&q, lat.tolerance()).into(),
        _ => TruthValue3::U,
    })
}

/// The two sides of the distributive law `S1 | (S2 & !S2)` and
/// `(S1 | S2) & (S1 | !S2)`.
pub fn distributivity_formulas(s1: &str, s2: &str) -> (Formula, Formula) {
    let (a, b) = (Formula::atom(s1), Formula::atom(s2));
    let lhs = Formula::or(a.clone(), Formula::and(b.clone(), Formula::not(b.clone())));
    let rhs = Formula::and(
        Formula::or(a.clone(), b.clone()),
        Formula::or(a, Formula::not(b)),
    );
    (lhs, rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityDemo {
    pub value: TruthValue3,
    /// Set when the two atoms commute; the demo is then uninformative (`t`).
    pub inputs_commute: bool,
}

/// Identity of the two sides of the distributive law under projector copies.
/// Non-commuting atoms give `u`: the law is not refuted, it has no value.
pub fn distributivity_identity_demo(
    a: &ProjectorAssignment,
    s1: &str,
    s2: &str,
    lat: &Lattice,
) -> Result<IdentityDemo> {
    let inputs_commute = lat.commutes(a.get(s1)?, a.get(s2)?)?;
    let (lhs, rhs) = distributivity_formulas(s1, s2);
    Ok(IdentityDemo {
        value: sentence_identity(&lhs, &rhs, a, lat)?,
        inputs_commute,
    })
}

// ---------------------------------------------------------------------------
// Phase space

/// Finite set of classical states with the set of states each atom holds in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSpaceModel {
    points: Vec<String>,
    atoms: BTreeMap<String, BTreeSet<String>>,
}

impl PhaseSpaceModel {
    pub fn new<S: Into<String>>(points: impl IntoIterator<Item = S>) -> Result<PhaseSpaceModel> {
        let mut list: Vec<String> = Vec::new();
        for p in points {
            let p = p.into();
            if list.contains(&p) {
                return Err(Error::Precondition(format!(
                    "duplicate phase-space point `{p}`"
                )));
            }
            list.push(p);
        }
        Ok(PhaseSpaceModel {
            points: list,
            atoms: BTreeMap::new(),
        })
    }

    pub fn insert<S: Into<String>>(
        &mut self,
        atom: impl Into<String>,
        subset: impl IntoIterator<Item = S>,
    ) -> Result<()> {
        let atom = atom.into();
        if !is_valid_atom_name(&atom) {
            return Err(Error::InvalidAtomName(atom));
        }
        let mut set = BTreeSet::new();
        for q in subset {
            let q = q.into();
            if !self.points.contains(&q) {
                return Err(Error::SubsetNotContained { atom, point: q });
            }
            set.insert(q);
        }
        self.atoms.insert(atom, set);
        Ok(())
    }

    pub fn with<S: Into<String>>(
        mut self,
        atom: impl Into<String>,
        subset: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        self.insert(atom, subset)?;
        Ok(self)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn all_points(&self) -> BTreeSet<String> {
        self.points.iter().cloned().collect()
    }

    pub fn subset(&self, atom: &str) -> Result<&BTreeSet<String>> {
        self.atoms
            .get(atom)
            .ok_or_else(|| Error::MissingAtom(atom.to_string()))
    }

    pub fn atom_names(&self) -> Vec<String> {
        self.atoms.keys().cloned().collect()
    }

    fn complement(&self, s: &BTreeSet<String>) -> BTreeSet<String> {
        self.points
            .iter()
            .filter(|q| !s.contains(*q))
            .cloned()
            .collect()
    }
}

/// Set of points at which `f` holds.
pub fn phase_eval(f: &Formula, m: &PhaseSpaceModel) -> Result<BTreeSet<String>> {
    Ok(match f {
        Formula::Atom(name) => m.subset(name)?.clone(),
        Formula::Top => m.all_points(),
        Formula::Bottom => BTreeSet::new(),
        Formula::Not(g) => m.complement(&phase_eval(g, m)?),
        Formula::And(l, r) => &phase_eval(l, m)? & &phase_eval(r, m)?,
        Formula::Or(l, r) => &phase_eval(l, m)? | &phase_eval(r, m)?,
        Formula::Implies(l, r) => &m.complement(&phase_eval(l, m)?) | &phase_eval(r, m)?,
        Formula::Iff(l, r) | Formula::Identity(l, r) => {
            m.complement(&(&phase_eval(l, m)? ^ &phase_eval(r, m)?))
        }
    })
}

pub fn phase_truth(f: &Formula, m: &PhaseSpaceModel, q: &str) -> Result<TruthValue2> {
    if !m.points.iter().any(|p| p == q) {
        return Err(Error::UnknownPoint(q.to_string()));
    }
    Ok(phase_eval(f, m)?.contains(q).into())
}
