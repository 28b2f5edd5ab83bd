//! Model files: projector assignments or phase spaces, read from JSON.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major nested
//! arrays:
//!
//! ```json
//! { "dimension": 2,
//!   "atoms": { "A": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]] },
//!   "state": [[1, 0], [0, 0]] }
//! ```
//!
//! or `{ "phase": { "points": ["q1", "q2"], "atoms": { "S": ["q1"] } } }`.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qtruth_core::hilbert::ComplexMatrix;
use qtruth_core::scenario::{
    build_state, detector_projectors, lifted_detector_projectors, ExperimentConfig,
};
use qtruth_core::semantics::{PhaseSpaceModel, ProjectorAssignment};
use qtruth_core::{Error, Projector, StateVector, Tolerance};

use crate::CliError;

/// Builtin model: the single-spin detector projectors in C^2.
pub const SCENARIO: &str = "scenario";
/// Builtin model: detector projectors lifted to C^4 with the default state.
pub const SCENARIO_LIFTED: &str = "scenario-lifted";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<BTreeMap<String, Vec<Vec<Complex64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<Complex64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<PhaseFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseFile {
    pub points: Vec<String>,
    pub atoms: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone)]
pub enum Model {
    Hilbert {
        assignment: ProjectorAssignment,
        state: Option<StateVector>,
    },
    Phase(PhaseSpaceModel),
}

fn schema(path: &str, message: impl Into<String>) -> CliError {
    CliError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Load a builtin model by name or a model file by path.
pub fn load_model(path: &str, tol: Tolerance) -> Result<Model, CliError> {
    match path {
        SCENARIO => Ok(Model::Hilbert {
            assignment: detector_projectors(),
            state: None,
        }),
        SCENARIO_LIFTED => Ok(Model::Hilbert {
            assignment: lifted_detector_projectors(),
            state: Some(build_state(&ExperimentConfig::default())?),
        }),
        _ => {
            let text = std::fs::read_to_string(Path::new(path)).map_err(|source| CliError::Io {
                path: path.to_string(),
                source,
            })?;
            let file: ModelFile =
                serde_json::from_str(&text).map_err(|e| schema(path, e.to_string()))?;
            model_from_file(file, path, tol)
        }
    }
}

/// Validate a parsed model file. `origin` names it in error messages.
pub fn model_from_file(file: ModelFile, origin: &str, tol: Tolerance) -> Result<Model, CliError> {
    match (file.atoms, file.phase) {
        (Some(_), Some(_)) => Err(schema(origin, "give either `atoms` or `phase`, not both")),
        (None, None) => Err(schema(origin, "missing field `atoms` or `phase`")),
        (None, Some(phase)) => {
            if file.state.is_some() {
                return Err(schema(origin, "field `state` is only allowed with `atoms`"));
            }
            if file.dimension.is_some() {
                return Err(schema(
                    origin,
                    "field `dimension` is only allowed with `atoms`",
                ));
            }
            let mut m = PhaseSpaceModel::new(phase.points)?;
            for (atom, subset) in phase.atoms {
                m.insert(atom, subset)?;
            }
            Ok(Model::Phase(m))
        }
        (Some(atoms), None) => {
            let dim = file
                .dimension
                .ok_or_else(|| schema(origin, "missing field `dimension`"))?;
            if dim == 0 {
                return Err(schema(origin, "field `dimension` must be positive"));
            }
            let mut assignment = ProjectorAssignment::new(dim);
            for (atom, rows) in atoms {
                let p = projector_entry(&atom, &rows, dim, tol)?;
                assignment.insert(atom, p)?;
            }
            let state = match file.state {
                None => None,
                Some(entries) => {
                    if entries.len() != dim {
                        return Err(schema(
                            origin,
                            format!(
                                "field `state` has {} entries, expected {dim}",
                                entries.len()
                            ),
                        ));
                    }
                    let psi = StateVector::new(entries)?;
                    if !psi.is_normalized(tol) {
                        return Err(Error::NotNormalized { norm: psi.norm() }.into());
                    }
                    Some(psi)
                }
            };
            Ok(Model::Hilbert { assignment, state })
        }
    }
}

fn projector_entry(
    atom: &str,
    rows: &[Vec<Complex64>],
    dim: usize,
    tol: Tolerance,
) -> Result<Projector, CliError> {
    let wrap = |reason: Error| Error::InvalidProjector {
        atom: atom.to_string(),
        reason: Box::new(reason),
    };
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let reason = if rows.iter().all(|r| r.len() == rows.len()) {
            Error::DimensionMismatch {
                expected: dim,
                found: rows.len(),
            }
        } else {
            Error::NotSquare {
                rows: rows.len(),
                cols,
            }
        };
        return Err(wrap(reason).into());
    }
    let m = ComplexMatrix::from_rows(rows).map_err(wrap)?;
    Ok(Projector::new(m, tol).map_err(wrap)?)
}
