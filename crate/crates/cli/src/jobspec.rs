//! Job files: a TOML document declaring variables, the denominator basis,
//! one or more syzygies, and a divided-power operator.
//!
//! ```toml
//! vars = ["u", "v", "w", "x", "y", "z"]
//! basis = ["v*z - w*y", "w*x - u*z", "u*y - v*x"]
//! syzygies = [["u", "v", "w"], ["x", "y", "z"]]
//! operator = "Du^1 Dy^1 Dz^1"
//! ```

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use divpow_core::{DenomBasis, DividedPowerOp, Syzygy, VarTable};

use crate::parse::{parse_operator, parse_poly, ParseError};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobDoc {
    vars: Vec<String>,
    basis: Vec<String>,
    syzygies: Vec<Vec<String>>,
    operator: String,
}

/// A fully parsed and validated job.
#[derive(Debug)]
pub struct Job {
    pub vars: Arc<VarTable>,
    pub basis: Arc<DenomBasis>,
    pub syzygies: Vec<Syzygy>,
    pub operator: DividedPowerOp,
}

/// Failures while reading a job file. These are user errors, not engine
/// errors; TOML errors already carry line and column information.
#[derive(Debug)]
pub enum JobError {
    Io(std::io::Error),
    Toml(toml::de::Error),
    Poly { field: String, error: ParseError },
    Invalid(String),
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JobError::Io(e) => write!(f, "cannot read job file: {e}"),
            JobError::Toml(e) => write!(f, "job file: {e}"),
            JobError::Poly { field, error } => write!(f, "job file, {field}: {error}"),
            JobError::Invalid(msg) => write!(f, "job file: {msg}"),
        }
    }
}

impl std::error::Error for JobError {}

pub fn load_job(path: &Path) -> Result<Job, JobError> {
    let text = std::fs::read_to_string(path).map_err(JobError::Io)?;
    parse_job(&text)
}

pub fn parse_job(text: &str) -> Result<Job, JobError> {
    let doc: JobDoc = toml::from_str(text).map_err(JobError::Toml)?;
    let vars = VarTable::new(doc.vars.iter().cloned())
        .map_err(|e| JobError::Invalid(e.to_string()))?;

    let mut basis_polys = Vec::with_capacity(doc.basis.len());
    for (i, src) in doc.basis.iter().enumerate() {
        let p = parse_poly(src, &vars).map_err(|error| JobError::Poly {
            field: format!("basis[{i}]"),
            error,
        })?;
        if p.is_zero() {
            return Err(JobError::Invalid(format!("basis[{i}] is the zero polynomial")));
        }
        basis_polys.push(p);
    }
    let basis = DenomBasis::new(&vars, basis_polys);

    let mut syzygies = Vec::with_capacity(doc.syzygies.len());
    for (si, coeffs_src) in doc.syzygies.iter().enumerate() {
        if coeffs_src.len() != basis.len() {
            return Err(JobError::Invalid(format!(
                "syzygies[{si}] has {} coefficients for a basis of size {}",
                coeffs_src.len(),
                basis.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(coeffs_src.len());
        for (ci, src) in coeffs_src.iter().enumerate() {
            let p = parse_poly(src, &vars).map_err(|error| JobError::Poly {
                field: format!("syzygies[{si}][{ci}]"),
                error,
            })?;
            coeffs.push(p);
        }
        let syzygy = Syzygy::new(&basis, coeffs).map_err(|_| {
            JobError::Invalid(format!(
                "syzygies[{si}] does not satisfy sum g_i * f_i = 0"
            ))
        })?;
        syzygies.push(syzygy);
    }

    let operator = parse_operator(&doc.operator, &vars).map_err(|error| JobError::Poly {
        field: "operator".into(),
        error,
    })?;

    Ok(Job { vars, basis, syzygies, operator })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DETERMINANTAL: &str = r#"
vars = ["u", "v", "w", "x", "y", "z"]
basis = ["v*z - w*y", "w*x - u*z", "u*y - v*x"]
syzygies = [["u", "v", "w"], ["x", "y", "z"]]
operator = "Du^1 Dy^1 Dz^1"
"#;

    #[test]
    fn loads_determinantal_job() {
        let job = parse_job(DETERMINANTAL).unwrap();
        assert_eq!(job.basis.len(), 3);
        assert_eq!(job.syzygies.len(), 2);
        assert_eq!(job.operator.orders(), &[1, 0, 0, 0, 1, 1]);
    }

    #[test]
    fn rejects_non_syzygy() {
        let bad = DETERMINANTAL.replace(r#"["u", "v", "w"]"#, r#"["u", "v", "u"]"#);
        let err = parse_job(&bad).unwrap_err();
        assert!(matches!(err, JobError::Invalid(_)), "{err}");
    }

    #[test]
    fn toml_errors_carry_position() {
        let err = parse_job("vars = [\n\"u\",,\n]").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "{msg}");
    }

    #[test]
    fn bad_polynomial_names_field() {
        let bad = DETERMINANTAL.replace("v*z - w*y", "v*z - *");
        let err = parse_job(&bad).unwrap_err().to_string();
        assert!(err.contains("basis[0]"), "{err}");
    }

    #[test]
    fn zero_basis_entry_rejected() {
        let bad = DETERMINANTAL.replace("v*z - w*y", "u - u");
        let err = parse_job(&bad).unwrap_err().to_string();
        assert!(err.contains("zero polynomial"), "{err}");
    }
}
