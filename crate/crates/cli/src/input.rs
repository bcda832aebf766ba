//! Input file loading: a JSON object with the lattice rows and options.

use anyhow::{bail, Context, Result};
use latquad_core::algebra::ExponentVector;
use latquad_core::fibers::default_survey_degree;
use latquad_core::lattice::LatticeBasis;
use serde::Deserialize;
use std::path::Path;

/// Environment fallback for the survey degree cutoff.
pub const MAX_DEGREE_ENV: &str = "LATQUAD_MAX_DEGREE";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    /// Number of polynomial ring variables.
    pub n: usize,
    /// Two lattice basis rows, each of length `n`.
    pub basis: [Vec<i64>; 2],
    /// Positive grading; derived from the rows when omitted.
    #[serde(default)]
    pub weights: Option<Vec<i64>>,
    /// Survey degree cutoff; flag and environment can override.
    #[serde(default)]
    pub max_degree: Option<i64>,
}

pub fn load(path: &Path) -> Result<InputFile> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let input: InputFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if input.n == 0 {
        bail!("n must be positive");
    }
    for (i, row) in input.basis.iter().enumerate() {
        if row.len() != input.n {
            bail!(
                "basis row {} has length {} but n = {}",
                i + 1,
                row.len(),
                input.n
            );
        }
    }
    if let Some(w) = &input.weights {
        if w.len() != input.n {
            bail!("weights has length {} but n = {}", w.len(), input.n);
        }
    }
    if let Some(d) = input.max_degree {
        if d < 0 {
            bail!("max_degree must be nonnegative, got {d}");
        }
    }
    Ok(input)
}

impl InputFile {
    pub fn rows(&self) -> (ExponentVector, ExponentVector) {
        (
            ExponentVector::signed(self.basis[0].clone()),
            ExponentVector::signed(self.basis[1].clone()),
        )
    }
}

/// Cutoff precedence: command-line flag, then input file, then environment,
/// then a default scaled to the basis entries.
pub fn resolve_max_degree(
    flag: Option<i64>,
    from_file: Option<i64>,
    basis: &LatticeBasis,
) -> Result<i64> {
    if let Some(d) = flag {
        if d < 0 {
            bail!("--max-degree must be nonnegative, got {d}");
        }
        return Ok(d);
    }
    if let Some(d) = from_file {
        return Ok(d);
    }
    if let Ok(raw) = std::env::var(MAX_DEGREE_ENV) {
        let d: i64 = raw
            .trim()
            .parse()
            .with_context(|| format!("{MAX_DEGREE_ENV} must be an integer, got {raw:?}"))?;
        if d < 0 {
            bail!("{MAX_DEGREE_ENV} must be nonnegative, got {d}");
        }
        return Ok(d);
    }
    Ok(default_survey_degree(basis))
}
