//! The `logfuse` subcommand: sum Gaussian log-opinion states and report the
//! prior-biased label ranking and the uncertainty ellipsoid.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use evfuse_core::io::{EvidenceDocument, GaussianLogStateDoc};
use evfuse_core::logop::SINGULARITY_RATIO;
use evfuse_core::GaussianLogState64;

use crate::docs::{load_documents, load_priors, shared_frame};
use crate::report::{self, num, vector};

pub fn run(files: &[PathBuf], priors_path: Option<&Path>, json: bool) -> anyhow::Result<ExitCode> {
    let documents = load_documents(files)?;
    let frame = shared_frame(&documents)?;
    let priors = load_priors(priors_path, &frame)?;

    let mut combined: Option<GaussianLogState64> = None;
    for loaded in &documents {
        let EvidenceDocument::GaussianLogState(doc) = &loaded.document else {
            bail!(
                "{}: logfuse needs gaussian_log_state documents, found kind {}",
                loaded.path,
                loaded.document.kind()
            );
        };
        let state = doc
            .to_state()
            .with_context(|| format!("validating {}", loaded.path))?;
        combined = Some(match combined {
            None => state,
            Some(acc) => acc.combine(&state)?,
        });
    }
    let state = combined.expect("at least one file is required");

    if json {
        print!(
            "{}",
            EvidenceDocument::GaussianLogState(GaussianLogStateDoc::from_state(&state)).to_json()
        );
        return Ok(ExitCode::SUCCESS);
    }

    let axes = state.ellipsoid_axes()?;
    let largest = axes.first().map(|(v, _)| *v).unwrap_or(0.0);
    let smallest = axes.last().map(|(v, _)| *v).unwrap_or(0.0);
    let singular = smallest <= SINGULARITY_RATIO * largest;

    let mut out = String::new();
    out.push_str(&report::frame_line(&frame));
    out.push_str(&format!("files: {}\n", files.len()));
    out.push_str(&format!("weight = {}\n", num(state.weight())));
    out.push_str("mean:\n");
    for (label, value) in frame.labels().iter().zip(state.mean()) {
        out.push_str(&format!("  {label} = {}\n", num(*value)));
    }
    out.push_str("covariance:\n");
    for row in state.cov_rows() {
        out.push_str(&format!("  {}\n", vector(&row)));
    }
    out.push_str("posterior scores:\n");
    for (rank, (label, score)) in state.posterior_scores(&priors)?.iter().enumerate() {
        out.push_str(&format!("  {}. {label} = {}\n", rank + 1, num(*score)));
    }
    out.push_str("axes:\n");
    for (value, direction) in &axes {
        out.push_str(&format!(
            "  eigenvalue = {}  semi-axis = {}  direction = {}\n",
            num(*value),
            num(value.sqrt()),
            vector(direction),
        ));
    }
    if singular {
        out.push_str("SINGULAR COVARIANCE\n");
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}
