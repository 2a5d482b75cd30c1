//! The `experts` subcommand: combine ensembles over the product space,
//! project to a belief state, and optionally verify that per-file projection
//! followed by normalized combination reaches the same state.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use evfuse_core::io::{EvidenceDocument, MassDoc};
use evfuse_core::{BooleanEnsemble64, MassFunction64, ProbabilisticEnsemble64};

use crate::docs::{load_documents, load_priors, shared_frame, LoadedDocument};
use crate::report::{self, num};
use crate::{Pipeline, EXIT_TOTAL_CONFLICT};

enum Combined {
    Boolean(BooleanEnsemble64),
    Probabilistic(ProbabilisticEnsemble64),
}

impl Combined {
    fn total_weight(&self) -> f64 {
        match self {
            Combined::Boolean(e) => e.total_weight(),
            Combined::Probabilistic(e) => e.total_weight(),
        }
    }

    fn expert_count(&self) -> usize {
        match self {
            Combined::Boolean(e) => e.experts().len(),
            Combined::Probabilistic(e) => e.experts().len(),
        }
    }

    fn no_opinion_count(&self) -> usize {
        match self {
            Combined::Boolean(e) => e.no_opinion_count(),
            Combined::Probabilistic(e) => e.no_opinion_count(),
        }
    }

    fn belief_state(&self) -> MassFunction64 {
        match self {
            Combined::Boolean(e) => e.to_mass_statistics().normalize(),
            Combined::Probabilistic(e) => e.ds_state(),
        }
    }
}

fn boolean_view(loaded: &LoadedDocument) -> anyhow::Result<BooleanEnsemble64> {
    let ensemble = match &loaded.document {
        EvidenceDocument::BooleanEnsemble(doc) => doc.to_ensemble()?,
        EvidenceDocument::ProbabilisticEnsemble(doc) => doc.to_ensemble::<f64>()?.to_boolean(),
        other => bail!(
            "{}: the boolean pipeline needs ensemble documents, found kind {}",
            loaded.path,
            other.kind()
        ),
    };
    Ok(ensemble)
}

fn probabilistic_view(loaded: &LoadedDocument) -> anyhow::Result<ProbabilisticEnsemble64> {
    match &loaded.document {
        EvidenceDocument::ProbabilisticEnsemble(doc) => Ok(doc.to_ensemble()?),
        other => bail!(
            "{}: the probabilistic pipeline needs probabilistic_ensemble documents, found kind {}",
            loaded.path,
            other.kind()
        ),
    }
}

/// Belief state of a single document: mass statistics for boolean experts,
/// the full projection for probabilistic ones.
fn file_belief_state(loaded: &LoadedDocument) -> anyhow::Result<MassFunction64> {
    match &loaded.document {
        EvidenceDocument::BooleanEnsemble(doc) => {
            Ok(doc.to_ensemble::<f64>()?.to_mass_statistics().normalize())
        }
        EvidenceDocument::ProbabilisticEnsemble(doc) => Ok(doc.to_ensemble::<f64>()?.ds_state()),
        other => bail!(
            "{}: unsupported document kind {}",
            loaded.path,
            other.kind()
        ),
    }
}

pub fn run(
    files: &[PathBuf],
    pipeline: Pipeline,
    priors_path: Option<&Path>,
    verify: bool,
    json: bool,
    tolerance: f64,
    max_experts: usize,
) -> anyhow::Result<ExitCode> {
    let documents = load_documents(files)?;
    let frame = shared_frame(&documents)?;
    let priors = load_priors(priors_path, &frame)?;

    let combined = match pipeline {
        Pipeline::Boolean => {
            let mut acc = boolean_view(&documents[0])?;
            for loaded in &documents[1..] {
                acc = acc
                    .combine_capped(&boolean_view(loaded)?, max_experts)
                    .with_context(|| format!("combining {}", loaded.path))?;
            }
            Combined::Boolean(acc)
        }
        Pipeline::Probabilistic => {
            let mut acc = probabilistic_view(&documents[0])?;
            for loaded in &documents[1..] {
                acc = acc
                    .combine_capped(&probabilistic_view(loaded)?, &priors, max_experts)
                    .with_context(|| format!("combining {}", loaded.path))?;
            }
            Combined::Probabilistic(acc)
        }
    };
    let state = combined.belief_state();

    // The two routes of the representation: project-then-combine must agree
    // with combine-then-project.
    let mut verify_line = None;
    if verify {
        let mut folded: Option<MassFunction64> = None;
        for loaded in &documents {
            let next = file_belief_state(loaded)?;
            folded = Some(match folded {
                None => next,
                Some(acc) => acc.combine_normalized(&next)?,
            });
        }
        let folded = folded.expect("at least one file is required");
        let deviation = state
            .masses()
            .iter()
            .zip(folded.masses())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if deviation <= tolerance {
            verify_line = Some("THEOREM OK".to_string());
        } else {
            bail!("THEOREM VIOLATION: routes disagree by {deviation:e} (tolerance {tolerance:e})");
        }
    }

    let total_conflict = state.is_total_conflict();
    let exit = if total_conflict {
        ExitCode::from(EXIT_TOTAL_CONFLICT)
    } else {
        ExitCode::SUCCESS
    };

    if json {
        print!(
            "{}",
            EvidenceDocument::Mass(MassDoc::from_mass(&state)).to_json()
        );
        return Ok(exit);
    }

    let mut out = String::new();
    out.push_str(&report::frame_line(&frame));
    out.push_str(&format!(
        "pipeline: {}\n",
        match pipeline {
            Pipeline::Boolean => "boolean",
            Pipeline::Probabilistic => "probabilistic",
        }
    ));
    out.push_str(&format!("files: {}\n", files.len()));
    out.push_str(&format!(
        "total weight = {}\n",
        num(combined.total_weight())
    ));
    out.push_str(&format!(
        "no-opinion experts: {} of {}\n",
        combined.no_opinion_count(),
        combined.expert_count()
    ));
    if total_conflict {
        out.push_str("TOTAL CONFLICT → m0\n");
    } else {
        report::focal_table(&state, &mut out);
    }
    if let Some(line) = verify_line {
        out.push_str(&line);
        out.push('\n');
    }
    print!("{out}");
    Ok(exit)
}
