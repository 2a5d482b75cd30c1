//! The `combine` subcommand: left-fold mass documents under a conjunctive
//! rule. The fold order is argument order; associativity makes any order
//! agree within round-off, and the fixed order makes output bytes
//! reproducible.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use evfuse_core::io::{EvidenceDocument, MassDoc};
use evfuse_core::{Error, MassFunction64};

use crate::docs::{load_documents, shared_frame};
use crate::report::{self, num};
use crate::{Engine, Mode, EXIT_TOTAL_CONFLICT};

fn ensure_normalized(mass: &MassFunction64, path: &str) -> anyhow::Result<()> {
    if mass.is_normalized() {
        Ok(())
    } else {
        Err(Error::NotNormalized(report::conflict_mass(mass)))
            .with_context(|| format!("{path}: normalized mode needs normalized inputs"))
    }
}

fn fold_step(
    acc: &MassFunction64,
    next: &MassFunction64,
    mode: Mode,
    engine: Engine,
) -> anyhow::Result<MassFunction64> {
    Ok(match (mode, engine) {
        (Mode::Unnormalized, Engine::Naive) => acc.combine_unnormalized(next)?,
        (Mode::Unnormalized, Engine::Fast) => acc.fast_combine_unnormalized(next)?,
        (Mode::Normalized, Engine::Naive) => acc.combine_normalized(next)?,
        (Mode::Normalized, Engine::Fast) => acc.fast_combine_unnormalized(next)?.normalize(),
    })
}

pub fn run(files: &[PathBuf], mode: Mode, engine: Engine, json: bool) -> anyhow::Result<ExitCode> {
    let documents = load_documents(files)?;
    let frame = shared_frame(&documents)?;

    let mut masses = Vec::with_capacity(documents.len());
    for loaded in &documents {
        let EvidenceDocument::Mass(doc) = &loaded.document else {
            bail!(
                "{}: combine needs mass documents, found kind {}",
                loaded.path,
                loaded.document.kind()
            );
        };
        let mass: MassFunction64 = doc
            .to_mass()
            .with_context(|| format!("validating {}", loaded.path))?;
        if mode == Mode::Normalized {
            ensure_normalized(&mass, &loaded.path)?;
        }
        masses.push(mass);
    }

    let mut result = masses[0].clone();
    for next in &masses[1..] {
        result = fold_step(&result, next, mode, engine)?;
    }

    let total_conflict = mode == Mode::Normalized && result.is_total_conflict();

    if json {
        print!(
            "{}",
            EvidenceDocument::Mass(MassDoc::from_mass(&result)).to_json()
        );
        return Ok(if total_conflict {
            ExitCode::from(EXIT_TOTAL_CONFLICT)
        } else {
            ExitCode::SUCCESS
        });
    }

    let mut out = String::new();
    out.push_str(&report::frame_line(&frame));
    out.push_str(&format!(
        "mode: {}\n",
        match mode {
            Mode::Normalized => "normalized",
            Mode::Unnormalized => "unnormalized",
        }
    ));
    out.push_str(&format!(
        "engine: {}\n",
        match engine {
            Engine::Naive => "naive",
            Engine::Fast => "fast",
        }
    ));
    out.push_str(&format!("files: {}\n", files.len()));
    if total_conflict {
        out.push_str("TOTAL CONFLICT → m0\n");
        print!("{out}");
        return Ok(ExitCode::from(EXIT_TOTAL_CONFLICT));
    }
    if mode == Mode::Unnormalized {
        out.push_str(&format!("m(∅) = {}\n", num(report::conflict_mass(&result))));
    }
    report::focal_table(&result, &mut out);
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}
