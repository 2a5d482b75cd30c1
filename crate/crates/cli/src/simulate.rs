//! The `simulate` subcommand: generate seeded random opinion ensembles and
//! push the same evidence through both fusion routes.
//!
//! The generator is ChaCha8 seeded from the `--seed` value, so a given
//! parameter set reproduces byte-identical output on any platform. Each
//! expert first draws a support set (every label with probability one half,
//! forced nonempty, the bias label always included), then positive weights
//! on the support.
//!
//! The subset-mass route consumes the opinions as drawn: labels outside the
//! support are genuinely impossible. The Gaussian route requires strictly
//! positive opinions, so it sees a smoothed copy — `(1-ε)·p + ε/n` with
//! ε = 1e-3 — in which excluded labels are merely very unlikely. Log ratios
//! are taken against the uniform prior.

use std::process::ExitCode;

use anyhow::{bail, Context};
use evfuse_core::io::{GaussianLogStateDoc, MassDoc};
use evfuse_core::{
    log_opinion_from_probabilistic, Frame, GaussianLogState64, LogOpinionEnsemble64, PriorVector64,
    ProbabilisticEnsemble64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{self, num, vector};

const SMOOTHING: f64 = 1e-3;

fn generate_source(
    frame: &Frame,
    experts: usize,
    bias: Option<usize>,
    rng: &mut ChaCha8Rng,
) -> ProbabilisticEnsemble64 {
    let n = frame.len();
    let members: Vec<(f64, Vec<f64>)> = (0..experts)
        .map(|_| {
            let mut support: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
            if let Some(favored) = bias {
                support[favored] = true;
            }
            if support.iter().all(|&s| !s) {
                support[rng.random_range(0..n)] = true;
            }
            let mut raw: Vec<f64> = support
                .iter()
                .map(|&s| if s { rng.random_range(0.2..1.0) } else { 0.0 })
                .collect();
            if let Some(favored) = bias {
                raw[favored] += 3.0;
            }
            let total: f64 = raw.iter().sum();
            (1.0, raw.into_iter().map(|p| p / total).collect())
        })
        .collect();
    ProbabilisticEnsemble64::new(frame.clone(), members).expect("generated opinions are valid")
}

fn smoothed(opinion: &[f64]) -> Vec<f64> {
    let n = opinion.len() as f64;
    opinion
        .iter()
        .map(|&p| (1.0 - SMOOTHING) * p + SMOOTHING / n)
        .collect()
}

fn log_ensemble(
    source: &ProbabilisticEnsemble64,
    prior: &PriorVector64,
) -> anyhow::Result<LogOpinionEnsemble64> {
    let experts: anyhow::Result<Vec<(f64, Vec<f64>)>> = source
        .experts()
        .iter()
        .map(|e| {
            Ok((
                e.weight,
                log_opinion_from_probabilistic(&smoothed(&e.opinion), prior)?,
            ))
        })
        .collect();
    Ok(LogOpinionEnsemble64::new(source.frame().clone(), experts?)?)
}

#[allow(clippy::too_many_arguments)]
pub fn run(
    seed: u64,
    labels: usize,
    experts: usize,
    sources: usize,
    bias: Option<usize>,
    json: bool,
    max_experts: usize,
) -> anyhow::Result<ExitCode> {
    if !(1..=20).contains(&labels) {
        bail!("--labels must be between 1 and 20, got {labels}");
    }
    if experts == 0 {
        bail!("--experts must be at least 1");
    }
    if sources == 0 {
        bail!("--sources must be at least 1");
    }
    if let Some(favored) = bias {
        if favored >= labels {
            bail!("--bias index {favored} is out of range for {labels} labels");
        }
    }

    let frame = Frame::new((0..labels).map(|i| ((b'a' + i as u8) as char).to_string()))?;
    let ones = PriorVector64::ones(frame.clone());
    let uniform = PriorVector64::uniform(frame.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let drawn: Vec<ProbabilisticEnsemble64> = (0..sources)
        .map(|_| generate_source(&frame, experts, bias, &mut rng))
        .collect();

    // Subset-mass route: product-combine the sources, then project.
    let mut product = drawn[0].clone();
    for source in &drawn[1..] {
        product = product
            .combine_capped(source, &ones, max_experts)
            .context("product of sources grew past the expert cap")?;
    }
    let ds = product.ds_state();
    let (_, ds_top) = report::top_label(&ds);

    // Gaussian route: summarize each source, then add the summaries.
    let mut gaussian: Option<GaussianLogState64> = None;
    for source in &drawn {
        let stats = log_ensemble(source, &uniform)?.stats();
        gaussian = Some(match gaussian {
            None => stats,
            Some(acc) => acc.combine(&stats)?,
        });
    }
    let gaussian = gaussian.expect("at least one source");
    let scores = gaussian.posterior_scores(&uniform)?;
    let gaussian_top = scores[0].0.clone();

    let agreement = ds_top == gaussian_top;

    if json {
        let value = serde_json::json!({
            "seed": seed,
            "ds": MassDoc::from_mass(&ds),
            "gaussian": GaussianLogStateDoc::from_state(&gaussian),
            "ds_top_label": ds_top,
            "gaussian_top_label": gaussian_top,
            "agreement": agreement,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable report")
        );
        return Ok(ExitCode::SUCCESS);
    }

    let mut out = String::new();
    out.push_str(&format!("seed = {seed}\n"));
    out.push_str(&report::frame_line(&frame));
    out.push_str(&format!(
        "labels = {labels}, experts = {experts}, sources = {sources}, bias = {}\n",
        match bias {
            Some(favored) => frame.label(favored).to_string(),
            None => "none".to_string(),
        }
    ));
    out.push_str("subset-mass route:\n");
    out.push_str(&format!("  top label: {ds_top}\n"));
    if ds.is_total_conflict() {
        out.push_str("  TOTAL CONFLICT → m0\n");
    } else {
        let mut table = String::new();
        report::focal_table(&ds, &mut table);
        for line in table.lines() {
            out.push_str(&format!("  {line}\n"));
        }
    }
    out.push_str("gaussian route:\n");
    out.push_str(&format!("  top label: {gaussian_top}\n"));
    out.push_str("  scores:\n");
    for (rank, (label, score)) in scores.iter().enumerate() {
        out.push_str(&format!("    {}. {label} = {}\n", rank + 1, num(*score)));
    }
    out.push_str("  covariance:\n");
    for row in gaussian.cov_rows() {
        out.push_str(&format!("    {}\n", vector(&row)));
    }
    out.push_str(&format!(
        "agreement: {}\n",
        if agreement { "yes" } else { "no" }
    ));
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}
