//! Loading and frame-checking of evidence documents.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use evfuse_core::io::{EvidenceDocument, PriorDoc};
use evfuse_core::{Frame, PriorVector64};

/// A document together with the path it came from, for error reporting.
pub struct LoadedDocument {
    pub path: String,
    pub document: EvidenceDocument,
}

pub fn load_documents(paths: &[impl AsRef<Path>]) -> anyhow::Result<Vec<LoadedDocument>> {
    paths
        .iter()
        .map(|path| {
            let path = path.as_ref();
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let document = EvidenceDocument::from_json(&text)
                .with_context(|| format!("parsing {}", path.display()))?;
            Ok(LoadedDocument {
                path: path.display().to_string(),
                document,
            })
        })
        .collect()
}

/// Every document of one invocation must carry the same frame: same labels,
/// same order. Returns that shared frame.
pub fn shared_frame(documents: &[LoadedDocument]) -> anyhow::Result<Frame> {
    let first = &documents[0];
    for other in &documents[1..] {
        if other.document.frame_labels() != first.document.frame_labels() {
            bail!(
                "frame mismatch: {} has frame [{}] but {} has frame [{}]",
                other.path,
                other.document.frame_labels().join(","),
                first.path,
                first.document.frame_labels().join(","),
            );
        }
    }
    Ok(Frame::new(first.document.frame_labels().to_vec())?)
}

/// Loads a prior document and checks it against the invocation frame;
/// all-ones when no path is given.
pub fn load_priors(path: Option<&Path>, frame: &Frame) -> anyhow::Result<PriorVector64> {
    let Some(path) = path else {
        return Ok(PriorVector64::ones(frame.clone()));
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc = PriorDoc::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    if doc.frame != frame.labels() {
        bail!(
            "frame mismatch: {} has frame [{}] but the evidence frame is [{}]",
            path.display(),
            doc.frame.join(","),
            frame.labels().join(","),
        );
    }
    Ok(doc.to_priors()?)
}
