//! Deterministic report formatting: six decimals everywhere, frame order for
//! labels, ascending bitmask order for subsets.

use evfuse_core::{Frame, MassFunction64, Subset};

/// Focal elements below this mass are omitted from report tables.
pub const FOCAL_DISPLAY_THRESHOLD: f64 = 1e-12;

pub fn num(value: f64) -> String {
    let text = format!("{value:.6}");
    // Collapse negative zero and sub-display negatives to a clean zero.
    if text == "-0.000000" {
        "0.000000".to_string()
    } else {
        text
    }
}

pub fn vector(values: &[f64]) -> String {
    let entries: Vec<String> = values.iter().map(|&v| num(v)).collect();
    format!("[{}]", entries.join(", "))
}

/// The per-focal-element table: mass, belief, plausibility, commonality.
/// The empty set is reported separately by callers that allow conflict.
pub fn focal_table(mass: &MassFunction64, out: &mut String) {
    out.push_str("subset  m  Bel  Pl  Q\n");
    for (subset, value) in mass.focal_elements() {
        if subset.is_empty() || value <= FOCAL_DISPLAY_THRESHOLD {
            continue;
        }
        out.push_str(&format!(
            "{}  {}  {}  {}  {}\n",
            mass.frame().format_subset(subset),
            num(value),
            num(mass.belief(subset)),
            num(mass.plausibility(subset)),
            num(mass.commonality(subset)),
        ));
    }
}

/// Per-label belief/plausibility ranking used to pick a headline label for a
/// belief state: highest singleton belief, then highest singleton
/// plausibility, then frame order.
pub fn top_label(mass: &MassFunction64) -> (usize, String) {
    let frame = mass.frame();
    let mut best: Option<(usize, f64, f64)> = None;
    for i in 0..frame.len() {
        let singleton = frame.singleton(i);
        let bel = mass.belief(singleton);
        let pl = mass.plausibility(singleton);
        let better = match best {
            None => true,
            Some((_, best_bel, best_pl)) => bel > best_bel || (bel == best_bel && pl > best_pl),
        };
        if better {
            best = Some((i, bel, pl));
        }
    }
    let (index, _, _) = best.expect("frames are never empty");
    (index, frame.label(index).to_string())
}

pub fn frame_line(frame: &Frame) -> String {
    format!("frame: {}\n", frame.labels().join(","))
}

/// Empty-set mass, used for conflict lines.
pub fn conflict_mass(mass: &MassFunction64) -> f64 {
    mass.mass(Subset::EMPTY)
}
