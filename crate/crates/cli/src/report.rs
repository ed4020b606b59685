//! Text renderings of decider results. The JSON twins come straight from the
//! serde impls in the core crate.

use std::fmt::Write;

use serde::Serialize;
use subindep_core::independence::{GroupReport, Prediction, Side, Verdict, Witness};
use subindep_core::morphisms::Refusal;

pub fn render_pairs(pairs: &[(usize, usize)]) -> String {
    pairs.iter().map(|(x, y)| format!("{x} ↦ {y}")).collect::<Vec<_>>().join(", ")
}

pub fn render_map(map: &[usize]) -> String {
    render_pairs(&map.iter().copied().enumerate().collect::<Vec<_>>())
}

pub fn render_blocks(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_refusal(r: &Refusal) -> String {
    match r {
        Refusal::NonFunctional { element, first, second } => {
            format!("no joint extension: {element} would have to map to both {first} and {second}")
        }
        Refusal::Relation { relation, tuple, mode } => {
            format!("the forced map breaks `{relation}` on {tuple:?} ({mode} mode)")
        }
    }
}

pub fn subalgebra_text(v: &Verdict) -> String {
    let stats = v.stats();
    let mut out = format!(
        "{}; {} hom pairs checked ({} x {} endomorphisms)\n",
        if v.is_independent() { "independent" } else { "not independent" },
        stats.pairs_examined,
        stats.left_candidates,
        stats.right_candidates
    );
    if let Some(Witness::Subalgebra { alpha, beta, refusal }) = v.witness() {
        writeln!(out, "witness:").unwrap();
        writeln!(out, "  alpha: {}", render_pairs(alpha)).unwrap();
        writeln!(out, "  beta: {}", render_pairs(beta)).unwrap();
        writeln!(out, "  {}", render_refusal(refusal)).unwrap();
    }
    out
}

pub fn congruence_text(v: &Verdict) -> String {
    let stats = v.stats();
    let verdict = if v.is_independent() { "congruence-independent" } else { "not congruence-independent" };
    let mut out = match &stats.shortcut {
        Some(reason) => format!("{verdict}; {reason}\n"),
        None => format!(
            "{verdict}; {} congruence pairs checked ({} x {} congruences)\n",
            stats.pairs_examined, stats.left_candidates, stats.right_candidates
        ),
    };
    if let Some(Witness::Congruence { theta_a, theta_b, side, x, y }) = v.witness() {
        let side = match side {
            Side::A => "A",
            Side::B => "B",
        };
        writeln!(out, "witness:").unwrap();
        writeln!(out, "  theta_A: {}", render_blocks(theta_a)).unwrap();
        writeln!(out, "  theta_B: {}", render_blocks(theta_b)).unwrap();
        writeln!(out, "  every common extension relates {x} and {y}, which theta_{side} keeps apart").unwrap();
    }
    out
}

pub fn group_text(r: &GroupReport) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let prediction = match r.prediction {
        Prediction::Independent => "independent",
        Prediction::NotIndependent => "not independent",
        Prediction::NoPrediction => "none",
    };
    format!(
        "trivial intersection: {}; A normal in join: {}; B normal in join: {}; prediction: {}\n",
        yes(r.trivial_intersection),
        yes(r.a_normal),
        yes(r.b_normal),
        prediction
    )
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report values serialize");
    let mut out = serde_json::to_string_pretty(&value).expect("report values serialize");
    out.push('\n');
    out
}
