//! ASCII dot charts of spectral sequence pages: p rightward, q downward
//! from the top, one dot per basis monomial, optional labels.

use emss_core::series::{Bidegree, Window};
use emss_core::{AlgebraPresentation, Monomial};
use std::collections::BTreeMap;

pub struct ChartOptions {
    pub p_max: u32,
    pub q_window: Option<Window>,
    pub labels: bool,
    pub cell_budget: usize,
}

impl Default for ChartOptions {
    fn default() -> Self {
        ChartOptions {
            p_max: 4,
            q_window: None,
            labels: false,
            cell_budget: 10_000,
        }
    }
}

pub fn render_chart(
    presentation: &AlgebraPresentation,
    opts: &ChartOptions,
) -> Result<String, String> {
    let cells: BTreeMap<Bidegree, Vec<Monomial>> = presentation
        .bigraded_basis(opts.p_max, opts.q_window)
        .map_err(|e| e.to_string())?;
    let (q_lo, q_hi) = match opts.q_window {
        Some(w) => (w.lo, w.hi),
        None => {
            let qs: Vec<i64> = cells.keys().map(|b| b.q).collect();
            match (qs.iter().min(), qs.iter().max()) {
                (Some(&lo), Some(&hi)) => (lo, hi),
                _ => (0, 0),
            }
        }
    };
    let rows = (q_hi - q_lo + 1) as usize;
    let cols = opts.p_max as usize + 1;
    if rows.saturating_mul(cols) > opts.cell_budget {
        return Err(format!(
            "chart of {rows} x {cols} cells exceeds the budget of {}",
            opts.cell_budget
        ));
    }
    // Cell text per (p, q).
    let mut text: BTreeMap<(u32, i64), String> = BTreeMap::new();
    for (b, mons) in &cells {
        let s = if opts.labels {
            mons.iter()
                .map(|m| format!("•{}", presentation.format_monomial(m)))
                .collect::<Vec<_>>()
                .join(" ")
        } else {
            "•".repeat(mons.len())
        };
        text.insert((b.p, b.q), s);
    }
    let mut widths = vec![1usize; cols];
    for ((p, _), s) in &text {
        widths[*p as usize] = widths[*p as usize].max(s.chars().count());
    }
    let q_label_width = [q_lo, q_hi]
        .iter()
        .map(|q| q.to_string().chars().count())
        .max()
        .unwrap_or(1);

    let mut out = String::new();
    // Header row of p values.
    out.push_str(&" ".repeat(q_label_width + 3));
    for (p, w) in widths.iter().enumerate() {
        out.push_str(&format!("{:<width$}  ", p, width = w));
    }
    out.push_str("p\n");
    for q in (q_lo..=q_hi).rev() {
        out.push_str(&format!("{:>width$} | ", q, width = q_label_width));
        for p in 0..cols {
            let s = text
                .get(&(p as u32, q))
                .map(String::as_str)
                .unwrap_or("");
            out.push_str(&format!("{:<width$}  ", s, width = widths[p]));
        }
        out.push('\n');
    }
    out.push_str(&format!("{:>width$} q\n", "", width = q_label_width));
    Ok(out)
}
