//! Rendering behind the command-line tool.

use std::fmt::Write as _;

use itertools::Itertools;
use serde_json::json;

use crate::admissible::{enumerate_adm_bounded, DEFAULT_MAX_G};
use crate::affine::AffineElement;
use crate::alcove::element_to_alcove;
use crate::error::{Error, Result};
use crate::finite::{eo_prank, eo_supersingular, final_to_nu, mw_to_phi, SignedPermutation};
use crate::prank0::{
    a_statistic, dim_prank0, lemma85_gap, length_formula, maximal_prank0, SgPermutation, MAX_FIXED_POINT_FREE_G,
};
use crate::strata::{max_superspecial, strata_table_bounded, supersingular_dim_bounds, StratumRecord};
use crate::verify::run_suite;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Adm,
    Eo,
    Strata,
    Prank0,
    Dims,
    Verify,
    Figure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Json,
    Dot,
    Svg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportConfig {
    pub g: usize,
    pub command: Command,
    pub format: Format,
    pub suite: Option<String>,
    pub max_g: usize,
}

impl ReportConfig {
    pub fn new(command: Command, g: usize, format: Format) -> Self {
        Self { g, command, format, suite: None, max_g: DEFAULT_MAX_G }
    }

    pub fn validate(&self) -> Result<()> {
        if self.g == 0 {
            return Err(Error::ZeroRank);
        }
        let allowed: &[Format] = match self.command {
            Command::Adm => &[Format::Tsv, Format::Json, Format::Dot],
            Command::Figure => &[Format::Svg],
            Command::Eo | Command::Strata | Command::Prank0 | Command::Dims | Command::Verify => {
                &[Format::Tsv, Format::Json]
            }
        };
        if !allowed.contains(&self.format) {
            return Err(Error::Unsupported(format!("format {:?} for {:?}", self.format, self.command)));
        }
        if self.command == Command::Figure && self.g != 2 {
            return Err(Error::Unsupported("the figure is only drawn for g = 2".into()));
        }
        if self.command == Command::Verify && self.suite.is_none() {
            return Err(Error::Unsupported("verify needs --suite".into()));
        }
        Ok(())
    }
}

/// Exit status and rendered artifact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// `0` on success, `2` when a verification suite fails.
    pub status: i32,
    pub output: String,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { status: 0, output }
    }
}

/// Usage errors come back as `Err` (exit status 1).
pub fn run(config: &ReportConfig) -> Result<Outcome> {
    config.validate()?;
    let g = config.g;
    match config.command {
        Command::Adm => match config.format {
            Format::Dot => export_hasse_bounded(g, config.max_g).map(Outcome::ok),
            Format::Json => enumerate_adm_bounded(g, config.max_g)?.to_json().map(Outcome::ok),
            _ => adm_tsv(g, config.max_g).map(Outcome::ok),
        },
        Command::Eo => eo_table(g, config.format).map(Outcome::ok),
        Command::Strata => {
            let rows = strata_table_bounded(g, config.max_g)?;
            Ok(Outcome::ok(match config.format {
                Format::Json => to_json(&rows)?,
                _ => strata_tsv(&rows),
            }))
        }
        Command::Prank0 => prank0_table(g, config.format).map(Outcome::ok),
        Command::Dims => dims(g, config.format).map(Outcome::ok),
        Command::Verify => {
            let suite = config.suite.as_deref().unwrap_or_default();
            let reports = run_suite(suite, g, config.max_g)?;
            let passed = reports.iter().all(|r| r.passed);
            let output = match config.format {
                Format::Json => to_json(&reports)?,
                _ => reports
                    .iter()
                    .map(|r| {
                        let verdict = if r.passed { "PASS" } else { "FAIL" };
                        format!("{}\t{}\tg<={}\tchecked={}\n", verdict, r.suite, r.g, r.checked)
                    })
                    .collect(),
            };
            Ok(Outcome { status: if passed { 0 } else { 2 }, output })
        }
        Command::Figure => figure_g2().map(Outcome::ok),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| Error::Internal(e.to_string()))
}

fn word(x: &AffineElement) -> Result<String> {
    Ok(x.reduced_word()?.to_string())
}

fn finite_word(w: &SignedPermutation) -> Result<String> {
    let word = AffineElement::finite(w.clone()).reduced_word()?;
    Ok(if word.letters.is_empty() { "id".into() } else { word.to_string() })
}

fn braces<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    format!("{{{}}}", items.into_iter().map(|i| i.to_string()).join(","))
}

fn adm_tsv(g: usize, max_g: usize) -> Result<String> {
    let poset = enumerate_adm_bounded(g, max_g)?;
    let mut out = String::from("index\tword\tlength\tlambda\tw\n");
    for (i, x) in poset.elements.iter().enumerate() {
        writeln!(out, "{i}\t{}\t{}\t{:?}\t{}", word(x)?, poset.lengths[i], x.lambda().entries(), x.w()).unwrap();
    }
    Ok(out)
}

fn eo_table(g: usize, format: Format) -> Result<String> {
    if g > 10 {
        return Err(Error::BoundExceeded { g, bound: 10 });
    }
    let mut rows = Vec::new();
    for w in SignedPermutation::enumerate_final(g) {
        rows.push(json!({
            "w": w.to_string(),
            "word": finite_word(&w)?,
            "length": w.length(),
            "nu": final_to_nu(&w)?.values(),
            "phi": mw_to_phi(&w).values(),
            "p_rank": eo_prank(&w)?,
            "supersingular": eo_supersingular(&w)?,
        }));
    }
    if format == Format::Json {
        return to_json(&rows);
    }
    let mut out = String::from("word\tlength\tnu\tphi\tp_rank\tsupersingular\tw\n");
    for r in &rows {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r["word"].as_str().unwrap_or_default(),
            r["length"],
            r["nu"],
            r["phi"],
            r["p_rank"],
            r["supersingular"],
            r["w"].as_str().unwrap_or_default()
        )
        .unwrap();
    }
    Ok(out)
}

/// Columns `word, length, p_rank, superspecial, support, es`.
pub fn strata_tsv(rows: &[StratumRecord]) -> String {
    let mut out = String::from("word\tlength\tp_rank\tsuperspecial\tsupport\tes\n");
    for r in rows {
        let es = r.es.as_ref().map_or_else(|| "unknown".to_string(), braces);
        writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}", r.word, r.dim, r.p_rank, r.superspecial, braces(&r.support), es)
            .unwrap();
    }
    out
}

fn prank0_table(g: usize, format: Format) -> Result<String> {
    if g > MAX_FIXED_POINT_FREE_G {
        return Err(Error::BoundExceeded { g, bound: MAX_FIXED_POINT_FREE_G });
    }
    let mut rows = Vec::new();
    for s in SgPermutation::all(g) {
        let x = maximal_prank0(&s);
        rows.push(json!({
            "sigma": s.to_string(),
            "inversions": s.inversions(),
            "fixed_points": s.fixed_points(),
            "a": a_statistic(&s),
            "a_inverse": a_statistic(&s.inverse()),
            "gap": lemma85_gap(&s),
            "length_formula": length_formula(&s),
            "length": x.length(),
            "word": word(&x)?,
        }));
    }
    if format == Format::Json {
        return to_json(&rows);
    }
    let cols = ["sigma", "inversions", "fixed_points", "a", "a_inverse", "gap", "length_formula", "length", "word"];
    let mut out = cols.join("\t") + "\n";
    for r in &rows {
        let line = cols.iter().map(|c| r[c].as_str().map_or_else(|| r[c].to_string(), str::to_string)).join("\t");
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

/// `A_I`, p-rank zero, superspecial maximum and the supersingular bounds.
pub fn dims_values(g: usize) -> Result<(usize, usize, usize, (usize, usize))> {
    let a_i = g * (g + 1) / 2;
    let prank0 = dim_prank0(g)?;
    let (_, ssp) = max_superspecial(g)?;
    Ok((a_i, prank0, ssp, supersingular_dim_bounds(g)))
}

fn dims(g: usize, format: Format) -> Result<String> {
    let (a_i, prank0, ssp, (lo, hi)) = dims_values(g)?;
    if format == Format::Json {
        return to_json(&json!({"g": g, "A_I": a_i, "prank0": prank0, "ssp_max": ssp, "S_I": [lo, hi]}));
    }
    Ok(format!("A_I: {a_i}, prank0: {prank0}, ssp-max: {ssp}, S_I: [{lo},{hi}]\n"))
}

pub fn export_hasse(g: usize) -> Result<String> {
    export_hasse_bounded(g, DEFAULT_MAX_G)
}

/// Rank-graded Hasse diagram; superspecial strata are filled.
pub fn export_hasse_bounded(g: usize, max_g: usize) -> Result<String> {
    let poset = enumerate_adm_bounded(g, max_g)?;
    let rows = strata_table_bounded(g, max_g)?;
    let mut out = format!("digraph adm_g{g} {{\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (len, group) in &(0..poset.len()).chunk_by(|&i| poset.lengths[i]) {
        writeln!(out, "  {{ rank=same; // length {len}").unwrap();
        for i in group {
            let r = &rows[i];
            let style =
                if r.superspecial { ", style=filled, fillcolor=\"gray75\", class=\"superspecial\"" } else { "" };
            writeln!(out, "    n{i} [label=\"{}\\np={}\"{style}];", r.word, r.p_rank).unwrap();
        }
        out.push_str("  }\n");
    }
    for &(lo, hi) in &poset.covers {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

const SCALE: i32 = 60;

/// Twice the projection `p(x)(k) = (x(k) - x(2g+1-k))/2` to the `Sp_4` plane.
fn plane(v: &[i32]) -> (i32, i32) {
    (v[0] - v[3], v[1] - v[2])
}

fn svg_point((a, b): (i32, i32)) -> String {
    format!("{},{}", a * SCALE, -b * SCALE)
}

/// The 13 alcoves of `Adm(μ)` for `g = 2`, p-rank zero ones in dark gray,
/// the origin in black and the orbit `W·μ` in gray.
///
/// An alcove is drawn as the triangle on the projections of its first three
/// vertices; the later vertices project onto the same three points.
pub fn figure_g2() -> Result<String> {
    let rows = strata_table_bounded(2, 2)?;
    let mut out = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-200 -200 400 400\" width=\"400\" height=\"400\">\n",
    );
    out.push_str("  <g stroke=\"black\" stroke-width=\"1\">\n");
    for r in &rows {
        let alcove = element_to_alcove(&r.x);
        let points = alcove.rows()[..3].iter().map(|v| svg_point(plane(v))).join(" ");
        let (class, fill) = if r.p_rank == 0 { ("alcove prank0", "#555555") } else { ("alcove", "#eeeeee") };
        writeln!(out, "    <polygon class=\"{class}\" data-word=\"{}\" fill=\"{fill}\" points=\"{points}\"/>", r.word)
            .unwrap();
    }
    out.push_str("  </g>\n");
    out.push_str("  <circle class=\"origin\" cx=\"0\" cy=\"0\" r=\"5\" fill=\"black\"/>\n");
    for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        // W·μ projects to (±1/2, ±1/2)
        writeln!(
            out,
            "  <circle class=\"orbit\" cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"gray\"/>",
            a * SCALE / 2,
            -b * SCALE / 2
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
