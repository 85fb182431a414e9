use std::collections::BTreeMap;
use std::fmt::Write as _;

use alcove_csp::affine_shi::{
    all_parking_functions, analyze_shi, dilation_hasse, enumerate_dilation, expected_region_count,
    parking_csp as check_parking_csp, AffinePermutation,
};
use alcove_csp::bijact::{
    q_trace, successful_partition_trace, tree_rank, w_inverse, w_map, PartitionedWord,
};
use alcove_csp::cores::{abacus, boundary_word, core_to_word, word_to_core, y_hasse, Partition};
use alcove_csp::sieve::{csp_check, w_poly, CspReport};
use alcove_csp::words::{enumerate_w, Word};
use alcove_csp::xposet::{extended_word, phi, phi_orbits, x_hasse};
use anyhow::{bail, ensure, Context, Result};
use clap::ValueEnum;
use serde_json::json;

use crate::table::Table;
use crate::{Format, Model, Poset, Report};

/// Largest `m^k` handled without `--force`.
const WORD_BUDGET: u128 = 200_000;
const TREE_BUDGET: u128 = 100_000;
const REGION_BUDGET: u128 = 2_500;
const PARKING_BUDGET: u128 = 5_000_000;

pub struct Options {
    pub format: Format,
    pub force: bool,
}

impl Options {
    fn guard(&self, what: &str, size: u128, budget: u128) -> Result<()> {
        if size > budget && !self.force {
            bail!("{what} has {size} elements, above the limit of {budget}; pass --force to run anyway");
        }
        Ok(())
    }

    fn unsupported(&self, command: &str) -> anyhow::Error {
        let name = self
            .format
            .to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default();
        anyhow::anyhow!("--format {name} is not available for `{command}`")
    }
}

fn power(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

fn joined<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn json_text(value: serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("json values serialize");
    text.push('\n');
    text
}

pub fn orbits(opts: &Options, m: u32, k: usize) -> Result<Report> {
    opts.guard("X(m,k)", power(m.into(), k), WORD_BUDGET)?;
    let orbits = phi_orbits(m, k)?;
    let images: Vec<Vec<Word>> = orbits
        .iter()
        .map(|o| o.iter().map(w_map).collect())
        .collect();
    let extended = |x: &Word| extended_word(x).grouped();
    let text = match opts.format {
        Format::Table => {
            let mut table = Table::new(&["size", "X words", "W words", "extended words"]);
            for (orbit, image) in orbits.iter().zip(&images) {
                let ext: Vec<String> = orbit.iter().map(extended).collect();
                table.push(vec![
                    orbit.len().to_string(),
                    joined(orbit, " "),
                    joined(image, " "),
                    ext.join(" / "),
                ]);
            }
            let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
            for o in &orbits {
                *by_size.entry(o.len()).or_default() += 1;
            }
            let summary: Vec<String> = by_size
                .iter()
                .rev()
                .map(|(size, count)| format!("{count} of size {size}"))
                .collect();
            format!(
                "{}{} orbits: {}\n",
                table.render(),
                orbits.len(),
                summary.join(", ")
            )
        }
        Format::Json => json_text(json!({
            "m": m,
            "k": k,
            "orbits": orbits.iter().zip(&images).map(|(orbit, image)| json!({
                "size": orbit.len(),
                "words": orbit.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "extended": orbit.iter().map(extended).collect::<Vec<_>>(),
                "images": image.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(["orbit", "position", "word", "extended", "image"])?;
            for (id, (orbit, image)) in orbits.iter().zip(&images).enumerate() {
                for (pos, (x, u)) in orbit.iter().zip(image).enumerate() {
                    writer.write_record([
                        id.to_string(),
                        pos.to_string(),
                        x.to_string(),
                        extended(x),
                        u.to_string(),
                    ])?;
                }
            }
            String::from_utf8(writer.into_inner()?)?
        }
        Format::Dot => return Err(opts.unsupported("orbits")),
    };
    Ok(Report::ok(text))
}

fn csp_text(opts: &Options, command: &str, title: String, report: &CspReport) -> Result<Report> {
    let text = match opts.format {
        Format::Table => {
            let verdict = if report.passed() {
                "cyclic sieving holds at every c".to_string()
            } else {
                format!(
                    "cyclic sieving FAILS at c = {}",
                    joined(&report.mismatches(), ", ")
                )
            };
            format!("{title}\n{}{verdict}\n", report.to_table())
        }
        Format::Json => format!("{}\n", report.to_json()),
        _ => return Err(opts.unsupported(command)),
    };
    Ok(Report {
        text,
        ok: report.passed(),
    })
}

pub fn csp(opts: &Options, m: u32, k: usize) -> Result<Report> {
    opts.guard("W(m,k)", power(m.into(), k), WORD_BUDGET)?;
    let words = enumerate_w(m, k)?;
    let poly = w_poly(m, k);
    let report = csp_check(&words, Word::rotate_left, k as u64 + 1, &poly)?;
    let title = format!(
        "W({m},{k}) under rotation: |W| = {}, order {}, polynomial {poly}",
        words.len(),
        k + 1
    );
    csp_text(opts, "csp", title, &report)
}

pub fn map(opts: &Options, m: u32, k: usize, from: Model, value: &str) -> Result<Report> {
    opts.guard("the dilation", power(m.into(), k), WORD_BUDGET)?;
    let dilation = enumerate_dilation(k + 1, m)?;
    let x = match from {
        Model::Word => Word::parse(m, value)?,
        Model::Core => core_to_word(&value.parse::<Partition>()?, m, k)?,
        Model::W => {
            let u = Word::parse(m, value)?;
            ensure!(
                u.len() == k + 1,
                "a word of W({m},{k}) has {} letters",
                k + 1
            );
            w_inverse(&u)?
        }
        Model::Alcove => {
            let perm: AffinePermutation = value.parse()?;
            dilation
                .iter()
                .find(|a| a.perm == perm)
                .with_context(|| format!("{perm} is not an alcove of the {m}-fold dilation"))?
                .word
                .clone()
        }
    };
    ensure!(x.len() == k, "a word of X({m},{k}) has {k} letters");
    let core = word_to_core(&x, m, k)?;
    let bw = boundary_word(&core, m, k)?;
    let display = abacus(&bw, k)?;
    let rows: Vec<String> = display.to_string().lines().map(str::to_string).collect();
    let alcove = dilation
        .iter()
        .find(|a| a.word == x)
        .expect("every word labels an alcove")
        .perm
        .clone();
    let image = w_map(&x);
    let text = match opts.format {
        Format::Table => {
            let mut out = String::new();
            writeln!(out, "word      {x}")?;
            writeln!(out, "phi       {}", phi(&x))?;
            writeln!(out, "core      {core}")?;
            writeln!(out, "boundary  {}", bw.grouped(k + 1))?;
            for (i, row) in rows.iter().enumerate() {
                let label = if i == 0 { "abacus" } else { "" };
                writeln!(out, "{label:<8}  {row}")?;
            }
            writeln!(out, "w-word    {image}")?;
            writeln!(out, "alcove    {alcove}")?;
            out
        }
        Format::Json => json_text(json!({
            "word": x.to_string(),
            "phi": phi(&x).to_string(),
            "core": core.to_string(),
            "boundary": bw.to_string(),
            "abacus": rows,
            "w_word": image.to_string(),
            "alcove": alcove.window(),
        })),
        _ => return Err(opts.unsupported("map")),
    };
    Ok(Report::ok(text))
}

fn trace_table(pw: &PartitionedWord) -> (Table, Word) {
    let (steps, out) = q_trace(pw);
    let mut table = Table::new(&["i", "t", "blocks", "x"]);
    for (i, step) in steps.iter().enumerate() {
        let x = if step.output.is_empty() {
            "·".to_string()
        } else {
            step.output.to_string()
        };
        table.push(vec![
            (i + 1).to_string(),
            step.label.to_string(),
            step.state.to_string(),
            x,
        ]);
    }
    (table, out.x)
}

pub fn invert(opts: &Options, m: u32, input: &str) -> Result<Report> {
    if input.contains('|') {
        let pw = PartitionedWord::parse(m, input)?;
        let (steps, out) = q_trace(&pw);
        let text = match opts.format {
            Format::Table => {
                let (table, x) = trace_table(&pw);
                let verdict = if out.leftover.is_empty() {
                    "successful".to_string()
                } else {
                    format!("stops with {} left", out.leftover)
                };
                format!("read-off of {pw}\n{}x = {x} ({verdict})\n", table.render())
            }
            Format::Json => json_text(json!({
                "partition": pw.to_string(),
                "trace": steps.iter().map(|s| json!({
                    "t": s.label,
                    "blocks": s.state.to_string(),
                    "x": s.output.to_string(),
                })).collect::<Vec<_>>(),
                "x": out.x.to_string(),
                "leftover": out.leftover.to_string(),
            })),
            _ => return Err(opts.unsupported("invert")),
        };
        return Ok(Report::ok(text));
    }

    let word = Word::parse(m, input)?;
    let rounds = successful_partition_trace(&word);
    let last = &rounds.last().expect("at least one round").current;
    let preimage = if !word.is_empty() && word.residue_sum() == m - 1 {
        Some(w_inverse(&word)?)
    } else {
        None
    };
    let text = match opts.format {
        Format::Table => {
            let mut search = Table::new(&["round", "partition", "left after read-off"]);
            for (i, r) in rounds.iter().enumerate() {
                search.push(vec![
                    (i + 1).to_string(),
                    r.current.to_string(),
                    r.leftover.to_string(),
                ]);
            }
            let (trace, x) = trace_table(last);
            let mut out = format!(
                "partition search for {word} (m = {m})\n{}\nread-off of {last}\n{}x = {x}\n",
                search.render(),
                trace.render()
            );
            match &preimage {
                Some(p) => writeln!(out, "preimage in X({m},{}) = {p}", word.len() - 1)?,
                None => writeln!(out, "no preimage: the letters do not sum to m - 1")?,
            }
            out
        }
        Format::Json => json_text(json!({
            "word": word.to_string(),
            "rounds": rounds.iter().map(|r| json!({
                "partition": r.current.to_string(),
                "leftover": r.leftover.to_string(),
            })).collect::<Vec<_>>(),
            "successful": last.to_string(),
            "preimage": preimage.map(|p| p.to_string()),
        })),
        _ => return Err(opts.unsupported("invert")),
    };
    Ok(Report::ok(text))
}

pub fn tree(opts: &Options, m: u32, rank: usize) -> Result<Report> {
    opts.guard("the tree rank", power(m.into(), rank), TREE_BUDGET)?;
    let ranks = (0..=rank)
        .map(|r| tree_rank(m, r))
        .collect::<alcove_csp::Result<Vec<_>>>()?;
    let text = match opts.format {
        Format::Table => {
            let mut out = String::new();
            for (r, nodes) in ranks.iter().enumerate() {
                writeln!(out, "{r}  {}", joined(nodes, "  "))?;
            }
            out
        }
        Format::Json => json_text(json!({
            "m": m,
            "ranks": ranks
                .iter()
                .map(|nodes| nodes.iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })),
        _ => return Err(opts.unsupported("tree")),
    };
    Ok(Report::ok(text))
}

pub fn hasse(opts: &Options, m: u32, k: usize, poset: Poset) -> Result<Report> {
    opts.guard("the poset", power(m.into(), k), WORD_BUDGET)?;
    let (dot, json_body, edges) = match poset {
        Poset::X => {
            let h = x_hasse(m, k)?;
            (
                h.to_dot("X"),
                h.to_json(),
                h.edges.iter().map(ToString::to_string).collect(),
            )
        }
        Poset::Y => {
            let h = y_hasse(m, k);
            (
                h.to_dot("Y"),
                h.to_json(),
                h.edges.iter().map(ToString::to_string).collect(),
            )
        }
        Poset::Dilation => {
            let h = dilation_hasse(k + 1, m)?;
            (
                h.to_dot("Dilation"),
                h.to_json(),
                h.edges
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<String>>(),
            )
        }
    };
    let text = match opts.format {
        Format::Dot => dot,
        Format::Json => format!("{json_body}\n"),
        Format::Table => edges.iter().map(|e| format!("{e}\n")).collect(),
        Format::Csv => return Err(opts.unsupported("hasse")),
    };
    Ok(Report::ok(text))
}

pub fn shi(opts: &Options, k: usize, m: u32) -> Result<Report> {
    opts.guard(
        "the Shi arrangement",
        expected_region_count(k, m) as u128,
        REGION_BUDGET,
    )?;
    let analysis = analyze_shi(k, m)?;
    let text = match opts.format {
        Format::Table => {
            let mut table = Table::new(&[
                "region",
                "signature",
                "minimal alcove",
                "pak-stanley",
                "coset",
            ]);
            for r in &analysis.regions {
                table.push(vec![
                    r.id.to_string(),
                    r.signature.to_string(),
                    r.minimal_alcove.to_string(),
                    analysis.pak_stanley[r.id].to_string(),
                    analysis.coset[r.id].to_string(),
                ]);
            }
            format!(
                "{}-Shi arrangement in R^{k}: {} regions, dilation translated by ({})\n{}",
                m,
                analysis.regions.len(),
                joined(&analysis.translation, ", "),
                table.render()
            )
        }
        Format::Csv => analysis.to_csv(),
        Format::Json => json_text(json!({
            "k": k,
            "m": m,
            "translation": analysis.translation,
            "regions": analysis.regions.iter().map(|r| json!({
                "region_id": r.id,
                "signature": r.signature.to_string(),
                "minimal_alcove": r.minimal_alcove.window(),
                "pak_stanley": analysis.pak_stanley[r.id].to_string(),
                "coset_label": analysis.coset[r.id].to_string(),
            })).collect::<Vec<_>>(),
        })),
        Format::Dot => return Err(opts.unsupported("shi")),
    };
    Ok(Report::ok(text))
}

pub fn parking_csp(opts: &Options, k: usize, m: u32) -> Result<Report> {
    let candidates = power(u128::from(m) * k.saturating_sub(1) as u128 + 1, k);
    opts.guard("the parking-function search", candidates, PARKING_BUDGET)?;
    let report = check_parking_csp(k, m)?;
    let title = format!(
        "{m}-parking functions of length {k} under rotation: {} of them, order {k}",
        all_parking_functions(k, m).len()
    );
    csp_text(opts, "parking-csp", title, &report)
}
