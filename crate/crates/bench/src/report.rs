use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::stats::{summarize, ModeSummary};
use crate::{BenchError, CaseReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Format {
    Csv,
    Markdown,
    Svg,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            "svg" => Ok(Format::Svg),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

fn reference_names(reports: &[CaseReport]) -> Vec<String> {
    let names: BTreeSet<&String> = reports.iter().flat_map(|r| r.references.keys()).collect();
    names.into_iter().cloned().collect()
}

/// One row per case. Reference columns are the sorted union over the corpus
/// and are left empty where a case has no figure.
pub fn render_csv(reports: &[CaseReport]) -> Result<String, BenchError> {
    let refs = reference_names(reports);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = [
        "name",
        "taxonomy",
        "json_size",
        "gzip_size",
        "schema_driven_size",
        "schema_less_size",
        "driven_vs_json",
        "less_vs_json",
        "driven_vs_gzip",
        "less_vs_gzip",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    header.extend(refs.iter().map(|r| format!("ref_{r}")));
    w.write_record(&header)?;
    for r in reports {
        let mut row = vec![
            r.name.clone(),
            r.taxonomy.clone(),
            r.json_size.to_string(),
            r.gzip_size.to_string(),
            r.schema_driven_size.to_string(),
            r.schema_less_size.to_string(),
            r.driven_vs_json().to_string(),
            r.less_vs_json().to_string(),
            r.driven_vs_gzip().to_string(),
            r.less_vs_gzip().to_string(),
        ];
        row.extend(
            refs.iter()
                .map(|name| r.references.get(name).map(u64::to_string).unwrap_or_default()),
        );
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| BenchError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is built from UTF-8 strings"))
}

fn summary_table(out: &mut String, title: &str, s: &ModeSummary) {
    let _ = writeln!(out, "### {title}\n");
    let _ = writeln!(out, "| Statistic | Reduction |");
    let _ = writeln!(out, "|---|---|");
    let _ = writeln!(out, "| Maximum | {:.1}% |", s.maximum);
    let _ = writeln!(out, "| Minimum | {:.1}% |", s.minimum);
    let _ = writeln!(out, "| Range | {:.1}% |", s.range);
    let _ = writeln!(out, "| Median | {:.1}% |", s.median);
    let _ = writeln!(out, "| Average | {:.1}% |", s.average);
    let _ = writeln!(out, "| Negative cases | {} / {} |\n", s.negatives, s.total);
}

pub fn render_markdown(reports: &[CaseReport]) -> String {
    let mut out = String::from("# Size benchmark\n\n");
    if let Some(summary) = summarize(reports) {
        out.push_str("## Reduction against minified JSON\n\n");
        summary_table(&mut out, "Schema-driven", &summary.schema_driven);
        summary_table(&mut out, "Schema-less", &summary.schema_less);
    }
    out.push_str("## Cases\n\n");
    out.push_str("| Case | Taxonomy | JSON | gzip | Schema-driven | Schema-less | Driven vs JSON | Less vs JSON |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    for r in reports {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {}% | {}% |",
            r.name,
            r.taxonomy,
            r.json_size,
            r.gzip_size,
            r.schema_driven_size,
            r.schema_less_size,
            r.driven_vs_json(),
            r.less_vs_json()
        );
    }
    out
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

const BAR_WIDTH: u64 = 36;
const GAP: u64 = 14;
const PLOT_HEIGHT: u64 = 200;
const MARGIN: u64 = 40;

/// Bar chart of every size known for one case.
pub fn render_svg(r: &CaseReport) -> String {
    let mut bars: Vec<(String, u64, &str)> = vec![
        ("JSON".into(), r.json_size, "#7f7f7f"),
        ("gzip".into(), r.gzip_size, "#bcbd22"),
        ("Schema-driven".into(), r.schema_driven_size, "#1f77b4"),
        ("Schema-less".into(), r.schema_less_size, "#ff7f0e"),
    ];
    bars.extend(r.references.iter().map(|(k, v)| (k.clone(), *v, "#c5b0d5")));

    let peak = bars.iter().map(|b| b.1).max().unwrap_or(0).max(1);
    let width = 2 * MARGIN + bars.len() as u64 * (BAR_WIDTH + GAP);
    let height = PLOT_HEIGHT + 2 * MARGIN + 60;
    let base = MARGIN + PLOT_HEIGHT;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="20" font-size="14">{} ({})</text>"#,
        escape_xml(&r.name),
        escape_xml(&r.taxonomy)
    );
    let _ = writeln!(
        out,
        r#"<line x1="{MARGIN}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#,
        width - MARGIN
    );
    for (i, (label, size, colour)) in bars.iter().enumerate() {
        let x = MARGIN + GAP / 2 + i as u64 * (BAR_WIDTH + GAP);
        let h = size * PLOT_HEIGHT / peak;
        let cx = x + BAR_WIDTH / 2;
        let _ = writeln!(
            out,
            r#"<rect x="{x}" y="{}" width="{BAR_WIDTH}" height="{h}" fill="{colour}"/>"#,
            base - h
        );
        let _ = writeln!(
            out,
            r#"<text x="{cx}" y="{}" text-anchor="middle">{size}</text>"#,
            base - h - 4
        );
        let _ = writeln!(
            out,
            r#"<text x="{cx}" y="{}" text-anchor="end" transform="rotate(-45 {cx} {})">{}</text>"#,
            base + 14,
            base + 14,
            escape_xml(label)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Writes the requested formats into `dir` and returns the created paths.
///
/// CSV goes to `results.csv`, Markdown to `summary.md`, and each case gets
/// `<name>.svg`.
pub fn write_reports(reports: &[CaseReport], dir: &Path, formats: &[Format]) -> Result<Vec<PathBuf>, BenchError> {
    fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
    let mut written = Vec::new();
    let mut put = |name: String, contents: String| -> Result<(), BenchError> {
        let path = dir.join(name);
        fs::write(&path, contents).map_err(|e| BenchError::io(&path, e))?;
        written.push(path);
        Ok(())
    };
    let mut formats = formats.to_vec();
    formats.sort();
    formats.dedup();
    for format in formats {
        match format {
            Format::Csv => put("results.csv".into(), render_csv(reports)?)?,
            Format::Markdown => put("summary.md".into(), render_markdown(reports))?,
            Format::Svg => {
                for r in reports {
                    put(format!("{}.svg", r.name), render_svg(r))?;
                }
            }
        }
    }
    Ok(written)
}
