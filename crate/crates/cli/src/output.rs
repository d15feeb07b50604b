//! Rendering of results as aligned text, CSV or JSON. Every ordering comes
//! from a `BTreeMap` in the core crate, so identical input gives identical
//! bytes (verify timings aside).

use std::collections::BTreeSet;
use std::fmt::Display;
use std::str::FromStr;

use clap::ValueEnum;
use deviant_core::betti::BettiTable;
use deviant_core::deviations::SequencePair;
use deviant_core::series::{DeviationTable, ExponentVector};
use deviant_core::verify::{Criterion, Mode};
use serde_json::{json, Map, Number, Value};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// A result set: named columns with one JSON value per cell, plus optional
/// hand-made renderings that replace the generic ones.
pub struct Rows {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    table: Option<String>,
    csv: Option<String>,
    json: Option<Value>,
}

/// An arbitrary-size integer as a JSON number.
fn big(x: impl Display) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integers are valid JSON numbers"))
}

fn vector(v: &ExponentVector) -> Value {
    Value::Array(v.components().iter().map(|&c| Value::from(c)).collect())
}

fn cell(v: &Value) -> String {
    match v {
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(" "),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Rows {
    fn new(columns: Vec<&'static str>, rows: Vec<Vec<Value>>) -> Self {
        Self { columns, rows, table: None, csv: None, json: None }
    }

    pub fn graded_deviations(t: &DeviationTable) -> Self {
        Self::new(vec!["s", "epsilon"], t.graded.iter().map(|(s, e)| vec![Value::from(*s), big(e)]).collect())
    }

    /// Nonzero entries only.
    pub fn multigraded_deviations(t: &DeviationTable) -> Self {
        Self::new(vec!["v", "epsilon"], t.nonzero().map(|(v, e)| vec![vector(v), big(e)]).collect())
    }

    pub fn gamma_alpha(p: &SequencePair) -> Self {
        let rows = (1..=p.smax).map(|s| vec![Value::from(s), big(p.gamma(s)), big(p.alpha(s))]).collect();
        Self::new(vec!["s", "gamma", "alpha"], rows)
    }

    pub fn multigraded_betti(t: &BettiTable) -> Self {
        let rows = t.entries.iter().map(|((i, v), b)| vec![Value::from(*i), vector(v), Value::from(*b)]).collect();
        Self::new(vec!["i", "v", "beta"], rows)
    }

    /// JSON rows `{i, j, beta}`; CSV and text as a grid with rows `i` and
    /// columns `j`.
    pub fn graded_betti(t: &BettiTable) -> Self {
        let g = t.graded();
        let rows = g.iter().map(|((i, j), b)| vec![Value::from(*i), Value::from(*j), Value::from(*b)]).collect();
        let mut out = Self::new(vec!["i", "j", "beta"], rows);
        let imax = g.keys().map(|k| k.0).max().unwrap_or(0);
        let jmax = g.keys().map(|k| k.1).max().unwrap_or(0);
        let entry = |i, j| g.get(&(i, j)).copied().unwrap_or(0);

        let mut csv = String::from("i");
        for j in 0..=jmax {
            csv.push_str(&format!(",{j}"));
        }
        csv.push('\n');
        for i in 0..=imax {
            csv.push_str(&i.to_string());
            for j in 0..=jmax {
                csv.push_str(&format!(",{}", entry(i, j)));
            }
            csv.push('\n');
        }

        let width = g.values().map(|b| b.to_string().len()).max().unwrap_or(1).max(jmax.to_string().len());
        let mut table = format!("{:<4}", "i\\j");
        for j in 0..=jmax {
            table.push_str(&format!(" {j:>width$}"));
        }
        table.push('\n');
        for i in 0..=imax {
            table.push_str(&format!("{i:<4}"));
            for j in 0..=jmax {
                let e = entry(i, j);
                let s = if e == 0 { ".".to_string() } else { e.to_string() };
                table.push_str(&format!(" {s:>width$}"));
            }
            table.push('\n');
        }
        out.csv = Some(csv);
        out.table = Some(table);
        out
    }

    pub fn generators(gens: &BTreeSet<(usize, u64)>) -> Self {
        let rows = gens.iter().map(|(i, j)| vec![Value::from(*i), Value::from(*j)]).collect();
        let mut out = Self::new(vec!["i", "j"], rows);
        let inner: Vec<String> = gens.iter().map(|(i, j)| format!("({i},{j})")).collect();
        out.table = Some(format!("{{{}}}\n", inner.join(",")));
        out
    }

    pub fn verify(
        mode: Mode,
        characteristic: u64,
        criteria: &[Criterion],
        ratios: &[(usize, Option<f64>, Option<f64>)],
    ) -> Self {
        let rows = criteria
            .iter()
            .map(|c| {
                vec![
                    Value::from(c.number),
                    Value::from(c.title.clone()),
                    Value::from(if c.gating { "theorem" } else { "informational" }),
                    Value::from(c.verdict()),
                    Value::from(c.checked()),
                ]
            })
            .collect();
        let mut out = Self::new(vec!["criterion", "title", "section", "status", "checks"], rows);

        let mut table = format!("characteristic {characteristic}, {mode:?} mode\n\n");
        for (title, gating) in [("theorem checks", true), ("informational checks", false)] {
            let section: Vec<&Criterion> = criteria.iter().filter(|c| c.gating == gating).collect();
            if section.is_empty() {
                continue;
            }
            table.push_str(&format!("{title}\n"));
            for c in section {
                table.push_str(&format!("{c}\n"));
            }
            table.push('\n');
        }
        if !ratios.is_empty() {
            table.push_str("growth of gamma_s and alpha_s\n");
            for (s, rg, ra) in ratios {
                let f = |x: &Option<f64>| x.map_or("-".to_string(), |r| format!("{r:.4}"));
                table.push_str(&format!("  s={s:<3} gamma_s/gamma_(s-1) {:>8}  alpha_s/alpha_(s-1) {:>8}\n", f(rg), f(ra)));
            }
        }
        out.table = Some(table);
        out.json = Some(json!({
            "characteristic": characteristic,
            "mode": mode,
            "passed": criteria.iter().filter(|c| c.gating).all(|c| c.passed()),
            "criteria": criteria.iter().map(|c| json!({
                "criterion": c.number,
                "title": c.title,
                "gating": c.gating,
                "status": c.verdict(),
                "checks": c.checked(),
                "elapsed_ms": c.elapsed.as_millis() as u64,
                "reports": c.reports,
                "notes": c.notes,
            })).collect::<Vec<_>>(),
            "ratios": ratios.iter().map(|(s, g, a)| json!({"s": s, "gamma_ratio": g, "alpha_ratio": a})).collect::<Vec<_>>(),
        }));
        out
    }

    fn objects(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let m: Map<String, Value> = self.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect();
                    Value::Object(m)
                })
                .collect(),
        )
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let v = self.json.clone().unwrap_or_else(|| self.objects());
                format!("{}\n", serde_json::to_string_pretty(&v).expect("values serialize"))
            }
            Format::Csv => self.csv.clone().unwrap_or_else(|| {
                let mut s = self.columns.join(",");
                s.push('\n');
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|v| cell(v).replace(',', ";")).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }),
            Format::Table => self.table.clone().unwrap_or_else(|| {
                let text: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|k| text.iter().map(|r| r[k].len()).chain([self.columns[k].len()]).max().unwrap_or(0))
                    .collect();
                let line = |cells: Vec<&str>| {
                    let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                    format!("{}\n", parts.join("  ").trim_end())
                };
                let mut s = line(self.columns.clone());
                for r in &text {
                    s.push_str(&line(r.iter().map(String::as_str).collect()));
                }
                s
            }),
        }
    }
}
