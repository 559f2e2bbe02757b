//! Transcribed expansions and their comparison with computed series.
//!
//! A fixture file lists, per `q`-power of a named series, the printed
//! coefficient as an expression in characters and frame variables. In the
//! y-frame a coefficient is a Laurent polynomial; in the x-frame it is a
//! power series in `x`, compared up to `x^x_degree`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{Check, Status};
use crate::charbasis::CharCombination;
use crate::error::{Error, Result};
use crate::expr::evaluate;
use crate::index::{single_particle_fn, TheorySpec};
use crate::plethystic::pexp_graded;
use crate::series::json::render_text;
use crate::series::{EulerExpr, Frame, Grading, HalfInt, Series};

/// Grading by the power of `x` alone.
pub const X_DEGREE: Grading = Grading([0, 0, 1, 0]);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Kim,
    Imamura,
}

impl Comparison {
    pub fn name(self) -> &'static str {
        match self {
            Comparison::Kim => "kim",
            Comparison::Imamura => "imamura",
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.json", self.name())
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Comparison {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kim" => Ok(Comparison::Kim),
            "imamura" => Ok(Comparison::Imamura),
            _ => Err(Error::Parse(format!("unknown comparison {s:?} (expected kim or imamura)"))),
        }
    }
}

/// A value printed elsewhere that is known to differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct External {
    /// `None` when only the existence of the mismatch is on record.
    pub expr: Option<String>,
    #[serde(rename = "ref")]
    pub citation: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    #[default]
    All,
    /// Only the `chi[0,0]` component.
    Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub id: String,
    pub series: String,
    pub q_power: HalfInt,
    #[serde(default)]
    pub part: Part,
    /// The printed coefficient; `None` if nothing is printed at this order.
    pub expr: Option<String>,
    #[serde(rename = "ref")]
    pub citation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub external: Option<External>,
    /// Shown next to our value, e.g. to explain a known misprint.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub version: u32,
    pub comparison: String,
    pub frame: Frame,
    /// Highest power of `x` compared in the x-frame.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_degree: Option<i32>,
    pub entries: Vec<FixtureEntry>,
}

pub fn load_comparison(dir: &Path, comparison: Comparison) -> Result<FixtureFile> {
    let path = dir.join(comparison.file_name());
    let text = std::fs::read_to_string(&path).map_err(|e| Error::MissingFixture(format!("{}: {e}", path.display())))?;
    let file: FixtureFile = serde_json::from_str(&text)?;
    if file.comparison != comparison.name() {
        return Err(Error::Parse(format!("{} holds comparison {:?}", path.display(), file.comparison)));
    }
    if !matches!(file.frame, Frame::Canonical | Frame::X) {
        return Err(Error::Parse(format!("{}: only y- and x-frame fixtures are supported", path.display())));
    }
    Ok(file)
}

/// The Euler expressions whose `PExp` (or difference of `PExp`s) a named
/// series is: `(sign, expression, take pexp)`.
fn series_recipe(name: &str) -> Result<Vec<(i64, EulerExpr, bool)>> {
    let f = |spec| single_particle_fn(spec);
    Ok(match name {
        "f2_reduced" => vec![(1, f(TheorySpec::reduced(2)), false)],
        "chi2_reduced" => vec![(1, f(TheorySpec::reduced(2)), true)],
        "chi2" => vec![(1, f(TheorySpec::full(2)), true)],
        "chi3_reduced" => vec![(1, f(TheorySpec::reduced(3)), true)],
        "chi3_minus_chi2" => vec![(1, f(TheorySpec::full(3)), true), (-1, f(TheorySpec::full(2)), true)],
        _ => return Err(Error::Parse(format!("unknown fixture series {name:?}"))),
    })
}

/// Coefficients of a named series at `q`-powers up to `q_max`, keyed by the
/// doubled frame `q`-power.
fn coefficient_rows(name: &str, frame: Frame, q_max: HalfInt, x_degree: i32) -> Result<BTreeMap<i32, Series>> {
    let recipe = series_recipe(name)?;
    // In the x-frame, grade by D = 2 (power of x) + mu (doubled x-frame
    // q-power): with mu > x_degree + 2 every generator has positive D and
    // the box (q-power <= q_max, x-power <= x_degree) lies below the order.
    let (grading, order) = match frame {
        Frame::X => {
            let mu = x_degree + 4;
            (Grading([0, 0, 2 - 2 * mu, mu]), (2 * x_degree + mu * q_max.twice() + 1) as i64)
        }
        _ => (Grading::Q, q_max.twice() as i64 + 1),
    };
    let mut total: Option<Series> = None;
    for (sign, e, take_pexp) in recipe {
        let f = e.expand_graded(grading, order)?;
        let s = if take_pexp { pexp_graded(&f, order)? } else { f };
        let s = if sign < 0 { -&s } else { s };
        total = Some(match total {
            None => s,
            Some(t) => &t + &s,
        });
    }
    let total = total.expect("recipes are non-empty");
    let mut rows: BTreeMap<i32, Vec<_>> = BTreeMap::new();
    for (m, c) in total.iter() {
        let [a1, a2, third, q2] = frame.coords(*m);
        if q2 > q_max.twice() || (frame == Frame::X && third > x_degree) {
            continue;
        }
        let stripped = frame.monomial([a1, a2, third, 0])?;
        rows.entry(q2).or_default().push((stripped, c.clone()));
    }
    let row_grading = |s: Series| match frame {
        Frame::X => s.regrade(X_DEGREE, Some(x_degree as i64 + 1)),
        _ => Ok(s),
    };
    let mut out = BTreeMap::new();
    for q2 in 0..=q_max.twice() {
        let row = Series::polynomial(rows.remove(&q2).unwrap_or_default());
        out.insert(q2, row_grading(row)?);
    }
    Ok(out)
}

fn scalar_part(row: &Series, frame: Frame) -> Result<Series> {
    let mut c = CharCombination::from_series(row, frame)?;
    for chars in c.terms.values_mut() {
        chars.retain(|label, _| *label == (0, 0));
    }
    c.expand().regrade(row.grading(), row.order())
}

fn row_part(row: &Series, part: Part, frame: Frame) -> Result<Series> {
    match part {
        Part::All => Ok(row.clone()),
        Part::Scalar => scalar_part(row, frame),
    }
}

fn eval_like(text: &str, row: &Series) -> Result<Series> {
    evaluate(text, row.grading(), row.order())
}

/// Characters-and-powers rendering of a coefficient.
pub fn render_row(row: &Series, frame: Frame) -> String {
    let Ok(c) = CharCombination::from_series(row, frame) else {
        return render_text(row, frame);
    };
    match row.order() {
        Some(o) if frame == Frame::X => format!("{c} + O(x^{o})"),
        _ => c.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub id: String,
    pub series: String,
    pub q_power: HalfInt,
    pub ours: String,
    pub printed: String,
    pub status: Status,
    #[serde(rename = "ref")]
    pub citation: String,
}

/// Rows of the computed series, one group per series name, computed in
/// parallel.
fn all_rows(file: &FixtureFile) -> Vec<(String, Result<BTreeMap<i32, Series>>)> {
    let mut q_max: BTreeMap<&str, HalfInt> = BTreeMap::new();
    for e in &file.entries {
        let m = q_max.entry(e.series.as_str()).or_insert(e.q_power);
        *m = (*m).max(e.q_power);
    }
    let x_degree = file.x_degree.unwrap_or(10);
    let names: Vec<(&str, HalfInt)> = q_max.into_iter().collect();
    names
        .par_iter()
        .map(|(name, q)| (name.to_string(), coefficient_rows(name, file.frame, *q, x_degree)))
        .collect()
}

fn compare(entry: &FixtureEntry, row: &Series, frame: Frame) -> Result<(Status, String, String)> {
    let ours = row_part(row, entry.part, frame)?;
    let text = entry.expr.as_deref().unwrap_or("0");
    let printed = eval_like(text, &ours)?;
    let status = if printed == ours { Status::Pass } else { Status::Fail };
    let mut actual = render_row(&ours, frame);
    if let Some(note) = entry.note.as_ref().filter(|_| status == Status::Fail) {
        actual.push_str(&format!(" (note: {note})"));
    }
    Ok((status, text.to_string(), actual))
}

fn external_check(entry: &FixtureEntry, ext: &External, row: &Series, frame: Frame) -> Result<Check> {
    let ours = row_part(row, entry.part, frame)?;
    let id = format!("{}.external", entry.id);
    let expected = ext.expr.clone().unwrap_or_else(|| "(value not printed)".into());
    let status = match &ext.expr {
        Some(text) if eval_like(text, &ours)? == ours => Status::Pass,
        _ => Status::DocumentedDiscrepancy,
    };
    Ok(Check::new(id, status, expected, render_row(&ours, frame), &ext.citation))
}

/// One check per entry, plus one per recorded external mismatch.
pub fn fixture_checks(file: &FixtureFile) -> Vec<Check> {
    let rows: BTreeMap<String, Result<BTreeMap<i32, Series>>> = all_rows(file).into_iter().collect();
    let prefix = &file.comparison;
    let mut out = Vec::new();
    for e in &file.entries {
        let id = format!("{prefix}.{}", e.id);
        let row = match &rows[&e.series] {
            Ok(r) => r[&e.q_power.twice()].clone(),
            Err(err) => {
                out.push(Check::new(id, Status::Fail, e.expr.clone().unwrap_or_default(), format!("error: {err}"), &e.citation));
                continue;
            }
        };
        if e.expr.is_some() {
            match compare(e, &row, file.frame) {
                Ok((status, expected, actual)) => out.push(Check::new(id.clone(), status, expected, actual, &e.citation)),
                Err(err) => out.push(Check::new(id.clone(), Status::Fail, e.expr.clone().unwrap_or_default(), format!("error: {err}"), &e.citation)),
            }
        }
        if let Some(ext) = &e.external {
            match external_check(e, ext, &row, file.frame) {
                Ok(mut c) => {
                    c.id = format!("{prefix}.{}", c.id);
                    out.push(c);
                }
                Err(err) => out.push(Check::new(format!("{id}.external"), Status::Fail, "", format!("error: {err}"), &ext.citation)),
            }
        }
    }
    out
}

/// Side-by-side rows: our coefficient as a character combination next to
/// the printed one.
pub fn comparison_table(file: &FixtureFile) -> Result<Vec<TableRow>> {
    let rows: BTreeMap<String, Result<BTreeMap<i32, Series>>> = all_rows(file).into_iter().collect();
    let mut out = Vec::new();
    for e in &file.entries {
        let row = match &rows[&e.series] {
            Ok(r) => r[&e.q_power.twice()].clone(),
            Err(err) => return Err(Error::Parse(format!("{}: {err}", e.series))),
        };
        if e.expr.is_some() {
            let (status, printed, ours) = compare(e, &row, file.frame)?;
            out.push(TableRow {
                id: e.id.clone(),
                series: e.series.clone(),
                q_power: e.q_power,
                ours,
                printed,
                status,
                citation: e.citation.clone(),
            });
        }
        if let Some(ext) = &e.external {
            let c = external_check(e, ext, &row, file.frame)?;
            out.push(TableRow {
                id: c.id,
                series: e.series.clone(),
                q_power: e.q_power,
                ours: row_part(&row, e.part, file.frame).map(|s| render_row(&s, file.frame))?,
                printed: c.expected,
                status: c.status,
                citation: ext.citation.clone(),
            });
        }
    }
    Ok(out)
}

/// Text rendering of a table, one block per row.
pub fn render_table(rows: &[TableRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!("ROW {} q^{} {}\n", r.id, r.q_power, r.status));
        out.push_str(&format!("  ours    = {}\n", r.ours));
        out.push_str(&format!("  printed = {}\n", r.printed));
        out.push_str(&format!("  ref     = {}\n", r.citation));
    }
    out
}
