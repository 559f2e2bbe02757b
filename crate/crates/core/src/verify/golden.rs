//! Golden expansions: canonical JSON files written by the engine and
//! compared as exact series on every run.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::report::{Check, Status};
use crate::error::{Error, Result};
use crate::index::{gk_zw_form, index_chi, minimal_index, single_particle_f1, single_particle_fn, sugra_single_particle, TheorySpec};
use crate::series::json::SeriesJson;
use crate::series::{Frame, HalfInt, Series};

pub struct GoldenSpec {
    pub name: &'static str,
    pub frame: Frame,
    pub citation: &'static str,
    pub build: fn() -> Result<Series>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenFile {
    pub version: u32,
    pub name: String,
    #[serde(rename = "ref")]
    pub citation: String,
    pub series: SeriesJson,
}

pub const GOLDEN_VERSION: u32 = 1;

pub fn golden_specs() -> Vec<GoldenSpec> {
    vec![
        GoldenSpec {
            name: "f1_t",
            frame: Frame::T,
            citation: "single-particle index of one fivebrane, t-frame",
            build: || single_particle_f1().expand(HalfInt::int(6)),
        },
        GoldenSpec {
            name: "f2_reduced_y",
            frame: Frame::Canonical,
            citation: "single-particle index of the A1 theory, y-frame",
            build: || single_particle_fn(TheorySpec::reduced(2)).expand(HalfInt::int(6)),
        },
        GoldenSpec {
            name: "chi2_reduced_y",
            frame: Frame::Canonical,
            citation: "PExp of the A1 single-particle index, y-frame",
            build: || index_chi(TheorySpec::reduced(2), HalfInt::int(5)),
        },
        GoldenSpec {
            name: "chi2_reduced_x",
            frame: Frame::X,
            citation: "PExp of the A1 single-particle index, x = q y frame",
            build: || index_chi(TheorySpec::reduced(2), HalfInt::int(5)),
        },
        GoldenSpec {
            name: "chi1_t",
            frame: Frame::T,
            citation: "index of one fivebrane, t-frame",
            build: || index_chi(TheorySpec::full(1), HalfInt::int(5)),
        },
        GoldenSpec {
            name: "f_sugra_t",
            frame: Frame::T,
            citation: "supergravity single-particle index, t-frame",
            build: || sugra_single_particle().expand(HalfInt::int(6)),
        },
        GoldenSpec {
            name: "g2_zw",
            frame: Frame::Zw,
            citation: "weight-2 single-particle index in z_i, w_a coordinates",
            build: || gk_zw_form(2)?.expand(HalfInt::int(8)),
        },
        GoldenSpec {
            name: "minimal3_zw",
            frame: Frame::Zw,
            citation: "minimal reduction z3, w2 -> 0 of the gl(3) index, total degree 6",
            build: || minimal_index(3, 6),
        },
    ]
}

fn path_for(dir: &Path, name: &str) -> PathBuf {
    dir.join("golden").join(format!("{name}.json"))
}

pub fn golden_json(spec: &GoldenSpec) -> Result<String> {
    let file = GoldenFile {
        version: GOLDEN_VERSION,
        name: spec.name.to_string(),
        citation: spec.citation.to_string(),
        series: SeriesJson::from_series(&(spec.build)()?, spec.frame),
    };
    let mut text = serde_json::to_string_pretty(&file)?;
    text.push('\n');
    Ok(text)
}

/// Regenerate every golden file under `dir/golden`.
pub fn write_golden(dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir.join("golden"))?;
    let mut out = Vec::new();
    for spec in golden_specs() {
        let path = path_for(dir, spec.name);
        std::fs::write(&path, golden_json(&spec)?)?;
        out.push(path);
    }
    Ok(out)
}

fn load(dir: &Path, name: &str) -> Result<GoldenFile> {
    let path = path_for(dir, name);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::MissingFixture(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// One check per golden file: the stored series equals the recomputed one
/// and the stored frame matches.
pub fn golden_check(dir: &Path, spec: &GoldenSpec) -> Check {
    let id = format!("golden.{}", spec.name);
    let run = || -> Result<Check> {
        let stored = load(dir, spec.name)?;
        let series = stored.series.to_series()?;
        let fresh = (spec.build)()?;
        let mut c = Check::series_eq(&id, &series, &fresh, spec.frame, &stored.citation);
        if stored.version != GOLDEN_VERSION || stored.series.frame != spec.frame {
            c.status = Status::Fail;
            c.actual = format!("version {} frame {}; {}", stored.version, stored.series.frame, c.actual);
        }
        Ok(c)
    };
    run().unwrap_or_else(|e| Check::new(&id, Status::Fail, "stored golden series", format!("error: {e}"), spec.citation))
}
