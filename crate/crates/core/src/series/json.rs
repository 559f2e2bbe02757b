//! Canonical JSON and text renderings of series.
//!
//! `exp` holds the four coordinates of the named frame (the last one is the
//! doubled `q`-power of that frame). `q_order_times_2` is the doubled
//! truncation order in the canonical `q`, or `null` for an exact series.
//! Series truncated by another grading carry an extra `grading` field.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::frame::Frame;
use super::monomial::{Grading, Monomial};
use super::truncated::{Coeff, Series};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: [i32; 4],
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub frame: Frame,
    pub q_order_times_2: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<[i32; 4]>,
    pub terms: Vec<TermJson>,
}

/// Terms of `s` keyed by frame coordinates, sorted by `(q, lex)` in that frame.
fn frame_terms(s: &Series, frame: Frame) -> Vec<([i32; 4], &Coeff)> {
    let mut v: Vec<([i32; 4], &Coeff)> = s.iter().map(|(m, c)| (frame.coords(*m), c)).collect();
    v.sort_by_key(|(c, _)| (c[3], c[0], c[1], c[2]));
    v
}

impl SeriesJson {
    pub fn from_series(s: &Series, frame: Frame) -> Self {
        let terms = frame_terms(s, frame)
            .into_iter()
            .map(|(exp, c)| TermJson { exp, num: c.numer().to_string(), den: c.denom().to_string() })
            .collect();
        SeriesJson {
            frame,
            q_order_times_2: s.order(),
            grading: (!s.grading().is_q()).then_some(s.grading().0),
            terms,
        }
    }

    pub fn to_series(&self) -> Result<Series> {
        let mut map = BTreeMap::new();
        for t in &self.terms {
            let parse = |x: &str| {
                x.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer {x:?} in series JSON")))
            };
            let den = parse(&t.den)?;
            if den.sign() == num_bigint::Sign::NoSign {
                return Err(Error::Parse("zero denominator in series JSON".into()));
            }
            let m = self.frame.monomial(t.exp)?;
            if map.insert(m, Coeff::new(parse(&t.num)?, den)).is_some() {
                return Err(Error::Parse(format!("duplicate exponent {:?} in series JSON", t.exp)));
            }
        }
        let grading = self.grading.map(Grading).unwrap_or(Grading::Q);
        Ok(Series::from_parts(map, grading, self.q_order_times_2))
    }
}

pub fn to_json_string(s: &Series, frame: Frame) -> String {
    serde_json::to_string_pretty(&SeriesJson::from_series(s, frame)).expect("series JSON is serialisable")
}

pub fn from_json_str(text: &str) -> Result<Series> {
    let j: SeriesJson = serde_json::from_str(text)?;
    j.to_series()
}

/// Human-readable rendering in a frame, e.g. `y*q + 2*y^-1*q^2 + O(q^3)`.
pub fn render_text(s: &Series, frame: Frame) -> String {
    let mut out = String::new();
    for (i, (exp, c)) in frame_terms(s, frame).into_iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let m: Monomial = frame.monomial(exp).expect("coordinates came from a monomial");
        let mono = frame.render_monomial(m);
        if mono == "1" {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    if let Some(o) = s.order() {
        if s.grading().is_q() {
            // the order is always the y-frame q-degree, which differs from
            // the q coordinate of the other frames
            let o = super::HalfInt::from_twice(o as i32);
            if frame == Frame::Canonical {
                out.push_str(&format!(" + O(q^{o})"));
            } else {
                out.push_str(&format!(" + O(q^{o}, y-frame)"));
            }
        } else {
            out.push_str(&format!(" + O(deg {o})"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{ratio, HalfInt};

    #[test]
    fn json_round_trip_in_every_frame() {
        let s = Series::polynomial([
            (Monomial::new(1, -1, 2, 3), ratio(-7, 3)),
            (Monomial::new(0, 0, 1, 2), ratio(1, 1)),
            (Monomial::ONE, ratio(5, 2)),
        ])
        .truncate_q(HalfInt::int(4));
        for frame in Frame::ALL {
            let text = to_json_string(&s, frame);
            assert_eq!(from_json_str(&text).unwrap(), s, "{frame}");
        }
    }

    #[test]
    fn json_layout() {
        let s = Series::from_ints([(Monomial::y() * Monomial::q_int(1), 2)]).truncate_q(HalfInt::int(2));
        let v: serde_json::Value = serde_json::from_str(&to_json_string(&s, Frame::Canonical)).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "frame": "y",
                "q_order_times_2": 4,
                "terms": [{"exp": [0, 0, 1, 2], "num": "2", "den": "1"}]
            })
        );
    }

    #[test]
    fn text_in_t_frame() {
        let s = Series::from_ints([(Monomial::new(0, 0, 1, 2), 1), (Monomial::new(0, 0, -1, 4), -1)]);
        assert_eq!(render_text(&s, Frame::T), "-r^-1*q^(3/2) + r*q^(3/2)");
    }
}
