//! Variable frames: integer lattice maps between the canonical exponent
//! vectors and the coordinates of each named presentation.
//!
//! | frame | coordinates | relation to canonical |
//! |-------|-------------|-----------------------|
//! | `y`   | `(y1, y2, y, 2q)` | identity |
//! | `t`   | `(t1, t2, r, 2q)` | `y1 = 1/t1`, `y2 = t1/t2`, `y3 = t2`, `y = q^(1/2) r` |
//! | `x`   | `(y1, y2, x, 2q)` | `x = q y` |
//! | `zw`  | `(z1, z2, w1, 2q)` | `z_i = y_i q`, `w1 = y q`, `w2 = q^2/y` |
//!
//! In the zw frame `z3 = q^3/(z1 z2)` and `w2 = q^3/w1` are derived, so the
//! last coordinate is the power of `q` left after pulling out `z1, z2, w1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::monomial::{write_half_power, write_power, Monomial};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Frame {
    #[serde(rename = "y")]
    Canonical,
    #[serde(rename = "t")]
    T,
    #[serde(rename = "x")]
    X,
    #[serde(rename = "zw")]
    Zw,
}

impl Frame {
    pub const ALL: [Frame; 4] = [Frame::Canonical, Frame::T, Frame::X, Frame::Zw];

    pub fn name(self) -> &'static str {
        match self {
            Frame::Canonical => "y",
            Frame::T => "t",
            Frame::X => "x",
            Frame::Zw => "zw",
        }
    }

    /// Names of the four coordinates; the last one is always a `q`-power
    /// stored doubled.
    pub fn coordinate_names(self) -> [&'static str; 4] {
        match self {
            Frame::Canonical => ["y1", "y2", "y", "q"],
            Frame::T => ["t1", "t2", "r", "q"],
            Frame::X => ["y1", "y2", "x", "q"],
            Frame::Zw => ["z1", "z2", "w1", "q"],
        }
    }

    /// Canonical monomial to frame coordinates.
    pub fn coords(self, m: Monomial) -> [i32; 4] {
        let Monomial { a1, a2, b, c2 } = m;
        match self {
            Frame::Canonical => [a1, a2, b, c2],
            Frame::T => [a2 - a1, -a2, b, c2 + b],
            Frame::X => [a1, a2, b, c2 - 2 * b],
            Frame::Zw => [a1, a2, b, c2 - 2 * (a1 + a2 + b)],
        }
    }

    /// Frame coordinates back to the canonical lattice.
    pub fn monomial(self, c: [i32; 4]) -> Result<Monomial> {
        let m = match self {
            Frame::Canonical => Monomial::from_coords(c),
            Frame::T => {
                let a2 = -c[1];
                let a1 = a2 - c[0];
                Monomial::new(a1, a2, c[2], c[3] - c[2])
            }
            Frame::X => Monomial::new(c[0], c[1], c[2], c[3] + 2 * c[2]),
            Frame::Zw => Monomial::new(c[0], c[1], c[2], c[3] + 2 * (c[0] + c[1] + c[2])),
        };
        // The four maps are unimodular; the round trip guards against edits
        // to the tables above.
        if self.coords(m) != c {
            return Err(Error::NonLatticeImage(c, self.name()));
        }
        Ok(m)
    }

    /// Render one monomial with this frame's variable names.
    pub fn render_monomial(self, m: Monomial) -> String {
        let mut parts = Vec::new();
        if self == Frame::Zw {
            match zw_presentation(m) {
                Ok(e) => {
                    for (name, k) in ["z1", "z2", "z3", "w1", "w2"].iter().zip(e) {
                        write_power(&mut parts, name, k);
                    }
                }
                Err(_) => {
                    let c = self.coords(m);
                    for (name, k) in ["z1", "z2", "w1"].iter().zip(c) {
                        write_power(&mut parts, name, k);
                    }
                    write_half_power(&mut parts, "q", c[3]);
                }
            }
        } else {
            let names = self.coordinate_names();
            let c = self.coords(m);
            for i in 0..3 {
                write_power(&mut parts, names[i], c[i]);
            }
            write_half_power(&mut parts, names[3], c[3]);
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Frame {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "y" | "canonical" => Ok(Frame::Canonical),
            "t" => Ok(Frame::T),
            "x" => Ok(Frame::X),
            "zw" => Ok(Frame::Zw),
            _ => Err(Error::Parse(format!("unknown frame {s:?} (expected y, t, x or zw)"))),
        }
    }
}

/// Re-express frame coordinates of one frame in another.
pub fn frame_convert(c: [i32; 4], from: Frame, to: Frame) -> Result<[i32; 4]> {
    Ok(to.coords(from.monomial(c)?))
}

/// Exponents `(z1, z2, z3, w1, w2)` of a monomial in the five zw variables.
///
/// Because `z1 z2 z3 = w1 w2 = q^3` the presentation is unique only up to
/// trading `z1 z2 z3` for `w1 w2`. Among presentations with non-negative
/// `z3` and `w2` exponents this returns the one with every exponent
/// non-negative and the largest `z3` exponent; if no presentation has all
/// exponents non-negative it keeps `z3, w2 >= 0` and minimises the total
/// negative part. Fails if the monomial is not in the zw sublattice or
/// needs a negative power of `z3` or `w2`.
pub fn zw_presentation(m: Monomial) -> Result<[i32; 5]> {
    let c = Frame::Zw.coords(m);
    if c[3] % 6 != 0 {
        return Err(Error::NonLatticeImage(c, "zw"));
    }
    let k = c[3] / 6;
    if k < 0 {
        return Err(Error::DivergentLimit(m));
    }
    let candidate = |s: i32| [c[0] + s, c[1] + s, s, c[2] + (k - s), k - s];
    let negative = |e: &[i32; 5]| e.iter().filter(|x| **x < 0).map(|x| -x).sum::<i32>();
    let best = (0..=k)
        .rev()
        .map(candidate)
        .min_by_key(negative)
        .expect("range 0..=k is non-empty");
    Ok(best)
}

/// A zw-frame variable that can be sent to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZwVar {
    Z1,
    Z2,
    Z3,
    W1,
    W2,
}

impl ZwVar {
    fn slot(self) -> usize {
        match self {
            ZwVar::Z1 => 0,
            ZwVar::Z2 => 1,
            ZwVar::Z3 => 2,
            ZwVar::W1 => 3,
            ZwVar::W2 => 4,
        }
    }

    fn is_z(self) -> bool {
        matches!(self, ZwVar::Z1 | ZwVar::Z2 | ZwVar::Z3)
    }
}

/// The degeneration `z_i, w_a -> 0` with the other three zw variables fixed.
///
/// Consistency with `z1 z2 z3 = w1 w2` requires exactly one `z` and one `w`.
/// The combined exponent `e(z_i) + e(w_a)` does not depend on the chosen
/// presentation; a monomial vanishes in the limit iff it is positive,
/// survives iff it is zero, and diverges iff it is negative.
#[derive(Clone, Copy, Debug)]
pub struct ZwLimit {
    z: ZwVar,
    w: ZwVar,
}

impl ZwLimit {
    pub fn new(vars: &[ZwVar]) -> Result<Self> {
        let mut vars = vars.to_vec();
        vars.sort();
        vars.dedup();
        match vars.as_slice() {
            [a, b] if a.is_z() && !b.is_z() => Ok(ZwLimit { z: *a, w: *b }),
            _ => Err(Error::InvalidLimit(format!(
                "need exactly one z and one w variable, got {vars:?}"
            ))),
        }
    }

    /// The `z3, w2 -> 0` minimal reduction.
    pub fn minimal() -> Self {
        ZwLimit { z: ZwVar::Z3, w: ZwVar::W2 }
    }

    /// Combined exponent of the two limited variables.
    pub fn weight(&self, m: Monomial) -> Result<i32> {
        let c = Frame::Zw.coords(m);
        if c[3] % 6 != 0 {
            return Err(Error::NonLatticeImage(c, "zw"));
        }
        let k = c[3] / 6;
        // base presentation (z1 k, z2 k, z3 k, w1, 1) times the free coordinates
        let e = [c[0] + k, c[1] + k, k, c[2], 0];
        Ok(e[self.z.slot()] + e[self.w.slot()])
    }
}
