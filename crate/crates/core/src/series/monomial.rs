use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A number of the form `n/2`, stored as `2 * value`.
///
/// Used for `q`-exponents and truncation orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `7`, `7/2` or `3.5`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not an integer or half-integer: {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(HalfInt::int(num)),
                "2" => Ok(HalfInt(num)),
                _ => Err(bad()),
            };
        }
        if let Some((whole, frac)) = s.split_once('.') {
            let sign = if whole.starts_with('-') { -1 } else { 1 };
            let whole: i32 = whole.parse().map_err(|_| bad())?;
            return match frac.trim_end_matches('0') {
                "" => Ok(HalfInt::int(whole)),
                "5" => Ok(HalfInt(2 * whole + sign)),
                _ => Err(bad()),
            };
        }
        s.parse::<i32>().map(HalfInt::int).map_err(|_| bad())
    }
}

/// Serialised as a string such as `"7/2"`.
impl Serialize for HalfInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point of the fugacity lattice: `y1^a1 y2^a2 y^b q^(c2/2)`.
///
/// `y3` is never stored; it stands for `y1^-1 y2^-1`.
///
/// Monomials are ordered by `q`-exponent first and then lexicographically by
/// `(a1, a2, b)`, which is the display order used everywhere.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial {
    pub a1: i32,
    pub a2: i32,
    pub b: i32,
    pub c2: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial::new(0, 0, 0, 0);

    pub const fn new(a1: i32, a2: i32, b: i32, c2: i32) -> Self {
        Monomial { a1, a2, b, c2 }
    }

    pub const fn y1() -> Self {
        Monomial::new(1, 0, 0, 0)
    }

    pub const fn y2() -> Self {
        Monomial::new(0, 1, 0, 0)
    }

    pub const fn y3() -> Self {
        Monomial::new(-1, -1, 0, 0)
    }

    pub const fn y() -> Self {
        Monomial::new(0, 0, 1, 0)
    }

    /// `q^e` for a half-integer `e`.
    pub const fn q(e: HalfInt) -> Self {
        Monomial::new(0, 0, 0, e.twice())
    }

    pub const fn q_int(e: i32) -> Self {
        Monomial::new(0, 0, 0, 2 * e)
    }

    pub fn from_coords(c: [i32; 4]) -> Self {
        Monomial::new(c[0], c[1], c[2], c[3])
    }

    pub fn coords(self) -> [i32; 4] {
        [self.a1, self.a2, self.b, self.c2]
    }

    pub fn q_exp(self) -> HalfInt {
        HalfInt::from_twice(self.c2)
    }

    pub fn is_one(self) -> bool {
        self == Monomial::ONE
    }

    pub fn pow(self, n: i32) -> Self {
        Monomial::new(self.a1 * n, self.a2 * n, self.b * n, self.c2 * n)
    }

    pub fn inv(self) -> Self {
        self.pow(-1)
    }
}

/// Componentwise exponent addition.
pub fn mono_mul(m1: Monomial, m2: Monomial) -> Monomial {
    m1 * m2
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, o: Monomial) -> Monomial {
        Monomial::new(self.a1 + o.a1, self.a2 + o.a2, self.b + o.b, self.c2 + o.c2)
    }
}

impl Div for Monomial {
    type Output = Monomial;

    fn div(self, o: Monomial) -> Monomial {
        Monomial::new(self.a1 - o.a1, self.a2 - o.a2, self.b - o.b, self.c2 - o.c2)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.c2, self.a1, self.a2, self.b).cmp(&(other.c2, other.a1, other.a2, other.b))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn write_power(out: &mut Vec<String>, name: &str, e: i32) {
    match e {
        0 => {}
        1 => out.push(name.to_string()),
        _ => out.push(format!("{name}^{e}")),
    }
}

pub(crate) fn write_half_power(out: &mut Vec<String>, name: &str, twice: i32) {
    if twice % 2 == 0 {
        write_power(out, name, twice / 2);
    } else {
        out.push(format!("{name}^({twice}/2)"));
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        write_power(&mut parts, "y1", self.a1);
        write_power(&mut parts, "y2", self.a2);
        write_power(&mut parts, "y", self.b);
        write_half_power(&mut parts, "q", self.c2);
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A linear functional on the lattice used to truncate series.
///
/// The default grading is twice the `q`-exponent. Other gradings are used
/// when a presentation needs a two-sided box, e.g. bounding both the
/// `x`-frame `q`-power and the power of `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grading(pub [i32; 4]);

impl Grading {
    pub const Q: Grading = Grading([0, 0, 0, 1]);

    pub fn degree(&self, m: Monomial) -> i64 {
        let w = self.0;
        w[0] as i64 * m.a1 as i64
            + w[1] as i64 * m.a2 as i64
            + w[2] as i64 * m.b as i64
            + w[3] as i64 * m.c2 as i64
    }

    pub fn is_q(&self) -> bool {
        *self == Grading::Q
    }
}

impl Default for Grading {
    fn default() -> Self {
        Grading::Q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_adds_exponents() {
        let m = Monomial::new(1, 0, 0, 2);
        assert_eq!(Monomial::ONE * m, m);
        let y1q = Monomial::y1() * Monomial::q_int(1);
        let y2q = Monomial::y2() * Monomial::q_int(1);
        assert_eq!(mono_mul(y1q, y2q), Monomial::new(1, 1, 0, 4));
        // y q^(-1/2) squared is y^2 q^-1
        let r = Monomial::y() * Monomial::q(HalfInt::from_twice(-1));
        assert_eq!(r * r, Monomial::new(0, 0, 2, -2));
    }

    #[test]
    fn y3_is_inverse_of_y1_y2() {
        assert_eq!(Monomial::y1() * Monomial::y2() * Monomial::y3(), Monomial::ONE);
    }

    #[test]
    fn half_int_parsing() {
        assert_eq!("7/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(7));
        assert_eq!("3.5".parse::<HalfInt>().unwrap(), HalfInt::from_twice(7));
        assert_eq!("-1.5".parse::<HalfInt>().unwrap(), HalfInt::from_twice(-3));
        assert_eq!("4".parse::<HalfInt>().unwrap(), HalfInt::int(4));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert_eq!(HalfInt::from_twice(-3).to_string(), "-3/2");
    }

    #[test]
    fn display_order_is_q_first() {
        let mut v = vec![Monomial::new(0, 0, 5, 2), Monomial::new(-3, 0, 0, 0), Monomial::new(1, 0, 0, 2)];
        v.sort();
        assert_eq!(v, vec![Monomial::new(-3, 0, 0, 0), Monomial::new(0, 0, 5, 2), Monomial::new(1, 0, 0, 2)]);
    }
}
