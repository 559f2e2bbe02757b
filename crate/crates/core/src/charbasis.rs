//! Projection of series coefficients onto `sl(3)` characters.
//!
//! A Weyl-invariant Laurent polynomial in `y1, y2, y3` is a unique integer
//! combination of irreducible characters. It is peeled greedily: the term
//! with the largest `y1`-exponent is maximal in the dominance order, so if
//! the polynomial is a character combination that term is a highest weight.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lie::chi_sl3;
use crate::series::{Coeff, Frame, Monomial, Series};

/// `sum c * chi[a,b] * m` where `m` carries no `y1, y2` dependence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharCombination {
    /// Keyed by the frame coordinates `(third, 2q)` of `m`, then by the
    /// Dynkin labels.
    pub terms: BTreeMap<(i32, i32), BTreeMap<(u32, u32), Coeff>>,
    pub frame: Frame,
}

/// Decompose a polynomial in `y1, y2` alone.
pub fn decompose_sl3(p: &BTreeMap<(i32, i32), Coeff>) -> Result<BTreeMap<(u32, u32), Coeff>> {
    let mut rest = p.clone();
    rest.retain(|_, c| !c.is_zero());
    let mut out = BTreeMap::new();
    while let Some((&(a1, a2), c)) = rest.iter().max_by_key(|((a1, a2), _)| (*a1, *a2)) {
        let c = c.clone();
        if a2 < 0 || a1 < a2 {
            let residual: Vec<String> = rest.iter().map(|((a, b), c)| format!("{c}*y1^{a}*y2^{b}")).collect();
            return Err(Error::NotCharacterCombination(residual.join(" + ")));
        }
        let label = ((a1 - a2) as u32, a2 as u32);
        for (m, k) in chi_sl3(label.0, label.1).iter() {
            let e = rest.entry((m.a1, m.a2)).or_insert_with(Coeff::zero);
            *e -= k * &c;
            if e.is_zero() {
                rest.remove(&(m.a1, m.a2));
            }
        }
        out.insert(label, c);
    }
    Ok(out)
}

impl CharCombination {
    /// Decompose a series in the given frame: terms are grouped by the third
    /// frame coordinate and the frame `q`-power, and each group's `y1, y2`
    /// content is decomposed. In the t-frame the `y1, y2` content is read off
    /// the canonical exponents.
    pub fn from_series(s: &Series, frame: Frame) -> Result<Self> {
        if frame == Frame::Zw {
            return Err(Error::NotCharacterCombination(
                "the zw coordinates carry y_i weights; project in the y, t or x frame".into(),
            ));
        }
        let mut groups: BTreeMap<(i32, i32), BTreeMap<(i32, i32), Coeff>> = BTreeMap::new();
        for (m, c) in s.iter() {
            let f = frame.coords(*m);
            groups.entry((f[2], f[3])).or_default().insert((m.a1, m.a2), c.clone());
        }
        let mut terms = BTreeMap::new();
        for (key, p) in groups {
            terms.insert(key, decompose_sl3(&p)?);
        }
        Ok(CharCombination { terms, frame })
    }

    /// The monomial with frame coordinates `(0, 0, third, q2)`.
    fn base(&self, third: i32, q2: i32) -> Monomial {
        self.frame.monomial([0, 0, third, q2]).expect("frame maps are unimodular")
    }

    /// Expand back into a polynomial.
    pub fn expand(&self) -> Series {
        let mut acc = Series::zero();
        for (&(third, q2), chars) in &self.terms {
            let base = self.base(third, q2);
            for (&(a, b), c) in chars {
                acc = &acc + &chi_sl3(a, b).scale(c).mul_monomial(base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|m| m.is_empty())
    }
}

fn write_coeff_times(out: &mut String, first: bool, c: &Coeff, body: &str) {
    let neg = c.is_negative();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let mag = c.abs();
    if body.is_empty() {
        out.push_str(&mag.to_string());
    } else if mag.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&format!("{mag}*{body}"));
    }
}

impl fmt::Display for CharCombination {
    /// E.g. `1 - chi[0,1]*y + chi[1,0]*y^2`; `q` is omitted when every term
    /// sits at the same `q`-power.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.frame.coordinate_names();
        let single_q = self.terms.keys().map(|k| k.1).collect::<std::collections::BTreeSet<_>>().len() <= 1;
        let mut out = String::new();
        let mut first = true;
        let mut keys: Vec<&(i32, i32)> = self.terms.keys().collect();
        keys.sort_by_key(|(third, q2)| (*q2, *third));
        for key in keys {
            let (third, q2) = *key;
            for (&(a, b), c) in &self.terms[key] {
                let mut parts = Vec::new();
                if (a, b) != (0, 0) {
                    parts.push(format!("chi[{a},{b}]"));
                }
                match third {
                    0 => {}
                    1 => parts.push(names[2].to_string()),
                    e => parts.push(format!("{}^{e}", names[2])),
                }
                if !single_q {
                    match q2 {
                        0 => {}
                        2 => parts.push("q".into()),
                        e if e % 2 == 0 => parts.push(format!("q^{}", e / 2)),
                        e => parts.push(format!("q^({e}/2)")),
                    }
                }
                write_coeff_times(&mut out, first, c, &parts.join("*"));
                first = false;
            }
        }
        if first {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    #[test]
    fn adjoint_plus_two() {
        // chi[1,1] + 2 has weight 0 with multiplicity 4
        let s = &chi_sl3(1, 1) + &Series::from_ints([(Monomial::ONE, 2)]);
        let c = CharCombination::from_series(&s, Frame::Canonical).unwrap();
        let expected: BTreeMap<(u32, u32), Coeff> = [((1, 1), int(1)), ((0, 0), int(2))].into_iter().collect();
        assert_eq!(c.terms[&(0, 0)], expected);
        assert_eq!(c.expand(), s);
    }

    #[test]
    fn rendering_follows_frame() {
        let y = Monomial::y();
        let s = &(&Series::one() - &chi_sl3(0, 1).mul_monomial(y)) + &chi_sl3(1, 0).mul_monomial(y.pow(2));
        let c = CharCombination::from_series(&s, Frame::Canonical).unwrap();
        assert_eq!(c.to_string(), "1 - chi[0,1]*y + chi[1,0]*y^2");
        assert_eq!(c.expand(), s);
        // the same polynomial times q, read in the x-frame: y q = x
        let sq = s.mul_monomial(Monomial::q_int(1));
        let cx = CharCombination::from_series(&sq, Frame::X).unwrap();
        assert_eq!(cx.expand(), sq);
        assert_eq!(cx.to_string(), "chi[1,0]*x^2*q^-1 - chi[0,1]*x + q");
    }

    #[test]
    fn non_invariant_is_rejected() {
        let s = Series::from_ints([(Monomial::y1(), 1)]);
        assert!(matches!(CharCombination::from_series(&s, Frame::Canonical), Err(Error::NotCharacterCombination(_))));
    }
}
