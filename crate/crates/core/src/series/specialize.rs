//! Substitution of frame variables by monomials, and the zw-frame limit.

use std::fmt;
use std::str::FromStr;

use super::euler::EulerExpr;
use super::frame::{Frame, ZwLimit, ZwVar};
use super::monomial::Monomial;
use super::truncated::Series;
use crate::error::{Error, Result};

/// A named variable of one of the frames.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Y1,
    Y2,
    Y3,
    Y,
    T1,
    T2,
    R,
    X,
    Z1,
    Z2,
    Z3,
    W1,
    W2,
}

impl Var {
    /// The variable as a canonical monomial.
    pub fn monomial(self) -> Monomial {
        let q = Monomial::q_int(1);
        match self {
            Var::Y1 => Monomial::y1(),
            Var::Y2 => Monomial::y2(),
            Var::Y3 => Monomial::y3(),
            Var::Y => Monomial::y(),
            Var::T1 => Monomial::y1().inv(),
            Var::T2 => Monomial::y3(),
            Var::R => Monomial::new(0, 0, 1, -1),
            Var::X | Var::W1 => Monomial::y() * q,
            Var::Z1 => Monomial::y1() * q,
            Var::Z2 => Monomial::y2() * q,
            Var::Z3 => Monomial::y3() * q,
            Var::W2 => Monomial::y().inv() * q.pow(2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Y1 => "y1",
            Var::Y2 => "y2",
            Var::Y3 => "y3",
            Var::Y => "y",
            Var::T1 => "t1",
            Var::T2 => "t2",
            Var::R => "r",
            Var::X => "x",
            Var::Z1 => "z1",
            Var::Z2 => "z2",
            Var::Z3 => "z3",
            Var::W1 => "w1",
            Var::W2 => "w2",
        }
    }

    pub fn zw(self) -> Option<ZwVar> {
        match self {
            Var::Z1 => Some(ZwVar::Z1),
            Var::Z2 => Some(ZwVar::Z2),
            Var::Z3 => Some(ZwVar::Z3),
            Var::W1 => Some(ZwVar::W1),
            Var::W2 => Some(ZwVar::W2),
            _ => None,
        }
    }

    /// Frame, and the images of the frame's four basis monomials after
    /// setting this variable to `value` with the other coordinates held fixed.
    ///
    /// `y3`, `z3` and `w2` are not coordinates; they are pivoted through
    /// `y2`, `z2` and `w1` respectively.
    fn images(self, value: Monomial) -> (Frame, [Monomial; 4]) {
        let (frame, slot) = match self {
            Var::Y1 => (Frame::Canonical, 0),
            Var::Y2 | Var::Y3 => (Frame::Canonical, 1),
            Var::Y => (Frame::Canonical, 2),
            Var::T1 => (Frame::T, 0),
            Var::T2 => (Frame::T, 1),
            Var::R => (Frame::T, 2),
            Var::X => (Frame::X, 2),
            Var::Z1 => (Frame::Zw, 0),
            Var::Z2 | Var::Z3 => (Frame::Zw, 1),
            Var::W1 | Var::W2 => (Frame::Zw, 2),
        };
        let basis = |j: usize| {
            let mut c = [0; 4];
            c[j] = 1;
            frame.monomial(c).expect("unit vectors are lattice points")
        };
        let mut img = [basis(0), basis(1), basis(2), basis(3)];
        img[slot] = match self {
            // y2 = 1/(y1 y3)
            Var::Y3 => (value * img[0]).inv(),
            // z2 = q^3/(z1 z3), w1 = q^3/w2
            Var::Z3 => img[3].pow(6) / (img[0] * value),
            Var::W2 => img[3].pow(6) / value,
            _ => value,
        };
        (frame, img)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        const ALL: [Var; 13] = [
            Var::Y1,
            Var::Y2,
            Var::Y3,
            Var::Y,
            Var::T1,
            Var::T2,
            Var::R,
            Var::X,
            Var::Z1,
            Var::Z2,
            Var::Z3,
            Var::W1,
            Var::W2,
        ];
        ALL.into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown variable {s:?}")))
    }
}

/// A lattice endomorphism, stored by the images of the canonical basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct LatticeMap([Monomial; 4]);

impl LatticeMap {
    const IDENTITY: LatticeMap = LatticeMap([
        Monomial::y1(),
        Monomial::y2(),
        Monomial::y(),
        Monomial::new(0, 0, 0, 1),
    ]);

    fn apply(&self, m: Monomial) -> Monomial {
        self.0
            .iter()
            .zip(m.coords())
            .fold(Monomial::ONE, |acc, (img, k)| acc * img.pow(k))
    }

    fn from_frame_images(frame: Frame, img: [Monomial; 4]) -> Self {
        let apply = |m: Monomial| {
            img.iter()
                .zip(frame.coords(m))
                .fold(Monomial::ONE, |acc, (i, k)| acc * i.pow(k))
        };
        let id = LatticeMap::IDENTITY.0;
        LatticeMap([apply(id[0]), apply(id[1]), apply(id[2]), apply(id[3])])
    }

    /// `other` after `self`.
    fn then(&self, other: &LatticeMap) -> LatticeMap {
        LatticeMap(self.0.map(|m| other.apply(m)))
    }
}

/// A sequence of substitutions `variable := monomial`, applied in order.
///
/// Each substitution holds the other coordinates of the variable's frame
/// fixed, so `y := 1` keeps `y1, y2, q` and `r := q^(1/2)` keeps `t1, t2, q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    assignments: Vec<(Var, Monomial)>,
    map: LatticeMap,
}

impl Specialization {
    pub fn new<I: IntoIterator<Item = (Var, Monomial)>>(assignments: I) -> Self {
        let assignments: Vec<(Var, Monomial)> = assignments.into_iter().collect();
        let map = assignments.iter().fold(LatticeMap::IDENTITY, |acc, (v, val)| {
            let (frame, img) = v.images(*val);
            acc.then(&LatticeMap::from_frame_images(frame, img))
        });
        Specialization { assignments, map }
    }

    /// `y = 1, y3 = 1`: the Schur limit in the y-frame.
    pub fn schur() -> Self {
        Specialization::new([(Var::Y, Monomial::ONE), (Var::Y3, Monomial::ONE)])
    }

    /// `t2 = 1, r = q^(1/2)`: the Schur limit in the t-frame, i.e. `q = r^2`
    /// with `q` kept as the surviving variable.
    pub fn schur_t() -> Self {
        Specialization::new([(Var::T2, Monomial::ONE), (Var::R, Monomial::new(0, 0, 0, 1))])
    }

    pub fn assignments(&self) -> &[(Var, Monomial)] {
        &self.assignments
    }

    pub fn apply_monomial(&self, m: Monomial) -> Monomial {
        self.map.apply(m)
    }

    pub fn apply_euler(&self, e: &EulerExpr) -> Result<EulerExpr> {
        e.map_monomials(|m| self.apply_monomial(m))
    }

    /// Specialise a truncated series. Only allowed when every monomial keeps
    /// its grade, since otherwise the unknown tail would leak into known
    /// coefficients.
    pub fn apply_series(&self, s: &Series) -> Result<Series> {
        let g = s.grading();
        let preserved = LatticeMap::IDENTITY
            .0
            .iter()
            .all(|e| g.degree(self.apply_monomial(*e)) == g.degree(*e));
        if !preserved {
            return Err(Error::GradingNotPreserved);
        }
        Ok(s.map_monomials(|m| self.apply_monomial(m), s.order()))
    }
}

/// Substitute into an Euler expression.
pub fn specialize(e: &EulerExpr, assignments: &[(Var, Monomial)]) -> Result<EulerExpr> {
    Specialization::new(assignments.iter().copied()).apply_euler(e)
}

/// Send one `z` and one `w` variable to zero in an Euler expression.
///
/// Numerator terms containing a positive power of the pair vanish,
/// denominator factors containing one become 1, and any negative power is
/// an error.
pub fn limit_zero(e: &EulerExpr, vars: &[ZwVar]) -> Result<EulerExpr> {
    let lim = ZwLimit::new(vars)?;
    let mut num = Vec::new();
    for (m, c) in e.numerator().iter() {
        match lim.weight(*m)? {
            0 => num.push((*m, c.clone())),
            k if k > 0 => {}
            _ => return Err(Error::DivergentLimit(*m)),
        }
    }
    let mut den = Vec::new();
    for m in e.denominators() {
        match lim.weight(*m)? {
            0 => den.push(*m),
            k if k > 0 => {}
            _ => return Err(Error::DivergentLimit(*m)),
        }
    }
    Ok(EulerExpr::new(Series::polynomial(num), den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::HalfInt;

    fn q(n: i32) -> Monomial {
        Monomial::q_int(n)
    }

    #[test]
    fn schur_sends_y_and_y3_to_one() {
        let s = Specialization::schur();
        assert_eq!(s.apply_monomial(Monomial::y() * q(1)), q(1));
        assert_eq!(s.apply_monomial(Monomial::y3() * q(1)), q(1));
        assert_eq!(s.apply_monomial(Monomial::y1()), Monomial::y1());
        assert_eq!(s.apply_monomial(Monomial::y2()), Monomial::y1().inv());
    }

    #[test]
    fn t_frame_schur() {
        let s = Specialization::schur_t();
        // r = q^(1/2) means y = q^(1/2) r = q
        assert_eq!(s.apply_monomial(Monomial::y()), q(1));
        assert_eq!(s.apply_monomial(Var::R.monomial()), Monomial::q(HalfInt::from_twice(1)));
        assert_eq!(s.apply_monomial(Var::T2.monomial()), Monomial::ONE);
        assert_eq!(s.apply_monomial(Var::T1.monomial()), Var::T1.monomial());
    }

    #[test]
    fn derived_zw_variables() {
        let s = Specialization::new([(Var::W2, Monomial::ONE)]);
        assert_eq!(s.apply_monomial(Var::W2.monomial()), Monomial::ONE);
        assert_eq!(s.apply_monomial(Var::W1.monomial()), q(3));
        let s = Specialization::new([(Var::Z3, Monomial::ONE)]);
        assert_eq!(s.apply_monomial(Var::Z3.monomial()), Monomial::ONE);
        assert_eq!(s.apply_monomial(Var::Z1.monomial()), Var::Z1.monomial());
    }

    #[test]
    fn series_specialisation_needs_grading() {
        let f = Series::from_ints([(Monomial::y() * q(1), 1)]).truncate_q(HalfInt::int(3));
        assert!(Specialization::schur().apply_series(&f).is_ok());
        assert!(matches!(Specialization::schur_t().apply_series(&f), Err(Error::GradingNotPreserved)));
    }

    #[test]
    fn limit_of_a_geometric_factor() {
        // 1/(1 - w2) -> 1, w1/(1 - z1) survives
        let e = EulerExpr::new(Series::monomial(Var::W1.monomial()), vec![Var::W2.monomial(), Var::Z1.monomial()]);
        let l = limit_zero(&e, &[ZwVar::Z3, ZwVar::W2]).unwrap();
        assert_eq!(l, EulerExpr::new(Series::monomial(Var::W1.monomial()), vec![Var::Z1.monomial()]));
        let bad = EulerExpr::polynomial(Series::monomial(Var::W2.monomial().inv() * q(3)));
        assert!(limit_zero(&bad, &[ZwVar::Z3, ZwVar::W2]).is_ok());
        let bad = EulerExpr::polynomial(Series::monomial(Var::W2.monomial().inv()));
        assert!(matches!(limit_zero(&bad, &[ZwVar::Z3, ZwVar::W2]), Err(Error::DivergentLimit(_))));
    }
}
