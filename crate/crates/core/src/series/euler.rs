use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::monomial::{Grading, HalfInt, Monomial};
use super::truncated::{int, Coeff, Series};
use crate::error::{Error, Result};

/// An exact rational expression `numerator / prod_i (1 - m_i)`.
///
/// The numerator is a Laurent polynomial and each denominator factor is
/// recorded by its monomial. Factors are kept sorted so that structurally
/// equal expressions compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct EulerExpr {
    numerator: Series,
    denominators: Vec<Monomial>,
}

impl EulerExpr {
    pub fn new(numerator: Series, mut denominators: Vec<Monomial>) -> Self {
        assert!(numerator.is_exact(), "EulerExpr numerator must be an exact polynomial");
        denominators.sort();
        EulerExpr { numerator, denominators }
    }

    pub fn polynomial(numerator: Series) -> Self {
        EulerExpr::new(numerator, Vec::new())
    }

    pub fn one() -> Self {
        EulerExpr::polynomial(Series::one())
    }

    /// `1 / (1 - m)`.
    pub fn geometric(m: Monomial) -> Self {
        EulerExpr::new(Series::one(), vec![m])
    }

    pub fn numerator(&self) -> &Series {
        &self.numerator
    }

    pub fn denominators(&self) -> &[Monomial] {
        &self.denominators
    }

    /// The denominator multiplied out as a polynomial.
    pub fn denominator_polynomial(&self) -> Series {
        product_one_minus(&self.denominators)
    }

    pub fn mul(&self, other: &EulerExpr) -> EulerExpr {
        let mut den = self.denominators.clone();
        den.extend_from_slice(&other.denominators);
        EulerExpr::new(&self.numerator * &other.numerator, den)
    }

    pub fn scale(&self, c: &Coeff) -> EulerExpr {
        EulerExpr::new(self.numerator.scale(c), self.denominators.clone())
    }

    pub fn mul_monomial(&self, m: Monomial) -> EulerExpr {
        EulerExpr::new(self.numerator.mul_monomial(m), self.denominators.clone())
    }

    pub fn neg(&self) -> EulerExpr {
        self.scale(&int(-1))
    }

    /// Sum over the least common multiple of the two denominators.
    pub fn add(&self, other: &EulerExpr) -> EulerExpr {
        let lcm = multiset_lcm(&self.denominators, &other.denominators);
        let a = &self.numerator * &product_one_minus(&multiset_diff(&lcm, &self.denominators));
        let b = &other.numerator * &product_one_minus(&multiset_diff(&lcm, &other.denominators));
        EulerExpr::new(&a + &b, lcm)
    }

    pub fn sub(&self, other: &EulerExpr) -> EulerExpr {
        self.add(&other.neg())
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a EulerExpr>>(items: I) -> EulerExpr {
        items
            .into_iter()
            .fold(EulerExpr::polynomial(Series::zero()), |acc, e| acc.add(e))
    }

    /// Equality as rational functions, decided exactly by cross-multiplying.
    pub fn same_function(&self, other: &EulerExpr) -> bool {
        let common = multiset_intersection(&self.denominators, &other.denominators);
        let da = multiset_diff(&self.denominators, &common);
        let db = multiset_diff(&other.denominators, &common);
        let lhs = &self.numerator * &product_one_minus(&db);
        let rhs = &other.numerator * &product_one_minus(&da);
        lhs == rhs
    }

    /// Removes denominator factors that divide the numerator, one at a time.
    ///
    /// Only exact divisibility by a single `(1 - m)` factor is tested, largest
    /// factors first.
    pub fn cancel(&self) -> EulerExpr {
        let mut num = self.numerator.clone();
        let mut den = Vec::new();
        for m in self.denominators.iter().rev() {
            match divide_by_one_minus(&num, *m) {
                Some(q) => num = q,
                None => den.push(*m),
            }
        }
        EulerExpr::new(num, den)
    }

    /// Expand as a series truncated at `q^order`.
    pub fn expand(&self, order: HalfInt) -> Result<Series> {
        self.expand_graded(Grading::Q, order.twice() as i64)
    }

    /// Expand as a series truncated at grade `order` of `grading`.
    pub fn expand_graded(&self, grading: Grading, order: i64) -> Result<Series> {
        for m in &self.denominators {
            if grading.degree(*m) <= 0 {
                return Err(Error::DenominatorNotExpandable(*m));
            }
        }
        let mut s = self.numerator.regrade(grading, Some(order))?;
        for m in &self.denominators {
            s = s.div_one_minus(*m)?;
        }
        Ok(s)
    }

    /// Apply a lattice homomorphism to numerator and denominators.
    pub fn map_monomials<F: Fn(Monomial) -> Monomial>(&self, f: F) -> Result<EulerExpr> {
        let den: Vec<Monomial> = self.denominators.iter().map(|m| f(*m)).collect();
        if let Some(pos) = den.iter().position(|m| m.is_one()) {
            return Err(Error::PoleAtSpecialization(self.denominators[pos]));
        }
        Ok(EulerExpr::new(self.numerator.map_monomials(&f, None), den))
    }
}

/// `euler_expand` in free-function form.
pub fn euler_expand(e: &EulerExpr, order: HalfInt) -> Result<Series> {
    e.expand(order)
}

pub(crate) fn product_one_minus(ms: &[Monomial]) -> Series {
    let mut acc = Series::one();
    for m in ms {
        let f = Series::polynomial([(Monomial::ONE, Coeff::one()), (*m, int(-1))]);
        acc = &acc * &f;
    }
    acc
}

/// Exact division of a Laurent polynomial by `(1 - m)`, if it divides.
///
/// Terms are ordered by the functional `<m, .>`, which is positive on `m`;
/// every quotient term has key at most `max_key(p) - <m, m>`.
fn divide_by_one_minus(p: &Series, m: Monomial) -> Option<Series> {
    if p.is_zero() || m.is_one() {
        return None;
    }
    let w = m.coords();
    let key = |x: Monomial| -> i64 { x.coords().iter().zip(w).map(|(a, b)| *a as i64 * b as i64).sum() };
    let step = key(m);
    let max_key = p.iter().map(|(k, _)| key(*k)).max()?;
    let mut rem: BTreeMap<(i64, Monomial), Coeff> = p.iter().map(|(k, c)| ((key(*k), *k), c.clone())).collect();
    let mut quotient = Vec::new();
    while let Some(((d, k), c)) = rem.pop_first() {
        if d > max_key - step {
            return None;
        }
        let km = k * m;
        let slot = rem.entry((d + step, km)).or_insert_with(|| int(0));
        *slot += &c;
        if num_traits::Zero::is_zero(slot) {
            rem.remove(&(d + step, km));
        }
        quotient.push((k, c));
    }
    Some(Series::polynomial(quotient))
}

fn counts(v: &[Monomial]) -> BTreeMap<Monomial, usize> {
    let mut c = BTreeMap::new();
    for m in v {
        *c.entry(*m).or_insert(0) += 1;
    }
    c
}

fn expand_counts(c: BTreeMap<Monomial, usize>) -> Vec<Monomial> {
    c.into_iter().flat_map(|(m, n)| std::iter::repeat_n(m, n)).collect()
}

fn multiset_lcm(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut ca = counts(a);
    for (m, n) in counts(b) {
        let e = ca.entry(m).or_insert(0);
        *e = (*e).max(n);
    }
    expand_counts(ca)
}

fn multiset_intersection(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let cb = counts(b);
    let out = counts(a)
        .into_iter()
        .filter_map(|(m, n)| cb.get(&m).map(|k| (m, n.min(*k))))
        .collect();
    expand_counts(out)
}

fn multiset_diff(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut ca = counts(a);
    for (m, n) in counts(b) {
        if let Some(e) = ca.get_mut(&m) {
            *e = e.saturating_sub(n);
        }
    }
    expand_counts(ca)
}

impl fmt::Display for EulerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if !self.denominators.is_empty() {
            let den: Vec<String> = self.denominators.iter().map(|m| format!("(1 - {m})")).collect();
            write!(f, " / ({})", den.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for EulerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
