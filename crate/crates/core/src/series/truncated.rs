use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Grading, HalfInt, Monomial};
use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Coeff = BigRational;

pub fn int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A truncated multivariate Laurent series.
///
/// Terms whose grade is `>= order` are absent and unknown. `order == None`
/// means the series is exact (a Laurent polynomial). No stored coefficient is
/// zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    terms: BTreeMap<Monomial, Coeff>,
    grading: Grading,
    order: Option<i64>,
}

impl Series {
    pub fn zero() -> Self {
        Series { terms: BTreeMap::new(), grading: Grading::Q, order: None }
    }

    pub fn one() -> Self {
        Series::monomial(Monomial::ONE)
    }

    pub fn monomial(m: Monomial) -> Self {
        Series::term(m, Coeff::one())
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        Series::polynomial([(m, c)])
    }

    /// Exact Laurent polynomial; repeated monomials are summed.
    pub fn polynomial<I: IntoIterator<Item = (Monomial, Coeff)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            add_into(&mut map, m, c);
        }
        Series { terms: map, grading: Grading::Q, order: None }
    }

    /// Same as [`Series::polynomial`] with integer coefficients.
    pub fn from_ints<I: IntoIterator<Item = (Monomial, i64)>>(terms: I) -> Self {
        Series::polynomial(terms.into_iter().map(|(m, c)| (m, int(c))))
    }

    pub(crate) fn from_parts(terms: BTreeMap<Monomial, Coeff>, grading: Grading, order: Option<i64>) -> Self {
        let mut s = Series { terms, grading, order };
        s.terms.retain(|_, c| !c.is_zero());
        if let Some(o) = order {
            let g = grading;
            s.terms.retain(|m, _| g.degree(*m) < o);
        }
        s
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Exclusive truncation bound in units of the grading, `None` if exact.
    pub fn order(&self) -> Option<i64> {
        self.order
    }

    /// The truncation order as a `q`-power, for `q`-graded series.
    pub fn q_order(&self) -> Option<HalfInt> {
        if self.grading.is_q() {
            self.order.map(|o| HalfInt::from_twice(o as i32))
        } else {
            None
        }
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coeff> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Coeff {
        self.terms.get(&m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn degree(&self, m: Monomial) -> i64 {
        self.grading.degree(m)
    }

    /// Lowest grade among stored terms.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().map(|m| self.grading.degree(*m)).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| self.grading.degree(*m)).max()
    }

    /// Lowest `q`-exponent among stored terms.
    pub fn q_valuation(&self) -> Option<HalfInt> {
        self.terms.keys().map(|m| m.q_exp()).min()
    }

    /// Drops all terms of grade `>= order`.
    pub fn truncate(&self, order: i64) -> Series {
        let order = self.order.map_or(order, |o| o.min(order));
        Series::from_parts(self.terms.clone(), self.grading, Some(order))
    }

    /// Truncate a `q`-graded series at `q^order`.
    pub fn truncate_q(&self, order: HalfInt) -> Series {
        assert!(self.grading.is_q(), "truncate_q on a series with a non-q grading");
        self.truncate(order.twice() as i64)
    }

    /// Reinterpret an exact series under another grading and truncate it.
    pub fn regrade(&self, grading: Grading, order: Option<i64>) -> Result<Series> {
        if self.order.is_some() && grading != self.grading {
            return Err(Error::GradingMismatch);
        }
        Ok(Series::from_parts(self.terms.clone(), grading, order.or(self.order)))
    }

    /// Exact polynomial made of the terms of grade exactly `g`.
    pub fn level(&self, g: i64) -> Series {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.grading.degree(**m) == g)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Series { terms, grading: self.grading, order: None }
    }

    /// Exact polynomial made of the terms with `q`-exponent `e`.
    pub fn q_level(&self, e: HalfInt) -> Series {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.c2 == e.twice())
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Series { terms, grading: self.grading, order: None }
    }

    pub fn scale(&self, c: &Coeff) -> Series {
        if c.is_zero() {
            return Series { terms: BTreeMap::new(), grading: self.grading, order: self.order };
        }
        let terms = self.terms.iter().map(|(m, x)| (*m, x * c)).collect();
        Series { terms, grading: self.grading, order: self.order }
    }

    /// Multiply by a single monomial; the truncation order shifts with it.
    pub fn mul_monomial(&self, m: Monomial) -> Series {
        let shift = self.grading.degree(m);
        let terms = self.terms.iter().map(|(k, c)| (*k * m, c.clone())).collect();
        Series { terms, grading: self.grading, order: self.order.map(|o| o + shift) }
    }

    /// Apply a lattice map to every exponent vector and re-collect.
    ///
    /// The caller is responsible for the truncation order of the result.
    pub fn map_monomials<F: Fn(Monomial) -> Monomial>(&self, f: F, order: Option<i64>) -> Series {
        let mut map = BTreeMap::new();
        for (m, c) in &self.terms {
            add_into(&mut map, f(*m), c.clone());
        }
        Series::from_parts(map, self.grading, order)
    }

    fn effective_min(&self) -> Option<i64> {
        self.valuation().or(self.order)
    }

    fn check_grading(&self, other: &Series) {
        assert_eq!(
            self.grading, other.grading,
            "combining series with different truncation gradings"
        );
    }

    /// Cauchy product, discarding every term at or beyond the result order.
    pub fn mul_series(&self, other: &Series) -> Series {
        if self.is_exact() && self.is_zero() || other.is_exact() && other.is_zero() {
            return Series { terms: BTreeMap::new(), grading: self.grading, order: None };
        }
        self.check_grading(other);
        let g = self.grading;
        let order = match (self.order, other.order) {
            (None, None) => None,
            (Some(a), None) => other.effective_min().map(|m| a + m),
            (None, Some(b)) => self.effective_min().map(|m| b + m),
            (Some(a), Some(b)) => {
                let x = other.effective_min().map(|m| a + m);
                let y = self.effective_min().map(|m| b + m);
                match (x, y) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                }
            }
        };
        let mut rhs: Vec<(i64, Monomial, &Coeff)> =
            other.terms.iter().map(|(m, c)| (g.degree(*m), *m, c)).collect();
        rhs.sort_by_key(|t| t.0);
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (ma, ca) in &self.terms {
            let da = g.degree(*ma);
            for (db, mb, cb) in &rhs {
                if let Some(o) = order {
                    if da + db >= o {
                        break;
                    }
                }
                let prod = ca * *cb;
                match acc.entry(*ma * *mb) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Series { terms, grading: g, order }
    }

    pub fn add_series(&self, other: &Series) -> Series {
        self.combine(other, false)
    }

    pub fn sub_series(&self, other: &Series) -> Series {
        self.combine(other, true)
    }

    fn combine(&self, other: &Series, negate: bool) -> Series {
        if other.is_exact() && other.is_zero() {
            return self.clone();
        }
        if self.is_exact() && self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        self.check_grading(other);
        let order = match (self.order, other.order) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut map = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut map, *m, if negate { -c.clone() } else { c.clone() });
        }
        Series::from_parts(map, self.grading, order)
    }

    pub fn pow(&self, n: u32) -> Series {
        let mut acc = Series::one().with_grading_of(self);
        for _ in 0..n {
            acc = acc.mul_series(self);
        }
        acc
    }

    /// Exact constant series carrying this series' grading.
    pub(crate) fn with_grading_of(mut self, other: &Series) -> Series {
        self.grading = other.grading;
        self
    }

    /// True if both series agree on every term below the smaller of the two
    /// truncation orders.
    pub fn agrees_with(&self, other: &Series) -> bool {
        if self.grading != other.grading {
            return false;
        }
        let order = match (self.order, other.order) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        match order {
            None => self.terms == other.terms,
            Some(o) => self.truncate(o).terms == other.truncate(o).terms,
        }
    }

    /// Divide by `(1 - m)`, i.e. multiply by the geometric series of `m`.
    ///
    /// Needs a truncated series and `grade(m) > 0`.
    pub fn div_one_minus(&self, m: Monomial) -> Result<Series> {
        let g = self.grading;
        let step = g.degree(m);
        if step <= 0 {
            return Err(Error::DenominatorNotExpandable(m));
        }
        let order = self.order.ok_or(Error::Untruncated)?;
        let mut work: BTreeMap<(i64, Monomial), Coeff> =
            self.terms.iter().map(|(k, c)| ((g.degree(*k), *k), c.clone())).collect();
        let mut cursor: Option<(i64, Monomial)> = None;
        loop {
            let next = match cursor {
                None => work.iter().next(),
                Some(key) => work.range((std::ops::Bound::Excluded(key), std::ops::Bound::Unbounded)).next(),
            };
            let Some((key, c)) = next else { break };
            let key = *key;
            let c = c.clone();
            cursor = Some(key);
            let target = key.0 + step;
            if target < order && !c.is_zero() {
                let entry = work.entry((target, key.1 * m)).or_insert_with(Coeff::zero);
                *entry += c;
            }
        }
        let terms = work.into_iter().filter(|(_, c)| !c.is_zero()).map(|((_, k), c)| (k, c)).collect();
        Ok(Series { terms, grading: g, order: Some(order) })
    }

    /// Multiplicative inverse of a truncated series whose lowest-grade part
    /// is a single term `c m`, so that the series is `c m (1 - R)` with `R`
    /// of positive grade.
    pub fn reciprocal(&self) -> Result<Series> {
        let g = self.grading;
        let order = self.order.ok_or(Error::Untruncated)?;
        let v = self.valuation().ok_or_else(|| Error::NotInvertible("zero series".into()))?;
        let lowest: Vec<(&Monomial, &Coeff)> = self.terms.iter().filter(|(m, _)| g.degree(**m) == v).collect();
        let [(m0, c0)] = lowest.as_slice() else {
            return Err(Error::NotInvertible(format!("lowest-grade part of {self} is not a single term")));
        };
        let (m0, c0) = (**m0, (*c0).clone());
        // u = self / (c0 m0) = 1 - R, known below grade order - v
        let rel_order = order - v;
        let inv_c0 = c0.recip();
        let mut levels: BTreeMap<i64, Vec<(Monomial, Coeff)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = g.degree(*m) - v;
            if d > 0 {
                levels.entry(d).or_default().push((*m / m0, c * &inv_c0));
            }
        }
        let u: BTreeMap<i64, Series> = levels.into_iter().map(|(d, t)| (d, Series::polynomial(t))).collect();
        // H_0 = 1, H_c = -sum_{j>=1} U_j H_{c-j}
        let mut h: BTreeMap<i64, Series> = BTreeMap::from([(0, Series::one())]);
        for c in 1..rel_order {
            let mut acc = Series::zero();
            for (j, uj) in u.range(1..=c) {
                if let Some(hc) = h.get(&(c - j)) {
                    acc = &acc - &(uj * hc);
                }
            }
            if !acc.is_zero() {
                h.insert(c, acc);
            }
        }
        let mut map = BTreeMap::new();
        for piece in h.values() {
            for (m, c) in &piece.terms {
                add_into(&mut map, *m / m0, c * &inv_c0);
            }
        }
        Ok(Series::from_parts(map, g, Some(rel_order - v)))
    }

    /// Sum of all coefficients (the value at every fugacity equal to 1).
    pub fn coefficient_sum(&self) -> Coeff {
        self.terms.values().fold(Coeff::zero(), |acc, c| acc + c)
    }

    /// True if every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True if every stored term has an integral `q`-exponent.
    pub fn has_integer_q_powers(&self) -> bool {
        self.terms.keys().all(|m| m.c2 % 2 == 0)
    }

    pub fn max_abs_coefficient(&self) -> Coeff {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Coeff::zero)
    }
}

pub(crate) fn add_into(map: &mut BTreeMap<Monomial, Coeff>, m: Monomial, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// Cauchy product of two truncated series.
pub fn series_mul(a: &Series, b: &Series) -> Series {
    a.mul_series(b)
}

impl Add for &Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        self.add_series(o)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        self.sub_series(o)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        self.mul_series(o)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect();
        Series { terms, grading: self.grading, order: self.order }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(o) = self.order {
            if self.grading.is_q() {
                write!(f, " + O(q^{})", HalfInt::from_twice(o as i32))?;
            } else {
                write!(f, " + O(deg {o})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i32) -> Monomial {
        Monomial::q_int(n)
    }

    #[test]
    fn one_plus_q_times_one_minus_q() {
        let a = Series::from_ints([(q(0), 1), (q(1), 1)]).truncate_q(HalfInt::int(3));
        let b = Series::from_ints([(q(0), 1), (q(1), -1)]).truncate_q(HalfInt::int(3));
        let p = &a * &b;
        assert_eq!(p, Series::from_ints([(q(0), 1), (q(2), -1)]).truncate_q(HalfInt::int(3)));
    }

    #[test]
    fn geometric_tail_squared() {
        // q/(1-q) to q^5, squared: the unknown tail starts at q^6
        let f = Series::monomial(q(1)).truncate_q(HalfInt::int(5)).div_one_minus(q(1)).unwrap();
        let sq = &f * &f;
        assert_eq!(sq.q_order(), Some(HalfInt::int(6)));
        let expected = Series::from_ints([(q(2), 1), (q(3), 2), (q(4), 3), (q(5), 4)]);
        assert!(sq.agrees_with(&expected.truncate_q(HalfInt::int(6))));
        assert_eq!(sq.truncate_q(HalfInt::int(5)), expected.truncate_q(HalfInt::int(5)));
    }

    #[test]
    fn exact_times_truncated_order() {
        let p = Series::monomial(Monomial::y() * q(2));
        let t = Series::one().truncate_q(HalfInt::int(4));
        assert_eq!((&p * &t).q_order(), Some(HalfInt::int(6)));
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let a = Series::from_ints([(q(1), 2)]);
        let b = Series::from_ints([(q(1), -2)]);
        assert!((&a + &b).is_empty());
    }

    #[test]
    fn division_by_one_minus_q() {
        let s = Series::one().truncate_q(HalfInt::int(4)).div_one_minus(q(1)).unwrap();
        assert_eq!(s, Series::from_ints((0..4).map(|k| (q(k), 1))).truncate_q(HalfInt::int(4)));
        assert!(matches!(
            Series::one().truncate_q(HalfInt::int(4)).div_one_minus(Monomial::y()),
            Err(Error::DenominatorNotExpandable(_))
        ));
        assert!(matches!(Series::one().div_one_minus(q(1)), Err(Error::Untruncated)));
    }

    #[test]
    fn reciprocal_of_unit() {
        let x = Monomial::y() * q(1);
        // 1/(1 + x) with x graded by q
        let s = Series::from_ints([(Monomial::ONE, 1), (x, 1)]).truncate_q(HalfInt::int(4));
        let r = s.reciprocal().unwrap();
        assert_eq!(r, Series::from_ints((0..4).map(|k| (x.pow(k), if k % 2 == 0 { 1 } else { -1 }))).truncate_q(HalfInt::int(4)));
        assert!((&s * &r).agrees_with(&Series::one().truncate_q(HalfInt::int(4))));
        // 1/(2 q) = q^-1/2
        let s = Series::from_ints([(q(1), 2)]).truncate_q(HalfInt::int(3));
        assert_eq!(s.reciprocal().unwrap().coeff(q(-1)), ratio(1, 2));
        assert_eq!(s.reciprocal().unwrap().q_order(), Some(HalfInt::int(1)));
    }

    #[test]
    fn display() {
        let s = Series::from_ints([(q(0), 1), (Monomial::y() * q(1), -2)]).truncate_q(HalfInt::int(2));
        assert_eq!(s.to_string(), "1 - 2*y*q + O(q^2)");
    }
}
