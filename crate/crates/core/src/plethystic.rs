//! Adams operations and the plethystic exponential and logarithm.
//!
//! Signs live in the coefficients: a term `-m` is a fermionic generator and
//! `pexp(-m) = 1 - m`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{int, ratio, Coeff, HalfInt, Monomial, Series};

/// Multiply every exponent vector, and the truncation order, by `n`.
pub fn adams(f: &Series, n: u32) -> Series {
    assert!(n >= 1, "adams needs n >= 1");
    let n = n as i32;
    let order = f.order().map(|o| o * n as i64);
    f.map_monomials(|m| m.pow(n), order)
}

/// Split a series into its homogeneous pieces.
fn levels(f: &Series) -> BTreeMap<i64, Series> {
    let mut out: BTreeMap<i64, Vec<(Monomial, Coeff)>> = BTreeMap::new();
    for (m, c) in f.iter() {
        out.entry(f.degree(*m)).or_default().push((*m, c.clone()));
    }
    out.into_iter().map(|(g, t)| (g, Series::polynomial(t))).collect()
}

fn reassemble(f: &Series, pieces: BTreeMap<i64, Series>, order: i64) -> Series {
    let mut acc = Series::zero().regrade(f.grading(), Some(order)).expect("zero is exact");
    for p in pieces.values() {
        acc = &acc + &p.regrade(f.grading(), None).expect("levels are exact");
    }
    acc.truncate(order)
}

fn effective_order(f: &Series, order: i64) -> i64 {
    f.order().map_or(order, |o| o.min(order))
}

/// `exp(sum_{n>=1} adams(f, n) / n)` truncated at grade `order`.
///
/// Every term of `f` must have strictly positive grade.
pub fn pexp_graded(f: &Series, order: i64) -> Result<Series> {
    if let Some((m, _)) = f.iter().find(|(m, _)| f.degree(**m) <= 0) {
        return Err(Error::ConstantTermError(*m));
    }
    let order = effective_order(f, order);
    let f = f.truncate(order);
    let Some(v) = f.valuation() else {
        return Ok(reassemble(&f, BTreeMap::from([(0, Series::one())]), order));
    };
    // sum_n adams(f, n)/n, only n with n * v < order contribute
    let mut g = Series::zero().regrade(f.grading(), Some(order))?;
    let mut n = 1;
    while n * v < order {
        let a = adams(&f, n as u32).truncate(order);
        g = &g + &a.scale(&ratio(1, n));
        n += 1;
    }
    Ok(exp_levels(&g, order))
}

/// [`pexp_graded`] for `q`-graded series, truncated at `q^order`.
pub fn pexp(f: &Series, order: HalfInt) -> Result<Series> {
    pexp_graded(f, order.twice() as i64)
}

/// `exp(g)` for `g` with strictly positive grades, via
/// `c F_c = sum_{j=1..c} j G_j F_{c-j}`.
fn exp_levels(g: &Series, order: i64) -> Series {
    let gl = levels(g);
    let mut fl: BTreeMap<i64, Series> = BTreeMap::from([(0, Series::one())]);
    for c in 1..order {
        let mut acc = Series::zero();
        for (j, gj) in gl.range(1..=c) {
            if let Some(fc) = fl.get(&(c - j)) {
                acc = &acc + &(gj * fc).scale(&int(*j));
            }
        }
        if !acc.is_zero() {
            fl.insert(c, acc.scale(&ratio(1, c)));
        }
    }
    reassemble(g, fl, order)
}

/// `log(F)` for `F` with constant term 1 and all other grades positive, via
/// `c L_c = c F_c - sum_{j=1..c-1} j L_j F_{c-j}`.
fn log_levels(f: &Series, order: i64) -> Result<Series> {
    let fl = levels(f);
    match fl.first_key_value() {
        Some((0, f0)) if *f0 == Series::one() => {}
        _ => return Err(Error::UnitConstantTermError),
    }
    if fl.keys().any(|g| *g < 0) {
        return Err(Error::UnitConstantTermError);
    }
    let mut ll: BTreeMap<i64, Series> = BTreeMap::new();
    for c in 1..order {
        let mut acc = fl.get(&c).map(|s| s.scale(&int(c))).unwrap_or_else(Series::zero);
        for (j, lj) in ll.range(1..c) {
            if let Some(fc) = fl.get(&(c - j)) {
                acc = &acc - &(lj * fc).scale(&int(*j));
            }
        }
        if !acc.is_zero() {
            ll.insert(c, acc.scale(&ratio(1, c)));
        }
    }
    Ok(reassemble(f, ll, order))
}

/// Moebius function.
pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// The unique `g` with `pexp(g) = F` to grade `order`:
/// `sum_n mu(n)/n adams(log F, n)`.
pub fn plog_graded(f: &Series, order: i64) -> Result<Series> {
    let order = effective_order(f, order);
    let l = log_levels(&f.truncate(order), order)?;
    let mut g = Series::zero().regrade(f.grading(), Some(order))?;
    let Some(v) = l.valuation() else { return Ok(g) };
    let mut n = 1;
    while n * v < order {
        let mu = mobius(n as u64);
        if mu != 0 {
            let a = adams(&l, n as u32).truncate(order);
            g = &g + &a.scale(&ratio(mu, n));
        }
        n += 1;
    }
    Ok(g)
}

/// [`plog_graded`] for `q`-graded series, truncated at `q^order`.
pub fn plog(f: &Series, order: HalfInt) -> Result<Series> {
    plog_graded(f, order.twice() as i64)
}

/// `prod_{n>=1} (1 - q^n)^(-n^e)` to `q^order`: partitions for `e = 0`,
/// plane partitions (MacMahon) for `e = 1`. Used as an independent oracle.
pub fn eta_like_product(exponent: u32, order: i32) -> Series {
    // p(m) = (1/m) sum_{k=1..m} sigma(k) p(m-k) with sigma(k) = sum_{d|k} d * d^e
    let sigma = |k: i64| -> Coeff {
        (1..=k)
            .filter(|d| k % d == 0)
            .map(|d| int(d * d.pow(exponent)))
            .fold(Coeff::zero(), |a, b| a + b)
    };
    let mut p: Vec<Coeff> = vec![Coeff::one()];
    for m in 1..order as i64 {
        let s = (1..=m).fold(Coeff::zero(), |acc, k| acc + sigma(k) * &p[(m - k) as usize]);
        p.push(s / int(m));
    }
    Series::polynomial(p.into_iter().enumerate().map(|(i, c)| (Monomial::q_int(i as i32), c)))
        .truncate_q(HalfInt::int(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::EulerExpr;

    fn q(n: i32) -> Monomial {
        Monomial::q_int(n)
    }

    fn ints(v: &[i64], order: i32) -> Series {
        Series::from_ints(v.iter().enumerate().map(|(i, c)| (q(i as i32), *c))).truncate_q(HalfInt::int(order))
    }

    #[test]
    fn adams_examples() {
        assert_eq!(adams(&Series::monomial(q(1)), 3), Series::monomial(q(3)));
        let y = Monomial::y();
        let f = Series::from_ints([(y * q(1), 1), (y.inv() * q(2), 1)]);
        assert_eq!(adams(&f, 2), Series::from_ints([(y.pow(2) * q(2), 1), (y.pow(-2) * q(4), 1)]));
        let t = f.truncate_q(HalfInt::int(3));
        assert_eq!(adams(&t, 1), t);
        assert_eq!(adams(&t, 2).q_order(), Some(HalfInt::int(6)));
    }

    #[test]
    fn partitions() {
        let f = EulerExpr::new(Series::monomial(q(1)), vec![q(1)]).expand(HalfInt::int(6)).unwrap();
        assert_eq!(pexp(&f, HalfInt::int(6)).unwrap(), ints(&[1, 1, 2, 3, 5, 7], 6));
        assert_eq!(eta_like_product(0, 6), ints(&[1, 1, 2, 3, 5, 7], 6));
        assert_eq!(eta_like_product(1, 6), ints(&[1, 1, 3, 6, 13, 24], 6));
    }

    #[test]
    fn single_generators() {
        let m = Monomial::y() * q(1);
        let b = pexp(&Series::monomial(m), HalfInt::int(4)).unwrap();
        assert_eq!(b, EulerExpr::geometric(m).expand(HalfInt::int(4)).unwrap());
        let f = pexp(&Series::from_ints([(m, -1)]), HalfInt::int(4)).unwrap();
        assert_eq!(f, Series::from_ints([(Monomial::ONE, 1), (m, -1)]).truncate_q(HalfInt::int(4)));
    }

    #[test]
    fn constant_term_rejected() {
        let f = Series::from_ints([(Monomial::y(), 1), (q(1), 1)]);
        assert!(matches!(pexp(&f, HalfInt::int(3)), Err(Error::ConstantTermError(_))));
        let f = Series::from_ints([(Monomial::y() * q(-1), 1)]);
        assert!(matches!(pexp(&f, HalfInt::int(3)), Err(Error::ConstantTermError(_))));
    }

    #[test]
    fn plog_examples() {
        // one bosonic generator q
        let f = EulerExpr::geometric(q(1)).expand(HalfInt::int(4)).unwrap();
        assert_eq!(plog(&f, HalfInt::int(4)).unwrap(), ints(&[0, 1], 4));
        // q/(1-q) generates the partition function
        assert_eq!(plog(&eta_like_product(0, 6), HalfInt::int(6)).unwrap(), ints(&[0, 1, 1, 1, 1, 1], 6));
        assert!(plog(&Series::one(), HalfInt::int(5)).unwrap().is_zero());
        assert!(matches!(plog(&ints(&[2, 1], 3), HalfInt::int(3)), Err(Error::UnitConstantTermError)));
    }

    #[test]
    fn mobius_values() {
        let v: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(v, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn half_integer_grades() {
        let m = Monomial::q(HalfInt::from_twice(3));
        let f = Series::monomial(m);
        let p = pexp(&f, HalfInt::int(5)).unwrap();
        assert_eq!(p.coeff(Monomial::q_int(3)), int(1));
        assert_eq!(plog(&p, HalfInt::int(5)).unwrap(), f.truncate_q(HalfInt::int(5)));
    }
}
