//! Single-particle indices as Euler expressions, and their plethystic
//! exponentials.
//!
//! `chi_N` below is the character of the Chevalley-Eilenberg complex of the
//! algebra `G_N`; its identification with the superconformal index of the
//! 6d (2,0) theory of type `gl(N)` (or `A_{N-1}` when reduced) is
//! conjectural.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lie::{chi_sl2, chi_sl3};
use crate::plethystic::pexp;
use crate::series::{Coeff, EulerExpr, Frame, HalfInt, Monomial, Series, Var};

/// A stack of `n` fivebranes; `reduced` removes the centre of mass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TheorySpec {
    pub n: u32,
    pub reduced: bool,
}

impl TheorySpec {
    pub fn full(n: u32) -> Self {
        assert!(n >= 1, "need at least one fivebrane");
        TheorySpec { n, reduced: false }
    }

    pub fn reduced(n: u32) -> Self {
        assert!(n >= 1, "need at least one fivebrane");
        TheorySpec { n, reduced: true }
    }

    /// Weights `k` of the summands `g_k` of `f_N`.
    pub fn weights(&self) -> std::ops::RangeInclusive<i64> {
        let lo = if self.reduced { 0 } else { -1 };
        lo..=self.n as i64 - 2
    }
}

impl fmt::Display for TheorySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reduced {
            write!(f, "A{}", self.n - 1)
        } else {
            write!(f, "gl{}", self.n)
        }
    }
}

impl FromStr for TheorySpec {
    type Err = Error;

    /// `A{n}` is the reduced stack of `n + 1` branes, `gl{n}` the full stack.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad theory {s:?} (expected A<n> or gl<n>)"));
        if let Some(rest) = s.strip_prefix("gl") {
            let n: u32 = rest.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(TheorySpec::full(n))
        } else if let Some(rest) = s.strip_prefix('A') {
            let n: u32 = rest.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(TheorySpec::reduced(n + 1))
        } else {
            Err(bad())
        }
    }
}

fn q(e: i32) -> Monomial {
    Monomial::q_int(e)
}

fn q_half(twice: i32) -> Monomial {
    Monomial::q(HalfInt::from_twice(twice))
}

/// Monomial from t-frame coordinates `(t1, t2, r, 2q)`.
fn t_mono(t1: i32, t2: i32, r: i32, q2: i32) -> Monomial {
    Frame::T.monomial([t1, t2, r, q2]).expect("t-frame coordinates are a lattice basis")
}

fn poly(terms: &[(Monomial, i64)]) -> Series {
    Series::from_ints(terms.iter().copied())
}

/// `(1 - y1 q)(1 - y2 q)(1 - y3 q)` as the expression `1/d`.
pub fn denominator_d() -> EulerExpr {
    EulerExpr::new(Series::one(), d_factors())
}

fn d_factors() -> Vec<Monomial> {
    vec![Monomial::y1() * q(1), Monomial::y2() * q(1), Monomial::y3() * q(1)]
}

/// `f_1` from its t-frame form
/// `(q^(3/2)(r + 1/r) - q^2(t1 + t2/t1 + 1/t2) + q^3) / ((1 - q/t1)(1 - t1 q/t2)(1 - t2 q))`.
pub fn single_particle_f1() -> EulerExpr {
    let num = poly(&[
        (t_mono(0, 0, 1, 3), 1),
        (t_mono(0, 0, -1, 3), 1),
        (t_mono(1, 0, 0, 4), -1),
        (t_mono(-1, 1, 0, 4), -1),
        (t_mono(0, -1, 0, 4), -1),
        (t_mono(0, 0, 0, 6), 1),
    ]);
    let den = vec![t_mono(-1, 0, 0, 2), t_mono(1, -1, 0, 2), t_mono(0, 1, 0, 2)];
    EulerExpr::new(num, den)
}

/// `f_1` from its y-frame form `(q y + q^2/y - q^2 sum 1/y_i + q^3) / d`.
pub fn single_particle_f1_y_form() -> EulerExpr {
    let y = Monomial::y();
    let mut num = poly(&[(y * q(1), 1), (y.inv() * q(2), 1), (q(3), 1)]);
    num = &num - &chi_sl3(0, 1).mul_monomial(q(2));
    EulerExpr::new(num, d_factors())
}

/// `p_k = q^(3k/2) chi_k(q^(-1/2) y)`, zero for negative `k`.
pub fn p_y(k: i64) -> Series {
    if k < 0 {
        return Series::zero();
    }
    chi_sl2(k as u32, Monomial::y() * q_half(-1)).mul_monomial(q_half(3 * k as i32))
}

/// `q^(3k/2) chi_k(q^(-1/2) y)` term by term up to `k_max`.
pub fn sl2_geometric_sum(k_max: u32) -> Series {
    (0..=k_max as i64).fold(Series::zero(), |acc, k| &acc + &p_y(k))
}

/// `g_0 = f~_2` from its display
/// `(q^4 sum y_i + q^2(y^2 + q + q^2/y^2) - q^3(y + q/y) sum 1/y_i) / d`.
pub fn g0_display() -> EulerExpr {
    let y = Monomial::y();
    let mut num = chi_sl3(1, 0).mul_monomial(q(4));
    num = &num + &poly(&[(y.pow(2) * q(2), 1), (q(3), 1), (y.pow(-2) * q(4), 1)]);
    let t = poly(&[(y * q(3), 1), (y.inv() * q(4), 1)]);
    num = &num - &(&t * &chi_sl3(0, 1));
    EulerExpr::new(num, d_factors())
}

/// Numerator of `g_k` for `k >= 0` from the general weight-`k` formula
/// `q^3 (q^(1+3k/2) chi_k chi_[1,0] + q^(3k/2) chi_(k+2)
///       - q^(3(k+1)/2) chi_(k-1) - q^(-1+3(k+1)/2) chi_(k+1) chi_[0,1])`
/// with the `sl(2)` characters at `q^(-1/2) y`.
fn gk_numerator(k: i64) -> Series {
    let u = Monomial::y() * q_half(-1);
    let chi = |j: i64| if j < 0 { Series::zero() } else { chi_sl2(j as u32, u) };
    let k2 = k as i32;
    let a = (&chi(k) * &chi_sl3(1, 0)).mul_monomial(q_half(2 + 3 * k2));
    let b = chi(k + 2).mul_monomial(q_half(3 * k2));
    let c = chi(k - 1).mul_monomial(q_half(3 * (k2 + 1)));
    let d = (&chi(k + 1) * &chi_sl3(0, 1)).mul_monomial(q_half(-2 + 3 * (k2 + 1)));
    (&(&(&a + &b) - &c) - &d).mul_monomial(q(3))
}

/// The weight-`k` single-particle index `g_k`, `k >= -1`.
///
/// `g_-1 = f_1`, `g_0 = f~_2`; for `k >= 0` the general formula is used
/// (at `k = 0` it reproduces [`g0_display`]).
pub fn single_particle_g(k: i64) -> Result<EulerExpr> {
    match k {
        k if k < -1 => Err(Error::InvalidWeight(k)),
        -1 => Ok(single_particle_f1()),
        k => Ok(EulerExpr::new(gk_numerator(k), d_factors())),
    }
}

/// `f_N = sum_k g_k` over the common denominator `d`.
pub fn single_particle_fn(spec: TheorySpec) -> EulerExpr {
    let terms: Vec<EulerExpr> = spec
        .weights()
        .map(|k| single_particle_g(k).expect("weights start at -1"))
        .collect();
    EulerExpr::sum(&terms)
}

/// `chi_N = PExp[f_N]` to `q^order`.
pub fn index_chi(spec: TheorySpec, order: HalfInt) -> Result<Series> {
    let f = single_particle_fn(spec).expand(order)?;
    pexp(&f, order)
}

/// `f_sugra` from its t-frame form with five denominator factors.
pub fn sugra_single_particle() -> EulerExpr {
    let num = poly(&[
        (t_mono(-1, 0, 0, 8), 1),
        (t_mono(1, -1, 0, 8), 1),
        (t_mono(0, 1, 0, 8), 1),
        (t_mono(1, 0, 0, 4), -1),
        (t_mono(-1, 1, 0, 4), -1),
        (t_mono(0, -1, 0, 4), -1),
        (t_mono(0, 0, 1, 3), 1),
        (t_mono(0, 0, -1, 3), 1),
        (t_mono(0, 0, 1, 9), -1),
        (t_mono(0, 0, -1, 9), -1),
    ]);
    let den = vec![
        t_mono(-1, 0, 0, 2),
        t_mono(0, 1, 0, 2),
        t_mono(1, -1, 0, 2),
        t_mono(0, 0, 1, 3),
        t_mono(0, 0, -1, 3),
    ];
    EulerExpr::new(num, den)
}

/// `f_sugra` from its y-frame form
/// `(q^4 sum y_i - q^2 sum 1/y_i + (1 - q^3)(y q + q^2/y)) / (d (1 - y q)(1 - q^2/y))`.
pub fn sugra_single_particle_y_form() -> EulerExpr {
    let y = Monomial::y();
    let mut num = &chi_sl3(1, 0).mul_monomial(q(4)) - &chi_sl3(0, 1).mul_monomial(q(2));
    let s = poly(&[(y * q(1), 1), (y.inv() * q(2), 1)]);
    num = &num + &(&poly(&[(q(0), 1), (q(3), -1)]) * &s);
    let mut den = d_factors();
    den.extend([y * q(1), y.inv() * q(2)]);
    EulerExpr::new(num, den)
}

/// `PExp[f_sugra]` to `q^order`.
pub fn sugra_chi(order: HalfInt) -> Result<Series> {
    pexp(&sugra_single_particle().expand(order)?, order)
}

/// `S(y, q) = 1/((1 - q y)(1 - q^2/y))`.
pub fn geometric_s() -> EulerExpr {
    let y = Monomial::y();
    EulerExpr::new(Series::one(), vec![y * q(1), y.inv() * q(2)])
}

/// `p_k(w1, w2) = sum_{i+j=k} w1^i w2^j`.
pub fn p_poly(k: u32) -> EulerExpr {
    EulerExpr::polynomial(p_w(k as i64))
}

fn p_w(k: i64) -> Series {
    if k < 0 {
        return Series::zero();
    }
    let (w1, w2) = (Var::W1.monomial(), Var::W2.monomial());
    Series::polynomial((0..=k as i32).map(|i| (w1.pow(i) * w2.pow(k as i32 - i), Coeff::one())))
}

fn zw_gk(k: u32, z123_power_on_p_km1: i32) -> EulerExpr {
    let k = k as i64;
    let (z1, z2, z3) = (Var::Z1.monomial(), Var::Z2.monomial(), Var::Z3.monomial());
    let z123 = z1 * z2 * z3;
    let sum_z = poly(&[(z1, 1), (z2, 1), (z3, 1)]);
    let sum_zz = poly(&[(z1 * z2, 1), (z2 * z3, 1), (z1 * z3, 1)]);
    let a = (&p_w(k) * &sum_z).mul_monomial(z123);
    let b = p_w(k + 2);
    let c = p_w(k - 1).mul_monomial(z123.pow(z123_power_on_p_km1));
    let d = &p_w(k + 1) * &sum_zz;
    EulerExpr::new(&(&(&a + &b) - &c) - &d, vec![z1, z2, z3])
}

/// `g_k` for `k >= 1` in the `z_i, w_a` coordinates:
/// `(z1z2z3 p_k (z1+z2+z3) + p_(k+2) - (z1z2z3)^2 p_(k-1) - p_(k+1)(z1z2+z2z3+z1z3))
///  / ((1-z1)(1-z2)(1-z3))`.
///
/// The `p_(k-1)` term carries `(z1 z2 z3)^2 = q^6`, as required by the
/// y-frame formula; see [`gk_zw_form_as_printed`].
pub fn gk_zw_form(k: u32) -> Result<EulerExpr> {
    if k < 1 {
        return Err(Error::InvalidWeight(k as i64));
    }
    Ok(zw_gk(k, 2))
}

/// The zw-form with a single power of `z1 z2 z3` on `p_(k-1)`, as it is
/// commonly displayed. It is not equal to `g_k`.
pub fn gk_zw_form_as_printed(k: u32) -> Result<EulerExpr> {
    if k < 1 {
        return Err(Error::InvalidWeight(k as i64));
    }
    Ok(zw_gk(k, 1))
}

/// `g_-1` after `z3, w2 -> 0`: `(w1 - z1 z2)/((1 - z1)(1 - z2))`.
pub fn g_minus1_limit() -> EulerExpr {
    let (z1, z2, w1) = (Var::Z1.monomial(), Var::Z2.monomial(), Var::W1.monomial());
    EulerExpr::new(poly(&[(w1, 1), (z1 * z2, -1)]), vec![z1, z2])
}

/// `w1^(k+1) g_-1(z1, z2, w1)`, the minimal reduction of `g_k`.
pub fn g_min(k: i64) -> Result<EulerExpr> {
    if k < -1 {
        return Err(Error::InvalidWeight(k));
    }
    Ok(g_minus1_limit().mul_monomial(Var::W1.monomial().pow(k as i32 + 1)))
}

/// Doubled `q`-order equivalent to "total degree in `z1, z2, w1` at most
/// `degree`": on the `z3 = w2 = 0` sublattice the total degree is the
/// `q`-exponent.
fn degree_order(degree: u32) -> HalfInt {
    HalfInt::int(degree as i32 + 1)
}

/// `PExp[sum_{k=-1}^{N-2} w1^(k+1) g_-1]` to total degree `degree`.
pub fn minimal_index(n: u32, degree: u32) -> Result<Series> {
    let order = degree_order(degree);
    let terms: Vec<EulerExpr> = (-1..=n as i64 - 2).map(g_min).collect::<Result<_>>()?;
    let f = EulerExpr::sum(&terms).expand(order)?;
    pexp(&f, order)
}

/// `prod_{a=1..N} prod_{b,c>=0} (1 - w1^(a-1) z1^(b+1) z2^(c+1)) / (1 - w1^a z1^b z2^c)`
/// to total degree `degree`.
///
/// Every factor monomial has positive total degree (the denominator carries
/// `w1^a` with `a >= 1`), so no `(1 - 1)` factor arises in these ranges;
/// this is asserted.
pub fn minimal_index_product(n: u32, degree: u32) -> Result<Series> {
    let order = degree_order(degree);
    let (z1, z2, w1) = (Var::Z1.monomial(), Var::Z2.monomial(), Var::W1.monomial());
    let d = degree as i32;
    let mut acc = Series::one().truncate_q(order);
    for a in 1..=n as i32 {
        for b in 0..=d {
            for c in 0..=d {
                let up = w1.pow(a - 1) * z1.pow(b + 1) * z2.pow(c + 1);
                assert!(!up.is_one(), "unit numerator factor");
                if a - 1 + b + c + 2 <= d {
                    acc = &acc * &poly(&[(Monomial::ONE, 1), (up, -1)]);
                }
                let down = w1.pow(a) * z1.pow(b) * z2.pow(c);
                assert!(!down.is_one(), "unit denominator factor");
                if a + b + c <= d {
                    acc = acc.div_one_minus(down)?;
                }
            }
        }
    }
    Ok(acc)
}

/// Named entries of the catalogue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    F1,
    G(i64),
    FN(TheorySpec),
    FSugra,
    S,
    D,
    P(u32),
    GkZw(u32),
    GMin(i64),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::F1 => write!(f, "f1"),
            Label::G(k) => write!(f, "g{k}"),
            Label::FN(spec) => write!(f, "f_{spec}"),
            Label::FSugra => write!(f, "f_sugra"),
            Label::S => write!(f, "S"),
            Label::D => write!(f, "d"),
            Label::P(k) => write!(f, "p{k}"),
            Label::GkZw(k) => write!(f, "g{k}_zw"),
            Label::GMin(k) => write!(f, "g{k}_min"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IndexCatalogEntry {
    pub label: Label,
    pub expr: EulerExpr,
    /// Frame the expression is naturally written in.
    pub frame: Frame,
}

/// Every catalogued expression with weights up to `k_max`.
pub fn catalog(k_max: u32) -> Vec<IndexCatalogEntry> {
    let entry = |label, expr, frame| IndexCatalogEntry { label, expr, frame };
    let mut out = vec![
        entry(Label::D, denominator_d(), Frame::Canonical),
        entry(Label::F1, single_particle_f1(), Frame::T),
        entry(Label::FSugra, sugra_single_particle(), Frame::T),
        entry(Label::S, geometric_s(), Frame::Canonical),
    ];
    for k in -1..=k_max as i64 {
        out.push(entry(Label::G(k), single_particle_g(k).expect("k >= -1"), Frame::Canonical));
        out.push(entry(Label::GMin(k), g_min(k).expect("k >= -1"), Frame::Zw));
    }
    for k in 1..=k_max {
        out.push(entry(Label::GkZw(k), gk_zw_form(k).expect("k >= 1"), Frame::Zw));
    }
    for k in 0..=k_max + 2 {
        out.push(entry(Label::P(k), p_poly(k), Frame::Zw));
    }
    for n in 1..=k_max + 2 {
        out.push(entry(Label::FN(TheorySpec::full(n)), single_particle_fn(TheorySpec::full(n)), Frame::Canonical));
        out.push(entry(
            Label::FN(TheorySpec::reduced(n)),
            single_particle_fn(TheorySpec::reduced(n)),
            Frame::Canonical,
        ));
    }
    out
}

/// Coefficient-wise check that a series is made of integers at integral
/// `q`-powers.
pub fn is_integral(s: &Series) -> bool {
    s.has_integer_coefficients() && s.has_integer_q_powers()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{limit_zero, Specialization, ZwVar};

    fn order(n: i32) -> HalfInt {
        HalfInt::int(n)
    }

    #[test]
    fn f1_frames_agree() {
        assert!(single_particle_f1().same_function(&single_particle_f1_y_form()));
        assert_eq!(single_particle_f1(), single_particle_f1_y_form());
    }

    #[test]
    fn g0_matches_display() {
        assert_eq!(single_particle_g(0).unwrap(), g0_display());
    }

    #[test]
    fn sugra_frames_agree() {
        assert!(sugra_single_particle().same_function(&sugra_single_particle_y_form()));
    }

    #[test]
    fn schur_limits() {
        let one_minus_q = |num: Series| EulerExpr::new(num, vec![q(1)]);
        let s = Specialization::schur();
        let f1 = s.apply_euler(&single_particle_f1()).unwrap();
        assert!(f1.same_function(&one_minus_q(Series::monomial(q(1)))));
        let g0 = s.apply_euler(&g0_display()).unwrap();
        assert!(g0.same_function(&one_minus_q(Series::monomial(q(2)))));
        for k in 1..=5 {
            let gk = s.apply_euler(&single_particle_g(k).unwrap()).unwrap();
            assert!(gk.same_function(&one_minus_q(Series::monomial(q(k as i32 + 2)))), "k = {k}");
        }
        let sugra = Specialization::schur_t().apply_euler(&sugra_single_particle()).unwrap();
        assert!(sugra.same_function(&EulerExpr::new(Series::monomial(q(1)), vec![q(1), q(1)])));
    }

    #[test]
    fn leading_terms() {
        let f1 = single_particle_f1().expand(order(3)).unwrap();
        assert_eq!(f1.q_level(order(1)), Series::monomial(Monomial::y() * q(1)));
        let g1 = single_particle_g(1).unwrap().expand(order(4)).unwrap();
        assert_eq!(g1, Series::monomial(Monomial::new(0, 0, 3, 6)).truncate_q(order(4)));
        let g3 = single_particle_g(3).unwrap().expand(order(6)).unwrap();
        assert_eq!(g3, Series::monomial(Monomial::new(0, 0, 5, 10)).truncate_q(order(6)));
    }

    #[test]
    fn d_specialisations() {
        let d = Specialization::new([(Var::Y3, Monomial::ONE)]).apply_euler(&denominator_d()).unwrap();
        let mut dens = d.denominators().to_vec();
        dens.sort();
        let mut expected = vec![q(1), Monomial::y1() * q(1), Monomial::y1().inv() * q(1)];
        expected.sort();
        assert_eq!(dens, expected);
    }

    #[test]
    fn telescoping_and_additivity() {
        let f5 = single_particle_fn(TheorySpec::full(5));
        let f4 = single_particle_fn(TheorySpec::full(4));
        assert!(f5.sub(&f4).same_function(&single_particle_g(3).unwrap()));
        assert_eq!(single_particle_fn(TheorySpec::full(1)), single_particle_f1());
        assert!(single_particle_fn(TheorySpec::reduced(2)).same_function(&g0_display()));
    }

    #[test]
    fn zw_form_equals_gk_and_printed_form_does_not() {
        for k in 1..=3 {
            let g = single_particle_g(k as i64).unwrap();
            assert!(gk_zw_form(k).unwrap().same_function(&g), "k = {k}");
            assert!(!gk_zw_form_as_printed(k).unwrap().same_function(&g), "k = {k}");
        }
    }

    #[test]
    fn minimal_limits() {
        let lim = [ZwVar::Z3, ZwVar::W2];
        let f1 = limit_zero(&single_particle_f1(), &lim).unwrap();
        assert!(f1.same_function(&g_minus1_limit()));
        for k in 0..=3 {
            let gk = limit_zero(&single_particle_g(k).unwrap(), &lim).unwrap();
            assert!(gk.same_function(&g_min(k).unwrap()), "k = {k}");
        }
    }

    #[test]
    fn minimal_product_matches_pexp() {
        for n in 1..=2 {
            assert_eq!(minimal_index(n, 6).unwrap(), minimal_index_product(n, 6).unwrap(), "N = {n}");
        }
    }

    #[test]
    fn theory_names() {
        assert_eq!("A1".parse::<TheorySpec>().unwrap(), TheorySpec::reduced(2));
        assert_eq!("gl3".parse::<TheorySpec>().unwrap(), TheorySpec::full(3));
        assert!("gl0".parse::<TheorySpec>().is_err());
        assert!("B2".parse::<TheorySpec>().is_err());
        assert_eq!(TheorySpec::reduced(3).to_string(), "A2");
    }
}
