//! Weyl characters of `sl(2)` and `sl(3)` as Laurent polynomials.

use std::collections::BTreeMap;

use num_traits::One;

use crate::series::{Coeff, Monomial, Series};

/// `sl(2)` irrep of highest weight `k` evaluated at the monomial `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sl2CharSpec {
    pub k: u32,
    pub argument: Monomial,
}

/// `sl(3)` irrep with Dynkin labels `[a, b]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl3CharSpec {
    pub a: u32,
    pub b: u32,
}

/// `sum_{i=0..k} u^(k-2i)`.
pub fn char_sl2(spec: Sl2CharSpec) -> Series {
    let k = spec.k as i32;
    Series::polynomial((0..=k).map(|i| (spec.argument.pow(k - 2 * i), Coeff::one())))
}

/// Shorthand for [`char_sl2`].
pub fn chi_sl2(k: u32, u: Monomial) -> Series {
    char_sl2(Sl2CharSpec { k, argument: u })
}

/// Weights of the `[a, b]` irrep with multiplicities, as `(l1, l2, l3)`
/// triples normalised so that the last entry is subtracted off; the result
/// is keyed by the exponents of `y1` and `y2`.
///
/// Enumerates Gelfand-Tsetlin patterns with top row `(a + b, b, 0)`.
fn sl3_weights(spec: Sl3CharSpec) -> BTreeMap<(i32, i32), u64> {
    let l1 = (spec.a + spec.b) as i32;
    let l2 = spec.b as i32;
    let l3 = 0;
    let total = l1 + l2 + l3;
    let mut out = BTreeMap::new();
    for m1 in l2..=l1 {
        for m2 in l3..=l2 {
            for n in m2..=m1 {
                let w1 = n;
                let w2 = m1 + m2 - n;
                let w3 = total - m1 - m2;
                *out.entry((w1 - w3, w2 - w3)).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Weyl character of `[a, b]` in `y1, y2` (with `y3 = 1/(y1 y2)`).
///
/// The weight `(l1, l2, l3)` contributes `y1^l1 y2^l2 y3^l3`.
pub fn char_sl3(spec: Sl3CharSpec) -> Series {
    Series::from_ints(
        sl3_weights(spec)
            .into_iter()
            .map(|((e1, e2), mult)| (Monomial::new(e1, e2, 0, 0), mult as i64)),
    )
}

/// Shorthand for [`char_sl3`].
pub fn chi_sl3(a: u32, b: u32) -> Series {
    char_sl3(Sl3CharSpec { a, b })
}

/// Dimension by counting Gelfand-Tsetlin patterns.
pub fn dim_sl3(a: u32, b: u32) -> u64 {
    sl3_weights(Sl3CharSpec { a, b }).values().sum()
}

/// Weyl dimension formula.
pub fn dim_sl3_formula(a: u32, b: u32) -> u64 {
    let (a, b) = (a as u64, b as u64);
    (a + 1) * (b + 1) * (a + b + 2) / 2
}
