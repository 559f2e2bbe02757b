//! Brute-force characters of jets of the bundles `V^(k)` on the formal
//! 3-disk, an independent check on the closed formulas for `g_k`.
//!
//! A local operator of a summand `S^j (C^2) (x) E (x) K^p` is a fiber vector
//! times a monomial `z1^n1 z2^n2 z3^n3`. Its weight is assembled from the
//! field weights of the coordinates, a choice of dualisation, a Serre twist
//! and a parity sign. Those choices are fixed by [`calibrate_conventions`].

use std::fmt;

use crate::error::{Error, Result};
use crate::lie::chi_sl2;
use crate::series::{int, Coeff, Frame, HalfInt, Monomial, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sl3Slot {
    Trivial,
    Tangent,
    Cotangent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// One summand `S^j (C^2) (x) slot (x) K^p` with a parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Summand {
    pub sl2_weight: u32,
    pub slot: Sl3Slot,
    /// The power `p` of the canonical bundle.
    pub canonical_power: HalfInt,
    pub parity: Parity,
}

impl Summand {
    pub fn rank(&self) -> u32 {
        let slot = match self.slot {
            Sl3Slot::Trivial => 1,
            Sl3Slot::Tangent | Sl3Slot::Cotangent => 3,
        };
        (self.sl2_weight + 1) * slot
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSpec {
    pub summands: Vec<Summand>,
}

fn summand(sl2_weight: u32, slot: Sl3Slot, twice_p: i32, parity: Parity) -> Summand {
    Summand { sl2_weight, slot, canonical_power: HalfInt::from_twice(twice_p), parity }
}

/// The bundle `V^(k)` whose jets carry the weight-`k` operators.
///
/// * `k = -1`: `K^(1/2) (x) C^2 + O + Pi T*`,
/// * `k = 0`: `T + sl(2) (x) O + Pi T* (x) K^(-1/2) (x) C^2`,
/// * `k >= 1`: `S^k (x) T (x) K^(-k/2) + S^(k+2) (x) K^(-k/2)` even and
///   `S^(k-1) (x) K^(-(k+1)/2) + S^(k+1) (x) T* (x) K^(-(k+1)/2)` odd.
pub fn bundle_spec_for_weight(k: i64) -> Result<BundleSpec> {
    use Parity::*;
    use Sl3Slot::*;
    let summands = match k {
        k if k < -1 => return Err(Error::InvalidWeight(k)),
        -1 => vec![summand(1, Trivial, 1, Even), summand(0, Trivial, 0, Even), summand(0, Cotangent, 0, Odd)],
        0 => vec![summand(0, Tangent, 0, Even), summand(2, Trivial, 0, Even), summand(1, Cotangent, -1, Odd)],
        k => {
            let j = k as u32;
            let k = k as i32;
            vec![
                summand(j, Tangent, -k, Even),
                summand(j + 2, Trivial, -k, Even),
                summand(j - 1, Trivial, -(k + 1), Odd),
                summand(j + 1, Cotangent, -(k + 1), Odd),
            ]
        }
    };
    Ok(BundleSpec { summands })
}

/// `V^(-1)` without the trivial line `O`, i.e. without the central
/// extension direction.
pub fn bundle_spec_weight_minus1_without_centre() -> BundleSpec {
    let mut spec = bundle_spec_for_weight(-1).expect("k = -1 is valid");
    spec.summands.retain(|s| !(s.slot == Sl3Slot::Trivial && s.sl2_weight == 0));
    spec
}

/// Field weights of the coordinates as tabulated: exponents of
/// `(t1, t2, r, 2q)` where the `t1, t2` rows are the `sl(3)` weights in the
/// orthonormal basis, `z_i -> e_i`. In the fugacities `y_i` this is
/// `y_i^-1`; see [`tabulated_weight`].
pub const COORDINATE_WEIGHTS: [(&str, [i32; 4]); 5] = [
    ("z1", [1, 0, 0, -2]),
    ("z2", [0, 1, 0, -2]),
    ("z3", [-1, -1, 0, -2]),
    ("w1", [0, 0, 1, 3]),
    ("w2", [0, 0, -1, 3]),
];

/// A tabulated weight as a canonical monomial: `e_1, e_2` become
/// `y1^-1, y2^-1` (so `e_3 = -e_1 - e_2` becomes `y3^-1`), `r` and `q` keep
/// their meaning.
pub fn tabulated_weight(i: usize) -> Monomial {
    let [e1, e2, r, q2] = COORDINATE_WEIGHTS[i].1;
    Monomial::new(-e1, -e2, 0, 0) * crate::series::Var::R.monomial().pow(r) * Monomial::new(0, 0, 0, q2)
}

fn coordinate_weight(i: usize) -> Monomial {
    tabulated_weight(i)
}

/// How the canonical bundle enters the operator weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SerreTwist {
    /// Multiply by the weight of `K*`.
    KDual,
    /// Multiply by the weight of `K`.
    K,
    None,
}

/// The sign and duality rules turning field weights into operator weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightConvention {
    /// Operators on the coordinates carry inverse field weights.
    pub dualize_coordinates: bool,
    /// Fiber vectors carry inverse field weights.
    pub dualize_fiber: bool,
    pub serre_twist: SerreTwist,
    /// Count even summands negatively instead of odd ones.
    pub parity_flip: bool,
    calibrated: bool,
}

impl WeightConvention {
    /// All 24 candidate conventions, none of them calibrated.
    pub fn candidates() -> Vec<WeightConvention> {
        let mut out = Vec::new();
        for dualize_coordinates in [true, false] {
            for dualize_fiber in [false, true] {
                for serre_twist in [SerreTwist::KDual, SerreTwist::K, SerreTwist::None] {
                    for parity_flip in [false, true] {
                        out.push(WeightConvention {
                            dualize_coordinates,
                            dualize_fiber,
                            serre_twist,
                            parity_flip,
                            calibrated: false,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_calibrated(&self) -> bool {
        self.calibrated
    }

    /// Operator weight of the coordinate monomial `z_i`, `i` in `0..3`.
    pub fn coordinate_operator_weight(&self, i: usize) -> Monomial {
        let w = coordinate_weight(i);
        if self.dualize_coordinates {
            w.inv()
        } else {
            w
        }
    }

    fn canonical_weight() -> Monomial {
        coordinate_weight(0) * coordinate_weight(1) * coordinate_weight(2)
    }

    fn twist(&self) -> Monomial {
        match self.serre_twist {
            SerreTwist::KDual => Self::canonical_weight().inv(),
            SerreTwist::K => Self::canonical_weight(),
            SerreTwist::None => Monomial::ONE,
        }
    }

    fn sign(&self, parity: Parity) -> i64 {
        match (parity, self.parity_flip) {
            (Parity::Even, false) | (Parity::Odd, true) => 1,
            _ => -1,
        }
    }
}

impl fmt::Display for WeightConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coordinates {}, fiber {}, twist {:?}, {} summands negative",
            if self.dualize_coordinates { "dualised" } else { "as fields" },
            if self.dualize_fiber { "dualised" } else { "as fields" },
            self.serre_twist,
            if self.parity_flip { "even" } else { "odd" },
        )
    }
}

/// Field weights of a basis of the fiber of one summand, with multiplicity.
fn fiber_weights(s: &Summand) -> Series {
    let r = Frame::T.monomial([0, 0, 1, 0]).expect("unit vector");
    let sl2 = chi_sl2(s.sl2_weight, r);
    let slot = match s.slot {
        Sl3Slot::Trivial => Series::one(),
        // d/dz_i has the inverse weight of z_i, dz_i the weight of z_i
        Sl3Slot::Tangent => Series::from_ints((0..3).map(|i| (coordinate_weight(i).inv(), 1))),
        Sl3Slot::Cotangent => Series::from_ints((0..3).map(|i| (coordinate_weight(i), 1))),
    };
    // K^p has the weight of (dz1 dz2 dz3)^p; p may be half-integral, the
    // canonical weight q^-3 has an even doubled exponent so this is exact.
    let k = WeightConvention::canonical_weight();
    assert_eq!(k.coords()[..3], [0, 0, 0], "canonical bundle carries only q-weight");
    let kp = Monomial::new(0, 0, 0, k.c2 * s.canonical_power.twice() / 2);
    (&sl2 * &slot).mul_monomial(kp)
}

fn jet_character_unchecked(spec: &BundleSpec, conv: &WeightConvention, order: HalfInt) -> Series {
    let order2 = order.twice() as i64;
    // every coordinate operator changes the doubled q-exponent by the same
    // amount under any convention, so bounding n1+n2+n3 bounds q
    let step = conv.coordinate_operator_weight(0).c2 as i64;
    let mut terms = Vec::new();
    for s in &spec.summands {
        let mut fiber = fiber_weights(s);
        if conv.dualize_fiber {
            fiber = fiber.map_monomials(|m| m.inv(), None);
        }
        let fiber = fiber.mul_monomial(conv.twist());
        let sign = int(conv.sign(s.parity));
        let min_c2 = fiber.iter().map(|(m, _)| m.c2 as i64).min().unwrap_or(0);
        let max_n = if step > 0 { ((order2 - min_c2).max(0) / step) as i32 } else { (order2 / 2) as i32 + 2 };
        for total in 0..=max_n {
            for n1 in 0..=total {
                for n2 in 0..=total - n1 {
                    let n3 = total - n1 - n2;
                    let z = conv.coordinate_operator_weight(0).pow(n1)
                        * conv.coordinate_operator_weight(1).pow(n2)
                        * conv.coordinate_operator_weight(2).pow(n3);
                    for (f, c) in fiber.iter() {
                        let c: Coeff = c * &sign;
                        terms.push((*f * z, c));
                    }
                }
            }
        }
    }
    Series::polynomial(terms).truncate_q(order)
}

/// Character of all jets of `spec` to `q^order` under a calibrated convention.
pub fn jet_character(spec: &BundleSpec, conv: &WeightConvention, order: HalfInt) -> Result<Series> {
    if !conv.calibrated {
        return Err(Error::UncalibratedConvention);
    }
    Ok(jet_character_unchecked(spec, conv, order))
}

/// Jet character under an arbitrary, possibly uncalibrated, convention.
pub fn jet_character_with(spec: &BundleSpec, conv: &WeightConvention, order: HalfInt) -> Series {
    jet_character_unchecked(spec, conv, order)
}

/// Find the unique convention for which the `k = -1` and `k = 0` jets
/// reproduce `f_1` and `g_0` to `q^order`.
pub fn calibrate_conventions(order: HalfInt) -> Result<WeightConvention> {
    let targets = [
        (bundle_spec_for_weight(-1)?, crate::index::single_particle_f1().expand(order)?),
        (bundle_spec_for_weight(0)?, crate::index::g0_display().expand(order)?),
    ];
    let matches: Vec<WeightConvention> = WeightConvention::candidates()
        .into_iter()
        .filter(|c| targets.iter().all(|(spec, target)| jet_character_unchecked(spec, c, order) == *target))
        .collect();
    match matches.as_slice() {
        [one] => Ok(WeightConvention { calibrated: true, ..*one }),
        _ => Err(Error::CalibrationFailed(
            matches.len(),
            matches.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; "),
        )),
    }
}

/// Multiplicities of `chi_j(r)` in a Laurent polynomial in `r` given by its
/// coefficients `r^e -> c`, or `None` if some multiplicity is negative.
pub fn sl2_multiplicities(r_content: &std::collections::BTreeMap<i32, Coeff>) -> Option<Vec<(u32, Coeff)>> {
    use num_traits::{Signed, Zero};
    let mut rest = r_content.clone();
    let mut out = Vec::new();
    while let Some((&top, c)) = rest.iter().next_back() {
        let c = c.clone();
        if top < 0 || c.is_negative() {
            return None;
        }
        for i in 0..=top {
            let e = rest.entry(top - 2 * i).or_insert_with(Coeff::zero);
            *e -= &c;
            if e.is_zero() {
                rest.remove(&(top - 2 * i));
            }
        }
        out.push((top as u32, c));
    }
    Some(out)
}

/// Group a series by t-frame `(t1, t2, q)` and collect the `r`-content of
/// each group.
pub fn r_content_by_level(s: &Series) -> std::collections::BTreeMap<(i32, i32, i32), std::collections::BTreeMap<i32, Coeff>> {
    let mut out: std::collections::BTreeMap<(i32, i32, i32), std::collections::BTreeMap<i32, Coeff>> = Default::default();
    for (m, c) in s.iter() {
        let t = Frame::T.coords(*m);
        *out.entry((t[3], t[0], t[1])).or_default().entry(t[2]).or_insert_with(|| int(0)) += c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{single_particle_f1, single_particle_g};

    #[test]
    fn bundle_ranks() {
        let spec = bundle_spec_for_weight(1).unwrap();
        assert_eq!(spec.summands[0], summand(1, Sl3Slot::Tangent, -1, Parity::Even));
        assert_eq!(spec.summands[1], summand(3, Sl3Slot::Trivial, -1, Parity::Even));
        let ranks: Vec<u32> = spec.summands.iter().map(Summand::rank).collect();
        assert_eq!(ranks, vec![6, 4, 1, 9]);
        assert_eq!(bundle_spec_for_weight(-1).unwrap().summands.len(), 3);
        assert!(matches!(bundle_spec_for_weight(-2), Err(Error::InvalidWeight(-2))));
    }

    #[test]
    fn calibration_is_unique() {
        let c = calibrate_conventions(HalfInt::int(5)).unwrap();
        assert!(c.dualize_coordinates);
        assert!(!c.dualize_fiber);
        assert_eq!(c.serre_twist, SerreTwist::KDual);
        assert!(!c.parity_flip);
        // operators on z_i carry the zw-frame weight y_i q
        let vars = [crate::series::Var::Z1, crate::series::Var::Z2, crate::series::Var::Z3];
        for (i, v) in vars.into_iter().enumerate() {
            assert_eq!(c.coordinate_operator_weight(i), v.monomial());
        }
        // the w_a rows: w1 = y q as a field weight
        assert_eq!(tabulated_weight(3), crate::series::Var::W1.monomial());
    }

    #[test]
    fn uncalibrated_is_rejected() {
        let c = WeightConvention::candidates()[0];
        let spec = bundle_spec_for_weight(1).unwrap();
        assert!(matches!(jet_character(&spec, &c, HalfInt::int(3)), Err(Error::UncalibratedConvention)));
    }

    #[test]
    fn wrong_fiber_duality_loses_the_doublet() {
        let good = calibrate_conventions(HalfInt::int(4)).unwrap();
        let bad = WeightConvention { dualize_fiber: true, ..good };
        let spec = bundle_spec_for_weight(-1).unwrap();
        let level = HalfInt::from_twice(3);
        let f1 = single_particle_f1().expand(HalfInt::int(4)).unwrap();
        let good_jets = jet_character(&spec, &good, HalfInt::int(4)).unwrap();
        let bad_jets = jet_character_with(&spec, &bad, HalfInt::int(4));
        // in the t-frame the q^(3/2) level of f_1 is the doublet r + 1/r
        let at = |s: &Series| {
            Series::polynomial(
                s.iter()
                    .filter(|(m, _)| Frame::T.coords(**m)[3] == level.twice())
                    .map(|(m, c)| (*m, c.clone())),
            )
        };
        assert_eq!(at(&good_jets), at(&f1));
        assert!(!at(&f1).is_zero());
        assert_ne!(at(&bad_jets), at(&f1));
    }

    #[test]
    fn g1_from_jets() {
        let c = calibrate_conventions(HalfInt::int(4)).unwrap();
        let spec = bundle_spec_for_weight(1).unwrap();
        let order = HalfInt::int(6);
        let jets = jet_character(&spec, &c, order).unwrap();
        assert_eq!(jets, single_particle_g(1).unwrap().expand(order).unwrap());
    }

    #[test]
    fn sl2_decomposition() {
        let mut m = std::collections::BTreeMap::new();
        m.insert(2, int(1));
        m.insert(0, int(2));
        m.insert(-2, int(1));
        assert_eq!(sl2_multiplicities(&m).unwrap(), vec![(2, int(1)), (0, int(1))]);
        m.insert(0, int(0));
        assert!(sl2_multiplicities(&m).is_none());
    }
}
