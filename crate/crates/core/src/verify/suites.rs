use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use super::fixtures::{fixture_checks, load_comparison, Comparison};
use super::golden::{golden_check, golden_specs};
use super::report::{Check, Status, SuiteReport};
use crate::error::{Error, Result};
use crate::index::{
    g_min, geometric_s, gk_zw_form, index_chi, minimal_index, minimal_index_product, single_particle_f1,
    single_particle_f1_y_form, single_particle_fn, single_particle_g, sl2_geometric_sum, sugra_chi,
    sugra_single_particle, sugra_single_particle_y_form, g0_display, is_integral, TheorySpec,
};
use crate::jet::{bundle_spec_for_weight, bundle_spec_weight_minus1_without_centre, calibrate_conventions, jet_character};
use crate::lie::chi_sl3;
use crate::plethystic::{eta_like_product, pexp, plog};
use crate::series::json::{from_json_str, render_text, to_json_string};
use crate::series::{frame_convert, limit_zero, EulerExpr, Frame, HalfInt, Monomial, Series, Specialization, ZwVar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Identity,
    LargeN,
    Schur,
    Kim,
    Imamura,
    Minimal,
    Frames,
    Oracle,
    All,
}

impl Suite {
    /// Every suite except `All`, in report order.
    pub const EACH: [Suite; 8] = [
        Suite::Identity,
        Suite::LargeN,
        Suite::Schur,
        Suite::Kim,
        Suite::Imamura,
        Suite::Minimal,
        Suite::Frames,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identity => "identity",
            Suite::LargeN => "largeN",
            Suite::Schur => "schur",
            Suite::Kim => "kim",
            Suite::Imamura => "imamura",
            Suite::Minimal => "minimal",
            Suite::Frames => "frames",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }

    /// The order used when none is given. For `largeN` it is the largest
    /// `N`, for `minimal` the total degree; otherwise a `q`-order.
    pub fn default_order(self) -> HalfInt {
        HalfInt::int(match self {
            Suite::Identity => 20,
            Suite::LargeN => 8,
            Suite::Schur => 25,
            Suite::Kim => 4,
            Suite::Imamura => 4,
            Suite::Minimal => 10,
            Suite::Frames => 6,
            Suite::Oracle => 8,
            Suite::All => 0,
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// A unit of work; `id` is the id of its check, or the common prefix of
/// its checks when it produces several.
struct Job {
    id: String,
    run: Box<dyn Fn() -> Vec<Check> + Send + Sync>,
}

impl Job {
    fn new(id: impl Into<String>, run: impl Fn() -> Vec<Check> + Send + Sync + 'static) -> Self {
        Job { id: id.into(), run: Box::new(run) }
    }

    fn selected(&self, prefixes: &[&str]) -> bool {
        prefixes.is_empty() || prefixes.iter().any(|p| self.id.starts_with(p) || p.starts_with(&self.id))
    }
}

/// A job producing one check; errors become failing checks.
fn one<F>(id: impl Into<String>, citation: &'static str, f: F) -> Job
where
    F: Fn(&str) -> Result<Check> + Send + Sync + 'static,
{
    let id = id.into();
    Job::new(id.clone(), move || {
        vec![f(&id).unwrap_or_else(|e| Check::new(&id, Status::Fail, "", format!("error: {e}"), citation))]
    })
}

fn q(n: i32) -> Monomial {
    Monomial::q_int(n)
}

fn hi(n: i32) -> HalfInt {
    HalfInt::int(n)
}

/// Integer part of a half-integral order.
fn whole(order: HalfInt) -> i32 {
    order.twice().div_euclid(2)
}

#[derive(Clone, Debug)]
pub struct Verifier {
    pub fixtures: PathBuf,
}

impl Verifier {
    pub fn new(fixtures: impl Into<PathBuf>) -> Self {
        Verifier { fixtures: fixtures.into() }
    }

    /// Run a suite; checks run in parallel on the current rayon pool and are
    /// reported in a fixed order.
    pub fn run(&self, suite: Suite, order: Option<HalfInt>) -> SuiteReport {
        self.run_selected(suite, order, &[])
    }

    /// Like [`Verifier::run`], keeping only checks whose id starts with one
    /// of `prefixes` (all checks if it is empty).
    pub fn run_selected(&self, suite: Suite, order: Option<HalfInt>, prefixes: &[&str]) -> SuiteReport {
        let suites: Vec<Suite> = match suite {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        };
        let jobs: Vec<Job> = suites
            .into_iter()
            .flat_map(|s| self.jobs(s, order.unwrap_or_else(|| s.default_order())))
            .filter(|j| j.selected(prefixes))
            .collect();
        let checks: Vec<Vec<Check>> = jobs.par_iter().map(|j| (j.run)()).collect();
        let keep = |c: &Check| prefixes.is_empty() || prefixes.iter().any(|p| c.id.starts_with(p));
        SuiteReport::new(suite.name(), checks.into_iter().flatten().filter(keep).collect())
    }

    fn jobs(&self, suite: Suite, order: HalfInt) -> Vec<Job> {
        match suite {
            Suite::Identity => identity_jobs(order),
            Suite::LargeN => large_n_jobs(whole(order).max(1) as u32),
            Suite::Schur => schur_jobs(order),
            Suite::Kim => self.fixture_jobs(Comparison::Kim, order),
            Suite::Imamura => self.fixture_jobs(Comparison::Imamura, order),
            Suite::Minimal => minimal_jobs(whole(order).max(1) as u32),
            Suite::Frames => self.frame_jobs(order),
            Suite::Oracle => oracle_jobs(order),
            Suite::All => unreachable!("expanded by run"),
        }
    }

    fn fixture_jobs(&self, comparison: Comparison, order: HalfInt) -> Vec<Job> {
        let dir = self.fixtures.clone();
        vec![Job::new(format!("{comparison}."), move || match load_comparison(&dir, comparison) {
            Ok(mut file) => {
                file.entries.retain(|e| e.q_power <= order);
                fixture_checks(&file)
            }
            Err(e) => vec![Check::new(
                format!("{comparison}.fixture"),
                Status::Fail,
                comparison.file_name(),
                format!("error: {e}"),
                "transcribed expansions",
            )],
        })]
    }

    fn frame_jobs(&self, order: HalfInt) -> Vec<Job> {
        let mut jobs = frame_jobs(order);
        for spec in golden_specs() {
            let dir = self.fixtures.clone();
            jobs.push(Job::new(format!("golden.{}", spec.name), move || vec![golden_check(&dir, &spec)]));
        }
        jobs
    }
}

const CITE_SL2_SUM: &str = "sl(2)-sum identity S(y,q) = 1/((1-qy)(1-q^2/y)), \"We will use the following identity\"";
const CITE_F1: &str = "single-particle index of one fivebrane, t- and y-frame forms";
const CITE_BOSON: &str = "Schur limit of f_1: \"index of a single chiral boson\"";
const CITE_G0: &str = "weight-0 formula g_k at k = 0 against the displayed g_0";
const CITE_SUGRA: &str = "supergravity single-particle index, t- and y-frame forms";
const CITE_LIMIT: &str = "large-N limit: identity reducing f_sugra = lim f_N to S(y,q)";
const CITE_INTEGRAL: &str = "index has integer coefficients at integer q-powers";
const CITE_PLOG: &str = "PLog inverts PExp";
const CITE_ORDER: &str = "large-N corollary, \"f_N is of order q^N\"";
const CITE_COROLLARY: &str = "large-N corollary: chi_sugra = chi~_N mod q^(N+1)";
const CITE_W: &str = "Schur limit of f_N: \"vacuum character of the W_N\"";
const CITE_VIR: &str = "Schur limit of f~_2: \"index of Virasoro vacuum module\"";
const CITE_MACMAHON: &str = "Schur limit of the supergravity index \"yields the MacMahon function\"";
const CITE_MINIMAL: &str = "minimal reduction, \"limit z_3, w_2 -> 0 of the expression\"";
const CITE_ZW: &str = "g_k in z_i, w_a coordinates against the y-frame formula";
const CITE_FRAMES: &str = "variable frames t <-> y, x = q y, z_i = y_i q, w_1 = y q";
const CITE_ORACLE: &str = "jets of the weight-k bundles against the closed formula g_k";

fn identity_jobs(order: HalfInt) -> Vec<Job> {
    let small = order.min(hi(6));
    vec![
        one("identity.sl2_sum", CITE_SL2_SUM, move |id| {
            let k_max = 2 * whole(order).max(0) as u32;
            let lhs = sl2_geometric_sum(k_max).truncate_q(order);
            let rhs = geometric_s().expand(order)?;
            Ok(Check::series_eq(id, &rhs, &lhs, Frame::Canonical, CITE_SL2_SUM))
        }),
        one("identity.f1_frames", CITE_F1, move |id| {
            let t = pexp(&single_particle_f1().expand(small)?, small)?;
            let y = pexp(&single_particle_f1_y_form().expand(small)?, small)?;
            Ok(Check::series_eq(id, &t, &y, Frame::T, CITE_F1))
        }),
        one("identity.f1_schur_partitions", CITE_BOSON, move |id| {
            let f = Specialization::schur_t().apply_euler(&single_particle_f1())?.expand(order)?;
            let p = pexp(&f, order)?;
            let oracle = eta_like_product(0, whole(order)).truncate_q(order);
            Ok(Check::series_eq(id, &oracle, &p, Frame::Canonical, CITE_BOSON))
        }),
        one("identity.g0_display", CITE_G0, move |id| {
            let g = single_particle_g(0)?;
            let d = g0_display();
            Ok(Check::predicate(
                id,
                g == d && g.expand(order)? == d.expand(order)?,
                "g_0 display, numerator and denominator",
                if g == d { "equal" } else { "different" },
                CITE_G0,
            ))
        }),
        one("identity.sugra_frames", CITE_SUGRA, move |id| {
            let same = sugra_single_particle().same_function(&sugra_single_particle_y_form());
            let t = sugra_single_particle().expand(order)?;
            let y = sugra_single_particle_y_form().expand(order)?;
            let mut c = Check::series_eq(id, &t, &y, Frame::T, CITE_SUGRA);
            if !same {
                c.status = Status::Fail;
                c.actual.push_str("; Euler forms differ");
            }
            Ok(c)
        }),
        one("identity.large_n_limit", CITE_LIMIT, move |id| {
            // (q^4 chi_[1,0] + 1 - q^6 - q^2 chi_[0,1]) S - 1 + q^3
            //   = (q^4 chi_[1,0] - q^2 chi_[0,1] + (1 - q^3)(y q + q^2/y)) S
            let y = Monomial::y();
            let a = &chi_sl3(1, 0).mul_monomial(q(4)) - &chi_sl3(0, 1).mul_monomial(q(2));
            let lhs_num = &a + &Series::from_ints([(q(0), 1), (q(6), -1)]);
            let s = geometric_s();
            let lhs = &EulerExpr::new(lhs_num, s.denominators().to_vec()).expand(order)?
                + &Series::from_ints([(q(0), -1), (q(3), 1)]);
            let shift = &Series::from_ints([(q(0), 1), (q(3), -1)]) * &Series::from_ints([(y * q(1), 1), (y.inv() * q(2), 1)]);
            let rhs = EulerExpr::new(&a + &shift, s.denominators().to_vec()).expand(order)?;
            Ok(Check::series_eq(id, &lhs.truncate_q(order), &rhs, Frame::Canonical, CITE_LIMIT))
        }),
        one("identity.integrality", CITE_INTEGRAL, move |id| {
            let o = order.min(hi(5));
            let mut bad = Vec::new();
            for spec in [TheorySpec::full(1), TheorySpec::full(2), TheorySpec::reduced(2), TheorySpec::reduced(3)] {
                if !is_integral(&index_chi(spec, o)?) {
                    bad.push(spec.to_string());
                }
            }
            Ok(Check::predicate(
                id,
                bad.is_empty(),
                format!("chi for gl1, gl2, A1, A2 integral to q^{o}"),
                if bad.is_empty() { "all integral".to_string() } else { format!("non-integral: {}", bad.join(", ")) },
                CITE_INTEGRAL,
            ))
        }),
        one("identity.plog_pexp", CITE_PLOG, move |id| {
            let f = single_particle_f1().expand(small)?;
            let back = plog(&pexp(&f, small)?, small)?;
            Ok(Check::series_eq(id, &f, &back, Frame::T, CITE_PLOG))
        }),
    ]
}

fn large_n_jobs(n_max: u32) -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in 1..=n_max {
        jobs.push(one(format!("largeN.f_order.{n}"), CITE_ORDER, move |id| {
            // f_sugra - f_N vanishes through q^N and not at q^(N+1)
            let o = hi(n as i32 + 2);
            let diff = &sugra_single_particle().expand(o)? - &single_particle_fn(TheorySpec::full(n)).expand(o)?;
            let below = diff.truncate_q(hi(n as i32 + 1));
            let first = diff.q_level(hi(n as i32 + 1));
            let ok = below.is_zero() && !first.is_zero();
            let actual = if below.is_zero() {
                format!("valuation q^{}: {}", n + 1, render_text(&first, Frame::Canonical))
            } else {
                format!("nonzero below q^{}: {}", n + 1, render_text(&below, Frame::Canonical))
            };
            Ok(Check::predicate(id, ok, format!("f_sugra - f_{n} = O(q^{}) with a nonzero q^{} term", n + 1, n + 1), actual, CITE_ORDER))
        }));
    }
    for n in 1..=n_max.min(6) {
        for reduced in [true, false] {
            let spec = if reduced { TheorySpec::reduced(n) } else { TheorySpec::full(n) };
            let name = if reduced { "chi_reduced" } else { "chi_full" };
            jobs.push(one(format!("largeN.{name}.{n}"), CITE_COROLLARY, move |id| {
                let o = hi(n as i32 + 1);
                let sugra = sugra_chi(o)?;
                let chi = index_chi(spec, o)?;
                let label = if reduced { format!("chi~_{n}") } else { format!("chi_{n}") };
                let mut c = Check::series_eq(id, &sugra, &chi, Frame::Canonical, CITE_COROLLARY);
                c.expected = format!("chi_sugra mod q^{}: {}", n + 1, c.expected);
                c.actual = format!("{label}: {}", c.actual);
                Ok(c)
            }));
        }
    }
    jobs
}

/// `(q^lo + ... + q^hi)/(1 - q)`.
fn q_run_over_one_minus_q(lo: i32, hi: i32) -> EulerExpr {
    EulerExpr::new(Series::from_ints((lo..=hi).map(|k| (q(k), 1))), vec![q(1)])
}

fn schur_jobs(order: HalfInt) -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in 1..=8u32 {
        for reduced in [false, true] {
            if reduced && n < 2 {
                continue;
            }
            let (spec, lo, name) = if reduced {
                (TheorySpec::reduced(n), 2, "f_reduced")
            } else {
                (TheorySpec::full(n), 1, "f_full")
            };
            let cite = if reduced && n == 2 { CITE_VIR } else { CITE_W };
            jobs.push(one(format!("schur.{name}.{n}"), cite, move |id| {
                let limit = Specialization::schur().apply_euler(&single_particle_fn(spec))?;
                let target = q_run_over_one_minus_q(lo, n as i32);
                let mut c = Check::series_eq(id, &target.expand(order)?, &limit.expand(order)?, Frame::Canonical, cite);
                if !limit.same_function(&target) {
                    c.status = Status::Fail;
                }
                let run = match n as i32 - lo {
                    0 => format!("q^{lo}"),
                    1 => format!("(q^{lo} + q^{n})"),
                    _ => format!("(q^{lo} + ... + q^{n})"),
                };
                c.expected = format!("{run}/(1-q) = {}", c.expected);
                Ok(c)
            }));
        }
    }
    for n in 2..=8u32 {
        jobs.push(one(format!("schur.w_vacuum.{n}"), CITE_W, move |id| {
            // prod_{s=2..N} prod_{m>=s} 1/(1 - q^m)
            let lim = Specialization::schur().apply_euler(&single_particle_fn(TheorySpec::reduced(n)))?;
            let chi = pexp(&lim.expand(order)?, order)?;
            let dens: Vec<Monomial> = (2..=n as i32).flat_map(|s| (s..=whole(order)).map(q)).collect();
            let w = EulerExpr::new(Series::one(), dens).expand(order)?;
            Ok(Check::series_eq(id, &w, &chi, Frame::Canonical, CITE_W))
        }));
    }
    jobs.push(one("schur.sugra", CITE_MACMAHON, move |id| {
        let lim = Specialization::schur_t().apply_euler(&sugra_single_particle())?;
        let target = EulerExpr::new(Series::monomial(q(1)), vec![q(1), q(1)]);
        Ok(Check::predicate(
            id,
            lim.same_function(&target),
            "q/(1-q)^2",
            render_text(&lim.expand(hi(6))?, Frame::Canonical),
            CITE_MACMAHON,
        ))
    }));
    jobs.push(one("schur.macmahon", CITE_MACMAHON, move |id| {
        let lim = Specialization::schur_t().apply_euler(&sugra_single_particle())?;
        let chi = pexp(&lim.expand(order)?, order)?;
        let oracle = eta_like_product(1, whole(order)).truncate_q(order);
        Ok(Check::series_eq(id, &oracle, &chi, Frame::Canonical, CITE_MACMAHON))
    }));
    jobs.push(one("schur.commutes_with_pexp", CITE_VIR, move |id| {
        let o = order.min(hi(6));
        let spec = TheorySpec::reduced(2);
        let full = Specialization::schur().apply_series(&index_chi(spec, o)?)?;
        let lim = Specialization::schur().apply_euler(&single_particle_fn(spec))?;
        let direct = pexp(&lim.expand(o)?, o)?;
        Ok(Check::series_eq(id, &direct, &full, Frame::Canonical, CITE_VIR))
    }));
    jobs
}

fn minimal_jobs(degree: u32) -> Vec<Job> {
    let lim = [ZwVar::Z3, ZwVar::W2];
    let mut jobs = Vec::new();
    for k in -1..=3i64 {
        jobs.push(one(format!("minimal.limit.{k}"), CITE_MINIMAL, move |id| {
            let g = limit_zero(&single_particle_g(k)?, &lim)?;
            let target = g_min(k)?;
            Ok(Check::predicate(
                id,
                g.same_function(&target),
                format!("w1^{} (w1 - z1 z2)/((1-z1)(1-z2))", k + 1),
                render_text(&g.expand(hi(5))?, Frame::Zw),
                CITE_MINIMAL,
            ))
        }));
    }
    for n in 1..=3u32 {
        jobs.push(one(format!("minimal.product.{n}"), CITE_MINIMAL, move |id| {
            let p = minimal_index(n, degree)?;
            let prod = minimal_index_product(n, degree)?;
            let mut c = Check::series_eq(id, &prod, &p, Frame::Zw, CITE_MINIMAL);
            c.expected = format!("double product to total degree {degree}: {}", c.expected);
            Ok(c)
        }));
    }
    for k in 1..=3u32 {
        jobs.push(one(format!("minimal.zw_form.{k}"), CITE_ZW, move |id| {
            let o = hi(degree as i32 + 2);
            let zw = gk_zw_form(k)?.expand(o)?;
            let y = single_particle_g(k as i64)?.expand(o)?;
            Ok(Check::series_eq(id, &y, &zw, Frame::Zw, CITE_ZW))
        }));
    }
    jobs
}

fn frame_jobs(order: HalfInt) -> Vec<Job> {
    let mut jobs = Vec::new();
    for frame in Frame::ALL {
        jobs.push(one(format!("frames.json_round_trip.{frame}"), CITE_FRAMES, move |id| {
            let s = index_chi(TheorySpec::full(1), order.min(hi(6)))?;
            let back = from_json_str(&to_json_string(&s, frame))?;
            Ok(Check::series_eq(id, &s, &back, frame, CITE_FRAMES))
        }));
        jobs.push(one(format!("frames.lattice_round_trip.{frame}"), CITE_FRAMES, move |id| {
            let mut bad = Vec::new();
            for a1 in -3..=3 {
                for a2 in -3..=3 {
                    for b in -3..=3 {
                        for c2 in -6..=6 {
                            let c = [a1, a2, b, c2];
                            let there = frame_convert(c, Frame::Canonical, frame);
                            let back = there.and_then(|t| frame_convert(t, frame, Frame::Canonical));
                            match back {
                                Ok(b) if b == c => {}
                                Ok(b) => bad.push(format!("{c:?} -> {b:?}")),
                                Err(_) => bad.push(format!("{c:?} has no image")),
                            }
                        }
                    }
                }
            }
            Ok(Check::predicate(
                id,
                bad.is_empty(),
                "y -> frame -> y is the identity on a box of 7x7x7x13 lattice points",
                if bad.is_empty() { "identity".to_string() } else { bad[..bad.len().min(3)].join("; ") },
                CITE_FRAMES,
            ))
        }));
    }
    jobs.push(one("frames.f1_t_vs_y", CITE_F1, |id| {
        let t = single_particle_f1();
        let y = single_particle_f1_y_form();
        Ok(Check::predicate(id, t.same_function(&y), "t-frame f_1", if t.same_function(&y) { "equal" } else { "different" }, CITE_F1))
    }));
    jobs
}

fn oracle_jobs(order: HalfInt) -> Vec<Job> {
    let calibration_order = order.min(hi(5));
    let mut jobs = vec![one("oracle.calibration", CITE_ORACLE, move |id| {
        let c = calibrate_conventions(calibration_order)?;
        Ok(Check::predicate(id, true, "exactly one convention reproduces f_1 and g_0", c.to_string(), CITE_ORACLE))
    })];
    for k in -1..=4i64 {
        jobs.push(one(format!("oracle.g.{k}"), CITE_ORACLE, move |id| {
            let conv = calibrate_conventions(calibration_order)?;
            let jets = jet_character(&bundle_spec_for_weight(k)?, &conv, order)?;
            let g = single_particle_g(k)?.expand(order)?;
            Ok(Check::series_eq(id, &g, &jets, Frame::Canonical, CITE_ORACLE))
        }));
    }
    jobs.push(one("oracle.centre_needed", CITE_ORACLE, move |id| {
        let conv = calibrate_conventions(calibration_order)?;
        let o = order.min(hi(5));
        let jets = jet_character(&bundle_spec_weight_minus1_without_centre(), &conv, o)?;
        let f1 = single_particle_f1().expand(o)?;
        let diff = &f1 - &jets;
        Ok(Check::predicate(
            id,
            !diff.is_zero(),
            "weight -1 jets without the central summand differ from f_1",
            format!("f_1 - jets = {}", render_text(&diff, Frame::T)),
            CITE_ORACLE,
        ))
    }));
    jobs
}
