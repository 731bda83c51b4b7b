//! The relation suite and the theorem suite.
//!
//! Every check is an exact comparison of rationals. Relations involving ζ
//! are compared after multiplying both sides by all ζ denominators, so
//! that supports where an intermediate state does not exist are tested
//! without ever evaluating at a pole.
//!
//! A check that raises an error (a pole, say) is recorded with status
//! `Error` rather than aborting the run.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::action::{
    e_simple_column, f_simple_column, psi_series_direct, psi_value, Action, GeneratorKind, GradedOperator, Window,
};
use crate::colored::{zeta_parts, Model, ZetaReading};
use crate::partitions::{enumerate_syt, syt_by_labeling, Cell, RPartition};
use crate::scalars::{fmt_q, int, pow, random_specialization, ratio, Specialization, Q};
use crate::walgebra::{check_annihilation, check_w_periodicity, sharpness_witness, WSpec};
use crate::Error;

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, PartialOrd, Ord)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "ERROR")]
    Error,
}

/// One check at one specialization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub params: String,
    pub seed: u64,
    pub status: Status,
    /// Number of exact comparisons performed.
    pub compared: usize,
    pub failures: usize,
    pub witness: Option<String>,
    /// Set when `status` is `Error`: whether the error was an adjacent pole.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_kind: Option<String>,
}

/// Tally of exact comparisons inside a check.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Comparison {
    pub compared: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

impl Comparison {
    fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.compared += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(describe());
            }
        }
    }

    fn expect_eq(&mut self, lhs: &Q, rhs: &Q, describe: impl FnOnce() -> String) {
        self.expect(lhs == rhs, || format!("{}: lhs = {}, rhs = {}", describe(), fmt_q(lhs), fmt_q(rhs)));
    }
}

fn finish(name: &str, params: String, seed: u64, outcome: Result<Comparison, Error>) -> CheckResult {
    match outcome {
        Ok(t) => CheckResult {
            name: name.into(),
            params,
            seed,
            status: if t.failures == 0 { Status::Pass } else { Status::Fail },
            compared: t.compared,
            failures: t.failures,
            witness: t.witness.map(|w| format!("seed {}: {}", seed, w)),
            error_kind: None,
        },
        Err(e) => CheckResult {
            name: name.into(),
            params,
            seed,
            status: Status::Error,
            compared: 0,
            failures: 0,
            witness: Some(format!("seed {}: {}", seed, e)),
            error_kind: Some(
                match e {
                    Error::AdjacentPole(_) => "adjacent-pole",
                    Error::Pole(_) => "pole",
                    Error::Truncation(_) => "truncation",
                    _ => "other",
                }
                .into(),
            ),
        },
    }
}

/// What the suite runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub n: usize,
    pub r_vec: Vec<usize>,
    pub max_boxes: usize,
    pub seeds: Vec<u64>,
    pub mode_range: i64,
    /// Window for the periodicity checks.
    pub period_window: usize,
    /// Random `w` samples per entry in the `e`/`ψ` and `f`/`ψ` checks.
    pub psi_samples: usize,
    /// Offsets `k - r_j` at which `W_{ij}^k` must vanish.
    pub w_offsets: Vec<i64>,
    pub reading: ZetaReading,
    /// Perturbs selected checks so that they must fail (harness self-test).
    pub mutate: bool,
    pub relations: bool,
    pub theorem: bool,
}

impl SuiteConfig {
    pub fn new(n: usize, r_vec: Vec<usize>) -> Self {
        SuiteConfig {
            n,
            r_vec,
            max_boxes: 4,
            seeds: vec![1, 2, 3],
            mode_range: 4,
            period_window: 3,
            psi_samples: 3,
            w_offsets: vec![1, 2, 3],
            reading: ZetaReading::Literal,
            mutate: false,
            relations: true,
            theorem: true,
        }
    }
}

/// Sharpness evidence: `W_{ii}^{r_i}` on the vacuum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SharpnessEntry {
    pub seed: u64,
    pub i: i64,
    pub k: i64,
    pub vacuum_entry: String,
    pub top_psi_mode: String,
    pub equal: bool,
    pub nonzero: bool,
}

/// Pass counts of a check across specializations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuorumEntry {
    pub name: String,
    pub params: String,
    pub passes: usize,
    pub runs: usize,
    pub verified: bool,
}

/// Minimum number of independent specializations for a relation to count as verified.
pub const QUORUM: usize = 3;

/// Results of the suite for one configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub config: SuiteConfig,
    /// Whether failures count against the exit code (false for experiments).
    pub asserted: bool,
    pub specializations: Vec<Specialization>,
    pub checks: Vec<CheckResult>,
    pub sharpness: Vec<SharpnessEntry>,
    pub quorum: Vec<QuorumEntry>,
    pub all_pass: bool,
}

impl VerificationReport {
    pub fn failing(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status != Status::Pass)
    }

    /// 0 if everything asserted passed, 3 on an adjacent pole, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if !self.asserted || self.all_pass {
            return 0;
        }
        if self.checks.iter().any(|c| c.error_kind.as_deref() == Some("adjacent-pole")) {
            3
        } else {
            1
        }
    }
}

fn model_for(config: &SuiteConfig, seed: u64) -> Result<Model, Error> {
    let spec = random_specialization(seed, config.n, &config.r_vec, config.max_boxes)?;
    Ok(Model::new(spec, config.reading))
}

fn colors(model: &Model) -> Vec<i64> {
    (1..=model.n()).collect()
}

fn coefficient(list: Result<Vec<(RPartition, Q)>, Error>, to: &RPartition) -> Result<Q, Error> {
    Ok(list?.into_iter().find(|(p, _)| p == to).map(|(_, v)| v).unwrap_or_else(Q::zero))
}

fn e_coeff(model: &Model, i: i64, from: &RPartition, to: &RPartition) -> Result<Q, Error> {
    if !to.contains(from) {
        return Ok(Q::zero());
    }
    coefficient(e_simple_column(model, from, i, 0), to)
}

fn f_coeff(model: &Model, i: i64, from: &RPartition, to: &RPartition) -> Result<Q, Error> {
    if !from.contains(to) {
        return Ok(Q::zero());
    }
    coefficient(f_simple_column(model, from, i, 0), to)
}

/// States `μ + B` for a cell `B`, if that is a valid r-partition.
fn with_cell(mu: &RPartition, c: &Cell) -> Option<RPartition> {
    mu.addable().into_iter().find(|(_, cell)| cell == c).map(|(p, _)| p)
}

/// All `(λ, B₁, B₂)` with `λ = μ + B₁ + B₂`, `B₁` of class `i` and `B₂` of class `j`.
fn two_box_extensions(model: &Model, mu: &RPartition, i: i64, j: i64) -> Vec<(RPartition, Cell, Cell)> {
    let n = model.n();
    let mut seen = BTreeSet::new();
    for (nu, c1) in mu.addable() {
        for (lam, c2) in nu.addable() {
            for (b1, b2) in [(c1, c2), (c2, c1)] {
                if (b1.color(model) - i).rem_euclid(n) == 0 && (b2.color(model) - j).rem_euclid(n) == 0 {
                    seen.insert((lam.clone(), b1, b2));
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// `ψ^+_{i,0} ψ^-_{i,0} = 1` and commutation of all ψ modes.
fn check_rel_psi(action: &Action, mutate: bool) -> Result<Comparison, Error> {
    let mut t = Comparison::default();
    let model = action.model();
    let mut all = vec![];
    for i in colors(model) {
        let plus = action.psi_ops(i, true, 2)?;
        let minus = action.psi_ops(i, false, 2)?;
        let mut prod = plus[0].compose(&minus[0]);
        if mutate {
            prod = prod.scaled(&int(2));
        }
        for s in 0..action.window.len() {
            let v = prod.get(s, s);
            t.expect(v.is_one(), || {
                format!("psi+_{{{},0}} psi-_{{{},0}} at {} = {}", i, i, action.window.states[s].id(), fmt_q(&v))
            });
        }
        all.extend(plus);
        all.extend(minus);
    }
    for (x, a) in all.iter().enumerate() {
        let diagonal = a.entries.keys().all(|(c, r)| c == r);
        t.expect(diagonal, || format!("psi operator {} has an off-diagonal entry", x));
        for b in &all[x + 1..] {
            t.expect(a.compose(b) == b.compose(a), || "two psi modes do not commute".into());
        }
    }
    Ok(t)
}

/// The `e`/`e` relation in cleared form on all two-box supports.
fn check_rel_ee(action: &Action, i: i64, j: i64) -> Result<Comparison, Error> {
    let model = action.model();
    let mut t = Comparison::default();
    for mu in action.window.states.iter().filter(|p| p.size() + 2 <= action.window.max_boxes) {
        for (lam, b1, b2) in two_box_extensions(model, mu, i, j) {
            let z = b1.at_label(model, i);
            let w = b2.at_label(model, j);
            let lhs = match with_cell(mu, &b2) {
                Some(nu) => e_coeff(model, i, &nu, &lam)? * e_coeff(model, j, mu, &nu)?,
                None => Q::zero(),
            };
            let rhs = match with_cell(mu, &b1) {
                Some(nu) => e_coeff(model, j, &nu, &lam)? * e_coeff(model, i, mu, &nu)?,
                None => Q::zero(),
            };
            let (n_wz, d_wz) = zeta_parts(model, &w, &z);
            let (n_zw, d_zw) = zeta_parts(model, &z, &w);
            t.expect_eq(&(lhs * n_wz * d_zw), &(rhs * n_zw * d_wz), || {
                format!("e_{} e_{} from {} to {}", i, j, mu.id(), lam.id())
            });
        }
    }
    Ok(t)
}

/// The `f`/`f` relation in cleared form on all two-box supports.
fn check_rel_ff(action: &Action, i: i64, j: i64) -> Result<Comparison, Error> {
    let model = action.model();
    let mut t = Comparison::default();
    for mu in action.window.states.iter().filter(|p| p.size() + 2 <= action.window.max_boxes) {
        for (lam, b1, b2) in two_box_extensions(model, mu, i, j) {
            let z = b1.at_label(model, i);
            let w = b2.at_label(model, j);
            // f_i(z) f_j(w): f_j removes B₂ first
            let lhs = match with_cell(mu, &b1) {
                Some(nu) => f_coeff(model, j, &lam, &nu)? * f_coeff(model, i, &nu, mu)?,
                None => Q::zero(),
            };
            let rhs = match with_cell(mu, &b2) {
                Some(nu) => f_coeff(model, i, &lam, &nu)? * f_coeff(model, j, &nu, mu)?,
                None => Q::zero(),
            };
            let (n_wz, d_wz) = zeta_parts(model, &w, &z);
            let (n_zw, d_zw) = zeta_parts(model, &z, &w);
            t.expect_eq(&(lhs * n_zw * d_wz), &(rhs * n_wz * d_zw), || {
                format!("f_{} f_{} from {} to {}", i, j, lam.id(), mu.id())
            });
        }
    }
    Ok(t)
}

/// `ψ_j(w)` eigenvalues across each one-box entry differ by `ζ(χ_■/w)`.
fn check_rel_gen_psi(action: &Action, e_side: bool, i: i64, j: i64, samples: usize, seed: u64) -> Result<Comparison, Error> {
    let model = action.model();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64) << 8 ^ (j as u64) << 16);
    let mut t = Comparison::default();
    let mut pairs: Vec<(RPartition, RPartition)> = vec![];
    for p in &action.window.states {
        if e_side {
            for (big, v) in e_simple_column(model, p, i, 0)? {
                if !v.is_zero() && action.window.index_of(&big).is_some() {
                    pairs.push((p.clone(), big));
                }
            }
        } else {
            for (small, v) in f_simple_column(model, p, i, 0)? {
                if !v.is_zero() {
                    pairs.push((small, p.clone()));
                }
            }
        }
    }
    for (small, big) in &pairs {
        let cell = big.skew_cells(small)[0];
        let z = cell.at_label(model, i);
        let mut taken = 0;
        let mut tries = 0;
        while taken < samples && tries < 20 * samples {
            tries += 1;
            let w = ratio(rng.gen_range(-997..=997), rng.gen_range(1..=991));
            if w.is_zero() {
                continue;
            }
            let wc = crate::colored::ColoredWeight::new(j, w.clone());
            let (num, den) = zeta_parts(model, &z, &wc);
            if num.is_zero() || den.is_zero() {
                continue;
            }
            for plus in [true, false] {
                let (Ok(at_big), Ok(at_small)) =
                    (psi_value(model, j, big, plus, &w), psi_value(model, j, small, plus, &w))
                else {
                    continue;
                };
                // e adds the box: ψ(λ) = ψ(μ) ζ(χ_■/w); f removes it, same eigenvalue pair
                t.expect_eq(&(at_big * &den), &(at_small * &num), || {
                    let op = if e_side { "e" } else { "f" };
                    format!("{}_{} vs psi_{}(w={}) between {} and {}", op, i, j, fmt_q(&w), small.id(), big.id())
                });
            }
            taken += 1;
        }
    }
    if !e_side {
        // the f-side support is the transpose of the e-side support; confirm it
        for big in &action.window.states {
            for (small, _) in f_simple_column(model, big, i, 0)? {
                let back = e_simple_column(model, &small, i, 0)?;
                t.expect(back.iter().any(|(p, _)| p == big), || {
                    format!("f_{} support {} -> {} is not the transpose of e", i, big.id(), small.id())
                });
            }
        }
    }
    Ok(t)
}

/// `[e_{i,k}, f_{j,l}] = δ_ij (q^{-2} − 1)(A_{k+l} − B_{k+l})` on the inner window.
fn check_rel_ef(action: &Action, i: i64, j: i64, mode_range: i64) -> Result<Comparison, Error> {
    let model = action.model();
    let q = model.q();
    let mut t = Comparison::default();
    let inner = |s: usize| action.window.size_of(s) < action.window.max_boxes;
    let mut e_ops = BTreeMap::new();
    let mut f_ops = BTreeMap::new();
    for k in -mode_range..=mode_range {
        e_ops.insert(k, action.e_simple(i, k)?);
        f_ops.insert(k, action.f_simple(j, k)?);
    }
    // eigenvalue series per state, long enough for every k + l
    let shift = model.r_at(i + 1) - model.r_at(i);
    let order = (2 * mode_range + shift.abs() + 1) as usize;
    let mut rhs_a: HashMap<usize, crate::scalars::TruncatedSeries> = HashMap::new();
    let mut rhs_b: HashMap<usize, crate::scalars::TruncatedSeries> = HashMap::new();
    if i == j {
        let q2 = q * q;
        for s in (0..action.window.len()).filter(|&s| inner(s)) {
            let lam = &action.window.states[s];
            let up = psi_series_direct(model, i + 1, lam, true, order)?.substitute_scale(&q2);
            let a = up.div(&psi_series_direct(model, i, lam, true, order)?)?.shift(shift);
            let down = psi_series_direct(model, i + 1, lam, false, order)?.substitute_scale(&q2);
            let b = down.div(&psi_series_direct(model, i, lam, false, order)?)?;
            rhs_a.insert(s, a);
            rhs_b.insert(s, b);
        }
    }
    let pref = pow(q, -2) - Q::one();
    for k in -mode_range..=mode_range {
        for l in -mode_range..=mode_range {
            let (e, f) = (&e_ops[&k], &f_ops[&l]);
            let comm = e.compose(f).minus(&f.compose(e)).restrict_columns(inner);
            let mut expected = GradedOperator::zero(comm.shift.clone(), None);
            if i == j {
                for (&s, a) in &rhs_a {
                    let m = k + l;
                    let v = &pref * (a.coeff(-m)? - rhs_b[&s].coeff(-m)?);
                    expected.add_entry(s, s, v);
                }
            }
            let diff = comm.minus(&expected);
            t.expect(diff.is_zero(), || {
                let (&(col, row), v) = diff.entries.iter().next().unwrap();
                format!(
                    "[e_{{{},{}}}, f_{{{},{}}}] at <{}|.|{}> differs by {}",
                    i,
                    k,
                    j,
                    l,
                    action.window.states[row].id(),
                    action.window.states[col].id(),
                    fmt_q(v)
                )
            });
        }
    }
    Ok(t)
}

/// Extended-color generators agree with the direct formulas, and ψ modes
/// agree with their direct extended eigenvalues.
fn check_periodicity_generators(action: &Action) -> Result<Comparison, Error> {
    let model = action.model();
    let n = model.n();
    let mut t = Comparison::default();
    for i in (1 - n)..=(2 * n) {
        for k in -2..=2 {
            let direct = action.e_interval_k(i, i + 1, k)?;
            let reduced = action.generator_extended(GeneratorKind::E, i, k)?;
            t.expect(direct.entries == reduced.entries, || format!("e_{{{},{}}} direct vs reduced", i, k));
            let direct = action.f_interval_k(i, i + 1, k)?;
            let reduced = action.generator_extended(GeneratorKind::F, i, k)?;
            t.expect(direct.entries == reduced.entries, || format!("f_{{{},{}}} direct vs reduced", i, k));
        }
        for s in 0..action.window.len() {
            let lam = &action.window.states[s];
            for plus in [true, false] {
                let direct = psi_series_direct(model, i, lam, plus, 4)?;
                let strip = if plus { crate::scalars::sign(model.r_at(i)) } else { Q::one() };
                let modes = action.psi(i, s, plus, 4)?;
                for (k, m) in modes.iter().enumerate() {
                    t.expect_eq(&(&direct.coeffs[k] * &strip), m, || {
                        format!("psi{}_{{{},{}}} at {}", if plus { "+" } else { "-" }, i, k, lam.id())
                    });
                }
            }
        }
    }
    Ok(t)
}

/// Fine operators on length-one intervals equal the single-box formulas.
fn check_fine_simple(action: &Action) -> Result<Comparison, Error> {
    let mut t = Comparison::default();
    for i in colors(action.model()) {
        for k in -2..=2 {
            t.expect(action.e_interval_k(i, i + 1, k)? == action.e_simple(i, k)?, || format!("e i={} k={}", i, k));
            t.expect(action.f_interval_k(i, i + 1, k)? == action.f_simple(i, k)?, || format!("f i={} k={}", i, k));
        }
    }
    Ok(t)
}

/// Chain enumeration agrees with the labeling oracle on every pair in the window.
pub fn check_syt_oracle(window: &Window) -> Comparison {
    let model = &window.model;
    let mut t = Comparison::default();
    for mu in &window.states {
        for lam in window.states.iter().filter(|l| l.size() > mu.size() && l.contains(mu)) {
            let d = (lam.size() - mu.size()) as i64;
            for i in colors(model) {
                let mut chains: Vec<Vec<Cell>> =
                    enumerate_syt(model, mu, lam, i, i + d).into_iter().map(|c| c.cells).collect();
                let mut oracle = syt_by_labeling(model, mu, lam, i, i + d);
                chains.sort();
                oracle.sort();
                t.expect(chains == oracle, || {
                    format!("[{};{}) from {} to {}: {} chains vs {} labelings", i, i + d, mu.id(), lam.id(), chains.len(), oracle.len())
                });
            }
        }
    }
    t
}

type Job<'a> = (String, String, Box<dyn Fn() -> Result<Comparison, Error> + Send + Sync + 'a>);

fn relation_jobs<'a>(config: &'a SuiteConfig, action: &'a Action, seed: u64) -> Vec<Job<'a>> {
    let model = action.model();
    let mut jobs: Vec<Job<'a>> = vec![];
    jobs.push(("rel_tor0_psi".into(), String::new(), Box::new(move || check_rel_psi(action, config.mutate))));
    for i in colors(model) {
        for j in colors(model) {
            let p = format!("i={},j={}", i, j);
            jobs.push(("rel_tor1_ee".into(), p.clone(), Box::new(move || check_rel_ee(action, i, j))));
            jobs.push(("rel_tor2_ff".into(), p.clone(), Box::new(move || check_rel_ff(action, i, j))));
            let s = config.psi_samples;
            jobs.push(("rel_tor3_e_psi".into(), p.clone(), Box::new(move || check_rel_gen_psi(action, true, i, j, s, seed))));
            jobs.push(("rel_tor4_f_psi".into(), p.clone(), Box::new(move || check_rel_gen_psi(action, false, i, j, s, seed))));
            let r = config.mode_range;
            jobs.push((
                "rel_tor5_ef".into(),
                format!("{},modes={}..{}", p, -r, r),
                Box::new(move || check_rel_ef(action, i, j, r)),
            ));
        }
    }
    jobs.push(("fine_simple".into(), "k=-2..2".into(), Box::new(move || check_fine_simple(action))));
    jobs
}

fn theorem_jobs<'a>(config: &'a SuiteConfig, action: &'a Action, period: &'a Action) -> Vec<Job<'a>> {
    let model = action.model();
    let n = model.n();
    let mut jobs: Vec<Job<'a>> = vec![];
    jobs.push(("period_generators".into(), format!("window={}", period.window.max_boxes), Box::new(move || check_periodicity_generators(period))));
    for i in (1 - n)..=(2 * n) {
        for j in (1 - n)..=(2 * n) {
            if (i - j).abs() > n {
                continue;
            }
            for &off in &config.w_offsets {
                let k = model.r_at(j) + off;
                let w = WSpec { i, j, k };
                jobs.push((
                    "theorem_annihilation".into(),
                    format!("i={},j={},k={}", i, j, k),
                    Box::new(move || {
                        let rep = check_annihilation(action, w)?;
                        Ok(Comparison { compared: rep.sources, failures: rep.nonzero_entries, witness: rep.witness })
                    }),
                ));
            }
        }
    }
    for i in 1..=n {
        for j in (i - n)..=(i + n) {
            for k in (model.r_at(j) - 1)..=(model.r_at(j) + 1) {
                let w = WSpec { i, j, k };
                let mutation = config.mutate.then(|| int(2));
                jobs.push((
                    "period_w".into(),
                    format!("i={},j={},k={}", i, j, k),
                    Box::new(move || {
                        let rep = check_w_periodicity(period, w, mutation.as_ref())?;
                        Ok(Comparison { compared: rep.sources, failures: rep.nonzero_entries, witness: rep.witness })
                    }),
                ));
            }
        }
    }
    jobs
}

fn run_seed(config: &SuiteConfig, seed: u64) -> Result<(Specialization, Vec<CheckResult>, Vec<SharpnessEntry>), Error> {
    let model = model_for(config, seed)?;
    let spec = model.spec.clone();
    let action = Action::new(Window::new(model.clone(), config.max_boxes));
    let period = Action::new(Window::new(model, config.period_window.min(config.max_boxes)));
    let mut jobs = vec![];
    if config.relations {
        jobs.extend(relation_jobs(config, &action, seed));
        let w = &action.window;
        jobs.push((
            "syt_oracle".into(),
            format!("window={}", w.max_boxes),
            Box::new(move || {
                Ok(check_syt_oracle(w))
            }),
        ));
    }
    if config.theorem {
        jobs.extend(theorem_jobs(config, &action, &period));
    }
    let checks: Vec<CheckResult> =
        jobs.par_iter().map(|(name, params, job)| finish(name, params.clone(), seed, job())).collect();
    let mut sharp = vec![];
    if config.theorem {
        for i in 1..=action.model().n() {
            let k = action.model().r_at(i);
            match sharpness_witness(&action, i) {
                Ok((entry, top)) => sharp.push(SharpnessEntry {
                    seed,
                    i,
                    k,
                    equal: entry == top,
                    nonzero: !entry.is_zero(),
                    vacuum_entry: fmt_q(&entry),
                    top_psi_mode: fmt_q(&top),
                }),
                Err(e) => sharp.push(SharpnessEntry {
                    seed,
                    i,
                    k,
                    equal: false,
                    nonzero: false,
                    vacuum_entry: format!("error: {}", e),
                    top_psi_mode: String::new(),
                }),
            }
        }
    }
    Ok((spec, checks, sharp))
}

/// Runs the relation and theorem suites at every seed of the configuration.
///
/// Configurations with `n = 1` are run but not asserted.
pub fn run_suite(config: &SuiteConfig) -> Result<VerificationReport, Error> {
    let mut specs = vec![];
    let mut checks = vec![];
    let mut sharpness = vec![];
    for &seed in &config.seeds {
        let (spec, c, s) = run_seed(config, seed)?;
        specs.push(spec);
        checks.extend(c);
        sharpness.extend(s);
    }
    let mut groups: BTreeMap<(String, String), (usize, usize)> = BTreeMap::new();
    for c in &checks {
        let g = groups.entry((c.name.clone(), c.params.clone())).or_default();
        g.1 += 1;
        if c.status == Status::Pass {
            g.0 += 1;
        }
    }
    let quorum = groups
        .into_iter()
        .map(|((name, params), (passes, runs))| QuorumEntry {
            name,
            params,
            passes,
            runs,
            verified: passes == runs && passes >= QUORUM,
        })
        .collect();
    let sharp_ok = sharpness.iter().all(|s| s.equal && s.nonzero);
    let all_pass = checks.iter().all(|c| c.status == Status::Pass) && sharp_ok;
    Ok(VerificationReport {
        config: config.clone(),
        asserted: config.n >= 2,
        specializations: specs,
        checks,
        sharpness,
        quorum,
        all_pass,
    })
}

/// The `n = 1` experiment: the suite under both ζ readings, recorded only.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct N1Experiment {
    pub literal: VerificationReport,
    pub split_deltas: VerificationReport,
    /// Names of checks with at least one non-passing run, per reading.
    pub literal_failing: Vec<String>,
    pub split_failing: Vec<String>,
}

pub fn run_n1_experiment(base: &SuiteConfig) -> Result<N1Experiment, Error> {
    let mut config = base.clone();
    config.n = 1;
    if config.r_vec.len() != 1 {
        config.r_vec = vec![config.r_vec.iter().sum::<usize>().max(1)];
    }
    let failing = |r: &VerificationReport| -> Vec<String> {
        let set: BTreeSet<String> = r.failing().map(|c| c.name.clone()).collect();
        set.into_iter().collect()
    };
    config.reading = ZetaReading::Literal;
    let literal = run_suite(&config)?;
    config.reading = ZetaReading::SplitDeltas;
    let split_deltas = run_suite(&config)?;
    Ok(N1Experiment {
        literal_failing: failing(&literal),
        split_failing: failing(&split_deltas),
        literal,
        split_deltas,
    })
}
