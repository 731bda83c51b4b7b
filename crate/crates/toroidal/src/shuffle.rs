//! Elements of the color-symmetric shuffle algebra, modeled as exact
//! black-box evaluators.
//!
//! An assignment is a list indexed by color class `1..=n` (position `c - 1`)
//! of the values given to `z_{c,1}, ..., z_{c,d_c}`. Elements are never put
//! into a canonical form; all comparisons happen at concrete assignments.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colored::{residue, zeta, ColoredWeight, LaurentPolynomial, Model};
use crate::partitions::interval_vector;
use crate::scalars::{int, pow, ratio, Q};
use crate::Error;

/// Values of the variables, grouped by color class.
pub type Assignment = Vec<Vec<Q>>;

type Evaluator = Arc<dyn Fn(&Assignment) -> Result<Q, Error> + Send + Sync>;

/// How an element was built; enough to rebuild its evaluator.
#[derive(Clone, Debug, PartialEq)]
pub enum Structure {
    /// The constant `c` in the given degree.
    Constant(Q),
    /// `Σ_a z_{c,a}^k` on a degree concentrated in color `c`.
    PowerSum { color: i64, k: i64 },
    /// `A^M_{[i;j)}`.
    Interval { i: i64, j: i64, m: LaurentPolynomial },
    Product(Box<Structure>, Box<Structure>),
    Scaled(Q, Box<Structure>),
}

/// An element of `V^+` with its bidegree.
#[derive(Clone)]
pub struct ShuffleElement {
    pub degree: Vec<usize>,
    pub vertical: Option<i64>,
    pub structure: Structure,
    model: Arc<Model>,
    eval: Evaluator,
}

impl fmt::Debug for ShuffleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ShuffleElement")
            .field("degree", &self.degree)
            .field("vertical", &self.vertical)
            .field("structure", &self.structure)
            .finish()
    }
}

impl ShuffleElement {
    pub fn evaluate(&self, x: &Assignment) -> Result<Q, Error> {
        for (c, vals) in x.iter().enumerate() {
            if vals.len() != self.degree[c] {
                return Err(Error::Config(format!(
                    "assignment has {} variables of color {}, element needs {}",
                    vals.len(),
                    c + 1,
                    self.degree[c]
                )));
            }
        }
        (self.eval)(x)
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn num_variables(&self) -> usize {
        self.degree.iter().sum()
    }

    /// The constant `c` placed in degree `degree`.
    pub fn constant(model: Arc<Model>, degree: Vec<usize>, c: Q) -> Self {
        let value = c.clone();
        ShuffleElement {
            degree,
            vertical: Some(0),
            structure: Structure::Constant(c),
            model,
            eval: Arc::new(move |_| Ok(value.clone())),
        }
    }

    /// `Σ_{a ≤ count} z_{color,a}^k`, symmetric in its variables.
    pub fn power_sum(model: Arc<Model>, color: i64, count: usize, k: i64) -> Self {
        let n = model.spec.n;
        let mut degree = vec![0; n];
        degree[(color - 1) as usize] = count;
        let idx = (color - 1) as usize;
        ShuffleElement {
            degree,
            vertical: Some(k),
            structure: Structure::PowerSum { color, k },
            model,
            eval: Arc::new(move |x: &Assignment| Ok(x[idx].iter().map(|v| pow(v, k)).fold(Q::zero(), |a, b| a + b))),
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let inner = self.eval.clone();
        let c2 = c.clone();
        ShuffleElement {
            degree: self.degree.clone(),
            vertical: self.vertical,
            structure: Structure::Scaled(c.clone(), Box::new(self.structure.clone())),
            model: self.model.clone(),
            eval: Arc::new(move |x| Ok(inner(x)? * &c2)),
        }
    }
}

/// All subsets of `0..n` of size `k`, in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// All permutations of `0..n`.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Cartesian product of per-color choices.
fn product_of<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![vec![]];
    for l in lists {
        let mut next = Vec::with_capacity(out.len() * l.len());
        for prefix in &out {
            for item in l {
                let mut p = prefix.clone();
                p.push(item.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// The shuffle product `R * R'`: a sum over the ways of splitting each
/// color's variables into a block for `R` and a block for `R'`, weighted by
/// `∏ ζ(z_first / z_second)`.
pub fn shuffle_product(a: &ShuffleElement, b: &ShuffleElement) -> ShuffleElement {
    let n = a.degree.len();
    let degree: Vec<usize> = a.degree.iter().zip(&b.degree).map(|(x, y)| x + y).collect();
    let splits = product_of(&(0..n).map(|c| combinations(degree[c], a.degree[c])).collect::<Vec<_>>());
    let (ea, eb, model) = (a.eval.clone(), b.eval.clone(), a.model.clone());
    let m2 = model.clone();
    let eval = move |x: &Assignment| -> Result<Q, Error> {
        let mut total = Q::zero();
        for split in &splits {
            let mut first: Assignment = vec![vec![]; n];
            let mut second: Assignment = vec![vec![]; n];
            for c in 0..n {
                for (idx, v) in x[c].iter().enumerate() {
                    if split[c].contains(&idx) {
                        first[c].push(v.clone());
                    } else {
                        second[c].push(v.clone());
                    }
                }
            }
            let mut term = ea(&first)?;
            if term.is_zero() {
                continue;
            }
            term *= eb(&second)?;
            for (c1, vs1) in first.iter().enumerate() {
                for z in vs1 {
                    let zc = ColoredWeight::new(c1 as i64 + 1, z.clone());
                    for (c2, vs2) in second.iter().enumerate() {
                        for w in vs2 {
                            term *= zeta(&m2, &zc, &ColoredWeight::new(c2 as i64 + 1, w.clone()))?;
                        }
                    }
                }
            }
            total += term;
        }
        Ok(total)
    };
    ShuffleElement {
        degree,
        vertical: match (a.vertical, b.vertical) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        },
        structure: Structure::Product(Box::new(a.structure.clone()), Box::new(b.structure.clone())),
        model,
        eval: Arc::new(eval),
    }
}

/// For each label `l` in `[i; j)`: its color class (0-based) and its sheet
/// index `m`, so that `z_l = z_{class, m+1} q̄^{-2m}`.
fn label_slots(model: &Model, i: i64, j: i64) -> Vec<(usize, usize)> {
    let n = model.n();
    (i..j)
        .map(|l| {
            let class = residue(l, n);
            let first = (i..i + n).find(|&a| residue(a, n) == class).unwrap();
            ((class - 1) as usize, ((l - first) / n) as usize)
        })
        .collect()
}

/// `A^M_{[i;j)} = Sym[ M(z_i..z_{j-1}) / ∏(1 − z_a q²/z_{a+1}) · ∏_{a<b} ζ(z_b/z_a) ]`
/// with the labels beyond one period relabeled onto the shuffle variables.
pub fn element_a(model: Arc<Model>, i: i64, j: i64, m: LaurentPolynomial) -> Result<ShuffleElement, Error> {
    if i >= j {
        return Err(Error::Config(format!("element A needs i < j, got [{};{})", i, j)));
    }
    if m.len != (j - i) as usize {
        return Err(Error::Config("Laurent polynomial has the wrong number of variables".into()));
    }
    let n = model.spec.n;
    let degree: Vec<usize> = interval_vector(n, i, j).into_iter().map(|x| x as usize).collect();
    let slots = label_slots(&model, i, j);
    let perms = product_of(&degree.iter().map(|&d| permutations(d)).collect::<Vec<_>>());
    let m2 = model.clone();
    let mm = m.clone();
    let eval = move |x: &Assignment| -> Result<Q, Error> {
        let q2 = m2.q() * m2.q();
        let mut total = Q::zero();
        for perm in &perms {
            let vals: Vec<Q> = slots
                .iter()
                .map(|&(c, s)| &x[c][perm[c][s]] * m2.qbar_pow(-2 * s as i64))
                .collect();
            let mut term = mm.eval(&m2, &vals);
            for a in 0..vals.len().saturating_sub(1) {
                let d = Q::one() - &vals[a] * &q2 / &vals[a + 1];
                if d.is_zero() {
                    return Err(Error::Pole(format!("adjacent factor in A[{};{})", i, j)));
                }
                term /= d;
            }
            for a in 0..vals.len() {
                for b in a + 1..vals.len() {
                    term *= zeta(
                        &m2,
                        &ColoredWeight::new(i + b as i64, vals[b].clone()),
                        &ColoredWeight::new(i + a as i64, vals[a].clone()),
                    )?;
                }
            }
            total += term;
        }
        Ok(total)
    };
    Ok(ShuffleElement {
        degree,
        vertical: m.hom_degree(),
        structure: Structure::Interval { i, j, m },
        model,
        eval: Arc::new(eval),
    })
}

/// A deterministic random assignment of small nonzero rationals.
pub fn random_assignment(degree: &[usize], rng: &mut ChaCha8Rng) -> Assignment {
    degree
        .iter()
        .map(|&d| {
            (0..d)
                .map(|_| {
                    let num = rng.gen_range(1..=97i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    ratio(num, rng.gen_range(1..=89i64))
                })
                .collect()
        })
        .collect()
}

/// A variable `z_{color, index}` (color in `1..=n`, index from 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Var {
    pub color: usize,
    pub index: usize,
}

/// All variables of a degree vector.
pub fn variables(degree: &[usize]) -> Vec<Var> {
    degree
        .iter()
        .enumerate()
        .flat_map(|(c, &d)| (0..d).map(move |index| Var { color: c + 1, index }))
        .collect()
}

/// Every nonempty subset of the variables.
pub fn nonempty_subsets(degree: &[usize]) -> Vec<Vec<Var>> {
    let vars = variables(degree);
    (1u32..(1 << vars.len()))
        .map(|mask| vars.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, v)| *v).collect())
        .collect()
}

/// A univariate rational function `P(t)/Q(t)` recovered from samples.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    pub num: Vec<Q>,
    pub den: Vec<Q>,
}

impl RationalFunction {
    /// Order of vanishing at `t = 0`; `None` for the zero function.
    pub fn valuation(&self) -> Option<i64> {
        let first = |p: &[Q]| p.iter().position(|c| !c.is_zero());
        let vn = first(&self.num)? as i64;
        let vd = first(&self.den).expect("denominator is nonzero") as i64;
        Some(vn - vd)
    }

    pub fn eval(&self, t: &Q) -> Q {
        let horner = |p: &[Q]| p.iter().rev().fold(Q::zero(), |acc, c| acc * t + c);
        horner(&self.num) / horner(&self.den)
    }
}

/// A nonzero vector in the kernel of `rows`, if one exists.
fn kernel_vector(mut rows: Vec<Vec<Q>>, cols: usize) -> Option<Vec<Q>> {
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Q::zero(); cols];
    v[free] = Q::one();
    for (row, &pc) in rows.iter().zip(&pivots) {
        v[pc] = -row[free].clone();
    }
    Some(v)
}

/// Recovers `f` as a ratio of polynomials of degree at most `bound` each,
/// from `2 bound + 5` samples; `None` if no such ratio fits them all.
pub fn rational_interpolate(samples: &[(Q, Q)], bound: usize) -> Option<RationalFunction> {
    let cols = 2 * (bound + 1);
    let rows: Vec<Vec<Q>> = samples
        .iter()
        .map(|(t, f)| {
            let powers: Vec<Q> = (0..=bound as i64).map(|e| pow(t, e)).collect();
            powers.iter().cloned().chain(powers.iter().map(|p| -(p * f))).collect()
        })
        .collect();
    let v = kernel_vector(rows, cols)?;
    let (num, den) = v.split_at(bound + 1);
    if den.iter().all(|c| c.is_zero()) {
        return None;
    }
    Some(RationalFunction { num: num.to_vec(), den: den.to_vec() })
}

/// Largest degree bound tried before giving up.
const MAX_BOUND: usize = 64;

/// Recovers `t ↦ elem(x with subset scaled by t)` as a rational function,
/// doubling the degree bound until the fit is confirmed by extra samples.
pub fn restrict_to_line(elem: &ShuffleElement, subset: &[Var], base: &Assignment) -> Result<RationalFunction, Error> {
    let mut samples: Vec<(Q, Q)> = vec![];
    let mut next_t = 2i64;
    let mut sample = |count: usize, samples: &mut Vec<(Q, Q)>| -> Result<(), Error> {
        let mut misses = 0;
        while samples.len() < count {
            let t = ratio(next_t, 1 + (next_t % 3));
            next_t += 1;
            let mut x = base.clone();
            for v in subset {
                x[v.color - 1][v.index] *= &t;
            }
            match elem.evaluate(&x) {
                Ok(f) => samples.push((t, f)),
                Err(Error::Pole(_)) if misses < 32 => misses += 1,
                Err(e) => return Err(e),
            }
        }
        Ok(())
    };
    let mut bound = 1;
    while bound <= MAX_BOUND {
        sample(2 * bound + 5, &mut samples)?;
        if let Some(rf) = rational_interpolate(&samples[..2 * bound + 5], bound) {
            return Ok(rf);
        }
        bound *= 2;
    }
    Err(Error::Interpolation(format!("no rational fit of degree <= {} along the line", MAX_BOUND)))
}

/// Whether `elem` tends to 0 as the variables in `subset` are sent to 0.
pub fn slope_limit_test(elem: &ShuffleElement, subset: &[Var], base: &Assignment) -> Result<bool, Error> {
    let rf = restrict_to_line(elem, subset, base)?;
    Ok(rf.valuation().is_none_or(|v| v > 0))
}

/// A random small element: a constant, a power sum, or an interval element.
pub fn random_element(model: Arc<Model>, rng: &mut ChaCha8Rng, max_vars: usize) -> Result<ShuffleElement, Error> {
    let n = model.n();
    let vars = rng.gen_range(1..=max_vars);
    let choice = rng.gen_range(0..3);
    let color = rng.gen_range(1..=n);
    Ok(match choice {
        0 => {
            let mut degree = vec![0; n as usize];
            for _ in 0..vars {
                degree[rng.gen_range(0..n as usize)] += 1;
            }
            ShuffleElement::constant(model, degree, int(rng.gen_range(1..=5)))
        }
        1 => ShuffleElement::power_sum(model, color, vars, rng.gen_range(-2..=2)),
        _ => {
            let k = rng.gen_range(-1..=2);
            element_a(model, color, color + vars as i64, LaurentPolynomial::first_power(vars, k))?
        }
    })
}

/// Compares `(a*b)*c` and `a*(b*c)` at `points` random assignments. Returns
/// the first mismatching assignment, if any.
pub fn associativity_mismatch(
    a: &ShuffleElement,
    b: &ShuffleElement,
    c: &ShuffleElement,
    points: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Assignment>, Error> {
    let left = shuffle_product(&shuffle_product(a, b), c);
    let right = shuffle_product(a, &shuffle_product(b, c));
    let mut done = 0;
    let mut attempts = 0;
    while done < points {
        attempts += 1;
        let x = random_assignment(&left.degree, rng);
        match (left.evaluate(&x), right.evaluate(&x)) {
            (Ok(l), Ok(r)) => {
                if l != r {
                    return Ok(Some(x));
                }
                done += 1;
            }
            (Err(Error::Pole(_)), _) | (_, Err(Error::Pole(_))) if attempts < 10 * points => {}
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(None)
}

/// Deterministic generator for shuffle experiments.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x5348_5546)
}

/// Results of the shuffle-algebra property checks at one specialization.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ShuffleReport {
    pub seed: u64,
    pub same_color_constant: bool,
    pub associativity_triples: usize,
    pub associativity_points: usize,
    pub associativity_failures: Vec<String>,
    pub slope_tests: usize,
    pub slope_failures: Vec<String>,
    pub constant_limit_nonzero: bool,
    pub pass: bool,
}

/// Runs the associativity grid, the slope tests for `A^{z_i^k}` with
/// `k ∈ {1, 2}` on all intervals `[i; i+len)` (`i ∈ 1..=n`, `len ≤ 3`) and
/// all nonempty variable subsets, and the same-color constant check.
pub fn run_shuffle_checks(model: Arc<Model>, seed: u64, triples: usize, points: usize) -> Result<ShuffleReport, Error> {
    let mut g = rng(seed);
    let n = model.spec.n;
    let one = ShuffleElement::constant(model.clone(), (0..n).map(|c| usize::from(c == 0)).collect(), Q::one());
    let sq = shuffle_product(&one, &one);
    let expected = model.q() + model.q().recip();
    let mut same_color_constant = true;
    for _ in 0..points {
        let x = random_assignment(&sq.degree, &mut g);
        same_color_constant &= sq.evaluate(&x)? == expected;
    }
    let mut associativity_failures = vec![];
    for t in 0..triples {
        let a = random_element(model.clone(), &mut g, 3)?;
        let b = random_element(model.clone(), &mut g, 3)?;
        let c = random_element(model.clone(), &mut g, 3)?;
        if let Some(x) = associativity_mismatch(&a, &b, &c, points, &mut g)? {
            let shown: Vec<Vec<String>> = x.iter().map(|v| v.iter().map(crate::scalars::fmt_q).collect()).collect();
            associativity_failures.push(format!("triple {} at {:?}", t, shown));
        }
    }
    let mut slope_tests = 0;
    let mut slope_failures = vec![];
    for k in 1..=2 {
        for i in 1..=n as i64 {
            for len in 1..=3i64 {
                let a = element_a(model.clone(), i, i + len, LaurentPolynomial::first_power(len as usize, k))?;
                let base = random_assignment(&a.degree, &mut g);
                for subset in nonempty_subsets(&a.degree) {
                    slope_tests += 1;
                    if !slope_limit_test(&a, &subset, &base)? {
                        slope_failures.push(format!("A[{};{}) z^{} subset {:?}", i, i + len, k, subset));
                    }
                }
            }
        }
    }
    let base = random_assignment(&one.degree, &mut g);
    let constant_limit_nonzero = !slope_limit_test(&one, &variables(&one.degree), &base)?;
    let pass = same_color_constant && associativity_failures.is_empty() && slope_failures.is_empty() && constant_limit_nonzero;
    Ok(ShuffleReport {
        seed,
        same_color_constant,
        associativity_triples: triples,
        associativity_points: points,
        associativity_failures,
        slope_tests,
        slope_failures,
        constant_limit_nonzero,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::ZetaReading;
    use crate::scalars::random_specialization;

    fn model(n: usize, r: &[usize]) -> Arc<Model> {
        Arc::new(Model::new(random_specialization(3, n, r, 3).unwrap(), ZetaReading::Literal))
    }

    #[test]
    fn same_color_product_is_q_plus_inverse() {
        let m = model(2, &[1, 1]);
        let one = ShuffleElement::constant(m.clone(), vec![1, 0], Q::one());
        let p = shuffle_product(&one, &one);
        let mut g = rng(1);
        let expected = m.q() + m.q().recip();
        for _ in 0..5 {
            let x = random_assignment(&p.degree, &mut g);
            assert_eq!(p.evaluate(&x).unwrap(), expected);
        }
    }

    #[test]
    fn different_colors_give_single_zeta() {
        let m = model(2, &[1, 1]);
        let a = ShuffleElement::constant(m.clone(), vec![1, 0], Q::one());
        let b = ShuffleElement::constant(m.clone(), vec![0, 1], Q::one());
        let p = shuffle_product(&a, &b);
        let x = vec![vec![int(3)], vec![int(7)]];
        let z = zeta(&m, &ColoredWeight::new(1, int(3)), &ColoredWeight::new(2, int(7))).unwrap();
        assert_eq!(p.evaluate(&x).unwrap(), z);
    }

    #[test]
    fn unit_is_neutral() {
        let m = model(2, &[1, 1]);
        let a = element_a(m.clone(), 1, 3, LaurentPolynomial::first_power(2, 1)).unwrap();
        let unit = ShuffleElement::constant(m, vec![0, 0], Q::one());
        let p = shuffle_product(&a, &unit);
        let x = vec![vec![int(5)], vec![ratio(2, 3)]];
        assert_eq!(p.evaluate(&x).unwrap(), a.evaluate(&x).unwrap());
    }

    #[test]
    fn interval_degrees() {
        let m = model(2, &[1, 1]);
        let a = element_a(m.clone(), 1, 4, LaurentPolynomial::first_power(3, 1)).unwrap();
        assert_eq!(a.degree, vec![2, 1]);
        let s = element_a(m.clone(), 1, 4, LaurentPolynomial::slope(1, 4, 2)).unwrap();
        assert_eq!(s.vertical, Some(2));
        let single = element_a(m, 2, 3, LaurentPolynomial::first_power(1, 3)).unwrap();
        assert_eq!(single.evaluate(&vec![vec![], vec![int(2)]]).unwrap(), int(8));
    }

    #[test]
    fn interval_element_is_symmetric() {
        let m = model(2, &[1, 1]);
        let a = element_a(m, 1, 4, LaurentPolynomial::first_power(3, 1)).unwrap();
        let x = vec![vec![int(3), ratio(5, 7)], vec![ratio(-2, 3)]];
        let y = vec![vec![ratio(5, 7), int(3)], vec![ratio(-2, 3)]];
        assert_eq!(a.evaluate(&x).unwrap(), a.evaluate(&y).unwrap());
    }

    #[test]
    fn slope_tests() {
        let m = model(2, &[1, 1]);
        let mut g = rng(2);
        let a = element_a(m.clone(), 1, 3, LaurentPolynomial::first_power(2, 1)).unwrap();
        let base = random_assignment(&a.degree, &mut g);
        for s in nonempty_subsets(&a.degree) {
            assert!(slope_limit_test(&a, &s, &base).unwrap(), "{:?}", s);
            assert!(slope_limit_test(&a.scaled(&int(7)), &s, &base).unwrap());
        }
        let one = ShuffleElement::constant(m, vec![1, 0], Q::one());
        let b = random_assignment(&one.degree, &mut g);
        assert!(!slope_limit_test(&one, &variables(&one.degree), &b).unwrap());
    }

    #[test]
    fn interpolation_recovers_simple_function() {
        // f(t) = t^2 / (1 - 3t)
        let f = |t: &Q| t * t / (Q::one() - int(3) * t);
        let samples: Vec<(Q, Q)> = (2..20).map(|k| (int(k), f(&int(k)))).collect();
        let rf = rational_interpolate(&samples, 3).unwrap();
        assert_eq!(rf.valuation(), Some(2));
        assert_eq!(rf.eval(&ratio(1, 5)), f(&ratio(1, 5)));
    }

    #[test]
    fn full_check_runner_passes() {
        let rep = run_shuffle_checks(model(2, &[1, 1]), 9, 2, 2).unwrap();
        assert!(rep.pass, "{:?}", rep);
        assert!(rep.slope_tests > 0);
    }

    #[test]
    fn small_associativity() {
        let m = model(2, &[1, 1]);
        let mut g = rng(5);
        for _ in 0..3 {
            let a = random_element(m.clone(), &mut g, 2).unwrap();
            let b = random_element(m.clone(), &mut g, 2).unwrap();
            let c = random_element(m.clone(), &mut g, 2).unwrap();
            assert_eq!(associativity_mismatch(&a, &b, &c, 3, &mut g).unwrap(), None);
        }
    }
}
