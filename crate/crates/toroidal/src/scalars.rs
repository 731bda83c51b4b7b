//! Exact rational scalars, random parameter specializations and truncated
//! Laurent series at zero and infinity.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::Error;

/// Every quantity in the crate is an exact rational number.
pub type Q = BigRational;

/// Bound on numerators and denominators of randomly drawn parameters.
pub const HEIGHT: i64 = 64;

/// How many fresh draws `random_specialization` attempts before giving up.
pub const MAX_RETRIES: u32 = 32;

pub fn int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// `x^e` for any integer exponent. Panics on `0^e` with `e < 0`.
pub fn pow(x: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow::pow(x.clone(), e as usize)
    } else {
        assert!(!x.is_zero(), "negative power of zero");
        num_traits::pow::pow(x.recip(), (-e) as usize)
    }
}

/// `(-1)^e` as a scalar.
pub fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Canonical lossless text form: always `num/den` with a positive denominator.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses the `num/den` form produced by [`fmt_q`] (a bare integer is accepted).
pub fn parse_q(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.trim().parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Wrapper serializing a rational as its `num/den` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QStr(pub Q);

impl Serialize for QStr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(&self.0))
    }
}

impl fmt::Display for QStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(&self.0))
    }
}

/// Exact values for the equivariant parameters.
///
/// `qb` is the value of `q̄^{1/n}`; `qbar = qb^n` is `q̄` itself. The
/// framing parameters `u[0..r]` hold `u_1..u_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct Specialization {
    pub n: usize,
    pub r_vec: Vec<usize>,
    pub q: Q,
    pub qb: Q,
    pub qbar: Q,
    pub u: Vec<Q>,
    pub seed: u64,
    pub retries: u32,
}

#[derive(Serialize)]
struct SpecView {
    n: usize,
    r_vec: Vec<usize>,
    q: QStr,
    qbar_n: QStr,
    u: Vec<QStr>,
    seed: u64,
    retries: u32,
}

impl Serialize for Specialization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SpecView {
            n: self.n,
            r_vec: self.r_vec.clone(),
            q: QStr(self.q.clone()),
            qbar_n: QStr(self.qb.clone()),
            u: self.u.iter().cloned().map(QStr).collect(),
            seed: self.seed,
            retries: self.retries,
        }
        .serialize(s)
    }
}

impl Specialization {
    /// Builds a specialization from explicit values without any genericity check.
    pub fn from_values(n: usize, r_vec: Vec<usize>, q: Q, qb: Q, u: Vec<Q>) -> Result<Self, Error> {
        validate_shape(n, &r_vec)?;
        let total: usize = r_vec.iter().sum();
        if u.len() != total {
            return Err(Error::Config(format!(
                "expected {} framing parameters, got {}",
                total,
                u.len()
            )));
        }
        let qbar = pow(&qb, n as i64);
        Ok(Specialization { n, r_vec, q, qb, qbar, u, seed: 0, retries: 0 })
    }

    /// Total rank `r = r_1 + ... + r_n`.
    pub fn rank(&self) -> usize {
        self.u.len()
    }

    /// Checks the genericity predicate for a degree window (see [`generic_violation`]).
    pub fn is_generic(&self, window: usize) -> bool {
        generic_violation(self, window).is_none()
    }
}

fn validate_shape(n: usize, r_vec: &[usize]) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::Config("n must be positive".into()));
    }
    if r_vec.len() != n {
        return Err(Error::Config(format!("r must have {} entries, got {}", n, r_vec.len())));
    }
    if r_vec.contains(&0) {
        return Err(Error::Config("all r_i must be at least 1".into()));
    }
    Ok(())
}

/// Returns a description of the first genericity violation, if any.
///
/// All characters `u_a^2 q^{2x} q̄^{m/n}` with `|x| <= window + 2` and `|m|`
/// bounded by the largest sheet twist reachable from the window must be
/// pairwise distinct. Injectivity over a range of `x` also rules out
/// accidental `q^{±2}` ratios between unrelated boxes, which is what keeps
/// every ζ factor and every SYT denominator away from spurious zeros.
pub fn generic_violation(spec: &Specialization, window: usize) -> Option<String> {
    let one = Q::one();
    for (name, v) in [("q", &spec.q), ("qbar_n", &spec.qb)] {
        if v.is_zero() || v.abs() == one {
            return Some(format!("{} = {} is degenerate", name, fmt_q(v)));
        }
    }
    if let Some(a) = spec.u.iter().position(|x| x.is_zero()) {
        return Some(format!("u_{} is zero", a + 1));
    }
    let x_max = window as i64 + 2;
    let m_max = 6 * (spec.n as i64 + window as i64) + 2 * spec.n as i64;
    let q2 = &spec.q * &spec.q;
    let mut seen: HashSet<Q> = HashSet::new();
    for (a, u) in spec.u.iter().enumerate() {
        let mut base = u * u * pow(&q2, -x_max);
        for x in -x_max..=x_max {
            let mut v = &base * pow(&spec.qb, -m_max);
            for m in -m_max..=m_max {
                if !seen.insert(v.clone()) {
                    return Some(format!(
                        "character collision at a={}, x={}, m={}",
                        a + 1,
                        x,
                        m
                    ));
                }
                v *= &spec.qb;
            }
            base *= &q2;
        }
    }
    None
}

fn draw(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let num = rng.gen_range(-HEIGHT..=HEIGHT);
        let den = rng.gen_range(1..=HEIGHT);
        if num == 0 || num.abs() == den {
            continue;
        }
        return ratio(num, den);
    }
}

/// Deterministically draws a generic specialization from `seed`.
///
/// The result is a pure function of `(seed, n, r_vec, window)`; the number
/// of rejected draws is recorded in `retries`.
pub fn random_specialization(
    seed: u64,
    n: usize,
    r_vec: &[usize],
    window: usize,
) -> Result<Specialization, Error> {
    validate_shape(n, r_vec)?;
    let total: usize = r_vec.iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for retries in 0..MAX_RETRIES {
        let q = draw(&mut rng);
        let qb = draw(&mut rng);
        let u: Vec<Q> = (0..total).map(|_| draw(&mut rng)).collect();
        let mut spec = Specialization::from_values(n, r_vec.to_vec(), q, qb, u)?;
        spec.seed = seed;
        spec.retries = retries;
        if spec.is_generic(window) {
            return Ok(spec);
        }
    }
    Err(Error::NonGeneric(format!(
        "no generic specialization after {} draws for seed {}",
        MAX_RETRIES, seed
    )))
}

/// Expansion point of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Point {
    Infinity,
    Zero,
}

/// A factor `(alpha - beta * t)^exponent` in the local variable `t`, which is
/// `z` at [`Point::Zero`] and `1/z` at [`Point::Infinity`].
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFactor {
    pub alpha: Q,
    pub beta: Q,
    pub exponent: i32,
}

impl LinearFactor {
    pub fn new(alpha: Q, beta: Q, exponent: i32) -> Self {
        LinearFactor { alpha, beta, exponent }
    }
}

/// Truncated Laurent series.
///
/// At infinity the value is `Σ_k coeffs[k] z^{-(offset+k)}`, at zero it is
/// `Σ_k coeffs[k] z^{offset+k}`; `coeffs.len() - 1` is the truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    pub point: Point,
    pub offset: i64,
    pub coeffs: Vec<Q>,
}

impl TruncatedSeries {
    pub fn constant(point: Point, c: Q, order: usize) -> Self {
        let mut coeffs = vec![Q::zero(); order + 1];
        coeffs[0] = c;
        TruncatedSeries { point, offset: 0, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn local_index(&self, exponent: i64) -> i64 {
        match self.point {
            Point::Infinity => -exponent - self.offset,
            Point::Zero => exponent - self.offset,
        }
    }

    /// Coefficient of `z^exponent`; errors if it lies beyond the truncation.
    pub fn coeff(&self, exponent: i64) -> Result<Q, Error> {
        let k = self.local_index(exponent);
        if k < 0 {
            return Ok(Q::zero());
        }
        self.coeffs.get(k as usize).cloned().ok_or_else(|| {
            Error::Truncation(format!(
                "coefficient of z^{} requested from a series of order {}",
                exponent,
                self.order()
            ))
        })
    }

    /// Product of two series at the same point; the order is the smaller one.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.point, other.point, "series at different points");
        let order = self.order().min(other.order());
        let mut coeffs = vec![Q::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { point: self.point, offset: self.offset + other.offset, coeffs }
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Self, Error> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonGeneric("inverting a series with zero leading coefficient".into()));
        }
        let inv0 = a0.recip();
        let order = self.order();
        let mut b: Vec<Q> = Vec::with_capacity(order + 1);
        b.push(inv0.clone());
        for k in 1..=order {
            let mut acc = Q::zero();
            for m in 1..=k {
                acc += &self.coeffs[m] * &b[k - m];
            }
            b.push(-acc * &inv0);
        }
        Ok(TruncatedSeries { point: self.point, offset: -self.offset, coeffs: b })
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn scale(&self, c: &Q) -> Self {
        TruncatedSeries {
            point: self.point,
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Substitutes `z -> c z`.
    pub fn substitute_scale(&self, c: &Q) -> Self {
        let step = match self.point {
            Point::Infinity => c.recip(),
            Point::Zero => c.clone(),
        };
        let mut f = pow(&step, self.offset);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x * &f);
            f *= &step;
        }
        TruncatedSeries { point: self.point, offset: self.offset, coeffs }
    }

    /// Multiplies by `z^m`.
    pub fn shift(&self, m: i64) -> Self {
        let offset = match self.point {
            Point::Infinity => self.offset - m,
            Point::Zero => self.offset + m,
        };
        TruncatedSeries { point: self.point, offset, coeffs: self.coeffs.clone() }
    }
}

/// Truncated expansion of `∏ (alpha - beta t)^{±1}` to the given order.
pub fn expand_linear_product(
    factors: &[LinearFactor],
    point: Point,
    order: usize,
) -> Result<TruncatedSeries, Error> {
    let mut acc = TruncatedSeries::constant(point, Q::one(), order);
    for f in factors {
        let s = match f.exponent {
            1 => {
                let mut coeffs = vec![Q::zero(); order + 1];
                coeffs[0] = f.alpha.clone();
                if order >= 1 {
                    coeffs[1] = -f.beta.clone();
                }
                TruncatedSeries { point, offset: 0, coeffs }
            }
            -1 => {
                if f.alpha.is_zero() {
                    return Err(Error::NonGeneric(
                        "inverting a linear factor that vanishes at the expansion point".into(),
                    ));
                }
                let inv = f.alpha.recip();
                let ratio = &f.beta * &inv;
                let mut coeffs = Vec::with_capacity(order + 1);
                let mut c = inv;
                for _ in 0..=order {
                    coeffs.push(c.clone());
                    c *= &ratio;
                }
                TruncatedSeries { point, offset: 0, coeffs }
            }
            0 => continue,
            e => panic!("linear factor exponent must be ±1, got {}", e),
        };
        acc = acc.mul(&s);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_q() -> impl Strategy<Value = Q> {
        (-50i64..50, 1i64..50).prop_map(|(a, b)| ratio(a, b))
    }

    #[test]
    fn formatting_round_trips() {
        let x = ratio(-6, 4);
        assert_eq!(fmt_q(&x), "-3/2");
        assert_eq!(fmt_q(&int(5)), "5/1");
        assert_eq!(parse_q("-3/2"), Some(x));
        assert_eq!(parse_q("7"), Some(int(7)));
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow(&ratio(2, 3), -2), ratio(9, 4));
        assert_eq!(pow(&int(5), 0), int(1));
    }

    #[test]
    fn specialization_is_deterministic_and_generic() {
        let a = random_specialization(0, 2, &[1, 1], 4).unwrap();
        let b = random_specialization(0, 2, &[1, 1], 4).unwrap();
        assert_eq!(a, b);
        assert!(a.q != int(1) && a.q != int(-1));
        assert!(a.is_generic(4));
        let c = random_specialization(1, 2, &[1, 1], 4).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn injected_q_one_is_rejected() {
        let s = Specialization::from_values(2, vec![1, 1], int(1), ratio(3, 7), vec![ratio(2, 5), ratio(-4, 9)])
            .unwrap();
        assert!(!s.is_generic(2));
    }

    #[test]
    fn colliding_framing_parameters_are_rejected() {
        let q = ratio(3, 5);
        let u1 = ratio(2, 7);
        let u2 = &u1 * &q;
        let s = Specialization::from_values(2, vec![1, 1], q, ratio(5, 11), vec![u1, u2]).unwrap();
        assert!(generic_violation(&s, 2).is_some());
    }

    #[test]
    fn bad_shapes_are_config_errors() {
        assert!(matches!(random_specialization(0, 2, &[1], 2), Err(Error::Config(_))));
        assert!(matches!(random_specialization(0, 2, &[1, 0], 2), Err(Error::Config(_))));
    }

    #[test]
    fn geometric_series_at_infinity() {
        let u = ratio(3, 2);
        let s = expand_linear_product(&[LinearFactor::new(int(1), u.clone(), -1)], Point::Infinity, 4).unwrap();
        for k in 0..=4 {
            assert_eq!(s.coeff(-k).unwrap(), pow(&u, k));
        }
        assert!(s.coeff(-5).is_err());
        assert_eq!(s.coeff(1).unwrap(), Q::zero());
    }

    #[test]
    fn single_factor_at_zero_is_polynomial() {
        let s = expand_linear_product(&[LinearFactor::new(int(2), int(7), 1)], Point::Zero, 3).unwrap();
        assert_eq!(s.coeffs, vec![int(2), int(-7), int(0), int(0)]);
    }

    #[test]
    fn factor_times_inverse_is_one() {
        let f = [LinearFactor::new(ratio(2, 3), int(5), 1), LinearFactor::new(ratio(2, 3), int(5), -1)];
        let s = expand_linear_product(&f, Point::Zero, 5).unwrap();
        assert_eq!(s, TruncatedSeries::constant(Point::Zero, int(1), 5));
    }

    #[test]
    fn substitution_and_shift() {
        let s = expand_linear_product(&[LinearFactor::new(int(1), int(1), -1)], Point::Infinity, 3).unwrap();
        let t = s.substitute_scale(&int(2)).shift(1);
        // 1/(1 - 1/(2z)) times z = z + 1/2 + 1/(4z) + ...
        assert_eq!(t.coeff(1).unwrap(), int(1));
        assert_eq!(t.coeff(0).unwrap(), ratio(1, 2));
        assert_eq!(t.coeff(-1).unwrap(), ratio(1, 4));
    }

    proptest! {
        #[test]
        fn field_axioms_hold_exactly(a in small_q(), b in small_q(), c in small_q()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn series_division_undoes_multiplication(
            fa in prop::collection::vec((small_q(), small_q(), prop::bool::ANY), 1..4),
            fb in prop::collection::vec((small_q().prop_filter("nonzero", |x| !x.is_zero()), small_q(), prop::bool::ANY), 1..4),
            at_zero in prop::bool::ANY,
        ) {
            let point = if at_zero { Point::Zero } else { Point::Infinity };
            let mk = |v: &Vec<(Q, Q, bool)>| v.iter().map(|(a, b, inv)| {
                LinearFactor::new(a.clone(), b.clone(), if *inv { -1 } else { 1 })
            }).collect::<Vec<_>>();
            let fa = mk(&fa);
            prop_assume!(fa.iter().all(|f| f.exponent == 1 || !f.alpha.is_zero()));
            let a = expand_linear_product(&fa, point, 6).unwrap();
            let b = expand_linear_product(&mk(&fb), point, 6).unwrap();
            let back = a.mul(&b).div(&b).unwrap();
            prop_assert_eq!(back.coeffs, a.coeffs);
        }
    }
}
