//! Colors, the ζ function, τ±, and the conventions that extend framing
//! parameters and box weights across sheets of the infinite flag.
//!
//! Colors are unbounded integers. A color `i` lives on sheet
//! `(i - 1).div_euclid(n)`; moving a weight up one sheet adds `n` to the
//! color and multiplies the value by `q̄^{-2}`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::scalars::{fmt_q, pow, LinearFactor, Point, Specialization, Q};
use crate::Error;

/// How the two Kronecker deltas in the exponent of ζ are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
pub enum ZetaReading {
    /// The single exponent `δ(i ≡ j) - δ(i+1 ≡ j)`. Identically zero when `n = 1`.
    #[default]
    Literal,
    /// Two separate factors, one per delta, each with its own sheet offset.
    /// Coincides with `Literal` for `n >= 2`.
    SplitDeltas,
}

/// A specialization together with the ζ reading in force.
#[derive(Clone, Debug)]
pub struct Model {
    pub spec: Specialization,
    pub reading: ZetaReading,
    hat0: Vec<i64>,
}

impl Model {
    pub fn new(spec: Specialization, reading: ZetaReading) -> Self {
        let mut hat0 = Vec::with_capacity(spec.rank());
        for (i, &ri) in spec.r_vec.iter().enumerate() {
            hat0.extend(std::iter::repeat_n(i as i64 + 1, ri));
        }
        Model { spec, reading, hat0 }
    }

    pub fn n(&self) -> i64 {
        self.spec.n as i64
    }

    pub fn rank(&self) -> i64 {
        self.spec.rank() as i64
    }

    pub fn q(&self) -> &Q {
        &self.spec.q
    }

    /// `r_i` read periodically in `i`.
    pub fn r_at(&self, i: i64) -> i64 {
        self.spec.r_vec[(i - 1).rem_euclid(self.n()) as usize] as i64
    }

    /// Color of the framing index `a` (any integer): `â(a + r k) = â(a) + n k`.
    pub fn hat(&self, a: i64) -> i64 {
        let r = self.rank();
        let a0 = (a - 1).rem_euclid(r);
        let k = (a - 1).div_euclid(r);
        self.hat0[a0 as usize] + self.n() * k
    }

    /// Framing parameter at any index: `u_{a + r k} = u_a q̄^{-k}`.
    pub fn u_ext(&self, a: i64) -> Q {
        let r = self.rank();
        let a0 = (a - 1).rem_euclid(r);
        let k = (a - 1).div_euclid(r);
        &self.spec.u[a0 as usize] * pow(&self.spec.qbar, -k)
    }

    /// All extended framing indices `a` with `â(a) = i`.
    pub fn components(&self, i: i64) -> Vec<i64> {
        let n = self.n();
        let i0 = (i - 1).rem_euclid(n) + 1;
        let k = (i - 1).div_euclid(n);
        let r = self.rank();
        (1..=r).filter(|&a| self.hat0[(a - 1) as usize] == i0).map(|a| a + r * k).collect()
    }

    /// `q̄^{e}` for the full `q̄`.
    pub fn qbar_pow(&self, e: i64) -> Q {
        pow(&self.spec.qbar, e)
    }

    /// `q̄^{e/n}`.
    pub fn qb_pow(&self, e: i64) -> Q {
        pow(&self.spec.qb, e)
    }
}

/// Residue class of `i` in `1..=n`.
pub fn residue(i: i64, n: i64) -> i64 {
    (i - 1).rem_euclid(n) + 1
}

/// `⌈a / b⌉` for `b > 0`.
pub fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// An integer color paired with a nonzero exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredWeight {
    pub color: i64,
    pub value: Q,
}

impl ColoredWeight {
    pub fn new(color: i64, value: Q) -> Self {
        ColoredWeight { color, value }
    }

    /// Moves the weight `s` sheets up: color `+ s n`, value times `q̄^{-2s}`.
    pub fn shift_sheet(&self, model: &Model, s: i64) -> Self {
        ColoredWeight { color: self.color + s * model.n(), value: &self.value * model.qbar_pow(-2 * s) }
    }
}

/// The ζ factors between colors `zc` and `wc`: pairs `(t, e)` meaning
/// `((z q T - w/q) / (z T - w))^e` with `T = q̄^{2t}`.
pub fn zeta_exponents(model: &Model, zc: i64, wc: i64) -> Vec<(i64, i32)> {
    let n = model.n();
    let same = (zc - wc).rem_euclid(n) == 0;
    let next = (zc + 1 - wc).rem_euclid(n) == 0;
    match model.reading {
        ZetaReading::Literal => {
            let e = same as i32 - next as i32;
            if e == 0 {
                vec![]
            } else {
                vec![(div_ceil(zc - wc, n), e)]
            }
        }
        ZetaReading::SplitDeltas => {
            let mut out = vec![];
            if same {
                out.push(((zc - wc) / n, 1));
            }
            if next {
                out.push(((zc + 1 - wc) / n, -1));
            }
            out
        }
    }
}

/// `ζ(z/w)` at exact values; a vanishing denominator is reported as a pole.
pub fn zeta(model: &Model, z: &ColoredWeight, w: &ColoredWeight) -> Result<Q, Error> {
    let q = model.q();
    let mut out = Q::one();
    for (t, e) in zeta_exponents(model, z.color, w.color) {
        let zt = &z.value * model.qbar_pow(2 * t);
        let num = &zt * q - &w.value / q;
        let den = &zt - &w.value;
        let (top, bottom) = if e > 0 { (num, den) } else { (den, num) };
        if bottom.is_zero() {
            return Err(Error::Pole(format!(
                "zeta({} of color {} / {} of color {})",
                fmt_q(&z.value),
                z.color,
                fmt_q(&w.value),
                w.color
            )));
        }
        out *= top / bottom;
    }
    Ok(out)
}

/// Numerator and denominator of `ζ(z/w)` as separate exact values, for
/// identities asserted in denominator-cleared form.
pub fn zeta_parts(model: &Model, z: &ColoredWeight, w: &ColoredWeight) -> (Q, Q) {
    let q = model.q();
    let (mut n_acc, mut d_acc) = (Q::one(), Q::one());
    for (t, e) in zeta_exponents(model, z.color, w.color) {
        let zt = &z.value * model.qbar_pow(2 * t);
        let num = &zt * q - &w.value / q;
        let den = &zt - &w.value;
        if e > 0 {
            n_acc *= num;
            d_acc *= den;
        } else {
            n_acc *= den;
            d_acc *= num;
        }
    }
    (n_acc, d_acc)
}

/// A product of linear forms `A - B` in which a form with `A = B` contributes
/// the factor `A` and one unit of vanishing order instead of zero.
///
/// Writing `A - B = A (1 - B/A)` and keeping track of how many `(1 - 1)`
/// factors appear lets products with cancelling zeros and poles be evaluated
/// exactly. The value is finite and nonzero iff the net order is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Reg {
    pub value: Q,
    pub order: i32,
}

impl Default for Reg {
    fn default() -> Self {
        Reg { value: Q::one(), order: 0 }
    }
}

impl Reg {
    pub fn mul(&mut self, x: &Q) {
        self.value *= x;
    }

    pub fn div(&mut self, x: &Q) {
        self.value /= x;
    }

    pub fn mul_linear(&mut self, a: &Q, b: &Q) {
        if a == b {
            self.value *= a;
            self.order += 1;
        } else {
            self.value *= a - b;
        }
    }

    pub fn div_linear(&mut self, a: &Q, b: &Q) {
        if a == b {
            self.value /= a;
            self.order -= 1;
        } else {
            self.value /= a - b;
        }
    }

    /// Multiplies by `ζ(z/w)^{±1}` with each linear form oriented z-side first.
    pub fn mul_zeta(&mut self, model: &Model, zv: &Q, zc: i64, wv: &Q, wc: i64, invert: bool) {
        let q = model.q();
        for (t, e) in zeta_exponents(model, zc, wc) {
            let zt = zv * model.qbar_pow(2 * t);
            let na = &zt * q;
            let nb = wv / q;
            let up = (e > 0) != invert;
            if up {
                self.mul_linear(&na, &nb);
                self.div_linear(&zt, wv);
            } else {
                self.div_linear(&na, &nb);
                self.mul_linear(&zt, wv);
            }
        }
    }

    /// The finite value: zero for positive order, an error for a net pole.
    pub fn finish(self, context: impl FnOnce() -> String) -> Result<Q, Error> {
        match self.order {
            0 => Ok(self.value),
            o if o > 0 => Ok(Q::zero()),
            o => Err(Error::Pole(format!("net order {} in {}", o, context()))),
        }
    }
}

/// `ζ(z / w)` as linear factors in a spectral variable `w` of color `w_color`,
/// expanded at `point`. An exponent-zero color pair yields no factors.
///
/// At zero the local variable is `w`; at infinity it is `1/w`, and the single
/// powers of `w` pulled out of numerator and denominator cancel.
pub fn zeta_factor(model: &Model, z: &ColoredWeight, w_color: i64, point: Point) -> Vec<LinearFactor> {
    let q = model.q();
    let mut out = vec![];
    for (t, e) in zeta_exponents(model, z.color, w_color) {
        let zt = &z.value * model.qbar_pow(2 * t);
        let (num, den) = match point {
            // (zt q - w/q) and (zt - w) as polynomials in w.
            Point::Zero => ((&zt * q, q.recip()), (zt.clone(), Q::one())),
            // Divide both by -w: (1/q - zt q t) and (1 - zt t) with t = 1/w.
            Point::Infinity => ((q.recip(), &zt * q), (Q::one(), zt.clone())),
        };
        out.push(LinearFactor::new(num.0, num.1, e));
        out.push(LinearFactor::new(den.0, den.1, -e));
    }
    out
}

/// `τ_+(z of color i) = ∏_{â = i+1} (u_a/q - q z/u_a)` over extended framings.
pub fn tau_plus(model: &Model, z: &ColoredWeight) -> Q {
    let q = model.q();
    let mut p = Q::one();
    for a in model.components(z.color + 1) {
        let ua = model.u_ext(a);
        p *= &ua / q - q * &z.value / &ua;
    }
    p
}

/// `τ_-(z of color i) = ∏_{â = i} (u_a - z/u_a)` over extended framings.
pub fn tau_minus(model: &Model, z: &ColoredWeight) -> Q {
    let mut p = Q::one();
    for a in model.components(z.color) {
        let ua = model.u_ext(a);
        p *= &ua - &z.value / &ua;
    }
    p
}

/// Divides `acc` by `τ_-`, regularizing each factor as `u_a (1 - z/u_a^2)`.
pub fn div_tau_minus(model: &Model, z: &ColoredWeight, acc: &mut Reg) {
    for a in model.components(z.color) {
        let ua = model.u_ext(a);
        let b = &z.value / &ua;
        acc.div_linear(&ua, &b);
    }
}

/// The factor `q̄^{2(c - l)/n}` converting a raw weight of natural color `c`
/// into the weight seen at an operator label `l ≡ c (mod n)`.
pub fn sheet_twist(model: &Model, box_color: i64, label: i64) -> Result<Q, Error> {
    if (box_color - label).rem_euclid(model.n()) != 0 {
        return Err(Error::Config(format!(
            "label {} is not congruent to color {} mod {}",
            label,
            box_color,
            model.n()
        )));
    }
    Ok(model.qb_pow(2 * (box_color - label)))
}

/// One monomial `coeff · q̄^{qb_power/n} · ∏ z_a^{e_a}` over labels `i..j-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentMonomial {
    pub exponents: Vec<i64>,
    pub qb_power: i64,
    pub coeff: Q,
}

/// A Laurent polynomial `M(z_i, ..., z_{j-1})` as a list of monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial {
    pub len: usize,
    pub terms: Vec<LaurentMonomial>,
}

impl LaurentPolynomial {
    pub fn monomial(exponents: Vec<i64>) -> Self {
        LaurentPolynomial {
            len: exponents.len(),
            terms: vec![LaurentMonomial { exponents, qb_power: 0, coeff: Q::one() }],
        }
    }

    /// `z_i^k` on an interval of length `len`; for `len = 0` this is `δ_k^0`.
    pub fn first_power(len: usize, k: i64) -> Self {
        if len == 0 {
            let coeff = if k == 0 { Q::one() } else { Q::zero() };
            return LaurentPolynomial { len: 0, terms: vec![LaurentMonomial { exponents: vec![], qb_power: 0, coeff }] };
        }
        let mut e = vec![0; len];
        e[0] = k;
        Self::monomial(e)
    }

    /// `∏_a (z_a q̄^{2a/n})^{⌈(a-i+1)k/(j-i)⌉ - ⌈(a-i)k/(j-i)⌉}`, the
    /// slope monomial on `[i; j)`.
    pub fn slope(i: i64, j: i64, k: i64) -> Self {
        assert!(i < j, "slope monomial needs i < j");
        let len = j - i;
        let mut exponents = Vec::with_capacity(len as usize);
        let mut qb_power = 0;
        for a in i..j {
            let e = div_ceil((a - i + 1) * k, len) - div_ceil((a - i) * k, len);
            exponents.push(e);
            qb_power += 2 * a * e;
        }
        LaurentPolynomial { len: len as usize, terms: vec![LaurentMonomial { exponents, qb_power, coeff: Q::one() }] }
    }

    pub fn scaled(mut self, c: &Q) -> Self {
        for t in &mut self.terms {
            t.coeff *= c;
        }
        self
    }

    /// Homogeneous degree, if all monomials share one.
    pub fn hom_degree(&self) -> Option<i64> {
        let mut degs = self.terms.iter().map(|t| t.exponents.iter().sum::<i64>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn eval(&self, model: &Model, vals: &[Q]) -> Q {
        assert_eq!(vals.len(), self.len, "wrong number of arguments for M");
        let mut total = Q::zero();
        for t in &self.terms {
            if t.coeff.is_zero() {
                continue;
            }
            let mut v = &t.coeff * model.qb_pow(t.qb_power);
            for (x, &e) in vals.iter().zip(&t.exponents) {
                if e != 0 {
                    v *= pow(x, e);
                }
            }
            total += v;
        }
        total
    }
}

impl std::ops::Add for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(mut self, other: LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.len, other.len);
        self.terms.extend(other.terms);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, random_specialization, ratio};
    use proptest::prelude::*;
    use std::sync::Mutex;

    fn model(n: usize, r: &[usize], seed: u64) -> Model {
        // drawing a generic specialization is slow enough to matter inside proptests
        type Entry = ((usize, Vec<usize>, u64), Model);
        static CACHE: Mutex<Vec<Entry>> = Mutex::new(Vec::new());
        let key = (n, r.to_vec(), seed);
        let mut cache = CACHE.lock().unwrap();
        if let Some((_, m)) = cache.iter().find(|(k, _)| *k == key) {
            return m.clone();
        }
        let m = Model::new(random_specialization(seed, n, r, 4).unwrap(), ZetaReading::Literal);
        cache.push((key, m.clone()));
        m
    }

    fn hand_model(n: usize, r: Vec<usize>, q: Q, qb: Q, u: Vec<Q>) -> Model {
        Model::new(Specialization::from_values(n, r, q, qb, u).unwrap(), ZetaReading::Literal)
    }

    #[test]
    fn exponent_zero_pairs_give_one() {
        let m = model(3, &[1, 1, 1], 0);
        let z = ColoredWeight::new(1, ratio(3, 2));
        let w = ColoredWeight::new(3, ratio(3, 2));
        assert_eq!(zeta(&m, &z, &w).unwrap(), int(1));
        assert!(zeta_exponents(&m, 1, 3).is_empty());
    }

    #[test]
    fn same_color_value() {
        let m = hand_model(2, vec![1, 1], int(2), ratio(3, 5), vec![int(7), int(11)]);
        let z = ColoredWeight::new(1, int(3));
        let w = ColoredWeight::new(1, int(5));
        assert_eq!(zeta(&m, &z, &w).unwrap(), ratio(-7, 4));
    }

    #[test]
    fn neighbor_color_uses_ceiling_sheet() {
        // colors (2, 1) with n = 2: exponent -1 and T = q̄^{2⌈1/2⌉} = q̄^2
        let qb = ratio(3, 5);
        let m = hand_model(2, vec![1, 1], int(2), qb.clone(), vec![int(7), int(11)]);
        let t = pow(&qb, 4);
        let z = ColoredWeight::new(2, int(3));
        let w = ColoredWeight::new(1, int(5));
        let expect = (int(3) * &t - int(5)) / (int(6) * &t - ratio(5, 2));
        assert_eq!(zeta(&m, &z, &w).unwrap(), expect);
    }

    #[test]
    fn pole_is_reported() {
        let m = model(2, &[1, 1], 0);
        let z = ColoredWeight::new(1, int(3));
        assert!(matches!(zeta(&m, &z, &z), Err(Error::Pole(_))));
    }

    #[test]
    fn split_reading_agrees_for_n_at_least_two() {
        let mut m = model(3, &[1, 2, 1], 4);
        let z = ColoredWeight::new(2, ratio(5, 3));
        for wc in -4..8 {
            let w = ColoredWeight::new(wc, ratio(-7, 2));
            m.reading = ZetaReading::Literal;
            let a = zeta(&m, &z, &w).unwrap();
            m.reading = ZetaReading::SplitDeltas;
            assert_eq!(a, zeta(&m, &z, &w).unwrap());
        }
    }

    #[test]
    fn literal_reading_is_trivial_for_n_one() {
        let m = model(1, &[2], 0);
        for (zc, wc) in [(1, 1), (1, 2), (3, 1)] {
            assert!(zeta_exponents(&m, zc, wc).is_empty());
        }
    }

    #[test]
    fn tau_examples() {
        let m = model(2, &[1, 1], 3);
        let u1 = m.spec.u[0].clone();
        let u2 = m.spec.u[1].clone();
        let q = m.q().clone();
        let z = ColoredWeight::new(1, u1.clone());
        assert_eq!(tau_plus(&m, &z), &u2 / &q - &q * &u1 / &u2);
        // τ_- vanishes at the squared framing parameter of its own color
        let z = ColoredWeight::new(1, &u1 * &u1);
        assert_eq!(tau_minus(&m, &z), Q::zero());
        assert_eq!(m.components(2).len(), 1);
    }

    #[test]
    fn tau_has_one_factor_per_framing() {
        let m = model(2, &[2, 3], 1);
        assert_eq!(m.components(1).len(), 2);
        assert_eq!(m.components(2).len(), 3);
        assert_eq!(m.components(0).len(), 3);
        assert_eq!(m.components(0), vec![-2, -1, 0]);
    }

    #[test]
    fn sheet_twist_rules() {
        let m = model(2, &[1, 1], 0);
        assert_eq!(sheet_twist(&m, 3, 3).unwrap(), int(1));
        assert_eq!(sheet_twist(&m, 3, 1).unwrap(), m.qbar_pow(2));
        assert!(sheet_twist(&m, 3, 2).is_err());
        let a = sheet_twist(&m, 5, 1).unwrap();
        let b = sheet_twist(&m, 1, 5).unwrap();
        assert_eq!(a * b, int(1));
    }

    #[test]
    fn extended_framings() {
        let m = model(2, &[2, 1], 0);
        assert_eq!(m.hat(1), 1);
        assert_eq!(m.hat(3), 2);
        assert_eq!(m.hat(4), 3);
        assert_eq!(m.hat(0), 0);
        assert_eq!(m.u_ext(4), &m.spec.u[0] / &m.spec.qbar);
        assert_eq!(m.u_ext(-2), &m.spec.u[0] * &m.spec.qbar);
    }

    #[test]
    fn slope_monomials() {
        let p = LaurentPolynomial::slope(1, 3, 1);
        assert_eq!(p.terms[0].exponents, vec![1, 0]);
        let p = LaurentPolynomial::slope(2, 3, 5);
        assert_eq!(p.terms[0].exponents, vec![5]);
        assert_eq!(p.terms[0].qb_power, 20);
        let p = LaurentPolynomial::slope(1, 4, 0);
        assert_eq!(p.terms[0].exponents, vec![0, 0, 0]);
        assert_eq!(LaurentPolynomial::slope(-3, 2, 7).hom_degree(), Some(7));
    }

    #[test]
    fn zeta_factor_expansions_match_values() {
        let m = model(2, &[1, 1], 2);
        let z = ColoredWeight::new(1, ratio(3, 7));
        assert!(zeta_factor(&m, &z, 0, Point::Zero).is_empty() == zeta_exponents(&m, 1, 0).is_empty());
        let f = zeta_factor(&m, &z, 1, Point::Infinity);
        assert_eq!(f.len(), 2);
        let s = crate::scalars::expand_linear_product(&f, Point::Infinity, 0).unwrap();
        assert!(!s.coeffs[0].is_zero());
        // evaluate the factors directly at a point and compare with zeta
        let w = ratio(-5, 4);
        for point in [Point::Zero, Point::Infinity] {
            let t = if point == Point::Zero { w.clone() } else { w.recip() };
            let mut v = Q::one();
            for lf in zeta_factor(&m, &z, 2, point) {
                let x = &lf.alpha - &lf.beta * &t;
                v *= if lf.exponent > 0 { x } else { x.recip() };
            }
            assert_eq!(v, zeta(&m, &z, &ColoredWeight::new(2, w.clone())).unwrap());
        }
    }

    #[test]
    fn reg_tracks_cancelling_zeros() {
        let mut r = Reg::default();
        r.mul_linear(&int(3), &int(3));
        r.div_linear(&int(2), &int(2));
        r.mul(&int(5));
        assert_eq!(r.clone().finish(String::new).unwrap(), ratio(15, 2));
        r.div_linear(&int(1), &int(1));
        assert!(r.finish(String::new).is_err());
    }

    proptest! {
        #[test]
        fn same_color_reflection(a in 1i64..40, b in 1i64..40, c in 1i64..40, d in 1i64..40, seed in 0u64..5) {
            let m = model(2, &[1, 1], seed);
            let z = ColoredWeight::new(1, ratio(a, b));
            let w = ColoredWeight::new(1, ratio(-c, d));
            let s = zeta(&m, &z, &w).unwrap() + zeta(&m, &w, &z).unwrap();
            prop_assert_eq!(s, m.q() + m.q().recip());
        }

        #[test]
        fn sheet_covariance(zc in -6i64..6, wc in -6i64..6, sheets in -2i64..3, a in 1i64..40, b in 1i64..40) {
            let m = model(3, &[1, 2, 1], 7);
            let z = ColoredWeight::new(zc, ratio(a, b));
            let w = ColoredWeight::new(wc, ratio(-b, a + 1));
            let lhs = zeta(&m, &z.shift_sheet(&m, sheets), &w.shift_sheet(&m, sheets));
            let rhs = zeta(&m, &z, &w);
            prop_assert_eq!(lhs.ok(), rhs.ok());
        }

        #[test]
        fn tau_sheet_shift_is_a_qbar_monomial(zc in -4i64..6, a in 1i64..40, b in 1i64..40) {
            let m = model(2, &[2, 1], 5);
            let z = ColoredWeight::new(zc, ratio(a, b));
            let up = z.shift_sheet(&m, 1);
            prop_assert_eq!(tau_plus(&m, &up), tau_plus(&m, &z) * m.qbar_pow(-m.r_at(zc + 1)));
            prop_assert_eq!(tau_minus(&m, &up), tau_minus(&m, &z) * m.qbar_pow(-m.r_at(zc)));
        }
    }
}
