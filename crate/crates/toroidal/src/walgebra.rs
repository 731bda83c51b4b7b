//! The elements `W_{ij}^k` acting on the fixed-point window.
//!
//! `W_{ij}^k` is a finite sum on every degree piece: `f_{[s;j)}` removes
//! `j - s` boxes, so only `s >= j - |d|` contributes on `K_d`. Each summand is
//! applied column by column in the order `f`, then `ψ^+`, then `e`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::action::{add_to, Action, GradedOperator, Kind};
use crate::colored::LaurentPolynomial;
use crate::partitions::{interval_vector, RPartition};
use crate::scalars::{fmt_q, pow, sign, Q};
use crate::Error;

/// `σ_i = r_1 + ... + r_i` for `i > 0` and `-(r_{i+1} + ... + r_0)` otherwise,
/// with `r` read periodically.
pub fn sigma(model: &crate::colored::Model, i: i64) -> i64 {
    if i > 0 {
        (1..=i).map(|t| model.r_at(t)).sum()
    } else {
        -((i + 1)..=0).map(|t| model.r_at(t)).sum::<i64>()
    }
}

/// Parameters of one `W_{ij}^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WSpec {
    pub i: i64,
    pub j: i64,
    pub k: i64,
}

/// The scalar in front of the `s`-th summand.
///
/// Besides `(−1)^{j−s} q^{2σ_j − 2σ_s + (j−s)(2k − 2r_j + 1)}`, the sign
/// `(−1)^{[s<i] + [s<j] + r_s + r_j}` converts between the generating-series
/// conventions `e(y) = −Σ`, `f(y) = −Σ`, `ψ^+(y) = (−1)^{r_s} Σ` and the mode
/// operators actually applied; the `r_j` part normalizes the `s = i = j` term
/// to `+ψ^+_{i,k}`.
pub fn w_coefficient(model: &crate::colored::Model, w: WSpec, s: i64) -> Q {
    let WSpec { i, j, k } = w;
    let q_exp = 2 * sigma(model, j) - 2 * sigma(model, s) + (j - s) * (2 * k - 2 * model.r_at(j) + 1);
    let parity = (j - s) + (s < i) as i64 + (s < j) as i64 + model.r_at(s) + model.r_at(j);
    sign(parity) * pow(model.q(), q_exp)
}

fn apply_fine(
    action: &Action,
    kind: Kind,
    lo: i64,
    hi: i64,
    power: i64,
    v: &BTreeMap<usize, Q>,
) -> Result<BTreeMap<usize, Q>, Error> {
    if lo == hi {
        return Ok(if power == 0 { v.clone() } else { BTreeMap::new() });
    }
    let m = LaurentPolynomial::first_power((hi - lo) as usize, power);
    let mut out = BTreeMap::new();
    for (&src, c) in v {
        for (target, x) in action.fine_column(kind, lo, hi, &m, src)? {
            let row = action.window.index_of(&target).ok_or_else(|| {
                Error::Config(format!("state {} left the window while applying W", target.id()))
            })?;
            add_to(&mut out, row, x * c);
        }
    }
    Ok(out)
}

/// `W_{ij}^k` applied to one basis vector, with the `s`-range extended by
/// `extra` steps below the exact bound `j - |src|`.
pub fn apply_w(action: &Action, w: WSpec, src: usize, extra: i64) -> Result<BTreeMap<usize, Q>, Error> {
    let model = action.model();
    let WSpec { i, j, k } = w;
    let size = action.window.size_of(src) as i64;
    let mut out = BTreeMap::new();
    let mut s = i.min(j);
    while s >= j - size - extra {
        let total = k + model.r_at(s) - model.r_at(j);
        let coef = w_coefficient(model, w, s);
        let start: BTreeMap<usize, Q> = [(src, Q::one())].into_iter().collect();
        for c in 0..=total.max(-1) {
            if (s == j) != (c == 0) {
                continue;
            }
            let after_f = apply_fine(action, Kind::F, s, j, c, &start)?;
            if after_f.is_empty() {
                continue;
            }
            for a in 0..=(total - c) {
                if (s == i) != (a == 0) {
                    continue;
                }
                let b = (total - a - c) as usize;
                let mut after_psi = BTreeMap::new();
                for (&t, x) in &after_f {
                    let modes = action.psi(s, t, true, b)?;
                    add_to(&mut after_psi, t, x * &modes[b]);
                }
                for (t, x) in apply_fine(action, Kind::E, s, i, a, &after_psi)? {
                    add_to(&mut out, t, x * &coef);
                }
            }
        }
        s -= 1;
    }
    Ok(out)
}

/// Sources whose image under `W_{ij}^k` stays inside the window.
pub fn admissible_sources(action: &Action, w: WSpec) -> Vec<usize> {
    let grow = (w.i - w.j).max(0) as usize;
    let max = action.window.max_boxes.saturating_sub(grow);
    action.window.up_to(max)
}

/// `W_{ij}^k` as a graded operator on all admissible sources.
pub fn build_w(action: &Action, w: WSpec) -> Result<GradedOperator, Error> {
    build_w_extra(action, w, 0)
}

pub fn build_w_extra(action: &Action, w: WSpec, extra: i64) -> Result<GradedOperator, Error> {
    use rayon::prelude::*;
    let n = action.model().spec.n;
    let shift: Vec<i64> = interval_vector(n, w.i, w.j).into_iter().map(|x| -x).collect();
    let sources = admissible_sources(action, w);
    let columns: Vec<(usize, BTreeMap<usize, Q>)> = sources
        .par_iter()
        .map(|&src| apply_w(action, w, src, extra).map(|col| (src, col)))
        .collect::<Result<_, _>>()?;
    let mut op = GradedOperator::zero(shift, Some(w.k));
    for (src, col) in columns {
        for (row, v) in col {
            op.add_entry(src, row, v);
        }
    }
    Ok(op)
}

/// Outcome of an annihilation or periodicity check.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct WReport {
    pub spec: WSpec,
    pub sources: usize,
    pub nonzero_entries: usize,
    pub pass: bool,
    pub witness: Option<String>,
}

fn witness_of(action: &Action, op: &GradedOperator) -> Option<String> {
    op.entries.iter().next().map(|(&(col, row), v)| {
        format!("<{}|W|{}> = {}", action.window.states[row].id(), action.window.states[col].id(), fmt_q(v))
    })
}

/// Checks that `W_{ij}^k` is the zero operator on the window.
pub fn check_annihilation(action: &Action, w: WSpec) -> Result<WReport, Error> {
    let op = build_w(action, w)?;
    Ok(WReport {
        spec: w,
        sources: admissible_sources(action, w).len(),
        nonzero_entries: op.entries.len(),
        pass: op.is_zero() && op.respects_shift(&action.window),
        witness: witness_of(action, &op),
    })
}

/// The prefactor relating `W_{ij}^k` to `W_{i−n,j−n}^k`.
pub fn w_period_factor(model: &crate::colored::Model, w: WSpec) -> Q {
    let WSpec { i, j, k } = w;
    pow(model.q(), model.rank())
        * model.qbar_pow(2 * model.r_at(j) - 2 * k + sigma(model, j - 1) - sigma(model, i))
}

/// Checks `W_{ij}^k = W_{i−n,j−n}^k · q^{r} q̄^{2r_j − 2k + σ_{j−1} − σ_i}`,
/// optionally with the prefactor perturbed by `mutation` (for harness checks).
pub fn check_w_periodicity(action: &Action, w: WSpec, mutation: Option<&Q>) -> Result<WReport, Error> {
    let n = action.model().n();
    let lhs = build_w(action, w)?;
    let shifted = WSpec { i: w.i - n, j: w.j - n, k: w.k };
    let mut factor = w_period_factor(action.model(), w);
    if let Some(m) = mutation {
        factor *= m;
    }
    let rhs = build_w(action, shifted)?.scaled(&factor);
    let diff = lhs.minus(&rhs);
    Ok(WReport {
        spec: w,
        sources: admissible_sources(action, w).len(),
        nonzero_entries: diff.entries.len(),
        pass: diff.is_zero(),
        witness: witness_of(action, &diff),
    })
}

/// The vacuum entry of `W_{ii}^{r_i}` and the top `ψ^+` mode it should equal,
/// `q^{σ_i} ∏_{â=i} (−u_a)`.
pub fn sharpness_witness(action: &Action, i: i64) -> Result<(Q, Q), Error> {
    let model = action.model();
    let k = model.r_at(i);
    let vac = action
        .window
        .index_of(&RPartition::empty(model.spec.rank()))
        .expect("the vacuum is always in the window");
    let col = apply_w(action, WSpec { i, j: i, k }, vac, 0)?;
    let entry = col.get(&vac).cloned().unwrap_or_else(Q::zero);
    let mut top = pow(model.q(), sigma(model, i));
    for a in model.components(i) {
        top *= -model.u_ext(a);
    }
    Ok((entry, top))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Window;
    use crate::colored::{Model, ZetaReading};
    use crate::scalars::random_specialization;

    fn action(n: usize, r: &[usize], window: usize) -> Action {
        let spec = random_specialization(7, n, r, window).unwrap();
        Action::new(Window::new(Model::new(spec, ZetaReading::Literal), window))
    }

    #[test]
    fn sigma_table() {
        let a = action(3, &[1, 2, 3], 0);
        let m = a.model();
        assert_eq!(sigma(m, 0), 0);
        assert_eq!(sigma(m, 3), 6);
        assert_eq!(sigma(m, -1), -3);
        for i in -7..7 {
            assert_eq!(sigma(m, i) - sigma(m, i - 1), m.r_at(i));
        }
    }

    #[test]
    fn vacuum_w_equals_psi_mode() {
        let a = action(2, &[2, 1], 0);
        for i in 1..=2 {
            for k in 0..=4 {
                let op = build_w(&a, WSpec { i, j: i, k }).unwrap();
                let psi = a.psi(i, 0, true, k as usize).unwrap();
                assert_eq!(op.get(0, 0), psi[k as usize]);
            }
        }
    }

    #[test]
    fn annihilation_small_instance() {
        let a = action(2, &[1, 1], 3);
        let rep = check_annihilation(&a, WSpec { i: 1, j: 2, k: 2 }).unwrap();
        assert!(rep.pass, "{:?}", rep);
        assert!(rep.sources > 0);
    }

    #[test]
    fn sharpness_is_nonzero_top_mode() {
        let a = action(2, &[1, 2], 0);
        for i in 1..=2 {
            let (entry, top) = sharpness_witness(&a, i).unwrap();
            assert_eq!(entry, top);
            assert!(!top.is_zero());
        }
    }

    #[test]
    fn s_range_is_exact() {
        let a = action(2, &[1, 1], 2);
        let w = WSpec { i: 1, j: 1, k: 1 };
        assert_eq!(build_w(&a, w).unwrap(), build_w_extra(&a, w, 2).unwrap());
    }

    #[test]
    fn periodicity_and_mutation() {
        let a = action(2, &[1, 1], 2);
        let w = WSpec { i: 2, j: 1, k: 1 };
        assert!(check_w_periodicity(&a, w, None).unwrap().pass);
        let bad = check_w_periodicity(&a, w, Some(&crate::scalars::int(2))).unwrap();
        assert!(!bad.pass);
        assert!(bad.witness.is_some());
    }
}
