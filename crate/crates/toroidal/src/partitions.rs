//! r-partitions (torus fixed points), degree vectors, one-box moves and
//! standard Young tableaux realized as chains of r-partitions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::colored::{sheet_twist, ColoredWeight, Model};
use crate::scalars::{pow, Q};

/// A box `(x, y)` of the `a`-th partition (`a` is 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub a: usize,
    pub x: u32,
    pub y: u32,
}

impl Cell {
    /// Natural color `â + y`.
    pub fn color(&self, model: &Model) -> i64 {
        model.hat(self.a as i64) + self.y as i64
    }

    /// Raw weight `u_a^2 q^{2x}`.
    pub fn weight(&self, model: &Model) -> Q {
        let u = &model.spec.u[self.a - 1];
        u * u * pow(model.q(), 2 * self.x as i64)
    }

    pub fn colored(&self, model: &Model) -> ColoredWeight {
        ColoredWeight::new(self.color(model), self.weight(model))
    }

    /// The weight seen by an operator label `l ≡ color (mod n)`, carrying color `l`.
    pub fn at_label(&self, model: &Model, label: i64) -> ColoredWeight {
        let c = self.color(model);
        let twist = sheet_twist(model, c, label).expect("label must match the box color class");
        ColoredWeight::new(label, self.weight(model) * twist)
    }
}

/// An r-tuple of partitions, each stored as its weakly decreasing row lengths.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RPartition {
    pub parts: Vec<Vec<u32>>,
}

impl fmt::Display for RPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl RPartition {
    pub fn empty(r: usize) -> Self {
        RPartition { parts: vec![vec![]; r] }
    }

    pub fn new(parts: Vec<Vec<u32>>) -> Self {
        let p = RPartition { parts };
        assert!(p.is_valid(), "rows must be positive and weakly decreasing");
        p
    }

    pub fn is_valid(&self) -> bool {
        self.parts.iter().all(|p| p.iter().all(|&x| x > 0) && p.windows(2).all(|w| w[0] >= w[1]))
    }

    /// Canonical id such as `2,1|1|` for `((2,1), (1), ())`.
    pub fn id(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn parse_id(s: &str) -> Option<Self> {
        let parts = s
            .split('|')
            .map(|c| {
                if c.is_empty() {
                    Some(vec![])
                } else {
                    c.split(',').map(|x| x.trim().parse::<u32>().ok()).collect()
                }
            })
            .collect::<Option<Vec<_>>>()?;
        let p = RPartition { parts };
        p.is_valid().then_some(p)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|p| p.iter().sum::<u32>() as usize).sum()
    }

    pub fn contains_cell(&self, c: &Cell) -> bool {
        self.parts[c.a - 1].get(c.y as usize).is_some_and(|&row| c.x < row)
    }

    pub fn contains(&self, other: &RPartition) -> bool {
        self.parts.iter().zip(&other.parts).all(|(p, o)| {
            o.len() <= p.len() && o.iter().zip(p).all(|(a, b)| a <= b)
        })
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut out = vec![];
        for (ai, p) in self.parts.iter().enumerate() {
            for (y, &row) in p.iter().enumerate() {
                for x in 0..row {
                    out.push(Cell { a: ai + 1, x, y: y as u32 });
                }
            }
        }
        out
    }

    /// Cells of `self` not in `inner`.
    pub fn skew_cells(&self, inner: &RPartition) -> Vec<Cell> {
        self.cells().into_iter().filter(|c| !inner.contains_cell(c)).collect()
    }

    /// All ways to add one box, with the added cell.
    pub fn addable(&self) -> Vec<(RPartition, Cell)> {
        let mut out = vec![];
        for (ai, p) in self.parts.iter().enumerate() {
            for y in 0..=p.len() {
                let x = p.get(y).copied().unwrap_or(0);
                if y == 0 || p[y - 1] > x {
                    let mut next = self.clone();
                    let row = &mut next.parts[ai];
                    if y < row.len() {
                        row[y] += 1;
                    } else {
                        row.push(1);
                    }
                    out.push((next, Cell { a: ai + 1, x, y: y as u32 }));
                }
            }
        }
        out
    }

    /// All ways to remove one box, with the removed cell.
    pub fn removable(&self) -> Vec<(RPartition, Cell)> {
        let mut out = vec![];
        for (ai, p) in self.parts.iter().enumerate() {
            for y in 0..p.len() {
                if y + 1 == p.len() || p[y + 1] < p[y] {
                    let mut next = self.clone();
                    let row = &mut next.parts[ai];
                    row[y] -= 1;
                    if row[y] == 0 {
                        row.pop();
                    }
                    out.push((next, Cell { a: ai + 1, x: p[y] - 1, y: y as u32 }));
                }
            }
        }
        out
    }

    /// Number of boxes in each color class `1..=n`.
    pub fn degree(&self, model: &Model) -> DegreeVector {
        let n = model.n();
        let mut d = vec![0usize; n as usize];
        for c in self.cells() {
            d[(c.color(model) - 1).rem_euclid(n) as usize] += 1;
        }
        DegreeVector(d)
    }
}

/// Degree vector `d ∈ N^n`, indexed by color classes `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeVector(pub Vec<usize>);

impl DegreeVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `d_i` with `i` read periodically.
    pub fn at(&self, i: i64) -> usize {
        let n = self.0.len() as i64;
        self.0[(i - 1).rem_euclid(n) as usize]
    }

    pub fn le(&self, other: &DegreeVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn plus(&self, shift: &[i64]) -> Option<DegreeVector> {
        self.0
            .iter()
            .zip(shift)
            .map(|(&d, &s)| usize::try_from(d as i64 + s).ok())
            .collect::<Option<Vec<_>>>()
            .map(DegreeVector)
    }
}

/// The vector `[i; j) = ς^i + ... + ς^{j-1}` (reduced mod n), with
/// `[i; j) = -[j; i)` when `j < i`.
pub fn interval_vector(n: usize, i: i64, j: i64) -> Vec<i64> {
    let mut v = vec![0i64; n];
    let (lo, hi, s) = if i <= j { (i, j, 1) } else { (j, i, -1) };
    for a in lo..hi {
        v[(a - 1).rem_euclid(n as i64) as usize] += s;
    }
    v
}

/// `⟨k, l⟩ = Σ_i k_i l_i - k_{i-1} l_i` with `k_0 = k_n`.
pub fn degree_pairing(k: &[i64], l: &[i64]) -> i64 {
    let n = k.len();
    assert_eq!(n, l.len());
    (0..n).map(|i| k[i] * l[i] - k[(i + n - 1) % n] * l[i]).sum()
}

/// All partitions of size at most `m`, every size in reverse-lexicographic order.
pub fn partitions_up_to(m: usize) -> Vec<Vec<u32>> {
    fn rec(rem: u32, maxp: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        for p in (1..=rem.min(maxp)).rev() {
            cur.push(p);
            out.push(cur.clone());
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![vec![]];
    rec(m as u32, m as u32, &mut vec![], &mut out);
    out
}

/// All r-partitions with at most `window` boxes, in canonical order.
pub fn all_rpartitions(r: usize, window: usize) -> Vec<RPartition> {
    let singles = partitions_up_to(window);
    let mut out = vec![RPartition::empty(r)];
    for comp in 0..r {
        let mut next = vec![];
        for base in &out {
            let used = base.size();
            for p in &singles {
                if used + p.iter().sum::<u32>() as usize <= window {
                    let mut b = base.clone();
                    b.parts[comp] = p.clone();
                    next.push(b);
                }
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Fixed points of `M_d`: all r-partitions of degree `d`, in canonical order.
pub fn enumerate_fixed_points(model: &Model, d: &DegreeVector) -> Vec<RPartition> {
    let out: Vec<RPartition> = all_rpartitions(model.spec.rank(), d.total())
        .into_iter()
        .filter(|p| p.size() == d.total() && p.degree(model) == *d)
        .collect();
    debug_assert!(out.iter().all(|p| p.degree(model) == *d));
    out
}

/// All fixed points with at most `window` boxes grouped by degree vector.
pub fn fixed_points_by_degree(model: &Model, window: usize) -> BTreeMap<DegreeVector, Vec<RPartition>> {
    let mut out: BTreeMap<DegreeVector, Vec<RPartition>> = BTreeMap::new();
    for p in all_rpartitions(model.spec.rank(), window) {
        out.entry(p.degree(model)).or_default().push(p);
    }
    out
}

/// Every `μ ⊃ λ` with one extra box whose color is in class `class`.
pub fn add_box_candidates(model: &Model, lam: &RPartition, class: i64) -> Vec<(RPartition, Cell)> {
    let n = model.n();
    lam.addable().into_iter().filter(|(_, c)| (c.color(model) - class).rem_euclid(n) == 0).collect()
}

/// A chain `ν^{(i)} ⊂ ... ⊂ ν^{(j)}` in which the step labeled `a` adds one
/// box of color `≡ a (mod n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SytChain {
    pub i: i64,
    pub j: i64,
    pub chain: Vec<RPartition>,
    /// `cells[t]` carries label `i + t`.
    pub cells: Vec<Cell>,
}

impl SytChain {
    pub fn labels(&self) -> impl Iterator<Item = (i64, &Cell)> {
        self.cells.iter().enumerate().map(move |(t, c)| (self.i + t as i64, c))
    }
}

/// All chains that start at `mu` and add boxes labeled `i, i+1, ..., j-1`.
pub fn chains_up(model: &Model, mu: &RPartition, i: i64, j: i64) -> Vec<SytChain> {
    let n = model.n();
    let mut out = vec![];
    let mut stack = vec![(vec![mu.clone()], vec![])];
    while let Some((chain, cells)) = stack.pop() {
        let a = i + cells.len() as i64;
        if a >= j {
            out.push(SytChain { i, j, chain, cells });
            continue;
        }
        let top = chain.last().unwrap();
        for (next, c) in top.addable() {
            if (c.color(model) - a).rem_euclid(n) == 0 {
                let mut ch = chain.clone();
                ch.push(next);
                let mut cs: Vec<Cell> = cells.clone();
                cs.push(c);
                stack.push((ch, cs));
            }
        }
    }
    out.sort();
    out
}

/// All chains that end at `lam`, obtained by removing labels `j-1, ..., i`.
pub fn chains_down(model: &Model, lam: &RPartition, i: i64, j: i64) -> Vec<SytChain> {
    let n = model.n();
    let mut out = vec![];
    let mut stack = vec![(vec![lam.clone()], vec![])];
    while let Some((chain, cells)) = stack.pop() {
        let a = j - 1 - cells.len() as i64;
        if a < i {
            let mut chain = chain;
            chain.reverse();
            let mut cells: Vec<Cell> = cells;
            cells.reverse();
            out.push(SytChain { i, j, chain, cells });
            continue;
        }
        let top = chain.last().unwrap();
        for (next, c) in top.removable() {
            if (c.color(model) - a).rem_euclid(n) == 0 {
                let mut ch = chain.clone();
                ch.push(next);
                let mut cs = cells.clone();
                cs.push(c);
                stack.push((ch, cs));
            }
        }
    }
    out.sort();
    out
}

/// All SYT chains from `mu` to `lam` on the interval `[i; j)`.
pub fn enumerate_syt(model: &Model, mu: &RPartition, lam: &RPartition, i: i64, j: i64) -> Vec<SytChain> {
    if i >= j || !lam.contains(mu) || lam.size() != mu.size() + (j - i) as usize {
        return vec![];
    }
    chains_up(model, mu, i, j).into_iter().filter(|c| c.chain.last() == Some(lam)).collect()
}

/// Independent oracle: labelings of `lam \ mu` by `i..j-1` with matching
/// colors such that no box is directly above or directly to the right of a
/// box with a greater label. Each labeling is returned as the cell list
/// ordered by label.
pub fn syt_by_labeling(model: &Model, mu: &RPartition, lam: &RPartition, i: i64, j: i64) -> Vec<Vec<Cell>> {
    if i >= j || !lam.contains(mu) {
        return vec![];
    }
    let skew = lam.skew_cells(mu);
    let len = (j - i) as usize;
    if skew.len() != len {
        return vec![];
    }
    let n = model.n();
    let mut out = vec![];
    let mut order: Vec<usize> = vec![];
    let mut used = vec![false; len];
    fn rec(
        model: &Model,
        n: i64,
        i: i64,
        skew: &[Cell],
        order: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<Cell>>,
    ) {
        let t = order.len();
        if t == skew.len() {
            let label_of = |c: &Cell| order.iter().position(|&k| skew[k] == *c);
            let ok = skew.iter().all(|c| {
                let mine = label_of(c).unwrap();
                let right = Cell { x: c.x + 1, ..*c };
                let above = Cell { y: c.y + 1, ..*c };
                [right, above].iter().all(|nb| label_of(nb).is_none_or(|l| l > mine))
            });
            if ok {
                out.push(order.iter().map(|&k| skew[k]).collect());
            }
            return;
        }
        for k in 0..skew.len() {
            if !used[k] && (skew[k].color(model) - (i + t as i64)).rem_euclid(n) == 0 {
                used[k] = true;
                order.push(k);
                rec(model, n, i, skew, order, used, out);
                order.pop();
                used[k] = false;
            }
        }
    }
    rec(model, n, i, &skew, &mut order, &mut used, &mut out);
    out.sort();
    out
}

/// Restriction of the tautological bundle `V_i` at `lam`: the weights
/// `χ q̄^{2(c - i)/n}` of all boxes with color `c ≡ i (mod n)`.
pub fn restrict_v(model: &Model, i: i64, lam: &RPartition) -> Vec<Q> {
    let n = model.n();
    lam.cells()
        .iter()
        .filter(|c| (c.color(model) - i).rem_euclid(n) == 0)
        .map(|c| c.at_label(model, i).value)
        .collect()
}

/// The class `U_i|_λ = Σ_{â=i} u_a^2 - (1 - q^2)(V_i - V_{i-1})` as a map
/// from monomial value to multiplicity (zero multiplicities removed).
pub fn universal_class(model: &Model, i: i64, lam: &RPartition) -> BTreeMap<QKey, i64> {
    let mut cls: BTreeMap<QKey, i64> = BTreeMap::new();
    let mut add = |v: Q, m: i64| {
        let e = cls.entry(QKey(v)).or_insert(0);
        *e += m;
    };
    for a in model.components(i) {
        let u = model.u_ext(a);
        add(&u * &u, 1);
    }
    let q2 = model.q() * model.q();
    for v in restrict_v(model, i, lam) {
        add(v.clone(), -1);
        add(v * &q2, 1);
    }
    for v in restrict_v(model, i - 1, lam) {
        add(v.clone(), 1);
        add(v * &q2, -1);
    }
    cls.retain(|_, m| *m != 0);
    cls
}

/// `det U_i|_λ` computed from the class.
pub fn det_universal(model: &Model, i: i64, lam: &RPartition) -> Q {
    universal_class(model, i, lam).iter().fold(Q::one(), |acc, (v, &m)| acc * pow(&v.0, m))
}

/// The chosen square root `q^{d_i - d_{i-1}} ∏_{â=i} u_a` of `det U_i|_λ`.
pub fn sqrt_det_universal(model: &Model, i: i64, lam: &RPartition) -> Q {
    let d = lam.degree(model);
    let e = d.at(i) as i64 - d.at(i - 1) as i64;
    model.components(i).iter().fold(pow(model.q(), e), |acc, &a| acc * model.u_ext(a))
}

/// Ordered wrapper so rationals can key a `BTreeMap`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QKey(pub Q);
