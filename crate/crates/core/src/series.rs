//! Graded dimension tables and the functors built from them: free
//! graded-commutative components `S_a`, and symmetric / extended powers.
//!
//! Spectral-variant tables are infinite upward in degree, so every table
//! carries its [`Support`]: where its entries are known to be exact.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp_linalg::Prime;
use crate::sequences::{self, Variant};

/// Inclusive range of homological degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeWindow {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("empty degree window {lo}:{hi}")));
        }
        Ok(DegreeWindow { lo, hi })
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    pub fn width(&self) -> i64 {
        self.hi - self.lo + 1
    }
}

impl fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

/// Where a table's entries are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// Every degree; finitely many nonzero entries.
    Finite,
    /// Every degree `≤ hi`; nothing is claimed above.
    Through(i64),
    /// Degrees inside the window; the table is zero outside it by convention.
    Window(DegreeWindow),
}

/// Degree → dimension. Zero entries are never stored.
///
/// Equality compares the tables only, not their supports.
#[derive(Clone, Default)]
pub struct GradedDims {
    dims: BTreeMap<i64, u64>,
    support: Option<Support>,
}

impl PartialEq for GradedDims {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims
    }
}
impl Eq for GradedDims {}

impl fmt::Debug for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.dims)?;
        match self.support() {
            Support::Finite => Ok(()),
            Support::Through(h) => write!(f, " (exact through {h})"),
            Support::Window(w) => write!(f, " (window {w})"),
        }
    }
}

impl GradedDims {
    pub fn zero() -> Self {
        GradedDims::default()
    }

    pub fn finite(mut dims: BTreeMap<i64, u64>) -> Self {
        dims.retain(|_, v| *v > 0);
        GradedDims { dims, support: None }
    }

    pub fn from_pairs(pairs: &[(i64, u64)]) -> Self {
        let mut g = GradedDims::zero();
        for &(d, n) in pairs {
            g.add_at(d, n);
        }
        g
    }

    /// One class in degree `d`.
    pub fn line(d: i64) -> Self {
        GradedDims::from_pairs(&[(d, 1)])
    }

    pub fn support(&self) -> Support {
        self.support.unwrap_or(Support::Finite)
    }

    pub fn with_support(mut self, s: Support) -> Self {
        self.support = Some(s);
        self
    }

    pub fn get(&self, d: i64) -> u64 {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn add_at(&mut self, d: i64, n: u64) {
        if n > 0 {
            *self.dims.entry(d).or_insert(0) += n;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.dims.iter().map(|(&d, &n)| (d, n))
    }

    pub fn as_map(&self) -> &BTreeMap<i64, u64> {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.iter().map(|(d, n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    pub fn shift(&self, k: i64) -> GradedDims {
        let support = self.support.map(|s| match s {
            Support::Finite => Support::Finite,
            Support::Through(h) => Support::Through(h + k),
            Support::Window(w) => Support::Window(DegreeWindow { lo: w.lo + k, hi: w.hi + k }),
        });
        GradedDims { dims: self.iter().map(|(d, n)| (d + k, n)).collect(), support }
    }

    /// Restrict to a window; the result claims exactness only there.
    pub fn clip(&self, w: DegreeWindow) -> GradedDims {
        GradedDims { dims: self.dims.range(w.lo..=w.hi).map(|(&d, &n)| (d, n)).collect(), support: Some(Support::Window(w)) }
    }

    /// Drop degrees above `hi`.
    pub fn clip_above(&self, hi: i64) -> GradedDims {
        GradedDims { dims: self.dims.range(..=hi).map(|(&d, &n)| (d, n)).collect(), support: Some(Support::Through(hi)) }
    }

    /// Degree up to which the table is exact (`None`: everywhere).
    pub fn exact_through(&self) -> Option<i64> {
        match self.support() {
            Support::Finite => None,
            Support::Through(h) => Some(h),
            Support::Window(w) => Some(w.hi),
        }
    }

    /// A lower bound on the degrees of the object the table describes.
    fn lower_bound(&self) -> Option<i64> {
        match self.support() {
            Support::Finite => self.min_degree(),
            Support::Through(h) => Some(self.min_degree().map_or(h + 1, |m| m.min(h + 1))),
            Support::Window(w) => Some(self.min_degree().map_or(w.lo, |m| m.min(w.lo))),
        }
    }

    pub fn direct_sum(&self, other: &GradedDims) -> GradedDims {
        let mut out = self.clone();
        for (d, n) in other.iter() {
            out.add_at(d, n);
        }
        out.support = Some(meet_support(self.support(), other.support()));
        out
    }

    /// Graded tensor product. Exactness: a finite table is exact everywhere;
    /// a table exact through `c` with lower bound `m` contaminates the product
    /// only from degree `c + 1 + (lower bound of the other factor)` on.
    pub fn tensor(&self, other: &GradedDims) -> GradedDims {
        let mut dims = BTreeMap::new();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                *dims.entry(a + b).or_insert(0) += x * y;
            }
        }
        let support = match (self.support(), other.support()) {
            (Support::Finite, Support::Finite) => Support::Finite,
            (Support::Window(u), Support::Window(v)) => Support::Window(DegreeWindow { lo: u.lo + v.lo, hi: u.hi + v.hi }),
            (Support::Window(u), Support::Finite) | (Support::Finite, Support::Window(u)) => {
                let f = if self.support() == Support::Finite { self } else { other };
                let (lo, hi) = (f.min_degree().unwrap_or(0), f.max_degree().unwrap_or(0));
                Support::Window(DegreeWindow { lo: u.lo + lo, hi: u.hi + hi })
            }
            _ => {
                let ceiling = |t: &GradedDims, o: &GradedDims| match (t.exact_through(), o.lower_bound()) {
                    (None, _) => i64::MAX,
                    (Some(c), Some(m)) => c + m,
                    (Some(_), None) => i64::MAX,
                };
                let c = ceiling(self, other).min(ceiling(other, self));
                if c == i64::MAX {
                    Support::Finite
                } else {
                    Support::Through(c)
                }
            }
        };
        let out = GradedDims::finite(dims).with_support(support);
        match support {
            Support::Through(c) => out.clip_above(c),
            _ => out,
        }
    }
}

fn meet_support(a: Support, b: Support) -> Support {
    match (a, b) {
        (Support::Finite, s) | (s, Support::Finite) => s,
        (Support::Through(x), Support::Through(y)) => Support::Through(x.min(y)),
        (Support::Window(u), Support::Window(v)) => Support::Window(DegreeWindow { lo: u.lo.max(v.lo), hi: u.hi.min(v.hi) }),
        (Support::Through(h), Support::Window(w)) | (Support::Window(w), Support::Through(h)) => Support::Window(DegreeWindow { lo: w.lo, hi: w.hi.min(h) }),
    }
}

/// (weight vector, degree) → dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightedDims {
    entries: BTreeMap<(Vec<u64>, i64), u64>,
}

impl WeightedDims {
    pub fn new() -> Self {
        WeightedDims::default()
    }

    pub fn add(&mut self, weight: &[u64], degree: i64, n: u64) {
        if n > 0 {
            *self.entries.entry((weight.to_vec(), degree)).or_insert(0) += n;
        }
    }

    pub fn get(&self, weight: &[u64], degree: i64) -> u64 {
        self.entries.get(&(weight.to_vec(), degree)).copied().unwrap_or(0)
    }

    /// All degrees of one weight.
    pub fn slice(&self, weight: &[u64]) -> GradedDims {
        let mut g = GradedDims::zero();
        for ((w, d), &n) in &self.entries {
            if w == weight {
                g.add_at(*d, n);
            }
        }
        g
    }

    /// Entries sorted by (total weight, degree, weight vector).
    pub fn entries(&self) -> Vec<(Vec<u64>, i64, u64)> {
        let mut v: Vec<_> = self.entries.iter().map(|((w, d), &n)| (w.clone(), *d, n)).collect();
        v.sort_by(|a, b| (a.0.iter().sum::<u64>(), a.1, &a.0).cmp(&(b.0.iter().sum::<u64>(), b.1, &b.0)));
        v
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Number of degree-`j` monomials on `c` generators of degree `d`.
fn monomials(p: Prime, d: i64, c: u64, j: u64) -> u64 {
    if p.get() != 2 && d.rem_euclid(2) == 0 {
        binomial(c + j - 1, j)
    } else {
        binomial(c, j)
    }
}

/// Dimensions of `S_a(V)`: the weight-`a` part of the free graded-commutative
/// algebra (odd p) or the free exterior algebra (p = 2).
pub fn free_comm_component(a: u64, v: &GradedDims, p: Prime) -> GradedDims {
    if a == 0 {
        return GradedDims::line(0);
    }
    // state: (size used, degree) → count
    let mut state: BTreeMap<(u64, i64), u64> = BTreeMap::new();
    state.insert((0, 0), 1);
    for (d, c) in v.iter() {
        let mut next: BTreeMap<(u64, i64), u64> = BTreeMap::new();
        for (&(s, deg), &n) in &state {
            for j in 0..=(a - s) {
                let m = monomials(p, d, c, j);
                if m == 0 {
                    break;
                }
                *next.entry((s + j, deg + j as i64 * d)).or_insert(0) += n * m;
            }
        }
        state = next;
    }
    let out: BTreeMap<i64, u64> = state.into_iter().filter(|((s, _), _)| *s == a).map(|((_, d), n)| (d, n)).fold(BTreeMap::new(), |mut acc, (d, n)| {
        *acc.entry(d).or_insert(0) += n;
        acc
    });
    let g = GradedDims::finite(out);
    match v.support() {
        Support::Finite => g,
        Support::Through(c) => {
            let m = v.lower_bound().unwrap_or(c + 1);
            g.clip_above(c + (a as i64 - 1) * m)
        }
        Support::Window(w) => g.with_support(Support::Window(DegreeWindow { lo: a as i64 * w.lo, hi: a as i64 * w.hi })),
    }
}

/// `P(n)`: sequences `(a_0, a_1, …)` with `Σ a_k p^k = n`, trailing zeros trimmed.
pub fn p_partitions(n: u64, p: Prime) -> Vec<Vec<u64>> {
    let p = p.get() as u64;
    let mut top = 0;
    while p.pow(top + 1) <= n {
        top += 1;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u64; top as usize + 1];
    fn rec(k: usize, rest: u64, p: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if k == 0 {
            cur[0] = rest;
            let mut v = cur.clone();
            while v.len() > 1 && *v.last().unwrap() == 0 {
                v.pop();
            }
            out.push(v);
            return;
        }
        let w = p.pow(k as u32);
        for a in (0..=rest / w).rev() {
            cur[k] = a;
            rec(k - 1, rest - a * w, p, cur, out);
        }
        cur[k] = 0;
    }
    if n == 0 {
        return vec![vec![0]];
    }
    rec(top as usize, n, p, &mut cur, &mut out);
    out.sort();
    out
}

/// A dimension computation built from `𝓕_k`, `S_a`, `⊗` and `⊕` applied to a
/// finite input. Evaluation propagates exactness ceilings so that spectral
/// (upward-infinite) pieces are enumerated only as far as needed.
#[derive(Debug, Clone)]
pub enum DimExpr {
    Input(GradedDims),
    Fk(u32, Box<DimExpr>),
    Sym(u64, Box<DimExpr>),
    Tensor(Vec<DimExpr>),
    Sum(Vec<DimExpr>),
}

impl DimExpr {
    fn lower_bound(&self, p: Prime, variant: Variant) -> Result<Option<i64>> {
        Ok(match self {
            DimExpr::Input(v) => v.min_degree(),
            DimExpr::Fk(0, x) => x.lower_bound(p, variant)?,
            DimExpr::Fk(k, x) => match variant {
                Variant::Einfty => x.lower_bound(p, variant)?.map(|m| m * (p.get() as i64).pow(*k)),
                Variant::Delta => self.eval(p, variant, None)?.min_degree(),
            },
            DimExpr::Sym(0, _) => Some(0),
            DimExpr::Sym(a, x) => x.lower_bound(p, variant)?.map(|m| m * *a as i64),
            DimExpr::Tensor(fs) => {
                let mut acc = 0;
                for f in fs {
                    match f.lower_bound(p, variant)? {
                        Some(m) => acc += m,
                        None => return Ok(None),
                    }
                }
                Some(acc)
            }
            DimExpr::Sum(fs) => {
                let mut best = None;
                for f in fs {
                    if let Some(m) = f.lower_bound(p, variant)? {
                        best = Some(best.map_or(m, |b: i64| b.min(m)));
                    }
                }
                best
            }
        })
    }

    /// Exact in every degree `≤ hi` (everywhere when `hi` is `None`).
    pub fn eval(&self, p: Prime, variant: Variant, hi: Option<i64>) -> Result<GradedDims> {
        let done = |g: GradedDims| match hi {
            Some(h) => g.clip_above(h),
            None => g.with_support(Support::Finite),
        };
        match self {
            DimExpr::Input(v) => Ok(done(v.clone())),
            DimExpr::Fk(0, x) => x.eval(p, variant, hi),
            DimExpr::Fk(k, x) => {
                let inner_hi = match variant {
                    Variant::Delta => None,
                    Variant::Einfty => Some(hi.ok_or_else(|| Error::WindowRequired(format!("𝓕^h_{k} is infinite upward")))?.div_euclid((p.get() as i64).pow(*k))),
                };
                let xs = x.eval(p, variant, inner_hi)?;
                let mut out = GradedDims::zero();
                for (d, n) in xs.iter() {
                    for (t, m) in sequences::fk_class_dims(*k, p, variant, d, hi)?.iter() {
                        out.add_at(t, n * m);
                    }
                }
                Ok(done(out))
            }
            DimExpr::Sym(0, _) => Ok(done(GradedDims::line(0))),
            DimExpr::Sym(a, x) => {
                let Some(m) = x.lower_bound(p, variant)? else { return Ok(done(GradedDims::zero())) };
                let need = hi.map(|h| h - (*a as i64 - 1) * m);
                let xs = x.eval(p, variant, need)?;
                Ok(done(free_comm_component(*a, &xs.with_support(Support::Finite), p)))
            }
            DimExpr::Tensor(fs) => {
                let mut lbs = Vec::with_capacity(fs.len());
                for f in fs {
                    match f.lower_bound(p, variant)? {
                        Some(m) => lbs.push(m),
                        None => return Ok(done(GradedDims::zero())),
                    }
                }
                let total: i64 = lbs.iter().sum();
                let mut acc = GradedDims::line(0);
                for (f, m) in fs.iter().zip(&lbs) {
                    let need = hi.map(|h| h - (total - m));
                    let piece = f.eval(p, variant, need)?.with_support(Support::Finite);
                    acc = acc.tensor(&piece);
                    if let Some(h) = hi {
                        acc = acc.clip_above(h).with_support(Support::Finite);
                    }
                }
                Ok(done(acc))
            }
            DimExpr::Sum(fs) => {
                let mut acc = GradedDims::zero();
                for f in fs {
                    acc = acc.direct_sum(&f.eval(p, variant, hi)?.with_support(Support::Finite));
                }
                Ok(done(acc))
            }
        }
    }

    /// Evaluate and restrict to a window; einfty pieces need the window.
    pub fn eval_in(&self, p: Prime, variant: Variant, window: Option<DegreeWindow>) -> Result<GradedDims> {
        match (variant, window) {
            (_, Some(w)) => Ok(self.eval(p, variant, Some(w.hi))?.clip(w)),
            (Variant::Delta, None) => self.eval(p, variant, None),
            (Variant::Einfty, None) => self.eval(p, variant, None),
        }
    }
}

/// The `P(n)` expression `⊕_{(a_k) ∈ P(n)} ⊗_k S_{a_k}(𝓕_k(V))`.
pub fn sym_power_expr(n: u64, v: &GradedDims, p: Prime) -> DimExpr {
    DimExpr::Sum(
        p_partitions(n, p)
            .into_iter()
            .map(|a| DimExpr::Tensor(a.iter().enumerate().map(|(k, &ak)| DimExpr::Sym(ak, Box::new(DimExpr::Fk(k as u32, Box::new(DimExpr::Input(v.clone())))))).collect()))
            .collect(),
    )
}

/// Homotopy dimensions of the n-th symmetric power (delta) or extended power
/// (einfty) of a module with homotopy `m_dims`.
pub fn sym_power_dims(n: u64, m_dims: &GradedDims, p: Prime, variant: Variant, window: Option<DegreeWindow>) -> Result<GradedDims> {
    if m_dims.support() != Support::Finite {
        return Err(Error::invalid("sym_power_dims needs a finite input table"));
    }
    sym_power_expr(n, m_dims, p).eval_in(p, variant, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn free_comm_examples() {
        assert!(free_comm_component(2, &GradedDims::line(3), p(2)).is_zero());
        assert_eq!(free_comm_component(2, &GradedDims::line(2), p(3)), GradedDims::from_pairs(&[(4, 1)]));
        let v = GradedDims::from_pairs(&[(1, 1), (2, 1)]);
        assert_eq!(free_comm_component(2, &v, p(3)), GradedDims::from_pairs(&[(3, 1), (4, 1)]));
        assert_eq!(free_comm_component(0, &v, p(3)), GradedDims::line(0));
    }

    #[test]
    fn p_partition_examples() {
        assert_eq!(p_partitions(2, p(2)), vec![vec![0, 1], vec![2]]);
        assert_eq!(p_partitions(4, p(3)).len(), 2);
        // brute force count: all (a_0..a_K) with the weighted sum n
        for pr in [2u64, 3, 5] {
            for n in 0..=50u64 {
                let mut count = 0;
                fn brute(k: u32, rest: u64, pr: u64, count: &mut usize) {
                    let w = pr.pow(k);
                    if w > rest {
                        *count += 1;
                        return;
                    }
                    for a in 0..=rest / w {
                        brute(k + 1, rest - a * w, pr, count);
                    }
                }
                // count sequences whose weighted sum is exactly n: the unconstrained a_0 absorbs the rest
                brute(1, n, pr, &mut count);
                let ps = p_partitions(n, p(pr));
                assert_eq!(ps.len(), count, "p={pr} n={n}");
                for a in ps {
                    assert_eq!(a.iter().enumerate().map(|(k, x)| x * pr.pow(k as u32)).sum::<u64>(), n);
                }
            }
        }
    }

    #[test]
    fn sym_power_examples() {
        let two = p(2);
        assert_eq!(sym_power_dims(2, &GradedDims::line(3), two, Variant::Delta, None).unwrap(), GradedDims::from_pairs(&[(5, 1), (6, 1)]));
        let v = GradedDims::from_pairs(&[(-2, 1), (1, 2)]);
        assert_eq!(sym_power_dims(1, &v, p(3), Variant::Delta, None).unwrap(), v);
        let w = DegreeWindow::new(0, 6).unwrap();
        let ext = sym_power_dims(2, &GradedDims::line(1), two, Variant::Einfty, Some(w)).unwrap();
        assert_eq!(ext, GradedDims::from_pairs(&[(2, 1), (3, 1), (4, 1), (5, 1), (6, 1)]));
        assert!(matches!(sym_power_dims(2, &GradedDims::line(1), two, Variant::Einfty, None), Err(Error::WindowRequired(_))));
    }

    #[test]
    fn window_growth_is_stable() {
        let v = GradedDims::from_pairs(&[(-2, 1), (-1, 1)]);
        for pr in [2, 3] {
            let small = sym_power_dims(3, &v, p(pr), Variant::Einfty, Some(DegreeWindow::new(-10, 0).unwrap())).unwrap();
            let big = sym_power_dims(3, &v, p(pr), Variant::Einfty, Some(DegreeWindow::new(-20, 10).unwrap())).unwrap();
            assert_eq!(small, big.clip(DegreeWindow::new(-10, 0).unwrap()));
        }
    }

    fn small_dims() -> impl Strategy<Value = GradedDims> {
        prop::collection::vec((-4i64..5, 0u64..3), 0..4).prop_map(|v| GradedDims::from_pairs(&v))
    }

    proptest! {
        #[test]
        fn binomial_expansion(v in small_dims(), w in small_dims(), a in 0u64..4, pr in prop::sample::select(vec![2u64, 3, 5])) {
            let pr = p(pr);
            let lhs = free_comm_component(a, &v.direct_sum(&w), pr);
            let mut rhs = GradedDims::zero();
            for a1 in 0..=a {
                rhs = rhs.direct_sum(&free_comm_component(a1, &v, pr).tensor(&free_comm_component(a - a1, &w, pr)));
            }
            prop_assert_eq!(lhs, rhs);
        }
    }
}
