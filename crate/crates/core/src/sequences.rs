//! Admissible-sequence bases: the `𝓕_k` / `𝓕^h_k` functor bases, the
//! single odd generator bases, and the general multi-generator bases.
//!
//! Everything is enumerated from the last entry `i_k` toward `i_1`, since the
//! chain inequalities bound each earlier entry in terms of the later ones.
//! Candidate ranges only have to be supersets; every emitted sequence passes
//! an exact predicate that restates the conditions verbatim.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp_linalg::Prime;
use crate::series::{DegreeWindow, DimExpr, GradedDims};
use crate::words::{lyndon_words, word_degree, LyndonWord};

/// Strict (simplicial commutative) or spectral (E∞) partition Lie algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Delta,
    Einfty,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Delta => "delta",
            Variant::Einfty => "einfty",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(Variant::Delta),
            "einfty" => Ok(Variant::Einfty),
            _ => Err(Error::invalid(format!("unknown variant {s:?} (expected delta or einfty)"))),
        }
    }
}

/// One basis label `(i_1, …, i_k, e, w)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdmissibleSeq {
    pub i: Vec<i64>,
    pub e: u8,
    pub word: LyndonWord,
    pub variant: Variant,
    pub degree: i64,
    pub weight: Vec<u64>,
}

impl AdmissibleSeq {
    pub fn total_weight(&self) -> u64 {
        self.weight.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.i.len()
    }

    fn sort_key(&self) -> (u64, i64, &[u8], u8, &[i64]) {
        (self.total_weight(), self.degree, self.word.letters(), self.e, &self.i)
    }
}

impl Ord for AdmissibleSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key()).then_with(|| self.weight.cmp(&other.weight))
    }
}

impl PartialOrd for AdmissibleSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn pow(p: Prime, k: u32) -> i64 {
    (p.get() as i64).pow(k)
}

/// `|i| ≡ 0, 1 (mod 2(p−1))`.
fn congruent_abs(p: Prime, i: i64) -> bool {
    let r = i.abs() % (2 * (p.as_i64() - 1));
    r == 0 || r == 1
}

/// `i ≡ 0, 1 (mod 2(p−1))`, signed.
fn congruent_plus(p: Prime, i: i64) -> bool {
    let r = i.rem_euclid(2 * (p.as_i64() - 1));
    r == 0 || r == 1
}

/// `i ≡ 0, −1 (mod 2(p−1))`, signed.
fn congruent_minus(p: Prime, i: i64) -> bool {
    let m = 2 * (p.as_i64() - 1);
    let r = i.rem_euclid(m);
    r == 0 || r == m - 1
}

/// Suffix sums `S_j = v + i_{j+1} + … + i_k` (0-based: `s[j]` excludes `i[j]`).
fn suffix_sums(i: &[i64], v: i64) -> Vec<i64> {
    let mut s = vec![0; i.len()];
    let mut acc = v;
    for j in (0..i.len()).rev() {
        s[j] = acc;
        acc += i[j];
    }
    s
}

/// Excess of one entry against the accumulated degree after it.
fn excess_delta(p: Prime, i: i64, s: i64) -> bool {
    let b = (p.as_i64() - 1) * s;
    if p.get() == 2 {
        (1 < i && i <= b) || (0 >= i && i >= b)
    } else {
        (1 < i && i < b) || (0 >= i && i > b)
    }
}

fn excess_einfty(p: Prime, i: i64, s: i64) -> bool {
    let b = (p.as_i64() - 1) * s;
    if p.get() == 2 {
        i >= b
    } else {
        i > b
    }
}

/// Does `(i_1, …, i_k; v)` with `|v| = v` index a class of `𝓕_k` (delta) or `𝓕^h_k` (einfty)?
pub fn fk_admissible(i: &[i64], p: Prime, variant: Variant, v: i64) -> bool {
    let k = i.len();
    if k == 0 {
        return true;
    }
    let s = suffix_sums(i, v);
    match variant {
        Variant::Delta => {
            i.iter().all(|&x| congruent_abs(p, x))
                && (0..k - 1).all(|j| {
                    let q = p.as_i64() * i[j + 1];
                    (i[j] >= q && q > p.as_i64()) || (i[j] <= q && q <= 0)
                })
                && excess_delta(p, i[0], s[0])
        }
        Variant::Einfty => {
            i.iter().all(|&x| congruent_minus(p, x)) && (0..k - 1).all(|j| i[j] <= p.as_i64() * i[j + 1]) && excess_einfty(p, i[0], s[0])
        }
    }
}

/// Depth-first enumeration from `i_k` to `i_1`. `ranges(j, next, s)` gives
/// candidate intervals for 0-based position `j`, where `next` is `i_{j+1}`
/// (if any) and `s` the sum of `v` and the entries after `j`.
fn enumerate_chain(k: usize, v: i64, ranges: &dyn Fn(usize, Option<i64>, i64) -> Vec<(i64, i64)>, accept: &mut dyn FnMut(&[i64])) {
    fn rec(j: usize, v: i64, cur: &mut Vec<i64>, s: i64, ranges: &dyn Fn(usize, Option<i64>, i64) -> Vec<(i64, i64)>, accept: &mut dyn FnMut(&[i64])) {
        let next = cur.get(j + 1).copied();
        for (lo, hi) in ranges(j, next, s) {
            for x in lo..=hi {
                cur[j] = x;
                if j == 0 {
                    accept(cur);
                } else {
                    rec(j - 1, v, cur, s + x, ranges, accept);
                }
            }
        }
    }
    if k == 0 {
        accept(&[]);
        return;
    }
    let mut cur = vec![0; k];
    rec(k - 1, v, &mut cur, v, ranges, accept);
}

fn require_hi(variant: Variant, hi: Option<i64>, what: &str) -> Result<i64> {
    hi.ok_or_else(|| Error::WindowRequired(format!("{what} ({variant}) is infinite; pass a degree window")))
}

/// All `(i_1, …, i_k)` indexing classes of `𝓕_k(Σ^v)` or `𝓕^h_k(Σ^v)`.
/// For einfty only classes of degree `≤ hi` are produced; `hi` is then required.
pub fn fk_sequences(k: usize, p: Prime, variant: Variant, v: i64, hi: Option<i64>) -> Result<Vec<Vec<i64>>> {
    let pp = p.as_i64();
    let mut out = Vec::new();
    match variant {
        Variant::Delta => {
            // Positive branch: 1 < i_j ≤ (p−1)S_j; negative: (p−1)S_j ≤ i_j ≤ 0.
            let ranges = |j: usize, next: Option<i64>, s: i64| -> Vec<(i64, i64)> {
                let b = (pp - 1) * s;
                match next {
                    None if j + 1 == k => vec![(2, b), (b, 0)],
                    Some(n) if n > 1 => vec![((pp * n).max(2), b)],
                    Some(n) if n <= 0 => vec![(b, (pp * n).min(0))],
                    _ => vec![],
                }
            };
            enumerate_chain(k, v, &ranges, &mut |i| {
                if fk_admissible(i, p, variant, v) && hi.is_none_or(|h| v + i.iter().sum::<i64>() <= h) {
                    out.push(i.to_vec());
                }
            });
        }
        Variant::Einfty => {
            if k == 0 {
                if hi.is_none_or(|h| v <= h) {
                    out.push(vec![]);
                }
                return Ok(out);
            }
            let h = require_hi(variant, hi, "𝓕^h_k")?;
            // (p−1)S_j ≤ i_j, and S_{j−1} ≤ floor(hi / p^{j−1}) bounds i_j above.
            let ranges = |j: usize, next: Option<i64>, s: i64| -> Vec<(i64, i64)> {
                let lo = (pp - 1) * s;
                let mut up = h.div_euclid(pow(p, j as u32)) - s;
                if let Some(n) = next {
                    up = up.min(pp * n);
                }
                vec![(lo, up)]
            };
            enumerate_chain(k, v, &ranges, &mut |i| {
                if fk_admissible(i, p, variant, v) && v + i.iter().sum::<i64>() <= h {
                    out.push(i.to_vec());
                }
            });
        }
    }
    Ok(out)
}

/// Dimensions of `𝓕_k(Σ^v)` (delta) or `𝓕^h_k(Σ^v)` through degree `hi` (einfty).
pub fn fk_class_dims(k: u32, p: Prime, variant: Variant, v: i64, hi: Option<i64>) -> Result<GradedDims> {
    let mut g = GradedDims::zero();
    for i in fk_sequences(k as usize, p, variant, v, hi)? {
        g.add_at(v + i.iter().sum::<i64>(), 1);
    }
    Ok(g)
}

/// A class `(i_1, …, i_k; v)` of `𝓕_k(V)`; `v` is its degree and `index` its
/// position among the classes of `V` in that degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FkLabel {
    pub i: Vec<i64>,
    pub v_degree: i64,
    pub v_index: u64,
    pub degree: i64,
}

#[derive(Debug, Clone)]
pub struct FkResult {
    pub dims: GradedDims,
    pub labels: Option<Vec<FkLabel>>,
}

/// `𝓕_k(V)` or `𝓕^h_k(V)` where `V` has dimensions `v_basis`.
pub fn enum_fk(k: u32, p: Prime, variant: Variant, v_basis: &GradedDims, window: Option<DegreeWindow>, with_labels: bool) -> Result<FkResult> {
    if k == 0 {
        let dims = match window {
            Some(w) => v_basis.clip(w),
            None => v_basis.clone(),
        };
        let labels = with_labels.then(|| {
            dims.iter().flat_map(|(d, n)| (0..n).map(move |idx| FkLabel { i: vec![], v_degree: d, v_index: idx, degree: d })).collect()
        });
        return Ok(FkResult { dims, labels });
    }
    if variant == Variant::Einfty && window.is_none() && !v_basis.is_zero() {
        return Err(Error::WindowRequired("𝓕^h_k is infinite; pass a degree window".into()));
    }
    let dims = DimExpr::Fk(k, Box::new(DimExpr::Input(v_basis.clone()))).eval_in(p, variant, window)?;
    let labels = if with_labels {
        let mut out = Vec::new();
        let hi = window.map(|w| w.hi);
        for (d, n) in v_basis.iter() {
            for i in fk_sequences(k as usize, p, variant, d, hi)? {
                let degree = d + i.iter().sum::<i64>();
                if window.is_none_or(|w| w.contains(degree)) {
                    for idx in 0..n {
                        out.push(FkLabel { i: i.clone(), v_degree: d, v_index: idx, degree });
                    }
                }
            }
        }
        out.sort_by(|a, b| (a.degree, &a.i, a.v_degree, a.v_index).cmp(&(b.degree, &b.i, b.v_degree, b.v_index)));
        Some(out)
    } else {
        None
    };
    Ok(FkResult { dims, labels })
}

/// `𝓕_{k_1} ∘ … ∘ 𝓕_{k_r}(Σ^l F_p)` (innermost functor `𝓕_{k_r}`).
pub fn enum_fk_composition(ks: &[u32], p: Prime, variant: Variant, l: i64, window: Option<DegreeWindow>) -> Result<GradedDims> {
    if ks.contains(&0) {
        return Err(Error::invalid("composition parts must be positive"));
    }
    let mut e = DimExpr::Input(GradedDims::line(l));
    for &k in ks.iter().rev() {
        e = DimExpr::Fk(k, Box::new(e));
    }
    if variant == Variant::Einfty && window.is_none() && !ks.is_empty() {
        return Err(Error::WindowRequired("spectral composites are infinite; pass a degree window".into()));
    }
    e.eval_in(p, variant, window)
}

/// The last-entry condition of the basis theorems: `i_k` is bounded by `bound`.
/// Conditions (1)–(3) for delta, (1)'–(3)' for einfty.
pub fn theorem_admissible(i: &[i64], p: Prime, variant: Variant, bound: i64) -> bool {
    let k = i.len();
    if k == 0 {
        return true;
    }
    let pp = p.as_i64();
    match variant {
        Variant::Delta => {
            i.iter().all(|&x| congruent_abs(p, x))
                && (0..k - 1).all(|j| {
                    let q = pp * i[j + 1];
                    (q < i[j] && i[j] < -1) || (0 <= i[j] && i[j] < q)
                })
                && ((bound <= i[k - 1] && i[k - 1] < -1) || (0 <= i[k - 1] && i[k - 1] <= bound))
        }
        Variant::Einfty => i.iter().all(|&x| congruent_plus(p, x)) && (0..k - 1).all(|j| i[j] < pp * i[j + 1]) && i[k - 1] <= bound,
    }
}

/// Sequences of length `k` with last-entry bound `bound`, whose degree
/// `base + Σ i − k` lies in the window. Delta is finite without a window.
pub fn theorem_sequences(k: usize, p: Prime, variant: Variant, bound: i64, base: i64, window: Option<DegreeWindow>) -> Result<Vec<Vec<i64>>> {
    let pp = p.as_i64();
    let in_window = |i: &[i64]| window.is_none_or(|w| w.contains(base + i.iter().sum::<i64>() - k as i64));
    let mut out = Vec::new();
    if k == 0 {
        if in_window(&[]) {
            out.push(vec![]);
        }
        return Ok(out);
    }
    match variant {
        Variant::Delta => {
            let ranges = |_j: usize, next: Option<i64>, _s: i64| -> Vec<(i64, i64)> {
                match next {
                    None => vec![(bound, -2), (0, bound)],
                    Some(n) => vec![(pp * n + 1, -2), (0, pp * n - 1)],
                }
            };
            enumerate_chain(k, 0, &ranges, &mut |i| {
                if theorem_admissible(i, p, variant, bound) && in_window(i) {
                    out.push(i.to_vec());
                }
            });
        }
        Variant::Einfty => {
            let lo = window.ok_or_else(|| Error::WindowRequired("spectral bases are infinite; pass a degree window".into()))?.lo;
            // Walk each entry downward from its upper bound while the largest
            // reachable degree still meets the window.
            fn rec(j: usize, up: i64, s: i64, k: usize, pp: i64, lo: i64, base: i64, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
                let mut x = up;
                loop {
                    // best completion of positions j−1, …, 0 given i_j = x
                    let mut rest = 0i64;
                    let mut u = x;
                    for _ in 0..j {
                        u = pp.saturating_mul(u).saturating_sub(1);
                        rest = rest.saturating_add(u);
                    }
                    if base.saturating_add(s).saturating_add(x).saturating_add(rest) - (k as i64) < lo {
                        break;
                    }
                    cur[j] = x;
                    if j == 0 {
                        f(cur);
                    } else {
                        rec(j - 1, pp * x - 1, s + x, k, pp, lo, base, cur, f);
                    }
                    x -= 1;
                }
            }
            let mut cur = vec![0; k];
            rec(k - 1, bound, 0, k, pp, lo, base, &mut cur, &mut |i| {
                if theorem_admissible(i, p, variant, bound) && in_window(i) {
                    out.push(i.to_vec());
                }
            });
        }
    }
    Ok(out)
}

/// Largest `k` with `unit · p^k ≤ max_weight`, if any.
fn max_k(p: Prime, unit: u64, max_weight: u64) -> Option<u32> {
    if unit == 0 || unit > max_weight {
        return None;
    }
    let mut k = 0;
    while unit * (p.get() as u64).pow(k + 1) <= max_weight {
        k += 1;
    }
    Some(k)
}

/// Basis of the free algebra on one generator of degree `ℓ`, grouped by weight
/// `p^k` for `k ≤ max_k`. Requires `ℓ` odd when `p` is odd.
pub fn enum_odd(p: Prime, l: i64, variant: Variant, max_k: u32, window: Option<DegreeWindow>) -> Result<Vec<(u64, Vec<AdmissibleSeq>)>> {
    if p.get() != 2 && l.rem_euclid(2) == 0 {
        return Err(Error::invalid(format!("even generator degree {l} at odd p goes through the EHP assembly")));
    }
    if variant == Variant::Einfty && window.is_none() && max_k > 0 {
        return Err(Error::WindowRequired("spectral bases are infinite; pass a degree window".into()));
    }
    let word = LyndonWord::letter(1, 1);
    let bound = (p.as_i64() - 1) * l;
    let mut out = Vec::new();
    for k in 0..=max_k {
        let weight = (p.get() as u64).pow(k);
        let mut seqs: Vec<AdmissibleSeq> = theorem_sequences(k as usize, p, variant, bound, l, window)?
            .into_iter()
            .map(|i| {
                let degree = l + i.iter().sum::<i64>() - k as i64;
                AdmissibleSeq { i, e: 0, word: word.clone(), variant, degree, weight: vec![weight] }
            })
            .collect();
        seqs.sort();
        out.push((weight, seqs));
    }
    Ok(out)
}

/// The basis of the free algebra on generators of degrees `gens`, all classes
/// of total weight `≤ max_total_weight` inside the window, in canonical order.
pub fn enum_main(p: Prime, gens: &[i64], variant: Variant, max_total_weight: u64, window: Option<DegreeWindow>) -> Result<Vec<AdmissibleSeq>> {
    if gens.is_empty() {
        return Err(Error::invalid("at least one generator is required"));
    }
    if max_total_weight == 0 {
        return Err(Error::invalid("max_total_weight must be at least 1"));
    }
    let m = gens.len();
    let mut out = Vec::new();
    for_each_weight(m, max_total_weight, &mut |n| -> Result<()> {
        let len: u64 = n.iter().sum();
        for w in lyndon_words(n)? {
            let dw = word_degree(&w, gens)?;
            let eps = u8::from(p.get() != 2 && dw.rem_euclid(2) == 0);
            for e in 0..=eps {
                let unit = len * (1 + e as u64);
                let Some(kmax) = max_k(p, unit, max_total_weight) else { continue };
                let bound = (p.as_i64() - 1) * (1 + e as i64) * dw - eps as i64;
                let base = (1 + e as i64) * dw - e as i64;
                for k in 0..=kmax {
                    if variant == Variant::Einfty && window.is_none() && k > 0 {
                        return Err(Error::WindowRequired("spectral bases are infinite; pass a degree window".into()));
                    }
                    let scale = (p.get() as u64).pow(k) * (1 + e as u64);
                    let weight: Vec<u64> = n.iter().map(|&x| x * scale).collect();
                    for i in theorem_sequences(k as usize, p, variant, bound, base, window)? {
                        let degree = base + i.iter().sum::<i64>() - k as i64;
                        out.push(AdmissibleSeq { i, e, word: w.clone(), variant, degree, weight: weight.clone() });
                    }
                }
            }
        }
        Ok(())
    })?;
    out.sort();
    Ok(out)
}

/// Visit every nonzero multidegree in `ℕ^m` with total at most `max`.
pub(crate) fn for_each_weight(m: usize, max: u64, f: &mut dyn FnMut(&[u64]) -> Result<()>) -> Result<()> {
    fn rec(j: usize, left: u64, cur: &mut Vec<u64>, f: &mut dyn FnMut(&[u64]) -> Result<()>) -> Result<()> {
        if j == cur.len() {
            if cur.iter().any(|&x| x > 0) {
                f(cur)?;
            }
            return Ok(());
        }
        for x in 0..=left {
            cur[j] = x;
            rec(j + 1, left - x, cur, f)?;
        }
        cur[j] = 0;
        Ok(())
    }
    let mut cur = vec![0; m];
    rec(0, max, &mut cur, f)
}
