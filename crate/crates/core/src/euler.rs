//! Euler characteristics over pure enhancements, and the sequence matching
//! that evaluates them.
//!
//! For a composition `(k_1, …, k_r)` of `k`, the pure summand contributes
//! `(−1)^{r−1} dim 𝓕_{k_1}⋯𝓕_{k_r}(Σ^l F_p)`. A sequence lies in every summand
//! whose composition is refined by the positions where its chain condition
//! fails; these contributions cancel binomially unless the chain condition
//! fails at every position.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fp_linalg::Prime;
use crate::sequences::{enum_fk_composition, Variant};
use crate::series::{binomial, DegreeWindow};

/// Signed dimension per degree.
pub type SignedDims = BTreeMap<i64, i64>;

/// Compositions of `k` into positive parts, in colexicographic order.
pub fn compositions(k: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::with_capacity(1 << (k - 1));
    for mask in 0u32..(1 << (k - 1)) {
        // bit j set: a part ends after position j
        let mut parts = Vec::new();
        let mut run = 1;
        for j in 0..k - 1 {
            if mask >> j & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        out.push(parts);
    }
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    Ok(())
}

fn require_window(variant: Variant, window: Option<DegreeWindow>) -> Result<()> {
    if variant == Variant::Einfty && window.is_none() {
        return Err(Error::WindowRequired("the spectral Euler characteristic is infinite; pass a degree window".into()));
    }
    Ok(())
}

/// `Σ_{(k_1..k_r)} (−1)^{r−1} dim_t 𝓕_{k_1}⋯𝓕_{k_r}(Σ^l F_p)`, zeros dropped.
pub fn bredon_euler(k: u32, l: i64, p: Prime, variant: Variant, window: Option<DegreeWindow>) -> Result<SignedDims> {
    check_k(k)?;
    require_window(variant, window)?;
    let pieces: Vec<(i64, crate::series::GradedDims)> = compositions(k)
        .into_par_iter()
        .map(|ks| {
            let sign = if ks.len() % 2 == 1 { 1 } else { -1 };
            enum_fk_composition(&ks, p, variant, l, window).map(|g| (sign, g))
        })
        .collect::<Result<_>>()?;
    let mut out = SignedDims::new();
    for (sign, g) in pieces {
        for (d, n) in g.iter() {
            *out.entry(d).or_insert(0) += sign * n as i64;
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

/// Sequences of length `k` in `𝓕_1^{∘k}(Σ^l F_p)` whose chain condition fails
/// at every position, counted by degree.
pub fn matched_count(k: u32, l: i64, p: Prime, variant: Variant, window: Option<DegreeWindow>) -> Result<BTreeMap<i64, u64>> {
    check_k(k)?;
    require_window(variant, window)?;
    let pp = p.as_i64();
    let odd = p.get() != 2;
    let mut out = BTreeMap::new();
    let k = k as usize;
    // j runs from the last entry down; s = l + entries after j
    let mut cur = vec![0i64; k];
    let hi = window.map(|w| w.hi);
    fn rec(j: usize, s: i64, cur: &mut Vec<i64>, k: usize, pp: i64, odd: bool, variant: Variant, p: Prime, hi: Option<i64>, out: &mut BTreeMap<i64, u64>) {
        let next = (j + 1 < k).then(|| cur[j + 1]);
        let b = (pp - 1) * s;
        let ranges: Vec<(i64, i64)> = match variant {
            Variant::Delta => {
                let (pos_hi, neg_lo) = if odd { (b - 1, b + 1) } else { (b, b) };
                let mut r = Vec::new();
                // 1 < i_j < p·i_{j+1}, or 0 ≥ i_j > p·i_{j+1}
                match next {
                    None => {
                        r.push((2, pos_hi));
                        r.push((neg_lo, 0));
                    }
                    Some(n) => {
                        r.push((2, pos_hi.min(pp * n - 1)));
                        r.push((neg_lo.max(pp * n + 1), 0));
                    }
                }
                r
            }
            Variant::Einfty => {
                let lo = if odd { b + 1 } else { b };
                let lo = next.map_or(lo, |n| lo.max(pp * n + 1));
                let up = hi.unwrap().div_euclid(pp.pow(j as u32)) - s;
                vec![(lo, up)]
            }
        };
        for (a, z) in ranges {
            for x in a..=z {
                let ok = match variant {
                    Variant::Delta => {
                        let r = x.abs() % (2 * (pp - 1));
                        r == 0 || r == 1
                    }
                    Variant::Einfty => {
                        let m = 2 * (pp - 1);
                        let r = x.rem_euclid(m);
                        r == 0 || r == m - 1
                    }
                };
                if !ok {
                    continue;
                }
                cur[j] = x;
                if j == 0 {
                    let d = s + x;
                    if hi.is_none_or(|h| d <= h) {
                        *out.entry(d).or_insert(0) += 1;
                    }
                } else {
                    rec(j - 1, s + x, cur, k, pp, odd, variant, p, hi, out);
                }
            }
        }
    }
    rec(k - 1, l, &mut cur, k, pp, odd, variant, p, hi, &mut out);
    if let Some(w) = window {
        out.retain(|d, _| w.contains(*d));
    }
    Ok(out)
}

/// `Σ_{s=r}^{k} (−1)^{s−1} C(k−r, s−r)`.
pub fn cancellation_sum(k: u64, r: u64) -> i64 {
    (r..=k).map(|s| if s % 2 == 1 { 1 } else { -1 } * binomial(k - r, s - r) as i64).sum()
}

/// First degree where `bredon_euler = (−1)^{k−1} matched_count` fails, if any.
pub fn matching_discrepancy(k: u32, l: i64, p: Prime, variant: Variant, window: Option<DegreeWindow>) -> Result<Option<(i64, i64, i64)>> {
    let e = bredon_euler(k, l, p, variant, window)?;
    let m = matched_count(k, l, p, variant, window)?;
    let sign = if k % 2 == 1 { 1 } else { -1 };
    let degrees: std::collections::BTreeSet<i64> = e.keys().chain(m.keys()).copied().collect();
    for d in degrees {
        let lhs = e.get(&d).copied().unwrap_or(0);
        let rhs = sign * m.get(&d).copied().unwrap_or(0) as i64;
        if lhs != rhs {
            return Ok(Some((d, lhs, rhs)));
        }
    }
    Ok(None)
}
