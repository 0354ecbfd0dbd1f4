//! Dimensions and bases of free (spectral) partition Lie algebras on
//! generators `Σ^{ℓ_1} F_p ⊕ … ⊕ Σ^{ℓ_m} F_p`.
//!
//! `dims` reads the basis theorem directly. `dims_via_hilton_milnor` rebuilds
//! the same table from one-generator pieces indexed by Lyndon words, where
//! even generators at odd p go through the EHP relations instead; agreement
//! of the two is a consistency check.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp_linalg::Prime;
use crate::guard::Guard;
use crate::sequences::{enum_main, enum_odd, for_each_weight, AdmissibleSeq, Variant};
use crate::series::{DegreeWindow, GradedDims, WeightedDims};
use crate::words::{lyndon_words, word_degree};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLieQuery {
    pub p: u64,
    pub gens: Vec<i64>,
    pub variant: Variant,
    pub max_total_weight: u64,
    pub window: DegreeWindow,
    #[serde(default)]
    pub basis: bool,
}

impl PLieQuery {
    pub fn validate(&self, guard: &Guard) -> Result<Prime> {
        let p = Prime::new(self.p)?;
        if self.gens.is_empty() {
            return Err(Error::invalid("at least one generator is required"));
        }
        if self.max_total_weight == 0 {
            return Err(Error::invalid("max_total_weight must be at least 1"));
        }
        Guard::check("basis enumeration weight", self.max_total_weight as usize, guard.max_weight as usize)?;
        Ok(p)
    }
}

#[derive(Debug, Clone)]
pub struct PLieResult {
    pub dims: WeightedDims,
    /// Present when the query asked for a basis; in canonical order.
    pub basis: Option<Vec<AdmissibleSeq>>,
}

/// The table of `dim π_t` per weight vector and degree in the window.
pub fn dims(q: &PLieQuery, guard: &Guard) -> Result<PLieResult> {
    let p = q.validate(guard)?;
    let seqs = enum_main(p, &q.gens, q.variant, q.max_total_weight, Some(q.window))?;
    let mut table = WeightedDims::new();
    for s in &seqs {
        table.add(&s.weight, s.degree, 1);
    }
    Ok(PLieResult { dims: table, basis: q.basis.then_some(seqs) })
}

fn pow(p: Prime, k: u32) -> u64 {
    (p.get() as u64).pow(k)
}

/// `Some(k)` when `w = p^k`.
fn p_exponent(w: u64, p: Prime) -> Option<u32> {
    let mut k = 0;
    let mut x = 1u64;
    while x < w {
        x *= p.get() as u64;
        k += 1;
    }
    (x == w).then_some(k)
}

/// Weight-`p^k` slice of the odd-generator basis (any generator at p = 2).
fn odd_slice(p: Prime, l: i64, variant: Variant, k: u32, window: DegreeWindow) -> Result<GradedDims> {
    let mut g = GradedDims::zero();
    let weight = pow(p, k);
    for (w, seqs) in enum_odd(p, l, variant, k, Some(window))? {
        if w == weight {
            for s in seqs {
                g.add_at(s.degree, 1);
            }
        }
    }
    Ok(g.clip(window))
}

/// Weight-`w` part of the free algebra on one generator in degree `l`,
/// assembled without the `e = 1` branch of the basis theorem.
pub fn single_generator_dims(p: Prime, l: i64, variant: Variant, weight: u64, window: DegreeWindow) -> Result<GradedDims> {
    if weight == 0 {
        return Err(Error::invalid("weight must be at least 1"));
    }
    if p.get() == 2 || l.rem_euclid(2) == 1 {
        return match p_exponent(weight, p) {
            Some(k) => odd_slice(p, l, variant, k, window),
            None => Ok(GradedDims::zero().clip(window)),
        };
    }
    // even generator at odd p: the EHP sequences split off
    if let Some(k) = p_exponent(weight, p) {
        let shifted = DegreeWindow::new(window.lo - 1, window.hi - 1)?;
        return Ok(odd_slice(p, l - 1, variant, k, shifted)?.shift(1).clip(window));
    }
    if weight.is_multiple_of(2) {
        if let Some(k) = p_exponent(weight / 2, p) {
            return odd_slice(p, 2 * l - 1, variant, k, window);
        }
    }
    Ok(GradedDims::zero().clip(window))
}

/// The same table as `dims`, assembled from
/// `⊕_{w ∈ B_m} Free(Σ^{deg w})`: the weight-`N` entry sums, over `d | gcd(N)`
/// and Lyndon words `w` of multidegree `N/d`, the weight-`d` part of the
/// one-generator algebra on a class of degree `deg w`.
pub fn dims_via_hilton_milnor(q: &PLieQuery, guard: &Guard) -> Result<WeightedDims> {
    let p = q.validate(guard)?;
    let mut weights: Vec<Vec<u64>> = Vec::new();
    for_each_weight(q.gens.len(), q.max_total_weight, &mut |n| {
        weights.push(n.to_vec());
        Ok(())
    })?;
    let pieces: Vec<(Vec<u64>, GradedDims)> = weights
        .into_par_iter()
        .map(|n| {
            let g = n.iter().copied().fold(0, gcd);
            let mut acc = GradedDims::zero();
            for d in (1..=g).filter(|d| g % d == 0) {
                let reduced: Vec<u64> = n.iter().map(|&x| x / d).collect();
                for w in lyndon_words(&reduced)? {
                    let deg = word_degree(&w, &q.gens)?;
                    acc = acc.direct_sum(&single_generator_dims(p, deg, q.variant, d, q.window)?);
                }
            }
            Ok((n, acc))
        })
        .collect::<Result<_>>()?;
    let mut out = WeightedDims::new();
    for (n, g) in pieces {
        for (d, c) in g.iter() {
            out.add(&n, d, c);
        }
    }
    Ok(out)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One degree-by-degree comparison in an EHP check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EhpViolation {
    pub weight: u64,
    pub degree: i64,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EhpReport {
    pub p: u64,
    pub l: i64,
    pub k: u32,
    pub variant: Variant,
    pub degrees_checked: usize,
    pub violations: Vec<EhpViolation>,
}

impl EhpReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, in every degree of the window, the two split EHP relations for an
/// even generator at odd p:
/// `dim_t Free[p^k](Σ^ℓ) = dim_{t−1} Free[p^k](Σ^{ℓ−1})` and
/// `dim_t Free[2p^k](Σ^ℓ) = dim_t Free[p^k](Σ^{2ℓ−1})`.
/// The left sides come from the basis theorem for the even generator itself.
pub fn ehp_relations(p: Prime, l: i64, k: u32, variant: Variant, window: DegreeWindow) -> Result<EhpReport> {
    if p.get() == 2 {
        return Err(Error::invalid("the EHP relations are only used at odd p"));
    }
    if l.rem_euclid(2) != 0 {
        return Err(Error::invalid("the EHP relations concern even generators"));
    }
    let wt = pow(p, k);
    let main = enum_main(p, &[l], variant, 2 * wt, Some(window))?;
    let mut slices: BTreeMap<u64, GradedDims> = BTreeMap::new();
    for s in &main {
        slices.entry(s.weight[0]).or_insert_with(GradedDims::zero).add_at(s.degree, 1);
    }
    let empty = GradedDims::zero();
    let shifted = DegreeWindow::new(window.lo - 1, window.hi - 1)?;
    let suspension = odd_slice(p, l - 1, variant, k, shifted)?.shift(1);
    let james = odd_slice(p, 2 * l - 1, variant, k, window)?;
    let mut violations = Vec::new();
    let mut checked = 0;
    for (weight, rhs) in [(wt, &suspension), (2 * wt, &james)] {
        let lhs = slices.get(&weight).unwrap_or(&empty);
        for t in window.lo..=window.hi {
            checked += 1;
            if lhs.get(t) != rhs.get(t) {
                violations.push(EhpViolation { weight, degree: t, lhs: lhs.get(t), rhs: rhs.get(t) });
            }
        }
    }
    Ok(EhpReport { p: p.get() as u64, l, k, variant, degrees_checked: checked, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64, gens: &[i64], variant: Variant, max: u64, lo: i64, hi: i64) -> PLieQuery {
        PLieQuery { p, gens: gens.to_vec(), variant, max_total_weight: max, window: DegreeWindow::new(lo, hi).unwrap(), basis: false }
    }

    fn pr(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn examples() {
        let g = Guard::default();
        let r = dims(&q(2, &[0], Variant::Delta, 4, -40, 10), &g).unwrap().dims;
        assert_eq!(r.slice(&[1]), GradedDims::line(0));
        assert_eq!(r.slice(&[2]), GradedDims::line(-1));
        assert!(r.slice(&[4]).is_zero());
        let r = dims(&q(2, &[-1], Variant::Einfty, 2, -6, 0), &g).unwrap().dims;
        assert_eq!(r.slice(&[2]), GradedDims::from_pairs(&[(-3, 1), (-4, 1), (-5, 1), (-6, 1)]));
        for l in [-3, 0, 2] {
            for variant in [Variant::Delta, Variant::Einfty] {
                assert_eq!(dims(&q(3, &[l], variant, 1, -20, 20), &g).unwrap().dims.slice(&[1]), GradedDims::line(l));
            }
        }
    }

    #[test]
    fn hilton_milnor_examples() {
        let g = Guard::default();
        let a = q(2, &[-1, -1], Variant::Delta, 2, -20, 5);
        let hm = dims_via_hilton_milnor(&a, &g).unwrap();
        assert_eq!(hm.slice(&[1, 1]), GradedDims::line(-3));
        assert_eq!(hm, dims(&a, &g).unwrap().dims);
        let b = q(2, &[0, 0], Variant::Delta, 4, -30, 5);
        assert_eq!(dims_via_hilton_milnor(&b, &g).unwrap(), dims(&b, &g).unwrap().dims);
        let c = q(3, &[2], Variant::Einfty, 9, -10, 40);
        assert_eq!(dims_via_hilton_milnor(&c, &g).unwrap(), dims(&c, &g).unwrap().dims);
    }

    #[test]
    fn ehp_examples() {
        let w = DegreeWindow::new(-30, 10).unwrap();
        for variant in [Variant::Delta, Variant::Einfty] {
            let r = ehp_relations(pr(3), -2, 1, variant, w).unwrap();
            assert!(r.holds(), "{r:?}");
        }
        let r = ehp_relations(pr(3), 0, 0, Variant::Delta, w).unwrap();
        assert!(r.holds());
        assert_eq!(single_generator_dims(pr(3), 0, Variant::Delta, 2, w).unwrap(), GradedDims::line(-1));
        assert!(ehp_relations(pr(2), 0, 1, Variant::Delta, w).is_err());
        assert!(ehp_relations(pr(3), -1, 1, Variant::Delta, w).is_err());
    }

    #[test]
    fn vanishing_off_p_power_weights() {
        let g = Guard::default();
        for (p, l) in [(2u64, 0i64), (2, -3), (3, -1), (3, 1)] {
            for variant in [Variant::Delta, Variant::Einfty] {
                let r = dims(&q(p, &[l], variant, 12, -40, 20), &g).unwrap().dims;
                for w in 1..=12u64 {
                    let allowed = p_exponent(w, pr(p)).is_some() || (w % 2 == 0 && p_exponent(w / 2, pr(p)).is_some());
                    if !allowed {
                        assert!(r.slice(&[w]).is_zero(), "p={p} l={l} w={w}");
                    }
                }
            }
        }
    }

    #[test]
    fn guard_rejects_large_weight() {
        let g = Guard { max_weight: 8, ..Guard::default() };
        assert!(matches!(dims(&q(2, &[0], Variant::Delta, 9, -5, 5), &g), Err(Error::Guard { .. })));
    }
}
