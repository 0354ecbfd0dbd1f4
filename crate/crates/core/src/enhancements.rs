//! p-enhancements of chains of partitions and the dimension functors they index.
//!
//! A chain of partitions of a finite set, up to relabeling, is the same thing
//! as a leveled rooted tree: the root is the single class at the top, and the
//! children of a class are the classes one level down that it contains. Sorting
//! children recursively gives a canonical signature, so isomorphism classes of
//! enhancements are compared without any search over the symmetric group.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fp_linalg::Prime;
use crate::partition_complex::{PartitionChain, SetPartition};
use crate::sequences::Variant;
use crate::series::{DegreeWindow, DimExpr, GradedDims};

/// Canonical leveled tree. Leaves are the singletons of `0̂`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(pub Vec<Signature>);

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("*");
        }
        f.write_str("(")?;
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Signature of every class of `levels[r]`, for the chain `levels[0] ≤ … ≤ levels[top]`.
fn class_signatures(levels: &[SetPartition]) -> Vec<Vec<Signature>> {
    let mut out: Vec<Vec<Signature>> = Vec::with_capacity(levels.len());
    let n = levels[0].n();
    out.push(vec![Signature(Vec::new()); levels[0].num_blocks()]);
    for r in 1..levels.len() {
        let mut children: Vec<Vec<Signature>> = vec![Vec::new(); levels[r].num_blocks()];
        // each class one level down sits inside the class of any of its elements
        let mut seen = vec![false; levels[r - 1].num_blocks()];
        for x in 0..n {
            let c = levels[r - 1].labels()[x] as usize;
            if !seen[c] {
                seen[c] = true;
                children[levels[r].labels()[x] as usize].push(out[r - 1][c].clone());
            }
        }
        out.push(
            children
                .into_iter()
                .map(|mut v| {
                    v.sort();
                    Signature(v)
                })
                .collect(),
        );
    }
    out
}

/// A p-enhancement `Θ = [0̂ ≤ e_1 ≤ x_1 ≤ … ≤ x_i ≤ e_{i+1} ≤ 1̂]` of a chain
/// `σ = [0̂ < x_1 < … < x_i < 1̂]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnhancedChain {
    /// `[0̂, e_1, x_1, …, x_i, e_{i+1}, 1̂]`.
    levels: Vec<SetPartition>,
    signature: Signature,
    pure: bool,
}

impl EnhancedChain {
    pub fn levels(&self) -> &[SetPartition] {
        &self.levels
    }

    /// The refining stages `e_1, …, e_{i+1}`.
    pub fn refinements(&self) -> Vec<&SetPartition> {
        self.levels.iter().skip(1).step_by(2).collect()
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// No stage is added: `e_j = x_j` for every `j`.
    pub fn is_pure(&self) -> bool {
        self.pure
    }

    /// Recompute the signature from the stored levels.
    pub fn canonical(&self) -> Signature {
        class_signatures(&self.levels).last().unwrap()[0].clone()
    }

    /// `[Θ]` (delta) or `[Θ]^h` (einfty) as a dimension expression in `v`.
    pub fn expr(&self, v: &GradedDims, p: Prime) -> DimExpr {
        build_expr(&self.signature, v, p)
    }
}

/// `[node](V)` for a node at an `x`-level: group its children (classes of the
/// `e`-level below) by type; a child of type `t` holds `p^{b_t}` copies of one
/// grandchild signature; the result is `⊗_t S_{a_t}(𝓕_{b_t}([grandchild](V)))`.
fn build_expr(node: &Signature, v: &GradedDims, p: Prime) -> DimExpr {
    if node.0.is_empty() {
        return DimExpr::Input(v.clone());
    }
    let mut types: BTreeMap<&Signature, u64> = BTreeMap::new();
    for c in &node.0 {
        *types.entry(c).or_insert(0) += 1;
    }
    DimExpr::Tensor(
        types
            .into_iter()
            .map(|(child, a)| {
                let count = child.0.len() as u64;
                let b = p_log(count, p).expect("enhancement class count is a power of p");
                DimExpr::Sym(a, Box::new(DimExpr::Fk(b, Box::new(build_expr(&child.0[0], v, p)))))
            })
            .collect(),
    )
}

fn p_log(mut n: u64, p: Prime) -> Option<u32> {
    let p = p.get() as u64;
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

/// One representative per isomorphism class of p-enhancements of `σ`, sorted by signature.
pub fn enum_p_enhancements(sigma: &PartitionChain, p: Prime) -> Result<Vec<EnhancedChain>> {
    let n = sigma.n();
    if !sigma.spans_lattice() {
        return Err(Error::invalid("the chain must start at 0̂ and end at 1̂"));
    }
    let mut xs: Vec<SetPartition> = sigma.elements().to_vec();
    if xs.len() == 1 {
        // n = 1: 0̂ = 1̂
        xs.push(xs[0].clone());
    }
    let all = SetPartition::all(n);
    let choices: Vec<Vec<&SetPartition>> = xs.windows(2).map(|w| all.iter().filter(|e| w[0].refines(e) && e.refines(&w[1])).collect()).collect();
    let mut found: BTreeMap<Signature, EnhancedChain> = BTreeMap::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let mut levels = vec![xs[0].clone()];
        for (a, &c) in pick.iter().enumerate() {
            levels.push(choices[a][c].clone());
            levels.push(xs[a + 1].clone());
        }
        if let Some(sig) = check_enhancement(&levels, p) {
            let pure = (0..choices.len()).all(|a| levels[2 * a + 1] == levels[2 * a + 2]);
            found.entry(sig.clone()).or_insert(EnhancedChain { levels, signature: sig, pure });
        }
        // odometer
        let mut a = 0;
        loop {
            if a == pick.len() {
                return Ok(found.into_values().collect());
            }
            pick[a] += 1;
            if pick[a] < choices[a].len() {
                break;
            }
            pick[a] = 0;
            a += 1;
        }
    }
}

/// Both enhancement conditions; returns the signature of the top class.
fn check_enhancement(levels: &[SetPartition], p: Prime) -> Option<Signature> {
    let sigs = class_signatures(levels);
    // e-levels sit at odd positions; their classes' children are x-classes
    for r in (1..levels.len()).step_by(2) {
        for s in &sigs[r] {
            p_log(s.0.len() as u64, p)?;
            if s.0.windows(2).any(|w| w[0] != w[1]) {
                return None;
            }
        }
    }
    Some(sigs.last().unwrap()[0].clone())
}

/// Dimensions of `[Θ](V)` or `[Θ]^h(V)`.
pub fn theta_dims(theta: &EnhancedChain, v: &GradedDims, p: Prime, variant: Variant, window: Option<DegreeWindow>) -> Result<GradedDims> {
    theta.expr(v, p).eval_in(p, variant, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition_complex::perms;
    use crate::series::sym_power_dims;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn full_chain_examples() {
        let e = enum_p_enhancements(&PartitionChain::full(2), p(2)).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(enum_p_enhancements(&PartitionChain::full(3), p(2)).unwrap().len(), 2);
        assert_eq!(enum_p_enhancements(&PartitionChain::full(1), p(3)).unwrap().len(), 1);
        assert_eq!(enum_p_enhancements(&PartitionChain::full(4), p(2)).unwrap().len(), 4);
        let v = GradedDims::line(3);
        let dims: Vec<GradedDims> = e.iter().map(|t| theta_dims(t, &v, p(2), Variant::Delta, None).unwrap()).collect();
        let singletons = e.iter().position(|t| t.refinements()[0] == &SetPartition::discrete(2)).unwrap();
        assert!(dims[singletons].is_zero());
        assert_eq!(dims[1 - singletons], GradedDims::from_pairs(&[(5, 1), (6, 1)]));
        assert!(e[1 - singletons].is_pure());
        assert!(!e[singletons].is_pure());
    }

    #[test]
    fn stabilizer_sum_matches_power_formula() {
        for pr in [2, 3] {
            for n in 1..=5 {
                let v = GradedDims::from_pairs(&[(2, 1), (3, 1)]);
                let w = DegreeWindow::new(0, 30).unwrap();
                for variant in [Variant::Delta, Variant::Einfty] {
                    let mut total = GradedDims::zero();
                    for t in enum_p_enhancements(&PartitionChain::full(n), p(pr)).unwrap() {
                        total = total.direct_sum(&theta_dims(&t, &v, p(pr), variant, Some(w)).unwrap());
                    }
                    assert_eq!(total, sym_power_dims(n as u64, &v, p(pr), variant, Some(w)).unwrap(), "p={pr} n={n} {variant}");
                }
            }
        }
    }

    #[test]
    fn canonical_and_relabeling_invariant() {
        let n = 4;
        let x = SetPartition::from_blocks(n, &[vec![1, 2], vec![3], vec![4]]).unwrap();
        let sigma = PartitionChain::new(n, vec![SetPartition::discrete(n), x.clone(), SetPartition::indiscrete(n)]).unwrap();
        let base = enum_p_enhancements(&sigma, p(2)).unwrap();
        for t in &base {
            assert_eq!(&t.canonical(), t.signature());
        }
        for g in perms::all(n) {
            let moved = PartitionChain::new(n, sigma.elements().iter().map(|y| y.relabel(&g)).collect()).unwrap();
            let e = enum_p_enhancements(&moved, p(2)).unwrap();
            assert_eq!(e.len(), base.len());
            assert!(e.iter().zip(&base).all(|(a, b)| a.signature() == b.signature()));
        }
    }

    #[test]
    fn signatures_separate_orbits() {
        // brute force: two enhancements of [0̂ < 1̂] share a signature iff some
        // relabeling carries one to the other
        let n = 4;
        let all = SetPartition::all(n);
        let group = perms::all(n);
        for a in &all {
            for b in &all {
                let la = [SetPartition::discrete(n), a.clone(), SetPartition::indiscrete(n)];
                let lb = [SetPartition::discrete(n), b.clone(), SetPartition::indiscrete(n)];
                let same_sig = class_signatures(&la).last() == class_signatures(&lb).last();
                let same_orbit = group.iter().any(|g| &a.relabel(g) == b);
                assert_eq!(same_sig, same_orbit, "{a} {b}");
            }
        }
    }

    #[test]
    fn malformed_chain_rejected() {
        let n = 3;
        let x = SetPartition::from_blocks(n, &[vec![1, 2], vec![3]]).unwrap();
        let sigma = PartitionChain::new(n, vec![x, SetPartition::indiscrete(n)]).unwrap();
        assert!(enum_p_enhancements(&sigma, p(2)).is_err());
    }
}
