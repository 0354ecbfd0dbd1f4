//! Set partitions, the partition complex |Π_n| and the pointed simplicial
//! Σ_n-set T(n) of chains from the discrete to the indiscrete partition.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fp_linalg::{FpCochainComplex, FpMatrix, Prime};
use crate::guard::Guard;
use crate::series::GradedDims;

/// Permutation of `{0..n−1}`: `g[i]` is the image of `i`.
pub type Perm = Vec<u8>;

pub mod perms {
    use super::Perm;

    pub fn identity(n: usize) -> Perm {
        (0..n as u8).collect()
    }

    /// `a ∘ b`.
    pub fn compose(a: &[u8], b: &[u8]) -> Perm {
        b.iter().map(|&x| a[x as usize]).collect()
    }

    pub fn inverse(a: &[u8]) -> Perm {
        let mut out = vec![0; a.len()];
        for (i, &x) in a.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        out
    }

    pub fn sign(a: &[u8]) -> i64 {
        let mut seen = vec![false; a.len()];
        let mut s = 1;
        for i in 0..a.len() {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = a[j] as usize;
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    /// All of Σ_n in lexicographic order (identity first).
    pub fn all(n: usize) -> Vec<Perm> {
        let mut cur = identity(n);
        let mut out = vec![cur.clone()];
        loop {
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(cur.clone());
        }
    }

    /// The transposition `(0 1)` and the cycle `(0 1 … n−1)`.
    pub fn generators(n: usize) -> Vec<Perm> {
        if n < 2 {
            return vec![];
        }
        let mut t = identity(n);
        t.swap(0, 1);
        let c: Perm = (0..n as u8).map(|i| (i + 1) % n as u8).collect();
        if n == 2 {
            vec![t]
        } else {
            vec![t, c]
        }
    }
}

/// A partition of `{1..n}` stored as a restricted growth string: element `i`
/// lies in block `labels[i]`, and blocks are numbered by their least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<u8>,
}

impl SetPartition {
    pub fn discrete(n: usize) -> Self {
        SetPartition { labels: (0..n as u8).collect() }
    }

    pub fn indiscrete(n: usize) -> Self {
        SetPartition { labels: vec![0; n] }
    }

    /// From any block assignment; relabels to canonical form.
    pub fn from_assignment(assign: &[usize]) -> Self {
        let mut map: HashMap<usize, u8> = HashMap::new();
        let labels = assign
            .iter()
            .map(|a| {
                let next = map.len() as u8;
                *map.entry(*a).or_insert(next)
            })
            .collect();
        SetPartition { labels }
    }

    /// From 1-based blocks that must cover `{1..n}` exactly.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut assign = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::invalid("empty block"));
            }
            for &x in block {
                if x == 0 || x > n || assign[x - 1] != usize::MAX {
                    return Err(Error::invalid(format!("blocks do not partition 1..={n}")));
                }
                assign[x - 1] = b;
            }
        }
        if assign.contains(&usize::MAX) {
            return Err(Error::invalid(format!("blocks do not cover 1..={n}")));
        }
        Ok(SetPartition::from_assignment(&assign))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// 1-based blocks, each ascending, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(i + 1);
        }
        out
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        let mut image = vec![u8::MAX; self.num_blocks()];
        self.labels.iter().zip(&other.labels).all(|(&a, &b)| {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
            }
            *slot == b
        })
    }

    pub fn strictly_refines(&self, other: &SetPartition) -> bool {
        self != other && self.refines(other)
    }

    /// Image under a permutation of the ground set.
    pub fn relabel(&self, g: &[u8]) -> SetPartition {
        let mut assign = vec![0usize; self.n()];
        for (i, &l) in self.labels.iter().enumerate() {
            assign[g[i] as usize] = l as usize;
        }
        SetPartition::from_assignment(&assign)
    }

    /// All partitions of `{1..n}`, in lexicographic order of restricted growth strings.
    pub fn all(n: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        fn rec(i: usize, max: u8, cur: &mut Vec<u8>, out: &mut Vec<SetPartition>) {
            if i == cur.len() {
                out.push(SetPartition { labels: cur.clone() });
                return;
            }
            for l in 0..=max {
                cur[i] = l;
                rec(i + 1, max.max(l + 1), cur, out);
            }
        }
        if n == 0 {
            return vec![SetPartition { labels: vec![] }];
        }
        let mut cur = vec![0; n];
        rec(1, 1, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks().iter().map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(if self.n() > 9 { "," } else { "" })).collect();
        f.write_str(&parts.join("|"))
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A strictly increasing chain of partitions of one ground set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionChain {
    n: usize,
    elements: Vec<SetPartition>,
}

impl PartitionChain {
    pub fn new(n: usize, elements: Vec<SetPartition>) -> Result<Self> {
        if elements.iter().any(|x| x.n() != n) {
            return Err(Error::invalid("chain elements live on different ground sets"));
        }
        if elements.windows(2).any(|w| !w[0].strictly_refines(&w[1])) {
            return Err(Error::invalid("chain is not strictly increasing under refinement"));
        }
        Ok(PartitionChain { n, elements })
    }

    /// `[0̂ < 1̂]` (a single element when n = 1).
    pub fn full(n: usize) -> Self {
        let mut elements = vec![SetPartition::discrete(n)];
        if n > 1 {
            elements.push(SetPartition::indiscrete(n));
        }
        PartitionChain { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[SetPartition] {
        &self.elements
    }

    pub fn spans_lattice(&self) -> bool {
        self.elements.first() == Some(&SetPartition::discrete(self.n)) && self.elements.last() == Some(&SetPartition::indiscrete(self.n))
    }
}

/// Proper partitions: all except `0̂` and `1̂`.
pub fn proper_partitions(n: usize) -> Result<Vec<SetPartition>> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let (lo, hi) = (SetPartition::discrete(n), SetPartition::indiscrete(n));
    Ok(SetPartition::all(n).into_iter().filter(|x| *x != lo && *x != hi).collect())
}

/// The partition lattice with its strict order precomputed.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub n: usize,
    pub elements: Vec<SetPartition>,
    index: HashMap<SetPartition, u16>,
    /// `above[a]`: elements strictly coarser than `a`.
    above: Vec<Vec<u16>>,
    pub bottom: u16,
    pub top: u16,
}

impl Lattice {
    pub fn new(n: usize) -> Self {
        let elements = SetPartition::all(n);
        let index = elements.iter().enumerate().map(|(i, x)| (x.clone(), i as u16)).collect::<HashMap<_, _>>();
        let above = elements.iter().map(|a| elements.iter().enumerate().filter(|(_, b)| a.strictly_refines(b)).map(|(j, _)| j as u16).collect()).collect();
        let bottom = index[&SetPartition::discrete(n)];
        let top = index[&SetPartition::indiscrete(n)];
        Lattice { n, elements, index, above, bottom, top }
    }

    pub fn index_of(&self, x: &SetPartition) -> u16 {
        self.index[x]
    }

    pub fn leq(&self, a: u16, b: u16) -> bool {
        a == b || self.above[a as usize].contains(&b)
    }

    /// Permutation of element indices induced by `g`.
    pub fn action(&self, g: &[u8]) -> Vec<u16> {
        self.elements.iter().map(|x| self.index[&x.relabel(g)]).collect()
    }

    /// Strictly increasing chains `a = c_0 < c_1 < … < c_k = b`.
    pub fn chains_between(&self, a: u16, b: u16) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        let mut cur = vec![a];
        fn rec(l: &Lattice, b: u16, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
            let last = *cur.last().unwrap();
            if last == b {
                out.push(cur.clone());
                return;
            }
            for &c in &l.above[last as usize] {
                if l.leq(c, b) {
                    cur.push(c);
                    rec(l, b, cur, out);
                    cur.pop();
                }
            }
        }
        rec(self, b, &mut cur, &mut out);
        out
    }
}

/// Reduced chain complex of the nerve of proper partitions, dualized to
/// cochains: degree `d` holds chains of `d + 1` proper partitions, and the
/// empty chain sits in degree −1.
fn nerve_cochains(l: &Lattice, p: Prime) -> Result<FpCochainComplex> {
    // Strict chains of proper partitions, grouped by length.
    let proper: Vec<u16> = (0..l.elements.len() as u16).filter(|&x| x != l.bottom && x != l.top).collect();
    let mut by_dim: Vec<Vec<Vec<u16>>> = vec![vec![vec![]]];
    fn rec(l: &Lattice, cur: &mut Vec<u16>, by_dim: &mut Vec<Vec<Vec<u16>>>) {
        let d = cur.len();
        if by_dim.len() <= d {
            by_dim.resize(d + 1, Vec::new());
        }
        by_dim[d].push(cur.clone());
        let last = *cur.last().unwrap();
        for &c in &l.above[last as usize] {
            if c != l.top {
                cur.push(c);
                rec(l, cur, by_dim);
                cur.pop();
            }
        }
    }
    for &x in &proper {
        rec(l, &mut vec![x], &mut by_dim);
    }
    for level in &mut by_dim {
        level.sort();
    }
    if by_dim.is_empty() {
        by_dim.push(vec![vec![]]);
    }
    let index: Vec<HashMap<&Vec<u16>, u32>> = by_dim.iter().map(|v| v.iter().enumerate().map(|(i, c)| (c, i as u32)).collect()).collect();
    // coboundary from (len d) to (len d+1): transpose of the face map
    let mut diffs = Vec::new();
    for d in 0..by_dim.len() - 1 {
        let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); by_dim[d].len()];
        for (j, c) in by_dim[d + 1].iter().enumerate() {
            for i in 0..c.len() {
                let mut f = c.clone();
                f.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                cols[index[d][&f] as usize].push((j as u32, sign));
            }
        }
        diffs.push(FpMatrix::from_columns(p, by_dim[d + 1].len(), cols)?);
    }
    FpCochainComplex::new(p, -1, by_dim.iter().map(Vec::len).collect(), diffs)
}

/// Reduced homology of |Π_n| over F_p (augmented: the empty chain is in degree −1).
pub fn pi_homology_dims(n: usize, p: Prime, guard: &Guard) -> Result<GradedDims> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    Guard::check("partition complex homology", n, guard.homology_n)?;
    // Homology and cohomology of a finite complex over a field have equal ranks.
    Ok(nerve_cochains(&Lattice::new(n), p)?.cohomology_dims())
}

/// The pointed simplicial Σ_n-set T(n): level `s` consists of weakly
/// increasing chains `0̂ = σ_0 ≤ … ≤ σ_s = 1̂`; all other chains are the basepoint.
#[derive(Debug, Clone)]
pub struct TComplex {
    pub lattice: Lattice,
    /// Nondegenerate simplices by dimension (strict chains from 0̂ to 1̂).
    nondegenerate: Vec<Vec<Vec<u16>>>,
}

impl TComplex {
    pub fn new(n: usize, guard: &Guard) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        Guard::check("T(n) complex", n, guard.homology_n)?;
        let lattice = Lattice::new(n);
        let mut nondegenerate: Vec<Vec<Vec<u16>>> = Vec::new();
        for c in lattice.chains_between(lattice.bottom, lattice.top) {
            let d = c.len() - 1;
            if nondegenerate.len() <= d {
                nondegenerate.resize(d + 1, Vec::new());
            }
            nondegenerate[d].push(c);
        }
        for level in &mut nondegenerate {
            level.sort();
        }
        Ok(TComplex { lattice, nondegenerate })
    }

    pub fn n(&self) -> usize {
        self.lattice.n
    }

    pub fn nondegenerate(&self, dim: usize) -> &[Vec<u16>] {
        self.nondegenerate.get(dim).map_or(&[], |v| v.as_slice())
    }

    pub fn top_dim(&self) -> usize {
        self.nondegenerate.len() - 1
    }

    /// All level-`s` simplices that are not the basepoint.
    pub fn level(&self, s: usize) -> Vec<Vec<u16>> {
        let l = &self.lattice;
        let mut out = Vec::new();
        let mut cur = vec![l.bottom];
        fn rec(l: &Lattice, s: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
            let last = *cur.last().unwrap();
            if cur.len() == s + 1 {
                if last == l.top {
                    out.push(cur.clone());
                }
                return;
            }
            let mut nexts = vec![last];
            nexts.extend(l.above[last as usize].iter().copied());
            for c in nexts {
                cur.push(c);
                rec(l, s, cur, out);
                cur.pop();
            }
        }
        rec(l, s, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Face `d_i`; `None` is the basepoint.
    pub fn face(&self, x: &[u16], i: usize) -> Option<Vec<u16>> {
        let mut f = x.to_vec();
        f.remove(i);
        (f.first() == Some(&self.lattice.bottom) && f.last() == Some(&self.lattice.top)).then_some(f)
    }

    /// Normalized cochains: degree `k` has the strict chains of length `k + 1`,
    /// with coboundary dual to the alternating sum of interior face deletions.
    pub fn normalized_cochains(&self, p: Prime) -> Result<FpCochainComplex> {
        let dims: Vec<usize> = self.nondegenerate.iter().map(Vec::len).collect();
        let index: Vec<HashMap<&Vec<u16>, u32>> = self.nondegenerate.iter().map(|v| v.iter().enumerate().map(|(i, c)| (c, i as u32)).collect()).collect();
        let mut diffs = Vec::new();
        for d in 0..dims.len().saturating_sub(1) {
            let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); dims[d]];
            for (j, c) in self.nondegenerate[d + 1].iter().enumerate() {
                for i in 1..c.len() - 1 {
                    let mut f = c.clone();
                    f.remove(i);
                    cols[index[d][&f] as usize].push((j as u32, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            diffs.push(FpMatrix::from_columns(p, dims[d + 1], cols)?);
        }
        FpCochainComplex::new(p, 0, dims, diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn proper_partition_counts() {
        assert!(proper_partitions(2).unwrap().is_empty());
        assert!(proper_partitions(1).unwrap().is_empty());
        let three: Vec<String> = proper_partitions(3).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(three.len(), 3);
        for s in ["12|3", "13|2", "1|23"] {
            assert!(three.contains(&s.to_string()), "{s}");
        }
        assert_eq!(proper_partitions(4).unwrap().len(), 13);
        assert!(proper_partitions(0).is_err());
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        for n in 1..8 {
            assert_eq!(SetPartition::all(n).len(), bell[n]);
        }
    }

    #[test]
    fn canonical_form() {
        let a = SetPartition::from_blocks(4, &[vec![3, 1], vec![4, 2]]).unwrap();
        let b = SetPartition::from_blocks(4, &[vec![2, 4], vec![1, 3]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "13|24");
        assert!(SetPartition::from_blocks(3, &[vec![1, 2]]).is_err());
        assert!(SetPartition::discrete(4).strictly_refines(&a));
        assert!(!a.refines(&SetPartition::from_blocks(4, &[vec![1, 2], vec![3, 4]]).unwrap()));
    }

    #[test]
    fn homology_examples() {
        let g = Guard::default();
        assert_eq!(pi_homology_dims(3, p(2), &g).unwrap(), GradedDims::from_pairs(&[(0, 2)]));
        assert_eq!(pi_homology_dims(4, p(3), &g).unwrap(), GradedDims::from_pairs(&[(1, 6)]));
        // empty nerve: augmented reduced homology in degree −1
        assert_eq!(pi_homology_dims(2, p(2), &g).unwrap(), GradedDims::from_pairs(&[(-1, 1)]));
        assert!(matches!(pi_homology_dims(8, p(2), &g), Err(Error::Guard { .. })));
    }

    #[test]
    fn t_complex_matches_shifted_homology() {
        let g = Guard::default();
        for n in 2..=5 {
            for pr in [2, 3, 5] {
                let t = TComplex::new(n, &g).unwrap().normalized_cochains(p(pr)).unwrap();
                assert_eq!(t.cohomology_dims(), pi_homology_dims(n, p(pr), &g).unwrap().shift(2), "n={n} p={pr}");
            }
        }
        let t3 = TComplex::new(3, &g).unwrap().normalized_cochains(p(2)).unwrap();
        assert_eq!(t3.dims(), &[0, 1, 3]);
    }

    #[test]
    fn group_action_on_lattice() {
        for n in 2..=5 {
            let l = Lattice::new(n);
            let id = l.action(&perms::identity(n));
            assert!(id.iter().enumerate().all(|(i, &j)| i as u16 == j));
            for a in perms::generators(n) {
                for b in perms::generators(n) {
                    let ab = l.action(&perms::compose(&a, &b));
                    let (la, lb) = (l.action(&a), l.action(&b));
                    let composed: Vec<u16> = lb.iter().map(|&x| la[x as usize]).collect();
                    assert_eq!(ab, composed);
                }
                // refinement is preserved
                let la = l.action(&a);
                for x in 0..l.elements.len() as u16 {
                    for y in 0..l.elements.len() as u16 {
                        assert_eq!(l.leq(x, y), l.leq(la[x as usize], la[y as usize]));
                    }
                }
            }
        }
    }

    #[test]
    fn nondegenerate_counts() {
        let t = TComplex::new(4, &Guard::default()).unwrap();
        for s in 0..=4 {
            let nondeg = t.level(s).into_iter().filter(|c| c.windows(2).all(|w| w[0] != w[1])).count();
            assert_eq!(nondeg, t.nondegenerate(s).len());
        }
        assert_eq!(t.nondegenerate(1).len(), 1);
    }

    #[test]
    fn perm_helpers() {
        assert_eq!(perms::all(4).len(), 24);
        assert_eq!(perms::all(3).iter().map(|g| perms::sign(g)).sum::<i64>(), 0);
        let g = vec![1, 2, 0];
        assert_eq!(perms::compose(&g, &perms::inverse(&g)), perms::identity(3));
    }
}
