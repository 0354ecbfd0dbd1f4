//! Free resolutions of F_p over F_p[Σ_n] and the truncated Hom complex
//! computing homotopy fixed points of a bounded chain complex.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fp_linalg::{sparse, FpCochainComplex, FpMatrix, Prime, SpanBuilder, SparseVec};
use crate::partition_complex::perms;

/// The symmetric group with its multiplication table.
#[derive(Debug, Clone)]
pub struct SymmetricGroup {
    pub n: usize,
    pub elements: Vec<Vec<u8>>,
    /// `mul[a][b]` is the index of `a∘b`.
    pub mul: Vec<Vec<usize>>,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Self {
        let elements = perms::all(n);
        let index: BTreeMap<&Vec<u8>, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mul = elements.iter().map(|a| elements.iter().map(|b| index[&perms::compose(a, b)]).collect()).collect();
        SymmetricGroup { n, elements, mul }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn sign(&self, g: usize) -> i64 {
        perms::sign(&self.elements[g])
    }
}

/// `P_L → … → P_0 → F_p` with `P_i` free of rank `ranks[i]`.
/// An element of `P_i` is a vector indexed by `(generator k, group element h) ↦ k·|G| + h`.
#[derive(Debug, Clone)]
pub struct GroupAlgebraResolution {
    pub p: Prime,
    pub group: SymmetricGroup,
    pub ranks: Vec<usize>,
    /// `boundaries[i]`: images in `P_i` of the generators of `P_{i+1}`.
    pub boundaries: Vec<Vec<SparseVec>>,
}

impl GroupAlgebraResolution {
    /// Resolution through `P_len`, built from iterated kernels. Generators are
    /// chosen from a complement of `I·K` (the augmentation ideal times the kernel)
    /// first, then greedily until the kernel is generated.
    pub fn new(p: Prime, n: usize, len: usize) -> Result<Self> {
        let group = SymmetricGroup::new(n);
        let order = group.order();
        let mut ranks = vec![1usize];
        let mut boundaries: Vec<Vec<SparseVec>> = Vec::new();
        // ε : P_0 → F_p sends every group element to 1
        let mut current = FpMatrix::from_columns(p, 1, (0..order).map(|_| vec![(0u32, 1i64)]).collect())?;
        for _ in 0..len {
            let dim = current.cols();
            let kernel = current.kernel();
            let kvecs: Vec<SparseVec> = (0..kernel.cols()).map(|c| kernel.column(c).to_vec()).collect();
            // I·K, spanned by (g − 1)v
            let mut ik = SpanBuilder::new(p, dim);
            for v in &kvecs {
                for g in 0..order {
                    let gv = act(p, &group, g, v);
                    ik.insert(sub(p, &gv, v));
                }
            }
            let mut module = SpanBuilder::new(p, dim);
            let mut gens: Vec<SparseVec> = Vec::new();
            let add_gen = |v: &SparseVec, module: &mut SpanBuilder, gens: &mut Vec<SparseVec>| {
                if module.contains(v.clone()) {
                    return;
                }
                for g in 0..order {
                    module.insert(act(p, &group, g, v));
                }
                gens.push(v.clone());
            };
            for v in &kvecs {
                if ik.insert(v.clone()) {
                    add_gen(v, &mut module, &mut gens);
                }
            }
            for v in &kvecs {
                add_gen(v, &mut module, &mut gens);
            }
            debug_assert_eq!(module.rank(), kvecs.len());
            let next = gens.len();
            let cols: Vec<Vec<(u32, i64)>> = (0..next * order)
                .map(|c| act(p, &group, c % order, &gens[c / order]).into_iter().map(|(r, v)| (r, v as i64)).collect())
                .collect();
            current = FpMatrix::from_columns(p, dim, cols)?;
            boundaries.push(gens);
            ranks.push(next);
        }
        Ok(GroupAlgebraResolution { p, group, ranks, boundaries })
    }

    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    /// The F_p-matrix of `∂ : P_{i+1} → P_i`.
    pub fn boundary_matrix(&self, i: usize) -> FpMatrix {
        let order = self.group.order();
        let gens = &self.boundaries[i];
        let data = (0..gens.len() * order).map(|c| act(self.p, &self.group, c % order, &gens[c / order])).collect();
        FpMatrix::from_sparse_columns(self.p, self.ranks[i] * order, data)
    }

    /// Checks `∂∂ = 0`, `ε∂ = 0` and exactness at every interior spot.
    pub fn verify_exact(&self) -> Result<()> {
        let order = self.group.order();
        let eps = FpMatrix::from_columns(self.p, 1, (0..order).map(|_| vec![(0u32, 1i64)]).collect())?;
        let mut prev = eps;
        for i in 0..self.len() {
            let d = self.boundary_matrix(i);
            let comp = prev.mul(&d)?;
            let kernel_dim = prev.cols() - prev.rank();
            if !comp.is_zero() || d.rank() != kernel_dim {
                return Err(Error::invalid(format!("resolution is not exact at P_{i}")));
            }
            prev = d;
        }
        Ok(())
    }
}

/// Left multiplication by the `g`-th group element on `P_i`.
fn act(p: Prime, group: &SymmetricGroup, g: usize, v: &[(u32, u32)]) -> SparseVec {
    let order = group.order() as u32;
    sparse(p, v.iter().map(|&(r, c)| ((r / order) * order + group.mul[g][(r % order) as usize] as u32, c as i64)).collect())
}

fn sub(p: Prime, a: &SparseVec, b: &SparseVec) -> SparseVec {
    sparse(p, a.iter().map(|&(r, v)| (r, v as i64)).chain(b.iter().map(|&(r, v)| (r, -(v as i64)))).collect())
}

/// A bounded chain complex of F_p[Σ_n]-modules: `C_j` for `j` in `lo..=hi`,
/// `boundary[j]: C_j → C_{j−1}`, and the action on each `C_j` as matrices.
#[derive(Debug, Clone)]
pub struct GChainComplex {
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `boundary[k]` maps degree `lo + k` to `lo + k − 1` (absent for `k = 0`).
    pub boundary: Vec<FpMatrix>,
    /// `action[k][g]` acts on degree `lo + k`.
    pub action: Vec<Vec<FpMatrix>>,
}

impl GChainComplex {
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }
}

/// `Hom_{F_p[G]}(P_{≤L}, C)` with total homological degree `t = j − i`,
/// returned as a cochain complex in degree `−t`.
///
/// `D f = ∂_C f − (−1)^{|f|} f ∂_P`. Homology at `t` agrees with the
/// untruncated complex once `t ≥ hi(C) − L + 1`.
pub fn hom_complex(res: &GroupAlgebraResolution, c: &GChainComplex) -> Result<FpCochainComplex> {
    let p = res.p;
    let order = res.group.order();
    let len = res.len();
    // basis of Hom(P_i, C_j): (generator k of P_i, basis b of C_j)
    let mut spaces: BTreeMap<i64, usize> = BTreeMap::new();
    let mut offset: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for i in 0..=len {
        for (jk, &dj) in c.dims.iter().enumerate() {
            let j = c.lo + jk as i64;
            let deg = i as i64 - j;
            let e = spaces.entry(deg).or_insert(0);
            offset.insert((i, j), *e);
            *e += res.ranks[i] * dj;
        }
    }
    let mut cols: BTreeMap<i64, Vec<Vec<(u32, i64)>>> = spaces.iter().map(|(&d, &n)| (d, vec![Vec::new(); n])).collect();
    for i in 0..=len {
        for (jk, &dj) in c.dims.iter().enumerate() {
            let j = c.lo + jk as i64;
            let deg = i as i64 - j;
            let base = offset[&(i, j)];
            let sign_f = if (j - i as i64).rem_euclid(2) == 0 { 1 } else { -1 };
            for k in 0..res.ranks[i] {
                for b in 0..dj {
                    let col = &mut cols.get_mut(&deg).unwrap()[base + k * dj + b];
                    // ∂_C f: f(e_k) = basis b, pushed down to C_{j−1}
                    if jk > 0 {
                        let tgt = offset[&(i, j - 1)];
                        let dj1 = c.dims[jk - 1];
                        for &(r, v) in c.boundary[jk].column(b) {
                            col.push(((tgt + k * dj1 + r as usize) as u32, v as i64));
                        }
                    }
                    // −(−1)^{|f|} f∂_P: value on generator e' of P_{i+1} is Σ c_{k,h} h·f(e_k)
                    if i < len {
                        let tgt = offset[&(i + 1, j)];
                        for (kk, g) in res.boundaries[i].iter().enumerate() {
                            for &(r, v) in g {
                                let (gk, h) = (r as usize / order, r as usize % order);
                                if gk != k {
                                    continue;
                                }
                                for &(rr, vv) in c.action[jk][h].column(b) {
                                    let coef = -sign_f * p.mul(v, vv) as i64;
                                    col.push(((tgt + kk * dj + rr as usize) as u32, coef));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut diffs: BTreeMap<i64, FpMatrix> = BTreeMap::new();
    for (&deg, cs) in cols.iter_mut() {
        if let Some(&rows) = spaces.get(&(deg + 1)) {
            diffs.insert(deg, FpMatrix::from_columns(p, rows, std::mem::take(cs))?);
        }
    }
    FpCochainComplex::from_map(p, &spaces, &diffs)
}
