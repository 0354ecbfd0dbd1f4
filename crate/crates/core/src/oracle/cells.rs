//! Finite pointed Σ_n-CW complexes whose cells are fixed pointwise by their
//! stabilizers, and the cellular cochains of orbit spaces of smash products.
//!
//! Such a complex passes to orbits cell by cell: the orbit space has one cell
//! per orbit, with boundary the image of the boundary of a representative.

use std::collections::HashMap;

use crate::error::Result;
use crate::fp_linalg::{FpCochainComplex, FpMatrix, Prime};
use crate::partition_complex::{perms, TComplex};

/// Pointed complex: the basepoint is not listed, and boundary terms landing
/// on it are dropped.
#[derive(Debug, Clone)]
pub struct GCellComplex {
    pub n: usize,
    pub dims: Vec<u32>,
    pub boundary: Vec<Vec<(u32, i32)>>,
    /// `action[g][c]` for every element `g` of `perms::all(n)`.
    pub action: Vec<Vec<u32>>,
}

impl GCellComplex {
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn top_dim(&self) -> u32 {
        self.dims.iter().copied().max().unwrap_or(0)
    }

    fn from_cells<K: Clone + Eq + std::hash::Hash>(n: usize, cells: Vec<(K, u32)>, boundary_of: impl Fn(&K) -> Vec<(K, i32)>, act: impl Fn(&[u8], &K) -> K) -> Self {
        let index: HashMap<K, u32> = cells.iter().enumerate().map(|(i, (k, _))| (k.clone(), i as u32)).collect();
        let dims = cells.iter().map(|c| c.1).collect();
        let boundary = cells
            .iter()
            .map(|(k, _)| {
                let mut b: Vec<(u32, i32)> = boundary_of(k).into_iter().filter_map(|(f, s)| index.get(&f).map(|&i| (i, s))).collect();
                b.sort_unstable();
                b
            })
            .collect();
        let action = perms::all(n).iter().map(|g| cells.iter().map(|(k, _)| index[&act(g, k)]).collect()).collect();
        GCellComplex { n, dims, boundary, action }
    }

    /// The nondegenerate simplices of T(n).
    pub fn from_t_complex(t: &TComplex) -> Self {
        let n = t.n();
        let l = &t.lattice;
        let acts: HashMap<Vec<u8>, Vec<u16>> = perms::all(n).into_iter().map(|g| {
            let a = l.action(&g);
            (g, a)
        }).collect();
        let cells: Vec<(Vec<u16>, u32)> = (0..=t.top_dim()).flat_map(|d| t.nondegenerate(d).iter().map(move |c| (c.clone(), d as u32))).collect();
        Self::from_cells(
            n,
            cells,
            |c| (1..c.len().saturating_sub(1)).map(|i| {
                let mut f = c.clone();
                f.remove(i);
                (f, if i % 2 == 0 { 1 } else { -1 })
            }).collect(),
            |g, c| {
                let a = &acts[g];
                c.iter().map(|&x| a[x as usize]).collect()
            },
        )
    }

    /// One-point compactification of the reduced permutation representation:
    /// the cone on the barycentric subdivision of ∂Δ^{n−1}, modulo its base.
    /// Cells are the cone point and the cones on flags of proper nonempty subsets.
    pub fn reduced_regular_sphere(n: usize) -> Self {
        let full: u16 = (1u16 << n) - 1;
        let subsets: Vec<u16> = (1..full).collect();
        let mut flags: Vec<Vec<u16>> = vec![vec![]];
        let mut stack: Vec<Vec<u16>> = subsets.iter().map(|&s| vec![s]).collect();
        while let Some(f) = stack.pop() {
            let last = *f.last().unwrap();
            for &s in &subsets {
                if s != last && s & last == last {
                    let mut g = f.clone();
                    g.push(s);
                    stack.push(g);
                }
            }
            flags.push(f);
        }
        flags.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let cells: Vec<(Vec<u16>, u32)> = flags.into_iter().map(|f| {
            let d = f.len() as u32;
            (f, d)
        }).collect();
        Self::from_cells(
            n,
            cells,
            |f| {
                // vertex order (cone point, A_0, …, A_r); d_0 lands in the collapsed base
                (0..f.len()).map(|i| {
                    let mut g = f.clone();
                    g.remove(i);
                    (g, if (i + 1) % 2 == 0 { 1 } else { -1 })
                }).collect()
            },
            |g, f| f.iter().map(|&s| permute_mask(g, s)).collect(),
        )
    }

    /// The minimal simplicial model `(Δ^m/∂Δ^m)^{∧n}`: nondegenerate simplices
    /// off the basepoint are sequences of nonzero 0/1 steps (as bitmasks)
    /// reaching `(m, …, m)`.
    pub fn sphere_smash_power(n: usize, m: usize) -> Self {
        let mut cells: Vec<(Vec<u8>, u32)> = Vec::new();
        fn rec(n: usize, m: usize, counts: &mut Vec<usize>, cur: &mut Vec<u8>, out: &mut Vec<(Vec<u8>, u32)>) {
            if counts.iter().all(|&c| c == m) {
                out.push((cur.clone(), cur.len() as u32));
                return;
            }
            for mask in 1u8..(1 << n) {
                if (0..n).all(|i| mask >> i & 1 == 0 || counts[i] < m) {
                    (0..n).for_each(|i| counts[i] += (mask >> i & 1) as usize);
                    cur.push(mask);
                    rec(n, m, counts, cur, out);
                    cur.pop();
                    (0..n).for_each(|i| counts[i] -= (mask >> i & 1) as usize);
                }
            }
        }
        rec(n, m, &mut vec![0; n], &mut Vec::new(), &mut cells);
        cells.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        Self::from_cells(
            n,
            cells,
            |steps| {
                // inner face i merges steps i−1 and i; it stays off the basepoint
                // only when the merged step is still a 0/1 vector
                (1..steps.len()).filter(|&i| steps[i - 1] & steps[i] == 0).map(|i| {
                    let mut f = steps.clone();
                    let merged = f[i - 1] | f[i];
                    f[i - 1] = merged;
                    f.remove(i);
                    (f, if i % 2 == 0 { 1 } else { -1 })
                }).collect()
            },
            |g, steps| steps.iter().map(|&s| permute_mask(g, s as u16) as u8).collect(),
        )
    }
}

fn permute_mask(g: &[u8], s: u16) -> u16 {
    let mut out = 0;
    for (i, &gi) in g.iter().enumerate() {
        if s >> i & 1 == 1 {
            out |= 1 << gi;
        }
    }
    out
}

/// Cellular cochains of `(F_0 ∧ F_1 ∧ …)/Σ_n` with the diagonal action;
/// degree `d` holds the orbits of product cells of total dimension `d`.
/// With no factors the product is `S^0`.
pub fn orbit_cochains(factors: &[&GCellComplex], p: Prime) -> Result<FpCochainComplex> {
    let n = factors.first().map_or(1, |f| f.n);
    assert!(factors.iter().all(|f| f.n == n), "factors over different groups");
    let group: Vec<usize> = (0..perms::all(n).len()).collect();
    // Orbit representatives: lexicographically least tuples, found by walking
    // the stabilizer chain factor by factor.
    let mut reps: Vec<Vec<u32>> = Vec::new();
    fn rec(j: usize, stab: &[usize], factors: &[&GCellComplex], cur: &mut Vec<u32>, reps: &mut Vec<Vec<u32>>) {
        if j == factors.len() {
            reps.push(cur.clone());
            return;
        }
        let f = factors[j];
        for c in 0..f.len() as u32 {
            if stab.iter().all(|&g| f.action[g][c as usize] >= c) {
                let sub: Vec<usize> = stab.iter().copied().filter(|&g| f.action[g][c as usize] == c).collect();
                cur.push(c);
                rec(j + 1, &sub, factors, cur, reps);
                cur.pop();
            }
        }
    }
    rec(0, &group, factors, &mut Vec::new(), &mut reps);

    let dim_of = |t: &[u32]| -> usize { t.iter().zip(factors).map(|(&c, f)| f.dims[c as usize] as usize).sum() };
    let top = reps.iter().map(|t| dim_of(t)).max().unwrap_or(0);
    let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    let mut index: HashMap<Vec<u32>, (usize, u32)> = HashMap::with_capacity(reps.len());
    for (r, t) in reps.iter().enumerate() {
        let d = dim_of(t);
        index.insert(t.clone(), (d, by_dim[d].len() as u32));
        by_dim[d].push(r as u32);
    }

    let canonical = |t: &[u32]| -> Vec<u32> {
        let mut cand: Vec<usize> = group.clone();
        let mut out = Vec::with_capacity(t.len());
        for (j, f) in factors.iter().enumerate() {
            let best = cand.iter().map(|&g| f.action[g][t[j] as usize]).min().unwrap();
            cand.retain(|&g| f.action[g][t[j] as usize] == best);
            out.push(best);
        }
        out
    };

    // Coboundary columns: for a cell of dimension d, the cells of dimension d+1
    // whose boundary contains it. Build boundaries, then transpose.
    let mut cols: Vec<Vec<Vec<(u32, i64)>>> = by_dim.iter().map(|v| vec![Vec::new(); v.len()]).collect();
    for (d, cells) in by_dim.iter().enumerate().skip(1) {
        for (row, &r) in cells.iter().enumerate() {
            let t = &reps[r as usize];
            let mut prefix = 0usize;
            for (j, f) in factors.iter().enumerate() {
                let sign = if prefix.is_multiple_of(2) { 1 } else { -1 };
                for &(face, s) in &f.boundary[t[j] as usize] {
                    let mut u = t.clone();
                    u[j] = face;
                    let (fd, col) = index[&canonical(&u)];
                    debug_assert_eq!(fd + 1, d);
                    cols[d - 1][col as usize].push((row as u32, sign * s as i64));
                }
                prefix += f.dims[t[j] as usize] as usize;
            }
        }
    }
    let dims: Vec<usize> = by_dim.iter().map(Vec::len).collect();
    let mut diffs = Vec::with_capacity(top);
    for (d, c) in cols.into_iter().enumerate().take(top) {
        diffs.push(FpMatrix::from_columns(p, dims[d + 1], c)?);
    }
    FpCochainComplex::new(p, 0, dims, diffs)
}
