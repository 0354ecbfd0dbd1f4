//! Cosimplicial F_p-vector spaces, stored level by level with explicit
//! coface and codegeneracy matrices and an optional basis-permuting group action.
//!
//! This is the literal route for strict fixed points: invariants are taken
//! level by level, and only then conormalized.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::fp_linalg::{FpCochainComplex, FpMatrix, Prime};
use crate::partition_complex::{perms, TComplex};

#[derive(Debug, Clone)]
pub struct CosimplicialVS {
    p: Prime,
    dims: Vec<usize>,
    /// `cofaces[s][i] : V^s → V^{s+1}` for `i = 0..=s+1`.
    cofaces: Vec<Vec<FpMatrix>>,
    /// `codegeneracies[s][j] : V^{s+1} → V^s` for `j = 0..=s`.
    codegeneracies: Vec<Vec<FpMatrix>>,
    /// `action[s][g][b]`: image of basis vector `b` under the `g`-th element of `perms::all(n)`.
    action: Option<(usize, Vec<Vec<Vec<u32>>>)>,
    /// The conormalization vanishes above this level.
    bound: usize,
}

/// A finite pointed simplicial set given level by level up to some top level.
/// Simplices are keys; `None` from a face map is the basepoint.
pub trait PointedSimplicialSet {
    type Key: Clone + Eq + Hash;
    /// Non-basepoint simplices at level `s`.
    fn simplices(&self, s: usize) -> Vec<Self::Key>;
    fn face(&self, x: &Self::Key, i: usize) -> Option<Self::Key>;
    fn degeneracy(&self, x: &Self::Key, j: usize) -> Self::Key;
    /// Group `Σ_n` acting; `n = 1` means trivially.
    fn group_n(&self) -> usize;
    fn act(&self, g: &[u8], x: &Self::Key) -> Self::Key;
    /// Top dimension of a nondegenerate simplex.
    fn dimension(&self) -> usize;
}

impl PointedSimplicialSet for TComplex {
    type Key = Vec<u16>;

    fn simplices(&self, s: usize) -> Vec<Vec<u16>> {
        self.level(s)
    }

    fn face(&self, x: &Vec<u16>, i: usize) -> Option<Vec<u16>> {
        TComplex::face(self, x, i)
    }

    fn degeneracy(&self, x: &Vec<u16>, j: usize) -> Vec<u16> {
        let mut y = x.clone();
        y.insert(j, x[j]);
        y
    }

    fn group_n(&self) -> usize {
        self.n()
    }

    fn act(&self, g: &[u8], x: &Vec<u16>) -> Vec<u16> {
        let a = self.lattice.action(g);
        x.iter().map(|&c| a[c as usize]).collect()
    }

    fn dimension(&self) -> usize {
        self.top_dim()
    }
}

/// The minimal simplicial sphere `Δ^m/∂Δ^m`: level `s` keeps the
/// nondecreasing surjections `[s] → [m]`.
#[derive(Debug, Clone, Copy)]
pub struct MinimalSphere {
    pub m: usize,
}

impl PointedSimplicialSet for MinimalSphere {
    type Key = Vec<u8>;

    fn simplices(&self, s: usize) -> Vec<Vec<u8>> {
        // choose where each of the m steps happens among the s gaps
        let mut out = Vec::new();
        if s < self.m {
            return out;
        }
        fn rec(s: usize, m: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            let last = *cur.last().unwrap() as usize;
            if cur.len() == s + 1 {
                if last == m {
                    out.push(cur.clone());
                }
                return;
            }
            let remaining = s + 1 - cur.len();
            for next in [last, last + 1] {
                if next <= m && m - next < remaining {
                    cur.push(next as u8);
                    rec(s, m, cur, out);
                    cur.pop();
                }
            }
        }
        rec(s, self.m, &mut vec![0], &mut out);
        out
    }

    fn face(&self, x: &Vec<u8>, i: usize) -> Option<Vec<u8>> {
        let mut y = x.clone();
        y.remove(i);
        let surjective = y.first() == Some(&0) && y.last() == Some(&(self.m as u8)) && y.windows(2).all(|w| w[1] - w[0] <= 1);
        surjective.then_some(y)
    }

    fn degeneracy(&self, x: &Vec<u8>, j: usize) -> Vec<u8> {
        let mut y = x.clone();
        y.insert(j, x[j]);
        y
    }

    fn group_n(&self) -> usize {
        1
    }

    fn act(&self, _: &[u8], x: &Vec<u8>) -> Vec<u8> {
        x.clone()
    }

    fn dimension(&self) -> usize {
        self.m
    }
}

impl CosimplicialVS {
    /// Reduced F_p-cochains, levels `0..=top`.
    pub fn from_pointed_set<X: PointedSimplicialSet>(x: &X, p: Prime, top: usize) -> Result<Self> {
        let levels: Vec<Vec<X::Key>> = (0..=top).map(|s| x.simplices(s)).collect();
        let index: Vec<HashMap<&X::Key, u32>> = levels.iter().map(|l| l.iter().enumerate().map(|(i, k)| (k, i as u32)).collect()).collect();
        let dims: Vec<usize> = levels.iter().map(Vec::len).collect();
        let mut cofaces = Vec::with_capacity(top);
        let mut codegeneracies = Vec::with_capacity(top);
        for s in 0..top {
            // (d^i f)(y) = f(d_i y): column x collects every y with d_i y = x
            let mut faces = Vec::with_capacity(s + 2);
            for i in 0..=s + 1 {
                let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); dims[s]];
                for (yi, y) in levels[s + 1].iter().enumerate() {
                    if let Some(f) = x.face(y, i) {
                        cols[index[s][&f] as usize].push((yi as u32, 1));
                    }
                }
                faces.push(FpMatrix::from_columns(p, dims[s + 1], cols)?);
            }
            cofaces.push(faces);
            // (s^j f)(x) = f(s_j x)
            let mut degs = Vec::with_capacity(s + 1);
            for j in 0..=s {
                let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); dims[s + 1]];
                for (xi, k) in levels[s].iter().enumerate() {
                    cols[index[s + 1][&x.degeneracy(k, j)] as usize].push((xi as u32, 1));
                }
                degs.push(FpMatrix::from_columns(p, dims[s], cols)?);
            }
            codegeneracies.push(degs);
        }
        let n = x.group_n();
        let action = (n > 1).then(|| {
            let group = perms::all(n);
            let act = levels
                .iter()
                .enumerate()
                .map(|(s, l)| group.iter().map(|g| l.iter().map(|k| index[s][&x.act(g, k)]).collect()).collect())
                .collect();
            (n, act)
        });
        Ok(CosimplicialVS { p, dims, cofaces, codegeneracies, action, bound: x.dimension() })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn group_n(&self) -> usize {
        self.action.as_ref().map_or(1, |a| a.0)
    }

    /// Levelwise tensor product with the diagonal action.
    pub fn tensor(&self, other: &CosimplicialVS) -> Result<Self> {
        let top = self.top().min(other.top());
        let (na, nb) = (self.group_n(), other.group_n());
        if na > 1 && nb > 1 && na != nb {
            return Err(Error::invalid("tensor of cosimplicial spaces over different groups"));
        }
        let n = na.max(nb);
        let dims: Vec<usize> = (0..=top).map(|s| self.dims[s] * other.dims[s]).collect();
        let cofaces = (0..top).map(|s| self.cofaces[s].iter().zip(&other.cofaces[s]).map(|(a, b)| a.kron(b)).collect()).collect();
        let codegeneracies = (0..top).map(|s| self.codegeneracies[s].iter().zip(&other.codegeneracies[s]).map(|(a, b)| a.kron(b)).collect()).collect();
        let action = (n > 1).then(|| {
            let order = perms::all(n).len();
            let act = (0..=top)
                .map(|s| {
                    (0..order)
                        .map(|g| {
                            let db = other.dims[s] as u32;
                            (0..self.dims[s] as u32)
                                .flat_map(|a| (0..db).map(move |b| (a, b)))
                                .map(|(a, b)| self.image(s, g, a) * db + other.image(s, g, b))
                                .collect()
                        })
                        .collect()
                })
                .collect();
            (n, act)
        });
        Ok(CosimplicialVS { p: self.p, dims, cofaces, codegeneracies, action, bound: self.bound + other.bound })
    }

    fn image(&self, s: usize, g: usize, b: u32) -> u32 {
        match &self.action {
            Some((_, act)) => act[s][g][b as usize],
            None => b,
        }
    }

    /// `V^{⊗n}` with `Σ_n` permuting the factors (no signs). `V` must carry no action.
    pub fn tensor_power(&self, n: usize) -> Result<Self> {
        if self.action.is_some() {
            return Err(Error::invalid("tensor power of a cosimplicial space that already carries an action"));
        }
        if n == 0 {
            return Err(Error::invalid("tensor power needs n ≥ 1"));
        }
        let mut out = self.clone();
        for _ in 1..n {
            out = out.tensor(self)?;
        }
        if n > 1 {
            let group = perms::all(n);
            let act = (0..=out.top())
                .map(|s| {
                    let d = self.dims[s] as u32;
                    group
                        .iter()
                        .map(|g| {
                            (0..out.dims[s] as u32)
                                .map(|b| {
                                    // digits with factor 0 most significant; factor i moves to g(i)
                                    let mut digits = vec![0u32; n];
                                    let mut r = b;
                                    for i in (0..n).rev() {
                                        digits[i] = r % d;
                                        r /= d;
                                    }
                                    let mut moved = vec![0u32; n];
                                    for i in 0..n {
                                        moved[g[i] as usize] = digits[i];
                                    }
                                    moved.iter().fold(0, |acc, &x| acc * d + x)
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            out.action = Some((n, act));
        }
        Ok(out)
    }

    /// Levelwise invariants, in the basis of orbit sums. Drops the action.
    pub fn invariants(&self) -> Result<Self> {
        let Some((_, act)) = &self.action else {
            let mut out = self.clone();
            out.action = None;
            return Ok(out);
        };
        let p = self.p;
        // per level: orbit id of every basis vector, and one representative per orbit
        let mut orbit_of: Vec<Vec<u32>> = Vec::new();
        let mut reps: Vec<Vec<u32>> = Vec::new();
        for (s, &d) in self.dims.iter().enumerate() {
            let mut of = vec![u32::MAX; d];
            let mut rs = Vec::new();
            for b in 0..d {
                if of[b] == u32::MAX {
                    for g in &act[s] {
                        of[g[b] as usize] = rs.len() as u32;
                    }
                    rs.push(b as u32);
                }
            }
            orbit_of.push(of);
            reps.push(rs);
        }
        let restrict = |m: &FpMatrix, src: usize, dst: usize| -> Result<FpMatrix> {
            let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); reps[src].len()];
            for (b, &o) in orbit_of[src].iter().enumerate() {
                // orbit sum of o, pushed forward; read off at representatives
                for &(r, v) in m.column(b) {
                    let target = orbit_of[dst][r as usize];
                    if reps[dst][target as usize] == r {
                        cols[o as usize].push((target, v as i64));
                    }
                }
            }
            FpMatrix::from_columns(p, reps[dst].len(), cols)
        };
        let top = self.top();
        let mut cofaces = Vec::with_capacity(top);
        let mut codegeneracies = Vec::with_capacity(top);
        for s in 0..top {
            cofaces.push(self.cofaces[s].iter().map(|m| restrict(m, s, s + 1)).collect::<Result<Vec<_>>>()?);
            codegeneracies.push(self.codegeneracies[s].iter().map(|m| restrict(m, s + 1, s)).collect::<Result<Vec<_>>>()?);
        }
        Ok(CosimplicialVS { p, dims: reps.iter().map(Vec::len).collect(), cofaces, codegeneracies, action: None, bound: self.bound })
    }

    /// Conormalized cochain complex: the joint kernel of the codegeneracies,
    /// with differential `Σ (−1)^i d^i`. Errors if a level above the bound survives.
    pub fn conormalize(&self) -> Result<FpCochainComplex> {
        let p = self.p;
        let top = self.top();
        let mut kernels: Vec<FpMatrix> = Vec::with_capacity(top + 1);
        kernels.push(FpMatrix::identity(p, self.dims[0]));
        for s in 1..=top {
            let mut stacked = self.codegeneracies[s - 1][0].clone();
            for m in &self.codegeneracies[s - 1][1..] {
                stacked = stacked.vcat(m)?;
            }
            kernels.push(stacked.kernel());
        }
        let last = top.min(self.bound + 1);
        if last > self.bound && kernels[last].cols() != 0 {
            return Err(Error::invalid(format!("conormalization is nonzero at level {last}, above its bound {}", self.bound)));
        }
        let mut diffs = Vec::new();
        for s in 0..last {
            let mut delta = FpMatrix::zeros(p, self.dims[s + 1], self.dims[s]);
            for (i, m) in self.cofaces[s].iter().enumerate() {
                delta = delta.add(&m.scale(if i % 2 == 0 { 1 } else { -1 }))?;
            }
            let image = delta.mul(&kernels[s])?;
            let coords = image.solve_in(&kernels[s + 1])?.ok_or_else(|| Error::invalid("differential leaves the conormalization"))?;
            diffs.push(coords);
        }
        FpCochainComplex::new(p, 0, kernels[..=last].iter().map(FpMatrix::cols).collect(), diffs)
    }

    /// Checks the cosimplicial identities and that the action commutes with
    /// every structure map. Returns a description of the first failure.
    pub fn check_identities(&self) -> std::result::Result<(), String> {
        let top = self.top();
        let id = |s: usize| FpMatrix::identity(self.p, self.dims[s]);
        let eq = |a: FpMatrix, b: FpMatrix, what: String| if a == b { Ok(()) } else { Err(what) };
        for s in 0..top.saturating_sub(1) {
            // d^j d^i = d^i d^{j−1} for i < j
            for j in 0..=s + 2 {
                for i in 0..j {
                    let lhs = self.cofaces[s + 1][j].mul(&self.cofaces[s][i]).unwrap();
                    let rhs = self.cofaces[s + 1][i].mul(&self.cofaces[s][j - 1]).unwrap();
                    eq(lhs, rhs, format!("coface identity at level {s}, i={i}, j={j}"))?;
                }
            }
        }
        for s in 0..top {
            // s^j d^i : V^s → V^s
            for j in 0..=s {
                for i in 0..=s + 1 {
                    let lhs = self.codegeneracies[s][j].mul(&self.cofaces[s][i]).unwrap();
                    if i == j || i == j + 1 {
                        eq(lhs, id(s), format!("s^{j} d^{i} ≠ id at level {s}"))?;
                    } else if s > 0 && i < j {
                        let rhs = self.cofaces[s - 1][i].mul(&self.codegeneracies[s - 1][j - 1]).unwrap();
                        eq(lhs, rhs, format!("s^{j} d^{i} at level {s}"))?;
                    } else if s > 0 {
                        let rhs = self.cofaces[s - 1][i - 1].mul(&self.codegeneracies[s - 1][j]).unwrap();
                        eq(lhs, rhs, format!("s^{j} d^{i} at level {s}"))?;
                    }
                }
            }
        }
        if let Some((_, act)) = &self.action {
            let perm = |s: usize, g: usize| {
                let cols = act[s][g].iter().map(|&b| vec![(b, 1i64)]).collect();
                FpMatrix::from_columns(self.p, self.dims[s], cols).unwrap()
            };
            for s in 0..top {
                for g in 0..act[s].len() {
                    for (i, m) in self.cofaces[s].iter().enumerate() {
                        eq(m.mul(&perm(s, g)).unwrap(), perm(s + 1, g).mul(m).unwrap(), format!("action vs d^{i} at level {s}"))?;
                    }
                    for (j, m) in self.codegeneracies[s].iter().enumerate() {
                        eq(m.mul(&perm(s + 1, g)).unwrap(), perm(s, g).mul(m).unwrap(), format!("action vs s^{j} at level {s}"))?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of orbits of the basis action at level `s`.
    pub fn orbit_count(&self, s: usize) -> usize {
        match &self.action {
            None => self.dims[s],
            Some((_, act)) => {
                let mut seen = vec![false; self.dims[s]];
                let mut count = 0;
                for b in 0..self.dims[s] {
                    if !seen[b] {
                        count += 1;
                        for g in &act[s] {
                            seen[g[b] as usize] = true;
                        }
                    }
                }
                count
            }
        }
    }
}
