//! Brute-force fixed-point computations of free partition Lie algebra
//! dimensions at small weight, independent of the admissible-sequence enumeration.
//!
//! Degree convention: a cochain complex in cosimplicial degree `s` contributes
//! to homotopy degree `−s`.

pub mod cells;
pub mod cosimplicial;
pub mod resolution;

use crate::error::{Error, Result};
use crate::fp_linalg::{FpMatrix, Prime};
use crate::guard::Guard;
use crate::partition_complex::TComplex;
use crate::sequences::Variant;
use crate::series::{DegreeWindow, GradedDims};

pub use cells::{orbit_cochains, GCellComplex};
pub use cosimplicial::{CosimplicialVS, MinimalSphere, PointedSimplicialSet};
pub use resolution::{hom_complex, GChainComplex, GroupAlgebraResolution, SymmetricGroup};

/// Reduced cochains of `Δ^{−ℓ}/∂Δ^{−ℓ}`, levels `0..=−ℓ+1`.
pub fn sphere_cochains(l: i64, p: Prime) -> Result<CosimplicialVS> {
    if l > 0 {
        return Err(Error::invalid("the fixed-point oracles take coconnective inputs only (ℓ ≤ 0)"));
    }
    let m = (-l) as usize;
    CosimplicialVS::from_pointed_set(&MinimalSphere { m }, p, m + 1)
}

/// Levelwise dual of the pointed chains on `T(n)`, with the relabeling action,
/// through one level past the top nondegenerate dimension.
pub fn t_reduced_cochains(n: usize, p: Prime, guard: &Guard) -> Result<CosimplicialVS> {
    let t = TComplex::new(n, guard)?;
    CosimplicialVS::from_pointed_set(&t, p, t.top_dim() + 1)
}

/// Which model of `T(n) ∧ (S^m)^{∧n}` the strict oracle takes orbits of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrictModel {
    /// `(S^m)^{∧n} ≅ S^m ∧ (S^{ρ̄})^{∧m}` with `S^{ρ̄}` a small Σ_n-CW sphere.
    RepresentationSphere,
    /// The simplicial smash power of the minimal sphere.
    MinimalSphere,
    /// Literal levelwise invariants of the cosimplicial tensor product, then conormalized.
    Cosimplicial,
}

fn check_strict(n: usize, l: i64, p: Prime, guard: &Guard) -> Result<()> {
    if l > 0 {
        return Err(Error::invalid("the fixed-point oracles take coconnective inputs only (ℓ ≤ 0)"));
    }
    if n == 0 {
        return Err(Error::invalid("weight must be at least 1"));
    }
    let max = if p.get() == 2 { guard.tensor_n } else { guard.tensor_n_odd };
    Guard::check("strict fixed-point oracle", n, max)
}

/// Weight-`n` part of `π_* Free(Σ^ℓ F_p)` in the delta variant, from strict
/// `Σ_n`-fixed points of `C̃^•(T(n)) ⊗ (C̃^•(S^{−ℓ}))^{⊗n}`.
pub fn strict_weight_dims(n: usize, l: i64, p: Prime, window: DegreeWindow, guard: &Guard) -> Result<GradedDims> {
    strict_weight_dims_with(n, l, p, window, guard, StrictModel::RepresentationSphere)
}

pub fn strict_weight_dims_with(n: usize, l: i64, p: Prime, window: DegreeWindow, guard: &Guard, model: StrictModel) -> Result<GradedDims> {
    check_strict(n, l, p, guard)?;
    let m = (-l) as usize;
    let t = TComplex::new(n, guard)?;
    let cohomology = match model {
        StrictModel::RepresentationSphere => {
            let tc = GCellComplex::from_t_complex(&t);
            let rho = GCellComplex::reduced_regular_sphere(n);
            let mut factors = vec![&tc];
            factors.extend(std::iter::repeat_n(&rho, m));
            orbit_cochains(&factors, p)?.cohomology_dims().shift(m as i64)
        }
        StrictModel::MinimalSphere => {
            let tc = GCellComplex::from_t_complex(&t);
            let s = GCellComplex::sphere_smash_power(n, m);
            orbit_cochains(&[&tc, &s], p)?.cohomology_dims()
        }
        StrictModel::Cosimplicial => {
            let top = t.top_dim() + n * m + 1;
            let tv = CosimplicialVS::from_pointed_set(&t, p, top)?;
            let sv = CosimplicialVS::from_pointed_set(&MinimalSphere { m }, p, top)?;
            tv.tensor(&sv.tensor_power(n)?)?.invariants()?.conormalize()?.cohomology_dims()
        }
    };
    Ok(negate(&cohomology).clip(window))
}

fn negate(g: &GradedDims) -> GradedDims {
    GradedDims::finite(g.iter().map(|(d, v)| (-d, v)).collect())
}

/// Cellular cochains of `T(n)` as a chain complex in degree `−s + nℓ`, with
/// `Σ_n` acting by relabeling twisted by `sgn^ℓ` (the Koszul sign of permuting
/// `n` copies of a degree-`ℓ` class).
fn t_chain_complex(n: usize, l: i64, p: Prime, guard: &Guard) -> Result<GChainComplex> {
    let t = TComplex::new(n, guard)?;
    let cells = GCellComplex::from_t_complex(&t);
    let group = SymmetricGroup::new(n);
    let top = cells.top_dim() as usize;
    let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    let mut pos = vec![0u32; cells.len()];
    for (c, &d) in cells.dims.iter().enumerate() {
        pos[c] = by_dim[d as usize].len() as u32;
        by_dim[d as usize].push(c as u32);
    }
    // chain degree j = nℓ − s, so index k = j − lo runs opposite to s
    let lo = n as i64 * l - top as i64;
    let dims: Vec<usize> = (0..=top).rev().map(|s| by_dim[s].len()).collect();
    let mut boundary = Vec::with_capacity(dims.len());
    let mut action = Vec::with_capacity(dims.len());
    for (k, &dk) in dims.iter().enumerate() {
        let s = top - k;
        // ∂ : C_j → C_{j−1} is the coboundary from level s to s + 1
        if k == 0 {
            boundary.push(FpMatrix::zeros(p, 0, dk));
        } else {
            let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); dk];
            for (row, &c) in by_dim[s + 1].iter().enumerate() {
                for &(f, sign) in &cells.boundary[c as usize] {
                    cols[pos[f as usize] as usize].push((row as u32, sign as i64));
                }
            }
            boundary.push(FpMatrix::from_columns(p, dims[k - 1], cols)?);
        }
        let mut per_g = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let sign = if l.rem_euclid(2) == 1 { group.sign(g) } else { 1 };
            let cols = by_dim[s].iter().map(|&c| vec![(pos[cells.action[g][c as usize] as usize], sign)]).collect();
            per_g.push(FpMatrix::from_columns(p, dk, cols)?);
        }
        action.push(per_g);
    }
    Ok(GChainComplex { lo, dims, boundary, action })
}

fn homotopy_fixed_points(c: &GChainComplex, n: usize, p: Prime, window: DegreeWindow, guard: &Guard) -> Result<GradedDims> {
    // exact for t ≥ hi(C) − L + 1
    let len = (c.hi() - window.lo + 1).max(1) as usize;
    if len > guard.max_resolution_len {
        return Err(Error::invalid(format!("window needs a resolution of length {len}, above the ceiling {}", guard.max_resolution_len)));
    }
    let res = GroupAlgebraResolution::new(p, n, len)?;
    let h = hom_complex(&res, c)?.cohomology_dims();
    Ok(negate(&h).clip(window))
}

/// Weight-`n` part of `π_* Free(Σ^ℓ F_p)` in the einfty variant, from
/// homotopy `Σ_n`-fixed points of the chain-level complex.
pub fn spectral_weight_dims(n: usize, l: i64, p: Prime, window: DegreeWindow, guard: &Guard) -> Result<GradedDims> {
    if l > 0 {
        return Err(Error::invalid("the fixed-point oracles take coconnective inputs only (ℓ ≤ 0)"));
    }
    if n == 0 {
        return Err(Error::invalid("weight must be at least 1"));
    }
    Guard::check("homotopy fixed-point oracle", n, guard.spectral_n)?;
    if n == 1 {
        return Ok(GradedDims::line(l).clip(window));
    }
    homotopy_fixed_points(&t_chain_complex(n, l, p, guard)?, n, p, window, guard)
}

/// `π_*` of the `n`-th symmetric (delta) or extended (einfty) power of
/// `Σ^ℓ F_p`, dualized: the result is indexed like `series::sym_power_dims`
/// applied to a single class in degree `−ℓ`.
pub fn sym_power_oracle(n: usize, l: i64, p: Prime, variant: Variant, window: DegreeWindow, guard: &Guard) -> Result<GradedDims> {
    if l > 0 {
        return Err(Error::invalid("the fixed-point oracles take coconnective inputs only (ℓ ≤ 0)"));
    }
    if n == 0 {
        return Err(Error::invalid("power must be at least 1"));
    }
    let m = (-l) as usize;
    match variant {
        Variant::Delta => {
            check_strict(n, l, p, guard)?;
            let rho = GCellComplex::reduced_regular_sphere(n);
            let factors: Vec<&GCellComplex> = std::iter::repeat_n(&rho, m).collect();
            Ok(orbit_cochains(&factors, p)?.cohomology_dims().shift(m as i64).clip(window))
        }
        Variant::Einfty => {
            Guard::check("homotopy fixed-point oracle", n, guard.spectral_n)?;
            let group = SymmetricGroup::new(n);
            let action = vec![(0..group.order()).map(|g| FpMatrix::identity(p, 1).scale(if m % 2 == 1 { group.sign(g) } else { 1 })).collect()];
            let c = GChainComplex { lo: n as i64 * l, dims: vec![1], boundary: vec![FpMatrix::zeros(p, 0, 1)], action };
            let flipped = DegreeWindow::new(-window.hi, -window.lo)?;
            Ok(negate(&homotopy_fixed_points(&c, n, p, flipped, guard)?).clip(window))
        }
    }
}
