//! Identity suites run by `plie verify`. Each check compares two independent
//! computations exactly; the report lists every discrepancy found.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::enhancements::{enum_p_enhancements, theta_dims};
use crate::error::{Error, Result};
use crate::euler::matching_discrepancy;
use crate::fp_linalg::Prime;
use crate::free::{dims, dims_via_hilton_milnor, ehp_relations, PLieQuery};
use crate::guard::Guard;
use crate::oracle::{spectral_weight_dims, strict_weight_dims, sym_power_oracle};
use crate::partition_complex::{pi_homology_dims, PartitionChain};
use crate::sequences::{enum_main, Variant};
use crate::series::{sym_power_dims, DegreeWindow, GradedDims};
use crate::words::{is_lyndon, lyndon_count_brute, lyndon_count_total, lyndon_words};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(Error::invalid(format!("unknown level {s:?} (expected quick or full)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Homology,
    Oracle,
    Euler,
    HiltonMilnor,
    Ehp,
    Stabilizer,
    Lyndon,
}

impl Suite {
    pub const ALL: [Suite; 7] = [Suite::Homology, Suite::Oracle, Suite::Euler, Suite::HiltonMilnor, Suite::Ehp, Suite::Stabilizer, Suite::Lyndon];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Homology => "homology",
            Suite::Oracle => "oracle",
            Suite::Euler => "euler",
            Suite::HiltonMilnor => "hilton-milnor",
            Suite::Ehp => "ehp",
            Suite::Stabilizer => "stabilizer",
            Suite::Lyndon => "lyndon",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub check: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub level: Level,
    pub checks: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

struct Recorder {
    checks: usize,
    discrepancies: Vec<Discrepancy>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { checks: 0, discrepancies: Vec::new() }
    }

    fn compare<T: PartialEq + fmt::Debug>(&mut self, check: impl Into<String>, expected: &T, got: &T) {
        self.checks += 1;
        if expected != got {
            self.discrepancies.push(Discrepancy { check: check.into(), expected: format!("{expected:?}"), got: format!("{got:?}") });
        }
    }

    fn finish(self, suite: Suite, level: Level) -> SuiteReport {
        SuiteReport { suite, level, checks: self.checks, discrepancies: self.discrepancies }
    }
}

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("suite primes are prime")
}

fn window(lo: i64, hi: i64) -> DegreeWindow {
    DegreeWindow::new(lo, hi).expect("suite windows are ordered")
}

/// Weight-`n` slice of the basis theorem for one generator.
pub fn enumerated_weight_dims(p: Prime, l: i64, variant: Variant, n: u64, w: DegreeWindow) -> Result<GradedDims> {
    let mut g = GradedDims::zero();
    for s in enum_main(p, &[l], variant, n, Some(w))? {
        if s.total_weight() == n {
            g.add_at(s.degree, 1);
        }
    }
    Ok(g.clip(w))
}

pub fn run(suite: Suite, level: Level, guard: &Guard) -> Result<SuiteReport> {
    let mut r = Recorder::new();
    let full = level == Level::Full;
    match suite {
        Suite::Homology => {
            let top = if full { 6 } else { 5 };
            for n in 3..=top {
                let fact: u64 = (1..n as u64).product();
                for p in [2, 3, 5] {
                    let got = pi_homology_dims(n, prime(p), guard)?;
                    r.compare(format!("homology n={n} p={p}"), &GradedDims::from_pairs(&[(n as i64 - 3, fact)]), &got);
                }
            }
        }
        Suite::Oracle => {
            let w = window(-25, 1);
            let mut grid: Vec<(u64, usize, i64)> = Vec::new();
            let (p2_n, p2_l): (Vec<usize>, Vec<i64>) = if full { (vec![1, 2, 3, 4], vec![0, -1, -2, -3]) } else { (vec![1, 2, 3], vec![0, -1, -2]) };
            for &n in &p2_n {
                for &l in &p2_l {
                    grid.push((2, n, l));
                }
            }
            let p3_n: Vec<usize> = if full { vec![1, 2, 3] } else { vec![1, 2] };
            for &n in &p3_n {
                for l in [-1, -3] {
                    grid.push((3, n, l));
                }
            }
            for (p, n, l) in grid {
                let oracle = strict_weight_dims(n, l, prime(p), w, guard)?;
                let enumerated = enumerated_weight_dims(prime(p), l, Variant::Delta, n as u64, w)?;
                r.compare(format!("strict oracle p={p} n={n} l={l}"), &enumerated, &oracle);
                let pp = p as usize;
                let allowed = pp.pow(n.ilog(pp)) == n || (n % 2 == 0 && pp.pow((n / 2).ilog(pp)) == n / 2);
                if !allowed {
                    r.compare(format!("vanishing (oracle) p={p} n={n} l={l}"), &GradedDims::zero(), &oracle);
                    r.compare(format!("vanishing (enumeration) p={p} n={n} l={l}"), &GradedDims::zero(), &enumerated);
                }
            }
            let width = if full { 12 } else { 8 };
            for l in [0, -1, -2] {
                let w = window(2 * l - width, 2 * l);
                let oracle = spectral_weight_dims(2, l, prime(2), w, guard)?;
                let enumerated = enumerated_weight_dims(prime(2), l, Variant::Einfty, 2, w)?;
                r.compare(format!("spectral oracle p=2 n=2 l={l}"), &enumerated, &oracle);
            }
            let sym_l2: Vec<i64> = if full { vec![0, -1, -2, -3] } else { vec![0, -1] };
            for (p, ls) in [(2u64, sym_l2), (3, vec![-1, -3])] {
                for n in [2usize, 3] {
                    for &l in &ls {
                        for variant in [Variant::Delta, Variant::Einfty] {
                            let w = window(0, 20);
                            let oracle = sym_power_oracle(n, l, prime(p), variant, w, guard)?;
                            let formula = sym_power_dims(n as u64, &GradedDims::line(-l), prime(p), variant, Some(w))?;
                            r.compare(format!("power oracle p={p} n={n} l={l} {variant}"), &formula, &oracle);
                        }
                    }
                }
            }
        }
        Suite::Euler => {
            let (kmax, lmax) = if full { (3, 5) } else { (2, 3) };
            for p in [2, 3] {
                for k in 1..=kmax {
                    for l in -lmax..=lmax {
                        for variant in [Variant::Delta, Variant::Einfty] {
                            let hi = 4 * l.max(0) + 4;
                            let got = matching_discrepancy(k, l, prime(p), variant, Some(window(hi - 12, hi)))?;
                            r.compare(format!("euler matching p={p} k={k} l={l} {variant}"), &None, &got);
                        }
                    }
                }
            }
        }
        Suite::HiltonMilnor => {
            let max = if full { 12 } else { 6 };
            for p in [2, 3] {
                for gens in [vec![-1, -1], vec![-1, -2], vec![0, -1], vec![-3, -1]] {
                    for variant in [Variant::Delta, Variant::Einfty] {
                        let q = PLieQuery { p, gens: gens.clone(), variant, max_total_weight: max, window: window(-60, 5), basis: false };
                        let direct = dims(&q, guard)?.dims;
                        let assembled = dims_via_hilton_milnor(&q, guard)?;
                        r.compare(format!("hilton-milnor p={p} gens={gens:?} {variant}"), &direct.entries(), &assembled.entries());
                    }
                }
            }
        }
        Suite::Ehp => {
            let (primes, kmax): (Vec<u64>, u32) = if full { (vec![3, 5], 2) } else { (vec![3], 1) };
            for p in primes {
                for l in [-4, -2, 0, 2] {
                    for k in 0..=kmax {
                        for variant in [Variant::Delta, Variant::Einfty] {
                            let rep = ehp_relations(prime(p), l, k, variant, window(-80, 40))?;
                            r.compare(format!("ehp p={p} l={l} k={k} {variant}"), &Vec::new(), &rep.violations);
                        }
                    }
                }
            }
        }
        Suite::Stabilizer => {
            let top = if full { 6 } else { 4 };
            let v = GradedDims::from_pairs(&[(-2, 1), (-1, 1)]);
            let w = window(-30, 0);
            for p in [2, 3] {
                for n in 1..=top {
                    for variant in [Variant::Delta, Variant::Einfty] {
                        let mut total = GradedDims::zero();
                        for t in enum_p_enhancements(&PartitionChain::full(n), prime(p))? {
                            total = total.direct_sum(&theta_dims(&t, &v, prime(p), variant, Some(w))?);
                        }
                        let formula = sym_power_dims(n as u64, &v, prime(p), variant, Some(w))?;
                        r.compare(format!("stabilizer sum p={p} n={n} {variant}"), &formula, &total);
                    }
                }
            }
        }
        Suite::Lyndon => {
            let max_len = if full { 10 } else { 7 };
            for m in 1..=3usize {
                let mut md = vec![0u64; m];
                lyndon_multidegrees(&mut md, 0, max_len, &mut |md| {
                    let got = lyndon_words(md).map(|ws| ws.iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>()).unwrap_or_default();
                    r.compare(format!("lyndon words {md:?}"), &brute_lyndon(md), &got);
                });
            }
            let top = if full { 12 } else { 8 };
            for m in 1..=3u8 {
                for len in 1..=top {
                    r.compare(format!("witt formula m={m} n={len}"), &lyndon_count_brute(m, len as usize), &lyndon_count_total(m as u64, len)?);
                }
            }
        }
    }
    Ok(r.finish(suite, level))
}

fn lyndon_multidegrees(md: &mut Vec<u64>, j: usize, left: u64, f: &mut dyn FnMut(&[u64])) {
    if j == md.len() {
        if md.iter().any(|&x| x > 0) {
            f(md);
        }
        return;
    }
    for x in 0..=left {
        md[j] = x;
        lyndon_multidegrees(md, j + 1, left - x, f);
    }
    md[j] = 0;
}

/// Every word with the given letter counts, kept when rotation-minimal, in lexicographic order.
pub fn brute_lyndon(md: &[u64]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let n: u64 = md.iter().sum();
    let mut left = md.to_vec();
    let mut cur = Vec::with_capacity(n as usize);
    fn rec(left: &mut Vec<u64>, cur: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            if is_lyndon(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..left.len() {
            if left[a] > 0 {
                left[a] -= 1;
                cur.push(a as u8 + 1);
                rec(left, cur, n, out);
                cur.pop();
                left[a] += 1;
            }
        }
    }
    rec(&mut left, &mut cur, n as usize, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        let g = Guard::default();
        for s in [Suite::Homology, Suite::Euler, Suite::Lyndon, Suite::Stabilizer, Suite::Ehp] {
            let rep = run(s, Level::Quick, &g).unwrap();
            assert!(rep.passed(), "{:?}", rep.discrepancies);
            assert!(rep.checks > 0);
        }
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
        assert!("slow".parse::<Level>().is_err());
    }

    #[test]
    fn brute_lyndon_small() {
        assert_eq!(brute_lyndon(&[2, 1]), vec![vec![1, 1, 2]]);
        assert_eq!(brute_lyndon(&[2, 2]), vec![vec![1, 1, 2, 2]]);
    }
}
