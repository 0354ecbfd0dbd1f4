//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion does.
//!
//! All comparisons are exact (integer dimensions, tolerance 0).

use std::collections::BTreeMap;
use std::time::Instant;

use plie::enhancements::{enum_p_enhancements, theta_dims};
use plie::euler::{bredon_euler, matched_count};
use plie::free::{dims, dims_via_hilton_milnor, ehp_relations, PLieQuery};
use plie::oracle::{spectral_weight_dims, strict_weight_dims, sym_power_oracle};
use plie::partition_complex::{pi_homology_dims, PartitionChain};
use plie::sequences::{enum_main, Variant};
use plie::series::{sym_power_dims, DegreeWindow, GradedDims};
use plie::words::{is_lyndon, lyndon_count_total, lyndon_words};
use plie::{Guard, Prime};

type Outcome = Result<String, String>;

fn p(n: u64) -> Prime {
    Prime::new(n).unwrap()
}

fn w(lo: i64, hi: i64) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

/// Weight-`n` slice of the enumerated basis on one generator, by degree.
fn enumerated(pr: u64, l: i64, variant: Variant, n: u64, win: DegreeWindow) -> GradedDims {
    let mut g = GradedDims::zero();
    for s in enum_main(p(pr), &[l], variant, n, Some(win)).unwrap() {
        if s.total_weight() == n && win.contains(s.degree) {
            g.add_at(s.degree, 1);
        }
    }
    g
}

fn is_power(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn strict_grid() -> Vec<(u64, usize, i64)> {
    let mut g = Vec::new();
    for n in [2, 3, 4] {
        for l in [0, -1, -2, -3] {
            g.push((2, n, l));
        }
    }
    for n in [2, 3] {
        for l in [-1, -3] {
            g.push((3, n, l));
        }
    }
    g
}

fn homology() -> Outcome {
    let guard = Guard::default();
    let mut checks = 0;
    for n in 3..=6usize {
        let fact: u64 = (1..n as u64).product();
        for pr in [2, 3, 5] {
            let got = pi_homology_dims(n, p(pr), &guard).map_err(|e| e.to_string())?;
            let want = GradedDims::from_pairs(&[(n as i64 - 3, fact)]);
            if got != want {
                return Err(format!("n={n} p={pr}: expected {want:?}, got {got:?}"));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} cases"))
}

fn strict_oracle() -> Outcome {
    let guard = Guard::default();
    let win = w(-25, 1);
    let mut nonzero = 0;
    for (pr, n, l) in strict_grid() {
        let oracle = strict_weight_dims(n, l, p(pr), win, &guard).map_err(|e| e.to_string())?;
        let listed = enumerated(pr, l, Variant::Delta, n as u64, win);
        if oracle != listed {
            return Err(format!("p={pr} n={n} l={l}: oracle {oracle:?}, enumeration {listed:?}"));
        }
        nonzero += usize::from(!oracle.is_zero());
    }
    Ok(format!("{} cases, {nonzero} with nonzero tables", strict_grid().len()))
}

fn vanishing() -> Outcome {
    let guard = Guard::default();
    let win = w(-25, 1);
    let mut checked = 0;
    for (pr, n, l) in strict_grid() {
        let pp = pr as usize;
        if is_power(n, pp) || (n % 2 == 0 && is_power(n / 2, pp)) {
            continue;
        }
        let oracle = strict_weight_dims(n, l, p(pr), win, &guard).map_err(|e| e.to_string())?;
        let listed = enumerated(pr, l, Variant::Delta, n as u64, win);
        if !oracle.is_zero() || !listed.is_zero() {
            return Err(format!("p={pr} n={n} l={l}: oracle {oracle:?}, enumeration {listed:?}"));
        }
        checked += 1;
    }
    if checked == 0 {
        return Err("grid has no weight outside p^k and 2p^k".into());
    }
    Ok(format!("{checked} weights outside p^k, 2p^k"))
}

fn spectral_oracle() -> Outcome {
    let guard = Guard::default();
    let mut total = 0;
    for l in [0, -1, -2] {
        let win = w(2 * l - 11, 2 * l + 1);
        let oracle = spectral_weight_dims(2, l, p(2), win, &guard).map_err(|e| e.to_string())?;
        let listed = enumerated(2, l, Variant::Einfty, 2, win);
        if oracle != listed {
            return Err(format!("l={l} window {win}: oracle {oracle:?}, enumeration {listed:?}"));
        }
        total += oracle.total();
    }
    if total == 0 {
        return Err("all windows empty".into());
    }
    Ok(format!("3 cases, width 13, {total} classes"))
}

fn euler_matching() -> Outcome {
    let mut checks = 0;
    let mut nonzero = 0;
    for pr in [2, 3] {
        for k in 1..=3u32 {
            for l in -5i64..=5 {
                for variant in [Variant::Delta, Variant::Einfty] {
                    let hi = 4 * l.max(0) + 4;
                    let win = Some(w(hi - 11, hi));
                    let lhs = bredon_euler(k, l, p(pr), variant, win).map_err(|e| e.to_string())?;
                    let m = matched_count(k, l, p(pr), variant, win).map_err(|e| e.to_string())?;
                    let sign = if k % 2 == 1 { 1 } else { -1 };
                    let rhs: BTreeMap<i64, i64> = m.into_iter().filter(|&(_, c)| c != 0).map(|(d, c)| (d, sign * c as i64)).collect();
                    if lhs != rhs {
                        return Err(format!("p={pr} k={k} l={l} {variant}: euler {lhs:?}, matched {rhs:?}"));
                    }
                    checks += 1;
                    nonzero += usize::from(!lhs.is_empty());
                }
            }
        }
    }
    Ok(format!("{checks} cases, {nonzero} nonzero"))
}

fn hilton_milnor() -> Outcome {
    let guard = Guard::default();
    let mut checks = 0;
    for pr in [2, 3] {
        for gens in [vec![-1, -1], vec![-1, -2], vec![0, -1], vec![-3, -1]] {
            for variant in [Variant::Delta, Variant::Einfty] {
                let q = PLieQuery { p: pr, gens: gens.clone(), variant, max_total_weight: 12, window: w(-60, 5), basis: false };
                let direct = dims(&q, &guard).map_err(|e| e.to_string())?.dims;
                let assembled = dims_via_hilton_milnor(&q, &guard).map_err(|e| e.to_string())?;
                if direct != assembled {
                    let a = direct.entries();
                    let b = assembled.entries();
                    let first = a.iter().zip(&b).find(|(x, y)| x != y).map(|(x, y)| format!("{x:?} vs {y:?}")).unwrap_or_else(|| format!("{} vs {} entries", a.len(), b.len()));
                    return Err(format!("p={pr} gens={gens:?} {variant}: {first}"));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} generator sets"))
}

fn ehp() -> Outcome {
    let mut degrees = 0;
    for pr in [3, 5] {
        for l in [-4, -2, 0, 2] {
            for k in 0..=2 {
                for variant in [Variant::Delta, Variant::Einfty] {
                    let rep = ehp_relations(p(pr), l, k, variant, w(-80, 40)).map_err(|e| e.to_string())?;
                    if let Some(v) = rep.violations.first() {
                        return Err(format!("p={pr} l={l} k={k} {variant}: {v:?}"));
                    }
                    degrees += rep.degrees_checked;
                }
            }
        }
    }
    Ok(format!("{degrees} degrees"))
}

fn power_formula() -> Outcome {
    let guard = Guard::default();
    let mut checks = 0;
    for (pr, ls) in [(2u64, vec![0i64, -1, -2, -3]), (3, vec![-1, -3])] {
        for n in [2usize, 3] {
            for &l in &ls {
                for variant in [Variant::Delta, Variant::Einfty] {
                    let win = w(0, 25);
                    let oracle = sym_power_oracle(n, l, p(pr), variant, win, &guard).map_err(|e| e.to_string())?;
                    let formula = sym_power_dims(n as u64, &GradedDims::line(-l), p(pr), variant, Some(win)).map_err(|e| e.to_string())?;
                    if oracle != formula {
                        return Err(format!("p={pr} n={n} l={l} {variant}: formula {formula:?}, oracle {oracle:?}"));
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} cases"))
}

fn stabilizers() -> Outcome {
    let mut checks = 0;
    let inputs = [(GradedDims::from_pairs(&[(2, 1), (3, 1)]), w(0, 30)), (GradedDims::from_pairs(&[(-2, 1), (-1, 1)]), w(-30, 0))];
    for pr in [2, 3] {
        for n in 1..=6usize {
            let thetas = enum_p_enhancements(&PartitionChain::full(n), p(pr)).map_err(|e| e.to_string())?;
            for (v, win) in &inputs {
                for variant in [Variant::Delta, Variant::Einfty] {
                    let mut sum = GradedDims::zero();
                    for t in &thetas {
                        sum = sum.direct_sum(&theta_dims(t, v, p(pr), variant, Some(*win)).map_err(|e| e.to_string())?);
                    }
                    let formula = sym_power_dims(n as u64, v, p(pr), variant, Some(*win)).map_err(|e| e.to_string())?;
                    if sum != formula {
                        return Err(format!("p={pr} n={n} {variant} V={v:?}: enhancements {sum:?}, power {formula:?}"));
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} cases"))
}

/// Every arrangement of the multiset, filtered by rotation-minimality.
fn brute_lyndon(md: &[u64]) -> Vec<Vec<u8>> {
    fn rec(left: &mut [u64], cur: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            let strictly_least = (1..n).all(|r| {
                let rot: Vec<u8> = cur[r..].iter().chain(&cur[..r]).copied().collect();
                *cur < rot
            });
            if strictly_least {
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
    let mut out = Vec::new();
    rec(&mut md.to_vec(), &mut Vec::new(), md.iter().sum::<u64>() as usize, &mut out);
    out
}

fn witt(m: u64, n: u64) -> u64 {
    let mobius = |mut k: u64| -> i64 {
        let mut mu = 1;
        let mut d = 2;
        while k > 1 {
            if k.is_multiple_of(d) {
                k /= d;
                if k.is_multiple_of(d) {
                    return 0;
                }
                mu = -mu;
            }
            d += 1;
        }
        mu
    };
    let s: i64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(d) * (m as i64).pow((n / d) as u32)).sum();
    (s / n as i64) as u64
}

fn lyndon() -> Outcome {
    let mut multidegrees = 0;
    for m in 1..=3usize {
        let mut stack = vec![vec![]];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == m {
                let md: Vec<u64> = prefix;
                if md.iter().sum::<u64>() == 0 {
                    continue;
                }
                let got: Vec<Vec<u8>> = lyndon_words(&md).map_err(|e| e.to_string())?.iter().map(|w| w.letters().to_vec()).collect();
                let want = brute_lyndon(&md);
                if got != want {
                    return Err(format!("multidegree {md:?}: got {got:?}, brute force {want:?}"));
                }
                if !got.iter().all(|w| is_lyndon(w)) {
                    return Err(format!("multidegree {md:?}: non-Lyndon word emitted"));
                }
                multidegrees += 1;
                continue;
            }
            let used: u64 = prefix.iter().sum();
            for x in 0..=10 - used {
                let mut next = prefix.clone();
                next.push(x);
                stack.push(next);
            }
        }
    }
    for m in 1..=3u64 {
        for n in 1..=12u64 {
            let got = lyndon_count_total(m, n).map_err(|e| e.to_string())?;
            if got != witt(m, n) {
                return Err(format!("m={m} n={n}: {got} vs Witt {}", witt(m, n)));
            }
        }
    }
    Ok(format!("{multidegrees} multidegrees, 36 Witt counts"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("partition complex homology", homology),
        ("strict oracle equivalence", strict_oracle),
        ("vanishing outside p-power weights", vanishing),
        ("spectral oracle equivalence", spectral_oracle),
        ("Euler matching identity", euler_matching),
        ("Hilton-Milnor consistency", hilton_milnor),
        ("EHP relations at odd p", ehp),
        ("symmetric/extended power formula", power_formula),
        ("stabilizer decomposition", stabilizers),
        ("Lyndon counts", lyndon),
    ];
    let mut failed = 0;
    for (idx, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [exact, tolerance 0] ({detail}; {secs:.2}s)", idx + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [exact, tolerance 0]: {detail} ({secs:.2}s)", idx + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
