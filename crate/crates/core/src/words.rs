//! Lyndon words over the letters `x1 < x2 < … < xm`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonWord {
    alphabet: usize,
    /// 1-based letters.
    letters: Vec<u8>,
}

impl LyndonWord {
    /// Checked constructor.
    pub fn new(alphabet: usize, letters: Vec<u8>) -> Result<Self> {
        if letters.iter().any(|&a| a == 0 || a as usize > alphabet) {
            return Err(Error::invalid(format!("letters must lie in 1..={alphabet}")));
        }
        if !is_lyndon(&letters) {
            return Err(Error::invalid(format!("{} is not a Lyndon word", render(&letters))));
        }
        Ok(LyndonWord { alphabet, letters })
    }

    /// The single-letter word `x_i`.
    pub fn letter(alphabet: usize, i: u8) -> Self {
        LyndonWord { alphabet, letters: vec![i] }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Occurrences of each letter.
    pub fn multidegree(&self) -> Vec<u64> {
        let mut out = vec![0; self.alphabet];
        for &a in &self.letters {
            out[a as usize - 1] += 1;
        }
        out
    }

    /// Parse `"x1x2x1"`.
    pub fn parse(alphabet: usize, s: &str) -> Result<Self> {
        let letters = s
            .split('x')
            .skip(1)
            .map(|t| t.parse::<u8>().map_err(|_| Error::invalid(format!("bad word {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if !s.starts_with('x') || letters.is_empty() {
            return Err(Error::invalid(format!("bad word {s:?}")));
        }
        LyndonWord::new(alphabet, letters)
    }
}

fn render(letters: &[u8]) -> String {
    letters.iter().map(|a| format!("x{a}")).collect()
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.letters))
    }
}

/// Strictly smaller than every nontrivial rotation. Brute force.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|r| {
        let rot = w[r..].iter().chain(&w[..r]);
        w.iter().lt(rot)
    })
}

/// Every Lyndon word of length at most `n` over `m` letters, in lexicographic order.
fn duval(m: u8, n: usize, mut visit: impl FnMut(&[u8])) {
    if m == 0 || n == 0 {
        return;
    }
    let mut w: Vec<u8> = vec![1];
    loop {
        visit(&w);
        let k = w.len();
        while w.len() < n {
            w.push(w[w.len() - k]);
        }
        while w.last() == Some(&m) {
            w.pop();
        }
        match w.last_mut() {
            Some(a) => *a += 1,
            None => break,
        }
    }
}

/// `B(n_1, …, n_m)`: Lyndon words with the given letter counts, in lexicographic order.
pub fn lyndon_words(multidegree: &[u64]) -> Result<Vec<LyndonWord>> {
    let m = multidegree.len();
    let n: u64 = multidegree.iter().sum();
    if m == 0 || n == 0 {
        return Err(Error::invalid("multidegree must be nonzero"));
    }
    if m > u8::MAX as usize {
        return Err(Error::invalid("alphabet too large"));
    }
    let mut out = Vec::new();
    let mut counts = vec![0u64; m];
    duval(m as u8, n as usize, |w| {
        if w.len() as u64 == n {
            counts.iter_mut().for_each(|c| *c = 0);
            for &a in w {
                counts[a as usize - 1] += 1;
            }
            if counts == multidegree {
                out.push(LyndonWord { alphabet: m, letters: w.to_vec() });
            }
        }
    });
    Ok(out)
}

fn mobius(mut n: u64) -> i64 {
    let mut mu = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Witt's necklace formula `(1/n) Σ_{d | n} μ(d) m^{n/d}`.
pub fn lyndon_count_total(m: u64, length: u64) -> Result<u64> {
    if length == 0 {
        return Err(Error::invalid("length must be positive"));
    }
    let mut acc: i128 = 0;
    for d in (1..=length).filter(|d| length.is_multiple_of(*d)) {
        acc += mobius(d) as i128 * (m as i128).pow((length / d) as u32);
    }
    Ok((acc / length as i128) as u64)
}

/// Count by enumerating all `m^length` words and testing rotation-minimality.
pub fn lyndon_count_brute(m: u8, length: usize) -> u64 {
    let mut w = vec![1u8; length];
    let mut count = 0;
    if m == 0 || length == 0 {
        return 0;
    }
    loop {
        if is_lyndon(&w) {
            count += 1;
        }
        let mut i = length;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if w[i] < m {
                w[i] += 1;
                w[i + 1..].iter_mut().for_each(|a| *a = 1);
                break;
            }
        }
    }
}

/// `deg(w) = Σ_i (ℓ_i − 1)|w|_i + 1`.
pub fn word_degree(w: &LyndonWord, gens: &[i64]) -> Result<i64> {
    if gens.len() != w.alphabet {
        return Err(Error::invalid(format!("word over {} letters used with {} generators", w.alphabet, gens.len())));
    }
    Ok(w.multidegree().iter().zip(gens).map(|(&n, &l)| (l - 1) * n as i64).sum::<i64>() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(v: &[LyndonWord]) -> Vec<String> {
        v.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn small_sets() {
        assert_eq!(names(&lyndon_words(&[1, 1]).unwrap()), ["x1x2"]);
        assert_eq!(names(&lyndon_words(&[2, 1]).unwrap()), ["x1x1x2"]);
        assert!(lyndon_words(&[3, 0]).unwrap().is_empty());
        assert_eq!(names(&lyndon_words(&[2, 2]).unwrap()), ["x1x1x2x2"]);
        assert!(lyndon_words(&[0, 0]).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(lyndon_count_total(2, 3).unwrap(), 2);
        assert_eq!(lyndon_count_total(2, 1).unwrap(), 2);
        assert_eq!(lyndon_count_total(3, 2).unwrap(), 3);
        assert!(lyndon_count_total(2, 0).is_err());
        for len in 1..=8 {
            assert_eq!(lyndon_count_total(2, len).unwrap(), lyndon_count_brute(2, len as usize));
        }
    }

    #[test]
    fn degrees() {
        let w = LyndonWord::parse(2, "x1x2").unwrap();
        assert_eq!(word_degree(&w, &[-1, -1]).unwrap(), -3);
        assert_eq!(word_degree(&LyndonWord::letter(1, 1), &[7]).unwrap(), 7);
        assert_eq!(word_degree(&LyndonWord::parse(2, "x1x1x2").unwrap(), &[0, 2]).unwrap(), 0);
        assert!(word_degree(&w, &[1]).is_err());
        assert!(LyndonWord::parse(2, "x2x1").is_err());
    }

    proptest! {
        #[test]
        fn generated_words_are_lyndon_and_sorted(a in 0u64..4, b in 0u64..4, c in 0u64..3) {
            prop_assume!(a + b + c > 0);
            let ws = lyndon_words(&[a, b, c]).unwrap();
            for w in &ws {
                prop_assert!(is_lyndon(w.letters()));
                prop_assert_eq!(w.multidegree(), vec![a, b, c]);
            }
            prop_assert!(ws.windows(2).all(|x| x[0].letters() < x[1].letters()));
        }
    }
}
