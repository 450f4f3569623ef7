//! Reduced words in the free group on generators `g_1 … g_N`.
//!
//! A letter is a nonzero `i16`: `+i` stands for `g_i`, `-i` for its inverse.
//! The text form writes `g_1, g_2, …` as `a, b, …` and inverses in upper case;
//! the identity prints as `e`.

use std::fmt;

use crate::error::{domain, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i16>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: u16) -> Self {
        assert!(i >= 1, "generators are 1-based");
        Word(vec![i as i16])
    }

    /// Builds a word from arbitrary letters, cancelling adjacent inverse pairs.
    pub fn reduced(letters: impl IntoIterator<Item = i16>) -> Result<Self> {
        let mut out: Vec<i16> = Vec::new();
        for l in letters {
            if l == 0 {
                return domain("letter 0 is not a generator");
            }
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(Word(out))
    }

    /// Accepts only letters that already form a reduced word.
    pub fn from_reduced(letters: Vec<i16>) -> Result<Self> {
        if letters.contains(&0) {
            return domain("letter 0 is not a generator");
        }
        if letters.windows(2).any(|w| w[0] == -w[1]) {
            return domain(format!("word {letters:?} is not reduced"));
        }
        Ok(Word(letters))
    }

    /// Parses the letter form (`aB`, `e` for the identity). Non-reduced input is rejected.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Word::identity());
        }
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let l = match ch {
                'a'..='z' => (ch as i16) - ('a' as i16) + 1,
                'A'..='Z' => -((ch as i16) - ('A' as i16) + 1),
                _ => return domain(format!("invalid letter {ch:?} in word {s:?}")),
            };
            letters.push(l);
        }
        Word::from_reduced(letters)
    }

    pub fn letters(&self) -> &[i16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used.
    pub fn max_generator(&self) -> u16 {
        self.0.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    /// Word lies in the positive monoid (no inverse letters).
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&l| l > 0)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for &l in &self.0 {
            let c = if l > 0 {
                (b'a' + (l - 1) as u8) as char
            } else {
                (b'A' + (-l - 1) as u8) as char
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// All reduced words of length exactly `k` over `n` generators, in shortlex order.
pub fn sphere_words(n: u16, k: usize) -> Vec<Word> {
    let alphabet: Vec<i16> = (1..=n as i16).flat_map(|i| [i, -i]).collect();
    let mut level = vec![Vec::<i16>::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(level.len() * (alphabet.len().max(1)));
        for w in &level {
            for &l in &alphabet {
                if w.last() != Some(&-l) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        level = next;
    }
    level.into_iter().map(Word).collect()
}

/// Positive words `g_{i_1} ⋯ g_{i_k}` of length exactly `k`.
pub fn positive_words(n: u16, k: usize) -> Vec<Word> {
    let mut level = vec![Vec::<i16>::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(level.len() * n as usize);
        for w in &level {
            for i in 1..=n as i16 {
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        level = next;
    }
    level.into_iter().map(Word).collect()
}
