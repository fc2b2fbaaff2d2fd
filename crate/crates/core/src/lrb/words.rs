use std::fmt;

use serde::{Serialize, Serializer};

use super::{Monoid, MonoidKind};
use crate::error::{Error, Result};
use crate::perm::check_permutation;

/// A word with no repeated letters. Letters are `1..=n` for the ambient
/// monoid, or any subset of them for a submonoid `ℱ_U`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InjWord(Vec<u8>);

impl InjWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        let mut seen = [false; 256];
        for &c in &letters {
            if c == 0 || std::mem::replace(&mut seen[c as usize], true) {
                return Err(Error::InvalidArgument(format!("{letters:?} is not an injective word")));
            }
        }
        Ok(InjWord(letters))
    }

    pub fn empty() -> Self {
        InjWord(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: u8) -> bool {
        self.0.contains(&c)
    }

    /// Parses `(a1,a2,...)`; `()` is the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (a1,a2,...), got {s:?}")))?;
        let letters = inner
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<u8>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }
}

impl From<InjWord> for Vec<u8> {
    fn from(w: InjWord) -> Self {
        w.0
    }
}

impl fmt::Display for InjWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for InjWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for InjWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `a · b`: concatenate, then drop every letter already seen.
pub fn mul_word(a: &InjWord, b: &InjWord) -> InjWord {
    let mut out = a.0.clone();
    for &c in &b.0 {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    InjWord(out)
}

/// Letterwise image `g(a)` for `g` in one-line notation on `1..=n`.
pub fn act_perm(g: &[usize], a: &InjWord) -> Result<InjWord> {
    check_permutation(g)?;
    a.0.iter()
        .map(|&c| {
            g.get(c as usize - 1)
                .map(|&v| v as u8)
                .ok_or_else(|| Error::InvalidArgument(format!("letter {c} outside the permutation's domain")))
        })
        .collect::<Result<Vec<u8>>>()
        .map(InjWord)
}

/// The free left-regular band on an alphabet. `WordMonoid::new(n)` is
/// `ℱ_n`; [`WordMonoid::on`] gives `ℱ_U` for a set of letters `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordMonoid {
    n: usize,
    alphabet: Vec<u8>,
}

impl WordMonoid {
    pub fn new(n: usize) -> Self {
        assert!(n < 256, "alphabet too large");
        WordMonoid { n, alphabet: (1..=n as u8).collect() }
    }

    /// `ℱ_U` inside `ℱ_n`.
    pub fn on(n: usize, letters: &[u8]) -> Result<Self> {
        let mut alphabet = letters.to_vec();
        alphabet.sort_unstable();
        alphabet.dedup();
        if alphabet.len() != letters.len() || alphabet.iter().any(|&c| c == 0 || c as usize > n) {
            return Err(Error::InvalidArgument(format!("{letters:?} is not a subset of 1..={n}")));
        }
        Ok(WordMonoid { n, alphabet })
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }
}

impl Monoid for WordMonoid {
    type Elem = InjWord;

    fn kind(&self) -> MonoidKind {
        MonoidKind::Words
    }

    fn ambient(&self) -> usize {
        self.n
    }

    fn modulus(&self) -> Option<u32> {
        None
    }

    fn rank(&self) -> usize {
        self.alphabet.len()
    }

    fn identity(&self) -> InjWord {
        InjWord::empty()
    }

    fn mul(&self, a: &InjWord, b: &InjWord) -> InjWord {
        mul_word(a, b)
    }

    fn length(&self, a: &InjWord) -> usize {
        a.len()
    }

    fn stratum(&self, len: usize) -> Vec<InjWord> {
        fn go(alpha: &[u8], len: usize, cur: &mut Vec<u8>, out: &mut Vec<InjWord>) {
            if cur.len() == len {
                out.push(InjWord(cur.clone()));
                return;
            }
            for &c in alpha {
                if !cur.contains(&c) {
                    cur.push(c);
                    go(alpha, len, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        if len <= self.alphabet.len() {
            go(&self.alphabet, len, &mut Vec::new(), &mut out);
        }
        out
    }
}
