use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

/// A generator or its inverse: `+i` is generator `i`, `-i` its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(i32);

impl Letter {
    /// Returns `None` for the forbidden index 0.
    pub fn new(index: i32) -> Option<Self> {
        (index != 0).then_some(Letter(index))
    }

    pub fn generator(i: u32) -> Self {
        assert!(i > 0, "generator indices start at 1");
        Letter(i as i32)
    }

    pub fn index(self) -> i32 {
        self.0
    }

    /// 1-based generator number, ignoring the sign.
    pub fn generator_number(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Lowercase letter for a generator, uppercase for its inverse.
    pub fn symbol(self) -> char {
        let n = self.generator_number();
        let base = if n <= 26 { b'a' + (n - 1) as u8 } else { b'?' };
        let c = base as char;
        if self.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

/// A word in the letters of a free group, kept freely reduced by every
/// constructor except [`Word::from_letters_unreduced`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word(Vec::new());
        for l in letters {
            w.push_reduced(l);
        }
        w
    }

    pub fn from_letters_unreduced(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a word from signed indices; zero entries are rejected.
    pub fn from_indices(indices: &[i32]) -> Option<Self> {
        let letters: Option<Vec<Letter>> = indices.iter().map(|&i| Letter::new(i)).collect();
        letters.map(Word::from_letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push_reduced(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn reduced(&self) -> Word {
        Word::from_letters(self.0.iter().copied())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &l in &other.0 {
            out.push_reduced(l);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Splits a reduced word as `p · core · p⁻¹` with `core` cyclically
    /// reduced. Returns `(p, core)`.
    pub fn cyclic_reduction(&self) -> (Word, Word) {
        let l = &self.0;
        let mut i = 0;
        let mut j = l.len();
        while j >= i + 2 && l[i] == l[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        (Word(l[..i].to_vec()), Word(l[i..j].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&a), Some(&b)) => self.0.len() == 1 || a != b.inverse(),
            _ => true,
        }
    }

    /// Left rotation by `k`: `w[k..] w[..k]`.
    pub fn rotate(&self, k: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return Word::identity();
        }
        let k = k % n;
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    pub fn suffix(&self, k: usize) -> Word {
        Word(self.0[k..].to_vec())
    }

    /// Primitive root: the word `ρ` and exponent `m ≥ 1` with `self = ρᵐ` and
    /// `m` maximal. The identity returns `(1, 0)`.
    pub fn root(&self) -> (Word, u32) {
        if self.0.is_empty() {
            return (Word::identity(), 0);
        }
        let (p, core) = self.cyclic_reduction();
        let n = core.0.len();
        let d = (1..=n)
            .find(|&d| n % d == 0 && (d..n).all(|i| core.0[i] == core.0[i - d]))
            .unwrap_or(n);
        let rho = p.concat(&Word(core.0[..d].to_vec())).concat(&p.inverse());
        (rho, (n / d) as u32)
    }

    /// Whether `self` lies in the cyclic subgroup generated by `h`.
    pub fn in_cyclic_subgroup(&self, h: &Word) -> bool {
        if self.0.is_empty() {
            return true;
        }
        if h.0.is_empty() {
            return false;
        }
        let (rx, jx) = self.root();
        let (rh, mh) = h.root();
        (rx == rh || rx == rh.inverse()) && jx % mh == 0
    }

    /// Exponent sum of every generator `1..=rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = alloc::vec![0i64; rank];
        for l in &self.0 {
            let g = l.generator_number() as usize;
            if g >= 1 && g <= rank {
                v[g - 1] += if l.is_inverse() { -1 } else { 1 };
            }
        }
        v
    }

    pub fn to_symbols(&self) -> String {
        if self.0.is_empty() {
            return String::from("1");
        }
        self.0.iter().map(|l| l.symbol()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_symbols())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[i32]) -> Word {
        Word::from_indices(s).unwrap()
    }

    #[test]
    fn letter_zero_rejected() {
        assert!(Letter::new(0).is_none());
        assert!(Word::from_indices(&[1, 0]).is_none());
    }

    #[test]
    fn reduction_and_inverse() {
        assert!(w(&[1, -1]).is_empty());
        let aba = w(&[1, 2, -1]);
        assert_eq!(aba.inverse(), w(&[1, -2, -1]));
        assert_eq!(aba.concat(&aba.inverse()), Word::identity());
        assert_eq!(aba.to_symbols(), "abA");
    }

    #[test]
    fn cyclic_reduction_splits_conjugating_prefix() {
        let (p, core) = w(&[1, 2, 2, -1]).cyclic_reduction();
        assert_eq!(p, w(&[1]));
        assert_eq!(core, w(&[2, 2]));
        let (p, core) = w(&[1, -2, 1, 2, -1]).cyclic_reduction();
        assert_eq!(p, w(&[1, -2]));
        assert_eq!(core, w(&[1]));
        assert!(core.is_cyclically_reduced());
    }

    #[test]
    fn rotation() {
        assert_eq!(w(&[1, 2, 3]).rotate(1), w(&[2, 3, 1]));
        assert_eq!(w(&[1, 2, 3]).rotate(3), w(&[1, 2, 3]));
    }

    #[test]
    fn primitive_roots() {
        let ab = w(&[1, 2]);
        assert_eq!(ab.power(3).root(), (ab.clone(), 3));
        assert_eq!(w(&[1, 2, 1, -2]).root(), (w(&[1, 2, 1, -2]), 1));
        let conj = w(&[2]).concat(&ab.power(2)).concat(&w(&[-2]));
        assert_eq!(conj.root(), (w(&[2, 1, 2, -2]), 2));
        assert_eq!(Word::identity().root().1, 0);
        assert!(w(&[1, 1, 1, 1]).in_cyclic_subgroup(&w(&[-1, -1])));
        assert!(!w(&[1, 1, 1]).in_cyclic_subgroup(&w(&[1, 1])));
        assert!(!w(&[2]).in_cyclic_subgroup(&w(&[1])));
    }
}
