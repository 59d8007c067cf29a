use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::Word;

/// A group element in the canonical form of its model. Two elements of the
/// same model are equal iff their payloads are identical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Element {
    /// Freely reduced word.
    Free(Word),
    /// Integer coordinate vector.
    Abelian(Vec<i64>),
    /// Mal'cev coordinates: abelian part `a` and central part `c`.
    Nilpotent { a: Vec<i64>, c: Vec<i64> },
    /// Row index in the multiplication table.
    Finite(u32),
    /// Alternating nontrivial syllables; no two neighbours share a factor.
    Product(Vec<Syllable>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub factor: usize,
    pub element: Element,
}

impl Element {
    pub fn nilpotent(a: &[i64], c: &[i64]) -> Self {
        Element::Nilpotent { a: a.to_vec(), c: c.to_vec() }
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            Element::Free(w) => Some(w),
            _ => None,
        }
    }

    pub fn syllables(&self) -> Option<&[Syllable]> {
        match self {
            Element::Product(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Free(w) => write!(f, "{w}"),
            Element::Abelian(v) => write!(f, "({})", join(v)),
            Element::Nilpotent { a, c } => write!(f, "({}|{})", join(a), join(c)),
            Element::Finite(i) => write!(f, "#{i}"),
            Element::Product(s) => {
                if s.is_empty() {
                    return f.write_str("1");
                }
                for (k, syl) in s.iter().enumerate() {
                    if k > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "[{}:{}]", syl.factor, syl.element)?;
                }
                Ok(())
            }
        }
    }
}

fn join(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
    parts.join(",")
}
