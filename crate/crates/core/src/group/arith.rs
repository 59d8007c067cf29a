use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Element, GroupError, GroupModel, Letter, Syllable, Word};

/// Word length, exact or certified from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Length {
    Exact(u32),
    /// The element lies outside the searched ball; its length is at least this.
    AtLeast(u32),
}

impl Length {
    pub fn exact(self) -> Option<u32> {
        match self {
            Length::Exact(l) => Some(l),
            Length::AtLeast(_) => None,
        }
    }

    pub fn lower_bound(self) -> u32 {
        match self {
            Length::Exact(l) | Length::AtLeast(l) => l,
        }
    }
}

/// Element order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_torsion(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl GroupModel {
    pub fn identity(&self) -> Element {
        match self {
            GroupModel::Free { .. } => Element::Free(Word::identity()),
            GroupModel::FreeAbelian { rank } => Element::Abelian(vec![0; *rank]),
            GroupModel::TwoStepNilpotent(n) => Element::Nilpotent { a: vec![0; n.m()], c: vec![0; n.n()] },
            GroupModel::Finite(_) => Element::Finite(0),
            GroupModel::FreeProduct { .. } => Element::Product(Vec::new()),
        }
    }

    pub fn is_identity(&self, a: &Element) -> bool {
        *a == self.identity()
    }

    /// Whether `a` is a canonical-form element of this model.
    pub fn contains(&self, a: &Element) -> bool {
        match (self, a) {
            (GroupModel::Free { rank }, Element::Free(w)) => {
                w.is_reduced() && w.letters().iter().all(|l| l.generator_number() as usize <= *rank)
            }
            (GroupModel::FreeAbelian { rank }, Element::Abelian(v)) => v.len() == *rank,
            (GroupModel::TwoStepNilpotent(n), Element::Nilpotent { a, c }) => a.len() == n.m() && c.len() == n.n(),
            (GroupModel::Finite(f), Element::Finite(i)) => (*i as usize) < f.order(),
            (GroupModel::FreeProduct { factors }, Element::Product(s)) => {
                s.iter().all(|syl| {
                    syl.factor < factors.len()
                        && factors[syl.factor].contains(&syl.element)
                        && !factors[syl.factor].is_identity(&syl.element)
                }) && s.windows(2).all(|w| w[0].factor != w[1].factor)
            }
            _ => false,
        }
    }

    fn check(&self, a: &Element) -> Result<(), GroupError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(GroupError::ModelMismatch(format!("{a} is not an element of this {} model", self.kind())))
        }
    }

    /// Checked product.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// Checked inverse.
    pub fn inverse(&self, a: &Element) -> Result<Element, GroupError> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    /// Product of two elements already known to belong to the model.
    ///
    /// # Panics
    /// On a payload that does not match the model.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (GroupModel::Free { .. }, Element::Free(x), Element::Free(y)) => Element::Free(x.concat(y)),
            (GroupModel::FreeAbelian { .. }, Element::Abelian(x), Element::Abelian(y)) => {
                Element::Abelian(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupModel::TwoStepNilpotent(n), Element::Nilpotent { a: a1, c: c1 }, Element::Nilpotent { a: a2, c: c2 }) => {
                let q = n.cocycle(a1, a2);
                Element::Nilpotent {
                    a: a1.iter().zip(a2).map(|(p, q)| p + q).collect(),
                    c: c1.iter().zip(c2).zip(q).map(|((p, r), s)| p + r + s).collect(),
                }
            }
            (GroupModel::Finite(f), Element::Finite(x), Element::Finite(y)) => Element::Finite(f.mul(*x, *y)),
            (GroupModel::FreeProduct { factors }, Element::Product(x), Element::Product(y)) => {
                let mut out = x.clone();
                for syl in y {
                    push_syllable(factors, &mut out, syl.clone());
                }
                Element::Product(out)
            }
            _ => panic!("element payload does not match the {} model", self.kind()),
        }
    }

    /// Inverse of an element already known to belong to the model.
    pub fn inv(&self, a: &Element) -> Element {
        match (self, a) {
            (GroupModel::Free { .. }, Element::Free(w)) => Element::Free(w.inverse()),
            (GroupModel::FreeAbelian { .. }, Element::Abelian(v)) => Element::Abelian(v.iter().map(|x| -x).collect()),
            (GroupModel::TwoStepNilpotent(n), Element::Nilpotent { a, c }) => {
                // (a,c)(-a,c') = (0, c + c' + q(a,-a)) = 1  =>  c' = q(a,a) - c
                let q = n.cocycle(a, a);
                Element::Nilpotent {
                    a: a.iter().map(|x| -x).collect(),
                    c: c.iter().zip(q).map(|(x, s)| s - x).collect(),
                }
            }
            (GroupModel::Finite(f), Element::Finite(x)) => Element::Finite(f.inv(*x)),
            (GroupModel::FreeProduct { factors }, Element::Product(s)) => Element::Product(
                s.iter()
                    .rev()
                    .map(|syl| Syllable { factor: syl.factor, element: factors[syl.factor].inv(&syl.element) })
                    .collect(),
            ),
            _ => panic!("element payload does not match the {} model", self.kind()),
        }
    }

    /// `g⁻¹ · u · g`.
    pub fn conjugate(&self, u: &Element, g: &Element) -> Element {
        self.mul(&self.mul(&self.inv(g), u), g)
    }

    pub fn commutes(&self, a: &Element, b: &Element) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn pow(&self, a: &Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.identity();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            e >>= 1;
        }
        acc
    }

    /// Positive generators in their canonical order. Letter `i` (1-based)
    /// names entry `i - 1`.
    pub fn positive_generators(&self) -> Vec<Element> {
        match self {
            GroupModel::Free { rank } => (1..=*rank as u32)
                .map(|i| Element::Free(Word::from_letters([Letter::generator(i)])))
                .collect(),
            GroupModel::FreeAbelian { rank } => (0..*rank)
                .map(|i| {
                    let mut v = vec![0; *rank];
                    v[i] = 1;
                    Element::Abelian(v)
                })
                .collect(),
            GroupModel::TwoStepNilpotent(n) => {
                let mut gens: Vec<Element> = (0..n.m())
                    .map(|i| {
                        let mut a = vec![0; n.m()];
                        a[i] = 1;
                        Element::Nilpotent { a, c: vec![0; n.n()] }
                    })
                    .collect();
                if n.central_generators() {
                    gens.extend((0..n.n()).map(|j| {
                        let mut c = vec![0; n.n()];
                        c[j] = 1;
                        Element::Nilpotent { a: vec![0; n.m()], c }
                    }));
                }
                gens
            }
            GroupModel::Finite(f) => f.generators().iter().map(|&g| Element::Finite(g)).collect(),
            GroupModel::FreeProduct { factors } => factors
                .iter()
                .enumerate()
                .flat_map(|(k, fac)| {
                    fac.positive_generators()
                        .into_iter()
                        .map(move |g| Element::Product(vec![Syllable { factor: k, element: g }]))
                })
                .collect(),
        }
    }

    /// Positive generators followed by their inverses, interleaved
    /// (`g₁, g₁⁻¹, g₂, g₂⁻¹, …`), with duplicates (involutions) dropped.
    pub fn symmetric_generators(&self) -> Vec<Element> {
        let mut out: Vec<Element> = Vec::new();
        for g in self.positive_generators() {
            let gi = self.inv(&g);
            if !out.contains(&g) {
                out.push(g);
            }
            if !out.contains(&gi) {
                out.push(gi);
            }
        }
        out
    }

    /// Word length with respect to [`GroupModel::symmetric_generators`].
    ///
    /// Free and free abelian lengths are closed-form; free products sum the
    /// factor lengths of their syllables. Nilpotent and finite lengths come
    /// from a breadth-first search of radius `radius_cap`.
    pub fn word_length(&self, a: &Element, radius_cap: u32) -> Result<Length, GroupError> {
        self.check(a)?;
        Ok(match (self, a) {
            (GroupModel::Free { .. }, Element::Free(w)) => Length::Exact(w.len() as u32),
            (GroupModel::FreeAbelian { .. }, Element::Abelian(v)) => {
                Length::Exact(v.iter().map(|x| x.unsigned_abs()).sum::<u64>() as u32)
            }
            (GroupModel::FreeProduct { factors }, Element::Product(s)) => {
                let mut total = 0u32;
                let mut exact = true;
                for syl in s {
                    match factors[syl.factor].word_length(&syl.element, radius_cap)? {
                        Length::Exact(l) => total += l,
                        Length::AtLeast(l) => {
                            total += l;
                            exact = false;
                        }
                    }
                }
                if exact {
                    Length::Exact(total)
                } else {
                    Length::AtLeast(total)
                }
            }
            _ => self.bfs_length(a, radius_cap),
        })
    }

    fn bfs_length(&self, target: &Element, radius_cap: u32) -> Length {
        let gens = self.symmetric_generators();
        let id = self.identity();
        if *target == id {
            return Length::Exact(0);
        }
        let mut seen = BTreeSet::new();
        seen.insert(id.clone());
        let mut frontier = VecDeque::from([id]);
        for r in 1..=radius_cap {
            let mut next = VecDeque::new();
            while let Some(x) = frontier.pop_front() {
                for g in &gens {
                    let y = self.mul(&x, g);
                    if y == *target {
                        return Length::Exact(r);
                    }
                    if seen.insert(y.clone()) {
                        next.push_back(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Length::AtLeast(radius_cap + 1)
    }

    /// Order of an element. Free products decide torsion by cyclically
    /// reducing the syllable form: only conjugates of single factor
    /// syllables can have finite order.
    pub fn is_torsion(&self, a: &Element) -> Result<Order, GroupError> {
        self.check(a)?;
        if self.is_identity(a) {
            return Ok(Order::Finite(1));
        }
        match (self, a) {
            (GroupModel::Finite(f), Element::Finite(x)) => {
                let mut k = 1u64;
                let mut y = *x;
                while y != 0 {
                    y = f.mul(y, *x);
                    k += 1;
                }
                Ok(Order::Finite(k))
            }
            (GroupModel::FreeProduct { factors }, Element::Product(_)) => {
                let (_, core) = self.cyclic_syllable_reduction(a);
                match core.syllables() {
                    Some([single]) => factors[single.factor].is_torsion(&single.element),
                    _ => Ok(Order::Infinite),
                }
            }
            _ => Ok(Order::Infinite),
        }
    }

    /// Writes a free-product element as `p · core · p⁻¹` with `core`
    /// cyclically reduced (a single syllable, or first and last syllables
    /// from different factors). Returns `(p, core)`.
    ///
    /// # Panics
    /// If the model is not a free product.
    pub fn cyclic_syllable_reduction(&self, a: &Element) -> (Element, Element) {
        let factors = self.factors().expect("free product model");
        let mut prefix: Vec<Syllable> = Vec::new();
        let mut core: Vec<Syllable> = a.syllables().expect("product element").to_vec();
        loop {
            if core.len() < 2 {
                break;
            }
            let first = &core[0];
            let last = &core[core.len() - 1];
            if first.factor != last.factor {
                break;
            }
            let k = first.factor;
            let fac = &factors[k];
            let last_inv = fac.inv(&last.element);
            if first.element == last_inv {
                // strip s · … · s⁻¹
                prefix.push(core[0].clone());
                core = core[1..core.len() - 1].to_vec();
            } else {
                // s · mid · t = s · (mid · t · s) · s⁻¹
                let merged = fac.mul(&last.element, &first.element);
                prefix.push(core[0].clone());
                let mut mid = core[1..core.len() - 1].to_vec();
                mid.push(Syllable { factor: k, element: merged });
                core = mid;
                break;
            }
        }
        (Element::Product(prefix), Element::Product(core))
    }

    /// Image in the free abelianization when it is computable from the
    /// payload (free, free abelian, nilpotent and products of those).
    pub fn abelianization(&self, a: &Element) -> Option<Vec<i64>> {
        match (self, a) {
            (GroupModel::Free { rank }, Element::Free(w)) => Some(w.exponent_sums(*rank)),
            (GroupModel::FreeAbelian { .. }, Element::Abelian(v)) => Some(v.clone()),
            (GroupModel::TwoStepNilpotent(_), Element::Nilpotent { a, .. }) => Some(a.clone()),
            (GroupModel::FreeProduct { factors }, Element::Product(s)) => {
                let parts: Option<Vec<Vec<i64>>> =
                    factors.iter().map(|f| f.abelianization(&f.identity())).collect();
                let mut parts = parts?;
                for syl in s {
                    let img = factors[syl.factor].abelianization(&syl.element)?;
                    for (p, x) in parts[syl.factor].iter_mut().zip(img) {
                        *p += x;
                    }
                }
                Some(parts.concat())
            }
            _ => None,
        }
    }

    /// Parses an element. Accepted forms:
    /// - words in generator letters (`a`..`z`, uppercase for inverses,
    ///   optional `^k` exponents, `1` for the identity), for every model;
    /// - `(x,y,…)` for free abelian and `(a…|c…)` for nilpotent elements;
    /// - `#k` or an element label for finite groups.
    pub fn parse_element(&self, s: &str) -> Result<Element, GroupError> {
        let t = s.trim();
        let err = |why: &str| GroupError::Parse(format!("{t:?}: {why}"));
        if let GroupModel::Finite(f) = self {
            if let Some(k) = t.strip_prefix('#') {
                let i: u32 = k.parse().map_err(|_| err("bad index"))?;
                let e = Element::Finite(i);
                self.check(&e).map_err(|_| err("index out of range"))?;
                return Ok(e);
            }
            if let Some(i) = f.index_of_name(t) {
                return Ok(Element::Finite(i));
            }
        }
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let nums = |part: &str| -> Result<Vec<i64>, GroupError> {
                if part.trim().is_empty() {
                    return Ok(Vec::new());
                }
                part.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| err("bad integer"))).collect()
            };
            let e = match self {
                GroupModel::FreeAbelian { .. } => Element::Abelian(nums(inner)?),
                GroupModel::TwoStepNilpotent(_) => {
                    let (a, c) = inner.split_once('|').ok_or_else(|| err("expected (a…|c…)"))?;
                    Element::Nilpotent { a: nums(a)?, c: nums(c)? }
                }
                _ => return Err(err("coordinate form not available for this model")),
            };
            self.check(&e).map_err(|_| err("wrong coordinate count"))?;
            return Ok(e);
        }
        self.parse_word(t)
    }

    fn parse_word(&self, t: &str) -> Result<Element, GroupError> {
        let err = |why: String| GroupError::Parse(format!("{t:?}: {why}"));
        let gens = self.positive_generators();
        let mut acc = self.identity();
        if t.is_empty() || t == "1" {
            return Ok(acc);
        }
        let chars: Vec<char> = t.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '.').collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            i += 1;
            if !c.is_ascii_alphabetic() {
                return Err(err(format!("unexpected character {c:?}")));
            }
            let num = (c.to_ascii_lowercase() as u8 - b'a') as usize;
            let g = gens.get(num).ok_or_else(|| err(format!("generator {c:?} out of range")))?;
            let mut exp: i64 = if c.is_ascii_uppercase() { -1 } else { 1 };
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let k: i64 = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err(String::from("bad exponent")))?;
                exp *= k;
            }
            acc = self.mul(&acc, &self.pow(g, exp));
        }
        Ok(acc)
    }
}

fn push_syllable(factors: &[GroupModel], out: &mut Vec<Syllable>, syl: Syllable) {
    if let Some(last) = out.last_mut() {
        if last.factor == syl.factor {
            let fac = &factors[syl.factor];
            let merged = fac.mul(&last.element, &syl.element);
            if fac.is_identity(&merged) {
                out.pop();
            } else {
                last.element = merged;
            }
            return;
        }
    }
    out.push(syl);
}
