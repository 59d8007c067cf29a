use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::group::GroupModel;

use super::{conj_classes, describe, finite, product, HomologyError, TupleBasis};

/// Outcome of comparing the class-`x` part of the cyclic bar construction
/// with `S_x ×_G EG` in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialReport {
    pub class: usize,
    pub representative: String,
    pub degree: usize,
    /// Tuples `(g₀, …, g_n)` whose product lies in the class.
    pub cyclic_bar_simplices: usize,
    /// `|S_x × G^{n+1}|` before the quotient.
    pub pairs: usize,
    pub orbits: usize,
    /// Every orbit holds exactly one pair `(s, [1, g₁, …, g_n])`.
    pub normal_forms_unique: bool,
    /// The image of `(g₀, …, g_n)` is `[g₀⁻¹·Πgᵢ·g₀, [1, g₁, …, g_n]]`.
    pub forward_matches_formula: bool,
    pub round_trip_cyclic_bar: bool,
    pub round_trip_quotient: bool,
}

impl SimplicialReport {
    pub fn is_bijection(&self) -> bool {
        self.normal_forms_unique
            && self.forward_matches_formula
            && self.round_trip_cyclic_bar
            && self.round_trip_quotient
            && self.cyclic_bar_simplices == self.orbits
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Builds `S_x ×_G EG_n` as orbits of `S_x × G^{n+1}` under
/// `(g⁻¹sg, [g₀, …]) ≃ (s, [g·g₀, …])`, then checks that
/// `(g₀, …, g_n) ↦ [Πgᵢ, [g₀, …, g_n]]` and
/// `[s, [1, g₁, …, g_n]] ↦ ((g₁⋯g_n)⁻¹·s, g₁, …, g_n)` are mutually inverse.
pub fn prop_141_maps(model: &GroupModel, class: usize, n: usize) -> Result<SimplicialReport, HomologyError> {
    let f = finite(model, "prop_141_maps")?;
    if n > 2 {
        return Err(HomologyError::Degree { degree: n, range: "0..=2" });
    }
    let table = conj_classes(model)?;
    if class >= table.len() {
        return Err(HomologyError::UnknownClass(class));
    }
    let k = f.order();
    let basis = TupleBasis::new(k, n, usize::MAX)?;
    let s_x: Vec<u32> = (0..k as u32).filter(|&g| table.class_of_element(g) == class).collect();
    let s_pos: BTreeMap<u32, usize> = s_x.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let pair = |s: u32, t: usize| s_pos[&s] * basis.len() + t;

    let total = s_x.len() * basis.len();
    let mut parent: Vec<usize> = (0..total).collect();
    for &s in &s_x {
        for t in 0..basis.len() {
            let tuple = basis.decode(t);
            for g in 0..k as u32 {
                let sg = f.mul(f.mul(f.inv(g), s), g);
                let mut moved = tuple.clone();
                moved[0] = f.mul(g, tuple[0]);
                let (a, b) = (find(&mut parent, pair(sg, t)), find(&mut parent, pair(s, basis.encode(&moved))));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }

    // normal form of each orbit: its member with g₀ = 1
    let mut normal: BTreeMap<usize, Vec<(u32, usize)>> = BTreeMap::new();
    for &s in &s_x {
        for t in (0..basis.len()).filter(|&t| basis.decode(t)[0] == 0) {
            let root = find(&mut parent, pair(s, t));
            normal.entry(root).or_default().push((s, t));
        }
    }
    let roots: alloc::collections::BTreeSet<usize> = (0..total).map(|p| find(&mut parent, p)).collect();
    let normal_forms_unique = roots.len() == normal.len() && normal.values().all(|v| v.len() == 1);

    let forward = |parent: &mut [usize], t: &[u32]| -> Option<(u32, usize)> {
        let p = product(f, t);
        let root = find(parent, pair(p, basis.encode(t)));
        normal.get(&root).and_then(|v| v.first().copied())
    };
    let backward = |s: u32, t: usize| -> Vec<u32> {
        let mut tuple = basis.decode(t);
        let tail = product(f, &tuple[1..]);
        tuple[0] = f.mul(f.inv(tail), s);
        tuple
    };

    let mut simplices = 0;
    let mut forward_matches_formula = true;
    let mut round_trip_cyclic_bar = true;
    for t in basis.tuples().filter(|t| table.class_of_element(product(f, t)) == class) {
        simplices += 1;
        let Some((s, u)) = forward(&mut parent, &t) else {
            forward_matches_formula = false;
            continue;
        };
        let g0 = t[0];
        let mut expected = t.clone();
        expected[0] = 0;
        if s != f.mul(f.mul(f.inv(g0), product(f, &t)), g0) || u != basis.encode(&expected) {
            forward_matches_formula = false;
        }
        round_trip_cyclic_bar &= backward(s, u) == t;
    }
    let round_trip_quotient = normal
        .values()
        .filter_map(|v| v.first())
        .all(|&(s, u)| {
            let t = backward(s, u);
            table.class_of_element(product(f, &t)) == class && forward(&mut parent, &t) == Some((s, u))
        });

    Ok(SimplicialReport {
        class,
        representative: describe(model, s_x[0]),
        degree: n,
        cyclic_bar_simplices: simplices,
        pairs: total,
        orbits: roots.len(),
        normal_forms_unique,
        forward_matches_formula,
        round_trip_cyclic_bar,
        round_trip_quotient,
    })
}
