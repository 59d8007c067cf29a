use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::group::{Ball, Element, GroupModel, DEFAULT_BALL_CAP};

use super::{
    brute_force_in_ball, cheap_certificate, free_group_conjugacy, nilpotent_conjugator, ConjugacyError,
    ConjugacyResult,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    /// The exact solver for the model when there is one, else brute force.
    #[default]
    Auto,
    Brute,
    Nilpotent,
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProfileOptions {
    /// Conjugators are searched in the ball of radius `2·radius + slack`.
    pub slack: u32,
    /// Largest acceptable multiplier `A` in `A·(1 + L)^d`.
    #[serde(with = "crate::rational_serde")]
    pub a_cap: BigRational,
    pub max_degree: u32,
    pub ball_cap: usize,
    pub solver: Solver,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            slack: 2,
            a_cap: BigRational::one(),
            max_degree: 6,
            ball_cap: DEFAULT_BALL_CAP,
            solver: Solver::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub u_index: usize,
    pub v_index: usize,
    pub u: Element,
    pub v: Element,
    /// `L(u) + L(v)`.
    pub input_length: u32,
    pub min_conjugator_length: u32,
    /// A shortest conjugator, verified.
    pub witness: Element,
    /// The earliest ball element in the class of `u`.
    pub class_rep: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownPair {
    pub u_index: usize,
    pub v_index: usize,
    pub u: Element,
    pub v: Element,
    pub input_length: u32,
    /// Either a conjugator found by an exact solver beyond the search radius,
    /// or none when conjugacy is undecided.
    pub witness: Option<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundFit {
    pub degree: u32,
    /// Least `A` with `min_length ≤ A·(1 + input_length)^degree` on every record.
    #[serde(with = "crate::rational_serde")]
    pub a: BigRational,
    pub within_cap: bool,
    /// Re-checked exactly over all records.
    pub dominates_all: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub radius: u32,
    pub search_radius: u32,
    pub records: Vec<ProfileRecord>,
    pub unknown: Vec<UnknownPair>,
    pub fit: BoundFit,
}

/// For `u = small[ui]`, the shortest `g` in `big` (breadth-first order)
/// with `g⁻¹ug = v` for each `v` in `small`: entries `(v_index, length,
/// big_index)` sorted by `v_index`.
pub fn min_conjugator_row(model: &GroupModel, small: &Ball, big: &Ball, ui: usize) -> Vec<(usize, u32, usize)> {
    let u = small.element(ui);
    let mut seen = alloc::vec![false; small.len()];
    let mut row = Vec::new();
    for (gi, g) in big.elements().iter().enumerate() {
        let w = model.conjugate(u, g);
        if let Some(j) = small.index_of(&w) {
            if !seen[j] {
                seen[j] = true;
                row.push((j, big.length(gi), gi));
            }
        }
    }
    row.sort_unstable();
    row
}

fn decide(model: &GroupModel, solver: Solver, full: Option<&Ball>, u: &Element, v: &Element) -> Result<ConjugacyResult, ConjugacyError> {
    let solver = match (solver, model) {
        (Solver::Auto, GroupModel::Free { .. }) => Solver::Free,
        (Solver::Auto, GroupModel::TwoStepNilpotent(_)) => Solver::Nilpotent,
        (s, _) => s,
    };
    match solver {
        Solver::Free => free_group_conjugacy(model, u, v),
        Solver::Nilpotent => nilpotent_conjugator(model, u, v),
        Solver::Auto | Solver::Brute => match full {
            Some(ball) => brute_force_in_ball(model, ball, u, v),
            None => Ok(match cheap_certificate(model, u, v)? {
                Some(c) => ConjugacyResult::not_conjugate(c),
                None => ConjugacyResult::unknown(0),
            }),
        },
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Builds the profile from per-`u` rows of [`min_conjugator_row`] given in
/// `u_index` order. Pairs not met by the search are settled by `solver`;
/// those it finds conjugate, or cannot decide, are listed as unknown.
pub fn assemble_profile(
    model: &GroupModel,
    small: &Ball,
    big: &Ball,
    rows: &[Vec<(usize, u32, usize)>],
    opts: &ProfileOptions,
) -> Result<Profile, ConjugacyError> {
    let n = small.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for (ui, row) in rows.iter().enumerate() {
        for &(vj, _, _) in row {
            let (a, b) = (find(&mut parent, ui), find(&mut parent, vj));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let rep: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();

    let full_finite = match model.as_finite() {
        Some(f) => Some(Ball::build(model, f.order() as u32, opts.ball_cap)?),
        None => None,
    };
    let mut records = Vec::new();
    let mut unknown = Vec::new();
    for (ui, row) in rows.iter().enumerate() {
        let u = small.element(ui);
        let mut found = alloc::vec![false; n];
        for &(vj, len, gi) in row {
            found[vj] = true;
            records.push(ProfileRecord {
                u_index: ui,
                v_index: vj,
                u: u.clone(),
                v: small.element(vj).clone(),
                input_length: small.length(ui) + small.length(vj),
                min_conjugator_length: len,
                witness: big.element(gi).clone(),
                class_rep: small.element(rep[ui]).clone(),
            });
        }
        for vj in (0..n).filter(|&j| !found[j]) {
            let v = small.element(vj);
            let res = decide(model, opts.solver, full_finite.as_ref(), u, v)?;
            if res.is_not_conjugate() {
                continue;
            }
            unknown.push(UnknownPair {
                u_index: ui,
                v_index: vj,
                u: u.clone(),
                v: v.clone(),
                input_length: small.length(ui) + small.length(vj),
                witness: res.witness().cloned(),
            });
        }
    }
    records.sort_by_key(|r| (r.input_length, r.u_index, r.v_index));
    unknown.sort_by_key(|r| (r.input_length, r.u_index, r.v_index));
    let fit = fit_bound(
        records.iter().map(|r| (r.input_length, r.min_conjugator_length)),
        &opts.a_cap,
        opts.max_degree,
    );
    Ok(Profile { radius: small.radius(), search_radius: big.radius(), records, unknown, fit })
}

/// Least degree `d ≤ max_degree` whose optimal multiplier
/// `A_d = max m / (1 + L)^d` is at most `a_cap`; falls back to `max_degree`
/// with `within_cap = false`.
pub fn fit_bound<I: IntoIterator<Item = (u32, u32)> + Clone>(data: I, a_cap: &BigRational, max_degree: u32) -> BoundFit {
    let a_for = |d: u32| {
        data.clone().into_iter().fold(BigRational::zero(), |acc, (l, m)| {
            let denom = num_traits::pow(BigInt::from(l) + 1, d as usize);
            acc.max(BigRational::new(BigInt::from(m), denom))
        })
    };
    let dominated = |d: u32, a: &BigRational| {
        data.clone().into_iter().all(|(l, m)| {
            BigRational::from_integer(BigInt::from(m)) <= a * num_traits::pow(BigRational::from_integer(BigInt::from(l) + 1), d as usize)
        })
    };
    for d in 0..=max_degree {
        let a = a_for(d);
        if a <= *a_cap {
            let dominates_all = dominated(d, &a);
            return BoundFit { degree: d, a, within_cap: true, dominates_all };
        }
    }
    let a = a_for(max_degree);
    let dominates_all = dominated(max_degree, &a);
    BoundFit { degree: max_degree, a, within_cap: false, dominates_all }
}

/// Profiles every pair in the radius-`radius` ball: the shortest conjugator
/// within radius `2·radius + slack` for each conjugate pair, and a fitted
/// polynomial bound `A·(1 + L)^d` dominating all of them.
pub fn profile_conjugacy_bound(model: &GroupModel, radius: u32, opts: &ProfileOptions) -> Result<Profile, ConjugacyError> {
    let small = Ball::build(model, radius, opts.ball_cap)?;
    let big = Ball::build(model, 2 * radius + opts.slack, opts.ball_cap)?;
    let rows: Vec<_> = (0..small.len()).map(|ui| min_conjugator_row(model, &small, &big, ui)).collect();
    assemble_profile(model, &small, &big, &rows, opts)
}

