//! Conjugacy deciders: a ball-scan oracle, bound-driven search, exact
//! solvers for free and two-step nilpotent groups, element classification
//! in free products, centralizers, and an empirical conjugator-length
//! profiler.

use alloc::string::String;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Ball, Element, GroupError, GroupModel, Length};
use crate::rdalgebra::BoundingFunction;

mod classify;
mod free;
mod nilpotent;
mod profile;

pub use classify::{centralizer_generators, centralizer_generators_in_ball, classify_element, ElementClass};
pub use free::free_group_conjugacy;
pub use nilpotent::{central_system, nilpotent_conjugator, IntegerLinearSystem};
pub use profile::{
    assemble_profile, fit_bound, min_conjugator_row, profile_conjugacy_bound, BoundFit, Profile, ProfileOptions,
    ProfileRecord, Solver, UnknownPair,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConjugacyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{operation} needs a {expected} model, got {got}")]
    WrongModel { operation: &'static str, expected: &'static str, got: &'static str },
    #[error("length of {element} not determined within radius {cap}")]
    LengthCap { element: String, cap: u32 },
    #[error("search radius {0} is not representable")]
    RadiusOverflow(String),
}

/// Why a pair was declared non-conjugate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Images in the abelianization differ.
    Abelianization,
    /// Element orders differ.
    Order,
    /// The ball is the whole (finite) group.
    ExhaustedFiniteGroup,
    /// Cyclic reductions are not rotations of each other.
    CyclicWord,
    /// The central linear system has no integer solution.
    CentralSystem,
    /// The bounding function dominates a proven conjugator-length bound, so
    /// an exhausted search radius is conclusive.
    TheoryBacked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConjugacyStatus {
    Conjugate { witness: Element },
    NotConjugate { certificate: Certificate },
    Unknown { searched_radius: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyResult {
    #[serde(flatten)]
    pub status: ConjugacyStatus,
    /// Word length of the witness, when conjugate and known.
    pub witness_length: Option<u32>,
}

impl ConjugacyResult {
    pub fn not_conjugate(certificate: Certificate) -> Self {
        ConjugacyResult { status: ConjugacyStatus::NotConjugate { certificate }, witness_length: None }
    }

    pub fn unknown(searched_radius: u32) -> Self {
        ConjugacyResult { status: ConjugacyStatus::Unknown { searched_radius }, witness_length: None }
    }

    pub fn witness(&self) -> Option<&Element> {
        match &self.status {
            ConjugacyStatus::Conjugate { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn is_conjugate(&self) -> bool {
        self.witness().is_some()
    }

    pub fn is_not_conjugate(&self) -> bool {
        matches!(self.status, ConjugacyStatus::NotConjugate { .. })
    }
}

/// `g⁻¹ug = v`, checked as `ug = gv`.
pub fn is_witness(model: &GroupModel, u: &Element, v: &Element, g: &Element) -> bool {
    model.mul(u, g) == model.mul(g, v)
}

/// Packages a witness after re-verifying it.
///
/// # Panics
/// If `g` does not conjugate `u` to `v`; solvers only call this with
/// witnesses they have constructed.
pub(crate) fn verified(model: &GroupModel, u: &Element, v: &Element, g: Element, length: Option<u32>) -> ConjugacyResult {
    assert!(is_witness(model, u, v, &g), "constructed conjugator {g} fails verification");
    ConjugacyResult { status: ConjugacyStatus::Conjugate { witness: g }, witness_length: length }
}

fn exact_length(model: &GroupModel, a: &Element, cap: u32) -> Result<u32, ConjugacyError> {
    match model.word_length(a, cap)? {
        Length::Exact(l) => Ok(l),
        Length::AtLeast(_) => Err(ConjugacyError::LengthCap { element: alloc::format!("{a}"), cap }),
    }
}

/// Certificates that need no search.
pub(crate) fn cheap_certificate(model: &GroupModel, u: &Element, v: &Element) -> Result<Option<Certificate>, ConjugacyError> {
    if let (Some(x), Some(y)) = (model.abelianization(u), model.abelianization(v)) {
        if x != y {
            return Ok(Some(Certificate::Abelianization));
        }
    }
    let (ou, ov) = (model.is_torsion(u)?, model.is_torsion(v)?);
    if ou != ov {
        return Ok(Some(Certificate::Order));
    }
    Ok(None)
}

/// Scans a prebuilt ball in breadth-first order for the first `g` with
/// `g⁻¹ug = v`, which therefore has minimal length.
pub fn brute_force_in_ball(model: &GroupModel, ball: &Ball, u: &Element, v: &Element) -> Result<ConjugacyResult, ConjugacyError> {
    if !model.contains(u) || !model.contains(v) {
        model.multiply(u, v)?;
    }
    if let Some(c) = cheap_certificate(model, u, v)? {
        return Ok(ConjugacyResult::not_conjugate(c));
    }
    if let Some(i) = ball.elements().iter().position(|g| is_witness(model, u, v, g)) {
        return Ok(verified(model, u, v, ball.element(i).clone(), Some(ball.length(i))));
    }
    if model.as_finite().is_some_and(|f| f.order() == ball.len()) {
        return Ok(ConjugacyResult::not_conjugate(Certificate::ExhaustedFiniteGroup));
    }
    Ok(ConjugacyResult::unknown(ball.radius()))
}

/// Ball-scan oracle: the minimal-length conjugator within `radius`, a
/// certificate, or `Unknown`.
pub fn brute_force_conjugator(
    model: &GroupModel,
    u: &Element,
    v: &Element,
    radius: u32,
    ball_cap: usize,
) -> Result<ConjugacyResult, ConjugacyError> {
    model.multiply(u, v)?;
    if let Some(c) = cheap_certificate(model, u, v)? {
        return Ok(ConjugacyResult::not_conjugate(c));
    }
    let ball = Ball::build(model, radius, ball_cap)?;
    brute_force_in_ball(model, &ball, u, v)
}

/// Search radius `⌈f(L(u) + L(v))⌉`.
pub fn bounded_radius(
    model: &GroupModel,
    u: &Element,
    v: &Element,
    bound: &BoundingFunction,
    length_cap: u32,
) -> Result<u32, ConjugacyError> {
    let l = exact_length(model, u, length_cap)? + exact_length(model, v, length_cap)?;
    let x = num_rational::BigRational::from_integer(l.into());
    let r = match bound.eval_exact(&x) {
        Some(y) => {
            let (q, rem) = y.numer().div_rem(y.denom());
            if rem.is_zero() { q } else { q + 1u32 }.to_u32()
        }
        None => {
            let y = libm::ceil(bound.eval_f64(f64::from(l)));
            (y.is_finite() && y >= 0.0 && y <= f64::from(u32::MAX)).then_some(y as u32)
        }
    };
    r.ok_or_else(|| ConjugacyError::RadiusOverflow(alloc::format!("{bound} at {l}")))
}

/// Whether `bound` is structurally at least `x`, which for free groups
/// dominates the proven conjugator bound `L(u) + L(v)`.
fn theory_backed(model: &GroupModel, bound: &BoundingFunction) -> bool {
    matches!(model, GroupModel::Free { .. }) && bound.dominates_identity()
}

/// [`brute_force_conjugator`] at radius `⌈f(L(u) + L(v))⌉`. For free groups
/// with `f(x) ≥ x` an exhausted search is a proof of non-conjugacy.
pub fn bounded_conjugacy(
    model: &GroupModel,
    u: &Element,
    v: &Element,
    bound: &BoundingFunction,
    length_cap: u32,
    ball_cap: usize,
) -> Result<ConjugacyResult, ConjugacyError> {
    model.multiply(u, v)?;
    let radius = bounded_radius(model, u, v, bound, length_cap)?;
    let res = brute_force_conjugator(model, u, v, radius, ball_cap)?;
    if matches!(res.status, ConjugacyStatus::Unknown { .. }) && theory_backed(model, bound) {
        return Ok(ConjugacyResult::not_conjugate(Certificate::TheoryBacked));
    }
    Ok(res)
}
