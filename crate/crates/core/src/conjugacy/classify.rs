use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::group::{Ball, Element, GroupModel};

use super::ConjugacyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ElementClass {
    Identity,
    Hyperbolic,
    /// `witness⁻¹ · u · witness = core` lies in factor `factor`.
    Parabolic { factor: usize, witness: Element, core: Element },
}

/// Parabolic iff the cyclic syllable reduction is a single syllable.
pub fn classify_element(model: &GroupModel, u: &Element) -> Result<ElementClass, ConjugacyError> {
    if model.factors().is_none() {
        return Err(ConjugacyError::WrongModel { operation: "classify_element", expected: "free product", got: model.kind() });
    }
    model.multiply(u, u)?;
    if model.is_identity(u) {
        return Ok(ElementClass::Identity);
    }
    let (p, core) = model.cyclic_syllable_reduction(u);
    match core.syllables() {
        Some([s]) => {
            let factor = s.factor;
            debug_assert_eq!(model.conjugate(u, &p), core);
            Ok(ElementClass::Parabolic { factor, witness: p, core })
        }
        _ => Ok(ElementClass::Hyperbolic),
    }
}

/// Elements of `members` reachable from the identity by right
/// multiplication with `gens` and their inverses, staying inside `members`.
fn closure_within(model: &GroupModel, members: &BTreeSet<Element>, gens: &[Element]) -> BTreeSet<Element> {
    let steps: Vec<Element> = gens.iter().flat_map(|g| [g.clone(), model.inv(g)]).collect();
    let id = model.identity();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in &steps {
            let y = model.mul(&x, s);
            if members.contains(&y) && !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Generators for the centralizer of `h`. Free groups return the primitive
/// root of `h`; otherwise the ball elements commuting with `h` are thinned
/// greedily, in breadth-first order, to those not already reachable from
/// the kept ones inside the ball. For a finite group whose ball is the whole
/// group this generates the centralizer exactly.
pub fn centralizer_generators_in_ball(model: &GroupModel, h: &Element, ball: &Ball) -> Result<Vec<Element>, ConjugacyError> {
    model.multiply(h, h)?;
    if model.is_identity(h) {
        return Ok(model.positive_generators());
    }
    if let (GroupModel::Free { .. }, Element::Free(w)) = (model, h) {
        return Ok(vec![Element::Free(w.root().0)]);
    }
    let members: BTreeSet<Element> = ball.elements().iter().filter(|g| model.commutes(g, h)).cloned().collect();
    let mut gens: Vec<Element> = Vec::new();
    let mut reached = closure_within(model, &members, &gens);
    for g in ball.elements() {
        if members.contains(g) && !reached.contains(g) {
            gens.push(g.clone());
            reached = closure_within(model, &members, &gens);
        }
    }
    Ok(gens)
}

/// [`centralizer_generators_in_ball`] over the ball of radius `radius`.
pub fn centralizer_generators(
    model: &GroupModel,
    h: &Element,
    radius: u32,
    ball_cap: usize,
) -> Result<Vec<Element>, ConjugacyError> {
    model.multiply(h, h)?;
    if model.is_identity(h) || matches!(model, GroupModel::Free { .. }) {
        return centralizer_generators_in_ball(model, h, &Ball::build(model, 0, ball_cap)?);
    }
    centralizer_generators_in_ball(model, h, &Ball::build(model, radius, ball_cap)?)
}
