use crate::group::{Element, GroupModel, Word};

use super::{verified, Certificate, ConjugacyError, ConjugacyResult};

/// Cyclic-reduction decider for free groups. With `u = p·u′·p⁻¹` and
/// `v = q·v′·q⁻¹` cyclically reduced, `u ~ v` iff `v′` is a rotation of `u′`;
/// the witness `p·r·q⁻¹` uses the shorter of the two rotation conjugators
/// over every matching rotation, and has length at most `L(u) + L(v)`.
pub fn free_group_conjugacy(model: &GroupModel, u: &Element, v: &Element) -> Result<ConjugacyResult, ConjugacyError> {
    let GroupModel::Free { .. } = model else {
        return Err(ConjugacyError::WrongModel { operation: "free_group_conjugacy", expected: "free", got: model.kind() });
    };
    model.multiply(u, v)?;
    let (Some(uw), Some(vw)) = (u.as_word(), v.as_word()) else {
        unreachable!("checked free-group elements are words")
    };
    let (p, cu) = uw.cyclic_reduction();
    let (q, cv) = vw.cyclic_reduction();
    if cu.len() != cv.len() {
        return Ok(ConjugacyResult::not_conjugate(Certificate::CyclicWord));
    }
    let n = cu.len();
    // cu = x·y with |x| = k and cv = y·x: conjugators x or y⁻¹
    let best = (0..n.max(1))
        .filter(|&k| cu.rotate(k) == cv)
        .map(|k| {
            let (x, y) = (cu.prefix(k), cu.suffix(k));
            if x.len() <= y.len() {
                x
            } else {
                y.inverse()
            }
        })
        .min_by_key(Word::len);
    let Some(r) = best else {
        return Ok(ConjugacyResult::not_conjugate(Certificate::CyclicWord));
    };
    let g = p.concat(&r).concat(&q.inverse());
    let len = g.len() as u32;
    Ok(verified(model, u, v, Element::Free(g), Some(len)))
}
