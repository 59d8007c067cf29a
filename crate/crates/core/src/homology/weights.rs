use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::group::{Ball, Element, GroupModel};

use super::HomologyError;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub radius: u32,
    pub n_max: usize,
    pub simplices: usize,
    pub face_checks: usize,
    /// Faces that increased the weight.
    pub face_violations: usize,
    pub degeneracy_checks: usize,
    /// Degeneracies that changed the weight.
    pub degeneracy_violations: usize,
}

impl WeightReport {
    pub fn holds(&self) -> bool {
        self.face_violations == 0 && self.degeneracy_violations == 0
    }
}

fn insert_unit(t: &[usize], j: usize, unit: usize) -> Vec<usize> {
    let mut out = t.to_vec();
    out.insert(j + 1, unit);
    out
}

/// Checks that faces never raise and degeneracies preserve the weight
/// `Σ L(gᵢ)` on the cyclic bar construction and on the bar resolution, for
/// every tuple of length `≤ n_max + 1` with entries in the ball of radius
/// `radius`.
pub fn weight_check(model: &GroupModel, radius: u32, n_max: usize, ball_cap: usize) -> Result<WeightReport, HomologyError> {
    let small = Ball::build(model, radius, ball_cap)?;
    let big = Ball::build(model, 2 * radius, ball_cap)?;
    let idx = |g: &Element| big.index_of(g).expect("products of two ball elements lie in the doubled ball");
    let entries: Vec<usize> = small.elements().iter().map(idx).collect();
    let unit = idx(&model.identity());
    let mul = |a: usize, b: usize| idx(&model.mul(big.element(a), big.element(b)));
    let weight = |t: &[usize]| t.iter().map(|&g| big.length(g) as u64).sum::<u64>();

    let mut report = WeightReport { radius, n_max, ..WeightReport::default() };
    for n in 0..=n_max {
        let count = entries.len().pow(n as u32 + 1);
        for code in 0..count {
            let t: Vec<usize> = (0..=n).rev().map(|p| entries[code / entries.len().pow(p as u32) % entries.len()]).collect();
            let w = weight(&t);
            report.simplices += 1;
            let mut faces: Vec<Vec<usize>> = Vec::new();
            if n >= 1 {
                for i in 0..n {
                    let mut u = t[..i].to_vec();
                    u.push(mul(t[i], t[i + 1]));
                    u.extend_from_slice(&t[i + 2..]);
                    faces.push(u);
                }
                // cyclic bar: last face wraps around; bar resolution: drop
                let mut wrap = alloc::vec![mul(t[n], t[0])];
                wrap.extend_from_slice(&t[1..n]);
                faces.push(wrap);
                faces.push(t[..n].to_vec());
            }
            report.face_checks += faces.len();
            report.face_violations += faces.iter().filter(|u| weight(u) > w).count();
            for j in 0..=n {
                report.degeneracy_checks += 1;
                if weight(&insert_unit(&t, j, unit)) != w {
                    report.degeneracy_violations += 1;
                }
            }
        }
    }
    Ok(report)
}
