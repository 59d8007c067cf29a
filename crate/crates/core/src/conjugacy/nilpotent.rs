use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::group::{Element, GroupModel, NilpotentModel};
use crate::linalg::solve_integer_system;

use super::{verified, Certificate, ConjugacyError, ConjugacyResult};

/// `A·z = rhs` over the integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerLinearSystem {
    pub a: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
}

impl IntegerLinearSystem {
    pub fn unknowns(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    pub fn is_satisfied_by(&self, z: &[i64]) -> bool {
        self.a.iter().zip(&self.rhs).all(|(row, b)| row.iter().zip(z).map(|(x, y)| x * y).sum::<i64>() == *b)
    }
}

/// The system for a conjugator with abelian part `z` taking `u = (x, c_u)`
/// to `v = (x, c_v)`. Conjugation by `(z, w)` adds `q(x,z) − q(z,x)` to the
/// central part, so row `t` holds `q_t(x, e_k) − q_t(e_k, x)` and the
/// right side is `c_v − c_u`.
pub fn central_system(n: &NilpotentModel, x: &[i64], c_u: &[i64], c_v: &[i64]) -> IntegerLinearSystem {
    let m = n.m();
    let mut a = vec![vec![0i64; m]; n.n()];
    for k in 0..m {
        let mut e = vec![0i64; m];
        e[k] = 1;
        let fwd = n.cocycle(x, &e);
        let back = n.cocycle(&e, x);
        for t in 0..n.n() {
            a[t][k] = fwd[t] - back[t];
        }
    }
    let rhs = c_v.iter().zip(c_u).map(|(v, u)| v - u).collect();
    IntegerLinearSystem { a, rhs }
}

fn l1(z: &[i64]) -> i64 {
    z.iter().map(|x| x.abs()).sum()
}

/// Greedy shortening by integer multiples of kernel vectors: repeatedly
/// apply the single `±t·k` that most reduces `|z|₁`.
fn reduce_by_kernel(mut z: Vec<i64>, kernel: &[Vec<i64>]) -> Vec<i64> {
    loop {
        let mut best: Option<Vec<i64>> = None;
        let mut best_norm = l1(&z);
        for k in kernel {
            let scale = l1(k).max(1);
            let reach = l1(&z) / scale + 1;
            for t in -reach..=reach {
                if t == 0 {
                    continue;
                }
                let cand: Vec<i64> = z.iter().zip(k).map(|(a, b)| a + t * b).collect();
                let nrm = l1(&cand);
                if nrm < best_norm {
                    best_norm = nrm;
                    best = Some(cand);
                }
            }
        }
        match best {
            Some(c) => z = c,
            None => return z,
        }
    }
}

/// Exact decider for torsion-free two-step nilpotent groups: equal abelian
/// parts, then an integer solution of [`central_system`] via Smith normal
/// form. The witness is `(z, 0)` with `z` shortened along the kernel.
pub fn nilpotent_conjugator(model: &GroupModel, u: &Element, v: &Element) -> Result<ConjugacyResult, ConjugacyError> {
    let Some(n) = model.as_nilpotent() else {
        return Err(ConjugacyError::WrongModel {
            operation: "nilpotent_conjugator",
            expected: "two-step nilpotent",
            got: model.kind(),
        });
    };
    model.multiply(u, v)?;
    let (Element::Nilpotent { a: xu, c: cu }, Element::Nilpotent { a: xv, c: cv }) = (u, v) else {
        unreachable!("checked nilpotent elements")
    };
    if xu != xv {
        return Ok(ConjugacyResult::not_conjugate(Certificate::Abelianization));
    }
    let sys = central_system(n, xu, cu, cv);
    let Some(sol) = solve_integer_system(&sys.a, &sys.rhs, n.m()) else {
        return Ok(ConjugacyResult::not_conjugate(Certificate::CentralSystem));
    };
    let z = reduce_by_kernel(sol.particular, &sol.kernel);
    debug_assert!(sys.is_satisfied_by(&z));
    let g = Element::Nilpotent { a: z, c: vec![0; n.n()] };
    Ok(verified(model, u, v, g, None))
}
