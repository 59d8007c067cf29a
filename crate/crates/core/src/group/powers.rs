use super::{Element, GroupModel};

impl GroupModel {
    /// An exponent `j` with `hʲ = x`, if one exists. For torsion `h` the least
    /// nonnegative one is returned.
    pub fn power_exponent(&self, h: &Element, x: &Element) -> Option<i64> {
        if self.is_identity(x) {
            return Some(0);
        }
        if self.is_identity(h) {
            return None;
        }
        let j = match (self, h, x) {
            (GroupModel::Free { .. }, Element::Free(hw), Element::Free(xw)) => {
                let (rh, mh) = hw.root();
                let (rx, jx) = xw.root();
                if jx % mh != 0 {
                    return None;
                }
                let q = i64::from(jx / mh);
                if rx == rh {
                    q
                } else if rx == rh.inverse() {
                    -q
                } else {
                    return None;
                }
            }
            (GroupModel::FreeAbelian { .. }, Element::Abelian(hv), Element::Abelian(xv)) => ratio(hv, xv)?,
            (GroupModel::TwoStepNilpotent(_), Element::Nilpotent { a: ha, c: hc }, Element::Nilpotent { a: xa, c: xc }) => {
                if ha.iter().any(|&v| v != 0) {
                    ratio(ha, xa)?
                } else if xa.iter().any(|&v| v != 0) {
                    return None;
                } else {
                    ratio(hc, xc)?
                }
            }
            (GroupModel::Finite(f), Element::Finite(hi), Element::Finite(xi)) => {
                let mut y = *hi;
                let mut k = 1i64;
                while y != 0 {
                    if y == *xi {
                        return Some(k);
                    }
                    y = f.mul(y, *hi);
                    k += 1;
                }
                return None;
            }
            (GroupModel::FreeProduct { factors }, Element::Product(_), Element::Product(_)) => {
                let (p, core) = self.cyclic_syllable_reduction(h);
                let xr = self.mul(&self.mul(&self.inv(&p), x), &p);
                let cs = core.syllables().expect("product element");
                let xs = xr.syllables().expect("product element");
                if let [single] = cs {
                    return match xs {
                        [y] if y.factor == single.factor => {
                            factors[single.factor].power_exponent(&single.element, &y.element)
                        }
                        _ => None,
                    };
                }
                if xs.len() % cs.len() != 0 {
                    return None;
                }
                let q = (xs.len() / cs.len()) as i64;
                if self.pow(&core, q) == xr {
                    return Some(q);
                }
                -q
            }
            _ => return None,
        };
        (self.pow(h, j) == *x).then_some(j)
    }
}

/// `j` with `j·h = x` coordinatewise.
fn ratio(h: &[i64], x: &[i64]) -> Option<i64> {
    let i = h.iter().position(|&v| v != 0)?;
    if x[i] % h[i] != 0 {
        return None;
    }
    let j = x[i] / h[i];
    h.iter().zip(x).all(|(&a, &b)| a * j == b).then_some(j)
}
