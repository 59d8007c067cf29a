use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{BoundingFunction, RdError};
use crate::group::{Element, GroupModel, Length};

pub type Coefficient = Complex<BigRational>;

/// A nonnegative real that stays exact while it can.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Real {
    Exact(#[serde(with = "crate::rational_serde")] BigRational),
    Float(f64),
}

/// Comparisons involving a float are slackened by this relative amount.
pub const FLOAT_SLACK: f64 = 1e-9;

impl Real {
    pub fn zero() -> Self {
        Real::Exact(BigRational::zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => q.to_f64().unwrap_or(f64::INFINITY),
            Real::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn add(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a + b),
            _ => Real::Float(self.to_f64() + other.to_f64()),
        }
    }

    pub fn mul(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a * b),
            _ => Real::Float(self.to_f64() * other.to_f64()),
        }
    }

    /// `self ≤ other`, exactly for two exact values and with
    /// [`FLOAT_SLACK`] otherwise.
    pub fn le_slack(&self, other: &Real) -> bool {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a <= b,
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                a <= b + FLOAT_SLACK * b.abs().max(1.0)
            }
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(q) => write!(f, "{q}"),
            Real::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Modulus of a complex rational: exact when the value lies on an axis.
pub fn modulus(z: &Coefficient) -> Real {
    if z.im.is_zero() {
        Real::Exact(num_traits::abs(z.re.clone()))
    } else if z.re.is_zero() {
        Real::Exact(num_traits::abs(z.im.clone()))
    } else {
        let (re, im) = (z.re.to_f64().unwrap_or(f64::INFINITY), z.im.to_f64().unwrap_or(f64::INFINITY));
        Real::Float(libm::hypot(re, im))
    }
}

/// A finitely supported complex function on the group, i.e. an element
/// `Σ λ_g g` of the group algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportedVector<'m> {
    model: &'m GroupModel,
    coeffs: BTreeMap<Element, Coefficient>,
}

impl<'m> SupportedVector<'m> {
    pub fn zero(model: &'m GroupModel) -> Self {
        SupportedVector { model, coeffs: BTreeMap::new() }
    }

    /// `c·δ_g`.
    pub fn delta(model: &'m GroupModel, g: Element, c: Coefficient) -> Result<Self, RdError> {
        let mut v = SupportedVector::zero(model);
        v.add_term(g, c)?;
        Ok(v)
    }

    pub fn from_terms<I>(model: &'m GroupModel, terms: I) -> Result<Self, RdError>
    where
        I: IntoIterator<Item = (Element, Coefficient)>,
    {
        let mut v = SupportedVector::zero(model);
        for (g, c) in terms {
            v.add_term(g, c)?;
        }
        Ok(v)
    }

    pub fn model(&self) -> &'m GroupModel {
        self.model
    }

    /// Adds `c·δ_g`, dropping the entry if it cancels.
    pub fn add_term(&mut self, g: Element, c: Coefficient) -> Result<(), RdError> {
        if !self.model.contains(&g) {
            return Err(RdError::ModelMismatch(format!("{g} is not in the ambient group")));
        }
        add_into(&mut self.coeffs, g, c);
        Ok(())
    }

    pub fn coefficient(&self, g: &Element) -> Coefficient {
        self.coeffs.get(g).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.coeffs.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Element, &Coefficient)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_model(&self, other: &Self) -> Result<(), RdError> {
        if core::ptr::eq(self.model, other.model) || self.model == other.model {
            Ok(())
        } else {
            Err(RdError::ModelMismatch(format!("{} and {} vectors", self.model.kind(), other.model.kind())))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RdError> {
        self.same_model(other)?;
        let mut coeffs = self.coeffs.clone();
        for (g, c) in &other.coeffs {
            add_into(&mut coeffs, g.clone(), c.clone());
        }
        Ok(SupportedVector { model: self.model, coeffs })
    }

    pub fn scale(&self, k: &Coefficient) -> Self {
        let coeffs = if k.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(g, c)| (g.clone(), c * k)).collect()
        };
        SupportedVector { model: self.model, coeffs }
    }

    /// Group-algebra product: the coefficient of `g` is `Σ_{g₁g₂=g} a(g₁)b(g₂)`.
    pub fn convolve(&self, other: &Self) -> Result<Self, RdError> {
        self.same_model(other)?;
        let mut coeffs = BTreeMap::new();
        for (g1, c1) in &self.coeffs {
            for (g2, c2) in &other.coeffs {
                add_into(&mut coeffs, self.model.mul(g1, g2), c1 * c2);
            }
        }
        Ok(SupportedVector { model: self.model, coeffs })
    }

    /// Word lengths of the support, in support order.
    pub fn support_lengths(&self, length_cap: u32) -> Result<Vec<u32>, RdError> {
        self.coeffs
            .keys()
            .map(|g| match self.model.word_length(g, length_cap)? {
                Length::Exact(l) => Ok(l),
                Length::AtLeast(_) => Err(RdError::LengthCap { element: format!("{g}"), cap: length_cap }),
            })
            .collect()
    }

    /// `|φ|_f = Σ |φ(g)| f(L(g))`.
    pub fn seminorm(&self, f: &BoundingFunction, length_cap: u32) -> Result<Real, RdError> {
        let lengths = self.support_lengths(length_cap)?;
        Ok(self.seminorm_with_lengths(f, &lengths))
    }

    fn seminorm_with_lengths(&self, f: &BoundingFunction, lengths: &[u32]) -> Real {
        self.coeffs.values().zip(lengths).fold(Real::zero(), |acc, (c, &l)| {
            let fl = f
                .eval_exact(&BigRational::from_integer(l.into()))
                .map_or_else(|| Real::Float(f.eval_f64(f64::from(l))), Real::Exact);
            acc.add(&modulus(c).mul(&fl))
        })
    }

    /// Plain `ℓ¹` norm.
    pub fn l1_norm(&self) -> Real {
        self.coeffs.values().fold(Real::zero(), |acc, c| acc.add(&modulus(c)))
    }
}

fn add_into(map: &mut BTreeMap<Element, Coefficient>, g: Element, c: Coefficient) {
    if c.is_zero() {
        return;
    }
    match map.entry(g) {
        alloc::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductEstimate {
    pub lhs: Real,
    pub rhs: Real,
    pub holds: bool,
}

/// `|a*b|_f ≤ |a|₁|b|_{f₂} + |a|_{f₂}|b|₁` with `f₂ = f2_of(f)`.
pub fn check_product_estimate(
    a: &SupportedVector<'_>,
    b: &SupportedVector<'_>,
    f: &BoundingFunction,
    length_cap: u32,
) -> Result<ProductEstimate, RdError> {
    let f2 = f.f2_of();
    let lhs = a.convolve(b)?.seminorm(f, length_cap)?;
    let (la, lb) = (a.support_lengths(length_cap)?, b.support_lengths(length_cap)?);
    let rhs = a
        .l1_norm()
        .mul(&b.seminorm_with_lengths(&f2, &lb))
        .add(&a.seminorm_with_lengths(&f2, &la).mul(&b.l1_norm()));
    let holds = lhs.le_slack(&rhs);
    Ok(ProductEstimate { lhs, rhs, holds })
}
