use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::RdError;

/// The named bounding classes, ordered by inclusion up to equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BoundingClassTag {
    Bmin,
    Lin,
    P,
    E,
    /// All nondecreasing functions. Symbolic only: no member is representable.
    Bmax,
}

impl fmt::Display for BoundingClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundingClassTag::Bmin => "B_min",
            BoundingClassTag::Lin => "L",
            BoundingClassTag::P => "P",
            BoundingClassTag::E => "E",
            BoundingClassTag::Bmax => "B_max",
        })
    }
}

/// `Σ c_m (1+x)^m` with nonnegative rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialBound(Vec<BigRational>);

impl Serialize for PolynomialBound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::rational_serde::vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for PolynomialBound {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = crate::rational_serde::vec::deserialize(d)?;
        PolynomialBound::new(v).map_err(serde::de::Error::custom)
    }
}

impl PolynomialBound {
    /// Coefficient `m` multiplies `(1+x)^m`. Trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<BigRational>) -> Result<Self, RdError> {
        if let Some(m) = coeffs.iter().position(Signed::is_negative) {
            return Err(RdError::InvalidFunction(format!("coefficient of (1+x)^{m} is negative")));
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Ok(PolynomialBound(coeffs))
    }

    pub fn zero() -> Self {
        PolynomialBound(Vec::new())
    }

    /// `c·(1+x)^m`.
    pub fn monomial(m: usize, c: BigRational) -> Self {
        let mut v = vec![BigRational::zero(); m + 1];
        v[m] = c;
        PolynomialBound::new(v).expect("nonnegative coefficient")
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the coefficients, i.e. the value at `x = 0`.
    pub fn coefficient_sum(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |a, c| a + c)
    }

    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        let y = BigRational::one() + x;
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * &y + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let y = 1.0 + x;
        let mut it = self.0.iter().rev().map(|c| c.to_f64().unwrap_or(f64::INFINITY));
        let Some(lead) = it.next() else { return 0.0 };
        it.fold(lead, |acc, c| acc * y + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = BigRational::zero();
        PolynomialBound::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z)).collect())
            .expect("sum of nonnegative coefficients")
    }

    pub fn scale(&self, k: &BigRational) -> Result<Self, RdError> {
        PolynomialBound::new(self.0.iter().map(|c| c * k).collect())
    }

    /// Product; the basis is multiplicative in `y = 1+x`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PolynomialBound::zero();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        PolynomialBound::new(v).expect("product of nonnegative coefficients")
    }

    /// `Σ c_m (1+x)^{2m}`, which dominates `x ↦ self(2x)` since
    /// `1 + 2x ≤ (1+x)²`.
    pub fn doubled_argument_bound(&self) -> Self {
        let mut v = vec![BigRational::zero(); 2 * self.0.len().max(1) - 1];
        for (m, c) in self.0.iter().enumerate() {
            v[2 * m] = c.clone();
        }
        PolynomialBound::new(v).expect("same coefficients")
    }
}

impl fmt::Display for PolynomialBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| match m {
                0 => c.to_string(),
                _ => {
                    let pow = if m == 1 { String::from("(1+x)") } else { format!("(1+x)^{m}") };
                    if c.is_one() {
                        pow
                    } else {
                        format!("{c}*{pow}")
                    }
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// A symbolic nondecreasing function `ℝ₊ → ℝ⁺`. Every constructor
/// preserves monotonicity: coefficients are nonnegative, exponential bases
/// are at least 1, and composition is of nondecreasing functions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundingFunction {
    Const {
        #[serde(with = "crate::rational_serde")]
        value: BigRational,
    },
    /// `intercept + slope·x`.
    Affine {
        #[serde(with = "crate::rational_serde")]
        intercept: BigRational,
        #[serde(with = "crate::rational_serde")]
        slope: BigRational,
    },
    Poly { poly: PolynomialBound },
    /// `base^(scale·x)`.
    Exp {
        #[serde(with = "crate::rational_serde")]
        base: BigRational,
        #[serde(with = "crate::rational_serde")]
        scale: BigRational,
    },
    Max { parts: Vec<BoundingFunction> },
    Sum { parts: Vec<BoundingFunction> },
    /// `factor·inner(x)` with `factor > 0`.
    Scale {
        #[serde(with = "crate::rational_serde")]
        factor: BigRational,
        inner: Box<BoundingFunction>,
    },
    /// `outer(inner(x))`.
    Compose { outer: Box<BoundingFunction>, inner: Box<BoundingFunction> },
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl BoundingFunction {
    pub fn constant(value: BigRational) -> Result<Self, RdError> {
        if !value.is_positive() {
            return Err(RdError::InvalidFunction(format!("constant {value} is not positive")));
        }
        Ok(BoundingFunction::Const { value })
    }

    pub fn one() -> Self {
        BoundingFunction::Const { value: BigRational::one() }
    }

    pub fn affine(intercept: BigRational, slope: BigRational) -> Result<Self, RdError> {
        if intercept.is_negative() || slope.is_negative() || (intercept.is_zero() && slope.is_zero()) {
            return Err(RdError::InvalidFunction(format!("{intercept} + {slope}x is not a positive affine function")));
        }
        Ok(BoundingFunction::Affine { intercept, slope })
    }

    /// `x`.
    pub fn identity() -> Self {
        BoundingFunction::Affine { intercept: BigRational::zero(), slope: BigRational::one() }
    }

    pub fn poly(poly: PolynomialBound) -> Self {
        BoundingFunction::Poly { poly }
    }

    /// `(1+x)^m`.
    pub fn one_plus_x_pow(m: usize) -> Self {
        BoundingFunction::poly(PolynomialBound::monomial(m, BigRational::one()))
    }

    pub fn exp(base: BigRational, scale: BigRational) -> Result<Self, RdError> {
        if base < BigRational::one() || scale.is_negative() {
            return Err(RdError::InvalidFunction(format!("{base}^({scale}x) is not a nondecreasing exponential")));
        }
        Ok(BoundingFunction::Exp { base, scale })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        match self {
            BoundingFunction::Const { value } => value.to_f64().unwrap_or(f64::INFINITY),
            BoundingFunction::Affine { intercept, slope } => {
                intercept.to_f64().unwrap_or(f64::INFINITY) + slope.to_f64().unwrap_or(f64::INFINITY) * x
            }
            BoundingFunction::Poly { poly } => poly.eval_f64(x),
            BoundingFunction::Exp { base, scale } => {
                let b = base.to_f64().unwrap_or(f64::INFINITY);
                let s = scale.to_f64().unwrap_or(f64::INFINITY);
                libm::pow(b, s * x)
            }
            BoundingFunction::Max { parts } => parts.iter().map(|p| p.eval_f64(x)).fold(0.0, f64::max),
            BoundingFunction::Sum { parts } => parts.iter().map(|p| p.eval_f64(x)).sum(),
            BoundingFunction::Scale { factor, inner } => factor.to_f64().unwrap_or(f64::INFINITY) * inner.eval_f64(x),
            BoundingFunction::Compose { outer, inner } => outer.eval_f64(inner.eval_f64(x)),
        }
    }

    /// Exact value when it is rational: always for polynomials, and for
    /// exponentials when `scale·x` is a nonnegative integer.
    pub fn eval_exact(&self, x: &BigRational) -> Option<BigRational> {
        match self {
            BoundingFunction::Const { value } => Some(value.clone()),
            BoundingFunction::Affine { intercept, slope } => Some(intercept + slope * x),
            BoundingFunction::Poly { poly } => Some(poly.eval_exact(x)),
            BoundingFunction::Exp { base, scale } => {
                let e = scale * x;
                if !e.is_integer() || e.is_negative() {
                    return None;
                }
                let e = e.to_integer().to_u32()?;
                if e > 4096 {
                    return None;
                }
                Some(num_traits::pow(base.clone(), e as usize))
            }
            BoundingFunction::Max { parts } => {
                let vals: Option<Vec<BigRational>> = parts.iter().map(|p| p.eval_exact(x)).collect();
                vals?.into_iter().max().or_else(|| Some(BigRational::zero()))
            }
            BoundingFunction::Sum { parts } => {
                parts.iter().map(|p| p.eval_exact(x)).try_fold(BigRational::zero(), |a, v| Some(a + v?))
            }
            BoundingFunction::Scale { factor, inner } => Some(factor * inner.eval_exact(x)?),
            BoundingFunction::Compose { outer, inner } => outer.eval_exact(&inner.eval_exact(x)?),
        }
    }

    /// Smallest named class containing the function.
    pub fn class(&self) -> BoundingClassTag {
        match self {
            BoundingFunction::Const { .. } => BoundingClassTag::Bmin,
            BoundingFunction::Affine { slope, .. } => {
                if slope.is_zero() {
                    BoundingClassTag::Bmin
                } else {
                    BoundingClassTag::Lin
                }
            }
            BoundingFunction::Poly { poly } => match poly.degree() {
                None | Some(0) => BoundingClassTag::Bmin,
                Some(1) => BoundingClassTag::Lin,
                Some(_) => BoundingClassTag::P,
            },
            BoundingFunction::Exp { base, scale } => {
                if base.is_one() || scale.is_zero() {
                    BoundingClassTag::Bmin
                } else {
                    BoundingClassTag::E
                }
            }
            BoundingFunction::Max { parts } | BoundingFunction::Sum { parts } => {
                parts.iter().map(BoundingFunction::class).max().unwrap_or(BoundingClassTag::Bmin)
            }
            BoundingFunction::Scale { inner, .. } => inner.class(),
            BoundingFunction::Compose { outer, inner } => {
                let (o, i) = (outer.class(), inner.class());
                if o == BoundingClassTag::Bmin {
                    BoundingClassTag::Bmin
                } else if i == BoundingClassTag::Bmin {
                    BoundingClassTag::Bmin
                } else {
                    o.max(i)
                }
            }
        }
    }

    /// Structural certificate that `self(x) ≥ x` for all `x ≥ 0`. A `false`
    /// answer proves nothing.
    pub fn dominates_identity(&self) -> bool {
        let one = BigRational::one();
        match self {
            BoundingFunction::Const { .. } => false,
            BoundingFunction::Affine { slope, .. } => *slope >= one,
            // (1+x)^m ≥ 1+x for m ≥ 1
            BoundingFunction::Poly { poly } => {
                poly.0.iter().skip(1).fold(BigRational::zero(), |a, c| a + c) >= one
            }
            // 2^x ≥ x
            BoundingFunction::Exp { base, scale } => *base >= q(2) && *scale >= one,
            BoundingFunction::Max { parts } | BoundingFunction::Sum { parts } => {
                parts.iter().any(BoundingFunction::dominates_identity)
            }
            BoundingFunction::Scale { factor, inner } => *factor >= one && inner.dominates_identity(),
            BoundingFunction::Compose { outer, inner } => outer.dominates_identity() && inner.dominates_identity(),
        }
    }

    /// A function `f₂` with `f(2x) ≤ f₂(x)`.
    pub fn f2_of(&self) -> BoundingFunction {
        match self {
            BoundingFunction::Const { .. } => self.clone(),
            BoundingFunction::Affine { intercept, slope } => {
                BoundingFunction::Affine { intercept: intercept.clone(), slope: slope * q(2) }
            }
            BoundingFunction::Poly { poly } => BoundingFunction::poly(poly.doubled_argument_bound()),
            BoundingFunction::Exp { base, scale } => {
                BoundingFunction::Exp { base: base * base, scale: scale.clone() }
            }
            BoundingFunction::Max { parts } => BoundingFunction::Max { parts: parts.iter().map(Self::f2_of).collect() },
            BoundingFunction::Sum { parts } => BoundingFunction::Sum { parts: parts.iter().map(Self::f2_of).collect() },
            BoundingFunction::Scale { factor, inner } => {
                BoundingFunction::Scale { factor: factor.clone(), inner: Box::new(inner.f2_of()) }
            }
            BoundingFunction::Compose { outer, inner } => {
                BoundingFunction::Compose { outer: outer.clone(), inner: Box::new(inner.f2_of()) }
            }
        }
    }

    /// Refutation check of `self ≤ other` on the integer grid `0..=n`.
    pub fn dominated_on_grid(&self, other: &BoundingFunction, n: u32) -> bool {
        (0..=n).all(|x| {
            let xr = q(i64::from(x));
            match (self.eval_exact(&xr), other.eval_exact(&xr)) {
                (Some(a), Some(b)) => a <= b,
                _ => {
                    let (a, b) = (self.eval_f64(f64::from(x)), other.eval_f64(f64::from(x)));
                    a <= b * (1.0 + 1e-9) + 1e-9
                }
            }
        })
    }

    /// A polynomial `P` with `f ≤ P` pointwise, for functions built from
    /// constants, affine and polynomial terms by sums and scaling.
    pub fn polynomial_majorant(&self) -> Option<PolynomialBound> {
        match self {
            BoundingFunction::Const { value } => Some(PolynomialBound::monomial(0, value.clone())),
            BoundingFunction::Affine { .. } => match affine_as_poly(self) {
                BoundingFunction::Poly { poly } => Some(poly),
                _ => None,
            },
            BoundingFunction::Poly { poly } => Some(poly.clone()),
            BoundingFunction::Scale { factor, inner } => inner.polynomial_majorant()?.scale(factor).ok(),
            BoundingFunction::Sum { parts } => {
                parts.iter().try_fold(PolynomialBound::zero(), |acc, p| Some(acc.add(&p.polynomial_majorant()?)))
            }
            _ => None,
        }
    }

    /// Parses expressions such as `1`, `5/2`, `(1+x)^3`, `2*(1+x)^2 + 1`,
    /// `1+x`, `2^x`, `3^(2x)`, `max(f, g)` and `f o g` (composition).
    pub fn parse(s: &str) -> Result<Self, RdError> {
        let mut p = Parser { s: s.as_bytes(), i: 0 };
        let f = p.compose()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(f)
    }
}

impl fmt::Display for BoundingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundingFunction::Const { value } => write!(f, "{value}"),
            BoundingFunction::Affine { intercept, slope } => {
                if intercept.is_zero() {
                    write!(f, "{slope}*x")
                } else {
                    write!(f, "{intercept} + {slope}*x")
                }
            }
            BoundingFunction::Poly { poly } => write!(f, "{poly}"),
            BoundingFunction::Exp { base, scale } => {
                if scale.is_one() {
                    write!(f, "{base}^x")
                } else {
                    write!(f, "{base}^({scale}x)")
                }
            }
            BoundingFunction::Max { parts } => {
                let p: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
                write!(f, "max({})", p.join(", "))
            }
            BoundingFunction::Sum { parts } => {
                let p: Vec<String> = parts.iter().map(|x| format!("[{x}]")).collect();
                f.write_str(&p.join(" + "))
            }
            BoundingFunction::Scale { factor, inner } => write!(f, "{factor}*[{inner}]"),
            BoundingFunction::Compose { outer, inner } => write!(f, "[{outer}] o [{inner}]"),
        }
    }
}

/// `f₃` with `f₁∘f₂ ≤ f₃`, built by structural rules:
/// - a constant outer function, or a constant inner one, gives a constant;
/// - `p∘q` for polynomials with `q` of degree `K` and coefficient sum `D`
///   gives `Σ c_m (1+D)^m (1+x)^{mK}`, since `1 + q(x) ≤ (1+D)(1+x)^K`;
/// - maxima and sums on the outside distribute;
/// - anything involving an exponential stays a composition node in `E`.
///
/// With `within` set, a result outside that class is a [`RdError::ClassEscape`].
pub fn compose_bound(
    f1: &BoundingFunction,
    f2: &BoundingFunction,
    within: Option<BoundingClassTag>,
) -> Result<BoundingFunction, RdError> {
    if within == Some(BoundingClassTag::Bmax) {
        return Err(RdError::ClassEscape(String::from("B_max has no finitely representable members")));
    }
    let out = compose_rules(f1, f2);
    if let Some(c) = within {
        let got = out.class();
        if got > c {
            return Err(RdError::ClassEscape(format!("{f1} o {f2} lies in {got}, not {c}")));
        }
    }
    Ok(out)
}

fn compose_rules(f1: &BoundingFunction, f2: &BoundingFunction) -> BoundingFunction {
    use BoundingFunction as F;
    match (f1, f2) {
        (F::Const { .. }, _) => f1.clone(),
        (F::Max { parts }, _) => F::Max { parts: parts.iter().map(|p| compose_rules(p, f2)).collect() },
        (F::Sum { parts }, _) => F::Sum { parts: parts.iter().map(|p| compose_rules(p, f2)).collect() },
        (F::Scale { factor, inner }, _) => {
            F::Scale { factor: factor.clone(), inner: Box::new(compose_rules(inner, f2)) }
        }
        (_, F::Const { value }) => F::Const { value: upper_rational(f1, value) },
        (F::Affine { intercept: a1, slope: b1 }, F::Affine { intercept: a2, slope: b2 }) => {
            F::Affine { intercept: a1 + b1 * a2, slope: b1 * b2 }
        }
        (F::Affine { .. }, F::Poly { .. }) | (F::Poly { .. }, F::Affine { .. }) => {
            compose_rules(&affine_as_poly(f1), &affine_as_poly(f2))
        }
        (F::Poly { poly: p }, F::Poly { poly: inner }) => {
            let Some(k) = inner.degree() else {
                return F::Const { value: upper_rational(f1, &BigRational::zero()) };
            };
            let one_plus_d = BigRational::one() + inner.coefficient_sum();
            let mut v = vec![BigRational::zero(); (p.0.len().max(1) - 1) * k + 1];
            for (m, c) in p.0.iter().enumerate() {
                v[m * k] += c * num_traits::pow(one_plus_d.clone(), m);
            }
            if k == 0 {
                return F::Const { value: v[0].clone() };
            }
            F::poly(PolynomialBound::new(v).expect("nonnegative coefficients"))
        }
        _ => F::Compose { outer: Box::new(f1.clone()), inner: Box::new(f2.clone()) },
    }
}

/// `a + bx ≤ max(a−b, 0) + b(1+x)`; other functions pass through.
fn affine_as_poly(f: &BoundingFunction) -> BoundingFunction {
    match f {
        BoundingFunction::Affine { intercept, slope } => {
            let c0 = if intercept > slope { intercept - slope } else { BigRational::zero() };
            BoundingFunction::poly(PolynomialBound::new(vec![c0, slope.clone()]).expect("nonnegative"))
        }
        other => other.clone(),
    }
}

/// A rational upper bound for `f(x)`: exact when possible, else a float
/// value rounded up with a safety margin.
fn upper_rational(f: &BoundingFunction, x: &BigRational) -> BigRational {
    if let Some(v) = f.eval_exact(x) {
        return v;
    }
    let v = f.eval_f64(x.to_f64().unwrap_or(f64::INFINITY));
    let bumped = libm::ceil(v * (1.0 + 1e-12)) + 1.0;
    BigRational::from_float(bumped).unwrap_or_else(|| q(i64::MAX))
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn err(&self, why: &str) -> RdError {
        RdError::Parse(format!("{why} at byte {} of {:?}", self.i, String::from_utf8_lossy(self.s)))
    }

    fn ws(&mut self) {
        while self.s.get(self.i).is_some_and(u8::is_ascii_whitespace) {
            self.i += 1;
        }
    }

    fn eat(&mut self, t: &str) -> bool {
        self.ws();
        if self.s[self.i..].starts_with(t.as_bytes()) {
            self.i += t.len();
            true
        } else {
            false
        }
    }

    fn compose(&mut self) -> Result<BoundingFunction, RdError> {
        let f = self.sum()?;
        if self.eat("o ") {
            let g = self.compose()?;
            return Ok(BoundingFunction::Compose { outer: Box::new(f), inner: Box::new(g) });
        }
        Ok(f)
    }

    fn sum(&mut self) -> Result<BoundingFunction, RdError> {
        let mut terms = vec![self.term()?];
        while self.eat("+") {
            terms.push(self.term()?);
        }
        // collapse constants, affine and polynomial terms
        let mut poly = PolynomialBound::zero();
        let (mut a, mut b) = (BigRational::zero(), BigRational::zero());
        let mut rest = Vec::new();
        for t in terms {
            match t {
                BoundingFunction::Poly { poly: p } => poly = poly.add(&p),
                BoundingFunction::Const { value } => a += value,
                BoundingFunction::Affine { intercept, slope } => {
                    a += intercept;
                    b += slope;
                }
                other => rest.push(other),
            }
        }
        if b.is_zero() {
            poly = poly.add(&PolynomialBound::new(vec![a])?);
        } else if poly.is_zero() {
            rest.insert(0, BoundingFunction::affine(a, b)?);
        } else {
            rest.insert(0, BoundingFunction::affine(a, b)?);
            rest.insert(0, BoundingFunction::poly(poly.clone()));
            poly = PolynomialBound::zero();
        }
        if rest.is_empty() {
            return Ok(match poly.degree() {
                None => return Err(self.err("zero function")),
                Some(0) => BoundingFunction::Const { value: poly.0[0].clone() },
                Some(_) => BoundingFunction::poly(poly),
            });
        }
        if !poly.is_zero() {
            rest.insert(0, BoundingFunction::poly(poly));
        }
        Ok(if rest.len() == 1 { rest.pop().expect("one part") } else { BoundingFunction::Sum { parts: rest } })
    }

    fn term(&mut self) -> Result<BoundingFunction, RdError> {
        self.ws();
        if self.eat("max(") {
            let mut parts = vec![self.compose()?];
            while self.eat(",") {
                parts.push(self.compose()?);
            }
            if !self.eat(")") {
                return Err(self.err("expected )"));
            }
            return Ok(BoundingFunction::Max { parts });
        }
        if self.eat("(1+x)") || self.eat("(x+1)") {
            let m = if self.eat("^") { self.integer()? } else { 1 };
            return Ok(BoundingFunction::one_plus_x_pow(m));
        }
        if self.eat("x") {
            return Ok(BoundingFunction::identity());
        }
        let c = self.number()?;
        if self.eat("*") {
            let t = self.term()?;
            return match t {
                BoundingFunction::Poly { poly } => Ok(BoundingFunction::poly(poly.scale(&c)?)),
                BoundingFunction::Const { value } => BoundingFunction::constant(value * c),
                BoundingFunction::Affine { intercept, slope } => BoundingFunction::affine(intercept * &c, slope * &c),
                other if c.is_positive() => Ok(BoundingFunction::Scale { factor: c, inner: Box::new(other) }),
                _ => Err(self.err("scale factor must be positive")),
            };
        }
        if self.eat("^") {
            let scale = if self.eat("(") {
                let s = if self.s.get(self.i).is_some_and(|b| *b == b'x') { BigRational::one() } else { self.number()? };
                if !(self.eat("x)") || self.eat("*x)")) {
                    return Err(self.err("expected x)"));
                }
                s
            } else if self.eat("x") {
                BigRational::one()
            } else {
                return Err(self.err("expected x after ^"));
            };
            return BoundingFunction::exp(c, scale);
        }
        BoundingFunction::constant(c)
    }

    fn integer(&mut self) -> Result<usize, RdError> {
        self.ws();
        let start = self.i;
        while self.s.get(self.i).is_some_and(u8::is_ascii_digit) {
            self.i += 1;
        }
        core::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("expected an integer"))
    }

    fn number(&mut self) -> Result<BigRational, RdError> {
        self.ws();
        let start = self.i;
        while self.s.get(self.i).is_some_and(|b| b.is_ascii_digit() || *b == b'.') {
            self.i += 1;
        }
        let t = core::str::from_utf8(&self.s[start..self.i]).map_err(|_| self.err("bad number"))?;
        if t.is_empty() {
            return Err(self.err("expected a number"));
        }
        let mut num = parse_decimal(t).ok_or_else(|| self.err("bad number"))?;
        if self.s.get(self.i) == Some(&b'/') {
            self.i += 1;
            let d = self.integer()?;
            if d == 0 {
                return Err(self.err("zero denominator"));
            }
            num /= q(d as i64);
        }
        Ok(num)
    }
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if frac.contains('.') {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().ok()?;
    Some(BigRational::new(n, num_traits::pow(BigInt::from(10), frac.len())))
}
