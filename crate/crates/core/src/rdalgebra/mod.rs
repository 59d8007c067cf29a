//! Bounding functions and weighted `ℓ¹` seminorms on finitely supported
//! elements of a group algebra.

use alloc::string::String;

use thiserror::Error;

use crate::group::GroupError;

mod function;
mod vector;

pub use function::{compose_bound, BoundingClassTag, BoundingFunction, PolynomialBound};
pub use vector::{check_product_estimate, modulus, Coefficient, ProductEstimate, Real, SupportedVector, FLOAT_SLACK};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RdError {
    #[error("invalid bounding function: {0}")]
    InvalidFunction(String),
    #[error("cannot parse bounding function: {0}")]
    Parse(String),
    #[error("class escape: {0}")]
    ClassEscape(String),
    #[error("length of {element} not determined within radius {cap}")]
    LengthCap { element: String, cap: u32 },
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[cfg(test)]
mod tests {
    use alloc::vec;
    use alloc::vec::Vec;

    use num_bigint::BigInt;
    use num_complex::Complex;
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::{Ball, Element, GroupModel};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn re(n: i64) -> Coefficient {
        Complex::new(q(n), BigRational::zero())
    }

    fn f2() -> GroupModel {
        GroupModel::Free { rank: 2 }
    }

    fn el(m: &GroupModel, s: &str) -> Element {
        m.parse_element(s).unwrap()
    }

    fn pw(m: usize) -> BoundingFunction {
        BoundingFunction::one_plus_x_pow(m)
    }

    fn random_vector<'m>(m: &'m GroupModel, ball: &Ball, rng: &mut ChaCha8Rng, terms: usize) -> SupportedVector<'m> {
        let n = ball.elements().len();
        SupportedVector::from_terms(
            m,
            (0..terms).map(|_| {
                let g = ball.elements()[rng.random_range(0..n)].clone();
                (g, Complex::new(q(rng.random_range(-5..=5)), q(rng.random_range(-5..=5))))
            }),
        )
        .unwrap()
    }

    #[test]
    fn seminorm_two_term_example() {
        let m = f2();
        let v = SupportedVector::from_terms(&m, [(m.identity(), re(2)), (el(&m, "a"), re(3))]).unwrap();
        assert_eq!(v.seminorm(&pw(2), 10).unwrap(), Real::Exact(q(14)));
    }

    #[test]
    fn constant_one_gives_l1() {
        let m = f2();
        let v = SupportedVector::from_terms(&m, [(el(&m, "ab"), re(-3)), (el(&m, "B"), Complex::new(q(0), q(4)))])
            .unwrap();
        assert_eq!(v.seminorm(&BoundingFunction::one(), 10).unwrap(), Real::Exact(q(7)));
        assert_eq!(v.l1_norm(), Real::Exact(q(7)));
        let mixed = SupportedVector::delta(&m, el(&m, "a"), Complex::new(q(3), q(4))).unwrap();
        let Real::Float(x) = mixed.l1_norm() else { panic!("off-axis modulus is a float") };
        assert!((x - 5.0).abs() < 1e-12);
    }

    #[test]
    fn length_cap_error() {
        let m = GroupModel::builtin("H3").unwrap();
        let z = el(&m, "(0,0|1)");
        let v = SupportedVector::delta(&m, z, re(1)).unwrap();
        assert!(matches!(v.seminorm(&pw(1), 2), Err(RdError::LengthCap { .. })));
        assert_eq!(v.seminorm(&pw(1), 4).unwrap(), Real::Exact(q(5)));
    }

    #[test]
    fn zeros_are_not_stored() {
        let m = f2();
        let a = el(&m, "a");
        let v = SupportedVector::from_terms(&m, [(a.clone(), re(2)), (a.clone(), re(-2)), (el(&m, "b"), re(0))])
            .unwrap();
        assert!(v.is_zero());
        let other = GroupModel::Free { rank: 3 };
        assert!(SupportedVector::delta(&m, el(&other, "c"), re(1)).is_err());
        let w = SupportedVector::delta(&other, el(&other, "c"), re(1)).unwrap();
        assert!(matches!(v.convolve(&w), Err(RdError::ModelMismatch(_))));
    }

    #[test]
    fn convolution_examples() {
        let m = f2();
        let (g, h) = (el(&m, "ab"), el(&m, "Ba"));
        let dg = SupportedVector::delta(&m, g.clone(), re(1)).unwrap();
        let dh = SupportedVector::delta(&m, h.clone(), re(1)).unwrap();
        let prod = dg.convolve(&dh).unwrap();
        assert_eq!(prod, SupportedVector::delta(&m, m.mul(&g, &h), re(1)).unwrap());
        assert_eq!(prod.support().next(), Some(&el(&m, "aa")));

        let s = SupportedVector::from_terms(&m, [(el(&m, "a"), re(1)), (el(&m, "A"), re(1))]).unwrap();
        let sq = s.convolve(&s).unwrap();
        let expect =
            SupportedVector::from_terms(&m, [(el(&m, "aa"), re(1)), (m.identity(), re(2)), (el(&m, "AA"), re(1))])
                .unwrap();
        assert_eq!(sq, expect);
    }

    fn triple_product<'m>(a: &SupportedVector<'m>, b: &SupportedVector<'m>, c: &SupportedVector<'m>) -> SupportedVector<'m> {
        let m = a.model();
        let mut out = SupportedVector::zero(m);
        for (x, cx) in a.terms() {
            for (y, cy) in b.terms() {
                for (z, cz) in c.terms() {
                    out.add_term(m.mul(&m.mul(x, y), z), cx * cy * cz).unwrap();
                }
            }
        }
        out
    }

    #[test]
    fn convolution_associative_and_bilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [f2(), GroupModel::builtin("H3").unwrap(), GroupModel::builtin("S3").unwrap()] {
            let ball = Ball::build(&m, 2, 10_000).unwrap();
            for _ in 0..20 {
                let a = random_vector(&m, &ball, &mut rng, 4);
                let b = random_vector(&m, &ball, &mut rng, 4);
                let c = random_vector(&m, &ball, &mut rng, 4);
                let left = a.convolve(&b).unwrap().convolve(&c).unwrap();
                let right = a.convolve(&b.convolve(&c).unwrap()).unwrap();
                assert_eq!(left, right);
                assert_eq!(left, triple_product(&a, &b, &c));
                let k = Complex::new(q(2), q(-1));
                assert_eq!(
                    a.add(&b).unwrap().convolve(&c).unwrap(),
                    a.convolve(&c).unwrap().add(&b.convolve(&c).unwrap()).unwrap()
                );
                assert_eq!(a.scale(&k).convolve(&c).unwrap(), a.convolve(&c).unwrap().scale(&k));
            }
        }
    }

    #[test]
    fn f2_examples() {
        assert_eq!(pw(1).f2_of(), pw(2));
        let five = BoundingFunction::constant(q(5)).unwrap();
        assert_eq!(five.f2_of(), five);
        let two_x = BoundingFunction::exp(q(2), q(1)).unwrap();
        assert_eq!(two_x.f2_of(), BoundingFunction::exp(q(4), q(1)).unwrap());
        for x in 0..20 {
            assert_eq!(two_x.eval_exact(&q(2 * x)), two_x.f2_of().eval_exact(&q(x)));
        }
    }

    fn sample_functions() -> Vec<BoundingFunction> {
        [
            "1",
            "5/2",
            "1+x",
            "3+x",
            "x",
            "1/3 + 2*x",
            "(1+x)^2",
            "2*(1+x)^3 + 1/2*(1+x) + 4",
            "2^x",
            "3/2^(2x)",
            "max((1+x)^2, 2^x)",
            "(1+x)^2 + 2^x",
            "3*2^x",
            "(1+x)^2 o 2^x",
            "2^x o (1+x)^2",
        ]
        .iter()
        .map(|s| BoundingFunction::parse(s).unwrap())
        .collect()
    }

    #[test]
    fn f2_dominates_doubled_argument() {
        for f in sample_functions() {
            let f2 = f.f2_of();
            for x in 0..=16 {
                let a = f.eval_exact(&q(2 * x));
                let b = f2.eval_exact(&q(x));
                match (a, b) {
                    (Some(a), Some(b)) => assert!(a <= b, "{f} at {x}"),
                    _ => assert!(f.eval_f64(2.0 * x as f64) <= f2.eval_f64(x as f64) * (1.0 + 1e-9), "{f}"),
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let p = BoundingFunction::parse("2*(1+x)^2 + 1").unwrap();
        assert_eq!(p.eval_exact(&q(1)), Some(q(9)));
        assert_eq!(p.class(), BoundingClassTag::P);
        assert_eq!(BoundingFunction::parse("3+x").unwrap().eval_exact(&q(4)), Some(q(7)));
        assert_eq!(BoundingFunction::parse("x").unwrap(), BoundingFunction::identity());
        assert_eq!(
            BoundingFunction::parse("1/2 + 2*x + x").unwrap(),
            BoundingFunction::affine(BigRational::new(1.into(), 2.into()), q(3)).unwrap()
        );
        assert_eq!(BoundingFunction::parse("0.5").unwrap(), BoundingFunction::constant(BigRational::new(1.into(), 2.into())).unwrap());
        for bad in ["", "-1", "(1+x)^", "1/0", "max(1", "0", "1/2^x", "0*x"] {
            assert!(BoundingFunction::parse(bad).is_err(), "{bad}");
        }
        for f in sample_functions() {
            let shown = alloc::format!("{f}");
            assert!(!shown.is_empty());
        }
        let json = serde_json::to_string(&p).unwrap();
        let back: BoundingFunction = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<PolynomialBound>(r#"["-1","1"]"#).is_err());
    }

    #[test]
    fn class_tags() {
        use BoundingClassTag::*;
        assert!(Bmin < Lin && Lin < P && P < E && E < Bmax);
        let tags: Vec<_> = ["1", "3+x", "(1+x)^2", "2^x", "1^x", "max(1, 1+x)", "(1+x)^2 o 2"]
            .iter()
            .map(|s| BoundingFunction::parse(s).unwrap().class())
            .collect();
        assert_eq!(tags, vec![Bmin, Lin, P, E, Bmin, Lin, Bmin]);
    }

    #[test]
    fn compose_examples() {
        let f3 = compose_bound(&pw(2), &pw(3), Some(BoundingClassTag::P)).unwrap();
        assert_eq!(f3, BoundingFunction::poly(PolynomialBound::monomial(6, q(4))));

        let c = BoundingFunction::constant(q(7)).unwrap();
        for g in sample_functions() {
            assert_eq!(compose_bound(&c, &g, None).unwrap(), c);
        }
        assert_eq!(compose_bound(&pw(2), &c, None).unwrap(), BoundingFunction::constant(q(64)).unwrap());

        let e = BoundingFunction::exp(q(2), q(1)).unwrap();
        assert!(matches!(compose_bound(&pw(2), &e, Some(BoundingClassTag::P)), Err(RdError::ClassEscape(_))));
        assert!(matches!(compose_bound(&e, &pw(2), Some(BoundingClassTag::P)), Err(RdError::ClassEscape(_))));
        assert_eq!(compose_bound(&e, &e, Some(BoundingClassTag::E)).unwrap().class(), BoundingClassTag::E);
        assert!(matches!(compose_bound(&pw(1), &pw(1), Some(BoundingClassTag::Bmax)), Err(RdError::ClassEscape(_))));
        assert!(matches!(compose_bound(&pw(1), &pw(2), Some(BoundingClassTag::Lin)), Err(RdError::ClassEscape(_))));
        assert_eq!(compose_bound(&pw(1), &pw(1), Some(BoundingClassTag::Lin)).unwrap(), BoundingFunction::parse("2*(1+x)").unwrap());
    }

    #[test]
    fn compose_dominates_on_grid() {
        let fs = sample_functions();
        for f1 in &fs {
            for f2 in &fs {
                let f3 = compose_bound(f1, f2, None).unwrap();
                let direct = BoundingFunction::Compose { outer: f1.clone().into(), inner: f2.clone().into() };
                // exponential towers overflow quickly; restrict their grid
                let n = if f1.class() >= BoundingClassTag::E && f2.class() >= BoundingClassTag::E { 3 } else { 64 };
                assert!(direct.dominated_on_grid(&f3, n), "{f1} o {f2} vs {f3}");
            }
        }
    }

    #[test]
    fn product_estimate_trivial_cases() {
        let m = f2();
        let zero = SupportedVector::zero(&m);
        let r = check_product_estimate(&zero, &zero, &pw(2), 10).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (Real::zero(), Real::zero(), true));
        let (g, h) = (el(&m, "abA"), el(&m, "aBB"));
        let dg = SupportedVector::delta(&m, g, re(1)).unwrap();
        let dh = SupportedVector::delta(&m, h, re(1)).unwrap();
        let r = check_product_estimate(&dg, &dh, &pw(2), 10).unwrap();
        // L(gh) = L(abBB) = 2 after reduction: (1+2)² = 9 ≤ 4⁴ + 4⁴
        assert_eq!(r.lhs, Real::Exact(q(9)));
        assert_eq!(r.rhs, Real::Exact(q(512)));
        assert!(r.holds);
    }

    #[test]
    fn product_estimate_random_sweep() {
        let m = f2();
        let ball = Ball::build(&m, 3, 10_000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let fs = [BoundingFunction::one(), pw(1), pw(2), pw(3), BoundingFunction::exp(q(2), q(1)).unwrap()];
        for _ in 0..100 {
            let a = random_vector(&m, &ball, &mut rng, 6);
            let b = random_vector(&m, &ball, &mut rng, 6);
            for f in &fs {
                let r = check_product_estimate(&a, &b, f, 10).unwrap();
                assert!(r.holds, "{f}: {} > {}", r.lhs, r.rhs);
            }
        }
    }

    fn real_coeff_vector<'m>(m: &'m GroupModel, ball: &Ball, picks: &[(usize, i64)]) -> SupportedVector<'m> {
        let n = ball.elements().len();
        SupportedVector::from_terms(m, picks.iter().map(|&(i, c)| (ball.elements()[i % n].clone(), re(c)))).unwrap()
    }

    proptest! {
        #[test]
        fn seminorm_is_a_norm(
            a in proptest::collection::vec((0usize..200, -9i64..=9), 0..8),
            b in proptest::collection::vec((0usize..200, -9i64..=9), 0..8),
            k in -6i64..=6,
            deg in 0usize..4,
        ) {
            let m = f2();
            let ball = Ball::build(&m, 3, 10_000).unwrap();
            let (va, vb) = (real_coeff_vector(&m, &ball, &a), real_coeff_vector(&m, &ball, &b));
            let f = pw(deg);
            let na = va.seminorm(&f, 10).unwrap();
            let nb = vb.seminorm(&f, 10).unwrap();
            let nsum = va.add(&vb).unwrap().seminorm(&f, 10).unwrap();
            prop_assert!(nsum.is_exact());
            let Real::Exact(total) = na.add(&nb) else { unreachable!() };
            let Real::Exact(s) = nsum else { unreachable!() };
            prop_assert!(s <= total);
            let scaled = va.scale(&re(k)).seminorm(&f, 10).unwrap();
            prop_assert_eq!(scaled, Real::Exact(q(k.abs())).mul(&na));
        }

        #[test]
        fn seminorm_monotone_in_f(
            a in proptest::collection::vec((0usize..200, -9i64..=9, -9i64..=9), 0..8),
            i in 0usize..5,
            j in 0usize..5,
        ) {
            let m = f2();
            let ball = Ball::build(&m, 3, 10_000).unwrap();
            let n = ball.elements().len();
            let v = SupportedVector::from_terms(
                &m,
                a.iter().map(|&(g, x, y)| (ball.elements()[g % n].clone(), Complex::new(q(x), q(y)))),
            ).unwrap();
            let fs = [BoundingFunction::one(), pw(1), pw(2), pw(3), BoundingFunction::exp(q(3), q(1)).unwrap()];
            let lengths = v.support_lengths(10).unwrap();
            let pointwise = lengths.iter().all(|&l| {
                let x = q(l.into());
                fs[i].eval_exact(&x).unwrap() <= fs[j].eval_exact(&x).unwrap()
            });
            if pointwise {
                prop_assert!(v.seminorm(&fs[i], 10).unwrap().le_slack(&v.seminorm(&fs[j], 10).unwrap()));
            }
        }

        #[test]
        fn polynomial_arithmetic(
            a in proptest::collection::vec(0i64..10, 0..5),
            b in proptest::collection::vec(0i64..10, 0..5),
            x in 0i64..50,
        ) {
            let pa = PolynomialBound::new(a.iter().map(|&c| q(c)).collect()).unwrap();
            let pb = PolynomialBound::new(b.iter().map(|&c| q(c)).collect()).unwrap();
            let xr = q(x);
            prop_assert_eq!(pa.add(&pb).eval_exact(&xr), pa.eval_exact(&xr) + pb.eval_exact(&xr));
            prop_assert_eq!(pa.mul(&pb).eval_exact(&xr), pa.eval_exact(&xr) * pb.eval_exact(&xr));
            prop_assert!(pa.eval_exact(&q(2 * x)) <= pa.doubled_argument_bound().eval_exact(&xr));
            prop_assert!((pa.eval_f64(x as f64) - num_traits::ToPrimitive::to_f64(&pa.eval_exact(&xr)).unwrap()).abs()
                <= 1e-9 * pa.eval_f64(x as f64).max(1.0));
        }
    }

    #[test]
    fn polynomial_invariants() {
        assert!(PolynomialBound::new(vec![q(1), q(-1)]).is_err());
        let p = PolynomialBound::new(vec![q(1), q(0), q(0)]).unwrap();
        assert_eq!(p.degree(), Some(0));
        assert_eq!(PolynomialBound::zero().degree(), None);
        assert!(BoundingFunction::exp(BigRational::new(1.into(), 2.into()), q(1)).is_err());
        assert!(BoundingFunction::constant(BigRational::zero()).is_err());
        assert_eq!(pw(0).eval_exact(&q(9)), Some(BigRational::one()));
    }

    #[test]
    fn polynomial_majorants() {
        let maj = |s: &str| BoundingFunction::parse(s).unwrap().polynomial_majorant();
        assert_eq!(maj("3"), Some(PolynomialBound::monomial(0, q(3))));
        assert_eq!(maj("x"), Some(PolynomialBound::monomial(1, q(1))));
        assert_eq!(maj("5+2*x"), Some(PolynomialBound::new(vec![q(3), q(2)]).unwrap()));
        assert_eq!(maj("2*(1+x)^2").unwrap().coeffs(), &[q(0), q(0), q(2)]);
        assert_eq!(maj("2^x"), None);
        for s in ["x", "5+2*x", "1/2+x", "max(x, 3)"] {
            let f = BoundingFunction::parse(s).unwrap();
            if let Some(p) = f.polynomial_majorant() {
                assert!(f.dominated_on_grid(&BoundingFunction::poly(p), 50), "{s}");
            }
        }
    }
}
