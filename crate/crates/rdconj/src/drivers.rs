//! Parallel drivers. Work is split into independent pieces whose results
//! are merged in a fixed order, so output does not depend on scheduling.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rdconj_core::cayley::{max_defect_from, merge_defects, quadruple_count, DeltaEstimate, DeltaMode, MetricGraph};
use rdconj_core::conjugacy::{assemble_profile, min_conjugator_row, Profile, ProfileOptions};
use rdconj_core::group::{Ball, Element, GroupModel};
use rdconj_core::rdalgebra::{check_product_estimate, BoundingFunction, Coefficient, Real, SupportedVector};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::BallCache;
use crate::config::NumericMode;
use crate::error::CliError;

/// [`rdconj_core::conjugacy::profile_conjugacy_bound`] with one task per
/// row and balls taken from the cache.
pub fn profile(
    model: &GroupModel,
    radius: u32,
    opts: &ProfileOptions,
    cache: &BallCache,
) -> Result<Profile, CliError> {
    let small = cache.ball(model, radius, opts.ball_cap)?;
    let big = cache.ball(model, 2 * radius + opts.slack, opts.ball_cap)?;
    let rows: Vec<_> = (0..small.len()).into_par_iter().map(|ui| min_conjugator_row(model, &small, &big, ui)).collect();
    Ok(assemble_profile(model, &small, &big, &rows, opts)?)
}

/// Four-point δ, exhaustive scans split by least vertex.
pub fn delta(graph: &MetricGraph, mode: DeltaMode, seed: u64) -> Result<DeltaEstimate, CliError> {
    let n = graph.vertex_count();
    let exhaustive = match mode {
        DeltaMode::Exhaustive => true,
        DeltaMode::Sampled(_) => false,
        DeltaMode::Auto(_) => n <= rdconj_core::cayley::EXHAUSTIVE_VERTEX_CAP,
    };
    if !exhaustive {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok(rdconj_core::cayley::estimate_delta_4point(graph, mode, &mut rng)?);
    }
    let d = graph.all_pairs()?;
    let parts: Vec<_> = (0..n).into_par_iter().map(|x| max_defect_from(&d, x)).collect();
    let (s, witness) = merge_defects(parts);
    Ok(DeltaEstimate {
        delta: num_rational::Rational64::new(s as i64, 4),
        exhaustive: true,
        quadruples: quadruple_count(n),
        witness,
    })
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Coefficient {
    loop {
        let mut part = || BigRational::new(BigInt::from(rng.random_range(-4i64..=4)), BigInt::from(rng.random_range(1i64..=3)));
        let c = Complex::new(part(), part());
        if c != Complex::new(BigRational::from_integer(0.into()), BigRational::from_integer(0.into())) {
            return c;
        }
    }
}

fn random_vector<'m>(model: &'m GroupModel, ball: &Ball, max_support: usize, rng: &mut ChaCha8Rng) -> Result<SupportedVector<'m>, CliError> {
    let size = rng.random_range(1..=max_support);
    let terms: Vec<(Element, Coefficient)> =
        (0..size).map(|_| (ball.element(rng.random_range(0..ball.len())).clone(), random_coefficient(rng))).collect();
    Ok(SupportedVector::from_terms(model, terms)?)
}

/// JSON list of `{element, re, im}` with rational strings.
pub fn vector_json(v: &SupportedVector<'_>) -> Value {
    Value::Array(
        v.terms()
            .map(|(g, c)| json!({"element": crate::render(v.model(), g), "re": c.re.to_string(), "im": c.im.to_string()}))
            .collect(),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct EstimateSummary {
    pub f: String,
    pub trials: usize,
    pub failures: usize,
    /// Largest `lhs / rhs` seen.
    pub max_ratio: f64,
    /// The pair attaining it.
    pub worst: Option<Value>,
}

/// Checks the product estimate on `trials` seeded random pairs supported on
/// the ball, for each `f`. The same pairs are used for every `f`.
pub fn product_estimates(
    model: &GroupModel,
    ball: &Ball,
    fs: &[BoundingFunction],
    trials: usize,
    max_support: usize,
    seed: u64,
    numeric: NumericMode,
) -> Result<Vec<EstimateSummary>, CliError> {
    let real = |x: &Real| match numeric {
        NumericMode::Exact => Value::String(x.to_string()),
        NumericMode::Float => json!(x.to_f64()),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = (0..trials)
        .map(|_| Ok((random_vector(model, ball, max_support, &mut rng)?, random_vector(model, ball, max_support, &mut rng)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let length_cap = 2 * ball.radius() + 1;
    fs.iter()
        .map(|f| {
            let results = pairs
                .par_iter()
                .map(|(a, b)| check_product_estimate(a, b, f, length_cap))
                .collect::<Result<Vec<_>, _>>()?;
            let mut summary = EstimateSummary { f: f.to_string(), trials, failures: 0, max_ratio: 0.0, worst: None };
            for (i, r) in results.iter().enumerate() {
                summary.failures += usize::from(!r.holds);
                let rhs = r.rhs.to_f64();
                let ratio = if rhs > 0.0 { r.lhs.to_f64() / rhs } else { 0.0 };
                if ratio > summary.max_ratio || summary.worst.is_none() {
                    summary.max_ratio = ratio;
                    summary.worst = Some(json!({
                        "a": vector_json(&pairs[i].0),
                        "b": vector_json(&pairs[i].1),
                        "lhs": real(&r.lhs),
                        "rhs": real(&r.rhs),
                    }));
                }
            }
            Ok(summary)
        })
        .collect()
}
