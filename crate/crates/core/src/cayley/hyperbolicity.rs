use alloc::vec::Vec;

use num_rational::Rational64;
use rand::Rng;

use super::{GraphError, GraphPath, MetricGraph};

/// Graphs up to this many vertices get an exhaustive quadruple scan under
/// [`DeltaMode::Auto`].
pub const EXHAUSTIVE_VERTEX_CAP: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMode {
    /// Every quadruple `x < y < z < w`.
    Exhaustive,
    /// This many uniformly random quadruples.
    Sampled(u64),
    /// Exhaustive up to [`EXHAUSTIVE_VERTEX_CAP`] vertices, sampled above.
    Auto(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaEstimate {
    pub delta: Rational64,
    pub exhaustive: bool,
    pub quadruples: u64,
    /// A quadruple attaining the maximum (first in scan order).
    pub witness: Option<[u32; 4]>,
}

/// Four-point defect of a quadruple in scaled units: the largest of the
/// three pair sums minus the middle one. The true defect is this over 4
/// (halve the sums' difference, then undo the ×2 scaling).
pub fn scaled_defect(d: &[Vec<u64>], x: usize, y: usize, z: usize, w: usize) -> u64 {
    let mut s = [d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]];
    s.sort_unstable();
    s[2] - s[1]
}

/// Maximum scaled defect over quadruples whose least vertex is `x`. The
/// exhaustive scan is the max of this over all `x`, which lets callers split
/// the work by `x` and merge deterministically.
pub fn max_defect_from(d: &[Vec<u64>], x: usize) -> (u64, Option<[u32; 4]>) {
    let n = d.len();
    let mut best = (0u64, None);
    for y in x + 1..n {
        for z in y + 1..n {
            for w in z + 1..n {
                let s = scaled_defect(d, x, y, z, w);
                if s > best.0 || best.1.is_none() {
                    best = (s, Some([x as u32, y as u32, z as u32, w as u32]));
                }
            }
        }
    }
    best
}

/// Merges per-`x` results in ascending `x`, keeping the earliest maximum.
pub fn merge_defects<I: IntoIterator<Item = (u64, Option<[u32; 4]>)>>(parts: I) -> (u64, Option<[u32; 4]>) {
    parts.into_iter().fold((0, None), |acc, p| match (acc.1, p.1) {
        (None, _) => p,
        (Some(_), Some(_)) if p.0 > acc.0 => p,
        _ => acc,
    })
}

pub fn quadruple_count(n: usize) -> u64 {
    let n = n as u64;
    if n < 4 {
        0
    } else {
        n * (n - 1) * (n - 2) * (n - 3) / 24
    }
}

/// Four-point δ estimate. The exhaustive value is exact for the finite graph.
pub fn estimate_delta_4point<R: Rng + ?Sized>(
    graph: &MetricGraph,
    mode: DeltaMode,
    rng: &mut R,
) -> Result<DeltaEstimate, GraphError> {
    let d = graph.all_pairs()?;
    let n = d.len();
    let exhaustive = match mode {
        DeltaMode::Exhaustive => true,
        DeltaMode::Sampled(_) => false,
        DeltaMode::Auto(_) => n <= EXHAUSTIVE_VERTEX_CAP,
    };
    if exhaustive {
        let (s, witness) = merge_defects((0..n).map(|x| max_defect_from(&d, x)));
        return Ok(DeltaEstimate {
            delta: Rational64::new(s as i64, 4),
            exhaustive: true,
            quadruples: quadruple_count(n),
            witness,
        });
    }
    let samples = match mode {
        DeltaMode::Sampled(k) | DeltaMode::Auto(k) => k,
        DeltaMode::Exhaustive => unreachable!(),
    };
    let mut best = (0u64, None);
    if n > 0 {
        for _ in 0..samples {
            let q: [usize; 4] = core::array::from_fn(|_| rng.random_range(0..n));
            let s = scaled_defect(&d, q[0], q[1], q[2], q[3]);
            if s > best.0 || best.1.is_none() {
                best = (s, Some(q.map(|v| v as u32)));
            }
        }
    }
    Ok(DeltaEstimate { delta: Rational64::new(best.0 as i64, 4), exhaustive: false, quadruples: samples, witness: best.1 })
}

/// `(k, k)`-quasi-geodesic test over every pair of path positions `s < t`
/// (arc-length parameters): `|t − s| ≤ k·d + k` and `d ≤ k·|t − s| + k`.
pub fn is_quasi_geodesic(path: &GraphPath, k: Rational64, graph: &MetricGraph) -> Result<bool, GraphError> {
    if k < Rational64::from_integer(1) {
        return Err(GraphError::InvalidParameter("k must be at least 1"));
    }
    let pos = path.scaled_positions(graph);
    let vs = path.vertices();
    let (kn, kd) = (i128::from(*k.numer()), i128::from(*k.denom()));
    let mut rows: alloc::collections::BTreeMap<u32, Vec<Option<u64>>> = alloc::collections::BTreeMap::new();
    for &v in vs {
        rows.entry(v).or_insert_with(|| graph.scaled_distances_from(v));
    }
    for s in 0..vs.len() {
        let row = &rows[&vs[s]];
        for t in s + 1..vs.len() {
            let d = i128::from(row[vs[t] as usize].ok_or(GraphError::Disconnected(vs[s], vs[t]))?);
            let dt = i128::from(pos[t] - pos[s]);
            // scaled: multiply both sides by 2·denom(k)
            if kd * dt > kn * d + 2 * kn || kd * d > kn * dt + 2 * kn {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
