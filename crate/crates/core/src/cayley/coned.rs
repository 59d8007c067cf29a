use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{cayley_graph, GraphError, GraphPath, MetricGraph};
use crate::group::{Ball, Element, GroupModel};

/// A peripheral subgroup, given by a membership oracle that works on
/// arbitrary elements of the ambient model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Subgroup {
    /// Factor `factor` of a free product.
    Factor { factor: usize },
    /// The cyclic subgroup generated by `generator`.
    Cyclic { generator: Element },
}

impl Subgroup {
    pub fn contains(&self, model: &GroupModel, x: &Element) -> Result<bool, GraphError> {
        match self {
            Subgroup::Factor { factor } => {
                let n = model
                    .factors()
                    .ok_or_else(|| GraphError::InconsistentOracle("factor subgroups need a free product".into()))?
                    .len();
                if *factor >= n {
                    return Err(GraphError::InconsistentOracle(format!("factor {factor} out of range 0..{n}")));
                }
                Ok(match x.syllables() {
                    Some([]) => true,
                    Some([s]) => s.factor == *factor,
                    _ => false,
                })
            }
            Subgroup::Cyclic { generator } => Ok(model.power_exponent(generator, x).is_some()),
        }
    }

    pub fn describe(&self) -> alloc::string::String {
        match self {
            Subgroup::Factor { factor } => format!("factor {factor}"),
            Subgroup::Cyclic { generator } => format!("<{generator}>"),
        }
    }
}

enum CosetStrategy {
    /// Exact coset key: strip a trailing syllable of the factor.
    Key,
    /// Every subgroup element of length at most twice the radius.
    Steps(Vec<Element>),
    /// Union over in-ball members, then an oracle test between all classes.
    Pairwise,
}

impl Subgroup {
    /// Two ball elements of one coset differ by a subgroup element of length
    /// at most `2r`. When those elements can be listed, right multiplication
    /// by them finds every coset exactly.
    fn coset_strategy(&self, model: &GroupModel, r: u32) -> CosetStrategy {
        let Subgroup::Cyclic { generator: h } = self else { return CosetStrategy::Key };
        let undistorted = match model {
            // L(hʲ) ≥ |j| for h ≠ 1
            GroupModel::Free { .. } | GroupModel::FreeAbelian { .. } => true,
            // the abelian image bounds length from below
            GroupModel::TwoStepNilpotent(_) => model.abelianization(h).is_some_and(|v| v.iter().any(|&x| x != 0)),
            GroupModel::Finite(_) => {
                let order = match model.is_torsion(h) {
                    Ok(crate::group::Order::Finite(o)) => o as i64,
                    _ => return CosetStrategy::Pairwise,
                };
                return CosetStrategy::Steps((1..order).map(|j| model.pow(h, j)).collect());
            }
            GroupModel::FreeProduct { .. } => false,
        };
        if !undistorted || model.is_identity(h) {
            return CosetStrategy::Pairwise;
        }
        let j = 2 * i64::from(r);
        CosetStrategy::Steps((1..=j).flat_map(|k| [model.pow(h, k), model.pow(h, -k)]).collect())
    }
}

fn k_factor(h: &Subgroup) -> usize {
    match h {
        Subgroup::Factor { factor } => *factor,
        Subgroup::Cyclic { .. } => unreachable!("keys are only used for factor subgroups"),
    }
}

/// `x` with a trailing syllable from `factor` removed; constant on `xH`.
fn factor_coset_key(x: &Element, factor: usize) -> Element {
    let mut s = x.syllables().expect("product element").to_vec();
    if s.last().is_some_and(|t| t.factor == factor) {
        s.pop();
    }
    Element::Product(s)
}

/// A left coset `gH` meeting the ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub subgroup: usize,
    /// Ball indices of the members, ascending.
    pub members: Vec<u32>,
    pub cone_vertex: u32,
}

/// Cayley graph of a ball with one cone vertex per coset of each peripheral
/// subgroup, joined to the coset's members by half-edges.
#[derive(Clone, Debug)]
pub struct ConedOffGraph {
    base: MetricGraph,
    graph: MetricGraph,
    cosets: Vec<Coset>,
    /// `coset_of[λ][v]` is the coset of subgroup `λ` containing ball vertex `v`.
    coset_of: Vec<Vec<u32>>,
}

impl ConedOffGraph {
    /// The plain Cayley graph on the ball vertices.
    pub fn base(&self) -> &MetricGraph {
        &self.base
    }

    /// The coned-off graph: ball vertices first, then cone vertices.
    pub fn graph(&self) -> &MetricGraph {
        &self.graph
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn base_vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    pub fn cone_vertex_count(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_cone_vertex(&self, v: u32) -> bool {
        v as usize >= self.base.vertex_count()
    }

    pub fn coset_of(&self, subgroup: usize, v: u32) -> u32 {
        self.coset_of[subgroup][v as usize]
    }

    /// Distance in the coned-off graph.
    pub fn distance(&self, u: u32, v: u32) -> Result<Rational64, GraphError> {
        self.graph.distance(u, v)
    }

    /// Distance in the underlying Cayley graph.
    pub fn cayley_distance(&self, u: u32, v: u32) -> Result<Rational64, GraphError> {
        self.base.distance(u, v)
    }
}

/// Builds the coned-off graph of `ball` relative to `subgroups`.
///
/// Checks that each oracle is closed under `x·y⁻¹` within the ball and that
/// distinct subgroups meet trivially on the ball. Cosets come from a
/// union-find over right multiplication by subgroup members in the ball,
/// followed by an oracle test `r₁⁻¹r₂ ∈ H` between the remaining classes.
pub fn coned_off(model: &GroupModel, ball: &Ball, subgroups: &[Subgroup]) -> Result<ConedOffGraph, GraphError> {
    let base = cayley_graph(model, ball);
    let n = ball.len();
    let mut members_by_subgroup = Vec::with_capacity(subgroups.len());
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (k, h) in subgroups.iter().enumerate() {
        let mut members = Vec::new();
        for (i, x) in ball.elements().iter().enumerate() {
            if h.contains(model, x)? {
                members.push(i);
                if i != 0 {
                    if let Some(other) = owner[i] {
                        return Err(GraphError::OverlappingSubgroups(format!(
                            "subgroups {other} and {k} share {x}"
                        )));
                    }
                    owner[i] = Some(k);
                }
            }
        }
        if members.first() != Some(&0) {
            return Err(GraphError::InconsistentOracle(format!("{} does not contain the identity", h.describe())));
        }
        for &i in &members {
            for &j in &members {
                let q = model.mul(ball.element(i), &model.inv(ball.element(j)));
                if ball.contains(&q) && !h.contains(model, &q)? {
                    return Err(GraphError::InconsistentOracle(format!(
                        "{} is not closed: {} * {}^-1 = {q}",
                        h.describe(),
                        ball.element(i),
                        ball.element(j)
                    )));
                }
            }
        }
        members_by_subgroup.push(members);
    }

    let mut graph = base.clone();
    let mut cosets = Vec::new();
    let mut coset_of = Vec::with_capacity(subgroups.len());
    for (k, h) in subgroups.iter().enumerate() {
        let mut uf = UnionFind::new(n);
        match h.coset_strategy(model, ball.radius()) {
            CosetStrategy::Key => {
                let mut first: BTreeMap<Element, usize> = BTreeMap::new();
                for (i, x) in ball.elements().iter().enumerate() {
                    let key = factor_coset_key(x, k_factor(h));
                    let root = *first.entry(key).or_insert(i);
                    uf.union(root, i);
                }
            }
            CosetStrategy::Steps(steps) => {
                for (i, x) in ball.elements().iter().enumerate() {
                    for s in &steps {
                        if let Some(j) = ball.index_of(&model.mul(x, s)) {
                            uf.union(i, j);
                        }
                    }
                }
            }
            CosetStrategy::Pairwise => {
                for (i, x) in ball.elements().iter().enumerate() {
                    for &m in &members_by_subgroup[k] {
                        if let Some(j) = ball.index_of(&model.mul(x, ball.element(m))) {
                            uf.union(i, j);
                        }
                    }
                }
                let reps: Vec<usize> = (0..n).filter(|&i| uf.find(i) == i).collect();
                for (a, &ra) in reps.iter().enumerate() {
                    if uf.find(ra) != ra {
                        continue;
                    }
                    let ra_inv = model.inv(ball.element(ra));
                    for &rb in &reps[a + 1..] {
                        if uf.find(rb) == rb && h.contains(model, &model.mul(&ra_inv, ball.element(rb)))? {
                            uf.union(ra, rb);
                        }
                    }
                }
            }
        }
        // number cosets by their least member
        let mut index: BTreeMap<usize, u32> = BTreeMap::new();
        let mut of = vec![0u32; n];
        for v in 0..n {
            let root = uf.find(v);
            let c = *index.entry(root).or_insert_with(|| {
                let cone = graph.add_vertex(format!("v({}H{k})", ball.element(v)));
                cosets.push(Coset { subgroup: k, members: Vec::new(), cone_vertex: cone });
                (cosets.len() - 1) as u32
            });
            cosets[c as usize].members.push(v as u32);
            of[v] = c;
        }
        coset_of.push(of);
    }
    for c in &cosets {
        for &m in &c.members {
            graph.add_edge(c.cone_vertex, m, 1)?;
        }
    }
    Ok(ConedOffGraph { base, graph, cosets, coset_of })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Keeps the smaller root so class representatives are least members.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// One passage of a path through a coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Penetration {
    pub coset: u32,
    pub subgroup: usize,
    pub entry: u32,
    pub exit: u32,
    /// Cayley-graph distance between entry and exit.
    pub cayley_distance: Rational64,
}

/// Maximal runs of consecutive path steps that stay in one coset: either
/// passing through its cone vertex or moving between two of its members.
pub fn penetration_report(path: &GraphPath, coned: &ConedOffGraph) -> Result<Vec<Penetration>, GraphError> {
    let vs = path.vertices();
    let base_n = coned.base_vertex_count() as u32;
    let step_coset = |u: u32, v: u32| -> Option<u32> {
        if u >= base_n {
            return Some(u - base_n);
        }
        if v >= base_n {
            return Some(v - base_n);
        }
        (0..coned.coset_of.len()).map(|k| coned.coset_of(k, u)).find(|&c| coned.coset_of(coned.cosets[c as usize].subgroup, v) == c)
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i + 1 < vs.len() {
        let Some(c) = step_coset(vs[i], vs[i + 1]) else {
            i += 1;
            continue;
        };
        let mut j = i + 1;
        while j + 1 < vs.len() && step_coset(vs[j], vs[j + 1]) == Some(c) {
            j += 1;
        }
        let run = &vs[i..=j];
        let mut base_members = run.iter().copied().filter(|&v| v < base_n);
        let entry = base_members.next().ok_or_else(|| GraphError::InconsistentOracle("cone-only run".to_string()))?;
        let exit = run.iter().copied().rev().find(|&v| v < base_n).unwrap_or(entry);
        out.push(Penetration {
            coset: c,
            subgroup: coned.cosets[c as usize].subgroup,
            entry,
            exit,
            cayley_distance: coned.cayley_distance(entry, exit)?,
        });
        i = j;
    }
    Ok(out)
}

/// Whether the path re-enters a coset it has already left.
pub fn has_backtracking(report: &[Penetration]) -> bool {
    report.iter().enumerate().any(|(i, p)| report[..i].iter().any(|q| q.coset == p.coset))
}
