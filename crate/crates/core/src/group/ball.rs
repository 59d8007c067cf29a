use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{Element, GroupError, GroupModel};

/// Default cap on the number of elements a ball may hold.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// All elements of word length at most `radius`, in breadth-first order,
/// with a parent tree of geodesic edges.
///
/// Element 0 is the identity. For every other element `i`,
/// `elements[i] = elements[parent[i]] · generators[parent_generator[i]]`
/// and `lengths[i] = lengths[parent[i]] + 1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Ball {
    radius: u32,
    generators: Vec<Element>,
    elements: Vec<Element>,
    parent: Vec<u32>,
    parent_generator: Vec<u32>,
    lengths: Vec<u32>,
    #[serde(skip)]
    index: BTreeMap<Element, u32>,
}

impl Ball {
    /// Breadth-first enumeration over [`GroupModel::symmetric_generators`].
    pub fn build(model: &GroupModel, radius: u32, cap: usize) -> Result<Ball, GroupError> {
        let generators = model.symmetric_generators();
        let id = model.identity();
        let mut ball = Ball {
            radius,
            generators,
            elements: alloc::vec![id.clone()],
            parent: alloc::vec![0],
            parent_generator: alloc::vec![0],
            lengths: alloc::vec![0],
            index: BTreeMap::new(),
        };
        ball.index.insert(id, 0);
        let mut layer_start = 0usize;
        for r in 1..=radius {
            let layer_end = ball.elements.len();
            for i in layer_start..layer_end {
                for (gi, g) in ball.generators.iter().enumerate() {
                    let y = model.mul(&ball.elements[i], g);
                    if ball.index.contains_key(&y) {
                        continue;
                    }
                    if ball.elements.len() >= cap {
                        return Err(GroupError::BallOverflow { cap, radius });
                    }
                    ball.index.insert(y.clone(), ball.elements.len() as u32);
                    ball.elements.push(y);
                    ball.parent.push(i as u32);
                    ball.parent_generator.push(gi as u32);
                    ball.lengths.push(r);
                }
            }
            if ball.elements.len() == layer_end {
                break;
            }
            layer_start = layer_end;
        }
        Ok(ball)
    }

    /// Whether the parallel arrays agree in length, as a deserialized ball
    /// must before any entry is inspected.
    pub fn has_consistent_shape(&self) -> bool {
        let n = self.elements.len();
        n > 0 && self.parent.len() == n && self.parent_generator.len() == n && self.lengths.len() == n
    }

    /// Rebuilds the lookup index after deserialization.
    pub fn reindex(&mut self) {
        self.index = self.elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn parent(&self, i: usize) -> usize {
        self.parent[i] as usize
    }

    pub fn parent_generator(&self, i: usize) -> usize {
        self.parent_generator[i] as usize
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn length(&self, i: usize) -> u32 {
        self.lengths[i]
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).map(|&i| i as usize)
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    /// Exact length of `e` if it lies in the ball.
    pub fn length_of(&self, e: &Element) -> Option<u32> {
        self.index_of(e).map(|i| self.lengths[i])
    }

    /// Number of elements of each length `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut v = alloc::vec![0usize; self.radius as usize + 1];
        for &l in &self.lengths {
            v[l as usize] += 1;
        }
        v
    }

    /// Geodesic word (as generator indices into [`Ball::generators`]) from the
    /// identity to element `i`, read off the parent tree.
    pub fn geodesic_generators(&self, mut i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while i != 0 {
            out.push(self.parent_generator[i] as usize);
            i = self.parent[i] as usize;
        }
        out.reverse();
        out
    }

    /// Checks the parent-tree invariants of entry `i` against `model`.
    pub fn verify_entry(&self, model: &GroupModel, i: usize) -> bool {
        if i == 0 {
            return model.is_identity(&self.elements[0]) && self.lengths[0] == 0;
        }
        let p = self.parent[i] as usize;
        let g = self.parent_generator[i] as usize;
        p < self.elements.len()
            && g < self.generators.len()
            && self.lengths[i] == self.lengths[p] + 1
            && model.mul(&self.elements[p], &self.generators[g]) == self.elements[i]
    }
}
