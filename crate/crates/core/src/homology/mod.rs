//! Hochschild and cyclic complexes of `ℂ[G]` for finite `G`, split by
//! conjugacy class of the product of a tuple.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conjugacy::{centralizer_generators_in_ball, ConjugacyError};
use crate::group::{Ball, Element, FiniteModel, GroupError, GroupModel, Order};

mod complex;
mod simplicial;
mod weights;

pub use complex::{
    burghelea_split, check_identities, connes_b, connes_b_printed, cyclic_complex, cyclic_quotient,
    hochschild_boundary, hochschild_complex, homology_dims, tau, ComplexKind, ComplexSlice, CyclicQuotient,
    HomologyDims, IdentityCheck,
};
pub use simplicial::{prop_141_maps, SimplicialReport};
pub use weights::{weight_check, WeightReport};


/// Largest `|G|^{n+1}` accepted for a chain group.
pub const DEFAULT_BASIS_CAP: usize = 10_000;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("{operation} needs a finite group, got {got}")]
    NotFinite { operation: &'static str, got: &'static str },
    #[error("degree {degree} basis has {size} tuples, above the cap {cap}")]
    BasisOverflow { degree: usize, size: u128, cap: usize },
    #[error("{operator} in degree {degree} mixes conjugacy classes")]
    PartitionViolation { operator: &'static str, degree: usize },
    #[error("degree {degree} outside the supported range {range}")]
    Degree { degree: usize, range: &'static str },
    #[error("no conjugacy class {0}")]
    UnknownClass(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Conjugacy(#[from] ConjugacyError),
}

pub(crate) fn finite<'m>(model: &'m GroupModel, operation: &'static str) -> Result<&'m FiniteModel, HomologyError> {
    model.as_finite().ok_or(HomologyError::NotFinite { operation, got: model.kind() })
}

/// Tuples `(g₀, …, g_n)` of a group of order `k`, indexed in base `k` with
/// `g₀` most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleBasis {
    order: usize,
    degree: usize,
}

impl TupleBasis {
    pub fn new(order: usize, degree: usize, cap: usize) -> Result<Self, HomologyError> {
        let size = (order as u128).checked_pow(degree as u32 + 1).unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(HomologyError::BasisOverflow { degree, size, cap });
        }
        Ok(TupleBasis { order, degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.order.pow(self.degree as u32 + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn encode(&self, t: &[u32]) -> usize {
        debug_assert_eq!(t.len(), self.degree + 1);
        t.iter().fold(0, |acc, &g| acc * self.order + g as usize)
    }

    pub fn decode(&self, mut i: usize) -> Vec<u32> {
        let mut t = alloc::vec![0u32; self.degree + 1];
        for slot in t.iter_mut().rev() {
            *slot = (i % self.order) as u32;
            i /= self.order;
        }
        t
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.len()).map(|i| self.decode(i))
    }
}

pub(crate) fn product(f: &FiniteModel, t: &[u32]) -> u32 {
    t.iter().fold(0, |acc, &g| f.mul(acc, g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClass {
    pub representative: Element,
    pub members: Vec<Element>,
    /// The representative has finite order.
    pub elliptic: bool,
    pub centralizer_generators: Vec<Element>,
    pub centralizer_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClassTable {
    pub classes: Vec<ConjClass>,
    /// Class index of each element, by table index.
    pub class_of: Vec<usize>,
}

impl ConjClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of_element(&self, g: u32) -> usize {
        self.class_of[g as usize]
    }

    /// Index of the class containing `g`, by display name or table index.
    pub fn find(&self, model: &GroupModel, name: &str) -> Result<usize, HomologyError> {
        match model.parse_element(name)? {
            Element::Finite(g) => Ok(self.class_of_element(g)),
            _ => Err(HomologyError::NotFinite { operation: "find", got: model.kind() }),
        }
    }
}

/// Conjugacy classes by exhaustive conjugation, ordered by least member.
/// Centralizers come from a commutation scan.
pub fn conj_classes(model: &GroupModel) -> Result<ConjClassTable, HomologyError> {
    let f = finite(model, "conj_classes")?;
    let k = f.order();
    let ball = Ball::build(model, k as u32, k)?;
    let mut class_of = alloc::vec![usize::MAX; k];
    let mut classes = Vec::new();
    for h in 0..k as u32 {
        if class_of[h as usize] != usize::MAX {
            continue;
        }
        let members: BTreeSet<u32> = (0..k as u32).map(|g| f.mul(f.mul(f.inv(g), h), g)).collect();
        for &m in &members {
            class_of[m as usize] = classes.len();
        }
        let rep = Element::Finite(h);
        let centralizer_order = (0..k as u32).filter(|&g| f.mul(g, h) == f.mul(h, g)).count();
        let centralizer_generators = centralizer_generators_in_ball(model, &rep, &ball)?;
        classes.push(ConjClass {
            elliptic: matches!(model.is_torsion(&rep)?, Order::Finite(_)),
            representative: rep,
            members: members.into_iter().map(Element::Finite).collect(),
            centralizer_generators,
            centralizer_order,
        });
    }
    Ok(ConjClassTable { classes, class_of })
}

pub(crate) fn describe(model: &GroupModel, g: u32) -> String {
    match model.as_finite().and_then(|f| f.names().map(|n| n[g as usize].clone())) {
        Some(name) => name,
        None => alloc::format!("{}", Element::Finite(g)),
    }
}
