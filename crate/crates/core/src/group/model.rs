use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// Torsion-free two-step nilpotent group given as a central extension
/// `ℤⁿ → G → ℤᵐ` with Mal'cev coordinates `(a, c)`.
///
/// `structure[i][j]` is the central vector attached to the commutator of the
/// basis elements `f_i`, `f_j`; it must be antisymmetric. Multiplication is
///
/// `(a, c)·(a', c') = (a + a', c + c' + Σ_{i>j} a_j a'_i C[i][j])`,
///
/// so `f_j f_i = f_i f_j C[i][j]` for `i > j`. For the Heisenberg group with
/// `C[1][0] = (1)` this reads `xy = yx·z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotentModel {
    m: usize,
    n: usize,
    structure: Vec<Vec<Vec<i64>>>,
    central_generators: bool,
}

impl NilpotentModel {
    pub fn new(
        m: usize,
        n: usize,
        structure: Vec<Vec<Vec<i64>>>,
        central_generators: bool,
    ) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::InvalidModel(String::from("m: must be positive")));
        }
        if structure.len() != m || structure.iter().any(|row| row.len() != m) {
            return Err(GroupError::InvalidModel(format!("C: expected an {m}x{m} array")));
        }
        for i in 0..m {
            for j in 0..m {
                if structure[i][j].len() != n {
                    return Err(GroupError::InvalidModel(format!(
                        "C[{i}][{j}]: expected a vector of length {n}"
                    )));
                }
                if i == j && structure[i][i].iter().any(|&x| x != 0) {
                    return Err(GroupError::InvalidModel(format!("C[{i}][{i}]: must be zero")));
                }
                if structure[i][j].iter().zip(&structure[j][i]).any(|(x, y)| *x != -*y) {
                    return Err(GroupError::InvalidModel(format!(
                        "C[{i}][{j}]: must equal -C[{j}][{i}]"
                    )));
                }
            }
        }
        Ok(NilpotentModel { m, n, structure, central_generators })
    }

    /// The integer Heisenberg group: `m = 2`, `n = 1`, `xy = yx·z`.
    pub fn heisenberg() -> Self {
        NilpotentModel::new(2, 1, vec![vec![vec![0], vec![-1]], vec![vec![1], vec![0]]], false)
            .expect("heisenberg structure constants are valid")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn structure(&self) -> &[Vec<Vec<i64>>] {
        &self.structure
    }

    pub fn central_generators(&self) -> bool {
        self.central_generators
    }

    pub fn with_central_generators(mut self, on: bool) -> Self {
        self.central_generators = on;
        self
    }

    /// The bilinear cocycle `q(a, a') = Σ_{i>j} a_j a'_i C[i][j]`.
    pub fn cocycle(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.n];
        for i in 0..self.m {
            for j in 0..i {
                let coef = a[j] * b[i];
                if coef == 0 {
                    continue;
                }
                for (t, c) in self.structure[i][j].iter().enumerate() {
                    out[t] += coef * c;
                }
            }
        }
        out
    }
}

/// A finite group given by its full multiplication table. Index 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteModel {
    table: Vec<Vec<u32>>,
    names: Option<Vec<String>>,
    generators: Vec<u32>,
    #[serde(skip)]
    inverses: Vec<u32>,
}

impl FiniteModel {
    /// Validates the table. When `generators` is `None` a generating set is
    /// picked greedily in index order.
    pub fn new(
        table: Vec<Vec<u32>>,
        names: Option<Vec<String>>,
        generators: Option<Vec<u32>>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::InvalidModel(String::from("table: must be nonempty")));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::InvalidModel(format!("table[{i}]: expected {order} entries")));
            }
            let mut seen = vec![false; order];
            for &x in row {
                if x as usize >= order || seen[x as usize] {
                    return Err(GroupError::InvalidModel(format!("table[{i}]: not a permutation")));
                }
                seen[x as usize] = true;
            }
        }
        for j in 0..order {
            let mut seen = vec![false; order];
            for row in &table {
                let x = row[j] as usize;
                if seen[x] {
                    return Err(GroupError::InvalidModel(format!("table: column {j} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        for i in 0..order {
            if table[0][i] as usize != i || table[i][0] as usize != i {
                return Err(GroupError::InvalidModel(String::from(
                    "table: row 0 and column 0 must be the identity permutation",
                )));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    let l = table[table[a][b] as usize][c];
                    let r = table[a][table[b][c] as usize];
                    if l != r {
                        return Err(GroupError::InvalidModel(format!(
                            "table: not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        if let Some(names) = &names {
            if names.len() != order {
                return Err(GroupError::InvalidModel(format!("names: expected {order} labels")));
            }
        }
        let mut model = FiniteModel { table, names, generators: Vec::new(), inverses: Vec::new() };
        model.rebuild_inverses();
        match generators {
            Some(gens) => {
                if gens.iter().any(|&g| g as usize >= order) {
                    return Err(GroupError::InvalidModel(String::from("generators: index out of range")));
                }
                model.generators = gens;
                if model.generated_subgroup(&model.generators).len() != order {
                    return Err(GroupError::InvalidModel(String::from(
                        "generators: do not generate the group",
                    )));
                }
            }
            None => model.generators = model.greedy_generators(),
        }
        Ok(model)
    }

    pub(crate) fn rebuild_inverses(&mut self) {
        let order = self.table.len();
        self.inverses = (0..order)
            .map(|a| (0..order as u32).find(|&b| self.table[a][b as usize] == 0).unwrap_or(0))
            .collect();
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = self.generated_subgroup(&gens);
        for g in 0..self.order() as u32 {
            if !span.contains(&g) {
                gens.push(g);
                span = self.generated_subgroup(&gens);
            }
        }
        gens
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0u32];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.table[x as usize][g as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order() as u32).filter(|&i| seen[i as usize]).collect()
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize][b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    pub fn name(&self, a: u32) -> String {
        match &self.names {
            Some(n) => n[a as usize].clone(),
            None => format!("#{a}"),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn index_of_name(&self, name: &str) -> Option<u32> {
        self.names.as_ref()?.iter().position(|n| n == name).map(|i| i as u32)
    }

    /// Cyclic group `ℤ/n` with generator 1.
    pub fn cyclic(n: u32) -> Self {
        assert!(n > 0);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n).map(|a| format!("{a}")).collect();
        FiniteModel::new(table, Some(names), Some(if n > 1 { vec![1] } else { vec![] }))
            .expect("cyclic table is valid")
    }

    /// Symmetric group on three letters. Elements are listed as
    /// `e, (12), (13), (23), (123), (132)`; generators are `(12)` and `(123)`.
    pub fn symmetric3() -> Self {
        // permutations as images of (0,1,2)
        let perms: [[usize; 3]; 6] =
            [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"];
        let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        // (p·q)(x) = p(q(x)): apply q first
        let table = (0..6)
            .map(|a| {
                (0..6)
                    .map(|b| {
                        let (p, q) = (perms[a], perms[b]);
                        find([p[q[0]], p[q[1]], p[q[2]]])
                    })
                    .collect()
            })
            .collect();
        FiniteModel::new(table, Some(names.iter().map(|s| String::from(*s)).collect()), Some(vec![1, 4]))
            .expect("S3 table is valid")
    }
}

/// The five group families the toolkit computes in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupModel {
    Free { rank: usize },
    FreeAbelian { rank: usize },
    TwoStepNilpotent(NilpotentModel),
    Finite(FiniteModel),
    FreeProduct { factors: Vec<GroupModel> },
}

impl GroupModel {
    pub fn free(rank: usize) -> Result<Self, GroupError> {
        if rank == 0 {
            return Err(GroupError::InvalidModel(String::from("rank: must be positive")));
        }
        Ok(GroupModel::Free { rank })
    }

    pub fn free_abelian(rank: usize) -> Result<Self, GroupError> {
        if rank == 0 {
            return Err(GroupError::InvalidModel(String::from("rank: must be positive")));
        }
        Ok(GroupModel::FreeAbelian { rank })
    }

    pub fn heisenberg() -> Self {
        GroupModel::TwoStepNilpotent(NilpotentModel::heisenberg())
    }

    /// A one-factor product collapses to its factor.
    pub fn free_product(mut factors: Vec<GroupModel>) -> Result<Self, GroupError> {
        match factors.len() {
            0 => Err(GroupError::InvalidModel(String::from("factors: must be nonempty"))),
            1 => Ok(factors.pop().unwrap()),
            _ => Ok(GroupModel::FreeProduct { factors }),
        }
    }

    /// Named built-in groups: `Z<n>` (cyclic), `S3`, `F<r>` (free),
    /// `Z^<r>` (free abelian), `H3` (Heisenberg).
    pub fn builtin(name: &str) -> Option<Self> {
        let name = name.trim();
        if name == "S3" {
            return Some(GroupModel::Finite(FiniteModel::symmetric3()));
        }
        if name == "H3" || name.eq_ignore_ascii_case("heisenberg") {
            return Some(GroupModel::heisenberg());
        }
        if let Some(r) = name.strip_prefix("Z^") {
            return r.parse().ok().and_then(|r| GroupModel::free_abelian(r).ok());
        }
        if let Some(n) = name.strip_prefix('Z') {
            return n.parse::<u32>().ok().filter(|&n| n > 0).map(|n| GroupModel::Finite(FiniteModel::cyclic(n)));
        }
        if let Some(r) = name.strip_prefix('F') {
            return r.parse().ok().and_then(|r| GroupModel::free(r).ok());
        }
        None
    }

    /// Restores derived data after deserialization.
    pub fn finalize(&mut self) {
        match self {
            GroupModel::Finite(f) => f.rebuild_inverses(),
            GroupModel::FreeProduct { factors } => factors.iter_mut().for_each(GroupModel::finalize),
            _ => {}
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GroupModel::Free { .. } => "free",
            GroupModel::FreeAbelian { .. } => "free_abelian",
            GroupModel::TwoStepNilpotent(_) => "two_step_nilpotent",
            GroupModel::Finite(_) => "finite",
            GroupModel::FreeProduct { .. } => "free_product",
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteModel> {
        match self {
            GroupModel::Finite(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_nilpotent(&self) -> Option<&NilpotentModel> {
        match self {
            GroupModel::TwoStepNilpotent(n) => Some(n),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[GroupModel]> {
        match self {
            GroupModel::FreeProduct { factors } => Some(factors),
            _ => None,
        }
    }

    /// True for models without nontrivial torsion elements.
    pub fn is_torsion_free(&self) -> bool {
        match self {
            GroupModel::Finite(f) => f.order() == 1,
            GroupModel::FreeProduct { factors } => factors.iter().all(GroupModel::is_torsion_free),
            _ => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_validation() {
        assert!(NilpotentModel::new(2, 1, vec![vec![vec![0], vec![1]], vec![vec![1], vec![0]]], false).is_err());
        assert!(NilpotentModel::new(2, 1, vec![vec![vec![1], vec![-1]], vec![vec![1], vec![-1]]], false).is_err());
        assert!(NilpotentModel::new(2, 1, vec![vec![vec![0]]], false).is_err());
    }

    #[test]
    fn finite_validation() {
        // not a Latin square
        assert!(FiniteModel::new(vec![vec![0, 1], vec![1, 1]], None, None).is_err());
        // identity row wrong
        assert!(FiniteModel::new(vec![vec![1, 0], vec![0, 1]], None, None).is_err());
        let z2 = FiniteModel::new(vec![vec![0, 1], vec![1, 0]], None, None).unwrap();
        assert_eq!(z2.generators(), &[1]);
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn builtins() {
        assert_eq!(GroupModel::builtin("Z2").unwrap().as_finite().unwrap().order(), 2);
        assert_eq!(GroupModel::builtin("S3").unwrap().as_finite().unwrap().order(), 6);
        assert_eq!(GroupModel::builtin("F2"), Some(GroupModel::Free { rank: 2 }));
        assert_eq!(GroupModel::builtin("Z^2"), Some(GroupModel::FreeAbelian { rank: 2 }));
        assert!(GroupModel::builtin("Q8").is_none());
        assert!(GroupModel::builtin("Z0").is_none());
    }

    #[test]
    fn one_factor_product_collapses() {
        let g = GroupModel::free_product(vec![GroupModel::Free { rank: 1 }]).unwrap();
        assert_eq!(g, GroupModel::Free { rank: 1 });
    }
}
