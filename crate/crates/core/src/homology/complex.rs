use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::group::{FiniteModel, GroupModel};
use crate::linalg::SparseRationalMatrix;

use super::{conj_classes, finite, product, HomologyError, TupleBasis};

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn rotate(t: &[u32], i: usize) -> Vec<u32> {
    t[i..].iter().chain(&t[..i]).copied().collect()
}

/// Builds `C_from → C_to` from the images of each basis tuple.
fn operator<F>(f: &FiniteModel, from: usize, to: usize, cap: usize, image: F) -> Result<SparseRationalMatrix, HomologyError>
where
    F: Fn(&[u32]) -> Vec<(i64, Vec<u32>)>,
{
    let src = TupleBasis::new(f.order(), from, cap)?;
    let dst = TupleBasis::new(f.order(), to, cap)?;
    let triplets = src
        .tuples()
        .enumerate()
        .flat_map(|(j, t)| image(&t).into_iter().map(move |(c, u)| (dst.encode(&u), j, c)).collect::<Vec<_>>());
    Ok(SparseRationalMatrix::from_integer_triplets(dst.len(), src.len(), triplets))
}

/// `b_n : C_n → C_{n−1}` on the tuple basis, `n ≥ 1`.
pub fn hochschild_boundary(model: &GroupModel, n: usize, cap: usize) -> Result<SparseRationalMatrix, HomologyError> {
    let f = finite(model, "hochschild_boundary")?;
    if n == 0 {
        return Err(HomologyError::Degree { degree: n, range: "n >= 1" });
    }
    operator(f, n, n - 1, cap, |t| {
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut u = Vec::with_capacity(n);
            u.extend_from_slice(&t[..i]);
            u.push(f.mul(t[i], t[i + 1]));
            u.extend_from_slice(&t[i + 2..]);
            out.push((sign(i), u));
        }
        let mut u = vec![f.mul(t[n], t[0])];
        u.extend_from_slice(&t[1..n]);
        out.push((sign(n), u));
        out
    })
}

/// Connes' operator `B_n = (1 − t_{n+1}) s N : C_n → C_{n+1}`, where `N`
/// sums the signed cyclic permutations and `s` prepends the unit.
pub fn connes_b(model: &GroupModel, n: usize, cap: usize) -> Result<SparseRationalMatrix, HomologyError> {
    let f = finite(model, "connes_b")?;
    operator(f, n, n + 1, cap, |t| {
        (0..=n)
            .flat_map(|i| {
                let rot = rotate(t, i);
                let c = sign(n * i);
                let mut first = vec![0];
                first.extend_from_slice(&rot);
                let mut second = vec![rot[n], 0];
                second.extend_from_slice(&rot[..n]);
                [(c, first), (c * sign(n), second)]
            })
            .collect()
    })
}

/// The two-sum formula `Σ (−1)^{ni}(1, a_i, …, a_{i−1}) − Σ (−1)^{ni}(a_i, 1,
/// a_{i+1}, …, a_{i−1})`. It differs from [`connes_b`] in the sign of the
/// second sum and does not square to zero.
pub fn connes_b_printed(model: &GroupModel, n: usize, cap: usize) -> Result<SparseRationalMatrix, HomologyError> {
    let f = finite(model, "connes_b_printed")?;
    operator(f, n, n + 1, cap, |t| {
        (0..=n)
            .flat_map(|i| {
                let rot = rotate(t, i);
                let c = sign(n * i);
                let mut first = vec![0];
                first.extend_from_slice(&rot);
                let mut second = vec![rot[0], 0];
                second.extend_from_slice(&rot[1..]);
                [(c, first), (-c, second)]
            })
            .collect()
    })
}

/// `τ_n(a₀, …, a_n) = (−1)ⁿ (a_n, a₀, …, a_{n−1})`.
pub fn tau(model: &GroupModel, n: usize, cap: usize) -> Result<SparseRationalMatrix, HomologyError> {
    let f = finite(model, "tau")?;
    operator(f, n, n, cap, |t| vec![(sign(n), rotate(t, n))])
}

/// Coinvariants `C_n / im(1 − τ_n)`. Each rotation orbit whose sign
/// character is trivial contributes one basis vector, represented by its
/// least tuple; the rest die.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicQuotient {
    pub degree: usize,
    /// Tuple index of each surviving orbit's representative.
    pub representatives: Vec<usize>,
    /// The quotient map `C_n → CC_n`.
    pub projection: SparseRationalMatrix,
}

impl CyclicQuotient {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

pub fn cyclic_quotient(model: &GroupModel, n: usize, cap: usize) -> Result<CyclicQuotient, HomologyError> {
    let f = finite(model, "cyclic_quotient")?;
    let basis = TupleBasis::new(f.order(), n, cap)?;
    let mut seen = vec![false; basis.len()];
    let mut representatives = Vec::new();
    let mut triplets = Vec::new();
    for start in 0..basis.len() {
        if seen[start] {
            continue;
        }
        let rep = basis.decode(start);
        // rotations r^j(rep), with r = (−1)ⁿ τ, until the orbit closes
        let mut orbit = vec![start];
        seen[start] = true;
        loop {
            let j = orbit.len();
            let next = basis.encode(&rotate(&rep, (n + 1 - j % (n + 1)) % (n + 1)));
            if next == start {
                break;
            }
            seen[next] = true;
            orbit.push(next);
        }
        if n * orbit.len() % 2 == 1 {
            continue;
        }
        let row = representatives.len();
        representatives.push(start);
        triplets.extend(orbit.iter().enumerate().map(|(j, &idx)| (row, idx, sign(n * j))));
    }
    let projection = SparseRationalMatrix::from_integer_triplets(representatives.len(), basis.len(), triplets);
    Ok(CyclicQuotient { degree: n, representatives, projection })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    Hochschild,
    Cyclic,
}

/// Chain groups in degrees `0..=n_max + 1` with their boundaries; the top
/// group only serves as the source of `b_{n_max+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSlice {
    pub kind: ComplexKind,
    pub n_max: usize,
    pub dims: Vec<usize>,
    /// `boundaries[n − 1]` is `b_n : C_n → C_{n−1}`.
    pub boundaries: Vec<SparseRationalMatrix>,
    /// Conjugacy class of each basis vector, per degree.
    pub partition: Option<Vec<Vec<usize>>>,
    pub class_count: usize,
}

impl ComplexSlice {
    pub fn boundary(&self, n: usize) -> Option<&SparseRationalMatrix> {
        n.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }
}

fn tuple_classes(model: &GroupModel, n: usize, cap: usize) -> Result<Vec<usize>, HomologyError> {
    let f = finite(model, "burghelea_split")?;
    let table = conj_classes(model)?;
    let basis = TupleBasis::new(f.order(), n, cap)?;
    Ok(basis.tuples().map(|t| table.class_of_element(product(f, &t))).collect())
}

fn respects(m: &SparseRationalMatrix, rows: &[usize], cols: &[usize]) -> bool {
    m.entries().all(|(i, j, _)| rows[i] == cols[j])
}

pub fn hochschild_complex(model: &GroupModel, n_max: usize, cap: usize) -> Result<ComplexSlice, HomologyError> {
    let f = finite(model, "hochschild_complex")?;
    let dims = (0..=n_max + 1).map(|n| TupleBasis::new(f.order(), n, cap).map(|b| b.len())).collect::<Result<_, _>>()?;
    let boundaries = (1..=n_max + 1).map(|n| hochschild_boundary(model, n, cap)).collect::<Result<_, _>>()?;
    Ok(ComplexSlice { kind: ComplexKind::Hochschild, n_max, dims, boundaries, partition: None, class_count: 1 })
}

/// The Hochschild complex with tuples labelled by the conjugacy class of
/// their product. Fails if some `b_n` or `1 − τ_n` mixes classes.
pub fn burghelea_split(model: &GroupModel, n_max: usize, cap: usize) -> Result<ComplexSlice, HomologyError> {
    let mut slice = hochschild_complex(model, n_max, cap)?;
    let parts: Vec<Vec<usize>> = (0..=n_max + 1).map(|n| tuple_classes(model, n, cap)).collect::<Result<_, _>>()?;
    for (i, b) in slice.boundaries.iter().enumerate() {
        if !respects(b, &parts[i], &parts[i + 1]) {
            return Err(HomologyError::PartitionViolation { operator: "b", degree: i + 1 });
        }
    }
    for (n, part) in parts.iter().enumerate() {
        let one_minus_tau = SparseRationalMatrix::identity(part.len()).sub(&tau(model, n, cap)?);
        if !respects(&one_minus_tau, part, part) {
            return Err(HomologyError::PartitionViolation { operator: "1 - tau", degree: n });
        }
    }
    slice.class_count = conj_classes(model)?.len();
    slice.partition = Some(parts);
    Ok(slice)
}

/// The quotient complex `(C_*/(1 − τ), b̄)` with `b̄` induced on orbit
/// representatives. With `split`, basis vectors carry the class of the
/// product, which rotation preserves.
pub fn cyclic_complex(model: &GroupModel, n_max: usize, cap: usize, split: bool) -> Result<ComplexSlice, HomologyError> {
    let quotients: Vec<CyclicQuotient> = (0..=n_max + 1).map(|n| cyclic_quotient(model, n, cap)).collect::<Result<_, _>>()?;
    let mut boundaries = Vec::with_capacity(n_max + 1);
    for n in 1..=n_max + 1 {
        let b = hochschild_boundary(model, n, cap)?;
        let q = &quotients[n];
        let lift = SparseRationalMatrix::from_integer_triplets(
            b.cols(),
            q.dim(),
            q.representatives.iter().enumerate().map(|(k, &idx)| (idx, k, 1)),
        );
        boundaries.push(quotients[n - 1].projection.mul(&b).mul(&lift));
    }
    let dims = quotients.iter().map(CyclicQuotient::dim).collect();
    let mut slice = ComplexSlice { kind: ComplexKind::Cyclic, n_max, dims, boundaries, partition: None, class_count: 1 };
    if split {
        let f = finite(model, "cyclic_complex")?;
        let table = conj_classes(model)?;
        let parts: Vec<Vec<usize>> = quotients
            .iter()
            .map(|q| {
                let basis = TupleBasis::new(f.order(), q.degree, cap)?;
                Ok(q.representatives.iter().map(|&i| table.class_of_element(product(f, &basis.decode(i)))).collect())
            })
            .collect::<Result<_, HomologyError>>()?;
        for (i, b) in slice.boundaries.iter().enumerate() {
            if !respects(b, &parts[i], &parts[i + 1]) {
                return Err(HomologyError::PartitionViolation { operator: "b", degree: i + 1 });
            }
        }
        slice.class_count = table.len();
        slice.partition = Some(parts);
    }
    Ok(slice)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyDims {
    pub kind: ComplexKind,
    /// `dim H_n` for `n` in `0..=n_max`.
    pub per_degree: Vec<usize>,
    /// `per_class[c][n]`, present for a split slice.
    pub per_class: Option<Vec<Vec<usize>>>,
}

/// `dim H_n = dim C_n − rank b_n − rank b_{n+1}` by exact elimination, and
/// the same per class block when the slice is split.
pub fn homology_dims(slice: &ComplexSlice) -> HomologyDims {
    let dims_from = |chain: &[usize], ranks: &[usize]| -> Vec<usize> {
        (0..=slice.n_max).map(|n| chain[n] - ranks[n] - ranks[n + 1]).collect()
    };
    let mut ranks = vec![0usize];
    ranks.extend(slice.boundaries.iter().map(SparseRationalMatrix::rank));
    let per_degree = dims_from(&slice.dims, &ranks);
    let per_class = slice.partition.as_ref().map(|parts| {
        (0..slice.class_count)
            .map(|c| {
                let members: Vec<Vec<usize>> =
                    parts.iter().map(|p| (0..p.len()).filter(|&i| p[i] == c).collect()).collect();
                let chain: Vec<usize> = members.iter().map(Vec::len).collect();
                let mut r = vec![0usize];
                r.extend(slice.boundaries.iter().enumerate().map(|(i, b)| b.submatrix(&members[i], &members[i + 1]).rank()));
                dims_from(&chain, &r)
            })
            .collect()
    });
    HomologyDims { kind: slice.kind, per_degree, per_class }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    /// `"b∘b"`, `"B∘B"` or `"bB+Bb"`.
    pub identity: String,
    /// Source degree.
    pub degree: usize,
    pub nonzero_entries: usize,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.nonzero_entries == 0
    }
}

/// `b∘b`, `B∘B` and `bB + Bb` as exact matrix products on `C_n`,
/// `n ≤ max_degree`.
pub fn check_identities(model: &GroupModel, max_degree: usize, cap: usize) -> Result<Vec<IdentityCheck>, HomologyError> {
    let check = |identity: &str, degree: usize, m: SparseRationalMatrix| IdentityCheck {
        identity: String::from(identity),
        degree,
        nonzero_entries: m.nnz(),
    };
    let mut out = Vec::new();
    for n in 0..=max_degree {
        let b_up = hochschild_boundary(model, n + 1, cap)?;
        let big_b = connes_b(model, n, cap)?;
        if n >= 1 {
            let b = hochschild_boundary(model, n, cap)?;
            out.push(check("b∘b", n + 1, b.mul(&b_up)));
            out.push(check("bB+Bb", n, b_up.mul(&big_b).add(&connes_b(model, n - 1, cap)?.mul(&b))));
        } else {
            out.push(check("bB+Bb", n, b_up.mul(&big_b)));
        }
        out.push(check("B∘B", n, connes_b(model, n + 1, cap)?.mul(&big_b)));
    }
    Ok(out)
}
