//! Sparse exact matrices and fraction-free rank.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// Sparse matrix with exact rational entries. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl SparseRationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix { rows, cols, entries: BTreeMap::new() }
    }

    /// Sums duplicate positions; drops zeros.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigRational)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (i, j, x) in triplets {
            m.add_to(i, j, x);
        }
        m
    }

    pub fn from_integer_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        Self::from_triplets(rows, cols, triplets.into_iter().map(|(i, j, x)| (i, j, BigRational::from_integer(x.into()))))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_integer_triplets(n, n, (0..n).map(|i| (i, i, 1)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.entries.iter().map(|(&(i, j), x)| (i, j, x))
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: BigRational) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) outside {}x{}", self.rows, self.cols);
        if x.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_insert_with(BigRational::zero);
        *slot += x;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn transpose(&self) -> Self {
        SparseRationalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(i, j), x)| ((j, i), x.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_triplets(self.rows, self.cols, self.entries().map(|(i, j, x)| (i, j, x * k)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let mut out = self.clone();
        for (i, j, x) in other.entries() {
            out.add_to(i, j, x.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut by_row: Vec<Vec<(usize, &BigRational)>> = alloc::vec![Vec::new(); other.rows];
        for (&(i, j), x) in &other.entries {
            by_row[i].push((j, x));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (&(i, k), x) in &self.entries {
            for &(j, y) in &by_row[k] {
                out.add_to(i, j, x * y);
            }
        }
        out
    }

    /// Row `i` as a sorted sparse vector.
    pub fn row_vectors(&self) -> Vec<Vec<(usize, BigRational)>> {
        let mut rows = alloc::vec![Vec::new(); self.rows];
        for (&(i, j), x) in &self.entries {
            rows[i].push((j, x.clone()));
        }
        rows
    }

    /// Restriction to the given row and column index sets, renumbered in the
    /// order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let rmap: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let cmap: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        Self::from_triplets(
            rows.len(),
            cols.len(),
            self.entries()
                .filter_map(|(i, j, x)| Some((*rmap.get(&i)?, *cmap.get(&j)?, x.clone()))),
        )
    }

    /// Exact rank. Each row is scaled to a primitive integer vector, then
    /// eliminated fraction-free.
    pub fn rank(&self) -> usize {
        let small: Option<Vec<Vec<(usize, i64)>>> = self
            .row_vectors()
            .into_iter()
            .map(|row| row.into_iter().map(|(j, x)| x.is_integer().then(|| x.to_integer().to_i64()).flatten().map(|v| (j, v))).collect())
            .collect();
        if let Some(rows) = small {
            return rank_of_integer_rows(&rows);
        }
        let rows = self.row_vectors().into_iter().map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
            row.into_iter().map(|(j, x)| (j, (x * BigRational::from_integer(lcm.clone())).to_integer())).collect()
        });
        rank_big(rows.collect())
    }
}

/// Rank of a set of sparse integer row vectors. Entries are `(column, value)`
/// pairs; columns need not be sorted. Runs in `i128` and falls back to
/// arbitrary precision on overflow.
pub fn rank_of_integer_rows(rows: &[Vec<(usize, i64)>]) -> usize {
    let small: Vec<Vec<(usize, i128)>> =
        rows.iter().map(|r| normalize(r.iter().map(|&(j, x)| (j, x as i128)).collect())).collect();
    if let Some(r) = echelon_rank(small) {
        return r;
    }
    rank_big(rows.iter().map(|r| r.iter().map(|&(j, x)| (j, BigInt::from(x))).collect()).collect())
}

fn rank_big(rows: Vec<Vec<(usize, BigInt)>>) -> usize {
    echelon_rank(rows.into_iter().map(normalize).collect()).expect("arbitrary precision cannot overflow")
}

/// Sorts by column, merges duplicates and drops zeros.
fn normalize<T: Clone + Zero>(mut v: Vec<(usize, T)>) -> Vec<(usize, T)> {
    v.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, T)> = Vec::with_capacity(v.len());
    for (j, x) in v {
        match out.last_mut() {
            Some((k, y)) if *k == j => *y = y.clone() + x,
            _ => out.push((j, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// Incremental echelon form keyed on the leading column. Returns `None` if a
/// checked operation overflows.
fn echelon_rank<T>(mut rows: Vec<Vec<(usize, T)>>) -> Option<usize>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    rows.sort_by_key(Vec::len);
    let mut pivots: BTreeMap<usize, Vec<(usize, T)>> = BTreeMap::new();
    for mut v in rows {
        loop {
            let Some(lead) = v.first().map(|e| e.0) else { break };
            let Some(p) = pivots.get(&lead) else {
                make_primitive(&mut v);
                pivots.insert(lead, v);
                break;
            };
            v = eliminate(&v, p)?;
        }
    }
    Some(pivots.len())
}

/// `(a/g)·v − (b/g)·p` where `a`, `b` are the leading entries of `p`, `v`.
fn eliminate<T>(v: &[(usize, T)], p: &[(usize, T)]) -> Option<Vec<(usize, T)>>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    let a = &p[0].1;
    let b = &v[0].1;
    let g = a.gcd(b);
    let sa = a.clone() / g.clone();
    let sb = b.clone() / g;
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut k) = (1, 1);
    while i < v.len() || k < p.len() {
        let jv = v.get(i).map_or(usize::MAX, |e| e.0);
        let jp = p.get(k).map_or(usize::MAX, |e| e.0);
        let (j, x) = if jv < jp {
            i += 1;
            (jv, v[i - 1].1.checked_mul(&sa)?)
        } else if jp < jv {
            k += 1;
            (jp, T::zero().checked_sub(&p[k - 1].1.checked_mul(&sb)?)?)
        } else {
            i += 1;
            k += 1;
            (jv, v[i - 1].1.checked_mul(&sa)?.checked_sub(&p[k - 1].1.checked_mul(&sb)?)?)
        };
        if !x.is_zero() {
            out.push((j, x));
        }
    }
    make_primitive(&mut out);
    Some(out)
}

fn make_primitive<T: Clone + Integer + Signed>(v: &mut [(usize, T)]) {
    let g = v.iter().fold(T::zero(), |g, (_, x)| g.gcd(x));
    if g.is_zero() || g.is_one() && !v[0].1.is_negative() {
        return;
    }
    let g = if v[0].1.is_negative() { -g } else { g };
    for (_, x) in v.iter_mut() {
        *x = x.clone() / g.clone();
    }
}
