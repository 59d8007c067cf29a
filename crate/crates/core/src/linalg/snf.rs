//! Smith normal form over ℤ and integer linear system solving.

use alloc::vec;
use alloc::vec::Vec;

/// Dense integer matrix, row-major.
pub type IntMatrix = Vec<Vec<i64>>;

/// `U · A · V = S` with `U`, `V` unimodular and `S` diagonal,
/// `d₀ | d₁ | …`, all `dᵢ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.s.len().min(self.s.first().map_or(0, Vec::len))).map(|i| self.s[i][i]).collect()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for t in 0..k {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[t][j];
            }
        }
    }
    out
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Smith normal form of an `r × c` integer matrix.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut s = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if s[i][j] != 0 && best.map_or(true, |(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut s, t, pj);
        swap_cols(&mut v, t, pj);

        let mut clean = true;
        for i in t + 1..rows {
            let q = s[i][t].div_euclid(s[t][t]);
            if q != 0 {
                add_row(&mut s, i, t, -q);
                add_row(&mut u, i, t, -q);
            }
            if s[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = s[t][j].div_euclid(s[t][t]);
            if q != 0 {
                add_col(&mut s, j, t, -q);
                add_col(&mut v, j, t, -q);
            }
            if s[t][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            // a smaller remainder now sits in row/column t; pick it up again
            continue;
        }
        let d = s[t][t];
        if let Some((bi, _)) = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| s[i][j] % d != 0)
        {
            add_row(&mut s, t, bi, 1);
            add_row(&mut u, t, bi, 1);
            continue;
        }
        if d < 0 {
            for x in s[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let rank = (0..rows.min(cols)).take_while(|&i| s[i][i] != 0).count();
    SmithForm { u, s, v, rank }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// row[dst] += k · row[src]
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, k: i64) {
    let (d, s) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        *x += k * y;
    }
}

/// col[dst] += k · col[src]
fn add_col(m: &mut IntMatrix, dst: usize, src: usize, k: i64) {
    for row in m.iter_mut() {
        row[dst] += k * row[src];
    }
}

/// Integer solutions of `A z = b`: a particular solution and a basis of the
/// integer kernel lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSolution {
    pub particular: Vec<i64>,
    pub kernel: Vec<Vec<i64>>,
}

/// Solves `A z = b` over ℤ. Returns `None` when no integer solution exists.
pub fn solve_integer_system(a: &IntMatrix, b: &[i64], cols: usize) -> Option<IntegerSolution> {
    let rows = a.len();
    if rows == 0 {
        let kernel = identity(cols);
        return Some(IntegerSolution { particular: vec![0; cols], kernel });
    }
    let snf = smith_normal_form(a);
    // S y = U b, z = V y
    let ub: Vec<i64> = snf.u.iter().map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect();
    let mut y = vec![0i64; cols];
    for i in 0..rows {
        let d = if i < cols { snf.s[i][i] } else { 0 };
        if d == 0 {
            if ub[i] != 0 {
                return None;
            }
        } else {
            if ub[i] % d != 0 {
                return None;
            }
            y[i] = ub[i] / d;
        }
    }
    let particular: Vec<i64> = (0..cols).map(|r| (0..cols).map(|k| snf.v[r][k] * y[k]).sum()).collect();
    let kernel = (snf.rank..cols).map(|k| (0..cols).map(|r| snf.v[r][k]).collect()).collect();
    Some(IntegerSolution { particular, kernel })
}
