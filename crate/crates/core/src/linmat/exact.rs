//! Exact rank and kernel computations for integer matrices.
//!
//! Ranks over `Q` use fraction-free column elimination with content
//! removal. A rank computation modulo a large prime runs first: the rank can
//! only drop modulo `p`, so full column rank mod `p` certifies a zero kernel
//! over `Q` without touching big integers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fp;

/// Integer matrix in coordinate-list form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let mut m = SparseIntMatrix::new(rows, cols);
        for (i, row) in dense.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.entries.push((i, j, v));
                }
            }
        }
        m
    }

    /// Add `v` at `(row, col)`; repeated positions accumulate.
    pub fn push(&mut self, row: usize, col: usize, v: i64) {
        assert!(row < self.rows && col < self.cols, "entry out of bounds");
        if v != 0 {
            self.entries.push((row, col, v));
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Merged nonzero entries sorted by `(row, col)`.
    pub fn entries(&self) -> Vec<(usize, usize, i64)> {
        let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
        for &(r, c, v) in &self.entries {
            *acc.entry((r, c)).or_insert(0) += v;
        }
        let mut out: Vec<_> = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn nnz(&self) -> usize {
        self.entries().len()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v;
        }
        d
    }

    /// Columns as sorted `(row, value)` lists.
    pub fn columns(&self) -> Vec<Vec<(usize, i64)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            cols[c].push((r, v));
        }
        cols
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut by_row: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for (r, c, v) in other.entries() {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = SparseIntMatrix::new(self.rows, other.cols);
        for (i, k, a) in self.entries() {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    out.push(i, j, a * b);
                }
            }
        }
        out.entries = out.entries();
        out
    }
}

fn axpy_mod(col: &[(usize, u64)], pivot: &[(usize, u64)], factor: u64, p: u64) -> Vec<(usize, u64)> {
    // col - factor * pivot, both sorted by row
    let mut out = Vec::with_capacity(col.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < col.len() || j < pivot.len() {
        let take_col = j >= pivot.len() || (i < col.len() && col[i].0 < pivot[j].0);
        let take_piv = i >= col.len() || (j < pivot.len() && pivot[j].0 < col[i].0);
        if take_col {
            out.push(col[i]);
            i += 1;
        } else if take_piv {
            let v = fp::sub_mod(0, fp::mul_mod(factor, pivot[j].1, p), p);
            out.push((pivot[j].0, v));
            j += 1;
        } else {
            let v = fp::sub_mod(col[i].1, fp::mul_mod(factor, pivot[j].1, p), p);
            if v != 0 {
                out.push((col[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over `F_p`.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for col in m.columns() {
        let mut col: Vec<(usize, u64)> = col
            .into_iter()
            .map(|(r, v)| (r, fp::from_i64(v, p)))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(low, v)) = col.last() {
            match pivots.get(&low) {
                Some(piv) => col = axpy_mod(&col, piv, v, p),
                None => {
                    let inv = fp::inv_mod(v, p).unwrap();
                    let normalized = col.iter().map(|&(r, x)| (r, fp::mul_mod(x, inv, p))).collect();
                    pivots.insert(low, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn content_normalize(col: &mut [(usize, BigInt)]) {
    let g = col
        .iter()
        .fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in col.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Rank over `Q` by fraction-free column elimination.
pub fn rank_rational(m: &SparseIntMatrix) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, BigInt)>> = HashMap::new();
    for col in m.columns() {
        let mut col: Vec<(usize, BigInt)> = col.into_iter().map(|(r, v)| (r, BigInt::from(v))).collect();
        loop {
            let Some((low, v)) = col.last().cloned() else { break };
            match pivots.get(&low) {
                Some(piv) => {
                    let w = &piv.last().unwrap().1;
                    // w * col - v * piv cancels row `low`
                    let mut out = Vec::with_capacity(col.len() + piv.len());
                    let (mut i, mut j) = (0, 0);
                    while i < col.len() || j < piv.len() {
                        let ri = col.get(i).map(|x| x.0);
                        let rj = piv.get(j).map(|x| x.0);
                        match (ri, rj) {
                            (Some(a), Some(b)) if a == b => {
                                let x = w * &col[i].1 - &v * &piv[j].1;
                                if !x.is_zero() {
                                    out.push((a, x));
                                }
                                i += 1;
                                j += 1;
                            }
                            (Some(a), Some(b)) if a < b => {
                                out.push((a, w * &col[i].1));
                                i += 1;
                            }
                            (Some(a), None) => {
                                out.push((a, w * &col[i].1));
                                i += 1;
                            }
                            (_, Some(b)) => {
                                out.push((b, -(&v * &piv[j].1)));
                                j += 1;
                            }
                            (None, None) => unreachable!(),
                        }
                    }
                    content_normalize(&mut out);
                    col = out;
                }
                None => {
                    content_normalize(&mut col);
                    pivots.insert(low, col);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Dimension of the right kernel over `Q`.
pub fn kernel_dim(m: &SparseIntMatrix) -> usize {
    if m.cols() == 0 {
        return 0;
    }
    if rank_mod_p(m, fp::LARGE_PRIME) == m.cols() {
        return 0;
    }
    m.cols() - rank_rational(m)
}

/// Rank of a dense matrix over `F_p` (consumes the matrix).
pub fn dense_rank_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] % p != 0) else { continue };
        a.swap(rank, piv);
        let inv = fp::inv_mod(a[rank][c], p).unwrap();
        for x in a[rank].iter_mut() {
            *x = fp::mul_mod(*x, inv, p);
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for k in c..cols {
                    let sub = fp::mul_mod(f, a[rank][k], p);
                    a[r][k] = fp::sub_mod(a[r][k], sub, p);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Basis of the right kernel over `Q`, each vector scaled to coprime
/// integers. Vectors are returned in order of their free column.
pub fn rational_kernel_basis(m: &SparseIntMatrix) -> Vec<Vec<BigInt>> {
    let cols = m.cols();
    let mut a: Vec<Vec<BigRational>> = m
        .to_dense()
        .into_iter()
        .map(|r| r.into_iter().map(|v| BigRational::from_integer(v.into())).collect())
        .collect();
    let rows = a.len();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, piv);
        let inv = a[rank][c].recip();
        for x in a[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in c..cols {
                    let sub = &f * &a[rank][k];
                    a[r][k] -= sub;
                }
            }
        }
        pivot_cols.push(c);
        rank += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[i][f].clone();
            }
            let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            ints.into_iter().map(|x| if g.is_zero() { x } else { x / &g }).collect()
        })
        .map(|mut v: Vec<BigInt>| {
            // leading nonzero positive
            if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                v.iter_mut().for_each(|x| *x = -&*x);
            }
            v
        })
        .collect()
}
