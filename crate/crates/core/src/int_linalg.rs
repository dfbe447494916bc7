//! Exact integer linear algebra: Smith normal form, cokernels and kernel ranks.
//!
//! Everything runs over arbitrary-precision integers, so intermediate growth
//! during reduction cannot overflow.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`] but keeps the column count when there are no rows.
    pub fn from_rows_with_cols<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.data[i * self.cols + j] = value.into();
    }

    /// Entry as `i64`; panics only if the entry does not fit.
    pub fn get_i64(&self, i: usize, j: usize) -> i64 {
        self.get(i, j).to_i64().expect("matrix entry exceeds i64")
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get_i64(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Principal submatrix on the given index set (rows and columns alike).
    pub fn principal_submatrix(&self, indices: &[usize]) -> IntMatrix {
        let k = indices.len();
        let mut out = Self::zeros(k, k);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out.data[a * k + b] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Entrywise absolute value.
    pub fn abs(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.abs()).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * factor;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * factor;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_string())
                    .collect::<Vec<_>>()
            }))
            .finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `left * M * right` is diagonal with `diag` on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diag: Vec<BigInt>,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn nonzero_count(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix `left * M * right` should equal.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (k, v) in self.diag.iter().enumerate() {
            d.set(k, k, v.clone());
        }
        d
    }
}

/// Smith normal form of `m`.
///
/// Pivots are chosen as the entry of smallest nonzero absolute value in the
/// remaining block, first in row-major order on ties.
pub fn smith(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_in_block(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let pivot = a.get(t, t).clone();
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() {
                    let q = -(a.get(i, t) / &pivot);
                    a.add_row(i, t, &q);
                    left.add_row(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() {
                    let q = -(a.get(t, j) / &pivot);
                    a.add_col(j, t, &q);
                    right.add_col(j, t, &q);
                }
            }

            // Remainders smaller than the pivot left in row or column t become the new pivot.
            if let Some(i) = (t + 1..rows).find(|&i| !a.get(i, t).is_zero()) {
                let best = (i..rows)
                    .filter(|&k| !a.get(k, t).is_zero())
                    .min_by(|&x, &y| a.get(x, t).abs().cmp(&a.get(y, t).abs()))
                    .unwrap_or(i);
                a.swap_rows(t, best);
                left.swap_rows(t, best);
                continue;
            }
            if let Some(j) = (t + 1..cols).find(|&j| !a.get(t, j).is_zero()) {
                let best = (j..cols)
                    .filter(|&k| !a.get(t, k).is_zero())
                    .min_by(|&x, &y| a.get(t, x).abs().cmp(&a.get(t, y).abs()))
                    .unwrap_or(j);
                a.swap_cols(t, best);
                right.swap_cols(t, best);
                continue;
            }

            // Divisibility: the pivot must divide everything left in the block.
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }

        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }

    let diag = (0..rows.min(cols)).map(|k| a.get(k, k).clone()).collect();
    SmithForm { left, diag, right }
}

fn smallest_in_block(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                best = Some((i, j, abs));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k`, with
/// `t_1 | t_2 | … | t_k` and every `t_i ≥ 2`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: if order > 1 { vec![order] } else { Vec::new() },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Builds a group from arbitrary torsion orders, normalizing to invariant factors.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[u64]) -> Self {
        AbelianGroup {
            free_rank,
            torsion: elementary_to_invariant(&invariant_to_elementary(orders)),
        }
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianGroup {
    /// Renders as `Z^2 + Z/2 + (Z/3)^2`; repeated invariant factors are grouped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&x| x == t).count();
            if run == 1 {
                parts.push(format!("Z/{t}"));
            } else {
                parts.push(format!("(Z/{t})^{run}"));
            }
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of the map `Z^cols -> Z^rows` given by `m`.
pub fn cokernel(m: &IntMatrix) -> Result<AbelianGroup> {
    let form = smith(m);
    let free_rank = m.rows - form.nonzero_count();
    let mut torsion = Vec::new();
    for d in form.diag.iter().filter(|d| !d.is_zero() && !d.is_one()) {
        let v = d
            .to_u64()
            .ok_or_else(|| Error::domain(format!("invariant factor {d} exceeds u64")))?;
        torsion.push(v);
    }
    Ok(AbelianGroup { free_rank, torsion })
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    smith(m).nonzero_count()
}

/// Dimension of the rational kernel: `cols - rank`.
pub fn kernel_rank(m: &IntMatrix) -> usize {
    m.cols - rank(m)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as (prime, exponent) pairs, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `dim_F (F ⊗ G)` for `F` the prime field of characteristic `ell`.
pub fn tensor_f_dimension(torsion: &[u64], free_rank: usize, ell: u64) -> Result<usize> {
    if !is_prime(ell) {
        return Err(Error::domain(format!("{ell} is not a prime")));
    }
    Ok(free_rank + torsion.iter().filter(|&&t| t % ell == 0).count())
}

/// Splits cyclic orders into prime powers, sorted ascending.
pub fn invariant_to_elementary(orders: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = orders
        .iter()
        .flat_map(|&t| factorize(t).into_iter().map(|(p, e)| p.pow(e)))
        .collect();
    out.sort_unstable();
    out
}

/// Recombines prime powers into invariant factors `t_1 | … | t_k`, ascending.
pub fn elementary_to_invariant(prime_powers: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &q in prime_powers {
        if q <= 1 {
            continue;
        }
        let p = factorize(q)[0].0;
        by_prime.entry(p).or_default().push(q);
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        // largest powers go to the largest factors
        for (k, q) in powers.iter().enumerate() {
            factors[len - 1 - k] *= q;
        }
    }
    factors
}

/// Per-degree abelian groups; degrees not stored are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedAbelianGroup {
    entries: BTreeMap<i64, AbelianGroup>,
}

impl GradedAbelianGroup {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, degree: i64, group: AbelianGroup) {
        if group.is_zero() {
            self.entries.remove(&degree);
        } else {
            self.entries.insert(degree, group);
        }
    }

    pub fn get(&self, degree: i64) -> AbelianGroup {
        self.entries.get(&degree).cloned().unwrap_or_default()
    }

    /// Nonzero degrees with their groups, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &AbelianGroup)> {
        self.entries.iter().map(|(&n, g)| (n, g))
    }

    pub fn free_rank(&self, degree: i64) -> usize {
        self.entries.get(&degree).map_or(0, |g| g.free_rank)
    }

    pub fn torsion(&self, degree: i64) -> &[u64] {
        self.entries.get(&degree).map_or(&[], |g| g.torsion.as_slice())
    }
}
