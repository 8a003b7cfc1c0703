//! Dense matrices over `F_p`.
//!
//! Two row layouts share one interface: bit-packed rows for `p = 2`, one
//! byte per entry otherwise. Elimination is plain Gauss-Jordan.

use alloc::vec;
use alloc::vec::Vec;

use crate::gf::PrimeField;

/// Row storage over `F_p`.
pub trait FpRows: Clone {
    fn zeros(p: PrimeField, nrows: usize, ncols: usize) -> Self;
    fn field(&self) -> PrimeField;
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    fn get(&self, r: usize, c: usize) -> u8;
    fn set(&mut self, r: usize, c: usize, v: u8);
    fn swap_rows(&mut self, a: usize, b: usize);
    fn scale_row(&mut self, r: usize, s: u8);
    /// `row[dst] += s * row[src]`, `dst != src`.
    fn add_scaled(&mut self, dst: usize, src: usize, s: u8);
    /// `self.row[dst] += s * other.row[src]`.
    fn add_scaled_from(&mut self, dst: usize, other: &Self, src: usize, s: u8);
    fn copy_row_from(&mut self, dst: usize, other: &Self, src: usize);
    /// `row[dst] = row[src]`.
    fn copy_row(&mut self, dst: usize, src: usize);
    fn clear_row(&mut self, r: usize);
    fn row_weight(&self, r: usize) -> usize;
    fn push_row(&mut self, entries: &[u8]);

    fn row_vec(&self, r: usize) -> Vec<u8> {
        (0..self.ncols()).map(|c| self.get(r, c)).collect()
    }

    fn from_rows(p: PrimeField, ncols: usize, rows: &[Vec<u8>]) -> Self {
        let mut m = Self::zeros(p, 0, ncols);
        for r in rows {
            m.push_row(r);
        }
        m
    }
}

/// Bit-packed rows over `F_2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRows {
    nrows: usize,
    ncols: usize,
    wpr: usize,
    data: Vec<u64>,
}

impl BitRows {
    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.wpr..(r + 1) * self.wpr]
    }
}

impl FpRows for BitRows {
    fn zeros(_p: PrimeField, nrows: usize, ncols: usize) -> Self {
        let wpr = ncols.div_ceil(64);
        BitRows { nrows, ncols, wpr, data: vec![0; nrows * wpr] }
    }

    fn field(&self) -> PrimeField {
        PrimeField::new(2).expect("2 is prime")
    }

    fn nrows(&self) -> usize {
        self.nrows
    }

    fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> u8 {
        ((self.data[r * self.wpr + c / 64] >> (c % 64)) & 1) as u8
    }

    fn set(&mut self, r: usize, c: usize, v: u8) {
        let w = &mut self.data[r * self.wpr + c / 64];
        if v & 1 == 1 {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.wpr {
                self.data.swap(a * self.wpr + k, b * self.wpr + k);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: u8) {
        if s % 2 == 0 {
            self.clear_row(r);
        }
    }

    #[inline]
    fn add_scaled(&mut self, dst: usize, src: usize, s: u8) {
        if s % 2 == 1 {
            for k in 0..self.wpr {
                self.data[dst * self.wpr + k] ^= self.data[src * self.wpr + k];
            }
        }
    }

    #[inline]
    fn add_scaled_from(&mut self, dst: usize, other: &Self, src: usize, s: u8) {
        if s % 2 == 1 {
            let o = other.row_words(src);
            for (x, y) in self.data[dst * self.wpr..(dst + 1) * self.wpr].iter_mut().zip(o) {
                *x ^= y;
            }
        }
    }

    fn copy_row_from(&mut self, dst: usize, other: &Self, src: usize) {
        let wpr = self.wpr;
        self.data[dst * wpr..(dst + 1) * wpr].copy_from_slice(other.row_words(src));
    }

    fn copy_row(&mut self, dst: usize, src: usize) {
        let wpr = self.wpr;
        self.data.copy_within(src * wpr..(src + 1) * wpr, dst * wpr);
    }

    fn clear_row(&mut self, r: usize) {
        for w in &mut self.data[r * self.wpr..(r + 1) * self.wpr] {
            *w = 0;
        }
    }

    #[inline]
    fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn push_row(&mut self, entries: &[u8]) {
        debug_assert_eq!(entries.len(), self.ncols);
        self.data.resize((self.nrows + 1) * self.wpr, 0);
        self.nrows += 1;
        for (c, &v) in entries.iter().enumerate() {
            if v % 2 == 1 {
                self.set(self.nrows - 1, c, 1);
            }
        }
    }
}

/// One byte per entry, any prime `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ByteRows {
    p: PrimeField,
    nrows: usize,
    ncols: usize,
    data: Vec<u8>,
}

impl ByteRows {
    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.ncols..(r + 1) * self.ncols]
    }
}

impl FpRows for ByteRows {
    fn zeros(p: PrimeField, nrows: usize, ncols: usize) -> Self {
        ByteRows { p, nrows, ncols, data: vec![0; nrows * ncols] }
    }

    fn field(&self) -> PrimeField {
        self.p
    }

    fn nrows(&self) -> usize {
        self.nrows
    }

    fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.ncols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.ncols + c] = v % self.p.p();
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.ncols {
                self.data.swap(a * self.ncols + k, b * self.ncols + k);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: u8) {
        let p = self.p;
        for x in &mut self.data[r * self.ncols..(r + 1) * self.ncols] {
            *x = p.mul(*x, s);
        }
    }

    #[inline]
    fn add_scaled(&mut self, dst: usize, src: usize, s: u8) {
        let (p, n) = (self.p, self.ncols);
        for k in 0..n {
            let v = self.data[src * n + k];
            if v != 0 {
                self.data[dst * n + k] = p.add(self.data[dst * n + k], p.mul(s, v));
            }
        }
    }

    #[inline]
    fn add_scaled_from(&mut self, dst: usize, other: &Self, src: usize, s: u8) {
        let p = self.p;
        let n = self.ncols;
        for (x, &v) in self.data[dst * n..(dst + 1) * n].iter_mut().zip(other.row(src)) {
            if v != 0 {
                *x = p.add(*x, p.mul(s, v));
            }
        }
    }

    fn copy_row_from(&mut self, dst: usize, other: &Self, src: usize) {
        let n = self.ncols;
        self.data[dst * n..(dst + 1) * n].copy_from_slice(other.row(src));
    }

    fn copy_row(&mut self, dst: usize, src: usize) {
        let n = self.ncols;
        self.data.copy_within(src * n..(src + 1) * n, dst * n);
    }

    fn clear_row(&mut self, r: usize) {
        for x in &mut self.data[r * self.ncols..(r + 1) * self.ncols] {
            *x = 0;
        }
    }

    #[inline]
    fn row_weight(&self, r: usize) -> usize {
        self.row(r).iter().filter(|&&v| v != 0).count()
    }

    fn push_row(&mut self, entries: &[u8]) {
        debug_assert_eq!(entries.len(), self.ncols);
        let p = self.p.p();
        self.data.extend(entries.iter().map(|&v| v % p));
        self.nrows += 1;
    }
}

/// Brings `m` to reduced row-echelon form in place and returns the pivot
/// columns; rows past the rank are zero afterwards.
pub fn rref<M: FpRows>(m: &mut M) -> Vec<usize> {
    rref_with_order(m, &(0..m.ncols()).collect::<Vec<_>>())
}

/// Like [`rref`] but scans columns in the given order, so pivots prefer the
/// earlier columns of `order`.
pub fn rref_with_order<M: FpRows>(m: &mut M, order: &[usize]) -> Vec<usize> {
    let f = m.field();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for &col in order {
        if rank == m.nrows() {
            break;
        }
        let Some(pr) = (rank..m.nrows()).find(|&r| m.get(r, col) != 0) else {
            continue;
        };
        m.swap_rows(pr, rank);
        let inv = f.inv(m.get(rank, col)).expect("pivot is nonzero");
        m.scale_row(rank, inv);
        for r in 0..m.nrows() {
            if r != rank {
                let v = m.get(r, col);
                if v != 0 {
                    m.add_scaled(r, rank, f.neg(v));
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

pub fn rank<M: FpRows>(m: &M) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Basis of `{x : m·x = 0}`, one row per free column.
pub fn null_space<M: FpRows>(m: &M) -> M {
    let f = m.field();
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let n = m.ncols();
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = M::zeros(f, 0, n);
    let mut row = vec![0u8; n];
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        row.iter_mut().for_each(|x| *x = 0);
        row[free] = 1;
        for (k, &pc) in pivots.iter().enumerate() {
            row[pc] = f.neg(r.get(k, free));
        }
        out.push_row(&row);
    }
    out
}

/// `m · x` over `F_p`.
pub fn mul_vec<M: FpRows>(m: &M, x: &[u8]) -> Vec<u8> {
    let f = m.field();
    (0..m.nrows())
        .map(|r| (0..m.ncols()).fold(0u8, |acc, c| f.add(acc, f.mul(m.get(r, c), x[c]))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_null_space<M: FpRows>(m: &M) {
        let ns = null_space(m);
        assert_eq!(ns.nrows() + rank(m), m.ncols());
        for r in 0..ns.nrows() {
            assert!(mul_vec(m, &ns.row_vec(r)).iter().all(|&v| v == 0));
        }
        assert_eq!(rank(&ns), ns.nrows());
    }

    #[test]
    fn small_binary() {
        let f = PrimeField::new(2).unwrap();
        let m = BitRows::from_rows(f, 4, &[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0]]);
        assert_eq!(rank(&m), 2);
        check_null_space(&m);
    }

    proptest! {
        #[test]
        fn layouts_agree(rows in prop::collection::vec(prop::collection::vec(0u8..2, 70), 1..12)) {
            let f = PrimeField::new(2).unwrap();
            let a = BitRows::from_rows(f, 70, &rows);
            let b = ByteRows::from_rows(f, 70, &rows);
            prop_assert_eq!(rank(&a), rank(&b));
            let (mut ra, mut rb) = (a.clone(), b.clone());
            prop_assert_eq!(rref(&mut ra), rref(&mut rb));
            for r in 0..ra.nrows() {
                prop_assert_eq!(ra.row_vec(r), rb.row_vec(r));
            }
            check_null_space(&a);
        }

        #[test]
        fn ternary_null_space(rows in prop::collection::vec(prop::collection::vec(0u8..3, 9), 1..8)) {
            let f = PrimeField::new(3).unwrap();
            check_null_space(&ByteRows::from_rows(f, 9, &rows));
        }

        #[test]
        fn rank_is_permutation_invariant(rows in prop::collection::vec(prop::collection::vec(0u8..5, 8), 1..8), seed in 0u64..1000) {
            let f = PrimeField::new(5).unwrap();
            let m = ByteRows::from_rows(f, 8, &rows);
            let mut perm: Vec<usize> = (0..8).collect();
            let mut s = seed;
            for k in (1..8).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(k, (s >> 33) as usize % (k + 1));
            }
            let permuted: Vec<Vec<u8>> = rows.iter().rev().map(|r| perm.iter().map(|&c| r[c]).collect()).collect();
            prop_assert_eq!(rank(&m), rank(&ByteRows::from_rows(f, 8, &permuted)));
        }
    }
}
