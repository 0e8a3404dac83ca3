//! Dense GF(2) vectors and the elimination routines built on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fixed-length binary word.
///
/// Bit `i` lives in word `i / 64` at position `63 - i % 64`, so comparing
/// the word arrays compares the bit strings lexicographically (position 0
/// first). `Ord` therefore sorts `0011 < 0110 < 1001 < 1100`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn mask(i: usize) -> u64 {
    1u64 << (63 - (i % 64))
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_indices(len: usize, indices: &[usize]) -> Result<Self> {
        let mut v = Self::zeros(len);
        for &i in indices {
            if i >= len {
                return Err(Error::structural(format!("index {i} out of range for length {len}")));
            }
            v.set(i, true);
        }
        Ok(v)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a `0`/`1` string such as `"0110"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::parse(1, format!("unexpected character {other:?} in bit string"))),
            }
        }
        Ok(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] & mask(i) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        if value {
            self.words[i / 64] |= mask(i);
        } else {
            self.words[i / 64] &= !mask(i);
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= mask(i);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `self ^= other`; lengths must agree.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// `self |= other`.
    pub fn or_assign(&mut self, other: &BitVector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    /// Parity of the overlap with `other` (the GF(2) inner product).
    pub fn dot(&self, other: &BitVector) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    /// Indices of set bits in increasing order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let lz = bits.leading_zeros() as usize;
                bits &= !(1u64 << (63 - lz));
                Some(w * 64 + lz)
            })
        })
    }

    pub fn support(&self) -> Vec<usize> {
        self.ones_iter().collect()
    }

    /// First set bit, if any.
    pub fn leading_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.leading_zeros() as usize)
    }

    /// `(-1)^bit` for each position.
    pub fn signs(&self) -> Vec<i64> {
        (0..self.len).map(|i| if self.get(i) { -1 } else { 1 }).collect()
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl Serialize for BitVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BitVector::parse(&s).map_err(serde::de::Error::custom)
    }
}

fn check_lengths(rows: &[BitVector]) -> Result<usize> {
    let Some(first) = rows.first() else { return Ok(0) };
    let n = first.len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::structural(format!("row {i} has length {}, expected {n}", r.len())));
    }
    Ok(n)
}

/// Reduced row-echelon basis of the row span. Rows are returned with strictly
/// increasing leading positions and each pivot column cleared elsewhere.
pub fn row_basis(rows: &[BitVector]) -> Result<Vec<BitVector>> {
    check_lengths(rows)?;
    let mut basis: Vec<BitVector> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (b, &p) in basis.iter().zip(&pivots) {
            if r.get(p) {
                r.xor_assign(b);
            }
        }
        if let Some(p) = r.leading_one() {
            for b in basis.iter_mut() {
                if b.get(p) {
                    b.xor_assign(&r);
                }
            }
            let at = pivots.partition_point(|&q| q < p);
            pivots.insert(at, p);
            basis.insert(at, r);
        }
    }
    Ok(basis)
}

/// GF(2) row rank.
pub fn rank_gf2(rows: &[BitVector]) -> Result<usize> {
    Ok(row_basis(rows)?.len())
}

/// Basis of `{x : H x = 0}` for the parity-check rows `rows` over `n` bits.
pub fn nullspace_basis(rows: &[BitVector], n: usize) -> Result<Vec<BitVector>> {
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::structural(format!("row {i} has length {}, expected {n}", r.len())));
    }
    let basis = row_basis(rows)?;
    let pivots: Vec<usize> = basis.iter().map(|b| b.leading_one().expect("nonzero basis row")).collect();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::with_capacity(n - pivots.len());
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = BitVector::zeros(n);
        v.set(free, true);
        for (b, &p) in basis.iter().zip(&pivots) {
            if b.get(free) {
                v.set(p, true);
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Visits every nonzero combination of `basis` in Gray-code order, passing
/// the running XOR and the index of the basis vector just toggled.
pub fn for_each_span_element(basis: &[BitVector], n: usize, mut visit: impl FnMut(&BitVector)) {
    let r = basis.len();
    if r >= 128 {
        panic!("span enumeration over {r} generators");
    }
    let mut acc = BitVector::zeros(n);
    let total: u128 = 1u128 << r;
    for step in 1..total {
        let bit = step.trailing_zeros() as usize;
        acc.xor_assign(&basis[bit]);
        visit(&acc);
    }
}
