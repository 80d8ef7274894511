use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A fixed-length vector over GF(2), stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Vector {
    len: usize,
    words: Vec<u64>,
}

impl GF2Vector {
    pub fn zeros(len: usize) -> Self {
        GF2Vector {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a bitstring such as `"1011"`; the leftmost character is coordinate 0.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = Self::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Error::Parse(format!("invalid bit '{c}' in \"{s}\""))),
            }
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &GF2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &GF2Vector) -> GF2Vector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Dot product over GF(2).
    pub fn dot(&self, other: &GF2Vector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Index of the highest set bit.
    pub fn leading(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * WORD + (WORD - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Vector({})", self.to_bitstring())
    }
}

impl fmt::Display for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

/// Incrementally built semi-echelon basis of a subspace of GF(2)^len.
///
/// Each stored row has a distinct pivot (its highest set bit) and is reduced
/// against all rows inserted before it, so a single pass in insertion order
/// clears every pivot bit of a vector.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<GF2Vector>,
    pivots: Vec<usize>,
    is_pivot: Vec<bool>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
            is_pivot: vec![false; len],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn rows(&self) -> &[GF2Vector] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.is_pivot[col]
    }

    /// Clears every pivot bit of `v`; the result is the normal form of `v`
    /// modulo the row space, supported on non-pivot columns.
    pub fn reduce(&self, v: &mut GF2Vector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    /// Inserts `v`, returning `true` if it was independent of the current rows.
    pub fn insert(&mut self, mut v: GF2Vector) -> bool {
        debug_assert_eq!(v.len(), self.len);
        self.reduce(&mut v);
        match v.leading() {
            None => false,
            Some(p) => {
                self.is_pivot[p] = true;
                self.pivots.push(p);
                self.rows.push(v);
                true
            }
        }
    }

    pub fn contains(&self, v: &GF2Vector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Columns that are not pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.len).filter(|&c| !self.is_pivot[c]).collect()
    }
}

fn check_rectangular(rows: &[GF2Vector]) -> Result<usize> {
    let len = rows.first().map_or(0, |r| r.len());
    if let Some(bad) = rows.iter().find(|r| r.len() != len) {
        return Err(Error::DimensionMismatch(format!(
            "ragged matrix: row of length {} in a matrix of width {len}",
            bad.len()
        )));
    }
    Ok(len)
}

/// Rank over GF(2) of the matrix whose rows are `rows`.
pub fn rank_gf2(rows: &[GF2Vector]) -> Result<usize> {
    let len = check_rectangular(rows)?;
    let mut basis = EchelonBasis::new(len);
    for r in rows {
        basis.insert(r.clone());
    }
    Ok(basis.rank())
}

/// Reduced row echelon form; zero rows are dropped and rows are sorted by
/// increasing pivot column (pivot = lowest set bit).
pub fn row_reduce(rows: &[GF2Vector]) -> Result<Vec<GF2Vector>> {
    let len = check_rectangular(rows)?;
    let mut m: Vec<GF2Vector> = rows.to_vec();
    let mut rank = 0;
    for col in 0..len {
        let Some(pos) = (rank..m.len()).find(|&r| m[r].get(col)) else {
            continue;
        };
        m.swap(rank, pos);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    Ok(m)
}

/// Solves `A x = b` where `columns` are the columns of `A`. Returns one
/// solution, or `None` when `b` is not in the column span.
pub fn solve(columns: &[GF2Vector], b: &GF2Vector) -> Result<Option<GF2Vector>> {
    let height = check_rectangular(columns)?;
    if !columns.is_empty() && b.len() != height {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, expected {height}",
            b.len()
        )));
    }
    let k = columns.len();
    // Augment each column with its unit tag so reductions track combinations.
    let mut basis = EchelonBasis::new(b.len() + k);
    let lift = |v: &GF2Vector, tag: Option<usize>| {
        let mut w = GF2Vector::zeros(b.len() + k);
        for i in v.iter_ones() {
            w.set(k + i, true);
        }
        if let Some(t) = tag {
            w.set(t, true);
        }
        w
    };
    for (j, c) in columns.iter().enumerate() {
        basis.insert(lift(c, Some(j)));
    }
    let mut target = lift(b, None);
    basis.reduce(&mut target);
    if target.iter_ones().any(|i| i >= k) {
        return Ok(None);
    }
    let mut x = GF2Vector::zeros(k);
    for i in target.iter_ones() {
        x.set(i, true);
    }
    Ok(Some(x))
}

/// Inverse of a square matrix given by its columns, or `None` if singular.
/// The result is returned as columns as well.
pub fn invert_columns(columns: &[GF2Vector]) -> Result<Option<Vec<GF2Vector>>> {
    let n = check_rectangular(columns)?;
    if columns.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "cannot invert a {n}x{} matrix",
            columns.len()
        )));
    }
    let mut inv = Vec::with_capacity(n);
    for i in 0..n {
        match solve(columns, &GF2Vector::unit(n, i))? {
            Some(x) => inv.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(inv))
}

/// Applies the matrix given by `columns` to `x`: returns `Σ x_j · columns[j]`.
pub fn apply_columns(columns: &[GF2Vector], x: &GF2Vector, height: usize) -> GF2Vector {
    let mut out = GF2Vector::zeros(height);
    for j in x.iter_ones() {
        out.xor_assign(&columns[j]);
    }
    out
}
