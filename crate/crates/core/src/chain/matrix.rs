//! Dense integer matrices over arbitrary-precision integers.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Integer vector; cochains and coordinates are both stored this way.
pub type IntVector = Vec<BigInt>;

pub fn int_vec<I: IntoIterator<Item = i64>>(values: I) -> IntVector {
  values.into_iter().map(BigInt::from).collect()
}

pub fn zero_vec(len: usize) -> IntVector {
  vec![BigInt::zero(); len]
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
  v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[BigInt], b: &[BigInt]) -> IntVector {
  debug_assert_eq!(a.len(), b.len());
  a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[BigInt], b: &[BigInt]) -> IntVector {
  debug_assert_eq!(a.len(), b.len());
  a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &BigInt, v: &[BigInt]) -> IntVector {
  v.iter().map(|x| c * x).collect()
}

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
  rows: usize,
  cols: usize,
  entries: Vec<BigInt>,
}

impl IntMatrix {
  pub fn zeros(rows: usize, cols: usize) -> Self {
    Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
  }

  pub fn identity(n: usize) -> Self {
    let mut m = Self::zeros(n, n);
    for i in 0..n {
      m[(i, i)] = BigInt::one();
    }
    m
  }

  /// `k` times the identity.
  pub fn scalar(n: usize, k: &BigInt) -> Self {
    let mut m = Self::zeros(n, n);
    for i in 0..n {
      m[(i, i)] = k.clone();
    }
    m
  }

  pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
    if entries.len() != rows * cols {
      return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
    }
    Ok(Self { rows, cols, entries })
  }

  /// Builds a matrix from small integer rows. Panics on ragged input; meant for literals.
  pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
    let cols = rows.first().map_or(0, |r| r.as_ref().len());
    let mut entries = Vec::with_capacity(rows.len() * cols);
    for r in rows {
      assert_eq!(r.as_ref().len(), cols, "ragged matrix literal");
      entries.extend(r.as_ref().iter().map(|&x| BigInt::from(x)));
    }
    Self { rows: rows.len(), cols, entries }
  }

  pub fn from_columns(rows: usize, columns: &[IntVector]) -> Self {
    let mut m = Self::zeros(rows, columns.len());
    for (j, c) in columns.iter().enumerate() {
      assert_eq!(c.len(), rows, "column length mismatch");
      for (i, x) in c.iter().enumerate() {
        m[(i, j)] = x.clone();
      }
    }
    m
  }

  pub fn rows(&self) -> usize {
    self.rows
  }

  pub fn cols(&self) -> usize {
    self.cols
  }

  pub fn shape(&self) -> (usize, usize) {
    (self.rows, self.cols)
  }

  pub fn entries(&self) -> &[BigInt] {
    &self.entries
  }

  pub fn is_zero(&self) -> bool {
    self.entries.iter().all(Zero::is_zero)
  }

  pub fn row(&self, i: usize) -> &[BigInt] {
    &self.entries[i * self.cols..(i + 1) * self.cols]
  }

  pub fn column(&self, j: usize) -> IntVector {
    (0..self.rows).map(|i| self[(i, j)].clone()).collect()
  }

  pub fn transpose(&self) -> Self {
    let mut t = Self::zeros(self.cols, self.rows);
    for i in 0..self.rows {
      for j in 0..self.cols {
        t[(j, i)] = self[(i, j)].clone();
      }
    }
    t
  }

  pub fn mul(&self, other: &Self) -> Result<Self> {
    if self.cols != other.rows {
      return Err(Error::DimensionMismatch(format!(
        "cannot multiply {}x{} by {}x{}",
        self.rows, self.cols, other.rows, other.cols
      )));
    }
    let mut out = Self::zeros(self.rows, other.cols);
    for i in 0..self.rows {
      for k in 0..self.cols {
        let a = &self[(i, k)];
        if a.is_zero() {
          continue;
        }
        for j in 0..other.cols {
          let b = &other[(k, j)];
          if !b.is_zero() {
            out[(i, j)] += a * b;
          }
        }
      }
    }
    Ok(out)
  }

  pub fn mul_vec(&self, v: &[BigInt]) -> Result<IntVector> {
    if self.cols != v.len() {
      return Err(Error::DimensionMismatch(format!(
        "cannot apply {}x{} matrix to vector of length {}",
        self.rows,
        self.cols,
        v.len()
      )));
    }
    Ok(
      (0..self.rows)
        .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
        .collect(),
    )
  }

  pub fn add(&self, other: &Self) -> Result<Self> {
    if self.shape() != other.shape() {
      return Err(Error::DimensionMismatch(format!("cannot add {:?} and {:?}", self.shape(), other.shape())));
    }
    let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
    Ok(Self { rows: self.rows, cols: self.cols, entries })
  }

  pub fn scale(&self, c: &BigInt) -> Self {
    Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| c * x).collect() }
  }

  pub fn neg(&self) -> Self {
    self.scale(&BigInt::from(-1))
  }

  /// Block-diagonal sum.
  pub fn block_diag(a: &Self, b: &Self) -> Self {
    let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
    m.set_block(0, 0, a);
    m.set_block(a.rows, a.cols, b);
    m
  }

  /// `[a b]`
  pub fn hstack(a: &Self, b: &Self) -> Self {
    assert_eq!(a.rows, b.rows, "hstack row mismatch");
    let mut m = Self::zeros(a.rows, a.cols + b.cols);
    m.set_block(0, 0, a);
    m.set_block(0, a.cols, b);
    m
  }

  pub fn set_block(&mut self, row: usize, col: usize, block: &Self) {
    assert!(row + block.rows <= self.rows && col + block.cols <= self.cols, "block out of bounds");
    for i in 0..block.rows {
      for j in 0..block.cols {
        self[(row + i, col + j)] = block[(i, j)].clone();
      }
    }
  }

  pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
    let mut m = Self::zeros(rows.len(), cols.len());
    for (a, i) in rows.clone().enumerate() {
      for (b, j) in cols.clone().enumerate() {
        m[(a, b)] = self[(i, j)].clone();
      }
    }
    m
  }

  pub fn swap_rows(&mut self, a: usize, b: usize) {
    if a == b {
      return;
    }
    for j in 0..self.cols {
      self.entries.swap(a * self.cols + j, b * self.cols + j);
    }
  }

  pub fn swap_cols(&mut self, a: usize, b: usize) {
    if a == b {
      return;
    }
    for i in 0..self.rows {
      self.entries.swap(i * self.cols + a, i * self.cols + b);
    }
  }

  /// `row[target] += c * row[source]`
  pub fn add_row_multiple(&mut self, target: usize, source: usize, c: &BigInt) {
    if c.is_zero() {
      return;
    }
    for j in 0..self.cols {
      let delta = c * &self[(source, j)];
      self[(target, j)] += delta;
    }
  }

  /// `col[target] += c * col[source]`
  pub fn add_col_multiple(&mut self, target: usize, source: usize, c: &BigInt) {
    if c.is_zero() {
      return;
    }
    for i in 0..self.rows {
      let delta = c * &self[(i, source)];
      self[(i, target)] += delta;
    }
  }

  pub fn negate_row(&mut self, i: usize) {
    for j in 0..self.cols {
      let v = -std::mem::take(&mut self[(i, j)]);
      self[(i, j)] = v;
    }
  }

  pub fn negate_col(&mut self, j: usize) {
    for i in 0..self.rows {
      let v = -std::mem::take(&mut self[(i, j)]);
      self[(i, j)] = v;
    }
  }

  /// Rows as small integers, for reports and tests. `None` if an entry overflows `i64`.
  pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
    use num_traits::ToPrimitive;
    (0..self.rows).map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect()).collect()
  }
}

impl Index<(usize, usize)> for IntMatrix {
  type Output = BigInt;

  fn index(&self, (i, j): (usize, usize)) -> &BigInt {
    debug_assert!(i < self.rows && j < self.cols);
    &self.entries[i * self.cols + j]
  }
}

impl IndexMut<(usize, usize)> for IntMatrix {
  fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
    debug_assert!(i < self.rows && j < self.cols);
    &mut self.entries[i * self.cols + j]
  }
}

impl fmt::Debug for IntMatrix {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
    for i in 0..self.rows {
      if i > 0 {
        write!(f, "; ")?;
      }
      for (j, x) in self.row(i).iter().enumerate() {
        if j > 0 {
          write!(f, ",")?;
        }
        write!(f, "{x}")?;
      }
    }
    write!(f, "]")
  }
}

impl fmt::Display for IntMatrix {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for i in 0..self.rows {
      if i > 0 {
        write!(f, ";")?;
      }
      for (j, x) in self.row(i).iter().enumerate() {
        if j > 0 {
          write!(f, ",")?;
        }
        write!(f, "{x}")?;
      }
    }
    Ok(())
  }
}
