//! Smith normal form over the integers with explicit unimodular transforms.
//!
//! Pivoting is fixed: the entry of smallest nonzero absolute value in the
//! active submatrix, ties broken by lowest row and then lowest column. The
//! decomposition is therefore a deterministic function of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `U · M · V = D` with `U`, `V` unimodular. The inverses are tracked alongside
/// so that callers never need to invert.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
  pub u: IntMatrix,
  pub u_inv: IntMatrix,
  pub d: IntMatrix,
  pub v: IntMatrix,
  pub v_inv: IntMatrix,
  pub rank: usize,
}

impl SnfDecomposition {
  /// Diagonal entries `d₁ | d₂ | …` up to the rank (all positive).
  pub fn invariant_factors(&self) -> Vec<BigInt> {
    (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
  }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
  let (rows, cols) = m.shape();
  let mut calc = SnfCalc {
    a: m.clone(),
    u: IntMatrix::identity(rows),
    u_inv: IntMatrix::identity(rows),
    v: IntMatrix::identity(cols),
    v_inv: IntMatrix::identity(cols),
  };
  let mut rank = 0;
  for t in 0..rows.min(cols) {
    if !calc.reduce_at(t) {
      break;
    }
    rank += 1;
  }
  SnfDecomposition { u: calc.u, u_inv: calc.u_inv, d: calc.a, v: calc.v, v_inv: calc.v_inv, rank }
}

struct SnfCalc {
  a: IntMatrix,
  u: IntMatrix,
  u_inv: IntMatrix,
  v: IntMatrix,
  v_inv: IntMatrix,
}

impl SnfCalc {
  fn pivot(&self, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..self.a.rows() {
      for j in t..self.a.cols() {
        let x = &self.a[(i, j)];
        if x.is_zero() {
          continue;
        }
        match best {
          Some(b) if self.a[b].abs() <= x.abs() => {}
          _ => best = Some((i, j)),
        }
      }
    }
    best
  }

  // Each elementary operation is mirrored on the transforms:
  // row ops left-multiply U and right-multiply U⁻¹ by the inverse op,
  // column ops right-multiply V and left-multiply V⁻¹ by the inverse op.

  fn swap_rows(&mut self, a: usize, b: usize) {
    self.a.swap_rows(a, b);
    self.u.swap_rows(a, b);
    self.u_inv.swap_cols(a, b);
  }

  fn swap_cols(&mut self, a: usize, b: usize) {
    self.a.swap_cols(a, b);
    self.v.swap_cols(a, b);
    self.v_inv.swap_rows(a, b);
  }

  fn add_row(&mut self, target: usize, source: usize, c: &BigInt) {
    self.a.add_row_multiple(target, source, c);
    self.u.add_row_multiple(target, source, c);
    self.u_inv.add_col_multiple(source, target, &-c);
  }

  fn add_col(&mut self, target: usize, source: usize, c: &BigInt) {
    self.a.add_col_multiple(target, source, c);
    self.v.add_col_multiple(target, source, c);
    self.v_inv.add_row_multiple(source, target, &-c);
  }

  fn negate_row(&mut self, i: usize) {
    self.a.negate_row(i);
    self.u.negate_row(i);
    self.u_inv.negate_col(i);
  }

  /// Puts a positive pivot at `(t, t)` dividing everything below-right of it and
  /// clears row and column `t`. Returns false when the active block is zero.
  fn reduce_at(&mut self, t: usize) -> bool {
    let (rows, cols) = self.a.shape();
    loop {
      let Some((pi, pj)) = self.pivot(t) else {
        return false;
      };
      self.swap_rows(t, pi);
      self.swap_cols(t, pj);

      let mut remainder = false;
      for i in t + 1..rows {
        if self.a[(i, t)].is_zero() {
          continue;
        }
        let q = &self.a[(i, t)] / &self.a[(t, t)];
        self.add_row(i, t, &-q);
        remainder |= !self.a[(i, t)].is_zero();
      }
      for j in t + 1..cols {
        if self.a[(t, j)].is_zero() {
          continue;
        }
        let q = &self.a[(t, j)] / &self.a[(t, t)];
        self.add_col(j, t, &-q);
        remainder |= !self.a[(t, j)].is_zero();
      }
      if remainder {
        continue;
      }

      let pivot = self.a[(t, t)].clone();
      let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&pivot)));
      if let Some(i) = offender {
        self.add_row(t, i, &BigInt::one());
        continue;
      }

      if pivot.is_negative() {
        self.negate_row(t);
      }
      return true;
    }
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  /// Determinant by cofactor expansion; independent of the reduction above.
  fn det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 0 {
      return BigInt::one();
    }
    (0..n)
      .map(|j| {
        let minor_cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let mut minor = IntMatrix::zeros(n - 1, n - 1);
        for i in 1..n {
          for (b, &c) in minor_cols.iter().enumerate() {
            minor[(i - 1, b)] = m[(i, c)].clone();
          }
        }
        let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        sign * &m[(0, j)] * det(&minor)
      })
      .sum()
  }

  fn check(m: &IntMatrix) -> SnfDecomposition {
    let s = smith_normal_form(m);
    assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
    assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(m.rows()));
    assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
    assert_eq!(det(&s.u).abs(), BigInt::one());
    assert_eq!(det(&s.v).abs(), BigInt::one());
    for i in 0..s.d.rows() {
      for j in 0..s.d.cols() {
        if i != j {
          assert!(s.d[(i, j)].is_zero());
        }
      }
    }
    let f = s.invariant_factors();
    for w in f.windows(2) {
      assert!(w[1].is_multiple_of(&w[0]));
    }
    s
  }

  #[test]
  fn zero_one_by_one() {
    let s = check(&IntMatrix::from_rows(&[[0]]));
    assert_eq!(s.d, IntMatrix::from_rows(&[[0]]));
    assert_eq!(s.u, IntMatrix::identity(1));
    assert_eq!(s.v, IntMatrix::identity(1));
    assert_eq!(s.rank, 0);
  }

  #[test]
  fn identity_is_fixed() {
    let s = check(&IntMatrix::identity(3));
    assert_eq!(s.d, IntMatrix::identity(3));
  }

  #[test]
  fn two_by_two_oracle() {
    // gcd of entries is 2 and |det| = 8, so the factors are 2 and 4.
    let s = check(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
    assert_eq!(s.d, IntMatrix::from_rows(&[[2, 0], [0, 4]]));
  }

  #[test]
  fn divisibility_needs_row_fixup() {
    let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
    assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
  }

  #[test]
  fn rectangular_and_empty() {
    check(&IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6]]));
    check(&IntMatrix::zeros(0, 3));
    check(&IntMatrix::zeros(2, 0));
  }

  #[test]
  fn deterministic() {
    let m = IntMatrix::from_rows(&[[4, -6, 2], [3, 9, -12], [0, 5, 7]]);
    assert_eq!(smith_normal_form(&m), smith_normal_form(&m));
  }

  mod props {
    use proptest::prelude::*;

    use super::*;

    proptest! {
      #[test]
      fn decomposition_invariants(
        rows in 0usize..5,
        cols in 0usize..5,
        seed in proptest::collection::vec(-9i64..=9, 25),
      ) {
        let entries = seed.into_iter().take(rows * cols).map(BigInt::from).collect();
        let m = IntMatrix::from_entries(rows, cols, entries).unwrap();
        check(&m);
      }
    }
  }
}
