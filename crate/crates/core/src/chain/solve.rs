//! Integer linear systems and sublattices of `Zⁿ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{zero_vec, IntMatrix, IntVector};
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A particular solution of `M·x = b` together with a basis of `{x : M·x = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSolution {
  pub particular: IntVector,
  pub kernel: Vec<IntVector>,
}

/// Solves `M·x = b` over the integers. `Ok(None)` when no integral solution exists.
pub fn solve_integer_system(m: &IntMatrix, b: &[BigInt]) -> Result<Option<IntegerSolution>> {
  if b.len() != m.rows() {
    return Err(Error::DimensionMismatch(format!(
      "right-hand side of length {} for {} equations",
      b.len(),
      m.rows()
    )));
  }
  let snf = smith_normal_form(m);
  let ub = snf.u.mul_vec(b)?;
  let mut y = zero_vec(m.cols());
  for (i, c) in ub.iter().enumerate() {
    if i < snf.rank {
      let (q, r) = c.div_rem(&snf.d[(i, i)]);
      if !r.is_zero() {
        return Ok(None);
      }
      y[i] = q;
    } else if !c.is_zero() {
      return Ok(None);
    }
  }
  let particular = snf.v.mul_vec(&y)?;
  let kernel = (snf.rank..m.cols()).map(|j| snf.v.column(j)).collect();
  Ok(Some(IntegerSolution { particular, kernel }))
}

/// Basis of the integer kernel of `m` (saturated).
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVector> {
  let snf = smith_normal_form(m);
  (snf.rank..m.cols()).map(|j| snf.v.column(j)).collect()
}

/// A sublattice of `Zⁿ` kept in row Hermite normal form: pivots strictly move
/// right, pivot entries are positive and entries above a pivot lie in `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
  dim: usize,
  basis: Vec<IntVector>,
}

impl Lattice {
  pub fn zero(dim: usize) -> Self {
    Self { dim, basis: Vec::new() }
  }

  pub fn spanned_by<I: IntoIterator<Item = IntVector>>(dim: usize, generators: I) -> Self {
    let rows: Vec<IntVector> = generators.into_iter().collect();
    for r in &rows {
      assert_eq!(r.len(), dim, "generator length mismatch");
    }
    Self { dim, basis: hermite_rows(rows, dim) }
  }

  pub fn dim(&self) -> usize {
    self.dim
  }

  pub fn basis(&self) -> &[IntVector] {
    &self.basis
  }

  pub fn rank(&self) -> usize {
    self.basis.len()
  }

  pub fn join(&self, other: &Self) -> Self {
    assert_eq!(self.dim, other.dim);
    Self::spanned_by(self.dim, self.basis.iter().chain(&other.basis).cloned())
  }

  /// Canonical representative of `v + L`: each pivot coordinate is reduced into `[0, pivot)`.
  pub fn reduce(&self, v: &[BigInt]) -> IntVector {
    assert_eq!(v.len(), self.dim);
    let mut out = v.to_vec();
    for row in &self.basis {
      let p = pivot_of(row).expect("basis rows are nonzero");
      let q = out[p].div_floor(&row[p]);
      if !q.is_zero() {
        for (o, r) in out.iter_mut().zip(row) {
          *o -= &q * r;
        }
      }
    }
    out
  }

  pub fn contains(&self, v: &[BigInt]) -> bool {
    self.reduce(v).iter().all(Zero::is_zero)
  }

  pub fn contains_lattice(&self, other: &Self) -> bool {
    other.basis.iter().all(|b| self.contains(b))
  }
}

fn pivot_of(row: &[BigInt]) -> Option<usize> {
  row.iter().position(|x| !x.is_zero())
}

fn hermite_rows(rows: Vec<IntVector>, dim: usize) -> Vec<IntVector> {
  let mut basis: Vec<IntVector> = Vec::new();
  let mut rows: Vec<IntVector> = rows.into_iter().filter(|r| !r.iter().all(Zero::is_zero)).collect();
  for col in 0..dim {
    let (active, rest): (Vec<_>, Vec<_>) = rows.into_iter().partition(|r| !r[col].is_zero());
    rows = rest;
    // gcd-combine the active rows; the unimodular 2x2 step leaves one row with zero here
    let mut pivot: Option<IntVector> = None;
    for r in active {
      pivot = Some(match pivot {
        None => r,
        Some(p) => {
          let ext = p[col].extended_gcd(&r[col]);
          let (a, b) = (&p[col] / &ext.gcd, &r[col] / &ext.gcd);
          let eliminated: IntVector = p.iter().zip(&r).map(|(x, y)| &a * y - &b * x).collect();
          if !eliminated.iter().all(Zero::is_zero) {
            rows.push(eliminated);
          }
          p.iter().zip(&r).map(|(x, y)| &ext.x * x + &ext.y * y).collect()
        }
      });
    }
    if let Some(mut p) = pivot {
      if p[col].is_negative() {
        p.iter_mut().for_each(|x| *x = -std::mem::take(x));
      }
      basis.push(p);
    }
  }
  // reduce entries above pivots
  for i in (0..basis.len()).rev() {
    let p = pivot_of(&basis[i]).unwrap();
    for k in 0..i {
      let q = basis[k][p].div_floor(&basis[i][p]);
      if !q.is_zero() {
        let row = basis[i].clone();
        for (x, y) in basis[k].iter_mut().zip(&row) {
          *x -= &q * y;
        }
      }
    }
  }
  basis
}
