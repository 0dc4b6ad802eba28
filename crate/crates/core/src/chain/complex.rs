//! Finitely generated integer cochain complexes in degrees `0..=D`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::{IntMatrix, IntVector};
use crate::error::{Error, Result};

/// Cochain complex with `deltas[n] : C^n → C^{n+1}` stored as a
/// `ranks[n+1] × ranks[n]` matrix. Degrees above `top_degree` are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
  ranks: Vec<usize>,
  deltas: Vec<IntMatrix>,
}

/// Outcome of [`validate_complex`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
  pub valid: bool,
  pub first_violation: Option<(usize, String)>,
}

impl GradedComplex {
  /// Builds without checking `δ∘δ = 0`; shapes are checked.
  pub fn new(ranks: Vec<usize>, deltas: Vec<IntMatrix>) -> Result<Self> {
    let c = Self { ranks, deltas };
    if let Some((degree, reason)) = c.shape_violation() {
      return Err(Error::InvalidComplex { degree, reason });
    }
    Ok(c)
  }

  /// Builds and requires a valid complex.
  pub fn checked(ranks: Vec<usize>, deltas: Vec<IntMatrix>) -> Result<Self> {
    let c = Self::new(ranks, deltas)?;
    c.ensure_valid()?;
    Ok(c)
  }

  /// All differentials zero.
  pub fn with_zero_differentials(ranks: Vec<usize>) -> Self {
    let deltas = ranks.windows(2).map(|w| IntMatrix::zeros(w[1], w[0])).collect();
    Self { ranks, deltas }
  }

  pub fn point() -> Self {
    Self::with_zero_differentials(vec![1])
  }

  pub fn empty() -> Self {
    Self::with_zero_differentials(vec![0])
  }

  pub fn top_degree(&self) -> usize {
    self.ranks.len().saturating_sub(1)
  }

  pub fn ranks(&self) -> &[usize] {
    &self.ranks
  }

  /// Rank in degree `n`; zero outside `0..=D`.
  pub fn rank(&self, n: i64) -> usize {
    if n < 0 {
      0
    } else {
      self.ranks.get(n as usize).copied().unwrap_or(0)
    }
  }

  /// `δ^n` as a `rank(n+1) × rank(n)` matrix, zero outside the stored range.
  pub fn delta(&self, n: i64) -> IntMatrix {
    if n >= 0 && (n as usize) < self.deltas.len() {
      self.deltas[n as usize].clone()
    } else {
      IntMatrix::zeros(self.rank(n + 1), self.rank(n))
    }
  }

  pub fn deltas(&self) -> &[IntMatrix] {
    &self.deltas
  }

  /// Extends the degree range with zero groups up to `top`.
  pub fn padded_to(&self, top: usize) -> Self {
    if top <= self.top_degree() {
      return self.clone();
    }
    let mut ranks = self.ranks.clone();
    ranks.resize(top + 1, 0);
    let deltas = (0..top).map(|n| self.delta(n as i64)).collect();
    Self { ranks, deltas }
  }

  fn shape_violation(&self) -> Option<(usize, String)> {
    if self.ranks.is_empty() {
      return Some((0, "no degrees".into()));
    }
    if self.deltas.len() + 1 != self.ranks.len() {
      return Some((0, format!("{} differentials for {} degrees", self.deltas.len(), self.ranks.len())));
    }
    for (n, d) in self.deltas.iter().enumerate() {
      if d.shape() != (self.ranks[n + 1], self.ranks[n]) {
        return Some((
          n,
          format!("delta{n} is {}x{}, expected {}x{}", d.rows(), d.cols(), self.ranks[n + 1], self.ranks[n]),
        ));
      }
    }
    None
  }

  pub fn validate(&self) -> ValidationReport {
    let violation = self.shape_violation().or_else(|| {
      self.deltas.windows(2).enumerate().find_map(|(n, w)| {
        let comp = w[1].mul(&w[0]).expect("shapes checked");
        (!comp.is_zero()).then(|| (n, format!("delta{} * delta{n} != 0", n + 1)))
      })
    });
    ValidationReport { valid: violation.is_none(), first_violation: violation }
  }

  pub fn ensure_valid(&self) -> Result<()> {
    match self.validate().first_violation {
      None => Ok(()),
      Some((degree, reason)) => Err(Error::InvalidComplex { degree, reason }),
    }
  }

  /// Componentwise direct sum; the basis of `A ⊕ B` lists `A` first.
  pub fn direct_sum(&self, other: &Self) -> Self {
    let top = self.top_degree().max(other.top_degree());
    let ranks: Vec<usize> = (0..=top as i64).map(|n| self.rank(n) + other.rank(n)).collect();
    let deltas = (0..top as i64).map(|n| IntMatrix::block_diag(&self.delta(n), &other.delta(n))).collect();
    Self { ranks, deltas }
  }

  /// Euler characteristic of the cochain groups.
  pub fn euler_characteristic(&self) -> i64 {
    self.ranks.iter().enumerate().map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
  }
}

pub fn validate_complex(c: &GradedComplex) -> ValidationReport {
  c.validate()
}

/// Cochain map of integer degree `degree`: `blocks[n] : A^n → B^{n+degree}`.
/// Blocks whose target degree falls outside `B` have zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainMap {
  degree: i64,
  blocks: Vec<IntMatrix>,
}

impl CochainMap {
  pub fn new(
    source: &GradedComplex,
    target: &GradedComplex,
    degree: i64,
    blocks: Vec<IntMatrix>,
  ) -> Result<Self> {
    if blocks.len() != source.ranks().len() {
      return Err(Error::DimensionMismatch(format!(
        "{} blocks for a source with {} degrees",
        blocks.len(),
        source.ranks().len()
      )));
    }
    for (n, b) in blocks.iter().enumerate() {
      let want = (target.rank(n as i64 + degree), source.rank(n as i64));
      if b.shape() != want {
        return Err(Error::DimensionMismatch(format!("block {n} is {:?}, expected {:?}", b.shape(), want)));
      }
    }
    Ok(Self { degree, blocks })
  }

  /// Like [`CochainMap::new`] and additionally requires `δ_B ∘ f = f ∘ δ_A`.
  pub fn checked(
    source: &GradedComplex,
    target: &GradedComplex,
    degree: i64,
    blocks: Vec<IntMatrix>,
  ) -> Result<Self> {
    let f = Self::new(source, target, degree, blocks)?;
    f.ensure_chain_map(source, target)?;
    Ok(f)
  }

  pub fn zero(source: &GradedComplex, target: &GradedComplex, degree: i64) -> Self {
    let blocks = (0..source.ranks().len() as i64)
      .map(|n| IntMatrix::zeros(target.rank(n + degree), source.rank(n)))
      .collect();
    Self { degree, blocks }
  }

  pub fn identity(c: &GradedComplex) -> Self {
    Self { degree: 0, blocks: c.ranks().iter().map(|&r| IntMatrix::identity(r)).collect() }
  }

  pub fn scaled_identity(c: &GradedComplex, k: &BigInt) -> Self {
    Self { degree: 0, blocks: c.ranks().iter().map(|&r| IntMatrix::scalar(r, k)).collect() }
  }

  pub fn degree(&self) -> i64 {
    self.degree
  }

  pub fn blocks(&self) -> &[IntMatrix] {
    &self.blocks
  }

  /// Block acting on source degree `n`, zero outside the stored range.
  pub fn block(&self, n: i64, source: &GradedComplex, target: &GradedComplex) -> IntMatrix {
    if n >= 0 && (n as usize) < self.blocks.len() {
      self.blocks[n as usize].clone()
    } else {
      IntMatrix::zeros(target.rank(n + self.degree), source.rank(n))
    }
  }

  pub fn apply(&self, n: usize, v: &[BigInt]) -> Result<IntVector> {
    let b = self
      .blocks
      .get(n)
      .ok_or(Error::DegreeOutOfRange { degree: n as i64, max: self.blocks.len() as i64 - 1 })?;
    b.mul_vec(v)
  }

  /// First source degree where `δ_B f ≠ f δ_A`, if any.
  pub fn chain_map_violation(&self, source: &GradedComplex, target: &GradedComplex) -> Option<usize> {
    (0..self.blocks.len()).find(|&n| {
      let n = n as i64;
      let left = target.delta(n + self.degree).mul(&self.block(n, source, target));
      let right = self.block(n + 1, source, target).mul(&source.delta(n));
      match (left, right) {
        (Ok(l), Ok(r)) => l != r,
        _ => true,
      }
    })
  }

  pub fn ensure_chain_map(&self, source: &GradedComplex, target: &GradedComplex) -> Result<()> {
    match self.chain_map_violation(source, target) {
      None => Ok(()),
      Some(degree) => Err(Error::NotAChainMap { degree }),
    }
  }

  pub fn add(&self, other: &Self) -> Result<Self> {
    if self.degree != other.degree || self.blocks.len() != other.blocks.len() {
      return Err(Error::DimensionMismatch("adding cochain maps of different shape".into()));
    }
    let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
    Ok(Self { degree: self.degree, blocks })
  }

  pub fn scale(&self, c: &BigInt) -> Self {
    Self { degree: self.degree, blocks: self.blocks.iter().map(|b| b.scale(c)).collect() }
  }

  /// `g ∘ self`, where `self : A → B` and `g : B → C`.
  pub fn then(&self, g: &Self, a: &GradedComplex, b: &GradedComplex, c: &GradedComplex) -> Result<Self> {
    let degree = self.degree + g.degree;
    let blocks = (0..a.ranks().len() as i64)
      .map(|n| g.block(n + self.degree, b, c).mul(&self.block(n, a, b)))
      .collect::<Result<_>>()?;
    Ok(Self { degree, blocks })
  }

  /// `f ⊕ g : A ⊕ A' → B ⊕ B'` (same degree).
  pub fn direct_sum(
    &self,
    other: &Self,
    (a, a2): (&GradedComplex, &GradedComplex),
    (b, b2): (&GradedComplex, &GradedComplex),
  ) -> Self {
    assert_eq!(self.degree, other.degree);
    let top = a.top_degree().max(a2.top_degree()) as i64;
    let blocks =
      (0..=top).map(|n| IntMatrix::block_diag(&self.block(n, a, b), &other.block(n, a2, b2))).collect();
    Self { degree: self.degree, blocks }
  }

  /// `[f g] : A ⊕ A' → B`.
  pub fn join_sources(&self, other: &Self, a: &GradedComplex, a2: &GradedComplex, b: &GradedComplex) -> Self {
    assert_eq!(self.degree, other.degree);
    let top = a.top_degree().max(a2.top_degree()) as i64;
    let blocks = (0..=top).map(|n| IntMatrix::hstack(&self.block(n, a, b), &other.block(n, a2, b))).collect();
    Self { degree: self.degree, blocks }
  }
}

/// Mapping cone of `f : A → B` of degree `d ≤ 1`.
///
/// `Cone^n = A^n ⊕ B^{n+d-1}` with `D(a, b) = (-δa, f(a) + δb)`, so that the
/// cone of a degree-0 map sits in `0 → B[-1] → Cone(f) → A → 0` and its long
/// exact sequence reads `… → H^{n-1}(B) → H^n(Cone) → H^n(A) → H^n(B) → …`.
#[derive(Clone, Debug)]
pub struct MappingCone {
  pub complex: GradedComplex,
  /// `B → Cone`, of degree `1 - d`: `b ↦ (0, b)`.
  pub inclusion: CochainMap,
  /// `Cone → A`, of degree 0: `(a, b) ↦ (-1)^n a`.
  pub projection: CochainMap,
}

pub fn mapping_cone(f: &CochainMap, a: &GradedComplex, b: &GradedComplex) -> Result<MappingCone> {
  let d = f.degree();
  if d > 1 {
    return Err(Error::Unsupported(format!(
      "mapping cone of a degree-{d} map would drop low degrees of the target"
    )));
  }
  f.ensure_chain_map(a, b)?;
  let shift = d - 1;
  let top = (a.top_degree() as i64).max(b.top_degree() as i64 - shift);
  let part_a = |n: i64| a.rank(n);
  let part_b = |n: i64| b.rank(n + shift);
  let ranks: Vec<usize> = (0..=top).map(|n| part_a(n) + part_b(n)).collect();
  let minus_one = -BigInt::one();
  let deltas = (0..top)
    .map(|n| {
      let mut m = IntMatrix::zeros(ranks[n as usize + 1], ranks[n as usize]);
      m.set_block(0, 0, &a.delta(n).scale(&minus_one));
      m.set_block(part_a(n + 1), 0, &f.block(n, a, b));
      m.set_block(part_a(n + 1), part_a(n), &b.delta(n + shift));
      m
    })
    .collect();
  let complex = GradedComplex { ranks, deltas };

  let inclusion_blocks = (0..=b.top_degree() as i64)
    .map(|m| {
      let n = m - shift;
      let mut blk = IntMatrix::zeros(complex.rank(n), b.rank(m));
      if n >= 0 && n <= top {
        blk.set_block(part_a(n), 0, &IntMatrix::identity(b.rank(m)));
      }
      blk
    })
    .collect();
  let inclusion = CochainMap::new(b, &complex, -shift, inclusion_blocks)?;

  let projection_blocks = (0..=top)
    .map(|n| {
      let mut blk = IntMatrix::zeros(a.rank(n), complex.rank(n));
      let sign = if n % 2 == 0 { BigInt::one() } else { minus_one.clone() };
      blk.set_block(0, 0, &IntMatrix::scalar(a.rank(n), &sign));
      blk
    })
    .collect();
  let projection = CochainMap::new(&complex, a, 0, projection_blocks)?;
  Ok(MappingCone { complex, inclusion, projection })
}

/// Degree-`k` operator on a cone induced by compatible operators on both ends:
/// if `μ_B f = f μ_A` then `(a, b) ↦ (μ_A a, μ_B b)` commutes with the cone differential.
pub fn cone_operator(
  cone: &GradedComplex,
  f: &CochainMap,
  (a, mu_a): (&GradedComplex, &CochainMap),
  (b, mu_b): (&GradedComplex, &CochainMap),
) -> Result<CochainMap> {
  let k = mu_a.degree();
  if mu_b.degree() != k {
    return Err(Error::DimensionMismatch("operators of different degree".into()));
  }
  let shift = f.degree() - 1;
  let blocks = (0..=cone.top_degree() as i64)
    .map(|n| {
      let mut blk = IntMatrix::zeros(cone.rank(n + k), cone.rank(n));
      blk.set_block(0, 0, &mu_a.block(n, a, a));
      blk.set_block(a.rank(n + k), a.rank(n), &mu_b.block(n + shift, b, b));
      blk
    })
    .collect();
  CochainMap::checked(cone, cone, k, blocks)
}

/// `(A ⊗ B)^n = ⊕_{p+q=n} A^p ⊗ B^q` with `d(a⊗b) = δa⊗b + (-1)^p a⊗δb`.
/// Basis order: by `p` ascending, then `A`-index major, `B`-index minor.
pub fn tensor_product(a: &GradedComplex, b: &GradedComplex) -> GradedComplex {
  let top = a.top_degree() + b.top_degree();
  // offsets[n][p] = start of the A^p ⊗ B^{n-p} block inside degree n
  let mut offsets = Vec::with_capacity(top + 1);
  let mut ranks = Vec::with_capacity(top + 1);
  for n in 0..=top as i64 {
    let mut off = Vec::new();
    let mut total = 0;
    for p in 0..=n {
      off.push(total);
      total += a.rank(p) * b.rank(n - p);
    }
    offsets.push(off);
    ranks.push(total);
  }
  let deltas = (0..top as i64)
    .map(|n| {
      let mut m = IntMatrix::zeros(ranks[n as usize + 1], ranks[n as usize]);
      for p in 0..=n {
        let q = n - p;
        let (ra, rb) = (a.rank(p), b.rank(q));
        if ra * rb == 0 {
          continue;
        }
        let src = offsets[n as usize][p as usize];
        let da = a.delta(p);
        let db = b.delta(q);
        let sign = if p % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        for i in 0..ra {
          for j in 0..rb {
            let col = src + i * rb + j;
            // δa ⊗ b lands in A^{p+1} ⊗ B^q
            let dst = offsets[n as usize + 1][p as usize + 1];
            for i2 in 0..da.rows() {
              let c = &da[(i2, i)];
              if !c.is_zero() {
                m[(dst + i2 * rb + j, col)] += c;
              }
            }
            // (-1)^p a ⊗ δb lands in A^p ⊗ B^{q+1}
            let dst = offsets[n as usize + 1][p as usize];
            let rb2 = b.rank(q + 1);
            for j2 in 0..db.rows() {
              let c = &db[(j2, j)];
              if !c.is_zero() {
                m[(dst + i * rb2 + j2, col)] += &sign * c;
              }
            }
          }
        }
      }
      m
    })
    .collect();
  GradedComplex { ranks, deltas }
}

#[cfg(test)]
mod tests {
  use super::*;

  fn circle() -> GradedComplex {
    GradedComplex::with_zero_differentials(vec![1, 1])
  }

  #[test]
  fn validate_examples() {
    assert!(circle().validate().valid);
    let lens5 = GradedComplex::new(
      vec![1, 1, 1, 1],
      vec![IntMatrix::from_rows(&[[0]]), IntMatrix::from_rows(&[[5]]), IntMatrix::from_rows(&[[0]])],
    )
    .unwrap();
    assert!(lens5.validate().valid);
    let bad =
      GradedComplex::new(vec![1, 1, 1], vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[1]])])
        .unwrap();
    let r = bad.validate();
    assert!(!r.valid);
    assert_eq!(r.first_violation.unwrap().0, 0);
  }

  #[test]
  fn shape_mismatch_rejected() {
    assert!(GradedComplex::new(vec![1, 2], vec![IntMatrix::zeros(1, 1)]).is_err());
  }

  #[test]
  fn empty_complex_is_valid() {
    assert!(GradedComplex::with_zero_differentials(vec![0, 0, 0]).validate().valid);
  }

  #[test]
  fn tensor_with_point_is_unit() {
    let c = GradedComplex::checked(
      vec![1, 2, 1],
      vec![IntMatrix::from_rows(&[[1], [1]]), IntMatrix::from_rows(&[[1, -1]])],
    )
    .unwrap();
    assert_eq!(tensor_product(&c, &GradedComplex::point()), c);
  }

  #[test]
  fn tensor_squares_to_zero() {
    let c = GradedComplex::checked(
      vec![1, 2, 1],
      vec![IntMatrix::from_rows(&[[1], [1]]), IntMatrix::from_rows(&[[1, -1]])],
    )
    .unwrap();
    let lens =
      GradedComplex::checked(vec![1, 1, 1], vec![IntMatrix::from_rows(&[[0]]), IntMatrix::from_rows(&[[3]])])
        .unwrap();
    assert!(tensor_product(&c, &lens).validate().valid);
    assert!(tensor_product(&lens, &c).validate().valid);
  }

  #[test]
  fn cone_rejects_non_chain_map() {
    let lens = GradedComplex::checked(vec![1, 1], vec![IntMatrix::from_rows(&[[2]])]).unwrap();
    let pt = GradedComplex::with_zero_differentials(vec![1, 1]);
    let f = CochainMap::new(&lens, &pt, 0, vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[1]])])
      .unwrap();
    assert!(matches!(mapping_cone(&f, &lens, &pt), Err(Error::NotAChainMap { .. })));
  }

  #[test]
  fn cone_structure_maps_are_chain_maps() {
    let a = circle();
    let f = CochainMap::scaled_identity(&a, &BigInt::from(3));
    let cone = mapping_cone(&f, &a, &a).unwrap();
    assert!(cone.complex.validate().valid);
    cone.inclusion.ensure_chain_map(&a, &cone.complex).unwrap();
    cone.projection.ensure_chain_map(&cone.complex, &a).unwrap();
  }
}
