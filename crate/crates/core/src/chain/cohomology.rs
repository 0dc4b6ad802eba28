//! Integral cohomology groups with explicit generators and coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::complex::{CochainMap, GradedComplex};
use super::matrix::{zero_vec, IntMatrix, IntVector};
use super::snf::smith_normal_form;
use super::solve::Lattice;
use crate::error::{Error, Result};

/// `H^n ≅ Z/d₁ ⊕ … ⊕ Z/d_t ⊕ Z^r`.
///
/// Generators are listed torsion first (ascending invariant factor), then free.
/// Each generator cocycle is sign-normalized so its first nonzero entry is
/// positive. `coordinate_map` sends a cocycle `z` to `coordinate_map · z`; torsion
/// coordinates are then reduced into `[0, dᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
  pub degree: usize,
  pub free_rank: usize,
  pub torsion: Vec<BigInt>,
  pub generators: Vec<IntVector>,
  pub coordinate_map: IntMatrix,
  /// `δ^n`, kept to reject non-cocycles.
  cocycle_test: IntMatrix,
}

/// Printable summary: invariant factors and free rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupProfile {
  pub torsion: Vec<String>,
  pub free_rank: usize,
}

impl GroupProfile {
  pub fn new(torsion: &[BigInt], free_rank: usize) -> Self {
    Self { torsion: torsion.iter().map(ToString::to_string).collect(), free_rank }
  }

  pub fn free(rank: usize) -> Self {
    Self { torsion: Vec::new(), free_rank: rank }
  }

  pub fn cyclic(k: u64) -> Self {
    if k == 1 {
      Self::free(0)
    } else {
      Self { torsion: vec![k.to_string()], free_rank: 0 }
    }
  }

  pub fn is_zero(&self) -> bool {
    self.torsion.is_empty() && self.free_rank == 0
  }
}

impl std::fmt::Display for GroupProfile {
  fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
    let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
    match self.free_rank {
      0 => {}
      1 => parts.push("Z".into()),
      r => parts.push(format!("Z^{r}")),
    }
    if parts.is_empty() {
      write!(f, "0")
    } else {
      write!(f, "{}", parts.join(" + "))
    }
  }
}

impl CohomologyGroup {
  /// Number of generators (torsion plus free).
  pub fn len(&self) -> usize {
    self.torsion.len() + self.free_rank
  }

  pub fn is_zero(&self) -> bool {
    self.len() == 0
  }

  pub fn profile(&self) -> GroupProfile {
    GroupProfile::new(&self.torsion, self.free_rank)
  }

  /// Order of each coordinate: `dᵢ` for torsion, `0` (meaning infinite) for free.
  pub fn orders(&self) -> Vec<BigInt> {
    self.torsion.iter().cloned().chain(std::iter::repeat_n(BigInt::zero(), self.free_rank)).collect()
  }

  /// Relations among coordinates: `dᵢ eᵢ` for each torsion coordinate.
  pub fn relations(&self) -> Lattice {
    let n = self.len();
    Lattice::spanned_by(
      n,
      self.torsion.iter().enumerate().map(|(i, d)| {
        let mut v = zero_vec(n);
        v[i] = d.clone();
        v
      }),
    )
  }

  /// Reduces torsion coordinates into `[0, dᵢ)`.
  pub fn normalize(&self, coords: &[BigInt]) -> IntVector {
    coords
      .iter()
      .enumerate()
      .map(|(i, c)| match self.torsion.get(i) {
        Some(d) => c.mod_floor(d),
        None => c.clone(),
      })
      .collect()
  }

  /// Coordinates of `[z]`. Fails naming the first nonzero entry of `δz` when `z`
  /// is not a cocycle.
  pub fn coordinates(&self, z: &[BigInt]) -> Result<IntVector> {
    if z.len() != self.coordinate_map.cols() {
      return Err(Error::DimensionMismatch(format!(
        "cochain of length {} in degree {} (rank {})",
        z.len(),
        self.degree,
        self.coordinate_map.cols()
      )));
    }
    let dz = self.cocycle_test.mul_vec(z)?;
    if let Some(entry) = dz.iter().position(|x| !x.is_zero()) {
      return Err(Error::NotACocycle { degree: self.degree, entry });
    }
    Ok(self.normalize(&self.coordinate_map.mul_vec(z)?))
  }

  /// Cocycle representing the class with the given coordinates.
  pub fn representative(&self, coords: &[BigInt]) -> IntVector {
    assert_eq!(coords.len(), self.len());
    let mut z = zero_vec(self.coordinate_map.cols());
    for (c, g) in coords.iter().zip(&self.generators) {
      if c.is_zero() {
        continue;
      }
      for (zi, gi) in z.iter_mut().zip(g) {
        *zi += c * gi;
      }
    }
    z
  }

  /// Whether two coordinate vectors name the same class.
  pub fn same_class(&self, a: &[BigInt], b: &[BigInt]) -> bool {
    self.normalize(a) == self.normalize(b)
  }
}

/// `H^n(C) = ker δ^n / im δ^{n-1}`.
pub fn cohomology(c: &GradedComplex, n: usize) -> Result<CohomologyGroup> {
  c.ensure_valid()?;
  if n > c.top_degree() {
    return Err(Error::DegreeOutOfRange { degree: n as i64, max: c.top_degree() as i64 });
  }
  Ok(cohomology_unchecked(c, n))
}

/// All groups `H^0 … H^D`.
pub fn cohomology_all(c: &GradedComplex) -> Result<Vec<CohomologyGroup>> {
  c.ensure_valid()?;
  Ok((0..=c.top_degree()).map(|n| cohomology_unchecked(c, n)).collect())
}

fn cohomology_unchecked(c: &GradedComplex, n: usize) -> CohomologyGroup {
  let rank_n = c.rank(n as i64);
  let outgoing = c.delta(n as i64);
  let incoming = c.delta(n as i64 - 1);

  // kernel of δ^n: columns r.. of V, with coordinates (V⁻¹ z)[r..]
  let out_snf = smith_normal_form(&outgoing);
  let r = out_snf.rank;
  let kernel_basis = out_snf.v.submatrix(0..rank_n, r..rank_n);
  let kernel_coords = out_snf.v_inv.submatrix(r..rank_n, 0..rank_n);

  // im δ^{n-1} written in the kernel basis, then reduced
  let relations = kernel_coords.mul(&incoming).expect("shapes agree");
  let rel_snf = smith_normal_form(&relations);
  let k = rank_n - r;

  let mut torsion = Vec::new();
  let mut chosen = Vec::new();
  for i in 0..rel_snf.rank {
    let d = &rel_snf.d[(i, i)];
    if !d.is_one() {
      torsion.push(d.clone());
      chosen.push(i);
    }
  }
  let free_rank = k - rel_snf.rank;
  chosen.extend(rel_snf.rank..k);

  let to_kernel = rel_snf.u.mul(&kernel_coords).expect("shapes agree");
  let mut generators = Vec::with_capacity(chosen.len());
  let mut coordinate_map = IntMatrix::zeros(chosen.len(), rank_n);
  for (row, &i) in chosen.iter().enumerate() {
    let mut g = kernel_basis.mul_vec(&rel_snf.u_inv.column(i)).expect("shapes agree");
    let flip = g.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
    if flip {
      g.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    for j in 0..rank_n {
      let v = to_kernel[(i, j)].clone();
      coordinate_map[(row, j)] = if flip { -v } else { v };
    }
    generators.push(g);
  }

  CohomologyGroup { degree: n, free_rank, torsion, generators, coordinate_map, cocycle_test: outgoing }
}

/// Coordinates of `[z] ∈ H^n(C)`.
pub fn class_coordinates(c: &GradedComplex, n: usize, z: &[BigInt]) -> Result<IntVector> {
  cohomology(c, n)?.coordinates(z)
}

/// Matrix of the map `H^n(A) → H^{n+deg}(B)` induced by `f`, in generator
/// coordinates (column `i` is the image of generator `i`, normalized).
pub fn induced_map(
  f: &CochainMap,
  a: &GradedComplex,
  b: &GradedComplex,
  source: &CohomologyGroup,
  target: &CohomologyGroup,
) -> Result<IntMatrix> {
  let block = f.block(source.degree as i64, a, b);
  let columns =
    source.generators.iter().map(|g| target.coordinates(&block.mul_vec(g)?)).collect::<Result<Vec<_>>>()?;
  Ok(IntMatrix::from_columns(target.len(), &columns))
}

/// The zero group in degree `n`, used for out-of-range nodes of long exact sequences.
pub fn zero_group(degree: usize) -> CohomologyGroup {
  CohomologyGroup {
    degree,
    free_rank: 0,
    torsion: Vec::new(),
    generators: Vec::new(),
    coordinate_map: IntMatrix::zeros(0, 0),
    cocycle_test: IntMatrix::zeros(0, 0),
  }
}
