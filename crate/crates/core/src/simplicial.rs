//! Finite simplicial complexes on ordered vertices, their integer cochains,
//! and the Alexander–Whitney cup product.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chain::{CochainMap, GradedComplex, IntMatrix, IntVector};
use crate::error::{Error, Result};

/// Simplicial complex given by facets; every simplex is a strictly increasing
/// vertex tuple and faces of each dimension are sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
  vertex_count: usize,
  facets: Vec<Vec<usize>>,
  faces: Vec<Vec<Vec<usize>>>,
  index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
  pub fn from_facets(facets: &[Vec<usize>]) -> Result<Self> {
    if facets.is_empty() {
      return Err(Error::BadParams("a simplicial complex needs at least one facet".into()));
    }
    for f in facets {
      if f.is_empty() {
        return Err(Error::BadParams("empty facet".into()));
      }
      if f.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadParams(format!("facet {f:?} must list strictly increasing vertices")));
      }
    }
    let dim = facets.iter().map(Vec::len).max().unwrap() - 1;
    let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
    for f in facets {
      // every nonempty subset of a facet, in order
      let n = f.len();
      for mask in 1u64..(1u64 << n) {
        let s: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
        sets[s.len() - 1].insert(s);
      }
    }
    let faces: Vec<Vec<Vec<usize>>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
    let index = faces.iter().map(|fs| fs.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
    let vertex_count = faces[0].len();
    Ok(Self { vertex_count, facets: facets.to_vec(), faces, index })
  }

  pub fn vertex_count(&self) -> usize {
    self.vertex_count
  }

  pub fn facets(&self) -> &[Vec<usize>] {
    &self.facets
  }

  pub fn dimension(&self) -> usize {
    self.faces.len() - 1
  }

  /// Simplices of dimension `n`, lexicographically ordered.
  pub fn simplices(&self, n: usize) -> &[Vec<usize>] {
    self.faces.get(n).map_or(&[], Vec::as_slice)
  }

  pub fn count(&self, n: usize) -> usize {
    self.simplices(n).len()
  }

  pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
    self.index.get(simplex.len().checked_sub(1)?)?.get(simplex).copied()
  }

  /// `δ^n : C^n → C^{n+1}`, `(δφ)(v₀…v_{n+1}) = Σ (-1)^i φ(v₀…v̂ᵢ…v_{n+1})`.
  pub fn coboundary(&self, n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(self.count(n + 1), self.count(n));
    for (row, s) in self.simplices(n + 1).iter().enumerate() {
      for i in 0..s.len() {
        let mut face = s.clone();
        face.remove(i);
        let col = self.index_of(&face).expect("closed under faces");
        m[(row, col)] += if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
      }
    }
    m
  }

  /// Cochain complex in degrees `0..=max_degree`.
  pub fn cochain_complex(&self, max_degree: usize) -> GradedComplex {
    let ranks = (0..=max_degree).map(|n| self.count(n)).collect();
    let deltas = (0..max_degree).map(|n| self.coboundary(n)).collect();
    GradedComplex::new(ranks, deltas).expect("simplicial shapes agree")
  }

  /// Cochain complex in degrees up to the dimension.
  pub fn full_cochain_complex(&self) -> GradedComplex {
    self.cochain_complex(self.dimension())
  }

  pub fn cochain(&self, degree: usize, values: IntVector) -> Result<Cochain<'_>> {
    if values.len() != self.count(degree) {
      return Err(Error::DimensionMismatch(format!(
        "{} values for {} simplices of dimension {degree}",
        values.len(),
        self.count(degree)
      )));
    }
    Ok(Cochain { complex: self, degree, values })
  }

  /// The 0-cochain taking the value 1 on every vertex.
  pub fn unit(&self) -> Cochain<'_> {
    Cochain { complex: self, degree: 0, values: vec![BigInt::one(); self.vertex_count] }
  }

  /// Indicator cochain of one simplex.
  pub fn indicator(&self, simplex: &[usize]) -> Result<Cochain<'_>> {
    let degree = simplex.len().checked_sub(1).ok_or(Error::BadParams("empty simplex".into()))?;
    let i =
      self.index_of(simplex).ok_or_else(|| Error::BadParams(format!("{simplex:?} is not a simplex")))?;
    let mut values = vec![BigInt::zero(); self.count(degree)];
    values[i] = BigInt::one();
    Ok(Cochain { complex: self, degree, values })
  }

  /// Alexander–Whitney product on raw value vectors.
  fn cup_values(&self, p: usize, phi: &[BigInt], q: usize, psi: &[BigInt]) -> IntVector {
    self
      .simplices(p + q)
      .iter()
      .map(|s| {
        let front = self.index_of(&s[..=p]).expect("front face");
        let back = self.index_of(&s[p..]).expect("back face");
        &phi[front] * &psi[back]
      })
      .collect()
  }

  /// Matrices of `φ ↦ e ⌣ φ` for a 2-cocycle `e`, over the complex truncated at `max_degree`.
  pub fn cup_operator(&self, e: &Cochain<'_>, max_degree: usize) -> Result<CochainMap> {
    e.same_complex(self)?;
    if e.degree != 2 {
      return Err(Error::BadParams(format!("cup operator needs a 2-cochain, got degree {}", e.degree)));
    }
    e.ensure_cocycle()?;
    let complex = self.cochain_complex(max_degree);
    let blocks = (0..=max_degree)
      .map(|n| {
        let columns: Vec<IntVector> = (0..self.count(n))
          .map(|j| {
            let mut basis = vec![BigInt::zero(); self.count(n)];
            basis[j] = BigInt::one();
            if n + 2 <= max_degree {
              self.cup_values(2, &e.values, n, &basis)
            } else {
              Vec::new()
            }
          })
          .collect();
        let rows = if n + 2 <= max_degree { self.count(n + 2) } else { 0 };
        IntMatrix::from_columns(rows, &columns)
      })
      .collect();
    CochainMap::checked(&complex, &complex, 2, blocks)
  }
}

/// Integer cochain on a fixed simplicial complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<'a> {
  complex: &'a SimplicialComplex,
  degree: usize,
  values: IntVector,
}

impl<'a> Cochain<'a> {
  pub fn degree(&self) -> usize {
    self.degree
  }

  pub fn values(&self) -> &[BigInt] {
    &self.values
  }

  pub fn into_values(self) -> IntVector {
    self.values
  }

  pub fn complex(&self) -> &'a SimplicialComplex {
    self.complex
  }

  fn same_complex(&self, other: &SimplicialComplex) -> Result<()> {
    if std::ptr::eq(self.complex, other) || *self.complex == *other {
      Ok(())
    } else {
      Err(Error::DimensionMismatch("cochains live on different complexes".into()))
    }
  }

  pub fn coboundary(&self) -> Cochain<'a> {
    let values = self.complex.coboundary(self.degree).mul_vec(&self.values).expect("shape");
    Cochain { complex: self.complex, degree: self.degree + 1, values }
  }

  pub fn is_cocycle(&self) -> bool {
    self.coboundary().values.iter().all(Zero::is_zero)
  }

  fn ensure_cocycle(&self) -> Result<()> {
    match self.coboundary().values.iter().position(|x| !x.is_zero()) {
      None => Ok(()),
      Some(entry) => Err(Error::NotACocycle { degree: self.degree, entry }),
    }
  }

  pub fn add(&self, other: &Cochain<'a>) -> Result<Cochain<'a>> {
    other.same_complex(self.complex)?;
    if self.degree != other.degree {
      return Err(Error::DimensionMismatch("adding cochains of different degree".into()));
    }
    let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
    Ok(Cochain { complex: self.complex, degree: self.degree, values })
  }

  pub fn scale(&self, c: &BigInt) -> Cochain<'a> {
    Cochain {
      complex: self.complex,
      degree: self.degree,
      values: self.values.iter().map(|x| c * x).collect(),
    }
  }

  /// `(φ ⌣ ψ)(v₀…v_{p+q}) = φ(v₀…v_p) · ψ(v_p…v_{p+q})`.
  pub fn cup(&self, other: &Cochain<'a>) -> Result<Cochain<'a>> {
    other.same_complex(self.complex)?;
    let values = self.complex.cup_values(self.degree, &self.values, other.degree, &other.values);
    Ok(Cochain { complex: self.complex, degree: self.degree + other.degree, values })
  }
}

/// Free function form of [`Cochain::cup`].
pub fn cup_product<'a>(phi: &Cochain<'a>, psi: &Cochain<'a>) -> Result<Cochain<'a>> {
  phi.cup(psi)
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::chain::{cohomology, cohomology_all, int_vec};

  fn boundary_of_tetrahedron() -> SimplicialComplex {
    SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
  }

  #[test]
  fn single_triangle_closure() {
    let k = SimplicialComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
    assert_eq!((k.count(0), k.count(1), k.count(2)), (3, 3, 1));
    assert_eq!(k.simplices(1), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
  }

  #[test]
  fn rejects_descending_and_duplicate_vertices() {
    assert!(SimplicialComplex::from_facets(&[vec![1, 0]]).is_err());
    assert!(SimplicialComplex::from_facets(&[vec![0, 0, 1]]).is_err());
    assert!(SimplicialComplex::from_facets(&[]).is_err());
  }

  #[test]
  fn point_and_circle() {
    let pt = SimplicialComplex::from_facets(&[vec![0]]).unwrap();
    assert_eq!(pt.full_cochain_complex().ranks(), &[1]);
    let circle = SimplicialComplex::from_facets(&[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
    let h: Vec<String> = cohomology_all(&circle.full_cochain_complex())
      .unwrap()
      .iter()
      .map(|h| h.profile().to_string())
      .collect();
    assert_eq!(h, ["Z", "Z"]);
  }

  #[test]
  fn sphere_cohomology() {
    let s2 = boundary_of_tetrahedron();
    let h: Vec<String> =
      cohomology_all(&s2.full_cochain_complex()).unwrap().iter().map(|h| h.profile().to_string()).collect();
    assert_eq!(h, ["Z", "0", "Z"]);
  }

  #[test]
  fn unit_is_identity_for_cup() {
    let s2 = boundary_of_tetrahedron();
    let phi = s2.cochain(1, int_vec([1, -2, 0, 3, 1, 4])).unwrap();
    assert_eq!(phi.cup(&s2.unit()).unwrap(), phi);
    assert_eq!(s2.unit().cup(&phi).unwrap(), phi);
  }

  #[test]
  fn leibniz_on_sphere() {
    let s2 = boundary_of_tetrahedron();
    let phi = s2.cochain(1, int_vec([1, -2, 0, 3, 1, 4])).unwrap();
    let psi = s2.cochain(0, int_vec([2, -1, 5, 7])).unwrap();
    let lhs = phi.cup(&psi).unwrap().coboundary();
    let rhs = phi
      .coboundary()
      .cup(&psi)
      .unwrap()
      .add(&phi.cup(&psi.coboundary()).unwrap().scale(&BigInt::from(-1)))
      .unwrap();
    assert_eq!(lhs, rhs);
  }

  #[test]
  fn cup_operator_examples() {
    let s2 = boundary_of_tetrahedron();
    let zero = s2.cochain(2, int_vec([0, 0, 0, 0])).unwrap();
    let op = s2.cup_operator(&zero, 2).unwrap();
    assert!(op.blocks().iter().all(IntMatrix::is_zero));

    let e = s2.indicator(&[0, 1, 2]).unwrap();
    let op = s2.cup_operator(&e, 2).unwrap();
    assert_eq!(op.apply(0, s2.unit().values()).unwrap(), e.values().to_vec());

    let not_cocycle = s2.cochain(1, int_vec([1, 0, 0, 0, 0, 0])).unwrap();
    assert!(s2.cup_operator(&not_cocycle, 2).is_err());
  }

  #[test]
  fn exact_euler_class_acts_trivially() {
    let s2 = boundary_of_tetrahedron();
    let w = s2.cochain(1, int_vec([1, 0, 2, 0, -1, 0])).unwrap();
    let e = w.coboundary();
    let op = s2.cup_operator(&e, 2).unwrap();
    let c = s2.full_cochain_complex();
    let h0 = cohomology(&c, 0).unwrap();
    let h2 = cohomology(&c, 2).unwrap();
    let image = op.apply(0, &h0.generators[0]).unwrap();
    assert!(h2.coordinates(&image).unwrap().iter().all(Zero::is_zero));
  }
}
