//! Topological T-duality of circle bundles with H-flux.
//!
//! A flux on the total space `T` of `(B, e)` is a 3-cocycle `(φ₃, ψ₂)`, i.e.
//! `δψ₂ = 0` and `δφ₃ = e ⌣ ψ₂`. The dual Euler class is `ê = [ψ₂]`, the fiber
//! integral of the flux. The dual flux on the total space of `(B, ê)` is
//! `(φ̂₃, e)` with `δφ̂₃ = ê ⌣ e`; it integrates back to `e` along the dual
//! fiber and is determined up to pullbacks of `H³(B)`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::chain::cohomology::zero_group;
use crate::chain::{cohomology, solve_integer_system, CohomologyGroup, GradedComplex, IntVector, Lattice};
use crate::error::{Error, Result};
use crate::gysin::{total_space, EulerModel, TotalSpaceModel, SIGN_CONVENTION};

/// A circle bundle together with a flux cocycle on its total space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TDualityTriple {
  pub model: EulerModel,
  pub flux_rep: IntVector,
}

/// `H^n` of a complex, or the zero group above its top degree.
pub(crate) fn cohomology_or_zero(c: &GradedComplex, n: usize) -> Result<CohomologyGroup> {
  if n > c.top_degree() {
    Ok(zero_group(n))
  } else {
    cohomology(c, n)
  }
}

impl TDualityTriple {
  pub fn new(model: EulerModel, flux_rep: IntVector) -> Result<Self> {
    let t = total_space(&model)?;
    check_flux(&t, &flux_rep)?;
    Ok(Self { model, flux_rep })
  }

  /// Flux given by coordinates in the generators of `H³(E)`.
  pub fn from_class(model: EulerModel, coords: &[BigInt]) -> Result<Self> {
    let t = total_space(&model)?;
    let h3 = cohomology_or_zero(&t.total, 3)?;
    if coords.len() != h3.len() {
      return Err(Error::DimensionMismatch(format!(
        "H^3(E) has {} coordinates, got {}",
        h3.len(),
        coords.len()
      )));
    }
    let rep = h3.representative(coords);
    Ok(Self { model, flux_rep: pad(rep, t.total.rank(3)) })
  }

  /// The flux split into its base components `(φ₃, ψ₂)`.
  pub fn components(&self) -> (&[BigInt], &[BigInt]) {
    self.flux_rep.split_at(self.model.base.rank(3))
  }

  /// Class of the flux in `H³(E)`.
  pub fn flux_class(&self) -> Result<IntVector> {
    let t = total_space(&self.model)?;
    flux_coordinates(&t, &self.flux_rep)
  }
}

fn pad(mut v: IntVector, len: usize) -> IntVector {
  v.resize(len, BigInt::zero());
  v
}

fn check_flux(t: &TotalSpaceModel, flux: &[BigInt]) -> Result<()> {
  if flux.len() != t.total.rank(3) {
    return Err(Error::DimensionMismatch(format!(
      "flux cochain of length {} but the total space has rank {} in degree 3",
      flux.len(),
      t.total.rank(3)
    )));
  }
  let d = t.total.delta(3).mul_vec(flux)?;
  match d.iter().position(|x| !x.is_zero()) {
    Some(entry) => Err(Error::NotACocycle { degree: 3, entry }),
    None => Ok(()),
  }
}

fn flux_coordinates(t: &TotalSpaceModel, flux: &[BigInt]) -> Result<IntVector> {
  if t.total.top_degree() < 3 {
    return Ok(Vec::new());
  }
  cohomology(&t.total, 3)?.coordinates(flux)
}

/// `ê = [ψ₂]` in the generators of `H²(B)`.
pub fn push_flux(triple: &TDualityTriple) -> Result<IntVector> {
  let t = total_space(&triple.model)?;
  check_flux(&t, &triple.flux_rep)?;
  let (_, psi) = triple.components();
  cohomology_or_zero(&triple.model.base, 2)?.coordinates_or_empty(psi)
}

trait CoordinatesOrEmpty {
  fn coordinates_or_empty(&self, z: &[BigInt]) -> Result<IntVector>;
}

impl CoordinatesOrEmpty for CohomologyGroup {
  fn coordinates_or_empty(&self, z: &[BigInt]) -> Result<IntVector> {
    if z.is_empty() {
      Ok(vec![BigInt::zero(); self.len()])
    } else {
      self.coordinates(z)
    }
  }
}

/// Witness that the dual flux equation `δφ̂₃ = ê ⌣ e` was solved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvabilityCertificate {
  pub rhs: Vec<String>,
  pub solution: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TDualResult {
  /// `[e]` of the input, in generators of `H²(B)`.
  pub euler: IntVector,
  /// `ê`, in generators of `H²(B)`.
  pub dual_euler: IntVector,
  pub dual_model: EulerModel,
  /// Cocycle `(φ̂₃, e)` on the dual total space.
  pub dual_flux: IntVector,
  /// `[dual_flux]` in generators of `H³(Ê)`.
  pub dual_flux_class: IntVector,
  pub dual_h3: CohomologyGroup,
  /// Images of the generators of `H³(B)` in `H³(Ê)`.
  pub ambiguity: Vec<IntVector>,
  pub certificate: SolvabilityCertificate,
}

/// Dualizes `triple`; fails with [`Error::Obstruction`] when `ê ⌣ e` is not a coboundary.
pub fn dualize(triple: &TDualityTriple) -> Result<TDualResult> {
  let model = &triple.model;
  let base = &model.base;
  let dual_euler = push_flux(triple)?;
  let (_, psi) = triple.components();
  let psi = pad(psi.to_vec(), base.rank(2));

  let realization = model.cup.realize(base, &psi)?;
  let dual_model = EulerModel::from_realization(base.clone(), model.cup.clone(), realization)?;

  // δφ̂₃ = μ_ê(e)
  let rhs = if base.top_degree() < 2 { Vec::new() } else { dual_model.mu.apply(2, &model.euler_rep)? };
  let delta3 = base.delta(3);
  let solution = if base.rank(3) == 0 {
    if rhs.iter().any(|x| !x.is_zero()) {
      return Err(Error::Obstruction);
    }
    Vec::new()
  } else {
    solve_integer_system(&delta3, &rhs)?.ok_or(Error::Obstruction)?.particular
  };

  let t_hat = total_space(&dual_model)?;
  let dual_flux: IntVector = solution.iter().chain(&model.euler_rep).cloned().collect();
  let dual_flux = pad(dual_flux, t_hat.total.rank(3));
  check_flux(&t_hat, &dual_flux).map_err(|e| Error::Invariant(format!("dual flux: {e}")))?;
  let dual_h3 = cohomology_or_zero(&t_hat.total, 3)?;
  let dual_flux_class = flux_coordinates(&t_hat, &dual_flux)?;

  let h3b = cohomology_or_zero(base, 3)?;
  let ambiguity = h3b
    .generators
    .iter()
    .map(|g| dual_h3.coordinates(&t_hat.pullback_incl.apply(3, g)?))
    .collect::<Result<Vec<_>>>()?;

  let euler = model.euler_class()?;
  let result = TDualResult {
    euler,
    dual_euler,
    dual_model,
    dual_flux,
    dual_flux_class,
    dual_h3,
    ambiguity,
    certificate: SolvabilityCertificate {
      rhs: rhs.iter().map(ToString::to_string).collect(),
      solution: solution.iter().map(ToString::to_string).collect(),
    },
  };
  let back = integrate_dual_flux(&result)?;
  if back != result.euler {
    return Err(Error::Invariant(format!("dual flux integrates to {back:?}, expected {:?}", result.euler)));
  }
  Ok(result)
}

/// Fiber integral of the dual flux, in generators of `H²(B)`.
pub fn integrate_dual_flux(result: &TDualResult) -> Result<IntVector> {
  let base = &result.dual_model.base;
  let (_, psi) = result.dual_flux.split_at(base.rank(3));
  cohomology_or_zero(base, 2)?.coordinates_or_empty(psi)
}

impl TDualResult {
  /// Lattice in `H³(Ê)` coordinates spanned by the ambiguity and the torsion relations.
  pub fn ambiguity_lattice(&self) -> Lattice {
    Lattice::spanned_by(self.dual_h3.len(), self.ambiguity.iter().cloned()).join(&self.dual_h3.relations())
  }

  /// The dual flux as a triple on the dual bundle.
  pub fn dual_triple(&self) -> TDualityTriple {
    TDualityTriple { model: self.dual_model.clone(), flux_rep: self.dual_flux.clone() }
  }
}

/// Canonical coset representative of the dual flux modulo the ambiguity.
///
/// The lattice is kept in Hermite normal form; each pivot coordinate is reduced
/// into `[0, pivot)`, which picks one representative per coset.
pub fn canonical_flux_rep(result: &TDualResult) -> IntVector {
  result.ambiguity_lattice().reduce(&result.dual_flux_class)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleDualReport {
  pub euler: Vec<String>,
  pub double_dual_euler: Vec<String>,
  pub euler_matches: bool,
  /// `None` when the twice-dualized bundle has a different cochain model.
  pub flux_matches: Option<bool>,
  pub note: String,
}

impl DoubleDualReport {
  pub fn passed(&self) -> bool {
    self.euler_matches && self.flux_matches.unwrap_or(false)
  }
}

/// Dualizes twice and compares with the input: Euler classes exactly, fluxes
/// modulo the ambiguity of the second step.
pub fn double_dual_check(triple: &TDualityTriple) -> Result<DoubleDualReport> {
  let first = dualize(triple)?;
  let second = dualize(&first.dual_triple())?;
  let euler = triple.model.euler_class()?;
  let euler_matches = second.dual_euler == euler;
  let same_model =
    second.dual_model.euler_rep == triple.model.euler_rep && second.dual_model.mu == triple.model.mu;
  let (flux_matches, note) = if same_model {
    let original = triple.flux_class()?;
    let diff: IntVector = original.iter().zip(&second.dual_flux_class).map(|(a, b)| a - b).collect();
    let ok = second.ambiguity_lattice().contains(&diff);
    (
      Some(ok),
      if ok { "flux agrees modulo ambiguity".into() } else { "flux differs outside the ambiguity".into() },
    )
  } else {
    (None, "double dual uses a different Euler cocycle; flux not compared".into())
  };
  Ok(DoubleDualReport {
    euler: euler.iter().map(ToString::to_string).collect(),
    double_dual_euler: second.dual_euler.iter().map(ToString::to_string).collect(),
    euler_matches,
    flux_matches,
    note,
  })
}

/// Serializable summary of a dualization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualizeReport {
  pub provenance: String,
  pub sign_convention: String,
  pub euler: Vec<String>,
  pub dual_euler: Vec<String>,
  pub dual_h3: String,
  pub dual_flux: Vec<String>,
  pub canonical_flux: Vec<String>,
  pub ambiguity: Vec<Vec<String>>,
  pub certificate: SolvabilityCertificate,
  pub fiber_integral_matches_euler: bool,
}

impl TDualResult {
  pub fn report(&self) -> DualizeReport {
    let s = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    DualizeReport {
      provenance: self.dual_model.provenance().into(),
      sign_convention: SIGN_CONVENTION.into(),
      euler: s(&self.euler),
      dual_euler: s(&self.dual_euler),
      dual_h3: self.dual_h3.profile().to_string(),
      dual_flux: s(&self.dual_flux_class),
      canonical_flux: s(&canonical_flux_rep(self)),
      ambiguity: self.ambiguity.iter().map(|v| s(v)).collect(),
      certificate: self.certificate.clone(),
      fiber_integral_matches_euler: integrate_dual_flux(self).is_ok_and(|v| v == self.euler),
    }
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::catalog;
  use crate::chain::int_vec;

  fn cp_triple(n: u64, k: i64) -> TDualityTriple {
    let m = catalog::cp(n);
    let model = EulerModel::from_labels(m.complex, m.cup, &[(BigInt::from(k), "u".into())]).unwrap();
    let t = total_space(&model).unwrap();
    TDualityTriple::new(model, vec![BigInt::zero(); t.total.rank(3)]).unwrap()
  }

  fn torus_triple(j: i64) -> TDualityTriple {
    let m = catalog::torus2();
    let model = EulerModel::trivial(m.complex.clone(), m.cup).unwrap();
    let vol = cohomology(&m.complex, 2).unwrap().generators[0].clone();
    let flux: IntVector = vol.iter().map(|x| x * j).collect();
    TDualityTriple::new(model, flux).unwrap()
  }

  #[test]
  fn zero_flux_has_zero_dual_euler() {
    assert_eq!(push_flux(&cp_triple(2, 3)).unwrap(), int_vec([0]));
  }

  #[test]
  fn torus_flux_pushes_to_volume() {
    for j in [1, 4, -2] {
      assert_eq!(push_flux(&torus_triple(j)).unwrap(), int_vec([j]));
    }
  }

  #[test]
  fn non_cocycle_flux_rejected() {
    let m = catalog::cp(1);
    let model = EulerModel::from_labels(m.complex, m.cup, &[(BigInt::from(2), "u".into())]).unwrap();
    // T³ = B³ ⊕ B², and (0, u) has D = (-2u·u, 0) = 0 in CP¹; use CP² instead
    assert!(TDualityTriple::new(model, int_vec([1])).is_ok());
    let m = catalog::cp(2);
    let model = EulerModel::from_labels(m.complex, m.cup, &[(BigInt::from(2), "u".into())]).unwrap();
    assert!(matches!(TDualityTriple::new(model, int_vec([1])), Err(Error::NotACocycle { degree: 3, .. })));
  }

  #[test]
  fn kk_monopole_dualizes_to_k_units() {
    for n in 1..=3 {
      for k in 1..=5 {
        let r = dualize(&cp_triple(n, k)).unwrap();
        assert_eq!(r.dual_euler, int_vec([0]));
        assert_eq!(r.dual_h3.profile().to_string(), "Z");
        assert_eq!(canonical_flux_rep(&r), int_vec([k]));
      }
    }
  }

  #[test]
  fn torus_dual_flux_is_ambiguous_zero() {
    let r = dualize(&torus_triple(3)).unwrap();
    assert_eq!(r.dual_euler, int_vec([3]));
    assert!(canonical_flux_rep(&r).iter().all(Zero::is_zero));
  }

  #[test]
  fn trivial_triple_is_fixed() {
    let s = catalog::sphere2();
    let model = EulerModel::trivial(s.complex, s.cup).unwrap();
    let t = total_space(&model).unwrap();
    let triple = TDualityTriple::new(model, vec![BigInt::zero(); t.total.rank(3)]).unwrap();
    let r = dualize(&triple).unwrap();
    assert!(r.dual_euler.iter().all(Zero::is_zero));
    assert!(canonical_flux_rep(&r).iter().all(Zero::is_zero));
    assert!(double_dual_check(&triple).unwrap().passed());
  }

  #[test]
  fn double_dual_examples() {
    let rep = double_dual_check(&cp_triple(2, 3)).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.double_dual_euler, ["3"]);
    assert!(double_dual_check(&torus_triple(2)).unwrap().passed());
  }

  #[test]
  fn canonical_rep_is_coset_invariant() {
    let r = dualize(&torus_triple(1)).unwrap();
    let lattice = r.ambiguity_lattice();
    let mut shifted = r.clone();
    for g in &r.ambiguity {
      shifted.dual_flux_class = shifted.dual_flux_class.iter().zip(g).map(|(a, b)| a + b * 7).collect();
    }
    assert_eq!(canonical_flux_rep(&shifted), canonical_flux_rep(&r));
    assert!(lattice.rank() <= r.dual_h3.len());
  }

  #[test]
  fn report_records_convention() {
    let rep = dualize(&cp_triple(2, 2)).unwrap().report();
    assert!(rep.fiber_integral_matches_euler);
    assert_eq!(rep.canonical_flux, ["2"]);
    assert!(rep.sign_convention.contains("(-1)^n"));
  }
}
