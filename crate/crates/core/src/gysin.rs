//! Cochain model of the total space of a principal circle bundle and its
//! cohomology Gysin sequence.
//!
//! For a base complex `B` and a degree-2 operator `μ = e ⌣ ·`, the total space
//! is modelled by `Tⁿ = Bⁿ ⊕ Bⁿ⁻¹` with
//!
//! ```text
//! D(φ, ψ) = (δφ + (-1)ⁿ μ(ψ), δψ)        (φ, ψ) ∈ Tⁿ
//! ```
//!
//! so `0 → B → T → B[-1] → 0` is exact and its connecting map
//! `Hⁿ⁻¹(B) → Hⁿ⁺¹(B)` is `(-1)ⁿ (e ⌣ ·)`. Pullback is `φ ↦ (φ, 0)` and fiber
//! integration is `(φ, ψ) ↦ ψ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chain::exact::map_or_zero;
use crate::chain::{
  cohomology, cohomology::zero_group, CochainMap, CohomologyGroup, GradedComplex, GroupSequence, IntMatrix,
  IntVector, NodeCheck,
};
use crate::cup::{CupEntry, CupStructure, Realization};
use crate::error::{Error, Result};

/// Human-readable statement of the sign conventions, printed in every report.
pub const SIGN_CONVENTION: &str = "D(phi,psi) = (d phi + (-1)^n e*psi, d psi); pullback phi -> (phi,0); \
   fiber integration (phi,psi) -> psi; connecting map H^(n-1)(B) -> H^(n+1)(B) is (-1)^n e*";

/// Base complex, Euler cocycle and its cup operator, plus the cup structure
/// used to realize further degree-2 classes on the same base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerModel {
  pub base: GradedComplex,
  pub euler_rep: IntVector,
  pub mu: CochainMap,
  pub cup: CupStructure,
}

impl EulerModel {
  pub fn from_realization(base: GradedComplex, cup: CupStructure, r: Realization) -> Result<Self> {
    let m = Self { base, euler_rep: r.cocycle, mu: r.operator, cup };
    m.check()?;
    Ok(m)
  }

  /// Euler class given as a 2-cocycle; realized through `cup`.
  pub fn from_cocycle(base: GradedComplex, cup: CupStructure, z: &[BigInt]) -> Result<Self> {
    let r = cup.realize(&base, z)?;
    Self::from_realization(base, cup, r)
  }

  /// Euler class given as an integer combination of declared labels.
  pub fn from_labels(base: GradedComplex, cup: CupStructure, terms: &[(BigInt, String)]) -> Result<Self> {
    let r = cup.combination(&base, terms)?;
    Self::from_realization(base, cup, r)
  }

  /// Explicit algebraic data. The cup structure records only this class, as `e`.
  pub fn algebraic(base: GradedComplex, euler_rep: IntVector, mu: CochainMap) -> Result<Self> {
    let cup = CupStructure::Table(vec![CupEntry {
      label: "e".into(),
      cocycle: euler_rep.clone(),
      operator: mu.clone(),
    }]);
    let m = Self { base, euler_rep, mu, cup };
    m.check()?;
    Ok(m)
  }

  /// Trivial bundle over `base`.
  pub fn trivial(base: GradedComplex, cup: CupStructure) -> Result<Self> {
    let z = vec![BigInt::zero(); base.rank(2)];
    Self::from_cocycle(base, cup, &z)
  }

  pub fn provenance(&self) -> &'static str {
    self.cup.provenance()
  }

  /// `δe = 0`, `μ` has degree 2 and commutes with `δ`.
  pub fn check(&self) -> Result<()> {
    self.base.ensure_valid()?;
    if self.euler_rep.len() != self.base.rank(2) {
      return Err(Error::DimensionMismatch(format!(
        "Euler cochain of length {} but the base has rank {} in degree 2",
        self.euler_rep.len(),
        self.base.rank(2)
      )));
    }
    let de = self.base.delta(2).mul_vec(&self.euler_rep)?;
    if let Some(entry) = de.iter().position(|x| !x.is_zero()) {
      return Err(Error::NotACocycle { degree: 2, entry });
    }
    if self.mu.degree() != 2 {
      return Err(Error::BadParams("the Euler operator must have degree 2".into()));
    }
    self.mu.ensure_chain_map(&self.base, &self.base)
  }

  /// Class of the Euler cocycle in `H²(B)` coordinates.
  /// `[e]` in the generators of `H²(B)`; empty when the base stops below degree 2.
  pub fn euler_class(&self) -> Result<IntVector> {
    if self.base.top_degree() < 2 {
      return Ok(Vec::new());
    }
    cohomology(&self.base, 2)?.coordinates(&self.euler_rep)
  }

  pub fn total_space(&self) -> Result<TotalSpaceModel> {
    total_space(self)
  }
}

/// The twisted complex `T` together with its structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalSpaceModel {
  pub total: GradedComplex,
  /// `B → T`, degree 0.
  pub pullback_incl: CochainMap,
  /// `T → B`, degree −1.
  pub fiber_proj: CochainMap,
}

pub fn total_space(model: &EulerModel) -> Result<TotalSpaceModel> {
  model.check()?;
  let b = &model.base;
  let top = b.top_degree() + 1;
  let ranks: Vec<usize> = (0..=top as i64).map(|n| b.rank(n) + b.rank(n - 1)).collect();
  let deltas = (0..top as i64)
    .map(|n| {
      let mut m = IntMatrix::zeros(ranks[n as usize + 1], ranks[n as usize]);
      let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
      m.set_block(0, 0, &b.delta(n));
      m.set_block(0, b.rank(n), &model.mu.block(n - 1, b, b).scale(&sign));
      m.set_block(b.rank(n + 1), b.rank(n), &b.delta(n - 1));
      m
    })
    .collect();
  let total = GradedComplex::new(ranks, deltas)?;
  total.ensure_valid().map_err(|e| Error::Invariant(format!("twisted complex: {e}")))?;

  let pullback_blocks = (0..=b.top_degree() as i64)
    .map(|n| {
      let mut m = IntMatrix::zeros(total.rank(n), b.rank(n));
      m.set_block(0, 0, &IntMatrix::identity(b.rank(n)));
      m
    })
    .collect();
  let pullback_incl = CochainMap::new(b, &total, 0, pullback_blocks)?;

  let proj_blocks = (0..=top as i64)
    .map(|n| {
      let mut m = IntMatrix::zeros(b.rank(n - 1), total.rank(n));
      m.set_block(0, b.rank(n), &IntMatrix::identity(b.rank(n - 1)));
      m
    })
    .collect();
  let fiber_proj = CochainMap::new(&total, b, -1, proj_blocks)?;

  for (name, violation) in [
    ("pullback", pullback_incl.chain_map_violation(b, &total)),
    ("fiber projection", fiber_proj.chain_map_violation(&total, b)),
  ] {
    if let Some(d) = violation {
      return Err(Error::Invariant(format!("{name} is not a chain map at degree {d}")));
    }
  }
  Ok(TotalSpaceModel { total, pullback_incl, fiber_proj })
}

impl TotalSpaceModel {
  pub fn cohomology(&self, n: usize) -> Result<CohomologyGroup> {
    cohomology(&self.total, n)
  }

  /// Total-space cochain `(φ, ψ)` assembled from its two components.
  pub fn cochain(&self, base: &GradedComplex, n: usize, phi: &[BigInt], psi: &[BigInt]) -> Result<IntVector> {
    if phi.len() != base.rank(n as i64) || psi.len() != base.rank(n as i64 - 1) {
      return Err(Error::DimensionMismatch(format!("components do not fit T^{n}")));
    }
    Ok(phi.iter().chain(psi).cloned().collect())
  }

  /// Splits a total-space cochain into `(φ, ψ)`.
  pub fn split<'a>(&self, base: &GradedComplex, n: usize, v: &'a [BigInt]) -> (&'a [BigInt], &'a [BigInt]) {
    v.split_at(base.rank(n as i64))
  }
}

fn check_degree(n: i64, max: i64) -> Result<()> {
  if n < 0 || n > max {
    Err(Error::DegreeOutOfRange { degree: n, max })
  } else {
    Ok(())
  }
}

/// `q* : Hⁿ(B) → Hⁿ(E)` on generator coordinates.
pub fn pullback(model: &EulerModel, n: usize, class: &[BigInt]) -> Result<IntVector> {
  check_degree(n as i64, model.base.top_degree() as i64)?;
  let t = total_space(model)?;
  let hb = cohomology(&model.base, n)?;
  if class.len() != hb.len() {
    return Err(Error::DimensionMismatch(format!("H^{n}(B) has {} coordinates", hb.len())));
  }
  let z = hb.representative(class);
  let image = t.pullback_incl.apply(n, &z)?;
  t.cohomology(n)?.coordinates(&image)
}

/// `Hⁿ(E) → Hⁿ⁻¹(B)`, `(φ, ψ) ↦ ψ`.
pub fn fiber_integration(model: &EulerModel, n: usize, class: &[BigInt]) -> Result<IntVector> {
  let t = total_space(model)?;
  check_degree(n as i64, t.total.top_degree() as i64)?;
  let he = t.cohomology(n)?;
  if class.len() != he.len() {
    return Err(Error::DimensionMismatch(format!("H^{n}(E) has {} coordinates", he.len())));
  }
  if n == 0 {
    return Ok(Vec::new());
  }
  let z = he.representative(class);
  let image = t.fiber_proj.apply(n, &z)?;
  cohomology(&model.base, n - 1)?.coordinates(&image)
}

/// The sequence `… → Hⁿ(B) → Hⁿ(E) → Hⁿ⁻¹(B) → Hⁿ⁺¹(B) → …` with exactness checks.
#[derive(Clone, Debug)]
pub struct GysinSequence {
  pub max_degree: usize,
  pub connecting_sign: &'static str,
  pub sequence: GroupSequence,
  pub checks: Vec<NodeCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GysinReport {
  pub max_degree: usize,
  pub connecting_sign: String,
  pub nodes: Vec<NodeCheck>,
  pub exact: bool,
}

impl GysinSequence {
  pub fn all_exact(&self) -> bool {
    self.checks.iter().all(|c| c.exact)
  }

  pub fn report(&self) -> GysinReport {
    GysinReport {
      max_degree: self.max_degree,
      connecting_sign: self.connecting_sign.into(),
      nodes: self.checks.clone(),
      exact: self.all_exact(),
    }
  }
}

/// Builds the Gysin sequence through `Hⁿ(E)` for `n ≤ max_degree` and checks
/// exactness at every interior node.
pub fn gysin_sequence(model: &EulerModel, max_degree: usize) -> Result<GysinSequence> {
  let t = total_space(model)?;
  let b = &model.base;
  check_degree(max_degree as i64, t.total.top_degree() as i64)?;

  let hb: Vec<CohomologyGroup> = (0..=b.top_degree()).map(|n| cohomology(b, n)).collect::<Result<_>>()?;
  let he: Vec<CohomologyGroup> =
    (0..=t.total.top_degree()).map(|n| cohomology(&t.total, n)).collect::<Result<_>>()?;
  let base_group = |n: i64| -> CohomologyGroup {
    if n < 0 {
      zero_group(0)
    } else {
      hb.get(n as usize).cloned().unwrap_or_else(|| zero_group(n as usize))
    }
  };

  let mut labels = vec!["H^-2(B)".to_string()];
  let mut groups = vec![zero_group(0)];
  let mut maps = Vec::new();
  for n in 0..=max_degree as i64 {
    let prev = groups.last().unwrap().clone();
    let (bn, en, bm) = (base_group(n), he[n as usize].clone(), base_group(n - 1));
    // connecting map into H^n(B) comes from H^{n-2}(B), sign (-1)^{n-1}
    let sign = if (n - 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    maps.push(map_or_zero(&model.mu.scale(&sign), b, b, &prev, &bn, n - 2)?);
    maps.push(map_or_zero(&t.pullback_incl, b, &t.total, &bn, &en, n)?);
    maps.push(map_or_zero(&t.fiber_proj, &t.total, b, &en, &bm, n)?);
    labels.extend([format!("H^{n}(B)"), format!("H^{n}(E)"), format!("H^{}(B)", n - 1)]);
    groups.extend([bn, en, bm]);
  }
  let n = max_degree as i64 + 1;
  let prev = groups.last().unwrap().clone();
  let bn = base_group(n);
  let sign = if (n - 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
  maps.push(map_or_zero(&model.mu.scale(&sign), b, b, &prev, &bn, n - 2)?);
  labels.push(format!("H^{n}(B)"));
  groups.push(bn);

  let sequence = GroupSequence { labels, groups, maps };
  let checks = sequence.check();
  Ok(GysinSequence {
    max_degree,
    connecting_sign: "(-1)^n (e cup) : H^(n-1)(B) -> H^(n+1)(B)",
    sequence,
    checks,
  })
}
