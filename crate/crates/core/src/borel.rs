//! Truncated Borel constructions of semi-free circle actions and their
//! T-duals.
//!
//! `ES¹` is replaced by `S^{2N+1}`, so every Borel base is a finite model and
//! every statement holds in degrees `≤ 2N−1`. Fixed points contribute copies of
//! `CPᴺ`; free parts contribute their honest quotients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::catalog;
use crate::chain::{
  cohomology, cone_sequence, mapping_cone, tensor_product, CochainMap, GradedComplex, GroupProfile,
  IntMatrix, MappingCone, NodeCheck,
};
use crate::cup::{CupEntry, CupStructure};
use crate::error::{Error, Result};
use crate::gysin::{total_space, EulerModel};
use crate::tdual::{
  canonical_flux_rep, cohomology_or_zero, dualize, DualizeReport, TDualResult, TDualityTriple,
};

/// The kinds of semi-free circle spaces the engine knows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceKind {
  /// A point with the trivial action.
  PointFixed,
  /// A single Kaluza–Klein monopole of charge `k`.
  Monopole(u64),
  /// `S³` with the free Hopf action.
  FreeHopf,
  /// Finitely many monopoles; the quotient of the free part is `R³` minus points.
  MultiMonopole(Vec<u64>),
  /// A free action given directly by its quotient bundle.
  FreeBundle(Box<EulerModel>),
}

impl fmt::Display for SpaceKind {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      SpaceKind::PointFixed => write!(f, "point_fixed"),
      SpaceKind::Monopole(k) => write!(f, "monopole({k})"),
      SpaceKind::FreeHopf => write!(f, "free_hopf"),
      SpaceKind::MultiMonopole(ks) => {
        let ks: Vec<String> = ks.iter().map(ToString::to_string).collect();
        write!(f, "multi_monopole({})", ks.join(","))
      }
      SpaceKind::FreeBundle(_) => write!(f, "free_bundle"),
    }
  }
}

/// A semi-free space with optional flux, given as coordinates in `H³` of the
/// total-space model of its Borel bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiFreeSpace {
  pub kind: SpaceKind,
  pub flux: Option<Vec<BigInt>>,
}

impl SemiFreeSpace {
  pub fn new(kind: SpaceKind, flux: Option<Vec<BigInt>>) -> Result<Self> {
    match &kind {
      SpaceKind::Monopole(0) => return Err(Error::BadParams("monopole charge must be positive".into())),
      SpaceKind::MultiMonopole(ks) if ks.is_empty() => {
        return Err(Error::BadParams("multi_monopole needs at least one charge".into()))
      }
      SpaceKind::MultiMonopole(ks) if ks.contains(&0) => {
        return Err(Error::BadParams("monopole charges must be positive".into()))
      }
      _ => {}
    }
    Ok(Self { kind, flux })
  }

  pub fn plain(kind: SpaceKind) -> Result<Self> {
    Self::new(kind, None)
  }
}

/// The circle bundle `E × S^{2N+1} → E ×_{S¹} S^{2N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelBundle {
  pub truncation: u64,
  pub euler_s1: EulerModel,
}

impl BorelBundle {
  pub fn base_model(&self) -> &GradedComplex {
    &self.euler_s1.base
  }

  /// Highest degree in which the truncated model agrees with the limit.
  pub fn valid_through(&self) -> u64 {
    2 * self.truncation - 1
  }
}

fn check_truncation(n: u64) -> Result<()> {
  if n == 0 {
    Err(Error::BadParams("truncation N must be at least 1".into()))
  } else {
    Ok(())
  }
}

pub fn truncated_borel(space: &SemiFreeSpace, n: u64) -> Result<BorelBundle> {
  check_truncation(n)?;
  let euler_s1 = match &space.kind {
    SpaceKind::PointFixed => cp_bundle(n, 1)?,
    SpaceKind::Monopole(k) => cp_bundle(n, *k)?,
    SpaceKind::FreeHopf => {
      let s = catalog::sphere2();
      EulerModel::from_labels(s.complex, s.cup, &[(BigInt::one(), "u".into())])?
    }
    SpaceKind::MultiMonopole(ks) => multi_monopole_bundle(ks, n)?,
    SpaceKind::FreeBundle(model) => (**model).clone(),
  };
  Ok(BorelBundle { truncation: n, euler_s1 })
}

fn cp_bundle(n: u64, k: u64) -> Result<EulerModel> {
  let m = catalog::cp(n);
  EulerModel::from_labels(m.complex, m.cup, &[(BigInt::from(k), "u".into())])
}

/// Glued complex with the structure maps of the cover.
#[derive(Clone, Debug)]
pub struct MvGluing {
  pub cone: MappingCone,
  /// `[r_A | −r_B] : A ⊕ B → O`.
  pub map: CochainMap,
  pub pieces: GradedComplex,
  pub overlap: GradedComplex,
}

impl MvGluing {
  pub fn complex(&self) -> &GradedComplex {
    &self.cone.complex
  }

  /// Exactness of `… → H^{n-1}(O) → H^n(A ∪ B) → H^n(A) ⊕ H^n(B) → H^n(O) → …`.
  pub fn exactness(&self) -> Result<Vec<NodeCheck>> {
    Ok(cone_sequence(&self.cone, &self.map, &self.pieces, &self.overlap)?.check())
  }
}

/// Cochain model of `A ∪ B` from restrictions `r_A : A → O` and `r_B : B → O`
/// to the overlap: the cone of `[r_A | −r_B]`.
pub fn mayer_vietoris_glue(
  a: &GradedComplex,
  b: &GradedComplex,
  o: &GradedComplex,
  ra: &CochainMap,
  rb: &CochainMap,
) -> Result<MvGluing> {
  if ra.degree() != 0 || rb.degree() != 0 {
    return Err(Error::BadParams("restriction maps must have degree 0".into()));
  }
  ra.ensure_chain_map(a, o)?;
  rb.ensure_chain_map(b, o)?;
  let pieces = a.direct_sum(b);
  let map = ra.join_sources(&rb.scale(&-BigInt::one()), a, b, o);
  let cone = mapping_cone(&map, &pieces, o)?;
  Ok(MvGluing { cone, map, pieces, overlap: o.clone() })
}

fn direct_sum_all(cs: &[GradedComplex]) -> GradedComplex {
  cs.iter().skip(1).fold(cs[0].clone(), |acc, c| acc.direct_sum(c))
}

fn direct_sum_maps(fs: &[(CochainMap, GradedComplex, GradedComplex)]) -> CochainMap {
  let (mut f, mut src, mut tgt) = fs[0].clone();
  for (g, s, t) in &fs[1..] {
    f = f.direct_sum(g, (&src, s), (&tgt, t));
    src = src.direct_sum(s);
    tgt = tgt.direct_sum(t);
  }
  f
}

/// Borel base of `m` monopoles, glued from `m` copies of `CPᴺ` (fixed points)
/// and the wedge `R³ ∖ {m points}` (free part) over `m` spheres. Its cup table
/// declares `uᵢ`, the class restricting to `u` on the `i`-th copy and to the
/// `i`-th wedge sphere on the free part.
pub fn multi_monopole_base(m: usize, n: u64) -> Result<(MvGluing, CupStructure)> {
  let cp = catalog::cp_complex(n);
  let s2 = catalog::cp_complex(1);
  let a = direct_sum_all(&vec![cp.clone(); m]);
  let (b, b_cup) = catalog::sphere_wedge(m);
  let (o, o_cup) = catalog::disjoint_spheres(m);
  let ra = direct_sum_maps(&vec![(catalog::cp_to_sphere(n), cp.clone(), s2.clone()); m]);
  let rb = catalog::wedge_to_spheres(m);
  let glue = mayer_vietoris_glue(&a, &b, &o, &ra, &rb)?;

  let u_op = match catalog::cp(n).cup {
    CupStructure::Table(t) => t[0].operator.clone(),
    CupStructure::Simplicial { .. } => unreachable!("cp is algebraic"),
  };
  let zero_op = CochainMap::zero(&cp, &cp, 2);
  let cone = glue.complex().clone();
  let entries = (0..m)
    .map(|i| {
      let parts: Vec<_> = (0..m)
        .map(|j| (if i == j { u_op.clone() } else { zero_op.clone() }, cp.clone(), cp.clone()))
        .collect();
      let mu_a = direct_sum_maps(&parts);
      let label = format!("a{}", i + 1);
      let mu_b = &b_cup.entry(&label).expect("wedge label").operator;
      let mu_x = mu_a.direct_sum(mu_b, (&a, &b), (&a, &b));
      let mu_o = &o_cup.entry(&format!("g{}", i + 1)).expect("sphere label").operator;
      let operator = crate::chain::cone_operator(&cone, &glue.map, (&glue.pieces, &mu_x), (&o, mu_o))?;
      // u on copy i, a_i on the wedge, nothing on the overlap
      let mut cocycle = vec![BigInt::zero(); cone.rank(2)];
      cocycle[i] = BigInt::one();
      cocycle[m + i] = BigInt::one();
      Ok(CupEntry { label: format!("u{}", i + 1), cocycle, operator })
    })
    .collect::<Result<Vec<_>>>()?;
  let cup = CupStructure::Table(entries);
  cup.validate(&cone)?;
  Ok((glue, cup))
}

fn multi_monopole_bundle(charges: &[u64], n: u64) -> Result<EulerModel> {
  let (glue, cup) = multi_monopole_base(charges.len(), n)?;
  let terms: Vec<(BigInt, String)> =
    charges.iter().enumerate().map(|(i, &k)| (BigInt::from(k), format!("u{}", i + 1))).collect();
  EulerModel::from_labels(glue.complex().clone(), cup, &terms)
}

/// Which classifying-space route produced a dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
  MathaiWu,
  Bunke,
}

impl fmt::Display for Route {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(match self {
      Route::MathaiWu => "mathai-wu",
      Route::Bunke => "bunke",
    })
  }
}

/// A dual together with the truncation it was computed at.
#[derive(Clone, Debug)]
pub struct BorelDual {
  pub kind: String,
  pub route: Route,
  pub bundle: BorelBundle,
  pub result: TDualResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BorelReport {
  pub kind: String,
  pub route: Route,
  pub truncation: u64,
  pub window: String,
  pub base: Vec<GroupProfile>,
  pub total_h2: GroupProfile,
  pub dual_total_h2: GroupProfile,
  pub dual: DualizeReport,
}

impl BorelDual {
  pub fn canonical_flux(&self) -> Vec<BigInt> {
    canonical_flux_rep(&self.result)
  }

  pub fn report(&self) -> Result<BorelReport> {
    let base = &self.bundle.euler_s1.base;
    let window = self.bundle.valid_through();
    let base_groups = (0..=(window as usize).min(base.top_degree()))
      .map(|d| Ok(cohomology(base, d)?.profile()))
      .collect::<Result<Vec<_>>>()?;
    let total = total_space(&self.bundle.euler_s1)?;
    let dual_total = total_space(&self.result.dual_model)?;
    Ok(BorelReport {
      kind: self.kind.clone(),
      route: self.route,
      truncation: self.bundle.truncation,
      window: format!("valid in degrees <= {window} (2N-1, N = {})", self.bundle.truncation),
      base: base_groups,
      total_h2: cohomology_or_zero(&total.total, 2)?.profile(),
      dual_total_h2: cohomology_or_zero(&dual_total.total, 2)?.profile(),
      dual: self.result.report(),
    })
  }
}

fn dualize_bundle(space: &SemiFreeSpace, bundle: BorelBundle, route: Route) -> Result<BorelDual> {
  let triple = match &space.flux {
    Some(coords) => TDualityTriple::from_class(bundle.euler_s1.clone(), coords)?,
    None => {
      let t = total_space(&bundle.euler_s1)?;
      TDualityTriple::new(bundle.euler_s1.clone(), vec![BigInt::zero(); t.total.rank(3)])?
    }
  };
  let result = dualize(&triple)?;
  Ok(BorelDual { kind: space.kind.to_string(), route, bundle, result })
}

/// Dualizes the Borel bundle of `space` with its flux (zero when absent).
pub fn mathai_wu_dual(space: &SemiFreeSpace, n: u64) -> Result<BorelDual> {
  let bundle = truncated_borel(space, n)?;
  dualize_bundle(space, bundle, Route::MathaiWu)
}

/// The simplicial-space route: the bundle is recovered from the map of
/// classifying spaces `BZ_k → BS¹` (the fixed point's `Y × BZ_k → Y × BS¹`
/// with `Y` a point) as the positive generator of the kernel of pullback on
/// `H²`, then dualized.
pub fn bunke_route_dual(space: &SemiFreeSpace, n: u64) -> Result<BorelDual> {
  check_truncation(n)?;
  let k = match &space.kind {
    SpaceKind::PointFixed => 1,
    SpaceKind::Monopole(k) => *k,
    SpaceKind::FreeHopf => {
      let bundle = truncated_borel(space, n)?;
      return dualize_bundle(space, bundle, Route::Bunke);
    }
    other => return Err(Error::Unsupported(format!("no simplicial-space route for {other}"))),
  };
  let y = GradedComplex::point();
  let base = tensor_product(&y, &catalog::cp_complex(n));
  let total = tensor_product(&y, &catalog::lens_complex(k, n));
  let blocks = (0..=base.top_degree() as i64)
    .map(|d| {
      let (rows, cols) = (total.rank(d), base.rank(d));
      if d % 2 == 0 {
        IntMatrix::identity(cols)
      } else {
        IntMatrix::zeros(rows, cols)
      }
    })
    .collect();
  let p = CochainMap::checked(&base, &total, 0, blocks)?;

  let h2b = cohomology(&base, 2)?;
  let h2e = cohomology(&total, 2)?;
  let pullback = crate::chain::induced_map(&p, &base, &total, &h2b, &h2e)?;
  // H²(B) = Z; the kernel of Z → H²(E) is generated by the least positive multiple mapping to 0
  let order = h2e.relations();
  let image = pullback.column(0);
  let mut m = BigInt::one();
  while !order.contains(&image.iter().map(|x| x * &m).collect::<Vec<_>>()) {
    m += 1;
    if m > BigInt::from(k) {
      return Err(Error::Invariant("pullback kernel not found".into()));
    }
  }
  let euler = h2b.representative(&[m]);
  let cup = catalog::cp(n).cup;
  let euler_s1 = EulerModel::from_cocycle(base, cup, &euler)?;
  dualize_bundle(space, BorelBundle { truncation: n, euler_s1 }, Route::Bunke)
}

/// `mathai_wu_dual` for `m` monopoles of the given charges.
pub fn multi_monopole_dual(charges: &[u64], n: u64) -> Result<BorelDual> {
  mathai_wu_dual(&SemiFreeSpace::plain(SpaceKind::MultiMonopole(charges.to_vec()))?, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityRow {
  pub object: &'static str,
  pub degree: usize,
  pub at_n: GroupProfile,
  pub at_next: GroupProfile,
  pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
  pub kind: String,
  pub truncation: u64,
  pub max_degree: usize,
  pub rows: Vec<StabilityRow>,
  pub stable: bool,
}

/// Compares base and total-space cohomology at `N` and `N+1` in degrees `≤ D`.
pub fn stability_check(space: &SemiFreeSpace, n: u64, max_degree: usize) -> Result<StabilityReport> {
  check_truncation(n)?;
  if max_degree as u64 > 2 * n - 1 {
    return Err(Error::DegreeOutOfRange { degree: max_degree as i64, max: 2 * n as i64 - 1 });
  }
  let lo = truncated_borel(space, n)?;
  let hi = truncated_borel(space, n + 1)?;
  let (tlo, thi) = (total_space(&lo.euler_s1)?, total_space(&hi.euler_s1)?);
  let mut rows = Vec::new();
  for (object, a, b) in [("base", lo.base_model(), hi.base_model()), ("total", &tlo.total, &thi.total)] {
    for d in 0..=max_degree {
      let at_n = cohomology_or_zero(a, d)?.profile();
      let at_next = cohomology_or_zero(b, d)?.profile();
      let equal = at_n == at_next;
      rows.push(StabilityRow { object, degree: d, at_n, at_next, equal });
    }
  }
  let stable = rows.iter().all(|r| r.equal);
  Ok(StabilityReport { kind: space.kind.to_string(), truncation: n, max_degree, rows, stable })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::chain::{cohomology_all, int_vec};

  fn profiles(c: &GradedComplex) -> Vec<String> {
    cohomology_all(c).unwrap().iter().map(|h| h.profile().to_string()).collect()
  }

  fn space(kind: SpaceKind) -> SemiFreeSpace {
    SemiFreeSpace::plain(kind).unwrap()
  }

  #[test]
  fn rejects_bad_spaces() {
    assert!(SemiFreeSpace::plain(SpaceKind::Monopole(0)).is_err());
    assert!(SemiFreeSpace::plain(SpaceKind::MultiMonopole(vec![])).is_err());
    assert!(SemiFreeSpace::plain(SpaceKind::MultiMonopole(vec![1, 0])).is_err());
    assert!(truncated_borel(&space(SpaceKind::PointFixed), 0).is_err());
  }

  #[test]
  fn closed_forms() {
    let b = truncated_borel(&space(SpaceKind::PointFixed), 3).unwrap();
    assert_eq!(b.base_model(), &catalog::cp_complex(3));
    assert_eq!(b.euler_s1.euler_class().unwrap(), int_vec([1]));
    let b = truncated_borel(&space(SpaceKind::Monopole(4)), 2).unwrap();
    assert_eq!(b.euler_s1.euler_class().unwrap(), int_vec([4]));
    let t = total_space(&b.euler_s1).unwrap();
    assert_eq!(profiles(&t.total), profiles(&catalog::lens_complex(4, 2)));
    let b = truncated_borel(&space(SpaceKind::FreeHopf), 5).unwrap();
    assert_eq!(profiles(b.base_model()), ["Z", "0", "Z"]);
  }

  #[test]
  fn glue_two_disks_is_sphere() {
    let p = GradedComplex::point();
    let circle = catalog::circle_algebraic();
    let unit = CochainMap::new(&p, &circle, 0, vec![IntMatrix::identity(1)]).unwrap();
    let g = mayer_vietoris_glue(&p, &p, &circle, &unit, &unit).unwrap();
    assert_eq!(profiles(g.complex()), ["Z", "0", "Z"]);
    assert!(g.exactness().unwrap().iter().all(|c| c.exact));
  }

  #[test]
  fn glue_over_empty_is_disjoint_union() {
    let p = GradedComplex::point();
    let empty = GradedComplex::empty();
    let z = CochainMap::zero(&p, &empty, 0);
    let g = mayer_vietoris_glue(&p, &p, &empty, &z, &z).unwrap();
    assert_eq!(cohomology(g.complex(), 0).unwrap().profile().to_string(), "Z^2");
  }

  #[test]
  fn glue_rejects_non_chain_maps() {
    let lens = catalog::lens_complex(3, 1);
    let p = GradedComplex::point();
    // degree-1 entry 1 into a rank-1 odd degree; δ∘f ≠ f∘δ
    let bad = CochainMap::new(
      &lens,
      &lens,
      0,
      vec![IntMatrix::identity(1), IntMatrix::zeros(1, 1), IntMatrix::identity(1), IntMatrix::identity(1)],
    )
    .unwrap();
    assert!(mayer_vietoris_glue(&lens, &p, &lens, &bad, &CochainMap::zero(&p, &lens, 0)).is_err());
  }

  #[test]
  fn monopole_pair_base() {
    let (g, cup) = multi_monopole_base(2, 2).unwrap();
    // two CP² glued along spheres to a wedge: H² = Z², H⁴ = Z²
    assert_eq!(profiles(g.complex()), ["Z", "0", "Z^2", "0", "Z^2"]);
    assert!(g.exactness().unwrap().iter().all(|c| c.exact));
    assert_eq!(cup.labels(), ["u1", "u2"]);
  }

  #[test]
  fn single_multi_monopole_matches_monopole() {
    for k in 1..=4 {
      let multi = multi_monopole_dual(&[k], 2).unwrap();
      let single = mathai_wu_dual(&space(SpaceKind::Monopole(k)), 2).unwrap();
      assert_eq!(multi.canonical_flux(), single.canonical_flux());
      assert_eq!(multi.canonical_flux(), int_vec([k as i64]));
    }
  }

  #[test]
  fn monopole_pair_dual() {
    let r = multi_monopole_dual(&[1, 1], 2).unwrap();
    assert!(r.result.dual_euler.iter().all(Zero::is_zero));
    assert!(r.canonical_flux().iter().any(|x| !x.is_zero()));
  }

  #[test]
  fn routes_agree() {
    for kind in [SpaceKind::PointFixed, SpaceKind::Monopole(3), SpaceKind::FreeHopf] {
      for n in 1..=3 {
        let s = space(kind.clone());
        let a = mathai_wu_dual(&s, n).unwrap();
        let b = bunke_route_dual(&s, n).unwrap();
        assert_eq!(a.result.dual_euler, b.result.dual_euler, "{kind} N={n}");
        assert_eq!(a.canonical_flux(), b.canonical_flux(), "{kind} N={n}");
      }
    }
    assert!(bunke_route_dual(&space(SpaceKind::MultiMonopole(vec![1])), 2).is_err());
  }

  #[test]
  fn free_hopf_dual_is_one_unit() {
    for n in 1..=3 {
      let r = mathai_wu_dual(&space(SpaceKind::FreeHopf), n).unwrap();
      assert_eq!(r.result.dual_euler, int_vec([0]));
      assert_eq!(r.canonical_flux(), int_vec([1]));
    }
  }

  #[test]
  fn stability_examples() {
    assert!(stability_check(&space(SpaceKind::Monopole(5)), 2, 3).unwrap().stable);
    assert!(stability_check(&space(SpaceKind::PointFixed), 1, 1).unwrap().stable);
    assert!(stability_check(&space(SpaceKind::FreeHopf), 4, 7).unwrap().stable);
    assert!(stability_check(&space(SpaceKind::Monopole(5)), 2, 4).is_err());
  }

  #[test]
  fn report_has_window() {
    let r = mathai_wu_dual(&space(SpaceKind::Monopole(2)), 3).unwrap().report().unwrap();
    assert!(r.window.contains("<= 5"));
    assert_eq!(r.total_h2.to_string(), "Z/2");
    assert_eq!(r.dual_total_h2.to_string(), "Z");
  }
}
