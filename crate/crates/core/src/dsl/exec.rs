//! Command execution and reports.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{ActionDecl, ActionType, ComplexDecl, ComplexSource, EulerSpec, FluxSpec, Section, SpecFile};
use crate::borel::{
  bunke_route_dual, mathai_wu_dual, stability_check, BorelReport, SemiFreeSpace, SpaceKind,
};
use crate::catalog::{self, catalog_build};
use crate::chain::{cohomology, CochainMap, GradedComplex, IntMatrix};
use crate::cup::{CupEntry, CupStructure};
use crate::error::{Error, ErrorClass, Result};
use crate::gysin::{gysin_sequence, EulerModel, SIGN_CONVENTION};
use crate::simplicial::SimplicialComplex;
use crate::tdual::{double_dual_check, dualize, integrate_dual_flux, DualizeReport, TDualityTriple};

/// Which routes `borel` runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteChoice {
  MathaiWu,
  Bunke,
  Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
  Cohom { complex: String, max_degree: Option<usize> },
  Dualize { bundle: String, flux: Option<String> },
  Borel { action: String, route: RouteChoice },
  Verify { all: bool },
}

impl fmt::Display for Command {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      Command::Cohom { complex, max_degree } => {
        write!(f, "cohom --complex {complex}")?;
        if let Some(d) = max_degree {
          write!(f, " --max-degree {d}")?;
        }
        Ok(())
      }
      Command::Dualize { bundle, flux } => {
        write!(f, "dualize --bundle {bundle}")?;
        if let Some(x) = flux {
          write!(f, " --flux {x}")?;
        }
        Ok(())
      }
      Command::Borel { action, route } => {
        let r = match route {
          RouteChoice::MathaiWu => "mw",
          RouteChoice::Bunke => "bunke",
          RouteChoice::Both => "both",
        };
        write!(f, "borel --action {action} --route {r}")
      }
      Command::Verify { all } => write!(f, "verify{}", if *all { " --all" } else { "" }),
    }
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
  pub command: String,
  pub sign_convention: String,
  #[serde(flatten)]
  pub body: ReportBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "report", rename_all = "snake_case")]
pub enum ReportBody {
  Cohomology(CohomReport),
  Dualize(DualizeSection),
  Borel(BorelSection),
  Verify(VerifySection),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
  pub degree: usize,
  pub invariant_factors: Vec<String>,
  pub free_rank: usize,
  pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomReport {
  pub complex: String,
  pub provenance: String,
  pub degrees: Vec<DegreeRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualizeSection {
  pub bundle: String,
  pub flux: Option<String>,
  pub ambiguity_rank: usize,
  pub result: DualizeReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BorelSection {
  pub action: String,
  pub routes: Vec<BorelReport>,
  /// Present when both routes ran.
  pub routes_agree: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
  pub name: String,
  pub passed: bool,
  /// The check could not run because the input violates a precondition.
  pub rejected: bool,
  pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifySection {
  pub checks: Vec<CheckOutcome>,
  pub all_passed: bool,
}

impl Report {
  /// Whether the report records a failed internal check (routes disagreeing or a failed verification).
  pub fn failed(&self) -> bool {
    match &self.body {
      ReportBody::Borel(b) => b.routes_agree == Some(false),
      ReportBody::Verify(v) => v.checks.iter().any(|c| !c.passed && !c.rejected),
      _ => false,
    }
  }

  /// Whether a verification was refused by the input rather than failed by the engine.
  pub fn input_rejected(&self) -> bool {
    matches!(&self.body, ReportBody::Verify(v) if v.checks.iter().any(|c| c.rejected))
  }

  pub fn to_json(&self) -> String {
    serde_json::to_string_pretty(self).expect("reports serialize")
  }
}

// ---------------------------------------------------------------------------
// resolution

struct Base {
  complex: GradedComplex,
  cup: CupStructure,
}

fn unknown(kind: &'static str, name: &str) -> Error {
  Error::UnknownName { kind, name: name.to_string() }
}

fn build_complex(spec: &SpecFile, name: &str) -> Result<Base> {
  let decl = spec.complex(name).ok_or_else(|| unknown("complex", name))?;
  match &decl.source {
    ComplexSource::Algebraic { ranks, deltas } => algebraic(decl, ranks, deltas),
    ComplexSource::Catalog { name, params } => {
      if !decl.labels.is_empty() || !decl.mus.is_empty() {
        return Err(Error::BadParams(
          "catalog complexes bring their own classes; drop `label.`/`mu.` keys".into(),
        ));
      }
      let m = catalog_build(name, params)?;
      Ok(Base { complex: m.complex, cup: m.cup })
    }
    ComplexSource::Simplicial { facets } => {
      if !decl.mus.is_empty() {
        return Err(Error::BadParams(
          "simplicial complexes derive their cup operators; drop `mu.` keys".into(),
        ));
      }
      let k = SimplicialComplex::from_facets(facets)?;
      let max_degree = k.dimension();
      let complex = k.cochain_complex(max_degree);
      for (l, v) in &decl.labels {
        k.cochain(2, v.clone())
          .map_err(|e| Error::BadParams(format!("label `{l}`: {e}")))?
          .is_cocycle()
          .then_some(())
          .ok_or(Error::NotACocycle { degree: 2, entry: 0 })?;
      }
      let cup = CupStructure::Simplicial { complex: k, max_degree, classes: decl.labels.clone() };
      Ok(Base { complex, cup })
    }
  }
}

fn algebraic(decl: &ComplexDecl, ranks: &[usize], deltas: &[(usize, IntMatrix)]) -> Result<Base> {
  let top = ranks.len() - 1;
  if let Some((n, _)) = deltas.iter().find(|(n, _)| *n >= top) {
    return Err(Error::BadParams(format!("delta{n} given but the top degree is {top}")));
  }
  let blocks = (0..top)
    .map(|n| {
      deltas
        .iter()
        .find(|(m, _)| *m == n)
        .map_or_else(|| IntMatrix::zeros(ranks[n + 1], ranks[n]), |(_, d)| d.clone())
    })
    .collect();
  let complex = GradedComplex::checked(ranks.to_vec(), blocks)?;
  let entries = decl
    .labels
    .iter()
    .map(|(label, cocycle)| {
      let blocks = (0..=top as i64)
        .map(|n| {
          decl
            .mus
            .iter()
            .find(|(l, m, _)| l == label && *m as i64 == n)
            .map_or_else(|| IntMatrix::zeros(complex.rank(n + 2), complex.rank(n)), |(_, _, b)| b.clone())
        })
        .collect();
      Ok(CupEntry {
        label: label.clone(),
        cocycle: cocycle.clone(),
        operator: CochainMap::new(&complex, &complex, 2, blocks)?,
      })
    })
    .collect::<Result<Vec<_>>>()?;
  let cup = CupStructure::Table(entries);
  cup.validate(&complex)?;
  Ok(Base { complex, cup })
}

fn build_bundle(spec: &SpecFile, name: &str) -> Result<EulerModel> {
  let decl = spec.bundle(name).ok_or_else(|| unknown("bundle", name))?;
  let base = build_complex(spec, &decl.base)?;
  match &decl.euler {
    EulerSpec::Labels(terms) if terms.is_empty() => EulerModel::trivial(base.complex, base.cup),
    EulerSpec::Labels(terms) => EulerModel::from_labels(base.complex, base.cup, terms),
    EulerSpec::Coeffs(z) => EulerModel::from_cocycle(base.complex, base.cup, z),
  }
}

fn build_flux(spec: &SpecFile, name: &str) -> Result<(String, TDualityTriple)> {
  let decl = spec.flux(name).ok_or_else(|| unknown("flux", name))?;
  let model = build_bundle(spec, &decl.bundle)?;
  let triple = match &decl.h {
    FluxSpec::Class(v) => TDualityTriple::from_class(model, v)?,
    FluxSpec::Coeffs(v) => TDualityTriple::new(model, v.clone())?,
  };
  Ok((decl.bundle.clone(), triple))
}

fn zero_flux(model: EulerModel) -> Result<TDualityTriple> {
  let t = model.total_space()?;
  TDualityTriple::new(model, vec![BigInt::zero(); t.total.rank(3)])
}

fn build_action(spec: &SpecFile, decl: &ActionDecl) -> Result<SemiFreeSpace> {
  let kind = match decl.kind {
    ActionType::PointFixed => SpaceKind::PointFixed,
    ActionType::Monopole => SpaceKind::Monopole(decl.charges[0]),
    ActionType::MultiMonopole => SpaceKind::MultiMonopole(decl.charges.clone()),
    ActionType::FreeHopf => SpaceKind::FreeHopf,
    ActionType::FreeBundle => {
      let b = decl.bundle.as_deref().ok_or_else(|| Error::BadParams("free_bundle needs `bundle`".into()))?;
      SpaceKind::FreeBundle(Box::new(build_bundle(spec, b)?))
    }
  };
  SemiFreeSpace::new(kind, decl.h.clone())
}

// ---------------------------------------------------------------------------
// commands

pub fn execute(command: &Command, spec: &SpecFile) -> Result<Report> {
  let body = match command {
    Command::Cohom { complex, max_degree } => ReportBody::Cohomology(cohom(spec, complex, *max_degree)?),
    Command::Dualize { bundle, flux } => ReportBody::Dualize(dualize_cmd(spec, bundle, flux.as_deref())?),
    Command::Borel { action, route } => ReportBody::Borel(borel_cmd(spec, action, *route)?),
    Command::Verify { all } => ReportBody::Verify(verify(spec, *all)),
  };
  Ok(Report { command: command.to_string(), sign_convention: SIGN_CONVENTION.into(), body })
}

fn cohom(spec: &SpecFile, name: &str, max_degree: Option<usize>) -> Result<CohomReport> {
  let base = build_complex(spec, name)?;
  let top = base.complex.top_degree();
  let max = max_degree.unwrap_or(top);
  if max > top {
    return Err(Error::DegreeOutOfRange { degree: max as i64, max: top as i64 });
  }
  let degrees = (0..=max)
    .map(|d| {
      let h = cohomology(&base.complex, d)?;
      Ok(DegreeRow {
        degree: d,
        invariant_factors: h.torsion.iter().map(ToString::to_string).collect(),
        free_rank: h.free_rank,
        group: h.profile().to_string(),
      })
    })
    .collect::<Result<Vec<_>>>()?;
  Ok(CohomReport { complex: name.into(), provenance: base.cup.provenance().into(), degrees })
}

fn dualize_cmd(spec: &SpecFile, bundle: &str, flux: Option<&str>) -> Result<DualizeSection> {
  let triple = match flux {
    Some(f) => {
      let (owner, triple) = build_flux(spec, f)?;
      if owner != bundle {
        return Err(Error::BadParams(format!("flux `{f}` lives on bundle `{owner}`, not `{bundle}`")));
      }
      triple
    }
    None => zero_flux(build_bundle(spec, bundle)?)?,
  };
  let result = dualize(&triple)?;
  Ok(DualizeSection {
    bundle: bundle.into(),
    flux: flux.map(Into::into),
    ambiguity_rank: result.ambiguity_lattice().rank(),
    result: result.report(),
  })
}

fn borel_cmd(spec: &SpecFile, name: &str, route: RouteChoice) -> Result<BorelSection> {
  let decl = spec.action(name).ok_or_else(|| unknown("action", name))?;
  let space = build_action(spec, decl)?;
  let n = decl.truncation;
  let mut routes = Vec::new();
  if route != RouteChoice::Bunke {
    routes.push(mathai_wu_dual(&space, n)?.report()?);
  }
  if route != RouteChoice::MathaiWu {
    routes.push(bunke_route_dual(&space, n)?.report()?);
  }
  let routes_agree = (routes.len() == 2).then(|| {
    routes[0].dual.dual_euler == routes[1].dual.dual_euler
      && routes[0].dual.canonical_flux == routes[1].dual.canonical_flux
  });
  Ok(BorelSection { action: name.into(), routes, routes_agree })
}

fn outcome(name: impl Into<String>, r: Result<(bool, String)>) -> CheckOutcome {
  match r {
    Ok((passed, detail)) => CheckOutcome { name: name.into(), passed, rejected: false, detail },
    Err(e) => CheckOutcome {
      name: name.into(),
      passed: false,
      rejected: e.class() != ErrorClass::Internal,
      detail: format!("error: {e}"),
    },
  }
}

fn check_gysin(model: &EulerModel) -> Result<(bool, String)> {
  let top = model.total_space()?.total.top_degree();
  let g = gysin_sequence(model, top)?;
  let bad: Vec<String> = g.checks.iter().filter(|c| !c.exact).map(|c| c.node.clone()).collect();
  Ok(if bad.is_empty() {
    (true, format!("exact at {} nodes", g.checks.len()))
  } else {
    (false, format!("not exact at {}", bad.join(", ")))
  })
}

fn check_triple(triple: &TDualityTriple) -> Result<(bool, String)> {
  let r = dualize(triple)?;
  let back = integrate_dual_flux(&r)? == r.euler;
  let dd = double_dual_check(triple)?;
  Ok((back && dd.passed(), format!("fiber integral returns e: {back}; double dual: {}", dd.note)))
}

fn verify(spec: &SpecFile, all: bool) -> VerifySection {
  let mut checks = Vec::new();
  for s in &spec.sections {
    match s {
      Section::Complex(c) => checks.push(outcome(format!("complex {}", c.name), {
        build_complex(spec, &c.name).and_then(|b| b.complex.ensure_valid()).map(|()| (true, "valid".into()))
      })),
      Section::Bundle(b) => {
        checks.push(outcome(
          format!("bundle {} gysin", b.name),
          build_bundle(spec, &b.name).and_then(|m| check_gysin(&m)),
        ));
        checks.push(outcome(
          format!("bundle {} zero-flux duality", b.name),
          build_bundle(spec, &b.name).and_then(zero_flux).and_then(|t| check_triple(&t)),
        ));
      }
      Section::Flux(f) => checks.push(outcome(
        format!("flux {} duality", f.name),
        build_flux(spec, &f.name).and_then(|(_, t)| check_triple(&t)),
      )),
      Section::Action(a) => {
        let space = build_action(spec, a);
        let n = a.truncation;
        checks.push(outcome(
          format!("action {} stability", a.name),
          space.as_ref().map_err(Clone::clone).and_then(|s| {
            let r = stability_check(s, n, (2 * n - 1) as usize)?;
            Ok((r.stable, format!("N = {n} vs {}, degrees <= {}", n + 1, 2 * n - 1)))
          }),
        ));
        if matches!(a.kind, ActionType::PointFixed | ActionType::Monopole | ActionType::FreeHopf) {
          checks.push(outcome(
            format!("action {} routes", a.name),
            space.as_ref().map_err(Clone::clone).and_then(|s| {
              let (x, y) = (mathai_wu_dual(s, n)?, bunke_route_dual(s, n)?);
              let agree =
                x.result.dual_euler == y.result.dual_euler && x.canonical_flux() == y.canonical_flux();
              Ok((
                agree,
                format!(
                  "canonical flux {:?}",
                  x.canonical_flux().iter().map(ToString::to_string).collect::<Vec<_>>()
                ),
              ))
            }),
          ));
        }
      }
    }
  }
  if all {
    checks.extend(builtin_checks());
  }
  let all_passed = checks.iter().all(|c| c.passed);
  VerifySection { checks, all_passed }
}

/// Catalog-level checks run by `verify --all`.
fn builtin_checks() -> Vec<CheckOutcome> {
  let mut checks = Vec::new();
  for name in catalog::NAMES {
    let params: &[u64] = match name {
      "cp" => &[3],
      "lens" => &[3, 2],
      _ => &[],
    };
    checks
      .push(outcome(format!("catalog {name}"), catalog_build(name, params).map(|_| (true, "loads".into()))));
  }
  for n in 1..=3u64 {
    for k in [1u64, 2, 3, 5] {
      checks.push(outcome(format!("cone vs lens k={k} N={n}"), cone_vs_lens(k, n)));
    }
  }
  for n in 1..=3u64 {
    for k in 1..=5u64 {
      checks.push(outcome(
        format!("monopole flux k={k} N={n}"),
        (|| {
          let space = SemiFreeSpace::plain(SpaceKind::Monopole(k))?;
          let d = mathai_wu_dual(&space, n)?;
          let flux = d.canonical_flux();
          let ok = d.result.dual_euler.iter().all(Zero::is_zero) && flux == vec![BigInt::from(k)];
          Ok((ok, format!("canonical flux {:?}", flux.iter().map(ToString::to_string).collect::<Vec<_>>())))
        })(),
      ));
    }
  }
  checks
}

fn cone_vs_lens(k: u64, n: u64) -> Result<(bool, String)> {
  let m = catalog::cp(n);
  let model = EulerModel::from_labels(m.complex, m.cup, &[(BigInt::from(k), "u".into())])?;
  let t = model.total_space()?;
  let lens = catalog::lens_complex(k, n);
  for d in 0..=(2 * n + 1) as usize {
    let (a, b) = (cohomology(&t.total, d)?.profile(), cohomology(&lens, d)?.profile());
    if a != b {
      return Ok((false, format!("degree {d}: {a} vs {b}")));
    }
  }
  Ok((true, format!("agree in degrees <= {}", 2 * n + 1)))
}

// ---------------------------------------------------------------------------
// human rendering

fn list(v: &[String]) -> String {
  format!("[{}]", v.join(", "))
}

impl fmt::Display for Report {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    writeln!(f, "command: {}", self.command)?;
    writeln!(f, "sign convention: {}", self.sign_convention)?;
    match &self.body {
      ReportBody::Cohomology(c) => {
        writeln!(f, "complex: {} ({})", c.complex, c.provenance)?;
        for row in &c.degrees {
          writeln!(
            f,
            "  H^{} = {}    invariant factors {} free rank {}",
            row.degree,
            row.group,
            list(&row.invariant_factors),
            row.free_rank
          )?;
        }
      }
      ReportBody::Dualize(d) => {
        writeln!(f, "bundle: {}", d.bundle)?;
        writeln!(f, "flux: {}", d.flux.as_deref().unwrap_or("0"))?;
        render_dual(f, &d.result, "")?;
        writeln!(f, "ambiguity rank: {}", d.ambiguity_rank)?;
      }
      ReportBody::Borel(b) => {
        writeln!(f, "action: {}", b.action)?;
        for r in &b.routes {
          writeln!(f, "route {} ({})", r.route, r.kind)?;
          writeln!(f, "  truncation N = {}; {}", r.truncation, r.window)?;
          let base: Vec<String> = r.base.iter().map(ToString::to_string).collect();
          writeln!(f, "  base cohomology: {}", list(&base))?;
          writeln!(f, "  H^2(total) = {}; H^2(dual total) = {}", r.total_h2, r.dual_total_h2)?;
          render_dual(f, &r.dual, "  ")?;
        }
        if let Some(agree) = b.routes_agree {
          writeln!(f, "routes agree: {}", if agree { "yes" } else { "NO" })?;
        }
      }
      ReportBody::Verify(v) => {
        for c in &v.checks {
          let status = match (c.passed, c.rejected) {
            (true, _) => "PASS",
            (false, true) => "REJECTED",
            (false, false) => "FAIL",
          };
          writeln!(f, "{status} {}: {}", c.name, c.detail)?;
        }
        let passed = v.checks.iter().filter(|c| c.passed).count();
        writeln!(f, "{passed}/{} checks passed", v.checks.len())?;
      }
    }
    Ok(())
  }
}

fn render_dual(f: &mut fmt::Formatter<'_>, d: &DualizeReport, indent: &str) -> fmt::Result {
  writeln!(f, "{indent}provenance: {}", d.provenance)?;
  writeln!(f, "{indent}euler class: {}", list(&d.euler))?;
  writeln!(f, "{indent}dual euler class: {}", list(&d.dual_euler))?;
  writeln!(f, "{indent}H^3(dual total) = {}", d.dual_h3)?;
  writeln!(f, "{indent}dual flux: {}", list(&d.dual_flux))?;
  writeln!(f, "{indent}canonical flux: {}", list(&d.canonical_flux))?;
  let amb: Vec<String> = d.ambiguity.iter().map(|v| list(v)).collect();
  writeln!(f, "{indent}ambiguity generators: {}", list(&amb))?;
  writeln!(
    f,
    "{indent}fiber integral of dual flux equals e: {}",
    if d.fiber_integral_matches_euler { "yes" } else { "no" }
  )
}
