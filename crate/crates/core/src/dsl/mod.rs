//! The line-oriented input language.
//!
//! ```text
//! # comments run to the end of the line
//! [complex cp2]
//! kind = catalog
//! name = cp
//! params = 2
//!
//! [bundle b]
//! base = cp2
//! euler = 5*u
//! ```
//!
//! Sections are `[complex NAME]`, `[bundle NAME]`, `[flux NAME]` and
//! `[action NAME]`, each followed by `key = value` lines. Names are unique per
//! section kind and must be declared before they are referenced.

mod exec;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::chain::{IntMatrix, IntVector};
use crate::error::{Error, Result};

pub use exec::{
  execute, BorelSection, CheckOutcome, CohomReport, Command, DegreeRow, DualizeSection, Report, ReportBody,
  RouteChoice, VerifySection,
};

/// A parsed input file: sections in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecFile {
  pub sections: Vec<Section>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Section {
  Complex(ComplexDecl),
  Bundle(BundleDecl),
  Flux(FluxDecl),
  Action(ActionDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDecl {
  pub name: String,
  pub source: ComplexSource,
  /// Declared degree-2 classes, `label.<l> = …`.
  pub labels: Vec<(String, IntVector)>,
  /// Cup operator blocks for algebraic labels, `mu.<l>.<n> = …` (source degree `n`).
  pub mus: Vec<(String, usize, IntMatrix)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexSource {
  /// `ranks` plus `delta<n>` blocks; omitted blocks are zero.
  Algebraic {
    ranks: Vec<usize>,
    deltas: Vec<(usize, IntMatrix)>,
  },
  Catalog {
    name: String,
    params: Vec<u64>,
  },
  Simplicial {
    facets: Vec<Vec<usize>>,
  },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleDecl {
  pub name: String,
  pub base: String,
  pub euler: EulerSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EulerSpec {
  /// Integer combination of declared labels; empty means zero.
  Labels(Vec<(BigInt, String)>),
  /// Explicit 2-cocycle.
  Coeffs(IntVector),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FluxDecl {
  pub name: String,
  pub bundle: String,
  pub h: FluxSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FluxSpec {
  /// Coordinates in the generators of `H³` of the total space.
  Class(IntVector),
  /// Explicit 3-cochain on the total-space model.
  Coeffs(IntVector),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionType {
  PointFixed,
  Monopole,
  MultiMonopole,
  FreeHopf,
  FreeBundle,
}

impl ActionType {
  const ALL: [(&'static str, ActionType); 5] = [
    ("point_fixed", ActionType::PointFixed),
    ("monopole", ActionType::Monopole),
    ("multi_monopole", ActionType::MultiMonopole),
    ("free_hopf", ActionType::FreeHopf),
    ("free_bundle", ActionType::FreeBundle),
  ];

  pub fn as_str(self) -> &'static str {
    Self::ALL.iter().find(|(_, t)| *t == self).expect("listed").0
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionDecl {
  pub name: String,
  pub kind: ActionType,
  pub charges: Vec<u64>,
  pub truncation: u64,
  /// Quotient bundle of a free action.
  pub bundle: Option<String>,
  /// Flux coordinates in `H³` of the Borel total space.
  pub h: Option<IntVector>,
}

impl SpecFile {
  pub fn complex(&self, name: &str) -> Option<&ComplexDecl> {
    self.sections.iter().find_map(|s| match s {
      Section::Complex(c) if c.name == name => Some(c),
      _ => None,
    })
  }

  pub fn bundle(&self, name: &str) -> Option<&BundleDecl> {
    self.sections.iter().find_map(|s| match s {
      Section::Bundle(b) if b.name == name => Some(b),
      _ => None,
    })
  }

  pub fn flux(&self, name: &str) -> Option<&FluxDecl> {
    self.sections.iter().find_map(|s| match s {
      Section::Flux(f) if f.name == name => Some(f),
      _ => None,
    })
  }

  pub fn action(&self, name: &str) -> Option<&ActionDecl> {
    self.sections.iter().find_map(|s| match s {
      Section::Action(a) if a.name == name => Some(a),
      _ => None,
    })
  }
}

// ---------------------------------------------------------------------------
// parsing

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
  Error::Parse { line, column, message: message.into() }
}

/// A `key = value` line with positions.
struct Entry {
  key: String,
  value: String,
  line: usize,
  value_col: usize,
}

struct RawSection {
  kind: String,
  name: String,
  line: usize,
  entries: Vec<Entry>,
}

impl RawSection {
  fn take(&mut self, key: &str) -> Option<Entry> {
    let i = self.entries.iter().position(|e| e.key == key)?;
    Some(self.entries.remove(i))
  }

  fn require(&mut self, key: &str) -> Result<Entry> {
    self
      .take(key)
      .ok_or_else(|| err(self.line, 1, format!("[{} {}] is missing `{key}`", self.kind, self.name)))
  }
}

fn is_ident(s: &str) -> bool {
  s.starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_')
    && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Parses a whole file, stopping at the first error.
pub fn parse_spec(text: &str) -> Result<SpecFile> {
  let mut raw: Vec<RawSection> = Vec::new();
  for (i, full) in text.lines().enumerate() {
    let line = i + 1;
    let content = full.split('#').next().unwrap_or("");
    let trimmed = content.trim();
    if trimmed.is_empty() {
      continue;
    }
    let indent = content.len() - content.trim_start().len();
    if let Some(rest) = trimmed.strip_prefix('[') {
      let inner = rest.strip_suffix(']').ok_or_else(|| err(line, indent + trimmed.len(), "expected `]`"))?;
      let mut parts = inner.split_whitespace();
      let (kind, name) = match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(n), None) => (k, n),
        _ => return Err(err(line, indent + 2, "section header must be `[kind name]`")),
      };
      if !["complex", "bundle", "flux", "action"].contains(&kind) {
        return Err(err(line, indent + 2, format!("unknown section kind `{kind}`")));
      }
      if !is_ident(name) {
        return Err(err(line, indent + 2 + kind.len() + 1, format!("invalid name `{name}`")));
      }
      raw.push(RawSection { kind: kind.into(), name: name.into(), line, entries: Vec::new() });
      continue;
    }
    let eq =
      content.find('=').ok_or_else(|| err(line, indent + 1, "expected `key = value` or a section header"))?;
    let key = content[..eq].trim();
    if !is_ident_key(key) {
      return Err(err(line, indent + 1, format!("invalid key `{key}`")));
    }
    let after = &content[eq + 1..];
    let value = after.trim();
    let value_col = eq + 2 + (after.len() - after.trim_start().len());
    let section = raw.last_mut().ok_or_else(|| err(line, indent + 1, "key outside of any section"))?;
    if section.entries.iter().any(|e| e.key == key) {
      return Err(err(line, indent + 1, format!("duplicate key `{key}`")));
    }
    section.entries.push(Entry { key: key.into(), value: value.into(), line, value_col });
  }

  let mut spec = SpecFile::default();
  let mut seen: BTreeMap<(String, String), usize> = BTreeMap::new();
  for mut s in raw {
    if let Some(prev) = seen.insert((s.kind.clone(), s.name.clone()), s.line) {
      return Err(err(
        s.line,
        2,
        format!("duplicate {} `{}` (first declared on line {prev})", s.kind, s.name),
      ));
    }
    let section = match s.kind.as_str() {
      "complex" => Section::Complex(complex_section(&mut s)?),
      "bundle" => Section::Bundle(bundle_section(&mut s, &spec)?),
      "flux" => Section::Flux(flux_section(&mut s, &spec)?),
      _ => Section::Action(action_section(&mut s, &spec)?),
    };
    if let Some(e) = s.entries.first() {
      return Err(err(e.line, 1, format!("unknown key `{}` in [{} {}]", e.key, s.kind, s.name)));
    }
    spec.sections.push(section);
  }
  Ok(spec)
}

fn is_ident_key(s: &str) -> bool {
  !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '-')
}

fn parse_int(tok: &str, line: usize, col: usize) -> Result<BigInt> {
  tok
    .trim()
    .parse::<BigInt>()
    .map_err(|_| err(line, col, format!("expected an integer, found `{}`", tok.trim())))
}

fn parse_unsigned<T: std::str::FromStr>(tok: &str, line: usize, col: usize) -> Result<T> {
  tok
    .trim()
    .parse::<T>()
    .map_err(|_| err(line, col, format!("expected a non-negative integer, found `{}`", tok.trim())))
}

/// Comma-separated items with the column of each.
fn split_positions(s: &str, sep: char, base_col: usize) -> Vec<(&str, usize)> {
  let mut out = Vec::new();
  let mut start = 0;
  for (i, c) in s.char_indices() {
    if c == sep {
      out.push((&s[start..i], base_col + start));
      start = i + 1;
    }
  }
  out.push((&s[start..], base_col + start));
  out
}

fn int_list(e: &Entry) -> Result<IntVector> {
  if e.value.is_empty() {
    return Ok(Vec::new());
  }
  split_positions(&e.value, ',', e.value_col).into_iter().map(|(t, c)| parse_int(t, e.line, c)).collect()
}

fn unsigned_list<T: std::str::FromStr>(value: &str, line: usize, col: usize) -> Result<Vec<T>> {
  if value.trim().is_empty() {
    return Ok(Vec::new());
  }
  split_positions(value, ',', col).into_iter().map(|(t, c)| parse_unsigned(t, line, c)).collect()
}

fn matrix(e: &Entry) -> Result<IntMatrix> {
  let mut rows = Vec::new();
  for (row, col) in split_positions(&e.value, ';', e.value_col) {
    let entries = split_positions(row, ',', col)
      .into_iter()
      .map(|(t, c)| parse_int(t, e.line, c))
      .collect::<Result<Vec<_>>>()?;
    rows.push(entries);
  }
  let cols = rows[0].len();
  if rows.iter().any(|r| r.len() != cols) {
    return Err(err(e.line, e.value_col, "matrix rows have different lengths"));
  }
  let n = rows.len();
  let flat = rows.into_iter().flatten().collect();
  IntMatrix::from_entries(n, cols, flat).map_err(|m| err(e.line, e.value_col, m.to_string()))
}

fn complex_section(s: &mut RawSection) -> Result<ComplexDecl> {
  let kind = s.require("kind")?;
  let source = match kind.value.as_str() {
    "algebraic" => {
      let ranks_e = s.require("ranks")?;
      let ranks: Vec<usize> = unsigned_list(&ranks_e.value, ranks_e.line, ranks_e.value_col)?;
      if ranks.is_empty() {
        return Err(err(ranks_e.line, ranks_e.value_col, "`ranks` must list at least degree 0"));
      }
      let mut deltas = Vec::new();
      let keys: Vec<String> = s.entries.iter().map(|e| e.key.clone()).collect();
      for key in keys {
        if let Some(n) = key.strip_prefix("delta") {
          let e = s.take(&key).expect("present");
          let n: usize = parse_unsigned(n, e.line, 1)?;
          deltas.push((n, matrix(&e)?));
        }
      }
      deltas.sort_by_key(|(n, _)| *n);
      ComplexSource::Algebraic { ranks, deltas }
    }
    "catalog" => {
      let name = s.require("name")?.value;
      let params = match s.take("params") {
        Some(e) => unsigned_list(&e.value, e.line, e.value_col)?,
        None => Vec::new(),
      };
      ComplexSource::Catalog { name, params }
    }
    "simplicial" => {
      let e = s.require("facets")?;
      let facets = split_positions(&e.value, ';', e.value_col)
        .into_iter()
        .map(|(f, c)| unsigned_list(f, e.line, c))
        .collect::<Result<Vec<Vec<usize>>>>()?;
      ComplexSource::Simplicial { facets }
    }
    other => {
      return Err(err(
        kind.line,
        kind.value_col,
        format!("unknown complex kind `{other}` (algebraic|catalog|simplicial)"),
      ))
    }
  };

  let mut labels = Vec::new();
  let mut mus = Vec::new();
  let keys: Vec<String> = s.entries.iter().map(|e| e.key.clone()).collect();
  for key in keys {
    if let Some(l) = key.strip_prefix("label.") {
      let e = s.take(&key).expect("present");
      if !is_ident(l) {
        return Err(err(e.line, 1, format!("invalid label `{l}`")));
      }
      labels.push((l.to_string(), int_list(&e)?));
    } else if let Some(rest) = key.strip_prefix("mu.") {
      let e = s.take(&key).expect("present");
      let (l, n) = rest.rsplit_once('.').ok_or_else(|| err(e.line, 1, "expected `mu.<label>.<degree>`"))?;
      let n: usize = parse_unsigned(n, e.line, 1)?;
      mus.push((l.to_string(), n, matrix(&e)?));
    }
  }
  for (l, _, _) in &mus {
    if !labels.iter().any(|(m, _)| m == l) {
      return Err(err(s.line, 1, format!("operator given for undeclared label `{l}`")));
    }
  }
  Ok(ComplexDecl { name: s.name.clone(), source, labels, mus })
}

fn euler_terms(e: &Entry) -> Result<Vec<(BigInt, String)>> {
  let v = e.value.as_str();
  if v.trim() == "0" {
    return Ok(Vec::new());
  }
  // split into signed terms
  let mut terms = Vec::new();
  let mut start = 0;
  let mut sign = BigInt::from(1);
  let mut pending_sign = true;
  let mut flush = |seg: &str, at: usize, sign: &BigInt| -> Result<()> {
    let seg_trim = seg.trim();
    if seg_trim.is_empty() {
      return Err(err(e.line, e.value_col + at, "empty term"));
    }
    let lead = seg.len() - seg.trim_start().len();
    let col = e.value_col + at + lead;
    let (coef, label) = match seg_trim.split_once('*') {
      Some((c, l)) => (parse_int(c, e.line, col)?, l.trim()),
      None => (BigInt::from(1), seg_trim),
    };
    if !is_ident(label) {
      return Err(err(e.line, col, format!("expected a class label, found `{label}`")));
    }
    terms.push((sign * coef, label.to_string()));
    Ok(())
  };
  for (i, c) in v.char_indices() {
    if (c == '+' || c == '-') && !pending_sign {
      // a sign directly after `*` belongs to the coefficient
      let before = v[..i].trim_end();
      if before.ends_with('*') {
        continue;
      }
      flush(&v[start..i], start, &sign)?;
      sign = BigInt::from(if c == '-' { -1 } else { 1 });
      start = i + 1;
      pending_sign = true;
    } else if (c == '+' || c == '-') && pending_sign && v[start..i].trim().is_empty() {
      if c == '-' {
        sign = -sign;
      }
      start = i + 1;
    } else if !c.is_whitespace() {
      pending_sign = false;
    }
  }
  flush(&v[start..], start, &sign)?;
  Ok(terms)
}

fn resolve<T>(found: Option<T>, kind: &str, e: &Entry) -> Result<T> {
  found.ok_or_else(|| err(e.line, e.value_col, format!("unknown {kind} `{}` (declare it first)", e.value)))
}

fn bundle_section(s: &mut RawSection, spec: &SpecFile) -> Result<BundleDecl> {
  let base = s.require("base")?;
  resolve(spec.complex(&base.value), "complex", &base)?;
  let e = s.require("euler")?;
  let euler = match e.value.strip_prefix("coeffs=") {
    Some(rest) => {
      let shifted =
        Entry { key: e.key.clone(), value: rest.trim().into(), line: e.line, value_col: e.value_col + 7 };
      EulerSpec::Coeffs(int_list(&shifted)?)
    }
    None => EulerSpec::Labels(euler_terms(&e)?),
  };
  Ok(BundleDecl { name: s.name.clone(), base: base.value, euler })
}

fn flux_section(s: &mut RawSection, spec: &SpecFile) -> Result<FluxDecl> {
  let b = s.require("bundle")?;
  resolve(spec.bundle(&b.value), "bundle", &b)?;
  let e = s.require("h")?;
  let h = match e.value.strip_prefix("coeffs=") {
    Some(rest) => {
      let shifted =
        Entry { key: e.key.clone(), value: rest.trim().into(), line: e.line, value_col: e.value_col + 7 };
      FluxSpec::Coeffs(int_list(&shifted)?)
    }
    None => FluxSpec::Class(int_list(&e)?),
  };
  Ok(FluxDecl { name: s.name.clone(), bundle: b.value, h })
}

fn action_section(s: &mut RawSection, spec: &SpecFile) -> Result<ActionDecl> {
  let t = s.require("type")?;
  let kind = ActionType::ALL.iter().find(|(n, _)| *n == t.value).map(|(_, k)| *k).ok_or_else(|| {
    err(
      t.line,
      t.value_col,
      format!(
        "unknown action type `{}` (point_fixed|monopole|multi_monopole|free_hopf|free_bundle)",
        t.value
      ),
    )
  })?;
  let charges = match s.take("charges") {
    Some(e) => unsigned_list(&e.value, e.line, e.value_col)?,
    None => Vec::new(),
  };
  let tr = s.require("truncation")?;
  let truncation: u64 = parse_unsigned(&tr.value, tr.line, tr.value_col)?;
  let bundle = match s.take("bundle") {
    Some(b) => {
      resolve(spec.bundle(&b.value), "bundle", &b)?;
      Some(b.value)
    }
    None => None,
  };
  let h = s.take("h").map(|e| int_list(&e)).transpose()?;
  let line = s.line;
  match kind {
    ActionType::Monopole if charges.len() != 1 => {
      return Err(err(line, 1, "monopole takes exactly one charge"))
    }
    ActionType::MultiMonopole if charges.is_empty() => {
      return Err(err(line, 1, "multi_monopole takes at least one charge"))
    }
    ActionType::PointFixed | ActionType::FreeHopf | ActionType::FreeBundle if !charges.is_empty() => {
      return Err(err(line, 1, format!("{} takes no charges", kind.as_str())))
    }
    ActionType::FreeBundle if bundle.is_none() => return Err(err(line, 1, "free_bundle needs `bundle`")),
    _ => {}
  }
  if kind != ActionType::FreeBundle && bundle.is_some() {
    return Err(err(line, 1, "only free_bundle takes `bundle`"));
  }
  Ok(ActionDecl { name: s.name.clone(), kind, charges, truncation, bundle, h })
}

// ---------------------------------------------------------------------------
// serialization

fn join<T: fmt::Display>(v: &[T]) -> String {
  v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn matrix_str(m: &IntMatrix) -> String {
  m.to_string()
}

impl fmt::Display for SpecFile {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, s) in self.sections.iter().enumerate() {
      if i > 0 {
        writeln!(f)?;
      }
      write!(f, "{s}")?;
    }
    Ok(())
  }
}

impl fmt::Display for Section {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      Section::Complex(c) => {
        writeln!(f, "[complex {}]", c.name)?;
        match &c.source {
          ComplexSource::Algebraic { ranks, deltas } => {
            writeln!(f, "kind = algebraic")?;
            writeln!(f, "ranks = {}", join(ranks))?;
            for (n, m) in deltas {
              writeln!(f, "delta{n} = {}", matrix_str(m))?;
            }
          }
          ComplexSource::Catalog { name, params } => {
            writeln!(f, "kind = catalog")?;
            writeln!(f, "name = {name}")?;
            if !params.is_empty() {
              writeln!(f, "params = {}", join(params))?;
            }
          }
          ComplexSource::Simplicial { facets } => {
            writeln!(f, "kind = simplicial")?;
            let fs: Vec<String> = facets.iter().map(|s| join(s)).collect();
            writeln!(f, "facets = {}", fs.join("; "))?;
          }
        }
        for (l, v) in &c.labels {
          writeln!(f, "label.{l} = {}", join(v))?;
        }
        for (l, n, m) in &c.mus {
          writeln!(f, "mu.{l}.{n} = {}", matrix_str(m))?;
        }
        Ok(())
      }
      Section::Bundle(b) => {
        writeln!(f, "[bundle {}]", b.name)?;
        writeln!(f, "base = {}", b.base)?;
        match &b.euler {
          EulerSpec::Coeffs(v) => writeln!(f, "euler = coeffs={}", join(v)),
          EulerSpec::Labels(terms) if terms.is_empty() => writeln!(f, "euler = 0"),
          EulerSpec::Labels(terms) => {
            let parts: Vec<String> = terms.iter().map(|(c, l)| format!("{c}*{l}")).collect();
            writeln!(f, "euler = {}", parts.join(" + "))
          }
        }
      }
      Section::Flux(x) => {
        writeln!(f, "[flux {}]", x.name)?;
        writeln!(f, "bundle = {}", x.bundle)?;
        match &x.h {
          FluxSpec::Class(v) => writeln!(f, "h = {}", join(v)),
          FluxSpec::Coeffs(v) => writeln!(f, "h = coeffs={}", join(v)),
        }
      }
      Section::Action(a) => {
        writeln!(f, "[action {}]", a.name)?;
        writeln!(f, "type = {}", a.kind.as_str())?;
        if !a.charges.is_empty() {
          writeln!(f, "charges = {}", join(&a.charges))?;
        }
        writeln!(f, "truncation = {}", a.truncation)?;
        if let Some(b) = &a.bundle {
          writeln!(f, "bundle = {b}")?;
        }
        if let Some(h) = &a.h {
          writeln!(f, "h = {}", join(h))?;
        }
        Ok(())
      }
    }
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::chain::int_vec;

  const SAMPLE: &str = "\
# a few declarations
[complex c]
kind = algebraic
ranks = 1,1

[complex cp2]
kind = catalog
name = cp
params = 2

[bundle b]
base = cp2
euler = 5*u   # the k = 5 monopole

[flux h0]
bundle = b
h =

[action m]
type = monopole
charges = 3
truncation = 2
";

  #[test]
  fn parses_sample() {
    let spec = parse_spec(SAMPLE).unwrap();
    assert_eq!(spec.sections.len(), 5);
    assert_eq!(
      spec.complex("c").unwrap().source,
      ComplexSource::Algebraic { ranks: vec![1, 1], deltas: vec![] }
    );
    assert_eq!(spec.bundle("b").unwrap().euler, EulerSpec::Labels(vec![(BigInt::from(5), "u".into())]));
    let m = spec.action("m").unwrap();
    assert_eq!((m.kind, m.charges.clone(), m.truncation), (ActionType::Monopole, vec![3], 2));
  }

  #[test]
  fn round_trip() {
    let spec = parse_spec(SAMPLE).unwrap();
    let again = parse_spec(&spec.to_string()).unwrap();
    assert_eq!(spec, again);
  }

  #[test]
  fn euler_expressions() {
    let e = |s: &str| {
      let entry = Entry { key: "euler".into(), value: s.into(), line: 1, value_col: 9 };
      euler_terms(&entry)
    };
    let v = e("3*u - 2*v + w").unwrap();
    assert_eq!(
      v,
      vec![(BigInt::from(3), "u".into()), (BigInt::from(-2), "v".into()), (BigInt::from(1), "w".into())]
    );
    assert_eq!(e("-u").unwrap(), vec![(BigInt::from(-1), "u".into())]);
    assert!(e("2*-u").is_err());
    assert_eq!(
      e("-3*u + -1*v").unwrap(),
      vec![(BigInt::from(-3), "u".into()), (BigInt::from(-1), "v".into())]
    );
    assert!(e("0").unwrap().is_empty());
    assert!(e("3*").is_err());
  }

  #[test]
  fn errors_have_positions() {
    let cases = [
      ("[complex c]\nkind = algebraic\nranks = 1,x\n", 3, 11),
      ("kind = catalog\n", 1, 1),
      ("[bundle b]\nbase = nowhere\neuler = u\n", 2, 8),
      ("[complex c]\nkind = catalog\nname = cp\n[complex c]\nkind = catalog\nname = cp\n", 4, 2),
      ("[complex c]\nkind = weird\n", 2, 8),
      ("[widget w]\n", 1, 2),
      ("[complex c]\nkind = catalog\nname = cp\ncolour = red\n", 4, 1),
      ("[complex c]\nkind = catalog\nkind = catalog\n", 3, 1),
    ];
    for (text, line, column) in cases {
      match parse_spec(text) {
        Err(Error::Parse { line: l, column: c, .. }) => assert_eq!((l, c), (line, column), "{text}"),
        other => panic!("expected a parse error for {text:?}, got {other:?}"),
      }
    }
  }

  #[test]
  fn algebraic_with_cup_table_round_trips() {
    let text = "\
[complex s]
kind = algebraic
ranks = 1,0,1
label.u = 1
mu.u.0 = 1
";
    let spec = parse_spec(text).unwrap();
    let c = spec.complex("s").unwrap();
    assert_eq!(c.labels, vec![("u".to_string(), int_vec([1]))]);
    assert_eq!(c.mus.len(), 1);
    assert_eq!(parse_spec(&spec.to_string()).unwrap(), spec);
  }

  #[test]
  fn flux_and_action_variants_round_trip() {
    let text = "\
[complex t]
kind = simplicial
facets = 0,1,3; 1,2,4
label.vol = 1,0
[bundle b]
base = t
euler = coeffs=0,0
[flux f]
bundle = b
h = coeffs=1,0,0
[action a]
type = free_bundle
truncation = 3
bundle = b
h = 1
[action z]
type = multi_monopole
charges = 1,2
truncation = 2
";
    let spec = parse_spec(text).unwrap();
    assert_eq!(parse_spec(&spec.to_string()).unwrap(), spec);
    assert!(parse_spec("[action a]\ntype = monopole\ntruncation = 2\n").is_err());
    assert!(parse_spec("[action a]\ntype = free_bundle\ntruncation = 2\n").is_err());
  }
}
