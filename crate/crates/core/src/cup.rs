//! Chain-level realizations of "cup with a degree-2 class".
//!
//! A simplicial base realizes any 2-cocycle directly through the
//! Alexander–Whitney operator. An algebraic base carries a table of declared
//! degree-2 generators, each with a representative cocycle and an explicit
//! operator; other classes are realized as integer combinations of the table.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chain::{cohomology, solve_integer_system, CochainMap, GradedComplex, IntMatrix, IntVector};
use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// One declared generator of `H²` and its multiplication operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupEntry {
  pub label: String,
  pub cocycle: IntVector,
  pub operator: CochainMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CupStructure {
  /// Alexander–Whitney on a simplicial complex, truncated at `max_degree`,
  /// with optional named degree-2 cocycles.
  Simplicial { complex: SimplicialComplex, max_degree: usize, classes: Vec<(String, IntVector)> },
  /// Declared table on an algebraic complex.
  Table(Vec<CupEntry>),
}

/// A 2-cocycle together with its multiplication operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
  pub cocycle: IntVector,
  pub operator: CochainMap,
  /// Table coefficients used, when the structure is a table.
  pub coefficients: Option<Vec<BigInt>>,
}

impl CupStructure {
  pub fn provenance(&self) -> &'static str {
    match self {
      CupStructure::Simplicial { .. } => "simplicial-AW",
      CupStructure::Table(_) => "catalog-algebraic",
    }
  }

  pub fn labels(&self) -> Vec<String> {
    match self {
      CupStructure::Simplicial { classes, .. } => classes.iter().map(|(l, _)| l.clone()).collect(),
      CupStructure::Table(t) => t.iter().map(|e| e.label.clone()).collect(),
    }
  }

  pub fn entry(&self, label: &str) -> Option<&CupEntry> {
    match self {
      CupStructure::Table(t) => t.iter().find(|e| e.label == label),
      CupStructure::Simplicial { .. } => None,
    }
  }

  /// Checks every table operator against the base (degree 2, chain map).
  pub fn validate(&self, base: &GradedComplex) -> Result<()> {
    if let CupStructure::Table(t) = self {
      for e in t {
        if e.operator.degree() != 2 {
          return Err(Error::BadParams(format!("cup operator `{}` must have degree 2", e.label)));
        }
        e.operator.ensure_chain_map(base, base)?;
        if e.cocycle.len() != base.rank(2) {
          return Err(Error::DimensionMismatch(format!("class `{}` has wrong length", e.label)));
        }
        cohomology(base, 2)?.coordinates(&e.cocycle)?;
      }
    }
    Ok(())
  }

  /// Operator for an integer combination of table labels.
  pub fn combination(&self, base: &GradedComplex, terms: &[(BigInt, String)]) -> Result<Realization> {
    let table = match self {
      CupStructure::Table(table) => table,
      CupStructure::Simplicial { classes, .. } => {
        let mut z = vec![BigInt::zero(); base.rank(2)];
        for (c, label) in terms {
          let (_, v) = classes
            .iter()
            .find(|(l, _)| l == label)
            .ok_or_else(|| Error::UnknownName { kind: "class label", name: label.clone() })?;
          for (a, b) in z.iter_mut().zip(v) {
            *a += c * b;
          }
        }
        return self.realize(base, &z);
      }
    };
    let mut coefficients = vec![BigInt::zero(); table.len()];
    for (c, label) in terms {
      let i = table
        .iter()
        .position(|e| &e.label == label)
        .ok_or_else(|| Error::UnknownName { kind: "class label", name: label.clone() })?;
      coefficients[i] += c;
    }
    Ok(combine(base, table, coefficients))
  }

  /// Realizes the class of the 2-cocycle `z`. Table structures keep `z` itself
  /// when it is literally a combination of table cocycles, and otherwise replace
  /// it by a cohomologous combination.
  pub fn realize(&self, base: &GradedComplex, z: &[BigInt]) -> Result<Realization> {
    match self {
      CupStructure::Simplicial { complex, max_degree, .. } => {
        let e = complex.cochain(2, z.to_vec())?;
        let operator = complex.cup_operator(&e, *max_degree)?;
        Ok(Realization { cocycle: z.to_vec(), operator, coefficients: None })
      }
      CupStructure::Table(table) if base.top_degree() < 2 => {
        Ok(combine(base, table, vec![BigInt::zero(); table.len()]))
      }
      CupStructure::Table(table) => {
        let h2 = cohomology(base, 2)?;
        let target = h2.coordinates(z)?;
        if table.is_empty() {
          if target.iter().all(Zero::is_zero) {
            return Ok(combine(base, table, Vec::new()));
          }
          return Err(Error::Unrealizable("base declares no degree-2 generators".into()));
        }
        let columns: Vec<IntVector> = table.iter().map(|e| e.cocycle.clone()).collect();
        let literal = IntMatrix::from_columns(z.len(), &columns);
        if let Some(sol) = solve_integer_system(&literal, z)? {
          return Ok(combine(base, table, sol.particular));
        }
        // [coords of entries | torsion relations] · (c, t) = coords(z)
        let n = h2.len();
        let mut m = IntMatrix::zeros(n, table.len() + h2.torsion.len());
        for (j, e) in table.iter().enumerate() {
          for (i, x) in h2.coordinates(&e.cocycle)?.into_iter().enumerate() {
            m[(i, j)] = x;
          }
        }
        for (i, d) in h2.torsion.iter().enumerate() {
          m[(i, table.len() + i)] = d.clone();
        }
        let sol = solve_integer_system(&m, &target)?.ok_or_else(|| {
          Error::Unrealizable("class is not an integer combination of the declared generators".into())
        })?;
        Ok(combine(base, table, sol.particular[..table.len()].to_vec()))
      }
    }
  }
}

fn combine(base: &GradedComplex, table: &[CupEntry], coefficients: Vec<BigInt>) -> Realization {
  let mut cocycle = vec![BigInt::zero(); base.rank(2)];
  let mut operator = CochainMap::zero(base, base, 2);
  for (c, e) in coefficients.iter().zip(table) {
    if c.is_zero() {
      continue;
    }
    for (a, b) in cocycle.iter_mut().zip(&e.cocycle) {
      *a += c * b;
    }
    operator = operator.add(&e.operator.scale(c)).expect("same shape");
  }
  Realization { cocycle, operator, coefficients: Some(coefficients) }
}
