//! Shipped models, addressable by name.
//!
//! Algebraic models: `cp` (truncated `BS¹`, i.e. `CPᴺ`, ring `Z[u]/(u^{N+1})`)
//! and `lens` (`L(k;N)`, i.e. truncated `BZ_k`). Simplicial models: `sphere2`
//! (boundary of the tetrahedron), `torus2` (the 7-vertex torus), `rp2` (the
//! 6-vertex projective plane) and the triangle `circle`. `point` is both.
//!
//! The cup structure of `cp` is declared rather than derived; it is the only
//! ring structure on `Z[u]/(u^{N+1})` with `u` in degree 2, and the
//! cone-versus-lens tests exercise it.

use num_bigint::BigInt;
use num_traits::One;

use crate::chain::{CochainMap, GradedComplex, IntMatrix};
use crate::cup::{CupEntry, CupStructure};
use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

pub const NAMES: [&str; 7] = ["cp", "lens", "circle", "point", "sphere2", "torus2", "rp2"];

/// A named model: cochain complex, optional triangulation, declared `H²`
/// classes with their cup operators, and restriction maps used for gluing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogModel {
  pub name: String,
  pub params: Vec<u64>,
  pub complex: GradedComplex,
  pub simplicial: Option<SimplicialComplex>,
  pub cup: CupStructure,
  pub restrictions: Vec<Restriction>,
}

/// Cochain map from a model to another catalog model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
  pub target: String,
  pub target_complex: GradedComplex,
  pub map: CochainMap,
}

pub fn catalog_build(name: &str, params: &[u64]) -> Result<CatalogModel> {
  let expect = |n: usize| -> Result<()> {
    if params.len() == n {
      Ok(())
    } else {
      Err(Error::BadParams(format!("`{name}` takes {n} parameter(s), got {}", params.len())))
    }
  };
  let model = match name {
    "cp" => {
      expect(1)?;
      cp(positive(params[0], "N")?)
    }
    "lens" => {
      expect(2)?;
      lens(positive(params[0], "k")?, positive(params[1], "N")?)
    }
    "circle" => {
      expect(0)?;
      circle()
    }
    "point" => {
      expect(0)?;
      point()
    }
    "sphere2" => {
      expect(0)?;
      sphere2()
    }
    "torus2" => {
      expect(0)?;
      torus2()
    }
    "rp2" => {
      expect(0)?;
      rp2()
    }
    other => return Err(Error::UnknownName { kind: "catalog model", name: other.to_string() }),
  };
  model.check()?;
  Ok(model)
}

fn positive(x: u64, what: &str) -> Result<u64> {
  if x == 0 {
    Err(Error::BadParams(format!("{what} must be at least 1")))
  } else {
    Ok(x)
  }
}

impl CatalogModel {
  /// Load-time checks: valid complex, cup operators and restrictions are chain maps.
  pub fn check(&self) -> Result<()> {
    self.complex.ensure_valid()?;
    self.cup.validate(&self.complex)?;
    for r in &self.restrictions {
      r.map.ensure_chain_map(&self.complex, &r.target_complex)?;
    }
    Ok(())
  }

  pub fn restriction(&self, target: &str) -> Option<&Restriction> {
    self.restrictions.iter().find(|r| r.target == target)
  }
}

/// `CPᴺ`: ranks `1,0,1,…,1` in degrees `0..=2N`, zero differentials, `u` shifts by 2.
pub fn cp(n: u64) -> CatalogModel {
  let complex = cp_complex(n);
  let u = CupEntry { label: "u".into(), cocycle: vec![BigInt::one()], operator: u_shift(&complex) };
  let mut restrictions = Vec::new();
  if n > 1 {
    restrictions.push(Restriction {
      target: "sphere2".into(),
      target_complex: cp_complex(1),
      map: cp_to_sphere(n),
    });
  }
  CatalogModel {
    name: "cp".into(),
    params: vec![n],
    complex,
    simplicial: None,
    cup: CupStructure::Table(vec![u]),
    restrictions,
  }
}

pub fn cp_complex(n: u64) -> GradedComplex {
  let top = 2 * n as usize;
  GradedComplex::with_zero_differentials((0..=top).map(|d| usize::from(d % 2 == 0)).collect())
}

/// `u ⌣ ·` on a complex with ranks `1,0,1,…`: identity blocks between even degrees.
fn u_shift(c: &GradedComplex) -> CochainMap {
  let blocks = (0..=c.top_degree() as i64)
    .map(|n| {
      let (rows, cols) = (c.rank(n + 2), c.rank(n));
      if rows == 1 && cols == 1 {
        IntMatrix::identity(1)
      } else {
        IntMatrix::zeros(rows, cols)
      }
    })
    .collect();
  CochainMap::new(c, c, 2, blocks).expect("shapes")
}

/// Restriction `CPᴺ → CP¹ = S²` (inclusion of the bottom cell): iso in degrees 0 and 2.
pub fn cp_to_sphere(n: u64) -> CochainMap {
  let source = cp_complex(n);
  let target = cp_complex(1);
  let blocks = (0..=source.top_degree() as i64)
    .map(|d| {
      let (rows, cols) = (target.rank(d), source.rank(d));
      if rows == 1 && cols == 1 {
        IntMatrix::identity(1)
      } else {
        IntMatrix::zeros(rows, cols)
      }
    })
    .collect();
  CochainMap::new(&source, &target, 0, blocks).expect("shapes")
}

/// `L(k;N)`: ranks 1 in degrees `0..=2N+1`; `δ` is 0 from even degrees and `k` from odd.
pub fn lens(k: u64, n: u64) -> CatalogModel {
  CatalogModel {
    name: "lens".into(),
    params: vec![k, n],
    complex: lens_complex(k, n),
    simplicial: None,
    cup: CupStructure::Table(Vec::new()),
    restrictions: Vec::new(),
  }
}

pub fn lens_complex(k: u64, n: u64) -> GradedComplex {
  let top = 2 * n as usize + 1;
  let deltas = (0..top).map(|d| IntMatrix::from_rows(&[[if d % 2 == 1 { k as i64 } else { 0 }]])).collect();
  GradedComplex::new(vec![1; top + 1], deltas).expect("shapes")
}

pub fn point() -> CatalogModel {
  let complex = GradedComplex::point();
  let circle = circle_algebraic();
  let map = CochainMap::new(&complex, &circle, 0, vec![IntMatrix::identity(1)]).expect("shapes");
  CatalogModel {
    name: "point".into(),
    params: Vec::new(),
    complex,
    simplicial: Some(SimplicialComplex::from_facets(&[vec![0]]).expect("point")),
    cup: CupStructure::Table(Vec::new()),
    restrictions: vec![Restriction { target: "circle".into(), target_complex: circle, map }],
  }
}

/// Algebraic circle: ranks `1,1`, zero differential.
pub fn circle_algebraic() -> GradedComplex {
  GradedComplex::with_zero_differentials(vec![1, 1])
}

pub fn circle() -> CatalogModel {
  simplicial_model("circle", &[vec![0, 1], vec![0, 2], vec![1, 2]], None)
}

pub fn sphere2() -> CatalogModel {
  simplicial_model("sphere2", &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], Some("u"))
}

/// Facets `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus2_facets() -> Vec<Vec<usize>> {
  let mut facets = Vec::new();
  for i in 0..7 {
    for offsets in [[0, 1, 3], [0, 2, 3]] {
      let mut f: Vec<usize> = offsets.iter().map(|o| (i + o) % 7).collect();
      f.sort_unstable();
      facets.push(f);
    }
  }
  facets.sort();
  facets
}

pub fn torus2() -> CatalogModel {
  simplicial_model("torus2", &torus2_facets(), Some("vol"))
}

pub fn rp2_facets() -> Vec<Vec<usize>> {
  [
    [0, 1, 3],
    [0, 1, 5],
    [0, 2, 4],
    [0, 2, 5],
    [0, 3, 4],
    [1, 2, 3],
    [1, 2, 4],
    [1, 4, 5],
    [2, 3, 5],
    [3, 4, 5],
  ]
  .iter()
  .map(|f| f.to_vec())
  .collect()
}

pub fn rp2() -> CatalogModel {
  simplicial_model("rp2", &rp2_facets(), Some("w"))
}

fn simplicial_model(name: &str, facets: &[Vec<usize>], h2_label: Option<&str>) -> CatalogModel {
  let k = SimplicialComplex::from_facets(facets).expect("catalog facets are valid");
  let max_degree = k.dimension();
  let complex = k.cochain_complex(max_degree);
  let classes = match h2_label {
    Some(label) => {
      let h2 = crate::chain::cohomology(&complex, 2).expect("valid");
      vec![(label.to_string(), h2.generators[0].clone())]
    }
    None => Vec::new(),
  };
  CatalogModel {
    name: name.into(),
    params: Vec::new(),
    complex,
    simplicial: Some(k.clone()),
    cup: CupStructure::Simplicial { complex: k, max_degree, classes },
    restrictions: Vec::new(),
  }
}

/// `m` disjoint copies of `S²` (algebraic): ranks `m,0,m`, class `gᵢ` is the
/// generator on the `i`-th sphere.
pub fn disjoint_spheres(m: usize) -> (GradedComplex, CupStructure) {
  let c = GradedComplex::with_zero_differentials(vec![m, 0, m]);
  let table = (0..m)
    .map(|i| {
      let mut b0 = IntMatrix::zeros(m, m);
      b0[(i, i)] = BigInt::one();
      let blocks = vec![b0, IntMatrix::zeros(0, 0), IntMatrix::zeros(0, m)];
      let mut cocycle = vec![BigInt::from(0); m];
      cocycle[i] = BigInt::one();
      CupEntry {
        label: format!("g{}", i + 1),
        cocycle,
        operator: CochainMap::new(&c, &c, 2, blocks).expect("shapes"),
      }
    })
    .collect();
  (c, CupStructure::Table(table))
}

/// `R³` minus `m` points, up to homotopy a wedge of `m` two-spheres: ranks
/// `1,0,m`; class `aᵢ` is dual to the `i`-th sphere.
pub fn sphere_wedge(m: usize) -> (GradedComplex, CupStructure) {
  let c = GradedComplex::with_zero_differentials(vec![1, 0, m]);
  let table = (0..m)
    .map(|i| {
      let mut b0 = IntMatrix::zeros(m, 1);
      b0[(i, 0)] = BigInt::one();
      let blocks = vec![b0, IntMatrix::zeros(0, 0), IntMatrix::zeros(0, m)];
      let mut cocycle = vec![BigInt::from(0); m];
      cocycle[i] = BigInt::one();
      CupEntry {
        label: format!("a{}", i + 1),
        cocycle,
        operator: CochainMap::new(&c, &c, 2, blocks).expect("shapes"),
      }
    })
    .collect();
  (c, CupStructure::Table(table))
}

/// Restriction of the wedge to the `m` boundary spheres: `1 ↦ (1,…,1)`, `aᵢ ↦ gᵢ`.
pub fn wedge_to_spheres(m: usize) -> CochainMap {
  let (wedge, _) = sphere_wedge(m);
  let (spheres, _) = disjoint_spheres(m);
  let ones = IntMatrix::from_columns(m, &[vec![BigInt::one(); m]]);
  CochainMap::new(&wedge, &spheres, 0, vec![ones, IntMatrix::zeros(0, 0), IntMatrix::identity(m)])
    .expect("shapes")
}
