//! Exactness checks for sequences of finitely generated abelian groups.

use serde::Serialize;

use super::cohomology::{cohomology_all, induced_map, zero_group, CohomologyGroup, GroupProfile};
use super::complex::{CochainMap, GradedComplex, MappingCone};
use super::matrix::{IntMatrix, IntVector};
use super::solve::{integer_kernel, Lattice};
use crate::error::Result;

/// A finite sequence `G₀ → G₁ → … → G_m`; `maps[i] : G_i → G_{i+1}` in generator coordinates.
#[derive(Clone, Debug)]
pub struct GroupSequence {
  pub labels: Vec<String>,
  pub groups: Vec<CohomologyGroup>,
  pub maps: Vec<IntMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeCheck {
  pub node: String,
  pub group: GroupProfile,
  pub exact: bool,
}

impl GroupSequence {
  /// Exactness at every interior node.
  pub fn check(&self) -> Vec<NodeCheck> {
    (1..self.groups.len().saturating_sub(1))
      .map(|i| NodeCheck {
        node: self.labels[i].clone(),
        group: self.groups[i].profile(),
        exact: exact_at(&self.groups[i], &self.maps[i - 1], &self.maps[i], &self.groups[i + 1]),
      })
      .collect()
  }
}

/// `im f = ker g` inside `X`, with `f : Y → X` and `g : X → Z` given in coordinates.
pub fn exact_at(x: &CohomologyGroup, f: &IntMatrix, g: &IntMatrix, z: &CohomologyGroup) -> bool {
  let image = image_lattice(x, f);
  let kernel = kernel_lattice(x, g, z);
  image.contains_lattice(&kernel) && kernel.contains_lattice(&image)
}

/// Preimage of the torsion relations: lifts of `im f` plus the relations of `X`.
pub fn image_lattice(x: &CohomologyGroup, f: &IntMatrix) -> Lattice {
  let dim = x.len();
  Lattice::spanned_by(dim, (0..f.cols()).map(|j| f.column(j))).join(&x.relations())
}

/// `{x ∈ Z^dim X : g·x ∈ relations(Z)}`.
pub fn kernel_lattice(x: &CohomologyGroup, g: &IntMatrix, z: &CohomologyGroup) -> Lattice {
  let dim = x.len();
  let zt = z.torsion.len();
  // [g | diag(d) padded] · (x, y) = 0
  let mut stacked = IntMatrix::zeros(z.len(), dim + zt);
  stacked.set_block(0, 0, g);
  for (i, d) in z.torsion.iter().enumerate() {
    stacked[(i, dim + i)] = d.clone();
  }
  let gens = integer_kernel(&stacked).into_iter().map(|v| v[..dim].to_vec()).collect::<Vec<IntVector>>();
  Lattice::spanned_by(dim, gens).join(&x.relations())
}

/// Long exact sequence of a mapping cone of `f : A → B` (degree `d`):
/// `… → H^{n+d-1}(B) → H^n(Cone) → H^n(A) → H^{n+d}(B) → H^{n+1}(Cone) → …`
/// over every degree of the cone.
pub fn cone_sequence(
  cone: &MappingCone,
  f: &CochainMap,
  a: &GradedComplex,
  b: &GradedComplex,
) -> Result<GroupSequence> {
  let hc = cohomology_all(&cone.complex)?;
  let ha = cohomology_all(a)?;
  let hb = cohomology_all(b)?;
  let d = f.degree();
  let get = |hs: &[CohomologyGroup], n: i64| -> CohomologyGroup {
    if n < 0 {
      zero_group(0)
    } else {
      hs.get(n as usize).cloned().unwrap_or_else(|| zero_group(n as usize))
    }
  };
  let mut labels = vec![format!("H^{}(B)", d - 1)];
  let mut groups = vec![get(&hb, d - 1)];
  let mut maps = Vec::new();
  let top = cone.complex.top_degree() as i64;
  for n in 0..=top {
    let (prev_b, c_n, a_n, b_n) = (groups.last().unwrap().clone(), get(&hc, n), get(&ha, n), get(&hb, n + d));
    maps.push(map_or_zero(&cone.inclusion, b, &cone.complex, &prev_b, &c_n, n + d - 1)?);
    maps.push(map_or_zero(&cone.projection, &cone.complex, a, &c_n, &a_n, n)?);
    maps.push(map_or_zero(f, a, b, &a_n, &b_n, n)?);
    labels.extend([format!("H^{n}(Cone)"), format!("H^{n}(A)"), format!("H^{}(B)", n + d)]);
    groups.extend([c_n, a_n, b_n]);
  }
  Ok(GroupSequence { labels, groups, maps })
}

/// Induced map on a possibly out-of-range source degree.
pub(crate) fn map_or_zero(
  f: &CochainMap,
  a: &GradedComplex,
  b: &GradedComplex,
  source: &CohomologyGroup,
  target: &CohomologyGroup,
  source_degree: i64,
) -> Result<IntMatrix> {
  if source.is_zero() || target.is_zero() || source_degree < 0 {
    return Ok(IntMatrix::zeros(target.len(), source.len()));
  }
  induced_map(f, a, b, source, target)
}
