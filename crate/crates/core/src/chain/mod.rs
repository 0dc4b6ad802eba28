//! Exact integer linear algebra and cochain-complex machinery.

pub mod cohomology;
pub mod complex;
pub mod exact;
pub mod matrix;
pub mod snf;
pub mod solve;

pub use cohomology::{
  class_coordinates, cohomology, cohomology_all, induced_map, CohomologyGroup, GroupProfile,
};
pub use complex::{
  cone_operator, mapping_cone, tensor_product, validate_complex, CochainMap, GradedComplex, MappingCone,
  ValidationReport,
};
pub use exact::{cone_sequence, GroupSequence, NodeCheck};
pub use matrix::{int_vec, IntMatrix, IntVector};
pub use snf::{smith_normal_form, SnfDecomposition};
pub use solve::{integer_kernel, solve_integer_system, IntegerSolution, Lattice};
