//! Random models shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;
use rand::RngExt;
use rand_chacha::ChaCha8Rng;
use tduality::borel::multi_monopole_base;
use tduality::catalog;
use tduality::chain::{integer_kernel, CochainMap, GradedComplex, IntMatrix, IntVector};
use tduality::gysin::EulerModel;
use tduality::tdual::TDualityTriple;

pub use rand::SeedableRng;
pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
  ChaCha8Rng::seed_from_u64(seed)
}

/// Random unimodular `n × n` matrix with its inverse.
fn unimodular(rng: &mut Rng, n: usize) -> (IntMatrix, IntMatrix) {
  let mut p = IntMatrix::identity(n);
  let mut q = IntMatrix::identity(n);
  if n < 2 {
    return (p, q);
  }
  for _ in 0..3 * n {
    let i = rng.random_range(0..n);
    let mut j = rng.random_range(0..n - 1);
    if j >= i {
      j += 1;
    }
    let c = BigInt::from(rng.random_range(-2i64..=2));
    // P ← E·P and Q ← Q·E⁻¹ keep Q = P⁻¹
    p.add_row_multiple(i, j, &c);
    q.add_col_multiple(j, i, &-c);
  }
  (p, q)
}

/// Random complex with ranks at most `max_rank` and top degree `top`: a direct
/// sum of `Z` and `Z →k Z` pieces, conjugated by random unimodular bases.
pub fn random_complex(rng: &mut Rng, top: usize, max_rank: usize) -> GradedComplex {
  let mut ranks = vec![0usize; top + 1];
  // (degree, k): an elementary piece Z in degree `degree` mapping by k to degree + 1
  let mut pieces: Vec<(usize, i64)> = Vec::new();
  for n in 0..=top {
    let tries = rng.random_range(0..=max_rank);
    for _ in 0..tries {
      let paired = n < top && rng.random_range(0..3) == 0;
      if paired && ranks[n] < max_rank && ranks[n + 1] < max_rank {
        let k = rng.random_range(1i64..=4) * if rng.random_range(0..2) == 0 { 1 } else { -1 };
        pieces.push((n, k));
        ranks[n] += 1;
        ranks[n + 1] += 1;
      } else if !paired && ranks[n] < max_rank {
        pieces.push((n, 0));
        ranks[n] += 1;
      }
    }
  }
  // position of each piece's cells
  let mut next = vec![0usize; top + 1];
  let mut deltas: Vec<IntMatrix> = (0..top).map(|n| IntMatrix::zeros(ranks[n + 1], ranks[n])).collect();
  let mut pending = Vec::new();
  for &(n, k) in &pieces {
    let src = next[n];
    next[n] += 1;
    if k != 0 {
      pending.push((n, src, k));
    }
  }
  for (n, src, k) in pending {
    let dst = next[n + 1];
    next[n + 1] += 1;
    deltas[n] = {
      let mut m = deltas[n].clone();
      let mut e = IntMatrix::zeros(m.rows(), m.cols());
      e.set_block(dst, src, &IntMatrix::scalar(1, &BigInt::from(k)));
      m = m.add(&e).unwrap();
      m
    };
  }
  conjugate(rng, &GradedComplex::checked(ranks, deltas).expect("elementary complex is valid"))
}

/// The same complex written in random unimodular bases.
pub fn conjugate(rng: &mut Rng, c: &GradedComplex) -> GradedComplex {
  let bases: Vec<(IntMatrix, IntMatrix)> = c.ranks().iter().map(|&r| unimodular(rng, r)).collect();
  let deltas = (0..c.top_degree())
    .map(|n| bases[n + 1].0.mul(&c.deltas()[n]).unwrap().mul(&bases[n].1).unwrap())
    .collect();
  GradedComplex::checked(c.ranks().to_vec(), deltas).expect("conjugate of a complex is a complex")
}

fn random_combination(rng: &mut Rng, basis: &[IntVector], len: usize, bound: i64) -> IntVector {
  let mut v = vec![BigInt::zero(); len];
  for b in basis {
    let c = BigInt::from(rng.random_range(-bound..=bound));
    for (x, y) in v.iter_mut().zip(b) {
      *x += &c * y;
    }
  }
  v
}

/// Random cochain map `C → C` of degree 2, drawn from the integer kernel of
/// the linear equations `δ μ_n = μ_{n+1} δ`.
pub fn random_degree_two_map(rng: &mut Rng, c: &GradedComplex) -> CochainMap {
  let top = c.top_degree() as i64;
  // unknown blocks μ_n : C^n → C^{n+2}, row-major, concatenated
  let mut offsets = Vec::new();
  let mut unknowns = 0;
  for n in 0..=top {
    offsets.push(unknowns);
    unknowns += c.rank(n + 2) * c.rank(n);
  }
  let var = |n: i64, i: usize, j: usize| offsets[n as usize] + i * c.rank(n) + j;
  let mut rows: Vec<Vec<BigInt>> = Vec::new();
  for n in 0..=top {
    // (δ_{n+2} μ_n − μ_{n+1} δ_n)[i][j] = 0 for i < rank(n+3), j < rank(n)
    let (d_hi, d_lo) = (c.delta(n + 2), c.delta(n));
    for i in 0..c.rank(n + 3) {
      for j in 0..c.rank(n) {
        let mut eq = vec![BigInt::zero(); unknowns];
        for l in 0..c.rank(n + 2) {
          eq[var(n, l, j)] += &d_hi[(i, l)];
        }
        if n < top {
          for l in 0..c.rank(n + 1) {
            eq[var(n + 1, i, l)] -= &d_lo[(l, j)];
          }
        }
        rows.push(eq);
      }
    }
  }
  let coeffs = if unknowns == 0 {
    Vec::new()
  } else if rows.is_empty() {
    (0..unknowns).map(|_| BigInt::from(rng.random_range(-2i64..=2))).collect()
  } else {
    let m = IntMatrix::from_entries(rows.len(), unknowns, rows.into_iter().flatten().collect()).unwrap();
    let kernel = integer_kernel(&m);
    random_combination(rng, &kernel, unknowns, 2)
  };
  let blocks = (0..=top)
    .map(|n| {
      let (r, k) = (c.rank(n + 2), c.rank(n));
      let start = offsets[n as usize];
      IntMatrix::from_entries(r, k, coeffs[start..start + r * k].to_vec()).unwrap()
    })
    .collect();
  CochainMap::checked(c, c, 2, blocks).expect("kernel solutions commute with δ")
}

/// Random algebraic Euler model: random base, random 2-cocycle, random degree-2 operator.
pub fn random_euler_model(rng: &mut Rng) -> EulerModel {
  let top = rng.random_range(2..=6);
  let base = random_complex(rng, top, 3);
  let cocycles = integer_kernel(&base.delta(2));
  let e = random_combination(rng, &cocycles, base.rank(2), 3);
  let mu = random_degree_two_map(rng, &base);
  EulerModel::algebraic(base, e, mu).expect("random model is valid")
}

/// Random flux cocycle on the total space of `model`.
pub fn random_flux(rng: &mut Rng, model: &EulerModel) -> IntVector {
  let t = model.total_space().unwrap();
  let cocycles = integer_kernel(&t.total.delta(3));
  random_combination(rng, &cocycles, t.total.rank(3), 3)
}

/// Catalog bundles: the bases every shipped test runs over, with named Euler classes.
pub fn catalog_bundles() -> Vec<(String, EulerModel)> {
  let mut out = Vec::new();
  for n in 1..=3u64 {
    for k in [0i64, 1, 2, 3, 5] {
      let m = catalog::cp(n);
      out.push((
        format!("cp({n}), {k}u"),
        EulerModel::from_labels(m.complex, m.cup, &[(BigInt::from(k), "u".into())]).unwrap(),
      ));
    }
  }
  for (name, model) in
    [("sphere2", catalog::sphere2()), ("torus2", catalog::torus2()), ("rp2", catalog::rp2())]
  {
    let label = model.cup.labels()[0].clone();
    for k in [0i64, 1, 2] {
      out.push((
        format!("{name}, {k}{label}"),
        EulerModel::from_labels(
          model.complex.clone(),
          model.cup.clone(),
          &[(BigInt::from(k), label.clone())],
        )
        .unwrap(),
      ));
    }
  }
  let circle = catalog::circle();
  out.push(("circle, 0".into(), EulerModel::trivial(circle.complex, circle.cup).unwrap()));
  for charges in [vec![1u64], vec![1, 1], vec![2, 3]] {
    let (g, cup) = multi_monopole_base(charges.len(), 2).unwrap();
    let terms: Vec<(BigInt, String)> =
      charges.iter().enumerate().map(|(i, &k)| (BigInt::from(k), format!("u{}", i + 1))).collect();
    out.push((
      format!("multi_monopole{charges:?}"),
      EulerModel::from_labels(g.complex().clone(), cup, &terms).unwrap(),
    ));
  }
  out
}

/// Random triple on a catalog base.
pub fn random_catalog_triple(rng: &mut Rng) -> (String, TDualityTriple) {
  let bundles = catalog_bundles();
  let (name, model) = bundles[rng.random_range(0..bundles.len())].clone();
  let flux = random_flux(rng, &model);
  (name, TDualityTriple::new(model, flux).unwrap())
}
