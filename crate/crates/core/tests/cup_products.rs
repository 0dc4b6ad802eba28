//! Cup products on the shipped triangulations.

mod common;

use common::rng;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::RngExt;
use tduality::catalog;
use tduality::chain::{cohomology, cohomology_all};
use tduality::simplicial::{Cochain, SimplicialComplex};

fn random_cochain<'a>(k: &'a SimplicialComplex, degree: usize, r: &mut common::Rng) -> Cochain<'a> {
  let values = (0..k.count(degree)).map(|_| BigInt::from(r.random_range(-3i64..=3))).collect();
  k.cochain(degree, values).unwrap()
}

fn torus() -> SimplicialComplex {
  catalog::torus2().simplicial.expect("torus is triangulated")
}

#[test]
fn torus_pairing_is_unimodular_and_alternating() {
  let k = torus();
  let c = k.full_cochain_complex();
  let (h1, h2) = (cohomology(&c, 1).unwrap(), cohomology(&c, 2).unwrap());
  assert_eq!(h1.profile().to_string(), "Z^2");
  let g: Vec<Cochain> = h1.generators.iter().map(|v| k.cochain(1, v.clone()).unwrap()).collect();
  let class = |x: &Cochain| h2.coordinates(x.values()).unwrap()[0].clone();
  let ab = class(&g[0].cup(&g[1]).unwrap());
  let ba = class(&g[1].cup(&g[0]).unwrap());
  assert_eq!(ab.magnitude(), &1u32.into());
  assert_eq!(ab, -ba);
  for x in &g {
    assert!(class(&x.cup(x).unwrap()).is_zero());
  }
}

#[test]
fn leibniz_and_associativity_on_cochains() {
  let mut r = rng(11);
  for model in [catalog::torus2(), catalog::rp2(), catalog::sphere2()] {
    let k = model.simplicial.unwrap();
    for _ in 0..10 {
      let (p, q) = (r.random_range(0..=1usize), r.random_range(0..=1usize));
      let (a, b) = (random_cochain(&k, p, &mut r), random_cochain(&k, q, &mut r));
      // δ(a ⌣ b) = δa ⌣ b + (−1)^p a ⌣ δb
      let lhs = a.cup(&b).unwrap().coboundary();
      let sign = BigInt::from(if p % 2 == 0 { 1 } else { -1 });
      let rhs = a.coboundary().cup(&b).unwrap().add(&a.cup(&b.coboundary()).unwrap().scale(&sign)).unwrap();
      assert_eq!(lhs.values(), rhs.values(), "{}", model.name);

      let c = random_cochain(&k, 2 - p - q, &mut r);
      let left = a.cup(&b).unwrap().cup(&c).unwrap();
      let right = a.cup(&b.cup(&c).unwrap()).unwrap();
      assert_eq!(left.values(), right.values(), "{}", model.name);
    }
  }
}

#[test]
fn unit_is_neutral() {
  let k = torus();
  let mut r = rng(3);
  let a = random_cochain(&k, 1, &mut r);
  assert_eq!(k.unit().cup(&a).unwrap().values(), a.values());
  assert_eq!(a.cup(&k.unit()).unwrap().values(), a.values());
}

#[test]
fn projective_plane_has_two_torsion() {
  let c = catalog::rp2().complex;
  let profiles: Vec<String> = cohomology_all(&c).unwrap().iter().map(|h| h.profile().to_string()).collect();
  assert_eq!(profiles, ["Z", "0", "Z/2"]);
}

#[test]
fn cup_operator_is_a_chain_map_for_random_cocycles() {
  let k = torus();
  let c = k.full_cochain_complex();
  let h2 = cohomology(&c, 2).unwrap();
  let mut r = rng(5);
  for _ in 0..10 {
    // a cocycle plus a random coboundary
    let base = h2.representative(&[BigInt::from(r.random_range(-3i64..=3))]);
    let noise = random_cochain(&k, 1, &mut r).coboundary();
    let e = k.cochain(2, base.iter().zip(noise.values()).map(|(x, y)| x + y).collect()).unwrap();
    let mu = k.cup_operator(&e, 2).unwrap();
    assert!(mu.chain_map_violation(&c, &c).is_none());
  }
}
