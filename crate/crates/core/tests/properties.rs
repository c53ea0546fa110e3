mod common;

use depthzero::abelian::{cokernel, dual_group, snf, FinAbGroup, IntMatrix};
use depthzero::cohomology::{h1, tate_h1_cyclic};
use depthzero::galois::FiniteGroup;
use depthzero::gmodule::{direct_sum, GammaModule};
use depthzero::langlands::prime_to_p_part;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r))
}

fn square() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
}

fn finite_group() -> impl Strategy<Value = FinAbGroup> {
    prop::collection::vec(1u64..=40, 0..=4)
        .prop_map(|orders| FinAbGroup::from_invariants(orders.into_iter().map(BigInt::from)).unwrap())
}

fn power_character(n: usize, u: u64, m: u64) -> Vec<i64> {
    let mut v = 1i64;
    (0..n)
        .map(|_| {
            let out = v;
            v = v * u as i64 % m as i64;
            out
        })
        .collect()
}

/// A character `ℤ/n → (ℤ/m)×` sending the generator to a unit `u` with `uⁿ = 1`.
fn cyclic_character() -> impl Strategy<Value = (usize, u64, u64)> {
    (2usize..=6, 2u64..=12, 1u64..12).prop_filter_map("uⁿ ≢ 1", |(n, m, u)| {
        let u = u % m;
        let unit = common::gcd(u as i128, m as i128) == 1;
        (unit && power_character(n + 1, u, m)[n] == 1).then_some((n, m, u))
    })
}

fn character_module((n, m, u): (usize, u64, u64)) -> GammaModule {
    GammaModule::cyclic_character(FiniteGroup::cyclic(n), m, &power_character(n, u, m)).unwrap()
}

proptest! {
    #[test]
    fn smith_form_contract(rows in matrix()) {
        let a = IntMatrix::from_rows(&rows);
        let f = snf(&a);
        prop_assert_eq!(f.u.mul(&a).unwrap().mul(&f.v).unwrap(), f.d.clone());
        prop_assert!(f.u.is_unimodular() && f.v.is_unimodular());
        let nonzero: Vec<BigInt> = f.diagonal().into_iter().filter(|d| !d.is_zero()).collect();
        prop_assert!(nonzero.iter().all(Signed::is_positive));
        prop_assert!(nonzero.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        let ours: Vec<i128> = nonzero.iter().map(|d| d.to_i128().unwrap()).collect();
        prop_assert_eq!(ours, common::determinantal_invariants(&rows));
    }

    #[test]
    fn cokernel_order_is_the_determinant(rows in square()) {
        let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let det = common::det(&wide);
        let c = cokernel(&IntMatrix::from_rows(&rows)).unwrap();
        if det == 0 {
            prop_assert!(!c.is_finite());
        } else {
            prop_assert_eq!(c.order(), Some(BigInt::from(det.abs())));
        }
    }

    #[test]
    fn duality_is_involutive_on_finite_groups(g in finite_group()) {
        prop_assert_eq!(dual_group(&dual_group(&g)), g.clone());
        prop_assert_eq!(dual_group(&g), g);
    }

    #[test]
    fn prime_to_p_part_is_idempotent_and_additive(a in finite_group(), b in finite_group(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let pa = prime_to_p_part(&a, p).unwrap();
        prop_assert_eq!(prime_to_p_part(&pa, p).unwrap(), pa.clone());
        prop_assert!(pa.order().unwrap() % BigInt::from(p) != BigInt::zero());
        let pb = prime_to_p_part(&b, p).unwrap();
        prop_assert_eq!(prime_to_p_part(&a.direct_sum(&b), p).unwrap(), pa.direct_sum(&pb));
    }

    #[test]
    fn h1_of_characters_matches_the_cyclic_formula(c in cyclic_character()) {
        let m = character_module(c);
        prop_assert_eq!(h1(&m).unwrap().group, tate_h1_cyclic(&m, 1).unwrap());
    }

    #[test]
    fn h1_is_additive(c in cyclic_character(), m2 in 2u64..=12) {
        let a = character_module(c);
        let b = character_module((c.0, m2, 1));
        let sum = direct_sum(&a, &b).unwrap();
        prop_assert_eq!(h1(&sum).unwrap().group, h1(&a).unwrap().group.direct_sum(&h1(&b).unwrap().group));
    }
}
