use num_bigint::BigInt;
use proptest::prelude::*;

use quintic_core::algebra::integer::{lift, modular_rank, rational_rank};
use quintic_core::algebra::{apply, kernel_basis, rank};
use quintic_core::bundles::{normal_h0, normal_splitting, SplittingType};
use quintic_core::cohom::{binomial, hyperplane_ideal_cohomology, ideal_cohomology, restriction_matrix};
use quintic_core::curve::{curve_in_hyperplane, random_curve, RationalCurveMap};
use quintic_core::{BinaryForm, Matrix, ModForm, PrimeField, Var};

fn small_field() -> PrimeField {
    PrimeField::new(7).unwrap()
}

fn form(field: &PrimeField, coeffs: Vec<u32>) -> ModForm {
    BinaryForm::new(coeffs.into_iter().map(|c| c % field.modulus()).collect())
}

/// Every normalized form of degree `n` over `field`.
fn all_monic(field: &PrimeField, n: usize) -> Vec<ModForm> {
    let p = field.modulus();
    let mut out = Vec::new();
    for lead in 0..=n {
        // Coefficients before `lead` are zero, `lead` is 1, the rest free.
        let free = n - lead;
        for code in 0..(p as usize).pow(free as u32) {
            let mut coeffs = vec![0u32; n + 1];
            coeffs[lead] = 1;
            let mut x = code;
            for c in coeffs.iter_mut().skip(lead + 1) {
                *c = (x % p as usize) as u32;
                x /= p as usize;
            }
            out.push(BinaryForm::new(coeffs));
        }
    }
    out
}

fn brute_force_gcd_degree(field: &PrimeField, a: &ModForm, b: &ModForm) -> usize {
    let max = a.degree().min(b.degree());
    (0..=max)
        .rev()
        .find(|&n| {
            all_monic(field, n)
                .iter()
                .any(|g| a.exact_div(field, g).is_some() && b.exact_div(field, g).is_some())
        })
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gcd_is_greatest_common_divisor(
        a in prop::collection::vec(0u32..7, 1..=4),
        b in prop::collection::vec(0u32..7, 1..=4),
    ) {
        let field = small_field();
        let (a, b) = (form(&field, a), form(&field, b));
        prop_assume!(!a.is_zero(&field) && !b.is_zero(&field));
        let g = a.gcd(&field, &b).unwrap();
        prop_assert!(a.exact_div(&field, &g).is_some());
        prop_assert!(b.exact_div(&field, &g).is_some());
        prop_assert_eq!(g.degree(), brute_force_gcd_degree(&field, &a, &b));
    }

    #[test]
    fn product_gcd_recovers_common_factor(
        a in prop::collection::vec(0u32..32003, 1..=4),
        b in prop::collection::vec(0u32..32003, 1..=4),
        c in prop::collection::vec(0u32..32003, 1..=3),
    ) {
        let field = PrimeField::default();
        let (a, b, c) = (form(&field, a), form(&field, b), form(&field, c));
        prop_assume!(!a.is_zero(&field) && !b.is_zero(&field) && !c.is_zero(&field));
        let g = a.multiply(&field, &c).gcd(&field, &b.multiply(&field, &c)).unwrap();
        prop_assert!(g.exact_div(&field, &c.normalized(&field)).is_some());
    }

    #[test]
    fn euler_identity_for_forms(coeffs in prop::collection::vec(0u32..32003, 1..=8)) {
        let field = PrimeField::default();
        let f = form(&field, coeffs);
        let d = f.degree();
        let s = BinaryForm::monomial(&field, 1, 0);
        let t = BinaryForm::monomial(&field, 1, 1);
        if d == 0 {
            return Ok(());
        }
        let lhs = s.multiply(&field, &f.derivative(&field, Var::S)).add(&field, &t.multiply(&field, &f.derivative(&field, Var::T)));
        prop_assert_eq!(lhs, f.scale(&field, &(d as u32)));
    }

    #[test]
    fn rank_nullity_and_kernel(rows in 1usize..8, cols in 1usize..8, seed in any::<u64>()) {
        let field = PrimeField::new(101).unwrap();
        let mut x = seed;
        let entries: Vec<u32> = (0..rows * cols)
            .map(|_| {
                x = quintic_core::curve::splitmix64(x);
                // Bias towards zero so that rank deficiency is common.
                if x % 3 == 0 { (x >> 8) as u32 % 101 } else { 0 }
            })
            .collect();
        let m = Matrix::from_row_major(rows, cols, entries);
        let r = rank(&field, &m);
        let kernel = kernel_basis(&field, &m);
        prop_assert_eq!(r + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(apply(&field, &m, v).iter().all(|&y| y == 0));
        }
        let ints = lift(&m);
        prop_assert!(rational_rank(&ints) >= r);
        prop_assert_eq!(modular_rank(&field, &ints), r);
    }

    #[test]
    fn splitting_h0_matches_definition(parts in prop::collection::vec(-6i64..6, 1..5), m in -4i64..8) {
        let split = SplittingType::new(parts.clone());
        let direct: i64 = parts.iter().map(|a| (a + m + 1).max(0)).sum();
        prop_assert_eq!(split.h0(m) as i64, direct);
        prop_assert!(split.parts().windows(2).all(|w| w[0] >= w[1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_characteristic_of_ideal(d in 1usize..10, k in 1usize..6, seed in any::<u64>()) {
        let c = random_curve(d, PrimeField::default(), seed).unwrap();
        let rep = ideal_cohomology(&c, k).unwrap();
        prop_assert_eq!(rep.h0_ideal as i64 - rep.h1_ideal as i64, binomial(k + 4, 4) as i64 - (d * k + 1) as i64);
    }

    #[test]
    fn hyperplane_identity_at_five(d in 3usize..16, seed in any::<u64>()) {
        let c = curve_in_hyperplane(d, PrimeField::default(), seed).unwrap();
        let h = hyperplane_ideal_cohomology(&c, 5).unwrap();
        prop_assert_eq!(h.h1 as i64 - h.h0 as i64, (5 * d as i64 + 1) - 56);
    }

    #[test]
    fn normal_bundle_degree(d in 1usize..8, seed in any::<u64>()) {
        let c = random_curve(d, PrimeField::default(), seed).unwrap();
        let split = normal_splitting(&c).unwrap();
        prop_assert_eq!(split.rank(), 3);
        prop_assert_eq!(split.degree(), 5 * d as i64 - 2);
        prop_assert_eq!(normal_h0(&c, 0).unwrap(), 5 * d + 1);
    }
}

/// Integer curve reduced modulo `p`.
fn reduce_curve(forms: &[Vec<i64>], field: PrimeField) -> RationalCurveMap {
    let p = field.modulus() as i64;
    let reduced = forms
        .iter()
        .map(|f| BinaryForm::new(f.iter().map(|&c| c.rem_euclid(p) as u32).collect()))
        .collect();
    RationalCurveMap::new(field, reduced).unwrap()
}

#[test]
fn two_primes_agree_on_ranks() {
    let (p, q) = (PrimeField::default(), PrimeField::new(31991).unwrap());
    let mut agree = 0;
    let mut total = 0;
    let mut x = 17u64;
    for trial in 0..100 {
        let d = 1 + trial % 6;
        let forms: Vec<Vec<i64>> = (0..5)
            .map(|_| {
                (0..=d)
                    .map(|_| {
                        x = quintic_core::curve::splitmix64(x);
                        (x % 201) as i64 - 100
                    })
                    .collect()
            })
            .collect();
        let (cp, cq) = (reduce_curve(&forms, p), reduce_curve(&forms, q));
        for k in 1..=5 {
            total += 1;
            let rp = rank(&p, &restriction_matrix(&cp, k).unwrap());
            let rq = rank(&q, &restriction_matrix(&cq, k).unwrap());
            if rp == rq {
                agree += 1;
            }
        }
    }
    assert!(agree * 100 >= total * 99, "{agree}/{total}");
}

#[test]
fn bareiss_agrees_with_modular_rank_on_integer_matrices() {
    let field = PrimeField::default();
    let m = Matrix::from_row_major(3, 4, [2, 4, 6, 8, 1, 3, 5, 7, 3, 7, 11, 15].map(BigInt::from).to_vec());
    assert_eq!(rational_rank(&m), 2);
    assert_eq!(modular_rank(&field, &m), 2);
}
