mod common;

use common::{coverage_oracle, int_element, random_nf_cover, rng, spectrum_oracle, test_fields};
use coverkit::arith::rational;
use coverkit::field::{nf_spectrum, nf_spectrum_bruteforce};
use coverkit::spectrum::{extended_spectrum, spectrum_bruteforce, spectrum_dp};
use coverkit::{CoverSystem, ResidueClass};
use num::BigUint;
use proptest::prelude::*;
use rand::Rng;

fn system() -> impl Strategy<Value = CoverSystem> {
    prop::collection::vec((1i64..=12, 0i64..12, -5i64..=5), 1..=12).prop_map(|triples| {
        let classes = triples
            .iter()
            .map(|&(n, a, _)| ResidueClass::new(a % n, n).unwrap())
            .collect();
        CoverSystem::with_weights(classes, triples.iter().map(|t| t.2).collect()).unwrap()
    })
}

fn unit_system() -> impl Strategy<Value = CoverSystem> {
    prop::collection::vec((1i64..=12, 0i64..12), 1..=10)
        .prop_map(|pairs| CoverSystem::from_pairs(&pairs.iter().map(|&(n, a)| (a % n, n)).collect::<Vec<_>>()).unwrap())
}

fn rebuild(sys: &CoverSystem, weights: Vec<i64>) -> CoverSystem {
    CoverSystem::with_weights(sys.classes().to_vec(), weights).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_matches_enumeration(sys in system()) {
        let dp = spectrum_dp(&sys).unwrap();
        prop_assert_eq!(dp.counts(), &spectrum_oracle(&sys));
        prop_assert_eq!(dp, spectrum_bruteforce(&sys, 16).unwrap());
    }

    #[test]
    fn counts_sum_to_all_subsets(sys in system()) {
        prop_assert_eq!(spectrum_dp(&sys).unwrap().total(), BigUint::from(1u32) << sys.len());
    }

    #[test]
    fn adding_a_class_splits_each_count(sys in system(), t in any::<prop::sample::Index>()) {
        let t = t.index(sys.len());
        let full = spectrum_dp(&sys).unwrap();
        let n = full.modulus();
        let reduced = sys.drop_class(t).unwrap();
        let without = spectrum_oracle(&reduced);
        let nt = sys.classes()[t].modulus();
        let ratio = n / reduced.period().unwrap();
        let step = (sys.weight(t) as i128 * (n / nt) as i128).rem_euclid(n as i128) as u64;
        for r in 0..n {
            let at = |x: u64| if x.is_multiple_of(ratio) { without.get(&(x / ratio)).cloned().unwrap_or_default() } else { BigUint::default() };
            prop_assert_eq!(full.count(r), at(r) + at((r + n - step) % n));
        }
    }

    #[test]
    fn shifting_a_weight_by_its_modulus_is_invisible(sys in system(), t in any::<prop::sample::Index>(), k in -3i64..=3) {
        let t = t.index(sys.len());
        let mut weights = sys.weights();
        weights[t] += k * sys.classes()[t].modulus() as i64;
        prop_assert_eq!(spectrum_dp(&sys).unwrap(), spectrum_dp(&rebuild(&sys, weights)).unwrap());
    }

    #[test]
    fn integer_parts_marginalize_to_the_spectrum(sys in unit_system()) {
        let ext = extended_spectrum(&sys, None).unwrap();
        let plain = spectrum_dp(&sys).unwrap();
        prop_assert_eq!(&ext.marginal(), plain.counts());
        for (&r, count) in plain.counts() {
            let fiber: BigUint = ext.fiber(r).into_iter().map(|(_, c)| c).sum();
            prop_assert_eq!(&fiber, count);
        }
    }

    #[test]
    fn multiplicity_is_the_pointwise_minimum(pairs in prop::collection::vec((1i64..=12, 0i64..12), 1..=8)) {
        let pairs: Vec<(i64, i64)> = pairs.iter().map(|&(n, a)| (a % n, n)).collect();
        let sys = CoverSystem::from_pairs(&pairs).unwrap();
        let period = sys.period().unwrap() as i64;
        let oracle = (0..period).map(|x| coverage_oracle(&pairs, x)).min().unwrap();
        prop_assert_eq!(sys.covering_multiplicity().unwrap(), oracle);
    }

    #[test]
    fn division_inverts_multiplication(seed in any::<u64>(), field in 0usize..5) {
        let mut rng = rng(seed);
        let f = &test_fields()[field];
        let a = int_element(f, &mut rng, 20);
        let b = int_element(f, &mut rng, 20);
        prop_assume!(!b.is_zero());
        prop_assert_eq!(f.div(&f.mul(&a, &b), &b).unwrap(), a);
    }
}

#[test]
fn nf_dp_matches_brute_force() {
    let mut rng = rng(17);
    for field in test_fields() {
        for _ in 0..6 {
            let sys = random_nf_cover(&field, &mut rng);
            let coords = (0..field.degree())
                .map(|_| rational(rng.gen_range(-3..=3), rng.gen_range(1..=4)))
                .collect();
            let mu = field.element(coords).unwrap();
            assert_eq!(
                nf_spectrum(&sys, None).unwrap(),
                nf_spectrum_bruteforce(&sys, None, 16).unwrap()
            );
            assert_eq!(
                nf_spectrum(&sys, Some(&mu)).unwrap(),
                nf_spectrum_bruteforce(&sys, Some(&mu), 16).unwrap()
            );
        }
    }
}

#[test]
fn covering_count_is_periodic_in_the_product_ideal() {
    let mut rng = rng(23);
    for field in test_fields() {
        for _ in 0..6 {
            let sys = random_nf_cover(&field, &mut rng);
            let product = sys.beta_product();
            for _ in 0..10 {
                let x = int_element(&field, &mut rng, 6);
                let shifted = x.add(&field.mul(&product, &int_element(&field, &mut rng, 6)));
                assert_eq!(sys.covering_count(&x).unwrap(), sys.covering_count(&shifted).unwrap());
            }
        }
    }
}
