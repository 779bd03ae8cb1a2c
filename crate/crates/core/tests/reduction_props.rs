use std::collections::BTreeMap;

use barannikov_core::random::{random_complex, random_triangular, random_two_degree, ComplexParams};
use barannikov_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(i: u8) -> FieldSpec {
    [FieldSpec::Prime(2), FieldSpec::Prime(5), FieldSpec::Rationals][i as usize % 3]
}

fn complex(seed: u64, f: FieldSpec) -> FilteredComplex {
    random_complex(&mut ChaCha8Rng::seed_from_u64(seed), f, ComplexParams::default())
}

fn is_simple(r: &BarannikovResult) -> bool {
    let images: Vec<String> = r.simple_boundary().into_values().flatten().collect();
    let mut dedup = images.clone();
    dedup.sort();
    dedup.dedup();
    dedup.len() == images.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_complexes_are_valid(seed: u64, f in 0u8..3) {
        prop_assert!(complex(seed, field(f)).validate().is_empty());
    }

    #[test]
    fn witness_conjugates_to_simple_form(seed: u64, f in 0u8..3) {
        let c = complex(seed, field(f));
        let r = reduce(&c).unwrap();
        prop_assert!(is_simple(&r));
        prop_assert_eq!(c.conjugate(r.witness()).unwrap(), r.simple_complex());
        for (p, q) in r.pairs() {
            let (gp, gq) = (c.generator(&p).unwrap(), c.generator(&q).unwrap());
            prop_assert_eq!(gp.degree, gq.degree + 1);
            prop_assert!(gp.value > gq.value);
        }
    }

    #[test]
    fn coupling_is_invariant_under_triangular_change(seed: u64, f in 0u8..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&mut rng, field(f), ComplexParams::default());
        let t = random_triangular(&mut rng, &c, 0.5);
        let d = c.conjugate(&t).unwrap();
        let (r, s) = (reduce(&c).unwrap(), reduce(&d).unwrap());
        prop_assert_eq!(r.partner_map(), s.partner_map());
        prop_assert_eq!(r.types(), s.types());
    }

    #[test]
    fn conjugation_round_trip(seed: u64, f in 0u8..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&mut rng, field(f), ComplexParams::default());
        let t = random_triangular(&mut rng, &c, 0.5);
        let back = c.conjugate(&t).unwrap().conjugate(&t.inverse(&c).unwrap()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn print_parse_round_trip(seed: u64, f in 0u8..3) {
        let c = complex(seed, field(f));
        let again = parse_complex(&print_complex(&c)).unwrap();
        prop_assert!(again.validate().is_empty());
        prop_assert_eq!(again, c);
    }

    #[test]
    fn homology_counts_homological_generators(seed: u64, f in 0u8..3) {
        let c = complex(seed, field(f));
        let r = reduce(&c).unwrap();
        prop_assert_eq!(homology_ranks(&c).unwrap(), r.homological_counts());
    }

    #[test]
    fn pairing_matches_rank_oracle(seed: u64, f in 0u8..3) {
        let c = complex(seed, field(f));
        let r = reduce(&c).unwrap();
        let partners = r.partner_map();
        for p in c.generators() {
            for q in c.generators() {
                if p.degree == q.degree + 1 && p.value > q.value {
                    let couple = partners.get(&p.name) == Some(&q.name);
                    prop_assert_eq!(persistence_rank_oracle(&c, &q.name, &p.name).unwrap(), couple);
                }
            }
        }
    }

    #[test]
    fn partner_map_is_a_bijection_upper_to_lower(seed: u64, f in 0u8..3) {
        let r = reduce(&complex(seed, field(f))).unwrap();
        let types = r.types();
        let uppers: Vec<_> = types.iter().filter(|(_, t)| **t == GeneratorType::Upper).map(|(n, _)| n.clone()).collect();
        let mut images: Vec<String> = uppers.iter().map(|p| r.partner(p).unwrap().to_string()).collect();
        images.sort();
        let mut lowers: Vec<_> = types.iter().filter(|(_, t)| **t == GeneratorType::Lower).map(|(n, _)| n.clone()).collect();
        lowers.sort();
        prop_assert_eq!(images, lowers);
    }

    #[test]
    fn lower_type_matches_elimination(seed: u64, f in 0u8..3) {
        let c = complex(seed, field(f));
        let r = reduce(&c).unwrap();
        for g in c.generators() {
            let lower = r.generator_type(&g.name) == Some(GeneratorType::Lower);
            prop_assert_eq!(is_lower_by_elimination(&c, &g.name).unwrap(), lower, "{}", g.name);
        }
    }

    #[test]
    fn couple_values_are_birth_and_death_levels(seed: u64, f in 0u8..3) {
        let c = complex(seed, field(f));
        let r = reduce(&c).unwrap();
        for (p, q) in r.pairs() {
            let gp = c.generator(&p).unwrap();
            let gq = c.generator(&q).unwrap();
            let z = r.reduced_boundary(&p).unwrap();
            prop_assert_eq!(class_birth(&c, &z, &gp.value).unwrap(), Level::At(gq.value.clone()));
            let cycle = r.cycle_of(&q).unwrap();
            prop_assert_eq!(class_death(&c, &cycle, None).unwrap(), Level::At(gp.value.clone()));
        }
    }

    #[test]
    fn two_degree_coupling_is_double_coset_invariant(seed: u64, f in 0u8..3, n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_two_degree(&mut rng, field(f), n);
        let r = reduce(&c).unwrap();
        let t = random_triangular(&mut rng, &c, 0.7);
        let s = reduce(&c.conjugate(&t).unwrap()).unwrap();
        prop_assert_eq!(r.partner_map(), s.partner_map());
        if homology_ranks(&c).unwrap().values().all(|&h| h == 0) {
            // invertible boundary: a permutation between the two layers
            prop_assert_eq!(r.pairs().len(), n);
        }
    }
}

#[test]
fn ex2_conjugated_keeps_pairing() {
    let c = parse_complex(
        "field F2\ngenerator q2 1 1\ngenerator q1 1 2\ngenerator p1 2 4\ngenerator p2 2 5\n\
         boundary p1 : 1*q1 + 1*q2\nboundary p2 : 1*q1\n",
    )
    .unwrap();
    let expected: BTreeMap<String, String> = [("p1", "q1"), ("q1", "p1"), ("p2", "q2"), ("q2", "p2")]
        .map(|(a, b)| (a.into(), b.into()))
        .into();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let t = random_triangular(&mut rng, &c, 0.8);
        assert_eq!(reduce(&c.conjugate(&t).unwrap()).unwrap().partner_map(), expected);
    }
}
