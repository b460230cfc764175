use minperm::catalog::{parse_group_spec, small_battery, GroupSpec};
use minperm::group::{direct_product, group_from_cayley_text, is_nilpotent};
use minperm::minrep::greedy_minimal_collection;
use minperm::numbers::prime_factors;
use minperm::oracle::{brute_force_min_degree, OracleOptions, OracleResult};
use minperm::{Analysis, Caps, GroupTable};
use proptest::prelude::*;

fn analysis(g: GroupTable) -> Analysis {
    Analysis::new(g, &Caps::default()).unwrap()
}

fn oracle(a: &Analysis) -> OracleResult {
    brute_force_min_degree(a, &Caps::default(), &OracleOptions::default()).unwrap()
}

fn build(spec: &GroupSpec) -> GroupTable {
    spec.build(&Caps::default()).unwrap()
}

/// Sum of the prime-power parts in the primary decomposition of an abelian
/// group given by its cyclic factors.
fn abelian_degree(parts: &[u64]) -> u64 {
    parts
        .iter()
        .flat_map(|&n| prime_factors(n))
        .map(|(p, a)| p.pow(a))
        .filter(|&q| q > 1)
        .sum()
}

/// Number of subspaces of `F_p^k`, summing Gaussian binomials.
fn subspace_count(p: u64, k: u32) -> u64 {
    (0..=k)
        .map(|j| {
            let (mut num, mut den) = (1u64, 1u64);
            for i in 0..j {
                num *= p.pow(k - i) - 1;
                den *= p.pow(i + 1) - 1;
            }
            num / den
        })
        .sum()
}

fn divisor_count(n: u64) -> u64 {
    prime_factors(n).iter().map(|&(_, a)| a as u64 + 1).product()
}

fn abelian_parts() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]), 1..4)
        .prop_filter("order at most 200", |parts| parts.iter().product::<u64>() <= 200)
}

fn small_spec() -> impl Strategy<Value = GroupSpec> {
    prop::sample::select(
        small_battery()
            .into_iter()
            .filter(|s| s.order().is_some_and(|n| n <= 16))
            .collect::<Vec<_>>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn abelian_degree_is_sum_of_primary_parts(parts in abelian_parts()) {
        let a = analysis(build(&GroupSpec::Abelian(parts.clone())));
        let o = oracle(&a);
        prop_assert_eq!(o.degree, abelian_degree(&parts));
        let greedy = greedy_minimal_collection(&a, false).unwrap();
        prop_assert_eq!(greedy.collection.degree(), o.degree);
    }

    #[test]
    fn degree_is_subadditive_on_products(x in small_spec(), y in small_spec()) {
        prop_assume!(x.order().unwrap() * y.order().unwrap() <= 128);
        let (gx, gy) = (build(&x), build(&y));
        let product = direct_product(&gx, &gy, &Caps::default()).unwrap();
        let dx = oracle(&analysis(gx)).degree;
        let dy = oracle(&analysis(gy)).degree;
        let d = oracle(&analysis(product)).degree;
        prop_assert!(d <= dx + dy, "d({x} x {y}) = {d} > {dx} + {dy}");
    }

    #[test]
    fn cayley_text_round_trip(spec in small_spec()) {
        let g = build(&spec);
        let back = group_from_cayley_text(&g.to_cayley_text(), g.label(), &Caps::default()).unwrap();
        prop_assert!(g.rows().eq(back.rows()));
    }

    #[test]
    fn scan_seed_does_not_change_results(spec in small_spec(), seed in any::<u64>()) {
        let a = analysis(build(&spec));
        let base = oracle(&a);
        let options = OracleOptions { scan_seed: Some(seed), ..OracleOptions::default() };
        let shuffled = brute_force_min_degree(&a, &Caps::default(), &options).unwrap();
        prop_assert_eq!(base.degree, shuffled.degree);
        prop_assert_eq!(base.collection_count, shuffled.collection_count);
        prop_assert_eq!(base.orbit_multisets, shuffled.orbit_multisets);
    }

    #[test]
    fn nilpotent_groups_are_socle_friendly(parts in abelian_parts(), extra in prop::sample::select(vec!["Q8", "D4", "heis:3", "modp3:3"])) {
        let spec = GroupSpec::Product(vec![parse_group_spec(extra).unwrap(), GroupSpec::Abelian(parts)]);
        if spec.order().unwrap() <= 1000 {
            let a = analysis(build(&spec));
            prop_assert!(is_nilpotent(&a.group));
            prop_assert!(a.is_socle_friendly());
        }
    }
}

#[test]
fn subgroup_counts_of_cyclic_and_elementary_groups() {
    for n in [1u64, 6, 12, 30, 64, 97] {
        let a = analysis(build(&GroupSpec::Cyclic(n)));
        assert_eq!(a.lattice.len() as u64, divisor_count(n), "C{n}");
    }
    for (p, k) in [(2u64, 3u32), (2, 4), (3, 3), (5, 2)] {
        let a = analysis(build(&GroupSpec::Abelian(vec![p; k as usize])));
        assert_eq!(a.lattice.len() as u64, subspace_count(p, k), "C{p}^{k}");
    }
}

#[test]
fn symmetric_group_subgroup_counts() {
    // S3 has 6 subgroups in 4 classes, S4 has 30 in 11
    for (n, subgroups, classes) in [(3, 6, 4), (4, 30, 11)] {
        let a = analysis(build(&GroupSpec::Symmetric(n)));
        assert_eq!((a.lattice.len(), a.lattice.classes().len()), (subgroups, classes), "S{n}");
    }
}

#[test]
fn known_small_degrees() {
    // d(S_n) = n for n ≥ 3, d(Q8) = 8, d(D_n) for the n-gon is the sum of
    // the prime-power parts of n when n is odd
    for (spec, d) in [("S3", 3), ("S4", 4), ("Q8", 8), ("Q16", 16), ("D5", 5), ("D15", 8)] {
        let a = analysis(build(&parse_group_spec(spec).unwrap()));
        assert_eq!(oracle(&a).degree, d, "{spec}");
    }
}
