mod common;

use proptest::prelude::*;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn unbalanced_tuples_vanish(t in unbalanced()) {
        unbalanced_vanishes(&t)?;
    }

    #[test]
    fn laurent_support_has_tuple_parity(t in balanced()) {
        parity(&t)?;
    }

    #[test]
    fn degree_at_most_chi_max(t in balanced()) {
        degree_bound(&t)?;
    }

    #[test]
    fn invariant_under_tuple_permutation(t in balanced(), k in 0usize..3) {
        tuple_permutation(&t, k)?;
    }

    #[test]
    fn invariant_under_cyclic_rotation(t in balanced(), i in 0usize..3, k in 0usize..6) {
        cyclic_rotation(&t, i, k)?;
    }

    #[test]
    fn invariant_under_global_inversion(t in balanced()) {
        global_inversion(&t)?;
    }

    #[test]
    fn invariant_under_nielsen_move(t in balanced()) {
        nielsen_move(&t)?;
    }

    #[test]
    fn invariant_under_relabeling(t in balanced(), perm in generator_permutation()) {
        relabeling(&t, &perm)?;
    }

    #[test]
    fn euler_characteristic_two_ways(t in balanced(), (kappa, picks) in matching_choice()) {
        chi_two_ways(&t, &kappa, &picks)?;
    }

    #[test]
    fn z_discs_count_cycles(t in balanced(), (kappa, picks) in matching_choice()) {
        z_discs_are_cycles(&t, &kappa, &picks)?;
    }

    #[test]
    fn enumeration_matches_rational_expansion(t in balanced()) {
        enumeration_matches_expansion(&t)?;
    }
}
