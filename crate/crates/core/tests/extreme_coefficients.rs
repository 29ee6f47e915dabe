mod common;

use bracket_core::{bracket_bruteforce, extreme_bounds, extreme_coefficient, refined_spread, Marker};
use num_bigint::BigInt;

#[test]
fn coefficients_match_the_state_sum_on_every_fixture() {
    let mut checked = 0;
    for (name, d) in common::corpus() {
        if d.crossing_count() > 16 {
            continue;
        }
        let br = bracket_bruteforce(&d).unwrap();
        for m in [Marker::A, Marker::B] {
            let r = extreme_coefficient(&d, m).unwrap();
            assert_eq!(br.coeff_at(r.degree), BigInt::from(r.signed_coefficient), "{name} {m}");
            assert!(r.bipartite, "{name} {m}");
            if r.adequate {
                assert_eq!(r.f_value, 1, "{name} {m}");
            }
        }
        checked += 1;
    }
    assert!(checked >= 40);
}

#[test]
fn refined_spread_bounds_the_state_sum() {
    for (name, d) in common::corpus() {
        let br = bracket_bruteforce(&d).unwrap();
        let r = refined_spread(&d).unwrap();
        let spread = br.spread().unwrap() as i64;
        assert!(spread <= r.bracket_spread_bound, "{name}");
        assert!(r.bracket_spread_bound <= extreme_bounds(&d).spread_bound);
        if r.exact {
            assert_eq!(spread, r.bracket_spread_bound, "{name}");
        }
    }
}
