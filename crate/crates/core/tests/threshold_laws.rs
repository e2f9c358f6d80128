use num_bigint::BigInt;
use unicolor::rational::ratio;
use unicolor::report::Quantity;
use unicolor::thresholds::{binom, conjecture_probe, phase_point, phi, phi_upper, pow_le};
use unicolor::Rational;

/// The larger branch, chosen by cross-multiplying integers.
fn larger_branch(k: i64, r: i64) -> (i64, i64) {
    let (a, b) = (k - r + 1, k + 2);
    let (c, d) = (3 * k - 3 * r + 1, 3 * k - 2);
    if a * d >= c * b {
        (a, b)
    } else {
        (c, d)
    }
}

#[test]
fn phi_matches_the_binding_branch_up_to_40() {
    for k in 2..=40usize {
        for r in 2..=k {
            let value: Rational = phi(k, r).unwrap();
            let (p, q) = larger_branch(k as i64, r as i64);
            assert_eq!(value, ratio(p, q), "k = {k}, r = {r}");

            let below = Rational::from_integer(BigInt::from(k)) < phase_point::<Rational>(r);
            let branch = if below {
                ratio(k as i64 - r as i64 + 1, k as i64 + 2)
            } else {
                ratio(3 * k as i64 - 3 * r as i64 + 1, 3 * k as i64 - 2)
            };
            assert_eq!(value, branch, "k = {k}, r = {r}");
        }
    }
}

#[test]
fn upper_bound_chain_starts_at_phi() {
    for k in 2..=30 {
        for i in 1..k {
            assert_eq!(phi_upper::<Rational>(k, i + 1, i).unwrap().value, phi::<Rational>(k, i + 1).unwrap());
        }
    }
}

#[test]
fn normalized_bounds_decrease_in_r() {
    for k in 2..=12 {
        for i in 1..k {
            for r1 in i + 1..=k {
                for r2 in i + 1..=r1 {
                    let x = |r: usize| {
                        phi_upper::<Rational>(k, r, i).unwrap().value
                            / Rational::from_integer(BigInt::from(binom(k - i, r - i)))
                    };
                    let (p1, p2) = ((r1 - i) as u32, (r2 - i) as u32);
                    assert!(pow_le(&x(r1), p2, &x(r2), p1), "k = {k}, i = {i}, r1 = {r1}, r2 = {r2}");
                }
            }
        }
    }
}

#[test]
fn probe_reproduces_branch_values() {
    for (k, r) in [(3, 3), (4, 3), (4, 4), (5, 4), (6, 5), (6, 4)] {
        let rep = conjecture_probe(k, r, r - 1, &[ratio(1, 1), ratio(3, 1)], 2).unwrap();
        let (k, r) = (k as i64, r as i64);
        assert_eq!(rep.get("alpha=1/1:ratio"), Some(&Quantity::Ratio(ratio(k - r + 1, k + 2))));
        assert_eq!(rep.get("alpha=3/1:ratio"), Some(&Quantity::Ratio(ratio(3 * k - 3 * r + 1, 3 * k - 2))));
    }
}
