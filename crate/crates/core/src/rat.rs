//! Exact rational arithmetic.
//!
//! Every quantity in this crate is an arbitrary-precision rational; there is
//! no floating point anywhere. `Rat` values are always stored in lowest terms
//! with a positive denominator, and all arithmetic is exact.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision exact rational, stored in lowest terms.
pub type Rat = num_rational::BigRational;

/// Shorthand for building a `Rat` from small integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parse an exact rational from `"p"` or `"p/q"` with `q > 0`.
///
/// This is the wire format used by the CLI layer; it deliberately rejects
/// zero or negative denominators instead of normalizing them.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::invalid_argument("empty rational literal"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| Error::invalid_argument(format!("bad rational literal {s:?}")))?;
    let den: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| Error::invalid_argument(format!("bad rational literal {s:?}")))?,
        None => BigInt::one(),
    };
    if den <= BigInt::zero() {
        return Err(Error::invalid_argument(format!(
            "denominator must be positive in {s:?}"
        )));
    }
    Ok(Rat::new(num, den))
}

/// Least common multiple of the denominators of `values` (1 for an empty set).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigUint {
    let mut acc = BigUint::one();
    for v in values {
        acc = acc.lcm(v.denom().magnitude());
    }
    acc
}

/// The largest reduced-form denominator among `values` (1 for an empty set).
pub fn max_denom<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigUint {
    let mut best = BigUint::one();
    for v in values {
        let d = v.denom().magnitude();
        if *d > best {
            best = d.clone();
        }
    }
    best
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (smallest numerator among those). Standard continued-fraction
/// walk; used to snap a bisection bracket back to an exact value.
pub fn simplest_rational_between(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi, "empty interval");
    if lo == hi {
        return lo.clone();
    }
    // Any integer in the interval is simplest; pick the one closest to zero.
    let lo_ceil = lo.ceil();
    if lo.is_negative() && !hi.is_negative() {
        return Rat::zero();
    }
    if lo_ceil <= hi.floor() {
        if lo.is_negative() {
            // Entire interval negative here, so the greatest integer wins.
            return hi.floor();
        }
        return lo_ceil;
    }
    if lo.is_negative() {
        return -simplest_rational_between(&-hi.clone(), &-lo.clone());
    }
    let a = lo.floor();
    let frac = simplest_rational_between(
        &(Rat::one() / (hi - &a)),
        &(Rat::one() / (lo - &a)),
    );
    a + Rat::one() / frac
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rat("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rat("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rat(" 2/6 ").unwrap(), rat(1, 3));
        assert_eq!(parse_rat("-1/2").unwrap(), rat(-1, 2));
    }

    #[test]
    fn parse_rejects_bad_denominators() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1/2/3").is_err());
    }

    #[test]
    fn lcm_and_max_denominator() {
        let vals = [rat(1, 2), rat(1, 3), rat(1, 6)];
        assert_eq!(denominator_lcm(vals.iter()), 6u32.into());
        assert_eq!(max_denom(vals.iter()), 6u32.into());
        let empty: [Rat; 0] = [];
        assert_eq!(denominator_lcm(empty.iter()), 1u32.into());
    }

    #[test]
    fn simplest_rational_examples() {
        // 1/3 is the simplest rational near the Petersen coefficient bracket.
        let lo = rat(33, 100);
        let hi = rat(34, 100);
        assert_eq!(simplest_rational_between(&lo, &hi), rat(1, 3));
        assert_eq!(simplest_rational_between(&rat(1, 6), &rat(1, 6)), rat(1, 6));
        assert_eq!(simplest_rational_between(&rat(5, 2), &rat(7, 2)), rat(3, 1));
        assert_eq!(simplest_rational_between(&rat(-1, 2), &rat(1, 3)), rat(0, 1));
    }

    proptest! {
        // Exactness round-trips: (a+b)-b = a and (a*b)/b = a, bit-exact.
        #[test]
        fn rat_roundtrips(an in -1_000_000i64..1_000_000, ad in 1i64..1_000_000,
                          bn in -1_000_000i64..1_000_000, bd in 1i64..1_000_000) {
            let a = rat(an, ad);
            let b = rat(bn, bd);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a);
            }
        }

        #[test]
        fn simplest_rational_is_in_interval(n1 in -500i64..500, d1 in 1i64..500,
                                            n2 in 0i64..500, d2 in 1i64..500) {
            let lo = rat(n1, d1);
            let hi = &lo + rat(n2 + 1, d2 * 7);
            let r = simplest_rational_between(&lo, &hi);
            prop_assert!(lo <= r && r <= hi);
            // No rational in the interval has a smaller denominator.
            let den = r.denom().clone();
            for q in 1..den.clone().try_into().unwrap_or(1u64) {
                let scaled_lo = (&lo * Rat::from_integer(q.into())).ceil();
                let scaled_hi = (&hi * Rat::from_integer(q.into())).floor();
                prop_assert!(scaled_lo > scaled_hi, "denominator {} beats {}", q, den);
            }
        }
    }
}
