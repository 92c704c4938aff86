//! v-numbers of monomial ideals.
//!
//! `v_at_prime` realizes the colon formula: with `X_p` the strict
//! over-primes of `p` inside the given associated set and `q` their product,
//! the v-number at `p` is the initial degree of `(I : p)` modulo
//! `(I : p) \cap sat(I, q)`, and the minimal-degree generator of the
//! numerator outside the denominator is a witness `f` with `(I : f) = p`.
//! `v_scan_oracle` is the independent brute-force route used to validate it.

use std::collections::BTreeSet;

use crate::decomp::associated_primes;
use crate::error::{Error, Result};
use crate::ideal::{quotient_alpha, MonomialIdeal, MonomialPrime, QuotientAlpha};
use crate::vector::ExponentVector;

/// A v-number together with its minimal-degree witness monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VResult {
    pub value: u64,
    pub witness: ExponentVector,
    pub prime: MonomialPrime,
}

/// v_p(I) for `p` in the given associated-prime set.
///
/// The set is a parameter rather than recomputed: single-ideal calls pass
/// `Ass(I)`, while filtration-level calls pass the stable set of the
/// filtration, which changes which primes count as strict over-primes.
pub fn v_at_prime(
    ideal: &MonomialIdeal,
    p: &MonomialPrime,
    ass_set: &BTreeSet<MonomialPrime>,
) -> Result<VResult> {
    if !ass_set.contains(p) {
        return Err(Error::NotAssociatedPrime(p.to_string()));
    }
    let n = ideal.ambient();
    let mut q = MonomialIdeal::unit(n);
    for over in ass_set.iter().filter(|o| o.strictly_contains(p)) {
        q = q.product(&over.as_ideal())?;
    }
    let numerator = ideal.colon_by_ideal(&p.as_ideal())?.ideal;
    let saturation = ideal.saturation_total(&q)?;
    let denominator = numerator.intersect(&saturation)?;
    match quotient_alpha(&numerator, &denominator)? {
        QuotientAlpha::Degree { value, witness } => {
            debug_assert_eq!(
                ideal.colon_by_monomial(&witness).ok(),
                Some(p.as_ideal()),
                "witness must have colon exactly p"
            );
            Ok(VResult {
                value,
                witness,
                prime: p.clone(),
            })
        }
        QuotientAlpha::ZeroModule => Err(Error::NoWitness),
    }
}

/// v(I) = min over associated primes of v_p(I), tie-broken by the
/// lexicographically smallest prime support.
pub fn v_number(ideal: &MonomialIdeal) -> Result<VResult> {
    let ass = associated_primes(ideal)?;
    v_number_with_ass(ideal, &ass)
}

/// As `v_number`, reusing an already-computed associated-prime set.
pub fn v_number_with_ass(
    ideal: &MonomialIdeal,
    ass: &BTreeSet<MonomialPrime>,
) -> Result<VResult> {
    let mut best: Option<VResult> = None;
    for p in ass {
        let r = v_at_prime(ideal, p, ass)?;
        let better = match &best {
            None => true,
            Some(b) => r.value < b.value,
        };
        if better {
            best = Some(r);
        }
    }
    best.ok_or(Error::NoWitness)
}

/// Independent brute force: scans every monomial of degree at most
/// `degree_cap` and returns the least degree whose colon is exactly `p`.
pub fn v_scan_oracle(
    ideal: &MonomialIdeal,
    p: &MonomialPrime,
    degree_cap: u64,
) -> Result<Option<u64>> {
    if ideal.ambient() != p.ambient() {
        return Err(Error::DimensionMismatch {
            left: ideal.ambient(),
            right: p.ambient(),
        });
    }
    let target = p.as_ideal();
    let n = ideal.ambient();
    for degree in 0..=degree_cap {
        let mut found = false;
        for_each_monomial_of_degree(n, degree, &mut |u| {
            if found {
                return;
            }
            let exps = ExponentVector::new(u.to_vec()).expect("bounded degree");
            if ideal.colon_by_monomial(&exps).expect("same ambient") == target {
                found = true;
            }
        });
        if found {
            return Ok(Some(degree));
        }
    }
    Ok(None)
}

/// Visits every exponent vector of the given total degree, in lex order.
pub fn for_each_monomial_of_degree(n: usize, degree: u64, f: &mut impl FnMut(&[u64])) {
    let mut buf = vec![0u64; n];
    fn rec(buf: &mut [u64], pos: usize, left: u64, f: &mut impl FnMut(&[u64])) {
        if pos + 1 == buf.len() {
            buf[pos] = left;
            f(buf);
            return;
        }
        for take in (0..=left).rev() {
            buf[pos] = take;
            rec(buf, pos + 1, left - take, f);
        }
    }
    if n == 0 {
        if degree == 0 {
            f(&[]);
        }
        return;
    }
    rec(&mut buf, 0, degree, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::testutil::{ev, ideal, prime};

    fn triangle() -> MonomialIdeal {
        ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])
    }

    #[test]
    fn v_at_prime_examples() {
        let tri = triangle();
        let ass = associated_primes(&tri).unwrap();
        let r = v_at_prime(&tri, &prime(3, &[0, 1]), &ass).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.witness, ev(&[0, 0, 1]));

        let x3 = ideal(1, &[&[3]]);
        let ass = associated_primes(&x3).unwrap();
        let r = v_at_prime(&x3, &prime(1, &[0]), &ass).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.witness, ev(&[2]));

        // Full maximal ideal on I^2 with the eventual associated set.
        let sq = tri.power(2).unwrap();
        let mut stable = associated_primes(&tri).unwrap();
        stable.insert(MonomialPrime::full(3));
        let r = v_at_prime(&sq, &MonomialPrime::full(3), &stable).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.witness, ev(&[1, 1, 1]));
    }

    #[test]
    fn v_at_prime_rejects_non_associated() {
        let tri = triangle();
        let ass = associated_primes(&tri).unwrap();
        assert!(matches!(
            v_at_prime(&tri, &MonomialPrime::full(3), &ass),
            Err(Error::NotAssociatedPrime(_))
        ));
    }

    #[test]
    fn v_number_examples() {
        assert_eq!(v_number(&triangle()).unwrap().value, 1);

        let x = ideal(1, &[&[1]]);
        let r = v_number(&x).unwrap();
        assert_eq!(r.value, 0);
        assert!(r.witness.is_zero());

        for k in 1..=4u64 {
            let pk = triangle().power(k).unwrap();
            assert_eq!(v_number(&pk).unwrap().value, 2 * k - 1, "k = {k}");
        }
    }

    #[test]
    fn oracle_examples() {
        let tri = triangle();
        assert_eq!(
            v_scan_oracle(&tri, &prime(3, &[0, 1]), 3).unwrap(),
            Some(1)
        );
        assert_eq!(v_scan_oracle(&ideal(1, &[&[1]]), &prime(1, &[0]), 0).unwrap(), Some(0));
        let sq = tri.power(2).unwrap();
        assert_eq!(
            v_scan_oracle(&sq, &MonomialPrime::full(3), 4).unwrap(),
            Some(3)
        );
        assert_eq!(v_scan_oracle(&tri, &MonomialPrime::full(3), 4).unwrap(), None);
    }

    #[test]
    fn formula_matches_oracle_on_small_ideals() {
        let samples = [
            ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 0, 3]]),
            ideal(2, &[&[3, 0], &[2, 1], &[0, 2]]),
            ideal(3, &[&[2, 1, 0], &[0, 1, 2]]),
            triangle(),
        ];
        for i in &samples {
            let ass = associated_primes(i).unwrap();
            for p in &ass {
                let r = v_at_prime(i, p, &ass).unwrap();
                assert_eq!(
                    v_scan_oracle(i, p, r.value).unwrap(),
                    Some(r.value),
                    "ideal {i}, prime {p}"
                );
                assert_eq!(i.colon_by_monomial(&r.witness).unwrap(), p.as_ideal());
            }
        }
    }
}
