//! Seeded random instance generation for experiments and property sweeps.

use rand::Rng;

use crate::ideal::{MonomialIdeal, MonomialPrime};
use crate::ip::{IpInstance, IpVariant};
use crate::vector::ExponentVector;

/// A random exponent vector of total degree between 1 and `max_deg`.
pub fn random_vector(rng: &mut impl Rng, n: usize, max_deg: u64) -> ExponentVector {
    let deg = rng.gen_range(1..=max_deg);
    let mut entries = vec![0u64; n];
    for _ in 0..deg {
        entries[rng.gen_range(0..n)] += 1;
    }
    ExponentVector::new(entries).expect("bounded degree")
}

/// A random proper non-zero monomial ideal with at most `max_gens`
/// generators of degree at most `max_deg`.
pub fn random_ideal(rng: &mut impl Rng, n: usize, max_gens: usize, max_deg: u64) -> MonomialIdeal {
    let count = rng.gen_range(1..=max_gens);
    let gens = (0..count).map(|_| random_vector(rng, n, max_deg)).collect();
    MonomialIdeal::new(n, gens).expect("generated vectors share the ambient length")
}

/// A random program instance with the given caps.
pub fn random_ip_instance(
    rng: &mut impl Rng,
    n: usize,
    max_points: usize,
    max_deg: u64,
    max_k: u64,
    variant: IpVariant,
) -> IpInstance {
    let count = rng.gen_range(1..=max_points);
    let points: Vec<ExponentVector> =
        (0..count).map(|_| random_vector(rng, n, max_deg)).collect();
    let mut support = std::collections::BTreeSet::new();
    support.insert(rng.gen_range(0..n));
    for v in 0..n {
        if rng.gen_bool(0.4) {
            support.insert(v);
        }
    }
    let prime = MonomialPrime::new(n, support).expect("support is non-empty");
    let k = rng.gen_range(1..=max_k);
    IpInstance::new(n, points, prime, k, variant).expect("generated instances are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generation_is_deterministic_per_seed() {
        let a = random_ideal(&mut ChaCha8Rng::seed_from_u64(7), 3, 5, 4);
        let b = random_ideal(&mut ChaCha8Rng::seed_from_u64(7), 3, 5, 4);
        assert_eq!(a, b);
        assert!(!a.is_zero() && a.is_proper());
    }

    #[test]
    fn instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let inst = random_ip_instance(&mut rng, 3, 4, 4, 4, IpVariant::Power);
            assert!(inst.points.iter().all(|p| !p.is_zero()));
            assert!(inst.k >= 1);
        }
    }
}
