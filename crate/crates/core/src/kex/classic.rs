//! Diffie-Hellman in the multiplicative group of `Z/p`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::KexError;

/// Moduli are checked by trial division, so they are kept below `2^48`.
pub const MAX_CLASSIC_MODULUS: u64 = 1 << 48;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicDh {
    /// `g^x mod p`
    pub x_pub: BigUint,
    /// `g^y mod p`
    pub y_pub: BigUint,
    /// `Y^x mod p`
    pub key: BigUint,
}

/// Trial division by 2, 3 and `6k ± 1`.
pub fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Returns `(X, Y, k)`; errors unless `p` is a prime below
/// [`MAX_CLASSIC_MODULUS`] and `0 < g < p`, or if `X^y` and `Y^x` disagree.
pub fn classic_dh(p: &BigUint, g: &BigUint, x: &BigUint, y: &BigUint) -> Result<ClassicDh, KexError> {
    match p.to_u64() {
        Some(v) if v < MAX_CLASSIC_MODULUS && is_prime(v) => {}
        _ => return Err(KexError::InvalidModulus),
    }
    if g.is_zero() || g >= p {
        return Err(KexError::InvalidBase);
    }
    let x_pub = g.modpow(x, p);
    let y_pub = g.modpow(y, p);
    let key = y_pub.modpow(x, p);
    assert_eq!(key, x_pub.modpow(y, p), "modular exponentiation is commutative in the exponent");
    Ok(ClassicDh { x_pub, y_pub, key })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    use crate::random::rng_from_seed;

    fn u(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn textbook_instance() {
        let r = classic_dh(&u(23), &u(5), &u(6), &u(15)).unwrap();
        assert_eq!((r.x_pub, r.y_pub, r.key), (u(8), u(19), u(2)));
    }

    #[test]
    fn zero_exponent() {
        let r = classic_dh(&u(23), &u(5), &u(0), &u(15)).unwrap();
        assert_eq!(r.x_pub, u(1));
        assert_eq!(r.key, u(1));
    }

    #[test]
    fn random_exponents_agree() {
        let mut rng = rng_from_seed(10);
        let p = u(1_000_003);
        for _ in 0..100 {
            let (x, y) = (u(rng.gen()), u(rng.gen()));
            let r = classic_dh(&p, &u(2), &x, &y).unwrap();
            assert_eq!(r.key, r.x_pub.modpow(&y, &p));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(classic_dh(&u(21), &u(5), &u(1), &u(1)), Err(KexError::InvalidModulus));
        assert_eq!(classic_dh(&u(1), &u(5), &u(1), &u(1)), Err(KexError::InvalidModulus));
        assert_eq!(classic_dh(&u(23), &u(0), &u(1), &u(1)), Err(KexError::InvalidBase));
        assert_eq!(classic_dh(&u(23), &u(23), &u(1), &u(1)), Err(KexError::InvalidBase));
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
        assert!(!is_prime(25));
    }
}
