//! Arithmetic in prime fields `F_p` with `p < 2^63`.

/// `2^31 - 1`, the default modulus for Monte-Carlo rank sampling.
pub const SAMPLING_PRIME: u64 = 2_147_483_647;

/// `2^61 - 1`, used to certify zero kernels before exact elimination.
pub const LARGE_PRIME: u64 = 2_305_843_009_213_693_951;

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`; `None` when `a = 0 mod p`.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    Some(pow_mod(a, p - 2, p))
}

/// Reduce a signed integer into `[0, p)`.
#[inline]
pub fn from_i64(v: i64, p: u64) -> u64 {
    let r = (v as i128).rem_euclid(p as i128);
    r as u64
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &s in &SMALL {
        if n % s == 0 {
            return n == s;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(SAMPLING_PRIME));
        assert!(is_prime(LARGE_PRIME));
        assert!(!is_prime(LARGE_PRIME - 2));
    }

    #[test]
    fn inverse_round_trips() {
        for p in [2u64, 3, 7, 1009, SAMPLING_PRIME] {
            for a in 1..50u64.min(p) {
                let inv = inv_mod(a, p).unwrap();
                assert_eq!(mul_mod(a, inv, p), 1);
            }
            assert_eq!(inv_mod(0, p), None);
        }
    }

    #[test]
    fn signed_reduction() {
        assert_eq!(from_i64(-1, 7), 6);
        assert_eq!(from_i64(-14, 7), 0);
        assert_eq!(from_i64(15, 7), 1);
        assert_eq!(sub_mod(2, 5, 7), 4);
    }
}
