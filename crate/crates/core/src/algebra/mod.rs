//! Multigraded monomials and polynomials over `Q` or `F_p`, plus points of
//! products of projective spaces over prime fields.

mod monomial;
mod point;
mod polynomial;
mod space;

pub use monomial::{monomial_basis, monomial_basis_len, Monomial};
pub use point::{enumerate_points, point_count, projective_count, sample_point, PointGrid, ProjPoint};
pub use polynomial::{Polynomial, Ring};
pub use space::{MultiDegree, SpaceSpec};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, k)` for `n >= 0`; zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_table() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(3, -1), BigInt::from(0));
        assert_eq!(binomial(-1, 0), BigInt::from(0));
        // beyond 64 bits
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
        for n in 0..20 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }
}
