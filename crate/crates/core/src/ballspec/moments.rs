//! Monomial integrals over the unit sphere and unit ball, as exact rational
//! multiples of the sphere area `|S^{n-1}|`.

use num::{BigInt, One, Zero};

use super::polynomial::{Polynomial, Rational};

/// `int_{S^{n-1}} x^e / |S^{n-1}|`. Zero unless every exponent is even;
/// otherwise `prod (e_i - 1)!! / prod_{j < |e|/2} (n + 2j)`.
pub fn sphere_moment(exponents: &[u32]) -> Rational {
    if exponents.iter().any(|e| e % 2 == 1) {
        return Rational::zero();
    }
    let n = exponents.len() as i64;
    let mut numer = BigInt::one();
    for &e in exponents {
        let mut k = e as i64 - 1;
        while k > 1 {
            numer *= k;
            k -= 2;
        }
    }
    let half: i64 = exponents.iter().map(|&e| e as i64).sum::<i64>() / 2;
    let mut denom = BigInt::one();
    for j in 0..half {
        denom *= n + 2 * j;
    }
    Rational::new(numer, denom)
}

/// `int_{B^n} x^e / |S^{n-1}|` = sphere moment over `(|e| + n)`.
pub fn ball_moment(exponents: &[u32]) -> Rational {
    let degree: u32 = exponents.iter().sum();
    sphere_moment(exponents) / Rational::from_integer(BigInt::from(degree as usize + exponents.len()))
}

pub fn integrate_sphere(p: &Polynomial) -> Rational {
    p.terms().fold(Rational::zero(), |acc, (e, c)| acc + c * sphere_moment(e))
}

pub fn integrate_ball(p: &Polynomial) -> Rational {
    p.terms().fold(Rational::zero(), |acc, (e, c)| acc + c * ball_moment(e))
}
