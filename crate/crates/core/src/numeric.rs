//! Integer helpers shared by the exact layers: primality, factorization,
//! modular square roots and fixed-point logarithms.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{HeightError, Result};

/// Guard bits carried by every fixed-point evaluation.
const GUARD_BITS: u32 = 32;

pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// Distinct prime factors of `n` (empty for 0 and 1).
pub fn prime_factors(n: &BigUint) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    if n.is_zero() || n.is_one() {
        return Ok(out);
    }
    if let Some(small) = n.to_u64() {
        out.extend(num_prime::nt_funcs::factorize64(small).into_keys());
        return Ok(out);
    }
    if let Some(mid) = n.to_u128() {
        for p in num_prime::nt_funcs::factorize128(mid).into_keys() {
            out.insert(u64::try_from(p).map_err(|_| HeightError::PrimeTooLarge(p.to_string()))?);
        }
        return Ok(out);
    }
    let (found, rest) = num_prime::nt_funcs::factors(n.clone(), None);
    if let Some(rest) = rest {
        let first = rest.first().map(|r| r.to_string()).unwrap_or_default();
        return Err(HeightError::PrimeTooLarge(first));
    }
    for p in found.into_keys() {
        let small = p.to_u64().ok_or_else(|| HeightError::PrimeTooLarge(p.to_string()))?;
        out.insert(small);
    }
    Ok(out)
}

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Exponent of `p` in a nonzero rational.
pub fn rat_valuation(x: &BigRational, p: u64) -> i64 {
    int_valuation(x.numer(), p) - int_valuation(x.denom(), p)
}

pub fn rational_is_square_free(d: i64) -> bool {
    let n = d.unsigned_abs();
    if n == 0 {
        return false;
    }
    num_prime::nt_funcs::factorize64(n).values().all(|&e| e == 1)
}

/// Legendre symbol style test: is `d` a nonzero square modulo odd prime `p`.
pub fn is_nonzero_square_mod(d: i64, p: u64) -> bool {
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        return false;
    }
    if p == 2 {
        return true;
    }
    pow_mod(r, (p - 1) / 2, p) == 1
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Both square roots of `d` modulo an odd prime `p`, smaller first.
/// Tonelli–Shanks; returns `None` for non-residues and multiples of `p`.
pub fn sqrt_mod_prime(d: i64, p: u64) -> Option<(u64, u64)> {
    if p == 2 || !is_nonzero_square_mod(d, p) {
        return None;
    }
    let n = d.rem_euclid(p as i64) as u64;
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    let other = p - r;
    Some((r.min(other), r.max(other)))
}

/// Lift a simple root `seed` of `x^2 - d` modulo odd `p` to a root modulo `p^k`.
pub fn hensel_lift(d: i64, p: u64, seed: u64, k: u32) -> BigUint {
    let p_big = BigInt::from(p);
    let d_big = BigInt::from(d);
    let mut r = BigInt::from(seed);
    let mut precision = 1u32;
    while precision < k {
        precision = (precision * 2).min(k);
        let modulus = p_big.pow(precision);
        let f = (&r * &r - &d_big).mod_floor(&modulus);
        let deriv = (BigInt::from(2) * &r).mod_floor(&modulus);
        let inv = deriv
            .modinv(&modulus)
            .expect("2r is a unit: p is odd and does not divide d");
        r = (&r - f * inv).mod_floor(&modulus);
    }
    r.mod_floor(&p_big.pow(k))
        .to_biguint()
        .expect("reduced residue is nonnegative")
}

/// The 2-adic square root of `d` (with `d ≡ 1 mod 8`) congruent to `seed`
/// modulo 4, correct modulo `2^k`.
pub fn two_adic_sqrt(d: i64, seed: u64, k: u32) -> BigUint {
    debug_assert_eq!(d.rem_euclid(8), 1);
    debug_assert!(seed == 1 || seed == 3);
    let d_big = BigInt::from(d);
    // Roots modulo 2^(j+1) are determined modulo 2^j; carry one extra bit.
    let target = k.max(2) + 1;
    let mut r = BigInt::from(seed);
    let mut j = 3u32;
    while j < target {
        let modulus = BigInt::one() << (j + 1);
        if !(&r * &r - &d_big).mod_floor(&modulus).is_zero() {
            r += BigInt::one() << (j - 1);
        }
        j += 1;
    }
    r.mod_floor(&(BigInt::one() << k))
        .to_biguint()
        .expect("reduced residue is nonnegative")
}

/// `2 * atanh(z)` for a fixed-point `z` (scale `2^w`) with `|z| <= 1/2`.
fn two_atanh_fixed(z: &BigInt, w: u32) -> BigInt {
    if z.is_negative() {
        return -two_atanh_fixed(&-z, w);
    }
    let z2 = (z * z) >> w;
    let mut power = z.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    while !power.is_zero() {
        sum += &power / BigInt::from(k);
        power = (&power * &z2) >> w;
        k += 2;
    }
    sum << 1
}

fn ln2_fixed(w: u32) -> BigInt {
    let third = (BigInt::one() << w) / BigInt::from(3);
    two_atanh_fixed(&third, w)
}

/// `ln(num/den)` as a fixed-point integer with scale `2^w`, accurate to a
/// few units in the last place.
fn ln_ratio_fixed(num: &BigUint, den: &BigUint, w: u32) -> BigInt {
    let shift = num.bits() as i64 - den.bits() as i64;
    let one = BigUint::one() << w;
    // y = num / (den * 2^shift) lies in (1/2, 2)
    let mut k = shift;
    let mut y = if shift >= 0 {
        (num << w) / (den << (shift as u64))
    } else {
        (num << (w as u64 + (-shift) as u64)) / den
    };
    // pull y into [1/sqrt2, sqrt2]
    let two_one_sq = (&one * &one) << 1u32;
    if &y * &y > two_one_sq {
        y >>= 1u32;
        k += 1;
    } else if (&y * &y) << 1u32 < &one * &one {
        y <<= 1u32;
        k -= 1;
    }
    let y = BigInt::from(y);
    let one = BigInt::from(one);
    let z = ((&y - &one) << w) / (&y + &one);
    two_atanh_fixed(&z, w) + ln2_fixed(w) * BigInt::from(k)
}

fn round_shift(v: BigInt, bits: u32) -> BigInt {
    if bits == 0 {
        return v;
    }
    let half = BigInt::one() << (bits - 1);
    (v + half) >> bits
}

/// `ln(x)` for positive rational `x`, as an integer scaled by `2^prec`.
pub fn ln_rational(x: &BigRational, prec: u32) -> BigInt {
    assert!(x.is_positive(), "logarithm of a nonpositive rational");
    let w = prec + GUARD_BITS;
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    round_shift(ln_ratio_fixed(num, den, w), GUARD_BITS)
}

/// `ln(|a| + |b| sqrt(d))` for `d > 0` squarefree, scaled by `2^prec`.
/// Both summands are nonnegative so no cancellation occurs.
pub fn ln_same_sign_quadratic(a: &BigRational, b: &BigRational, d: u64, prec: u32) -> BigInt {
    let w = prec + GUARD_BITS;
    let q = w + 8;
    // sqrt(d) ~ s / 2^q, truncated
    let s = (BigUint::from(d) << (2 * q)).sqrt();
    let approx = a.abs() + b.abs() * BigRational::new(BigInt::from(s), BigInt::one() << q);
    let num = approx.numer().magnitude();
    let den = approx.denom().magnitude();
    round_shift(ln_ratio_fixed(num, den, w), GUARD_BITS)
}

/// Render a fixed-point value (scale `2^prec`) with `digits` decimals.
pub fn fixed_to_decimal(v: &BigInt, prec: u32, digits: usize) -> String {
    let scaled = round_shift(v * BigInt::from(10u32).pow(digits as u32), prec);
    let negative = scaled.sign() == Sign::Minus;
    let mag = scaled.magnitude().to_string();
    let padded = if mag.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - mag.len()), mag)
    } else {
        mag
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - digits);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Nearest `f64` to a fixed-point value with scale `2^prec`.
pub fn fixed_to_f64(v: &BigInt, prec: u32) -> f64 {
    let bits = v.bits();
    if bits > 1000 {
        // keep the mantissa in range before converting
        let drop = (bits - 1000) as u32;
        return (v >> drop).to_f64().unwrap_or(f64::NAN) * 2f64.powi(drop as i32 - prec as i32);
    }
    v.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(prec as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ln_matches_std_for_small_values() {
        for (n, d) in [(3, 2), (1, 3), (10, 1), (1, 1), (7, 9), (1_000_000, 3)] {
            let got = fixed_to_f64(&ln_rational(&rat(n, d), 64), 64);
            let want = (n as f64 / d as f64).ln();
            assert!((got - want).abs() < 1e-15, "{n}/{d}: {got} vs {want}");
        }
    }

    #[test]
    fn ln_high_precision_digits() {
        // ln 2 = 0.69314718055994530941723212145817656807550013436025...
        let v = ln_rational(&rat(2, 1), 200);
        let s = fixed_to_decimal(&v, 200, 50);
        assert_eq!(s, "0.69314718055994530941723212145817656807550013436026");
    }

    #[test]
    fn ln_quadratic_unit() {
        let v = ln_same_sign_quadratic(&rat(1, 1), &rat(1, 1), 2, 64);
        let want = (1.0 + 2f64.sqrt()).ln();
        assert!((fixed_to_f64(&v, 64) - want).abs() < 1e-15);
    }

    #[test]
    fn tonelli_roots() {
        assert_eq!(sqrt_mod_prime(2, 7), Some((3, 4)));
        assert_eq!(sqrt_mod_prime(3, 5), None);
        assert_eq!(sqrt_mod_prime(-1, 13), Some((5, 8)));
        for p in [3u64, 5, 7, 11, 13, 17, 97, 101, 1_000_000_007] {
            for d in [-7i64, -3, -2, -1, 2, 3, 5, 10] {
                if let Some((r, s)) = sqrt_mod_prime(d, p) {
                    let n = d.rem_euclid(p as i64) as u64;
                    assert_eq!(mul_mod(r, r, p), n);
                    assert_eq!(mul_mod(s, s, p), n);
                    assert!(r < s);
                }
            }
        }
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_lift(2, 7, 3, 1), BigUint::from(3u32));
        assert_eq!(hensel_lift(2, 7, 3, 2), BigUint::from(10u32));
        let r = hensel_lift(2, 7, 3, 9);
        let m = BigUint::from(7u32).pow(9);
        assert_eq!((&r * &r) % &m, BigUint::from(2u32) % &m);
    }

    #[test]
    fn two_adic_roots() {
        for d in [-7i64, 17, 41, 1] {
            for seed in [1u64, 3] {
                let r = two_adic_sqrt(d, seed, 20);
                let m = BigInt::one() << 20u32;
                let sq = (BigInt::from(r.clone()) * BigInt::from(r.clone()) - d).mod_floor(&m);
                assert!(sq.is_zero(), "d={d} seed={seed}");
                assert_eq!((&r % 4u32).to_u64(), Some(seed));
            }
        }
    }

    #[test]
    fn factorization() {
        let f = prime_factors(&BigUint::from(360u32)).unwrap();
        assert_eq!(f.into_iter().collect::<Vec<_>>(), vec![2, 3, 5]);
        let big = BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64) * 12u32;
        let f = prime_factors(&big).unwrap();
        assert_eq!(
            f.into_iter().collect::<Vec<_>>(),
            vec![2, 3, 998_244_353, 1_000_000_007]
        );
    }
}
