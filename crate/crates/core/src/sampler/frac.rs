use std::fmt;
use std::ops::{Add, Sub};

/// A number in `[0, 1)` as a 64-bit binary fraction: the value is `bits / 2^64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Frac64(pub u64);

/// Fractional part of √2, truncated to 64 bits.
pub const SQRT2_FRAC: Frac64 = Frac64(0x6a09_e667_f3bc_c908);

impl Frac64 {
    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 18_446_744_073_709_551_616.0
    }

    /// `m · self mod 1`.
    pub fn scale(self, m: u64) -> Frac64 {
        Frac64(self.0.wrapping_mul(m))
    }

    /// `⌊self · n⌋`, always below `n`.
    pub fn floor_mul(self, n: u64) -> u64 {
        ((u128::from(self.0) * u128::from(n)) >> 64) as u64
    }
}

/// Addition mod 1.
impl Add for Frac64 {
    type Output = Frac64;

    fn add(self, other: Frac64) -> Frac64 {
        Frac64(self.0.wrapping_add(other.0))
    }
}

/// Subtraction mod 1.
impl Sub for Frac64 {
    type Output = Frac64;

    fn sub(self, other: Frac64) -> Frac64 {
        Frac64(self.0.wrapping_sub(other.0))
    }
}

impl fmt::Display for Frac64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:016x}", self.0)
    }
}

/// `x + √2 mod 1`.
pub fn rotate(x: Frac64) -> Frac64 {
    x + SQRT2_FRAC
}

pub fn rotate_inv(x: Frac64) -> Frac64 {
    x - SQRT2_FRAC
}

/// Splits the binary digits of `t` into odd positions (first output) and even
/// positions (second output). Each output keeps 32 significant bits.
pub fn zeta(t: Frac64) -> (Frac64, Frac64) {
    let (mut odd, mut even) = (0u64, 0u64);
    for i in 0..32 {
        odd |= (t.0 >> (63 - 2 * i) & 1) << (63 - i);
        even |= (t.0 >> (62 - 2 * i) & 1) << (63 - i);
    }
    (Frac64(odd), Frac64(even))
}

/// Interleaves the top 32 bits of `a` (odd positions) and `b` (even positions).
pub fn zeta_inv(a: Frac64, b: Frac64) -> Frac64 {
    let mut t = 0u64;
    for i in 0..32 {
        t |= (a.0 >> (63 - i) & 1) << (63 - 2 * i);
        t |= (b.0 >> (63 - i) & 1) << (62 - 2 * i);
    }
    Frac64(t)
}

/// Whether `h2 = h1 + k·√2 mod 1` for some `|k| ≤ r`.
pub fn h_orbit_collision(h1: Frac64, h2: Frac64, r: u32) -> bool {
    let mut up = h1;
    let mut down = h1;
    if up == h2 {
        return true;
    }
    for _ in 0..r {
        up = rotate(up);
        down = rotate_inv(down);
        if up == h2 || down == h2 {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_constant_matches_the_float_value() {
        let approx = SQRT2_FRAC.to_f64();
        assert!((approx - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        // checked against the exact square: (1 + c/2^64)^2 < 2 < (1 + (c+1)/2^64)^2
        let c = u128::from(SQRT2_FRAC.0);
        let one = 1u128 << 64;
        let sq = |x: u128| {
            let (hi, lo) = (x >> 64, x & (one - 1));
            // (hi·2^64 + lo)^2 / 2^128 compared with 2, done in 2^-64 units
            hi * hi * one + 2 * hi * lo + ((lo * lo) >> 64)
        };
        assert!(sq(one + c) < 2 * one);
        assert!(sq(one + c + 1) >= 2 * one);
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta(Frac64(0)), (Frac64(0), Frac64(0)));
        let (a, b) = zeta(Frac64(0xaaaa_aaaa_aaaa_aaaa));
        assert_eq!(a, Frac64(0xffff_ffff_0000_0000));
        assert_eq!(b, Frac64(0));
        let t = Frac64(0x0123_4567_89ab_cdef);
        let (a, b) = zeta(t);
        assert_eq!(zeta_inv(a, b), t);
    }

    #[test]
    fn rotation_inverts() {
        let x = Frac64(12345);
        assert_eq!(rotate_inv(rotate(x)), x);
        assert!(h_orbit_collision(x, rotate(rotate(x)), 2));
        assert!(!h_orbit_collision(x, rotate(rotate(x)), 1));
        assert_eq!(Frac64(u64::MAX).floor_mul(3), 2);
        assert_eq!(Frac64(1 << 63).scale(2), Frac64(0));
    }
}
