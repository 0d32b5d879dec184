use serde::{Deserialize, Serialize};

use super::{Field, GfError};

/// Largest admissible prime modulus; keeps every product below 2^62.
const MAX_PRIME: u64 = 1 << 31;

/// Deterministic primality by trial division (moduli are at most 2^31).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut p = n.max(2);
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// The prime field `F_q`. Elements are canonical representatives in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, GfError> {
        if q > MAX_PRIME {
            return Err(GfError::ModulusTooLarge(q));
        }
        if !is_prime(q) {
            return Err(GfError::NotPrime(q));
        }
        Ok(Self { q: q as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    /// Reduce an arbitrary integer into the field.
    pub fn reduce(&self, n: u64) -> u32 {
        (n % self.q as u64) as u32
    }

    /// Checked element constructor.
    pub fn elem(&self, v: u64) -> Result<u32, GfError> {
        if v >= self.q as u64 {
            return Err(GfError::FieldMismatch(format!(
                "{v} is not a canonical element of F_{}",
                self.q
            )));
        }
        Ok(v as u32)
    }

    pub fn parse_elem(&self, s: &str) -> Result<u32, GfError> {
        let v = s.trim().parse::<u64>().map_err(|_| GfError::Parse {
            what: "base-field element",
            input: s.to_string(),
        })?;
        self.elem(v)
    }
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }

    #[inline]
    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        let q = self.q as u64;
        (if s >= q { s - q } else { s }) as u32
    }

    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.q as u64 - *b as u64) as u32
        }
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.q as u64) as u32
    }

    fn inv(&self, a: &u32) -> Result<u32, GfError> {
        if *a == 0 {
            return Err(GfError::DivisionByZero);
        }
        // extended Euclid on (a, q)
        let (mut r0, mut r1) = (self.q as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        Ok(t0.rem_euclid(self.q as i64) as u32)
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn from_int(&self, n: u64) -> u32 {
        self.reduce(n)
    }

    fn order(&self) -> u64 {
        self.q as u64
    }

    fn characteristic(&self) -> u64 {
        self.q as u64
    }

    fn from_index(&self, idx: u64) -> u32 {
        debug_assert!(idx < self.q as u64);
        idx as u32
    }

    fn index_of(&self, a: &u32) -> u64 {
        *a as u64
    }

    fn format_elem(&self, a: &u32) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_three_mod_seven() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(&3).unwrap(), 5);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(&0), Err(GfError::DivisionByZero));
    }

    #[test]
    fn rejects_composites_and_large_moduli() {
        assert_eq!(PrimeField::new(9), Err(GfError::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(GfError::NotPrime(1)));
        assert!(matches!(
            PrimeField::new((1 << 31) + 11),
            Err(GfError::ModulusTooLarge(_))
        ));
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn additive_identity() {
        let f = PrimeField::new(11).unwrap();
        for x in 0..11 {
            assert_eq!(f.add(&x, &0), x);
            assert_eq!(f.add(&x, &f.neg(&x)), 0);
        }
    }

    #[test]
    fn next_prime_values() {
        assert_eq!(next_prime(6), 7);
        assert_eq!(next_prime(7), 7);
        assert_eq!(next_prime(8), 11);
        assert_eq!(next_prime(0), 2);
    }

    #[test]
    fn checked_elements() {
        let f = PrimeField::new(5).unwrap();
        assert!(f.elem(5).is_err());
        assert_eq!(f.parse_elem(" 4").unwrap(), 4);
        assert!(f.parse_elem("x").is_err());
    }

    #[test]
    fn arithmetic_matches_modular_reference() {
        let f = PrimeField::new(2_147_483_629).unwrap();
        let q = 2_147_483_629u128;
        let mut x = 123_456_789u64;
        for _ in 0..1000 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (x >> 33) % q as u64;
            let b = (x >> 7) % q as u64;
            let (a32, b32) = (a as u32, b as u32);
            assert_eq!(f.mul(&a32, &b32) as u128, (a as u128 * b as u128) % q);
            assert_eq!(f.add(&a32, &b32) as u128, (a as u128 + b as u128) % q);
            assert_eq!(f.sub(&a32, &b32) as u128, (a as u128 + q - b as u128) % q);
            if a != 0 {
                let inv = f.inv(&a32).unwrap();
                assert_eq!((inv as u128 * a as u128) % q, 1);
            }
        }
    }
}
