//! Integer arithmetic helpers on top of `num_bigint`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn is_zero(v: &Int) -> bool {
    v.is_zero()
}

pub fn is_one(v: &Int) -> bool {
    v.is_one()
}

pub fn is_unit(v: &Int) -> bool {
    v.abs().is_one()
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g >= 0.
pub fn xgcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Int::one(), Int::zero());
    let (mut t0, mut t1) = (Int::zero(), Int::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    num_integer::Integer::gcd(a, b)
}

/// Deterministic xorshift generator for randomized property tests.
/// Not cryptographic; reproducible across platforms.
#[derive(Clone, Debug)]
pub struct XorShift {
    state: u64,
}

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift {
            state: seed.max(1),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    /// Uniform-ish integer in [lo, hi] inclusive.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_bezout() {
        let mut rng = XorShift::new(7);
        for _ in 0..200 {
            let a = int(rng.int_in(-50, 50));
            let b = int(rng.int_in(-50, 50));
            let (g, s, t) = xgcd(&a, &b);
            assert_eq!(&s * &a + &t * &b, g);
            assert!(!g.is_negative());
        }
    }
}
