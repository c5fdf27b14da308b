//! Arithmetic in the prime field `F_p`.
//!
//! Every coefficient in this crate lives in `F_p` for a prime fixed at
//! runtime. The prime is carried by a [`PrimeContext`]; scalars are plain
//! canonical representatives and all arithmetic goes through the context.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The fixed prime `p` and the degree conventions that depend on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeContext {
    p: u32,
}

impl PrimeContext {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn is_two(&self) -> bool {
        self.p == 2
    }

    #[inline]
    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    /// Reduce an arbitrary integer into `F_p`.
    #[inline]
    pub fn scalar(&self, value: i64) -> Fp {
        Fp(value.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a.0 as u64 + b.0 as u64;
        Fp((s % self.p as u64) as u32)
    }

    #[inline]
    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: Fp) -> Fp {
        if a.0 == 0 {
            a
        } else {
            Fp(self.p - a.0)
        }
    }

    #[inline]
    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        Fp(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    pub fn pow(&self, a: Fp, mut e: u64) -> Fp {
        let mut base = a;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fp) -> Option<Fp> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// `(-1)^e` in `F_p`.
    #[inline]
    pub fn sign(&self, e: i64) -> Fp {
        if e.rem_euclid(2) == 0 {
            Fp::ONE
        } else {
            self.neg(Fp::ONE)
        }
    }

    /// `p^e`, or `None` on overflow.
    pub fn power_of_p(&self, e: u32) -> Option<u64> {
        (self.p as u64).checked_pow(e)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A scalar in `F_p`, stored as its canonical representative in `[0, p)`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Fp(u32);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    /// Build a scalar from a value already known to be reduced.
    pub fn new(value: u32, ctx: &PrimeContext) -> Result<Self> {
        if value >= ctx.p() {
            return Err(Error::ScalarOutOfRange { value, p: ctx.p() });
        }
        Ok(Fp(value))
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `C(a, b) mod p` for single base-`p` digits `a, b < p`.
fn digit_binom(a: u64, b: u64, ctx: &PrimeContext) -> Fp {
    if b > a {
        return Fp::ZERO;
    }
    let b = b.min(a - b);
    let mut num = Fp::ONE;
    let mut den = Fp::ONE;
    for i in 0..b {
        num = ctx.mul(num, ctx.scalar((a - i) as i64));
        den = ctx.mul(den, ctx.scalar((i + 1) as i64));
    }
    // den is a product of integers in [1, p), hence a unit
    ctx.mul(num, ctx.inv(den).expect("digit factorials are units"))
}

/// `C(n, k) mod p` by Lucas' theorem; zero when `k > n`.
pub fn binom_mod_p(n: u64, k: u64, ctx: &PrimeContext) -> Fp {
    if k > n {
        return Fp::ZERO;
    }
    if ctx.is_two() {
        return if n & k == k { Fp::ONE } else { Fp::ZERO };
    }
    let p = ctx.p() as u64;
    let (mut n, mut k) = (n, k);
    let mut acc = Fp::ONE;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return Fp::ZERO;
        }
        acc = ctx.mul(acc, digit_binom(nd, kd, ctx));
        n /= p;
        k /= p;
    }
    acc
}

/// Binomial coefficient as it appears in the Adem-type relations: zero
/// whenever either argument is negative or `k > n`.
#[inline]
pub(crate) fn binom_or_zero(n: i64, k: i64, ctx: &PrimeContext) -> Fp {
    if n < 0 || k < 0 {
        Fp::ZERO
    } else {
        binom_mod_p(n as u64, k as u64, ctx)
    }
}

/// The value of `C(a + k, b) mod p` for `k` divisible by a large power of
/// `p`, where `a < 0 <= b`: `(-1)^b C(b - a - 1, b)`.
pub fn stable_binom(a: i64, b: u64, ctx: &PrimeContext) -> Result<Fp> {
    if a >= 0 {
        return Err(Error::StableBinomDomain(a));
    }
    let top = b as i64 - a - 1;
    let c = binom_mod_p(top as u64, b, ctx);
    Ok(ctx.mul(ctx.sign(b as i64), c))
}
