//! Prime-field scalar arithmetic with explicit operation counting.
//!
//! Every counted operation takes a `&mut OpCount`. Only additions,
//! multiplications and doublings are tallied; negation is free, as is
//! doubling in characteristic 2 (where it is identically zero).

use std::fmt;
use std::ops::AddAssign;

use crate::error::{Error, Result};

/// Upper bound (exclusive) on the supported characteristic.
pub const MAX_CHARACTERISTIC: u32 = 1 << 16;

/// A coordinate of a vector over GF(p), always reduced into `[0, p)`.
///
/// Values are only created through [`GroundField`], which enforces the range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coord(u32);

impl Coord {
    pub const ZERO: Coord = Coord(0);
    pub const ONE: Coord = Coord(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Tallies of counted ground-field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OpCount {
    pub mult: u64,
    pub doub: u64,
    pub add: u64,
}

impl OpCount {
    pub fn new() -> Self {
        Self::default()
    }

    pub const fn from_parts(mult: u64, doub: u64, add: u64) -> Self {
        OpCount { mult, doub, add }
    }

    pub fn total(&self) -> u64 {
        self.mult + self.doub + self.add
    }
}

impl AddAssign for OpCount {
    fn add_assign(&mut self, rhs: Self) {
        self.mult += rhs.mult;
        self.doub += rhs.doub;
        self.add += rhs.add;
    }
}

impl fmt::Display for OpCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mult={} doub={} add={} total={}",
            self.mult,
            self.doub,
            self.add,
            self.total()
        )
    }
}

/// The prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundField {
    p: u32,
}

impl GroundField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::CharacteristicTooLarge(p));
        }
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        Ok(GroundField { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn is_binary(&self) -> bool {
        self.p == 2
    }

    /// Checked conversion of an integer into a coordinate.
    pub fn coord(&self, value: u64) -> Result<Coord> {
        if value < self.p as u64 {
            Ok(Coord(value as u32))
        } else {
            Err(Error::CoordOutOfRange { value, p: self.p })
        }
    }

    /// Reduces an arbitrary integer modulo p.
    #[inline]
    pub fn reduce(&self, value: i64) -> Coord {
        Coord(value.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn contains(&self, c: Coord) -> bool {
        c.0 < self.p
    }

    #[inline]
    pub fn add(&self, a: Coord, b: Coord, ctx: &mut OpCount) -> Coord {
        ctx.add += 1;
        self.add_uncounted(a, b)
    }

    /// `a - b`, counted as a single addition.
    #[inline]
    pub fn sub(&self, a: Coord, b: Coord, ctx: &mut OpCount) -> Coord {
        self.add(a, self.neg(b), ctx)
    }

    #[inline]
    pub fn mul(&self, a: Coord, b: Coord, ctx: &mut OpCount) -> Coord {
        ctx.mult += 1;
        Coord(a.0 * b.0 % self.p)
    }

    /// `2a`. In characteristic 2 this is zero and nothing is counted.
    #[inline]
    pub fn double(&self, a: Coord, ctx: &mut OpCount) -> Coord {
        if self.p == 2 {
            return Coord::ZERO;
        }
        ctx.doub += 1;
        self.add_uncounted(a, a)
    }

    #[inline]
    pub fn neg(&self, a: Coord) -> Coord {
        if a.0 == 0 {
            a
        } else {
            Coord(self.p - a.0)
        }
    }

    #[inline]
    pub(crate) fn add_uncounted(&self, a: Coord, b: Coord) -> Coord {
        let s = a.0 + b.0;
        Coord(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub(crate) fn sub_uncounted(&self, a: Coord, b: Coord) -> Coord {
        self.add_uncounted(a, self.neg(b))
    }

    /// All field elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = Coord> {
        (0..self.p).map(Coord)
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n` in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
