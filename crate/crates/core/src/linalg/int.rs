//! Exact integers with an inline machine-word fast path.
//!
//! Values that fit in an `i64` are stored inline; anything larger spills to a
//! heap `BigInt`. Every operation is exact, overflow promotes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    #[inline]
    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(Box::new(b)),
        }
    }

    #[inline]
    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    #[inline]
    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    #[inline]
    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    #[inline]
    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::from_big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    /// Floor division; panics on a zero divisor.
    #[inline]
    pub fn div_floor(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if !(*a == i64::MIN && *b == -1) => {
                Int::Small(a.div_euclid(*b) - if *b < 0 && a.rem_euclid(*b) != 0 { 1 } else { 0 })
            }
            _ => Int::from_big(self.to_big().div_floor(&d.to_big())),
        }
    }

    /// Remainder in `[0, |d|)`.
    #[inline]
    pub fn mod_floor_pos(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if *b != i64::MIN => Int::Small(a.rem_euclid(*b)),
            _ => {
                let m = d.to_big().abs();
                Int::from_big(self.to_big().mod_floor(&m))
            }
        }
    }

    /// Exact quotient; the caller guarantees divisibility.
    #[inline]
    pub fn div_exact(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if !(*a == i64::MIN && *b == -1) => Int::Small(a / b),
            _ => Int::from_big(self.to_big() / d.to_big()),
        }
    }

    /// Quotient rounded to the nearest integer (ties toward negative infinity).
    #[inline]
    pub fn div_round(&self, d: &Int) -> Int {
        let two = Int::Small(2);
        let shifted = &(&(self * &two) + &d.abs());
        let den = &d.abs() * &two;
        let q = shifted.div_floor(&den);
        if d.is_negative() {
            -q
        } else {
            q
        }
    }

    #[inline]
    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.mod_floor_pos(self).is_zero()
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) if *a != i64::MIN && *b != i64::MIN => Int::Small(a.gcd(b)),
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    pub fn lcm(&self, other: &Int) -> Int {
        if self.is_zero() || other.is_zero() {
            return Int::ZERO;
        }
        (self * &other.div_exact(&self.gcd(other))).abs()
    }

    /// Returns `(g, s, t)` with `g = s*a + t*b = gcd(a, b) >= 0`.
    pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
        let (mut old_r, mut r) = (a.clone(), b.clone());
        let (mut old_s, mut s) = (Int::ONE, Int::ZERO);
        let (mut old_t, mut t) = (Int::ZERO, Int::ONE);
        while !r.is_zero() {
            let q = old_r.div_floor(&r);
            let nr = &old_r - &(&q * &r);
            old_r = std::mem::replace(&mut r, nr);
            let ns = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, ns);
            let nt = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, nt);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }

    pub fn pow(&self, e: u32) -> Int {
        let mut acc = Int::ONE;
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self * b` subtracted from `self` in place: `self -= q * b`.
    #[inline]
    pub fn sub_mul(&mut self, q: &Int, b: &Int) {
        if let (Int::Small(x), Int::Small(qq), Int::Small(bb)) = (&*self, q, b) {
            if let Some(p) = qq.checked_mul(*bb) {
                if let Some(r) = x.checked_sub(p) {
                    *self = Int::Small(r);
                    return;
                }
            }
        }
        let p = q * b;
        *self = &*self - &p;
    }

    /// `self += q * b` in place.
    #[inline]
    pub fn add_mul(&mut self, q: &Int, b: &Int) {
        if let (Int::Small(x), Int::Small(qq), Int::Small(bb)) = (&*self, q, b) {
            if let Some(p) = qq.checked_mul(*bb) {
                if let Some(r) = x.checked_add(p) {
                    *self = Int::Small(r);
                    return;
                }
            }
        }
        let p = q * b;
        *self = &*self + &p;
    }

    /// Factorisation into prime powers by trial division.
    pub fn prime_power_factors(&self) -> Vec<(Int, u32)> {
        let mut n = self.abs();
        let mut out = Vec::new();
        let mut p = Int::Small(2);
        while (&p * &p) <= n {
            let mut e = 0;
            while p.divides(&n) {
                n = n.div_exact(&p);
                e += 1;
            }
            if e > 0 {
                out.push((p.clone(), e));
            }
            p = &p + &Int::ONE;
        }
        if n > Int::ONE {
            out.push((n, 1));
        }
        out
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    #[inline]
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    #[inline]
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<usize> for Int {
    #[inline]
    fn from(v: usize) -> Self {
        match i64::try_from(v) {
            Ok(x) => Int::Small(x),
            Err(_) => Int::from_big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl PartialEq for Int {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a == b,
            (Int::Big(a), Int::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl std::hash::Hash for Int {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Int::Small(v) => {
                0u8.hash(state);
                v.hash(state)
            }
            Int::Big(b) => {
                1u8.hash(state);
                b.hash(state)
            }
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialEq<i64> for Int {
    fn eq(&self, other: &i64) -> bool {
        matches!(self, Int::Small(v) if v == other)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn add(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_add(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn sub(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_sub(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn mul(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_mul(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Int {
    type Output = Int;
    #[inline]
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    #[inline]
    fn neg(self) -> Int {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Int> for Int {
            type Output = Int;
            #[inline]
            fn $m(self, rhs: Int) -> Int {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Int> for Int {
            type Output = Int;
            #[inline]
            fn $m(self, rhs: &Int) -> Int {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Int> for Int {
    #[inline]
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    #[inline]
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Int> for Int {
    #[inline]
    fn mul_assign(&mut self, rhs: &Int) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::ZERO, |a, b| &a + &b)
    }
}

impl std::iter::Product for Int {
    fn product<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::ONE, |a, b| &a * &b)
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

/// Machine-size values serialise as JSON numbers, larger ones as decimal strings.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(v) => Ok(Int::Small(v)),
            Raw::S(s) => s.parse::<BigInt>().map(Int::from_big).map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i128) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Int::from(i64::MAX);
        let b = &a + &Int::ONE;
        assert!(matches!(b, Int::Big(_)));
        let c = &b - &Int::ONE;
        assert!(matches!(c, Int::Small(_)));
        assert_eq!(c, a);
        let sq = &a * &a;
        assert_eq!(sq.to_big(), big(i64::MAX as i128) * big(i64::MAX as i128));
    }

    #[test]
    fn ext_gcd_identity() {
        let (g, s, t) = Int::ext_gcd(&Int::from(12), &Int::from(-18));
        assert_eq!(g, Int::from(6));
        assert_eq!(&(&s * &Int::from(12)) + &(&t * &Int::from(-18)), g);
    }

    #[test]
    fn factors() {
        let f = Int::from(360).prime_power_factors();
        assert_eq!(f, vec![(Int::from(2), 3), (Int::from(3), 2), (Int::from(5), 1)]);
    }

    proptest! {
        #[test]
        fn arithmetic_matches_bigint(a in any::<i64>(), b in any::<i64>()) {
            let (x, y) = (Int::from(a), Int::from(b));
            prop_assert_eq!((&x + &y).to_big(), big(a as i128) + big(b as i128));
            prop_assert_eq!((&x - &y).to_big(), big(a as i128) - big(b as i128));
            prop_assert_eq!((&x * &y).to_big(), big(a as i128) * big(b as i128));
            prop_assert_eq!(x.cmp(&y), a.cmp(&b));
        }

        #[test]
        fn floor_division(a in -10_000i64..10_000, b in prop::sample::select(vec![-7i64, -3, -1, 1, 2, 5, 9])) {
            let (x, y) = (Int::from(a), Int::from(b));
            let q = x.div_floor(&y);
            prop_assert_eq!(q.to_big(), big(a as i128).div_floor(&big(b as i128)));
            let r = x.mod_floor_pos(&y);
            prop_assert!(r >= Int::ZERO && r < y.abs());
            let near = x.div_round(&y);
            let rem = &x - &(&near * &y);
            prop_assert!((&rem.abs() * &Int::from(2)) <= y.abs());
        }
    }
}
