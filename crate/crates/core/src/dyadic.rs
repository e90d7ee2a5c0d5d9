//! Exact dyadic rationals `num / 2^exp` with arbitrary-precision numerator.
//!
//! Values are kept with the smallest possible exponent: whenever `exp > 0`
//! the numerator is odd (or the value is zero, stored as `0 / 2^0`), and
//! integers keep exponent 0. Addition, negation, multiplication and
//! shifting by powers of two are closed and exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        Self::normalized(num.into(), exp)
    }

    fn normalized(mut num: BigInt, mut exp: u32) -> Self {
        if num.is_zero() {
            return Dyadic { num, exp: 0 };
        }
        if exp > 0 {
            let tz = num.trailing_zeros().unwrap_or(0).min(exp as u64) as u32;
            if tz > 0 {
                num >>= tz;
                exp -= tz;
            }
        }
        Dyadic { num, exp }
    }

    pub fn zero() -> Self {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { num: BigInt::one(), exp: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic { num: BigInt::from(v), exp: 0 }
    }

    /// `2^k`, for any sign of `k`.
    pub fn power_of_two(k: i32) -> Self {
        if k >= 0 {
            Dyadic { num: BigInt::one() << k as u32, exp: 0 }
        } else {
            Dyadic { num: BigInt::one(), exp: (-k) as u32 }
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.num.is_zero() {
            0
        } else if self.num.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { num: self.num.abs(), exp: self.exp }
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i32) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        if k >= 0 {
            let k = k as u32;
            let drop = k.min(self.exp);
            Dyadic {
                num: self.num.clone() << (k - drop),
                exp: self.exp - drop,
            }
        } else {
            Self::normalized(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    /// If the value is `±2^{-t}` with `t >= 0`, returns `t`.
    pub fn signed_unit_power(&self) -> Option<u32> {
        if self.num.abs().is_one() {
            Some(self.exp)
        } else {
            None
        }
    }
}

impl std::ops::Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -self.num.clone(), exp: self.exp }
    }
}

impl std::ops::Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let exp = self.exp.max(rhs.exp);
        let a = self.num.clone() << (exp - self.exp);
        let b = rhs.num.clone() << (exp - rhs.exp);
        Dyadic::normalized(a + b, exp)
    }
}

impl std::ops::Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::normalized(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl std::fmt::Display for Dyadic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}
