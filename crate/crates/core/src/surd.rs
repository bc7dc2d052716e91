//! Exact arithmetic in the quadratic field `Q(sqrt 2)`.
//!
//! Structure constants in the unit-pairing normalization pick up factors of
//! `sqrt 2` in the doubly-laced families; everything else is rational.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::rootsys::Rational;

/// `rational + sqrt2_coeff * sqrt(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    pub rational: Rational,
    pub sqrt2_coeff: Rational,
}

impl Surd {
    pub const fn new(rational: Rational, sqrt2_coeff: Rational) -> Self {
        Surd {
            rational,
            sqrt2_coeff,
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Surd::new(r, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Surd::from_rational(Rational::from_integer(n))
    }

    pub fn sqrt2() -> Self {
        Surd::new(Rational::zero(), Rational::one())
    }

    /// Square root of a non-negative rational of the form `k^2` or `2 k^2`.
    pub fn sqrt_of(r: Rational) -> Option<Surd> {
        if r.is_negative() {
            return None;
        }
        if let Some(q) = rational_sqrt(r) {
            return Some(Surd::from_rational(q));
        }
        // r = 2 k^2  <=>  r / 2 is a square; then sqrt(r) = k sqrt(2)
        rational_sqrt(r / Rational::from_integer(2)).map(|k| Surd::new(Rational::zero(), k))
    }

    pub fn conj(self) -> Surd {
        Surd::new(self.rational, -self.sqrt2_coeff)
    }

    /// Field norm `a^2 - 2 b^2`.
    pub fn norm(self) -> Rational {
        self.rational * self.rational
            - Rational::from_integer(2) * self.sqrt2_coeff * self.sqrt2_coeff
    }

    pub fn is_rational(self) -> bool {
        self.sqrt2_coeff.is_zero()
    }

    pub fn to_f64(self) -> f64 {
        ratio_f64(self.rational) + ratio_f64(self.sqrt2_coeff) * std::f64::consts::SQRT_2
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(self) -> i32 {
        let sa = sign(self.rational);
        let sb = sign(self.sqrt2_coeff);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // opposite signs: compare a^2 with 2 b^2
        let a2 = self.rational * self.rational;
        let b2 = Rational::from_integer(2) * self.sqrt2_coeff * self.sqrt2_coeff;
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(self) -> Surd {
        if self.signum() < 0 {
            -self
        } else {
            self
        }
    }

    pub fn inverse(self) -> Option<Surd> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Surd::new(c.rational / n, c.sqrt2_coeff / n))
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

fn sign(r: Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn ratio_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let mut s = (n as f64).sqrt() as i64;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    (s * s == n).then_some(s)
}

fn rational_sqrt(r: Rational) -> Option<Rational> {
    Some(Rational::new(isqrt(*r.numer())?, isqrt(*r.denom())?))
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.sqrt2_coeff.is_zero()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::from_int(1)
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        Surd::new(self.rational + o.rational, self.sqrt2_coeff + o.sqrt2_coeff)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        Surd::new(self.rational - o.rational, self.sqrt2_coeff - o.sqrt2_coeff)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::new(-self.rational, -self.sqrt2_coeff)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let two = Rational::from_integer(2);
        Surd::new(
            self.rational * o.rational + two * self.sqrt2_coeff * o.sqrt2_coeff,
            self.rational * o.sqrt2_coeff + self.sqrt2_coeff * o.rational,
        )
    }
}

impl Mul<Rational> for Surd {
    type Output = Surd;
    fn mul(self, r: Rational) -> Surd {
        Surd::new(self.rational * r, self.sqrt2_coeff * r)
    }
}

impl Div for Surd {
    type Output = Surd;
    /// Panics on division by zero, like the rational division it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Surd) -> Surd {
        self * o.inverse().expect("division by zero in Q(sqrt 2)")
    }
}

impl AddAssign for Surd {
    fn add_assign(&mut self, o: Surd) {
        *self = *self + o;
    }
}

impl SubAssign for Surd {
    fn sub_assign(&mut self, o: Surd) {
        *self = *self - o;
    }
}

impl MulAssign for Surd {
    fn mul_assign(&mut self, o: Surd) {
        *self = *self * o;
    }
}

impl fmt::Display for Surd {
    /// Formats as e.g. `3`, `-1/2`, `sqrt(2)`, `sqrt(2)/2`, `1+3*sqrt(2)/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.rational;
        let b = self.sqrt2_coeff;
        if b.is_zero() {
            return write!(f, "{a}");
        }
        if !a.is_zero() {
            write!(f, "{a}")?;
            if b.is_positive() {
                write!(f, "+")?;
            }
        }
        if b.is_negative() {
            write!(f, "-")?;
        }
        let b = b.abs();
        let (num, den) = (*b.numer(), *b.denom());
        if num != 1 {
            write!(f, "{num}*")?;
        }
        write!(f, "sqrt(2)")?;
        if den != 1 {
            write!(f, "/{den}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(Surd::sqrt2() * Surd::sqrt2(), Surd::from_int(2));
    }

    #[test]
    fn square_roots() {
        assert_eq!(Surd::sqrt_of(q(1, 2)), Some(Surd::new(q(0, 1), q(1, 2))));
        assert_eq!(Surd::sqrt_of(q(9, 4)), Some(Surd::from_rational(q(3, 2))));
        assert_eq!(Surd::sqrt_of(q(8, 1)), Some(Surd::new(q(0, 1), q(2, 1))));
        assert_eq!(Surd::sqrt_of(q(3, 1)), None);
        assert_eq!(Surd::sqrt_of(q(-1, 1)), None);
    }

    #[test]
    fn signs() {
        assert_eq!(Surd::new(q(1, 1), q(-1, 1)).signum(), -1);
        assert_eq!(Surd::new(q(3, 2), q(-1, 1)).signum(), 1);
        assert_eq!(Surd::new(q(-3, 2), q(1, 1)).signum(), -1);
        assert_eq!(Surd::zero().signum(), 0);
    }

    #[test]
    fn display() {
        assert_eq!(Surd::from_int(-2).to_string(), "-2");
        assert_eq!(Surd::new(q(0, 1), q(1, 2)).to_string(), "sqrt(2)/2");
        assert_eq!(Surd::new(q(0, 1), q(-1, 1)).to_string(), "-sqrt(2)");
        assert_eq!(Surd::new(q(1, 1), q(3, 4)).to_string(), "1+3*sqrt(2)/4");
    }

    fn surd() -> impl Strategy<Value = Surd> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6)
            .prop_map(|(a, b, c, d)| Surd::new(q(a, b), q(c, d)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in surd(), y in surd(), z in surd()) {
            prop_assert_eq!((x + y) * z, x * z + y * z);
            prop_assert_eq!(x * y, y * x);
            if !y.is_zero() {
                prop_assert_eq!((x / y) * y, x);
            }
        }

        #[test]
        fn sign_matches_float(x in surd()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
            }
        }
    }
}
