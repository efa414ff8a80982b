//! Exact arithmetic in `Q(i, √2)`.
//!
//! Every coefficient produced by the spinor realization of the Clifford
//! generators lies in this field: the odd-dimensional grading operator brings
//! in `i` and the symplectic generators bring in `√2`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::Reciprocal;
use malachite_base::num::basic::traits::{One, Zero};
use malachite_q::Rational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `a + b·i + c·√2 + d·i√2` of `Q(i, √2)`.
///
/// Coordinates are kept in lowest terms by `malachite`, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    coords: [Rational; 4],
}

// Multiplication table of the basis {1, i, √2, i√2}: BASIS_MUL[p][q] = (factor, index).
const BASIS_MUL: [[(i8, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (1, 3), (2, 0), (2, 1)],
    [(1, 3), (-1, 2), (2, 1), (-2, 0)],
];

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::ONE)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_coords([Rational::ZERO, Rational::ONE, Rational::ZERO, Rational::ZERO])
    }

    pub fn sqrt2() -> Self {
        Self::from_coords([Rational::ZERO, Rational::ZERO, Rational::ONE, Rational::ZERO])
    }

    pub fn from_coords(coords: [Rational; 4]) -> Self {
        Scalar { coords }
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar {
            coords: [r, Rational::ZERO, Rational::ZERO, Rational::ZERO],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    /// `num / den` as a rational scalar. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(Rational::from_signeds(num, den))
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == Rational::ZERO)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0] == Rational::ONE && self.coords[1..].iter().all(|c| *c == Rational::ZERO)
    }

    /// Returns the rational value if the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(|c| *c == Rational::ZERO) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Scalar {
        Scalar {
            coords: [
                &self.coords[0] * r,
                &self.coords[1] * r,
                &self.coords[2] * r,
                &self.coords[3] * r,
            ],
        }
    }

    /// Multiplicative inverse.
    ///
    /// Writing `x = u + v√2` with `u, v ∈ Q(i)`, the inverse is
    /// `(u − v√2) / (u² − 2v²)` and the denominator is inverted in `Q(i)`.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let [a, b, c, d] = &self.coords;
        // u² − 2v² with u = a + bi, v = c + di
        let nr = a * a - b * b - Rational::from(2) * (c * c - d * d);
        let ni = Rational::from(2) * (a * b) - Rational::from(4) * (c * d);
        // 1 / (nr + ni·i) = (nr − ni·i) / (nr² + ni²)
        let norm = &nr * &nr + &ni * &ni;
        if norm == Rational::ZERO {
            // u² = 2v² has no solution with u, v in Q(i) unless both vanish.
            return Err(Error::DivisionByZero);
        }
        let inv_norm = norm.reciprocal();
        let wr = &nr * &inv_norm;
        let wi = -(&ni * &inv_norm);
        // (u − v√2)(wr + wi·i)
        let conj = Scalar::from_coords([a.clone(), b.clone(), -c.clone(), -d.clone()]);
        let w = Scalar::from_coords([wr, wi, Rational::ZERO, Rational::ZERO]);
        Ok(&conj * &w)
    }

    /// Renders each coordinate as `"p/q"`.
    pub fn to_strings(&self) -> [String; 4] {
        let f = |r: &Rational| {
            let sign = if *r < Rational::ZERO { "-" } else { "" };
            format!("{sign}{}/{}", r.to_numerator(), r.to_denominator())
        };
        [
            f(&self.coords[0]),
            f(&self.coords[1]),
            f(&self.coords[2]),
            f(&self.coords[3]),
        ]
    }

    pub fn from_strings(parts: &[&str; 4]) -> Result<Scalar> {
        let mut coords: [Rational; 4] = Default::default();
        for (slot, s) in coords.iter_mut().zip(parts.iter()) {
            *slot = Rational::from_str(s)
                .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))?;
        }
        Ok(Scalar { coords })
    }

    fn mul_into(&self, other: &Scalar, out: &mut [Rational; 4]) {
        for (p, x) in self.coords.iter().enumerate() {
            if *x == Rational::ZERO {
                continue;
            }
            for (q, y) in other.coords.iter().enumerate() {
                if *y == Rational::ZERO {
                    continue;
                }
                let (f, idx) = BASIS_MUL[p][q];
                let prod = x * y;
                match f {
                    1 => out[idx] += prod,
                    -1 => out[idx] -= prod,
                    _ => out[idx] += prod * Rational::from(f),
                }
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl PartialEq<i64> for Scalar {
    fn eq(&self, other: &i64) -> bool {
        self.as_rational().is_some_and(|r| *r == *other)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (a, b) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            if *b != Rational::ZERO {
                *a += b;
            }
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (a, b) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            if *b != Rational::ZERO {
                *a -= b;
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out: [Rational; 4] = Default::default();
        self.mul_into(rhs, &mut out);
        Scalar { coords: out }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let [a, b, c, d] = self.coords;
        Scalar {
            coords: [-a, -b, -c, -d],
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "i", "√2", "i√2"];
        let mut wrote = false;
        for (c, unit) in self.coords.iter().zip(UNITS) {
            if *c == Rational::ZERO {
                continue;
            }
            let neg = *c < Rational::ZERO;
            let abs = if neg { -c.clone() } else { c.clone() };
            if wrote {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            if unit.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == Rational::ONE {
                f.write_str(unit)?;
            } else {
                write!(f, "{abs}·{unit}")?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = <[String; 4]>::deserialize(deserializer)?;
        let refs = [
            parts[0].as_str(),
            parts[1].as_str(),
            parts[2].as_str(),
            parts[3].as_str(),
        ];
        Scalar::from_strings(&refs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(a: i64, b: i64, c: i64, d: i64) -> Scalar {
        Scalar::from_coords([a, b, c, d].map(Rational::from))
    }

    #[test]
    fn gaussian_norm() {
        assert_eq!(&s(1, 1, 0, 0) * &s(1, -1, 0, 0), Scalar::from(2));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::from(2));
        assert_eq!(&s(0, 0, 0, 1) * &s(0, 0, 0, 1), Scalar::from(-2));
        assert_eq!(&Scalar::i() * &Scalar::sqrt2(), s(0, 0, 0, 1));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        assert_eq!(s(1, 0, 1, 0).inv().unwrap(), s(-1, 0, 1, 0));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(matches!(Scalar::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rational_embedding_compares_equal() {
        assert_eq!(Scalar::frac(6, 4), Scalar::from_rational(Rational::from_signeds(3, 2)));
        assert!(Scalar::from(3) == 3);
    }

    #[test]
    fn json_round_trip() {
        let x = &s(1, -2, 0, 3) * &Scalar::frac(1, 3);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"["1/3","-2/3","0/1","1/1"]"#);
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn display() {
        assert_eq!(s(0, 0, 0, 0).to_string(), "0");
        assert_eq!(s(1, -1, 2, 0).to_string(), "1 - i + 2·√2");
        assert_eq!(Scalar::frac(-1, 2).to_string(), "-1/2");
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        prop::array::uniform4((-20i64..20, 1i64..7)).prop_map(|parts| {
            Scalar::from_coords(parts.map(|(n, d)| Rational::from_signeds(n, d)))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                let xi = x.inv().unwrap();
                prop_assert!((&xi * &x).is_one());
                prop_assert_eq!(xi.inv().unwrap(), x);
            }
        }
    }
}
