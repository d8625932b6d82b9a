//! Exact rationals over `i128`, modular inverses and a small linear solver.
//!
//! Every operation is checked; an overflow panics instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced fraction with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Rational {
    num: i128,
    den: i128,
}

fn overflow() -> ! {
    panic!("rational arithmetic overflowed i128")
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num/den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = n.checked_neg().unwrap_or_else(|| overflow());
            d = d.checked_neg().unwrap_or_else(|| overflow());
        }
        Rational { num: n, den: d }
    }

    pub fn int(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// The integer value, if this is an integer.
    pub fn to_integer(&self) -> Option<i128> {
        self.is_integer().then_some(self.num)
    }

    pub fn floor(&self) -> i128 {
        Integer::div_floor(&self.num, &self.den)
    }

    /// `self - floor(self)`, always in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        *self - Rational::int(self.floor())
    }

    pub fn recip(&self) -> Rational {
        assert!(self.num != 0, "reciprocal of zero");
        Rational::new(self.den, self.num)
    }

    pub fn abs(&self) -> Rational {
        if self.num < 0 {
            -*self
        } else {
            *self
        }
    }

    /// Mixed form `floor+p/q`, e.g. `6+3/4` or `3+0`.
    pub fn mixed(&self) -> String {
        let f = self.fract();
        if f.is_zero() {
            format!("{}+0", self.floor())
        } else {
            format!("{}+{}/{}", self.floor(), f.num, f.den)
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i128 = n.parse().map_err(|_| bad())?;
        let d: i128 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Rational::new(n, d))
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::int(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::int(n as i128)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::int(n as i128)
    }
}

fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).unwrap_or_else(|| overflow())
}

fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b).unwrap_or_else(|| overflow())
}

impl Add for Rational {
    type Output = Rational;

    fn add(self, o: Rational) -> Rational {
        let g = self.den.gcd(&o.den);
        let den = cmul(self.den / g, o.den);
        let num = cadd(cmul(self.num, o.den / g), cmul(o.num, self.den / g));
        Rational::new(num, den)
    }
}

impl Sub for Rational {
    type Output = Rational;

    fn sub(self, o: Rational) -> Rational {
        self + (-o)
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational { num: self.num.checked_neg().unwrap_or_else(|| overflow()), den: self.den }
    }
}

impl Mul for Rational {
    type Output = Rational;

    fn mul(self, o: Rational) -> Rational {
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (g1, g2) = (g1.max(1), g2.max(1));
        Rational::new(cmul(self.num / g1, o.num / g2), cmul(self.den / g2, o.den / g1))
    }
}

impl Div for Rational {
    type Output = Rational;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Rational) -> Rational {
        self * o.recip()
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, o: Rational) {
        *self = *self + o;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, o: Rational) {
        *self = *self - o;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Rational) -> Ordering {
        cmul(self.num, o.den).cmp(&cmul(o.num, self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Rational) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// `q⁻¹ mod n` as a residue in `[1, n-1]`.
pub fn inverse_mod(q: i64, n: i64) -> Result<i64> {
    if n < 2 {
        return Err(Error::Precondition(format!("modulus {n} must be at least 2")));
    }
    let r = q.rem_euclid(n);
    let eg = r.extended_gcd(&n);
    if eg.gcd != 1 {
        return Err(Error::Precondition(format!("{q} is not invertible modulo {n}")));
    }
    Ok(eg.x.rem_euclid(n))
}

/// Solves `a·x = b` exactly by Gauss-Jordan elimination.
pub fn solve_linear(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::Precondition("solve_linear needs a square system".into()));
    }
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Inconsistent("singular linear system".into()))?;
        m.swap(col, pivot);
        let p = m[col][col];
        for v in m[col].iter_mut() {
            *v = *v / p;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col];
                for (x, &p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= f * p;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn reduced_storage() {
        let x = r(6, -8);
        assert_eq!((x.numer(), x.denom()), (-3, 4));
        assert_eq!(r(0, -5), Rational::ZERO);
    }

    #[test]
    fn mixed_form() {
        assert_eq!(r(27, 4).mixed(), "6+3/4");
        assert_eq!(r(3, 1).mixed(), "3+0");
        assert_eq!(r(-9, 2).to_string(), "-9/2");
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_mod(3, 8).unwrap(), 3);
        assert_eq!(inverse_mod(1, 7).unwrap(), 1);
        assert_eq!(inverse_mod(5, 13).unwrap(), 8);
        assert!(inverse_mod(2, 8).is_err());
    }

    #[test]
    fn solve_examples() {
        let one = Rational::ONE;
        let id = vec![vec![one, Rational::ZERO], vec![Rational::ZERO, one]];
        let b = vec![r(2, 3), r(-5, 1)];
        assert_eq!(solve_linear(&id, &b).unwrap(), b);

        let a = vec![vec![r(2, 1), one], vec![one, r(2, 1)]];
        assert_eq!(solve_linear(&a, &[r(3, 1), r(3, 1)]).unwrap(), vec![one, one]);

        assert_eq!(solve_linear(&[vec![r(-3, 1)]], &[r(-3, 1)]).unwrap(), vec![one]);

        let sing = vec![vec![one, one], vec![one, one]];
        assert!(solve_linear(&sing, &[one, one]).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["16/3", "-2", "0", "7/14"] {
            let x: Rational = s.parse().unwrap();
            assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_asserted() {
        let big = Rational::int(i128::MAX / 2);
        let _ = big * Rational::int(4);
    }
}
