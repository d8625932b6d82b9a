//! Cyclic quotient singularities 1/n(1,q): Hirzebruch-Jung strings and the
//! invariants h, e, B that drive the basket bookkeeping.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{inverse_mod, Rational};

/// An oriented singularity type 1/n(1,q).
///
/// The stored `q` keeps the orientation; see [`SingularityType::normalized`]
/// for the isomorphism-class representative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SingularityType {
    pub n: u32,
    pub q: u32,
}

impl SingularityType {
    pub fn new(n: u32, q: u32) -> Result<Self> {
        if n < 2 || q < 1 || q >= n || n.gcd(&q) != 1 {
            return Err(Error::Precondition(format!("1/{n}(1,{q}) is not a valid type")));
        }
        Ok(SingularityType { n, q })
    }

    /// `q'` with `q·q' ≡ 1 (mod n)`.
    pub fn q_prime(&self) -> u32 {
        inverse_mod(self.q as i64, self.n as i64).expect("validated type") as u32
    }

    /// The same singularity with the two coordinate directions exchanged.
    pub fn reversed(&self) -> Self {
        SingularityType { n: self.n, q: self.q_prime() }
    }

    /// Representative with `q ≤ q'`.
    pub fn normalized(&self) -> Self {
        SingularityType { n: self.n, q: self.q.min(self.q_prime()) }
    }

    pub fn is_rdp(&self) -> bool {
        self.q == self.n - 1
    }

    pub fn resolution(&self) -> HjResolution {
        hj_expand(self.n, self.q).expect("validated type")
    }

    pub fn invariants(&self) -> SingularityInvariants {
        invariants(*self)
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.n, self.q)
    }
}

impl fmt::Debug for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SingularityType {
    type Err = Error;

    /// Parses `1/n(1,q)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected 1/n(1,q), got {s:?}"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = s.strip_prefix("1/").ok_or_else(bad)?;
        let (n, rest) = rest.split_once("(1,").ok_or_else(bad)?;
        let q = rest.strip_suffix(')').ok_or_else(bad)?;
        SingularityType::new(n.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HjResolution {
    /// Self-intersections are `-b[i]`.
    pub b: Vec<u32>,
    pub q_prime: u32,
}

/// Continued fraction `n/q = b1 - 1/(b2 - 1/(...))` with every `b_i ≥ 2`.
pub fn hj_expand(n: u32, q: u32) -> Result<HjResolution> {
    let t = SingularityType::new(n, q)?;
    let mut b = Vec::new();
    let (mut num, mut den) = (n as u64, q as u64);
    while den > 0 {
        let bi = num.div_ceil(den);
        b.push(bi as u32);
        (num, den) = (den, bi * den - num);
    }
    Ok(HjResolution { b, q_prime: t.q_prime() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityInvariants {
    pub h: Rational,
    pub e: Rational,
    #[serde(rename = "B")]
    pub b: Rational,
}

pub fn invariants(t: SingularityType) -> SingularityInvariants {
    let res = t.resolution();
    let n = t.n as i128;
    let k = res.b.len() as i128;
    let sum_b: i128 = res.b.iter().map(|&x| x as i128).sum();
    let qq = Rational::new((t.q + res.q_prime) as i128, n);
    let h = Rational::int(2) - Rational::new(2, n) - qq - Rational::int(sum_b - 2 * k);
    let e = Rational::int(k + 1) - Rational::new(1, n);
    let b = qq + Rational::int(sum_b);
    SingularityInvariants { h, e, b }
}

pub fn is_rdp(t: SingularityType) -> bool {
    t.is_rdp()
}

pub fn is_isomorphic(a: SingularityType, b: SingularityType) -> bool {
    a.n == b.n && (a.q == b.q || (a.q as u64 * b.q as u64) % a.n as u64 == 1)
}

/// One line of the singularity table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityRow {
    pub n: u32,
    pub q: u32,
    pub b: Vec<u32>,
    pub q_prime: u32,
    #[serde(rename = "B")]
    pub big_b: Rational,
    pub h: Rational,
}

impl SingularityRow {
    pub fn kind(&self) -> SingularityType {
        SingularityType { n: self.n, q: self.q }
    }

    /// `n q [b_1,...,b_k] q' B h` with `B` in mixed form.
    pub fn to_line(&self) -> String {
        let b: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        format!("{} {} [{}] {} {} {}", self.n, self.q, b.join(","), self.q_prime, self.big_b.mixed(), self.h)
    }
}

/// Largest product of integers `≥ 2` whose sum is at most `s`; bounds `n` by
/// `n ≤ Π b_i` and `Σ b_i < B`.
fn max_numerator(s: u64) -> u64 {
    let mut best = vec![1u64; s as usize + 1];
    for t in 2..=s as usize {
        for part in 2..=t {
            best[t] = best[t].max(part as u64 * best[t - part]);
        }
    }
    best[s as usize]
}

/// All isomorphism classes (normalized `q ≤ q'`) with `3 ≤ B ≤ max_b`,
/// sorted by `(n, q)`.
pub fn enumerate_by_b(max_b: Rational) -> Vec<SingularityRow> {
    let mut rows = Vec::new();
    if max_b < Rational::int(3) {
        return rows;
    }
    let n_max = max_numerator(max_b.floor() as u64);
    for n in 2..=n_max as u32 {
        for q in 1..n {
            if n.gcd(&q) != 1 {
                continue;
            }
            let t = SingularityType { n, q };
            if t.q_prime() < q {
                continue;
            }
            let inv = invariants(t);
            if inv.b <= max_b {
                let res = t.resolution();
                rows.push(SingularityRow { n, q, b: res.b, q_prime: res.q_prime, big_b: inv.b, h: inv.h });
            }
        }
    }
    rows
}

pub fn appendix_a_text(rows: &[SingularityRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&r.to_line());
        out.push('\n');
    }
    out
}
