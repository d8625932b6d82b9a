//! Singular fibres of the Albanese map: the central component Y with its
//! Hirzebruch–Jung strings, exact multiplicities, K·Y and Y², and the
//! contraction of (−1)-curves down to the minimal model.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{solve_linear, Rational};
use crate::quotsing::{hj_expand, SingularityType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCurve {
    pub name: String,
    pub multiplicity: i64,
    pub self_int: i64,
    pub k_degree: i64,
}

/// The string of one singular point, listed outward from Y.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberString {
    pub kind: SingularityType,
    pub curves: Vec<FiberCurve>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberConfiguration {
    pub genus_f: u32,
    pub central: FiberCurve,
    pub strings: Vec<FiberString>,
}

fn letter(k: usize) -> String {
    let alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXZ";
    let c = alphabet.chars().nth(k % alphabet.len()).expect("in range");
    if k < alphabet.len() {
        c.to_string()
    } else {
        format!("{c}{}", k / alphabet.len())
    }
}

/// Multiplicities along a string `[b_1..b_k]` meeting a curve of
/// multiplicity `n` at `b_1`: `μ_{t−1} − b_t μ_t + μ_{t+1} = 0`.
fn string_multiplicities(n: i64, b: &[u32]) -> Result<Vec<Rational>> {
    let k = b.len();
    let mut a = vec![vec![Rational::ZERO; k]; k];
    let mut rhs = vec![Rational::ZERO; k];
    for t in 0..k {
        a[t][t] = Rational::int(-(b[t] as i128));
        if t > 0 {
            a[t][t - 1] = Rational::ONE;
        }
        if t + 1 < k {
            a[t][t + 1] = Rational::ONE;
        }
    }
    rhs[0] = Rational::int(-(n as i128));
    solve_linear(&a, &rhs)
}

/// Fibre over a branch point of C → E whose stabilizer has order `n`, with
/// one string per singular point lying on it.
///
/// The string of an oriented type `1/n(1,q)` is the expansion of `n/q'`,
/// read from the curve meeting Y.
pub fn build_fiber(n: u32, strings: &[SingularityType], genus_f: u32) -> Result<FiberConfiguration> {
    if strings.is_empty() {
        return Err(Error::Precondition("a singular fibre needs at least one string".into()));
    }
    let mut out = Vec::new();
    for (k, t) in strings.iter().enumerate() {
        if !n.is_multiple_of(t.n) {
            return Err(Error::Precondition(format!("{t} cannot lie on a fibre of multiplicity {n}")));
        }
        let b = hj_expand(t.n, t.q_prime())?.b;
        let mu = string_multiplicities(n as i64, &b)?;
        let name = letter(k);
        let mut curves = Vec::new();
        for (idx, (&bt, m)) in b.iter().zip(&mu).enumerate() {
            let multiplicity = m
                .to_integer()
                .filter(|v| *v > 0)
                .ok_or_else(|| Error::Inconsistent(format!("string of {t} gets multiplicity {m}")))?;
            curves.push(FiberCurve {
                name: if b.len() == 1 { name.clone() } else { format!("{name}{}", idx + 1) },
                multiplicity: multiplicity as i64,
                self_int: -(bt as i64),
                k_degree: bt as i64 - 2,
            });
        }
        out.push(FiberString { kind: *t, curves });
    }
    let strings = out;
    // K·F̄ = 2g(F) − 2 and F̄·Y = 0 fix K·Y and Y².
    let k_rest: i64 = strings.iter().flat_map(|s| &s.curves).map(|c| c.multiplicity * c.k_degree).sum();
    let adj: i64 = strings.iter().map(|s| s.curves[0].multiplicity).sum();
    let k_y = Rational::new(2 * genus_f as i128 - 2 - k_rest as i128, n as i128);
    let y2 = Rational::new(-(adj as i128), n as i128);
    let (Some(k_y), Some(y2)) = (k_y.to_integer(), y2.to_integer()) else {
        return Err(Error::Inconsistent(format!("K·Y = {k_y} and Y² = {y2} must be integers")));
    };
    let cfg = FiberConfiguration {
        genus_f,
        central: FiberCurve { name: "Y".into(), multiplicity: n as i64, self_int: y2 as i64, k_degree: k_y as i64 },
        strings,
    };
    cfg.check()?;
    Ok(cfg)
}

impl FiberConfiguration {
    /// All curves, Y first.
    pub fn curves(&self) -> Vec<&FiberCurve> {
        std::iter::once(&self.central).chain(self.strings.iter().flat_map(|s| &s.curves)).collect()
    }

    /// Intersection matrix in the order of [`FiberConfiguration::curves`].
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.curves().len();
        let mut m = vec![vec![0i64; n]; n];
        m[0][0] = self.central.self_int;
        let mut idx = 1;
        for s in &self.strings {
            m[0][idx] = 1;
            m[idx][0] = 1;
            for (t, c) in s.curves.iter().enumerate() {
                m[idx + t][idx + t] = c.self_int;
                if t + 1 < s.curves.len() {
                    m[idx + t][idx + t + 1] = 1;
                    m[idx + t + 1][idx + t] = 1;
                }
            }
            idx += s.curves.len();
        }
        m
    }

    /// `F̄·Z = 0` for every component and `K·F̄ = 2g(F) − 2`.
    pub fn check(&self) -> Result<()> {
        let curves = self.curves();
        let m = self.intersection_matrix();
        for (i, c) in curves.iter().enumerate() {
            let dot: i64 = curves.iter().enumerate().map(|(j, d)| d.multiplicity * m[i][j]).sum();
            if dot != 0 {
                return Err(Error::Inconsistent(format!("F·{} = {dot}", c.name)));
            }
        }
        let kf: i64 = curves.iter().map(|c| c.multiplicity * c.k_degree).sum();
        if kf != 2 * self.genus_f as i64 - 2 {
            return Err(Error::Inconsistent(format!("K·F = {kf}, expected {}", 2 * self.genus_f as i64 - 2)));
        }
        Ok(())
    }

    /// `(K·Y, Y²)`
    pub fn central_numbers(&self) -> (i64, i64) {
        (self.central.k_degree, self.central.self_int)
    }

    /// Multiplicity sequences of the strings, outward from Y.
    pub fn multiplicity_sequences(&self) -> Vec<Vec<i64>> {
        self.strings.iter().map(|s| s.curves.iter().map(|c| c.multiplicity).collect()).collect()
    }
}

impl fmt::Display for FiberConfiguration {
    /// `F = 3Y + A + 2B1 + B2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .curves()
            .iter()
            .map(|c| if c.multiplicity == 1 { c.name.clone() } else { format!("{}{}", c.multiplicity, c.name) })
            .collect();
        write!(f, "F = {}", terms.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    /// Contracted curves in order, named `fibre:curve` with fibres counted from 1.
    pub steps: Vec<String>,
    pub k2_minimal: i64,
    pub is_input_minimal: bool,
}

struct Tracker {
    names: Vec<String>,
    fiber: Vec<usize>,
    k: Vec<i64>,
    m: Vec<Vec<i64>>,
    alive: Vec<bool>,
}

/// Contracts (−1)-curves among the fibre components until none is left.
/// Only fibre components are tracked, which suffices because a (−1)-curve
/// on S can only be a central component.
pub fn contract_to_minimal(fibers: &[FiberConfiguration], k2: i64) -> Result<ContractionReport> {
    let mut t = Tracker { names: Vec::new(), fiber: Vec::new(), k: Vec::new(), m: Vec::new(), alive: Vec::new() };
    let total: usize = fibers.iter().map(|f| f.curves().len()).sum();
    t.m = vec![vec![0; total]; total];
    let mut base = 0;
    for (fi, f) in fibers.iter().enumerate() {
        let im = f.intersection_matrix();
        for (i, c) in f.curves().iter().enumerate() {
            t.names.push(c.name.clone());
            t.fiber.push(fi);
            t.k.push(c.k_degree);
            t.alive.push(true);
            for (j, row) in im[i].iter().enumerate() {
                t.m[base + i][base + j] = *row;
            }
        }
        base += im.len();
    }
    let mut steps = Vec::new();
    loop {
        let minus_one: Vec<usize> = (0..total).filter(|&i| t.alive[i] && t.k[i] == -1 && t.m[i][i] == -1).collect();
        let Some(&e) = minus_one.first() else { break };
        if minus_one.iter().filter(|&&i| t.fiber[i] == t.fiber[e]).count() > 1 {
            return Err(Error::Inconsistent("two (−1)-curves in one fibre at the same stage".into()));
        }
        let dots: Vec<i64> = (0..total).map(|i| t.m[i][e]).collect();
        for i in 0..total {
            if !t.alive[i] || i == e {
                continue;
            }
            t.k[i] -= dots[i];
            for j in 0..total {
                if t.alive[j] && j != e {
                    t.m[i][j] += dots[i] * dots[j];
                }
            }
        }
        t.alive[e] = false;
        steps.push(format!("{}:{}", t.fiber[e] + 1, t.names[e]));
    }
    Ok(ContractionReport { k2_minimal: k2 + steps.len() as i64, is_input_minimal: steps.is_empty(), steps })
}

/// With χ = 1, `e(Ŝ) ≥ Σ μ_x ≥ 2·#(singular fibres)` bounds the number of
/// (−1)-curves on S by `⌊e(Ŝ)/2⌋`.
pub fn minus_one_bound(euler_minimal: i64) -> i64 {
    euler_minimal.max(0) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u32, q: u32) -> SingularityType {
        SingularityType::new(n, q).unwrap()
    }

    #[test]
    fn k2_five_fibre() {
        let f = build_fiber(3, &[t(3, 1), t(3, 2)], 3).unwrap();
        assert_eq!(f.to_string(), "F = 3Y + A + 2B1 + B2");
        assert_eq!(f.central_numbers(), (1, -1));
        let r = contract_to_minimal(&[f], 5).unwrap();
        assert_eq!((r.k2_minimal, r.is_input_minimal), (5, true));
    }

    #[test]
    fn k2_one_fibre_contracts_twice() {
        let f = build_fiber(7, &[t(7, 1), t(7, 2), t(7, 4)], 3).unwrap();
        assert_eq!(f.to_string(), "F = 7Y + A + 4B1 + B2 + 2C1 + C2");
        assert_eq!(f.central_numbers(), (-1, -1));
        let r = contract_to_minimal(&[f], 1).unwrap();
        assert_eq!(r.steps, vec!["1:Y".to_string(), "1:B1".to_string()]);
        assert_eq!(r.k2_minimal, 3);
    }

    #[test]
    fn bad_inputs() {
        assert!(build_fiber(3, &[], 3).is_err());
        assert!(build_fiber(4, &[t(3, 1)], 3).is_err());
        // A lone 1/3(1,1) on a fibre of genus 3 leaves K·Y = 1, Y² = −1/3.
        assert!(build_fiber(3, &[t(3, 1)], 3).is_err());
    }

    #[test]
    fn bound() {
        assert_eq!(minus_one_bound(10), 5);
        assert_eq!(minus_one_bound(9), 4);
    }
}
