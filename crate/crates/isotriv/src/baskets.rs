//! Baskets of cyclic quotient singularities compatible with p_g = q = 1, and
//! the numerical candidates (g(F), n, basket) for each K².

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::catalog::catalog;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::quotsing::{enumerate_by_b, SingularityType};

/// A multiset of singularity types, kept in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basket(Vec<SingularityType>);

fn canonical_key(t: &SingularityType) -> (u32, u32, u32) {
    (t.n, t.q.min(t.q_prime()), t.q)
}

impl Basket {
    pub fn new(mut types: Vec<SingularityType>) -> Self {
        types.sort_by_key(canonical_key);
        Basket(types)
    }

    pub fn types(&self) -> &[SingularityType] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Each type replaced by its `q ≤ q'` representative.
    pub fn normalized(&self) -> Self {
        Basket::new(self.0.iter().map(|t| t.normalized()).collect())
    }

    /// Every type replaced by `1/n(1,q')`.
    pub fn reversed(&self) -> Self {
        Basket::new(self.0.iter().map(|t| t.reversed()).collect())
    }

    pub fn is_rdp_only(&self) -> bool {
        self.0.iter().all(|t| t.is_rdp())
    }

    pub fn sum_b(&self) -> Rational {
        self.0.iter().map(|t| t.invariants().b).sum()
    }

    pub fn sum_h(&self) -> Rational {
        self.0.iter().map(|t| t.invariants().h).sum()
    }

    /// Distinct types with multiplicities, in canonical order.
    pub fn counts(&self) -> Vec<(SingularityType, usize)> {
        let mut out: Vec<(SingularityType, usize)> = Vec::new();
        for &t in &self.0 {
            match out.last_mut() {
                Some((last, k)) if *last == t => *k += 1,
                _ => out.push((t, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("none");
        }
        let parts: Vec<String> =
            self.counts().into_iter().map(|(t, k)| if k > 1 { format!("{k} × {t}") } else { t.to_string() }).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for Basket {
    type Err = Error;

    /// Parses `2 × 1/4(1,1) + 1/2(1,1)`; `x` and `*` also work as the multiplier sign.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "none" {
            return Ok(Basket::default());
        }
        let mut types = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let (k, t) = match term.split_once(['×', 'x', '*']) {
                Some((k, t)) => {
                    let k: usize =
                        k.trim().parse().map_err(|_| Error::Parse(format!("bad multiplicity in {term:?}")))?;
                    (k, t)
                }
                None => (1, term),
            };
            let t: SingularityType = t.parse()?;
            types.extend(std::iter::repeat_n(t, k));
        }
        Ok(Basket::new(types))
    }
}

#[derive(DeriveSerialize)]
struct CountEntry {
    n: u32,
    q: u32,
    count: usize,
}

impl Serialize for Basket {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let counts = self.counts();
        let mut seq = s.serialize_seq(Some(counts.len()))?;
        for (t, count) in counts {
            seq.serialize_element(&CountEntry { n: t.n, q: t.q, count })?;
        }
        seq.end()
    }
}

fn lcm_of(ns: impl Iterator<Item = u32>) -> u32 {
    ns.fold(1, |a, b| a.lcm(&b))
}

/// Whether the points can be split among singular fibres: every group has
/// at least two points and each order divides the lcm of the others in its
/// group.
pub fn splits_into_fibres(orders: &[u32]) -> bool {
    if orders.is_empty() {
        return true;
    }
    let (first, rest) = (orders[0], &orders[1..]);
    // Choose the companions of `first` by bitmask over `rest`.
    for mask in 1u32..(1 << rest.len()) {
        let mut group = vec![first];
        let mut remaining = Vec::new();
        for (k, &o) in rest.iter().enumerate() {
            if mask & (1 << k) != 0 {
                group.push(o);
            } else {
                remaining.push(o);
            }
        }
        let ok = (0..group.len())
            .all(|a| lcm_of(group.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, &o)| o)) % group[a] == 0);
        if ok && splits_into_fibres(&remaining) {
            return true;
        }
    }
    false
}

fn baskets_from_pool(pool: &[(SingularityType, Rational)], target: Rational) -> Vec<Basket> {
    fn rec(
        pool: &[(SingularityType, Rational)],
        start: usize,
        left: Rational,
        cur: &mut Vec<SingularityType>,
        out: &mut Vec<Basket>,
    ) {
        if left.is_zero() {
            out.push(Basket::new(cur.clone()));
            return;
        }
        for k in start..pool.len() {
            let (t, b) = pool[k];
            if b > left {
                continue;
            }
            cur.push(t);
            rec(pool, k, left - b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, 0, target, &mut Vec::new(), &mut out);
    out
}

fn admissible(b: &Basket) -> bool {
    b.len() != 1 && splits_into_fibres(&b.types().iter().map(|t| t.n).collect::<Vec<_>>())
}

fn enumerate_with_pool_bound(k2: i64, max_b: Rational) -> Vec<Basket> {
    let pool: Vec<(SingularityType, Rational)> =
        enumerate_by_b(max_b).into_iter().map(|r| (r.kind(), r.big_b)).collect();
    let target = Rational::int(24 - 3 * k2 as i128);
    let mut out: Vec<Basket> = baskets_from_pool(&pool, target).into_iter().filter(admissible).collect();
    out.sort();
    out.dedup();
    out
}

/// All admissible baskets with `ΣB = 24 − 3K²`.
pub fn enumerate_baskets(k2: i64) -> Result<Vec<Basket>> {
    if !(2..=8).contains(&k2) {
        return Err(Error::Precondition(format!("K² = {k2} is outside 2..8")));
    }
    Ok(enumerate_with_pool_bound(k2, Rational::int(12)))
}

/// The same enumeration over the wider `B ≤ 18` pool.
pub fn enumerate_baskets_wide(k2: i64) -> Result<Vec<Basket>> {
    if !(2..=8).contains(&k2) {
        return Err(Error::Precondition(format!("K² = {k2} is outside 2..8")));
    }
    Ok(enumerate_with_pool_bound(k2, Rational::int(18)))
}

#[derive(Clone, Debug, PartialEq, Eq, DeriveSerialize)]
pub struct CandidateSetup {
    pub k2: i64,
    pub genus_f: u32,
    pub signature_n: Vec<u32>,
    pub basket: Basket,
}

impl fmt::Display for CandidateSetup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g(F)={}, n={}, Sing={}",
            self.genus_f,
            crate::catalog::signature_text(&self.signature_n),
            self.basket
        )
    }
}

/// Nondecreasing `n_1 ≤ … ≤ n_s` (all ≥ 2) with `Σ(1 − 1/n_j) = target`.
pub fn signatures_with_sum(target: Rational) -> Vec<Vec<u32>> {
    // `k` terms remain, so `Σ 1/n = k − left` and the smallest term bounds
    // `n ≤ k / (k − left)`.
    fn rec(left: Rational, k: i128, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            if left.is_zero() {
                out.push(cur.clone());
            }
            return;
        }
        let slack = Rational::int(k) - left;
        if slack <= Rational::ZERO {
            return;
        }
        let max = (Rational::int(k) / slack).floor();
        for n in min as i128..=max {
            let term = Rational::ONE - Rational::new(1, n);
            if term > left {
                break;
            }
            cur.push(n as u32);
            rec(left - term, k - 1, n as u32, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    // Each term lies in [1/2, 1), so left < s ≤ 2·left.
    for s in 0..=(Rational::int(2) * target).floor() {
        rec(target, s, 2, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Whether some catalog group of genus `genus_f` can carry a genus-one
/// cover with branching `n`: `|G|·Σ(1 − 1/n_j)` must be even, and abelian
/// groups need `s ≥ 2` with `n_1 = n_2` when `s = 2`.
fn catalog_admits(genus_f: u32, n: &[u32]) -> bool {
    let sum: Rational = n.iter().map(|&x| Rational::ONE - Rational::new(1, x as i128)).sum();
    catalog().with_genus(genus_f).any(|e| {
        let two_gc_minus_two = Rational::int(e.order as i128) * sum;
        let even = two_gc_minus_two.to_integer().is_some_and(|v| v % 2 == 0);
        let abelian_ok = !e.is_abelian() || (n.len() != 1 && (n.len() != 2 || n[0] == n[1]));
        even && abelian_ok
    })
}

fn catalog_genera() -> Vec<u32> {
    let mut g: Vec<u32> = catalog().entries().iter().map(|e| e.genus).collect();
    g.sort();
    g.dedup();
    g
}

/// The numerical possibilities for `(g(F), n, Sing(T))` at a given K².
pub fn candidate_setups(k2: i64, include_rdp_only: bool) -> Result<Vec<CandidateSetup>> {
    if !(2..=6).contains(&k2) {
        return Err(Error::Precondition(format!("K² = {k2} is outside 2..6")));
    }
    let mut out = Vec::new();
    for basket in enumerate_baskets(k2)? {
        if basket.is_rdp_only() && !include_rdp_only {
            continue;
        }
        let r = Rational::int(k2 as i128) - basket.sum_h();
        for genus_f in catalog_genera() {
            let target = r / Rational::int(4 * (genus_f as i128 - 1));
            for n in signatures_with_sum(target) {
                if !basket.types().iter().all(|t| n.iter().any(|&nj| nj % t.n == 0)) {
                    continue;
                }
                let sing = basket.len();
                if sing <= 5 {
                    let exceptions = n.iter().filter(|&&nj| (genus_f - 1) % nj != 0).count();
                    if exceptions > sing / 2 {
                        continue;
                    }
                }
                if genus_f == 2 && sing <= 3 && n.len() != 1 {
                    continue;
                }
                if !catalog_admits(genus_f, &n) {
                    continue;
                }
                out.push(CandidateSetup { k2, genus_f, signature_n: n, basket: basket.clone() });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let b: Basket = "1/2(1,1) + 2 × 1/4(1,1)".parse().unwrap();
        assert_eq!(b.to_string(), "1/2(1,1) + 2 × 1/4(1,1)");
        assert_eq!(b.len(), 3);
        let c: Basket = "1/3(1,2) + 1/3(1,1)".parse().unwrap();
        assert_eq!(c.to_string(), "1/3(1,1) + 1/3(1,2)");
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"[{"n":2,"q":1,"count":1},{"n":4,"q":1,"count":2}]"#);
        assert_eq!(Basket::default().to_string(), "none");
    }

    #[test]
    fn fibre_splitting() {
        assert!(splits_into_fibres(&[3, 3]));
        assert!(!splits_into_fibres(&[2, 4]));
        assert!(splits_into_fibres(&[2, 4, 4]));
        assert!(splits_into_fibres(&[2, 2, 4, 4]));
        assert!(!splits_into_fibres(&[2, 3, 4]));
        assert!(splits_into_fibres(&[2, 3, 6]));
    }

    #[test]
    fn signature_sums() {
        assert_eq!(signatures_with_sum(Rational::new(2, 3)), vec![vec![3]]);
        assert_eq!(signatures_with_sum(Rational::new(5, 4)), vec![vec![2, 4]]);
        assert!(signatures_with_sum(Rational::new(1, 3)).is_empty());
        for n in signatures_with_sum(Rational::new(7, 3)) {
            let s: Rational = n.iter().map(|&x| Rational::ONE - Rational::new(1, x as i128)).sum();
            assert_eq!(s, Rational::new(7, 3));
        }
    }
}
