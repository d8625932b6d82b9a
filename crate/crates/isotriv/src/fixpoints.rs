//! Fixed points of a group element on the curve of a generating vector,
//! in total and split by rotation constant.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::groups::{Elem, FiniteGroup};

/// Which power of the local generator a fixed point with rotation index `q`
/// refers to. `Standard` matches `h = (σ g_i σ⁻¹)^{(m_i/m)·q}`; `Inverse`
/// uses `-q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RotationConvention {
    #[default]
    Standard,
    Inverse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointProfile {
    pub element: Elem,
    pub order: u32,
    pub total: u64,
    pub by_rotation: BTreeMap<u32, u64>,
}

fn check_element(g: &FiniteGroup, h: Elem) -> Result<u32> {
    if h >= g.size() {
        return Err(Error::Precondition("element outside the group".into()));
    }
    if h == g.identity() {
        return Err(Error::Precondition("fixed points of the identity are not isolated".into()));
    }
    Ok(g.order(h))
}

fn integral(r: Rational, what: &str) -> Result<u64> {
    r.to_integer()
        .filter(|v| *v >= 0)
        .map(|v| v as u64)
        .ok_or_else(|| Error::Inconsistent(format!("{what} evaluated to {r}")))
}

/// `|Fix(h)| = |N_G(⟨h⟩)| · Σ 1/m_i` over the branch indices whose
/// stabilizer contains a conjugate of `⟨h⟩`.
pub fn fix_count(g: &FiniteGroup, branch: &[Elem], h: Elem) -> Result<u64> {
    let m = check_element(g, h)?;
    let mut sum = Rational::ZERO;
    for &gi in branch {
        let mi = g.order(gi);
        if !mi.is_multiple_of(m) {
            continue;
        }
        let x = g.pow(gi, (mi / m) as i64);
        let conj = (1..m).filter(|q| q.gcd(&m) == 1).any(|q| g.are_conjugate(h, g.pow(x, q as i64)));
        if conj {
            sum += Rational::new(1, mi as i128);
        }
    }
    let norm = g.normalizer_of_cyclic(h).len() as i128;
    integral(Rational::int(norm) * sum, "|Fix(h)|")
}

/// `|Fix_q(h)| = |C_G(h)| · Σ 1/m_i` over the branch indices with
/// `h ~ g_i^{(m_i/m)·q}`.
pub fn fix_count_rot(g: &FiniteGroup, branch: &[Elem], h: Elem, q: u32) -> Result<u64> {
    fix_count_rot_with(g, branch, h, q, RotationConvention::Standard)
}

pub fn fix_count_rot_with(
    g: &FiniteGroup,
    branch: &[Elem],
    h: Elem,
    q: u32,
    convention: RotationConvention,
) -> Result<u64> {
    let m = check_element(g, h)?;
    if q.gcd(&m) != 1 {
        return Err(Error::Precondition(format!("rotation index {q} is not coprime to {m}")));
    }
    let q = match convention {
        RotationConvention::Standard => q as i64,
        RotationConvention::Inverse => -(q as i64),
    };
    let mut sum = Rational::ZERO;
    for &gi in branch {
        let mi = g.order(gi);
        if mi.is_multiple_of(m) && g.are_conjugate(h, g.pow(gi, (mi / m) as i64 * q)) {
            sum += Rational::new(1, mi as i128);
        }
    }
    let cent = g.centralizer(h).len() as i128;
    integral(Rational::int(cent) * sum, "|Fix_q(h)|")
}

pub fn fixed_point_profile(g: &FiniteGroup, branch: &[Elem], h: Elem) -> Result<FixedPointProfile> {
    let m = check_element(g, h)?;
    let mut by_rotation = BTreeMap::new();
    for q in (1..m.max(2)).filter(|q| q.gcd(&m) == 1) {
        by_rotation.insert(q, fix_count_rot(g, branch, h, q)?);
    }
    Ok(FixedPointProfile { element: h, order: m, total: fix_count(g, branch, h)?, by_rotation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::genvec::GeneratingVector;

    #[test]
    fn case_3a_rotation_counts() {
        let g = &lookup("3a").unwrap().group;
        let v = GeneratingVector::from_words(g, &["(12)", "(12)", "(12)", "(13)", "(123)"], &[]).unwrap();
        let h = g.eval("(123)").unwrap();
        assert_eq!(fix_count_rot(g, &v.branch, h, 1), Ok(1));
        assert_eq!(fix_count_rot(g, &v.branch, h, 2), Ok(1));
        assert_eq!(fix_count(g, &v.branch, h), Ok(2));
    }

    #[test]
    fn case_2g_counts() {
        let g = &lookup("2g").unwrap().group;
        let v = GeneratingVector::from_words(g, &["x", "zwx", "yzw"], &[]).unwrap();
        assert!(v.is_valid(g));
        assert_eq!(fix_count(g, &v.branch, g.eval("y").unwrap()), Ok(6));
    }

    #[test]
    fn errors_and_zeroes() {
        let g = &lookup("3a").unwrap().group;
        let v = GeneratingVector::from_words(g, &["(12)", "(12)", "(12)", "(13)", "(123)"], &[]).unwrap();
        assert!(fix_count(g, &v.branch, 0).is_err());
        let h = g.eval("(123)").unwrap();
        assert!(fix_count_rot(g, &v.branch, h, 3).is_err());
        let g = &lookup("1c").unwrap().group;
        let v = GeneratingVector::from_words(g, &["x^2", "x^2", "x", "x^3"], &[]).unwrap();
        assert!(v.is_valid(g));
        assert_eq!(fix_count(g, &v.branch, g.eval("x^2").unwrap()), Ok(6));
        let g = &lookup("1h").unwrap().group;
        let v = GeneratingVector::from_words(g, &["x^4", "x", "x^3"], &[]).unwrap();
        assert!(v.is_valid(g));
        assert_eq!(fix_count(g, &v.branch, g.eval("x^2").unwrap()), Ok(2));
    }
}
