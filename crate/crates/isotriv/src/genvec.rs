//! Generating vectors of type (g' | m_1, …, m_r) for g' ∈ {0, 1}, the
//! Riemann–Hurwitz genus, and exhaustive searches in table index order.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::groups::{Elem, FiniteGroup};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratingVector {
    pub g_prime: u32,
    /// `g_1, …, g_r`
    pub branch: Vec<Elem>,
    /// `h_1, …, h_{2g'}`
    pub handles: Vec<Elem>,
    pub type_m: Vec<u32>,
}

impl GeneratingVector {
    pub fn spherical(branch: Vec<Elem>, type_m: Vec<u32>) -> Self {
        GeneratingVector { g_prime: 0, branch, handles: Vec::new(), type_m }
    }

    pub fn genus_one(branch: Vec<Elem>, h1: Elem, h2: Elem, type_n: Vec<u32>) -> Self {
        GeneratingVector { g_prime: 1, branch, handles: vec![h1, h2], type_m: type_n }
    }

    /// Parses each entry with [`FiniteGroup::eval`]; branch orders become the type.
    pub fn from_words(g: &FiniteGroup, branch: &[&str], handles: &[&str]) -> Result<Self> {
        let branch: Vec<Elem> = branch.iter().map(|w| g.eval(w)).collect::<Result<_>>()?;
        let handles: Vec<Elem> = handles.iter().map(|w| g.eval(w)).collect::<Result<_>>()?;
        if !handles.len().is_multiple_of(2) {
            return Err(Error::Precondition("handle elements come in pairs".into()));
        }
        let type_m = branch.iter().map(|&e| g.order(e)).collect();
        Ok(GeneratingVector { g_prime: handles.len() as u32 / 2, branch, handles, type_m })
    }

    pub fn is_valid(&self, g: &FiniteGroup) -> bool {
        is_generating_vector(g, &self.branch, &self.handles, &self.type_m).unwrap_or(false)
    }

    /// `g_1, g_2; h_1, h_2` in the group's concrete notation.
    pub fn describe(&self, g: &FiniteGroup) -> String {
        let b: Vec<String> = self.branch.iter().map(|&e| g.describe(e)).collect();
        if self.handles.is_empty() {
            return b.join(", ");
        }
        let h: Vec<String> = self.handles.iter().map(|&e| g.describe(e)).collect();
        format!("{}; {}", b.join(", "), h.join(", "))
    }

    pub fn conjugated(&self, g: &FiniteGroup, s: Elem) -> Self {
        GeneratingVector {
            g_prime: self.g_prime,
            branch: self.branch.iter().map(|&e| g.conjugate(e, s)).collect(),
            handles: self.handles.iter().map(|&e| g.conjugate(e, s)).collect(),
            type_m: self.type_m.clone(),
        }
    }
}

/// Order, product-one and generation conditions. `handles` holds `2g'`
/// elements `h_1..h_{g'}, h_{g'+1}..h_{2g'}`.
pub fn is_generating_vector(g: &FiniteGroup, branch: &[Elem], handles: &[Elem], type_m: &[u32]) -> Result<bool> {
    if branch.len() != type_m.len() {
        return Err(Error::Precondition(format!(
            "{} branch elements for a type of length {}",
            branch.len(),
            type_m.len()
        )));
    }
    if !handles.len().is_multiple_of(2) {
        return Err(Error::Precondition("handle elements come in pairs".into()));
    }
    if branch.iter().chain(handles).any(|&e| e >= g.size()) {
        return Err(Error::Precondition("element outside the group".into()));
    }
    if branch.iter().zip(type_m).any(|(&e, &m)| g.order(e) != m) {
        return Ok(false);
    }
    let gp = handles.len() / 2;
    let mut p = g.product(branch);
    for i in 0..gp {
        p = g.mul(p, g.commutator(handles[i], handles[i + gp]));
    }
    if p != g.identity() {
        return Ok(false);
    }
    let all: Vec<Elem> = branch.iter().chain(handles).copied().collect();
    Ok(g.generates(&all))
}

/// `g` with `2g − 2 = |G|(2g' − 2 + Σ(1 − 1/m_i))`.
pub fn rh_genus(order: usize, g_prime: u32, type_m: &[u32]) -> Result<u32> {
    if type_m.iter().any(|&m| m < 2) {
        return Err(Error::Precondition("branching orders must be at least 2".into()));
    }
    let sum: Rational = type_m.iter().map(|&m| Rational::ONE - Rational::new(1, m as i128)).sum();
    let rhs = Rational::int(order as i128) * (Rational::int(2 * g_prime as i128 - 2) + sum);
    match rhs.to_integer() {
        Some(v) if v >= -2 && v % 2 == 0 => Ok((v / 2 + 1) as u32),
        _ => Err(Error::Inconsistent(format!("no curve: |G|={order}, g'={g_prime}, m={type_m:?} gives 2g-2 = {rhs}"))),
    }
}

fn elements_of_order(g: &FiniteGroup, m: u32) -> Vec<Elem> {
    g.elements().filter(|&e| g.order(e) == m).collect()
}

/// Visits every (0 | m) generating vector in lexicographic index order;
/// `g_r` is forced by the product relation.
pub fn for_each_spherical(g: &FiniteGroup, type_m: &[u32], mut f: impl FnMut(&[Elem]) -> ControlFlow<()>) {
    let r = type_m.len();
    if r == 0 {
        if g.size() == 1 {
            let _ = f(&[]);
        }
        return;
    }
    let pools: Vec<Vec<Elem>> = type_m[..r - 1].iter().map(|&m| elements_of_order(g, m)).collect();
    let mut cur = Vec::with_capacity(r);
    let _ = spherical_rec(g, type_m, &pools, &mut cur, g.identity(), &mut f);
}

fn spherical_rec(
    g: &FiniteGroup,
    type_m: &[u32],
    pools: &[Vec<Elem>],
    cur: &mut Vec<Elem>,
    prod: Elem,
    f: &mut impl FnMut(&[Elem]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let r = type_m.len();
    if cur.len() == r - 1 {
        let last = g.inv(prod);
        if g.order(last) != type_m[r - 1] {
            return ControlFlow::Continue(());
        }
        cur.push(last);
        let res = if g.generates(cur) { f(cur) } else { ControlFlow::Continue(()) };
        cur.pop();
        return res;
    }
    for &e in &pools[cur.len()] {
        cur.push(e);
        let res = spherical_rec(g, type_m, pools, cur, g.mul(prod, e), f);
        cur.pop();
        res?;
    }
    ControlFlow::Continue(())
}

pub fn search_spherical(g: &FiniteGroup, type_m: &[u32]) -> Vec<GeneratingVector> {
    let mut out = Vec::new();
    for_each_spherical(g, type_m, |v| {
        out.push(GeneratingVector::spherical(v.to_vec(), type_m.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

/// Pairs `(h_1, h_2)` grouped by their commutator, each list in index order.
pub struct CommutatorIndex {
    pairs: Vec<Vec<(Elem, Elem)>>,
}

impl CommutatorIndex {
    pub fn new(g: &FiniteGroup) -> Self {
        let mut pairs = vec![Vec::new(); g.size()];
        for a in g.elements() {
            for b in g.elements() {
                pairs[g.commutator(a, b)].push((a, b));
            }
        }
        CommutatorIndex { pairs }
    }

    pub fn pairs(&self, c: Elem) -> &[(Elem, Elem)] {
        &self.pairs[c]
    }
}

/// What a genus-one visitor wants next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Visit {
    Continue,
    /// Skip the remaining handle pairs of the current ℓ-tuple.
    NextTuple,
    Stop,
}

/// Visits every (1 | n) generating vector `(ℓ_1..ℓ_s; h_1, h_2)` in
/// lexicographic index order. `f` is called with `None` for handles once per
/// complete ℓ-tuple before its pairs, and may skip the tuple from there.
pub fn for_each_genus_one(
    g: &FiniteGroup,
    index: &CommutatorIndex,
    type_n: &[u32],
    mut f: impl FnMut(&[Elem], Option<(Elem, Elem)>) -> Visit,
) {
    let pools: Vec<Vec<Elem>> = type_n.iter().map(|&m| elements_of_order(g, m)).collect();
    let mut cur = Vec::with_capacity(type_n.len());
    let _ = genus_one_rec(g, index, &pools, &mut cur, g.identity(), &mut f);
}

fn genus_one_rec(
    g: &FiniteGroup,
    index: &CommutatorIndex,
    pools: &[Vec<Elem>],
    cur: &mut Vec<Elem>,
    prod: Elem,
    f: &mut impl FnMut(&[Elem], Option<(Elem, Elem)>) -> Visit,
) -> ControlFlow<()> {
    if cur.len() == pools.len() {
        match f(cur, None) {
            Visit::Continue => {}
            Visit::NextTuple => return ControlFlow::Continue(()),
            Visit::Stop => return ControlFlow::Break(()),
        }
        // ℓ_1⋯ℓ_s·[h_1,h_2] = 1
        let mut gens = cur.clone();
        gens.extend([0, 0]);
        let s = cur.len();
        for &(h1, h2) in index.pairs(g.inv(prod)) {
            gens[s] = h1;
            gens[s + 1] = h2;
            if g.generates(&gens) {
                match f(cur, Some((h1, h2))) {
                    Visit::Continue => {}
                    Visit::NextTuple => break,
                    Visit::Stop => return ControlFlow::Break(()),
                }
            }
        }
        return ControlFlow::Continue(());
    }
    for &e in &pools[cur.len()] {
        cur.push(e);
        let res = genus_one_rec(g, index, pools, cur, g.mul(prod, e), f);
        cur.pop();
        res?;
    }
    ControlFlow::Continue(())
}

pub fn search_genus_one(g: &FiniteGroup, type_n: &[u32]) -> Vec<GeneratingVector> {
    let index = CommutatorIndex::new(g);
    let mut out = Vec::new();
    for_each_genus_one(g, &index, type_n, |ls, h| {
        if let Some((h1, h2)) = h {
            out.push(GeneratingVector::genus_one(ls.to_vec(), h1, h2, type_n.to_vec()));
        }
        Visit::Continue
    });
    out
}

pub fn exists_genus_one(g: &FiniteGroup, type_n: &[u32]) -> bool {
    let index = CommutatorIndex::new(g);
    let mut found = false;
    for_each_genus_one(g, &index, type_n, |_, h| {
        found = h.is_some();
        if found {
            Visit::Stop
        } else {
            Visit::Continue
        }
    });
    found
}

/// Sorted conjugacy-class ids of the branch elements. Everything computed
/// downstream from a vector pair depends on the branch elements only
/// through this key.
pub fn class_key(g: &FiniteGroup, branch: &[Elem]) -> Vec<usize> {
    let mut k: Vec<usize> = branch.iter().map(|&e| g.class_id(e)).collect();
    k.sort_unstable();
    k
}

/// Least spherical vector for every class key that occurs.
pub fn least_spherical_by_key(g: &FiniteGroup, type_m: &[u32]) -> BTreeMap<Vec<usize>, GeneratingVector> {
    let mut out = BTreeMap::new();
    for_each_spherical(g, type_m, |v| {
        out.entry(class_key(g, v)).or_insert_with(|| GeneratingVector::spherical(v.to_vec(), type_m.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

/// Least genus-one vector for every class key that occurs.
pub fn least_genus_one_by_key(
    g: &FiniteGroup,
    index: &CommutatorIndex,
    type_n: &[u32],
) -> BTreeMap<Vec<usize>, GeneratingVector> {
    let mut out: BTreeMap<Vec<usize>, GeneratingVector> = BTreeMap::new();
    for_each_genus_one(g, index, type_n, |ls, h| match h {
        None if out.contains_key(&class_key(g, ls)) => Visit::NextTuple,
        None => Visit::Continue,
        Some((h1, h2)) => {
            out.insert(class_key(g, ls), GeneratingVector::genus_one(ls.to_vec(), h1, h2, type_n.to_vec()));
            Visit::NextTuple
        }
    });
    out
}

/// One vector per simultaneous-conjugation orbit, keeping first occurrences.
pub fn orbit_representatives(g: &FiniteGroup, vectors: &[GeneratingVector]) -> Vec<GeneratingVector> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for v in vectors {
        let canon = g.elements().map(|s| v.conjugated(g, s)).min().expect("nonempty group");
        if seen.insert(canon) {
            out.push(v.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    #[test]
    fn genus_formula() {
        assert_eq!(rh_genus(6, 0, &[2, 2, 2, 2, 3]), Ok(3));
        assert_eq!(rh_genus(6, 1, &[3]), Ok(3));
        assert_eq!(rh_genus(48, 1, &[]), Ok(1));
        assert!(rh_genus(5, 0, &[2, 3]).is_err());
    }

    #[test]
    fn case_3a_vectors() {
        let g = &lookup("3a").unwrap().group;
        let v = GeneratingVector::from_words(g, &["(12)", "(12)", "(12)", "(13)", "(123)"], &[]).unwrap();
        assert!(v.is_valid(g));
        let w = GeneratingVector::from_words(g, &["(123)"], &["(13)", "(12)"]).unwrap();
        assert!(w.is_valid(g));
        assert!(search_genus_one(g, &[3]).contains(&w));
    }

    #[test]
    fn single_branch_point_never_generates() {
        let g = &lookup("1c").unwrap().group;
        for e in g.elements() {
            let m = g.order(e);
            assert_eq!(is_generating_vector(g, &[e], &[], &[m]), Ok(false));
        }
        assert!(search_spherical(g, &[2, 4]).is_empty());
        assert!(is_generating_vector(g, &[1], &[], &[2, 2]).is_err());
    }

    #[test]
    fn searches_yield_valid_vectors() {
        let g = &lookup("3a").unwrap().group;
        let all = search_spherical(g, &[2, 2, 2, 2, 3]);
        assert!(!all.is_empty());
        assert!(all.iter().all(|v| v.is_valid(g)));
        let reps = orbit_representatives(g, &all);
        // S3 acts freely on generating vectors, whose stabilizer is the trivial centre.
        assert_eq!(reps.len() * 6, all.len());
    }

    #[test]
    fn least_by_key_matches_full_search() {
        let g = &lookup("3o").unwrap().group;
        let full = search_genus_one(g, &[3]);
        let index = CommutatorIndex::new(g);
        let least = least_genus_one_by_key(g, &index, &[3]);
        for (key, w) in &least {
            let first = full.iter().find(|v| &class_key(g, &v.branch) == key).unwrap();
            assert_eq!(first, w);
        }
        assert_eq!(least.len(), 1);
    }
}
