//! The coset model of T = (C×F)/G: points with nontrivial stabilizer on
//! C×F, their orbits, the oriented basket Sing(T) and the invariants of the
//! minimal resolution S.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::baskets::Basket;
use crate::error::{Error, Result};
use crate::exact::{inverse_mod, Rational};
use crate::genvec::{rh_genus, GeneratingVector};
use crate::groups::{Elem, FiniteGroup};
use crate::quotsing::SingularityType;

/// Cosets `σ⟨g⟩` over one branch point, each with its local generator `σgσ⁻¹`.
#[derive(Clone, Debug)]
pub struct BranchPoint {
    pub generator: Elem,
    pub order: u32,
    /// Least element of each coset, in index order.
    pub representatives: Vec<Elem>,
    pub local_generators: Vec<Elem>,
    /// Coset id of every group element.
    coset_of: Vec<usize>,
}

impl BranchPoint {
    pub fn new(g: &FiniteGroup, generator: Elem) -> Self {
        let sub = g.cyclic_subgroup(generator);
        let mut coset_of = vec![usize::MAX; g.size()];
        let mut representatives = Vec::new();
        let mut local_generators = Vec::new();
        for s in g.elements() {
            if coset_of[s] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            for &k in &sub {
                coset_of[g.mul(s, k)] = id;
            }
            representatives.push(s);
            local_generators.push(g.conjugate(generator, s));
        }
        BranchPoint { generator, order: g.order(generator), representatives, local_generators, coset_of }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// `ρ·σ⟨g⟩`
    pub fn act(&self, g: &FiniteGroup, rho: Elem, coset: usize) -> usize {
        self.coset_of[g.mul(rho, self.representatives[coset])]
    }
}

#[derive(Clone, Debug)]
pub struct CosetModel {
    pub points: Vec<BranchPoint>,
}

impl CosetModel {
    pub fn new(g: &FiniteGroup, branch: &[Elem]) -> Self {
        CosetModel { points: branch.iter().map(|&e| BranchPoint::new(g, e)).collect() }
    }

    /// Cosets fixed by `h`, with the rotation index `q` such that
    /// `h = (local generator)^{(m_i/m)·q}`.
    pub fn fixed_cosets(&self, g: &FiniteGroup, h: Elem) -> Vec<(usize, usize, u32)> {
        let m = g.order(h);
        let mut out = Vec::new();
        for (i, bp) in self.points.iter().enumerate() {
            if bp.order % m != 0 {
                continue;
            }
            let step = bp.order / m;
            for (c, &loc) in bp.local_generators.iter().enumerate() {
                let base = g.pow(loc, step as i64);
                if let Some(q) = (1..m.max(2)).find(|&q| g.pow(base, q as i64) == h) {
                    out.push((i, c, q));
                }
            }
        }
        out
    }
}

/// One G-orbit of points of C×F with nontrivial stabilizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub kind: SingularityType,
    /// Index `j` of the branch point of C → E below the point.
    pub c_branch: usize,
    /// Index `i` of the branch point of F → P¹ below the point.
    pub f_branch: usize,
    pub orbit_size: usize,
    /// Generator of the stabilizer with rotation index 1 on the C side.
    pub stabilizer_generator: Elem,
}

/// `(⋃ conjugates of ⟨g_i⟩) ∩ (⋃ conjugates of ⟨ℓ_j⟩) ∖ {1}`, sorted.
pub fn stabilizer_set(g: &FiniteGroup, v: &[Elem], w: &[Elem]) -> Vec<Elem> {
    let union = |gens: &[Elem]| {
        let mut m = vec![false; g.size()];
        for &x in gens {
            for s in g.elements() {
                for e in g.cyclic_subgroup(g.conjugate(x, s)) {
                    m[e] = true;
                }
            }
        }
        m
    };
    let a = union(v);
    let b = union(w);
    g.elements().filter(|&e| e != g.identity() && a[e] && b[e]).collect()
}

/// The oriented type at a point whose stabilizers are `⟨c⟩` on C and `⟨f⟩`
/// on F, or `None` if they meet trivially.
pub fn local_type(g: &FiniteGroup, c: Elem, f: Elem) -> Option<(SingularityType, Elem)> {
    let nc = g.order(c);
    let mf = g.order(f);
    let powers_f = g.cyclic_subgroup(f);
    // ⟨c⟩ ∩ ⟨f⟩ is the subgroup of ⟨c⟩ of the largest order d with c^{nc/d} ∈ ⟨f⟩.
    let n = (2..=nc).rev().filter(|d| nc.is_multiple_of(*d)).find(|d| powers_f.contains(&g.pow(c, (nc / d) as i64)))?;
    let h = g.pow(c, (nc / n) as i64);
    let b = powers_f.iter().position(|&e| e == h).expect("h lies in ⟨f⟩") as u32;
    let q = b / (mf / n);
    Some((SingularityType { n, q }, h))
}

/// Every orbit of stabilized points, grouped by `(j, i)` in index order.
pub fn singular_points(g: &FiniteGroup, v: &[Elem], w: &[Elem]) -> Result<Vec<SingularPoint>> {
    let cm = CosetModel::new(g, w);
    let fm = CosetModel::new(g, v);
    let mut out = Vec::new();
    for (j, cb) in cm.points.iter().enumerate() {
        for (i, fb) in fm.points.iter().enumerate() {
            let mut seen = vec![false; cb.len() * fb.len()];
            for a in 0..cb.len() {
                for b in 0..fb.len() {
                    if seen[a * fb.len() + b] {
                        continue;
                    }
                    let Some((kind, h)) = local_type(g, cb.local_generators[a], fb.local_generators[b]) else {
                        continue;
                    };
                    let mut orbit_size = 0;
                    for rho in g.elements() {
                        let p = cb.act(g, rho, a) * fb.len() + fb.act(g, rho, b);
                        if !std::mem::replace(&mut seen[p], true) {
                            orbit_size += 1;
                        }
                    }
                    if orbit_size * kind.n as usize != g.size() {
                        return Err(Error::Inconsistent(format!(
                            "orbit of size {orbit_size} for a stabilizer of order {}",
                            kind.n
                        )));
                    }
                    out.push(SingularPoint { kind, c_branch: j, f_branch: i, orbit_size, stabilizer_generator: h });
                }
            }
        }
    }
    Ok(out)
}

/// Stabilized points of C×F by stabilizer order.
pub fn points_by_stabilizer_order(points: &[SingularPoint]) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for p in points {
        *m.entry(p.kind.n).or_insert(0) += p.orbit_size;
    }
    m
}

/// `Σ_{h ≠ 1} |Fix_C(h)|·|Fix_F(h)|` from the coset model: each stabilized
/// point counts `|Stab| − 1`.
pub fn weighted_point_count(points: &[SingularPoint]) -> usize {
    points.iter().map(|p| p.orbit_size * (p.kind.n as usize - 1)).sum()
}

pub fn sing_basket(points: &[SingularPoint], orientation_swap: bool) -> Basket {
    Basket::new(points.iter().map(|p| if orientation_swap { p.kind.reversed() } else { p.kind }).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub genus_c: u32,
    pub genus_f: u32,
    pub k2: i64,
    pub euler: i64,
    pub chi: i64,
    pub pg: i64,
    pub q: i64,
}

/// `K² = 8(g(C)−1)(g(F)−1)/|G| + Σh_x`, `e = 4(g(C)−1)(g(F)−1)/|G| + Σe_x`,
/// with `q = 1` since `C/G` is elliptic and `F/G` rational.
pub fn surface_invariants(order: usize, genus_c: u32, genus_f: u32, basket: &Basket) -> Result<SurfaceInvariants> {
    let base = Rational::new((genus_c as i128 - 1) * (genus_f as i128 - 1), order as i128);
    let (mut hsum, mut esum, mut bsum) = (Rational::ZERO, Rational::ZERO, Rational::ZERO);
    for t in basket.types() {
        let inv = t.invariants();
        hsum += inv.h;
        esum += inv.e;
        bsum += inv.b;
    }
    let k2 = Rational::int(8) * base + hsum;
    let e = Rational::int(4) * base + esum;
    let (Some(k2), Some(euler)) = (k2.to_integer(), e.to_integer()) else {
        return Err(Error::Inconsistent(format!("K² = {k2} and e = {e} must be integers")));
    };
    if (k2 + euler) % 12 != 0 {
        return Err(Error::Inconsistent(format!("K² + e = {} is not divisible by 12", k2 + euler)));
    }
    let chi = (k2 + euler) / 12;
    if chi == 1 && Rational::int(k2) != Rational::int(8) - bsum / Rational::int(3) {
        return Err(Error::Inconsistent(format!(
            "K² = {k2} but 8 − ΣB/3 = {}",
            Rational::int(8) - bsum / Rational::int(3)
        )));
    }
    let q = 1;
    Ok(SurfaceInvariants {
        genus_c,
        genus_f,
        k2: k2 as i64,
        euler: euler as i64,
        chi: chi as i64,
        pg: (chi - 1 + q) as i64,
        q: q as i64,
    })
}

/// The quotient attached to a spherical vector `V` (curve F) and a genus-one
/// vector `W` (curve C).
#[derive(Clone, Debug)]
pub struct QuotientSurface {
    pub v: GeneratingVector,
    pub w: GeneratingVector,
    pub points: Vec<SingularPoint>,
    pub sing: Basket,
    pub invariants: SurfaceInvariants,
}

impl QuotientSurface {
    pub fn new(g: &FiniteGroup, v: &GeneratingVector, w: &GeneratingVector, orientation_swap: bool) -> Result<Self> {
        if !v.is_valid(g) || v.g_prime != 0 {
            return Err(Error::Precondition("V is not a spherical generating vector".into()));
        }
        if !w.is_valid(g) || w.g_prime != 1 {
            return Err(Error::Precondition("W is not a genus-one generating vector".into()));
        }
        let genus_f = rh_genus(g.size(), 0, &v.type_m)?;
        let genus_c = rh_genus(g.size(), 1, &w.type_m)?;
        let points = singular_points(g, &v.branch, &w.branch)?;
        let sing = sing_basket(&points, orientation_swap);
        let invariants = surface_invariants(g.size(), genus_c, genus_f, &sing)?;
        Ok(QuotientSurface { v: v.clone(), w: w.clone(), points, sing, invariants })
    }

    /// Oriented types lying over each branch point of C → E.
    pub fn strings_by_c_branch(&self, orientation_swap: bool) -> Vec<Vec<SingularityType>> {
        let mut out = vec![Vec::new(); self.w.branch.len()];
        for p in &self.points {
            out[p.c_branch].push(if orientation_swap { p.kind.reversed() } else { p.kind });
        }
        out
    }
}

/// Elements considered by [`conjugacy_forcing_filter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementPool {
    Whole,
    /// Elements of the commutator subgroup, which holds every stabilizer
    /// when C → E has a single branch point.
    Derived,
}

/// False iff every order-`n` element of the pool is conjugate to every
/// other and the basket misses some `1/n(1,r)`.
pub fn conjugacy_forcing_filter(g: &FiniteGroup, n: u32, basket: &Basket, pool: ElementPool) -> bool {
    let members: Vec<Elem> = match pool {
        ElementPool::Whole => g.elements().collect(),
        ElementPool::Derived => g.derived_subgroup(),
    };
    let of_order: Vec<Elem> = members.into_iter().filter(|&e| g.order(e) == n).collect();
    let Some(&first) = of_order.first() else { return true };
    if basket.types().iter().all(|t| t.n != n) {
        return true;
    }
    if !of_order.iter().all(|&e| g.are_conjugate(e, first)) {
        return true;
    }
    (1..n)
        .filter(|r| inverse_mod(*r as i64, n as i64).is_ok())
        .all(|r| basket.types().contains(&SingularityType { n, q: r }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn case_3a() -> (&'static FiniteGroup, GeneratingVector, GeneratingVector) {
        let g: &FiniteGroup = &lookup("3a").unwrap().group;
        let v = GeneratingVector::from_words(g, &["(12)", "(12)", "(12)", "(13)", "(123)"], &[]).unwrap();
        let w = GeneratingVector::from_words(g, &["(123)"], &["(13)", "(12)"]).unwrap();
        (g, v, w)
    }

    #[test]
    fn case_3a_surface() {
        let (g, v, w) = case_3a();
        let s = stabilizer_set(g, &v.branch, &w.branch);
        assert_eq!(s, vec![g.eval("(123)").unwrap(), g.eval("(132)").unwrap()]);
        let qs = QuotientSurface::new(g, &v, &w, false).unwrap();
        assert_eq!(qs.sing.to_string(), "1/3(1,1) + 1/3(1,2)");
        assert_eq!(points_by_stabilizer_order(&qs.points), BTreeMap::from([(3, 4)]));
        let inv = &qs.invariants;
        assert_eq!((inv.genus_c, inv.genus_f, inv.k2, inv.euler, inv.chi, inv.pg, inv.q), (3, 3, 5, 7, 1, 1, 1));
        let swapped = QuotientSurface::new(g, &v, &w, true).unwrap();
        assert_eq!(swapped.sing, qs.sing.reversed());
    }

    #[test]
    fn coset_model_counts_fixed_points() {
        let (g, v, _) = case_3a();
        let fm = CosetModel::new(g, &v.branch);
        assert_eq!(fm.points.iter().map(|p| p.len()).collect::<Vec<_>>(), vec![3, 3, 3, 3, 2]);
        let h = g.eval("(123)").unwrap();
        let fixed = fm.fixed_cosets(g, h);
        assert_eq!(fixed.len(), 2);
        let mut qs: Vec<u32> = fixed.iter().map(|f| f.2).collect();
        qs.sort();
        assert_eq!(qs, vec![1, 2]);
    }

    #[test]
    fn invariants_without_singularities() {
        let inv = surface_invariants(8, 3, 5, &Basket::default()).unwrap();
        assert_eq!((inv.k2, inv.chi), (8, 1));
        assert!(surface_invariants(7, 3, 3, &Basket::default()).is_err());
    }

    #[test]
    fn forcing_filter() {
        let g = &lookup("3t").unwrap().group;
        let quarter: Basket = "1/2(1,1) + 2 x 1/4(1,1)".parse().unwrap();
        assert!(!conjugacy_forcing_filter(g, 4, &quarter, ElementPool::Derived));
        assert!(conjugacy_forcing_filter(g, 4, &quarter, ElementPool::Whole));
        let both: Basket = "1/4(1,1) + 1/4(1,3)".parse().unwrap();
        assert!(conjugacy_forcing_filter(g, 4, &both, ElementPool::Derived));
        assert!(conjugacy_forcing_filter(g, 5, &quarter, ElementPool::Derived));
    }
}
