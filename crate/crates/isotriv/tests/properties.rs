use isotriv::catalog::catalog;
use isotriv::exact::Rational;
use isotriv::fixpoints::{fix_count, fix_count_rot};
use isotriv::genvec::{least_genus_one_by_key, least_spherical_by_key, CommutatorIndex, GeneratingVector};
use isotriv::groups::FiniteGroup;
use isotriv::quotient::{singular_points, weighted_point_count, CosetModel};
use isotriv::quotsing::{hj_expand, SingularityType};
use num_integer::Integer;
use proptest::prelude::*;

fn coprime_pair() -> impl Strategy<Value = (u32, u32)> {
    (2u32..=50).prop_flat_map(|n| (Just(n), 1..n)).prop_filter("coprime", |(n, q)| n.gcd(q) == 1)
}

/// `b_1 − 1/(b_2 − 1/(…))`
fn fold(b: &[u32]) -> Rational {
    let mut acc = Rational::int(*b.last().unwrap() as i128);
    for &x in b.iter().rev().skip(1) {
        acc = Rational::int(x as i128) - Rational::ONE / acc;
    }
    acc
}

proptest! {
    #[test]
    fn continued_fraction_round_trip((n, q) in coprime_pair()) {
        let r = hj_expand(n, q).unwrap();
        prop_assert!(r.b.iter().all(|&b| b >= 2));
        prop_assert_eq!(fold(&r.b), Rational::new(n as i128, q as i128));
        prop_assert_eq!((q as u64 * r.q_prime as u64) % n as u64, 1 % n as u64);
    }

    #[test]
    fn b_is_two_e_minus_h((n, q) in coprime_pair()) {
        let inv = SingularityType::new(n, q).unwrap().invariants();
        prop_assert_eq!(inv.b, Rational::int(2) * inv.e - inv.h);
    }

    #[test]
    fn rdp_iff_h_vanishes((n, q) in coprime_pair()) {
        let t = SingularityType::new(n, q).unwrap();
        prop_assert_eq!(t.is_rdp(), t.invariants().h == Rational::ZERO);
        prop_assert_eq!(t.is_rdp(), q == n - 1);
    }

    #[test]
    fn rational_field_laws(a in -60i128..60, b in 1i128..60, c in -60i128..60, d in 1i128..60) {
        let x = Rational::new(a, b);
        let y = Rational::new(c, d);
        prop_assert_eq!(x + y, Rational::new(a * d + b * c, b * d));
        prop_assert_eq!(x * y, Rational::new(a * c, b * d));
        prop_assert_eq!((x - y) + y, x);
        if c != 0 {
            prop_assert_eq!((x / y) * y, x);
        }
    }
}

/// A few vectors per signature keep the sweep fast while touching every group.
fn sample_vectors(g: &FiniteGroup, m: &[u32]) -> Vec<GeneratingVector> {
    least_spherical_by_key(g, m).into_values().take(3).collect()
}

fn check_curve(g: &FiniteGroup, branch: &[usize], what: &str) {
    let cm = CosetModel::new(g, branch);
    for h in g.elements().filter(|&h| h != g.identity()) {
        let m = g.order(h);
        let total = fix_count(g, branch, h).unwrap();
        let fixed = cm.fixed_cosets(g, h);
        assert_eq!(fixed.len() as u64, total, "{what}: coset model vs |Fix({})|", g.word(h));
        let mut sum = 0;
        for q in (1..m).filter(|q| q.gcd(&m) == 1) {
            let fq = fix_count_rot(g, branch, h, q).unwrap();
            sum += fq;
            let by_model = fixed.iter().filter(|(_, _, r)| *r == q).count() as u64;
            assert_eq!(by_model, fq, "{what}: rotation {q} of {}", g.word(h));
            if g.are_conjugate(h, g.pow(h, q as i64)) {
                assert_eq!(fq, fix_count_rot(g, branch, h, 1).unwrap(), "{what}: h ~ h^{q}");
            }
        }
        assert_eq!(sum, total, "{what}: Σ_q Fix_q({})", g.word(h));
    }
}

#[test]
fn fixed_point_formulas_on_every_catalog_group() {
    for e in catalog().entries() {
        let g: &FiniteGroup = &e.group;
        for v in sample_vectors(g, &e.signature_m) {
            check_curve(g, &v.branch, &format!("({}) F", e.case_label));
        }
    }
}

#[test]
fn genus_one_curves_and_point_counts() {
    for e in catalog().entries().iter().filter(|e| !e.is_abelian() && e.order <= 48) {
        let g: &FiniteGroup = &e.group;
        let index = CommutatorIndex::new(g);
        let vs = sample_vectors(g, &e.signature_m);
        for n in [vec![2], vec![3], vec![4], vec![6]] {
            for w in least_genus_one_by_key(g, &index, &n).into_values().take(2) {
                check_curve(g, &w.branch, &format!("({}) C", e.case_label));
                for v in &vs {
                    let points = singular_points(g, &v.branch, &w.branch).unwrap();
                    let mut formula = 0u64;
                    for h in g.elements().filter(|&h| h != g.identity()) {
                        formula += fix_count(g, &w.branch, h).unwrap() * fix_count(g, &v.branch, h).unwrap();
                    }
                    assert_eq!(weighted_point_count(&points) as u64, formula, "({})", e.case_label);
                }
            }
        }
    }
}

#[test]
fn class_equation_on_every_catalog_group() {
    for e in catalog().entries() {
        let g: &FiniteGroup = &e.group;
        let mut total = 0;
        for class in g.classes() {
            let x = class[0];
            assert_eq!(class.len() * g.centralizer(x).len(), g.size(), "({})", e.case_label);
            total += class.len();
        }
        assert_eq!(total, g.size());
    }
}
