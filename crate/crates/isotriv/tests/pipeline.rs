use isotriv::baskets::Basket;
use isotriv::catalog::lookup;
use isotriv::genvec::{exists_genus_one, GeneratingVector};
use isotriv::pipeline::{classify, classify_entries, reproduce_main_theorem, ClassificationRow, ClassifyOptions};
use isotriv::quotient::QuotientSurface;

fn opts(jobs: usize) -> ClassifyOptions {
    ClassifyOptions { jobs, ..ClassifyOptions::default() }
}

fn cases(rows: &[ClassificationRow]) -> Vec<&str> {
    rows.iter().map(|r| r.case.as_str()).collect()
}

#[test]
fn subtables() {
    let k5 = classify(5, opts(4)).unwrap();
    assert_eq!(cases(&k5), ["3a", "3d", "3e", "3l", "3o", "3p", "3s", "3v", "3w"]);
    assert!(k5.iter().all(|r| r.minimal && r.sig_n == [3]));
    assert!(classify(4, opts(4)).unwrap().is_empty());

    let k3 = classify(3, opts(4)).unwrap();
    let got: Vec<_> = k3.iter().map(|r| (r.group_id.as_str(), r.sig_m.clone())).collect();
    assert_eq!(got, [("G(24,8)", vec![2, 4, 6]), ("G(48,29)", vec![2, 3, 8])]);

    let k2 = classify(2, opts(4)).unwrap();
    assert_eq!(k2.len(), 6);
    let non_minimal: Vec<_> = k2.iter().filter(|r| !r.minimal).collect();
    assert_eq!(non_minimal.len(), 1);
    assert_eq!((non_minimal[0].group_id.as_str(), non_minimal[0].k2_min), ("G(48,3)", 3));
}

#[test]
fn main_theorem_table() {
    let rows = reproduce_main_theorem(opts(4)).unwrap();
    let got: Vec<(i64, u32, u32, String, String)> =
        rows.iter().map(|r| (r.k2, r.g_alb, r.g_c, r.group_id.clone(), r.sing.to_string())).collect();
    let k5 = "1/3(1,1) + 1/3(1,2)";
    let k3 = "2 x 1/2(1,1) + 1/3(1,1) + 1/3(1,2)";
    let d = "2 x 1/2(1,1) + 1/4(1,1) + 1/4(1,3)";
    let g = "2 x 1/3(1,1) + 2 x 1/3(1,2)";
    let table = [
        (5, 3, 3, "G(6,1)", k5),
        (5, 3, 5, "G(12,1)", k5),
        (5, 3, 5, "G(12,4)", k5),
        (5, 3, 9, "G(24,5)", k5),
        (5, 3, 9, "G(24,12)", k5),
        (5, 3, 17, "G(48,48)", k5),
        (5, 3, 33, "G(96,64)", k5),
        (5, 3, 57, "G(168,42)", k5),
        (3, 2, 11, "G(24,8)", k3),
        (3, 2, 21, "G(48,29)", k3),
        (2, 2, 7, "G(16,8)", d),
        (2, 2, 10, "G(24,3)", d),
        (2, 2, 3, "G(6,1)", g),
        (2, 2, 5, "G(12,1)", g),
        (2, 2, 5, "G(12,4)", g),
    ];
    let mut expected: Vec<(i64, u32, u32, String, String)> = table
        .iter()
        .map(|(k, ga, gc, id, s)| (*k, *ga, *gc, id.to_string(), s.parse::<Basket>().unwrap().to_string()))
        .collect();
    let mut got_sorted = got.clone();
    got_sorted.sort();
    expected.sort();
    assert_eq!(got_sorted, expected);
    assert!(rows.iter().all(|r| r.minimal));
}

fn words(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[test]
fn witnesses_revalidate() {
    let mut rows = Vec::new();
    for k2 in [5, 3, 2] {
        rows.extend(classify(k2, opts(4)).unwrap());
    }
    for r in rows {
        let g = &lookup(&r.case).unwrap().group;
        let v = GeneratingVector::from_words(g, &words(&r.witness.v), &[]).unwrap();
        let w = GeneratingVector::from_words(g, &words(&r.witness.w), &words(&r.witness.h)).unwrap();
        assert!(v.is_valid(g) && w.is_valid(g), "case {}", r.case);
        let s = QuotientSurface::new(g, &v, &w, false).unwrap();
        assert_eq!(s.sing, r.sing);
        assert_eq!(s.invariants.k2, r.k2);
        assert_eq!(s.invariants.k2 + s.invariants.euler, 12);
        assert_eq!(s.invariants.genus_c, r.g_c);
    }
}

#[test]
fn output_is_independent_of_jobs() {
    for k2 in [5, 2] {
        assert_eq!(classify(k2, opts(1)).unwrap(), classify(k2, opts(8)).unwrap());
    }
}

#[test]
fn orientation_swap_reverses_every_row() {
    let plain = classify(2, opts(4)).unwrap();
    let swapped = classify(2, ClassifyOptions { orientation_swap: true, ..opts(4) }).unwrap();
    let mut a: Vec<_> = plain.iter().map(|r| (r.group_id.clone(), r.sing.reversed())).collect();
    let mut b: Vec<_> = swapped.iter().map(|r| (r.group_id.clone(), r.sing.clone())).collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn abelian_groups_never_survive() {
    for k2 in 2..=6 {
        let rows = classify_entries(k2, opts(4), |e| e.is_abelian()).unwrap();
        assert!(rows.is_empty(), "K² = {k2}: {rows:?}");
        let rows = classify_entries(k2, ClassifyOptions { include_rdp_only: true, ..opts(4) }, |e| e.is_abelian());
        assert!(rows.unwrap().iter().all(|r| r.sing.is_rdp_only()));
    }
}

#[test]
fn rdp_only_rows_need_the_flag() {
    for k2 in [3, 2] {
        assert!(classify(k2, opts(4)).unwrap().iter().all(|r| !r.sing.is_rdp_only()));
    }
}

#[test]
fn g96_has_no_genus_one_vector_with_one_branch_point() {
    let g = &lookup("3v").unwrap().group;
    assert!(!exists_genus_one(g, &[8]));
    assert!(!exists_genus_one(g, &[4]));
    assert!(exists_genus_one(g, &[3]));
}
