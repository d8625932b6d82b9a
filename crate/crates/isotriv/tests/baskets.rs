use isotriv::baskets::{candidate_setups, enumerate_baskets, enumerate_baskets_wide, Basket};
use isotriv::exact::Rational;

fn parse_all(items: &[&str]) -> Vec<Basket> {
    let mut v: Vec<Basket> = items.iter().map(|s| s.parse::<Basket>().unwrap().normalized()).collect();
    v.sort();
    v
}

fn normalized(k2: i64) -> Vec<Basket> {
    let mut v: Vec<Basket> = enumerate_baskets(k2).unwrap().iter().map(|b| b.normalized()).collect();
    v.sort();
    v
}

#[test]
fn basket_lists() {
    assert_eq!(enumerate_baskets(8).unwrap(), vec![Basket::default()]);
    assert!(enumerate_baskets(7).unwrap().is_empty());
    assert_eq!(normalized(6), parse_all(&["2 x 1/2(1,1)"]));
    assert_eq!(normalized(5), parse_all(&["1/3(1,1) + 1/3(1,2)", "2 x 1/4(1,1)", "3 x 1/2(1,1)"]));
    assert_eq!(
        normalized(4),
        parse_all(&["1/4(1,1) + 1/4(1,3)", "2 x 1/5(1,2)", "1/2(1,1) + 2 x 1/4(1,1)", "4 x 1/2(1,1)"])
    );
    assert_eq!(
        normalized(3),
        parse_all(&[
            "2 x 1/4(1,3)",
            "1/5(1,1) + 1/5(1,4)",
            "1/7(1,2) + 1/7(1,3)",
            "1/8(1,1) + 1/8(1,3)",
            "1/8(1,5) + 1/8(1,3)",
            "1/2(1,1) + 1/4(1,1) + 1/4(1,3)",
            "2 x 1/2(1,1) + 2 x 1/4(1,1)",
            "2 x 1/2(1,1) + 1/3(1,1) + 1/3(1,2)",
            "5 x 1/2(1,1)",
        ])
    );
    assert_eq!(
        normalized(2),
        parse_all(&[
            "1/6(1,1) + 1/6(1,5)",
            "1/9(1,2) + 1/9(1,4)",
            "2 x 1/10(1,3)",
            "1/11(1,3) + 1/11(1,7)",
            "1/12(1,5) + 1/12(1,7)",
            "2 x 1/13(1,5)",
            "1/2(1,1) + 2 x 1/4(1,3)",
            "1/2(1,1) + 1/5(1,2) + 1/10(1,3)",
            "1/2(1,1) + 1/8(1,1) + 1/8(1,3)",
            "1/2(1,1) + 1/8(1,3) + 1/8(1,5)",
            "1/3(1,2) + 2 x 1/6(1,1)",
            "1/4(1,1) + 2 x 1/8(1,3)",
            "3 x 1/5(1,2)",
            "2 x 1/2(1,1) + 1/4(1,1) + 1/4(1,3)",
            "2 x 1/2(1,1) + 2 x 1/5(1,2)",
            "4 x 1/4(1,1)",
            "1/3(1,1) + 1/3(1,2) + 2 x 1/4(1,1)",
            "2 x 1/3(1,1) + 2 x 1/3(1,2)",
            "3 x 1/2(1,1) + 2 x 1/4(1,1)",
            "3 x 1/2(1,1) + 1/3(1,1) + 1/3(1,2)",
            "6 x 1/2(1,1)",
        ])
    );
}

#[test]
fn basket_sums_and_wide_pool() {
    for k2 in 2..=8 {
        let list = enumerate_baskets(k2).unwrap();
        for b in &list {
            assert_eq!(b.sum_b(), Rational::int(24 - 3 * k2 as i128));
        }
        assert_eq!(enumerate_baskets_wide(k2).unwrap(), list, "K² = {k2}");
    }
    assert!(enumerate_baskets(1).is_err());
}

fn setups(k2: i64) -> Vec<(u32, Vec<u32>, String)> {
    candidate_setups(k2, false)
        .unwrap()
        .into_iter()
        .map(|c| (c.genus_f, c.signature_n, c.basket.normalized().to_string()))
        .collect()
}

fn expected(items: &[(u32, &[u32], &str)]) -> Vec<(u32, Vec<u32>, String)> {
    items.iter().map(|(g, n, b)| (*g, n.to_vec(), b.parse::<Basket>().unwrap().normalized().to_string())).collect()
}

fn same(mut a: Vec<(u32, Vec<u32>, String)>, mut b: Vec<(u32, Vec<u32>, String)>) {
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn candidate_lists() {
    same(setups(6), vec![]);
    same(setups(5), expected(&[(3, &[3], "1/3(1,1) + 1/3(1,2)"), (3, &[8], "2 x 1/4(1,1)")]));
    same(setups(4), expected(&[(3, &[4], "1/2(1,1) + 2 x 1/4(1,1)")]));
    same(
        setups(3),
        expected(&[(2, &[2, 4], "2 x 1/2(1,1) + 2 x 1/4(1,1)"), (2, &[6], "2 x 1/2(1,1) + 1/3(1,1) + 1/3(1,2)")]),
    );
    same(
        setups(2),
        expected(&[
            (3, &[16], "1/2(1,1) + 1/8(1,1) + 1/8(1,3)"),
            (2, &[8], "1/2(1,1) + 1/8(1,3) + 1/8(1,5)"),
            (3, &[12], "1/3(1,2) + 2 x 1/6(1,1)"),
            (2, &[4], "2 x 1/2(1,1) + 1/4(1,1) + 1/4(1,3)"),
            (3, &[4], "4 x 1/4(1,1)"),
            (2, &[4, 4], "4 x 1/4(1,1)"),
            (2, &[3], "2 x 1/3(1,1) + 2 x 1/3(1,2)"),
        ]),
    );
}

#[test]
fn rdp_only_baskets_are_opt_in() {
    let with = candidate_setups(3, true).unwrap();
    assert!(with.iter().any(|c| c.basket.is_rdp_only()));
    assert!(candidate_setups(3, false).unwrap().iter().all(|c| !c.basket.is_rdp_only()));
    for k2 in 2..=6 {
        for c in candidate_setups(k2, true).unwrap() {
            let lhs = Rational::int(k2 as i128) - c.basket.sum_h();
            let sum: Rational = c.signature_n.iter().map(|&n| Rational::ONE - Rational::new(1, n as i128)).sum();
            assert_eq!(lhs, Rational::int(4 * (c.genus_f as i128 - 1)) * sum);
        }
    }
}
