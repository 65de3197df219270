use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use trigonal::braid::FreeWord;
use trigonal::monodromy::tree_presentation;
use trigonal::pi1::*;
use trigonal::trees::enumerate_trees;

fn word(max_gen: i32) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((1..=max_gen, prop::bool::ANY), 0..8)
        .prop_map(|v| FreeWord::from_letters(v.into_iter().map(|(g, p)| if p { g } else { -g })))
}

fn presentation() -> impl Strategy<Value = GroupPresentation> {
    prop::collection::vec(word(3), 0..5).prop_map(|r| GroupPresentation::new(3, r))
}

proptest! {
    #[test]
    fn abelianization_ignores_relator_order(g in presentation(), seed in any::<u64>()) {
        let mut r = g.relators.clone();
        if !r.is_empty() {
            let n = r.len();
            r.rotate_left((seed % n as u64) as usize);
            r.swap(0, (seed / 7 % n as u64) as usize);
        }
        let shuffled = GroupPresentation::new(3, r);
        prop_assert_eq!(abelianization(&g), abelianization(&shuffled));
    }

    #[test]
    fn abelianization_ignores_conjugation(g in presentation(), c in word(3), which in 0usize..5) {
        let mut r = g.relators.clone();
        if !r.is_empty() {
            let i = which % r.len();
            r[i] = r[i].conjugate_by(&c);
        }
        prop_assert_eq!(abelianization(&g), abelianization(&GroupPresentation::new(3, r)));
    }

    #[test]
    fn smith_matches_determinantal_divisors(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in prop::collection::vec(-6i64..=6, 16),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 4..i * 4 + cols].to_vec()).collect();
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let d = smith_diagonal(big, cols);
        prop_assert_eq!(d.len(), cols);
        for w in d.windows(2) {
            if !w[1].is_zero() {
                prop_assert!(!w[0].is_zero());
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        let mut prod = BigInt::one();
        for i in 1..=rows.min(cols) {
            prod *= &d[i - 1];
            prop_assert_eq!(&prod, &BigInt::from(minor_gcd(&m, i)), "size {} minors", i);
        }
    }
}

fn det(m: &[Vec<i64>]) -> i64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let sub: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&sub)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|b| b.count_ones() as usize == k).map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect()).collect()
}

/// gcd of all i×i minors.
fn minor_gcd(m: &[Vec<i64>], i: usize) -> i64 {
    let (r, c) = (m.len(), m[0].len());
    let mut g = 0i64;
    for rs in subsets(r, i) {
        for cs in subsets(c, i) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&a| cs.iter().map(|&b| m[a][b]).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

#[test]
fn tree_groups_are_cyclic_of_order_3k() {
    for size in 1..=6 {
        let k = size + 1;
        for t in enumerate_trees(size).unwrap() {
            let g = van_kampen(&tree_presentation(&t).unwrap(), 0);
            assert!(forced_generator_equality(&g), "{t}");
            assert_eq!(abelianization(&g), vec![BigInt::from(3 * k)]);
        }
    }
}
