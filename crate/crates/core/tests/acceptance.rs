//! Acceptance suite: prints one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use trigonal::braid::*;
use trigonal::counting::*;
use trigonal::dessin::*;
use trigonal::monodromy::*;
use trigonal::pi1::*;
use trigonal::skeleton::{enumerate_skeletons, theta_skeleton, Skeleton};
use trigonal::trees::*;
use trigonal::weierstrass::*;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn c1_table() -> Outcome {
    let expected = [(6, 2), (6, 5), (30, 14), (60, 42), (140, 132), (280, 429), (840, 1430)];
    for (m, (z, r)) in (8u64..=14).zip(expected) {
        let got = (zariski_count(m).map_err(|e| e.to_string())?, reducible_count(m).map_err(|e| e.to_string())?);
        ensure!(got == (BigUint::from(z as u32), BigUint::from(r as u32)), "m={m}: got {got:?}");
    }
    for (m, zr, rr) in [(20, (2, 5), (3, 6)), (40, (4, 13), (8, 17)), (80, (1, 31), (3, 41))] {
        let z = one_significant_digit(&zariski_count(m).unwrap());
        let r = one_significant_digit(&reducible_count(m).unwrap());
        ensure!(z == zr && r == rr, "m={m}: rounded to {z:?}/{r:?}");
    }
    Ok(())
}

fn c2_tree_census() -> Outcome {
    for k in 2..=8usize {
        let trees = enumerate_trees(k - 1).map_err(|e| e.to_string())?;
        let mut forms = BTreeSet::new();
        for t in &trees {
            let sk = tree_to_skeleton(t).map_err(|e| e.to_string())?;
            ensure!(sk.automorphism_count() == 1, "k={k} {t}: nontrivial automorphisms");
            let mut want = vec![FiberType::A0StarStar, FiberType::A(5 * k - 3)];
            want.extend(std::iter::repeat(FiberType::A0Star).take(k));
            want.sort();
            ensure!(fiber_profile(&sk) == want, "k={k} {t}: fiber profile");
            let (_, counts) = complete_to_dessin(&sk).map_err(|e| e.to_string())?;
            ensure!(hirzebruch_index(&counts).ok() == Some(k), "k={k} {t}: Hirzebruch index");
            forms.insert(sk.canonical_form());
        }
        ensure!(BigUint::from(forms.len()) == catalan(k as u64 - 1), "k={k}: {} classes", forms.len());
    }
    Ok(())
}

fn c3_real_counts() -> Outcome {
    for s in 1..=5u64 {
        let k = 2 * s;
        let n = enumerate_trees(k as usize - 1)
            .unwrap()
            .iter()
            .filter(|t| tree_to_skeleton(t).unwrap().is_mirror_symmetric())
            .count();
        ensure!(BigUint::from(n) == catalan(s - 1), "k={k}: {n} mirror-symmetric skeletons");
    }
    Ok(())
}

fn c4_monodromy() -> Outcome {
    for k in 2..=7usize {
        for t in enumerate_trees(k - 1).unwrap() {
            // tree_presentation fails with an invariant error if any walk-derived
            // generator differs from the closed form mod τ³.
            let p = tree_presentation(&t).map_err(|e| format!("{t}: {e}"))?;
            let degs: Vec<i64> = p.generators.iter().map(|g| g.braid.degree()).collect();
            let mut want = vec![1i64; k];
            want.extend([5 * k as i64 - 2, 2]);
            ensure!(degs == want, "{t}: degrees {degs:?}");
            ensure!(recognize_central_power(&p.product()) == Some(k as i64), "{t}: infinity relation");
            ensure!(component_count(&p) == 1, "{t}: components");
        }
    }
    let fig: RootedBinaryTree = "(((-,-),-),(-,-))".parse().unwrap();
    let words = tree_presentation(&fig).unwrap().encoding_words;
    ensure!(words == ["rr", "rl", "lr", "llr", "lll"], "fig tree words {words:?}");
    Ok(())
}

fn c5_braid_identities() -> Outcome {
    let s = BraidWord::sigma;
    for i in 1..=3 {
        let a = &(&s(i) * &s(i % 3 + 1)) * &s(i);
        let b = &(&s(i % 3 + 1) * &s(i)) * &s(i % 3 + 1);
        ensure!(braid_equal(&a, &b), "braid relation i={i}");
        let t3 = BraidWord::tau_pow(3);
        ensure!(braid_equal(&(&s(i) * &t3), &(&t3 * &s(i))), "τ³ central i={i}");
    }
    let tau = BraidWord::tau();
    ensure!(braid_equal(&tau, &(&s(3) * &s(2))) && braid_equal(&tau, &(&s(1) * &s(3))), "τ forms");
    for i in 1..=3 {
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                let lhs = &(&edge_monodromy(i + 1, i, b) * &edge_monodromy(i + 1, i, a))
                    * &BraidWord::sigma_pow(i, (a + b + 2) as i64);
                ensure!(braid_equal(&lhs, &BraidWord::identity()), "diagonal reciprocity i={i} s={a} t={b}");
            }
        }
        for j in 1..=3 {
            for sc in 0..=3u32 {
                let round = &edge_monodromy(j, i, sc) * &edge_monodromy(i, j, sc);
                ensure!(equal_mod_tau3(&chain_loop(i, 4 * sc as i64).unwrap(), &round), "chain-edge i={i} j={j} s={sc}");
            }
        }
        for sc in 0..=3i64 {
            for eps in [2, 3] {
                let lhs = &face_loop(i - 1, (2 * sc + 5 - eps) as u32) * &chain_loop(i, 4 * sc + eps).unwrap();
                ensure!(equal_mod_tau3(&lhs, &edge_monodromy(i - 1, i + 1, 0)), "closing i={i} s={sc} ε={eps}");
            }
        }
    }
    ensure!(braid_equal(&chain_loop(2, 2).unwrap(), &(&s(1) * &s(2))), "l_2(2) = σ1σ2");
    Ok(())
}

fn c6_reducibility() -> Outcome {
    for sk in enumerate_skeletons(6).map_err(|e| e.to_string())? {
        let mk = default_marking(&sk).map_err(|e| e.to_string())?;
        if let Ok(p) = skeleton_presentation(&sk, &mk) {
            ensure!(reducibility_by_marking(&sk) == (component_count(&p) > 1), "disagreement on {}", sk.to_json());
        }
    }
    let theta = theta_skeleton();
    let p = skeleton_presentation(&theta, &default_marking(&theta).unwrap()).unwrap();
    ensure!(reducibility_by_marking(&theta) && component_count(&p) == 3, "theta graph");
    for size in 1..=6 {
        for t in enumerate_trees(size).unwrap() {
            let (alt, _) = tree_to_skeleton_alt(&t).unwrap();
            for sk in [tree_to_skeleton(&t).unwrap(), alt] {
                ensure!(!reducibility_by_marking(&sk), "{t}: tree-family skeleton marked reducible");
                let p = skeleton_presentation(&sk, &default_marking(&sk).unwrap()).unwrap();
                ensure!(component_count(&p) == 1, "{t}: tree-family skeleton has several components");
            }
        }
    }
    Ok(())
}

fn dessin_ok(sk: &Skeleton) -> Outcome {
    let (_, counts) = complete_to_dessin(sk).map_err(|e| e.to_string())?;
    deg_j(&counts).map_err(|e| e.to_string())?;
    ensure!(counts.six_k_total() % 6 == 0, "6k total {}", counts.six_k_total());
    ensure!(sk.hirzebruch_index_closed_form() == Some(counts.six_k_total() / 6), "closed form for k");
    ensure!(check_maximal(&counts), "Riemann-Hurwitz equality");
    Ok(())
}

fn c7_dessins() -> Outcome {
    for sk in enumerate_skeletons(6).map_err(|e| e.to_string())? {
        dessin_ok(&sk).map_err(|e| format!("{}: {e}", sk.to_json()))?;
    }
    for size in 1..=6 {
        for t in enumerate_trees(size).unwrap() {
            dessin_ok(&tree_to_skeleton(&t).unwrap()).map_err(|e| format!("{t}: {e}"))?;
            dessin_ok(&tree_to_skeleton_alt(&t).unwrap().0).map_err(|e| format!("{t} alt: {e}"))?;
        }
    }
    Ok(())
}

fn c8_pi1() -> Outcome {
    for k in 2..=7usize {
        for t in enumerate_trees(k - 1).unwrap() {
            let g = van_kampen(&tree_presentation(&t).unwrap(), 0);
            ensure!(forced_generator_equality(&g), "{t}: no forced equality");
            let ab = abelianization(&g);
            ensure!(ab == vec![BigInt::from(3 * k)], "{t}: abelianization {}", abelian_group_text(&ab));
        }
    }
    Ok(())
}

fn random_poly(rng: &mut StdRng, deg: usize) -> RatPoly {
    let mut c: Vec<BigRational> = (0..deg)
        .map(|_| BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into()))
        .collect();
    let mut lead = 0;
    while lead == 0 {
        lead = rng.gen_range(-9i64..=9);
    }
    c.push(BigRational::from_integer(lead.into()));
    RatPoly::new(c)
}

fn proportional(a: &RatPoly, b: &RatPoly) -> Option<BigRational> {
    let c = b.leading() / a.leading();
    (a.degree() == b.degree() && &a.scale(&c) == b).then_some(c)
}

fn c9_weierstrass() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let (four, tw7) = (BigRational::from_integer(4.into()), BigRational::from_integer(27.into()));
    let mut done = 0;
    while done < 50 {
        let s = rng.gen_range(1..=2usize);
        let (g2, g3) = (random_poly(&mut rng, 2 * s), random_poly(&mut rng, 3 * s));
        let (a, b) = (g2.leading(), g3.leading());
        if (&four * &a * &a * &a + &tw7 * &b * &b).is_zero() || !is_simplified(&g2, &g3).unwrap() {
            continue;
        }
        let (p, q) = (g2.pow(3).scale(&four), g3.pow(2).scale(&tw7));
        let g = p.gcd(&q);
        let c = curve_from_j(&p.div_exact(&g).unwrap(), &q.div_exact(&g).unwrap()).map_err(|e| e.to_string())?;
        let (l2, l3) = (proportional(&p, &c.g2_cube), proportional(&q, &c.g3_square));
        ensure!(l2.is_some() && l2 == l3, "round trip failed for g2={g2}, g3={g3}");
        done += 1;
    }
    let c = curve_from_j(&RatPoly::z(), &RatPoly::from_ints(&[-1, 1])).map_err(|e| e.to_string())?;
    let profile = |p: &RatPoly| -> Vec<(String, u32)> {
        squarefree_decomposition(p).unwrap().factors.iter().map(|(f, e)| (f.to_string(), *e)).collect()
    };
    let want_p = vec![("z^2 - z".to_string(), 3)];
    let want_q = vec![("z".to_string(), 2), ("z - 1".to_string(), 4)];
    ensure!(c.k == 1 && profile(&c.g2_cube) == want_p && profile(&c.g3_square) == want_q, "curve_from_j(z, z-1)");
    let j0 = isotriv_class(&RatPoly::zero(), &(&RatPoly::z() * &RatPoly::from_ints(&[-1, 1]).pow(2))).unwrap();
    ensure!(j0.to_string() == "J0: 1×A~0** + 1×A~2*", "J0 class: {j0}");
    let j1 = isotriv_class(&RatPoly::from_ints(&[-1, 0, 1]), &RatPoly::zero()).unwrap();
    ensure!(j1.to_string() == "J1: 2×A~1*", "J1 class: {j1}");
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("1 table reproduction", c1_table, Duration::from_secs(1)),
        ("2 tree-family census k=2..8", c2_tree_census, Duration::from_secs(30)),
        ("3 mirror-symmetric tree counts", c3_real_counts, Duration::from_secs(30)),
        ("4 monodromy suite k<=7", c4_monodromy, Duration::from_secs(60)),
        ("5 braid identities", c5_braid_identities, Duration::from_secs(5)),
        ("6 reducibility cross-validation", c6_reducibility, Duration::from_secs(300)),
        ("7 dessin invariants", c7_dessins, Duration::from_secs(300)),
        ("8 fundamental groups k=2..7", c8_pi1, Duration::from_secs(300)),
        ("9 Weierstrass round trips", c9_weierstrass, Duration::from_secs(10)),
    ];
    let mut failures = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let verdict = match (&outcome, took <= budget) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over budget {budget:?})"),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        println!("criterion {name}: {verdict} [{took:.2?}]");
        if verdict != "PASS" {
            failures.push(name);
        }
    }
    println!("criterion 10 topological distinguishability: EXCLUDED (open problem, not reproducible)");
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
