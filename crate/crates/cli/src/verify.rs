use std::collections::BTreeSet;
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use trigonal::braid::{braid_equal, equal_mod_tau3, BraidWord};
use trigonal::counting::{reducible_count, zariski_count};
use trigonal::dessin::{check_maximal, complete_to_dessin, deg_j, fiber_profile, hirzebruch_index, FiberType};
use trigonal::monodromy::{
    chain_loop, component_count, default_marking, edge_monodromy, face_loop, infinity_check,
    reducibility_by_marking, skeleton_presentation, tree_presentation,
};
use trigonal::pi1::{abelianization, forced_generator_equality, van_kampen};
use trigonal::skeleton::{enumerate_skeletons, Skeleton};
use trigonal::trees::{catalan, enumerate_trees, tree_to_skeleton};
use trigonal::{Error, Result};

use crate::commands::io_error;

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn counts_table() -> Check {
    let z = [6u32, 6, 30, 60, 140, 280, 840];
    let r = [2u32, 5, 14, 42, 132, 429, 1430];
    for (i, m) in (8u64..=14).enumerate() {
        ensure(zariski_count(m).ok() == Some(BigUint::from(z[i])), || format!("Z({m})"))?;
        ensure(reducible_count(m).ok() == Some(BigUint::from(r[i])), || format!("R({m})"))?;
    }
    Ok(())
}

fn braid_identities() -> Check {
    let s = BraidWord::sigma;
    for i in 1..=3 {
        let j = i % 3 + 1;
        ensure(braid_equal(&(&(&s(i) * &s(j)) * &s(i)), &(&(&s(j) * &s(i)) * &s(j))), || format!("braid relation {i}"))?;
        for sc in 0..=3i64 {
            for eps in [2, 3] {
                let lhs = &face_loop(i - 1, (2 * sc + 5 - eps) as u32)
                    * &chain_loop(i, 4 * sc + eps).map_err(|e| e.to_string())?;
                ensure(equal_mod_tau3(&lhs, &edge_monodromy(i - 1, i + 1, 0)), || format!("closing i={i} s={sc}"))?;
            }
        }
    }
    Ok(())
}

fn skeleton_identities(all: &[Skeleton]) -> Check {
    let forms: BTreeSet<Vec<u8>> = all.iter().map(|s| s.canonical_form()).collect();
    ensure(forms.len() == all.len(), || "duplicate canonical forms".into())?;
    for sk in all {
        let (v, e, f) = (sk.vertex_count(), sk.edge_count(), sk.face_count());
        ensure(v + f == e + 2, || format!("Euler fails on {}", sk.to_json()))?;
        ensure(forms.contains(&sk.mirror().canonical_form()), || format!("mirror missing for {}", sk.to_json()))?;
    }
    Ok(())
}

fn dessin_identities(all: &[Skeleton]) -> Check {
    for sk in all {
        let (g, counts) = complete_to_dessin(sk).map_err(|e| e.to_string())?;
        g.check_structure().map_err(|e| e.to_string())?;
        ensure(g.check_admissible() == Ok(true), || "inadmissible dessin".into())?;
        deg_j(&counts).map_err(|e| e.to_string())?;
        let k = hirzebruch_index(&counts).map_err(|e| e.to_string())?;
        ensure(sk.hirzebruch_index_closed_form() == Some(k), || format!("closed-form k on {}", sk.to_json()))?;
        ensure(check_maximal(&counts), || format!("Riemann-Hurwitz on {}", sk.to_json()))?;
    }
    Ok(())
}

fn reducibility(all: &[Skeleton]) -> Check {
    for sk in all {
        let mk = default_marking(sk).map_err(|e| e.to_string())?;
        if let Ok(p) = skeleton_presentation(sk, &mk) {
            ensure(reducibility_by_marking(sk) == (component_count(&p) > 1), || format!("disagreement on {}", sk.to_json()))?;
        }
    }
    Ok(())
}

fn tree_census(max_k: usize) -> Check {
    for k in 2..=max_k {
        let trees = enumerate_trees(k - 1).map_err(|e| e.to_string())?;
        let mut forms = BTreeSet::new();
        for t in &trees {
            let sk = tree_to_skeleton(t).map_err(|e| e.to_string())?;
            ensure(sk.automorphism_count() == 1, || format!("{t}: automorphisms"))?;
            let mut want = vec![FiberType::A0StarStar, FiberType::A(5 * k - 3)];
            want.extend(std::iter::repeat(FiberType::A0Star).take(k));
            want.sort();
            ensure(fiber_profile(&sk) == want, || format!("{t}: fiber profile"))?;
            forms.insert(sk.canonical_form());
        }
        ensure(BigUint::from(forms.len()) == catalan(k as u64 - 1), || format!("k={k}: class count"))?;
    }
    Ok(())
}

fn tree_monodromy(max_k: usize) -> Check {
    for k in 2..=max_k {
        for t in enumerate_trees(k - 1).map_err(|e| e.to_string())? {
            let p = tree_presentation(&t).map_err(|e| format!("{t}: {e}"))?;
            ensure(infinity_check(&p), || format!("{t}: infinity"))?;
            ensure(component_count(&p) == 1, || format!("{t}: components"))?;
            let g = van_kampen(&p, 0);
            ensure(forced_generator_equality(&g), || format!("{t}: forced equality"))?;
            ensure(abelianization(&g) == vec![BigInt::from(3 * k)], || format!("{t}: abelianization"))?;
        }
    }
    Ok(())
}

pub fn run(out: &mut dyn Write, max_edges: usize, max_k: usize) -> Result<()> {
    let all = enumerate_skeletons(max_edges)?;
    enumerate_trees(max_k.saturating_sub(1))?;
    let checks: Vec<(String, Check)> = vec![
        ("count table m=8..14".into(), counts_table()),
        ("braid identities".into(), braid_identities()),
        (format!("skeleton identities (E<={max_edges})"), skeleton_identities(&all)),
        (format!("dessin invariants (E<={max_edges})"), dessin_identities(&all)),
        (format!("reducibility cross-validation (E<={max_edges})"), reducibility(&all)),
        (format!("tree census (k<={max_k})"), tree_census(max_k)),
        (format!("tree monodromy and pi1 (k<={max_k})"), tree_monodromy(max_k)),
    ];
    let mut failed = 0;
    for (name, res) in &checks {
        match res {
            Ok(()) => writeln!(out, "PASS {name}").map_err(io_error)?,
            Err(e) => {
                failed += 1;
                writeln!(out, "FAIL {name}: {e}").map_err(io_error)?
            }
        }
    }
    if failed > 0 {
        return Err(Error::Invariant(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(())
}
