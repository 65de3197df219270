use std::io::Write;
use std::path::Path;

use serde_json::json;
use trigonal::counting::{
    arithmetic_lower_bound, count_reports, one_significant_digit, real_counts, reducible_count, zariski_count,
};
use trigonal::dessin::{complete_to_dessin, fiber_profile, fiber_profile_text, hirzebruch_index};
use trigonal::monodromy::{
    component_count, default_marking, find_reducing_marking, infinity_check, skeleton_presentation,
    tree_presentation, MonodromyPresentation,
};
use trigonal::pi1::{abelian_group_text, abelianization, forced_generator_equality, van_kampen};
use trigonal::skeleton::{enumerate_skeletons, Skeleton};
use trigonal::trees::{alt_tree_layout, enumerate_trees, tree_layout, RootedBinaryTree};
use trigonal::weierstrass::{
    curve_from_j, discriminant, is_simplified, isotriv_class, j_invariant, JInvariant, RatPoly,
};
use trigonal::{Error, Result};

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(io_error)?
    };
}

pub fn io_error(e: std::io::Error) -> Error {
    Error::Resource(format!("i/o: {e}"))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

const TABLE_DEGREES: [u64; 10] = [8, 9, 10, 11, 12, 13, 14, 20, 40, 80];

pub fn count(out: &mut dyn Write, degree: Option<u64>, table: bool, as_json: bool) -> Result<()> {
    if table {
        return count_table(out, as_json);
    }
    let m = degree.expect("clap requires --degree or --table");
    let reports = count_reports(m);
    if reports.is_empty() {
        return Err(Error::Domain(format!("no count is defined at m={m}")));
    }
    if as_json {
        let j = json!({ "m": m, "counts": reports, "real": real_counts(m) });
        say!(out, "{j}");
        return Ok(());
    }
    let mut parts = Vec::new();
    if let Ok(z) = zariski_count(m) {
        parts.push(format!("Z({m})={z}"));
    }
    if let Ok(r) = reducible_count(m) {
        parts.push(format!("R({m})={r}"));
    }
    let real = real_counts(m);
    for (name, rc) in [("Z_real", real.z_real), ("R_real", real.r_real)] {
        if let Some(rc) = rc {
            let flag = if rc.below_domain { " (below formula domain)" } else { "" };
            parts.push(format!("{name}={}{flag}", rc.value));
        }
    }
    if let Ok(a) = arithmetic_lower_bound(m) {
        parts.push(format!("Z_ar({m})>={a}"));
    }
    say!(out, "{}", parts.join(" "));
    Ok(())
}

fn count_table(out: &mut dyn Write, as_json: bool) -> Result<()> {
    let rows: Vec<(u64, String, String)> = TABLE_DEGREES
        .iter()
        .map(|&m| {
            let (z, r) = (zariski_count(m)?, reducible_count(m)?);
            if m <= 14 {
                Ok((m, z.to_string(), r.to_string()))
            } else {
                let sci = |n| {
                    let (d, e) = one_significant_digit(n);
                    format!("{d}e{e}")
                };
                Ok((m, sci(&z), sci(&r)))
            }
        })
        .collect::<Result<_>>()?;
    if as_json {
        let j: Vec<_> = rows.iter().map(|(m, z, r)| json!({ "m": m, "Z": z, "R": r })).collect();
        say!(out, "{}", serde_json::Value::Array(j));
        return Ok(());
    }
    say!(out, "{:>4} {:>8} {:>8}", "m", "Z(m)", "R(m)");
    for (m, z, r) in rows {
        say!(out, "{m:>4} {z:>8} {r:>8}");
    }
    Ok(())
}

pub fn trees(out: &mut dyn Write, size: usize, symmetric_only: bool, emit: Option<&Path>, alt: bool) -> Result<()> {
    let list = enumerate_trees(size)?;
    if let Some(dir) = emit {
        std::fs::create_dir_all(dir).map_err(io_error)?;
    }
    for (idx, t) in list.iter().enumerate().filter(|(_, t)| !symmetric_only || t.is_symmetric()) {
        let lay = if alt { alt_tree_layout(t)? } else { tree_layout(t)? };
        let sk = &lay.skeleton;
        say!(
            out,
            "{idx:04} {t} k={} symmetric={} mirror-symmetric={}",
            lay.k,
            yes_no(t.is_symmetric()),
            yes_no(sk.is_mirror_symmetric())
        );
        if let Some(dir) = emit {
            let family = if alt { "alt" } else { "tree" };
            let path = dir.join(format!("{family}-{size}-{idx:04}.json"));
            std::fs::write(&path, sk.to_json() + "\n").map_err(io_error)?;
        }
    }
    Ok(())
}

pub fn enumerate(out: &mut dyn Write, max_edges: usize) -> Result<()> {
    for (idx, sk) in enumerate_skeletons(max_edges)?.iter().enumerate() {
        let (_, counts) = complete_to_dessin(sk)?;
        say!(
            out,
            "{idx:04} E={} V={} F={} k={} aut={} {}",
            sk.edge_count(),
            sk.vertex_count(),
            sk.face_count(),
            hirzebruch_index(&counts)?,
            sk.automorphism_count(),
            sk.to_json()
        );
    }
    Ok(())
}

fn read_skeleton(path: &Path) -> Result<Skeleton> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Skeleton::from_json(&text)
}

fn write_file(path: Option<&Path>, content: String) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(io_error),
        None => Ok(()),
    }
}

pub fn classify(out: &mut dyn Write, file: &Path, dot: Option<&Path>, dessin_dot: Option<&Path>) -> Result<()> {
    let sk = read_skeleton(file)?;
    let (graph, counts) = complete_to_dessin(&sk)?;
    let k = hirzebruch_index(&counts)?;
    let reducible = if !sk.vertices().iter().any(|v| v.valency() == 3) {
        "no (no trivalent vertex)".to_string()
    } else if find_reducing_marking(&sk).is_some() {
        "yes (marking found)".to_string()
    } else {
        "no".to_string()
    };
    say!(out, "k={k}, fibers: {}, reducible: {reducible}", fiber_profile_text(&fiber_profile(&sk)));
    say!(out, "valid: yes");
    say!(out, "vertices={} edges={} faces={}", sk.vertex_count(), sk.edge_count(), sk.face_count());
    say!(out, "automorphisms: {}", sk.automorphism_count());
    say!(out, "mirror-symmetric: {}", yes_no(sk.is_mirror_symmetric()));
    write_file(dot, sk.to_dot())?;
    write_file(dessin_dot, graph.to_dot())?;
    Ok(())
}

pub fn monodromy(
    out: &mut dyn Write,
    file: Option<&Path>,
    tree: Option<&str>,
    as_json: bool,
    dot: Option<&Path>,
) -> Result<()> {
    let (p, sk, is_tree): (MonodromyPresentation, Skeleton, bool) = match (tree, file) {
        (Some(t), _) => {
            let t: RootedBinaryTree = t.parse()?;
            (tree_presentation(&t)?, tree_layout(&t)?.skeleton, true)
        }
        (None, Some(f)) => {
            let sk = read_skeleton(f)?;
            let mk = default_marking(&sk)?;
            (skeleton_presentation(&sk, &mk)?, sk, false)
        }
        (None, None) => unreachable!("clap requires a file or --tree"),
    };
    write_file(dot, sk.to_dot())?;
    if as_json {
        say!(out, "{}", p.to_json());
        return Ok(());
    }
    say!(out, "k={}", p.k);
    for g in &p.generators {
        say!(out, "{}: {}", g.label, g.braid);
    }
    if is_tree {
        let ok = infinity_check(&p);
        say!(out, "infinity: {}", if ok { "product = tau^(3k)" } else { "FAILED" });
        if !ok {
            return Err(Error::Invariant("monodromy at infinity is not tau^(3k)".into()));
        }
    } else {
        say!(out, "infinity: not checked (basis order known for the tree family only)");
    }
    say!(out, "components: {}", component_count(&p));
    let group = van_kampen(&p, 0);
    say!(out, "forced equality a1=a2=a3: {}", yes_no(forced_generator_equality(&group)));
    say!(out, "abelianization: {}", abelian_group_text(&abelianization(&group)));
    Ok(())
}

pub fn weierstrass(out: &mut dyn Write, g2: &str, g3: &str) -> Result<()> {
    let (g2, g3) = (RatPoly::parse(g2)?, RatPoly::parse(g3)?);
    say!(out, "discriminant: {}", discriminant(&g2, &g3));
    match j_invariant(&g2, &g3)? {
        JInvariant::Constant(c) => say!(out, "j: {c} (constant)"),
        JInvariant::Function(f) => say!(out, "j: {f}"),
    }
    let simplified = is_simplified(&g2, &g3)?;
    say!(out, "simplified: {}", yes_no(simplified));
    if simplified {
        say!(out, "class: {}", isotriv_class(&g2, &g3)?);
    }
    Ok(())
}

pub fn from_j(out: &mut dyn Write, p: &str, q: &str) -> Result<()> {
    let c = curve_from_j(&RatPoly::parse(p)?, &RatPoly::parse(q)?)?;
    say!(out, "k={}", c.k);
    say!(out, "4*g2^3 ~ {}", c.g2_cube);
    say!(out, "27*g3^2 ~ {}", c.g3_square);
    say!(out, "g2 ~ {}", c.g2_monic()?);
    say!(out, "g3 ~ {}", c.g3_monic()?);
    Ok(())
}
