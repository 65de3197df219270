//! Trichotomic graphs, the completion of a skeleton to its maximal dessin,
//! singular fiber types and the vertex-count identities.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::skeleton::{Skeleton, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeColor {
    Solid,
    Bold,
    Dotted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DessinVertex {
    Black,
    White,
    Cross,
    Mono,
}

/// A graph on S² with ●, ∘, × and monochrome vertices and solid, bold and
/// dotted oriented edges, as a rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrichotomicGraph {
    pub twin: Vec<usize>,
    pub next: Vec<usize>,
    /// Kind of the vertex at each dart.
    pub kind: Vec<DessinVertex>,
    pub color: Vec<EdgeColor>,
    /// Whether the edge of the dart points away from the dart's vertex.
    pub outgoing: Vec<bool>,
}

impl TrichotomicGraph {
    pub fn dart_count(&self) -> usize {
        self.twin.len()
    }

    fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.next.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                orbit.push(d);
                d = self.next[d];
            }
            out.push(orbit);
        }
        out
    }

    /// Vertices as (kind, dessin valency).
    pub fn vertex_list(&self) -> Vec<(DessinVertex, usize)> {
        self.vertex_orbits().into_iter().map(|o| (self.kind[o[0]], o.len())).collect()
    }

    /// Checks the structural conditions: valencies, colors and orientations
    /// at every vertex, and alternation of orientations in rotation order.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.twin.len();
        let bad = |m: String| Err(Error::Domain(m));
        if self.next.len() != n || self.kind.len() != n || self.color.len() != n || self.outgoing.len() != n {
            return bad("table lengths differ".into());
        }
        for d in 0..n {
            let t = self.twin[d];
            if t >= n || t == d || self.twin[t] != d {
                return bad(format!("twin is not an involution at dart {d}"));
            }
            if self.color[t] != self.color[d] || self.outgoing[t] == self.outgoing[d] {
                return bad(format!("edge of dart {d} has inconsistent color or orientation"));
            }
        }
        for orbit in self.vertex_orbits() {
            let kind = self.kind[orbit[0]];
            if orbit.iter().any(|&d| self.kind[d] != kind) {
                return bad("vertex darts disagree on the vertex kind".into());
            }
            let val = orbit.len();
            if kind == DessinVertex::Mono {
                if val < 3 {
                    return bad("monochrome vertex of valency < 3".into());
                }
                if orbit.iter().any(|&d| self.color[d] != self.color[orbit[0]]) {
                    return bad("monochrome vertex with mixed edge colors".into());
                }
            } else {
                if val < 2 {
                    return bad("essential vertex of valency < 2".into());
                }
                let (inc, out) = match kind {
                    DessinVertex::Cross => (EdgeColor::Dotted, EdgeColor::Solid),
                    DessinVertex::Black => (EdgeColor::Solid, EdgeColor::Bold),
                    DessinVertex::White => (EdgeColor::Bold, EdgeColor::Dotted),
                    DessinVertex::Mono => unreachable!(),
                };
                for &d in &orbit {
                    let want = if self.outgoing[d] { out } else { inc };
                    if self.color[d] != want {
                        return bad(format!("dart {d}: wrong color for its direction at a {kind:?} vertex"));
                    }
                }
            }
            if orbit.iter().any(|&d| self.outgoing[d] == self.outgoing[self.next[d]]) {
                return bad("orientations do not alternate around a vertex".into());
            }
        }
        Ok(())
    }

    /// Admissibility: no oriented cycle through monochrome vertices only.
    pub fn check_admissible(&self) -> Result<bool> {
        self.check_structure()?;
        let n = self.twin.len();
        let vid = {
            let mut v = vec![0; n];
            for (i, o) in self.vertex_orbits().iter().enumerate() {
                for &d in o {
                    v[d] = i;
                }
            }
            v
        };
        let nv = vid.iter().max().map_or(0, |m| m + 1);
        let mut adj = vec![Vec::new(); nv];
        for d in 0..n {
            let t = self.twin[d];
            if self.outgoing[d] && self.kind[d] == DessinVertex::Mono && self.kind[t] == DessinVertex::Mono {
                adj[vid[d]].push(vid[t]);
            }
        }
        // 0 = unvisited, 1 = on stack, 2 = done.
        let mut state = vec![0u8; nv];
        for s in 0..nv {
            if state[s] != 0 {
                continue;
            }
            let mut stack = vec![(s, 0usize)];
            state[s] = 1;
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if *i < adj[v].len() {
                    let w = adj[v][*i];
                    *i += 1;
                    match state[w] {
                        1 => return Ok(false),
                        0 => {
                            state[w] = 1;
                            stack.push((w, 0));
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        Ok(true)
    }

    /// Graphviz rendering with solid, bold and dotted edge styles.
    pub fn to_dot(&self) -> String {
        let orbits = self.vertex_orbits();
        let mut vid = vec![0; self.twin.len()];
        let mut out = String::from("digraph dessin {\n  node [label=\"\"];\n");
        for (i, o) in orbits.iter().enumerate() {
            for &d in o {
                vid[d] = i;
            }
            let shape = match self.kind[o[0]] {
                DessinVertex::Black => "shape=circle, style=filled, fillcolor=black, width=0.15",
                DessinVertex::White => "shape=circle, width=0.15",
                DessinVertex::Cross => "shape=none, label=\"×\"",
                DessinVertex::Mono => "shape=point",
            };
            out.push_str(&format!("  v{i} [{shape}];\n"));
        }
        for d in 0..self.twin.len() {
            if self.outgoing[d] {
                let style = match self.color[d] {
                    EdgeColor::Solid => "solid",
                    EdgeColor::Bold => "bold",
                    EdgeColor::Dotted => "dotted",
                };
                out.push_str(&format!("  v{} -> v{} [style={style}];\n", vid[d], vid[self.twin[d]]));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Vertex census of a dessin: `n_*[i]` counts vertices of dessin valency 2i.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DessinCounts {
    pub n_black: BTreeMap<usize, usize>,
    pub n_white: BTreeMap<usize, usize>,
    pub n_cross: BTreeMap<usize, usize>,
}

fn weighted(m: &BTreeMap<usize, usize>) -> usize {
    m.iter().map(|(i, c)| i * c).sum()
}

fn total(m: &BTreeMap<usize, usize>) -> usize {
    m.values().sum()
}

impl DessinCounts {
    /// Counts read off a trichotomic graph.
    pub fn from_graph(g: &TrichotomicGraph) -> Result<DessinCounts> {
        let mut c = DessinCounts::default();
        for (kind, val) in g.vertex_list() {
            if val % 2 != 0 {
                return Err(Error::Domain(format!("{kind:?} vertex of odd valency {val}")));
            }
            let slot = match kind {
                DessinVertex::Black => &mut c.n_black,
                DessinVertex::White => &mut c.n_white,
                DessinVertex::Cross => &mut c.n_cross,
                DessinVertex::Mono => continue,
            };
            *slot.entry(val / 2).or_insert(0) += 1;
        }
        Ok(c)
    }

    pub fn black(&self, i: usize) -> usize {
        self.n_black.get(&i).copied().unwrap_or(0)
    }

    pub fn white(&self, i: usize) -> usize {
        self.n_white.get(&i).copied().unwrap_or(0)
    }

    pub fn cross(&self, i: usize) -> usize {
        self.n_cross.get(&i).copied().unwrap_or(0)
    }

    /// The three degree sums Σi#●(i), Σi#∘(i), Σi#×(i).
    pub fn degree_sums(&self) -> (usize, usize, usize) {
        (weighted(&self.n_black), weighted(&self.n_white), weighted(&self.n_cross))
    }

    /// The right-hand side of the 6k identity.
    pub fn six_k_total(&self) -> usize {
        let mut t = weighted(&self.n_cross);
        for (&i, &c) in &self.n_black {
            t += match i % 3 {
                1 => 2 * c,
                2 => 4 * c,
                _ => 0,
            };
        }
        for (&i, &c) in &self.n_white {
            if i % 2 == 1 {
                t += 3 * c;
            }
        }
        t
    }

    pub fn vertex_total(&self) -> usize {
        total(&self.n_black) + total(&self.n_white) + total(&self.n_cross)
    }
}

/// deg j, the common value of the three degree sums.
pub fn deg_j(counts: &DessinCounts) -> Result<usize> {
    let (b, w, c) = counts.degree_sums();
    if b == w && w == c {
        Ok(b)
    } else {
        Err(Error::Invariant(format!("degree sums disagree: black {b}, white {w}, cross {c}")))
    }
}

/// The Hirzebruch index k from the 6k identity.
pub fn hirzebruch_index(counts: &DessinCounts) -> Result<usize> {
    let t = counts.six_k_total();
    if t % 6 == 0 {
        Ok(t / 6)
    } else {
        Err(Error::Invariant(format!("6k total {t} is not divisible by 6")))
    }
}

/// Riemann–Hurwitz equality plus the valency bounds of a maximal dessin.
pub fn check_maximal(counts: &DessinCounts) -> bool {
    let Ok(d) = deg_j(counts) else { return false };
    counts.vertex_total() == d + 2
        && counts.n_black.iter().all(|(&i, &c)| i <= 3 || c == 0)
        && counts.n_white.iter().all(|(&i, &c)| i <= 2 || c == 0)
}

/// Necessary conditions for a deformation between two dessins: equal
/// degree, equal pole partition, equal residues of root multiplicities of
/// j (mod 3) and of j − 1 (mod 2).
pub fn check_deformation_conditions(before: &DessinCounts, after: &DessinCounts) -> bool {
    let residues = |m: &BTreeMap<usize, usize>, q: usize| {
        let mut r: BTreeMap<usize, usize> = BTreeMap::new();
        for (&i, &c) in m {
            if i % q != 0 && c > 0 {
                *r.entry(i % q).or_insert(0) += c;
            }
        }
        r
    };
    let poles = |m: &BTreeMap<usize, usize>| m.iter().filter(|(_, &c)| c > 0).map(|(&i, &c)| (i, c)).collect::<Vec<_>>();
    matches!((deg_j(before), deg_j(after)), (Ok(a), Ok(b)) if a == b)
        && poles(&before.n_cross) == poles(&after.n_cross)
        && residues(&before.n_black, 3) == residues(&after.n_black, 3)
        && residues(&before.n_white, 2) == residues(&after.n_white, 2)
}

/// The maximal dessin of a skeleton: a ∘ on every edge (at the free end of
/// a hanging edge) and a × in every region, joined to the corners.
pub fn complete_to_dessin(sk: &Skeleton) -> Result<(TrichotomicGraph, DessinCounts)> {
    sk.validate()?;
    let n = sk.dart_count();
    let mut g = TrichotomicGraph { twin: vec![], next: vec![], kind: vec![], color: vec![], outgoing: vec![] };
    // Adds an edge from a vertex of kind `ka` to one of kind `kb`; returns the two darts.
    let edge = |g: &mut TrichotomicGraph, ka, kb, color| {
        let a = g.twin.len();
        g.twin.extend([a + 1, a]);
        g.next.extend([a, a + 1]);
        g.kind.extend([ka, kb]);
        g.color.extend([color, color]);
        g.outgoing.extend([true, false]);
        (a, a + 1)
    };
    use DessinVertex::{Black, Cross, White};
    // Bold edges: skeleton dart d at a BLACK vertex gives bold[d] (at ●) and bold_w[d] (at ∘).
    let mut bold = vec![usize::MAX; n];
    let mut bold_w = vec![usize::MAX; n];
    for d in 0..n {
        if !sk.is_free(d) {
            let (a, b) = edge(&mut g, Black, White, EdgeColor::Bold);
            bold[d] = a;
            bold_w[d] = b;
        }
    }
    let faces = sk.faces();
    // Corner at dart e (between prev(e) and e): solid edge × → ● or dotted ∘ → × at a free end.
    let mut corner_at_vertex = vec![usize::MAX; n];
    let mut corner_at_cross = vec![usize::MAX; n];
    // Midpoint of a full edge on the side of dart e: dotted ∘ → ×.
    let mut mid_at_white = vec![usize::MAX; n];
    let mut mid_at_cross = vec![usize::MAX; n];
    for face in &faces {
        for &e in face {
            if sk.is_free(e) {
                let (w, x) = edge(&mut g, White, Cross, EdgeColor::Dotted);
                corner_at_vertex[e] = w;
                corner_at_cross[e] = x;
            } else {
                let (x, b) = edge(&mut g, Cross, Black, EdgeColor::Solid);
                corner_at_vertex[e] = b;
                corner_at_cross[e] = x;
                if !sk.is_free(sk.twin(e)) {
                    let (w, x) = edge(&mut g, White, Cross, EdgeColor::Dotted);
                    mid_at_white[e] = w;
                    mid_at_cross[e] = x;
                }
            }
        }
    }
    let set_rotation = |g: &mut TrichotomicGraph, ring: &[usize]| {
        for i in 0..ring.len() {
            g.next[ring[i]] = ring[(i + 1) % ring.len()];
        }
    };
    for v in sk.vertices() {
        match v.kind {
            VertexKind::Black => {
                let mut ring = Vec::new();
                for &d in &v.darts {
                    ring.push(bold[d]);
                    ring.push(corner_at_vertex[sk.next(d)]);
                }
                set_rotation(&mut g, &ring);
            }
            VertexKind::Free => {
                let f = v.darts[0];
                set_rotation(&mut g, &[bold_w[sk.twin(f)], corner_at_vertex[f]]);
            }
        }
    }
    for d in 0..n {
        let t = sk.twin(d);
        if d < t && !sk.is_free(d) && !sk.is_free(t) {
            set_rotation(&mut g, &[bold_w[d], mid_at_white[d], bold_w[t], mid_at_white[t]]);
        }
    }
    for face in &faces {
        let mut ring = Vec::new();
        for &e in face {
            ring.push(corner_at_cross[e]);
            if mid_at_cross[e] != usize::MAX {
                ring.push(mid_at_cross[e]);
            }
        }
        ring.reverse();
        set_rotation(&mut g, &ring);
    }
    g.check_structure().map_err(|e| Error::Invariant(format!("completed dessin: {e}")))?;
    let counts = DessinCounts::from_graph(&g)?;
    Ok((g, counts))
}

/// Singular fiber types of simplified trigonal curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberType {
    /// Ã_p, p ≥ 1.
    A(usize),
    A0Star,
    A0StarStar,
    A1Star,
    A2Star,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JValue {
    Zero,
    One,
    Infinity,
}

impl FiberType {
    pub fn j_value(&self) -> JValue {
        match self {
            FiberType::A(_) | FiberType::A0Star => JValue::Infinity,
            FiberType::A0StarStar | FiberType::A2Star => JValue::Zero,
            FiberType::A1Star => JValue::One,
        }
    }

    /// ind_z j; for j = 0 and j = 1 only the residue is determined (see
    /// [`FiberType::ind_modulus`]).
    pub fn ind_j(&self) -> usize {
        match self {
            FiberType::A(p) => p + 1,
            FiberType::A0Star | FiberType::A0StarStar | FiberType::A1Star => 1,
            FiberType::A2Star => 2,
        }
    }

    pub fn ind_modulus(&self) -> Option<usize> {
        match self {
            FiberType::A0StarStar | FiberType::A2Star => Some(3),
            FiberType::A1Star => Some(2),
            _ => None,
        }
    }

    pub fn multiplicity(&self) -> usize {
        match self {
            FiberType::A(p) => p + 1,
            FiberType::A0Star => 1,
            FiberType::A0StarStar => 2,
            FiberType::A1Star => 3,
            FiberType::A2Star => 4,
        }
    }

    pub fn delta_deg_j(&self) -> i64 {
        match self {
            FiberType::A(_) | FiberType::A0Star => 0,
            FiberType::A0StarStar => -2,
            FiberType::A1Star => -3,
            FiberType::A2Star => -4,
        }
    }

    /// Kodaira's name for the fiber of the associated elliptic surface.
    pub fn kodaira(&self) -> String {
        match self {
            FiberType::A(p) => format!("I{}", p + 1),
            FiberType::A0Star => "I1".into(),
            FiberType::A0StarStar => "II".into(),
            FiberType::A1Star => "III".into(),
            FiberType::A2Star => "IV".into(),
        }
    }

    /// The non-simplified companion type (D̃/Ẽ), with its Δdeg j and
    /// multiplicity. Metadata only: skeleton-derived curves never have them.
    pub fn non_simplified_companion(&self) -> (String, i64, usize) {
        match self {
            FiberType::A(p) => (format!("D~{}", p + 5), -6, p + 7),
            FiberType::A0Star => ("D~5".into(), -6, 7),
            FiberType::A0StarStar => ("E~6".into(), -8, 8),
            FiberType::A1Star => ("E~7".into(), -9, 9),
            FiberType::A2Star => ("E~8".into(), -10, 10),
        }
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::A(p) => write!(f, "A~{p}"),
            FiberType::A0Star => f.write_str("A~0*"),
            FiberType::A0StarStar => f.write_str("A~0**"),
            FiberType::A1Star => f.write_str("A~1*"),
            FiberType::A2Star => f.write_str("A~2*"),
        }
    }
}

#[derive(Serialize)]
struct FiberJson {
    #[serde(rename = "type")]
    kind: String,
    mult: usize,
}

/// Singular fibers of the curve with skeleton `sk`, sorted.
pub fn fiber_profile(sk: &Skeleton) -> Vec<FiberType> {
    let mut out = Vec::new();
    for v in sk.vertices() {
        match (v.kind, v.valency()) {
            (VertexKind::Black, 1) => out.push(FiberType::A0StarStar),
            (VertexKind::Black, 2) => out.push(FiberType::A2Star),
            (VertexKind::Free, _) => out.push(FiberType::A1Star),
            _ => {}
        }
    }
    for face in sk.faces() {
        match sk.face_index(&face) {
            0 => {}
            1 => out.push(FiberType::A0Star),
            i => out.push(FiberType::A(i - 1)),
        }
    }
    out.sort();
    out
}

/// JSON array of `{"type": ..., "mult": ...}`, one entry per fiber.
pub fn fiber_profile_json(profile: &[FiberType]) -> String {
    let v: Vec<FiberJson> = profile.iter().map(|f| FiberJson { kind: f.to_string(), mult: f.multiplicity() }).collect();
    serde_json::to_string(&v).expect("fiber profile serializes")
}

/// Compact text such as `3×A~1, A~0**`.
pub fn fiber_profile_text(profile: &[FiberType]) -> String {
    let mut groups: Vec<(FiberType, usize)> = Vec::new();
    for &f in profile {
        match groups.last_mut() {
            Some((g, c)) if *g == f => *c += 1,
            _ => groups.push((f, 1)),
        }
    }
    groups
        .iter()
        .map(|(f, c)| if *c == 1 { f.to_string() } else { format!("{c}×{f}") })
        .collect::<Vec<_>>()
        .join(", ")
}
