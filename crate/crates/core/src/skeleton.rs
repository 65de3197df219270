//! Skeletons: connected planar rotation systems with vertex valency ≤ 3.
//!
//! A skeleton is stored as a set of darts (half-edges) with two
//! permutations. `twin` pairs the two darts of an edge and `next` rotates
//! counterclockwise around a vertex. The free end of a hanging edge is an
//! explicit FREE vertex consisting of a single dart, so `twin` is always a
//! total involution. Faces are the orbits of `next ∘ twin`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest edge count accepted by [`enumerate_skeletons`].
pub const MAX_ENUMERATION_EDGES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Skeleton {
    twin: Vec<usize>,
    next: Vec<usize>,
    free: Vec<bool>,
}

/// Kind of a skeleton vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Black,
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    /// Darts in counterclockwise order, starting from the smallest.
    pub darts: Vec<usize>,
}

impl Vertex {
    pub fn valency(&self) -> usize {
        self.darts.len()
    }
}

#[derive(Serialize, Deserialize)]
struct SkeletonJson {
    darts: usize,
    twin: Vec<usize>,
    next: Vec<usize>,
    free: Vec<usize>,
}

fn orbits(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            orbit.push(d);
            d = perm[d];
        }
        out.push(orbit);
    }
    out
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

impl Skeleton {
    /// Builds and validates a skeleton; `free` lists the free darts.
    pub fn new(twin: Vec<usize>, next: Vec<usize>, free: &[usize]) -> Result<Self> {
        let n = twin.len();
        let mut flags = vec![false; n];
        for &f in free {
            if f >= n {
                return Err(Error::InvalidSkeleton(format!("free dart {f} out of range")));
            }
            flags[f] = true;
        }
        let sk = Skeleton { twin, next, free: flags };
        sk.validate()?;
        Ok(sk)
    }

    /// Builds without validation; callers must validate before relying on
    /// the skeleton invariants.
    pub fn from_raw(twin: Vec<usize>, next: Vec<usize>, free: Vec<bool>) -> Self {
        Skeleton { twin, next, free }
    }

    /// Checks every skeleton invariant, naming the first one that fails.
    pub fn validate(&self) -> Result<()> {
        let n = self.twin.len();
        let bad = |m: &str| Err(Error::InvalidSkeleton(m.to_string()));
        if n < 2 || n % 2 != 0 {
            return bad("dart count must be even and at least 2");
        }
        if self.next.len() != n || self.free.len() != n {
            return bad("twin, next and free tables differ in length");
        }
        if !is_permutation(&self.twin) || (0..n).any(|d| self.twin[d] == d || self.twin[self.twin[d]] != d) {
            return bad("involution: twin must be a fixed-point-free involution");
        }
        if !is_permutation(&self.next) {
            return bad("next must be a permutation");
        }
        for orbit in orbits(&self.next) {
            let frees = orbit.iter().filter(|&&d| self.free[d]).count();
            if frees > 0 && orbit.len() != 1 {
                return bad("valency: a free dart must form a vertex by itself");
            }
            if frees == 0 && orbit.len() > 3 {
                return bad("valency: BLACK vertices have valency at most 3");
            }
        }
        if (0..n).all(|d| self.free[d]) {
            return bad("valency: at least one BLACK vertex is required");
        }
        if !self.is_connected() {
            return bad("connectivity: the map is not connected");
        }
        let (v, e, f) = (self.vertex_count(), self.edge_count(), self.face_count());
        if v as i64 - e as i64 + f as i64 != 2 {
            return bad(&format!("Euler: V - E + F = {v} - {e} + {f} != 2"));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    fn is_connected(&self) -> bool {
        let n = self.twin.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for e in [self.twin[d], self.next[d]] {
                if !seen[e] {
                    seen[e] = true;
                    count += 1;
                    stack.push(e);
                }
            }
        }
        count == n
    }

    pub fn dart_count(&self) -> usize {
        self.twin.len()
    }

    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2
    }

    pub fn twin(&self, d: usize) -> usize {
        self.twin[d]
    }

    pub fn next(&self, d: usize) -> usize {
        self.next[d]
    }

    /// The inverse of `next` at `d` (clockwise neighbour).
    pub fn prev(&self, d: usize) -> usize {
        let mut e = d;
        while self.next[e] != d {
            e = self.next[e];
        }
        e
    }

    pub fn is_free(&self, d: usize) -> bool {
        self.free[d]
    }

    pub fn twin_table(&self) -> &[usize] {
        &self.twin
    }

    pub fn next_table(&self) -> &[usize] {
        &self.next
    }

    pub fn free_darts(&self) -> Vec<usize> {
        (0..self.free.len()).filter(|&d| self.free[d]).collect()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        orbits(&self.next)
            .into_iter()
            .map(|darts| {
                let kind = if self.free[darts[0]] { VertexKind::Free } else { VertexKind::Black };
                Vertex { kind, darts }
            })
            .collect()
    }

    /// For each dart, the index of its vertex in [`Skeleton::vertices`].
    pub fn vertex_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.twin.len()];
        for (i, orbit) in orbits(&self.next).into_iter().enumerate() {
            for d in orbit {
                out[d] = i;
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        orbits(&self.next).len()
    }

    /// Valency of the vertex containing `d`.
    pub fn valency_at(&self, d: usize) -> usize {
        let mut v = 1;
        let mut e = self.next[d];
        while e != d {
            v += 1;
            e = self.next[e];
        }
        v
    }

    /// Number of BLACK vertices of valency `v`.
    pub fn black_count(&self, v: usize) -> usize {
        self.vertices().iter().filter(|x| x.kind == VertexKind::Black && x.valency() == v).count()
    }

    pub fn hanging_edge_count(&self) -> usize {
        self.free.iter().filter(|&&f| f).count()
    }

    /// Face orbits of `next ∘ twin`. The corner of a face at dart `e` lies
    /// between `prev(e)` and `e`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let phi: Vec<usize> = (0..self.twin.len()).map(|d| self.next[self.twin[d]]).collect();
        orbits(&phi)
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// Face ramification index: face degree minus the free darts on it.
    pub fn face_index(&self, face: &[usize]) -> usize {
        face.len() - face.iter().filter(|&&d| self.free[d]).count()
    }

    /// Hirzebruch index k = (B₃ + 2B₂ + B₁ + H)/2 from the vertex census.
    pub fn hirzebruch_index_closed_form(&self) -> Option<usize> {
        let total = self.black_count(3) + 2 * self.black_count(2) + self.black_count(1) + self.hanging_edge_count();
        (total % 2 == 0).then_some(total / 2)
    }

    /// Same darts and twin, `next` inverted.
    pub fn mirror(&self) -> Skeleton {
        let mut inv = vec![0; self.next.len()];
        for (d, &e) in self.next.iter().enumerate() {
            inv[e] = d;
        }
        Skeleton { twin: self.twin.clone(), next: inv, free: self.free.clone() }
    }

    /// Relabels darts: dart `d` becomes `perm[d]`.
    pub fn relabel(&self, perm: &[usize]) -> Skeleton {
        let n = self.twin.len();
        let mut twin = vec![0; n];
        let mut next = vec![0; n];
        let mut free = vec![false; n];
        for d in 0..n {
            twin[perm[d]] = perm[self.twin[d]];
            next[perm[d]] = perm[self.next[d]];
            free[perm[d]] = self.free[d];
        }
        Skeleton { twin, next, free }
    }

    /// BFS labeling from `start`: darts are numbered in discovery order,
    /// exploring `twin` before `next`.
    fn bfs_order(&self, start: usize) -> Vec<usize> {
        let n = self.twin.len();
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[start] = 0;
        order.push(start);
        let mut queue = VecDeque::from([start]);
        while let Some(d) = queue.pop_front() {
            for e in [self.twin[d], self.next[d]] {
                if label[e] == usize::MAX {
                    label[e] = order.len();
                    order.push(e);
                    queue.push_back(e);
                }
            }
        }
        label
    }

    fn code_from(&self, start: usize) -> Vec<u32> {
        let label = self.bfs_order(start);
        let n = self.twin.len();
        let mut inv = vec![0; n];
        for d in 0..n {
            inv[label[d]] = d;
        }
        let mut code = Vec::with_capacity(3 * n);
        for &d in &inv {
            code.push(label[self.twin[d]] as u32);
            code.push(label[self.next[d]] as u32);
            code.push(self.free[d] as u32);
        }
        code
    }

    fn minimal_codes(&self) -> (Vec<u32>, Vec<usize>) {
        let mut best: Option<Vec<u32>> = None;
        let mut starts = Vec::new();
        for s in 0..self.twin.len() {
            let c = self.code_from(s);
            match &best {
                Some(b) if c > *b => {}
                Some(b) if c == *b => starts.push(s),
                _ => {
                    best = Some(c);
                    starts = vec![s];
                }
            }
        }
        (best.unwrap_or_default(), starts)
    }

    /// Relabeling-invariant encoding: the lexicographically minimal BFS
    /// record over all starting darts. Equal for two skeletons iff they are
    /// isomorphic by an orientation-preserving map.
    pub fn canonical_form(&self) -> Vec<u8> {
        let (code, _) = self.minimal_codes();
        let mut bytes = Vec::with_capacity(4 + 4 * code.len());
        bytes.extend_from_slice(&(self.twin.len() as u32).to_be_bytes());
        for x in code {
            bytes.extend_from_slice(&x.to_be_bytes());
        }
        bytes
    }

    /// The skeleton relabeled by its canonical BFS numbering.
    pub fn canonical(&self) -> Skeleton {
        let (_, starts) = self.minimal_codes();
        self.relabel(&self.bfs_order(starts[0]))
    }

    /// Number of orientation-preserving automorphisms.
    pub fn automorphism_count(&self) -> usize {
        self.minimal_codes().1.len()
    }

    pub fn is_isomorphic(&self, other: &Skeleton) -> bool {
        self.twin.len() == other.twin.len() && self.canonical_form() == other.canonical_form()
    }

    pub fn is_mirror_symmetric(&self) -> bool {
        self.canonical_form() == self.mirror().canonical_form()
    }

    pub fn to_json(&self) -> String {
        let j = SkeletonJson {
            darts: self.twin.len(),
            twin: self.twin.clone(),
            next: self.next.clone(),
            free: self.free_darts(),
        };
        serde_json::to_string(&j).expect("skeleton serializes")
    }

    /// Parses the JSON interchange format, enforcing all invariants.
    pub fn from_json(s: &str) -> Result<Skeleton> {
        let j: SkeletonJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if j.twin.len() != j.darts || j.next.len() != j.darts {
            return Err(Error::InvalidSkeleton(format!(
                "declared {} darts but twin has {} and next has {} entries",
                j.darts,
                j.twin.len(),
                j.next.len()
            )));
        }
        Skeleton::new(j.twin, j.next, &j.free)
    }

    /// Graphviz rendering: BLACK vertices as filled circles, FREE ends as
    /// open squares.
    pub fn to_dot(&self) -> String {
        let vertex_of = self.vertex_of();
        let mut out = String::from("graph skeleton {\n  node [label=\"\"];\n");
        for (i, v) in self.vertices().iter().enumerate() {
            let style = match v.kind {
                VertexKind::Black => "shape=circle, style=filled, fillcolor=black, width=0.15",
                VertexKind::Free => "shape=square, width=0.15",
            };
            let _ = writeln!(out, "  v{i} [{style}];");
        }
        for d in 0..self.twin.len() {
            if d < self.twin[d] {
                let _ = writeln!(out, "  v{} -- v{} [penwidth=3];", vertex_of[d], vertex_of[self.twin[d]]);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Indices 1, 2, 3 on the darts at trivalent BLACK vertices, increasing by
/// one (mod 3) counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marking {
    index: Vec<Option<u8>>,
}

impl Marking {
    /// Assigns index `idx` to dart `d` and propagates around its vertex;
    /// every trivalent vertex must be seeded this way.
    pub fn from_seeds(sk: &Skeleton, seeds: &[(usize, u8)]) -> Result<Marking> {
        let mut index = vec![None; sk.dart_count()];
        for &(d, idx) in seeds {
            if sk.is_free(d) || sk.valency_at(d) != 3 {
                return Err(Error::Domain(format!("dart {d} is not at a trivalent BLACK vertex")));
            }
            let mut e = d;
            let mut i = idx;
            for _ in 0..3 {
                index[e] = Some(i);
                e = sk.next(e);
                i = i % 3 + 1;
            }
        }
        let m = Marking { index };
        m.check(sk)?;
        Ok(m)
    }

    pub fn index(&self, d: usize) -> Option<u8> {
        self.index[d]
    }

    /// Verifies the marking invariant at every trivalent BLACK vertex.
    pub fn check(&self, sk: &Skeleton) -> Result<()> {
        for v in sk.vertices() {
            if v.kind != VertexKind::Black || v.valency() != 3 {
                if v.darts.iter().any(|&d| self.index[d].is_some()) {
                    return Err(Error::Domain("marking on a non-trivalent vertex".into()));
                }
                continue;
            }
            for &d in &v.darts {
                match (self.index[d], self.index[sk.next(d)]) {
                    (Some(a), Some(b)) if b == a % 3 + 1 => {}
                    _ => return Err(Error::Domain(format!("marking broken at dart {d}"))),
                }
            }
        }
        Ok(())
    }
}

fn insert_after(next: &mut Vec<usize>, after: usize, new: usize) {
    let old = next[after];
    next[after] = new;
    next[new] = old;
}

/// All skeletons with exactly one edge.
fn single_edge_skeletons() -> Vec<Skeleton> {
    vec![
        Skeleton::from_raw(vec![1, 0], vec![1, 0], vec![false, false]),
        Skeleton::from_raw(vec![1, 0], vec![0, 1], vec![false, false]),
        Skeleton::from_raw(vec![1, 0], vec![0, 1], vec![false, true]),
    ]
}

/// Every skeleton with one more edge than `sk`: a pendant edge at a BLACK
/// corner (new end BLACK or FREE), or a new edge joining two BLACK corners.
fn extensions(sk: &Skeleton) -> Vec<Skeleton> {
    let n = sk.dart_count();
    let (x, y) = (n, n + 1);
    let open: Vec<usize> = (0..n).filter(|&d| !sk.is_free(d) && sk.valency_at(d) < 3).collect();
    let mut twin = sk.twin.clone();
    twin.extend([y, x]);
    let mut out = Vec::new();
    for &c in &open {
        for free_end in [false, true] {
            let mut next = sk.next.clone();
            next.extend([0, y]);
            insert_after(&mut next, c, x);
            let mut free = sk.free.clone();
            free.extend([false, free_end]);
            out.push(Skeleton::from_raw(twin.clone(), next, free));
        }
    }
    for (a, &c1) in open.iter().enumerate() {
        for &c2 in &open[a..] {
            let same_vertex = {
                let mut e = sk.next[c1];
                let mut hit = e == c2 || c1 == c2;
                while e != c1 {
                    hit |= e == c2;
                    e = sk.next[e];
                }
                hit
            };
            if same_vertex && sk.valency_at(c1) > 1 {
                continue;
            }
            let mut next = sk.next.clone();
            next.extend([0, 0]);
            insert_after(&mut next, c1, x);
            insert_after(&mut next, if c1 == c2 { x } else { c2 }, y);
            let mut free = sk.free.clone();
            free.extend([false, false]);
            out.push(Skeleton::from_raw(twin.clone(), next, free));
        }
    }
    out
}

/// All skeletons with at most `max_edges` edges, one canonical
/// representative per isomorphism class, ordered by edge count and then by
/// canonical form.
pub fn enumerate_skeletons(max_edges: usize) -> Result<Vec<Skeleton>> {
    if max_edges > MAX_ENUMERATION_EDGES {
        return Err(Error::Resource(format!(
            "enumeration is limited to {MAX_ENUMERATION_EDGES} edges, requested {max_edges}"
        )));
    }
    let mut all = Vec::new();
    let mut level: Vec<Skeleton> = Vec::new();
    for e in 1..=max_edges {
        let candidates = if e == 1 { single_edge_skeletons() } else { level.iter().flat_map(extensions).collect() };
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut next_level = Vec::new();
        for c in candidates {
            if !c.is_valid() {
                continue;
            }
            if seen.insert(c.canonical_form()) {
                next_level.push(c.canonical());
            }
        }
        next_level.sort_by_cached_key(|s| s.canonical_form());
        all.extend(next_level.iter().cloned());
        level = next_level;
    }
    Ok(all)
}

/// Number of distinct canonical forms in `list` (a duplicate check).
pub fn distinct_count(list: &[Skeleton]) -> usize {
    list.iter().map(|s| s.canonical_form()).collect::<HashSet<_>>().len()
}

/// One vertex carrying a loop.
pub fn loop_skeleton() -> Skeleton {
    Skeleton::from_raw(vec![1, 0], vec![1, 0], vec![false, false])
}

/// A single hanging edge at a monovalent BLACK vertex.
pub fn hanging_edge_skeleton() -> Skeleton {
    Skeleton::from_raw(vec![1, 0], vec![0, 1], vec![false, true])
}

/// Two trivalent vertices joined by three edges.
pub fn theta_skeleton() -> Skeleton {
    // Vertex u has darts 0, 1, 2; vertex v has darts 3, 4, 5.
    Skeleton::from_raw(vec![3, 5, 4, 0, 2, 1], vec![1, 2, 0, 4, 5, 3], vec![false; 6])
}

/// A cycle through `n ≥ 1` bivalent vertices.
pub fn cycle_skeleton(n: usize) -> Skeleton {
    assert!(n >= 1);
    if n == 1 {
        return loop_skeleton();
    }
    // Vertex i has darts 2i (towards i+1) and 2i+1 (towards i-1).
    let mut twin = vec![0; 2 * n];
    let mut next = vec![0; 2 * n];
    for i in 0..n {
        twin[2 * i] = 2 * ((i + 1) % n) + 1;
        twin[2 * ((i + 1) % n) + 1] = 2 * i;
        next[2 * i] = 2 * i + 1;
        next[2 * i + 1] = 2 * i;
    }
    Skeleton::from_raw(twin, next, vec![false; 2 * n])
}
