//! Braid monodromy of maximal trigonal curves, computed from marked
//! skeletons.
//!
//! Monodromy along a path between trivalent vertices is defined only up to
//! the central element τ³; loops based at a vertex are exact. Paths compose
//! right to left: if γ runs from z to z' and γ' from z' to z'', then the
//! monodromy of γγ' is `m(γ')·m(γ)`.

use serde::Serialize;

use crate::braid::{equal_mod_tau3, norm_index, recognize_central_power, symmetric_image, BraidWord, Permutation};
use crate::dessin::{complete_to_dessin, hirzebruch_index};
use crate::error::{Error, Result};
use crate::skeleton::{Marking, Skeleton, VertexKind};
use crate::trees::{tree_layout, RootedBinaryTree};

fn s(i: i64) -> BraidWord {
    BraidWord::sigma(norm_index(i))
}

fn sp(i: i64, e: i64) -> BraidWord {
    BraidWord::sigma_pow(norm_index(i), e)
}

/// m^{(s)}_{i,j}: monodromy along a chain of 2s bold edges through s
/// bivalent vertices, leaving along index `i` and arriving along index `j`.
pub fn edge_monodromy(i: i64, j: i64, s_count: u32) -> BraidWord {
    let s_ = s_count as i64;
    let (i, j) = (norm_index(i), norm_index(j));
    match (j - i).rem_euclid(3) {
        1 => sp(i + 1, -s_) * s(i),
        2 => sp(j, -s_ - 1),
        _ => sp(i, -s_ - 2) * sp(i + 1, -1),
    }
}

/// c_i^{(d)} = σ_{i+1}^d: a loop around a × of valency 2d, reached along
/// the solid edge opposite to eᵢ.
pub fn face_loop(i: i64, d: u32) -> BraidWord {
    sp(i + 1, d as i64)
}

/// l_i^{(d)}: a loop around a chain of bold edges starting along eᵢ. Valid
/// degrees are 4s, 4s+2 (chain ends at a monovalent ●) and 4s+3 (chain ends
/// at the free end of a hanging edge).
pub fn chain_loop(i: i64, d: i64) -> Result<BraidWord> {
    if d < 0 {
        return Err(Error::Domain(format!("chain loop degree {d} is negative")));
    }
    let (q, r) = (d / 4, d % 4);
    match r {
        0 => Ok(sp(i, -q) * sp(i - 1, -q) * BraidWord::tau_pow(3 * q)),
        2 | 3 => Ok(sp(i, -2 * q - 5 + r) * sp(i + 1, -1) * BraidWord::tau_pow(3 * q + 3)),
        _ => Err(Error::Domain(format!("chain loop degree {d} is not of the form 4s, 4s+2 or 4s+3"))),
    }
}

/// Where a chain of bold edges leaving a trivalent vertex ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainEnd {
    /// Arrives at a trivalent vertex through this dart.
    Trivalent(usize),
    /// Ends at a monovalent BLACK vertex.
    Monovalent,
    /// Ends at the free end of a hanging edge.
    Free,
}

/// A maximal chain starting at dart `start`, passing `bivalent` bivalent
/// BLACK vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chain {
    pub start: usize,
    pub bivalent: u32,
    pub end: ChainEnd,
}

/// Follows the chain leaving along `d`.
pub fn follow_chain(sk: &Skeleton, d: usize) -> Chain {
    let mut cur = d;
    let mut bivalent = 0;
    loop {
        let t = sk.twin(cur);
        if sk.is_free(t) {
            return Chain { start: d, bivalent, end: ChainEnd::Free };
        }
        match sk.valency_at(t) {
            1 => return Chain { start: d, bivalent, end: ChainEnd::Monovalent },
            2 => {
                bivalent += 1;
                cur = sk.next(t);
            }
            _ => return Chain { start: d, bivalent, end: ChainEnd::Trivalent(t) },
        }
    }
}

fn index_of(mk: &Marking, d: usize) -> Result<i64> {
    mk.index(d).map(|x| x as i64).ok_or_else(|| Error::Domain(format!("dart {d} is not at a marked vertex")))
}

/// Monodromy (mod τ³) along a walk between trivalent vertices, given by the
/// sequence of darts along which it leaves each trivalent vertex. Bivalent
/// vertices on the way are circumvented counterclockwise.
pub fn walk_monodromy(sk: &Skeleton, mk: &Marking, walk: &[usize]) -> Result<BraidWord> {
    let mut out = BraidWord::identity();
    let mut at: Option<usize> = None;
    for &d in walk {
        if let Some(prev_arrival) = at {
            if !same_vertex(sk, prev_arrival, d) {
                return Err(Error::Domain(format!("walk breaks before dart {d}")));
            }
        }
        let i = index_of(mk, d)?;
        let chain = follow_chain(sk, d);
        let ChainEnd::Trivalent(t) = chain.end else {
            return Err(Error::Domain(format!("dart {d} leads to a dangling end")));
        };
        let j = index_of(mk, t)?;
        out = &edge_monodromy(i, j, chain.bivalent) * &out;
        at = Some(t);
    }
    Ok(out)
}

/// The darts of the reversed walk.
pub fn reverse_walk(sk: &Skeleton, walk: &[usize]) -> Result<Vec<usize>> {
    walk.iter()
        .rev()
        .map(|&d| match follow_chain(sk, d).end {
            ChainEnd::Trivalent(t) => Ok(t),
            _ => Err(Error::Domain(format!("dart {d} leads to a dangling end"))),
        })
        .collect()
}

fn same_vertex(sk: &Skeleton, a: usize, b: usize) -> bool {
    let mut e = a;
    loop {
        if e == b {
            return true;
        }
        e = sk.next(e);
        if e == a {
            return false;
        }
    }
}

/// Loop around the face containing dart `e`, based at the origin of `e`
/// (which must be trivalent), for a face of ramification index `d`.
pub fn face_loop_at(mk: &Marking, e: usize, d: u32) -> Result<BraidWord> {
    Ok(face_loop(index_of(mk, e)? + 1, d))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorLabel {
    /// Loop around the Ã₀* fiber inside the leaf with this word.
    Gamma { word: String },
    /// Loop around the × of the large region.
    DeltaCross,
    /// Loop around the monovalent ● of the root marker.
    DeltaBlack,
    /// Loop around the × of a region, by face index.
    Face { face: usize },
    /// Loop around the first `depth` bivalent vertices of a chain, or the
    /// whole dead-end chain, starting at dart `start`.
    Chain { start: usize, degree: i64 },
}

impl std::fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeneratorLabel::Gamma { word } => write!(f, "gamma {word}"),
            GeneratorLabel::DeltaCross => f.write_str("delta_cross"),
            GeneratorLabel::DeltaBlack => f.write_str("delta_black"),
            GeneratorLabel::Face { face } => write!(f, "face {face}"),
            GeneratorLabel::Chain { start, degree } => write!(f, "chain {start} deg {degree}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: GeneratorLabel,
    pub braid: BraidWord,
}

/// Images of a basis of π₁ of the punctured base under the braid monodromy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyPresentation {
    pub k: usize,
    pub generators: Vec<Generator>,
    /// Encoding words of the Ã₀* fibers (tree family only).
    pub encoding_words: Vec<String>,
}

#[derive(Serialize)]
struct GeneratorJson {
    label: String,
    braid: String,
}

#[derive(Serialize)]
struct PresentationJson {
    k: usize,
    generators: Vec<GeneratorJson>,
}

impl MonodromyPresentation {
    pub fn to_json(&self) -> String {
        let j = PresentationJson {
            k: self.k,
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorJson { label: g.label.to_string(), braid: g.braid.to_string() })
                .collect(),
        };
        serde_json::to_string(&j).expect("presentation serializes")
    }

    /// Monodromy of the concatenated loop g₁g₂⋯gₙ, i.e. the braid
    /// product in reverse basis order.
    pub fn product(&self) -> BraidWord {
        self.generators.iter().rev().fold(BraidWord::identity(), |acc, g| &acc * &g.braid)
    }
}

/// The closed-form braid w̄ for an encoding word: r ↦ σ₂, l ↦ σ₁⁻¹.
pub fn encoding_braid(word: &str) -> BraidWord {
    word.chars().fold(BraidWord::identity(), |acc, c| match c {
        'r' => acc * s(2),
        _ => acc * sp(1, -1),
    })
}

/// The marking of a tree-family skeleton: index 2 on every dart pointing
/// toward the root (the stem, for a leaf).
pub fn tree_marking(t: &RootedBinaryTree) -> Result<(crate::trees::TreeLayout, Marking)> {
    let lay = tree_layout(t)?;
    let mut seeds: Vec<(usize, u8)> = lay.nodes.iter().map(|n| (n.parent, 2)).collect();
    seeds.extend(lay.leaves.iter().map(|l| (l.stem, 2)));
    let mk = Marking::from_seeds(&lay.skeleton, &seeds)?;
    Ok((lay, mk))
}

/// The closed-form presentation for the tree family, cross-checked against
/// the walk-derived monodromy of every generator.
pub fn tree_presentation(t: &RootedBinaryTree) -> Result<MonodromyPresentation> {
    let (lay, mk) = tree_marking(t)?;
    let sk = &lay.skeleton;
    let k = lay.k as i64;
    let mut generators = Vec::new();
    for leaf in &lay.leaves {
        let wb = encoding_braid(&leaf.word);
        let closed = &(&wb * &s(3)) * &wb.inverse();
        let path = leaf_path(&lay, &leaf.word);
        let p = walk_monodromy(sk, &mk, &path)?;
        let walked = &(&p.inverse() * &face_loop_at(&mk, leaf.loop_in, 1)?) * &p;
        if !equal_mod_tau3(&closed, &walked) {
            return Err(Error::Invariant(format!(
                "leaf {}: closed form {closed} disagrees with walk {walked}",
                leaf.word
            )));
        }
        generators.push(Generator { label: GeneratorLabel::Gamma { word: leaf.word.clone() }, braid: closed });
    }
    let root = &lay.nodes[0];
    let big = sk.faces().into_iter().find(|f| f.contains(&root.parent)).expect("root dart lies on a face");
    let walked_cross = face_loop_at(&mk, root.parent, sk.face_index(&big) as u32)?;
    let closed_cross = sp(1, 5 * k - 2);
    let walked_black = chain_loop(index_of(&mk, root.parent)?, 2)?;
    let closed_black = s(1) * s(2);
    if !equal_mod_tau3(&closed_cross, &walked_cross) || !equal_mod_tau3(&closed_black, &walked_black) {
        return Err(Error::Invariant("root generators disagree with the closed form".into()));
    }
    generators.push(Generator { label: GeneratorLabel::DeltaCross, braid: closed_cross });
    generators.push(Generator { label: GeneratorLabel::DeltaBlack, braid: closed_black });
    Ok(MonodromyPresentation { k: lay.k, generators, encoding_words: lay.leaves.iter().map(|l| l.word.clone()).collect() })
}

/// Exit darts of the root-to-leaf walk for the leaf with this word.
fn leaf_path(lay: &crate::trees::TreeLayout, word: &str) -> Vec<usize> {
    let mut path = Vec::new();
    let mut node = 0usize;
    let chars: Vec<char> = word.chars().collect();
    for (pos, &c) in chars.iter().enumerate() {
        let n = &lay.nodes[node];
        let d = if c == 'r' { n.right } else { n.left };
        path.push(d);
        if pos + 1 < chars.len() {
            let target = lay.skeleton.twin(d);
            node = lay.nodes.iter().position(|m| m.parent == target).expect("inner walk reaches a node");
        }
    }
    path
}

/// Product of the generators in basis order is τ^{3k}.
pub fn infinity_check(p: &MonodromyPresentation) -> bool {
    recognize_central_power(&p.product()) == Some(p.k as i64)
}

/// Orbits of the subgroup of S₃ generated by the permutation images.
pub fn component_count(p: &MonodromyPresentation) -> usize {
    let perms: Vec<Permutation> = p.generators.iter().map(|g| symmetric_image(&g.braid)).collect();
    orbit_count(&perms)
}

pub fn orbit_count(perms: &[Permutation]) -> usize {
    let mut parent = [0usize, 1, 2];
    fn find(p: &mut [usize; 3], x: usize) -> usize {
        if p[x] == x {
            x
        } else {
            let r = find(p, p[x]);
            p[x] = r;
            r
        }
    }
    for q in perms {
        for i in 0..3 {
            let (a, b) = (find(&mut parent, i), find(&mut parent, q.map[i] as usize));
            parent[a] = b;
        }
    }
    (0..3).filter(|&i| find(&mut parent, i) == i).count()
}

/// Marks every trivalent vertex by giving index 1 to its smallest dart.
pub fn default_marking(sk: &Skeleton) -> Result<Marking> {
    let seeds: Vec<(usize, u8)> = sk
        .vertices()
        .iter()
        .filter(|v| v.kind == VertexKind::Black && v.valency() == 3)
        .map(|v| (v.darts[0], 1))
        .collect();
    Marking::from_seeds(sk, &seeds)
}

fn first_trivalent_dart(sk: &Skeleton) -> Option<usize> {
    (0..sk.dart_count()).find(|&d| !sk.is_free(d) && sk.valency_at(d) == 3)
}

/// A basis presentation for an arbitrary skeleton with a trivalent vertex:
/// one loop per region, and nested loops around the chains of singular
/// vertices, all conjugated to a base vertex along a spanning tree.
pub fn skeleton_presentation(sk: &Skeleton, mk: &Marking) -> Result<MonodromyPresentation> {
    let base = first_trivalent_dart(sk).ok_or_else(|| {
        Error::Domain("no trivalent vertex: monodromy formulas inapplicable (the curve is irreducible)".into())
    })?;
    mk.check(sk)?;
    let (_, counts) = complete_to_dessin(sk)?;
    let k = hirzebruch_index(&counts)?;
    let vertex_of = sk.vertex_of();
    // Path monodromy from the base vertex, and the tree chains (by start dart).
    let mut path: Vec<Option<BraidWord>> = vec![None; sk.vertex_count()];
    let mut tree_start = vec![false; sk.dart_count()];
    path[vertex_of[base]] = Some(BraidWord::identity());
    let mut queue = std::collections::VecDeque::from([base]);
    while let Some(z) = queue.pop_front() {
        let pz = path[vertex_of[z]].clone().expect("queued vertices have paths");
        for d in [z, sk.next(z), sk.next(sk.next(z))] {
            let chain = follow_chain(sk, d);
            if let ChainEnd::Trivalent(t) = chain.end {
                if path[vertex_of[t]].is_none() {
                    let m = edge_monodromy(index_of(mk, d)?, index_of(mk, t)?, chain.bivalent);
                    path[vertex_of[t]] = Some(&m * &pz);
                    tree_start[d] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    let conj = |z: usize, loop_braid: BraidWord| -> BraidWord {
        let p = path[vertex_of[z]].as_ref().expect("connected skeleton");
        &(&p.inverse() * &loop_braid) * p
    };
    let is_trivalent = |d: usize| !sk.is_free(d) && sk.valency_at(d) == 3;
    let mut generators = Vec::new();
    for (fid, face) in sk.faces().iter().enumerate() {
        let e = *face
            .iter()
            .find(|&&e| is_trivalent(e))
            .ok_or_else(|| Error::Invariant(format!("face {fid} has no trivalent corner")))?;
        let braid = conj(e, face_loop_at(mk, e, sk.face_index(face) as u32)?);
        generators.push(Generator { label: GeneratorLabel::Face { face: fid }, braid });
    }
    for d in 0..sk.dart_count() {
        if !is_trivalent(d) {
            continue;
        }
        let chain = follow_chain(sk, d);
        let i = index_of(mk, d)?;
        let s_ = chain.bivalent as i64;
        let (depths, tail) = match chain.end {
            ChainEnd::Trivalent(t) => {
                let from_here = if tree_start[d] || tree_start[t] { tree_start[d] } else { d < t };
                if !from_here || s_ == 0 {
                    continue;
                }
                (s_, None)
            }
            ChainEnd::Monovalent => (s_, Some(4 * s_ + 2)),
            ChainEnd::Free => (s_, Some(4 * s_ + 3)),
        };
        for degree in (1..=depths).map(|j| 4 * j).chain(tail) {
            let braid = conj(d, chain_loop(i, degree)?);
            generators.push(Generator { label: GeneratorLabel::Chain { start: d, degree }, braid });
        }
    }
    Ok(MonodromyPresentation { k, generators, encoding_words: Vec::new() })
}

/// A marking certifying reducibility: all BLACK vertices trivalent, index 1
/// on every hanging edge, and index pairs (1,1), (2,3) or (3,2) on every
/// other edge.
pub fn find_reducing_marking(sk: &Skeleton) -> Option<Marking> {
    if sk.vertices().iter().any(|v| v.kind == VertexKind::Black && v.valency() != 3) {
        return None;
    }
    let base = first_trivalent_dart(sk)?;
    let partner = |a: u8| match a {
        1 => 1,
        2 => 3,
        _ => 2,
    };
    'seed: for seed in 1..=3u8 {
        let mut idx: Vec<Option<u8>> = vec![None; sk.dart_count()];
        let mut stack = vec![(base, seed)];
        while let Some((d, a)) = stack.pop() {
            if let Some(b) = idx[d] {
                if b != a {
                    continue 'seed;
                }
                continue;
            }
            let mut e = d;
            let mut i = a;
            for _ in 0..3 {
                match idx[e] {
                    Some(b) if b != i => continue 'seed,
                    _ => idx[e] = Some(i),
                }
                let t = sk.twin(e);
                if sk.is_free(t) {
                    if i != 1 {
                        continue 'seed;
                    }
                } else {
                    stack.push((t, partner(i)));
                }
                e = sk.next(e);
                i = i % 3 + 1;
            }
        }
        let seeds: Vec<(usize, u8)> = (0..sk.dart_count()).filter_map(|d| idx[d].map(|i| (d, i))).collect();
        if let Ok(m) = Marking::from_seeds(sk, &seeds) {
            return Some(m);
        }
    }
    None
}

pub fn reducibility_by_marking(sk: &Skeleton) -> bool {
    find_reducing_marking(sk).is_some()
}

/// Which of the nine residue patterns (i, j) satisfy the reciprocity
/// identity m^{(t)}_{j+1,i}·m^{(s)}_{i+1,j}·σᵢ^{s+t+2} ≡ 1 mod τ³ for all
/// s, t ≤ `max_st`.
pub fn reciprocity_sweep(max_st: u32) -> Vec<((i64, i64), bool)> {
    let mut out = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            let ok = (0..=max_st).all(|s_| {
                (0..=max_st).all(|t| {
                    let lhs = &(&edge_monodromy(j + 1, i, t) * &edge_monodromy(i + 1, j, s_))
                        * &sp(i, (s_ + t + 2) as i64);
                    crate::braid::equal_in_quotient(&lhs, &BraidWord::identity())
                })
            });
            out.push(((i, j), ok));
        }
    }
    out
}
