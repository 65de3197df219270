//! Rooted binary trees and the tree-family skeletons built from them.
//!
//! A tree T with k−1 nodes yields a skeleton Sk(T): every node becomes a
//! trivalent vertex, every missing child becomes a *leaf* (a trivalent
//! vertex carrying a loop), and the root receives a monovalent marker. The
//! alternative family replaces the marker by one more leaf.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::skeleton::Skeleton;

/// Largest size accepted by [`enumerate_trees`].
pub const MAX_TREE_SIZE: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootedBinaryTree {
    Empty,
    Node(Box<RootedBinaryTree>, Box<RootedBinaryTree>),
}

use RootedBinaryTree::{Empty, Node};

impl RootedBinaryTree {
    pub fn leaf() -> Self {
        Node(Box::new(Empty), Box::new(Empty))
    }

    pub fn node(left: RootedBinaryTree, right: RootedBinaryTree) -> Self {
        Node(Box::new(left), Box::new(right))
    }

    pub fn size(&self) -> usize {
        match self {
            Empty => 0,
            Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn mirror(&self) -> Self {
        match self {
            Empty => Empty,
            Node(l, r) => Node(Box::new(r.mirror()), Box::new(l.mirror())),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.mirror()
    }
}

impl fmt::Display for RootedBinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Empty => f.write_str("-"),
            Node(l, r) => write!(f, "({l},{r})"),
        }
    }
}

impl FromStr for RootedBinaryTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse_tree(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!("trailing input after tree at position {pos}")));
        }
        Ok(t)
    }
}

fn parse_tree(c: &[char], pos: &mut usize) -> Result<RootedBinaryTree> {
    let expect = |pos: &mut usize, ch: char| -> Result<()> {
        if c.get(*pos) == Some(&ch) {
            *pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{ch}` at position {pos}")))
        }
    };
    match c.get(*pos) {
        Some('-') => {
            *pos += 1;
            Ok(Empty)
        }
        Some('(') => {
            *pos += 1;
            let l = parse_tree(c, pos)?;
            expect(pos, ',')?;
            let r = parse_tree(c, pos)?;
            expect(pos, ')')?;
            Ok(RootedBinaryTree::node(l, r))
        }
        _ => Err(Error::Parse(format!("expected `(` or `-` at position {pos}"))),
    }
}

/// C(s) = binom(2s, s)/(s+1).
pub fn catalan(s: u64) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..s {
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}

/// All binary trees with `s` nodes.
pub fn enumerate_trees(s: usize) -> Result<Vec<RootedBinaryTree>> {
    if s > MAX_TREE_SIZE {
        return Err(Error::Resource(format!("tree enumeration is limited to {MAX_TREE_SIZE} nodes, requested {s}")));
    }
    let mut by_size: Vec<Vec<RootedBinaryTree>> = vec![vec![Empty]];
    for n in 1..=s {
        let mut level = Vec::new();
        for ls in 0..n {
            for l in &by_size[ls] {
                for r in &by_size[n - 1 - ls] {
                    level.push(RootedBinaryTree::node(l.clone(), r.clone()));
                }
            }
        }
        by_size.push(level);
    }
    Ok(by_size.swap_remove(s))
}

/// A leaf of a tree skeleton: a trivalent vertex whose two extra darts form
/// a loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    /// Root-to-leaf branch choices over `{r, l}`.
    pub word: String,
    pub stem: usize,
    pub loop_out: usize,
    pub loop_in: usize,
}

/// A tree node as a trivalent vertex: darts toward the parent, the right
/// branch and the left branch, in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeDarts {
    pub parent: usize,
    pub right: usize,
    pub left: usize,
}

/// A tree-family skeleton together with the roles of its darts.
#[derive(Clone, Debug)]
pub struct TreeLayout {
    pub skeleton: Skeleton,
    pub k: usize,
    /// Tree nodes in preorder; `nodes[0]` is the root.
    pub nodes: Vec<NodeDarts>,
    /// Leaves ordered lexicographically by word with `r < l`.
    pub leaves: Vec<Leaf>,
    /// The monovalent root marker (absent in the alternative family).
    pub marker: Option<usize>,
    /// The extra leaf of the alternative family.
    pub extra_leaf: Option<Leaf>,
}

struct Builder {
    twin: Vec<usize>,
    next: Vec<usize>,
    nodes: Vec<NodeDarts>,
    leaves: Vec<Leaf>,
}

impl Builder {
    fn vertex(&mut self, degree: usize) -> Vec<usize> {
        let base = self.twin.len();
        let darts: Vec<usize> = (base..base + degree).collect();
        for i in 0..degree {
            self.twin.push(usize::MAX);
            self.next.push(darts[(i + 1) % degree]);
        }
        darts
    }

    fn join(&mut self, a: usize, b: usize) {
        self.twin[a] = b;
        self.twin[b] = a;
    }

    fn leaf(&mut self, word: String) -> Leaf {
        let d = self.vertex(3);
        self.join(d[1], d[2]);
        Leaf { word, stem: d[0], loop_out: d[1], loop_in: d[2] }
    }

    /// Builds the subtree `t` below dart `up`.
    fn subtree(&mut self, t: &RootedBinaryTree, up: usize, word: String) {
        match t {
            Empty => {
                let leaf = self.leaf(word);
                self.join(up, leaf.stem);
                self.leaves.push(leaf);
            }
            Node(l, r) => {
                let d = self.vertex(3);
                self.join(up, d[0]);
                self.nodes.push(NodeDarts { parent: d[0], right: d[1], left: d[2] });
                self.subtree(r, d[1], format!("{word}r"));
                self.subtree(l, d[2], format!("{word}l"));
            }
        }
    }
}

fn layout(t: &RootedBinaryTree, alt: bool) -> Result<TreeLayout> {
    let n = t.size();
    if n == 0 {
        return Err(Error::Domain("tree skeletons need k >= 2, i.e. a nonempty tree".into()));
    }
    let mut b = Builder { twin: Vec::new(), next: Vec::new(), nodes: Vec::new(), leaves: Vec::new() };
    let (marker, extra_leaf, up) = if alt {
        let leaf = b.leaf(String::new());
        let stem = leaf.stem;
        (None, Some(leaf), stem)
    } else {
        let m = b.vertex(1)[0];
        (Some(m), None, m)
    };
    b.subtree(t, up, String::new());
    let free = vec![false; b.twin.len()];
    let skeleton = Skeleton::from_raw(b.twin, b.next, free);
    skeleton.validate().map_err(|e| Error::Invariant(format!("tree skeleton: {e}")))?;
    // Preorder with the right branch first is exactly lexicographic order with r < l.
    Ok(TreeLayout { skeleton, k: n + 1, nodes: b.nodes, leaves: b.leaves, marker, extra_leaf })
}

/// The layout of Sk(T) for T with k−1 nodes.
pub fn tree_layout(t: &RootedBinaryTree) -> Result<TreeLayout> {
    layout(t, false)
}

/// The layout of the alternative skeleton (marker replaced by a leaf).
pub fn alt_tree_layout(t: &RootedBinaryTree) -> Result<TreeLayout> {
    layout(t, true)
}

/// Sk(T): one monovalent BLACK root marker, 2k−1 trivalent vertices, k
/// leaf loops.
pub fn tree_to_skeleton(t: &RootedBinaryTree) -> Result<Skeleton> {
    Ok(tree_layout(t)?.skeleton)
}

/// The alternative skeleton and the index (in `faces()`) of the extra
/// leaf's monogon.
pub fn tree_to_skeleton_alt(t: &RootedBinaryTree) -> Result<(Skeleton, usize)> {
    let lay = alt_tree_layout(t)?;
    let inner = lay.extra_leaf.as_ref().expect("alternative layout has an extra leaf").loop_in;
    let face = lay
        .skeleton
        .faces()
        .iter()
        .position(|f| f.contains(&inner))
        .ok_or_else(|| Error::Invariant("extra leaf monogon not found".into()))?;
    Ok((lay.skeleton, face))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig_tree() -> RootedBinaryTree {
        "(((-,-),-),(-,-))".parse().unwrap()
    }

    #[test]
    fn catalan_values() {
        let v: Vec<u64> = (0..9).map(|s| catalan(s).try_into().unwrap()).collect();
        assert_eq!(v, vec![1, 1, 2, 5, 14, 42, 132, 429, 1430]);
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_trees(0).unwrap(), vec![Empty]);
        assert_eq!(enumerate_trees(2).unwrap().len(), 2);
        assert_eq!(enumerate_trees(3).unwrap().len(), 5);
        assert!(enumerate_trees(15).is_err());
    }

    #[test]
    fn symmetry() {
        assert!(RootedBinaryTree::leaf().is_symmetric());
        assert!(!RootedBinaryTree::node(RootedBinaryTree::leaf(), Empty).is_symmetric());
        let sym = enumerate_trees(3).unwrap().into_iter().filter(|t| t.is_symmetric()).count();
        assert_eq!(sym, 1);
    }

    #[test]
    fn parse_print() {
        let t = fig_tree();
        assert_eq!(t.size(), 4);
        assert_eq!(t.to_string(), "(((-,-),-),(-,-))");
        assert!("(-,".parse::<RootedBinaryTree>().is_err());
        assert!("(-,-)x".parse::<RootedBinaryTree>().is_err());
    }

    #[test]
    fn fig_tree_words() {
        let lay = tree_layout(&fig_tree()).unwrap();
        let words: Vec<&str> = lay.leaves.iter().map(|l| l.word.as_str()).collect();
        assert_eq!(words, vec!["rr", "rl", "lr", "llr", "lll"]);
    }

    #[test]
    fn k2_skeleton_shape() {
        let sk = tree_to_skeleton(&RootedBinaryTree::leaf()).unwrap();
        assert_eq!((sk.vertex_count(), sk.edge_count(), sk.face_count()), (4, 5, 3));
        let mut deg: Vec<usize> = sk.faces().iter().map(|f| f.len()).collect();
        deg.sort();
        assert_eq!(deg, vec![1, 1, 8]);
        assert_eq!(sk.automorphism_count(), 1);
        assert!(tree_to_skeleton(&Empty).is_err());
    }

    #[test]
    fn k2_alt_shape() {
        let (sk, face) = tree_to_skeleton_alt(&RootedBinaryTree::leaf()).unwrap();
        assert_eq!(sk.black_count(3), 4);
        assert_eq!(sk.edge_count(), 6);
        let faces = sk.faces();
        let mut deg: Vec<usize> = faces.iter().map(|f| f.len()).collect();
        deg.sort();
        assert_eq!(deg, vec![1, 1, 1, 9]);
        assert_eq!(faces[face].len(), 1);
    }
}
