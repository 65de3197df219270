//! Van Kampen presentations of fundamental groups, abelianization, and the
//! conjugation-closure argument forcing α₁ = α₂ = α₃.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::braid::{apply_braid, FreeWord};
use crate::monodromy::MonodromyPresentation;

/// ⟨g₁,…,gₙ | relators⟩. Generators 1..=3 are the fiber generators α₁, α₂,
/// α₃; later ones are kept loops γⱼ around linear components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generator_count: u32,
    pub relators: Vec<FreeWord>,
}

impl GroupPresentation {
    pub fn new(generator_count: u32, relators: Vec<FreeWord>) -> Self {
        assert!(
            relators.iter().all(|r| r.max_generator() <= generator_count),
            "relator uses a generator out of range"
        );
        GroupPresentation { generator_count, relators }
    }

    pub fn free(generator_count: u32) -> Self {
        Self::new(generator_count, Vec::new())
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> Vec<Vec<BigInt>> {
        self.relators
            .iter()
            .map(|r| (1..=self.generator_count).map(|g| BigInt::from(r.exponent_sum(g))).collect())
            .collect()
    }
}

fn generator_name(g: u32) -> String {
    if g <= 3 {
        format!("a{g}")
    } else {
        format!("g{}", g - 3)
    }
}

fn render_word(w: &FreeWord) -> String {
    if w.is_identity() {
        return "1".into();
    }
    w.pairs()
        .map(|(g, s)| if s < 0 { format!("{}^-1", generator_name(g)) } else { generator_name(g) })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generator_count).map(generator_name).collect();
        let rels: Vec<String> = self.relators.iter().map(render_word).collect();
        write!(f, "<{} | {}>", gens.join(", "), rels.join(", "))
    }
}

/// The presentation of π₁ of the complement. The last `linear_components`
/// monodromy generators are loops around linear components: their fibers
/// are not patched back, so the loop γⱼ is kept as a generator and enters
/// the relations by conjugation.
pub fn van_kampen(p: &MonodromyPresentation, linear_components: usize) -> GroupPresentation {
    let r = linear_components.min(p.generators.len());
    let split = p.generators.len() - r;
    let mut relators = Vec::new();
    for g in &p.generators[..split] {
        for i in 1..=3 {
            let a = FreeWord::generator(i);
            relators.push(&a.inverse() * &apply_braid(&g.braid, &a));
        }
    }
    for (j, g) in p.generators[split..].iter().enumerate() {
        let gamma = FreeWord::generator(4 + j as i32);
        for i in 1..=3 {
            let a = FreeWord::generator(i);
            let lhs = a.inverse().conjugate_by(&gamma.inverse());
            relators.push(&lhs * &apply_braid(&g.braid, &a));
        }
    }
    let boundary = FreeWord::from_letters([1, 2, 3]);
    relators.push(boundary.pow(p.k as i64));
    GroupPresentation::new(3 + r as u32, relators)
}

/// Invariant factors d₁ | d₂ | … of the relation matrix; `0` marks a free
/// factor and trivial factors 1 are omitted.
pub fn abelianization(g: &GroupPresentation) -> Vec<BigInt> {
    let m = g.relation_matrix();
    let mut diag = smith_diagonal(m, g.generator_count as usize);
    diag.retain(|d| *d != BigInt::from(1));
    diag
}

/// Smith normal form diagonal of an `rows × cols` matrix (length `cols`,
/// zeros included), nonnegative and ordered by divisibility.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
        if let Some(i) = bad {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag.resize(cols, BigInt::zero());
    diag
}

/// Renders invariant factors as `Z_6`, `Z + Z_3`, or `0` for the trivial
/// group.
pub fn abelian_group_text(factors: &[BigInt]) -> String {
    let mut parts: Vec<String> = factors.iter().filter(|d| d.is_zero()).map(|_| "Z".to_string()).collect();
    parts.extend(factors.iter().filter(|d| !d.is_zero()).map(|d| format!("Z_{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Reads a relator as αᵢ = u·αⱼ·u⁻¹, over all cyclic rotations of the
/// relator and its inverse.
fn conjugation_readings(r: &FreeWord) -> Vec<(u32, FreeWord, u32)> {
    let mut out = Vec::new();
    for w in [r.clone(), r.inverse()] {
        let l = w.letters();
        for k in 0..l.len() {
            let rot = FreeWord::from_letters(l[k..].iter().chain(&l[..k]).copied());
            let Some(&first) = rot.letters().first() else { continue };
            if first >= 0 || first.unsigned_abs() > 3 {
                continue;
            }
            let rest = FreeWord::from_letters(rot.letters()[1..].iter().copied());
            if let Some((u, j)) = rest.as_conjugate_of_generator() {
                if j <= 3 {
                    out.push((first.unsigned_abs(), u, j));
                }
            }
        }
    }
    out
}

/// Whether conjugation closure alone derives α₁ = α₂ = α₃: from a relator
/// αᵢ = u·αⱼ·u⁻¹ where every letter of u is already known equal to αᵢ,
/// conclude αᵢ = αⱼ.
pub fn forced_generator_equality(g: &GroupPresentation) -> bool {
    let readings: Vec<(u32, FreeWord, u32)> = g.relators.iter().flat_map(conjugation_readings).collect();
    let mut class = [0usize, 1, 2, 3];
    let find = |class: &[usize; 4], mut x: usize| {
        while class[x] != x {
            x = class[x];
        }
        x
    };
    loop {
        let mut changed = false;
        for (i, u, j) in &readings {
            let (ci, cj) = (find(&class, *i as usize), find(&class, *j as usize));
            if ci == cj {
                continue;
            }
            let inside = u.pairs().all(|(x, _)| x <= 3 && find(&class, x as usize) == ci);
            if inside {
                class[ci] = cj;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let c1 = find(&class, 1);
    find(&class, 2) == c1 && find(&class, 3) == c1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::monodromy::{tree_presentation, Generator, GeneratorLabel};
    use crate::trees::RootedBinaryTree;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn tree_groups() {
        let p = tree_presentation(&RootedBinaryTree::leaf()).unwrap();
        let g = van_kampen(&p, 0);
        assert_eq!(g.generator_count, 3);
        assert_eq!(g.relators.len(), 3 * 4 + 1);
        assert_eq!(abelianization(&g), ints(&[6]));
        assert_eq!(abelian_group_text(&abelianization(&g)), "Z_6");
        assert!(forced_generator_equality(&g));
        let p3 = tree_presentation(&"((-,-),-)".parse().unwrap()).unwrap();
        assert_eq!(abelianization(&van_kampen(&p3, 0)), ints(&[9]));
    }

    #[test]
    fn linear_component_kept() {
        let p = tree_presentation(&RootedBinaryTree::leaf()).unwrap();
        let g = van_kampen(&p, 1);
        assert_eq!(g.generator_count, 4);
        assert_eq!(g.relators.len(), 3 * 4 + 1);
        assert!(g.to_string().contains("g1"));
    }

    #[test]
    fn trivial_cases() {
        let empty = MonodromyPresentation { k: 0, generators: vec![], encoding_words: vec![] };
        let g = van_kampen(&empty, 0);
        assert_eq!(g.relators, vec![FreeWord::identity()]);
        let free = GroupPresentation::free(3);
        assert_eq!(abelianization(&free), ints(&[0, 0, 0]));
        assert_eq!(abelian_group_text(&abelianization(&free)), "Z + Z + Z");
        assert!(!forced_generator_equality(&free));
        assert_eq!(abelian_group_text(&[]), "0");
    }

    #[test]
    fn sigma1_squared_not_forced() {
        let p = MonodromyPresentation {
            k: 0,
            generators: vec![Generator {
                label: GeneratorLabel::Face { face: 0 },
                braid: BraidWord::sigma_pow(1, 2),
            }],
            encoding_words: vec![],
        };
        assert!(!forced_generator_equality(&van_kampen(&p, 0)));
    }

    #[test]
    fn mixed_group_text() {
        let g = GroupPresentation::new(2, vec![FreeWord::from_letters([1, 1, 1])]);
        assert_eq!(abelian_group_text(&abelianization(&g)), "Z + Z_3");
    }

    #[test]
    fn smith_examples() {
        let m = vec![ints(&[2, 4, 4]), ints(&[-6, 6, 12]), ints(&[10, -4, -16])];
        assert_eq!(smith_diagonal(m, 3), ints(&[2, 6, 12]));
        let m = vec![ints(&[2, 0]), ints(&[0, 3])];
        assert_eq!(smith_diagonal(m, 2), ints(&[1, 6]));
    }
}
