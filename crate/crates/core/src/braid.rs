//! The braid group B₃ acting on the free group F₃ = ⟨a₁, a₂, a₃⟩.
//!
//! Braids are plain words in σᵢ^{±1}; equality is decided by comparing the
//! induced automorphisms of F₃, which is exact because the action is
//! faithful. The action is a left action: in a word `b₁b₂…bₙ` the last
//! letter acts first.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A reduced word in a free group, letters stored as signed generator
/// indices (`+i` for gᵢ, `-i` for gᵢ⁻¹, `i ≥ 1`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn generator(i: i32) -> Self {
        assert!(i != 0, "generator index must be nonzero");
        FreeWord { letters: vec![i] }
    }

    /// Builds a word from signed letters, reducing it.
    pub fn from_letters<I: IntoIterator<Item = i32>>(letters: I) -> Self {
        let mut w = FreeWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Builds a word from `(generator, sign)` pairs.
    pub fn from_pairs<I: IntoIterator<Item = (u32, i8)>>(pairs: I) -> Self {
        Self::from_letters(pairs.into_iter().map(|(g, s)| if s < 0 { -(g as i32) } else { g as i32 }))
    }

    fn push(&mut self, l: i32) {
        assert!(l != 0, "zero letter");
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Letters as `(generator, sign)` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, i8)> + '_ {
        self.letters.iter().map(|&l| (l.unsigned_abs(), if l < 0 { -1 } else { 1 }))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(|&l| -l).collect() }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// `c · self · c⁻¹`.
    pub fn conjugate_by(&self, c: &FreeWord) -> Self {
        &(c * self) * &c.inverse()
    }

    /// Replaces every generator gᵢ by `images[i-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        let mut out = FreeWord::identity();
        for &l in &self.letters {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                for &x in &img.letters {
                    out.push(x);
                }
            } else {
                for &x in img.letters.iter().rev() {
                    out.push(-x);
                }
            }
        }
        out
    }

    /// Exponent sum of generator `g`.
    pub fn exponent_sum(&self, g: u32) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.unsigned_abs() == g)
            .map(|&l| if l > 0 { 1 } else { -1 })
            .sum()
    }

    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    /// If the word is `u·gⱼ·u⁻¹`, returns `(u, j)`.
    pub fn as_conjugate_of_generator(&self) -> Option<(FreeWord, u32)> {
        let n = self.letters.len();
        if n % 2 == 0 {
            return None;
        }
        let mid = n / 2;
        let g = self.letters[mid];
        if g < 0 {
            return None;
        }
        let prefix = &self.letters[..mid];
        let suffix = &self.letters[mid + 1..];
        let matches = prefix.iter().zip(suffix.iter().rev()).all(|(a, b)| *a == -*b);
        matches.then(|| (FreeWord { letters: prefix.to_vec() }, g as u32))
    }

    /// Renders with generator prefix `prefix` (e.g. `"a"` gives `a1 a2^-1`).
    pub fn render(&self, prefix: &str) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let runs = runs(self.letters.iter().map(|&l| (l.unsigned_abs() as i64, l.signum() as i64)));
        render_runs(prefix, &runs)
    }

    /// Parses words like `a1 a2^-1 a3^2`; `1` or the empty string is the identity.
    pub fn parse_with_prefix(s: &str, prefix: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (g, e) in parse_tokens(s, prefix)? {
            if g < 1 {
                return Err(Error::Parse(format!("generator index {g} must be positive")));
            }
            let l = i32::try_from(g).map_err(|_| Error::Parse(format!("generator index {g} too large")))?;
            for _ in 0..e.unsigned_abs() {
                letters.push(if e < 0 { -l } else { l });
            }
        }
        Ok(FreeWord::from_letters(letters))
    }
}

impl<'a> Mul<&'a FreeWord> for &'a FreeWord {
    type Output = FreeWord;
    fn mul(self, rhs: &'a FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &l in &rhs.letters {
            out.push(l);
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("a"))
    }
}

impl FromStr for FreeWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FreeWord::parse_with_prefix(s, "a")
    }
}

fn runs(items: impl Iterator<Item = (i64, i64)>) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::new();
    for (g, e) in items {
        match out.last_mut() {
            Some((pg, pe)) if *pg == g && pe.signum() == e.signum() => *pe += e,
            _ => out.push((g, e)),
        }
    }
    out
}

fn render_runs(prefix: &str, runs: &[(i64, i64)]) -> String {
    runs.iter()
        .map(|&(g, e)| if e == 1 { format!("{prefix}{g}") } else { format!("{prefix}{g}^{e}") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_tokens(s: &str, prefix: &str) -> Result<Vec<(i64, i64)>> {
    let s = s.trim();
    if s.is_empty() || s == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for tok in s.split(|c: char| c.is_whitespace() || c == '*' || c == '.').filter(|t| !t.is_empty()) {
        let body = tok
            .strip_prefix(prefix)
            .ok_or_else(|| Error::Parse(format!("token `{tok}` does not start with `{prefix}`")))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e.trim_start_matches('+')),
            None => (body, "1"),
        };
        let g: i64 = idx.parse().map_err(|_| Error::Parse(format!("bad generator index in `{tok}`")))?;
        let e: i64 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
        out.push((g, e));
    }
    Ok(out)
}

/// A word in the generators σᵢ of B₃, with indices taken mod 3
/// (σ_{3l+i} = σᵢ).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<(i64, i8)>,
}

/// Normalizes a braid generator index to `{1, 2, 3}`.
pub fn norm_index(i: i64) -> i64 {
    (i - 1).rem_euclid(3) + 1
}

impl BraidWord {
    pub fn identity() -> Self {
        BraidWord { letters: Vec::new() }
    }

    pub fn from_letters<I: IntoIterator<Item = (i64, i8)>>(letters: I) -> Self {
        BraidWord {
            letters: letters
                .into_iter()
                .map(|(i, s)| {
                    assert!(s == 1 || s == -1, "braid letter sign must be ±1");
                    (i, s)
                })
                .collect(),
        }
    }

    /// σᵢ.
    pub fn sigma(i: i64) -> Self {
        Self::sigma_pow(i, 1)
    }

    /// σᵢ^e.
    pub fn sigma_pow(i: i64, e: i64) -> Self {
        let s = if e < 0 { -1 } else { 1 };
        BraidWord { letters: vec![(i, s); e.unsigned_abs() as usize] }
    }

    /// τ = σ₂σ₁.
    pub fn tau() -> Self {
        BraidWord { letters: vec![(2, 1), (1, 1)] }
    }

    /// τ^n.
    pub fn tau_pow(n: i64) -> Self {
        Self::tau().pow(n)
    }

    pub fn letters(&self) -> &[(i64, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord { letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect() }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { letters }
    }

    /// Rewrites every index into `{1, 2, 3}`.
    pub fn normalized(&self) -> Self {
        BraidWord { letters: self.letters.iter().map(|&(i, s)| (norm_index(i), s)).collect() }
    }

    /// Cancels adjacent `σᵢσᵢ⁻¹` pairs (indices compared mod 3).
    pub fn freely_reduced(&self) -> Self {
        let mut out: Vec<(i64, i8)> = Vec::with_capacity(self.letters.len());
        for &(i, s) in &self.letters {
            let i = norm_index(i);
            if out.last() == Some(&(i, -s)) {
                out.pop();
            } else {
                out.push((i, s));
            }
        }
        BraidWord { letters: out }
    }

    /// Signed letter count (the abelianization B₃ → ℤ).
    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|&(_, s)| s as i64).sum()
    }
}

impl<'a> Mul<&'a BraidWord> for &'a BraidWord {
    type Output = BraidWord;
    fn mul(self, rhs: &'a BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        BraidWord { letters }
    }
}

impl Mul for BraidWord {
    type Output = BraidWord;
    fn mul(self, rhs: BraidWord) -> BraidWord {
        &self * &rhs
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let runs = runs(self.letters.iter().map(|&(i, s)| (norm_index(i), s as i64)));
        f.write_str(&render_runs("s", &runs))
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (g, e) in parse_tokens(s, "s")? {
            let sign = if e < 0 { -1 } else { 1 };
            letters.extend(std::iter::repeat((g, sign)).take(e.unsigned_abs() as usize));
        }
        Ok(BraidWord { letters })
    }
}

/// An automorphism of F₃ given by the images of a₁, a₂, a₃.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidAutomorphism {
    pub images: [FreeWord; 3],
}

impl BraidAutomorphism {
    pub fn identity() -> Self {
        BraidAutomorphism { images: [FreeWord::generator(1), FreeWord::generator(2), FreeWord::generator(3)] }
    }

    /// Conjugation aᵢ ↦ c·aᵢ·c⁻¹.
    pub fn conjugation(c: &FreeWord) -> Self {
        let id = Self::identity();
        BraidAutomorphism { images: id.images.map(|g| g.conjugate_by(c)) }
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BraidAutomorphism) -> BraidAutomorphism {
        BraidAutomorphism { images: other.images.clone().map(|w| self.apply(&w)) }
    }

    /// Each image is a conjugate of a generator.
    pub fn images_are_generator_conjugates(&self) -> bool {
        self.images.iter().all(|w| w.as_conjugate_of_generator().is_some())
    }

    /// The product a₁a₂a₃ is fixed.
    pub fn fixes_boundary(&self) -> bool {
        let prod = &(&self.images[0] * &self.images[1]) * &self.images[2];
        prod == boundary_word()
    }
}

/// The word a₁a₂a₃.
pub fn boundary_word() -> FreeWord {
    FreeWord::from_letters([1, 2, 3])
}

fn letter_images(gen: i64, sign: i8) -> [FreeWord; 3] {
    let w = |l: &[i32]| FreeWord::from_letters(l.iter().copied());
    match (gen, sign) {
        (1, 1) => [w(&[1, 2, -1]), w(&[1]), w(&[3])],
        (1, -1) => [w(&[2]), w(&[-2, 1, 2]), w(&[3])],
        (2, 1) => [w(&[1]), w(&[2, 3, -2]), w(&[2])],
        (2, -1) => [w(&[1]), w(&[3]), w(&[-3, 2, 3])],
        _ => unreachable!("σ₃ is expanded before lookup"),
    }
}

/// The automorphism of F₃ induced by `b`; the equality oracle for B₃.
pub fn automorphism_of(b: &BraidWord) -> BraidAutomorphism {
    let mut images = BraidAutomorphism::identity().images;
    let step = |g: i64, s: i8, images: &mut [FreeWord; 3]| {
        let li = letter_images(g, s);
        let new = [li[0].substitute(images), li[1].substitute(images), li[2].substitute(images)];
        *images = new;
    };
    for &(i, s) in &b.letters {
        match norm_index(i) {
            3 => {
                step(1, -1, &mut images);
                step(2, s, &mut images);
                step(1, 1, &mut images);
            }
            g => step(g, s, &mut images),
        }
    }
    BraidAutomorphism { images }
}

/// The image of `w` under the left action of `b`.
pub fn apply_braid(b: &BraidWord, w: &FreeWord) -> FreeWord {
    automorphism_of(b).apply(w)
}

pub fn braid_equal(b1: &BraidWord, b2: &BraidWord) -> bool {
    b1.degree() == b2.degree() && automorphism_of(b1) == automorphism_of(b2)
}

pub fn degree(b: &BraidWord) -> i64 {
    b.degree()
}

/// Equality in B₃/⟨τ³⟩ together with the degree bookkeeping: true iff
/// `b2 = b1·τ^{3t}` where `6t = deg b2 − deg b1`.
pub fn equal_mod_tau3(b1: &BraidWord, b2: &BraidWord) -> bool {
    let d = b2.degree() - b1.degree();
    if d % 6 != 0 {
        return false;
    }
    braid_equal(&(b1 * &BraidWord::tau_pow(d / 2)), b2)
}

/// Equality of images in B₃/⟨τ³⟩ only, ignoring degree.
pub fn equal_in_quotient(b1: &BraidWord, b2: &BraidWord) -> bool {
    central_exponent(&automorphism_of(&(b1 * &b2.inverse()))).is_some()
}

/// If `a` is conjugation by (a₁a₂a₃)ⁿ, returns n.
fn central_exponent(a: &BraidAutomorphism) -> Option<i64> {
    let (u, _) = a.images[0].as_conjugate_of_generator()?;
    let len = u.len() as i64;
    let mut candidates = vec![len / 3, (len + 1) / 3];
    candidates.dedup();
    candidates
        .into_iter()
        .flat_map(|n| [n, -n])
        .find(|&n| BraidAutomorphism::conjugation(&boundary_word().pow(n)) == *a)
}

/// Returns n iff `b = τ^{3n}`.
pub fn recognize_central_power(b: &BraidWord) -> Option<i64> {
    let d = b.degree();
    if d % 6 != 0 {
        return None;
    }
    let n = d / 6;
    (central_exponent(&automorphism_of(b)) == Some(full_twist_sign() * n)).then_some(n)
}

/// τ³ acts as conjugation by (a₁a₂a₃)^s with `s` returned here.
pub fn full_twist_sign() -> i64 {
    1
}

/// A permutation of {1, 2, 3}; `map[i]` is the image of `i + 1`, zero based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    pub map: [u8; 3],
}

impl Permutation {
    pub const IDENTITY: Permutation = Permutation { map: [0, 1, 2] };

    pub fn transposition(a: u8, b: u8) -> Self {
        let mut map = [0, 1, 2];
        map.swap(a as usize - 1, b as usize - 1);
        Permutation { map }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { map: other.map.map(|x| self.map[x as usize]) }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = [0; 3];
        for (i, &x) in self.map.iter().enumerate() {
            map[x as usize] = i as u8;
        }
        Permutation { map }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; 3];
        let mut out = String::new();
        for start in 0..3u8 {
            if seen[start as usize] || self.map[start as usize] == start {
                continue;
            }
            let mut cyc = vec![start + 1];
            seen[start as usize] = true;
            let mut x = self.map[start as usize];
            while x != start {
                seen[x as usize] = true;
                cyc.push(x + 1);
                x = self.map[x as usize];
            }
            let parts: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("({})", parts.join(" ")));
        }
        if out.is_empty() {
            out.push_str("()");
        }
        f.write_str(&out)
    }
}

/// The image of `b` in S₃ under σ₁ ↦ (1 2), σ₂ ↦ (2 3).
pub fn symmetric_image(b: &BraidWord) -> Permutation {
    let mut p = Permutation::IDENTITY;
    for &(i, _) in &b.letters {
        let t = match norm_index(i) {
            1 => Permutation::transposition(1, 2),
            2 => Permutation::transposition(2, 3),
            _ => Permutation::transposition(1, 3),
        };
        p = p.compose(&t);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(i: i64) -> BraidWord {
        BraidWord::sigma(i)
    }

    fn w(l: &[i32]) -> FreeWord {
        FreeWord::from_letters(l.iter().copied())
    }

    #[test]
    fn generator_actions() {
        assert_eq!(apply_braid(&s(1), &w(&[1])), w(&[1, 2, -1]));
        assert_eq!(apply_braid(&s(2), &w(&[2])), w(&[2, 3, -2]));
        assert_eq!(apply_braid(&BraidWord::identity(), &w(&[1, -3, 2])), w(&[1, -3, 2]));
        assert_eq!(automorphism_of(&BraidWord::identity()), BraidAutomorphism::identity());
    }

    #[test]
    fn sigma3_is_conjugate() {
        let expanded = BraidWord::from_letters([(1, -1), (2, 1), (1, 1)]);
        assert_eq!(automorphism_of(&s(3)), automorphism_of(&expanded));
        assert_eq!(automorphism_of(&s(6)), automorphism_of(&s(3)));
        assert_eq!(automorphism_of(&s(-2)), automorphism_of(&s(1)));
    }

    #[test]
    fn full_twist_is_boundary_conjugation() {
        // Independent computation: apply (σ₂σ₁)³ letter by letter, right to left.
        let mut imgs = [w(&[1]), w(&[2]), w(&[3])];
        for _ in 0..3 {
            for letter in [(1, 1i8), (2, 1i8)] {
                let li = letter_images(letter.0, letter.1);
                imgs = imgs.map(|x| x.substitute(&li));
            }
        }
        let d = boundary_word();
        let by = |c: &FreeWord| [w(&[1]), w(&[2]), w(&[3])].map(|g| g.conjugate_by(c));
        let expected = if full_twist_sign() > 0 { by(&d) } else { by(&d.inverse()) };
        assert_eq!(imgs, expected);
        assert_eq!(automorphism_of(&BraidWord::tau_pow(3)).images, expected);
    }

    #[test]
    fn braid_relations() {
        assert!(braid_equal(&(s(1) * s(2) * s(1)), &(s(2) * s(1) * s(2))));
        assert!(braid_equal(&(s(2) * s(1)), &(s(3) * s(2))));
        assert!(braid_equal(&(s(2) * s(1)), &(s(1) * s(3))));
        assert!(!braid_equal(&s(1), &s(2)));
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&s(1)), 1);
        assert_eq!(degree(&BraidWord::tau_pow(3)), 6);
        assert_eq!(degree(&BraidWord::identity()), 0);
    }

    #[test]
    fn quotient_equality() {
        let b = s(1) * s(2).inverse() * s(3);
        assert!(equal_mod_tau3(&b, &(&b * &BraidWord::tau_pow(3))));
        let lhs = BraidWord::sigma_pow(2, -3) * s(3).inverse() * BraidWord::tau_pow(3);
        assert!(equal_mod_tau3(&lhs, &(s(1) * s(2))));
        assert!(braid_equal(&lhs, &(s(1) * s(2))));
        assert!(!equal_mod_tau3(&s(1), &s(2)));
        assert!(equal_in_quotient(&s(1), &(s(1) * BraidWord::tau_pow(-3))));
    }

    #[test]
    fn symmetric_images() {
        assert_eq!(symmetric_image(&s(1)), Permutation::transposition(1, 2));
        assert_eq!(symmetric_image(&s(3)), Permutation::transposition(1, 3));
        assert!(symmetric_image(&BraidWord::tau_pow(3)).is_identity());
        assert_eq!(Permutation::transposition(1, 3).to_string(), "(1 3)");
    }

    #[test]
    fn central_powers() {
        assert_eq!(recognize_central_power(&BraidWord::tau_pow(6)), Some(2));
        assert_eq!(recognize_central_power(&BraidWord::tau_pow(-3)), Some(-1));
        assert_eq!(recognize_central_power(&s(1)), None);
        assert_eq!(recognize_central_power(&(s(1) * s(2)).pow(3)), Some(1));
        assert_eq!(recognize_central_power(&BraidWord::identity()), Some(0));
        assert_eq!(recognize_central_power(&BraidWord::sigma_pow(1, 6)), None);
    }

    #[test]
    fn text_round_trip() {
        let b: BraidWord = "s1 s2^-1 s3^2".parse().unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b.to_string(), "s1 s2^-1 s3^2");
        let f: FreeWord = "a1 a2^-1".parse().unwrap();
        assert_eq!(f, w(&[1, -2]));
        assert_eq!(f.to_string(), "a1 a2^-1");
        assert_eq!("1".parse::<BraidWord>().unwrap(), BraidWord::identity());
        assert!("x1".parse::<BraidWord>().is_err());
    }
}
