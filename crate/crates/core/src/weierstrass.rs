//! Exact Weierstraß data over ℚ: discriminant, j-invariant, the simplified
//! criterion, isotrivial classification and reconstruction from j.
//!
//! No roots are ever extracted; multiplicities are read off squarefree
//! decompositions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in z with rational coefficients, low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial z.
    pub fn z() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let c = r.last().unwrap() * &lead_inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &c * dc;
            }
            quo[shift] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (RatPoly::new(quo), RatPoly::new(r))
    }

    /// Exact division; errors if `d` does not divide.
    pub fn div_exact(&self, d: &RatPoly) -> Result<RatPoly> {
        let (quo, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(quo)
        } else {
            Err(Error::Invariant(format!("{d} does not divide {self}")))
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Parses a coefficient list `c0,c1,...` (entries may be `p/q`), a
    /// list with common denominator `(c0,c1,...)/den`, or sparse text such
    /// as `4*z^3 - z/2 + 27`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if t.contains('z') {
            return parse_sparse(&t);
        }
        if let Some(rest) = t.strip_prefix('(') {
            let (list, den) = rest
                .split_once(")/")
                .ok_or_else(|| Error::Parse(format!("expected `(c0,...)/den`, got `{s}`")))?;
            let den = parse_rational(den)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            let c: Result<Vec<_>> = list.split(',').map(parse_rational).collect();
            return Ok(RatPoly::new(c?).scale(&den.recip()));
        }
        let c: Result<Vec<_>> = t.split(',').map(parse_rational).collect();
        Ok(RatPoly::new(c?))
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

fn parse_sparse(t: &str) -> Result<RatPoly> {
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in t.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut out = RatPoly::zero();
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, term.strip_prefix('+').unwrap_or(&term)),
        };
        let bad = || Error::Parse(format!("bad term `{term}`"));
        let (coef, exp) = match body.find('z') {
            None => (parse_rational(body)?, 0u32),
            Some(pos) => {
                let (pre, post) = (&body[..pos], &body[pos + 1..]);
                let pre_trim = pre.strip_suffix('*').unwrap_or(pre);
                let (mut exp_text, div) = match post.split_once('/') {
                    Some((p, d)) => (post_exp_prefix(p), Some(d)),
                    None => (post_exp_prefix(post), None),
                };
                let exp: u32 = match exp_text.take() {
                    Some(e) => e.parse().map_err(|_| bad())?,
                    None if post.is_empty() || post.starts_with('/') => 1,
                    None => return Err(bad()),
                };
                let mut c = if pre_trim.is_empty() { BigRational::one() } else { parse_rational(pre_trim)? };
                if let Some(d) = div {
                    let d = parse_rational(d)?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    c /= d;
                }
                (c, exp)
            }
        };
        let mut v = vec![BigRational::zero(); exp as usize + 1];
        v[exp as usize] = if neg { -coef } else { coef };
        out = &out + &RatPoly::new(v);
    }
    Ok(out)
}

/// The exponent text after `z` (the part following `^`), if any.
fn post_exp_prefix(post: &str) -> Option<String> {
    post.strip_prefix('^').map(str::to_string)
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{i}"),
            };
            match (a.is_one(), i) {
                (true, 0) => f.write_str("1")?,
                (true, _) => f.write_str(&mono)?,
                (false, 0) => write!(f, "{a}")?,
                (false, _) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for RatPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RatPoly::parse(s)
    }
}

impl<'a> Add<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        RatPoly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect())
    }
}

impl<'a> Neg for &'a RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<'a> Sub<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, o: &RatPoly) -> RatPoly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        RatPoly::new(c)
    }
}

/// A reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub numerator: RatPoly,
    pub denominator: RatPoly,
}

impl RationalFunction {
    pub fn new(num: &RatPoly, den: &RatPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let g = num.gcd(den);
        let g = if g.is_zero() { RatPoly::one() } else { g };
        let (n, d) = (num.div_exact(&g)?, den.div_exact(&g)?);
        let lead = d.leading().recip();
        Ok(RationalFunction { numerator: n.scale(&lead), denominator: d.scale(&lead) })
    }

    pub fn is_constant(&self) -> bool {
        self.numerator.is_constant() && self.denominator.is_constant()
    }

    /// The value of a constant function.
    pub fn constant_value(&self) -> Option<BigRational> {
        self.is_constant().then(|| self.numerator.leading() / self.denominator.leading())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_constant() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

/// Δ = 4g₂³ + 27g₃².
pub fn discriminant(g2: &RatPoly, g3: &RatPoly) -> RatPoly {
    &g2.pow(3).scale(&q(4)) + &g3.pow(2).scale(&q(27))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JInvariant {
    Constant(BigRational),
    Function(RationalFunction),
}

/// j = 4g₂³/Δ.
pub fn j_invariant(g2: &RatPoly, g3: &RatPoly) -> Result<JInvariant> {
    let delta = discriminant(g2, g3);
    if delta.is_zero() {
        return Err(Error::Domain("discriminant vanishes identically".into()));
    }
    let j = RationalFunction::new(&g2.pow(3).scale(&q(4)), &delta)?;
    Ok(match j.constant_value() {
        Some(c) => JInvariant::Constant(c),
        None => JInvariant::Function(j),
    })
}

/// p = c·Π fᵢ^{eᵢ} with monic, squarefree, pairwise coprime fᵢ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub constant: BigRational,
    pub factors: Vec<(RatPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> RatPoly {
        self.factors.iter().fold(RatPoly::constant(self.constant.clone()), |acc, (f, e)| &acc * &f.pow(*e))
    }

    /// Product of the factors whose exponent satisfies `keep`.
    pub fn product_where(&self, keep: impl Fn(u32) -> bool) -> RatPoly {
        self.factors.iter().filter(|(_, e)| keep(*e)).fold(RatPoly::one(), |acc, (f, _)| &acc * f)
    }

    /// Number of distinct roots (over ℂ) with exponent satisfying `keep`.
    pub fn root_count_where(&self, keep: impl Fn(u32) -> bool) -> usize {
        self.factors.iter().filter(|(_, e)| keep(*e)).map(|(f, _)| f.degree().unwrap_or(0)).sum()
    }
}

/// Yun's algorithm.
pub fn squarefree_decomposition(p: &RatPoly) -> Result<SquarefreeDecomposition> {
    if p.is_zero() {
        return Err(Error::Domain("squarefree decomposition of the zero polynomial".into()));
    }
    let constant = p.leading();
    let mut factors = Vec::new();
    if !p.is_constant() {
        let p = p.monic();
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        let mut b = p.div_exact(&a0)?;
        let mut c = dp.div_exact(&a0)?;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            b = b.div_exact(&a)?;
            c = d.div_exact(&a)?;
            d = &c - &b.derivative();
            if !a.is_constant() {
                factors.push((a, i));
            }
            i += 1;
        }
    }
    Ok(SquarefreeDecomposition { constant, factors })
}

/// No point is a root of g₂ of multiplicity ≥ 2 and of g₃ of multiplicity
/// ≥ 3. A zero polynomial has every multiplicity.
pub fn is_simplified(g2: &RatPoly, g3: &RatPoly) -> Result<bool> {
    match (g2.is_zero(), g3.is_zero()) {
        (true, true) => Ok(false),
        (true, false) => Ok(squarefree_decomposition(g3)?.factors.iter().all(|(_, e)| *e < 3)),
        (false, true) => Ok(squarefree_decomposition(g2)?.factors.iter().all(|(_, e)| *e < 2)),
        (false, false) => {
            let s2 = squarefree_decomposition(g2)?.product_where(|e| e >= 2);
            let s3 = squarefree_decomposition(g3)?.product_where(|e| e >= 3);
            Ok(s2.gcd(&s3).is_constant())
        }
    }
}

/// p̄ = 4g₂³ and q̄ = 27g₃² (up to a common scalar) of the simplified curve
/// with j = p/(p+q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFromJ {
    pub g2_cube: RatPoly,
    pub g3_square: RatPoly,
    pub k: usize,
}

impl CurveFromJ {
    /// The monic polynomial whose cube is proportional to p̄.
    pub fn g2_monic(&self) -> Result<RatPoly> {
        root_of_powers(&self.g2_cube, 3)
    }

    /// The monic polynomial whose square is proportional to q̄.
    pub fn g3_monic(&self) -> Result<RatPoly> {
        root_of_powers(&self.g3_square, 2)
    }
}

fn root_of_powers(p: &RatPoly, n: u32) -> Result<RatPoly> {
    let d = squarefree_decomposition(p)?;
    d.factors.iter().try_fold(RatPoly::one(), |acc, (f, e)| {
        if e % n != 0 {
            return Err(Error::Invariant(format!("exponent {e} not divisible by {n}")));
        }
        Ok(&acc * &f.pow(e / n))
    })
}

/// Reconstructs the simplified Weierstraß data from j = p/(p+q), with all
/// special fibers in the affine chart (deg p = deg q).
pub fn curve_from_j(p: &RatPoly, q_: &RatPoly) -> Result<CurveFromJ> {
    if p.is_zero() || q_.is_zero() {
        return Err(Error::Domain("p and q must be nonzero".into()));
    }
    if p.degree() != q_.degree() {
        return Err(Error::Domain(format!(
            "deg p = {} differs from deg q = {}: a special fiber lies at infinity",
            p.degree().unwrap(),
            q_.degree().unwrap()
        )));
    }
    if !p.gcd(q_).is_constant() {
        return Err(Error::Domain("p and q are not coprime".into()));
    }
    let mut mult = RatPoly::one();
    for (f, e) in squarefree_decomposition(p)?.factors {
        match e % 3 {
            1 => mult = &mult * &f.pow(2),
            2 => mult = &mult * &f.pow(4),
            _ => {}
        }
    }
    for (h, e) in squarefree_decomposition(q_)?.factors {
        if e % 2 == 1 {
            mult = &mult * &h.pow(3);
        }
    }
    let (pb, qb) = (p * &mult, q_ * &mult);
    let deg = pb.degree().unwrap();
    if deg % 6 != 0 {
        return Err(Error::Invariant(format!("deg p̄ = {deg} is not divisible by 6")));
    }
    let out = CurveFromJ { g2_cube: pb, g3_square: qb, k: deg / 6 };
    check_curve_from_j(&out, p, q_)?;
    Ok(out)
}

fn check_curve_from_j(c: &CurveFromJ, p: &RatPoly, q_: &RatPoly) -> Result<()> {
    let dp = squarefree_decomposition(&c.g2_cube)?;
    let dq = squarefree_decomposition(&c.g3_square)?;
    if dp.factors.iter().any(|(_, e)| e % 3 != 0) || dq.factors.iter().any(|(_, e)| e % 2 != 0) {
        return Err(Error::Invariant("p̄ is not a cube or q̄ is not a square".into()));
    }
    let heavy_p = dp.product_where(|e| e >= 6);
    let heavy_q = dq.product_where(|e| e >= 6);
    if !heavy_p.gcd(&heavy_q).is_constant() {
        return Err(Error::Invariant("reconstructed curve is not simplified".into()));
    }
    if c.g3_square.degree() != c.g2_cube.degree() {
        return Err(Error::Invariant("deg p̄ differs from deg q̄".into()));
    }
    let j_in = RationalFunction::new(p, &(p + q_))?;
    let j_out = RationalFunction::new(&c.g2_cube, &(&c.g2_cube + &c.g3_square))?;
    if j_in != j_out {
        return Err(Error::Invariant("reconstructed j differs from the input".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotrivClass {
    /// j ≡ 0: Ã₀** over simple roots of g₃, Ã₂* over double roots.
    J0 { simple_roots: RatPoly, double_roots: RatPoly },
    /// j ≡ 1: Ã₁* over the (simple) roots of g₂.
    J1 { roots: RatPoly },
    /// j constant, not 0 or 1: k = 0, no singular fibers.
    Const { j: BigRational },
    NonIsotrivial,
}

impl fmt::Display for IsotrivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = |p: &RatPoly| p.degree().unwrap_or(0);
        match self {
            IsotrivClass::J0 { simple_roots, double_roots } => write!(
                f,
                "J0: {}×A~0** + {}×A~2*",
                deg(simple_roots),
                deg(double_roots)
            ),
            IsotrivClass::J1 { roots } => write!(f, "J1: {}×A~1*", deg(roots)),
            IsotrivClass::Const { j } => write!(f, "CONST: j = {j}, k = 0"),
            IsotrivClass::NonIsotrivial => f.write_str("NONISOTRIVIAL"),
        }
    }
}

pub fn isotriv_class(g2: &RatPoly, g3: &RatPoly) -> Result<IsotrivClass> {
    if !is_simplified(g2, g3)? {
        return Err(Error::Domain("input is not simplified".into()));
    }
    if g2.is_zero() {
        let d = squarefree_decomposition(g3)?;
        return Ok(IsotrivClass::J0 {
            simple_roots: d.product_where(|e| e == 1),
            double_roots: d.product_where(|e| e == 2),
        });
    }
    if g3.is_zero() {
        return Ok(IsotrivClass::J1 { roots: g2.monic() });
    }
    match j_invariant(g2, g3)? {
        JInvariant::Constant(j) => Ok(IsotrivClass::Const { j }),
        JInvariant::Function(_) => Ok(IsotrivClass::NonIsotrivial),
    }
}
