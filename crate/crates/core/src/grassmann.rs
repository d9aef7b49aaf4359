//! Truncated ℤ₂ⁿ-Grassmann algebras with exact rational coefficients.
//!
//! An algebra is the formal power series ring ℝ[[θ]] in graded generators
//! θ_j^ℓ of nonzero degree γ_j, quotiented by the ideal of monomials of total
//! degree above a fixed cap. The generator ideal J is nilpotent in the
//! quotient, so the algebra is trivially J-adically complete and every series
//! that would converge J-adically is a finite sum here.
//!
//! Monomials are stored as exponent vectors in the canonical generator order
//! (degree index first, then generator index). Products are brought into
//! canonical order by adjacent transpositions, each contributing the sign
//! (−1)^⟨γ_u,γ_v⟩ of the two swapped generators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::degree::{self, Degree};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shared handle to an algebra description.
pub type Algebra = Arc<AlgebraSpec>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Generator counts per nonzero degree plus the truncation cap.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    n: usize,
    /// Indexed by degree index; entry 0 is always 0.
    counts: Vec<usize>,
    cap: u32,
    gen_degrees: Vec<Degree>,
    offsets: Vec<usize>,
    /// Row-major parity of ⟨deg u, deg v⟩ for every generator pair.
    odd_pairs: Vec<bool>,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.counts == other.counts && self.cap == other.cap
    }
}
impl Eq for AlgebraSpec {}

impl AlgebraSpec {
    /// `nonzero_counts[j-1]` is the number of generators of degree γ_j.
    pub fn new(n: usize, nonzero_counts: &[usize], cap: u32) -> Result<Algebra> {
        let degrees = degree::enumerate_degrees(n)?;
        if nonzero_counts.len() != degrees.len() - 1 {
            return Err(Error::ShapeMismatch(format!(
                "expected {} generator counts for n={n}, got {}",
                degrees.len() - 1,
                nonzero_counts.len()
            )));
        }
        let mut counts = vec![0];
        counts.extend_from_slice(nonzero_counts);
        let mut gen_degrees = Vec::new();
        let mut offsets = Vec::with_capacity(counts.len() + 1);
        for (j, &m) in counts.iter().enumerate() {
            offsets.push(gen_degrees.len());
            gen_degrees.extend(std::iter::repeat(degrees[j]).take(m));
        }
        offsets.push(gen_degrees.len());
        let g = gen_degrees.len();
        let mut odd_pairs = vec![false; g * g];
        for u in 0..g {
            for v in 0..g {
                odd_pairs[u * g + v] = gen_degrees[u].odd_pairing(gen_degrees[v]);
            }
        }
        Ok(Arc::new(AlgebraSpec {
            n,
            counts,
            cap,
            gen_degrees,
            offsets,
            odd_pairs,
        }))
    }

    /// Λ₁: exactly one generator in each nonzero degree.
    pub fn one_per_degree(n: usize, cap: u32) -> Result<Algebra> {
        let slots = degree::enumerate_degrees(n)?.len() - 1;
        AlgebraSpec::new(n, &vec![1; slots], cap)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Generator count of degree index `j` (0 for `j = 0`).
    pub fn count(&self, j: usize) -> usize {
        self.counts[j]
    }

    pub fn nonzero_counts(&self) -> &[usize] {
        &self.counts[1..]
    }

    pub fn num_generators(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn generator_degree(&self, g: usize) -> Degree {
        self.gen_degrees[g]
    }

    /// Canonical position of θ_j^ℓ (ℓ zero-based).
    pub fn generator_index(&self, j: usize, l: usize) -> Result<usize> {
        if j == 0 || j >= self.counts.len() || l >= self.counts[j] {
            return Err(Error::DegreeViolation(format!(
                "no generator #{} in degree index {j}",
                l + 1
            )));
        }
        Ok(self.offsets[j] + l)
    }

    /// `(degree index, zero-based ℓ)` of canonical generator `g`.
    pub fn generator_label(&self, g: usize) -> (usize, usize) {
        let j = self.gen_degrees[g].index();
        (j, g - self.offsets[j])
    }

    /// Text name `<bits><ℓ>` with 1-based ℓ, e.g. `011`.
    pub fn generator_name(&self, g: usize) -> String {
        let (_, l) = self.generator_label(g);
        format!("{}{}", self.gen_degrees[g], l + 1)
    }

    /// Same generators, different cap.
    pub fn with_cap(&self, cap: u32) -> Algebra {
        AlgebraSpec::new(self.n, self.nonzero_counts(), cap).expect("valid spec")
    }

    pub(crate) fn odd_pair(&self, u: usize, v: usize) -> bool {
        self.odd_pairs[u * self.gen_degrees.len() + v]
    }

    pub fn zero_degree(&self) -> Degree {
        Degree::zero(self.n)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "algebra n={} gens", self.n)?;
        for (j, &m) in self.counts.iter().enumerate().skip(1) {
            if m > 0 {
                let g = Degree::from_index(self.n, j).expect("in range");
                write!(f, " {g}*{m}")?;
            }
        }
        write!(f, " cap={}", self.cap)
    }
}

/// Exponent vector over the canonical generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(num_generators: usize) -> Monomial {
        Monomial {
            exps: vec![0; num_generators],
        }
    }

    /// Validates parity and cap against `alg`.
    pub fn new(alg: &AlgebraSpec, exps: Vec<u32>) -> Result<Monomial> {
        if exps.len() != alg.num_generators() {
            return Err(Error::ShapeMismatch(format!(
                "monomial has {} exponents, algebra has {} generators",
                exps.len(),
                alg.num_generators()
            )));
        }
        for (g, &e) in exps.iter().enumerate() {
            if e > 1 && alg.generator_degree(g).is_nilpotent_parity() {
                return Err(Error::ParityViolation {
                    generator: alg.generator_name(g),
                    exponent: e,
                });
            }
        }
        Ok(Monomial { exps })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Σ α_g·deg(g) in ℤ₂ⁿ.
    pub fn degree(&self, alg: &AlgebraSpec) -> Degree {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e % 2 == 1)
            .fold(alg.zero_degree(), |acc, (g, _)| acc + alg.generator_degree(g))
    }

    /// Canonical product `self · other`: the resulting monomial and whether
    /// the reordering sign is negative. `None` when the product vanishes,
    /// either through an odd generator appearing twice or through the cap.
    pub fn mul(&self, other: &Monomial, alg: &AlgebraSpec) -> Option<(Monomial, bool)> {
        let g = self.exps.len();
        let mut total = 0u32;
        let mut exps = Vec::with_capacity(g);
        for u in 0..g {
            let e = self.exps[u] + other.exps[u];
            if e > 1 && alg.generator_degree(u).is_nilpotent_parity() {
                return None;
            }
            total += e;
            exps.push(e);
        }
        if total > alg.cap {
            return None;
        }
        // Moving θ_v^{b_v} of `other` left past θ_u^{a_u} (u > v) of `self`
        // contributes ⟨γ_u, γ_v⟩·a_u·b_v.
        let mut negative = false;
        let mut odd_from_other: Vec<usize> = Vec::new();
        for v in 0..g {
            if other.exps[v] % 2 == 1 {
                odd_from_other.push(v);
            }
        }
        if !odd_from_other.is_empty() {
            for u in 0..g {
                if self.exps[u] % 2 == 0 {
                    continue;
                }
                for &v in &odd_from_other {
                    if v >= u {
                        break;
                    }
                    if alg.odd_pair(u, v) {
                        negative = !negative;
                    }
                }
            }
        }
        Some((Monomial { exps }, negative))
    }

    pub fn display(&self, alg: &AlgebraSpec) -> String {
        let mut parts = Vec::new();
        for (g, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(alg.generator_name(g)),
                _ => parts.push(format!("{}^{}", alg.generator_name(g), e)),
            }
        }
        parts.join(" ")
    }
}

/// Total degree first, then reverse lexicographic on exponents so that
/// earlier generators come first (`011` before `101`).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of a truncated ℤ₂ⁿ-Grassmann algebra.
#[derive(Debug, Clone)]
pub struct GElement {
    alg: Algebra,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for GElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg) && self.terms == other.terms
    }
}
impl Eq for GElement {}

impl GElement {
    pub fn zero(alg: &Algebra) -> GElement {
        GElement {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &Algebra) -> GElement {
        GElement::constant(alg, Rational::one())
    }

    pub fn constant(alg: &Algebra, c: Rational) -> GElement {
        GElement::from_term(alg, Monomial::unit(alg.num_generators()), c)
    }

    pub fn from_int(alg: &Algebra, c: i64) -> GElement {
        GElement::constant(alg, int(c))
    }

    /// The generator θ_j^ℓ (ℓ zero-based).
    pub fn generator(alg: &Algebra, j: usize, l: usize) -> Result<GElement> {
        let g = alg.generator_index(j, l)?;
        Ok(GElement::generator_at(alg, g))
    }

    /// Generator by canonical position.
    pub fn generator_at(alg: &Algebra, g: usize) -> GElement {
        let mut exps = vec![0; alg.num_generators()];
        exps[g] = 1;
        GElement::from_term(alg, Monomial { exps }, Rational::one())
    }

    /// A single term; dropped if it exceeds the cap or is zero.
    pub fn from_term(alg: &Algebra, m: Monomial, c: Rational) -> GElement {
        let mut e = GElement::zero(alg);
        if !c.is_zero() && m.total_degree() <= alg.cap {
            e.terms.insert(m, c);
        }
        e
    }

    /// Sums terms, validating each monomial and truncating at the cap.
    pub fn from_terms<I>(alg: &Algebra, terms: I) -> Result<GElement>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut e = GElement::zero(alg);
        for (exps, c) in terms {
            let m = Monomial::new(alg, exps)?;
            if m.total_degree() <= alg.cap {
                e.add_term(m, c);
            }
        }
        Ok(e)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn same_algebra(&self, other: &GElement) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// ε(a): the coefficient of the empty monomial.
    pub fn body(&self) -> Rational {
        self.coefficient(&Monomial::unit(self.alg.num_generators()))
    }

    /// å = a − ε(a).
    pub fn soul(&self) -> GElement {
        let mut s = self.clone();
        s.terms.remove(&Monomial::unit(self.alg.num_generators()));
        s
    }

    pub fn homogeneous_part(&self, g: Degree) -> GElement {
        GElement {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(&self.alg) == g)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<Degree, GElement> {
        let mut parts: BTreeMap<Degree, GElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.degree(&self.alg))
                .or_insert_with(|| GElement::zero(&self.alg))
                .terms
                .insert(m.clone(), c.clone());
        }
        parts
    }

    /// `Ok(None)` for zero, `Ok(Some(g))` when all terms have degree g.
    pub fn homogeneous_degree(&self) -> Result<Option<Degree>> {
        let mut found: Option<Degree> = None;
        for m in self.terms.keys() {
            let g = m.degree(&self.alg);
            match found {
                None => found = Some(g),
                Some(h) if h != g => {
                    return Err(Error::NonHomogeneous(format!(
                        "element `{self}` mixes degrees {h} and {g}"
                    )))
                }
                _ => {}
            }
        }
        Ok(found)
    }

    /// True for zero and for elements whose terms all have degree `g`.
    pub fn is_homogeneous_of(&self, g: Degree) -> bool {
        self.terms.keys().all(|m| m.degree(&self.alg) == g)
    }

    pub fn scale(&self, c: &Rational) -> GElement {
        if c.is_zero() {
            return GElement::zero(&self.alg);
        }
        GElement {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn try_add(&self, other: &GElement) -> Result<GElement> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// The graded product, truncated at the cap.
    pub fn gmul(&self, other: &GElement) -> Result<GElement> {
        self.same_algebra(other)?;
        let mut out = GElement::zero(&self.alg);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.mul(mb, &self.alg) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> GElement {
        let mut acc = GElement::one(&self.alg);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// λ₀⁻¹·Σ_{k≤cap} (−λ₀⁻¹·å)^k.
    pub fn g_invert(&self) -> Result<GElement> {
        let b = self.body();
        if b.is_zero() {
            return Err(Error::NonInvertible);
        }
        let binv = b.recip();
        let step = self.soul().scale(&-binv.clone());
        let mut power = GElement::one(&self.alg);
        let mut sum = GElement::one(&self.alg);
        for _ in 0..self.alg.cap {
            power = &power * &step;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(&binv))
    }

    /// Image under the quotient map to the same generators with a smaller cap.
    pub fn truncate_to(&self, target: &Algebra) -> Result<GElement> {
        if target.rank() != self.alg.rank()
            || target.nonzero_counts() != self.alg.nonzero_counts()
            || target.cap() > self.alg.cap()
        {
            return Err(Error::AlgebraMismatch);
        }
        Ok(GElement {
            alg: target.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= target.cap())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }
}

// Operator forms panic on algebra mismatch; use the `try_*`/`gmul` methods for
// fallible arithmetic.
impl Add for &GElement {
    type Output = GElement;
    fn add(self, rhs: &GElement) -> GElement {
        self.try_add(rhs).expect("algebra mismatch in addition")
    }
}

impl Sub for &GElement {
    type Output = GElement;
    fn sub(self, rhs: &GElement) -> GElement {
        self.try_add(&-rhs).expect("algebra mismatch in subtraction")
    }
}

impl Mul for &GElement {
    type Output = GElement;
    fn mul(self, rhs: &GElement) -> GElement {
        self.gmul(rhs).expect("algebra mismatch in product")
    }
}

impl Neg for &GElement {
    type Output = GElement;
    fn neg(self) -> GElement {
        GElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let coeff = crate::text::format_coefficient(&a, self.alg.rank());
            if m.is_unit() {
                write!(f, "{coeff}")?;
            } else if a.is_one() {
                write!(f, "{}", m.display(&self.alg))?;
            } else {
                write!(f, "{coeff} {}", m.display(&self.alg))?;
            }
        }
        Ok(())
    }
}

/// A ℤ₂ⁿ-algebra morphism Λ → Λ′ fixed by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Algebra,
    target: Algebra,
    images: Vec<GElement>,
}

impl AlgebraMorphism {
    /// `images[g]` is the image of the g-th canonical generator of `source`.
    /// Each image must be homogeneous of that generator's degree; since the
    /// degree is nonzero this also forces a zero body.
    pub fn new(source: &Algebra, target: &Algebra, images: Vec<GElement>) -> Result<Self> {
        if source.rank() != target.rank() {
            return Err(Error::DimensionMismatch {
                expected: source.rank(),
                found: target.rank(),
            });
        }
        if images.len() != source.num_generators() {
            return Err(Error::ShapeMismatch(format!(
                "{} generator images for {} generators",
                images.len(),
                source.num_generators()
            )));
        }
        for (g, img) in images.iter().enumerate() {
            if **img.algebra() != **target {
                return Err(Error::AlgebraMismatch);
            }
            let want = source.generator_degree(g);
            if !img.is_homogeneous_of(want) || !img.body().is_zero() {
                return Err(Error::DegreeViolation(format!(
                    "image `{img}` of generator {} is not a soul element of degree {want}",
                    source.generator_name(g)
                )));
            }
        }
        Ok(AlgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(alg: &Algebra) -> AlgebraMorphism {
        let images = (0..alg.num_generators())
            .map(|g| GElement::generator_at(alg, g))
            .collect();
        AlgebraMorphism {
            source: alg.clone(),
            target: alg.clone(),
            images,
        }
    }

    /// All generators to zero: Λ → ℝ ⊂ Λ′.
    pub fn to_body(source: &Algebra, target: &Algebra) -> Result<AlgebraMorphism> {
        let images = vec![GElement::zero(target); source.num_generators()];
        AlgebraMorphism::new(source, target, images)
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn image(&self, g: usize) -> &GElement {
        &self.images[g]
    }

    pub fn apply(&self, a: &GElement) -> Result<GElement> {
        if **a.algebra() != *self.source {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = GElement::zero(&self.target);
        for (m, c) in a.terms() {
            let mut t = GElement::constant(&self.target, c.clone());
            for (g, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &self.images[g].pow(e);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if *first.target != *self.source {
            return Err(Error::AlgebraMismatch);
        }
        let images = first
            .images
            .iter()
            .map(|img| self.apply(img))
            .collect::<Result<Vec<_>>>()?;
        AlgebraMorphism::new(&first.source, &self.target, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn super_alg(gens: usize, cap: u32) -> Algebra {
        AlgebraSpec::new(1, &[gens], cap).unwrap()
    }

    /// n=2 with ξ:01, θ:10, z:11.
    fn xtz(cap: u32) -> (Algebra, GElement, GElement, GElement) {
        let alg = AlgebraSpec::new(2, &[1, 1, 1], cap).unwrap();
        let xi = GElement::generator(&alg, 1, 0).unwrap();
        let th = GElement::generator(&alg, 2, 0).unwrap();
        let z = GElement::generator(&alg, 3, 0).unwrap();
        (alg, xi, th, z)
    }

    #[test]
    fn odd_generators_anticommute() {
        let alg = super_alg(2, 4);
        let t1 = GElement::generator(&alg, 1, 0).unwrap();
        let t2 = GElement::generator(&alg, 1, 1).unwrap();
        assert_eq!(&t2 * &t1, -&(&t1 * &t2));
        assert_eq!((&t2 * &t1).to_string(), "-11 12");
        assert!((&t1 * &t1).is_zero());
    }

    #[test]
    fn orthogonal_degrees_commute() {
        let (_, xi, th, _) = xtz(4);
        assert_eq!(&th * &xi, &xi * &th);
        assert_eq!((&th * &xi).to_string(), "011 101");
    }

    #[test]
    fn even_self_pairing_is_not_nilpotent() {
        let (_, _, _, z) = xtz(4);
        let zz = &z * &z;
        assert!(!zz.is_zero());
        assert_eq!(zz.to_string(), "111^2");
    }

    #[test]
    fn body_values() {
        let (alg, xi, th, _) = xtz(3);
        let a = &GElement::constant(&alg, rat(3, 2)) + &(&xi * &th);
        assert_eq!(a.body(), rat(3, 2));
        assert!(xi.body().is_zero());
        assert_eq!(GElement::one(&alg).body(), int(1));
    }

    #[test]
    fn homogeneous_parts() {
        let (alg, xi, th, z) = xtz(3);
        let a = &(&GElement::one(&alg) + &xi) + &(&th * &z);
        let g01 = Degree::parse_bits("01").unwrap();
        assert_eq!(a.homogeneous_part(g01), &xi + &(&th * &z));
        assert!(xi.homogeneous_part(Degree::zero(2)).is_zero());
        let parts = GElement::one(&alg).homogeneous_parts();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&Degree::zero(2)], GElement::one(&alg));
        let total = a
            .homogeneous_parts()
            .values()
            .fold(GElement::zero(&alg), |acc, p| &acc + p);
        assert_eq!(total, a);
    }

    #[test]
    fn inverse_of_even_series() {
        let (alg, _, _, z) = xtz(3);
        assert_eq!(
            GElement::from_int(&alg, 2).g_invert().unwrap(),
            GElement::constant(&alg, rat(1, 2))
        );
        let a = &GElement::from_int(&alg, 2) + &z;
        let inv = a.g_invert().unwrap();
        let expected = GElement::from_terms(
            &alg,
            vec![
                (vec![0, 0, 0], rat(1, 2)),
                (vec![0, 0, 1], rat(-1, 4)),
                (vec![0, 0, 2], rat(1, 8)),
                (vec![0, 0, 3], rat(-1, 16)),
            ],
        )
        .unwrap();
        assert_eq!(inv, expected);
        assert_eq!(&a * &inv, GElement::one(&alg));
        assert_eq!(&inv * &a, GElement::one(&alg));
    }

    #[test]
    fn soul_is_not_invertible() {
        let (_, xi, _, _) = xtz(3);
        assert_eq!(xi.g_invert(), Err(Error::NonInvertible));
    }

    #[test]
    fn cap_truncates_products() {
        let (_, _, _, z) = xtz(2);
        assert!(z.pow(3).is_zero());
        assert!(!z.pow(2).is_zero());
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let a = GElement::one(&super_alg(1, 2));
        let b = GElement::one(&super_alg(1, 3));
        assert_eq!(a.gmul(&b), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn parity_is_enforced_on_construction() {
        let alg = super_alg(1, 3);
        assert!(matches!(
            Monomial::new(&alg, vec![2]),
            Err(Error::ParityViolation { .. })
        ));
    }

    #[test]
    fn morphism_examples() {
        let (alg, xi, th, _) = xtz(3);
        let a = &GElement::from_int(&alg, 5) + &(&xi * &th);
        let kill = AlgebraMorphism::to_body(&alg, &alg).unwrap();
        assert_eq!(kill.apply(&a).unwrap(), GElement::from_int(&alg, 5));
        assert_eq!(AlgebraMorphism::identity(&alg).apply(&a).unwrap(), a);

        let s = super_alg(2, 3);
        let t1 = GElement::generator(&s, 1, 0).unwrap();
        let t2 = GElement::generator(&s, 1, 1).unwrap();
        let phi = AlgebraMorphism::new(&s, &s, vec![&t1 + &t2, t2.clone()]).unwrap();
        assert_eq!(phi.apply(&t1).unwrap(), &t1 + &t2);
        // θ₁θ₂ ↦ (θ₁+θ₂)θ₂ = θ₁θ₂
        assert_eq!(phi.apply(&(&t1 * &t2)).unwrap(), &t1 * &t2);
    }

    #[test]
    fn morphism_rejects_wrong_degree_images() {
        let (alg, xi, th, _) = xtz(3);
        let bad = vec![th.clone(), xi.clone(), GElement::zero(&alg)];
        assert!(matches!(
            AlgebraMorphism::new(&alg, &alg, bad),
            Err(Error::DegreeViolation(_))
        ));
        let constant = vec![GElement::one(&alg), th, GElement::zero(&alg)];
        assert!(AlgebraMorphism::new(&alg, &alg, constant).is_err());
    }

    #[test]
    fn display_is_canonical() {
        let (alg, xi, th, z) = xtz(3);
        let e = &(&(&GElement::constant(&alg, rat(3, 2)) + &(&xi * &th).scale(&int(2)))
            - &(&z * &z))
            + &GElement::zero(&alg);
        assert_eq!(e.to_string(), "3/2 + 2 011 101 - 111^2");
        assert_eq!(GElement::zero(&alg).to_string(), "0");
        assert_eq!(alg.to_string(), "algebra n=2 gens 01*1 10*1 11*1 cap=3");
    }
}
