//! Polynomial-coefficient morphisms between Cartesian ℤ₂ⁿ-domains.
//!
//! A morphism ℝ^{p|q̲} → ℝ^{r|s̲} is given by the pullbacks of the target
//! coordinates, each a finite sum Σ_α f_α(x)·ξ^α with f_α a rational
//! polynomial in the p base variables and ξ^α a formal monomial in the
//! graded source coordinates, truncated at a formal-degree cap.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::grassmann::{Algebra, AlgebraSpec, GElement, Monomial, Rational};
use crate::points::LambdaPoint;
use crate::shape::GradedShape;

/// Monomial x^β ξ^α of a series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeriesKey {
    pub base: Vec<u32>,
    pub formal: Monomial,
}

/// Formal part first, then base part by total degree with earlier variables
/// first.
impl Ord for SeriesKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.formal.cmp(&other.formal).then_with(|| {
            let (a, b): (u32, u32) = (self.base.iter().sum(), other.base.iter().sum());
            a.cmp(&b).then_with(|| other.base.cmp(&self.base))
        })
    }
}

impl PartialOrd for SeriesKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of ℚ[x₁,…,x_p] ⊗ (truncated formal graded algebra).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    base_vars: usize,
    formal: Algebra,
    terms: BTreeMap<SeriesKey, Rational>,
}

impl Series {
    pub fn zero(base_vars: usize, formal: &Algebra) -> Series {
        Series {
            base_vars,
            formal: formal.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(base_vars: usize, formal: &Algebra, c: Rational) -> Series {
        let key = SeriesKey {
            base: vec![0; base_vars],
            formal: Monomial::unit(formal.num_generators()),
        };
        let mut s = Series::zero(base_vars, formal);
        s.add_term(key, c);
        s
    }

    /// The base variable x_{a+1}.
    pub fn base_var(base_vars: usize, formal: &Algebra, a: usize) -> Series {
        let mut base = vec![0; base_vars];
        base[a] = 1;
        let key = SeriesKey {
            base,
            formal: Monomial::unit(formal.num_generators()),
        };
        let mut s = Series::zero(base_vars, formal);
        s.add_term(key, Rational::one());
        s
    }

    /// The formal coordinate with canonical generator index `g`.
    pub fn formal_var(base_vars: usize, formal: &Algebra, g: usize) -> Series {
        let mut exps = vec![0; formal.num_generators()];
        exps[g] = 1;
        let key = SeriesKey {
            base: vec![0; base_vars],
            formal: Monomial::new(formal, exps).expect("single generator"),
        };
        let mut s = Series::zero(base_vars, formal);
        if formal.cap() >= 1 {
            s.add_term(key, Rational::one());
        }
        s
    }

    /// Adds `c·x^base·ξ^formal`; validates exponent lengths and parity and
    /// drops terms above the cap.
    pub fn push_term(&mut self, base: Vec<u32>, formal: Vec<u32>, c: Rational) -> Result<()> {
        if base.len() != self.base_vars {
            return Err(Error::ShapeMismatch(format!(
                "{} base exponents for {} base variables",
                base.len(),
                self.base_vars
            )));
        }
        let formal = Monomial::new(&self.formal, formal)?;
        if formal.total_degree() <= self.formal.cap() {
            self.add_term(SeriesKey { base, formal }, c);
        }
        Ok(())
    }

    fn add_term(&mut self, key: SeriesKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn base_vars(&self) -> usize {
        self.base_vars
    }

    pub fn formal_algebra(&self) -> &Algebra {
        &self.formal
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SeriesKey, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn compatible(&self, other: &Series) -> Result<()> {
        if self.base_vars != other.base_vars || *self.formal != *other.formal {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Series) -> Result<Series> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Series {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Series {
        let mut out = Series::zero(self.base_vars, &self.formal);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn try_mul(&self, other: &Series) -> Result<Series> {
        self.compatible(other)?;
        let mut out = Series::zero(self.base_vars, &self.formal);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let Some((formal, negative)) = ka.formal.mul(&kb.formal, &self.formal) else {
                    continue;
                };
                let base = ka.base.iter().zip(&kb.base).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                out.add_term(SeriesKey { base, formal }, if negative { -c } else { c });
            }
        }
        Ok(out)
    }

    /// ℤ₂ⁿ-degrees of the formal parts of all terms.
    pub fn term_degrees(&self) -> Vec<Degree> {
        self.terms
            .keys()
            .map(|k| k.formal.degree(&self.formal))
            .collect()
    }

    /// Image under the ring morphism x_a ↦ base[a], ξ_g ↦ formal[g].
    ///
    /// The images of the formal coordinates must carry the degrees of those
    /// coordinates for the result to be meaningful; callers check this.
    fn substitute<R: SubstRing>(&self, unit: &R, base: &[R], formal: &[R]) -> R {
        let mut base_pows: Vec<Vec<R>> = base.iter().map(|b| vec![unit.clone(), b.clone()]).collect();
        let mut formal_pows: Vec<Vec<R>> =
            formal.iter().map(|f| vec![unit.clone(), f.clone()]).collect();
        let mut acc = unit.zero_like();
        for (key, c) in &self.terms {
            let mut t = unit.scale_by(c);
            for (a, &e) in key.base.iter().enumerate() {
                if e > 0 {
                    t = t.times(power(&mut base_pows[a], e));
                }
            }
            for (g, &e) in key.formal.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.times(power(&mut formal_pows[g], e));
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }
}

fn power<R: SubstRing>(cache: &mut Vec<R>, e: u32) -> &R {
    while cache.len() <= e as usize {
        let next = cache.last().expect("nonempty").times(&cache[1]);
        cache.push(next);
    }
    &cache[e as usize]
}

/// The operations needed to push a series through a substitution.
trait SubstRing: Clone {
    fn zero_like(&self) -> Self;
    fn scale_by(&self, c: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
}

impl SubstRing for GElement {
    fn zero_like(&self) -> Self {
        GElement::zero(self.algebra())
    }
    fn scale_by(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl SubstRing for Series {
    fn zero_like(&self) -> Self {
        Series::zero(self.base_vars, &self.formal)
    }
    fn scale_by(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn plus(&self, other: &Self) -> Self {
        self.try_add(other).expect("compatible series")
    }
    fn times(&self, other: &Self) -> Self {
        self.try_mul(other).expect("compatible series")
    }
}

impl Series {
    /// Canonical text with base variables named `<prefix>1`, `<prefix>2`, ….
    pub fn display_with(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (key, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            out.push_str(match (i, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let mut factors: Vec<String> = Vec::new();
            for (a, &e) in key.base.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("{prefix}{}", a + 1)),
                    _ => factors.push(format!("{prefix}{}^{e}", a + 1)),
                }
            }
            if !key.formal.is_unit() {
                factors.push(key.formal.display(&self.formal));
            }
            let a = c.abs();
            if factors.is_empty() {
                out.push_str(&crate::text::format_coefficient(&a, self.formal.rank()));
            } else {
                if !a.is_one() {
                    out.push_str(&crate::text::format_coefficient(&a, self.formal.rank()));
                    out.push(' ');
                }
                out.push_str(&factors.join(" "));
            }
        }
        out
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

/// Pullback description of a morphism ℝ^{p|q̲} → ℝ^{r|s̲}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: GradedShape,
    target: GradedShape,
    cap: u32,
    formal: Algebra,
    pullbacks: Vec<Series>,
}

/// Formal coordinate algebra of `source` truncated at `cap`.
pub fn formal_algebra(source: &GradedShape, cap: u32) -> Result<Algebra> {
    AlgebraSpec::new(source.rank(), &source.counts()[1..], cap)
}

impl Morphism {
    /// Validates pullback count, ring, and the degree law: every term of the
    /// pullback of a coordinate of degree γ has formal degree γ.
    pub fn new(
        source: GradedShape,
        target: GradedShape,
        cap: u32,
        pullbacks: Vec<Series>,
    ) -> Result<Morphism> {
        source.same_rank(&target)?;
        let formal = formal_algebra(&source, cap)?;
        if pullbacks.len() != target.total() {
            return Err(Error::InvalidMorphism(format!(
                "{} pullbacks for {} target coordinates",
                pullbacks.len(),
                target.total()
            )));
        }
        for (k, s) in pullbacks.iter().enumerate() {
            if s.base_vars != source.count(0) || *s.formal != *formal {
                return Err(Error::InvalidMorphism(format!(
                    "pullback of {} is not a series in the source coordinates",
                    target.coord_name(k, "y")
                )));
            }
            let want = target.coord_degree(k);
            if let Some(bad) = s.term_degrees().into_iter().find(|g| *g != want) {
                return Err(Error::DegreeViolation(format!(
                    "pullback of {} has a term of degree {bad}, expected {want}",
                    target.coord_name(k, "y")
                )));
            }
        }
        Ok(Morphism {
            source,
            target,
            cap,
            formal,
            pullbacks,
        })
    }

    /// The coordinate function of `shape` at position `k`, as a series.
    pub fn coordinate(shape: &GradedShape, formal: &Algebra, k: usize) -> Series {
        let p = shape.count(0);
        if k < p {
            Series::base_var(p, formal, k)
        } else {
            Series::formal_var(p, formal, k - p)
        }
    }

    pub fn identity(shape: &GradedShape, cap: u32) -> Result<Morphism> {
        let formal = formal_algebra(shape, cap)?;
        let pullbacks = (0..shape.total())
            .map(|k| Morphism::coordinate(shape, &formal, k))
            .collect();
        Morphism::new(shape.clone(), shape.clone(), cap, pullbacks)
    }

    pub fn source(&self) -> &GradedShape {
        &self.source
    }

    pub fn target(&self) -> &GradedShape {
        &self.target
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn formal_algebra(&self) -> &Algebra {
        &self.formal
    }

    pub fn pullback(&self, k: usize) -> &Series {
        &self.pullbacks[k]
    }

    pub fn pullbacks(&self) -> &[Series] {
        &self.pullbacks
    }

    /// Image of a Λ-point by direct substitution into the pullbacks.
    pub fn evaluate(&self, x: &LambdaPoint) -> Result<LambdaPoint> {
        if *x.shape() != self.source {
            return Err(Error::ShapeMismatch(format!(
                "morphism source is {}, point shape is {}",
                self.source,
                x.shape()
            )));
        }
        let alg = x.algebra();
        if self.cap < alg.cap() {
            return Err(Error::CapTooSmall {
                morphism: self.cap,
                algebra: alg.cap(),
            });
        }
        let p = self.source.count(0);
        let comps = x.components();
        let unit = GElement::one(alg);
        let out = self
            .pullbacks
            .iter()
            .map(|s| s.substitute(&unit, &comps[..p], &comps[p..]))
            .collect();
        LambdaPoint::new(alg, self.target.clone(), out)
    }

    /// `self ∘ first`: substitutes the pullbacks of `first` into those of
    /// `self`.
    pub fn compose(&self, first: &Morphism) -> Result<Morphism> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: {} does not match {}",
                first.target, self.source
            )));
        }
        if first.cap != self.cap {
            return Err(Error::CapMismatch(format!(
                "composing morphisms with caps {} and {}",
                self.cap, first.cap
            )));
        }
        let p = self.source.count(0);
        let unit = Series::constant(first.source.count(0), &first.formal, Rational::one());
        let pullbacks = self
            .pullbacks
            .iter()
            .map(|s| s.substitute(&unit, &first.pullbacks[..p], &first.pullbacks[p..]))
            .collect();
        Morphism::new(first.source.clone(), self.target.clone(), self.cap, pullbacks)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "morphism src={} tgt={} cap={}",
            self.source, self.target, self.cap
        )?;
        for (k, s) in self.pullbacks.iter().enumerate() {
            writeln!(f, "{} <- {}", self.target.coord_name(k, "y"), s)?;
        }
        Ok(())
    }
}
