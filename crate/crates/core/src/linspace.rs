//! Graded vector spaces at the basis level.
//!
//! A space V = ⊕ V_i is described by its graded dimension. The graded
//! symmetric algebra of V_* (the nonzero-degree part) is handled through its
//! word basis; the flat isomorphism identifies it with the Grassmann algebra
//! having one generator per basis vector. Degree-0 linear maps are
//! block-diagonal real matrices and correspond to linear morphisms of the
//! associated Cartesian domains.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::grassmann::{Algebra, GElement, Rational};
use crate::linalg::RatMatrix;
use crate::series::{formal_algebra, Morphism, Series};
use crate::shape::GradedShape;

/// A word b_{g₁}⊙⋯⊙b_{g_k} of basis vectors of V_*, listed by canonical
/// generator index with g₁ ≤ ⋯ ≤ g_k (strictly for odd self-pairing).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymMonomial {
    factors: Vec<usize>,
}

impl SymMonomial {
    pub fn unit() -> SymMonomial {
        SymMonomial { factors: Vec::new() }
    }

    /// Validates the admissibility of an already ordered word.
    pub fn new(space: &Algebra, factors: Vec<usize>) -> Result<SymMonomial> {
        for w in factors.windows(2) {
            let strict = space.generator_degree(w[0]).is_nilpotent_parity();
            if w[0] > w[1] || (strict && w[0] == w[1]) {
                return Err(Error::DegreeViolation(format!(
                    "word {factors:?} is not admissible"
                )));
            }
        }
        if factors.iter().any(|&g| g >= space.num_generators()) {
            return Err(Error::ShapeMismatch("factor out of range".into()));
        }
        Ok(SymMonomial { factors })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn display(&self, space: &Algebra) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        let names: Vec<String> = self
            .factors
            .iter()
            .map(|&g| format!("b{}", space.generator_name(g)))
            .collect();
        names.join(".")
    }
}

/// All admissible words of length `k` over the basis described by `space`,
/// in lexicographic order.
pub fn sym_basis(space: &Algebra, k: usize) -> Vec<SymMonomial> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(k);
    extend_words(space, k, 0, &mut word, &mut out);
    out
}

fn extend_words(
    space: &Algebra,
    k: usize,
    start: usize,
    word: &mut Vec<usize>,
    out: &mut Vec<SymMonomial>,
) {
    if word.len() == k {
        out.push(SymMonomial {
            factors: word.clone(),
        });
        return;
    }
    for g in start..space.num_generators() {
        let next = if space.generator_degree(g).is_nilpotent_parity() {
            g + 1
        } else {
            g
        };
        word.push(g);
        extend_words(space, k, next, word, out);
        word.pop();
    }
}

/// Element of the truncated graded symmetric algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymElement {
    space: Algebra,
    terms: BTreeMap<SymMonomial, Rational>,
}

impl SymElement {
    pub fn zero(space: &Algebra) -> SymElement {
        SymElement {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: &Algebra) -> SymElement {
        SymElement::from_word(space, SymMonomial::unit(), Rational::one())
    }

    pub fn from_word(space: &Algebra, w: SymMonomial, c: Rational) -> SymElement {
        let mut e = SymElement::zero(space);
        if w.len() as u32 <= space.cap() {
            e.add_term(w, c);
        }
        e
    }

    /// The basis vector with canonical index `g`.
    pub fn basis_vector(space: &Algebra, g: usize) -> SymElement {
        SymElement::from_word(space, SymMonomial { factors: vec![g] }, Rational::one())
    }

    fn add_term(&mut self, w: SymMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn space(&self) -> &Algebra {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn try_add(&self, other: &SymElement) -> Result<SymElement> {
        if *self.space != *other.space {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> SymElement {
        let mut out = SymElement::zero(&self.space);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c}) {}", w.display(&self.space)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sorts a word by adjacent transpositions, each contributing the Koszul
/// sign of the swapped letters; `None` when an odd letter repeats.
fn normalize_word(space: &Algebra, mut word: Vec<usize>) -> Option<(SymMonomial, bool)> {
    let mut negative = false;
    let n = word.len();
    for i in 0..n {
        for j in 0..n - 1 - i {
            if word[j] > word[j + 1] {
                let (a, b) = (space.generator_degree(word[j]), space.generator_degree(word[j + 1]));
                if a.odd_pairing(b) {
                    negative = !negative;
                }
                word.swap(j, j + 1);
            }
        }
    }
    for w in word.windows(2) {
        if w[0] == w[1] && space.generator_degree(w[0]).is_nilpotent_parity() {
            return None;
        }
    }
    Some((SymMonomial { factors: word }, negative))
}

/// Product u ⊙ v: concatenation followed by signed normalization, truncated
/// at the cap of `space`.
pub fn sym_mul(u: &SymElement, v: &SymElement) -> Result<SymElement> {
    if *u.space != *v.space {
        return Err(Error::AlgebraMismatch);
    }
    let space = &u.space;
    let mut out = SymElement::zero(space);
    for (wa, ca) in &u.terms {
        for (wb, cb) in &v.terms {
            if (wa.len() + wb.len()) as u32 > space.cap() {
                continue;
            }
            let word = wa.factors.iter().chain(&wb.factors).copied().collect();
            if let Some((w, negative)) = normalize_word(space, word) {
                let c = ca * cb;
                out.add_term(w, if negative { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// The flat isomorphism: a word maps to the Grassmann monomial with the same
/// multiplicities. `space` doubles as the target algebra.
pub fn flat_iso(u: &SymElement) -> GElement {
    let space = &u.space;
    let mut out = GElement::zero(space);
    for (w, c) in &u.terms {
        let mut exps = vec![0u32; space.num_generators()];
        for &g in &w.factors {
            exps[g] += 1;
        }
        let term = GElement::from_terms(space, [(exps, c.clone())]).expect("admissible word");
        out = &out + &term;
    }
    out
}

pub fn flat_inverse(a: &GElement) -> SymElement {
    let space = a.algebra();
    let mut out = SymElement::zero(space);
    for (m, c) in a.terms() {
        let factors = m
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(g, &e)| std::iter::repeat(g).take(e as usize))
            .collect();
        out.add_term(SymMonomial { factors }, c.clone());
    }
    out
}

/// A degree-0 linear map ℝ^{p|q̲} → ℝ^{r|s̲}: one real s_i × q_i block per
/// degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDiagMap {
    source: GradedShape,
    target: GradedShape,
    blocks: Vec<RatMatrix>,
}

impl BlockDiagMap {
    pub fn new(source: GradedShape, target: GradedShape, blocks: Vec<RatMatrix>) -> Result<Self> {
        source.same_rank(&target)?;
        if blocks.len() != source.num_blocks() {
            return Err(Error::ShapeMismatch(format!(
                "{} blocks for {} degrees",
                blocks.len(),
                source.num_blocks()
            )));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.rows() != target.count(i) || b.cols() != source.count(i) {
                return Err(Error::ShapeMismatch(format!(
                    "block {} must be {}x{}, got {}x{}",
                    source.degree(i),
                    target.count(i),
                    source.count(i),
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(BlockDiagMap {
            source,
            target,
            blocks,
        })
    }

    pub fn identity(shape: &GradedShape) -> BlockDiagMap {
        let blocks = shape.counts().iter().map(|&q| RatMatrix::identity(q)).collect();
        BlockDiagMap {
            source: shape.clone(),
            target: shape.clone(),
            blocks,
        }
    }

    /// Reads the diagonal blocks of a full matrix, rejecting nonzero entries
    /// outside them.
    pub fn from_full(source: GradedShape, target: GradedShape, m: &RatMatrix) -> Result<Self> {
        if m.rows() != target.total() || m.cols() != source.total() {
            return Err(Error::ShapeMismatch("full matrix has the wrong size".into()));
        }
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if target.block_of(r) != source.block_of(c) && !m.get(r, c).is_zero() {
                    return Err(Error::DegreeViolation(format!(
                        "entry ({},{}) lies outside the diagonal blocks",
                        r + 1,
                        c + 1
                    )));
                }
            }
        }
        let blocks = (0..source.num_blocks())
            .map(|i| {
                let (ro, co) = (target.offset(i), source.offset(i));
                let (rs, cs) = (target.count(i), source.count(i));
                RatMatrix::from_rows(
                    rs,
                    cs,
                    (0..rs * cs)
                        .map(|k| m.get(ro + k / cs, co + k % cs).clone())
                        .collect(),
                )
            })
            .collect();
        BlockDiagMap::new(source, target, blocks)
    }

    pub fn source_shape(&self) -> &GradedShape {
        &self.source
    }

    pub fn target_shape(&self) -> &GradedShape {
        &self.target
    }

    pub fn blocks(&self) -> &[RatMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &RatMatrix {
        &self.blocks[i]
    }

    pub fn to_full(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.target.total(), self.source.total());
        for (i, b) in self.blocks.iter().enumerate() {
            let (ro, co) = (self.target.offset(i), self.source.offset(i));
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    m.set(ro + r, co + c, b.get(r, c).clone());
                }
            }
        }
        m
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &BlockDiagMap) -> Result<BlockDiagMap> {
        if first.target != self.source {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: {} does not match {}",
                first.target, self.source
            )));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&first.blocks)
            .map(|(a, b)| a * b)
            .collect();
        BlockDiagMap::new(first.source.clone(), self.target.clone(), blocks)
    }
}

impl fmt::Display for BlockDiagMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "linmap src={} tgt={}", self.source, self.target)?;
        for (i, b) in self.blocks.iter().enumerate() {
            writeln!(f, "block {}:", self.source.degree(i))?;
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// The linear morphism of L: y^ℓ ↦ Σ_k (L₀)_{ℓk} x^k and
/// η_j^ℓ ↦ Σ_k (L_j)_{ℓk} ξ_j^k.
pub fn manifoldify(l: &BlockDiagMap, cap: u32) -> Result<Morphism> {
    let src = &l.source;
    let formal = formal_algebra(src, cap)?;
    let p = src.count(0);
    let mut pullbacks = Vec::with_capacity(l.target.total());
    for (i, b) in l.blocks.iter().enumerate() {
        for row in 0..b.rows() {
            let mut s = Series::zero(p, &formal);
            for k in 0..b.cols() {
                let c = b.get(row, k);
                if !c.is_zero() {
                    let coord = Morphism::coordinate(src, &formal, src.offset(i) + k);
                    s = s.try_add(&coord.scale(c))?;
                }
            }
            pullbacks.push(s);
        }
    }
    Morphism::new(src.clone(), l.target.clone(), cap, pullbacks)
}

/// Syntactic linearity: every pullback is a real combination of source
/// coordinates of its own degree block.
pub fn is_linear_morphism(phi: &Morphism) -> bool {
    linear_coefficients(phi).is_ok()
}

/// Inverse of [`manifoldify`] on linear morphisms.
pub fn vectorify(phi: &Morphism) -> Result<BlockDiagMap> {
    let coeffs = linear_coefficients(phi)?;
    let (src, tgt) = (phi.source(), phi.target());
    let blocks = (0..src.num_blocks())
        .map(|i| {
            let mut b = RatMatrix::zeros(tgt.count(i), src.count(i));
            for row in 0..tgt.count(i) {
                for (k, c) in &coeffs[tgt.offset(i) + row] {
                    b.set(row, k - src.offset(i), c.clone());
                }
            }
            b
        })
        .collect();
    BlockDiagMap::new(src.clone(), tgt.clone(), blocks)
}

/// For each pullback, `(source coordinate, coefficient)` pairs.
fn linear_coefficients(phi: &Morphism) -> Result<Vec<Vec<(usize, Rational)>>> {
    let (src, tgt) = (phi.source(), phi.target());
    let p = src.count(0);
    let mut out = Vec::with_capacity(tgt.total());
    for (slot, s) in phi.pullbacks().iter().enumerate() {
        let block = tgt.block_of(slot);
        let mut row = Vec::new();
        for (key, c) in s.terms() {
            let base_deg: u32 = key.base.iter().sum();
            let formal_deg = key.formal.total_degree();
            let coord = if base_deg == 1 && formal_deg == 0 {
                key.base.iter().position(|&e| e == 1).expect("degree one")
            } else if base_deg == 0 && formal_deg == 1 {
                p + key.formal.exponents().iter().position(|&e| e == 1).expect("degree one")
            } else {
                return Err(Error::NotLinear(format!(
                    "pullback of {} is `{s}`",
                    tgt.coord_name(slot, "y")
                )));
            };
            if src.block_of(coord) != block {
                return Err(Error::NotLinear(format!(
                    "pullback of {} mixes degree blocks",
                    tgt.coord_name(slot, "y")
                )));
            }
            row.push((coord, c.clone()));
        }
        out.push(row);
    }
    Ok(out)
}
