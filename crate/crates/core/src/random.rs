//! Seeded samplers for randomized checks.
//!
//! Values are kept small (few terms, small integer or half-integer
//! coefficients) so exact arithmetic stays fast.

use num::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::degree::Degree;
use crate::gmatrix::GMatrix;
use crate::grassmann::{int, rat, Algebra, AlgebraMorphism, AlgebraSpec, GElement, Monomial, Rational};
use crate::linalg::RatMatrix;
use crate::linspace::BlockDiagMap;
use crate::points::LambdaPoint;
use crate::series::{formal_algebra, Morphism, Series};
use crate::shape::GradedShape;

/// All monomials of an algebra up to its cap, grouped by degree index.
pub fn monomials_by_degree(alg: &AlgebraSpec) -> Vec<Vec<Monomial>> {
    let mut out = vec![Vec::new(); 1 << alg.rank()];
    let mut exps = vec![0u32; alg.num_generators()];
    collect_monomials(alg, 0, 0, &mut exps, &mut out);
    for bucket in &mut out {
        bucket.sort();
    }
    out
}

fn collect_monomials(
    alg: &AlgebraSpec,
    g: usize,
    total: u32,
    exps: &mut Vec<u32>,
    out: &mut Vec<Vec<Monomial>>,
) {
    if g == alg.num_generators() {
        let m = Monomial::new(alg, exps.clone()).expect("admissible");
        out[m.degree(alg).index()].push(m);
        return;
    }
    let max = if alg.generator_degree(g).is_nilpotent_parity() {
        1
    } else {
        alg.cap()
    };
    for e in 0..=max.min(alg.cap() - total) {
        exps[g] = e;
        collect_monomials(alg, g + 1, total + e, exps, out);
    }
    exps[g] = 0;
}

/// Nonzero coefficient in {±1, ±2, ±3, ±1/2}.
pub fn coefficient<R: Rng>(rng: &mut R) -> Rational {
    let v = match rng.gen_range(0..7) {
        0 => rat(1, 2),
        k => int(k.min(3)),
    };
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

pub struct Sampler {
    alg: Algebra,
    by_degree: Vec<Vec<Monomial>>,
}

impl Sampler {
    pub fn new(alg: &Algebra) -> Sampler {
        Sampler {
            alg: alg.clone(),
            by_degree: monomials_by_degree(alg),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    /// Homogeneous element of degree `g` with up to three terms; may be zero.
    pub fn element<R: Rng>(&self, rng: &mut R, g: Degree) -> GElement {
        self.element_with(rng, g, 3, true)
    }

    /// Homogeneous element of degree `g` without body.
    pub fn soul<R: Rng>(&self, rng: &mut R, g: Degree, max_terms: usize) -> GElement {
        self.element_with(rng, g, max_terms, false)
    }

    fn element_with<R: Rng>(&self, rng: &mut R, g: Degree, max_terms: usize, body: bool) -> GElement {
        let pool: Vec<&Monomial> = self.by_degree[g.index()]
            .iter()
            .filter(|m| body || !m.is_unit())
            .collect();
        let mut e = GElement::zero(&self.alg);
        if pool.is_empty() {
            return e;
        }
        for _ in 0..rng.gen_range(0..=max_terms) {
            let m = (*pool.choose(rng).expect("nonempty")).clone();
            e = &e + &GElement::from_term(&self.alg, m, coefficient(rng));
        }
        e
    }

    pub fn point<R: Rng>(&self, rng: &mut R, shape: &GradedShape) -> LambdaPoint {
        let comps = shape
            .coord_degrees()
            .into_iter()
            .map(|g| self.element(rng, g))
            .collect();
        LambdaPoint::new(&self.alg, shape.clone(), comps).expect("degrees match")
    }

    /// Random matrix of the given degree; each entry is nonzero with
    /// probability about one half.
    pub fn matrix<R: Rng>(
        &self,
        rng: &mut R,
        rows: &GradedShape,
        cols: &GradedShape,
        degree: Degree,
    ) -> GMatrix {
        let data = (0..rows.total())
            .map(|r| {
                (0..cols.total())
                    .map(|c| {
                        let g = rows.coord_degree(r) + cols.coord_degree(c) + degree;
                        if rng.gen_bool(0.5) {
                            self.element_with(rng, g, 2, true)
                        } else {
                            GElement::zero(&self.alg)
                        }
                    })
                    .collect()
            })
            .collect();
        GMatrix::from_rows(&self.alg, rows.clone(), cols.clone(), degree, data).expect("degrees match")
    }

    /// Degree-0 square matrix whose diagonal bodies are drawn from
    /// `body_block`, plus random souls and off-diagonal entries.
    fn even_matrix<R: Rng, F>(&self, rng: &mut R, shape: &GradedShape, mut body_block: F) -> GMatrix
    where
        F: FnMut(&mut R, usize) -> RatMatrix,
    {
        let m = self.matrix(rng, shape, shape, self.alg.zero_degree());
        let mut data: Vec<Vec<GElement>> = (0..m.nrows())
            .map(|r| (0..m.ncols()).map(|c| m.entry(r, c).clone()).collect())
            .collect();
        for i in 0..shape.num_blocks() {
            let q = shape.count(i);
            if q == 0 {
                continue;
            }
            let body = body_block(rng, q);
            let o = shape.offset(i);
            for r in 0..q {
                for c in 0..q {
                    let e = &data[o + r][o + c];
                    let soul = e.soul();
                    data[o + r][o + c] = &soul + &GElement::constant(&self.alg, body.get(r, c).clone());
                }
            }
        }
        GMatrix::from_rows(&self.alg, shape.clone(), shape.clone(), self.alg.zero_degree(), data)
            .expect("degrees match")
    }

    /// Element of GL(p|q̲)(Λ).
    pub fn invertible_matrix<R: Rng>(&self, rng: &mut R, shape: &GradedShape) -> GMatrix {
        self.even_matrix(rng, shape, |rng, q| invertible_real(rng, q))
    }

    /// Degree-0 square matrix that is singular with substantial probability.
    pub fn even_matrix_any<R: Rng>(&self, rng: &mut R, shape: &GradedShape) -> GMatrix {
        self.even_matrix(rng, shape, |rng, q| {
            RatMatrix::from_rows(q, q, (0..q * q).map(|_| int(rng.gen_range(-1..=1))).collect())
        })
    }

    pub fn scalar_of_degree<R: Rng>(&self, rng: &mut R, g: Degree) -> GElement {
        self.element(rng, g)
    }
}

/// Random real matrix with small integer entries and nonzero determinant.
pub fn invertible_real<R: Rng>(rng: &mut R, q: usize) -> RatMatrix {
    loop {
        let m = RatMatrix::from_rows(q, q, (0..q * q).map(|_| int(rng.gen_range(-2..=2))).collect());
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn real_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> RatMatrix {
    RatMatrix::from_rows(
        rows,
        cols,
        (0..rows * cols).map(|_| int(rng.gen_range(-3..=3))).collect(),
    )
}

/// Algebra with rank in `1..=max_n`, up to `max_gens` generators in total
/// and cap in `1..=max_cap`.
pub fn algebra<R: Rng>(rng: &mut R, max_n: usize, max_gens: usize, max_cap: u32) -> Algebra {
    let n = rng.gen_range(1..=max_n);
    let slots = (1 << n) - 1;
    let mut counts = vec![0usize; slots];
    let total = rng.gen_range(1..=max_gens);
    for _ in 0..total {
        counts[rng.gen_range(0..slots)] += 1;
    }
    AlgebraSpec::new(n, &counts, rng.gen_range(1..=max_cap)).expect("valid counts")
}

/// Shape of rank `n` with total size in `1..=max_total`.
pub fn shape<R: Rng>(rng: &mut R, n: usize, max_total: usize) -> GradedShape {
    let slots = 1 << n;
    let mut counts = vec![0usize; slots];
    for _ in 0..rng.gen_range(1..=max_total) {
        counts[rng.gen_range(0..slots)] += 1;
    }
    GradedShape::new(counts).expect("power-of-two length")
}

pub fn block_diag<R: Rng>(rng: &mut R, source: &GradedShape, target: &GradedShape) -> BlockDiagMap {
    let blocks = (0..source.num_blocks())
        .map(|i| real_matrix(rng, target.count(i), source.count(i)))
        .collect();
    BlockDiagMap::new(source.clone(), target.clone(), blocks).expect("matching shapes")
}

/// Morphism with up to `max_terms` terms per pullback and base polynomials
/// of degree at most `max_base_degree`.
pub fn morphism<R: Rng>(
    rng: &mut R,
    source: &GradedShape,
    target: &GradedShape,
    cap: u32,
    max_terms: usize,
    max_base_degree: u32,
) -> Morphism {
    let formal = formal_algebra(source, cap).expect("valid shape");
    let by_degree = monomials_by_degree(&formal);
    let p = source.count(0);
    let pullbacks = target
        .coord_degrees()
        .into_iter()
        .map(|g| {
            let mut s = Series::zero(p, &formal);
            let pool = &by_degree[g.index()];
            if pool.is_empty() {
                return s;
            }
            for _ in 0..rng.gen_range(0..=max_terms) {
                let m = pool.choose(rng).expect("nonempty");
                let mut base = vec![0u32; p];
                if p > 0 {
                    for _ in 0..rng.gen_range(0..=max_base_degree) {
                        base[rng.gen_range(0..p)] += 1;
                    }
                }
                s.push_term(base, m.exponents().to_vec(), coefficient(rng))
                    .expect("admissible term");
            }
            s
        })
        .collect();
    Morphism::new(source.clone(), target.clone(), cap, pullbacks).expect("degree law holds")
}

/// Algebra morphism sending each generator of `source` to a random soul
/// element of `target` of the same degree.
pub fn algebra_morphism<R: Rng>(rng: &mut R, source: &Algebra, target: &Algebra) -> AlgebraMorphism {
    let sampler = Sampler::new(target);
    let images = (0..source.num_generators())
        .map(|g| sampler.soul(rng, source.generator_degree(g), 2))
        .collect();
    AlgebraMorphism::new(source, target, images).expect("degree-preserving images")
}
