//! Λ-points of Cartesian ℤ₂ⁿ-domains.
//!
//! A Λ-point of ℝ^{p|q̲} is a tuple (x^a, ξ^A) with x^a ∈ Λ₀ and ξ^A of the
//! degree of its coordinate. The same tuples represent values of the
//! zero-degree-rules functor V ↦ (Λ ⊗ V)₀ once a basis of V is fixed.

use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::grassmann::{Algebra, AlgebraMorphism, AlgebraSpec, GElement, Rational};
use crate::linalg::RatMatrix;
use crate::linspace::BlockDiagMap;
use crate::shape::GradedShape;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaPoint {
    alg: Algebra,
    shape: GradedShape,
    comps: Vec<GElement>,
}

impl LambdaPoint {
    /// Validates that component `k` is homogeneous of the degree of
    /// coordinate `k`.
    pub fn new(alg: &Algebra, shape: GradedShape, comps: Vec<GElement>) -> Result<LambdaPoint> {
        if shape.rank() != alg.rank() {
            return Err(Error::DimensionMismatch {
                expected: alg.rank(),
                found: shape.rank(),
            });
        }
        if comps.len() != shape.total() {
            return Err(Error::ShapeMismatch(format!(
                "{} components for shape {shape}",
                comps.len()
            )));
        }
        for (k, c) in comps.iter().enumerate() {
            if **c.algebra() != **alg {
                return Err(Error::AlgebraMismatch);
            }
            let want = shape.coord_degree(k);
            if !c.is_homogeneous_of(want) {
                return Err(Error::WrongDegreeComponent {
                    slot: k + 1,
                    expected: want.to_string(),
                });
            }
        }
        Ok(LambdaPoint {
            alg: alg.clone(),
            shape,
            comps,
        })
    }

    pub fn zero(alg: &Algebra, shape: GradedShape) -> LambdaPoint {
        let comps = vec![GElement::zero(alg); shape.total()];
        LambdaPoint {
            alg: alg.clone(),
            shape,
            comps,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn shape(&self) -> &GradedShape {
        &self.shape
    }

    pub fn components(&self) -> &[GElement] {
        &self.comps
    }

    pub fn component(&self, k: usize) -> &GElement {
        &self.comps[k]
    }

    fn check_same(&self, other: &LambdaPoint) -> Result<()> {
        if *self.alg != *other.alg {
            return Err(Error::AlgebraMismatch);
        }
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!(
                "points of shapes {} and {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LambdaPoint) -> Result<LambdaPoint> {
        self.check_same(other)?;
        Ok(LambdaPoint {
            alg: self.alg.clone(),
            shape: self.shape.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn neg(&self) -> LambdaPoint {
        LambdaPoint {
            alg: self.alg.clone(),
            shape: self.shape.clone(),
            comps: self.comps.iter().map(|c| -c).collect(),
        }
    }

    /// Point of the product domain: within every degree block the
    /// coordinates of `self` come first.
    pub fn concat(&self, other: &LambdaPoint) -> Result<LambdaPoint> {
        if *self.alg != *other.alg {
            return Err(Error::AlgebraMismatch);
        }
        let shape = self.shape.concat(&other.shape)?;
        let mut comps = Vec::with_capacity(shape.total());
        for i in 0..shape.num_blocks() {
            let (a, b) = (self.shape.offset(i), other.shape.offset(i));
            comps.extend_from_slice(&self.comps[a..a + self.shape.count(i)]);
            comps.extend_from_slice(&other.comps[b..b + other.shape.count(i)]);
        }
        Ok(LambdaPoint {
            alg: self.alg.clone(),
            shape,
            comps,
        })
    }
}

impl fmt::Display for LambdaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "point shape={}", self.shape)?;
        for c in &self.comps {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Functoriality in Λ: applies φ to every component.
pub fn point_map(phi: &AlgebraMorphism, x: &LambdaPoint) -> Result<LambdaPoint> {
    let comps = x
        .comps
        .iter()
        .map(|c| phi.apply(c))
        .collect::<Result<Vec<_>>>()?;
    LambdaPoint::new(phi.target(), x.shape.clone(), comps)
}

/// (𝟙_Λ ⊗ L)₀ on a value of V(Λ): block j of the output is L_j applied to
/// block j of `v`.
pub fn zdr_apply(l: &BlockDiagMap, v: &LambdaPoint) -> Result<LambdaPoint> {
    if *v.shape() != *l.source_shape() {
        return Err(Error::ShapeMismatch(format!(
            "map source is {}, value shape is {}",
            l.source_shape(),
            v.shape()
        )));
    }
    let src = l.source_shape();
    let tgt = l.target_shape();
    let mut comps = Vec::with_capacity(tgt.total());
    for i in 0..tgt.num_blocks() {
        let block = l.block(i);
        for row in 0..tgt.count(i) {
            let mut acc = GElement::zero(&v.alg);
            for k in 0..src.count(i) {
                let c = block.get(row, k);
                if !c.is_zero() {
                    acc = &acc + &v.comps[src.offset(i) + k].scale(c);
                }
            }
            comps.push(acc);
        }
    }
    LambdaPoint::new(&v.alg, tgt.clone(), comps)
}

/// Cap of the probe algebra Λ₁. Two would already expose squares of a
/// probe generator; three also exposes cubes of even-pairing generators.
pub const PROBE_CAP: u32 = 3;

/// Recovers the block-diagonal matrix of a natural transformation from its
/// component at Λ₁, the algebra with exactly one generator ϑ_j per nonzero
/// degree.
///
/// Probes are 1⊗b⁰_k and ϑ_j⊗b^j_ℓ. A natural component must send them to
/// 1⊗w and ϑ_j⊗w respectively; any other monomial, or a failure of
/// additivity or real scaling on the probes, yields `NotNatural`.
pub fn reconstruct_linear_map<F>(
    component: F,
    source: &GradedShape,
    target: &GradedShape,
) -> Result<BlockDiagMap>
where
    F: Fn(&LambdaPoint) -> Result<LambdaPoint>,
{
    source.same_rank(target)?;
    let lambda1 = AlgebraSpec::one_per_degree(source.rank(), PROBE_CAP)?;
    let probe = |i: usize, k: usize| -> LambdaPoint {
        let mut comps = vec![GElement::zero(&lambda1); source.total()];
        comps[source.offset(i) + k] = if i == 0 {
            GElement::one(&lambda1)
        } else {
            GElement::generator(&lambda1, i, 0).expect("one generator per degree")
        };
        LambdaPoint {
            alg: lambda1.clone(),
            shape: source.clone(),
            comps,
        }
    };
    let call = |x: &LambdaPoint| -> Result<LambdaPoint> {
        let y = component(x)?;
        if *y.shape() != *target || **y.algebra() != *lambda1 {
            return Err(Error::NotNatural(format!(
                "component returned a point of shape {} over another algebra or shape",
                y.shape()
            )));
        }
        Ok(y)
    };

    let mut blocks = Vec::with_capacity(source.num_blocks());
    let mut previous: Option<(LambdaPoint, LambdaPoint)> = None;
    for i in 0..source.num_blocks() {
        let unit = if i == 0 {
            GElement::one(&lambda1)
        } else {
            GElement::generator(&lambda1, i, 0)?
        };
        let mut block = RatMatrix::zeros(target.count(i), source.count(i));
        for k in 0..source.count(i) {
            let x = probe(i, k);
            let y = call(&x)?;
            for (slot, c) in y.comps.iter().enumerate() {
                let j = target.block_of(slot);
                let coeff = if j == i { c.coefficient_of(&unit) } else { Rational::zero() };
                let expected = unit.scale(&coeff);
                if *c != expected {
                    return Err(Error::NotNatural(format!(
                        "probe {} of block {} produced `{c}` in coordinate {}",
                        k + 1,
                        source.degree(i),
                        slot + 1
                    )));
                }
                if j == i {
                    block.set(slot - target.offset(i), k, coeff);
                }
            }
            check_probe_linearity(&call, &x, &y, previous.as_ref())?;
            previous = Some((x, y));
        }
        blocks.push(block);
    }
    BlockDiagMap::new(source.clone(), target.clone(), blocks)
}

fn check_probe_linearity<F>(
    call: &F,
    x: &LambdaPoint,
    y: &LambdaPoint,
    previous: Option<&(LambdaPoint, LambdaPoint)>,
) -> Result<()>
where
    F: Fn(&LambdaPoint) -> Result<LambdaPoint>,
{
    let two = Rational::one() + Rational::one();
    let scaled = LambdaPoint {
        alg: x.alg.clone(),
        shape: x.shape.clone(),
        comps: x.comps.iter().map(|c| c.scale(&two)).collect(),
    };
    let expected: Vec<GElement> = y.comps.iter().map(|c| c.scale(&two)).collect();
    if call(&scaled)?.comps != expected {
        return Err(Error::NotNatural("component is not homogeneous under real scaling".into()));
    }
    if let Some((px, py)) = previous {
        if call(&x.try_add(px)?)? != y.try_add(py)? {
            return Err(Error::NotNatural("component is not additive on probes".into()));
        }
    }
    Ok(())
}

impl GElement {
    /// Coefficient of the single-term element `m` (a monomial with
    /// coefficient one).
    pub fn coefficient_of(&self, m: &GElement) -> Rational {
        match m.terms().next() {
            Some((mono, _)) => self.coefficient(mono),
            None => Rational::zero(),
        }
    }
}
