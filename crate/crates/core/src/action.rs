//! The Λ₀-module structure on Λ-points and the canonical action of
//! GL(p|q̲) on ℝ^{p|q̲}.
//!
//! The entry X^𝔞_𝔟 of a matrix is stored at row 𝔟, column 𝔞, so the action
//! (x^𝔟 X^𝔞_𝔟)_𝔞 multiplies a row vector from the left. It is a right action:
//! σ(Y, σ(X, v)) = σ(XY, v).

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gmatrix::{gl0_coordinates, gl0_dimension, GMatrix};
use crate::grassmann::{Algebra, GElement};
use crate::points::LambdaPoint;
use crate::random::Sampler;
use crate::series::{formal_algebra, Morphism, Series};
use crate::shape::GradedShape;

/// a ◁ x, componentwise.
pub fn module_action(a: &GElement, x: &LambdaPoint) -> Result<LambdaPoint> {
    if let Some(g) = a.homogeneous_degree()? {
        if !g.is_zero() {
            return Err(Error::DegreeViolation(format!(
                "scalar `{a}` has degree {g}, expected 0"
            )));
        }
    }
    let comps = x
        .components()
        .iter()
        .map(|c| a.gmul(c))
        .collect::<Result<Vec<_>>>()?;
    LambdaPoint::new(x.algebra(), x.shape().clone(), comps)
}

/// σ(X, x)_𝔞 = Σ_𝔟 x_𝔟 X^𝔞_𝔟, point factor first.
pub fn canonical_action(m: &GMatrix, x: &LambdaPoint) -> Result<LambdaPoint> {
    if m.row_shape() != x.shape() || m.col_shape() != x.shape() {
        return Err(Error::ShapeMismatch(format!(
            "matrix of shape {} acting on a point of shape {}",
            m.row_shape(),
            x.shape()
        )));
    }
    if !m.is_invertible()? {
        return Err(Error::NotInvertible(
            "a diagonal block has singular body".into(),
        ));
    }
    raw_action(m, x)
}

fn raw_action(m: &GMatrix, x: &LambdaPoint) -> Result<LambdaPoint> {
    let alg = x.algebra();
    let comps = (0..m.ncols())
        .map(|a| {
            let mut acc = GElement::zero(alg);
            for b in 0..m.nrows() {
                let (xb, e) = (x.component(b), m.entry(b, a));
                if !xb.is_zero() && !e.is_zero() {
                    acc = &acc + &xb.gmul(e)?;
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    LambdaPoint::new(alg, x.shape().clone(), comps)
}

/// A degree-0 matrix as a Λ-point of gl₀ ≅ ℝ^{t|u̲}.
pub fn matrix_to_point(m: &GMatrix) -> Result<LambdaPoint> {
    if !m.degree().is_zero() {
        return Err(Error::DegreeViolation(format!(
            "only degree-0 matrices are points of gl0, got degree {}",
            m.degree()
        )));
    }
    let shape = gl0_dimension(m.row_shape(), m.col_shape())?;
    let comps = gl0_coordinates(m.row_shape(), m.col_shape())?
        .into_iter()
        .map(|(r, c)| m.entry(r, c).clone())
        .collect();
    LambdaPoint::new(m.algebra(), shape, comps)
}

pub fn point_to_matrix(p: &LambdaPoint, rows: &GradedShape, cols: &GradedShape) -> Result<GMatrix> {
    let shape = gl0_dimension(rows, cols)?;
    if *p.shape() != shape {
        return Err(Error::ShapeMismatch(format!(
            "a point of gl0 for these shapes has shape {shape}, got {}",
            p.shape()
        )));
    }
    let alg = p.algebra();
    let mut data = vec![vec![GElement::zero(alg); cols.total()]; rows.total()];
    for (k, (r, c)) in gl0_coordinates(rows, cols)?.into_iter().enumerate() {
        data[r][c] = p.component(k).clone();
    }
    GMatrix::from_rows(alg, rows.clone(), cols.clone(), alg.zero_degree(), data)
}

/// σ as a morphism gl₀ × ℝ^{p|q̲} → ℝ^{p|q̲} with pullbacks
/// σ*(𝓍^𝔞) = 𝓍^𝔟 𝓧^𝔞_𝔟. In the source, every degree block lists the matrix
/// coordinates before the point coordinates.
pub fn action_as_morphism(shape: &GradedShape, cap: u32) -> Result<Morphism> {
    let gl = gl0_dimension(shape, shape)?;
    let source = gl.concat(shape)?;
    let formal = formal_algebra(&source, cap)?;
    let coords = gl0_coordinates(shape, shape)?;
    let gl_position = |k: usize| {
        let i = gl.block_of(k);
        source.offset(i) + (k - gl.offset(i))
    };
    let point_position = |b: usize| {
        let i = shape.block_of(b);
        source.offset(i) + gl.count(i) + (b - shape.offset(i))
    };
    let mut entry_coord = vec![vec![0usize; shape.total()]; shape.total()];
    for (k, &(r, c)) in coords.iter().enumerate() {
        entry_coord[r][c] = gl_position(k);
    }
    let pullbacks = (0..shape.total())
        .map(|a| {
            let mut s = Series::zero(source.count(0), &formal);
            for b in 0..shape.total() {
                let xb = Morphism::coordinate(&source, &formal, point_position(b));
                let xab = Morphism::coordinate(&source, &formal, entry_coord[b][a]);
                s = s.try_add(&xb.try_mul(&xab)?)?;
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(source, shape.clone(), cap, pullbacks)
}

/// Order in which a composite is formed in the compatibility axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// σ(Y, σ(X, v)) = σ(XY, v).
    Right,
    /// σ(X, σ(Y, v)) = σ(μ(X, Y), v) with μ(X, Y) = YX.
    Left,
}

/// A failing instance of an axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub axiom: &'static str,
    pub inputs: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# axiom: {}", self.axiom)?;
        for (name, value) in &self.inputs {
            writeln!(f, "# input {name}")?;
            writeln!(f, "{value}")?;
        }
        writeln!(f, "# lhs")?;
        writeln!(f, "{}", self.lhs)?;
        writeln!(f, "# rhs")?;
        writeln!(f, "{}", self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionReport {
    pub identity_ok: bool,
    pub compatibility_ok: bool,
    pub additivity_ok: bool,
    pub scaling_ok: bool,
    pub checks: usize,
    /// First failure found; present iff some flag is false.
    pub witness: Option<Witness>,
}

impl ActionReport {
    pub fn all_ok(&self) -> bool {
        self.identity_ok && self.compatibility_ok && self.additivity_ok && self.scaling_ok
    }

    fn record(&mut self, axiom: &'static str, ok: bool, witness: impl FnOnce() -> Witness) {
        if ok {
            return;
        }
        match axiom {
            "identity" => self.identity_ok = false,
            "compatibility" => self.compatibility_ok = false,
            "additivity" => self.additivity_ok = false,
            _ => self.scaling_ok = false,
        }
        if self.witness.is_none() {
            self.witness = Some(witness());
        }
    }
}

impl fmt::Display for ActionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |b: bool| if b { "ok" } else { "FAIL" };
        writeln!(f, "identity {}", flag(self.identity_ok))?;
        writeln!(f, "compatibility {}", flag(self.compatibility_ok))?;
        writeln!(f, "additivity {}", flag(self.additivity_ok))?;
        writeln!(f, "scaling {}", flag(self.scaling_ok))
    }
}

/// Samples X, Y ∈ GL(p|q̲)(Λ), points v, v′ and scalars a ∈ Λ₀, and checks
/// identity, compatibility (per `convention`), additivity and Λ₀-scaling
/// of `sigma`. Deterministic in `(samples, seed)`.
pub fn check_action_axioms<F>(
    sigma: F,
    alg: &Algebra,
    shape: &GradedShape,
    samples: usize,
    seed: u64,
    convention: Convention,
) -> Result<ActionReport>
where
    F: Fn(&GMatrix, &LambdaPoint) -> Result<LambdaPoint>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = Sampler::new(alg);
    let mut report = ActionReport {
        identity_ok: true,
        compatibility_ok: true,
        additivity_ok: true,
        scaling_ok: true,
        checks: 0,
        witness: None,
    };
    let id = GMatrix::identity(alg, shape);
    for _ in 0..samples {
        let x = sampler.invertible_matrix(&mut rng, shape);
        let y = sampler.invertible_matrix(&mut rng, shape);
        let v = sampler.point(&mut rng, shape);
        let w = sampler.point(&mut rng, shape);
        let a = sampler.element(&mut rng, alg.zero_degree());

        let lhs = sigma(&id, &v)?;
        report.record("identity", lhs == v, || Witness {
            axiom: "identity",
            inputs: vec![("v".into(), v.to_string())],
            lhs: lhs.to_string(),
            rhs: v.to_string(),
        });

        let (lhs, rhs) = match convention {
            Convention::Right => (sigma(&y, &sigma(&x, &v)?)?, sigma(&x.mat_mul(&y)?, &v)?),
            Convention::Left => (sigma(&x, &sigma(&y, &v)?)?, sigma(&y.mat_mul(&x)?, &v)?),
        };
        report.record("compatibility", lhs == rhs, || Witness {
            axiom: "compatibility",
            inputs: vec![
                ("X".into(), x.to_string()),
                ("Y".into(), y.to_string()),
                ("v".into(), v.to_string()),
            ],
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });

        let lhs = sigma(&x, &v.try_add(&w)?)?;
        let rhs = sigma(&x, &v)?.try_add(&sigma(&x, &w)?)?;
        report.record("additivity", lhs == rhs, || Witness {
            axiom: "additivity",
            inputs: vec![
                ("X".into(), x.to_string()),
                ("v".into(), v.to_string()),
                ("v'".into(), w.to_string()),
            ],
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });

        let lhs = sigma(&x, &module_action(&a, &v)?)?;
        let rhs = module_action(&a, &sigma(&x, &v)?)?;
        report.record("scaling", lhs == rhs, || Witness {
            axiom: "scaling",
            inputs: vec![
                ("X".into(), x.to_string()),
                ("v".into(), v.to_string()),
                ("a".into(), a.to_string()),
            ],
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
        report.checks += 1;
    }
    Ok(report)
}

/// The canonical action with its first base coordinate squared afterwards;
/// breaks Λ₀-linearity while keeping degrees valid.
pub fn corrupted_action(m: &GMatrix, x: &LambdaPoint) -> Result<LambdaPoint> {
    let y = canonical_action(m, x)?;
    let mut comps = y.components().to_vec();
    if let Some(first) = comps.first_mut() {
        if y.shape().count(0) > 0 {
            *first = &*first * &*first;
        }
    }
    LambdaPoint::new(y.algebra(), y.shape().clone(), comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::AlgebraSpec;

    #[test]
    fn unit_scalar_and_zero_scalar() {
        let alg = AlgebraSpec::new(1, &[2], 2).unwrap();
        let s = GradedShape::from_parts(1, &[1]).unwrap();
        let t1 = GElement::generator(&alg, 1, 0).unwrap();
        let x = LambdaPoint::new(&alg, s.clone(), vec![GElement::from_int(&alg, 3), t1.clone()]).unwrap();
        assert_eq!(module_action(&GElement::one(&alg), &x).unwrap(), x);
        assert_eq!(module_action(&GElement::zero(&alg), &x).unwrap(), LambdaPoint::zero(&alg, s));
        assert!(module_action(&t1, &x).is_err());
    }

    #[test]
    fn identity_acts_trivially() {
        let alg = AlgebraSpec::new(2, &[1, 1, 1], 2).unwrap();
        let s = GradedShape::from_parts(1, &[1, 1, 1]).unwrap();
        let comps = (0..4)
            .map(|i| {
                if i == 0 {
                    GElement::from_int(&alg, 2)
                } else {
                    GElement::generator(&alg, i, 0).unwrap()
                }
            })
            .collect();
        let x = LambdaPoint::new(&alg, s.clone(), comps).unwrap();
        assert_eq!(canonical_action(&GMatrix::identity(&alg, &s), &x).unwrap(), x);
    }

    #[test]
    fn purely_even_line_is_scaling() {
        let s = GradedShape::from_parts(1, &[0]).unwrap();
        let sigma = action_as_morphism(&s, 2).unwrap();
        assert_eq!(sigma.source().to_string(), "2|0");
        assert_eq!(sigma.pullback(0).to_string(), "x1 x2");
    }

    #[test]
    fn matrix_point_round_trip() {
        let alg = AlgebraSpec::new(2, &[1, 1, 1], 2).unwrap();
        let s = GradedShape::from_parts(1, &[1, 1, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = Sampler::new(&alg).invertible_matrix(&mut rng, &s);
        let p = matrix_to_point(&m).unwrap();
        assert_eq!(p.shape().to_string(), "4|4,4,4");
        assert_eq!(point_to_matrix(&p, &s, &s).unwrap(), m);
    }

    #[test]
    fn axioms_hold_and_corruption_is_caught() {
        let alg = AlgebraSpec::new(1, &[2], 2).unwrap();
        let s = GradedShape::from_parts(1, &[1]).unwrap();
        let ok = check_action_axioms(canonical_action, &alg, &s, 10, 1, Convention::Right).unwrap();
        assert!(ok.all_ok(), "{ok}");
        assert!(ok.witness.is_none());
        let left = check_action_axioms(canonical_action, &alg, &s, 10, 1, Convention::Left).unwrap();
        assert!(left.all_ok());
        let bad = check_action_axioms(corrupted_action, &alg, &s, 10, 1, Convention::Right).unwrap();
        assert!(!bad.scaling_ok);
        assert!(bad.witness.is_some());
    }
}
