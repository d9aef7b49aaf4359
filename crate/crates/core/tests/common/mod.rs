//! Reference implementations used as oracles by the integration tests.
//!
//! Each oracle recomputes a kernel result along a different route: words of
//! letters sorted with explicit swaps instead of the closed-form product
//! sign, and the Taylor formula instead of direct substitution.

#![allow(dead_code)]

use num::{BigInt, One, Zero};
use zgraded::series::Morphism;
use zgraded::{Algebra, GElement, LambdaPoint, Rational};

/// Product of two elements by expanding every monomial into a word of
/// generator letters, concatenating, and bubble-sorting with one Koszul
/// sign per swap of distinct letters.
pub fn word_product(a: &GElement, b: &GElement) -> GElement {
    let alg = a.algebra();
    let mut terms = Vec::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut word = letters(ma.exponents());
            word.extend(letters(mb.exponents()));
            if word.len() as u32 > alg.cap() {
                continue;
            }
            let mut negative = false;
            for i in 0..word.len() {
                for j in 0..word.len() - 1 - i {
                    if word[j] > word[j + 1] {
                        let (u, v) = (alg.generator_degree(word[j]), alg.generator_degree(word[j + 1]));
                        if u.scalar_product(v).unwrap() % 2 == 1 {
                            negative = !negative;
                        }
                        word.swap(j, j + 1);
                    }
                }
            }
            let mut exps = vec![0u32; alg.num_generators()];
            for &g in &word {
                exps[g] += 1;
            }
            let vanishes = exps
                .iter()
                .enumerate()
                .any(|(g, &e)| e > 1 && alg.generator_degree(g).scalar_product(alg.generator_degree(g)).unwrap() % 2 == 1);
            if vanishes {
                continue;
            }
            let c = ca * cb;
            terms.push((exps, if negative { -c } else { c }));
        }
    }
    GElement::from_terms(alg, terms).unwrap()
}

fn letters(exps: &[u32]) -> Vec<usize> {
    exps.iter()
        .enumerate()
        .flat_map(|(g, &e)| std::iter::repeat(g).take(e as usize))
        .collect()
}

fn factorial(k: u32) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * Rational::from_integer(BigInt::from(i)))
}

/// y = Σ_α Σ_γ (1/γ!) (∂^γ f_α)(x_body) · x̊^γ · ξ^α, the Taylor expansion of
/// every base coefficient around the bodies of the base components.
pub fn taylor_evaluate(phi: &Morphism, x: &LambdaPoint) -> LambdaPoint {
    let alg = x.algebra();
    let p = phi.source().count(0);
    let bodies: Vec<Rational> = (0..p).map(|a| x.component(a).body()).collect();
    let souls: Vec<GElement> = (0..p).map(|a| x.component(a).soul()).collect();
    let comps = phi
        .pullbacks()
        .iter()
        .map(|series| {
            let mut acc = GElement::zero(alg);
            for (key, c) in series.terms() {
                // Taylor expansion of c·x^β: derivatives ∂^γ x^β = β!/(β−γ)! x^{β−γ}
                let mut expansion = GElement::constant(alg, c.clone());
                for (a, &beta) in key.base.iter().enumerate() {
                    let mut sum = GElement::zero(alg);
                    for gamma in 0..=beta {
                        let deriv = factorial(beta) / factorial(beta - gamma)
                            * pow_rat(&bodies[a], beta - gamma);
                        let coeff = deriv / factorial(gamma);
                        if coeff.is_zero() {
                            continue;
                        }
                        sum = &sum + &souls[a].pow(gamma).scale(&coeff);
                    }
                    expansion = &expansion * &sum;
                }
                for (g, &e) in key.formal.exponents().iter().enumerate() {
                    expansion = &expansion * &x.component(p + g).pow(e);
                }
                acc = &acc + &expansion;
            }
            acc
        })
        .collect();
    LambdaPoint::new(alg, phi.target().clone(), comps).unwrap()
}

fn pow_rat(r: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * r)
}

/// Matrix product written with the word oracle for entry products.
pub fn oracle_mat_entry(row: &[GElement], col: &[GElement], alg: &Algebra) -> GElement {
    row.iter()
        .zip(col)
        .fold(GElement::zero(alg), |acc, (a, b)| &acc + &word_product(a, b))
}
