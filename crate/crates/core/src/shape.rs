//! Graded dimensions `p|q₁,…,q_N`.

use std::fmt;

use crate::degree::{self, Degree};
use crate::error::{Error, Result};

/// Counts per degree index; `counts[0]` is the even dimension p.
///
/// Coordinates of a shape are numbered degree block by degree block, so
/// coordinate `k` lies in the block `i` with `offset(i) ≤ k < offset(i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedShape {
    n: usize,
    counts: Vec<usize>,
}

impl GradedShape {
    pub fn new(counts: Vec<usize>) -> Result<GradedShape> {
        let n = degree::rank_from_slots(counts.len()).ok_or_else(|| {
            Error::ShapeMismatch(format!(
                "a shape needs 2^n entries (n ≥ 1), got {}",
                counts.len()
            ))
        })?;
        Ok(GradedShape { n, counts })
    }

    /// `p|q̲` from the even count and the N odd-degree counts.
    pub fn from_parts(p: usize, q: &[usize]) -> Result<GradedShape> {
        let mut counts = vec![p];
        counts.extend_from_slice(q);
        GradedShape::new(counts)
    }

    pub fn zero(n: usize) -> GradedShape {
        GradedShape {
            n,
            counts: vec![0; 1 << n],
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, i: usize) -> usize {
        self.counts[i]
    }

    pub fn num_blocks(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn offset(&self, i: usize) -> usize {
        self.counts[..i].iter().sum()
    }

    pub fn degree(&self, i: usize) -> Degree {
        Degree::from_index(self.n, i).expect("block index in range")
    }

    /// Degree block of coordinate `k`.
    pub fn block_of(&self, k: usize) -> usize {
        let mut acc = 0;
        for (i, &c) in self.counts.iter().enumerate() {
            acc += c;
            if k < acc {
                return i;
            }
        }
        panic!("coordinate {k} out of range for shape {self}")
    }

    pub fn coord_degree(&self, k: usize) -> Degree {
        self.degree(self.block_of(k))
    }

    /// Degree of every coordinate, in coordinate order.
    pub fn coord_degrees(&self) -> Vec<Degree> {
        (0..self.num_blocks())
            .flat_map(|i| std::iter::repeat(self.degree(i)).take(self.counts[i]))
            .collect()
    }

    /// Shape of a product of Cartesian domains.
    pub fn concat(&self, other: &GradedShape) -> Result<GradedShape> {
        self.same_rank(other)?;
        GradedShape::new(
            self.counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn same_rank(&self, other: &GradedShape) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Name of coordinate `k` in morphism text: `x<a>` for even coordinates
    /// (or `prefix`), `<bits><ℓ>` for formal ones.
    pub fn coord_name(&self, k: usize, even_prefix: &str) -> String {
        let i = self.block_of(k);
        let l = k - self.offset(i);
        if i == 0 {
            format!("{even_prefix}{}", l + 1)
        } else {
            format!("{}{}", self.degree(i), l + 1)
        }
    }
}

impl fmt::Display for GradedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|", self.counts[0])?;
        let rest: Vec<String> = self.counts[1..].iter().map(|c| c.to_string()).collect();
        write!(f, "{}", rest.join(","))
    }
}
