//! Elements of the grading group ℤ₂ⁿ.
//!
//! A degree is stored as an `n`-bit word whose most significant bit is the
//! first component, so the integer value of the word is exactly the position
//! of the degree in the lexicographic enumeration γ₀ < γ₁ < … < γ_N.

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

/// Largest supported grading rank.
pub const MAX_RANK: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree {
    // field order matters for the derived Ord: same-n degrees compare by index
    n: u8,
    bits: u32,
}

impl Degree {
    pub fn zero(n: usize) -> Degree {
        Degree { n: n as u8, bits: 0 }
    }

    /// The degree γ_index in lexicographic order.
    pub fn from_index(n: usize, index: usize) -> Result<Degree> {
        check_rank(n)?;
        if index >> n != 0 {
            return Err(Error::DegreeViolation(format!(
                "index {index} out of range for n={n}"
            )));
        }
        Ok(Degree {
            n: n as u8,
            bits: index as u32,
        })
    }

    /// Builds a degree from its components `(a_1, …, a_n)`, each 0 or 1.
    pub fn from_components(components: &[u8]) -> Result<Degree> {
        check_rank(components.len())?;
        let mut bits = 0u32;
        for &c in components {
            if c > 1 {
                return Err(Error::DegreeViolation(format!("component {c} is not a bit")));
            }
            bits = (bits << 1) | c as u32;
        }
        Ok(Degree {
            n: components.len() as u8,
            bits,
        })
    }

    pub fn rank(self) -> usize {
        self.n as usize
    }

    /// Position in the lexicographic enumeration.
    pub fn index(self) -> usize {
        self.bits as usize
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn components(self) -> Vec<u8> {
        (0..self.n)
            .rev()
            .map(|k| ((self.bits >> k) & 1) as u8)
            .collect()
    }

    pub fn checked_add(self, other: Degree) -> Result<Degree> {
        self.same_rank(other)?;
        Ok(self + other)
    }

    /// ⟨a, b⟩ = Σ aᵢbᵢ over the integers.
    pub fn scalar_product(self, other: Degree) -> Result<u32> {
        self.same_rank(other)?;
        Ok(self.pairing(other))
    }

    /// (−1)^⟨a,b⟩ as `+1` or `-1`.
    pub fn koszul_sign(self, other: Degree) -> Result<i8> {
        self.same_rank(other)?;
        Ok(if self.odd_pairing(other) { -1 } else { 1 })
    }

    /// Unchecked pairing; callers guarantee equal rank.
    pub(crate) fn pairing(self, other: Degree) -> u32 {
        (self.bits & other.bits).count_ones()
    }

    pub(crate) fn odd_pairing(self, other: Degree) -> bool {
        self.pairing(other) % 2 == 1
    }

    /// Whether elements of this degree square to zero (odd self-pairing).
    pub fn is_nilpotent_parity(self) -> bool {
        self.odd_pairing(self)
    }

    fn same_rank(self, other: Degree) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n as usize,
                found: other.n as usize,
            });
        }
        Ok(())
    }

    /// Parses a bitstring such as `01`; the rank is the string length.
    pub fn parse_bits(s: &str) -> Result<Degree> {
        let comps: Vec<u8> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::DegreeViolation(format!("`{s}` is not a bitstring"))),
            })
            .collect::<Result<_>>()?;
        Degree::from_components(&comps)
    }
}

/// Componentwise addition mod 2. Panics in debug builds on rank mismatch.
impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        debug_assert_eq!(self.n, rhs.n, "adding degrees of different rank");
        Degree {
            n: self.n,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.components() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn check_rank(n: usize) -> Result<()> {
    if n == 0 || n > MAX_RANK {
        return Err(Error::DegenerateAmbient { max: MAX_RANK });
    }
    Ok(())
}

/// Number of nonzero degrees, N = 2ⁿ − 1.
pub fn nonzero_count(n: usize) -> usize {
    (1usize << n) - 1
}

/// All 2ⁿ degrees in lexicographic order; index 0 is the zero degree.
pub fn enumerate_degrees(n: usize) -> Result<Vec<Degree>> {
    check_rank(n)?;
    Ok((0..1u32 << n).map(|bits| Degree { n: n as u8, bits }).collect())
}

/// Recovers n from the number of degree slots `2ⁿ` (e.g. the length of a shape).
pub fn rank_from_slots(slots: usize) -> Option<usize> {
    if slots >= 2 && slots.is_power_of_two() {
        Some(slots.trailing_zeros() as usize)
    } else {
        None
    }
}
