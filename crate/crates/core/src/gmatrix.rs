//! Homogeneous block matrices over a ℤ₂ⁿ-Grassmann algebra.
//!
//! A matrix of degree x with row shape r|s̲ and column shape p|q̲ has blocks
//! X_ij of size s_i × q_j whose entries are homogeneous of degree
//! γ_i + γ_j + x. Sub-grids used during inversion are represented as
//! matrices over shapes whose unused blocks have size zero, so every
//! intermediate value still obeys the block-degree law.

use std::fmt;

use num::{One, Zero};

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::grassmann::{Algebra, AlgebraMorphism, GElement, Rational};
use crate::linalg::RatMatrix;
use crate::linspace::BlockDiagMap;
use crate::shape::GradedShape;

/// Entries of one block, row-major: `block[k][l]`.
pub type Block = Vec<Vec<GElement>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMatrix {
    alg: Algebra,
    rows: GradedShape,
    cols: GradedShape,
    degree: Degree,
    entries: Vec<GElement>,
}

impl GMatrix {
    /// Validating constructor from an (N+1)×(N+1) grid of blocks.
    pub fn make_matrix(
        alg: &Algebra,
        rows: GradedShape,
        cols: GradedShape,
        degree: Degree,
        blocks: Vec<Vec<Block>>,
    ) -> Result<GMatrix> {
        check_shapes(alg, &rows, &cols, degree)?;
        let nb = rows.num_blocks();
        if blocks.len() != nb || blocks.iter().any(|r| r.len() != nb) {
            return Err(Error::ShapeMismatch(format!(
                "expected a {nb}x{nb} grid of blocks"
            )));
        }
        let mut grid = vec![Vec::new(); rows.total()];
        for (i, block_row) in blocks.into_iter().enumerate() {
            for (j, block) in block_row.into_iter().enumerate() {
                if block.len() != rows.count(i)
                    || block.iter().any(|r| r.len() != cols.count(j))
                {
                    return Err(Error::ShapeMismatch(format!(
                        "block ({i},{j}) must be {}x{}",
                        rows.count(i),
                        cols.count(j)
                    )));
                }
                for (k, row) in block.into_iter().enumerate() {
                    grid[rows.offset(i) + k].extend(row);
                }
            }
        }
        GMatrix::from_rows(alg, rows, cols, degree, grid)
    }

    /// Validating constructor from full rows.
    pub fn from_rows(
        alg: &Algebra,
        rows: GradedShape,
        cols: GradedShape,
        degree: Degree,
        data: Vec<Vec<GElement>>,
    ) -> Result<GMatrix> {
        check_shapes(alg, &rows, &cols, degree)?;
        if data.len() != rows.total() || data.iter().any(|r| r.len() != cols.total()) {
            return Err(Error::ShapeMismatch(format!(
                "expected {} rows of {} entries",
                rows.total(),
                cols.total()
            )));
        }
        let entries: Vec<GElement> = data.into_iter().flatten().collect();
        let m = GMatrix {
            alg: alg.clone(),
            rows,
            cols,
            degree,
            entries,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        for r in 0..self.rows.total() {
            for c in 0..self.cols.total() {
                let e = self.entry(r, c);
                e.same_algebra(&GElement::zero(&self.alg))?;
                let want = self.entry_degree(r, c);
                if !e.is_homogeneous_of(want) {
                    let (i, j) = (self.rows.block_of(r), self.cols.block_of(c));
                    return Err(Error::DegreeViolation(format!(
                        "entry ({},{}) of block ({i},{j}) is `{e}`, expected degree {want}",
                        r - self.rows.offset(i) + 1,
                        c - self.cols.offset(j) + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(alg: &Algebra, rows: GradedShape, cols: GradedShape, degree: Degree) -> GMatrix {
        let entries = vec![GElement::zero(alg); rows.total() * cols.total()];
        GMatrix {
            alg: alg.clone(),
            rows,
            cols,
            degree,
            entries,
        }
    }

    pub fn identity(alg: &Algebra, shape: &GradedShape) -> GMatrix {
        let mut m = GMatrix::zero(alg, shape.clone(), shape.clone(), alg.zero_degree());
        for k in 0..shape.total() {
            *m.entry_mut(k, k) = GElement::one(alg);
        }
        m
    }

    /// Constant matrix from a real block-diagonal map.
    pub fn from_block_diag(alg: &Algebra, map: &BlockDiagMap) -> GMatrix {
        let full = map.to_full();
        let mut m = GMatrix::zero(
            alg,
            map.target_shape().clone(),
            map.source_shape().clone(),
            alg.zero_degree(),
        );
        for r in 0..full.rows() {
            for c in 0..full.cols() {
                *m.entry_mut(r, c) = GElement::constant(alg, full.get(r, c).clone());
            }
        }
        m
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn row_shape(&self) -> &GradedShape {
        &self.rows
    }

    pub fn col_shape(&self) -> &GradedShape {
        &self.cols
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn nrows(&self) -> usize {
        self.rows.total()
    }

    pub fn ncols(&self) -> usize {
        self.cols.total()
    }

    pub fn entry(&self, r: usize, c: usize) -> &GElement {
        &self.entries[r * self.cols.total() + c]
    }

    fn entry_mut(&mut self, r: usize, c: usize) -> &mut GElement {
        let w = self.cols.total();
        &mut self.entries[r * w + c]
    }

    /// Required degree of entry (r, c): γ_i + γ_j + x.
    pub fn entry_degree(&self, r: usize, c: usize) -> Degree {
        self.rows.coord_degree(r) + self.cols.coord_degree(c) + self.degree
    }

    pub fn block(&self, i: usize, j: usize) -> Block {
        let (r0, c0) = (self.rows.offset(i), self.cols.offset(j));
        (0..self.rows.count(i))
            .map(|k| {
                (0..self.cols.count(j))
                    .map(|l| self.entry(r0 + k, c0 + l).clone())
                    .collect()
            })
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_algebra(&self, other: &GMatrix) -> Result<()> {
        if *self.alg != *other.alg {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &GMatrix) -> Result<GMatrix> {
        self.same_algebra(other)?;
        if self.rows != other.rows || self.cols != other.cols || self.degree != other.degree {
            return Err(Error::ShapeMismatch(
                "sum of matrices with different shapes or degrees".into(),
            ));
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = &*a + b;
        }
        Ok(out)
    }

    pub fn neg(&self) -> GMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = -&*e;
        }
        out
    }

    pub fn try_sub(&self, other: &GMatrix) -> Result<GMatrix> {
        self.try_add(&other.neg())
    }

    /// Row-by-column product; degrees add.
    pub fn mat_mul(&self, other: &GMatrix) -> Result<GMatrix> {
        self.same_algebra(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{} graded matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = GMatrix::zero(
            &self.alg,
            self.rows.clone(),
            other.cols.clone(),
            self.degree + other.degree,
        );
        for r in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.ncols() {
                    let b = other.entry(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let slot = out.entry_mut(r, c);
                    *slot = &*slot + &prod;
                }
            }
        }
        Ok(out)
    }

    /// (λX)_ij = (−1)^⟨g,γ_i⟩ λ X_ij for λ homogeneous of degree g.
    pub fn scalar_mul(&self, lambda: &GElement) -> Result<GMatrix> {
        lambda.same_algebra(&GElement::zero(&self.alg))?;
        let g = lambda.homogeneous_degree()?.unwrap_or(self.alg.zero_degree());
        let mut out = self.clone();
        out.degree = g + self.degree;
        for r in 0..self.nrows() {
            let negative = g.odd_pairing(self.rows.coord_degree(r));
            for c in 0..self.ncols() {
                let e = lambda * self.entry(r, c);
                *out.entry_mut(r, c) = if negative { -&e } else { e };
            }
        }
        Ok(out)
    }

    /// Multiplication by a real number; no signs.
    pub fn scale(&self, c: &Rational) -> GMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.scale(c);
        }
        out
    }

    /// Applies an algebra morphism entrywise.
    pub fn map_entries(&self, phi: &AlgebraMorphism) -> Result<GMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| phi.apply(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(GMatrix {
            alg: phi.target().clone(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            degree: self.degree,
            entries,
        })
    }

    fn require_square_even(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "expected a square matrix, got rows={} cols={}",
                self.rows, self.cols
            )));
        }
        if !self.degree.is_zero() {
            return Err(Error::DegreeViolation(format!(
                "expected a degree-0 matrix, got degree {}",
                self.degree
            )));
        }
        Ok(())
    }

    /// Bodies of every entry as one real matrix.
    pub fn body_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(
            self.nrows(),
            self.ncols(),
            self.entries.iter().map(|e| e.body()).collect(),
        )
    }

    /// ε̃(X): bodies of the diagonal blocks. Off-diagonal blocks of a degree-0
    /// matrix have nonzero entry degree and hence zero body.
    pub fn epsilon_tilde(&self) -> Result<BlockDiagMap> {
        self.require_square_even()?;
        let blocks = (0..self.rows.num_blocks())
            .map(|i| {
                let q = self.rows.count(i);
                let o = self.rows.offset(i);
                RatMatrix::from_rows(
                    q,
                    q,
                    (0..q * q)
                        .map(|k| self.entry(o + k / q, o + k % q).body())
                        .collect(),
                )
            })
            .collect();
        BlockDiagMap::new(self.cols.clone(), self.rows.clone(), blocks)
    }

    /// det ε̃(X_ii) ≠ 0 for every i.
    pub fn is_invertible(&self) -> Result<bool> {
        let eps = self.epsilon_tilde()?;
        Ok(eps.blocks().iter().all(|b| !b.det().is_zero()))
    }

    /// Each diagonal block is invertible over Λ: its determinant, computed in
    /// the commutative ring Λ₀, is a unit.
    pub fn diagonal_blocks_invertible_over_lambda(&self) -> Result<bool> {
        self.require_square_even()?;
        for i in 0..self.rows.num_blocks() {
            let det = det_commutative(&self.alg, &self.block(i, i));
            if det.body().is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The full body matrix ε̃(X) is invertible over ℝ.
    pub fn body_invertible(&self) -> Result<bool> {
        self.require_square_even()?;
        Ok(!self.body_matrix().det().is_zero())
    }

    /// X⁻¹ by recursive 2×2 block splitting, peeling off the leading nonempty
    /// degree block at each level.
    pub fn invert(&self) -> Result<GMatrix> {
        if !self.is_invertible()? {
            return Err(Error::NotInvertible(
                "a diagonal block has singular body".into(),
            ));
        }
        invert_recursive(self)
    }

    /// Independent route: X = B + S with B = ε̃(X), and
    /// X⁻¹ = Σ_{k≤cap} (−B⁻¹S)^k · B⁻¹.
    pub fn invert_neumann(&self) -> Result<GMatrix> {
        let eps = self.epsilon_tilde()?;
        let binv_real = eps
            .to_full()
            .inverse()
            .ok_or_else(|| Error::NotInvertible("body matrix is singular".into()))?;
        let binv_map = BlockDiagMap::from_full(self.cols.clone(), self.rows.clone(), &binv_real)?;
        let binv = GMatrix::from_block_diag(&self.alg, &binv_map);
        let b = GMatrix::from_block_diag(&self.alg, &eps);
        let soul = self.try_sub(&b)?;
        let step = binv.mat_mul(&soul)?.neg();
        let mut power = GMatrix::identity(&self.alg, &self.rows);
        let mut sum = power.clone();
        for _ in 0..self.alg.cap() {
            power = power.mat_mul(&step)?;
            if power.entries.iter().all(GElement::is_zero) {
                break;
            }
            sum = sum.try_add(&power)?;
        }
        sum.mat_mul(&binv)
    }

    fn active_blocks(&self) -> Vec<usize> {
        (0..self.rows.num_blocks())
            .filter(|&i| self.rows.count(i) > 0)
            .collect()
    }

    /// Sub-matrix on the given row and column blocks; other blocks get size 0.
    fn restrict(&self, row_blocks: &[usize], col_blocks: &[usize]) -> GMatrix {
        let rows = mask(&self.rows, row_blocks);
        let cols = mask(&self.cols, col_blocks);
        let row_idx = kept_coords(&self.rows, row_blocks);
        let col_idx = kept_coords(&self.cols, col_blocks);
        let mut entries = Vec::with_capacity(row_idx.len() * col_idx.len());
        for &r in &row_idx {
            for &c in &col_idx {
                entries.push(self.entry(r, c).clone());
            }
        }
        GMatrix {
            alg: self.alg.clone(),
            rows,
            cols,
            degree: self.degree,
            entries,
        }
    }

    /// Writes `part` (a restriction) back into the corresponding positions.
    fn embed(&mut self, part: &GMatrix) {
        let row_idx = embed_coords(&self.rows, &part.rows);
        let col_idx = embed_coords(&self.cols, &part.cols);
        for (pr, &r) in row_idx.iter().enumerate() {
            for (pc, &c) in col_idx.iter().enumerate() {
                *self.entry_mut(r, c) = part.entry(pr, pc).clone();
            }
        }
    }

    fn entries_commute(&self) -> bool {
        let degs: Vec<Degree> = self
            .entries
            .iter()
            .filter_map(|e| e.homogeneous_degree().ok().flatten())
            .collect();
        degs.iter()
            .all(|a| degs.iter().all(|b| !a.odd_pairing(*b)))
    }
}

fn check_shapes(alg: &Algebra, rows: &GradedShape, cols: &GradedShape, degree: Degree) -> Result<()> {
    rows.same_rank(cols)?;
    if rows.rank() != alg.rank() || degree.rank() != alg.rank() {
        return Err(Error::DimensionMismatch {
            expected: alg.rank(),
            found: if rows.rank() != alg.rank() {
                rows.rank()
            } else {
                degree.rank()
            },
        });
    }
    Ok(())
}

fn mask(shape: &GradedShape, keep: &[usize]) -> GradedShape {
    let counts = (0..shape.num_blocks())
        .map(|i| if keep.contains(&i) { shape.count(i) } else { 0 })
        .collect();
    GradedShape::new(counts).expect("same length")
}

fn kept_coords(shape: &GradedShape, keep: &[usize]) -> Vec<usize> {
    (0..shape.num_blocks())
        .filter(|i| keep.contains(i))
        .flat_map(|i| shape.offset(i)..shape.offset(i) + shape.count(i))
        .collect()
}

fn embed_coords(full: &GradedShape, part: &GradedShape) -> Vec<usize> {
    let keep: Vec<usize> = (0..part.num_blocks())
        .filter(|&i| part.count(i) > 0)
        .collect();
    kept_coords(full, &keep)
}

fn invert_recursive(x: &GMatrix) -> Result<GMatrix> {
    let active = x.active_blocks();
    match active.len() {
        0 => Ok(x.clone()),
        1 => invert_single_block(x),
        _ => {
            let lead = &active[..1];
            let rest = &active[1..];
            let a = x.restrict(lead, lead);
            let b = x.restrict(lead, rest);
            let c = x.restrict(rest, lead);
            let d = x.restrict(rest, rest);

            let a_inv = invert_single_block(&a)?;
            let d_inv = invert_recursive(&d)?;
            // (A − B D⁻¹ C)⁻¹ and (D − C A⁻¹ B)⁻¹
            let schur_a = a.try_sub(&b.mat_mul(&d_inv)?.mat_mul(&c)?)?;
            let schur_a_inv = invert_single_block(&schur_a)?;
            let schur_d = d.try_sub(&c.mat_mul(&a_inv)?.mat_mul(&b)?)?;
            let schur_d_inv = invert_recursive(&schur_d)?;

            let top_right = a_inv.mat_mul(&b)?.mat_mul(&schur_d_inv)?.neg();
            let bottom_left = d_inv.mat_mul(&c)?.mat_mul(&schur_a_inv)?.neg();

            let mut out = GMatrix::zero(&x.alg, x.rows.clone(), x.cols.clone(), x.degree);
            out.embed(&schur_a_inv);
            out.embed(&top_right);
            out.embed(&bottom_left);
            out.embed(&schur_d_inv);
            Ok(out)
        }
    }
}

/// Inverse of a matrix supported on one diagonal block: det⁻¹·adj when the
/// entries commute, Neumann series otherwise.
fn invert_single_block(x: &GMatrix) -> Result<GMatrix> {
    if !x.entries_commute() {
        return x.invert_neumann();
    }
    let i = x.active_blocks()[0];
    let block = x.block(i, i);
    let m = block.len();
    let det = det_commutative(&x.alg, &block);
    let det_inv = det
        .g_invert()
        .map_err(|_| Error::NotInvertible(format!("diagonal block {i} has non-unit determinant")))?;
    let mut inv_block: Block = vec![vec![GElement::zero(&x.alg); m]; m];
    for (r, row) in inv_block.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            // adj[r][c] = (−1)^{r+c} M_{c r}
            let minor = minor(&block, c, r);
            let cof = det_commutative(&x.alg, &minor);
            let cof = if (r + c) % 2 == 1 { -&cof } else { cof };
            *slot = &det_inv * &cof;
        }
    }
    let mut out = x.clone();
    let o = x.rows.offset(i);
    for r in 0..m {
        for c in 0..m {
            *out.entry_mut(o + r, o + c) = inv_block[r][c].clone();
        }
    }
    Ok(out)
}

fn minor(block: &Block, skip_row: usize, skip_col: usize) -> Block {
    block
        .iter()
        .enumerate()
        .filter(|(r, _)| *r != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(c, _)| *c != skip_col)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}

/// Division-free determinant over commuting entries: Laplace expansion along
/// rows, memoized on the set of remaining columns.
pub fn det_commutative(alg: &Algebra, block: &Block) -> GElement {
    let m = block.len();
    if m == 0 {
        return GElement::one(alg);
    }
    // dets[mask] = determinant of the last popcount(mask) rows on columns `mask`
    let full = (1usize << m) - 1;
    let mut dets: Vec<Option<GElement>> = vec![None; 1 << m];
    dets[0] = Some(GElement::one(alg));
    for mask in 1..=full {
        let k = mask.count_ones() as usize;
        let row = m - k;
        let mut acc = GElement::zero(alg);
        let mut position = 0;
        for col in 0..m {
            if mask & (1 << col) == 0 {
                continue;
            }
            let a = &block[row][col];
            if !a.is_zero() {
                let sub = dets[mask & !(1 << col)].as_ref().expect("computed");
                let term = a * sub;
                acc = if position % 2 == 1 { &acc - &term } else { &acc + &term };
            }
            position += 1;
        }
        dets[mask] = Some(acc);
    }
    dets[full].take().expect("computed")
}

/// Graded dimension t|u̲ of gl₀(r|s̲ × p|q̲): u_n = Σ_{γ_i+γ_j=γ_n} s_i q_j.
pub fn gl0_dimension(rows: &GradedShape, cols: &GradedShape) -> Result<GradedShape> {
    rows.same_rank(cols)?;
    let nb = rows.num_blocks();
    let mut u = vec![0; nb];
    for i in 0..nb {
        for j in 0..nb {
            u[i ^ j] += rows.count(i) * cols.count(j);
        }
    }
    GradedShape::new(u)
}

/// Matrix positions `(row, col)` of the degree-0 matrices in the order of the
/// coordinates of gl₀ ≅ ℝ^{t|u̲}: grouped by entry degree, and column-major
/// inside each degree.
pub fn gl0_coordinates(rows: &GradedShape, cols: &GradedShape) -> Result<Vec<(usize, usize)>> {
    let dim = gl0_dimension(rows, cols)?;
    let mut by_degree: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dim.num_blocks()];
    for c in 0..cols.total() {
        for r in 0..rows.total() {
            let g = rows.coord_degree(r) + cols.coord_degree(c);
            by_degree[g.index()].push((r, c));
        }
    }
    Ok(by_degree.into_iter().flatten().collect())
}

impl fmt::Display for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "matrix deg={} rows={} cols={}",
            self.degree, self.rows, self.cols
        )?;
        for r in 0..self.nrows() {
            let row: Vec<String> = (0..self.ncols())
                .map(|c| self.entry(r, c).to_string())
                .collect();
            writeln!(f, "{}", row.join("; "))?;
        }
        Ok(())
    }
}

/// Identity check used to certify inverses.
pub fn is_identity(m: &GMatrix) -> bool {
    m.is_square()
        && (0..m.nrows()).all(|r| {
            (0..m.ncols()).all(|c| {
                let e = m.entry(r, c);
                if r == c {
                    e.num_terms() == 1 && e.body().is_one()
                } else {
                    e.is_zero()
                }
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{int, AlgebraSpec};

    fn super11() -> (Algebra, GElement, GElement, GradedShape) {
        let alg = AlgebraSpec::new(1, &[2], 2).unwrap();
        let t1 = GElement::generator(&alg, 1, 0).unwrap();
        let t2 = GElement::generator(&alg, 1, 1).unwrap();
        (alg, t1, t2, GradedShape::from_parts(1, &[1]).unwrap())
    }

    fn even(alg: &Algebra, shape: &GradedShape, rows: Vec<Vec<GElement>>) -> GMatrix {
        GMatrix::from_rows(alg, shape.clone(), shape.clone(), alg.zero_degree(), rows).unwrap()
    }

    fn c(alg: &Algebra, v: i64) -> GElement {
        GElement::from_int(alg, v)
    }

    #[test]
    fn super_example_inverse() {
        let (alg, t1, t2, s) = super11();
        let x = even(&alg, &s, vec![vec![c(&alg, 1), t1.clone()], vec![t2.clone(), c(&alg, 1)]]);
        let t12 = &t1 * &t2;
        let expected = even(
            &alg,
            &s,
            vec![
                vec![&c(&alg, 1) + &t12, -&t1],
                vec![-&t2, &c(&alg, 1) - &t12],
            ],
        );
        assert_eq!(x.mat_mul(&expected).unwrap(), GMatrix::identity(&alg, &s));
        assert_eq!(x.invert().unwrap(), expected);
        assert_eq!(x.invert_neumann().unwrap(), expected);
        assert!(x.is_invertible().unwrap());
    }

    #[test]
    fn degree_pattern_for_odd_real_matrices() {
        // n=2, x=01, shape 1|1,1,1: real entries allowed exactly at ij ∈ {01,10,23,32}
        let alg = AlgebraSpec::new(2, &[0, 0, 0], 0).unwrap();
        let s = GradedShape::from_parts(1, &[1, 1, 1]).unwrap();
        let x = Degree::parse_bits("01").unwrap();
        let m = GMatrix::zero(&alg, s.clone(), s.clone(), x);
        let mut allowed = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                if m.entry_degree(i, j).is_zero() {
                    allowed.push((i, j));
                }
            }
        }
        assert_eq!(allowed, [(0, 1), (1, 0), (2, 3), (3, 2)]);
        let mut rows = vec![vec![GElement::zero(&alg); 4]; 4];
        rows[0][1] = c(&alg, 1);
        assert!(GMatrix::from_rows(&alg, s.clone(), s.clone(), x, rows.clone()).is_ok());
        rows[0][0] = c(&alg, 1);
        assert!(matches!(
            GMatrix::from_rows(&alg, s.clone(), s, x, rows),
            Err(Error::DegreeViolation(_))
        ));
    }

    #[test]
    fn soul_in_even_block_is_rejected() {
        let (alg, t1, _, s) = super11();
        let err = GMatrix::from_rows(
            &alg,
            s.clone(),
            s,
            alg.zero_degree(),
            vec![vec![t1, GElement::zero(&alg)], vec![GElement::zero(&alg), c(&alg, 1)]],
        )
        .unwrap_err();
        let Error::DegreeViolation(msg) = err else {
            panic!("wrong error")
        };
        assert!(msg.contains("block (0,0)"), "{msg}");
    }

    #[test]
    fn make_matrix_from_blocks() {
        let (alg, t1, t2, s) = super11();
        let blocks = vec![
            vec![vec![vec![c(&alg, 1)]], vec![vec![t1.clone()]]],
            vec![vec![vec![t2.clone()]], vec![vec![c(&alg, 1)]]],
        ];
        let m = GMatrix::make_matrix(&alg, s.clone(), s.clone(), alg.zero_degree(), blocks).unwrap();
        assert_eq!(m.entry(0, 1), &t1);
        let bad = vec![vec![vec![vec![c(&alg, 1)]], vec![]], vec![vec![], vec![]]];
        assert!(matches!(
            GMatrix::make_matrix(&alg, s.clone(), s, alg.zero_degree(), bad),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn degrees_add_under_products() {
        let alg = AlgebraSpec::new(2, &[1, 1, 1], 2).unwrap();
        let s = GradedShape::from_parts(1, &[0, 0, 0]).unwrap();
        let xi = GElement::generator(&alg, 1, 0).unwrap();
        let th = GElement::generator(&alg, 2, 0).unwrap();
        let a = GMatrix::from_rows(&alg, s.clone(), s.clone(), Degree::parse_bits("01").unwrap(), vec![vec![xi]]).unwrap();
        let b = GMatrix::from_rows(&alg, s.clone(), s.clone(), Degree::parse_bits("10").unwrap(), vec![vec![th]]).unwrap();
        let p = a.mat_mul(&b).unwrap();
        assert_eq!(p.degree().to_string(), "11");
        assert_eq!(a.mat_mul(&GMatrix::identity(&alg, &s)).unwrap(), a);
    }

    #[test]
    fn signed_scalar_action() {
        let (alg, t1, t2, s) = super11();
        let x = even(&alg, &s, vec![vec![c(&alg, 1), t2.clone()], vec![t2.clone(), c(&alg, 1)]]);
        let out = x.scalar_mul(&t1).unwrap();
        assert_eq!(out.entry(0, 0), &t1);
        assert_eq!(out.entry(0, 1), &(&t1 * &t2));
        assert_eq!(out.entry(1, 0), &-&(&t1 * &t2));
        assert_eq!(out.entry(1, 1), &-&t1);
        assert_eq!(out.degree().to_string(), "1");
        let two = x.scalar_mul(&c(&alg, 2)).unwrap();
        assert_eq!(two, x.scale(&int(2)));
        assert!(matches!(
            x.scalar_mul(&(&c(&alg, 1) + &t1)),
            Err(Error::NonHomogeneous(_))
        ));
    }

    #[test]
    fn epsilon_tilde_examples() {
        let (alg, t1, t2, s) = super11();
        let x = even(
            &alg,
            &s,
            vec![vec![&c(&alg, 2) + &(&t1 * &t2), t1.clone()], vec![t2.clone(), c(&alg, 3)]],
        );
        let eps = x.epsilon_tilde().unwrap();
        assert_eq!(eps.block(0), &RatMatrix::from_rows(1, 1, vec![int(2)]));
        assert_eq!(eps.block(1), &RatMatrix::from_rows(1, 1, vec![int(3)]));
        let id = GMatrix::identity(&alg, &s).epsilon_tilde().unwrap();
        assert_eq!(id.to_full(), RatMatrix::identity(2));
        let soulful = even(&alg, &s, vec![vec![&t1 * &t2, t1.clone()], vec![t2, GElement::zero(&alg)]]);
        assert_eq!(soulful.epsilon_tilde().unwrap().to_full(), RatMatrix::zeros(2, 2));
        let odd = GMatrix::zero(&alg, s.clone(), s, Degree::parse_bits("1").unwrap());
        assert!(odd.epsilon_tilde().is_err());
    }

    #[test]
    fn invertibility_criteria() {
        let (alg, t1, t2, s) = super11();
        let id = GMatrix::identity(&alg, &s);
        assert!(id.is_invertible().unwrap());
        let soul_diag = even(&alg, &s, vec![vec![&t1 * &t2, t1.clone()], vec![t2.clone(), c(&alg, 1)]]);
        assert!(!soul_diag.is_invertible().unwrap());
        assert!(!soul_diag.diagonal_blocks_invertible_over_lambda().unwrap());
        assert!(!soul_diag.body_invertible().unwrap());
        assert!(matches!(soul_diag.invert(), Err(Error::NotInvertible(_))));
        assert!(matches!(soul_diag.invert_neumann(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn real_diagonal_inverse() {
        let alg = AlgebraSpec::new(1, &[1], 2).unwrap();
        let s = GradedShape::from_parts(1, &[1]).unwrap();
        let d = even(&alg, &s, vec![vec![c(&alg, 2), GElement::zero(&alg)], vec![GElement::zero(&alg), c(&alg, 3)]]);
        let inv = d.invert_neumann().unwrap();
        assert_eq!(inv.entry(0, 0).body(), crate::grassmann::rat(1, 2));
        assert_eq!(inv.entry(1, 1).body(), crate::grassmann::rat(1, 3));
        assert_eq!(d.invert().unwrap(), inv);
        assert_eq!(GMatrix::identity(&alg, &s).invert().unwrap(), GMatrix::identity(&alg, &s));
    }

    #[test]
    fn gl0_dimensions() {
        let s = GradedShape::from_parts(1, &[1, 1, 1]).unwrap();
        assert_eq!(gl0_dimension(&s, &s).unwrap().to_string(), "4|4,4,4");
        let s = GradedShape::from_parts(1, &[2, 1, 1]).unwrap();
        assert_eq!(gl0_dimension(&s, &s).unwrap().to_string(), "7|6,6,6");
        for p in 0..4 {
            for q in 0..4 {
                let s = GradedShape::from_parts(p, &[q]).unwrap();
                let d = gl0_dimension(&s, &s).unwrap();
                assert_eq!(d.counts(), &[p * p + q * q, 2 * p * q]);
            }
        }
    }

    #[test]
    fn gl0_coordinates_grouped_by_degree_column_major() {
        // column-major per degree: degree 00 first, then 01, ...
        let s = GradedShape::from_parts(1, &[1, 1, 1]).unwrap();
        let coords = gl0_coordinates(&s, &s).unwrap();
        assert_eq!(&coords[0..4], &[(0, 0), (1, 1), (2, 2), (3, 3)]);
        assert_eq!(&coords[4..8], &[(1, 0), (0, 1), (3, 2), (2, 3)]);
    }

    #[test]
    fn commutative_determinant() {
        let alg = AlgebraSpec::new(2, &[0, 0, 1], 3).unwrap();
        let z = GElement::generator(&alg, 3, 0).unwrap();
        let block = vec![vec![&c(&alg, 1) + &z, c(&alg, 2)], vec![z.clone(), c(&alg, 3)]];
        // (1+z)·3 − 2z = 3 + z
        assert_eq!(det_commutative(&alg, &block), &c(&alg, 3) + &z);
    }
}
