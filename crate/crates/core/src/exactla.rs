//! Exact linear algebra over the rationals.
//!
//! Everything downstream reduces to the primitives in this module: Gaussian
//! elimination with exact pivoting, kernel bases, linear solves and Kronecker
//! products. There is no floating point anywhere; entries are arbitrary
//! precision rationals kept in lowest terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn ratio(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p". The result is reduced with a positive denominator.
pub fn parse_rat(s: &str) -> Result<Rat> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| Error::Malformed(format!("bad rational {s:?}: {e}")))
}

/// Renders a rational as "p" or "p/q".
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A dense matrix of exact rationals, row-major.
///
/// Zero-by-n and n-by-zero shapes are legal and show up constantly (empty
/// graded pieces), so every routine must tolerate them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch(
                    "ragged rows in matrix literal".into(),
                ));
            }
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer-entry convenience, used heavily in tests.
    pub fn from_i64(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        RatMatrix::from_fn(r, c, |i, j| rat(rows[i][j]))
    }

    /// A column vector from a slice.
    pub fn column(v: &[Rat]) -> Self {
        RatMatrix {
            rows: v.len(),
            cols: 1,
            entries: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row_slice(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major flattening; the `vec` used by all span computations.
    pub fn flatten(&self) -> Vec<Rat> {
        self.entries.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        RatMatrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn neg(&self) -> Self {
        RatMatrix::from_fn(self.rows, self.cols, |r, c| -self.at(r, c).clone())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        RatMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        RatMatrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        RatMatrix::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                other.at(r - self.rows, c).clone()
            }
        })
    }

    /// Stacks blocks into one matrix; `blocks[i][j]` must have consistent
    /// row/column counts along each band.
    pub fn block(blocks: &[Vec<&RatMatrix>]) -> Self {
        if blocks.is_empty() {
            return Self::zeros(0, 0);
        }
        let row_dims: Vec<usize> = blocks.iter().map(|band| band[0].rows()).collect();
        let col_dims: Vec<usize> = blocks[0].iter().map(|b| b.cols()).collect();
        let rows: usize = row_dims.iter().sum();
        let cols: usize = col_dims.iter().sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, band) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, blk) in band.iter().enumerate() {
                assert_eq!(blk.rows(), row_dims[bi], "ragged block rows");
                assert_eq!(blk.cols(), col_dims[bj], "ragged block cols");
                for r in 0..blk.rows() {
                    for c in 0..blk.cols() {
                        out.set(r0 + r, c0 + c, blk.at(r, c).clone());
                    }
                }
                c0 += blk.cols();
            }
            r0 += band[0].rows();
        }
        out
    }

    pub fn block_diag(blocks: &[&RatMatrix]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows()).sum();
        let cols: usize = blocks.iter().map(|b| b.cols()).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    out.set(r0 + r, c0 + c, b.at(r, c).clone());
                }
            }
            r0 += b.rows();
            c0 += b.cols();
        }
        out
    }

    /// Kronecker product; `out[(i,k),(j,l)] = self[i,j] * other[k,l]` with
    /// row-major pair indexing. Dimensions multiply.
    pub fn kronecker(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.at(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot column indices.
    /// Pivoting picks the first nonzero entry in each column; exact
    /// arithmetic needs no magnitude heuristics.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(pr) = pivot_row else { continue };
            if pr != row {
                for c in 0..m.cols {
                    let a = m.at(row, c).clone();
                    let b = m.at(pr, c).clone();
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let pivot = m.at(row, col).clone();
            for c in col..m.cols {
                let v = m.at(row, c) / &pivot;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c) - &factor * m.at(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, normalized from the RREF free columns.
    /// For the zero map this returns the standard basis in order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for col in 0..self.cols {
                if let Some(prow) = pivot_set[col] {
                    vec[col] = -r.at(prow, free).clone();
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Kernel as a matrix whose columns are the basis vectors.
    pub fn kernel_matrix(&self) -> RatMatrix {
        let basis = self.kernel_basis();
        let k = basis.len();
        RatMatrix::from_fn(self.cols, k, |r, c| basis[c][r].clone())
    }

    /// Solves A x = b exactly; returns the particular solution with all free
    /// variables zero, or None when the system is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: matrix has {} rows but rhs has {} entries",
                self.rows,
                b.len()
            )));
        }
        let rhs = RatMatrix::column(b);
        Ok(self.solve_matrix(&rhs)?.map(|m| m.entries))
    }

    /// Columnwise solve A X = B; None when any column is inconsistent.
    pub fn solve_matrix(&self, b: &RatMatrix) -> Result<Option<RatMatrix>> {
        if b.rows() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: matrix has {} rows but rhs has {}",
                self.rows,
                b.rows()
            )));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        // Any pivot in the rhs block marks an inconsistent column.
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = RatMatrix::zeros(self.cols, b.cols());
        for (row, &col) in pivots.iter().enumerate() {
            for j in 0..b.cols() {
                x.set(col, j, r.at(row, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self
            .solve_matrix(&RatMatrix::identity(self.rows))
            .expect("square shapes agree")?;
        // A right inverse of a square matrix is the inverse.
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    /// Indices of a maximal independent subset of columns (pivot columns of
    /// the RREF), i.e. a deterministic basis of the column space.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// The submatrix of the given columns.
    pub fn select_columns(&self, idx: &[usize]) -> RatMatrix {
        RatMatrix::from_fn(self.rows, idx.len(), |r, c| self.at(r, idx[c]).clone())
    }

    /// Column-space basis as a matrix (pivot columns of self, in order).
    pub fn column_space(&self) -> RatMatrix {
        self.select_columns(&self.independent_columns())
    }
}

impl std::fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", fmt_rat(self.at(r, c)))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Top-level solve per the module contract: some x with A·x = b, or none.
pub fn solve_linear(a: &RatMatrix, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
    a.solve(b)
}

pub fn kernel_basis(a: &RatMatrix) -> Vec<Vec<Rat>> {
    a.kernel_basis()
}

pub fn kronecker(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    a.kronecker(b)
}

/// Coordinates of `target` in the span of `basis` (matrices compared via
/// row-major flattening), or None when it is outside the span.
pub fn express_in_span(basis: &[RatMatrix], target: &RatMatrix) -> Option<Vec<Rat>> {
    let n = target.rows() * target.cols();
    let m = RatMatrix::from_fn(n, basis.len(), |r, c| basis[c].flatten()[r].clone());
    m.solve(&target.flatten()).expect("shapes agree by construction")
}

/// Linear combination of basis matrices.
pub fn combine(basis: &[RatMatrix], coeffs: &[Rat]) -> RatMatrix {
    assert_eq!(basis.len(), coeffs.len());
    let (r, c) = basis
        .first()
        .map(|b| (b.rows(), b.cols()))
        .unwrap_or((0, 0));
    let mut out = RatMatrix::zeros(r, c);
    for (b, k) in basis.iter().zip(coeffs) {
        if !k.is_zero() {
            out = out.add(&b.scale(k));
        }
    }
    out
}

/// Greedily extends the (independent) columns of `cols` to a basis of the
/// ambient space by adjoining standard basis vectors; returns the indices of
/// the standard vectors chosen. Deterministic.
pub fn extend_to_basis(cols: &RatMatrix) -> Vec<usize> {
    let dim = cols.rows();
    let mut current = cols.clone();
    let mut rank = current.rank();
    let mut chosen = Vec::new();
    for j in 0..dim {
        if rank == dim {
            break;
        }
        let mut e = RatMatrix::zeros(dim, 1);
        e.set(j, 0, Rat::one());
        let candidate = current.hstack(&e);
        let r = candidate.rank();
        if r > rank {
            rank = r;
            current = candidate;
            chosen.push(j);
        }
    }
    chosen
}

/// The permutation matrix sending basis index (a, e, b) of A⊗E⊗B to index
/// (a, b, e) of A⊗B⊗E, all row-major. Used to reorder tensor factors.
pub fn swap_last_factors(dim_a: usize, dim_e: usize, dim_b: usize) -> RatMatrix {
    let n = dim_a * dim_e * dim_b;
    let mut m = RatMatrix::zeros(n, n);
    for a in 0..dim_a {
        for e in 0..dim_e {
            for b in 0..dim_b {
                let src = (a * dim_e + e) * dim_b + b;
                let dst = (a * dim_b + b) * dim_e + e;
                m.set(dst, src, Rat::one());
            }
        }
    }
    m
}

/// Given cycle/boundary matrices (columns spanning Z ⊇ B) for source and
/// target and a map F between the ambient spaces carrying Z_src into Z_dst,
/// returns the induced matrix on H = Z/B in the deterministic quotient bases
/// (standard-vector complements inside Z-coordinates). None if F does not
/// map cycles to cycles.
pub fn induced_on_subquotient(
    f: &RatMatrix,
    z_src: &RatMatrix,
    b_src: &RatMatrix,
    z_dst: &RatMatrix,
    b_dst: &RatMatrix,
) -> Option<RatMatrix> {
    // Coordinates of F(z) in Z_dst for each source cycle basis vector.
    let fz = f.mul(z_src);
    let in_cycles = z_dst.solve_matrix(&fz).expect("ambient dims agree")?;
    // Quotient structure on each side: express B inside Z-coordinates and
    // choose the standard-vector complement.
    let quot = |z: &RatMatrix, b: &RatMatrix| -> (RatMatrix, Vec<usize>) {
        let b_in_z = z
            .solve_matrix(b)
            .expect("dims agree")
            .expect("boundaries are cycles");
        let b_basis = b_in_z.column_space();
        let comp = extend_to_basis(&b_basis);
        (b_basis, comp)
    };
    let (b_src_in, comp_src) = quot(z_src, b_src);
    let (b_dst_in, comp_dst) = quot(z_dst, b_dst);
    let _ = b_src_in;
    // Section of the source quotient: the chosen standard vectors.
    let k_src = z_src.cols();
    let sec_src = RatMatrix::from_fn(k_src, comp_src.len(), |r, c| {
        if r == comp_src[c] {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    // Projection of the target quotient: solve [B | S] and keep S-coords.
    let k_dst = z_dst.cols();
    let sec_dst = RatMatrix::from_fn(k_dst, comp_dst.len(), |r, c| {
        if r == comp_dst[c] {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let basis_dst = b_dst_in.hstack(&sec_dst);
    let coords = basis_dst
        .solve_matrix(&in_cycles.mul(&sec_src))
        .expect("dims agree")
        .expect("full basis");
    let proj = RatMatrix::from_fn(comp_dst.len(), coords.cols(), |r, c| {
        coords.at(b_dst_in.cols() + r, c).clone()
    });
    Some(proj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RatMatrix {
        RatMatrix::from_fn(rows, cols, |_, _| {
            let n = rng.gen_range(-3i64..=3);
            let d = rng.gen_range(1i64..=2);
            ratio(n, d)
        })
    }

    #[test]
    fn solve_identity_case() {
        let a = RatMatrix::identity(2);
        let b = vec![rat(3), ratio(-1, 2)];
        let x = solve_linear(&a, &b).unwrap().unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_inconsistent_system() {
        let a = RatMatrix::from_i64(vec![vec![1, 1], vec![2, 2]]);
        let b = vec![rat(1), rat(3)];
        assert!(solve_linear(&a, &b).unwrap().is_none());
    }

    #[test]
    fn solve_diagonal() {
        // Hand elimination: 2x = 1, 3y = 1.
        let a = RatMatrix::from_i64(vec![vec![2, 0], vec![0, 3]]);
        let b = vec![rat(1), rat(1)];
        let x = solve_linear(&a, &b).unwrap().unwrap();
        assert_eq!(x, vec![ratio(1, 2), ratio(1, 3)]);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = RatMatrix::identity(2);
        assert!(solve_linear(&a, &[rat(1)]).is_err());
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&RatMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_zero_is_standard_basis() {
        let basis = kernel_basis(&RatMatrix::zeros(2, 2));
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], vec![rat(1), rat(0)]);
        assert_eq!(basis[1], vec![rat(0), rat(1)]);
    }

    #[test]
    fn kernel_one_dimensional() {
        // Hand elimination for [[1,1]]: kernel spanned by (1, -1) up to scale.
        let basis = kernel_basis(&RatMatrix::from_i64(vec![vec![1, 1]]));
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert!(v[0] == -v[1].clone() && !v[0].is_zero());
    }

    #[test]
    fn kronecker_identities() {
        let i2 = RatMatrix::identity(2);
        let i3 = RatMatrix::identity(3);
        assert!(kronecker(&i2, &i3).is_identity());

        let b = RatMatrix::from_i64(vec![vec![1, 2], vec![3, 4]]);
        let two = RatMatrix::from_i64(vec![vec![2]]);
        assert_eq!(kronecker(&two, &b), b.scale(&rat(2)));

        // Direct expansion of swap ⊗ diag(1,-1).
        let swap = RatMatrix::from_i64(vec![vec![0, 1], vec![1, 0]]);
        let diag = RatMatrix::from_i64(vec![vec![1, 0], vec![0, -1]]);
        let expect = RatMatrix::from_i64(vec![
            vec![0, 0, 1, 0],
            vec![0, 0, 0, -1],
            vec![1, 0, 0, 0],
            vec![0, -1, 0, 0],
        ]);
        assert_eq!(kronecker(&swap, &diag), expect);
    }

    #[test]
    fn kronecker_mixed_product_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 2, 3);
            let c = random_matrix(&mut rng, 3, 2);
            let b = random_matrix(&mut rng, 2, 2);
            let d = random_matrix(&mut rng, 2, 3);
            let lhs = kronecker(&a, &b).mul(&kronecker(&c, &d));
            let rhs = kronecker(&a.mul(&c), &b.mul(&d));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rank_nullity_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let rows = rng.gen_range(0..5);
            let cols = rng.gen_range(0..5);
            let a = random_matrix(&mut rng, rows, cols);
            assert_eq!(a.rank() + a.kernel_basis().len(), cols);
            for v in a.kernel_basis() {
                assert!(a.apply(&v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn solutions_are_exact_on_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..5);
            let a = random_matrix(&mut rng, rows, cols);
            let x0: Vec<Rat> = (0..cols).map(|_| ratio(rng.gen_range(-2..=2), 1)).collect();
            let b = a.apply(&x0);
            let x = solve_linear(&a, &b).unwrap().expect("consistent by construction");
            assert_eq!(a.apply(&x), b);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = RatMatrix::from_i64(vec![vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(RatMatrix::from_i64(vec![vec![1, 1], vec![2, 2]])
            .inverse()
            .is_none());
    }

    #[test]
    fn extend_to_basis_is_deterministic() {
        let cols = RatMatrix::from_i64(vec![vec![1], vec![1], vec![0]]);
        assert_eq!(extend_to_basis(&cols), vec![0, 2]);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rat("-5").unwrap(), rat(-5));
        assert_eq!(fmt_rat(&ratio(-6, 4)), "-3/2");
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn swap_factors_is_a_permutation() {
        let p = swap_last_factors(2, 3, 2);
        assert_eq!(p.rank(), 12);
        assert!(p.mul(&p.transpose()).is_identity());
    }
}
