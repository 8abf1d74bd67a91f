//! Dense complex matrices and the factorizations everything else builds on.
//!
//! One indexing convention is used across the whole crate: storage is
//! row-major, and the composite basis label (a, k) of a d⊗d system maps to
//! the flat index a·d + k. Under that convention a d×d matrix U and the
//! length-d² vector vec(U) are the same data, which is what turns the
//! entanglement-fraction objective into a plain quadratic form.

use nalgebra::DMatrix;
pub use num_complex::Complex64;

use crate::error::LinalgError;

/// Max-norm tolerance for inputs that must be Hermitian. Upstream arithmetic
/// (sums of outer products, partial transposes) accumulates round-off well
/// below this.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Singular values below this count as zero when deciding whether a polar
/// factor is unique.
pub const RANK_TOL: f64 = 1e-12;

/// Dense complex matrix with row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from a row-major entry buffer, rejecting shape
    /// mismatches and non-finite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyShape { rows, cols });
        }
        let expected = rows
            .checked_mul(cols)
            .ok_or(LinalgError::SizeOverflow)?;
        if entries.len() != expected {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                expected,
                found: entries.len(),
            });
        }
        let m = Self { rows, cols, entries };
        if let Some((row, col)) = m.first_non_finite() {
            return Err(LinalgError::NonFiniteEntry { row, col });
        }
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entry slice; index (i, j) lives at i·cols + j.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.entries[i * self.cols + j] = value;
    }

    fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite())
            .map(|flat| (flat / self.cols, flat % self.cols))
    }

    /// Position of the first NaN or infinity, if any.
    pub fn non_finite_position(&self) -> Option<(usize, usize)> {
        self.first_non_finite()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conjugate(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i * rhs.cols + j] += a * rhs.entries[k * rhs.cols + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(
            self.cols,
            v.len(),
            "cannot apply {}x{} to a length-{} vector",
            self.rows,
            self.cols,
            v.len()
        );
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.entries[i * self.cols + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in max_abs_diff"
        );
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max-norm distance from the matrix to its own adjoint.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square(), "Hermiticity is only defined for square matrices");
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let dev = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    /// ‖U†U − I‖ in max-norm; zero for an exact unitary.
    pub fn unitarity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let gram = self.adjoint().mul(self);
        gram.max_abs_diff(&Self::identity(self.rows))
    }

    /// (A + A†)/2, the Hermitian part.
    pub fn symmetrized(&self) -> Self {
        assert!(self.is_square(), "cannot symmetrize a non-square matrix");
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * Complex64::new(0.5, 0.0)
        })
    }

    fn to_na(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j))
    }
}

/// Kronecker product; (a⊗b) entry ((i·rb + k), (j·cb + l)) = a(i,j)·b(k,l).
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let rows = a.rows().checked_mul(b.rows()).ok_or(LinalgError::SizeOverflow)?;
    let cols = a.cols().checked_mul(b.cols()).ok_or(LinalgError::SizeOverflow)?;
    rows.checked_mul(cols).ok_or(LinalgError::SizeOverflow)?;
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| {
        a.get(i / b.rows(), j / b.cols()) * b.get(i % b.rows(), j % b.cols())
    }))
}

/// Spectral decomposition of a Hermitian matrix.
pub struct HermitianEig {
    /// Eigenvalues sorted nonincreasing.
    pub eigenvalues: Vec<f64>,
    /// Matching orthonormal eigenvectors as columns.
    pub eigenvectors: ComplexMatrix,
}

/// Eigendecomposition h = Σ eᵢ vᵢvᵢ†. The input must be Hermitian within
/// [`HERMITICITY_TOL`] and is symmetrized before factorization.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEig, LinalgError> {
    if !h.is_square() {
        return Err(LinalgError::NotSquare { rows: h.rows(), cols: h.cols() });
    }
    let deviation = h.hermitian_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(LinalgError::NotHermitian { deviation, tolerance: HERMITICITY_TOL });
    }
    let factorization = h.symmetrized().to_na().symmetric_eigen();
    let n = h.rows();
    let mut order: Vec<usize> = (0..n).collect();
    // The backend returns eigenvalues in no particular order; sort
    // nonincreasing and carry the eigenvector columns along. A stable sort
    // keeps the factorization's ordering among ties.
    order.sort_by(|&a, &b| {
        factorization.eigenvalues[b]
            .partial_cmp(&factorization.eigenvalues[a])
            .expect("eigenvalues of a finite Hermitian matrix are finite")
    });
    let eigenvalues = order.iter().map(|&k| factorization.eigenvalues[k]).collect();
    let eigenvectors =
        ComplexMatrix::from_fn(n, n, |i, j| factorization.eigenvectors[(i, order[j])]);
    Ok(HermitianEig { eigenvalues, eigenvectors })
}

/// Singular value decomposition m = left·diag(singulars)·right†.
pub struct Svd {
    pub left: ComplexMatrix,
    /// Nonnegative, sorted nonincreasing.
    pub singulars: Vec<f64>,
    pub right: ComplexMatrix,
}

pub fn svd(m: &ComplexMatrix) -> Svd {
    let factorization = m.to_na().svd(true, true);
    let u = factorization.u.expect("left singular vectors were requested");
    let v_t = factorization.v_t.expect("right singular vectors were requested");
    let k = factorization.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        factorization.singular_values[b]
            .partial_cmp(&factorization.singular_values[a])
            .expect("singular values are finite")
    });
    let singulars = order.iter().map(|&i| factorization.singular_values[i]).collect();
    let left = ComplexMatrix::from_fn(m.rows(), k, |i, j| u[(i, order[j])]);
    let right = ComplexMatrix::from_fn(m.cols(), k, |i, j| v_t[(order[j], i)].conj());
    Svd { left, singulars, right }
}

/// Unitary polar factor plus a uniqueness flag.
pub struct PolarUnitary {
    pub unitary: ComplexMatrix,
    /// True when the smallest singular value of the input fell below
    /// [`RANK_TOL`]; the polar factor is then not unique.
    pub rank_deficient: bool,
}

/// The unitary W·V† from m = W·Σ·V†. Among all unitaries U this maximizes
/// Re tr(U†m), which is what makes it the projection step of the ascent
/// iteration.
pub fn polar_unitary(m: &ComplexMatrix) -> Result<PolarUnitary, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let f = svd(m);
    let unitary = f.left.mul(&f.right.adjoint());
    let rank_deficient = f.singulars.last().is_none_or(|&s| s < RANK_TOL);
    Ok(PolarUnitary { unitary, rank_deficient })
}

/// Sum of singular values; for Hermitian input this is the sum of absolute
/// eigenvalues.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    assert!(m.is_square(), "trace norm is used on square matrices only");
    svd(m).singulars.iter().sum()
}

/// Transposes the first tensor factor: out((a,k),(b,l)) = in((b,k),(a,l))
/// under the composite index (a, k) → a·d + k.
pub fn partial_transpose_first(rho: &ComplexMatrix, d: usize) -> Result<ComplexMatrix, LinalgError> {
    let n = d.checked_mul(d).ok_or(LinalgError::SizeOverflow)?;
    if d == 0 || rho.rows() != n || rho.cols() != n {
        return Err(LinalgError::BlockSize {
            rows: rho.rows(),
            cols: rho.cols(),
            d,
            expected: n,
        });
    }
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (a, k) = (r / d, r % d);
        let (b, l) = (c / d, c % d);
        rho.get(b * d + k, a * d + l)
    }))
}

/// Reads a length-d² vector as the d×d matrix with u(a·d + k) = U(a, k).
pub fn vec_to_mat(x: &[Complex64]) -> Result<ComplexMatrix, LinalgError> {
    let len = x.len();
    if len == 0 {
        return Err(LinalgError::NotPerfectSquare { len });
    }
    let d = (len as f64).sqrt().round() as usize;
    if d * d != len {
        return Err(LinalgError::NotPerfectSquare { len });
    }
    ComplexMatrix::new(d, d, x.to_vec())
}

/// Flattens a square matrix into its row-major vector; the inverse of
/// [`vec_to_mat`].
pub fn mat_to_vec(m: &ComplexMatrix) -> Vec<Complex64> {
    assert!(m.is_square(), "only square matrices are vectorized");
    m.entries().to_vec()
}
