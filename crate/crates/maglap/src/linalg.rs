//! Dense complex matrix kernel: Hermitian eigendecomposition, determinants,
//! traces, products, adjoints, and restricted traces.
//!
//! All inner products are conjugate linear in the FIRST argument:
//! `<x, y> = sum conj(x_i) * y_i`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from row-major data. Rejects non-finite entries.
    pub fn from_data(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries", rows * cols),
                got: format!("{}", data.len()),
            });
        }
        for (idx, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: idx / cols,
                    col: idx % cols,
                });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.cols + j] = value;
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{} * {}xK", self.rows, self.cols, self.cols),
                got: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::VectorLength {
                expected: self.cols,
                got: x.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self.get(i, j) * x[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entries as `[re, im]` pairs, row by row, for JSON output.
    pub fn to_re_im_rows(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| [self.get(i, j).re, self.get(i, j).im]).collect())
            .collect()
    }
}

/// Square complex matrix with `||M - M*||_max <= 1e-12 * max(1, ||M||_max)`,
/// enforced at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::ShapeMismatch {
                expected: "square matrix".into(),
                got: format!("{}x{}", m.rows, m.cols),
            });
        }
        let tolerance = 1e-12 * f64::max(1.0, m.max_norm());
        let mut deviation = 0.0f64;
        for i in 0..m.rows {
            for j in i..m.cols {
                let d = (m.get(i, j) - m.get(j, i).conj()).norm();
                deviation = deviation.max(d);
            }
        }
        if deviation > tolerance {
            return Err(Error::NotHermitian {
                deviation,
                tolerance,
            });
        }
        Ok(Self { inner: m })
    }

    pub fn dim(&self) -> usize {
        self.inner.rows
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner.get(i, j)
    }

    /// Real trace.
    pub fn trace(&self) -> f64 {
        self.inner.trace().re
    }

    /// Determinant as the product of the eigenvalues (real by symmetry).
    pub fn determinant(&self) -> Result<f64> {
        let decomp = self.eigh()?;
        Ok(decomp.eigenvalues.iter().product())
    }

    /// Eigendecomposition by cyclic Jacobi rotations.
    ///
    /// Sweeps until the off-diagonal Frobenius norm drops below
    /// `1e-12 * max(1, ||M||_F)`, at most [`MAX_JACOBI_SWEEPS`] sweeps.
    /// Eigenvalues come out ascending with eigenvector columns aligned.
    pub fn eigh(&self) -> Result<SpectralDecomposition> {
        let n = self.dim();
        if n == 0 {
            return Ok(SpectralDecomposition {
                eigenvalues: Vec::new(),
                eigenvectors: ComplexMatrix::zeros(0, 0),
            });
        }

        let scale = f64::max(1.0, self.inner.frobenius_norm());
        let tol = 1e-12 * scale;
        // Entries at or below this cannot push the off-norm above tol.
        let skip = tol / ((n * n) as f64);

        let mut a = self.inner.clone();
        for i in 0..n {
            let d = a.get(i, i);
            a.set(i, i, Complex64::new(d.re, 0.0));
        }
        let mut v = ComplexMatrix::identity(n);

        let mut residual = off_diagonal_norm(&a);
        let mut converged = residual <= tol;
        let mut sweeps = 0usize;
        while !converged && sweeps < MAX_JACOBI_SWEEPS {
            for p in 0..n {
                for q in (p + 1)..n {
                    let beta = a.get(p, q);
                    let beta_abs = beta.norm();
                    if beta_abs <= skip {
                        continue;
                    }
                    // Phase factor turning the 2x2 block real symmetric.
                    let w = beta / beta_abs;
                    let alpha = a.get(p, p).re;
                    let gamma = a.get(q, q).re;
                    let tau = (gamma - alpha) / (2.0 * beta_abs);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let sw = s * w.conj();

                    for i in 0..n {
                        if i == p || i == q {
                            continue;
                        }
                        let aip = a.get(i, p);
                        let aiq = a.get(i, q);
                        let new_ip = c * aip - sw * aiq;
                        let new_iq = s * aip + c * w.conj() * aiq;
                        a.set(i, p, new_ip);
                        a.set(p, i, new_ip.conj());
                        a.set(i, q, new_iq);
                        a.set(q, i, new_iq.conj());
                    }
                    a.set(p, p, Complex64::new(alpha - t * beta_abs, 0.0));
                    a.set(q, q, Complex64::new(gamma + t * beta_abs, 0.0));
                    a.set(p, q, Complex64::new(0.0, 0.0));
                    a.set(q, p, Complex64::new(0.0, 0.0));

                    for i in 0..n {
                        let vip = v.get(i, p);
                        let viq = v.get(i, q);
                        v.set(i, p, c * vip - sw * viq);
                        v.set(i, q, s * vip + c * w.conj() * viq);
                    }
                }
            }
            sweeps += 1;
            residual = off_diagonal_norm(&a);
            converged = residual <= tol;
        }
        if !converged {
            return Err(Error::EighNoConvergence {
                sweeps: MAX_JACOBI_SWEEPS,
                residual,
            });
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
        let mut eigenvectors = ComplexMatrix::zeros(n, n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for i in 0..n {
                eigenvectors.set(i, new_col, v.get(i, old_col));
            }
        }
        Ok(SpectralDecomposition {
            eigenvalues,
            eigenvectors,
        })
    }

    /// `Tr(M|_V)` for the span of an orthonormal family: `sum_i <v_i, M v_i>`.
    ///
    /// The family must be orthonormal within `1e-10` in the max Gram deviation.
    pub fn restricted_trace(&self, basis: &[Vec<Complex64>]) -> Result<f64> {
        let deviation = max_gram_deviation(basis, self.dim())?;
        if deviation > 1e-10 {
            return Err(Error::NotOrthonormal { deviation });
        }
        let mut total = 0.0;
        for vec in basis {
            let mv = self.inner.matvec(vec)?;
            total += inner(vec, &mv).re;
        }
        Ok(total)
    }
}

pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Sorted eigensystem of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvector columns, aligned with `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn eigenvector(&self, j: usize) -> Vec<Complex64> {
        self.eigenvectors.column(j)
    }

    /// Largest residual `||M u_j - mu_j u_j||_2` over all eigenpairs.
    pub fn max_residual(&self, m: &HermitianMatrix) -> f64 {
        let mut worst = 0.0f64;
        for (j, &mu) in self.eigenvalues.iter().enumerate() {
            let u = self.eigenvector(j);
            let mu_vec = m.matrix().matvec(&u).expect("aligned dimensions");
            let r: f64 = mu_vec
                .iter()
                .zip(&u)
                .map(|(mv, uv)| (mv - mu * uv).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        worst
    }

    /// Largest deviation of `U* U` from the identity.
    pub fn max_orthonormality_defect(&self) -> f64 {
        let n = self.eigenvalues.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            let ui = self.eigenvector(i);
            for j in i..n {
                let uj = self.eigenvector(j);
                let g = inner(&ui, &uj);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

pub(crate) fn max_gram_deviation(basis: &[Vec<Complex64>], dim: usize) -> Result<f64> {
    let mut deviation = 0.0f64;
    for (i, vi) in basis.iter().enumerate() {
        if vi.len() != dim {
            return Err(Error::VectorLength {
                expected: dim,
                got: vi.len(),
            });
        }
        for (j, vj) in basis.iter().enumerate().skip(i) {
            let g = inner(vi, vj);
            let target = if i == j { 1.0 } else { 0.0 };
            deviation = deviation.max((g - target).norm());
        }
    }
    Ok(deviation)
}

/// Inner product, conjugate linear in the first argument.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Dense random Hermitian matrix with entries of order one, deterministic
/// under `seed`. Used by self-test campaigns.
pub fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, Complex64::new(rng.gen_range(-2.0..2.0), 0.0));
        for j in (i + 1)..n {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    HermitianMatrix::new(m).expect("symmetric by construction")
}

/// Euclidean norm.
pub fn norm2(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigh_single_edge_laplacian() {
        let m = HermitianMatrix::new(
            ComplexMatrix::from_data(2, 2, vec![c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)])
                .unwrap(),
        )
        .unwrap();
        let d = m.eigh().unwrap();
        assert!((d.eigenvalues[0] - 0.0).abs() < 1e-12);
        assert!((d.eigenvalues[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn eigh_reconstruction_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for seed in 0..50 {
            let n = rng.gen_range(1..=6);
            let m = random_hermitian(n, seed);
            let d = m.eigh().unwrap();
            // Reconstruct U Lambda U* and compare entrywise.
            let mut lambda = ComplexMatrix::zeros(n, n);
            for (i, &mu) in d.eigenvalues.iter().enumerate() {
                lambda.set(i, i, c(mu, 0.0));
            }
            let rec = d
                .eigenvectors
                .matmul(&lambda)
                .unwrap()
                .matmul(&d.eigenvectors.adjoint())
                .unwrap();
            let mut diff = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    diff += (rec.get(i, j) - m.get(i, j)).norm_sqr();
                }
            }
            assert!(diff.sqrt() <= 1e-9, "reconstruction error {}", diff.sqrt());
        }
    }

    #[test]
    fn eigh_is_deterministic() {
        let m = random_hermitian(8, 11);
        let d1 = m.eigh().unwrap();
        let d2 = m.eigh().unwrap();
        assert_eq!(d1.eigenvalues, d2.eigenvalues);
        assert_eq!(d1.eigenvectors, d2.eigenvectors);
    }

    #[test]
    fn determinant_of_identity() {
        let m = HermitianMatrix::new(ComplexMatrix::identity(3)).unwrap();
        assert!((m.determinant().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_equals_eigenvalue_sum() {
        for seed in 0..20 {
            let m = random_hermitian(5, seed);
            let d = m.eigh().unwrap();
            let sum: f64 = d.eigenvalues.iter().sum();
            let scale = f64::max(1.0, m.matrix().frobenius_norm());
            assert!((m.trace() - sum).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn adjoint_is_involutive() {
        let m = ComplexMatrix::from_data(2, 3, vec![
            c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.5),
            c(-1.0, 0.0), c(2.0, 2.0), c(0.0, 0.0),
        ])
        .unwrap();
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn restricted_trace_full_basis_is_trace() {
        let m = random_hermitian(4, 5);
        let basis: Vec<Vec<Complex64>> = (0..4)
            .map(|i| {
                let mut e = vec![c(0.0, 0.0); 4];
                e[i] = c(1.0, 0.0);
                e
            })
            .collect();
        let t = m.restricted_trace(&basis).unwrap();
        assert!((t - m.trace()).abs() < 1e-10);
    }

    #[test]
    fn restricted_trace_eigenbasis_prefix_is_partial_sum() {
        let m = random_hermitian(6, 9);
        let d = m.eigh().unwrap();
        for k in 1..=6 {
            let frame: Vec<Vec<Complex64>> = (0..k).map(|j| d.eigenvector(j)).collect();
            let t = m.restricted_trace(&frame).unwrap();
            let partial: f64 = d.eigenvalues[..k].iter().sum();
            assert!((t - partial).abs() < 1e-9);
        }
    }

    #[test]
    fn restricted_trace_rejects_non_orthonormal() {
        let m = HermitianMatrix::new(ComplexMatrix::identity(3)).unwrap();
        let bad = vec![vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]];
        match m.restricted_trace(&bad) {
            Err(Error::NotOrthonormal { deviation }) => assert!(deviation > 0.5),
            other => panic!("expected NotOrthonormal, got {:?}", other),
        }
    }

    #[test]
    fn restricted_trace_is_basis_independent() {
        // Rotate a 2-frame by a unitary within its span; the trace must agree.
        let m = random_hermitian(5, 13);
        let d = m.eigh().unwrap();
        let v0 = d.eigenvector(1);
        let v1 = d.eigenvector(3);
        let t1 = m.restricted_trace(&[v0.clone(), v1.clone()]).unwrap();
        // In-span rotation by angle 0.7 with a phase twist.
        let (co, si) = (0.7f64.cos(), 0.7f64.sin());
        let phase = Complex64::from_polar(1.0, 0.4);
        let w0: Vec<Complex64> = v0.iter().zip(&v1).map(|(a, b)| co * a + si * phase * b).collect();
        let w1: Vec<Complex64> = v0
            .iter()
            .zip(&v1)
            .map(|(a, b)| -si * phase.conj() * a + co * b)
            .collect();
        let t2 = m.restricted_trace(&[w0, w1]).unwrap();
        assert!((t1 - t2).abs() < 1e-9);
    }

    #[test]
    fn hermitian_check_rejects_asymmetry() {
        let m = ComplexMatrix::from_data(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.5, 0.0), c(1.0, 0.0)])
            .unwrap();
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn non_finite_entries_rejected() {
        let r = ComplexMatrix::from_data(1, 1, vec![c(f64::NAN, 0.0)]);
        assert!(matches!(r, Err(Error::NonFiniteEntry { .. })));
    }

    #[test]
    fn matmul_shape_mismatch() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&b), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn psd_determinant_is_nonnegative() {
        // Gram matrices A* A are positive semidefinite.
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..30 {
            let n = rng.gen_range(1..=6);
            let k = rng.gen_range(1..=n);
            let mut a = ComplexMatrix::zeros(k, n);
            for i in 0..k {
                for j in 0..n {
                    a.set(i, j, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
                }
            }
            let gram = HermitianMatrix::new(a.adjoint().matmul(&a).unwrap()).unwrap();
            let det = gram.determinant().unwrap();
            let scale = f64::max(1.0, gram.matrix().frobenius_norm());
            assert!(det >= -1e-9 * scale.powi(n as i32), "det = {}", det);
        }
    }

    proptest::proptest! {
        /// Any Hermitian matrix built from bounded entries decomposes within
        /// the residual and orthonormality contracts.
        #[test]
        fn eigh_contract_on_arbitrary_hermitian(
            n in 1usize..6,
            entries in proptest::collection::vec(-10.0f64..10.0, 72),
        ) {
            let mut m = ComplexMatrix::zeros(n, n);
            let mut it = entries.into_iter();
            for i in 0..n {
                m.set(i, i, c(it.next().unwrap(), 0.0));
                for j in (i + 1)..n {
                    let z = c(it.next().unwrap(), it.next().unwrap());
                    m.set(i, j, z);
                    m.set(j, i, z.conj());
                }
            }
            let m = HermitianMatrix::new(m).unwrap();
            let d = m.eigh().unwrap();
            let scale = f64::max(1.0, m.matrix().frobenius_norm());
            proptest::prop_assert!(d.max_residual(&m) <= 1e-8 * scale);
            proptest::prop_assert!(d.max_orthonormality_defect() <= 1e-10);
            let sum: f64 = d.eigenvalues.iter().sum();
            proptest::prop_assert!((sum - m.trace()).abs() <= 1e-9 * scale);
        }
    }
}
