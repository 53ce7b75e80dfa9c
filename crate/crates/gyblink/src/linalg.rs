//! Dense complex linear algebra on small matrices: Kronecker products,
//! the partial operator trace over trailing tensor factors, the trace
//! inner product, and Lagrange-interpolation spectral projectors.
//!
//! Multi-index convention: the basis vector (i_1, ..., i_k) of V^k
//! with dim(V) = d maps to the flat index sum_t i_t * d^(k-t), i.e. the
//! first factor is the most significant digit. Being diagonal in the
//! last factor is then a stride-d block pattern.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = Complex64::new(0.0, 0.0);
pub const ONE: C64 = Complex64::new(1.0, 0.0);
pub const I: C64 = Complex64::new(0.0, 1.0);

/// Absolute/relative tolerance pair used by every numeric check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig { abs_tol: 1e-10, rel_tol: 1e-9 }
    }
}

impl ToleranceConfig {
    pub fn abs(abs_tol: f64) -> Self {
        ToleranceConfig { abs_tol, rel_tol: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.abs_tol.is_finite() || !self.rel_tol.is_finite() || self.abs_tol < 0.0 || self.rel_tol < 0.0 {
            return Err(Error::Invalid("tolerances must be finite and >= 0".into()));
        }
        Ok(())
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries", rows * cols),
                got: format!("{}", data.len()),
            });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ComplexMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if !self.same_shape(other) {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                got: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected: format!("{} rows", self.cols),
                got: format!("{}", other.rows),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ComplexMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(ComplexMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: C64) -> Self {
        let data = self.data.iter().map(|a| a * s).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        let data = self.data.iter().map(|a| a.conj()).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> C64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Max entrywise deviation from `other`; infinity on a shape mismatch.
    pub fn max_dev(&self, other: &Self) -> f64 {
        if !self.same_shape(other) {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn mat_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{}", self.cols),
                got: format!("{}", v.len()),
            });
        }
        let mut out = vec![ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = ZERO;
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (a, x) in row.iter().zip(v) {
                acc += a * x;
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Inverse by LU decomposition with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch {
                expected: "square matrix".into(),
                got: format!("{}x{}", self.rows, self.cols),
            });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let (pivot_row, pivot_mag) = (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pivot_mag < 1e-300 {
                return Err(Error::Singular(pivot_mag));
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                    inv.data.swap(col * n + j, pivot_row * n + j);
                }
            }
            let pivot = a[col * n + col];
            for j in 0..n {
                a[col * n + j] /= pivot;
                inv.data[col * n + j] /= pivot;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor == ZERO {
                    continue;
                }
                for j in 0..n {
                    let t = a[col * n + j] * factor;
                    a[r * n + j] -= t;
                    let t = inv.data[col * n + j] * factor;
                    inv.data[r * n + j] -= t;
                }
            }
        }
        Ok(inv)
    }

    /// |det| via LU; used only as an invertibility gauge.
    pub fn abs_det(&self) -> f64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det: f64 = 1.0;
        for col in 0..n {
            let (pivot_row, pivot_mag) = (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pivot_mag == 0.0 {
                return 0.0;
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
            }
            let pivot = a[col * n + col];
            det *= pivot.norm();
            for r in col + 1..n {
                let factor = a[r * n + col] / pivot;
                for j in col..n {
                    let t = a[col * n + j] * factor;
                    a[r * n + j] -= t;
                }
            }
        }
        det
    }

    /// Integer power for square matrices (non-negative exponent).
    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = Self::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product: (p x q) kron (r x s) is (pr x qs) with entry
/// [(i*r + k), (j*s + l)] = a[i,j] * b[k,l].
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker power: `a` tensored with itself `e` times (e = 0 gives the 1x1 identity).
pub fn kron_pow(a: &ComplexMatrix, e: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(1);
    for _ in 0..e {
        out = kron(&out, a);
    }
    out
}

fn checked_log(dim: usize, d: usize) -> Result<usize> {
    if d < 2 {
        return Err(Error::NotAPower { dim, base: d });
    }
    let mut k = 0usize;
    let mut acc = 1usize;
    while acc < dim {
        acc *= d;
        k += 1;
    }
    if acc != dim {
        return Err(Error::NotAPower { dim, base: d });
    }
    Ok(k)
}

/// Operator trace over the last `m` tensor factors: Sp_{k,m} maps
/// End(V^k) to End(V^(k-m)) and preserves the total trace.
pub fn partial_trace_last(f: &ComplexMatrix, d: usize, m: usize) -> Result<ComplexMatrix> {
    if !f.is_square() {
        return Err(Error::ShapeMismatch {
            expected: "square matrix".into(),
            got: format!("{}x{}", f.rows, f.cols),
        });
    }
    let k = checked_log(f.rows, d)?;
    if m == 0 || m >= k {
        return Err(Error::Invalid(format!("need 0 < m < k, got m={m}, k={k}")));
    }
    let dm = d.pow(m as u32);
    let out_dim = f.rows / dm;
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for row in 0..out_dim {
        for col in 0..out_dim {
            let mut acc = ZERO;
            for t in 0..dm {
                acc += f[(row * dm + t, col * dm + t)];
            }
            out[(row, col)] = acc;
        }
    }
    Ok(out)
}

/// Trace inner product <f, g> = tr(f^* g).
pub fn trace_inner(f: &ComplexMatrix, g: &ComplexMatrix) -> Result<C64> {
    if !f.same_shape(g) || !f.is_square() {
        return Err(Error::ShapeMismatch {
            expected: format!("{}x{}", f.rows, f.cols),
            got: format!("{}x{}", g.rows, g.cols),
        });
    }
    // tr(f^dagger g) = sum_ij conj(f[i,j]) g[i,j]
    let acc = f
        .entries()
        .iter()
        .zip(g.entries())
        .map(|(a, b)| a.conj() * b)
        .sum();
    Ok(acc)
}

/// Lagrange-interpolation spectral projectors for a diagonalizable matrix
/// whose spectrum is exactly the given list of distinct eigenvalues:
/// P_lambda = prod_{mu != lambda} (m - mu I) / (lambda - mu).
///
/// Postconditions (checked against `tol`): sum P = I, P^2 = P, m P = lambda P.
pub fn spectral_projectors(
    m: &ComplexMatrix,
    eigenvalues: &[C64],
    tol: &ToleranceConfig,
) -> Result<Vec<ComplexMatrix>> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch {
            expected: "square matrix".into(),
            got: format!("{}x{}", m.rows, m.cols),
        });
    }
    for (i, a) in eigenvalues.iter().enumerate() {
        for b in &eigenvalues[i + 1..] {
            if (a - b).norm() < 1e-12 {
                return Err(Error::DuplicateEigenvalue(format!("{a}")));
            }
        }
    }
    let n = m.rows;
    let id = ComplexMatrix::identity(n);
    let mut projectors = Vec::with_capacity(eigenvalues.len());
    for (i, &lambda) in eigenvalues.iter().enumerate() {
        let mut p = ComplexMatrix::identity(n);
        for (j, &mu) in eigenvalues.iter().enumerate() {
            if i == j {
                continue;
            }
            let factor = m.sub(&id.scale(mu))?.scale(ONE / (lambda - mu));
            p = p.mul(&factor)?;
        }
        projectors.push(p);
    }

    // Residual gauge for the spectrum-mismatch check.
    let scale = m.max_abs().max(1.0);
    let bound = tol.abs_tol + tol.rel_tol * scale;
    let mut residual = 0.0f64;
    let mut sum = ComplexMatrix::zeros(n, n);
    for (p, &lambda) in projectors.iter().zip(eigenvalues) {
        sum = sum.add(p)?;
        residual = residual.max(p.mul(p)?.max_dev(p));
        residual = residual.max(m.mul(p)?.max_dev(&p.scale(lambda)));
    }
    residual = residual.max(sum.max_dev(&id));
    if residual > bound {
        return Err(Error::SpectrumMismatch { residual });
    }
    Ok(projectors)
}

/// True iff shapes match and the max entry deviation is within
/// abs_tol + rel_tol * (max entry magnitude of either side).
pub fn approx_eq(a: &ComplexMatrix, b: &ComplexMatrix, tol: &ToleranceConfig) -> bool {
    if !a.same_shape(b) {
        return false;
    }
    let scale = a.max_abs().max(b.max_abs());
    a.max_dev(b) <= tol.abs_tol + tol.rel_tol * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let data = (0..n * n)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        ComplexMatrix::new(n, n, data).unwrap()
    }

    #[test]
    fn kron_identities() {
        let id2 = ComplexMatrix::identity(2);
        let id4 = ComplexMatrix::identity(4);
        assert_eq!(kron(&id2, &id2), id4);

        let d = ComplexMatrix::diag(&[c(3.0, 0.0), c(7.0, -1.0)]);
        let k = kron(&d, &id2);
        let expected = ComplexMatrix::diag(&[c(3.0, 0.0), c(3.0, 0.0), c(7.0, -1.0), c(7.0, -1.0)]);
        assert_eq!(k, expected);

        let a = ComplexMatrix::zeros(4, 4);
        let b = ComplexMatrix::zeros(2, 2);
        let k = kron(&a, &b);
        assert_eq!((k.rows, k.cols), (8, 8));
    }

    #[test]
    fn partial_trace_identity() {
        let id8 = ComplexMatrix::identity(8);
        let sp = partial_trace_last(&id8, 2, 1).unwrap();
        assert!(approx_eq(&sp, &ComplexMatrix::identity(4).scale(c(2.0, 0.0)), &ToleranceConfig::default()));
    }

    #[test]
    fn partial_trace_elementary_tensor() {
        // Sp_{3,1}(A kron B) = tr(B) * A for A on V^2, B on V.
        let a = random_matrix(4, 11);
        let b = random_matrix(2, 12);
        let sp = partial_trace_last(&kron(&a, &b), 2, 1).unwrap();
        let expected = a.scale(b.trace());
        assert!(sp.max_dev(&expected) < 1e-12);
    }

    #[test]
    fn partial_trace_unit_matrix() {
        let mut e = ComplexMatrix::zeros(8, 8);
        e[(0, 0)] = ONE;
        let sp = partial_trace_last(&e, 2, 1).unwrap();
        let mut expected = ComplexMatrix::zeros(4, 4);
        expected[(0, 0)] = ONE;
        assert_eq!(sp, expected);
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let m = ComplexMatrix::identity(6);
        assert!(matches!(partial_trace_last(&m, 2, 1), Err(Error::NotAPower { .. })));
    }

    #[test]
    fn partial_trace_preserves_trace() {
        for (k, m) in [(3usize, 1usize), (3, 2), (4, 1), (4, 2)] {
            let f = random_matrix(1 << k, 100 + (k * 10 + m) as u64);
            let sp = partial_trace_last(&f, 2, m).unwrap();
            assert!((sp.trace() - f.trace()).norm() < 1e-12, "k={k} m={m}");
        }
    }

    #[test]
    fn partial_trace_is_linear() {
        let f = random_matrix(8, 21);
        let g = random_matrix(8, 22);
        let (alpha, beta) = (c(0.3, -1.1), c(2.0, 0.7));
        let lhs = partial_trace_last(&f.scale(alpha).add(&g.scale(beta)).unwrap(), 2, 1).unwrap();
        let rhs = partial_trace_last(&f, 2, 1)
            .unwrap()
            .scale(alpha)
            .add(&partial_trace_last(&g, 2, 1).unwrap().scale(beta))
            .unwrap();
        assert!(lhs.max_dev(&rhs) < 1e-12);
    }

    #[test]
    fn trace_inner_basics() {
        let id = ComplexMatrix::identity(5);
        assert!((trace_inner(&id, &id).unwrap() - c(5.0, 0.0)).norm() < 1e-15);

        let f = random_matrix(4, 31);
        let ff = trace_inner(&f, &f).unwrap();
        assert!(ff.im.abs() < 1e-12);
        assert!(ff.re >= 0.0);

        // matrix units are orthonormal
        let mut e01 = ComplexMatrix::zeros(3, 3);
        e01[(0, 1)] = ONE;
        let mut e12 = ComplexMatrix::zeros(3, 3);
        e12[(1, 2)] = ONE;
        assert!((trace_inner(&e01, &e01).unwrap() - ONE).norm() < 1e-15);
        assert!(trace_inner(&e01, &e12).unwrap().norm() < 1e-15);
    }

    #[test]
    fn projectors_diag() {
        let m = ComplexMatrix::diag(&[ONE, c(2.0, 0.0)]);
        let ps = spectral_projectors(&m, &[ONE, c(2.0, 0.0)], &ToleranceConfig::default()).unwrap();
        assert!(ps[0].max_dev(&ComplexMatrix::diag(&[ONE, ZERO])) < 1e-14);
        assert!(ps[1].max_dev(&ComplexMatrix::diag(&[ZERO, ONE])) < 1e-14);

        let id4 = ComplexMatrix::identity(4);
        let ps = spectral_projectors(&id4, &[ONE], &ToleranceConfig::default()).unwrap();
        assert_eq!(ps.len(), 1);
        assert!(ps[0].max_dev(&id4) < 1e-14);
    }

    #[test]
    fn projectors_reject_duplicates_and_wrong_spectrum() {
        let m = ComplexMatrix::diag(&[ONE, c(2.0, 0.0)]);
        assert!(matches!(
            spectral_projectors(&m, &[ONE, ONE], &ToleranceConfig::default()),
            Err(Error::DuplicateEigenvalue(_))
        ));
        assert!(matches!(
            spectral_projectors(&m, &[ONE, c(3.0, 0.0)], &ToleranceConfig::default()),
            Err(Error::SpectrumMismatch { .. })
        ));
    }

    #[test]
    fn approx_eq_behaviour() {
        let a = random_matrix(4, 41);
        assert!(approx_eq(&a, &a, &ToleranceConfig::default()));

        let mut b = a.clone();
        b[(0, 0)] += c(1e-6, 0.0);
        assert!(!approx_eq(&a, &b, &ToleranceConfig::abs(1e-10)));

        let mut cm = a.clone();
        cm[(1, 2)] += c(1e-12, 0.0);
        assert!(approx_eq(&a, &cm, &ToleranceConfig::default()));

        let wrong_shape = ComplexMatrix::identity(5);
        assert!(!approx_eq(&a, &wrong_shape, &ToleranceConfig::default()));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = random_matrix(8, 51);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().max_dev(&ComplexMatrix::identity(8)) < 1e-10);
    }

    proptest! {
        #[test]
        fn kron_associative(sa in 0u64..1000, sb in 0u64..1000, sc in 0u64..1000) {
            let a = random_matrix(2, sa);
            let b = random_matrix(2, sb);
            let c = random_matrix(3, sc);
            let lhs = kron(&kron(&a, &b), &c);
            let rhs = kron(&a, &kron(&b, &c));
            prop_assert!(lhs.max_dev(&rhs) < 1e-12);
        }

        #[test]
        fn partial_trace_trace_preserving(seed in 0u64..1000) {
            let f = random_matrix(16, seed);
            let sp = partial_trace_last(&f, 2, 2).unwrap();
            prop_assert!((sp.trace() - f.trace()).norm() < 1e-12);
        }
    }
}
