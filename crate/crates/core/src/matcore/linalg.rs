// SPDX-License-Identifier: Apache-2.0

//! Small dense helpers on complex matrices.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    /// Columns are the eigenvectors matching `values`.
    pub vectors: CMatrix,
}

impl Eigh {
    pub fn max_value(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    /// Eigenvector for the largest eigenvalue.
    pub fn top_vector(&self) -> CVector {
        self.vectors.column(self.values.len() - 1).into_owned()
    }

    /// Rebuild `V f(D) V*`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &v) in self.values.iter().enumerate() {
            let fv = f(v);
            for i in 0..n {
                scaled[(i, j)] *= fv;
            }
        }
        &scaled * self.vectors.adjoint()
    }
}

/// Hermitian eigendecomposition. The input is symmetrized first; a closed
/// form is used for 2×2 blocks, which dominate the qubit workloads.
pub fn eigh(m: &CMatrix) -> Eigh {
    assert!(m.is_square(), "eigh needs a square matrix");
    let n = m.nrows();
    match n {
        0 => Eigh {
            values: vec![],
            vectors: CMatrix::zeros(0, 0),
        },
        1 => Eigh {
            values: vec![m[(0, 0)].re],
            vectors: CMatrix::identity(1, 1),
        },
        2 => eigh_2x2(m),
        _ => {
            let h = hermitize(m);
            let se = SymmetricEigen::new(h);
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
            let values = order.iter().map(|&i| se.eigenvalues[i]).collect();
            let mut vectors = CMatrix::zeros(n, n);
            for (j, &i) in order.iter().enumerate() {
                vectors.set_column(j, &se.eigenvectors.column(i));
            }
            Eigh { values, vectors }
        }
    }
}

fn eigh_2x2(m: &CMatrix) -> Eigh {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let r = (half * half + b.norm_sqr()).sqrt();
    let values = vec![mean - r, mean + r];
    let scale = a.abs().max(d.abs()).max(b.norm());
    if b.norm() <= 1e-300 || b.norm() <= f64::EPSILON * 1e-3 * scale {
        // Already diagonal: order the basis vectors by their diagonal entry.
        return if a <= d {
            Eigh {
                values: vec![a, d],
                vectors: CMatrix::identity(2, 2),
            }
        } else {
            Eigh {
                values: vec![d, a],
                vectors: CMatrix::from_row_slice(
                    2,
                    2,
                    &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
                ),
            }
        };
    }
    // Top eigenvector written without cancellation (`λ₊ − a = r − half`,
    // `λ₊ − d = r + half`); the other is its orthogonal complement, so the
    // basis stays unitary even for nearly degenerate input.
    let top = if half >= 0.0 {
        [c(r + half, 0.0), b.conj()]
    } else {
        [b, c(r - half, 0.0)]
    };
    let norm = (top[0].norm_sqr() + top[1].norm_sqr()).sqrt();
    let (t0, t1) = (top[0] / norm, top[1] / norm);
    let vectors = CMatrix::from_row_slice(2, 2, &[-t1.conj(), t0, t0.conj(), t1]);
    Eigh { values, vectors }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn eigvalsh(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 2 {
        let a = m[(0, 0)].re;
        let d = m[(1, 1)].re;
        let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
        let mean = 0.5 * (a + d);
        let half = 0.5 * (a - d);
        let r = (half * half + b.norm_sqr()).sqrt();
        return vec![mean - r, mean + r];
    }
    eigh(m).values
}

/// `(M + M*) / 2`.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * c(0.5, 0.0)
}

pub fn trace(m: &CMatrix) -> C64 {
    m.trace()
}

/// Largest elementwise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest elementwise deviation from Hermiticity.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn is_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Trace distance ½‖A − B‖₁ between Hermitian matrices.
pub fn trace_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    0.5 * eigvalsh(&(a - b)).iter().map(|x| x.abs()).sum::<f64>()
}

/// Projector `|v⟩⟨v|` (no normalization).
pub fn outer(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

/// Principal square root of a PSD matrix, negative eigenvalues clipped.
pub fn psd_sqrt(m: &CMatrix) -> CMatrix {
    eigh(m).map(|x| x.max(0.0).sqrt())
}

/// Standard basis vector `e_i` of length `n`.
pub fn basis_vector(n: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[i] = c(1.0, 0.0);
    v
}

/// Matrix unit `E_ij` of size `n × n`.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    m[(i, j)] = c(1.0, 0.0);
    m
}

/// Real diagonal matrix.
pub fn real_diag(values: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_iterator(
        values.len(),
        values.iter().map(|&v| c(v, 0.0)),
    ))
}

/// Pauli matrices σ₁, σ₂, σ₃.
pub fn pauli() -> [CMatrix; 3] {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        CMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        CMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_2x2_matches_general_solver() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.3, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(-0.7, 0.0)],
        );
        let e = eigh(&m);
        let se = SymmetricEigen::new(m.clone());
        let mut reference: Vec<f64> = se.eigenvalues.iter().copied().collect();
        reference.sort_by(f64::total_cmp);
        for (a, b) in e.values.iter().zip(&reference) {
            assert!((a - b).abs() < 1e-14);
        }
        let rebuilt = e.map(|x| x);
        assert!(max_abs_diff(&rebuilt, &m) < 1e-14);
    }

    #[test]
    fn nearly_degenerate_2x2_has_unitary_vectors() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.5000000000000004, 0.0), c(5.2e-18, -2.08e-17), c(5.2e-18, 2.08e-17), c(0.5000000000000001, 0.0)],
        );
        for m in [m.clone(), m.transpose()] {
            let e = eigh(&m);
            let gram = e.vectors.adjoint() * &e.vectors;
            assert!(max_abs_diff(&gram, &CMatrix::identity(2, 2)) < 1e-15);
            assert!(max_abs_diff(&e.map(|v| v), &m) < 1e-15);
        }
    }

    #[test]
    fn diagonal_2x2_is_ordered() {
        let m = real_diag(&[0.9, 0.1]);
        let e = eigh(&m);
        assert_eq!(e.values, vec![0.1, 0.9]);
        assert!(max_abs_diff(&e.map(|x| x), &m) < 1e-15);
    }

    #[test]
    fn general_eigh_is_ascending_and_reconstructs() {
        let m = CMatrix::from_fn(4, 4, |i, j| {
            let re = (i + 2 * j) as f64 * 0.1;
            let im = if i == j { 0.0 } else { (i as f64 - j as f64) * 0.05 };
            c(re, im)
        });
        let h = hermitize(&m);
        let e = eigh(&h);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        assert!(max_abs_diff(&e.map(|x| x), &h) < 1e-13);
    }
}
