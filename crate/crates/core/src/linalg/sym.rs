use serde::Serialize;

use crate::error::{Error, Result};

/// Largest dimension accepted by the numeric eigensolver.
pub const MAX_EIGEN_DIM: usize = 2000;
/// Off-diagonal Frobenius norm target, relative to ‖M‖_F.
pub const JACOBI_REL_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Absolute gap below which adjacent eigenvalues are reported as one group.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Dense real symmetric matrix, row-major. Writes go through [`SymMatrix::set`],
/// which mirrors the entry, so symmetry holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds from the upper triangle: `f(i, j)` is called for `i <= j` only.
    pub fn from_upper<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Linear combination `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &SymMatrix, b: f64) -> SymMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        SymMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

/// Eigenvalues in non-increasing order, plus tolerance-grouped multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    groups: Vec<EigenGroup>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
}

impl Spectrum {
    /// Sorts `values` non-increasingly and clusters with [`CLUSTER_TOL`].
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let groups = cluster(&values, CLUSTER_TOL);
        Spectrum { values, groups }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn groups(&self) -> &[EigenGroup] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Σ |λ − center|.
    pub fn deviation_sum(&self, center: f64) -> f64 {
        self.values.iter().map(|x| (x - center).abs()).sum()
    }

    /// Elementwise max |a_i − b_i| of the sorted lists, or `None` when the
    /// lengths differ.
    pub fn max_deviation(&self, other: &Spectrum) -> Option<f64> {
        if self.len() != other.len() {
            return None;
        }
        Some(
            self.values
                .iter()
                .zip(&other.values)
                .fold(0.0, |m, (a, b)| m.max((a - b).abs())),
        )
    }
}

fn cluster(sorted_desc: &[f64], tol: f64) -> Vec<EigenGroup> {
    let mut groups: Vec<(f64, usize)> = Vec::new();
    let mut last = f64::NAN;
    for &v in sorted_desc {
        match groups.last_mut() {
            Some((sum, count)) if (last - v).abs() <= tol => {
                *sum += v;
                *count += 1;
            }
            _ => groups.push((v, 1)),
        }
        last = v;
    }
    groups
        .into_iter()
        .map(|(sum, count)| EigenGroup {
            value: sum / count as f64,
            multiplicity: count,
        })
        .collect()
}

/// Eigenvalues with column eigenvectors (`vectors[k]` belongs to `values[k]`).
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

pub fn sym_eigenvalues(m: &SymMatrix) -> Result<Spectrum> {
    let (values, _) = jacobi(m, false)?;
    Ok(Spectrum::from_values(values))
}

/// Full decomposition, sorted by non-increasing eigenvalue.
pub fn sym_eigen(m: &SymMatrix) -> Result<EigenDecomposition> {
    let (values, v) = jacobi(m, true)?;
    let v = v.expect("vectors requested");
    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    Ok(EigenDecomposition {
        values: order.iter().map(|&k| values[k]).collect(),
        vectors: order
            .iter()
            .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
            .collect(),
    })
}

/// Cyclic Jacobi rotations on a working copy. Returns unsorted eigenvalues
/// and, optionally, the accumulated rotation matrix (row-major, columns are
/// eigenvectors).
fn jacobi(m: &SymMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    let n = m.dim();
    if n == 0 || n > MAX_EIGEN_DIM {
        return Err(Error::Dimension {
            n,
            cap: MAX_EIGEN_DIM,
        });
    }
    if !m.is_finite() {
        return Err(Error::InvalidParameter(
            "matrix has non-finite entries".into(),
        ));
    }
    let mut a = m.data.clone();
    let mut v = want_vectors.then(|| {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        id
    });

    let target = JACOBI_REL_TOL * m.frobenius_norm();
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NotConverged {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // tan of the rotation angle, smaller root for stability
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    Ok(((0..n).map(|i| a[i * n + i]).collect(), v))
}
