use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix stored row-major.
///
/// Comparisons are tolerance based (see [`ComplexMatrix::approx_eq`]); there is
/// deliberately no `PartialEq` implementation.
#[derive(Clone)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting non-square shapes and
    /// non-finite entries.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("matrix dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::Input(format!(
                "non-finite entry at ({}, {})",
                pos / dim,
                pos % dim
            )));
        }
        Ok(Self { dim, data })
    }

    /// Unchecked constructor for results of internal arithmetic.
    pub(crate) fn from_raw(dim: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Input(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    /// Real matrix from row slices. Panics on ragged input; intended for literals.
    pub fn from_real<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| Complex64::new(v, 0.0)))
            .collect();
        Self::new(N, data).expect("finite real literal")
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_raw(dim, vec![ZERO; dim * dim])
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, ONE)
    }

    pub fn scalar(dim: usize, c: Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = c;
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_raw(self.dim, self.data.iter().map(|&z| z * c).collect())
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self::from_raw(self.dim, self.data.iter().map(|&z| z * c).collect())
    }

    /// `self + c·I`
    pub fn shift(&self, c: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            m[(i, i)] += c;
        }
        m
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Self::from_raw(n, out)
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        self.data
            .chunks(self.dim)
            .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let n = self.dim;
        (0..n)
            .map(|j| (0..n).map(|i| self.data[i * n + j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖self − other‖∞ ≤ tol·(1 + max(‖self‖∞, ‖other‖∞))`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim
            && (self - other).inf_norm() <= tol * (1.0 + self.inf_norm().max(other.inf_norm()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let scale = 1.0 + self.max_abs();
        (0..self.dim).all(|i| {
            (i..self.dim).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol * scale)
        })
    }

    /// `MN − NM`
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Inverse by LU factorisation with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        let scale = self.max_abs();
        for col in 0..n {
            let (piv, pmag) = (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmag <= f64::EPSILON * scale * n as f64 || pmag == 0.0 {
                return Err(Error::Decomposition("matrix is numerically singular".into()));
            }
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let d = a[col * n + col];
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col] / d;
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let (ac, ic) = (a[col * n + j], inv[col * n + j]);
                    a[r * n + j] -= f * ac;
                    inv[r * n + j] -= f * ic;
                }
            }
        }
        for r in 0..n {
            let d = a[r * n + r];
            for j in 0..n {
                inv[r * n + j] /= d;
            }
        }
        let out = Self::from_raw(n, inv);
        if !out.is_finite() {
            return Err(Error::Decomposition("inverse overflowed".into()));
        }
        Ok(out)
    }

    /// Solves `self · X = rhs`.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        Ok(self.inverse()?.matmul(rhs))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        ComplexMatrix::from_raw(
            self.dim,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        ComplexMatrix::from_raw(
            self.dim,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim) {
            let cells: Vec<String> = row
                .iter()
                .map(|z| {
                    if z.im == 0.0 {
                        format!("{:.6e}", z.re)
                    } else {
                        format!("{:.6e}{:+.6e}i", z.re, z.im)
                    }
                })
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Wire form `{"dim": k, "re": [[..]], "im": [[..]]}`; `im` is optional.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Vec<Vec<f64>>>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            self.data.chunks(self.dim).map(|r| r.iter().map(f).collect()).collect()
        };
        let has_im = self.data.iter().any(|z| z.im != 0.0);
        MatrixJson {
            dim: self.dim,
            re: rows(|z| z.re),
            im: has_im.then(|| rows(|z| z.im)),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(d)?;
        let k = raw.dim;
        let check = |name: &str, rows: &Vec<Vec<f64>>| -> std::result::Result<(), D::Error> {
            if rows.len() != k || rows.iter().any(|r| r.len() != k) {
                return Err(D::Error::custom(format!("`{name}` must be a {k}x{k} array")));
            }
            Ok(())
        };
        check("re", &raw.re)?;
        if let Some(im) = &raw.im {
            check("im", im)?;
        }
        let mut data = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let im = raw.im.as_ref().map_or(0.0, |m| m[i][j]);
                data.push(Complex64::new(raw.re[i][j], im));
            }
        }
        ComplexMatrix::new(k, data).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_and_ragged() {
        assert!(ComplexMatrix::new(2, vec![ZERO, ONE, ONE]).is_err());
        assert!(ComplexMatrix::new(1, vec![Complex64::new(f64::NAN, 0.0)]).is_err());
        assert!(ComplexMatrix::new(0, vec![]).is_err());
        let ragged = vec![vec![ONE, ONE], vec![ONE]];
        assert!(ComplexMatrix::from_rows(&ragged).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = ComplexMatrix::from_real([[4.0, 1.0, 0.5], [2.0, 3.0, 1.0], [0.0, 1.0, 5.0]]);
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).approx_eq(&ComplexMatrix::identity(3), 1e-14));
        let singular = ComplexMatrix::from_real([[1.0, 2.0], [2.0, 4.0]]);
        assert!(matches!(singular.inverse(), Err(Error::Decomposition(_))));
    }

    #[test]
    fn json_im_optional() {
        let m: ComplexMatrix =
            serde_json::from_str(r#"{"dim":2,"re":[[1,2],[3,4]]}"#).unwrap();
        assert_eq!(m[(1, 0)], Complex64::new(3.0, 0.0));
        let c: ComplexMatrix =
            serde_json::from_str(r#"{"dim":1,"re":[[1]],"im":[[-2]]}"#).unwrap();
        assert_eq!(c[(0, 0)], Complex64::new(1.0, -2.0));
        let back: ComplexMatrix = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back[(0, 0)], c[(0, 0)]);
        assert!(serde_json::from_str::<ComplexMatrix>(r#"{"dim":2,"re":[[1,2]]}"#).is_err());
    }
}
