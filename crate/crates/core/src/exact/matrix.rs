use std::fmt;

use serde::{Deserialize, Serialize};

use super::vector::{ext_gcd, IntVector};
use super::ExactError;

/// Row-major dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[IntVector]) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, |r| r.dim());
        if rows.iter().any(|r| r.dim() != cols) {
            return Err(ExactError::Ragged);
        }
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Builds an `rows × cols` matrix from a flat row-major buffer.
    pub fn from_flat(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::ShapeMismatch { rows, cols, len: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_columns(cols: &[IntVector]) -> Result<Self, ExactError> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_vectors(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.dim(), "matrix/vector shape mismatch");
        IntVector((0..self.rows).map(|i| self.row_slice(i).iter().zip(v.iter()).map(|(a, b)| a * b).sum()).collect())
    }

    fn row_slice(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Replaces rows `(p, q)` by `(s·p + t·q, x·p + y·q)`.
    fn combine_rows(&mut self, p: usize, q: usize, s: i64, t: i64, x: i64, y: i64) {
        for j in 0..self.cols {
            let a = self[(p, j)];
            let b = self[(q, j)];
            self[(p, j)] = s * a + t * b;
            self[(q, j)] = x * a + y * b;
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, k: i64) {
        for j in 0..self.cols {
            let s = self[(source, j)];
            self[(target, j)] -= k * s;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k * n + k] == 0 {
                let Some(swap) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                    return 0;
                };
                for j in 0..n {
                    a.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
                a[i * n + k] = 0;
            }
            prev = a[k * n + k];
        }
        i64::try_from(sign * a[n * n - 1]).expect("determinant exceeds i64")
    }

    pub fn rank(&self) -> usize {
        let (h, _) = hermite_normal_form(self);
        (0..h.rows).filter(|&i| h.row_slice(i).iter().any(|&x| x != 0)).count()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs() == 1
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        if !self.is_unimodular() {
            return None;
        }
        // The HNF of a unimodular matrix is the identity, so the transform is the inverse.
        let (h, u) = hermite_normal_form(self);
        debug_assert_eq!(h, IntMatrix::identity(self.rows));
        Some(u)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Row Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `h = u·m`.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, and zero
/// rows sit at the bottom, so the rank is the number of nonzero rows of `h`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivot_row = 0;
    for col in 0..m.cols {
        if pivot_row == m.rows {
            break;
        }
        for r in pivot_row + 1..m.rows {
            let b = h[(r, col)];
            if b == 0 {
                continue;
            }
            let a = h[(pivot_row, col)];
            let (g, s, t) = ext_gcd(a, b);
            let (x, y) = (-b / g, a / g);
            h.combine_rows(pivot_row, r, s, t, x, y);
            u.combine_rows(pivot_row, r, s, t, x, y);
        }
        let p = h[(pivot_row, col)];
        if p == 0 {
            continue;
        }
        if p < 0 {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let p = h[(pivot_row, col)];
        for r in 0..pivot_row {
            let q = h[(r, col)].div_euclid(p);
            if q != 0 {
                h.add_row_multiple(r, pivot_row, q);
                u.add_row_multiple(r, pivot_row, q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Basis of the integer kernel `{x ∈ ℤⁿ : m·x = 0}`, as a saturated lattice.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVector> {
    let (h, u) = hermite_normal_form(&m.transpose());
    (0..h.rows)
        .filter(|&i| h.row_slice(i).iter().all(|&x| x == 0))
        .map(|i| u.row(i))
        .collect()
}

/// Nonzero rows of the HNF of `rows`: a basis of the lattice they generate,
/// in echelon form.
pub fn lattice_basis(rows: &[IntVector], dim: usize) -> Vec<IntVector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_rows(rows).expect("rows share a dimension");
    debug_assert_eq!(m.cols, dim);
    let (h, _) = hermite_normal_form(&m);
    h.row_vectors().into_iter().filter(|r| !r.is_zero()).collect()
}

/// Coordinates of `x` in an echelon lattice basis (as produced by
/// [`lattice_basis`]), or `None` if `x` is not in the lattice.
pub fn echelon_coordinates(basis: &[IntVector], x: &IntVector) -> Option<IntVector> {
    let mut rest = x.clone();
    let mut coords = Vec::with_capacity(basis.len());
    for b in basis {
        let pivot = b.iter().position(|&c| c != 0)?;
        if rest[pivot] % b[pivot] != 0 {
            return None;
        }
        let k = rest[pivot] / b[pivot];
        rest = &rest - &b.scale(k);
        coords.push(k);
    }
    rest.is_zero().then_some(IntVector(coords))
}

/// Primitive normal to the hyperplane spanned by `n-1` vectors in ℤⁿ, via
/// signed maximal minors. Zero iff the vectors are dependent.
pub fn cofactor_normal(rows: &[IntVector], dim: usize) -> IntVector {
    debug_assert_eq!(rows.len() + 1, dim);
    let mut normal = Vec::with_capacity(dim);
    for skip in 0..dim {
        let minor: Vec<IntVector> = rows
            .iter()
            .map(|r| IntVector(r.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &c)| c).collect()))
            .collect();
        let det = if minor.is_empty() {
            1
        } else {
            IntMatrix::from_rows(&minor).expect("square minor").determinant()
        };
        normal.push(if skip % 2 == 0 { det } else { -det });
    }
    IntVector(normal)
}
