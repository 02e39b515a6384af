use std::fmt;
use std::ops::{Add, Deref, Index, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::ExactError;

/// Dense integer vector.
///
/// The derived `Ord` is coordinate-lexicographic, which is the canonical
/// order used for every sorted, set-valued result in the crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn new(coords: Vec<i64>) -> Self {
        IntVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        IntVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn dot(&self, other: &IntVector) -> i64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: i64) -> IntVector {
        IntVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Appends one coordinate.
    pub fn extended(&self, last: i64) -> IntVector {
        let mut v = self.0.clone();
        v.push(last);
        IntVector(v)
    }

    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for IntVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl Index<usize> for IntVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(v: [i64; N]) -> Self {
        IntVector(v.to_vec())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<i64> for &IntVector {
    type Output = IntVector;
    fn mul(self, k: i64) -> IntVector {
        self.scale(k)
    }
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g` and `g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Divides out the gcd of the coordinates.
pub fn primitive_part(v: &IntVector) -> Result<IntVector, ExactError> {
    let g = v.content();
    if g == 0 {
        return Err(ExactError::ZeroVector);
    }
    Ok(IntVector(v.0.iter().map(|c| c / g).collect()))
}

/// Returns `w` with `a·w = 1`, built by an extended-gcd sweep over the
/// coordinates in order.
pub fn integral_section(a: &IntVector) -> Result<IntVector, ExactError> {
    if a.content() != 1 {
        return Err(ExactError::NotPrimitive(a.clone()));
    }
    // Invariant: a[..=i]·w[..=i] = g.
    let mut w = vec![0i64; a.dim()];
    let mut g = 0i64;
    for (i, &ai) in a.0.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        if g == 0 {
            g = ai.abs();
            w[i] = ai.signum();
            continue;
        }
        let (ng, s, t) = ext_gcd(g, ai);
        for wj in w.iter_mut().take(i) {
            *wj *= s;
        }
        w[i] = t;
        g = ng;
    }
    debug_assert_eq!(g, 1);
    Ok(IntVector(w))
}
