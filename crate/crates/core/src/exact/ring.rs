use std::fmt::{self, Debug};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;

/// A commutative ring with identity, as used for automorphism coefficients.
pub trait CoeffRing: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse, if this element is a unit.
    fn inverse(&self) -> Option<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Short human-readable rendering for reports.
    fn render(&self) -> String {
        format!("{self:?}")
    }
}

impl CoeffRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        (self.abs().is_one()).then(|| self.clone())
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl CoeffRing for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl CoeffRing for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn from_i64(n: i64) -> Self {
        IntPoly::constant(n)
    }
    fn add(&self, other: &Self) -> Self {
        IntPoly::add(self, other)
    }
    fn neg(&self) -> Self {
        IntPoly::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        IntPoly::mul(self, other)
    }
    fn inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        c.abs().is_one().then(|| self.clone())
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Integers modulo `M`, stored as canonical residues in `[0, M)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zmod<const M: u64>(u64);

impl<const M: u64> Zmod<M> {
    pub fn new(n: i64) -> Self {
        assert!(M >= 2, "modulus must be at least 2");
        Zmod(n.rem_euclid(M as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const M: u64> Debug for Zmod<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, M)
    }
}

impl<const M: u64> CoeffRing for Zmod<M> {
    fn zero() -> Self {
        Zmod::new(0)
    }
    fn one() -> Self {
        Zmod::new(1)
    }
    fn from_i64(n: i64) -> Self {
        Zmod::new(n)
    }
    fn add(&self, other: &Self) -> Self {
        Zmod(((self.0 as u128 + other.0 as u128) % M as u128) as u64)
    }
    fn neg(&self) -> Self {
        Zmod((M - self.0) % M)
    }
    fn mul(&self, other: &Self) -> Self {
        Zmod(((self.0 as u128 * other.0 as u128) % M as u128) as u64)
    }
    fn inverse(&self) -> Option<Self> {
        let e = (self.0 as i128).extended_gcd(&(M as i128));
        (e.gcd == 1).then(|| Zmod(e.x.rem_euclid(M as i128) as u64))
    }
    fn render(&self) -> String {
        self.0.to_string()
    }
}

/// Dense square-or-rectangular matrix over a coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<R: CoeffRing> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: CoeffRing> RingMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMatrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &RingMatrix<R>) -> RingMatrix<R> {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out: RingMatrix<R> = RingMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn map<S: CoeffRing>(&self, f: impl Fn(&R) -> S) -> RingMatrix<S> {
        RingMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    /// Positions `(row, col)` of nonzero entries off the diagonal.
    pub fn off_diagonal_support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.get(i, j).is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Determinant by cofactor expansion; only meant for small matrices.
    pub fn determinant(&self) -> R {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor_det(&idx, 0)
    }

    fn minor_det(&self, cols: &[usize], row: usize) -> R {
        if cols.is_empty() {
            return R::one();
        }
        let mut total = R::zero();
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.mul(&self.minor_det(&rest, row + 1));
            total = if k % 2 == 0 { total.add(&term) } else { total.sub(&term) };
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_arithmetic() {
        type Z7 = Zmod<7>;
        assert_eq!(Z7::new(-1), Z7::new(6));
        assert_eq!(Z7::new(3).mul(&Z7::new(5)), Z7::new(1));
        assert_eq!(Z7::new(3).inverse(), Some(Z7::new(5)));
        assert_eq!(Zmod::<6>::new(2).inverse(), None);
    }

    #[test]
    fn units() {
        assert_eq!(BigInt::from(-1).inverse(), Some(BigInt::from(-1)));
        assert_eq!(BigInt::from(2).inverse(), None);
        assert_eq!(IntPoly::var(0).inverse(), None);
        assert_eq!(IntPoly::constant(-1).inverse(), Some(IntPoly::constant(-1)));
        assert_eq!(
            BigRational::from_i64(4).inverse(),
            Some(BigRational::new(BigInt::from(1), BigInt::from(4)))
        );
    }

    #[test]
    fn matrix_determinant_over_polynomials() {
        let l = IntPoly::var(0);
        let mut m = RingMatrix::<IntPoly>::identity(3);
        m.set(0, 2, l.clone());
        m.set(1, 0, l.mul(&l));
        assert_eq!(m.determinant(), IntPoly::one());
        let mut n = RingMatrix::<BigInt>::identity(2);
        n.set(0, 0, BigInt::from(3));
        n.set(0, 1, BigInt::from(2));
        n.set(1, 0, BigInt::from(4));
        assert_eq!(n.determinant(), BigInt::from(-5));
    }
}
