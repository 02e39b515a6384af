use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a monomial, with trailing zero exponents trimmed so
/// that equality is structural.
///
/// Ordered by total degree, then lexicographically on exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            (0..n)
                .map(|i| self.exponent(i).cmp(&other.exponent(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over ℤ in indexed indeterminates.
///
/// No zero coefficients are ever stored, so `==` is equality of
/// polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = IntPoly::zero();
        p.add_term(Monomial::one(), c.into());
        p
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate with index `i`.
    pub fn var(i: usize) -> Self {
        let mut p = IntPoly::zero();
        p.add_term(Monomial::var(i), BigInt::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = IntPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The value if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        IntPoly { terms: acc }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    /// Substitutes integer values for the indeterminates (missing ones read as 0).
    pub fn evaluate(&self, values: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                let x = values.get(i).cloned().unwrap_or_default();
                term *= num_traits::pow(x, e as usize);
            }
            total += term;
        }
        total
    }

    /// Renders with the given indeterminate names, highest monomial first.
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }
}

struct PolyDisplay<'a> {
    poly: &'a IntPoly,
    names: &'a [&'a str],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let is_one = m.degree() == 0;
            if !abs.is_one() || is_one {
                write!(f, "{abs}")?;
                if !is_one {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                match self.names.get(i) {
                    Some(name) => write!(f, "{name}")?,
                    None => write!(f, "x{i}")?,
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let x = IntPoly::var(0);
        let y = IntPoly::var(1);
        let p = x.add(&y).sub(&y);
        assert_eq!(p, x);
        assert_eq!(p.len(), 1);
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn binomial_square() {
        let x = IntPoly::var(0);
        let y = IntPoly::var(1);
        let lhs = x.add(&y).pow(2);
        let rhs = x.mul(&x).add(&x.mul(&y).mul(&IntPoly::constant(2))).add(&y.mul(&y));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.total_degree(), Some(2));
    }

    #[test]
    fn canonical_printing() {
        let x = IntPoly::var(0);
        let y = IntPoly::var(1);
        let p = x.mul(&y).neg().add(&IntPoly::constant(3)).add(&x.pow(2));
        assert_eq!(p.display_with(&["a", "b"]).to_string(), "a^2 - a*b + 3");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn evaluation() {
        let p = IntPoly::var(0).mul(&IntPoly::var(1)).add(&IntPoly::constant(-2));
        assert_eq!(p.evaluate(&[BigInt::from(3), BigInt::from(4)]), BigInt::from(10));
    }

    #[test]
    fn monomial_order_is_degree_then_lex() {
        let a = Monomial::new(vec![0, 2]);
        let b = Monomial::new(vec![1, 1]);
        let c = Monomial::new(vec![3]);
        assert!(a < b);
        assert!(b < c);
        assert_eq!(Monomial::new(vec![1, 0, 0]), Monomial::var(0));
    }
}
