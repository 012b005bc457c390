use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::CommPoly;
use crate::freegroup::{Gen, Word};

/// Polynomial in the quantum torus `x y = q y x`, `q` central, stored in the
/// x-left normal form `q^k x^a y^b` as a map `(k, a, b) -> coeff`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    terms: BTreeMap<(i64, i64, i64), BigInt>,
}

/// Normal-orders a word: returns `(k, a, b)` with `word = q^k x^a y^b`.
///
/// Appending `x^e` to `q^k x^a y^b` uses `y^b x^e = q^(-b e) x^e y^b`.
pub(crate) fn normal_order(word: &Word) -> (i64, i64, i64) {
    let (mut k, mut a, mut b) = (0i64, 0i64, 0i64);
    for s in word.syllables() {
        let e = s.exp as i64;
        match s.gen {
            Gen::X => {
                k -= b * e;
                a += e;
            }
            Gen::Y => b += e,
        }
    }
    (k, a, b)
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::q_power(0)
    }

    pub fn q_power(k: i64) -> Self {
        QPoly::from_terms([((k, 0, 0), BigInt::one())])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64, i64), BigInt)>,
    {
        let mut p = QPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: (i64, i64, i64), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64, i64), &BigInt)> {
        self.terms.iter()
    }

    /// Multiplies by the central element `q^k`.
    pub fn shift_q(&self, k: i64) -> QPoly {
        QPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(kk, a, b), c)| ((kk + k, a, b), c.clone()))
                .collect(),
        }
    }

    /// Sets `q = 1`.
    pub fn at_q_one(&self) -> CommPoly {
        CommPoly::from_terms(self.terms.iter().map(|(&(_, a, b), c)| ((a, b), c.clone())))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((k, a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            write!(f, "{}*q^{} x^{} y^{}", c.abs(), k, a, b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;

    /// `(q^k x^a y^b)(q^k' x^a' y^b') = q^(k + k' - b a') x^(a + a') y^(b + b')`.
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (&(k1, a1, b1), c1) in &self.terms {
            for (&(k2, a2, b2), c2) in &rhs.terms {
                out.add_term((k1 + k2 - b1 * a2, a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::w;

    #[test]
    fn normal_ordering() {
        assert_eq!(normal_order(&w("x y x^-1 y^-1")), (1, 0, 0));
        assert_eq!(normal_order(&w("y x")), (-1, 1, 1));
        assert_eq!(normal_order(&w("x^2 y^-3")), (0, 2, -3));
        assert_eq!(normal_order(&w("y^2 x^3")), (-6, 3, 2));
        assert_eq!(normal_order(&Word::one()), (0, 0, 0));
    }

    #[test]
    fn product_uses_commutation_rule() {
        let x = QPoly::from_terms([((0, 1, 0), BigInt::one())]);
        let y = QPoly::from_terms([((0, 0, 1), BigInt::one())]);
        // x y = q (y x)
        assert_eq!(&x * &y, (&y * &x).shift_q(1));
    }
}
