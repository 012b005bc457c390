use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Laurent polynomial in commuting `x`, `y`: map `(a, b) -> coeff` for
/// `coeff * x^a y^b`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CommPoly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl CommPoly {
    pub fn zero() -> Self {
        CommPoly::default()
    }

    pub fn one() -> Self {
        CommPoly::monomial(0, 0)
    }

    pub fn x() -> Self {
        CommPoly::monomial(1, 0)
    }

    pub fn y() -> Self {
        CommPoly::monomial(0, 1)
    }

    pub fn monomial(a: i64, b: i64) -> Self {
        CommPoly::from_terms([((a, b), BigInt::one())])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), BigInt)>,
    {
        let mut p = CommPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: (i64, i64), c: BigInt) {
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

    pub fn coeff(&self, a: i64, b: i64) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn pow(&self, n: u32) -> CommPoly {
        (0..n).fold(CommPoly::one(), |acc, _| &acc * self)
    }

    /// Exact quotient `self / divisor`, or `DivisionNotExact`.
    ///
    /// Long division on the lexicographic order of exponent pairs, which is a
    /// translation-invariant total order on Z^2; the quotient's smallest
    /// term is forced by the smallest terms of dividend and divisor, which
    /// bounds the loop.
    pub fn exact_div(&self, divisor: &CommPoly) -> Result<CommPoly> {
        let (&dlead, dlead_c) = divisor
            .terms
            .iter()
            .next_back()
            .ok_or_else(|| Error::DivisionNotExact("division by zero".into()))?;
        if self.is_zero() {
            return Ok(CommPoly::zero());
        }
        let &dlow = divisor.terms.keys().next().expect("nonzero");
        let &plow = self.terms.keys().next().expect("nonzero");
        let qlow = (plow.0 - dlow.0, plow.1 - dlow.1);

        let mut rem = self.clone();
        let mut quot = CommPoly::zero();
        while let Some((&lead, lead_c)) = rem.terms.iter().next_back() {
            let e = (lead.0 - dlead.0, lead.1 - dlead.1);
            if e < qlow {
                return Err(Error::DivisionNotExact(format!("({self}) / ({divisor})")));
            }
            let (c, r) = lead_c.div_rem(dlead_c);
            if !r.is_zero() {
                return Err(Error::DivisionNotExact(format!("({self}) / ({divisor})")));
            }
            for (&de, dc) in &divisor.terms {
                rem.add_term((de.0 + e.0, de.1 + e.1), -(dc * &c));
            }
            quot.add_term(e, c);
        }
        Ok(quot)
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            write!(f, "{}*x^{} y^{}", c.abs(), a, b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommPoly({self})")
    }
}

impl Add<&CommPoly> for &CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub<&CommPoly> for &CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&CommPoly> for &CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(a: i64, b: i64) -> CommPoly {
        CommPoly::monomial(a, b)
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = &(&CommPoly::one() + &xy(2, 0)) + &xy(-1, 3);
        let b = &(&xy(0, -1) + &xy(1, 1)) + &CommPoly::one();
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
    }

    #[test]
    fn inexact_division_fails() {
        let one_plus_y = &CommPoly::one() + &CommPoly::y();
        let one_plus_x = &CommPoly::one() + &CommPoly::x();
        assert!(matches!(
            one_plus_y.exact_div(&one_plus_x),
            Err(Error::DivisionNotExact(_))
        ));
        let two = CommPoly::from_terms([((0, 0), BigInt::from(2))]);
        assert!(CommPoly::one().exact_div(&two).is_err());
        assert!(CommPoly::one().exact_div(&CommPoly::zero()).is_err());
    }

    #[test]
    fn monomial_division() {
        assert_eq!(
            (&CommPoly::one() + &CommPoly::y()).exact_div(&CommPoly::x()).unwrap(),
            &xy(-1, 0) + &xy(-1, 1)
        );
    }
}
