//! Noncommutative Laurent polynomials: finite integer combinations of reduced
//! words in F(x, y).

mod comm;
mod divide;
pub mod identity;
mod qpoly;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use comm::CommPoly;
pub use divide::{right_divide, DEFAULT_SUPPORT_ROUNDS};
pub use qpoly::QPoly;

use crate::error::{Error, Result};
use crate::freegroup::{parse_factor, Gen, Word};

/// A noncommutative Laurent polynomial with integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is ring
/// equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: HashMap<Word, BigInt>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::monomial(Word::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        NCPoly::monomial(Word::one(), c)
    }

    pub fn x() -> Self {
        Word::x().into()
    }

    pub fn y() -> Self {
        Word::y().into()
    }

    pub fn monomial(word: Word, coeff: impl Into<BigInt>) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(word, coeff.into());
        p
    }

    /// Builds a polynomial from `(word, coefficient)` pairs, collecting
    /// repeated words.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Word, C)>,
        C: Into<BigInt>,
    {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c.into());
        }
        p
    }

    pub fn add_term(&mut self, word: Word, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Word::one())
                .is_some_and(|c| c.is_one())
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &Word) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// Terms in canonical (shortlex) order.
    pub fn sorted_terms(&self) -> Vec<(&Word, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn scale(&self, n: &BigInt) -> NCPoly {
        if n.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * n)).collect(),
        }
    }

    /// Multiplies every word on the left and right by fixed words.
    pub fn conjugate_words(&self, left: &Word, right: &Word) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (left.mul(w).mul(right), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> NCPoly {
        let mut acc = NCPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a single-term polynomial with coefficient `±1`.
    pub fn inv_unit(&self) -> Result<NCPoly> {
        if self.terms.len() != 1 {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let (w, c) = self.terms.iter().next().expect("one term");
        if !(c.is_one() || (-c).is_one()) {
            return Err(Error::NotAUnit(self.to_string()));
        }
        Ok(NCPoly::monomial(w.inv(), c.clone()))
    }

    /// Returns the word if this is a single term with coefficient `+1`.
    pub fn as_monic_monomial(&self) -> Option<&Word> {
        if self.terms.len() != 1 {
            return None;
        }
        let (w, c) = self.terms.iter().next()?;
        c.is_one().then_some(w)
    }

    /// The anti-automorphism `x -> y x y x^-1 y^-1`, `y -> y x y^-1`.
    ///
    /// It is an involution, fixes the commutator `x y x^-1 y^-1`, and sends
    /// monomials to monomials with the same coefficient.
    pub fn star(&self) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (star_word(w), c.clone()))
                .collect(),
        }
    }

    /// Every stored coefficient is at least 1.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Every stored coefficient equals 1.
    pub fn is_zero_one(&self) -> bool {
        self.terms.values().all(|c| c.is_one())
    }

    /// Image under the quotient map to commuting `x`, `y`.
    pub fn abelianize(&self) -> CommPoly {
        CommPoly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (w.exponent_sums(), c.clone())),
        )
    }

    /// Image under `x y = q y x` with `q` central, in `q^k x^a y^b` normal form.
    pub fn q_specialize(&self) -> QPoly {
        QPoly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (qpoly::normal_order(w), c.clone())),
        )
    }

    /// Canonical JSON form: terms in shortlex order.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.json_terms()).expect("plain data")
    }

    fn json_terms(&self) -> Vec<JsonTerm> {
        self.sorted_terms()
            .into_iter()
            .map(|(w, c)| JsonTerm {
                coeff: c.to_string(),
                word: w.clone(),
            })
            .collect()
    }
}

pub(crate) fn star_word(w: &Word) -> Word {
    w.substitute_reversed(|g, positive| {
        let img = match g {
            Gen::X => crate::freegroup::w("y x y x^-1 y^-1"),
            Gen::Y => crate::freegroup::w("y x y^-1"),
        };
        if positive {
            img
        } else {
            img.inv()
        }
    })
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    word: Word,
}

impl Serialize for NCPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.json_terms().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<JsonTerm>::deserialize(deserializer)?;
        let mut p = NCPoly::zero();
        for t in raw {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad coefficient `{}`", t.coeff)))?;
            p.add_term(t.word, c);
        }
        Ok(p)
    }
}

impl From<Word> for NCPoly {
    fn from(w: Word) -> Self {
        NCPoly::monomial(w, 1)
    }
}

impl From<i64> for NCPoly {
    fn from(c: i64) -> Self {
        NCPoly::constant(c)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if w.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}

impl FromStr for NCPoly {
    type Err = Error;

    /// Accepts the text form produced by `Display`, and more loosely any sum
    /// of terms `[<int>*]<factor> <factor> ...` separated by ` + ` / ` - `.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = NCPoly::zero();
        let mut sign = BigInt::one();
        let mut coeff: Option<BigInt> = None;
        let mut factors: Vec<(Gen, i32)> = Vec::new();
        let mut in_term = false;
        let mut any = false;

        let flush = |out: &mut NCPoly,
                     sign: &BigInt,
                     coeff: &mut Option<BigInt>,
                     factors: &mut Vec<(Gen, i32)>| {
            let c = coeff.take().unwrap_or_else(BigInt::one) * sign;
            out.add_term(Word::reduce(factors.drain(..)), c);
        };

        for tok in s.split_whitespace() {
            any = true;
            if tok == "+" || tok == "-" {
                if !in_term {
                    return Err(Error::Parse(format!("dangling `{tok}` in `{s}`")));
                }
                flush(&mut out, &sign, &mut coeff, &mut factors);
                in_term = false;
                sign = if tok == "-" { -BigInt::one() } else { BigInt::one() };
                continue;
            }
            let mut body = tok;
            if !in_term {
                if let Some(rest) = body.strip_prefix('-') {
                    if out.is_zero() && sign.is_one() && !rest.is_empty() {
                        sign = -BigInt::one();
                        body = rest;
                    }
                }
                if let Some((c, rest)) = body.split_once('*') {
                    coeff = Some(
                        c.parse()
                            .map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?,
                    );
                    body = rest;
                } else if let Ok(c) = body.parse::<BigInt>() {
                    coeff = Some(c);
                    in_term = true;
                    continue;
                }
            }
            in_term = true;
            if let Some(f) = parse_factor(body)? {
                factors.push(f);
            }
        }
        if !any {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if !in_term {
            return Err(Error::Parse(format!("dangling operator in `{s}`")));
        }
        flush(&mut out, &sign, &mut coeff, &mut factors);
        Ok(out)
    }
}

/// Parses a polynomial literal, panicking on malformed input.
pub fn p(s: &str) -> NCPoly {
    s.parse()
        .unwrap_or_else(|e| panic!("bad polynomial literal `{s}`: {e}"))
}

impl AddAssign<&NCPoly> for NCPoly {
    fn add_assign(&mut self, rhs: &NCPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&NCPoly> for NCPoly {
    fn sub_assign(&mut self, rhs: &NCPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(mut self, rhs: NCPoly) -> NCPoly {
        self += &rhs;
        self
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(mut self, rhs: NCPoly) -> NCPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;

    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut terms: HashMap<Word, BigInt> =
            HashMap::with_capacity(self.terms.len().saturating_mul(rhs.terms.len()).min(1 << 20));
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let word = wa.mul(wb);
                let c = ca * cb;
                match terms.entry(word) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        NCPoly { terms }
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

impl Mul<&NCPoly> for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        &self * rhs
    }
}

impl Mul<NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        self * &rhs
    }
}

/// Product of a sequence of polynomials, left to right.
pub fn product<'a, I>(factors: I) -> NCPoly
where
    I: IntoIterator<Item = &'a NCPoly>,
{
    factors
        .into_iter()
        .fold(NCPoly::one(), |acc, f| &acc * f)
}
