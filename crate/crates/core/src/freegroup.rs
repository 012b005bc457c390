//! Reduced words in the free group on two generators `x`, `y`.
//!
//! Words are stored run-length encoded as syllables `(generator, exponent)`,
//! with adjacent syllables on distinct generators and no zero exponents. The
//! empty word is the identity.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::Error;

/// One of the two free generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
}

impl Gen {
    pub fn symbol(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
        }
    }

    /// Rank of a single letter in the alphabet `x < x^-1 < y < y^-1`.
    fn letter_rank(self, positive: bool) -> u8 {
        match (self, positive) {
            (Gen::X, true) => 0,
            (Gen::X, false) => 1,
            (Gen::Y, true) => 2,
            (Gen::Y, false) => 3,
        }
    }
}

/// A run `gen^exp` with `exp != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: i32,
}

impl Syllable {
    pub fn new(gen: Gen, exp: i32) -> Self {
        Syllable { gen, exp }
    }
}

type Syllables = SmallVec<[Syllable; 6]>;

/// A reduced word of F(x, y).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syl: Syllables,
}

impl Word {
    pub fn one() -> Self {
        Word::default()
    }

    pub fn gen(gen: Gen) -> Self {
        Word::power(gen, 1)
    }

    pub fn x() -> Self {
        Word::gen(Gen::X)
    }

    pub fn y() -> Self {
        Word::gen(Gen::Y)
    }

    pub fn power(gen: Gen, exp: i32) -> Self {
        let mut syl = Syllables::new();
        if exp != 0 {
            syl.push(Syllable::new(gen, exp));
        }
        Word { syl }
    }

    /// Reduces an arbitrary sequence of `(generator, exponent)` pairs.
    pub fn reduce<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (Gen, i32)>,
    {
        let mut w = Word::one();
        for (gen, exp) in raw {
            w.push(gen, exp);
        }
        w
    }

    fn push(&mut self, gen: Gen, exp: i32) {
        if exp == 0 {
            return;
        }
        match self.syl.last_mut() {
            Some(last) if last.gen == gen => {
                last.exp += exp;
                if last.exp == 0 {
                    self.syl.pop();
                }
            }
            _ => self.syl.push(Syllable::new(gen, exp)),
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syl
    }

    pub fn is_one(&self) -> bool {
        self.syl.is_empty()
    }

    /// Total number of letters, `sum |exp|`.
    pub fn len(&self) -> u64 {
        self.syl.iter().map(|s| s.exp.unsigned_abs() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syl.is_empty()
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        let mut out = self.clone();
        out.mul_assign(rhs);
        out
    }

    pub fn mul_assign(&mut self, rhs: &Word) {
        let mut rest = rhs.syl.iter();
        // only the seam can cancel; once a merge leaves a nonzero exponent
        // the remainder is appended verbatim
        for s in rest.by_ref() {
            match self.syl.last_mut() {
                Some(last) if last.gen == s.gen => {
                    last.exp += s.exp;
                    if last.exp == 0 {
                        self.syl.pop();
                        continue;
                    }
                    break;
                }
                _ => {
                    self.syl.push(*s);
                    break;
                }
            }
        }
        self.syl.extend(rest.copied());
    }

    pub fn inv(&self) -> Word {
        Word {
            syl: self
                .syl
                .iter()
                .rev()
                .map(|s| Syllable::new(s.gen, -s.exp))
                .collect(),
        }
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut out = Word::one();
        for _ in 0..n.unsigned_abs() {
            out.mul_assign(&base);
        }
        out
    }

    /// Exponent sums `(total x, total y)`; the image in the abelianization.
    pub fn exponent_sums(&self) -> (i64, i64) {
        self.syl.iter().fold((0, 0), |(a, b), s| match s.gen {
            Gen::X => (a + s.exp as i64, b),
            Gen::Y => (a, b + s.exp as i64),
        })
    }

    fn letters(&self) -> impl Iterator<Item = u8> + '_ {
        self.syl.iter().flat_map(|s| {
            let r = s.gen.letter_rank(s.exp > 0);
            std::iter::repeat_n(r, s.exp.unsigned_abs() as usize)
        })
    }

    /// Rewrites every letter through `image`, which receives the generator and
    /// the sign of the letter (`true` for positive) and returns its image word.
    pub fn substitute<F>(&self, mut image: F) -> Word
    where
        F: FnMut(Gen, bool) -> Word,
    {
        let xp = image(Gen::X, true);
        let xn = image(Gen::X, false);
        let yp = image(Gen::Y, true);
        let yn = image(Gen::Y, false);
        let mut out = Word::one();
        for s in &self.syl {
            let w = match (s.gen, s.exp > 0) {
                (Gen::X, true) => &xp,
                (Gen::X, false) => &xn,
                (Gen::Y, true) => &yp,
                (Gen::Y, false) => &yn,
            };
            for _ in 0..s.exp.unsigned_abs() {
                out.mul_assign(w);
            }
        }
        out
    }

    /// Same as [`Word::substitute`] but reads the word right to left, giving an
    /// anti-homomorphism.
    pub fn substitute_reversed<F>(&self, mut image: F) -> Word
    where
        F: FnMut(Gen, bool) -> Word,
    {
        let xp = image(Gen::X, true);
        let xn = image(Gen::X, false);
        let yp = image(Gen::Y, true);
        let yn = image(Gen::Y, false);
        let mut out = Word::one();
        for s in self.syl.iter().rev() {
            let w = match (s.gen, s.exp > 0) {
                (Gen::X, true) => &xp,
                (Gen::X, false) => &xn,
                (Gen::Y, true) => &yp,
                (Gen::Y, false) => &yn,
            };
            for _ in 0..s.exp.unsigned_abs() {
                out.mul_assign(w);
            }
        }
        out
    }
}

/// Shortlex: letter length first, then the letter sequence under
/// `x < x^-1 < y < y^-1`.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syl.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syl.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if s.exp == 1 {
                write!(f, "{}", s.gen.symbol())?;
            } else {
                write!(f, "{}^{}", s.gen.symbol(), s.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

/// Parses one whitespace-free factor: `x`, `y^-2`, or `1`.
pub(crate) fn parse_factor(tok: &str) -> Result<Option<(Gen, i32)>, Error> {
    if tok == "1" {
        return Ok(None);
    }
    let (head, exp) = match tok.split_once('^') {
        Some((h, e)) => {
            let exp: i32 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in factor `{tok}`")))?;
            (h, exp)
        }
        None => (tok, 1),
    };
    let gen = match head {
        "x" => Gen::X,
        "y" => Gen::Y,
        _ => return Err(Error::Parse(format!("unknown factor `{tok}`"))),
    };
    Ok(Some((gen, exp)))
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut raw = Vec::new();
        let mut any = false;
        for tok in s.split_whitespace() {
            any = true;
            if let Some(f) = parse_factor(tok)? {
                raw.push(f);
            }
        }
        if !any {
            return Err(Error::Parse("empty word".into()));
        }
        Ok(Word::reduce(raw))
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(Gen, i32)> = self.syl.iter().map(|s| (s.gen, s.exp)).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(Gen, i32)>::deserialize(deserializer)?;
        Ok(Word::reduce(pairs))
    }
}

/// Parses a word, panicking on malformed input. Intended for literals.
pub fn w(s: &str) -> Word {
    s.parse().unwrap_or_else(|e| panic!("bad word literal `{s}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_reduced(w: &Word) -> bool {
        w.syl.iter().all(|s| s.exp != 0) && w.syl.windows(2).all(|p| p[0].gen != p[1].gen)
    }

    #[test]
    fn reduce_examples() {
        use Gen::*;
        assert_eq!(Word::reduce([(X, 1), (Y, 1), (Y, -1)]), Word::x());
        assert_eq!(Word::reduce([]), Word::one());
        assert_eq!(
            Word::reduce([(Y, 1), (X, 1), (Y, -1), (Y, 1), (X, -1)]),
            Word::y()
        );
        assert_eq!(Word::reduce([(X, 0), (Y, 2), (Y, 0), (Y, -1)]), Word::y());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(w("x y").mul(&w("y^-1 x")), w("x^2"));
        let a = w("x y^-3 x");
        assert_eq!(a.mul(&Word::one()), a);
        assert_eq!(Word::one().mul(&a), a);
        // C R_0 = x
        assert_eq!(w("x y x^-1 y^-1").mul(&w("y x y^-1")), Word::x());
        // cascading cancellation through several syllables
        assert_eq!(w("x y^2 x^-1").mul(&w("x y^-2 x^-1")), Word::one());
    }

    #[test]
    fn inv_examples() {
        assert_eq!(w("x y x^-1").inv(), w("x y^-1 x^-1"));
        assert_eq!(Word::one().inv(), Word::one());
    }

    #[test]
    fn compare_examples() {
        assert!(Word::one() < Word::x());
        assert!(Word::x() < Word::y());
        assert!(w("x^2") < w("x y"));
        assert!(w("x") < w("x^-1"));
        assert!(w("x^-1") < w("y"));
        assert!(w("y") < w("y^-1"));
        assert!(w("y^-1") < w("x^2"));
    }

    #[test]
    fn text_roundtrip_and_errors() {
        let a = w("x^2 y^-1 x^-1");
        assert_eq!(a.to_string(), "x^2 y^-1 x^-1");
        assert_eq!(a.to_string().parse::<Word>().unwrap(), a);
        assert_eq!(w("1"), Word::one());
        assert_eq!(Word::one().to_string(), "1");
        assert_eq!(w("x x x^-1 y 1"), w("x y"));
        assert!("x^".parse::<Word>().is_err());
        assert!("z".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
        assert!("xy".parse::<Word>().is_err());
    }

    #[test]
    fn json_form() {
        let a = w("x^2 y^-1");
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"[["x",2],["y",-1]]"#);
        let back: Word = serde_json::from_str(r#"[["x",1],["x",-1],["y",3]]"#).unwrap();
        assert_eq!(back, w("y^3"));
    }

    pub(crate) fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((prop::bool::ANY, -3i32..=3), 0..8).prop_map(|v| {
            Word::reduce(
                v.into_iter()
                    .map(|(g, e)| (if g { Gen::X } else { Gen::Y }, e)),
            )
        })
    }

    proptest! {
        #[test]
        fn mul_associative(a in arb_word(), b in arb_word(), c in arb_word()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(is_reduced(&a.mul(&b)));
        }

        #[test]
        fn inverse_laws(a in arb_word()) {
            prop_assert!(a.mul(&a.inv()).is_one());
            prop_assert!(a.inv().mul(&a).is_one());
            prop_assert_eq!(a.inv().inv(), a);
        }

        #[test]
        fn reduce_idempotent(raw in prop::collection::vec((prop::bool::ANY, -2i32..=2), 0..12)) {
            let once = Word::reduce(raw.into_iter().map(|(g, e)| (if g { Gen::X } else { Gen::Y }, e)));
            let twice = Word::reduce(once.syllables().iter().map(|s| (s.gen, s.exp)));
            prop_assert!(is_reduced(&once));
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn compare_total_order(a in arb_word(), b in arb_word(), c in arb_word()) {
            let ab = a.cmp(&b);
            prop_assert_eq!(ab, b.cmp(&a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }

        #[test]
        fn display_parses_back(a in arb_word()) {
            prop_assert_eq!(a.to_string().parse::<Word>().unwrap(), a);
        }
    }
}
