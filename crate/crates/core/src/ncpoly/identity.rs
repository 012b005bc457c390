//! Exact checks of identities between sums of two-factor products, without
//! materializing the products.
//!
//! Both sides of `sum_i A_i B_i + P = sum_j C_j D_j + Q` can have far more
//! terms than fit in memory. The quantum-torus grading `(k, a, b)` of a word
//! (see [`NCPoly::q_specialize`]) is multiplicative, so every product term's
//! grade is known from its factors' grades. Terms are therefore generated one
//! grade at a time and compared exactly within each grade.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::qpoly::normal_order;
use super::NCPoly;
use crate::freegroup::{Gen, Word};

type Grade = (i64, i64, i64);
type Letters = SmallVec<[u8; 64]>;

fn low_bits(letters: usize) -> u128 {
    if letters == 0 {
        0
    } else {
        (1u128 << (2 * letters)) - 1
    }
}

/// Below this many term products, sides are simply multiplied out.
pub const DIRECT_LIMIT: usize = 200_000;

/// One side of an identity: `sum sign * left * right + plus`.
#[derive(Default)]
pub struct Side<'a> {
    products: Vec<(i64, &'a NCPoly, &'a NCPoly)>,
    plus: Vec<(i64, &'a NCPoly)>,
}

impl<'a> Side<'a> {
    pub fn new() -> Self {
        Side::default()
    }

    pub fn product(mut self, left: &'a NCPoly, right: &'a NCPoly) -> Self {
        self.products.push((1, left, right));
        self
    }

    pub fn minus_product(mut self, left: &'a NCPoly, right: &'a NCPoly) -> Self {
        self.products.push((-1, left, right));
        self
    }

    pub fn plus(mut self, p: &'a NCPoly) -> Self {
        self.plus.push((1, p));
        self
    }

    pub fn minus(mut self, p: &'a NCPoly) -> Self {
        self.plus.push((-1, p));
        self
    }

    fn work(&self) -> usize {
        self.products
            .iter()
            .map(|(_, l, r)| l.len().saturating_mul(r.len()))
            .sum()
    }

    /// Multiplies everything out.
    pub fn expand(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for &(sign, l, r) in &self.products {
            let prod = l * r;
            if sign < 0 {
                out -= &prod;
            } else {
                out += &prod;
            }
        }
        for &(sign, q) in &self.plus {
            if sign < 0 {
                out -= q;
            } else {
                out += q;
            }
        }
        out
    }
}

/// Outcome of a failed comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    /// Both sides were expanded in full.
    Full { lhs: NCPoly, rhs: NCPoly },
    /// Large sides: the first word (in grade order) whose coefficients differ.
    Term { word: Word, lhs: BigInt, rhs: BigInt },
}

impl Mismatch {
    /// Both sides as polynomial text; for large sides only the offending term.
    pub fn sides(&self) -> (String, String) {
        match self {
            Mismatch::Full { lhs, rhs } => (lhs.to_string(), rhs.to_string()),
            Mismatch::Term { word, lhs, rhs } => (
                NCPoly::monomial(word.clone(), lhs.clone()).to_string(),
                NCPoly::monomial(word.clone(), rhs.clone()).to_string(),
            ),
        }
    }
}

/// Exact test of `lhs == rhs`.
pub fn sides_agree(lhs: &Side<'_>, rhs: &Side<'_>) -> Result<(), Mismatch> {
    if lhs.work() + rhs.work() <= DIRECT_LIMIT {
        return direct(lhs, rhs);
    }
    match Graded::build(lhs, rhs) {
        Some(g) => g.compare(),
        None => direct(lhs, rhs),
    }
}

fn direct(lhs: &Side<'_>, rhs: &Side<'_>) -> Result<(), Mismatch> {
    let (l, r) = (lhs.expand(), rhs.expand());
    if l == r {
        Ok(())
    } else {
        Err(Mismatch::Full { lhs: l, rhs: r })
    }
}

fn letter(gen: Gen, positive: bool) -> u8 {
    match (gen, positive) {
        (Gen::X, true) => 0,
        (Gen::X, false) => 1,
        (Gen::Y, true) => 2,
        (Gen::Y, false) => 3,
    }
}

fn word_letters(w: &Word) -> impl Iterator<Item = u8> + '_ {
    w.syllables().iter().flat_map(|s| {
        std::iter::repeat_n(letter(s.gen, s.exp > 0), s.exp.unsigned_abs() as usize)
    })
}

fn letters_to_word(l: &[u8]) -> Word {
    Word::reduce(l.iter().map(|&c| {
        let gen = if c < 2 { Gen::X } else { Gen::Y };
        (gen, if c % 2 == 0 { 1 } else { -1 })
    }))
}

/// A polynomial's terms grouped by grade, letters stored in one arena.
struct GradedPoly {
    arena: Vec<u8>,
    groups: BTreeMap<Grade, Vec<(u32, u32, i64)>>,
    max_len: usize,
    max_coeff: i128,
}

impl GradedPoly {
    /// `None` if a coefficient does not fit comfortably in machine integers.
    fn new(p: &NCPoly) -> Option<Self> {
        let mut arena = Vec::new();
        let mut groups: BTreeMap<Grade, Vec<(u32, u32, i64)>> = BTreeMap::new();
        let mut max_len = 0;
        let mut max_coeff = 0i128;
        for (w, c) in p.iter() {
            let c = c.to_i64().filter(|c| c.unsigned_abs() < 1 << 31)?;
            max_coeff = max_coeff.max(c.abs() as i128);
            let start = arena.len() as u32;
            arena.extend(word_letters(w));
            let len = arena.len() as u32 - start;
            max_len = max_len.max(len as usize);
            groups.entry(normal_order(w)).or_default().push((start, len, c));
        }
        Some(GradedPoly {
            arena,
            groups,
            max_len,
            max_coeff,
        })
    }

    fn letters(&self, start: u32, len: u32) -> &[u8] {
        &self.arena[start as usize..(start + len) as usize]
    }
}

fn combine(g1: Grade, g2: Grade) -> Grade {
    (g1.0 + g2.0 - g1.2 * g2.1, g1.1 + g2.1, g1.2 + g2.2)
}

/// Reduced concatenation of two reduced letter strings.
fn concat(a: &[u8], b: &[u8], out: &mut Letters) {
    let mut cancel = 0;
    let max = a.len().min(b.len());
    while cancel < max && a[a.len() - 1 - cancel] == b[cancel] ^ 1 {
        cancel += 1;
    }
    out.clear();
    out.extend_from_slice(&a[..a.len() - cancel]);
    out.extend_from_slice(&b[cancel..]);
}

#[derive(Clone, Copy)]
struct Packing {
    tail: u32,
    offset: i128,
}

struct Job {
    side: usize,
    sign: i64,
    left: usize,
    left_grade: Grade,
    right: usize,
    right_grade: Grade,
}

struct Graded {
    polys: Vec<GradedPoly>,
    max_product_len: usize,
    max_product_coeff: i128,
    jobs: BTreeMap<Grade, Vec<Job>>,
    extras: BTreeMap<Grade, Vec<(usize, i64, usize, u32, u32, i64)>>,
}

impl Graded {
    fn build(lhs: &Side<'_>, rhs: &Side<'_>) -> Option<Self> {
        let mut polys = Vec::new();
        let mut index: FxHashMap<*const NCPoly, usize> = FxHashMap::default();
        let mut intern = |p: &NCPoly, polys: &mut Vec<GradedPoly>| -> Option<usize> {
            let key = p as *const NCPoly;
            if let Some(&i) = index.get(&key) {
                return Some(i);
            }
            polys.push(GradedPoly::new(p)?);
            index.insert(key, polys.len() - 1);
            Some(polys.len() - 1)
        };

        let mut jobs: BTreeMap<Grade, Vec<Job>> = BTreeMap::new();
        let mut extras: BTreeMap<Grade, Vec<_>> = BTreeMap::new();
        let mut max_product_len = 0;
        let mut max_product_coeff = 0;
        for (side, s) in [lhs, rhs].into_iter().enumerate() {
            for &(sign, l, r) in &s.products {
                let li = intern(l, &mut polys)?;
                let ri = intern(r, &mut polys)?;
                max_product_len = max_product_len.max(polys[li].max_len + polys[ri].max_len);
                max_product_coeff = max_product_coeff.max(polys[li].max_coeff * polys[ri].max_coeff);
                for &lg in polys[li].groups.keys() {
                    for &rg in polys[ri].groups.keys() {
                        jobs.entry(combine(lg, rg)).or_default().push(Job {
                            side,
                            sign,
                            left: li,
                            left_grade: lg,
                            right: ri,
                            right_grade: rg,
                        });
                    }
                }
            }
            for &(sign, q) in &s.plus {
                let qi = intern(q, &mut polys)?;
                max_product_len = max_product_len.max(polys[qi].max_len);
                max_product_coeff = max_product_coeff.max(polys[qi].max_coeff);
                for (&g, terms) in &polys[qi].groups {
                    for &(start, len, c) in terms {
                        extras
                            .entry(g)
                            .or_default()
                            .push((side, sign, qi, start, len, c));
                    }
                }
            }
        }
        Some(Graded {
            polys,
            max_product_len,
            max_product_coeff,
            jobs,
            extras,
        })
    }

    fn grades(&self) -> Vec<&Grade> {
        let mut grades: Vec<&Grade> = self.jobs.keys().chain(self.extras.keys()).collect();
        grades.sort_unstable();
        grades.dedup();
        grades
    }

    /// Bit layout for the sorting path: word length in the top six bits, the
    /// word's letters at two bits each, then a side bit and an offset
    /// coefficient. `None` if that does not fit in a `u128`.
    fn packing(&self) -> Option<Packing> {
        let word_bits = 2 * self.max_product_len as u32;
        let tail = 122u32.checked_sub(word_bits)?;
        let coeff_bits = tail.checked_sub(1)?;
        let offset = 1i128.checked_shl(coeff_bits.checked_sub(1)?)?;
        (self.max_product_coeff < offset).then_some(Packing { tail, offset })
    }

    fn compare(&self) -> Result<(), Mismatch> {
        match self.packing() {
            Some(packing) => self.compare_packed(packing),
            None => self.compare_hashed(),
        }
    }

    /// Each product term becomes one `u128`; sorting a grade's terms puts
    /// equal words next to each other.
    fn compare_packed(&self, Packing { tail, offset }: Packing) -> Result<(), Mismatch> {
        let pack = |pi: usize, start: u32, len: u32| -> u128 {
            self.polys[pi]
                .letters(start, len)
                .iter()
                .fold(0, |acc, &c| acc << 2 | c as u128)
        };
        let encode = |len: usize, body: u128, side: usize, coeff: i64| -> u128 {
            (len as u128) << 122
                | body << tail
                | (side as u128) << (tail - 1)
                | (coeff as i128 + offset) as u128
        };
        let coeff_mask = (1u128 << (tail - 1)) - 1;

        let mut entries: Vec<u128> = Vec::new();
        for grade in self.grades() {
            entries.clear();
            for job in self.jobs.get(grade).into_iter().flatten() {
                let lp = &self.polys[job.left];
                let rp = &self.polys[job.right];
                let rights: Vec<(&[u8], u128, i64)> = rp.groups[&job.right_grade]
                    .iter()
                    .map(|&(s, l, c)| (rp.letters(s, l), pack(job.right, s, l), c))
                    .collect();
                for &(ls, ll, lc) in &lp.groups[&job.left_grade] {
                    let la = lp.letters(ls, ll);
                    let lbits = pack(job.left, ls, ll);
                    let coeff = job.sign * lc;
                    for &(rb, rbits, rc) in &rights {
                        let max = la.len().min(rb.len());
                        let mut cancel = 0;
                        while cancel < max && la[la.len() - 1 - cancel] == rb[cancel] ^ 1 {
                            cancel += 1;
                        }
                        let rest = rb.len() - cancel;
                        let body = ((lbits >> (2 * cancel)) << (2 * rest)) | (rbits & low_bits(rest));
                        entries.push(encode(la.len() - cancel + rest, body, job.side, coeff * rc));
                    }
                }
            }
            for &(side, sign, qi, start, len, c) in self.extras.get(grade).into_iter().flatten() {
                entries.push(encode(len as usize, pack(qi, start, len), side, sign * c));
            }
            entries.sort_unstable();
            for run in entries.chunk_by(|a, b| a >> tail == b >> tail) {
                let mut sums = [0i128; 2];
                for &e in run {
                    let side = (e >> (tail - 1)) as usize & 1;
                    sums[side] += (e & coeff_mask) as i128 - offset;
                }
                if sums[0] != sums[1] {
                    let len = (run[0] >> 122) as usize;
                    let body = run[0] >> tail;
                    let letters: Vec<u8> = (0..len)
                        .rev()
                        .map(|i| ((body >> (2 * i)) & 3) as u8)
                        .collect();
                    return Err(Mismatch::Term {
                        word: letters_to_word(&letters),
                        lhs: BigInt::from(sums[0]),
                        rhs: BigInt::from(sums[1]),
                    });
                }
            }
        }
        Ok(())
    }

    fn compare_hashed(&self) -> Result<(), Mismatch> {
        let mut acc: FxHashMap<Letters, [i128; 2]> = FxHashMap::default();
        let mut buf = Letters::new();
        for grade in self.grades() {
            acc.clear();
            for job in self.jobs.get(grade).into_iter().flatten() {
                let lp = &self.polys[job.left];
                let rp = &self.polys[job.right];
                for &(ls, ll, lc) in &lp.groups[&job.left_grade] {
                    let la = lp.letters(ls, ll);
                    for &(rs, rl, rc) in &rp.groups[&job.right_grade] {
                        concat(la, rp.letters(rs, rl), &mut buf);
                        let slot = match acc.get_mut(buf.as_slice()) {
                            Some(slot) => slot,
                            None => acc.entry(buf.clone()).or_insert([0, 0]),
                        };
                        slot[job.side] += (job.sign * lc * rc) as i128;
                    }
                }
            }
            for &(side, sign, qi, start, len, c) in self.extras.get(grade).into_iter().flatten() {
                let key: Letters = self.polys[qi].letters(start, len).into();
                acc.entry(key).or_insert([0, 0])[side] += (sign * c) as i128;
            }
            let mut bad: Vec<(&Letters, &[i128; 2])> =
                acc.iter().filter(|(_, v)| v[0] != v[1]).collect();
            if !bad.is_empty() {
                bad.sort_unstable_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
                let (letters, v) = bad[0];
                return Err(Mismatch::Term {
                    word: letters_to_word(letters),
                    lhs: BigInt::from(v[0]),
                    rhs: BigInt::from(v[1]),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::p;

    /// Runs both grade-wise paths and insists they agree.
    fn graded_only(lhs: &Side<'_>, rhs: &Side<'_>) -> Result<(), Mismatch> {
        let g = Graded::build(lhs, rhs).expect("small coefficients");
        let sorted = g.compare_packed(g.packing().expect("short words"));
        assert_eq!(sorted, g.compare_hashed());
        sorted
    }

    #[test]
    fn graded_matches_direct() {
        let a = p("1 + x y + 2*y^-1 x - x^2");
        let b = p("x^-1 + y x^-1 + 3*y^2");
        let c = p("y - x^-1 y");
        let ab = &a * &b;
        let abc = &ab + &c;
        let lhs = Side::new().product(&a, &b).plus(&c);
        let rhs = Side::new().plus(&abc);
        assert!(graded_only(&lhs, &rhs).is_ok());
        assert!(sides_agree(&lhs, &rhs).is_ok());

        // commuted product differs
        let wrong = Side::new().product(&b, &a).plus(&c);
        assert!(matches!(
            graded_only(&wrong, &rhs),
            Err(Mismatch::Term { .. })
        ));
        assert!(matches!(sides_agree(&wrong, &rhs), Err(Mismatch::Full { .. })));
    }

    #[test]
    fn cancellation_across_the_seam() {
        let a = p("x y^2 + y x^-1");
        let b = p("y^-2 x^-1 + x y^-1");
        let prod = &a * &b;
        let lhs = Side::new().product(&a, &b);
        let rhs = Side::new().plus(&prod);
        assert!(graded_only(&lhs, &rhs).is_ok());
        let minus = Side::new().product(&a, &b).minus_product(&a, &b);
        assert!(graded_only(&minus, &Side::new()).is_ok());
    }

    #[test]
    fn term_mismatch_reports_word() {
        let a = p("x + y");
        let lhs = Side::new().product(&a, &a);
        let off = &(&a * &a) + &p("y x");
        let rhs = Side::new().plus(&off);
        match graded_only(&lhs, &rhs) {
            Err(Mismatch::Term { word, lhs, rhs }) => {
                assert_eq!(word, crate::freegroup::w("y x"));
                assert_eq!(lhs, BigInt::from(1));
                assert_eq!(rhs, BigInt::from(2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn huge_coefficients_fall_back() {
        let a = p("123456789012345678901234567890*x + y");
        assert!(Graded::build(&Side::new().product(&a, &a), &Side::new()).is_none());
        let sq = &a * &a;
        assert!(sides_agree(&Side::new().product(&a, &a), &Side::new().plus(&sq)).is_ok());
    }

    mod props {
        use super::*;
        use crate::ncpoly::tests::arb_poly;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn graded_agrees_with_expansion(
                a in arb_poly(), b in arb_poly(), c in arb_poly(), d in arb_poly(), e in arb_poly()
            ) {
                let lhs = Side::new().product(&a, &b).minus_product(&c, &d).plus(&e);
                let expanded = lhs.expand();
                let rhs = Side::new().plus(&expanded);
                prop_assert!(graded_only(&lhs, &rhs).is_ok());
                let shifted = &expanded + &NCPoly::x();
                let off = Side::new().plus(&shifted);
                prop_assert!(graded_only(&lhs, &off).is_err());
                prop_assert_eq!(
                    graded_only(&lhs, &off).is_err(),
                    direct(&lhs, &off).is_err()
                );
            }
        }
    }
}
