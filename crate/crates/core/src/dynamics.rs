//! The noncommutative rank-2 recursions
//!
//! ```text
//! R_{n+1} C R_{n-1} = 1 + R_n^b   (n odd)
//!                   = 1 + R_n^c   (n even)
//! ```
//!
//! with `C = x y x^-1 y^-1`, `C R_0 = x`, `R_1 = y`. Forward evolution in the
//! affine cases uses the division-free linear recursions with the explicit
//! conserved quantity `K`; the nonlinear relation is only ever checked by
//! multiplication. Negative indices come from the anti-automorphism `star`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::freegroup::{w, Word};
use crate::ncpoly::{p, right_divide, NCPoly};
use crate::ncpoly::identity::Side;
use crate::verify::report::expect_sides;
use crate::verify::VerifyReport;

/// The systems and initial-data flavours covered by the engine.
///
/// `*Xy` trajectories are expressed in the data `(x, y) = (C R_0, R_1)`;
/// `*XY` ones in `(X, Y) = (C R_1, R_2)`, written with the same letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    B22,
    B14Xy,
    B14XY,
    B41Xy,
    B41XY,
}

impl CaseTag {
    pub const ALL: [CaseTag; 5] = [
        CaseTag::B22,
        CaseTag::B14Xy,
        CaseTag::B14XY,
        CaseTag::B41Xy,
        CaseTag::B41XY,
    ];

    /// `(b, c)`.
    pub fn exponents(self) -> (u32, u32) {
        match self {
            CaseTag::B22 => (2, 2),
            CaseTag::B14Xy | CaseTag::B14XY => (1, 4),
            CaseTag::B41Xy | CaseTag::B41XY => (4, 1),
        }
    }

    /// Exponent in the relation centred at `n`: `b` for odd `n`, `c` for even.
    pub fn exponent_at(self, n: i64) -> u32 {
        let (b, c) = self.exponents();
        if n.rem_euclid(2) == 1 {
            b
        } else {
            c
        }
    }

    /// Index of the first seed variable: 0 for `(C R_0, R_1)` data, 1 for
    /// `(C R_1, R_2)` data.
    pub fn seed_index(self) -> i64 {
        match self {
            CaseTag::B22 | CaseTag::B14Xy | CaseTag::B41Xy => 0,
            CaseTag::B14XY | CaseTag::B41XY => 1,
        }
    }

    /// The trajectory `other` whose `star` image gives this case's negative
    /// indices.
    pub fn star_partner(self) -> CaseTag {
        match self {
            CaseTag::B22 => CaseTag::B22,
            CaseTag::B14Xy | CaseTag::B14XY => CaseTag::B41Xy,
            CaseTag::B41Xy | CaseTag::B41XY => CaseTag::B14Xy,
        }
    }

    /// Offset `o` with `u_m = R_{2m + o}` for cases that carry `u`.
    fn u_offset(self) -> Option<i64> {
        match self {
            CaseTag::B22 => None,
            CaseTag::B14Xy | CaseTag::B14XY => Some(0),
            CaseTag::B41Xy => Some(-1),
            CaseTag::B41XY => Some(1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CaseTag::B22 => "22",
            CaseTag::B14Xy => "14xy",
            CaseTag::B14XY => "14XY",
            CaseTag::B41Xy => "41xy",
            CaseTag::B41XY => "41XY",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseTag::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::UnsupportedCase(s.to_string()))
    }
}

/// Initial-data flavour for the `(1,4)` system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialData {
    /// `(x, y) = (C R_0, R_1)`.
    Xy,
    /// `(X, Y) = (C R_1, R_2)`.
    XY,
}

/// `C = x y x^-1 y^-1`.
pub fn commutator() -> NCPoly {
    w("x y x^-1 y^-1").into()
}

/// `C^-1 = y x y^-1 x^-1`.
pub fn commutator_inv() -> Word {
    w("y x y^-1 x^-1")
}

/// Conserved quantity of the `(2,2)` system for the seed `(x, y)`:
/// `y^2 x^-1 y^-1 + x^-1 y^-1 + x y^-1`.
pub fn conserved_22() -> NCPoly {
    p("y^2 x^-1 y^-1 + x^-1 y^-1 + x y^-1")
}

/// Conserved quantity of the `(1,4)` system:
/// `(x^2 + ((1+y) x^-1)^2) y^-1` for `(x, y)` data and
/// `(Y^2 + ((1+X) Y^-1)^2) Y X^-1 Y^-1` for `(X, Y)` data.
pub fn conserved_14(data: InitialData) -> NCPoly {
    match data {
        InitialData::Xy => {
            let a = p("x^-1 + y x^-1");
            &(&p("x^2") + &a.pow(2)) * &p("y^-1")
        }
        InitialData::XY => {
            let a = p("y^-1 + x y^-1");
            &(&p("y^2") + &a.pow(2)) * &p("y x^-1 y^-1")
        }
    }
}

/// Seeds `(u_0, u_1)` of the `(1,4)` system, `u_n = R_{2n}`.
pub fn seeds_14(data: InitialData) -> (NCPoly, NCPoly) {
    match data {
        InitialData::Xy => (p("y x y^-1"), p("x^-1 + y x^-1")),
        // u_0 = C^-1 (1 + X) Y^-1, forced by R_2 C R_0 = 1 + R_1
        InitialData::XY => (p("y x y^-1 x^-1 y^-1 + y x y^-2"), p("y")),
    }
}

/// Memoized values of one system: `R_n` and, for the `(1,4)`/`(4,1)`
/// systems, `u_m`. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub case: CaseTag,
    pub r: BTreeMap<i64, NCPoly>,
    pub u: BTreeMap<i64, NCPoly>,
    pub k: NCPoly,
    pub c: NCPoly,
}

impl Trajectory {
    pub fn r(&self, n: i64) -> Result<&NCPoly> {
        self.r.get(&n).ok_or(Error::IndexUnavailable(n))
    }

    pub fn u(&self, n: i64) -> Result<&NCPoly> {
        self.u.get(&n).ok_or(Error::IndexUnavailable(n))
    }

    /// Smallest and largest stored `R` index.
    pub fn r_range(&self) -> (i64, i64) {
        let lo = *self.r.keys().next().expect("trajectories are never empty");
        let hi = *self.r.keys().next_back().expect("trajectories are never empty");
        (lo, hi)
    }

    pub fn max_index(&self) -> i64 {
        self.r_range().1
    }

    /// Recomputes `u` from `r` according to the case's index offset.
    fn sync_u(&mut self) {
        let Some(off) = self.case.u_offset() else {
            return;
        };
        let (lo, hi) = self.r_range();
        for m in (lo - off).div_euclid(2) - 1..=(hi - off).div_euclid(2) + 1 {
            if let Some(v) = self.r.get(&(2 * m + off)) {
                self.u.entry(m).or_insert_with(|| v.clone());
            }
        }
    }

    /// Returns a copy extended with `R_{-1}, ..., R_{-depth}` (and `R_0` if
    /// missing) obtained through
    /// [`negative_index`] from `other`, which must be the case's
    /// [`CaseTag::star_partner`].
    pub fn extend_negative(&self, other: &Trajectory, depth: i64) -> Result<Trajectory> {
        let mut out = self.clone();
        // (C R_1, R_2) data may lack R_0 itself
        let first = if out.r.contains_key(&0) { 1 } else { 0 };
        for n in first..=depth {
            out.r.insert(-n, negative_index(self.case, n, other)?);
        }
        out.sync_u();
        Ok(out)
    }

    /// The `(4,1)` trajectory hidden in a `(1,4)` one.
    ///
    /// From `(X, Y)` data: `f^(4,1)_{n-1}(x, y) = g^(1,4)_n(x, y)`.
    /// From `(x, y)` data: `g^(4,1)_{n+1}(X, Y) = f^(1,4)_n(X, Y)`.
    pub fn translate_41(sys14: &Trajectory) -> Result<Trajectory> {
        let (case, shift) = match sys14.case {
            CaseTag::B14XY => (CaseTag::B41Xy, 1),
            CaseTag::B14Xy => (CaseTag::B41XY, -1),
            other => return Err(Error::UnsupportedCase(other.to_string())),
        };
        let mut out = Trajectory {
            case,
            r: sys14.r.iter().map(|(&n, v)| (n - shift, v.clone())).collect(),
            u: BTreeMap::new(),
            k: sys14.k.clone(),
            c: sys14.c.clone(),
        };
        out.sync_u();
        Ok(out)
    }

    /// Fault injection: bumps the coefficient of the smallest word of `R_n`.
    pub fn with_flipped_coefficient(&self, n: i64) -> Result<Trajectory> {
        let mut out = self.clone();
        let target = out.r.get_mut(&n).ok_or(Error::IndexUnavailable(n))?;
        let word = target
            .sorted_terms()
            .first()
            .map(|(w, _)| (*w).clone())
            .unwrap_or_default();
        target.add_term(word, BigInt::one());
        out.u.clear();
        out.sync_u();
        Ok(out)
    }

    fn debug_check_positive(&self) {
        debug_assert!(
            self.r.values().chain(self.u.values()).all(NCPoly::is_positive),
            "non-positive variable in {} trajectory",
            self.case
        );
    }
}

/// The birational map `T_a : (A, B) -> (A B A^-1, (1 + B^a) A^-1)`.
///
/// Inverting `A` goes through `inv_unit` when `A` is a unit and falls back to
/// bounded right division otherwise.
pub fn mutation_t(a: u32, pair: (&NCPoly, &NCPoly), support_rounds: usize) -> Result<(NCPoly, NCPoly)> {
    let (a_, b_) = pair;
    let numer = &NCPoly::one() + &b_.pow(a);
    match a_.inv_unit() {
        Ok(inv) => Ok((&(a_ * b_) * &inv, &numer * &inv)),
        Err(not_unit) => {
            let first = right_divide(&(a_ * b_), a_, support_rounds).map_err(|_| not_unit.clone())?;
            let second = right_divide(&numer, a_, support_rounds).map_err(|_| not_unit)?;
            Ok((first, second))
        }
    }
}

/// Builds `R_0..=R_{n_max}` of the `(2,2)` system with
/// `R_{n+1} = K R_n - C R_{n-1}`.
pub fn seq_22(n_max: u32) -> Trajectory {
    seq_22_with_conserved(n_max, conserved_22())
}

/// [`seq_22`] with an arbitrary `K`; only meaningful for fault injection.
pub fn seq_22_with_conserved(n_max: u32, k: NCPoly) -> Trajectory {
    let c = commutator();
    let mut r = BTreeMap::new();
    r.insert(0, p("y x y^-1"));
    r.insert(1, NCPoly::y());
    for n in 1..n_max as i64 {
        let next = &(&k * &r[&n]) - &(&c * &r[&(n - 1)]);
        r.insert(n + 1, next);
    }
    let traj = Trajectory {
        case: CaseTag::B22,
        r,
        u: BTreeMap::new(),
        k,
        c,
    };
    if traj.k == conserved_22() {
        traj.debug_check_positive();
    }
    traj
}

/// Builds the `(1,4)` system up to `R_{n_max}`: `u_{n+2} = K u_{n+1} - C u_n`,
/// `R_{2n} = u_n`, `R_{2n+1} = u_n u_{n+1} - C^-1`.
///
/// For `(X, Y)` data the stored indices still refer to the original
/// numbering, so `R_1 = Y X Y^-1` and `R_2 = Y`.
pub fn seq_14(data: InitialData, n_max: u32) -> Trajectory {
    let c = commutator();
    let c_inv: NCPoly = commutator_inv().into();
    let k = conserved_14(data);
    let (u0, u1) = seeds_14(data);
    let n_max = n_max.max(1) as i64;
    let u_max = ((n_max + 1) / 2).max(1);

    let mut u = BTreeMap::new();
    u.insert(0, u0);
    u.insert(1, u1);
    for m in 0..u_max - 1 {
        let next = &(&k * &u[&(m + 1)]) - &(&c * &u[&m]);
        u.insert(m + 2, next);
    }

    let mut r = BTreeMap::new();
    for n in 0..=n_max {
        let v = if n % 2 == 0 {
            u[&(n / 2)].clone()
        } else {
            let m = n / 2;
            &(&u[&m] * &u[&(m + 1)]) - &c_inv
        };
        r.insert(n, v);
    }
    let traj = Trajectory {
        case: match data {
            InitialData::Xy => CaseTag::B14Xy,
            InitialData::XY => CaseTag::B14XY,
        },
        r,
        u,
        k,
        c,
    };
    traj.debug_check_positive();
    traj
}

/// `R_{-n}` of `case` as `star` of the partner system:
/// `f^(c,b)_{-n} = (f^(b,c)_{n+1})^*`, and for `(C R_1, R_2)` data
/// `g^(b,c)_{-n} = f^(c,b)_{-n-1} = (f^(b,c)_{n+2})^*`.
pub fn negative_index(case: CaseTag, n: i64, other: &Trajectory) -> Result<NCPoly> {
    let partner = match case {
        CaseTag::B22 | CaseTag::B14Xy | CaseTag::B41Xy => case.star_partner(),
        // g-families read the f-family of their own (b,c)
        CaseTag::B14XY => CaseTag::B14Xy,
        CaseTag::B41XY => CaseTag::B41Xy,
    };
    if other.case != partner {
        return Err(Error::UnsupportedCase(format!(
            "negative indices of {case} need a {partner} trajectory, got {}",
            other.case
        )));
    }
    let idx = n + 1 + case.seed_index();
    Ok(other.r(idx)?.star())
}

/// Reads `f^(4,1)_{n-1}(x, y) = g^(1,4)_n(x, y)` off a `(1,4)` trajectory
/// computed from `(X, Y)` data.
pub fn translate_41(n: i64, sys14: &Trajectory) -> Result<NCPoly> {
    if sys14.case != CaseTag::B14XY {
        return Err(Error::UnsupportedCase(format!(
            "translate_41 reads a 14XY trajectory, got {}",
            sys14.case
        )));
    }
    sys14.r(n).cloned()
}

/// A trajectory of `case` covering at least `lo..=hi`, with indices below
/// the seed obtained through `star` of the partner family.
pub fn trajectory_range(case: CaseTag, lo: i64, hi: i64) -> Result<Trajectory> {
    let hi = hi.max(lo).max(1);
    let depth = (-lo).max(0);
    let at = |n: i64| n.max(1) as u32;
    let traj = match case {
        CaseTag::B22 => {
            let t = seq_22(at(hi.max(depth + 1)));
            t.extend_negative(&t, depth)?
        }
        CaseTag::B14Xy => {
            let f41 = Trajectory::translate_41(&seq_14(InitialData::XY, at(depth + 2)))?;
            seq_14(InitialData::Xy, at(hi)).extend_negative(&f41, depth)?
        }
        CaseTag::B14XY => {
            let f14 = seq_14(InitialData::Xy, at(depth + 2));
            seq_14(InitialData::XY, at(hi)).extend_negative(&f14, depth)?
        }
        CaseTag::B41Xy => {
            let f14 = seq_14(InitialData::Xy, at(depth + 1));
            Trajectory::translate_41(&seq_14(InitialData::XY, at(hi + 1)))?.extend_negative(&f14, depth)?
        }
        CaseTag::B41XY => {
            let f41 = Trajectory::translate_41(&seq_14(InitialData::XY, at(depth + 3)))?;
            Trajectory::translate_41(&seq_14(InitialData::Xy, at(hi - 1)))?.extend_negative(&f41, depth)?
        }
    };
    Ok(traj)
}

/// Checks `R_{n+1} C R_{n-1} = 1 + R_n^e` (with `e` alternating between `b`
/// and `c`) at every index where both neighbours are stored.
pub fn verify_nonlinear(traj: &Trajectory) -> VerifyReport {
    let mut report = VerifyReport::new();
    let (lo, hi) = traj.r_range();
    let one = NCPoly::one();
    let has = |n: i64| traj.r.contains_key(&n);
    let centres = (lo + 1..hi).filter(|&n| has(n - 1) && has(n) && has(n + 1));
    report.check_indices("nonlinear", centres, |n| {
        let e = traj.case.exponent_at(n);
        let r = &traj.r[&n];
        let (left, right) = (r.pow(e / 2), r.pow(e - e / 2));
        let c_prev = &traj.c * &traj.r[&(n - 1)];
        expect_sides(
            &Side::new().product(&traj.r[&(n + 1)], &c_prev),
            &Side::new().product(&left, &right).plus(&one),
        )
    });
    report
}

/// Division-free checks of the conservation laws and linear recursions.
pub fn verify_conserved(traj: &Trajectory) -> VerifyReport {
    let mut report = VerifyReport::new();
    let c = &traj.c;
    let k = &traj.k;
    let (lo, hi) = traj.r_range();
    let one = NCPoly::one();

    let has = |n: i64| traj.r.contains_key(&n);
    let pairs = (lo..hi).filter(|&n| has(n) && has(n + 1));
    let triples = || (lo + 1..hi).filter(|&n| has(n - 1) && has(n) && has(n + 1));
    report.check_indices("quasi-commutation R[n+1] C R[n] = R[n] R[n+1]", pairs, |n| {
        let (a, b) = (&traj.r[&n], &traj.r[&(n + 1)]);
        let bc = b * c;
        expect_sides(&Side::new().product(&bc, a), &Side::new().product(a, b))
    });

    if traj.case == CaseTag::B22 {
        report.check_indices("linear R[n+1] C + R[n-1] = R[n] K", triples(), |n| {
            expect_sides(
                &Side::new().product(&traj.r[&(n + 1)], c).plus(&traj.r[&(n - 1)]),
                &Side::new().product(&traj.r[&n], k),
            )
        });
        report.check_indices("linear R[n+1] + C R[n-1] = K R[n]", triples(), |n| {
            expect_sides(
                &Side::new().plus(&traj.r[&(n + 1)]).product(c, &traj.r[&(n - 1)]),
                &Side::new().product(k, &traj.r[&n]),
            )
        });
    }

    if !traj.u.is_empty() {
        let c_inv: NCPoly = commutator_inv().into();
        let ulo = *traj.u.keys().next().expect("nonempty");
        let uhi = *traj.u.keys().next_back().expect("nonempty");
        let u = |m: i64| &traj.u[&m];
        let hasu = |m: i64| traj.u.contains_key(&m);
        let pairs = || (ulo..uhi).filter(move |&m| hasu(m) && hasu(m + 1));
        let triples = || (ulo..uhi - 1).filter(move |&m| hasu(m) && hasu(m + 1) && hasu(m + 2));
        // u[n+1] C u[n] - 1
        let odd = |m: i64| &(&(u(m + 1) * c) * u(m)) - &one;

        report.check_indices(
            "quasi-commutation u[n+1] C u[n] = u[n] u[n+1] + 1 - C^-1",
            pairs(),
            |m| {
                let uc = u(m + 1) * c;
                expect_sides(
                    &Side::new().product(&uc, u(m)),
                    &Side::new().product(u(m), u(m + 1)).plus(&one).minus(&c_inv),
                )
            },
        );
        report.check_indices(
            "u[n+2] C (u[n+1] C u[n] - 1) = u[n+1]^3 + C u[n]",
            triples(),
            |m| {
                let (uc, o, sq) = (u(m + 2) * c, odd(m), u(m + 1).pow(2));
                expect_sides(
                    &Side::new().product(&uc, &o),
                    &Side::new().product(&sq, u(m + 1)).product(c, u(m)),
                )
            },
        );
        report.check_indices(
            "(u[n+1] C u[n] - 1) C = u[n] u[n+1] C - 1",
            pairs(),
            |m| {
                let (o, uc) = (odd(m), u(m + 1) * c);
                expect_sides(
                    &Side::new().product(&o, c),
                    &Side::new().product(u(m), &uc).minus(&one),
                )
            },
        );
        report.check_indices("linear u[n+2] C + u[n] = u[n+1] K", triples(), |m| {
            expect_sides(
                &Side::new().product(u(m + 2), c).plus(u(m)),
                &Side::new().product(u(m + 1), k),
            )
        });
        report.check_indices("linear u[n+2] + C u[n] = K u[n+1]", triples(), |m| {
            expect_sides(
                &Side::new().plus(u(m + 2)).product(c, u(m)),
                &Side::new().product(k, u(m + 1)),
            )
        });
        report.check_indices("R[2n+1] = u[n] u[n+1] - C^-1", pairs(), |m| {
            let off = traj.case.u_offset().expect("u-bearing case");
            match traj.r.get(&(2 * m + 1 + off)) {
                Some(r_odd) => expect_sides(
                    &Side::new().plus(r_odd),
                    &Side::new().product(u(m), u(m + 1)).minus(&c_inv),
                ),
                None => Ok(()),
            }
        });
    }
    report
}

/// Iterates the nonlinear relation forward with right division:
/// `R_{n+1} = (1 + R_n^e) / (C R_{n-1})`, from `R_0 = y x y^-1`, `R_1 = y`.
///
/// Stops at the first failed division and returns what was computed along
/// with the error.
pub fn nonlinear_forward(
    b: u32,
    c: u32,
    n_max: i64,
    support_rounds: usize,
) -> (BTreeMap<i64, NCPoly>, Option<(i64, Error)>) {
    let comm = commutator();
    let mut r = BTreeMap::new();
    r.insert(0, p("y x y^-1"));
    r.insert(1, NCPoly::y());
    for n in 1..n_max {
        let e = if n % 2 == 1 { b } else { c };
        let numer = &NCPoly::one() + &r[&n].pow(e);
        let denom = &comm * &r[&(n - 1)];
        match right_divide(&numer, &denom, support_rounds) {
            Ok(next) => {
                r.insert(n + 1, next);
            }
            Err(err) => return (r, Some((n + 1, err))),
        }
    }
    (r, None)
}

/// Result of the finite-type probe.
#[derive(Clone, Debug)]
pub struct FiniteTypeProbe {
    pub b: u32,
    pub c: u32,
    pub variables: BTreeMap<i64, NCPoly>,
    /// Smallest `p` with `ab(R_{n+p}) = ab(R_n)` on the computed range.
    pub abelian_period: Option<i64>,
    /// First `(p, k)`, `|k| <= 4`, with `R_{n+p} = C^k R_n C^-k` on the range.
    pub conjugation_period: Option<(i64, i32)>,
    pub report: VerifyReport,
}

/// Bound on `|k|` in the search for `R_{n+p} = C^k R_n C^-k`.
pub const CONJUGATION_SEARCH: i32 = 4;

/// Experimental: runs the nonlinear relation with right division for the
/// finite types `(1,1)`, `(1,2)`, `(1,3)` and reports positivity, `{0,1}`
/// coefficients and periodicity. Division failures become explicit skips.
pub fn finite_type_probe(b: u32, c: u32, n_max: i64, support_rounds: usize) -> Result<FiniteTypeProbe> {
    if b != 1 || !(1..=3).contains(&c) {
        return Err(Error::UnsupportedCase(format!("finite type ({b},{c})")));
    }
    let (vars, failure) = nonlinear_forward(b, c, n_max, support_rounds);
    let mut report = VerifyReport::new();
    let hi = *vars.keys().next_back().expect("seeds");

    if let Some((n, err)) = &failure {
        report.skip(
            format!("right_divide R[{n}]"),
            format!("{err}; variables beyond R[{}] not computed", n - 1),
        );
    }
    report.check_indices("is_zero_one", 0..=hi, |n| {
        let v = &vars[&n];
        if v.is_zero_one() && !v.is_zero() {
            Ok(())
        } else {
            Err((v.to_string(), "coefficients in {0,1}".into()))
        }
    });

    let ab: Vec<_> = (0..=hi).map(|n| vars[&n].abelianize()).collect();
    let abelian_period = (1..=hi)
        .find(|&per| (0..=hi - per).all(|n| ab[(n + per) as usize] == ab[n as usize]) && per < hi);
    match abelian_period {
        Some(per) => report.info("abelian period", format!("period {per} on R[0..={hi}]")),
        None => report.skip("abelian period", format!("no period visible on R[0..={hi}]")),
    }

    let cw = w("x y x^-1 y^-1");
    let conjugation_period = abelian_period.and_then(|per| {
        (-CONJUGATION_SEARCH..=CONJUGATION_SEARCH).find_map(|k| {
            let left = cw.pow(k);
            let right = left.inv();
            (0..=hi - per)
                .all(|n| vars[&(n + per)] == vars[&n].conjugate_words(&left, &right))
                .then_some((per, k))
        })
    });
    match conjugation_period {
        Some((per, k)) => report.info(
            "conjugation period",
            format!("R[n+{per}] = C^{k} R[n] C^{} on R[0..={hi}]", -k),
        ),
        None => report.info(
            "conjugation period",
            format!("no R[n+p] = C^k R[n] C^-k with |k| <= {CONJUGATION_SEARCH} found"),
        ),
    }

    Ok(FiniteTypeProbe {
        b,
        c,
        variables: vars,
        abelian_period,
        conjugation_period,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_examples() {
        let (x, y) = (NCPoly::x(), NCPoly::y());
        let (a, b) = mutation_t(2, (&x, &y), 0).unwrap();
        assert_eq!(a, p("x y x^-1"));
        assert_eq!(b, p("x^-1 + y^2 x^-1"));
        let (a0, b0) = mutation_t(0, (&x, &y), 0).unwrap();
        assert_eq!(a0, p("x y x^-1"));
        assert_eq!(b0, p("2*x^-1"));
        // commutator preserved, written division-free as A' B' = C B' A'
        let comm = commutator();
        assert_eq!(&a * &b, &(&comm * &b) * &a);
        assert_eq!(&a0 * &b0, &(&comm * &b0) * &a0);
    }

    #[test]
    fn mutation_through_division() {
        // second application of T_1 T_1 for the A2 system needs a non-unit inverse
        let (x, y) = (NCPoly::x(), NCPoly::y());
        let (a1, b1) = mutation_t(1, (&x, &y), 0).unwrap();
        let (a2, b2) = mutation_t(1, (&a1, &b1), 0).unwrap();
        let (a3, b3) = mutation_t(1, (&a2, &b2), 0).unwrap();
        assert!(b3.is_zero_one());
        assert!(matches!(a3.inv_unit(), Err(Error::NotAUnit(_))));
        let comm = commutator();
        assert_eq!(&a3 * &b3, &(&comm * &b3) * &a3);
    }

    #[test]
    fn seq_22_examples() {
        let t = seq_22(4);
        assert_eq!(t.r[&0], p("y x y^-1"));
        assert_eq!(t.r[&1], p("y"));
        assert_eq!(t.r[&2], p("x^-1 + y^2 x^-1"));
        assert_eq!(
            t.r[&3],
            p("y^2 x^-1 y x^-1 + y^2 x^-1 y^-1 x^-1 + x^-1 y x^-1 + x^-1 y^-1 x^-1 + x y^-1 x^-1")
        );
        // R_3 = (R_2^2 + 1) R_1^-1 C^-1
        let r3 = &(&(&t.r[&2].pow(2) + &NCPoly::one()) * &p("y^-1")) * &p("y x y^-1 x^-1");
        assert_eq!(t.r[&3], r3);
        assert_eq!(seq_22(0).r.len(), 2);
    }

    #[test]
    fn seq_14_examples() {
        let t = seq_14(InitialData::Xy, 6);
        assert_eq!(t.k, p("x^2 y^-1 + x^-2 y^-1 + x^-1 y x^-1 y^-1 + y x^-2 y^-1 + y x^-1 y x^-1 y^-1"));
        assert_eq!(t.r[&1], p("y"));
        assert_eq!(t.r[&2], p("x^-1 + y x^-1"));
        let tt = seq_14(InitialData::XY, 6);
        assert_eq!(tt.u[&1], p("y"));
        assert_eq!(tt.r[&1], p("y x y^-1"));
        assert_eq!(tt.r[&2], p("y"));
        assert_eq!(tt.c, p("x y x^-1 y^-1"));
    }

    #[test]
    fn u2_matches_closed_form() {
        // u_2 u_0^-1 = (x + ((1+y) x^-1)^3) x y^-1 x^-1 y x^-1 y^-1
        let t = seq_14(InitialData::Xy, 4);
        let lhs = &t.u[&2] * &t.u[&0].inv_unit().unwrap();
        let rhs = &(&NCPoly::x() + &p("x^-1 + y x^-1").pow(3)) * &p("x y^-1 x^-1 y x^-1 y^-1");
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn nonlinear_holds_and_detects_faults() {
        for t in [seq_22(8), seq_14(InitialData::Xy, 6), seq_14(InitialData::XY, 6)] {
            assert!(verify_nonlinear(&t).overall(), "{}", t.case);
            assert!(verify_conserved(&t).overall(), "{}", t.case);
        }
        // base case by hand: R_2 C R_0 = 1 + y^2
        let t = seq_22(2);
        assert_eq!(&t.r[&2] * &(&t.c * &t.r[&0]), p("1 + y^2"));

        let bad = seq_22(8).with_flipped_coefficient(4).unwrap();
        let rep = verify_nonlinear(&bad);
        assert!(!rep.overall());
        assert_eq!(rep.entries[0].counterexample.as_ref().unwrap().index, 3);
    }

    #[test]
    fn negative_index_examples() {
        let t = seq_22(8);
        assert_eq!(negative_index(CaseTag::B22, 0, &t).unwrap(), t.r[&0]);
        assert_eq!(negative_index(CaseTag::B22, 1, &t).unwrap(), t.r[&2].star());
        let ext = t.extend_negative(&t, 6).unwrap();
        assert_eq!(ext.r_range(), (-6, 8));
        assert!(verify_nonlinear(&ext).overall());
        assert!(matches!(
            negative_index(CaseTag::B22, 8, &t),
            Err(Error::IndexUnavailable(9))
        ));
        let f14 = seq_14(InitialData::Xy, 4);
        assert!(matches!(
            negative_index(CaseTag::B14Xy, 1, &f14),
            Err(Error::UnsupportedCase(_))
        ));
    }

    #[test]
    fn xy_seed_matches_star_image() {
        // g^(1,4)_0 = (f^(1,4)_2)^*
        let f = seq_14(InitialData::Xy, 3);
        assert_eq!(f.r[&2].star(), seeds_14(InitialData::XY).0);
    }

    #[test]
    fn translate_41_examples() {
        let g = seq_14(InitialData::XY, 8);
        assert_eq!(translate_41(1, &g).unwrap(), p("y x y^-1"));
        let f41 = Trajectory::translate_41(&g).unwrap();
        assert_eq!(f41.case, CaseTag::B41Xy);
        assert_eq!(f41.r[&0], p("y x y^-1"));
        assert_eq!(f41.r[&1], p("y"));
        assert!(verify_nonlinear(&f41).overall());
        assert!(verify_conserved(&f41).overall());
        assert!(matches!(translate_41(20, &g), Err(Error::IndexUnavailable(20))));
        assert!(translate_41(1, &seq_22(3)).is_err());
    }

    #[test]
    fn forward_division_agrees_with_linear_recursion() {
        let (fwd, err) = nonlinear_forward(2, 2, 5, 0);
        assert!(err.is_none());
        let lin = seq_22(5);
        for n in 0..=5 {
            assert_eq!(fwd[&n], lin.r[&n], "R_{n}");
        }
    }

    #[test]
    fn case_tags_parse() {
        for c in CaseTag::ALL {
            assert_eq!(c.label().parse::<CaseTag>().unwrap(), c);
        }
        assert!("33".parse::<CaseTag>().is_err());
        assert_eq!(CaseTag::B14Xy.exponent_at(1), 1);
        assert_eq!(CaseTag::B14Xy.exponent_at(2), 4);
        assert_eq!(CaseTag::B41Xy.exponent_at(-1), 4);
    }

    #[test]
    fn probe_a2() {
        let probe = finite_type_probe(1, 1, 9, 0).unwrap();
        assert!(probe.report.overall(), "{}", probe.report);
        assert_eq!(probe.abelian_period, Some(5));
        assert!(finite_type_probe(2, 2, 5, 0).is_err());
    }

    #[test]
    fn ranges_cover_requests() {
        for case in CaseTag::ALL {
            let t = trajectory_range(case, -3, 4).unwrap();
            for n in -3..=4 {
                assert!(t.r.contains_key(&n), "{case} R[{n}]");
            }
            assert!(verify_nonlinear(&t).overall(), "{case}");
        }
    }
}
