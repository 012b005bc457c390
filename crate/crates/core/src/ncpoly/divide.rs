//! Experimental right division with a bounded candidate support.
//!
//! The free group ring has no division algorithm, so `p / q` is found by
//! guessing a finite support for the quotient and solving the resulting
//! linear system exactly over the rationals.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::NCPoly;
use crate::error::{Error, Result};
use crate::freegroup::Word;

/// Support rounds used when the caller has no better guess. When `s * q`
/// has no cancellation (all coefficients positive) the initial candidate set
/// already contains the quotient's support.
pub const DEFAULT_SUPPORT_ROUNDS: usize = 0;

/// Finds `s` with `s * q == p`, searching supports grown `support_rounds`
/// times from `{ w m^-1 : w in supp(p), m in supp(q) }`.
pub fn right_divide(p: &NCPoly, q: &NCPoly, support_rounds: usize) -> Result<NCPoly> {
    if q.is_zero() {
        return Err(Error::NoSolutionInSupport {
            rounds: support_rounds,
        });
    }
    if p.is_zero() {
        return Ok(NCPoly::zero());
    }
    if let Ok(inv) = q.inv_unit() {
        return Ok(p * &inv);
    }

    let q_support: Vec<&Word> = q.support().collect();
    let q_inv: Vec<Word> = q_support.iter().map(|m| m.inv()).collect();

    let mut candidates: HashSet<Word> = HashSet::new();
    for w in p.support() {
        for mi in &q_inv {
            candidates.insert(w.mul(mi));
        }
    }
    for _ in 0..support_rounds {
        let mut grown = Vec::new();
        for s in &candidates {
            for m in &q_support {
                let sm = s.mul(m);
                for mi in &q_inv {
                    grown.push(sm.mul(mi));
                }
            }
        }
        candidates.extend(grown);
    }
    let mut columns: Vec<Word> = candidates.into_iter().collect();
    columns.sort_unstable();

    // one equation per word appearing in some s * m or in p
    let mut rows: HashMap<Word, BTreeMap<usize, BigRational>> = HashMap::new();
    for (col, s) in columns.iter().enumerate() {
        for (m, c) in q.iter() {
            let entry = rows.entry(s.mul(m)).or_default();
            let slot = entry.entry(col).or_insert_with(BigRational::zero);
            *slot += BigRational::from_integer(c.clone());
        }
    }
    for w in p.support() {
        rows.entry(w.clone()).or_default();
    }

    let mut ordered: Vec<(Word, BTreeMap<usize, BigRational>)> = rows.into_iter().collect();
    ordered.sort_unstable_by(|a, b| a.0.cmp(&b.0));

    let mut pivots: BTreeMap<usize, (BTreeMap<usize, BigRational>, BigRational)> = BTreeMap::new();
    for (word, mut row) in ordered {
        row.retain(|_, v| !v.is_zero());
        let mut rhs = BigRational::from_integer(p.coeff(&word));
        loop {
            let Some((&col, _)) = row.iter().next() else {
                if !rhs.is_zero() {
                    return Err(Error::NoSolutionInSupport {
                        rounds: support_rounds,
                    });
                }
                break;
            };
            match pivots.get(&col) {
                Some((prow, prhs)) => {
                    let factor = row[&col].clone();
                    for (&c, v) in prow {
                        let slot = row.entry(c).or_insert_with(BigRational::zero);
                        *slot -= &factor * v;
                        if slot.is_zero() {
                            row.remove(&c);
                        }
                    }
                    rhs -= &factor * prhs;
                }
                None => {
                    let lead = row[&col].clone();
                    for v in row.values_mut() {
                        *v /= &lead;
                    }
                    rhs /= &lead;
                    pivots.insert(col, (row, rhs));
                    break;
                }
            }
        }
    }

    // the map s -> s q is injective, so every column has a pivot
    debug_assert_eq!(pivots.len(), columns.len());
    let mut solution: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (&col, (row, rhs)) in pivots.iter().rev() {
        let mut value = rhs.clone();
        for (&c, v) in row.range(col + 1..) {
            if let Some(sv) = solution.get(&c) {
                value -= v * sv;
            }
        }
        solution.insert(col, value);
    }

    let mut out = NCPoly::zero();
    for (col, value) in solution {
        if value.is_zero() {
            continue;
        }
        if !value.denom().is_one() {
            return Err(Error::NonIntegerSolution);
        }
        out.add_term(columns[col].clone(), BigInt::clone(value.numer()));
    }
    if &out * q != *p {
        return Err(Error::NoSolutionInSupport {
            rounds: support_rounds,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::p;

    #[test]
    fn unit_divisor() {
        assert_eq!(
            right_divide(&p("1 + y^2"), &p("x"), 0).unwrap(),
            p("x^-1 + y^2 x^-1")
        );
    }

    #[test]
    fn roundtrip_small() {
        let cases = [
            (p("1 + x y"), p("1 + y")),
            (p("x^-1 + 2*y x - y^2"), p("x + y^-1")),
            (p("3 + x"), p("1 + x^2 + x y x^-1")),
        ];
        for (a, b) in cases {
            let prod = &a * &b;
            assert_eq!(right_divide(&prod, &b, 1).unwrap(), a, "{a} * {b}");
        }
    }

    #[test]
    fn a2_second_variable() {
        // R_2 C R_0 = 1 + R_1 for b = c = 1 with R_0 = y x y^-1, R_1 = y
        let c_r0 = &p("x y x^-1 y^-1") * &p("y x y^-1");
        let r2 = right_divide(&(&NCPoly::one() + &p("y")), &c_r0, 0).unwrap();
        assert_eq!(r2, p("x^-1 + y x^-1"));
        assert_eq!(&r2 * &c_r0, &NCPoly::one() + &p("y"));
    }

    #[test]
    fn failures() {
        assert!(matches!(
            right_divide(&p("1"), &p("1 + x"), 2),
            Err(Error::NoSolutionInSupport { .. })
        ));
        assert!(matches!(
            right_divide(&p("1 + x"), &p("2 + 2*x"), 0),
            Err(Error::NonIntegerSolution)
        ));
        assert!(right_divide(&p("x"), &NCPoly::zero(), 0).is_err());
        assert_eq!(right_divide(&NCPoly::zero(), &p("1 + x"), 0).unwrap(), NCPoly::zero());
    }

    mod props {
        use super::*;
        use crate::ncpoly::tests::arb_poly;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn divide_recovers_factor(a in arb_poly(), b in arb_poly()) {
                prop_assume!(!b.is_zero());
                let prod = &a * &b;
                match right_divide(&prod, &b, 1) {
                    Ok(s) => {
                        prop_assert_eq!(&s * &b, prod);
                        prop_assert_eq!(s, a);
                    }
                    // cancellation can push the quotient's support out of reach
                    Err(Error::NoSolutionInSupport { .. }) => {}
                    Err(e) => prop_assert!(false, "unexpected {e}"),
                }
            }
        }
    }
}
