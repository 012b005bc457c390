use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::oracle::{comm_oracle_seeded, CommTrajectory};
use super::report::{expect_eq, expect_sides, VerifyReport};
use crate::dynamics::{commutator, commutator_inv, CaseTag, Trajectory};
use crate::error::Result;
use crate::freegroup::{w, Word};
use crate::ncpoly::identity::Side;
use crate::ncpoly::{NCPoly, QPoly};
use crate::pathmodel::{
    continued_fraction_series, enumerate_paths, partition_fn_enumerate, partition_fn_matrix,
    series_multiply_check, steps_per_index, ModelSpec,
};

/// The commutative oracle matching `traj`'s exponents, seed and index range.
pub fn comm_for(traj: &Trajectory) -> Result<CommTrajectory> {
    let (b, c) = traj.case.exponents();
    let (lo, hi) = traj.r_range();
    let seed = traj.case.seed_index();
    comm_oracle_seeded(b, c, seed, lo.min(seed), hi.max(seed + 1))
}

/// `abelianize(R_n) = comm.r[n]` on every index both sides know.
pub fn check_abelianization(traj: &Trajectory, comm: &CommTrajectory) -> VerifyReport {
    let mut report = VerifyReport::new();
    let shared: Vec<i64> = traj.r.keys().copied().filter(|n| comm.r.contains_key(n)).collect();
    report.check_indices("abelianization", shared, |n| {
        expect_eq(&traj.r[&n].abelianize(), &comm.r[&n])
    });
    report
}

/// `q_specialize(R_n R_{n+1}) = q q_specialize(R_{n+1} R_n)`, computed in the
/// quantum torus from the images of the factors.
pub fn check_quantum(traj: &Trajectory) -> VerifyReport {
    let mut report = VerifyReport::new();
    let qc = commutator().q_specialize();
    report.check("q_specialize(C) = q", &qc, QPoly::q_power(1), qc == QPoly::q_power(1));
    let (lo, hi) = traj.r_range();
    report.check_indices("quantum R[n] R[n+1] = q R[n+1] R[n]", lo..hi, |n| {
        let (a, b) = (traj.r[&n].q_specialize(), traj.r[&(n + 1)].q_specialize());
        expect_eq(&(&a * &b), &(&b * &a).shift_q(1))
    });
    report
}

/// Every variable has positive coefficients; for `(2,2)` they are all 1.
pub fn check_positivity(traj: &Trajectory) -> VerifyReport {
    let mut report = VerifyReport::new();
    report.check_indices("positivity R[n]", traj.r.keys().copied(), |n| {
        positive(&traj.r[&n])
    });
    if !traj.u.is_empty() {
        report.check_indices("positivity u[n]", traj.u.keys().copied(), |m| {
            positive(&traj.u[&m])
        });
    }
    if traj.case == CaseTag::B22 {
        report.check_indices("coefficients all 1", traj.r.keys().copied(), |n| {
            let v = &traj.r[&n];
            if v.is_zero_one() && !v.is_zero() {
                Ok(())
            } else {
                Err((v.to_string(), "coefficients in {1}".into()))
            }
        });
    }
    report
}

fn positive(v: &NCPoly) -> Result<(), (String, String)> {
    if v.is_positive() && !v.is_zero() {
        Ok(())
    } else {
        Err((v.to_string(), "positive Laurent polynomial".into()))
    }
}

/// Coefficient of `word` in `a * b` without forming the product.
pub fn product_coeff(a: &NCPoly, b: &NCPoly, word: &Word) -> BigInt {
    a.iter()
        .map(|(s, c)| c * b.coeff(&s.inv().mul(word)))
        .fold(BigInt::zero(), |acc, t| acc + t)
}

/// Witness words for the `C^-1` term: `(w1, w2)` with `w1` in the support of
/// the first factor, `w2` in the second, `w1 w2 = C^-1`.
pub fn c_inverse_witness(case: CaseTag, n: u32) -> Option<(Word, Word)> {
    let n = n as i32;
    match case {
        CaseTag::B14Xy if n >= 1 => {
            let u0 = w("y x y^-1");
            let w1 = w("y x^-1 y x^-1 y^-1").pow(n).mul(&u0);
            let w2 = w("x^2 y^-1").pow(n - 1).mul(&w("x^2 y^-1 x^-1 y x^-1 y^-1")).mul(&u0);
            Some((w1, w2))
        }
        CaseTag::B14XY if n >= 1 => {
            let w1 = w("y").mul(&w("y^2 x^-1").pow(n)).mul(&w("y^-1 y"));
            let w2 = w("x y^-2").pow(n - 1).mul(&w("x y^-2 x y^-1 x^-1 y^-1 y"));
            Some((w1, w2))
        }
        _ => None,
    }
}

/// The word `C^-1` occurs in `u_n u_{n+1}`, `R_{2n+1} = u_n u_{n+1} - C^-1`
/// stays positive, and the explicit witness paths exist.
pub fn check_c_inverse_term(traj: &Trajectory) -> VerifyReport {
    let mut report = VerifyReport::new();
    if !matches!(traj.case, CaseTag::B14Xy | CaseTag::B14XY) {
        report.skip("C^-1 term", format!("not a (1,4) trajectory: {}", traj.case));
        return report;
    }
    let c_inv = commutator_inv();
    let pairs: Vec<i64> = traj
        .u
        .keys()
        .copied()
        .filter(|m| *m >= 0 && traj.u.contains_key(&(m + 1)))
        .collect();
    report.check_indices("C^-1 coefficient of u[n] u[n+1] >= 1", pairs.clone(), |m| {
        let coeff = product_coeff(&traj.u[&m], &traj.u[&(m + 1)], &c_inv);
        if coeff >= BigInt::one() {
            Ok(())
        } else {
            Err((coeff.to_string(), ">= 1".into()))
        }
    });
    report.check_indices(
        "R[2n+1] = u[n] u[n+1] - C^-1 positive",
        pairs.iter().copied().filter(|m| traj.r.contains_key(&(2 * m + 1))),
        |m| positive(&traj.r[&(2 * m + 1)]),
    );

    // XY data count u from u_1
    let first = if traj.case == CaseTag::B14XY { 1 } else { 0 };
    let witnesses: Vec<i64> = pairs.iter().copied().filter(|&m| m - first >= 1).collect();
    report.check_indices("C^-1 witness paths", witnesses, |m| {
        let (w1, w2) = c_inverse_witness(traj.case, (m - first) as u32).expect("n >= 1");
        let found = w1.mul(&w2);
        if found != c_inv {
            return Err((found.to_string(), c_inv.to_string()));
        }
        for (word, v) in [(&w1, &traj.u[&m]), (&w2, &traj.u[&(m + 1)])] {
            if v.coeff(word).is_zero() {
                return Err((format!("{word} in supp"), v.to_string()));
            }
        }
        Ok(())
    });
    report
}

/// `y3 y1 = C` and `K = y1 + y2 + y3` on the segment; `y2 = y3 y1 - C` and
/// `K = y1 + y3` on the barbell.
pub fn check_weights(model: &ModelSpec) -> VerifyReport {
    let mut report = VerifyReport::new();
    let get = |name: &str| model.weight(name).cloned().unwrap_or_default();
    let (y1, y2, y3) = (get("y1"), get("y2"), get("y3"));
    let c = commutator();
    let prod = &y3 * &y1;
    match model.case {
        CaseTag::B22 => {
            report.check("weights y3 y1 = C", &prod, &c, prod == c);
            let sum = &(&y1 + &y2) + &y3;
            report.check("weights y1 + y2 + y3 = K", &sum, &model.conserved, sum == model.conserved);
        }
        _ => {
            let rhs = &prod - &c;
            report.check("weights y2 = y3 y1 - C", &y2, &rhs, y2 == rhs);
            let sum = &y1 + &y3;
            report.check("weights y1 + y3 = K", &sum, &model.conserved, sum == model.conserved);
        }
    }
    report.check_indices("weights positive", 1..=3, |i| {
        positive(&[&y1, &y2, &y3][i as usize - 1])
    });
    report
}

/// Transfer matrix, enumeration and continued fraction agree with each
/// other and with `traj` for every series index `0..=n_max`; odd-step
/// diagonals of the segment vanish; the series satisfies the linear
/// recursion. Enumeration is skipped past `budget` paths.
pub fn check_paths(model: &ModelSpec, traj: &Trajectory, n_max: i64, budget: u64) -> VerifyReport {
    let mut report = VerifyReport::new();
    let spi = steps_per_index(model);
    // u_{n+1} for (X, Y) data
    let shift = if model.case == CaseTag::B14XY { 1 } else { 0 };
    let target = |n: i64| -> Option<&NCPoly> {
        match model.case {
            CaseTag::B22 => traj.r.get(&n),
            _ => traj.u.get(&(n + shift)),
        }
    };
    let indices: Vec<i64> = (0..=n_max).filter(|&n| target(n).is_some()).collect();
    let order = indices.last().map_or(0, |&n| n as usize + 1);

    let series = match continued_fraction_series(model, order) {
        Ok(s) => s,
        Err(e) => {
            report.skip("paths", e.to_string());
            return report;
        }
    };
    let matrix: Vec<NCPoly> = indices
        .iter()
        .map(|&n| partition_fn_matrix(model, spi * n as usize))
        .collect();

    report.check_indices("paths transfer matrix = continued fraction", indices.clone(), |n| {
        expect_eq(&matrix[n as usize], &series.coeffs[n as usize])
    });
    report.check_indices("paths transfer matrix * base = recursion", indices.clone(), |n| {
        expect_sides(
            &Side::new().product(&matrix[n as usize], &model.base),
            &Side::new().plus(target(n).expect("filtered")),
        )
    });

    let mut within = Vec::new();
    let mut over = None;
    for &n in &indices {
        match partition_fn_enumerate(model, spi * n as usize, budget) {
            Ok(v) => within.push((n, v)),
            Err(e) => {
                over = Some((n, e));
                break;
            }
        }
    }
    report.check_indices(
        "paths enumeration = transfer matrix",
        within.iter().map(|(n, _)| *n),
        |n| expect_eq(&within[n as usize].1, &matrix[n as usize]),
    );
    if let Some((n, e)) = over {
        report.skip("paths enumeration beyond budget", format!("n={n}: {e}"));
    }
    if model.case == CaseTag::B22 {
        let steps = (0..=spi as i64 * n_max.max(0)).filter(|s| s % 2 == 1);
        report.check_indices("paths odd-step diagonal = 0", steps, |s| {
            expect_eq(&partition_fn_matrix(model, s as usize), &NCPoly::zero())
        });
    }
    report.extend(series_multiply_check(model, &series));
    report
}

/// For `(2,2)`: the number of monomials of `R_n R_0^-1` equals the number of
/// enumerated closed `2n`-step paths, i.e. distinct paths have distinct
/// weights.
pub fn check_term_count(traj: &Trajectory, model: &ModelSpec, budget: u64) -> VerifyReport {
    let mut report = VerifyReport::new();
    let r0_inv = traj.r[&0].inv_unit().expect("R_0 is a monomial");
    let mut counts = Vec::new();
    for (&n, v) in traj.r.range(0..) {
        match enumerate_paths(model, 2 * n as usize, budget) {
            Ok(paths) => counts.push((n, v, paths.len())),
            Err(e) => {
                report.skip("term count beyond budget", format!("n={n}: {e}"));
                break;
            }
        }
    }
    report.check_indices(
        "term count of R[n] R[0]^-1 = enumerated paths",
        counts.iter().map(|c| c.0),
        |n| {
            let (_, v, paths) = counts[n as usize];
            let terms = (v * &r0_inv).len();
            expect_eq(&terms, &paths)
        },
    );
    report
}
