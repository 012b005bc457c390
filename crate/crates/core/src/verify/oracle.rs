use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ncpoly::CommPoly;

/// Commutative rank-2 cluster variables `R_n` in the seed `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommTrajectory {
    pub b: u32,
    pub c: u32,
    pub r: BTreeMap<i64, CommPoly>,
}

impl CommTrajectory {
    pub fn r(&self, n: i64) -> Result<&CommPoly> {
        self.r.get(&n).ok_or(Error::IndexUnavailable(n))
    }
}

/// `R_{n+1} R_{n-1} = 1 + R_n^e` from `(R_0, R_1) = (x, y)`, for
/// `0 <= n <= n_max`.
pub fn comm_oracle(b: u32, c: u32, n_max: i64) -> Result<CommTrajectory> {
    comm_oracle_seeded(b, c, 0, 0, n_max)
}

/// As [`comm_oracle`] with the seed `(R_s, R_{s+1}) = (x, y)` and the range
/// `lo..=hi`, iterating backwards below the seed. The exponent at `n` is `b`
/// for odd `n` and `c` for even `n` in the absolute numbering.
///
/// Every step is an exact Laurent division; a remainder is an error.
pub fn comm_oracle_seeded(b: u32, c: u32, seed: i64, lo: i64, hi: i64) -> Result<CommTrajectory> {
    let e = |n: i64| if n.rem_euclid(2) == 1 { b } else { c };
    let mut r = BTreeMap::new();
    r.insert(seed, CommPoly::x());
    r.insert(seed + 1, CommPoly::y());
    let one = CommPoly::one();
    for n in seed + 1..hi {
        let next = (&one + &r[&n].pow(e(n))).exact_div(&r[&(n - 1)])?;
        r.insert(n + 1, next);
    }
    for n in (lo + 1..=seed).rev() {
        let prev = (&one + &r[&n].pow(e(n))).exact_div(&r[&(n + 1)])?;
        r.insert(n - 1, prev);
    }
    r.retain(|&n, _| (lo..=hi).contains(&n));
    Ok(CommTrajectory { b, c, r })
}
