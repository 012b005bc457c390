use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ncpoly::identity::{sides_agree, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// First failing instance of a checked identity, with both sides in the
/// polynomial text form so it can be re-parsed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: i64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    /// Inclusive index range the check covered; `None` for index-free checks.
    pub range: Option<(i64, i64)>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub entries: Vec<Entry>,
}

impl VerifyReport {
    pub fn new() -> Self {
        VerifyReport::default()
    }

    /// True when every entry passed. Skips count against it.
    pub fn overall(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn push(&mut self, entry: Entry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.entries.extend(other.entries);
    }

    /// Prefixes every entry name with `scope/`.
    pub fn scoped(mut self, scope: &str) -> VerifyReport {
        for e in &mut self.entries {
            e.name = format!("{scope}/{}", e.name);
        }
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Records an index-free identity.
    pub fn check(&mut self, name: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display, ok: bool) {
        let counterexample = (!ok).then(|| Counterexample {
            index: 0,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
        self.push(Entry {
            name: name.into(),
            range: None,
            status: if ok { Status::Pass } else { Status::Fail },
            counterexample,
            note: None,
        });
    }

    /// Runs `check` at every index and records one entry, keeping the first
    /// failure. `check` returns `Err((lhs, rhs))` on mismatch. An empty index
    /// set passes vacuously.
    pub fn check_indices<I, F>(&mut self, name: impl Into<String>, indices: I, mut check: F)
    where
        I: IntoIterator<Item = i64>,
        F: FnMut(i64) -> Result<(), (String, String)>,
    {
        let mut range: Option<(i64, i64)> = None;
        let mut counterexample = None;
        for n in indices {
            range = Some(match range {
                None => (n, n),
                Some((lo, hi)) => (lo.min(n), hi.max(n)),
            });
            if counterexample.is_some() {
                continue;
            }
            if let Err((lhs, rhs)) = check(n) {
                counterexample = Some(Counterexample { index: n, lhs, rhs });
            }
        }
        let status = if counterexample.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        self.push(Entry {
            name: name.into(),
            range,
            status,
            counterexample,
            note: if range.is_none() {
                Some("vacuous: no indices in range".into())
            } else {
                None
            },
        });
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.push(Entry {
            name: name.into(),
            range: None,
            status: Status::Skip,
            counterexample: None,
            note: Some(reason.into()),
        });
    }

    pub fn info(&mut self, name: impl Into<String>, note: impl Into<String>) {
        self.push(Entry {
            name: name.into(),
            range: None,
            status: Status::Pass,
            counterexample: None,
            note: Some(note.into()),
        });
    }

    /// Sorts entries by name; used when merging reports built concurrently.
    pub fn sort_by_name(&mut self) {
        self.entries.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "overall": self.overall(),
            "passed": self.count(Status::Pass),
            "failed": self.count(Status::Fail),
            "skipped": self.count(Status::Skip),
            "entries": self.entries,
        })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            write!(f, "{tag} {}", e.name)?;
            if let Some((lo, hi)) = e.range {
                write!(f, " [{lo}..={hi}]")?;
            }
            if let Some(note) = &e.note {
                write!(f, " ({note})")?;
            }
            writeln!(f)?;
            if let Some(c) = &e.counterexample {
                writeln!(f, "    first failure at n={}", c.index)?;
                writeln!(f, "      lhs: {}", c.lhs)?;
                writeln!(f, "      rhs: {}", c.rhs)?;
            }
        }
        writeln!(
            f,
            "overall: {} ({} passed, {} failed, {} skipped)",
            if self.overall() { "PASS" } else { "FAIL" },
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        )
    }
}

/// Compares two displayable values for a check closure.
pub(crate) fn expect_eq<T: PartialEq + fmt::Display>(lhs: &T, rhs: &T) -> Result<(), (String, String)> {
    if lhs == rhs {
        Ok(())
    } else {
        Err((lhs.to_string(), rhs.to_string()))
    }
}

/// Exact comparison of two sides of a product identity for a check closure.
pub(crate) fn expect_sides(lhs: &Side<'_>, rhs: &Side<'_>) -> Result<(), (String, String)> {
    sides_agree(lhs, rhs).map_err(|m| m.sides())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_range_is_vacuous_pass() {
        let mut r = VerifyReport::new();
        r.check_indices("nothing", std::iter::empty(), |_| Err(("a".into(), "b".into())));
        assert!(r.overall());
        assert_eq!(r.entries[0].range, None);
    }

    #[test]
    fn first_failure_is_kept() {
        let mut r = VerifyReport::new();
        r.check_indices("odd", 0..10, |n| {
            if n % 2 == 1 {
                Err((n.to_string(), "even".into()))
            } else {
                Ok(())
            }
        });
        assert!(!r.overall());
        let e = &r.entries[0];
        assert_eq!(e.range, Some((0, 9)));
        assert_eq!(e.counterexample.as_ref().unwrap().index, 1);
        assert!(r.to_text().contains("FAIL odd [0..=9]"));
        assert_eq!(r.to_json()["failed"], 1);
    }

    #[test]
    fn skips_are_not_passes() {
        let mut r = VerifyReport::new();
        r.skip("probe", "budget");
        assert!(!r.overall());
        assert_eq!(r.count(Status::Skip), 1);
    }
}
