//! Weighted path models: the segment `[0,3]` for `(2,2)` and the barbell
//! graph for `(1,4)`.
//!
//! Three independent evaluators of the same partition functions live here:
//! transfer-matrix powers, explicit path enumeration, and the finite
//! continued fraction expanded as a truncated power series in a central `t`.
//! Weights along a path multiply left to right in visit order.

use std::collections::BTreeMap;
use std::fmt;

use crate::dynamics::{commutator, conserved_14, conserved_22, CaseTag, InitialData};
use crate::error::{Error, Result};
use crate::ncpoly::{p, NCPoly};
use crate::verify::report::expect_sides;
use crate::ncpoly::identity::Side;
use crate::verify::VerifyReport;

/// Default cap on the number of enumerated paths.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Symbolic name of the weight, `"1"` for unit steps.
    pub name: String,
    pub weight: NCPoly,
}

/// A weighted directed graph with a distinguished start vertex and the right
/// factor that turns partition functions into cluster variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub case: CaseTag,
    pub vertices: usize,
    pub edges: BTreeMap<(usize, usize), Edge>,
    pub base: NCPoly,
    pub start_vertex: usize,
    /// Conserved quantity `K` of the matching linear recursion.
    pub conserved: NCPoly,
}

impl ModelSpec {
    /// Weight of the named step, e.g. `weight("y2")`.
    pub fn weight(&self, name: &str) -> Option<&NCPoly> {
        self.edges.values().find(|e| e.name == name).map(|e| &e.weight)
    }

    /// A model with an explicit edge list; used for small ad-hoc graphs.
    pub fn custom(vertices: usize, edges: impl IntoIterator<Item = ((usize, usize), Edge)>) -> Self {
        ModelSpec {
            case: CaseTag::B22,
            vertices,
            edges: edges.into_iter().collect(),
            base: NCPoly::one(),
            start_vertex: 0,
            conserved: NCPoly::zero(),
        }
    }

    fn out_edges(&self, v: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.range((v, 0)..(v + 1, 0)).map(|(&(_, to), e)| (to, e))
    }
}

fn edge(name: &str, weight: NCPoly) -> Edge {
    Edge {
        name: name.to_string(),
        weight,
    }
}

/// The path model of a case. The `(4,1)` cases have no model of their own.
pub fn build_model(case: CaseTag) -> Result<ModelSpec> {
    let one = || edge("1", NCPoly::one());
    match case {
        CaseTag::B22 => {
            let y1 = p("y^2 x^-1 y^-1");
            let y2 = p("x^-1 y^-1");
            let y3 = p("x y^-1");
            let edges = [
                ((0, 1), one()),
                ((1, 2), one()),
                ((2, 3), one()),
                ((1, 0), edge("y1", y1)),
                ((2, 1), edge("y2", y2)),
                ((3, 2), edge("y3", y3)),
            ];
            Ok(ModelSpec {
                case,
                vertices: 4,
                edges: edges.into_iter().collect(),
                base: p("y x y^-1"),
                start_vertex: 0,
                conserved: conserved_22(),
            })
        }
        CaseTag::B14Xy => {
            let a = p("1 + y");
            let y1 = &a * &p("x^-1 y x^-1 y^-1");
            let y2 = &(&p("x^2") + &(&(&a * &p("x^-2")) * &a)) * &p("y^-1 x^-1 y x^-1 y^-1");
            let y3 = &(&p("x^3") + &(&a * &p("x^-1"))) * &p("x^-1 y^-1");
            Ok(barbell(case, y1, y2, y3, p("y x y^-1"), conserved_14(InitialData::Xy)))
        }
        CaseTag::B14XY => {
            // written in (x, y) for (X, Y)
            let a = p("1 + x");
            let y1 = &(&p("y^3") + &(&a * &p("y^-1"))) * &p("x^-1 y^-1");
            let y2 = &(&p("y") + &(&(&a * &p("y^-2")) * &(&a * &p("y^-1")))) * &p("x^-1 y^-1");
            let y3 = &a * &p("y^-2");
            Ok(barbell(case, y1, y2, y3, p("y"), conserved_14(InitialData::XY)))
        }
        CaseTag::B41Xy | CaseTag::B41XY => Err(Error::UnsupportedCase(format!(
            "no path model for case {case}"
        ))),
    }
}

fn barbell(case: CaseTag, y1: NCPoly, y2: NCPoly, y3: NCPoly, base: NCPoly, k: NCPoly) -> ModelSpec {
    let edges = [
        ((0, 0), edge("y1", y1)),
        ((0, 1), edge("1", NCPoly::one())),
        ((1, 0), edge("y2", y2)),
        ((1, 1), edge("y3", y3)),
    ];
    ModelSpec {
        case,
        vertices: 2,
        edges: edges.into_iter().collect(),
        base,
        start_vertex: 0,
        conserved: k,
    }
}

/// Square matrix with noncommutative entries.
pub type Matrix = Vec<Vec<NCPoly>>;

/// Entry `(i, j)` is the weight of the step `i -> j`, zero if there is none.
pub fn transfer_matrix(model: &ModelSpec) -> Matrix {
    let mut t = vec![vec![NCPoly::zero(); model.vertices]; model.vertices];
    for (&(i, j), e) in &model.edges {
        t[i][j] = e.weight.clone();
    }
    t
}

/// `(T^steps)` at the start vertex, pushing a row vector through `steps`
/// right multiplications so each new step's weight lands on the right.
pub fn partition_fn_matrix(model: &ModelSpec, steps: usize) -> NCPoly {
    let t = transfer_matrix(model);
    let s = model.start_vertex;
    let mut row = vec![NCPoly::zero(); model.vertices];
    row[s] = NCPoly::one();
    for _ in 0..steps {
        let mut next = vec![NCPoly::zero(); model.vertices];
        for (i, v) in row.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for (j, entry) in t[i].iter().enumerate() {
                if !entry.is_zero() {
                    next[j] += &(v * entry);
                }
            }
        }
        row = next;
    }
    row.swap_remove(s)
}

/// A closed path from the start vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<usize>,
    /// Names of the non-unit steps in visit order.
    pub labels: Vec<String>,
    pub weight: NCPoly,
}

impl Path {
    /// The weight as a product of step names, `"1"` if every step is a unit.
    pub fn label(&self) -> String {
        if self.labels.is_empty() {
            "1".to_string()
        } else {
            self.labels.join(" ")
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}  [{}]  {}", vs.join("->"), self.label(), self.weight)
    }
}

/// All `steps`-step paths from the start vertex back to it, in
/// lexicographic order of vertex sequences. Fails once more than `budget`
/// paths exist.
pub fn enumerate_paths(model: &ModelSpec, steps: usize, budget: u64) -> Result<Vec<Path>> {
    let s = model.start_vertex;
    // back[r][v]: v can reach the start in exactly r steps
    let mut back = vec![vec![false; model.vertices]; steps + 1];
    back[0][s] = true;
    for r in 1..=steps {
        for v in 0..model.vertices {
            back[r][v] = model.out_edges(v).any(|(to, _)| back[r - 1][to]);
        }
    }

    struct Walk<'a> {
        model: &'a ModelSpec,
        back: &'a [Vec<bool>],
        steps: usize,
        budget: u64,
        vertices: Vec<usize>,
        edges: Vec<&'a Edge>,
        out: Vec<Path>,
    }

    impl<'a> Walk<'a> {
        fn go(&mut self, v: usize) -> Result<()> {
            let done = self.edges.len();
            if done == self.steps {
                if self.out.len() as u64 >= self.budget {
                    return Err(Error::BudgetExceeded(self.budget));
                }
                let weight = crate::ncpoly::product(self.edges.iter().map(|e| &e.weight));
                let labels = self
                    .edges
                    .iter()
                    .filter(|e| !e.weight.is_one())
                    .map(|e| e.name.clone())
                    .collect();
                self.out.push(Path {
                    vertices: self.vertices.clone(),
                    labels,
                    weight,
                });
                return Ok(());
            }
            let remaining = self.steps - done - 1;
            let model = self.model;
            for (to, e) in model.out_edges(v) {
                if !self.back[remaining][to] {
                    continue;
                }
                self.vertices.push(to);
                self.edges.push(e);
                self.go(to)?;
                self.vertices.pop();
                self.edges.pop();
            }
            Ok(())
        }
    }

    if !back[steps][s] {
        return Ok(Vec::new());
    }
    let mut walk = Walk {
        model,
        back: &back,
        steps,
        budget,
        vertices: vec![s],
        edges: Vec::new(),
        out: Vec::new(),
    };
    walk.go(s)?;
    Ok(walk.out)
}

/// Sum of the weights of all closed `steps`-step paths.
pub fn partition_fn_enumerate(model: &ModelSpec, steps: usize, budget: u64) -> Result<NCPoly> {
    let mut total = NCPoly::zero();
    for path in enumerate_paths(model, steps, budget)? {
        total += &path.weight;
    }
    Ok(total)
}

/// Number of matrix steps per unit of the series variable `t`: a `(2,2)`
/// excursion returns to 0 only after an even number of steps.
pub fn steps_per_index(model: &ModelSpec) -> usize {
    match model.case {
        CaseTag::B22 => 2,
        _ => 1,
    }
}

/// Truncated power series in a central variable `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesNC {
    pub coeffs: Vec<NCPoly>,
}

impl SeriesNC {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Series with the given low coefficients, zero-padded to `order`.
    pub fn from_coeffs(mut coeffs: Vec<NCPoly>, order: usize) -> Self {
        coeffs.resize(order, NCPoly::zero());
        coeffs.truncate(order);
        SeriesNC { coeffs }
    }

    pub fn coeff(&self, n: usize) -> &NCPoly {
        &self.coeffs[n]
    }

    pub fn mul(&self, other: &SeriesNC) -> SeriesNC {
        let order = self.order().min(other.order());
        let mut out = vec![NCPoly::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        SeriesNC { coeffs: out }
    }

    /// `(1 - self)^-1` for a series without constant term.
    pub fn one_minus_inverse(&self) -> SeriesNC {
        assert!(
            self.coeffs.first().is_none_or(NCPoly::is_zero),
            "constant term must vanish"
        );
        let order = self.order();
        let mut f: Vec<NCPoly> = Vec::with_capacity(order);
        for n in 0..order {
            if n == 0 {
                f.push(NCPoly::one());
                continue;
            }
            // F = 1 + A F
            let mut c = NCPoly::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() && !f[n - j].is_zero() {
                    c += &(&self.coeffs[j] * &f[n - j]);
                }
            }
            f.push(c);
        }
        SeriesNC { coeffs: f }
    }

    /// Multiplies every coefficient on the right by `q`.
    pub fn times_right(&self, q: &NCPoly) -> SeriesNC {
        SeriesNC {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

/// `t^k w` truncated to `order`.
fn monomial_series(k: usize, w: &NCPoly, order: usize) -> SeriesNC {
    let mut coeffs = vec![NCPoly::zero(); order];
    if k < order {
        coeffs[k] = w.clone();
    }
    SeriesNC { coeffs }
}

/// Expands the finite continued fraction of the model to `order` terms,
/// innermost level first. Multiply by `model.base` for the cluster variables
/// (see [`cluster_series`]).
///
/// `(2,2)`: `F_4 = 1`, `F_k = (1 - t F_{k+1} y_k)^-1`, `F = F_1`.
/// Barbell: `F = (1 - t y1 - t^2 (1 - t y3)^-1 y2)^-1`.
pub fn continued_fraction_series(model: &ModelSpec, order: usize) -> Result<SeriesNC> {
    let w = |name: &str| {
        model
            .weight(name)
            .cloned()
            .ok_or_else(|| Error::UnsupportedCase(format!("model has no weight {name}")))
    };
    match model.case {
        CaseTag::B22 => {
            let mut f = monomial_series(0, &NCPoly::one(), order);
            for k in (1..=3).rev() {
                let a = f.mul(&monomial_series(1, &w(&format!("y{k}"))?, order));
                f = a.one_minus_inverse();
            }
            Ok(f)
        }
        CaseTag::B14Xy | CaseTag::B14XY => {
            let f1 = monomial_series(1, &w("y3")?, order).one_minus_inverse();
            let excursion = f1.mul(&monomial_series(2, &w("y2")?, order));
            let mut a = monomial_series(1, &w("y1")?, order);
            for (slot, e) in a.coeffs.iter_mut().zip(excursion.coeffs) {
                *slot += &e;
            }
            Ok(a.one_minus_inverse())
        }
        other => Err(Error::UnsupportedCase(format!("no path model for case {other}"))),
    }
}

/// Continued fraction times the base: coefficients are `R_n` for `(2,2)`,
/// `u_n` for `(1,4)` with `(x, y)` data, `u_{n+1}` with `(X, Y)` data.
pub fn cluster_series(model: &ModelSpec, order: usize) -> Result<SeriesNC> {
    Ok(continued_fraction_series(model, order)?.times_right(&model.base))
}

/// Checks `(1 - t K + t^2 C) F(t) = 1 - t (K - y1)` coefficient by
/// coefficient up to the series' order.
pub fn series_multiply_check(model: &ModelSpec, series: &SeriesNC) -> VerifyReport {
    let mut report = VerifyReport::new();
    let k = &model.conserved;
    let c = commutator();
    let f = &series.coeffs;
    let y1 = model.weight("y1").cloned().unwrap_or_default();
    let zero = NCPoly::zero();
    let numerator = [NCPoly::one(), &y1 - k];

    report.check_indices("series numerator", 0..series.order().min(2) as i64, |n| {
        let n = n as usize;
        let mut side = Side::new().plus(&f[n]);
        if n >= 1 {
            side = side.minus_product(k, &f[n - 1]);
        }
        expect_sides(&side, &Side::new().plus(&numerator[n]))
    });
    report.check_indices("series (1 - tK + t^2 C) F = numerator", 2..series.order() as i64, |n| {
        let n = n as usize;
        expect_sides(
            &Side::new()
                .plus(&f[n])
                .minus_product(k, &f[n - 1])
                .product(&c, &f[n - 2]),
            &Side::new().plus(&zero),
        )
    });
    report
}
