//! Input functions `f_j` on `[0, 1]`: piecewise-constant or piecewise-linear
//! complex-valued, with exact norms, exact cell integrals, and the induced
//! measure `mu_f(S) = sum_j ∫_S |f_j|`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// How the `values` of a [`PiecewiseFn`] are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FnKind {
    /// One value per cell; the function is constant on each cell.
    ConstantCells,
    /// One value per breakpoint; the function interpolates linearly.
    LinearSamples,
}

/// A piecewise-constant or piecewise-linear complex function on `[0, 1]`.
///
/// Breakpoints are strictly increasing, starting at exactly 0 and ending at
/// exactly 1. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PiecewiseFnDoc", into = "PiecewiseFnDoc")]
pub struct PiecewiseFn {
    kind: FnKind,
    breakpoints: Vec<f64>,
    values: Vec<Complex64>,
}

#[derive(Serialize, Deserialize, Clone)]
struct PiecewiseFnDoc {
    kind: FnKind,
    breakpoints: Vec<f64>,
    values: Vec<(f64, f64)>,
}

impl TryFrom<PiecewiseFnDoc> for PiecewiseFn {
    type Error = Error;
    fn try_from(doc: PiecewiseFnDoc) -> Result<Self> {
        let values: Vec<Complex64> =
            doc.values.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        PiecewiseFn::new(doc.kind, doc.breakpoints, values)
    }
}

impl From<PiecewiseFn> for PiecewiseFnDoc {
    fn from(f: PiecewiseFn) -> Self {
        PiecewiseFnDoc {
            kind: f.kind,
            breakpoints: f.breakpoints,
            values: f.values.iter().map(|v| (v.re, v.im)).collect(),
        }
    }
}

impl PiecewiseFn {
    pub fn new(kind: FnKind, breakpoints: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::BadBreakpointRange {
                first: breakpoints.first().copied().unwrap_or(f64::NAN),
                last: breakpoints.last().copied().unwrap_or(f64::NAN),
            });
        }
        let (first, last) = (breakpoints[0], *breakpoints.last().unwrap());
        if first != 0.0 || last != 1.0 {
            return Err(Error::BadBreakpointRange { first, last });
        }
        for i in 1..breakpoints.len() {
            if !(breakpoints[i] > breakpoints[i - 1]) {
                return Err(Error::NonMonotoneBreakpoints(i));
            }
        }
        let expected = match kind {
            FnKind::ConstantCells => breakpoints.len() - 1,
            FnKind::LinearSamples => breakpoints.len(),
        };
        if values.len() != expected {
            return Err(Error::ValueCount { got: values.len(), expected });
        }
        if breakpoints.iter().any(|b| !b.is_finite())
            || values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(PiecewiseFn { kind, breakpoints, values })
    }

    pub fn constant_cells(breakpoints: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        Self::new(FnKind::ConstantCells, breakpoints, values)
    }

    pub fn linear_samples(breakpoints: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        Self::new(FnKind::LinearSamples, breakpoints, values)
    }

    /// The constant function `f ≡ c`.
    pub fn constant(c: Complex64) -> Self {
        PiecewiseFn {
            kind: FnKind::ConstantCells,
            breakpoints: vec![0.0, 1.0],
            values: vec![c],
        }
    }

    pub fn kind(&self) -> FnKind {
        self.kind
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    fn cell_index(&self, x: f64) -> usize {
        // Cells are right-open except the last one.
        match self.breakpoints.binary_search_by(|b| b.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.breakpoints.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.breakpoints.len() - 2),
        }
    }

    /// Pointwise value at `x` in `[0, 1]`.
    pub fn eval(&self, x: f64) -> Complex64 {
        let i = self.cell_index(x);
        match self.kind {
            FnKind::ConstantCells => self.values[i],
            FnKind::LinearSamples => {
                let (a, b) = (self.breakpoints[i], self.breakpoints[i + 1]);
                let s = ((x - a) / (b - a)).clamp(0.0, 1.0);
                self.values[i] * (1.0 - s) + self.values[i + 1] * s
            }
        }
    }

    /// Exact `∫_a^b f dλ` for `0 <= a <= b <= 1`.
    pub fn integral_over(&self, a: f64, b: f64) -> Complex64 {
        if b <= a {
            return Complex64::new(0.0, 0.0);
        }
        let mut total = Complex64::new(0.0, 0.0);
        for i in 0..self.breakpoints.len() - 1 {
            let lo = self.breakpoints[i].max(a);
            let hi = self.breakpoints[i + 1].min(b);
            if hi <= lo {
                continue;
            }
            total += match self.kind {
                FnKind::ConstantCells => self.values[i] * (hi - lo),
                FnKind::LinearSamples => {
                    // Trapezoid is exact for a linear integrand.
                    (self.eval_linear(i, lo) + self.eval_linear(i, hi)) * (0.5 * (hi - lo))
                }
            };
        }
        total
    }

    /// Exact `∫_a^b |f| dλ` for `0 <= a <= b <= 1`.
    pub fn abs_integral_over(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let mut total = 0.0;
        for i in 0..self.breakpoints.len() - 1 {
            let lo = self.breakpoints[i].max(a);
            let hi = self.breakpoints[i + 1].min(b);
            if hi <= lo {
                continue;
            }
            total += match self.kind {
                FnKind::ConstantCells => self.values[i].norm() * (hi - lo),
                FnKind::LinearSamples => {
                    seg_abs_integral(self.eval_linear(i, lo), self.eval_linear(i, hi)) * (hi - lo)
                }
            };
        }
        total
    }

    fn eval_linear(&self, cell: usize, x: f64) -> Complex64 {
        let (a, b) = (self.breakpoints[cell], self.breakpoints[cell + 1]);
        let s = (x - a) / (b - a);
        self.values[cell] * (1.0 - s) + self.values[cell + 1] * s
    }

    /// `∫_0^1 |f| dλ`, exact per cell.
    pub fn l1_norm(&self) -> f64 {
        self.abs_integral_over(0.0, 1.0)
    }

    /// Essential sup of `|f|`; attained at a value (constant cells) or a
    /// sample (linear interpolation is maximal at segment ends).
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Exact `∫_0^1 |(1-s)a + s b| ds` (unit-length parameterization).
fn seg_abs_integral(a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let r2 = d.norm_sqr();
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        return 0.0;
    }
    if r2.sqrt() <= 1e-9 * scale {
        // Near-constant segment: the closed form below cancels badly, while
        // the integrand is analytic with a huge convergence radius, so a
        // fixed Gauss rule is exact at double precision.
        let rule = crate::gauss::rule(15);
        let mut s = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let t = 0.5 * (x + 1.0);
            s += w * (a + d * t).norm();
        }
        return 0.5 * s;
    }
    // |p(s)|^2 = r2 (s - s0)^2 + q with q = Im(conj(a) d)^2 / r2.
    let re_ad = a.re * d.re + a.im * d.im;
    let im_ad = a.re * d.im - a.im * d.re;
    let s0 = -re_ad / r2;
    let e = im_ad.abs() / r2;
    let r = r2.sqrt();
    let f = |u: f64| -> f64 {
        if e == 0.0 {
            0.5 * u * u.abs()
        } else {
            0.5 * (u * (u * u + e * e).sqrt() + e * e * (u / e).asinh())
        }
    };
    r * (f(1.0 - s0) - f(-s0))
}

/// A finite family of input functions plus the real-valuedness flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProblemDoc", into = "ProblemDoc")]
pub struct Problem {
    functions: Vec<PiecewiseFn>,
    real_valued: bool,
}

#[derive(Serialize, Deserialize, Clone)]
struct ProblemDoc {
    #[serde(default = "default_schema")]
    schema: u64,
    functions: Vec<PiecewiseFnDoc>,
    real_valued: bool,
}

fn default_schema() -> u64 {
    1
}

impl TryFrom<ProblemDoc> for Problem {
    type Error = Error;
    fn try_from(doc: ProblemDoc) -> Result<Self> {
        if doc.schema != 1 {
            return Err(Error::Schema(doc.schema));
        }
        let functions = doc
            .functions
            .into_iter()
            .map(PiecewiseFn::try_from)
            .collect::<Result<Vec<_>>>()?;
        Problem::new(functions, doc.real_valued)
    }
}

impl From<Problem> for ProblemDoc {
    fn from(p: Problem) -> Self {
        ProblemDoc {
            schema: 1,
            functions: p.functions.into_iter().map(PiecewiseFnDoc::from).collect(),
            real_valued: p.real_valued,
        }
    }
}

impl Problem {
    pub fn new(functions: Vec<PiecewiseFn>, real_valued: bool) -> Result<Self> {
        if functions.is_empty() {
            return Err(Error::EmptyProblem);
        }
        if real_valued {
            for (j, f) in functions.iter().enumerate() {
                if !f.is_real() {
                    return Err(Error::NotRealValued(j));
                }
            }
        }
        Ok(Problem { functions, real_valued })
    }

    pub fn functions(&self) -> &[PiecewiseFn] {
        &self.functions
    }

    pub fn real_valued(&self) -> bool {
        self.real_valued
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem serializes")
    }
}

/// Parse a problem document in the external JSON format. Validation errors
/// keep their distinct diagnostics; only JSON-level failures report as
/// malformed.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let doc: ProblemDoc =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    Problem::try_from(doc)
}

/// `mu_f` of a disjoint union of subintervals of `[0, 1]`:
/// `sum_j ∫_S |f_j| dλ`.
pub fn mu_f(problem: &Problem, intervals: &[(f64, f64)]) -> Result<f64> {
    let mut sorted: Vec<(f64, f64)> = intervals.to_vec();
    for &(a, b) in &sorted {
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || b < a {
            return Err(Error::BadIntervals);
        }
    }
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
    for w in sorted.windows(2) {
        if w[1].0 < w[0].1 {
            return Err(Error::BadIntervals);
        }
    }
    let mut total = 0.0;
    for &(a, b) in &sorted {
        for f in problem.functions() {
            total += f.abs_integral_over(a, b);
        }
    }
    Ok(total)
}
