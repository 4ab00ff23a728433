//! Evaluation of the functionals `psi(h) = (∫ f_j h)_j` against phase trees.
//!
//! Integration splits `[0, 1]` at every breakpoint of the integrands and at
//! every transition-window boundary of the tree. Panels not touching any
//! window carry a locally constant `h` and are integrated exactly; window
//! panels use Gauss–Legendre with adaptive bisection, the error estimate
//! being the difference between the panel rule and its embedded half-order
//! rule. Integer-kind trees therefore integrate exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::funcspace::PiecewiseFn;
use crate::gauss;
use crate::phase::{PhaseTree, TransitionWindow};
use crate::{Error, Result};

/// Adaptive quadrature parameters.
#[derive(Debug, Clone)]
pub struct QuadConfig {
    /// Per-panel acceptance: estimate `<= rel_tol * (1 + ||f||_1)`.
    pub rel_tol: f64,
    pub max_depth: u32,
    /// Gauss–Legendre panel order; the embedded estimate uses half the order.
    pub panel_order: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { rel_tol: 1e-10, max_depth: 40, panel_order: 15 }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-4) {
            return Err(Error::BadQuadConfig("rel_tol must lie in (0, 1e-4]"));
        }
        if self.panel_order < 2 || self.panel_order > 64 {
            return Err(Error::BadQuadConfig("panel_order must lie in [2, 64]"));
        }
        Ok(())
    }

    /// Same rule with a 10x tighter tolerance (for independent verification).
    pub fn tightened(&self) -> QuadConfig {
        QuadConfig { rel_tol: (self.rel_tol / 10.0).max(1e-15), ..self.clone() }
    }
}

/// One odd nonlinear component: `weight * (Re ∫ base·h)^exponent`.
#[derive(Debug, Clone, PartialEq)]
pub struct OddTerm {
    pub base: PiecewiseFn,
    /// Odd positive integer; oddness of the component follows from it.
    pub exponent: u32,
    pub weight: f64,
}

/// Treatment of the linear components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecMode {
    /// Each linear integral contributes (Re, Im).
    Complex,
    /// Each linear integral contributes Re only.
    RealPart,
}

/// An odd, L1-continuous functional into `R^m`: linear integrals against the
/// `f_j` plus optional odd integer powers of real parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecDoc", into = "SpecDoc")]
pub struct FunctionalSpec {
    linear: Vec<PiecewiseFn>,
    mode: SpecMode,
    odd_terms: Vec<OddTerm>,
}

#[derive(Serialize, Deserialize, Clone)]
struct OddTermDoc {
    base: PiecewiseFn,
    exponent: u32,
    weight: f64,
}

#[derive(Serialize, Deserialize, Clone)]
struct SpecDoc {
    #[serde(default = "default_schema")]
    schema: u64,
    linear: Vec<PiecewiseFn>,
    mode: SpecMode,
    #[serde(default)]
    odd_terms: Vec<OddTermDoc>,
}

fn default_schema() -> u64 {
    1
}

impl TryFrom<SpecDoc> for FunctionalSpec {
    type Error = Error;
    fn try_from(doc: SpecDoc) -> Result<Self> {
        if doc.schema != 1 {
            return Err(Error::Schema(doc.schema));
        }
        let odd_terms = doc
            .odd_terms
            .into_iter()
            .map(|t| OddTerm { base: t.base, exponent: t.exponent, weight: t.weight })
            .collect();
        FunctionalSpec::new(doc.linear, doc.mode, odd_terms)
    }
}

impl From<FunctionalSpec> for SpecDoc {
    fn from(s: FunctionalSpec) -> Self {
        SpecDoc {
            schema: 1,
            linear: s.linear,
            mode: s.mode,
            odd_terms: s
                .odd_terms
                .into_iter()
                .map(|t| OddTermDoc { base: t.base, exponent: t.exponent, weight: t.weight })
                .collect(),
        }
    }
}

impl FunctionalSpec {
    pub fn new(linear: Vec<PiecewiseFn>, mode: SpecMode, odd_terms: Vec<OddTerm>) -> Result<Self> {
        if linear.is_empty() && odd_terms.is_empty() {
            return Err(Error::EmptySpec);
        }
        for t in &odd_terms {
            if t.exponent % 2 == 0 || t.exponent == 0 {
                return Err(Error::BadExponent(t.exponent));
            }
            if !t.weight.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        Ok(FunctionalSpec { linear, mode, odd_terms })
    }

    pub fn linear(&self) -> &[PiecewiseFn] {
        &self.linear
    }

    pub fn mode(&self) -> SpecMode {
        self.mode
    }

    pub fn odd_terms(&self) -> &[OddTerm] {
        &self.odd_terms
    }

    /// Output dimension m.
    pub fn output_dim(&self) -> usize {
        let per = match self.mode {
            SpecMode::Complex => 2,
            SpecMode::RealPart => 1,
        };
        per * self.linear.len() + self.odd_terms.len()
    }

    /// Magnitude scale of the functional, used for scale-aware tolerances.
    pub fn scale(&self) -> f64 {
        let lin: f64 = self.linear.iter().map(|f| f.l1_norm()).sum();
        let odd: f64 = self
            .odd_terms
            .iter()
            .map(|t| t.weight.abs() * t.base.l1_norm().powi(t.exponent as i32))
            .sum();
        lin + odd
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }
}

fn split_points(fs: &[&PiecewiseFn], windows: &[TransitionWindow]) -> Vec<f64> {
    let mut pts = vec![0.0, 1.0];
    for f in fs {
        pts.extend(f.breakpoints().iter().copied().filter(|x| *x > 0.0 && *x < 1.0));
    }
    for w in windows {
        for x in [w.center - w.half_width, w.center + w.half_width] {
            if x > 0.0 && x < 1.0 {
                pts.push(x);
            }
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    pts
}

fn overlaps_window(windows: &[TransitionWindow], a: f64, b: f64) -> bool {
    windows
        .iter()
        .any(|w| w.half_width > 0.0 && w.center - w.half_width < b && w.center + w.half_width > a)
}

/// `∫_0^1 f_j(x) h(x) dx` for every `f_j`, sharing the panel decomposition
/// and the `h` evaluations across the family.
pub fn integrate_many(
    fs: &[&PiecewiseFn],
    tree: &PhaseTree,
    cfg: &QuadConfig,
) -> Result<Vec<Complex64>> {
    cfg.validate()?;
    let windows = tree.transition_windows();
    let pts = split_points(fs, &windows);
    let tols: Vec<f64> = fs.iter().map(|f| cfg.rel_tol * (1.0 + f.l1_norm())).collect();
    let high = gauss::rule(cfg.panel_order);
    let low = gauss::rule((cfg.panel_order / 2).max(2));

    let mut totals = vec![Complex64::new(0.0, 0.0); fs.len()];
    let mut worst_err = 0.0f64;
    let mut failed = false;

    let mut stack: Vec<(f64, f64, u32)> = Vec::new();
    for pair in pts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if b <= a {
            continue;
        }
        if !overlaps_window(&windows, a, b) {
            // h is locally constant here; the f-integral is exact per cell
            let h = tree.eval_h(0.5 * (a + b));
            for (j, f) in fs.iter().enumerate() {
                totals[j] += h * f.integral_over(a, b);
            }
            continue;
        }
        stack.push((a, b, 0));
        while let Some((a, b, depth)) = stack.pop() {
            let mid = 0.5 * (a + b);
            let rad = 0.5 * (b - a);
            let mut i_high = vec![Complex64::new(0.0, 0.0); fs.len()];
            let mut i_low = vec![Complex64::new(0.0, 0.0); fs.len()];
            for (x, wt) in high.nodes.iter().zip(&high.weights) {
                let p = mid + rad * x;
                let h = tree.eval_h(p);
                for (j, f) in fs.iter().enumerate() {
                    i_high[j] += h * f.eval(p) * (wt * rad);
                }
            }
            for (x, wt) in low.nodes.iter().zip(&low.weights) {
                let p = mid + rad * x;
                let h = tree.eval_h(p);
                for (j, f) in fs.iter().enumerate() {
                    i_low[j] += h * f.eval(p) * (wt * rad);
                }
            }
            let err = i_high
                .iter()
                .zip(&i_low)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0f64, f64::max);
            let ok = i_high
                .iter()
                .zip(&i_low)
                .zip(&tols)
                .all(|((x, y), tol)| (x - y).norm() <= *tol);
            if ok || depth >= cfg.max_depth {
                if !ok {
                    failed = true;
                    worst_err = worst_err.max(err);
                }
                for (t, v) in totals.iter_mut().zip(&i_high) {
                    *t += v;
                }
            } else {
                stack.push((mid, b, depth + 1));
                stack.push((a, mid, depth + 1));
            }
        }
    }

    if failed {
        let best = totals.iter().flat_map(|v| [v.re, v.im]).collect();
        return Err(Error::Accuracy { best, err: worst_err });
    }
    Ok(totals)
}

/// `∫_0^1 f(x) h(x) dx`.
pub fn integrate(f: &PiecewiseFn, tree: &PhaseTree, cfg: &QuadConfig) -> Result<Complex64> {
    Ok(integrate_many(&[f], tree, cfg)?[0])
}

/// Evaluate the functional: linear components per mode, then the odd powers.
pub fn psi_eval(spec: &FunctionalSpec, tree: &PhaseTree, cfg: &QuadConfig) -> Result<Vec<f64>> {
    let fs: Vec<&PiecewiseFn> =
        spec.linear.iter().chain(spec.odd_terms.iter().map(|t| &t.base)).collect();
    let ints = integrate_many(&fs, tree, cfg)?;
    let mut out = Vec::with_capacity(spec.output_dim());
    for v in ints.iter().take(spec.linear.len()) {
        match spec.mode {
            SpecMode::Complex => {
                out.push(v.re);
                out.push(v.im);
            }
            SpecMode::RealPart => out.push(v.re),
        }
    }
    for (term, v) in spec.odd_terms.iter().zip(ints.iter().skip(spec.linear.len())) {
        out.push(term.weight * v.re.powi(term.exponent as i32));
    }
    Ok(out)
}

/// `∫_0^1 |f| |h_b - h_a| dλ`, split at the windows of both trees.
fn integrate_abs_diff(
    f: &PiecewiseFn,
    ta: &PhaseTree,
    tb: &PhaseTree,
    cfg: &QuadConfig,
) -> Result<f64> {
    let mut windows = ta.transition_windows();
    windows.extend(tb.transition_windows());
    let pts = split_points(&[f], &windows);
    let tol = cfg.rel_tol * (1.0 + f.l1_norm());
    let high = gauss::rule(cfg.panel_order);
    let low = gauss::rule((cfg.panel_order / 2).max(2));

    let mut total = 0.0;
    let mut failed = false;
    let mut worst = 0.0f64;
    let mut stack: Vec<(f64, f64, u32)> = Vec::new();
    for pair in pts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if b <= a {
            continue;
        }
        if !overlaps_window(&windows, a, b) {
            let d = (tb.eval_h(0.5 * (a + b)) - ta.eval_h(0.5 * (a + b))).norm();
            total += d * f.abs_integral_over(a, b);
            continue;
        }
        stack.push((a, b, 0));
        while let Some((a, b, depth)) = stack.pop() {
            let mid = 0.5 * (a + b);
            let rad = 0.5 * (b - a);
            let eval = |nodes: &[f64], weights: &[f64]| -> f64 {
                nodes
                    .iter()
                    .zip(weights)
                    .map(|(x, wt)| {
                        let p = mid + rad * x;
                        wt * rad * f.eval(p).norm() * (tb.eval_h(p) - ta.eval_h(p)).norm()
                    })
                    .sum()
            };
            let hi = eval(&high.nodes, &high.weights);
            let lo = eval(&low.nodes, &low.weights);
            let err = (hi - lo).abs();
            if err <= tol || depth >= cfg.max_depth {
                if err > tol {
                    failed = true;
                    worst = worst.max(err);
                }
                total += hi;
            } else {
                stack.push((mid, b, depth + 1));
                stack.push((a, mid, depth + 1));
            }
        }
    }
    if failed {
        return Err(Error::Accuracy { best: vec![total], err: worst });
    }
    Ok(total)
}

/// Check the per-component Lipschitz inequality
/// `|psi_j(h_b) - psi_j(h_a)| <= ∫ |f_j| |h_b - h_a| dλ + 1e-9`.
pub fn lipschitz_check(
    spec: &FunctionalSpec,
    tree_a: &PhaseTree,
    tree_b: &PhaseTree,
    cfg: &QuadConfig,
) -> Result<bool> {
    if !spec.odd_terms.is_empty() {
        return Err(Error::NotLinearSpec);
    }
    let fs: Vec<&PiecewiseFn> = spec.linear.iter().collect();
    let ia = integrate_many(&fs, tree_a, cfg)?;
    let ib = integrate_many(&fs, tree_b, cfg)?;
    for (j, f) in spec.linear.iter().enumerate() {
        let lhs = (ib[j] - ia[j]).norm();
        let rhs = integrate_abs_diff(f, tree_a, tree_b, cfg)?;
        if lhs > rhs + 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::PiecewiseFn;
    use crate::phase::PhaseTree;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn one() -> PiecewiseFn {
        PiecewiseFn::constant(c(1.0, 0.0))
    }

    /// Midpoint Riemann oracle with panels split per smooth piece.
    fn midpoint_oracle(f: &PiecewiseFn, tree: &PhaseTree, total_panels: usize) -> Complex64 {
        let mut pts = vec![0.0, 1.0];
        pts.extend(f.breakpoints().iter().copied());
        for w in tree.transition_windows() {
            for x in [w.center - w.half_width, w.center + w.half_width] {
                if x > 0.0 && x < 1.0 {
                    pts.push(x);
                }
            }
        }
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        let mut total = c(0.0, 0.0);
        for pair in pts.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if b <= a {
                continue;
            }
            let n = ((b - a) * total_panels as f64).ceil().max(32.0) as usize;
            let h = (b - a) / n as f64;
            for k in 0..n {
                let x = a + (k as f64 + 0.5) * h;
                total += f.eval(x) * tree.eval_h(x) * h;
            }
        }
        total
    }

    #[test]
    fn constant_tree_is_exact() {
        let cfg = QuadConfig::default();
        for phase in [0.0, 0.7, PI / 2.0, 2.9] {
            let v = integrate(&one(), &PhaseTree::constant(phase), &cfg).unwrap();
            assert!((v - c(phase.cos(), phase.sin())).norm() < 1e-15);
        }
    }

    #[test]
    fn integer_halves_cancel_exactly() {
        let cfg = QuadConfig::default();
        let tree =
            PhaseTree::hard_switch(PhaseTree::int_constant(0), PhaseTree::int_constant(1), 0.5)
                .unwrap();
        let v = integrate(&one(), &tree, &cfg).unwrap();
        assert_eq!(v, c(0.0, 0.0));
    }

    #[test]
    fn blend_matches_midpoint_oracle() {
        let cfg = QuadConfig::default();
        let tree =
            PhaseTree::blend(PhaseTree::constant(0.0), PhaseTree::constant(PI), 0.5, 0.1).unwrap();
        let got = integrate(&one(), &tree, &cfg).unwrap();
        let oracle = midpoint_oracle(&one(), &tree, 1_000_000);
        assert!(
            (got - oracle).norm() <= 1e-8 * (1.0 + oracle.norm()),
            "{got} vs {oracle}"
        );
    }

    #[test]
    fn random_pairs_match_oracle() {
        let cfg = QuadConfig::default();
        let mut state = 0x31415926u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for trial in 0..25 {
            let bp = {
                let mut v = vec![0.0, 1.0, next(), next()];
                v.sort_by(|a, b| a.partial_cmp(b).unwrap());
                v.dedup();
                v
            };
            let f = if trial % 2 == 0 {
                let vals = (0..bp.len() - 1).map(|_| c(next() * 2.0 - 1.0, next() * 2.0 - 1.0)).collect();
                PiecewiseFn::constant_cells(bp, vals).unwrap()
            } else {
                let vals = (0..bp.len()).map(|_| c(next() * 2.0 - 1.0, next() * 2.0 - 1.0)).collect();
                PiecewiseFn::linear_samples(bp, vals).unwrap()
            };
            let inner = PhaseTree::blend(
                PhaseTree::constant(next() * 2.0),
                PhaseTree::constant(2.0 + next() * 2.0),
                next(),
                0.1 + 0.8 * next(),
            )
            .unwrap();
            let tree = PhaseTree::blend(inner.clone(), inner.shift(2), next(), 0.1 + 0.8 * next())
                .unwrap();
            let got = integrate(&f, &tree, &cfg).unwrap();
            let oracle = midpoint_oracle(&f, &tree, 400_000);
            assert!(
                (got - oracle).norm() <= 1e-8 * (1.0 + oracle.norm()),
                "trial {trial}: {got} vs {oracle}"
            );
        }
    }

    #[test]
    fn psi_examples() {
        let cfg = QuadConfig::default();
        let spec = FunctionalSpec::new(vec![one()], SpecMode::Complex, vec![]).unwrap();
        let v = psi_eval(&spec, &PhaseTree::constant(PI / 2.0), &cfg).unwrap();
        assert!((v[0] - 0.0).abs() < 1e-15 && (v[1] - 1.0).abs() < 1e-15);
        let v = psi_eval(&spec, &PhaseTree::constant(0.0), &cfg).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-15 && (v[1] - 0.0).abs() < 1e-15);
    }

    #[test]
    fn psi_is_odd_under_pi_shift() {
        let cfg = QuadConfig { rel_tol: 1e-12, ..QuadConfig::default() };
        let f2 = PiecewiseFn::linear_samples(vec![0.0, 1.0], vec![c(1.0, -0.5), c(0.0, 1.0)]).unwrap();
        let spec = FunctionalSpec::new(
            vec![one(), f2.clone()],
            SpecMode::Complex,
            vec![OddTerm { base: f2, exponent: 3, weight: 0.7 }],
        )
        .unwrap();
        let tree =
            PhaseTree::blend(PhaseTree::constant(0.3), PhaseTree::constant(2.1), 0.4, 0.2).unwrap();
        let plus = psi_eval(&spec, &tree, &cfg).unwrap();
        let minus = psi_eval(&spec, &tree.shift(1), &cfg).unwrap();
        for (p, m) in plus.iter().zip(&minus) {
            assert!((p + m).abs() <= 1e-12, "{p} vs {m}");
        }
    }

    #[test]
    fn linear_in_f() {
        let cfg = QuadConfig::default();
        let bp = vec![0.0, 0.4, 1.0];
        let f1 = PiecewiseFn::constant_cells(bp.clone(), vec![c(1.0, 0.2), c(-0.5, 0.0)]).unwrap();
        let f2 = PiecewiseFn::constant_cells(bp.clone(), vec![c(0.3, -1.0), c(0.8, 0.4)]).unwrap();
        let sum = PiecewiseFn::constant_cells(bp, vec![c(1.3, -0.8), c(0.3, 0.4)]).unwrap();
        let tree =
            PhaseTree::blend(PhaseTree::constant(0.0), PhaseTree::constant(PI), 0.3, 0.25).unwrap();
        let (v1, v2, vs) = (
            integrate(&f1, &tree, &cfg).unwrap(),
            integrate(&f2, &tree, &cfg).unwrap(),
            integrate(&sum, &tree, &cfg).unwrap(),
        );
        assert!((v1 + v2 - vs).norm() <= 1e-12);
    }

    #[test]
    fn lipschitz_examples() {
        let cfg = QuadConfig::default();
        let spec = FunctionalSpec::new(vec![one()], SpecMode::Complex, vec![]).unwrap();
        let a = PhaseTree::constant(0.0);
        assert!(lipschitz_check(&spec, &a, &a, &cfg).unwrap());
        let b = PhaseTree::constant(0.1);
        // closed form: both sides are 2 sin(0.05)
        assert!(lipschitz_check(&spec, &a, &b, &cfg).unwrap());
        let ia = integrate(&one(), &a, &cfg).unwrap();
        let ib = integrate(&one(), &b, &cfg).unwrap();
        assert!(((ib - ia).norm() - 2.0 * (0.05f64).sin()).abs() < 1e-12);
    }

    #[test]
    fn lipschitz_random_pairs() {
        let cfg = QuadConfig::default();
        let mut state = 0x600df00du64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let f = PiecewiseFn::linear_samples(vec![0.0, 0.5, 1.0], vec![c(1.0, 0.0), c(-1.0, 1.0), c(0.2, 0.0)])
            .unwrap();
        let spec = FunctionalSpec::new(vec![f], SpecMode::Complex, vec![]).unwrap();
        for _ in 0..40 {
            let ta = PhaseTree::blend(
                PhaseTree::constant(next()),
                PhaseTree::constant(1.0 + next() * 3.0),
                next(),
                0.1 + 0.8 * next(),
            )
            .unwrap();
            let tb = PhaseTree::blend(
                PhaseTree::constant(next()),
                PhaseTree::constant(1.0 + next() * 3.0),
                next(),
                0.1 + 0.8 * next(),
            )
            .unwrap();
            assert!(lipschitz_check(&spec, &ta, &tb, &cfg).unwrap());
        }
    }

    #[test]
    fn lipschitz_rejects_nonlinear_spec() {
        let cfg = QuadConfig::default();
        let spec = FunctionalSpec::new(
            vec![],
            SpecMode::RealPart,
            vec![OddTerm { base: one(), exponent: 3, weight: 1.0 }],
        )
        .unwrap();
        assert!(matches!(
            lipschitz_check(&spec, &PhaseTree::constant(0.0), &PhaseTree::constant(1.0), &cfg),
            Err(Error::NotLinearSpec)
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            FunctionalSpec::new(vec![], SpecMode::Complex, vec![]),
            Err(Error::EmptySpec)
        ));
        assert!(matches!(
            FunctionalSpec::new(
                vec![],
                SpecMode::RealPart,
                vec![OddTerm { base: one(), exponent: 2, weight: 1.0 }]
            ),
            Err(Error::BadExponent(2))
        ));
    }

    #[test]
    fn spec_round_trip() {
        let spec = FunctionalSpec::new(
            vec![one()],
            SpecMode::RealPart,
            vec![OddTerm { base: one(), exponent: 3, weight: -0.25 }],
        )
        .unwrap();
        let text = spec.to_json();
        assert!(text.contains("real-part"));
        assert_eq!(FunctionalSpec::from_json(&text).unwrap(), spec);
    }

    #[test]
    fn output_dims() {
        let spec = FunctionalSpec::new(vec![one(), one()], SpecMode::Complex, vec![]).unwrap();
        assert_eq!(spec.output_dim(), 4);
        let spec = FunctionalSpec::new(
            vec![one()],
            SpecMode::RealPart,
            vec![OddTerm { base: one(), exponent: 3, weight: 1.0 }],
        )
        .unwrap();
        assert_eq!(spec.output_dim(), 2);
    }
}
