//! Finite representation of nondecreasing phase functions `g` on `[0, 1]` and
//! of the circle-valued `h = e^{ig}`.
//!
//! Smooth trees are nested convex blends driven by the transition `tau`; the
//! blend window for parameter `t` is centered at `c(t) = (1+w) - t(1+2w)`, so
//! that at `t = 0` and `t = 1` the window lies outside `[0, 1]` and the blend
//! reproduces its endpoints exactly. Integer trees (for the ±1-valued mode)
//! use hard switches at `x = 1 - t` instead.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::smoothstep::default_step;
use crate::{Error, Result};

/// Tolerance for the pointwise-order certificate.
pub const ORDER_TOL: f64 = 1e-12;
/// Number of uniform grid points used by the order certificate.
pub const ORDER_GRID: usize = 4096;

/// Smooth (real-phase) or integer (parity) tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    Smooth,
    Integer,
}

/// A nondecreasing phase function, finitely represented.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TreeDoc", into = "TreeDoc")]
pub enum PhaseTree {
    /// Constant phase, in radians.
    Const(f64),
    /// Constant integer level.
    IntConst(i64),
    /// Smooth transition from `lo` to `hi` over a window of half-width `w`
    /// centered at `c(t) = (1+w) - t(1+2w)`.
    Blend { lo: Arc<PhaseTree>, hi: Arc<PhaseTree>, t: f64, w: f64 },
    /// Integer-kind jump from `lo` to `hi` at `x = 1 - t`.
    HardSwitch { lo: Arc<PhaseTree>, hi: Arc<PhaseTree>, t: f64 },
}

/// Interval on which a blend's `tau` argument lies in `(-1, 1)`; outside all
/// windows the phase is locally constant. Hard switches report a zero-width
/// window at the jump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionWindow {
    pub center: f64,
    pub half_width: f64,
    pub depth: u32,
}

#[inline]
pub(crate) fn blend_center(t: f64, w: f64) -> f64 {
    (1.0 + w) - t * (1.0 + 2.0 * w)
}

impl PhaseTree {
    pub fn constant(c: f64) -> Self {
        PhaseTree::Const(c)
    }

    pub fn int_constant(k: i64) -> Self {
        PhaseTree::IntConst(k)
    }

    pub fn kind(&self) -> TreeKind {
        match self {
            PhaseTree::Const(_) | PhaseTree::Blend { .. } => TreeKind::Smooth,
            PhaseTree::IntConst(_) | PhaseTree::HardSwitch { .. } => TreeKind::Integer,
        }
    }

    /// Smooth blend of two ordered trees; certifies `lo ⪯ hi` on the
    /// [`leq`] grid before constructing.
    pub fn blend(lo: PhaseTree, hi: PhaseTree, t: f64, w: f64) -> Result<Self> {
        if lo.kind() != TreeKind::Smooth || hi.kind() != TreeKind::Smooth {
            return Err(Error::WrongKind { expected: "smooth" });
        }
        if !(t.is_finite() && (0.0..=1.0).contains(&t)) {
            return Err(Error::BadBlendParam("t must lie in [0,1]"));
        }
        if !(w.is_finite() && w > 0.0 && w <= 1.0) {
            return Err(Error::BadBlendParam("w must lie in (0,1]"));
        }
        if let Some((x, excess)) = first_order_violation(&lo, &hi) {
            return Err(Error::OrderViolation { x, excess });
        }
        Ok(Self::blend_unchecked(lo, hi, t, w))
    }

    /// Hard switch between two ordered integer trees; the order check is
    /// exact (evaluated between consecutive switch points).
    pub fn hard_switch(lo: PhaseTree, hi: PhaseTree, t: f64) -> Result<Self> {
        if lo.kind() != TreeKind::Integer || hi.kind() != TreeKind::Integer {
            return Err(Error::WrongKind { expected: "integer" });
        }
        if !(t.is_finite() && (0.0..=1.0).contains(&t)) {
            return Err(Error::BadBlendParam("t must lie in [0,1]"));
        }
        let mut cuts: Vec<f64> = lo.switch_points();
        cuts.extend(hi.switch_points());
        cuts.push(0.0);
        cuts.push(1.0);
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        for pair in cuts.windows(2) {
            let x = 0.5 * (pair[0] + pair[1]);
            let (a, b) = (lo.eval_int(x), hi.eval_int(x));
            if a > b {
                return Err(Error::OrderViolation { x, excess: (a - b) as f64 });
            }
        }
        Ok(Self::hard_switch_unchecked(lo, hi, t))
    }

    // The inductive construction produces blends whose order is a structural
    // invariant; it uses these to avoid re-certifying on every evaluation.
    pub(crate) fn blend_unchecked(lo: PhaseTree, hi: PhaseTree, t: f64, w: f64) -> Self {
        debug_assert!(lo.eval_g(0.0) <= hi.eval_g(0.0) + ORDER_TOL);
        debug_assert!(lo.eval_g(1.0) <= hi.eval_g(1.0) + ORDER_TOL);
        PhaseTree::Blend { lo: Arc::new(lo), hi: Arc::new(hi), t, w }
    }

    pub(crate) fn hard_switch_unchecked(lo: PhaseTree, hi: PhaseTree, t: f64) -> Self {
        PhaseTree::HardSwitch { lo: Arc::new(lo), hi: Arc::new(hi), t }
    }

    /// Phase value `g(x)`, in radians for smooth trees, integer levels for
    /// integer trees.
    pub fn eval_g(&self, x: f64) -> f64 {
        match self {
            PhaseTree::Const(c) => *c,
            PhaseTree::IntConst(k) => *k as f64,
            PhaseTree::HardSwitch { lo, hi, t } => {
                if x < 1.0 - t {
                    lo.eval_g(x)
                } else {
                    hi.eval_g(x)
                }
            }
            PhaseTree::Blend { lo, hi, t, w } => {
                let a = (x - blend_center(*t, *w)) / w;
                if a <= -1.0 {
                    lo.eval_g(x)
                } else if a >= 1.0 {
                    hi.eval_g(x)
                } else {
                    let tau = default_step().tau(a);
                    (1.0 - tau) * lo.eval_g(x) + tau * hi.eval_g(x)
                }
            }
        }
    }

    fn eval_int(&self, x: f64) -> i64 {
        match self {
            PhaseTree::IntConst(k) => *k,
            PhaseTree::HardSwitch { lo, hi, t } => {
                if x < 1.0 - t {
                    lo.eval_int(x)
                } else {
                    hi.eval_int(x)
                }
            }
            _ => unreachable!("eval_int on a smooth tree"),
        }
    }

    /// The circle point `h(x)`: `e^{i g(x)}` for smooth trees, `(-1)^{g(x)}`
    /// for integer trees.
    pub fn eval_h(&self, x: f64) -> Complex64 {
        match self.kind() {
            TreeKind::Smooth => {
                let (s, c) = self.eval_g(x).sin_cos();
                Complex64::new(c, s)
            }
            TreeKind::Integer => {
                if self.eval_int(x) & 1 == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(-1.0, 0.0)
                }
            }
        }
    }

    /// Shift by `k` steps of the deck action: leaf constants gain `k·π`
    /// (smooth) or `k` (integer). Evaluates to `g + kπ` resp. `g + k`.
    pub fn shift(&self, k: i64) -> PhaseTree {
        match self {
            PhaseTree::Const(c) => PhaseTree::Const(c + k as f64 * std::f64::consts::PI),
            PhaseTree::IntConst(j) => PhaseTree::IntConst(j + k),
            PhaseTree::Blend { lo, hi, t, w } => PhaseTree::Blend {
                lo: Arc::new(lo.shift(k)),
                hi: Arc::new(hi.shift(k)),
                t: *t,
                w: *w,
            },
            PhaseTree::HardSwitch { lo, hi, t } => PhaseTree::HardSwitch {
                lo: Arc::new(lo.shift(k)),
                hi: Arc::new(hi.shift(k)),
                t: *t,
            },
        }
    }

    /// `1 + (g(1) - g(0))`: the W^{1,1} norm of `e^{ig}` for nondecreasing g.
    pub fn w11_norm(&self) -> Result<f64> {
        if self.kind() != TreeKind::Smooth {
            return Err(Error::WrongKind { expected: "smooth" });
        }
        Ok(1.0 + (self.eval_g(1.0) - self.eval_g(0.0)))
    }

    /// All transition windows, sorted by center. Hard switches appear with
    /// `half_width = 0`.
    pub fn transition_windows(&self) -> Vec<TransitionWindow> {
        let mut out = Vec::new();
        self.collect_windows(0, &mut out);
        out.sort_by(|a, b| {
            a.center.partial_cmp(&b.center).unwrap().then(a.depth.cmp(&b.depth))
        });
        out
    }

    fn collect_windows(&self, depth: u32, out: &mut Vec<TransitionWindow>) {
        match self {
            PhaseTree::Const(_) | PhaseTree::IntConst(_) => {}
            PhaseTree::Blend { lo, hi, t, w } => {
                out.push(TransitionWindow { center: blend_center(*t, *w), half_width: *w, depth });
                lo.collect_windows(depth + 1, out);
                hi.collect_windows(depth + 1, out);
            }
            PhaseTree::HardSwitch { lo, hi, t } => {
                out.push(TransitionWindow { center: 1.0 - t, half_width: 0.0, depth });
                lo.collect_windows(depth + 1, out);
                hi.collect_windows(depth + 1, out);
            }
        }
    }

    fn switch_points(&self) -> Vec<f64> {
        match self {
            PhaseTree::IntConst(_) | PhaseTree::Const(_) => Vec::new(),
            PhaseTree::HardSwitch { lo, hi, t } => {
                let mut v = lo.switch_points();
                v.extend(hi.switch_points());
                v.push(1.0 - t);
                v
            }
            PhaseTree::Blend { .. } => Vec::new(),
        }
    }

    /// Number of parity flips of an integer tree across its interior switch
    /// points.
    pub fn sign_changes(&self) -> Result<u32> {
        if self.kind() != TreeKind::Integer {
            return Err(Error::WrongKind { expected: "integer" });
        }
        let mut cuts: Vec<f64> =
            self.switch_points().into_iter().filter(|x| *x > 0.0 && *x < 1.0).collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        cuts.insert(0, 0.0);
        cuts.push(1.0);
        let mut flips = 0;
        let mut prev: Option<i64> = None;
        for pair in cuts.windows(2) {
            let parity = self.eval_int(0.5 * (pair[0] + pair[1])) & 1;
            if let Some(p) = prev {
                if p != parity {
                    flips += 1;
                }
            }
            prev = Some(parity);
        }
        Ok(flips)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("phase tree serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TreeDoc =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        PhaseTree::try_from(doc)
    }
}

/// Pointwise-order certificate: true iff `a(x) <= b(x) + 1e-12` on a 4096
/// point uniform grid plus all window boundaries of both trees.
pub fn leq(a: &PhaseTree, b: &PhaseTree) -> bool {
    first_order_violation(a, b).is_none()
}

fn first_order_violation(a: &PhaseTree, b: &PhaseTree) -> Option<(f64, f64)> {
    let mut xs: Vec<f64> = Vec::with_capacity(ORDER_GRID + 16);
    for i in 0..ORDER_GRID {
        xs.push(i as f64 / (ORDER_GRID - 1) as f64);
    }
    for tree in [a, b] {
        for w in tree.transition_windows() {
            for x in [w.center - w.half_width, w.center + w.half_width] {
                if (0.0..=1.0).contains(&x) {
                    xs.push(x);
                }
            }
        }
    }
    for &x in &xs {
        let (ga, gb) = (a.eval_g(x), b.eval_g(x));
        if ga > gb + ORDER_TOL {
            return Some((x, ga - gb));
        }
    }
    None
}

// ---- serialization ----

#[derive(Serialize, Deserialize, Clone)]
enum TreeDoc {
    #[serde(rename = "const")]
    Const(f64),
    #[serde(rename = "int")]
    Int(i64),
    #[serde(rename = "blend")]
    Blend { lo: Box<TreeDoc>, hi: Box<TreeDoc>, t: f64, w: f64 },
    #[serde(rename = "switch")]
    Switch { lo: Box<TreeDoc>, hi: Box<TreeDoc>, t: f64 },
}

impl TryFrom<TreeDoc> for PhaseTree {
    type Error = Error;

    // Structural validation only: parameter ranges and kind consistency.
    // Deserialized trees are untrusted input; verification recomputes their
    // residuals rather than assuming the order invariant.
    fn try_from(doc: TreeDoc) -> Result<Self> {
        match doc {
            TreeDoc::Const(c) => {
                if !c.is_finite() {
                    return Err(Error::NonFinite);
                }
                Ok(PhaseTree::Const(c))
            }
            TreeDoc::Int(k) => Ok(PhaseTree::IntConst(k)),
            TreeDoc::Blend { lo, hi, t, w } => {
                let lo = PhaseTree::try_from(*lo)?;
                let hi = PhaseTree::try_from(*hi)?;
                if lo.kind() != TreeKind::Smooth || hi.kind() != TreeKind::Smooth {
                    return Err(Error::MixedKind);
                }
                if !(t.is_finite() && (0.0..=1.0).contains(&t)) {
                    return Err(Error::BadBlendParam("t must lie in [0,1]"));
                }
                if !(w.is_finite() && w > 0.0 && w <= 1.0) {
                    return Err(Error::BadBlendParam("w must lie in (0,1]"));
                }
                Ok(PhaseTree::Blend { lo: Arc::new(lo), hi: Arc::new(hi), t, w })
            }
            TreeDoc::Switch { lo, hi, t } => {
                let lo = PhaseTree::try_from(*lo)?;
                let hi = PhaseTree::try_from(*hi)?;
                if lo.kind() != TreeKind::Integer || hi.kind() != TreeKind::Integer {
                    return Err(Error::MixedKind);
                }
                if !(t.is_finite() && (0.0..=1.0).contains(&t)) {
                    return Err(Error::BadBlendParam("t must lie in [0,1]"));
                }
                Ok(PhaseTree::HardSwitch { lo: Arc::new(lo), hi: Arc::new(hi), t })
            }
        }
    }
}

impl From<PhaseTree> for TreeDoc {
    fn from(tree: PhaseTree) -> Self {
        match tree {
            PhaseTree::Const(c) => TreeDoc::Const(c),
            PhaseTree::IntConst(k) => TreeDoc::Int(k),
            PhaseTree::Blend { lo, hi, t, w } => TreeDoc::Blend {
                lo: Box::new(TreeDoc::from((*lo).clone())),
                hi: Box::new(TreeDoc::from((*hi).clone())),
                t,
                w,
            },
            PhaseTree::HardSwitch { lo, hi, t } => TreeDoc::Switch {
                lo: Box::new(TreeDoc::from((*lo).clone())),
                hi: Box::new(TreeDoc::from((*hi).clone())),
                t,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn simple_blend(t: f64, w: f64) -> PhaseTree {
        PhaseTree::blend(PhaseTree::constant(0.0), PhaseTree::constant(PI), t, w).unwrap()
    }

    #[test]
    fn const_evaluates_everywhere() {
        let g = PhaseTree::constant(0.0);
        for x in [0.0, 0.3, 1.0] {
            assert_eq!(g.eval_g(x), 0.0);
        }
    }

    #[test]
    fn blend_center_value_is_midpoint() {
        // tau(0) = 1/2, so at the window center the blend value is pi/2.
        let b = simple_blend(0.5, 0.25);
        let c = blend_center(0.5, 0.25);
        assert!((c - 0.5).abs() < 1e-15);
        assert!((b.eval_g(c) - PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn blend_endpoint_t0_forces_lo_at_one() {
        // At t = 0 the center is 1 + w, so x = 1 has tau argument exactly -1.
        let b = simple_blend(0.0, 0.25);
        assert_eq!(b.eval_g(1.0), 0.0);
    }

    #[test]
    fn blend_at_path_endpoints_equals_leaves() {
        for &x in &[0.0, 0.1, 0.25, 0.5, 0.77, 1.0] {
            assert_eq!(simple_blend(0.0, 0.3).eval_g(x), 0.0);
            assert_eq!(simple_blend(1.0, 0.3).eval_g(x), PI);
        }
        // Dense check on 10^4 points.
        for k in 0..=10_000 {
            let x = k as f64 / 10_000.0;
            assert_eq!(simple_blend(0.0, 0.25).eval_g(x), 0.0);
            assert_eq!(simple_blend(1.0, 0.25).eval_g(x), PI);
        }
    }

    #[test]
    fn blend_of_equal_trees_is_identity() {
        let g = simple_blend(0.3, 0.2);
        let b = PhaseTree::blend(g.clone(), g.clone(), 0.7, 0.4).unwrap();
        for k in 0..=1000 {
            let x = k as f64 / 1000.0;
            assert!((b.eval_g(x) - g.eval_g(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn eval_h_examples() {
        assert!((PhaseTree::constant(PI).eval_h(0.3) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(PhaseTree::int_constant(2).eval_h(0.5), Complex64::new(1.0, 0.0));
        assert!(
            (PhaseTree::constant(PI / 2.0).eval_h(0.9) - Complex64::new(0.0, 1.0)).norm() < 1e-15
        );
    }

    #[test]
    fn blend_rejects_order_violation() {
        let r = PhaseTree::blend(PhaseTree::constant(PI), PhaseTree::constant(0.0), 0.5, 0.5);
        assert!(matches!(r, Err(Error::OrderViolation { .. })));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(PhaseTree::constant(0.0).shift(1), PhaseTree::Const(PI));
        assert_eq!(PhaseTree::int_constant(0).shift(3), PhaseTree::IntConst(3));
        let b = simple_blend(0.3, 0.2);
        let s = b.shift(1);
        for k in 0..=1000 {
            let x = k as f64 / 1000.0;
            assert!((s.eval_g(x) - (b.eval_g(x) + PI)).abs() < 1e-12);
        }
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&PhaseTree::constant(0.0), &PhaseTree::constant(PI)));
        assert!(!leq(&PhaseTree::constant(PI), &PhaseTree::constant(0.0)));
        let g = simple_blend(0.4, 0.3);
        let b = PhaseTree::blend(g.clone(), g.shift(1), 0.3, 0.2).unwrap();
        assert!(leq(&g, &b));
        assert!(leq(&b, &g.shift(1)));
    }

    #[test]
    fn w11_examples() {
        assert_eq!(PhaseTree::constant(2.5).w11_norm().unwrap(), 1.0);
        assert!((simple_blend(0.5, 0.1).w11_norm().unwrap() - (1.0 + PI)).abs() < 1e-13);
        let two_turns = PhaseTree::blend(
            PhaseTree::constant(0.0),
            PhaseTree::constant(2.0 * PI),
            0.5,
            0.2,
        )
        .unwrap();
        assert!((two_turns.w11_norm().unwrap() - (1.0 + 2.0 * PI)).abs() < 1e-13);
        assert!(PhaseTree::int_constant(1).w11_norm().is_err());
    }

    #[test]
    fn windows_examples() {
        assert!(PhaseTree::constant(1.0).transition_windows().is_empty());
        let b = simple_blend(0.5, 0.25);
        let ws = b.transition_windows();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].half_width, 0.25);
        assert!((ws[0].center - 0.5).abs() < 1e-15);

        let nested =
            PhaseTree::blend(simple_blend(0.3, 0.1), simple_blend(0.3, 0.1).shift(2), 0.6, 0.2)
                .unwrap();
        assert!(nested.transition_windows().len() <= 3);
        assert_eq!(nested.transition_windows().len(), 3);
    }

    #[test]
    fn sign_change_examples() {
        assert_eq!(PhaseTree::int_constant(5).sign_changes().unwrap(), 0);
        let sw = PhaseTree::hard_switch(PhaseTree::int_constant(0), PhaseTree::int_constant(1), 0.5)
            .unwrap();
        assert_eq!(sw.sign_changes().unwrap(), 1);
        let even =
            PhaseTree::hard_switch(PhaseTree::int_constant(0), PhaseTree::int_constant(2), 0.5)
                .unwrap();
        assert_eq!(even.sign_changes().unwrap(), 0);
        assert!(PhaseTree::constant(0.0).sign_changes().is_err());
    }

    #[test]
    fn monotone_on_random_trees() {
        let mut state = 0xabcdef12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..50 {
            let lo = PhaseTree::blend(
                PhaseTree::constant(next()),
                PhaseTree::constant(1.0 + next()),
                next(),
                0.05 + 0.9 * next(),
            )
            .unwrap();
            let hi = lo.shift(1 + (next() * 2.0) as i64);
            let tree = PhaseTree::blend(lo.clone(), hi.clone(), next(), 0.05 + 0.9 * next()).unwrap();
            for _ in 0..200 {
                let (a, b) = (next(), next());
                let (x1, x2) = if a < b { (a, b) } else { (b, a) };
                assert!(tree.eval_g(x1) <= tree.eval_g(x2) + 1e-12);
            }
            // sandwich
            for _ in 0..100 {
                let x = next();
                let v = tree.eval_g(x);
                assert!(lo.eval_g(x) - 1e-12 <= v && v <= hi.eval_g(x) + 1e-12);
            }
        }
    }

    #[test]
    fn phi_is_one_lipschitz() {
        // closed form: ||phi(c+d) - phi(c)||_1 = 2 sin(d/2) <= d
        let d = 0.1f64;
        let lhs = (PhaseTree::constant(d).eval_h(0.0) - PhaseTree::constant(0.0).eval_h(0.0)).norm();
        assert!((lhs - 2.0 * (d / 2.0).sin()).abs() < 1e-15);
        assert!(lhs <= d);

        // random tree pairs via a midpoint oracle
        let mut state = 0x5555aaaa1234u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..30 {
            let g1 = PhaseTree::blend(
                PhaseTree::constant(next() * 2.0),
                PhaseTree::constant(2.0 + next() * 2.0),
                next(),
                0.05 + 0.9 * next(),
            )
            .unwrap();
            let g2 = PhaseTree::blend(
                PhaseTree::constant(next() * 2.0),
                PhaseTree::constant(2.0 + next() * 2.0),
                next(),
                0.05 + 0.9 * next(),
            )
            .unwrap();
            let n = 40_000;
            let (mut l1_h, mut l1_g) = (0.0, 0.0);
            for k in 0..n {
                let x = (k as f64 + 0.5) / n as f64;
                l1_h += (g2.eval_h(x) - g1.eval_h(x)).norm();
                l1_g += (g2.eval_g(x) - g1.eval_g(x)).abs();
            }
            assert!(l1_h <= l1_g + 1e-9 * n as f64);
        }
    }

    #[test]
    fn four_w_continuity() {
        let mut state = 0x77777777u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..30 {
            let g0 = PhaseTree::constant(next() * 3.0);
            let g1 = PhaseTree::blend(
                PhaseTree::constant(3.0 + next()),
                PhaseTree::constant(4.0 + next()),
                next(),
                0.05 + 0.9 * next(),
            )
            .unwrap();
            let g = PhaseTree::constant(next() * 6.0);
            let w = 0.02 + 0.5 * next();
            let b = PhaseTree::blend(g0.clone(), g1.clone(), next(), w).unwrap();
            let n = 20_000;
            let (mut db, mut d0, mut d1) = (0.0, 0.0, 0.0);
            for k in 0..n {
                let x = (k as f64 + 0.5) / n as f64;
                let hg = g.eval_h(x);
                db += (b.eval_h(x) - hg).norm();
                d0 += (g0.eval_h(x) - hg).norm();
                d1 += (g1.eval_h(x) - hg).norm();
            }
            let scale = 1.0 / n as f64;
            assert!(db * scale <= d0 * scale + d1 * scale + 4.0 * w + 1e-9);
        }
    }

    #[test]
    fn serde_round_trip_matches_schema() {
        let tree = PhaseTree::blend(
            PhaseTree::constant(0.0),
            PhaseTree::constant(PI),
            0.25,
            0.125,
        )
        .unwrap();
        let text = tree.to_json();
        assert!(text.contains("\"blend\""));
        assert!(text.contains("\"const\""));
        let back = PhaseTree::from_json(&text).unwrap();
        assert_eq!(tree, back);

        let sw = PhaseTree::hard_switch(PhaseTree::int_constant(0), PhaseTree::int_constant(1), 0.5)
            .unwrap();
        let text = sw.to_json();
        assert!(text.contains("\"switch\"") && text.contains("\"int\""));
        assert_eq!(PhaseTree::from_json(&text).unwrap(), sw);
    }

    #[test]
    fn deserialization_rejects_mixed_kinds() {
        let bad = r#"{"blend":{"lo":{"const":0.0},"hi":{"int":1},"t":0.5,"w":0.5}}"#;
        assert!(matches!(PhaseTree::from_json(bad), Err(Error::MixedKind)));
        let bad_w = r#"{"blend":{"lo":{"const":0.0},"hi":{"const":1.0},"t":0.5,"w":0.0}}"#;
        assert!(matches!(PhaseTree::from_json(bad_w), Err(Error::BadBlendParam(_))));
    }
}
