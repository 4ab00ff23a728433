//! The inductive equivariant construction `alpha_k : S^k -> PhaseTree` and
//! `beta = phi ∘ alpha`.
//!
//! A positive point of `S^k` drops its last coordinate into `B^k`, where the
//! extension blends the values of `alpha_{k-1}` at the two hemisphere
//! projections with width `w = min(d(x,E), t, 1-t, cap)`; a negative point
//! evaluates at its antipode and shifts by one deck step. The three modes
//! share this recursion and differ in the base case and the blend flavor:
//!
//! * standard — `S^0 -> {0, π}` constants, smooth blends, no width cap;
//! * hobby-rice — integer levels `{0, 1}` and hard switches;
//! * improved — `S^1 -> c_θ` constants and a width cap derived from the
//!   target measure budget.
//!
//! `alpha` itself is discontinuous across equators; `beta` stays continuous,
//! which the tests check empirically rather than assume.

use num_complex::Complex64;

use crate::phase::PhaseTree;
use crate::sphere::{self, BallPoint, HemiOutcome, SpherePoint, WidthOutcome};
use crate::{Error, Result};

/// Construction flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Standard,
    HobbyRice,
    Improved,
}

/// Mode plus the blend width cap (the improved mode's measure control).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionConfig {
    pub mode: Mode,
    pub width_cap: f64,
}

impl ConstructionConfig {
    pub fn standard() -> Self {
        ConstructionConfig { mode: Mode::Standard, width_cap: 1.0 }
    }

    pub fn hobby_rice() -> Self {
        ConstructionConfig { mode: Mode::HobbyRice, width_cap: 1.0 }
    }

    /// Improved mode requires a strict cap in `(0, 1)`.
    pub fn improved(width_cap: f64) -> Result<Self> {
        if !(width_cap > 0.0 && width_cap < 1.0) {
            return Err(Error::BadBlendParam("improved width cap must lie in (0,1)"));
        }
        Ok(ConstructionConfig { mode: Mode::Improved, width_cap })
    }
}

/// The odd family `x -> beta(x) = e^{i alpha(x)}` over spheres of dimension
/// up to `dimension`. Immutable; evaluation is pure.
#[derive(Debug, Clone)]
pub struct EquivariantMap {
    dimension: usize,
    config: ConstructionConfig,
}

impl EquivariantMap {
    pub fn new(dimension: usize, config: ConstructionConfig) -> Result<Self> {
        if config.mode == Mode::Improved && dimension < 2 {
            return Err(Error::BadDimension(
                "improved mode needs sphere dimension at least 2".into(),
            ));
        }
        if !(config.width_cap > 0.0 && config.width_cap <= 1.0) {
            return Err(Error::BadBlendParam("width cap must lie in (0,1]"));
        }
        Ok(EquivariantMap { dimension, config })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn config(&self) -> ConstructionConfig {
        self.config
    }

    /// The phase tree at a sphere point of dimension `k <= self.dimension`.
    pub fn alpha(&self, x: &SpherePoint) -> Result<PhaseTree> {
        if x.dim() > self.dimension {
            return Err(Error::DimensionMismatch(format!(
                "point dimension {} exceeds map dimension {}",
                x.dim(),
                self.dimension
            )));
        }
        self.alpha_rec(x.coords())
    }

    fn alpha_rec(&self, coords: &[f64]) -> Result<PhaseTree> {
        let k = coords.len() - 1;
        if k == 0 {
            if self.config.mode == Mode::Improved {
                return Err(Error::BadDimension("improved mode has no S^0 base".into()));
            }
            let positive = slice_positive(coords)?;
            return Ok(match (self.config.mode, positive) {
                (Mode::HobbyRice, true) => PhaseTree::int_constant(0),
                (Mode::HobbyRice, false) => PhaseTree::int_constant(1),
                (_, true) => PhaseTree::constant(0.0),
                (_, false) => PhaseTree::constant(std::f64::consts::PI),
            });
        }
        if k == 1 && self.config.mode == Mode::Improved {
            let mut theta = coords[1].atan2(coords[0]);
            if theta < 0.0 {
                theta += 2.0 * std::f64::consts::PI;
            }
            return Ok(PhaseTree::constant(theta));
        }
        if slice_positive(coords)? {
            self.alpha_ball_rec(&coords[..k])
        } else {
            let negated: Vec<f64> = coords[..k].iter().map(|c| -c + 0.0).collect();
            Ok(self.alpha_ball_rec(&negated)?.shift(1))
        }
    }

    /// The hemisphere extension over the ball (the tilde map).
    pub fn alpha_on_ball(&self, z: &BallPoint) -> Result<PhaseTree> {
        if z.coords().len() > self.dimension {
            return Err(Error::DimensionMismatch(format!(
                "ball dimension {} exceeds map dimension {}",
                z.coords().len(),
                self.dimension
            )));
        }
        self.alpha_ball_rec(z.coords())
    }

    fn alpha_ball_rec(&self, z: &[f64]) -> Result<PhaseTree> {
        match sphere::hemi_params_slice(z) {
            HemiOutcome::Equator(p) => self.alpha_rec(p.coords()),
            HemiOutcome::Params(p) => {
                match sphere::blend_width(&p, self.config.width_cap) {
                    WidthOutcome::AtUpper => self.alpha_rec(p.upper.coords()),
                    WidthOutcome::AtLower => self.alpha_rec(p.lower.coords()),
                    WidthOutcome::Width(w) => {
                        let lo = self.alpha_rec(p.upper.coords())?;
                        let hi = self.alpha_rec(p.lower.coords())?;
                        // lo ⪯ hi is the mirror-order invariant of the
                        // construction; re-certifying on every evaluation
                        // would dominate the zero search, so the internal
                        // constructors assert it only in debug builds.
                        Ok(match self.config.mode {
                            Mode::HobbyRice => PhaseTree::hard_switch_unchecked(lo, hi, p.t),
                            _ => PhaseTree::blend_unchecked(lo, hi, p.t, w),
                        })
                    }
                }
            }
        }
    }

    /// Sample `beta(x) = e^{i g}` at the given points of `[0, 1]`.
    pub fn beta_eval(&self, x: &SpherePoint, samples: &[f64]) -> Result<Vec<Complex64>> {
        let tree = self.alpha(x)?;
        Ok(samples.iter().map(|&s| tree.eval_h(s)).collect())
    }

    /// Exact `(g(0), g(1))`; the range endpoints since `g` is nondecreasing.
    pub fn range_bound(&self, x: &SpherePoint) -> Result<(f64, f64)> {
        let tree = self.alpha(x)?;
        Ok((tree.eval_g(0.0), tree.eval_g(1.0)))
    }
}

fn slice_positive(coords: &[f64]) -> Result<bool> {
    for &v in coords.iter().rev() {
        if v.abs() > sphere::POSITIVITY_TOL {
            return Ok(v > 0.0);
        }
    }
    Err(Error::DegeneratePoint)
}

/// Classical step-function parameterization used as an independent oracle:
/// cell `j` has width `x_j^2` and sign `sgn(x_j)`; zero-width cells are
/// dropped. At most `n` sign changes for `x` in `S^n`.
pub fn pinkus_partition(x: &SpherePoint) -> PhaseTree {
    let cells: Vec<(f64, bool)> = x
        .coords()
        .iter()
        .filter(|c| **c != 0.0)
        .map(|c| (c * c, *c > 0.0))
        .collect();
    let mut parity: i64 = if cells[0].1 { 0 } else { 1 };
    let mut tree = PhaseTree::int_constant(parity);
    let mut cum = cells[0].0;
    for &(width, positive) in &cells[1..] {
        if positive != (parity % 2 == 0) {
            parity += 1;
            tree = PhaseTree::hard_switch_unchecked(tree, PhaseTree::int_constant(parity), 1.0 - cum);
        }
        cum += width;
    }
    tree
}
