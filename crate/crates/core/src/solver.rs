//! The four solve modes, bound enforcement, and verified reports.

use std::f64::consts::PI;
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::construct::{ConstructionConfig, EquivariantMap};
use crate::funcspace::Problem;
use crate::phase::{PhaseTree, TreeKind};
use crate::quadrature::{self, FunctionalSpec, QuadConfig, SpecMode};
use crate::sphere::SpherePoint;
use crate::zerofind::{self, OddMap, ZeroFindConfig};
use crate::{Error, Result};

/// Parameters shared by every solve mode.
#[derive(Debug, Clone)]
pub struct SolveConfig {
    /// Residual acceptance; `None` uses the scale-aware default
    /// `1e-8 * (1 + sum_j ||f_j||_1)`.
    pub abs_tol: Option<f64>,
    pub seed: u64,
    pub max_refine_level: u32,
    pub local_budget: u64,
    pub quad: QuadConfig,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            abs_tol: None,
            seed: 0,
            max_refine_level: 8,
            local_budget: 20_000,
            quad: QuadConfig::default(),
        }
    }
}

impl SolveConfig {
    fn zero_find(&self, abs_tol: f64) -> ZeroFindConfig {
        ZeroFindConfig {
            abs_tol,
            max_refine_level: self.max_refine_level,
            local_budget: self.local_budget,
            seed: self.seed,
        }
    }
}

/// Which solver produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMode {
    Complex,
    RealPart,
    HobbyRice,
    Improved,
    Generic,
}

/// Solver-side metadata carried in the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub abs_tol: f64,
    pub seed: u64,
    pub max_refine_level: u32,
    pub local_budget: u64,
    pub quad_rel_tol: f64,
    /// Width-cap rounds used by the improved mode.
    pub delta_rounds: Option<u32>,
    /// All integrals vanished and a constant function was returned directly.
    pub constant_shortcut: bool,
}

/// Outcome of a solve. For integer-kind (hobby-rice) trees `w11` is the
/// smoothed-limit reading `1 + π * sign_changes`, consistent with the
/// `1 + πn` bound; smooth trees carry the exact `1 + (g(1) - g(0))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: u64,
    pub mode: SolveMode,
    pub converged: bool,
    /// Zero-finder point (positive representative); absent for the
    /// constant-shortcut path, which involves no sphere search.
    pub sphere_point: Option<Vec<f64>>,
    pub phase_tree: PhaseTree,
    pub residuals: Vec<f64>,
    pub residual_norm: f64,
    pub w11: f64,
    pub bound: f64,
    pub bound_satisfied: bool,
    pub sign_changes: Option<u32>,
    pub evaluations: u64,
    pub wall_time_ms: u64,
    pub diagnostics: Diagnostics,
}

impl SolveReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }
}

fn vec_norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn default_abs_tol(scale: f64) -> f64 {
    1e-8 * (1.0 + scale)
}

/// Constant-shortcut detection: every linear integral vanishes relative to
/// its L1 mass.
fn all_integrals_vanish(problem: &Problem) -> bool {
    problem.functions().iter().all(|f| {
        f.integral_over(0.0, 1.0).norm() <= 1e-12 * f.l1_norm()
    })
}

fn report_w11(tree: &PhaseTree) -> Result<(f64, Option<u32>)> {
    match tree.kind() {
        TreeKind::Smooth => Ok((tree.w11_norm()?, None)),
        TreeKind::Integer => {
            let sc = tree.sign_changes()?;
            Ok((1.0 + PI * sc as f64, Some(sc)))
        }
    }
}

struct SearchOutcome {
    tree: PhaseTree,
    point: Vec<f64>,
    residuals: Vec<f64>,
    residual_norm: f64,
    evaluations: u64,
    converged: bool,
}

struct MapEval<'a> {
    map: EquivariantMap,
    psi: &'a (dyn Fn(&PhaseTree) -> Result<Vec<f64>> + Sync),
    m: usize,
    stored: Mutex<Option<Error>>,
}

impl<'a> MapEval<'a> {
    fn new(construction: ConstructionConfig, m: usize, psi: &'a (dyn Fn(&PhaseTree) -> Result<Vec<f64>> + Sync)) -> Result<Self> {
        Ok(MapEval { map: EquivariantMap::new(m, construction)?, psi, m, stored: Mutex::new(None) })
    }

    fn eval(&self, x: &SpherePoint) -> Vec<f64> {
        match self.map.alpha(x).and_then(|tree| (self.psi)(&tree)) {
            Ok(v) => v,
            Err(e) => {
                let mut slot = self.stored.lock().unwrap();
                if slot.is_none() {
                    *slot = Some(e);
                }
                vec![f64::NAN; self.m]
            }
        }
    }

    fn take_error(&self) -> Option<Error> {
        self.stored.lock().unwrap().take()
    }
}

/// Run the zero search for `psi ∘ beta` over `S^m`.
fn search(
    construction: ConstructionConfig,
    m: usize,
    psi: &(dyn Fn(&PhaseTree) -> Result<Vec<f64>> + Sync),
    cfg: &SolveConfig,
    abs_tol: f64,
) -> Result<SearchOutcome> {
    let target = MapEval::new(construction, m, psi)?;
    let eval = |x: &SpherePoint| target.eval(x);
    let odd = OddMap::new(m, &eval);
    let zr = zerofind::find_zero(&odd, &cfg.zero_find(abs_tol))?;
    if zr.residual.iter().any(|v| v.is_nan()) {
        // the returned point itself failed to evaluate; surface the cause
        return Err(target
            .take_error()
            .unwrap_or(Error::Accuracy { best: zr.residual.clone(), err: f64::NAN }));
    }
    let tree = target.map.alpha(&zr.point)?;
    Ok(SearchOutcome {
        tree,
        point: zr.point.coords().to_vec(),
        residuals: zr.residual,
        residual_norm: zr.residual_norm,
        evaluations: zr.evaluations,
        converged: zr.converged,
    })
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    mode: SolveMode,
    outcome: SearchOutcome,
    bound: f64,
    abs_tol: f64,
    cfg: &SolveConfig,
    delta_rounds: Option<u32>,
    started: Instant,
) -> Result<SolveReport> {
    let (w11, sign_changes) = report_w11(&outcome.tree)?;
    Ok(SolveReport {
        schema: 1,
        mode,
        converged: outcome.converged,
        sphere_point: Some(outcome.point),
        phase_tree: outcome.tree,
        residuals: outcome.residuals,
        residual_norm: outcome.residual_norm,
        w11,
        bound,
        bound_satisfied: w11 <= bound + 1e-9,
        sign_changes,
        evaluations: outcome.evaluations,
        wall_time_ms: started.elapsed().as_millis() as u64,
        diagnostics: Diagnostics {
            abs_tol,
            seed: cfg.seed,
            max_refine_level: cfg.max_refine_level,
            local_budget: cfg.local_budget,
            quad_rel_tol: cfg.quad.rel_tol,
            delta_rounds,
            constant_shortcut: false,
        },
    })
}

fn shortcut_report(
    mode: SolveMode,
    tree: PhaseTree,
    spec: &FunctionalSpec,
    bound: f64,
    abs_tol: f64,
    cfg: &SolveConfig,
    started: Instant,
) -> Result<SolveReport> {
    let residuals = quadrature::psi_eval(spec, &tree, &cfg.quad)?;
    let residual_norm = vec_norm(&residuals);
    let (w11, sign_changes) = report_w11(&tree)?;
    Ok(SolveReport {
        schema: 1,
        mode,
        converged: residual_norm <= abs_tol,
        sphere_point: None,
        phase_tree: tree,
        residuals,
        residual_norm,
        w11,
        bound,
        bound_satisfied: w11 <= bound + 1e-9,
        sign_changes,
        evaluations: 0,
        wall_time_ms: started.elapsed().as_millis() as u64,
        diagnostics: Diagnostics {
            abs_tol,
            seed: cfg.seed,
            max_refine_level: cfg.max_refine_level,
            local_budget: cfg.local_budget,
            quad_rel_tol: cfg.quad.rel_tol,
            delta_rounds: None,
            constant_shortcut: true,
        },
    })
}

/// Annihilate n complex integrands with `W^{1,1} <= 1 + 2πn`.
pub fn solve_complex(problem: &Problem, cfg: &SolveConfig) -> Result<SolveReport> {
    let started = Instant::now();
    let n = problem.functions().len();
    let spec = FunctionalSpec::new(problem.functions().to_vec(), SpecMode::Complex, vec![])?;
    let bound = 1.0 + 2.0 * PI * n as f64;
    let abs_tol = cfg.abs_tol.unwrap_or_else(|| default_abs_tol(spec.scale()));
    if all_integrals_vanish(problem) {
        return shortcut_report(
            SolveMode::Complex,
            PhaseTree::constant(0.0),
            &spec,
            bound,
            abs_tol,
            cfg,
            started,
        );
    }
    let psi = |tree: &PhaseTree| quadrature::psi_eval(&spec, tree, &cfg.quad);
    let outcome = search(ConstructionConfig::standard(), 2 * n, &psi, cfg, abs_tol)?;
    assemble(SolveMode::Complex, outcome, bound, abs_tol, cfg, None, started)
}

/// Annihilate an odd functional described by a spec, `W^{1,1} <= 1 + πm`.
pub fn solve_generic(spec: &FunctionalSpec, cfg: &SolveConfig) -> Result<SolveReport> {
    let started = Instant::now();
    let m = spec.output_dim();
    let mode = if spec.odd_terms().is_empty() && spec.mode() == SpecMode::RealPart {
        SolveMode::RealPart
    } else {
        SolveMode::Generic
    };
    let bound = 1.0 + PI * m as f64;
    let abs_tol = cfg.abs_tol.unwrap_or_else(|| default_abs_tol(spec.scale()));
    let psi = |tree: &PhaseTree| quadrature::psi_eval(spec, tree, &cfg.quad);
    let outcome = search(ConstructionConfig::standard(), m, &psi, cfg, abs_tol)?;
    assemble(mode, outcome, bound, abs_tol, cfg, None, started)
}

/// Annihilate a caller-supplied odd functional (the oddness and the
/// L1-continuity are the caller's contract; oddness is sanity-sampled).
pub fn solve_generic_map(
    psi: &(dyn Fn(&PhaseTree) -> Result<Vec<f64>> + Sync),
    m: usize,
    scale: f64,
    cfg: &SolveConfig,
) -> Result<SolveReport> {
    let started = Instant::now();
    let bound = 1.0 + PI * m as f64;
    let abs_tol = cfg.abs_tol.unwrap_or_else(|| default_abs_tol(scale));
    let outcome = search(ConstructionConfig::standard(), m, psi, cfg, abs_tol)?;
    assemble(SolveMode::Generic, outcome, bound, abs_tol, cfg, None, started)
}

/// ±1-valued annihilator with at most n sign changes.
pub fn solve_hobby_rice(problem: &Problem, cfg: &SolveConfig) -> Result<SolveReport> {
    let started = Instant::now();
    if !problem.real_valued() {
        return Err(Error::NotRealProblem);
    }
    let n = problem.functions().len();
    let spec = FunctionalSpec::new(problem.functions().to_vec(), SpecMode::RealPart, vec![])?;
    let bound = 1.0 + PI * n as f64;
    let abs_tol = cfg.abs_tol.unwrap_or_else(|| default_abs_tol(spec.scale()));
    if all_integrals_vanish(problem) {
        return shortcut_report(
            SolveMode::HobbyRice,
            PhaseTree::int_constant(0),
            &spec,
            bound,
            abs_tol,
            cfg,
            started,
        );
    }
    let psi = |tree: &PhaseTree| quadrature::psi_eval(&spec, tree, &cfg.quad);
    let outcome = search(ConstructionConfig::hobby_rice(), n, &psi, cfg, abs_tol)?;
    assemble(SolveMode::HobbyRice, outcome, bound, abs_tol, cfg, None, started)
}

/// Real-valued inputs with the sharper bound `1 + π(2n-1) + ε`.
///
/// The width cap starts at the measure budget `δ/(2 L Σ||f||_∞)` with
/// `δ = (ε/2) max_j|∫f_j| / 4` and is halved until the achieved range fits
/// the bound (at most 10 rounds).
pub fn solve_improved_real(problem: &Problem, epsilon: f64, cfg: &SolveConfig) -> Result<SolveReport> {
    let started = Instant::now();
    if !problem.real_valued() {
        return Err(Error::NotRealProblem);
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::BadEpsilon);
    }
    let n = problem.functions().len();
    let spec = FunctionalSpec::new(problem.functions().to_vec(), SpecMode::Complex, vec![])?;
    let bound = 1.0 + PI * (2.0 * n as f64 - 1.0) + epsilon;
    let abs_tol = cfg.abs_tol.unwrap_or_else(|| default_abs_tol(spec.scale()));
    if all_integrals_vanish(problem) {
        return shortcut_report(
            SolveMode::Improved,
            PhaseTree::constant(0.0),
            &spec,
            bound,
            abs_tol,
            cfg,
            started,
        );
    }

    let eps_half = epsilon / 2.0;
    let max_integral = problem
        .functions()
        .iter()
        .map(|f| f.integral_over(0.0, 1.0).norm())
        .fold(0.0, f64::max);
    let sup_sum: f64 = problem.functions().iter().map(|f| f.sup_norm()).sum();
    let levels = (2 * n - 1) as f64;
    let delta0 = eps_half * max_integral / 4.0;

    let psi = |tree: &PhaseTree| quadrature::psi_eval(&spec, tree, &cfg.quad);
    let mut last: Option<SolveReport> = None;
    for round in 0..10u32 {
        let delta = delta0 / f64::powi(2.0, round as i32);
        let cap = (delta / (2.0 * levels * sup_sum)).min(0.9);
        let construction = ConstructionConfig::improved(cap)?;
        let round_cfg = SolveConfig { seed: cfg.seed.wrapping_add(round as u64), ..cfg.clone() };
        let outcome = search(construction, 2 * n, &psi, &round_cfg, abs_tol)?;
        let report = assemble(
            SolveMode::Improved,
            outcome,
            bound,
            abs_tol,
            cfg,
            Some(round + 1),
            started,
        )?;
        if !report.converged {
            return Ok(report);
        }
        if report.bound_satisfied {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("at least one round ran"))
}

/// Independent re-evaluation of a tree against a spec with a 10x tighter
/// quadrature tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRecord {
    pub residuals: Vec<f64>,
    pub residual_norm: f64,
    pub w11: f64,
    pub sign_changes: Option<u32>,
}

pub fn verify(tree: &PhaseTree, spec: &FunctionalSpec, cfg: &SolveConfig) -> Result<VerifyRecord> {
    let quad = cfg.quad.tightened();
    let residuals = quadrature::psi_eval(spec, tree, &quad)?;
    let residual_norm = vec_norm(&residuals);
    let (w11, sign_changes) = report_w11(tree)?;
    Ok(VerifyRecord { residuals, residual_norm, w11, sign_changes })
}
