//! Approximate zeros of continuous odd maps `F : S^m -> R^m`.
//!
//! Existence is guaranteed for odd continuous maps; no algorithm comes with
//! that guarantee, so the search is best-effort and reports non-convergence
//! honestly. It combines two stages:
//!
//! 1. a combinatorial pass over an antipodally symmetric triangulation,
//!    labeling each vertex by the dominant component of `F` with its sign;
//!    simplices carrying a complementary label pair localize candidate zeros;
//! 2. a derivative-free tangent-space compass search from each candidate
//!    barycenter, shrinking the step on failure. Gradients are never used:
//!    the maps fed to this module are continuous but only piecewise smooth.
//!
//! Everything is deterministic given the seed.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sphere::{self, SpherePoint, SymmetricTriangulation};
use crate::{Error, Result};

/// Search parameters.
#[derive(Debug, Clone)]
pub struct ZeroFindConfig {
    /// Residual norm below which a point counts as a zero.
    pub abs_tol: f64,
    /// Deepest triangulation refinement level to try.
    pub max_refine_level: u32,
    /// Evaluation budget per local refinement.
    pub local_budget: u64,
    pub seed: u64,
}

impl Default for ZeroFindConfig {
    fn default() -> Self {
        ZeroFindConfig { abs_tol: 1e-8, max_refine_level: 8, local_budget: 20_000, seed: 0 }
    }
}

/// Outcome of a search. `converged` implies `residual_norm <= abs_tol`, with
/// the residual re-evaluated once at the returned (positive) point.
#[derive(Debug, Clone)]
pub struct ZeroResult {
    pub point: SpherePoint,
    pub residual: Vec<f64>,
    pub residual_norm: f64,
    pub evaluations: u64,
    pub converged: bool,
}

/// A promised-odd continuous map from `S^m` to `R^m`. Oddness is a caller
/// contract; [`find_zero`] sanity-samples it before searching.
pub struct OddMap<'a> {
    dim: usize,
    eval: &'a (dyn Fn(&SpherePoint) -> Vec<f64> + Sync + 'a),
}

impl<'a> OddMap<'a> {
    pub fn new(dim: usize, eval: &'a (dyn Fn(&SpherePoint) -> Vec<f64> + Sync + 'a)) -> Self {
        OddMap { dim, eval }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval_at(&self, x: &SpherePoint) -> Vec<f64> {
        (self.eval)(x)
    }
}

fn vec_norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn coord_bits(p: &SpherePoint) -> Vec<u64> {
    p.coords().iter().map(|c| c.to_bits()).collect()
}

pub(crate) fn random_unit(rng: &mut ChaCha8Rng, len: usize) -> SpherePoint {
    loop {
        let v: Vec<f64> = (0..len)
            .map(|_| {
                let u1: f64 = rng.gen::<f64>().max(1e-12);
                let u2: f64 = rng.gen();
                (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            })
            .collect();
        if let Ok(p) = SpherePoint::from_unnormalized(v) {
            return p;
        }
    }
}

/// Dominant-component label, `±(i+1)` with lowest-index tie-breaking.
fn label(f: &[f64]) -> i32 {
    let mut idx = 0;
    let mut mag = f[0].abs();
    for (i, v) in f.iter().enumerate().skip(1) {
        if v.abs() > mag {
            mag = v.abs();
            idx = i;
        }
    }
    let l = (idx + 1) as i32;
    if f[idx] >= 0.0 {
        l
    } else {
        -l
    }
}

/// Barycenters of all simplices whose vertex labels contain a complementary
/// pair `{+i, -i}`, deduplicated (antipodal pairs collapse to the positive
/// representative), in simplex order.
pub fn coarse_candidates(map: &OddMap, tri: &SymmetricTriangulation) -> Vec<SpherePoint> {
    let labels: Vec<i32> = tri.vertices().iter().map(|v| label(&map.eval_at(v))).collect();
    let mut out = Vec::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for s in 0..tri.simplex_count() {
        let ids = tri.simplex(s);
        let mut complementary = false;
        'pairs: for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                if labels[ids[i] as usize] == -labels[ids[j] as usize] {
                    complementary = true;
                    break 'pairs;
                }
            }
        }
        if !complementary {
            continue;
        }
        let bc = match tri.barycenter(s) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let pos = match bc.is_positive() {
            Ok(true) => bc,
            Ok(false) => bc.antipode(),
            Err(_) => continue,
        };
        if seen.insert(coord_bits(&pos)) {
            out.push(pos);
        }
    }
    out
}

/// Orthonormal tangent basis at `x`, built deterministically from the
/// coordinate axes (the axis most aligned with `x` is dropped).
fn tangent_basis(x: &[f64]) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut skip = 0;
    for (i, v) in x.iter().enumerate() {
        if v.abs() > x[skip].abs() {
            skip = i;
        }
    }
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    for j in 0..n {
        if j == skip {
            continue;
        }
        let mut v = vec![0.0; n];
        v[j] = 1.0;
        let dx: f64 = v.iter().zip(x).map(|(a, b)| a * b).sum();
        for (vi, xi) in v.iter_mut().zip(x) {
            *vi -= dx * xi;
        }
        for b in &basis {
            let d: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= d * bi;
            }
        }
        let nv = vec_norm(&v);
        for vi in &mut v {
            *vi /= nv;
        }
        basis.push(v);
    }
    basis
}

fn retract(x: &SpherePoint, dir: &[f64], step: f64) -> SpherePoint {
    let moved: Vec<f64> = x.coords().iter().zip(dir).map(|(a, d)| a + step * d).collect();
    SpherePoint::from_unnormalized(moved).expect("retraction stays away from the origin")
}

/// Solve `(JᵀJ + λ diag(JᵀJ)) s = -Jᵀ f` for the damped model step.
fn damped_step(jac: &[Vec<f64>], f: &[f64], lambda: f64) -> Option<Vec<f64>> {
    let m = jac.len();
    let mut a = vec![vec![0.0; m]; m];
    let mut g = vec![0.0; m];
    for i in 0..m {
        for k in i..m {
            let v: f64 = jac[i].iter().zip(&jac[k]).map(|(p, q)| p * q).sum();
            a[i][k] = v;
            a[k][i] = v;
        }
        g[i] = -jac[i].iter().zip(f).map(|(p, q)| p * q).sum::<f64>();
    }
    let trace: f64 = (0..m).map(|i| a[i][i]).sum();
    let ridge = 1e-14 * trace.max(1e-300) / m as f64;
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = row[i] * (1.0 + lambda) + ridge;
    }
    // Gaussian elimination with partial pivoting
    for col in 0..m {
        let mut piv = col;
        for r in col + 1..m {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        g.swap(col, piv);
        for r in col + 1..m {
            let factor = a[r][col] / a[col][col];
            for c in col..m {
                a[r][c] -= factor * a[col][c];
            }
            g[r] -= factor * g[col];
        }
    }
    let mut s = vec![0.0; m];
    for col in (0..m).rev() {
        let mut v = g[col];
        for c in col + 1..m {
            v -= a[col][c] * s[c];
        }
        s[col] = v / a[col][col];
    }
    if s.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some(s)
}

fn combine(basis: &[Vec<f64>], coeffs: &[f64]) -> Vec<f64> {
    let n = basis[0].len();
    let mut dir = vec![0.0; n];
    for (b, c) in basis.iter().zip(coeffs) {
        for (d, v) in dir.iter_mut().zip(b) {
            *d += c * v;
        }
    }
    dir
}

/// Derivative-free descent of `||F||^2` restricted to the sphere.
///
/// The skeleton is a tangent-space compass/pattern search with shrinking
/// step and renormalization after every move. Each round first tries a
/// damped model step built from a forward-difference Jacobian (no analytic
/// derivatives; accepted only when it strictly reduces the residual), which
/// turns the crawl through curved valleys into a handful of evaluations;
/// the compass sweep remains the fallback wherever the map is kinked.
/// Stops at `abs_tol`, on the budget, or when a stall check sees no real
/// progress over a whole window.
pub fn local_refine(map: &OddMap, start: &SpherePoint, cfg: &ZeroFindConfig) -> ZeroResult {
    let mut evals: u64 = 0;
    let mut x = start.clone();
    let mut fx = map.eval_at(&x);
    evals += 1;
    let mut nx = vec_norm(&fx);
    let mut best = (x.clone(), fx.clone(), nx);
    if nx <= cfg.abs_tol {
        return ZeroResult {
            point: x,
            residual: fx,
            residual_norm: nx,
            evaluations: evals,
            converged: true,
        };
    }

    let m = map.dim;
    let mut step = 0.25f64;
    let mut lambda = 1e-3f64;
    let mut fd = 1e-6f64;
    let mut converged = false;
    let window = (80 * (m + 1)) as u64;
    let mut checkpoint = (evals, nx);
    // last successful move (ambient direction, length): extrapolating it
    // doubles progress along curved or creased valleys
    let mut pattern: Option<(Vec<f64>, f64)> = None;
    let mut fails = 0u32;

    'outer: while evals + (m as u64) + 2 <= cfg.local_budget {
        let mut moved = false;

        if let Some((dir, len)) = pattern.clone() {
            let y = retract(&x, &dir, 2.0 * len);
            let fy = map.eval_at(&y);
            evals += 1;
            let ny = vec_norm(&fy);
            if ny < nx {
                let delta: Vec<f64> =
                    y.coords().iter().zip(x.coords()).map(|(a, b)| a - b).collect();
                let dn = vec_norm(&delta);
                pattern = if dn > 0.0 {
                    Some((delta.iter().map(|v| v / dn).collect(), dn))
                } else {
                    None
                };
                x = y;
                fx = fy;
                nx = ny;
                moved = true;
            } else {
                pattern = None;
            }
        }

        if !moved {
            let basis = tangent_basis(x.coords());

            // one-sided difference Jacobian in the tangent chart; the side
            // alternates on failure so creases get seen from both slopes
            let mut jac: Vec<Vec<f64>> = Vec::with_capacity(m);
            for b in &basis {
                let fy = map.eval_at(&retract(&x, b, fd));
                evals += 1;
                jac.push(fy.iter().zip(&fx).map(|(a, c)| (a - c) / fd).collect());
            }

            for _ in 0..6 {
                if evals >= cfg.local_budget {
                    break;
                }
                let Some(mut s) = damped_step(&jac, &fx, lambda) else { break };
                let snorm = vec_norm(&s);
                if snorm > 0.5 {
                    for v in &mut s {
                        *v *= 0.5 / snorm;
                    }
                }
                let y = retract(&x, &combine(&basis, &s), 1.0);
                let fy = map.eval_at(&y);
                evals += 1;
                let ny = vec_norm(&fy);
                if ny < nx {
                    let delta: Vec<f64> =
                        y.coords().iter().zip(x.coords()).map(|(a, b)| a - b).collect();
                    let dn = vec_norm(&delta);
                    if dn > 0.0 {
                        pattern = Some((delta.iter().map(|v| v / dn).collect(), dn));
                    }
                    x = y;
                    fx = fy;
                    nx = ny;
                    lambda = (lambda * 0.35).max(1e-12);
                    moved = true;
                    break;
                }
                lambda = (lambda * 6.0).min(1e10);
            }

            if !moved {
                // compass sweep at the current pattern step
                let mut trial: Option<(SpherePoint, Vec<f64>, f64)> = None;
                'dirs: for b in &basis {
                    for sgn in [1.0, -1.0] {
                        if evals >= cfg.local_budget {
                            break 'dirs;
                        }
                        let y = retract(&x, b, sgn * step);
                        let fy = map.eval_at(&y);
                        evals += 1;
                        let ny = vec_norm(&fy);
                        if trial.as_ref().map_or(true, |t| ny < t.2) {
                            let steep = ny < 0.5 * nx;
                            trial = Some((y, fy, ny));
                            if steep {
                                break 'dirs;
                            }
                        }
                    }
                }
                match trial {
                    Some((y, fy, ny)) if ny < nx => {
                        let delta: Vec<f64> =
                            y.coords().iter().zip(x.coords()).map(|(a, b)| a - b).collect();
                        let dn = vec_norm(&delta);
                        if dn > 0.0 {
                            pattern = Some((delta.iter().map(|v| v / dn).collect(), dn));
                        }
                        x = y;
                        fx = fy;
                        nx = ny;
                        step = (step * 2.0).min(0.25);
                        moved = true;
                    }
                    _ => {}
                }
            }
        }

        if moved {
            fails = 0;
        } else {
            fails += 1;
            fd = -fd;
            if fails % 2 == 0 {
                step *= 0.5;
                if step < 1e-13 {
                    break 'outer;
                }
            }
        }

        if nx < best.2 {
            best = (x.clone(), fx.clone(), nx);
        }
        if nx <= cfg.abs_tol {
            converged = true;
            break 'outer;
        }
        // stalled well above the tolerance: give the next candidate a chance
        if evals - checkpoint.0 >= window {
            if nx > 1000.0 * cfg.abs_tol && nx > 0.9 * checkpoint.1 {
                break 'outer;
            }
            checkpoint = (evals, nx);
        }
    }

    let (point, residual, residual_norm) = if converged { (x, fx, nx) } else { best };
    ZeroResult {
        point,
        residual,
        residual_norm,
        evaluations: evals,
        converged: converged || residual_norm <= cfg.abs_tol,
    }
}

/// Full search: iterate triangulation levels, refine the labeled candidates
/// in order of their barycenter residual, and return the first converged
/// result mapped to its positive representative with a freshly re-evaluated
/// residual. Deterministic given the seed.
pub fn find_zero(map: &OddMap, cfg: &ZeroFindConfig) -> Result<ZeroResult> {
    if map.dim < 1 {
        return Err(Error::BadDimension("odd map dimension must be at least 1".into()));
    }
    let counter = AtomicU64::new(0);
    let inner = map.eval;
    let counted_eval = |x: &SpherePoint| -> Vec<f64> {
        counter.fetch_add(1, Ordering::Relaxed);
        inner(x)
    };
    let counted = OddMap::new(map.dim, &counted_eval);

    // oddness sanity: the contract is the caller's, but a broken contract
    // would silently invalidate the whole search
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..100 {
        let x = random_unit(&mut rng, map.dim + 1);
        let fp = counted.eval_at(&x);
        let fm = counted.eval_at(&x.antipode());
        let s = fp.iter().zip(&fm).map(|(a, b)| (a + b) * (a + b)).sum::<f64>().sqrt();
        if s > 1e-9 {
            return Err(Error::OddnessViolation(s));
        }
    }

    let finalize = |r: ZeroResult| -> ZeroResult {
        let point = match r.point.is_positive() {
            Ok(true) => r.point,
            Ok(false) => r.point.antipode(),
            Err(_) => r.point,
        };
        let residual = counted.eval_at(&point);
        let residual_norm = vec_norm(&residual);
        ZeroResult {
            point,
            residual,
            residual_norm,
            evaluations: counter.load(Ordering::Relaxed),
            converged: residual_norm <= cfg.abs_tol,
        }
    };

    // A stash of the best distinct stall points feeds the hop stage below.
    let mut stalls: Vec<ZeroResult> = Vec::new();
    let stash = |r: ZeroResult, stalls: &mut Vec<ZeroResult>| {
        const DISTINCT: f64 = 0.02;
        if let Some(near) =
            stalls.iter_mut().find(|s| s.point.geodesic_distance(&r.point) < DISTINCT)
        {
            if r.residual_norm < near.residual_norm {
                *near = r;
            }
        } else {
            stalls.push(r);
        }
        stalls.sort_by(|a, b| a.residual_norm.partial_cmp(&b.residual_norm).unwrap());
        stalls.truncate(8);
    };

    // Local descent can sit down in a nonzero minimum of ||F||. Two seeded
    // escapes cross those barriers: hops around the best stall points (a
    // handful of single-evaluation probes screens each hop before paying for
    // a refinement) interleaved with plain global random starts. Random
    // starts run on a small triage budget first and only promising endpoints
    // earn a full refinement; the whole stage is bounded by a deterministic
    // evaluation budget so results stay reproducible.
    let mut hop_rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e3779b97f4a7c15);
    let triage_cfg =
        ZeroFindConfig { local_budget: (48 * (map.dim + 1)) as u64, ..cfg.clone() };
    let run_hops = |rounds: usize,
                    eval_budget: u64,
                    stalls: &mut Vec<ZeroResult>,
                    rng: &mut ChaCha8Rng|
     -> Option<ZeroResult> {
        if stalls.is_empty() {
            return None;
        }
        let eval_start = counter.load(Ordering::Relaxed);
        let patience = 60 + 30 * map.dim;
        let mut since_improvement = 0usize;
        let mut best_seen = stalls[0].residual_norm;
        for hop in 0..rounds {
            if counter.load(Ordering::Relaxed) - eval_start > eval_budget {
                break;
            }
            let random_round = if map.dim >= 4 { hop % 2 == 1 } else { hop % 3 == 2 };
            let r = if random_round {
                let start = random_unit(rng, map.dim + 1);
                let tri = local_refine(&counted, &start, &triage_cfg);
                if tri.converged {
                    tri
                } else {
                    let escalate = (1.5 * stalls[0].residual_norm).max(1000.0 * cfg.abs_tol);
                    if tri.residual_norm < escalate {
                        local_refine(&counted, &tri.point, cfg)
                    } else {
                        tri
                    }
                }
            } else {
                let cycle = stalls.len();
                let pick = if hop % 4 == 0 { 0 } else { (hop / 2) % cycle };
                let anchor_res = stalls[pick].residual_norm;
                let anchor = stalls[pick].point.clone();
                // log-uniform hop radii between the stall scale and a coarse cap
                let r_min = (2.0 * anchor_res).max(1e-4).min(0.3);
                let r_max = 0.4f64;
                let mut best_probe: Option<(SpherePoint, f64)> = None;
                for _ in 0..2 * (map.dim + 1) {
                    let radius = r_max * (r_min / r_max).powf(rng.gen::<f64>());
                    let dir = random_unit(rng, map.dim + 1);
                    let moved: Vec<f64> = anchor
                        .coords()
                        .iter()
                        .zip(dir.coords())
                        .map(|(a, d)| a + radius * d)
                        .collect();
                    let Ok(p) = SpherePoint::from_unnormalized(moved) else { continue };
                    let nv = vec_norm(&counted.eval_at(&p));
                    if best_probe.as_ref().map_or(true, |(_, n)| nv < *n) {
                        best_probe = Some((p, nv));
                    }
                }
                match best_probe {
                    Some((p, _)) => local_refine(&counted, &p, cfg),
                    None => continue,
                }
            };
            if r.converged {
                return Some(r);
            }
            stash(r, stalls);
            if stalls[0].residual_norm < 0.98 * best_seen {
                best_seen = stalls[0].residual_norm;
                since_improvement = 0;
            } else {
                since_improvement += 1;
                if since_improvement >= patience {
                    break;
                }
            }
        }
        None
    };

    for level in 0..=cfg.max_refine_level {
        let tri = match sphere::triangulate(map.dim, level) {
            Ok(t) => t,
            Err(Error::TriangulationBudget { .. }) => break,
            Err(e) => return Err(e),
        };
        let cands = coarse_candidates(&counted, &tri);
        let mut keyed: Vec<(f64, usize, SpherePoint)> = cands
            .into_iter()
            .enumerate()
            .map(|(i, c)| (vec_norm(&counted.eval_at(&c)), i, c))
            .collect();
        keyed.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        keyed.truncate(32);
        for (_, _, cand) in keyed {
            let r = local_refine(&counted, &cand, cfg);
            if r.converged {
                let fin = finalize(r);
                if fin.converged {
                    return Ok(fin);
                }
                stash(fin, &mut stalls);
            } else {
                stash(r, &mut stalls);
            }
        }
        // a short hop burst often saves the next (much more expensive) level
        let burst_budget = 3_000 * (map.dim as u64 + 1) * (level as u64 + 1);
        if let Some(r) = run_hops(12 * (level as usize + 1), burst_budget, &mut stalls, &mut hop_rng)
        {
            let fin = finalize(r);
            if fin.converged {
                return Ok(fin);
            }
            stash(fin, &mut stalls);
        }
    }

    let final_budget = 18_000 * (map.dim as u64 + 1);
    if let Some(r) = run_hops(2_000, final_budget, &mut stalls, &mut hop_rng) {
        let fin = finalize(r);
        if fin.converged {
            return Ok(fin);
        }
        stash(fin, &mut stalls);
    }

    if stalls.is_empty() {
        // no labeled candidate anywhere: fall back to one refinement from
        // the pole so the caller still gets a best-effort point
        let mut pole = vec![0.0; map.dim + 1];
        pole[map.dim] = 1.0;
        let r = local_refine(&counted, &SpherePoint::new_unchecked(pole), cfg);
        stash(r, &mut stalls);
    }
    Ok(finalize(stalls.swap_remove(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(tol: f64) -> ZeroFindConfig {
        ZeroFindConfig { abs_tol: tol, ..Default::default() }
    }

    #[test]
    fn candidates_localize_first_coordinate_zeros() {
        let f = |x: &SpherePoint| vec![x.coords()[0]];
        let map = OddMap::new(1, &f);
        let tri = sphere::triangulate(1, 0).unwrap();
        let cands = coarse_candidates(&map, &tri);
        assert!(!cands.is_empty());
        // every candidate simplex straddles the x1 = 0 circle
        for c in &cands {
            assert!(c.coords()[0].abs() < 1.0);
        }
    }

    #[test]
    fn no_candidates_without_sign_variation() {
        let f = |x: &SpherePoint| vec![x.coords()[0]];
        let map = OddMap::new(1, &f);
        let tri = sphere::triangulate(1, 2).unwrap();
        let cands = coarse_candidates(&map, &tri);
        // label is the sign of x1; candidates only where it varies
        for c in &cands {
            assert!(c.coords()[0].abs() < 0.5);
        }
    }

    #[test]
    fn refine_converges_on_circle() {
        let f = |x: &SpherePoint| vec![x.coords()[0]];
        let map = OddMap::new(1, &f);
        let start = SpherePoint::new(vec![0.1, 0.99f64.sqrt()]).unwrap();
        let r = local_refine(&map, &start, &cfg(1e-10));
        assert!(r.converged);
        assert!(r.residual_norm <= 1e-10);
        assert!(r.point.coords()[0].abs() <= 1e-10);
    }

    #[test]
    fn refine_returns_immediately_at_zero() {
        let f = |x: &SpherePoint| vec![x.coords()[0]];
        let map = OddMap::new(1, &f);
        let start = SpherePoint::new(vec![0.0, 1.0]).unwrap();
        let r = local_refine(&map, &start, &cfg(1e-10));
        assert!(r.converged);
        assert_eq!(r.evaluations, 1);
    }

    #[test]
    fn refine_on_two_sphere() {
        let f = |x: &SpherePoint| vec![x.coords()[0], x.coords()[1]];
        let map = OddMap::new(2, &f);
        let start = SpherePoint::from_unnormalized(vec![0.3, -0.2, 0.9]).unwrap();
        let r = local_refine(&map, &start, &cfg(1e-10));
        assert!(r.converged);
        assert!(r.residual_norm <= 1e-10);
    }

    #[test]
    fn find_zero_linear() {
        let f = |x: &SpherePoint| vec![x.coords()[0]];
        let map = OddMap::new(1, &f);
        let r = find_zero(&map, &cfg(1e-10)).unwrap();
        assert!(r.converged);
        assert!(r.point.is_positive().unwrap());
        assert!((r.point.coords()[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn find_zero_odd_cubic() {
        let f = |x: &SpherePoint| vec![x.coords()[0].powi(3)];
        let map = OddMap::new(1, &f);
        let r = find_zero(&map, &cfg(1e-10)).unwrap();
        assert!(r.converged);
        assert!(r.point.is_positive().unwrap());
        assert!((r.point.coords()[1] - 1.0).abs() < 1e-3);
    }

    #[test]
    fn reported_residual_is_reevaluated() {
        let f = |x: &SpherePoint| vec![x.coords()[0], x.coords()[1]];
        let map = OddMap::new(2, &f);
        let r = find_zero(&map, &cfg(1e-10)).unwrap();
        let fresh = map.eval_at(&r.point);
        assert_eq!(fresh, r.residual);
        assert!((vec_norm(&fresh) - r.residual_norm).abs() < 1e-18);
    }

    #[test]
    fn deterministic_given_seed() {
        let f = |x: &SpherePoint| {
            vec![x.coords()[0] + 0.2 * x.coords()[1].powi(3), x.coords()[1] - 0.1 * x.coords()[2]]
        };
        let map = OddMap::new(2, &f);
        let c = ZeroFindConfig { abs_tol: 1e-9, seed: 42, ..Default::default() };
        let r1 = find_zero(&map, &c).unwrap();
        let r2 = find_zero(&map, &c).unwrap();
        assert_eq!(r1.point.coords(), r2.point.coords());
        assert_eq!(r1.residual, r2.residual);
        assert_eq!(r1.evaluations, r2.evaluations);
        assert_eq!(r1.converged, r2.converged);
    }

    #[test]
    fn oddness_contract_enforced() {
        let f = |x: &SpherePoint| vec![x.coords()[0] + 0.3];
        let map = OddMap::new(1, &f);
        assert!(matches!(find_zero(&map, &cfg(1e-8)), Err(Error::OddnessViolation(_))));
    }
}
