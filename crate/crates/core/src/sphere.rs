//! Sphere and ball geometry for the inductive construction and the zero
//! finder: the positivity convention, mirror and hemisphere parameters, and
//! antipodally symmetric triangulations of `S^m`.

use std::collections::HashMap;

use crate::{Error, Result};

/// Coordinates below this magnitude are treated as zero by the positivity
/// rule; the definition is exact-arithmetic in principle and needs a floating
/// tolerance here.
pub const POSITIVITY_TOL: f64 = 1e-12;

/// A unit vector in `R^{m+1}` (a point of `S^m`).
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Requires `| ||coords|| - 1 | <= 1e-12`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let n = norm(&coords);
        if !((n - 1.0).abs() <= 1e-12) {
            return Err(Error::NotUnit(n));
        }
        Ok(SpherePoint { coords })
    }

    /// Normalizes a nonzero vector onto the sphere.
    pub fn from_unnormalized(coords: Vec<f64>) -> Result<Self> {
        let n = norm(&coords);
        if !(n > POSITIVITY_TOL) {
            return Err(Error::DegeneratePoint);
        }
        let mut c = coords;
        for v in &mut c {
            *v /= n;
            *v += 0.0; // canonicalize -0.0
        }
        Ok(SpherePoint { coords: c })
    }

    pub(crate) fn new_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!((norm(&coords) - 1.0).abs() <= 1e-9);
        SpherePoint { coords }
    }

    /// Sphere dimension: one less than the coordinate count.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// `-x`, with zero coordinates canonicalized to `+0.0`.
    pub fn antipode(&self) -> SpherePoint {
        SpherePoint { coords: self.coords.iter().map(|v| -v + 0.0).collect() }
    }

    /// Mirror across the plane of the last coordinate axis.
    pub fn mirror(&self) -> SpherePoint {
        let mut c = self.coords.clone();
        let last = c.len() - 1;
        c[last] = -c[last] + 0.0;
        SpherePoint { coords: c }
    }

    /// True iff the last coordinate exceeding `1e-12` in magnitude is
    /// positive. Errors when every coordinate sits below the threshold.
    pub fn is_positive(&self) -> Result<bool> {
        for &v in self.coords.iter().rev() {
            if v.abs() > POSITIVITY_TOL {
                return Ok(v > 0.0);
            }
        }
        Err(Error::DegeneratePoint)
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    /// Geodesic (great-circle) distance.
    pub fn geodesic_distance(&self, other: &SpherePoint) -> f64 {
        self.dot(other).clamp(-1.0, 1.0).acos()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// A point of the closed unit ball `B^{k+1}` in `R^{k+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    coords: Vec<f64>,
}

impl BallPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let n = norm(&coords);
        if n > 1.0 + 1e-12 {
            return Err(Error::OutsideBall(n));
        }
        Ok(BallPoint { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// Hemisphere parameters of a ball point, following the projection that
/// replaces the last coordinate: `u` and `l` share the first k coordinates of
/// `x` and carry `±sqrt(1 - r^2)` in the last slot, `r` being the norm of
/// those k coordinates.
#[derive(Debug, Clone)]
pub struct HemiParams {
    pub upper: SpherePoint,
    pub lower: SpherePoint,
    /// Relative position of `x` between `u` (t = 0) and `l` (t = 1).
    pub t: f64,
    /// Euclidean distance from `x` to the equator `{y : ||y|| = 1, y_last = 0}`.
    pub d_equator: f64,
}

/// Outcome of [`hemi_params`]: the equator case signals the caller to fall
/// back to the lower-dimensional map directly.
#[derive(Debug, Clone)]
pub enum HemiOutcome {
    /// `x` lies on (or within 1e-12 of) the equator; carries the radial
    /// projection of `x` onto the boundary sphere.
    Equator(SpherePoint),
    Params(HemiParams),
}

/// Decompose a ball point into its hemisphere projections and the blend
/// parameters `t` and `d(x, E)`.
pub fn hemi_params(x: &BallPoint) -> HemiOutcome {
    hemi_params_slice(&x.coords)
}

pub(crate) fn hemi_params_slice(coords: &[f64]) -> HemiOutcome {
    let n = coords.len();
    let r2: f64 = coords[..n - 1].iter().map(|c| c * c).sum();
    let r = r2.sqrt();
    if r >= 1.0 - 1e-12 {
        let p = SpherePoint::from_unnormalized(coords.to_vec())
            .expect("equatorial ball point has norm near 1");
        return HemiOutcome::Equator(p);
    }
    let s = (1.0 - r2).sqrt();
    let h = coords[n - 1];
    let t = ((s - h) / (2.0 * s)).clamp(0.0, 1.0);
    let d_equator = ((1.0 - r) * (1.0 - r) + h * h).sqrt();
    let mut up = coords.to_vec();
    up[n - 1] = s;
    let mut down = coords.to_vec();
    down[n - 1] = -s;
    HemiOutcome::Params(HemiParams {
        upper: SpherePoint::new_unchecked(up),
        lower: SpherePoint::new_unchecked(down),
        t,
        d_equator,
    })
}

/// Outcome of the blend-width formula `w = min(d_E, t, 1-t, cap)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WidthOutcome {
    /// `t` is 0 within 1e-12; the caller uses the upper projection directly.
    AtUpper,
    /// `t` is 1 within 1e-12; the caller uses the lower projection directly.
    AtLower,
    Width(f64),
}

/// The paper-side width would vanish at `t ∈ {0, 1}` where the blend is
/// undefined; those cases are reported as boundary signals instead.
pub fn blend_width(params: &HemiParams, cap: f64) -> WidthOutcome {
    debug_assert!(cap > 0.0 && cap <= 1.0);
    if params.t <= 1e-12 {
        return WidthOutcome::AtUpper;
    }
    if params.t >= 1.0 - 1e-12 {
        return WidthOutcome::AtLower;
    }
    WidthOutcome::Width(params.d_equator.min(params.t).min(1.0 - params.t).min(cap))
}

/// Antipodally symmetric triangulation of `S^m`: cross-polytope boundary plus
/// `level` rounds of edge-midpoint refinement with radial projection.
#[derive(Debug, Clone)]
pub struct SymmetricTriangulation {
    vertices: Vec<SpherePoint>,
    /// Flat index buffer; each simplex holds `m + 1` vertex ids.
    simplices: Vec<u32>,
    arity: usize,
    level: u32,
}

const MAX_SIMPLICES: usize = 600_000;

impl SymmetricTriangulation {
    pub fn vertices(&self) -> &[SpherePoint] {
        &self.vertices
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len() / self.arity
    }

    pub fn simplex(&self, i: usize) -> &[u32] {
        &self.simplices[i * self.arity..(i + 1) * self.arity]
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Normalized barycenter of simplex `i`.
    pub fn barycenter(&self, i: usize) -> Result<SpherePoint> {
        let ids = self.simplex(i);
        let dim = self.vertices[0].coords().len();
        let mut sum = vec![0.0; dim];
        for &id in ids {
            for (s, c) in sum.iter_mut().zip(self.vertices[id as usize].coords()) {
                *s += c;
            }
        }
        SpherePoint::from_unnormalized(sum)
    }
}

/// Children of the reference d-simplex under one round of factor-2 edgewise
/// subdivision; each child vertex is the midpoint pair `(i, j)` of parent
/// vertices (`i == j` keeps the parent vertex). Derived by tiling the doubled
/// ordered simplex with Kuhn cubes.
fn ref_children(d: usize) -> Vec<Vec<(u8, u8)>> {
    let mut children = Vec::new();
    let mut perm: Vec<usize> = (0..d).collect();
    let mut path = Vec::with_capacity(d + 1);
    loop {
        for corner in 0u32..(1 << d) {
            // walk the Kuhn path from the cube corner
            path.clear();
            let mut p: Vec<i32> = (0..d).map(|i| ((corner >> i) & 1) as i32).collect();
            path.push(p.clone());
            for &axis in &perm {
                p[axis] += 1;
                path.push(p.clone());
            }
            // keep the child iff every path point satisfies 2 >= x0 >= x1 >= ... >= 0
            let inside = path.iter().all(|q| {
                q[0] <= 2 && q[d - 1] >= 0 && q.windows(2).all(|w| w[0] >= w[1])
            });
            if !inside {
                continue;
            }
            let verts: Vec<(u8, u8)> = path
                .iter()
                .map(|q| {
                    // barycentric doubled coordinates over the parent vertices
                    let mut lam = vec![0i32; d + 1];
                    lam[0] = 2 - q[0];
                    for i in 1..d {
                        lam[i] = q[i - 1] - q[i];
                    }
                    lam[d] = q[d - 1];
                    let nz: Vec<usize> = (0..=d).filter(|&i| lam[i] != 0).collect();
                    match nz.len() {
                        1 => (nz[0] as u8, nz[0] as u8),
                        2 => (nz[0] as u8, nz[1] as u8),
                        _ => unreachable!("doubled barycentric mass is 2"),
                    }
                })
                .collect();
            children.push(verts);
        }
        // next permutation (lexicographic)
        let mut i = d.wrapping_sub(1);
        while i > 0 && perm[i - 1] >= perm[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = d - 1;
        while perm[j] <= perm[i - 1] {
            j -= 1;
        }
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    assert_eq!(children.len(), 1 << d, "red refinement yields 2^d children");
    children
}

fn coord_bits(coords: &[f64]) -> Vec<u64> {
    coords.iter().map(|c| c.to_bits()).collect()
}

/// Build the level-`level` refinement of the cross-polytope boundary of
/// `S^m`. Antipodal symmetry is exact: refining a simplex and its antipode
/// produces coordinate-wise negated vertices, and zero coordinates are
/// canonicalized.
pub fn triangulate(m: usize, level: u32) -> Result<SymmetricTriangulation> {
    if m < 1 || level > 12 {
        return Err(Error::BadDimension(format!("m = {m}, level = {level}")));
    }
    let dim = m + 1;

    // cross-polytope: vertices ±e_i, one simplex per sign pattern
    let mut vertices: Vec<Vec<f64>> = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        vertices.push(v);
    }
    for i in 0..dim {
        let mut v = vec![0.0; dim];
        v[i] = -1.0;
        vertices.push(v);
    }
    let mut simplices: Vec<u32> = Vec::new();
    for mask in 0u32..(1 << dim) {
        for i in 0..dim {
            let neg = (mask >> i) & 1 == 1;
            simplices.push(if neg { (i + dim) as u32 } else { i as u32 });
        }
    }

    let children = ref_children(m);
    let mut lookup: HashMap<Vec<u64>, u32> =
        vertices.iter().map(|v| coord_bits(v)).zip(0u32..).collect();

    for lvl in 0..level {
        let count = simplices.len() / dim;
        if count * (1 << m) > MAX_SIMPLICES {
            return Err(Error::TriangulationBudget { simplices: count * (1 << m), level: lvl + 1 });
        }
        let mut next: Vec<u32> = Vec::with_capacity(simplices.len() * (1 << m));
        for s in 0..count {
            let ids = &simplices[s * dim..(s + 1) * dim];
            for child in &children {
                for &(i, j) in child {
                    let id = if i == j {
                        ids[i as usize]
                    } else {
                        let (a, b) = (ids[i as usize] as usize, ids[j as usize] as usize);
                        let mid: Vec<f64> = vertices[a]
                            .iter()
                            .zip(&vertices[b])
                            .map(|(x, y)| 0.5 * (x + y))
                            .collect();
                        let n = norm(&mid);
                        let proj: Vec<f64> = mid.iter().map(|x| x / n + 0.0).collect();
                        let key = coord_bits(&proj);
                        match lookup.get(&key) {
                            Some(&id) => id,
                            None => {
                                let id = vertices.len() as u32;
                                vertices.push(proj);
                                lookup.insert(key, id);
                                id
                            }
                        }
                    };
                    next.push(id);
                }
            }
        }
        simplices = next;
    }

    let vertices = vertices.into_iter().map(SpherePoint::new_unchecked).collect();
    Ok(SymmetricTriangulation { vertices, simplices, arity: dim, level })
}
