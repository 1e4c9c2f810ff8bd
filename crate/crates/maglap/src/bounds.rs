//! Sharp bounds on sums of magnetic Laplacian eigenvalues.
//!
//! The machinery lives on `Z = V x V`: a weighted family of difference test
//! vectors `b_uv` built over an oriented K_n, a pair measure assigning 1 to
//! edges of a d-regular host `H`, `a` to edges of its complement, and `b` to
//! the diagonal, and the closed-form energy and mass sums those choices
//! admit. Feeding the family to the averaged variational principle yields:
//!
//! * the degree-form bound `(1/k) sum_{j<k} lambda_j <= Z_G / (2|E|) - 1`
//!   for integer `k <= |E| / d0`, where `d0` is the degree of a regular
//!   supergraph and `Z_G` the first Zagreb index, and
//! * the half-band bound `(1/k) sum_{j<k} lambda_j <= d - 1` for `k <= n/2`
//!   on subgraphs of d-regular hosts.
//!
//! Both hold for every angle assignment; the flux-phase scan searches for
//! the angles that come closest to saturating them.

use std::collections::HashSet;

use num_complex::Complex64;
use serde::Serialize;

use crate::avp::{check_sum_bound, AvpInstance, AvpPoint, AvpReport};
use crate::error::{Error, Result};
use crate::graph::{
    complement_in_complete, complete_orientation_extending, min_regular_degree, regular_supergraph,
    DirectedGraph,
};
use crate::operator::{laplacian, unit_phase, wrap_angle, ThetaAssignment};

/// Ordered vertex pairs, diagonal pairs included.
pub type PairSet = Vec<(usize, usize)>;

/// Default number of grid values per edge in the flux-phase scan.
pub const DEFAULT_GRID_STEPS: usize = 8;
/// Default cap on flux-phase scan evaluations.
pub const DEFAULT_SCAN_BUDGET: u128 = 1_000_000;

/// Everything the pair-family computations need: the graph and its angles, a
/// d-regular host inside an oriented K_n extending the orientation, the
/// measure parameters `a`, `b`, and the test-vector phases `alpha` on the
/// edges of `g` (zero elsewhere).
#[derive(Debug, Clone)]
pub struct BoundContext {
    g: DirectedGraph,
    theta: ThetaAssignment,
    h: DirectedGraph,
    a: f64,
    b: f64,
    alpha: Vec<f64>,
    d: usize,
    degrees: Vec<usize>,
    g_edge: Vec<Vec<Option<usize>>>,
    kn_forward: Vec<Vec<bool>>,
    h_adjacent: Vec<Vec<bool>>,
}

impl BoundContext {
    pub fn new(
        g: DirectedGraph,
        theta: ThetaAssignment,
        h: DirectedGraph,
        a: f64,
        b: f64,
        alpha: Vec<f64>,
    ) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        if let Some((u, v)) = g.anti_parallel_pair() {
            return Err(Error::NotSimpleOrientation(u, v));
        }
        if theta.len() != g.edge_count() {
            return Err(Error::ThetaKeyMismatch {
                expected: g.edge_count(),
                got: theta.len(),
            });
        }
        if alpha.len() != g.edge_count() {
            return Err(Error::ThetaKeyMismatch {
                expected: g.edge_count(),
                got: alpha.len(),
            });
        }
        if !(a >= 0.0 && a.is_finite()) || !(b >= 0.0 && b.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "a, b",
                message: format!("weights must be finite and nonnegative, got a = {}, b = {}", a, b),
            });
        }
        if !g.is_sub_orientation_of(&h) {
            let &(u, v) = g
                .edges()
                .iter()
                .find(|&&(u, v)| h.edge_index(u, v).is_none())
                .expect("some edge is missing");
            return Err(Error::NotSubgraph(u, v));
        }
        let n = g.vertex_count();
        let h_view = h.undirected();
        let d = h_view.degree(0);
        for v in 0..n {
            if h_view.degree(v) != d {
                return Err(Error::HostNotRegular {
                    vertex: v,
                    got: h_view.degree(v),
                    expected: d,
                });
            }
        }
        let kn = complete_orientation_extending(&h)?;
        // Consistency of the complement is implied; materialize for the check.
        let _ = complement_in_complete(&h, &kn)?;

        let view = g.undirected();
        let degrees: Vec<usize> = (0..n).map(|v| view.degree(v)).collect();
        let mut g_edge = vec![vec![None; n]; n];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            g_edge[u][v] = Some(e);
        }
        let mut kn_forward = vec![vec![false; n]; n];
        for &(u, v) in kn.edges() {
            kn_forward[u][v] = true;
        }
        let mut h_adjacent = vec![vec![false; n]; n];
        for &(u, v) in h.edges() {
            h_adjacent[u][v] = true;
            h_adjacent[v][u] = true;
        }
        let alpha = alpha.into_iter().map(wrap_angle).collect();
        Ok(Self {
            g,
            theta,
            h,
            a,
            b,
            alpha,
            d,
            degrees,
            g_edge,
            kn_forward,
            h_adjacent,
        })
    }

    /// Context with `alpha(e) + theta(e) = pi` on every edge, the choice that
    /// minimizes the edge energies.
    pub fn with_opposing_alpha(
        g: DirectedGraph,
        theta: ThetaAssignment,
        h: DirectedGraph,
        a: f64,
        b: f64,
    ) -> Result<Self> {
        let alpha = opposing_alpha(&theta);
        Self::new(g, theta, h, a, b, alpha)
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.g
    }

    pub fn theta(&self) -> &ThetaAssignment {
        &self.theta
    }

    pub fn host(&self) -> &DirectedGraph {
        &self.h
    }

    pub fn host_degree(&self) -> usize {
        self.d
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        let n = self.g.vertex_count();
        if u >= n {
            return Err(Error::VertexOutOfRange { id: u, n });
        }
        if v >= n {
            return Err(Error::VertexOutOfRange { id: v, n });
        }
        Ok(())
    }

    /// Extended alpha on K_n: the stored angle on edges of `g`, zero elsewhere.
    fn alpha_on(&self, u: usize, v: usize) -> f64 {
        self.g_edge[u][v].map(|e| self.alpha[e]).unwrap_or(0.0)
    }

    /// The test vector `b_uv`.
    pub fn test_vector(&self, u: usize, v: usize) -> Result<Vec<Complex64>> {
        self.check_pair(u, v)?;
        let n = self.g.vertex_count();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        if u == v {
            out[u] = Complex64::new(1.0, 0.0);
        } else if self.kn_forward[u][v] {
            out[v] = Complex64::new(1.0, 0.0);
            out[u] = -unit_phase(self.alpha_on(u, v));
        } else {
            out[v] = Complex64::new(1.0, 0.0);
            out[u] = unit_phase(-self.alpha_on(v, u));
        }
        Ok(out)
    }

    /// The measure of a pair: 1 on host edges, `a` on complement edges, `b`
    /// on the diagonal.
    pub fn pair_weight(&self, u: usize, v: usize) -> Result<f64> {
        self.check_pair(u, v)?;
        if u == v {
            Ok(self.b)
        } else if self.h_adjacent[u][v] {
            Ok(1.0)
        } else {
            Ok(self.a)
        }
    }

    /// `C(a, b, d) = d + a (n - 1 - d) + b / 2`.
    pub fn normalization_constant(&self) -> f64 {
        let n = self.g.vertex_count() as f64;
        self.d as f64 + self.a * (n - 1.0 - self.d as f64) + self.b / 2.0
    }

    /// Weighted energy over a pair subset,
    /// `sum_{uv in Z0} mu(uv) <b_uv, Delta_theta b_uv>`, by the closed form:
    /// edges of `g` contribute `d_u + d_v +- 2 cos(alpha + theta)`, other
    /// off-diagonal pairs `d_u + d_v` at their measure, diagonal pairs `b d_v`.
    pub fn energy_sum(&self, z0: &[(usize, usize)]) -> Result<f64> {
        self.validate_pair_set(z0)?;
        let mut total = 0.0;
        for &(u, v) in z0 {
            if u == v {
                total += self.b * self.degrees[v] as f64;
            } else if let Some(e) = self.g_edge[u][v] {
                let du_dv = (self.degrees[u] + self.degrees[v]) as f64;
                total += du_dv + 2.0 * (self.alpha[e] + self.theta.angle(e)).cos();
            } else if let Some(e) = self.g_edge[v][u] {
                let du_dv = (self.degrees[u] + self.degrees[v]) as f64;
                total += du_dv - 2.0 * (self.alpha[e] + self.theta.angle(e)).cos();
            } else {
                let weight = if self.h_adjacent[u][v] { 1.0 } else { self.a };
                total += weight * (self.degrees[u] + self.degrees[v]) as f64;
            }
        }
        Ok(total)
    }

    /// Weighted mass over a pair subset, `sum_{uv in Z0} mu(uv) ||b_uv||^2`:
    /// twice the host-edge count plus `2a` per complement pair plus `b` per
    /// diagonal pair.
    pub fn mass_sum(&self, z0: &[(usize, usize)]) -> Result<f64> {
        self.validate_pair_set(z0)?;
        let mut host_pairs = 0usize;
        let mut complement_pairs = 0usize;
        let mut diagonal = 0usize;
        for &(u, v) in z0 {
            if u == v {
                diagonal += 1;
            } else if self.h_adjacent[u][v] {
                host_pairs += 1;
            } else {
                complement_pairs += 1;
            }
        }
        Ok(2.0 * host_pairs as f64
            + 2.0 * self.a * complement_pairs as f64
            + self.b * diagonal as f64)
    }

    fn validate_pair_set(&self, z0: &[(usize, usize)]) -> Result<()> {
        let mut seen = HashSet::new();
        for &(u, v) in z0 {
            self.check_pair(u, v)?;
            if !seen.insert((u, v)) {
                return Err(Error::InvalidParameter {
                    name: "z0",
                    message: format!("pair ({}, {}) repeats", u, v),
                });
            }
        }
        Ok(())
    }

    /// Package the full pair family as an averaged-variational-principle
    /// instance: all of `Z = V x V` with the pair measure, `Z_0` as marked.
    pub fn avp_instance(&self, z0: &[(usize, usize)]) -> Result<AvpInstance> {
        self.validate_pair_set(z0)?;
        let n = self.g.vertex_count();
        let z0_set: HashSet<(usize, usize)> = z0.iter().copied().collect();
        let mut points = Vec::with_capacity(n * n);
        let mut mask = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                points.push(AvpPoint {
                    weight: self.pair_weight(u, v)?,
                    vector: self.test_vector(u, v)?,
                });
                mask.push(z0_set.contains(&(u, v)));
            }
        }
        AvpInstance::new(laplacian(&self.g, &self.theta)?, points, mask)
    }
}

/// The phase choice `alpha(e) = pi - theta(e)`, making every edge cosine -1.
pub fn opposing_alpha(theta: &ThetaAssignment) -> Vec<f64> {
    theta
        .angles()
        .iter()
        .map(|&t| wrap_angle(std::f64::consts::PI - t))
        .collect()
}

/// Report of the degree-form eigenvalue-sum bound at one `k`.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeBoundReport {
    pub n: usize,
    pub m: usize,
    pub d0: usize,
    pub k: usize,
    pub admissible: bool,
    /// `(1/k) sum_{j<k} lambda_j`.
    pub mean: f64,
    /// `Z_G / (2|E|) - 1`.
    pub bound: f64,
    /// The same bound in trace form, `Tr(D^2)/Tr(D) - 1`.
    pub trace_bound: f64,
    pub slack: f64,
    pub sharp: bool,
    pub holds: bool,
}

/// Check the degree-form bound: for connected simple orientations and
/// integer `k <= |E| / d0`, the mean of the lowest `k` eigenvalues is at
/// most `Z_G / (2|E|) - 1`.
///
/// `d0` must be realizable as the degree of a regular supergraph; a
/// violation of the bound itself is an error, not a report.
pub fn degree_bound_check(
    g: &DirectedGraph,
    theta: &ThetaAssignment,
    d0: usize,
    k: usize,
) -> Result<DegreeBoundReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some((u, v)) = g.anti_parallel_pair() {
        return Err(Error::NotSimpleOrientation(u, v));
    }
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            message: "must be a positive integer".into(),
        });
    }
    if d0 == 0 {
        return Err(Error::InvalidParameter {
            name: "d0",
            message: "must be a positive integer".into(),
        });
    }
    // d0 must actually be the degree of a regular supergraph.
    let _ = regular_supergraph(g, d0)?;

    let n = g.vertex_count();
    let m = g.edge_count();
    let admissible = k * d0 <= m;

    let eigenvalues = laplacian(g, theta)?.eigh()?.eigenvalues;
    let mean = eigenvalues[..k.min(n)].iter().sum::<f64>() / k as f64;
    let zagreb = g.zagreb_index() as f64;
    let bound = zagreb / (2.0 * m as f64) - 1.0;

    let degree_trace: f64 = (0..n).map(|v| g.incident_degree(v) as f64).sum();
    let degree_square_trace: f64 = (0..n)
        .map(|v| (g.incident_degree(v) as f64).powi(2))
        .sum();
    let trace_bound = degree_square_trace / degree_trace - 1.0;
    if (bound - trace_bound).abs() > 1e-12 * f64::max(1.0, bound.abs()) {
        return Err(Error::InequalityViolated {
            lhs: bound,
            rhs: trace_bound,
            tolerance: 1e-12,
        });
    }

    let slack = bound - mean;
    let holds = mean <= bound + 1e-8;
    if admissible && !holds {
        return Err(Error::InequalityViolated {
            lhs: mean,
            rhs: bound,
            tolerance: 1e-8,
        });
    }
    Ok(DegreeBoundReport {
        n,
        m,
        d0,
        k,
        admissible,
        mean,
        bound,
        trace_bound,
        slack,
        sharp: slack.abs() <= 1e-9,
        holds,
    })
}

/// The same bound certified through the raw pair family: `H` of degree `d0`
/// is constructed, `a` and `b` are chosen so `C(a, b, d0) = |E| / k`, and the
/// sum-bound corollary is evaluated on `Z_0 = E`.
pub fn degree_bound_avp_route(
    g: &DirectedGraph,
    theta: &ThetaAssignment,
    d0: usize,
    k: usize,
) -> Result<AvpReport> {
    let m = g.edge_count();
    if k == 0 || k * d0 > m {
        return Err(Error::InvalidParameter {
            name: "k",
            message: format!("need 1 <= k <= |E| / d0 = {} / {}", m, d0),
        });
    }
    let h = regular_supergraph(g, d0)?;
    let n = g.vertex_count();
    let target = m as f64 / k as f64;
    let (a, b) = if d0 + 1 < n {
        ((target - d0 as f64) / (n - 1 - d0) as f64, 0.0)
    } else {
        (0.0, 2.0 * (target - d0 as f64))
    };
    let ctx = BoundContext::with_opposing_alpha(g.clone(), theta.clone(), h, a, b)?;
    let instance = ctx.avp_instance(g.edges())?;
    check_sum_bound(&instance, k)
}

/// Report of the half-band bound at one `k`.
#[derive(Debug, Clone, Serialize)]
pub struct HalfBandReport {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub k: usize,
    pub admissible: bool,
    pub mean: f64,
    /// `d - 1`.
    pub bound: f64,
    pub slack: f64,
    pub sharp: bool,
    pub holds: bool,
}

/// Check the half-band bound: on a connected spanning subgraph of a
/// d-regular host, the mean of the lowest `k <= n/2` eigenvalues is at most
/// `d - 1` for every angle assignment.
pub fn half_band_check(
    g: &DirectedGraph,
    theta: &ThetaAssignment,
    host: &DirectedGraph,
    k: usize,
) -> Result<HalfBandReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some((u, v)) = g.anti_parallel_pair() {
        return Err(Error::NotSimpleOrientation(u, v));
    }
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            message: "must be a positive integer".into(),
        });
    }
    let n = g.vertex_count();
    if host.vertex_count() != n {
        return Err(Error::ShapeMismatch {
            expected: format!("host on {} vertices", n),
            got: format!("{}", host.vertex_count()),
        });
    }
    let host_view = host.undirected();
    let d = host_view.degree(0);
    for v in 0..n {
        if host_view.degree(v) != d {
            return Err(Error::HostNotRegular {
                vertex: v,
                got: host_view.degree(v),
                expected: d,
            });
        }
    }
    for &(u, v) in g.undirected().pairs() {
        if !host_view.adjacent(u, v) {
            return Err(Error::NotSubgraph(u, v));
        }
    }

    let admissible = 2 * k <= n;
    let eigenvalues = laplacian(g, theta)?.eigh()?.eigenvalues;
    let mean = eigenvalues[..k.min(n)].iter().sum::<f64>() / k as f64;
    let bound = d as f64 - 1.0;
    let slack = bound - mean;
    let holds = mean <= bound + 1e-8;
    if admissible && !holds {
        return Err(Error::InequalityViolated {
            lhs: mean,
            rhs: bound,
            tolerance: 1e-8,
        });
    }
    Ok(HalfBandReport {
        n,
        m: g.edge_count(),
        d,
        k,
        admissible,
        mean,
        bound,
        slack,
        sharp: slack.abs() <= 1e-9,
        holds,
    })
}

/// Result of a flux-phase search.
#[derive(Debug, Clone)]
pub struct FluxScanResult {
    /// Best angle per edge found.
    pub theta: Vec<f64>,
    /// The maximized `sum_{j<k} lambda_j`.
    pub best_sum: f64,
    /// Whether the full grid was enumerated (false: coordinate ascent).
    pub exhaustive: bool,
    pub evaluations: u128,
}

/// Search edge angles maximizing the sum of the lowest `k` eigenvalues over
/// a per-edge grid.
///
/// The full `grid_steps^m` grid is enumerated when it fits in `budget`
/// evaluations; otherwise, if `allow_fallback`, coordinate ascent from the
/// zero assignment. The result never exceeds the half-band cap taken at the
/// minimal regular completion degree (checked).
pub fn flux_phase_scan(
    g: &DirectedGraph,
    k: usize,
    grid_steps: usize,
    budget: u128,
    allow_fallback: bool,
) -> Result<FluxScanResult> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some((u, v)) = g.anti_parallel_pair() {
        return Err(Error::NotSimpleOrientation(u, v));
    }
    let n = g.vertex_count();
    if k == 0 || 2 * k > n {
        return Err(Error::InvalidParameter {
            name: "k",
            message: format!("need 1 <= k <= n/2 = {}/2", n),
        });
    }
    if grid_steps < 2 {
        return Err(Error::InvalidParameter {
            name: "grid_steps",
            message: "need at least two grid values".into(),
        });
    }
    let m = g.edge_count();
    let grid: Vec<f64> = (0..grid_steps)
        .map(|i| wrap_angle(-std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / grid_steps as f64))
        .collect();

    let low_k_sum = |angles: &[f64]| -> Result<f64> {
        let theta = ThetaAssignment::new(g, angles.to_vec())?;
        let eigenvalues = laplacian(g, &theta)?.eigh()?.eigenvalues;
        Ok(eigenvalues[..k].iter().sum())
    };

    let total: u128 = (grid_steps as u128)
        .checked_pow(m as u32)
        .unwrap_or(u128::MAX);
    let mut evaluations = 0u128;
    let (best_angles, best_sum, exhaustive) = if total <= budget {
        let mut digits = vec![0usize; m];
        let mut best_angles: Vec<f64> = digits.iter().map(|&i| grid[i]).collect();
        let mut best = f64::NEG_INFINITY;
        loop {
            let angles: Vec<f64> = digits.iter().map(|&i| grid[i]).collect();
            let value = low_k_sum(&angles)?;
            evaluations += 1;
            if value > best {
                best = value;
                best_angles = angles;
            }
            // Mixed-radix increment.
            let mut pos = 0;
            while pos < m {
                digits[pos] += 1;
                if digits[pos] < grid_steps {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == m {
                break;
            }
        }
        (best_angles, best, true)
    } else if allow_fallback {
        let mut current = vec![0.0f64; m];
        let mut best = low_k_sum(&current)?;
        evaluations += 1;
        let max_rounds = 50;
        for _ in 0..max_rounds {
            let mut improved = false;
            for e in 0..m {
                let saved = current[e];
                let mut best_here = best;
                let mut best_angle = saved;
                for &value in &grid {
                    current[e] = value;
                    let score = low_k_sum(&current)?;
                    evaluations += 1;
                    if score > best_here {
                        best_here = score;
                        best_angle = value;
                    }
                }
                current[e] = best_angle;
                if best_here > best {
                    best = best_here;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        (current, best, false)
    } else {
        return Err(Error::ScanBudgetExceeded {
            required: total,
            budget,
        });
    };

    // The half-band cap must hold for every angle choice.
    let (d0, _) = min_regular_degree(g)?;
    let cap = k as f64 * (d0 as f64 - 1.0);
    if best_sum > cap + 1e-8 * f64::max(1.0, cap.abs()) {
        return Err(Error::InequalityViolated {
            lhs: best_sum,
            rhs: cap,
            tolerance: 1e-8,
        });
    }

    Ok(FluxScanResult {
        theta: best_angles,
        best_sum,
        exhaustive,
        evaluations,
    })
}
