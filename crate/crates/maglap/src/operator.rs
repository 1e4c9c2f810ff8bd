//! Edge angle assignments and the operators they induce: the twisted
//! incidence map, the magnetic Laplacian `D - A_theta`, its quadratic form,
//! and gauge conjugation.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::linalg::{ComplexMatrix, HermitianMatrix};

/// Complex values on the vertices, in the basis of vertex indicators.
pub type VertexFunction = Vec<Complex64>;

/// Canonicalize an angle to `(-pi, pi]`, mapping `-pi` to `pi`.
pub fn wrap_angle(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut y = x.rem_euclid(two_pi);
    if y > PI {
        y -= two_pi;
    }
    y
}

/// Distance between two angles on the circle, in `[0, pi]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// Unit complex number `e^{i theta}`, computed as a (cos, sin) pair.
pub fn unit_phase(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

const ANTISYMMETRY_TOL: f64 = 1e-12;

/// Per-edge angles in `(-pi, pi]`, keyed by edge index, antisymmetric on
/// anti-parallel pairs: if `uv` and `vu` are both edges, `theta(uv) = -theta(vu)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaAssignment {
    angles: Vec<f64>,
}

impl ThetaAssignment {
    pub fn new(g: &DirectedGraph, angles: Vec<f64>) -> Result<Self> {
        if angles.len() != g.edge_count() {
            return Err(Error::ThetaKeyMismatch {
                expected: g.edge_count(),
                got: angles.len(),
            });
        }
        for &a in &angles {
            if !a.is_finite() {
                return Err(Error::AngleOutOfRange(a));
            }
        }
        let angles: Vec<f64> = angles.into_iter().map(wrap_angle).collect();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if let Some(back) = g.edge_index(v, u) {
                let residual = wrap_angle(angles[e] + angles[back]).abs();
                if residual > ANTISYMMETRY_TOL {
                    return Err(Error::AntisymmetryViolated {
                        u,
                        v,
                        forward: angles[e],
                        backward: angles[back],
                    });
                }
            }
        }
        Ok(Self { angles })
    }

    /// The same angle on every edge. With an anti-parallel pair present this
    /// is only consistent for the angles 0 and pi.
    pub fn constant(g: &DirectedGraph, angle: f64) -> Result<Self> {
        Self::new(g, vec![angle; g.edge_count()])
    }

    pub fn zero(g: &DirectedGraph) -> Self {
        Self {
            angles: vec![0.0; g.edge_count()],
        }
    }

    /// Uniform angles in `(-pi, pi]`, deterministic under `seed`. Anti-parallel
    /// partners of earlier edges get the negated angle.
    pub fn random(g: &DirectedGraph, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut angles = vec![0.0f64; g.edge_count()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            match g.edge_index(v, u) {
                Some(back) if back < e => angles[e] = wrap_angle(-angles[back]),
                _ => angles[e] = wrap_angle(rng.gen_range(-PI..PI)),
            }
        }
        Self { angles }
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angle(&self, e: usize) -> f64 {
        self.angles[e]
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    fn check_keyed(&self, g: &DirectedGraph) -> Result<()> {
        if self.angles.len() != g.edge_count() {
            return Err(Error::ThetaKeyMismatch {
                expected: g.edge_count(),
                got: self.angles.len(),
            });
        }
        Ok(())
    }
}

/// The n x m twisted incidence matrix: column `e` is
/// `indicator(target) - e^{-i theta(e)} indicator(source)`.
pub fn incidence(g: &DirectedGraph, theta: &ThetaAssignment) -> Result<ComplexMatrix> {
    theta.check_keyed(g)?;
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut d = ComplexMatrix::zeros(n, m);
    for (e, &(s, t)) in g.edges().iter().enumerate() {
        d.set(t, e, Complex64::new(1.0, 0.0));
        let cur = d.get(s, e);
        d.set(s, e, cur - unit_phase(-theta.angle(e)));
    }
    Ok(d)
}

/// The magnetic Laplacian `D - A_theta`, assembled entrywise.
///
/// `D` counts incident directed edges; the edge `uv` contributes
/// `e^{-i theta(uv)}` to `A[u][v]` and its conjugate to `A[v][u]`.
pub fn laplacian(g: &DirectedGraph, theta: &ThetaAssignment) -> Result<HermitianMatrix> {
    theta.check_keyed(g)?;
    let n = g.vertex_count();
    let mut m = ComplexMatrix::zeros(n, n);
    for v in 0..n {
        m.set(v, v, Complex64::new(g.incident_degree(v) as f64, 0.0));
    }
    for (e, &(s, t)) in g.edges().iter().enumerate() {
        let phase = unit_phase(-theta.angle(e));
        let cur_st = m.get(s, t);
        m.set(s, t, cur_st - phase);
        let cur_ts = m.get(t, s);
        m.set(t, s, cur_ts - phase.conj());
    }
    HermitianMatrix::new(m)
}

/// Apply the Laplacian pointwise from the source/target definition:
/// `sum_{te=v} (f(v) - e^{i theta(e)} f(se)) + sum_{se=v} (f(v) - e^{-i theta(e)} f(te))`.
pub fn apply_pointwise(
    g: &DirectedGraph,
    theta: &ThetaAssignment,
    f: &[Complex64],
) -> Result<VertexFunction> {
    theta.check_keyed(g)?;
    if f.len() != g.vertex_count() {
        return Err(Error::VectorLength {
            expected: g.vertex_count(),
            got: f.len(),
        });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); g.vertex_count()];
    for (e, &(s, t)) in g.edges().iter().enumerate() {
        out[t] += f[t] - unit_phase(theta.angle(e)) * f[s];
        out[s] += f[s] - unit_phase(-theta.angle(e)) * f[t];
    }
    Ok(out)
}

/// `Q_theta(f) = sum_e |f(te) - e^{i theta(e)} f(se)|^2`.
pub fn quadratic_form(g: &DirectedGraph, theta: &ThetaAssignment, f: &[Complex64]) -> Result<f64> {
    theta.check_keyed(g)?;
    if f.len() != g.vertex_count() {
        return Err(Error::VectorLength {
            expected: g.vertex_count(),
            got: f.len(),
        });
    }
    let mut q = 0.0;
    for (e, &(s, t)) in g.edges().iter().enumerate() {
        q += (f[t] - unit_phase(theta.angle(e)) * f[s]).norm_sqr();
    }
    Ok(q)
}

const UNIMODULAR_TOL: f64 = 1e-12;

/// Conjugate theta by the gauge transformation `U = diag(phase)`:
/// `theta'(uv) = theta(uv) + arg phase(v) - arg phase(u)`, so that
/// `laplacian(g, theta') = U laplacian(g, theta) U*`.
pub fn gauge_conjugate(
    g: &DirectedGraph,
    theta: &ThetaAssignment,
    phase: &[Complex64],
) -> Result<ThetaAssignment> {
    theta.check_keyed(g)?;
    if phase.len() != g.vertex_count() {
        return Err(Error::VectorLength {
            expected: g.vertex_count(),
            got: phase.len(),
        });
    }
    for (v, z) in phase.iter().enumerate() {
        if (z.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::NotUnimodular {
                vertex: v,
                magnitude: z.norm(),
            });
        }
    }
    let angles: Vec<f64> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(s, t))| wrap_angle(theta.angle(e) + phase[t].arg() - phase[s].arg()))
        .collect();
    ThetaAssignment::new(g, angles)
}

/// Flip one edge's direction while negating its angle; the Laplacian is
/// unchanged.
pub fn reverse_edge(
    g: &DirectedGraph,
    theta: &ThetaAssignment,
    edge: usize,
) -> Result<(DirectedGraph, ThetaAssignment)> {
    theta.check_keyed(g)?;
    if edge >= g.edge_count() {
        return Err(Error::IndexOutOfRange {
            index: edge,
            limit: g.edge_count(),
        });
    }
    let mut edges = g.edges().to_vec();
    let (s, t) = edges[edge];
    edges[edge] = (t, s);
    let flipped = DirectedGraph::from_edge_list(g.vertex_count(), &edges)?;
    let mut angles = theta.angles().to_vec();
    angles[edge] = wrap_angle(-angles[edge]);
    let theta = ThetaAssignment::new(&flipped, angles)?;
    Ok((flipped, theta))
}
