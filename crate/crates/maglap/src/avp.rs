//! The averaged variational principle over finite weighted families of test
//! vectors, its eigenvalue-sum corollary, and the classical trace-minimum
//! principle it generalizes.
//!
//! For a Hermitian matrix with eigenpairs `(mu_j, u_j)` and a weighted family
//! `phi(z)` with a distinguished subset `Z_0`, the principle states
//!
//! ```text
//! mu_k (sum_{Z0} w ||phi||^2 - sum_{j<k} sum_Z w |<phi,u_j>|^2)
//!     <= sum_{Z0} w <phi, M phi> - sum_{j<k} sum_Z w mu_j |<phi,u_j>|^2
//! ```
//!
//! and, whenever `mu_k sum_{j<k} sum_Z w |<phi,u_j>|^2 <= mu_k sum_{Z0} w ||phi||^2`,
//! the weighted eigenvalue sum on the left of
//!
//! ```text
//! sum_{j<k} sum_Z w mu_j |<phi,u_j>|^2 <= sum_{Z0} w <phi, M phi>
//! ```
//!
//! is controlled by averaged Rayleigh quotients alone. Both statements are
//! theorems; a reported violation beyond tolerance means an implementation
//! bug, so the checks return errors rather than booleans.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{inner, max_gram_deviation, HermitianMatrix};

/// One weighted test vector.
#[derive(Debug, Clone)]
pub struct AvpPoint {
    pub weight: f64,
    pub vector: Vec<Complex64>,
}

/// A finite measured family of test vectors against a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct AvpInstance {
    matrix: HermitianMatrix,
    points: Vec<AvpPoint>,
    z0_mask: Vec<bool>,
}

impl AvpInstance {
    pub fn new(matrix: HermitianMatrix, points: Vec<AvpPoint>, z0_mask: Vec<bool>) -> Result<Self> {
        if z0_mask.len() != points.len() {
            return Err(Error::InvalidParameter {
                name: "z0_mask",
                message: format!("{} flags for {} points", z0_mask.len(), points.len()),
            });
        }
        let n = matrix.dim();
        for point in &points {
            if point.vector.len() != n {
                return Err(Error::VectorLength {
                    expected: n,
                    got: point.vector.len(),
                });
            }
            if !(point.weight >= 0.0 && point.weight.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "weight",
                    message: format!("{} is not a finite nonnegative weight", point.weight),
                });
            }
        }
        Ok(Self {
            matrix,
            points,
            z0_mask,
        })
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn points(&self) -> &[AvpPoint] {
        &self.points
    }

    pub fn z0_mask(&self) -> &[bool] {
        &self.z0_mask
    }
}

/// Both sides of the principle and of its sum-bound corollary at one index.
#[derive(Debug, Clone)]
pub struct AvpReport {
    pub k: usize,
    /// Left side of the principle: `mu_k (Z0 mass - projected mass)`.
    pub lhs: f64,
    /// Right side of the principle: `Z0 energy - projected energy`.
    pub rhs: f64,
    /// Whether the sum-bound hypothesis holds at this k.
    pub condition_holds: bool,
    /// Projected energy `sum_{j<k} sum_Z w mu_j |<phi,u_j>|^2`.
    pub sum_bound_lhs: f64,
    /// `Z0` energy `sum_{Z0} w <phi, M phi>`.
    pub sum_bound_rhs: f64,
}

struct Evaluation {
    mu: Vec<f64>,
    z0_mass: f64,
    z0_energy: f64,
    projected_mass: Vec<f64>,
    scale: f64,
}

fn evaluate(instance: &AvpInstance, k: usize) -> Result<Evaluation> {
    let n = instance.matrix.dim();
    if n == 0 || k > n - 1 {
        return Err(Error::InvalidParameter {
            name: "k",
            message: format!("need 0 <= k <= {} for an {}x{} matrix", n.saturating_sub(1), n, n),
        });
    }
    let decomposition = instance.matrix.eigh()?;
    let mut z0_mass = 0.0;
    let mut z0_energy = 0.0;
    let mut total_mass = 0.0;
    let mut projected_mass = vec![0.0f64; k];
    for (point, &in_z0) in instance.points.iter().zip(&instance.z0_mask) {
        let norm_sqr: f64 = point.vector.iter().map(|z| z.norm_sqr()).sum();
        total_mass += point.weight * norm_sqr;
        if in_z0 {
            z0_mass += point.weight * norm_sqr;
            let mv = instance.matrix.matrix().matvec(&point.vector)?;
            z0_energy += point.weight * inner(&point.vector, &mv).re;
        }
        for (j, mass) in projected_mass.iter_mut().enumerate() {
            let overlap = inner(&point.vector, &decomposition.eigenvector(j)).norm_sqr();
            *mass += point.weight * overlap;
        }
    }
    let scale = f64::max(
        1.0,
        instance.matrix.matrix().frobenius_norm() * total_mass,
    );
    Ok(Evaluation {
        mu: decomposition.eigenvalues,
        z0_mass,
        z0_energy,
        projected_mass,
        scale,
    })
}

fn report_from(eval: &Evaluation, k: usize) -> AvpReport {
    let mu_k = eval.mu[k];
    let mass_sum: f64 = eval.projected_mass.iter().sum();
    let energy_sum: f64 = eval
        .projected_mass
        .iter()
        .enumerate()
        .map(|(j, &mass)| eval.mu[j] * mass)
        .sum();
    let condition_holds = mu_k * mass_sum <= mu_k * eval.z0_mass + 1e-9 * eval.scale;
    AvpReport {
        k,
        lhs: mu_k * (eval.z0_mass - mass_sum),
        rhs: eval.z0_energy - energy_sum,
        condition_holds,
        sum_bound_lhs: energy_sum,
        sum_bound_rhs: eval.z0_energy,
    }
}

/// Evaluate the principle at index `k` and assert it holds.
pub fn check_theorem(instance: &AvpInstance, k: usize) -> Result<AvpReport> {
    let eval = evaluate(instance, k)?;
    let report = report_from(&eval, k);
    let tolerance = 1e-8 * eval.scale;
    if report.lhs > report.rhs + tolerance {
        return Err(Error::InequalityViolated {
            lhs: report.lhs,
            rhs: report.rhs,
            tolerance,
        });
    }
    Ok(report)
}

/// Evaluate the sum-bound corollary at index `k`; the conclusion is asserted
/// only when the hypothesis holds.
pub fn check_sum_bound(instance: &AvpInstance, k: usize) -> Result<AvpReport> {
    let eval = evaluate(instance, k)?;
    let report = report_from(&eval, k);
    let tolerance = 1e-8 * eval.scale;
    if report.condition_holds && report.sum_bound_lhs > report.sum_bound_rhs + tolerance {
        return Err(Error::InequalityViolated {
            lhs: report.sum_bound_lhs,
            rhs: report.sum_bound_rhs,
            tolerance,
        });
    }
    Ok(report)
}

/// The counting-measure instance over an orthonormal frame extended to a full
/// basis: `Z = {0..n-1}`, `Z_0` the first `frame.len()` indices, unit weights.
pub fn basis_instance(matrix: &HermitianMatrix, frame: &[Vec<Complex64>]) -> Result<AvpInstance> {
    let n = matrix.dim();
    let deviation = max_gram_deviation(frame, n)?;
    if deviation > 1e-10 {
        return Err(Error::NotOrthonormal { deviation });
    }
    if frame.len() > n {
        return Err(Error::InvalidParameter {
            name: "frame",
            message: format!("{} vectors exceed dimension {}", frame.len(), n),
        });
    }
    let mut basis: Vec<Vec<Complex64>> = frame.to_vec();
    // Complete with standard basis vectors by Gram-Schmidt.
    for i in 0..n {
        if basis.len() == n {
            break;
        }
        let mut candidate = vec![Complex64::new(0.0, 0.0); n];
        candidate[i] = Complex64::new(1.0, 0.0);
        for existing in &basis {
            let overlap = inner(existing, &candidate);
            for (c, e) in candidate.iter_mut().zip(existing) {
                *c -= overlap * e;
            }
        }
        let norm: f64 = candidate.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            for c in candidate.iter_mut() {
                *c /= norm;
            }
            basis.push(candidate);
        }
    }
    if basis.len() != n {
        return Err(Error::NotOrthonormal {
            deviation: f64::INFINITY,
        });
    }
    let k = frame.len();
    let points = basis
        .into_iter()
        .map(|vector| AvpPoint {
            weight: 1.0,
            vector,
        })
        .collect();
    let z0_mask = (0..n).map(|l| l < k).collect();
    AvpInstance::new(matrix.clone(), points, z0_mask)
}

/// Self-test instance: a random Hermitian matrix with a random weighted
/// family and subset, deterministic under `seed`.
pub fn random_instance(n: usize, seed: u64) -> AvpInstance {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let matrix = crate::linalg::random_hermitian(n, seed.wrapping_add(0x5eed));
    let count = rng.gen_range(1..=2 * n.max(1));
    let points: Vec<AvpPoint> = (0..count)
        .map(|_| AvpPoint {
            weight: rng.gen_range(0.0..2.0),
            vector: (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        })
        .collect();
    let z0_mask: Vec<bool> = (0..count).map(|_| rng.gen_bool(0.5)).collect();
    AvpInstance::new(matrix, points, z0_mask).expect("valid by construction")
}

/// `sum_{j<k} mu_j`: the minimum of `Tr(M|_V)` over k-dimensional subspaces.
pub fn fan_minimum(matrix: &HermitianMatrix, k: usize) -> Result<f64> {
    let n = matrix.dim();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter {
            name: "k",
            message: format!("need 1 <= k <= {}", n),
        });
    }
    let decomposition = matrix.eigh()?;
    Ok(decomposition.eigenvalues[..k].iter().sum())
}
