//! The averaged variational principle at work: a random weighted family, the
//! two sides of the inequality, and the reduction that recovers the classical
//! trace-minimum principle.
//!
//! ```bash
//! cargo run --example avp_demo
//! ```

use maglap::avp::{basis_instance, check_sum_bound, check_theorem, fan_minimum, random_instance};
use maglap::linalg::{inner, random_hermitian};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    // A random instance: Hermitian matrix, weighted test vectors, subset Z0.
    let instance = random_instance(6, 42);
    println!("principle on a random 6x6 instance:");
    for k in 0..6 {
        let report = check_theorem(&instance, k).unwrap();
        println!(
            "  k = {}: lhs = {:+.6}  <=  rhs = {:+.6}   (sum-bound hypothesis: {})",
            k, report.lhs, report.rhs, report.condition_holds
        );
    }

    // Counting-measure reduction: an orthonormal frame extended to a basis
    // recovers sum_{j<k} mu_j <= Tr(M|_V).
    let matrix = random_hermitian(5, 7);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let k = 2;
    let mut frame: Vec<Vec<Complex64>> = Vec::new();
    while frame.len() < k {
        let mut v: Vec<Complex64> = (0..5)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for existing in &frame {
            let overlap = inner(existing, &v);
            for (a, b) in v.iter_mut().zip(existing) {
                *a -= overlap * b;
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for a in v.iter_mut() {
                *a /= norm;
            }
            frame.push(v);
        }
    }
    let reduction = basis_instance(&matrix, &frame).unwrap();
    let report = check_sum_bound(&reduction, k).unwrap();
    let fan = fan_minimum(&matrix, k).unwrap();
    let restricted = matrix.restricted_trace(&frame).unwrap();
    println!("\ncounting-measure reduction at k = {}:", k);
    println!("  hypothesis holds: {}", report.condition_holds);
    println!("  sum of lowest eigenvalues: {:+.9}", fan);
    println!("  restricted trace of frame: {:+.9}", restricted);
    println!(
        "  sum bound: {:+.9} <= {:+.9}",
        report.sum_bound_lhs, report.sum_bound_rhs
    );
}
