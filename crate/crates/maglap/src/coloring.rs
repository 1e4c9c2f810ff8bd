//! Spectral 2- and 3-colorability.
//!
//! A connected graph is bipartite iff the signless Laplacian (angle pi) is
//! singular, and tripartite iff some orientation makes the angle-2pi/3
//! Laplacian singular. The scans below test the smallest eigenvalue per
//! orientation; orientations inducing the same cycle fluxes are gauge
//! equivalent and share a spectrum, so each flux class is decomposed once.
//! Combinatorial oracles (BFS 2-coloring, backtracking 3-coloring) provide
//! independent ground truth.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::flux::spectral_zero_threshold;
use crate::graph::{orient, DirectedGraph, UndirectedView};
use crate::operator::{laplacian, unit_phase, ThetaAssignment};

/// Default vertex-count ceiling for the backtracking 3-coloring oracle.
pub const DEFAULT_ORACLE_BUDGET: usize = 12;

/// Maximum rounding residual allowed when reading a coloring off a null
/// vector.
pub const WITNESS_ROUNDING_TOL: f64 = 1e-6;

/// A vertex partition presented as `vertex -> class index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionWitness {
    pub class_of: Vec<usize>,
    pub num_classes: usize,
}

impl PartitionWitness {
    /// True iff no edge joins two vertices of the same class.
    pub fn is_proper(&self, view: &UndirectedView) -> bool {
        view.pairs()
            .iter()
            .all(|&(u, v)| self.class_of[u] != self.class_of[v])
    }

    /// Vertices grouped by class, classes in index order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes];
        for (v, &c) in self.class_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Outcome of a spectral colorability test.
#[derive(Debug, Clone)]
pub struct SpectralVerdict {
    pub colorable: bool,
    pub witness: Option<PartitionWitness>,
    pub orientations_checked: usize,
}

/// Bipartiteness through the signless Laplacian.
///
/// One determinant suffices: the angle-pi operator does not depend on the
/// orientation. The witness is read off the phases of the null vector.
pub fn is_bipartite_spectral(g: &DirectedGraph) -> Result<SpectralVerdict> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let theta = ThetaAssignment::constant(g, PI)?;
    let decomposition = laplacian(g, &theta)?.eigh()?;
    let vanishes = decomposition.eigenvalues[0] <= spectral_zero_threshold(&decomposition.eigenvalues);
    let witness = if vanishes {
        let class_of = classes_from_null_vector(&decomposition.eigenvector(0), 2)?;
        let witness = PartitionWitness {
            class_of,
            num_classes: 2,
        };
        if !witness.is_proper(&g.undirected()) {
            return Err(Error::WitnessExtraction { residual: 1.0 });
        }
        Some(witness)
    } else {
        None
    };
    Ok(SpectralVerdict {
        colorable: vanishes,
        witness,
        orientations_checked: 1,
    })
}

/// General-k variant of the bipartite test: scans orientations of the
/// angle-pi/k Laplacian for a vanishing determinant. Must agree with
/// [`is_bipartite_spectral`] for every k >= 1.
pub fn is_bipartite_spectral_k(g: &DirectedGraph, k: usize, budget: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            message: "must be a positive integer".into(),
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if k == 1 {
        // The angle-pi operator is orientation independent.
        return Ok(is_bipartite_spectral(g)?.colorable);
    }
    let scan = scan_orientations(&g.undirected(), PI / k as f64, 2 * k, budget)?;
    Ok(scan.first_vanishing.is_some())
}

/// Tripartiteness through orientation scanning at angle 2pi/3.
pub fn is_tripartite_spectral(g: &DirectedGraph, budget: usize) -> Result<SpectralVerdict> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let view = g.undirected();
    let scan = scan_orientations(&view, 2.0 * PI / 3.0, 3, budget)?;
    match scan.first_vanishing {
        Some(code) => {
            let oriented = orient(view.vertex_count(), view.pairs(), code);
            let theta = ThetaAssignment::constant(&oriented, 2.0 * PI / 3.0)?;
            let decomposition = laplacian(&oriented, &theta)?.eigh()?;
            let class_of = classes_from_null_vector(&decomposition.eigenvector(0), 3)?;
            let witness = PartitionWitness {
                class_of,
                num_classes: 3,
            };
            if !witness.is_proper(&view) {
                return Err(Error::WitnessExtraction { residual: 1.0 });
            }
            Ok(SpectralVerdict {
                colorable: true,
                witness: Some(witness),
                orientations_checked: scan.orientations_checked,
            })
        }
        None => Ok(SpectralVerdict {
            colorable: false,
            witness: None,
            orientations_checked: scan.orientations_checked,
        }),
    }
}

struct ScanOutcome {
    first_vanishing: Option<usize>,
    orientations_checked: usize,
}

/// Scan all orientations with the constant angle `phi`, where `q * phi` is a
/// multiple of 2 pi. Fluxes are integer multiples of `phi`, so orientations
/// with equal flux integers mod q are gauge equivalent; the smallest
/// eigenvalue is computed once per class.
fn scan_orientations(view: &UndirectedView, phi: f64, q: usize, budget: usize) -> Result<ScanOutcome> {
    let m = view.edge_count();
    if m > budget {
        return Err(Error::BudgetExceeded {
            required: m,
            budget,
        });
    }
    if m > 63 {
        return Err(Error::BudgetExceeded {
            required: m,
            budget: 63,
        });
    }
    let n = view.vertex_count();
    let pairs = view.pairs();

    // Cycle basis of the low->high orientation, as signed pair masks.
    let reference = orient(n, pairs, 0);
    let basis = reference.cycle_basis()?;
    let mut masks: Vec<(u64, u64)> = Vec::with_capacity(basis.fundamental_cycles.len());
    for cycle in &basis.fundamental_cycles {
        let mut pos = 0u64;
        let mut neg = 0u64;
        for step in cycle.walk.windows(2) {
            let (x, y) = (step[0], step[1]);
            let canonical = (x.min(y), x.max(y));
            let idx = pairs.binary_search(&canonical).expect("walk uses edges");
            if x < y {
                pos |= 1 << idx;
            } else {
                neg |= 1 << idx;
            }
        }
        masks.push((pos, neg));
    }

    let total = 1usize << m;
    let mut memo: HashMap<Vec<u8>, bool> = HashMap::new();
    for code in 0..total {
        let inverted = !(code as u64);
        let key: Vec<u8> = masks
            .iter()
            .map(|&(pos, neg)| {
                let plus = (pos & inverted).count_ones() as i64 + (neg & code as u64).count_ones() as i64;
                let minus = (neg & inverted).count_ones() as i64 + (pos & code as u64).count_ones() as i64;
                (plus - minus).rem_euclid(q as i64) as u8
            })
            .collect();
        let vanishes = match memo.get(&key) {
            Some(&v) => v,
            None => {
                let oriented = orient(n, pairs, code);
                let theta = ThetaAssignment::constant(&oriented, phi)?;
                let eigenvalues = laplacian(&oriented, &theta)?.eigh()?.eigenvalues;
                let v = eigenvalues[0] <= spectral_zero_threshold(&eigenvalues);
                memo.insert(key, v);
                v
            }
        };
        if vanishes {
            return Ok(ScanOutcome {
                first_vanishing: Some(code),
                orientations_checked: code + 1,
            });
        }
    }
    Ok(ScanOutcome {
        first_vanishing: None,
        orientations_checked: total,
    })
}

/// Round null-vector entries to the nearest of `q` equally spaced phases.
///
/// On a connected graph the null vector has constant modulus; after fixing a
/// global phase, every entry must sit within [`WITNESS_ROUNDING_TOL`] of an
/// allowed phase or the extraction refuses.
fn classes_from_null_vector(u0: &[Complex64], q: usize) -> Result<Vec<usize>> {
    let n = u0.len();
    let anchor = (0..n)
        .max_by(|&a, &b| u0[a].norm().total_cmp(&u0[b].norm()))
        .expect("nonempty vector");
    let anchor_value = u0[anchor];
    if anchor_value.norm() == 0.0 {
        return Err(Error::WitnessExtraction { residual: 1.0 });
    }
    let rotation = anchor_value.conj() / anchor_value.norm();
    let scale = (n as f64).sqrt();

    let mut classes = Vec::with_capacity(n);
    let mut worst = 0.0f64;
    for z in u0 {
        let s = z * rotation * scale;
        let (class, residual) = (0..q)
            .map(|j| {
                let target = unit_phase(2.0 * PI * j as f64 / q as f64);
                (j, (s - target).norm())
            })
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("q >= 1");
        worst = worst.max(residual);
        classes.push(class);
    }
    if worst > WITNESS_ROUNDING_TOL {
        return Err(Error::WitnessExtraction { residual: worst });
    }
    // Relabel classes in order of first appearance, so vertex 0 is class 0.
    let mut relabel: Vec<Option<usize>> = vec![None; q];
    let mut next = 0;
    for class in classes.iter_mut() {
        *class = *relabel[*class].get_or_insert_with(|| {
            let label = next;
            next += 1;
            label
        });
    }
    Ok(classes)
}

/// Exact bipartiteness by BFS 2-coloring. Handles disconnected graphs.
pub fn bipartite_oracle(g: &DirectedGraph) -> (bool, Option<PartitionWitness>) {
    let view = g.undirected();
    let n = view.vertex_count();
    let mut color: Vec<Option<usize>> = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let cv = color[v].unwrap();
            for &w in view.neighbors(v) {
                match color[w] {
                    None => {
                        color[w] = Some(1 - cv);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => return (false, None),
                    Some(_) => {}
                }
            }
        }
    }
    let witness = PartitionWitness {
        class_of: color.into_iter().map(|c| c.unwrap_or(0)).collect(),
        num_classes: 2,
    };
    (true, Some(witness))
}

/// Exact 3-colorability by backtracking, refused above `budget` vertices.
pub fn three_color_oracle(
    g: &DirectedGraph,
    budget: usize,
) -> Result<(bool, Option<PartitionWitness>)> {
    let n = g.vertex_count();
    if n > budget {
        return Err(Error::BudgetExceeded {
            required: n,
            budget,
        });
    }
    let view = g.undirected();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    if try_color(&view, &mut colors, 0) {
        let witness = PartitionWitness {
            class_of: colors.into_iter().map(|c| c.unwrap_or(0)).collect(),
            num_classes: 3,
        };
        Ok((true, Some(witness)))
    } else {
        Ok((false, None))
    }
}

fn try_color(view: &UndirectedView, colors: &mut Vec<Option<usize>>, v: usize) -> bool {
    if v == view.vertex_count() {
        return true;
    }
    // Color classes are interchangeable; pinning the first vertex prunes the
    // search without losing completeness.
    let limit = if v == 0 { 1 } else { 3 };
    for c in 0..limit {
        if view.neighbors(v).iter().any(|&w| colors[w] == Some(c)) {
            continue;
        }
        colors[v] = Some(c);
        if try_color(view, colors, v + 1) {
            return true;
        }
        colors[v] = None;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        complete_graph, cycle_graph, petersen, random_graph, DirectedGraph,
        DEFAULT_ENUMERATION_BUDGET,
    };

    #[test]
    fn square_is_bipartite_with_alternating_classes() {
        let verdict = is_bipartite_spectral(&cycle_graph(4)).unwrap();
        assert!(verdict.colorable);
        let witness = verdict.witness.unwrap();
        assert_eq!(witness.class_of[0], witness.class_of[2]);
        assert_eq!(witness.class_of[1], witness.class_of[3]);
        assert_ne!(witness.class_of[0], witness.class_of[1]);
        assert_eq!(verdict.orientations_checked, 1);
    }

    #[test]
    fn triangle_is_not_bipartite() {
        let verdict = is_bipartite_spectral(&complete_graph(3)).unwrap();
        assert!(!verdict.colorable);
        assert!(verdict.witness.is_none());
    }

    #[test]
    fn single_edge_is_bipartite() {
        let g = DirectedGraph::from_edge_list(2, &[(0, 1)]).unwrap();
        let verdict = is_bipartite_spectral(&g).unwrap();
        assert!(verdict.colorable);
        assert!(verdict.witness.unwrap().is_proper(&g.undirected()));
    }

    #[test]
    fn bipartite_k_examples() {
        let budget = DEFAULT_ENUMERATION_BUDGET;
        assert!(is_bipartite_spectral_k(&cycle_graph(4), 2, budget).unwrap());
        assert!(!is_bipartite_spectral_k(&complete_graph(3), 2, budget).unwrap());
        assert!(is_bipartite_spectral_k(&cycle_graph(6), 3, budget).unwrap());
    }

    #[test]
    fn bipartite_k_agrees_with_k_one() {
        for seed in 0..15 {
            let g = random_graph(5, 0.5, seed).unwrap();
            let reference = is_bipartite_spectral(&g).unwrap().colorable;
            for k in 1..=3 {
                assert_eq!(
                    is_bipartite_spectral_k(&g, k, DEFAULT_ENUMERATION_BUDGET).unwrap(),
                    reference,
                    "seed {} k {}",
                    seed,
                    k
                );
            }
        }
    }

    #[test]
    fn triangle_is_tripartite_with_distinct_classes() {
        let verdict = is_tripartite_spectral(&complete_graph(3), DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert!(verdict.colorable);
        let witness = verdict.witness.unwrap();
        assert!(witness.is_proper(&complete_graph(3).undirected()));
        let mut classes = witness.class_of.clone();
        classes.sort_unstable();
        assert_eq!(classes, vec![0, 1, 2]);
    }

    #[test]
    fn k4_is_not_tripartite_over_all_orientations() {
        let verdict = is_tripartite_spectral(&complete_graph(4), DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert!(!verdict.colorable);
        assert_eq!(verdict.orientations_checked, 64);
    }

    #[test]
    fn five_cycle_is_tripartite() {
        let verdict = is_tripartite_spectral(&cycle_graph(5), DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert!(verdict.colorable);
        assert!(verdict.witness.unwrap().is_proper(&cycle_graph(5).undirected()));
    }

    #[test]
    fn oracles_on_named_graphs() {
        assert!(bipartite_oracle(&cycle_graph(4)).0);
        assert!(!bipartite_oracle(&complete_graph(3)).0);
        let (k4_three, _) = three_color_oracle(&complete_graph(4), DEFAULT_ORACLE_BUDGET).unwrap();
        assert!(!k4_three);
        let (petersen_three, witness) = three_color_oracle(&petersen(), DEFAULT_ORACLE_BUDGET).unwrap();
        assert!(petersen_three);
        assert!(witness.unwrap().is_proper(&petersen().undirected()));
    }

    #[test]
    fn spectral_matches_oracle_on_random_graphs() {
        for seed in 0..40 {
            let g = random_graph(6, 0.5, seed).unwrap();
            let spectral = is_bipartite_spectral(&g).unwrap();
            let (oracle, _) = bipartite_oracle(&g);
            assert_eq!(spectral.colorable, oracle, "bipartite seed {}", seed);
            if let Some(w) = &spectral.witness {
                assert!(w.is_proper(&g.undirected()));
            }

            let spectral = is_tripartite_spectral(&g, DEFAULT_ENUMERATION_BUDGET).unwrap();
            let (oracle, _) = three_color_oracle(&g, DEFAULT_ORACLE_BUDGET).unwrap();
            assert_eq!(spectral.colorable, oracle, "tripartite seed {}", seed);
            if let Some(w) = &spectral.witness {
                assert!(w.is_proper(&g.undirected()));
            }
        }
    }

    #[test]
    fn bipartite_implies_tripartite() {
        for seed in 0..30 {
            let g = random_graph(6, 0.4, seed).unwrap();
            if g.vertex_count() >= 3 && is_bipartite_spectral(&g).unwrap().colorable {
                assert!(
                    is_tripartite_spectral(&g, DEFAULT_ENUMERATION_BUDGET)
                        .unwrap()
                        .colorable,
                    "seed {}",
                    seed
                );
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let path: Vec<(usize, usize)> = (0..21).map(|i| (i, i + 1)).collect();
        let g = DirectedGraph::from_edge_list(22, &path).unwrap();
        assert!(matches!(
            is_tripartite_spectral(&g, 20),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            three_color_oracle(&g, 12),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn zero_k_is_rejected() {
        assert!(matches!(
            is_bipartite_spectral_k(&cycle_graph(4), 0, 20),
            Err(Error::InvalidParameter { .. })
        ));
    }
}
