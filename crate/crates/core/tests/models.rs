//! Cross-checks between the cluster enumeration, the polygon model and the
//! frieze layer.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyamory::cluster::{enumerate, Seed, DEFAULT_MAX_SEEDS};
use polyamory::frieze::{all_triangulations, solve_polygon, symbolic_frieze, verify_frieze, Triangulation};
use polyamory::{laurent_check, LaurentPoly, Quiver};

fn catalan(n: usize) -> usize {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[test]
fn polygon_values_are_the_cluster_variables() {
    for n in 1..=4 {
        for t in all_triangulations(n) {
            let p = solve_polygon(&t).unwrap();
            let inv = enumerate(&t.quiver(), DEFAULT_MAX_SEEDS).unwrap();
            assert!(!inv.truncated);
            assert!(laurent_check(&inv));
            let values: BTreeSet<LaurentPoly> = p.diagonal_values().into_iter().map(|(_, v)| v).collect();
            assert_eq!(values, inv.variable_set(), "{:?}", t.diagonals());
        }
    }
}

#[test]
fn clusters_are_triangulations() {
    for n in 1..=4 {
        let all = all_triangulations(n);
        assert_eq!(all.len(), catalan(n + 1));
        let p = solve_polygon(&Triangulation::fan(n)).unwrap();
        let from_polygon: BTreeSet<BTreeSet<LaurentPoly>> = all
            .iter()
            .map(|t| t.diagonals().iter().map(|&(i, j)| p.get(i, j)).collect())
            .collect();
        let inv = enumerate(&Quiver::linear_a_forward(n), DEFAULT_MAX_SEEDS).unwrap();
        assert_eq!(from_polygon, inv.cluster_sets());
        assert_eq!(inv.variables.len(), n * (n + 3) / 2);
    }
}

#[test]
fn ptolemy_closure_on_the_fan() {
    for n in 1..=5 {
        assert!(solve_polygon(&Triangulation::fan(n)).unwrap().satisfies_ptolemy());
    }
}

#[test]
fn symbolic_friezes_of_every_triangulation() {
    for n in 1..=3 {
        for t in all_triangulations(n) {
            let rep = verify_frieze(&symbolic_frieze(&solve_polygon(&t).unwrap()));
            assert!(rep.all_passed(), "{:?}: {rep}", t.diagonals());
        }
    }
}

#[test]
fn mutation_follows_flips() {
    // mutating the fan seed at a vertex swaps that diagonal for the other
    // diagonal of its quadrilateral
    let t = Triangulation::fan(3);
    let p = solve_polygon(&t).unwrap();
    let seed = Seed::initial(&t.quiver());
    for (k, &(i, j)) in t.diagonals().iter().enumerate() {
        let mutated = seed.mutate(k + 1).unwrap();
        let new = mutated.variable(k + 1).clone();
        let others: Vec<(usize, usize)> = t.diagonals().iter().copied().filter(|&d| d != (i, j)).collect();
        let flipped = (0..6)
            .flat_map(|a| (a + 2..6).map(move |b| (a, b)))
            .filter(|&(a, b)| !(a == 0 && b == 5) && (a, b) != (i, j))
            .find(|&(a, b)| {
                let mut ds = others.clone();
                ds.push((a, b));
                Triangulation::new(3, &ds).is_ok()
            })
            .unwrap();
        assert_eq!(new, p.get(flipped.0, flipped.1));
    }
}

/// Random mutation walks, stopped once the exchange matrix leaves a small
/// range so the Laurent polynomials stay small.
#[test]
fn bounded_random_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rng.gen_range(1..=4);
        let mut b = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in i + 1..n {
                b[i][k] = rng.gen_range(-2..=2);
                b[k][i] = -b[i][k];
            }
        }
        let mut seed = Seed::initial(&Quiver::from_matrix(b).unwrap());
        for _ in 0..rng.gen_range(0..=8) {
            if seed.quiver().matrix().iter().flatten().any(|v| v.abs() > 4) {
                break;
            }
            let j = rng.gen_range(1..=n);
            let next = seed.mutate(j).unwrap();
            assert_eq!(next.mutate(j).unwrap(), seed);
            assert!(next.cluster().iter().all(LaurentPoly::is_well_formed));
            seed = next;
        }
    }
}
