//! Seeds, the exchange relation and breadth-first enumeration of every seed
//! reachable by mutation.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{LaurentPoly, PolyError};
use crate::quiver::{Quiver, QuiverError};

/// Seed cap used when the caller does not pick one.
pub const DEFAULT_MAX_SEEDS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    /// A Laurent quotient failed to exist. The Laurent phenomenon rules this
    /// out, so it always indicates a bug.
    #[error("exchange relation at vertex {vertex} is not exactly divisible: {source}")]
    Exactness { vertex: usize, source: PolyError },
    #[error("two seeds share the cluster {cluster} but carry inconsistent quivers")]
    SeedConflict { cluster: String },
    #[error("seed cap must be at least 1")]
    ZeroCap,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    quiver: Quiver,
    cluster: Vec<LaurentPoly>,
}

impl Seed {
    /// The quiver with cluster `(x1, ..., xn)`.
    pub fn initial(quiver: &Quiver) -> Seed {
        let n = quiver.n();
        Seed {
            quiver: quiver.clone(),
            cluster: (1..=n).map(|j| LaurentPoly::var(n, j)).collect(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    /// Cluster variable at the 1-indexed vertex `j`.
    pub fn variable(&self, j: usize) -> &LaurentPoly {
        &self.cluster[j - 1]
    }

    /// The two monomials of the exchange relation at `j`: the product over
    /// arrows into `j` and the product over arrows out of `j`, each taken
    /// with multiplicity.
    pub fn exchange_monomials(&self, j: usize) -> Result<(LaurentPoly, LaurentPoly), ClusterError> {
        self.quiver.neighbourhood(j)?;
        let nvars = self.cluster[0].nvars();
        let mut incoming = LaurentPoly::one(nvars);
        let mut outgoing = LaurentPoly::one(nvars);
        for i in 1..=self.quiver.n() {
            let b = self.quiver.b(i, j);
            if b > 0 {
                incoming = &incoming * &self.cluster[i - 1].pow(b as u32);
            } else if b < 0 {
                outgoing = &outgoing * &self.cluster[i - 1].pow((-b) as u32);
            }
        }
        Ok((incoming, outgoing))
    }

    /// `P = prod_{i -> j} x_i + prod_{j -> i} x_i`.
    pub fn exchange_binomial(&self, j: usize) -> Result<LaurentPoly, ClusterError> {
        let (a, b) = self.exchange_monomials(j)?;
        Ok(&a + &b)
    }

    /// Mutation at `j`: the quiver mutates and `x_j` becomes `P / x_j`.
    pub fn mutate(&self, j: usize) -> Result<Seed, ClusterError> {
        let quiver = self.quiver.mutate(j)?;
        let numerator = self.exchange_binomial(j)?;
        let new_var = numerator
            .exact_div(&self.cluster[j - 1])
            .map_err(|source| ClusterError::Exactness { vertex: j, source })?;
        let mut cluster = self.cluster.clone();
        cluster[j - 1] = new_var;
        Ok(Seed { quiver, cluster })
    }

    /// Applies mutations left to right.
    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Seed, ClusterError> {
        let mut s = self.clone();
        for &j in seq {
            s = s.mutate(j)?;
        }
        Ok(s)
    }

    fn key(&self) -> Vec<LaurentPoly> {
        let mut k = self.cluster.clone();
        k.sort();
        k
    }
}

/// Everything found by [`enumerate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterInventory {
    pub nvars: usize,
    /// Distinct cluster variables in discovery order; the initial cluster
    /// comes first.
    pub variables: Vec<LaurentPoly>,
    /// Unordered clusters as sorted indices into `variables`.
    pub clusters: Vec<Vec<usize>>,
    pub seed_count: usize,
    /// The cap was hit before the search closed.
    pub truncated: bool,
}

impl ClusterInventory {
    pub fn variable_set(&self) -> BTreeSet<LaurentPoly> {
        self.variables.iter().cloned().collect()
    }

    pub fn cluster_sets(&self) -> BTreeSet<BTreeSet<LaurentPoly>> {
        self.clusters
            .iter()
            .map(|c| c.iter().map(|&i| self.variables[i].clone()).collect())
            .collect()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} variables, {} clusters, {}",
            self.variables.len(),
            self.clusters.len(),
            if self.truncated { "truncated" } else { "closed" }
        )
    }
}

/// Breadth-first closure over mutations from the initial seed of `quiver`.
///
/// Seeds are identified by their unordered cluster. Mutations are tried in
/// ascending vertex order. Discovering a new seed once `max_seeds` are
/// already known stops the search with `truncated = true`.
pub fn enumerate(quiver: &Quiver, max_seeds: usize) -> Result<ClusterInventory, ClusterError> {
    enumerate_from(Seed::initial(quiver), max_seeds)
}

/// Same as [`enumerate`] but starting from an arbitrary seed.
pub fn enumerate_from(start: Seed, max_seeds: usize) -> Result<ClusterInventory, ClusterError> {
    if max_seeds == 0 {
        return Err(ClusterError::ZeroCap);
    }
    let n = start.quiver.n();
    let nvars = start.cluster[0].nvars();
    let mut inv = ClusterInventory {
        nvars,
        variables: Vec::new(),
        clusters: Vec::new(),
        seed_count: 0,
        truncated: false,
    };
    let mut var_index: HashMap<LaurentPoly, usize> = HashMap::new();
    let mut seen: HashMap<Vec<LaurentPoly>, usize> = HashMap::new();
    let mut seeds: Vec<Seed> = Vec::new();
    let mut queue = VecDeque::new();

    let mut record = |seed: Seed,
                      inv: &mut ClusterInventory,
                      seen: &mut HashMap<Vec<LaurentPoly>, usize>,
                      seeds: &mut Vec<Seed>,
                      queue: &mut VecDeque<usize>| {
        let mut idx: Vec<usize> = seed
            .cluster
            .iter()
            .map(|v| {
                *var_index.entry(v.clone()).or_insert_with(|| {
                    inv.variables.push(v.clone());
                    inv.variables.len() - 1
                })
            })
            .collect();
        idx.sort_unstable();
        inv.clusters.push(idx);
        seen.insert(seed.key(), seeds.len());
        queue.push_back(seeds.len());
        seeds.push(seed);
    };

    record(start, &mut inv, &mut seen, &mut seeds, &mut queue);

    'search: while let Some(at) = queue.pop_front() {
        for j in 1..=n {
            let next = seeds[at].mutate(j)?;
            let key = next.key();
            if let Some(&known) = seen.get(&key) {
                check_consistent(&seeds[known], &next)?;
                continue;
            }
            if seeds.len() >= max_seeds {
                inv.truncated = true;
                break 'search;
            }
            record(next, &mut inv, &mut seen, &mut seeds, &mut queue);
        }
    }
    inv.seed_count = seeds.len();
    Ok(inv)
}

/// Two seeds with the same cluster must carry the same quiver once the
/// vertices are matched through their cluster variables.
fn check_consistent(known: &Seed, candidate: &Seed) -> Result<(), ClusterError> {
    let perm: Vec<usize> = candidate
        .cluster
        .iter()
        .map(|v| known.cluster.iter().position(|w| w == v).unwrap() + 1)
        .collect();
    if candidate.quiver.relabel(&perm) == known.quiver {
        Ok(())
    } else {
        let names: Vec<String> = known.cluster.iter().map(|v| v.to_fraction_string()).collect();
        Err(ClusterError::SeedConflict {
            cluster: format!("{{{}}}", names.join(", ")),
        })
    }
}

/// Re-validates that every variable is a normalized Laurent polynomial in the
/// inventory's ring and that clusters only reference known variables.
pub fn laurent_check(inv: &ClusterInventory) -> bool {
    let vars_ok = inv
        .variables
        .iter()
        .all(|v| v.nvars() == inv.nvars && !v.is_zero() && v.is_well_formed());
    let clusters_ok = inv
        .clusters
        .iter()
        .all(|c| c.iter().all(|&i| i < inv.variables.len()));
    vars_ok && clusters_ok
}

/// JSON form of an inventory. Cluster entries index into `variables`
/// (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InventoryReport {
    pub variable_count: usize,
    pub cluster_count: usize,
    pub seed_count: usize,
    pub truncated: bool,
    pub variables: Vec<String>,
    pub clusters: Vec<Vec<usize>>,
}

impl From<&ClusterInventory> for InventoryReport {
    fn from(inv: &ClusterInventory) -> Self {
        InventoryReport {
            variable_count: inv.variables.len(),
            cluster_count: inv.clusters.len(),
            seed_count: inv.seed_count,
            truncated: inv.truncated,
            variables: inv.variables.iter().map(|v| v.to_fraction_string()).collect(),
            clusters: inv.clusters.clone(),
        }
    }
}
