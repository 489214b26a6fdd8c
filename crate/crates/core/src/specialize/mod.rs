//! Specialisations of initial cluster variables to `±1`, the polycule
//! criterion, and the polyamory decision procedures.
//!
//! A vertex `v` of a partially labelled quiver is polyamorous exactly when
//! its neighbourhood is a polycule: `v` is unlabelled, every neighbour is
//! labelled, and the number of arrows (with multiplicity) from `v` to
//! neighbours labelled `-1` is odd. Equivalently the exchange binomial at `v`
//! vanishes under the labelling.
//!
//! Three independent routes are provided: the neighbourhood criterion
//! ([`is_polycule`]), a linear system over GF(2) ([`enumerate_polyamorous`]),
//! and a direct check on enumerated cluster variables
//! ([`oracle_polyamorous`]).

mod gf2;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cluster::ClusterInventory;
use crate::exactpoly::{int_assignment, Assignment, PolyError};
use crate::quiver::{Quiver, QuiverError};

pub use gf2::{gf2_solve, AffineSolution, BinaryMatrix};

/// Largest vertex count accepted by subset enumeration.
pub const MAX_ENUMERATION_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("vertex {vertex} is specialised to {value}; only 1 and -1 are allowed here")]
    NonUnit { vertex: usize, value: i64 },
    #[error("vertex {0} is specialised, expected an unspecialised vertex")]
    Specialised(usize),
    #[error("inventory is truncated; the oracle needs every cluster variable")]
    TruncatedInventory,
    #[error("inventory lives in {got} variables but the quiver has {expected} vertices")]
    InventoryMismatch { expected: usize, got: usize },
    #[error("binary system dimensions do not agree")]
    DimensionMismatch,
    #[error("subset enumeration is limited to {max} vertices, quiver has {n}")]
    TooManyVertices { n: usize, max: usize },
    #[error("target vertex set is empty")]
    EmptyTarget,
    #[error("malformed specialisation: {0}")]
    Malformed(String),
}

/// Partial labelling of quiver vertices (1-indexed) by integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Specialization {
    #[serde(serialize_with = "ser_assign", deserialize_with = "de_assign")]
    assign: BTreeMap<usize, i64>,
}

fn ser_assign<S: Serializer>(map: &BTreeMap<usize, i64>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(map.len()))?;
    for (k, v) in map {
        m.serialize_entry(&k.to_string(), v)?;
    }
    m.end()
}

fn de_assign<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, i64>, D::Error> {
    let raw: BTreeMap<String, i64> = BTreeMap::deserialize(d)?;
    raw.into_iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<usize>()
                .map(|k| (k, v))
                .map_err(|_| serde::de::Error::custom(format!("vertex key {k:?} is not a positive integer")))
        })
        .collect()
}

impl Specialization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, i64)>>(pairs: I) -> Self {
        Specialization {
            assign: pairs.into_iter().collect(),
        }
    }

    pub fn set(&mut self, vertex: usize, value: i64) {
        self.assign.insert(vertex, value);
    }

    pub fn get(&self, vertex: usize) -> Option<i64> {
        self.assign.get(&vertex).copied()
    }

    pub fn is_assigned(&self, vertex: usize) -> bool {
        self.assign.contains_key(&vertex)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.assign.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.assign.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assign.is_empty()
    }

    pub fn assigned(&self) -> BTreeSet<usize> {
        self.assign.keys().copied().collect()
    }

    pub fn unassigned(&self, n: usize) -> BTreeSet<usize> {
        (1..=n).filter(|v| !self.assign.contains_key(v)).collect()
    }

    /// Some value is outside `{1, -1}`.
    pub fn non_unit(&self) -> bool {
        self.assign.values().any(|&v| v != 1 && v != -1)
    }

    /// All assigned vertices lie in `1..=n`.
    pub fn check_range(&self, n: usize) -> Result<(), SpecError> {
        match self.assign.keys().find(|&&v| v == 0 || v > n) {
            Some(&vertex) => Err(QuiverError::VertexOutOfRange { vertex, n }.into()),
            None => Ok(()),
        }
    }

    /// Range check plus the `±1` restriction.
    pub fn check_units(&self, n: usize) -> Result<(), SpecError> {
        self.check_range(n)?;
        match self.assign.iter().find(|(_, &v)| v != 1 && v != -1) {
            Some((&vertex, &value)) => Err(SpecError::NonUnit { vertex, value }),
            None => Ok(()),
        }
    }

    pub fn to_assignment(&self) -> Assignment {
        int_assignment(self.iter())
    }

    /// Merges two labellings; entries of `other` win.
    pub fn merged(&self, other: &Specialization) -> Specialization {
        let mut out = self.clone();
        out.assign.extend(other.iter());
        out
    }

    pub fn sign_vector(&self) -> Result<SignVector, SpecError> {
        self.iter()
            .map(|(vertex, value)| match value {
                1 => Ok(0),
                -1 => Ok(1),
                value => Err(SpecError::NonUnit { vertex, value }),
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(SignVector)
    }

    /// Labels `vertices[i]` with `(-1)^bits[i]`.
    pub fn from_signs(vertices: &[usize], signs: &SignVector) -> Self {
        assert_eq!(vertices.len(), signs.0.len());
        Self::from_pairs(
            vertices
                .iter()
                .zip(&signs.0)
                .map(|(&v, &b)| (v, if b & 1 == 1 { -1 } else { 1 })),
        )
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(k, v)| format!("x{k} = {v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Bits `s` with `x_j = (-1)^{s_j}` over the specialised vertices in
/// ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<u8>);

/// Whether the neighbourhood of `v` is a polycule under `sigma`.
pub fn is_polycule(q: &Quiver, sigma: &Specialization, v: usize) -> Result<bool, SpecError> {
    sigma.check_units(q.n())?;
    let neighbours = q.neighbours(v)?;
    if sigma.is_assigned(v) || neighbours.is_empty() {
        return Ok(false);
    }
    let mut parity = 0u64;
    for i in neighbours {
        match sigma.get(i) {
            None => return Ok(false),
            Some(-1) => parity += q.arrows_between(v, i)?,
            Some(_) => {}
        }
    }
    Ok(parity % 2 == 1)
}

/// Unassigned vertices whose neighbourhood is a polycule.
pub fn polyamorous_vertices(q: &Quiver, sigma: &Specialization) -> Result<BTreeSet<usize>, SpecError> {
    sigma.check_units(q.n())?;
    let mut out = BTreeSet::new();
    for v in sigma.unassigned(q.n()) {
        if is_polycule(q, sigma, v)? {
            out.insert(v);
        }
    }
    Ok(out)
}

/// Every remaining variable is polyamorous. Vacuously true when `sigma`
/// labels every vertex.
pub fn is_polyamorous_algebra(q: &Quiver, sigma: &Specialization) -> Result<bool, SpecError> {
    let found = polyamorous_vertices(q, sigma)?;
    Ok(found.len() == sigma.unassigned(q.n()).len())
}

/// No variables remain.
pub fn is_vacuous(q: &Quiver, sigma: &Specialization) -> bool {
    sigma.unassigned(q.n()).is_empty()
}

/// Decides polyamory of `j` from the cluster variables themselves: every
/// variable of the inventory, specialised by `sigma`, must be polynomial
/// in `x_j`.
pub fn oracle_polyamorous(
    q: &Quiver,
    sigma: &Specialization,
    j: usize,
    inv: &ClusterInventory,
) -> Result<bool, SpecError> {
    if inv.truncated {
        return Err(SpecError::TruncatedInventory);
    }
    if inv.nvars != q.n() {
        return Err(SpecError::InventoryMismatch {
            expected: q.n(),
            got: inv.nvars,
        });
    }
    sigma.check_units(q.n())?;
    q.neighbourhood(j)?;
    if sigma.is_assigned(j) {
        return Err(SpecError::Specialised(j));
    }
    let assignment = sigma.to_assignment();
    for y in &inv.variables {
        if !y.substitute(&assignment)?.is_polynomial_in(j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Why [`construct_specialization`] could not produce a labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasible {
    IsolatedVertex(usize),
    OverlappingNeighbourhoods(usize, usize),
    NoOddArrowCount(usize),
}

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasible::IsolatedVertex(v) => write!(f, "vertex {v} has no neighbours"),
            Infeasible::OverlappingNeighbourhoods(u, v) => {
                write!(f, "neighbourhoods of {u} and {v} intersect")
            }
            Infeasible::NoOddArrowCount(v) => {
                write!(f, "every neighbour of {v} is joined to it by an even number of arrows")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Found(Specialization),
    Infeasible(Infeasible),
}

/// Labels every vertex outside `targets` so that each target becomes
/// polyamorous, provided the targets have pairwise disjoint neighbourhoods.
///
/// Within each neighbourhood the neighbours are switched to `-1` in
/// ascending order until the arrow count to `-1` is odd; the rest get `+1`.
/// Vertices outside every neighbourhood get `+1`.
pub fn construct_specialization(
    q: &Quiver,
    targets: &BTreeSet<usize>,
) -> Result<Construction, SpecError> {
    if targets.is_empty() {
        return Err(SpecError::EmptyTarget);
    }
    let mut hoods = BTreeMap::new();
    for &v in targets {
        let nb = q.neighbours(v)?;
        if nb.is_empty() {
            return Ok(Construction::Infeasible(Infeasible::IsolatedVertex(v)));
        }
        hoods.insert(v, nb);
    }
    for (&u, nu) in &hoods {
        for (&v, nv) in hoods.range(u + 1..) {
            if nu.contains(&v) || nv.contains(&u) || !nu.is_disjoint(nv) {
                return Ok(Construction::Infeasible(Infeasible::OverlappingNeighbourhoods(u, v)));
            }
        }
    }

    let mut sigma = Specialization::from_pairs(
        (1..=q.n()).filter(|v| !targets.contains(v)).map(|v| (v, 1)),
    );
    for (&v, nb) in &hoods {
        let mut parity = 0u64;
        let mut done = false;
        for &i in nb {
            sigma.set(i, -1);
            parity += q.arrows_between(v, i)?;
            if parity % 2 == 1 {
                done = true;
                break;
            }
        }
        if !done {
            return Ok(Construction::Infeasible(Infeasible::NoOddArrowCount(v)));
        }
    }
    Ok(Construction::Found(sigma))
}

/// One polyamorous specialisation found by enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyamorousSpecialization {
    #[serde(flatten)]
    pub specialization: Specialization,
    pub unspecialised: BTreeSet<usize>,
    pub vacuous: bool,
}

impl PolyamorousSpecialization {
    fn sort_key(&self) -> (Vec<usize>, Vec<u8>) {
        let bits = self
            .specialization
            .sign_vector()
            .map(|s| s.0)
            .unwrap_or_default();
        (self.unspecialised.iter().copied().collect(), bits)
    }
}

fn sort_entries(v: &mut [PolyamorousSpecialization]) {
    v.sort_by_cached_key(PolyamorousSpecialization::sort_key);
}

/// The binary matrix with rows indexed by `rows` and columns by `cols`,
/// holding arrow counts mod 2.
pub fn reduced_minor(q: &Quiver, rows: &[usize], cols: &[usize]) -> BinaryMatrix {
    let mut m = BinaryMatrix::zeros(rows.len(), cols.len());
    for (r, &i) in rows.iter().enumerate() {
        for (c, &k) in cols.iter().enumerate() {
            m.set(r, c, (q.b(i, k).unsigned_abs() % 2) as u8);
        }
    }
    m
}

/// All polyamorous `±1` specialisations, found through the linear system:
/// for each independent vertex set `U` left unspecialised, solve
/// `M s = 1` where `M` is the mod-2 minor with rows `U` and columns the
/// remaining vertices. Sorted by `U`, then by sign vector.
pub fn enumerate_polyamorous(
    q: &Quiver,
    include_vacuous: bool,
) -> Result<Vec<PolyamorousSpecialization>, SpecError> {
    let n = q.n();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(SpecError::TooManyVertices {
            n,
            max: MAX_ENUMERATION_VERTICES,
        });
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let free: Vec<usize> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        if free.is_empty() && !include_vacuous {
            continue;
        }
        let free_set: BTreeSet<usize> = free.iter().copied().collect();
        if !q.is_independent_set(&free_set) {
            continue;
        }
        let fixed: Vec<usize> = (1..=n).filter(|v| !free_set.contains(v)).collect();
        let m = reduced_minor(q, &free, &fixed);
        let Some(sol) = gf2_solve(&m, &vec![1; free.len()])? else {
            continue;
        };
        for s in sol.solutions() {
            out.push(PolyamorousSpecialization {
                specialization: Specialization::from_signs(&fixed, &SignVector(s)),
                unspecialised: free_set.clone(),
                vacuous: free.is_empty(),
            });
        }
    }
    sort_entries(&mut out);
    Ok(out)
}

/// Reference route: every partial `±1` labelling filtered by
/// [`is_polyamorous_algebra`]. Same ordering as [`enumerate_polyamorous`].
pub fn brute_force_polyamorous(
    q: &Quiver,
    include_vacuous: bool,
) -> Result<Vec<PolyamorousSpecialization>, SpecError> {
    let n = q.n();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(SpecError::TooManyVertices {
            n,
            max: MAX_ENUMERATION_VERTICES,
        });
    }
    let mut out = Vec::new();
    for sigma in all_unit_labellings(n) {
        let vacuous = is_vacuous(q, &sigma);
        if vacuous && !include_vacuous {
            continue;
        }
        if is_polyamorous_algebra(q, &sigma)? {
            out.push(PolyamorousSpecialization {
                unspecialised: sigma.unassigned(n),
                specialization: sigma,
                vacuous,
            });
        }
    }
    sort_entries(&mut out);
    Ok(out)
}

/// All `3^n` partial labellings by `{1, -1}`.
pub fn all_unit_labellings(n: usize) -> impl Iterator<Item = Specialization> {
    (0..3u64.pow(n as u32)).map(move |mut code| {
        let mut sigma = Specialization::new();
        for v in 1..=n {
            match code % 3 {
                1 => sigma.set(v, 1),
                2 => sigma.set(v, -1),
                _ => {}
            }
            code /= 3;
        }
        sigma
    })
}
