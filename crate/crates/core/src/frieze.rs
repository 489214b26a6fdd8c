//! Type-A frieze patterns through triangulated polygons.
//!
//! A frieze with `n` nontrivial rows has period `n + 3` and is read off a
//! labelling `m{i,j}` of the vertex pairs of an `(n+3)`-gon: row `d`,
//! position `i` holds `m{i, i+d+1}`. Rows `0` and `n+1` are the polygon
//! edges (all 1) and rows `-1` and `n+2` the degenerate pairs (all 0).
//!
//! Polygon vertices `0..n+3` are numbered clockwise. Diagonals of a
//! triangulation become quiver vertices in canonical order: ascending first
//! endpoint, then descending second endpoint. For the fan at `0` this puts
//! `{0, n+1}` first.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{LaurentPoly, PolyError};
use crate::quiver::Quiver;
use crate::specialize::{is_polyamorous_algebra, SpecError, Specialization};

/// First polygon vertex of the window used by [`fundamental_domain`].
pub const FUNDAMENTAL_DOMAIN_START: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FriezeError {
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("specialisation {0} is not polyamorous")]
    NotPolyamorous(Specialization),
    #[error("variable x{0} is neither specialised nor assigned an integer")]
    MissingAssignment(usize),
    #[error("variable x{0} is both specialised and assigned")]
    AssignmentOverlap(usize),
    #[error("entry at row {row}, position {pos} is not an integer: {value}")]
    NonIntegral { row: usize, pos: usize, value: String },
    #[error("a frieze needs at least one nontrivial row")]
    NoRows,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    n: usize,
    diagonals: Vec<(usize, usize)>,
}

fn canonical_order(a: &(usize, usize), b: &(usize, usize)) -> std::cmp::Ordering {
    a.0.cmp(&b.0).then(b.1.cmp(&a.1))
}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

impl Triangulation {
    /// Validates `n` pairwise non-crossing diagonals of the `(n+3)`-gon.
    pub fn new(n: usize, diagonals: &[(usize, usize)]) -> Result<Self, FriezeError> {
        let bad = |msg: String| Err(FriezeError::InvalidTriangulation(msg));
        if n == 0 {
            return Err(FriezeError::NoRows);
        }
        let size = n + 3;
        let mut ds: Vec<(usize, usize)> = Vec::with_capacity(diagonals.len());
        for &(a, b) in diagonals {
            let (i, j) = (a.min(b), a.max(b));
            if j >= size {
                return bad(format!("vertex {j} outside the {size}-gon"));
            }
            if j - i < 2 || (i == 0 && j == size - 1) {
                return bad(format!("{{{i}, {j}}} is not a diagonal"));
            }
            if ds.contains(&(i, j)) {
                return bad(format!("diagonal {{{i}, {j}}} repeated"));
            }
            ds.push((i, j));
        }
        if ds.len() != n {
            return bad(format!("expected {n} diagonals, got {}", ds.len()));
        }
        for (k, &a) in ds.iter().enumerate() {
            for &b in &ds[k + 1..] {
                if crosses(a, b) {
                    return bad(format!("{{{}, {}}} crosses {{{}, {}}}", a.0, a.1, b.0, b.1));
                }
            }
        }
        ds.sort_by(canonical_order);
        Ok(Triangulation { n, diagonals: ds })
    }

    /// All diagonals from vertex 0.
    pub fn fan(n: usize) -> Self {
        let ds: Vec<_> = (2..n + 2).map(|j| (0, j)).collect();
        Self::new(n, &ds).expect("fan triangulation is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn polygon_size(&self) -> usize {
        self.n + 3
    }

    /// Diagonals in canonical order; entry `k - 1` is quiver vertex `k`.
    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    fn is_side(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        let size = self.polygon_size();
        j - i == 1 || (i == 0 && j == size - 1) || self.diagonals.contains(&(i, j))
    }

    fn vertex_of(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.diagonals.iter().position(|&d| d == key).map(|p| p + 1)
    }

    /// Triangles `(a, b, c)`, `a < b < c`, cut out by the triangulation.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let size = self.polygon_size();
        let mut out = Vec::new();
        for a in 0..size {
            for b in a + 1..size {
                for c in b + 1..size {
                    if self.is_side(a, b) && self.is_side(b, c) && self.is_side(a, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// One arrow between diagonals sharing a triangle, following the
    /// clockwise order of that triangle's sides.
    pub fn quiver(&self) -> Quiver {
        let mut arrows = Vec::new();
        for [a, b, c] in self.triangles() {
            let sides = [(a, b), (b, c), (c, a)];
            for k in 0..3 {
                let (s, t) = (sides[k], sides[(k + 1) % 3]);
                if let (Some(u), Some(v)) = (self.vertex_of(s.0, s.1), self.vertex_of(t.0, t.1)) {
                    arrows.push((u, v, 1));
                }
            }
        }
        Quiver::from_arrows(self.n, &arrows).expect("triangulation quiver is valid")
    }

    pub fn to_file(&self) -> TriangulationFile {
        TriangulationFile {
            n: self.n,
            diagonals: self.diagonals.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

/// `{"n": 2, "diagonals": [[0, 2], [0, 3]]}` with 0-indexed polygon vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationFile {
    pub n: usize,
    pub diagonals: Vec<[usize; 2]>,
}

impl TryFrom<TriangulationFile> for Triangulation {
    type Error = FriezeError;

    fn try_from(f: TriangulationFile) -> Result<Self, Self::Error> {
        let ds: Vec<_> = f.diagonals.iter().map(|&[i, j]| (i, j)).collect();
        Triangulation::new(f.n, &ds)
    }
}

/// Every triangulation of the `(n+3)`-gon, built by choosing the apex over
/// the edge `{0, n+2}` and recursing on both sides.
pub fn all_triangulations(n: usize) -> Vec<Triangulation> {
    fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if hi - lo < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for apex in lo + 1..hi {
            for left in rec(lo, apex) {
                for right in rec(apex, hi) {
                    let mut ds = left.clone();
                    ds.extend(&right);
                    if apex - lo >= 2 {
                        ds.push((lo, apex));
                    }
                    if hi - apex >= 2 {
                        ds.push((apex, hi));
                    }
                    out.push(ds);
                }
            }
        }
        out
    }
    rec(0, n + 2)
        .into_iter()
        .map(|ds| Triangulation::new(n, &ds).expect("generated triangulation is valid"))
        .collect()
}

/// Values on all vertex pairs of the polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonLabelling {
    triangulation: Triangulation,
    values: BTreeMap<(usize, usize), LaurentPoly>,
}

impl PolygonLabelling {
    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn n(&self) -> usize {
        self.triangulation.n
    }

    pub fn nvars(&self) -> usize {
        self.triangulation.n
    }

    /// `m{i,j}`, symmetric in its arguments, `0` on the diagonal of the
    /// index square. Indices are taken mod the polygon size.
    pub fn get(&self, i: usize, j: usize) -> LaurentPoly {
        let size = self.triangulation.polygon_size();
        let (i, j) = (i % size, j % size);
        if i == j {
            return LaurentPoly::zero(self.nvars());
        }
        self.values[&(i.min(j), i.max(j))].clone()
    }

    /// Values on the diagonals, in `(i, j)` order.
    pub fn diagonal_values(&self) -> Vec<((usize, usize), LaurentPoly)> {
        let size = self.triangulation.polygon_size();
        self.values
            .iter()
            .filter(|(&(i, j), _)| j - i >= 2 && !(i == 0 && j == size - 1))
            .map(|(&k, v)| (k, v.clone()))
            .collect()
    }

    /// Checks `m_ik m_jl = m_ij m_kl + m_il m_jk` for every `i < j < k < l`.
    pub fn satisfies_ptolemy(&self) -> bool {
        let size = self.triangulation.polygon_size();
        for i in 0..size {
            for j in i + 1..size {
                for k in j + 1..size {
                    for l in k + 1..size {
                        let lhs = &self.get(i, k) * &self.get(j, l);
                        let rhs = &(&self.get(i, j) * &self.get(k, l)) + &(&self.get(i, l) * &self.get(j, k));
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Applies `f` to every stored value.
    pub fn map<F>(&self, mut f: F) -> Result<PolygonLabelling, FriezeError>
    where
        F: FnMut(&LaurentPoly) -> Result<LaurentPoly, FriezeError>,
    {
        let mut values = BTreeMap::new();
        for (k, v) in &self.values {
            values.insert(*k, f(v)?);
        }
        Ok(PolygonLabelling {
            triangulation: self.triangulation.clone(),
            values,
        })
    }
}

/// Puts `x_k` on diagonal `k`, `1` on the edges, and fills every other pair
/// by Ptolemy exchanges, always taking the smallest pair that can be filled.
pub fn solve_polygon(t: &Triangulation) -> Result<PolygonLabelling, FriezeError> {
    let n = t.n;
    let size = t.polygon_size();
    let mut values: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
    for i in 0..size {
        let j = (i + 1) % size;
        values.insert((i.min(j), i.max(j)), LaurentPoly::one(n));
    }
    for (k, &d) in t.diagonals.iter().enumerate() {
        values.insert(d, LaurentPoly::var(n, k + 1));
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let total = size * (size - 1) / 2;

    while values.len() < total {
        let mut filled = None;
        'pairs: for i in 0..size {
            for j in i + 2..size {
                if values.contains_key(&(i, j)) {
                    continue;
                }
                // quadrilateral i < k < j < l (cyclically) with i, j opposite
                for k in i + 1..j {
                    for l in (j + 1..size).chain(0..i) {
                        let (Some(kl), Some(ik), Some(jl), Some(il), Some(kj)) = (
                            values.get(&key(k, l)),
                            values.get(&key(i, k)),
                            values.get(&key(j, l)),
                            values.get(&key(i, l)),
                            values.get(&key(k, j)),
                        ) else {
                            continue;
                        };
                        let num = &(ik * jl) + &(il * kj);
                        filled = Some(((i, j), num.exact_div(kl)?));
                        break 'pairs;
                    }
                }
            }
        }
        let (pair, value) = filled.expect("flip graph is connected");
        values.insert(pair, value);
    }
    Ok(PolygonLabelling {
        triangulation: t.clone(),
        values,
    })
}

/// Entry type of a frieze: integers or Laurent polynomials.
pub trait FriezeValue: Clone + PartialEq {
    fn times(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn is_zero_value(&self) -> bool;
    fn is_one_value(&self) -> bool;
    fn render(&self) -> String;
    fn to_json(&self) -> serde_json::Value;
}

impl FriezeValue for BigInt {
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn is_one_value(&self) -> bool {
        self.is_one()
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> serde_json::Value {
        match i64::try_from(self) {
            Ok(v) => serde_json::Value::from(v),
            Err(_) => serde_json::Value::from(self.to_string()),
        }
    }
}

impl FriezeValue for LaurentPoly {
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn is_one_value(&self) -> bool {
        self.is_one()
    }
    fn render(&self) -> String {
        self.to_fraction_string()
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.to_fraction_string())
    }
}

/// Frieze with `n` nontrivial rows and period `n + 3`. Row `d`, position
/// `i` is `m{i, i+d+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frieze<T> {
    n: usize,
    rows: Vec<Vec<T>>,
    zero: T,
    one: T,
}

impl<T: FriezeValue> Frieze<T> {
    /// `rows[d-1][i]` is the entry at row `d`, position `i`.
    pub fn from_rows(rows: Vec<Vec<T>>, zero: T, one: T) -> Result<Self, FriezeError> {
        let n = rows.len();
        if n == 0 {
            return Err(FriezeError::NoRows);
        }
        if rows.iter().any(|r| r.len() != n + 3) {
            return Err(FriezeError::InvalidTriangulation(format!(
                "every row of a {n}-row frieze needs {} entries",
                n + 3
            )));
        }
        Ok(Frieze { n, rows, zero, one })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> usize {
        self.n + 3
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    /// Entry at any row `-1..=n+2`, any position (taken mod the period).
    pub fn entry(&self, row: i64, pos: i64) -> &T {
        let n = self.n as i64;
        let p = pos.rem_euclid(self.period() as i64) as usize;
        match row {
            -1 => &self.zero,
            0 => &self.one,
            r if r == n + 1 => &self.one,
            r if r == n + 2 => &self.zero,
            r if (1..=n).contains(&r) => &self.rows[(r - 1) as usize][p],
            r => panic!("row {r} outside -1..={}", n + 2),
        }
    }

    /// Replaces one nontrivial entry.
    pub fn set(&mut self, row: usize, pos: usize, value: T) {
        self.rows[row - 1][pos] = value;
    }

    pub fn map<U: FriezeValue, F: FnMut(&T) -> U>(&self, mut f: F) -> Frieze<U> {
        Frieze {
            n: self.n,
            rows: self.rows.iter().map(|r| r.iter().map(&mut f).collect()).collect(),
            zero: f(&self.zero),
            one: f(&self.one),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "period": self.period(),
            "rows": self.rows.iter()
                .map(|r| r.iter().map(FriezeValue::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

impl Frieze<LaurentPoly> {
    pub fn from_labelling(p: &PolygonLabelling) -> Self {
        let n = p.n();
        let rows = (1..=n)
            .map(|d| (0..n + 3).map(|i| p.get(i, i + d + 1)).collect())
            .collect();
        Frieze {
            n,
            rows,
            zero: LaurentPoly::zero(p.nvars()),
            one: LaurentPoly::one(p.nvars()),
        }
    }

    /// Integer frieze when every entry is constant.
    pub fn to_integer(&self) -> Result<Frieze<BigInt>, FriezeError> {
        let mut rows = Vec::with_capacity(self.n);
        for (d, r) in self.rows.iter().enumerate() {
            let mut row = Vec::with_capacity(r.len());
            for (pos, v) in r.iter().enumerate() {
                row.push(v.constant_value().ok_or_else(|| FriezeError::NonIntegral {
                    row: d + 1,
                    pos,
                    value: v.to_fraction_string(),
                })?);
            }
            rows.push(row);
        }
        Ok(Frieze {
            n: self.n,
            rows,
            zero: BigInt::zero(),
            one: BigInt::one(),
        })
    }
}

/// The frieze of the polygon labelling, entries in the initial variables.
pub fn symbolic_frieze(p: &PolygonLabelling) -> Frieze<LaurentPoly> {
    Frieze::from_labelling(p)
}

/// Substitutes the `±1` labelling `sigma` (on the triangulation's quiver
/// vertices) into every polygon value.
pub fn specialised_labelling(
    p: &PolygonLabelling,
    sigma: &Specialization,
) -> Result<PolygonLabelling, FriezeError> {
    sigma.check_units(p.n())?;
    let a = sigma.to_assignment();
    p.map(|v| Ok(v.substitute(&a)?))
}

/// Integer frieze from a polyamorous `sigma` followed by integer values for
/// the remaining variables.
pub fn frieze_from_labelling(
    p: &PolygonLabelling,
    sigma: &Specialization,
    int_assign: &Specialization,
) -> Result<Frieze<BigInt>, FriezeError> {
    let q = p.triangulation().quiver();
    sigma.check_units(q.n())?;
    int_assign.check_range(q.n())?;
    if !is_polyamorous_algebra(&q, sigma)? {
        return Err(FriezeError::NotPolyamorous(sigma.clone()));
    }
    for v in 1..=q.n() {
        match (sigma.is_assigned(v), int_assign.is_assigned(v)) {
            (true, true) => return Err(FriezeError::AssignmentOverlap(v)),
            (false, false) => return Err(FriezeError::MissingAssignment(v)),
            _ => {}
        }
    }
    let special = specialised_labelling(p, sigma)?;
    let ints = int_assign.to_assignment();
    let full = special.map(|v| Ok(v.substitute(&ints)?))?;
    Frieze::from_labelling(&full).to_integer()
}

/// Outcome of one family of checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    /// `(row, position)` of the first failure.
    pub first_violation: Option<(i64, usize)>,
}

impl Check {
    fn from(first: Option<(i64, usize)>) -> Self {
        Check {
            passed: first.is_none(),
            first_violation: first,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_violation {
            None => f.write_str("pass"),
            Some((r, p)) => write!(f, "FAIL at row {r}, position {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FriezeReport {
    pub diamond: Check,
    pub tame: Check,
    pub glide: Check,
}

impl FriezeReport {
    pub fn all_passed(&self) -> bool {
        self.diamond.passed && self.tame.passed && self.glide.passed
    }
}

impl fmt::Display for FriezeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "diamond rule: {}", self.diamond)?;
        writeln!(f, "tameness: {}", self.tame)?;
        write!(f, "glide symmetry: {}", self.glide)
    }
}

fn det3<T: FriezeValue>(m: &[[T; 3]; 3]) -> T {
    let minor = |a: &T, b: &T, c: &T, d: &T| a.times(d).minus(&b.times(c));
    let t0 = m[0][0].times(&minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2]));
    let t1 = m[0][1].times(&minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2]));
    let t2 = m[0][2].times(&minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1]));
    t0.minus(&t1).plus(&t2)
}

/// Diamond rule on every 2x2 diamond touching rows `-1..=n+2`, vanishing
/// of every 3x3 diamond determinant, and the glide symmetry
/// `entry(d, i) = entry(n+1-d, i+d+1)`, all read from the entry array.
pub fn verify_frieze<T: FriezeValue>(f: &Frieze<T>) -> FriezeReport {
    let n = f.n as i64;
    let period = f.period() as i64;

    let mut diamond = None;
    'd: for r in 0..=n + 1 {
        for i in 0..period {
            let a = f.entry(r, i);
            let d = f.entry(r, i + 1);
            let b = f.entry(r - 1, i + 1);
            let c = f.entry(r + 1, i);
            if !a.times(d).minus(&b.times(c)).is_one_value() {
                diamond = Some((r, i as usize));
                break 'd;
            }
        }
    }

    let mut tame = None;
    't: for r in 1..=n {
        for i in 0..period {
            let m: [[T; 3]; 3] = std::array::from_fn(|a| {
                std::array::from_fn(|b| f.entry(r + b as i64 - a as i64, i + a as i64).clone())
            });
            if !det3(&m).is_zero_value() {
                tame = Some((r, ((i + 1) % period) as usize));
                break 't;
            }
        }
    }

    let mut glide = None;
    'g: for d in 1..=n {
        for i in 0..period {
            if f.entry(d, i) != f.entry(n + 1 - d, i + d + 1) {
                glide = Some((d, i as usize));
                break 'g;
            }
        }
    }

    FriezeReport {
        diamond: Check::from(diamond),
        tame: Check::from(tame),
        glide: Check::from(glide),
    }
}

/// Nontrivial entries of one glide fundamental domain, row by row: row `d`
/// contributes positions `s..=s+n+1-d` with `s` = [`FUNDAMENTAL_DOMAIN_START`].
/// Together they hold each diagonal of the polygon exactly once.
pub fn fundamental_domain<T: FriezeValue>(f: &Frieze<T>) -> Vec<T> {
    fundamental_domain_positions(f.n)
        .into_iter()
        .map(|(d, i)| f.entry(d as i64, i as i64).clone())
        .collect()
}

/// `(row, position)` pairs of [`fundamental_domain`].
pub fn fundamental_domain_positions(n: usize) -> Vec<(usize, usize)> {
    let s = FUNDAMENTAL_DOMAIN_START;
    (1..=n)
        .flat_map(|d| (s..=s + n + 1 - d).map(move |i| (d, i)))
        .collect()
}

/// Options for [`render_frieze`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    /// Entries per printed row.
    pub width: usize,
    /// Suffix fundamental-domain entries with `*`.
    pub mark_domain: bool,
}

impl Layout {
    pub fn for_rows(n: usize) -> Self {
        Layout {
            width: 2 * (n + 3),
            mark_domain: false,
        }
    }
}

/// Offset between display slot and frieze position.
const DISPLAY_PHASE: i64 = 2;

/// Staggered text layout including the border rows. Printed line `t`
/// (`t = 0` is the top row of zeros) shows row `t - 1`; odd lines are
/// shifted by half an entry. Slot `k` of line `t` holds position
/// `k - floor(t/2) + 2`.
pub fn render_frieze<T: FriezeValue>(f: &Frieze<T>, layout: Layout) -> String {
    let n = f.n as i64;
    let marked: BTreeSet<(usize, usize)> = if layout.mark_domain {
        fundamental_domain_positions(f.n).into_iter().collect()
    } else {
        BTreeSet::new()
    };
    let lines: Vec<Vec<String>> = (0..n + 4)
        .map(|t| {
            let row = t - 1;
            (0..layout.width as i64)
                .map(|k| {
                    let pos = k - t / 2 + DISPLAY_PHASE;
                    let mut s = f.entry(row, pos).render();
                    if (1..=n).contains(&row)
                        && pos >= 0
                        && marked.contains(&(row as usize, pos as usize))
                    {
                        s.push('*');
                    }
                    s
                })
                .collect()
        })
        .collect();
    let w = lines.iter().flatten().map(String::len).max().unwrap_or(1);
    let half = (w + 2) / 2;
    let mut out = String::new();
    for (t, cells) in lines.iter().enumerate() {
        let mut line = String::new();
        for (k, cell) in cells.iter().enumerate() {
            let start = (2 * k + t % 2) * half;
            let col = start + w - cell.len();
            while line.len() < col {
                line.push(' ');
            }
            line.push_str(cell);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Values `[m02, m13, m24, m30, m41]` of a pentagon, i.e. the first
/// nontrivial row of a two-row frieze.
pub type PentagonRow = [i64; 5];

/// Row of the unique two-row Conway-Coxeter frieze as produced by the fan
/// triangulation with both variables set to 1.
pub const CONWAY_COXETER_ROW: PentagonRow = [1, 2, 2, 1, 3];

/// First row of the family obtained from the fan with `x2 = -1`, `x1 = t`.
pub fn negative_family_row(t: i64) -> PentagonRow {
    [-1, -1 - t, 0, t, -1]
}

fn pentagon_value(row: &PentagonRow, i: usize, j: usize) -> i64 {
    let (i, j) = (i % 5, j % 5);
    match (j + 5 - i) % 5 {
        0 => 0,
        1 | 4 => 1,
        2 => row[i],
        _ => row[j],
    }
}

/// All Ptolemy relations on the pentagon hold.
pub fn pentagon_is_frieze(row: &PentagonRow) -> bool {
    let m = |i, j| pentagon_value(row, i, j);
    (0..5).all(|skip| {
        let v: Vec<usize> = (0..5).filter(|&x| x != skip).collect();
        let (i, j, k, l) = (v[0], v[1], v[2], v[3]);
        m(i, k) * m(j, l) == m(i, j) * m(k, l) + m(i, l) * m(j, k)
    })
}

/// Images of a pentagon row under rotations, then under rotations composed
/// with the orientation reversal `m{i,j} -> m{-i,-j}`.
pub fn dihedral_images(row: &PentagonRow) -> Vec<PentagonRow> {
    let mut out = Vec::with_capacity(10);
    for s in 0..5 {
        out.push(std::array::from_fn(|i| row[(i + s) % 5]));
    }
    for s in 0..5 {
        out.push(std::array::from_fn(|i| row[(15 - i - 2 + s) % 5]));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoRowClassification {
    pub bound: i64,
    pub total: usize,
    /// Translates of the Conway-Coxeter frieze.
    pub conway_coxeter: Vec<PentagonRow>,
    /// Members of the negative family, with their parameter `t`.
    pub negative_family: Vec<(PentagonRow, i64)>,
    pub unexplained: Vec<PentagonRow>,
    /// All-positive friezes found (should equal the translate count).
    pub positive: usize,
}

/// Exhaustive search over pentagon labellings with `|m| <= bound`.
pub fn classify_two_row_friezes(bound: i64) -> TwoRowClassification {
    let mut report = TwoRowClassification {
        bound,
        total: 0,
        conway_coxeter: Vec::new(),
        negative_family: Vec::new(),
        unexplained: Vec::new(),
        positive: 0,
    };
    let cc_translates: Vec<PentagonRow> = dihedral_images(&CONWAY_COXETER_ROW)[..5].to_vec();
    let range = -bound..=bound;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    for e in range.clone() {
                        let row = [a, b, c, d, e];
                        if !pentagon_is_frieze(&row) {
                            continue;
                        }
                        report.total += 1;
                        if row.iter().all(|&x| x > 0) {
                            report.positive += 1;
                        }
                        if cc_translates.contains(&row) {
                            report.conway_coxeter.push(row);
                        } else if let Some(t) = dihedral_images(&row)
                            .iter()
                            .find(|g| **g == negative_family_row(g[3]))
                            .map(|g| g[3])
                        {
                            report.negative_family.push((row, t));
                        } else {
                            report.unexplained.push(row);
                        }
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{enumerate, DEFAULT_MAX_SEEDS};

    fn x(n: usize, j: usize) -> LaurentPoly {
        LaurentPoly::var(n, j)
    }

    fn int_frieze(rows: Vec<Vec<i64>>) -> Frieze<BigInt> {
        Frieze::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
            BigInt::zero(),
            BigInt::one(),
        )
        .unwrap()
    }

    #[test]
    fn triangulation_validation() {
        assert!(Triangulation::new(2, &[(0, 2), (1, 3)]).is_err());
        assert!(Triangulation::new(2, &[(0, 1), (0, 3)]).is_err());
        assert!(Triangulation::new(2, &[(0, 4), (0, 3)]).is_err());
        assert!(Triangulation::new(2, &[(0, 2)]).is_err());
        assert!(Triangulation::new(2, &[(0, 2), (2, 0)]).is_err());
        assert!(Triangulation::new(2, &[(0, 2), (0, 7)]).is_err());
        let t = Triangulation::new(2, &[(2, 0), (0, 3)]).unwrap();
        assert_eq!(t.diagonals(), &[(0, 3), (0, 2)]);
        assert_eq!(t, Triangulation::fan(2));
    }

    #[test]
    fn quivers_of_triangulations() {
        let q = Triangulation::fan(2).quiver();
        assert_eq!(q, Quiver::linear_a_forward(2));
        let q = Triangulation::new(1, &[(0, 2)]).unwrap().quiver();
        assert_eq!(q.n(), 1);
        assert_eq!(Triangulation::fan(3).quiver(), Quiver::linear_a_forward(3));
        // zig-zag in the hexagon: triangle {1,3,5} bounded by three diagonals
        let t = Triangulation::new(3, &[(1, 3), (3, 5), (1, 5)]).unwrap();
        assert_eq!(t.quiver().arrows().len(), 3);
    }

    #[test]
    fn triangulation_counts_are_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132];
        for n in 1..=5 {
            let all = all_triangulations(n);
            assert_eq!(all.len(), catalan[n + 1]);
            let distinct: BTreeSet<_> = all.iter().map(|t| t.diagonals().to_vec()).collect();
            assert_eq!(distinct.len(), all.len());
            for t in &all {
                assert_eq!(t.triangles().len(), n + 1);
            }
        }
    }

    #[test]
    fn pentagon_fan_values() {
        let p = solve_polygon(&Triangulation::fan(2)).unwrap();
        let got: BTreeSet<_> = p.diagonal_values().into_iter().map(|(_, v)| v).collect();
        let inv = enumerate(&Quiver::linear_a_forward(2), DEFAULT_MAX_SEEDS).unwrap();
        assert_eq!(got, inv.variable_set());
        assert!(p.satisfies_ptolemy());
    }

    #[test]
    fn square_other_diagonal() {
        let p = solve_polygon(&Triangulation::new(1, &[(0, 2)]).unwrap()).unwrap();
        assert_eq!(p.get(1, 3), LaurentPoly::monomial(1, vec![-1], 2));
    }

    #[test]
    fn hexagon_matches_a3() {
        let t = Triangulation::fan(3);
        let p = solve_polygon(&t).unwrap();
        let values: BTreeSet<_> = p.diagonal_values().into_iter().map(|(_, v)| v).collect();
        assert_eq!(values.len(), 9);
        let inv = enumerate(&t.quiver(), DEFAULT_MAX_SEEDS).unwrap();
        assert_eq!(values, inv.variable_set());
    }

    #[test]
    fn conway_coxeter_from_all_ones() {
        let p = solve_polygon(&Triangulation::fan(2)).unwrap();
        let f = frieze_from_labelling(&p, &Specialization::from_pairs([(1, 1), (2, 1)]), &Specialization::new()).unwrap();
        let row = |d: usize| f.rows()[d - 1].iter().map(|v| i64::try_from(v).unwrap()).collect::<Vec<_>>();
        assert_eq!(row(1), vec![1, 2, 2, 1, 3]);
        assert_eq!(row(2), vec![1, 3, 1, 2, 2]);
        assert!(verify_frieze(&f).all_passed());
    }

    #[test]
    fn negative_family() {
        let p = solve_polygon(&Triangulation::fan(2)).unwrap();
        let sigma = Specialization::from_pairs([(2, -1)]);
        for t in [-2i64, 0, 5] {
            let f = frieze_from_labelling(&p, &sigma, &Specialization::from_pairs([(1, t)])).unwrap();
            let row = |d: usize| f.rows()[d - 1].iter().map(|v| i64::try_from(v).unwrap()).collect::<Vec<_>>();
            assert_eq!(row(1), negative_family_row(t).to_vec());
            assert_eq!(row(1)[1..], [-1 - t, 0, t, -1]);
            assert_eq!(row(2), vec![t, -1, -1, -1 - t, 0]);
            assert!(verify_frieze(&f).all_passed());
        }
    }

    #[test]
    fn frieze_errors() {
        let p = solve_polygon(&Triangulation::fan(2)).unwrap();
        let ints = Specialization::from_pairs([(1, 3)]);
        assert!(matches!(
            frieze_from_labelling(&p, &Specialization::from_pairs([(2, 1)]), &ints),
            Err(FriezeError::NotPolyamorous(_))
        ));
        assert_eq!(
            frieze_from_labelling(&p, &Specialization::from_pairs([(2, -1)]), &Specialization::new()),
            Err(FriezeError::MissingAssignment(1))
        );
        assert_eq!(
            frieze_from_labelling(
                &p,
                &Specialization::from_pairs([(2, -1)]),
                &Specialization::from_pairs([(1, 1), (2, 4)])
            ),
            Err(FriezeError::AssignmentOverlap(2))
        );
        assert!(matches!(
            frieze_from_labelling(&p, &Specialization::from_pairs([(2, 3)]), &ints),
            Err(FriezeError::Spec(SpecError::NonUnit { .. }))
        ));
    }

    #[test]
    fn verify_examples() {
        let cc = int_frieze(vec![vec![1, 2, 2, 1, 3], vec![1, 3, 1, 2, 2]]);
        assert!(verify_frieze(&cc).all_passed());

        let t0 = int_frieze(vec![vec![-1, -1, 0, 0, -1], vec![0, -1, -1, -1, 0]]);
        let rep = verify_frieze(&t0);
        assert!(rep.all_passed(), "{rep}");

        let mut broken = cc.clone();
        broken.set(2, 1, BigInt::from(4));
        let rep = verify_frieze(&broken);
        assert!(!rep.diamond.passed);
        assert!(rep.diamond.first_violation.is_some());
        assert!(!rep.glide.passed);
    }

    #[test]
    fn symbolic_identities() {
        for n in 1..=4 {
            let p = solve_polygon(&Triangulation::fan(n)).unwrap();
            let rep = verify_frieze(&symbolic_frieze(&p));
            assert!(rep.all_passed(), "n = {n}: {rep}");
        }
    }

    #[test]
    fn ptolemy_closure_all_triangulations() {
        for n in 1..=4 {
            for t in all_triangulations(n) {
                assert!(solve_polygon(&t).unwrap().satisfies_ptolemy());
            }
        }
    }

    #[test]
    fn fundamental_domain_of_pentagon() {
        let p = solve_polygon(&Triangulation::fan(2)).unwrap();
        let fd = fundamental_domain(&symbolic_frieze(&p));
        let one = LaurentPoly::one(2);
        let inv = |v: LaurentPoly| v.inverse().unwrap();
        let expected = vec![
            (&one + &x(2, 2)) * inv(x(2, 1)),
            x(2, 1),
            (&(&one + &x(2, 1)) + &x(2, 2)) * inv(x(2, 1) * x(2, 2)),
            x(2, 2),
            (&one + &x(2, 1)) * inv(x(2, 2)),
        ];
        assert_eq!(fd, expected);
        for (n, size) in [(1, 2), (2, 5), (3, 9), (4, 14)] {
            assert_eq!(fundamental_domain_positions(n).len(), size);
            let p = solve_polygon(&Triangulation::fan(n)).unwrap();
            let fd: BTreeSet<_> = fundamental_domain(&symbolic_frieze(&p)).into_iter().collect();
            assert_eq!(fd.len(), size);
        }
    }

    #[test]
    fn render_conway_coxeter() {
        let p = solve_polygon(&Triangulation::fan(2)).unwrap();
        let f = frieze_from_labelling(&p, &Specialization::from_pairs([(1, 1), (2, 1)]), &Specialization::new()).unwrap();
        let text = render_frieze(&f, Layout::for_rows(2));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "0 0 0 0 0 0 0 0 0 0");
        assert_eq!(lines[1], " 1 1 1 1 1 1 1 1 1 1");
        assert_eq!(lines[2], "2 2 1 3 1 2 2 1 3 1");
        assert_eq!(lines[3], " 3 1 2 2 1 3 1 2 2 1");
        assert_eq!(lines[4], "1 1 1 1 1 1 1 1 1 1");
        assert_eq!(lines[5], " 0 0 0 0 0 0 0 0 0 0");
        let marked = render_frieze(&f, Layout { width: 10, mark_domain: true });
        assert_eq!(marked.matches('*').count(), 5);
    }

    #[test]
    fn pentagon_rows() {
        assert!(pentagon_is_frieze(&CONWAY_COXETER_ROW));
        assert!(pentagon_is_frieze(&negative_family_row(7)));
        assert!(!pentagon_is_frieze(&[1, 2, 2, 1, 4]));
        let images = dihedral_images(&[0, 1, 2, 3, 4]);
        assert_eq!(images[1], [1, 2, 3, 4, 0]);
        // reversal fixes the frieze relations
        for g in dihedral_images(&negative_family_row(3)) {
            assert!(pentagon_is_frieze(&g));
        }
    }

    #[test]
    fn classify_small_bound() {
        let rep = classify_two_row_friezes(3);
        assert!(rep.unexplained.is_empty(), "{:?}", rep.unexplained);
        assert_eq!(rep.conway_coxeter.len(), 5);
        assert_eq!(rep.positive, 5);
        assert_eq!(rep.total, rep.conway_coxeter.len() + rep.negative_family.len());
    }

    #[test]
    fn json_shapes() {
        let t: TriangulationFile = serde_json::from_str(r#"{"n": 2, "diagonals": [[0, 2], [0, 3]]}"#).unwrap();
        assert_eq!(Triangulation::try_from(t).unwrap(), Triangulation::fan(2));
        let cc = int_frieze(vec![vec![1, 2, 2, 1, 3], vec![1, 3, 1, 2, 2]]);
        assert_eq!(
            cc.to_json().to_string(),
            r#"{"n":2,"period":5,"rows":[[1,2,2,1,3],[1,3,1,2,2]]}"#
        );
    }
}
