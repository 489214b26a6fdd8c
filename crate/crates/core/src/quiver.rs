//! Quivers without loops or oriented 2-cycles, stored as skew-symmetric
//! exchange matrices.
//!
//! Vertices are 1-indexed at every public boundary. `b(i, k) > 0` means
//! `b(i, k)` arrows `i -> k`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("pair {{{0}, {1}}} listed more than once")]
    DuplicatePair(usize, usize),
    #[error("arrow {0} -> {1} has non-positive multiplicity")]
    BadMultiplicity(usize, usize),
    #[error("orientation has {got} entries, a path on {n} vertices needs {expected}")]
    OrientationLength { n: usize, expected: usize, got: usize },
    #[error("quiver needs at least one vertex")]
    Empty,
}

/// Direction of the edge between consecutive path vertices `k` and `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `k -> k + 1`
    Forward,
    /// `k + 1 -> k`
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    b: Vec<i64>,
}

impl Quiver {
    /// Validates a square matrix given row by row (0-indexed storage).
    pub fn from_matrix(rows: Vec<Vec<i64>>) -> Result<Self, QuiverError> {
        let n = rows.len();
        if n == 0 {
            return Err(QuiverError::Empty);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(QuiverError::NotSquare);
        }
        for i in 0..n {
            if rows[i][i] != 0 {
                return Err(QuiverError::Loop(i + 1));
            }
            for k in 0..n {
                if rows[i][k] != -rows[k][i] {
                    return Err(QuiverError::NotSkewSymmetric(i + 1, k + 1));
                }
            }
        }
        Ok(Quiver {
            n,
            b: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a quiver from `(i, k, mult)` meaning `mult` arrows `i -> k`.
    /// Each unordered pair may appear at most once.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self, QuiverError> {
        if n == 0 {
            return Err(QuiverError::Empty);
        }
        let mut q = Quiver {
            n,
            b: vec![0; n * n],
        };
        let mut seen = BTreeSet::new();
        for &(i, k, m) in arrows {
            q.check(i)?;
            q.check(k)?;
            if i == k {
                return Err(QuiverError::Loop(i));
            }
            if m < 1 {
                return Err(QuiverError::BadMultiplicity(i, k));
            }
            if !seen.insert((i.min(k), i.max(k))) {
                return Err(QuiverError::DuplicatePair(i.min(k), i.max(k)));
            }
            q.set(i, k, m);
        }
        Ok(q)
    }

    /// Path quiver on `n` vertices, `orientation[k-1]` giving the edge
    /// between `k` and `k + 1`.
    pub fn linear_a(n: usize, orientation: &[Orientation]) -> Result<Self, QuiverError> {
        if n == 0 {
            return Err(QuiverError::Empty);
        }
        if orientation.len() != n - 1 {
            return Err(QuiverError::OrientationLength {
                n,
                expected: n - 1,
                got: orientation.len(),
            });
        }
        let arrows: Vec<_> = orientation
            .iter()
            .enumerate()
            .map(|(k, o)| match o {
                Orientation::Forward => (k + 1, k + 2, 1),
                Orientation::Backward => (k + 2, k + 1, 1),
            })
            .collect();
        Self::from_arrows(n, &arrows)
    }

    /// `1 -> 2 -> ... -> n`.
    pub fn linear_a_forward(n: usize) -> Self {
        Self::linear_a(n, &vec![Orientation::Forward; n.saturating_sub(1)])
            .expect("forward path is valid")
    }

    /// Two vertices joined by `m` parallel arrows `1 -> 2`.
    pub fn kronecker(m: i64) -> Self {
        Self::from_arrows(2, &[(1, 2, m)]).expect("kronecker quiver is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, v: usize) -> Result<(), QuiverError> {
        if v >= 1 && v <= self.n {
            Ok(())
        } else {
            Err(QuiverError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    fn set(&mut self, i: usize, k: usize, m: i64) {
        let n = self.n;
        self.b[(i - 1) * n + (k - 1)] = m;
        self.b[(k - 1) * n + (i - 1)] = -m;
    }

    /// Signed entry `b(i, k)`. Panics on out-of-range vertices.
    pub fn b(&self, i: usize, k: usize) -> i64 {
        assert!(i >= 1 && i <= self.n && k >= 1 && k <= self.n);
        self.b[(i - 1) * self.n + (k - 1)]
    }

    /// Rows of the exchange matrix.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.b.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn is_valid(&self) -> bool {
        (1..=self.n).all(|i| {
            self.b(i, i) == 0 && (1..=self.n).all(|k| self.b(i, k) == -self.b(k, i))
        })
    }

    /// Matrix mutation at `j`:
    /// `b'(i,k) = -b(i,k)` if `j` is `i` or `k`, otherwise
    /// `b(i,k) + (|b(i,j)| b(j,k) + b(i,j) |b(j,k)|) / 2`.
    pub fn mutate(&self, j: usize) -> Result<Quiver, QuiverError> {
        self.check(j)?;
        let mut out = self.clone();
        for i in 1..=self.n {
            for k in 1..=self.n {
                let v = if i == j || k == j {
                    -self.b(i, k)
                } else {
                    let bij = self.b(i, j);
                    let bjk = self.b(j, k);
                    self.b(i, k) + (bij.abs() * bjk + bij * bjk.abs()) / 2
                };
                out.b[(i - 1) * self.n + (k - 1)] = v;
            }
        }
        debug_assert!(out.is_valid());
        Ok(out)
    }

    /// `{j}` together with every vertex joined to `j` by an arrow.
    pub fn neighbourhood(&self, j: usize) -> Result<BTreeSet<usize>, QuiverError> {
        self.check(j)?;
        Ok((1..=self.n)
            .filter(|&i| i == j || self.b(i, j) != 0)
            .collect())
    }

    /// Neighbours of `j`, excluding `j` itself.
    pub fn neighbours(&self, j: usize) -> Result<BTreeSet<usize>, QuiverError> {
        self.check(j)?;
        Ok((1..=self.n).filter(|&i| self.b(i, j) != 0).collect())
    }

    pub fn arrows_between(&self, i: usize, k: usize) -> Result<u64, QuiverError> {
        self.check(i)?;
        self.check(k)?;
        Ok(self.b(i, k).unsigned_abs())
    }

    /// No two members of `s` are joined by an arrow. Out-of-range members
    /// make the answer `false`.
    pub fn is_independent_set(&self, s: &BTreeSet<usize>) -> bool {
        if s.iter().any(|&v| self.check(v).is_err()) {
            return false;
        }
        s.iter()
            .all(|&i| s.iter().all(|&k| self.b(i, k) == 0))
    }

    /// Arrows as `(i, k, mult)` with `mult > 0`, sorted by `(min, max)` pair.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for k in i + 1..=self.n {
                let v = self.b(i, k);
                if v > 0 {
                    out.push((i, k, v));
                } else if v < 0 {
                    out.push((k, i, -v));
                }
            }
        }
        out
    }

    /// Same quiver with vertex `v` renamed to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Quiver {
        assert_eq!(perm.len(), self.n);
        let mut out = Quiver {
            n: self.n,
            b: vec![0; self.n * self.n],
        };
        for i in 1..=self.n {
            for k in 1..=self.n {
                let (pi, pk) = (perm[i - 1], perm[k - 1]);
                out.b[(pi - 1) * self.n + (pk - 1)] = self.b(i, k);
            }
        }
        out
    }

    pub fn to_file(&self) -> QuiverFile {
        QuiverFile {
            n: self.n,
            arrows: self
                .arrows()
                .into_iter()
                .map(|(i, k, m)| [i as i64, k as i64, m])
                .collect(),
        }
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows = self.arrows();
        if arrows.is_empty() {
            return write!(f, "{} vertices, no arrows", self.n);
        }
        let parts: Vec<String> = arrows
            .iter()
            .map(|&(i, k, m)| {
                if m == 1 {
                    format!("{i}->{k}")
                } else {
                    format!("{i}->{k} (x{m})")
                }
            })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// On-disk form: `{"n": 2, "arrows": [[1, 2, 1]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub n: usize,
    pub arrows: Vec<[i64; 3]>,
}

impl TryFrom<QuiverFile> for Quiver {
    type Error = QuiverError;

    fn try_from(file: QuiverFile) -> Result<Self, Self::Error> {
        let mut arrows = Vec::with_capacity(file.arrows.len());
        for [i, k, m] in file.arrows {
            let vi = usize::try_from(i).map_err(|_| QuiverError::VertexOutOfRange {
                vertex: 0,
                n: file.n,
            })?;
            let vk = usize::try_from(k).map_err(|_| QuiverError::VertexOutOfRange {
                vertex: 0,
                n: file.n,
            })?;
            arrows.push((vi, vk, m));
        }
        Quiver::from_arrows(file.n, &arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a3() -> Quiver {
        Quiver::linear_a_forward(3)
    }

    #[test]
    fn mutate_a2_reverses_arrow() {
        let q = Quiver::linear_a_forward(2);
        let m = q.mutate(1).unwrap();
        assert_eq!(m, Quiver::from_arrows(2, &[(2, 1, 1)]).unwrap());
    }

    #[test]
    fn mutate_a3_middle_gives_cycle() {
        let m = a3().mutate(2).unwrap();
        let cycle = Quiver::from_arrows(3, &[(2, 1, 1), (3, 2, 1), (1, 3, 1)]).unwrap();
        assert_eq!(m, cycle);
    }

    #[test]
    fn mutate_out_of_range() {
        assert_eq!(
            a3().mutate(4),
            Err(QuiverError::VertexOutOfRange { vertex: 4, n: 3 })
        );
        assert!(a3().mutate(0).is_err());
    }

    #[test]
    fn neighbourhoods() {
        let q = Quiver::linear_a_forward(2);
        assert_eq!(q.neighbourhood(1).unwrap(), BTreeSet::from([1, 2]));
        let iso = Quiver::from_arrows(3, &[(1, 2, 1)]).unwrap();
        assert_eq!(iso.neighbourhood(3).unwrap(), BTreeSet::from([3]));
        assert_eq!(a3().neighbourhood(2).unwrap(), BTreeSet::from([1, 2, 3]));
    }

    #[test]
    fn arrow_counts() {
        assert_eq!(Quiver::linear_a_forward(2).arrows_between(1, 2), Ok(1));
        assert_eq!(Quiver::kronecker(2).arrows_between(1, 2), Ok(2));
        assert_eq!(Quiver::kronecker(2).arrows_between(2, 1), Ok(2));
        assert_eq!(a3().arrows_between(1, 3), Ok(0));
    }

    #[test]
    fn linear_a_constructor() {
        let q = Quiver::linear_a(2, &[Orientation::Forward]).unwrap();
        assert_eq!(q.arrows(), vec![(1, 2, 1)]);
        let q = Quiver::linear_a(1, &[]).unwrap();
        assert_eq!(q.n(), 1);
        assert!(q.arrows().is_empty());
        assert_eq!(a3().arrows(), vec![(1, 2, 1), (2, 3, 1)]);
        assert_eq!(
            Quiver::linear_a(3, &[Orientation::Forward]),
            Err(QuiverError::OrientationLength { n: 3, expected: 2, got: 1 })
        );
        let q = Quiver::linear_a(3, &[Orientation::Backward, Orientation::Forward]).unwrap();
        assert_eq!(q.arrows(), vec![(2, 1, 1), (2, 3, 1)]);
    }

    #[test]
    fn independent_sets() {
        let q = Quiver::linear_a_forward(2);
        assert!(q.is_independent_set(&BTreeSet::from([1])));
        assert!(!q.is_independent_set(&BTreeSet::from([1, 2])));
        assert!(a3().is_independent_set(&BTreeSet::from([1, 3])));
        assert!(a3().is_independent_set(&BTreeSet::new()));
    }

    #[test]
    fn loader_rejects_bad_input() {
        let parse = |s: &str| -> Result<Quiver, QuiverError> {
            let f: QuiverFile = serde_json::from_str(s).unwrap();
            Quiver::try_from(f)
        };
        assert_eq!(parse(r#"{"n":2,"arrows":[[1,1,1]]}"#), Err(QuiverError::Loop(1)));
        assert_eq!(
            parse(r#"{"n":2,"arrows":[[1,2,1],[2,1,1]]}"#),
            Err(QuiverError::DuplicatePair(1, 2))
        );
        assert_eq!(
            parse(r#"{"n":2,"arrows":[[1,3,1]]}"#),
            Err(QuiverError::VertexOutOfRange { vertex: 3, n: 2 })
        );
        assert_eq!(
            parse(r#"{"n":2,"arrows":[[1,2,0]]}"#),
            Err(QuiverError::BadMultiplicity(1, 2))
        );
        assert_eq!(parse(r#"{"n":2,"arrows":[[1,2,2]]}"#), Ok(Quiver::kronecker(2)));
    }

    #[test]
    fn file_round_trip() {
        let q = Quiver::from_arrows(3, &[(2, 1, 1), (3, 2, 2), (1, 3, 1)]).unwrap();
        let json = serde_json::to_string(&q.to_file()).unwrap();
        let back: QuiverFile = serde_json::from_str(&json).unwrap();
        assert_eq!(Quiver::try_from(back).unwrap(), q);
    }

    #[test]
    fn from_matrix_validates() {
        assert_eq!(
            Quiver::from_matrix(vec![vec![0, 1], vec![1, 0]]),
            Err(QuiverError::NotSkewSymmetric(1, 2))
        );
        assert_eq!(Quiver::from_matrix(vec![vec![1]]), Err(QuiverError::Loop(1)));
        assert_eq!(
            Quiver::from_matrix(vec![vec![0, 1], vec![-1, 0]]).unwrap(),
            Quiver::linear_a_forward(2)
        );
    }

    /// Arrow-level mutation: reverse arrows at `j`, complete 2-paths through
    /// `j` to triangles, cancel opposite pairs. Kept independent of the
    /// matrix formula.
    fn mutate_by_arrows(q: &Quiver, j: usize) -> Quiver {
        let n = q.n();
        let mut arrows: Vec<(usize, usize)> = Vec::new();
        for (i, k, m) in q.arrows() {
            for _ in 0..m {
                arrows.push((i, k));
            }
        }
        let incoming: Vec<usize> = arrows.iter().filter(|a| a.1 == j).map(|a| a.0).collect();
        let outgoing: Vec<usize> = arrows.iter().filter(|a| a.0 == j).map(|a| a.1).collect();
        let mut next: Vec<(usize, usize)> = arrows
            .iter()
            .map(|&(i, k)| if i == j || k == j { (k, i) } else { (i, k) })
            .collect();
        for &i in &incoming {
            for &k in &outgoing {
                next.push((i, k));
            }
        }
        let mut count = vec![vec![0i64; n + 1]; n + 1];
        for (i, k) in next {
            count[i][k] += 1;
        }
        let mut out = Vec::new();
        for i in 1..=n {
            for k in i + 1..=n {
                let d = count[i][k] - count[k][i];
                if d > 0 {
                    out.push((i, k, d));
                } else if d < 0 {
                    out.push((k, i, -d));
                }
            }
        }
        Quiver::from_arrows(n, &out).unwrap()
    }

    fn arb_quiver(max_n: usize, max_b: i64) -> impl Strategy<Value = Quiver> {
        (1..=max_n).prop_flat_map(move |n| {
            prop::collection::vec(-max_b..=max_b, n * (n - 1) / 2).prop_map(move |vals| {
                let mut rows = vec![vec![0i64; n]; n];
                let mut it = vals.into_iter();
                for i in 0..n {
                    for k in i + 1..n {
                        let v = it.next().unwrap();
                        rows[i][k] = v;
                        rows[k][i] = -v;
                    }
                }
                Quiver::from_matrix(rows).unwrap()
            })
        })
    }

    // Every skew-symmetric matrix with n <= 4 and entries in -3..=3.
    #[test]
    fn involution_exhaustive_small() {
        for n in 1..=4usize {
            let pairs = n * (n - 1) / 2;
            for code in 0..7usize.pow(pairs as u32) {
                let mut rows = vec![vec![0i64; n]; n];
                let mut c = code;
                for i in 0..n {
                    for k in i + 1..n {
                        let v = (c % 7) as i64 - 3;
                        c /= 7;
                        rows[i][k] = v;
                        rows[k][i] = -v;
                    }
                }
                let q = Quiver::from_matrix(rows).unwrap();
                for j in 1..=n {
                    let m = q.mutate(j).unwrap();
                    assert!(m.is_valid());
                    assert_eq!(m.mutate(j).unwrap(), q);
                    assert_eq!(m, mutate_by_arrows(&q, j));
                }
            }
        }
    }

    #[test]
    fn leaf_mutation_of_path_flips_one_edge() {
        use Orientation::*;
        for orient in [[Forward, Forward, Backward], [Backward, Forward, Forward]] {
            let q = Quiver::linear_a(4, &orient).unwrap();
            let m = q.mutate(1).unwrap();
            let mut flipped = orient;
            flipped[0] = if orient[0] == Forward { Backward } else { Forward };
            assert_eq!(m, Quiver::linear_a(4, &flipped).unwrap());
            let m = q.mutate(4).unwrap();
            let mut flipped = orient;
            flipped[2] = if orient[2] == Forward { Backward } else { Forward };
            assert_eq!(m, Quiver::linear_a(4, &flipped).unwrap());
        }
    }

    proptest! {
        #[test]
        fn mutation_is_involution(q in arb_quiver(5, 3), j in 1usize..=5) {
            prop_assume!(j <= q.n());
            let m = q.mutate(j).unwrap();
            prop_assert!(m.is_valid());
            prop_assert_eq!(m.mutate(j).unwrap(), q.clone());
            prop_assert_eq!(m, mutate_by_arrows(&q, j));
        }
    }
}
