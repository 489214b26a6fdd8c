//! Linear systems over the two-element field.

use super::SpecError;

/// Dense 0/1 matrix. Entries are stored as bytes holding 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u8>>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix {
            rows,
            cols,
            data: vec![vec![0; cols]; rows],
        }
    }

    /// Entries are reduced mod 2. Rows must share one length.
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self, SpecError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(SpecError::DimensionMismatch);
        }
        Ok(BinaryMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| x & 1).collect())
                .collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r][c] = v & 1;
    }

    pub fn mul_vec(&self, s: &[u8]) -> Vec<u8> {
        self.data
            .iter()
            .map(|row| row.iter().zip(s).fold(0, |acc, (a, b)| acc ^ (a & b)))
            .collect()
    }
}

/// `particular + span(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<u8>,
    pub kernel: Vec<Vec<u8>>,
}

impl AffineSolution {
    pub fn count(&self) -> u128 {
        1u128 << self.kernel.len()
    }

    /// Every solution, ordered by the binary counter over the kernel basis.
    pub fn solutions(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        let k = self.kernel.len();
        assert!(k < 64, "solution space too large to list");
        (0u64..1 << k).map(move |mask| {
            let mut s = self.particular.clone();
            for (b, v) in self.kernel.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    for (x, y) in s.iter_mut().zip(v) {
                        *x ^= y;
                    }
                }
            }
            s
        })
    }
}

/// Solves `m s = u` by Gauss-Jordan elimination. `None` when inconsistent.
pub fn gf2_solve(m: &BinaryMatrix, u: &[u8]) -> Result<Option<AffineSolution>, SpecError> {
    if u.len() != m.rows {
        return Err(SpecError::DimensionMismatch);
    }
    let cols = m.cols;
    let mut aug: Vec<Vec<u8>> = m
        .data
        .iter()
        .zip(u)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b & 1);
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..aug.len()).find(|&r| aug[r][c] == 1) else {
            continue;
        };
        aug.swap(rank, p);
        let pivot_row = aug[rank].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != rank && row[c] == 1 {
                for (d, s) in row.iter_mut().zip(&pivot_row) {
                    *d ^= s;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if aug[rank..].iter().any(|r| r[cols] == 1) {
        return Ok(None);
    }

    let mut particular = vec![0u8; cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][cols];
    }
    let kernel = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u8; cols];
            v[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = aug[r][f];
            }
            v
        })
        .collect();
    Ok(Some(AffineSolution { particular, kernel }))
}
