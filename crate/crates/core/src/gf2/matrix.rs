use std::fmt;

use super::word::BitWord;

/// Row-major matrix over GF(2); each row is a [`BitWord`] of length `cols`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitWord>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<BitWord>,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitWord::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            cols: n,
            rows: (0..n).map(|i| BitWord::unit(n, i)).collect(),
        }
    }

    /// Panics if a row length differs from `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitWord>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        BitMatrix { cols, rows }
    }

    pub fn push_row(&mut self, row: BitWord) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.rows.push(row);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitWord] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitWord {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zero(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones_positions() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// `M·xᵀ` as a word of length `num_rows`.
    pub fn mul_vec(&self, x: &BitWord) -> BitWord {
        let mut out = BitWord::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(x) {
                out.set(i, true);
            }
        }
        out
    }

    /// `self · otherᵀ`, i.e. entry (i,j) is `row_i · other_row_j`.
    pub fn mul_transpose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = BitMatrix::zero(self.rows.len(), other.rows.len());
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.dot(b) {
                    out.rows[i].set(j, true);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitWord::is_zero)
    }

    /// Reduced row-echelon form with pivots at the leftmost (lowest) coordinates.
    /// Zero rows are dropped.
    pub fn echelon(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Echelon { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rows.len()
    }

    /// Basis of `{x : M·xᵀ = 0}`.
    pub fn null_space(&self) -> Vec<BitWord> {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitWord::zeros(self.cols);
            v.set(f, true);
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl Echelon {
    /// Clears every pivot coordinate of `x` using the basis rows. The result is
    /// the lexicographically least element of `x + span(rows)`.
    pub fn reduce(&self, x: &BitWord) -> BitWord {
        let mut y = x.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if y.get(p) {
                y.xor_assign(row);
            }
        }
        y
    }

    pub fn contains(&self, x: &BitWord) -> bool {
        self.reduce(x).is_zero()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}
