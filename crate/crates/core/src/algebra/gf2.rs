//! Dense matrices over GF(2) with rows packed into machine words.

use std::fmt;

const WORD_BITS: usize = 64;

fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD_BITS)
}

/// A `rows × cols` matrix over GF(2).
///
/// Each row is stored as `ceil(cols / 64)` consecutive `u64` words; bits past
/// `cols` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. All rows must have equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &x) in row.iter().enumerate() {
                assert!(x <= 1, "entry ({i},{j}) is not a bit");
                m.set(i, j, x == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.bits[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let word = &mut self.bits[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    pub fn toggle(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols);
        self.bits[i * self.stride + j / WORD_BITS] ^= 1u64 << (j % WORD_BITS);
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Submatrix keeping the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                if self.get(i, j) {
                    m.set(a, b, true);
                }
            }
        }
        m
    }

    /// Principal submatrix on the listed indices.
    pub fn principal(&self, keep: &[usize]) -> Self {
        self.select(keep, keep)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.bits.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// Adds row `src` into row `dst`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        for w in 0..self.stride {
            let x = self.bits[src * self.stride + w];
            self.bits[dst * self.stride + w] ^= x;
        }
    }

    /// Rank over GF(2) by Gaussian elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let mut scratch = self.bits.clone();
        rank_in_place(&mut scratch, self.rows, self.cols, self.stride)
    }

    /// `cols - rank`; for a square matrix this is the dimension of its kernel.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

fn rank_in_place(bits: &mut [u64], rows: usize, cols: usize, stride: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let word = col / WORD_BITS;
        let mask = 1u64 << (col % WORD_BITS);
        let Some(pivot) = (rank..rows).find(|&r| bits[r * stride + word] & mask != 0) else {
            continue;
        };
        if pivot != rank {
            for w in 0..stride {
                bits.swap(pivot * stride + w, rank * stride + w);
            }
        }
        for r in pivot.max(rank + 1)..rows {
            if bits[r * stride + word] & mask != 0 {
                // columns before `word` are already cleared in the pivot row
                for w in word..stride {
                    let x = bits[rank * stride + w];
                    bits[r * stride + w] ^= x;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Nullity of a square matrix of order `n <= 64` whose row `i` is the bit
/// pattern `rows[i]`. Clobbers `rows`.
pub(crate) fn nullity_small(rows: &mut [u64]) -> usize {
    let n = rows.len();
    debug_assert!(n <= 64);
    let mut rank = 0;
    for col in 0..n {
        let mask = 1u64 << col;
        let Some(pivot) = (rank..n).find(|&r| rows[r] & mask != 0) else {
            continue;
        };
        rows.swap(pivot, rank);
        let p = rows[rank];
        for r in rows.iter_mut().skip(rank + 1) {
            if *r & mask != 0 {
                *r ^= p;
            }
        }
        rank += 1;
    }
    n - rank
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
