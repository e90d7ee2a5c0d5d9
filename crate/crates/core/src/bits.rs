//! Dense bit matrices backed by `u64` words. Used for reduced relation
//! closures and for the 0/1 incidence matrix.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words_per_row + c / 64] |= 1 << (c % 64);
    }

    /// `dst |= src`, row-wise.
    pub fn or_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let w = self.words_per_row;
        let (a, b) = (dst * w, src * w);
        for k in 0..w {
            let v = self.data[b + k];
            self.data[a + k] |= v;
        }
    }

    pub fn row_count_ones(&self, r: usize) -> usize {
        let w = self.words_per_row;
        self.data[r * w..(r + 1) * w]
            .iter()
            .map(|x| x.count_ones() as usize)
            .sum()
    }

    /// Indices of set bits in row `r`, ascending.
    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        let w = self.words_per_row;
        self.data[r * w..(r + 1) * w]
            .iter()
            .enumerate()
            .flat_map(|(k, &word)| {
                let mut word = word;
                let mut out = Vec::with_capacity(word.count_ones() as usize);
                while word != 0 {
                    let t = word.trailing_zeros() as usize;
                    out.push(k * 64 + t);
                    word &= word - 1;
                }
                out
            })
    }

    /// Number of set bits shared by row `a` of `self` and row `b` of
    /// `other` (the matrices must have the same column count).
    pub fn intersection_count(&self, a: usize, other: &BitMatrix, b: usize) -> usize {
        debug_assert_eq!(self.cols, other.cols);
        let w = self.words_per_row;
        (0..w)
            .map(|k| (self.data[a * w + k] & other.data[b * w + k]).count_ones() as usize)
            .sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r).collect::<Vec<_>>() {
                t.set(c, r);
            }
        }
        t
    }
}
