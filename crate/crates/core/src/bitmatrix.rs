//! Dense matrices over GF(2) with bit-packed rows.

use std::fmt;

use crate::gf2poly::BinaryPolynomial;

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        Self { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            for (j, &b) in r.as_ref().iter().enumerate() {
                m.set(i, j, b);
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
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn row_bits(&self, i: usize) -> Vec<bool> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    /// `row[dst] ^= row[src]`.
    fn xor_row(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let w = self.words;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * w);
            (&mut lo[dst * w..(dst + 1) * w], &hi[..w])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..(src + 1) * w])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.data.swap(a * self.words + k, b * self.words + k);
        }
    }

    fn xor_col(&mut self, dst: usize, src: usize) {
        for i in 0..self.rows {
            if self.get(i, src) {
                let v = !self.get(i, dst);
                self.set(i, dst, v);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (x, y) = (self.get(i, a), self.get(i, b));
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x ^= y;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let src = other.row(k).to_vec();
                    let dst = &mut out.data[i * out.words..(i + 1) * out.words];
                    for (x, y) in dst.iter_mut().zip(&src) {
                        *x ^= y;
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| (0..self.cols).filter(|&j| v[j] && self.get(i, j)).count() % 2 == 1).collect()
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        if other.get(k, l) {
                            out.set(i * other.rows + k, j * other.cols + l, true);
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduces in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Determinant over GF(2): true iff the square matrix is nonsingular.
    pub fn det(&self) -> bool {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        self.rank() == self.rows
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![false; self.cols];
            v[free] = true;
            for (r, &p) in pivots.iter().enumerate() {
                if m.get(r, free) {
                    v[p] = true;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Characteristic polynomial `det(xI - M)` of a square matrix.
    ///
    /// The matrix is brought to upper Hessenberg form by similarity
    /// transformations; every pivot is 1, so no field division occurs.
    pub fn charpoly(&self) -> BinaryPolynomial {
        assert_eq!(self.rows, self.cols, "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            if !h.get(j + 1, j) {
                if let Some(p) = (j + 2..n).find(|&i| h.get(i, j)) {
                    h.swap_rows(j + 1, p);
                    h.swap_cols(j + 1, p);
                } else {
                    continue;
                }
            }
            for i in j + 2..n {
                if h.get(i, j) {
                    // E = I + e_i e_{j+1}^T is its own inverse: E H E.
                    h.xor_row(i, j + 1);
                    h.xor_col(j + 1, i);
                }
            }
        }
        // p_k = (x + h_kk) p_{k-1} + Σ_{i=1}^{k-1} h_{k-i,k} (Π_{m=k-i+1}^{k} h_{m,m-1}) p_{k-i-1}
        // with 1-based indices; over GF(2) all signs vanish.
        let mut p: Vec<BinaryPolynomial> = Vec::with_capacity(n + 1);
        p.push(BinaryPolynomial::one());
        for k in 1..=n {
            let kk = k - 1;
            let mut next = p[k - 1].shl(1);
            if h.get(kk, kk) {
                next += &p[k - 1];
            }
            let mut sub = true;
            for i in 1..k {
                sub &= h.get(k - i, k - i - 1);
                if !sub {
                    break;
                }
                if h.get(kk - i, kk) {
                    next += &p[k - i - 1];
                }
            }
            p.push(next);
        }
        p.pop().unwrap()
    }

    /// Companion matrix whose characteristic polynomial is `f`.
    pub fn companion(f: &BinaryPolynomial) -> Self {
        let n = f.deg();
        let mut m = Self::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, true);
        }
        for i in 0..n {
            if f.coeff(i) {
                m.set(i, n - 1, true);
            }
        }
        m
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
