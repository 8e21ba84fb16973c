//! Diagonal (CRT) folding of sequences into doubly periodic arrays.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::crt_solve;
use crate::lfsr::{CyclicSequence, ZeroFactor};

/// An `r1 x r2` binary array on a torus, rows bit-packed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusArray {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl TorusArray {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64).max(1);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut a = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::LengthMismatch(cols, r.len()));
            }
            for (j, &b) in r.iter().enumerate() {
                a.set(i, j, b);
            }
        }
        Ok(a)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.data[i * self.stride + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    /// Entry at `(i, j)` with both indices taken cyclically.
    pub fn at(&self, i: i64, j: i64) -> bool {
        self.get(i.rem_euclid(self.rows as i64) as usize, j.rem_euclid(self.cols as i64) as usize)
    }

    pub fn row(&self, i: usize) -> Vec<bool> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<bool> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The array moved by `dv` rows down and `dh` columns right:
    /// `out[i][j] = a[i - dv][j - dh]`, indices mod the dimensions.
    pub fn shift(&self, dv: i64, dh: i64) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        if self.rows == 0 || self.cols == 0 {
            return out;
        }
        let dv = dv.rem_euclid(self.rows as i64) as usize;
        let dh = dh.rem_euclid(self.cols as i64) as usize;
        for i in 0..self.rows {
            let src = (i + self.rows - dv) % self.rows;
            for w in 0..self.stride {
                let start = 64 * w;
                let take = (self.cols - start).min(64);
                let bits = self.row_window(src, (start + self.cols - dh) % self.cols, take);
                out.data[i * self.stride + w] = bits.reverse_bits() >> (64 - take);
            }
        }
        out
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x ^= y;
        }
        Ok(out)
    }

    pub fn prod(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x &= y;
        }
        Ok(out)
    }

    /// Least horizontal period: smallest `p | cols` with every row invariant
    /// under a shift by `p` columns.
    pub fn horizontal_period(&self) -> usize {
        (1..=self.cols)
            .filter(|p| self.cols.is_multiple_of(*p))
            .find(|&p| {
                (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == self.get(i, (j + p) % self.cols)))
            })
            .unwrap_or(self.cols)
    }

    pub fn vertical_period(&self) -> usize {
        (1..=self.rows)
            .filter(|p| self.rows.is_multiple_of(*p))
            .find(|&p| {
                (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == self.get((i + p) % self.rows, j)))
            })
            .unwrap_or(self.rows)
    }

    /// `n2` bits of row `i` starting at column `j` (cyclically), column `j`
    /// in the most significant position.
    pub fn row_window(&self, i: usize, j: usize, n2: usize) -> u64 {
        debug_assert!(n2 <= 64 && n2 <= self.cols);
        let mut code = 0u64;
        let mut col = j;
        let mut left = n2;
        let row = &self.data[i * self.stride..(i + 1) * self.stride];
        while left > 0 {
            // Read a run of bits that stays inside one word and inside the row.
            let take = left.min(64 - col % 64).min(self.cols - col);
            let word = row[col / 64] >> (col % 64);
            let chunk = if take == 64 { word } else { word & ((1 << take) - 1) };
            let chunk = chunk.reverse_bits() >> (64 - take);
            code = if take == 64 { chunk } else { (code << take) | chunk };
            left -= take;
            col = (col + take) % self.cols;
        }
        code
    }

    /// Row-major code of the `n1 x n2` window anchored at `(i, j)`; the
    /// top-left bit is the most significant.
    pub fn window_code(&self, i: usize, j: usize, n1: usize, n2: usize) -> u64 {
        (0..n1).fold(0, |acc, t| (acc << n2) | self.row_window((i + t) % self.rows, j, n2))
    }

    /// The window anchored at `(i, j)` as an `n1 x n2` grid.
    pub fn window(&self, i: usize, j: usize, n1: usize, n2: usize) -> Vec<Vec<bool>> {
        (0..n1).map(|t| (0..n2).map(|u| self.get((i + t) % self.rows, (j + u) % self.cols)).collect()).collect()
    }
}

impl fmt::Display for TorusArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("\n")?;
            }
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TorusArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusArray {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: String = self.row(i).iter().map(|&b| if b { '1' } else { '0' }).collect();
            write!(f, "{}{row}", if i > 0 { " / " } else { "" })?;
        }
        f.write_str("]")
    }
}

fn parse_row(line: &str, line_no: usize) -> Result<Vec<bool>> {
    line.char_indices()
        .map(|(k, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse { position: k, message: format!("line {line_no}: unexpected character {c:?}") }),
        })
        .collect()
}

impl FromStr for TorusArray {
    type Err = Error;

    /// Rows separated by newlines or `/`.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(['\n', '/'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .enumerate()
            .map(|(k, l)| parse_row(l, k + 1))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }
}

impl Serialize for TorusArray {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(
            (0..self.rows).map(|i| self.row(i).iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()),
        )
    }
}

/// Parameters `(r1, r2; n1, n2)` of an array code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeParams {
    pub r1: usize,
    pub r2: usize,
    pub n1: usize,
    pub n2: usize,
}

impl CodeParams {
    pub fn new(r1: usize, r2: usize, n1: usize, n2: usize) -> Self {
        Self { r1, r2, n1, n2 }
    }

    pub fn area(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn period(&self) -> u64 {
        (self.r1 * self.r2) as u64
    }

    /// Checks coprimality, the size inequalities and `r1 r2 | 2^(n1 n2) - 1`;
    /// returns the number of codewords `Δ = (2^(n1 n2) - 1) / (r1 r2)`.
    pub fn validate(&self) -> Result<u64> {
        let Self { r1, r2, n1, n2 } = *self;
        if r1 == 0 || r2 == 0 || n1 == 0 || n2 == 0 {
            return Err(Error::InvalidParams("all parameters must be positive".into()));
        }
        if r1.gcd(&r2) != 1 {
            return Err(Error::NotCoprime(r1 as u64, r2 as u64));
        }
        if !(r1 > n1 || r1 == 1 && n1 == 1) {
            return Err(Error::InvalidParams(format!("need r1 > n1 or r1 = n1 = 1, got r1 = {r1}, n1 = {n1}")));
        }
        if !(r2 > n2 || r2 == 1 && n2 == 1) {
            return Err(Error::InvalidParams(format!("need r2 > n2 or r2 = n2 = 1, got r2 = {r2}, n2 = {n2}")));
        }
        let area = self.area();
        if area > 127 {
            return Err(Error::InvalidParams(format!("window area {area} is too large")));
        }
        let total = (1u128 << area) - 1;
        let period = (r1 as u128) * (r2 as u128);
        if !total.is_multiple_of(period) {
            return Err(Error::InvalidParams(format!("r1 r2 = {period} does not divide 2^{area} - 1")));
        }
        u64::try_from(total / period).map_err(|_| Error::InvalidParams("number of codewords exceeds 64 bits".into()))
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.r1, self.r2, self.n1, self.n2)
    }
}

/// Index permutation of the diagonal folding for one `(r1, r2)` pair.
#[derive(Debug, Clone)]
pub struct FoldPlan {
    r1: usize,
    r2: usize,
    /// `position[i * r2 + j]` is the sequence index placed at `(i, j)`.
    position: Vec<usize>,
}

impl FoldPlan {
    pub fn new(r1: usize, r2: usize) -> Result<Self> {
        if r1 == 0 || r2 == 0 {
            return Err(Error::InvalidParams("array dimensions must be positive".into()));
        }
        if r1.gcd(&r2) != 1 {
            return Err(Error::NotCoprime(r1 as u64, r2 as u64));
        }
        let mut position = vec![0; r1 * r2];
        for i in 0..r1 {
            for j in 0..r2 {
                position[i * r2 + j] = crt_solve(i as u64, j as u64, r1 as u64, r2 as u64)? as usize;
            }
        }
        Ok(Self { r1, r2, position })
    }

    /// Sequence index stored at `(i, j)`.
    pub fn position(&self, i: usize, j: usize) -> usize {
        self.position[i * self.r2 + j]
    }

    pub fn fold(&self, s: &CyclicSequence) -> Result<TorusArray> {
        if s.len() != self.r1 * self.r2 {
            return Err(Error::LengthMismatch(s.len(), self.r1 * self.r2));
        }
        let mut a = TorusArray::zeros(self.r1, self.r2);
        for (k, &b) in s.bits().iter().enumerate() {
            if b {
                a.set(k % self.r1, k % self.r2, true);
            }
        }
        Ok(a)
    }

    pub fn unfold(&self, a: &TorusArray) -> Result<CyclicSequence> {
        if (a.rows(), a.cols()) != (self.r1, self.r2) {
            return Err(Error::DimensionMismatch(a.rows(), a.cols(), self.r1, self.r2));
        }
        let mut bits = vec![false; self.r1 * self.r2];
        for i in 0..self.r1 {
            for j in 0..self.r2 {
                bits[self.position(i, j)] = a.get(i, j);
            }
        }
        Ok(CyclicSequence::new(bits))
    }
}

/// Writes `s_k` to cell `(k mod r1, k mod r2)`.
pub fn fold(s: &CyclicSequence, r1: usize, r2: usize) -> Result<TorusArray> {
    FoldPlan::new(r1, r2)?.fold(s)
}

pub fn unfold(a: &TorusArray) -> Result<CyclicSequence> {
    FoldPlan::new(a.rows(), a.cols())?.unfold(a)
}

/// Folds every cycle of a zero factor whose exponent is `r1 r2`.
pub fn fold_zero_factor(zf: &ZeroFactor, r1: usize, r2: usize) -> Result<Vec<TorusArray>> {
    let expected = (r1 * r2) as u64;
    if zf.exponent != expected {
        return Err(Error::ExponentMismatch { actual: zf.exponent, expected });
    }
    let plan = FoldPlan::new(r1, r2)?;
    zf.cycles.par_iter().map(|c| plan.fold(c)).collect()
}

/// Renders arrays in the text file format: optional `# r1 r2 n1 n2` header,
/// then each array as rows of `0`/`1`, arrays separated by a blank line.
pub fn write_arrays(arrays: &[TorusArray], params: Option<&CodeParams>) -> String {
    let mut out = String::new();
    if let Some(p) = params {
        out.push_str(&format!("# {} {} {} {}\n", p.r1, p.r2, p.n1, p.n2));
    }
    for (k, a) in arrays.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        out.push_str(&a.to_string());
        out.push('\n');
    }
    out
}

/// Parses the text file format written by [`write_arrays`].
pub fn read_arrays(text: &str) -> Result<(Option<CodeParams>, Vec<TorusArray>)> {
    let mut params = None;
    let mut arrays = Vec::new();
    let mut current: Vec<Vec<bool>> = Vec::new();
    let flush = |current: &mut Vec<Vec<bool>>, arrays: &mut Vec<TorusArray>| -> Result<()> {
        if !current.is_empty() {
            arrays.push(TorusArray::from_rows(current)?);
            current.clear();
        }
        Ok(())
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let line_no = idx + 1;
        if let Some(rest) = line.strip_prefix('#') {
            if idx == 0 {
                let nums = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::Parse { position: 0, message: format!("line 1: bad header: {e}") })?;
                let [r1, r2, n1, n2] = nums[..] else {
                    return Err(Error::Parse { position: 0, message: "line 1: header must be '# r1 r2 n1 n2'".into() });
                };
                params = Some(CodeParams::new(r1, r2, n1, n2));
            }
            continue;
        }
        if line.is_empty() {
            flush(&mut current, &mut arrays)?;
        } else {
            current.push(parse_row(line, line_no)?);
        }
    }
    flush(&mut current, &mut arrays)?;
    if let Some(p) = &params {
        if let Some(a) = arrays.iter().find(|a| (a.rows(), a.cols()) != (p.r1, p.r2)) {
            return Err(Error::DimensionMismatch(a.rows(), a.cols(), p.r1, p.r2));
        }
    }
    Ok((params, arrays))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::BinaryPolynomial;
    use crate::lfsr::{bitadd, bitmul, zero_factor};
    use proptest::prelude::*;

    fn seq(s: &str) -> CyclicSequence {
        s.parse().unwrap()
    }

    fn arr(s: &str) -> TorusArray {
        s.parse().unwrap()
    }

    fn p(s: &str) -> BinaryPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn fold_examples() {
        assert_eq!(fold(&seq("000111101011001"), 3, 5).unwrap(), arr("01010/10001/11011"));
        assert!(fold(&CyclicSequence::zeros(15), 3, 5).unwrap().is_zero());
        assert_eq!(fold(&seq("0001"), 2, 2), Err(Error::NotCoprime(2, 2)));
        assert_eq!(fold(&seq("0001"), 3, 5), Err(Error::LengthMismatch(4, 15)));
    }

    #[test]
    fn position_matrix() {
        let plan = FoldPlan::new(3, 5).unwrap();
        let expected = [[0, 6, 12, 3, 9], [10, 1, 7, 13, 4], [5, 11, 2, 8, 14]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                assert_eq!(plan.position(i, j), k);
            }
        }
    }

    #[test]
    fn folding_the_three_cycles() {
        let pairs = [
            ("000001010010011001011", "0000000/1001011/1001011"),
            ("010000111101101010111", "0010111/1110010/1100101"),
            ("001000110111111001110", "0010111/1001011/1011100"),
        ];
        for (s, a) in pairs {
            assert_eq!(fold(&seq(s), 3, 7).unwrap(), arr(a));
        }
    }

    #[test]
    fn fold_zero_factor_examples() {
        let zf = zero_factor(&p("x^6+x^5+x^4+x^2+1")).unwrap();
        let arrays = fold_zero_factor(&zf, 3, 7).unwrap();
        assert_eq!(arrays.len(), 3);
        assert_eq!(fold_zero_factor(&zf, 3, 5).unwrap_err(), Error::ExponentMismatch { actual: 21, expected: 15 });
        let zf = zero_factor(&p("x^4+x+1")).unwrap();
        assert_eq!(fold_zero_factor(&zf, 3, 5).unwrap().len(), 1);
        let zf = zero_factor(&p("x^12+x^10+x^9+x+1")).unwrap();
        let arrays = fold_zero_factor(&zf, 7, 13).unwrap();
        assert_eq!(arrays.len(), 45);
        for a in &arrays {
            assert_eq!((a.vertical_period(), a.horizontal_period()), (7, 13));
        }
    }

    #[test]
    fn unfold_inverts_fold() {
        let a = arr("01010/10001/11011");
        assert_eq!(unfold(&a).unwrap(), seq("000111101011001"));
        assert!(unfold(&TorusArray::zeros(3, 5)).unwrap().is_zero());
    }

    #[test]
    fn shift_and_add_example() {
        let a = arr("01010/10001/11011");
        let shifted = a.shift(1, 2);
        assert_eq!(shifted, arr("11110/10010/01100"));
        assert_eq!(a.add(&shifted).unwrap(), arr("10100/00011/10111"));
        assert_eq!(a.shift(0, 0), a);
        assert_eq!(a.shift(3, 5), a);
        assert_eq!(a.shift(-1, -2).shift(1, 2), a);
        assert!(a.add(&a).unwrap().is_zero());
        assert!(matches!(a.add(&TorusArray::zeros(5, 3)), Err(Error::DimensionMismatch(3, 5, 5, 3))));
    }

    #[test]
    fn row_and_column_constant_foldings() {
        // A period-3 sequence folded into 3 x 7 gives constant rows.
        let cols = fold(&seq(&"011".repeat(7)), 3, 7).unwrap();
        assert_eq!(cols, arr("0000000/1111111/1111111"));
        // A period-7 sequence gives identical rows equal to the sequence.
        let rows = fold(&seq(&"1001011".repeat(3)), 3, 7).unwrap();
        assert_eq!(rows, arr("1001011/1001011/1001011"));
        let product = cols.prod(&rows).unwrap();
        assert_eq!(product, arr("0000000/1001011/1001011"));
        assert_eq!(product, fold(&bitmul(&seq("011"), &seq("1001011")), 3, 7).unwrap());
    }

    #[test]
    fn product_of_row_and_column_constant_arrays() {
        let a = seq("0010111");
        let b = seq("000100110101111");
        let rows = fold(&seq(&b.to_string().repeat(7)), 7, 15).unwrap();
        let cols = fold(&seq(&a.to_string().repeat(15)), 7, 15).unwrap();
        let prod = rows.prod(&cols).unwrap();
        for i in 0..7 {
            let r = prod.row(i);
            assert!(r.iter().all(|&x| !x) || r == b.bits());
        }
        for j in 0..15 {
            let c = prod.column(j);
            assert!(c.iter().all(|&x| !x) || c == a.bits());
        }
    }

    #[test]
    fn windows() {
        let a = arr("01010/10001/11011");
        assert_eq!(a.window_code(0, 0, 2, 2), 0b0110);
        // Wraps around both edges: rows 2,0 and columns 4,0.
        assert_eq!(a.window_code(2, 4, 2, 2), 0b1100);
        assert_eq!(a.window(2, 4, 2, 2), vec![vec![true, true], vec![false, false]]);
        let wide = fold(&crate::lfsr::generate(&p("x^8+x^4+x^3+x^2+1"), &[true; 8], 255).unwrap(), 3, 85).unwrap();
        for j in 0..85 {
            let direct = (0..64).fold(0u64, |acc, u| (acc << 1) | wide.get(1, (j + u) % 85) as u64);
            assert_eq!(wide.row_window(1, j, 64), direct);
            assert_eq!(wide.row_window(1, j, 11), direct >> 53);
        }
    }

    #[test]
    fn params_validation() {
        assert_eq!(CodeParams::new(3, 7, 2, 3).validate().unwrap(), 3);
        assert_eq!(CodeParams::new(7, 13, 3, 4).validate().unwrap(), 45);
        assert_eq!(CodeParams::new(3, 5, 2, 2).validate().unwrap(), 1);
        assert_eq!(CodeParams::new(1, 3, 1, 2).validate().unwrap(), 1);
        assert!(CodeParams::new(3, 5, 3, 2).validate().is_err());
        assert!(CodeParams::new(3, 9, 2, 3).validate().is_err());
        assert!(CodeParams::new(5, 7, 2, 3).validate().is_err());
    }

    #[test]
    fn array_file_round_trip() {
        let zf = zero_factor(&p("x^6+x^5+x^4+x^2+1")).unwrap();
        let arrays = fold_zero_factor(&zf, 3, 7).unwrap();
        let params = CodeParams::new(3, 7, 2, 3);
        let text = write_arrays(&arrays, Some(&params));
        assert!(text.starts_with("# 3 7 2 3\n"));
        assert_eq!(text.lines().filter(|l| l.is_empty()).count(), 2);
        assert_eq!(read_arrays(&text).unwrap(), (Some(params), arrays.clone()));
        let text = write_arrays(&arrays, None);
        assert_eq!(read_arrays(&text).unwrap(), (None, arrays));
        assert!(read_arrays("# 3 5 2 2\n0101\n").is_err());
        assert!(read_arrays("01x\n").is_err());
    }

    fn coprime_pair() -> impl Strategy<Value = (usize, usize)> {
        (1usize..40, 1usize..40).prop_filter("coprime", |(a, b)| a.gcd(b) == 1)
    }

    proptest! {
        #[test]
        fn fold_preserves_addition_and_product(
            (r1, r2) in coprime_pair(),
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let len = r1 * r2;
            let u = CyclicSequence::new((0..len).map(|_| rng.gen()).collect());
            let v = CyclicSequence::new((0..len).map(|_| rng.gen()).collect());
            let (fu, fv) = (fold(&u, r1, r2).unwrap(), fold(&v, r1, r2).unwrap());
            // Extend to the full length so bitwise results keep length r1 r2.
            let full = |s: CyclicSequence| CyclicSequence::new((0..len).map(|k| s.get(k)).collect());
            prop_assert_eq!(fu.add(&fv).unwrap(), fold(&full(bitadd(&u, &v)), r1, r2).unwrap());
            prop_assert_eq!(fu.prod(&fv).unwrap(), fold(&full(bitmul(&u, &v)), r1, r2).unwrap());
            prop_assert_eq!(unfold(&fu).unwrap(), u.clone());
            prop_assert_eq!(fold(&u.rotate(1), r1, r2).unwrap(), fu.shift(1, 1));
        }
    }

    proptest! {
        #[test]
        fn shift_matches_cellwise_definition(
            rows in 1usize..6,
            cols in 1usize..150,
            dv in -10i64..10,
            dh in -200i64..200,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let grid: Vec<Vec<bool>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen()).collect()).collect();
            let a = TorusArray::from_rows(&grid).unwrap();
            let s = a.shift(dv, dh);
            for i in 0..rows {
                for j in 0..cols {
                    prop_assert_eq!(s.get(i, j), a.at(i as i64 - dv, j as i64 - dh));
                }
            }
        }
    }

    #[test]
    fn sequence_shift_is_diagonal_array_shift() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for r1 in 1..=100usize {
            for r2 in (1..=100usize).filter(|r2| r1.gcd(r2) == 1) {
                let s = CyclicSequence::new((0..r1 * r2).map(|_| rng.gen()).collect());
                let plan = FoldPlan::new(r1, r2).unwrap();
                assert_eq!(plan.fold(&s.rotate(1)).unwrap(), plan.fold(&s).unwrap().shift(1, 1));
            }
        }
    }
}
