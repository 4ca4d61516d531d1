use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sparse integer matrix with arbitrary-precision entries, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, BigInt::one()));
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = IntegerMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged dense matrix");
            for (j, &x) in r.iter().enumerate() {
                if x != 0 {
                    m.data[i].push((j, BigInt::from(x)));
                }
            }
        }
        m
    }

    pub fn from_big_dense(rows: usize, cols: usize, entries: &[Vec<BigInt>]) -> Self {
        let mut m = IntegerMatrix::zeros(rows, cols);
        for (i, r) in entries.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    m.data[i].push((j, x.clone()));
                }
            }
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions add up.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Self {
        let mut m = IntegerMatrix::zeros(rows, cols);
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet ({i}, {j}) out of range");
            m.add_to(i, j, v);
        }
        m
    }

    fn add_to(&mut self, i: usize, j: usize, v: BigInt) {
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => {
                row[k].1 += v;
                if row[k].1.is_zero() {
                    row.remove(k);
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    row.insert(k, (j, v));
                }
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc: std::collections::BTreeMap<usize, BigInt> = Default::default();
            for (k, a) in &self.data[i] {
                for (j, b) in &other.data[*k] {
                    *acc.entry(*j).or_insert_with(BigInt::zero) += a * b;
                }
            }
            out.data[i] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    pub fn transpose(&self) -> IntegerMatrix {
        IntegerMatrix::from_triplets(self.cols, self.rows, self.triplets().map(|(i, j, v)| (j, i, v.clone())))
    }

    /// Plain triplet text: a `rows cols` header, then one `i j v` line per
    /// nonzero entry (0-based, row-major).
    pub fn to_triplet_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (i, j, v) in self.triplets() {
            let _ = writeln!(s, "{i} {j} {v}");
        }
        s
    }

    pub fn parse_triplet_text(text: &str) -> Result<IntegerMatrix> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("missing matrix header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| Error::Parse(format!("bad header `{header}`: {e}"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!("bad header `{header}`")));
        };
        let mut trips = Vec::new();
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::Parse(format!("bad triplet `{line}`")));
            }
            let i: usize = toks[0].parse().map_err(|e| Error::Parse(format!("{e}")))?;
            let j: usize = toks[1].parse().map_err(|e| Error::Parse(format!("{e}")))?;
            let v: BigInt = toks[2].parse().map_err(|e| Error::Parse(format!("{e}")))?;
            if i >= rows || j >= cols {
                return Err(Error::Parse(format!("triplet `{line}` out of range")));
            }
            trips.push((i, j, v));
        }
        Ok(IntegerMatrix::from_triplets(rows, cols, trips))
    }

    /// Gcd of all entries (zero for the zero matrix).
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.triplets().fold(BigInt::zero(), |g, (_, _, v)| g.gcd(v))
    }

    /// Determinant of a square matrix by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn max_abs(&self) -> BigInt {
        self.triplets().map(|(_, _, v)| v.abs()).max().unwrap_or_default()
    }
}
