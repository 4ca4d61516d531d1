//! Smith normal form over the integers.
//!
//! Elimination always pivots on a nonzero entry of least absolute value.
//! Ties go to the smallest Markowitz cost `(row length - 1)(column count - 1)`,
//! which keeps fill-in low on boundary matrices, then to row and column index. The first pass runs on checked
//! `i64` arithmetic and restarts on `BigInt` if anything overflows. Small
//! matrices are reduced with recorded unimodular transforms and the identity
//! `U·M·V = D` is checked on every call; larger ones get cheap spot checks.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::IntegerMatrix;
use super::modp::rank_mod_p;

/// Matrices with at most this many rows and columns are reduced with
/// transforms and fully verified.
pub const VERIFY_DIMENSION_LIMIT: usize = 64;

/// Large prime used for the rank spot check.
const SPOT_PRIME: u64 = 2_147_483_647;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    /// Invariant factors `d_1 | d_2 | ...`, padded with zeros to `min(rows, cols)`.
    #[serde(serialize_with = "serialize_bigints")]
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl SmithForm {
    /// Nonzero invariant factors.
    pub fn factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank]
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors().iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn is_chain(&self) -> bool {
        self.factors().windows(2).all(|w| w[1].is_multiple_of(&w[0]))
            && self.diagonal[self.rank..].iter().all(Zero::is_zero)
            && self.factors().iter().all(|d| d.is_positive())
    }
}

/// A Smith form with the transforms that realise it.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub form: SmithForm,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithDecomposition {
    /// Checks `left · M · right = diag` and that both transforms are unimodular.
    pub fn verify(&self, m: &IntegerMatrix) -> bool {
        let d = self.left.mul(m).mul(&self.right);
        let expected = IntegerMatrix::from_triplets(
            m.rows(),
            m.cols(),
            self.form.diagonal.iter().enumerate().filter(|(_, v)| !Zero::is_zero(*v)).map(|(i, v)| (i, i, v.clone())),
        );
        d == expected && self.left.determinant().abs().is_one() && self.right.determinant().abs().is_one()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    if m.rows() <= VERIFY_DIMENSION_LIMIT && m.cols() <= VERIFY_DIMENSION_LIMIT {
        let dec = smith_decomposition(m);
        assert!(dec.verify(m), "Smith normal form failed U·M·V = D verification");
        return dec.form;
    }
    let form = match eliminate::<i64>(m, false) {
        Some(e) => finish(m, e).form,
        None => finish(m, eliminate::<BigInt>(m, false).expect("BigInt elimination cannot overflow")).form,
    };
    spot_check(m, &form);
    form
}

/// Smith form together with unimodular `U`, `V` such that `U·M·V = D`.
pub fn smith_decomposition(m: &IntegerMatrix) -> SmithDecomposition {
    let e = eliminate::<BigInt>(m, true).expect("BigInt elimination cannot overflow");
    finish(m, e)
}

fn spot_check(m: &IntegerMatrix, form: &SmithForm) {
    let p = BigInt::from(SPOT_PRIME);
    let divisible = form.factors().iter().filter(|d| d.is_multiple_of(&p)).count();
    assert_eq!(rank_mod_p(m, SPOT_PRIME) + divisible, form.rank, "Smith form rank disagrees with modular rank");
    if form.rank == 0 {
        return;
    }
    assert_eq!(m.content(), form.diagonal[0], "first invariant factor is not the gcd of the entries");
    if form.rank >= 2 {
        let d12 = &form.diagonal[0] * &form.diagonal[1];
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..32 {
            let (r1, r2) = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.rows()));
            let (c1, c2) = (rng.gen_range(0..m.cols()), rng.gen_range(0..m.cols()));
            let minor = m.get(r1, c1) * m.get(r2, c2) - m.get(r1, c2) * m.get(r2, c1);
            assert!(minor.is_multiple_of(&d12), "2x2 minor not divisible by d1*d2");
        }
    }
}

/// Entry arithmetic used by the elimination; `None` signals overflow.
trait Entry: Clone + Sized {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    /// Quotient rounding to nearest, so the remainder is at most half the divisor.
    fn nearest_quotient(&self, d: &Self) -> Self;
    /// `self - q * x`
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64().filter(|x| x.checked_abs().is_some())
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn nearest_quotient(&self, d: &Self) -> Self {
        let q = self.div_euclid(*d);
        let r = self - q * d;
        if 2 * r.unsigned_abs() > d.unsigned_abs() {
            q + d.signum()
        } else {
            q
        }
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        let v = self.checked_sub(q.checked_mul(*x)?)?;
        v.checked_abs().map(|_| v)
    }
}

impl Entry for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn nearest_quotient(&self, d: &Self) -> Self {
        let (q, r) = self.div_mod_floor(d);
        // floor remainder has the sign of d
        if (BigInt::from(2) * &r).abs() > d.abs() {
            q + 1
        } else {
            q
        }
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
}

struct Elimination {
    /// `(row, col, value)` in the order pivots were fixed.
    pivots: Vec<(usize, usize, BigInt)>,
    left: Option<Vec<Vec<BigInt>>>,
    right: Option<Vec<Vec<BigInt>>>,
}

type SparseRow<T> = Vec<(usize, T)>;

fn get<T: Entry>(row: &SparseRow<T>, j: usize) -> Option<&T> {
    row.binary_search_by_key(&j, |e| e.0).ok().map(|k| &row[k].1)
}

/// `target - q * source` on sparse rows.
fn row_sub_mul<T: Entry>(target: &SparseRow<T>, q: &T, source: &SparseRow<T>) -> Option<SparseRow<T>> {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < source.len() {
        let ja = target.get(a).map_or(usize::MAX, |e| e.0);
        let jb = source.get(b).map_or(usize::MAX, |e| e.0);
        match ja.cmp(&jb) {
            Ordering::Less => {
                out.push(target[a].clone());
                a += 1;
            }
            Ordering::Greater => {
                let zero = T::from_big(&BigInt::zero())?;
                let v = zero.sub_mul(q, &source[b].1)?;
                if !v.is_zero() {
                    out.push((jb, v));
                }
                b += 1;
            }
            Ordering::Equal => {
                let v = target[a].1.sub_mul(q, &source[b].1)?;
                if !v.is_zero() {
                    out.push((ja, v));
                }
                a += 1;
                b += 1;
            }
        }
    }
    Some(out)
}

fn set<T: Entry>(row: &mut SparseRow<T>, j: usize, v: T) {
    match row.binary_search_by_key(&j, |e| e.0) {
        Ok(k) => {
            if v.is_zero() {
                row.remove(k);
            } else {
                row[k].1 = v;
            }
        }
        Err(k) => {
            if !v.is_zero() {
                row.insert(k, (j, v));
            }
        }
    }
}

fn count_row<T>(counts: &mut [usize], row: &SparseRow<T>, add: bool) {
    for (j, _) in row {
        if add {
            counts[*j] += 1;
        } else {
            counts[*j] -= 1;
        }
    }
}

fn eliminate<T: Entry>(m: &IntegerMatrix, track: bool) -> Option<Elimination> {
    let (nr, nc) = (m.rows(), m.cols());
    let mut rows: Vec<SparseRow<T>> = (0..nr)
        .map(|i| m.row(i).iter().map(|(j, v)| T::from_big(v).map(|x| (*j, x))).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    let mut col_count = vec![0usize; nc];
    for row in &rows {
        count_row(&mut col_count, row, true);
    }
    let mut active = vec![true; nr];
    let mut left = track.then(|| identity(nr));
    let mut right = track.then(|| identity(nc));
    let mut pivots = Vec::new();

    loop {
        // least |entry|, then least Markowitz cost, then row-major position
        let mut best: Option<(usize, usize, usize)> = None;
        'search: for i in 0..nr {
            if !active[i] {
                continue;
            }
            let row_cost = rows[i].len().saturating_sub(1);
            for (j, v) in &rows[i] {
                let cost = row_cost * (col_count[*j] - 1);
                let better = match best {
                    None => true,
                    Some((bi, bj, bc)) => match v.abs_cmp(get(&rows[bi], bj).unwrap()) {
                        Ordering::Less => true,
                        Ordering::Equal => cost < bc,
                        Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((i, *j, cost));
                    if v.is_unit() && cost == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((r, c, _)) = best else { break };
        let p = get(&rows[r], c).unwrap().clone();
        let mut clean = true;

        // clear column c with row operations
        for i in 0..nr {
            if i == r || !active[i] {
                continue;
            }
            let Some(a) = get(&rows[i], c) else { continue };
            let q = a.nearest_quotient(&p);
            if q.is_zero() {
                clean = false;
                continue;
            }
            let new_row = row_sub_mul(&rows[i], &q, &rows[r])?;
            if get(&new_row, c).is_some() {
                clean = false;
            }
            count_row(&mut col_count, &rows[i], false);
            count_row(&mut col_count, &new_row, true);
            rows[i] = new_row;
            if let Some(u) = left.as_mut() {
                let qb = q.to_big();
                let src = u[r].clone();
                for (x, s) in u[i].iter_mut().zip(&src) {
                    *x -= &qb * s;
                }
            }
        }

        // clear row r with column operations
        let row_entries: Vec<(usize, T)> = rows[r].iter().filter(|(j, _)| *j != c).cloned().collect();
        let col_holders: Vec<usize> = (0..nr).filter(|&i| active[i] && get(&rows[i], c).is_some()).collect();
        for (j, b) in row_entries {
            let q = b.nearest_quotient(&p);
            if q.is_zero() {
                clean = false;
                continue;
            }
            for &i in &col_holders {
                let x = get(&rows[i], c).unwrap().clone();
                let old = get(&rows[i], j).cloned().unwrap_or(T::from_big(&BigInt::zero())?);
                let v = old.sub_mul(&q, &x)?;
                if i == r && !v.is_zero() {
                    clean = false;
                }
                let had = get(&rows[i], j).is_some();
                let has = !v.is_zero();
                set(&mut rows[i], j, v);
                match (had, has) {
                    (true, false) => col_count[j] -= 1,
                    (false, true) => col_count[j] += 1,
                    _ => {}
                }
            }
            if let Some(v) = right.as_mut() {
                let qb = q.to_big();
                for row in v.iter_mut() {
                    let s = row[c].clone();
                    row[j] -= &qb * s;
                }
            }
        }

        if clean && rows[r].len() == 1 {
            pivots.push((r, c, p.to_big()));
            active[r] = false;
            col_count[c] -= 1;
            rows[r].clear();
        }
    }
    Some(Elimination { pivots, left, right })
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Normalises signs and the divisibility chain, then assembles the result.
fn finish(m: &IntegerMatrix, mut e: Elimination) -> SmithDecomposition {
    let (nr, nc) = (m.rows(), m.cols());
    for (r, _, v) in e.pivots.iter_mut() {
        if v.is_negative() {
            *v = -v.clone();
            if let Some(u) = e.left.as_mut() {
                for x in u[*r].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
    }
    // units first; they already divide everything
    e.pivots.sort_by_key(|(_, _, v)| !v.is_one());
    let first_non_unit = e.pivots.iter().position(|(_, _, v)| !v.is_one()).unwrap_or(e.pivots.len());
    for i in first_non_unit..e.pivots.len() {
        for j in i + 1..e.pivots.len() {
            let a = e.pivots[i].2.clone();
            let b = e.pivots[j].2.clone();
            if b.is_multiple_of(&a) {
                continue;
            }
            let ext = a.extended_gcd(&b);
            let (g, s, t) = (ext.gcd, ext.x, ext.y);
            let (ri, ci, rj, cj) = (e.pivots[i].0, e.pivots[i].1, e.pivots[j].0, e.pivots[j].1);
            if let (Some(u), Some(v)) = (e.left.as_mut(), e.right.as_mut()) {
                let row_j = u[rj].clone();
                for (x, y) in u[ri].iter_mut().zip(&row_j) {
                    *x += y;
                }
                let (bg, ag) = (&b / &g, &a / &g);
                for row in v.iter_mut() {
                    let (x, y) = (row[ci].clone(), row[cj].clone());
                    row[ci] = &s * &x + &t * &y;
                    row[cj] = -&bg * &x + &ag * &y;
                }
                let f = &t * &bg;
                let row_i = u[ri].clone();
                for (x, y) in u[rj].iter_mut().zip(&row_i) {
                    *x -= &f * y;
                }
            }
            e.pivots[i].2 = g.clone();
            e.pivots[j].2 = &a / &g * &b;
        }
    }
    let rank = e.pivots.len();
    let mut diagonal: Vec<BigInt> = e.pivots.iter().map(|p| p.2.clone()).collect();
    diagonal.resize(nr.min(nc), BigInt::zero());
    let form = SmithForm { diagonal, rank };

    let (left, right) = match (e.left, e.right) {
        (Some(u), Some(v)) => {
            let mut row_order: Vec<usize> = e.pivots.iter().map(|p| p.0).collect();
            let mut col_order: Vec<usize> = e.pivots.iter().map(|p| p.1).collect();
            let mut used_r = vec![false; nr];
            let mut used_c = vec![false; nc];
            row_order.iter().for_each(|&r| used_r[r] = true);
            col_order.iter().for_each(|&c| used_c[c] = true);
            row_order.extend((0..nr).filter(|&r| !used_r[r]));
            col_order.extend((0..nc).filter(|&c| !used_c[c]));
            let u2: Vec<Vec<BigInt>> = row_order.iter().map(|&r| u[r].clone()).collect();
            let v2: Vec<Vec<BigInt>> = v.iter().map(|row| col_order.iter().map(|&c| row[c].clone()).collect()).collect();
            (IntegerMatrix::from_big_dense(nr, nr, &u2), IntegerMatrix::from_big_dense(nc, nc, &v2))
        }
        _ => (IntegerMatrix::identity(0), IntegerMatrix::identity(0)),
    };
    SmithDecomposition { form, left, right }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(m: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntegerMatrix::from_dense(m)).diagonal.iter().map(|d| d.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        let z = smith_normal_form(&IntegerMatrix::zeros(3, 4));
        assert_eq!(z.rank, 0);
        // boundary of the hollow triangle: rows = vertices, cols = edges 01, 02, 12
        let d1 = vec![vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]];
        let f = smith_normal_form(&IntegerMatrix::from_dense(&d1));
        assert_eq!(f.rank, 2);
        assert_eq!(f.factors(), &[BigInt::one(), BigInt::one()]);
        assert_eq!(factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
    }

    #[test]
    fn decomposition_verifies() {
        let m = IntegerMatrix::from_dense(&[vec![6, 4, 0], vec![4, 6, 2], vec![0, 2, 10], vec![8, 8, 8]]);
        let dec = smith_decomposition(&m);
        assert!(dec.verify(&m));
        assert!(dec.form.is_chain());
    }

    #[test]
    fn large_matrix_takes_unverified_path() {
        // 70x70 bidiagonal with a twist; larger than the verification limit
        let n = 70;
        let mut d = vec![vec![0i64; n]; n];
        for i in 0..n {
            d[i][i] = 2;
            if i + 1 < n {
                d[i][i + 1] = 1;
            }
        }
        let f = smith_normal_form(&IntegerMatrix::from_dense(&d));
        assert_eq!(f.rank, n);
        let det: BigInt = f.factors().iter().product();
        assert_eq!(det, BigInt::from(2).pow(n as u32));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let m = IntegerMatrix::from_dense(&[vec![big, big - 1], vec![big - 2, big - 7]]);
        let f = smith_normal_form(&m);
        let det = BigInt::from(big) * BigInt::from(big - 7) - BigInt::from(big - 1) * BigInt::from(big - 2);
        assert_eq!(f.factors().iter().product::<BigInt>(), det.abs());
        assert!(eliminate::<i64>(&IntegerMatrix::from_big_dense(1, 1, &[vec![BigInt::from(2).pow(70)]]), false).is_none());
    }
}
