//! Exact rank oracles shared by the integration tests.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank over Q by fraction-free elimination.
pub fn rank_over_q(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let (a, b) = (m[rank][c].clone(), m[r][c].clone());
                for k in 0..cols {
                    m[r][k] = &m[r][k] * &a - &m[rank][k] * &b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over F_p by plain elimination.
pub fn rank_over_fp(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let inv = |a: i64| (1..p).find(|&b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let s = inv(m[rank][c]);
        for k in 0..cols {
            m[rank][k] = m[rank][k] * s % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}
