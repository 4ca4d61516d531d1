use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::matrix::IntegerMatrix;

fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = r.to_i128().expect("residue fits");
    r.rem_euclid(p as i128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Rank over `F_p` by reducing each row against earlier pivot rows keyed by
/// their leading column. `p` must be prime.
pub fn rank_mod_p(m: &IntegerMatrix, p: u64) -> usize {
    assert!(p >= 2, "modulus must be at least 2");
    let mulmod = |a: u64, b: u64| (a as u128 * b as u128 % p as u128) as u64;
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for i in 0..m.rows() {
        let mut row: Vec<(usize, u64)> =
            m.row(i).iter().map(|(j, v)| (*j, reduce(v, p))).filter(|e| e.1 != 0).collect();
        while let Some(&(lead, a)) = row.first() {
            let Some(prow) = pivots.get(&lead) else {
                let inv = pow_mod(a, p - 2, p);
                for e in row.iter_mut() {
                    e.1 = mulmod(e.1, inv);
                }
                pivots.insert(lead, row);
                break;
            };
            // row -= a * prow, merging sorted sparse rows
            let mut out = Vec::with_capacity(row.len() + prow.len());
            let (mut x, mut y) = (0, 0);
            while x < row.len() || y < prow.len() {
                let jx = row.get(x).map_or(usize::MAX, |e| e.0);
                let jy = prow.get(y).map_or(usize::MAX, |e| e.0);
                if jx < jy {
                    out.push(row[x]);
                    x += 1;
                } else {
                    let sub = mulmod(a, prow[y].1);
                    let base = if jx == jy { row[x].1 } else { 0 };
                    let v = (base + p - sub) % p;
                    if v != 0 {
                        out.push((jy, v));
                    }
                    if jx == jy {
                        x += 1;
                    }
                    y += 1;
                }
            }
            row = out;
        }
    }
    pivots.len()
}
