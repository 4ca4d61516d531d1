//! Reduced simplicial homology over the integers and prime fields.
//!
//! Chains are oriented by the sorted vertex order. `∂_0` is the augmentation
//! onto the empty simplex, so `H̃_{-1}` is the coefficient ring exactly when
//! the complex is empty.

mod matrix;
mod modp;
mod snf;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

pub use matrix::IntegerMatrix;
pub use modp::rank_mod_p;
pub use snf::{smith_decomposition, smith_normal_form, SmithDecomposition, SmithForm, VERIFY_DIMENSION_LIMIT};

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;
use crate::verdict::{Certificate, DegreeGroup, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Prime(u64),
}

impl Coefficients {
    pub fn prime(p: u64) -> Result<Coefficients> {
        if crate::permgroup::is_prime(p) {
            Ok(Coefficients::Prime(p))
        } else {
            Err(Error::InvalidArgument(format!("{p} is not prime")))
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => f.write_str("Z"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// Accepts `z`, or `f` followed by a prime (`f2`, `f3`, ...).
    fn from_str(s: &str) -> Result<Coefficients> {
        let t = s.trim().to_ascii_lowercase();
        if t == "z" {
            return Ok(Coefficients::Integers);
        }
        match t.strip_prefix('f').and_then(|p| p.parse::<u64>().ok()) {
            Some(p) => Coefficients::prime(p),
            None => Err(Error::Parse(format!("unknown coefficients `{s}`"))),
        }
    }
}

impl Serialize for Coefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub betti: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn to_degree_group(&self) -> DegreeGroup {
        DegreeGroup { degree: self.degree, betti: self.betti, torsion: self.torsion.iter().map(|t| t.to_string()).collect() }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        f.write_str(&parts.join(" + "))
    }
}

/// Reduced homology in degrees `-1..=top`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub coefficients: Coefficients,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn degree(&self, i: i64) -> Option<&HomologyGroup> {
        usize::try_from(i + 1).ok().and_then(|k| self.groups.get(k))
    }

    pub fn betti(&self, i: i64) -> usize {
        self.degree(i).map_or(0, |g| g.betti)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn is_zero_through(&self, k: i64) -> bool {
        self.groups.iter().filter(|g| g.degree <= k).all(HomologyGroup::is_zero)
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// First degree with nonzero homology.
    pub fn first_nonzero(&self) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| !g.is_zero())
    }

    /// `Some(d)` if homology is zero outside degree `d` and free in degree `d`.
    pub fn concentrated_in(&self, d: i64) -> bool {
        self.groups.iter().all(|g| if g.degree == d { g.is_free() } else { g.is_zero() })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().map(|g| if g.degree.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("homology profile serializes")
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.groups {
            writeln!(f, "H~_{}({}) = {}", g.degree, self.coefficients, g)?;
        }
        Ok(())
    }
}

/// `∂_k : C_k → C_{k-1}` with rows indexed by `(k-1)`-faces and columns by
/// `k`-faces, both in canonical order. `∂_0` is the augmentation row.
pub fn boundary_matrix(x: &SimplicialComplex, k: usize) -> IntegerMatrix {
    let cols = x.faces(k);
    if k == 0 {
        return IntegerMatrix::from_triplets(1, cols.len(), (0..cols.len()).map(|j| (0, j, BigInt::one())));
    }
    let rows = x.faces(k - 1).len();
    let mut trips = Vec::with_capacity(cols.len() * (k + 1));
    for (j, s) in cols.iter().enumerate() {
        for (pos, face) in s.boundary_faces().into_iter().enumerate() {
            let i = x.face_index(&face).expect("complex is closed under faces");
            let sign = if pos % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            trips.push((i, j, sign));
        }
    }
    IntegerMatrix::from_triplets(rows, cols.len(), trips)
}

struct BoundaryData {
    rank: usize,
    torsion: Vec<BigInt>,
}

fn analyse(m: &IntegerMatrix, coeff: Coefficients) -> BoundaryData {
    match coeff {
        Coefficients::Integers => {
            let f = smith_normal_form(m);
            BoundaryData { rank: f.rank, torsion: f.torsion() }
        }
        Coefficients::Prime(p) => BoundaryData { rank: rank_mod_p(m, p), torsion: vec![] },
    }
}

fn face_count(x: &SimplicialComplex, i: i64) -> usize {
    match i {
        -1 => 1,
        i if i < -1 => 0,
        i => x.faces(i as usize).len(),
    }
}

fn compute(x: &SimplicialComplex, top: i64, coeff: Coefficients) -> HomologyProfile {
    // boundary data for ∂_0 ..= ∂_{top+1}
    let data: Vec<BoundaryData> = (0..=(top + 1).max(0) as usize).map(|k| analyse(&boundary_matrix(x, k), coeff)).collect();
    let mut groups = Vec::new();
    for i in -1..=top {
        let rank_in = if i >= 0 { data[i as usize].rank } else { 0 };
        let out = &data[(i + 1) as usize];
        let betti = face_count(x, i) - rank_in - out.rank;
        groups.push(HomologyGroup { degree: i, betti, torsion: out.torsion.clone() });
    }
    HomologyProfile { coefficients: coeff, groups }
}

/// Reduced homology in every degree from `-1` to `dim X`.
pub fn reduced_homology(x: &SimplicialComplex, coeff: Coefficients) -> HomologyProfile {
    let profile = compute(x, x.dim() as i64, coeff);
    let euler: i64 = (-1..=x.dim() as i64)
        .map(|i| if i.rem_euclid(2) == 0 { face_count(x, i) as i64 } else { -(face_count(x, i) as i64) })
        .sum();
    assert_eq!(euler, profile.euler_characteristic(), "Euler characteristic mismatch");
    profile
}

/// Reduced homology in degrees `-1..=k` only, without building higher boundaries.
pub fn reduced_homology_upto(x: &SimplicialComplex, k: i64, coeff: Coefficients) -> HomologyProfile {
    if k >= x.dim() as i64 {
        return reduced_homology(x, coeff);
    }
    compute(x, k, coeff)
}

/// `H̃_i(X) = 0` for all `i ≤ k`. Every complex is `(-2)`-acyclic and a
/// complex is `(-1)`-acyclic iff it is nonempty.
pub fn is_k_acyclic(x: &SimplicialComplex, k: i64, coeff: Coefficients) -> bool {
    if k < -1 {
        return true;
    }
    reduced_homology_upto(x, k, coeff).is_zero_through(k)
}

/// Verdict form of [`is_k_acyclic`] carrying the failing group or the
/// vanishing degrees.
pub fn acyclicity_certificate(x: &SimplicialComplex, k: i64, coeff: Coefficients) -> Verdict {
    if k < -1 {
        return Verdict::verified(Certificate::HomologyVanishes { coefficients: coeff.to_string(), degrees: vec![] });
    }
    let h = reduced_homology_upto(x, k, coeff);
    match h.groups.iter().find(|g| g.degree <= k && !g.is_zero()) {
        Some(g) => Verdict::refuted(Certificate::HomologyNonzero { coefficients: coeff.to_string(), group: g.to_degree_group() }),
        None => Verdict::verified(Certificate::HomologyVanishes { coefficients: coeff.to_string(), degrees: (-1..=k).collect() }),
    }
}

/// Homology concentrated in degree `d` and free there.
pub fn homology_concentrated(x: &SimplicialComplex, d: i64, coeff: Coefficients) -> Verdict {
    let h = reduced_homology(x, coeff);
    concentration_verdict(&h, d)
}

pub fn concentration_verdict(h: &HomologyProfile, d: i64) -> Verdict {
    let coefficients = h.coefficients.to_string();
    match h.groups.iter().find(|g| if g.degree == d { !g.is_free() } else { !g.is_zero() }) {
        Some(g) => Verdict::refuted(Certificate::HomologyNonzero { coefficients, group: g.to_degree_group() }),
        None => Verdict::verified(Certificate::Concentrated { coefficients, degree: d, rank: h.betti(d) }),
    }
}

/// Homological sphericity: vanishing below the top dimension and free top
/// homology. This says nothing about the fundamental group.
pub fn sphericity_certificate(x: &SimplicialComplex, coeff: Coefficients) -> Verdict {
    homology_concentrated(x, x.dim() as i64, coeff)
}
