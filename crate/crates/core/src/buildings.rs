//! Type `A_{n-1}` buildings over `F_p`: flag complexes of proper subspaces,
//! gallery and Weyl distances, opposition, the opposition complex, and
//! parabolic and Levi subgroups of `GL_n(F_p)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::permgroup::{matrix_group_as_permutations, matrix_of, point_of_vector, FiniteGroup, Subgroup};
use crate::simplicial::{Simplex, SimplicialComplex, UnionFind, Vertex};
use crate::verdict::{Certificate, Verdict};

/// Largest ambient space `p^n` accepted.
pub const MAX_AMBIENT_POINTS: usize = 4096;

fn inv_mod(a: u8, p: usize) -> u8 {
    (1..p).find(|&x| (a as usize * x) % p == 1).expect("nonzero residue is invertible") as u8
}

/// A subspace of `F_p^n` in reduced row echelon form, with its nonzero
/// vectors as sorted point indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rows: Vec<Vec<u8>>,
    points: Vec<usize>,
    n: usize,
    p: usize,
}

impl Subspace {
    /// Span of the given vectors (coordinates `0..n`).
    pub fn span(n: usize, p: usize, vectors: &[Vec<u8>]) -> Subspace {
        let mut m: Vec<Vec<u8>> = vectors.iter().map(|v| v.iter().map(|&x| x % p as u8).collect()).collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
            m.swap(rank, piv);
            let inv = inv_mod(m[rank][col], p);
            for x in m[rank].iter_mut() {
                *x = ((*x as usize * inv as usize) % p) as u8;
            }
            for r in 0..m.len() {
                if r != rank && m[r][col] != 0 {
                    let f = m[r][col] as usize;
                    for c in 0..n {
                        m[r][c] = ((m[r][c] as usize + p * p - f * m[rank][c] as usize) % p) as u8;
                    }
                }
            }
            rank += 1;
        }
        m.truncate(rank);
        Subspace::from_rref(n, p, m)
    }

    fn from_rref(n: usize, p: usize, rows: Vec<Vec<u8>>) -> Subspace {
        let k = rows.len();
        let mut points = Vec::with_capacity(p.pow(k as u32) - 1);
        for code in 1..p.pow(k as u32) {
            let mut c = code;
            let mut v = vec![0usize; n];
            for row in &rows {
                let a = c % p;
                c /= p;
                for (x, &r) in v.iter_mut().zip(row) {
                    *x += a * r as usize;
                }
            }
            let v: Vec<u8> = v.into_iter().map(|x| (x % p) as u8).collect();
            points.push(point_of_vector(&v, p));
        }
        points.sort_unstable();
        Subspace { rows, points, n, p }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.points.iter().all(|x| other.points.binary_search(x).is_ok())
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        let common = self.points.iter().filter(|x| other.points.binary_search(x).is_ok()).count();
        dim_from_count(common + 1, self.p)
    }

    /// `<r1,r2,...>` with each row written as its digits.
    pub fn literal(&self) -> String {
        let rows: Vec<String> = self.rows.iter().map(|r| r.iter().map(|d| d.to_string()).collect()).collect();
        format!("<{}>", rows.join(","))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

fn dim_from_count(size: usize, p: usize) -> usize {
    let mut d = 0;
    let mut q = 1;
    while q < size {
        q *= p;
        d += 1;
    }
    assert_eq!(q, size, "subspace size is not a power of p");
    d
}

/// `[n choose k]_p`
pub fn gaussian_binomial(n: usize, k: usize, p: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut num = 1usize;
    let mut den = 1usize;
    for i in 0..k {
        num *= p.pow((n - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

fn check_ambient(n: usize, p: usize) -> Result<()> {
    if !crate::permgroup::is_prime(p as u64) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    match p.checked_pow(n as u32) {
        Some(q) if q <= MAX_AMBIENT_POINTS => Ok(()),
        _ => Err(Error::CapExceeded { cap: MAX_AMBIENT_POINTS }),
    }
}

/// All `dim`-dimensional subspaces of `F_p^n`, ordered by their RREF rows.
pub fn enumerate_subspaces(n: usize, p: usize, dim: usize) -> Result<Vec<Subspace>> {
    check_ambient(n, p)?;
    if dim > n {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    // choose pivot columns, then fill free entries
    let mut pivots = Vec::new();
    fn choose(n: usize, k: usize, start: usize, pivots: &mut Vec<usize>, acc: &mut Vec<Vec<usize>>) {
        if pivots.len() == k {
            acc.push(pivots.clone());
            return;
        }
        for c in start..n {
            pivots.push(c);
            choose(n, k, c + 1, pivots, acc);
            pivots.pop();
        }
    }
    let mut patterns = Vec::new();
    choose(n, dim, 0, &mut pivots, &mut patterns);
    for piv in patterns {
        let free: Vec<(usize, usize)> =
            (0..dim).flat_map(|i| ((piv[i] + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (i, c))).collect();
        for code in 0..p.pow(free.len() as u32) {
            let mut rows = vec![vec![0u8; n]; dim];
            for (i, &c) in piv.iter().enumerate() {
                rows[i][c] = 1;
            }
            let mut x = code;
            for &(i, c) in &free {
                rows[i][c] = (x % p) as u8;
                x /= p;
            }
            out.push(Subspace::from_rref(n, p, rows));
        }
    }
    out.sort();
    assert_eq!(out.len(), gaussian_binomial(n, dim, p), "subspace count differs from the Gaussian binomial");
    Ok(out)
}

/// A permutation of `1..=n`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeylElement(pub Vec<usize>);

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement((0..n).collect())
    }

    pub fn longest(n: usize) -> Self {
        WeylElement((0..n).rev().collect())
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// All-pairs gallery distances of a chamber complex, with its diameter.
#[derive(Debug, Clone)]
pub struct ChamberSystem {
    pub distances: Vec<Vec<usize>>,
    pub diameter: usize,
    /// Facet indices of the chambers containing each simplex, by lookup.
    chambers_of: HashMap<Simplex, Vec<usize>>,
}

impl ChamberSystem {
    pub fn new(x: &SimplicialComplex) -> Result<ChamberSystem> {
        let graph = x.chamber_graph().map_err(|_| Error::NotChamberComplex)?;
        if graph.is_empty() {
            return Err(Error::NotChamberComplex);
        }
        let mut distances = Vec::with_capacity(graph.len());
        for c in 0..graph.len() {
            let d = graph.distances_from(c);
            if let Some(far) = d.iter().position(Option::is_none) {
                return Err(Error::UnreachableChamber(c, far));
            }
            distances.push(d.into_iter().map(Option::unwrap).collect::<Vec<_>>());
        }
        let diameter = distances.iter().flatten().copied().max().unwrap_or(0);
        let mut chambers_of: HashMap<Simplex, Vec<usize>> = HashMap::new();
        for (i, f) in x.facets().iter().enumerate() {
            for s in f.nonempty_faces() {
                chambers_of.entry(s).or_default().push(i);
            }
        }
        Ok(ChamberSystem { distances, diameter, chambers_of })
    }

    pub fn num_chambers(&self) -> usize {
        self.distances.len()
    }

    pub fn is_opposite(&self, c: usize, d: usize) -> bool {
        self.distances[c][d] == self.diameter
    }

    /// Ordered pairs of chambers at maximal distance.
    pub fn opposite_chambers(&self) -> Vec<(usize, usize)> {
        let n = self.num_chambers();
        (0..n).flat_map(|c| (0..n).map(move |d| (c, d))).filter(|&(c, d)| self.is_opposite(c, d)).collect()
    }

    pub fn chambers_containing(&self, s: &Simplex) -> &[usize] {
        self.chambers_of.get(s).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Every chamber on `s` has an opposite chamber on `t`, and vice versa.
    pub fn opposite_simplices(&self, s: &Simplex, t: &Simplex) -> Result<bool> {
        if s.len() != t.len() {
            return Err(Error::DimensionMismatch(s.len(), t.len()));
        }
        let cs = self.chambers_containing(s);
        let ct = self.chambers_containing(t);
        if cs.is_empty() || ct.is_empty() {
            return Err(Error::SimplexNotInComplex(if cs.is_empty() { s.to_vec() } else { t.to_vec() }));
        }
        let forward = cs.iter().all(|&c| ct.iter().any(|&d| self.is_opposite(c, d)));
        let backward = ct.iter().all(|&d| cs.iter().any(|&c| self.is_opposite(c, d)));
        Ok(forward && backward)
    }
}

/// Gallery distance between two facets (by index) of a chamber complex.
pub fn gallery_distance(x: &SimplicialComplex, c: usize, d: usize) -> Result<usize> {
    let graph = x.chamber_graph().map_err(|_| Error::NotChamberComplex)?;
    if c >= graph.len() || d >= graph.len() {
        return Err(Error::InvalidArgument("chamber index out of range".into()));
    }
    graph.distances_from(c)[d].ok_or(Error::UnreachableChamber(c, d))
}

/// The flag complex of proper nonzero subspaces of `F_p^n` with its
/// `GL_n(F_p)` action.
#[derive(Debug, Clone)]
pub struct Building {
    pub n: usize,
    pub p: usize,
    /// Vertex `v` is `subspaces[v]`; ordered by dimension, then RREF.
    pub subspaces: Vec<Subspace>,
    pub complex: SimplicialComplex,
    pub action: GroupAction,
    pub chambers: ChamberSystem,
    /// Inside the range where results are certified (`n <= 4` for `p = 2`,
    /// `n <= 3` for `p = 3`).
    pub certified: bool,
    vertex_of: HashMap<Vec<usize>, Vertex>,
}

pub fn building_flag_complex(n: usize, p: usize, cap: usize) -> Result<Building> {
    check_ambient(n, p)?;
    if n < 2 {
        return Err(Error::InvalidArgument("buildings need n >= 2".into()));
    }
    let group = Arc::new(matrix_group_as_permutations(n, p, cap)?);
    let mut subspaces = Vec::new();
    for k in 1..n {
        subspaces.extend(enumerate_subspaces(n, p, k)?);
    }
    let vertex_of: HashMap<Vec<usize>, Vertex> = subspaces.iter().enumerate().map(|(i, s)| (s.points.clone(), i)).collect();
    let by_dim: Vec<Vec<Vertex>> = (1..n).map(|k| (0..subspaces.len()).filter(|&v| subspaces[v].dim() == k).collect()).collect();
    let mut flags = Vec::new();
    let mut chain = Vec::new();
    fn extend(subspaces: &[Subspace], by_dim: &[Vec<Vertex>], chain: &mut Vec<Vertex>, flags: &mut Vec<Vec<Vertex>>) {
        if chain.len() == by_dim.len() {
            flags.push(chain.clone());
            return;
        }
        for &v in &by_dim[chain.len()] {
            if chain.last().is_none_or(|&u| subspaces[u].is_subspace_of(&subspaces[v])) {
                chain.push(v);
                extend(subspaces, by_dim, chain, flags);
                chain.pop();
            }
        }
    }
    extend(&subspaces, &by_dim, &mut chain, &mut flags);
    let names: Vec<String> = subspaces.iter().map(Subspace::literal).collect();
    let complex = SimplicialComplex::from_facets(flags).with_names(Arc::new(names));
    let generator_images = group
        .generators()
        .iter()
        .map(|g| {
            subspaces
                .iter()
                .map(|s| {
                    let mut img: Vec<usize> = s.points.iter().map(|&x| g.apply(x)).collect();
                    img.sort_unstable();
                    vertex_of[&img]
                })
                .collect()
        })
        .collect();
    let action = GroupAction::new(group, complex.clone(), generator_images)?;
    let chambers = ChamberSystem::new(&complex)?;
    let certified = (p == 2 && n <= 4) || (p == 3 && n <= 3);
    Ok(Building { n, p, subspaces, complex, action, chambers, certified, vertex_of })
}

fn basis_vector(n: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0u8; n];
    v[i] = 1;
    v
}

impl Building {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.action.group()
    }

    pub fn vertex_of(&self, s: &Subspace) -> Option<Vertex> {
        self.vertex_of.get(&s.points).copied()
    }

    pub fn chamber_index(&self, flag: &Simplex) -> Option<usize> {
        self.complex.facets().iter().position(|f| f == flag)
    }

    fn chain_of(&self, spans: impl Iterator<Item = Subspace>) -> Simplex {
        Simplex::new(spans.map(|s| self.vertex_of(&s).expect("proper subspace")).collect())
    }

    /// `<e_1> < <e_1, e_2> < ...`
    pub fn standard_flag(&self) -> Simplex {
        let n = self.n;
        self.chain_of((1..n).map(|t| Subspace::span(n, self.p, &(0..t).map(|i| basis_vector(n, i)).collect::<Vec<_>>())))
    }

    /// `<e_n> < <e_n, e_{n-1}> < ...`
    pub fn reversed_flag(&self) -> Simplex {
        let n = self.n;
        self.chain_of(
            (1..n).map(|t| Subspace::span(n, self.p, &(n - t..n).map(|i| basis_vector(n, i)).collect::<Vec<_>>())),
        )
    }

    /// Subspaces of a full flag by increasing dimension.
    fn flag_subspaces(&self, c: usize) -> Result<Vec<&Subspace>> {
        let f = &self.complex.facets()[c];
        if f.len() != self.n - 1 {
            return Err(Error::NotFullFlag);
        }
        Ok(f.iter().map(|&v| &self.subspaces[v]).collect())
    }

    /// Weyl distance from the intersection dimensions of two full flags;
    /// its length is asserted to equal the gallery distance.
    pub fn weyl_distance(&self, c: usize, d: usize) -> Result<WeylElement> {
        let n = self.n;
        let u = self.flag_subspaces(c)?;
        let v = self.flag_subspaces(d)?;
        // dim(U_i ∩ V_j) for 0 <= i, j <= n
        let dim = |i: usize, j: usize| -> usize {
            if i == 0 || j == 0 {
                0
            } else if i == n {
                j
            } else if j == n {
                i
            } else {
                u[i - 1].intersection_dim(v[j - 1])
            }
        };
        let mut w = vec![usize::MAX; n];
        for i in 1..=n {
            for j in 1..=n {
                let m = dim(i, j) as i64 - dim(i - 1, j) as i64 - dim(i, j - 1) as i64 + dim(i - 1, j - 1) as i64;
                match m {
                    0 => {}
                    1 if w[i - 1] == usize::MAX => w[i - 1] = j - 1,
                    _ => panic!("intersection pattern is not a permutation matrix"),
                }
            }
        }
        let mut seen = vec![false; n];
        assert!(w.iter().all(|&j| j < n && !std::mem::replace(&mut seen[j], true)), "not a permutation");
        let w = WeylElement(w);
        assert_eq!(w.length(), self.chambers.distances[c][d], "Weyl length differs from gallery distance");
        Ok(w)
    }

    /// Opposition by the chamber condition, cross-checked against the
    /// complement criterion: pairing `σ` upwards with `σ'` downwards, the
    /// dimensions add up to `n` and the subspaces meet trivially.
    pub fn opposite_simplices(&self, s: &Simplex, t: &Simplex) -> Result<bool> {
        let generic = self.chambers.opposite_simplices(s, t)?;
        let complement = s.iter().zip(t.iter().rev()).all(|(&a, &b)| {
            let (a, b) = (&self.subspaces[a], &self.subspaces[b]);
            a.dim() + b.dim() == self.n && a.intersection_dim(b) == 0
        });
        assert_eq!(generic, complement, "chamber opposition disagrees with the complement criterion for {s:?}, {t:?}");
        Ok(generic)
    }

    /// Images of chambers under each generator.
    fn chamber_generator_images(&self) -> Vec<Vec<usize>> {
        let index: HashMap<&Simplex, usize> = self.complex.facets().iter().enumerate().map(|(i, f)| (f, i)).collect();
        self.action
            .generator_images()
            .iter()
            .map(|img| {
                self.complex
                    .facets()
                    .iter()
                    .map(|f| index[&Simplex::new(f.iter().map(|&v| img[v]).collect())])
                    .collect()
            })
            .collect()
    }

    /// Opposition complex with the induced diagonal action.
    pub fn opposition_complex(&self) -> Result<OppositionComplex> {
        let mut opp = opposition_complex(&self.complex, &self.chambers)?;
        // every opposite pair agrees with the complement criterion
        for &(a, b) in &opp.pairs {
            assert!(self.opposite_simplices(&Simplex::new(vec![a]), &Simplex::new(vec![b]))?);
        }
        let index: HashMap<(Vertex, Vertex), Vertex> = opp.pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let generator_images = self
            .action
            .generator_images()
            .iter()
            .map(|img| opp.pairs.iter().map(|&(a, b)| index[&(img[a], img[b])]).collect())
            .collect();
        opp.action = Some(GroupAction::new(self.group().clone(), opp.complex.clone(), generator_images)?);
        let (c, d) = (self.standard_flag(), self.reversed_flag());
        opp.standard_facet = Some(opp.facet_of(&c, &d));
        Ok(opp)
    }

    /// Ordered chamber pairs grouped by Weyl distance; each group must be a
    /// single orbit of `action` (which must act on this building's complex).
    pub fn verify_weyl_transitivity(&self, action: &GroupAction) -> Result<Verdict> {
        if action.complex() != &self.complex {
            return Err(Error::InvalidArgument("action is on a different complex".into()));
        }
        let n = self.complex.facets().len();
        let index: HashMap<&Simplex, usize> = self.complex.facets().iter().enumerate().map(|(i, f)| (f, i)).collect();
        let images: Vec<Vec<usize>> = action
            .generator_images()
            .iter()
            .map(|img| {
                self.complex.facets().iter().map(|f| index[&Simplex::new(f.iter().map(|&v| img[v]).collect())]).collect()
            })
            .collect();
        let mut uf = UnionFind::new(n * n);
        for img in &images {
            for c in 0..n {
                for d in 0..n {
                    uf.union(c * n + d, img[c] * n + img[d]);
                }
            }
        }
        let mut classes: std::collections::BTreeMap<WeylElement, (usize, HashSet<usize>)> = Default::default();
        for c in 0..n {
            for d in 0..n {
                let w = self.weyl_distance(c, d)?;
                let e = classes.entry(w).or_default();
                e.0 += 1;
                e.1.insert(uf.find(c * n + d));
            }
        }
        if let Some((w, (_, orbits))) = classes.iter().find(|(_, (_, o))| o.len() > 1) {
            return Ok(Verdict::refuted(Certificate::Data {
                description: format!("Weyl distance {w} splits into several orbits"),
                values: vec![orbits.len() as i64],
            }));
        }
        Ok(Verdict::verified(Certificate::Data {
            description: format!(
                "sizes of the {} Weyl distance classes of ordered chamber pairs, each a single orbit: {}",
                classes.len(),
                classes.keys().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
            ),
            values: classes.values().map(|(s, _)| *s as i64).collect(),
        }))
    }

    /// Chamber index of the images of every chamber under each generator.
    pub fn chamber_action(&self) -> Vec<Vec<usize>> {
        self.chamber_generator_images()
    }
}

/// `Opp(X)`: vertices are opposite vertex pairs `(v, v')`; the simplex of an
/// opposite chamber pair `(C, C')` consists of the opposite pairs inside it.
#[derive(Debug, Clone)]
pub struct OppositionComplex {
    pub complex: SimplicialComplex,
    pub pairs: Vec<(Vertex, Vertex)>,
    pub action: Option<GroupAction>,
    /// Facet of the standard and reversed flags, when built from a building.
    pub standard_facet: Option<Simplex>,
}

impl OppositionComplex {
    /// Simplex of the opposite pair `(s, t)`.
    pub fn facet_of(&self, s: &Simplex, t: &Simplex) -> Simplex {
        let index: HashMap<(Vertex, Vertex), Vertex> = self.pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        Simplex::new(s.iter().flat_map(|&a| t.iter().filter_map(|&b| index.get(&(a, b)).copied()).collect::<Vec<_>>()).collect())
    }
}

pub fn opposition_complex(x: &SimplicialComplex, chambers: &ChamberSystem) -> Result<OppositionComplex> {
    let verts = x.vertices();
    let mut pairs = Vec::new();
    for &a in verts {
        for &b in verts {
            if chambers.opposite_simplices(&Simplex::new(vec![a]), &Simplex::new(vec![b]))? {
                pairs.push((a, b));
            }
        }
    }
    let index: HashMap<(Vertex, Vertex), Vertex> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let d = x.dim() as usize;
    let mut facets = Vec::new();
    for (c, e) in chambers.opposite_chambers() {
        let (fc, fe) = (&x.facets()[c], &x.facets()[e]);
        let s: Vec<Vertex> = fc.iter().flat_map(|&a| fe.iter().filter_map(|&b| index.get(&(a, b)).copied()).collect::<Vec<_>>()).collect();
        assert_eq!(s.len(), d + 1, "opposite chambers do not pair up vertex by vertex");
        facets.push(s);
    }
    let names: Vec<String> = pairs.iter().map(|&(a, b)| format!("({}|{})", x.vertex_name(a), x.vertex_name(b))).collect();
    let complex = SimplicialComplex::from_facets(facets).with_names(Arc::new(names));
    assert_eq!(complex.vertices().len(), pairs.len(), "isolated opposite vertex pair");
    assert_eq!(complex.dim(), x.dim(), "opposition complex changes dimension");
    // each k-simplex of Opp is an opposite pair of k-simplices
    for k in 0..=d {
        let mut count = 0;
        for s in x.faces(k) {
            for t in x.faces(k) {
                if chambers.opposite_simplices(s, t)? {
                    count += 1;
                }
            }
        }
        assert_eq!(complex.faces(k).len(), count, "simplices of Opp in dimension {k} are not the opposite pairs");
    }
    Ok(OppositionComplex { complex, pairs, action: None, standard_facet: None })
}

/// Parabolic and Levi subgroups attached to the `k`-faces of the standard flag.
#[derive(Debug, Clone)]
pub struct ParabolicLevi {
    pub k: usize,
    /// Faces of the standard flag, and their opposite faces in the reversed flag.
    pub faces: Vec<(Simplex, Simplex)>,
    pub parabolics: Vec<Subgroup>,
    pub levis: Vec<Subgroup>,
    /// Diagonal block sizes of each Levi subgroup.
    pub block_sizes: Vec<Vec<usize>>,
}

/// Matrices of `GL_n(F_p)` that are block diagonal with the given block sizes.
pub fn block_diagonal_subgroup(b: &Building, blocks: &[usize]) -> Subgroup {
    let g = b.group();
    let mut block_of = Vec::new();
    for (i, &s) in blocks.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(i, s));
    }
    let elems = (0..g.order())
        .filter(|&e| {
            let m = matrix_of(g, e, b.p).expect("matrix group carries labels");
            (0..b.n).all(|i| (0..b.n).all(|j| block_of[i] == block_of[j] || m[i][j] == 0))
        })
        .collect();
    Subgroup::from_elements(g, elems).expect("block diagonal matrices form a subgroup")
}

pub fn parabolic_and_levi_subgroups(b: &Building, k: usize) -> Result<ParabolicLevi> {
    if k + 2 > b.n {
        return Err(Error::InvalidArgument(format!("face dimension {k} exceeds the chamber dimension")));
    }
    let c = b.standard_flag();
    let c_rev = b.reversed_flag();
    let mut faces = Vec::new();
    let mut parabolics = Vec::new();
    let mut levis = Vec::new();
    let mut block_sizes = Vec::new();
    for s in c.faces_of_size(k + 1) {
        // U_t in C is opposite V_{n-t} in the reversed flag
        let t = Simplex::new(s.iter().map(|&v| c_rev[b.n - b.subspaces[v].dim() - 1]).collect());
        assert!(b.opposite_simplices(&s, &t)?, "standard faces are not opposite");
        let p_s = b.action.stabilizer(&s);
        let levi = crate::permgroup::intersect(&[p_s.clone(), b.action.stabilizer(&t)])?;
        let mut dims: Vec<usize> = s.iter().map(|&v| b.subspaces[v].dim()).collect();
        dims.push(b.n);
        let blocks: Vec<usize> = dims.iter().scan(0, |prev, &d| Some(d - std::mem::replace(prev, d))).collect();
        assert_eq!(levi, block_diagonal_subgroup(b, &blocks), "Levi subgroup is not block diagonal with blocks {blocks:?}");
        faces.push((s, t));
        parabolics.push(p_s);
        levis.push(levi);
        block_sizes.push(blocks);
    }
    Ok(ParabolicLevi { k, faces, parabolics, levis, block_sizes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::DEFAULT_ELEMENT_CAP;

    #[test]
    fn subspace_counts() {
        assert_eq!(enumerate_subspaces(3, 2, 1).unwrap().len(), 7);
        assert_eq!(enumerate_subspaces(3, 2, 2).unwrap().len(), 7);
        assert_eq!(enumerate_subspaces(4, 2, 2).unwrap().len(), 35);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        let s = Subspace::span(3, 2, &[vec![1, 1, 0], vec![0, 1, 0]]);
        assert_eq!(s.literal(), "<100,010>");
        assert!(matches!(enumerate_subspaces(20, 2, 1), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn fano_building() {
        let b = building_flag_complex(3, 2, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(b.complex.f_vector(), vec![14, 21]);
        let c = b.chamber_index(&b.standard_flag()).unwrap();
        let d = b.chamber_index(&b.reversed_flag()).unwrap();
        assert_eq!(b.weyl_distance(c, c).unwrap(), WeylElement::identity(3));
        assert_eq!(b.weyl_distance(c, d).unwrap(), WeylElement::longest(3));
        assert_eq!(gallery_distance(&b.complex, c, d).unwrap(), 3);
        assert_eq!(b.chambers.opposite_chambers().len(), 168);
    }

    #[test]
    fn projective_line_is_discrete() {
        let b = building_flag_complex(2, 3, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(b.complex.f_vector(), vec![4]);
        let v = b.verify_weyl_transitivity(&b.action).unwrap();
        let Some(Certificate::Data { values, .. }) = v.certificate() else { panic!() };
        assert_eq!(values, &vec![4, 12]);
    }

    #[test]
    fn point_line_opposition() {
        let b = building_flag_complex(3, 2, DEFAULT_ELEMENT_CAP).unwrap();
        let e1 = b.vertex_of(&Subspace::span(3, 2, &[vec![1, 0, 0]])).unwrap();
        let e23 = b.vertex_of(&Subspace::span(3, 2, &[vec![0, 1, 0], vec![0, 0, 1]])).unwrap();
        let e12 = b.vertex_of(&Subspace::span(3, 2, &[vec![1, 0, 0], vec![0, 1, 0]])).unwrap();
        assert!(b.opposite_simplices(&Simplex::new(vec![e1]), &Simplex::new(vec![e23])).unwrap());
        assert!(!b.opposite_simplices(&Simplex::new(vec![e1]), &Simplex::new(vec![e12])).unwrap());
        assert!(matches!(
            b.opposite_simplices(&Simplex::new(vec![e1]), &Simplex::new(vec![e1, e12])),
            Err(Error::DimensionMismatch(1, 2))
        ));
    }

    #[test]
    fn levis_are_block_diagonal() {
        let b = building_flag_complex(3, 2, DEFAULT_ELEMENT_CAP).unwrap();
        let pl = parabolic_and_levi_subgroups(&b, 0).unwrap();
        assert_eq!(pl.levis.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![6, 6]);
        assert_eq!(pl.parabolics.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![24, 24]);
        assert_eq!(pl.block_sizes, vec![vec![1, 2], vec![2, 1]]);
        let top = parabolic_and_levi_subgroups(&b, 1).unwrap();
        assert_eq!(top.levis[0].order(), 1);
        assert_eq!(top.parabolics[0].order(), 8);
    }
}
