//! Finite abstract simplicial complexes.
//!
//! A complex is stored by its facets together with an eagerly built index of
//! every nonempty face, grouped by dimension and sorted lexicographically.
//! Vertex ids are opaque integers; an optional side table gives them names.
//! The empty complex has dimension -1 and is not distinguished from `{∅}`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A simplex as a strictly increasing list of vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    /// Dimension, with the empty simplex at -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.by_ref().any(|w| w == v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| other.0.binary_search(v).is_ok()).collect())
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_err())
    }

    pub fn without(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| other.0.binary_search(v).is_err()).collect())
    }

    /// Codimension-one faces, the `i`-th omitting the `i`-th vertex.
    pub fn boundary_faces(&self) -> Vec<Simplex> {
        (0..self.0.len())
            .map(|i| {
                let mut v = self.0.clone();
                v.remove(i);
                Simplex(v)
            })
            .collect()
    }

    /// All nonempty faces (including the simplex itself).
    pub fn nonempty_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < usize::BITS as usize, "simplex too large to enumerate");
        (1usize..(1 << n))
            .map(|mask| Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect()))
            .collect()
    }

    /// Faces with exactly `size` vertices, in lexicographic order.
    pub fn faces_of_size(&self, size: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(size);
        fn rec(src: &[Vertex], start: usize, size: usize, cur: &mut Vec<Vertex>, out: &mut Vec<Simplex>) {
            if cur.len() == size {
                out.push(Simplex(cur.clone()));
                return;
            }
            for i in start..src.len() {
                if src.len() - i < size - cur.len() {
                    break;
                }
                cur.push(src[i]);
                rec(src, i + 1, size, cur, out);
                cur.pop();
            }
        }
        rec(&self.0, 0, size, &mut current, &mut out);
        out
    }
}

impl Deref for Simplex {
    type Target = [Vertex];
    fn deref(&self) -> &[Vertex] {
        &self.0
    }
}

impl From<Vec<Vertex>> for Simplex {
    fn from(v: Vec<Vertex>) -> Self {
        Simplex::new(v)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone)]
pub struct SimplicialComplex {
    vertices: Vec<Vertex>,
    facets: Vec<Simplex>,
    faces: Vec<Vec<Simplex>>,
    lookup: HashMap<Simplex, usize>,
    names: Option<Arc<Vec<String>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("dim", &self.dim())
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { vertices: vec![], facets: vec![], faces: vec![], lookup: HashMap::new(), names: None }
    }

    /// Builds the complex generated by the given vertex sets; non-maximal
    /// sets are absorbed and empty sets ignored.
    pub fn from_facets<I, S>(sets: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Simplex>,
    {
        let mut inputs: Vec<Simplex> = sets.into_iter().map(Into::into).filter(|s| !s.0.is_empty()).collect();
        inputs.sort_unstable();
        inputs.dedup();
        let mut all: HashSet<Simplex> = HashSet::new();
        let mut non_maximal: HashSet<Simplex> = HashSet::new();
        for s in &inputs {
            for f in s.nonempty_faces() {
                if f.0.len() < s.0.len() {
                    non_maximal.insert(f.clone());
                }
                all.insert(f);
            }
        }
        let facets: Vec<Simplex> = inputs.into_iter().filter(|s| !non_maximal.contains(s)).collect();
        let dim = facets.iter().map(|f| f.0.len()).max().unwrap_or(0);
        let mut faces: Vec<Vec<Simplex>> = vec![Vec::new(); dim];
        for f in all {
            faces[f.0.len() - 1].push(f);
        }
        for layer in &mut faces {
            layer.sort_unstable();
        }
        let lookup = faces.iter().flat_map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i))).collect();
        let vertices = faces.first().map(|l| l.iter().map(|s| s.0[0]).collect()).unwrap_or_default();
        SimplicialComplex { vertices, facets, faces, lookup, names: None }
    }

    pub fn with_names(mut self, names: Arc<Vec<String>>) -> Self {
        self.names = Some(names);
        self
    }

    pub fn names(&self) -> Option<&Arc<Vec<String>>> {
        self.names.as_ref()
    }

    pub fn vertex_name(&self, v: Vertex) -> String {
        self.names.as_ref().and_then(|n| n.get(v).cloned()).unwrap_or_else(|| v.to_string())
    }

    pub fn simplex_names(&self, s: &Simplex) -> Vec<String> {
        s.iter().map(|&v| self.vertex_name(v)).collect()
    }

    /// Full simplex on `0..=k`.
    pub fn simplex(k: usize) -> Self {
        SimplicialComplex::from_facets([(0..=k).collect::<Vec<_>>()])
    }

    /// Boundary of the `k`-simplex on `0..=k`.
    pub fn simplex_boundary(k: usize) -> Self {
        SimplicialComplex::from_facets(Simplex((0..=k).collect()).boundary_faces())
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// All simplices of dimension `k` in canonical order.
    pub fn faces(&self, k: usize) -> &[Simplex] {
        self.faces.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Position of a simplex within its dimension layer.
    pub fn face_index(&self, s: &Simplex) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        s.is_empty() || self.lookup.contains_key(s)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|l| l.len()).collect()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.iter().map(|l| l.len()).sum()
    }

    /// All nonempty simplices ordered by dimension, then lexicographically.
    pub fn all_faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter().flatten()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    /// `{τ | τ ∩ σ = ∅, τ ∪ σ ∈ X}`.
    pub fn link(&self, sigma: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains(sigma) {
            return Err(Error::SimplexNotInComplex(sigma.to_vec()));
        }
        let parts = self.facets.iter().filter(|f| sigma.is_face_of(f)).map(|f| f.without(sigma));
        Ok(SimplicialComplex::from_facets(parts).inherit_names(self))
    }

    /// Cofaces of `sigma` among the facets.
    pub fn facets_containing(&self, sigma: &Simplex) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| sigma.is_face_of(&self.facets[i])).collect()
    }

    fn inherit_names(mut self, parent: &SimplicialComplex) -> Self {
        self.names = parent.names.clone();
        self
    }

    /// All simplices of `X` whose vertices lie in `subset`.
    pub fn induced_subcomplex(&self, subset: &[Vertex]) -> Result<SimplicialComplex> {
        let mut keep: HashSet<Vertex> = HashSet::with_capacity(subset.len());
        for &v in subset {
            if self.vertices.binary_search(&v).is_err() {
                return Err(Error::UnknownVertex(v));
            }
            keep.insert(v);
        }
        let parts = self
            .facets
            .iter()
            .map(|f| Simplex(f.iter().copied().filter(|v| keep.contains(v)).collect::<Vec<_>>()));
        Ok(SimplicialComplex::from_facets(parts).inherit_names(self))
    }

    /// Nonempty simplices in the vertex order of the barycentric subdivision.
    pub fn barycenters(&self) -> Vec<Simplex> {
        self.all_faces().cloned().collect()
    }

    /// Vertices are the nonempty simplices of `X` (numbered as in
    /// [`barycenters`](Self::barycenters)); facets are maximal chains.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let bary = self.barycenters();
        let id: HashMap<&Simplex, usize> = bary.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut chains = Vec::new();
        for f in &self.facets {
            for perm in permutations(f.vertices()) {
                let mut prefix = Vec::with_capacity(perm.len());
                let mut chain = Vec::with_capacity(perm.len());
                for v in perm {
                    prefix.push(v);
                    chain.push(id[&Simplex::new(prefix.clone())]);
                }
                chains.push(Simplex::new(chain));
            }
        }
        let names: Vec<String> = bary.iter().map(|s| format!("{{{}}}", self.simplex_names(s).join(" "))).collect();
        SimplicialComplex::from_facets(chains).with_names(Arc::new(names))
    }

    /// Induced subcomplex of the barycentric subdivision on the barycenters of
    /// simplices of dimension at least `min_dim`. It is a model of the
    /// complement of the `(min_dim - 1)`-skeleton of `|X|`.
    pub fn skeleton_complement_model(&self, min_dim: usize) -> Result<SimplicialComplex> {
        if min_dim as isize > self.dim() {
            return Err(Error::InvalidArgument(format!("dimension {min_dim} exceeds dim X = {}", self.dim())));
        }
        let sd = self.barycentric_subdivision();
        let keep: Vec<Vertex> =
            self.barycenters().iter().enumerate().filter(|(_, s)| s.dim() >= min_dim as isize).map(|(i, _)| i).collect();
        sd.induced_subcomplex(&keep)
    }

    /// Number of connected components of the underlying graph.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let pos: HashMap<Vertex, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(self.vertices.len());
        for e in self.faces(1) {
            uf.union(pos[&e[0]], pos[&e[1]]);
        }
        let mut groups: HashMap<usize, Vec<Vertex>> = HashMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(v);
        }
        let mut comps: Vec<Vec<Vertex>> = groups.into_values().collect();
        comps.sort();
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Adjacency lists of the 1-skeleton, neighbours sorted.
    pub fn neighbours(&self) -> HashMap<Vertex, Vec<Vertex>> {
        let mut adj: HashMap<Vertex, Vec<Vertex>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in self.faces(1) {
            adj.get_mut(&e[0]).unwrap().push(e[1]);
            adj.get_mut(&e[1]).unwrap().push(e[0]);
        }
        for l in adj.values_mut() {
            l.sort_unstable();
        }
        adj
    }

    pub fn chamber_graph(&self) -> Result<ChamberGraph> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let mut ridges: HashMap<Simplex, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for r in f.boundary_faces() {
                ridges.entry(r).or_default().push(i);
            }
        }
        let mut adjacency = vec![Vec::new(); self.facets.len()];
        for members in ridges.values() {
            for &a in members {
                for &b in members {
                    if a != b {
                        adjacency[a].push(b);
                    }
                }
            }
        }
        for l in &mut adjacency {
            l.sort_unstable();
            l.dedup();
        }
        Ok(ChamberGraph { adjacency })
    }

    pub fn is_chamber_complex(&self) -> bool {
        !self.is_empty() && self.chamber_graph().map(|g| g.is_connected()).unwrap_or(false)
    }

    /// Cone over `X` with apex `apex` (which must not already be a vertex).
    pub fn cone(&self, apex: Vertex) -> SimplicialComplex {
        assert!(self.vertices.binary_search(&apex).is_err());
        if self.is_empty() {
            return SimplicialComplex::from_facets([vec![apex]]);
        }
        SimplicialComplex::from_facets(self.facets.iter().map(|f| {
            let mut v = f.to_vec();
            v.push(apex);
            v
        }))
    }

    /// Relabels vertices through `map`.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.facets.iter().map(|f| f.iter().map(|&v| map(v)).collect::<Vec<_>>()))
    }

    /// Parses the facet-list format: one facet per line, vertex names
    /// separated by whitespace, `#` comments. Ids follow first appearance.
    pub fn parse_facets(text: &str) -> Result<SimplicialComplex> {
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut names = Vec::new();
        let mut facets = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let facet: Vec<usize> = line
                .split_whitespace()
                .map(|tok| {
                    *ids.entry(tok.to_string()).or_insert_with(|| {
                        names.push(tok.to_string());
                        names.len() - 1
                    })
                })
                .collect();
            facets.push(facet);
        }
        Ok(SimplicialComplex::from_facets(facets).with_names(Arc::new(names)))
    }

    pub fn to_facet_text(&self) -> String {
        self.facets.iter().map(|f| self.simplex_names(f).join(" ") + "\n").collect()
    }

    pub fn f_vector_report(&self) -> FVectorReport {
        FVectorReport { dimension: self.dim(), f_vector: self.f_vector() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FVectorReport {
    pub dimension: isize,
    pub f_vector: Vec<usize>,
}

/// Facets of a pure complex joined when they share a codimension-one face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberGraph {
    pub adjacency: Vec<Vec<usize>>,
}

impl ChamberGraph {
    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    /// BFS distances from `start`; unreachable chambers get `None`.
    pub fn distances_from(&self, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.distances_from(0).iter().all(Option::is_some)
    }
}

/// A vertex coloring; balanced when bijective onto `0..=d` on every facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    color: HashMap<Vertex, usize>,
}

impl Coloring {
    pub fn new(color: HashMap<Vertex, usize>) -> Self {
        Coloring { color }
    }

    pub fn color(&self, v: Vertex) -> Option<usize> {
        self.color.get(&v).copied()
    }

    /// Checks the balanced condition facet by facet.
    pub fn validate(&self, x: &SimplicialComplex) -> Result<()> {
        if !x.is_pure() {
            return Err(Error::NotPure);
        }
        let d = x.dim();
        for f in x.facets() {
            let mut seen = vec![false; (d + 1) as usize];
            for &v in f.iter() {
                let c = self.color(v).ok_or_else(|| Error::InvalidColoring(format!("vertex {v} has no color")))?;
                if c as isize > d {
                    return Err(Error::InvalidColoring(format!("color {c} exceeds dimension {d}")));
                }
                if std::mem::replace(&mut seen[c], true) {
                    return Err(Error::InvalidColoring(format!("facet {f:?} repeats color {c}")));
                }
            }
        }
        Ok(())
    }

    /// `X_J`: the induced subcomplex on vertices with colors in `colors`.
    pub fn restrict(&self, x: &SimplicialComplex, colors: &[usize]) -> Result<SimplicialComplex> {
        self.validate(x)?;
        let keep: Vec<Vertex> =
            x.vertices().iter().copied().filter(|&v| self.color(v).is_some_and(|c| colors.contains(&c))).collect();
        x.induced_subcomplex(&keep)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// All orderings of `items`, in lexicographic order of positions.
pub(crate) fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets([vec![0, 1], vec![1, 2], vec![0, 2]])
    }

    #[test]
    fn facets_and_faces() {
        let t = hollow_triangle();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.faces(1).len(), 3);
        let s = SimplicialComplex::simplex(2);
        assert_eq!(s.num_faces(), 7);
        let absorbed = SimplicialComplex::from_facets([vec![0, 1, 2], vec![0, 1], vec![2]]);
        assert_eq!(absorbed.facets().len(), 1);
        let empty = SimplicialComplex::from_facets(Vec::<Vec<usize>>::new());
        assert_eq!(empty.dim(), -1);
        assert!(empty.is_empty());
    }

    #[test]
    fn face_closure_holds() {
        let x = SimplicialComplex::simplex_boundary(4);
        for s in x.all_faces() {
            for f in s.boundary_faces() {
                assert!(x.contains(&f));
            }
        }
    }

    #[test]
    fn links_in_tetrahedron_boundary() {
        let x = SimplicialComplex::simplex_boundary(3);
        let lv = x.link(&Simplex::new(vec![0])).unwrap();
        assert_eq!(lv, SimplicialComplex::from_facets([vec![1, 2], vec![2, 3], vec![1, 3]]));
        let le = x.link(&Simplex::new(vec![0, 1])).unwrap();
        assert_eq!(le.f_vector(), vec![2]);
        assert!(x.link(&Simplex::new(vec![0, 9])).is_err());
        let top = x.link(&Simplex::new(vec![0, 1, 2])).unwrap();
        assert!(top.is_empty());
    }

    #[test]
    fn link_of_link() {
        let x = SimplicialComplex::simplex_boundary(4);
        let s = Simplex::new(vec![0]);
        let t = Simplex::new(vec![2, 3]);
        let lhs = x.link(&s).unwrap().link(&t).unwrap();
        let rhs = x.link(&s.union(&t)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn subdivisions() {
        let edge = SimplicialComplex::simplex(1);
        let sd = edge.barycentric_subdivision();
        assert_eq!(sd.f_vector(), vec![3, 2]);
        let hex = hollow_triangle().barycentric_subdivision();
        assert_eq!(hex.f_vector(), vec![6, 6]);
        let sd2 = SimplicialComplex::simplex(2).barycentric_subdivision();
        assert_eq!(sd2.f_vector(), vec![7, 12, 6]);
    }

    #[test]
    fn skeleton_models() {
        let x = SimplicialComplex::simplex_boundary(3);
        assert_eq!(x.skeleton_complement_model(0).unwrap(), x.barycentric_subdivision());
        let m = x.skeleton_complement_model(1).unwrap();
        assert_eq!(m.vertices().len(), 10);
        assert!(x.skeleton_complement_model(3).is_err());
    }

    #[test]
    fn induced() {
        let x = SimplicialComplex::simplex_boundary(3);
        assert_eq!(x.induced_subcomplex(x.vertices()).unwrap(), x);
        assert!(x.induced_subcomplex(&[]).unwrap().is_empty());
        assert_eq!(x.induced_subcomplex(&[0, 1, 2]).unwrap(), SimplicialComplex::simplex(2));
        assert_eq!(x.induced_subcomplex(&[7]).unwrap_err(), Error::UnknownVertex(7));
    }

    #[test]
    fn chamber_graphs() {
        let x = SimplicialComplex::simplex_boundary(3);
        let g = x.chamber_graph().unwrap();
        assert_eq!((g.len(), g.num_edges()), (4, 6));
        assert!(x.is_chamber_complex());
        let two = SimplicialComplex::from_facets([vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(!two.chamber_graph().unwrap().is_connected());
        assert!(!two.is_chamber_complex());
        let mixed = SimplicialComplex::from_facets([vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(mixed.chamber_graph().unwrap_err(), Error::NotPure);
    }

    #[test]
    fn colorings() {
        let x = SimplicialComplex::from_facets([vec![0, 1], vec![1, 2], vec![2, 3]]);
        let c = Coloring::new(HashMap::from([(0, 0), (1, 1), (2, 0), (3, 1)]));
        c.validate(&x).unwrap();
        assert_eq!(c.restrict(&x, &[0, 1]).unwrap(), x);
        assert_eq!(c.restrict(&x, &[0]).unwrap().f_vector(), vec![2]);
        let bad = Coloring::new(HashMap::from([(0, 0), (1, 0), (2, 0), (3, 1)]));
        assert!(matches!(bad.validate(&x), Err(Error::InvalidColoring(_))));
        let tri = hollow_triangle();
        let c3 = Coloring::new(HashMap::from([(0, 0), (1, 1), (2, 0)]));
        assert!(c3.validate(&tri).is_err());
    }

    #[test]
    fn facet_text() {
        let x = SimplicialComplex::parse_facets("# triangle\na b\nb c\na c  # closing edge\n").unwrap();
        assert_eq!(x, hollow_triangle());
        assert_eq!(x.to_facet_text(), "a b\na c\nb c\n");
        let json = serde_json::to_string(&x.f_vector_report()).unwrap();
        assert_eq!(json, r#"{"dimension":1,"f_vector":[3,3]}"#);
    }

    #[test]
    fn simplex_helpers() {
        let s = Simplex::new(vec![3, 1, 2]);
        assert_eq!(s.vertices(), &[1, 2, 3]);
        assert!(Simplex::new(vec![1, 3]).is_face_of(&s));
        assert!(!Simplex::new(vec![0, 3]).is_face_of(&s));
        assert_eq!(s.faces_of_size(2).len(), 3);
        assert_eq!(permutations(&[1, 2, 3]).len(), 6);
    }
}
