//! Finite groups acting simplicially on complexes with vertices `0..n`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::permgroup::{FiniteGroup, Subgroup};
use crate::simplicial::{Simplex, SimplicialComplex, UnionFind, Vertex};

#[derive(Clone)]
pub struct GroupAction {
    group: Arc<FiniteGroup>,
    complex: SimplicialComplex,
    generator_images: Vec<Vec<Vertex>>,
    /// `images[g][v] = g.v` for every group element.
    images: Vec<Vec<u32>>,
}

impl std::fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupAction").field("group", &self.group).field("complex", &self.complex).finish()
    }
}

impl GroupAction {
    /// `generator_images[i][v]` is the image of vertex `v` under the `i`-th
    /// generator of `group`. The images are extended to every element along
    /// the group's word decomposition, and the result is checked to be a
    /// homomorphism into simplicial automorphisms.
    pub fn new(group: Arc<FiniteGroup>, complex: SimplicialComplex, generator_images: Vec<Vec<Vertex>>) -> Result<Self> {
        let n = complex.vertices().len();
        if complex.vertices().iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::InvalidArgument("acting complex must have vertices 0..n".into()));
        }
        if generator_images.len() != group.generators().len() {
            return Err(Error::NotSimplicialAction(format!(
                "{} generator images for {} generators",
                generator_images.len(),
                group.generators().len()
            )));
        }
        let facets: HashSet<&Simplex> = complex.facets().iter().collect();
        for (i, img) in generator_images.iter().enumerate() {
            let mut seen = vec![false; n];
            if img.len() != n || img.iter().any(|&w| w >= n || std::mem::replace(&mut seen[w], true)) {
                return Err(Error::NotSimplicialAction(format!("generator {i} does not permute the vertices")));
            }
            for f in complex.facets() {
                let image = Simplex::new(f.iter().map(|&v| img[v]).collect());
                if !facets.contains(&image) {
                    return Err(Error::NotSimplicialAction(format!("generator {i} sends facet {f:?} to {image:?}")));
                }
            }
        }
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); group.order()];
        images[group.identity()] = (0..n as u32).collect();
        for &e in group.discovery_order() {
            if let Some((prefix, g)) = group.word_parent(e) {
                // (prefix * gen).v = prefix.(gen.v)
                images[e] = generator_images[g].iter().map(|&w| images[prefix][w]).collect();
            }
        }
        let gen_idx = group.generator_indices();
        for e in 0..group.order() {
            for (g, &gi) in gen_idx.iter().enumerate() {
                let prod = group.mul(e, gi);
                if (0..n).any(|v| images[prod][v] != images[e][generator_images[g][v]]) {
                    return Err(Error::NotSimplicialAction("generator images do not define a group action".into()));
                }
            }
        }
        Ok(GroupAction { group, complex, generator_images, images })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn generator_images(&self) -> &[Vec<Vertex>] {
        &self.generator_images
    }

    pub fn apply(&self, element: usize, v: Vertex) -> Vertex {
        self.images[element][v] as Vertex
    }

    pub fn apply_simplex(&self, element: usize, s: &Simplex) -> Simplex {
        Simplex::new(s.iter().map(|&v| self.apply(element, v)).collect())
    }

    /// Orbit representative index (smallest face position) for every `k`-face.
    pub fn orbit_labels(&self, k: usize) -> Vec<usize> {
        let faces = self.complex.faces(k);
        let mut uf = UnionFind::new(faces.len());
        for img in &self.generator_images {
            for (i, s) in faces.iter().enumerate() {
                let t = Simplex::new(s.iter().map(|&v| img[v]).collect());
                uf.union(i, self.complex.face_index(&t).expect("action preserves faces"));
            }
        }
        let mut least: HashMap<usize, usize> = HashMap::new();
        for i in 0..faces.len() {
            least.entry(uf.find(i)).or_insert(i);
        }
        (0..faces.len()).map(|i| least[&uf.find(i)]).collect()
    }

    /// Setwise stabilizer of a simplex.
    pub fn stabilizer(&self, s: &Simplex) -> Subgroup {
        let elements = (0..self.group.order()).filter(|&e| self.apply_simplex(e, s) == *s).collect();
        Subgroup::from_elements(&self.group, elements).expect("stabilizers are subgroups")
    }

    /// The vertex permutation of every element, as a list per element.
    pub fn element_images(&self, element: usize) -> Vec<Vertex> {
        self.images[element].iter().map(|&v| v as Vertex).collect()
    }
}

/// `true` iff every orbit of `k`-simplices meets the faces of `c` exactly
/// once, for every `k`.
pub fn is_fundamental_facet(action: &GroupAction, c: &Simplex) -> Result<bool> {
    let x = action.complex();
    if !x.facets().contains(c) {
        return Err(Error::SimplexNotInComplex(c.to_vec()));
    }
    for k in 0..=x.dim().max(0) as usize {
        let labels = action.orbit_labels(k);
        let orbits: HashSet<usize> = labels.iter().copied().collect();
        let hit: Vec<usize> = c.faces_of_size(k + 1).iter().map(|f| labels[x.face_index(f).unwrap()]).collect();
        let distinct: HashSet<usize> = hit.iter().copied().collect();
        if distinct.len() != hit.len() || distinct.len() != orbits.len() {
            return Ok(false);
        }
    }
    Ok(true)
}
