//! Coset complexes `CC(G, H)`: the nerve of the cover of `G` by the left
//! cosets of a family of subgroups, built through the bijection between
//! simplices and cosets of intersections.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::action::{is_fundamental_facet, GroupAction};
use crate::cmcheck::{cm_over, homotopy_cm};
use crate::error::{Error, Result};
use crate::fundgroup::{connectivity_certificate, ConnectivityBudget};
use crate::homology::{acyclicity_certificate, concentration_verdict, reduced_homology, Coefficients, HomologyProfile};
use crate::permgroup::{intersect, left_cosets, FiniteGroup, Subgroup};
use crate::simplicial::{Coloring, Simplex, SimplicialComplex, Vertex};
use crate::verdict::{Certificate, Status, Verdict};

/// An ordered list of distinct subgroups of one group; the order fixes the coloring.
#[derive(Debug, Clone)]
pub struct SubgroupFamily {
    parent: Arc<FiniteGroup>,
    members: Vec<Subgroup>,
}

impl SubgroupFamily {
    pub fn new(parent: &Arc<FiniteGroup>, members: Vec<Subgroup>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("a subgroup family needs at least one member".into()));
        }
        if members.iter().any(|m| !Arc::ptr_eq(m.parent(), parent)) {
            return Err(Error::ParentMismatch);
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if members[i] == members[j] {
                    return Err(Error::DuplicateSubgroup(i, j));
                }
            }
        }
        Ok(SubgroupFamily { parent: parent.clone(), members })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The subfamily with the given member positions, in that order.
    pub fn subfamily(&self, positions: &[usize]) -> Result<SubgroupFamily> {
        SubgroupFamily::new(&self.parent, positions.iter().map(|&i| self.members[i].clone()).collect())
    }
}

/// Nerve of a cover of `0..ambient`: one vertex per member, a simplex for
/// every set of members with a common point.
pub fn nerve(ambient: usize, cover: &[Vec<usize>]) -> Result<SimplicialComplex> {
    let mut covered = vec![false; ambient];
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); ambient];
    for (i, set) in cover.iter().enumerate() {
        for &x in set {
            if x >= ambient {
                return Err(Error::NotACover);
            }
            covered[x] = true;
            containing[x].push(i);
        }
    }
    if covered.iter().any(|c| !c) {
        return Err(Error::NotACover);
    }
    Ok(SimplicialComplex::from_facets(containing))
}

/// `label[g]` is the number of the coset `gH`, cosets numbered by least element.
fn coset_labels(group: &FiniteGroup, sub: &Subgroup) -> (Vec<u32>, Vec<usize>) {
    let mut label = vec![u32::MAX; group.order()];
    let mut reps = Vec::new();
    for g in 0..group.order() {
        if label[g] != u32::MAX {
            continue;
        }
        for &h in sub.elements() {
            label[group.mul(g, h)] = reps.len() as u32;
        }
        reps.push(g);
    }
    (label, reps)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetLabel {
    pub member: usize,
    pub coset: usize,
    /// Least element of the coset.
    pub representative: usize,
}

#[derive(Debug, Clone)]
pub struct CosetComplexResult {
    pub complex: SimplicialComplex,
    pub labels: Vec<CosetLabel>,
    /// Member index of every vertex.
    pub coloring: Vec<usize>,
    pub action: GroupAction,
    pub members: Vec<Subgroup>,
    offsets: Vec<usize>,
    element_labels: Vec<Vec<u32>>,
}

impl CosetComplexResult {
    pub fn vertex_of(&self, member: usize, element: usize) -> Vertex {
        self.offsets[member] + self.element_labels[member][element] as usize
    }

    pub fn coloring(&self) -> Coloring {
        Coloring::new(self.coloring.iter().copied().enumerate().collect())
    }

    /// The facet `{H_0, ..., H_d}` of identity cosets.
    pub fn identity_facet(&self) -> Simplex {
        Simplex::new((0..self.members.len()).map(|i| self.vertex_of(i, self.action.group().identity())).collect())
    }
}

/// Builds `CC(G, H)` for an arbitrary member list (repeats allowed; vertices
/// are colored by position). Asserts the face counts predicted by the
/// intersection-coset bijection.
pub(crate) fn build_coset_complex(group: &Arc<FiniteGroup>, members: &[Subgroup]) -> CosetComplexResult {
    assert!(!members.is_empty(), "coset complex of an empty family");
    let mut element_labels = Vec::new();
    let mut labels = Vec::new();
    let mut coloring = Vec::new();
    let mut offsets = Vec::new();
    let mut reps_per_member = Vec::new();
    for (i, h) in members.iter().enumerate() {
        let (lab, reps) = coset_labels(group, h);
        offsets.push(labels.len());
        for (c, &r) in reps.iter().enumerate() {
            labels.push(CosetLabel { member: i, coset: c, representative: r });
            coloring.push(i);
        }
        element_labels.push(lab);
        reps_per_member.push(reps);
    }
    // facets: one per coset of the total intersection
    let mut facets: HashSet<Vec<Vertex>> = HashSet::new();
    for g in 0..group.order() {
        facets.insert((0..members.len()).map(|i| offsets[i] + element_labels[i][g] as usize).collect());
    }
    let names: Vec<String> = labels.iter().map(|l| format!("H{}:{}", l.member, l.coset)).collect();
    let mut facet_list: Vec<Vec<Vertex>> = facets.into_iter().collect();
    facet_list.sort();
    let complex = SimplicialComplex::from_facets(facet_list).with_names(Arc::new(names));
    assert_eq!(complex.vertices().len(), labels.len(), "every coset is a vertex");

    // face counts from the bijection: k-simplices <-> cosets of (k+1)-fold intersections
    let m = members.len();
    let mut expected = vec![0usize; m];
    for mask in 1u64..(1 << m) {
        let subset: Vec<Subgroup> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| members[i].clone()).collect();
        let k = subset.len() - 1;
        expected[k] += group.order() / intersect(&subset).expect("same parent").order();
    }
    assert_eq!(complex.f_vector(), expected, "face counts disagree with the intersection-coset bijection");

    let generator_images = group
        .generator_indices()
        .iter()
        .map(|&s| {
            labels
                .iter()
                .map(|l| offsets[l.member] + element_labels[l.member][group.mul(s, l.representative)] as usize)
                .collect()
        })
        .collect();
    let action = GroupAction::new(group.clone(), complex.clone(), generator_images).expect("left multiplication is simplicial");
    let result = CosetComplexResult { complex, labels, coloring, action, members: members.to_vec(), offsets, element_labels };
    result.coloring().validate(&result.complex).expect("coset coloring is balanced");
    let c = result.identity_facet();
    assert!(is_fundamental_facet(&result.action, &c).expect("identity facet"), "identity facet is not a fundamental domain");
    result
}

pub fn coset_complex(family: &SubgroupFamily) -> CosetComplexResult {
    build_coset_complex(&family.parent, &family.members)
}

/// Reference construction: the nerve of the explicit cover of `G` by all
/// cosets, vertices numbered member by member.
pub fn coset_complex_via_nerve(family: &SubgroupFamily) -> Result<SimplicialComplex> {
    let mut cover = Vec::new();
    for h in &family.members {
        cover.extend(left_cosets(&family.parent, h)?.into_iter().map(|c| c.elements));
    }
    nerve(family.parent.order(), &cover)
}

/// Closure of the union of the members equals the whole group.
pub fn union_generates(family: &SubgroupFamily) -> bool {
    let gens: Vec<usize> = family.members.iter().flat_map(|h| h.generators()).collect();
    Subgroup::generated(&family.parent, &gens).order() == family.parent.order()
}

/// `m`-generation: `CC(G, H)` is `(m-1)`-connected. For `m = 1` the answer
/// is asserted to match [`union_generates`].
pub fn generation_verdict(family: &SubgroupFamily, m: i64, budget: ConnectivityBudget) -> Verdict {
    let cc = coset_complex(family);
    let v = connectivity_certificate(&cc.complex, m - 1, budget);
    if m == 1 {
        assert_eq!(v.is_verified(), union_generates(family), "connectivity disagrees with generation by the union");
    }
    v
}

/// Explicit isomorphism `CC(G, P) -> X`, `g Stab(v) -> g.v`, for the vertex
/// stabilizers `P` of a fundamental facet.
#[derive(Debug, Clone)]
pub struct CosetModel {
    pub stabilizers: Vec<Subgroup>,
    pub coset_complex: CosetComplexResult,
    /// Image in `X` of each vertex of the coset complex.
    pub map: Vec<Vertex>,
    pub verdict: Verdict,
}

pub fn coset_model_isomorphism(action: &GroupAction, c: &Simplex) -> Result<CosetModel> {
    if !is_fundamental_facet(action, c)? {
        return Err(Error::PreconditionFailed(format!("{c:?} is not a fundamental facet")));
    }
    let group = action.group();
    let x = action.complex();
    let stabilizers: Vec<Subgroup> = c.iter().map(|&v| action.stabilizer(&Simplex::new(vec![v]))).collect();
    let cc = build_coset_complex(group, &stabilizers);
    let mut map = Vec::with_capacity(cc.labels.len());
    for l in &cc.labels {
        let v = c[l.member];
        let image = action.apply(l.representative, v);
        // well defined on the whole coset
        for &h in cc.members[l.member].elements() {
            let g = group.mul(l.representative, h);
            assert_eq!(action.apply(g, v), image, "coset map is not well defined");
        }
        map.push(image);
    }
    let mut parts = Vec::new();
    let distinct: HashSet<Vertex> = map.iter().copied().collect();
    let bijective = distinct.len() == map.len() && map.len() == x.vertices().len();
    parts.push(("bijective on vertices".to_string(), bijective));
    let mapped: HashSet<Simplex> =
        cc.complex.facets().iter().map(|f| Simplex::new(f.iter().map(|&v| map[v]).collect())).collect();
    let target: HashSet<Simplex> = x.facets().iter().cloned().collect();
    parts.push(("facets correspond".to_string(), mapped == target));
    let equivariant = action.generator_images().iter().zip(cc.action.generator_images()).all(|(gx, gc)| {
        (0..map.len()).all(|v| map[gc[v]] == gx[map[v]])
    });
    parts.push(("equivariant".to_string(), equivariant));
    let verdict = if parts.iter().all(|(_, ok)| *ok) {
        Verdict::verified(Certificate::Data {
            description: "vertex map g Stab(v) -> g.v, indexed by coset-complex vertex".into(),
            values: map.iter().map(|&v| v as i64).collect(),
        })
    } else {
        let failed: Vec<String> = parts.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.clone()).collect();
        Verdict::refuted(Certificate::Data { description: format!("failed: {}", failed.join(", ")), values: vec![] })
    };
    Ok(CosetModel { stabilizers, coset_complex: cc, map, verdict })
}

/// `P_k` = stabilizers of the `k`-faces of a fundamental facet, for
/// `k = 0..=d`, faces in lexicographic order. Each stabilizer is asserted to
/// be the intersection of the stabilizers of its vertices. Members may
/// repeat.
pub fn stabilizer_families(action: &GroupAction, c: &Simplex) -> Result<Vec<Vec<Subgroup>>> {
    if !is_fundamental_facet(action, c)? {
        return Err(Error::PreconditionFailed(format!("{c:?} is not a fundamental facet")));
    }
    let vertex_stab: BTreeMap<Vertex, Subgroup> =
        c.iter().map(|&v| (v, action.stabilizer(&Simplex::new(vec![v])))).collect();
    let mut out = Vec::new();
    for k in 0..c.len() {
        let mut fam = Vec::new();
        for face in c.faces_of_size(k + 1) {
            let stab = action.stabilizer(&face);
            let meet: Vec<Subgroup> = face.iter().map(|v| vertex_stab[v].clone()).collect();
            assert_eq!(stab, intersect(&meet)?, "face stabilizer differs from the intersection of vertex stabilizers");
            fam.push(stab);
        }
        out.push(fam);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationLevel {
    pub k: usize,
    pub members: usize,
    pub member_orders: Vec<usize>,
    pub f_vector: Vec<usize>,
    /// `(d - k - 1)`-connectivity, i.e. `(d - k)`-generation.
    pub generation: Verdict,
    /// Homology concentrated in degree `d - k` and free.
    pub sphericity: Verdict,
    /// Homology agrees with the model of the complement of the `(k-1)`-skeleton.
    pub matches_skeleton_model: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HigherGenerationReport {
    pub dimension: i64,
    pub homotopy_cohen_macaulay: Status,
    pub levels: Vec<GenerationLevel>,
    /// When `X` is homotopy Cohen-Macaulay, every level must be verified.
    pub consistent: bool,
}

fn same_homology(a: &HomologyProfile, b: &HomologyProfile) -> bool {
    let top = a.groups.len().max(b.groups.len());
    (0..top).all(|i| {
        let d = i as i64 - 1;
        match (a.degree(d), b.degree(d)) {
            (Some(x), Some(y)) => x.betti == y.betti && x.torsion == y.torsion,
            (Some(x), None) | (None, Some(x)) => x.is_zero(),
            (None, None) => true,
        }
    })
}

/// For each `k`, builds `CC(G, P_k)` and checks `(d-k)`-generation and
/// `(d-k)`-sphericity. Requires `X` to be certified Cohen-Macaulay over `Z`.
pub fn higher_generation_report(action: &GroupAction, c: &Simplex, budget: ConnectivityBudget) -> Result<HigherGenerationReport> {
    let x = action.complex();
    if !cm_over(x, Coefficients::Integers).verdict.is_verified() {
        return Err(Error::PreconditionFailed("complex is not certified Cohen-Macaulay over Z".into()));
    }
    let families = stabilizer_families(action, c)?;
    let d = x.dim() as i64;
    let hypothesis = homotopy_cm(x, budget).status();
    let mut levels = Vec::new();
    for (k, fam) in families.iter().enumerate() {
        let cc = build_coset_complex(action.group(), fam);
        let generation = connectivity_certificate(&cc.complex, d - k as i64 - 1, budget);
        let h = reduced_homology(&cc.complex, Coefficients::Integers);
        let sphericity = concentration_verdict(&h, d - k as i64);
        let model = x.skeleton_complement_model(k)?;
        let matches_skeleton_model = same_homology(&h, &reduced_homology(&model, Coefficients::Integers));
        levels.push(GenerationLevel {
            k,
            members: fam.len(),
            member_orders: fam.iter().map(Subgroup::order).collect(),
            f_vector: cc.complex.f_vector(),
            generation,
            sphericity,
            matches_skeleton_model,
        });
    }
    let all_ok = levels.iter().all(|l| l.generation.is_verified() && l.sphericity.is_verified() && l.matches_skeleton_model);
    let consistent = hypothesis != Status::Verified || all_ok;
    Ok(HigherGenerationReport { dimension: d, homotopy_cohen_macaulay: hypothesis, levels, consistent })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubfamilyCheck {
    pub members: Vec<usize>,
    /// `|H'| - 2`
    pub required: i64,
    pub acyclic: Status,
    pub connected: Option<Status>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubfamilyReport {
    pub coefficients: Coefficients,
    /// Every subfamily `H'` has `CC(G, H')` `(|H'|-2)`-acyclic.
    pub homological: Verdict,
    /// Every subfamily is `(|H'|-1)`-generating; only computed on request.
    pub homotopy: Option<Verdict>,
    pub table: Vec<SubfamilyCheck>,
}

/// Cohen-Macaulayness of `CC(G, H)` read off from all nonempty subfamilies.
/// The homological verdict is asserted to agree with the link check.
pub fn cm_via_subfamilies(
    family: &SubgroupFamily,
    coeff: Coefficients,
    homotopy: Option<ConnectivityBudget>,
) -> SubfamilyReport {
    let m = family.len();
    let mut table = Vec::new();
    let mut hom_parts = Vec::new();
    let mut htp_parts = Vec::new();
    for mask in 1u64..(1 << m) {
        let members: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let sub = family.subfamily(&members).expect("subfamily of distinct members");
        let cc = coset_complex(&sub);
        let required = members.len() as i64 - 2;
        let a = acyclicity_certificate(&cc.complex, required, coeff);
        let conn = homotopy.map(|b| connectivity_certificate(&cc.complex, required, b));
        table.push(SubfamilyCheck {
            members: members.clone(),
            required,
            acyclic: a.status(),
            connected: conn.as_ref().map(Verdict::status),
        });
        hom_parts.push((format!("{members:?}"), a));
        if let Some(v) = conn {
            htp_parts.push((format!("{members:?}"), v));
        }
    }
    let homological = Verdict::conjunction(hom_parts);
    let direct = cm_over(&coset_complex(family).complex, coeff);
    assert_eq!(homological.status(), direct.status(), "subfamily criterion disagrees with the link check");
    SubfamilyReport { coefficients: coeff, homological, homotopy: homotopy.map(|_| Verdict::conjunction(htp_parts)), table }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Permutation;

    fn s3_family() -> SubgroupFamily {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let t = g.index_of(&Permutation::from_cycles(3, &[vec![0, 1]]).unwrap()).unwrap();
        let r = g.index_of(&Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap()).unwrap();
        SubgroupFamily::new(&g, vec![Subgroup::generated(&g, &[t]), Subgroup::generated(&g, &[r])]).unwrap()
    }

    #[test]
    fn nerves() {
        let two = nerve(2, &[vec![0], vec![1]]).unwrap();
        assert_eq!(two.f_vector(), vec![2]);
        let tri = nerve(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(tri, SimplicialComplex::simplex_boundary(2));
        assert_eq!(nerve(3, &[vec![0]]), Err(Error::NotACover));
    }

    #[test]
    fn bipartite_coset_complex() {
        let fam = s3_family();
        let cc = coset_complex(&fam);
        assert_eq!(cc.complex.f_vector(), vec![5, 6]);
        assert_eq!(coset_complex_via_nerve(&fam).unwrap(), cc.complex);
        assert!(union_generates(&fam));
        let b = ConnectivityBudget::default();
        assert!(generation_verdict(&fam, 1, b).is_verified());
        assert!(generation_verdict(&fam, 2, b).is_refuted());
        assert_eq!(reduced_homology(&cc.complex, Coefficients::Integers).betti(1), 2);
    }

    #[test]
    fn whole_group_is_a_point() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let fam = SubgroupFamily::new(&g, vec![Subgroup::whole(&g)]).unwrap();
        assert_eq!(coset_complex(&fam).complex.f_vector(), vec![1]);
        assert!(generation_verdict(&fam, 3, ConnectivityBudget::default()).is_verified());
        let report = cm_via_subfamilies(&fam, Coefficients::Integers, Some(ConnectivityBudget::default()));
        assert!(report.homological.is_verified());
    }

    #[test]
    fn duplicates_rejected() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let h = Subgroup::whole(&g);
        assert_eq!(SubgroupFamily::new(&g, vec![h.clone(), h]).unwrap_err(), Error::DuplicateSubgroup(0, 1));
        let one = SubgroupFamily::new(&g, vec![Subgroup::trivial(&g)]).unwrap();
        assert!(!union_generates(&one));
    }

    #[test]
    fn coset_model_of_own_action_is_identity() {
        let cc = coset_complex(&s3_family());
        let model = coset_model_isomorphism(&cc.action, &cc.identity_facet()).unwrap();
        assert!(model.verdict.is_verified());
        assert_eq!(model.map, (0..5).collect::<Vec<_>>());
        let fams = stabilizer_families(&cc.action, &cc.identity_facet()).unwrap();
        assert_eq!(fams[0].iter().map(Subgroup::order).collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(fams[1][0].order(), 1);
    }
}
