//! Finite permutation groups held by full element enumeration.
//!
//! Elements are kept in lexicographic order of their one-line notation, so the
//! identity always has index 0 and every derived ordering (coset
//! representatives, generator images) is reproducible. Points are 0-indexed.
//! Composition is right-to-left: `(g * h)(x) = g(h(x))`, which makes
//! `g.v = g(v)` a left action.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default bound on the number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// Largest permutation degree accepted for matrix groups.
pub const MAX_MATRIX_DEGREE: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from one-line notation, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::Parse(format!("point {x} appears twice in one-line notation")));
            }
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u32).collect() })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::PointOutOfRange { point: a, degree });
                }
                if std::mem::replace(&mut used[a], true) {
                    return Err(Error::Parse(format!("point {a} appears in two cycles")));
                }
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        Permutation::from_cycles(degree, &parse_cycle_list(text)?)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Number of inversions of the one-line notation.
    pub fn inversions(&self) -> usize {
        let v = &self.images;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected `(` in `{text}`")))?;
        let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
        let body = &open[..close];
        let points = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(format!("bad point `{s}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Parses the generator text format: one permutation per line in cycle
/// notation, `#` starts a comment. The degree is `degree` if given, else one
/// more than the largest point mentioned.
pub fn parse_generators(text: &str, degree: Option<usize>) -> Result<Vec<Permutation>> {
    let mut lines = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        lines.push(parse_cycle_list(line)?);
    }
    let max_point = lines.iter().flatten().flatten().copied().max();
    let degree = match (degree, max_point) {
        (Some(d), _) => d,
        (None, Some(m)) => m + 1,
        (None, None) => 1,
    };
    lines.iter().map(|c| Permutation::from_cycles(degree, c)).collect()
}

pub fn format_generators(gens: &[Permutation]) -> String {
    gens.iter().map(|g| format!("{g}\n")).collect()
}

/// A finite permutation group with all elements enumerated in canonical order.
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    /// For each element other than the identity, `(prefix, generator)` with
    /// `element = prefix * generators[generator]`.
    word_parent: Vec<Option<(usize, usize)>>,
    /// Elements in breadth-first discovery order; prefixes come first.
    discovery: Vec<usize>,
    labels: Option<Vec<Vec<u8>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Closure of `gens` under composition, with canonical element order.
pub fn generate_group(degree: usize, gens: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
        }
    }
    let id = Permutation::identity(degree);
    let mut found: Vec<Permutation> = vec![id.clone()];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut seen: HashMap<Permutation, usize> = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(cur) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let next = found[cur].compose(g);
            if seen.contains_key(&next) {
                continue;
            }
            if found.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            seen.insert(next.clone(), found.len());
            found.push(next);
            parent.push(Some((cur, gi)));
            queue.push_back(found.len() - 1);
        }
    }
    // BFS order is the discovery order; now sort canonically and remap.
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| found[a].cmp(&found[b]));
    let mut new_of_old = vec![0usize; found.len()];
    for (new, &old) in order.iter().enumerate() {
        new_of_old[old] = new;
    }
    let elements: Vec<Permutation> = order.iter().map(|&old| found[old].clone()).collect();
    let word_parent = order
        .iter()
        .map(|&old| parent[old].map(|(p, g)| (new_of_old[p], g)))
        .collect();
    let discovery = (0..found.len()).map(|old| new_of_old[old]).collect();
    let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    Ok(FiniteGroup {
        degree,
        generators: gens.to_vec(),
        elements,
        index,
        word_parent,
        discovery,
        labels: None,
    })
}

impl FiniteGroup {
    pub fn symmetric(n: usize) -> Result<FiniteGroup> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()])?);
        }
        generate_group(n.max(1), &gens, DEFAULT_ELEMENT_CAP)
    }

    pub fn alternating(n: usize) -> Result<FiniteGroup> {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1, 2]])?);
        }
        if n >= 4 {
            let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
            gens.push(Permutation::from_cycles(n, &[long])?);
        }
        generate_group(n.max(1), &gens, DEFAULT_ELEMENT_CAP)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Indices of the generators among the elements.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Word decomposition data: `(prefix, generator)` per element.
    pub fn word_parent(&self, i: usize) -> Option<(usize, usize)> {
        self.word_parent[i]
    }

    /// Elements in an order where every prefix precedes its extensions.
    pub fn discovery_order(&self) -> &[usize] {
        &self.discovery
    }

    pub fn labels(&self) -> Option<&[Vec<u8>]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<Vec<u8>>) -> Self {
        assert_eq!(labels.len(), self.degree);
        self.labels = Some(labels);
        self
    }

    /// Full multiplication table, `table[a * order + b] = a * b`.
    pub fn multiplication_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                t.push(self.mul(a, b) as u32);
            }
        }
        t
    }
}

/// A subgroup stored as a sorted list of parent element indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {})", self.order())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Wraps an element list after checking identity, closure and inverses.
    pub fn from_elements(parent: &Arc<FiniteGroup>, mut elements: Vec<usize>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        let mut member = vec![false; parent.order()];
        for &e in &elements {
            if e >= parent.order() {
                return Err(Error::NotASubgroup(format!("element index {e} out of range")));
            }
            member[e] = true;
        }
        if !member[parent.identity()] {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let sub = Subgroup { parent: parent.clone(), elements, member };
        sub.check_closed()?;
        Ok(sub)
    }

    /// The subgroup generated by the given parent elements.
    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Subgroup {
        let mut member = vec![false; parent.order()];
        member[parent.identity()] = true;
        let mut elements = vec![parent.identity()];
        let mut queue = VecDeque::from([parent.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = parent.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        elements.sort_unstable();
        Subgroup { parent: parent.clone(), elements, member }
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup { parent: parent.clone(), elements: (0..parent.order()).collect(), member: vec![true; parent.order()] }
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::generated(parent, &[])
    }

    fn check_closed(&self) -> Result<()> {
        let gens = self.generators();
        for &x in &self.elements {
            for &g in &gens {
                if !self.member[self.parent.mul(x, g)] {
                    return Err(Error::NotASubgroup("not closed under composition".into()));
                }
            }
        }
        // A finite set containing the identity and closed under right
        // multiplication by its generators is the generated subgroup only if
        // its size matches.
        if Subgroup::generated(&self.parent, &gens).order() != self.order() {
            return Err(Error::NotASubgroup("not closed under composition".into()));
        }
        Ok(())
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, element: usize) -> bool {
        self.member[element]
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.elements.iter().all(|&e| other.contains(e))
    }

    /// A small generating set, chosen greedily in canonical element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(&self.parent);
        for &e in &self.elements {
            if span.order() == self.order() {
                break;
            }
            if !span.contains(e) {
                gens.push(e);
                span = Subgroup::generated(&self.parent, &gens);
            }
        }
        gens
    }

    /// Subgroup generated by all commutators `a b a^-1 b^-1`.
    pub fn derived_subgroup(&self) -> Subgroup {
        let g = &self.parent;
        let mut comms = HashSet::new();
        for &a in &self.elements {
            for &b in &self.elements {
                let c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
                comms.insert(c);
            }
        }
        let mut comms: Vec<usize> = comms.into_iter().collect();
        comms.sort_unstable();
        Subgroup::generated(g, &comms)
    }

    pub fn is_closed(&self) -> bool {
        self.check_closed().is_ok()
    }
}

/// `{g in G | g(point) = point}`.
pub fn stabilizer(group: &Arc<FiniteGroup>, point: usize) -> Result<Subgroup> {
    if point >= group.degree() {
        return Err(Error::PointOutOfRange { point, degree: group.degree() });
    }
    let elems = (0..group.order()).filter(|&i| group.element(i).apply(point) == point).collect();
    Subgroup::from_elements(group, elems)
}

/// `{g in G | g H g^-1 = H}`.
pub fn normalizer(group: &Arc<FiniteGroup>, sub: &Subgroup) -> Result<Subgroup> {
    if !Arc::ptr_eq(group, sub.parent()) {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    let gens = sub.generators();
    let elems = (0..group.order())
        .filter(|&g| {
            let gi = group.inv(g);
            gens.iter().all(|&h| sub.contains(group.mul(group.mul(g, h), gi)))
        })
        .collect();
    Subgroup::from_elements(group, elems)
}

pub fn intersect(subgroups: &[Subgroup]) -> Result<Subgroup> {
    let first = subgroups.first().ok_or_else(|| Error::InvalidArgument("empty subgroup list".into()))?;
    if subgroups.iter().any(|s| !Arc::ptr_eq(s.parent(), first.parent())) {
        return Err(Error::ParentMismatch);
    }
    let elems = first.elements().iter().copied().filter(|&e| subgroups.iter().all(|s| s.contains(e))).collect();
    Subgroup::from_elements(first.parent(), elems)
}

/// A left coset `gH`, stored by its canonical (least) representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub representative: usize,
    pub elements: Vec<usize>,
}

/// All left cosets of `sub` in canonical order of their representatives.
pub fn left_cosets(group: &Arc<FiniteGroup>, sub: &Subgroup) -> Result<Vec<Coset>> {
    if !Arc::ptr_eq(group, sub.parent()) {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    let mut assigned = vec![false; group.order()];
    let mut cosets = Vec::new();
    for g in 0..group.order() {
        if assigned[g] {
            continue;
        }
        let mut elems: Vec<usize> = sub.elements().iter().map(|&h| group.mul(g, h)).collect();
        elems.sort_unstable();
        for &e in &elems {
            assigned[e] = true;
        }
        cosets.push(Coset { representative: elems[0], elements: elems });
    }
    Ok(cosets)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Least primitive root modulo a prime.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let mut x = 1;
            for k in 1..p - 1 {
                x = x * g % p;
                if x == 1 && k < p - 1 {
                    return false;
                }
            }
            true
        })
        .expect("prime has a primitive root")
}

/// `|GL_n(F_p)| = prod (p^n - p^i)`.
pub fn gl_order(n: u32, p: u64) -> Option<u64> {
    let q = p.checked_pow(n)?;
    (0..n).try_fold(1u64, |acc, i| acc.checked_mul(q - p.pow(i)))
}

/// Coordinates of a point index of `F_p^n \ {0}` (base-p digits of index + 1).
pub fn vector_of_point(point: usize, n: usize, p: usize) -> Vec<u8> {
    let mut code = point + 1;
    (0..n)
        .map(|_| {
            let d = (code % p) as u8;
            code /= p;
            d
        })
        .collect()
}

pub fn point_of_vector(v: &[u8], p: usize) -> usize {
    v.iter().rev().fold(0usize, |acc, &d| acc * p + d as usize) - 1
}

/// `GL_n(F_p)` acting on the `p^n - 1` nonzero vectors of `F_p^n`.
///
/// Generated by the transvection `e_2 -> e_1 + e_2` and the twisted cycle
/// `e_i -> e_{i+1}`, `e_n -> lambda e_1`, with `lambda` chosen so the cycle's
/// determinant is a primitive root. Point labels are the vectors.
pub fn matrix_group_as_permutations(n: usize, p: usize, cap: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::InvalidArgument("matrix groups need dimension at least 2".into()));
    }
    if !is_prime(p as u64) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let degree = p.checked_pow(n as u32).map(|q| q - 1).filter(|&d| d <= MAX_MATRIX_DEGREE);
    let degree = degree.ok_or(Error::CapExceeded { cap: MAX_MATRIX_DEGREE })?;
    let expected = gl_order(n as u32, p as u64).filter(|&o| o as usize <= cap).ok_or(Error::CapExceeded { cap })?;

    let mut transvection = identity_matrix(n);
    transvection[0][1] = 1;
    let omega = primitive_root(p as u64) as usize;
    let lambda = if n % 2 == 1 { omega % p } else { (p - omega % p) % p };
    let mut cycle = vec![vec![0u8; n]; n];
    for j in 0..n - 1 {
        cycle[j + 1][j] = 1;
    }
    cycle[0][n - 1] = lambda as u8;

    let labels: Vec<Vec<u8>> = (0..degree).map(|i| vector_of_point(i, n, p)).collect();
    let gens = [transvection, cycle]
        .iter()
        .map(|m| matrix_to_permutation(m, &labels, p))
        .collect::<Result<Vec<_>>>()?;
    let group = generate_group(degree, &gens, cap)?.with_labels(labels);
    if group.order() as u64 != expected {
        return Err(Error::PreconditionFailed(format!(
            "generators produced a group of order {} instead of {expected}",
            group.order()
        )));
    }
    Ok(group)
}

pub fn identity_matrix(n: usize) -> Vec<Vec<u8>> {
    (0..n).map(|i| (0..n).map(|j| u8::from(i == j)).collect()).collect()
}

pub fn mat_vec(m: &[Vec<u8>], v: &[u8], p: usize) -> Vec<u8> {
    m.iter()
        .map(|row| (row.iter().zip(v).map(|(&a, &b)| a as usize * b as usize).sum::<usize>() % p) as u8)
        .collect()
}

/// The permutation of nonzero vectors induced by an invertible matrix.
pub fn matrix_to_permutation(m: &[Vec<u8>], labels: &[Vec<u8>], p: usize) -> Result<Permutation> {
    let images = labels
        .iter()
        .map(|v| {
            let w = mat_vec(m, v, p);
            if w.iter().all(|&x| x == 0) {
                Err(Error::InvalidArgument("matrix is singular".into()))
            } else {
                Ok(point_of_vector(&w, p))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::from_images(images)
}

/// Recovers the matrix of an element of a labelled matrix group: column `j`
/// is the image of the basis vector `e_j`.
pub fn matrix_of(group: &FiniteGroup, element: usize, p: usize) -> Option<Vec<Vec<u8>>> {
    let labels = group.labels()?;
    let n = labels[0].len();
    let g = group.element(element);
    let mut m = vec![vec![0u8; n]; n];
    for j in 0..n {
        let mut e = vec![0u8; n];
        e[j] = 1;
        let image = &labels[g.apply(point_of_vector(&e, p))];
        for i in 0..n {
            m[i][j] = image[i];
        }
    }
    Some(m)
}
