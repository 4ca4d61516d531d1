//! Edge-path presentations of fundamental groups, Tietze simplification,
//! abelianization and homomorphism search into small permutation groups.
//!
//! A word is a sequence of nonzero letters: `g + 1` for generator `g` and
//! `-(g + 1)` for its inverse.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{reduced_homology_upto, smith_normal_form, Coefficients, IntegerMatrix};
use crate::permgroup::{FiniteGroup, Subgroup};
use crate::simplicial::{SimplicialComplex, Vertex};
use crate::verdict::{Certificate, Verdict};

pub type Letter = i32;
pub type Word = Vec<Letter>;

pub const DEFAULT_TIETZE_STEPS: u64 = 1_000_000;
pub const DEFAULT_MAX_RELATOR_LENGTH: usize = 10_000;
/// Presentations with more generators than this are not searched for quotients.
pub const MAX_QUOTIENT_GENERATORS: usize = 4;
pub const DEFAULT_QUOTIENT_NODES: u64 = 50_000_000;

pub fn letter(generator: usize, inverse: bool) -> Letter {
    let l = generator as Letter + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn generator_of(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut v = free_reduce(w);
    let mut start = 0;
    let mut end = v.len();
    while end - start >= 2 && v[start] == -v[end - 1] {
        start += 1;
        end -= 1;
    }
    v.truncate(end);
    v.drain(..start);
    v
}

/// Least rotation of the word or its inverse; relators equal up to
/// conjugation and inversion get the same key.
fn canonical_relator(w: &[Letter]) -> Word {
    let mut best: Option<Word> = None;
    for cand in [w.to_vec(), invert(w)] {
        for r in 0..cand.len().max(1) {
            let mut rot = cand[r..].to_vec();
            rot.extend_from_slice(&cand[..r]);
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if let Some(&l) = r.iter().find(|&&l| l == 0 || generator_of(l) >= generators) {
                return Err(Error::InvalidArgument(format!("letter {l} outside {generators} generators")));
            }
        }
        Ok(GroupPresentation { generators, relators: relators.iter().map(|r| free_reduce(r)).collect() })
    }

    pub fn is_trivial(&self) -> bool {
        self.generators == 0
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    pub fn format_word(w: &[Letter]) -> String {
        w.iter().map(|&l| format_letter(l)).collect::<Vec<_>>().join(" ")
    }

    /// `gens: n` followed by one relator per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.generators);
        for r in &self.relators {
            s.push_str(&GroupPresentation::format_word(r));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<GroupPresentation> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.starts_with('#'));
        let header = lines.find(|l| !l.is_empty()).ok_or_else(|| Error::Parse("empty presentation".into()))?;
        let n: usize = header
            .strip_prefix("gens:")
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header `{header}`")))?;
        let mut relators = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            relators.push(line.split_whitespace().map(parse_letter).collect::<Result<Word>>()?);
        }
        GroupPresentation::new(n, relators)
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> IntegerMatrix {
        let trips = self.relators.iter().enumerate().flat_map(|(i, r)| {
            r.iter().map(move |&l| (i, generator_of(l), BigInt::from(l.signum())))
        });
        IntegerMatrix::from_triplets(self.relators.len(), self.generators, trips)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn format_letter(l: Letter) -> String {
    let g = generator_of(l);
    let s = if g < 26 { ((b'a' + g as u8) as char).to_string() } else { format!("x{g}") };
    if l < 0 {
        s.to_uppercase()
    } else {
        s
    }
}

fn parse_letter(tok: &str) -> Result<Letter> {
    let bad = || Error::Parse(format!("bad letter `{tok}`"));
    let mut chars = tok.chars();
    let c = chars.next().ok_or_else(bad)?;
    let inverse = c.is_ascii_uppercase();
    let rest = chars.as_str();
    let g = if rest.is_empty() {
        if !c.is_ascii_alphabetic() {
            return Err(bad());
        }
        (c.to_ascii_lowercase() as u8 - b'a') as usize
    } else if c.eq_ignore_ascii_case(&'x') {
        rest.parse().map_err(|_| bad())?
    } else {
        return Err(bad());
    };
    Ok(letter(g, inverse))
}

/// An edge-path presentation together with the edge each generator stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgePathPresentation {
    pub presentation: GroupPresentation,
    pub basepoint: Vertex,
    pub generator_edges: Vec<(Vertex, Vertex)>,
    pub tree_edges: Vec<(Vertex, Vertex)>,
}

/// Generators are the edges outside a breadth-first spanning tree from
/// `basepoint` (neighbours visited in increasing order), each oriented from
/// its smaller vertex; each triangle `a < b < c` contributes
/// `e_ab e_bc e_ac^{-1}` with tree edges deleted.
pub fn edge_path_presentation(x: &SimplicialComplex, basepoint: Vertex) -> Result<EdgePathPresentation> {
    if x.vertices().binary_search(&basepoint).is_err() {
        return Err(Error::UnknownVertex(basepoint));
    }
    let adj = x.neighbours();
    let mut seen: HashSet<Vertex> = HashSet::from([basepoint]);
    let mut tree: HashSet<(Vertex, Vertex)> = HashSet::new();
    let mut queue = VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                tree.insert((v.min(w), v.max(w)));
                queue.push_back(w);
            }
        }
    }
    if seen.len() != x.vertices().len() {
        return Err(Error::Disconnected);
    }
    let mut gen_of: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    let mut generator_edges = Vec::new();
    let mut tree_edges = Vec::new();
    for e in x.faces(1) {
        let key = (e[0], e[1]);
        if tree.contains(&key) {
            tree_edges.push(key);
        } else {
            gen_of.insert(key, generator_edges.len());
            generator_edges.push(key);
        }
    }
    let edge = |a: Vertex, b: Vertex, inverse: bool| gen_of.get(&(a, b)).map(|&g| letter(g, inverse));
    let relators = x
        .faces(2)
        .iter()
        .map(|t| [edge(t[0], t[1], false), edge(t[1], t[2], false), edge(t[0], t[2], true)].into_iter().flatten().collect())
        .collect();
    let presentation = GroupPresentation::new(generator_edges.len(), relators)?;
    Ok(EdgePathPresentation { presentation, basepoint, generator_edges, tree_edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TietzeBudget {
    pub steps: u64,
    pub max_relator_length: usize,
}

impl Default for TietzeBudget {
    fn default() -> Self {
        TietzeBudget { steps: DEFAULT_TIETZE_STEPS, max_relator_length: DEFAULT_MAX_RELATOR_LENGTH }
    }
}

/// One recorded Tietze move. Generator numbers refer to the input presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum TietzeStep {
    /// Empty or duplicate relators removed during normalisation.
    DropRelators { count: usize },
    /// `generator` occurred once in `relator` and was solved for and substituted.
    Eliminate { generator: usize, relator: String },
    /// A relator was shortened using a long common piece with another relator.
    Shorten { from_length: usize, to_length: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TietzeResult {
    pub presentation: GroupPresentation,
    /// Input generator number of each surviving generator.
    pub original_generators: Vec<usize>,
    pub trace: Vec<TietzeStep>,
    pub steps: u64,
    pub budget_exhausted: bool,
}

/// Relators live in slots; an emptied slot is a removed relator. The
/// occurrence index lets an elimination touch only the relators that use
/// the eliminated generator.
struct Simplifier {
    relators: Vec<Word>,
    by_length: BTreeSet<(usize, usize)>,
    /// Slots containing each (input) generator.
    occurrences: Vec<BTreeSet<usize>>,
    /// Letters of each generator over all relators.
    total: Vec<usize>,
    alive: Vec<bool>,
    trace: Vec<TietzeStep>,
    steps: u64,
    budget: TietzeBudget,
    exhausted: bool,
}

impl Simplifier {
    fn tick(&mut self, n: u64) -> bool {
        self.steps += n;
        if self.steps > self.budget.steps {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn set_relator(&mut self, slot: usize, word: Word) {
        let old = std::mem::take(&mut self.relators[slot]);
        if !old.is_empty() {
            self.by_length.remove(&(old.len(), slot));
        }
        for &l in &old {
            let g = generator_of(l);
            self.total[g] -= 1;
            self.occurrences[g].remove(&slot);
        }
        for &l in &word {
            let g = generator_of(l);
            self.total[g] += 1;
            self.occurrences[g].insert(slot);
        }
        if !word.is_empty() {
            self.by_length.insert((word.len(), slot));
        }
        self.relators[slot] = word;
    }

    /// Cyclically reduces, drops empty and repeated relators (up to rotation
    /// and inversion), sorts by length and rebuilds the index.
    fn normalize(&mut self) {
        let current: Vec<Word> = self.relators.drain(..).filter(|r| !r.is_empty()).collect();
        let before = current.len();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for r in current {
            let r = cyclic_reduce(&r);
            if r.is_empty() {
                continue;
            }
            if seen.insert(canonical_relator(&r)) {
                out.push(r);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        if out.len() < before {
            self.trace.push(TietzeStep::DropRelators { count: before - out.len() });
        }
        self.by_length.clear();
        self.occurrences.iter_mut().for_each(BTreeSet::clear);
        self.total.iter_mut().for_each(|t| *t = 0);
        self.relators = vec![Vec::new(); out.len()];
        for (slot, r) in out.into_iter().enumerate() {
            self.set_relator(slot, r);
        }
    }

    /// First `(slot, generator)` such that the generator occurs exactly once
    /// in the relator, scanning short relators first and, among generators,
    /// preferring the fewest occurrences overall. Substitutions that would
    /// exceed the length cap are skipped.
    fn find_elimination(&mut self) -> Option<(usize, usize)> {
        let order: Vec<(usize, usize)> = self.by_length.iter().copied().collect();
        for (len, slot) in order {
            let r = &self.relators[slot];
            let mut count: HashMap<usize, usize> = HashMap::new();
            for &l in r {
                *count.entry(generator_of(l)).or_default() += 1;
            }
            let mut candidates: Vec<usize> = count.iter().filter(|(_, &c)| c == 1).map(|(&g, _)| g).collect();
            candidates.sort_by_key(|&g| (self.total[g], g));
            for g in candidates {
                if !self.tick(1) {
                    return None;
                }
                let fits = self.occurrences[g].iter().filter(|&&t| t != slot).all(|&t| {
                    let s = &self.relators[t];
                    let k = s.iter().filter(|&&l| generator_of(l) == g).count();
                    s.len() + k * (len - 1) - k <= self.budget.max_relator_length
                });
                if fits {
                    return Some((slot, g));
                }
            }
        }
        None
    }

    fn eliminate_one(&mut self) -> bool {
        let Some((slot, g)) = self.find_elimination() else { return false };
        let r = self.relators[slot].clone();
        let pos = r.iter().position(|&l| generator_of(l) == g).unwrap();
        // rotate r to x^e w; then x^e = w^-1
        let mut w: Word = r[pos + 1..].to_vec();
        w.extend_from_slice(&r[..pos]);
        let value = if r[pos] > 0 { invert(&w) } else { w };
        let value_inv = invert(&value);
        self.trace.push(TietzeStep::Eliminate { generator: g, relator: GroupPresentation::format_word(&r) });
        self.set_relator(slot, Vec::new());
        let targets: Vec<usize> = self.occurrences[g].iter().copied().collect();
        for t in targets {
            let mut out = Vec::with_capacity(self.relators[t].len() + value.len());
            for &l in &self.relators[t] {
                if generator_of(l) != g {
                    out.push(l);
                } else if l > 0 {
                    out.extend_from_slice(&value);
                } else {
                    out.extend_from_slice(&value_inv);
                }
            }
            let out = cyclic_reduce(&out);
            self.tick(out.len() as u64);
            self.set_relator(t, out);
        }
        self.alive[g] = false;
        true
    }

    /// Replaces a piece of one relator by the shorter complement taken from
    /// another relator when the piece is more than half of the latter.
    fn shorten_one(&mut self) -> bool {
        let n = self.relators.len();
        for i in 0..n {
            let r = self.relators[i].clone();
            let forms: Vec<Word> = [r.clone(), invert(&r)]
                .into_iter()
                .flat_map(|f| {
                    (0..f.len())
                        .map(|k| {
                            let mut rot = f[k..].to_vec();
                            rot.extend_from_slice(&f[..k]);
                            rot
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            for j in 0..n {
                if i == j || self.relators[j].len() < r.len() / 2 + 1 {
                    continue;
                }
                let s = self.relators[j].clone();
                if !self.tick((forms.len() * s.len()) as u64) {
                    return false;
                }
                let doubled: Word = s.iter().chain(s.iter()).copied().collect();
                for len in (r.len() / 2 + 1..=r.len().min(s.len())).rev() {
                    for f in &forms {
                        let (u, v) = f.split_at(len);
                        let Some(start) = (0..s.len()).find(|&p| doubled[p..p + len] == *u) else { continue };
                        // s = u t (rotated) and u = v^-1, so s becomes v^-1 t
                        let mut t = invert(v);
                        t.extend_from_slice(&doubled[start + len..start + s.len()]);
                        let t = cyclic_reduce(&t);
                        self.trace.push(TietzeStep::Shorten { from_length: s.len(), to_length: t.len() });
                        self.relators[j] = t;
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Greedy deterministic Tietze simplification within `budget`.
pub fn tietze_simplify(p: &GroupPresentation, budget: TietzeBudget) -> TietzeResult {
    let mut s = Simplifier {
        relators: p.relators.clone(),
        by_length: BTreeSet::new(),
        occurrences: vec![BTreeSet::new(); p.generators],
        total: vec![0; p.generators],
        alive: vec![true; p.generators],
        trace: Vec::new(),
        steps: 0,
        budget,
        exhausted: false,
    };
    s.normalize();
    loop {
        while !s.exhausted && s.eliminate_one() {}
        if s.exhausted {
            break;
        }
        s.normalize();
        if !s.shorten_one() {
            break;
        }
        s.normalize();
    }
    s.normalize();
    let original_generators: Vec<usize> = (0..p.generators).filter(|&g| s.alive[g]).collect();
    let new_index: HashMap<usize, usize> = original_generators.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let relators =
        s.relators.iter().map(|r| r.iter().map(|&l| letter(new_index[&generator_of(l)], l < 0)).collect()).collect();
    let presentation = GroupPresentation { generators: original_generators.len(), relators };
    let result = TietzeResult { presentation, original_generators, trace: s.trace, steps: s.steps, budget_exhausted: s.exhausted };
    assert_eq!(abelianization(p), abelianization(&result.presentation), "Tietze moves changed the abelianization");
    result
}

/// Abelian group `Z^free_rank ⊕ ⊕ Z/torsion_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

pub fn abelianization(p: &GroupPresentation) -> AbelianInvariants {
    let form = smith_normal_form(&p.exponent_matrix());
    AbelianInvariants {
        free_rank: p.generators - form.rank,
        torsion: form.torsion().iter().map(|t| t.to_u64().expect("torsion coefficient fits in u64")).collect(),
    }
}

/// A homomorphism from a presented group into a permutation group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    /// Target element index for each generator.
    pub images: Vec<usize>,
    pub image_order: usize,
    pub surjective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientSearch {
    Found(QuotientMap),
    /// Every assignment was examined; no map with the requested image exists.
    None { explored: u64 },
    /// Node budget ran out.
    BudgetExceeded { explored: u64 },
}

fn evaluate(word: &[Letter], images: &[usize], table: &[u32], inverse: &[usize], n: usize) -> usize {
    word.iter().fold(0usize, |acc, &l| {
        let x = images[generator_of(l)];
        let x = if l < 0 { inverse[x] } else { x };
        table[acc * n + x] as usize
    })
}

/// Checks that `images` kills every relator.
pub fn is_homomorphism(p: &GroupPresentation, target: &FiniteGroup, images: &[usize]) -> bool {
    images.len() == p.generators
        && p.relators.iter().all(|r| {
            r.iter().fold(target.identity(), |acc, &l| {
                let x = images[generator_of(l)];
                target.mul(acc, if l < 0 { target.inv(x) } else { x })
            }) == target.identity()
        })
}

/// Backtracking over generator images in element order. The first
/// non-identity image is restricted to the least element of its conjugacy
/// class, which loses nothing since conjugate maps have the same image up to
/// isomorphism. Returns the first map with nontrivial image (surjective if
/// required).
pub fn find_finite_quotient(
    p: &GroupPresentation,
    target: &Arc<FiniteGroup>,
    require_surjective: bool,
    node_budget: u64,
) -> QuotientSearch {
    let n = target.order();
    let table = target.multiplication_table();
    let inverse: Vec<usize> = (0..n).map(|x| target.inv(x)).collect();
    let class_min: Vec<usize> = (0..n)
        .map(|x| (0..n).map(|g| table[table[g * n + x] as usize * n + inverse[g]] as usize).min().unwrap())
        .collect();
    // relators checked once their last generator is assigned
    let mut due: Vec<Vec<&Word>> = vec![Vec::new(); p.generators];
    for r in &p.relators {
        if let Some(last) = r.iter().map(|&l| generator_of(l)).max() {
            due[last].push(r);
        }
    }
    let mut images = vec![0usize; p.generators];
    let mut explored = 0u64;

    struct Ctx<'a> {
        n: usize,
        table: &'a [u32],
        inverse: &'a [usize],
        class_min: &'a [usize],
        due: &'a [Vec<&'a Word>],
        target: &'a Arc<FiniteGroup>,
        require_surjective: bool,
        budget: u64,
    }

    fn search(c: &Ctx, depth: usize, images: &mut [usize], explored: &mut u64) -> Option<bool> {
        if depth == images.len() {
            if images.iter().all(|&x| x == 0) {
                return Some(false);
            }
            let sub = Subgroup::generated(c.target, images);
            let ok = !c.require_surjective || sub.order() == c.n;
            return Some(ok);
        }
        let all_trivial = images[..depth].iter().all(|&x| x == 0);
        for x in 0..c.n {
            if all_trivial && x != 0 && c.class_min[x] != x {
                continue;
            }
            *explored += 1;
            if *explored > c.budget {
                return None;
            }
            images[depth] = x;
            if c.due[depth].iter().all(|r| evaluate(r, images, c.table, c.inverse, c.n) == 0) {
                match search(c, depth + 1, images, explored) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
        }
        images[depth] = 0;
        Some(false)
    }

    let ctx = Ctx {
        n,
        table: &table,
        inverse: &inverse,
        class_min: &class_min,
        due: &due,
        target,
        require_surjective,
        budget: node_budget,
    };
    match search(&ctx, 0, &mut images, &mut explored) {
        None => QuotientSearch::BudgetExceeded { explored },
        Some(false) => QuotientSearch::None { explored },
        Some(true) => {
            assert!(is_homomorphism(p, target, &images), "quotient search returned a non-homomorphism");
            let image_order = Subgroup::generated(target, &images).order();
            QuotientSearch::Found(QuotientMap { images, image_order, surjective: image_order == n })
        }
    }
}

/// The default targets, in increasing order.
pub fn default_quotient_targets() -> Vec<(String, Arc<FiniteGroup>)> {
    let mut out = Vec::new();
    for k in 2..=4 {
        out.push((format!("S{k}"), Arc::new(FiniteGroup::symmetric(k).expect("small symmetric group"))));
    }
    out.push(("Alt5".to_string(), Arc::new(FiniteGroup::alternating(5).expect("Alt5"))));
    out.push(("S5".to_string(), Arc::new(FiniteGroup::symmetric(5).expect("S5"))));
    out
}

/// Tries the default targets in order; `Refuted` means a nontrivial quotient
/// was found (so the group is nontrivial).
pub fn nontrivial_quotient_verdict(p: &GroupPresentation, node_budget: u64) -> Verdict {
    if p.generators > MAX_QUOTIENT_GENERATORS {
        return Verdict::unknown("presentation too large");
    }
    let mut exhausted_all = true;
    for (name, target) in default_quotient_targets() {
        match find_finite_quotient(p, &target, false, node_budget) {
            QuotientSearch::Found(q) => {
                return Verdict::refuted(Certificate::FiniteQuotient {
                    target: name,
                    target_order: target.order(),
                    images: q.images.iter().map(|&i| target.element(i).to_string()).collect(),
                    image_order: q.image_order,
                    surjective: q.surjective,
                    presentation: p.to_text(),
                });
            }
            QuotientSearch::BudgetExceeded { .. } => exhausted_all = false,
            QuotientSearch::None { .. } => {}
        }
    }
    if exhausted_all {
        Verdict::unknown("no nontrivial quotient onto the default targets")
    } else {
        Verdict::unknown("quotient search budget exceeded")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConnectivityBudget {
    pub tietze: TietzeBudget,
    pub quotient_nodes: u64,
}

impl Default for ConnectivityBudget {
    fn default() -> Self {
        ConnectivityBudget { tietze: TietzeBudget::default(), quotient_nodes: DEFAULT_QUOTIENT_NODES }
    }
}

/// Everything computed about `π_1` of a connected complex.
#[derive(Debug, Clone)]
pub struct FundamentalGroupData {
    pub edge_path: EdgePathPresentation,
    pub simplified: TietzeResult,
    pub abelianization: AbelianInvariants,
}

/// Builds and simplifies the edge-path presentation from the least vertex,
/// asserting that its abelianization matches `H_1(X; Z)`.
pub fn fundamental_group(x: &SimplicialComplex, budget: TietzeBudget) -> Result<FundamentalGroupData> {
    let base = *x.vertices().first().ok_or(Error::Disconnected)?;
    let edge_path = edge_path_presentation(x, base)?;
    let ab = abelianization(&edge_path.presentation);
    let h1 = reduced_homology_upto(x, 1, Coefficients::Integers);
    let torsion: Vec<u64> = h1.degree(1).map_or(vec![], |g| g.torsion.iter().map(|t| t.to_u64().unwrap()).collect());
    assert_eq!((ab.free_rank, &ab.torsion), (h1.betti(1), &torsion), "abelianized presentation disagrees with H_1");
    let simplified = tietze_simplify(&edge_path.presentation, budget);
    Ok(FundamentalGroupData { edge_path, simplified, abelianization: ab })
}

fn spanning_tree(x: &SimplicialComplex) -> Certificate {
    let root = x.vertices()[0];
    let adj = x.neighbours();
    let mut parent = Vec::new();
    let mut seen = HashSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                parent.push((w, v));
                queue.push_back(w);
            }
        }
    }
    Certificate::SpanningTree { root, parent }
}

/// Decision ladder for `k`-connectivity: nonemptiness at `k = -1`, graph
/// connectivity at `k = 0`; above that homology must vanish through degree
/// `k` and the fundamental group must simplify to the trivial presentation.
/// A nonzero homology group or a nontrivial finite quotient refutes.
pub fn connectivity_certificate(x: &SimplicialComplex, k: i64, budget: ConnectivityBudget) -> Verdict {
    assert!(k >= -1, "connectivity is only defined from -1 upwards");
    let Some(&vertex) = x.vertices().first() else {
        return Verdict::refuted(Certificate::Empty);
    };
    if k == -1 {
        return Verdict::verified(Certificate::Nonempty { vertex });
    }
    let comps = x.components();
    if comps.len() > 1 {
        return Verdict::refuted(Certificate::Disconnected { components: comps.len(), a: comps[0][0], b: comps[1][0] });
    }
    let tree = spanning_tree(x);
    if k == 0 {
        return Verdict::verified(tree);
    }
    let h = reduced_homology_upto(x, k, Coefficients::Integers);
    if let Some(g) = h.groups.iter().find(|g| g.degree <= k && !g.is_zero()) {
        return Verdict::refuted(Certificate::HomologyNonzero { coefficients: "Z".into(), group: g.to_degree_group() });
    }
    let vanishing = Verdict::verified(Certificate::HomologyVanishes { coefficients: "Z".into(), degrees: (-1..=k).collect() });
    let pi = fundamental_group(x, budget.tietze).expect("connected complex has an edge-path presentation");
    if pi.simplified.presentation.is_trivial() {
        let trivial = Verdict::verified(Certificate::TrivialPresentation {
            generators: pi.edge_path.presentation.generators,
            relators: pi.edge_path.presentation.relators.len(),
            trace: pi.simplified.trace,
        });
        return Verdict::conjunction(vec![
            ("connected".into(), Verdict::verified(tree)),
            ("homology".into(), vanishing),
            ("fundamental group".into(), trivial),
        ]);
    }
    match nontrivial_quotient_verdict(&pi.simplified.presentation, budget.quotient_nodes) {
        v @ Verdict::Refuted { .. } => v,
        Verdict::Unknown { reason } => Verdict::unknown(format!(
            "fundamental group not shown trivial ({} generators, {} relators after simplification): {reason}",
            pi.simplified.presentation.generators,
            pi.simplified.presentation.relators.len()
        )),
        Verdict::Verified { .. } => unreachable!("quotient search never verifies"),
    }
}
