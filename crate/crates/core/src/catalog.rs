//! Named examples, verification pipelines and schema-versioned JSON reports.
//!
//! Points of the alternating group are 0-indexed: the point `i` of
//! `{1,...,5}` is `i - 1` here, so the 5-cycle `(1,2,3,4,5)` is
//! `(0 1 2 3 4)`, the 3-cycle `(1,3,5)` is `(0 2 4)` and the stabilized
//! point `2` is `1`.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{is_fundamental_facet, GroupAction};
use crate::buildings::{building_flag_complex, parabolic_and_levi_subgroups, Building, WeylElement};
use crate::cmcheck::{cm_over, homotopy_cm, skeleton_complement_check, walker_colored_check, CmCertificate};
use crate::cosetcomplex::{
    coset_complex, coset_model_isomorphism, cm_via_subfamilies, generation_verdict, higher_generation_report,
    stabilizer_families, union_generates, SubgroupFamily,
};
use crate::error::{Error, Result};
use crate::fundgroup::ConnectivityBudget;
use crate::homology::{reduced_homology, Coefficients, HomologyProfile};
use crate::permgroup::{
    generate_group, normalizer, parse_generators, stabilizer, FiniteGroup, Permutation, Subgroup, DEFAULT_ELEMENT_CAP,
};
use crate::simplicial::{Coloring, Simplex, SimplicialComplex};
use crate::verdict::{Certificate, Status, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExampleSpec {
    Alt5Oliver,
    S3Bipartite,
    SimplexBoundary(usize),
    BuildingA { n: usize, p: usize },
    OppA { n: usize, p: usize },
    /// A complex in the facet-list format.
    FacetFile(PathBuf),
    /// A group and subgroup family in the coset file format (see [`parse_coset_file`]).
    CosetFile(PathBuf),
}

pub const EXAMPLE_NAMES: &[&str] =
    &["alt5_oliver", "s3_bipartite", "simplex_boundary(k)", "building_A(n,p)", "opp_A(n,p)", "file:PATH", "cosets:PATH"];

fn parse_args(s: &str, name: &str) -> Option<Vec<usize>> {
    let rest = s.strip_prefix(name)?.trim();
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|a| a.trim().parse().ok()).collect()
}

impl FromStr for ExampleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(ExampleSpec::FacetFile(path.into()));
        }
        if let Some(path) = s.strip_prefix("cosets:") {
            return Ok(ExampleSpec::CosetFile(path.into()));
        }
        let spec = match s {
            "alt5_oliver" => Some(ExampleSpec::Alt5Oliver),
            "s3_bipartite" => Some(ExampleSpec::S3Bipartite),
            _ => None,
        };
        let spec = spec
            .or_else(|| match parse_args(s, "simplex_boundary")?.as_slice() {
                [k] => Some(ExampleSpec::SimplexBoundary(*k)),
                _ => None,
            })
            .or_else(|| match parse_args(s, "building_A")?.as_slice() {
                [n, p] => Some(ExampleSpec::BuildingA { n: *n, p: *p }),
                _ => None,
            })
            .or_else(|| match parse_args(s, "opp_A")?.as_slice() {
                [n, p] => Some(ExampleSpec::OppA { n: *n, p: *p }),
                _ => None,
            });
        spec.ok_or_else(|| Error::UnknownExample(s.to_string()))
    }
}

impl fmt::Display for ExampleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleSpec::Alt5Oliver => write!(f, "alt5_oliver"),
            ExampleSpec::S3Bipartite => write!(f, "s3_bipartite"),
            ExampleSpec::SimplexBoundary(k) => write!(f, "simplex_boundary({k})"),
            ExampleSpec::BuildingA { n, p } => write!(f, "building_A({n},{p})"),
            ExampleSpec::OppA { n, p } => write!(f, "opp_A({n},{p})"),
            ExampleSpec::FacetFile(p) => write!(f, "file:{}", p.display()),
            ExampleSpec::CosetFile(p) => write!(f, "cosets:{}", p.display()),
        }
    }
}

/// A constructed example. Everything beyond the complex is optional and
/// determines which checks apply.
#[derive(Debug, Clone)]
pub struct NamedExample {
    pub spec: ExampleSpec,
    pub complex: SimplicialComplex,
    pub group: Option<Arc<FiniteGroup>>,
    pub family: Option<SubgroupFamily>,
    pub coloring: Option<Coloring>,
    pub action: Option<GroupAction>,
    /// A fundamental facet for `action`.
    pub facet: Option<Simplex>,
    pub building: Option<Building>,
    /// Outside the certified parameter range.
    pub best_effort: bool,
}

impl NamedExample {
    fn from_family(spec: ExampleSpec, family: SubgroupFamily) -> NamedExample {
        let cc = coset_complex(&family);
        let facet = cc.identity_facet();
        let coloring = cc.coloring();
        NamedExample {
            spec,
            complex: cc.complex.clone(),
            group: Some(family.parent().clone()),
            family: Some(family),
            coloring: Some(coloring),
            facet: Some(facet),
            action: Some(cc.action),
            building: None,
            best_effort: false,
        }
    }

    fn bare(spec: ExampleSpec, complex: SimplicialComplex) -> NamedExample {
        NamedExample {
            spec,
            complex,
            group: None,
            family: None,
            coloring: None,
            action: None,
            facet: None,
            building: None,
            best_effort: false,
        }
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }
}

fn cycle(g: &Arc<FiniteGroup>, cycles: &[Vec<usize>]) -> Result<usize> {
    let p = Permutation::from_cycles(g.degree(), cycles)?;
    g.index_of(&p).ok_or_else(|| Error::NotASubgroup(format!("{p} is not in the group")))
}

/// `H1 = Stab(1)`, `H2 = N(<(0 1 2 3 4)>)`, `H3 = N(<(0 2 4)>)` in `Alt_5`.
pub fn alt5_family() -> Result<SubgroupFamily> {
    let g = Arc::new(FiniteGroup::alternating(5)?);
    let h1 = stabilizer(&g, 1)?;
    let five = Subgroup::generated(&g, &[cycle(&g, &[vec![0, 1, 2, 3, 4]])?]);
    let three = Subgroup::generated(&g, &[cycle(&g, &[vec![0, 2, 4]])?]);
    let h2 = normalizer(&g, &five)?;
    let h3 = normalizer(&g, &three)?;
    SubgroupFamily::new(&g, vec![h1, h2, h3])
}

/// `<(0 1)>` and `<(0 1 2)>` in `S_3`.
pub fn s3_family() -> Result<SubgroupFamily> {
    let g = Arc::new(FiniteGroup::symmetric(3)?);
    let t = Subgroup::generated(&g, &[cycle(&g, &[vec![0, 1]])?]);
    let r = Subgroup::generated(&g, &[cycle(&g, &[vec![0, 1, 2]])?]);
    SubgroupFamily::new(&g, vec![t, r])
}

/// Coset file format: a line `group` followed by generator lines, then one
/// `subgroup` line per member followed by its generators. Generators use
/// the permutation text format; `#` starts a comment.
pub fn parse_coset_file(text: &str, cap: usize) -> Result<SubgroupFamily> {
    let mut sections: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        let bare = line.split('#').next().unwrap_or("").trim();
        match bare {
            "group" | "subgroup" => sections.push((bare.to_string(), String::new())),
            "" => {}
            _ => match sections.last_mut() {
                Some((_, body)) => {
                    body.push_str(bare);
                    body.push('\n');
                }
                None => return Err(Error::Parse("generators before the `group` header".into())),
            },
        }
    }
    if sections.first().map(|s| s.0.as_str()) != Some("group") || sections.iter().skip(1).any(|s| s.0 != "subgroup") {
        return Err(Error::Parse("expected one `group` section followed by `subgroup` sections".into()));
    }
    let all: String = sections.iter().map(|s| s.1.as_str()).collect();
    let degree = parse_generators(&all, None)?.first().map_or(1, Permutation::degree);
    let gens = parse_generators(&sections[0].1, Some(degree))?;
    let g = Arc::new(generate_group(degree, &gens, cap)?);
    let members = sections[1..]
        .iter()
        .map(|(_, body)| {
            let idx = parse_generators(body, Some(degree))?
                .iter()
                .map(|p| g.index_of(p).ok_or_else(|| Error::NotASubgroup(format!("{p} is not in the group"))))
                .collect::<Result<Vec<_>>>()?;
            Ok(Subgroup::generated(&g, &idx))
        })
        .collect::<Result<Vec<_>>>()?;
    SubgroupFamily::new(&g, members)
}

pub fn build_named(spec: &ExampleSpec, cap: usize) -> Result<NamedExample> {
    match spec {
        ExampleSpec::Alt5Oliver => Ok(NamedExample::from_family(spec.clone(), alt5_family()?)),
        ExampleSpec::S3Bipartite => Ok(NamedExample::from_family(spec.clone(), s3_family()?)),
        ExampleSpec::SimplexBoundary(k) => {
            if *k == 0 {
                return Err(Error::InvalidArgument("simplex_boundary needs k >= 1".into()));
            }
            Ok(NamedExample::bare(spec.clone(), SimplicialComplex::simplex_boundary(*k)))
        }
        ExampleSpec::FacetFile(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            Ok(NamedExample::bare(spec.clone(), SimplicialComplex::parse_facets(&text)?))
        }
        ExampleSpec::CosetFile(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            Ok(NamedExample::from_family(spec.clone(), parse_coset_file(&text, cap)?))
        }
        ExampleSpec::BuildingA { n, p } => {
            let b = building_flag_complex(*n, *p, cap)?;
            let facet = b.standard_flag();
            let stabs: Vec<Subgroup> = facet.iter().map(|&v| b.action.stabilizer(&Simplex::new(vec![v]))).collect();
            let coloring = Coloring::new(b.subspaces.iter().enumerate().map(|(v, s)| (v, s.dim() - 1)).collect());
            Ok(NamedExample {
                spec: spec.clone(),
                complex: b.complex.clone(),
                group: Some(b.group().clone()),
                family: Some(SubgroupFamily::new(b.group(), stabs)?),
                coloring: Some(coloring),
                action: Some(b.action.clone()),
                facet: Some(facet),
                best_effort: !b.certified,
                building: Some(b),
            })
        }
        ExampleSpec::OppA { n, p } => {
            let b = building_flag_complex(*n, *p, cap)?;
            let opp = b.opposition_complex()?;
            let action = opp.action.clone().expect("building opposition complexes carry the action");
            let facet = opp.standard_facet.clone().expect("standard facet");
            let stabs: Vec<Subgroup> = facet.iter().map(|&v| action.stabilizer(&Simplex::new(vec![v]))).collect();
            let coloring =
                Coloring::new(opp.pairs.iter().enumerate().map(|(v, &(a, _))| (v, b.subspaces[a].dim() - 1)).collect());
            Ok(NamedExample {
                spec: spec.clone(),
                complex: opp.complex.clone(),
                group: Some(b.group().clone()),
                family: Some(SubgroupFamily::new(b.group(), stabs)?),
                coloring: Some(coloring),
                action: Some(action),
                facet: Some(facet),
                best_effort: !b.certified,
                building: Some(b),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Cm,
    HomotopyCm,
    Generation,
    HigherGeneration,
    Subfamilies,
    OppositionGeneration,
    LeviGeneration,
    Weyl,
    SkeletonComplement,
    Colored,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Cm,
        Check::HomotopyCm,
        Check::Generation,
        Check::HigherGeneration,
        Check::Subfamilies,
        Check::OppositionGeneration,
        Check::LeviGeneration,
        Check::Weyl,
        Check::SkeletonComplement,
        Check::Colored,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Cm => "cm",
            Check::HomotopyCm => "homotopy-cm",
            Check::Generation => "generation",
            Check::HigherGeneration => "thm2.9",
            Check::Subfamilies => "thm2.11",
            Check::OppositionGeneration => "thm3.2",
            Check::LeviGeneration => "cor3.3",
            Check::Weyl => "weyl",
            Check::SkeletonComplement => "lemma2.7",
            Check::Colored => "walker",
        }
    }

    /// Whether the example carries the data the check needs.
    pub fn applies_to(self, ex: &NamedExample) -> bool {
        match self {
            Check::Cm | Check::HomotopyCm | Check::SkeletonComplement => true,
            Check::Generation | Check::Subfamilies => ex.family.is_some(),
            Check::HigherGeneration => ex.action.is_some() && ex.facet.is_some(),
            Check::OppositionGeneration | Check::LeviGeneration | Check::Weyl => ex.building.is_some(),
            Check::Colored => ex.coloring.is_some(),
        }
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check `{s}`")))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub coefficients: Coefficients,
    pub budget: ConnectivityBudget,
    /// Generation degree for `generation` and the Levi rank for `cor3.3`.
    pub m: Option<i64>,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { coefficients: Coefficients::Integers, budget: ConnectivityBudget::default(), m: None, timings: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    AsExpected,
    NoExpectation,
    UnexpectedRefuted,
    UnexpectedVerified,
    UnexpectedUnknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub coefficients: Coefficients,
    pub expected: Option<Status>,
    pub outcome: Outcome,
    pub verdict: Verdict,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub example: String,
    pub best_effort: bool,
    pub group_order: Option<usize>,
    pub family_orders: Option<Vec<usize>>,
    pub dimension: isize,
    pub f_vector: Vec<usize>,
    pub homology: Option<HomologyProfile>,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn new(ex: &NamedExample) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            example: ex.name(),
            best_effort: ex.best_effort,
            group_order: ex.group.as_ref().map(|g| g.order()),
            family_orders: ex.family.as_ref().map(|f| f.members().iter().map(Subgroup::order).collect()),
            dimension: ex.complex.dim(),
            f_vector: ex.complex.f_vector(),
            homology: None,
            checks: vec![],
        }
    }

    /// 0 when every verdict matches its expectation, 1 on an unexpected
    /// definite verdict, 2 when only unknowns stand where a verdict was expected.
    pub fn exit_code(&self) -> i32 {
        exit_code(self.checks.iter().map(|c| c.outcome))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

pub fn exit_code(outcomes: impl IntoIterator<Item = Outcome>) -> i32 {
    let mut code = 0;
    for o in outcomes {
        match o {
            Outcome::UnexpectedRefuted | Outcome::UnexpectedVerified => return 1,
            Outcome::UnexpectedUnknown => code = 2,
            _ => {}
        }
    }
    code
}

fn default_m(ex: &NamedExample) -> i64 {
    ex.family.as_ref().map_or(1, |f| (f.len() as i64 - 1).max(1))
}

/// The verdict each catalog example is known to produce; `None` for
/// imported complexes.
pub fn expected_status(ex: &NamedExample, check: Check, opts: &VerifyOptions) -> Option<Status> {
    use Status::*;
    let m = opts.m.unwrap_or_else(|| default_m(ex));
    let d = ex.complex.dim() as i64;
    match &ex.spec {
        ExampleSpec::FacetFile(_) | ExampleSpec::CosetFile(_) => None,
        ExampleSpec::Alt5Oliver => Some(match check {
            Check::HomotopyCm | Check::HigherGeneration => Refuted,
            Check::Generation if m >= 2 => Refuted,
            _ => Verified,
        }),
        ExampleSpec::BuildingA { .. } | ExampleSpec::OppA { .. } | ExampleSpec::S3Bipartite => Some(match check {
            Check::Generation if m > d => Refuted,
            _ => Verified,
        }),
        ExampleSpec::SimplexBoundary(_) => Some(Verified),
    }
}

fn data(description: impl Into<String>, values: Vec<i64>) -> Certificate {
    Certificate::Data { description: description.into(), values }
}

fn flag(name: &str, ok: bool) -> (String, Verdict) {
    let v = if ok { Verdict::verified(data(name, vec![1])) } else { Verdict::refuted(data(name, vec![0])) };
    (name.to_string(), v)
}

fn cm_details(x: &SimplicialComplex, c: &CmCertificate) -> Value {
    json!({
        "variant": c.variant,
        "global": c.global.status(),
        "links_checked": c.links.len(),
        "witness": c.witness().map(|w| json!({"simplex": w.names, "required": w.required})),
        "pure": x.is_pure(),
    })
}

fn need<'a, T>(x: Option<&'a T>, what: &str, check: Check) -> Result<&'a T> {
    x.ok_or_else(|| Error::InvalidArgument(format!("check `{check}` needs {what}")))
}

/// Runs one check and compares it with the expected verdict.
pub fn verify(ex: &NamedExample, check: Check, opts: &VerifyOptions) -> Result<CheckReport> {
    let start = Instant::now();
    let (verdict, details) = run_check(ex, check, opts)?;
    let expected = expected_status(ex, check, opts);
    let outcome = match (expected, verdict.status()) {
        (None, _) => Outcome::NoExpectation,
        (Some(e), s) if e == s => Outcome::AsExpected,
        (Some(_), Status::Refuted) => Outcome::UnexpectedRefuted,
        (Some(_), Status::Verified) => Outcome::UnexpectedVerified,
        (Some(_), Status::Unknown) => Outcome::UnexpectedUnknown,
    };
    if verdict.is_verified() {
        assert!(verdict.certificate().is_some(), "verified without a certificate");
    }
    Ok(CheckReport {
        check: check.name().to_string(),
        coefficients: opts.coefficients,
        expected,
        outcome,
        verdict,
        details,
        seconds: opts.timings.then(|| start.elapsed().as_secs_f64()),
    })
}

fn run_check(ex: &NamedExample, check: Check, opts: &VerifyOptions) -> Result<(Verdict, Value)> {
    let x = &ex.complex;
    let coeff = opts.coefficients;
    let budget = opts.budget;
    match check {
        Check::Cm => {
            let c = cm_over(x, coeff);
            Ok((c.verdict.clone(), cm_details(x, &c)))
        }
        Check::HomotopyCm => {
            let c = homotopy_cm(x, budget);
            Ok((c.verdict.clone(), cm_details(x, &c)))
        }
        Check::Generation => {
            let family = need(ex.family.as_ref(), "a subgroup family", check)?;
            let m = opts.m.unwrap_or_else(|| default_m(ex));
            if m < 1 {
                return Err(Error::InvalidArgument("generation degree m must be positive".into()));
            }
            let v = generation_verdict(family, m, budget);
            Ok((v, json!({"m": m, "union_generates": union_generates(family)})))
        }
        Check::HigherGeneration => {
            let action = need(ex.action.as_ref(), "a group action", check)?;
            let facet = need(ex.facet.as_ref(), "a fundamental facet", check)?;
            let r = higher_generation_report(action, facet, budget)?;
            let mut parts = Vec::new();
            let d = r.dimension;
            for l in &r.levels {
                parts.push((format!("k={} {}-generation", l.k, d - l.k as i64), l.generation.clone()));
                parts.push((format!("k={} sphericity", l.k), l.sphericity.clone()));
                parts.push(flag(&format!("k={} matches the skeleton-complement model", l.k), l.matches_skeleton_model));
            }
            assert!(r.consistent, "higher generation fails although the complex is homotopy Cohen-Macaulay");
            let model = coset_model_isomorphism(action, facet)?;
            parts.push(("coset model of the complex".into(), model.verdict.clone()));
            Ok((Verdict::conjunction(parts), serde_json::to_value(&r).expect("serializes")))
        }
        Check::Subfamilies => {
            let family = need(ex.family.as_ref(), "a subgroup family", check)?;
            let r = cm_via_subfamilies(family, coeff, Some(budget));
            let details = json!({
                "homotopy": r.homotopy.as_ref().map(Verdict::status),
                "table": r.table,
            });
            Ok((r.homological, details))
        }
        Check::OppositionGeneration => opposition_generation(need(ex.building.as_ref(), "a building", check)?, budget),
        Check::LeviGeneration => levi_generation(need(ex.building.as_ref(), "a building", check)?, opts),
        Check::Weyl => weyl_layer(need(ex.building.as_ref(), "a building", check)?),
        Check::SkeletonComplement => {
            let checks = skeleton_complement_check(x, coeff, None)?;
            let parts = checks.iter().map(|c| (format!("s={} degree {}", c.s, c.degree), c.homology.clone())).collect();
            Ok((Verdict::conjunction(parts), serde_json::to_value(&checks).expect("serializes")))
        }
        Check::Colored => {
            let coloring = need(ex.coloring.as_ref(), "a coloring", check)?;
            let r = walker_colored_check(x, coloring, coeff)?;
            Ok((r.verdict, serde_json::to_value(&r.table).expect("serializes")))
        }
    }
}

/// `m`-generation; for `m = 0` only nonemptiness of the coset complex.
fn generation_or_nonempty(fam: &SubgroupFamily, m: i64, budget: ConnectivityBudget) -> Verdict {
    if m == 0 {
        let vertices: usize = fam.members().iter().map(Subgroup::index).sum();
        Verdict::verified(data("vertices of the coset complex", vec![vertices as i64]))
    } else {
        generation_verdict(fam, m, budget)
    }
}

fn levi_family(b: &Building, k: usize) -> Result<(SubgroupFamily, Vec<Vec<usize>>)> {
    let pl = parabolic_and_levi_subgroups(b, k)?;
    Ok((SubgroupFamily::new(b.group(), pl.levis)?, pl.block_sizes))
}

fn sorted_elements(subs: &[Subgroup]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = subs.iter().map(|s| s.elements().to_vec()).collect();
    v.sort();
    v
}

/// Levi families of every rank on the opposition complex: the standard pair
/// is a fundamental facet, the coset model reproduces `Opp`, and the Levi
/// family of `k`-faces is `(d-k)`-generating.
fn opposition_generation(b: &Building, budget: ConnectivityBudget) -> Result<(Verdict, Value)> {
    let opp = b.opposition_complex()?;
    let action = opp.action.as_ref().expect("building opposition complexes carry the action");
    let facet = opp.standard_facet.as_ref().expect("standard facet");
    let d = b.n - 2;
    let mut parts = vec![flag("standard pair is a fundamental facet", is_fundamental_facet(action, facet)?)];
    let model = coset_model_isomorphism(action, facet)?;
    parts.push(("coset model of Opp".into(), model.verdict.clone()));
    let families = stabilizer_families(action, facet)?;
    let mut levels = Vec::new();
    for (k, stabs) in families.iter().enumerate() {
        let (fam, blocks) = levi_family(b, k)?;
        assert_eq!(sorted_elements(stabs), sorted_elements(fam.members()), "face stabilizers in Opp are not the Levi subgroups");
        let m = (d - k) as i64;
        let v = generation_or_nonempty(&fam, m, budget);
        levels.push(json!({"k": k, "m": m, "blocks": blocks, "orders": fam.members().iter().map(Subgroup::order).collect::<Vec<_>>(), "status": v.status()}));
        parts.push((format!("k={k} Levi family {m}-generating"), v));
    }
    let details = json!({"f_vector": opp.complex.f_vector(), "levels": levels});
    Ok((Verdict::conjunction(parts), details))
}

/// The standard Levi subgroups of rank `m` are `m`-generating.
fn levi_generation(b: &Building, opts: &VerifyOptions) -> Result<(Verdict, Value)> {
    let d = (b.n - 2) as i64;
    let ranks: Vec<i64> = match opts.m {
        Some(m) if !(0..=d).contains(&m) => {
            return Err(Error::InvalidArgument(format!("Levi rank {m} outside 0..={d}")));
        }
        Some(m) => vec![m],
        None => (0..=d).collect(),
    };
    let mut parts = Vec::new();
    let mut rows = Vec::new();
    for m in ranks {
        let (fam, blocks) = levi_family(b, (d - m) as usize)?;
        let v = generation_or_nonempty(&fam, m, opts.budget);
        rows.push(json!({
            "rank": m,
            "blocks": blocks,
            "orders": fam.members().iter().map(Subgroup::order).collect::<Vec<_>>(),
            "indices": fam.members().iter().map(Subgroup::index).collect::<Vec<_>>(),
            "status": v.status(),
        }));
        parts.push((format!("rank-{m} Levi family {m}-generating"), v));
    }
    Ok((Verdict::conjunction(parts), json!({"levis": rows})))
}

fn weyl_layer(b: &Building) -> Result<(Verdict, Value)> {
    let n = b.chambers.num_chambers();
    let mut by_class: HashMap<WeylElement, usize> = HashMap::new();
    let mut longest_pairs = Vec::new();
    // weyl_distance asserts l(δ) = gallery distance for each pair
    for c in 0..n {
        for e in 0..n {
            let w = b.weyl_distance(c, e)?;
            if w == WeylElement::longest(b.n) {
                longest_pairs.push((c, e));
            }
            *by_class.entry(w).or_default() += 1;
        }
    }
    let opposite = b.chambers.opposite_chambers();
    assert_eq!(opposite, longest_pairs, "opposite chambers differ from pairs at the longest Weyl distance");
    let parts = vec![
        ("gallery distance equals Weyl length".to_string(), Verdict::verified(data("ordered chamber pairs compared", vec![(n * n) as i64]))),
        ("opposite chambers are the longest-element pairs".to_string(), Verdict::verified(data("opposite ordered pairs", vec![opposite.len() as i64]))),
        ("Weyl transitivity".to_string(), b.verify_weyl_transitivity(&b.action)?),
    ];
    let mut classes: Vec<(String, usize)> = by_class.into_iter().map(|(w, s)| (w.to_string(), s)).collect();
    classes.sort();
    let details = json!({"chambers": n, "pairs": n * n, "opposite_pairs": opposite.len(), "classes": classes});
    Ok((Verdict::conjunction(parts), details))
}

/// Homology plus every applicable check.
pub fn report(ex: &NamedExample, opts: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new(ex);
    r.homology = Some(reduced_homology(&ex.complex, opts.coefficients));
    for check in Check::ALL {
        if check.applies_to(ex) {
            r.checks.push(verify(ex, check, opts)?);
        }
    }
    Ok(r)
}

/// Builds with the default element cap.
pub fn build(name: &str) -> Result<NamedExample> {
    build_named(&name.parse()?, DEFAULT_ELEMENT_CAP)
}
