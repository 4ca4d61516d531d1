//! Cohen-Macaulay checks: over a coefficient ring, homotopy (three-valued),
//! the skeleton-complement models, the colored criterion and shellings.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fundgroup::{connectivity_certificate, ConnectivityBudget};
use crate::homology::{acyclicity_certificate, concentration_verdict, reduced_homology, Coefficients};
use crate::simplicial::{Coloring, Simplex, SimplicialComplex};
use crate::verdict::{Certificate, Status, Verdict};

/// Outcome of the link condition at one simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkCheck {
    pub simplex: Vec<usize>,
    pub names: Vec<String>,
    /// Required acyclicity or connectivity degree `d - s - 2`.
    pub required: i64,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CmCertificate {
    /// `Z`, `F<p>` or `homotopy`.
    pub variant: String,
    pub verdict: Verdict,
    pub global: Verdict,
    pub links: Vec<LinkCheck>,
}

impl CmCertificate {
    pub fn status(&self) -> Status {
        self.verdict.status()
    }

    /// First simplex whose link fails, if any.
    pub fn witness(&self) -> Option<&LinkCheck> {
        self.links.iter().find(|l| l.status == Status::Refuted)
    }
}

fn assemble(x: &SimplicialComplex, variant: String, global: Verdict, checked: Vec<(Simplex, i64, Verdict)>) -> CmCertificate {
    let links: Vec<LinkCheck> = checked
        .iter()
        .map(|(s, required, v)| LinkCheck {
            simplex: s.to_vec(),
            names: x.simplex_names(s),
            required: *required,
            status: v.status(),
        })
        .collect();
    let verdict = if global.is_refuted() {
        Verdict::refuted(Certificate::Part { name: "global".into(), verdict: Box::new(global.clone()) })
    } else if let Some((s, required, v)) = checked.iter().find(|(_, _, v)| v.is_refuted()) {
        Verdict::refuted(Certificate::Link { simplex: s.to_vec(), required: *required, verdict: Box::new(v.clone()) })
    } else if let Verdict::Unknown { reason } = &global {
        Verdict::unknown(format!("global: {reason}"))
    } else if let Some((s, _, Verdict::Unknown { reason })) = checked.iter().find(|(_, _, v)| v.is_unknown()) {
        Verdict::unknown(format!("link of {s:?}: {reason}"))
    } else {
        let passed = Verdict::verified(Certificate::Data {
            description: "simplices whose links meet the requirement".into(),
            values: vec![checked.len() as i64],
        });
        Verdict::verified(Certificate::All { parts: vec![("global".into(), global.clone()), ("links".into(), passed)] })
    };
    if verdict.is_verified() && !x.is_empty() {
        assert!(x.is_pure() && x.is_chamber_complex(), "Cohen-Macaulay complex that is not a pure chamber complex");
    }
    CmCertificate { variant, verdict, global, links }
}

/// Global `(d-1)`-acyclicity plus `(d-s-2)`-acyclicity of every `s`-simplex link.
pub fn cm_over(x: &SimplicialComplex, coeff: Coefficients) -> CmCertificate {
    let d = x.dim() as i64;
    let global = acyclicity_certificate(x, d - 1, coeff);
    let checked = x
        .all_faces()
        .map(|s| {
            let required = d - s.dim() as i64 - 2;
            let link = x.link(s).expect("face of the complex");
            (s.clone(), required, acyclicity_certificate(&link, required, coeff))
        })
        .collect();
    assemble(x, coeff.to_string(), global, checked)
}

/// `(d-1)`-connectivity plus `(d-s-2)`-connectivity of every link. A single
/// unknown link with nothing refuted makes the result unknown.
pub fn homotopy_cm(x: &SimplicialComplex, budget: ConnectivityBudget) -> CmCertificate {
    let d = x.dim() as i64;
    let connectivity = |y: &SimplicialComplex, k: i64| {
        if k < -1 {
            Verdict::verified(Certificate::HomologyVanishes { coefficients: "Z".into(), degrees: vec![] })
        } else {
            connectivity_certificate(y, k, budget)
        }
    };
    let global = connectivity(x, d - 1);
    let checked = x
        .all_faces()
        .map(|s| {
            let required = d - s.dim() as i64 - 2;
            let link = x.link(s).expect("face of the complex");
            (s.clone(), required, connectivity(&link, required))
        })
        .collect();
    assemble(x, "homotopy".into(), global, checked)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImplicationAudit {
    pub homotopy: Status,
    pub integers: Status,
    pub fields: Vec<(u64, Status)>,
}

/// Runs every variant and panics if a certified verdict contradicts
/// homotopy CM ⇒ CM over Z ⇒ CM over every field.
pub fn implication_audit(x: &SimplicialComplex, primes: &[u64], budget: ConnectivityBudget) -> ImplicationAudit {
    let homotopy = homotopy_cm(x, budget).status();
    let integers = cm_over(x, Coefficients::Integers).status();
    let fields: Vec<(u64, Status)> = primes.iter().map(|&p| (p, cm_over(x, Coefficients::Prime(p)).status())).collect();
    assert!(
        !(homotopy == Status::Verified && integers == Status::Refuted),
        "homotopy Cohen-Macaulay but refuted over Z"
    );
    for (p, s) in &fields {
        assert!(!(integers == Status::Verified && *s == Status::Refuted), "Cohen-Macaulay over Z but refuted over F{p}");
    }
    ImplicationAudit { homotopy, integers, fields }
}

/// One model `X_s` of the skeleton-complement check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkeletonCheck {
    /// The removed skeleton has dimension `s`.
    pub s: usize,
    pub model_vertices: usize,
    /// Expected degree `d - s - 1`.
    pub degree: i64,
    pub homology: Verdict,
    pub connectivity: Option<Verdict>,
}

/// For every `0 <= s < d`, the complement of the `s`-skeleton (modelled on
/// the barycenters of simplices of dimension above `s`) must have homology
/// concentrated in degree `d - s - 1`. With `homotopy` set, the model must
/// also be `(d - s - 2)`-connected; that part needs a verified homotopy CM
/// certificate.
pub fn skeleton_complement_check(
    x: &SimplicialComplex,
    coeff: Coefficients,
    homotopy: Option<ConnectivityBudget>,
) -> Result<Vec<SkeletonCheck>> {
    if !cm_over(x, coeff).verdict.is_verified() {
        return Err(Error::PreconditionFailed(format!("complex is not certified Cohen-Macaulay over {coeff}")));
    }
    if let Some(budget) = homotopy {
        if !homotopy_cm(x, budget).verdict.is_verified() {
            return Err(Error::PreconditionFailed("complex is not certified homotopy Cohen-Macaulay".into()));
        }
    }
    let d = x.dim();
    let mut out = Vec::new();
    for s in 0..d.max(0) as usize {
        let model = x.skeleton_complement_model(s + 1)?;
        let degree = d as i64 - s as i64 - 1;
        let homology = concentration_verdict(&reduced_homology(&model, coeff), degree);
        let connectivity = homotopy.map(|b| {
            if degree - 1 < -1 {
                Verdict::verified(Certificate::HomologyVanishes { coefficients: "Z".into(), degrees: vec![] })
            } else {
                connectivity_certificate(&model, degree - 1, b)
            }
        });
        out.push(SkeletonCheck { s, model_vertices: model.vertices().len(), degree, homology, connectivity });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColorSetCheck {
    pub colors: Vec<usize>,
    pub required: i64,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkerReport {
    pub verdict: Verdict,
    pub table: Vec<ColorSetCheck>,
}

/// `X_J` must be `(|J| - 2)`-acyclic for every set `J` of colors. The answer
/// is asserted to agree with [`cm_over`].
pub fn walker_colored_check(x: &SimplicialComplex, coloring: &Coloring, coeff: Coefficients) -> Result<WalkerReport> {
    coloring.validate(x)?;
    let ncolors = (x.dim() + 1) as usize;
    let mut table = Vec::new();
    let mut failure = None;
    for mask in 0u64..(1 << ncolors) {
        let colors: Vec<usize> = (0..ncolors).filter(|c| mask >> c & 1 == 1).collect();
        let required = colors.len() as i64 - 2;
        let sub = coloring.restrict(x, &colors)?;
        let v = acyclicity_certificate(&sub, required, coeff);
        if v.is_refuted() && failure.is_none() {
            failure = Some(Verdict::refuted(Certificate::Part { name: format!("colors {colors:?}"), verdict: Box::new(v.clone()) }));
        }
        table.push(ColorSetCheck { colors, required, status: v.status() });
    }
    let verdict = failure.unwrap_or_else(|| {
        Verdict::verified(Certificate::Data {
            description: "color sets J with X_J (|J|-2)-acyclic".into(),
            values: vec![table.len() as i64],
        })
    });
    assert_eq!(verdict.status(), cm_over(x, coeff).status(), "colored criterion disagrees with the link check");
    Ok(WalkerReport { verdict, table })
}

pub const DEFAULT_SHELLING_BUDGET: u64 = 1_000_000;

/// Depth-first search for a shelling in canonical facet order; the first
/// descent is the greedy pass. Placed sets that failed are remembered.
pub fn shelling_search(x: &SimplicialComplex, budget: u64) -> Result<Verdict> {
    if !x.is_pure() {
        return Err(Error::NotPure);
    }
    let facets = x.facets();
    let n = facets.len();
    if n == 0 {
        return Ok(Verdict::verified(Certificate::Shelling { order: vec![] }));
    }
    let words = n.div_ceil(64);
    struct State<'a> {
        facets: &'a [Simplex],
        order: Vec<usize>,
        placed: Vec<u64>,
        /// Ridges covered by placed facets.
        ridges: HashSet<Simplex>,
        failed: HashSet<Vec<u64>>,
        explored: u64,
        budget: u64,
    }

    fn fits(st: &State, f: &Simplex) -> bool {
        if st.order.is_empty() {
            return true;
        }
        let m: Vec<usize> = f.iter().copied().filter(|&v| st.ridges.contains(&f.without(&Simplex::new(vec![v])))).collect();
        !m.is_empty()
            && st.order.iter().all(|&g| {
                let g = &st.facets[g];
                m.iter().any(|v| g.binary_search(v).is_err())
            })
    }

    fn dfs(st: &mut State) -> Option<bool> {
        if st.order.len() == st.facets.len() {
            return Some(true);
        }
        if st.failed.contains(&st.placed) {
            return Some(false);
        }
        for i in 0..st.facets.len() {
            if st.placed[i / 64] >> (i % 64) & 1 == 1 || !fits(st, &st.facets[i]) {
                continue;
            }
            st.explored += 1;
            if st.explored > st.budget {
                return None;
            }
            let added: Vec<Simplex> =
                st.facets[i].boundary_faces().into_iter().filter(|r| !st.ridges.contains(r)).collect();
            st.ridges.extend(added.iter().cloned());
            st.placed[i / 64] |= 1 << (i % 64);
            st.order.push(i);
            match dfs(st) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            st.order.pop();
            st.placed[i / 64] &= !(1 << (i % 64));
            for r in &added {
                st.ridges.remove(r);
            }
        }
        st.failed.insert(st.placed.clone());
        Some(false)
    }

    let mut st = State {
        facets,
        order: vec![],
        placed: vec![0; words],
        ridges: HashSet::new(),
        failed: HashSet::new(),
        explored: 0,
        budget,
    };
    Ok(match dfs(&mut st) {
        Some(true) => Verdict::verified(Certificate::Shelling { order: st.order.iter().map(|&i| facets[i].to_vec()).collect() }),
        Some(false) => Verdict::refuted(Certificate::Exhausted { explored: st.explored }),
        None => Verdict::unknown(format!("shelling search budget of {budget} partial orderings exhausted")),
    })
}

/// Re-checks a shelling order.
pub fn is_shelling(x: &SimplicialComplex, order: &[Vec<usize>]) -> bool {
    let facets: HashSet<Simplex> = x.facets().iter().cloned().collect();
    let seq: Vec<Simplex> = order.iter().map(|f| Simplex::new(f.clone())).collect();
    if seq.len() != facets.len() || seq.iter().collect::<HashSet<_>>().len() != seq.len() || !seq.iter().all(|f| facets.contains(f)) {
        return false;
    }
    (1..seq.len()).all(|j| {
        let f = &seq[j];
        let prev = &seq[..j];
        let ridge_ok = |r: &Simplex| prev.iter().any(|g| r.is_face_of(g));
        let m: Vec<usize> = f.iter().copied().filter(|&v| ridge_ok(&f.without(&Simplex::new(vec![v])))).collect();
        !m.is_empty() && prev.iter().all(|g| m.iter().any(|v| !g.contains(v)))
    })
}
