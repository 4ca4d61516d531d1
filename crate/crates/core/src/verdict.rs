//! Three-valued outcomes for properties that are only semi-decidable.
//!
//! A [`Verdict`] is `Verified` or `Refuted` only together with a
//! [`Certificate`] that can be re-checked independently; everything else is
//! `Unknown` with a reason.

use serde::Serialize;

use crate::fundgroup::TietzeStep;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Verified { certificate: Certificate },
    Refuted { certificate: Certificate },
    Unknown { reason: String },
}

/// Reduced homology in one degree, as carried inside certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeGroup {
    pub degree: i64,
    pub betti: usize,
    pub torsion: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A vertex witnessing nonemptiness.
    Nonempty { vertex: usize },
    /// The complex has no vertices.
    Empty,
    /// A spanning tree rooted at `root` reaches every vertex.
    SpanningTree { root: usize, parent: Vec<(usize, usize)> },
    /// Two vertices in different components.
    Disconnected { components: usize, a: usize, b: usize },
    /// Every listed reduced homology group vanishes.
    HomologyVanishes { coefficients: String, degrees: Vec<i64> },
    /// Nonzero reduced homology in some degree.
    HomologyNonzero { coefficients: String, group: DegreeGroup },
    /// Homology concentrated in one degree and free there.
    Concentrated { coefficients: String, degree: i64, rank: usize },
    /// A sequence of Tietze moves ending at the trivial presentation.
    TrivialPresentation { generators: usize, relators: usize, trace: Vec<TietzeStep> },
    /// A homomorphism to a finite permutation group with nontrivial image.
    FiniteQuotient {
        target: String,
        target_order: usize,
        images: Vec<String>,
        image_order: usize,
        surjective: bool,
        presentation: String,
    },
    /// The search space was exhausted.
    Exhausted { explored: u64 },
    /// A shelling order, listed by facet.
    Shelling { order: Vec<Vec<usize>> },
    /// A simplex whose link fails the required condition.
    Link { simplex: Vec<usize>, required: i64, verdict: Box<Verdict> },
    /// A conjunction of named sub-verdicts.
    All { parts: Vec<(String, Verdict)> },
    /// A named failing sub-verdict.
    Part { name: String, verdict: Box<Verdict> },
    /// Free-form machine-readable data for structural checks.
    Data { description: String, values: Vec<i64> },
}

impl Verdict {
    pub fn verified(certificate: Certificate) -> Self {
        Verdict::Verified { certificate }
    }

    pub fn refuted(certificate: Certificate) -> Self {
        Verdict::Refuted { certificate }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict::Unknown { reason: reason.into() }
    }

    pub fn status(&self) -> Status {
        match self {
            Verdict::Verified { .. } => Status::Verified,
            Verdict::Refuted { .. } => Status::Refuted,
            Verdict::Unknown { .. } => Status::Unknown,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status() == Status::Verified
    }

    pub fn is_refuted(&self) -> bool {
        self.status() == Status::Refuted
    }

    pub fn is_unknown(&self) -> bool {
        self.status() == Status::Unknown
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Verified { certificate } | Verdict::Refuted { certificate } => Some(certificate),
            Verdict::Unknown { .. } => None,
        }
    }

    /// Combines named verdicts: any refutation wins, then any unknown,
    /// otherwise everything is verified.
    pub fn conjunction(parts: Vec<(String, Verdict)>) -> Verdict {
        if let Some((name, v)) = parts.iter().find(|(_, v)| v.is_refuted()) {
            return Verdict::refuted(Certificate::Part { name: name.clone(), verdict: Box::new(v.clone()) });
        }
        if let Some((name, v)) = parts.iter().find(|(_, v)| v.is_unknown()) {
            let reason = match v {
                Verdict::Unknown { reason } => reason.clone(),
                _ => unreachable!(),
            };
            return Verdict::unknown(format!("{name}: {reason}"));
        }
        Verdict::verified(Certificate::All { parts })
    }
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certificate::Nonempty { vertex } => write!(f, "nonempty (vertex {vertex})"),
            Certificate::Empty => write!(f, "empty complex"),
            Certificate::SpanningTree { root, parent } => write!(f, "spanning tree from {root} with {} edges", parent.len()),
            Certificate::Disconnected { components, a, b } => {
                write!(f, "{components} components; {a} and {b} are not joined")
            }
            Certificate::HomologyVanishes { coefficients, degrees } => {
                write!(f, "reduced homology over {coefficients} vanishes in degrees {degrees:?}")
            }
            Certificate::HomologyNonzero { coefficients, group } => {
                write!(f, "H~_{}({coefficients}) has rank {}", group.degree, group.betti)?;
                if !group.torsion.is_empty() {
                    write!(f, " and torsion {}", group.torsion.join(", "))?;
                }
                Ok(())
            }
            Certificate::Concentrated { coefficients, degree, rank } => {
                write!(f, "homology over {coefficients} concentrated in degree {degree}, free of rank {rank}")
            }
            Certificate::TrivialPresentation { generators, relators, trace } => write!(
                f,
                "presentation with {generators} generators and {relators} relators collapses in {} moves",
                trace.len()
            ),
            Certificate::FiniteQuotient { target, image_order, surjective, .. } => {
                let kind = if *surjective { "onto" } else { "into" };
                write!(f, "homomorphism {kind} {target} with image of order {image_order}")
            }
            Certificate::Exhausted { explored } => write!(f, "search space exhausted after {explored} nodes"),
            Certificate::Shelling { order } => write!(f, "shelling of {} facets", order.len()),
            Certificate::Link { simplex, required, verdict } => {
                write!(f, "link of {simplex:?} is not {required}-acyclic/connected: ")?;
                match verdict.certificate() {
                    Some(c) => write!(f, "{c}"),
                    None => write!(f, "{}", verdict.status()),
                }
            }
            Certificate::All { parts } if parts.is_empty() => write!(f, "no conditions to check"),
            Certificate::All { parts } if parts.len() == 1 => write!(f, "the single condition holds"),
            Certificate::All { parts } => write!(f, "all {} conditions hold", parts.len()),
            Certificate::Part { name, verdict } => {
                write!(f, "{name}: ")?;
                match verdict.certificate() {
                    Some(c) => write!(f, "{c}"),
                    None => write!(f, "{}", verdict.status()),
                }
            }
            Certificate::Data { description, values } if values.len() <= 8 => write!(f, "{description} {values:?}"),
            Certificate::Data { description, values } => write!(f, "{description} ({} values)", values.len()),
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Verified { certificate } | Verdict::Refuted { certificate } => {
                write!(f, "{}: {certificate}", self.status())
            }
            Verdict::Unknown { reason } => write!(f, "unknown: {reason}"),
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Unknown => "unknown",
        };
        f.write_str(s)
    }
}
