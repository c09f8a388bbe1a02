//! Table-driven case execution: parse a case matrix, build each family,
//! settle the Hamilton question, and emit machine-readable reports plus
//! certificate files.
//!
//! A case matrix is plain text, one case per line:
//!
//! ```text
//! family param param ... [strategy-override]
//! # comments and blank lines are skipped
//! ```
//!
//! The optional trailing token forces a generic strategy (`search` or
//! `density`) in place of the family's native ladder; native construction
//! tags are accepted but change nothing, since the builder tries its own
//! construction first anyway.

use std::path::Path;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::hamsearch::{find_hcycle, prove_nonhamiltonian, NonHamVerdict, SearchOutcome,
    DEFAULT_BUDGET};
use crate::orbital::{orbital_graph, Graph};
use crate::perm::PermutationGroup;
use crate::psl2::DplusCase;

use super::{dihedral, grassmann, groups, orthogonal, subsets};
use super::{search_with_density_tag, BuiltCase, CaseOutcome, ConstructionError, Strategy};

/// Families the runner can dispatch.
pub const FAMILIES: [&str; 17] = [
    "psl2-dminus",
    "psl2-dplus",
    "psl2-17-s4",
    "psl2-41-a5",
    "psl2-47-s4",
    "psl3-5-flags",
    "grassmann-4",
    "grassmann-5",
    "omega-minus-8",
    "omega-plus-10",
    "johnson",
    "kneser",
    "m11-cosets",
    "m12-cosets",
    "m23-cosets",
    "j1-cosets",
    "coxeter",
];

/// One line of a case matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSpec {
    pub family: String,
    pub params: Vec<String>,
    pub strategy_override: Option<Strategy>,
}

/// One executed case, serialized as a JSON line. Exactly one of
/// `certificate_file` and `verdict` is present.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub n: usize,
    pub valency: usize,
    pub strategy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    pub elapsed_ms: u64,
}

impl CaseReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Parses a strategy tag as written in reports.
pub fn parse_strategy(tag: &str) -> Option<Strategy> {
    [
        Strategy::QuotientLift,
        Strategy::Splice,
        Strategy::SingerCover,
        Strategy::Density,
        Strategy::Search,
    ]
    .into_iter()
    .find(|s| s.tag() == tag)
}

/// Parses a case matrix. Unknown families and malformed lines are errors;
/// parameter values are validated later, at dispatch.
pub fn parse_matrix(text: &str) -> Result<Vec<CaseSpec>, ConstructionError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens: Vec<String> = line.split_whitespace().map(str::to_string).collect();
        let family = tokens.remove(0);
        if !FAMILIES.contains(&family.as_str()) {
            return Err(ConstructionError::UnsupportedParameter(format!(
                "line {}: unknown family `{family}`",
                ln + 1
            )));
        }
        let strategy_override = tokens.last().and_then(|t| parse_strategy(t));
        if strategy_override.is_some() {
            tokens.pop();
        }
        out.push(CaseSpec {
            family,
            params: tokens,
            strategy_override,
        });
    }
    Ok(out)
}

/// Runs every case of a matrix, writing certificates under
/// `certificate_dir`.
pub fn run_matrix(
    text: &str,
    certificate_dir: &Path,
) -> Result<Vec<CaseReport>, ConstructionError> {
    let specs = parse_matrix(text)?;
    let mut out = Vec::new();
    for spec in &specs {
        out.extend(run_spec(spec, certificate_dir)?);
    }
    Ok(out)
}

/// Runs one case line. Action families with an `all` selector expand to one
/// report per distinct orbital graph.
pub fn run_spec(
    spec: &CaseSpec,
    certificate_dir: &Path,
) -> Result<Vec<CaseReport>, ConstructionError> {
    std::fs::create_dir_all(certificate_dir)?;
    let ov = spec.strategy_override;
    match spec.family.as_str() {
        "psl2-dminus" => {
            let q: u64 = param(spec, 0, "q")?;
            let label: u64 = param(spec, 1, "suborbit label")?;
            single(
                format!("psl2-dminus q={q} label={label}"),
                || dihedral::dminus_pipeline(q, label),
                ov,
                certificate_dir,
            )
        }
        "psl2-dplus" => {
            let q: u64 = param(spec, 0, "q")?;
            let case = match word(spec, 1, "case name")? {
                "sp-short" => DplusCase::SpShort,
                "nsp-short" => DplusCase::NspShort,
                "long" => DplusCase::Long,
                other => {
                    return Err(ConstructionError::UnsupportedParameter(format!(
                        "psl2-dplus: unknown case `{other}`"
                    )))
                }
            };
            let k: u64 = param(spec, 2, "suborbit exponent")?;
            single(
                format!("psl2-dplus q={q} case={} k={k}", case.name()),
                || dihedral::dplus_pipeline(q, case, k),
                ov,
                certificate_dir,
            )
        }
        "grassmann-4" => {
            let q: u64 = param(spec, 0, "q")?;
            match word(spec, 1, "suborbit (meeting|skew)")? {
                "meeting" => single(
                    format!("grassmann-4 q={q} meeting"),
                    || grassmann::grassmann4_meeting(q),
                    ov,
                    certificate_dir,
                ),
                "skew" => single(
                    format!("grassmann-4 q={q} skew"),
                    || grassmann::grassmann4_skew(q),
                    ov,
                    certificate_dir,
                ),
                other => Err(ConstructionError::UnsupportedParameter(format!(
                    "grassmann-4: unknown suborbit `{other}`"
                ))),
            }
        }
        "grassmann-5" => {
            let q: u64 = param(spec, 0, "q")?;
            single(
                format!("grassmann-5 q={q}"),
                || grassmann::grassmann5_chain(q),
                ov,
                certificate_dir,
            )
        }
        "omega-minus-8" => {
            let q: u64 = param(spec, 0, "q")?;
            match word(spec, 1, "suborbit (perp|opp)")? {
                "perp" => single(
                    format!("omega-minus-8 q={q} perp"),
                    || orthogonal::ominus8_perp_case(q),
                    ov,
                    certificate_dir,
                ),
                "opp" => single(
                    format!("omega-minus-8 q={q} opp"),
                    || orthogonal::ominus8_opp_case(q),
                    ov,
                    certificate_dir,
                ),
                other => Err(ConstructionError::UnsupportedParameter(format!(
                    "omega-minus-8: unknown suborbit `{other}`"
                ))),
            }
        }
        "omega-plus-10" => match word(spec, 0, "suborbit (perp|opp)")? {
            "perp" => single(
                "omega-plus-10 perp".to_string(),
                orthogonal::oplus10_perp_case,
                ov,
                certificate_dir,
            ),
            "opp" => single(
                "omega-plus-10 opp".to_string(),
                orthogonal::oplus10_opp_case,
                ov,
                certificate_dir,
            ),
            other => Err(ConstructionError::UnsupportedParameter(format!(
                "omega-plus-10: unknown suborbit `{other}`"
            ))),
        },
        "johnson" => {
            let c: u32 = param(spec, 0, "c")?;
            single(
                format!("johnson c={c}"),
                || subsets::johnson_splice(c),
                ov,
                certificate_dir,
            )
        }
        "kneser" => {
            let c: u32 = param(spec, 0, "c")?;
            single(
                format!("kneser c={c}"),
                || subsets::kneser_case(c),
                ov,
                certificate_dir,
            )
        }
        "psl2-17-s4" => action(spec, || groups::psl2_subgroup_cosets(17), certificate_dir),
        "psl2-41-a5" => action(spec, || groups::psl2_subgroup_cosets(41), certificate_dir),
        "psl2-47-s4" => action(spec, || groups::psl2_subgroup_cosets(47), certificate_dir),
        "psl3-5-flags" => action(spec, groups::psl3_5_flag_action, certificate_dir),
        "m11-cosets" => action(spec, groups::m11_block_action, certificate_dir),
        "m12-cosets" => action(spec, groups::m12_pair_action, certificate_dir),
        "m23-cosets" => action(spec, groups::m23_octad_action, certificate_dir),
        "j1-cosets" => action(spec, groups::j1_coset_action, certificate_dir),
        "coxeter" => {
            let started = Instant::now();
            let graph = coxeter_graph();
            let built = match prove_nonhamiltonian(&graph)? {
                NonHamVerdict::NonHamiltonian { expansions } => BuiltCase {
                    graph,
                    outcome: CaseOutcome::NonHamiltonian { expansions },
                    strategy: Strategy::Search,
                },
                NonHamVerdict::Hamiltonian(cert) => {
                    BuiltCase::certified(graph, cert, Strategy::Search)
                }
            };
            Ok(vec![emit(
                "coxeter".to_string(),
                built,
                certificate_dir,
                started.elapsed(),
            )?])
        }
        other => Err(ConstructionError::UnsupportedParameter(format!(
            "unknown family `{other}`"
        ))),
    }
}

/// Known discrepancies between published counting formulas and the graphs
/// actually built, keyed by family; surfaced next to run output so they are
/// not silently papered over.
pub fn discrepancy_notes(family: &str) -> Vec<String> {
    match family {
        "grassmann-4" => vec![format!(
            "meeting valency: the point-count formula gives {} but the graph is {}-regular at q = 3; both are exported and the splice uses the measured value",
            grassmann::star_count(3),
            grassmann::meeting_valency(3)
        )],
        "omega-minus-8" => vec![
            "block skeleton is not complete at q = 3: skeleton degrees split {79, 81}, and the {12 internal, 4 cross} degree row holds exactly at the base block only; the quotient stays dense enough to lift"
                .to_string(),
        ],
        _ => Vec::new(),
    }
}

/// The 28-vertex cubic graph built from three heptagons with skips 1, 2 and
/// 3 plus a central hub row joined to one vertex of each: the classical
/// vertex-transitive graph with no Hamilton cycle, used as the negative
/// control for the exhaustive prover.
pub fn coxeter_graph() -> Graph {
    let mut edges = Vec::new();
    for i in 0..7u32 {
        let hub = i;
        edges.push((hub, 7 + i));
        edges.push((hub, 14 + i));
        edges.push((hub, 21 + i));
        edges.push((7 + i, 7 + (i + 1) % 7));
        edges.push((14 + i, 14 + (i + 2) % 7));
        edges.push((21 + i, 21 + (i + 3) % 7));
    }
    Graph::from_edges(28, edges).expect("fixed graph is well-formed")
}

fn param<T: std::str::FromStr>(
    spec: &CaseSpec,
    i: usize,
    what: &str,
) -> Result<T, ConstructionError> {
    let raw = word(spec, i, what)?;
    raw.parse::<T>().map_err(|_| {
        ConstructionError::UnsupportedParameter(format!(
            "{}: cannot parse {what} `{raw}`",
            spec.family
        ))
    })
}

fn word<'a>(spec: &'a CaseSpec, i: usize, what: &str) -> Result<&'a str, ConstructionError> {
    spec.params.get(i).map(String::as_str).ok_or_else(|| {
        ConstructionError::UnsupportedParameter(format!(
            "{} needs {what} as parameter {}",
            spec.family,
            i + 1
        ))
    })
}

/// Runs a family producing one graph, applying any strategy override.
fn single(
    case: String,
    build: impl FnOnce() -> Result<BuiltCase, ConstructionError>,
    ov: Option<Strategy>,
    dir: &Path,
) -> Result<Vec<CaseReport>, ConstructionError> {
    let started = Instant::now();
    let built = apply_override(build()?, ov)?;
    Ok(vec![emit(case, built, dir, started.elapsed())?])
}

/// Expands a transitive action into one case per distinct orbital graph.
/// The selector parameter is `all` (or absent) for every graph, or one
/// suborbit index.
fn action(
    spec: &CaseSpec,
    build: impl FnOnce() -> Result<PermutationGroup, ConstructionError>,
    dir: &Path,
) -> Result<Vec<CaseReport>, ConstructionError> {
    let selector: Option<usize> = match spec.params.first().map(String::as_str) {
        None | Some("all") => None,
        Some(raw) => Some(raw.parse::<usize>().map_err(|_| {
            ConstructionError::UnsupportedParameter(format!(
                "{}: selector must be `all` or a suborbit index, got `{raw}`",
                spec.family
            ))
        })?),
    };
    let group = build()?;
    let subs = group.suborbits(0)?;
    let mut out = Vec::new();
    for (i, s) in subs.iter().enumerate() {
        if s.len() == 1 || (!s.self_paired && s.paired_with < i) {
            continue;
        }
        if selector.is_some_and(|sel| sel != i) {
            continue;
        }
        let started = Instant::now();
        let graph = orbital_graph(&group, 0, &subs, i)?;
        let built = match spec.strategy_override {
            Some(Strategy::Search) => plain_search(graph)?,
            _ => search_with_density_tag(graph)?,
        };
        out.push(emit(
            format!("{} suborbit={i}", spec.family),
            built,
            dir,
            started.elapsed(),
        )?);
    }
    if out.is_empty() {
        return Err(ConstructionError::UnsupportedParameter(format!(
            "{}: selector matches no nontrivial suborbit",
            spec.family
        )));
    }
    Ok(out)
}

/// `search` and `density` overrides re-settle the constructed graph with
/// the generic rung; construction tags are already the first rung tried.
fn apply_override(
    built: BuiltCase,
    ov: Option<Strategy>,
) -> Result<BuiltCase, ConstructionError> {
    match ov {
        Some(Strategy::Search) => plain_search(built.graph),
        Some(Strategy::Density) => search_with_density_tag(built.graph),
        _ => Ok(built),
    }
}

fn plain_search(graph: Graph) -> Result<BuiltCase, ConstructionError> {
    let outcome = match find_hcycle(&graph, DEFAULT_BUDGET, None)? {
        SearchOutcome::Found(cert) => CaseOutcome::Certified(cert),
        SearchOutcome::Exhausted { expansions } => CaseOutcome::NonHamiltonian { expansions },
        SearchOutcome::BudgetExceeded { expansions } => CaseOutcome::Timeout { expansions },
    };
    Ok(BuiltCase {
        graph,
        outcome,
        strategy: Strategy::Search,
    })
}

/// Serializes one settled case, writing the certificate file when there is
/// a cycle.
fn emit(
    case: String,
    built: BuiltCase,
    dir: &Path,
    elapsed: Duration,
) -> Result<CaseReport, ConstructionError> {
    let n = built.graph.n();
    let valency = built.graph.degree(0);
    let (certificate_file, verdict) = match &built.outcome {
        CaseOutcome::Certified(cert) => {
            let path = dir.join(format!("{}.cert", file_stem(&case)));
            std::fs::write(&path, cert.to_file_string())?;
            (Some(path.to_string_lossy().into_owned()), None)
        }
        CaseOutcome::NonHamiltonian { .. } => (None, Some("non-hamiltonian".to_string())),
        CaseOutcome::Timeout { .. } => (None, Some("timeout".to_string())),
    };
    Ok(CaseReport {
        case,
        n,
        valency,
        strategy: built.strategy.tag().to_string(),
        certificate_file,
        verdict,
        elapsed_ms: elapsed.as_millis() as u64,
    })
}

fn file_stem(case: &str) -> String {
    case.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '-' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamsearch::{verify_certificate, HamCertificate};

    fn scratch_dir(name: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "hamorbit-runner-{name}-{}",
            std::process::id()
        ));
        let _ = std::fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn matrix_parsing_accepts_overrides_and_comments() {
        let text = "\n# a comment\njohnson 7\nkneser 5 search\npsl2-dminus 19 2 quotient-lift\n";
        let specs = parse_matrix(text).unwrap();
        assert_eq!(specs.len(), 3);
        assert_eq!(specs[0].family, "johnson");
        assert_eq!(specs[0].params, vec!["7"]);
        assert_eq!(specs[0].strategy_override, None);
        assert_eq!(specs[1].strategy_override, Some(Strategy::Search));
        assert_eq!(specs[2].params, vec!["19", "2"]);
        assert_eq!(specs[2].strategy_override, Some(Strategy::QuotientLift));
        assert!(parse_matrix("mystery 3").is_err());
    }

    #[test]
    fn johnson_line_writes_a_verifiable_certificate() {
        let dir = scratch_dir("johnson");
        let reports = run_matrix("johnson 7", &dir).unwrap();
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert_eq!((r.case.as_str(), r.n, r.valency), ("johnson c=7", 21, 10));
        assert_eq!(r.strategy, "splice");
        assert!(r.verdict.is_none());
        let path = r.certificate_file.as_ref().unwrap();
        let cert = HamCertificate::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
        let graph = subsets::johnson_graph(7).unwrap();
        verify_certificate(&graph, &cert).unwrap();
        let json = r.to_json();
        assert!(json.contains("\"certificate_file\"") && !json.contains("\"verdict\""));
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn petersen_line_reports_the_negative_verdict() {
        let dir = scratch_dir("kneser");
        let reports = run_matrix("kneser 5", &dir).unwrap();
        assert_eq!(reports[0].verdict.as_deref(), Some("non-hamiltonian"));
        assert!(reports[0].certificate_file.is_none());
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn search_override_replaces_the_native_strategy() {
        let dir = scratch_dir("override");
        let reports = run_matrix("johnson 6 search", &dir).unwrap();
        assert_eq!(reports[0].strategy, "search");
        assert!(reports[0].certificate_file.is_some());
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn action_line_expands_to_every_distinct_graph() {
        let dir = scratch_dir("action");
        let reports = run_matrix("m12-cosets all", &dir).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.n == 66));
        let mut valencies: Vec<usize> = reports.iter().map(|r| r.valency).collect();
        valencies.sort_unstable();
        assert_eq!(valencies, vec![20, 45]);
        assert!(reports.iter().all(|r| r.certificate_file.is_some()));
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn quotient_pipeline_strategy_survives_into_the_report() {
        let dir = scratch_dir("dminus");
        let reports = run_matrix("psl2-dminus 19 0", &dir).unwrap();
        assert_eq!(reports[0].n, 190);
        assert_eq!(reports[0].strategy, "quotient-lift");
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn hub_and_heptagon_graph_is_cubic_girth_seven() {
        let g = coxeter_graph();
        assert_eq!(g.n(), 28);
        assert_eq!(g.regular_valency(), Some(3));
        assert!(g.is_connected());
        // Girth via breadth-first shortest cycle through each vertex.
        let girth = (0..28u32)
            .map(|root| {
                let mut dist = vec![usize::MAX; 28];
                let mut parent = vec![u32::MAX; 28];
                let mut queue = std::collections::VecDeque::from([root]);
                dist[root as usize] = 0;
                let mut best = usize::MAX;
                while let Some(u) = queue.pop_front() {
                    for v in g.neighbors(u) {
                        if dist[v as usize] == usize::MAX {
                            dist[v as usize] = dist[u as usize] + 1;
                            parent[v as usize] = u;
                            queue.push_back(v);
                        } else if parent[u as usize] != v && parent[v as usize] != u {
                            best = best.min(dist[u as usize] + dist[v as usize] + 1);
                        }
                    }
                }
                best
            })
            .min()
            .unwrap();
        assert_eq!(girth, 7);
    }

    #[test]
    fn discrepancy_notes_cover_the_known_formula_gaps() {
        assert!(!discrepancy_notes("grassmann-4").is_empty());
        assert!(!discrepancy_notes("omega-minus-8").is_empty());
        assert!(discrepancy_notes("johnson").is_empty());
    }
}
