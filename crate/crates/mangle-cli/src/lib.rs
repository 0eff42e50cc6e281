//! Verb dispatch for the `mangle` binary: parse one JSON input, run the
//! matching pipeline from `mangle-core`, and render a text or JSON
//! report. Exit codes: 0 success, 1 domain errors or failed verdicts,
//! 2 I/O and parse errors.

pub mod json;
mod report;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use mangle_core::betti::{zk_betti_model, zk_betti_oracle};
use mangle_core::complex::{moment_angle_cells, nerve};
use mangle_core::fan::{cox_data, is_delzant, normal_fan, validate_fan, CoxAction, FanData};
use mangle_core::gale::{gale_diagram, gale_dual};
use mangle_core::hodge::{hodge_numbers, HodgeTable};
use mangle_core::lagrangian::{classify_lagrangian, dgamma_action, hminimal_embedding_check};
use mangle_core::matrix::Mat;
use mangle_core::presentation::{
    analyze_presentation, enumerate_vertices, normalize_to_unit_b, Presentation, Status,
};
use mangle_core::psi::{build_psi, chern_matrix, PsiMap};
use mangle_core::quadric::{
    classify_intersection_small, is_nondegenerate, moment_map_report, quadrics_from_presentation,
    MomentMapReport, Nondegeneracy, NondegeneracyWitness, QuadricSystem, Realm,
};
use mangle_core::scalar::GaussianRational;

use json::{
    fan_value, indices_value, parse_input, presentation_value, quadrics_value,
    rational_vec_value, InputFile,
};
use report::{
    gauss_matrix_lines, index_set, point, rational_matrix_lines, rational_row, topology_value,
    torsion, usize_row, vertex_value, yesno,
};

/// Default ceiling on the ground-set size `m`; every verb enumerates
/// subsets or cells, so work grows exponentially past this.
pub const DEFAULT_MAX_M: usize = 14;

#[derive(Debug)]
pub enum CliError {
    Io { path: String, message: String },
    Parse { path: String, message: String },
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
            CliError::Parse { path, message } => write!(f, "{path}: {message}"),
            CliError::Domain(message) => write!(f, "{message}"),
        }
    }
}

impl From<mangle_core::Error> for CliError {
    fn from(e: mangle_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Input JSON file.
    pub input: PathBuf,
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Geometry of a presentation: status, genericity, vertices.
    Analyze(Common),
    /// Gale dual and affine Gale diagram of a presentation.
    Gale(Common),
    /// Quadric system with nondegeneracy, intersection type, moment map.
    Quadrics(Common),
    /// Fan validity, completeness, regularity, and Cox data.
    Fan(Common),
    /// Delzant condition with a failing-vertex witness.
    Delzant(Common),
    /// Betti numbers of the moment-angle manifold.
    Betti {
        #[command(flatten)]
        common: Common,
        /// Also run the full-subcomplex oracle and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Dolbeault model: Psi map, Chern matrix, Hodge numbers.
    Hodge {
        #[command(flatten)]
        common: Common,
        /// File whose "psi" matrix replaces the canonical construction.
        #[arg(long)]
        psi: Option<PathBuf>,
    },
    /// Sign group, H-minimal embedding check, Lagrangian classification.
    Lagrangian(Common),
    /// Every report derivable from one presentation.
    Pipeline(Common),
}

/// Command-line surface of the `mangle` binary.
#[derive(Parser, Debug)]
#[command(name = "mangle", version, about = "Moment-angle manifold toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

/// A rendered report plus the exit verdict.
pub struct Outcome {
    pub stdout: String,
    pub notices: Vec<String>,
    /// The computation succeeded but the verb's verdict is negative
    /// (for example a failed Delzant test); exit 1.
    pub verdict_failed: bool,
}

struct Report {
    /// Lines of the text rendering.
    text: Vec<String>,
    /// JSON body; includes the ingestible echo of the verb's subject.
    value: Value,
    verdict_failed: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (common, report) = match &cli.verb {
        Verb::Analyze(c) => (c, analyze_verb(&c.input)?),
        Verb::Gale(c) => (c, gale_verb(&c.input)?),
        Verb::Quadrics(c) => (c, quadrics_verb(&c.input)?),
        Verb::Fan(c) => (c, fan_verb(&c.input)?),
        Verb::Delzant(c) => (c, delzant_verb(&c.input)?),
        Verb::Betti { common, oracle } => (common, betti_verb(&common.input, *oracle)?),
        Verb::Hodge { common, psi } => (common, hodge_verb(&common.input, psi.as_deref())?),
        Verb::Lagrangian(c) => (c, lagrangian_verb(&c.input)?),
        Verb::Pipeline(c) => (c, pipeline_verb(&c.input)?),
    };
    let stdout = match common.output {
        OutputFormat::Text => {
            let mut s = report.text.join("\n");
            s.push('\n');
            s
        }
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report.value)
                .expect("reports contain no non-serializable values");
            s.push('\n');
            s
        }
    };
    Ok(Outcome {
        stdout,
        notices: Vec::new(),
        verdict_failed: report.verdict_failed,
    })
}

/// Reads the cap on `m` from MANGLE_MAX_M, defaulting to
/// [`DEFAULT_MAX_M`], and rejects larger inputs.
fn enforce_cap(m: usize) -> Result<(), CliError> {
    let cap = match std::env::var("MANGLE_MAX_M") {
        Err(_) => DEFAULT_MAX_M,
        Ok(s) => s.trim().parse().map_err(|_| CliError::Parse {
            path: "MANGLE_MAX_M".into(),
            message: format!("not a nonnegative integer: \"{s}\""),
        })?,
    };
    if m > cap {
        return Err(CliError::Domain(format!(
            "m = {m} exceeds the brute-force cap {cap}; set MANGLE_MAX_M to raise it"
        )));
    }
    Ok(())
}

fn load(path: &Path) -> Result<InputFile, CliError> {
    let file = parse_input(path)?;
    for notice in &file.notices {
        eprintln!("notice: {notice}");
    }
    if let Some(m) = file.m() {
        enforce_cap(m)?;
    }
    Ok(file)
}

fn need_presentation(file: InputFile, verb: &str) -> Result<Presentation, CliError> {
    file.presentation.ok_or_else(|| {
        CliError::Domain(format!("the {verb} verb needs a \"presentation\" input"))
    })
}

/// The fan subject of a verb: given directly, or the normal fan of a
/// given presentation.
fn need_fan(file: &InputFile, verb: &str) -> Result<FanData, CliError> {
    if let Some(fan) = &file.fan {
        Ok(fan.clone())
    } else if let Some(p) = &file.presentation {
        Ok(normal_fan(p)?)
    } else {
        Err(CliError::Domain(format!(
            "the {verb} verb needs a \"fan\" or \"presentation\" input"
        )))
    }
}

fn count(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("{n} {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Empty => "empty",
        Status::Polytope => "polytope",
        Status::Unbounded => "unbounded",
    }
}

fn analyze_verb(input: &Path) -> Result<Report, CliError> {
    let p = need_presentation(load(input)?, "analyze")?;
    let analysis = analyze_presentation(&p);
    let vd = enumerate_vertices(&p);

    let mut text = vec![
        format!("presentation: m = {} inequalities in R^{}", p.m(), p.n()),
        format!("status: {}", status_str(analysis.status)),
        format!("generic: {}", yesno(analysis.generic)),
        format!("simple: {}", yesno(analysis.simple)),
        format!("bounded: {}", yesno(analysis.bounded)),
        format!(
            "redundant: {}",
            if analysis.redundant.is_empty() {
                "none".into()
            } else {
                index_set(&analysis.redundant)
            }
        ),
        format!("vertices ({}):", vd.vertices.len()),
    ];
    for v in &vd.vertices {
        text.push(format!("  {}  active {}", point(&v.point), index_set(&v.active)));
    }

    let value = json!({
        "verb": "analyze",
        "presentation": presentation_value(&p),
        "report": {
            "status": status_str(analysis.status),
            "generic": analysis.generic,
            "simple": analysis.simple,
            "bounded": analysis.bounded,
            "redundant": indices_value(&analysis.redundant),
            "vertices": vd.vertices.iter()
                .map(|v| vertex_value(&v.point, &v.active))
                .collect::<Vec<_>>(),
        },
    });
    Ok(Report {
        text,
        value,
        verdict_failed: false,
    })
}

fn gale_verb(input: &Path) -> Result<Report, CliError> {
    let p = need_presentation(load(input)?, "gale")?;
    let dual = gale_dual(p.a())?;
    let normalized = normalize_to_unit_b(&p)?;
    let diagram = gale_diagram(&normalized)?;

    let mut text = vec![format!("gale dual ({} x {}):", dual.rows(), dual.cols())];
    text.extend(rational_matrix_lines(&dual, "  "));
    text.push(format!(
        "gale diagram ({} x {}):",
        diagram.dim(),
        diagram.m()
    ));
    text.extend(rational_matrix_lines(diagram.matrix(), "  "));

    let value = json!({
        "verb": "gale",
        "presentation": presentation_value(&p),
        "report": {
            "gale_dual_rows": json::rational_mat_rows_value(&dual),
            "gale_diagram_rows": json::rational_mat_rows_value(diagram.matrix()),
        },
    });
    Ok(Report {
        text,
        value,
        verdict_failed: false,
    })
}

fn witness_text(n: &Nondegeneracy) -> String {
    match &n.witness {
        NondegeneracyWitness::InCone(coeffs) => format!(
            "delta = nonnegative combination of all columns, coefficients ({})",
            rational_row(coeffs)
        ),
        NondegeneracyWitness::Separation(y) => format!(
            "functional ({}) separates delta from the column cone",
            rational_row(y)
        ),
        NondegeneracyWitness::SmallSubset(cols) => format!(
            "delta already lies in the cone of columns {}",
            index_set(cols)
        ),
    }
}

fn witness_value(n: &Nondegeneracy) -> Value {
    match &n.witness {
        NondegeneracyWitness::InCone(coeffs) => json!({
            "kind": "in_cone",
            "coefficients": rational_vec_value(coeffs),
        }),
        NondegeneracyWitness::Separation(y) => json!({
            "kind": "separation",
            "functional": rational_vec_value(y),
        }),
        NondegeneracyWitness::SmallSubset(cols) => json!({
            "kind": "small_subset",
            "columns": indices_value(cols),
        }),
    }
}

fn moment_map_text(mm: &MomentMapReport) -> Vec<String> {
    let mut text = vec![format!(
        "moment map: proper {}, regular value {}, action free {}",
        yesno(mm.proper),
        yesno(mm.regular_value),
        yesno(mm.action_free)
    )];
    let nontrivial: Vec<_> = mm
        .stabilizers
        .iter()
        .filter(|s| !s.torsion.is_empty())
        .collect();
    if mm.stabilizers.is_empty() {
        text.push("stabilizers: none (no vertices)".into());
    } else if nontrivial.is_empty() {
        text.push(format!(
            "stabilizers: all trivial ({} vertices)",
            mm.stabilizers.len()
        ));
    } else {
        text.push("stabilizers:".into());
        for s in nontrivial {
            text.push(format!(
                "  vertex {}: {}",
                index_set(&s.support),
                torsion(&s.torsion)
            ));
        }
    }
    if let Some(note) = &mm.note {
        text.push(format!("note: {note}"));
    }
    text
}

fn moment_map_value(mm: &MomentMapReport) -> Value {
    json!({
        "proper": mm.proper,
        "regular_value": mm.regular_value,
        "action_free": mm.action_free,
        "stabilizers": mm.stabilizers.iter().map(|s| json!({
            "support": indices_value(&s.support),
            "torsion": s.torsion.iter().map(json::bigint_value).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "note": mm.note.clone().map(Value::from).unwrap_or(Value::Null),
    })
}

/// The quadric subject of a verb: given directly, or derived from a
/// given presentation in the Hermitian realm.
fn need_quadrics(file: &InputFile, verb: &str) -> Result<QuadricSystem, CliError> {
    if let Some(q) = &file.quadrics {
        Ok(q.clone())
    } else if let Some(p) = &file.presentation {
        Ok(quadrics_from_presentation(p))
    } else {
        Err(CliError::Domain(format!(
            "the {verb} verb needs a \"quadrics\" or \"presentation\" input"
        )))
    }
}

fn quadrics_verb(input: &Path) -> Result<Report, CliError> {
    let q = need_quadrics(&load(input)?, "quadrics")?;
    let nd = is_nondegenerate(&q);
    let classification = match q.realm() {
        Realm::Hermitian => classify_intersection_small(&q).map_err(|e| e.to_string()),
        Realm::Real => Err(
            "real realm: the intersection classification covers the hermitian system; \
             use the lagrangian verb"
                .to_string(),
        ),
    };
    let mm = moment_map_report(&q);

    let realm_name = match q.realm() {
        Realm::Hermitian => "hermitian",
        Realm::Real => "real",
    };
    let mut text = vec![format!(
        "quadric system: {} on {}, {} realm",
        count(q.codim(), "equation"),
        count(q.m(), "coordinate"),
        realm_name
    )];
    text.push("gamma:".into());
    text.extend(rational_matrix_lines(q.gamma(), "  "));
    text.push(format!("delta: {}", rational_row(q.delta())));
    text.push(format!("nondegenerate: {}", yesno(nd.nondegenerate)));
    text.push(format!("witness: {}", witness_text(&nd)));
    match &classification {
        Ok(t) => text.push(format!("classification: {t}")),
        Err(reason) => text.push(format!("classification skipped: {reason}")),
    }
    text.extend(moment_map_text(&mm));

    let value = json!({
        "verb": "quadrics",
        "quadrics": quadrics_value(&q),
        "report": {
            "nondegenerate": nd.nondegenerate,
            "witness": witness_value(&nd),
            "classification": classification.as_ref().map(topology_value).ok(),
            "classification_note": classification.as_ref().err().cloned(),
            "moment_map": moment_map_value(&mm),
        },
    });
    Ok(Report {
        text,
        value,
        verdict_failed: false,
    })
}

fn fan_verb(input: &Path) -> Result<Report, CliError> {
    let fan = need_fan(&load(input)?, "fan")?;
    let fr = validate_fan(&fan);
    let cox = cox_data(&fan).map_err(|e| e.to_string());

    let mut text = vec![
        format!("fan: {} marked vectors in R^{}", fan.m(), fan.n()),
        format!("is fan: {}", yesno(fr.is_fan)),
    ];
    if let Some(face) = &fr.dependent_face {
        text.push(format!("dependent face: {}", index_set(face)));
    }
    if let Some((a, b)) = &fr.overlap_pair {
        text.push(format!(
            "overlapping cones: {} and {}",
            index_set(a),
            index_set(b)
        ));
    }
    text.push(format!("complete: {}", yesno(fr.complete)));
    text.push(format!("rational: {}", yesno(fr.rational)));
    text.push(format!("regular: {}", yesno(fr.regular)));
    if let Some(face) = &fr.irregular_face {
        text.push(format!("irregular face: {}", index_set(face)));
    }
    text.push(format!("lattice rank: {}", fr.lattice.rank()));
    match &cox {
        Ok(c) => {
            text.push("cox data:".into());
            let nonfaces = if c.minimal_nonfaces.is_empty() {
                "none".into()
            } else {
                c.minimal_nonfaces
                    .iter()
                    .map(|f| index_set(f))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            text.push(format!("  minimal nonfaces: {nonfaces}"));
            text.push(format!(
                "  group: rank {}, torsion {}",
                c.g_rank,
                torsion(&c.g_torsion)
            ));
            text.push(format!(
                "  action: {}",
                match c.action {
                    CoxAction::Free => "free",
                    CoxAction::AlmostFree => "almost free",
                    CoxAction::Neither => "neither",
                }
            ));
        }
        Err(reason) => text.push(format!("cox data unavailable: {reason}")),
    }

    let value = json!({
        "verb": "fan",
        "fan": fan_value(&fan),
        "report": {
            "is_fan": fr.is_fan,
            "dependent_face": fr.dependent_face.as_deref().map(indices_value),
            "overlap_pair": fr.overlap_pair.as_ref().map(|(a, b)| json!([
                indices_value(a), indices_value(b),
            ])),
            "complete": fr.complete,
            "rational": fr.rational,
            "regular": fr.regular,
            "irregular_face": fr.irregular_face.as_deref().map(indices_value),
            "lattice_rank": fr.lattice.rank(),
            "primitivization": rational_vec_value(&fr.primitivization),
            "cox": cox.as_ref().ok().map(|c| json!({
                "minimal_nonfaces": c.minimal_nonfaces.iter()
                    .map(|f| indices_value(f)).collect::<Vec<_>>(),
                "g_rank": c.g_rank,
                "g_torsion": c.g_torsion.iter().map(json::bigint_value).collect::<Vec<_>>(),
                "action": match c.action {
                    CoxAction::Free => "free",
                    CoxAction::AlmostFree => "almost_free",
                    CoxAction::Neither => "neither",
                },
            })),
            "cox_error": cox.as_ref().err().cloned(),
        },
    });
    Ok(Report {
        text,
        value,
        verdict_failed: false,
    })
}

fn delzant_verb(input: &Path) -> Result<Report, CliError> {
    let p = need_presentation(load(input)?, "delzant")?;
    let dr = is_delzant(&p)?;

    let mut text = vec![
        format!("delzant: {}", yesno(dr.delzant)),
        format!("normal lattice rank: {}", dr.lattice.rank()),
    ];
    if let Some(v) = &dr.failing_vertex {
        text.push(format!(
            "failing vertex: {}, active {}",
            point(&v.point),
            index_set(&v.active)
        ));
        text.push("the active normals there are not a lattice basis".into());
    }

    let value = json!({
        "verb": "delzant",
        "presentation": presentation_value(&p),
        "report": {
            "delzant": dr.delzant,
            "lattice_rank": dr.lattice.rank(),
            "failing_vertex": dr.failing_vertex.as_ref()
                .map(|v| vertex_value(&v.point, &v.active)),
        },
    });
    Ok(Report {
        text,
        value,
        verdict_failed: !dr.delzant,
    })
}

fn betti_verb(input: &Path, with_oracle: bool) -> Result<Report, CliError> {
    let fan = need_fan(&load(input)?, "betti")?;
    let betti = zk_betti_model(&fan)?;
    let oracle = if with_oracle {
        Some(zk_betti_oracle(&fan.complex)?)
    } else {
        None
    };
    let matches = oracle.as_ref().map(|o| *o == betti);

    let mut text = vec![usize_row(&betti)];
    if let Some(o) = &oracle {
        text.push(format!("oracle: {}", usize_row(o)));
        text.push(format!("match: {}", yesno(matches == Some(true))));
    }

    let value = json!({
        "verb": "betti",
        "fan": fan_value(&fan),
        "report": {
            "betti": betti,
            "oracle": oracle,
            "match": matches,
        },
    });
    Ok(Report {
        text,
        value,
        verdict_failed: matches == Some(false),
    })
}

fn hodge_table_lines(table: &HodgeTable) -> Vec<String> {
    let mut text = vec![format!(
        "hodge numbers (ell = {}, ghosts = {}):",
        table.ell(),
        table.ghost_count()
    )];
    for (&(p, q), &h) in table.entries() {
        if h != 0 {
            text.push(format!("  h^{{{p},{q}}} = {h}"));
        }
    }
    let euler: i64 = table
        .degree_sums()
        .iter()
        .enumerate()
        .map(|(d, &s)| if d % 2 == 0 { s as i64 } else { -(s as i64) })
        .sum();
    text.push(format!("euler characteristic: {euler}"));
    text
}

fn hodge_table_value(table: &HodgeTable) -> Value {
    json!({
        "ell": table.ell(),
        "ghosts": table.ghost_count(),
        "hodge": table.entries().iter()
            .filter(|(_, &h)| h != 0)
            .map(|(&(p, q), &h)| json!({"p": p, "q": q, "h": h}))
            .collect::<Vec<_>>(),
        "degree_sums": table.degree_sums(),
    })
}

fn hodge_verb(input: &Path, psi_path: Option<&Path>) -> Result<Report, CliError> {
    let file = load(input)?;
    let fan = need_fan(&file, "hodge")?;
    let supplied: Option<Mat<GaussianRational>> = match psi_path {
        Some(p) => {
            let psi_file = parse_input(p)?;
            Some(psi_file.psi.ok_or_else(|| CliError::Domain(format!(
                "{}: no \"psi\" matrix found",
                p.display()
            )))?)
        }
        None => file.psi.clone(),
    };
    let psi = match supplied {
        Some(mat) => PsiMap::verified(&fan, mat)?,
        None => build_psi(&fan)?,
    };
    let chern = chern_matrix(&psi, &fan)?;
    let table = hodge_numbers(&fan, &psi)?;

    let mut text = vec![format!(
        "psi ({} x {}):",
        psi.matrix().rows(),
        psi.matrix().cols()
    )];
    text.extend(gauss_matrix_lines(psi.matrix(), "  "));
    text.push(format!("chern matrix ({} x {}):", chern.rows(), chern.cols()));
    text.extend(gauss_matrix_lines(&chern, "  "));
    text.extend(hodge_table_lines(&table));

    let value = json!({
        "verb": "hodge",
        "fan": fan_value(&fan),
        "psi": json::gauss_mat_rows_value(psi.matrix()),
        "report": {
            "chern_rows": json::gauss_mat_rows_value(&chern),
            "table": hodge_table_value(&table),
        },
    });
    Ok(Report {
        text,
        value,
        verdict_failed: false,
    })
}

fn lagrangian_subject(file: &InputFile) -> Result<QuadricSystem, CliError> {
    if let Some(q) = &file.quadrics {
        if q.realm() != Realm::Real {
            return Err(CliError::Domain(
                "the lagrangian verb needs \"realm\": \"real\" quadrics \
                 (or a presentation, whose system is reinterpreted over R)"
                    .into(),
            ));
        }
        Ok(q.clone())
    } else if let Some(p) = &file.presentation {
        Ok(quadrics_from_presentation(p).with_realm(Realm::Real))
    } else {
        Err(CliError::Domain(
            "the lagrangian verb needs a \"quadrics\" or \"presentation\" input".into(),
        ))
    }
}

fn lagrangian_report(q: &QuadricSystem) -> Result<(Vec<String>, Value), CliError> {
    let action = dgamma_action(q)?;
    let check = hminimal_embedding_check(q)?;
    let class = classify_lagrangian(q)?;

    let rank = action.generators.len();
    let mut text = vec![format!("sign group: (Z/2)^{rank}, order {}", 1u64 << rank)];
    text.push("generators:".into());
    for g in &action.generators {
        let signs: Vec<&str> = g
            .signs
            .iter()
            .map(|&s| if s < 0 { "-" } else { "+" })
            .collect();
        text.push(format!(
            "  phi {}: signs {}",
            point(&g.phi),
            signs.join(" ")
        ));
    }
    match &check.failing_support {
        None => text.push("embedding: yes".into()),
        Some(support) => text.push(format!(
            "embedding: no (proper sublattice at support {})",
            index_set(support)
        )),
    }
    text.push(format!("classification: {class}"));
    if let Some(note) = class.orientation_note() {
        text.push(format!("orientation: {note}"));
    }

    let value = json!({
        "sign_group": {
            "rank": rank,
            "order": 1u64 << rank,
            "generators": action.generators.iter().map(|g| json!({
                "phi": rational_vec_value(&g.phi),
                "signs": g.signs.iter().map(|&s| s as i64).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        },
        "embeds": check.embeds,
        "failing_support": check.failing_support.as_deref().map(indices_value),
        "classification": topology_value(&class),
    });
    Ok((text, value))
}

fn lagrangian_verb(input: &Path) -> Result<Report, CliError> {
    let q = lagrangian_subject(&load(input)?)?;
    let (text, report_value) = lagrangian_report(&q)?;
    let value = json!({
        "verb": "lagrangian",
        "quadrics": quadrics_value(&q),
        "report": report_value,
    });
    Ok(Report {
        text,
        value,
        verdict_failed: false,
    })
}

/// Runs one pipeline section, recording a domain failure as a note
/// instead of aborting the survey.
fn section<T>(
    result: Result<T, CliError>,
    text: &mut Vec<String>,
    out: &mut Map<String, Value>,
    key: &str,
    render: impl FnOnce(&T, &mut Vec<String>) -> Value,
) {
    match result {
        Ok(v) => {
            let value = render(&v, text);
            out.insert(key.into(), value);
        }
        Err(e) => {
            text.push(format!("skipped: {e}"));
            out.insert(key.into(), Value::Null);
            out.insert(format!("{key}_error"), Value::from(e.to_string()));
        }
    }
}

fn pipeline_verb(input: &Path) -> Result<Report, CliError> {
    let p = need_presentation(load(input)?, "pipeline")?;
    let mut text: Vec<String> = Vec::new();
    let mut out = Map::new();

    text.push("== analysis ==".into());
    let analysis = analyze_presentation(&p);
    let vd = enumerate_vertices(&p);
    text.push(format!(
        "m = {}, n = {}, status {}, generic {}, simple {}, redundant {}",
        p.m(),
        p.n(),
        status_str(analysis.status),
        yesno(analysis.generic),
        yesno(analysis.simple),
        if analysis.redundant.is_empty() {
            "none".into()
        } else {
            index_set(&analysis.redundant)
        }
    ));
    for v in &vd.vertices {
        text.push(format!("  {}  active {}", point(&v.point), index_set(&v.active)));
    }
    out.insert(
        "analysis".into(),
        json!({
            "status": status_str(analysis.status),
            "generic": analysis.generic,
            "simple": analysis.simple,
            "bounded": analysis.bounded,
            "redundant": indices_value(&analysis.redundant),
            "vertices": vd.vertices.iter()
                .map(|v| vertex_value(&v.point, &v.active))
                .collect::<Vec<_>>(),
        }),
    );

    text.push("== moment-angle complex ==".into());
    section(
        nerve(&p).map_err(CliError::from),
        &mut text,
        &mut out,
        "moment_angle",
        |k, text| {
            let mac = moment_angle_cells(k);
            text.push(format!(
                "dimension {}, {} cells, manifold {}",
                mac.total_dim,
                mac.cells.len(),
                yesno(mac.manifold)
            ));
            json!({
                "total_dim": mac.total_dim,
                "cell_count": mac.cells.len(),
                "manifold": mac.manifold,
            })
        },
    );

    text.push("== gale duality ==".into());
    let gale = gale_dual(p.a()).map_err(CliError::from).and_then(|dual| {
        let normalized = normalize_to_unit_b(&p)?;
        let diagram = gale_diagram(&normalized)?;
        Ok((dual, diagram))
    });
    section(gale, &mut text, &mut out, "gale", |(dual, diagram), text| {
        text.push(format!("gale dual ({} x {}):", dual.rows(), dual.cols()));
        text.extend(rational_matrix_lines(dual, "  "));
        text.push(format!(
            "gale diagram ({} x {}):",
            diagram.dim(),
            diagram.m()
        ));
        text.extend(rational_matrix_lines(diagram.matrix(), "  "));
        json!({
            "gale_dual_rows": json::rational_mat_rows_value(dual),
            "gale_diagram_rows": json::rational_mat_rows_value(diagram.matrix()),
        })
    });

    text.push("== quadric system ==".into());
    let q = quadrics_from_presentation(&p);
    let nd = is_nondegenerate(&q);
    let classification = classify_intersection_small(&q).map_err(|e| e.to_string());
    let mm = moment_map_report(&q);
    text.push(format!(
        "{} on {}, nondegenerate {}",
        count(q.codim(), "equation"),
        count(q.m(), "coordinate"),
        yesno(nd.nondegenerate)
    ));
    match &classification {
        Ok(t) => text.push(format!("classification: {t}")),
        Err(reason) => text.push(format!("classification skipped: {reason}")),
    }
    text.extend(moment_map_text(&mm));
    out.insert(
        "quadrics".into(),
        json!({
            "system": quadrics_value(&q),
            "nondegenerate": nd.nondegenerate,
            "witness": witness_value(&nd),
            "classification": classification.as_ref().map(topology_value).ok(),
            "classification_note": classification.as_ref().err().cloned(),
            "moment_map": moment_map_value(&mm),
        }),
    );

    text.push("== normal fan ==".into());
    section(
        normal_fan(&p).map_err(CliError::from),
        &mut text,
        &mut out,
        "fan",
        |fan, text| {
            let fr = validate_fan(fan);
            let cox = cox_data(fan).map_err(|e| e.to_string());
            text.push(format!(
                "is fan {}, complete {}, regular {}",
                yesno(fr.is_fan),
                yesno(fr.complete),
                yesno(fr.regular)
            ));
            if let Ok(c) = &cox {
                text.push(format!(
                    "cox group: rank {}, torsion {}, action {}",
                    c.g_rank,
                    torsion(&c.g_torsion),
                    match c.action {
                        CoxAction::Free => "free",
                        CoxAction::AlmostFree => "almost free",
                        CoxAction::Neither => "neither",
                    }
                ));
            }
            json!({
                "data": fan_value(fan),
                "is_fan": fr.is_fan,
                "complete": fr.complete,
                "rational": fr.rational,
                "regular": fr.regular,
                "cox": cox.as_ref().ok().map(|c| json!({
                    "g_rank": c.g_rank,
                    "g_torsion": c.g_torsion.iter()
                        .map(json::bigint_value).collect::<Vec<_>>(),
                    "action": match c.action {
                        CoxAction::Free => "free",
                        CoxAction::AlmostFree => "almost_free",
                        CoxAction::Neither => "neither",
                    },
                })),
                "cox_error": cox.as_ref().err().cloned(),
            })
        },
    );

    text.push("== delzant ==".into());
    section(
        is_delzant(&p).map_err(CliError::from),
        &mut text,
        &mut out,
        "delzant",
        |dr, text| {
            text.push(format!("delzant: {}", yesno(dr.delzant)));
            if let Some(v) = &dr.failing_vertex {
                text.push(format!(
                    "failing vertex: {}, active {}",
                    point(&v.point),
                    index_set(&v.active)
                ));
            }
            json!({
                "delzant": dr.delzant,
                "failing_vertex": dr.failing_vertex.as_ref()
                    .map(|v| vertex_value(&v.point, &v.active)),
            })
        },
    );

    text.push("== betti numbers ==".into());
    section(
        normal_fan(&p)
            .and_then(|fan| zk_betti_model(&fan))
            .map_err(CliError::from),
        &mut text,
        &mut out,
        "betti",
        |betti, text| {
            text.push(usize_row(betti));
            json!(betti)
        },
    );

    text.push("== hodge numbers ==".into());
    let hodge = normal_fan(&p).map_err(CliError::from).and_then(|fan| {
        let psi = build_psi(&fan)?;
        let chern = chern_matrix(&psi, &fan)?;
        let table = hodge_numbers(&fan, &psi)?;
        Ok((psi, chern, table))
    });
    section(
        hodge,
        &mut text,
        &mut out,
        "hodge",
        |(psi, chern, table), text| {
            text.extend(hodge_table_lines(table));
            json!({
                "psi": json::gauss_mat_rows_value(psi.matrix()),
                "chern_rows": json::gauss_mat_rows_value(chern),
                "table": hodge_table_value(table),
            })
        },
    );

    text.push("== lagrangian ==".into());
    let real = q.with_realm(Realm::Real);
    section(
        lagrangian_report(&real),
        &mut text,
        &mut out,
        "lagrangian",
        |(lines, value), text| {
            text.extend(lines.clone());
            value.clone()
        },
    );

    let value = json!({
        "verb": "pipeline",
        "presentation": presentation_value(&p),
        "report": Value::Object(out),
    });
    Ok(Report {
        text,
        value,
        verdict_failed: false,
    })
}
