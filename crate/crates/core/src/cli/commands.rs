use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::abelian::Subgroup;
use crate::action::{
    default_kmax, fixed_locus, git_charts, inertia_stratum_of, is_special, localized_invariants, stabilizer, strata,
    x_plus_minus, Chart, Sign,
};
use crate::error::{Error, Result};
use crate::gradedalg::{
    cartier_at_fixed_point, coinvariants, invariant_subring, minimal_homogeneous_generators, CartierVerdict,
    GradedRing, PresentedSubring,
};
use crate::lattice::set_step_cap;
use crate::luna::{
    default_probes, fiberwise_inert_over, is_strongly_equivariant, luna_verdict, pointwise_inert_at, quotient_morphism,
    smoothness_at, CotangentData, CotangentFiberReport, LunaVerdict,
};
use crate::poly::{MonomialOrder, Polynomial};

use super::output::{record_json, render_text, Fields, Node};
use super::session::{parse_session, NamedMap, NamedPoint, NamedRing, Session};

#[derive(Parser, Debug)]
#[command(
    name = "lunaquot",
    version,
    about = "Quotients, fixed points, stabilizers, strata and strong equivariance for diagonalizable group actions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON with the sections command, inputs, result, certificates, timings
    #[arg(long, global = true)]
    pub json: bool,
    /// Cap on Hilbert basis frontier expansions
    #[arg(long, global = true, value_name = "N")]
    pub step_cap: Option<u64>,
    /// Worker threads for charts and probes
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Record wall-clock time in the JSON output
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RingInput {
    /// Session file
    pub file: PathBuf,
    /// Ring to use (default: the first declared)
    #[arg(long)]
    pub ring: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct PointInput {
    #[command(flatten)]
    pub input: RingInput,
    /// Declared point(s) to use (default: every point declared in the ring)
    #[arg(long = "point")]
    pub points: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct MapInput {
    /// Session file
    pub file: PathBuf,
    /// Map to use (default: the first declared)
    #[arg(long)]
    pub map: Option<String>,
    /// Declared point(s) to use
    #[arg(long = "point")]
    pub points: Vec<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Strong,
    FiberwiseInert,
    PointwiseInert,
    Luna,
    Smooth,
    Etale,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Invariant ring A_0 with generators and relations
    Invariants(RingInput),
    /// The quotient X//G as a trivially graded ring
    Quotient(RingInput),
    /// Coinvariants A_G, the ring of the fixed locus X^G
    Coinvariants(RingInput),
    /// Fixed locus of the subgroup D(L/L')
    Fixed {
        #[command(flatten)]
        input: RingInput,
        /// Generators of L' as tuples, e.g. "(2),(3)"; empty for L' = 0
        #[arg(long, default_value = "")]
        subgroup: String,
    },
    /// Stabilizer of a point
    Stabilizer(PointInput),
    /// Whether the orbit of a point is closed in its quotient fiber
    Special(PointInput),
    /// Inertia strata, and the stratum of each given point
    Strata(PointInput),
    /// Charts covering X_+ (Z-gradings)
    Xplus(RingInput),
    /// Charts covering X_- (Z-gradings)
    Xminus(RingInput),
    /// Invariants of the localization at a homogeneous element
    Localize {
        #[command(flatten)]
        input: RingInput,
        /// Homogeneous element to invert
        #[arg(long)]
        element: String,
    },
    /// Charts X_f for monomials f of degree k*character, k <= kmax
    GitCharts {
        #[command(flatten)]
        input: RingInput,
        /// Character as a degree tuple, e.g. "(1)"
        #[arg(long)]
        character: String,
        /// Largest multiple of the character to use (default: from the degrees)
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Whether a homogeneous ideal is principal at fixed points
    Cartier {
        #[command(flatten)]
        input: PointInput,
        /// Comma separated generators
        #[arg(long)]
        gens: String,
    },
    /// A minimal subset of homogeneous generators at fixed points
    Mingens {
        #[command(flatten)]
        input: PointInput,
        /// Comma separated generators
        #[arg(long)]
        gens: String,
    },
    /// The induced map of invariant rings
    QuotientMap(MapInput),
    /// Graded dimensions of the cotangent fiber H_0, H_1 at points of the target
    Cotangent(MapInput),
    /// Decide a property of a map
    Check {
        kind: CheckKind,
        #[command(flatten)]
        input: MapInput,
    },
    /// Run every applicable check on a session file or on each .lq file of a directory
    Report { path: PathBuf },
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Invariants(_) => "invariants".into(),
            Command::Quotient(_) => "quotient".into(),
            Command::Coinvariants(_) => "coinvariants".into(),
            Command::Fixed { .. } => "fixed".into(),
            Command::Stabilizer(_) => "stabilizer".into(),
            Command::Special(_) => "special".into(),
            Command::Strata(_) => "strata".into(),
            Command::Xplus(_) => "xplus".into(),
            Command::Xminus(_) => "xminus".into(),
            Command::Localize { .. } => "localize".into(),
            Command::GitCharts { .. } => "git-charts".into(),
            Command::Cartier { .. } => "cartier".into(),
            Command::Mingens { .. } => "mingens".into(),
            Command::QuotientMap(_) => "quotient-map".into(),
            Command::Cotangent(_) => "cotangent".into(),
            Command::Check { kind, .. } => format!("check {}", kind.to_possible_value().expect("named").get_name()),
            Command::Report { .. } => "report".into(),
        }
    }

    fn file(&self) -> &Path {
        match self {
            Command::Invariants(i)
            | Command::Quotient(i)
            | Command::Coinvariants(i)
            | Command::Xplus(i)
            | Command::Xminus(i)
            | Command::Fixed { input: i, .. }
            | Command::Localize { input: i, .. }
            | Command::GitCharts { input: i, .. } => &i.file,
            Command::Stabilizer(p) | Command::Special(p) | Command::Strata(p) => &p.input.file,
            Command::Cartier { input, .. } | Command::Mingens { input, .. } => &input.input.file,
            Command::QuotientMap(m) | Command::Cotangent(m) | Command::Check { input: m, .. } => &m.file,
            Command::Report { path } => path,
        }
    }
}

/// A command's result: display-ordered result fields and supporting
/// certificates.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub result: Fields,
    pub certificates: Fields,
}

fn field(k: &str, v: Node) -> (String, Node) {
    (k.to_string(), v)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.step_cap {
        set_step_cap(n);
    }
    if let Some(t) = cli.threads {
        // fails only if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command line and returns the rendered output.
pub fn run(cli: &Cli) -> Result<String> {
    let start = Instant::now();
    if let Command::Report { path } = &cli.command {
        return report(path, cli.json, cli.timings.then_some(start));
    }
    let session = parse_session(&read(cli.command.file())?)?;
    let outcome = dispatch(&session, &cli.command)?;
    Ok(render(
        &cli.command.name(),
        &session,
        &outcome,
        cli.json,
        cli.timings.then(|| start.elapsed().as_secs_f64() * 1000.0),
    ))
}

fn timings_json(ms: Option<f64>) -> Value {
    match ms {
        Some(ms) => json!({ "total_ms": ms }),
        None => json!({}),
    }
}

fn render(command: &str, session: &Session, outcome: &Outcome, as_json: bool, ms: Option<f64>) -> String {
    if as_json {
        let v = json!({
            "command": command,
            "inputs": session.canonical_text(),
            "result": record_json(&outcome.result),
            "certificates": record_json(&outcome.certificates),
            "timings": timings_json(ms),
        });
        return serde_json::to_string_pretty(&v).expect("serializable") + "\n";
    }
    let mut fields = vec![field("command", Node::text(command))];
    fields.extend(outcome.result.iter().cloned());
    if !outcome.certificates.is_empty() {
        fields.push(field("certificates", Node::Record(outcome.certificates.clone())));
    }
    let mut out = String::new();
    render_text(&fields, 0, &mut out);
    out
}

pub fn dispatch(session: &Session, command: &Command) -> Result<Outcome> {
    match command {
        Command::Invariants(i) => invariants(select_ring(session, &i.ring)?),
        Command::Quotient(i) => quotient(select_ring(session, &i.ring)?),
        Command::Coinvariants(i) => coinvariants_cmd(select_ring(session, &i.ring)?),
        Command::Fixed { input, subgroup } => {
            let r = select_ring(session, &input.ring)?;
            let sub = Subgroup::from_generators(&session.group, session.parse_elements(subgroup)?)?;
            let f = fixed_locus(&r.ring, &sub)?;
            Ok(Outcome {
                result: vec![
                    field("ring", Node::text(&r.name)),
                    field("subgroup", Node::text(sub.to_string())),
                    field("variables", Node::texts(var_list(&f))),
                    field("relations", Node::texts(relations_of(&f))),
                ],
                certificates: vec![],
            })
        }
        Command::Stabilizer(p) => per_point(session, p, |r, np| {
            let s = stabilizer(&r.ring, &np.point)?;
            let description = if s.support.is_zero() {
                "G (full group)".to_string()
            } else if s.is_trivial() {
                "trivial".to_string()
            } else {
                format!("D(L/L_x) with L/L_x = {}", s.characters.target())
            };
            Ok(vec![
                field("point", Node::text(point_text(np, &r.ring))),
                field("stabilizer", Node::text(description)),
                field("support_subgroup", Node::text(s.support.to_string())),
                field("characters", Node::text(s.characters.target().to_string())),
            ])
        }),
        Command::Special(p) => per_point(session, p, |r, np| {
            let degs: Vec<String> = np
                .point
                .support()
                .iter()
                .map(|&i| r.ring.degrees()[i].to_string())
                .collect();
            Ok(vec![
                field("point", Node::text(point_text(np, &r.ring))),
                field("special", Node::Bool(is_special(&r.ring, &np.point)?)),
                field("support_degrees", Node::texts(degs)),
            ])
        }),
        Command::Strata(p) => strata_cmd(session, p),
        Command::Xplus(i) => signed(select_ring(session, &i.ring)?, Sign::Plus),
        Command::Xminus(i) => signed(select_ring(session, &i.ring)?, Sign::Minus),
        Command::Localize { input, element } => {
            let r = select_ring(session, &input.ring)?;
            let f = r.ring.parse(element)?;
            let chart = localized_invariants(&r.ring, &f)?;
            let mut result = vec![field("ring", Node::text(&r.name))];
            result.extend(chart_fields(&r.ring, &chart));
            Ok(Outcome {
                result,
                certificates: vec![],
            })
        }
        Command::GitCharts { input, character, kmax } => {
            let r = select_ring(session, &input.ring)?;
            let m = session.parse_element(character)?;
            let kmax = kmax.unwrap_or_else(|| default_kmax(&r.ring));
            let charts = git_charts(&r.ring, &m, kmax)?;
            Ok(Outcome {
                result: vec![
                    field("ring", Node::text(&r.name)),
                    field("character", Node::text(m.to_string())),
                    field("kmax", Node::Int(kmax.into())),
                    field(
                        "scope",
                        Node::text("monomial charts of degree k*character for k <= kmax only"),
                    ),
                    field(
                        "charts",
                        Node::List(charts.iter().map(|c| Node::Record(chart_fields(&r.ring, c))).collect()),
                    ),
                ],
                certificates: vec![],
            })
        }
        Command::Cartier { input, gens } => {
            let r = select_ring(session, &input.input.ring)?;
            let gens = parse_list(&r.ring, gens)?;
            per_point(session, input, |r, np| {
                let verdict = cartier_at_fixed_point(&r.ring, &gens, &np.point)?;
                let mut f = vec![field("point", Node::text(point_text(np, &r.ring)))];
                match verdict {
                    CartierVerdict::Principal(g) => {
                        f.push(field("principal", Node::Bool(true)));
                        f.push(field("generator", Node::text(r.ring.show(&g))));
                    }
                    CartierVerdict::NotPrincipal { rank } => {
                        f.push(field("principal", Node::Bool(false)));
                        f.push(field("minimal_generators", Node::count(rank)));
                    }
                }
                Ok(f)
            })
        }
        Command::Mingens { input, gens } => {
            let r = select_ring(session, &input.input.ring)?;
            let gens = parse_list(&r.ring, gens)?;
            per_point(session, input, |r, np| {
                let keep = minimal_homogeneous_generators(&r.ring, &gens, &np.point)?;
                Ok(vec![
                    field("point", Node::text(point_text(np, &r.ring))),
                    field("count", Node::count(keep.len())),
                    field("generators", Node::texts(keep.iter().map(|&i| r.ring.show(&gens[i])))),
                ])
            })
        }
        Command::QuotientMap(m) => quotient_map_cmd(select_map(session, &m.map)?),
        Command::Cotangent(m) => {
            let nm = select_map(session, &m.map)?;
            let data = CotangentData::new(&nm.map)?;
            let points = select_points(session, &m.points, &nm.target)?;
            let mut list = Vec::new();
            for np in points {
                list.push(Node::Record(cotangent_fields(
                    np,
                    &nm.map.target().clone(),
                    &data.at(&np.point)?,
                )));
            }
            Ok(Outcome {
                result: vec![field("map", Node::text(&nm.name)), field("points", Node::List(list))],
                certificates: vec![],
            })
        }
        Command::Check { kind, input } => check(session, *kind, input),
        Command::Report { .. } => unreachable!("handled by run"),
    }
}

fn select_ring<'a>(session: &'a Session, name: &Option<String>) -> Result<&'a NamedRing> {
    match name {
        Some(n) => session.ring(n),
        None => session
            .rings
            .first()
            .ok_or_else(|| Error::Invalid("the session declares no ring".into())),
    }
}

fn select_map<'a>(session: &'a Session, name: &Option<String>) -> Result<&'a NamedMap> {
    match name {
        Some(n) => session.map(n),
        None => session
            .maps
            .first()
            .ok_or_else(|| Error::Invalid("the session declares no map".into())),
    }
}

fn select_points<'a>(session: &'a Session, names: &[String], ring: &str) -> Result<Vec<&'a NamedPoint>> {
    if names.is_empty() {
        let all: Vec<&NamedPoint> = session.points.iter().filter(|p| p.ring == ring).collect();
        if all.is_empty() {
            return Err(Error::Invalid(format!(
                "no point declared in ring {ring}; declare one or pass --point"
            )));
        }
        return Ok(all);
    }
    names
        .iter()
        .map(|n| {
            let p = session.point(n)?;
            if p.ring != ring {
                return Err(Error::AmbientMismatch(format!(
                    "point {n} lies in {}, not in {ring}",
                    p.ring
                )));
            }
            Ok(p)
        })
        .collect()
}

fn per_point(
    session: &Session,
    p: &PointInput,
    f: impl Fn(&NamedRing, &NamedPoint) -> Result<Fields>,
) -> Result<Outcome> {
    let r = select_ring(session, &p.input.ring)?;
    let points = select_points(session, &p.points, &r.name)?;
    let list = points
        .iter()
        .map(|np| Ok(Node::Record(f(r, np)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome {
        result: vec![field("ring", Node::text(&r.name)), field("points", Node::List(list))],
        certificates: vec![],
    })
}

fn point_text(np: &NamedPoint, ring: &GradedRing) -> String {
    format!("{} {}", np.name, np.point.show(ring))
}

fn parse_list(ring: &GradedRing, text: &str) -> Result<Vec<Polynomial>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| ring.parse(s))
        .collect()
}

fn var_list(r: &GradedRing) -> Vec<String> {
    r.names()
        .iter()
        .zip(r.degrees())
        .map(|(n, d)| format!("{n}: {d}"))
        .collect()
}

fn relations_of(r: &GradedRing) -> Vec<String> {
    r.relations()
        .groebner_basis(MonomialOrder::Grevlex)
        .iter()
        .map(|p| r.show(p))
        .collect()
}

fn generator_list(sub: &PresentedSubring, ambient: &GradedRing) -> Vec<String> {
    sub.names
        .iter()
        .zip(&sub.generators)
        .map(|(n, g)| format!("{n} = {}", ambient.show(g)))
        .collect()
}

fn subring_relations(sub: &PresentedSubring) -> Vec<String> {
    sub.relation_basis().iter().map(|p| sub.show(p)).collect()
}

fn invariants(r: &NamedRing) -> Result<Outcome> {
    let inv = invariant_subring(&r.ring)?;
    Ok(Outcome {
        result: vec![
            field("ring", Node::text(&r.name)),
            field("generators", Node::texts(generator_list(&inv, &r.ring))),
            field("relations", Node::texts(subring_relations(&inv))),
        ],
        certificates: vec![field("relations_vanish", Node::Bool(inv.verify(&r.ring)?))],
    })
}

fn quotient(r: &NamedRing) -> Result<Outcome> {
    let inv = invariant_subring(&r.ring)?;
    let q = inv.to_ring(r.ring.field(), r.ring.group())?;
    Ok(Outcome {
        result: vec![
            field("ring", Node::text(&r.name)),
            field(
                "quotient",
                Node::text(format!("ring {}_0 {{ {}}}", r.name, q).replace("  ", " ")),
            ),
            field("generators", Node::texts(generator_list(&inv, &r.ring))),
        ],
        certificates: vec![field("relations_vanish", Node::Bool(inv.verify(&r.ring)?))],
    })
}

fn coinvariants_cmd(r: &NamedRing) -> Result<Outcome> {
    let c = coinvariants(&r.ring)?;
    Ok(Outcome {
        result: vec![
            field("ring", Node::text(&r.name)),
            field("variables", Node::texts(var_list(&c))),
            field("relations", Node::texts(relations_of(&c))),
            field("fixed_locus_empty", Node::Bool(c.relations().is_unit())),
        ],
        certificates: vec![],
    })
}

fn strata_cmd(session: &Session, p: &PointInput) -> Result<Outcome> {
    let r = select_ring(session, &p.input.ring)?;
    let list: Vec<Node> = strata(&r.ring)?
        .iter()
        .map(|s| {
            Node::Record(vec![
                field("label", Node::text(s.label.to_string())),
                field(
                    "witness_support",
                    Node::texts(s.support.iter().map(|&i| r.ring.names()[i].clone())),
                ),
            ])
        })
        .collect();
    let mut result = vec![field("ring", Node::text(&r.name)), field("strata", Node::List(list))];
    if !p.points.is_empty() {
        let points = select_points(session, &p.points, &r.name)?
            .iter()
            .map(|np| {
                Ok(Node::Record(vec![
                    field("point", Node::text(point_text(np, &r.ring))),
                    field(
                        "stratum",
                        Node::text(inertia_stratum_of(&r.ring, &np.point)?.to_string()),
                    ),
                ]))
            })
            .collect::<Result<Vec<_>>>()?;
        result.push(field("points", Node::List(points)));
    }
    Ok(Outcome {
        result,
        certificates: vec![],
    })
}

fn chart_fields(ambient: &GradedRing, c: &Chart) -> Fields {
    vec![
        field("element", Node::text(ambient.show(&c.element))),
        field("invariants", Node::texts(generator_list(&c.invariants, &c.ring))),
        field("relations", Node::texts(subring_relations(&c.invariants))),
    ]
}

fn signed(r: &NamedRing, sign: Sign) -> Result<Outcome> {
    let locus = x_plus_minus(&r.ring, sign)?;
    Ok(Outcome {
        result: vec![
            field("ring", Node::text(&r.name)),
            field(
                "cut_ideal",
                Node::texts(locus.cut_generators.iter().map(|g| r.ring.show(g))),
            ),
            field("empty", Node::Bool(locus.charts.is_empty())),
            field(
                "charts",
                Node::List(
                    locus
                        .charts
                        .iter()
                        .map(|c| Node::Record(chart_fields(&r.ring, c)))
                        .collect(),
                ),
            ),
        ],
        certificates: vec![],
    })
}

fn quotient_map_cmd(m: &NamedMap) -> Result<Outcome> {
    let q = quotient_morphism(&m.map)?;
    let images: Vec<String> = q
        .source
        .names
        .iter()
        .zip(&q.images)
        .map(|(n, e)| format!("{n} -> {}", q.target.show(e)))
        .collect();
    Ok(Outcome {
        result: vec![
            field("map", Node::text(&m.name)),
            field(
                "source_invariants",
                Node::texts(generator_list(&q.source, m.map.source())),
            ),
            field(
                "target_invariants",
                Node::texts(generator_list(&q.target, m.map.target())),
            ),
            field("target_relations", Node::texts(subring_relations(&q.target))),
            field("images", Node::texts(images)),
            field("surjective", Node::Bool(q.is_surjective()?)),
        ],
        certificates: vec![],
    })
}

fn graded_dims(dims: &[(crate::abelian::GroupElement, usize)]) -> Node {
    Node::texts(dims.iter().map(|(c, d)| format!("{c}: {d}")))
}

fn cotangent_fields(np: &NamedPoint, target: &GradedRing, c: &CotangentFiberReport) -> Fields {
    vec![
        field("point", Node::text(point_text(np, target))),
        field("stabilizer_label", Node::text(c.label.to_string())),
        field("classes", Node::text(c.classes.to_string())),
        field("h0", graded_dims(&c.h0)),
        field("h1", graded_dims(&c.h1)),
        field("h1_trivially_graded", Node::Bool(c.h1_trivially_graded())),
    ]
}

const LUNA_SCOPE: &str =
    "the criterion was checked at the listed probes only; `check strong` decides strong equivariance";

fn luna_fields(v: &LunaVerdict, target: &GradedRing) -> (Fields, Fields) {
    let probe = |p: &crate::luna::ProbeVerdict| {
        Node::Record(vec![
            field("point", Node::text(p.point.show(target))),
            field("special", Node::Bool(p.special)),
            field("pointwise_inert", Node::Bool(p.pointwise)),
            field("fiberwise_inert", Node::Bool(p.fiberwise)),
            field("h1_trivially_graded", Node::Bool(p.h1_trivially_graded)),
        ])
    };
    let failing: Vec<Node> = v.probes.iter().filter(|p| !p.satisfied()).map(probe).collect();
    let result = vec![
        field("criterion_satisfied", Node::Bool(v.criterion_holds)),
        field("probes", Node::count(v.probes.len())),
        field("failing_probes", Node::List(failing)),
        field("scope", Node::text(LUNA_SCOPE)),
    ];
    let certs = vec![field("probes", Node::List(v.probes.iter().map(probe).collect()))];
    (result, certs)
}

fn check(session: &Session, kind: CheckKind, input: &MapInput) -> Result<Outcome> {
    let m = select_map(session, &input.map)?;
    let phi = &m.map;
    let b = phi.target();
    let mut result = vec![field("map", Node::text(&m.name))];
    let mut certificates = Vec::new();
    match kind {
        CheckKind::Strong => {
            let v = is_strongly_equivariant(phi)?;
            result.push(field("strongly_equivariant", Node::Bool(v.holds)));
            result.push(field(
                "witness",
                Node::text(v.witness.map_or("none".to_string(), |w| w.to_string())),
            ));
            certificates.push(field("tensor_product", Node::text(format!("ring T {{ {}}}", v.tensor))));
        }
        CheckKind::FiberwiseInert => {
            // points of the source are base points; points of the target are mapped down
            let points: Vec<&NamedPoint> = if input.points.is_empty() {
                session
                    .points
                    .iter()
                    .filter(|p| p.ring == m.source || p.ring == m.target)
                    .collect()
            } else {
                input.points.iter().map(|n| session.point(n)).collect::<Result<_>>()?
            };
            if points.is_empty() {
                return Err(Error::Invalid(format!(
                    "no point declared in {} or {}; declare one or pass --point",
                    m.source, m.target
                )));
            }
            let mut list = Vec::new();
            for np in points {
                let x = if np.ring == m.source {
                    np.point.clone()
                } else if np.ring == m.target {
                    phi.image_point(&np.point)?
                } else {
                    return Err(Error::AmbientMismatch(format!(
                        "point {} lies in {}, not in {} or {}",
                        np.name, np.ring, m.source, m.target
                    )));
                };
                let v = fiberwise_inert_over(phi, &x)?;
                list.push(Node::Record(vec![
                    field("point", Node::text(format!("{} {}", np.name, x.show(phi.source())))),
                    field("fiberwise_inert", Node::Bool(v.holds)),
                    field("witness", Node::text(v.witness.unwrap_or_else(|| "none".into()))),
                ]));
            }
            result.push(field("points", Node::List(list)));
        }
        CheckKind::PointwiseInert => {
            let mut list = Vec::new();
            for np in select_points(session, &input.points, &m.target)? {
                let v = pointwise_inert_at(phi, &np.point)?;
                list.push(Node::Record(vec![
                    field("point", Node::text(point_text(np, b))),
                    field("image", Node::text(v.base_point.show(phi.source()))),
                    field("pointwise_inert", Node::Bool(v.holds)),
                    field("special", Node::Bool(v.target_special)),
                    field("image_special", Node::Bool(v.source_special)),
                    field("stabilizer_label", Node::text(v.target_label.to_string())),
                    field("image_stabilizer_label", Node::text(v.source_label.to_string())),
                ]));
            }
            result.push(field("points", Node::List(list)));
        }
        CheckKind::Luna => {
            let probes = if input.points.is_empty() {
                default_probes(b)?
            } else {
                select_points(session, &input.points, &m.target)?
                    .into_iter()
                    .map(|p| p.point.clone())
                    .collect()
            };
            let v = luna_verdict(phi, &probes)?;
            let (r, c) = luna_fields(&v, b);
            result.extend(r);
            certificates.extend(c);
        }
        CheckKind::Smooth | CheckKind::Etale => {
            let mut list = Vec::new();
            for np in select_points(session, &input.points, &m.target)? {
                let s = smoothness_at(phi, &np.point)?;
                let verdict = if kind == CheckKind::Smooth { s.smooth } else { s.etale };
                let key = if kind == CheckKind::Smooth { "smooth" } else { "etale" };
                list.push(Node::Record(vec![
                    field("point", Node::text(point_text(np, b))),
                    field(key, Node::Bool(verdict)),
                    field("jacobian_rank", Node::count(s.jacobian_rank)),
                    field("fiber_dimension", Node::count(s.fiber_dimension)),
                    field("variables", Node::count(s.relative_variables)),
                ]));
            }
            result.push(field("points", Node::List(list)));
        }
    }
    Ok(Outcome { result, certificates })
}

/// Runs every applicable check on every declared object.
pub fn emit_fixture_report(session: &Session) -> Result<Fields> {
    let mut rings = Vec::new();
    for r in &session.rings {
        let ring = &r.ring;
        let inv = invariant_subring(ring)?;
        let co = coinvariants(ring)?;
        let mut f = vec![
            field("name", Node::text(&r.name)),
            field("invariants", Node::texts(generator_list(&inv, ring))),
            field("invariant_relations", Node::texts(subring_relations(&inv))),
            field("coinvariant_variables", Node::texts(co.names().iter().cloned())),
            field("coinvariant_relations", Node::texts(relations_of(&co))),
        ];
        if ring.nvars() <= 16 {
            f.push(field(
                "strata",
                Node::texts(strata(ring)?.iter().map(|s| s.label.to_string())),
            ));
        }
        if ring.group().is_integers() {
            for (key, sign) in [("x_plus", Sign::Plus), ("x_minus", Sign::Minus)] {
                let locus = x_plus_minus(ring, sign)?;
                let charts: Vec<Node> = locus
                    .charts
                    .iter()
                    .map(|c| Node::Record(chart_fields(ring, c)))
                    .collect();
                f.push(field(key, Node::List(charts)));
            }
        }
        let mut points = Vec::new();
        for np in session.points_in(&r.name) {
            let s = stabilizer(ring, &np.point)?;
            points.push(Node::Record(vec![
                field("point", Node::text(point_text(np, ring))),
                field("stratum", Node::text(s.support.to_string())),
                field("characters", Node::text(s.characters.target().to_string())),
                field("special", Node::Bool(is_special(ring, &np.point)?)),
            ]));
        }
        f.push(field("points", Node::List(points)));
        rings.push(Node::Record(f));
    }

    let mut maps = Vec::new();
    for m in &session.maps {
        let phi = &m.map;
        let strong = is_strongly_equivariant(phi)?;
        let q = quotient_morphism(phi)?;
        let probes = default_probes(phi.target())?;
        let luna = luna_verdict(phi, &probes)?;
        let (luna_result, _) = luna_fields(&luna, phi.target());
        let mut f = vec![
            field("name", Node::text(&m.name)),
            field("strongly_equivariant", Node::Bool(strong.holds)),
            field(
                "witness",
                Node::text(strong.witness.map_or("none".to_string(), |w| w.to_string())),
            ),
            field("quotient_surjective", Node::Bool(q.is_surjective()?)),
            field("luna", Node::Record(luna_result)),
        ];
        let data = CotangentData::new(phi)?;
        let mut points = Vec::new();
        for np in session.points_in(&m.target) {
            let pw = pointwise_inert_at(phi, &np.point)?;
            let s = smoothness_at(phi, &np.point)?;
            let mut rec = cotangent_fields(np, phi.target(), &data.at(&np.point)?);
            rec.push(field("pointwise_inert", Node::Bool(pw.holds)));
            rec.push(field(
                "fiberwise_inert",
                Node::Bool(fiberwise_inert_over(phi, &pw.base_point)?.holds),
            ));
            rec.push(field("smooth", Node::Bool(s.smooth)));
            rec.push(field("etale", Node::Bool(s.etale)));
            points.push(Node::Record(rec));
        }
        for np in session.points_in(&m.source) {
            points.push(Node::Record(vec![
                field("base_point", Node::text(point_text(np, phi.source()))),
                field(
                    "fiberwise_inert",
                    Node::Bool(fiberwise_inert_over(phi, &np.point)?.holds),
                ),
            ]));
        }
        f.push(field("points", Node::List(points)));
        maps.push(Node::Record(f));
    }
    Ok(vec![field("rings", Node::List(rings)), field("maps", Node::List(maps))])
}

fn session_files(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "lq"))
            .collect();
        files.sort();
        Ok(files)
    } else {
        Ok(vec![path.to_path_buf()])
    }
}

fn report(path: &Path, as_json: bool, start: Option<Instant>) -> Result<String> {
    let mut inputs = Map::new();
    let mut results = Map::new();
    let mut text = String::new();
    for file in session_files(path)? {
        let name = file
            .file_name()
            .map_or_else(|| file.display().to_string(), |n| n.to_string_lossy().into_owned());
        let outcome = parse_session(&read(&file)?).and_then(|s| Ok((emit_fixture_report(&s)?, s.canonical_text())));
        let fields = match outcome {
            Ok((fields, canonical)) => {
                inputs.insert(name.clone(), json!(canonical));
                fields
            }
            Err(e) => {
                inputs.insert(name.clone(), Value::Null);
                vec![
                    field("error", Node::text(e.to_string())),
                    field("exit_code", Node::Int(e.exit_code().into())),
                ]
            }
        };
        results.insert(name.clone(), record_json(&fields));
        text.push_str(&format!("== {name} ==\n"));
        render_text(&fields, 0, &mut text);
    }
    if as_json {
        let v = json!({
            "command": "report",
            "inputs": Value::Object(inputs),
            "result": Value::Object(results),
            "certificates": {},
            "timings": timings_json(start.map(|s| s.elapsed().as_secs_f64() * 1000.0)),
        });
        return Ok(serde_json::to_string_pretty(&v).expect("serializable") + "\n");
    }
    Ok(text)
}
