//! `salvetti`: command-line access to defining graphs, balls of the universal
//! cover, d₁ distances, minsets, bridges, basepoints, length spectra and the
//! bound verifier.
//!
//! Exit status is 0 on success, 1 when a verification or comparison fails and
//! 2 on invalid input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use salvetti::metric::{d1, separating_walls, ParabolicCoset};
use salvetti::minsets::{
    bridge, choose_basepoint, min1_in_ball, min1_window, minset_model, Bridge, CoordinateWitness,
    CosetSubtree, MinsetError, MinsetShape,
};
use salvetti::spectra::{
    classes_up_to, compare_actions, l1_length, length_spectrum_with_radius, verify_bounds,
    Comparison, VerifyOptions, D_RADIUS, DEFAULT_CLASS_LENGTH,
};
use salvetti::{fmt_rational, parse_graph, ActionSpec, ComplexBall, ComplexError, GroupElement, Raag};

#[derive(Debug, Parser)]
#[command(name = "salvetti", version, about = "Wall geometry of 2-dimensional right-angled Artin groups")]
struct Cli {
    /// Defining graph file; the action has unit widths and no twist.
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Action spec file (JSON); takes precedence over --graph.
    #[arg(long, global = true)]
    action: Option<PathBuf>,
    /// Ball radius (ball: 4, verify: 6, minset fallback: the minset window).
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Word length bound for the conjugacy classes of spectrum and compare.
    #[arg(long, global = true, default_value_t = DEFAULT_CLASS_LENGTH)]
    classes_up_to: usize,
    /// Radius of the ball D over which M1 is maximized.
    #[arg(long, global = true, default_value_t = D_RADIUS)]
    d_radius: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; d1 and l1 print a bare rational when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that the graph is homogeneous of dimension 2.
    Validate,
    /// Size statistics of the ball of the universal cover.
    Ball,
    /// d1 distance between two vertices.
    D1 { x: String, y: String },
    /// l1 translation length of an element.
    L1 { g: String },
    /// Minset of an element.
    Minset { g: String },
    /// Bridge P^u inside Min(v).
    Bridge { v: String, u: String },
    /// Basepoint in Min(v).
    Basepoint { v: String },
    /// Length spectrum over conjugacy classes up to --classes-up-to.
    Spectrum,
    /// Run every bound check; exit 1 if any fails.
    Verify {
        /// Number of sampled points for the bridge path check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Compare with a second action up to scaling; exit 1 if they differ.
    Compare { spec2: PathBuf },
}

enum Failure {
    Input(String),
    Check(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(message)) => {
            eprintln!("check failed: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {}", message.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.format == Some(Format::Csv) && !matches!(cli.command, Command::Spectrum) {
        return Err(Failure::Input("--format csv is only available for spectrum".into()));
    }
    match &cli.command {
        Command::Validate => validate(cli),
        Command::Ball => {
            let spec = load_spec(cli)?;
            let ball = ComplexBall::build(&spec, cli.radius.unwrap_or(4))?;
            emit(cli, &serde_json::to_value(ball.summary())?)
        }
        Command::D1 { x, y } => {
            let spec = load_spec(cli)?;
            let (x, y) = (word(&spec, x)?, word(&spec, y)?);
            let value = d1(&x, &y, &spec)?;
            if cli.format.is_none() {
                return emit_text(cli, &fmt_rational(&value));
            }
            let walls = separating_walls(&x, &y, &spec)?;
            emit(
                cli,
                &json!({
                    "x": x.to_string(),
                    "y": y.to_string(),
                    "d1": fmt_rational(&value),
                    "separating_walls": walls.walls.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                }),
            )
        }
        Command::L1 { g } => {
            let spec = load_spec(cli)?;
            let g = word(&spec, g)?;
            let l1 = l1_length(&g, &spec)?;
            if cli.format.is_none() {
                return emit_text(cli, &fmt_rational(&l1.value));
            }
            emit(
                cli,
                &json!({
                    "element": g.to_string(),
                    "l1": fmt_rational(&l1.value),
                    "method": l1.method.to_string(),
                    "certificate": l1.certificate,
                }),
            )
        }
        Command::Minset { g } => minset(cli, g),
        Command::Bridge { v, u } => {
            let spec = load_spec(cli)?;
            let (v, u) = (generator(&spec, v)?, generator(&spec, u)?);
            emit(cli, &bridge_json(&bridge(v, u, &spec)?, &spec))
        }
        Command::Basepoint { v } => basepoint(cli, v),
        Command::Spectrum => spectrum(cli),
        Command::Verify { samples } => {
            let spec = load_spec(cli)?;
            let options = VerifyOptions {
                radius: cli.radius.unwrap_or(6),
                d_radius: cli.d_radius,
                seed: cli.seed,
                samples: *samples,
            };
            let report = verify_bounds(&spec, &options)?;
            emit(cli, &serde_json::to_value(&report)?)?;
            if report.all_passed {
                Ok(())
            } else {
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.name.as_str())
                    .collect();
                Err(Failure::Check(failed.join(", ")))
            }
        }
        Command::Compare { spec2 } => compare(cli, spec2),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_spec(cli: &Cli) -> Result<ActionSpec, Failure> {
    if let Some(path) = &cli.action {
        return load_action(path);
    }
    let Some(path) = &cli.graph else {
        return Err(Failure::Input("one of --graph or --action is required".into()));
    };
    let graph = parse_graph(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    ActionSpec::standard(&Raag::new(graph)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_action(path: &Path) -> Result<ActionSpec, Failure> {
    ActionSpec::load(path).map_err(|e| match e {
        ComplexError::Spec { .. } | ComplexError::Io { .. } | ComplexError::GraphFile { .. } => {
            Failure::Input(e.to_string())
        }
        other => Failure::Input(format!("{}: {other}", path.display())),
    })
}

fn word(spec: &ActionSpec, text: &str) -> Result<GroupElement, Failure> {
    GroupElement::parse(spec.raag(), text).map_err(|e| Failure::Input(format!("word {text:?}: {e}")))
}

fn generator(spec: &ActionSpec, name: &str) -> Result<usize, Failure> {
    spec.raag()
        .graph()
        .vertex_index(name)
        .map_err(|e| Failure::Input(format!("generator {name:?}: {e}")))
}

fn emit_text(cli: &Cli, text: &str) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(cli: &Cli, value: &Value) -> Result<(), Failure> {
    emit_text(cli, &serde_json::to_string_pretty(value)?)
}

fn names(spec: &ActionSpec, gens: &std::collections::BTreeSet<usize>) -> Vec<String> {
    gens.iter().map(|&g| spec.raag().graph().name(g).to_string()).collect()
}

fn coset_json(coset: &ParabolicCoset, spec: &ActionSpec) -> Value {
    json!({ "base": coset.base.to_string(), "generators": names(spec, &coset.gens) })
}

fn subtree_json(tree: &CosetSubtree, spec: &ActionSpec) -> Value {
    json!({ "anchor": tree.anchor.to_string(), "generators": names(spec, &tree.gens) })
}

fn bridge_json(b: &Bridge, spec: &ActionSpec) -> Value {
    let graph = spec.raag().graph();
    json!({
        "v": graph.name(b.v),
        "u": graph.name(b.u),
        "distance": fmt_rational(&b.distance),
        "coset": coset_json(&b.coset, spec),
        "tree_factor": subtree_json(&b.tree_factor, spec),
        "line_factor": subtree_json(&b.line_factor, spec),
    })
}

fn validate(cli: &Cli) -> Result<(), Failure> {
    let (graph, label) = match (&cli.action, &cli.graph) {
        (Some(path), _) => (load_action(path)?.raag().graph().clone(), path),
        (None, Some(path)) => {
            let graph = parse_graph(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            (graph, path)
        }
        (None, None) => return Err(Failure::Input("one of --graph or --action is required".into())),
    };
    if graph.homogeneity_dimension() != Some(2) {
        return Err(Failure::Input(format!("{}: {}", label.display(), ComplexError::NotHomogeneous)));
    }
    let edges: Vec<[&str; 2]> = graph.edges().iter().map(|&(a, b)| [graph.name(a), graph.name(b)]).collect();
    emit(
        cli,
        &json!({
            "vertices": graph.names(),
            "edges": edges,
            "connected": graph.is_connected(),
            "triangle_free": graph.is_triangle_free(),
            "homogeneous_dimension": 2,
        }),
    )
}

fn minset(cli: &Cli, g: &str) -> Result<(), Failure> {
    let spec = load_spec(cli)?;
    let g = word(&spec, g)?;
    let acting = spec.acting_element(&g)?;
    let l1 = l1_length(&g, &spec)?;
    match minset_model(&g, &spec) {
        Ok(model) => emit(
            cli,
            &json!({
                "element": g.to_string(),
                "acting_element": acting.to_string(),
                "l1": fmt_rational(&l1.value),
                "shape": match model.shape {
                    MinsetShape::Star => "star",
                    MinsetShape::Flat => "flat",
                },
                "coset": coset_json(&model.coset, &spec),
                "tree_generators": names(&spec, &model.tree_gens),
                "line_generators": names(&spec, &model.line_gens),
            }),
        ),
        Err(MinsetError::UnsupportedShape { .. }) => {
            let radius = cli.radius.unwrap_or(min1_window(&g, &spec)?);
            let ball = ComplexBall::build(&spec, radius)?;
            let slice = min1_in_ball(&g, &ball)?;
            emit(
                cli,
                &json!({
                    "element": g.to_string(),
                    "acting_element": acting.to_string(),
                    "l1": fmt_rational(&l1.value),
                    "shape": "ball-slice",
                    "radius": radius,
                    "vertices": slice.vertices.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }),
            )
        }
        Err(e) => Err(e.into()),
    }
}

fn witness_json(w: &CoordinateWitness, spec: &ActionSpec) -> Value {
    let graph = spec.raag().graph();
    match w {
        CoordinateWitness::CommonIntersection => json!("common-intersection"),
        CoordinateWitness::NoConstraint => json!("no-constraint"),
        CoordinateWitness::DisjointPair { first, second } => {
            json!({ "disjoint_pair": [graph.name(*first), graph.name(*second)] })
        }
    }
}

fn basepoint(cli: &Cli, v: &str) -> Result<(), Failure> {
    let spec = load_spec(cli)?;
    let v = generator(&spec, v)?;
    let x0 = choose_basepoint(v, &spec)?;
    emit(
        cli,
        &json!({
            "v": spec.raag().graph().name(v),
            "vertex": x0.vertex.to_string(),
            "tree_coordinate": x0.tree_coord.to_string(),
            "line_coordinate": x0.line_coord.to_string(),
            "tree_witness": witness_json(&x0.tree_witness, &spec),
            "line_witness": witness_json(&x0.line_witness, &spec),
            "minset": coset_json(&x0.model.coset, &spec),
            "bridges": x0.bridges.iter().map(|b| bridge_json(b, &spec)).collect::<Vec<_>>(),
        }),
    )
}

fn spectrum(cli: &Cli) -> Result<(), Failure> {
    let spec = load_spec(cli)?;
    let classes = classes_up_to(spec.raag(), cli.classes_up_to)?;
    let spectrum = length_spectrum_with_radius(&spec, &classes, cli.d_radius)?;
    if cli.format == Some(Format::Csv) {
        return emit_text(cli, &spectrum.to_csv());
    }
    let entries: Vec<Value> = spectrum
        .entries
        .iter()
        .enumerate()
        .map(|(i, (c, l))| {
            let interval = spectrum.cat0_interval(c).expect("class is present");
            json!({
                "class": i,
                "word": c.representative().to_string(),
                "cyclic_length": c.cyclic_len(),
                "l1": fmt_rational(l),
                "scaled": fmt_rational(&spectrum.scaled(c).expect("class is present")),
                "cat0_lower_sqrt2_coefficient": fmt_rational(&interval.lower_sqrt2_coefficient),
                "cat0_upper": fmt_rational(&interval.upper),
            })
        })
        .collect();
    emit(
        cli,
        &json!({
            "classes_up_to": cli.classes_up_to,
            "d_radius": cli.d_radius,
            "m1": fmt_rational(&spectrum.m1),
            "m1_witness": spectrum.m1_witness.to_string(),
            "scale": fmt_rational(&spectrum.scale),
            "entries": entries,
        }),
    )
}

fn compare(cli: &Cli, spec2: &Path) -> Result<(), Failure> {
    let first = load_spec(cli)?;
    let second = load_action(spec2)?;
    if first.raag().graph() != second.raag().graph() {
        return Err(Failure::Input(format!(
            "{}: action is defined over a different graph",
            spec2.display()
        )));
    }
    // Re-express the second action over the first group so elements are shared.
    let second = ActionSpec::new(
        first.raag(),
        second.widths().to_vec(),
        match second.twist() {
            Some(phi) => Some(salvetti::Automorphism::from_json(first.raag(), &phi.to_json())?),
            None => None,
        },
    )?;
    let classes = classes_up_to(first.raag(), cli.classes_up_to)?;
    match compare_actions(&first, &second, &classes)? {
        Comparison::ProjectivelyEqual { ratio } => emit(
            cli,
            &json!({
                "classes_up_to": cli.classes_up_to,
                "classes": classes.len(),
                "verdict": "projectively-equal",
                "ratio": fmt_rational(&ratio),
            }),
        ),
        Comparison::Distinct { witness } => {
            let g = witness.representative();
            emit(
                cli,
                &json!({
                    "classes_up_to": cli.classes_up_to,
                    "classes": classes.len(),
                    "verdict": "distinct",
                    "witness": g.to_string(),
                    "l1_first": fmt_rational(&l1_length(g, &first)?.value),
                    "l1_second": fmt_rational(&l1_length(g, &second)?.value),
                }),
            )?;
            Err(Failure::Check(format!("spectra differ at class [{g}]")))
        }
    }
}
