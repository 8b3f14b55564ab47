use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use plabica::plabic::{Family, GraphJson, PlabicGraph};
use plabica::polytope::{check_gt_orbit, conjecture_scan, superpotential_polytope, vertices_json};
use plabica::quiver::Quiver;
use plabica::seeds::{assemble_superpotential, default_budget, superpotential, superpotential_terms};
use plabica::service::{graph_json_with_labels, parse_rational, serve, DihedralSpec};
use plabica::subsets::KSubset;
use plabica::superpotential::ClosedFormFamily;
use plabica::{Error, Result};

/// Plabic graphs of Grassmannian type: labels, mutation, superpotentials and polytopes.
///
/// Graph-consuming commands read graph JSON from --input or standard input.
#[derive(Parser)]
#[command(name = "plabica", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family graph, optionally acted on by σ^shift (τ if --reflected).
    Build {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        #[arg(long)]
        reflected: bool,
    },
    /// Left and right face labels.
    Labels {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Mutate at a face given by its left label, e.g. 1,4,6.
    Mutate {
        #[arg(long)]
        label: String,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Distinct label collections in the dihedral orbit.
    Orbit {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Dihedral elements fixing the label collection.
    Stabilizer {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    Quiver {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        dot: bool,
    },
    /// Superpotential in the seed of the input graph, or a closed formula.
    Superpotential {
        #[arg(long)]
        input: Option<PathBuf>,
        /// ch-base, ch-rot, ch-refl, dual-ch-rot or dual-ch-refl; needs --k, --n, --m.
        #[arg(long)]
        closed_form: Option<ClosedFormFamily>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i64,
    },
    /// The superpotential polytope Γ^r of the input graph.
    Polytope {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "1")]
        r: String,
    },
    /// Compare F(Γ_G) with the Gelfand-Tsetlin polytope over the (dual) checkboard orbits.
    CheckGt {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Unimodular invariants of Γ over all rotations (and, separately, reflections).
    ConjectureScan {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Session document; created if missing.
        #[arg(long, default_value = "plabica-session.json")]
        session: PathBuf,
    },
}

fn read_graph(input: &Option<PathBuf>) -> Result<PlabicGraph> {
    let text = match input {
        Some(p) => std::fs::read_to_string(p)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let j: GraphJson = serde_json::from_str(&text)?;
    PlabicGraph::from_json(&j)
}

fn parse_label(text: &str, g: &PlabicGraph) -> Result<KSubset> {
    let label = KSubset::parse(g.n(), text)?;
    if label.len() != g.k() {
        return Err(Error::Invalid(format!("label {label} does not have {} elements", g.k())));
    }
    Ok(label)
}

fn print(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let budget = default_budget();
    match cli.command {
        Command::Build {
            family,
            k,
            n,
            shift,
            reflected,
        } => {
            let g = family
                .build(k, n)?
                .dihedral_act(&DihedralSpec { shift, reflected }.element(n));
            print(&serde_json::to_value(graph_json_with_labels(&g)?)?)?;
        }
        Command::Labels { input } => {
            let g = read_graph(&input)?;
            let left = g.labels()?;
            let right = g.right_labels()?;
            print(&json!({
                "n": g.n(),
                "k": g.k(),
                "labels": left.labels().iter().map(KSubset::elements).collect::<Vec<_>>(),
                "right_labels": right.labels().iter().map(KSubset::elements).collect::<Vec<_>>(),
            }))?;
        }
        Command::Mutate { label, input } => {
            let g = read_graph(&input)?;
            let l = parse_label(&label, &g)?;
            let (h, new) = g.mutate(&l)?;
            eprintln!("mutated {l} -> {new}");
            print(&serde_json::to_value(graph_json_with_labels(&h)?)?)?;
        }
        Command::Orbit { input } => {
            let orbit = read_graph(&input)?.orbit()?;
            print(&json!({ "size": orbit.len(), "members": serde_json::to_value(&orbit)? }))?;
        }
        Command::Stabilizer { input } => {
            let stab = read_graph(&input)?.stabilizer()?;
            print(&json!({ "order": stab.len(), "elements": serde_json::to_value(&stab)? }))?;
        }
        Command::Quiver { input, dot } => {
            let q = Quiver::from_graph(&read_graph(&input)?)?;
            if dot {
                print!("{}", q.to_dot());
            } else {
                print(&serde_json::to_value(q.to_json())?)?;
            }
        }
        Command::Superpotential {
            closed_form: Some(fam),
            k,
            n,
            m,
            ..
        } => {
            let (k, n) = match (k, n) {
                (Some(k), Some(n)) => (k, n),
                _ => return Err(Error::Invalid("--closed-form needs --k and --n".into())),
            };
            let w = fam.closed_form_w(m, k, n)?;
            let derived = superpotential(&fam.graph(m, k, n)?, budget)?;
            print(&json!({
                "family": fam,
                "m": m,
                "w": w.to_json(),
                "text": w.to_string(),
                "equals_derived": w == derived,
            }))?;
        }
        Command::Superpotential {
            input,
            closed_form: None,
            ..
        } => {
            let g = read_graph(&input)?;
            let terms = superpotential_terms(&g, budget)?;
            let w = assemble_superpotential(&terms, g.k());
            print(&json!({
                "terms": terms.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
                "w": w.to_json(),
                "text": w.to_string(),
            }))?;
        }
        Command::Polytope { input, r } => {
            let r: BigRational = parse_rational(&r)?;
            let p = superpotential_polytope(&read_graph(&input)?, &r, budget)?;
            let verts = p.vertices()?;
            print(&json!({
                "r": r.to_string(),
                "polytope": serde_json::to_value(p.to_json()?)?,
                "vertices": vertices_json(&verts),
                "lattice_points": p.lattice_count()?,
            }))?;
        }
        Command::CheckGt { k, n } => {
            let checks = check_gt_orbit(k, n, budget)?;
            let ok = checks
                .iter()
                .filter(|c| c.equivalent && c.lattice_points == c.gt_lattice_points)
                .count();
            for c in &checks {
                println!(
                    "{} m={}: {} (lattice points {} vs {})",
                    c.family,
                    c.m,
                    if c.equivalent { "equivalent" } else { "NOT equivalent" },
                    c.lattice_points,
                    c.gt_lattice_points
                );
            }
            println!("{ok}/{} equivalent", checks.len());
            if ok != checks.len() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::ConjectureScan { input } => {
            let report = conjecture_scan(&read_graph(&input)?, budget)?;
            print(&serde_json::to_value(report)?)?;
        }
        Command::Serve { port, host, session } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(async move {
                let listener = tokio::net::TcpListener::bind((host.as_str(), port)).await?;
                eprintln!("listening on http://{}", listener.local_addr()?);
                serve(listener, Some(session)).await
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
