//! Command-line front end for `surfknot`.
//!
//! Every command prints `key=value` records, one per line, or the same
//! records as JSON with `--format json`.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use surfknot::{
    all_sites, applicable_sites, apply_move, color_count, colorings, counts, detour, enumerate_bikei, euler_characteristic,
    fixed_set, from_gauss, gauss_orientable, merge_components, orient, smooth_saddles, to_gauss, two_colorable,
    verify_bikei, BikeiTable, Error, GaussMVD, Level, MarkedVertexDiagram, MoveId, MoveSite,
};

#[derive(Parser, Debug)]
#[command(name = "surfknot", version, about = "Bikei invariants of marked vertex diagrams")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Lower,
    Upper,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the bikei axioms, listing every violation.
    VerifyBikei { table: PathBuf },
    /// List every bikei of order n.
    EnumerateBikei {
        n: usize,
        /// One table per isomorphism class.
        #[arg(long)]
        dedup: bool,
    },
    /// Elements with x^x = x_x = x.
    FixedSet { table: PathBuf },
    /// The counting invariant.
    ColorCount { diagram: PathBuf, table: PathBuf },
    /// List colorings in lexicographic order.
    Colorings {
        diagram: PathBuf,
        table: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Whether the flip table on two elements colors the diagram.
    TwoColorable { diagram: PathBuf },
    /// Orientability of a `.mvd` diagram or a `.gmvd` Gauss word.
    Orientable { input: PathBuf },
    /// Node tallies.
    Counts { diagram: PathBuf },
    /// Replace every saddle by its lower or upper smoothing.
    Smooth {
        diagram: PathBuf,
        #[arg(long, value_enum)]
        level: LevelArg,
        /// Also write the result as a `.mvd` file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Euler characteristic and surface type.
    Euler { diagram: PathBuf },
    /// Convert between `.mvd` and `.gmvd`.
    Gauss {
        #[command(subcommand)]
        direction: GaussCommand,
    },
    /// Yoshikawa move sites and rewrites.
    Moves {
        #[command(subcommand)]
        action: MovesCommand,
    },
    /// Reroute a virtual path.
    Detour {
        diagram: PathBuf,
        /// Semiarcs of the path, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        path: Vec<usize>,
        /// Semiarcs the new path crosses, in order.
        #[arg(long, value_delimiter = ',')]
        route: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Join naive components until one is left.
    Merge {
        diagram: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GaussCommand {
    /// Diagram to Gauss word.
    To {
        diagram: PathBuf,
        /// Merge naive components first.
        #[arg(long)]
        merge: bool,
    },
    /// Gauss word to diagram.
    From {
        word: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum MovesCommand {
    /// List sites, numbered from 0.
    Sites {
        diagram: PathBuf,
        /// Restrict to one move, e.g. Y4'.
        #[arg(long = "move")]
        move_id: Option<String>,
    },
    /// Apply the site with this number from `moves sites`.
    Apply {
        diagram: PathBuf,
        #[arg(long)]
        site: usize,
        #[arg(long = "move")]
        move_id: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// One output line.
pub type Record = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    /// Bad input: exit 1.
    Domain(String),
    /// Bad invocation: exit 2.
    Usage(String),
}

type Out = Result<(Vec<Record>, bool), Failure>;

fn rec<V: Display>(pairs: &[(&str, V)]) -> Record {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn one<V: Display>(k: &str, v: V) -> Record {
    rec(&[(k, v)])
}

fn list<T: Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: cannot read: {e}", path.display())))
}

fn in_file(path: &Path, e: Error) -> Failure {
    Failure::Domain(format!("{}: {e}", path.display()))
}

fn load_diagram(path: &Path) -> Result<MarkedVertexDiagram, Failure> {
    MarkedVertexDiagram::parse(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_table(path: &Path) -> Result<BikeiTable, Failure> {
    BikeiTable::parse(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_word(path: &Path) -> Result<GaussMVD, Failure> {
    GaussMVD::parse(&read(path)?).map_err(|e| in_file(path, e))
}

fn diagram_records(d: &MarkedVertexDiagram, output: Option<&Path>) -> Result<Vec<Record>, Failure> {
    if let Some(p) = output {
        std::fs::write(p, d.to_text()).map_err(|e| Failure::Domain(format!("{}: cannot write: {e}", p.display())))?;
    }
    let mut out = vec![one("free_loops", d.free_loops()), one("nodes", d.nodes().len())];
    out.extend(d.normalized().nodes().iter().map(|n| one("node", n)));
    Ok(out)
}

fn sites_for(d: &MarkedVertexDiagram, move_id: Option<&str>) -> Result<Vec<MoveSite>, Failure> {
    match move_id {
        None => Ok(all_sites(d)),
        Some(m) => {
            let id: MoveId = m.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            Ok(applicable_sites(d, id))
        }
    }
}

fn site_record(i: usize, s: &MoveSite) -> Record {
    let mut r = rec(&[
        ("site", i.to_string()),
        ("move", s.move_id.to_string()),
        ("variant", s.variant.to_string()),
        ("direction", s.direction.to_string()),
        ("nodes", list(&s.matched_nodes)),
        ("semiarcs", list(&s.matched_semiarcs)),
    ]);
    let loops = s.arcs.iter().filter(|a| **a == surfknot::ArcRef::FreeLoop).count();
    if loops > 0 {
        r.push(("free_loops".into(), loops.to_string()));
    }
    r
}

fn execute(cmd: &Command) -> Out {
    let domain = |e: Error| Failure::Domain(e.to_string());
    Ok(match cmd {
        Command::VerifyBikei { table } => {
            let t = load_table(table)?;
            let r = verify_bikei(&t);
            let mut out = vec![one("valid", r.valid()), one("order", t.order())];
            out.extend(
                r.violations
                    .iter()
                    .map(|v| rec(&[("violation", v.axiom.id().to_string()), ("witness", list(&v.witness))])),
            );
            (out, r.valid())
        }
        Command::EnumerateBikei { n, dedup } => {
            let ts = enumerate_bikei(*n, *dedup);
            let mut out = vec![one("count", ts.len())];
            out.extend(ts.iter().map(|t| {
                let rows: Vec<String> = t
                    .matrix()
                    .iter()
                    .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                one("table", rows.join(";"))
            }));
            (out, true)
        }
        Command::FixedSet { table } => {
            let f = fixed_set(&load_table(table)?);
            (vec![one("members", list(&f.members)), one("size", f.len())], true)
        }
        Command::ColorCount { diagram, table } => {
            let d = load_diagram(diagram)?;
            let t = load_table(table)?;
            (vec![one("phi", color_count(&d, &t))], true)
        }
        Command::Colorings { diagram, table, limit } => {
            let d = load_diagram(diagram)?;
            let t = load_table(table)?;
            let cs = colorings(&d, &t, limit.unwrap_or(usize::MAX));
            let mut out = vec![one("listed", cs.len())];
            out.extend(cs.iter().map(|c| one("coloring", list(&c.assignment))));
            (out, true)
        }
        Command::TwoColorable { diagram } => (vec![one("two-colorable", two_colorable(&load_diagram(diagram)?))], true),
        Command::Orientable { input } => {
            if input.extension().is_some_and(|e| e == "gmvd") {
                let g = load_word(input)?;
                (vec![one("orientable", gauss_orientable(&g))], true)
            } else {
                let d = load_diagram(input)?;
                match orient(&d) {
                    Ok(_) => (vec![one("orientable", true)], true),
                    Err(w) => (
                        vec![
                            one("orientable", false),
                            rec(&[("cycle", list(&w.cycle)), ("through_nodes", list(&w.nodes))]),
                        ],
                        true,
                    ),
                }
            }
        }
        Command::Counts { diagram } => {
            let c = counts(&load_diagram(diagram)?);
            (
                vec![one("c", c.c), one("h", c.h), one("v", c.v), one("ch", c.ch), one("vch", c.vch)],
                true,
            )
        }
        Command::Smooth { diagram, level, output } => {
            let lv = match level {
                LevelArg::Lower => Level::Lower,
                LevelArg::Upper => Level::Upper,
            };
            let d = smooth_saddles(&load_diagram(diagram)?, lv);
            (diagram_records(&d, output.as_deref())?, true)
        }
        Command::Euler { diagram } => {
            let s = euler_characteristic(&load_diagram(diagram)?);
            let kind = if s.orientable { "genus" } else { "crosscaps" };
            (
                vec![
                    one("euler", s.euler),
                    one("orientable", s.orientable),
                    one(kind, s.genus_or_crosscaps),
                    one("closed_surface_assumed", s.closed_surface_assumed),
                ],
                true,
            )
        }
        Command::Gauss { direction: GaussCommand::To { diagram, merge } } => {
            let mut d = load_diagram(diagram)?;
            if *merge {
                d = merge_components(&d).map_err(|e| in_file(diagram, e))?;
            }
            let g = to_gauss(&d).map_err(|e| in_file(diagram, e))?;
            (vec![one("gauss", g.to_text().trim_end())], true)
        }
        Command::Gauss { direction: GaussCommand::From { word, output } } => {
            let g = load_word(word)?;
            let d = if g.is_empty() {
                MarkedVertexDiagram::unknot()
            } else {
                from_gauss(&g).map_err(|e| in_file(word, e))?
            };
            (diagram_records(&d, output.as_deref())?, true)
        }
        Command::Moves { action: MovesCommand::Sites { diagram, move_id } } => {
            let d = load_diagram(diagram)?;
            let sites = sites_for(&d, move_id.as_deref())?;
            let mut out = vec![one("count", sites.len())];
            out.extend(sites.iter().enumerate().map(|(i, s)| site_record(i, s)));
            (out, true)
        }
        Command::Moves { action: MovesCommand::Apply { diagram, site, move_id, output } } => {
            let d = load_diagram(diagram)?;
            let sites = sites_for(&d, move_id.as_deref())?;
            let s = sites.get(*site).ok_or_else(|| {
                Failure::Usage(format!("site {site} out of range: {} sites", sites.len()))
            })?;
            let e = apply_move(&d, s).map_err(domain)?;
            let mut out = vec![site_record(*site, s)];
            out.extend(diagram_records(&e, output.as_deref())?);
            (out, true)
        }
        Command::Detour { diagram, path, route, output } => {
            let d = load_diagram(diagram)?;
            let e = detour(&d, path, route).map_err(|e| in_file(diagram, e))?;
            (diagram_records(&e, output.as_deref())?, true)
        }
        Command::Merge { diagram, output } => {
            let d = load_diagram(diagram)?;
            let e = merge_components(&d).map_err(|e| in_file(diagram, e))?;
            (diagram_records(&e, output.as_deref())?, true)
        }
    })
}

fn json_value(v: &str) -> serde_json::Value {
    if let Ok(b) = v.parse::<bool>() {
        return b.into();
    }
    if let Ok(i) = v.parse::<i64>() {
        return i.into();
    }
    v.into()
}

pub fn render(records: &[Record], format: Format) -> String {
    match format {
        Format::Text => records
            .iter()
            .map(|r| r.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ") + "\n")
            .collect(),
        Format::Json => {
            let arr: Vec<serde_json::Value> = records
                .iter()
                .map(|r| {
                    let m: serde_json::Map<String, serde_json::Value> =
                        r.iter().map(|(k, v)| (k.clone(), json_value(v))).collect();
                    serde_json::Value::Object(m)
                })
                .collect();
            serde_json::to_string_pretty(&arr).expect("plain values") + "\n"
        }
    }
}

/// Caps the global worker pool at `SURFKNOT_THREADS` if set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("SURFKNOT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { exit_code: code, stdout, stderr };
        }
    };
    match execute(&cli.command) {
        Ok((records, ok)) => Outcome {
            exit_code: if ok { 0 } else { 1 },
            stdout: render(&records, cli.format),
            stderr: String::new(),
        },
        Err(Failure::Domain(m)) => Outcome { exit_code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Usage(m)) => Outcome { exit_code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}
