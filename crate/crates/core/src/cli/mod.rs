//! The `klcells` command line.
//!
//! Words are comma-separated 1-based generator labels (`1,2,3`; the empty
//! string is the identity). Every command prints human text by default or one
//! JSON object per line with `--format json`. KL tables are cached in
//! `$KLCELLS_CACHE` when it is set.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cells::{classify_left_traced, classify_two_sided, verify_partition, CellLabel};
use crate::coxeter::{CoxeterSystem, Element, GroupSpec};
use crate::error::{Error, Result};
use crate::hecke::{bound_n, boundedness_check, distinguished_involutions, f_row, g_row, h_row, StructureRow};
use crate::klpoly::{cache_path, load_or_new, KlTable};
use crate::tessellation::{render_svg, structure_hash, tessellate, Coloring};
use crate::wgraph::{self, build_wgraph, check_relations, compare, cycle_census, is_tree};
use crate::wordgeom::{decompose, is_line, precell_rep};

pub const CACHE_ENV: &str = "KLCELLS_CACHE";

#[derive(Debug, Parser)]
#[command(name = "klcells", version, about = "Kazhdan-Lusztig cells of right-angled Coxeter groups")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// The hyperbolic polygon group P_n.
    #[arg(long, global = true, conflicts_with = "group")]
    pub polygon: Option<usize>,
    /// A group-spec JSON file.
    #[arg(long, global = true)]
    pub group: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ShortLex normal form, block decomposition and precell of a word.
    Reduce {
        #[arg(long)]
        word: String,
    },
    /// Size of the ball of the given radius, by length.
    Ball {
        #[arg(long)]
        radius: usize,
        /// Also list the elements.
        #[arg(long)]
        list: bool,
    },
    /// The Kazhdan-Lusztig polynomial P_{y,w}.
    Kl {
        #[arg(long)]
        y: String,
        #[arg(long)]
        w: String,
    },
    /// mu(y, w).
    Mu {
        #[arg(long)]
        y: String,
        #[arg(long)]
        w: String,
    },
    /// Left cell of an element of P_n.
    Classify {
        #[arg(long)]
        word: String,
        /// Print the sequence of moves.
        #[arg(long)]
        trace: bool,
    },
    /// Left cells met in a ball, with member counts.
    CellsReport {
        #[arg(long)]
        radius: usize,
    },
    /// Distinguished involutions u^-1 s t u with l(u) <= radius.
    Distinguished {
        #[arg(long)]
        radius: usize,
    },
    #[command(subcommand)]
    Wgraph(WgraphCommand),
    #[command(subcommand)]
    Hecke(HeckeCommand),
    /// Checks the cell partition of P_n on a ball; exits 1 on failure.
    Verify {
        #[arg(long)]
        radius: usize,
    },
    /// SVG of the cells on the Poincaré disk.
    Tessellate {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
        /// Give every left cell its own hue.
        #[arg(long)]
        left_cell_hues: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum WgraphCommand {
    /// Writes the truncated W-graph of a left cell.
    Export {
        /// `unit`, `typeI:<g>` or `typeII:<word>`.
        #[arg(long)]
        cell: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value = "json")]
        graph_format: String,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tree test, cycle census and representation relations.
    Check {
        #[arg(long)]
        cell: String,
        #[arg(long)]
        depth: usize,
    },
    /// Invariants of two cells' graphs side by side.
    Compare {
        #[arg(long)]
        cell: String,
        #[arg(long)]
        other: String,
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum HeckeCommand {
    /// f_{x,y,z}: T~_x T~_y = sum_z f_{x,y,z} T~_z.
    FRow {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// g_{x,y,z}: T~_x C_y = sum_z g_{x,y,z} C_z.
    GRow {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// h_{x,y,z}: C_x C_y = sum_z h_{x,y,z} C_z.
    HRow {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Checks v^N f_{x,y,z} in Z[v] on a ball.
    BoundCheck {
        #[arg(long)]
        radius: usize,
        /// Defaults to the clique bound of the group.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Same as the top-level `distinguished`.
    Distinguished {
        #[arg(long)]
        radius: usize,
    },
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            if cli.config.format == OutputFormat::Json {
                eprintln!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            1
        }
    }
}

fn system(config: &RunConfig) -> Result<CoxeterSystem> {
    match (&config.polygon, &config.group) {
        (Some(n), _) => CoxeterSystem::polygon(*n),
        (None, Some(path)) => GroupSpec::from_file(path)?.build(),
        (None, None) => Err(Error::InvalidInput("give --polygon <n> or --group <file>".into())),
    }
}

fn parse_word(sys: &CoxeterSystem, s: &str) -> Result<Element> {
    let labels = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad generator label {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    sys.element_from_labels(&labels)
}

fn parse_cell(sys: &CoxeterSystem, s: &str) -> Result<CellLabel> {
    let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
    match kind.to_ascii_lowercase().as_str() {
        "unit" => Ok(CellLabel::Unit),
        "typei" => {
            let g = parse_word(sys, arg)?;
            match g.letters() {
                [g] => Ok(CellLabel::TypeI(*g)),
                _ => Err(Error::InvalidInput(format!("typeI takes one generator, got {arg:?}"))),
            }
        }
        "typeii" => Ok(CellLabel::TypeII(parse_word(sys, arg)?)),
        _ => Err(Error::InvalidInput(format!(
            "cell {s:?} is not unit, typeI:<g> or typeII:<word>"
        ))),
    }
}

fn labels(x: &Element) -> Vec<usize> {
    x.word().labels()
}

fn show(x: &Element) -> String {
    if x.is_identity() {
        "e".into()
    } else {
        x.to_string()
    }
}

struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    fn from_env() -> Self {
        Cache {
            dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
        }
    }

    fn load(&self, sys: &CoxeterSystem) -> Result<KlTable> {
        load_or_new(sys, self.dir.as_deref())
    }

    fn store(&self, table: &KlTable) -> Result<()> {
        if let Some(dir) = &self.dir {
            fs::create_dir_all(dir)?;
            table.save(&cache_path(dir, table.system()))?;
        }
        Ok(())
    }
}

struct Emitter<'a, W: Write> {
    out: &'a mut W,
    format: OutputFormat,
}

impl<W: Write> Emitter<'_, W> {
    fn emit<T: Serialize>(&mut self, text: impl AsRef<str>, value: &T) -> Result<()> {
        match self.format {
            OutputFormat::Text => writeln!(self.out, "{}", text.as_ref())?,
            OutputFormat::Json => writeln!(self.out, "{}", serde_json::to_string(value)?)?,
        }
        Ok(())
    }
}

fn row_json(row: &StructureRow) -> serde_json::Value {
    let entries: Vec<_> = row
        .row
        .iter()
        .map(|(z, c)| json!({ "z": labels(z), "coeff": c.to_string() }))
        .collect();
    json!({ "x": labels(&row.x), "y": labels(&row.y), "kind": row.kind, "row": entries })
}

/// Runs a parsed command, writing to `out`. Returns the exit code.
pub fn execute<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    if let Some(t) = cli.config.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let sys = system(&cli.config)?;
    let cache = Cache::from_env();
    let mut em = Emitter {
        out,
        format: cli.config.format,
    };
    match &cli.command {
        Command::Reduce { word } => {
            let x = parse_word(&sys, word)?;
            let dec = decompose(&sys, &x);
            let pre = precell_rep(&sys, &x);
            let text = format!(
                "{}\nlength {}  line {}\nparts {}\nprecell {} (dimension {})",
                show(&x),
                x.length(),
                is_line(&sys, &x),
                dec.to_json(),
                show(&pre.rep),
                pre.dimension
            );
            em.emit(
                text,
                &json!({
                    "word": labels(&x), "length": x.length(), "line": is_line(&sys, &x),
                    "parts": dec.parts, "precell": labels(&pre.rep), "dimension": pre.dimension,
                }),
            )?;
        }
        Command::Ball { radius, list } => {
            let ball = sys.ball(*radius)?;
            let mut counts = vec![0usize; radius + 1];
            for x in ball.iter() {
                counts[x.length()] += 1;
            }
            em.emit(
                format!("{} elements; by length {:?}", ball.len(), counts),
                &json!({ "radius": radius, "size": ball.len(), "by_length": counts }),
            )?;
            if *list {
                for x in ball.iter() {
                    em.emit(show(x), &json!({ "word": labels(x) }))?;
                }
            }
        }
        Command::Kl { y, w } => {
            let (y, w) = (parse_word(&sys, y)?, parse_word(&sys, w)?);
            let mut table = cache.load(&sys)?;
            let p = table.kl_poly(&y, &w);
            cache.store(&table)?;
            em.emit(
                p.to_string(),
                &json!({ "y": labels(&y), "w": labels(&w), "coeffs": p.coeffs(), "poly": p.to_string() }),
            )?;
        }
        Command::Mu { y, w } => {
            let (y, w) = (parse_word(&sys, y)?, parse_word(&sys, w)?);
            let mut table = cache.load(&sys)?;
            let m = table.mu(&y, &w);
            cache.store(&table)?;
            em.emit(m.to_string(), &json!({ "y": labels(&y), "w": labels(&w), "mu": m }))?;
        }
        Command::Classify { word, trace } => {
            let x = parse_word(&sys, word)?;
            let (label, moves) = classify_left_traced(&sys, &x)?;
            let two = classify_two_sided(&sys, &x)?;
            match em.format {
                OutputFormat::Text => {
                    writeln!(em.out, "{label}")?;
                    if let (true, Some(t)) = (*trace, &moves) {
                        for s in &t.steps {
                            writeln!(em.out, "  {:?}: {} -> {}", s.tag, s.before, s.after)?;
                        }
                    }
                }
                OutputFormat::Json => {
                    let mut v: serde_json::Value = serde_json::from_str(&label.to_json())?;
                    v["two_sided"] = json!(two);
                    if let (true, Some(t)) = (*trace, &moves) {
                        v["moves"] = t
                            .steps
                            .iter()
                            .map(|s| json!({ "move": format!("{:?}", s.tag), "before": s.before.labels(), "after": s.after.labels() }))
                            .collect();
                    }
                    writeln!(em.out, "{v}")?;
                }
            }
        }
        Command::CellsReport { radius } => {
            sys.require_hyperbolic_polygon()?;
            let mut counts: std::collections::BTreeMap<CellLabel, usize> = Default::default();
            for x in sys.ball(*radius)?.iter() {
                *counts.entry(crate::cells::classify_left(&sys, x)?).or_default() += 1;
            }
            for (label, n) in &counts {
                let mut v: serde_json::Value = serde_json::from_str(&label.to_json())?;
                v["members"] = json!(n);
                em.emit(format!("{label}: {n}"), &v)?;
            }
        }
        Command::Distinguished { radius } | Command::Hecke(HeckeCommand::Distinguished { radius }) => {
            let mut table = cache.load(&sys)?;
            let ds = distinguished_involutions(&mut table, *radius)?;
            cache.store(&table)?;
            for z in &ds {
                let label = crate::cells::classify_left(&sys, z)?;
                em.emit(
                    format!("{}  ({label})", show(z)),
                    &json!({ "z": labels(z), "length": z.length(), "cell": serde_json::from_str::<serde_json::Value>(&label.to_json())? }),
                )?;
            }
        }
        Command::Hecke(HeckeCommand::FRow { x, y }) => {
            let row = f_row(&sys, &parse_word(&sys, x)?, &parse_word(&sys, y)?);
            em.emit(row.to_string().trim_end(), &row_json(&row))?;
        }
        Command::Hecke(HeckeCommand::GRow { x, y }) => {
            let mut table = cache.load(&sys)?;
            let row = g_row(&mut table, &parse_word(&sys, x)?, &parse_word(&sys, y)?);
            cache.store(&table)?;
            em.emit(row.to_string().trim_end(), &row_json(&row))?;
        }
        Command::Hecke(HeckeCommand::HRow { x, y }) => {
            let mut table = cache.load(&sys)?;
            let row = h_row(&mut table, &parse_word(&sys, x)?, &parse_word(&sys, y)?);
            cache.store(&table)?;
            em.emit(row.to_string().trim_end(), &row_json(&row))?;
        }
        Command::Hecke(HeckeCommand::BoundCheck { radius, n }) => {
            let n = n.unwrap_or_else(|| bound_n(&sys));
            let report = boundedness_check(&sys, *radius, n)?;
            let mut text = format!(
                "N = {n}, radius {radius}: {} ({} pairs, lowest exponent {})",
                if report.passed { "bounded" } else { "FAILED" },
                report.pairs_checked,
                report.min_exponent
            );
            if let Some(w) = &report.witness {
                text.push_str(&format!("\nwitness x={:?} y={:?} z={:?} f={}", w.x, w.y, w.z, w.coeff));
            }
            em.emit(text, &report)?;
            return Ok(if report.passed { 0 } else { 1 });
        }
        Command::Wgraph(cmd) => return wgraph_command(&sys, &cache, cmd, &mut em),
        Command::Verify { radius } => {
            let mut table = cache.load(&sys)?;
            let report = verify_partition(&mut table, *radius)?;
            cache.store(&table)?;
            let mut text = String::new();
            for c in &report.checks {
                text.push_str(&format!(
                    "{} {} ({} checked)\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.checked
                ));
                for ce in &c.counterexamples {
                    text.push_str(&format!("    {ce}\n"));
                }
            }
            text.push_str(&format!(
                "{} elements, {} typeI labels, {} typeII labels, {} two-sided classes",
                report.elements, report.type_i_labels, report.type_ii_labels, report.two_sided_classes
            ));
            em.emit(text, &report)?;
            return Ok(if report.passed() { 0 } else { 1 });
        }
        Command::Tessellate {
            depth,
            out,
            left_cell_hues,
        } => {
            let t = tessellate(&sys, *depth)?;
            let coloring = if *left_cell_hues { Coloring::LeftCells } else { Coloring::TwoSided };
            let svg = render_svg(&t, coloring);
            write_file(out, svg.as_bytes())?;
            let hash = structure_hash(&svg);
            em.emit(
                format!(
                    "{} chambers -> {}\nsha256 {hash}{}",
                    t.chambers.len(),
                    out.display(),
                    if t.truncated { "\nwarning: chambers below drawing resolution" } else { "" }
                ),
                &json!({ "chambers": t.chambers.len(), "out": out, "sha256": hash, "truncated": t.truncated }),
            )?;
        }
    }
    Ok(0)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, bytes)?;
    Ok(())
}

fn wgraph_command<W: Write>(
    sys: &CoxeterSystem,
    cache: &Cache,
    cmd: &WgraphCommand,
    em: &mut Emitter<'_, W>,
) -> Result<i32> {
    let mut table = cache.load(sys)?;
    let code = match cmd {
        WgraphCommand::Export {
            cell,
            depth,
            graph_format,
            out,
        } => {
            let g = build_wgraph(&mut table, &parse_cell(sys, cell)?, *depth)?;
            let bytes = wgraph::export(&g, graph_format.parse()?)?;
            match out {
                Some(p) => {
                    write_file(p, &bytes)?;
                    em.emit(
                        format!("{} vertices, {} edges -> {}", g.vertices().len(), g.edges().len(), p.display()),
                        &json!({ "vertices": g.vertices().len(), "edges": g.edges().len(), "out": p }),
                    )?;
                }
                None => em.out.write_all(&bytes)?,
            }
            0
        }
        WgraphCommand::Check { cell, depth } => {
            let g = build_wgraph(&mut table, &parse_cell(sys, cell)?, *depth)?;
            let report = check_relations(&g);
            let text = format!(
                "{} vertices ({} interior), {} edges\nprofile {:?}\ntree {}  cycles {}\nrelations {} ({} checked, {} violations)",
                g.vertices().len(),
                report.interior_vertices,
                g.edges().len(),
                g.length_profile(),
                is_tree(&g),
                cycle_census(&g),
                if report.passed() { "hold" } else { "FAIL" },
                report.relations_checked,
                report.violations.len()
            );
            em.emit(
                text,
                &json!({
                    "vertices": g.vertices().len(), "edges": g.edges().len(), "profile": g.length_profile(),
                    "tree": is_tree(&g), "cycles": cycle_census(&g), "relations": report,
                }),
            )?;
            i32::from(!report.passed())
        }
        WgraphCommand::Compare { cell, other, depth } => {
            let a = build_wgraph(&mut table, &parse_cell(sys, cell)?, *depth)?;
            let b = build_wgraph(&mut table, &parse_cell(sys, other)?, *depth)?;
            let c = compare(&a, &b);
            let text = format!(
                "profiles {:?} / {:?}\nedges {} / {}\ncycles {} / {}\ncyclic shift {}",
                c.profile_a,
                c.profile_b,
                c.edges_a,
                c.edges_b,
                c.cycles_a,
                c.cycles_b,
                c.cyclic_shift.map_or("none".to_string(), |k| k.to_string())
            );
            em.emit(text, &c)?;
            0
        }
    };
    cache.store(&table)?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(std::iter::once("klcells").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let code = execute(&cli, &mut buf).unwrap();
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn spec_examples() {
        assert_eq!(run_to_string(&["classify", "--polygon", "5", "--word", "1,2,3"]), (0, "typeII d=[2, 3]\n".into()));
        assert_eq!(run_to_string(&["kl", "--polygon", "5", "--y", "", "--w", "4,1,2,4"]), (0, "1 + q\n".into()));
        let (code, _) = run_to_string(&["verify", "--polygon", "5", "--radius", "4"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn json_output() {
        let (_, s) = run_to_string(&["--format", "json", "classify", "--polygon", "5", "--word", "4,1,2,4"]);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["cell"], "typeII");
        assert_eq!(v["d"], json!([4, 1, 2, 4]));
        assert_eq!(v["two_sided"], "twodim");
    }

    #[test]
    fn cell_parsing() {
        let sys = CoxeterSystem::polygon(5).unwrap();
        assert_eq!(parse_cell(&sys, "unit").unwrap(), CellLabel::Unit);
        assert_eq!(parse_cell(&sys, "typeI:3").unwrap().to_string(), "typeI g=3");
        assert_eq!(parse_cell(&sys, "typeII:1,2").unwrap().to_string(), "typeII d=[1, 2]");
        assert!(parse_cell(&sys, "typeI:1,3").is_err());
        assert!(parse_cell(&sys, "other").is_err());
        assert!(parse_word(&sys, "1,x").is_err());
        assert!(parse_word(&sys, "0").is_err());
    }

    #[test]
    fn failing_bound_check_exits_nonzero() {
        let (code, s) = run_to_string(&["hecke", "bound-check", "--polygon", "5", "--radius", "2", "--n", "0"]);
        assert_eq!(code, 1);
        assert!(s.contains("witness"));
    }

    #[test]
    fn missing_group_is_an_error() {
        let cli = Cli::try_parse_from(["klcells", "ball", "--radius", "2"]).unwrap();
        assert!(execute(&cli, &mut Vec::new()).is_err());
        assert_eq!(run(["klcells", "--nonsense"]), 2);
    }
}
