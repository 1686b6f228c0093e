use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use puzzle_cli::families::{family_specs, sweep, FamilyKind};
use puzzle_cli::identify::{check_prefix_len, identification};
use puzzle_cli::oeis::OeisClient;
use puzzle_cli::report::verify;
use puzzle_cli::{CliError, Result};
use puzzle_core::counting::{count_corner_bottom, count_corner_top, count_prefix};
use puzzle_core::sequences::lookup;
use puzzle_core::skeleton::{
    count_linear_extensions, export_dot, generating_skeleton, puzzle_skeleton, BasicSkeleton,
    LINEAR_EXTENSION_MAX_VERTICES,
};
use puzzle_core::theorems::{compose, CompositionQuery, ConverterFamily, ConverterKind};
use puzzle_core::transforms::{compose as compose_maps, t1, t2, t3};
use puzzle_core::{
    count_bruteforce, count_dp, enumerate_puzzles, reduce, Puzzle, StandardPiece, Support,
    SupportMap,
};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "puzzles",
    version,
    about = "Count and verify standard puzzles on a 2 x (n+1) grid"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for cached OEIS responses.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Also query OEIS when identifying sequences.
    #[arg(long, global = true)]
    oeis: bool,
    /// Largest n for prefix computations.
    #[arg(long, global = true)]
    nmax: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Engine {
    Dp,
    Brute,
}

#[derive(Subcommand)]
enum Command {
    /// List the 24 standard pieces.
    Pieces,
    /// Reduce a window `TL,TR,BL,BR` of distinct labels to its standard piece.
    Reduce {
        #[arg(long)]
        window: String,
    },
    /// Apply support maps; repeated maps compose right to left.
    Transform {
        #[arg(long = "map", required = true)]
        maps: Vec<SupportMap>,
        #[arg(long, conflicts_with = "puzzle")]
        support: Option<Support>,
        /// A puzzle such as "3 6 8 7 / 1 2 4 5".
        #[arg(long)]
        puzzle: Option<Puzzle>,
    },
    /// Generating skeleton of a simple support, or check an edge list.
    Skeleton {
        #[arg(long, conflicts_with = "edges")]
        support: Option<Support>,
        /// Edges such as "b->a,d->c,b->c".
        #[arg(long)]
        edges: Option<String>,
        /// Also build the poset of n glued copies.
        #[arg(long)]
        n: Option<usize>,
        /// Write the poset (or basic skeleton) as DOT to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Count puzzles on a support.
    Count {
        #[arg(long)]
        support: Support,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Engine::Dp)]
        engine: Engine,
        /// Restrict the rightmost column: `bottom=x` or `top=x`.
        #[arg(long)]
        corner: Option<String>,
    },
    /// List every puzzle on a support.
    Enumerate {
        #[arg(long)]
        support: Support,
        #[arg(long)]
        n: usize,
    },
    /// Terms of a named sequence.
    Seq {
        #[arg(long)]
        name: String,
        #[arg(long)]
        upto: usize,
    },
    /// Evaluate a converter-family closed form.
    Theorem {
        #[arg(long)]
        id: ConverterFamily,
        #[arg(long)]
        i: u8,
        #[arg(long)]
        n: usize,
        /// Compare with the transfer DP; exit 1 on disagreement.
        #[arg(long)]
        verify: bool,
    },
    /// Count a glued support `P_x + {B_y or C_y} + F1F2(P_z)` from corner refinements.
    Compose {
        #[arg(long)]
        x: u8,
        #[arg(long)]
        y: u8,
        #[arg(long)]
        z: u8,
        #[arg(long, default_value_t = ConverterKind::B)]
        kind: ConverterKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Re-derive the closed forms and identities; exit 1 on any failure.
    Verify {
        /// Claim ids or aliases; repeatable. Omit to run everything.
        #[arg(long = "claim")]
        claims: Vec<String>,
        /// `all` runs every claim.
        #[arg(long)]
        scope: Option<String>,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Match s_1..s_nmax against known sequences.
    Identify {
        #[arg(long)]
        support: Support,
    },
    /// Sweep the simple-piece/converter families.
    Families {
        #[arg(long, value_enum)]
        kind: FamilyKind,
        /// Include the simple piece without a known corner refinement.
        #[arg(long)]
        include_unsolved: bool,
        /// Write rows here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const DEFAULT_VERIFY_NMAX: usize = 3;
const DEFAULT_IDENTIFY_NMAX: usize = 6;
const DEFAULT_FAMILIES_NMAX: usize = 6;

struct Output {
    format: Format,
    sink: Box<dyn Write>,
}

impl Output {
    fn stdout(format: Format) -> Output {
        Output {
            format,
            sink: Box::new(BufWriter::new(io::stdout().lock())),
        }
    }

    fn file(format: Format, path: &Path) -> Result<Output> {
        Ok(Output {
            format,
            sink: Box::new(BufWriter::new(File::create(path)?)),
        })
    }

    /// One JSON document, or the CSV rows.
    fn emit<J: Serialize, R: Serialize>(
        &mut self,
        json: &J,
        rows: impl IntoIterator<Item = R>,
    ) -> Result<()> {
        match self.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut self.sink, json)?;
                writeln!(self.sink)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut self.sink);
                for r in rows {
                    w.serialize(r)?;
                }
                w.flush()?;
            }
        }
        self.sink.flush()?;
        Ok(())
    }

    fn emit_one<T: Serialize>(&mut self, record: &T) -> Result<()> {
        self.emit(record, [record])
    }
}

fn text(v: &BigUint) -> String {
    v.to_string()
}

fn support_text(s: Support) -> String {
    s.codes().join(",")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Some(k) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let g = cli.global;
    let mut out = Output::stdout(g.format);
    match cli.command {
        Command::Pieces => pieces(&mut out),
        Command::Reduce { window } => reduce_window(&mut out, &window),
        Command::Transform {
            maps,
            support,
            puzzle,
        } => transform(&mut out, &maps, support, puzzle),
        Command::Skeleton {
            support,
            edges,
            n,
            dot,
        } => skeleton(&mut out, support, edges, n, dot),
        Command::Count {
            support,
            n,
            engine,
            corner,
        } => count(&mut out, support, n, engine, corner),
        Command::Enumerate { support, n } => enumerate(&mut out, support, n),
        Command::Seq { name, upto } => seq(&mut out, &name, upto),
        Command::Theorem { id, i, n, verify } => theorem(&mut out, id, i, n, verify),
        Command::Compose {
            x,
            y,
            z,
            kind,
            n,
            verify,
        } => compose_cmd(&mut out, CompositionQuery::new(x, y, kind, z, n)?, verify),
        Command::Verify {
            claims,
            scope,
            list,
        } => verify_cmd(
            &mut out,
            claims,
            scope,
            list,
            g.nmax.unwrap_or(DEFAULT_VERIFY_NMAX),
        ),
        Command::Identify { support } => identify(
            &mut out,
            support,
            g.nmax.unwrap_or(DEFAULT_IDENTIFY_NMAX),
            g.oeis.then(|| OeisClient::from_env(g.cache_dir)),
        ),
        Command::Families {
            kind,
            include_unsolved,
            out: path,
        } => {
            let mut out = match path {
                Some(p) => Output::file(g.format, &p)?,
                None => out,
            };
            families(
                &mut out,
                kind,
                include_unsolved,
                g.nmax.unwrap_or(DEFAULT_FAMILIES_NMAX),
            )
        }
    }
}

#[derive(Serialize)]
struct PieceRow {
    code: String,
    class: char,
    index: u8,
    han_letter: char,
    /// Ranks at `TL TR BL BR`.
    grid: String,
}

fn pieces(out: &mut Output) -> Result<u8> {
    let rows: Vec<PieceRow> = StandardPiece::all()
        .map(|p| PieceRow {
            code: p.code(),
            class: p.class().letter(),
            index: p.index(),
            han_letter: p.han_letter(),
            grid: p.grid().map(|v| v.to_string()).join(" "),
        })
        .collect();
    out.emit(&rows, &rows)?;
    Ok(0)
}

#[derive(Serialize)]
struct ReduceRecord {
    window: String,
    piece: String,
}

fn reduce_window(out: &mut Output, window: &str) -> Result<u8> {
    let labels: Vec<u32> = window
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Usage(format!("not a label: {t}")))
        })
        .collect::<Result<_>>()?;
    let quad: [u32; 4] = labels
        .try_into()
        .map_err(|_| CliError::Usage("a window has exactly four labels".into()))?;
    let p = reduce(quad)?;
    out.emit_one(&ReduceRecord {
        window: quad.map(|v| v.to_string()).join(","),
        piece: p.code(),
    })?;
    Ok(0)
}

#[derive(Serialize)]
struct TransformRecord {
    maps: String,
    input: String,
    image: String,
}

fn transform(
    out: &mut Output,
    maps: &[SupportMap],
    support: Option<Support>,
    puzzle: Option<Puzzle>,
) -> Result<u8> {
    let names = maps
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let record = match (support, puzzle) {
        (Some(s), None) => TransformRecord {
            maps: names,
            input: support_text(s),
            image: support_text(compose_maps(maps, s)),
        },
        (None, Some(p)) => {
            let image = maps.iter().rev().fold(p.clone(), |acc, m| match m {
                SupportMap::F1 => t1(&acc),
                SupportMap::F2 => t2(&acc),
                SupportMap::F3 => t3(&acc),
            });
            TransformRecord {
                maps: names,
                input: p.to_string(),
                image: image.to_string(),
            }
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --support or --puzzle".into(),
            ))
        }
    };
    out.emit_one(&record)?;
    Ok(0)
}

#[derive(Serialize)]
struct SkeletonRecord {
    support: Option<String>,
    skeleton: Option<String>,
    class: Option<u8>,
    simple_piece: Option<String>,
    n: Option<usize>,
    vertices: Vec<String>,
    edges: Vec<String>,
    linear_extensions: Option<String>,
}

#[derive(Serialize)]
struct SkeletonCsvRow<'a> {
    support: &'a str,
    skeleton: &'a str,
    class: Option<u8>,
    simple_piece: &'a str,
    n: Option<usize>,
    edges: String,
    linear_extensions: &'a str,
}

fn skeleton(
    out: &mut Output,
    support: Option<Support>,
    edges: Option<String>,
    n: Option<usize>,
    dot: Option<PathBuf>,
) -> Result<u8> {
    let basic: BasicSkeleton = match (&support, &edges) {
        (Some(s), None) => generating_skeleton(*s)?,
        (None, Some(e)) => e.parse()?,
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --support or --edges".into(),
            ))
        }
    };
    let piece = basic.simple_piece();
    let mut record = SkeletonRecord {
        support: support.map(support_text),
        skeleton: Some(basic.to_string()),
        class: basic.classify(),
        simple_piece: Some(support_text(piece)),
        n,
        vertices: basic.graph().vertices().to_vec(),
        edges: Vec::new(),
        linear_extensions: None,
    };
    let graph = match n {
        Some(n) => {
            let poset = puzzle_skeleton(piece, n)?;
            if poset.graph().vertices().len() <= LINEAR_EXTENSION_MAX_VERTICES {
                record.linear_extensions = Some(text(&count_linear_extensions(poset.graph())?));
            }
            poset.graph().clone()
        }
        None => basic.graph().clone(),
    };
    record.vertices = graph.vertices().to_vec();
    record.edges = graph
        .edges()
        .map(|(f, t)| format!("{}->{}", graph.vertices()[f], graph.vertices()[t]))
        .collect();
    if let Some(path) = dot {
        std::fs::write(path, export_dot(&graph))?;
    }
    let row = SkeletonCsvRow {
        support: record.support.as_deref().unwrap_or(""),
        skeleton: record.skeleton.as_deref().unwrap_or(""),
        class: record.class,
        simple_piece: record.simple_piece.as_deref().unwrap_or(""),
        n: record.n,
        edges: record.edges.join(";"),
        linear_extensions: record.linear_extensions.as_deref().unwrap_or(""),
    };
    out.emit(&record, [row])?;
    Ok(0)
}

#[derive(Serialize)]
struct CountRecord {
    support: String,
    n: usize,
    engine: Engine,
    corner: Option<String>,
    count: String,
}

fn count(
    out: &mut Output,
    support: Support,
    n: usize,
    engine: Engine,
    corner: Option<String>,
) -> Result<u8> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let value = match &corner {
        None => match engine {
            Engine::Dp => count_dp(support, n)?,
            Engine::Brute => count_bruteforce(support, n)?,
        },
        Some(spec) => {
            if engine == Engine::Brute {
                return Err(CliError::Usage("--corner uses the dp engine".into()));
            }
            let bad = || CliError::Usage(format!("--corner expects bottom=x or top=x, got {spec}"));
            let (side, x) = spec.split_once('=').ok_or_else(bad)?;
            let x: usize = x.trim().parse().map_err(|_| bad())?;
            match side.trim() {
                "bottom" => count_corner_bottom(support, n, x)?,
                "top" => count_corner_top(support, n, x)?,
                _ => return Err(bad()),
            }
        }
    };
    out.emit_one(&CountRecord {
        support: support_text(support),
        n,
        engine,
        corner,
        count: text(&value),
    })?;
    Ok(0)
}

#[derive(Serialize)]
struct PuzzleJson<'a> {
    top: &'a [u32],
    bottom: &'a [u32],
}

#[derive(Serialize)]
struct PuzzleCsv {
    top: String,
    bottom: String,
}

fn row_text(r: &[u32]) -> String {
    r.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn enumerate(out: &mut Output, support: Support, n: usize) -> Result<u8> {
    let all = enumerate_puzzles(support, n)?;
    let json: Vec<PuzzleJson> = all
        .iter()
        .map(|p| PuzzleJson {
            top: p.top(),
            bottom: p.bottom(),
        })
        .collect();
    let rows = all.iter().map(|p| PuzzleCsv {
        top: row_text(p.top()),
        bottom: row_text(p.bottom()),
    });
    out.emit(&json, rows)?;
    Ok(0)
}

#[derive(Serialize)]
struct SeqRecord {
    name: &'static str,
    oeis: Option<&'static str>,
    offset: usize,
    terms: Vec<String>,
}

#[derive(Serialize)]
struct SeqCsvRow {
    name: &'static str,
    k: usize,
    term: String,
}

fn seq(out: &mut Output, name: &str, upto: usize) -> Result<u8> {
    let s = lookup(name)?;
    let terms: Vec<String> = s.prefix(upto).iter().map(text).collect();
    let rows: Vec<SeqCsvRow> = terms
        .iter()
        .enumerate()
        .map(|(i, t)| SeqCsvRow {
            name: s.name,
            k: s.offset + i,
            term: t.clone(),
        })
        .collect();
    out.emit(
        &SeqRecord {
            name: s.name,
            oeis: s.oeis,
            offset: s.offset,
            terms,
        },
        rows,
    )?;
    Ok(0)
}

#[derive(Serialize)]
struct TheoremRecord {
    id: &'static str,
    support: String,
    i: u8,
    n: usize,
    value: String,
    dp: Option<String>,
    agree: Option<bool>,
}

fn theorem(out: &mut Output, id: ConverterFamily, i: u8, n: usize, check: bool) -> Result<u8> {
    let support = id.support(i)?;
    let value = id.value(i, n)?;
    let dp = check.then(|| count_dp(support, n)).transpose()?;
    let agree = dp.as_ref().map(|d| *d == value);
    out.emit_one(&TheoremRecord {
        id: id.alias(),
        support: support_text(support),
        i,
        n,
        value: text(&value),
        dp: dp.as_ref().map(text),
        agree,
    })?;
    Ok(if agree == Some(false) { 1 } else { 0 })
}

#[derive(Serialize)]
struct ComposeRecord {
    x: u8,
    y: u8,
    z: u8,
    kind: String,
    n: usize,
    support: String,
    value: String,
    dp: Option<String>,
    agree: Option<bool>,
}

fn compose_cmd(out: &mut Output, q: CompositionQuery, check: bool) -> Result<u8> {
    let value = compose(&q)?;
    let support = q.support();
    let dp = check.then(|| count_dp(support, q.n)).transpose()?;
    let agree = dp.as_ref().map(|d| *d == value);
    out.emit_one(&ComposeRecord {
        x: q.x.x(),
        y: q.y,
        z: q.z.x(),
        kind: q.kind.to_string(),
        n: q.n,
        support: support_text(support),
        value: text(&value),
        dp: dp.as_ref().map(text),
        agree,
    })?;
    Ok(if agree == Some(false) { 1 } else { 0 })
}

#[derive(Serialize)]
struct ClaimIdRow {
    id: &'static str,
}

fn verify_cmd(
    out: &mut Output,
    claims: Vec<String>,
    scope: Option<String>,
    list: bool,
    nmax: usize,
) -> Result<u8> {
    if list {
        let ids: Vec<ClaimIdRow> = puzzle_cli::report::claim_ids()
            .into_iter()
            .map(|id| ClaimIdRow { id })
            .collect();
        out.emit(&ids, &ids)?;
        return Ok(0);
    }
    match scope.as_deref() {
        None | Some("all") => {}
        Some(other) => {
            return Err(CliError::Usage(format!(
                "unknown scope {other}; use `all` or --claim"
            )))
        }
    }
    let names = if scope.is_some() { Vec::new() } else { claims };
    let report = verify(&names, nmax)?;
    out.emit(&report, report.claims.iter().map(|c| c.csv()))?;
    Ok(if report.has_failures() { 1 } else { 0 })
}

#[derive(Serialize)]
struct MatchCsvRow<'a> {
    support: &'a str,
    prefix: String,
    source: &'a str,
    label: &'a str,
    oeis: &'a str,
    offset: Option<usize>,
    factor: &'a str,
}

fn identify(
    out: &mut Output,
    support: Support,
    nmax: usize,
    client: Option<OeisClient>,
) -> Result<u8> {
    check_prefix_len(nmax)?;
    let prefix = count_prefix(support, nmax);
    let entries = client.map(|c| c.lookup(&prefix)).transpose()?;
    let report = identification(support_text(support), &prefix, entries.as_deref());
    let joined = report.prefix.join(";");
    let mut rows: Vec<MatchCsvRow> = report
        .matches
        .iter()
        .map(|m| MatchCsvRow {
            support: &report.support,
            prefix: joined.clone(),
            source: match m.source {
                puzzle_cli::identify::MatchSource::Registry => "registry",
                puzzle_cli::identify::MatchSource::Oeis => "oeis",
            },
            label: &m.label,
            oeis: m.oeis.as_deref().unwrap_or(""),
            offset: m.offset,
            factor: m.factor.as_deref().unwrap_or(""),
        })
        .collect();
    if let (true, Some(note)) = (rows.is_empty(), &report.note) {
        rows.push(MatchCsvRow {
            support: &report.support,
            prefix: joined.clone(),
            source: "",
            label: note,
            oeis: "",
            offset: None,
            factor: "",
        });
    }
    out.emit(&report, rows)?;
    Ok(0)
}

fn families(out: &mut Output, kind: FamilyKind, include_unsolved: bool, nmax: usize) -> Result<u8> {
    if nmax == 0 {
        return Err(CliError::Usage("nmax must be at least 1".into()));
    }
    let specs = family_specs(kind, include_unsolved);
    let summary = match out.format {
        Format::Json => {
            let sink = &mut out.sink;
            writeln!(sink, "[")?;
            let mut first = true;
            let summary = sweep(&specs, nmax, |row| {
                if !first {
                    writeln!(sink, ",")?;
                }
                first = false;
                serde_json::to_writer(&mut *sink, &row)?;
                Ok(())
            })?;
            writeln!(sink, "\n]")?;
            summary
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out.sink);
            let summary = sweep(&specs, nmax, |row| Ok(w.serialize(row.csv())?))?;
            w.flush()?;
            summary
        }
    };
    out.sink.flush()?;
    log::info!(
        "{} families over {} distinct supports",
        summary.families,
        summary.distinct_supports
    );
    Ok(0)
}
