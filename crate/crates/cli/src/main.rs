use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use zha::cube::{
    countermodel_search, node_eval, separating_valuation_search, simplified_cube,
    theorem_preorder, Connective, CubeNode, SearchOutcome,
};
use zha::nucleus::{derived_rule_suite, j_regions};
use zha::poly::{eval_poly, named_operator, parse_poly, slashing_to_polynomial, tabulate_poly};
use zha::{
    check_j123, parse_2cg, questions_from_slashing, recognize_slash_operator,
    slashing_from_questions, OperatorTable, Slashing, TwoColumnGraph, Zha, ZhaElement,
};
use zha_cli::{default_path, render_graph, render_path_table, render_zha, RenderConfig, TableStyle};
use zha_topos::{
    chi, closure, inclusion_from_questions, local_operator, local_operator_laws, omega,
    open_to_element, pile_open, poset_from_2cg, restrict_to_sub1, sheafify, sub_one_from_table,
    table_from_sub_one, parse_psh, write_psh, Presheaf, Subfunctor,
};

/// Planar Heyting algebras, slashings, J-operators, and their topos.
#[derive(Parser)]
#[command(name = "zhatool", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattices from two-column graph files.
    #[command(subcommand)]
    Zha(ZhaCmd),
    /// Slashings and question marks.
    #[command(subcommand)]
    Slash(SlashCmd),
    /// J-operator checks on explicit tables.
    #[command(subcommand)]
    Jop(JopCmd),
    /// Polynomial operators.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Connective cube reports.
    #[command(subcommand)]
    Cube(CubeCmd),
    /// The presheaf topos of a graph.
    #[command(subcommand)]
    Topos(ToposCmd),
}

#[derive(Subcommand)]
enum ZhaCmd {
    /// Render the lattice of a graph file.
    #[command(name = "from-2cg")]
    From2cg {
        file: PathBuf,
        /// Draw the cuts of the slashing induced by the file's questions.
        #[arg(long)]
        cuts: bool,
        /// Also print the question set.
        #[arg(long)]
        questions: bool,
    },
    /// Show the pile of a digit pair and whether it is open.
    Open { file: PathBuf, element: String },
}

#[derive(Subcommand)]
enum SlashCmd {
    /// The slashing induced by the file's question marks.
    Show { file: PathBuf },
    /// The question set of a slashing.
    Questions {
        file: PathBuf,
        #[arg(long)]
        slashing: String,
    },
    /// The step table of a bottom-to-top path.
    Table {
        file: PathBuf,
        /// Comma-separated digit pairs; defaults to the northeast-first path.
        #[arg(long)]
        path: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Decide whether an operator table is a slash-operator.
    Recognize {
        file: PathBuf,
        /// Operator table file, one `ab -> cd` line per element.
        #[arg(long)]
        table: PathBuf,
    },
}

#[derive(Args)]
struct OperatorSource {
    /// Operator table file, one `ab -> cd` line per element.
    #[arg(long, conflicts_with = "poly")]
    table: Option<PathBuf>,
    /// Polynomial expression, e.g. `(v 22)` or `!!P`.
    #[arg(long)]
    poly: Option<String>,
}

impl OperatorSource {
    fn load(&self, host: &Zha) -> Result<OperatorTable> {
        match (&self.table, &self.poly) {
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(OperatorTable::parse(host, &text)?)
            }
            (None, Some(expr)) => Ok(tabulate_poly(&parse_poly(expr)?, host)?),
            _ => bail!("exactly one of --table or --poly is required"),
        }
    }
}

#[derive(Subcommand)]
enum JopCmd {
    /// Check the three axioms.
    Check {
        file: PathBuf,
        #[command(flatten)]
        source: OperatorSource,
    },
    /// Check the derived rules of an operator passing the axioms.
    Rules {
        file: PathBuf,
        #[command(flatten)]
        source: OperatorSource,
    },
    /// Print the regions of an operator passing the axioms.
    Regions {
        file: PathBuf,
        #[command(flatten)]
        source: OperatorSource,
    },
    /// Enumerate every J-operator on the lattice.
    Enumerate {
        file: PathBuf,
        /// Largest lattice size the enumeration accepts.
        #[arg(long, default_value_t = zha::nucleus::ENUMERATION_GUARD)]
        guard: usize,
    },
}

#[derive(Args)]
struct HostArg {
    /// Graph file for the host lattice.
    #[arg(long, conflicts_with = "grid")]
    file: Option<PathBuf>,
    /// Full grid heights, e.g. `--grid 4 4`.
    #[arg(long, num_args = 2, value_names = ["L", "R"])]
    grid: Option<Vec<usize>>,
}

impl HostArg {
    fn load(&self) -> Result<Zha> {
        match (&self.file, &self.grid) {
            (Some(path), None) => Ok(Zha::from_2cg(&load_graph(path)?)),
            (None, Some(dims)) => Ok(Zha::grid(dims[0], dims[1])),
            _ => bail!("exactly one of --file or --grid is required"),
        }
    }
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Decide whether a polynomial is a J-operator on the host.
    Check {
        expr: String,
        #[command(flatten)]
        host: HostArg,
    },
    /// Evaluate a polynomial at a point.
    Eval {
        expr: String,
        #[arg(long)]
        at: String,
        #[command(flatten)]
        host: HostArg,
    },
    /// Tabulate a named operator: neg_neg, or_const, imp_const,
    /// imp_imp_const, forcing, or mixed.
    Named {
        kind: String,
        constants: Vec<String>,
        #[command(flatten)]
        host: HostArg,
    },
    /// The polynomial of a slashing.
    FromSlashing {
        /// Graph file; without --slashing, its questions induce the slashing.
        file: PathBuf,
        #[arg(long)]
        slashing: Option<String>,
    },
}

#[derive(Subcommand)]
enum CubeCmd {
    /// Classes, covering edges, a separating model, and countermodels.
    Report {
        #[arg(long, value_enum)]
        connective: ConnArg,
        /// Largest column height searched.
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum ToposCmd {
    /// The classifier fibers of the graph's poset.
    Omega { file: PathBuf },
    /// The local operator induced by the file's questions.
    J { file: PathBuf },
    /// Close a truth value inside another under the file's local operator.
    Closure {
        file: PathBuf,
        #[arg(long)]
        sub: String,
        #[arg(long)]
        of: String,
    },
    /// Sheafify a presheaf along the erasure of the file's questions.
    Sheafify { file: PathBuf, presheaf: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConnArg {
    And,
    Or,
    Imp,
}

impl From<ConnArg> for Connective {
    fn from(c: ConnArg) -> Connective {
        match c {
            ConnArg::And => Connective::And,
            ConnArg::Or => Connective::Or,
            ConnArg::Imp => Connective::Imp,
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<TwoColumnGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_2cg(&text)?)
}

fn parse_element(tok: &str) -> Result<ZhaElement> {
    Ok(ZhaElement::parse(tok)?)
}

fn main() -> ExitCode {
    // die quietly when the reading end of a pipe goes away
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Zha(cmd) => run_zha(cmd),
        Command::Slash(cmd) => run_slash(cmd),
        Command::Jop(cmd) => run_jop(cmd),
        Command::Poly(cmd) => run_poly(cmd),
        Command::Cube(cmd) => run_cube(cmd),
        Command::Topos(cmd) => run_topos(cmd),
    }
}

fn run_zha(cmd: ZhaCmd) -> Result<()> {
    match cmd {
        ZhaCmd::From2cg {
            file,
            cuts,
            questions,
        } => {
            let g = load_graph(&file)?;
            let config = RenderConfig {
                style: TableStyle::Ascii,
                show_cuts: cuts,
                show_questions: questions,
            };
            print!("{}", render_graph(&g, config));
        }
        ZhaCmd::Open { file, element } => {
            let g = load_graph(&file)?;
            let e = parse_element(&element)?;
            let pile = g.pile(e.a, e.b)?;
            let glyphs: Vec<String> = pile.iter().map(|p| p.display_glyph()).collect();
            println!("pile({}) = {{{}}}", e.token(), glyphs.join(", "));
            println!(
                "open: {}",
                if g.is_open(&pile) { "yes" } else { "no" }
            );
        }
    }
    Ok(())
}

fn run_slash(cmd: SlashCmd) -> Result<()> {
    match cmd {
        SlashCmd::Show { file } => {
            let g = load_graph(&file)?;
            let s = slashing_from_questions(&g);
            println!("slashing: {}", s.text());
            println!("display:  {}", s.display());
            print!("{}", render_zha(s.host(), Some(&s)));
        }
        SlashCmd::Questions { file, slashing } => {
            let g = load_graph(&file)?;
            let host = Zha::from_2cg(&g);
            let s = Slashing::parse(&host, &slashing)?;
            let q = questions_from_slashing(&g, &s)?;
            let glyphs: Vec<String> = q.iter().map(|p| p.to_string()).collect();
            println!("questions {}", glyphs.join(" "));
        }
        SlashCmd::Table { file, path, format } => {
            let g = load_graph(&file)?;
            let host = Zha::from_2cg(&g);
            let steps: Vec<ZhaElement> = match path {
                Some(spec) => spec
                    .split(',')
                    .map(|t| parse_element(t.trim()))
                    .collect::<Result<_>>()?,
                None => default_path(&host),
            };
            let style = match format {
                Format::Ascii => TableStyle::Ascii,
                Format::Tsv => TableStyle::Tsv,
            };
            print!("{}", render_path_table(&g, &steps, style)?);
        }
        SlashCmd::Recognize { file, table } => {
            let g = load_graph(&file)?;
            let host = Zha::from_2cg(&g);
            let text = fs::read_to_string(&table)
                .with_context(|| format!("reading {}", table.display()))?;
            let t = OperatorTable::parse(&host, &text)?;
            match recognize_slash_operator(&t) {
                Ok(s) => {
                    println!("slash-operator: yes");
                    println!("slashing: {}", s.text());
                }
                Err(rejection) => {
                    println!("slash-operator: no ({rejection})");
                }
            }
        }
    }
    Ok(())
}

fn run_jop(cmd: JopCmd) -> Result<()> {
    match cmd {
        JopCmd::Check { file, source } => {
            let host = Zha::from_2cg(&load_graph(&file)?);
            let t = source.load(&host)?;
            println!("{}", check_j123(&t).describe());
        }
        JopCmd::Rules { file, source } => {
            let host = Zha::from_2cg(&load_graph(&file)?);
            let t = source.load(&host)?;
            let verdict = check_j123(&t);
            if !verdict.passed() {
                bail!(verdict.describe());
            }
            let report = derived_rule_suite(&t);
            println!("monotone: {}", verdict_word(report.monotone));
            println!("sandwich: {}", verdict_word(report.sandwich));
            println!("classes closed under meet: {}", verdict_word(report.classes_closed_meet));
            println!("classes closed under join: {}", verdict_word(report.classes_closed_join));
            println!(
                "classes closed under sandwiching: {}",
                verdict_word(report.classes_closed_sandwich)
            );
        }
        JopCmd::Regions { file, source } => {
            let host = Zha::from_2cg(&load_graph(&file)?);
            let t = source.load(&host)?;
            let regions = j_regions(&t)?;
            for block in regions.blocks() {
                let lo = block.iter().fold(block[0], |acc, e| acc.meet(e));
                let hi = block.iter().fold(block[0], |acc, e| acc.join(e));
                let members: Vec<String> = block.iter().map(|e| e.token()).collect();
                println!("[{}, {}]: {}", lo.token(), hi.token(), members.join(" "));
            }
        }
        JopCmd::Enumerate { file, guard } => {
            let host = Zha::from_2cg(&load_graph(&file)?);
            let ops = zha::nucleus::enumerate_j_operators_with_guard(&host, guard)?;
            println!("{} J-operators", ops.len());
            for t in &ops {
                let s = recognize_slash_operator(t)
                    .map_err(|r| anyhow!("enumerated operator is not a slash-operator: {r}"))?;
                println!("{}", s.text());
            }
        }
    }
    Ok(())
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "FAILS"
    }
}

fn run_poly(cmd: PolyCmd) -> Result<()> {
    match cmd {
        PolyCmd::Check { expr, host } => {
            let host = host.load()?;
            let table = tabulate_poly(&parse_poly(&expr)?, &host)?;
            println!("{}", check_j123(&table).describe());
        }
        PolyCmd::Eval { expr, at, host } => {
            let host = host.load()?;
            let e = parse_poly(&expr)?;
            let p = parse_element(&at)?;
            println!("{}", eval_poly(&e, &host, p)?.token());
        }
        PolyCmd::Named {
            kind,
            constants,
            host,
        } => {
            let host = host.load()?;
            let consts: Vec<ZhaElement> = constants
                .iter()
                .map(|t| parse_element(t))
                .collect::<Result<_>>()?;
            let table = named_operator(&kind, &consts, &host)?;
            print!("{}", table.text());
        }
        PolyCmd::FromSlashing { file, slashing } => {
            let g = load_graph(&file)?;
            let host = Zha::from_2cg(&g);
            let s = match slashing {
                Some(text) => Slashing::parse(&host, &text)?,
                None => slashing_from_questions(&g),
            };
            let poly = slashing_to_polynomial(&s);
            println!("{}", poly.text());
            let matches = tabulate_poly(&poly, &host)? == s.to_table();
            println!(
                "tabulates to the slash-operator: {}",
                if matches { "yes" } else { "NO" }
            );
        }
    }
    Ok(())
}

fn run_cube(cmd: CubeCmd) -> Result<()> {
    let CubeCmd::Report { connective, bound } = cmd;
    let conn: Connective = connective.into();
    let thm = theorem_preorder(conn);
    let simplified = simplified_cube(conn);
    println!("cube: {}", conn.name());
    println!("classes:");
    for (i, class) in simplified.classes.iter().enumerate() {
        let names: Vec<String> = class
            .iter()
            .map(|&b| CubeNode::new(conn, b).unwrap().text())
            .collect();
        println!("  {}: {}", i, names.join(" = "));
    }
    println!("covering edges:");
    for &(lo, hi) in &simplified.edges {
        println!("  {lo} -> {hi}");
    }
    match separating_valuation_search(conn, bound) {
        SearchOutcome::Found(m) => println!("separating model: {}", m.describe()),
        SearchOutcome::Exhausted => println!("separating model: none within bound {bound}"),
    }
    println!("countermodels:");
    for (i, j) in thm.non_pairs() {
        let ni = CubeNode::new(conn, i).unwrap();
        let nj = CubeNode::new(conn, j).unwrap();
        match countermodel_search(conn, i, j, bound)? {
            SearchOutcome::Found(m) => {
                let vi = node_eval(ni, &m);
                let vj = node_eval(nj, &m);
                println!(
                    "  {} !<= {}: {} gives {} !<= {}",
                    ni.text(),
                    nj.text(),
                    m.describe(),
                    vi.token(),
                    vj.token()
                );
            }
            SearchOutcome::Exhausted => {
                println!("  {} !<= {}: no countermodel within bound {bound}", ni.text(), nj.text());
            }
        }
    }
    Ok(())
}

fn run_topos(cmd: ToposCmd) -> Result<()> {
    match cmd {
        ToposCmd::Omega { file } => {
            let g = load_graph(&file)?;
            let poset = poset_from_2cg(&g)?;
            let om = omega(&poset);
            for p in poset.points() {
                let labels: Vec<String> = (0..om.fiber_size(p))
                    .map(|idx| {
                        open_to_element(&g, om.open_at(p, idx))
                            .map(|e| e.token())
                            .unwrap_or_else(|| poset.render_point_set(om.open_at(p, idx)))
                    })
                    .collect();
                println!("Omega({}): {}", poset.name(p), labels.join(" "));
            }
        }
        ToposCmd::J { file } => {
            let g = load_graph(&file)?;
            let poset = poset_from_2cg(&g)?;
            let om = omega(&poset);
            let s = slashing_from_questions(&g);
            let op = sub_one_from_table(&g, &s.to_table())?;
            let j = local_operator(&om, &op)?;
            let laws = local_operator_laws(&om, &j);
            for p in poset.points() {
                let entries: Vec<String> = (0..om.fiber_size(p))
                    .map(|idx| {
                        let from = open_to_element(&g, om.open_at(p, idx))
                            .map(|e| e.token())
                            .unwrap_or_default();
                        let to = open_to_element(&g, om.open_at(p, j.apply(p, idx)))
                            .map(|e| e.token())
                            .unwrap_or_default();
                        format!("{from}->{to}")
                    })
                    .collect();
                println!("j({}): {}", poset.name(p), entries.join(" "));
            }
            println!(
                "laws: truth {}, idempotent {}, meet {}",
                verdict_word(laws.preserves_truth),
                verdict_word(laws.idempotent),
                verdict_word(laws.preserves_meet)
            );
            // round trip back to the lattice
            let back = table_from_sub_one(&g, &restrict_to_sub1(&om, &j))?;
            println!(
                "restriction to the logic recovers the slash-operator: {}",
                if back == s.to_table() { "yes" } else { "NO" }
            );
        }
        ToposCmd::Closure { file, sub, of } => {
            let g = load_graph(&file)?;
            let host = Zha::from_2cg(&g);
            let b = parse_element(&sub)?;
            let c = parse_element(&of)?;
            host.check_member(b)?;
            host.check_member(c)?;
            if !b.leq(&c) {
                bail!("{} is not below {}", b.token(), c.token());
            }
            let poset = poset_from_2cg(&g)?;
            let om = omega(&poset);
            let s = slashing_from_questions(&g);
            let op = sub_one_from_table(&g, &s.to_table())?;
            let j = local_operator(&om, &op)?;
            let host_presheaf = Presheaf::subterminal(&poset, &pile_open(&g, c))?;
            let keep = poset
                .points()
                .map(|p| {
                    if pile_open(&g, b).contains(&p) {
                        [0].into()
                    } else {
                        BTreeSet::new()
                    }
                })
                .collect();
            let sub_obj = Subfunctor::new(&host_presheaf, keep)?;
            let chi_b = chi(&host_presheaf, &sub_obj, &om)?;
            for p in poset.points() {
                if host_presheaf.fiber_size(p) == 0 {
                    continue;
                }
                let value = open_to_element(&g, om.open_at(p, chi_b.apply(p, 0)))
                    .map(|e| e.token())
                    .unwrap_or_default();
                println!("chi({}) = {}", poset.name(p), value);
            }
            let closed = closure(&host_presheaf, &sub_obj, &om, &j)?;
            let support: BTreeSet<usize> =
                poset.points().filter(|&p| closed.contains(p, 0)).collect();
            let as_element = open_to_element(&g, &support)
                .ok_or_else(|| anyhow!("closure support is not a pile"))?;
            println!(
                "closure of {} in {}: {}",
                b.token(),
                c.token(),
                as_element.token()
            );
        }
        ToposCmd::Sheafify { file, presheaf } => {
            let g = load_graph(&file)?;
            let (big, inc) = inclusion_from_questions(&g)?;
            let text = fs::read_to_string(&presheaf)
                .with_context(|| format!("reading {}", presheaf.display()))?;
            let c = parse_psh(&big, &text)?;
            let sheaf = sheafify(&inc, &c)?;
            print!("{}", write_psh(&sheaf.presheaf));
        }
    }
    Ok(())
}
