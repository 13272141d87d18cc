use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use deltalens_cli::{export_dot, CliError, FunctorEntry, LensEntry, Workspace};
use deltalens_core::awfs::{
    e_object, enumerate_coalgebra_candidates, free_lens, lift_against_coalgebra,
    validate_l_coalgebra,
};
use deltalens_core::laws::{run_laws, LawScope, Suite};
use deltalens_core::{
    comprehensive_factorise, enumerate_functors, enumerate_lens_structures, j_object,
    orthogonal_lift, CommutingSquare, Guard,
};

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "deltalens",
    version,
    about = "Finite categories, delta lenses and their factorisations"
)]
struct Cli {
    /// Bound on candidate maps in exhaustive searches
    #[arg(long, global = true, default_value_t = 1_000_000)]
    guard: u128,
    /// Workspace file whose categories replace the built-in fixtures
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    /// Seed for the order in which law cases are evaluated
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write JSON or DOT output here instead of stdout
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a workspace file and check every entry
    Validate { file: PathBuf },
    /// Factorise a functor as an initial functor then a discrete opfibration
    Factorise { file: PathBuf, functor: String },
    /// The category Jf and its two legs
    Jf { file: PathBuf, functor: String },
    /// Ef, the functors Lf and Rf, and the free lens on Rf
    FreeLens { file: PathBuf, functor: String },
    /// Diagonal filler for the square right∘top = bottom∘left
    Lift {
        file: PathBuf,
        left: String,
        right: String,
        top: String,
        bottom: String,
        /// Lens on `right`; the left leg then needs an L-coalgebra structure
        #[arg(long)]
        lens: Option<String>,
        /// Name of the diagonal in the output
        #[arg(long, default_value = "diagonal")]
        name: String,
    },
    /// Run the law suites over the corpus
    Laws {
        /// Restrict to these suites (kernel, factorization, lens, semimonad, awfs)
        #[arg(long = "suite", value_parser = parse_suite)]
        suites: Vec<Suite>,
        /// Cap on squares per ordered pair of corpus functors
        #[arg(long)]
        squares_per_pair: Option<usize>,
        /// Also check the laws one level up, on Rf and Lf
        #[arg(long)]
        tower: bool,
        /// Include a fixture with a corrupted composition table
        #[arg(long)]
        broken_fixture: bool,
    },
    /// List every functor between two categories, or every lens on a functor
    Enumerate {
        #[command(subcommand)]
        what: Enumerate,
    },
    /// Graphviz text for a category, functor or lens
    ExportDot { file: PathBuf, entry: String },
}

#[derive(Subcommand)]
enum Enumerate {
    Functors {
        dom: String,
        cod: String,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    Lenses {
        file: PathBuf,
        functor: String,
    },
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| format!("unknown suite `{s}`"))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn base(cli: &Cli) -> Result<Workspace> {
    match &cli.corpus {
        None => Ok(Workspace::default()),
        Some(path) => {
            let ws = Workspace::load(path)?;
            Ok(Workspace::with_corpus(ws.categories.into_iter().collect()))
        }
    }
}

fn load(base: &Workspace, file: &Path) -> Result<Workspace> {
    base.load_into(file)
}

/// Returns whether every law checked held.
fn run(cli: &Cli) -> Result<bool> {
    let guard = Guard(cli.guard);
    let base = base(cli)?;
    match &cli.command {
        Command::Validate { file } => {
            let ws = load(&base, file)?;
            println!(
                "ok: {} categories, {} functors, {} lenses",
                ws.categories.len(),
                ws.functors.len(),
                ws.lenses.len()
            );
        }
        Command::Factorise { file, functor } => {
            let ws = load(&base, file)?;
            let e = ws.functor(functor)?;
            let fac = comprehensive_factorise(&e.functor);
            let mut out = ws.derived();
            out.import_functor(&ws, functor)?;
            let mid = format!("{functor}.mid");
            out.categories.insert(mid.clone(), fac.mid.clone());
            out.functors.insert(
                format!("{functor}.e"),
                FunctorEntry {
                    dom: e.dom.clone(),
                    cod: mid.clone(),
                    functor: fac.e,
                },
            );
            out.functors.insert(
                format!("{functor}.m"),
                FunctorEntry {
                    dom: mid,
                    cod: e.cod.clone(),
                    functor: fac.m,
                },
            );
            emit(&cli.output, &out.to_json())?;
        }
        Command::Jf { file, functor } => {
            let ws = load(&base, file)?;
            let e = ws.functor(functor)?;
            let jf = j_object(&e.functor).map_err(CliError::core(format!("J({functor})")))?;
            let mut out = ws.derived();
            out.import_functor(&ws, functor)?;
            let j = format!("J({functor})");
            out.categories.insert(j.clone(), jf.j.clone());
            // S goes out of the discrete category on the objects of the domain
            let discrete = format!("{}_0", e.dom);
            out.categories.insert(discrete.clone(), jf.s.dom().clone());
            out.functors.insert(
                format!("S({functor})"),
                FunctorEntry {
                    dom: discrete,
                    cod: j.clone(),
                    functor: jf.s,
                },
            );
            out.functors.insert(
                format!("T({functor})"),
                FunctorEntry {
                    dom: j,
                    cod: e.cod.clone(),
                    functor: jf.t,
                },
            );
            emit(&cli.output, &out.to_json())?;
        }
        Command::FreeLens { file, functor } => {
            let ws = load(&base, file)?;
            let e = ws.functor(functor)?;
            let ef = e_object(&e.functor).map_err(CliError::core(format!("E({functor})")))?;
            let mut out = ws.derived();
            out.import_functor(&ws, functor)?;
            let (ename, rname) = (format!("E({functor})"), format!("R({functor})"));
            out.categories.insert(ename.clone(), ef.e.clone());
            out.functors.insert(
                format!("L({functor})"),
                FunctorEntry {
                    dom: e.dom.clone(),
                    cod: ename.clone(),
                    functor: ef.lf.clone(),
                },
            );
            out.functors.insert(
                rname.clone(),
                FunctorEntry {
                    dom: ename,
                    cod: e.cod.clone(),
                    functor: ef.rf.clone(),
                },
            );
            out.lenses.insert(
                format!("free({functor})"),
                LensEntry {
                    functor: rname,
                    lens: free_lens(&ef),
                },
            );
            emit(&cli.output, &out.to_json())?;
        }
        Command::Lift {
            file,
            left,
            right,
            top,
            bottom,
            lens,
            name,
        } => {
            let ws = load(&base, file)?;
            let legs = [left, right, top, bottom].map(|n| ws.functor(n).map(|e| e.functor.clone()));
            let [l, r, t, b] = legs;
            let sq = CommutingSquare::new(l?, r?, t?, b?).map_err(CliError::core("square"))?;
            let d = match lens {
                None => orthogonal_lift(&sq).map_err(CliError::core("orthogonal lift"))?,
                Some(lname) => {
                    let lens = &ws.lens(lname)?.lens;
                    let ef = Arc::new(
                        e_object(sq.left()).map_err(CliError::core(format!("E({left})")))?,
                    );
                    let mut coalgebra = None;
                    for c in enumerate_coalgebra_candidates(&ef, guard)
                        .map_err(CliError::core("coalgebra search"))?
                    {
                        if validate_l_coalgebra(&c)
                            .map_err(CliError::core("coalgebra search"))?
                            .ok()
                        {
                            coalgebra = Some(c);
                            break;
                        }
                    }
                    let c = coalgebra.ok_or_else(|| CliError::Core {
                        context: format!("lift against `{lname}`"),
                        source: deltalens_core::Error::Contract(format!(
                            "`{left}` has no L-coalgebra structure"
                        )),
                    })?;
                    lift_against_coalgebra(&sq, &c, lens).map_err(CliError::core("lift"))?
                }
            };
            let mut out = ws.derived();
            for n in [left, right, top, bottom] {
                out.import_functor(&ws, n)?;
            }
            let (dom, cod) = (
                ws.functor(left)?.cod.clone(),
                ws.functor(right)?.dom.clone(),
            );
            out.functors.insert(
                name.clone(),
                FunctorEntry {
                    dom,
                    cod,
                    functor: d,
                },
            );
            emit(&cli.output, &out.to_json())?;
        }
        Command::Laws {
            suites,
            squares_per_pair,
            tower,
            broken_fixture,
        } => {
            let mut scope = LawScope {
                guard,
                seed: cli.seed,
                tower: *tower,
                broken_fixture: *broken_fixture,
                ..LawScope::default()
            };
            if cli.corpus.is_some() {
                scope.fixtures = base.corpus.clone();
            }
            if !suites.is_empty() {
                scope.suites = suites.clone();
            }
            if let Some(n) = squares_per_pair {
                scope.squares_per_pair = *n;
            }
            let result = run_laws(&scope).map_err(CliError::core("law suite"))?;
            emit(&cli.output, &format!("{result}\n"))?;
            return Ok(result.passed());
        }
        Command::Enumerate {
            what: Enumerate::Functors { dom, cod, file },
        } => {
            let ws = match file {
                Some(f) => load(&base, f)?,
                None => base.clone(),
            };
            let (a, b) = (ws.category(dom)?, ws.category(cod)?);
            let fs = enumerate_functors(a, b, guard)
                .map_err(CliError::core(format!("functors {dom} -> {cod}")))?;
            let mut out = ws.derived();
            out.import_category(&ws, dom)?;
            out.import_category(&ws, cod)?;
            for (i, f) in fs.into_iter().enumerate() {
                out.functors.insert(
                    format!("{dom}->{cod}#{i}"),
                    FunctorEntry {
                        dom: dom.clone(),
                        cod: cod.clone(),
                        functor: f,
                    },
                );
            }
            emit(&cli.output, &out.to_json())?;
        }
        Command::Enumerate {
            what: Enumerate::Lenses { file, functor },
        } => {
            let ws = load(&base, file)?;
            let f = &ws.functor(functor)?.functor;
            let ls = enumerate_lens_structures(f, guard)
                .map_err(CliError::core(format!("lenses on {functor}")))?;
            let mut out = ws.derived();
            out.import_functor(&ws, functor)?;
            for (i, lens) in ls.into_iter().enumerate() {
                out.lenses.insert(
                    format!("{functor}/{i}"),
                    LensEntry {
                        functor: functor.clone(),
                        lens,
                    },
                );
            }
            emit(&cli.output, &out.to_json())?;
        }
        Command::ExportDot { file, entry } => {
            let ws = load(&base, file)?;
            emit(&cli.output, &export_dot(&ws, entry)?)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
