mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fodef::automata::{emit_automaton, parse_automaton, ParseOptions};
use fodef::definability::{classify, classify_checked, Logic};
use fodef::hardness::{build_cycle_gadget, build_instance, verify_gadget_lemmas, GadgetVariant, TuringMachine};
use fodef::monoid::{is_aperiodic, syntactic_monoid, DEFAULT_CAP};
use fodef::{two_nfa, Automaton, Dfa, Error};

#[derive(Parser)]
#[command(name = "fodef", version, about = "Classify regular languages by first-order definability")]
struct Cli {
    /// Element cap for monoid, orbit and group closures.
    #[arg(long, global = true, env = "FODEF_MONOID_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Place a language in FO(<) ⊂ FO(<,≡) ⊂ FO(<,MOD), with witnesses.
    Classify(ClassifyArgs),
    /// Print the minimal DFA.
    Minimize(InputArgs),
    /// Summarize the syntactic monoid.
    Monoid {
        #[command(flatten)]
        input: InputArgs,
        /// List every element with its shortlex witness word.
        #[arg(long)]
        elements: bool,
    },
    /// Convert an NFA or 2NFA to a DFA.
    Determinize(InputArgs),
    /// Print only the witnesses.
    Witness {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = LogicArg::All)]
        logic: LogicArg,
    },
    /// Generate gadget automata or a Turing machine reduction instance.
    Gen(GenArgs),
    /// Check the group-theoretic facts behind the gadgets for one prime.
    VerifyGadgets {
        #[arg(long)]
        p: usize,
        /// Print JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    path: PathBuf,
    /// Send missing DFA transitions to a fresh trash state.
    #[arg(long)]
    complete: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Automaton file; omit when using --dir.
    #[arg(required_unless_present = "dir", conflicts_with = "dir")]
    path: Option<PathBuf>,
    /// Classify every file in a directory.
    #[arg(long)]
    dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = LogicArg::All)]
    logic: LogicArg,
    /// Also run the algebraic characterizations and fail on disagreement.
    #[arg(long)]
    oracle_check: bool,
    /// Print JSON (an array with --dir).
    #[arg(long)]
    json: bool,
    /// Send missing DFA transitions to a fresh trash state.
    #[arg(long)]
    complete: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LogicArg {
    Lt,
    Lteq,
    Ltmod,
    All,
}

impl LogicArg {
    fn logics(self) -> Vec<Logic> {
        match self {
            LogicArg::Lt => vec![Logic::FoLt],
            LogicArg::Lteq => vec![Logic::FoLtEq],
            LogicArg::Ltmod => vec![Logic::FoLtMod],
            LogicArg::All => Logic::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    BpLt,
    BpEq,
    BpMod,
    ChoHuynh,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Gadget prime.
    #[arg(long, required_if_eq_any = [("kind", "bp-lt"), ("kind", "bp-eq"), ("kind", "bp-mod")])]
    p: Option<usize>,
    /// Turing machine file.
    #[arg(long, required_if_eq("kind", "cho-huynh"))]
    tm: Option<PathBuf>,
    /// Input word, as tape symbols.
    #[arg(long, required_if_eq("kind", "cho-huynh"))]
    input: Option<String>,
    /// Space bound.
    #[arg(long = "n", visible_alias = "N", required_if_eq("kind", "cho-huynh"))]
    n: Option<usize>,
    /// Write a gadget here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for the reduction's automata.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

/// An error with its exit status: 1 for bad input, 2 for a failed
/// cross-check, 3 for an exceeded cap.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Disagreement(_) | Error::Internal(_) => 2,
            Error::SizeLimit { .. } => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 1, message: format!("{}: {e}", path.display()) }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn load(path: &Path, complete: bool) -> Result<Automaton, Failure> {
    let text = read(path)?;
    parse_automaton(&text, ParseOptions { complete })
        .map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })
}

fn to_dfa(a: Automaton, cap: usize) -> Result<Dfa, Failure> {
    Ok(match a {
        Automaton::Dfa(d) => d,
        Automaton::Nfa(n) => n.determinize(cap)?,
        Automaton::TwoNfa(t) => two_nfa::determinize(&t, cap)?,
    })
}

fn load_dfa(path: &Path, complete: bool, cap: usize) -> Result<Dfa, Failure> {
    to_dfa(load(path, complete)?, cap)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cap = cli.cap;
    match cli.command {
        Command::Classify(args) => cmd_classify(&args, cap),
        Command::Minimize(input) => {
            let d = load_dfa(&input.path, input.complete, cap)?;
            print!("{}", emit_automaton(&Automaton::Dfa(d.minimize())));
            Ok(())
        }
        Command::Determinize(input) => {
            let d = load_dfa(&input.path, input.complete, cap)?;
            print!("{}", emit_automaton(&Automaton::Dfa(d)));
            Ok(())
        }
        Command::Monoid { input, elements } => {
            let d = load_dfa(&input.path, input.complete, cap)?;
            let m = syntactic_monoid(&d, cap)?;
            println!("minimal DFA states: {}", m.degree());
            println!("size: {}", m.len());
            println!("idempotents: {}", m.elements().filter(|&s| m.is_idempotent(s)).count());
            println!("aperiodic: {}", if is_aperiodic(&m) { "yes" } else { "no" });
            if elements {
                for s in m.elements() {
                    let image: Vec<String> = m.image(s).iter().map(ToString::to_string).collect();
                    println!("{}: [{}]", m.alphabet().render(&m.witness(s)), image.join(" "));
                }
            }
            Ok(())
        }
        Command::Witness { input, logic } => {
            let d = load_dfa(&input.path, input.complete, cap)?;
            let r = classify(&d, cap)?;
            for l in logic.logics() {
                match &r.verdict(l).witness {
                    Some(w) => println!("{l}: {}", w.display(&r.alphabet)),
                    None => println!("{l}: definable"),
                }
            }
            Ok(())
        }
        Command::Gen(args) => cmd_gen(&args),
        Command::VerifyGadgets { p, json } => {
            let r = verify_gadget_lemmas(p)?;
            if json {
                println!("{}", report::gadget_json(&r));
            } else {
                print!("{}", report::gadget_text(&r));
            }
            if r.passed() {
                Ok(())
            } else {
                Err(Failure { code: 2, message: r.failures.join("; ") })
            }
        }
    }
}

fn classify_file(path: &Path, args: &ClassifyArgs, cap: usize) -> Result<report::Classified, Failure> {
    let d = load_dfa(path, args.complete, cap)?;
    let r = if args.oracle_check { classify_checked(&d, cap)? } else { classify(&d, cap)? };
    Ok(report::Classified { path: path.to_owned(), report: r })
}

fn cmd_classify(args: &ClassifyArgs, cap: usize) -> Result<(), Failure> {
    let logics = args.logic.logics();
    let Some(dir) = &args.dir else {
        let path = args.path.as_deref().expect("clap enforces a path or --dir");
        let c = classify_file(path, args, cap)?;
        if args.json {
            println!("{}", serde_json::to_string_pretty(&c.to_json(&logics)).expect("JSON values serialize"));
        } else {
            print!("{}", c.text(&logics));
        }
        return Ok(());
    };

    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| io_failure(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let mut worst: Option<u8> = None;
    let mut failed = 0;
    let mut docs = Vec::new();
    for path in &paths {
        match classify_file(path, args, cap) {
            Ok(c) if args.json => docs.push(c.to_json(&logics)),
            Ok(c) => print!("== {}\n{}", path.display(), c.text(&logics)),
            Err(f) => {
                if args.json {
                    docs.push(serde_json::json!({ "language_file": path.display().to_string(), "error": f.message }));
                } else {
                    println!("== {}\nerror: {}", path.display(), f.message);
                }
                failed += 1;
                worst = worst.max(Some(f.code));
            }
        }
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&docs).expect("JSON values serialize"));
    }
    match worst {
        Some(code) => Err(Failure { code, message: format!("{failed} of {} files failed", paths.len()) }),
        None => Ok(()),
    }
}

fn cmd_gen(args: &GenArgs) -> Result<(), Failure> {
    let variant = match args.kind {
        GenKind::BpLt => Some(GadgetVariant::Lt),
        GenKind::BpEq => Some(GadgetVariant::Eq),
        GenKind::BpMod => Some(GadgetVariant::Mod),
        GenKind::ChoHuynh => None,
    };
    if let Some(variant) = variant {
        let p = args.p.expect("clap requires --p for gadgets");
        let text = emit_automaton(&Automaton::Dfa(build_cycle_gadget(p, variant)?));
        return match &args.out {
            Some(path) => write(path, &text),
            None => {
                print!("{text}");
                Ok(())
            }
        };
    }

    let tm_path = args.tm.as_deref().expect("clap requires --tm");
    let tm = TuringMachine::parse(&read(tm_path)?)
        .map_err(|e| Failure { code: 1, message: format!("{}: {e}", tm_path.display()) })?;
    let input = tm.parse_input(args.input.as_deref().expect("clap requires --input"))?;
    let n = args.n.expect("clap requires --n");
    let inst = build_instance(&tm, &input, n)?;
    let dir = &args.out_dir;
    fs::create_dir_all(dir.join("checkers")).map_err(|e| io_failure(dir, e))?;
    for (name, d) in [("A_lt.dfa", &inst.lt), ("A_eq.dfa", &inst.eq), ("A_mod.dfa", &inst.modp)] {
        write(&dir.join(name), &emit_automaton(&Automaton::Dfa(d.clone())))?;
    }
    let mut list = String::new();
    for (i, d) in inst.checkers.iter().enumerate() {
        let name = format!("checkers/A_{i}.dfa");
        write(&dir.join(&name), &emit_automaton(&Automaton::Dfa(d.clone())))?;
        list.push_str(&name);
        list.push('\n');
    }
    write(&dir.join("checkers.txt"), &list)?;
    println!(
        "p = {}; wrote A_lt.dfa ({} states), A_eq.dfa ({}), A_mod.dfa ({}) and {} checkers to {}",
        inst.params.p,
        inst.lt.state_count(),
        inst.eq.state_count(),
        inst.modp.state_count(),
        inst.checkers.len(),
        dir.display()
    );
    Ok(())
}
