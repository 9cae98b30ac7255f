//! `qminor`: check, verify and explore quadratic identities of quantum minors.
//!
//! Exit codes: 0 success (identity holds, or a query answered), 1 refuted,
//! 2 input error.

use clap::{Parser, Subcommand, ValueEnum};
use qminor::cortege::Cortege;
use qminor::graph::{grid, parse_graph_spec, SeGraph};
use qminor::identities::{
    catalog, commutes, commuting_subminor, dodgson, general_r1, general_r2, lz, manin, non_quasicommute_witness,
    plucker3a, plucker3b, plucker4, quasicommute, verify_on_graph, verify_universal, zeta_difference, ManinKind,
    QuadraticIdentity,
};
use qminor::matchings::enumerate_feasible;
use qminor::{Coeff, Error};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "qminor", version, about = "Quadratic identities on quantum minors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide q-balancedness of an identity file; exit 1 with a witness if refuted.
    Check { file: PathBuf },
    /// Expand LHS - RHS on the path matrix of a graph; exit 0 iff it vanishes.
    Verify {
        file: PathBuf,
        /// `grid:MxN`, `cauchon:M,N:<rows>` or a JSON graph (inline, or a path to a file).
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = Width::I64)]
        coeff: Width,
    },
    /// Verify on the grid sized to the identity.
    Falsify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Width::I64)]
        coeff: Width,
    },
    /// Emit an identity file for a named family.
    Catalog {
        #[command(subcommand)]
        family: Family,
    },
    /// List the feasible matchings of a cortege given as `I|J;I'|J'`.
    Matchings { cortege: CortegeArg },
    /// Decide whether the two minors of a cortege `I|J;I'|J'` quasicommute.
    Classify { cortege: CortegeArg },
}

#[derive(Clone, Copy, ValueEnum)]
enum Width {
    I64,
    I128,
    Big,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Row,
    Column,
    Diagonal,
    AntiDiagonal,
}

impl From<Kind> for ManinKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Row => ManinKind::Row,
            Kind::Column => ManinKind::Column,
            Kind::Diagonal => ManinKind::Diagonal,
            Kind::AntiDiagonal => ManinKind::AntiDiagonal,
        }
    }
}

/// A comma-separated index set; the empty string is the empty set.
#[derive(Clone, Debug, Default)]
struct Set(Vec<usize>);

impl FromStr for Set {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if s.is_empty() || s == "∅" {
            return Ok(Set(vec![]));
        }
        s.split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad index {x:?} in {s:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Set)
    }
}

#[derive(Clone, Debug)]
struct CortegeArg(Cortege);

impl FromStr for CortegeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(';').ok_or("expected I|J;I'|J'")?;
        let pair = |p: &str| -> Result<(Vec<usize>, Vec<usize>), String> {
            let (r, c) = p.split_once('|').ok_or(format!("expected rows|cols in {p:?}"))?;
            Ok((r.parse::<Set>()?.0, c.parse::<Set>()?.0))
        };
        let ((i, j), (ip, jp)) = (pair(a)?, pair(b)?);
        Cortege::new(i, j, ip, jp).map(CortegeArg).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Family {
    /// Every named instance shipped with the library.
    List,
    /// A minor and a subminor whose rows and columns sit in matching positions.
    CommutingSubminor {
        #[arg(long = "I")]
        i: Set,
        #[arg(long = "J")]
        j: Set,
        #[arg(long = "Ip")]
        ip: Set,
        #[arg(long = "Jp")]
        jp: Set,
    },
    /// Quasicommuting flag minors `[I][J] = q^c [J][I]`.
    Lz {
        #[arg(long = "I")]
        i: Set,
        #[arg(long = "J")]
        j: Set,
    },
    /// One relation of a 2x2 submatrix.
    Manin {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        ip: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        jp: usize,
    },
    /// Three-term Plücker relation, first form.
    Plucker3a {
        #[arg(long = "X", default_value = "")]
        x: Set,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
    },
    /// Three-term Plücker relation, second form.
    Plucker3b {
        #[arg(long = "X", default_value = "")]
        x: Set,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
    },
    /// Four-index Plücker relation.
    Plucker4 {
        #[arg(long = "X", default_value = "")]
        x: Set,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Dodgson condensation.
    Dodgson {
        #[arg(long = "X", default_value = "")]
        x: Set,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "Xp", default_value = "")]
        xp: Set,
        #[arg(long)]
        ip: usize,
        #[arg(long)]
        kp: usize,
    },
    /// Expansion of a flag minor along the elements of `J - I`.
    GeneralR1 {
        #[arg(long = "I")]
        i: Set,
        #[arg(long = "J")]
        j: Set,
    },
    /// Alternating relation with vanishing right-hand side.
    GeneralR2 {
        #[arg(long = "I")]
        i: Set,
        #[arg(long = "J")]
        j: Set,
    },
}

/// What a command reports: the JSON document and whether it counts as success.
type Outcome = Result<(Value, bool), String>;

fn err(e: Error) -> String {
    e.to_string()
}

fn read_identity(path: &Path) -> Result<QuadraticIdentity, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let id: QuadraticIdentity = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    id.validate().map_err(err)?;
    Ok(id)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn check(file: &Path) -> Outcome {
    let id = read_identity(file)?;
    let report = verify_universal(&id).map_err(err)?;
    let ok = report.is_q_balanced();
    Ok((json!({ "identity": id.to_string(), "report": to_value(&report) }), ok))
}

fn difference<C: Coeff>(g: &SeGraph, id: &QuadraticIdentity) -> Result<(String, bool), String> {
    let d = verify_on_graph::<C>(g, id).map_err(err)?;
    Ok((d.render(g.commutation_table()), d.is_zero()))
}

fn verify_with(g: &SeGraph, spec: &str, id: &QuadraticIdentity, coeff: Width) -> Outcome {
    for t in id.terms() {
        t.cortege.check(g.m(), g.n()).map_err(|e| format!("{e} (graph is {}x{})", g.m(), g.n()))?;
    }
    let (text, zero) = match coeff {
        Width::I64 => difference::<i64>(g, id)?,
        Width::I128 => difference::<i128>(g, id)?,
        Width::Big => difference::<num_bigint::BigInt>(g, id)?,
    };
    Ok((json!({ "identity": id.to_string(), "graph": spec, "zero": zero, "difference": text }), zero))
}

fn graph_from(spec: &str) -> Result<SeGraph, String> {
    let looks_inline = spec.starts_with("grid:") || spec.starts_with("cauchon:") || spec.trim_start().starts_with('{');
    if !looks_inline && Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
        return parse_graph_spec(&text).map_err(err);
    }
    parse_graph_spec(spec).map_err(err)
}

fn build(family: Family) -> Result<Value, String> {
    let id = match family {
        Family::List => {
            let all: Vec<Value> = catalog()
                .into_iter()
                .map(|(name, id)| json!({ "name": name, "identity": to_value(&id) }))
                .collect();
            return Ok(Value::Array(all));
        }
        Family::CommutingSubminor { i, j, ip, jp } => commuting_subminor(&i.0, &j.0, &ip.0, &jp.0),
        Family::Lz { i, j } => lz(&i.0, &j.0),
        Family::Manin { kind, i, ip, j, jp } => manin(kind.into(), i, ip, j, jp),
        Family::Plucker3a { x, i, j, k } => plucker3a(&x.0, i, j, k),
        Family::Plucker3b { x, i, j, k } => plucker3b(&x.0, i, j, k),
        Family::Plucker4 { x, i, j, k, l } => plucker4(&x.0, i, j, k, l),
        Family::Dodgson { x, i, k, xp, ip, kp } => dodgson(&x.0, i, k, &xp.0, ip, kp),
        Family::GeneralR1 { i, j } => general_r1(&i.0, &j.0),
        Family::GeneralR2 { i, j } => general_r2(&i.0, &j.0),
    };
    Ok(to_value(&id.map_err(err)?))
}

fn matchings(c: &Cortege) -> Outcome {
    let all = enumerate_feasible(c);
    let list = all
        .iter()
        .map(|m| {
            let d = zeta_difference(c, m).map_err(err)?;
            Ok(json!({ "matching": m.to_string(), "couples": to_value(m), "zeta_difference": d }))
        })
        .collect::<Result<Vec<Value>, String>>()?;
    Ok((json!({ "cortege": c.to_string(), "count": all.len(), "matchings": list }), true))
}

fn is_initial(s: &[usize]) -> bool {
    s.iter().enumerate().all(|(k, &x)| x == k + 1)
}

fn classify(c: &Cortege) -> Outcome {
    let q = quasicommute(c);
    let mut out = json!({
        "cortege": c.to_string(),
        "quasicommute": q.is_some(),
        "c": q,
        "commutes": commutes(c),
    });
    if q.is_none() && is_initial(&c.i) && is_initial(&c.ip) {
        if let Ok((m1, m2)) = non_quasicommute_witness(&c.j, &c.jp) {
            let flag = Cortege::new(c.i.clone(), c.j.clone(), c.ip.clone(), c.jp.clone()).map_err(err)?;
            let d = |m| zeta_difference(&flag, m).map_err(err);
            out["witness"] = json!([
                { "matching": m1.to_string(), "zeta_difference": d(&m1)? },
                { "matching": m2.to_string(), "zeta_difference": d(&m2)? },
            ]);
        }
    }
    Ok((out, true))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check { file } => check(&file),
        Command::Verify { file, graph, coeff } => {
            let id = read_identity(&file)?;
            let g = graph_from(&graph)?;
            verify_with(&g, &graph, &id, coeff)
        }
        Command::Falsify { file, coeff } => {
            let id = read_identity(&file)?;
            let g = grid(id.m, id.n).map_err(err)?;
            verify_with(&g, &format!("grid:{}x{}", id.m, id.n), &id, coeff)
        }
        Command::Catalog { family } => build(family).map(|v| (v, true)),
        Command::Matchings { cortege } => matchings(&cortege.0),
        Command::Classify { cortege } => classify(&cortege.0),
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("QMINOR_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or(format!("QMINOR_THREADS={v:?} is not a positive integer"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = configure_threads().and_then(|_| run(cli));
    match result {
        Ok((doc, ok)) => {
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
