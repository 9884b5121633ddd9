//! `hotc`: type functions, their posets and decompositions, and quantum realizations.

mod verify;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hotc_core::boolfun::{fmt_mask, mask_elems, BoolFun};
use hotc_core::linal::AffSpace;
use hotc_core::mobius::{from_mobius, mobius, MobiusCoeffs};
use hotc_core::poset::{build_poset, chain_info, decompose, p0, LabelledPoset};
use hotc_core::quantum::{
    build_sf, channel_space, comb_oracle, is_channel_member, object_from_expr, psd_min_eig, random_cptp, sf_dim,
    FirstOrderObj,
};
use hotc_core::typealg::{
    causal, enum_cap, enumerate_types_capped, expr_to_type, gamma, is_type_capped, parse_expr, structure_form,
    TypeExpr, Verdict,
};
use hotc_core::Error;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "hotc", version, about = "Boolean type functions and higher-order quantum objects")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Input JSON file (a BoolFun unless stated otherwise); repeat for two operands.
    #[arg(long = "in", global = true, value_name = "FILE")]
    inputs: Vec<PathBuf>,
    /// Type expression, e.g. "(hom (leaf 1) (leaf 2))".
    #[arg(long, global = true, value_name = "SEXPR")]
    expr: Option<String>,
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Leaf objects: `d` or `d:c` for quantum, `Pk` or `Pk:c` for classical.
    #[arg(long, global = true, value_name = "CSV")]
    dims: Option<String>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Write the Hasse diagram in DOT form (`-` for stdout).
    #[arg(long, global = true, value_name = "FILE")]
    dot: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Largest arity for exhaustive enumeration (default: HOTC_ENUM_CAP or 5).
    #[arg(long = "enum-cap", global = true)]
    enum_cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// List T_n up to permutation.
    Enumerate,
    /// Decide membership in T_n.
    IsType,
    /// Möbius coefficients.
    Mobius,
    /// Function from Möbius coefficients (`--in` holds coefficient JSON).
    FromMobius,
    /// The labelled poset P_f.
    Poset,
    /// The poset P_f^0.
    P0,
    /// Decomposition tree of a type function.
    Decompose,
    /// Normal form over chain types.
    Structure,
    /// Tiers and comb order of a chain type.
    CombInfo,
    /// Causal product of two functions (`--in F --in G`).
    Causal,
    /// The chain type γ_n.
    Gamma,
    /// Type function and IO sets of an expression.
    ExprType,
    /// Dimensions of S_f and A_f over the given objects.
    QuantumSpace,
    /// Channel membership of a Choi vector (`--in`) or of a seeded random channel.
    ChannelCheck,
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
    },
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
enum Failure {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
    /// Valid input outside an operation's domain: exit 1.
    Domain(Error),
    /// A verification suite reported failures: exit 1.
    Checks(usize),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Domain(e) => write!(f, "{e}"),
            Failure::Checks(k) => write!(f, "{k} check(s) failed"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other),
        }
    }
}

type Out = Result<(), Failure>;

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn table(f: &BoolFun) -> String {
    if f.n() <= 8 {
        f.table().iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
    } else {
        format!("{} of {} ones", f.count_ones(), 1usize << f.n())
    }
}

fn write_dot(path: &Path, dot: &str) -> Out {
    if path == Path::new("-") {
        print!("{dot}");
        Ok(())
    } else {
        std::fs::write(path, dot).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn poset_text(p: &LabelledPoset) -> String {
    let mut s = format!("{} node(s), rank {}\n", p.len(), p.flags.rank);
    for x in &p.nodes {
        s += &format!(
            "  {:<14} coeff {:>2}  rank {}  label {}\n",
            fmt_mask(x.subset),
            x.coeff,
            x.rank,
            fmt_mask(x.label)
        );
    }
    s
}

/// Parse `--dims`: `2`, `2:0.5`, `P3`, `P3:1`.
fn parse_dims(s: &str, n: usize) -> Result<Vec<FirstOrderObj>, Failure> {
    let objs = s
        .split(',')
        .map(|item| {
            let item = item.trim();
            let (head, c) = match item.split_once(':') {
                Some((h, c)) => (h, c.parse::<f64>().map_err(|_| usage(format!("bad constant in `{item}`")))?),
                None => (item, 1.0),
            };
            if !(c > 0.0 && c.is_finite()) {
                return Err(usage(format!("constant must be positive in `{item}`")));
            }
            let (classical, d) = match head.strip_prefix('P') {
                Some(k) => (true, k),
                None => (false, head),
            };
            let d = d.parse::<usize>().map_err(|_| usage(format!("bad dimension in `{item}`")))?;
            if d == 0 {
                return Err(usage(format!("dimension must be positive in `{item}`")));
            }
            Ok(if classical { FirstOrderObj::classical(d, c) } else { FirstOrderObj::quantum(d, c) })
        })
        .collect::<Result<Vec<_>, _>>()?;
    match objs.len() {
        1 => Ok(vec![objs[0]; n]),
        k if k == n => Ok(objs),
        k => Err(usage(format!("--dims lists {k} objects for {n} leaves"))),
    }
}

struct App {
    cli: Cli,
}

impl App {
    fn cap(&self) -> usize {
        self.cli.enum_cap.unwrap_or_else(enum_cap)
    }

    fn expr(&self) -> Result<Option<TypeExpr>, Failure> {
        self.cli.expr.as_deref().map(|s| parse_expr(s).map_err(Failure::from)).transpose()
    }

    /// The single function operand, from `--in` or `--expr`.
    fn fun(&self) -> Result<BoolFun, Failure> {
        match (self.cli.inputs.as_slice(), self.expr()?) {
            ([p], None) => read_json(p),
            ([], Some(e)) => Ok(expr_to_type(&e)?.0),
            ([], None) => Err(usage("this command needs --in FILE or --expr SEXPR")),
            _ => Err(usage("give exactly one of --in FILE and --expr SEXPR")),
        }
    }

    fn need_n(&self) -> Result<usize, Failure> {
        self.cli.n.ok_or_else(|| usage("this command needs --n INT"))
    }

    fn run(&self) -> Out {
        let json = self.cli.json;
        match &self.cli.cmd {
            Cmd::Enumerate => {
                let n = self.need_n()?;
                let set = enumerate_types_capped(n, self.cap())?;
                if json {
                    emit(&json!({ "n": n, "count": set.len(), "orbits": set.reps.len(), "reps": set.reps }));
                } else {
                    println!("|T_{n}| = {} in {} permutation orbit(s)", set.len(), set.reps.len());
                    for r in &set.reps {
                        println!("  {}", table(r));
                    }
                }
            }
            Cmd::IsType => {
                let f = self.fun()?;
                let v = is_type_capped(&f, self.cap());
                match (&v, json) {
                    (Verdict::Yes(t), true) => emit(&json!({ "type": true, "tree": t })),
                    (Verdict::No(r), true) => emit(&json!({ "type": false, "reason": r })),
                    (Verdict::Yes(t), false) => println!("yes\n{t}"),
                    (Verdict::No(r), false) => println!("no: {r}"),
                }
            }
            Cmd::Mobius => {
                let m = mobius(&self.fun()?);
                if json {
                    emit(&json!(m));
                } else {
                    for (s, c) in &m.coeffs {
                        println!("{c:+} p_{}", fmt_mask(*s));
                    }
                }
            }
            Cmd::FromMobius => {
                let [p] = self.cli.inputs.as_slice() else {
                    return Err(usage("from-mobius needs one --in FILE with coefficient JSON"));
                };
                let m: MobiusCoeffs = read_json(p)?;
                let f = from_mobius(&m)?;
                if json {
                    emit(&json!(f));
                } else {
                    println!("n = {}: {}", f.n(), table(&f));
                }
            }
            Cmd::Poset | Cmd::P0 => {
                let f = self.fun()?;
                let p = build_poset(&f);
                let p = if matches!(self.cli.cmd, Cmd::P0) { p0(&p) } else { p };
                self.show_poset(&p)?;
            }
            Cmd::Decompose => {
                let f = self.fun()?;
                let t = decompose(&f)?;
                if json {
                    emit(&json!(t));
                } else {
                    println!("{t}");
                }
                if let Some(path) = &self.cli.dot {
                    write_dot(path, &build_poset(&f).to_dot())?;
                }
            }
            Cmd::Structure => {
                let sf = structure_form(&self.fun()?)?;
                if json {
                    emit(&json!(sf));
                } else {
                    println!("blocks {:?}, A = {}, B = {}", sf.blocks, sf.a, sf.b);
                    for (k, c) in sf.chains.iter().enumerate() {
                        println!("  chain {k}: {}", table(c));
                    }
                    for (a, row) in sf.perms.iter().enumerate() {
                        println!("  term {a}: {row:?}");
                    }
                }
            }
            Cmd::CombInfo => {
                let c = chain_info(&self.fun()?)?;
                let sets = |v: &[u32]| v.iter().map(|&m| mask_elems(m)).collect::<Vec<_>>();
                let v = json!({
                    "n": c.n,
                    "chain": sets(&c.chain),
                    "tiers": sets(&c.tiers),
                    "inputs": mask_elems(c.inputs),
                    "outputs": mask_elems(c.outputs),
                    "comb_order": c.comb_order(),
                });
                if json {
                    emit(&v);
                } else {
                    println!("chain of length {}, comb order {}", c.len(), c.comb_order());
                    for (j, t) in c.tiers.iter().enumerate() {
                        println!("  T_{j} = {}", fmt_mask(*t));
                    }
                    println!("inputs {}, outputs {}", fmt_mask(c.inputs), fmt_mask(c.outputs));
                }
            }
            Cmd::Causal => {
                let [a, b] = self.cli.inputs.as_slice() else {
                    return Err(usage("causal needs --in F --in G"));
                };
                let h = causal(&read_json(a)?, &read_json(b)?)?;
                if json {
                    emit(&json!(h));
                } else {
                    println!("n = {}: {}", h.n(), table(&h));
                }
            }
            Cmd::Gamma => {
                let g = gamma(self.need_n()?)?;
                if json {
                    emit(&json!(g));
                } else {
                    println!("n = {}: {}", g.n(), table(&g));
                }
            }
            Cmd::ExprType => {
                let e = self.expr()?.ok_or_else(|| usage("expr-type needs --expr SEXPR"))?;
                let (f, io) = expr_to_type(&e)?;
                if json {
                    emit(&json!({ "function": f, "io": io }));
                } else {
                    println!("n = {}: {}", f.n(), table(&f));
                    println!("outputs {}, inputs {}", fmt_mask(io.outputs), fmt_mask(io.inputs));
                }
            }
            Cmd::QuantumSpace => self.quantum_space()?,
            Cmd::ChannelCheck => self.channel_check()?,
            Cmd::Verify { suite } => {
                let failed = verify::run(*suite, self.cli.seed, self.cap());
                if failed > 0 {
                    return Err(Failure::Checks(failed));
                }
            }
        }
        Ok(())
    }

    fn show_poset(&self, p: &LabelledPoset) -> Out {
        let to_stdout = self.cli.dot.as_deref() == Some(Path::new("-"));
        if let Some(path) = &self.cli.dot {
            write_dot(path, &p.to_dot())?;
        }
        if !to_stdout {
            if self.cli.json {
                emit(&json!(p));
            } else {
                print!("{}", poset_text(p));
            }
        }
        Ok(())
    }

    fn quantum_space(&self) -> Out {
        let f = self.fun()?;
        let dims = self.cli.dims.as_deref().ok_or_else(|| usage("quantum-space needs --dims CSV"))?;
        let objs = parse_dims(dims, f.n())?;
        let (s, a) = build_sf(&f, &objs)?;
        let mut v = json!({
            "ambient": s.ambient(),
            "dim_S": s.dim(),
            "dim_S_formula": sf_dim(&f, &objs),
            "dim_A": a.dim(),
        });
        if let Some(e) = self.expr()? {
            let x = object_from_expr(&e, &objs)?;
            v["expr_distance"] = json!(round(x.distance(&a)));
        }
        if build_poset(&f).is_chain() {
            if let Ok(c) = comb_oracle(&f, &objs) {
                v["comb_distance"] = json!(round(c.affine.distance(&a)));
            }
        }
        if self.cli.json {
            emit(&v);
        } else {
            for (k, x) in v.as_object().expect("object") {
                println!("{k}: {x}");
            }
        }
        Ok(())
    }

    fn channel_check(&self) -> Out {
        let dims = self.cli.dims.as_deref().unwrap_or("2,2");
        let parts: Vec<usize> = dims
            .split(',')
            .map(|d| d.trim().parse().map_err(|_| usage(format!("bad dimension `{d}`"))))
            .collect::<Result<_, _>>()?;
        let [m, n] = parts[..] else {
            return Err(usage("channel-check needs --dims m,n"));
        };
        let c = match self.cli.inputs.as_slice() {
            [p] => {
                let v: Vec<f64> = read_json(p)?;
                nalgebra::DVector::from_vec(v)
            }
            [] => random_cptp(m, n, self.cli.seed)?,
            _ => return Err(usage("channel-check takes at most one --in FILE")),
        };
        let space: AffSpace = channel_space(m, n)?;
        let member = is_channel_member(&c, m, n, self.cli.tol)?;
        let v = json!({
            "dims": [m, n],
            "affine": space.contains(&c, self.cli.tol),
            "min_eig": round(psd_min_eig(&c, &[m, n])?),
            "member": member,
        });
        if self.cli.json {
            emit(&v);
        } else {
            println!("{}", if member { "member" } else { "not a member" });
            println!("affine: {}, min eigenvalue: {}", v["affine"], v["min_eig"]);
        }
        Ok(())
    }
}

/// Twelve significant digits, so that printed floats do not depend on roundoff.
fn round(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let e = 11 - x.abs().log10().floor() as i32;
    let p = 10f64.powi(e);
    let r = (x * p).round() / p;
    if r.abs() < 1e-12 {
        0.0
    } else {
        r
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match (App { cli }).run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (code, kind) = match &e {
                Failure::Usage(_) => (2, "usage"),
                Failure::Domain(_) => (1, "domain"),
                Failure::Checks(_) => (1, "verify"),
            };
            if json {
                eprintln!("{}", json!({ "error": kind, "message": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
