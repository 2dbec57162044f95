//! Command-line front end. Dispatch lives here so tests and the C ABI can
//! drive it without spawning a process; `src/bin/tjm.rs` is a thin shim.

use std::fmt::Write as _;
use std::io::BufRead;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::doublecosets::{representatives, sigma_matrix, w_matrix, KRange};
use crate::error::{Error, Result};
use crate::ff_oracle::{self, DoubleCosetReport, OracleReport};
use crate::jacquet::{self, TJMVerdict, TableReport};
use crate::lfun::{self, ConjectureReport};
use crate::parse::{parse_expr, parse_multisegment, parse_segment};
use crate::reps::{product_irreducible_expr, ReprExpr};
use crate::segments::{juxtaposed, linked, precedes, Multisegment, Segment};
use crate::zelevinsky::{mw_dual_traced, MwTrace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "tjm", version, about = "Twisted Jacquet modules of GL_2n principal series")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Zelevinsky dual of a multisegment.
    Dual {
        multisegment: Option<String>,
        /// Print the extraction chains.
        #[arg(long)]
        explain: bool,
    },
    /// Linkage of two segments.
    Linked { first: String, second: String },
    /// Irreducibility of a product.
    ProductIrred { expr: Option<String> },
    /// Twisted Jacquet module of `rho1 x rho2`.
    Tjm {
        #[arg(long)]
        n: Option<usize>,
        /// Rank of `rho1`; defaults to the rank of the first factor.
        #[arg(long)]
        r: Option<usize>,
        /// Print per-factor twists and block rules.
        #[arg(long)]
        explain: bool,
        expr: Option<String>,
    },
    /// Reproduce a subquotient table: `xi` or `sigma`.
    TjmTable { preset: String },
    /// Adjoint pole profile and the predicted vanishing.
    Conjecture {
        #[arg(long)]
        n: Option<usize>,
        expr: Option<String>,
    },
    /// Double coset representatives `w_{k,l}`.
    Cosets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Also print the permutations in one-line notation.
        #[arg(long)]
        matrices: bool,
    },
    /// Finite-field brute-force checks.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(subcommand)]
    pub command: OracleCommand,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Dimension by character sum against the filtration formula.
    TjmDim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        p: u8,
        /// `rho1,rho2` from `triv`, `quad`, `st`, `ps`.
        #[arg(long, default_value = "triv,triv")]
        levi: String,
    },
    /// Orbit partition of `GL_2n(F_p)` into double cosets.
    Cosets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        p: u8,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetRow {
    pub index: String,
    pub k: usize,
    pub l: usize,
    pub w: Option<String>,
    pub sigma: Option<String>,
}

/// Externally tagged: internal tags cannot carry integer-keyed maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Dual {
        input: Multisegment,
        dual: Multisegment,
        trace: Option<MwTrace>,
    },
    Linked {
        first: Segment,
        second: Segment,
        linked: bool,
        juxtaposed: bool,
        first_precedes: bool,
    },
    ProductIrred {
        expr: ReprExpr,
        irreducible: Option<bool>,
    },
    Tjm {
        verdict: Box<TJMVerdict>,
    },
    Table {
        table: TableReport,
    },
    Conjecture {
        expr: ReprExpr,
        report: ConjectureReport,
    },
    Cosets {
        n: usize,
        r: usize,
        alpha: usize,
        beta: usize,
        gamma: usize,
        rows: Vec<CosetRow>,
    },
    OracleDim {
        report: OracleReport,
    },
    OracleCosets {
        report: DoubleCosetReport,
    },
}

/// One result with the facts used to produce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub result: Payload,
    pub provenance: Vec<String>,
}

impl Report {
    /// Whether a self-check inside the report failed.
    pub fn assertion_failed(&self) -> bool {
        match &self.result {
            Payload::OracleDim { report } => !report.agrees(),
            Payload::OracleCosets { report } => !report.coverage_ok(),
            _ => false,
        }
    }
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Consistency(_) => EXIT_ASSERTION,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first) and runs, reading batch input from
/// `stdin` when an expression argument is omitted.
pub fn run_args<I, T>(args: I, stdin: &mut dyn BufRead) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    run(&cli, stdin)
}

pub fn run(cli: &Cli, stdin: &mut dyn BufRead) -> Outcome {
    let inputs = match batch_inputs(&cli.command, stdin) {
        Ok(v) => v,
        Err(e) => return failure(&e),
    };
    let mut out = String::new();
    let mut err = String::new();
    let mut code = EXIT_OK;
    for input in inputs {
        match execute(&cli.command, input.as_deref()) {
            Ok(rep) => {
                if rep.assertion_failed() {
                    code = code.max(EXIT_ASSERTION);
                }
                if cli.json {
                    out.push_str(&serde_json::to_string(&rep).expect("reports serialize"));
                    out.push('\n');
                } else {
                    out.push_str(&render(&rep, &cli.command));
                }
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                code = code.max(exit_code(&e));
            }
        }
    }
    Outcome {
        code,
        stdout: out,
        stderr: err,
    }
}

fn failure(e: &Error) -> Outcome {
    Outcome {
        code: exit_code(e),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

/// `[Some(arg)]`, or one entry per non-blank stdin line for commands that
/// take an expression.
fn batch_inputs(cmd: &Command, stdin: &mut dyn BufRead) -> Result<Vec<Option<String>>> {
    let arg = match cmd {
        Command::Dual { multisegment, .. } => multisegment,
        Command::ProductIrred { expr } | Command::Tjm { expr, .. } | Command::Conjecture { expr, .. } => expr,
        _ => return Ok(vec![None]),
    };
    if let Some(a) = arg {
        return Ok(vec![Some(a.clone())]);
    }
    let mut lines = Vec::new();
    for line in stdin.lines() {
        let line = line.map_err(|e| Error::Unsupported(format!("reading stdin: {e}")))?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            lines.push(Some(t.to_string()));
        }
    }
    if lines.is_empty() {
        return Err(Error::Unsupported(
            "no input: pass an expression or lines on stdin".into(),
        ));
    }
    Ok(lines)
}

pub fn execute(cmd: &Command, input: Option<&str>) -> Result<Report> {
    let text = || input.ok_or_else(|| Error::Unsupported("missing input".into()));
    let (command, result, provenance) = match cmd {
        Command::Dual { explain, .. } => {
            let m = parse_multisegment(text()?)?;
            let trace = mw_dual_traced(&m);
            let dual = Multisegment::new(trace.extracted.clone());
            (
                format!("dual {m}"),
                Payload::Dual {
                    input: m,
                    dual,
                    trace: explain.then_some(trace),
                },
                vec!["Moeglin-Waldspurger algorithm".into()],
            )
        }
        Command::Linked { first, second } => {
            let (a, b) = (parse_segment(first)?, parse_segment(second)?);
            (
                format!("linked {a} {b}"),
                Payload::Linked {
                    linked: linked(&a, &b),
                    juxtaposed: juxtaposed(&a, &b),
                    first_precedes: precedes(&a, &b),
                    first: a,
                    second: b,
                },
                vec!["segment linkage".into()],
            )
        }
        Command::ProductIrred { .. } => {
            let e = parse_expr(text()?)?;
            let factors: Vec<ReprExpr> = e.factors().into_iter().cloned().collect();
            let irreducible = product_irreducible_expr(&factors);
            (
                format!("product-irred {e}"),
                Payload::ProductIrred { expr: e, irreducible },
                vec!["Zelevinsky irreducibility criterion".into()],
            )
        }
        Command::Tjm { n, r, .. } => {
            let e = parse_expr(text()?)?;
            let v = tjm_of(&e, *n, *r)?;
            let prov = vec![v.theorem.clone()];
            (
                format!("tjm --n {} --r {} {e}", v.n, v.r),
                Payload::Tjm { verdict: Box::new(v) },
                prov,
            )
        }
        Command::TjmTable { preset } => {
            let table = jacquet::analyze_preset(preset)?;
            let prov = table
                .rows
                .iter()
                .map(|r| format!("{}: {}", r.name, r.provenance))
                .collect();
            (format!("tjm-table {preset}"), Payload::Table { table }, prov)
        }
        Command::Conjecture { n, .. } => {
            let e = parse_expr(text()?)?;
            let n = match n {
                Some(n) => *n,
                None => half_rank(&e)?,
            };
            let report = lfun::conjecture_check(&e, n)?;
            (
                format!("conjecture --n {n} {e}"),
                Payload::Conjecture { expr: e, report },
                vec!["Prasad's conjecture predicate on L(s, Ad)".into()],
            )
        }
        Command::Cosets { n, r, matrices } => {
            let kr = KRange::new(*n, *r)?;
            let rows = representatives(*n, *r)?
                .into_iter()
                .map(|idx| CosetRow {
                    index: idx.to_string(),
                    k: idx.k,
                    l: idx.l,
                    w: matrices.then(|| w_matrix(&idx).one_line()),
                    sigma: matrices.then(|| sigma_matrix(&idx).one_line()),
                })
                .collect();
            (
                format!("cosets --n {n} --r {r}"),
                Payload::Cosets {
                    n: *n,
                    r: *r,
                    alpha: kr.alpha,
                    beta: kr.beta,
                    gamma: kr.gamma,
                    rows,
                },
                vec!["double coset representatives w_{k,l}".into()],
            )
        }
        Command::Oracle(OracleArgs { command }) => match command {
            OracleCommand::TjmDim { n, r, p, levi } => {
                let (a, b) = ff_oracle::parse_levi(levi)?;
                let report = ff_oracle::oracle_report(*n, *r, a, b, *p)?;
                (
                    format!("oracle tjm-dim --n {n} --r {r} --p {p} --levi {a},{b}"),
                    Payload::OracleDim { report },
                    vec!["character sum over N against the filtration formula".into()],
                )
            }
            OracleCommand::Cosets { n, r, p } => {
                let report = ff_oracle::double_coset_partition(*n, *r, *p)?;
                (
                    format!("oracle cosets --n {n} --r {r} --p {p}"),
                    Payload::OracleCosets { report },
                    vec!["orbit search on GL_2n(F_p)".into()],
                )
            }
        },
    };
    Ok(Report {
        command,
        result,
        provenance,
    })
}

fn half_rank(e: &ReprExpr) -> Result<usize> {
    let rank = e.rank();
    if !rank.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("{e} has odd rank {rank}; pass --n")));
    }
    Ok(rank / 2)
}

fn tjm_of(e: &ReprExpr, n: Option<usize>, r: Option<usize>) -> Result<TJMVerdict> {
    let n = match n {
        Some(n) => n,
        None => half_rank(e)?,
    };
    if e.rank() != 2 * n {
        return Err(Error::RankMismatch {
            expected: 2 * n,
            found: e.rank(),
        });
    }
    let r = match r {
        Some(r) => r,
        None => e.factors().first().map(|f| f.rank()).unwrap_or(0),
    };
    let (rho1, rho2) = jacquet::split_at_rank(e, r).ok_or_else(|| {
        Error::Unsupported(format!(
            "{e} does not split into factors of ranks {r} and {}",
            2 * n - r
        ))
    })?;
    jacquet::tjm_filtration(n, r, &rho1, &rho2)
}

fn render(rep: &Report, cmd: &Command) -> String {
    let mut s = String::new();
    match &rep.result {
        Payload::Dual { input, dual, trace } => {
            let _ = writeln!(s, "{input} -> {dual}");
            if let Some(t) = trace {
                for (i, st) in t.steps.iter().enumerate() {
                    let chain: Vec<String> = st.chain_segments.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(
                        s,
                        "  step {}: chain {} extracts {}",
                        i + 1,
                        chain.join(" < "),
                        st.extracted
                    );
                }
            }
        }
        Payload::Linked {
            first,
            second,
            linked,
            juxtaposed,
            first_precedes,
        } => {
            let _ = writeln!(
                s,
                "{first} {second}: linked={linked} juxtaposed={juxtaposed} precedes={first_precedes}"
            );
        }
        Payload::ProductIrred { expr, irreducible } => {
            let v = match irreducible {
                Some(true) => "irreducible",
                Some(false) => "reducible",
                None => "unknown",
            };
            let _ = writeln!(s, "{expr}: {v}");
        }
        Payload::Tjm { verdict } => {
            let v = verdict.as_ref();
            let _ = writeln!(s, "{} x {} (n={}, r={}): {}", v.rho1, v.rho2, v.n, v.r, v.status);
            if let Some(m) = &v.resolved_module {
                let _ = writeln!(s, "  module: {m}");
            }
            if let Some(sh) = v.shalika {
                let _ = writeln!(s, "  shalika: {sh}");
            }
            let explain = matches!(cmd, Command::Tjm { explain: true, .. });
            for f in &v.factors {
                let m = f.module.as_ref().map(|m| m.to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(s, "  k={} P{:?}: {} {}", f.k, f.parabolic, f.status, m);
                if explain {
                    let _ = writeln!(s, "    left:  {} [{}]", f.left.resolved.status(), f.left.rule);
                    let _ = writeln!(s, "    right: {} [{}]", f.right.resolved.status(), f.right.rule);
                    let t = f.net_twist;
                    let _ = writeln!(s, "    net twist: a={} b={} c={}", t.a, t.b, t.c);
                }
            }
            let _ = writeln!(s, "  [{}]", v.theorem);
        }
        Payload::Table { table } => {
            for row in &table.rows {
                let m = row.module.as_ref().map(|m| m.to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    s,
                    "{:<28} {:<9} {:<28} [{}]",
                    row.name,
                    row.status.to_string(),
                    m,
                    row.provenance
                );
            }
        }
        Payload::Conjecture { expr, report } => {
            let _ = writeln!(s, "{expr}");
            let _ = writeln!(s, "  parameter: {}", report.param);
            let _ = writeln!(s, "  s  order  needed");
            for (x, o, need) in &report.table {
                let _ = writeln!(s, "  {x:<2} {o:<6} {need}");
            }
            let v = if report.predicted_tjm_zero { "zero" } else { "non-zero" };
            let _ = writeln!(s, "  profile {} -> predicted {v}", report.profile);
        }
        Payload::Cosets {
            n,
            r,
            alpha,
            beta,
            gamma,
            rows,
        } => {
            let _ = writeln!(
                s,
                "n={n} r={r} alpha={alpha} beta={beta} gamma={gamma} count={}",
                rows.len()
            );
            for row in rows {
                match (&row.w, &row.sigma) {
                    (Some(w), Some(sg)) => {
                        let _ = writeln!(s, "  {}  w={w}  sigma={sg}", row.index);
                    }
                    _ => {
                        let _ = writeln!(s, "  {}", row.index);
                    }
                }
            }
        }
        Payload::OracleDim { report } => {
            let _ = writeln!(
                s,
                "n={} r={} p={} levi={},{}: bruteforce={} formula={}",
                report.n, report.r, report.p, report.levi.0, report.levi.1, report.bruteforce, report.formula
            );
            for t in &report.terms {
                let _ = writeln!(s, "  k={}: {} * {} * {}", t.k, t.index, t.left_dim, t.right_dim);
            }
        }
        Payload::OracleCosets { report } => {
            let _ = writeln!(
                s,
                "|G|={} cells={} expected={}",
                report.group_order,
                report.cells.len(),
                report.expected
            );
            for c in &report.cells {
                let _ = writeln!(s, "  size {:>6}: {}", c.size, c.representatives.join(" "));
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> Outcome {
        let mut empty: &[u8] = b"";
        run_args(std::iter::once("tjm").chain(args.iter().copied()), &mut empty)
    }

    #[test]
    fn dual_text() {
        let o = run_str(&["dual", "{[-3/2..3/2]}"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("[-3/2]"), "{}", o.stdout);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["dual", "{[1..0"]).code, EXIT_USAGE);
        assert_eq!(run_str(&["bogus"]).code, EXIT_USAGE);
        assert_eq!(run_str(&["tjm-table", "nope"]).code, EXIT_USAGE);
        assert_eq!(run_str(&["cosets", "--n", "2", "--r", "4"]).code, EXIT_USAGE);
    }

    #[test]
    fn batch_from_stdin() {
        let mut input: &[u8] = b"{[0..1]}\n\n{[1/2..3/2], [-1/2..1/2]}\n";
        let o = run_args(["tjm", "--json", "dual"], &mut input);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout.lines().count(), 2);
    }

    #[test]
    fn json_round_trip() {
        for args in [
            vec!["--json", "tjm-table", "xi"],
            vec!["--json", "tjm-table", "sigma"],
            vec!["--json", "conjecture", "--n", "2", "L{[1/2..3/2],[-3/2..-1/2]}"],
            vec![
                "--json",
                "tjm",
                "--n",
                "2",
                "--r",
                "2",
                "St(2,nu) x St(2,nu^-1)",
                "--explain",
            ],
            vec!["--json", "cosets", "--n", "2", "--r", "2", "--matrices"],
            vec!["--json", "dual", "--explain", "{[0..2],[1..1]}"],
            vec!["--json", "linked", "[0..1]", "[2..3]"],
            vec!["--json", "oracle", "tjm-dim", "--n", "1", "--r", "1"],
        ] {
            let o = run_str(&args);
            assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
            for line in o.stdout.lines() {
                let rep: Report = serde_json::from_str(line).unwrap();
                assert_eq!(serde_json::to_string(&rep).unwrap(), line);
                assert!(!rep.provenance.is_empty());
            }
        }
    }
}
