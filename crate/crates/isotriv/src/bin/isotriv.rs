use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use isotriv::baskets::{candidate_setups, enumerate_baskets, Basket};
use isotriv::cases::verify_case_with;
use isotriv::catalog::{catalog, signature_text};
use isotriv::exact::Rational;
use isotriv::pipeline::{classify, reproduce_main_theorem, ClassificationRow, ClassifyOptions};
use isotriv::quotsing::{appendix_a_text, enumerate_by_b, SingularityRow, SingularityType};
use isotriv::Error;

#[derive(Parser)]
#[command(name = "isotriv", version, about = "Standard isotrivial fibrations with p_g = q = 1")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Report every singularity type as 1/n(1,q') instead of 1/n(1,q).
    #[arg(long, global = true)]
    orientation_swap: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Resolution data of 1/n(1,q).
    Singularity { n: u32, q: u32 },
    /// Table of singularity types with B ≤ the bound.
    AppendixA {
        #[arg(long, default_value = "12")]
        max_b: Rational,
    },
    /// Baskets with the given K².
    Baskets {
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..=8))]
        k2: i64,
    },
    /// Candidate (g(F), n, basket) setups.
    Candidates {
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..=6))]
        k2: i64,
        #[arg(long)]
        include_rdp_only: bool,
    },
    /// Surfaces with the given K².
    Classify {
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..=6))]
        k2: i64,
        #[arg(long)]
        include_rdp_only: bool,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
    /// The minimal surfaces with K² = 5, 3, 2.
    MainTheorem {
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
    /// Recompute a worked case from its witness.
    VerifyCase { label: String },
    /// Singular fibres and minimality of a worked case.
    Fiber {
        #[arg(long = "case")]
        label: String,
    },
    /// The group catalog.
    Catalog,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Precondition(_) | Error::Parse(_) | Error::UnknownLabel(_) | Error::UnknownCase(_) => 2,
            Error::OrderBound(_) | Error::Construction(_) | Error::Inconsistent(_) => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 3, message: e.to_string() }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { code: 3, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: 3, message: e.to_string() }
    }
}

type Out<'a> = &'a mut dyn Write;

fn write_json(out: Out, value: &impl serde::Serialize) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_csv(out: Out, header: &[&str], rows: Vec<Vec<String>>) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush()?;
    Ok(())
}

/// Left-aligned columns separated by two spaces.
fn write_table(out: Out, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            width[i] = width[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            s.push_str(c);
            if i + 1 < cells.len() {
                s.push_str(&" ".repeat(width[i] - c.chars().count() + 2));
            }
        }
        s
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for r in rows {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn orient(b: &Basket, swap: bool) -> Basket {
    if swap {
        b.reversed()
    } else {
        b.clone()
    }
}

fn singularity(out: Out, format: Format, n: u32, q: u32) -> Result<(), Failure> {
    let t = SingularityType::new(n, q)?;
    let res = t.resolution();
    let inv = t.invariants();
    let b: Vec<String> = res.b.iter().map(|x| x.to_string()).collect();
    match format {
        Format::Text => {
            writeln!(out, "type      {t}")?;
            writeln!(out, "n/q       [{}]", b.join(","))?;
            writeln!(out, "q'        {}", res.q_prime)?;
            writeln!(out, "h         {}", inv.h)?;
            writeln!(out, "e         {}", inv.e)?;
            writeln!(out, "B         {} ({})", inv.b, inv.b.mixed())?;
            writeln!(out, "RDP       {}", if t.is_rdp() { "yes" } else { "no" })?;
            writeln!(out, "dual      {}", t.reversed())?;
        }
        Format::Json => write_json(
            out,
            &json!({
                "n": n, "q": q, "b": res.b, "q_prime": res.q_prime,
                "h": inv.h.to_string(), "e": inv.e.to_string(), "B": inv.b.to_string(),
                "rdp": t.is_rdp(),
            }),
        )?,
        Format::Csv => write_csv(
            out,
            &["n", "q", "b", "q_prime", "h", "e", "B", "rdp"],
            vec![vec![
                n.to_string(),
                q.to_string(),
                b.join(" "),
                res.q_prime.to_string(),
                inv.h.to_string(),
                inv.e.to_string(),
                inv.b.to_string(),
                t.is_rdp().to_string(),
            ]],
        )?,
    }
    Ok(())
}

fn appendix_a(out: Out, format: Format, max_b: Rational) -> Result<(), Failure> {
    let rows: Vec<SingularityRow> = enumerate_by_b(max_b);
    match format {
        Format::Text => write!(out, "{}", appendix_a_text(&rows))?,
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|r| json!({"n": r.n, "q": r.q, "b": r.b, "q_prime": r.q_prime, "B": r.big_b.mixed(), "h": r.h.to_string()}))
                .collect();
            write_json(out, &v)?
        }
        Format::Csv => write_csv(
            out,
            &["n", "q", "b", "q_prime", "B", "h"],
            rows.iter()
                .map(|r| {
                    let b: Vec<String> = r.b.iter().map(|x| x.to_string()).collect();
                    vec![
                        r.n.to_string(),
                        r.q.to_string(),
                        b.join(" "),
                        r.q_prime.to_string(),
                        r.big_b.mixed(),
                        r.h.to_string(),
                    ]
                })
                .collect(),
        )?,
    }
    Ok(())
}

fn baskets(out: Out, format: Format, k2: i64, swap: bool) -> Result<(), Failure> {
    let list: Vec<Basket> = enumerate_baskets(k2)?.iter().map(|b| orient(b, swap)).collect();
    match format {
        Format::Text => {
            for b in &list {
                writeln!(out, "{b}")?;
            }
        }
        Format::Json => write_json(out, &list)?,
        Format::Csv => {
            write_csv(out, &["k2", "sing"], list.iter().map(|b| vec![k2.to_string(), b.to_string()]).collect())?
        }
    }
    Ok(())
}

fn candidates(out: Out, format: Format, k2: i64, rdp: bool, swap: bool) -> Result<(), Failure> {
    let mut list = candidate_setups(k2, rdp)?;
    for c in &mut list {
        c.basket = orient(&c.basket, swap);
    }
    match format {
        Format::Text => {
            for c in &list {
                writeln!(out, "{c}")?;
            }
        }
        Format::Json => write_json(out, &list)?,
        Format::Csv => write_csv(
            out,
            &["k2", "g_alb", "sig_n", "sing"],
            list.iter()
                .map(|c| {
                    vec![k2.to_string(), c.genus_f.to_string(), signature_text(&c.signature_n), c.basket.to_string()]
                })
                .collect(),
        )?,
    }
    Ok(())
}

fn witness_text(r: &ClassificationRow) -> String {
    format!("{}; {}; {}", r.witness.v.join(","), r.witness.w.join(","), r.witness.h.join(","))
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

const ROW_FIELDS: [&str; 11] =
    ["k2", "g_alb", "g_c", "group_id", "case", "sig_m", "sig_n", "sing", "minimal", "k2_min", "witness"];

fn rows_csv(rows: &[ClassificationRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                r.k2.to_string(),
                r.g_alb.to_string(),
                r.g_c.to_string(),
                r.group_id.clone(),
                r.case.clone(),
                signature_text(&r.sig_m),
                signature_text(&r.sig_n),
                r.sing.to_string(),
                r.minimal.to_string(),
                r.k2_min.to_string(),
                witness_text(r),
            ]
        })
        .collect()
}

fn classify_rows(out: Out, format: Format, rows: &[ClassificationRow]) -> Result<(), Failure> {
    match format {
        Format::Text => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.k2.to_string(),
                        r.g_alb.to_string(),
                        r.g_c.to_string(),
                        r.group_name.clone(),
                        r.group_id.clone(),
                        format!("({})", r.case),
                        signature_text(&r.sig_m),
                        signature_text(&r.sig_n),
                        r.sing.to_string(),
                        yes_no(r.minimal),
                        r.k2_min.to_string(),
                    ]
                })
                .collect();
            write_table(
                out,
                &["K²", "g_alb", "g(C)", "G", "Id", "case", "m", "n", "Sing(T)", "minimal", "K²_min"],
                &table,
            )
        }
        Format::Json => write_json(out, &rows),
        Format::Csv => write_csv(out, &ROW_FIELDS, rows_csv(rows)),
    }
}

fn main_theorem_rows(out: Out, format: Format, rows: &[ClassificationRow]) -> Result<(), Failure> {
    match format {
        Format::Text => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.k2.to_string(),
                        r.g_alb.to_string(),
                        r.g_c.to_string(),
                        r.group_name.clone(),
                        r.group_id.clone(),
                        r.sing.to_string(),
                        yes_no(r.minimal),
                    ]
                })
                .collect();
            write_table(out, &["K²", "g_alb", "g(C)", "G", "Id", "Sing(T)", "minimal"], &table)
        }
        _ => classify_rows(out, format, rows),
    }
}

fn catalog_list(out: Out, format: Format) -> Result<(), Failure> {
    let entries = catalog().entries();
    match format {
        Format::Text => {
            let table: Vec<Vec<String>> = entries
                .iter()
                .map(|e| {
                    vec![
                        format!("({})", e.case_label),
                        e.genus.to_string(),
                        e.name.to_string(),
                        e.id_label.to_string(),
                        e.order.to_string(),
                        e.signature_text(),
                    ]
                })
                .collect();
            write_table(out, &["case", "g(F)", "G", "Id", "|G|", "m"], &table)
        }
        Format::Json => write_json(out, &entries),
        Format::Csv => write_csv(
            out,
            &["case", "genus", "group", "group_id", "order", "signature"],
            entries
                .iter()
                .map(|e| {
                    vec![
                        e.case_label.to_string(),
                        e.genus.to_string(),
                        e.name.to_string(),
                        e.id_label.to_string(),
                        e.order.to_string(),
                        e.signature_text(),
                    ]
                })
                .collect(),
        ),
    }
}

fn verify(out: Out, format: Format, label: &str, swap: bool) -> Result<(), Failure> {
    let report = verify_case_with(label, swap)?;
    match format {
        Format::Text => write!(out, "{report}")?,
        Format::Json => write_json(out, &report)?,
        Format::Csv => write_csv(
            out,
            &["check", "actual", "expected", "ok"],
            report
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), c.actual.clone(), c.expected.clone(), c.ok.to_string()])
                .collect(),
        )?,
    }
    if !report.all_ok() {
        let bad: Vec<&str> = report.checks.iter().filter(|c| !c.ok).map(|c| c.name.as_str()).collect();
        return Err(Failure { code: 3, message: format!("case {label}: mismatch in {}", bad.join(", ")) });
    }
    Ok(())
}

fn fiber(out: Out, format: Format, label: &str, swap: bool) -> Result<(), Failure> {
    let report = verify_case_with(label, swap)?;
    match format {
        Format::Text => {
            writeln!(out, "case {}: {} {}, Sing(T) = {}", report.label, report.group, report.group_id, report.sing)?;
            for f in &report.fibers {
                let (k, y) = f.central_numbers();
                writeln!(out, "{f}")?;
                writeln!(out, "K·Y = {k}, Y² = {y}")?;
            }
            if report.minimal {
                writeln!(out, "minimal, K² = {}", report.k2)?;
            } else {
                writeln!(out, "not minimal")?;
                writeln!(out, "contract {}", report.contraction_steps.join(", "))?;
                writeln!(out, "K² = {} → {}", report.k2, report.k2_min)?;
            }
        }
        Format::Json => write_json(
            out,
            &json!({
                "case": report.label,
                "fibers": report.fibers.iter().map(|f| json!({
                    "decomposition": f.to_string(),
                    "k_y": f.central_numbers().0,
                    "y2": f.central_numbers().1,
                    "curves": f.curves(),
                })).collect::<Vec<_>>(),
                "minimal": report.minimal,
                "steps": report.contraction_steps,
                "k2": report.k2,
                "k2_min": report.k2_min,
            }),
        )?,
        Format::Csv => write_csv(
            out,
            &["case", "fiber", "k_y", "y2", "minimal", "steps", "k2_min"],
            report
                .fibers
                .iter()
                .map(|f| {
                    vec![
                        report.label.clone(),
                        f.to_string(),
                        f.central_numbers().0.to_string(),
                        f.central_numbers().1.to_string(),
                        report.minimal.to_string(),
                        report.contraction_steps.join(" "),
                        report.k2_min.to_string(),
                    ]
                })
                .collect(),
        )?,
    }
    Ok(())
}

fn run(cli: Cli, out: Out) -> Result<(), Failure> {
    let swap = cli.orientation_swap;
    let opts = |include_rdp_only: bool, jobs: usize| ClassifyOptions { include_rdp_only, jobs, orientation_swap: swap };
    match cli.command {
        Command::Singularity { n, q } => singularity(out, cli.format, n, q),
        Command::AppendixA { max_b } => appendix_a(out, cli.format, max_b),
        Command::Baskets { k2 } => baskets(out, cli.format, k2, swap),
        Command::Candidates { k2, include_rdp_only } => candidates(out, cli.format, k2, include_rdp_only, swap),
        Command::Classify { k2, include_rdp_only, jobs } => {
            let rows = classify(k2, opts(include_rdp_only, jobs))?;
            classify_rows(out, cli.format, &rows)
        }
        Command::MainTheorem { jobs } => {
            let rows = reproduce_main_theorem(opts(false, jobs))?;
            main_theorem_rows(out, cli.format, &rows)
        }
        Command::VerifyCase { label } => verify(out, cli.format, &label, swap),
        Command::Fiber { label } => fiber(out, cli.format, &label, swap),
        Command::Catalog => catalog_list(out, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = lock.flush();
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
