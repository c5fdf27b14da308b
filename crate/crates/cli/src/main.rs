use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gss_core::json::{dll_to_json, e1_to_json, lambda_to_json, page_to_json};
use gss_core::parse::{parse_dll_sequence, parse_e1_element, parse_lambda_element};
use gss_core::{
    check_scope, e1_basis, e1_basis_upto, e3_page, einf_row0_basis, Check, E1Class, Error,
    GoodwillieSs, PrimeContext, Sweep,
};

#[derive(Parser)]
#[command(
    name = "gss",
    version,
    about = "Lambda algebra, DLL operations and the d2 differential over F_p"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// The prime.
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Admissible expansion of a Lambda element, e.g. "L3 L262".
    Normalize {
        #[command(flatten)]
        common: Common,
        expr: String,
    },
    /// CU expansion of a DLL word applied to the generator of degree l, e.g. "Q2 Q3".
    DllNormalize {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        l: i64,
        word: String,
    },
    /// d2 of a class expression; a bare Lambda element x means ι_l ⊗ x.
    D2 {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        l: i64,
        expr: String,
    },
    /// E1 basis of a cell.
    Basis {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        t: i64,
        #[arg(long)]
        m: usize,
        /// Exact Lambda length; without it every length up to --s-max is listed.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value_t = 4)]
        s_max: usize,
    },
    /// Dimensions of the third page on a window.
    E3 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        t_max: i64,
        #[arg(long, default_value_t = 6)]
        m_max: usize,
        #[arg(long, default_value_t = 4)]
        s_max: usize,
    },
    /// Predicted row-0 survivors in degree t.
    Einf {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        t: i64,
        #[arg(long, default_value_t = 4)]
        s_max: usize,
    },
    /// Run the invariant sweeps; exits 1 on the first failing check.
    Verify {
        /// Prime to check; both 2 and 3 when omitted.
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 4)]
        s_max: usize,
        /// Override the generator degrees of the standard window.
        #[arg(long, value_delimiter = ',')]
        l: Option<Vec<i64>>,
        #[arg(long)]
        t_max: Option<i64>,
        #[arg(long)]
        m_max: Option<usize>,
        /// Only run the named checks.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
    Scope(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfScope(_) => Failure::Scope(e.to_string()),
            Error::ShiftMismatch { .. } | Error::RelationMismatch { .. } => {
                Failure::Compute(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

fn context(p: u32, l: Option<i64>) -> Result<PrimeContext, Failure> {
    let ctx = PrimeContext::new(p)?;
    if let Some(l) = l {
        check_scope(l, &ctx)?;
    }
    Ok(ctx)
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn no_csv(format: Format) -> Result<(), Failure> {
    match format {
        Format::Csv => Err(Failure::Usage("CSV output is only available for e3".into())),
        _ => Ok(()),
    }
}

fn class_json(c: &E1Class) -> Value {
    json!({
        "s": c.s(),
        "dll": c.dll.gens().iter().map(|g| [g.index, g.bockstein as u32]).collect::<Vec<_>>(),
        "lambda": c.lambda.gens().iter().map(|g| [g.index, g.epsilon as u32]).collect::<Vec<_>>(),
    })
}

fn classes_output(classes: &[E1Class], header: Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut v = header;
            v["classes"] = classes.iter().map(class_json).collect();
            json_text(&v)
        }
        _ => classes
            .iter()
            .map(|c| format!("{c}\n"))
            .collect::<String>()
            .trim_end()
            .to_string(),
    }
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Normalize { common, expr } => {
            no_csv(common.format)?;
            let ctx = context(common.p, None)?;
            let x = parse_lambda_element(&expr, &ctx)?;
            let y = GoodwillieSs::new(ctx).lambda().normalize_element(&x);
            let text = match common.format {
                Format::Json => json_text(&json!(lambda_to_json(&y, &ctx))),
                _ => y.to_string(),
            };
            Ok((text, true))
        }
        Cmd::DllNormalize { common, l, word } => {
            no_csv(common.format)?;
            let ctx = context(common.p, Some(l))?;
            let w = parse_dll_sequence(&word, &ctx)?;
            let y = GoodwillieSs::new(ctx).dll().normalize(&w, l);
            let text = match common.format {
                Format::Json => json_text(&json!(dll_to_json(&y, l, &ctx))),
                _ => y.to_string(),
            };
            Ok((text, true))
        }
        Cmd::D2 { common, l, expr } => {
            no_csv(common.format)?;
            let ctx = context(common.p, Some(l))?;
            let ss = GoodwillieSs::new(ctx);
            let x = parse_e1_element(&expr, l, &ctx)?;
            let y = ss.d2(&ss.canonicalize(&x)?)?;
            let l = x.keys().next().map_or(l, |c| c.l);
            let text = match common.format {
                Format::Json => json_text(&json!(e1_to_json(&y, l, &ctx))),
                _ => y.to_string(),
            };
            Ok((text, true))
        }
        Cmd::Basis {
            common,
            l,
            t,
            m,
            s,
            s_max,
        } => {
            no_csv(common.format)?;
            let ctx = context(common.p, Some(l))?;
            let classes = match s {
                Some(s) => e1_basis(l, t, m, s, &ctx)?,
                None => e1_basis_upto(l, t, m, s_max, &ctx)?,
            };
            let header = json!({"p": ctx.p(), "l": l, "t": t, "m": m});
            Ok((classes_output(&classes, header, common.format), true))
        }
        Cmd::E3 {
            common,
            l,
            t_max,
            m_max,
            s_max,
        } => {
            let ctx = context(common.p, Some(l))?;
            let ss = GoodwillieSs::new(ctx);
            let kernels = common.format == Format::Json;
            let r = e3_page(&ss, l, t_max, m_max, s_max, kernels)?;
            let text = match common.format {
                Format::Json => json_text(&page_to_json(&r, &ctx)),
                Format::Csv => r.to_csv().trim_end().to_string(),
                Format::Text => {
                    let mut s = String::from("t m s dim_e1 rank_out rank_in dim_e3");
                    for c in &r.cells {
                        s.push_str(&format!(
                            "\n{} {} {} {} {} {} {}",
                            c.t, c.m, c.s, c.dim_e1, c.rank_out, c.rank_in, c.dim_e3
                        ));
                    }
                    s
                }
            };
            Ok((text, true))
        }
        Cmd::Einf {
            common,
            l,
            t,
            s_max,
        } => {
            no_csv(common.format)?;
            let ctx = context(common.p, Some(l))?;
            let mut classes = Vec::new();
            for s in 0..=s_max {
                classes.extend(einf_row0_basis(l, t, s, &ctx)?);
            }
            let header = json!({"p": ctx.p(), "l": l, "t": t, "m": 0});
            Ok((classes_output(&classes, header, common.format), true))
        }
        Cmd::Verify {
            p,
            format,
            out: _,
            jobs,
            s_max,
            l,
            t_max,
            m_max,
            only,
        } => {
            no_csv(format)?;
            if let Some(n) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .map_err(|e| Failure::Usage(e.to_string()))?;
            }
            let checks: Vec<Check> = match &only {
                None => Check::ALL.to_vec(),
                Some(names) => {
                    let mut v = Vec::new();
                    for n in names {
                        match Check::ALL.iter().find(|c| c.name() == n) {
                            Some(c) => v.push(*c),
                            None => return Err(Failure::Usage(format!("unknown check {n}"))),
                        }
                    }
                    v
                }
            };
            let primes = p.map_or(vec![2, 3], |p| vec![p]);
            let mut reports = Vec::new();
            let mut ok = true;
            'outer: for p in primes {
                let ctx = context(p, None)?;
                let mut sweep = Sweep::standard(&ctx, s_max);
                if let Some(ls) = &l {
                    for &x in ls {
                        check_scope(x, &ctx)?;
                    }
                    sweep.ls = ls.clone();
                }
                if let Some(t) = t_max {
                    sweep.t_max = t;
                }
                if let Some(m) = m_max {
                    sweep.m_max = m;
                }
                let ss = GoodwillieSs::new(ctx);
                for check in &checks {
                    let r = check.run(&ss, &sweep);
                    ok &= r.passed();
                    reports.push(r);
                    if !ok {
                        break 'outer;
                    }
                }
            }
            let text = match format {
                Format::Json => json_text(&json!(reports)),
                _ => reports
                    .iter()
                    .map(|r| match &r.failure {
                        None => format!("PASS p={} {} ({} cases)", r.p, r.check, r.checked),
                        Some(w) => format!("FAIL p={} {}: {w}", r.p, r.check),
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            Ok((text, ok))
        }
    }
}

fn out_path(cmd: &Cmd) -> Option<PathBuf> {
    match cmd {
        Cmd::Normalize { common, .. }
        | Cmd::DllNormalize { common, .. }
        | Cmd::D2 { common, .. }
        | Cmd::Basis { common, .. }
        | Cmd::E3 { common, .. }
        | Cmd::Einf { common, .. } => common.out.clone(),
        Cmd::Verify { out, .. } => out.clone(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = out_path(&cli.cmd);
    let result = run(cli.cmd).and_then(|(text, ok)| {
        let text = text + "\n";
        match &out {
            Some(path) => fs::write(path, text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Scope(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
