//! Command-line front end. `run` parses argv, dispatches one verb and writes
//! the report as canonical text or JSON. Exit codes: 0 success, 1 a check
//! failed (or a computation error), 2 usage error.

mod reproduce;

pub use reproduce::{reproduce_table, ReproduceRow};

use crate::chern::{cached_beta_matrices, s_to_chern, seed_beta_cache, BetaMatrix};
use crate::divdiff::{export_memo, flag_class, flag_vanishing_checks, grassmann_class, grassmann_q_polynomial, import_memo, FlagMethod};
use crate::error::{Error, Result};
use crate::exactalg::render_rational;
use crate::fgl;
use crate::genus::{chern_character_of_genus, cobordism_class, genus_report, s_number_numeric, s_numbers, verify_low_vanishing, weyl_invariant};
use crate::rootdata::{build_space, euler_characteristic, fixed_point_weights, orbit_consistent, FixedPointData, HomogeneousSpaceSpec, GRAMMAR};
use crate::stablex::{check_necessary, enumerate_feasible, s_numbers_for, SignAssignment};
use crate::symmfunc::{omega_indices, OmegaIndex};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "torigen", version, about = "Toric genus, cobordism classes and characteristic numbers of homogeneous spaces")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for the parallel sums and searches.
    #[arg(long, env = "TORIGEN_THREADS", global = true)]
    pub threads: Option<usize>,
    /// Directory holding canonical-text caches of beta matrices and P/Q polynomials.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    /// e.g. "U(3)/T3", "U(4)/U(2)xU(2)", "SU(4)/S(U(1)xU(1)xU(2))", "G2/SU(3)", "CP3"
    #[arg(long)]
    pub space: String,
    /// standard, conjugate, J1, J2 or J3
    #[arg(long, conflicts_with = "signs")]
    pub structure: Option<String>,
    /// Signs in complementary-root order, e.g. "+,-,+".
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Chern-Dold character of the toric genus, with its checks.
    Genus {
        #[command(flatten)]
        space: SpaceArgs,
        /// Truncation order of the series (default: the dimension).
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// Cobordism class in the a-generators.
    Class {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Characteristic numbers s_omega.
    Snumbers {
        #[command(flatten)]
        space: SpaceArgs,
        /// Single omega as comma-separated exponents.
        #[arg(long)]
        omega: Option<String>,
        /// Evaluate at an integer point instead of symbolically.
        #[arg(long, allow_hyphen_values = true)]
        numeric: Option<String>,
    },
    /// Chern numbers.
    Chern {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Structural checks: vanishing, Weyl invariance, orbit consistency, Euler characteristic.
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Class of the flag manifold U(n)/T^n by the operator L.
    Flag {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "corL")]
        method: String,
        /// Also run the vanishing and parity suite.
        #[arg(long)]
        checks: bool,
    },
    /// Class of the Grassmannian U(q+l)/U(q)xU(l), or one Q polynomial.
    Grassmann {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        l: usize,
        /// Exponent vector of a single Q polynomial, e.g. 3,2,1,0.
        #[arg(long)]
        xi: Option<String>,
    },
    /// Admissible stable complex structures.
    Stable {
        #[command(flatten)]
        space: SpaceArgs,
        /// JSON assignment {"0": [..], ..., "epsilon": ..} to check instead of enumerating.
        #[arg(long)]
        assign: Option<PathBuf>,
        #[arg(long, default_value_t = 1 << 24)]
        budget: u128,
    },
    /// Formal group law series.
    Fgl {
        #[arg(long, value_enum, default_value_t = FglSeries::Log)]
        series: FglSeries,
        #[arg(long, default_value_t = 6)]
        trunc: u32,
        /// Weight for `bracket`, e.g. 2 or 1,-1.
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        w: String,
    },
    /// Recompute the reference table and compare exactly.
    Reproduce {
        #[arg(long)]
        all: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FglSeries {
    Log,
    Exp,
    Sum,
    Bracket,
    AOfB,
    BOfA,
}

/// Outcome of one command before rendering.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, ok: true }
    }
}

fn usage(msg: impl std::fmt::Display) -> Error {
    Error::Invalid(format!("{msg}"))
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',').map(|v| v.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {v:?} in {s:?}")))).collect()
}

fn parse_signs(s: &str) -> Result<Vec<i8>> {
    s.split(',')
        .map(|v| match v.trim() {
            "+" | "+1" | "1" => Ok(1),
            "-" | "-1" => Ok(-1),
            o => Err(Error::Parse(format!("bad sign {o:?}"))),
        })
        .collect()
}

fn resolve(args: &SpaceArgs) -> Result<HomogeneousSpaceSpec> {
    let spec = build_space(&args.space)?;
    match (&args.structure, &args.signs) {
        (Some(s), _) => spec.with_structure(s),
        (None, Some(s)) => spec.with_signs(&parse_signs(s)?),
        (None, None) => Ok(spec),
    }
}

fn data(args: &SpaceArgs) -> Result<(HomogeneousSpaceSpec, FixedPointData)> {
    let spec = resolve(args)?;
    let fp = fixed_point_weights(&spec)?;
    Ok((spec, fp))
}

fn header(spec: &HomogeneousSpaceSpec) -> Value {
    json!({ "space": spec.descriptor, "structure": spec.structure })
}

fn with_header(spec: &HomogeneousSpaceSpec, extra: Value) -> Value {
    let mut v = header(spec);
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

fn cmd_genus(args: &SpaceArgs, trunc: Option<u32>) -> Result<Report> {
    let (spec, fp) = data(args)?;
    let order = trunc.unwrap_or(fp.dim() as u32);
    let series = chern_character_of_genus(&fp, order)?;
    let r = genus_report(&spec, &fp)?;
    let ok = r.checks.vanishing && r.checks.weyl_invariance;
    let text = format!(
        "{}\nvanishing: {}\nweyl invariance: {}\n",
        series.render(),
        if r.checks.vanishing { "ok" } else { "FAIL" },
        if r.checks.weyl_invariance { "ok" } else { "FAIL" }
    );
    let mut json = serde_json::to_value(&r).map_err(|e| Error::Io(e.to_string()))?;
    if let Value::Object(m) = &mut json {
        m.insert("order".into(), json!(order));
        m.insert("series".into(), json!(series.render()));
    }
    Ok(Report { text, json, ok })
}

fn cmd_class(args: &SpaceArgs) -> Result<Report> {
    let (spec, fp) = data(args)?;
    let class = cobordism_class(&fp)?;
    Ok(Report::ok(format!("{}\n", class.render()), with_header(&spec, json!({ "class": class.render() }))))
}

fn cmd_snumbers(args: &SpaceArgs, omega: Option<&str>, numeric: Option<&str>) -> Result<Report> {
    let (spec, fp) = data(args)?;
    let n = fp.dim();
    let omegas = match omega {
        Some(o) => vec![OmegaIndex::parse(o)?.padded(n)],
        None => omega_indices(n as u32, n),
    };
    let values: Vec<(OmegaIndex, String)> = match numeric {
        Some(p) => {
            let point = parse_ints(p)?;
            omegas.iter().map(|o| Ok((o.clone(), render_rational(&s_number_numeric(&fp, o, &point)?)))).collect::<Result<_>>()?
        }
        None => {
            let s = s_numbers(&fp)?;
            omegas.iter().map(|o| (o.clone(), s.get(o).map(|v| v.to_string()).unwrap_or_else(|| "0".into()))).collect()
        }
    };
    let text = if omega.is_some() {
        format!("{}\n", values[0].1)
    } else {
        values.iter().map(|(o, v)| format!("{o} {v}\n")).collect()
    };
    let rows: Vec<Value> = values.iter().map(|(o, v)| json!({ "omega": o.to_string(), "value": v })).collect();
    Ok(Report::ok(text, with_header(&spec, json!({ "s_numbers": rows }))))
}

fn cmd_chern(args: &SpaceArgs) -> Result<Report> {
    let (spec, fp) = data(args)?;
    let table = s_to_chern(&s_numbers(&fp)?, fp.dim())?;
    let text = table.entries().iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
    let rows = serde_json::to_value(table.json_rows()).map_err(|e| Error::Io(e.to_string()))?;
    Ok(Report::ok(text, with_header(&spec, json!({ "chern": rows }))))
}

fn check_lines(checks: &[(String, bool, String)]) -> (String, Value, bool) {
    let text = checks.iter().map(|(n, ok, d)| format!("{} {n}: {d}\n", if *ok { "PASS" } else { "FAIL" })).collect();
    let json = checks.iter().map(|(n, ok, d)| json!({ "name": n, "ok": ok, "detail": d })).collect();
    (text, Value::Array(json), checks.iter().all(|c| c.1))
}

fn cmd_verify(args: &SpaceArgs) -> Result<Report> {
    let (spec, fp) = data(args)?;
    let mut checks = Vec::new();
    let van = verify_low_vanishing(&fp)?;
    let detail = match &van.failure {
        None => format!("t^0..t^{} vanish", fp.dim() - 1),
        Some(f) => format!("t^{} coefficient of a^{} is nonzero", f.l, f.omega),
    };
    checks.push(("vanishing".to_string(), van.ok, detail));
    let weyl = weyl_invariant(&spec, &chern_character_of_genus(&fp, 2)?)?;
    checks.push(("weyl invariance".into(), weyl, "degree <= 2".into()));
    let orbit = orbit_consistent(&fp, &spec.weyl_generators());
    checks.push(("orbit consistency".into(), orbit, "generators permute the weight sets".into()));
    let chi = euler_characteristic(&spec);
    let s = s_numbers(&fp)?;
    let mut top = vec![0; fp.dim()];
    top[0] = fp.dim() as u32;
    let s_n = s.get(&OmegaIndex(top)).cloned().unwrap_or_default();
    let want = fp.signed_count();
    checks.push(("s_(n,0,..,0) = signed point count".into(), s_n == want.into(), format!("{s_n} vs {want}, chi = {chi}")));
    let (text, rows, ok) = check_lines(&checks);
    Ok(Report { text, json: with_header(&spec, json!({ "checks": rows })), ok })
}

fn cmd_flag(n: usize, method: &str, checks: bool) -> Result<Report> {
    let m: FlagMethod = method.parse()?;
    let class = flag_class(n, m)?;
    let mut text = format!("{}\n", class.render());
    let mut json = json!({ "n": n, "method": method, "class": class.render() });
    let mut ok = true;
    if checks {
        let r = flag_vanishing_checks(n)?;
        let rows: Vec<(String, bool, String)> = r.checks.iter().map(|c| (c.name.clone(), c.ok, c.detail.clone())).collect();
        let (t, j, all) = check_lines(&rows);
        text.push_str(&t);
        json["checks"] = j;
        ok = all;
    }
    Ok(Report { text, json, ok })
}

fn cmd_grassmann(q: usize, l: usize, xi: Option<&str>) -> Result<Report> {
    match xi {
        Some(x) => {
            let e: Vec<u16> = parse_ints(x)?.into_iter().map(|v| u16::try_from(v).map_err(|_| Error::Parse(format!("bad exponent {v}")))).collect::<Result<_>>()?;
            let p = grassmann_q_polynomial(q, l, &e)?;
            Ok(Report::ok(format!("{}\n", p.render()), json!({ "q": q, "l": l, "xi": x, "Q": p.render() })))
        }
        None => {
            let c = grassmann_class(q, l)?;
            Ok(Report::ok(format!("{}\n", c.render()), json!({ "q": q, "l": l, "class": c.render() })))
        }
    }
}

fn cmd_stable(args: &SpaceArgs, assign: Option<&Path>, budget: u128) -> Result<Report> {
    let spec = resolve(args)?;
    match assign {
        Some(path) => {
            let raw = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&raw).map_err(|e| Error::Parse(e.to_string()))?;
            let a = SignAssignment::from_json(&v)?;
            let r = check_necessary(&spec, &a)?;
            let mut json = with_header(&spec, json!({ "assignment": a.to_json(), "admissible": r.ok }));
            let mut text = format!("{}\n", if r.ok { "admissible" } else { "not admissible" });
            match &r.violation {
                Some((om, val)) => {
                    text.push_str(&format!("violation at {om}: {val}\n"));
                    json["violation"] = json!({ "omega": om.to_string(), "value": val });
                }
                None => {
                    let s = s_numbers_for(&spec, &a)?;
                    text.extend(s.iter().map(|(o, v)| format!("{o} {v}\n")));
                    json["s_numbers"] = Value::Array(s.iter().map(|(o, v)| json!({ "omega": o.to_string(), "value": v.to_string() })).collect());
                }
            }
            Ok(Report { text, json, ok: r.ok })
        }
        None => {
            let all = enumerate_feasible(&spec, budget)?;
            let mut text = format!("{} admissible\n", all.len());
            text.extend(all.iter().map(|a| format!("{a:?}\n")));
            let rows: Vec<Value> = all.iter().map(|a| a.to_json()).collect();
            Ok(Report::ok(text, with_header(&spec, json!({ "count": all.len(), "assignments": rows }))))
        }
    }
}

fn cmd_fgl(series: FglSeries, order: u32, w: &str) -> Result<Report> {
    let list = |v: Vec<crate::exactalg::CobordismPoly>, letter: &str| -> (String, Value) {
        let text = v.iter().enumerate().map(|(i, c)| format!("{letter}{} = {}\n", i + 1, c.render())).collect();
        let rows = v.iter().enumerate().map(|(i, c)| json!({ "name": format!("{letter}{}", i + 1), "value": c.render() })).collect();
        (text, Value::Array(rows))
    };
    let (name, text, value) = match series {
        FglSeries::Log => ("log", format!("{}\n", fgl::log_series(order).render()), Value::Null),
        FglSeries::Exp => ("exp", format!("{}\n", fgl::exp_series(order)?.render()), Value::Null),
        FglSeries::Sum => ("sum", format!("{}\n", fgl::fgl_addition(order)?.render()), Value::Null),
        FglSeries::Bracket => {
            let weight = parse_ints(w)?;
            let s = if weight.len() == 1 { fgl::power_system(weight[0], order)? } else { fgl::multi_bracket(&weight, order)? };
            ("bracket", format!("{}\n", s.render()), Value::Null)
        }
        FglSeries::AOfB => {
            let (t, v) = list(fgl::a_in_terms_of_b(order)?, "a");
            ("a-of-b", t, v)
        }
        FglSeries::BOfA => {
            let (t, v) = list(fgl::b_in_terms_of_a(order)?, "b");
            ("b-of-a", t, v)
        }
    };
    let json = if value.is_null() {
        json!({ "series": name, "order": order, "value": text.trim_end() })
    } else {
        json!({ "series": name, "order": order, "value": value })
    };
    Ok(Report::ok(text, json))
}

fn cmd_reproduce(all: bool) -> Result<Report> {
    if !all {
        return Err(usage("reproduce needs --all"));
    }
    let rows = reproduce_table();
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let text = rows.iter().map(|r| format!("{} {:width$}  got {}  expected {}\n", if r.ok { "PASS" } else { "FAIL" }, r.name, r.got, r.expected)).collect();
    let json = Value::Array(rows.iter().map(|r| json!({ "row": r.name, "got": r.got, "expected": r.expected, "ok": r.ok })).collect());
    Ok(Report { text, json, ok: rows.iter().all(|r| r.ok) })
}

fn load_cache(dir: &Path) -> Result<()> {
    let Ok(entries) = std::fs::read_dir(dir) else { return Ok(()) };
    for e in entries.flatten() {
        let name = e.file_name().to_string_lossy().to_string();
        let read = || std::fs::read_to_string(e.path()).map_err(|err| Error::Io(err.to_string()));
        if name.starts_with("beta_") && name.ends_with(".txt") {
            seed_beta_cache(BetaMatrix::parse(&read()?)?);
        } else if name == "pq_memo.txt" {
            import_memo(&read()?)?;
        }
    }
    Ok(())
}

fn store_cache(dir: &Path) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    for b in cached_beta_matrices() {
        std::fs::write(dir.join(format!("beta_{}.txt", b.n)), b.render()).map_err(io)?;
    }
    std::fs::write(dir.join("pq_memo.txt"), export_memo()).map_err(io)
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Genus { space, trunc } => cmd_genus(space, *trunc),
        Command::Class { space } => cmd_class(space),
        Command::Snumbers { space, omega, numeric } => cmd_snumbers(space, omega.as_deref(), numeric.as_deref()),
        Command::Chern { space } => cmd_chern(space),
        Command::Verify { space } => cmd_verify(space),
        Command::Flag { n, method, checks } => cmd_flag(*n, method, *checks),
        Command::Grassmann { q, l, xi } => cmd_grassmann(*q, *l, xi.as_deref()),
        Command::Stable { space, assign, budget } => cmd_stable(space, assign.as_deref(), *budget),
        Command::Fgl { series, trunc, w } => cmd_fgl(*series, *trunc, w),
        Command::Reproduce { all } => cmd_reproduce(*all),
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(e, Error::Parse(_) | Error::UnsupportedGroup(_) | Error::Invalid(_))
}

/// Render a JSON report; parsing it back and re-rendering gives the same bytes.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

/// Run one command line (argv[0] included) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "{e}\n{GRAMMAR}");
            return 2;
        }
    };
    if let Some(dir) = &cli.cache {
        if let Err(e) = load_cache(dir) {
            let _ = writeln!(err, "cache: {e}");
            return 1;
        }
    }
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::Invalid(e.to_string())),
        },
        None => dispatch(&cli),
    };
    let code = match result {
        Ok(report) => {
            let body = match cli.format {
                Format::Text => report.text,
                Format::Json => render_json(&report.json),
            };
            let _ = out.write_all(body.as_bytes());
            i32::from(!report.ok)
        }
        Err(e) if is_usage_error(&e) => {
            let _ = writeln!(err, "error: {e}");
            if !e.to_string().contains(GRAMMAR) {
                let _ = writeln!(err, "{GRAMMAR}");
            }
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    };
    if let Some(dir) = &cli.cache {
        if let Err(e) = store_cache(dir) {
            let _ = writeln!(err, "cache: {e}");
            return 1;
        }
    }
    code
}
