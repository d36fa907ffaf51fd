//! `k3crc`: exact q-expansions, curve-count tables, the -y = exp(iu)
//! transform, and self-verification reports, all as deterministic
//! machine-readable output.
//!
//! Exit codes: 0 on success, 1 on a verification mismatch, 2 on usage errors.
//! The environment variable `K3CRC_MAX_ORDER` caps every order-like argument
//! as a safety limit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use k3crc_core::forms::{discriminant_series, kernel_series, theta_series, FormOrder};
use k3crc_core::invariants::{
    hilb_three_point_table, hilb_two_point_table, sym_three_point_table, verify_crepant_transform,
    verify_yau_zaslow, FaultInjection, InvariantTable, SignConvention,
};
use k3crc_core::partitions::{count_weighted, enumerate_weighted, gottsche_counts, WeightedPartition};
use k3crc_core::rational::GaussianRational;
use k3crc_core::transform::{
    crc_transform, pade_reconstruct, RationalFunction, USeries,
};
use k3crc_core::{HalfLaurent, QLaurentSeries, SeriesError};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DEFAULT_Q_ORDER: i64 = 12;
const DEFAULT_U_ORDER: i64 = 16;
const DEFAULT_BASIS: u32 = 24;

#[derive(Parser)]
#[command(name = "k3crc", version, about = "Exact curve-count series for Hilbert schemes of K3 points and their symmetric-product transform")]
struct Cli {
    /// Output format; csv is available for invariant tables only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
    /// Golden-file directory: writes the output there on first use and
    /// byte-compares against it afterwards (mismatch exits 1).
    #[arg(long, global = true)]
    golden: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Copy, Clone, ValueEnum)]
enum SignArg {
    Paper,
    AgeLiteral,
}

impl From<SignArg> for SignConvention {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Paper => SignConvention::Paper,
            SignArg::AgeLiteral => SignConvention::AgeLiteral,
        }
    }
}

fn sign_name(s: SignArg) -> &'static str {
    match s {
        SignArg::Paper => "paper",
        SignArg::AgeLiteral => "age-literal",
    }
}

#[derive(Subcommand)]
enum Command {
    /// q-expansions of the named forms.
    Expand {
        #[command(subcommand)]
        form: ExpandForm,
    },
    /// Cohomology-weighted partitions of n with their ages.
    Partitions(PartitionsArgs),
    /// Curve-count invariant tables.
    Invariants {
        #[command(subcommand)]
        side: InvariantsSide,
    },
    /// Transform one fixed-degree generating polynomial to a u-series.
    Transform(TransformArgs),
    /// Self-verification reports; mismatches exit 1.
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
}

#[derive(Subcommand)]
enum ExpandForm {
    /// The modular discriminant.
    Delta {
        #[arg(long, default_value_t = DEFAULT_Q_ORDER)]
        order: i64,
    },
    /// The two-variable Jacobi theta function.
    Theta {
        #[arg(long, default_value_t = DEFAULT_Q_ORDER)]
        order: i64,
    },
    /// The kernel F^{2n-2}/Delta.
    Kernel {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_Q_ORDER)]
        order: i64,
    },
}

#[derive(Args)]
struct PartitionsArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = DEFAULT_BASIS)]
    basis: u32,
    /// Emit only the count, not the partition list.
    #[arg(long)]
    count_only: bool,
}

#[derive(Subcommand)]
enum InvariantsSide {
    /// Hilbert-scheme side table keyed by (h, k).
    Hilb {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        hmax: u32,
        /// Three-point normalization (scaled by 1/n) instead of two-point.
        #[arg(long)]
        three_point: bool,
    },
    /// Symmetric-product side table keyed by (h, degree).
    Sym {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        hmax: u32,
        #[arg(long, default_value_t = DEFAULT_U_ORDER)]
        u_order: i64,
        #[arg(long, value_enum, default_value_t = SignArg::Paper)]
        sign: SignArg,
    },
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    h: u32,
    #[arg(long, default_value_t = DEFAULT_U_ORDER)]
    u_order: i64,
    /// Divisibility of the underlying surface class. The default classes are
    /// primitive; values above 2 are outside the proven range and the output
    /// is tagged accordingly.
    #[arg(long, default_value_t = 1)]
    divisibility: u32,
}

#[derive(Subcommand)]
enum VerifyCheck {
    /// Weighted-partition counts against series inversion.
    Gottsche {
        #[arg(long)]
        nmax: u32,
        /// Self-test hook: bump the enumerated count at this n and report the
        /// resulting mismatch.
        #[arg(long)]
        inject_error: Option<u32>,
    },
    /// Per-degree transforms against the direct kernel substitution.
    Thm2 {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_Q_ORDER)]
        order: i64,
        #[arg(long, default_value_t = DEFAULT_U_ORDER)]
        u_order: i64,
        #[arg(long, value_enum, default_value_t = SignArg::Paper)]
        sign: SignArg,
        /// Self-test hook `H,UPOW`: bump one reassembled coefficient.
        #[arg(long)]
        inject_error: Option<String>,
    },
    /// n = 1 table against an independent integer-arithmetic expansion.
    YauZaslow {
        #[arg(long, default_value_t = 4)]
        hmax: u32,
        /// Self-test hook: bump the reference count at this h.
        #[arg(long)]
        inject_error: Option<u32>,
    },
    /// Random rational functions recovered exactly from Taylor data.
    PadeRoundtrip {
        #[arg(long, default_value_t = 200)]
        cases: u32,
        #[arg(long, default_value_t = 0x6b33)]
        seed: u64,
        /// Self-test hook: corrupt the Taylor data of this case index.
        #[arg(long)]
        inject_error: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

enum Failure {
    Mismatch,
    Usage(String),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Applies the K3CRC_MAX_ORDER cap to every order-like argument.
fn check_order_cap(values: &[(&str, i64)]) -> Result<(), Failure> {
    for &(name, v) in values {
        if v < 1 {
            return usage(format!("{} must be at least 1 (got {})", name, v));
        }
    }
    if let Ok(raw) = std::env::var("K3CRC_MAX_ORDER") {
        let cap: i64 = match raw.parse() {
            Ok(c) => c,
            Err(_) => return usage(format!("K3CRC_MAX_ORDER is not an integer: {:?}", raw)),
        };
        for &(name, v) in values {
            if v > cap {
                return usage(format!(
                    "{} = {} exceeds the K3CRC_MAX_ORDER limit of {}",
                    name, v, cap
                ));
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ctx = OutputContext { format: cli.output, golden: cli.golden.clone() };
    match cli.command {
        Command::Expand { form } => run_expand(form, &ctx),
        Command::Partitions(args) => run_partitions(args, &ctx),
        Command::Invariants { side } => run_invariants(side, &ctx),
        Command::Transform(args) => run_transform(args, &ctx),
        Command::Verify { check } => run_verify(check, &ctx),
    }
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

struct OutputContext {
    format: Format,
    golden: Option<PathBuf>,
}

impl OutputContext {
    /// Renders, prints, and settles the golden file. `slug` names the golden
    /// file; `csv` is `None` for commands without a tabular form.
    fn emit<T: Serialize>(
        &self,
        slug: &str,
        doc: &T,
        csv: Option<String>,
        pretty: String,
    ) -> Result<(), Failure> {
        let (content, ext) = match self.format {
            Format::Json => (render_json(doc), "json"),
            Format::Csv => match csv {
                Some(c) => (c, "csv"),
                None => return usage("csv output is only available for invariant tables"),
            },
            Format::Pretty => (pretty, "txt"),
        };
        print!("{}", content);
        if let Some(dir) = &self.golden {
            settle_golden(dir, slug, ext, &content)?;
        }
        Ok(())
    }
}

fn render_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

fn settle_golden(dir: &Path, slug: &str, ext: &str, content: &str) -> Result<(), Failure> {
    if let Err(e) = std::fs::create_dir_all(dir) {
        return usage(format!("cannot create golden directory: {}", e));
    }
    let path = dir.join(format!("{}.{}", slug, ext));
    if path.exists() {
        let existing = std::fs::read_to_string(&path)
            .map_err(|e| Failure::Usage(format!("cannot read golden file: {}", e)))?;
        if existing != content {
            eprintln!("golden mismatch against {}", path.display());
            return Err(Failure::Mismatch);
        }
    } else {
        std::fs::write(&path, content)
            .map_err(|e| Failure::Usage(format!("cannot write golden file: {}", e)))?;
        eprintln!("golden written to {}", path.display());
    }
    Ok(())
}

fn pretty_series(series: &QLaurentSeries) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# known for q-exponents below {}\n",
        series.trunc()
    ));
    for (e, c) in series.terms() {
        out.push_str(&format!("q^{}: {}\n", e, c));
    }
    out
}

fn pretty_useries(series: &USeries) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# known for u-exponents below {}\n",
        series.trunc()
    ));
    for (e, c) in series.terms() {
        out.push_str(&format!("u^{}: {}\n", e, c));
    }
    out
}

// ---------------------------------------------------------------------------
// expand
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ExpandDoc<'a> {
    form: &'a str,
    n: Option<u32>,
    q_order: i64,
    series: &'a QLaurentSeries,
}

fn run_expand(form: ExpandForm, ctx: &OutputContext) -> Result<(), Failure> {
    let (name, n, order, series) = match form {
        ExpandForm::Delta { order } => {
            check_order_cap(&[("--order", order)])?;
            ("delta", None, order, discriminant_series(FormOrder::new(order)))
        }
        ExpandForm::Theta { order } => {
            check_order_cap(&[("--order", order)])?;
            ("theta", None, order, theta_series(FormOrder::new(order)))
        }
        ExpandForm::Kernel { n, order } => {
            check_order_cap(&[("--order", order)])?;
            if n < 1 {
                return usage("--n must be at least 1");
            }
            ("kernel", Some(n), order, kernel_series(n, FormOrder::new(order)))
        }
    };
    let slug = match n {
        Some(n) => format!("expand-{}-n{}-order{}", name, n, order),
        None => format!("expand-{}-order{}", name, order),
    };
    let doc = ExpandDoc { form: name, n, q_order: order, series: &series };
    ctx.emit(&slug, &doc, None, pretty_series(&series))
}

// ---------------------------------------------------------------------------
// partitions
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct PartitionsDoc {
    n: u32,
    basis: u32,
    count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    partitions: Option<Vec<WeightedPartition>>,
}

fn run_partitions(args: PartitionsArgs, ctx: &OutputContext) -> Result<(), Failure> {
    if args.basis < 1 {
        return usage("--basis must be at least 1");
    }
    check_order_cap(&[("--n", (args.n as i64).max(1))])?;
    let (count, partitions) = if args.count_only {
        (count_weighted(args.n, args.basis), None)
    } else {
        let list = enumerate_weighted(args.n, args.basis);
        (list.len() as u64, Some(list))
    };
    let mut pretty = format!("n={} basis={} count={}\n", args.n, args.basis, count);
    if let Some(list) = &partitions {
        for wp in list {
            pretty.push_str(&format!("{} age={}\n", wp, wp.age()));
        }
    }
    let slug = format!(
        "partitions-n{}-basis{}{}",
        args.n,
        args.basis,
        if args.count_only { "-count" } else { "" }
    );
    let doc = PartitionsDoc { n: args.n, basis: args.basis, count, partitions };
    ctx.emit(&slug, &doc, None, pretty)
}

// ---------------------------------------------------------------------------
// invariants
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct TableRow {
    h: u32,
    k: i64,
    re: String,
    im: String,
}

#[derive(Serialize)]
struct HilbDoc {
    side: &'static str,
    n: u32,
    h_max: u32,
    kind: &'static str,
    entries: Vec<TableRow>,
}

#[derive(Serialize)]
struct SymDoc {
    side: &'static str,
    n: u32,
    h_max: u32,
    u_order: i64,
    sign: &'static str,
    entries: Vec<TableRow>,
}

fn table_rows(table: &InvariantTable) -> Vec<TableRow> {
    table
        .entries()
        .map(|(class, v)| TableRow {
            h: class.h,
            k: class.m,
            re: v.re_string(),
            im: v.im_string(),
        })
        .collect()
}

fn rows_to_csv(n: u32, rows: &[TableRow]) -> String {
    let mut out = String::from("n,h,k,value_re,value_im\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}\n", n, r.h, r.k, r.re, r.im));
    }
    out
}

fn rows_to_pretty(rows: &[TableRow]) -> String {
    let mut out = String::from("h\tk\tvalue\n");
    for r in rows {
        let v = if r.im == "0/1" {
            r.re.clone()
        } else {
            format!("{} + ({})i", r.re, r.im)
        };
        out.push_str(&format!("{}\t{}\t{}\n", r.h, r.k, v));
    }
    out
}

fn run_invariants(side: InvariantsSide, ctx: &OutputContext) -> Result<(), Failure> {
    match side {
        InvariantsSide::Hilb { n, hmax, three_point } => {
            if n < 1 {
                return usage("--n must be at least 1");
            }
            check_order_cap(&[("--hmax", (hmax as i64).max(1))])?;
            let table = if three_point {
                hilb_three_point_table(n, hmax)
            } else {
                hilb_two_point_table(n, hmax)
            };
            let kind = if three_point { "three-point" } else { "two-point" };
            let rows = table_rows(&table);
            let slug = format!("invariants-hilb-n{}-hmax{}-{}", n, hmax, kind);
            let doc = HilbDoc { side: "hilb", n, h_max: hmax, kind, entries: rows };
            let csv = rows_to_csv(n, &doc.entries);
            let pretty = rows_to_pretty(&doc.entries);
            ctx.emit(&slug, &doc, Some(csv), pretty)
        }
        InvariantsSide::Sym { n, hmax, u_order, sign } => {
            if n < 1 {
                return usage("--n must be at least 1");
            }
            check_order_cap(&[("--hmax", (hmax as i64).max(1)), ("--u-order", u_order)])?;
            let table = sym_three_point_table(n, hmax, u_order, sign.into())
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let rows: Vec<TableRow> = table
                .iter()
                .map(|(&(h, degree), v)| TableRow {
                    h,
                    k: degree,
                    re: v.re_string(),
                    im: v.im_string(),
                })
                .collect();
            let slug = format!(
                "invariants-sym-n{}-hmax{}-u{}-{}",
                n,
                hmax,
                u_order,
                sign_name(sign)
            );
            let doc = SymDoc {
                side: "sym",
                n,
                h_max: hmax,
                u_order,
                sign: sign_name(sign),
                entries: rows,
            };
            let csv = rows_to_csv(n, &doc.entries);
            let pretty = rows_to_pretty(&doc.entries);
            ctx.emit(&slug, &doc, Some(csv), pretty)
        }
    }
}

// ---------------------------------------------------------------------------
// transform
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct TransformDoc<'a> {
    n: u32,
    h: u32,
    u_order: i64,
    divisibility: u32,
    outside_proven_range: bool,
    series: &'a USeries,
}

fn run_transform(args: TransformArgs, ctx: &OutputContext) -> Result<(), Failure> {
    if args.n < 1 {
        return usage("--n must be at least 1");
    }
    check_order_cap(&[("--u-order", args.u_order), ("--h", (args.h as i64).max(1))])?;
    let series = crc_transform(args.n, args.h, args.u_order)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let outside = args.divisibility > 2;
    let slug = format!("transform-n{}-h{}-u{}", args.n, args.h, args.u_order);
    let doc = TransformDoc {
        n: args.n,
        h: args.h,
        u_order: args.u_order,
        divisibility: args.divisibility,
        outside_proven_range: outside,
        series: &series,
    };
    let mut pretty = pretty_useries(&series);
    if outside {
        pretty.push_str("# warning: divisibility above 2 is outside the proven range\n");
    }
    ctx.emit(&slug, &doc, None, pretty)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyOk<T: Serialize> {
    check: &'static str,
    status: &'static str,
    report: T,
}

#[derive(Serialize)]
struct VerifyFailed<T: Serialize> {
    check: &'static str,
    status: &'static str,
    mismatch: T,
}

fn emit_ok<T: Serialize>(
    ctx: &OutputContext,
    check: &'static str,
    slug: &str,
    report: T,
    pretty: String,
) -> Result<(), Failure> {
    let doc = VerifyOk { check, status: "ok", report };
    ctx.emit(slug, &doc, None, pretty)
}

fn emit_mismatch<T: Serialize>(
    check: &'static str,
    mismatch: T,
    pretty: String,
) -> Result<(), Failure> {
    let doc = VerifyFailed { check, status: "mismatch", mismatch };
    // mismatches always print as JSON so the location is machine-readable
    print!("{}", render_json(&doc));
    eprintln!("verification failed: {}", pretty);
    Err(Failure::Mismatch)
}

#[derive(Serialize)]
struct GottscheReport {
    n_max: u32,
    counts: Vec<u64>,
}

#[derive(Serialize)]
struct GottscheMismatch {
    n: u32,
    enumerated: u64,
    series: String,
}

fn run_verify_gottsche(
    nmax: u32,
    inject: Option<u32>,
    ctx: &OutputContext,
) -> Result<(), Failure> {
    check_order_cap(&[("--nmax", (nmax as i64).max(1))])?;
    if let Some(at) = inject {
        if at > nmax {
            return usage("--inject-error exceeds --nmax");
        }
    }
    let (mut counts, series) = gottsche_counts(nmax);
    if let Some(at) = inject {
        counts[at as usize] += 1;
    }
    for n in 0..=nmax {
        let c = counts[n as usize];
        let s = &series[n as usize];
        if &GaussianRational::from_int(c as i64) != s {
            return emit_mismatch(
                "gottsche",
                GottscheMismatch { n, enumerated: c, series: s.re_string() },
                format!("first mismatch at n = {}", n),
            );
        }
    }
    let report = GottscheReport { n_max: nmax, counts: counts.clone() };
    let pretty = format!(
        "gottsche ok, counts: {}\n",
        counts.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
    );
    emit_ok(ctx, "gottsche", &format!("verify-gottsche-nmax{}", nmax), report, pretty)
}

fn parse_fault(loc: &str) -> Result<FaultInjection, Failure> {
    let parts: Vec<&str> = loc.split(',').collect();
    if parts.len() != 2 {
        return usage("--inject-error expects H,UPOW");
    }
    let h = parts[0].trim().parse::<u32>();
    let u_power = parts[1].trim().parse::<i64>();
    match (h, u_power) {
        (Ok(h), Ok(u_power)) => Ok(FaultInjection { h, u_power }),
        _ => usage("--inject-error expects H,UPOW as integers"),
    }
}

fn run_verify_thm2(
    n: u32,
    order: i64,
    u_order: i64,
    sign: SignArg,
    inject: Option<String>,
    ctx: &OutputContext,
) -> Result<(), Failure> {
    if n < 1 {
        return usage("--n must be at least 1");
    }
    check_order_cap(&[("--order", order), ("--u-order", u_order)])?;
    let fault = match inject {
        Some(loc) => {
            let f = parse_fault(&loc)?;
            if f.h as i64 >= order || f.u_power < 0 || f.u_power >= u_order {
                return usage("--inject-error location is outside the checked range");
            }
            Some(f)
        }
        None => None,
    };
    match verify_crepant_transform(n, FormOrder::new(order), u_order, sign.into(), fault) {
        Ok(report) => {
            if !report.parity_real_ok {
                return emit_mismatch(
                    "thm2",
                    GottscheMismatch { n, enumerated: 0, series: "parity".into() },
                    "parity/reality invariant failed".into(),
                );
            }
            let pretty = format!(
                "thm2 ok: n={} order={} u_order={} sign={} scalar={} ({} coefficients)\n",
                n,
                order,
                u_order,
                sign_name(sign),
                report.global_scalar,
                report.coefficients_checked
            );
            emit_ok(
                ctx,
                "thm2",
                &format!("verify-thm2-n{}-order{}-u{}-{}", n, order, u_order, sign_name(sign)),
                report,
                pretty,
            )
        }
        Err(m) => {
            let pretty = format!("first mismatch at h = {}, u^{}", m.h, m.u_power);
            emit_mismatch("thm2", m, pretty)
        }
    }
}

fn run_verify_yau_zaslow(
    hmax: u32,
    inject: Option<u32>,
    ctx: &OutputContext,
) -> Result<(), Failure> {
    check_order_cap(&[("--hmax", (hmax as i64).max(1))])?;
    if let Some(at) = inject {
        if at > hmax {
            return usage("--inject-error exceeds --hmax");
        }
    }
    match verify_yau_zaslow(hmax, inject) {
        Ok(report) => {
            let pretty = format!(
                "yau-zaslow ok, counts: {}\n",
                report.counts.join(", ")
            );
            emit_ok(ctx, "yau-zaslow", &format!("verify-yau-zaslow-hmax{}", hmax), report, pretty)
        }
        Err(m) => {
            let pretty = format!("first mismatch at h = {}, k = {}", m.h, m.k);
            emit_mismatch("yau-zaslow", m, pretty)
        }
    }
}

#[derive(Serialize)]
struct PadeReport {
    cases: u32,
    seed: u64,
    recovered: u32,
    no_solution_rejections: u32,
}

#[derive(Serialize)]
struct PadeMismatch {
    case: u32,
    detail: String,
}

/// A random Laurent-free rational function: numerator of degree <= 8,
/// denominator of degree <= 8 with constant term 1.
fn random_rational(rng: &mut ChaCha8Rng) -> RationalFunction {
    let coeff = |rng: &mut ChaCha8Rng| {
        GaussianRational::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
    };
    loop {
        let num_deg = rng.gen_range(0..=8);
        let den_deg = rng.gen_range(0..=8);
        let num = HalfLaurent::from_terms((0..=num_deg).map(|e| (2 * e, coeff(rng))));
        let mut den_terms = vec![(0, GaussianRational::one())];
        den_terms.extend((1..=den_deg).map(|e| (2 * e, coeff(rng))));
        let den = HalfLaurent::from_terms(den_terms);
        if num.is_zero() {
            continue;
        }
        return RationalFunction::new(num, den).expect("even parity, nonzero denominator");
    }
}

fn run_verify_pade(
    cases: u32,
    seed: u64,
    inject: Option<u32>,
    ctx: &OutputContext,
) -> Result<(), Failure> {
    check_order_cap(&[("--cases", cases as i64)])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut recovered = 0u32;
    for case in 0..cases {
        let source = random_rational(&mut rng);
        let mut taylor = source
            .taylor_expansion(20)
            .expect("denominator has constant term 1");
        if inject == Some(case) {
            taylor[10] = &taylor[10] + &GaussianRational::one();
        }
        match pade_reconstruct(&taylor, 8, 8) {
            Ok(r) if r == source => recovered += 1,
            Ok(_) => {
                return emit_mismatch(
                    "pade-roundtrip",
                    PadeMismatch { case, detail: "recovered a different function".into() },
                    format!("case {} recovered a different function", case),
                )
            }
            Err(e) => {
                return emit_mismatch(
                    "pade-roundtrip",
                    PadeMismatch { case, detail: e.to_string() },
                    format!("case {} failed: {}", case, e),
                )
            }
        }
    }
    // Fibonacci-style data must be rejected at denominator budget 1.
    let mut fib = vec![GaussianRational::from_int(1), GaussianRational::from_int(1)];
    for i in 2..20 {
        let next = &fib[i - 1] + &fib[i - 2];
        fib.push(next);
    }
    let mut rejections = 0u32;
    match pade_reconstruct(&fib, 0, 1) {
        Err(SeriesError::NoSolution) => rejections += 1,
        _ => {
            return emit_mismatch(
                "pade-roundtrip",
                PadeMismatch {
                    case: cases,
                    detail: "expected NoSolution for the budget-1 recurrence".into(),
                },
                "budget rejection case failed".into(),
            )
        }
    }
    let report = PadeReport { cases, seed, recovered, no_solution_rejections: rejections };
    let pretty = format!(
        "pade-roundtrip ok: {} recovered, {} rejection\n",
        recovered, rejections
    );
    emit_ok(
        ctx,
        "pade-roundtrip",
        &format!("verify-pade-roundtrip-cases{}-seed{}", cases, seed),
        report,
        pretty,
    )
}

fn run_verify(check: VerifyCheck, ctx: &OutputContext) -> Result<(), Failure> {
    match check {
        VerifyCheck::Gottsche { nmax, inject_error } => run_verify_gottsche(nmax, inject_error, ctx),
        VerifyCheck::Thm2 { n, order, u_order, sign, inject_error } => {
            run_verify_thm2(n, order, u_order, sign, inject_error, ctx)
        }
        VerifyCheck::YauZaslow { hmax, inject_error } => {
            run_verify_yau_zaslow(hmax, inject_error, ctx)
        }
        VerifyCheck::PadeRoundtrip { cases, seed, inject_error } => {
            run_verify_pade(cases, seed, inject_error, ctx)
        }
    }
}

