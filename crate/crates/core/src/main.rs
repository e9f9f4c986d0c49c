use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use curvelab::factory::{
    attach_two_secant_line, construct_extremal, construct_set_curve, space, CurveBundle, SetOptions,
};
use curvelab::formulas::{family_dimensions, rao_piecewise, rao_support, CurveNumerics, RaoKind};
use curvelab::invariants::SheafData;
use curvelab::report::{report_for_bundle, report_for_ideal, InputEcho, Report};
use curvelab::verify::{verify_constructions, verify_formulas, verify_kernel, Grid};
use curvelab::{CurveError, Result};
use curvelab_kernel::{format_ideal_file, parse_ideal_file, Ideal, PrimeField, SeededRng};

const DEFAULT_CHAR: u64 = 32003;

#[derive(Parser)]
#[command(
    name = "curvelab",
    version,
    about = "Construct and analyze space curves over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Set,
    Extremal,
    Subextremal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Formulas,
    Paper,
    Kernel,
}

#[derive(clap::Args)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Field characteristic (default: $CURVELAB_CHAR or 32003).
    #[arg(long = "char")]
    characteristic: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a curve, write its ideal file and JSON report.
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long)]
        b: Option<i64>,
        /// Residual points forming a complete intersection (r even, b = r/2 - 1).
        #[arg(long)]
        ci: bool,
        /// Report path; the ideal goes next to it with extension `.ideal`.
        /// Without it the report is printed.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Compute the invariants of the curve in an ideal file.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite over a parameter grid.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Degree or range `a..b`.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<String>,
        /// Genus or range `a..b`.
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(long)]
        b: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the closed-form tables for a degree and genus.
    Formulas {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long)]
        b: Option<i64>,
    },
}

fn field(c: &Common) -> Result<PrimeField> {
    let p = match c.characteristic {
        Some(p) => p,
        None => match std::env::var("CURVELAB_CHAR") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CurveError::InvalidParameters(format!("CURVELAB_CHAR = {v:?}")))?,
            Err(_) => DEFAULT_CHAR,
        },
    };
    Ok(PrimeField::new(p)?)
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<i64>> {
    let bad = || CurveError::InvalidParameters(format!("bad range {text:?}"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (text, text),
    };
    let (a, b) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| CurveError::InvalidParameters(format!("cannot write {}: {e}", path.display())))
}

fn emit(report: &Report, out: Option<&Path>, ideal: &Ideal, header: Vec<String>) -> Result<()> {
    match out {
        Some(path) => {
            write(path, &(report.to_json() + "\n"))?;
            write(
                &path.with_extension("ideal"),
                &format_ideal_file(ideal.gens(), &header),
            )?;
        }
        None => println!("{}", report.to_json()),
    }
    Ok(())
}

fn finish(report: &Report) -> ExitCode {
    let failed = report.failed_checks();
    if failed.is_empty() {
        return ExitCode::SUCCESS;
    }
    for c in failed {
        eprintln!("check {} failed: {}", c.name, c.detail);
    }
    ExitCode::from(3)
}

fn construct(
    kind: Kind,
    d: i64,
    g: i64,
    b: Option<i64>,
    ci: bool,
    out: Option<&Path>,
    common: &Common,
) -> Result<ExitCode> {
    let f = field(common)?;
    let mut rng = SeededRng::new(common.seed);
    let bundle: CurveBundle = match kind {
        Kind::Set => {
            let b =
                b.ok_or_else(|| CurveError::InvalidParameters("--kind set needs --b".into()))?;
            construct_set_curve(d, g, b, ci, &mut rng, &SetOptions { field: f, h: None })?
        }
        Kind::Extremal => construct_extremal(d, g, &mut rng, f)?,
        Kind::Subextremal => {
            let base = construct_extremal(d - 1, g - 1, &mut rng, f)?;
            attach_two_secant_line(&base, &mut rng)?
        }
    };
    let kind_name = match kind {
        Kind::Set => "set",
        Kind::Extremal => "extremal",
        Kind::Subextremal => "subextremal",
    };
    let input = InputEcho {
        command: "construct".into(),
        kind: Some(kind_name.into()),
        d: Some(d),
        g: Some(g),
        b,
        ci,
        seed: common.seed,
        characteristic: f.characteristic(),
        source: None,
    };
    let report = report_for_bundle(input, &bundle, &mut rng.fork(0x7e))?;
    let header = vec![format!(
        "{kind_name} curve of degree {d} and genus {g}, seed {}",
        common.seed
    )];
    emit(&report, out, &bundle.ideal, header)?;
    Ok(finish(&report))
}

fn analyze(file: &Path, out: Option<&Path>, common: &Common) -> Result<ExitCode> {
    let f = field(common)?;
    let text = std::fs::read_to_string(file).map_err(|e| {
        CurveError::InvalidParameters(format!("cannot read {}: {e}", file.display()))
    })?;
    let ring = space(f);
    let gens = parse_ideal_file(&ring, &text)?;
    if gens.is_empty() {
        return Err(CurveError::InvalidParameters(
            "the ideal file has no generators".into(),
        ));
    }
    let mut rng = SeededRng::new(common.seed);
    let mut ideal = Ideal::new(&ring, gens)?.minimized();
    let mut notices = Vec::new();
    let sheaf = match SheafData::compute(&ideal) {
        Ok(s) => s,
        Err(CurveError::NotSaturated) => {
            ideal = ideal.saturate_irrelevant(&mut rng.fork(0x5a))?.minimized();
            notices.push("input was not saturated; analyzed its saturation".into());
            eprintln!("notice: input was not saturated; analyzing its saturation");
            SheafData::compute(&ideal)?
        }
        Err(e) => return Err(e),
    };
    let input = InputEcho {
        command: "analyze".into(),
        seed: common.seed,
        characteristic: f.characteristic(),
        source: Some(file.display().to_string()),
        ..Default::default()
    };
    let report = report_for_ideal(input, &sheaf, &mut rng, notices)?;
    let header = vec![format!("saturated ideal of {}", file.display())];
    emit(&report, out, &ideal, header)?;
    Ok(finish(&report))
}

fn verify(
    suite: Suite,
    d: Option<&str>,
    g: Option<&str>,
    b: Option<i64>,
    common: &Common,
) -> Result<ExitCode> {
    let f = field(common)?;
    let default_d = match suite {
        Suite::Formulas => "7..12",
        _ => "7",
    };
    let grid = Grid {
        d: parse_range(d.unwrap_or(default_d))?,
        g: g.map(parse_range).transpose()?,
        b,
        g_floor: -30,
        g_span: match suite {
            Suite::Formulas => i64::MAX / 4,
            _ => 3,
        },
    };
    let summary = match suite {
        Suite::Formulas => verify_formulas(&grid)?,
        Suite::Paper => verify_constructions(&grid, common.seed, f)?,
        Suite::Kernel => verify_kernel(common.seed, f)?,
    };
    println!("{summary}");
    Ok(if summary.failures() == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn formulas(d: i64, g: i64, b: Option<i64>) -> Result<ExitCode> {
    let n = CurveNumerics::new(d, g)?;
    println!("d = {d}, g = {g}, r = {}, a_ext = {}", n.r, n.a_ext);
    let mut columns: Vec<(String, RaoKind, CurveNumerics)> = Vec::new();
    if n.a_ext >= 0 {
        columns.push(("rho_E".into(), RaoKind::Extremal, n));
    } else {
        println!("notice: g > C(d-2,2), no extremal bound");
    }
    if d >= 5 && n.r >= 1 {
        columns.push(("rho_SE".into(), RaoKind::Subextremal, n));
    }
    let set_ok = d >= 7 && n.r >= 1;
    if set_ok {
        let bs: Vec<i64> = match b {
            Some(b) => vec![b],
            None => (0..=n.max_b().unwrap_or(-1)).collect(),
        };
        for b in bs {
            columns.push((format!("rho_b={b}"), RaoKind::SetB, n.with_b(b)?));
        }
    } else {
        if b.is_some() && d >= 7 {
            return Err(CurveError::InvalidParameters(format!(
                "r = {} leaves no parameter b",
                n.r
            )));
        }
        println!("notice: rows for curves of subextremal type need d >= 7 and r >= 1; suppressed");
    }
    if columns.is_empty() {
        return Err(CurveError::InvalidParameters(format!(
            "no reference Rao function for d = {d}, g = {g}"
        )));
    }
    let mut lo = 0;
    let mut hi = 0;
    for (_, kind, m) in &columns {
        if let Some((a, b)) = rao_support(*kind, m)? {
            lo = lo.min(a - 1);
            hi = hi.max(b + 1);
        }
    }
    let funcs = columns
        .iter()
        .map(|(_, k, m)| rao_piecewise(*k, m))
        .collect::<Result<Vec<_>>>()?;
    print!("{:>5}", "j");
    for (name, _, _) in &columns {
        print!(" {name:>9}");
    }
    println!();
    for j in lo..=hi {
        print!("{j:>5}");
        for f in &funcs {
            print!(" {:>9}", f.eval(j));
        }
        println!();
    }
    if set_ok && n.r >= 3 {
        let fd = family_dimensions(&n)?;
        println!("dim extremal family            {}", fd.dim_extremal);
        println!(
            "dim extremal component         {}",
            fd.dim_extremal_component
        );
        println!("dim F_SE                       {}", fd.dim_f_se);
        println!("dim F_SET2                     {}", fd.dim_f_set2);
        println!("dim component of F_SE          {}", fd.dim_set_component);
        println!("codim stratum b = 0            {}", fd.codim_stratum_zero);
        println!("codim strata 0 < b < max       {}", fd.codim_stratum_middle);
        println!("codim stratum b = max          {}", fd.codim_stratum_top);
        println!("delta_gamma                    {}", fd.delta_gamma);
        println!("epsilon                        {}", fd.epsilon);
        println!("hom(M, M)                      {}", fd.hom_mm);
        println!("ext1(M, M)                     {}", fd.ext1_mm);
        println!("t_gamma_rho                    {}", fd.t_gamma_rho);
        println!("extremal (d-1, g-1) + lines    {}", fd.dim_line_attachments);
    } else if set_ok {
        println!("notice: family dimensions need r >= 3 (r = {})", n.r);
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct {
            kind,
            d,
            g,
            b,
            ci,
            out,
            common,
        } => construct(*kind, *d, *g, *b, *ci, out.as_deref(), common),
        Command::Analyze { file, out, common } => analyze(file, out.as_deref(), common),
        Command::Verify {
            suite,
            d,
            g,
            b,
            common,
        } => verify(*suite, d.as_deref(), g.as_deref(), *b, common),
        Command::Formulas { d, g, b } => formulas(*d, *g, *b),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
