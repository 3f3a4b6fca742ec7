//! Command-line frontend: every computation of the library behind
//! deterministic subcommands, with optional JSON output.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use algchar::branch::{self, RegularityScope};
use algchar::charring::{
    self, weyl_character, weyl_denominator, CharacterFraction, DenominatorMode,
};
use algchar::kernel::{self, Membership};
use algchar::lattice::{
    from_fundamental, fundamental_weights, make_root_datum, make_root_datum_from_str,
    NamedSystem, ParabolicDatum, RootDatum, Weight,
};
use algchar::series::{self, FormalSeries, SupportWindow};
use algchar::weyl::{generate_weyl_group, tau_subgroup, trivial_subgroup};

#[derive(Parser)]
#[command(
    name = "algchar",
    about = "Exact algebraic characters, localization kernels and branching certificates",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a root datum (named system or explicit Cartan data file)
    Rootdatum(RootdatumArgs),
    /// Weyl denominator in product and alternating-sum form
    Denom(DenomArgs),
    /// Character operations
    #[command(subcommand)]
    Char(CharCommand),
    /// Lie algebra cohomology
    #[command(subcommand)]
    Cohomology(CohomologyCommand),
    /// Localization-kernel operations
    #[command(subcommand)]
    Kernel(KernelCommand),
    /// Branching computations
    #[command(subcommand)]
    Branch(BranchCommand),
    /// Regularity-condition checkers
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Args)]
struct RootdatumArgs {
    /// Named system: A1, A1xA1, A2, B2, G2, BC1
    #[arg(long)]
    system: Option<String>,
    /// Explicit Cartan data file (rank/gram/positive/simple lines)
    #[arg(long)]
    file: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DenomArgs {
    #[arg(long)]
    system: String,
    /// Simple-root indices kept in the Levi (omit for the Borel)
    #[arg(long)]
    parabolic: Option<String>,
    /// Compare the product and alternating-sum forms
    #[arg(long)]
    check: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum CharCommand {
    /// Weyl character fraction and its expansion
    Weyl {
        #[arg(long)]
        system: String,
        /// Highest weight in fundamental-weight coordinates, e.g. 1,0
        #[arg(long, allow_hyphen_values = true)]
        highest: String,
        #[arg(long)]
        json: bool,
    },
    /// Transitivity check c_p = c_{p∩l} ∘ c_q
    Compose {
        #[arg(long)]
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        highest: String,
        /// Simple-root indices kept in the Levi of the intermediate parabolic
        #[arg(long)]
        parabolic: String,
        #[arg(long)]
        json: bool,
    },
    /// Translation of a character numerator by an integral weight
    Translate {
        #[arg(long)]
        system: String,
        /// Source highest weight, fundamental coordinates
        #[arg(long, allow_hyphen_values = true)]
        highest: String,
        /// Translation parameter, fundamental coordinates (may be negative)
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CohomologyCommand {
    /// Kostant cohomology weights in one degree
    Kostant {
        #[arg(long)]
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        highest: String,
        #[arg(long)]
        degree: i64,
        /// Simple-root indices kept in the Levi (omit for the Borel)
        #[arg(long)]
        parabolic: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct KernelConfig {
    #[arg(long)]
    system: String,
    /// Roots of the configuration, lattice coordinates, e.g. --roots "2;4"
    #[arg(long, allow_hyphen_values = true)]
    roots: String,
    /// Powers, e.g. --powers 1,1
    #[arg(long)]
    powers: String,
    /// Window per coordinate, e.g. --window -20:20
    #[arg(long, allow_hyphen_values = true)]
    window: String,
    /// Shift of the representative rule, lattice coordinates
    #[arg(long, allow_hyphen_values = true)]
    lambda0: Option<String>,
    /// Representative monomials, e.g. --reps "0;1" (defaults to the origin)
    #[arg(long, allow_hyphen_values = true)]
    reps: Option<String>,
}

#[derive(Subcommand)]
enum KernelCommand {
    /// Enumerate the kernel basis of the configuration
    Basis {
        #[command(flatten)]
        config: KernelConfig,
        /// Also print the expansions on the window
        #[arg(long)]
        expand: bool,
        #[arg(long)]
        json: bool,
    },
    /// Membership of a series (JSON file) in the kernel span
    Check {
        #[command(flatten)]
        config: KernelConfig,
        /// Series JSON file
        #[arg(long)]
        series: String,
        #[arg(long)]
        json: bool,
    },
    /// Regularity-strip test for a series (JSON file)
    Regularity {
        #[command(flatten)]
        config: KernelConfig,
        #[arg(long)]
        series: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum BranchCommand {
    /// Tensor product of two discrete series
    Sl2Tensor {
        m: u32,
        n: u32,
        #[arg(long, default_value_t = 5)]
        terms: usize,
        #[arg(long)]
        json: bool,
    },
    /// Restriction of a principal series to the compact torus
    Sl2Principal {
        #[arg(long)]
        delta: u8,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        json: bool,
    },
    /// The SO(3)-in-GL(3) kernel generators and thresholds
    So3Blattner {
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Strip condition on K-type highest weights
    ConditionS {
        #[arg(long)]
        system: String,
        /// K-type weights, lattice coordinates, e.g. "2;4;6"
        #[arg(long, allow_hyphen_values = true)]
        ktypes: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda0: String,
        /// Strip roots (defaults to the distinct positive roots)
        #[arg(long, allow_hyphen_values = true)]
        strip_roots: Option<String>,
        /// Count roots for the power-sum bound (defaults to empty)
        #[arg(long, allow_hyphen_values = true)]
        count_roots: Option<String>,
        /// Use the order-2 Weyl group generated by negation
        #[arg(long)]
        tau: bool,
        #[arg(long)]
        json: bool,
    },
    /// Strip condition on infinitesimal characters, scaled by the exponent b
    ConditionSprime {
        #[arg(long)]
        system: String,
        /// Infinitesimal characters, lattice coordinates, e.g. "3;5"
        #[arg(long, allow_hyphen_values = true)]
        infchars: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda0: String,
        #[arg(long, allow_hyphen_values = true)]
        strip_roots: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        count_roots: Option<String>,
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long)]
        tau: bool,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> algchar::Result<()> {
    match cli.command {
        Command::Rootdatum(args) => run_rootdatum(args),
        Command::Denom(args) => run_denom(args),
        Command::Char(cmd) => run_char(cmd),
        Command::Cohomology(CohomologyCommand::Kostant {
            system,
            highest,
            degree,
            parabolic,
            json,
        }) => run_kostant(&system, &highest, degree, parabolic.as_deref(), json),
        Command::Kernel(cmd) => run_kernel(cmd),
        Command::Branch(cmd) => run_branch(cmd),
        Command::Check(cmd) => run_check(cmd),
    }
}

fn parse_system(label: &str) -> algchar::Result<NamedSystem> {
    NamedSystem::parse(label).ok_or_else(|| {
        algchar::Error::InvalidArgument(format!(
            "unknown system `{label}` (expected A1, A1xA1, A2, B2, G2 or BC1)"
        ))
    })
}

fn parse_coord_list(s: &str) -> algchar::Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| algchar::Error::Parse(format!("bad coordinate list `{s}`")))
        })
        .collect()
}

fn parse_weight_list(s: &str) -> algchar::Result<Vec<Weight>> {
    s.split(';')
        .map(|t| parse_coord_list(t).map(Weight))
        .collect()
}

fn parse_indices(s: &str) -> algchar::Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| algchar::Error::Parse(format!("bad index list `{s}`")))
        })
        .collect()
}

fn parse_window(s: &str) -> algchar::Result<SupportWindow> {
    let bounds = s
        .split(',')
        .map(|part| {
            let (lo, hi) = part
                .split_once(':')
                .ok_or_else(|| algchar::Error::Parse(format!("bad window `{s}`")))?;
            let lo = lo
                .trim()
                .parse()
                .map_err(|_| algchar::Error::Parse(format!("bad window `{s}`")))?;
            let hi = hi
                .trim()
                .parse()
                .map_err(|_| algchar::Error::Parse(format!("bad window `{s}`")))?;
            Ok((lo, hi))
        })
        .collect::<algchar::Result<Vec<_>>>()?;
    SupportWindow::new(bounds)
}

fn read_series(path: &str) -> algchar::Result<FormalSeries> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| algchar::Error::Parse(format!("cannot read `{path}`: {e}")))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| algchar::Error::Parse(format!("bad JSON in `{path}`: {e}")))?;
    series::from_json(&value)
}

fn print_series(s: &FormalSeries) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    s.terms()
        .map(|(w, c)| format!("{}·[{}]", c, fmt_coords(&w.0)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn fmt_coords(c: &[i64]) -> String {
    c.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn print_fraction(f: &CharacterFraction) -> String {
    let den: Vec<String> = f
        .denominator
        .iter()
        .map(|(w, m)| {
            if *m == 1 {
                format!("(1 - [-({})])", fmt_coords(&w.0))
            } else {
                format!("(1 - [-({})])^{}", fmt_coords(&w.0), m)
            }
        })
        .collect();
    if den.is_empty() {
        print_series(&f.numerator)
    } else {
        format!("({}) / {}", print_series(&f.numerator), den.join(""))
    }
}

fn datum_and_parabolic(
    system: NamedSystem,
    parabolic: Option<&str>,
) -> algchar::Result<(RootDatum, ParabolicDatum)> {
    let datum = make_root_datum(system);
    let par = match parabolic {
        None => ParabolicDatum::borel(&datum)?,
        Some(levi) => ParabolicDatum::with_levi(&datum, &parse_indices(levi)?)?,
    };
    Ok((datum, par))
}

fn run_rootdatum(args: RootdatumArgs) -> algchar::Result<()> {
    let datum = match (&args.system, &args.file) {
        (Some(label), None) => make_root_datum(parse_system(label)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| algchar::Error::Parse(format!("cannot read `{path}`: {e}")))?;
            make_root_datum_from_str(&text)?
        }
        _ => {
            return Err(algchar::Error::InvalidArgument(
                "pass exactly one of --system or --file".into(),
            ))
        }
    };
    if args.json {
        let v = serde_json::json!({
            "rank": datum.rank,
            "name": datum.name,
            "gram": datum.gram.iter().map(|row| {
                row.iter().map(|r| r.to_string()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "positive": datum.positive.iter().map(|(w, m)| {
                serde_json::json!({"root": w.0, "mult": m})
            }).collect::<Vec<_>>(),
            "simple": datum.simple.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!(
            "system: {}",
            datum.name.clone().unwrap_or_else(|| "explicit".into())
        );
        println!("rank: {}", datum.rank);
        println!("roots: {}", datum.roots.len());
        for (w, m) in &datum.positive {
            println!("positive [{}] multiplicity {}", fmt_coords(&w.0), m);
        }
        for s in &datum.simple {
            println!("simple [{}]", fmt_coords(&s.0));
        }
    }
    Ok(())
}

fn run_denom(args: DenomArgs) -> algchar::Result<()> {
    let system = parse_system(&args.system)?;
    let (datum, par) = datum_and_parabolic(system, args.parabolic.as_deref())?;
    let product = weyl_denominator(&datum, &par, DenominatorMode::Product)?;
    if args.check || args.json {
        let alternating = weyl_denominator(&datum, &par, DenominatorMode::AlternatingSum)?;
        let equal = product == alternating;
        if args.json {
            let v = serde_json::json!({
                "product": series::to_json(&product),
                "alternating_sum": series::to_json(&alternating),
                "equal": equal,
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        } else {
            println!("product:  {}", print_series(&product));
            println!("alt. sum: {}", print_series(&alternating));
            println!("equal: {}", equal);
        }
    } else {
        println!("product: {}", print_series(&product));
    }
    Ok(())
}

fn run_char(cmd: CharCommand) -> algchar::Result<()> {
    match cmd {
        CharCommand::Weyl {
            system,
            highest,
            json,
        } => {
            let system = parse_system(&system)?;
            let datum = make_root_datum(system);
            let par = ParabolicDatum::borel(&datum)?;
            let lam = from_fundamental(system, &parse_coord_list(&highest)?)?;
            let frac = weyl_character(&lam, &datum, &par)?;
            let expansion = frac.expand().ok_or_else(|| {
                algchar::Error::InvalidArgument("fraction did not expand".into())
            })?;
            if json {
                let v = serde_json::json!({
                    "highest": lam.0,
                    "fraction": frac.to_json(),
                    "expansion": series::to_json(&expansion),
                });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!("highest weight [{}]", fmt_coords(&lam.0));
                println!("character: {}", print_fraction(&frac));
                println!("expansion: {}", print_series(&expansion));
            }
        }
        CharCommand::Compose {
            system,
            highest,
            parabolic,
            json,
        } => {
            let system = parse_system(&system)?;
            let datum = make_root_datum(system);
            let borel = ParabolicDatum::borel(&datum)?;
            let par = ParabolicDatum::with_levi(&datum, &parse_indices(&parabolic)?)?;
            let lam = from_fundamental(system, &parse_coord_list(&highest)?)?;
            let equal = charring::compose_characters(&lam, &datum, &borel, &par)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({"highest": lam.0, "transitive": equal})
                );
            } else {
                println!("transitive: {}", equal);
            }
        }
        CharCommand::Translate {
            system,
            highest,
            mu,
            json,
        } => {
            let system = parse_system(&system)?;
            let datum = make_root_datum(system);
            let par = ParabolicDatum::borel(&datum)?;
            let lam = from_fundamental(system, &parse_coord_list(&highest)?)?;
            let mu_coords = parse_coord_list(&mu)?;
            let fw = fundamental_weights(system);
            let mut mu_w = Weight::zero(datum.rank);
            for (c, w) in mu_coords.iter().zip(&fw) {
                mu_w = &mu_w + &w.scaled(*c);
            }
            let group = generate_weyl_group(&datum)?;
            let num = charring::euler_numerator(&lam, &datum, &par)?;
            let translated =
                charring::translate_numerator(&num, &lam, &mu_w, &par.rho_u, &datum, &group)?;
            if json {
                let v = serde_json::json!({
                    "source_numerator": series::to_json(&num),
                    "translated_numerator": series::to_json(&translated),
                });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!("source:     {}", print_series(&num));
                println!("translated: {}", print_series(&translated));
            }
        }
    }
    Ok(())
}

fn run_kostant(
    system: &str,
    highest: &str,
    degree: i64,
    parabolic: Option<&str>,
    json: bool,
) -> algchar::Result<()> {
    let system = parse_system(system)?;
    let (datum, par) = datum_and_parabolic(system, parabolic)?;
    let lam = from_fundamental(system, &parse_coord_list(highest)?)?;
    let classes = charring::kostant_cohomology(&lam, &datum, &par, degree)?;
    if json {
        let v = serde_json::json!({
            "degree": degree,
            "classes": classes.iter().map(|(w, m)| {
                serde_json::json!({"weight": w.0, "mult": m})
            }).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        if classes.is_empty() {
            println!("degree {degree}: empty");
        }
        for (w, m) in classes {
            println!(
                "degree {degree}: weight [{}] multiplicity {m}",
                fmt_coords(&w.0)
            );
        }
    }
    Ok(())
}

struct KernelSetup {
    datum: RootDatum,
    roots: Vec<Weight>,
    powers: Vec<u32>,
    window: SupportWindow,
    lambda0: Weight,
    reps: Vec<Weight>,
}

fn kernel_setup(config: &KernelConfig) -> algchar::Result<KernelSetup> {
    let system = parse_system(&config.system)?;
    let datum = make_root_datum(system);
    let roots = parse_weight_list(&config.roots)?;
    let powers: Vec<u32> = config
        .powers
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| algchar::Error::Parse("bad power list".into()))
        })
        .collect::<algchar::Result<_>>()?;
    let window = parse_window(&config.window)?;
    let lambda0 = match &config.lambda0 {
        Some(s) => Weight(parse_coord_list(s)?),
        None => Weight(vec![0; datum.rank]),
    };
    let reps = match &config.reps {
        Some(s) => parse_weight_list(s)?,
        None => vec![Weight(vec![0; datum.rank])],
    };
    Ok(KernelSetup {
        datum,
        roots,
        powers,
        window,
        lambda0,
        reps,
    })
}

fn run_kernel(cmd: KernelCommand) -> algchar::Result<()> {
    match cmd {
        KernelCommand::Basis {
            config,
            expand,
            json,
        } => {
            let setup = kernel_setup(&config)?;
            let basis = kernel::kernel_basis(
                &setup.datum,
                &setup.roots,
                &setup.powers,
                &setup.lambda0,
                &setup.reps,
            )?;
            if json {
                let mut out = Vec::new();
                for g in &basis {
                    let mut v = g.to_json();
                    if expand {
                        let e = g.expand(&setup.window)?;
                        v["expansion"] = series::to_json(&e);
                    }
                    out.push(v);
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "generators": out,
                        "window": setup.window.bounds.iter()
                            .map(|&(lo, hi)| vec![lo, hi]).collect::<Vec<_>>(),
                    }))
                    .unwrap()
                );
            } else {
                println!("{} generators", basis.len());
                for g in &basis {
                    let dplus: Vec<String> = g
                        .dplus
                        .iter()
                        .map(|&j| format!("d+[{}]", fmt_coords(&g.roots[j].0)))
                        .collect();
                    println!(
                        "rep [{}] · y(roots {}; powers {:?}){}",
                        fmt_coords(&g.representative.0),
                        g.roots
                            .iter()
                            .map(|r| format!("[{}]", fmt_coords(&r.0)))
                            .collect::<Vec<_>>()
                            .join(" "),
                        g.powers,
                        if dplus.is_empty() {
                            String::new()
                        } else {
                            format!(" · {}", dplus.join(" · "))
                        }
                    );
                    if expand {
                        let e = g.expand(&setup.window)?;
                        println!("  = {}", print_series(&e));
                    }
                }
            }
        }
        KernelCommand::Check {
            config,
            series: series_path,
            json,
        } => {
            let setup = kernel_setup(&config)?;
            let z = read_series(&series_path)?;
            let basis = kernel::kernel_basis(
                &setup.datum,
                &setup.roots,
                &setup.powers,
                &setup.lambda0,
                &setup.reps,
            )?;
            let outcome = kernel::membership_coordinates(&z, &basis, &setup.window)?;
            match outcome {
                Membership::InSpan(coords) => {
                    if json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "in_span": true,
                                "coordinates": coords.iter()
                                    .map(|c| c.to_string()).collect::<Vec<_>>(),
                            })
                        );
                    } else {
                        println!("in span: true");
                        for (i, c) in coords.iter().enumerate() {
                            println!("coordinate {i}: {c}");
                        }
                    }
                }
                Membership::NotInSpan => {
                    if json {
                        println!("{}", serde_json::json!({"in_span": false}));
                    } else {
                        println!("in span: false");
                    }
                }
            }
        }
        KernelCommand::Regularity {
            config,
            series: series_path,
            json,
        } => {
            let setup = kernel_setup(&config)?;
            let z = read_series(&series_path)?;
            let ok = kernel::regularity_strip_check(
                &z,
                &setup.roots,
                &setup.powers,
                &setup.lambda0,
                &setup.datum,
            )?;
            if json {
                println!("{}", serde_json::json!({"vanishes_on_strip": ok}));
            } else {
                println!("vanishes on strip: {}", ok);
            }
        }
    }
    Ok(())
}

fn run_branch(cmd: BranchCommand) -> algchar::Result<()> {
    match cmd {
        BranchCommand::Sl2Tensor { m, n, terms, json } => {
            let result = branch::sl2_tensor_discrete(m, n, terms)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&result.to_json()).unwrap());
            } else {
                let labels: Vec<&str> =
                    result.terms.iter().map(|t| t.label.as_str()).collect();
                println!(
                    "{} (each multiplicity 1, family continues by +2)",
                    labels.join(" ")
                );
                println!("certificate: {}", result.certificate);
            }
        }
        BranchCommand::Sl2Principal {
            delta,
            window,
            json,
        } => {
            let window = parse_window(&window)?;
            let result = branch::sl2_principal_restriction(delta, &window)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&result.to_json()).unwrap());
            } else {
                for t in &result.terms {
                    println!("{} multiplicity {}", t.label, t.multiplicity);
                }
                println!("certificate: {}", result.certificate);
            }
        }
        BranchCommand::So3Blattner { window, json } => {
            let window = parse_window(&window)?;
            let report = branch::so3_kernel_generators(&window)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
            } else {
                println!(
                    "kappa1 coefficients: {}",
                    report
                        .kappa1
                        .iter()
                        .take(8)
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                println!(
                    "kappa2 coefficients: {}",
                    report
                        .kappa2
                        .iter()
                        .take(8)
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                for (name, x, y) in &report.generator_coordinates {
                    println!("{name} = {x}·kappa1 + {y}·kappa2");
                }
                println!(
                    "kernel disjointness threshold: minimal type >= {}",
                    report.disjointness_threshold
                );
                println!(
                    "strip condition threshold: minimal type >= {}",
                    report.condition_s_threshold
                );
            }
        }
    }
    Ok(())
}

fn scope_for<'a>(
    datum: &'a RootDatum,
    strip_roots: Option<&str>,
    count_roots: Option<&str>,
    tau: bool,
) -> algchar::Result<RegularityScope<'a>> {
    let strip_roots = match strip_roots {
        Some(s) => parse_weight_list(s)?,
        None => datum.distinct_positive(),
    };
    let count_roots = match count_roots {
        Some(s) => parse_weight_list(s)?,
        None => Vec::new(),
    };
    let weyl = if tau {
        tau_subgroup()
    } else {
        trivial_subgroup(datum.rank)
    };
    Ok(RegularityScope {
        datum,
        strip_roots,
        count_roots,
        weyl,
    })
}

fn print_strip_report(report: &branch::StripReport, json: bool) {
    if json {
        let v = serde_json::json!({
            "holds": report.holds,
            "violations": report.violations.iter().map(|v| serde_json::json!({
                "lambda": v.lambda.0,
                "weyl_index": v.weyl_index,
                "beta1": v.beta1.0,
                "powers": v.powers,
                "lhs": v.lhs.to_string(),
                "rhs": v.rhs.to_string(),
            })).collect::<Vec<_>>(),
            "nsum_caps": report.nsum_caps.iter().map(|(s, c)| {
                serde_json::json!({"subset": s, "cap": c})
            }).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("holds: {}", report.holds);
        for (s, c) in &report.nsum_caps {
            println!("power-sum cap for subset {:?}: {}", s, c);
        }
        for v in &report.violations {
            println!(
                "violation: lambda [{}], w #{}, beta1 [{}], powers {:?}: |{}| < {}",
                fmt_coords(&v.lambda.0),
                v.weyl_index,
                fmt_coords(&v.beta1.0),
                v.powers,
                v.lhs,
                v.rhs
            );
        }
    }
}

fn run_check(cmd: CheckCommand) -> algchar::Result<()> {
    match cmd {
        CheckCommand::ConditionS {
            system,
            ktypes,
            lambda0,
            strip_roots,
            count_roots,
            tau,
            json,
        } => {
            let system = parse_system(&system)?;
            let datum = make_root_datum(system);
            let scope =
                scope_for(&datum, strip_roots.as_deref(), count_roots.as_deref(), tau)?;
            let ktypes: Vec<(Weight, u32)> = parse_weight_list(&ktypes)?
                .into_iter()
                .map(|w| (w, 1))
                .collect();
            let lambda0 = Weight(parse_coord_list(&lambda0)?);
            let report = branch::condition_s_check(&ktypes, &lambda0, &scope)?;
            print_strip_report(&report, json);
        }
        CheckCommand::ConditionSprime {
            system,
            infchars,
            lambda0,
            strip_roots,
            count_roots,
            b,
            tau,
            json,
        } => {
            let system = parse_system(&system)?;
            let datum = make_root_datum(system);
            let scope =
                scope_for(&datum, strip_roots.as_deref(), count_roots.as_deref(), tau)?;
            let chars = parse_weight_list(&infchars)?;
            let lambda0 = Weight(parse_coord_list(&lambda0)?);
            let report = branch::condition_sprime_check(&chars, &lambda0, &scope, b)?;
            print_strip_report(&report, json);
        }
    }
    Ok(())
}
