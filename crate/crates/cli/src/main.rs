use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ncribbon::nabla::{nabla, nabla_in_level, nabla_to_ribbon, sign_normalize};
use ncribbon::table::{gamma_schur_table, macdonald_gamma_table};
use ncribbon::verify::{run_suite, Suite, VerifyConfig};
use ncribbon::{qt, Basis, Composition, Flavor, NcsfElement};
use serde_json::json;

#[derive(Parser)]
#[command(name = "ncribbon", version, about = "Gamma-ribbon Schur functions and q,t-bases of NCSF")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisName {
    Homogeneous,
    Ribbon,
    HallLittlewood,
    ModifiedHallLittlewood,
    Macdonald,
    ModifiedMacdonald,
    GammaSchur,
    /// `R^{(γ)}_α(A;1/t)`.
    GammaSchurInverted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FlavorName {
    Single,
    Multivariate,
}

impl From<FlavorName> for Flavor {
    fn from(f: FlavorName) -> Self {
        match f {
            FlavorName::Single => Flavor::SingleParam,
            FlavorName::Multivariate => Flavor::Multivariate,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    GammaSchur,
    MacdonaldGamma,
}

#[derive(Subcommand)]
enum Command {
    /// Ribbon expansion of one basis element.
    Expand {
        #[arg(long, value_enum)]
        basis: BasisName,
        #[arg(long)]
        index: String,
        #[arg(long)]
        level: Option<String>,
        #[arg(long, value_enum, default_value_t = FlavorName::Single)]
        flavor: FlavorName,
    },
    /// Weight-n coefficient tables: one column per basis function, "·" for zero.
    Table {
        #[arg(long, value_enum)]
        kind: TableKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        level: String,
    },
    /// Runs verification suites; the exit status is 1 if any check fails.
    Verify {
        /// A suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Extend with random samples up to this degree.
        #[arg(long)]
        random_degree: Option<usize>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Applies nabla to one basis element and extracts the global sign.
    Nabla {
        #[arg(long, value_enum)]
        basis: BasisName,
        #[arg(long)]
        index: String,
        /// Level for the gamma-Schur basis, or the target level for
        /// modified Hall-Littlewood input.
        #[arg(long)]
        level: Option<String>,
        /// Write gamma-Schur results in the ribbon basis.
        #[arg(long)]
        ribbon: bool,
        #[arg(long, value_enum, default_value_t = FlavorName::Single)]
        flavor: FlavorName,
    },
    /// Rewrites one basis element in another basis.
    Convert {
        #[arg(long, value_enum)]
        from: BasisName,
        #[arg(long, value_enum)]
        to: BasisName,
        #[arg(long)]
        index: String,
        /// Level of a gamma-Schur basis on either side.
        #[arg(long)]
        level: Option<String>,
        /// Level of a gamma-Schur target when the source has its own level.
        #[arg(long)]
        to_level: Option<String>,
        #[arg(long, value_enum, default_value_t = FlavorName::Single)]
        flavor: FlavorName,
    },
    /// Expands `R^{(γ)}_α` in the `γ̃`-Schur basis for `γ ≤ γ̃`.
    Branch {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        index: String,
        #[arg(long, value_enum, default_value_t = FlavorName::Single)]
        flavor: FlavorName,
    },
}

fn composition(s: &str) -> Result<Composition> {
    s.parse::<Composition>().with_context(|| format!("bad composition {s:?}"))
}

fn basis(name: BasisName, level: Option<&str>) -> Result<Basis> {
    let level = |what: &str| -> Result<Composition> {
        match level {
            Some(l) => composition(l),
            None => bail!("--{what} is required for the gamma-schur bases"),
        }
    };
    Ok(match name {
        BasisName::Homogeneous => Basis::Homogeneous,
        BasisName::Ribbon => Basis::Ribbon,
        BasisName::HallLittlewood => Basis::HallLittlewood,
        BasisName::ModifiedHallLittlewood => Basis::ModifiedHallLittlewood,
        BasisName::Macdonald => Basis::Macdonald,
        BasisName::ModifiedMacdonald => Basis::ModifiedMacdonald,
        BasisName::GammaSchur => Basis::gamma_schur(level("level")?),
        BasisName::GammaSchurInverted => Basis::gamma_schur_inverted(level("level")?),
    })
}

fn element_json(e: &NcsfElement) -> serde_json::Value {
    serde_json::to_value(e.to_json()).expect("elements serialise")
}

fn print_element(format: Format, e: &NcsfElement) {
    match format {
        Format::Text => println!("{e}"),
        Format::Json => println!("{}", element_json(e)),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let format = cli.format;
    match cli.command {
        Command::Expand { basis: name, index, level, flavor } => {
            let b = basis(name, level.as_deref())?;
            let e = qt::expand_basis_element(&b, &composition(&index)?, flavor.into())?;
            print_element(format, &e);
        }
        Command::Table { kind, n, level } => {
            let level = composition(&level)?;
            if level.degree() != n {
                bail!("level {level} has degree {}, not {n}", level.degree());
            }
            let table = match kind {
                TableKind::GammaSchur => gamma_schur_table(&level)?,
                TableKind::MacdonaldGamma => macdonald_gamma_table(&level)?,
            };
            match format {
                Format::Text => print!("{}", table.render_text()),
                Format::Json => println!("{}", table.to_json()),
            }
        }
        Command::Verify { suite, max_degree, random_degree, samples, seed } => {
            if max_degree > 8 || random_degree.is_some_and(|r| r > 8) {
                bail!("verification degrees are limited to 8");
            }
            let suites = if suite == "all" { Suite::ALL.to_vec() } else { vec![Suite::parse(&suite)?] };
            let config = VerifyConfig {
                exhaustive_degree: max_degree,
                random_degree: random_degree.unwrap_or(max_degree),
                samples,
                seed,
            };
            let reports: Vec<_> = suites.into_iter().map(|s| run_suite(s, &config)).collect();
            match format {
                Format::Text => reports.iter().for_each(|r| print!("{}", r.render_text())),
                Format::Json => println!("{}", serde_json::to_string(&reports)?),
            }
            if !reports.iter().all(|r| r.passed()) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Nabla { basis: name, index, level, ribbon, flavor } => {
            let alpha = composition(&index)?;
            let flavor: Flavor = flavor.into();
            let family = flavor.family(alpha.degree());
            let image = match name {
                BasisName::ModifiedHallLittlewood => {
                    let e = NcsfElement::basis_element(alpha, Basis::ModifiedHallLittlewood, family)?;
                    match level {
                        Some(l) => nabla_in_level(&e, &composition(&l)?)?,
                        None => nabla(&e)?,
                    }
                }
                BasisName::GammaSchurInverted => {
                    let e = NcsfElement::basis_element(alpha, basis(name, level.as_deref())?, family)?;
                    if ribbon {
                        nabla_to_ribbon(&e)?
                    } else {
                        nabla(&e)?
                    }
                }
                BasisName::Ribbon | BasisName::ModifiedMacdonald => {
                    nabla(&NcsfElement::basis_element(alpha, basis(name, None)?, family)?)?
                }
                _ => bail!("nabla is evaluated on the ribbon, modified-macdonald, \
                            gamma-schur-inverted and modified-hall-littlewood bases"),
            };
            let (sign, positive) = sign_normalize(&image)?;
            match format {
                Format::Text => println!("sign: {sign}\n{positive}"),
                Format::Json => {
                    println!("{}", json!({ "sign": sign, "element": element_json(&positive) }))
                }
            }
        }
        Command::Convert { from, to, index, level, to_level, flavor } => {
            let source = basis(from, level.as_deref())?;
            let target = basis(to, to_level.as_deref().or(level.as_deref()))?;
            let ribbon = qt::expand_basis_element(&source, &composition(&index)?, flavor.into())?;
            let out = match target {
                Basis::Homogeneous => ribbon.ribbon_to_h()?,
                t => qt::from_ribbon(&ribbon, &t)?,
            };
            print_element(format, &out);
        }
        Command::Branch { from, to, index, flavor } => {
            let e = qt::branch(&composition(&from)?, &composition(&to)?, &composition(&index)?, flavor.into())?;
            print_element(format, &e);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
