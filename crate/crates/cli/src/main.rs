//! `quadric` — command-line front end for the exact mod-2 cohomology rings
//! and the structure maps between them. Every command reads expressions in
//! the shared grammar, computes exactly over GF(2), and prints
//! deterministic text or JSON.

mod expr;
mod output;

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use output::{family_code, print_bool, print_labeled, print_poly, poly_value, ring_value, Format};
use quadric_core::{
    goeven, gysin, maps, primitivity, selftest, toda, AlgebraError, Polynomial, RingContext,
    RingFamily, VarKey, DEFAULT_DEGREE_CAP,
};

#[derive(Parser)]
#[command(name = "quadric", version, about = "Exact mod-2 cohomology of orthogonal, similitude and general-linear classifying spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the generators and degrees of a ring
    RingInfo(CommonArgs),
    /// Evaluate expressions and print their canonical form
    Normalize(ExprArgs),
    /// Decide equality of exactly two expressions (in the quotient where applicable)
    Eq(ExprArgs),
    /// Pull back along the orthogonal-to-similitude fibration (go rings only)
    Pistar(ExprArgs),
    /// Apply the multiplication coaction; the result gains the adjoined class
    Action(ExprArgs),
    /// Map Chern classes into the similitude ring of the same rank (gl rings only)
    Chern(ExprArgs),
    /// Apply the plain Gysin boundary of the orthogonal fibration (o rings only)
    GysinD(ExprArgs),
    /// Apply the connecting boundary down one rank (go rings only)
    Boundary(BoundaryArgs),
    /// Check primitivity; non-primitive elements come with a witness term
    Primitive(ExprArgs),
    /// Print the distinguished primitive generator set of a ring
    PrimitiveGenerators(CommonArgs),
    /// Rewrite an orthogonal-ring expression in the even similitude generators
    Express(ExprArgs),
    /// Print the hat elements of the binomial coaction (o, gl and toda rings)
    TodaHat(CommonArgs),
    /// Print the abstract primitive generator set (o, gl and toda rings)
    TodaGenerators(CommonArgs),
    /// Run the full acceptance suite; exits nonzero if any criterion fails
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Ring selector `family:rank` with family one of go|o|gl|toda, e.g. go:4
    #[arg(long, value_parser = parse_selector)]
    ring: RingSelector,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest homogeneous degree the ring will enumerate
    #[arg(long)]
    degree_cap: Option<u32>,
}

#[derive(Args)]
struct ExprArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Expression in the grammar; repeatable, processed in order
    #[arg(long, required = true)]
    expr: Vec<String>,
}

#[derive(Args)]
struct BoundaryArgs {
    /// Source ring `go:rank`; odd ranks descend to the even ring one rank
    /// below, even ranks ascend to the odd ring one rank below
    #[arg(long, value_parser = parse_selector)]
    from: RingSelector,
    /// Expression in the grammar; repeatable, processed in order
    #[arg(long, required = true)]
    expr: Vec<String>,
    /// Fibration parity; 0 forces every boundary to vanish
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    parity: u8,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest homogeneous degree the ring will enumerate
    #[arg(long)]
    degree_cap: Option<u32>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CliFamily {
    Go,
    O,
    Gl,
    Toda,
}

#[derive(Debug, Clone, Copy)]
struct RingSelector {
    family: CliFamily,
    rank: u32,
}

fn parse_selector(s: &str) -> Result<RingSelector, String> {
    let (family, rank) = s
        .split_once(':')
        .ok_or_else(|| format!("`{s}` is not a ring selector; expected family:rank, e.g. go:4"))?;
    let family = match family {
        "go" => CliFamily::Go,
        "o" => CliFamily::O,
        "gl" => CliFamily::Gl,
        "toda" => CliFamily::Toda,
        other => return Err(format!("unknown ring family `{other}`; use go, o, gl or toda")),
    };
    let rank = rank
        .parse()
        .map_err(|_| format!("`{rank}` is not a valid rank"))?;
    Ok(RingSelector { family, rank })
}

impl RingSelector {
    fn ring_family(self) -> RingFamily {
        match self.family {
            CliFamily::Go if self.rank.is_multiple_of(2) => RingFamily::BGOEven,
            CliFamily::Go => RingFamily::BGOOdd,
            CliFamily::O => RingFamily::BO,
            CliFamily::Gl => RingFamily::BGL,
            CliFamily::Toda => RingFamily::TodaA,
        }
    }

    fn context(self, cap: Option<u32>) -> Result<Arc<RingContext>, CliError> {
        Ok(RingContext::with_degree_cap(
            self.ring_family(),
            self.rank,
            cap.unwrap_or(DEFAULT_DEGREE_CAP),
        )?)
    }
}

enum CliError {
    Usage(String),
    Domain(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        let msg = e.to_string();
        match e {
            AlgebraError::NotInImage
            | AlgebraError::UnsupportedRank(_)
            | AlgebraError::BadRank { .. }
            | AlgebraError::DegreeCapExceeded { .. } => CliError::Domain(msg),
            AlgebraError::Internal(_) | AlgebraError::DimensionMismatch(_) => {
                CliError::Internal(msg)
            }
            _ => CliError::Usage(msg),
        }
    }
}

impl From<expr::ParseError> for CliError {
    fn from(e: expr::ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    // Die quietly on a closed output pipe (`quadric … | head`) instead of
    // panicking inside println!.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::RingInfo(args) => cmd_ring_info(&args),
        Command::Normalize(args) => cmd_normalize(&args),
        Command::Eq(args) => cmd_eq(&args),
        Command::Pistar(args) => cmd_pistar(&args),
        Command::Action(args) => cmd_action(&args),
        Command::Chern(args) => cmd_chern(&args),
        Command::GysinD(args) => cmd_gysin_d(&args),
        Command::Boundary(args) => cmd_boundary(&args),
        Command::Primitive(args) => cmd_primitive(&args),
        Command::PrimitiveGenerators(args) => cmd_primitive_generators(&args),
        Command::Express(args) => cmd_express(&args),
        Command::TodaHat(args) => cmd_toda_hat(&args),
        Command::TodaGenerators(args) => cmd_toda_generators(&args),
        Command::Selftest(args) => cmd_selftest(&args),
    }
}

fn parse_all(sources: &[String], ctx: &Arc<RingContext>) -> Result<Vec<Polynomial>, CliError> {
    sources
        .iter()
        .map(|src| {
            let ast = expr::parse_expr(src, ctx)?;
            Ok(expr::eval_expr(&ast, ctx)?)
        })
        .collect()
}

fn require_family(
    selector: RingSelector,
    family: CliFamily,
    hint: &str,
) -> Result<(), CliError> {
    if selector.family == family {
        Ok(())
    } else {
        Err(CliError::Usage(hint.to_string()))
    }
}

fn cmd_ring_info(args: &CommonArgs) -> Result<(), CliError> {
    let ctx = args.ring.context(args.degree_cap)?;
    match args.format {
        Format::Text => {
            println!("ring {}:{}", family_code(ctx.family()), ctx.rank());
            for spec in ctx.vars() {
                println!("{} degree {}", spec.key.name(), spec.degree);
            }
        }
        Format::Json => {
            let generators: Vec<serde_json::Value> = ctx
                .vars()
                .iter()
                .map(|spec| json!({ "name": spec.key.name(), "degree": spec.degree }))
                .collect();
            println!(
                "{}",
                json!({ "ring": ring_value(&ctx), "generators": generators })
            );
        }
    }
    Ok(())
}

fn cmd_normalize(args: &ExprArgs) -> Result<(), CliError> {
    let ctx = args.common.ring.context(args.common.degree_cap)?;
    for p in parse_all(&args.expr, &ctx)? {
        let canonical = if ctx.family() == RingFamily::BGOEven {
            goeven::normal_form(&p)?
        } else {
            p
        };
        print_poly(&canonical, args.common.format);
    }
    Ok(())
}

fn cmd_eq(args: &ExprArgs) -> Result<(), CliError> {
    let ctx = args.common.ring.context(args.common.degree_cap)?;
    let polys = parse_all(&args.expr, &ctx)?;
    let [left, right] = polys.as_slice() else {
        return Err(CliError::Usage("eq needs exactly two --expr values".into()));
    };
    let equal = if ctx.family() == RingFamily::BGOEven {
        goeven::eq_go_even(left, right)?
    } else {
        left == right
    };
    print_bool(&ctx, "equal", equal, args.common.format);
    Ok(())
}

fn cmd_pistar(args: &ExprArgs) -> Result<(), CliError> {
    require_family(
        args.common.ring,
        CliFamily::Go,
        "pistar pulls back from a similitude ring; use --ring go:<rank>",
    )?;
    let ctx = args.common.ring.context(args.common.degree_cap)?;
    let map = if ctx.family() == RingFamily::BGOEven {
        maps::pistar_even(ctx.rank() / 2)?
    } else {
        maps::pistar_odd((ctx.rank() - 1) / 2)?
    };
    for p in parse_all(&args.expr, &ctx)? {
        print_poly(&map.apply(&p)?, args.common.format);
    }
    Ok(())
}

fn cmd_action(args: &ExprArgs) -> Result<(), CliError> {
    let ctx = args.common.ring.context(args.common.degree_cap)?;
    let map = match ctx.family() {
        RingFamily::BGOEven => maps::action_even(ctx.rank() / 2)?,
        RingFamily::BGOOdd => maps::action_odd((ctx.rank() - 1) / 2)?,
        _ => toda::coaction_map(&ctx)?,
    };
    for p in parse_all(&args.expr, &ctx)? {
        print_poly(&map.apply(&p)?, args.common.format);
    }
    Ok(())
}

fn cmd_chern(args: &ExprArgs) -> Result<(), CliError> {
    require_family(
        args.common.ring,
        CliFamily::Gl,
        "chern starts from the general-linear ring; use --ring gl:<rank>",
    )?;
    let ctx = args.common.ring.context(args.common.degree_cap)?;
    let map = if ctx.rank() % 2 == 0 {
        maps::chern_to_go_even(ctx.rank() / 2)?
    } else {
        maps::chern_to_go_odd((ctx.rank() - 1) / 2)?
    };
    for p in parse_all(&args.expr, &ctx)? {
        print_poly(&map.apply(&p)?, args.common.format);
    }
    Ok(())
}

fn cmd_gysin_d(args: &ExprArgs) -> Result<(), CliError> {
    require_family(
        args.common.ring,
        CliFamily::O,
        "gysin-d acts on the orthogonal ring; use --ring o:<rank>",
    )?;
    let ctx = args.common.ring.context(args.common.degree_cap)?;
    for p in parse_all(&args.expr, &ctx)? {
        let image = if ctx.rank() % 2 == 0 {
            gysin::gysin_d_even(&p)?
        } else {
            gysin::gysin_d_odd(&p)?
        };
        print_poly(&image, args.common.format);
    }
    Ok(())
}

fn cmd_boundary(args: &BoundaryArgs) -> Result<(), CliError> {
    require_family(
        args.from,
        CliFamily::Go,
        "the connecting boundary starts from a similitude ring; use --from go:<rank>",
    )?;
    let ctx = args.from.context(args.degree_cap)?;
    let parity = args.parity == 1;
    for p in parse_all(&args.expr, &ctx)? {
        let image = if ctx.family() == RingFamily::BGOOdd {
            gysin::boundary_odd_to_even(&p, parity)?
        } else {
            gysin::boundary_even_to_odd(&p, parity)?
        };
        print_poly(&image, args.format);
    }
    Ok(())
}

/// The witness of a failed primitivity check: the first coaction term that
/// moves, as a polynomial in the ring with the coacting class adjoined.
fn witness_poly(
    ctx: &Arc<RingContext>,
    power: u32,
    coeff: &Polynomial,
) -> Result<Polynomial, AlgebraError> {
    let (adjoined, key) = match ctx.family() {
        RingFamily::BO => (maps::adjoin_wclass(ctx), VarKey::WCLASS),
        RingFamily::TodaA => (maps::adjoin_t(ctx, 1), VarKey::T),
        _ => (maps::adjoin_t(ctx, 2), VarKey::T),
    };
    coeff
        .lift_to(&adjoined)?
        .checked_mul(&Polynomial::var_pow(&adjoined, key, power)?)
}

fn cmd_primitive(args: &ExprArgs) -> Result<(), CliError> {
    let ctx = args.common.ring.context(args.common.degree_cap)?;
    for p in parse_all(&args.expr, &ctx)? {
        match primitivity::primitivity_defect(&p)? {
            None => match args.common.format {
                Format::Text => println!("true"),
                Format::Json => println!(
                    "{}",
                    json!({ "ring": ring_value(&ctx), "primitive": true })
                ),
            },
            Some((power, coeff)) => {
                let witness = witness_poly(&ctx, power, &coeff)?;
                match args.common.format {
                    Format::Text => {
                        println!("false");
                        println!("witness: {witness}");
                    }
                    Format::Json => println!(
                        "{}",
                        json!({
                            "ring": ring_value(&ctx),
                            "primitive": false,
                            "witness": poly_value(&witness),
                        })
                    ),
                }
            }
        }
    }
    Ok(())
}

fn cmd_primitive_generators(args: &CommonArgs) -> Result<(), CliError> {
    let ctx = args.ring.context(args.degree_cap)?;
    let set = primitivity::ph_generators(&ctx)?;
    print_labeled(&ctx, &set.entries, args.format);
    Ok(())
}

fn cmd_express(args: &ExprArgs) -> Result<(), CliError> {
    let selector = args.common.ring;
    if selector.family != CliFamily::Go || !selector.rank.is_multiple_of(2) {
        return Err(CliError::Usage(
            "express rewrites into the even similitude ring; use --ring go:<even rank>".into(),
        ));
    }
    let even = selector.context(args.common.degree_cap)?;
    let bo = RingContext::with_degree_cap(
        RingFamily::BO,
        even.rank(),
        args.common.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP),
    )?;
    for h in parse_all(&args.expr, &bo)? {
        print_poly(&goeven::express_in_generators(&h, &even)?, args.common.format);
    }
    Ok(())
}

fn cmd_toda_hat(args: &CommonArgs) -> Result<(), CliError> {
    let ctx = args.ring.context(args.degree_cap)?;
    let prefix = toda::hat_prefix(ctx.family())?;
    let entries: Vec<(String, Polynomial)> = toda::hat_elements(&ctx)?
        .into_iter()
        .enumerate()
        .map(|(i, hat)| (format!("{prefix}{}", i + 1), hat))
        .collect();
    print_labeled(&ctx, &entries, args.format);
    Ok(())
}

fn cmd_toda_generators(args: &CommonArgs) -> Result<(), CliError> {
    let ctx = args.ring.context(args.degree_cap)?;
    let entries = toda::primitive_generators(&ctx)?;
    print_labeled(&ctx, &entries, args.format);
    Ok(())
}

fn cmd_selftest(args: &SelftestArgs) -> Result<(), CliError> {
    let outcomes = selftest::run_all();
    let mut failed = 0usize;
    for outcome in &outcomes {
        match args.format {
            Format::Text => println!("{}", outcome.report_line()),
            Format::Json => println!(
                "{}",
                json!({
                    "criterion": outcome.index,
                    "name": outcome.name,
                    "passed": outcome.passed,
                    "details": outcome.details,
                })
            ),
        }
        if !outcome.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(CliError::Internal(format!(
            "{failed} of {} criteria failed",
            outcomes.len()
        )));
    }
    Ok(())
}
