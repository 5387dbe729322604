mod args;
mod commands;

use clap::{Args, Parser, Subcommand};

use args::CliResult;

/// Explicit decompositions into absolutely irreducible polynomials, and
/// the related lattice, oracle, localization and forcing-algebra tools.
#[derive(Parser)]
#[command(name = "goldbach", version, about, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a polynomial into certified absolutely irreducible summands.
    Decompose(DecomposeArgs),
    /// Re-verify a decomposition document (a file path, or - for stdin).
    Certify {
        #[arg(value_name = "FILE")]
        file: String,
    },
    /// Lattice polytopes: hulls, gcd criteria, polygon summands, Goldbach condition.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Split f along Goldbach-condition witness points.
    WitnessSplit {
        #[command(flatten)]
        poly: PolyArgs,
        /// Witness points, e.g. "2,0;0,3".
        #[arg(long)]
        witness: String,
    },
    /// Exhaustive searches over small finite fields.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Prime sums in localizations of the integers.
    #[command(subcommand)]
    Localize(LocalizeCmd),
    /// Linear forcing algebras K[x1..xn]/(f1 x1 + .. + fn xn + f).
    #[command(subcommand)]
    Forcing(ForcingCmd),
    /// Decompose and certify random polynomials (reproducible with --seed).
    Check(CheckArgs),
}

#[derive(Args)]
struct PolyArgs {
    /// Polynomial, e.g. "x*y+x+y+1".
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Comma-separated variables; defaults to their order of appearance.
    #[arg(long)]
    vars: Option<String>,
    /// QQ, F<p> or GF(p^k).
    #[arg(long, default_value = "QQ")]
    field: String,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// shortcut, pyramid or localization.
    #[arg(long, default_value = "pyramid")]
    mode: String,
    /// Emit the machine-readable document instead of the session text.
    #[arg(long)]
    json: bool,
    /// Decompose poly/denominator in the localization at the monomials.
    #[arg(long, allow_hyphen_values = true)]
    denominator: Option<String>,
}

#[derive(Subcommand)]
enum PolytopeCmd {
    /// Vertices of the convex hull.
    Hull {
        /// Points "a,b;c,d;..."; or use --poly for a Newton polytope.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "poly")]
        points: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Segment criterion: gcd(b - a) = 1.
    Segment {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Pyramid criterion for conv(base, apex).
    Pyramid {
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        apex: String,
    },
    /// Exhaustive search for integral Minkowski summands of a polygon.
    Summands {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 64)]
        coord_bound: u64,
    },
    /// Check the Goldbach condition for supplied witness points.
    Goldbach {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Brute-force irreducibility over a finite field.
    Irreducible {
        #[command(flatten)]
        poly: PolyArgs,
        /// Also search over F_{p^k} for k up to this degree (evidence only).
        #[arg(long, default_value_t = 1)]
        extensions: u32,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Search for k irreducibles of degree <= deg summing to the target.
    Sum {
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        field: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        deg: u64,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Print candidate counts.
        #[arg(long)]
        verbose: bool,
    },
    /// List every polynomial of total degree <= deg.
    Enumerate {
        #[arg(long)]
        vars: String,
        #[arg(long)]
        field: String,
        #[arg(long)]
        deg: u64,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Check the quotient-ring identity for exponents p, i.
    Identity {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: u64,
    },
}

#[derive(Subcommand)]
enum LocalizeCmd {
    /// Sum of copies of one irreducible strictly inside (x0, y0).
    Approx {
        /// Generator primes of S, e.g. 2,5.
        #[arg(long)]
        gens: String,
        #[arg(long, num_args = 2, value_names = ["X0", "Y0"], allow_hyphen_values = true)]
        interval: Vec<String>,
        /// Also show a decimal approximation with this many places.
        #[arg(long)]
        decimals: Option<u32>,
        /// Show p, e, n and the repeated summand.
        #[arg(long)]
        explain: bool,
    },
    /// Greedy series x = sum p_i / q^{n_i}.
    Series {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "1e-6")]
        tol: String,
        #[arg(long, default_value_t = 64)]
        max_terms: usize,
        #[arg(long)]
        decimals: Option<u32>,
    },
    /// Fold s^m into the numerators or denominators of sum s'_i p_i / s_i.
    Rescale {
        #[arg(long)]
        gens: String,
        /// Terms "s',p,s;...".
        #[arg(long, allow_hyphen_values = true)]
        terms: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        m: u32,
        /// multiply or divide.
        #[arg(long, default_value = "multiply")]
        direction: String,
    },
}

#[derive(Args)]
struct ForcingArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// Relation coefficients f1,..,fn.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    /// Relation constant f.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    constant: String,
    /// 1-based pivot; defaults to the first nonzero coefficient.
    #[arg(long)]
    pivot: Option<usize>,
}

#[derive(Subcommand)]
enum ForcingCmd {
    /// Image in the polynomial ring without the pivot variable.
    NormalForm(ForcingArgs),
    /// Certified decomposition of the class of poly, with congruence check.
    Decompose {
        #[command(flatten)]
        data: ForcingArgs,
        #[arg(long, default_value = "pyramid")]
        mode: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value = "QQ")]
    field: String,
    /// Largest number of variables (at least 2).
    #[arg(long, default_value_t = 4)]
    max_vars: usize,
    #[arg(long, default_value_t = 6)]
    degree: u64,
    #[arg(long, default_value_t = 8)]
    terms: usize,
}

fn run(cli: Cli) -> CliResult {
    use commands::*;
    match cli.command {
        Command::Decompose(a) => decompose(&a.poly.poly, a.poly.vars.as_deref(), &a.poly.field, &a.mode, a.json, a.denominator.as_deref()),
        Command::Certify { file } => certify(&file),
        Command::Polytope(cmd) => match cmd {
            PolytopeCmd::Hull { points, poly, vars } => hull(points.as_deref(), poly.as_deref(), vars.as_deref()),
            PolytopeCmd::Segment { a, b } => segment(&a, &b),
            PolytopeCmd::Pyramid { base, apex } => pyramid(&base, &apex),
            PolytopeCmd::Summands { points, budget, coord_bound } => summands(&points, budget, coord_bound),
            PolytopeCmd::Goldbach { points, witness } => goldbach(&points, &witness),
        },
        Command::WitnessSplit { poly, witness } => witness_split(&poly.poly, poly.vars.as_deref(), &poly.field, &witness),
        Command::Oracle(cmd) => match cmd {
            OracleCmd::Irreducible { poly, extensions, budget } => irreducible(&poly.poly, poly.vars.as_deref(), &poly.field, extensions, budget),
            OracleCmd::Sum { target, vars, field, k, deg, budget, verbose } => sum(&target, vars.as_deref(), &field, k, deg, budget, verbose),
            OracleCmd::Enumerate { vars, field, deg, budget } => enumerate(&vars, &field, deg, budget),
            OracleCmd::Identity { p, i } => identity(p, i),
        },
        Command::Localize(cmd) => match cmd {
            LocalizeCmd::Approx { gens, interval, decimals, explain } => approx(&gens, &interval[0], &interval[1], decimals, explain),
            LocalizeCmd::Series { x, q, tol, max_terms, decimals } => series(&x, q, &tol, max_terms, decimals),
            LocalizeCmd::Rescale { gens, terms, s, m, direction } => rescale(&gens, &terms, &s, m, &direction),
        },
        Command::Forcing(cmd) => match cmd {
            ForcingCmd::NormalForm(a) => forcing_normal_form(&a.poly.poly, a.poly.vars.as_deref(), &a.poly.field, &a.coeffs, &a.constant, a.pivot),
            ForcingCmd::Decompose { data: a, mode, json } => forcing_decompose(&a.poly.poly, a.poly.vars.as_deref(), &a.poly.field, &a.coeffs, &a.constant, a.pivot, &mode, json),
        },
        Command::Check(a) => check(a.seed, a.count, &a.field, a.max_vars, a.degree, a.terms),
    }
}

fn main() {
    // die quietly on a closed pipe (`goldbach ... | head`) instead of panicking
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
