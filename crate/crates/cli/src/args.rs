//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "coxring", version, about = "Exact Cox ring computations for surfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rational polyhedral cones.
    #[command(subcommand)]
    Cone(ConeCommand),
    /// Intersection lattices of surfaces.
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Multigraded polynomial rings.
    #[command(subcommand)]
    Ring(RingCommand),
    /// Toric quotients of affine space.
    #[command(subcommand)]
    Toric(ToricCommand),
    /// Verify a fixture bundle.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

/// A cone given by generators on the command line or by a cone JSON file.
#[derive(Args, Debug)]
pub struct ConeInput {
    /// Ambient rank (required with --rays).
    #[arg(long)]
    pub rank: Option<usize>,
    /// Generators as comma-separated integers, rows separated by semicolons.
    #[arg(long, conflicts_with = "cone")]
    pub rays: Option<String>,
    /// Cone JSON file as written by `--format json`.
    #[arg(long)]
    pub cone: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ConeCommand {
    /// dual: the cone {u : u·v >= 0 for all v in C}.
    Dual(ConeInput),
    /// intersect: intersection of cones given as --cone files (repeatable) or --rays lists (repeatable).
    Intersect {
        /// Ambient rank (required when only --rays is given).
        #[arg(long)]
        rank: Option<usize>,
        /// Generators of one cone, in the --rays format of `cone dual`.
        #[arg(long)]
        rays: Vec<String>,
        /// Cone JSON file.
        #[arg(long)]
        cone: Vec<PathBuf>,
    },
    /// contains: membership of a vector, or interior membership with --strict.
    Contains {
        #[command(flatten)]
        input: ConeInput,
        /// Comma-separated integer coordinates.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        /// Test membership in the relative interior instead.
        #[arg(long)]
        strict: bool,
    },
    /// certify: nonnegative combination of the generators, or a separating facet normal.
    Certify {
        #[command(flatten)]
        input: ConeInput,
        /// Comma-separated integer coordinates.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SurfaceCommand {
    /// nef: dual of the effective cone under the intersection pairing.
    Nef {
        /// Surface JSON file, or a bundle file (which adds its named classes).
        #[arg(long)]
        fixture: PathBuf,
    },
    /// chi: Riemann-Roch Euler characteristic of a class.
    Chi {
        /// Surface JSON file, or a bundle file (which adds its named classes).
        #[arg(long)]
        fixture: PathBuf,
        /// Class as coordinates (`1,0,2`) or an expression in named classes (`L - E1`).
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// anticanonical: solve for the canonical class by adjunction and print -K.
    Anticanonical {
        /// Surface JSON file, or a bundle file (which adds its named classes).
        #[arg(long)]
        fixture: PathBuf,
    },
    /// decompose: fixed and moving part of an effective class.
    Decompose {
        /// Surface JSON file, or a bundle file (which adds its named classes).
        #[arg(long)]
        fixture: PathBuf,
        /// Divisor class: a coordinate vector or an expression in named classes such as `2*Al - A1`.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum RingCommand {
    /// monomials: exponent vectors of all monomials of a degree.
    Monomials {
        /// Ring JSON file, or a bundle file.
        #[arg(long)]
        fixture: PathBuf,
        /// Degree as coordinates or an expression in the classes of the referenced surface.
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// hilbert: dimension of a graded piece of the ring modulo its single relation.
    Hilbert {
        /// Ring JSON file, or a bundle file.
        #[arg(long)]
        fixture: PathBuf,
        /// Degree: a coordinate vector or an expression in named classes such as `2*Al - A1`.
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// homogeneous: the degree of a polynomial, if it is homogeneous.
    Homogeneous {
        /// Ring JSON file, or a bundle file.
        #[arg(long)]
        fixture: PathBuf,
        /// Polynomial, e.g. `x^2*y - 3*z`.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// substitute: replace variables by polynomials and expand.
    Substitute {
        /// Polynomial, e.g. `x^2*y - 3*z`.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// `variable=expression`; repeatable. Unassigned variables stay as they are.
        #[arg(long = "assign", allow_hyphen_values = true)]
        assign: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ToricCommand {
    /// skeleton: one-skeleton vectors from the relations among the characters.
    Skeleton {
        /// Character JSON file, or a bundle file.
        #[arg(long)]
        fixture: PathBuf,
    },
    /// moving-cone: intersection of the cones spanned by all characters but one.
    MovingCone {
        /// Character JSON file, or a bundle file.
        #[arg(long)]
        fixture: PathBuf,
    },
    /// projective: whether 0 lies outside the convex hull of the characters.
    Projective {
        /// Character JSON file, or a bundle file.
        #[arg(long)]
        fixture: PathBuf,
    },
    /// fan: polytope and fan rays of the quotient polarized by a class.
    Fan {
        /// Character JSON file, or a bundle file.
        #[arg(long)]
        fixture: PathBuf,
        /// Polarizing class: a coordinate vector or an expression in named classes such as `2*Al - A1`.
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// Scale the polarization by this positive integer instead of the computed one.
        #[arg(long)]
        multiplier: Option<u64>,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Override the coefficient bound of the Hilbert function sweep.
    #[arg(long)]
    pub sweep_bound: Option<u32>,
    /// Report format; defaults to --format.
    #[arg(long, value_enum)]
    pub report: Option<Format>,
    /// Bundle JSON file to verify instead of the shipped fixture.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// e6: every identity of the E6 bundle; exit code 0 iff all pass.
    E6(VerifyArgs),
    /// d4: every identity of the D4 bundle; exit code 0 iff all pass.
    D4(VerifyArgs),
}
