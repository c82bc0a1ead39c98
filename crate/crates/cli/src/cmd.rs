use clap::{Args, Parser, Subcommand};
use slrec_core::engines::{
    affine_engine, chebyshev_engine, decomposed_engine, gallery, power_engine, AffineSpec, CSpec,
    ChebSpec, DecompSpec, EngineResult, Gallery, PowerSpec,
};
use slrec_core::exactnum::root_of_unity_order;
use slrec_core::{CycRat, Error};

use crate::config::RunConfig;
use crate::expr::{parse_poly, parse_scalar};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "slrec",
    version,
    about = "Recurrence sets of polynomial triples"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Brute-force window of an arbitrary triple.
    Oracle(TripleArgs),
    /// Window of an affine triple from its coefficients.
    AffineOracle(AffineArgs),
    /// Window of a twisted power-map system.
    TorsionOracle(TorsionArgs),
    /// Closed-form set of an exceptional family.
    #[command(subcommand)]
    Engine(EngineCmd),
    /// Compare an engine with its oracle on the window.
    #[command(subcommand)]
    Verify(EngineCmd),
    /// One row of an engine's set.
    Slice {
        #[arg(long)]
        row: u64,
        #[command(subcommand)]
        engine: EngineCmd,
    },
    /// Row eventual periods and their uniform bound.
    #[command(subcommand)]
    Period(EngineCmd),
    /// The diagonal `{n : (n, n) ∈ S}`.
    #[command(subcommand)]
    Diag(EngineCmd),
    /// Non-semilinearity certificate of a gallery entry.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Seeded engine/oracle agreement battery over every family.
    Battery,
}

#[derive(Debug, Args)]
pub struct TripleArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
}

/// `f = A₁z + B₁`, `g = A₂z + B₂`, `c = Cz + D`.
#[derive(Clone, Debug, Args)]
pub struct AffineArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    #[arg(long, allow_hyphen_values = true)]
    pub d: String,
}

#[derive(Debug, Args)]
pub struct TorsionArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub d1: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub d2: i64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub a: u64,
    #[arg(long)]
    pub e: u64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    pub d3: i64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    pub d4: i64,
}

#[derive(Clone, Debug, Subcommand)]
pub enum EngineCmd {
    /// `(z^d1, zeta·z^d2, c)` with roots of unity `zeta` and `c`.
    Power {
        #[arg(long, allow_negative_numbers = true)]
        d1: i64,
        #[arg(long, allow_negative_numbers = true)]
        d2: i64,
        #[arg(long, default_value_t = 1)]
        zeta_ord: u64,
        #[arg(long, default_value_t = 0)]
        zeta_exp: u64,
        /// The constant, a root of unity such as `zeta(6)^5` or `-1`.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// `(e1·T_r, e2·T_s, e3·T_t)` for Chebyshev polynomials.
    Chebyshev {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
        e1: i8,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
        e2: i8,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
        e3: i8,
    },
    Affine(AffineArgs),
    /// Twisted iterates of one polynomial `h`.
    Decomposed {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = 1)]
        k1: u64,
        #[arg(long, default_value_t = 1)]
        k2: u64,
        #[arg(long, default_value_t = 0)]
        z1: u64,
        #[arg(long, default_value_t = 0)]
        z2: u64,
        /// Constant third polynomial.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["z3", "k3"])]
        c: Option<String>,
        /// With `--k3`, the third polynomial is a twisted iterate of `h`.
        #[arg(long, requires = "k3")]
        z3: Option<u64>,
        #[arg(long)]
        k3: Option<u64>,
    },
    #[command(subcommand)]
    Gallery(GalleryCmd),
}

#[derive(Clone, Copy, Debug, Subcommand)]
pub enum GalleryCmd {
    /// `(z/2, z − 1, 1)`.
    Deg1counter1,
    /// `(2z, z + 1, z^k)`.
    Deg1counter2 {
        #[arg(long)]
        k: u64,
    },
    /// `(z^r, z^s, −z)` over nonzero points.
    Powertil {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
    },
}

#[derive(Clone, Copy, Debug, Subcommand)]
pub enum CertifyCmd {
    Powertil {
        #[arg(long, default_value_t = 3)]
        r: u64,
        #[arg(long, default_value_t = 3)]
        s: u64,
    },
    Deg1counter1,
}

impl GalleryCmd {
    pub fn entry(self) -> Gallery {
        match self {
            GalleryCmd::Deg1counter1 => Gallery::Deg1Counter1,
            GalleryCmd::Deg1counter2 { k } => Gallery::Deg1Counter2 { k },
            GalleryCmd::Powertil { r, s } => Gallery::PowerTil { r, s },
        }
    }
}

impl CertifyCmd {
    pub fn entry(self) -> Gallery {
        match self {
            CertifyCmd::Powertil { r, s } => Gallery::PowerTil { r, s },
            CertifyCmd::Deg1counter1 => Gallery::Deg1Counter1,
        }
    }
}

/// An engine command turned into its validated specification.
#[derive(Clone, Debug)]
pub enum Family {
    Power(PowerSpec),
    Chebyshev(ChebSpec),
    Affine(AffineSpec),
    Decomposed(DecompSpec),
    Gallery(Gallery),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Power(_) => "power",
            Family::Chebyshev(_) => "chebyshev",
            Family::Affine(_) => "affine",
            Family::Decomposed(_) => "decomposed",
            Family::Gallery(_) => "gallery",
        }
    }

    pub fn run(&self, cfg: &RunConfig) -> Result<EngineResult, Error> {
        match self {
            Family::Power(s) => power_engine(s).map(EngineResult::SemiLinear),
            Family::Chebyshev(s) => chebyshev_engine(s).map(EngineResult::SemiLinear),
            Family::Affine(s) => affine_engine(s),
            Family::Decomposed(s) => {
                decomposed_engine(s, cfg.degree_cap).map(EngineResult::SemiLinear)
            }
            Family::Gallery(g) => gallery(g),
        }
    }
}

fn root_of_unity(src: &str) -> Result<(u64, u64), CliError> {
    let c = parse_scalar(src)?;
    let k = root_of_unity_order(&c)?
        .ok_or_else(|| Error::Precondition(format!("{src} is not a root of unity")))?;
    let j = c.discrete_log(k).expect("order was just computed");
    Ok((k, j))
}

pub fn affine_coeffs(a: &AffineArgs) -> Result<[CycRat; 6], CliError> {
    Ok([
        parse_scalar(&a.a1)?,
        parse_scalar(&a.b1)?,
        parse_scalar(&a.a2)?,
        parse_scalar(&a.b2)?,
        parse_scalar(&a.c)?,
        parse_scalar(&a.d)?,
    ])
}

impl EngineCmd {
    pub fn family(&self, cfg: &RunConfig) -> Result<Family, CliError> {
        Ok(match self {
            EngineCmd::Power {
                d1,
                d2,
                zeta_ord,
                zeta_exp,
                c,
            } => Family::Power(PowerSpec::new(
                *d1,
                *d2,
                (*zeta_ord, *zeta_exp),
                root_of_unity(c)?,
            )?),
            EngineCmd::Chebyshev {
                r,
                s,
                t,
                e1,
                e2,
                e3,
            } => Family::Chebyshev(ChebSpec::new(*r, *s, *t, (*e1, *e2, *e3))?),
            EngineCmd::Affine(a) => {
                let [a1, b1, a2, b2, c, d] = affine_coeffs(a)?;
                Family::Affine(AffineSpec::new(a1, b1, a2, b2, c, d)?.with_horizon(cfg.horizon))
            }
            EngineCmd::Decomposed {
                h,
                k1,
                k2,
                z1,
                z2,
                c,
                z3,
                k3,
            } => {
                let c = match (c, k3) {
                    (Some(c), _) => CSpec::Constant(parse_scalar(c)?),
                    (None, Some(k3)) => CSpec::Twisted {
                        z3: z3.unwrap_or(0),
                        k3: *k3,
                    },
                    (None, None) => {
                        return Err(CliError::Usage(
                            "decomposed needs --c or --k3 for the third polynomial".into(),
                        ))
                    }
                };
                Family::Decomposed(DecompSpec::new(parse_poly(h)?, *k1, *k2, *z1, *z2, c)?)
            }
            EngineCmd::Gallery(g) => {
                let entry = g.entry();
                entry.validate()?;
                Family::Gallery(entry)
            }
        })
    }
}
