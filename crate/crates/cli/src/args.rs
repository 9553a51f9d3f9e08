use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semibrick::geometry::ZwaraShape;
use semibrick::homology::Weight;
use semibrick::{FieldSpec, Limits};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "semibrick", version, about = "Bricks, semibricks, AR translates and stability for bound quiver algebras")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Field to compute over (a prime up to 31, or Q); overrides the `.bq` file.
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,
    /// Algebra file; overrides the `algebra` line of module files.
    #[arg(long, global = true)]
    pub algebra: Option<PathBuf>,
    /// Most candidates any exhaustive search may visit.
    #[arg(long, global = true, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
    /// Most steps of a projective resolution.
    #[arg(long, global = true, default_value_t = 32, value_parser = positive)]
    pub resolution_cap: usize,
    /// Longest path length tried when computing the algebra basis.
    #[arg(long, global = true, default_value_t = 64, value_parser = positive)]
    pub max_path_length: usize,
    /// Most paths the basis computation may hold.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = positive)]
    pub max_paths: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

impl GlobalOpts {
    pub fn limits(&self) -> Limits {
        Limits {
            enumeration_cap: self.cap,
            max_path_length: self.max_path_length,
            resolution_cap: self.resolution_cap,
            max_paths: self.max_paths,
        }
    }
}

/// A module file, given either positionally or with `--module`.
#[derive(Debug, Args)]
pub struct OneModule {
    #[arg(value_name = "MODULE", required_unless_present = "module")]
    pub path: Option<PathBuf>,
    #[arg(long, conflicts_with = "path")]
    pub module: Option<PathBuf>,
}

impl OneModule {
    pub fn get(&self) -> PathBuf {
        self.path.clone().or_else(|| self.module.clone()).expect("clap enforces one")
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// dim Hom(X, Y).
    Hom {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Whether End(X) is the ground field.
    Brick(OneModule),
    /// Whether the modules are pairwise Hom-orthogonal bricks.
    Semibrick {
        #[arg(required = true)]
        modules: Vec<PathBuf>,
    },
    /// A brick inside each module of a Hom-orthogonal family.
    Extract {
        #[arg(required = true)]
        modules: Vec<PathBuf>,
    },
    /// The Auslander-Reiten translate.
    Tau(OneModule),
    /// Minimal projective presentation and its weight.
    Theta(OneModule),
    /// Projective dimension.
    Pd(OneModule),
    /// King stability against a weight.
    Stable {
        /// Weight such as `1,-1`.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "homogeneous")]
        theta: Option<Weight>,
        /// Use the module's own presentation weight; requires a brick with tau X = X.
        #[arg(long, conflicts_with = "theta")]
        homogeneous: bool,
        #[command(flatten)]
        module: OneModule,
    },
    /// Weight of the sum of a chain of modules, tested on the last one.
    Coray {
        #[arg(required = true)]
        modules: Vec<PathBuf>,
    },
    /// Orbit and tangent dimensions in the representation space.
    Geometry(OneModule),
    /// Checks an exact sequence certifying that M degenerates to N.
    Zwara {
        #[arg(long)]
        shape: ZwaraShape,
        n: PathBuf,
        m: PathBuf,
        z: PathBuf,
        #[arg(long)]
        maps: PathBuf,
    },
    /// Isomorphism classes of representations over a finite field.
    Census {
        #[arg(long)]
        dim: DimArg,
        #[arg(long)]
        bricks_only: bool,
    },
    /// Hom-orthogonality graph on the bricks of a dimension.
    Orthograph {
        #[arg(long)]
        dim: DimArg,
    },
    /// Brick-finiteness evidence up to a total dimension.
    Bbt {
        #[arg(long)]
        dmax: usize,
    },
    /// Generic number of parameters, and optionally a greedy orthogonal family.
    Cparam {
        #[arg(long)]
        dim: DimArg,
        #[arg(long)]
        target: Option<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Hom { .. } => "hom",
            Command::Brick(_) => "brick",
            Command::Semibrick { .. } => "semibrick",
            Command::Extract { .. } => "extract",
            Command::Tau(_) => "tau",
            Command::Theta(_) => "theta",
            Command::Pd(_) => "pd",
            Command::Stable { .. } => "stable",
            Command::Coray { .. } => "coray",
            Command::Geometry(_) => "geometry",
            Command::Zwara { .. } => "zwara",
            Command::Census { .. } => "census",
            Command::Orthograph { .. } => "orthograph",
            Command::Bbt { .. } => "bbt",
            Command::Cparam { .. } => "cparam",
        }
    }
}

/// `--dim 2` (a total dimension) or `--dim 1,1` (a dimension vector).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DimArg {
    Total(usize),
    Vector(Vec<usize>),
}

impl FromStr for DimArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad dimension `{}`", t.trim()));
        if s.contains(',') {
            s.split(',').map(parse).collect::<Result<Vec<_>, _>>().map(DimArg::Vector)
        } else {
            parse(s).map(DimArg::Total)
        }
    }
}

impl fmt::Display for DimArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimArg::Total(d) => write!(f, "{d}"),
            DimArg::Vector(v) => {
                let parts: Vec<String> = v.iter().map(usize::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}
