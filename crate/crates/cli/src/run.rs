//! Dispatch from a parsed command line to the library, over the requested field.

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use semibrick::census::{
    ambient_dim, bbt_witness, brick_census, census_of_total, enumerate_reps, graph_from_table,
    greedy_orthogonal_family, standard_name, CensusClass, CensusResult,
};
use semibrick::geometry::{generic_param_estimate, geometry_report, zwara_verify, ZwaraCertificate, ZwaraShape};
use semibrick::homology::{minimal_presentation, projective_dimension, tau};
use semibrick::rep::{end_dim, extract_semibrick, hom_dim, hom_table, is_semibrick};
use semibrick::stability::{coray_theta, homogeneous_stability_witness, is_theta_stable};
use semibrick::{BoundQuiverAlgebra, FieldSpec, Fp, Limits, Scalar};

use crate::args::{Cli, Command, DimArg};
use crate::input::{parse_maps, Inputs};
use crate::report::*;

macro_rules! with_field {
    ($field:expr, $S:ident => $body:expr) => {
        match $field {
            FieldSpec::Rational => {
                type $S = semibrick::Q;
                $body
            }
            FieldSpec::Prime(2) => {
                type $S = Fp<2>;
                $body
            }
            FieldSpec::Prime(3) => {
                type $S = Fp<3>;
                $body
            }
            FieldSpec::Prime(5) => {
                type $S = Fp<5>;
                $body
            }
            FieldSpec::Prime(7) => {
                type $S = Fp<7>;
                $body
            }
            FieldSpec::Prime(11) => {
                type $S = Fp<11>;
                $body
            }
            FieldSpec::Prime(13) => {
                type $S = Fp<13>;
                $body
            }
            FieldSpec::Prime(17) => {
                type $S = Fp<17>;
                $body
            }
            FieldSpec::Prime(19) => {
                type $S = Fp<19>;
                $body
            }
            FieldSpec::Prime(23) => {
                type $S = Fp<23>;
                $body
            }
            FieldSpec::Prime(29) => {
                type $S = Fp<29>;
                $body
            }
            FieldSpec::Prime(31) => {
                type $S = Fp<31>;
                $body
            }
            FieldSpec::Prime(p) => Err(anyhow!("F_{p} is not built in; use a prime up to 31 or Q")),
        }
    };
}

fn module_args(command: &Command) -> Vec<(PathBuf, &'static str)> {
    match command {
        Command::Hom { from, to } => vec![(from.clone(), "from"), (to.clone(), "to")],
        Command::Brick(m) | Command::Tau(m) | Command::Theta(m) | Command::Pd(m) | Command::Geometry(m) => {
            vec![(m.get(), "module")]
        }
        Command::Stable { module, .. } => vec![(module.get(), "module")],
        Command::Semibrick { modules } | Command::Extract { modules } | Command::Coray { modules } => {
            modules.iter().map(|p| (p.clone(), "module")).collect()
        }
        Command::Zwara { n, m, z, .. } => vec![(n.clone(), "N"), (m.clone(), "M"), (z.clone(), "Z")],
        Command::Census { .. } | Command::Orthograph { .. } | Command::Bbt { .. } | Command::Cparam { .. } => {
            Vec::new()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let maps = match &cli.command {
        Command::Zwara { maps, .. } => Some(maps.as_path()),
        _ => None,
    };
    let inputs = Inputs::load(cli.opts.algebra.as_deref(), &module_args(&cli.command), maps, cli.opts.field)?;
    let limits = cli.opts.limits();
    let (result, verdict) = with_field!(inputs.field, S => execute::<S>(&cli.command, &inputs, &limits))?;
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: cli.command.name().to_string(),
        provenance: Provenance {
            inputs: inputs.provenance(),
            field: inputs.field,
            limits,
        },
        verdict,
        result,
    })
}

fn verdict(holds: Option<bool>, summary: impl Into<String>, property: &str) -> Verdict {
    Verdict {
        holds,
        summary: summary.into(),
        property: property.to_string(),
    }
}

fn names<S: Scalar>(classes: &[CensusClass<S>], cap: u64) -> Result<Vec<ClassJson>> {
    classes
        .iter()
        .map(|c| Ok(ClassJson::of(c, standard_name(&c.representative, cap)?)))
        .collect()
}

fn census_for<S: Scalar>(algebra: &Arc<BoundQuiverAlgebra<S>>, dim: &DimArg, cap: u64) -> Result<CensusResult<S>> {
    Ok(match dim {
        DimArg::Total(d) => census_of_total(algebra, *d, cap)?,
        DimArg::Vector(v) => enumerate_reps(algebra, v, cap)?,
    })
}

fn sub_table(table: &[Vec<usize>], keep: &[usize]) -> Vec<Vec<usize>> {
    keep.iter().map(|&i| keep.iter().map(|&j| table[i][j]).collect()).collect()
}

fn dims_vector(dim: &DimArg, rank: usize) -> Result<Vec<usize>> {
    match dim {
        DimArg::Vector(v) => Ok(v.clone()),
        DimArg::Total(d) if rank == 1 => Ok(vec![*d]),
        DimArg::Total(_) => bail!("--dim needs a dimension vector such as 1,1 for this command"),
    }
}

fn execute<S: Scalar>(command: &Command, inputs: &Inputs, limits: &Limits) -> Result<(Outcome, Verdict)> {
    let algebra = inputs.build_algebra::<S>(limits)?;
    let modules = inputs.build_modules(&algebra)?;
    let cap = limits.enumeration_cap;
    let first = || modules[0].clone();
    Ok(match command {
        Command::Hom { .. } => {
            let dim = hom_dim(&modules[0], &modules[1])?;
            (
                Outcome::Hom {
                    source_dims: modules[0].dims().to_vec(),
                    target_dims: modules[1].dims().to_vec(),
                    dim,
                },
                verdict(None, format!("dim Hom(X, Y) = {dim}"), "dimension of the space of module maps X -> Y"),
            )
        }
        Command::Brick(_) => {
            let e = end_dim(&first())?;
            let brick = e == 1;
            let summary = if brick { "brick".into() } else { format!("not a brick (dim End = {e})") };
            (
                Outcome::Brick { end_dim: e, brick },
                verdict(Some(brick), summary, "End(X) is the ground field"),
            )
        }
        Command::Semibrick { .. } => {
            let table = hom_table(&modules)?;
            let failure = is_semibrick(&modules)?.err();
            let summary = match &failure {
                None => format!("semibrick of size {}", modules.len()),
                Some(f) => format!("not a semibrick: {f}"),
            };
            (
                Outcome::Semibrick {
                    size: modules.len(),
                    hom_table: table,
                    failure: failure.clone(),
                },
                verdict(Some(failure.is_none()), summary, "pairwise Hom-orthogonal bricks"),
            )
        }
        Command::Extract { .. } => {
            let out = extract_semibrick(&modules, cap)?;
            let verified = out.certificate.verify()?;
            let bricks = out
                .extractions
                .iter()
                .map(|e| Extracted {
                    brick: ModuleJson::of(&e.brick),
                    witness: map_json(&e.witness),
                    inclusion: map_json(&e.inclusion),
                    surjection: map_json(&e.surjection),
                })
                .collect();
            let certified = verified
                && out
                    .extractions
                    .iter()
                    .all(|e| e.inclusion.is_injective() && e.surjection.is_surjective());
            let summary = if certified {
                format!("semibrick of size {} extracted", modules.len())
            } else {
                "extracted bricks failed re-verification".into()
            };
            (
                Outcome::Extract {
                    bricks,
                    hom_table: out.certificate.hom_table.clone(),
                    certificate_verified: certified,
                },
                verdict(
                    Some(certified),
                    summary,
                    "a Hom-orthogonal family yields a semibrick of the same size, each brick a submodule and a quotient of its module",
                ),
            )
        }
        Command::Tau(_) => {
            let t = tau(&first())?;
            let summary = if t.is_zero() {
                "tau X = 0".to_string()
            } else {
                format!("tau X has dimension vector {:?}", t.dims())
            };
            (
                Outcome::Tau { module: ModuleJson::of(&t) },
                verdict(None, summary, "Auslander-Reiten translate, the dual of the transpose"),
            )
        }
        Command::Theta(_) => {
            let p = minimal_presentation(&first())?;
            let theta = p.weight();
            (
                Outcome::Theta {
                    p0: p.p0_multiplicities().to_vec(),
                    p1: p.p1_multiplicities().to_vec(),
                    theta: theta.clone(),
                },
                verdict(None, format!("theta = {theta}"), "weight [P0] - [P1] of the minimal projective presentation"),
            )
        }
        Command::Pd(_) => {
            let pd = projective_dimension(&first(), limits.resolution_cap)?;
            (
                Outcome::Pd { projective_dimension: pd },
                verdict(None, pd_text(&pd), "length of the minimal projective resolution"),
            )
        }
        Command::Stable { theta, homogeneous, .. } => {
            let x = first();
            let (theta, v) = if *homogeneous {
                homogeneous_stability_witness(&x, cap)?
            } else {
                let theta = theta.clone().expect("clap requires --theta without --homogeneous");
                let v = is_theta_stable(&x, &theta, cap)?;
                (theta, v)
            };
            let property = if *homogeneous {
                "a brick with tau X = X is stable for the weight of its own presentation"
            } else {
                "King stability: theta(X) = 0 and theta < 0 on nonzero proper submodules"
            };
            let summary = if v.stable { "stable" } else { "not stable" };
            (
                Outcome::Stable {
                    theta,
                    homogeneous: *homogeneous,
                    verdict: v.clone(),
                },
                verdict(Some(v.stable), summary, property),
            )
        }
        Command::Coray { .. } => {
            let (theta, v) = coray_theta(&modules, cap)?;
            let summary = if v.stable { "last module is stable" } else { "last module is not stable" };
            (
                Outcome::Coray { theta, verdict: v.clone() },
                verdict(
                    Some(v.stable),
                    summary,
                    "the last module of a chain is stable for the weight of the sum of the chain",
                ),
            )
        }
        Command::Geometry(_) => {
            let r = geometry_report(&first(), limits.resolution_cap, cap)?;
            let consistent = r.dichotomy.as_ref().map_or(true, |d| d.consistent);
            let holds = r.tangent_bound_holds && r.rigid_orbit_open && consistent;
            let summary = format!(
                "orbit {}, tangent {}, Ext^1 {}: {}",
                r.orbit_dim,
                r.tangent_dim,
                r.ext1_self,
                if holds { "consistent" } else { "inconsistent" }
            );
            (
                Outcome::Geometry {
                    variety_bound_strict: r.variety_bound_strict(),
                    report: r,
                },
                verdict(
                    Some(holds),
                    summary,
                    "tangent minus orbit dimension is at most dim Ext^1(X, X); rigid orbits are open; a brick of pd <= 1 is tau-rigid iff tangent = orbit",
                ),
            )
        }
        Command::Zwara { shape, .. } => {
            let (n, m, z) = (modules[0].clone(), modules[1].clone(), modules[2].clone());
            let middle: Vec<usize> = m.dims().iter().zip(z.dims()).map(|(a, b)| a + b).collect();
            let (first_dims, last_dims) = match shape {
                ZwaraShape::SubFirst => (n.dims().to_vec(), z.dims().to_vec()),
                ZwaraShape::SubLast => (z.dims().to_vec(), n.dims().to_vec()),
            };
            let alpha_shapes: Vec<_> = middle.iter().zip(&first_dims).map(|(&r, &c)| (r, c)).collect();
            let beta_shapes: Vec<_> = last_dims.iter().zip(&middle).map(|(&r, &c)| (r, c)).collect();
            let file = inputs.maps.as_ref().expect("zwara reads a maps file");
            let (alpha, beta) = parse_maps::<S>(file, &alpha_shapes, &beta_shapes)?;
            let report = zwara_verify(&ZwaraCertificate {
                shape: *shape,
                n,
                m,
                z,
                alpha,
                beta,
            })?;
            let summary = if report.degenerates {
                "certificate verified: M degenerates to N".to_string()
            } else if !report.exact {
                "certificate rejected: the sequence is not exact".to_string()
            } else {
                "sequence is exact but N is isomorphic to M or the dimension vectors differ".to_string()
            };
            (
                Outcome::Zwara { shape: *shape, report: report.clone() },
                verdict(
                    Some(report.degenerates),
                    summary,
                    "an exact sequence with middle term M + Z puts N in the orbit closure of M",
                ),
            )
        }
        Command::Census { dim, bricks_only } => {
            let census = census_for(&algebra, dim, cap)?;
            let keep: Vec<usize> = (0..census.classes.len())
                .filter(|&i| !bricks_only || census.classes[i].brick)
                .collect();
            let kept: Vec<_> = keep.iter().map(|&i| census.classes[i].clone()).collect();
            let table = sub_table(&census.hom_table, &keep);
            let brick_idx: Vec<usize> = (0..kept.len()).filter(|&i| kept[i].brick).collect();
            let graph = graph_from_table(&sub_table(&table, &brick_idx))?;
            let max_clique = graph.max_clique.iter().map(|&k| brick_idx[k]).collect();
            let n_bricks = brick_idx.len();
            (
                Outcome::Census {
                    algebra: inputs.algebra.path.display().to_string(),
                    field: S::field(),
                    dim: dim.clone(),
                    classes: names(&kept, cap)?,
                    hom_table: table,
                    max_clique,
                },
                verdict(
                    None,
                    format!("{} classes, {n_bricks} bricks", kept.len()),
                    "isomorphism classes of the F_q-points of rep(A, d)",
                ),
            )
        }
        Command::Orthograph { dim } => {
            let census = match dim {
                DimArg::Total(d) => brick_census(&algebra, *d, cap)?,
                DimArg::Vector(v) => {
                    let c = enumerate_reps(&algebra, v, cap)?;
                    let keep: Vec<usize> = (0..c.classes.len()).filter(|&i| c.classes[i].brick).collect();
                    CensusResult {
                        field: c.field,
                        dim_vectors: c.dim_vectors.clone(),
                        hom_table: sub_table(&c.hom_table, &keep),
                        classes: keep.iter().map(|&i| c.classes[i].clone()).collect(),
                    }
                }
            };
            let graph = graph_from_table(&census.hom_table)?;
            let complete = graph.edges.len() * 2 == graph.vertices * graph.vertices.saturating_sub(1);
            let summary = format!(
                "{} bricks, {} edges{}, max clique {}",
                graph.vertices,
                graph.edges.len(),
                if complete && graph.vertices > 1 { " (complete)" } else { "" },
                graph.max_clique.len()
            );
            (
                Outcome::Orthograph {
                    algebra: inputs.algebra.path.display().to_string(),
                    dim: dim.clone(),
                    bricks: names(&census.classes, cap)?,
                    graph,
                },
                verdict(None, summary, "Hom-orthogonality between the bricks of one dimension"),
            )
        }
        Command::Bbt { dmax } => {
            let r = bbt_witness(&algebra, *dmax, cap)?;
            let summary = if r.brick_infinite_witnessed {
                format!(
                    "brick-infinite witnessed (semibrick size {} > rank {})",
                    r.max_semibrick.len(),
                    r.rank
                )
            } else {
                format!(
                    "no witness up to (d_max = {}, q = {})",
                    dmax,
                    S::order().map_or("infinite".into(), |q| q.to_string())
                )
            };
            (
                Outcome::Bbt {
                    algebra: inputs.algebra.path.display().to_string(),
                    rank: r.rank,
                    d_max: r.d_max,
                    indecomposables: names(&r.indecomposables, cap)?,
                    max_orthogonal: r.max_orthogonal.clone(),
                    bricks: r.bricks.clone(),
                    max_semibrick: r.max_semibrick.clone(),
                    rank_semibricks: r.rank_semibricks.clone(),
                    unique_rank_semibrick_is_simples: r.unique_rank_semibrick_is_simples,
                    bricks_per_dimension: r.bricks_per_dimension.clone(),
                    brick_infinite_witnessed: r.brick_infinite_witnessed,
                },
                verdict(
                    None,
                    summary,
                    "a Hom-orthogonal set larger than the rank witnesses brick-infiniteness; the only semibrick of rank size is the simples",
                ),
            )
        }
        Command::Cparam { dim, target } => {
            let dims = dims_vector(dim, algebra.rank())?;
            let estimate = generic_param_estimate(&algebra, &dims, cap)?;
            let greedy = match target {
                Some(t) => {
                    let g = greedy_orthogonal_family(&algebra, &dims, *t, cap)?;
                    Some(GreedyJson {
                        target: g.target,
                        reached: g.reached,
                        stratum_end_dim: g.stratum_end_dim,
                        family: g.family.iter().map(ModuleJson::of).collect(),
                    })
                }
                None => None,
            };
            let holds = greedy.as_ref().map(|g| g.reached);
            let mut summary = format!("generic number of parameters {estimate}");
            if let Some(g) = &greedy {
                summary.push_str(&format!(
                    "; greedy family {} {}",
                    if g.reached { "reached" } else { "stopped below" },
                    g.target
                ));
            }
            (
                Outcome::Cparam {
                    algebra: inputs.algebra.path.display().to_string(),
                    ambient_dim: ambient_dim(&algebra, &dims),
                    dims,
                    estimate,
                    greedy,
                },
                verdict(
                    holds,
                    summary,
                    "generic number of parameters, dim rep(A, d) minus the largest orbit dimension",
                ),
            )
        }
    })
}

/// 0 success, 1 negative verdict.
pub fn exit_code(report: &Report) -> i32 {
    match report.verdict.holds {
        Some(false) => 1,
        _ => 0,
    }
}

