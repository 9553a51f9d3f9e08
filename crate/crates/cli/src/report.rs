//! The structured report every subcommand produces, and its text rendering.

use std::fmt::Write as _;

use semibrick::census::{CensusClass, OrthogonalityGraph};
use semibrick::geometry::{GeometryReport, ZwaraReport, ZwaraShape};
use semibrick::homology::{ProjectiveDimension, Weight};
use semibrick::rep::{ModuleMap, SemibrickFailure};
use semibrick::stability::StabilityVerdict;
use semibrick::{FieldSpec, Limits, Matrix, Representation, Scalar};
use serde::{Deserialize, Serialize};

use crate::args::DimArg;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub provenance: Provenance,
    pub verdict: Verdict,
    pub result: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub inputs: Vec<InputFile>,
    pub field: FieldSpec,
    pub limits: Limits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputFile {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    /// `Some(false)` is a negative answer (exit code 1); `None` means the
    /// command only computes.
    pub holds: Option<bool>,
    pub summary: String,
    /// The mathematical property the command checked.
    pub property: String,
}

/// Matrix entries as strings: residues for `F_p`, `n` or `n/d` over Q.
pub type MatrixJson = Vec<Vec<String>>;

pub fn matrix_json<S: Scalar>(m: &Matrix<S>) -> MatrixJson {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m[(r, c)].to_string()).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowMatrix {
    pub arrow: String,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub dims: Vec<usize>,
    pub maps: Vec<ArrowMatrix>,
}

impl ModuleJson {
    pub fn of<S: Scalar>(x: &Representation<S>) -> Self {
        ModuleJson {
            dims: x.dims().to_vec(),
            maps: x
                .algebra()
                .quiver()
                .arrows()
                .iter()
                .zip(x.maps())
                .map(|(a, m)| ArrowMatrix {
                    arrow: a.name.clone(),
                    matrix: matrix_json(m),
                })
                .collect(),
        }
    }

    fn render(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(usize::to_string).collect();
        let maps: Vec<String> = self
            .maps
            .iter()
            .map(|am| format!("{} = {}", am.arrow, render_matrix(&am.matrix)))
            .collect();
        if maps.is_empty() {
            format!("dims ({})", dims.join(","))
        } else {
            format!("dims ({}); {}", dims.join(","), maps.join(", "))
        }
    }
}

fn render_matrix(m: &MatrixJson) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.join(","))).collect();
    format!("[{}]", rows.join(","))
}

/// One matrix per vertex.
pub fn map_json<S: Scalar>(f: &ModuleMap<S>) -> Vec<MatrixJson> {
    f.components().iter().map(matrix_json).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    /// `S_i`, `P_i` or `I_i` when the class is one of these.
    pub name: Option<String>,
    pub module: ModuleJson,
    pub points: usize,
    pub end_dim: usize,
    pub indecomposable: bool,
    pub brick: bool,
}

impl ClassJson {
    pub fn of<S: Scalar>(c: &CensusClass<S>, name: Option<String>) -> Self {
        ClassJson {
            name,
            module: ModuleJson::of(&c.representative),
            points: c.points,
            end_dim: c.end_dim,
            indecomposable: c.indecomposable,
            brick: c.brick,
        }
    }

    fn label(&self, index: usize) -> String {
        self.name.clone().unwrap_or_else(|| format!("#{index}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extracted {
    pub brick: ModuleJson,
    pub witness: Vec<MatrixJson>,
    pub inclusion: Vec<MatrixJson>,
    pub surjection: Vec<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyJson {
    pub target: usize,
    pub reached: bool,
    pub stratum_end_dim: usize,
    pub family: Vec<ModuleJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Hom {
        source_dims: Vec<usize>,
        target_dims: Vec<usize>,
        dim: usize,
    },
    Brick {
        end_dim: usize,
        brick: bool,
    },
    Semibrick {
        size: usize,
        hom_table: Vec<Vec<usize>>,
        failure: Option<SemibrickFailure>,
    },
    Extract {
        bricks: Vec<Extracted>,
        hom_table: Vec<Vec<usize>>,
        certificate_verified: bool,
    },
    Tau {
        module: ModuleJson,
    },
    Theta {
        p0: Vec<usize>,
        p1: Vec<usize>,
        theta: Weight,
    },
    Pd {
        projective_dimension: ProjectiveDimension,
    },
    Stable {
        theta: Weight,
        homogeneous: bool,
        verdict: StabilityVerdict,
    },
    Coray {
        theta: Weight,
        verdict: StabilityVerdict,
    },
    Geometry {
        report: GeometryReport,
        variety_bound_strict: Option<bool>,
    },
    Zwara {
        shape: ZwaraShape,
        report: ZwaraReport,
    },
    Census {
        algebra: String,
        field: FieldSpec,
        dim: DimArg,
        classes: Vec<ClassJson>,
        hom_table: Vec<Vec<usize>>,
        /// Largest Hom-orthogonal set of brick classes (indices into `classes`).
        max_clique: Vec<usize>,
    },
    Orthograph {
        algebra: String,
        dim: DimArg,
        bricks: Vec<ClassJson>,
        graph: OrthogonalityGraph,
    },
    Bbt {
        algebra: String,
        rank: usize,
        d_max: usize,
        indecomposables: Vec<ClassJson>,
        max_orthogonal: Vec<usize>,
        bricks: Vec<usize>,
        max_semibrick: Vec<usize>,
        rank_semibricks: Vec<Vec<usize>>,
        unique_rank_semibrick_is_simples: bool,
        bricks_per_dimension: Vec<(usize, usize)>,
        brick_infinite_witnessed: bool,
    },
    Cparam {
        algebra: String,
        dims: Vec<usize>,
        ambient_dim: usize,
        estimate: usize,
        greedy: Option<GreedyJson>,
    },
}

fn table_lines(out: &mut String, table: &[Vec<usize>]) {
    for row in table {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
}

pub fn pd_text(pd: &ProjectiveDimension) -> String {
    match pd {
        ProjectiveDimension::Exactly(d) => format!("pd X = {d}"),
        ProjectiveDimension::AtLeast(d) => format!("pd X >= {d} (resolution cap reached)"),
    }
}

fn verdict_line(v: &StabilityVerdict) -> String {
    match (&v.violating, v.stable) {
        (_, true) => "stable".into(),
        (Some(d), false) => {
            let parts: Vec<String> = d.iter().map(usize::to_string).collect();
            format!("not stable: submodule of dimension ({}) has theta >= 0", parts.join(","))
        }
        (None, false) => format!("not stable: theta(dim X) = {} is not 0", v.theta_of_module),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "semibrick {} over {}", self.command, self.provenance.field);
        for input in &self.provenance.inputs {
            let _ = writeln!(out, "{}: {}", input.role, input.path);
        }
        self.result.render(&mut out);
        let _ = writeln!(out, "property checked: {}", self.verdict.property);
        let _ = writeln!(out, "verdict: {}", self.verdict.summary);
        out
    }
}

impl Outcome {
    fn render(&self, out: &mut String) {
        match self {
            Outcome::Hom { dim, .. } => {
                let _ = writeln!(out, "dim Hom(X, Y) = {dim}");
            }
            Outcome::Brick { end_dim, .. } => {
                let _ = writeln!(out, "dim End(X) = {end_dim}");
            }
            Outcome::Semibrick { size, hom_table, failure } => {
                let _ = writeln!(out, "modules: {size}");
                let _ = writeln!(out, "Hom dimensions:");
                table_lines(out, hom_table);
                if let Some(f) = failure {
                    let _ = writeln!(out, "failure: {f}");
                }
            }
            Outcome::Extract { bricks, hom_table, .. } => {
                for (i, b) in bricks.iter().enumerate() {
                    let _ = writeln!(out, "B_{} = {}", i + 1, b.brick.render());
                }
                let _ = writeln!(out, "Hom dimensions between the bricks:");
                table_lines(out, hom_table);
            }
            Outcome::Tau { module } => {
                let _ = writeln!(out, "tau X: {}", module.render());
            }
            Outcome::Theta { p0, p1, theta } => {
                let _ = writeln!(out, "P0 multiplicities: {p0:?}");
                let _ = writeln!(out, "P1 multiplicities: {p1:?}");
                let _ = writeln!(out, "theta = {theta}");
            }
            Outcome::Pd { projective_dimension } => {
                let _ = writeln!(out, "{}", pd_text(projective_dimension));
            }
            Outcome::Stable { theta, verdict, .. } | Outcome::Coray { theta, verdict } => {
                let _ = writeln!(out, "theta = {theta}");
                let _ = writeln!(out, "theta(dim X) = {}", verdict.theta_of_module);
                let _ = writeln!(out, "{}", verdict_line(verdict));
            }
            Outcome::Geometry { report: r, variety_bound_strict } => {
                let _ = writeln!(out, "dim End = {}", r.end_dim);
                let _ = writeln!(out, "orbit dimension = {}", r.orbit_dim);
                let _ = writeln!(out, "tangent dimension = {}", r.tangent_dim);
                let _ = writeln!(out, "dim Ext^1(X, X) = {}", r.ext1_self);
                if let Some(a) = r.ambient_dim {
                    let _ = writeln!(out, "dim rep(A, d) = {a}");
                }
                let _ = writeln!(out, "{}", pd_text(&r.projective_dimension));
                if let Some(t) = r.variety_tangent_dim {
                    let _ = writeln!(out, "reduced variety tangent dimension = {t}");
                }
                if let Some(s) = variety_bound_strict {
                    let _ = writeln!(out, "strict at the variety level: {s}");
                }
                if let Some(d) = &r.dichotomy {
                    let _ = writeln!(
                        out,
                        "tau-rigid: {}; tangent = orbit: {}",
                        d.tau_rigid, d.tangent_equals_orbit
                    );
                    if d.infinite_brick_family {
                        let _ = writeln!(out, "bricks of this dimension vector form an infinite family");
                    }
                }
            }
            Outcome::Zwara { report, .. } => {
                let _ = writeln!(out, "exact: {}", report.exact);
                for f in &report.failures {
                    let _ = writeln!(out, "  {f}");
                }
                let _ = writeln!(out, "dim End N = {}, dim End M = {}", report.end_dim_n, report.end_dim_m);
            }
            Outcome::Census { classes, hom_table, max_clique, .. } => {
                let _ = writeln!(out, "classes: {}", classes.len());
                for (i, c) in classes.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  {} {}: points {}, dim End {}{}{}",
                        c.label(i),
                        c.module.render(),
                        c.points,
                        c.end_dim,
                        if c.indecomposable { ", indecomposable" } else { "" },
                        if c.brick { ", brick" } else { "" }
                    );
                }
                let _ = writeln!(out, "Hom dimensions:");
                table_lines(out, hom_table);
                let names: Vec<String> = max_clique.iter().map(|&i| classes[i].label(i)).collect();
                let _ = writeln!(out, "largest Hom-orthogonal set of bricks: {}", names.join(", "));
            }
            Outcome::Orthograph { bricks, graph, .. } => {
                let _ = writeln!(out, "bricks: {}", bricks.len());
                for (i, c) in bricks.iter().enumerate() {
                    let _ = writeln!(out, "  {} {}", c.label(i), c.module.render());
                }
                let edges: Vec<String> = graph
                    .edges
                    .iter()
                    .map(|&(i, j)| format!("{}-{}", bricks[i].label(i), bricks[j].label(j)))
                    .collect();
                let _ = writeln!(out, "edges: {}", edges.join(", "));
                let names: Vec<String> = graph.max_clique.iter().map(|&i| bricks[i].label(i)).collect();
                let _ = writeln!(out, "max clique ({}): {}", names.len(), names.join(", "));
            }
            Outcome::Bbt {
                rank,
                indecomposables,
                max_orthogonal,
                rank_semibricks,
                bricks_per_dimension,
                ..
            } => {
                let _ = writeln!(out, "indecomposables: {}", indecomposables.len());
                for (d, n) in bricks_per_dimension {
                    let _ = writeln!(out, "bricks of dimension {d}: {n}");
                }
                let mut names: Vec<String> = max_orthogonal.iter().map(|&i| indecomposables[i].label(i)).collect();
                names.sort();
                let _ = writeln!(out, "largest Hom-orthogonal set ({}): {}", names.len(), names.join(", "));
                let sets: Vec<String> = rank_semibricks
                    .iter()
                    .map(|s| {
                        let mut labels: Vec<String> = s.iter().map(|&i| indecomposables[i].label(i)).collect();
                        labels.sort();
                        labels.join(", ")
                    })
                    .collect();
                match sets.as_slice() {
                    [only] => {
                        let _ = writeln!(out, "unique size-{rank} semibrick: {only}");
                    }
                    _ => {
                        let _ = writeln!(out, "size-{rank} semibricks: {}", sets.len());
                        for s in &sets {
                            let _ = writeln!(out, "  {s}");
                        }
                    }
                }
            }
            Outcome::Cparam { ambient_dim, estimate, greedy, .. } => {
                let _ = writeln!(out, "dim rep(A, d) = {ambient_dim}");
                let _ = writeln!(out, "generic number of parameters = {estimate}");
                if let Some(g) = greedy {
                    let _ = writeln!(
                        out,
                        "greedy Hom-orthogonal family: {} of {} (dim End = {} stratum)",
                        g.family.len(),
                        g.target,
                        g.stratum_end_dim
                    );
                    for m in &g.family {
                        let _ = writeln!(out, "  {}", m.render());
                    }
                }
            }
        }
    }
}

/// Emitted on stdout in JSON mode when a command fails (exit code 2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub schema_version: u32,
    pub command: String,
    pub error: String,
}
