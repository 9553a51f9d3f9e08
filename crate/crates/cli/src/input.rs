//! Reading input files, resolving the algebra they refer to, and hashing
//! them for the report's provenance.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use semibrick::algebra::AlgebraText;
use semibrick::rep::{parse_matrix, RepText};
use semibrick::{BoundQuiverAlgebra, Error, FieldSpec, Limits, Matrix, Representation, Scalar};
use sha2::{Digest, Sha256};
use std::sync::Arc;

use crate::report::InputFile;

pub struct SourceFile {
    pub path: PathBuf,
    pub text: String,
    pub role: String,
}

impl SourceFile {
    pub fn read(path: &Path, role: &str) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Ok(SourceFile {
            path: path.to_path_buf(),
            text,
            role: role.to_string(),
        })
    }

    pub fn provenance(&self) -> InputFile {
        InputFile {
            role: self.role.clone(),
            path: self.path.display().to_string(),
            sha256: format!("{:x}", Sha256::digest(self.text.as_bytes())),
        }
    }

    /// Prefixes parse errors with the file name.
    pub fn context<T>(&self, r: semibrick::Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => anyhow!("{}: {e}", self.path.display()),
            other => anyhow!("{}: {other}", self.path.display()),
        })
    }
}

pub struct ModuleFile {
    pub source: SourceFile,
    pub text: RepText,
}

/// Everything a command reads, parsed as far as possible without a field.
pub struct Inputs {
    pub algebra: SourceFile,
    pub algebra_text: AlgebraText,
    pub modules: Vec<ModuleFile>,
    pub maps: Option<SourceFile>,
    pub field: FieldSpec,
}

fn referenced_algebra(module: &ModuleFile) -> Option<PathBuf> {
    let line = module.text.algebra.as_ref()?;
    let dir = module.source.path.parent().unwrap_or(Path::new(""));
    Some(dir.join(line))
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (fs::canonicalize(a), fs::canonicalize(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

impl Inputs {
    pub fn load(
        algebra_flag: Option<&Path>,
        modules: &[(PathBuf, &str)],
        maps: Option<&Path>,
        field_flag: Option<FieldSpec>,
    ) -> Result<Self> {
        let mut files = Vec::with_capacity(modules.len());
        for (path, role) in modules {
            let source = SourceFile::read(path, role)?;
            let text = source.context(RepText::parse(&source.text))?;
            files.push(ModuleFile { source, text });
        }
        let algebra_path = match algebra_flag {
            Some(p) => p.to_path_buf(),
            None => match files.first() {
                Some(m) => referenced_algebra(m).ok_or_else(|| {
                    anyhow!("{}: no `algebra` line; pass --algebra", m.source.path.display())
                })?,
                None => bail!("--algebra is required for this command"),
            },
        };
        if algebra_flag.is_none() {
            for m in &files[1..] {
                if let Some(p) = referenced_algebra(m) {
                    if !same_file(&p, &algebra_path) {
                        bail!(
                            "{}: refers to {}, but {} is in use",
                            m.source.path.display(),
                            p.display(),
                            algebra_path.display()
                        );
                    }
                }
            }
        }
        let algebra = SourceFile::read(&algebra_path, "algebra")?;
        let algebra_text = algebra.context(AlgebraText::parse(&algebra.text))?;
        let field = field_flag.unwrap_or(algebra_text.field);
        let maps = maps.map(|p| SourceFile::read(p, "maps")).transpose()?;
        Ok(Inputs {
            algebra,
            algebra_text,
            modules: files,
            maps,
            field,
        })
    }

    /// Algebra first, then modules in argument order, then the maps file.
    pub fn provenance(&self) -> Vec<InputFile> {
        let mut out = vec![self.algebra.provenance()];
        out.extend(self.modules.iter().map(|m| m.source.provenance()));
        out.extend(self.maps.iter().map(SourceFile::provenance));
        out
    }

    pub fn build_algebra<S: Scalar>(&self, limits: &Limits) -> Result<Arc<BoundQuiverAlgebra<S>>> {
        self.algebra.context(self.algebra_text.build(limits))
    }

    pub fn build_modules<S: Scalar>(&self, algebra: &Arc<BoundQuiverAlgebra<S>>) -> Result<Vec<Representation<S>>> {
        self.modules
            .iter()
            .map(|m| m.source.context(m.text.build(algebra)))
            .collect()
    }
}

/// Per-vertex matrices of `alpha` and `beta` from a maps file with lines
/// `alpha <vertex>: [[..]]` and `beta <vertex>: [[..]]` (vertices 1-based).
/// Vertices without a line get the zero matrix.
pub fn parse_maps<S: Scalar>(
    file: &SourceFile,
    alpha_shapes: &[(usize, usize)],
    beta_shapes: &[(usize, usize)],
) -> Result<(Vec<Matrix<S>>, Vec<Matrix<S>>)> {
    let n = alpha_shapes.len();
    let mut alpha: Vec<Option<Matrix<S>>> = vec![None; n];
    let mut beta: Vec<Option<Matrix<S>>> = vec![None; n];
    let at = |line: usize, msg: String| anyhow!("{}: line {line}: {msg}", file.path.display());
    for (i, raw) in file.text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, lit) = line
            .split_once(':')
            .ok_or_else(|| at(line_no, "expected `alpha <vertex>: [[...]]`".into()))?;
        let mut words = head.split_whitespace();
        let (name, vertex) = (words.next().unwrap_or(""), words.next());
        let (slot, shapes) = match name {
            "alpha" => (&mut alpha, alpha_shapes),
            "beta" => (&mut beta, beta_shapes),
            other => return Err(at(line_no, format!("unknown map `{other}`; expected alpha or beta"))),
        };
        let v: usize = vertex
            .and_then(|v| v.parse().ok())
            .filter(|&v| (1..=n).contains(&v))
            .ok_or_else(|| at(line_no, format!("vertex must be between 1 and {n}")))?;
        if slot[v - 1].is_some() {
            return Err(at(line_no, format!("{name} at vertex {v} given twice")));
        }
        let (rows, cols) = shapes[v - 1];
        let m = parse_matrix::<S>(lit.trim(), rows, cols).map_err(|e| at(line_no, e))?;
        slot[v - 1] = Some(m);
    }
    let fill = |maps: Vec<Option<Matrix<S>>>, shapes: &[(usize, usize)]| -> Vec<Matrix<S>> {
        maps.into_iter()
            .zip(shapes)
            .map(|(m, &(r, c))| m.unwrap_or_else(|| Matrix::zeros(r, c)))
            .collect()
    };
    Ok((fill(alpha, alpha_shapes), fill(beta, beta_shapes)))
}
