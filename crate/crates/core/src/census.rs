//! Finite-field censuses: every point of `rep(A, d)`, sorted into
//! isomorphism classes, and the orthogonality searches built on them.
//!
//! Points are enumerated in lexicographic order of their flattened arrow
//! entries (arrow by arrow, row-major), so the first point met in a class is
//! its least element and serves as the canonical representative.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{injective, projective, simple, BoundQuiverAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{
    end_dim, filter_indices, hom_dim, hom_table, is_indecomposable, iso_test, space_size, vector_at,
    Representation,
};
use crate::scalar::Scalar;

/// Number of coordinates of `rep(A, d)` before imposing relations.
pub fn ambient_dim<S: Scalar>(algebra: &BoundQuiverAlgebra<S>, dims: &[usize]) -> usize {
    algebra
        .quiver()
        .arrows()
        .iter()
        .map(|a| dims[a.source] * dims[a.target])
        .sum()
}

fn point_from_coordinates<S: Scalar>(
    algebra: &Arc<BoundQuiverAlgebra<S>>,
    dims: &[usize],
    coords: &[S],
) -> Result<Representation<S>> {
    let mut maps = Vec::with_capacity(algebra.quiver().arrows().len());
    let mut offset = 0;
    for a in algebra.quiver().arrows() {
        let (r, c) = (dims[a.target], dims[a.source]);
        maps.push(Matrix::from_vec(r, c, coords[offset..offset + r * c].to_vec()));
        offset += r * c;
    }
    Representation::new(algebra.clone(), dims.to_vec(), maps)
}

/// All `F_q`-points of `rep(A, d)`, in enumeration order.
pub fn rep_points<S: Scalar>(
    algebra: &Arc<BoundQuiverAlgebra<S>>,
    dims: &[usize],
    cap: u64,
) -> Result<Vec<Representation<S>>> {
    if dims.len() != algebra.rank() {
        return Err(Error::DimensionMismatch(format!(
            "dimension vector has {} entries, the algebra has {} vertices",
            dims.len(),
            algebra.rank()
        )));
    }
    let n = ambient_dim(algebra, dims);
    let total = space_size::<S>("point enumeration: q^(ambient dimension)", n, cap)?;
    let valid = filter_indices(total, |i| {
        point_from_coordinates(algebra, dims, &vector_at(i, n)).is_ok()
    });
    Ok(valid
        .into_iter()
        .map(|i| point_from_coordinates(algebra, dims, &vector_at(i, n)).expect("filtered"))
        .collect())
}

/// Dimension vectors with the given total, in lexicographic order.
pub fn dim_vectors_of_total(n: usize, total: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for d in 0..=left {
            cur.push(d);
            go(n, left - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Isomorphism invariants used to avoid pointless isomorphism tests.
fn fingerprint<S: Scalar>(x: &Representation<S>) -> Result<Vec<usize>> {
    let algebra = x.algebra();
    let mut out = vec![end_dim(x)?];
    for i in 0..algebra.rank() {
        let s = simple(algebra, i);
        out.push(hom_dim(&s, x)?);
        out.push(hom_dim(x, &s)?);
        out.push(hom_dim(x, &projective(algebra, i))?);
        out.push(hom_dim(&injective(algebra, i), x)?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CensusClass<S: Scalar> {
    /// Least point of the class in enumeration order.
    pub representative: Representation<S>,
    /// Number of enumerated points in the class (the orbit size).
    pub points: usize,
    pub end_dim: usize,
    pub indecomposable: bool,
    pub brick: bool,
}

#[derive(Clone, Debug)]
pub struct CensusResult<S: Scalar> {
    pub field: crate::scalar::FieldSpec,
    pub dim_vectors: Vec<Vec<usize>>,
    pub classes: Vec<CensusClass<S>>,
    /// `dim Hom(X_i, X_j)` between class representatives.
    pub hom_table: Vec<Vec<usize>>,
}

impl<S: Scalar> CensusResult<S> {
    pub fn representatives(&self) -> Vec<Representation<S>> {
        self.classes.iter().map(|c| c.representative.clone()).collect()
    }

    pub fn bricks(&self) -> Vec<Representation<S>> {
        self.classes
            .iter()
            .filter(|c| c.brick)
            .map(|c| c.representative.clone())
            .collect()
    }

    fn restrict(self, keep: impl Fn(&CensusClass<S>) -> bool) -> Result<Self> {
        let classes: Vec<_> = self.classes.into_iter().filter(|c| keep(c)).collect();
        let reps: Vec<_> = classes.iter().map(|c| c.representative.clone()).collect();
        Ok(CensusResult {
            field: self.field,
            dim_vectors: self.dim_vectors,
            hom_table: hom_table(&reps)?,
            classes,
        })
    }
}

fn classify<S: Scalar>(points: Vec<Representation<S>>, cap: u64) -> Result<Vec<CensusClass<S>>> {
    let prints = points
        .par_iter()
        .map(fingerprint)
        .collect::<Result<Vec<_>>>()?;
    let mut classes: Vec<CensusClass<S>> = Vec::new();
    let mut by_print: BTreeMap<&Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (x, print) in points.iter().zip(&prints) {
        let candidates = by_print.entry(print).or_default();
        let mut found = None;
        for &c in candidates.iter() {
            if iso_test(&classes[c].representative, x, cap)?.is_some() {
                found = Some(c);
                break;
            }
        }
        match found {
            Some(c) => classes[c].points += 1,
            None => {
                candidates.push(classes.len());
                classes.push(CensusClass {
                    representative: x.clone(),
                    points: 1,
                    end_dim: print[0],
                    indecomposable: false,
                    brick: print[0] == 1,
                });
            }
        }
    }
    let flags = classes
        .par_iter()
        .map(|c| is_indecomposable(&c.representative, cap))
        .collect::<Result<Vec<_>>>()?;
    for (c, f) in classes.iter_mut().zip(flags) {
        c.indecomposable = f;
    }
    Ok(classes)
}

/// Isomorphism classes of `rep(A, d)(F_q)` for one dimension vector.
pub fn enumerate_reps<S: Scalar>(
    algebra: &Arc<BoundQuiverAlgebra<S>>,
    dims: &[usize],
    cap: u64,
) -> Result<CensusResult<S>> {
    let classes = classify(rep_points(algebra, dims, cap)?, cap)?;
    let reps: Vec<_> = classes.iter().map(|c| c.representative.clone()).collect();
    Ok(CensusResult {
        field: S::field(),
        dim_vectors: vec![dims.to_vec()],
        hom_table: hom_table(&reps)?,
        classes,
    })
}

/// Isomorphism classes over every dimension vector of total dimension `d`.
pub fn census_of_total<S: Scalar>(
    algebra: &Arc<BoundQuiverAlgebra<S>>,
    d: usize,
    cap: u64,
) -> Result<CensusResult<S>> {
    let dim_vectors = dim_vectors_of_total(algebra.rank(), d);
    let mut classes = Vec::new();
    for dims in &dim_vectors {
        classes.extend(classify(rep_points(algebra, dims, cap)?, cap)?);
    }
    let reps: Vec<_> = classes.iter().map(|c| c.representative.clone()).collect();
    Ok(CensusResult {
        field: S::field(),
        dim_vectors,
        hom_table: hom_table(&reps)?,
        classes,
    })
}

/// The bricks of total dimension `d`: `brick(A, d)` over `F_q`.
pub fn brick_census<S: Scalar>(
    algebra: &Arc<BoundQuiverAlgebra<S>>,
    d: usize,
    cap: u64,
) -> Result<CensusResult<S>> {
    census_of_total(algebra, d, cap)?.restrict(|c| c.brick)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalityGraph {
    pub vertices: usize,
    /// `(i, j)` with `i < j` and `Hom(X_i, X_j) = Hom(X_j, X_i) = 0`.
    pub edges: Vec<(usize, usize)>,
    /// Every maximal clique, each sorted, in lexicographic order.
    pub maximal_cliques: Vec<Vec<usize>>,
    /// The first clique of largest size.
    pub max_clique: Vec<usize>,
}

/// Graph on the given modules with an edge for each Hom-orthogonal pair.
pub fn orthogonality_graph<S: Scalar>(modules: &[Representation<S>]) -> Result<OrthogonalityGraph> {
    let table = hom_table(modules)?;
    graph_from_table(&table)
}

pub fn graph_from_table(table: &[Vec<usize>]) -> Result<OrthogonalityGraph> {
    let n = table.len();
    if n > 64 {
        return Err(Error::TooManyVertices(n));
    }
    let mut adj = vec![0u64; n];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if table[i][j] == 0 && table[j][i] == 0 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
                edges.push((i, j));
            }
        }
    }
    let mut cliques = Vec::new();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    bron_kerbosch(&adj, 0, all, 0, &mut cliques);
    let mut maximal_cliques: Vec<Vec<usize>> = cliques.into_iter().map(bits).collect();
    maximal_cliques.sort();
    let max_clique = maximal_cliques
        .iter()
        .fold(None::<&Vec<usize>>, |best, c| match best {
            Some(b) if b.len() >= c.len() => Some(b),
            _ => Some(c),
        })
        .cloned()
        .unwrap_or_default();
    Ok(OrthogonalityGraph {
        vertices: n,
        edges,
        maximal_cliques,
        max_clique,
    })
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(i);
        m &= m - 1;
    }
    out
}

/// Bron-Kerbosch with pivoting on bitsets.
fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        if r != 0 {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u64 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
        candidates &= !bit;
    }
}

/// All cliques of exactly `k` vertices, each sorted, in lexicographic order.
pub fn cliques_of_size(graph: &OrthogonalityGraph, k: usize) -> Vec<Vec<usize>> {
    let n = graph.vertices;
    let mut adj = vec![0u64; n];
    for &(i, j) in &graph.edges {
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    fn go(adj: &[u64], start: usize, cand: u64, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..adj.len() {
            if cand & (1 << v) != 0 {
                cur.push(v);
                go(adj, v + 1, cand & adj[v], k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    go(&adj, 0, all, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct GreedyFamily<S: Scalar> {
    pub family: Vec<Representation<S>>,
    pub target: usize,
    pub reached: bool,
    /// `dim End` shared by every point the search ran over.
    pub stratum_end_dim: usize,
}

/// Greedy Hom-orthogonal family among the points of `rep(A, d)` whose
/// endomorphism ring has the least dimension (the open stratum of largest
/// orbits), taken in enumeration order.
pub fn greedy_orthogonal_family<S: Scalar>(
    algebra: &Arc<BoundQuiverAlgebra<S>>,
    dims: &[usize],
    target: usize,
    cap: u64,
) -> Result<GreedyFamily<S>> {
    let points = rep_points(algebra, dims, cap)?;
    let ends = points.par_iter().map(end_dim).collect::<Result<Vec<_>>>()?;
    let min_end = ends.iter().copied().min().unwrap_or(0);
    let mut family: Vec<Representation<S>> = Vec::new();
    for (x, &e) in points.iter().zip(&ends) {
        if family.len() >= target {
            break;
        }
        if e != min_end || x.is_zero() {
            continue;
        }
        let mut orthogonal = true;
        for y in &family {
            if hom_dim(x, y)? != 0 || hom_dim(y, x)? != 0 {
                orthogonal = false;
                break;
            }
        }
        if orthogonal {
            family.push(x.clone());
        }
    }
    Ok(GreedyFamily {
        reached: family.len() >= target,
        family,
        target,
        stratum_end_dim: min_end,
    })
}

/// Evidence about brick-finiteness from every dimension up to `d_max`.
#[derive(Clone, Debug)]
pub struct BbtReport<S: Scalar> {
    pub rank: usize,
    pub d_max: usize,
    pub field: crate::scalar::FieldSpec,
    /// Indecomposable classes of every total dimension `1..=d_max`.
    pub indecomposables: Vec<CensusClass<S>>,
    /// Indices into `indecomposables` of a largest Hom-orthogonal set.
    pub max_orthogonal: Vec<usize>,
    /// Indices into `indecomposables` of the bricks.
    pub bricks: Vec<usize>,
    /// Indices into `indecomposables` of a largest semibrick.
    pub max_semibrick: Vec<usize>,
    /// Every semibrick with exactly `rank` members.
    pub rank_semibricks: Vec<Vec<usize>>,
    /// There is exactly one semibrick of size `rank` and it is the simples.
    pub unique_rank_semibrick_is_simples: bool,
    /// `(d, number of bricks of total dimension d)`.
    pub bricks_per_dimension: Vec<(usize, usize)>,
    /// A Hom-orthogonal set larger than the rank was found.
    pub brick_infinite_witnessed: bool,
}

pub fn bbt_witness<S: Scalar>(
    algebra: &Arc<BoundQuiverAlgebra<S>>,
    d_max: usize,
    cap: u64,
) -> Result<BbtReport<S>> {
    let n = algebra.rank();
    let mut indecomposables = Vec::new();
    let mut bricks_per_dimension = Vec::new();
    for d in 1..=d_max {
        let census = census_of_total(algebra, d, cap)?;
        bricks_per_dimension.push((d, census.classes.iter().filter(|c| c.brick).count()));
        indecomposables.extend(census.classes.into_iter().filter(|c| c.indecomposable));
    }
    let reps: Vec<_> = indecomposables.iter().map(|c| c.representative.clone()).collect();
    let table = hom_table(&reps)?;
    let graph = graph_from_table(&table)?;
    let bricks: Vec<usize> = (0..indecomposables.len())
        .filter(|&i| indecomposables[i].brick)
        .collect();
    let brick_table: Vec<Vec<usize>> = bricks
        .iter()
        .map(|&i| bricks.iter().map(|&j| table[i][j]).collect())
        .collect();
    let brick_graph = graph_from_table(&brick_table)?;
    let max_semibrick = brick_graph.max_clique.iter().map(|&k| bricks[k]).collect();
    let rank_semibricks: Vec<Vec<usize>> = cliques_of_size(&brick_graph, n)
        .into_iter()
        .map(|c| c.into_iter().map(|k| bricks[k]).collect())
        .collect();
    let unique_rank_semibrick_is_simples = rank_semibricks.len() == 1
        && rank_semibricks[0]
            .iter()
            .all(|&i| indecomposables[i].representative.total_dim() == 1);
    Ok(BbtReport {
        rank: n,
        d_max,
        field: S::field(),
        brick_infinite_witnessed: graph.max_clique.len() > n,
        max_orthogonal: graph.max_clique,
        indecomposables,
        bricks,
        max_semibrick,
        rank_semibricks,
        unique_rank_semibrick_is_simples,
        bricks_per_dimension,
    })
}

/// `S_i`, `P_i` or `I_i` when `X` is isomorphic to one of them.
pub fn standard_name<S: Scalar>(x: &Representation<S>, cap: u64) -> Result<Option<String>> {
    let algebra = x.algebra();
    for i in 0..algebra.rank() {
        for (prefix, m) in [
            ("S", simple(algebra, i)),
            ("P", projective(algebra, i)),
            ("I", injective(algebra, i)),
        ] {
            if m.dims() == x.dims() && iso_test(&m, x, cap)?.is_some() {
                return Ok(Some(format!("{prefix}_{}", i + 1)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{self, kronecker_point};
    use crate::rep::{is_isomorphic, is_semibrick};
    use crate::{F2, F3, F5};

    const CAP: u64 = 1 << 20;

    #[test]
    fn dim_vector_compositions() {
        assert_eq!(
            dim_vectors_of_total(2, 2),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(dim_vectors_of_total(3, 4).len(), 15);
        assert_eq!(dim_vectors_of_total(1, 3), vec![vec![3]]);
    }

    #[test]
    fn a2_census() {
        let a2 = fixtures::a2::<F2>();
        let c = enumerate_reps(&a2, &[1, 1], CAP).unwrap();
        assert_eq!(c.classes.len(), 2);
        assert!(c.classes[0].representative.map(0).is_zero());
        assert!(!c.classes[0].indecomposable);
        assert!(c.classes[1].brick);
    }

    #[test]
    fn kronecker_census() {
        let k = fixtures::kronecker::<F2>();
        let c = enumerate_reps(&k, &[1, 1], CAP).unwrap();
        assert_eq!(c.classes.len(), 4);
        assert_eq!(c.classes.iter().filter(|c| c.brick).count(), 3);
    }

    #[test]
    fn local_census() {
        let loc = fixtures::local_dual_numbers::<F3>();
        assert_eq!(enumerate_reps(&loc, &[1], CAP).unwrap().classes.len(), 1);
        // Dimension 2: S + S and the regular module.
        assert_eq!(enumerate_reps(&loc, &[2], CAP).unwrap().classes.len(), 2);
    }

    #[test]
    fn orbit_sizes_add_up() {
        let k = fixtures::kronecker::<F2>();
        let c = enumerate_reps(&k, &[1, 2], CAP).unwrap();
        let total: usize = c.classes.iter().map(|c| c.points).sum();
        assert_eq!(total, 16);
    }

    #[test]
    fn brick_censuses() {
        let a2 = fixtures::a2::<F2>();
        let mut bricks = Vec::new();
        for d in 1..=2 {
            bricks.extend(brick_census(&a2, d, CAP).unwrap().bricks());
        }
        assert_eq!(bricks.len(), 3);

        let k = fixtures::kronecker::<F2>();
        let c = brick_census(&k, 2, CAP).unwrap();
        assert_eq!(c.classes.len(), 3);
        let reps = c.bricks();
        let expected = [
            kronecker_point(&k, 0, 1),
            kronecker_point(&k, 1, 0),
            kronecker_point(&k, 1, 1),
        ];
        for (r, e) in reps.iter().zip(&expected) {
            assert!(is_isomorphic(r, e, CAP).unwrap());
        }

        let k5 = fixtures::kronecker::<F5>();
        assert_eq!(brick_census(&k5, 2, CAP).unwrap().classes.len(), 6);
    }

    #[test]
    fn clique_search() {
        let table = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let g = graph_from_table(&table).unwrap();
        assert_eq!(g.edges.len(), 3);
        assert_eq!(g.max_clique, vec![0, 1, 2]);
        assert_eq!(g.maximal_cliques, vec![vec![0, 1, 2]]);

        let table = vec![vec![1, 0, 1], vec![0, 1, 1], vec![0, 1, 1]];
        let g = graph_from_table(&table).unwrap();
        assert_eq!(g.edges, vec![(0, 1)]);
        assert_eq!(g.maximal_cliques, vec![vec![0, 1], vec![2]]);
        assert_eq!(cliques_of_size(&g, 1).len(), 3);

        let g = graph_from_table(&[vec![1]]).unwrap();
        assert_eq!(g.max_clique, vec![0]);
        assert!(matches!(
            graph_from_table(&vec![vec![0; 65]; 65]),
            Err(Error::TooManyVertices(65))
        ));
    }

    #[test]
    fn a2_brick_graph() {
        let a2 = fixtures::a2::<F2>();
        let mut bricks = brick_census(&a2, 1, CAP).unwrap().bricks();
        bricks.extend(brick_census(&a2, 2, CAP).unwrap().bricks());
        let g = orthogonality_graph(&bricks).unwrap();
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.max_clique.len(), 2);
        let members: Vec<_> = g.max_clique.iter().map(|&i| bricks[i].clone()).collect();
        assert!(is_semibrick(&members).unwrap().is_ok());
    }

    #[test]
    fn greedy_families() {
        let k = fixtures::kronecker::<F2>();
        let g = greedy_orthogonal_family(&k, &[1, 1], 3, CAP).unwrap();
        assert!(g.reached);
        let k5 = fixtures::kronecker::<F5>();
        let g = greedy_orthogonal_family(&k5, &[1, 1], 6, CAP).unwrap();
        assert!(g.reached);
        assert!(is_semibrick(&g.family).unwrap().is_ok());
        let a2 = fixtures::a2::<F2>();
        let g = greedy_orthogonal_family(&a2, &[1, 1], 2, CAP).unwrap();
        assert!(!g.reached);
        assert_eq!(g.family.len(), 1);
    }

    #[test]
    fn bbt_reports() {
        let k = fixtures::kronecker::<F2>();
        let r = bbt_witness(&k, 2, CAP).unwrap();
        assert!(r.brick_infinite_witnessed);
        assert_eq!(r.max_semibrick.len(), 3);

        let a2 = fixtures::a2::<F2>();
        let r = bbt_witness(&a2, 4, CAP).unwrap();
        assert!(!r.brick_infinite_witnessed);
        assert_eq!(r.max_orthogonal.len(), 2);
        assert!(r.unique_rank_semibrick_is_simples);

        let loc = fixtures::local_dual_numbers::<F2>();
        let r = bbt_witness(&loc, 3, CAP).unwrap();
        assert_eq!(r.max_orthogonal.len(), 1);
        assert!(r.unique_rank_semibrick_is_simples);
        assert_eq!(r.bricks_per_dimension, vec![(1, 1), (2, 0), (3, 0)]);
    }

    #[test]
    fn standard_names() {
        let a2 = fixtures::a2::<F3>();
        assert_eq!(standard_name(&simple(&a2, 0), CAP).unwrap().as_deref(), Some("S_1"));
        assert_eq!(standard_name(&projective(&a2, 0), CAP).unwrap().as_deref(), Some("P_1"));
        let k = fixtures::kronecker::<F3>();
        assert_eq!(standard_name(&kronecker_point(&k, 1, 1), CAP).unwrap(), None);
    }
}
