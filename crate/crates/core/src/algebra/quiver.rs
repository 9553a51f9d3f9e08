use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    /// 0-based vertex index.
    pub source: usize,
    /// 0-based vertex index.
    pub target: usize,
}

/// A finite quiver. Loops and parallel arrows are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<Arrow>,
    /// Position of each arrow in name order, used for deglex comparison.
    name_rank: Vec<usize>,
    by_name: HashMap<String, usize>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::Parse {
                line: 0,
                message: "a quiver needs at least one vertex".into(),
            });
        }
        let mut by_name = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertices || a.target >= vertices {
                return Err(Error::Parse {
                    line: 0,
                    message: format!(
                        "arrow `{}` uses vertex {} outside 1..{vertices}",
                        a.name,
                        a.source.max(a.target) + 1
                    ),
                });
            }
            if by_name.insert(a.name.clone(), i).is_some() {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate arrow name `{}`", a.name),
                });
            }
        }
        let mut order: Vec<usize> = (0..arrows.len()).collect();
        order.sort_by(|&x, &y| arrows[x].name.cmp(&arrows[y].name));
        let mut name_rank = vec![0; arrows.len()];
        for (rank, &a) in order.iter().enumerate() {
            name_rank[a] = rank;
        }
        Ok(Quiver {
            vertices,
            arrows,
            name_rank,
            by_name,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    /// Whether the underlying undirected graph is connected.
    pub fn is_connected(&self) -> bool {
        let mut seen = BTreeSet::from([0usize]);
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        seen.len() == self.vertices
    }

    pub fn path_target(&self, p: &Path) -> usize {
        p.arrows
            .last()
            .map_or(p.source, |&a| self.arrows[a].target)
    }

    /// Deglex: length first, then the arrow-name sequence, then the source
    /// vertex (which only matters for trivial paths).
    pub fn deglex_cmp(&self, p: &Path, q: &Path) -> Ordering {
        p.len()
            .cmp(&q.len())
            .then_with(|| {
                let pk = p.arrows.iter().map(|&a| self.name_rank[a]);
                let qk = q.arrows.iter().map(|&a| self.name_rank[a]);
                pk.cmp(qk)
            })
            .then_with(|| p.source.cmp(&q.source))
    }

    /// Concatenation `p` then `q`, if `q` starts where `p` ends.
    pub fn compose(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.path_target(p) != q.source {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path {
            source: p.source,
            arrows,
        })
    }

    /// All paths of length exactly `len`, in deglex order.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = (0..self.vertices).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &layer {
                let t = self.path_target(p);
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == t {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        next.push(Path {
                            source: p.source,
                            arrows,
                        });
                    }
                }
            }
            layer = next;
        }
        layer.sort_by(|p, q| self.deglex_cmp(p, q));
        layer
    }

    /// Number of paths of each length `0..=max_len`, saturating at `u64::MAX`.
    pub fn path_counts(&self, max_len: usize) -> Vec<u64> {
        // counts[v] = number of paths of the current length ending at v.
        let mut counts = vec![1u64; self.vertices];
        let mut out = vec![self.vertices as u64];
        for _ in 0..max_len {
            let mut next = vec![0u64; self.vertices];
            for a in &self.arrows {
                next[a.target] = next[a.target].saturating_add(counts[a.source]);
            }
            counts = next;
            out.push(counts.iter().fold(0u64, |s, &c| s.saturating_add(c)));
        }
        out
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", p.source + 1)
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// A path in diagram order: `arrows[0]` is traversed first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kron() -> Quiver {
        Quiver::new(
            2,
            vec![
                Arrow { name: "b".into(), source: 0, target: 1 },
                Arrow { name: "a".into(), source: 0, target: 1 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn deglex_uses_names_not_insertion_order() {
        let q = kron();
        let layer = q.paths_of_length(1);
        assert_eq!(q.format_path(&layer[0]), "a");
        assert_eq!(q.format_path(&layer[1]), "b");
    }

    #[test]
    fn path_counts_and_connectivity() {
        let q = kron();
        assert_eq!(q.path_counts(3), vec![2, 2, 0, 0]);
        assert!(q.is_connected());
        let split = Quiver::new(2, vec![]).unwrap();
        assert!(!split.is_connected());
    }

    #[test]
    fn rejects_bad_arrows() {
        let dup = vec![
            Arrow { name: "a".into(), source: 0, target: 0 },
            Arrow { name: "a".into(), source: 0, target: 0 },
        ];
        assert!(Quiver::new(1, dup).is_err());
        let out = vec![Arrow { name: "a".into(), source: 0, target: 3 }];
        assert!(Quiver::new(2, out).is_err());
    }
}
