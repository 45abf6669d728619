use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A path is a sequence of arrow indices, each arrow's target being the
/// next arrow's source. The empty path at a vertex is the idempotent.
pub type Path = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite acyclic quiver. Vertices are `0..vertex_count`; the JSON and
/// CLI layers shift to 1-based numbering.
#[derive(Debug)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    order: Vec<usize>,
    // paths[i][j]: paths from i to j, sorted by (length, arrow ids)
    paths: Vec<Vec<Vec<Path>>>,
    path_index: HashMap<(usize, Path), usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

/// Topological order of the vertices (smallest index first among the
/// available ones), or `CyclicQuiver` naming a vertex on a cycle.
pub fn validate_quiver(vertex_count: usize, arrows: &[Arrow]) -> Result<Vec<usize>> {
    let mut indegree = vec![0usize; vertex_count];
    for a in arrows {
        if a.source >= vertex_count {
            return Err(Error::VertexOutOfRange(a.source));
        }
        if a.target >= vertex_count {
            return Err(Error::VertexOutOfRange(a.target));
        }
        indegree[a.target] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..vertex_count).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(vertex_count);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for a in arrows.iter().filter(|a| a.source == v) {
            indegree[a.target] -= 1;
            if indegree[a.target] == 0 {
                ready.insert(a.target);
            }
        }
    }
    if order.len() < vertex_count {
        let stuck = (0..vertex_count).find(|&v| indegree[v] > 0).unwrap_or(0);
        return Err(Error::CyclicQuiver(stuck));
    }
    Ok(order)
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Arc<Quiver>> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver("a quiver needs at least one vertex".into()));
        }
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.id.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id {:?}", a.id)));
            }
        }
        let order = validate_quiver(vertex_count, &arrows)?;

        let mut paths = vec![vec![Vec::new(); vertex_count]; vertex_count];
        for start in 0..vertex_count {
            let mut stack: Vec<(usize, Path)> = vec![(start, Vec::new())];
            while let Some((v, p)) = stack.pop() {
                for (idx, a) in arrows.iter().enumerate().filter(|(_, a)| a.source == v) {
                    let mut q = p.clone();
                    q.push(idx);
                    stack.push((a.target, q));
                }
                paths[start][v].push(p);
            }
        }
        for row in &mut paths {
            for list in row.iter_mut() {
                list.sort_by(|p, q| {
                    p.len().cmp(&q.len()).then_with(|| {
                        let pi: Vec<&str> = p.iter().map(|&i| arrows[i].id.as_str()).collect();
                        let qi: Vec<&str> = q.iter().map(|&i| arrows[i].id.as_str()).collect();
                        pi.cmp(&qi)
                    })
                });
            }
        }
        let mut path_index = HashMap::new();
        for (i, row) in paths.iter().enumerate() {
            for list in row {
                for (k, p) in list.iter().enumerate() {
                    path_index.insert((i, p.clone()), k);
                }
            }
        }
        Ok(Arc::new(Quiver { vertex_count, arrows, order, paths, path_index }))
    }

    /// Builds from `(id, source, target)` triples with 0-based vertices.
    pub fn from_triples(vertex_count: usize, arrows: &[(&str, usize, usize)]) -> Result<Arc<Quiver>> {
        let arrows = arrows
            .iter()
            .map(|&(id, source, target)| Arrow { id: id.to_string(), source, target })
            .collect();
        Quiver::new(vertex_count, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, idx: usize) -> &Arrow {
        &self.arrows[idx]
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.order
    }

    /// Paths from `from` to `to` in basis order.
    pub fn paths(&self, from: usize, to: usize) -> &[Path] {
        &self.paths[from][to]
    }

    pub fn path_position(&self, from: usize, path: &[usize]) -> Option<usize> {
        self.path_index.get(&(from, path.to_vec())).copied()
    }

    /// Number of paths from `from` to `to`.
    pub fn path_count(&self, from: usize, to: usize) -> usize {
        self.paths[from][to].len()
    }

    pub fn path_target(&self, from: usize, path: &[usize]) -> usize {
        path.last().map_or(from, |&a| self.arrows[a].target)
    }

    pub fn path_label(&self, from: usize, path: &[usize]) -> String {
        if path.is_empty() {
            format!("e{}", from + 1)
        } else {
            path.iter().map(|&a| self.arrows[a].id.as_str()).collect::<Vec<_>>().join(".")
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    /// The Euler form `sum_i d_i e_i - sum_a d_s(a) e_t(a)`.
    pub fn euler_form(&self, d: &[usize], e: &[usize]) -> Result<i64> {
        if d.len() != self.vertex_count || e.len() != self.vertex_count {
            return Err(Error::InvalidShape(format!(
                "dimension vectors of length {} and {} for a quiver with {} vertices",
                d.len(),
                e.len(),
                self.vertex_count
            )));
        }
        let diag: i64 = d.iter().zip(e).map(|(&x, &y)| (x * y) as i64).sum();
        let off: i64 = self.arrows.iter().map(|a| (d[a.source] * e[a.target]) as i64).sum();
        Ok(diag - off)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topological_orders() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        assert_eq!(a2.topological_order(), &[0, 1]);
        let kr = Quiver::from_triples(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        assert_eq!(kr.topological_order(), &[0, 1]);
        let lp = Quiver::from_triples(1, &[("l", 0, 0)]);
        assert!(matches!(lp, Err(Error::CyclicQuiver(0))));
        let cyc = Quiver::from_triples(3, &[("a", 0, 1), ("b", 1, 2), ("c", 2, 1)]);
        assert!(matches!(cyc, Err(Error::CyclicQuiver(_))));
        assert!(matches!(Quiver::from_triples(2, &[("a", 0, 2)]), Err(Error::VertexOutOfRange(2))));
        assert!(Quiver::from_triples(2, &[("a", 0, 1), ("a", 0, 1)]).is_err());
    }

    #[test]
    fn euler_form_examples() {
        let a2 = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        assert_eq!(a2.euler_form(&[1, 1], &[1, 1]).unwrap(), 1);
        assert_eq!(a2.euler_form(&[1, 0], &[0, 1]).unwrap(), -1);
        let kr = Quiver::from_triples(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        assert_eq!(kr.euler_form(&[1, 1], &[1, 1]).unwrap(), 0);
        assert!(matches!(kr.euler_form(&[1], &[1, 1]), Err(Error::InvalidShape(_))));
    }

    #[test]
    fn path_order_is_length_then_ids() {
        let q = Quiver::from_triples(3, &[("b", 0, 1), ("a", 0, 1), ("c", 1, 2)]).unwrap();
        let labels: Vec<String> = q.paths(0, 1).iter().map(|p| q.path_label(0, p)).collect();
        assert_eq!(labels, vec!["a", "b"]);
        let labels: Vec<String> = q.paths(0, 2).iter().map(|p| q.path_label(0, p)).collect();
        assert_eq!(labels, vec!["a.c", "b.c"]);
        assert_eq!(q.paths(0, 0), &[Vec::<usize>::new()]);
        assert_eq!(q.path_count(2, 0), 0);
    }
}
