//! Simple undirected loopless graphs on `{0..n}` with bitset adjacency rows.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    rows: Vec<FixedBitSet>,
}

impl SimpleGraph {
    /// The null graph (no edges) on `n` vertices.
    pub fn null(n: usize) -> Self {
        Self {
            n,
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::null(n);
        for v in 0..n {
            for w in v + 1..n {
                g.add_edge(v, w);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut g = Self::null(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    /// Builds a graph from 0-based edges, rejecting loops and bad vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::null(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x + 1, n });
                }
            }
            if u == v {
                return Err(Error::DegeneratePair { v: u + 1 });
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].set(v, false);
        self.rows[v].set(u, false);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn is_null(&self) -> bool {
        self.rows.iter().all(|r| r.is_clear())
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                self.rows[u]
                    .ones()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn complement(&self) -> SimpleGraph {
        let mut g = Self::null(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Same vertex set and every edge of `self` is an edge of `other`.
    pub fn is_spanning_subgraph_of(&self, other: &SimpleGraph) -> bool {
        self.n == other.n
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subset(b))
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Parses the edge-list format: a header `n m`, then `m` lines `u v`
    /// with `1 <= u < v <= n`. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header `n m`".into(),
        })?;
        let [n, m] = parse_pair(hline, header)?;
        if n == 0 {
            return Err(Error::Parse {
                line: hline,
                message: "vertex count must be at least 1".into(),
            });
        }
        let mut g = Self::null(n);
        let mut count = 0;
        for (line, body) in lines {
            let [u, v] = parse_pair(line, body)?;
            if !(1 <= u && u < v && v <= n) {
                return Err(Error::Parse {
                    line,
                    message: format!("edge `{u} {v}` must satisfy 1 <= u < v <= {n}"),
                });
            }
            if g.has_edge(u - 1, v - 1) {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate edge `{u} {v}`"),
                });
            }
            g.add_edge(u - 1, v - 1);
            count += 1;
        }
        if count != m {
            return Err(Error::Parse {
                line: hline,
                message: format!("header declares {m} edges, found {count}"),
            });
        }
        Ok(g)
    }

    /// Writes the edge-list format with sorted 1-based edges.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            message: format!("expected two integers, found `{body}`"),
        });
    }
    let mut out = [0usize; 2];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f.parse().map_err(|_| Error::Parse {
            line,
            message: format!("`{f}` is not a non-negative integer"),
        })?;
    }
    Ok(out)
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (u + 1, v + 1))
            .collect();
        write!(f, "SimpleGraph(n={}, {:?})", self.n, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_shapes() {
        assert_eq!(SimpleGraph::complete(5).edge_count(), 10);
        assert!(SimpleGraph::null(4).is_null());
        assert!(SimpleGraph::complete(1).is_null());
        assert_eq!(
            SimpleGraph::cycle(5).edges(),
            vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
        );
        assert_eq!(SimpleGraph::complete(4).complement(), SimpleGraph::null(4));
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "# triangle plus pendant\n4 4\n1 2\n1 3\n2 3\n3 4\n";
        let g = SimpleGraph::parse(text).unwrap();
        assert_eq!(g.to_edge_list(), "4 4\n1 2\n1 3\n2 3\n3 4\n");
        assert_eq!(SimpleGraph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn output_sorts_edges() {
        let g = SimpleGraph::parse("4 3\n3 4\n1 4\n1 2\n").unwrap();
        assert_eq!(g.to_edge_list(), "4 3\n1 2\n1 4\n3 4\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = SimpleGraph::parse("3 2\n1 2\n2 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = SimpleGraph::parse("3 1\n# c\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = SimpleGraph::parse("3 2\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(SimpleGraph::parse("3 1\n1 4\n").is_err());
        assert!(SimpleGraph::parse("3 2\n1 2\n1 2\n").is_err());
        assert!(SimpleGraph::parse("").is_err());
    }
}
