// SPDX-License-Identifier: Apache-2.0

//! Finite undirected simple graphs.
//!
//! Vertices are numbered from 0. The two polyhedra use these labelings:
//!
//! * `cube`: vertex `v` is the 3-bit label of a corner of the unit cube;
//!   `u ~ v` iff the labels differ in exactly one bit. Vertex 7 is
//!   antipodal to vertex 0.
//! * `octahedron`: the complete tripartite graph K(2,2,2). Vertices `v` and
//!   `5 - v` form an antipodal (non-adjacent) pair, so `(0, 5)`, `(1, 4)`
//!   and `(2, 3)` are the three opposite corners; every other pair is an
//!   edge.
//!
//! Entanglement on these solids depends only on the distance class of a
//! pair, so the choice of labeling never affects results.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Each edge is normalized to
    /// `(min, max)`; self-loops, duplicates and out-of-range endpoints are
    /// rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize {
                family: "graph".into(),
                size: 0,
            });
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &set {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: set,
            adjacency,
        })
    }

    /// The single-edge graph on two vertices.
    pub fn two() -> Self {
        Self::complete(2)
    }

    /// Complete (mean-field) graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path graph is simple")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle graph is simple")
    }

    /// The 3-cube Q3.
    pub fn cube() -> Self {
        let edges = (0..8usize).flat_map(|v| {
            (0..3)
                .map(move |bit| (v, v ^ (1 << bit)))
                .filter(|&(a, b)| a < b)
        });
        Graph::new(8, edges).expect("cube is simple")
    }

    /// The octahedron K(2,2,2).
    pub fn octahedron() -> Self {
        let edges = (0..6usize)
            .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
            .filter(|&(i, j)| i + j != 5);
        Graph::new(6, edges).expect("octahedron is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// If every pair of vertices is adjacent, returns the vertex count.
    pub fn complete_size(&self) -> Option<usize> {
        (self.edges.len() == self.n * (self.n - 1) / 2).then_some(self.n)
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(i, j) in &self.edges {
            a[(i, j)] = 1.0;
            a[(j, i)] = 1.0;
        }
        a
    }

    /// Combinatorial Laplacian `Deg - A`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut l = -self.adjacency_matrix();
        for v in 0..self.n {
            l[(v, v)] = self.degree(v) as f64;
        }
        l
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).0.iter().all(Option::is_some)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// BFS from `source`, returning per-vertex distance and number of
    /// distinct shortest paths from the source.
    fn bfs(&self, source: usize) -> (Vec<Option<usize>>, Vec<u64>) {
        let mut dist = vec![None; self.n];
        let mut count = vec![0u64; self.n];
        dist[source] = Some(0);
        count[source] = 1;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for &w in &self.adjacency[v] {
                match dist[w] {
                    None => {
                        dist[w] = Some(dv + 1);
                        count[w] = count[v];
                        queue.push_back(w);
                    }
                    Some(dw) if dw == dv + 1 => count[w] = count[w].saturating_add(count[v]),
                    Some(_) => {}
                }
            }
        }
        (dist, count)
    }

    /// Graph distance between `i` and `j` and the number of distinct
    /// shortest paths joining them.
    pub fn shortest_path_stats(&self, i: usize, j: usize) -> Result<PathStats> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        let (dist, count) = self.bfs(i);
        match dist[j] {
            Some(distance) => Ok(PathStats {
                distance,
                count: count[j],
            }),
            None => Err(Error::Disconnected(i, j)),
        }
    }

    /// Groups all unordered pairs `i < j` by (distance, shortest-path count).
    /// Classes are sorted by that key; each carries its lexicographically
    /// smallest pair as representative.
    pub fn distance_classes(&self) -> Result<Vec<DistanceClass>> {
        if !self.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        let mut classes: BTreeMap<PathStats, DistanceClass> = BTreeMap::new();
        for i in 0..self.n {
            let (dist, count) = self.bfs(i);
            for j in i + 1..self.n {
                let stats = PathStats {
                    distance: dist[j].expect("connected"),
                    count: count[j],
                };
                classes
                    .entry(stats)
                    .and_modify(|c| c.size += 1)
                    .or_insert(DistanceClass {
                        stats,
                        representative: (i, j),
                        size: 1,
                    });
            }
        }
        Ok(classes.into_values().collect())
    }

    /// Picks the lexicographically smallest pair at graph distance
    /// `distance` (and with `count` shortest paths, if given).
    pub fn class_representative(&self, distance: usize, count: Option<u64>) -> Result<(usize, usize)> {
        self.distance_classes()?
            .into_iter()
            .filter(|c| c.stats.distance == distance && count.is_none_or(|k| c.stats.count == k))
            .map(|c| c.representative)
            .min()
            .ok_or_else(|| {
                let what = match count {
                    Some(k) => format!("distance {distance} with {k} shortest paths"),
                    None => format!("distance {distance}"),
                };
                Error::NoSuchClass(what)
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathStats {
    pub distance: usize,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceClass {
    pub stats: PathStats,
    pub representative: (usize, usize),
    pub size: usize,
}

/// Builds one of the named families. `complete`/`meanfield`, `path` and
/// `cycle` take a size; `two`, `cube` and `octahedron` do not.
pub fn build_family(name: &str, size: Option<usize>) -> Result<Graph> {
    let sized = |min: usize| -> Result<usize> {
        match size {
            None => Err(Error::MissingSize(name.into())),
            Some(n) if n < min => Err(Error::InvalidSize {
                family: name.into(),
                size: n,
            }),
            Some(n) => Ok(n),
        }
    };
    let fixed = |g: Graph| -> Result<Graph> {
        match size {
            Some(_) => Err(Error::UnexpectedSize(name.into())),
            None => Ok(g),
        }
    };
    match name {
        "complete" | "meanfield" => Ok(Graph::complete(sized(2)?)),
        "path" => Ok(Graph::path(sized(2)?)),
        "cycle" => Ok(Graph::cycle(sized(3)?)),
        "two" => fixed(Graph::two()),
        "cube" => fixed(Graph::cube()),
        "octahedron" => fixed(Graph::octahedron()),
        other => Err(Error::UnknownFamily(other.into())),
    }
}

/// Parses the edge-list format: a header line `n <N>`, then one `<i> <j>`
/// pair per non-empty line. Lines starting with `#` are comments. LF and
/// CRLF line endings are both accepted.
pub fn load_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    let mut tok = header.split_whitespace();
    let n = match (tok.next(), tok.next(), tok.next()) {
        (Some("n"), Some(count), None) => count
            .parse::<usize>()
            .map_err(|_| Error::MalformedHeader(header.into()))?,
        _ => return Err(Error::MalformedHeader(header.into())),
    };

    let mut edges = Vec::new();
    for (line, body) in lines {
        let fields: Vec<&str> = body.split_whitespace().collect();
        let [a, b] = fields[..] else {
            return Err(Error::MalformedLine {
                line,
                msg: format!("expected two vertex indices, got `{body}`"),
            });
        };
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::MalformedLine {
                line,
                msg: format!("invalid vertex index `{s}`"),
            })
        };
        edges.push((parse(a)?, parse(b)?));
    }
    Graph::new(n, edges)
}

/// Textual graph selector: `two | complete:N | meanfield:N | path:N |
/// cycle:N | cube | octahedron | file:PATH`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Family { name: String, size: Option<usize> },
    File(PathBuf),
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Family { name, size } => build_family(name, *size),
            GraphSpec::File(path) => load_edge_list(&std::fs::read_to_string(path)?),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(GraphSpec::File(PathBuf::from(path)));
        }
        let (name, size) = match s.split_once(':') {
            Some((name, size)) => {
                let n = size.parse::<usize>().map_err(|_| Error::InvalidSize {
                    family: name.into(),
                    size: 0,
                })?;
                (name, Some(n))
            }
            None => (s, None),
        };
        // Validate eagerly so bad specs fail at parse time.
        build_family(name, size)?;
        Ok(GraphSpec::Family {
            name: name.into(),
            size,
        })
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Family { name, size: Some(n) } => write!(f, "{name}:{n}"),
            GraphSpec::Family { name, size: None } => f.write_str(name),
            GraphSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}
