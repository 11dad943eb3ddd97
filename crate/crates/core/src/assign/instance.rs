use thiserror::Error;

/// One weighted edge `(x, y)` with `x` in X and `y` in Y, both 0-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub x: usize,
    pub y: usize,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("assignment instance needs n >= 1")]
    Empty,
    #[error("edge {index} ({x}, {y}) is outside 0..{n}")]
    EdgeOutOfRange { index: usize, x: usize, y: usize, n: usize },
    #[error("row {row} has {len} weights, expected {n}")]
    Ragged { row: usize, len: usize, n: usize },
}

/// Bipartite weighted graph with `|X| = |Y| = n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentInstance {
    n: usize,
    edges: Vec<Edge>,
    complete: bool,
}

impl AssignmentInstance {
    /// Sparse instance. Duplicate `(x, y)` pairs are kept as parallel edges.
    pub fn new(n: usize, edges: Vec<(usize, usize, i64)>) -> Result<Self, InstanceError> {
        if n == 0 {
            return Err(InstanceError::Empty);
        }
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(index, (x, y, weight))| {
                if x >= n || y >= n {
                    Err(InstanceError::EdgeOutOfRange { index, x, y, n })
                } else {
                    Ok(Edge { x, y, weight })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut seen = vec![false; n * n];
        for e in &edges {
            seen[e.x * n + e.y] = true;
        }
        let complete = seen.iter().all(|&s| s);
        Ok(Self { n, edges, complete })
    }

    /// Complete instance from a square weight matrix, row `x`, column `y`.
    pub fn complete(weights: &[Vec<i64>]) -> Result<Self, InstanceError> {
        let n = weights.len();
        if n == 0 {
            return Err(InstanceError::Empty);
        }
        let mut edges = Vec::with_capacity(n * n);
        for (x, row) in weights.iter().enumerate() {
            if row.len() != n {
                return Err(InstanceError::Ragged { row: x, len: row.len(), n });
            }
            edges.extend(row.iter().enumerate().map(|(y, &weight)| Edge { x, y, weight }));
        }
        Ok(Self { n, edges, complete: true })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn max_abs_weight(&self) -> i64 {
        self.edges.iter().map(|e| e.weight.abs()).max().unwrap_or(0)
    }

    /// Kuhn's augmenting-path matching; ignores weights.
    pub fn has_perfect_matching(&self) -> bool {
        if self.complete {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.x].push(e.y);
        }
        let mut match_y = vec![usize::MAX; self.n];
        (0..self.n).all(|x| {
            let mut visited = vec![false; self.n];
            augment(x, &adj, &mut match_y, &mut visited)
        })
    }
}

fn augment(x: usize, adj: &[Vec<usize>], match_y: &mut [usize], visited: &mut [bool]) -> bool {
    for &y in &adj[x] {
        if visited[y] {
            continue;
        }
        visited[y] = true;
        if match_y[y] == usize::MAX || augment(match_y[y], adj, match_y, visited) {
            match_y[y] = x;
            return true;
        }
    }
    false
}
