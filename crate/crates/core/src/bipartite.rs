//! Maximum matching in bipartite graphs (Hopcroft–Karp).

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Bipartite graph with `left` and `right` vertex counts; `adj[u]` lists right neighbours of `u`.
#[derive(Clone, Debug, Default)]
pub struct Bipartite {
    pub left: usize,
    pub right: usize,
    pub adj: Vec<Vec<usize>>,
}

impl Bipartite {
    pub fn new(left: usize, right: usize) -> Self {
        Self { left, right, adj: vec![Vec::new(); left] }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < self.left && v < self.right);
        self.adj[u].push(v);
    }

    /// `mate[u]` is the right partner of left vertex `u`, if any.
    pub fn maximum_matching(&self) -> Vec<Option<usize>> {
        let mut ml = vec![NIL; self.left];
        let mut mr = vec![NIL; self.right];
        let mut dist = vec![0usize; self.left];
        while self.bfs(&ml, &mr, &mut dist) {
            for u in 0..self.left {
                if ml[u] == NIL {
                    self.dfs(u, &mut ml, &mut mr, &mut dist);
                }
            }
        }
        ml.into_iter().map(|v| (v != NIL).then_some(v)).collect()
    }

    fn bfs(&self, ml: &[usize], mr: &[usize], dist: &mut [usize]) -> bool {
        let mut queue = VecDeque::new();
        for u in 0..self.left {
            if ml[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NIL;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                let w = mr[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == NIL {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn dfs(&self, u: usize, ml: &mut [usize], mr: &mut [usize], dist: &mut [usize]) -> bool {
        for k in 0..self.adj[u].len() {
            let v = self.adj[u][k];
            let w = mr[v];
            if w == NIL || (dist[w] == dist[u] + 1 && self.dfs(w, ml, mr, dist)) {
                ml[u] = v;
                mr[v] = u;
                return true;
            }
        }
        dist[u] = NIL;
        false
    }
}
