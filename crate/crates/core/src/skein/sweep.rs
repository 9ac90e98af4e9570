//! Sweep evaluation of a network: vertices are absorbed one at a time and the
//! state is a superposition of pairings of the frontier edges (edges with
//! exactly one absorbed end).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::Cyc20;

use super::network::Network;

/// Frontier edges are indexed by `u8` in state keys.
pub const MAX_FRONTIER: usize = 255;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepPlan {
    pub order: Vec<usize>,
    pub max_frontier: usize,
}

/// Greedy order: next vertex is the one that grows the frontier least.
pub fn plan(net: &Network) -> SweepPlan {
    let nv = net.vertices.len();
    let mut absorbed_ends = vec![0u8; net.n_edges as usize];
    let mut done = vec![false; nv];
    let mut order = Vec::with_capacity(nv);
    let mut frontier = 0usize;
    let mut max_frontier = 0usize;
    for _ in 0..nv {
        let mut best: Option<(i32, usize)> = None;
        for v in 0..nv {
            if done[v] {
                continue;
            }
            let g = growth(net, v, &absorbed_ends);
            if best.is_none_or(|(bg, _)| g < bg) {
                best = Some((g, v));
            }
        }
        let (g, v) = best.expect("vertex left");
        done[v] = true;
        for &e in &net.vertices[v].ports {
            absorbed_ends[e as usize] += 1;
        }
        frontier = (frontier as i32 + g) as usize;
        max_frontier = max_frontier.max(frontier);
        order.push(v);
    }
    SweepPlan { order, max_frontier }
}

fn growth(net: &Network, v: usize, absorbed_ends: &[u8]) -> i32 {
    let ports = &net.vertices[v].ports;
    let mut g = 0;
    for &e in ports {
        let twice = ports.iter().filter(|&&f| f == e).count() == 2;
        if absorbed_ends[e as usize] == 1 {
            g -= 1;
        } else if !twice {
            g += 1;
        }
    }
    g
}

struct Scratch {
    adj: Vec<[u32; 2]>,
    deg: Vec<u8>,
    seen: Vec<bool>,
}

impl Scratch {
    fn reset(&mut self, n: usize) {
        self.adj.clear();
        self.adj.resize(n, [u32::MAX; 2]);
        self.deg.clear();
        self.deg.resize(n, 0);
        self.seen.clear();
        self.seen.resize(n, false);
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a][self.deg[a] as usize] = b as u32;
        self.deg[a] += 1;
        self.adj[b][self.deg[b] as usize] = a as u32;
        self.deg[b] += 1;
    }

    /// Follows a path from an open end; returns the other open end.
    fn walk(&mut self, start: usize) -> usize {
        self.seen[start] = true;
        let mut prev = start;
        let mut cur = self.adj[start][0] as usize;
        loop {
            self.seen[cur] = true;
            if self.deg[cur] == 1 {
                return cur;
            }
            let a = self.adj[cur];
            let next = if a[0] as usize == prev { a[1] } else { a[0] } as usize;
            prev = cur;
            cur = next;
        }
    }

    /// Marks a closed cycle through `start`.
    fn close(&mut self, start: usize) {
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            self.seen[cur] = true;
            let a = self.adj[cur];
            let next = if a[0] as usize != prev { a[0] } else { a[1] } as usize;
            prev = cur;
            cur = next;
            if cur == start {
                return;
            }
        }
    }
}

/// Evaluates the bracket of the network. Fails if the plan's frontier
/// exceeds `width_limit`.
pub fn sweep_evaluate(net: &Network, width_limit: usize) -> Result<Cyc20> {
    let p = plan(net);
    let limit = width_limit.min(MAX_FRONTIER);
    if p.max_frontier > limit {
        return Err(Error::LimitExceeded(format!("sweep frontier {} exceeds the strand limit {limit}", p.max_frontier)));
    }
    let delta = Cyc20::delta();
    let mut powers = vec![Cyc20::ONE];
    for _ in 0..=4 + net.free_loops {
        let last = *powers.last().expect("nonempty");
        powers.push(last * delta);
    }

    let ne = net.n_edges as usize;
    let mut absorbed_ends = vec![0u8; ne];
    let mut frontier: Vec<u32> = Vec::new();
    let mut index_of = vec![u32::MAX; ne];
    let mut states: HashMap<Vec<u8>, Cyc20> = HashMap::from([(Vec::new(), Cyc20::ONE)]);
    let mut scratch = Scratch { adj: Vec::new(), deg: Vec::new(), seen: Vec::new() };

    for &v in &p.order {
        let vert = &net.vertices[v];
        let n = frontier.len();
        let at_v = |e: u32| vert.ports.contains(&e);
        // next frontier: survivors of the old one plus new edges
        let mut next: Vec<u32> = frontier.iter().copied().filter(|&e| !at_v(e)).collect();
        for &e in &vert.ports {
            let twice = vert.ports.iter().filter(|&&f| f == e).count() == 2;
            if absorbed_ends[e as usize] == 0 && !twice {
                next.push(e);
            }
        }
        next.sort_unstable();
        next.dedup();
        let mut next_index = HashMap::with_capacity(next.len());
        for (i, &e) in next.iter().enumerate() {
            next_index.insert(e, i);
        }
        // node of each open end in the scratch graph
        let mut open_nodes: Vec<(usize, usize)> = Vec::with_capacity(next.len());
        for (i, &e) in frontier.iter().enumerate() {
            if !at_v(e) {
                open_nodes.push((i, next_index[&e]));
            }
        }
        for (k, &e) in vert.ports.iter().enumerate() {
            if let Some(&j) = next_index.get(&e) {
                if index_of[e as usize] == u32::MAX {
                    open_nodes.push((n + k, j));
                }
            }
        }
        let mut node_to_new = vec![usize::MAX; n + 4];
        for &(node, j) in &open_nodes {
            node_to_new[node] = j;
        }

        let choices = vert.kind.states();
        let mut out: HashMap<Vec<u8>, Cyc20> = HashMap::with_capacity(states.len() * 2);
        for (key, coeff) in &states {
            for (pairing, c) in &choices {
                scratch.reset(n + 4);
                for (i, &j) in key.iter().enumerate() {
                    if i < j as usize {
                        scratch.link(i, j as usize);
                    }
                }
                for (k, &e) in vert.ports.iter().enumerate() {
                    let idx = index_of[e as usize];
                    if idx != u32::MAX {
                        scratch.link(n + k, idx as usize);
                    } else if let Some(k2) = vert.ports[k + 1..].iter().position(|&f| f == e) {
                        scratch.link(n + k, n + k + 1 + k2);
                    }
                }
                for [x, y] in pairing {
                    scratch.link(n + x, n + y);
                }
                let mut new_key = vec![0u8; next.len()];
                for &(node, j) in &open_nodes {
                    if scratch.seen[node] {
                        continue;
                    }
                    let end = scratch.walk(node);
                    let j2 = node_to_new[end];
                    debug_assert!(j2 != usize::MAX);
                    new_key[j] = j2 as u8;
                    new_key[j2] = j as u8;
                }
                let mut loops = 0usize;
                for k in 0..4 {
                    if !scratch.seen[n + k] {
                        scratch.close(n + k);
                        loops += 1;
                    }
                }
                let term = *coeff * *c * powers[loops];
                let slot = out.entry(new_key).or_insert(Cyc20::ZERO);
                *slot += term;
            }
        }
        out.retain(|_, v| !v.is_zero());
        states = out;

        for &e in &vert.ports {
            absorbed_ends[e as usize] += 1;
        }
        for &e in &frontier {
            index_of[e as usize] = u32::MAX;
        }
        for (i, &e) in next.iter().enumerate() {
            index_of[e as usize] = i as u32;
        }
        frontier = next;
    }
    debug_assert!(frontier.is_empty());
    let value = states.get(&Vec::new()).copied().unwrap_or(Cyc20::ZERO);
    Ok(value * powers[net.free_loops as usize])
}
