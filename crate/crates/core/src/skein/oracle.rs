//! Brute-force state sum over all resolutions; test oracle for small networks.

use crate::error::{Error, Result};
use crate::ring::Cyc20;

use super::network::Network;

pub const ORACLE_MAX_VERTICES: usize = 20;

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// Sums over all `2^V` resolutions, counting loops with union-find.
pub fn naive_evaluate(net: &Network) -> Result<Cyc20> {
    let nv = net.vertices.len();
    if nv > ORACLE_MAX_VERTICES {
        return Err(Error::LimitExceeded(format!("{nv} vertices for the naive state sum (max {ORACLE_MAX_VERTICES})")));
    }
    let delta = Cyc20::delta();
    let states: Vec<_> = net.vertices.iter().map(|v| v.kind.states()).collect();
    let mut powers = vec![Cyc20::ONE];
    for _ in 0..net.n_edges + net.free_loops {
        let last = *powers.last().expect("nonempty");
        powers.push(last * delta);
    }
    let mut total = Cyc20::ZERO;
    let mut parent: Vec<u32> = Vec::with_capacity(net.n_edges as usize);
    for mask in 0u64..(1u64 << nv) {
        parent.clear();
        parent.extend(0..net.n_edges);
        let mut coeff = Cyc20::ONE;
        let mut loops = net.n_edges;
        for (i, v) in net.vertices.iter().enumerate() {
            let (pairing, c) = states[i][((mask >> i) & 1) as usize];
            coeff = coeff * c;
            for [x, y] in pairing {
                let (a, b) = (find(&mut parent, v.ports[x]), find(&mut parent, v.ports[y]));
                if a != b {
                    parent[a as usize] = b;
                    loops -= 1;
                }
            }
        }
        total += coeff * powers[(loops + net.free_loops) as usize];
    }
    Ok(total)
}
