//! Unoriented planar networks of crossings and 2-strand Jones–Wenzl boxes,
//! obtained by 2-cabling the components of a diagram colored 2.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::Cyc20;

use super::diagram::FramedLinkDiagram;

/// A crossing lists its ports counterclockwise starting from an under-strand
/// end. A Jones–Wenzl box lists bottom-left, bottom-right, top-right,
/// top-left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Crossing,
    Jw2,
}

pub type Pairing = [[usize; 2]; 2];

impl VertexKind {
    /// The two resolutions: port pairing and coefficient.
    pub fn states(self) -> [(Pairing, Cyc20); 2] {
        match self {
            VertexKind::Crossing => [([[0, 1], [2, 3]], Cyc20::a_pow(1)), ([[0, 3], [1, 2]], Cyc20::a_pow(-1))],
            VertexKind::Jw2 => {
                let inv = Cyc20::delta().inverse().expect("loop value is a unit");
                [([[0, 3], [1, 2]], Cyc20::ONE), ([[0, 1], [2, 3]], -inv)]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    /// Edge at each port; an edge id occurs at exactly two ports network-wide.
    pub ports: [u32; 4],
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Network {
    pub vertices: Vec<Vertex>,
    pub n_edges: u32,
    /// Closed strands meeting no vertex.
    pub free_loops: u32,
}

impl Network {
    pub fn crossing_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.kind == VertexKind::Crossing).count()
    }

    /// Builds a network from vertices whose ports name abstract points and
    /// wires joining points in pairs. Points not on a vertex must lie on two
    /// wires and are contracted away.
    fn from_points(kinds: Vec<VertexKind>, ports: Vec<[usize; 4]>, wires: &[(usize, usize)], n_points: usize) -> Result<Self> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_points];
        for &(a, b) in wires {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut on_vertex = vec![false; n_points];
        for p in ports.iter().flatten() {
            on_vertex[*p] = true;
        }
        for (p, a) in adj.iter().enumerate() {
            let want = if on_vertex[p] { 1 } else { 2 };
            if !a.is_empty() && a.len() != want {
                return Err(Error::Internal(format!("cable point {p} has {} wires", a.len())));
            }
            if on_vertex[p] && a.is_empty() {
                return Err(Error::Internal(format!("vertex port {p} is unwired")));
            }
        }
        let mut edge_of = vec![u32::MAX; n_points];
        let mut seen = vec![false; n_points];
        let mut n_edges = 0u32;
        for start in 0..n_points {
            if !on_vertex[start] || edge_of[start] != u32::MAX {
                continue;
            }
            let mut prev = start;
            let mut cur = adj[start][0];
            while !on_vertex[cur] {
                seen[cur] = true;
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
            edge_of[start] = n_edges;
            edge_of[cur] = n_edges;
            n_edges += 1;
        }
        // remaining unvisited pass points form closed loops
        let mut free_loops = 0;
        for start in 0..n_points {
            if on_vertex[start] || seen[start] || adj[start].is_empty() {
                continue;
            }
            free_loops += 1;
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                seen[cur] = true;
                let next = if adj[cur][0] != prev { adj[cur][0] } else { adj[cur][1] };
                prev = cur;
                cur = next;
                if cur == start {
                    break;
                }
            }
        }
        let vertices = kinds
            .into_iter()
            .zip(ports)
            .map(|(kind, ps)| Vertex { kind, ports: ps.map(|p| edge_of[p]) })
            .collect();
        Ok(Self { vertices, n_edges, free_loops })
    }

    /// The plain diagram as a network (all components colored 1).
    pub fn from_diagram(d: &FramedLinkDiagram) -> Result<Self> {
        let nx = d.crossings().len();
        let ports: Vec<[usize; 4]> = (0..nx).map(|c| [0, 1, 2, 3].map(|k| 4 * c + k)).collect();
        let mut wires = Vec::new();
        for c in 0..nx {
            for pos in 0..4 {
                let e = d.crossings()[c][pos];
                let (head, tail) = d.edge_ends(e).expect("crossing edge");
                if head == (c, pos) {
                    wires.push((4 * c + pos, 4 * tail.0 + tail.1));
                }
            }
        }
        let mut net = Self::from_points(vec![VertexKind::Crossing; nx], ports, &wires, 4 * nx)?;
        net.free_loops += d.loops().len() as u32;
        Ok(net)
    }

    /// Components colored 2 are replaced by their 2-cable with one
    /// Jones–Wenzl box each; components colored 0 are deleted.
    pub fn cabled(d: &FramedLinkDiagram, colors: &[u8]) -> Result<Self> {
        if colors.len() != d.n_components() {
            return Err(Error::InvalidArgument(format!("{} colors for {} components", colors.len(), d.n_components())));
        }
        if let Some(c) = colors.iter().find(|&&c| c != 0 && c != 2) {
            return Err(Error::InvalidArgument(format!("color {c} not in {{0, 2}}")));
        }
        let on = |comp: usize| colors[comp] == 2;
        let nx = d.crossings().len();
        // leg points: crossing c, position pos, sub-end k -> 8c + 2pos + k
        let leg = |c: usize, pos: usize, k: usize| 8 * c + 2 * pos + k;
        let mut n_points = 8 * nx;
        let mut fresh = |n: usize| {
            let s = n_points;
            n_points += n;
            s
        };
        let mut kinds = Vec::new();
        let mut ports: Vec<[usize; 4]> = Vec::new();
        let mut wires = Vec::new();

        for c in 0..nx {
            let (u, o) = d.crossing_components(c);
            match (on(u), on(o)) {
                (true, true) => {
                    // 2x2 grid of small crossings; vertical strands are under
                    let base = fresh(16);
                    let q = |ix: usize, iy: usize, port: usize| base + 4 * (2 * ix + iy) + port;
                    for ix in 0..2 {
                        for iy in 0..2 {
                            kinds.push(VertexKind::Crossing);
                            ports.push([0, 1, 2, 3].map(|p| q(ix, iy, p)));
                        }
                    }
                    // vertical x = -e: a0 .. c1 ; x = +e: a1 .. c0
                    for (ix, bottom, top) in [(0, leg(c, 0, 0), leg(c, 2, 1)), (1, leg(c, 0, 1), leg(c, 2, 0))] {
                        wires.push((bottom, q(ix, 0, 0)));
                        wires.push((q(ix, 0, 2), q(ix, 1, 0)));
                        wires.push((q(ix, 1, 2), top));
                    }
                    // horizontal y = -e: d1 .. b0 ; y = +e: d0 .. b1
                    for (iy, left, right) in [(0, leg(c, 3, 1), leg(c, 1, 0)), (1, leg(c, 3, 0), leg(c, 1, 1))] {
                        wires.push((left, q(0, iy, 3)));
                        wires.push((q(0, iy, 1), q(1, iy, 3)));
                        wires.push((q(1, iy, 1), right));
                    }
                }
                (true, false) => {
                    wires.push((leg(c, 0, 0), leg(c, 2, 1)));
                    wires.push((leg(c, 0, 1), leg(c, 2, 0)));
                }
                (false, true) => {
                    wires.push((leg(c, 1, 0), leg(c, 3, 1)));
                    wires.push((leg(c, 1, 1), leg(c, 3, 0)));
                }
                (false, false) => {}
            }
        }

        for (ci, comp) in d.components().iter().enumerate() {
            if !on(ci) {
                continue;
            }
            // Jones-Wenzl box on the first edge, bottom toward its tail
            let jw = fresh(4);
            kinds.push(VertexKind::Jw2);
            ports.push([jw, jw + 1, jw + 2, jw + 3]);
            match d.edge_ends(comp.edges[0]) {
                None => {
                    wires.push((jw, jw + 3));
                    wires.push((jw + 1, jw + 2));
                }
                Some(((hc, hp), (tc, tp))) => {
                    wires.push((jw, leg(tc, tp, 1)));
                    wires.push((jw + 1, leg(tc, tp, 0)));
                    wires.push((jw + 3, leg(hc, hp, 0)));
                    wires.push((jw + 2, leg(hc, hp, 1)));
                }
            }
            for &e in &comp.edges[1..] {
                let ((hc, hp), (tc, tp)) = d.edge_ends(e).expect("crossing edge");
                wires.push((leg(hc, hp, 0), leg(tc, tp, 1)));
                wires.push((leg(hc, hp, 1), leg(tc, tp, 0)));
            }
        }
        Self::from_points(kinds, ports, &wires, n_points)
    }

    /// Checks that every edge id occurs at exactly two ports.
    pub fn validate(&self) -> Result<()> {
        let mut count: HashMap<u32, u32> = HashMap::new();
        for v in &self.vertices {
            for &e in &v.ports {
                *count.entry(e).or_default() += 1;
            }
        }
        if count.len() as u32 != self.n_edges || count.values().any(|&c| c != 2) {
            return Err(Error::Internal("network edge incidence".into()));
        }
        Ok(())
    }
}
