//! Framed link diagrams in PD notation.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise,
//! starting from the incoming under-strand `a`; the under-strand leaves along
//! `c`. The crossing is positive when the over-strand runs from `d` to `b`.
//! A component without crossings is written `Loop(e)`.
//!
//! File format: `#` comments, `key: value` header lines (`name`,
//! `components`, `framings`), then one `X(...)` or `Loop(...)` per line.
//! Components are numbered by their smallest edge label; `framings` lists one
//! integer per component in that order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rational::inertia;
use crate::linalg::IntMatrix;

/// Where an edge end sits: crossing index and position `0..4` in `X(a,b,c,d)`.
pub type Port = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Edge labels in traversal order.
    pub edges: Vec<u32>,
    pub framing: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramedLinkDiagram {
    pub name: String,
    crossings: Vec<[u32; 4]>,
    loops: Vec<u32>,
    components: Vec<Component>,
    /// `(head, tail)` port of every edge that meets a crossing; the edge runs
    /// from its tail to its head.
    #[serde(skip)]
    ends: HashMap<u32, (Port, Port)>,
    #[serde(skip)]
    component_of: HashMap<u32, usize>,
}

impl FramedLinkDiagram {
    pub fn new(name: &str, crossings: Vec<[u32; 4]>, loops: Vec<u32>, framings: Vec<i64>) -> Result<Self> {
        let bad = |msg: String| Error::MalformedDiagram(format!("{name}: {msg}"));
        let mut occ: BTreeMap<u32, Vec<Port>> = BTreeMap::new();
        for (ci, x) in crossings.iter().enumerate() {
            for (pos, &e) in x.iter().enumerate() {
                occ.entry(e).or_default().push((ci, pos));
            }
        }
        for (&e, v) in &occ {
            if v.len() != 2 {
                return Err(bad(format!("edge {e} appears {} times", v.len())));
            }
        }
        for &l in &loops {
            if occ.contains_key(&l) {
                return Err(bad(format!("loop label {l} also used by a crossing")));
            }
        }
        let other = |e: u32, port: Port| -> Port {
            let v = &occ[&e];
            if v[0] == port {
                v[1]
            } else {
                v[0]
            }
        };

        // Trace components. An edge whose end sits at position 0 enters that
        // crossing; position 2 is a tail. Over-strand positions are oriented by
        // propagation, with an arbitrary choice for components never passing
        // under.
        let mut ends: HashMap<u32, (Port, Port)> = HashMap::new();
        let mut comps: Vec<Vec<u32>> = Vec::new();
        let labels: Vec<u32> = occ.keys().copied().collect();
        for &start in &labels {
            if ends.contains_key(&start) {
                continue;
            }
            // collect the unoriented cycle through `start`, then pick a direction
            let mut cycle = Vec::new();
            let mut e = start;
            let mut head = occ[&start][0];
            loop {
                let tail = other(e, head);
                cycle.push((e, head, tail));
                let next = crossings[head.0][(head.1 + 2) % 4];
                let next_tail = (head.0, (head.1 + 2) % 4);
                e = next;
                head = other(e, next_tail);
                if e == start && head == cycle[0].1 {
                    break;
                }
                if cycle.len() > 4 * crossings.len() + 4 {
                    return Err(bad("component does not close".into()));
                }
            }
            let forward_ok = cycle.iter().all(|&(_, h, t)| h.1 != 2 && t.1 != 0);
            let backward_ok = cycle.iter().all(|&(_, h, t)| t.1 != 2 && h.1 != 0);
            let oriented: Vec<(u32, Port, Port)> = if forward_ok {
                cycle
            } else if backward_ok {
                let mut rev: Vec<(u32, Port, Port)> = cycle.into_iter().map(|(e, h, t)| (e, t, h)).collect();
                rev.reverse();
                rev
            } else {
                return Err(bad(format!("under-strand positions inconsistent along the component of edge {start}")));
            };
            for &(e, h, t) in &oriented {
                if ends.insert(e, (h, t)).is_some() {
                    return Err(bad(format!("edge {e} traversed twice")));
                }
            }
            comps.push(oriented.into_iter().map(|(e, _, _)| e).collect());
        }
        for &l in &loops {
            comps.push(vec![l]);
        }
        comps.sort_by_key(|c| *c.iter().min().expect("nonempty component"));
        // rotate each traversal to start at its smallest label
        for c in comps.iter_mut() {
            let i = c.iter().position(|e| e == c.iter().min().unwrap()).unwrap();
            c.rotate_left(i);
        }
        if framings.len() != comps.len() {
            return Err(bad(format!("{} framings for {} components", framings.len(), comps.len())));
        }
        let mut component_of = HashMap::new();
        for (i, c) in comps.iter().enumerate() {
            for &e in c {
                component_of.insert(e, i);
            }
        }
        let components = comps.into_iter().zip(framings).map(|(edges, framing)| Component { edges, framing }).collect();
        Ok(Self { name: name.to_string(), crossings, loops, components, ends, component_of })
    }

    pub fn empty(name: &str) -> Self {
        Self::new(name, Vec::new(), Vec::new(), Vec::new()).expect("empty diagram is valid")
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn framings(&self) -> Vec<i64> {
        self.components.iter().map(|c| c.framing).collect()
    }

    pub fn with_framings(&self, framings: Vec<i64>) -> Result<Self> {
        Self::new(&self.name, self.crossings.clone(), self.loops.clone(), framings)
    }

    pub fn component_of_edge(&self, e: u32) -> usize {
        self.component_of[&e]
    }

    /// `(head, tail)` ports of a crossing edge.
    pub fn edge_ends(&self, e: u32) -> Option<(Port, Port)> {
        self.ends.get(&e).copied()
    }

    /// Whether position `pos` of crossing `ci` is the head (incoming end) of its edge.
    pub fn is_incoming(&self, ci: usize, pos: usize) -> bool {
        let e = self.crossings[ci][pos];
        self.ends[&e].0 == (ci, pos)
    }

    /// `+1` if the over-strand runs from position 3 to position 1, that is, enters at 3.
    pub fn crossing_sign(&self, ci: usize) -> i64 {
        if self.is_incoming(ci, 3) {
            1
        } else {
            -1
        }
    }

    /// Components of the under- and over-strand.
    pub fn crossing_components(&self, ci: usize) -> (usize, usize) {
        let x = self.crossings[ci];
        (self.component_of[&x[0]], self.component_of[&x[1]])
    }

    /// Sum of signs of the crossings of a component with itself (its blackboard framing).
    pub fn self_writhe(&self, comp: usize) -> i64 {
        (0..self.crossings.len())
            .filter(|&ci| self.crossing_components(ci) == (comp, comp))
            .map(|ci| self.crossing_sign(ci))
            .sum()
    }

    /// Framings on the diagonal, linking numbers off it.
    pub fn linking_matrix(&self) -> Result<IntMatrix> {
        let n = self.n_components();
        let mut twice = vec![vec![0i128; n]; n];
        for ci in 0..self.crossings.len() {
            let (u, o) = self.crossing_components(ci);
            if u != o {
                let s = self.crossing_sign(ci) as i128;
                twice[u][o] += s;
                twice[o][u] += s;
            }
        }
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    m.set(i, i, self.components[i].framing as i128);
                } else if twice[i][j] % 2 != 0 {
                    return Err(Error::MalformedDiagram(format!("odd crossing count between components {i} and {j}")));
                } else {
                    m.set(i, j, twice[i][j] / 2);
                }
            }
        }
        Ok(m)
    }

    /// `(b₊, b₋, b₀)` of the linking matrix.
    pub fn signature_counts(&self) -> Result<(usize, usize, usize)> {
        Ok(inertia(&self.linking_matrix()?.to_rows()))
    }

    /// Split union; labels of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Self, name: &str) -> Result<Self> {
        let shift = self.max_label();
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| x.map(|e| e + shift)));
        let mut loops = self.loops.clone();
        loops.extend(other.loops.iter().map(|e| e + shift));
        let mut framings = self.framings();
        framings.extend(other.framings());
        Self::new(name, crossings, loops, framings)
    }

    fn max_label(&self) -> u32 {
        self.crossings.iter().flatten().chain(&self.loops).copied().max().unwrap_or(0)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut name = String::from("unnamed");
        let mut framings: Option<Vec<i64>> = None;
        let mut components: Option<usize> = None;
        let mut crossings = Vec::new();
        let mut loops = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}: `{raw}`", lineno + 1));
            if let Some((key, value)) = line.split_once(':') {
                let value = value.trim();
                match key.trim() {
                    "name" => name = value.to_string(),
                    "components" => components = Some(value.parse().map_err(|_| err("bad component count"))?),
                    "framings" => {
                        let fs: std::result::Result<Vec<i64>, _> =
                            value.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(str::parse).collect();
                        framings = Some(fs.map_err(|_| err("bad framing"))?);
                    }
                    _ => {}
                }
                continue;
            }
            let (head, args) = line.split_once('(').ok_or_else(|| err("expected X(a,b,c,d) or Loop(e)"))?;
            let args = args.strip_suffix(')').ok_or_else(|| err("missing `)`"))?;
            let nums: Vec<u32> = args
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| err("bad edge label"))?;
            match (head.trim(), nums.as_slice()) {
                ("X", &[a, b, c, d]) => crossings.push([a, b, c, d]),
                ("Loop", &[e]) => loops.push(e),
                _ => return Err(err("expected X(a,b,c,d) or Loop(e)")),
            }
        }
        let framings = framings.unwrap_or_default();
        let d = Self::new(&name, crossings, loops, framings)?;
        if let Some(n) = components {
            if n != d.n_components() {
                return Err(Error::MalformedDiagram(format!("header says {n} components, found {}", d.n_components())));
            }
        }
        Ok(d)
    }

    pub fn to_text(&self) -> String {
        let fr: Vec<String> = self.framings().iter().map(|f| f.to_string()).collect();
        let mut s = format!("name: {}\ncomponents: {}\nframings: {}\n", self.name, self.n_components(), fr.join(" "));
        for x in &self.crossings {
            s.push_str(&format!("X({},{},{},{})\n", x[0], x[1], x[2], x[3]));
        }
        for l in &self.loops {
            s.push_str(&format!("Loop({l})\n"));
        }
        s
    }
}

impl fmt::Display for FramedLinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
