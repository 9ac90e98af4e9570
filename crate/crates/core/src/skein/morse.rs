//! Link diagrams from a bottom-to-top sequence of cups, caps and crossings.
//!
//! Strands occupy positions `0..width`. `Cup(i)` opens two strands at `i, i+1`,
//! `Cap(i)` closes the strands at `i, i+1`, and `Cross { pos, sw_over }` crosses
//! the strands at `pos, pos+1`, with the strand entering bottom-left passing
//! over when `sw_over` holds. Each component is oriented so that it leaves its
//! first cup upward along the left leg; with both strands moving up, a
//! crossing with `sw_over` is positive.

use crate::error::{Error, Result};

use super::diagram::FramedLinkDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorseOp {
    Cup(usize),
    Cap(usize),
    Cross { pos: usize, sw_over: bool },
}

// leg numbering at a crossing, counterclockwise
const SW: usize = 0;
const SE: usize = 1;
const NE: usize = 2;
const NW: usize = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorseDiagram {
    ops: Vec<MorseOp>,
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    Cup,
    Cap,
    Cross(bool),
}

impl MorseDiagram {
    pub fn new(ops: Vec<MorseOp>) -> Result<Self> {
        let d = Self { ops };
        d.widths()?;
        Ok(d)
    }

    pub fn ops(&self) -> &[MorseOp] {
        &self.ops
    }

    /// Closure of a braid word; generator `i > 0` is `σ_i` (positive), `i < 0` its inverse.
    pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Self> {
        let mut ops: Vec<MorseOp> = (0..strands).map(MorseOp::Cup).collect();
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= strands {
                return Err(Error::InvalidArgument(format!("braid generator {g} on {strands} strands")));
            }
            ops.push(MorseOp::Cross { pos: i - 1, sw_over: g > 0 });
        }
        ops.extend((0..strands).rev().map(MorseOp::Cap));
        Self::new(ops)
    }

    fn widths(&self) -> Result<Vec<usize>> {
        let mut w = 0usize;
        let mut out = Vec::with_capacity(self.ops.len());
        for (k, op) in self.ops.iter().enumerate() {
            let bad = |msg: &str| Error::MalformedDiagram(format!("op {k} ({op:?}): {msg}"));
            match *op {
                MorseOp::Cup(i) => {
                    if i > w {
                        return Err(bad("cup position beyond width"));
                    }
                    w += 2;
                }
                MorseOp::Cap(i) | MorseOp::Cross { pos: i, .. } => {
                    if i + 1 >= w {
                        return Err(bad("position beyond width"));
                    }
                    if matches!(op, MorseOp::Cap(_)) {
                        w -= 2;
                    }
                }
            }
            out.push(w);
        }
        if w != 0 {
            return Err(Error::MalformedDiagram(format!("{w} strands left open")));
        }
        Ok(out)
    }

    /// Graph of the diagram: one vertex per op, `links[v][leg] = (w, leg')`.
    fn graph(&self) -> (Vec<Kind>, Vec<[(usize, usize); 4]>) {
        let mut kinds = Vec::with_capacity(self.ops.len());
        let mut links = vec![[(usize::MAX, 0); 4]; self.ops.len()];
        let mut open: Vec<(usize, usize)> = Vec::new();
        let join = |a: (usize, usize), b: (usize, usize), links: &mut Vec<[(usize, usize); 4]>| {
            links[a.0][a.1] = b;
            links[b.0][b.1] = a;
        };
        for (v, op) in self.ops.iter().enumerate() {
            match *op {
                MorseOp::Cup(i) => {
                    kinds.push(Kind::Cup);
                    open.splice(i..i, [(v, 0), (v, 1)]);
                }
                MorseOp::Cap(i) => {
                    kinds.push(Kind::Cap);
                    let l = open[i];
                    let r = open[i + 1];
                    join(l, (v, 0), &mut links);
                    join(r, (v, 1), &mut links);
                    open.drain(i..i + 2);
                }
                MorseOp::Cross { pos, sw_over } => {
                    kinds.push(Kind::Cross(sw_over));
                    join(open[pos], (v, SW), &mut links);
                    join(open[pos + 1], (v, SE), &mut links);
                    open[pos] = (v, NW);
                    open[pos + 1] = (v, NE);
                }
            }
        }
        (kinds, links)
    }

    pub fn component_count(&self) -> usize {
        self.component_cups().len()
    }

    /// Visits `(vertex, in_leg, out_leg)` starting by leaving cup `start` along leg 0.
    fn walk(kinds: &[Kind], links: &[[(usize, usize); 4]], start: usize) -> Vec<(usize, usize, usize)> {
        let mut out = vec![(start, 1, 0)];
        let mut cur = links[start][0];
        while cur != (start, 1) {
            let (v, l) = cur;
            let o = match kinds[v] {
                Kind::Cup | Kind::Cap => 1 - l,
                Kind::Cross(_) => (l + 2) % 4,
            };
            out.push((v, l, o));
            cur = links[v][o];
        }
        out
    }

    /// Cup index of each component, in component order.
    pub fn component_cups(&self) -> Vec<Vec<usize>> {
        let (kinds, links) = self.graph();
        let mut owner = vec![usize::MAX; kinds.len()];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for v in 0..kinds.len() {
            if matches!(kinds[v], Kind::Cup) && owner[v] == usize::MAX {
                let c = comps.len();
                let mut cups = Vec::new();
                for (w, _, _) in Self::walk(&kinds, &links, v) {
                    if matches!(kinds[w], Kind::Cup) {
                        owner[w] = c;
                        cups.push(w);
                    }
                }
                cups.sort_unstable();
                comps.push(cups);
            }
        }
        comps
    }

    /// PD diagram with the given framings, one per component in first-cup order.
    pub fn to_diagram(&self, name: &str, framings: &[i64]) -> Result<FramedLinkDiagram> {
        let (kinds, links) = self.graph();
        let n_ops = kinds.len();
        let mut done = vec![false; n_ops];
        // label and direction (incoming?) of every crossing leg
        let mut leg_label = vec![[0u32; 4]; n_ops];
        let mut leg_in = vec![[false; 4]; n_ops];
        let mut loops = Vec::new();
        let mut next_label = 1u32;
        let mut comp_first_label = Vec::new();
        for v in 0..n_ops {
            if !matches!(kinds[v], Kind::Cup) || done[v] {
                continue;
            }
            let path = Self::walk(&kinds, &links, v);
            let passes: Vec<(usize, usize, usize)> =
                path.iter().copied().filter(|&(w, _, _)| matches!(kinds[w], Kind::Cross(_))).collect();
            for &(w, _, _) in &path {
                if !matches!(kinds[w], Kind::Cross(_)) {
                    done[w] = true;
                }
            }
            comp_first_label.push(next_label);
            if passes.is_empty() {
                loops.push(next_label);
                next_label += 1;
                continue;
            }
            let n = passes.len() as u32;
            let base = next_label;
            // edge into pass 0 is `base`, edge out of pass i is base+i+1 (wrapping to base)
            for (i, &(w, li, lo)) in passes.iter().enumerate() {
                let into = base + i as u32;
                let out = if i as u32 + 1 == n { base } else { base + i as u32 + 1 };
                leg_label[w][li] = into;
                leg_in[w][li] = true;
                leg_label[w][lo] = out;
                leg_in[w][lo] = false;
            }
            next_label += n;
        }
        if framings.len() != comp_first_label.len() {
            return Err(Error::InvalidArgument(format!(
                "{} framings for {} components",
                framings.len(),
                comp_first_label.len()
            )));
        }
        let mut crossings = Vec::new();
        for v in 0..n_ops {
            if let Kind::Cross(sw_over) = kinds[v] {
                let under = if sw_over { [SE, NW] } else { [SW, NE] };
                let start = if leg_in[v][under[0]] { under[0] } else { under[1] };
                crossings.push([0, 1, 2, 3].map(|k| leg_label[v][(start + k) % 4]));
            }
        }
        // the PD diagram numbers components by smallest label, which here is
        // the first label handed out, so the order agrees with first-cup order
        FramedLinkDiagram::new(name, crossings, loops, framings.to_vec())
    }

    /// Blackboard-parallel 2-cable of the components flagged in `double`
    /// (first-cup order). Crossings between bundles become grids.
    pub fn doubled(&self, double: &[bool]) -> Result<Self> {
        self.cable(double, None)
    }

    /// Whitehead doubles of the listed components: the 2-cable with a clasp
    /// inserted right after the component's first cup. `positive_clasp`
    /// picks the clasp sign.
    pub fn whitehead_doubled(&self, comps: &[usize], positive_clasp: bool) -> Result<Self> {
        let n = self.component_cups().len();
        let mut flags = vec![false; n];
        for &c in comps {
            if c >= n {
                return Err(Error::InvalidArgument(format!("component {c} of {n}")));
            }
            flags[c] = true;
        }
        self.cable(&flags, Some(positive_clasp))
    }

    fn cable(&self, double: &[bool], clasp: Option<bool>) -> Result<Self> {
        let comps = self.component_cups();
        if double.len() != comps.len() {
            return Err(Error::InvalidArgument(format!("{} flags for {} components", double.len(), comps.len())));
        }
        let mut comp_of_cup = vec![usize::MAX; self.ops.len()];
        for (c, cups) in comps.iter().enumerate() {
            for &v in cups {
                comp_of_cup[v] = c;
            }
        }
        let width = |c: usize| if double[c] { 2 } else { 1 };
        // component at each strand position
        let mut strands: Vec<usize> = Vec::new();
        let offset = |strands: &[usize], i: usize| strands[..i].iter().map(|&c| width(c)).sum::<usize>();
        let mut ops = Vec::new();
        for (v, op) in self.ops.iter().enumerate() {
            match *op {
                MorseOp::Cup(i) => {
                    let c = comp_of_cup[v];
                    let ni = offset(&strands, i);
                    ops.push(MorseOp::Cup(ni));
                    if double[c] {
                        ops.push(MorseOp::Cup(ni + 1));
                        if let (Some(pc), true) = (clasp, comps[c][0] == v) {
                            ops.extend([
                                MorseOp::Cup(ni + 1),
                                MorseOp::Cross { pos: ni + 2, sw_over: !pc },
                                MorseOp::Cross { pos: ni + 1, sw_over: pc },
                                MorseOp::Cap(ni),
                            ]);
                        }
                    }
                    strands.splice(i..i, [c, c]);
                }
                MorseOp::Cap(i) => {
                    let c = strands[i];
                    let ni = offset(&strands, i);
                    if double[c] {
                        ops.push(MorseOp::Cap(ni + 1));
                    }
                    ops.push(MorseOp::Cap(ni));
                    strands.drain(i..i + 2);
                }
                MorseOp::Cross { pos, sw_over } => {
                    let ni = offset(&strands, pos);
                    let (ws, wt) = (width(strands[pos]), width(strands[pos + 1]));
                    for tj in 0..wt {
                        for si in (0..ws).rev() {
                            ops.push(MorseOp::Cross { pos: ni + si + tj, sw_over });
                        }
                    }
                    strands.swap(pos, pos + 1);
                }
            }
        }
        Self::new(ops)
    }

    /// Largest number of strands at any level.
    pub fn max_width(&self) -> usize {
        self.widths().map(|w| w.into_iter().max().unwrap_or(0)).unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_closures() {
        let tref = MorseDiagram::braid_closure(2, &[1, 1, 1]).unwrap().to_diagram("t", &[0]).unwrap();
        assert_eq!(tref.n_components(), 1);
        assert_eq!(tref.self_writhe(0), 3);
        let hopf = MorseDiagram::braid_closure(2, &[1, 1]).unwrap().to_diagram("h", &[0, 0]).unwrap();
        assert_eq!(hopf.linking_matrix().unwrap().get(0, 1), 1);
        let fig8 = MorseDiagram::braid_closure(3, &[1, -2, 1, -2]).unwrap().to_diagram("f", &[0]).unwrap();
        assert_eq!(fig8.self_writhe(0), 0);
        assert!(MorseDiagram::braid_closure(2, &[2]).is_err());
    }

    #[test]
    fn borromean_and_doubles() {
        let b = MorseDiagram::braid_closure(3, &[1, -2, 1, -2, 1, -2]).unwrap();
        let d = b.to_diagram("b", &[0, 0, 0]).unwrap();
        assert_eq!(d.n_components(), 3);
        assert!(d.linking_matrix().unwrap().is_zero());
        for c in 0..3 {
            assert_eq!(d.self_writhe(c), 0);
        }
        for pc in [true, false] {
            let w = b.whitehead_doubled(&[0], pc).unwrap();
            let wd = w.to_diagram("w", &[0, 0, 0]).unwrap();
            assert_eq!(wd.n_components(), 3);
            assert_eq!(wd.crossings().len(), 2 + 4 * 2 + 2);
            assert!(wd.linking_matrix().unwrap().is_zero());
            let ww = b.whitehead_doubled(&[0, 1], pc).unwrap().to_diagram("ww", &[0, 0, 0]).unwrap();
            assert_eq!(ww.n_components(), 3);
            // untwisted: the self-writhe of a Whitehead double is the clasp contribution alone
            assert_eq!(ww.self_writhe(0).abs(), 2);
        }
        let cab = b.doubled(&[true, false, false]).unwrap();
        assert_eq!(cab.component_count(), 4);
    }

    #[test]
    fn malformed_sequences() {
        assert!(MorseDiagram::new(vec![MorseOp::Cup(0)]).is_err());
        assert!(MorseDiagram::new(vec![MorseOp::Cap(0)]).is_err());
        assert!(MorseDiagram::new(vec![MorseOp::Cup(1)]).is_err());
    }
}
