//! Chord interlacement graphs and the independence function
//! `f(K) = sum over independent vertex sets C of (-1)^|C|`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::states::{extreme_state, ExtremeStateData, Marker};

pub const WIDTH_CAP: usize = 64;
pub const BRUTEFORCE_CAP: usize = 25;

/// Chord endpoints around one circle, in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordDiagramOnCircle {
    pub circle: u32,
    pub slots: Vec<usize>,
}

impl ChordDiagramOnCircle {
    pub fn new(circle: u32, slots: Vec<usize>) -> Result<Self> {
        let mut count: HashMap<usize, usize> = HashMap::new();
        for &s in &slots {
            *count.entry(s).or_default() += 1;
        }
        if let Some((id, n)) = count.iter().find(|(_, &n)| n != 2) {
            return Err(Error::ChordWord(format!("chord {id} appears {n} times")));
        }
        Ok(Self { circle, slots })
    }

    /// Parses a cyclic word such as `abab` or `1 2 1 2`; each label must occur twice.
    /// Chords are numbered by first appearance.
    pub fn from_word(word: &str) -> Result<(Self, Vec<String>)> {
        let tokens: Vec<String> = if word.contains(|c: char| c.is_whitespace() || c == ',') {
            word.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect()
        } else {
            word.chars().map(String::from).collect()
        };
        if tokens.is_empty() {
            return Err(Error::ChordWord("empty word".into()));
        }
        let mut names: Vec<String> = Vec::new();
        let mut slots = Vec::with_capacity(tokens.len());
        for t in tokens {
            let id = match names.iter().position(|n| *n == t) {
                Some(i) => i,
                None => {
                    names.push(t);
                    names.len() - 1
                }
            };
            slots.push(id);
        }
        let circle = Self::new(0, slots).map_err(|_| {
            Error::ChordWord(format!("every chord label must appear exactly twice in {word:?}"))
        })?;
        Ok((circle, names))
    }

    pub fn chord_ids(&self) -> Vec<usize> {
        let mut ids = Vec::new();
        for &s in &self.slots {
            if !ids.contains(&s) {
                ids.push(s);
            }
        }
        ids
    }

    fn positions(&self, chord: usize) -> Result<(usize, usize)> {
        let mut it = self.slots.iter().enumerate().filter(|(_, &s)| s == chord).map(|(i, _)| i);
        match (it.next(), it.next()) {
            (Some(p), Some(q)) => Ok((p, q)),
            _ => Err(Error::ChordNotOnCircle(chord)),
        }
    }

    /// True when the endpoints alternate `c1 c2 c1 c2` around the circle.
    pub fn interleaves(&self, c1: usize, c2: usize) -> Result<bool> {
        let (p, q) = self.positions(c1)?;
        let (r, s) = self.positions(c2)?;
        let inside = |x: usize| p < x && x < q;
        Ok(c1 != c2 && inside(r) != inside(s))
    }

    pub fn intersection_graph(&self) -> Result<IntersectionGraph> {
        let ids = self.chord_ids();
        if ids.len() > WIDTH_CAP {
            return Err(Error::WidthCap { vertices: ids.len(), cap: WIDTH_CAP });
        }
        let mut g = IntersectionGraph::new(ids.len());
        g.labels = ids.iter().map(|&i| i as u64).collect();
        let pos: Vec<(usize, usize)> = ids.iter().map(|&i| self.positions(i)).collect::<Result<_>>()?;
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                let (p, q) = pos[i];
                let inside = |x: usize| p < x && x < q;
                if inside(pos[j].0) != inside(pos[j].1) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }
}

/// A simple graph on at most 64 vertices, stored as adjacency bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionGraph {
    /// External name of each vertex (a crossing index for diagram graphs).
    pub labels: Vec<u64>,
    adj: Vec<u64>,
}

impl IntersectionGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= WIDTH_CAP, "graph width {n} above {WIDTH_CAP}");
        Self {
            labels: (0..n as u64).collect(),
            adj: vec![0; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > WIDTH_CAP {
            return Err(Error::WidthCap { vertices: n, cap: WIDTH_CAP });
        }
        let mut g = Self::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::GraphSyntax(format!("edge {u}-{v} outside 0..{n}")));
            }
            if u == v {
                return Err(Error::GraphSyntax(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Parses `n; u v; u v ...` with `;` or newlines as separators and 0-based vertices.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut items = text
            .split([';', '\n'])
            .map(|s| s.split('#').next().unwrap_or("").trim())
            .filter(|s| !s.is_empty());
        let n: usize = items
            .next()
            .ok_or_else(|| Error::GraphSyntax("missing vertex count".into()))?
            .parse()
            .map_err(|_| Error::GraphSyntax("vertex count is not a number".into()))?;
        let mut edges = Vec::new();
        for item in items {
            let nums: Vec<usize> = item
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::GraphSyntax(format!("bad vertex {t:?}"))))
                .collect::<Result<_>>()?;
            match nums[..] {
                [u, v] => edges.push((u, v)),
                _ => return Err(Error::GraphSyntax(format!("expected two vertices in {item:?}"))),
            }
        }
        Self::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        let mut g = Self::new(m + n);
        for i in 0..m {
            for j in m..m + n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n > 2 {
            g.add_edge(0, n - 1);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|u| (u + 1..n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    fn full_mask(&self) -> u64 {
        low_bits(self.vertex_count())
    }

    /// Subgraph induced on the vertices in `mask`, renumbered in increasing order.
    pub fn induced(&self, mask: u64) -> Self {
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&v| mask >> v & 1 == 1).collect();
        let mut g = Self::new(keep.len());
        g.labels = keep.iter().map(|&v| self.labels[v]).collect();
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.vertex_count();
        let mut g = Self::new(n + other.vertex_count());
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(n + u, n + v);
        }
        g
    }

    /// Adds a new vertex joined to exactly the neighbours of `v`.
    pub fn with_twin(&self, v: usize) -> Self {
        let n = self.vertex_count();
        let mut g = Self::new(n + 1);
        for (a, b) in self.edges() {
            g.add_edge(a, b);
        }
        for u in 0..n {
            if self.has_edge(u, v) {
                g.add_edge(u, n);
            }
        }
        g
    }

    /// Vertex masks of the connected components.
    pub fn components(&self) -> Vec<u64> {
        components_in(&self.adj, self.full_mask())
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let mut colour = vec![None; n];
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let cu = colour[u].unwrap();
                for v in bits(self.adj[u]) {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            stack.push(v);
                        }
                        Some(cv) if cv == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// `n|u-v,u-v,...` with 0-based vertices.
    pub fn summary(&self) -> String {
        let edges: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("{}|{}", self.vertex_count(), edges.join(","))
    }
}

impl fmt::Display for IntersectionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn components_in(adj: &[u64], mask: u64) -> Vec<u64> {
    let mut rest = mask;
    let mut out = Vec::new();
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= adj[v];
            }
            frontier = next & mask & !comp;
            comp |= frontier;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

/// `f` by deletion/contraction `f(K) = f(K - v) - f(K - N[v])`, factoring over
/// components and memoizing on vertex subsets.
pub fn f_recursive(g: &IntersectionGraph) -> Result<i128> {
    let n = g.vertex_count();
    if n > WIDTH_CAP {
        return Err(Error::WidthCap { vertices: n, cap: WIDTH_CAP });
    }
    let mut memo = HashMap::new();
    Ok(f_mask(&g.adj, g.full_mask(), &mut memo))
}

fn f_mask(adj: &[u64], mask: u64, memo: &mut HashMap<u64, i128>) -> i128 {
    match mask.count_ones() {
        0 => return 1,
        1 => return 0,
        _ => {}
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let comps = components_in(adj, mask);
    let value = if comps.len() > 1 {
        let mut prod = 1;
        for c in comps {
            prod *= f_mask(adj, c, memo);
            if prod == 0 {
                break;
            }
        }
        prod
    } else {
        let v = bits(mask).max_by_key(|&v| (adj[v] & mask).count_ones()).unwrap();
        f_mask(adj, mask & !(1 << v), memo) - f_mask(adj, mask & !(adj[v] | 1 << v), memo)
    };
    memo.insert(mask, value);
    value
}

/// `f` by checking every vertex subset for independence.
pub fn f_bruteforce(g: &IntersectionGraph) -> Result<i128> {
    let n = g.vertex_count();
    if n > BRUTEFORCE_CAP {
        return Err(Error::WidthCap { vertices: n, cap: BRUTEFORCE_CAP });
    }
    // independent[m] builds on m without its lowest vertex.
    let mut independent = vec![false; 1 << n];
    independent[0] = true;
    let mut total: i128 = 1;
    for m in 1u64..1 << n {
        let v = m.trailing_zeros() as usize;
        let rest = m & (m - 1);
        if independent[rest as usize] && g.adj[v] & rest == 0 {
            independent[m as usize] = true;
            total += if m.count_ones() % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(total)
}

/// Chords with both ends on a circle, listed in traversal order, one diagram per circle.
pub fn circle_diagrams(data: &ExtremeStateData) -> Vec<ChordDiagramOnCircle> {
    let res = &data.resolution;
    res.circles
        .iter()
        .enumerate()
        .map(|(ci, circle)| {
            let mut slots = vec![None; circle.steps.len()];
            for &v in &data.same_circle_chords {
                let ch = &res.chords[v];
                if ch.ends[0].circle == ci {
                    for e in ch.ends {
                        slots[e.position] = Some(v);
                    }
                }
            }
            ChordDiagramOnCircle {
                circle: circle.id,
                slots: slots.into_iter().flatten().collect(),
            }
        })
        .collect()
}

/// Interlacement graph of the same-circle chords; vertex labels are crossing indices.
pub fn intersection_graph(data: &ExtremeStateData) -> Result<IntersectionGraph> {
    let verts = &data.same_circle_chords;
    if verts.len() > WIDTH_CAP {
        return Err(Error::WidthCap { vertices: verts.len(), cap: WIDTH_CAP });
    }
    let mut g = IntersectionGraph::new(verts.len());
    g.labels = verts.iter().map(|&v| v as u64).collect();
    let index: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for cd in circle_diagrams(data) {
        let ids = cd.chord_ids();
        for (i, &x) in ids.iter().enumerate() {
            for &y in &ids[i + 1..] {
                if cd.interleaves(x, y)? {
                    g.add_edge(index[&x], index[&y]);
                }
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremeCoefficientReport {
    pub which: Marker,
    pub circle_count: usize,
    /// `max(s_A)` or `min(s_B)`.
    pub degree: i64,
    pub f_value: i128,
    pub signed_coefficient: i128,
    /// `(circle id, f of the graph of chords on that circle)`.
    pub circle_factors: Vec<(u32, i128)>,
    pub adequate: bool,
    pub bipartite: bool,
    pub graph: IntersectionGraph,
}

pub fn extreme_coefficient(d: &PlanarDiagram, which: Marker) -> Result<ExtremeCoefficientReport> {
    extreme_coefficient_of(&extreme_state(d, which))
}

pub fn extreme_coefficient_of(data: &ExtremeStateData) -> Result<ExtremeCoefficientReport> {
    let graph = intersection_graph(data)?;
    let mut circle_factors = Vec::new();
    for cd in circle_diagrams(data) {
        circle_factors.push((cd.circle, f_recursive(&cd.intersection_graph()?)?));
    }
    let f_value: i128 = circle_factors.iter().map(|(_, f)| f).product();
    if f_value != f_recursive(&graph)? {
        return Err(Error::Internal("f is not multiplicative over circles".into()));
    }
    let k = data.circle_count();
    let signed_coefficient = if k % 2 == 1 { f_value } else { -f_value };
    Ok(ExtremeCoefficientReport {
        which: data.which,
        circle_count: k,
        degree: data.extreme_degree,
        f_value,
        signed_coefficient,
        circle_factors,
        adequate: data.same_circle_chords.is_empty(),
        bipartite: graph.is_bipartite(),
        graph,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedSpread {
    pub bracket_spread_bound: i64,
    pub jones_spread_bound: i64,
    /// Both extreme coefficients are nonzero, so the bound is the spread.
    pub exact: bool,
}

/// Extreme-states bound, lowered by 4 on each side whose extreme coefficient vanishes
/// (the bracket is supported on one residue class mod 4).
pub fn refined_spread(d: &PlanarDiagram) -> Result<RefinedSpread> {
    let a = extreme_coefficient(d, Marker::A)?;
    let b = extreme_coefficient(d, Marker::B)?;
    let mut bound = a.degree - b.degree;
    if a.signed_coefficient == 0 {
        bound -= 4;
    }
    if b.signed_coefficient == 0 {
        bound -= 4;
    }
    Ok(RefinedSpread {
        bracket_spread_bound: bound,
        jones_spread_bound: bound / 4,
        exact: a.signed_coefficient != 0 && b.signed_coefficient != 0,
    })
}
