//! Kauffman states: resolutions, the brute-force bracket, and the two extreme states.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{HalfEdge, PlanarDiagram};
use crate::error::{Error, Result};
use crate::polynomial::IntLaurent;

/// Largest crossing count accepted by [`bracket_bruteforce`] unless overridden.
pub const DEFAULT_BRACKET_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Marker {
    A,
    B,
}

impl Marker {
    pub fn other(self) -> Self {
        match self {
            Marker::A => Marker::B,
            Marker::B => Marker::A,
        }
    }

    /// The position joined to `pos` by this smoothing. A joins 0-1 and 2-3,
    /// B joins 1-2 and 3-0.
    pub fn pair(self, pos: usize) -> usize {
        match (self, pos) {
            (Marker::A, 0) => 1,
            (Marker::A, 1) => 0,
            (Marker::A, 2) => 3,
            (Marker::A, 3) => 2,
            (Marker::B, 0) => 3,
            (Marker::B, 1) => 2,
            (Marker::B, 2) => 1,
            (Marker::B, 3) => 0,
            _ => unreachable!("position out of range"),
        }
    }
}

impl std::fmt::Display for Marker {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Marker::A => "A",
            Marker::B => "B",
        })
    }
}

impl std::str::FromStr for Marker {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" => Ok(Marker::A),
            "B" | "b" => Ok(Marker::B),
            _ => Err(format!("expected A or B, got {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct State {
    pub markers: Vec<Marker>,
}

impl State {
    pub fn all(c: usize, m: Marker) -> Self {
        State { markers: vec![m; c] }
    }

    /// Bit `i` set means crossing `i` carries a B marker.
    pub fn from_bits(c: usize, bits: u64) -> Self {
        State {
            markers: (0..c)
                .map(|i| if bits >> i & 1 == 1 { Marker::B } else { Marker::A })
                .collect(),
        }
    }

    pub fn a(&self) -> usize {
        self.markers.iter().filter(|&&m| m == Marker::A).count()
    }

    pub fn b(&self) -> usize {
        self.markers.len() - self.a()
    }
}

/// One passage of a state circle through a smoothed crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub enter: HalfEdge,
    pub leave: HalfEdge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateCircle {
    /// Smallest edge label on the circle.
    pub id: u32,
    /// Edge labels in traversal order, starting from `id`.
    pub edges: Vec<u32>,
    /// `steps[i]` is the smoothing arc passed just after `edges[i]`.
    pub steps: Vec<Step>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    /// Index into [`StateResolution::circles`].
    pub circle: usize,
    /// Index into that circle's `steps`.
    pub position: usize,
}

/// The chord left behind at a smoothed crossing, joining its two arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chord {
    pub crossing: usize,
    pub marker: Marker,
    pub ends: [Attachment; 2],
}

impl Chord {
    pub fn same_circle(&self) -> bool {
        self.ends[0].circle == self.ends[1].circle
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateResolution {
    /// Sorted by circle id.
    pub circles: Vec<StateCircle>,
    /// Indexed by crossing.
    pub chords: Vec<Chord>,
}

impl StateResolution {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    /// Circle index holding each edge (by edge index in `PlanarDiagram::edges`).
    pub fn circle_of_edges(&self, d: &PlanarDiagram) -> Vec<usize> {
        let mut out = vec![usize::MAX; d.edges().len()];
        for (ci, circle) in self.circles.iter().enumerate() {
            for step in &circle.steps {
                out[d.edge_of(step.enter)] = ci;
            }
        }
        out
    }
}

pub fn resolve(d: &PlanarDiagram, s: &State) -> StateResolution {
    let n = 4 * d.crossing_count();
    let jump = |h: HalfEdge| HalfEdge::new(h.crossing(), s.markers[h.crossing()].pair(h.pos()));
    // Each traversal leaves through a half-edge, crosses its edge, and enters
    // the next crossing; a half-edge is visited either as an exit or as an entry.
    let mut used = vec![false; n];
    let mut raw: Vec<(Vec<u32>, Vec<Step>)> = Vec::new();
    for start in 0..n {
        if used[start] {
            continue;
        }
        let mut edges = Vec::new();
        let mut steps = Vec::new();
        let mut out = HalfEdge(start);
        loop {
            used[out.0] = true;
            let enter = d.partner(out);
            used[enter.0] = true;
            let leave = jump(enter);
            edges.push(d.label(out));
            steps.push(Step { enter, leave });
            out = leave;
            if out.0 == start {
                break;
            }
        }
        let k = (0..edges.len()).min_by_key(|&i| edges[i]).unwrap_or(0);
        edges.rotate_left(k);
        steps.rotate_left(k);
        raw.push((edges, steps));
    }
    raw.sort_by_key(|(e, _)| e[0]);

    let c = d.crossing_count();
    let mut ends: Vec<Vec<Attachment>> = vec![Vec::with_capacity(2); c];
    let circles: Vec<StateCircle> = raw
        .into_iter()
        .enumerate()
        .map(|(ci, (edges, steps))| {
            for (p, st) in steps.iter().enumerate() {
                ends[st.enter.crossing()].push(Attachment { circle: ci, position: p });
            }
            StateCircle { id: edges[0], edges, steps }
        })
        .collect();
    let chords = ends
        .into_iter()
        .enumerate()
        .map(|(v, e)| Chord {
            crossing: v,
            marker: s.markers[v],
            ends: [e[0], e[1]],
        })
        .collect();
    StateResolution { circles, chords }
}

/// `A^{a-b} (-A^2 - A^{-2})^{|s|-1}`.
pub fn phi(s: &State, res: &StateResolution) -> IntLaurent {
    IntLaurent::delta_power(res.circle_count() as u32 - 1).shift(s.a() as i64 - s.b() as i64)
}

pub fn max_of_state(s: &State, res: &StateResolution) -> i64 {
    s.a() as i64 - s.b() as i64 + 2 * res.circle_count() as i64 - 2
}

pub fn min_of_state(s: &State, res: &StateResolution) -> i64 {
    s.a() as i64 - s.b() as i64 - 2 * res.circle_count() as i64 + 2
}

pub fn bracket_bruteforce(d: &PlanarDiagram) -> Result<IntLaurent> {
    bracket_bruteforce_with_cap(d, DEFAULT_BRACKET_CAP)
}

/// Sums `phi` over all `2^c` states. States are grouped by `(b, |s|)` first,
/// so the polynomial arithmetic happens once per group.
pub fn bracket_bruteforce_with_cap(d: &PlanarDiagram, cap: usize) -> Result<IntLaurent> {
    let c = d.crossing_count();
    if c > cap || c > 40 {
        return Err(Error::CapExceeded { crossings: c, cap });
    }
    let counts = state_counts(d);
    let mut total = IntLaurent::zero();
    for (b, row) in counts.iter().enumerate() {
        for (k, &n) in row.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let term = IntLaurent::delta_power(k as u32 - 1).shift(c as i64 - 2 * b as i64);
            total += &(&term * &IntLaurent::monomial(0, BigInt::from(n)));
        }
    }
    Ok(total)
}

/// `counts[b][k]`: number of states with `b` B-markers and `k` circles.
fn state_counts(d: &PlanarDiagram) -> Vec<Vec<u64>> {
    let c = d.crossing_count();
    let ne = d.edges().len();
    let pairs: Vec<[[usize; 2]; 4]> = (0..c)
        .map(|v| {
            let e = |p: usize| d.edge_of(HalfEdge::new(v, p));
            [[e(0), e(1)], [e(2), e(3)], [e(1), e(2)], [e(3), e(0)]]
        })
        .collect();
    let width = ne + 2;
    let total: u64 = 1 << c;
    let chunk: u64 = 1 << 12.min(c);
    let empty = || vec![0u64; (c + 1) * width];
    let flat = (0..total / chunk)
        .into_par_iter()
        .fold(empty, |mut acc, block| {
            let mut parent = vec![0usize; ne];
            for bits in block * chunk..(block + 1) * chunk {
                for (i, p) in parent.iter_mut().enumerate() {
                    *p = i;
                }
                let mut circles = ne;
                for (v, pv) in pairs.iter().enumerate() {
                    let off = if bits >> v & 1 == 1 { 2 } else { 0 };
                    for [x, y] in &pv[off..off + 2] {
                        let (rx, ry) = (find(&mut parent, *x), find(&mut parent, *y));
                        if rx != ry {
                            parent[rx] = ry;
                            circles -= 1;
                        }
                    }
                }
                acc[bits.count_ones() as usize * width + circles] += 1;
            }
            acc
        })
        .reduce(empty, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });
    flat.chunks(width).map(|r| r.to_vec()).collect()
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremeStateData {
    pub which: Marker,
    pub resolution: StateResolution,
    /// Crossings whose chord has both ends on one circle.
    pub same_circle_chords: Vec<usize>,
    /// `max(s_A)` for the A side, `min(s_B)` for the B side.
    pub extreme_degree: i64,
}

impl ExtremeStateData {
    pub fn circle_count(&self) -> usize {
        self.resolution.circle_count()
    }
}

pub fn extreme_state(d: &PlanarDiagram, which: Marker) -> ExtremeStateData {
    let s = State::all(d.crossing_count(), which);
    let resolution = resolve(d, &s);
    let same_circle_chords = resolution
        .chords
        .iter()
        .filter(|ch| ch.same_circle())
        .map(|ch| ch.crossing)
        .collect();
    let extreme_degree = match which {
        Marker::A => max_of_state(&s, &resolution),
        Marker::B => min_of_state(&s, &resolution),
    };
    ExtremeStateData {
        which,
        resolution,
        same_circle_chords,
        extreme_degree,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremeBounds {
    pub circles_a: usize,
    pub circles_b: usize,
    pub max_bound: i64,
    pub min_bound: i64,
    pub spread_bound: i64,
}

pub fn extreme_bounds(d: &PlanarDiagram) -> ExtremeBounds {
    let c = d.crossing_count() as i64;
    let sa = extreme_state(d, Marker::A).circle_count();
    let sb = extreme_state(d, Marker::B).circle_count();
    let max_bound = c + 2 * sa as i64 - 2;
    let min_bound = -(c + 2 * sb as i64 - 2);
    ExtremeBounds {
        circles_a: sa,
        circles_b: sb,
        max_bound,
        min_bound,
        spread_bound: max_bound - min_bound,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    pub chi_f: i64,
    pub genus_f: i64,
}

/// Euler characteristic and genus of the closed surface built from the two
/// extreme states.
pub fn surface_characteristics(d: &PlanarDiagram) -> Result<SurfaceData> {
    let b = extreme_bounds(d);
    let c = d.crossing_count() as i64;
    let chi_f = (b.circles_a + b.circles_b) as i64 - c;
    if chi_f % 2 != 0 {
        return Err(Error::Internal(format!("odd Euler characteristic {chi_f}")));
    }
    let genus_f = (2 - chi_f) / 2;
    if 4 * c - 4 * genus_f != b.spread_bound {
        return Err(Error::Internal(format!(
            "4c - 4g = {} but the extreme-states bound is {}",
            4 * c - 4 * genus_f,
            b.spread_bound
        )));
    }
    Ok(SurfaceData { chi_f, genus_f })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JonesData {
    pub bracket: IntLaurent,
    /// `(-A^3)^{-w} <D>`.
    pub normalized: IntLaurent,
    /// `None` when the bracket vanishes.
    pub jones_spread: Option<u64>,
}

pub fn jones_data(d: &PlanarDiagram, cap: usize) -> Result<JonesData> {
    let bracket = bracket_bruteforce_with_cap(d, cap)?;
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let normalized = bracket.shift(-3 * w) * IntLaurent::monomial(0, sign);
    let jones_spread = bracket.spread().ok().map(|s| s / 4);
    Ok(JonesData {
        bracket,
        normalized,
        jones_spread,
    })
}
