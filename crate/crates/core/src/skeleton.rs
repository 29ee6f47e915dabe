//! The non-alternating skeleton: the graph dual to the edges that pass over (or
//! under) at both ends, its splitting into curve families, and the spread bounds
//! read off from it.

use serde::{Deserialize, Serialize};

use crate::diagram::{HalfEdge, PlanarDiagram};
use crate::error::{Error, Result};
use crate::states::{extreme_bounds, extreme_state, Marker};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Alternating,
    Over,
    Under,
}

impl EdgeKind {
    pub fn symbol(self) -> char {
        match self {
            EdgeKind::Alternating => '=',
            EdgeKind::Over => '+',
            EdgeKind::Under => '-',
        }
    }
}

/// Kind of every edge, indexed like `PlanarDiagram::edges`.
pub fn classify_edges(d: &PlanarDiagram) -> Vec<EdgeKind> {
    d.edges()
        .iter()
        .map(|e| match (e.ends[0].is_over(), e.ends[1].is_over()) {
            (true, true) => EdgeKind::Over,
            (false, false) => EdgeKind::Under,
            _ => EdgeKind::Alternating,
        })
        .collect()
}

pub fn non_alternating_count(d: &PlanarDiagram) -> usize {
    classify_edges(d).iter().filter(|k| **k != EdgeKind::Alternating).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonEdge {
    /// Index into `PlanarDiagram::edges`.
    pub edge: usize,
    pub label: u32,
    pub kind: EdgeKind,
    /// The boundary dart of this edge in each adjacent face; end `2k + i` of
    /// skeleton edge `k` sits in the face of `darts[i]`.
    pub darts: [HalfEdge; 2],
    pub vertices: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonVertex {
    pub face: usize,
    /// Edge ends around the vertex in anticlockwise order.
    pub rotation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skeleton {
    pub vertices: Vec<SkeletonVertex>,
    pub edges: Vec<SkeletonEdge>,
    /// Connected components.
    pub r: usize,
    /// Complementary regions, `r + 1 - v + e`.
    pub n: usize,
}

impl Skeleton {
    pub fn v(&self) -> usize {
        self.vertices.len()
    }

    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn end_kind(&self, end: usize) -> EdgeKind {
        self.edges[end / 2].kind
    }

    pub fn end_vertex(&self, end: usize) -> usize {
        self.edges[end / 2].vertices[end % 2]
    }

    /// Rotation at `v` as signed edge labels, e.g. `+12`.
    pub fn signed_rotation(&self, v: usize) -> Vec<String> {
        self.vertices[v]
            .rotation
            .iter()
            .map(|&end| {
                let e = &self.edges[end / 2];
                format!("{}{}", e.kind.symbol(), e.label)
            })
            .collect()
    }
}

pub fn build_skeleton(d: &PlanarDiagram) -> Result<Skeleton> {
    let report = d.validate();
    if !report.connected {
        return Err(Error::Hypothesis("diagram is split".into()));
    }
    if !report.reduced {
        return Err(Error::Hypothesis(format!(
            "diagram is not reduced (nugatory crossings {:?})",
            report.nugatory_crossings
        )));
    }
    let kinds = classify_edges(d);
    let mut face_vertex = vec![usize::MAX; d.faces().len()];
    let mut vertices: Vec<SkeletonVertex> = Vec::new();
    let mut edges: Vec<SkeletonEdge> = Vec::new();
    let mut end_of_dart = std::collections::HashMap::new();
    for (i, e) in d.edges().iter().enumerate() {
        if kinds[i] == EdgeKind::Alternating {
            continue;
        }
        let k = edges.len();
        let darts = [e.ends[0], e.ends[1]];
        let mut vs = [0; 2];
        for (side, &dart) in darts.iter().enumerate() {
            let f = d.face_of(dart);
            if face_vertex[f] == usize::MAX {
                face_vertex[f] = vertices.len();
                vertices.push(SkeletonVertex { face: f, rotation: Vec::new() });
            }
            vs[side] = face_vertex[f];
            end_of_dart.insert(dart, 2 * k + side);
        }
        edges.push(SkeletonEdge {
            edge: i,
            label: e.label,
            kind: kinds[i],
            darts,
            vertices: vs,
        });
    }
    // Face walks keep the face on their right, so they run clockwise around the
    // skeleton vertex inside; reversing gives the anticlockwise rotation.
    for vert in &mut vertices {
        vert.rotation = d.faces()[vert.face]
            .iter()
            .rev()
            .filter_map(|dart| end_of_dart.get(dart).copied())
            .collect();
    }
    let mut sk = Skeleton { vertices, edges, r: 0, n: 0 };
    for (v, vert) in sk.vertices.iter().enumerate() {
        let rot = &vert.rotation;
        for (i, &end) in rot.iter().enumerate() {
            if sk.end_kind(end) == sk.end_kind(rot[(i + 1) % rot.len()]) {
                return Err(Error::Internal(format!(
                    "+ and - edges do not alternate around skeleton vertex {v}"
                )));
            }
        }
    }
    sk.r = graph_components(&sk);
    sk.n = sk.r + 1 + sk.e() - sk.v();
    Ok(sk)
}

fn graph_components(sk: &Skeleton) -> usize {
    let mut parent: Vec<usize> = (0..sk.v()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = sk.v();
    for e in &sk.edges {
        let (a, b) = (find(&mut parent, e.vertices[0]), find(&mut parent, e.vertices[1]));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCurves {
    pub which: Marker,
    /// Each curve lists edge ends in order: across an edge, then through a vertex.
    pub curves: Vec<Vec<usize>>,
}

impl SplitCurves {
    pub fn count(&self) -> usize {
        self.curves.len()
    }
}

/// Separates every vertex by joining each `+` end to the next `-` end
/// anticlockwise (A) or clockwise (B), and traces the resulting closed curves.
pub fn split_skeleton(sk: &Skeleton, which: Marker) -> SplitCurves {
    let ends = 2 * sk.e();
    let mut partner = vec![usize::MAX; ends];
    for vert in &sk.vertices {
        let rot = &vert.rotation;
        let k = rot.len();
        for (i, &end) in rot.iter().enumerate() {
            if sk.end_kind(end) != EdgeKind::Over {
                continue;
            }
            let next = match which {
                Marker::A => rot[(i + 1) % k],
                Marker::B => rot[(i + k - 1) % k],
            };
            partner[end] = next;
            partner[next] = end;
        }
    }
    let mut used = vec![false; ends];
    let mut curves = Vec::new();
    for start in 0..ends {
        if used[start] {
            continue;
        }
        let mut curve = Vec::new();
        let mut x = start;
        loop {
            used[x] = true;
            used[x ^ 1] = true;
            curve.push(x);
            curve.push(x ^ 1);
            x = partner[x ^ 1];
            if x == start {
                break;
            }
        }
        curves.push(curve);
    }
    SplitCurves { which, curves }
}

/// Number of circles of the extreme state that pass along at least one
/// non-alternating edge.
pub fn non_alternating_circles(d: &PlanarDiagram, which: Marker) -> usize {
    let kinds = classify_edges(d);
    let res = extreme_state(d, which).resolution;
    let circle_of = res.circle_of_edges(d);
    let mut hit = vec![false; res.circle_count()];
    for (i, k) in kinds.iter().enumerate() {
        if *k != EdgeKind::Alternating {
            hit[circle_of[i]] = true;
        }
    }
    hit.iter().filter(|&&h| h).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonBounds {
    pub v: usize,
    pub e: usize,
    pub r: usize,
    pub n: usize,
    pub curves_a: usize,
    pub curves_b: usize,
    /// `2c + 2(|s_A| + |s_B|) - 4`, bracket scale.
    pub extreme_states_bound: i64,
    /// `4c + 2(|G_A| + |G_B|) - 2v(G)`; present when the skeleton is non-empty.
    pub skeleton_form: Option<i64>,
    /// `4c + 4(n - 1) - 2 nu`, bracket scale.
    pub thistlethwaite_bound: i64,
}

impl SkeletonBounds {
    /// Jones-scale bounds (bracket bound / 4, rounded down).
    pub fn jones_scale(&self) -> (i64, i64) {
        (
            self.extreme_states_bound.div_euclid(4),
            self.thistlethwaite_bound.div_euclid(4),
        )
    }
}

pub fn skeleton_bounds(d: &PlanarDiagram) -> Result<SkeletonBounds> {
    let sk = build_skeleton(d)?;
    Ok(bounds_from(d, &sk))
}

pub fn bounds_from(d: &PlanarDiagram, sk: &Skeleton) -> SkeletonBounds {
    let c = d.crossing_count() as i64;
    let curves_a = split_skeleton(sk, Marker::A).count();
    let curves_b = split_skeleton(sk, Marker::B).count();
    let (v, e) = (sk.v() as i64, sk.e() as i64);
    SkeletonBounds {
        v: sk.v(),
        e: sk.e(),
        r: sk.r,
        n: sk.n,
        curves_a,
        curves_b,
        extreme_states_bound: extreme_bounds(d).spread_bound,
        skeleton_form: (e > 0).then(|| 4 * c + 2 * (curves_a + curves_b) as i64 - 2 * v),
        thistlethwaite_bound: 4 * c + 4 * (sk.n as i64 - 1) - 2 * e,
    }
}
