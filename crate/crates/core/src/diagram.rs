//! PD codes and the planar combinatorial map of a link diagram.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise,
//! starting from the incoming under-strand; the under-strand runs `a -> c`
//! and the over-strand joins `b` and `d`. Half-edges are numbered
//! `4 * crossing + position`, so the rotation at each vertex is simply
//! `position + 1 (mod 4)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl CrossingSign {
    pub fn value(self) -> i64 {
        match self {
            CrossingSign::Positive => 1,
            CrossingSign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            CrossingSign::Positive => CrossingSign::Negative,
            CrossingSign::Negative => CrossingSign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PdCrossing {
    pub labels: [u32; 4],
    /// Explicit sign annotation (`X(..)+` / `X(..)-`), used when the label
    /// convention cannot orient a component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<CrossingSign>,
}

impl PdCrossing {
    pub fn new(labels: [u32; 4]) -> Self {
        Self { labels, sign: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PdCode {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub crossings: Vec<PdCrossing>,
}

impl PdCode {
    pub fn from_tuples<I: IntoIterator<Item = [u32; 4]>>(tuples: I) -> Result<Self> {
        let pd = Self {
            name: None,
            crossings: tuples.into_iter().map(PdCrossing::new).collect(),
        };
        pd.check_labels()?;
        Ok(pd)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Every label must occur exactly twice and there must be `2c` of them.
    pub fn check_labels(&self) -> Result<()> {
        if self.crossings.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for x in &self.crossings {
            for &l in &x.labels {
                *counts.entry(l).or_default() += 1;
            }
        }
        if let Some((&label, &count)) = counts.iter().find(|(_, &n)| n != 2) {
            return Err(Error::PdLabelCount { label, count });
        }
        let expected = 2 * self.crossings.len();
        if counts.len() != expected {
            return Err(Error::PdLabelTotal {
                crossings: self.crossings.len(),
                expected,
                found: counts.len(),
            });
        }
        Ok(())
    }

    /// Reflection of the plane: keeps every label, reverses each cyclic order
    /// (so over and under swap) and flips any sign annotations.
    pub fn mirror(&self) -> Self {
        Self {
            name: self.name.clone(),
            crossings: self
                .crossings
                .iter()
                .map(|x| {
                    let [a, b, c, d] = x.labels;
                    PdCrossing {
                        labels: [a, d, c, b],
                        sign: x.sign.map(CrossingSign::flipped),
                    }
                })
                .collect(),
        }
    }

    /// Renames labels through `f`, which must be injective.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Self {
        Self {
            name: self.name.clone(),
            crossings: self
                .crossings
                .iter()
                .map(|x| PdCrossing {
                    labels: x.labels.map(&f),
                    sign: x.sign,
                })
                .collect(),
        }
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "name {name}")?;
        }
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let [a, b, c, d] = x.labels;
            write!(f, "X({a},{b},{c},{d})")?;
            match x.sign {
                Some(CrossingSign::Positive) => write!(f, "+")?,
                Some(CrossingSign::Negative) => write!(f, "-")?,
                None => {}
            }
        }
        Ok(())
    }
}

/// Parses a single PD record.
pub fn parse_pd(text: &str) -> Result<PdCode> {
    let mut records = parse_records(text)?;
    match records.len() {
        0 => Err(Error::EmptyDiagram),
        1 => {
            let (_, pd) = records.pop().unwrap();
            pd
        }
        n => Err(Error::PdSyntax {
            line: 1,
            msg: format!("expected one diagram, found {n} named records"),
        }),
    }
}

/// Splits a corpus of `name ...` records. Each record is parsed and checked
/// independently, so one bad record does not hide the others.
pub fn parse_corpus(text: &str) -> Result<Vec<(String, Result<PdCode>)>> {
    let records = parse_records(text)?;
    Ok(records
        .into_iter()
        .enumerate()
        .map(|(i, (name, pd))| (name.unwrap_or_else(|| format!("unnamed-{}", i + 1)), pd))
        .collect())
}

type Record = (Option<String>, Result<PdCode>);

fn parse_records(text: &str) -> Result<Vec<Record>> {
    struct Pending {
        name: Option<String>,
        crossings: Vec<PdCrossing>,
        error: Option<Error>,
    }
    fn finish(p: Pending) -> Record {
        let pd = match p.error {
            Some(e) => Err(e),
            None => {
                let pd = PdCode {
                    name: p.name.clone(),
                    crossings: p.crossings,
                };
                pd.check_labels().map(|_| pd)
            }
        };
        (p.name, pd)
    }

    let mut out = Vec::new();
    let mut cur: Option<Pending> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("name") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                let name = rest.trim();
                if name.is_empty() {
                    return Err(Error::PdSyntax {
                        line: line_no,
                        msg: "empty name header".into(),
                    });
                }
                if let Some(p) = cur.take() {
                    out.push(finish(p));
                }
                cur = Some(Pending {
                    name: Some(name.to_string()),
                    crossings: Vec::new(),
                    error: None,
                });
                continue;
            }
        }
        let p = cur.get_or_insert_with(|| Pending {
            name: None,
            crossings: Vec::new(),
            error: None,
        });
        if p.error.is_some() {
            continue;
        }
        match parse_terms(line, line_no) {
            Ok(mut xs) => p.crossings.append(&mut xs),
            Err(e) => p.error = Some(e),
        }
    }
    if let Some(p) = cur.take() {
        out.push(finish(p));
    }
    Ok(out)
}

fn parse_terms(line: &str, line_no: usize) -> Result<Vec<PdCrossing>> {
    let err = |msg: String| Error::PdSyntax { line: line_no, msg };
    let mut out = Vec::new();
    let mut rest = line;
    loop {
        rest = rest.trim_start();
        if rest.is_empty() || rest.starts_with('#') {
            return Ok(out);
        }
        let body = rest
            .strip_prefix("X(")
            .ok_or_else(|| err(format!("expected X(a,b,c,d), found {rest:?}")))?;
        let close = body.find(')').ok_or_else(|| err("unclosed X(".into()))?;
        let labels = body[..close]
            .split(',')
            .map(|t| {
                let t = t.trim();
                match t.parse::<u32>() {
                    Ok(0) | Err(_) => Err(err(format!("bad edge label {t:?}"))),
                    Ok(v) => Ok(v),
                }
            })
            .collect::<Result<Vec<u32>>>()?;
        let labels: [u32; 4] = labels.as_slice().try_into().map_err(|_| Error::PdArity {
            line: line_no,
            found: labels.len(),
        })?;
        rest = &body[close + 1..];
        let sign = match rest.chars().next() {
            Some('+') => Some(CrossingSign::Positive),
            Some('-') => Some(CrossingSign::Negative),
            _ => None,
        };
        if sign.is_some() {
            rest = &rest[1..];
        }
        if !(rest.is_empty() || rest.starts_with(char::is_whitespace)) {
            return Err(err(format!("unexpected text after crossing: {rest:?}")));
        }
        out.push(PdCrossing { labels, sign });
    }
}

/// A half-edge: position `pos` (0..4, counterclockwise) at crossing `crossing`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge(pub usize);

impl HalfEdge {
    pub fn new(crossing: usize, pos: usize) -> Self {
        HalfEdge(4 * crossing + pos)
    }
    pub fn crossing(self) -> usize {
        self.0 / 4
    }
    pub fn pos(self) -> usize {
        self.0 % 4
    }
    /// Positions 1 and 3 carry the over-strand.
    pub fn is_over(self) -> bool {
        self.pos() % 2 == 1
    }
    pub fn ccw_next(self) -> Self {
        HalfEdge::new(self.crossing(), (self.pos() + 1) % 4)
    }
    pub fn opposite(self) -> Self {
        HalfEdge::new(self.crossing(), (self.pos() + 2) % 4)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub label: u32,
    /// `[tail, head]` along the component orientation.
    pub ends: [HalfEdge; 2],
    pub component: usize,
}

/// The projection graph of a diagram together with its over/under data,
/// faces, link components and orientation.
#[derive(Clone, Debug, Serialize)]
pub struct PlanarDiagram {
    pd: PdCode,
    labels: Vec<u32>,
    partner: Vec<HalfEdge>,
    edges: Vec<Edge>,
    edge_of: Vec<usize>,
    /// Each face is a boundary walk of darts; a dart is the half-edge through
    /// which the walk leaves a crossing. The face lies to the right of the walk.
    faces: Vec<Vec<HalfEdge>>,
    face_of: Vec<usize>,
    /// Edge indices of each link component in orientation order.
    components: Vec<Vec<usize>>,
    incoming: Vec<bool>,
    signs: Vec<CrossingSign>,
    graph_components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub connected: bool,
    pub reduced: bool,
    pub nugatory_crossings: Vec<usize>,
    pub component_count: usize,
}

impl PlanarDiagram {
    pub fn build(pd: &PdCode) -> Result<Self> {
        pd.check_labels()?;
        let c = pd.crossings.len();
        let n = 4 * c;
        let labels: Vec<u32> = pd.crossings.iter().flat_map(|x| x.labels).collect();

        let mut seen: HashMap<u32, usize> = HashMap::with_capacity(2 * c);
        let mut partner = vec![HalfEdge(usize::MAX); n];
        let mut first_end = Vec::with_capacity(2 * c);
        for (h, &l) in labels.iter().enumerate() {
            match seen.get(&l) {
                Some(&g) => {
                    partner[h] = HalfEdge(g);
                    partner[g] = HalfEdge(h);
                }
                None => {
                    seen.insert(l, h);
                    first_end.push(h);
                }
            }
        }

        // Faces: orbits of h -> ccw_next(partner(h)).
        let mut face_of = vec![usize::MAX; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut h = HalfEdge(start);
            while face_of[h.0] == usize::MAX {
                face_of[h.0] = id;
                walk.push(h);
                h = partner[h.0].ccw_next();
            }
            faces.push(walk);
        }

        let graph_components = count_vertex_components(c, &partner);
        let expected = c + 2 * graph_components;
        if faces.len() != expected {
            return Err(Error::NonPlanar {
                faces: faces.len(),
                expected,
            });
        }

        // Link components by going straight through each crossing. A strand
        // is recorded by the half-edges through which it leaves crossings.
        let mut strand_seen = vec![false; n];
        let mut raw_components: Vec<Vec<HalfEdge>> = Vec::new();
        for &h in &first_end {
            if strand_seen[h] || strand_seen[partner[h].0] {
                continue;
            }
            let mut walk = Vec::new();
            let mut cur = HalfEdge(h);
            loop {
                strand_seen[cur.0] = true;
                strand_seen[partner[cur.0].0] = true;
                walk.push(cur);
                cur = partner[cur.0].opposite();
                if cur.0 == h {
                    break;
                }
            }
            raw_components.push(walk);
        }

        let mut incoming = vec![false; n];
        let mut components = Vec::with_capacity(raw_components.len());
        let mut edges_by_label: BTreeMap<u32, Edge> = BTreeMap::new();
        for (ci, walk) in raw_components.into_iter().enumerate() {
            let walk = orient_component(pd, &labels, &partner, walk)?;
            let mut ids = Vec::with_capacity(walk.len());
            for &out in &walk {
                let inc = partner[out.0];
                incoming[inc.0] = true;
                ids.push(labels[out.0]);
                edges_by_label.insert(
                    labels[out.0],
                    Edge {
                        label: labels[out.0],
                        ends: [out, inc],
                        component: ci,
                    },
                );
            }
            components.push(ids);
        }
        let edges: Vec<Edge> = edges_by_label.into_values().collect();
        let index: HashMap<u32, usize> = edges.iter().enumerate().map(|(i, e)| (e.label, i)).collect();
        let edge_of = labels.iter().map(|l| index[l]).collect();
        let components = components
            .into_iter()
            .map(|ls| ls.into_iter().map(|l| index[&l]).collect())
            .collect();

        let signs = pd
            .crossings
            .iter()
            .enumerate()
            .map(|(i, x)| {
                x.sign.unwrap_or({
                    // Over-strand entering at b (position 1) runs b -> d.
                    if incoming[HalfEdge::new(i, 1).0] {
                        CrossingSign::Negative
                    } else {
                        CrossingSign::Positive
                    }
                })
            })
            .collect();

        Ok(Self {
            pd: pd.clone(),
            labels,
            partner,
            edges,
            edge_of,
            faces,
            face_of,
            components,
            incoming,
            signs,
            graph_components,
        })
    }

    pub fn pd(&self) -> &PdCode {
        &self.pd
    }

    pub fn name(&self) -> Option<&str> {
        self.pd.name.as_deref()
    }

    pub fn crossing_count(&self) -> usize {
        self.pd.crossings.len()
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> {
        (0..self.labels.len()).map(HalfEdge)
    }

    pub fn label(&self, h: HalfEdge) -> u32 {
        self.labels[h.0]
    }

    pub fn partner(&self, h: HalfEdge) -> HalfEdge {
        self.partner[h.0]
    }

    pub fn is_incoming(&self, h: HalfEdge) -> bool {
        self.incoming[h.0]
    }

    /// Edges sorted by label.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_of(&self, h: HalfEdge) -> usize {
        self.edge_of[h.0]
    }

    pub fn faces(&self) -> &[Vec<HalfEdge>] {
        &self.faces
    }

    pub fn face_of(&self, dart: HalfEdge) -> usize {
        self.face_of[dart.0]
    }

    /// Face containing the corner between `h` and its counterclockwise successor.
    pub fn corner_face(&self, h: HalfEdge) -> usize {
        self.face_of[h.ccw_next().0]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn signs(&self) -> &[CrossingSign] {
        &self.signs
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    pub fn is_connected(&self) -> bool {
        self.graph_components == 1
    }

    /// A crossing is nugatory (a cut-vertex of the projection graph) exactly
    /// when one face meets it in two different corners.
    pub fn nugatory_crossings(&self) -> Vec<usize> {
        (0..self.crossing_count())
            .filter(|&v| {
                let fs: Vec<usize> = (0..4).map(|k| self.corner_face(HalfEdge::new(v, k))).collect();
                (0..4).any(|i| (i + 1..4).any(|j| fs[i] == fs[j]))
            })
            .collect()
    }

    pub fn validate(&self) -> DiagramReport {
        let nugatory_crossings = self.nugatory_crossings();
        DiagramReport {
            connected: self.is_connected(),
            reduced: nugatory_crossings.is_empty(),
            nugatory_crossings,
            component_count: self.components.len(),
        }
    }
}

fn count_vertex_components(c: usize, partner: &[HalfEdge]) -> usize {
    let mut parent: Vec<usize> = (0..c).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (h, g) in partner.iter().enumerate() {
        let (a, b) = (find(&mut parent, h / 4), find(&mut parent, g.crossing()));
        if a != b {
            parent[a] = b;
        }
    }
    (0..c).filter(|&x| find(&mut parent, x) == x).count()
}

/// Picks the direction of a strand walk: an under-passage fixes it (`a -> c`);
/// failing that, labels must increase along the component; failing that, a
/// sign annotation decides.
fn orient_component(
    pd: &PdCode,
    labels: &[u32],
    partner: &[HalfEdge],
    walk: Vec<HalfEdge>,
) -> Result<Vec<HalfEdge>> {
    let reverse = |walk: Vec<HalfEdge>| -> Vec<HalfEdge> { walk.iter().rev().map(|h| partner[h.0]).collect() };
    let orient_err = |msg: &str| Error::Orientation {
        label: labels[walk[0].0],
        msg: msg.to_string(),
    };

    let mut forward = false;
    let mut backward = false;
    for &out in &walk {
        match out.pos() {
            2 => forward = true,
            0 => backward = true,
            _ => {}
        }
    }
    match (forward, backward) {
        (true, false) => return Ok(walk),
        (false, true) => return Ok(reverse(walk)),
        (true, true) => return Err(orient_err("under-strands disagree on the direction")),
        (false, false) => {}
    }

    // Over-only component: use the increasing-label convention.
    let ls: Vec<u32> = walk.iter().map(|h| labels[h.0]).collect();
    let (lo, hi) = (*ls.iter().min().unwrap(), *ls.iter().max().unwrap());
    let succ = |x: u32| if x == hi { lo } else { x + 1 };
    let k = ls.len();
    let fwd_ok = (0..k).all(|i| ls[(i + 1) % k] == succ(ls[i]));
    let bwd_ok = (0..k).all(|i| ls[i] == succ(ls[(i + 1) % k]));
    match (fwd_ok, bwd_ok) {
        (true, false) => return Ok(walk),
        (false, true) => return Ok(reverse(walk)),
        (false, false) => return Err(orient_err("labels do not increase along the component")),
        (true, true) => {}
    }

    // Both directions fit the labels; look for a sign annotation.
    for &out in &walk {
        if let Some(sign) = pd.crossings[out.crossing()].sign {
            // Leaving through d (position 3) means b -> d, a negative crossing.
            let leaves_at_d = out.pos() == 3;
            let walk_is_negative = leaves_at_d;
            let want_negative = sign == CrossingSign::Negative;
            return Ok(if walk_is_negative == want_negative {
                walk
            } else {
                reverse(walk)
            });
        }
    }
    Err(orient_err("ambiguous; add a +/- sign annotation to one of its crossings"))
}
