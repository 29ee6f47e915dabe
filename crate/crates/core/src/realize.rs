//! Link diagrams built from chord families on a circle: every chord becomes a
//! crossing whose A-smoothing restores the circle, so the all-A state is that one
//! circle carrying the chords, and its extreme coefficient is f of their
//! interlacement graph.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circlegraph::{f_bruteforce, f_recursive, ChordDiagramOnCircle, IntersectionGraph};
use crate::diagram::{CrossingSign, PdCode, PdCrossing};
use crate::error::{Error, Result};

pub const MAX_SEARCH_CHORDS: usize = 12;
pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

/// Chords around a circle, each drawn inside or outside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordFamilyPair {
    /// Chord id at each of the `2m` slots, in order around the circle.
    pub word: Vec<usize>,
    /// Indexed by chord id.
    pub inside: Vec<bool>,
}

impl ChordFamilyPair {
    pub fn new(word: Vec<usize>, inside: Vec<bool>) -> Result<Self> {
        let cd = ChordDiagramOnCircle::new(0, word.clone())?;
        let ids = cd.chord_ids();
        if ids.len() != inside.len() || ids.iter().any(|&i| i >= inside.len()) {
            return Err(Error::ChordWord(format!(
                "chord ids must be 0..{} to match the inside/outside assignment",
                inside.len()
            )));
        }
        for (i, &x) in ids.iter().enumerate() {
            for &y in &ids[i + 1..] {
                if inside[x] == inside[y] && cd.interleaves(x, y)? {
                    return Err(Error::NonPlanarChordFamily(x.min(y), x.max(y)));
                }
            }
        }
        Ok(Self { word, inside })
    }

    /// `word` as accepted by [`ChordDiagramOnCircle::from_word`]; chords named in
    /// `inside` go inside the circle and the rest outside.
    pub fn from_word(word: &str, inside: &[&str]) -> Result<(Self, Vec<String>)> {
        let (cd, names) = ChordDiagramOnCircle::from_word(word)?;
        if let Some(bad) = inside.iter().find(|n| !names.iter().any(|m| m == *n)) {
            return Err(Error::ChordWord(format!("{bad:?} is not a chord of the word")));
        }
        let flags = names.iter().map(|n| inside.contains(&n.as_str())).collect();
        Ok((Self::new(cd.slots, flags)?, names))
    }

    pub fn chord_count(&self) -> usize {
        self.inside.len()
    }

    pub fn interlacement_graph(&self) -> IntersectionGraph {
        let m = self.chord_count();
        let mut pos = vec![Vec::with_capacity(2); m];
        for (i, &c) in self.word.iter().enumerate() {
            pos[c].push(i);
        }
        let mut g = IntersectionGraph::new(m);
        for x in 0..m {
            for y in x + 1..m {
                let inside = |t: usize| pos[x][0] < t && t < pos[x][1];
                if inside(pos[y][0]) != inside(pos[y][1]) {
                    g.add_edge(x, y);
                }
            }
        }
        g
    }

    /// Replaces each listed chord by two parallel nested chords on the same side.
    /// The copy of chord `x` gets the next free id.
    pub fn doubled(&self, chords: &[usize]) -> Self {
        let mut word = Vec::with_capacity(self.word.len() + 2 * chords.len());
        let mut inside = self.inside.clone();
        let mut twin = HashMap::new();
        for &x in chords {
            twin.entry(x).or_insert_with(|| {
                inside.push(self.inside[x]);
                inside.len() - 1
            });
        }
        let mut seen = vec![false; self.chord_count()];
        for &c in &self.word {
            match twin.get(&c) {
                Some(&t) if !seen[c] => word.extend([c, t]),
                Some(&t) => word.extend([t, c]),
                None => word.push(c),
            }
            seen[c] = true;
        }
        Self { word, inside }
    }

    /// Word with chords as letters `a`, `b`, ..., inside chords in upper case.
    pub fn display_word(&self) -> String {
        self.word
            .iter()
            .map(|&c| {
                let name = chord_name(c);
                if self.inside[c] {
                    name.to_uppercase()
                } else {
                    name
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn chord_name(c: usize) -> String {
    let mut s = String::new();
    let mut k = c;
    loop {
        s.insert(0, (b'a' + (k % 26) as u8) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s
}

/// Each chord becomes a crossing joining the two circle arcs at its ends; the
/// circle arc from slot `j` to slot `j + 1` is edge `j`.
pub fn chords_to_link(p: &ChordFamilyPair) -> Result<PdCode> {
    let n = p.word.len() as u32;
    let m = p.chord_count();
    let mut slots = vec![Vec::with_capacity(2); m];
    for (i, &c) in p.word.iter().enumerate() {
        slots[c].push(i as u32 + 1);
    }
    let before = |s: u32| if s == 1 { n } else { s - 1 };
    let tuples: Vec<[u32; 4]> = (0..m)
        .map(|c| {
            let (s, t) = (slots[c][0], slots[c][1]);
            if p.inside[c] {
                [before(s), s, before(t), t]
            } else {
                [s, before(s), t, before(t)]
            }
        })
        .collect();
    let pd = orient_and_relabel(&tuples)?;
    Ok(pd)
}

/// Rotates tuples so each under-strand enters at position 0 for a consistent
/// orientation of every component, then renumbers edges along the components.
/// Crossings whose over-strand lies on a two-edge component that never passes
/// under get an explicit sign, since their labels alone cannot orient it.
fn orient_and_relabel(tuples: &[[u32; 4]]) -> Result<PdCode> {
    let c = tuples.len();
    let mut ends: HashMap<u32, Vec<usize>> = HashMap::new();
    for (v, t) in tuples.iter().enumerate() {
        for (pos, &l) in t.iter().enumerate() {
            ends.entry(l).or_default().push(4 * v + pos);
        }
    }
    if let Some((&label, e)) = ends.iter().find(|(_, e)| e.len() != 2) {
        return Err(Error::PdLabelCount { label, count: e.len() });
    }
    let other_end = |h: usize| {
        let e = &ends[&tuples[h / 4][h % 4]];
        if e[0] == h {
            e[1]
        } else {
            e[0]
        }
    };
    let mut incoming = vec![false; 4 * c];
    let mut seen = vec![false; 4 * c];
    let mut order: Vec<Vec<usize>> = Vec::new();
    for start in 0..4 * c {
        if seen[start] {
            continue;
        }
        // `h` is an incoming half-edge; leave straight through the crossing.
        let mut comp = Vec::new();
        let mut h = start;
        loop {
            seen[h] = true;
            incoming[h] = true;
            let out = 4 * (h / 4) + (h % 4 + 2) % 4;
            seen[out] = true;
            comp.push(out);
            h = other_end(out);
            if h == start {
                break;
            }
        }
        order.push(comp);
    }
    let mut relabel = HashMap::new();
    let mut next = 1;
    for comp in &order {
        for &out in comp {
            relabel.insert(tuples[out / 4][out % 4], next);
            next += 1;
        }
    }
    let mut crossings: Vec<PdCrossing> = tuples
        .iter()
        .enumerate()
        .map(|(v, t)| {
            let shift = if incoming[4 * v] { 0 } else { 2 };
            let labels = std::array::from_fn(|i| relabel[&t[(i + shift) % 4]]);
            PdCrossing::new(labels)
        })
        .collect();
    let comp_of: HashMap<u32, usize> = order
        .iter()
        .enumerate()
        .flat_map(|(i, comp)| comp.iter().map(move |&out| (tuples[out / 4][out % 4], i)))
        .collect();
    for (i, comp) in order.iter().enumerate() {
        let passes_under = comp.iter().any(|&out| out % 2 == 0);
        if comp.len() > 2 || passes_under {
            continue;
        }
        for &out in comp {
            let v = out / 4;
            debug_assert_eq!(comp_of[&tuples[v][out % 4]], i);
            // Over-strand leaves at `out`; entering at b means b -> d.
            let shift = if incoming[4 * v] { 0 } else { 2 };
            let entered_at_b = (out % 4 + 4 - shift) % 4 == 3;
            crossings[v].sign = Some(if entered_at_b {
                CrossingSign::Negative
            } else {
                CrossingSign::Positive
            });
        }
    }
    Ok(PdCode { name: None, crossings })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GraphKind {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Path(usize),
    Random { n: usize, p: f64, seed: u64 },
}

pub fn graph_generators(kind: GraphKind) -> Result<IntersectionGraph> {
    let n = match kind {
        GraphKind::Complete(n) | GraphKind::Path(n) | GraphKind::Random { n, .. } => n,
        GraphKind::CompleteBipartite(a, b) => a + b,
    };
    if n > crate::circlegraph::WIDTH_CAP {
        return Err(Error::WidthCap { vertices: n, cap: crate::circlegraph::WIDTH_CAP });
    }
    Ok(match kind {
        GraphKind::Complete(n) => IntersectionGraph::complete(n),
        GraphKind::CompleteBipartite(a, b) => IntersectionGraph::complete_bipartite(a, b),
        GraphKind::Path(n) => IntersectionGraph::path(n),
        GraphKind::Random { n, p, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = IntersectionGraph::new(n);
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(p.clamp(0.0, 1.0)) {
                        g.add_edge(i, j);
                    }
                }
            }
            g
        }
    })
}

/// Every chord family with `m` chords: all interleavings of a non-crossing
/// inside word and a non-crossing outside word, chords numbered by first slot.
pub fn planar_families(m: usize) -> Vec<ChordFamilyPair> {
    let mut out = Vec::new();
    let mut st = Builder::new(m);
    enumerate(&mut st, &mut |st| out.push(st.family()));
    out
}

fn enumerate(st: &mut Builder, emit: &mut dyn FnMut(&Builder)) {
    if st.word.len() == 2 * st.m {
        emit(st);
        return;
    }
    for mv in MOVES {
        if st.apply(mv) {
            enumerate(st, emit);
            st.undo(mv);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    Open(bool),
    Close(bool),
}

const MOVES: [Move; 4] = [Move::Open(true), Move::Close(true), Move::Open(false), Move::Close(false)];

struct Builder {
    m: usize,
    word: Vec<usize>,
    inside: Vec<bool>,
    open_at: Vec<usize>,
    close_at: Vec<usize>,
    stacks: [Vec<usize>; 2],
    adj: Vec<u64>,
}

impl Builder {
    fn new(m: usize) -> Self {
        Self {
            m,
            word: Vec::with_capacity(2 * m),
            inside: Vec::with_capacity(m),
            open_at: Vec::with_capacity(m),
            close_at: Vec::with_capacity(m),
            stacks: [Vec::new(), Vec::new()],
            adj: vec![0; m],
        }
    }

    fn apply(&mut self, mv: Move) -> bool {
        let t = self.word.len();
        match mv {
            Move::Open(side) => {
                if self.inside.len() == self.m {
                    return false;
                }
                let id = self.inside.len();
                self.inside.push(side);
                self.open_at.push(t);
                self.close_at.push(usize::MAX);
                self.stacks[side as usize].push(id);
                self.word.push(id);
            }
            Move::Close(side) => {
                let Some(&x) = self.stacks[side as usize].last() else {
                    return false;
                };
                self.stacks[side as usize].pop();
                self.close_at[x] = t;
                self.word.push(x);
                let p = self.open_at[x];
                for y in 0..self.inside.len() {
                    if self.inside[y] == side {
                        continue;
                    }
                    let crosses = if self.close_at[y] == usize::MAX {
                        self.open_at[y] > p
                    } else {
                        self.open_at[y] < p && self.close_at[y] > p
                    };
                    if crosses {
                        self.adj[x] |= 1 << y;
                        self.adj[y] |= 1 << x;
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mv: Move) {
        let x = self.word.pop().expect("undo on empty word");
        match mv {
            Move::Open(side) => {
                self.stacks[side as usize].pop();
                self.inside.pop();
                self.open_at.pop();
                self.close_at.pop();
            }
            Move::Close(side) => {
                self.close_at[x] = usize::MAX;
                self.stacks[side as usize].push(x);
                let nb = self.adj[x];
                self.adj[x] = 0;
                for y in 0..self.m {
                    if nb >> y & 1 == 1 {
                        self.adj[y] &= !(1 << x);
                    }
                }
            }
        }
    }

    fn degree(&self, x: usize) -> u32 {
        self.adj[x].count_ones()
    }

    fn family(&self) -> ChordFamilyPair {
        ChordFamilyPair {
            word: self.word.clone(),
            inside: self.inside.clone(),
        }
    }

    fn graph(&self) -> IntersectionGraph {
        let mut g = IntersectionGraph::new(self.m);
        for x in 0..self.m {
            for y in x + 1..self.m {
                if self.adj[x] >> y & 1 == 1 {
                    g.add_edge(x, y);
                }
            }
        }
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub family: Option<ChordFamilyPair>,
    /// Complete families examined.
    pub leaves: u64,
}

/// Depth-first search over chord families with up to `max_chords` chords for one
/// whose interlacement graph has `f = target_f`. Branch order is shuffled from
/// `seed`; `budget` bounds the number of complete families examined. A chord that
/// closes with degree 0 (or below 2 once `m >= 8`) cuts the branch, so this is a
/// heuristic search and a miss is not a proof of absence.
pub fn search_chord_family(target_f: i128, max_chords: usize, budget: u64, seed: u64) -> Result<SearchOutcome> {
    if max_chords > MAX_SEARCH_CHORDS {
        return Err(Error::WidthCap { vertices: max_chords, cap: MAX_SEARCH_CHORDS });
    }
    if target_f == 0 && max_chords >= 1 {
        return Ok(SearchOutcome {
            family: Some(ChordFamilyPair { word: vec![0, 0], inside: vec![true] }),
            leaves: 1,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves = 0;
    for m in 1..=max_chords {
        let mut st = Builder::new(m);
        // The first slot opens an inside chord; the mirror image covers the rest.
        st.apply(Move::Open(true));
        let min_degree = if m >= 8 { 2 } else { 1 };
        let mut search = Search { target_f, budget, leaves, min_degree, rng: &mut rng };
        let found = search.run(&mut st)?;
        leaves = search.leaves;
        if let Some(family) = found {
            let check = f_bruteforce(&family.interlacement_graph())?;
            if check != target_f {
                return Err(Error::Internal(format!("search produced f = {check}, expected {target_f}")));
            }
            return Ok(SearchOutcome { family: Some(family), leaves });
        }
        if leaves >= budget {
            break;
        }
    }
    Ok(SearchOutcome { family: None, leaves })
}

struct Search<'a> {
    target_f: i128,
    budget: u64,
    leaves: u64,
    min_degree: u32,
    rng: &'a mut ChaCha8Rng,
}

impl Search<'_> {
    fn run(&mut self, st: &mut Builder) -> Result<Option<ChordFamilyPair>> {
        if self.leaves >= self.budget {
            return Ok(None);
        }
        if st.word.len() == 2 * st.m {
            self.leaves += 1;
            return Ok((f_recursive(&st.graph())? == self.target_f).then(|| st.family()));
        }
        let mut moves = MOVES;
        moves.shuffle(self.rng);
        for mv in moves {
            if !st.apply(mv) {
                continue;
            }
            let ok = match mv {
                Move::Close(_) => st.degree(*st.word.last().unwrap()) >= self.min_degree,
                Move::Open(_) => true,
            };
            if ok {
                if let Some(f) = self.run(st)? {
                    return Ok(Some(f));
                }
            }
            st.undo(mv);
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circlegraph::extreme_coefficient;
    use crate::diagram::PlanarDiagram;
    use crate::states::{bracket_bruteforce, extreme_state, Marker};
    use num_bigint::BigInt;

    fn check_round_trip(p: &ChordFamilyPair) -> i128 {
        let pd = chords_to_link(p).unwrap();
        let d = PlanarDiagram::build(&pd).unwrap_or_else(|e| panic!("{}: {e}", p.display_word()));
        let sa = extreme_state(&d, Marker::A);
        assert_eq!(sa.circle_count(), 1, "{}", p.display_word());
        assert_eq!(sa.same_circle_chords.len(), p.chord_count());
        let r = extreme_coefficient(&d, Marker::A).unwrap();
        let f = f_recursive(&p.interlacement_graph()).unwrap();
        assert_eq!(r.f_value, f);
        let br = bracket_bruteforce(&d).unwrap();
        assert_eq!(br.coeff_at(r.degree), BigInt::from(r.signed_coefficient));
        f
    }

    #[test]
    fn single_inside_chord() {
        let (p, _) = ChordFamilyPair::from_word("aa", &["a"]).unwrap();
        assert_eq!(check_round_trip(&p), 0);
    }

    #[test]
    fn crossed_pair_gives_minus_one() {
        let (p, _) = ChordFamilyPair::from_word("abab", &["a"]).unwrap();
        assert_eq!(check_round_trip(&p), -1);
        assert_eq!(p.display_word(), "A b A b");
    }

    #[test]
    fn rejects_crossing_chords_on_one_side() {
        assert_eq!(
            ChordFamilyPair::from_word("abab", &["a", "b"]).unwrap_err(),
            Error::NonPlanarChordFamily(0, 1)
        );
        assert!(ChordFamilyPair::from_word("abab", &["z"]).is_err());
    }

    #[test]
    fn family_counts() {
        // Sum over k of C(2m, 2k) Cat(k) Cat(m - k).
        let counts: Vec<usize> = (1..=4).map(|m| planar_families(m).len()).collect();
        assert_eq!(counts, [2, 10, 70, 588]);
    }

    #[test]
    fn small_families_round_trip() {
        for m in 1..=4 {
            for p in planar_families(m) {
                check_round_trip(&p);
            }
        }
    }

    #[test]
    fn doubling_keeps_f() {
        let (p, _) = ChordFamilyPair::from_word("a b a c b c", &["b"]).unwrap();
        let q = p.doubled(&[0, 1]);
        assert_eq!(q.chord_count(), 5);
        ChordFamilyPair::new(q.word.clone(), q.inside.clone()).unwrap();
        assert_eq!(check_round_trip(&q), check_round_trip(&p));
    }

    #[test]
    fn generators() {
        let f = |k| f_recursive(&graph_generators(k).unwrap()).unwrap();
        assert_eq!(f(GraphKind::Complete(4)), -3);
        assert_eq!(f(GraphKind::CompleteBipartite(3, 3)), -1);
        assert_eq!(f(GraphKind::Path(2)), -1);
        let a = graph_generators(GraphKind::Random { n: 10, p: 0.5, seed: 7 }).unwrap();
        let b = graph_generators(GraphKind::Random { n: 10, p: 0.5, seed: 7 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn small_search_targets() {
        let out = search_chord_family(0, 4, 1000, 1).unwrap();
        assert_eq!(out.family.unwrap().chord_count(), 1);
        let out = search_chord_family(-1, 4, 1000, 1).unwrap();
        let p = out.family.unwrap();
        assert_eq!(p.chord_count(), 2);
        assert_eq!(check_round_trip(&p), -1);
        let out = search_chord_family(2, 8, 100_000, 3).unwrap();
        assert_eq!(check_round_trip(&out.family.unwrap()), 2);
        assert!(search_chord_family(3, 13, 10, 0).is_err());
    }

    #[test]
    fn names() {
        assert_eq!(chord_name(0), "a");
        assert_eq!(chord_name(25), "z");
        assert_eq!(chord_name(26), "aa");
    }
}
