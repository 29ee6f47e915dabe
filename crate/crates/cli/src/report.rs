//! Report records printed by the subcommands, as text or JSON.

use std::fmt::Write;

use bracket_core::circlegraph::RefinedSpread;
use bracket_core::{IntLaurent, Marker, SkeletonBounds};
use serde::{Deserialize, Serialize};

pub trait Reportable: Serialize {
    fn text(&self) -> String;
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketReport {
    pub name: String,
    pub crossings: usize,
    pub writhe: i64,
    pub bracket: IntLaurent,
    pub normalized: IntLaurent,
    pub jones_spread: Option<u64>,
}

impl Reportable for BracketReport {
    fn text(&self) -> String {
        format!(
            "name: {}\ncrossings: {}\nwrithe: {}\nbracket: {}\nnormalized: {}\njones_spread: {}\n",
            self.name,
            self.crossings,
            self.writhe,
            self.bracket,
            self.normalized,
            opt(&self.jones_spread)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordReport {
    pub crossing: usize,
    pub marker: Marker,
    /// Ids of the circles at the two ends.
    pub circles: [u32; 2],
    pub positions: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideReport {
    pub which: Marker,
    pub circle_count: usize,
    pub degree: i64,
    /// Edge labels of each circle in traversal order.
    pub circles: Vec<Vec<u32>>,
    pub chords: Vec<ChordReport>,
    pub same_circle_chords: Vec<usize>,
    pub graph: String,
    pub f_value: i128,
    pub signed_coefficient: i128,
    pub circle_factors: Vec<(u32, i128)>,
    pub adequate: bool,
    pub bipartite: bool,
    pub oracle_coefficient: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremesReport {
    pub name: String,
    pub crossings: usize,
    pub sides: Vec<SideReport>,
}

impl Reportable for ExtremesReport {
    fn text(&self) -> String {
        let mut s = format!("name: {}\ncrossings: {}\n", self.name, self.crossings);
        for side in &self.sides {
            let w = side.which;
            let circles: Vec<String> = side
                .circles
                .iter()
                .map(|c| format!("({})", c.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")))
                .collect();
            let _ = writeln!(s, "s_{w} circles: {}", side.circle_count);
            let _ = writeln!(s, "s_{w} circle edges: {}", circles.join(" "));
            let _ = writeln!(s, "s_{w} extreme degree: {}", side.degree);
            let _ = writeln!(s, "s_{w} same-circle chords: {:?}", side.same_circle_chords);
            let _ = writeln!(s, "s_{w} graph: {}", side.graph);
            let _ = writeln!(s, "s_{w} f: {}", side.f_value);
            let _ = writeln!(s, "s_{w} coefficient: {}", side.signed_coefficient);
            let _ = writeln!(s, "s_{w} adequate: {}", side.adequate);
            if let Some(c) = &side.oracle_coefficient {
                let _ = writeln!(s, "s_{w} state-sum coefficient: {c}");
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub name: String,
    pub crossings: usize,
    pub circles_a: usize,
    pub circles_b: usize,
    pub max_bound: i64,
    pub min_bound: i64,
    pub spread_bound: i64,
    /// Jones-scale extreme-states bound.
    pub beta_hat: i64,
    pub chi_f: i64,
    pub genus_f: i64,
    pub refined: RefinedSpread,
    pub skeleton: Option<SkeletonBounds>,
    /// Why the skeleton bounds are missing.
    pub skeleton_note: Option<String>,
}

impl Reportable for BoundsReport {
    fn text(&self) -> String {
        let mut s = format!(
            "name: {}\ncrossings: {}\n|s_A|: {}\n|s_B|: {}\nmax bound: {}\nmin bound: {}\nspread bound: {}\nbeta_hat: {}\nchi(F): {}\ngenus(F): {}\nrefined spread bound: {} (jones {}, exact {})\n",
            self.name,
            self.crossings,
            self.circles_a,
            self.circles_b,
            self.max_bound,
            self.min_bound,
            self.spread_bound,
            self.beta_hat,
            self.chi_f,
            self.genus_f,
            self.refined.bracket_spread_bound,
            self.refined.jones_spread_bound,
            self.refined.exact
        );
        match (&self.skeleton, &self.skeleton_note) {
            (Some(sk), _) => {
                let _ = writeln!(s, "thistlethwaite bound: {} (jones {})", sk.thistlethwaite_bound, sk.jones_scale().1);
            }
            (None, Some(note)) => {
                let _ = writeln!(s, "skeleton: unavailable ({note})");
            }
            _ => {}
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexReport {
    pub face: usize,
    /// Signed edge labels anticlockwise, e.g. `+12`.
    pub rotation: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonReport {
    pub name: String,
    pub bounds: SkeletonBounds,
    pub jones_extreme_states: i64,
    pub jones_thistlethwaite: i64,
    pub rotations: Vec<VertexReport>,
}

impl Reportable for SkeletonReport {
    fn text(&self) -> String {
        let b = &self.bounds;
        let mut s = format!(
            "name: {}\nv: {}\ne: {}\nr: {}\nn: {}\n|G_A|: {}\n|G_B|: {}\nextreme-states bound: {} (jones {})\nthistlethwaite bound: {} (jones {})\n",
            self.name,
            b.v,
            b.e,
            b.r,
            b.n,
            b.curves_a,
            b.curves_b,
            b.extreme_states_bound,
            self.jones_extreme_states,
            b.thistlethwaite_bound,
            self.jones_thistlethwaite
        );
        for (i, v) in self.rotations.iter().enumerate() {
            let _ = writeln!(s, "vertex {i} (face {}): {}", v.face, v.rotation.join(" "));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FgraphReport {
    pub vertices: usize,
    pub edges: usize,
    pub graph: String,
    pub bipartite: bool,
    pub f: i128,
    /// Direct enumeration, for graphs small enough.
    pub f_bruteforce: Option<i128>,
}

impl Reportable for FgraphReport {
    fn text(&self) -> String {
        format!(
            "graph: {}\nvertices: {}\nedges: {}\nbipartite: {}\nf: {}\nf (direct enumeration): {}\n",
            self.graph,
            self.vertices,
            self.edges,
            self.bipartite,
            self.f,
            opt(&self.f_bruteforce)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizeReport {
    /// Inside chords in upper case.
    pub word: String,
    pub chords: usize,
    pub pd: String,
    pub crossings: usize,
    pub graph: String,
    pub f_value: i128,
    pub circles_a: usize,
    pub degree_a: i64,
    pub signed_coefficient_a: i128,
    pub oracle_coefficient_a: Option<String>,
    pub minus_adequate: bool,
    pub signed_coefficient_b: i128,
    pub oracle_coefficient_b: Option<String>,
    pub bracket: Option<IntLaurent>,
    pub search_leaves: Option<u64>,
}

impl Reportable for RealizeReport {
    fn text(&self) -> String {
        format!(
            "word: {}\nchords: {}\ngraph: {}\nf: {}\n{}\ncrossings: {}\n|s_A|: {}\nA coefficient at A^{}: {} (state sum {})\nB side adequate: {}\nB coefficient: {} (state sum {})\nbracket: {}\n{}",
            self.word,
            self.chords,
            self.graph,
            self.f_value,
            self.pd,
            self.crossings,
            self.circles_a,
            self.degree_a,
            self.signed_coefficient_a,
            opt(&self.oracle_coefficient_a),
            self.minus_adequate,
            self.signed_coefficient_b,
            opt(&self.oracle_coefficient_b),
            opt(&self.bracket),
            self.search_leaves.map_or(String::new(), |l| format!("families searched: {l}\n"))
        )
    }
}

impl<T: Reportable> Reportable for Vec<T> {
    fn text(&self) -> String {
        self.iter().map(Reportable::text).collect::<Vec<_>>().join("\n")
    }
}
