//! Command-line front end for `bracket-core`.

pub mod report;

use std::io::{self, Read, Write};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use bracket_core::circlegraph::{extreme_coefficient_of, BRUTEFORCE_CAP};
use bracket_core::realize::{self, ChordFamilyPair, DEFAULT_SEARCH_BUDGET, MAX_SEARCH_CHORDS};
use bracket_core::states::DEFAULT_BRACKET_CAP;
use bracket_core::table::{self, TableOptions};
use bracket_core::{
    bracket_bruteforce_with_cap, build_skeleton, extreme_bounds, extreme_state, f_bruteforce, f_recursive, fixtures,
    jones_data, parse_corpus, refined_spread, surface_characteristics, ChordDiagramOnCircle, Error, IntersectionGraph,
    Marker, PlanarDiagram,
};
use report::*;

#[derive(Debug, Parser)]
#[command(name = "bracket", version, about = "Kauffman bracket extremes, interlacement graphs and spread bounds")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest crossing count for the 2^c state sum.
    #[arg(long, global = true, env = "BRACKET_CAP", default_value_t = DEFAULT_BRACKET_CAP)]
    pub cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bracket by the full state sum, with writhe-normalised form and Jones spread.
    Bracket(DiagramArgs),
    /// Extreme states, same-circle chords, interlacement graphs and extreme coefficients.
    Extremes {
        #[command(flatten)]
        input: DiagramArgs,
        #[arg(long, value_enum, default_value_t = Side::Both)]
        side: Side,
        /// Also read the extreme coefficients off the state sum.
        #[arg(long)]
        with_oracle: bool,
    },
    /// Extreme-states bound, surface genus, refined spread and skeleton bounds.
    Bounds(DiagramArgs),
    /// Non-alternating skeleton, its split curves and the bounds read from it.
    Skeleton(DiagramArgs),
    /// Evaluate f on a graph given as an edge list, a chord word or a named family.
    Fgraph(FgraphArgs),
    /// Build a link from a chord family, or search for a family with a given f.
    Realize(RealizeArgs),
    /// One row per diagram of a corpus (TSV, or JSON with --json).
    Table {
        /// Corpus file; the shipped non-alternating Rolfsen corpus when omitted.
        file: Option<String>,
        /// Add the Jones spread from the state sum for diagrams under the cap.
        #[arg(long)]
        with_oracle: bool,
    },
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    /// PD file (one record or a corpus of `name` records); `-` reads stdin.
    pub file: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Side {
    A,
    B,
    Both,
}

impl Side {
    fn markers(self) -> Vec<Marker> {
        match self {
            Side::A => vec![Marker::A],
            Side::B => vec![Marker::B],
            Side::Both => vec![Marker::A, Marker::B],
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Edge-list file (`n; u v; ...`, 0-based); `-` reads stdin.
    #[arg(long)]
    pub file: Option<String>,
    /// Edge list given inline, e.g. `3; 0 1; 1 2`.
    #[arg(long)]
    pub edges: Option<String>,
    /// Cyclic chord word, e.g. `abab` or `x y x y`.
    #[arg(long)]
    pub word: Option<String>,
    /// Complete graph on N vertices.
    #[arg(long, value_name = "N")]
    pub complete: Option<usize>,
    /// Complete bipartite graph K_{M,N}.
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    pub bipartite: Option<Vec<usize>>,
    /// Path on N vertices.
    #[arg(long, value_name = "N")]
    pub path: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FgraphArgs {
    #[command(flatten)]
    pub source: GraphSource,
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    /// Cyclic chord word; each chord label appears twice.
    #[arg(long, conflicts_with_all = ["target_f", "search"])]
    pub word: Option<String>,
    /// Comma-separated chords drawn inside the circle; the others go outside.
    #[arg(long, value_delimiter = ',', requires = "word")]
    pub inside: Vec<String>,
    /// Comma-separated chords to replace by two parallel chords.
    #[arg(long, value_delimiter = ',')]
    pub double: Vec<String>,
    /// Search for a family whose interlacement graph has this f.
    #[arg(long, allow_negative_numbers = true, requires = "search")]
    pub target_f: Option<i128>,
    #[arg(long, requires = "target_f")]
    pub search: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = MAX_SEARCH_CHORDS)]
    pub max_chords: usize,
    /// Complete families examined before giving up.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    pub budget: u64,
}

/// Exit codes, one per failure class.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const INVALID_DIAGRAM: i32 = 4;
    pub const CAP: i32 = 5;
    pub const HYPOTHESIS: i32 = 6;
    pub const NOT_FOUND: i32 = 7;
    pub const IO: i32 = 8;
    pub const INTERNAL: i32 = 9;
}

/// Search ran out of budget.
#[derive(Debug)]
pub struct NotFound(pub String);

impl std::fmt::Display for NotFound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for NotFound {}

pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<NotFound>().is_some() {
        return exit::NOT_FOUND;
    }
    if err.downcast_ref::<io::Error>().is_some() {
        return exit::IO;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::PdSyntax { .. }
            | Error::PdArity { .. }
            | Error::PdLabelCount { .. }
            | Error::PdLabelTotal { .. }
            | Error::EmptyDiagram
            | Error::PolynomialSyntax(_)
            | Error::ChordWord(_)
            | Error::GraphSyntax(_)
            | Error::NonPlanarChordFamily(..),
        ) => exit::PARSE,
        Some(Error::NonPlanar { .. } | Error::Orientation { .. }) => exit::INVALID_DIAGRAM,
        Some(Error::CapExceeded { .. } | Error::WidthCap { .. }) => exit::CAP,
        Some(Error::Hypothesis(_)) => exit::HYPOTHESIS,
        Some(Error::Internal(_) | Error::UndefinedDegree | Error::ChordNotOnCircle(_)) => exit::INTERNAL,
        None => exit::INTERNAL,
    }
}

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    }
    Ok(text)
}

/// Runs `f` on every record; reports the successes and returns the first failure.
fn per_diagram<R: Reportable>(
    cli: &Cli,
    file: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
    f: impl Fn(&str, &PlanarDiagram) -> Result<R>,
) -> Result<()> {
    let text = read_input(file)?;
    let mut reports = Vec::new();
    let mut first_error = None;
    let records = parse_corpus(&text)?;
    let several = records.len() > 1;
    for (name, pd) in records {
        let outcome = pd
            .map_err(anyhow::Error::from)
            .and_then(|pd| Ok(PlanarDiagram::build(&pd)?))
            .and_then(|d| f(&name, &d));
        match outcome {
            Ok(r) => reports.push(r),
            Err(e) => {
                if several {
                    writeln!(err, "{name}: {e:#}")?;
                }
                first_error.get_or_insert(e);
            }
        }
    }
    if cli.json {
        serde_json::to_writer_pretty(&mut *out, &reports)?;
        writeln!(out)?;
    } else {
        for (i, r) in reports.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            write!(out, "{}", r.text())?;
        }
    }
    match first_error {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn emit<R: Reportable>(cli: &Cli, out: &mut dyn Write, r: &R) -> Result<()> {
    if cli.json {
        serde_json::to_writer_pretty(&mut *out, r)?;
        writeln!(out)?;
    } else {
        write!(out, "{}", r.text())?;
    }
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Bracket(a) => per_diagram(cli, &a.file, out, err, |name, d| bracket_report(name, d, cli.cap)),
        Command::Extremes { input, side, with_oracle } => per_diagram(cli, &input.file, out, err, |name, d| {
            extremes_report(name, d, *side, with_oracle.then_some(cli.cap))
        }),
        Command::Bounds(a) => per_diagram(cli, &a.file, out, err, bounds_report),
        Command::Skeleton(a) => per_diagram(cli, &a.file, out, err, skeleton_report),
        Command::Fgraph(a) => emit(cli, out, &fgraph_report(&a.source)?),
        Command::Realize(a) => emit(cli, out, &realize_report(a, cli.cap)?),
        Command::Table { file, with_oracle } => {
            let text = match file {
                Some(f) => read_input(f)?,
                None => fixtures::ROLFSEN_NONALTERNATING.to_string(),
            };
            let rows = table::table(&text, TableOptions { with_oracle: *with_oracle, cap: cli.cap })?;
            if cli.json {
                serde_json::to_writer_pretty(&mut *out, &rows)?;
                writeln!(out)?;
            } else {
                write!(out, "{}", table::to_tsv(&rows))?;
            }
            for r in rows.iter().filter(|r| r.error.is_some()) {
                writeln!(err, "{}: {}", r.name, r.error.as_deref().unwrap_or_default())?;
            }
            Ok(())
        }
    }
}

fn bracket_report(name: &str, d: &PlanarDiagram, cap: usize) -> Result<BracketReport> {
    let j = jones_data(d, cap)?;
    Ok(BracketReport {
        name: name.to_string(),
        crossings: d.crossing_count(),
        writhe: d.writhe(),
        bracket: j.bracket,
        normalized: j.normalized,
        jones_spread: j.jones_spread,
    })
}

fn extremes_report(name: &str, d: &PlanarDiagram, side: Side, oracle_cap: Option<usize>) -> Result<ExtremesReport> {
    let bracket = match oracle_cap {
        Some(cap) => Some(bracket_bruteforce_with_cap(d, cap)?),
        None => None,
    };
    let mut sides = Vec::new();
    for m in side.markers() {
        let data = extreme_state(d, m);
        let coeff = extreme_coefficient_of(&data)?;
        let res = &data.resolution;
        sides.push(SideReport {
            which: m,
            circle_count: data.circle_count(),
            degree: data.extreme_degree,
            circles: res.circles.iter().map(|c| c.edges.clone()).collect(),
            chords: res
                .chords
                .iter()
                .map(|ch| ChordReport {
                    crossing: ch.crossing,
                    marker: ch.marker,
                    circles: [res.circles[ch.ends[0].circle].id, res.circles[ch.ends[1].circle].id],
                    positions: [ch.ends[0].position, ch.ends[1].position],
                })
                .collect(),
            same_circle_chords: data.same_circle_chords.clone(),
            graph: coeff.graph.summary(),
            f_value: coeff.f_value,
            signed_coefficient: coeff.signed_coefficient,
            circle_factors: coeff.circle_factors.clone(),
            adequate: coeff.adequate,
            bipartite: coeff.bipartite,
            oracle_coefficient: bracket.as_ref().map(|b| b.coeff_at(data.extreme_degree).to_string()),
        });
    }
    Ok(ExtremesReport {
        name: name.to_string(),
        crossings: d.crossing_count(),
        sides,
    })
}

fn bounds_report(name: &str, d: &PlanarDiagram) -> Result<BoundsReport> {
    let b = extreme_bounds(d);
    let s = surface_characteristics(d)?;
    let refined = refined_spread(d)?;
    let (skeleton, skeleton_note) = match bracket_core::skeleton_bounds(d) {
        Ok(sb) => (Some(sb), None),
        Err(Error::Hypothesis(msg)) => (None, Some(msg)),
        Err(e) => return Err(e.into()),
    };
    Ok(BoundsReport {
        name: name.to_string(),
        crossings: d.crossing_count(),
        circles_a: b.circles_a,
        circles_b: b.circles_b,
        max_bound: b.max_bound,
        min_bound: b.min_bound,
        spread_bound: b.spread_bound,
        beta_hat: b.spread_bound / 4,
        chi_f: s.chi_f,
        genus_f: s.genus_f,
        refined,
        skeleton,
        skeleton_note,
    })
}

fn skeleton_report(name: &str, d: &PlanarDiagram) -> Result<SkeletonReport> {
    let sk = build_skeleton(d)?;
    let bounds = bracket_core::skeleton::bounds_from(d, &sk);
    let (jones_extreme_states, jones_thistlethwaite) = bounds.jones_scale();
    Ok(SkeletonReport {
        name: name.to_string(),
        bounds,
        jones_extreme_states,
        jones_thistlethwaite,
        rotations: (0..sk.v())
            .map(|v| VertexReport {
                face: sk.vertices[v].face,
                rotation: sk.signed_rotation(v),
            })
            .collect(),
    })
}

fn fgraph_report(src: &GraphSource) -> Result<FgraphReport> {
    let g = if let Some(f) = &src.file {
        IntersectionGraph::parse_edge_list(&read_input(f)?)?
    } else if let Some(e) = &src.edges {
        IntersectionGraph::parse_edge_list(e)?
    } else if let Some(w) = &src.word {
        ChordDiagramOnCircle::from_word(w)?.0.intersection_graph()?
    } else if let Some(n) = src.complete {
        realize::graph_generators(realize::GraphKind::Complete(n))?
    } else if let Some(mn) = &src.bipartite {
        realize::graph_generators(realize::GraphKind::CompleteBipartite(mn[0], mn[1]))?
    } else if let Some(n) = src.path {
        realize::graph_generators(realize::GraphKind::Path(n))?
    } else {
        bail!("no graph given");
    };
    let f = f_recursive(&g)?;
    let brute = if g.vertex_count() <= BRUTEFORCE_CAP {
        let b = f_bruteforce(&g)?;
        if b != f {
            return Err(Error::Internal(format!("recursive f = {f} but direct enumeration gives {b}")).into());
        }
        Some(b)
    } else {
        None
    };
    Ok(FgraphReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        graph: g.summary(),
        bipartite: g.is_bipartite(),
        f,
        f_bruteforce: brute,
    })
}

fn realize_report(a: &RealizeArgs, cap: usize) -> Result<RealizeReport> {
    let (mut family, names, leaves) = if let Some(word) = &a.word {
        let inside: Vec<&str> = a.inside.iter().map(String::as_str).collect();
        let (p, names) = ChordFamilyPair::from_word(word, &inside)?;
        (p, Some(names), None)
    } else if let (Some(target), true) = (a.target_f, a.search) {
        let outcome = realize::search_chord_family(target, a.max_chords, a.budget, a.seed)?;
        match outcome.family {
            Some(p) => (p, None, Some(outcome.leaves)),
            None => {
                return Err(NotFound(format!(
                    "no family with f = {target} and at most {} chords within {} families",
                    a.max_chords, outcome.leaves
                ))
                .into())
            }
        }
    } else {
        return Err(anyhow!(Error::ChordWord("give --word, or --target-f N --search".into())));
    };
    if !a.double.is_empty() {
        let ids: Vec<usize> = a
            .double
            .iter()
            .map(|n| match &names {
                Some(names) => names
                    .iter()
                    .position(|m| m == n)
                    .ok_or_else(|| Error::ChordWord(format!("{n:?} is not a chord of the word"))),
                None => n.parse().map_err(|_| Error::ChordWord(format!("{n:?} is not a chord index"))),
            })
            .collect::<std::result::Result<_, _>>()?;
        family = family.doubled(&ids);
    }
    let pd = realize::chords_to_link(&family)?.with_name("realized");
    let d = PlanarDiagram::build(&pd)?;
    let sa = extreme_state(&d, Marker::A);
    let a_side = extreme_coefficient_of(&sa)?;
    let b_side = extreme_coefficient_of(&extreme_state(&d, Marker::B))?;
    let bracket = if d.crossing_count() <= cap {
        Some(bracket_bruteforce_with_cap(&d, cap)?)
    } else {
        None
    };
    Ok(RealizeReport {
        word: family.display_word(),
        chords: family.chord_count(),
        pd: pd.to_string(),
        crossings: d.crossing_count(),
        graph: family.interlacement_graph().summary(),
        f_value: f_recursive(&family.interlacement_graph())?,
        circles_a: sa.circle_count(),
        degree_a: a_side.degree,
        signed_coefficient_a: a_side.signed_coefficient,
        oracle_coefficient_a: bracket.as_ref().map(|b| b.coeff_at(a_side.degree).to_string()),
        minus_adequate: b_side.adequate,
        signed_coefficient_b: b_side.signed_coefficient,
        oracle_coefficient_b: bracket.as_ref().map(|b| b.coeff_at(b_side.degree).to_string()),
        bracket,
        search_leaves: leaves,
    })
}
