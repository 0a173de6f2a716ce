//! JSON documents: the shared graph format with its disc and block
//! extensions, colorings keyed by canonical element keys, witness bundles,
//! and solver problem/result mirrors. JSON is the source-of-truth format;
//! emission is byte-deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blocks::{Block, Side};
use crate::coloring::{Color, ColoringError, ConflictReport, TotalColoring};
use crate::constructive::{FamilyWitness, Provenance};
use crate::disc::{Coord, DiscError, FaceClass, LayerKind, Nanodisc};
use crate::semigraph::{Edge, EdgeKind, Element, GraphError, Port, Semiedge, Semigraph, VertexId};
use crate::solver::{SolveResult, SolveStatus, Symmetry, TotalProblem};

#[derive(Error, Debug)]
pub enum JsonError {
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("bad element key {0:?}")]
    BadKey(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Disc(#[from] DiscError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

fn invalid(msg: impl Into<String>) -> JsonError {
    JsonError::Invalid(msg.into())
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct VertexDoc {
    pub id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pos: Option<usize>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct EdgeDoc {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKindDoc,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKindDoc {
    Cycle,
    Radial,
}

impl From<EdgeKind> for EdgeKindDoc {
    fn from(k: EdgeKind) -> Self {
        match k {
            EdgeKind::Cycle => EdgeKindDoc::Cycle,
            EdgeKind::Radial => EdgeKindDoc::Radial,
        }
    }
}

impl From<EdgeKindDoc> for EdgeKind {
    fn from(k: EdgeKindDoc) -> Self {
        match k {
            EdgeKindDoc::Cycle => EdgeKind::Cycle,
            EdgeKindDoc::Radial => EdgeKind::Radial,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct SemiedgeDoc {
    pub anchor: usize,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum FaceClassDoc {
    Cap,
    Balanced,
    Unbalanced { four_side: usize },
    Pentagon { two_side: usize },
}

impl From<FaceClass> for FaceClassDoc {
    fn from(c: FaceClass) -> Self {
        match c {
            FaceClass::Cap => FaceClassDoc::Cap,
            FaceClass::Balanced => FaceClassDoc::Balanced,
            FaceClass::Unbalanced { four_side } => FaceClassDoc::Unbalanced { four_side },
            FaceClass::Pentagon { two_side } => FaceClassDoc::Pentagon { two_side },
        }
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct LayerDoc {
    pub index: usize,
    pub kind: String,
    pub faces: Vec<FaceClassDoc>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct PentagonPairDoc {
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
    pub shared_radial: String,
}

/// Disc-specific metadata carried alongside the bare graph.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct NanodiscExt {
    pub radius: usize,
    /// Positions increase clockwise along every cycle.
    pub clockwise: bool,
    pub cycles: Vec<Vec<usize>>,
    pub pentagons: Vec<PentagonPairDoc>,
    pub layers: Vec<LayerDoc>,
}

/// Block-specific metadata: which block, its anchors layer by layer, and
/// the frontier element keys on both sides.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct BlockExt {
    pub side: String,
    pub i: usize,
    pub anchors: Vec<[usize; 2]>,
    pub left_frontier: Vec<String>,
    pub right_frontier: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct GraphDoc {
    pub radius: Option<usize>,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    pub semiedges: Vec<SemiedgeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nanodisc: Option<NanodiscExt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block: Option<BlockExt>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ColoringDoc {
    pub k: u8,
    pub assignment: BTreeMap<String, u8>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ConflictDoc {
    pub a: String,
    pub b: String,
    pub color: u8,
    pub relation: String,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ReportDoc {
    pub proper: bool,
    pub total: bool,
    pub conflicts: Vec<ConflictDoc>,
    pub uncolored: Vec<String>,
}

/// A self-contained colorability certificate: the instance, the coloring,
/// the verifier's verdict, where the coloring came from, and what the
/// table search was constrained by.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct WitnessDoc {
    pub graph: GraphDoc,
    pub coloring: ColoringDoc,
    pub report: ReportDoc,
    pub provenance: String,
    pub oracle_constraints: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryDoc {
    None,
    FixElement,
    Orbits(Vec<Vec<String>>),
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ProblemDoc {
    pub graph: GraphDoc,
    pub k: u8,
    pub pins: BTreeMap<String, u8>,
    #[serde(default = "SymmetryDoc::default")]
    pub symmetry: SymmetryDoc,
    #[serde(default)]
    pub distinct: Vec<[String; 2]>,
}

impl SymmetryDoc {
    fn default() -> Self {
        SymmetryDoc::None
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct StatsDoc {
    pub nodes: u64,
    pub max_depth: usize,
    pub wall_ms: u128,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ResultDoc {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringDoc>,
    pub stats: StatsDoc,
}

/// Canonical emission: pretty-printed with a trailing newline. Two equal
/// documents serialize to identical bytes.
pub fn to_canonical_string<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization cannot fail");
    s.push('\n');
    s
}

pub fn graph_to_doc(g: &Semigraph) -> GraphDoc {
    GraphDoc {
        radius: None,
        vertices: g
            .vertices()
            .map(|v| VertexDoc {
                id: v.0,
                cycle: None,
                pos: None,
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                u: e.u.0,
                v: e.v.0,
                kind: e.kind.into(),
            })
            .collect(),
        semiedges: g
            .semiedges()
            .iter()
            .map(|s| SemiedgeDoc { anchor: s.anchor.0 })
            .collect(),
        nanodisc: None,
        block: None,
    }
}

pub fn disc_to_doc(d: &Nanodisc) -> GraphDoc {
    let mut doc = graph_to_doc(d.graph());
    doc.radius = Some(d.radius());
    for v in &mut doc.vertices {
        let co = d.coord(VertexId(v.id));
        v.cycle = Some(co.cycle);
        v.pos = Some(co.pos);
    }
    doc.nanodisc = Some(NanodiscExt {
        radius: d.radius(),
        clockwise: true,
        cycles: d
            .cycles()
            .iter()
            .map(|c| c.iter().map(|v| v.0).collect())
            .collect(),
        pentagons: d
            .pentagon_pairs()
            .iter()
            .map(|p| PentagonPairDoc {
                outer: p.outer.boundary.iter().map(|v| v.0).collect(),
                inner: p.inner.boundary.iter().map(|v| v.0).collect(),
                shared_radial: p.shared_radial.key(),
            })
            .collect(),
        layers: d
            .layers()
            .iter()
            .map(|l| LayerDoc {
                index: l.index,
                kind: match l.kind {
                    LayerKind::Cap => "cap".into(),
                    LayerKind::Hexagonal => "hexagonal".into(),
                    LayerKind::Central => "central".into(),
                },
                faces: l.faces.iter().map(|f| f.class.into()).collect(),
            })
            .collect(),
    });
    doc
}

pub fn block_to_doc(b: &Block) -> GraphDoc {
    let mut doc = graph_to_doc(b.graph());
    let keys = |f: &crate::blocks::Frontier| {
        f.vertices
            .iter()
            .map(|v| Element::Vertex(*v).key())
            .chain(f.edges.iter().map(|e| Element::of_edge(e).key()))
            .chain(f.semis.iter().map(Element::key))
            .collect()
    };
    let left = b.patch.left_frontier();
    let right = b.patch.right_frontier();
    doc.block = Some(BlockExt {
        side: match b.patch.side {
            Side::Outer => "outer".into(),
            Side::Inner => "inner".into(),
        },
        i: b.i,
        anchors: (1..=b.radius())
            .map(|t| [b.patch.left_anchor(t).0, b.patch.right_anchor(t).0])
            .collect(),
        left_frontier: keys(&left),
        right_frontier: keys(&right),
    });
    doc
}

fn doc_edges(doc: &GraphDoc) -> Vec<Edge> {
    doc.edges
        .iter()
        .map(|e| Edge::new(VertexId(e.u), VertexId(e.v), e.kind.into()))
        .collect()
}

/// Rebuilds a bare semigraph. The rotation system is reconstructed from
/// cycle coordinates when the document carries them; otherwise the default
/// rotation is used, which is fine for everything except face tracing.
pub fn doc_to_graph(doc: &GraphDoc) -> Result<Semigraph, JsonError> {
    let n = doc.vertices.len();
    for (i, v) in doc.vertices.iter().enumerate() {
        if v.id != i {
            return Err(invalid(format!("vertex ids must be dense, {i} holds {}", v.id)));
        }
    }
    let edges = doc_edges(doc);
    let semiedges = doc_semiedges(doc);
    if let Some(coords) = doc_coords(doc)? {
        let rotation = disc_rotation(&coords, &edges)?;
        Ok(Semigraph::build(n, edges, semiedges, rotation)?)
    } else {
        Ok(Semigraph::build_unembedded(n, edges, semiedges)?)
    }
}

fn doc_semiedges(doc: &GraphDoc) -> Vec<Semiedge> {
    let mut slots: BTreeMap<usize, usize> = BTreeMap::new();
    doc.semiedges
        .iter()
        .map(|s| {
            let slot = slots.entry(s.anchor).or_insert(0);
            let out = Semiedge {
                anchor: VertexId(s.anchor),
                slot: *slot,
            };
            *slot += 1;
            out
        })
        .collect()
}

fn doc_coords(doc: &GraphDoc) -> Result<Option<Vec<Coord>>, JsonError> {
    let placed = doc.vertices.iter().filter(|v| v.cycle.is_some()).count();
    if placed == 0 {
        return Ok(None);
    }
    if placed != doc.vertices.len() {
        return Err(invalid("either every vertex carries cycle/pos or none does"));
    }
    doc.vertices
        .iter()
        .map(|v| match (v.cycle, v.pos) {
            (Some(cycle), Some(pos)) => Ok(Coord { cycle, pos }),
            _ => Err(invalid(format!("vertex {} has a cycle but no pos", v.id))),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

/// The disc rotation rule: along every cycle the ports run predecessor,
/// then the radial if it points towards the higher-index cycle, then
/// successor, with the radial last otherwise. Positions increase
/// clockwise.
fn disc_rotation(coords: &[Coord], edges: &[Edge]) -> Result<Vec<Vec<Port>>, JsonError> {
    let n = coords.len();
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    let mut at: BTreeMap<(usize, usize), VertexId> = BTreeMap::new();
    for (v, co) in coords.iter().enumerate() {
        let s = sizes.entry(co.cycle).or_insert(0);
        *s = (*s).max(co.pos + 1);
        if at.insert((co.cycle, co.pos), VertexId(v)).is_some() {
            return Err(invalid(format!(
                "two vertices at cycle {} pos {}",
                co.cycle, co.pos
            )));
        }
    }
    let mut radial_of: Vec<Option<VertexId>> = vec![None; n];
    for e in edges {
        if coords[e.u.0].cycle != coords[e.v.0].cycle {
            for w in [e.u, e.v] {
                if radial_of[w.0].replace(e.other(w)).is_some() {
                    return Err(invalid(format!("vertex {w} lies on two radial edges")));
                }
            }
        }
    }
    (0..n)
        .map(|v| {
            let co = coords[v];
            let len = sizes[&co.cycle];
            let lookup = |pos: usize| {
                at.get(&(co.cycle, pos % len))
                    .copied()
                    .ok_or_else(|| invalid(format!("cycle {} has a gap", co.cycle)))
            };
            let prev = lookup(co.pos + len - 1)?;
            let next = lookup(co.pos + 1)?;
            let radial =
                radial_of[v].ok_or_else(|| invalid(format!("vertex {v} has no radial edge")))?;
            Ok(if coords[radial.0].cycle == co.cycle + 1 {
                vec![Port::Edge(prev), Port::Edge(radial), Port::Edge(next)]
            } else {
                vec![Port::Edge(prev), Port::Edge(next), Port::Edge(radial)]
            })
        })
        .collect()
}

pub fn doc_to_disc(doc: &GraphDoc) -> Result<Nanodisc, JsonError> {
    let r = doc
        .radius
        .ok_or_else(|| invalid("document carries no radius"))?;
    let coords =
        doc_coords(doc)?.ok_or_else(|| invalid("disc ingestion needs cycle coordinates"))?;
    let graph = doc_to_graph(doc)?;
    Ok(Nanodisc::from_graph(graph, r, coords)?)
}

pub fn coloring_to_doc(c: &TotalColoring) -> ColoringDoc {
    ColoringDoc {
        k: c.k(),
        assignment: c.iter().map(|(el, color)| (el.key(), color.0)).collect(),
    }
}

pub fn doc_to_coloring(doc: &ColoringDoc) -> Result<TotalColoring, JsonError> {
    let mut c = TotalColoring::new(doc.k);
    for (key, &color) in &doc.assignment {
        let el = Element::parse_key(key).ok_or_else(|| JsonError::BadKey(key.clone()))?;
        c.set(el, Color(color))?;
    }
    Ok(c)
}

pub fn report_to_doc(rep: &ConflictReport) -> ReportDoc {
    ReportDoc {
        proper: rep.is_proper(),
        total: rep.is_total(),
        conflicts: rep
            .conflicts
            .iter()
            .map(|c| ConflictDoc {
                a: c.a.key(),
                b: c.b.key(),
                color: c.color.0,
                relation: c.relation.to_string(),
            })
            .collect(),
        uncolored: rep.uncolored.iter().map(Element::key).collect(),
    }
}

pub fn witness_to_doc(w: &FamilyWitness) -> WitnessDoc {
    WitnessDoc {
        graph: disc_to_doc(&w.nanodisc),
        coloring: coloring_to_doc(&w.coloring),
        report: report_to_doc(&w.report),
        provenance: match w.provenance {
            Provenance::Constructive => "constructive".into(),
            Provenance::Solver => "solver".into(),
        },
        oracle_constraints: w.constraints.clone(),
    }
}

/// Owned counterpart of a solver problem, as read from a document.
pub struct ProblemParts {
    pub graph: Semigraph,
    pub k: u8,
    pub pins: TotalColoring,
    pub symmetry: Symmetry,
    pub distinct: Vec<(Element, Element)>,
}

impl ProblemParts {
    pub fn as_problem(&self) -> TotalProblem<'_> {
        TotalProblem {
            graph: &self.graph,
            k: self.k,
            pins: self.pins.clone(),
            symmetry: self.symmetry.clone(),
            distinct: self.distinct.clone(),
        }
    }
}

fn parse_key(key: &str) -> Result<Element, JsonError> {
    Element::parse_key(key).ok_or_else(|| JsonError::BadKey(key.to_string()))
}

pub fn doc_to_problem(doc: &ProblemDoc) -> Result<ProblemParts, JsonError> {
    let graph = doc_to_graph(&doc.graph)?;
    let mut pins = TotalColoring::new(doc.k);
    for (key, &color) in &doc.pins {
        pins.set(parse_key(key)?, Color(color))?;
    }
    let symmetry = match &doc.symmetry {
        SymmetryDoc::None => Symmetry::None,
        SymmetryDoc::FixElement => Symmetry::FixElement,
        SymmetryDoc::Orbits(orbits) => Symmetry::Orbits(
            orbits
                .iter()
                .map(|o| o.iter().map(|k| parse_key(k)).collect())
                .collect::<Result<_, _>>()?,
        ),
    };
    let distinct = doc
        .distinct
        .iter()
        .map(|[a, b]| Ok((parse_key(a)?, parse_key(b)?)))
        .collect::<Result<_, JsonError>>()?;
    Ok(ProblemParts {
        graph,
        k: doc.k,
        pins,
        symmetry,
        distinct,
    })
}

pub fn problem_to_doc(p: &TotalProblem<'_>) -> ProblemDoc {
    ProblemDoc {
        graph: graph_to_doc(p.graph),
        k: p.k,
        pins: p.pins.iter().map(|(el, c)| (el.key(), c.0)).collect(),
        symmetry: match &p.symmetry {
            Symmetry::None => SymmetryDoc::None,
            Symmetry::FixElement => SymmetryDoc::FixElement,
            Symmetry::Orbits(orbits) => SymmetryDoc::Orbits(
                orbits
                    .iter()
                    .map(|o| o.iter().map(Element::key).collect())
                    .collect(),
            ),
        },
        distinct: p
            .distinct
            .iter()
            .map(|(a, b)| [a.key(), b.key()])
            .collect(),
    }
}

pub fn result_to_doc(res: &SolveResult) -> ResultDoc {
    let (status, coloring) = match &res.status {
        SolveStatus::Sat(c) => ("sat", Some(coloring_to_doc(c))),
        SolveStatus::Unsat => ("unsat", None),
        SolveStatus::BudgetExceeded => ("budget-exceeded", None),
    };
    ResultDoc {
        status: status.into(),
        coloring,
        stats: StatsDoc {
            nodes: res.stats.nodes,
            max_depth: res.stats.max_depth,
            wall_ms: res.stats.wall.as_millis(),
        },
    }
}
