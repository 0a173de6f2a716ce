//! Generator and structural model of fullerene nanodiscs.
//!
//! The disc of radius `r >= 2` is a cubic planar graph of girth 5 on
//! `12r^2` vertices. It is organized around `2r` concentric cycles (cycle
//! `0` is the outermost); consecutive cycles are joined by radial edges
//! forming a perfect matching, and the sphere embedding has `6r^2 + 2`
//! faces: an outer cap, `2r - 1` face layers between consecutive cycles,
//! and an inner cap. All faces are hexagons except the twelve pentagons of
//! the central layer (layer `r`), which come in six adjacent pairs, and
//! the two hexagonal caps.
//!
//! Positions increase clockwise on every cycle. Layer faces are listed
//! clockwise by where their boundary arc starts on the outer cycle of the
//! layer; each face of layer `i` touches exactly cycles `i - 1` and `i`.
//!
//! [`generate`] builds the disc; [`Nanodisc::from_graph`] reconstructs all
//! layer metadata from a bare graph with cycle coordinates and performs
//! full structural validation, so generated and ingested discs go through
//! the same classification code.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::semigraph::{Edge, EdgeKind, Element, GraphError, Port, Semigraph, VertexId};

/// Position of a vertex: which concentric cycle, and where on it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Coord {
    pub cycle: usize,
    pub pos: usize,
}

/// Shape of a layer face, seen from the two cycles it touches.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum FaceClass {
    /// Cap face (layer 0 or layer `2r`).
    Cap,
    /// Hexagon with three vertices on each cycle.
    Balanced,
    /// Hexagon with four vertices on `four_side` and two on the other cycle.
    Unbalanced { four_side: usize },
    /// Pentagon with two vertices on `two_side` and three on the other cycle.
    Pentagon { two_side: usize },
}

impl fmt::Display for FaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceClass::Cap => write!(f, "cap"),
            FaceClass::Balanced => write!(f, "balanced hexagon"),
            FaceClass::Unbalanced { four_side } => {
                write!(f, "unbalanced hexagon (four vertices on cycle {four_side})")
            }
            FaceClass::Pentagon { two_side } => {
                write!(f, "pentagon (two vertices on cycle {two_side})")
            }
        }
    }
}

/// A classified face: canonical boundary walk plus its class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaceInfo {
    pub class: FaceClass,
    pub boundary: Vec<VertexId>,
}

impl FaceInfo {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Boundary edges as elements (consecutive walk pairs, wrapping).
    pub fn boundary_edges(&self) -> Vec<Element> {
        let n = self.boundary.len();
        (0..n)
            .map(|i| Element::edge(self.boundary[i], self.boundary[(i + 1) % n]))
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LayerKind {
    Cap,
    Hexagonal,
    Central,
}

/// One face layer: `index` 0 is the outer cap, `2r` the inner cap, and
/// layer `i` in between holds the faces touching cycles `i - 1` and `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LayerInfo {
    pub index: usize,
    pub kind: LayerKind,
    pub faces: Vec<FaceInfo>,
}

/// An adjacent pentagon pair of the central layer. The `outer` pentagon has
/// its two-vertex side on the outer central cycle (`r - 1`), the `inner`
/// one on the inner central cycle (`r`); they share one radial edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PentagonPair {
    pub outer: FaceInfo,
    pub inner: FaceInfo,
    /// The radial edge both pentagons lie on.
    pub shared_radial: Element,
}

impl PentagonPair {
    /// The two clockwise-consecutive vertices of the outer pentagon on the
    /// outer central cycle.
    pub fn outer_two_side(&self, d: &Nanodisc) -> (VertexId, VertexId) {
        d.two_side_of_pentagon(&self.outer)
    }

    /// The two clockwise-consecutive vertices of the inner pentagon on the
    /// inner central cycle.
    pub fn inner_two_side(&self, d: &Nanodisc) -> (VertexId, VertexId) {
        d.two_side_of_pentagon(&self.inner)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DiscError {
    #[error("radius {0} too small, discs start at radius 2")]
    RadiusTooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid disc structure: {0}")]
    InvalidStructure(String),
}

/// One structural check of a validation run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of [`check_structure`]: every structural invariant with its
/// pass/fail state.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

/// Number of vertices on each concentric cycle, outermost first:
/// `6, 18, ..., 12r-6, 12r-6, ..., 18, 6`.
pub fn cycle_sequence(r: usize) -> Result<Vec<usize>, DiscError> {
    if r < 2 {
        return Err(DiscError::RadiusTooSmall(r));
    }
    Ok((0..2 * r).map(|c| cycle_len(r, c)).collect())
}

/// Number of faces in each layer, outer cap first:
/// `1, 6, 12, ..., 6(r-1), 6r, 6(r-1), ..., 12, 6, 1`.
pub fn face_sequence(r: usize) -> Result<Vec<usize>, DiscError> {
    if r < 2 {
        return Err(DiscError::RadiusTooSmall(r));
    }
    Ok((0..=2 * r).map(|i| layer_face_count(r, i)).collect())
}

fn cycle_len(r: usize, c: usize) -> usize {
    if c < r {
        12 * c + 6
    } else {
        12 * (2 * r - 1 - c) + 6
    }
}

fn layer_face_count(r: usize, layer: usize) -> usize {
    if layer == 0 || layer == 2 * r {
        1
    } else if layer <= r {
        6 * layer
    } else {
        6 * (2 * r - layer)
    }
}

/// A fullerene nanodisc: the graph plus all derived layer metadata.
#[derive(Clone, Debug)]
pub struct Nanodisc {
    graph: Semigraph,
    r: usize,
    coords: Vec<Coord>,
    cycles: Vec<Vec<VertexId>>,
    layers: Vec<LayerInfo>,
    pentagon_pairs: Vec<PentagonPair>,
}

impl Nanodisc {
    /// Rebuilds the full disc model from a bare graph and per-vertex cycle
    /// coordinates, validating every structural invariant on the way.
    pub fn from_graph(graph: Semigraph, r: usize, coords: Vec<Coord>) -> Result<Self, DiscError> {
        if r < 2 {
            return Err(DiscError::RadiusTooSmall(r));
        }
        let n = 12 * r * r;
        if graph.vertex_count() != n {
            return Err(bad(format!(
                "expected {n} vertices for radius {r}, got {}",
                graph.vertex_count()
            )));
        }
        if coords.len() != n {
            return Err(bad(format!(
                "coordinate table covers {} of {n} vertices",
                coords.len()
            )));
        }
        if graph.semiedge_count() != 0 {
            return Err(bad("disc must be a closed graph".into()));
        }

        // Cycles must be densely and exactly populated.
        let mut cycles: Vec<Vec<Option<VertexId>>> = (0..2 * r)
            .map(|c| vec![None; cycle_len(r, c)])
            .collect();
        for (v, co) in coords.iter().enumerate() {
            if co.cycle >= 2 * r || co.pos >= cycle_len(r, co.cycle) {
                return Err(bad(format!(
                    "vertex {v} placed at cycle {} pos {}, out of range",
                    co.cycle, co.pos
                )));
            }
            if cycles[co.cycle][co.pos].replace(VertexId(v)).is_some() {
                return Err(bad(format!(
                    "two vertices at cycle {} pos {}",
                    co.cycle, co.pos
                )));
            }
        }
        let cycles: Vec<Vec<VertexId>> = cycles
            .into_iter()
            .map(|c| c.into_iter().map(Option::unwrap).collect())
            .collect();

        // Edge kinds must match the geometry, cycles must be complete, and
        // radial edges must join consecutive cycles.
        let mut radial_at: Vec<Option<VertexId>> = vec![None; n];
        for e in graph.edges() {
            let (a, b) = (coords[e.u.0], coords[e.v.0]);
            if a.cycle == b.cycle {
                let len = cycle_len(r, a.cycle);
                let step = (b.pos + len - a.pos) % len;
                if step != 1 && step != len - 1 {
                    return Err(bad(format!(
                        "edge {}-{} joins non-consecutive positions on cycle {}",
                        e.u, e.v, a.cycle
                    )));
                }
                if e.kind != EdgeKind::Cycle {
                    return Err(bad(format!("edge {}-{} should have kind cycle", e.u, e.v)));
                }
            } else {
                if a.cycle.abs_diff(b.cycle) != 1 {
                    return Err(bad(format!(
                        "edge {}-{} joins non-consecutive cycles",
                        e.u, e.v
                    )));
                }
                if e.kind != EdgeKind::Radial {
                    return Err(bad(format!("edge {}-{} should have kind radial", e.u, e.v)));
                }
                for w in [e.u, e.v] {
                    if radial_at[w.0].replace(e.other(w)).is_some() {
                        return Err(bad(format!("vertex {w} lies on two radial edges")));
                    }
                }
            }
        }
        if radial_at.iter().any(Option::is_none) {
            return Err(bad("radial edges do not form a perfect matching".into()));
        }
        for (c, cycle) in cycles.iter().enumerate() {
            for p in 0..cycle.len() {
                let q = (p + 1) % cycle.len();
                if graph.edge_between(cycle[p], cycle[q]).is_none() {
                    return Err(bad(format!("cycle {c} broken between pos {p} and {q}")));
                }
            }
        }
        if graph.edge_count() != 18 * r * r {
            return Err(bad(format!(
                "expected {} edges, got {}",
                18 * r * r,
                graph.edge_count()
            )));
        }
        if !graph.is_cubic() {
            return Err(bad("disc must be cubic".into()));
        }

        // Trace the embedding and classify every face into its layer.
        let faces = graph.faces()?;
        let mut layers: Vec<LayerInfo> = (0..=2 * r)
            .map(|index| LayerInfo {
                index,
                kind: if index == 0 || index == 2 * r {
                    LayerKind::Cap
                } else if index == r {
                    LayerKind::Central
                } else {
                    LayerKind::Hexagonal
                },
                faces: Vec::new(),
            })
            .collect();
        for face in faces {
            let cset: BTreeSet<usize> = face.boundary.iter().map(|v| coords[v.0].cycle).collect();
            let (layer, class) = match (cset.len(), cset.iter().next().copied().unwrap()) {
                (1, 0) => (0, FaceClass::Cap),
                (1, c) if c == 2 * r - 1 => (2 * r, FaceClass::Cap),
                (2, c) if cset.contains(&(c + 1)) => {
                    let on_outer = face
                        .boundary
                        .iter()
                        .filter(|v| coords[v.0].cycle == c)
                        .count();
                    let on_inner = face.boundary.len() - on_outer;
                    let class = match (on_outer, on_inner) {
                        (3, 3) => FaceClass::Balanced,
                        (4, 2) => FaceClass::Unbalanced { four_side: c },
                        (2, 4) => FaceClass::Unbalanced { four_side: c + 1 },
                        (2, 3) => FaceClass::Pentagon { two_side: c },
                        (3, 2) => FaceClass::Pentagon { two_side: c + 1 },
                        other => {
                            return Err(bad(format!(
                                "face with vertex split {other:?} across cycles {c},{}",
                                c + 1
                            )))
                        }
                    };
                    (c + 1, class)
                }
                _ => {
                    return Err(bad(format!(
                        "face touches cycles {cset:?}, not a cap or a single layer"
                    )))
                }
            };
            layers[layer].faces.push(FaceInfo {
                class,
                boundary: face.boundary,
            });
        }

        for layer in &mut layers {
            let expected = layer_face_count(r, layer.index);
            if layer.faces.len() != expected {
                return Err(bad(format!(
                    "layer {} has {} faces, expected {expected}",
                    layer.index,
                    layer.faces.len()
                )));
            }
            if layer.index == 0 || layer.index == 2 * r {
                continue;
            }
            let outer_cycle = layer.index - 1;
            let len = cycle_len(r, outer_cycle);
            let starts: Result<Vec<usize>, DiscError> = layer
                .faces
                .iter()
                .map(|f| arc_start(&coords, f, outer_cycle, len))
                .collect();
            let starts = starts?;
            let mut order: Vec<usize> = (0..layer.faces.len()).collect();
            order.sort_by_key(|&i| starts[i]);
            layer.faces = order.into_iter().map(|i| layer.faces[i].clone()).collect();
        }

        let disc = Nanodisc {
            graph,
            r,
            coords,
            cycles,
            layers,
            pentagon_pairs: Vec::new(),
        };
        let pairs = disc.classify_pentagon_pairs()?;
        let mut disc = disc;
        disc.pentagon_pairs = pairs;
        disc.validate_classes()?;
        Ok(disc)
    }

    fn classify_pentagon_pairs(&self) -> Result<Vec<PentagonPair>, DiscError> {
        let central = &self.layers[self.r];
        let outer: Vec<&FaceInfo> = central
            .faces
            .iter()
            .filter(|f| f.class == FaceClass::Pentagon { two_side: self.r - 1 })
            .collect();
        let inner: Vec<&FaceInfo> = central
            .faces
            .iter()
            .filter(|f| f.class == FaceClass::Pentagon { two_side: self.r })
            .collect();
        if outer.len() != 6 || inner.len() != 6 {
            return Err(bad(format!(
                "central layer has {} outer and {} inner pentagons, expected 6 + 6",
                outer.len(),
                inner.len()
            )));
        }
        let mut pairs = Vec::new();
        for o in outer {
            // The mate sits across the radial at the clockwise-second
            // vertex of the outer two-side. Above radius two this is the
            // only inner pentagon touching `o` at all; at radius two the
            // central layer is pentagons only, every inner one touches two
            // outer ones, and the radial picks the clockwise mate.
            let (_, snd) = self.two_side_of_pentagon(o);
            let partner = self.radial_partner(snd);
            if self.coords[partner.0].cycle != self.r {
                return Err(bad(
                    "outer pentagon's pair radial does not reach the inner cycle".into(),
                ));
            }
            let shared = Element::edge(snd, partner);
            let mates: Vec<&&FaceInfo> = inner
                .iter()
                .filter(|i| i.boundary_edges().contains(&shared))
                .collect();
            let [mate] = mates[..] else {
                return Err(bad(format!(
                    "{} inner pentagons share an outer pentagon's pair radial, expected 1",
                    mates.len()
                )));
            };
            pairs.push(PentagonPair {
                outer: o.clone(),
                inner: (*mate).clone(),
                shared_radial: shared,
            });
        }
        Ok(pairs)
    }

    /// Per-layer class census against the expected pattern.
    fn validate_classes(&self) -> Result<(), DiscError> {
        let r = self.r;
        for layer in &self.layers {
            let i = layer.index;
            let mut census: BTreeMap<FaceClass, usize> = BTreeMap::new();
            for f in &layer.faces {
                *census.entry(f.class).or_insert(0) += 1;
            }
            let expected: BTreeMap<FaceClass, usize> = if i == 0 || i == 2 * r {
                [(FaceClass::Cap, 1)].into_iter().collect()
            } else if i < r {
                let mut m = BTreeMap::new();
                m.insert(FaceClass::Unbalanced { four_side: i }, 6);
                if i > 1 {
                    m.insert(FaceClass::Balanced, 6 * (i - 1));
                }
                m
            } else if i == r {
                let mut m = BTreeMap::new();
                m.insert(FaceClass::Pentagon { two_side: r - 1 }, 6);
                m.insert(FaceClass::Pentagon { two_side: r }, 6);
                if r > 2 {
                    m.insert(FaceClass::Balanced, 6 * (r - 2));
                }
                m
            } else {
                let mut m = BTreeMap::new();
                m.insert(FaceClass::Unbalanced { four_side: i - 1 }, 6);
                if 2 * r - i > 1 {
                    m.insert(FaceClass::Balanced, 6 * (2 * r - i - 1));
                }
                m
            };
            if census != expected {
                return Err(bad(format!(
                    "layer {i} face classes {census:?} do not match expected {expected:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &Semigraph {
        &self.graph
    }

    pub fn radius(&self) -> usize {
        self.r
    }

    pub fn coord(&self, v: VertexId) -> Coord {
        self.coords[v.0]
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    /// Concentric cycles, outermost first; `cycles()[c][p]` is the vertex
    /// at position `p` of cycle `c`.
    pub fn cycles(&self) -> &[Vec<VertexId>] {
        &self.cycles
    }

    pub fn vertex_at(&self, cycle: usize, pos: usize) -> VertexId {
        let c = &self.cycles[cycle];
        c[pos.rem_euclid(c.len())]
    }

    pub fn layers(&self) -> &[LayerInfo] {
        &self.layers
    }

    /// The six adjacent pentagon pairs of the central layer, clockwise.
    pub fn pentagon_pairs(&self) -> &[PentagonPair] {
        &self.pentagon_pairs
    }

    /// The radial neighbour of `v` (every disc vertex has exactly one).
    pub fn radial_partner(&self, v: VertexId) -> VertexId {
        self.graph
            .neighbors(v)
            .find(|w| self.coords[w.0].cycle != self.coords[v.0].cycle)
            .expect("disc radial matching is perfect")
    }

    /// All radial edges (they form a perfect matching on the vertices).
    pub fn radial_edges(&self) -> Vec<Edge> {
        self.graph
            .edges()
            .iter()
            .copied()
            .filter(|e| e.kind == EdgeKind::Radial)
            .collect()
    }

    /// Radial edges between the two central cycles (`r - 1` and `r`).
    pub fn central_radials(&self) -> Vec<Element> {
        self.graph
            .edges()
            .iter()
            .filter(|e| {
                let (a, b) = (self.coords[e.u.0].cycle, self.coords[e.v.0].cycle);
                a.min(b) == self.r - 1 && a.max(b) == self.r
            })
            .map(Element::of_edge)
            .collect()
    }

    /// All radial edges lying on the boundary of an unbalanced hexagon.
    pub fn unbalanced_boundary_radials(&self) -> BTreeSet<Element> {
        let mut out = BTreeSet::new();
        for layer in &self.layers {
            for face in &layer.faces {
                if !matches!(face.class, FaceClass::Unbalanced { .. }) {
                    continue;
                }
                for el in face.boundary_edges() {
                    let Element::Edge(u, v) = el else { continue };
                    if self.coords[u.0].cycle != self.coords[v.0].cycle {
                        out.insert(el);
                    }
                }
            }
        }
        out
    }

    /// The two clockwise-consecutive vertices of a pentagon on its
    /// two-vertex side.
    pub fn two_side_of_pentagon(&self, pent: &FaceInfo) -> (VertexId, VertexId) {
        let FaceClass::Pentagon { two_side } = pent.class else {
            panic!("not a pentagon: {:?}", pent.class);
        };
        let len = self.cycles[two_side].len();
        let on_side: Vec<VertexId> = pent
            .boundary
            .iter()
            .copied()
            .filter(|v| self.coords[v.0].cycle == two_side)
            .collect();
        let [a, b] = on_side[..] else {
            panic!("pentagon two-side must hold exactly two vertices");
        };
        let (pa, pb) = (self.coords[a.0].pos, self.coords[b.0].pos);
        if (pa + 1) % len == pb {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// Face classes of the central layer in clockwise order.
pub fn classify_central_faces(d: &Nanodisc) -> Vec<FaceClass> {
    d.layers()[d.radius()].faces.iter().map(|f| f.class).collect()
}

/// Vertex permutation rotating the disc clockwise by `sectors` sixths of a
/// turn. The canonical disc is built from six identical sectors, so this
/// is a graph automorphism for every `sectors` in `0..6`.
pub fn rotate_map(d: &Nanodisc, sectors: usize) -> Vec<VertexId> {
    let mut map = vec![VertexId(0); d.graph().vertex_count()];
    for v in d.graph().vertices() {
        let Coord { cycle, pos } = d.coord(v);
        let len = d.cycles()[cycle].len();
        map[v.0] = d.vertex_at(cycle, pos + sectors * (len / 6));
    }
    map
}

fn bad(msg: String) -> DiscError {
    DiscError::InvalidStructure(msg)
}

fn arc_start(
    coords: &[Coord],
    face: &FaceInfo,
    cycle: usize,
    len: usize,
) -> Result<usize, DiscError> {
    let on: BTreeSet<usize> = face
        .boundary
        .iter()
        .filter(|v| coords[v.0].cycle == cycle)
        .map(|v| coords[v.0].pos)
        .collect();
    on.iter()
        .copied()
        .find(|&p| !on.contains(&((p + len - 1) % len)))
        .ok_or_else(|| bad(format!("face arc covers all of cycle {cycle}")))
}

/// Advances of one face along the two cycles of its layer: walking the
/// layer clockwise, the face spans `adv_outer + 1` vertices on the outer
/// cycle of the layer and `adv_inner + 1` on the inner one.
struct FaceStep {
    adv_outer: usize,
    adv_inner: usize,
}

/// The clockwise face pattern of one sector of a layer (one sixth of it).
fn sector_pattern(r: usize, layer: usize) -> Vec<FaceStep> {
    let step = |adv_outer, adv_inner| FaceStep {
        adv_outer,
        adv_inner,
    };
    let mut seq = Vec::new();
    if layer < r {
        // Outer hemisphere: the four-vertex side of the unbalanced hexagon
        // sits on the inner (larger) cycle of the layer.
        seq.push(step(1, 3));
        seq.extend((1..layer).map(|_| step(2, 2)));
    } else if layer == r {
        // Central layer: pentagon pair first, then balanced hexagons.
        seq.push(step(1, 2));
        seq.push(step(2, 1));
        seq.extend((2..r).map(|_| step(2, 2)));
    } else {
        // Inner hemisphere: mirror image, four-vertex side on the outer
        // (larger) cycle of the layer.
        seq.push(step(3, 1));
        seq.extend((layer + 1..2 * r).map(|_| step(2, 2)));
    }
    seq
}

/// Builds the fullerene nanodisc of the given radius.
pub fn generate(r: usize) -> Result<Nanodisc, DiscError> {
    if r < 2 {
        return Err(DiscError::RadiusTooSmall(r));
    }

    let sizes: Vec<usize> = (0..2 * r).map(|c| cycle_len(r, c)).collect();
    let mut offset = vec![0usize; 2 * r];
    for c in 1..2 * r {
        offset[c] = offset[c - 1] + sizes[c - 1];
    }
    let n = offset[2 * r - 1] + sizes[2 * r - 1];
    let id = |c: usize, p: usize| VertexId(offset[c] + p.rem_euclid(sizes[c]));

    let mut coords = vec![
        Coord { cycle: 0, pos: 0 };
        n
    ];
    for c in 0..2 * r {
        for p in 0..sizes[c] {
            coords[id(c, p).0] = Coord { cycle: c, pos: p };
        }
    }

    let mut edges = Vec::new();
    for c in 0..2 * r {
        for p in 0..sizes[c] {
            edges.push(Edge::new(id(c, p), id(c, p + 1), EdgeKind::Cycle));
        }
    }

    // Walk every layer clockwise, placing one radial edge at the start of
    // each face. The walk on the inner cycle of the layer is anchored at
    // position 0; the outer walk starts at the unique offset (modulo the
    // sector width) whose marks complete the marks left by the previous
    // layer to all of the shared cycle.
    let mut prev_marks: BTreeSet<usize> = BTreeSet::new();
    for layer in 1..2 * r {
        let (co, ci) = (layer - 1, layer);
        let pattern: Vec<FaceStep> = std::iter::repeat_with(|| sector_pattern(r, layer))
            .take(6)
            .flatten()
            .collect();
        let total_outer: usize = pattern.iter().map(|s| s.adv_outer).sum();
        let total_inner: usize = pattern.iter().map(|s| s.adv_inner).sum();
        debug_assert_eq!(total_outer, sizes[co]);
        debug_assert_eq!(total_inner, sizes[ci]);

        let mut cum_outer = vec![0usize];
        for s in &pattern {
            cum_outer.push(cum_outer.last().unwrap() + s.adv_outer);
        }
        cum_outer.pop();

        let stride = sizes[co] / 6;
        let mut chosen = None;
        for w in 0..stride {
            let marks: BTreeSet<usize> =
                cum_outer.iter().map(|&x| (w + x) % sizes[co]).collect();
            let ok = marks.len() + prev_marks.len() == sizes[co]
                && marks.is_disjoint(&prev_marks);
            if ok {
                assert!(
                    chosen.is_none(),
                    "outer walk offset of layer {layer} is ambiguous"
                );
                chosen = Some(w);
            }
        }
        let w = chosen.unwrap_or_else(|| panic!("no outer walk offset fits layer {layer}"));

        let mut inner_marks = BTreeSet::new();
        let mut bi = 0usize;
        for (j, s) in pattern.iter().enumerate() {
            edges.push(Edge::new(
                id(co, w + cum_outer[j]),
                id(ci, bi),
                EdgeKind::Radial,
            ));
            inner_marks.insert(bi % sizes[ci]);
            bi += s.adv_inner;
        }
        prev_marks = inner_marks;
    }

    // Rotation rule making positions increase clockwise on every cycle:
    // the radial port sits between the predecessor and successor ports
    // when it points towards the higher-index cycle, after them otherwise.
    let mut radial_of: Vec<Option<VertexId>> = vec![None; n];
    for e in &edges {
        if e.kind == EdgeKind::Radial {
            radial_of[e.u.0] = Some(e.v);
            radial_of[e.v.0] = Some(e.u);
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for v in 0..n {
        let Coord { cycle, pos } = coords[v];
        let prev = id(cycle, pos + sizes[cycle] - 1);
        let next = id(cycle, pos + 1);
        let radial = radial_of[v].unwrap_or_else(|| panic!("vertex {v} has no radial edge"));
        if coords[radial.0].cycle == cycle + 1 {
            rotation.push(vec![Port::Edge(prev), Port::Edge(radial), Port::Edge(next)]);
        } else {
            rotation.push(vec![Port::Edge(prev), Port::Edge(next), Port::Edge(radial)]);
        }
    }

    let graph = Semigraph::build(n, edges, Vec::new(), rotation)?;
    Nanodisc::from_graph(graph, r, coords)
}

/// Runs every structural invariant check on a disc and reports each one.
pub fn check_structure(d: &Nanodisc) -> ValidationReport {
    let r = d.radius();
    let g = d.graph();
    let mut rep = ValidationReport::default();

    let n = 12 * r * r;
    rep.push(
        "vertex count",
        g.vertex_count() == n,
        format!("{} of {n}", g.vertex_count()),
    );
    let m = 18 * r * r;
    rep.push(
        "edge count",
        g.edge_count() == m,
        format!("{} of {m}", g.edge_count()),
    );
    let f = 6 * r * r + 2;
    let total_faces: usize = d.layers().iter().map(|l| l.faces.len()).sum();
    rep.push("face count", total_faces == f, format!("{total_faces} of {f}"));
    rep.push(
        "cubic",
        g.is_cubic(),
        format!("max degree {}", g.max_degree()),
    );
    match g.girth() {
        Ok(girth) => rep.push("girth", girth == 5, format!("{girth}")),
        Err(e) => rep.push("girth", false, format!("{e}")),
    }

    let want_cycles = cycle_sequence(r).unwrap();
    let got_cycles: Vec<usize> = d.cycles().iter().map(Vec::len).collect();
    rep.push(
        "cycle lengths",
        got_cycles == want_cycles,
        format!("{got_cycles:?}"),
    );

    let want_faces = face_sequence(r).unwrap();
    let got_faces: Vec<usize> = d.layers().iter().map(|l| l.faces.len()).collect();
    rep.push(
        "layer face counts",
        got_faces == want_faces,
        format!("{got_faces:?}"),
    );

    let radials = g
        .edges()
        .iter()
        .filter(|e| e.kind == EdgeKind::Radial)
        .count();
    let mut matched = vec![0usize; g.vertex_count()];
    for e in g.edges() {
        if e.kind == EdgeKind::Radial {
            matched[e.u.0] += 1;
            matched[e.v.0] += 1;
        }
    }
    rep.push(
        "radial perfect matching",
        radials == 6 * r * r && matched.iter().all(|&c| c == 1),
        format!("{radials} radial edges"),
    );

    // The two-vertex side of a face, if it has one (pentagons, and the
    // short side of unbalanced hexagons).
    let two_side = |layer: usize, class: FaceClass| -> Option<usize> {
        match class {
            FaceClass::Pentagon { two_side } => Some(two_side),
            FaceClass::Unbalanced { four_side } => {
                Some(if four_side == layer { layer - 1 } else { layer })
            }
            _ => None,
        }
    };
    let mut crowding = Vec::new();
    for layer in d.layers() {
        if layer.faces.len() <= 6 {
            continue;
        }
        for (j, face) in layer.faces.iter().enumerate() {
            let next = &layer.faces[(j + 1) % layer.faces.len()];
            let (a, b) = (
                two_side(layer.index, face.class),
                two_side(layer.index, next.class),
            );
            if a.is_some() && a == b {
                crowding.push((layer.index, j));
            }
        }
    }
    rep.push(
        "no neighbouring faces share a two-vertex side",
        crowding.is_empty(),
        format!("{} violations", crowding.len()),
    );

    let central_hexagons_balanced = d.layers()[r]
        .faces
        .iter()
        .filter(|f| f.len() == 6)
        .all(|f| f.class == FaceClass::Balanced);
    rep.push(
        "central hexagons balanced",
        central_hexagons_balanced,
        format!(
            "{} hexagons in central layer",
            d.layers()[r].faces.iter().filter(|f| f.len() == 6).count()
        ),
    );

    let pentagon_sides: Vec<usize> = d.layers()[r]
        .faces
        .iter()
        .filter_map(|f| match f.class {
            FaceClass::Pentagon { two_side } => Some(two_side),
            _ => None,
        })
        .collect();
    let alternating = !pentagon_sides.is_empty()
        && (0..pentagon_sides.len()).all(|j| {
            pentagon_sides[j] != pentagon_sides[(j + 1) % pentagon_sides.len()]
        });
    rep.push(
        "consecutive pentagons partitioned differently",
        alternating,
        format!("{pentagon_sides:?}"),
    );

    let mut unbalanced_per_layer_ok = true;
    let mut unbalanced_counts = Vec::new();
    for layer in d.layers() {
        if layer.kind != LayerKind::Hexagonal {
            continue;
        }
        let u = layer
            .faces
            .iter()
            .filter(|f| matches!(f.class, FaceClass::Unbalanced { .. }))
            .count();
        unbalanced_counts.push(u);
        if u != 6 {
            unbalanced_per_layer_ok = false;
        }
    }
    rep.push(
        "six unbalanced hexagons per hexagonal layer",
        unbalanced_per_layer_ok,
        format!("{unbalanced_counts:?}"),
    );

    let pentagons: Vec<&FaceInfo> = d
        .layers()
        .iter()
        .flat_map(|l| &l.faces)
        .filter(|f| matches!(f.class, FaceClass::Pentagon { .. }))
        .collect();
    rep.push(
        "pentagon count",
        pentagons.len() == 12,
        format!("{}", pentagons.len()),
    );
    let central_pentagons = d.layers()[r]
        .faces
        .iter()
        .filter(|f| matches!(f.class, FaceClass::Pentagon { .. }))
        .count();
    rep.push(
        "pentagons confined to central layer",
        central_pentagons == 12,
        format!("{central_pentagons} in layer {r}"),
    );
    rep.push(
        "adjacent pentagon pairs",
        d.pentagon_pairs().len() == 6,
        format!("{} pairs", d.pentagon_pairs().len()),
    );

    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_radius_below_two() {
        assert_eq!(generate(0).unwrap_err(), DiscError::RadiusTooSmall(0));
        assert_eq!(generate(1).unwrap_err(), DiscError::RadiusTooSmall(1));
        assert!(cycle_sequence(1).is_err());
    }

    #[test]
    fn sequences_match_closed_forms() {
        assert_eq!(cycle_sequence(2).unwrap(), vec![6, 18, 18, 6]);
        assert_eq!(cycle_sequence(3).unwrap(), vec![6, 18, 30, 30, 18, 6]);
        assert_eq!(face_sequence(2).unwrap(), vec![1, 6, 12, 6, 1]);
        assert_eq!(face_sequence(3).unwrap(), vec![1, 6, 12, 18, 12, 6, 1]);
    }

    #[test]
    fn radius_two_counts() {
        let d = generate(2).unwrap();
        let g = d.graph();
        assert_eq!(g.vertex_count(), 48);
        assert_eq!(g.edge_count(), 72);
        let faces: usize = d.layers().iter().map(|l| l.faces.len()).sum();
        assert_eq!(faces, 26);
        assert!(g.is_cubic());
        assert_eq!(g.girth().unwrap(), 5);
    }

    #[test]
    fn counts_scale_with_radius() {
        for r in 2..=6 {
            let d = generate(r).unwrap();
            assert_eq!(d.graph().vertex_count(), 12 * r * r, "vertices at r={r}");
            assert_eq!(d.graph().edge_count(), 18 * r * r, "edges at r={r}");
            let faces: usize = d.layers().iter().map(|l| l.faces.len()).sum();
            assert_eq!(faces, 6 * r * r + 2, "faces at r={r}");
            assert!(check_structure(&d).is_ok(), "structure at r={r}");
        }
    }

    #[test]
    fn central_layer_face_pattern() {
        let d = generate(3).unwrap();
        let classes: Vec<FaceClass> = d.layers()[3].faces.iter().map(|f| f.class).collect();
        let sector = [
            FaceClass::Pentagon { two_side: 2 },
            FaceClass::Pentagon { two_side: 3 },
            FaceClass::Balanced,
        ];
        let expected: Vec<FaceClass> = std::iter::repeat_with(|| sector)
            .take(6)
            .flatten()
            .collect();
        assert_eq!(classes, expected);
    }

    #[test]
    fn unbalanced_hexagons_face_the_centre() {
        let d = generate(4).unwrap();
        for layer in d.layers() {
            for face in &layer.faces {
                if let FaceClass::Unbalanced { four_side } = face.class {
                    let expected = if layer.index < 4 {
                        layer.index
                    } else {
                        layer.index - 1
                    };
                    assert_eq!(four_side, expected, "layer {}", layer.index);
                }
            }
        }
    }

    #[test]
    fn pentagon_pairs_share_central_radials() {
        let d = generate(2).unwrap();
        assert_eq!(d.pentagon_pairs().len(), 6);
        let centrals: BTreeSet<Element> = d.central_radials().into_iter().collect();
        for pair in d.pentagon_pairs() {
            assert!(centrals.contains(&pair.shared_radial));
            let (x, y) = pair.outer_two_side(&d);
            assert_eq!(d.coord(x).cycle, 1);
            assert_eq!((d.coord(x).pos + 1) % 18, d.coord(y).pos);
            let (xi, yi) = pair.inner_two_side(&d);
            assert_eq!(d.coord(xi).cycle, 2);
            assert_eq!((d.coord(xi).pos + 1) % 18, d.coord(yi).pos);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate(3).unwrap();
        let b = generate(3).unwrap();
        assert_eq!(a.graph().edges(), b.graph().edges());
        assert_eq!(a.layers(), b.layers());
        assert_eq!(a.pentagon_pairs(), b.pentagon_pairs());
    }

    #[test]
    fn from_graph_round_trips_generation() {
        let d = generate(3).unwrap();
        let again =
            Nanodisc::from_graph(d.graph().clone(), 3, d.coords().to_vec()).unwrap();
        assert_eq!(again.layers(), d.layers());
        assert_eq!(again.pentagon_pairs(), d.pentagon_pairs());
    }

    #[test]
    fn from_graph_rejects_tampered_structure() {
        let d = generate(2).unwrap();
        let mut edges = d.graph().edges().to_vec();
        // Reroute one radial edge; the matching and faces both break.
        let i = edges
            .iter()
            .position(|e| e.kind == EdgeKind::Radial)
            .unwrap();
        let j = edges
            .iter()
            .rposition(|e| e.kind == EdgeKind::Radial)
            .unwrap();
        let (a, b) = (edges[i], edges[j]);
        edges[i] = Edge::new(a.u, b.v, EdgeKind::Radial);
        edges[j] = Edge::new(b.u, a.v, EdgeKind::Radial);
        let g = Semigraph::build_unembedded(48, edges, vec![]);
        match g {
            Ok(g) => {
                assert!(Nanodisc::from_graph(g, 2, d.coords().to_vec()).is_err());
            }
            Err(_) => {} // rewiring may collide with an existing edge
        }
    }

    #[test]
    fn unbalanced_boundary_radials_count() {
        // Each unbalanced hexagon has two boundary radials. The layers
        // touching the caps hold nothing but unbalanced hexagons, so there
        // every radial is shared by two of them (6 distinct); in the mixed
        // layers each of the 12 radials borders exactly one.
        for (r, expect) in [(2, 6 + 6), (3, 6 + 12 + 12 + 6)] {
            let d = generate(r).unwrap();
            let unbalanced = d
                .layers()
                .iter()
                .flat_map(|l| &l.faces)
                .filter(|f| matches!(f.class, FaceClass::Unbalanced { .. }))
                .count();
            assert_eq!(unbalanced, 6 * 2 * (r - 1));
            assert_eq!(d.unbalanced_boundary_radials().len(), expect, "radius {r}");
        }
    }

    #[test]
    fn radial_partner_is_involutive() {
        let d = generate(2).unwrap();
        for v in d.graph().vertices() {
            let w = d.radial_partner(v);
            assert_eq!(d.radial_partner(w), v);
            assert_eq!(d.coord(v).cycle.abs_diff(d.coord(w).cycle), 1);
        }
    }
}
