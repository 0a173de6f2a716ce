//! Cut-and-reassemble algebra on discs: hemispheres, layer-path blocks,
//! in-hemisphere identification and cross-hemisphere junction.
//!
//! A disc splits into two isomorphic hemispheres by cutting the central
//! radial edges into semiedges. Each hemisphere carries labeled cycles
//! C^1..C^r (C^1 the central one) and splits further into three blocks
//! along anchor lines; blocks reassemble by fusing frontiers
//! ([`junction_identify`], [`wrap`]) or by pairing stubs back into radial
//! edges ([`junction_blocks`], [`junction_hemispheres`]). All operations
//! are pure and return rename maps so colorings transfer mechanically.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::coloring::TotalColoring;
use crate::disc::Nanodisc;
use crate::semigraph::{Edge, EdgeKind, Element, Semiedge, Semigraph, VertexId};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Outer,
    Inner,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Outer => Side::Inner,
            Side::Inner => Side::Outer,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("operands come from different hemisphere sides")]
    SideMismatch,
    #[error("radii differ: {0} vs {1}")]
    RadiusMismatch(usize, usize),
    #[error("block indices differ: {0} vs {1}")]
    IndexMismatch(usize, usize),
    #[error("block index must be 1, 3 or 5, got {0}")]
    BadIndex(usize),
    #[error("hemisphere carries no pentagon anchors")]
    MissingAnchors,
    #[error("frontiers do not line up: {0}")]
    FrontierShapeMismatch(String),
    #[error("operand is already wrapped closed")]
    AlreadyWrapped,
    #[error("operand is not wrapped closed")]
    NotWrapped,
    #[error("only the paired-pentagon stub layout can be joined")]
    CaseUnsupported,
    #[error("coloring does not cover its block: {0}")]
    DomainMismatch(String),
    #[error("structural invariant broke: {0}")]
    Internal(String),
}

fn internal<S: Into<String>>(s: S) -> BlockError {
    BlockError::Internal(s.into())
}

/// Start of a pentagon's two-vertex side on the central cycle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PentAnchor {
    /// Position of the clockwise-first of the two side vertices on C^1.
    pub x: usize,
    /// Index of the pentagon pair this pentagon belongs to in the disc.
    pub pair: usize,
}

/// Half of a disc, cut along the central radial edges. Cycles are indexed
/// C^1 (central, length 12r-6) through C^r (cap, length 6); positions on
/// the inner half run mirrored to the disc so that both hemispheres look
/// identical from their own pole.
#[derive(Clone, Debug)]
pub struct Hemisphere {
    side: Side,
    r: usize,
    graph: Semigraph,
    cycles: Vec<Vec<VertexId>>,
    coords: Vec<(usize, usize)>,
    to_parent: Vec<VertexId>,
    pents: Option<Vec<PentAnchor>>,
}

impl Hemisphere {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn radius(&self) -> usize {
        self.r
    }

    pub fn graph(&self) -> &Semigraph {
        &self.graph
    }

    /// Vertices of C^t in clockwise order, `t` in `1..=r`.
    pub fn cycle(&self, t: usize) -> &[VertexId] {
        &self.cycles[t - 1]
    }

    pub fn cycles(&self) -> &[Vec<VertexId>] {
        &self.cycles
    }

    /// (cycle index 1..=r, position) of a local vertex.
    pub fn coord(&self, v: VertexId) -> (usize, usize) {
        self.coords[v.0]
    }

    /// Vertex ids of the structure this hemisphere was cut from.
    pub fn to_parent(&self) -> &[VertexId] {
        &self.to_parent
    }

    pub fn pentagon_anchors(&self) -> Option<&[PentAnchor]> {
        self.pents.as_deref()
    }

    fn neighbor_on(&self, v: VertexId, t: usize) -> Option<VertexId> {
        self.graph.neighbors(v).find(|w| self.coords[w.0].0 == t)
    }
}

/// Splits a disc along its central radial edges. Each cut edge uv leaves
/// a semiedge at u in one half and at v in the other.
pub fn split_hemispheres(d: &Nanodisc) -> Result<(Hemisphere, Hemisphere), BlockError> {
    Ok((half(d, Side::Outer)?, half(d, Side::Inner)?))
}

fn half(d: &Nanodisc, side: Side) -> Result<Hemisphere, BlockError> {
    let r = d.radius();
    let disc_cycle = |t: usize| match side {
        Side::Outer => r - t,
        Side::Inner => r - 1 + t,
    };

    let mut keep = BTreeSet::new();
    for t in 1..=r {
        keep.extend(d.cycles()[disc_cycle(t)].iter().copied());
    }
    let (graph, to_parent) = d
        .graph()
        .induced(&keep, true)
        .map_err(|e| internal(e.to_string()))?;
    let local: BTreeMap<VertexId, VertexId> = to_parent
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, VertexId(i)))
        .collect();

    let mut cycles = Vec::with_capacity(r);
    for t in 1..=r {
        let src = &d.cycles()[disc_cycle(t)];
        let list: Vec<VertexId> = match side {
            Side::Outer => src.iter().map(|v| local[v]).collect(),
            // Mirror positions so this half's own clockwise matches the
            // other half's.
            Side::Inner => std::iter::once(&src[0])
                .chain(src[1..].iter().rev())
                .map(|v| local[v])
                .collect(),
        };
        cycles.push(list);
    }

    let mut coords = vec![(0usize, 0usize); graph.vertex_count()];
    for (ti, cyc) in cycles.iter().enumerate() {
        for (p, &v) in cyc.iter().enumerate() {
            coords[v.0] = (ti + 1, p);
        }
    }

    let l1 = cycles[0].len();
    let mut pents = Vec::new();
    for (j, pair) in d.pentagon_pairs().iter().enumerate() {
        let (a, b) = match side {
            Side::Outer => pair.outer_two_side(d),
            Side::Inner => pair.inner_two_side(d),
        };
        let la = coords[local[&a].0].1;
        let lb = coords[local[&b].0].1;
        let x = if (la + 1) % l1 == lb {
            la
        } else if (lb + 1) % l1 == la {
            lb
        } else {
            return Err(internal("pentagon side not adjacent on the central cycle"));
        };
        pents.push(PentAnchor { x, pair: j });
    }
    pents.sort_by_key(|p| p.x);
    for w in 0..6 {
        let a = pents[w].x;
        let b = pents[(w + 1) % 6].x;
        if (b + l1 - a) % l1 != 2 * r - 1 {
            return Err(internal("pentagon spacing on the central cycle broken"));
        }
    }

    Ok(Hemisphere {
        side,
        r,
        graph,
        cycles,
        coords,
        to_parent,
        pents: Some(pents),
    })
}

/// A slab of a hemisphere: one layer path per cycle, plus everything the
/// paths induce. Blocks are patches; so are chains of identified blocks.
#[derive(Clone, Debug)]
pub struct Patch {
    pub side: Side,
    pub r: usize,
    pub graph: Semigraph,
    /// `paths[t-1]` lists the layer-t path left to right; once `wrapped`,
    /// each entry is the full closed cycle.
    pub paths: Vec<Vec<VertexId>>,
    /// Local ids of the hemisphere this patch was cut from.
    pub to_hemisphere: Vec<VertexId>,
    pub wrapped: bool,
}

/// Frontier of a patch: the anchor vertices, the radial edges between
/// consecutive anchors, and the central stub when the radius is odd.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Frontier {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Edge>,
    pub semis: Vec<Element>,
}

impl Patch {
    pub fn left_anchor(&self, t: usize) -> VertexId {
        self.paths[t - 1][0]
    }

    pub fn right_anchor(&self, t: usize) -> VertexId {
        *self.paths[t - 1].last().unwrap()
    }

    pub fn stub_at(&self, v: VertexId) -> Option<Element> {
        self.graph
            .incidences(v)
            .find(|el| matches!(el, Element::Semi(..)))
    }

    /// The unique radial edge at an anchor, if any.
    pub fn radial_at(&self, v: VertexId) -> Option<Edge> {
        self.graph.incidences(v).find_map(|el| match el {
            Element::Edge(x, y) => self
                .graph
                .edge_between(x, y)
                .filter(|e| e.kind == EdgeKind::Radial)
                .copied(),
            _ => None,
        })
    }

    /// First edge of the layer-t path counted from the left end.
    pub fn left_path_edge(&self, t: usize) -> Edge {
        let p = &self.paths[t - 1];
        *self.graph.edge_between(p[0], p[1]).unwrap()
    }

    pub fn right_path_edge(&self, t: usize) -> Edge {
        let p = &self.paths[t - 1];
        *self.graph.edge_between(p[p.len() - 2], p[p.len() - 1]).unwrap()
    }

    pub fn left_frontier(&self) -> Frontier {
        self.frontier(|t| self.left_anchor(t))
    }

    pub fn right_frontier(&self) -> Frontier {
        self.frontier(|t| self.right_anchor(t))
    }

    fn frontier(&self, anchor: impl Fn(usize) -> VertexId) -> Frontier {
        let vertices: Vec<VertexId> = (1..=self.r).map(&anchor).collect();
        let mut edges = Vec::new();
        for t in 1..self.r {
            if let Some(e) = self.graph.edge_between(anchor(t), anchor(t + 1)) {
                edges.push(*e);
            }
        }
        let semis = self.stub_at(anchor(1)).into_iter().collect();
        Frontier {
            vertices,
            edges,
            semis,
        }
    }

    /// Stubs in clockwise order along the central path.
    pub fn stubs_clockwise(&self) -> Vec<Element> {
        self.paths[0]
            .iter()
            .filter_map(|&v| self.stub_at(v))
            .collect()
    }
}

/// One third of a hemisphere, spanning two consecutive pentagons.
#[derive(Clone, Debug)]
pub struct Block {
    pub patch: Patch,
    /// Odd index of the block's first pentagon (1, 3 or 5).
    pub i: usize,
    /// Disc pentagon-pair indices covered, in clockwise order.
    pub pair_ids: (usize, usize),
}

impl Block {
    pub fn path(&self, t: usize) -> &[VertexId] {
        &self.patch.paths[t - 1]
    }

    pub fn graph(&self) -> &Semigraph {
        &self.patch.graph
    }

    pub fn radius(&self) -> usize {
        self.patch.r
    }
}

/// Cuts the block spanning pentagons i and i+1 out of a hemisphere.
///
/// The central path runs from r positions anticlockwise of the first
/// pentagon's side to r positions clockwise of the second's; each higher
/// path is the unique window of 4(r-t)+3 vertices covering all radial
/// neighbors of the path below it.
pub fn extract_block(h: &Hemisphere, i: usize) -> Result<Block, BlockError> {
    if !(i == 1 || i == 3 || i == 5) {
        return Err(BlockError::BadIndex(i));
    }
    let pents = h.pents.as_ref().ok_or(BlockError::MissingAnchors)?;
    let r = h.r;
    let l1 = h.cycles[0].len();

    let want = [i - 1, i];
    let sel: Vec<&PentAnchor> = pents.iter().filter(|p| want.contains(&p.pair)).collect();
    if sel.len() != 2 {
        return Err(internal("pentagon pair indices missing from hemisphere"));
    }
    let (first, second) = {
        let (p, q) = (sel[0], sel[1]);
        if (q.x + l1 - p.x) % l1 == 2 * r - 1 {
            (p, q)
        } else if ((p.x + l1 - q.x) % l1) == 2 * r - 1 {
            (q, p)
        } else {
            return Err(internal("selected pentagons are not clockwise-consecutive"));
        }
    };

    let ul1 = (first.x + 1 + l1 - r) % l1;
    let mut paths_local: Vec<Vec<VertexId>> = Vec::with_capacity(r);
    paths_local.push(
        (0..4 * r - 1)
            .map(|j| h.cycles[0][(ul1 + j) % l1])
            .collect(),
    );
    for t in 2..=r {
        let lt = h.cycles[t - 1].len();
        let w = 4 * (r - t) + 3;
        let prev = &paths_local[t - 2];
        let marks: Vec<usize> = prev
            .iter()
            .filter_map(|&v| h.neighbor_on(v, t))
            .map(|u| h.coords[u.0].1)
            .collect();
        if marks.is_empty() {
            return Err(internal(format!("no radial marks entering layer {t}")));
        }
        let fits = |s: usize| marks.iter().all(|&m| (m + lt - s) % lt < w);
        let candidates: Vec<usize> = (0..lt).filter(|&s| fits(s)).collect();
        let start = match candidates.len() {
            0 => return Err(internal(format!("marks exceed the layer-{t} window"))),
            1 => candidates[0],
            _ => {
                // An end of the previous path whose radial enters this
                // layer pins the window flush to that side. When neither
                // does, the anchor line skips this pair of layers and the
                // anchor must instead continue upward itself.
                let fl = h.neighbor_on(prev[0], t).map(|u| h.coords[u.0].1);
                let fr = h
                    .neighbor_on(*prev.last().unwrap(), t)
                    .map(|u| h.coords[u.0].1);
                let forced = match (fl, fr) {
                    (Some(p), _) => p,
                    (None, Some(p)) => (p + lt - (w - 1)) % lt,
                    (None, None) => {
                        let ups: Vec<usize> = candidates
                            .iter()
                            .copied()
                            .filter(|&s| {
                                t < r
                                    && h.neighbor_on(h.cycles[t - 1][s], t + 1).is_some()
                            })
                            .collect();
                        let [only] = ups[..] else {
                            return Err(internal(format!("layer-{t} window ambiguous")));
                        };
                        only
                    }
                };
                if !candidates.contains(&forced) {
                    return Err(internal(format!("forced layer-{t} window not viable")));
                }
                forced
            }
        };
        paths_local.push((0..w).map(|j| h.cycles[t - 1][(start + j) % lt]).collect());
    }

    let keep: BTreeSet<VertexId> = paths_local.iter().flatten().copied().collect();
    let (graph, to_hemisphere) = h
        .graph
        .induced(&keep, false)
        .map_err(|e| internal(e.to_string()))?;
    let local: BTreeMap<VertexId, VertexId> = to_hemisphere
        .iter()
        .enumerate()
        .map(|(bi, &hv)| (hv, VertexId(bi)))
        .collect();
    let paths: Vec<Vec<VertexId>> = paths_local
        .iter()
        .map(|p| p.iter().map(|v| local[v]).collect())
        .collect();

    let patch = Patch {
        side: h.side,
        r,
        graph,
        paths,
        to_hemisphere,
        wrapped: false,
    };
    validate_patch(&patch)?;
    Ok(Block {
        patch,
        i,
        pair_ids: (first.pair, second.pair),
    })
}

/// Structural facts every freshly cut or fused patch must satisfy: path
/// lengths 4(r-t)+3, anchors carrying exactly one radial or stub, the
/// anchor-line radials alternating with the radius parity, stubs only at
/// the central anchors of odd radii, and the stub census (2r+1 odd, 2r
/// even).
fn validate_patch(p: &Patch) -> Result<(), BlockError> {
    let r = p.r;
    for t in 1..=r {
        if p.paths[t - 1].len() != 4 * (r - t) + 3 {
            return Err(internal(format!(
                "layer-{t} path has {} vertices, expected {}",
                p.paths[t - 1].len(),
                4 * (r - t) + 3
            )));
        }
    }
    for (name, anchors) in [
        ("left", (1..=r).map(|t| p.left_anchor(t)).collect::<Vec<_>>()),
        ("right", (1..=r).map(|t| p.right_anchor(t)).collect()),
    ] {
        if p.stub_at(anchors[0]).is_some() != (r % 2 == 1) {
            return Err(internal(format!("{name} central stub breaks parity rule")));
        }
        for t in 1..r {
            let e = p.graph.edge_between(anchors[t - 1], anchors[t]);
            let expect = t % 2 != r % 2;
            if e.is_some() != expect {
                return Err(internal(format!(
                    "{name} anchor radial between layers {t},{} breaks parity rule",
                    t + 1
                )));
            }
            if let Some(e) = e {
                if e.kind != EdgeKind::Radial {
                    return Err(internal("anchor line contains a non-radial edge"));
                }
            }
        }
        for (ti, &v) in anchors.iter().enumerate() {
            let radials = p
                .graph
                .neighbors(v)
                .filter(|&w| {
                    p.graph.edge_between(v, w).map(|e| e.kind) == Some(EdgeKind::Radial)
                })
                .count();
            let stubs = p.stub_at(v).is_some() as usize;
            if radials + stubs != 1 {
                return Err(internal(format!(
                    "{name} anchor at layer {} has {radials} radials and {stubs} stubs",
                    ti + 1
                )));
            }
        }
    }
    let expected_stubs = if r % 2 == 1 { 2 * r + 1 } else { 2 * r };
    if p.graph.semiedge_count() != expected_stubs {
        return Err(internal(format!(
            "{} stubs, expected {expected_stubs}",
            p.graph.semiedge_count()
        )));
    }
    Ok(())
}

/// Fuses the right frontier of `a` onto the left frontier of `b`. Keeps
/// `a`'s vertex ids; the returned map sends every `b` vertex to its id in
/// the result.
pub fn junction_identify(
    a: &Patch,
    b: &Patch,
) -> Result<(Patch, BTreeMap<VertexId, VertexId>), BlockError> {
    if a.side != b.side {
        return Err(BlockError::SideMismatch);
    }
    if a.r != b.r {
        return Err(BlockError::RadiusMismatch(a.r, b.r));
    }
    if a.wrapped || b.wrapped {
        return Err(BlockError::AlreadyWrapped);
    }
    let r = a.r;

    let fa = a.right_frontier();
    let fb = b.left_frontier();
    if fa.edges.len() != fb.edges.len() || fa.semis.len() != fb.semis.len() {
        return Err(BlockError::FrontierShapeMismatch(format!(
            "{} edges + {} stubs vs {} edges + {} stubs",
            fa.edges.len(),
            fa.semis.len(),
            fb.edges.len(),
            fb.semis.len()
        )));
    }

    let mut rename: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for t in 1..=r {
        rename.insert(b.left_anchor(t), a.right_anchor(t));
    }
    let mut next = a.graph.vertex_count();
    for v in 0..b.graph.vertex_count() {
        rename.entry(VertexId(v)).or_insert_with(|| {
            let id = VertexId(next);
            next += 1;
            id
        });
    }

    let seam: BTreeSet<(VertexId, VertexId)> = fa
        .edges
        .iter()
        .map(|e| (e.u, e.v))
        .collect();
    let mut edges: BTreeMap<(VertexId, VertexId), EdgeKind> = a
        .graph
        .edges()
        .iter()
        .map(|e| ((e.u, e.v), e.kind))
        .collect();
    for e in b.graph.edges() {
        let mapped = Edge::new(rename[&e.u], rename[&e.v], e.kind);
        let key = (mapped.u, mapped.v);
        if let Some(&kind) = edges.get(&key) {
            if kind != e.kind || !seam.contains(&key) {
                return Err(internal("fusion collided outside the shared frontier"));
            }
        } else {
            edges.insert(key, e.kind);
        }
    }

    let mut stub_anchors: BTreeSet<VertexId> =
        a.graph.semiedges().iter().map(|s| s.anchor).collect();
    for s in b.graph.semiedges() {
        stub_anchors.insert(rename[&s.anchor]);
    }
    let semiedges: Vec<Semiedge> = stub_anchors
        .iter()
        .map(|&anchor| Semiedge { anchor, slot: 0 })
        .collect();

    let graph = Semigraph::build_unembedded(
        next,
        edges
            .into_iter()
            .map(|((u, v), kind)| Edge::new(u, v, kind))
            .collect(),
        semiedges,
    )
    .map_err(|e| internal(e.to_string()))?;

    let mut paths = Vec::with_capacity(r);
    for t in 1..=r {
        let mut path = a.paths[t - 1].clone();
        path.extend(b.paths[t - 1][1..].iter().map(|v| rename[v]));
        paths.push(path);
    }

    let mut to_hemisphere = vec![VertexId(0); next];
    for (v, &h) in a.to_hemisphere.iter().enumerate() {
        to_hemisphere[v] = h;
    }
    for (v, &h) in b.to_hemisphere.iter().enumerate() {
        to_hemisphere[rename[&VertexId(v)].0] = h;
    }

    let fused = Patch {
        side: a.side,
        r,
        graph,
        paths,
        to_hemisphere,
        wrapped: false,
    };
    Ok((fused, rename))
}

/// Closes a chain by fusing its right frontier onto its own left
/// frontier. The returned map sends every old vertex to its id in the
/// closed result.
pub fn wrap(a: &Patch) -> Result<(Patch, BTreeMap<VertexId, VertexId>), BlockError> {
    if a.wrapped {
        return Err(BlockError::AlreadyWrapped);
    }
    let r = a.r;
    let right: BTreeMap<VertexId, usize> =
        (1..=r).map(|t| (a.right_anchor(t), t)).collect();

    let mut rename: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut next = 0;
    for v in 0..a.graph.vertex_count() {
        if !right.contains_key(&VertexId(v)) {
            rename.insert(VertexId(v), VertexId(next));
            next += 1;
        }
    }
    for (&v, &t) in &right {
        let target = rename[&a.left_anchor(t)];
        rename.insert(v, target);
    }

    let seam: BTreeSet<(VertexId, VertexId)> = a
        .right_frontier()
        .edges
        .iter()
        .map(|e| (e.u, e.v))
        .collect();
    let mut edges: BTreeMap<(VertexId, VertexId), EdgeKind> = BTreeMap::new();
    for e in a.graph.edges() {
        let mapped = Edge::new(rename[&e.u], rename[&e.v], e.kind);
        let key = (mapped.u, mapped.v);
        if let Some(&kind) = edges.get(&key) {
            if kind != e.kind || !seam.contains(&(e.u, e.v)) {
                return Err(internal("wrap collided outside the shared frontier"));
            }
        } else {
            edges.insert(key, e.kind);
        }
    }

    let mut stub_anchors = BTreeSet::new();
    for s in a.graph.semiedges() {
        stub_anchors.insert(rename[&s.anchor]);
    }
    let semiedges: Vec<Semiedge> = stub_anchors
        .iter()
        .map(|&anchor| Semiedge { anchor, slot: 0 })
        .collect();

    let graph = Semigraph::build_unembedded(
        next,
        edges
            .into_iter()
            .map(|((u, v), kind)| Edge::new(u, v, kind))
            .collect(),
        semiedges,
    )
    .map_err(|e| internal(e.to_string()))?;

    let paths: Vec<Vec<VertexId>> = a
        .paths
        .iter()
        .map(|p| p[..p.len() - 1].iter().map(|v| rename[v]).collect())
        .collect();

    let mut to_hemisphere = vec![VertexId(0); next];
    for (v, &h) in a.to_hemisphere.iter().enumerate() {
        to_hemisphere[rename[&VertexId(v)].0] = h;
    }

    let closed = Patch {
        side: a.side,
        r,
        graph,
        paths,
        to_hemisphere,
        wrapped: true,
    };
    Ok((closed, rename))
}

/// Reads a wrapped patch back as a hemisphere. The result carries no
/// pentagon anchors, so it supports isomorphism checks but not block
/// extraction.
pub fn close_hemisphere(p: &Patch) -> Result<Hemisphere, BlockError> {
    if !p.wrapped {
        return Err(BlockError::NotWrapped);
    }
    let mut coords = vec![(0usize, 0usize); p.graph.vertex_count()];
    for (ti, cyc) in p.paths.iter().enumerate() {
        for (pos, &v) in cyc.iter().enumerate() {
            coords[v.0] = (ti + 1, pos);
        }
    }
    Ok(Hemisphere {
        side: p.side,
        r: p.r,
        graph: p.graph.clone(),
        cycles: p.paths.clone(),
        coords,
        to_parent: p.to_hemisphere.clone(),
        pents: None,
    })
}

/// Isomorphism over the layered structure: candidate maps rotate and
/// possibly reflect C^1 and propagate layer by layer through the radial
/// edges, so each candidate verifies in linear time.
pub fn hemispheres_isomorphic(a: &Hemisphere, b: &Hemisphere) -> bool {
    if a.r != b.r
        || a.graph.vertex_count() != b.graph.vertex_count()
        || a.graph.edge_count() != b.graph.edge_count()
        || a.graph.semiedge_count() != b.graph.semiedge_count()
    {
        return false;
    }
    let l1 = a.cycles[0].len() as i64;
    for sigma in [1i64, -1] {
        for off in 0..l1 {
            if layered_map_works(a, b, sigma, off) {
                return true;
            }
        }
    }
    false
}

fn layered_map_works(a: &Hemisphere, b: &Hemisphere, sigma: i64, off: i64) -> bool {
    let n = a.graph.vertex_count();
    let mut img: Vec<Option<VertexId>> = vec![None; n];
    let l1 = a.cycles[0].len() as i64;
    for (pos, &v) in a.cycles[0].iter().enumerate() {
        let q = (sigma * pos as i64 + off).rem_euclid(l1) as usize;
        img[v.0] = Some(b.cycles[0][q]);
    }
    for t in 2..=a.r {
        let lt = a.cycles[t - 1].len() as i64;
        // Any radial into this layer fixes the layer's rotation.
        let Some((v, w)) = a.cycles[t - 2]
            .iter()
            .find_map(|&v| a.neighbor_on(v, t).map(|w| (v, w)))
        else {
            return false;
        };
        let iv = img[v.0].expect("previous layer already mapped");
        let Some(iw) = b.neighbor_on(iv, t) else {
            return false;
        };
        let off_t = (b.coords[iw.0].1 as i64 - sigma * a.coords[w.0].1 as i64).rem_euclid(lt);
        for (pos, &u) in a.cycles[t - 1].iter().enumerate() {
            let q = (sigma * pos as i64 + off_t).rem_euclid(lt) as usize;
            img[u.0] = Some(b.cycles[t - 1][q]);
        }
    }
    map_preserves_structure(&a.graph, &b.graph, &img)
}

fn map_preserves_structure(
    ga: &Semigraph,
    gb: &Semigraph,
    img: &[Option<VertexId>],
) -> bool {
    for e in ga.edges() {
        let (Some(u), Some(v)) = (img[e.u.0], img[e.v.0]) else {
            return false;
        };
        match gb.edge_between(u, v) {
            Some(f) if f.kind == e.kind => {}
            _ => return false,
        }
    }
    let stub_anchors: BTreeSet<VertexId> = gb.semiedges().iter().map(|s| s.anchor).collect();
    for s in ga.semiedges() {
        let Some(u) = img[s.anchor.0] else {
            return false;
        };
        if !stub_anchors.contains(&u) {
            return false;
        }
    }
    true
}

/// Isomorphism of blocks: paths align left-to-right or mirrored.
pub fn blocks_isomorphic(a: &Block, b: &Block) -> bool {
    let (pa, pb) = (&a.patch, &b.patch);
    if pa.r != pb.r
        || pa.graph.vertex_count() != pb.graph.vertex_count()
        || pa.graph.edge_count() != pb.graph.edge_count()
        || pa.graph.semiedge_count() != pb.graph.semiedge_count()
    {
        return false;
    }
    for mirrored in [false, true] {
        let mut img: Vec<Option<VertexId>> = vec![None; pa.graph.vertex_count()];
        for (t, path) in pa.paths.iter().enumerate() {
            for (j, &v) in path.iter().enumerate() {
                let q = if mirrored { path.len() - 1 - j } else { j };
                img[v.0] = Some(pb.paths[t][q]);
            }
        }
        if map_preserves_structure(&pa.graph, &pb.graph, &img) {
            return true;
        }
    }
    false
}

/// Result of joining an outer and an inner block through their stubs.
#[derive(Clone, Debug)]
pub struct Joined {
    pub graph: Semigraph,
    /// Inner block vertex v appears as v + inner_offset in the result.
    pub inner_offset: usize,
    /// (outer stub, inner stub) pairs fused into radial edges, in the
    /// operands' own ids.
    pub seam: Vec<(Element, Element)>,
    /// The clockwise-first stub of each block stays open.
    pub dangling: (Element, Element),
}

/// Stub pairing used by the junction: the second outer stub in its own
/// clockwise order joins the last inner one (the inner block runs
/// clockwise the other way around the seam), and the rest follow in
/// order. One stub of each block stays open.
pub fn junction_pairing(
    a: &Block,
    b: &Block,
) -> Result<(Vec<(Element, Element)>, (Element, Element)), BlockError> {
    if a.patch.side != Side::Outer || b.patch.side != Side::Inner {
        return Err(BlockError::SideMismatch);
    }
    if a.patch.r != b.patch.r {
        return Err(BlockError::RadiusMismatch(a.patch.r, b.patch.r));
    }
    if a.i != b.i {
        return Err(BlockError::IndexMismatch(a.i, b.i));
    }
    let sa = a.patch.stubs_clockwise();
    let sb = b.patch.stubs_clockwise();
    if sa.len() != sb.len() {
        return Err(BlockError::CaseUnsupported);
    }
    let m = sa.len();
    let seam = (1..m).map(|j| (sa[j], sb[m - j])).collect();
    Ok((seam, (sa[0], sb[0])))
}

pub fn junction_blocks(a: &Block, b: &Block) -> Result<Joined, BlockError> {
    let (seam, dangling) = junction_pairing(a, b)?;
    let off = a.patch.graph.vertex_count();
    let shift = |v: VertexId| VertexId(v.0 + off);

    let mut edges: Vec<Edge> = a.patch.graph.edges().to_vec();
    edges.extend(
        b.patch
            .graph
            .edges()
            .iter()
            .map(|e| Edge::new(shift(e.u), shift(e.v), e.kind)),
    );
    for (ea, eb) in &seam {
        let (Element::Semi(u, _), Element::Semi(v, _)) = (ea, eb) else {
            return Err(internal("stub sequence produced a non-stub"));
        };
        edges.push(Edge::new(*u, shift(*v), EdgeKind::Radial));
    }
    let (Element::Semi(da, _), Element::Semi(db, _)) = dangling else {
        return Err(internal("stub sequence produced a non-stub"));
    };
    let semiedges = vec![
        Semiedge { anchor: da, slot: 0 },
        Semiedge {
            anchor: shift(db),
            slot: 0,
        },
    ];
    let graph =
        Semigraph::build_unembedded(off + b.patch.graph.vertex_count(), edges, semiedges)
            .map_err(|e| internal(e.to_string()))?;
    Ok(Joined {
        graph,
        inner_offset: off,
        seam,
        dangling,
    })
}

/// Rejoins two hemispheres of one disc into a single graph: every stub
/// pair that came from one central radial edge fuses back into it. The
/// outer half keeps its ids; inner vertex v appears as v + outer count.
pub fn junction_hemispheres(
    o: &Hemisphere,
    i: &Hemisphere,
    d: &Nanodisc,
) -> Result<Semigraph, BlockError> {
    if o.side != Side::Outer || i.side != Side::Inner {
        return Err(BlockError::SideMismatch);
    }
    if o.r != i.r {
        return Err(BlockError::RadiusMismatch(o.r, i.r));
    }
    if o.r != d.radius() {
        return Err(BlockError::RadiusMismatch(o.r, d.radius()));
    }
    let off = o.graph.vertex_count();
    let by_parent: BTreeMap<VertexId, VertexId> = i
        .graph
        .semiedges()
        .iter()
        .map(|s| (i.to_parent[s.anchor.0], s.anchor))
        .collect();

    let mut edges: Vec<Edge> = o.graph.edges().to_vec();
    edges.extend(
        i.graph
            .edges()
            .iter()
            .map(|e| Edge::new(VertexId(e.u.0 + off), VertexId(e.v.0 + off), e.kind)),
    );
    for s in o.graph.semiedges() {
        let pu = o.to_parent[s.anchor.0];
        let pv = d.radial_partner(pu);
        let Some(&w) = by_parent.get(&pv) else {
            return Err(BlockError::FrontierShapeMismatch(format!(
                "no inner stub matches the cut edge at vertex {}",
                pu.0
            )));
        };
        edges.push(Edge::new(s.anchor, VertexId(w.0 + off), EdgeKind::Radial));
    }
    Semigraph::build_unembedded(off + i.graph.vertex_count(), edges, Vec::new())
        .map_err(|e| internal(e.to_string()))
}

fn coverage(g: &Semigraph, c: &TotalColoring) -> Result<(), BlockError> {
    for el in g.elements() {
        if c.get(&el).is_none() {
            return Err(BlockError::DomainMismatch(format!("{el} uncolored")));
        }
    }
    Ok(())
}

fn anchor_radial(p: &Patch, v: VertexId, t: usize) -> Result<Edge, BlockError> {
    p.radial_at(v)
        .ok_or_else(|| internal(format!("anchor at layer {t} misses its radial edge")))
}

/// Whether coloring `ca` of block `a` lets its right frontier fuse onto
/// the left frontier of `b` colored `cb`: anchor vertices agree on every
/// layer, all stubs of both blocks share one color, the anchor radials
/// agree from layer 2 up, and the path-end edges differ from layer 2 up.
/// Returns the violated conditions alongside the verdict.
pub fn is_compatible(
    a: &Block,
    ca: &TotalColoring,
    b: &Block,
    cb: &TotalColoring,
) -> Result<(bool, Vec<String>), BlockError> {
    if a.patch.side != b.patch.side {
        return Err(BlockError::SideMismatch);
    }
    if a.patch.r != b.patch.r {
        return Err(BlockError::RadiusMismatch(a.patch.r, b.patch.r));
    }
    coverage(&a.patch.graph, ca)?;
    coverage(&b.patch.graph, cb)?;
    let r = a.patch.r;
    let mut violations = Vec::new();

    for t in 1..=r {
        let x = ca.get(&Element::Vertex(a.patch.right_anchor(t))).unwrap();
        let y = cb.get(&Element::Vertex(b.patch.left_anchor(t))).unwrap();
        if x != y {
            violations.push(format!("anchor vertices at layer {t} colored {x} vs {y}"));
        }
    }

    let mut stub_colors = BTreeSet::new();
    for (block, c) in [(a, ca), (b, cb)] {
        for s in block.patch.stubs_clockwise() {
            stub_colors.insert(c.get(&s).unwrap());
        }
    }
    if stub_colors.len() != 1 {
        violations.push(format!(
            "stub colors not uniform: {:?}",
            stub_colors.iter().map(|c| c.0).collect::<Vec<_>>()
        ));
    }

    for t in 2..=r {
        let ea = anchor_radial(&a.patch, a.patch.right_anchor(t), t)?;
        let eb = anchor_radial(&b.patch, b.patch.left_anchor(t), t)?;
        let x = ca.get(&Element::of_edge(&ea)).unwrap();
        let y = cb.get(&Element::of_edge(&eb)).unwrap();
        if x != y {
            violations.push(format!("anchor radials at layer {t} colored {x} vs {y}"));
        }

        let pa = a.patch.right_path_edge(t);
        let pb = b.patch.left_path_edge(t);
        let x = ca.get(&Element::of_edge(&pa)).unwrap();
        let y = cb.get(&Element::of_edge(&pb)).unwrap();
        if x == y {
            violations.push(format!("path-end edges at layer {t} share color {x}"));
        }
    }

    Ok((violations.is_empty(), violations))
}

/// Whether colorings of an outer block and its opposite inner block admit
/// the junction: stubs uniform in one shared color and the two endpoints
/// of every fused stub pair colored differently.
pub fn is_mutually_compatible(
    a: &Block,
    ca: &TotalColoring,
    b: &Block,
    cb: &TotalColoring,
) -> Result<(bool, Vec<String>), BlockError> {
    let (seam, _) = junction_pairing(a, b)?;
    coverage(&a.patch.graph, ca)?;
    coverage(&b.patch.graph, cb)?;
    let mut violations = Vec::new();

    let mut stub_colors = BTreeSet::new();
    for (block, c) in [(a, ca), (b, cb)] {
        for s in block.patch.stubs_clockwise() {
            stub_colors.insert(c.get(&s).unwrap());
        }
    }
    if stub_colors.len() != 1 {
        violations.push(format!(
            "stub colors not uniform: {:?}",
            stub_colors.iter().map(|c| c.0).collect::<Vec<_>>()
        ));
    }

    for (sa, sb) in &seam {
        let (Element::Semi(u, _), Element::Semi(v, _)) = (sa, sb) else {
            return Err(internal("stub sequence produced a non-stub"));
        };
        let x = ca.get(&Element::Vertex(*u)).unwrap();
        let y = cb.get(&Element::Vertex(*v)).unwrap();
        if x == y {
            violations.push(format!(
                "fused stub endpoints {u} and {v} share color {x}"
            ));
        }
    }

    Ok((violations.is_empty(), violations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::generate;

    fn blocks_of(h: &Hemisphere) -> Vec<Block> {
        [1, 3, 5].iter().map(|&i| extract_block(h, i).unwrap()).collect()
    }

    #[test]
    fn split_counts() {
        for (r, verts, stubs) in [(2, 24, 12), (3, 54, 18)] {
            let d = generate(r).unwrap();
            let (o, i) = split_hemispheres(&d).unwrap();
            for h in [&o, &i] {
                assert_eq!(h.graph().vertex_count(), verts);
                assert_eq!(h.graph().semiedge_count(), stubs);
                assert!(h.graph().is_cubic(), "stubs must keep the halves cubic");
            }
        }
    }

    #[test]
    fn halves_are_isomorphic() {
        for r in 2..=5 {
            let d = generate(r).unwrap();
            let (o, i) = split_hemispheres(&d).unwrap();
            assert!(hemispheres_isomorphic(&o, &i), "radius {r}");
        }
    }

    #[test]
    fn central_anchor_distance_is_a_third_of_the_cycle() {
        for r in 2..=8 {
            let d = generate(r).unwrap();
            let (o, _) = split_hemispheres(&d).unwrap();
            for b in blocks_of(&o) {
                let la = b.patch.to_hemisphere[b.patch.left_anchor(1).0];
                let ra = b.patch.to_hemisphere[b.patch.right_anchor(1).0];
                let l1 = o.cycle(1).len();
                let (pa, pb) = (o.coord(la).1, o.coord(ra).1);
                let arc = (pb + l1 - pa) % l1;
                assert_eq!(arc.min(l1 - arc), 4 * r - 2, "radius {r}");
            }
        }
    }

    #[test]
    fn path_sizes_match_the_layer_formula() {
        for r in 2..=8 {
            let d = generate(r).unwrap();
            let (o, i) = split_hemispheres(&d).unwrap();
            for h in [&o, &i] {
                let b = extract_block(h, 1).unwrap();
                for t in 1..=r {
                    assert_eq!(b.path(t).len(), 4 * (r - t) + 3);
                }
            }
        }
    }

    #[test]
    fn known_small_path_sizes() {
        let d = generate(5).unwrap();
        let (o, _) = split_hemispheres(&d).unwrap();
        let b = extract_block(&o, 1).unwrap();
        assert_eq!(b.path(1).len(), 19);
        assert_eq!(b.path(1).len() - 1, 18);
        assert_eq!(b.path(2).len() - 1, 14);

        let d = generate(8).unwrap();
        let (o, _) = split_hemispheres(&d).unwrap();
        let b = extract_block(&o, 1).unwrap();
        assert_eq!(b.path(2).len(), 27);
    }

    #[test]
    fn stub_census_follows_radius_parity() {
        for r in 2..=8 {
            let d = generate(r).unwrap();
            let (o, _) = split_hemispheres(&d).unwrap();
            let b = extract_block(&o, 3).unwrap();
            let expect = if r % 2 == 1 { 2 * r + 1 } else { 2 * r };
            assert_eq!(b.graph().semiedge_count(), expect, "radius {r}");
            assert_eq!(b.patch.stubs_clockwise().len(), expect);
        }
    }

    #[test]
    fn frontier_shape_follows_radius_parity() {
        for r in 2..=7 {
            let d = generate(r).unwrap();
            let (o, _) = split_hemispheres(&d).unwrap();
            let b = extract_block(&o, 1).unwrap();
            for f in [b.patch.left_frontier(), b.patch.right_frontier()] {
                assert_eq!(f.vertices.len(), r);
                assert_eq!(f.edges.len(), r / 2);
                assert_eq!(f.semis.len(), r % 2);
            }
        }
    }

    #[test]
    fn blocks_of_one_disc_are_pairwise_isomorphic() {
        for r in [3, 4, 5] {
            let d = generate(r).unwrap();
            let (o, i) = split_hemispheres(&d).unwrap();
            let outer = blocks_of(&o);
            let inner = blocks_of(&i);
            assert!(blocks_isomorphic(&outer[0], &outer[1]));
            assert!(blocks_isomorphic(&outer[1], &outer[2]));
            assert!(blocks_isomorphic(&outer[0], &inner[0]), "radius {r}");
        }
    }

    #[test]
    fn three_blocks_wrap_back_into_their_hemisphere() {
        for r in 2..=5 {
            let d = generate(r).unwrap();
            let (o, i) = split_hemispheres(&d).unwrap();
            for h in [&o, &i] {
                let blocks = blocks_of(h);
                let (ab, _) = junction_identify(&blocks[0].patch, &blocks[1].patch).unwrap();
                let (abc, _) = junction_identify(&ab, &blocks[2].patch).unwrap();
                let (closed, _) = wrap(&abc).unwrap();
                assert_eq!(closed.graph.vertex_count(), h.graph().vertex_count());
                assert_eq!(closed.graph.edge_count(), h.graph().edge_count());
                let closed = close_hemisphere(&closed).unwrap();
                assert!(hemispheres_isomorphic(&closed, h), "radius {r}");
            }
        }
    }

    #[test]
    fn rewrapped_hemisphere_reports_missing_anchors() {
        let d = generate(2).unwrap();
        let (o, _) = split_hemispheres(&d).unwrap();
        let blocks = blocks_of(&o);
        let (ab, _) = junction_identify(&blocks[0].patch, &blocks[1].patch).unwrap();
        let (abc, _) = junction_identify(&ab, &blocks[2].patch).unwrap();
        let (closed, _) = wrap(&abc).unwrap();
        let closed = close_hemisphere(&closed).unwrap();
        assert_eq!(
            extract_block(&closed, 1).unwrap_err(),
            BlockError::MissingAnchors
        );
    }

    #[test]
    fn junction_restores_disc_radials() {
        for r in [2, 3, 4, 5] {
            let d = generate(r).unwrap();
            let (o, i) = split_hemispheres(&d).unwrap();
            for idx in [1, 3, 5] {
                let a = extract_block(&o, idx).unwrap();
                let b = extract_block(&i, idx).unwrap();
                let joined = junction_blocks(&a, &b).unwrap();
                assert_eq!(joined.graph.semiedge_count(), 2);
                let expect = if r % 2 == 1 { 2 * r } else { 2 * r - 1 };
                assert_eq!(joined.seam.len(), expect, "radius {r}");
                for (sa, sb) in &joined.seam {
                    let (Element::Semi(u, _), Element::Semi(v, _)) = (sa, sb) else {
                        panic!("seam entries must be stubs");
                    };
                    let du = d_vertex(&d, &o, &a, *u);
                    let dv = d_vertex(&d, &i, &b, *v);
                    assert_eq!(
                        d.radial_partner(du),
                        dv,
                        "radius {r} block {idx}: seam pair is not a disc radial"
                    );
                }
            }
        }
    }

    fn d_vertex(
        _d: &Nanodisc,
        h: &Hemisphere,
        b: &Block,
        v: VertexId,
    ) -> VertexId {
        h.to_parent()[b.patch.to_hemisphere[v.0].0]
    }

    #[test]
    fn hemisphere_junction_reconstructs_the_disc() {
        for r in 2..=5 {
            let d = generate(r).unwrap();
            let (o, i) = split_hemispheres(&d).unwrap();
            let g = junction_hemispheres(&o, &i, &d).unwrap();
            assert_eq!(g.vertex_count(), d.graph().vertex_count());
            assert_eq!(g.edge_count(), d.graph().edge_count());
            assert_eq!(g.semiedge_count(), 0);
            let off = o.graph().vertex_count();
            let parent = |v: VertexId| {
                if v.0 < off {
                    o.to_parent()[v.0]
                } else {
                    i.to_parent()[v.0 - off]
                }
            };
            for e in g.edges() {
                let (u, v) = (parent(e.u), parent(e.v));
                let original = d.graph().edge_between(u, v);
                assert!(original.is_some(), "edge not in the disc");
                assert_eq!(original.unwrap().kind, e.kind);
            }
        }
    }

    #[test]
    fn block_strips_hold_two_unbalanced_hexagons() {
        use crate::disc::FaceClass;
        for r in [4, 5] {
            let d = generate(r).unwrap();
            let (o, _) = split_hemispheres(&d).unwrap();
            let b = extract_block(&o, 1).unwrap();
            let disc_ids: BTreeSet<VertexId> = b
                .patch
                .to_hemisphere
                .iter()
                .map(|&h| o.to_parent()[h.0])
                .collect();
            for t in 1..r {
                let layer = &d.layers()[r - t];
                let inside = layer
                    .faces
                    .iter()
                    .filter(|f| f.boundary.iter().all(|v| disc_ids.contains(v)))
                    .filter(|f| matches!(f.class, FaceClass::Unbalanced { .. }))
                    .count();
                assert_eq!(inside, 2, "radius {r} strip {t}");
            }
        }
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let d4 = generate(4).unwrap();
        let d5 = generate(5).unwrap();
        let (o4, i4) = split_hemispheres(&d4).unwrap();
        let (o5, _) = split_hemispheres(&d5).unwrap();
        let b4 = extract_block(&o4, 1).unwrap();
        let b5 = extract_block(&o5, 1).unwrap();
        let b4i = extract_block(&i4, 1).unwrap();
        let b4i3 = extract_block(&i4, 3).unwrap();

        assert_eq!(extract_block(&o4, 2).unwrap_err(), BlockError::BadIndex(2));
        assert_eq!(
            junction_identify(&b4.patch, &b5.patch).unwrap_err(),
            BlockError::RadiusMismatch(4, 5)
        );
        assert_eq!(
            junction_identify(&b4.patch, &b4i.patch).unwrap_err(),
            BlockError::SideMismatch
        );
        assert_eq!(
            junction_blocks(&b4, &b4i3).unwrap_err(),
            BlockError::IndexMismatch(1, 3)
        );
        assert_eq!(
            junction_blocks(&b4i, &b4).unwrap_err(),
            BlockError::SideMismatch
        );

        let (ab, _) = junction_identify(&b4.patch, &extract_block(&o4, 3).unwrap().patch)
            .unwrap();
        let (abc, _) =
            junction_identify(&ab, &extract_block(&o4, 5).unwrap().patch).unwrap();
        let (closed, _) = wrap(&abc).unwrap();
        assert_eq!(wrap(&closed).unwrap_err(), BlockError::AlreadyWrapped);
    }

    #[test]
    fn identify_keeps_left_ids_and_returns_the_rename() {
        let d = generate(3).unwrap();
        let (o, _) = split_hemispheres(&d).unwrap();
        let a = extract_block(&o, 1).unwrap();
        let b = extract_block(&o, 3).unwrap();
        let (fused, rename) = junction_identify(&a.patch, &b.patch).unwrap();
        assert_eq!(
            fused.graph.vertex_count(),
            a.graph().vertex_count() + b.graph().vertex_count() - 3
        );
        for t in 1..=3 {
            assert_eq!(fused.left_anchor(t), a.patch.left_anchor(t));
            assert_eq!(rename[&b.patch.left_anchor(t)], a.patch.right_anchor(t));
        }
        // Fused anchors sit where the two hemispheres' paths agree.
        for t in 1..=3 {
            let hv = fused.to_hemisphere[fused.right_anchor(t).0];
            assert_eq!(hv, b.patch.to_hemisphere[b.patch.right_anchor(t).0]);
        }
    }
}
