//! Undirected semigraphs: finite simple graphs that may carry semiedges
//! (dangling half-edges with a single anchor vertex).
//!
//! Every vertex stores a rotation, i.e. the clockwise cyclic order of its
//! incident edges and semiedges. On a closed graph the rotation system
//! determines an embedding whose faces can be traced; [`Semigraph::faces`]
//! does so and rejects rotations that do not describe a sphere embedding.
//!
//! Elements (vertices, edges, semiedges) share the [`Element`] handle so a
//! total coloring can address all of them uniformly. Two elements conflict
//! when they are adjacent or incident:
//!
//! * two vertices joined by an edge,
//! * a vertex and an edge/semiedge it lies on,
//! * two edges/semiedges sharing an endpoint.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Dense vertex handle, `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Role of an edge inside a layered disc; plain graphs default to `Cycle`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EdgeKind {
    /// Runs along a concentric cycle.
    Cycle,
    /// Joins two consecutive concentric cycles.
    Radial,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeKind::Cycle => write!(f, "cycle"),
            EdgeKind::Radial => write!(f, "radial"),
        }
    }
}

/// Undirected edge with normalized endpoints (`u < v`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId, kind: EdgeKind) -> Self {
        let (u, v) = if a.0 <= b.0 { (a, b) } else { (b, a) };
        Edge { u, v, kind }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn other(&self, w: VertexId) -> VertexId {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Semiedge: a half-edge attached to `anchor`. `slot` numbers the semiedges
/// of one anchor (almost always 0; anchors rarely carry more than one).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Semiedge {
    pub anchor: VertexId,
    pub slot: usize,
}

/// Entry of a vertex rotation, given by the caller when building a graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Port {
    /// The edge towards this neighbour.
    Edge(VertexId),
    /// The `slot`-th semiedge anchored here.
    Stub(usize),
}

/// Resolved rotation entry: index into the edge or semiedge table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Inc {
    Edge(usize),
    Semi(usize),
}

/// Uniform handle for the colorable elements of a semigraph.
///
/// The derived order (vertices, then edges, then semiedges, each by id) is
/// the canonical element order used for deterministic iteration everywhere.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Element {
    Vertex(VertexId),
    /// Endpoints normalized, `u < v`.
    Edge(VertexId, VertexId),
    Semi(VertexId, usize),
}

impl Element {
    pub fn edge(a: VertexId, b: VertexId) -> Self {
        let (u, v) = if a.0 <= b.0 { (a, b) } else { (b, a) };
        Element::Edge(u, v)
    }

    pub fn of_edge(e: &Edge) -> Self {
        Element::Edge(e.u, e.v)
    }

    /// Stable text key: `v:3`, `e:3-7`, `s:5`. Slot 0 is implied for
    /// semiedges; higher slots append `#slot`.
    pub fn key(&self) -> String {
        match self {
            Element::Vertex(v) => format!("v:{}", v.0),
            Element::Edge(u, v) => format!("e:{}-{}", u.0, v.0),
            Element::Semi(a, 0) => format!("s:{}", a.0),
            Element::Semi(a, slot) => format!("s:{}#{}", a.0, slot),
        }
    }

    /// Inverse of [`Element::key`].
    pub fn parse_key(s: &str) -> Option<Element> {
        let (tag, rest) = s.split_once(':')?;
        match tag {
            "v" => Some(Element::Vertex(VertexId(rest.parse().ok()?))),
            "e" => {
                let (a, b) = rest.split_once('-')?;
                let u: usize = a.parse().ok()?;
                let v: usize = b.parse().ok()?;
                if u >= v {
                    return None;
                }
                Some(Element::Edge(VertexId(u), VertexId(v)))
            }
            "s" => match rest.split_once('#') {
                None => Some(Element::Semi(VertexId(rest.parse().ok()?), 0)),
                Some((a, k)) => {
                    Some(Element::Semi(VertexId(a.parse().ok()?), k.parse().ok()?))
                }
            },
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// How two conflicting elements touch.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    AdjacentVertices,
    VertexOnEdge,
    VertexOnSemiedge,
    EdgesShareEndpoint,
    EdgeMeetsSemiedge,
    SemiedgesShareAnchor,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::AdjacentVertices => "adjacent vertices",
            Relation::VertexOnEdge => "vertex on edge",
            Relation::VertexOnSemiedge => "vertex on semiedge",
            Relation::EdgesShareEndpoint => "edges sharing an endpoint",
            Relation::EdgeMeetsSemiedge => "edge meeting a semiedge",
            Relation::SemiedgesShareAnchor => "semiedges sharing an anchor",
        };
        write!(f, "{s}")
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0} rejected")]
    Loop(usize),
    #[error("duplicate edge {0}-{1} rejected")]
    DuplicateEdge(usize, usize),
    #[error("duplicate semiedge slot {1} at vertex {0}")]
    DuplicateSemiedge(usize, usize),
    #[error("rotation of vertex {0} does not list its incidences exactly once")]
    BadRotation(usize),
    #[error("face tracing found {found} faces, sphere embedding needs {expected}")]
    InconsistentEmbedding { found: usize, expected: usize },
    #[error("graph has semiedges, operation needs a closed graph")]
    NotClosed,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is acyclic, girth undefined")]
    Acyclic,
}

/// A face of an embedded closed graph, as the cyclic vertex walk along its
/// boundary, canonically rotated (see [`Semigraph::faces`]).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Face {
    pub boundary: Vec<VertexId>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.boundary.iter().copied().collect()
    }
}

/// Simple undirected graph with optional semiedges and a rotation system.
#[derive(Clone, Debug)]
pub struct Semigraph {
    n: usize,
    edges: Vec<Edge>,
    semiedges: Vec<Semiedge>,
    /// Rotation of each vertex, resolved to edge/semiedge indices.
    rotation: Vec<Vec<Inc>>,
    /// `(u, v) -> index into edges`, endpoints normalized.
    edge_index: BTreeMap<(VertexId, VertexId), usize>,
}

impl Semigraph {
    /// Builds a semigraph and validates it: endpoints in range, no loops,
    /// no duplicate edges, and every rotation listing exactly the
    /// incidences of its vertex.
    pub fn build(
        n: usize,
        edges: Vec<Edge>,
        semiedges: Vec<Semiedge>,
        rotation: Vec<Vec<Port>>,
    ) -> Result<Self, GraphError> {
        let mut edge_index = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            for w in [e.u, e.v] {
                if w.0 >= n {
                    return Err(GraphError::VertexOutOfRange(w.0, n));
                }
            }
            if e.u == e.v {
                return Err(GraphError::Loop(e.u.0));
            }
            if edge_index.insert((e.u, e.v), i).is_some() {
                return Err(GraphError::DuplicateEdge(e.u.0, e.v.0));
            }
        }
        let mut semi_index: BTreeMap<(VertexId, usize), usize> = BTreeMap::new();
        for (i, s) in semiedges.iter().enumerate() {
            if s.anchor.0 >= n {
                return Err(GraphError::VertexOutOfRange(s.anchor.0, n));
            }
            if semi_index.insert((s.anchor, s.slot), i).is_some() {
                return Err(GraphError::DuplicateSemiedge(s.anchor.0, s.slot));
            }
        }
        if rotation.len() != n {
            return Err(GraphError::BadRotation(rotation.len().min(n)));
        }

        let mut resolved: Vec<Vec<Inc>> = Vec::with_capacity(n);
        for v in 0..n {
            let v = VertexId(v);
            let mut expect: BTreeSet<Inc2> = BTreeSet::new();
            for (i, e) in edges.iter().enumerate() {
                if e.u == v || e.v == v {
                    expect.insert(Inc2::Edge(i));
                }
            }
            for (i, s) in semiedges.iter().enumerate() {
                if s.anchor == v {
                    expect.insert(Inc2::Semi(i));
                }
            }
            let mut seen: BTreeSet<Inc2> = BTreeSet::new();
            let mut row = Vec::with_capacity(rotation[v.0].len());
            for port in &rotation[v.0] {
                let inc = match port {
                    Port::Edge(w) => {
                        let key = if v.0 <= w.0 { (v, *w) } else { (*w, v) };
                        match edge_index.get(&key) {
                            Some(&i) => Inc2::Edge(i),
                            None => return Err(GraphError::BadRotation(v.0)),
                        }
                    }
                    Port::Stub(slot) => match semi_index.get(&(v, *slot)) {
                        Some(&i) => Inc2::Semi(i),
                        None => return Err(GraphError::BadRotation(v.0)),
                    },
                };
                if !seen.insert(inc) {
                    return Err(GraphError::BadRotation(v.0));
                }
                row.push(match inc {
                    Inc2::Edge(i) => Inc::Edge(i),
                    Inc2::Semi(i) => Inc::Semi(i),
                });
            }
            if seen != expect {
                return Err(GraphError::BadRotation(v.0));
            }
            resolved.push(row);
        }

        Ok(Semigraph {
            n,
            edges,
            semiedges,
            rotation: resolved,
            edge_index,
        })
    }

    /// Builds with the default rotation (edges by neighbour id, then
    /// semiedges by slot). Embedding-sensitive callers must supply a real
    /// rotation via [`Semigraph::build`].
    pub fn build_unembedded(
        n: usize,
        edges: Vec<Edge>,
        semiedges: Vec<Semiedge>,
    ) -> Result<Self, GraphError> {
        let mut rotation: Vec<Vec<Port>> = vec![Vec::new(); n];
        let mut sorted = edges.clone();
        sorted.sort();
        for e in &sorted {
            rotation[e.u.0].push(Port::Edge(e.v));
            rotation[e.v.0].push(Port::Edge(e.u));
        }
        let mut slots: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in &semiedges {
            slots[s.anchor.0].push(s.slot);
        }
        for (v, mut sl) in slots.into_iter().enumerate() {
            sl.sort_unstable();
            for slot in sl {
                rotation[v].push(Port::Stub(slot));
            }
        }
        Semigraph::build(n, edges, semiedges, rotation)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn semiedge_count(&self) -> usize {
        self.semiedges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn semiedges(&self) -> &[Semiedge] {
        &self.semiedges
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<&Edge> {
        let key = if a.0 <= b.0 { (a, b) } else { (b, a) };
        self.edge_index.get(&key).map(|&i| &self.edges[i])
    }

    pub fn rotation_of(&self, v: VertexId) -> &[Inc] {
        &self.rotation[v.0]
    }

    /// Incident edges and semiedges of `v` in rotation order.
    pub fn incidences(&self, v: VertexId) -> impl Iterator<Item = Element> + '_ {
        self.rotation[v.0].iter().map(move |inc| match inc {
            Inc::Edge(i) => Element::of_edge(&self.edges[*i]),
            Inc::Semi(i) => Element::Semi(self.semiedges[*i].anchor, self.semiedges[*i].slot),
        })
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation[v.0].iter().filter_map(move |inc| match inc {
            Inc::Edge(i) => Some(self.edges[*i].other(v)),
            Inc::Semi(_) => None,
        })
    }

    /// Degree counting both edges and semiedges.
    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v.0].len()
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.n).all(|v| self.rotation[v].len() == 3)
    }

    pub fn max_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([VertexId(0)]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// All elements in canonical order: vertices, edges, semiedges.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = Vec::with_capacity(self.n + self.edges.len() + self.semiedges.len());
        out.extend((0..self.n).map(|v| Element::Vertex(VertexId(v))));
        let mut es: Vec<Element> = self.edges.iter().map(Element::of_edge).collect();
        es.sort();
        out.extend(es);
        let mut ss: Vec<Element> = self
            .semiedges
            .iter()
            .map(|s| Element::Semi(s.anchor, s.slot))
            .collect();
        ss.sort();
        out.extend(ss);
        out
    }

    pub fn element_count(&self) -> usize {
        self.n + self.edges.len() + self.semiedges.len()
    }

    pub fn contains_element(&self, el: &Element) -> bool {
        match el {
            Element::Vertex(v) => v.0 < self.n,
            Element::Edge(u, v) => self.edge_index.contains_key(&(*u, *v)),
            Element::Semi(a, slot) => self
                .semiedges
                .iter()
                .any(|s| s.anchor == *a && s.slot == *slot),
        }
    }

    /// Every conflicting element pair, each exactly once, deterministic
    /// order. Pairs are emitted with the canonically smaller element first.
    pub fn conflict_pairs(&self) -> Vec<(Element, Element, Relation)> {
        let mut out = Vec::new();
        for e in &self.edges {
            let el = Element::of_edge(e);
            out.push((Element::Vertex(e.u), Element::Vertex(e.v), Relation::AdjacentVertices));
            out.push((Element::Vertex(e.u), el, Relation::VertexOnEdge));
            out.push((Element::Vertex(e.v), el, Relation::VertexOnEdge));
        }
        for s in &self.semiedges {
            out.push((
                Element::Vertex(s.anchor),
                Element::Semi(s.anchor, s.slot),
                Relation::VertexOnSemiedge,
            ));
        }
        for v in 0..self.n {
            let incs: Vec<Element> = self.incidences(VertexId(v)).collect();
            for i in 0..incs.len() {
                for j in i + 1..incs.len() {
                    let (mut a, mut b) = (incs[i], incs[j]);
                    if b < a {
                        std::mem::swap(&mut a, &mut b);
                    }
                    let rel = match (&a, &b) {
                        (Element::Edge(..), Element::Edge(..)) => Relation::EdgesShareEndpoint,
                        (Element::Semi(..), Element::Semi(..)) => Relation::SemiedgesShareAnchor,
                        _ => Relation::EdgeMeetsSemiedge,
                    };
                    out.push((a, b, rel));
                }
            }
        }
        out.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        out.dedup_by(|x, y| (x.0, x.1) == (y.0, y.1));
        out
    }

    /// Traces the faces of the embedding given by the rotation system.
    ///
    /// Requires a closed connected graph. Fails with
    /// [`GraphError::InconsistentEmbedding`] unless Euler's formula
    /// `V - E + F = 2` holds for the traced face count.
    ///
    /// Each boundary walk is rotated so it starts at its smallest vertex,
    /// breaking ties by the following vertex; faces are sorted by their
    /// boundary walks.
    pub fn faces(&self) -> Result<Vec<Face>, GraphError> {
        if !self.semiedges.is_empty() {
            return Err(GraphError::NotClosed);
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if self.edges.is_empty() {
            return Err(GraphError::Acyclic);
        }

        // Dart (i, 0) runs u->v of edge i, (i, 1) runs v->u.
        let mut used = vec![[false; 2]; self.edges.len()];
        let mut pos_in_rotation: BTreeMap<(VertexId, usize), usize> = BTreeMap::new();
        for v in 0..self.n {
            for (p, inc) in self.rotation[v].iter().enumerate() {
                if let Inc::Edge(i) = inc {
                    pos_in_rotation.insert((VertexId(v), *i), p);
                }
            }
        }

        let mut faces = Vec::new();
        for start_edge in 0..self.edges.len() {
            for start_dir in 0..2 {
                if used[start_edge][start_dir] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut ei, mut dir) = (start_edge, start_dir);
                loop {
                    used[ei][dir] = true;
                    let e = &self.edges[ei];
                    let (from, to) = if dir == 0 { (e.u, e.v) } else { (e.v, e.u) };
                    walk.push(from);
                    let p = pos_in_rotation[&(to, ei)];
                    let deg = self.rotation[to.0].len();
                    let next = match self.rotation[to.0][(p + 1) % deg] {
                        Inc::Edge(i) => i,
                        Inc::Semi(_) => unreachable!("closed graph"),
                    };
                    let ne = &self.edges[next];
                    dir = if ne.u == to { 0 } else { 1 };
                    ei = next;
                    if ei == start_edge && dir == start_dir {
                        break;
                    }
                }
                faces.push(Face {
                    boundary: canonical_rotate(walk),
                });
            }
        }

        let expected = 2 + self.edges.len() - self.n;
        if faces.len() != expected {
            return Err(GraphError::InconsistentEmbedding {
                found: faces.len(),
                expected,
            });
        }
        faces.sort_by(|a, b| a.boundary.cmp(&b.boundary));
        Ok(faces)
    }

    /// Length of a shortest cycle. Semiedges never lie on cycles and are
    /// ignored.
    pub fn girth(&self) -> Result<usize, GraphError> {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut via = vec![usize::MAX; self.n];
        for s in 0..self.n {
            dist.fill(usize::MAX);
            let mut queue = VecDeque::from([VertexId(s)]);
            dist[s] = 0;
            via[s] = usize::MAX;
            while let Some(u) = queue.pop_front() {
                // A cycle through s closing deeper than this cannot beat best.
                if best != usize::MAX && dist[u.0] * 2 >= best {
                    continue;
                }
                for inc in &self.rotation[u.0] {
                    let ei = match inc {
                        Inc::Edge(i) => *i,
                        Inc::Semi(_) => continue,
                    };
                    if ei == via[u.0] {
                        continue;
                    }
                    let w = self.edges[ei].other(u);
                    if dist[w.0] == usize::MAX {
                        dist[w.0] = dist[u.0] + 1;
                        via[w.0] = ei;
                        queue.push_back(w);
                    } else {
                        best = best.min(dist[u.0] + dist[w.0] + 1);
                    }
                }
            }
            if best == 3 {
                return Ok(3);
            }
        }
        if best == usize::MAX {
            Err(GraphError::Acyclic)
        } else {
            Ok(best)
        }
    }

    /// Subgraph induced on `keep`, renumbered densely in ascending old-id
    /// order. Edges leaving `keep` are dropped, or turned into semiedges at
    /// their inside endpoint when `stub_cut_edges` is set. Rotations are
    /// inherited. Returns the subgraph and the old id of each new vertex.
    pub fn induced(
        &self,
        keep: &BTreeSet<VertexId>,
        stub_cut_edges: bool,
    ) -> Result<(Semigraph, Vec<VertexId>), GraphError> {
        let old_of: Vec<VertexId> = keep.iter().copied().collect();
        let mut new_of: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for (i, &v) in old_of.iter().enumerate() {
            new_of.insert(v, VertexId(i));
        }

        let mut edges = Vec::new();
        for e in &self.edges {
            if let (Some(&u), Some(&v)) = (new_of.get(&e.u), new_of.get(&e.v)) {
                edges.push(Edge::new(u, v, e.kind));
            }
        }

        let mut semiedges = Vec::new();
        let mut next_slot: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut rotation: Vec<Vec<Port>> = Vec::with_capacity(old_of.len());
        // Slot of the cut edge / inherited semiedge, keyed by old incidence.
        let mut slot_of_cut: BTreeMap<(VertexId, usize), usize> = BTreeMap::new();
        let mut slot_of_old: BTreeMap<(VertexId, usize), usize> = BTreeMap::new();
        for &old in &old_of {
            let nv = new_of[&old];
            for inc in &self.rotation[old.0] {
                match inc {
                    Inc::Edge(i) => {
                        let w = self.edges[*i].other(old);
                        if !new_of.contains_key(&w) && stub_cut_edges {
                            let slot = next_slot.entry(nv).or_insert(0);
                            slot_of_cut.insert((old, *i), *slot);
                            semiedges.push(Semiedge { anchor: nv, slot: *slot });
                            *slot += 1;
                        }
                    }
                    Inc::Semi(i) => {
                        let slot = next_slot.entry(nv).or_insert(0);
                        slot_of_old.insert((old, *i), *slot);
                        semiedges.push(Semiedge { anchor: nv, slot: *slot });
                        *slot += 1;
                    }
                }
            }
        }
        for &old in &old_of {
            let mut row = Vec::new();
            for inc in &self.rotation[old.0] {
                match inc {
                    Inc::Edge(i) => {
                        let w = self.edges[*i].other(old);
                        if let Some(&nw) = new_of.get(&w) {
                            row.push(Port::Edge(nw));
                        } else if stub_cut_edges {
                            row.push(Port::Stub(slot_of_cut[&(old, *i)]));
                        }
                    }
                    Inc::Semi(i) => {
                        row.push(Port::Stub(slot_of_old[&(old, *i)]));
                    }
                }
            }
            rotation.push(row);
        }

        let g = Semigraph::build(old_of.len(), edges, semiedges, rotation)?;
        Ok((g, old_of))
    }
}

/// `Inc` with a derived order, used only while validating rotations.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Inc2 {
    Edge(usize),
    Semi(usize),
}

fn canonical_rotate(walk: Vec<VertexId>) -> Vec<VertexId> {
    let n = walk.len();
    let mut best = 0;
    for i in 1..n {
        let a = (walk[i], walk[(i + 1) % n]);
        let b = (walk[best], walk[(best + 1) % n]);
        if a < b {
            best = i;
        }
    }
    (0..n).map(|i| walk[(best + i) % n]).collect()
}

/// The cycle `C_n` with both faces, vertices `0..n` in circular order.
pub fn cycle_graph(n: usize) -> Result<Semigraph, GraphError> {
    if n < 3 {
        return Err(GraphError::VertexOutOfRange(n, 3));
    }
    let edges = (0..n)
        .map(|i| Edge::new(VertexId(i), VertexId((i + 1) % n), EdgeKind::Cycle))
        .collect();
    let rotation = (0..n)
        .map(|i| {
            vec![
                Port::Edge(VertexId((i + n - 1) % n)),
                Port::Edge(VertexId((i + 1) % n)),
            ]
        })
        .collect();
    Semigraph::build(n, edges, Vec::new(), rotation)
}
