//! Constructive 4-total colorings for the radius family r = 5 + 3k: block
//! tables found by constrained search, transfer of one canonical table to
//! all six blocks, assembly across the junction seams, and a seeded exact
//! search for the small radii the tables do not cover.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use thiserror::Error;

use crate::blocks::{
    extract_block, is_compatible, is_mutually_compatible, split_hemispheres, Block, BlockError,
    Hemisphere, Side,
};
use crate::coloring::{
    central_layer_coloring, used_colors, verify, Color, ColoringError, ConflictReport,
    TotalColoring,
};
use crate::disc::{generate, rotate_map, DiscError, Nanodisc};
use crate::search::Order;
use crate::semigraph::{Edge, EdgeKind, Element, VertexId};
use crate::solver::{
    solve, solve_ordered, Budget, SolveStats, SolveStatus, SolverError, Symmetry, TotalProblem,
};

#[derive(Error, Debug)]
pub enum ConstructiveError {
    #[error("radius {0} is not of the form 5+3k")]
    RadiusNotInFamily(usize),
    #[error("seeded small search covers radii 2..=4, got {0}")]
    RadiusNotSmall(usize),
    #[error("table mismatch: {0}")]
    TableMismatch(String),
    #[error("incompatible block colorings: {0:?}")]
    CompatibilityFailure(Vec<String>),
    #[error("table search for {0} came back unsatisfiable")]
    Unsatisfiable(String),
    #[error("table search ran out of budget")]
    BudgetExceeded,
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Disc(#[from] DiscError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

fn internal(msg: impl Into<String>) -> ConstructiveError {
    ConstructiveError::Internal(msg.into())
}

/// How a witness was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    Constructive,
    Solver,
}

/// A verified 4-total coloring of one nanodisc, with the constraint list
/// the producing search ran under.
#[derive(Clone, Debug)]
pub struct FamilyWitness {
    pub nanodisc: Nanodisc,
    pub coloring: TotalColoring,
    pub report: ConflictReport,
    pub provenance: Provenance,
    pub constraints: Vec<String>,
}

pub fn is_family_radius(r: usize) -> bool {
    r >= 5 && (r - 5) % 3 == 0
}

/// Canonical colored block of one hemisphere side. The coloring satisfies
/// the frontier conditions against itself, so the same table serves all
/// three block positions of its hemisphere.
#[derive(Clone, Debug)]
pub struct SideTables {
    block: Block,
    coloring: TotalColoring,
}

impl SideTables {
    pub fn block(&self) -> &Block {
        &self.block
    }

    pub fn coloring(&self) -> &TotalColoring {
        &self.coloring
    }

    /// Vertex and edge color sequences along the layer-t path.
    pub fn layer_sequence(&self, t: usize) -> (Vec<Color>, Vec<Color>) {
        let p = self.block.path(t);
        let vs = p
            .iter()
            .map(|&v| self.coloring.get(&Element::Vertex(v)).unwrap())
            .collect();
        let es = p
            .windows(2)
            .map(|w| self.coloring.get(&Element::edge(w[0], w[1])).unwrap())
            .collect();
        (vs, es)
    }

    /// Colors of the radial edges rising out of each layer, keyed by
    /// (layer, position along the layer path).
    pub fn radial_colors(&self) -> Vec<((usize, usize), Color)> {
        let mut out = Vec::new();
        for t in 1..self.block.radius() {
            for (p, e) in up_radials(&self.block, t) {
                out.push(((t, p), self.coloring.get(&Element::of_edge(&e)).unwrap()));
            }
        }
        out
    }

    /// The shared color of every semiedge.
    pub fn stub_color(&self) -> Color {
        let s = &self.block.patch.stubs_clockwise()[0];
        self.coloring.get(s).unwrap()
    }
}

/// Block coloring tables for one family radius, one table per hemisphere
/// side, plus the constraint list the search ran under.
#[derive(Clone, Debug)]
pub struct BaseCaseTables {
    r: usize,
    outer: SideTables,
    inner: SideTables,
    constraints: Vec<String>,
}

impl BaseCaseTables {
    pub fn radius(&self) -> usize {
        self.r
    }

    pub fn side(&self, side: Side) -> &SideTables {
        match side {
            Side::Outer => &self.outer,
            Side::Inner => &self.inner,
        }
    }

    /// Layers whose sequences stand on their own: 1..=3 and the two cap
    /// layers. Everything in between repeats with period 3.
    pub fn base_layers(&self) -> Vec<usize> {
        let mut out: Vec<usize> = [1, 2, 3, self.r - 1, self.r].into();
        out.dedup();
        out
    }

    /// Source layers of the period-3 repetition.
    pub fn template_layers(&self) -> Vec<usize> {
        (4..=6).filter(|&t| t <= self.r - 2).collect()
    }

    pub fn constraints(&self) -> &[String] {
        &self.constraints
    }
}

/// Positions along the layer-t path where a radial edge rises to layer
/// t+1, with the edge itself.
fn up_radials(b: &Block, t: usize) -> Vec<(usize, Edge)> {
    let g = b.graph();
    let above: BTreeSet<VertexId> = b.path(t + 1).iter().copied().collect();
    let mut out = Vec::new();
    for (p, &v) in b.path(t).iter().enumerate() {
        for w in g.neighbors(v) {
            if above.contains(&w) {
                let e = *g.edge_between(v, w).unwrap();
                debug_assert_eq!(e.kind, EdgeKind::Radial);
                out.push((p, e));
            }
        }
    }
    out
}

/// Start positions of the two four-vertex runs the strip's unbalanced
/// hexagons leave on the layer-t path. Interior for every strip except
/// the cap strip, where the two runs meet the anchors and each other.
pub(crate) fn hexagon_runs(b: &Block, t: usize) -> Result<[usize; 2], ConstructiveError> {
    let r = b.radius();
    let ups: Vec<usize> = up_radials(b, t).into_iter().map(|(p, _)| p).collect();
    let runs: Vec<usize> = ups
        .windows(2)
        .filter(|w| w[1] - w[0] == 3)
        .map(|w| w[0])
        .collect();
    let expect = if t + 2 <= r {
        let a = r - t;
        [a - 1, 3 * a]
    } else {
        [0, 3]
    };
    if runs != expect {
        return Err(internal(format!(
            "layer {t} unbalanced runs at {runs:?}, expected {expect:?}"
        )));
    }
    Ok(expect)
}

/// The layer-t path as an alternating vertex/edge element sequence.
fn path_elements(b: &Block, t: usize) -> Vec<Element> {
    let p = b.path(t);
    let mut els = Vec::with_capacity(2 * p.len() - 1);
    for (j, &v) in p.iter().enumerate() {
        els.push(Element::Vertex(v));
        if j + 1 < p.len() {
            els.push(Element::edge(v, p[j + 1]));
        }
    }
    els
}

/// Element index ranges (inclusive) of the five subpaths of a layer path,
/// plus the four edges connecting them. Only meaningful below the cap
/// strips, where both hexagon runs are interior.
struct LayerShape {
    periodic: [(usize, usize); 3],
    hexes: [(usize, usize); 2],
    connectors: [usize; 4],
}

fn layer_shape(vertex_count: usize, runs: [usize; 2]) -> LayerShape {
    let [h1, h2] = runs;
    let last = 2 * (vertex_count - 1);
    LayerShape {
        periodic: [
            (0, 2 * h1 - 2),
            (2 * h1 + 8, 2 * h2 - 2),
            (2 * h2 + 8, last),
        ],
        hexes: [(2 * h1, 2 * h1 + 6), (2 * h2, 2 * h2 + 6)],
        connectors: [2 * h1 - 1, 2 * h1 + 7, 2 * h2 - 1, 2 * h2 + 7],
    }
}

fn constraint_list(r: usize) -> Vec<String> {
    let mut out = vec![
        "layer-1 path pinned to the central-layer coloring".into(),
        "every semiedge pinned to color 4".into(),
        "radial edges off the unbalanced hexagons pinned to color 4".into(),
        format!("anchor vertices merged left = right for layers 1..={r}"),
        format!("anchor radials merged left = right for layers 2..={r}"),
        format!("path-end edges forced distinct for layers 2..={r}"),
        format!(
            "non-hexagon subpaths period-3 merged for layers 2..={}",
            r - 2
        ),
    ];
    if r >= 9 {
        out.push(format!(
            "layer t+3 pattern merged onto layer t for t in 4..={}",
            r - 5
        ));
    }
    out.push("min-domain element order, ties by element index, colors tried ascending".into());
    out
}

fn derive_side(
    central: &TotalColoring,
    h: &Hemisphere,
    stub_color: Color,
    budget: &Budget,
) -> Result<SideTables, ConstructiveError> {
    let b = extract_block(h, 1)?;
    let r = b.radius();
    let disc_vertex = |v: VertexId| h.to_parent()[b.patch.to_hemisphere[v.0].0];

    let mut pins = TotalColoring::new(4);
    let p1: Vec<VertexId> = b.path(1).to_vec();
    for (j, &v) in p1.iter().enumerate() {
        let c = central
            .get(&Element::Vertex(disc_vertex(v)))
            .ok_or_else(|| internal("central coloring misses a layer-1 vertex"))?;
        pins.set(Element::Vertex(v), c)?;
        if j + 1 < p1.len() {
            let c = central
                .get(&Element::edge(disc_vertex(v), disc_vertex(p1[j + 1])))
                .ok_or_else(|| internal("central coloring misses a layer-1 edge"))?;
            pins.set(Element::edge(v, p1[j + 1]), c)?;
        }
    }
    for s in b.graph().semiedges() {
        pins.set(Element::Semi(s.anchor, s.slot), stub_color)?;
    }
    for t in 1..r {
        let runs = hexagon_runs(&b, t)?;
        let hexside: BTreeSet<usize> = runs.iter().flat_map(|&s| [s, s + 3]).collect();
        for (p, e) in up_radials(&b, t) {
            if !hexside.contains(&p) {
                pins.set(Element::of_edge(&e), Color(4))?;
            }
        }
    }

    let mut orbits: Vec<Vec<Element>> = Vec::new();
    for t in 1..=r {
        orbits.push(vec![
            Element::Vertex(b.patch.left_anchor(t)),
            Element::Vertex(b.patch.right_anchor(t)),
        ]);
    }
    for t in 2..=r {
        let la = b.patch.radial_at(b.patch.left_anchor(t));
        let ra = b.patch.radial_at(b.patch.right_anchor(t));
        match (la, ra) {
            (Some(x), Some(y)) => orbits.push(vec![Element::of_edge(&x), Element::of_edge(&y)]),
            _ => return Err(internal(format!("anchor at layer {t} misses its radial"))),
        }
    }
    for t in 2..=r - 2 {
        let els = path_elements(&b, t);
        let shape = layer_shape(b.path(t).len(), hexagon_runs(&b, t)?);
        for (s, e) in shape.periodic {
            let mut k = s;
            while k + 3 <= e {
                orbits.push(vec![els[k], els[k + 3]]);
                k += 1;
            }
        }
    }
    for t in 4..=r.saturating_sub(5) {
        let (src, tgt) = (path_elements(&b, t), path_elements(&b, t + 3));
        let ss = layer_shape(b.path(t).len(), hexagon_runs(&b, t)?);
        let ts = layer_shape(b.path(t + 3).len(), hexagon_runs(&b, t + 3)?);
        for ((sa, _), (ta, tb)) in ss.periodic.iter().zip(ts.periodic.iter()) {
            for i in 0..(tb - ta + 1).min(3) {
                orbits.push(vec![src[sa + i], tgt[ta + i]]);
            }
        }
        for ((sa, _), (ta, _)) in ss.hexes.iter().zip(ts.hexes.iter()) {
            for i in 0..7 {
                orbits.push(vec![src[sa + i], tgt[ta + i]]);
            }
        }
        for (sc, tc) in ss.connectors.iter().zip(ts.connectors.iter()) {
            orbits.push(vec![src[*sc], tgt[*tc]]);
        }
    }

    let distinct: Vec<(Element, Element)> = (2..=r)
        .map(|t| {
            (
                Element::of_edge(&b.patch.left_path_edge(t)),
                Element::of_edge(&b.patch.right_path_edge(t)),
            )
        })
        .collect();

    let problem = TotalProblem {
        graph: b.graph(),
        k: 4,
        pins,
        symmetry: Symmetry::Orbits(orbits),
        distinct,
    };
    let result = solve_ordered(&problem, budget, Order::MinDomain)?;
    let coloring = match result.status {
        SolveStatus::Sat(c) => c,
        SolveStatus::Unsat => {
            return Err(ConstructiveError::Unsatisfiable(format!(
                "the radius-{r} {:?} block",
                h.side()
            )))
        }
        SolveStatus::BudgetExceeded => return Err(ConstructiveError::BudgetExceeded),
    };
    Ok(SideTables { block: b, coloring })
}

/// Finds the canonical block tables for a family radius by constrained
/// search. Deterministic; the embedded constraint list records what the
/// search was required to respect.
pub fn derive_base_tables(r: usize) -> Result<BaseCaseTables, ConstructiveError> {
    derive_tables_with(r, Color(4), &Budget::UNLIMITED)
}

pub fn derive_base_tables_with(
    r: usize,
    budget: &Budget,
) -> Result<BaseCaseTables, ConstructiveError> {
    derive_tables_with(r, Color(4), budget)
}

fn derive_tables_with(
    r: usize,
    stub_color: Color,
    budget: &Budget,
) -> Result<BaseCaseTables, ConstructiveError> {
    if !is_family_radius(r) {
        return Err(ConstructiveError::RadiusNotInFamily(r));
    }
    let d = generate(r)?;
    let central = central_layer_coloring(&d)?;
    let (oh, ih) = split_hemispheres(&d)?;
    let outer = derive_side(&central, &oh, stub_color, budget)?;
    let inner = derive_side(&central, &ih, stub_color, budget)?;
    Ok(BaseCaseTables {
        r,
        outer,
        inner,
        constraints: constraint_list(r),
    })
}

/// Transfers the canonical table onto any block of the same radius and
/// side, matching elements by (layer, position), and re-verifies.
pub fn color_block(b: &Block, tables: &BaseCaseTables) -> Result<TotalColoring, ConstructiveError> {
    if b.radius() != tables.r {
        return Err(ConstructiveError::TableMismatch(format!(
            "tables for radius {} applied to a radius-{} block",
            tables.r,
            b.radius()
        )));
    }
    let side = tables.side(b.patch.side);
    let src = &side.block;
    let mut vmap: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for t in 1..=tables.r {
        let (ps, pb) = (src.path(t), b.path(t));
        if ps.len() != pb.len() {
            return Err(ConstructiveError::TableMismatch(format!(
                "layer {t} paths have {} and {} vertices",
                ps.len(),
                pb.len()
            )));
        }
        for (&x, &y) in ps.iter().zip(pb.iter()) {
            vmap.insert(x, y);
        }
    }
    let mapped = |v: &VertexId| -> Result<VertexId, ConstructiveError> {
        vmap.get(v)
            .copied()
            .ok_or_else(|| ConstructiveError::TableMismatch(format!("vertex {v} off the paths")))
    };

    let mut c = TotalColoring::new(4);
    for (el, &color) in side.coloring.iter() {
        let target = match el {
            Element::Vertex(v) => Element::Vertex(mapped(v)?),
            Element::Edge(u, v) => {
                let (mu, mv) = (mapped(u)?, mapped(v)?);
                if b.graph().edge_between(mu, mv).is_none() {
                    return Err(ConstructiveError::TableMismatch(format!(
                        "edge {el} has no image in the target block"
                    )));
                }
                Element::edge(mu, mv)
            }
            Element::Semi(v, slot) => Element::Semi(mapped(v)?, *slot),
        };
        c.set(target, color)?;
    }
    let report = verify(b.graph(), &c)?;
    if !(report.is_total() && report.is_proper()) {
        return Err(ConstructiveError::TableMismatch(format!(
            "transfer left {} conflicts and {} uncolored elements",
            report.conflicts.len(),
            report.uncolored.len()
        )));
    }
    Ok(c)
}

fn to_disc(b: &Block, h: &Hemisphere, c: &TotalColoring) -> Result<TotalColoring, ConstructiveError> {
    let m = |v: &VertexId| h.to_parent()[b.patch.to_hemisphere[v.0].0];
    let mut out = TotalColoring::new(4);
    for (el, &color) in c.iter() {
        match el {
            Element::Vertex(v) => out.set(Element::Vertex(m(v)), color)?,
            Element::Edge(u, v) => out.set(Element::edge(m(u), m(v)), color)?,
            // A stub is half of a cut central radial; the central coloring
            // already owns that edge.
            Element::Semi(..) => {}
        }
    }
    Ok(out)
}

/// Colors a whole family-radius disc: derives the side tables, checks the
/// three in-hemisphere seams and the cross-hemisphere pairings, paints the
/// disc through the block maps and verifies globally.
pub fn color_family(d: &Nanodisc) -> Result<FamilyWitness, ConstructiveError> {
    let r = d.radius();
    if !is_family_radius(r) {
        return Err(ConstructiveError::RadiusNotInFamily(r));
    }
    let tables = derive_base_tables(r)?;
    let central = central_layer_coloring(d)?;
    let (oh, ih) = split_hemispheres(d)?;

    let color_side = |h: &Hemisphere| -> Result<Vec<(Block, TotalColoring)>, ConstructiveError> {
        let mut list = Vec::new();
        for i in [1, 3, 5] {
            let b = extract_block(h, i)?;
            let c = color_block(&b, &tables)?;
            list.push((b, c));
        }
        Ok(list)
    };
    let outer = color_side(&oh)?;
    let inner = color_side(&ih)?;

    for list in [&outer, &inner] {
        for (x, y) in [(0, 1), (1, 2), (2, 0)] {
            let (ok, violations) = is_compatible(&list[x].0, &list[x].1, &list[y].0, &list[y].1)?;
            if !ok {
                return Err(ConstructiveError::CompatibilityFailure(violations));
            }
        }
    }
    for ((o, co), (i, ci)) in outer.iter().zip(inner.iter()) {
        let (ok, violations) = is_mutually_compatible(o, co, i, ci)?;
        if !ok {
            return Err(ConstructiveError::CompatibilityFailure(violations));
        }
    }

    let mut total = TotalColoring::new(4);
    total.absorb(&central, |el| *el)?;
    for (h, list) in [(&oh, &outer), (&ih, &inner)] {
        for (b, c) in list {
            let mapped = to_disc(b, h, c)?;
            total.absorb(&mapped, |el| *el).map_err(|e| match e {
                ColoringError::MergeConflict(el, a, b) => ConstructiveError::CompatibilityFailure(
                    vec![format!("{el} painted {a} by one block and {b} by another")],
                ),
                other => other.into(),
            })?;
        }
    }

    let report = verify(d.graph(), &total)?;
    if !(report.is_total() && report.is_proper()) {
        return Err(internal(format!(
            "assembled coloring has {} conflicts and {} holes",
            report.conflicts.len(),
            report.uncolored.len()
        )));
    }
    debug_assert_eq!(used_colors(&total), 4);
    Ok(FamilyWitness {
        nanodisc: d.clone(),
        coloring: total,
        report,
        provenance: Provenance::Constructive,
        constraints: tables.constraints().to_vec(),
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AttemptStatus {
    Sat,
    Unsat,
    BudgetExceeded,
}

/// One strategy tried by the seeded search.
#[derive(Clone, Debug)]
pub struct Attempt {
    pub strategy: &'static str,
    pub status: AttemptStatus,
    pub stats: SolveStats,
}

#[derive(Debug)]
pub enum SearchOutcome {
    Witness(Box<FamilyWitness>),
    /// Budget ran out before any strategy decided; says nothing about the
    /// disc being 4-total colorable or not.
    Inconclusive(Vec<Attempt>),
    /// The unrestricted search space is exhausted.
    Unsatisfiable(Vec<Attempt>),
}

/// Seeded exact search for the radii below the family: pins the central
/// layer first, folds by rotational symmetry where the pins allow, and
/// falls back to wider searches when a tier is unsatisfiable.
pub fn color_small(d: &Nanodisc, budget: &Budget) -> Result<SearchOutcome, ConstructiveError> {
    if !(2..=4).contains(&d.radius()) {
        return Err(ConstructiveError::RadiusNotSmall(d.radius()));
    }
    seeded_search(d, budget)
}

/// The same seeded search for any radius. Experimental: a miss leaves the
/// question open, it never certifies a disc as needing 5 colors.
pub fn explore(d: &Nanodisc, budget: &Budget) -> Result<SearchOutcome, ConstructiveError> {
    seeded_search(d, budget)
}

/// Orbits of vertices and edges under rotation by `sectors` sixths of a
/// turn, for folding the search space.
fn rotation_orbits(d: &Nanodisc, sectors: usize) -> Vec<Vec<Element>> {
    let map = rotate_map(d, sectors);
    let mut orbits = Vec::new();
    let mut seen_v = vec![false; map.len()];
    for v in d.graph().vertices() {
        if seen_v[v.0] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut w = v;
        loop {
            seen_v[w.0] = true;
            orbit.push(Element::Vertex(w));
            w = map[w.0];
            if w == v {
                break;
            }
        }
        if orbit.len() > 1 {
            orbits.push(orbit);
        }
    }
    let mut seen_e: BTreeSet<Element> = BTreeSet::new();
    for e in d.graph().edges() {
        if seen_e.contains(&Element::of_edge(e)) {
            continue;
        }
        let mut orbit = Vec::new();
        let (mut u, mut v) = (e.u, e.v);
        loop {
            let el = Element::edge(u, v);
            seen_e.insert(el);
            orbit.push(el);
            (u, v) = (map[u.0], map[v.0]);
            if Element::edge(u, v) == Element::of_edge(e) {
                break;
            }
        }
        if orbit.len() > 1 {
            orbits.push(orbit);
        }
    }
    orbits
}

fn tier_budget(
    budget: &Budget,
    start: Instant,
    used_nodes: u64,
    tiers_left: u64,
) -> Option<Budget> {
    let nodes = match budget.nodes {
        None => None,
        Some(n) => {
            let left = n.saturating_sub(used_nodes);
            if left == 0 {
                return None;
            }
            Some((left / tiers_left).max(1))
        }
    };
    let wall = match budget.wall {
        None => None,
        Some(w) => {
            let left = w.saturating_sub(start.elapsed());
            if left.is_zero() {
                return None;
            }
            Some(left / tiers_left as u32)
        }
    };
    Some(Budget { nodes, wall })
}

fn seeded_search(d: &Nanodisc, budget: &Budget) -> Result<SearchOutcome, ConstructiveError> {
    let central = central_layer_coloring(d)?;
    // Rotation by one sector moves each central cycle by 2r-1 positions,
    // which respects the period-3 central pins only when r = 2 mod 3;
    // otherwise fold by the half turn, whose shift is always a multiple
    // of 3.
    let sectors = if d.radius() % 3 == 2 { 1 } else { 3 };
    let start = Instant::now();
    let mut used_nodes = 0u64;
    let mut attempts: Vec<Attempt> = Vec::new();

    let fold = format!("folded by rotation over {sectors} sector(s)");
    let plans: [(&'static str, Symmetry, bool, Vec<String>); 3] = [
        (
            "central pins + rotational folding",
            Symmetry::Orbits(rotation_orbits(d, sectors)),
            true,
            vec!["central layer pinned".into(), fold],
        ),
        (
            "central pins",
            Symmetry::None,
            true,
            vec!["central layer pinned".into()],
        ),
        (
            "unrestricted",
            Symmetry::FixElement,
            false,
            vec!["one element fixed up to color permutation".into()],
        ),
    ];
    let total = plans.len() as u64;
    for (k, (strategy, symmetry, seeded, constraints)) in plans.into_iter().enumerate() {
        let Some(slice) = tier_budget(budget, start, used_nodes, total - k as u64) else {
            break;
        };
        let p = TotalProblem {
            graph: d.graph(),
            k: 4,
            pins: if seeded {
                central.clone()
            } else {
                TotalColoring::new(4)
            },
            symmetry,
            distinct: Vec::new(),
        };
        let result = solve(&p, &slice)?;
        used_nodes += result.stats.nodes;
        let status = match &result.status {
            SolveStatus::Sat(_) => AttemptStatus::Sat,
            SolveStatus::Unsat => AttemptStatus::Unsat,
            SolveStatus::BudgetExceeded => AttemptStatus::BudgetExceeded,
        };
        attempts.push(Attempt {
            strategy,
            status,
            stats: result.stats,
        });
        match result.status {
            SolveStatus::Sat(c) => {
                let report = verify(d.graph(), &c)?;
                return Ok(SearchOutcome::Witness(Box::new(FamilyWitness {
                    nanodisc: d.clone(),
                    coloring: c,
                    report,
                    provenance: Provenance::Solver,
                    constraints,
                })));
            }
            SolveStatus::Unsat if strategy == "unrestricted" => {
                return Ok(SearchOutcome::Unsatisfiable(attempts));
            }
            _ => {}
        }
    }
    Ok(SearchOutcome::Inconclusive(attempts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_membership() {
        assert!(is_family_radius(5));
        assert!(is_family_radius(8));
        assert!(is_family_radius(11));
        for r in [2, 3, 4, 6, 7, 9, 10] {
            assert!(!is_family_radius(r));
        }
    }

    #[test]
    fn non_family_radius_is_rejected() {
        let d = generate(6).unwrap();
        assert!(matches!(
            color_family(&d),
            Err(ConstructiveError::RadiusNotInFamily(6))
        ));
        assert!(matches!(
            derive_base_tables(6),
            Err(ConstructiveError::RadiusNotInFamily(6))
        ));
    }

    #[test]
    fn hexagon_runs_follow_the_strip_bookkeeping() {
        for r in [5usize, 8] {
            let d = generate(r).unwrap();
            let (oh, _) = split_hemispheres(&d).unwrap();
            let b = extract_block(&oh, 1).unwrap();
            for t in 1..r {
                let runs = hexagon_runs(&b, t).unwrap();
                if t + 2 <= r {
                    assert_eq!(runs, [r - t - 1, 3 * (r - t)]);
                } else {
                    assert_eq!(runs, [0, 3]);
                }
            }
        }
    }

    #[test]
    fn tables_for_the_smallest_family_radius() {
        let tables = derive_base_tables(5).unwrap();
        for side in [Side::Outer, Side::Inner] {
            let st = tables.side(side);
            let report = verify(st.block().graph(), st.coloring()).unwrap();
            assert!(report.is_total() && report.is_proper());
            assert_eq!(st.stub_color(), Color(4));
            for s in st.block().patch.stubs_clockwise() {
                assert_eq!(st.coloring().get(&s), Some(Color(4)));
            }
            // Anchor vertices agree pairwise on every layer and sit on the
            // central pattern at layer 1.
            let (vs, _) = st.layer_sequence(1);
            assert_eq!(vs.first(), Some(&Color(2)));
            assert_eq!(vs.last(), Some(&Color(2)));
            for t in 1..=5 {
                let (vs, _) = st.layer_sequence(t);
                assert_eq!(vs.first(), vs.last());
            }
        }
        assert_eq!(tables.base_layers(), vec![1, 2, 3, 4, 5]);
        assert!(tables.template_layers().is_empty());
    }

    #[test]
    fn tables_are_compatible_with_themselves_and_each_other() {
        let tables = derive_base_tables(5).unwrap();
        let (o, i) = (tables.side(Side::Outer), tables.side(Side::Inner));
        for st in [o, i] {
            let (ok, violations) =
                is_compatible(st.block(), st.coloring(), st.block(), st.coloring()).unwrap();
            assert!(ok, "{violations:?}");
        }
        let (ok, violations) =
            is_mutually_compatible(o.block(), o.coloring(), i.block(), i.coloring()).unwrap();
        assert!(ok, "{violations:?}");
    }

    #[test]
    fn table_transfer_covers_every_block_position() {
        let tables = derive_base_tables(5).unwrap();
        let d = generate(5).unwrap();
        let (oh, ih) = split_hemispheres(&d).unwrap();
        for h in [&oh, &ih] {
            let mut colored = Vec::new();
            for i in [1, 3, 5] {
                let b = extract_block(h, i).unwrap();
                let c = color_block(&b, &tables).unwrap();
                colored.push((b, c));
            }
            for (x, y) in [(0, 1), (1, 2), (2, 0)] {
                let (ok, violations) =
                    is_compatible(&colored[x].0, &colored[x].1, &colored[y].0, &colored[y].1)
                        .unwrap();
                assert!(ok, "{violations:?}");
            }
        }
    }

    #[test]
    fn radius_mismatch_is_rejected() {
        let tables = derive_base_tables(5).unwrap();
        let d = generate(8).unwrap();
        let (oh, _) = split_hemispheres(&d).unwrap();
        let b = extract_block(&oh, 1).unwrap();
        assert!(matches!(
            color_block(&b, &tables),
            Err(ConstructiveError::TableMismatch(_))
        ));
    }

    #[test]
    fn family_witness_for_d5() {
        let d = generate(5).unwrap();
        let w = color_family(&d).unwrap();
        assert!(w.report.is_total() && w.report.is_proper());
        assert_eq!(w.provenance, Provenance::Constructive);
        assert_eq!(used_colors(&w.coloring), 4);
        // 300 vertices and 450 edges, all colored.
        assert_eq!(w.coloring.len(), 750);
    }

    #[test]
    fn family_witness_for_d8() {
        let d = generate(8).unwrap();
        let w = color_family(&d).unwrap();
        assert!(w.report.is_total() && w.report.is_proper());
        assert_eq!(used_colors(&w.coloring), 4);
    }

    #[test]
    fn wrong_stub_pin_is_unsatisfiable() {
        // Color 1 already appears on layer-1 anchors of the stubs, so the
        // pinned search space is empty.
        assert!(matches!(
            derive_tables_with(5, Color(1), &Budget::UNLIMITED),
            Err(ConstructiveError::Unsatisfiable(_))
        ));
    }

    #[test]
    fn radials_off_the_hexagons_are_pink() {
        let tables = derive_base_tables(5).unwrap();
        for side in [Side::Outer, Side::Inner] {
            let st = tables.side(side);
            let b = st.block();
            for t in 1..5 {
                let runs = hexagon_runs(b, t).unwrap();
                let hexside: BTreeSet<usize> = runs.iter().flat_map(|&s| [s, s + 3]).collect();
                let mut free = 0;
                for (p, e) in up_radials(b, t) {
                    let c = st.coloring().get(&Element::of_edge(&e)).unwrap();
                    if hexside.contains(&p) {
                        free += 1;
                    } else {
                        assert_eq!(c, Color(4), "balanced radial at layer {t} position {p}");
                    }
                }
                // Each strip has two unbalanced hexagons with two radial
                // sides each; the cap strip consists of nothing else.
                let expect = if t + 2 <= 5 { 4 } else { 3 };
                assert_eq!(free, expect, "layer {t}");
            }
        }
    }

    #[test]
    fn deeper_layers_repeat_the_template_layers() {
        let tables = derive_base_tables(11).unwrap();
        assert_eq!(tables.template_layers(), vec![4, 5, 6]);
        for side in [Side::Outer, Side::Inner] {
            let st = tables.side(side);
            for t in 7..=9 {
                let (src_per, src_hex, src_con) = layer_parts(st, t - 3);
                let (tgt_per, tgt_hex, tgt_con) = layer_parts(st, t);
                // Hexagon subpaths and their connecting edges repeat
                // verbatim; the subpaths in between continue the template
                // phase, only shorter.
                assert_eq!(src_hex, tgt_hex, "layer {t} hexagons");
                assert_eq!(src_con, tgt_con, "layer {t} connectors");
                for (i, seg) in tgt_per.iter().enumerate() {
                    for (k, &c) in seg.iter().enumerate() {
                        assert_eq!(
                            c,
                            src_per[i][k % 3],
                            "layer {t} subpath {i} element {k} off the template phase"
                        );
                    }
                }
            }
        }
    }

    /// One layer's color sequences split at the hexagon runs: the three
    /// periodic subpaths, the two hexagon subpaths, the four connecting
    /// edges.
    #[allow(clippy::type_complexity)]
    fn layer_parts(st: &SideTables, t: usize) -> (Vec<Vec<Color>>, Vec<Vec<Color>>, Vec<Color>) {
        let b = st.block();
        let els = path_elements(b, t);
        let shape = layer_shape(b.path(t).len(), hexagon_runs(b, t).unwrap());
        let c = |k: usize| st.coloring().get(&els[k]).unwrap();
        let span = |(s, e): (usize, usize)| (s..=e).map(c).collect::<Vec<_>>();
        (
            shape.periodic.into_iter().map(span).collect(),
            shape.hexes.into_iter().map(span).collect(),
            shape.connectors.into_iter().map(c).collect(),
        )
    }

    #[test]
    fn seeded_search_colors_d2() {
        let d = generate(2).unwrap();
        let outcome = color_small(&d, &Budget::nodes(5_000_000)).unwrap();
        let SearchOutcome::Witness(w) = outcome else {
            panic!("the smallest disc has a 4-total coloring");
        };
        assert!(w.report.is_total() && w.report.is_proper());
        assert_eq!(w.provenance, Provenance::Solver);
        assert_eq!(used_colors(&w.coloring), 4);
    }

    #[test]
    fn small_search_rejects_large_radii() {
        let d = generate(5).unwrap();
        assert!(matches!(
            color_small(&d, &Budget::UNLIMITED),
            Err(ConstructiveError::RadiusNotSmall(5))
        ));
    }

    #[test]
    fn starved_search_is_inconclusive() {
        let d = generate(3).unwrap();
        let outcome = color_small(&d, &Budget::nodes(30)).unwrap();
        match outcome {
            SearchOutcome::Inconclusive(attempts) => assert!(!attempts.is_empty()),
            SearchOutcome::Witness(_) => {}
            SearchOutcome::Unsatisfiable(_) => panic!("starved search cannot prove unsat"),
        }
    }
}
