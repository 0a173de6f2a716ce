//! Exact decision procedure for k-total-colorability with pinned
//! assignments: the oracle behind small-case witnesses, derived color
//! tables, and the impossibility checks.
//!
//! The solver colors the conflict graph over elements ([`total_graph`])
//! with backtracking, forward checking and most-constrained-first
//! ordering; ties break on the lowest canonical element, values ascend, so
//! sequential runs are reproducible. Every sat witness is re-verified
//! before it is returned. Budgets are counted in search nodes first and
//! wall time second, so runs are machine-independent in the primary
//! dimension.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use thiserror::Error;

use crate::coloring::{verify, Color, TotalColoring};
use crate::disc::Nanodisc;
use crate::search::{solve_csp, Csp, Limits, Order, RawOutcome, UnionFind};
use crate::semigraph::{Edge, EdgeKind, Element, Semigraph, VertexId};

/// Conflict graph over a semigraph's elements: one node per element, one
/// edge per adjacent/incident pair. A proper node coloring of `graph` is
/// exactly a total coloring of the source.
#[derive(Clone, Debug)]
pub struct TotalGraph {
    pub graph: Semigraph,
    /// Node `i` of `graph` stands for `elements[i]`; canonical order.
    pub elements: Vec<Element>,
}

pub fn total_graph(g: &Semigraph) -> TotalGraph {
    let elements = g.elements();
    let index: BTreeMap<Element, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (*e, i))
        .collect();
    let edges: Vec<Edge> = g
        .conflict_pairs()
        .into_iter()
        .map(|(a, b, _)| Edge::new(VertexId(index[&a]), VertexId(index[&b]), EdgeKind::Cycle))
        .collect();
    let graph = Semigraph::build_unembedded(elements.len(), edges, Vec::new())
        .expect("conflict pairs are simple");
    TotalGraph { graph, elements }
}

/// Optional search-space reductions.
#[derive(Clone, Debug, Default)]
pub enum Symmetry {
    #[default]
    None,
    /// Fix one maximal-degree vertex to color 1 and its incident elements
    /// to 2, 3, ... (sound up to color permutation). Needs empty pins.
    FixElement,
    /// Force the elements of each orbit to share a color. Sat/unsat then
    /// refer to the orbit-constant subspace, not the full space.
    Orbits(Vec<Vec<Element>>),
}

/// A k-total-colorability question about one graph.
#[derive(Clone, Debug)]
pub struct TotalProblem<'a> {
    pub graph: &'a Semigraph,
    pub k: u8,
    pub pins: TotalColoring,
    pub symmetry: Symmetry,
    /// Extra pairs required to receive different colors, on top of the
    /// conflicts the graph itself imposes.
    pub distinct: Vec<(Element, Element)>,
}

impl<'a> TotalProblem<'a> {
    pub fn plain(graph: &'a Semigraph, k: u8) -> Self {
        TotalProblem {
            graph,
            k,
            pins: TotalColoring::new(k),
            symmetry: Symmetry::None,
            distinct: Vec::new(),
        }
    }
}

/// Search budget; `None` fields mean unlimited.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub nodes: Option<u64>,
    pub wall: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        nodes: None,
        wall: None,
    };

    pub fn nodes(n: u64) -> Self {
        Budget {
            nodes: Some(n),
            wall: None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum SolveStatus {
    Sat(TotalColoring),
    Unsat,
    BudgetExceeded,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveStats {
    pub nodes: u64,
    pub max_depth: usize,
    pub wall: Duration,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub stats: SolveStats,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("color budget must be between 1 and 16, got {0}")]
    BadColorBudget(u8),
    #[error("pinned element {0} not in the graph")]
    UnknownElement(Element),
    #[error("pin color {1} on {0} exceeds budget {2}")]
    PinOutOfRange(Element, u8, u8),
    #[error("pins conflict: {0} and {1} both color {2}")]
    ConflictingPins(Element, Element, u8),
    #[error("fix-element symmetry breaking requires empty pins")]
    SymmetryWithPins,
    #[error("internal error: {0}")]
    Internal(String),
}

struct Compiled {
    classes: Vec<Vec<usize>>, // element node ids per class
    class_of: Vec<usize>,
    csp: Csp,
    /// A class whose members include two conflicting elements (the folded
    /// problem is trivially unsatisfiable).
    self_conflict: bool,
}

fn compile(p: &TotalProblem, tg: &TotalGraph) -> Result<Compiled, SolverError> {
    let n = tg.elements.len();
    let index: BTreeMap<Element, usize> = tg
        .elements
        .iter()
        .enumerate()
        .map(|(i, e)| (*e, i))
        .collect();

    let mut pins: Vec<(usize, u8)> = Vec::new();
    for (el, color) in p.pins.iter() {
        let &i = index
            .get(el)
            .ok_or(SolverError::UnknownElement(*el))?;
        if color.0 < 1 || color.0 > p.k {
            return Err(SolverError::PinOutOfRange(*el, color.0, p.k));
        }
        pins.push((i, color.0));
    }

    let mut uf = UnionFind::new(n);
    match &p.symmetry {
        Symmetry::None => {}
        Symmetry::FixElement => {
            if !pins.is_empty() {
                return Err(SolverError::SymmetryWithPins);
            }
            let vmax = p
                .graph
                .vertices()
                .max_by_key(|v| (p.graph.degree(*v), std::cmp::Reverse(v.0)));
            if let Some(v) = vmax {
                pins.push((index[&Element::Vertex(v)], 1));
                for (j, el) in p.graph.incidences(v).enumerate() {
                    let c = j as u8 + 2;
                    if c > p.k {
                        break; // a vertex of degree >= k needs more colors;
                               // the search will fail on its own
                    }
                    pins.push((index[&el], c));
                }
            }
        }
        Symmetry::Orbits(orbits) => {
            for orbit in orbits {
                let mut prev: Option<usize> = None;
                for el in orbit {
                    let &i = index
                        .get(el)
                        .ok_or(SolverError::UnknownElement(*el))?;
                    if let Some(j) = prev {
                        uf.union(i, j);
                    }
                    prev = Some(i);
                }
            }
        }
    }

    let mut roots: BTreeSet<usize> = BTreeSet::new();
    for i in 0..n {
        roots.insert(uf.find(i));
    }
    let class_index: BTreeMap<usize, usize> =
        roots.iter().enumerate().map(|(c, &r)| (r, c)).collect();
    let mut class_of = vec![0usize; n];
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); roots.len()];
    for i in 0..n {
        let c = class_index[&uf.find(i)];
        class_of[i] = c;
        classes[c].push(i);
    }

    let full: u16 = if p.k == 16 { u16::MAX } else { (1u16 << p.k) - 1 };
    let mut domains = vec![full; classes.len()];
    for &(i, color) in &pins {
        let c = class_of[i];
        let bit = 1u16 << (color - 1);
        if domains[c] != full && domains[c] != bit {
            let other = (domains[c].trailing_zeros() + 1) as u8;
            let culprit = tg.elements[classes[c][0]];
            return Err(SolverError::ConflictingPins(
                culprit,
                tg.elements[i],
                other.min(color),
            ));
        }
        domains[c] = bit;
    }

    let mut pair_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut self_conflict = false;
    for e in tg.graph.edges() {
        let (a, b) = (class_of[e.u.0], class_of[e.v.0]);
        if a == b {
            self_conflict = true;
        } else {
            pair_set.insert((a.min(b), a.max(b)));
        }
    }
    for (x, y) in &p.distinct {
        let &i = index.get(x).ok_or(SolverError::UnknownElement(*x))?;
        let &j = index.get(y).ok_or(SolverError::UnknownElement(*y))?;
        let (a, b) = (class_of[i], class_of[j]);
        if a == b {
            self_conflict = true;
        } else {
            pair_set.insert((a.min(b), a.max(b)));
        }
    }
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); classes.len()];
    for (a, b) in pair_set {
        adj[a].push(b as u32);
        adj[b].push(a as u32);
    }

    Ok(Compiled {
        classes,
        class_of,
        csp: Csp { domains, adj },
        self_conflict,
    })
}

fn to_limits(budget: &Budget) -> Limits {
    Limits {
        nodes: budget.nodes,
        wall: budget.wall,
    }
}

/// Decides whether the graph admits a k-total coloring extending the pins
/// (restricted to the symmetric subspace if orbits are given). Sat
/// witnesses are verified unconditionally before being returned.
pub fn solve(p: &TotalProblem, budget: &Budget) -> Result<SolveResult, SolverError> {
    solve_ordered(p, budget, Order::MinDomain)
}

pub(crate) fn solve_ordered(
    p: &TotalProblem,
    budget: &Budget,
    order: Order,
) -> Result<SolveResult, SolverError> {
    if p.k < 1 || p.k > 16 {
        return Err(SolverError::BadColorBudget(p.k));
    }
    let tg = total_graph(p.graph);
    let compiled = compile(p, &tg)?;
    if compiled.self_conflict {
        return Ok(SolveResult {
            status: SolveStatus::Unsat,
            stats: SolveStats::default(),
        });
    }

    let (outcome, raw) = solve_csp(&compiled.csp, order, &to_limits(budget));
    let stats = SolveStats {
        nodes: raw.nodes,
        max_depth: raw.max_depth,
        wall: raw.wall,
    };
    let status = match outcome {
        RawOutcome::Unsat => SolveStatus::Unsat,
        RawOutcome::Budget => SolveStatus::BudgetExceeded,
        RawOutcome::Sat(class_colors) => {
            let mut witness = TotalColoring::new(p.k);
            for (i, el) in tg.elements.iter().enumerate() {
                let color = class_colors[compiled.class_of[i]];
                witness
                    .set(*el, Color(color))
                    .map_err(|e| SolverError::Internal(e.to_string()))?;
            }
            let report = verify(p.graph, &witness)
                .map_err(|e| SolverError::Internal(e.to_string()))?;
            if !report.is_total() {
                return Err(SolverError::Internal(format!(
                    "witness failed verification: {report}"
                )));
            }
            for (el, &pin) in p.pins.iter() {
                if witness.get(el) != Some(pin) {
                    return Err(SolverError::Internal(format!("pin lost on {el}")));
                }
            }
            SolveStatus::Sat(witness)
        }
    };
    Ok(SolveResult { status, stats })
}

/// Result of a total chromatic number computation.
#[derive(Clone, Debug)]
pub enum ChromaticOutcome {
    Known {
        k: u8,
        witness: TotalColoring,
        stats: SolveStats,
    },
    /// Budget ran out while testing `tried`.
    Unknown { tried: u8, stats: SolveStats },
}

/// Smallest k admitting a total coloring, searching k ascending from
/// Δ+1 under a budget shared across the attempts.
pub fn chromatic_total_number(
    g: &Semigraph,
    budget: &Budget,
) -> Result<ChromaticOutcome, SolverError> {
    let mut total = SolveStats::default();
    let mut remaining = *budget;
    let start_k = (g.max_degree() + 1).max(1) as u8;
    let last_k = (g.element_count().min(16)) as u8;
    for k in start_k..=last_k.max(start_k) {
        let p = TotalProblem {
            graph: g,
            k,
            pins: TotalColoring::new(k),
            symmetry: Symmetry::FixElement,
            distinct: Vec::new(),
        };
        let result = solve(&p, &remaining)?;
        total.nodes += result.stats.nodes;
        total.max_depth = total.max_depth.max(result.stats.max_depth);
        total.wall += result.stats.wall;
        if let Some(n) = remaining.nodes.as_mut() {
            *n = n.saturating_sub(result.stats.nodes);
        }
        if let Some(w) = remaining.wall.as_mut() {
            *w = w.saturating_sub(result.stats.wall);
        }
        match result.status {
            SolveStatus::Sat(witness) => {
                return Ok(ChromaticOutcome::Known {
                    k,
                    witness,
                    stats: total,
                })
            }
            SolveStatus::Unsat => continue,
            SolveStatus::BudgetExceeded => {
                return Ok(ChromaticOutcome::Unknown { tried: k, stats: total })
            }
        }
    }
    Err(SolverError::Internal(
        "no color budget up to the element count satisfied the graph".into(),
    ))
}

/// Which part of the disc to test when pinning all radial edges.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RadialScope {
    /// The two outermost cycles with the cut radials kept as pinned
    /// semiedges; unsat here already settles the full question.
    CapOnly,
    Full,
}

/// Tests whether a 4-total coloring can give every radial edge one color
/// (pinned to 4, without loss of generality up to permutation). Expected
/// unsat for every disc.
pub fn check_no_uniform_radial(
    d: &Nanodisc,
    scope: RadialScope,
    budget: &Budget,
) -> Result<SolveResult, SolverError> {
    match scope {
        RadialScope::Full => {
            let mut pins = TotalColoring::new(4);
            for e in d.radial_edges() {
                pins.set(Element::of_edge(&e), Color(4))
                    .map_err(|e| SolverError::Internal(e.to_string()))?;
            }
            let p = TotalProblem {
                graph: d.graph(),
                k: 4,
                pins,
                symmetry: Symmetry::None,
                distinct: Vec::new(),
            };
            solve(&p, budget)
        }
        RadialScope::CapOnly => {
            let keep: BTreeSet<VertexId> = d.cycles()[0]
                .iter()
                .chain(d.cycles()[1].iter())
                .copied()
                .collect();
            let (sub, _) = d
                .graph()
                .induced(&keep, true)
                .map_err(|e| SolverError::Internal(e.to_string()))?;
            let mut pins = TotalColoring::new(4);
            for e in sub.edges() {
                if e.kind == EdgeKind::Radial {
                    pins.set(Element::of_edge(e), Color(4))
                        .map_err(|e| SolverError::Internal(e.to_string()))?;
                }
            }
            for s in sub.semiedges() {
                pins.set(Element::Semi(s.anchor, s.slot), Color(4))
                    .map_err(|e| SolverError::Internal(e.to_string()))?;
            }
            let p = TotalProblem {
                graph: &sub,
                k: 4,
                pins,
                symmetry: Symmetry::None,
                distinct: Vec::new(),
            };
            solve(&p, budget)
        }
    }
}

/// DIMACS CNF encoding of the problem (after symmetry folding), for
/// cross-checking with external tools. Variable `class * k + c + 1` means
/// "class takes color c+1".
pub fn export_cnf(p: &TotalProblem) -> Result<String, SolverError> {
    if p.k < 1 || p.k > 16 {
        return Err(SolverError::BadColorBudget(p.k));
    }
    let tg = total_graph(p.graph);
    let compiled = compile(p, &tg)?;
    let k = p.k as usize;
    let ncls = compiled.classes.len();
    let var = |class: usize, c: usize| class * k + c + 1;

    let mut clauses: Vec<Vec<i64>> = Vec::new();
    for class in 0..ncls {
        clauses.push((0..k).map(|c| var(class, c) as i64).collect());
        for c1 in 0..k {
            for c2 in c1 + 1..k {
                clauses.push(vec![-(var(class, c1) as i64), -(var(class, c2) as i64)]);
            }
        }
    }
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for e in tg.graph.edges() {
        let (a, b) = (compiled.class_of[e.u.0], compiled.class_of[e.v.0]);
        if a == b {
            clauses.push(vec![]); // empty clause: folded conflict
            continue;
        }
        if seen.insert((a.min(b), a.max(b))) {
            for c in 0..k {
                clauses.push(vec![
                    -(var(a.min(b), c) as i64),
                    -(var(a.max(b), c) as i64),
                ]);
            }
        }
    }
    for (class, &dom) in compiled.csp.domains.iter().enumerate() {
        if dom.count_ones() == 1 {
            let c = dom.trailing_zeros() as usize;
            clauses.push(vec![var(class, c) as i64]);
        }
    }

    let mut out = String::new();
    out.push_str("c total coloring as CNF; one variable per (element class, color)\n");
    for (class, members) in compiled.classes.iter().enumerate() {
        let keys: Vec<String> = members
            .iter()
            .map(|&i| tg.elements[i].key())
            .collect();
        out.push_str(&format!(
            "c class {} vars {}..{} = {}\n",
            class,
            var(class, 0),
            var(class, k - 1),
            keys.join(" ")
        ));
    }
    out.push_str(&format!("p cnf {} {}\n", ncls * k, clauses.len()));
    for clause in clauses {
        for lit in &clause {
            out.push_str(&format!("{lit} "));
        }
        out.push_str("0\n");
    }
    Ok(out)
}
