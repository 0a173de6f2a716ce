//! The standing acceptance suite: one test per claim the artifact makes,
//! each printing a single `criterion N: pass` line (run with --nocapture
//! to see them). Runtime bounds are asserted where a claim carries one.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use nanodisc_core::blocks::{
    close_hemisphere, extract_block, hemispheres_isomorphic, is_compatible,
    is_mutually_compatible, junction_hemispheres, junction_identify, split_hemispheres, wrap,
    Block, Hemisphere,
};
use nanodisc_core::coloring::{central_layer_coloring, used_colors, verify, TotalColoring};
use nanodisc_core::constructive::{
    color_block, color_family, derive_base_tables, explore, Provenance, SearchOutcome,
};
use nanodisc_core::disc::{check_structure, generate};
use nanodisc_core::semigraph::{cycle_graph, Edge, EdgeKind, Element, Semiedge, Semigraph, VertexId};
use nanodisc_core::solver::{
    check_no_uniform_radial, chromatic_total_number, solve, Budget, ChromaticOutcome,
    RadialScope, SolveStatus, TotalProblem,
};
use nanodisc_core::Color;

fn pass(n: usize, what: &str, t: Instant) {
    println!("criterion {n}: pass - {what} in {:.2?}", t.elapsed());
}

/// SplitMix64; fixed seed keeps the randomized criteria reproducible.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

#[test]
fn criterion_1_structure_suite() {
    let t = Instant::now();
    let validators = [
        "central hexagons balanced",
        "six unbalanced hexagons per hexagonal layer",
        "consecutive pentagons partitioned differently",
        "no neighbouring faces share a two-vertex side",
    ];
    for r in 2..=12 {
        let d = generate(r).unwrap();
        let g = d.graph();
        assert_eq!(g.vertex_count(), 12 * r * r, "radius {r}");
        assert_eq!(g.edge_count(), 18 * r * r, "radius {r}");
        assert_eq!(d.layers().len(), 2 * r + 1, "radius {r}");
        assert_eq!(g.girth().unwrap(), 5, "radius {r}");
        assert_eq!(g.max_degree(), 3, "radius {r}");

        let rep = check_structure(&d);
        for check in &rep.checks {
            assert!(check.pass, "radius {r}: {} ({})", check.name, check.detail);
        }
        for name in validators {
            assert!(
                rep.checks.iter().any(|c| c.name == name),
                "validator missing: {name}"
            );
        }
    }
    assert!(t.elapsed() < Duration::from_secs(10));
    pass(1, "structure suite and lemma validators for r = 2..12", t);
}

#[test]
fn criterion_2_cycle_chromatics() {
    let t = Instant::now();
    for (n, want) in [(3, 3), (6, 3), (9, 3), (12, 3), (4, 4), (5, 4), (7, 4), (8, 4), (10, 4), (11, 4)] {
        let g = cycle_graph(n).unwrap();
        let ChromaticOutcome::Known { k, witness, .. } =
            chromatic_total_number(&g, &Budget::UNLIMITED).unwrap()
        else {
            panic!("unlimited budget ran out on C_{n}");
        };
        assert_eq!(k, want, "C_{n}");
        let rep = verify(&g, &witness).unwrap();
        assert!(rep.is_proper() && rep.is_total(), "C_{n} witness");
    }
    assert!(t.elapsed() < Duration::from_secs(5));
    pass(2, "cycle total chromatic numbers for n = 3..12", t);
}

#[test]
fn criterion_3_central_layer() {
    let t = Instant::now();
    for r in 2..=30 {
        let d = generate(r).unwrap();
        let c = central_layer_coloring(&d).unwrap();
        let rep = verify(d.graph(), &c).unwrap();
        assert!(rep.is_proper(), "radius {r}: {:?}", rep.conflicts);

        for cyc in [r - 1, r] {
            let ring = &d.cycles()[cyc];
            let mut colors = BTreeSet::new();
            for (j, &v) in ring.iter().enumerate() {
                let w = ring[(j + 1) % ring.len()];
                colors.insert(c.get(&Element::Vertex(v)).unwrap());
                colors.insert(c.get(&Element::edge(v, w)).unwrap());
            }
            let got: Vec<u8> = colors.iter().map(|c| c.0).collect();
            assert_eq!(got, [1, 2, 3], "radius {r} cycle {cyc}");
        }

        let radials: BTreeSet<Element> = d.central_radials().into_iter().collect();
        let pink: BTreeSet<Element> = c
            .iter()
            .filter(|(_, c)| c.0 == 4)
            .map(|(el, _)| *el)
            .collect();
        assert_eq!(radials, pink, "radius {r}");
    }
    assert!(t.elapsed() < Duration::from_secs(5));
    pass(3, "central-layer colorings for r = 2..30", t);
}

#[test]
fn criterion_4_uniform_radial_impossibility() {
    let t = Instant::now();
    let unsat = |r: usize, scope: RadialScope, limit: Duration| {
        let d = generate(r).unwrap();
        let clock = Instant::now();
        let res = check_no_uniform_radial(&d, scope, &Budget::UNLIMITED).unwrap();
        assert!(clock.elapsed() < limit, "radius {r} {scope:?} too slow");
        assert!(
            matches!(res.status, SolveStatus::Unsat),
            "radius {r} {scope:?} not unsat"
        );
    };
    unsat(2, RadialScope::CapOnly, Duration::from_secs(1));
    unsat(2, RadialScope::Full, Duration::from_secs(600));
    unsat(3, RadialScope::CapOnly, Duration::from_secs(1));
    pass(4, "uniform radial colorings refuted (caps and full)", t);
}

#[test]
fn criterion_5_family_witnesses() {
    let t = Instant::now();
    for r in [5usize, 8, 11] {
        let clock = Instant::now();
        let d = generate(r).unwrap();
        let w = color_family(&d).unwrap();
        assert!(clock.elapsed() < Duration::from_secs(60), "radius {r} too slow");

        assert!(w.report.is_proper() && w.report.is_total(), "radius {r}");
        assert!(w.report.conflicts.is_empty(), "radius {r}");
        assert_eq!(w.coloring.len(), 12 * r * r + 18 * r * r, "radius {r}");
        assert_eq!(used_colors(&w.coloring), 4, "radius {r}");
        assert_eq!(w.provenance, Provenance::Constructive);
    }
    pass(5, "constructive 4-total colorings for r = 5, 8, 11", t);
}

#[test]
fn criterion_6_block_algebra() {
    let t = Instant::now();
    for r in 2..=12 {
        let d = generate(r).unwrap();
        let (o, i) = split_hemispheres(&d).unwrap();
        for h in [&o, &i] {
            let central = h.cycle(1).len();
            assert_eq!(central, 12 * r - 6, "radius {r}");
            for idx in [1, 3, 5] {
                let b = extract_block(h, idx).unwrap();
                let la = b.patch.to_hemisphere[b.patch.left_anchor(1).0];
                let ra = b.patch.to_hemisphere[b.patch.right_anchor(1).0];
                let arc = (h.coord(ra).1 + central - h.coord(la).1) % central;
                let dist = arc.min(central - arc);
                assert_eq!(dist, 4 * r - 2, "radius {r} block {idx}");
                assert_eq!(dist, central / 3, "radius {r} block {idx}");
                for layer in 1..=r {
                    assert_eq!(b.path(layer).len(), 4 * (r - layer) + 3, "radius {r}");
                }
            }
        }
    }
    for r in 2..=6 {
        let d = generate(r).unwrap();
        let (o, i) = split_hemispheres(&d).unwrap();
        for h in [&o, &i] {
            let b1 = extract_block(h, 1).unwrap();
            let b3 = extract_block(h, 3).unwrap();
            let b5 = extract_block(h, 5).unwrap();
            let (ab, _) = junction_identify(&b1.patch, &b3.patch).unwrap();
            let (abc, _) = junction_identify(&ab, &b5.patch).unwrap();
            let (closed, _) = wrap(&abc).unwrap();
            let closed = close_hemisphere(&closed).unwrap();
            assert!(hemispheres_isomorphic(&closed, h), "radius {r}");
        }
        let g = junction_hemispheres(&o, &i, &d).unwrap();
        assert_eq!(g.vertex_count(), d.graph().vertex_count(), "radius {r}");
        assert_eq!(g.edge_count(), d.graph().edge_count(), "radius {r}");
        assert_eq!(g.semiedge_count(), 0, "radius {r}");
    }
    assert!(t.elapsed() < Duration::from_secs(30));
    pass(6, "anchor distances, path sizes, and reassembly", t);
}

#[test]
fn criterion_7_small_case_witnesses() {
    let t = Instant::now();
    let d2 = generate(2).unwrap();
    let clock = Instant::now();
    let out = explore(&d2, &Budget { nodes: None, wall: Some(Duration::from_secs(600)) }).unwrap();
    assert!(clock.elapsed() < Duration::from_secs(600));
    let SearchOutcome::Witness(w) = out else {
        panic!("seeded search failed on the smallest disc");
    };
    let rep = verify(d2.graph(), &w.coloring).unwrap();
    assert!(rep.is_proper() && rep.is_total());
    assert_eq!(used_colors(&w.coloring), 4);
    assert_eq!(w.provenance, Provenance::Solver);

    let budget = std::env::var("NANODISC_BUDGET_NODES")
        .ok()
        .and_then(|s| s.parse().ok())
        .map(Budget::nodes)
        .unwrap_or(Budget::nodes(2_000_000));
    for r in [3usize, 4] {
        let d = generate(r).unwrap();
        match explore(&d, &budget).unwrap() {
            SearchOutcome::Witness(w) => {
                let rep = verify(d.graph(), &w.coloring).unwrap();
                assert!(rep.is_proper() && rep.is_total(), "radius {r} witness");
            }
            SearchOutcome::Inconclusive(attempts) => {
                println!("criterion 7: note - radius {r} inconclusive after {} attempts", attempts.len());
            }
            SearchOutcome::Unsatisfiable(_) => {
                panic!("budgeted search may never call a disc uncolorable");
            }
        }
    }
    pass(7, "seeded witnesses for small radii (best effort beyond 2)", t);
}

/// The solver-independent element conflict relation.
fn related(a: &Element, b: &Element) -> bool {
    use Element::*;
    match (a, b) {
        (Vertex(_), Vertex(_)) => false, // adjacency handled by the caller
        (Vertex(x), Edge(u, v)) | (Edge(u, v), Vertex(x)) => x == u || x == v,
        (Vertex(x), Semi(y, _)) | (Semi(y, _), Vertex(x)) => x == y,
        (Edge(u1, v1), Edge(u2, v2)) => u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2,
        (Edge(u, v), Semi(x, _)) | (Semi(x, _), Edge(u, v)) => x == u || x == v,
        (Semi(x, _), Semi(y, _)) => x == y,
    }
}

fn conflict_pairs(g: &Semigraph) -> Vec<(usize, usize)> {
    let els = g.elements();
    let mut pairs = Vec::new();
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            let hit = match (&els[i], &els[j]) {
                (Element::Vertex(a), Element::Vertex(b)) => g.edge_between(*a, *b).is_some(),
                (a, b) => related(a, b),
            };
            if hit {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Plain odometer over all k^m assignments.
fn enumerate_colorable(g: &Semigraph, k: u8) -> bool {
    let m = g.elements().len();
    let pairs = conflict_pairs(g);
    let mut a = vec![0u8; m];
    loop {
        if pairs.iter().all(|&(i, j)| a[i] != a[j]) {
            return true;
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            a[pos] += 1;
            if a[pos] < k {
                break;
            }
            a[pos] = 0;
        }
    }
}

fn random_small_graph(rng: &mut Rng) -> Semigraph {
    loop {
        let n = 1 + rng.below(4);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.below(2) == 0 {
                    edges.push(Edge::new(VertexId(u), VertexId(v), EdgeKind::Cycle));
                }
            }
        }
        let mut semis = Vec::new();
        for v in 0..n {
            for slot in 0..rng.below(3) {
                semis.push(Semiedge { anchor: VertexId(v), slot });
            }
        }
        while n + edges.len() + semis.len() > 10 {
            if !semis.is_empty() {
                semis.pop();
            } else {
                edges.pop();
            }
        }
        if let Ok(g) = Semigraph::build_unembedded(n, edges, semis) {
            return g;
        }
    }
}

#[test]
fn criterion_8_solver_matches_enumeration() {
    let t = Instant::now();
    let mut rng = Rng(0x5eed);
    let (mut sat_seen, mut unsat_seen) = (0usize, 0usize);
    for case in 0..200 {
        let g = random_small_graph(&mut rng);
        let k = 2 + rng.below(3) as u8;
        let oracle = enumerate_colorable(&g, k);
        let res = solve(&TotalProblem::plain(&g, k), &Budget::UNLIMITED).unwrap();
        match res.status {
            SolveStatus::Sat(c) => {
                assert!(oracle, "case {case}: solver sat, enumeration unsat");
                let rep = verify(&g, &c).unwrap();
                assert!(rep.is_proper() && rep.is_total(), "case {case}");
                sat_seen += 1;
            }
            SolveStatus::Unsat => {
                assert!(!oracle, "case {case}: solver unsat, enumeration sat");
                unsat_seen += 1;
            }
            SolveStatus::BudgetExceeded => panic!("case {case}: unlimited budget exceeded"),
        }
    }
    assert!(sat_seen > 20 && unsat_seen > 20, "degenerate case mix: {sat_seen} sat, {unsat_seen} unsat");
    pass(8, &format!("solver matches enumeration on 200 cases ({sat_seen} sat, {unsat_seen} unsat)"), t);
}

#[test]
fn criterion_9_compatibility_predicates() {
    let t = Instant::now();
    let mut rng = Rng(0xb10c);
    for r in [5usize, 8] {
        let d = generate(r).unwrap();
        let tables = derive_base_tables(r).unwrap();
        let (oh, ih) = split_hemispheres(&d).unwrap();
        let color_side = |h: &Hemisphere| -> Vec<(Block, TotalColoring)> {
            [1, 3, 5]
                .iter()
                .map(|&i| {
                    let b = extract_block(h, i).unwrap();
                    let c = color_block(&b, &tables).unwrap();
                    (b, c)
                })
                .collect()
        };
        let outer = color_side(&oh);
        let inner = color_side(&ih);

        for list in [&outer, &inner] {
            for (x, y) in [(0, 1), (1, 2), (2, 0)] {
                let (ok, why) = is_compatible(&list[x].0, &list[x].1, &list[y].0, &list[y].1).unwrap();
                assert!(ok, "radius {r} seam {x}->{y}: {why:?}");
            }
        }
        for ((o, co), (i, ci)) in outer.iter().zip(inner.iter()) {
            let (ok, why) = is_mutually_compatible(o, co, i, ci).unwrap();
            assert!(ok, "radius {r} junction: {why:?}");
        }

        for mutation in 0..50 {
            let list = if rng.below(2) == 0 { &outer } else { &inner };
            let j = rng.below(3);
            let left = rng.below(2) == 0;
            let frontier = if left {
                list[j].0.patch.left_frontier()
            } else {
                list[j].0.patch.right_frontier()
            };
            let mut pool: Vec<Element> = frontier.vertices.iter().map(|&v| Element::Vertex(v)).collect();
            pool.extend(frontier.edges.iter().map(Element::of_edge));
            pool.extend(frontier.semis.iter().copied());
            let el = pool[rng.below(pool.len())];

            let mut mutated = list[j].1.clone();
            let old = mutated.get(&el).unwrap();
            let new = Color(1 + ((old.0 + rng.below(3) as u8) % 4));
            mutated.remove(&el);
            mutated.set(el, new).unwrap();

            let (x, y, ca, cb) = if left {
                let p = (j + 2) % 3;
                (p, j, &list[p].1, &mutated)
            } else {
                let nx = (j + 1) % 3;
                (j, nx, &mutated, &list[nx].1)
            };
            let (ok, _) = is_compatible(&list[x].0, ca, &list[y].0, cb).unwrap();
            assert!(
                !ok,
                "radius {r} mutation {mutation}: recoloring {el} from {old} to {new} went unnoticed"
            );
        }
    }
    pass(9, "seam predicates hold and catch all 100 frontier mutations", t);
}
