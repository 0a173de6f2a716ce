//! Total colorings and their verification.
//!
//! A total coloring assigns colors to vertices, edges and semiedges so
//! that adjacent or incident elements never share a color. Colorings here
//! may be partial: [`verify`] reports conflicts among colored elements and
//! lists the uncolored ones separately, since constructions proceed layer
//! by layer.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::disc::Nanodisc;
use crate::semigraph::{Element, Relation, Semigraph};

/// A color, `1..=k` of the enclosing coloring.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Color(pub u8);

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("color {0} outside palette 1..={1}")]
    ColorOutOfRange(u8, u8),
    #[error("element {0} not in the target graph")]
    UnknownElement(Element),
    #[error("cycle length {0} not divisible by 3")]
    NotDivisibleBy3(usize),
    #[error("cycle length {0} too short")]
    CycleTooShort(usize),
    #[error("start color {0} outside the 3-color palette")]
    BadStartColor(u8),
    #[error("anchor is not the shared radial edge of a pentagon pair")]
    InvalidAnchor,
    #[error("element {0} already colored {1}, refusing to overwrite with {2}")]
    MergeConflict(Element, u8, u8),
}

/// Total coloring with budget `k`; possibly partial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TotalColoring {
    k: u8,
    assignment: BTreeMap<Element, Color>,
}

impl TotalColoring {
    pub fn new(k: u8) -> Self {
        TotalColoring {
            k,
            assignment: BTreeMap::new(),
        }
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn set(&mut self, el: Element, color: Color) -> Result<(), ColoringError> {
        if color.0 < 1 || color.0 > self.k {
            return Err(ColoringError::ColorOutOfRange(color.0, self.k));
        }
        self.assignment.insert(el, color);
        Ok(())
    }

    pub fn get(&self, el: &Element) -> Option<Color> {
        self.assignment.get(el).copied()
    }

    pub fn remove(&mut self, el: &Element) -> Option<Color> {
        self.assignment.remove(el)
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &Color)> {
        self.assignment.iter()
    }

    /// Copies every assignment of `other`, mapping elements through `f`.
    /// Existing conflicting values are reported as an error.
    pub fn absorb<F>(&mut self, other: &TotalColoring, mut f: F) -> Result<(), ColoringError>
    where
        F: FnMut(&Element) -> Element,
    {
        for (el, &c) in other.iter() {
            let target = f(el);
            if let Some(prev) = self.get(&target) {
                if prev != c {
                    return Err(ColoringError::MergeConflict(target, prev.0, c.0));
                }
            }
            self.set(target, c)?;
        }
        Ok(())
    }
}

/// Number of distinct colors actually used.
pub fn used_colors(c: &TotalColoring) -> usize {
    let mut seen = [false; 256];
    let mut count = 0;
    for (_, color) in c.iter() {
        if !seen[color.0 as usize] {
            seen[color.0 as usize] = true;
            count += 1;
        }
    }
    count
}

/// One violated adjacency/incidence: two elements sharing a color.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Conflict {
    pub a: Element,
    pub b: Element,
    pub color: Color,
    pub relation: Relation,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ~ {} both color {} ({})",
            self.a, self.b, self.color, self.relation
        )
    }
}

/// Verification outcome: all conflicts plus all uncolored elements.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ConflictReport {
    pub conflicts: Vec<Conflict>,
    pub uncolored: Vec<Element>,
}

impl ConflictReport {
    /// No conflicts among the colored elements (coloring may be partial).
    pub fn is_proper(&self) -> bool {
        self.conflicts.is_empty()
    }

    /// Proper and covering every element.
    pub fn is_total(&self) -> bool {
        self.conflicts.is_empty() && self.uncolored.is_empty()
    }
}

impl fmt::Display for ConflictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conflicts {
            writeln!(f, "conflict: {c}")?;
        }
        if !self.uncolored.is_empty() {
            writeln!(
                f,
                "{} uncolored element{}",
                self.uncolored.len(),
                if self.uncolored.len() == 1 { "" } else { "s" }
            )?;
        }
        Ok(())
    }
}

/// Checks a (possibly partial) total coloring of `g`, listing every
/// conflicting pair and every uncolored element.
pub fn verify(g: &Semigraph, c: &TotalColoring) -> Result<ConflictReport, ColoringError> {
    for (el, _) in c.iter() {
        if !g.contains_element(el) {
            return Err(ColoringError::UnknownElement(*el));
        }
    }
    let mut report = ConflictReport::default();
    for (a, b, relation) in g.conflict_pairs() {
        if let (Some(ca), Some(cb)) = (c.get(&a), c.get(&b)) {
            if ca == cb {
                report.conflicts.push(Conflict {
                    a,
                    b,
                    color: ca,
                    relation,
                });
            }
        }
    }
    report.uncolored = g
        .elements()
        .into_iter()
        .filter(|el| c.get(el).is_none())
        .collect();
    Ok(report)
}

/// Walking direction along a cycle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Clockwise,
    Anticlockwise,
}

/// The 3-total coloring of `C_n` (`n` divisible by 3) that colors the
/// elements in circular order: vertex 0, edge 01, vertex 1, ... receive
/// `start, start+1, start+2, start, ...` cyclically over `{1,2,3}`
/// (descending instead when walking anticlockwise).
pub fn yap_cycle_coloring(
    n: usize,
    start: Color,
    direction: Direction,
) -> Result<TotalColoring, ColoringError> {
    if n < 3 {
        return Err(ColoringError::CycleTooShort(n));
    }
    if n % 3 != 0 {
        return Err(ColoringError::NotDivisibleBy3(n));
    }
    if start.0 < 1 || start.0 > 3 {
        return Err(ColoringError::BadStartColor(start.0));
    }
    let mut c = TotalColoring::new(3);
    let at = |m: i64| -> Color {
        let base = start.0 as i64 - 1;
        let v = match direction {
            Direction::Clockwise => base + m,
            Direction::Anticlockwise => base - m,
        };
        Color((v.rem_euclid(3)) as u8 + 1)
    };
    for k in 0..n {
        let v = crate::semigraph::VertexId(k);
        let w = crate::semigraph::VertexId((k + 1) % n);
        c.set(Element::Vertex(v), at(2 * k as i64))?;
        c.set(Element::edge(v, w), at(2 * k as i64 + 1))?;
    }
    Ok(c)
}

/// The 4-total coloring of the central layer of a disc: both central
/// cycles colored by the circular 3-color scheme, phased off the shared
/// radial edge of the first pentagon pair, and every central radial edge
/// colored 4. Partial on the rest of the disc.
///
/// The two cycle walks start at the endpoints of that shared radial: the
/// inner endpoint starts the inner walk at color 1 ascending, the outer
/// endpoint starts the outer walk at color 3 (so vertex `k` of the walks
/// gets `[1,3,2][k%3]` / `[3,2,1][k%3]`); each cycle edge copies the color
/// of a nearby vertex of the opposite cycle, which keeps every radial
/// endpoint pair conflict-free.
pub fn central_layer_coloring(d: &Nanodisc) -> Result<TotalColoring, ColoringError> {
    let r = d.radius();
    let pair = d
        .pentagon_pairs()
        .first()
        .ok_or(ColoringError::InvalidAnchor)?;
    let Element::Edge(a, b) = pair.shared_radial else {
        return Err(ColoringError::InvalidAnchor);
    };
    let (u0, v0) = if d.coord(a).cycle == r {
        (a, b)
    } else {
        (b, a)
    };
    if d.coord(u0).cycle != r || d.coord(v0).cycle != r - 1 {
        return Err(ColoringError::InvalidAnchor);
    }

    let m = d.cycles()[r].len();
    let mut c = TotalColoring::new(4);
    let inner_v = [1u8, 3, 2];
    let inner_e = [2u8, 1, 3];
    let outer_v = [3u8, 2, 1];
    let outer_e = [1u8, 3, 2];
    let u_start = d.coord(u0).pos;
    let v_start = d.coord(v0).pos;
    for k in 0..m {
        let u = d.vertex_at(r, u_start + k);
        let un = d.vertex_at(r, u_start + k + 1);
        c.set(Element::Vertex(u), Color(inner_v[k % 3]))?;
        c.set(Element::edge(u, un), Color(inner_e[k % 3]))?;
        let v = d.vertex_at(r - 1, v_start + k);
        let vn = d.vertex_at(r - 1, v_start + k + 1);
        c.set(Element::Vertex(v), Color(outer_v[k % 3]))?;
        c.set(Element::edge(v, vn), Color(outer_e[k % 3]))?;
    }
    for radial in d.central_radials() {
        c.set(radial, Color(4))?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::generate;
    use crate::semigraph::{cycle_graph, VertexId};

    #[test]
    fn verify_rejects_foreign_elements() {
        let g = cycle_graph(3).unwrap();
        let mut c = TotalColoring::new(3);
        c.set(Element::edge(VertexId(5), VertexId(7)), Color(1)).unwrap();
        assert_eq!(
            verify(&g, &c).unwrap_err(),
            ColoringError::UnknownElement(Element::edge(VertexId(5), VertexId(7)))
        );
    }

    #[test]
    fn verify_counts_monochrome_cycle_conflicts() {
        let g = cycle_graph(3).unwrap();
        let mut c = TotalColoring::new(3);
        for v in g.vertices() {
            c.set(Element::Vertex(v), Color(1)).unwrap();
        }
        let report = verify(&g, &c).unwrap();
        assert_eq!(report.conflicts.len(), 3);
        assert!(report
            .conflicts
            .iter()
            .all(|c| c.relation == Relation::AdjacentVertices));
        assert_eq!(report.uncolored.len(), 3);
        assert!(!report.is_proper());
    }

    #[test]
    fn proper_triangle_coloring() {
        let g = cycle_graph(3).unwrap();
        let c = yap_cycle_coloring(3, Color(1), Direction::Clockwise).unwrap();
        let report = verify(&g, &c).unwrap();
        assert!(report.is_total(), "{report}");
        assert_eq!(used_colors(&c), 3);
    }

    #[test]
    fn cycle_coloring_start_and_direction() {
        let c = yap_cycle_coloring(18, Color(1), Direction::Clockwise).unwrap();
        assert_eq!(c.get(&Element::Vertex(VertexId(0))), Some(Color(1)));
        assert_eq!(c.get(&Element::Vertex(VertexId(1))), Some(Color(3)));
        assert_eq!(c.get(&Element::Vertex(VertexId(2))), Some(Color(2)));

        let c = yap_cycle_coloring(18, Color(3), Direction::Clockwise).unwrap();
        assert_eq!(c.get(&Element::Vertex(VertexId(0))), Some(Color(3)));
        assert_eq!(c.get(&Element::Vertex(VertexId(1))), Some(Color(2)));
        assert_eq!(c.get(&Element::Vertex(VertexId(2))), Some(Color(1)));

        let g = cycle_graph(18).unwrap();
        for start in 1..=3 {
            for dir in [Direction::Clockwise, Direction::Anticlockwise] {
                let c = yap_cycle_coloring(18, Color(start), dir).unwrap();
                assert!(verify(&g, &c).unwrap().is_total());
            }
        }
    }

    #[test]
    fn cycle_coloring_rejects_bad_input() {
        assert_eq!(
            yap_cycle_coloring(5, Color(1), Direction::Clockwise).unwrap_err(),
            ColoringError::NotDivisibleBy3(5)
        );
        assert_eq!(
            yap_cycle_coloring(6, Color(4), Direction::Clockwise).unwrap_err(),
            ColoringError::BadStartColor(4)
        );
    }

    #[test]
    fn central_layer_is_proper_and_partial() {
        for r in 2..=8 {
            let d = generate(r).unwrap();
            let c = central_layer_coloring(&d).unwrap();
            let report = verify(d.graph(), &c).unwrap();
            assert!(report.is_proper(), "r={r}: {report}");
            assert!(!report.uncolored.is_empty());
            assert_eq!(used_colors(&c), 4, "r={r}");
        }
    }

    #[test]
    fn central_layer_uses_three_colors_per_cycle_and_four_on_radials() {
        let d = generate(4).unwrap();
        let c = central_layer_coloring(&d).unwrap();
        for cycle in [3, 4] {
            let verts = &d.cycles()[cycle];
            let mut seen = std::collections::BTreeSet::new();
            for (p, &v) in verts.iter().enumerate() {
                seen.insert(c.get(&Element::Vertex(v)).unwrap());
                let w = verts[(p + 1) % verts.len()];
                seen.insert(c.get(&Element::edge(v, w)).unwrap());
            }
            let expect: std::collections::BTreeSet<Color> =
                [Color(1), Color(2), Color(3)].into_iter().collect();
            assert_eq!(seen, expect, "cycle {cycle}");
        }
        for radial in d.central_radials() {
            assert_eq!(c.get(&radial), Some(Color(4)));
        }
        let fours = c.iter().filter(|(_, &col)| col == Color(4)).count();
        assert_eq!(fours, d.central_radials().len());
    }

    #[test]
    fn central_anchor_vertices_get_color_two_in_family_radii() {
        // At radii 5, 8, 11 the two block anchor vertices on each central
        // cycle sit 4r-2 apart, a multiple of 3, so they share a color,
        // and the walk phase puts color 2 there.
        let d = generate(5).unwrap();
        let c = central_layer_coloring(&d).unwrap();
        let pair = &d.pentagon_pairs()[0];
        let (_, y) = pair.outer_two_side(&d);
        let len = d.cycles()[4].len();
        let left = d.vertex_at(4, d.coord(y).pos + len - 5);
        let next_pair = &d.pentagon_pairs()[1];
        let (x2, _) = next_pair.outer_two_side(&d);
        let right = d.vertex_at(4, d.coord(x2).pos + 5);
        assert_eq!(c.get(&Element::Vertex(left)), Some(Color(2)));
        assert_eq!(c.get(&Element::Vertex(right)), Some(Color(2)));
    }

    #[test]
    fn used_colors_counts_distinct() {
        let mut c = TotalColoring::new(4);
        assert_eq!(used_colors(&c), 0);
        c.set(Element::Vertex(VertexId(0)), Color(2)).unwrap();
        c.set(Element::Vertex(VertexId(1)), Color(2)).unwrap();
        c.set(Element::Vertex(VertexId(2)), Color(4)).unwrap();
        assert_eq!(used_colors(&c), 2);
    }

    #[test]
    fn color_budget_enforced() {
        let mut c = TotalColoring::new(3);
        assert_eq!(
            c.set(Element::Vertex(VertexId(0)), Color(4)).unwrap_err(),
            ColoringError::ColorOutOfRange(4, 3)
        );
        assert_eq!(
            c.set(Element::Vertex(VertexId(0)), Color(0)).unwrap_err(),
            ColoringError::ColorOutOfRange(0, 3)
        );
    }
}
