//! Coordinates, orientations, adjacency, and central reflection on the
//! triangular lattice.
//!
//! The lattice is spanned by two basis vectors at 60 degrees: `e1` points
//! east and `e2` points northeast. A vertex `(p, q)` is the point
//! `p*e1 + q*e2`. Two vertices are adjacent iff their difference is
//! `±e1`, `±e2` or `±(e1 - e2)`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A lattice point, written in the oblique `e1`/`e2` basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeVertex {
    pub p: i64,
    pub q: i64,
}

impl LatticeVertex {
    pub const fn new(p: i64, q: i64) -> Self {
        LatticeVertex { p, q }
    }
}

/// Orientation of a unit lattice triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orient {
    Up,
    Down,
}

impl Orient {
    pub fn flipped(self) -> Orient {
        match self {
            Orient::Up => Orient::Down,
            Orient::Down => Orient::Up,
        }
    }
}

/// One unit lattice triangle, the atom of every region.
///
/// `Up(p, q)` has vertex set `{(p,q), (p+1,q), (p,q+1)}`; `Down(p, q)` has
/// vertex set `{(p+1,q), (p,q+1), (p+1,q+1)}`. An `Up` and a `Down` cell are
/// edge-adjacent iff they share exactly two vertices; equal orientations are
/// never edge-adjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriCell {
    pub p: i64,
    pub q: i64,
    pub orient: Orient,
}

// Row-major order, `Down` after `Up` at equal coordinates. This is the scan
// order every counting algorithm relies on for determinism.
impl PartialOrd for TriCell {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TriCell {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.q, self.p, self.orient).cmp(&(other.q, other.p, other.orient))
    }
}

impl fmt::Display for TriCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.orient {
            Orient::Up => "U",
            Orient::Down => "D",
        };
        write!(f, "{tag}({},{})", self.p, self.q)
    }
}

impl TriCell {
    pub const fn up(p: i64, q: i64) -> Self {
        TriCell { p, q, orient: Orient::Up }
    }

    pub const fn down(p: i64, q: i64) -> Self {
        TriCell { p, q, orient: Orient::Down }
    }

    pub fn vertices(&self) -> [LatticeVertex; 3] {
        let (p, q) = (self.p, self.q);
        match self.orient {
            Orient::Up => [
                LatticeVertex::new(p, q),
                LatticeVertex::new(p + 1, q),
                LatticeVertex::new(p, q + 1),
            ],
            Orient::Down => [
                LatticeVertex::new(p + 1, q),
                LatticeVertex::new(p, q + 1),
                LatticeVertex::new(p + 1, q + 1),
            ],
        }
    }

    /// The 3 edge-adjacent cells, always of opposite orientation, in a fixed
    /// order: same-coordinates partner first, then west/east, then the
    /// partner in the adjacent row.
    pub fn neighbors(&self) -> [TriCell; 3] {
        let (p, q) = (self.p, self.q);
        match self.orient {
            Orient::Up => [
                TriCell::down(p, q),
                TriCell::down(p - 1, q),
                TriCell::down(p, q - 1),
            ],
            Orient::Down => [
                TriCell::up(p, q),
                TriCell::up(p + 1, q),
                TriCell::up(p, q + 1),
            ],
        }
    }

    pub fn is_adjacent(&self, other: &TriCell) -> bool {
        self.neighbors().contains(other)
    }

    /// Rotation by +120 degrees about the origin. Preserves orientation.
    pub fn rot120(&self) -> TriCell {
        let (p, q) = (self.p, self.q);
        match self.orient {
            Orient::Up => TriCell::up(-p - q - 1, p),
            Orient::Down => TriCell::down(-p - q - 2, p),
        }
    }
}

/// A point-reflection center with doubled integer coordinates, so lattice
/// points and edge midpoints share one exact representation. The center is
/// the point `(cp2/2, cq2/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SymCenter {
    pub cp2: i64,
    pub cq2: i64,
}

impl SymCenter {
    pub const fn new(cp2: i64, cq2: i64) -> Self {
        SymCenter { cp2, cq2 }
    }

    /// Center at a lattice point.
    pub const fn at_vertex(p: i64, q: i64) -> Self {
        SymCenter { cp2: 2 * p, cq2: 2 * q }
    }

    pub fn is_lattice_point(&self) -> bool {
        self.cp2 % 2 == 0 && self.cq2 % 2 == 0
    }
}

/// Point-reflection (180 degree rotation) of a cell through `c`.
///
/// Reflecting all three vertices of `Up(p, q)` through `(cp2/2, cq2/2)` gives
/// exactly the vertex set of `Down(cp2-p-1, cq2-q-1)`, and symmetrically for
/// down cells; orientation always flips and the map is an involution.
pub fn reflect_cell(t: TriCell, c: SymCenter) -> TriCell {
    TriCell {
        p: c.cp2 - t.p - 1,
        q: c.cq2 - t.q - 1,
        orient: t.orient.flipped(),
    }
}

/// Point-reflection of a vertex through `c`, in doubled coordinates.
/// Returns `None` if the image is not a lattice point (never happens for
/// valid centers, kept for clarity at call sites working with raw centers).
pub fn reflect_vertex(v: LatticeVertex, c: SymCenter) -> Option<LatticeVertex> {
    let p2 = c.cp2 - v.p;
    let q2 = c.cq2 - v.q;
    Some(LatticeVertex::new(p2, q2))
}

/// A finite set of cells, optionally with a declared symmetry center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub cells: BTreeSet<TriCell>,
    pub center: Option<SymCenter>,
}

impl Region {
    pub fn new(cells: BTreeSet<TriCell>, center: Option<SymCenter>) -> Self {
        Region { cells, center }
    }

    pub fn from_cells<I: IntoIterator<Item = TriCell>>(cells: I) -> Self {
        Region {
            cells: cells.into_iter().collect(),
            center: None,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, t: &TriCell) -> bool {
        self.cells.contains(t)
    }

    pub fn up_count(&self) -> usize {
        self.cells.iter().filter(|c| c.orient == Orient::Up).count()
    }

    pub fn down_count(&self) -> usize {
        self.cells.iter().filter(|c| c.orient == Orient::Down).count()
    }

    pub fn is_balanced(&self) -> bool {
        self.up_count() == self.down_count()
    }

    /// True iff the declared center maps the cell set onto itself.
    pub fn is_centrally_symmetric(&self) -> Result<bool, GeometryError> {
        let c = self.center.ok_or(GeometryError::NoCenter)?;
        Ok(self
            .cells
            .iter()
            .all(|t| self.cells.contains(&reflect_cell(*t, c))))
    }

    /// The same cell set with `cells` removed; keeps the center declaration.
    pub fn without_cells(&self, removed: &[TriCell]) -> Region {
        let mut cells = self.cells.clone();
        for t in removed {
            cells.remove(t);
        }
        Region { cells, center: self.center }
    }

    /// Rotate the whole region by +120 degrees about the origin.
    pub fn rot120(&self) -> Region {
        Region {
            cells: self.cells.iter().map(|t| t.rot120()).collect(),
            center: self.center.map(|c| SymCenter::new(-c.cp2 - c.cq2, c.cp2)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("no center declared")]
    NoCenter,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn up_down_vertex_sets() {
        let up = TriCell::up(0, 0);
        let vs: BTreeSet<_> = up.vertices().into_iter().collect();
        let expect: BTreeSet<_> = [(0, 0), (1, 0), (0, 1)]
            .iter()
            .map(|&(p, q)| LatticeVertex::new(p, q))
            .collect();
        assert_eq!(vs, expect);

        let down = TriCell::down(0, 0);
        let vs: BTreeSet<_> = down.vertices().into_iter().collect();
        let expect: BTreeSet<_> = [(1, 0), (0, 1), (1, 1)]
            .iter()
            .map(|&(p, q)| LatticeVertex::new(p, q))
            .collect();
        assert_eq!(vs, expect);
    }

    #[test]
    fn neighbors_by_shared_edge_oracle() {
        // Independent oracle: two cells are edge-adjacent iff they share
        // exactly two vertices.
        let shared = |a: &TriCell, b: &TriCell| {
            let va: BTreeSet<_> = a.vertices().into_iter().collect();
            let vb: BTreeSet<_> = b.vertices().into_iter().collect();
            va.intersection(&vb).count()
        };
        for t in [TriCell::up(0, 0), TriCell::down(0, 0), TriCell::up(3, -2)] {
            let ns = t.neighbors();
            assert_eq!(ns.len(), 3);
            for n in &ns {
                assert_eq!(n.orient, t.orient.flipped());
                assert_eq!(shared(&t, n), 2);
            }
            // And no other cell in a local window shares two vertices.
            for p in t.p - 2..=t.p + 2 {
                for q in t.q - 2..=t.q + 2 {
                    for o in [Orient::Up, Orient::Down] {
                        let c = TriCell { p, q, orient: o };
                        if c != t && shared(&t, &c) == 2 {
                            assert!(ns.contains(&c), "missing neighbor {c}");
                        }
                    }
                }
            }
        }
        assert_eq!(
            TriCell::up(0, 0).neighbors().to_vec(),
            vec![TriCell::down(0, 0), TriCell::down(-1, 0), TriCell::down(0, -1)]
        );
        assert_eq!(
            TriCell::down(0, 0).neighbors().to_vec(),
            vec![TriCell::up(0, 0), TriCell::up(1, 0), TriCell::up(0, 1)]
        );
    }

    #[test]
    fn reflect_matches_vertex_reflection() {
        // Reflect all three vertices through the center and verify the image
        // cell has exactly that vertex set.
        let cases = [
            (TriCell::up(0, 0), SymCenter::at_vertex(1, 1)),
            (TriCell::up(0, 0), SymCenter::new(1, 1)),
            (TriCell::down(4, -3), SymCenter::new(3, 2)),
        ];
        for (t, c) in cases {
            let image = reflect_cell(t, c);
            let mut want = BTreeSet::new();
            for v in t.vertices() {
                // doubled arithmetic: image vertex = (cp2 - p, cq2 - q)
                want.insert(LatticeVertex::new(c.cp2 - v.p, c.cq2 - v.q));
            }
            let got: BTreeSet<_> = image.vertices().into_iter().collect();
            assert_eq!(got, want, "reflect {t} through {c:?}");
        }
        // Pinned examples, confirmed via the vertex-set definition:
        // Up(0,0) through the lattice point (1,1) is Down(1,1).
        assert_eq!(
            reflect_cell(TriCell::up(0, 0), SymCenter::at_vertex(1, 1)),
            TriCell::down(1, 1)
        );
        // Up(0,0) through the midpoint of the edge (1,0)-(0,1) is Down(0,0),
        // the unique down cell sharing that edge.
        assert_eq!(
            reflect_cell(TriCell::up(0, 0), SymCenter::new(1, 1)),
            TriCell::down(0, 0)
        );
    }

    #[test]
    fn reflection_is_involution_and_flips() {
        for p in -5..5 {
            for q in -5..5 {
                for o in [Orient::Up, Orient::Down] {
                    let t = TriCell { p, q, orient: o };
                    for c in [SymCenter::new(0, 0), SymCenter::new(3, -1), SymCenter::new(-2, 5)] {
                        let r = reflect_cell(t, c);
                        assert_eq!(r.orient, t.orient.flipped());
                        assert_eq!(reflect_cell(r, c), t);
                    }
                }
            }
        }
    }

    #[test]
    fn lozenge_is_symmetric_about_shared_edge_midpoint() {
        // The lozenge {Up(0,0), Down(0,0)} shares the edge (1,0)-(0,1);
        // its midpoint in doubled coordinates is (1,1).
        let r = Region {
            cells: [TriCell::up(0, 0), TriCell::down(0, 0)].into_iter().collect(),
            center: Some(SymCenter::new(1, 1)),
        };
        assert!(r.is_centrally_symmetric().unwrap());

        let single = Region {
            cells: [TriCell::up(0, 0)].into_iter().collect(),
            center: Some(SymCenter::new(1, 1)),
        };
        assert!(!single.is_centrally_symmetric().unwrap());

        let no_center = Region::from_cells([TriCell::up(0, 0)]);
        assert_eq!(no_center.is_centrally_symmetric(), Err(GeometryError::NoCenter));
    }

    #[test]
    fn rot120_preserves_adjacency_and_orientation() {
        let t = TriCell::up(2, -1);
        for n in t.neighbors() {
            assert!(t.rot120().is_adjacent(&n.rot120()));
        }
        assert_eq!(TriCell::up(0, 0).rot120().orient, Orient::Up);
    }
}
