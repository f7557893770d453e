//! Constructors for every region family: hexagons, semihexagons, trapezoids
//! with removed base triangles, and hexagons with one or more ferns removed
//! from their core.
//!
//! All regions are anchored with the western corner of the outer hexagon at
//! the origin (trapezoids anchor their bottom-left base vertex there).

use crate::geometry::{reflect_cell, LatticeVertex, Region, SymCenter, TriCell};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegionError {
    #[error("negative side length")]
    NegativeSide,
    #[error("negative lobe or gap size")]
    NegativeEntry,
    #[error("x, y, z must have the same parity")]
    ParityMismatch,
    #[error("x must be at least -1")]
    XTooSmall,
    #[error("fern exceeds hexagon")]
    FernExceedsHexagon,
    #[error("fern cells overlap")]
    FernOverlap,
    #[error("gap list must be one shorter than the fern list")]
    BadGapCount,
    #[error("hexagon side lengths do not close up")]
    SidesDoNotClose,
    #[error("duplicate or out-of-range position")]
    PositionsInvalid,
}

/// Lobe sizes of a fern, left to right. The leftmost lobe points up; a
/// leading zero encodes a fern whose first visible lobe points down.
/// Zero-size lobes contribute no cells but still flip the alternation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FernSpec {
    pub lobes: Vec<i64>,
}

impl FernSpec {
    pub fn new<I: IntoIterator<Item = i64>>(lobes: I) -> Self {
        FernSpec { lobes: lobes.into_iter().collect() }
    }

    /// Sum of up-pointing lobe sizes (1st, 3rd, ... from the left).
    pub fn up_sum(&self) -> i64 {
        self.lobes.iter().step_by(2).sum()
    }

    /// Sum of down-pointing lobe sizes (2nd, 4th, ...).
    pub fn down_sum(&self) -> i64 {
        self.lobes.iter().skip(1).step_by(2).sum()
    }

    pub fn width(&self) -> i64 {
        self.lobes.iter().sum()
    }

    /// The palindromic fern `(a_1..a_k, a_k..a_1)` from a half list.
    pub fn symmetric_double(half: &[i64]) -> Self {
        let mut lobes = half.to_vec();
        lobes.extend(half.iter().rev());
        FernSpec { lobes }
    }

    fn validate(&self) -> Result<(), RegionError> {
        if self.lobes.iter().any(|&a| a < 0) {
            return Err(RegionError::NegativeEntry);
        }
        Ok(())
    }
}

/// Declarative description of a buildable region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionSpec {
    Hexagon { x: i64, y: i64, z: i64 },
    SemiHexagon { b: Vec<i64> },
    Trapezoid { m: i64, n: i64, positions: Vec<i64> },
    FernCored { x: i64, y: i64, z: i64, fern: FernSpec },
    FernCoredPrime { x: i64, y: i64, z: i64, half: FernSpec },
    MultiFern { x: i64, y: i64, z: i64, gaps: Vec<i64>, ferns: Vec<FernSpec> },
}

impl RegionSpec {
    pub fn build(&self) -> Result<Region, RegionError> {
        match self {
            RegionSpec::Hexagon { x, y, z } => build_hexagon(*x, *y, *z),
            RegionSpec::SemiHexagon { b } => build_semihexagon(b),
            RegionSpec::Trapezoid { m, n, positions } => build_trapezoid(*m, *n, positions),
            RegionSpec::FernCored { x, y, z, fern } => build_fern_cored(*x, *y, *z, fern),
            RegionSpec::FernCoredPrime { x, y, z, half } => {
                build_fern_cored_prime(*x, *y, *z, half)
            }
            RegionSpec::MultiFern { x, y, z, gaps, ferns } => {
                build_multi_fern(*x, *y, *z, gaps, ferns)
            }
        }
    }

    /// Side lengths of the outer hexagon, clockwise from the top, for the
    /// hexagon-backed families.
    pub fn hexagon_sides(&self) -> Option<[i64; 6]> {
        match self {
            RegionSpec::Hexagon { x, y, z } => Some([*x, *y, *z, *x, *y, *z]),
            RegionSpec::FernCored { x, y, z, fern } => {
                let (o, e) = (fern.up_sum(), fern.down_sum());
                Some([x + e, y + o, z + e, x + o, y + e, z + o])
            }
            RegionSpec::FernCoredPrime { x, y, z, half } => {
                let a = half.width();
                Some([x + a + 1, y + a, z + a, x + a + 1, y + a, z + a])
            }
            RegionSpec::MultiFern { x, y, z, gaps, ferns } => {
                let u: i64 = ferns.iter().map(|f| f.up_sum()).sum();
                let d: i64 = ferns.iter().map(|f| f.down_sum()).sum();
                let g: i64 = gaps.iter().sum();
                Some([x + d + g, y + u, z + d, x + u + g, y + d, z + u])
            }
            _ => None,
        }
    }
}

/// Hexagon with the given side lengths clockwise from the top, western
/// corner at the origin. Sides must be non-negative and close up.
pub fn hexagon_from_sides(s: [i64; 6]) -> Result<Region, RegionError> {
    if s.iter().any(|&v| v < 0) {
        return Err(RegionError::NegativeSide);
    }
    if s[0] + s[1] != s[3] + s[4] || s[5] + s[4] != s[1] + s[2] {
        return Err(RegionError::SidesDoNotClose);
    }
    let in_hex = |p: i64, q: i64| {
        p >= 0 && p <= s[0] + s[1] && q <= s[5] && q >= s[5] - s[1] - s[2] && p + q >= 0 && p + q <= s[0] + s[5]
    };
    let mut cells = BTreeSet::new();
    for q in (s[5] - s[1] - s[2])..s[5] {
        for p in (-q - 1).max(-1)..=(s[0] + s[1]) {
            let up = TriCell::up(p, q);
            if up.vertices().iter().all(|v| in_hex(v.p, v.q)) {
                cells.insert(up);
            }
            let down = TriCell::down(p, q);
            if down.vertices().iter().all(|v| in_hex(v.p, v.q)) {
                cells.insert(down);
            }
        }
    }
    // Opposite sides equal means the hexagon is centrally symmetric about
    // the midpoint of the main diagonal.
    let center = if s[0] == s[3] && s[1] == s[4] && s[2] == s[5] {
        Some(SymCenter::new(s[0] + s[1], s[5] - s[1]))
    } else {
        None
    };
    Ok(Region::new(cells, center))
}

/// Hexagon with sides `x, y, z, x, y, z` clockwise from the top.
pub fn build_hexagon(x: i64, y: i64, z: i64) -> Result<Region, RegionError> {
    hexagon_from_sides([x, y, z, x, y, z])
}

fn up_triangle(size: i64, left: (i64, i64)) -> BTreeSet<TriCell> {
    let (u, v) = left;
    let mut cells = BTreeSet::new();
    for i in 0..size {
        for j in 0..size - i {
            cells.insert(TriCell::up(u + i, v + j));
            if i + j <= size - 2 {
                cells.insert(TriCell::down(u + i, v + j));
            }
        }
    }
    cells
}

fn down_triangle(size: i64, top_left: (i64, i64)) -> BTreeSet<TriCell> {
    // Reflection of the size-`size` up triangle through the midpoint of its
    // base keeps everything in exact integer arithmetic.
    let c = SymCenter::new(2 * top_left.0 + size, 2 * top_left.1);
    up_triangle(size, top_left)
        .into_iter()
        .map(|t| reflect_cell(t, c))
        .collect()
}

/// Cells of the fern `F(a_1, ..., a_k)` with its base point (leftmost point)
/// at `base`. Lobes line up along the horizontal lattice line through
/// `base`, touching at vertices, alternating up/down starting up.
pub fn build_fern(f: &FernSpec, base: LatticeVertex) -> Result<BTreeSet<TriCell>, RegionError> {
    f.validate()?;
    let mut cells = BTreeSet::new();
    let mut offset = 0i64;
    for (i, &a) in f.lobes.iter().enumerate() {
        let left = (base.p + offset, base.q);
        if i % 2 == 0 {
            cells.extend(up_triangle(a, left));
        } else {
            cells.extend(down_triangle(a, left));
        }
        offset += a;
    }
    Ok(cells)
}

/// Base point of the fern system: the center of the auxiliary hexagon of
/// sides `x, y, z` nested in the western corner, shifted half a unit when
/// one of the parameters has the odd parity out (left for `x`, polar -2pi/3
/// for `z`, polar +2pi/3 for `y`).
fn fern_base_point(x: i64, y: i64, z: i64) -> LatticeVertex {
    let px2 = x + y; // doubled coordinates of the auxiliary center
    let qz2 = z - y;
    let (xe, ye, ze) = (x.rem_euclid(2), y.rem_euclid(2), z.rem_euclid(2));
    let (p, q) = if xe == ye && ye == ze {
        (px2 / 2, qz2 / 2)
    } else if ye == ze {
        // x is the odd one out: shift half a unit left
        ((px2 - 1).div_euclid(2), qz2.div_euclid(2))
    } else if xe == ye {
        // z is the odd one out: shift half a unit in polar direction -2pi/3
        (px2.div_euclid(2), (qz2 - 1).div_euclid(2))
    } else {
        // y is the odd one out: shift half a unit in polar direction +2pi/3
        ((px2 - 1).div_euclid(2), (qz2 + 1).div_euclid(2))
    };
    LatticeVertex::new(p, q)
}

/// Hexagon with a system of ferns removed. The first fern is based at the
/// center of the auxiliary hexagon (with the parity half-shifts); each
/// subsequent fern is based `gaps[i]` units right of the previous fern's
/// rightmost point.
pub fn build_multi_fern(
    x: i64,
    y: i64,
    z: i64,
    gaps: &[i64],
    ferns: &[FernSpec],
) -> Result<Region, RegionError> {
    if x < 0 || y < 0 || z < 0 {
        return Err(RegionError::NegativeSide);
    }
    if gaps.len() + 1 != ferns.len() {
        return Err(RegionError::BadGapCount);
    }
    if gaps.iter().any(|&g| g < 0) {
        return Err(RegionError::NegativeEntry);
    }
    for f in ferns {
        f.validate()?;
    }
    let u: i64 = ferns.iter().map(|f| f.up_sum()).sum();
    let d: i64 = ferns.iter().map(|f| f.down_sum()).sum();
    let g: i64 = gaps.iter().sum();
    let hex = hexagon_from_sides([x + d + g, y + u, z + d, x + u + g, y + d, z + u])?;

    let mut removed: BTreeSet<TriCell> = BTreeSet::new();
    let mut base = fern_base_point(x, y, z);
    for (i, f) in ferns.iter().enumerate() {
        let cells = build_fern(f, base)?;
        if !cells.iter().all(|t| hex.contains(t)) {
            return Err(RegionError::FernExceedsHexagon);
        }
        if cells.iter().any(|t| removed.contains(t)) {
            return Err(RegionError::FernOverlap);
        }
        removed.extend(cells);
        base = LatticeVertex::new(base.p + f.width() + gaps.get(i).copied().unwrap_or(0), base.q);
    }

    let cells: BTreeSet<TriCell> = hex.cells.difference(&removed).copied().collect();
    let mut region = Region::new(cells, hex.center);
    // Record the center only when the removal kept the region symmetric.
    if !matches!(region.is_centrally_symmetric(), Ok(true)) {
        region.center = None;
    }
    Ok(region)
}

/// Fern-cored hexagon: a single fern removed with its base point at the
/// center of the auxiliary hexagon.
pub fn build_fern_cored(x: i64, y: i64, z: i64, fern: &FernSpec) -> Result<Region, RegionError> {
    build_multi_fern(x, y, z, &[], std::slice::from_ref(fern))
}

/// The primed variant: the outer hexagon has sides `x+a+1, y+a, z+a`
/// repeated, with `a` the half-fern width; the half fern is removed based at
/// the center of the auxiliary hexagon together with its image across the
/// center of the outer hexagon. The two removed ferns are separated by a
/// unit lattice segment whose midpoint is the region's center.
pub fn build_fern_cored_prime(
    x: i64,
    y: i64,
    z: i64,
    half: &FernSpec,
) -> Result<Region, RegionError> {
    if x < -1 {
        return Err(RegionError::XTooSmall);
    }
    if y < 0 || z < 0 {
        return Err(RegionError::NegativeSide);
    }
    if x.rem_euclid(2) != y.rem_euclid(2) || y.rem_euclid(2) != z.rem_euclid(2) {
        return Err(RegionError::ParityMismatch);
    }
    half.validate()?;
    let a = half.width();
    let hex = hexagon_from_sides([x + a + 1, y + a, z + a, x + a + 1, y + a, z + a])?;
    let center = hex.center.expect("opposite sides equal");
    debug_assert_eq!(center, SymCenter::new(x + y + 2 * a + 1, z - y));

    // For x = -1 the auxiliary hexagon degenerates to a self-crossing
    // contour, but its center is still ((x+y)/2, (z-y)/2).
    let base = LatticeVertex::new((x + y) / 2, (z - y) / 2);
    let fern1 = build_fern(half, base)?;
    let fern2: BTreeSet<TriCell> = fern1.iter().map(|t| reflect_cell(*t, center)).collect();
    if !fern1.iter().chain(fern2.iter()).all(|t| hex.contains(t)) {
        return Err(RegionError::FernExceedsHexagon);
    }
    if fern1.intersection(&fern2).next().is_some() {
        return Err(RegionError::FernOverlap);
    }

    let cells: BTreeSet<TriCell> = hex
        .cells
        .iter()
        .filter(|t| !fern1.contains(t) && !fern2.contains(t))
        .copied()
        .collect();
    let region = Region::new(cells, Some(center));
    debug_assert!(matches!(region.is_centrally_symmetric(), Ok(true)));
    Ok(region)
}

/// Trapezoid of side lengths `m, n, m+n, n` clockwise from the top, with the
/// up-pointing unit triangles at base positions `positions` (1-indexed from
/// the left) removed. Anchored with the bottom-left base vertex at the
/// origin.
pub fn build_trapezoid(m: i64, n: i64, positions: &[i64]) -> Result<Region, RegionError> {
    if m < 0 || n < 0 {
        return Err(RegionError::NegativeSide);
    }
    if positions.len() as i64 != n
        || positions.windows(2).any(|w| w[0] >= w[1])
        || positions.iter().any(|&x| x < 1 || x > m + n)
    {
        return Err(RegionError::PositionsInvalid);
    }
    let removed: BTreeSet<TriCell> = positions.iter().map(|&x| TriCell::up(x - 1, 0)).collect();
    let mut cells = BTreeSet::new();
    for q in 0..n {
        for p in 0..=(m + n - 1 - q) {
            let up = TriCell::up(p, q);
            if !removed.contains(&up) {
                cells.insert(up);
            }
            if p + q <= m + n - 2 {
                cells.insert(TriCell::down(p, q));
            }
        }
    }
    Ok(Region::new(cells, None))
}

/// Semihexagon `S(b_1, ..., b_l)`: along the base, the leftmost `b_1`
/// up-pointing unit triangles are removed, the next `b_2` are intact, the
/// following `b_3` removed, and so on. Up/down balance forces the remaining
/// side lengths, which makes this a trapezoid with removed base positions.
pub fn build_semihexagon(b: &[i64]) -> Result<Region, RegionError> {
    if b.iter().any(|&v| v < 0) {
        return Err(RegionError::NegativeEntry);
    }
    let (m, n, positions) = semihexagon_trapezoid_params(b);
    build_trapezoid(m, n, &positions)
}

/// The `(m, n, positions)` of the trapezoid realizing `S(b)`.
pub fn semihexagon_trapezoid_params(b: &[i64]) -> (i64, i64, Vec<i64>) {
    let mut positions = Vec::new();
    let mut offset = 0i64;
    let mut m = 0i64;
    for (i, &run) in b.iter().enumerate() {
        if i % 2 == 0 {
            positions.extend(offset + 1..=offset + run);
        } else {
            m += run;
        }
        offset += run;
    }
    (m, positions.len() as i64, positions)
}

/// A forced lozenge is a cell with a unique in-region partner. Repeatedly
/// removes forced lozenges and returns the peeled region together with the
/// removed pairs.
pub fn peel_forced(region: &Region) -> (Region, Vec<(TriCell, TriCell)>) {
    let mut cells = region.cells.clone();
    let mut forced = Vec::new();
    loop {
        let mut found = None;
        for t in &cells {
            let partners: Vec<TriCell> = t
                .neighbors()
                .into_iter()
                .filter(|n| cells.contains(n))
                .collect();
            if partners.len() == 1 {
                found = Some((*t, partners[0]));
                break;
            }
        }
        match found {
            Some((a, b)) => {
                cells.remove(&a);
                cells.remove(&b);
                forced.push((a.min(b), a.max(b)));
            }
            None => break,
        }
    }
    (Region::new(cells, region.center), forced)
}
