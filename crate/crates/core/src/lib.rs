//! Exact enumeration workbench for lozenge tilings of triangular-lattice
//! regions: hexagons, semihexagons, trapezoids with removed base triangles,
//! and hexagons with fern cores removed. Counts plain and centrally
//! symmetric tilings exactly, evaluates the matching closed-form products,
//! and machine-checks the graphical-condensation identities, recurrences,
//! and base-case reductions behind them.

pub mod condensation;
pub mod counting;
pub mod formulas;
pub mod geometry;
pub mod region;
pub mod report;
pub mod verify;

pub use counting::{
    count_matchings_dual, count_symmetric_tilings, count_tilings, counter_by_name, counters,
    enumerate_tilings, BigCount, Lozenge, Tiling, TilingCounter,
};
pub use geometry::{reflect_cell, LatticeVertex, Orient, Region, SymCenter, TriCell};
pub use region::{
    build_fern, build_fern_cored, build_fern_cored_prime, build_hexagon, build_multi_fern,
    build_semihexagon, build_trapezoid, FernSpec, RegionSpec,
};

/// Crate-level error, aggregating the per-module failures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
    #[error(transparent)]
    Region(#[from] region::RegionError),
    #[error(transparent)]
    Count(#[from] counting::CountError),
    #[error(transparent)]
    Formula(#[from] formulas::FormulaError),
    #[error("{0}")]
    Verify(String),
}
