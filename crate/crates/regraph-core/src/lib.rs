//! Exact and numerical trace-formula machinery for finite regular graphs.
//!
//! The crate is organized in four layers:
//!
//! * [`graph`] — validated simple regular graphs, standard generators, and the
//!   directed-edge structure used for non-backtracking counting;
//! * [`series`] — an exact power-series engine over arbitrary-precision
//!   rationals, realizing the generating functions for closed walks on the
//!   regular tree and for homotopy classes of closed paths;
//! * [`census`] — exact counting and enumeration on a concrete graph: closed
//!   paths, geodesic paths, geodesic trajectory classes, cyclic reduction;
//! * [`spectral`] — the floating-point layer: spectrum of the averaging
//!   operator, both sides of the trace formula, spectral density, and the
//!   inversion formula recovering geodesic counts from eigenvalues.
//!
//! The core is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod census;
pub mod graph;
pub mod series;
pub mod spectral;

pub use census::{
    count_closed_paths, count_geodesic_paths, cyclic_reduce, cyclic_reduce_with,
    enumerate_closed_paths, enumerate_geodesics, homotopy_census, primitive_root_length, Budget,
    CensusError, CensusTable, ClosedPath, GeodesicClass, ReducedClass, ReductionStrategy,
};
pub use graph::{DirectedEdge, Graph, GraphError};
pub use series::{
    catalan, first_return_counts, homotopy_class_coefficients, prohibited_direction_counts,
    trajectory_class_coefficients, tree_walk_counts, Series, SeriesError, TreeWalkTable,
};
pub use spectral::{
    bessel_i, chebyshev_t, contractible_term, density_table, geodesic_term, gp_from_spectrum,
    rho_contractible, rho_moment, spectrum, spectrum_with_tolerance, verify_ahumada,
    verify_polygon_identity,
    verify_trace_formula, z_t_spectral, DensityTable, Spectrum, SpectralError, TestSequence,
    TraceReport,
};
