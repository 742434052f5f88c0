//! Computational toolkit for the short hierarchically hyperbolic structure on
//! right-angled Artin groups whose defining graph has no triangles and no
//! squares.

pub mod atlas;
pub mod blowup;
pub mod error;
pub mod hhg;
pub mod raag;
pub mod qm;
pub mod quasiline;
pub mod support;

pub use error::{Error, GraphError, Result};
pub use raag::{DefiningGraph, GraphFile, GraphId, GroupWord, Letter, ParabolicSubset, Raag};
pub use support::{ConedDistance, ConedOffBall, ExtBall, ExtBallExport, ExtVertex};
pub use qm::{
    check_link_vanishing, defect_lower_bound, homogenize_numeric, parse_quasimorphism, straighten,
    verify_straightening, ExtensionData, LinkVanishingReport, QmDomain, QmKind, Quasimorphism, Rational,
    RepAction, StraighteningInput, StraighteningRow,
};
pub use quasiline::{QuasilineChart, TauBounds};
pub use atlas::ChartAtlas;
pub use blowup::{
    augmented_support, delta_hyperbolicity_estimate, strong_bgi_check, BgiParams, BgiReport, BgiViolation,
    BlowupBall, BlowupExport, BlowupVertex, ComponentDelta, DeltaEstimate, DeltaParams, EdgeSimplex, GroupBall, LevelSet,
    Realisation, Realiser, Simplex, SimplexClass, SquidPoint, WEdge,
};
pub use hhg::{
    divergence_scan, four_point_check, median_divergence, ConsistencyReport, ConsistencyWitness, Coordinate,
    DivergenceParams, DivergenceRow, Domain, FourPointReport, MedianResult, Relation, RhoValue, ShortStructure,
};
