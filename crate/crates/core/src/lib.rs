pub mod bikei;
pub mod coloring;
pub mod diagram;
pub mod error;
pub mod gauss;
pub mod moves;
mod splice;
pub mod topology;

pub use bikei::{
    alexander_bikei, core_bikei, enumerate_bikei, fixed_set, verify_bikei, Axiom, AxiomReport,
    BikeiTable, CoreSide, FixedSet, Violation,
};
pub use coloring::{color_count, colorings, is_coloring, two_colorable, Coloring};
pub use diagram::{counts, validate, DiagramCounts, Endpoint, MarkedVertexDiagram, Node, NodeKind};
pub use gauss::{from_gauss, gauss_orientable, to_gauss, GaussMVD, GaussToken, Hand};
pub use error::{Error, Location, Result};
pub use topology::{
    crossing_change, euler_characteristic, genus_of_projection, naive_components, orient,
    smooth_saddles, Level, NaiveComponent, NonOrientable, Orientation, Passage, SurfaceClass,
};
pub use moves::{all_sites, applicable_sites, apply_move, detour, detour_sites, merge_components, variants, ArcRef, DetourSite, Direction, MoveId, MoveSite, Pattern, Variant};
