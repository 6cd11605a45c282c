//! Top-down segmentation of hyperspectral images.
//!
//! A coarse partition into λ-flat zones is refined inside each zone by one
//! of two seeded region-growing passes:
//!
//! * [`eta_bounded_regions`]: every pixel of a region lies within spectral
//!   distance η of the region's seed;
//! * [`mu_geodesic_balls`]: every pixel of a region lies within geodesic
//!   (path-summed) spectral distance μ of the seed.
//!
//! Seeds are taken per zone in order of cumulative distance, starting from
//! the vectorial median (or the anti-median).
//!
//! ```
//! use hyperseg::{
//!     eta_bounded_regions, lambda_flat_zones, tooth_saw_cube, EtaParams, LambdaParams, Metric,
//!     MetricKind, ToothSawSpec,
//! };
//!
//! let cube = tooth_saw_cube(&ToothSawSpec::default()).unwrap();
//! let metric = Metric::build(&cube, MetricKind::Euclidean).unwrap();
//! let zones = lambda_flat_zones(&cube, &metric, &LambdaParams::new(10.0)).unwrap();
//! assert_eq!(zones.count(), 1);
//! let regions = eta_bounded_regions(&cube, &metric, &zones, &EtaParams::new(30.0)).unwrap();
//! assert_eq!(regions.count(), 3);
//! ```

pub mod cube;
pub mod edges;
pub mod error;
pub mod eta;
pub mod flatzones;
pub mod grid;
pub mod io;
pub mod labels;
pub mod metric;
pub mod mu;
pub mod refine;
pub mod seeds;
pub mod synth;

pub use cube::SpectralCube;
pub use edges::EdgeWeights;
pub use error::{Error, Marginal, Result};
pub use eta::{eta_bounded_regions, eta_with_seeds, EtaParams};
pub use flatzones::{lambda_flat_zones, LambdaParams};
pub use grid::{neighbors, Connectivity, Direction, Grid, PixelIndex};
pub use labels::{is_refinement, relabel_dense, LabelMap};
pub use metric::{ChiContext, Metric, MetricKind};
pub use mu::{geodesic_ball, mu_geodesic_balls, mu_with_seeds, BallDomain, MuParams};
pub use refine::{prepare_seeds, RefineOptions, Refinement};
pub use seeds::{
    build_seed_list, cumulative_distances, cumulative_distances_capped, seed_lists, SeedEntry,
    SeedList, SeedOrder, DEFAULT_REGION_CAP,
};
pub use synth::{tooth_saw_cube, ToothSawSpec};
