//! Structural change detection for time-varying graphs through persistent homology.
//!
//! Each graph instance is embedded as a distance matrix (shortest-path or commute-time),
//! summarized by the 0- and 1-dimensional persistence diagrams of its Rips filtration,
//! and compared to the other instances with bottleneck or Wasserstein distances. The
//! resulting dissimilarity matrix is laid out on a timeline with classical MDS.
//!
//! ```
//! use tempograph::distance::{wasserstein, EssentialPolicy, preprocess};
//! use tempograph::graph::exemplar;
//! use tempograph::metric::{shortest_path_matrix, WeightScheme};
//! use tempograph::persistence::{diagrams, Dimensions, RMax};
//!
//! let embed = |name| {
//!     let d = shortest_path_matrix(&exemplar(name).unwrap(), WeightScheme::Length);
//!     diagrams(&d, RMax::Diameter, Dimensions::Both).unwrap()
//! };
//! let (_, cycle) = embed("C5");
//! let (_, path) = embed("P5");
//! let x = preprocess(&cycle, EssentialPolicy::Drop).unwrap();
//! let y = preprocess(&path, EssentialPolicy::Drop).unwrap();
//! assert_eq!(wasserstein(&x, &y, 2.0, true), 0.5);
//! ```

pub mod analysis;
pub mod distance;
pub mod error;
pub mod export;
pub mod graph;
pub mod metric;
pub mod persistence;
pub mod pipeline;
mod union_find;

pub use error::{Error, Result};
