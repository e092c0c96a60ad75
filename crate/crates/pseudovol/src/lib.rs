//! Valuations invariant under indefinite orthogonal groups: orbit geometry of
//! Grassmannians, Klain sections, regularized Crofton pairings on R^{2,2},
//! Lorentz-invariant valuations on polytopes and the dimension tables.

pub mod constants;
pub mod crofton;
pub mod deriv;
pub mod error;
pub mod gamma;
pub mod grassmann;
pub mod hadwiger;
pub mod hull;
pub mod klain;
pub mod lorentz;
pub mod quad;
pub mod quadform;
pub mod regularize;
pub mod tolerances;

pub use crofton::{CroftonKind, CroftonMeasureSpec, Haar, KlainSolution, TorusAverage};
pub use error::{PvError, Result};
pub use grassmann::{SpherePair, Subspace};
pub use hadwiger::{DimQuery, Group, Parity, SpaceKind};
pub use klain::KlainVector;
pub use lorentz::{ConvexBody, FacetData};
pub use quadform::{OrbitLabel, QuadSpace};
pub use regularize::{MeroScalar, Side, SmoothFn};
