//! Certified combinatorial search over subsets of integer windows and finite
//! groups: sumset/productset witnesses, order-property ladders, density
//! regular points and translate covers.
//!
//! Every search returns either a witness or a refutation object, and every
//! such object has a matching `verify_*` function that recomputes it from
//! the underlying bitset.

pub mod bitset;
pub mod density;
pub mod dsl;
pub mod error;
pub mod genericity;
pub mod ladder;
pub mod model;
mod par;
mod product;
pub mod rational;
pub mod set;
pub mod setfile;
pub mod witness;

pub use density::{
    banach_density, density_curve, find_regular_point, lower_banach_density, verify_density_certificate,
    verify_good_point, DensityReport, GoodPoint, PartitionCertificate, RegularPoint,
};
pub use dsl::{parse_set_spec, ParseError};
pub use error::{Error, Result};
pub use genericity::{min_translate_cover, verify_cover, CoverCertificate, CoverMode, CoverOutcome, CoverRequest};
pub use ladder::{max_ladder, verify_ladder, LadderCertificate, LadderResult};
pub use model::{build_model, GroupModel, ModelDesc};
pub use par::Budget;
pub use rational::Rational;
pub use set::{generate_set, quotient, DenseSet, SetSpec, Side};
pub use witness::{
    definable_witness_search, find_square_witness, find_triangular_witness, greedy_back_and_forth, growth_curve,
    ramsey_upgrade, verify_definable, verify_square, verify_triangular, DefinableOutcome, DefinableWitness, Family,
    GreedyOutcome, GrowthRow, Progression, Scorer, SearchMode, SquareOutcome, SquareWitness, TriangularOutcome,
    TriangularWitness, UpgradeResult, Upgraded,
};
