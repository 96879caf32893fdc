//! Cycle diagrams of permutations viewed as link diagrams.
//!
//! A permutation plotted on the grid, with each dot joined to the diagonal
//! by one vertical and one horizontal segment, is a link diagram in which
//! every crossing is negative and vertical strands pass over. This crate
//! decides whether such a diagram is an unknot or an unlink, realizes the
//! bijection between unknotted cycles and rooted signed binary trees, and
//! reproduces the associated enumeration exactly: Schröder counts for
//! unknotted cycles, component-stratified counts of unlinked permutations,
//! and their generating functions.

pub mod count;
pub mod decide;
pub mod diagram;
pub mod perm;
pub mod series;
pub mod tree;
pub mod verify;

pub use count::{Caps, CountError, CountRow, CountTable, DgReport};
pub use decide::{CycleVerdict, DecideError, LinkVerdict, LinkedWitness};
pub use diagram::{CycleDiagram, Crossing, DiagramError, DiagramStats, SeifertDecomposition};
pub use perm::{CycleDecomposition, PermError, Permutation};
pub use series::{BivariateSeries, SeriesError, UPoly};
pub use tree::{Sign, SignedTree, TreeError};
pub use verify::{CheckOutcome, SuiteReport};
