//! Operators on hairy graph complexes: the bracket, defect and its filtration, the
//! even-codimension splitting, and verifiers comparing hairy and decorated computations.

pub mod bracket;
pub mod defect;
pub mod filtration;
pub mod split;
pub mod verify;

pub use bracket::{bracket, bracket_l, bracket_t, graft, graft_labeled, FormalSum, GradedMap};
pub use defect::{core_vertices, defect};
pub use split::{split_even, EvenSplitting, Part};
pub use filtration::{filtration_pages, shift_on_e1, Filtration, SpectralPage};
pub use verify::{hedgehog_prediction, zero_loop_prediction, verify_decorated_model, verify_loop01, verify_r2, verify_splitting, verify_filtration, Check, Report};
