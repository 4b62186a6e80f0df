//! Finance applications: options, completion of markets by options and
//! minimum-cost portfolio insurance.

mod completion;
mod insurance;
mod options;

pub use completion::{basic_set, complete_by_options, is_complete, CompletionResult, MarketSpec};
pub use insurance::{min_cost_insurance, InsuranceProblem, InsuranceSolution};
pub use options::{call_option, negative_part, positive_part, put_option};
