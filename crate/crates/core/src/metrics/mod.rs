//! Classic code measures: Halstead, McCabe, block entropy, GRASP content
//! complexity and Yule's coefficient.

mod entropy;
mod grasp;
mod halstead;
mod mccabe;
mod yule;

pub use entropy::block_entropy;
pub use grasp::{grasp_content, grasp_profile, GraspWeightTable};
pub use halstead::{counts_of_letters, halstead, halstead_counts, HalsteadCounts, HalsteadMeasures};
pub use mccabe::{mccabe, McCabe, UNSTABLE_THRESHOLD};
pub use yule::{yule, ContingencyTable, YuleVariant};
