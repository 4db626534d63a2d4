//! File formats: creature files, profile tables, reports, charts, config.

pub mod config;
pub mod creature;
pub mod report;
pub mod svg;
pub mod table;

pub use config::{parse_ini, read_domain, read_expected, write_spec_files, ExperimentConfig};
pub use creature::{parse_creature, read_creature, write_creature, CreatureFile};
pub use report::{config_hash, write_fingerprint_json, write_json, FingerprintReport};
pub use svg::{fingerprint_svg, pca_svg, write_text};
pub use table::{profile_csv_string, read_profile_csv, write_profile_csv, ProfileRow};
