//! Verification harness: oracle campaigns, structural checks, scripted
//! playouts and golden fixtures.

pub mod campaign;
pub mod corpus;
pub mod fault;
pub mod fixtures;
pub mod oracle;
pub mod playout;
pub mod report;
pub mod strategy;
pub mod structure;

pub use campaign::{run_campaigns, Campaign, CampaignSpec};
pub use fixtures::golden_fixtures;
pub use oracle::{verify_oracle, CorpusSpec};
pub use playout::{scripted_playout, Ledger, Playout, PlayoutError};
pub use report::{Mismatch, VerifyReport};
pub use strategy::{Strategy, StrategyError, StrategyKind};
pub use structure::verify_structure;
