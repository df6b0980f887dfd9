//! Harness pieces behind the `polystab` binary: deterministic samplers,
//! the fixture suite, and the property-test campaign.

pub mod campaign;
pub mod fixtures;
pub mod sampler;
