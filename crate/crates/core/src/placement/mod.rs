//! Minimal sensor and actuator placement.
//!
//! Every "choose one" step of the underlying algorithms is resolved by the
//! smallest index, so outputs are reproducible.

mod actuators;
mod sensors;

pub use actuators::{grank_product, min_actuators_diag, ActuatorPlacement, SccConnection};
pub use sensors::{min_sensors_diag, min_sensors_iterative, min_sensors_matching, SensorMethod, SensorPlacement};
