//! Soft-transfer delivery: uncoded subfile placement over all `K` UEs, with
//! the ENs acting as one distributed `H`-antenna transmitter that zero-forces
//! each subfile at the UEs which neither want nor cache it.

mod ndt;
mod placement;
mod schedule;
mod simulate;

pub use ndt::{expected_steps, soft_edge_ideal, soft_ndt, structural_ndt};
pub use placement::{file_size_quantum, soft_missing, soft_place, SoftLabel, SoftPlacement, SoftSegment};
pub use schedule::{soft_schedule, DeliveryItem, DeliveryStep, ScheduleCase};
pub use simulate::{simulate_with_redraw, soft_simulate, SimReport};

pub(crate) use placement::{build_placement, integral_param, part_bits};
