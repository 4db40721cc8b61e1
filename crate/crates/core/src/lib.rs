pub mod exactalg;
pub mod partitions;
pub mod qseries;
pub mod vertex;
pub mod toric;
pub mod hilb;
pub mod correspondence;
pub mod verify;
