pub mod figure;
pub mod phases;
pub mod sweep;
pub mod verify;
