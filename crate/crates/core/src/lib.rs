pub mod comparative;
pub mod cost;
pub mod crossing;
pub mod error;
pub mod mc;
pub mod published;
pub mod solve;
pub mod special;
pub mod valley;
