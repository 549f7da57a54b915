pub mod algebra;
pub mod correspondence;
pub mod error;
pub mod octonion;
pub mod orbit;
pub mod peirce;
pub mod rng;
pub mod spectral;
pub mod verify;
