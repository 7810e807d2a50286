pub mod graph;
pub mod lie;
pub mod linalg;
pub mod tableaux;
pub mod tensor;
pub mod trace;
pub mod weights;
