//! Quaternion holomorphic transformations `q ↦ q·u + v`, the Lie algebras of
//! first-order differential operators that generate them, their 3×3 matrix
//! groups, and the complex Möbius/cross-ratio utilities they are compared to.

pub mod scalar;
pub mod quaternion;
pub mod holomorphy;
pub mod linalg;
pub mod symop;
pub mod matgroup;
pub mod qht;
pub mod crossratio;
pub mod cli;
