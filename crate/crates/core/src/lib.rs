//! Mather's β-function for planar convex billiards.
//!
//! Domains are given by their support function as a finite Fourier series
//! ([`geometry::SupportDomain`]). The four billiard models (Birkhoff,
//! symplectic, outer and outer-length) are exposed as generating functions of
//! twist maps ([`billiards`]); [`twist`] minimizes periodic actions to get β
//! at rational rotation numbers and brackets it at irrational ones.
//! [`rigidity`] checks the isoperimetric-type inequalities between a domain's
//! β and the disk's, and their equality cases.

pub mod billiards;
pub mod error;
pub mod geometry;
pub mod jet;
pub mod rigidity;
pub mod roots;
pub mod twist;

pub use error::{Error, Result};
