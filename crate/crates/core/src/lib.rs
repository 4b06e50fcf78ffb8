//! Exact Cremona equivalences between cones.
//!
//! * [`exactalg`]: sparse polynomials over `Q` and `F_p`, gcd, resultants.
//! * [`mapalg`]: rational self-maps of projective space, verified birational
//!   pairs, generators and pushforward of hypersurfaces.
//! * [`conelab`]: cones, vertex detection and the cone lift of a Cremona map.
//! * [`curvegenus`]: geometric genus of plane curves by blowing up, and the
//!   genus test for cones in `P^3`.
//! * [`frontend`]: job-file grammar, parser, canonical rendering and the CLI.

pub mod conelab;
pub mod curvegenus;
pub mod exactalg;
pub mod frontend;
pub mod mapalg;
