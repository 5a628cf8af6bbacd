//! Exact integer computations for log Calabi-Yau surfaces given by toric
//! models (smooth complete fan in Z^2 plus interior blow-up counts), and for
//! their mirror Lefschetz fibrations on the K-theoretic shadow of curve
//! classes.
//!
//! Everything is plain integer arithmetic: no floats, no approximation. The
//! modules layer bottom-up:
//!
//! - [`fan`] — smooth complete fans, corner blow-ups/downs, minimal models
//! - [`model`] — fans decorated with interior blow-up counts, elementary
//!   transformations, the blow-down classifier
//! - [`picard`] — Picard lattice, Euler pairing, lattice-point cohomology
//!   oracle, exceptional collections and mutations
//! - [`fibration`] — curve classes on the punctured elliptic fibre, twists,
//!   Hurwitz moves, monodromy, (de)stabilisation, the destabilisation
//!   pipeline
//! - [`bridge`] — restriction from the surface to the boundary, the
//!   verification certificates
//! - [`doc`] — JSON document types with a canonical serialization mode
//! - [`emit`] — almost-toric base and Weinstein handlebody emitters, SVG
//! - [`corpus`] — seeded random model generation for property suites

pub mod bridge;
pub mod corpus;
pub mod doc;
pub mod emit;
pub mod fan;
pub mod fibration;
pub mod model;
pub mod picard;

pub use bridge::{BridgeError, CertStatus, MirrorPair};
pub use doc::{canonical_json, parse_surface, DocError, SurfaceSpec};
pub use fan::{Fan, FanError, MinimalModel, Vec2};
pub use fibration::{CurveClass, Fibration, FibrationError, HurwitzDirection};
pub use model::{BlowdownReport, ModelError, ToricModel};
pub use picard::{Collection, DivClass, KClassY, PicardError};
