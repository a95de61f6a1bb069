pub mod atlas;
pub mod braid;
pub mod error;
pub mod io;
pub mod map;
pub mod moves;
pub mod nerve;
pub mod notation;
pub mod signature;
pub mod tracer;

pub use error::{BraidError, IoError, MapError, MoveError, SignatureError, TraceError};
pub use map::{interleaves, is_noncrossing, BoundaryLabel, Chord, EmbeddedForest, Face, FaceStep};
pub use notation::{
    classify, m_signature, parse_notation, Classification, SignatureClass, TreeClass,
};
pub use signature::{Color, NodeKind, Signature, Strand};
