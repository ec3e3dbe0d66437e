//! Evaluation subgroups, the G-sequence of a DG algebra map with its
//! exactness defects, and the long exact sequences attached to the map.
//!
//! Everything hangs off a [`Ladder`]: for `φ: A → B` it holds
//!
//! ```text
//! Der(B, B; 1) --φ*--> Der(A, B; φ) --J--> Rel(φ*)
//!      |ε_*                 |ε_*             |(ε_*, ε_*)
//! Der(B, ℚ; ε) --φ̂*--> Der(A, ℚ; ε) --Ĵ--> Rel(φ̂*)
//! ```
//!
//! Models of spaces are contravariant: if `φ` models `f: X → Y` then `A`
//! models `Y` and `B` models `X`.

mod ladder;
mod les;

pub use ladder::{
    image_in_homology, GSequence, Ladder, Names, OmegaHomology, SubgroupInHomology, TermKind,
    TermVerdict,
};
pub use les::{LesReport, LesTerm};
