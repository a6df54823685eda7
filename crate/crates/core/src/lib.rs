//! Transitive perfect colorings of the non-regular Archimedean tilings.
//!
//! The crate is organised bottom-up:
//!
//! * [`fpgroup`]: words, coset enumeration and low-index subgroup search for
//!   finitely presented groups.
//! * [`exactgeo`]: exact arithmetic in `Q(√2)` / `Q(√3)` and planar isometries.
//! * [`catalog`]: the eight built-in tilings with their wallpaper groups,
//!   seed tiles and stabilizers.
//! * [`chroma`]: admissible subgroups, coloring schemes, fingerprints and the
//!   perfect/transitive verifiers.
//! * [`oracle`]: an independent brute-force counter on finite quotients.
//! * [`document`]: the JSON exchange format and the SVG renderer.

pub mod catalog;
pub mod chroma;
pub mod document;
pub mod exactgeo;
pub mod fpgroup;
pub mod oracle;
