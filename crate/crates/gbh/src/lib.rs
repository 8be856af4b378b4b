//! Executable fragments of the generalized Borel hierarchy.
//!
//! * [`ordinals`]: CNF ordinals with an abstract limit atom.
//! * [`calculus`]: three-valued pointclass engine with rule traces.
//! * [`spacelab`]: finite stand-ins for the Cantor/Baire spaces.
//! * [`borelcodes`]: well-founded codes, interpretation, canonical trees.
//! * [`treemaps`]: order properties of maps between finite trees.
//! * [`forcinglab`]: a finitized single-step forcing poset.
//! * [`verify`]: the bundled property suite behind `gbh verify`.
//!
//! Finite spaces are discrete, so nothing here witnesses non-collapse of a
//! hierarchy. The finite modules check that constructions do what they claim.

pub mod borelcodes;
pub mod calculus;
pub mod cli;
pub mod forcinglab;
pub mod ordinals;
pub mod spacelab;
pub mod treemaps;
pub mod verify;
