//! Exact spin character theory for the double covers of the symmetric and
//! alternating groups and for the local subgroups `Ñ_p^t S̃_t`, together with
//! an executable check of Broué's perfect isometry axioms between a spin
//! block with abelian defect group and its Brauer correspondent.

pub mod blocks;
pub mod clifford;
pub mod covers;
pub mod cyclo;
pub mod isometry;
pub mod partitions;
pub mod spin_sym;
pub mod wreath;
