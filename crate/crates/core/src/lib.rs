//! RO(C_n)-graded Bredon cohomology of a point for cyclic groups of odd
//! squarefree order, with constant and Burnside coefficients, together with a
//! cellular chain-complex oracle that recomputes sphere gradings from scratch.

pub mod abelian;
pub mod acoeff;
pub mod cellular;
pub mod freeness;
pub mod mackey;
pub mod repring;
pub mod ringz;
pub mod zcoeff;
