pub mod exactpoly;
pub mod liealg;
pub mod gradedcore;
pub mod dgmanifold;
pub mod reduction;
pub mod cli;
