pub mod canon;
pub mod cli;
pub mod cyclotomic;
pub mod dynkin;
pub mod enumerate;
pub mod io;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod minv;
pub mod module;
pub mod poly;
pub mod repg;
pub mod ring;
pub mod sl2;
