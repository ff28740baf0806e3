//! Exact-arithmetic engine for braided FRT-type bialgebras and Hopf algebras.

pub mod scalars;
pub mod linalg;
pub mod braids;
pub mod braided_cat;
pub mod check;
pub mod axioms;
pub mod model_file;
pub mod tensor_hopf;
pub mod frt;
pub mod qbg;
pub mod boson;
pub mod diffcalc;
pub mod suites;
