pub mod combinat;
pub mod error;
pub mod field;
pub mod ideal;
pub mod limits;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod koszul;
pub mod fedder;
pub mod json;
pub mod frobmod;
pub mod levels;
pub mod cli;
