pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod numeric;
pub mod groupring;
pub mod mwshape;
pub mod gauss;
pub mod regulator;
pub mod report;
pub mod criteria;
pub mod problem;
pub mod pipeline;
pub mod transform;
pub mod synthetic;
pub mod fetch;
