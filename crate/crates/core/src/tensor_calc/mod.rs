//! Multivector fields, leaf-valued forms, contractions and the
//! Schouten–Nijenhuis bracket.

mod leaf_form;
mod multivector;
mod schouten;

pub use leaf_form::LeafForm;
pub use multivector::{
    differential, evaluate, pair, sharp, sort_with_sign, try_sharp, try_wedge, wedge, Covector,
    Multivector,
};
pub use schouten::{lie_derivative, schouten, try_lie_derivative, try_schouten};
