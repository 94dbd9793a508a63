//! The Hopf algebra `H = k_q[x, x^-1, y]` with `yx = qxy`.

pub mod axioms;
mod element;
pub mod linalg;
mod ops;
mod primitive;

pub use element::{Element, Monomial, Tensor, TensorElement, Window};
pub use ops::{
    antipode, antipode_by_extension, antipode_convolution, antipode_monomial, comultiply,
    comultiply_monomial, counit, counit_left, counit_right, delta_left, delta_right,
    monomial_product, multiply, tensor_multiply,
};
pub use primitive::primitive_space;
