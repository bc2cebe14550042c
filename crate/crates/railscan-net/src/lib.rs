//! Dense CHW tensor kernels with exact backpropagation.
//!
//! Everything computes in `f64`; gradients are exact adjoints of the
//! forward passes, and every differentiable op is covered by the central
//! finite-difference harness in [`gradcheck`]. Convolutions are valid-only
//! (no padding) and lowered to GEMM via im2col. Checkpoints store tensors
//! as little-endian `f32`.

mod activ;
mod checkpoint;
mod conv;
mod error;
pub mod gradcheck;
mod loss;
mod pool;
mod sgd;
mod tensor;

pub use activ::{dropout, dropout_backward, relu, relu_backward};
pub use checkpoint::{fnv1a64, Dtype, NamedTensor, TensorFile, CHECKPOINT_MAGIC};
pub use conv::{conv2d_backward, conv2d_valid, Conv2d, ConvGrads};
pub use error::NetError;
pub use gradcheck::finite_diff_check;
pub use loss::{hinge_forward_backward, softmax_xent, HingeResult, SvmHead};
pub use pool::{maxpool, maxpool_backward};
pub use sgd::{sgd_step, LrSchedule};
pub use tensor::Tensor;

pub type Result<T> = std::result::Result<T, NetError>;
