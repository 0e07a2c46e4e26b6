//! Bikernels into annotated problems, gadget constructions back to plain
//! problems, and multikernels.

mod bikernel;
mod gadgets;
mod instance;
mod multikernel;

pub use bikernel::{
    bikernel_lambda_mu, bikernel_perfect_code, bikernel_rc_dom, bikernel_roman, bikernel_scattered, bikernel_total,
    fixture, reduce, Bikernel, EarlyExit, Reduction,
};
pub use gadgets::{
    be_kernel, be_kernel_perfect_code, be_kernel_rc_dom, be_kernel_roman, be_kernel_scattered, be_kernel_total,
};
pub use instance::{accepts, AnnotatedInstance, Origin, Params, Problem};
pub use multikernel::{
    multikernel_dom_ind, multikernel_domination_family, DomIndOffsets, DominationOffsets, Multikernel,
};
