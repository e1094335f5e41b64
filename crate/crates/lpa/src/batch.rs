//! Batch operations over many elements at once. With the `parallel` feature
//! (on by default) the batch entry points fan out across a rayon thread
//! pool; without it they delegate to the sequential twins, which are always
//! available for comparison.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::graph::Graph;
use crate::groupoid::GroupoidElement;
use crate::leavitt::LeavittElement;
use crate::scalars::Scalar;
use crate::steinberg::SteinbergElement;

pub fn convolve_pairs_seq(
    g: &Graph,
    pairs: &[(SteinbergElement, SteinbergElement)],
) -> Vec<SteinbergElement> {
    pairs.iter().map(|(f, h)| f.convolve(g, h)).collect()
}

#[cfg(feature = "parallel")]
pub fn convolve_pairs(
    g: &Graph,
    pairs: &[(SteinbergElement, SteinbergElement)],
) -> Vec<SteinbergElement> {
    pairs.par_iter().map(|(f, h)| f.convolve(g, h)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn convolve_pairs(
    g: &Graph,
    pairs: &[(SteinbergElement, SteinbergElement)],
) -> Vec<SteinbergElement> {
    convolve_pairs_seq(g, pairs)
}

pub fn mul_pairs_seq(
    g: &Graph,
    pairs: &[(LeavittElement, LeavittElement)],
) -> Vec<LeavittElement> {
    pairs.iter().map(|(x, y)| x.mul(g, y)).collect()
}

#[cfg(feature = "parallel")]
pub fn mul_pairs(
    g: &Graph,
    pairs: &[(LeavittElement, LeavittElement)],
) -> Vec<LeavittElement> {
    pairs.par_iter().map(|(x, y)| x.mul(g, y)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn mul_pairs(
    g: &Graph,
    pairs: &[(LeavittElement, LeavittElement)],
) -> Vec<LeavittElement> {
    mul_pairs_seq(g, pairs)
}

pub fn evaluate_many_seq(
    g: &Graph,
    f: &SteinbergElement,
    elems: &[GroupoidElement],
) -> Vec<Scalar> {
    elems.iter().map(|elem| f.evaluate(g, elem)).collect()
}

#[cfg(feature = "parallel")]
pub fn evaluate_many(
    g: &Graph,
    f: &SteinbergElement,
    elems: &[GroupoidElement],
) -> Vec<Scalar> {
    elems.par_iter().map(|elem| f.evaluate(g, elem)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn evaluate_many(
    g: &Graph,
    f: &SteinbergElement,
    elems: &[GroupoidElement],
) -> Vec<Scalar> {
    evaluate_many_seq(g, f, elems)
}
