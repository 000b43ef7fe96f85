//! Crate-wide error type.

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("denominator vanishes at delta = {0}")]
    PoleAt(Rational),

    #[error("non-composable: first diagram has {f_top} top points, second has {g_bot} bottom points")]
    NonComposable { f_top: usize, g_bot: usize },

    #[error("cannot add through strings: requested {s}, but only {left} left defects and {right} right defects are free")]
    CannotAddThroughStrings { s: usize, left: usize, right: usize },

    #[error("not semisimple or incomplete simple list: multiplicities account for dimension {accounted} of {expected}")]
    NotSemisimple { accounted: usize, expected: usize },

    #[error("structure constant methods disagree at (m={m}|n={n}; p={p}, q={q}, r={r}): closed={closed}, walled={walled}, hom={hom:?}")]
    StructConstMismatch {
        m: usize,
        n: usize,
        p: usize,
        q: usize,
        r: usize,
        closed: u64,
        walled: u64,
        hom: Option<u64>,
    },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
