/*
Copyright 2026 The drsplit Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

use thiserror::Error;

use crate::splitting::IterateTrace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector must have at least one coordinate")]
    EmptyVector,

    #[error("coordinate {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("basis map is not orthogonal (max |QᵀQ - I| = {max_deviation:e})")]
    NotOrthogonal { max_deviation: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index partition invalid: {0}")]
    InvalidPartition(String),

    #[error("unsupported problem shape: {0}")]
    Unsupported(String),

    #[error("iteration diverged at k = {iteration} (distance {distance:e} exceeds 10x the initial distance)")]
    Diverged {
        iteration: usize,
        distance: f64,
        trace: Box<IterateTrace>,
    },

    #[error("trace too short: {valid} valid step ratios, need at least {needed}")]
    TraceTooShort { valid: usize, needed: usize },

    #[error("objective is not finite at x = {x} (coordinate {index})")]
    NonFiniteObjective { index: usize, x: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
