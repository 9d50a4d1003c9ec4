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

//! Generalized Douglas-Rachford splitting on diagonal quadratic problems:
//! linear rate bounds, the instances on which they are attained, and the
//! transfer of both to the dual problem and ADMM.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod functions;
pub mod hilbert;
pub mod prox;
pub mod rates;
pub mod report;
pub mod splitting;
pub mod verify;
pub mod worstcase;
