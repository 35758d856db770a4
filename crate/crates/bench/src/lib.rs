//! Shared fixtures for the benchmarks.

use guillotine_core::corpus;
use guillotine_core::{build_instance, BuildOptions, FormulaSpec, ReductionInstance};

pub fn spec(name: &str) -> FormulaSpec {
    corpus::formula(name).unwrap_or_else(|| panic!("no corpus formula {name}"))
}

pub fn instance(name: &str) -> ReductionInstance {
    build_instance(&spec(name), &BuildOptions::default()).expect("corpus formulas build")
}
