//! Tampering with structure constants must flip at least one check.

use blobcx::algebra::builtin::{matrix_algebra, truncated_polynomial};
use blobcx::algebra::regular_bimodule;
use blobcx::specfile::SpecFile;
use blobcx::verify::instance_suite;
use blobcx::Q;
use std::sync::Arc;

fn caught(spec: &SpecFile) -> bool {
    let (a, _) = spec.build::<Q>().unwrap();
    let m = Arc::new(regular_bimodule(&a));
    match instance_suite(&a, &m, 3, 2) {
        Ok(r) => !r.passed(),
        Err(_) => true,
    }
}

#[test]
fn every_scaled_constant_fails_a_check() {
    // in these two every single scaling breaks associativity or the unit
    for a in [truncated_polynomial::<Q>(2), matrix_algebra::<Q>(2)] {
        let clean = SpecFile::from_algebra(&a, &[]);
        assert!(!caught(&clean), "{} passes untouched", a.name());
        for e in 0..clean.mult.len() {
            let mut spec = clean.clone();
            spec.mult[e][3] *= 2;
            assert!(caught(&spec), "{}: doubling mult[{e}] = {:?} went unnoticed", a.name(), clean.mult[e]);
        }
    }
}

#[test]
fn extra_product_term_is_caught() {
    let clean = SpecFile::from_algebra(&matrix_algebra::<Q>(2), &[]);
    let mut spec = clean.clone();
    // e01 e01 picks up an e00 term
    spec.mult.push([1, 1, 0, 1, 1]);
    assert!(caught(&spec));
}

#[test]
fn isomorphic_rescaling_is_not_a_defect() {
    // x·x = 2x² in k[x]/(x³) is the same algebra after x ↦ 2x
    let mut spec = SpecFile::from_algebra(&truncated_polynomial::<Q>(3), &[]);
    let e = spec.mult.iter().position(|m| m[..3] == [1, 1, 2]).unwrap();
    spec.mult[e][3] = 2;
    assert!(!caught(&spec));
    // but doubling 1·x² is not
    let e = spec.mult.iter().position(|m| m[..3] == [0, 2, 2]).unwrap();
    spec.mult[e][3] = 2;
    assert!(caught(&spec));
}
