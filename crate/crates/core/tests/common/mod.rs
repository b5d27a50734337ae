#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use torsor::aut::parse_automorphism;
use torsor::{parse_group, Automorphism, FiniteGroup};

pub fn catalog() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

pub fn group(name: &str) -> FiniteGroup {
    let path = catalog().join("groups").join(format!("{name}.json"));
    parse_group(&fs::read_to_string(path).unwrap()).unwrap()
}

pub fn automorphism(h: &FiniteGroup, name: &str) -> Automorphism {
    let path = catalog().join("automorphisms").join(format!("{name}.json"));
    parse_automorphism(h, &fs::read_to_string(path).unwrap()).unwrap()
}

pub fn text(rel: &str) -> String {
    fs::read_to_string(catalog().join(rel)).unwrap()
}

/// Trivial-center catalog instances `(group, automorphism)`.
pub const INSTANCES: &[(&str, &str)] = &[
    ("s3", "s3_0"),
    ("s3", "s3_3"),
    ("s3", "s3_5"),
    ("d5", "d5_id"),
    ("d5", "d5_outer"),
    ("d7", "d7_id"),
    ("d7", "d7_outer"),
    ("a4", "a4_id"),
    ("a4", "a4_outer"),
    ("a5", "a5_id"),
    ("s4", "s4_id"),
];
