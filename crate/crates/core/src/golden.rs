//! Reference data for the worked examples and the routines that regenerate
//! and compare them.

use crate::code::SystematicCode;
use crate::code_binary::build_binary_hadamard;
use crate::error::Result;
use crate::gf2::{star_binary, BitMatrix};
use crate::pdset::{verify_bruteforce, BruteForceOptions};
use crate::pdset_binary::{construct_explicit_binary, verify_criterion_binary};
use crate::pdset_z4::{construct_explicit_z4, verify_bruteforce_quaternary, verify_criterion_z4};
use crate::z4::{ring_order_enumerate, star_quaternary, GaloisRing, Z4Matrix};

pub const G4: [&str; 5] = [
    "1111111111111111",
    "0100010011010111",
    "0010011010111100",
    "0001001101011110",
    "0000100110101111",
];

pub const BINARY_N1: [&str; 5] = ["11100", "01010", "01111", "00001", "00110"];
pub const BINARY_N2: [&str; 5] = ["10101", "01011", "00010", "01010", "01110"];
pub const BINARY_N1_STAR: [&str; 5] = ["11100", "10110", "10011", "11101", "11010"];
pub const BINARY_N2_STAR: [&str; 5] = ["10101", "11110", "10111", "11111", "11011"];

/// `R` for `h = x^2 + x + 1`, as coefficients of `1, α`.
pub const RING_ORDER_D2: [[u8; 2]; 16] = [
    [0, 0],
    [1, 0],
    [0, 1],
    [3, 3],
    [2, 0],
    [3, 0],
    [2, 1],
    [1, 3],
    [0, 2],
    [1, 2],
    [0, 3],
    [3, 1],
    [2, 2],
    [3, 2],
    [2, 3],
    [1, 1],
];

/// `N_1, ..., N_4` for `H_{0,3}`.
pub const Z4_N: [[&str; 3]; 4] = [
    ["133", "031", "001"],
    ["121", "032", "021"],
    ["112", "031", "023"],
    ["122", "010", "001"],
];

pub const Z4_N_STAR: [[&str; 3]; 4] = [
    ["133", "120", "130"],
    ["121", "113", "102"],
    ["112", "103", "131"],
    ["122", "132", "123"],
];

/// Outcome of one reproduction: printable lines and whether everything matched.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub ok: bool,
}

impl Report {
    fn new() -> Self {
        Report {
            lines: Vec::new(),
            ok: true,
        }
    }

    fn check(&mut self, what: &str, pass: bool) {
        self.lines
            .push(format!("{what}: {}", if pass { "match" } else { "MISMATCH" }));
        self.ok &= pass;
    }

    fn block(&mut self, title: &str, body: &str) {
        self.lines.push(format!("{title} ="));
        self.lines.extend(body.lines().map(|l| format!("  {l}")));
    }
}

fn bits(rows: &[&str]) -> BitMatrix {
    BitMatrix::parse(&rows.join("\n")).expect("golden data parses")
}

fn quats(rows: &[&str]) -> Z4Matrix {
    Z4Matrix::parse(&rows.join("\n")).expect("golden data parses")
}

pub fn reproduce_g4_table() -> Result<Report> {
    let mut r = Report::new();
    let code = build_binary_hadamard(4)?;
    r.block("G_4", &code.generator().to_string());
    r.check("G_4", code.generator() == &bits(&G4));
    Ok(r)
}

pub fn reproduce_example_3_4() -> Result<Report> {
    let mut r = Report::new();
    let code = build_binary_hadamard(4)?;
    let ex = construct_explicit_binary(&code)?;
    let n1 = &ex.n_matrices[1];
    let n2 = &ex.n_matrices[2];
    r.block("N_1", &n1.to_string());
    r.block("N_2", &n2.to_string());
    r.block("N_1*", &star_binary(n1).to_string());
    r.block("N_2*", &star_binary(n2).to_string());
    r.check("N_1", n1 == &bits(&BINARY_N1));
    r.check("N_2", n2 == &bits(&BINARY_N2));
    r.check("N_1*", star_binary(n1) == bits(&BINARY_N1_STAR));
    r.check("N_2*", star_binary(n2) == bits(&BINARY_N2_STAR));
    let criterion = verify_criterion_binary(&ex.matrices)?;
    let brute = verify_bruteforce(&ex.pdset, 2, &BruteForceOptions::default())?;
    let verified = criterion && brute.passed && ex.pdset.s == 2 && ex.pdset.len() == 3;
    r.lines.push(format!(
        "2-PD-set: {} (criterion, brute force)",
        if verified { "VERIFIED" } else { "FAILED" }
    ));
    r.ok &= verified;
    Ok(r)
}

fn format_ring_list(ring: &GaloisRing) -> String {
    ring_order_enumerate(ring)
        .iter()
        .map(|e| format!("({})", GaloisRing::format(e)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn reproduce_example_5_8() -> Result<Report> {
    let mut r = Report::new();
    let ex = construct_explicit_z4(0, 3)?;
    let shape = ex.code.shape();
    r.lines.push(format!("h = {:?} (low degree first)", ex.ring.h_poly()));
    r.lines.push(format!("R = {}", format_ring_list(&ex.ring)));
    let listed: Vec<Vec<u8>> = RING_ORDER_D2.iter().map(|e| e.to_vec()).collect();
    r.check("R", ring_order_enumerate(&ex.ring) == listed);
    for k in 1..=4 {
        let n = &ex.n_matrices[k];
        let star = star_quaternary(n, shape);
        r.block(&format!("N_{k}"), &n.to_string());
        r.block(&format!("N_{k}*"), &star.to_string());
        r.check(&format!("N_{k}"), n == &quats(&Z4_N[k - 1]));
        r.check(&format!("N_{k}*"), star == quats(&Z4_N_STAR[k - 1]));
    }
    let opts = BruteForceOptions::default();
    let criterion = verify_criterion_z4(&ex.matrices, shape)?;
    let brute = verify_bruteforce(&ex.pdset, 4, &opts)?;
    let quaternary = verify_bruteforce_quaternary(&ex.code, &ex.matrices, 4, &opts)?;
    let verified = criterion && brute.passed && quaternary.passed && ex.pdset.len() == 5;
    r.lines.push(format!(
        "4-PD-set: {} (criterion, brute force over {} subsets, quaternary brute force over {} label sets)",
        if verified { "VERIFIED" } else { "FAILED" },
        brute.subsets,
        quaternary.subsets
    ));
    r.ok &= verified;
    debug_assert_eq!(ex.code.length(), 32);
    Ok(r)
}
