//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use hadamard_pd::code_binary::build_binary_hadamard;
use hadamard_pd::code_z4::{build_quaternary_hadamard, gray_map};
use hadamard_pd::decoder::{minimum_distance_decode, perm_decode};
use hadamard_pd::gf2::star_binary;
use hadamard_pd::golden;
use hadamard_pd::pdset::{double_pdset, hadamard_bounds, verify_bruteforce, BruteForceOptions};
use hadamard_pd::pdset_binary::{
    construct_explicit_binary, extend_kappa_binary, pdset_from_binary_matrices, verify_criterion_binary,
};
use hadamard_pd::pdset_z4::{
    construct_explicit_z4, extend_kappa_z4, f_gamma_delta, pdset_from_z4_matrices, verify_bruteforce_quaternary,
    verify_criterion_z4,
};
use hadamard_pd::z4::{ring_order_enumerate, star_quaternary};
use hadamard_pd::{
    AnyCode, BitMatrix, BitVector, LBlockShape, PdSet, Permutation, Provenance, SystematicCode, Z4Matrix,
};

const LIMIT_1: Duration = Duration::from_millis(1);
const LIMIT_2: Duration = Duration::from_millis(100);
const LIMIT_3: Duration = Duration::from_millis(100);
const LIMIT_4: Duration = Duration::from_millis(100);
const LIMIT_5: Duration = Duration::from_secs(5);
const LIMIT_6: Duration = Duration::from_secs(60);
const LIMIT_7: Duration = Duration::from_secs(120);
const LIMIT_8_9: Duration = Duration::from_secs(300);
const LIMIT_10: Duration = Duration::from_millis(100);

/// Candidate sets per family in the oracle comparison.
const ORACLE_SETS: usize = 200;
const ORACLE_SEED: u64 = 0x5eed_0006;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T>(r: hadamard_pd::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn bits(rows: &[&str]) -> BitMatrix {
    BitMatrix::parse(&rows.join("\n")).unwrap()
}

fn quats(rows: &[&str]) -> Z4Matrix {
    Z4Matrix::parse(&rows.join("\n")).unwrap()
}

fn golden_generator() -> Outcome {
    let code = ok(build_binary_hadamard(4))?;
    ensure(code.generator() == &bits(&golden::G4), "G_4 differs")?;
    Ok("5x16 generator matches bit for bit".into())
}

fn golden_binary_pdset() -> Outcome {
    let code = ok(build_binary_hadamard(4))?;
    let ex = ok(construct_explicit_binary(&code))?;
    ensure(ex.n_matrices[1] == bits(&golden::BINARY_N1), "N_1 differs")?;
    ensure(ex.n_matrices[2] == bits(&golden::BINARY_N2), "N_2 differs")?;
    ensure(
        star_binary(&ex.n_matrices[1]) == bits(&golden::BINARY_N1_STAR),
        "N_1* differs",
    )?;
    ensure(
        star_binary(&ex.n_matrices[2]) == bits(&golden::BINARY_N2_STAR),
        "N_2* differs",
    )?;
    ensure(ok(verify_criterion_binary(&ex.matrices))?, "criterion fails")?;
    let out = ok(verify_bruteforce(&ex.pdset, 2, &BruteForceOptions::default()))?;
    ensure(out.passed, format!("brute force fails at {:?}", out.witness))?;
    ensure(out.subsets == 120, format!("{} subsets enumerated", out.subsets))?;
    Ok("N_1, N_2, N_1*, N_2* exact; criterion and brute force over 120 subsets".into())
}

fn bounds_table() -> Outcome {
    let f4 = ok(hadamard_bounds(4))?.f_m;
    let f5 = ok(hadamard_bounds(5))?.f_m;
    ensure((f4, f5) == (2, 4), format!("f_4 = {f4}, f_5 = {f5}"))?;
    let z4 = [((0, 3), 4), ((1, 2), 1), ((3, 1), 1), ((4, 1), 2), ((2, 2), 3)];
    for ((g, d), want) in z4 {
        let got = f_gamma_delta(g, d);
        ensure(got == want, format!("f_{{{g},{d}}} = {got}, expected {want}"))?;
    }
    let mut rows = 0;
    for m in 4..=10 {
        let r = ok(hadamard_bounds(m))?;
        for &(s, g) in &r.g_m {
            ensure(g > s as u128, format!("g_{m}({s}) = {g} < s + 1"))?;
            rows += 1;
        }
    }
    Ok(format!(
        "all seven f values exact; g_m(s) >= s+1 on {rows} tabulated (m, s)"
    ))
}

fn golden_ring() -> Outcome {
    let ex = ok(construct_explicit_z4(0, 3))?;
    ensure(ex.ring.h_poly() == [1, 1, 1], format!("h = {:?}", ex.ring.h_poly()))?;
    let listed: Vec<Vec<u8>> = golden::RING_ORDER_D2.iter().map(|e| e.to_vec()).collect();
    ensure(ring_order_enumerate(&ex.ring) == listed, "ring order differs")?;
    let shape = ex.code.shape();
    for k in 1..=4 {
        ensure(
            ex.n_matrices[k] == quats(&golden::Z4_N[k - 1]),
            format!("N_{k} differs"),
        )?;
        ensure(
            star_quaternary(&ex.n_matrices[k], shape) == quats(&golden::Z4_N_STAR[k - 1]),
            format!("N_{k}* differs"),
        )?;
    }
    Ok("16-element list, N_1..N_4 and N_1*..N_4* exact".into())
}

fn z4_verification() -> Outcome {
    let ex = ok(construct_explicit_z4(0, 3))?;
    let opts = BruteForceOptions::default();
    let b = ok(verify_bruteforce(&ex.pdset, 4, &opts))?;
    ensure(b.passed && b.subsets == 35960, format!("binary: {b:?}"))?;
    let q = ok(verify_bruteforce_quaternary(&ex.code, &ex.matrices, 4, &opts))?;
    ensure(q.passed && q.subsets == 1820, format!("quaternary: {q:?}"))?;
    Ok("binary s=4 over 35960 subsets, quaternary s=4 over 1820 label sets".into())
}

fn random_paut_matrix(rng: &mut ChaCha8Rng, k: usize) -> BitMatrix {
    loop {
        let rows = (0..k)
            .map(|r| {
                let tail = rng.gen::<u64>() & ((1 << k) - 2);
                BitVector::from_u64(tail | (r == 0) as u64, k)
            })
            .collect();
        let m = BitMatrix::from_rows(rows).unwrap();
        if m.rank() == k {
            return m;
        }
    }
}

fn random_pi_l_matrix(rng: &mut ChaCha8Rng, n: usize) -> Z4Matrix {
    loop {
        let rows: Vec<Vec<u8>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| if c == 0 { (r == 0) as u8 } else { rng.gen_range(0..4) })
                    .collect()
            })
            .collect();
        let m = Z4Matrix::from_rows(&rows).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

/// Candidate sets: half drawn at random, half the explicit set with one
/// member replaced or one member removed, so both outcomes occur.
fn candidate_sets<M: Clone>(
    rng: &mut ChaCha8Rng,
    explicit: &[M],
    mut random: impl FnMut(&mut ChaCha8Rng) -> M,
) -> Vec<Vec<M>> {
    (0..ORACLE_SETS)
        .map(|i| {
            if i % 2 == 0 {
                let size = rng.gen_range(2..=explicit.len());
                (0..size).map(|_| random(rng)).collect()
            } else {
                let mut set = explicit.to_vec();
                if i % 4 == 1 {
                    let at = rng.gen_range(0..set.len());
                    set[at] = random(rng);
                } else {
                    set.remove(rng.gen_range(0..set.len()));
                }
                set
            }
        })
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let opts = BruteForceOptions::default();

    let h4 = ok(build_binary_hadamard(4))?;
    let p2 = ok(construct_explicit_binary(&h4))?;
    let mut tally = [0usize; 2];
    for set in candidate_sets(&mut rng, &p2.matrices, |r| random_paut_matrix(r, 5)) {
        let criterion = ok(verify_criterion_binary(&set))?;
        let pd = ok(pdset_from_binary_matrices(&h4, set.clone(), Provenance::Manual, vec![]))?;
        let brute = ok(verify_bruteforce(&pd, set.len() - 1, &opts))?.passed;
        ensure(criterion == brute, format!("binary disagreement on {set:?}"))?;
        tally[brute as usize] += 1;
    }

    let h03 = ok(build_quaternary_hadamard(0, 3))?;
    let p4 = ok(construct_explicit_z4(0, 3))?;
    let shape = LBlockShape { gamma: 0, delta: 3 };
    let mut qtally = [0usize; 2];
    for set in candidate_sets(&mut rng, &p4.matrices, |r| random_pi_l_matrix(r, 3)) {
        let criterion = ok(verify_criterion_z4(&set, shape))?;
        let pd = ok(pdset_from_z4_matrices(&h03, set.clone(), Provenance::Manual, vec![]))?;
        let s = set.len() - 1;
        let brute = ok(verify_bruteforce(&pd, s, &opts))?.passed;
        let quaternary = ok(verify_bruteforce_quaternary(&h03, &set, s, &opts))?.passed;
        ensure(
            criterion == brute && criterion == quaternary,
            format!("Z4 disagreement (criterion {criterion}, binary {brute}, quaternary {quaternary}) on {set:?}"),
        )?;
        qtally[brute as usize] += 1;
    }
    ensure(
        tally.iter().chain(&qtally).all(|&c| c > 0),
        "candidate sets are not mixed",
    )?;
    Ok(format!(
        "agreement on {} PAut(H_4) sets ({} pass, {} fail) and {} π(L) sets ({} pass, {} fail)",
        ORACLE_SETS, tally[1], tally[0], ORACLE_SETS, qtally[1], qtally[0]
    ))
}

fn recursive_constructions() -> Outcome {
    let opts = BruteForceOptions::default();
    let h4 = ok(build_binary_hadamard(4))?;
    let p2 = ok(construct_explicit_binary(&h4))?;
    for kappa in 1..=2 {
        let ms = ok(extend_kappa_binary(&p2.matrices, kappa))?;
        ensure(
            ok(verify_criterion_binary(&ms))?,
            format!("extension to m={} fails", 4 + kappa),
        )?;
    }

    let (h5, doubled) = ok(double_pdset(&AnyCode::Binary(h4), &p2.pdset))?;
    ensure(h5.length() == 32, "doubled length")?;
    let out = ok(verify_bruteforce(&doubled, 2, &opts))?;
    ensure(out.passed && out.subsets == 496, format!("doubled set: {out:?}"))?;

    let p4 = ok(construct_explicit_z4(0, 3))?;
    let mut full_check = 0;
    for (i, j) in [(1, 0), (0, 1)] {
        let (ms, shape) = ok(extend_kappa_z4(&p4.matrices, p4.code.shape(), i, j))?;
        ensure(
            ok(verify_criterion_z4(&ms, shape))?,
            format!("extension to ({}, {}) fails", shape.gamma, shape.delta),
        )?;
        if (shape.gamma, shape.delta) == (1, 3) {
            let code = ok(build_quaternary_hadamard(1, 3))?;
            let pd = ok(pdset_from_z4_matrices(&code, ms, Provenance::Recursive, vec![]))?;
            let out = ok(verify_bruteforce(&pd, 4, &opts))?;
            ensure(out.passed, format!("(1,3) brute force fails at {:?}", out.witness))?;
            full_check = out.subsets;
        }
    }
    ensure(full_check == 635376, format!("{full_check} subsets at (1,3)"))?;

    let h02 = ok(build_quaternary_hadamard(0, 2))?;
    let h03 = ok(build_quaternary_hadamard(0, 3))?;
    let sigma = ok(Permutation::from_cycles(8, &[&[1, 5], &[2, 8, 3, 6, 4, 7]]))?;
    ensure(h02.is_automorphism(&sigma), "σ is not in PAut(H_{0,2})")?;
    let naive = sigma.repeat(4);
    ensure(!h03.is_automorphism(&naive), "naive quadrupling preserves H_{0,3}")?;
    let pd = PdSet::new(&h02, vec![sigma], 0, Provenance::Manual, vec![]);
    ensure(pd.is_ok(), "σ rejected as a PD-set member")?;
    Ok("(a) m=5,6 criterion; (b) H_5 s=2 over 496; (c) (1,3), (0,4) criterion, (1,3) s=4 over 635376; (d) (σ|σ|σ|σ) not in PAut(H_{0,3})".into())
}

fn exhaustive_decoding(
    code: &dyn SystematicCode,
    pd: &PdSet,
    max_weight: usize,
) -> Result<(usize, usize, usize), String> {
    let n = code.length();
    let words = code.codewords();
    let mut patterns: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = patterns.clone();
    for _ in 0..max_weight {
        frontier = frontier
            .iter()
            .flat_map(|p| (p.last().map_or(0, |&l| l + 1)..n).map(move |q| [p.as_slice(), &[q]].concat()))
            .collect();
        patterns.extend(frontier.iter().cloned());
    }
    let results: Vec<(usize, usize)> = words
        .par_iter()
        .map(|x| -> Result<(usize, usize), String> {
            let (mut exact, mut sound) = (0, 0);
            for p in &patterns {
                let mut y = x.clone();
                for &q in p {
                    y.flip(q);
                }
                let r = ok(perm_decode(code, pd, &y))?;
                if r.codeword.as_ref() == Some(x) {
                    exact += 1;
                }
                if let Some(c) = r.codeword {
                    if Some(c) == minimum_distance_decode(&words, &y) {
                        sound += 1;
                    }
                } else {
                    sound += 1;
                }
            }
            Ok((exact, sound))
        })
        .collect::<Result<_, _>>()?;
    let exact = results.iter().map(|r| r.0).sum();
    let sound = results.iter().map(|r| r.1).sum();
    Ok((words.len() * patterns.len(), exact, sound))
}

struct DecodingRun {
    h4: (usize, usize, usize),
    h03: (usize, usize, usize),
    codewords03: usize,
}

fn decoding_run() -> Result<DecodingRun, String> {
    let h4 = ok(build_binary_hadamard(4))?;
    let p2 = ok(construct_explicit_binary(&h4))?.pdset;
    let a = exhaustive_decoding(&h4, &p2, 2)?;
    let p4 = ok(construct_explicit_z4(0, 3))?;
    let b = exhaustive_decoding(&p4.code, &p4.pdset, 4)?;
    Ok(DecodingRun {
        h4: a,
        h03: b,
        codewords03: p4.code.codewords().len(),
    })
}

fn decoder_completeness(run: &DecodingRun) -> Outcome {
    ensure(run.h4 == (4384, 4384, 4384), format!("H_4: {:?}", run.h4))?;
    let (cases, exact, _) = run.h03;
    ensure(
        run.codewords03 == 64,
        format!("H_{{0,3}} has {} codewords", run.codewords03),
    )?;
    ensure(
        cases == 64 * 41449 && exact == cases,
        format!("H_{{0,3}}: {exact} of {cases}"),
    )?;
    Ok(format!(
        "H_4: 4384/4384 exact; H_{{0,3}}: {exact}/{cases} exact over 64 codewords"
    ))
}

fn decoder_soundness(run: &DecodingRun) -> Outcome {
    ensure(run.h4.2 == run.h4.0, format!("H_4: {} of {} agree", run.h4.2, run.h4.0))?;
    ensure(
        run.h03.2 == run.h03.0,
        format!("H_{{0,3}}: {} of {} agree", run.h03.2, run.h03.0),
    )?;
    Ok(format!(
        "{} decoded outputs equal the minimum-distance decoder",
        run.h4.0 + run.h03.0
    ))
}

fn nonlinearity() -> Outcome {
    let code = ok(build_quaternary_hadamard(0, 3))?;
    let words: Vec<BitVector> = code.quaternary_codewords().iter().map(|c| gray_map(c)).collect();
    let set: HashSet<&BitVector> = words.iter().collect();
    let witness = words
        .iter()
        .enumerate()
        .flat_map(|(i, a)| words[i + 1..].iter().map(move |b| (a, b)))
        .find(|(a, b)| !set.contains(&a.xor(b)));
    match witness {
        Some((a, b)) => Ok(format!("{a} + {b} is not a codeword")),
        None => Err("Gray image is closed under addition".into()),
    }
}

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, id: &str, name: &str, limit: Duration, elapsed: Duration, outcome: Outcome) {
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        self.failures += !pass as usize;
        println!(
            "{} {id:>3} {name}: {detail} [{:.3?} / limit {:?}]",
            if pass { "PASS" } else { "FAIL" },
            elapsed,
            limit
        );
    }

    fn run(&mut self, id: &str, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = f();
        self.line(id, name, limit, start.elapsed(), outcome);
    }
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };
    rayon::broadcast(|_| ());

    report.run("1", "golden generator", LIMIT_1, golden_generator);
    report.run("2", "golden binary PD-set", LIMIT_2, golden_binary_pdset);
    report.run("3", "bounds table", LIMIT_3, bounds_table);
    report.run("4", "golden Galois ring", LIMIT_4, golden_ring);
    report.run("5", "Z4 PD-set verification", LIMIT_5, z4_verification);
    report.run("6", "oracle equivalence", LIMIT_6, oracle_equivalence);
    report.run("7", "recursive constructions", LIMIT_7, recursive_constructions);

    let start = Instant::now();
    let run = decoding_run();
    let elapsed = start.elapsed();
    match run {
        Ok(run) => {
            report.line(
                "8",
                "decoder completeness",
                LIMIT_8_9,
                elapsed,
                decoder_completeness(&run),
            );
            report.line("9", "decoder soundness", LIMIT_8_9, elapsed, decoder_soundness(&run));
        }
        Err(e) => {
            report.line("8", "decoder completeness", LIMIT_8_9, elapsed, Err(e.clone()));
            report.line("9", "decoder soundness", LIMIT_8_9, elapsed, Err(e));
        }
    }
    report.run("10", "nonlinearity witness", LIMIT_10, nonlinearity);

    println!("{} of 10 criteria failed", report.failures);
    if report.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
