use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hadamard_pd::decoder::{perm_decode, simulate_channel};
use hadamard_pd::gf2::parse_poly;
use hadamard_pd::golden::{reproduce_example_3_4, reproduce_example_5_8, reproduce_g4_table};
use hadamard_pd::io::{read_json, to_json, write_json, CodeFile, PdSetFile};
use hadamard_pd::pdset::{double_pdset, hadamard_bounds, nested_subsets, verify_pd_property, DEFAULT_BUDGET};
use hadamard_pd::pdset_binary::{
    construct_explicit_binary, extend_kappa_binary, pdset_from_binary_matrices, verify_criterion_binary,
};
use hadamard_pd::pdset_z4::{
    construct_explicit_z4_with, extend_kappa_z4, f_gamma_delta, pdset_from_z4_matrices, power_extend,
    quadruple_pdset_z4, verify_criterion_z4,
};
use hadamard_pd::{
    AnyCode, BitVector, BruteForceOptions, Error, HadamardCodeBinary, HadamardCodeZ4, PdSet, Provenance, SystematicCode,
};

#[derive(Parser)]
#[command(
    name = "hadamard-pd",
    version,
    about = "Hadamard codes, PD-sets and permutation decoding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
#[group(required = true, multiple = false)]
struct Family {
    #[arg(long)]
    binary: bool,
    #[arg(long)]
    z4: bool,
}

#[derive(Args)]
struct CodeParams {
    #[arg(short, long)]
    m: Option<u32>,
    #[arg(long)]
    gamma: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
    /// Primitive polynomial, coefficients low degree first (`11001` is 1 + x + x^4).
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generator matrix and the code metadata.
    GenCode {
        #[command(flatten)]
        family: Family,
        #[command(flatten)]
        params: CodeParams,
        /// Write the metadata JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gordon–Schönheim table and f_m, or f_{γ,δ} with --gamma/--delta.
    Bounds {
        #[arg(short, long)]
        m: Option<u32>,
        #[arg(long, requires = "delta")]
        gamma: Option<usize>,
        #[arg(long, requires = "gamma")]
        delta: Option<usize>,
    },
    /// Build a PD-set.
    GenPdset(GenPdset),
    /// Check a PD-set file.
    Verify {
        file: PathBuf,
        #[arg(long, required_unless_present = "criterion", conflicts_with = "criterion")]
        brute: bool,
        #[arg(long)]
        criterion: bool,
        /// Subset size; defaults to the file's s.
        #[arg(long, requires = "brute")]
        s: Option<usize>,
        /// Check the quaternary permutations on column labels instead.
        #[arg(long, requires = "brute")]
        quaternary: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Permutation-decode one received word.
    Decode {
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        pdset: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Inject random errors and report decoding success rates as JSON.
    Simulate {
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        pdset: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Regenerate a worked example and compare with the embedded reference.
    Reproduce {
        #[arg(value_enum)]
        example: Example,
    },
}

#[derive(Args)]
struct GenPdset {
    #[command(flatten)]
    family: Family,
    #[command(flatten)]
    params: CodeParams,
    #[command(flatten)]
    mode: Mode,
    /// Source PD-set for the recursive modes.
    #[arg(long)]
    from: Option<PathBuf>,
    /// Binary extension by K rows.
    #[arg(long, requires = "extend")]
    kappa: Option<usize>,
    /// Z4 extension by I order-2 rows and J order-4 rows.
    #[arg(long, requires = "extend", value_delimiter = ',', value_name = "I,J")]
    split: Option<Vec<usize>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Mode {
    #[arg(long)]
    explicit: bool,
    /// Extend the PD-set in FILE.
    #[arg(long, value_name = "FILE")]
    extend: Option<PathBuf>,
    #[arg(long)]
    double: bool,
    #[arg(long)]
    quadruple: bool,
    /// I doublings after J quadruplings.
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    power: Option<Vec<usize>>,
    /// Keep the first K + 1 permutations as a K-PD-set.
    #[arg(long, value_name = "K")]
    prefix: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    #[value(name = "example-3.4")]
    Example34,
    #[value(name = "example-5.8")]
    Example58,
    #[value(name = "g4-table")]
    G4Table,
}

/// Exit status reported for a failed check.
#[derive(Debug)]
struct Failed;

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("check failed")
    }
}

impl std::error::Error for Failed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Failed>().is_some() {
        return 1;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(
            Error::NotInL(_)
            | Error::NotInPiL(_)
            | Error::NotInPAut(_)
            | Error::NotAutomorphism(_)
            | Error::NotQuaternaryAutomorphism(_)
            | Error::InconsistentBound(_),
        ) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if e.downcast_ref::<Failed>().is_none() {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::GenCode { family, params, out } => gen_code(family, &params, out.as_deref()),
        Command::Bounds { m, gamma, delta } => bounds(m, gamma, delta),
        Command::GenPdset(args) => gen_pdset(&args),
        Command::Verify {
            file,
            brute,
            s,
            quaternary,
            budget,
            threads,
            ..
        } => {
            let opts = BruteForceOptions { budget, threads };
            if brute {
                verify_brute(&file, s, quaternary, &opts)
            } else {
                verify_criterion(&file)
            }
        }
        Command::Decode { code, pdset, word } => decode(code.as_deref(), &pdset, &word),
        Command::Simulate {
            code,
            pdset,
            weights,
            trials,
            seed,
            threads,
        } => simulate(code.as_deref(), &pdset, &weights, trials, seed, threads),
        Command::Reproduce { example } => reproduce(example),
    }
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => Ok(write_json(path, value)?),
        None => {
            say(&to_json(value));
            Ok(())
        }
    }
}

/// Prints one line; a closed stdout ends the process quietly.
fn say(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn need<T>(value: Option<T>, flag: &str) -> anyhow::Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("{flag} is required")).into())
}

fn poly_mask(params: &CodeParams) -> anyhow::Result<Option<u64>> {
    Ok(params.poly.as_deref().map(parse_poly).transpose()?)
}

fn binary_code(params: &CodeParams) -> anyhow::Result<HadamardCodeBinary> {
    let m = need(params.m, "-m")?;
    Ok(match poly_mask(params)? {
        Some(p) => HadamardCodeBinary::with_poly(m, p)?,
        None => HadamardCodeBinary::new(m)?,
    })
}

fn gen_code(family: Family, params: &CodeParams, out: Option<&Path>) -> anyhow::Result<()> {
    let code = if family.binary {
        AnyCode::Binary(binary_code(params)?)
    } else {
        let gamma = need(params.gamma, "--gamma")?;
        let delta = need(params.delta, "--delta")?;
        AnyCode::Z4(HadamardCodeZ4::new(gamma, delta)?)
    };
    match &code {
        AnyCode::Binary(c) => say(&c.generator().to_string()),
        AnyCode::Z4(c) => {
            say(&c.generator().to_string());
            say(&format!("q_info_set: {:?}", c.q_info_set()));
            say(&format!("binary_info_set: {:?}", c.binary_info_set()));
        }
    }
    emit(&CodeFile::describe(&code), out)
}

#[derive(Serialize)]
struct Z4Bound {
    gamma: usize,
    delta: usize,
    m: usize,
    f_gamma_delta: u64,
}

fn bounds(m: Option<u32>, gamma: Option<usize>, delta: Option<usize>) -> anyhow::Result<()> {
    match (m, gamma, delta) {
        (Some(m), None, None) => emit(&hadamard_bounds(m)?, None),
        (None, Some(gamma), Some(delta)) => {
            if delta == 0 {
                bail!(Error::InvalidParameter("delta must be at least 1".into()));
            }
            emit(
                &Z4Bound {
                    gamma,
                    delta,
                    m: gamma + 2 * delta - 1,
                    f_gamma_delta: f_gamma_delta(gamma, delta),
                },
                None,
            )
        }
        _ => bail!(Error::InvalidParameter(
            "give either -m or both --gamma and --delta".into()
        )),
    }
}

fn load_pdset(path: &Path) -> anyhow::Result<(PdSetFile, AnyCode, PdSet)> {
    let file: PdSetFile = read_json(path)?;
    let (code, pd) = file.into_pdset().with_context(|| path.display().to_string())?;
    Ok((file, code, pd))
}

fn gen_pdset(args: &GenPdset) -> anyhow::Result<()> {
    let mode = &args.mode;
    let pd = if mode.explicit {
        let poly = poly_mask(&args.params)?;
        if args.family.binary {
            construct_explicit_binary(&binary_code(&args.params)?)?.pdset
        } else {
            let gamma = need(args.params.gamma, "--gamma")?;
            let delta = need(args.params.delta, "--delta")?;
            construct_explicit_z4_with(gamma, delta, poly)?.pdset
        }
    } else {
        let from = match mode.extend.as_deref() {
            Some(p) => p,
            None => need(args.from.as_deref(), "--from")?,
        };
        let (file, code, pd) = load_pdset(from)?;
        let is_binary = matches!(code, AnyCode::Binary(_));
        if is_binary != args.family.binary {
            bail!(Error::InvalidParameter(format!(
                "{} holds a {} PD-set",
                from.display(),
                if is_binary { "binary" } else { "Z4" }
            )));
        }
        if mode.extend.is_some() {
            extend(args, &file, &code, &pd)?
        } else if mode.double {
            double_pdset(&code, &pd)?.1
        } else if let Some(k) = mode.prefix {
            nested_subsets(&pd, k)?
        } else {
            let z = code.as_z4()?;
            if mode.quadruple {
                quadruple_pdset_z4(z, &pd)?.1
            } else {
                let p = need(mode.power.as_deref(), "--power")?;
                power_extend(z, &pd, p[0], p[1])?.1
            }
        }
    };
    emit(&PdSetFile::from(&pd), args.out.as_deref())
}

fn extend(args: &GenPdset, file: &PdSetFile, code: &AnyCode, pd: &PdSet) -> anyhow::Result<PdSet> {
    let no_matrices = || Error::NotApplicable("the source PD-set carries no matrices".into());
    let mut derivation = pd.derivation.clone();
    match code {
        AnyCode::Binary(c) => {
            let kappa = need(args.kappa, "--kappa")?;
            let ms = file.binary_matrices()?.ok_or_else(no_matrices)?;
            let ms = extend_kappa_binary(&ms, kappa)?;
            let target = HadamardCodeBinary::new(c.m() + kappa as u32)?;
            derivation.push(format!("extend(kappa={kappa})"));
            Ok(pdset_from_binary_matrices(
                &target,
                ms,
                Provenance::Recursive,
                derivation,
            )?)
        }
        AnyCode::Z4(c) => {
            let split = need(args.split.as_deref(), "--split")?;
            if split.len() != 2 {
                bail!(Error::InvalidParameter("--split takes two values I,J".into()));
            }
            let (i, j) = (split[0], split[1]);
            let ms = file.z4_matrices()?.ok_or_else(no_matrices)?;
            let (ms, shape) = extend_kappa_z4(&ms, c.shape(), i, j)?;
            let target = HadamardCodeZ4::new(shape.gamma, shape.delta)?;
            derivation.push(format!("extend(i={i}, j={j})"));
            Ok(pdset_from_z4_matrices(&target, ms, Provenance::Recursive, derivation)?)
        }
    }
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    check: &'a str,
    s: Option<usize>,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    subsets: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    problems: Vec<String>,
}

fn finish(report: &VerifyReport) -> anyhow::Result<()> {
    emit(report, None)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failed.into())
    }
}

fn verify_brute(path: &Path, s: Option<usize>, quaternary: bool, opts: &BruteForceOptions) -> anyhow::Result<()> {
    let file: PdSetFile = read_json(path)?;
    let mut problems = Vec::new();
    if let Some(p) = file.perms.iter().position(|p| p.len() != file.n) {
        bail!(Error::LengthMismatch {
            expected: file.n,
            got: file.perms[p].len()
        });
    }
    if let Some(code) = file.code.as_ref().map(|d| d.build()).transpose()? {
        if code.length() != file.n {
            bail!(Error::LengthMismatch {
                expected: code.length(),
                got: file.n
            });
        }
        for (k, p) in file.perms.iter().enumerate() {
            if !code.is_automorphism(p) {
                problems.push(format!("permutation {} is not an automorphism of the code", k + 1));
            }
        }
    }
    let s = s.or(file.s).unwrap_or(file.perms.len().saturating_sub(1));
    let outcome = if quaternary {
        let q = file
            .quaternary
            .as_ref()
            .ok_or_else(|| Error::NotApplicable("file has no quaternary permutations".into()))?;
        verify_pd_property(file.n / 2, &q.perms, &q.info_set, s, opts)?
    } else {
        verify_pd_property(file.n, &file.perms, &file.info_set, s, opts)?
    };
    finish(&VerifyReport {
        check: if quaternary {
            "brute-force-quaternary"
        } else {
            "brute-force"
        },
        s: Some(s),
        passed: outcome.passed && problems.is_empty(),
        subsets: Some(outcome.subsets),
        witness: outcome.witness,
        problems,
    })
}

fn verify_criterion(path: &Path) -> anyhow::Result<()> {
    let file: PdSetFile = read_json(path)?;
    let code = file.build_code()?;
    let mut problems = Vec::new();
    let (passed, induced) = match &code {
        AnyCode::Binary(c) => {
            let ms = file
                .binary_matrices()?
                .ok_or_else(|| Error::NotApplicable("file carries no matrices".into()))?;
            let ok = verify_criterion_binary(&ms)?;
            (ok, pdset_from_binary_matrices(c, ms, Provenance::Manual, vec![])?)
        }
        AnyCode::Z4(c) => {
            let ms = file
                .z4_matrices()?
                .ok_or_else(|| Error::NotApplicable("file carries no matrices".into()))?;
            let ok = verify_criterion_z4(&ms, c.shape())?;
            (ok, pdset_from_z4_matrices(c, ms, Provenance::Manual, vec![])?)
        }
    };
    if induced.perms != file.perms {
        problems.push("the matrices do not induce the listed permutations".into());
    }
    if induced.info_set != file.info_set {
        problems.push("information set differs from the code's".into());
    }
    finish(&VerifyReport {
        check: "criterion",
        s: Some(induced.perms.len() - 1),
        passed: passed && problems.is_empty(),
        subsets: None,
        witness: None,
        problems,
    })
}

fn load_for_decoding(code: Option<&Path>, pdset: &Path) -> anyhow::Result<(AnyCode, PdSet)> {
    let (_, code_from_pd, pd) = load_pdset(pdset)?;
    if let Some(path) = code {
        let cf: CodeFile = read_json(path)?;
        let c = cf.build()?;
        if c.descriptor() != pd.code {
            bail!(Error::InvalidParameter(format!(
                "{} and {} describe different codes",
                path.display(),
                pdset.display()
            )));
        }
        return Ok((c, pd));
    }
    Ok((code_from_pd, pd))
}

#[derive(Serialize)]
struct DecodeReport {
    status: hadamard_pd::decoder::DecodeStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    codeword: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    perm_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance: Option<usize>,
}

fn decode(code: Option<&Path>, pdset: &Path, word: &str) -> anyhow::Result<()> {
    let (code, pd) = load_for_decoding(code, pdset)?;
    let y = BitVector::parse(word)?;
    let r = perm_decode(&code, &pd, &y)?;
    emit(
        &DecodeReport {
            status: r.status,
            codeword: r.codeword.as_ref().map(BitVector::to_string),
            perm_index: r.perm_index.map(|k| k + 1),
            distance: r.distance,
        },
        None,
    )?;
    if r.is_decoded() {
        Ok(())
    } else {
        Err(Failed.into())
    }
}

fn simulate(
    code: Option<&Path>,
    pdset: &Path,
    weights: &[usize],
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> anyhow::Result<()> {
    let (code, pd) = load_for_decoding(code, pdset)?;
    let run = || simulate_channel(&code, &pd, weights, trials, seed);
    let stats = match threads {
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k).build()?.install(run)?,
        None => run()?,
    };
    emit(&stats, None)
}

fn reproduce(example: Example) -> anyhow::Result<()> {
    let report = match example {
        Example::Example34 => reproduce_example_3_4()?,
        Example::Example58 => reproduce_example_5_8()?,
        Example::G4Table => reproduce_g4_table()?,
    };
    for line in &report.lines {
        say(line);
    }
    if report.ok {
        Ok(())
    } else {
        Err(Failed.into())
    }
}
