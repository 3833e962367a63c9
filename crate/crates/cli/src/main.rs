//! satq: compile SAT instances into Grover phase-oracle circuits under CNF
//! and e-CNF encodings, lower them to Clifford+T, optionally verify them by
//! exact simulation, and emit OpenQASM or resource reports.
//!
//! Exit codes: 0 success, 2 UNSAT detected with --grover, 3 parse error,
//! 4 capacity exceeded, 5 internal invariant breach, 1 other errors.

use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use satq_core::error::Error;
use satq_core::formula::Formula;
use satq_core::grover::assemble_grover_capped;
use satq_core::mcx::lower;
use satq_core::oracle::synthesize_oracle;
use satq_core::parse::{parse_dimacs, parse_ecnf, parse_expr, SourceFormat};
use satq_core::qasm::{to_qasm, validate_qasm};
use satq_core::report::{
    compare, measure, rows_to_csv, rows_to_json, AccountingMode, ComparisonRow, ResourceEstimate,
};
use satq_core::sim::DEFAULT_SIM_CAP;
use satq_core::transform::{cnf_to_ecnf, expr_to_ecnf, tseitin_encode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    #[value(name = "dimacs-cnf")]
    DimacsCnf,
    #[value(name = "ecnf-text")]
    EcnfText,
    Expr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EncodingArg {
    Cnf,
    Ecnf,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AccountingArg {
    Physical,
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmitArg {
    Qasm,
    #[value(name = "report-csv")]
    ReportCsv,
    #[value(name = "report-json")]
    ReportJson,
    None,
}

#[derive(Debug, Parser)]
#[command(
    name = "satq",
    about = "SAT-to-quantum-oracle compiler (CNF and e-CNF encodings, Clifford+T)"
)]
struct Cli {
    /// Input file(s): DIMACS CNF (.cnf), e-CNF text (.ecnf) or a Boolean
    /// expression (.expr).
    #[arg(long = "input", required = true, num_args = 1..)]
    inputs: Vec<PathBuf>,

    /// Input format; inferred from the file extension when omitted.
    #[arg(long)]
    format: Option<FormatArg>,

    /// Which encoding side(s) to compile. Defaults to the input's own
    /// language (expressions default to ecnf).
    #[arg(long)]
    encoding: Option<EncodingArg>,

    /// Gate accounting for reported counts.
    #[arg(long, default_value = "paper")]
    accounting: AccountingArg,

    /// Artifact to produce.
    #[arg(long, default_value = "none")]
    emit: EmitArg,

    /// Assemble the full Grover circuit instead of the bare oracle.
    #[arg(long)]
    grover: bool,

    /// Grover iteration count: "auto" for ⌊(π/4)√(N/M)⌋ or an explicit k.
    #[arg(long, default_value = "auto")]
    iterations: String,

    /// Externally supplied model count (mandatory when the variable count
    /// exceeds the brute-force cap).
    #[arg(long)]
    models: Option<u64>,

    /// Verify by exact statevector simulation (phase table for oracles,
    /// success probability with --grover).
    #[arg(long)]
    simulate: bool,

    /// Simulation qubit cap (also settable via SATQ_SIM_CAP).
    #[arg(long = "sim-cap")]
    sim_cap: Option<u32>,

    /// Output path for the emitted artifact (stdout when omitted). With
    /// --encoding both and --emit qasm, the encoding name is inserted
    /// before the extension.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Emit unlowered MCX gates as QASM comments instead of failing.
    #[arg(long = "allow-mcx")]
    allow_mcx: bool,

    /// Worker threads across multiple input files.
    #[arg(long, default_value = "1")]
    jobs: NonZeroUsize,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Unsat => 2,
        Error::Parse { .. } => 3,
        Error::Capacity(_) => 4,
        Error::Internal(_) => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if matches!(err, Error::Unsat) {
                println!("UNSAT");
            }
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// One compiled encoding side with its lowered circuit and measurements.
struct CompiledSide {
    kind: &'static str,
    formula: Formula,
    lowered: satq_core::circuit::Circuit,
    estimate: ResourceEstimate,
    grover_summary: Option<GroverSummary>,
}

struct GroverSummary {
    iterations: u64,
    models: u64,
    over_half: bool,
    success_probability: Option<f64>,
}

struct FileResult {
    name: String,
    sides: Vec<CompiledSide>,
    row: Option<ComparisonRow>,
}

fn run(cli: &Cli) -> Result<(), Error> {
    let sim_cap = resolve_sim_cap(cli)?;
    if cli.inputs.len() > 1 && cli.emit == EmitArg::Qasm {
        return Err(Error::Input(
            "--emit qasm supports a single input file".into(),
        ));
    }

    let results = process_inputs(cli, sim_cap)?;

    for result in &results {
        for side in &result.sides {
            let est = &side.estimate;
            println!(
                "[{}] {}: #q={} #CX={} #T={} #D={}",
                side.kind, result.name, est.qubits, est.cx, est.t, est.depth
            );
            if let Some(g) = &side.grover_summary {
                println!("[{}] {}: models M = {}", side.kind, result.name, g.models);
                println!(
                    "[{}] {}: grover iterations k = {}",
                    side.kind, result.name, g.iterations
                );
                if g.over_half {
                    println!(
                        "[{}] {}: note: M exceeds half the search space; the uniform state already favors the models",
                        side.kind, result.name
                    );
                }
                if let Some(p) = g.success_probability {
                    println!(
                        "[{}] {}: success probability = {:.9}",
                        side.kind, result.name, p
                    );
                }
            } else if cli.simulate {
                println!(
                    "[{}] {}: oracle verified: phases match brute force on all {} basis states",
                    side.kind,
                    result.name,
                    1u64 << side.formula.num_vars()
                );
            }
        }
    }

    emit_artifacts(cli, &results)?;
    Ok(())
}

fn resolve_sim_cap(cli: &Cli) -> Result<u32, Error> {
    if let Some(cap) = cli.sim_cap {
        return Ok(cap);
    }
    match std::env::var("SATQ_SIM_CAP") {
        Ok(raw) => raw
            .parse()
            .map_err(|_| Error::Input(format!("invalid SATQ_SIM_CAP value '{raw}'"))),
        Err(_) => Ok(DEFAULT_SIM_CAP),
    }
}

fn process_inputs(cli: &Cli, sim_cap: u32) -> Result<Vec<FileResult>, Error> {
    let jobs = cli.jobs.get().min(cli.inputs.len().max(1));
    if jobs <= 1 {
        return cli
            .inputs
            .iter()
            .map(|p| process_file(cli, p, sim_cap))
            .collect();
    }
    // Static round-robin split; results keyed by index so output order is
    // the input order.
    let mut slots: Vec<Option<Result<FileResult, Error>>> =
        (0..cli.inputs.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in cli
            .inputs
            .iter()
            .enumerate()
            .collect::<Vec<_>>()
            .chunks(cli.inputs.len().div_ceil(jobs))
        {
            let chunk: Vec<(usize, &PathBuf)> = chunk.to_vec();
            handles.push(scope.spawn(move || {
                chunk
                    .into_iter()
                    .map(|(idx, path)| (idx, process_file(cli, path, sim_cap)))
                    .collect::<Vec<_>>()
            }));
        }
        for handle in handles {
            for (idx, result) in handle.join().expect("worker panicked") {
                slots[idx] = Some(result);
            }
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.expect("every input processed"))
        .collect()
}

fn detect_format(cli: &Cli, path: &Path) -> Result<SourceFormat, Error> {
    if let Some(fmt) = cli.format {
        return Ok(match fmt {
            FormatArg::DimacsCnf => SourceFormat::DimacsCnf,
            FormatArg::EcnfText => SourceFormat::EcnfText,
            FormatArg::Expr => SourceFormat::Expr,
        });
    }
    path.extension()
        .and_then(|e| e.to_str())
        .and_then(SourceFormat::from_extension)
        .ok_or_else(|| {
            Error::Input(format!(
                "cannot infer format of '{}'; pass --format",
                path.display()
            ))
        })
}

fn process_file(cli: &Cli, path: &Path, sim_cap: u32) -> Result<FileResult, Error> {
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("input")
        .to_string();
    let text = std::fs::read_to_string(path)?;
    let format = detect_format(cli, path)?;

    // Build the requested encoding sides.
    let encoding = cli.encoding.unwrap_or(match format {
        SourceFormat::DimacsCnf => EncodingArg::Cnf,
        SourceFormat::EcnfText | SourceFormat::Expr => EncodingArg::Ecnf,
    });
    let want_cnf = matches!(encoding, EncodingArg::Cnf | EncodingArg::Both);
    let want_ecnf = matches!(encoding, EncodingArg::Ecnf | EncodingArg::Both);

    let (cnf, ecnf) = match format {
        SourceFormat::DimacsCnf => {
            let f = parse_dimacs(&text)?;
            let e = want_ecnf.then(|| cnf_to_ecnf(&f)).transpose()?;
            (Some(f), e)
        }
        SourceFormat::EcnfText => {
            if want_cnf {
                return Err(Error::Input(
                    "e-CNF inputs have no CNF lowering; use --encoding ecnf".into(),
                ));
            }
            (None, Some(parse_ecnf(&text)?))
        }
        SourceFormat::Expr => {
            let expr = parse_expr(text.trim())?;
            let f = want_cnf
                .then(|| tseitin_encode(&expr).map(|r| r.formula))
                .transpose()?;
            let e = want_ecnf
                .then(|| expr_to_ecnf(&expr).map(|r| r.formula))
                .transpose()?;
            (f, e)
        }
    };

    let mode = match cli.accounting {
        AccountingArg::Physical => AccountingMode::Physical,
        AccountingArg::Paper => AccountingMode::Paper,
    };

    let mut sides = Vec::new();
    if let Some(f) = &cnf {
        if want_cnf {
            sides.push(compile_side(
                cli,
                "cnf",
                Formula::Cnf(f.clone()),
                mode,
                sim_cap,
            )?);
        }
    }
    if let Some(f) = &ecnf {
        if want_ecnf {
            sides.push(compile_side(
                cli,
                "ecnf",
                Formula::Ecnf(f.clone()),
                mode,
                sim_cap,
            )?);
        }
    }

    let row = match (&cnf, &ecnf, encoding) {
        (Some(f_cnf), Some(f_ecnf), EncodingArg::Both) => {
            Some(compare(&name, f_cnf, f_ecnf, mode)?)
        }
        _ => None,
    };

    Ok(FileResult { name, sides, row })
}

fn parse_iterations(raw: &str) -> Result<Option<u64>, Error> {
    if raw == "auto" {
        return Ok(None);
    }
    raw.parse().map(Some).map_err(|_| {
        Error::Input(format!(
            "--iterations expects 'auto' or an integer, got '{raw}'"
        ))
    })
}

fn compile_side(
    cli: &Cli,
    kind: &'static str,
    formula: Formula,
    mode: AccountingMode,
    sim_cap: u32,
) -> Result<CompiledSide, Error> {
    let iterations = parse_iterations(&cli.iterations)?;
    let (lowered, grover_summary) = if cli.grover {
        let g = assemble_grover_capped(
            &formula,
            cli.models,
            iterations,
            satq_core::formula::DEFAULT_BRUTE_FORCE_CAP,
        )?;
        let lowered = lower(&g.circuit)?;
        let success_probability = if cli.simulate {
            let total = lowered.registry().total();
            if total as u32 > sim_cap {
                return Err(Error::Capacity(format!(
                    "simulation needs {total} qubits, cap is {sim_cap}"
                )));
            }
            let state = satq_core::sim::run_capped(&lowered, 0, sim_cap)?;
            let models = formula.count_models()?.assignments;
            let var_mask = (1u64 << formula.num_vars()) - 1;
            Some(state.probability_mass(|b| models.contains(&(b & var_mask))))
        } else {
            None
        };
        let summary = GroverSummary {
            iterations: g.plan.iterations,
            models: g.plan.models,
            over_half: g.plan.over_half,
            success_probability,
        };
        (lowered, Some(summary))
    } else {
        let oracle = synthesize_oracle(&formula)?;
        let lowered = lower(&oracle.circuit)?;
        if cli.simulate {
            verify_oracle_phases(&formula, &lowered, sim_cap)?;
        }
        (lowered, None)
    };

    let estimate = measure(&lowered, mode)?;
    Ok(CompiledSide {
        kind,
        formula,
        lowered,
        estimate,
        grover_summary,
    })
}

/// Simulates the lowered oracle on every variable basis state and checks the
/// phase table against classical evaluation.
fn verify_oracle_phases(
    formula: &Formula,
    lowered: &satq_core::circuit::Circuit,
    sim_cap: u32,
) -> Result<(), Error> {
    let total = lowered.registry().total();
    if total as u32 > sim_cap {
        return Err(Error::Capacity(format!(
            "simulation needs {total} qubits, cap is {sim_cap}"
        )));
    }
    let n = formula.num_vars();
    if n > 20 {
        return Err(Error::Capacity(format!(
            "phase verification enumerates 2^{n} basis states; too many"
        )));
    }
    for mask in 0..(1u64 << n) {
        let state = satq_core::sim::run_capped(lowered, mask, sim_cap)?;
        let expected = if formula.eval_mask(mask) { -1.0 } else { 1.0 };
        let amp = state.amplitude(mask);
        if (amp.re - expected).abs() > 1e-9 || amp.im.abs() > 1e-9 {
            return Err(Error::Internal(format!(
                "oracle phase mismatch on basis state {mask}: got {amp}"
            )));
        }
    }
    Ok(())
}

fn emit_artifacts(cli: &Cli, results: &[FileResult]) -> Result<(), Error> {
    match cli.emit {
        EmitArg::None => Ok(()),
        EmitArg::Qasm => {
            let result = &results[0];
            if result.sides.len() > 1 && cli.output.is_none() {
                return Err(Error::Input(
                    "--emit qasm with --encoding both needs --output".into(),
                ));
            }
            for side in &result.sides {
                let qasm = to_qasm(&side.lowered, cli.allow_mcx)?;
                validate_qasm(&qasm, side.lowered.registry().total())?;
                match &cli.output {
                    Some(path) => {
                        let path = if result.sides.len() > 1 {
                            insert_suffix(path, side.kind)
                        } else {
                            path.clone()
                        };
                        std::fs::write(&path, qasm)?;
                        println!("wrote {}", path.display());
                    }
                    None => print!("{qasm}"),
                }
            }
            Ok(())
        }
        EmitArg::ReportCsv | EmitArg::ReportJson => {
            let rows: Vec<ComparisonRow> = results.iter().filter_map(|r| r.row.clone()).collect();
            if rows.is_empty() {
                return Err(Error::Input(
                    "reports compare encodings; run with --encoding both".into(),
                ));
            }
            let artifact = if cli.emit == EmitArg::ReportCsv {
                rows_to_csv(&rows)
            } else {
                rows_to_json(&rows)
            };
            match &cli.output {
                Some(path) => {
                    std::fs::write(path, artifact)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{artifact}"),
            }
            Ok(())
        }
    }
}

/// `report.qasm` + `cnf` → `report.cnf.qasm`.
fn insert_suffix(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("qasm");
    path.with_file_name(format!("{stem}.{tag}.{ext}"))
}
