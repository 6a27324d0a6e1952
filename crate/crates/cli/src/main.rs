use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fermicomp::circuit::{exponentiate_term, Circuit, GateCount};
use fermicomp::fermion::{Encoder, EncodingKind, FermionOperator};
use fermicomp::hamiltonian::{build_hamiltonian, load_integrals, partition_commuting, IntegralTable};
use fermicomp::pauli::DENSE_CAP;
use fermicomp::sets::BkSets;
use fermicomp::spectral::{chemical_precision_crossing, precision_sweep, sweep_csv, SweepConfig, CHEMICAL_PRECISION};
use fermicomp::trotter::{trotter_circuit, TermOrdering, TrotterSchedule};
use fermicomp::{Error, PauliSum};
use num_complex::Complex64;

const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;

#[derive(Parser)]
#[command(name = "fermicomp", version, about = "Fermion-to-qubit encodings, Trotter circuits and gate accounting")]
struct Cli {
    /// Largest qubit count for dense simulation.
    #[arg(long, global = true, default_value_t = DENSE_CAP)]
    dense_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print parity, update, flip and remainder sets for each index.
    Sets {
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assemble a qubit Hamiltonian from an integral file.
    Hamiltonian {
        #[command(flatten)]
        source: IntegralSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a product of ladder operators, e.g. `--op "0^ 2"`.
    Transform {
        #[arg(long)]
        modes: usize,
        #[arg(long, default_value = "bk")]
        encoding: EncodingKind,
        /// Space-separated mode indices; `^` marks a creation operator.
        #[arg(long)]
        op: String,
        /// Coefficient as `re` or `re,im`.
        #[arg(long, default_value = "1")]
        coeff: String,
        /// Add the adjoint term.
        #[arg(long)]
        hermitian: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gate counts per commuting part and for a Trotter circuit.
    Count {
        #[command(flatten)]
        input: HamiltonianInput,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the Trotter circuit in text form.
    Circuit {
        #[command(flatten)]
        input: HamiltonianInput,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long, default_value_t = 1.0)]
        time: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phase-estimate error against gate count as CSV.
    Sweep {
        #[arg(long)]
        integrals: Option<PathBuf>,
        #[arg(long = "encoding", value_delimiter = ',', default_values = ["bk", "jw"])]
        encodings: Vec<EncodingKind>,
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3, 4])]
        orders: Vec<usize>,
        #[arg(long = "ordering", value_delimiter = ',', default_values = ["naive", "interleaved"])]
        orderings: Vec<TermOrdering>,
        #[arg(long, default_value_t = 1)]
        min_steps: usize,
        #[arg(long, default_value_t = 12)]
        max_steps: usize,
        #[arg(long, default_value_t = 1.0)]
        time: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct IntegralSource {
    /// Integral file; the bundled hydrogen table when omitted.
    #[arg(long)]
    integrals: Option<PathBuf>,
    #[arg(long, default_value = "bk")]
    encoding: EncodingKind,
}

#[derive(Args)]
struct HamiltonianInput {
    /// Pauli-sum file written by `hamiltonian`.
    #[arg(long, conflicts_with = "integrals")]
    hamiltonian: Option<PathBuf>,
    #[command(flatten)]
    source: IntegralSource,
}

#[derive(Args)]
struct ScheduleArgs {
    #[arg(long, default_value_t = 1)]
    order: usize,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, default_value = "naive")]
    ordering: TermOrdering,
}

impl ScheduleArgs {
    fn schedule(&self) -> Result<TrotterSchedule> {
        Ok(TrotterSchedule::new(self.order, self.steps, self.ordering)?)
    }
}

fn read_table(path: Option<&PathBuf>) -> Result<IntegralTable> {
    match path {
        Some(p) => {
            let f = fs::File::open(p).with_context(|| format!("cannot open {}", p.display()))?;
            load_integrals(f).map_err(|e| with_path(e, p))
        }
        None => Ok(IntegralTable::h2_minimal_basis()),
    }
}

fn with_path(e: Error, p: &std::path::Path) -> anyhow::Error {
    anyhow::Error::new(e).context(format!("in {}", p.display()))
}

fn load_hamiltonian(input: &HamiltonianInput) -> Result<PauliSum> {
    match &input.hamiltonian {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            PauliSum::parse_text(&text).map_err(|e| with_path(e, p))
        }
        None => Ok(build_hamiltonian(&read_table(input.source.integrals.as_ref())?, input.source.encoding)?),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn parse_coeff(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| Error::Parse { line: 1, message: format!("bad coefficient {s:?}") });
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(Error::Parse { line: 1, message: format!("bad coefficient {s:?}") }.into()),
    }
}

fn parse_op(s: &str, coeff: Complex64) -> Result<FermionOperator> {
    let mut modes = Vec::new();
    for tok in s.split_whitespace() {
        let (idx, dagger) = match tok.strip_suffix('^') {
            Some(t) => (t, true),
            None => (tok, false),
        };
        let j = idx
            .parse::<usize>()
            .map_err(|_| Error::Parse { line: 1, message: format!("bad ladder operator {tok:?}") })?;
        modes.push((j, dagger));
    }
    if modes.is_empty() {
        bail!(Error::Parse { line: 1, message: "empty operator".into() });
    }
    Ok(FermionOperator::new(modes, coeff))
}

fn count_report(h: &PauliSum, sched: &TrotterSchedule) -> Result<String> {
    let ph = partition_commuting(h);
    let mut s = String::from("part\tterms\tsqg\tcnot\ttotal\n");
    let mut step = GateCount::default();
    for (k, part) in ph.parts().iter().enumerate() {
        let mut c = Circuit::new(h.num_qubits());
        for t in part.strings() {
            c.append(&exponentiate_term(&t, 1.0, h.num_qubits())?)?;
        }
        let g = c.count();
        step = step + g;
        s.push_str(&format!("{k}\t{}\t{}\t{}\t{}\n", part.len(), g.sqg, g.cnot, g.total()));
    }
    s.push_str(&format!("all\t{}\t{}\t{}\t{}\n", h.len(), step.sqg, step.cnot, step.total()));
    let g = trotter_circuit(&ph, sched, 1.0)?.count();
    s.push_str(&format!(
        "circuit order={} steps={} ordering={}\tsqg={}\tcnot={}\ttotal={}\n",
        sched.order(),
        sched.steps(),
        sched.ordering(),
        g.sqg,
        g.cnot,
        g.total()
    ));
    Ok(s)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(DENSE_CAP) {
        bail!(Error::DenseCap { n, cap: cap.min(DENSE_CAP) });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sets { n, out } => emit(out.as_ref(), &BkSets::new(n)?.tabulate()),
        Command::Hamiltonian { source, out } => {
            let h = build_hamiltonian(&read_table(source.integrals.as_ref())?, source.encoding)?;
            emit(out.as_ref(), &h.to_text())
        }
        Command::Transform { modes, encoding, op, coeff, hermitian, out } => {
            let op = parse_op(&op, parse_coeff(&coeff)?)?;
            let enc = Encoder::new(encoding, modes)?;
            let mut s = enc.encode(&op)?;
            if hermitian {
                s = s.add(&enc.encode(&op.adjoint())?)?;
            }
            emit(out.as_ref(), &s.to_text())
        }
        Command::Count { input, schedule, out } => {
            let h = load_hamiltonian(&input)?;
            emit(out.as_ref(), &count_report(&h, &schedule.schedule()?)?)
        }
        Command::Circuit { input, schedule, time, out } => {
            let h = load_hamiltonian(&input)?;
            let c = trotter_circuit(&partition_commuting(&h), &schedule.schedule()?, time)?;
            emit(out.as_ref(), &c.to_text())
        }
        Command::Sweep { integrals, encodings, orders, orderings, min_steps, max_steps, time, out } => {
            let table = read_table(integrals.as_ref())?;
            check_cap(table.num_orbitals(), cli.dense_cap)?;
            let cfg = SweepConfig { orders: orders.clone(), steps: min_steps..=max_steps, orderings: orderings.clone(), time };
            let mut rows = Vec::new();
            let mut summary = String::new();
            for kind in &encodings {
                let ph = partition_commuting(&build_hamiltonian(&table, *kind)?);
                let results = precision_sweep(&ph, &cfg)?;
                for &order in &orders {
                    for &ordering in &orderings {
                        if ordering == TermOrdering::Interleaved && order != 1 {
                            continue;
                        }
                        let line = match chemical_precision_crossing(&results, order, ordering) {
                            Some(r) => format!(
                                "crossing {} order={order} ordering={ordering} steps={} gates={} error={:.3e}",
                                kind.short_name(),
                                r.steps,
                                r.gates.total(),
                                r.error
                            ),
                            None => format!(
                                "crossing {} order={order} ordering={ordering} none within {max_steps} steps",
                                kind.short_name()
                            ),
                        };
                        summary.push_str(&line);
                        summary.push('\n');
                    }
                }
                rows.extend(results.into_iter().map(|r| (kind.short_name(), r)));
            }
            emit(out.as_ref(), &sweep_csv(rows.iter().map(|(k, r)| (*k, r))))?;
            eprintln!("chemical precision threshold {CHEMICAL_PRECISION:e} hartree");
            eprint!("{summary}");
            Ok(())
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. }) => EXIT_PARSE,
        Some(Error::NotHermitian(_) | Error::ComplexCoefficient(_) | Error::Invalid(_)) => EXIT_VALIDATION,
        Some(_) => EXIT_PRECONDITION,
        None => EXIT_OTHER,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    eprintln!("fermicomp {}", env!("CARGO_PKG_VERSION"));
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
