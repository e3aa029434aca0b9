//! `rnlu`: synthesize, simulate, compare and benchmark sequence-generating
//! registers.
//!
//! Exit codes: 0 on success, 2 for usage and parse errors, 3 for domain
//! errors (capacity, degenerate state, failed verification).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rnlu_core::baselines::{
    du10_rnlu, du11_rnlu, lfsr_register, max_order_complexity, nlfsr_from_windows,
};
use rnlu_core::bench::{self, BenchConfig, Method};
use rnlu_core::bitseq::parse_sequence;
use rnlu_core::blif::emit_blif;
use rnlu_core::boolfn::{FactorOptions, MinimizeOptions};
use rnlu_core::extragen::{parse_state_bits, GeneratorSpec};
use rnlu_core::{
    construct_rnlu, BitSequence, ConstructOptions, CostModel, Description, Error, Register,
};

#[derive(Parser)]
#[command(
    name = "rnlu",
    version,
    about = "Registers with non-linear update for binary sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a register for a sequence and write its description.
    Synth(SynthArgs),
    /// Run a register description and print the generated bits.
    Sim(SimArgs),
    /// Build and size every construction for one sequence.
    Compare(CompareArgs),
    /// Measure mean sizes over random sequences and write CSV.
    Bench(BenchArgs),
    /// Convert a register description to a BLIF netlist.
    EmitBlif(BlifArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SequenceInput {
    /// Sequence given inline, e.g. "1001 0010".
    #[arg(long)]
    seq: Option<String>,
    /// File holding the sequence.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct CostArgs {
    #[arg(long, default_value_t = 1.5)]
    alpha: f64,
    /// Gates per storage element.
    #[arg(long, default_value_t = 4.0)]
    beta: f64,
    /// Factor without replacing XOR patterns by XOR gates.
    #[arg(long)]
    no_xor_detect: bool,
    /// Share gates between the updating functions of one register.
    #[arg(long)]
    share_gates: bool,
}

impl CostArgs {
    fn cost(&self) -> Result<CostModel, Error> {
        CostModel::new(self.alpha, self.beta)
    }

    fn factor(&self) -> FactorOptions {
        FactorOptions {
            xor_detect: !self.no_xor_detect,
            share: self.share_gates,
            ..Default::default()
        }
    }
}

#[derive(Args)]
struct SynthArgs {
    #[command(flatten)]
    input: SequenceInput,
    /// Bits emitted per clock cycle.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    p: u64,
    #[arg(long, default_value = "presented")]
    method: Method,
    /// `lfsr:<polynomial>` or `counter`.
    #[arg(long)]
    generator: Option<GeneratorSpec>,
    /// Initial generator state, most significant stage first.
    #[arg(long)]
    g0: Option<String>,
    /// Take outputs from the updating functions instead of output stages.
    #[arg(long)]
    strip_output_stages: bool,
    #[command(flatten)]
    cost: CostArgs,
    /// Description file; printed after the report when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimArgs {
    /// Register description file.
    description: PathBuf,
    /// Clock cycles; enough for the target length by default.
    #[arg(long)]
    cycles: Option<usize>,
    /// Initial state, stage 0 first.
    #[arg(long)]
    init: Option<String>,
    /// Drop bits beyond the target length.
    #[arg(long)]
    trim: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    input: SequenceInput,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    p: u64,
    #[command(flatten)]
    cost: CostArgs,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated ascending lengths.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "256,512,1024,2048,4096,8192"
    )]
    lengths: Vec<usize>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    p: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Comma-separated methods.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "presented,du10,du11,lfsr_bm,nlfsr_moc"
    )]
    method: Vec<Method>,
    /// Longest sequence for which NLFSRs are built.
    #[arg(long, default_value_t = 4096)]
    nlfsr_max_n: usize,
    #[command(flatten)]
    cost: CostArgs,
    /// CSV file; metadata goes next to it with a `.meta.json` suffix.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BlifArgs {
    /// Register description file.
    description: PathBuf,
    #[arg(long, default_value = "rnlu")]
    model: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_parse_error() { 2 } else { 3 },
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: 2, message }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: 3,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn sequence(input: &SequenceInput) -> Result<BitSequence, Failure> {
    let text = match (&input.seq, &input.input) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => read(path)?,
        (None, None) => unreachable!("clap requires one input"),
    };
    Ok(parse_sequence(&text)?)
}

fn bits(text: &str) -> Result<Vec<bool>, Failure> {
    text.trim()
        .chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(usage(format!("invalid state bit {c:?} at position {i}"))),
        })
        .collect()
}

fn synth(a: &SynthArgs) -> Result<(), Failure> {
    let seq = sequence(&a.input)?;
    let p = a.p as usize;
    let cm = a.cost.cost()?;
    let factor = a.cost.factor();
    let min = MinimizeOptions::default();
    let mut report = String::new();
    let description = if a.method == Method::Presented {
        let opts = ConstructOptions {
            generator: a.generator.clone(),
            g0: a.g0.as_deref().map(parse_state_bits).transpose()?,
            minimize: min,
        };
        let mut r = construct_rnlu(&seq, p, &opts)?;
        if a.strip_output_stages {
            r = r.strip_output_stages();
        }
        r.verify(&seq)?;
        let size = r.size(&cm, &factor);
        report.push_str(&format!(
            "k = {}\np = {}\nr = {}\nm = {}\npad = {}\ngenerator = {}\ng0 = {}\ndon't-care rows = {}\n",
            r.stage_count(),
            r.p(),
            r.r(),
            r.m(),
            r.pad_count(),
            r.generator(),
            rnlu_core::extragen::state_bits(r.g0(), r.r()),
            r.dont_care_count(),
        ));
        report.push_str(&format!(
            "size = {} (storage {} x beta {} + logic {})\nverified = yes\n\n{}",
            size.total,
            size.storage_elements,
            cm.beta,
            size.logic,
            r.defining_table_text()
        ));
        Description::from_rnlu(&r)
    } else {
        if a.strip_output_stages || a.generator.is_some() || a.g0.is_some() {
            return Err(usage(
                "--generator, --g0 and --strip-output-stages apply to the presented method only"
                    .into(),
            ));
        }
        let reg = match a.method {
            Method::Du10 if p == 1 => du10_rnlu(&seq, &min)?,
            Method::Du11 => du11_rnlu(&seq, p, &min)?,
            Method::LfsrBm if p == 1 => lfsr_register(&seq)?,
            Method::NlfsrMoc if p == 1 => {
                nlfsr_from_windows(&seq, max_order_complexity(&seq), &min)?
            }
            m => return Err(usage(format!("{m} emits one bit per cycle; use --p 1"))),
        };
        reg.verify(&seq)?;
        let size = reg.size(&cm, &factor);
        report.push_str(&format!(
            "k = {}\np = {}\nsize = {} (storage {} x beta {} + logic {})\nverified = yes\n",
            reg.stage_count(),
            reg.parallelism(),
            size.total,
            size.storage_elements,
            cm.beta,
            size.logic
        ));
        Description::from_register(a.method.name(), reg, seq.len())
    };
    print!("{report}");
    let text = description.to_string();
    match &a.out {
        Some(path) => write(path, &text),
        None => {
            println!("\n{text}");
            Ok(())
        }
    }
}

fn sim(a: &SimArgs) -> Result<(), Failure> {
    let d = Description::parse(&read(&a.description)?)?;
    let init = a.init.as_deref().map(bits).transpose()?;
    let cycles = a.cycles.unwrap_or_else(|| d.cycles());
    let out = d.simulate(init.as_deref(), cycles)?;
    let out = if a.trim && out.len() > d.length && d.length > 0 {
        out.truncated(d.length)?
    } else {
        out
    };
    println!("{out}");
    Ok(())
}

fn compare(a: &CompareArgs) -> Result<(), Failure> {
    let seq = sequence(&a.input)?;
    let p = a.p as usize;
    let cm = a.cost.cost()?;
    let factor = a.cost.factor();
    let min = MinimizeOptions::default();
    println!(
        "{:<10} {:>7} {:>12} {:>12}  status",
        "method", "stages", "logic", "total"
    );
    let mut failed = false;
    for method in Method::ALL {
        if !method.measurable(p) {
            println!(
                "{:<10} {:>7} {:>12} {:>12}  skipped (one bit per cycle)",
                method.name(),
                "-",
                "-",
                "-"
            );
            continue;
        }
        match bench::measure(method, &seq, p, &cm, &factor, &min) {
            Ok(m) => println!(
                "{:<10} {:>7} {:>12} {:>12}  verified",
                method.name(),
                m.stages,
                m.logic,
                m.total
            ),
            Err(e) => {
                failed = true;
                println!(
                    "{:<10} {:>7} {:>12} {:>12}  error: {e}",
                    method.name(),
                    "-",
                    "-",
                    "-"
                );
            }
        }
    }
    if failed {
        return Err(Failure {
            code: 3,
            message: "at least one construction failed".into(),
        });
    }
    Ok(())
}

fn run_bench(a: &BenchArgs) -> Result<(), Failure> {
    let cfg = BenchConfig {
        lengths: a.lengths.clone(),
        p: a.p as usize,
        trials: a.trials as usize,
        seed: a.seed,
        cost: a.cost.cost()?,
        methods: a.method.clone(),
        factor: a.cost.factor(),
        minimize: MinimizeOptions::default(),
        nlfsr_max_n: a.nlfsr_max_n,
    };
    let rows = bench::run_benchmark(&cfg)?;
    let csv = bench::emit_csv(&rows)?;
    match &a.out {
        Some(path) => {
            write(path, &csv)?;
            let mut meta = path.as_os_str().to_owned();
            meta.push(".meta.json");
            write(Path::new(&meta), &bench::metadata_json(&cfg))
        }
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn blif(a: &BlifArgs) -> Result<(), Failure> {
    let d = Description::parse(&read(&a.description)?)?;
    let text = emit_blif(&d, &a.model);
    match &a.out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Synth(a) => synth(a),
        Command::Sim(a) => sim(a),
        Command::Compare(a) => compare(a),
        Command::Bench(a) => run_bench(a),
        Command::EmitBlif(a) => blif(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
