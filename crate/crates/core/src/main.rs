//! `panstego` command-line front end.
//!
//! Exit status: 0 on success, 2 on validation or I/O errors, 3 when `decode`
//! finds no payload in the image.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use panstego::pangram::strip_line_terminator;
use panstego::{
    capacity, compare, decode, encode, read_bmp, write_bmp, BmpError, EncodeOptions, EngineError,
    MatchMode, Pangram, PangramError, SeedSource,
};

#[derive(Parser)]
#[command(
    name = "panstego",
    version,
    about = "Hide text in a BMP using a pangram as the index space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hide a message in a cover image
    Encode(EncodeArgs),
    /// Recover a message from a stego image
    Decode(DecodeArgs),
    /// Print how many characters a cover image can carry
    Capacity {
        #[arg(long)]
        cover: PathBuf,
    },
    /// Report the distortion between a cover and a stego image
    Inspect {
        #[arg(long)]
        stego: PathBuf,
        #[arg(long)]
        cover: PathBuf,
    },
}

#[derive(Args)]
struct EncodeArgs {
    /// UTF-8 pangram file
    #[arg(long)]
    pangram: PathBuf,
    /// 24-bit uncompressed BMP
    #[arg(long)]
    cover: PathBuf,
    /// Where to write the stego BMP
    #[arg(long)]
    out: PathBuf,
    #[arg(
        long,
        conflicts_with = "message_file",
        required_unless_present = "message_file"
    )]
    message: Option<String>,
    #[arg(long)]
    message_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    match_mode: Mode,
    /// Seed for the deterministic SplitMix64 seed generator
    #[arg(long, conflicts_with = "seeds")]
    rng_seed: Option<u64>,
    /// Explicit comma-separated seed indexes, one per message character
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<usize>>,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    pangram: PathBuf,
    #[arg(long)]
    stego: PathBuf,
    /// Write the message here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Fold,
}

impl From<Mode> for MatchMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => MatchMode::Exact,
            Mode::Fold => MatchMode::CaseInsensitive,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: not valid UTF-8", .0.display())]
    NotUtf8(PathBuf),
    #[error("bmp: {}: {source}", path.display())]
    Bmp { path: PathBuf, source: BmpError },
    #[error("pangram: {}: {source}", path.display())]
    Pangram { path: PathBuf, source: PangramError },
    #[error("engine: {0}")]
    Engine(#[from] EngineError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine(e) if e.is_no_payload() => 3,
            _ => 2,
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|_| CliError::NotUtf8(path.to_owned()))
}

fn load_pangram(path: &Path) -> Result<Pangram, CliError> {
    Pangram::from_file_contents(&read_text(path)?).map_err(|source| CliError::Pangram {
        path: path.to_owned(),
        source,
    })
}

fn load_bmp(path: &Path) -> Result<panstego::Rgb24Image, CliError> {
    read_bmp(path).map_err(|source| CliError::Bmp {
        path: path.to_owned(),
        source,
    })
}

fn run_encode(args: EncodeArgs) -> Result<(), CliError> {
    let pangram = load_pangram(&args.pangram)?;
    let cover = load_bmp(&args.cover)?;
    let message = match (&args.message, &args.message_file) {
        (Some(m), _) => m.clone(),
        (None, Some(path)) => strip_line_terminator(&read_text(path)?).to_owned(),
        (None, None) => unreachable!("clap requires one message source"),
    };
    let seeds = match (args.rng_seed, args.seeds) {
        (Some(seed), _) => SeedSource::deterministic(seed),
        (None, Some(list)) => SeedSource::explicit(list),
        (None, None) => SeedSource::System,
    };
    let mut opts = EncodeOptions::new(args.match_mode.into(), seeds);
    let encoded = encode(&message, &pangram, &cover, &mut opts)?;
    write_bmp(&args.out, &encoded.stego).map_err(|source| CliError::Bmp {
        path: args.out.clone(),
        source,
    })?;
    println!("pairs={}", encoded.pairs.len());
    println!("capacity_used={}/{}", encoded.pairs.len(), capacity(&cover));
    Ok(())
}

fn run_decode(args: DecodeArgs) -> Result<(), CliError> {
    let pangram = load_pangram(&args.pangram)?;
    let stego = load_bmp(&args.stego)?;
    let message = decode(&stego, &pangram)?;
    match args.out {
        Some(path) => fs::write(&path, message).map_err(|source| CliError::Io { path, source }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(message.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Encode(args) => run_encode(args),
        Command::Decode(args) => run_decode(args),
        Command::Capacity { cover } => {
            println!("{}", capacity(&load_bmp(&cover)?));
            Ok(())
        }
        Command::Inspect { stego, cover } => {
            let report = compare(&load_bmp(&cover)?, &load_bmp(&stego)?)?;
            println!("bytes_changed={}", report.bytes_changed);
            println!("max_channel_delta={}", report.max_channel_delta);
            println!("mean_squared_error={}", report.mean_squared_error);
            println!("psnr_db={}", report.psnr_db);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if e.exit_code() == 3 {
                eprintln!("panstego: no payload detected: {e}");
            } else {
                eprintln!("panstego: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
