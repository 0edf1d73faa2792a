//! `ostq` — construct Steiner triple systems, orient them, build the
//! associated quasigroup extensions, check identities, and run the
//! quasigroup-extension cipher.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use ostq::format;
use ostq_core::cipher;
use ostq_core::extension::{
    canonical_oriented_steiner_quasigroup, corollary1_isomorphisms, oriented_steiner_quasigroup,
    ExtensionKind,
};
use ostq_core::laws::{check_law, regular_orbits, regular_permutations, LawId, Side};
use ostq_core::quasigroup::steiner_quasigroup;
use ostq_core::sts::{construct_sts, Sign};

#[derive(Parser)]
#[command(name = "ostq", version, about = "Oriented Steiner triple systems, their quasigroups, and a quasigroup-extension cipher")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the deterministic Steiner triple system on n points.
    GenSts {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Attach an orientation bit vector to a system (one bit per block).
    Orient {
        #[arg(long = "in")]
        input: PathBuf,
        /// Bitstring such as 1010101, leftmost bit orients block 0.
        #[arg(long)]
        bits: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Steiner quasigroup of a system.
    BuildQuasigroup {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build an extension table from an oriented system.
    BuildExtension {
        /// plus | minus | canonical
        #[arg(long)]
        kind: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check quasigroup identities on a table, reporting witnesses.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        /// `all` or a comma-separated list of law identifiers.
        #[arg(long)]
        laws: String,
    },
    /// Enumerate the regular permutations of a table and their orbits.
    Regular {
        #[arg(long = "in")]
        input: PathBuf,
        /// left | right
        #[arg(long)]
        side: String,
    },
    /// Verify the isomorphisms between the three order-3 extensions of an
    /// oriented system sharing its factor system.
    Corollary1 {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Generate a key pair from a seeded random orientation.
    Keygen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// canonical | plus | minus
        #[arg(long, default_value = "canonical")]
        kind: String,
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "priv")]
        private: PathBuf,
    },
    /// Encrypt a message with a public key; fresh k/c strings are drawn
    /// from --seed unless the key already carries strings of matching
    /// length.
    Encrypt {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long)]
        msg: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Where to write the broadcast bundle (public key with the k and c
        /// strings used); required when fresh strings are drawn.
        #[arg(long)]
        session_out: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decrypt a ciphertext with the broadcast bundle and the private key.
    Decrypt {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "priv")]
        private: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the number of orientation keys, 2^(n(n-1)/6).
    Keyspace {
        #[arg(long)]
        n: usize,
    },
}

fn main() {
    reset_sigpipe();
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

// die quietly when a downstream pipe closes, like other line-oriented tools
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_system(path: &Path) -> Result<format::SystemFile> {
    let text = read_file(path)?;
    format::parse_system(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_oriented(path: &Path) -> Result<ostq_core::OrientedTripleSystem> {
    match load_system(path)? {
        format::SystemFile::Oriented(ots) => Ok(ots),
        format::SystemFile::Plain(_) => {
            bail!("{}: system is not oriented (oriented=1 required)", path.display())
        }
    }
}

fn parse_kind(token: &str) -> Result<ExtensionKind> {
    token
        .parse::<ExtensionKind>()
        .map_err(|()| anyhow!("unknown kind `{token}` (expected plus, minus, canonical)"))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::GenSts { n, out } => {
            let ts = construct_sts(n)?;
            emit(out.as_ref(), &format::write_system(&ts))
        }
        Command::Orient { input, bits, out } => {
            let bits = format::parse_bits(&bits).map_err(|e| anyhow!("--bits: {}", e.message))?;
            let ts = load_system(&input)?;
            let ots = ts.base().orient(&bits)?;
            emit(out.as_ref(), &format::write_oriented_system(&ots))
        }
        Command::BuildQuasigroup { input, out } => {
            let ts = load_system(&input)?;
            let q = steiner_quasigroup(ts.base());
            emit(out.as_ref(), &format::write_quasigroup(&q))
        }
        Command::BuildExtension { kind, input, out } => {
            let ots = load_oriented(&input)?;
            let e = match parse_kind(&kind)? {
                ExtensionKind::Plus => oriented_steiner_quasigroup(&ots, Sign::Plus),
                ExtensionKind::Minus => oriented_steiner_quasigroup(&ots, Sign::Minus),
                ExtensionKind::Canonical => canonical_oriented_steiner_quasigroup(&ots),
                ExtensionKind::Custom => {
                    bail!("kind `custom` is not a buildable construction here")
                }
            };
            emit(out.as_ref(), &format::write_extension(&e))
        }
        Command::Check { input, laws } => {
            let text = read_file(&input)?;
            let table = format::parse_table(&text).map_err(|e| anyhow!("{}: {e}", input.display()))?;
            let selected: Vec<LawId> = if laws == "all" {
                LawId::ALL.to_vec()
            } else {
                laws.split(',')
                    .map(|token| {
                        token
                            .trim()
                            .parse::<LawId>()
                            .map_err(|()| anyhow!("unknown law `{token}`"))
                    })
                    .collect::<Result<_>>()?
            };
            for law in selected {
                let report = check_law(table.table(), law)?;
                let witness = match &report.witness {
                    Some(w) => {
                        let parts: Vec<String> = w.iter().map(usize::to_string).collect();
                        format!("({})", parts.join(","))
                    }
                    None => "-".to_string(),
                };
                println!("law={} holds={} witness={}", report.law, report.holds, witness);
            }
            Ok(())
        }
        Command::Regular { input, side } => {
            let side: Side = side
                .parse()
                .map_err(|()| anyhow!("unknown side `{side}` (expected left or right)"))?;
            let text = read_file(&input)?;
            let table = format::parse_table(&text).map_err(|e| anyhow!("{}: {e}", input.display()))?;
            let group = regular_permutations(table.table(), side)?;
            println!("side={} order={} cyclic={}", group.side, group.order(), group.cyclic);
            match table.extension() {
                Some(e) => {
                    let report = regular_orbits(e, side);
                    for orbit in &report.orbits {
                        let parts: Vec<String> = orbit.iter().map(usize::to_string).collect();
                        println!("orbit {}", parts.join(" "));
                    }
                    println!(
                        "congruence_classes={}",
                        if report.matches_congruence_classes { "equal" } else { "different" }
                    );
                }
                None => {
                    for orbit in group.orbits(table.table().order()) {
                        let parts: Vec<String> = orbit.iter().map(usize::to_string).collect();
                        println!("orbit {}", parts.join(" "));
                    }
                }
            }
            Ok(())
        }
        Command::Corollary1 { input } => {
            let ots = load_oriented(&input)?;
            let report = corollary1_isomorphisms(&ots);
            println!("corollary1 n={} order={}", ots.n(), report.z3_extension.order());
            println!("z3_to_k3 verified={}", report.z3_to_k3.is_ok());
            println!("q3_to_z3 verified={}", report.q3_to_z3.is_ok());
            if !report.verified() {
                bail!("isomorphism verification failed");
            }
            Ok(())
        }
        Command::Keygen { n, seed, kind, public, private } => {
            let kind = parse_kind(&kind)?;
            let (pk, sk) = cipher::keygen_sts(n, seed, kind)?;
            fs::write(&public, format::write_public_key(&pk))
                .with_context(|| format!("writing {}", public.display()))?;
            fs::write(&private, format::write_private_key(&sk))
                .with_context(|| format!("writing {}", private.display()))?;
            Ok(())
        }
        Command::Encrypt { public, msg, seed, session_out, out } => {
            let pk = format::parse_public_key(&read_file(&public)?)
                .map_err(|e| anyhow!("{}: {e}", public.display()))?;
            let message = format::parse_indices(&read_file(&msg)?)
                .map_err(|e| anyhow!("{}: {e}", msg.display()))?;
            let session = if pk.k_string.len() == message.len() && pk.c_string.len() == message.len()
            {
                pk
            } else {
                let seed = seed.ok_or_else(|| {
                    anyhow!(
                        "public key carries no k/c strings for a message of length {}; \
                         pass --seed to draw fresh ones",
                        message.len()
                    )
                })?;
                let session = pk.with_fresh_strings(message.len(), seed);
                let bundle = session_out.as_ref().ok_or_else(|| {
                    anyhow!("--session-out is required when fresh k/c strings are drawn")
                })?;
                fs::write(bundle, format::write_public_key(&session))
                    .with_context(|| format!("writing {}", bundle.display()))?;
                session
            };
            let ct = cipher::encrypt_with_table(&message, &session)?;
            emit(out.as_ref(), &format::write_indices(&ct.a_string))
        }
        Command::Decrypt { public, private, ct, out } => {
            let pk = format::parse_public_key(&read_file(&public)?)
                .map_err(|e| anyhow!("{}: {e}", public.display()))?;
            let sk = format::parse_private_key(&read_file(&private)?)
                .map_err(|e| anyhow!("{}: {e}", private.display()))?;
            let a_string = format::parse_indices(&read_file(&ct)?)
                .map_err(|e| anyhow!("{}: {e}", ct.display()))?;
            let recovered = cipher::decrypt(&cipher::Ciphertext { a_string }, &pk, &sk)?;
            emit(out.as_ref(), &format::write_indices(&recovered))
        }
        Command::Keyspace { n } => {
            println!("{}", cipher::keyspace_size(n)?);
            Ok(())
        }
    }
}
