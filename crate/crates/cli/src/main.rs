use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use monvar::lattice::{check_implications, elements_with, has_property, ElementProperty, FiniteLattice};
use monvar::rewrite::parse_certificate;
use monvar::variety::{isoterm_for, parse_handle, satisfies};
use monvar::verify::{run_scenario, Scenario};
use monvar::{
    derive, enumerate_class, parse_word, verify_certificate, ClassEnumeration, DerivationOutcome, Identity,
    Presentation, SearchBounds, Word,
};

#[derive(Parser)]
#[command(name = "monvar", version, about = "Identities, derivations and varieties of monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BoundArgs {
    /// Longest word the search may visit.
    #[arg(long)]
    max_len: Option<usize>,
    /// Maximum derivation length.
    #[arg(long)]
    max_depth: Option<usize>,
    /// Maximum number of distinct words visited.
    #[arg(long)]
    max_states: Option<usize>,
}

impl BoundArgs {
    fn resolve(self, defaults: SearchBounds) -> Result<SearchBounds> {
        let b = SearchBounds::new(
            self.max_len.unwrap_or(defaults.max_word_length),
            self.max_depth.unwrap_or(defaults.max_depth),
            self.max_states.unwrap_or(defaults.max_states),
        )?;
        Ok(b)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Search for a derivation of LHS = RHS; exit 1 if none is found.
    Derive {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Enumerate the class of a word under a presentation.
    Class {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Is WORD an isoterm for the variety?
    Isoterm {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Does the variety satisfy LHS = RHS?
    Satisfies {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Special elements of a lattice given as JSON
    /// (`{"elements": [...], "covers": [[lower, upper], ...]}`).
    Lattice {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, requires = "property", conflicts_with_all = ["table", "implications"])]
        element: Option<String>,
        #[arg(long, requires = "element")]
        property: Option<String>,
        /// Element-by-property table.
        #[arg(long, conflicts_with = "implications")]
        table: bool,
        /// Check the implications between properties.
        #[arg(long)]
        implications: bool,
        /// Print the table as CSV rows `element,property,value`.
        #[arg(long, requires = "table")]
        csv: bool,
    },
    /// Run verification scenarios (all of them when none is named).
    Verify {
        scenario: Option<String>,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Replay a derivation certificate file against a presentation.
    Check {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_system(path: &Path) -> Result<Presentation> {
    Presentation::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn word(text: &str) -> Result<Word> {
    parse_word(text).with_context(|| format!("invalid word '{text}'"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Derive { system, lhs, rhs, bounds } => {
            let sigma = load_system(&system)?;
            let (u, v) = (word(&lhs)?, word(&rhs)?);
            let bounds = bounds.resolve(SearchBounds::default_for(&sigma, &[&u, &v]))?;
            match derive(&sigma, &u, &v, &bounds)? {
                DerivationOutcome::Proved(cert) => {
                    println!("Proved in {} steps", cert.len());
                    print!("{}", cert.annotated(&sigma));
                    Ok(ExitCode::SUCCESS)
                }
                DerivationOutcome::NotFoundWithinBounds => {
                    println!("NotFoundWithinBounds");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Class { system, word: w, bounds } => {
            let sigma = load_system(&system)?;
            let w = word(&w)?;
            let bounds = bounds.resolve(SearchBounds::default_for(&sigma, &[&w]))?;
            let out = enumerate_class(&w, &sigma, &bounds)?;
            let label = match out {
                ClassEnumeration::Complete(_) => "Complete",
                ClassEnumeration::CapExceeded(_) => "CapExceeded (words found so far)",
            };
            println!("{label}: {} words", out.words().len());
            for member in out.words() {
                println!("{member}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Isoterm { variety, word: w, bounds } => {
            let h = parse_handle(&variety)?;
            let w = word(&w)?;
            let bounds = bounds.resolve(h.default_bounds(&[&w]))?;
            println!("{}", isoterm_for(&h, &w, &bounds));
            Ok(ExitCode::SUCCESS)
        }
        Command::Satisfies { variety, lhs, rhs, bounds } => {
            let h = parse_handle(&variety)?;
            let (u, v) = (word(&lhs)?, word(&rhs)?);
            let bounds = bounds.resolve(h.default_bounds(&[&u, &v]))?;
            println!("{}", satisfies(&h, &Identity::new(u, v), &bounds));
            Ok(ExitCode::SUCCESS)
        }
        Command::Lattice { file, element, property, table, implications, csv } => {
            let l = FiniteLattice::from_json(&read(&file)?).with_context(|| format!("loading {}", file.display()))?;
            lattice(&l, element, property, table, implications, csv)
        }
        Command::Verify { scenario, report } => {
            let scenarios = match scenario {
                Some(name) => vec![name.parse::<Scenario>()?],
                None => Scenario::ALL.to_vec(),
            };
            let mut text = String::new();
            let mut ok = true;
            for s in scenarios {
                let r = run_scenario(s);
                ok &= r.status().is_success();
                text.push_str(&r.to_string());
                text.push('\n');
            }
            print!("{text}");
            if let Some(path) = report {
                fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Check { system, certificate } => {
            let sigma = load_system(&system)?;
            let cert = parse_certificate(&read(&certificate)?)?;
            match verify_certificate(&sigma, &cert) {
                Ok(()) => {
                    println!("valid: {} = {} in {} steps", cert.start, cert.end, cert.len());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("rejected: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn lattice(
    l: &FiniteLattice,
    element: Option<String>,
    property: Option<String>,
    table: bool,
    implications: bool,
    csv: bool,
) -> Result<ExitCode> {
    if let (Some(x), Some(p)) = (&element, &property) {
        let x = l.element(x)?;
        let p: ElementProperty = p.parse().map_err(anyhow::Error::msg)?;
        println!("{}", if has_property(l, x, p) { "yes" } else { "no" });
        return Ok(ExitCode::SUCCESS);
    }
    if implications {
        let violations = check_implications(l);
        for v in &violations {
            println!("violation: {} is {} but not {}", l.label(v.element), v.has, v.lacks);
        }
        if violations.is_empty() {
            println!("all implications hold");
            return Ok(ExitCode::SUCCESS);
        }
        return Ok(ExitCode::from(1));
    }
    if table {
        let sets: Vec<_> = ElementProperty::ALL.iter().map(|&p| elements_with(l, p)).collect();
        let names: Vec<&str> = ElementProperty::ALL.iter().map(|p| p.name()).collect();
        if csv {
            let mut out = csv::Writer::from_writer(std::io::stdout().lock());
            out.write_record(["element", "property", "value"])?;
            for x in l.elements() {
                for (n, s) in names.iter().zip(&sets) {
                    out.write_record([l.label(x), n, if s.contains(&x) { "true" } else { "false" }])?;
                }
            }
            out.flush()?;
        } else {
            let width = l.labels().iter().map(String::len).max().unwrap_or(1).max(7);
            print!("{:width$}", "element");
            for n in &names {
                print!(" {n}");
            }
            println!();
            for x in l.elements() {
                print!("{:width$}", l.label(x));
                for (n, s) in names.iter().zip(&sets) {
                    print!(" {:^w$}", if s.contains(&x) { "x" } else { "." }, w = n.len());
                }
                println!();
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    if element.is_some() || property.is_some() {
        bail!("--element and --property go together");
    }
    for p in ElementProperty::ALL {
        let labels: Vec<&str> = elements_with(l, p).into_iter().map(|x| l.label(x)).collect();
        println!("{p}: {}", labels.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
