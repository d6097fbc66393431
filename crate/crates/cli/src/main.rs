use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use virmod::suite::{
    axiom_samples, iso_instance, module_action, random_generator, run_suite, sample_basis, simplicity_instance, single,
    Record, SuiteConfig, CHECKS,
};
use virmod::text::{
    parse_descriptor, parse_element, parse_profile, render_loop, render_module, render_profile, Descriptor,
};
use virmod_core::loopmod::{LParams, LoopElement};
use virmod_core::structure::{classify_e, cyclic_closure, ECase, ModuleDescriptor, TruncationProfile};

#[derive(Parser)]
#[command(name = "virmod", version, about = "Exact checks on weight Virasoro modules")]
struct Cli {
    /// Module descriptor, e.g. `L(vac(r=0;1); lambda=2; a=0; b=0)`.
    #[arg(long, global = true)]
    module: Option<String>,
    /// Truncation profile, e.g. `dmax=2,bmax=2,win=3,fuel=4,kmax=3`.
    #[arg(long, global = true)]
    profile: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write JSON-lines records to this file instead of stdout.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Add wall-clock `elapsed` seconds to records.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply d_k to an element of --module.
    Act {
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(short, long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Bracket laws and the module axiom; with --module, the axiom on that module.
    Axioms,
    /// Simplicity verdict with evidence; with --module, for that module only.
    Simplicity,
    /// Cyclic span of elements (random ones when none are given) on truncated slices.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        element: Vec<String>,
    },
    /// Isomorphism verdicts; with --module and --other, for that pair only.
    Iso {
        #[arg(long)]
        other: Option<String>,
    },
    /// Closed-form actions against the engine.
    Crosscheck,
    /// Structure of an E(lambda; b; gamma; p) module.
    ClassifyE,
    /// Run named checks (all by default).
    Report {
        #[arg(long = "check")]
        checks: Vec<String>,
        /// List check names and exit.
        #[arg(long)]
        list: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn descriptor(cli: &Cli) -> Result<Descriptor, String> {
    let text = cli.module.as_deref().ok_or("--module is required")?;
    parse_descriptor(text).map_err(|e| format!("--module: {e}"))
}

fn loop_params(d: &Descriptor) -> Result<LParams, String> {
    match d.to_module() {
        ModuleDescriptor::L(p) => Ok(p),
        other => Err(format!("expected an L or E module, got {}", render_module(&other))),
    }
}

fn element(d: &Descriptor, text: &str) -> Result<LoopElement, String> {
    parse_element(text, d.base_level())
        .map(|e| e.into_loop())
        .map_err(|e| format!("element: {e}"))
}

struct Sink {
    out: Box<dyn Write>,
    total: usize,
    passed: usize,
}

impl Sink {
    fn new(path: &Option<PathBuf>) -> Result<Self, String> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).map_err(|e| format!("{}: {e}", p.display()))?,
            )),
            None => Box::new(io::stdout().lock()),
        };
        Ok(Sink {
            out,
            total: 0,
            passed: 0,
        })
    }

    fn emit(&mut self, r: &Record) -> Result<(), String> {
        self.total += 1;
        self.passed += r.passed() as usize;
        writeln!(self.out, "{}", r.to_json()).map_err(|e| e.to_string())
    }

    fn finish(mut self) -> Result<bool, String> {
        self.out.flush().map_err(|e| e.to_string())?;
        eprintln!("{}/{} records passed", self.passed, self.total);
        Ok(self.passed == self.total)
    }
}

fn run_checks(cli: &Cli, profile: &TruncationProfile, checks: &[&str]) -> Result<bool, String> {
    let cfg = SuiteConfig {
        checks: checks.iter().map(|s| s.to_string()).collect(),
        profile: profile.clone(),
        seed: cli.seed,
        timings: cli.timings,
    };
    let records = run_suite(&cfg).map_err(|e| e.to_string())?;
    let mut sink = Sink::new(&cli.json)?;
    for r in &records {
        sink.emit(r)?;
    }
    sink.finish()
}

fn emit_one(cli: &Cli, r: Record) -> Result<bool, String> {
    let mut sink = Sink::new(&cli.json)?;
    sink.emit(&r)?;
    sink.finish()
}

fn case_name(c: ECase) -> &'static str {
    match c {
        ECase::Simple => "simple",
        ECase::Filtration => "filtration",
        ECase::LPrimeSubmodule => "lprime-submodule",
        ECase::ParitySplit => "parity-split",
        ECase::ZeroGammaMinusOneChain => "zero-gamma-minus-one-chain",
        ECase::ZeroGammaMinusOneSplit => "zero-gamma-minus-one-split",
        ECase::ZeroGammaSimpleSubmodule => "zero-gamma-simple-submodule",
        ECase::ZeroGammaChain => "zero-gamma-chain",
        ECase::Uncovered => "uncovered",
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    let profile = match &cli.profile {
        Some(p) => parse_profile(p).map_err(|e| format!("--profile: {e}"))?,
        None => TruncationProfile::default(),
    };
    let prof_json = Value::String(render_profile(&profile));
    match &cli.cmd {
        Cmd::Act { element: text, k } => {
            let d = descriptor(cli)?;
            let m = d.to_module();
            let v = element(&d, text)?;
            let image = module_action(&m).act(*k, &v).map_err(|e| e.to_string())?;
            let rendered = render_loop(&image);
            println!("{rendered}");
            if cli.json.is_some() {
                let params = json!({ "module": render_module(&m), "element": render_loop(&v), "k": k });
                let r = single("act", params, cli.timings, |_| Ok(json!({ "result": rendered })));
                let mut sink = Sink::new(&cli.json)?;
                sink.emit(&r)?;
                sink.out.flush().map_err(|e| e.to_string())?;
            }
            Ok(true)
        }
        Cmd::Axioms => {
            if cli.module.is_none() {
                return run_checks(cli, &profile, &["bracket-laws", "module-axiom"]);
            }
            let m = descriptor(cli)?.to_module();
            let params = json!({ "module": render_module(&m), "profile": prof_json });
            let r = single("module-axiom", params, cli.timings, |t| {
                let basis = sample_basis(&m, &profile)?;
                axiom_samples(&*module_action(&m), &basis, profile.kmax as i64, t)?;
                Ok(json!({ "elements": basis.len(), "central_charge": "0" }))
            });
            emit_one(cli, r)
        }
        Cmd::Simplicity => {
            if cli.module.is_none() {
                return run_checks(cli, &profile, &["simplicity-evidence"]);
            }
            let p = loop_params(&descriptor(cli)?)?;
            let params = json!({ "module": render_module(&ModuleDescriptor::L(p.clone())), "profile": prof_json });
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let r = single("simplicity-evidence", params, cli.timings, |t| {
                simplicity_instance(&p, &profile, &mut rng, 5, t)
            });
            emit_one(cli, r)
        }
        Cmd::Scan { element: texts } => {
            let d = descriptor(cli)?;
            let p = loop_params(&d)?;
            let mut gens = texts.iter().map(|t| element(&d, t)).collect::<Result<Vec<_>, _>>()?;
            if gens.is_empty() {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                gens.push(random_generator(&mut rng, p.w(), &profile));
            }
            let params = json!({
                "module": render_module(&ModuleDescriptor::L(p.clone())),
                "profile": prof_json,
                "generators": gens.iter().map(render_loop).collect::<Vec<_>>(),
            });
            let r = single("scan", params, cli.timings, |_| {
                let closure = cyclic_closure(&p, &gens, &profile)?;
                let dims: Vec<Value> = closure
                    .dims()
                    .iter()
                    .map(|(n, d)| json!([n, d.attained, d.full]))
                    .collect();
                Ok(json!({ "full": closure.is_full(), "rounds": closure.rounds(), "dims": dims }))
            });
            emit_one(cli, r)
        }
        Cmd::Iso { other } => {
            let (Some(_), Some(other)) = (&cli.module, other) else {
                if other.is_some() {
                    return Err("--other needs --module".into());
                }
                return run_checks(cli, &profile, &["isomorphism"]);
            };
            let x = descriptor(cli)?.to_module();
            let y = parse_descriptor(other)
                .map_err(|e| format!("--other: {e}"))?
                .to_module();
            let params = json!({ "left": render_module(&x), "right": render_module(&y) });
            let r = single("isomorphism", params, cli.timings, |t| {
                let (consistent, info) = iso_instance(&x, &y, &profile, t)?;
                t.check(consistent, || info.clone());
                Ok(info)
            });
            emit_one(cli, r)
        }
        Cmd::Crosscheck => run_checks(cli, &profile, &["oracle-cm", "oracle-r1"]),
        Cmd::ClassifyE => {
            let Descriptor::E(e) = descriptor(cli)? else {
                return Err("classify-e needs an E(..) descriptor".into());
            };
            let c = classify_e(&e);
            let list = |v: &[ModuleDescriptor]| v.iter().map(render_module).collect::<Vec<_>>();
            let out = json!({
                "case": case_name(c.case),
                "number": c.case.number(),
                "simple": c.simple,
                "module": render_module(&c.module),
                "submodules": list(&c.submodules),
                "summands": list(&c.summands),
                "quotients": list(&c.quotients),
            });
            let text = serde_json::to_string_pretty(&out).expect("json");
            println!("{text}");
            if cli.json.is_some() {
                let r = single("classify-e", json!({ "module": cli.module }), cli.timings, |_| Ok(out));
                let mut sink = Sink::new(&cli.json)?;
                sink.emit(&r)?;
                sink.out.flush().map_err(|e| e.to_string())?;
            }
            Ok(true)
        }
        Cmd::Report { checks, list } => {
            if *list {
                for (name, about) in CHECKS {
                    println!("{name:<20} {about}");
                }
                return Ok(true);
            }
            let names: Vec<&str> = checks.iter().map(String::as_str).collect();
            run_checks(cli, &profile, &names)
        }
    }
}
