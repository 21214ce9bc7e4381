//! The `qkc` command line: enumerate tables, compute complexities, run
//! audits, and exercise the codes and the simulator.
//!
//! Exit status is 0 on success, 1 when an audit fails and 2 on usage,
//! configuration or resource errors.

mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub use config::{ConfigFile, RunConfig};

use crate::codes::{encode_bar, encode_prime, pair, BitString};
use crate::enumerate::{
    budget_from_env, default_fuel, dovetail, load_table, save_table, write_table, EnumConfig,
    HaltTable, Scheduler,
};
use crate::error::{Error, Result};
use crate::kolmogorov::{
    basis_bound, basis_program, k_exact, k_exact_in, k_quantum, k_target, mc_approximate,
    shortest_programs, write_trace,
};
use crate::qpl::{run, ConditionSpec, MachineSpec, Mode, RunResult};
use crate::qstate::{measure_probs, parse_state_file, PureState, Ray, TargetState};
use crate::theorems::{
    audit_consistency, audit_hard_basis, audit_incompressibility_classical,
    audit_incompressibility_quantum, audit_multiples, audit_upper_bound, cloning_check,
    construct_hard_basis, invariance_gap, seeded_basis, subadditive_restricted_audit,
    subadditivity_witness, AuditReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "qkc",
    version,
    about = "Quantum Kolmogorov complexity on a small reference machine"
)]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// Workspace width W (default n·m + 2).
    #[arg(long = "machine-W", global = true)]
    pub machine_w: Option<usize>,
    /// cond-n or uncond.
    #[arg(long, global = true)]
    pub mode: Option<Mode>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Auxiliary program bits.
    #[arg(long, global = true)]
    pub aux: Option<BitString>,
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    #[arg(long, global = true)]
    pub fuel: Option<u64>,
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Trials per program for the measurement estimator.
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub table: Option<PathBuf>,
    /// State file `{ "n": …, "amps": [[re, im], …] }`.
    #[arg(long, global = true)]
    pub state: Option<PathBuf>,
    /// JSON file with defaults for any of these flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl Flags {
    fn as_config(&self) -> ConfigFile {
        ConfigFile {
            workspace: self.machine_w,
            mode: self.mode,
            n: self.n,
            m: self.m,
            aux: self.aux.clone(),
            max_len: self.max_len,
            fuel: self.fuel,
            epsilon: self.epsilon,
            alpha: self.alpha,
            trials: self.trials,
            seed: self.seed,
            workers: self.workers,
            table: self.table.clone(),
            state: self.state.clone(),
            out: self.out.clone(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate halting programs into a table.
    Enumerate {
        /// Use the staged dovetail scheduler instead of the parallel sweep.
        #[arg(long)]
        dovetail: bool,
    },
    /// Complexity of the state in `--state`.
    K {
        /// Enumerate far enough to certify the value.
        #[arg(long)]
        exact: bool,
    },
    /// Measurement-driven estimate of the complexity of `--state`.
    Mc {
        #[arg(long)]
        allow_small_k: bool,
    },
    /// Run an audit.
    Audit {
        name: AuditName,
        #[arg(long, default_value_t = 1)]
        delta: u64,
        #[arg(long, default_value_t = 1)]
        c: u64,
        #[arg(long, value_enum, default_value_t = BasisKind::Canonical)]
        basis: BasisKind,
        /// Classical string for the subadditivity witness.
        #[arg(long)]
        x: Option<BitString>,
        /// Workspace width of the second machine for `invariance`.
        #[arg(long = "other-W")]
        other_w: Option<usize>,
    },
    /// Self-delimiting codes.
    Codes {
        kind: CodeKind,
        x: BitString,
        y: Option<BitString>,
    },
    /// Run one program and print its output.
    Simulate {
        #[arg(long)]
        program: BitString,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AuditName {
    UpperBound,
    IncompressibilityClassical,
    IncompressibilityQuantum,
    HardBasis,
    Consistency,
    Subadditivity,
    Multiples,
    Cloning,
    Invariance,
    SubadditiveRestricted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    Canonical,
    Hard,
    Seeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodeKind {
    Bar,
    Prime,
    Pair,
}

enum Outcome {
    Ok,
    AuditFailed,
}

/// Parses `args` and runs the command, writing to `out` and `err`.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::AuditFailed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn name_of(cmd: &Command) -> String {
    match cmd {
        Command::Enumerate { .. } => "enumerate".into(),
        Command::K { .. } => "k".into(),
        Command::Mc { .. } => "mc".into(),
        Command::Audit { name, .. } => format!(
            "audit {}",
            name.to_possible_value().expect("named variant").get_name()
        ),
        Command::Codes { .. } => "codes".into(),
        Command::Simulate { .. } => "simulate".into(),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    let mut conf = match &cli.flags.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    }
    .overlay(cli.flags.as_config());
    if let Command::Audit {
        name: AuditName::Subadditivity,
        x: Some(x),
        ..
    } = &cli.command
    {
        conf.n = conf.n.or(Some(x.len()));
    }
    let explicit_machine = conf.workspace.is_some()
        || conf.mode.is_some()
        || conf.n.is_some()
        || conf.m.is_some()
        || conf.aux.is_some();
    let rc = RunConfig::resolve(&name_of(&cli.command), conf)?;
    let ctx = Ctx {
        rc,
        explicit_machine,
    };
    match cli.command {
        Command::Enumerate { dovetail } => ctx.enumerate(dovetail, out),
        Command::K { exact } => ctx.k(exact, out),
        Command::Mc { allow_small_k } => ctx.mc(allow_small_k, out),
        Command::Audit {
            name,
            delta,
            c,
            basis,
            x,
            other_w,
        } => {
            let report = ctx.audit(name, delta, c, basis, x, other_w)?;
            ctx.emit_report(&report, out)
        }
        Command::Codes { kind, x, y } => {
            let bits = match (kind, y) {
                (CodeKind::Bar, _) => encode_bar(&x),
                (CodeKind::Prime, _) => encode_prime(&x),
                (CodeKind::Pair, Some(y)) => pair(&x, &y),
                (CodeKind::Pair, None) => {
                    return Err(Error::Param("pair needs two strings".into()))
                }
            };
            writeln!(out, "{bits}")?;
            Ok(Outcome::Ok)
        }
        Command::Simulate { program } => ctx.simulate(&program, out),
    }
}

struct Ctx {
    rc: RunConfig,
    explicit_machine: bool,
}

impl Ctx {
    fn enum_config(&self, max_len: usize, dovetail: bool) -> EnumConfig {
        let mut cfg = EnumConfig::new(max_len).budget(budget_from_env());
        cfg.fuel = self.rc.fuel;
        cfg.scheduler = if dovetail {
            Scheduler::Dovetail
        } else {
            Scheduler::Sweep {
                workers: self.rc.workers,
            }
        };
        cfg
    }

    fn build(&self, spec: &MachineSpec, cond: &ConditionSpec, max_len: usize) -> Result<HaltTable> {
        dovetail(spec, cond, &self.enum_config(max_len, false))
    }

    /// The table from `--table`, refused if it was built for another
    /// machine, or a fresh one up to `max_len` (default `default_len`).
    fn table(&self, default_len: usize) -> Result<HaltTable> {
        if let Some(p) = &self.rc.table {
            let t = load_table(p)?;
            if self.explicit_machine && (t.spec() != &self.rc.machine || t.cond() != &self.rc.cond)
            {
                return Err(Error::Refused(format!(
                    "table {} is for {} n={}, not the requested {} n={}",
                    p.display(),
                    t.spec(),
                    t.cond().n,
                    self.rc.machine,
                    self.rc.cond.n
                )));
            }
            return Ok(t);
        }
        let len = self.rc.max_len.unwrap_or(default_len);
        self.build(&self.rc.machine, &self.rc.cond, len)
    }

    fn target(&self) -> Result<TargetState> {
        let p = self
            .rc
            .state
            .as_ref()
            .ok_or_else(|| Error::Config("--state is required".into()))?;
        parse_state_file(&std::fs::read_to_string(p)?)
    }

    fn enumerate(&self, dovetail_sched: bool, out: &mut dyn Write) -> Result<Outcome> {
        let len = self.rc.max_len.unwrap_or(8);
        let t = dovetail(
            &self.rc.machine,
            &self.rc.cond,
            &self.enum_config(len, dovetail_sched),
        )?;
        match &self.rc.out {
            Some(p) => {
                save_table(&t, p)?;
                writeln!(out, "records: {}", t.len())?;
                writeln!(out, "digest: {}", t.digest())?;
                writeln!(out, "config: {}", self.rc.digest())?;
            }
            None => write_table(&t, out)?,
        }
        Ok(Outcome::Ok)
    }

    fn k(&self, exact: bool, out: &mut dyn Write) -> Result<Outcome> {
        let target = self.target()?;
        let est = match (&target, exact, &self.rc.table) {
            (TargetState::Exact(s), true, None) => {
                k_exact(s, &self.rc.machine, &self.rc.cond, budget_from_env())?
            }
            (TargetState::Exact(s), true, Some(_)) => k_exact_in(s, &self.table(0)?)?,
            (TargetState::Approx(_), true, _) => {
                return Err(Error::Param(
                    "--exact needs a state given by ring literals".into(),
                ))
            }
            (TargetState::Exact(s), false, _) => {
                let len = basis_bound(s, &self.rc.machine)? as usize;
                k_quantum(s, &self.table(len)?)?
            }
            (TargetState::Approx(_), false, _) => k_target(&target, &self.table(8)?)?,
        };
        let doc = json!({ "config_digest": self.rc.digest(), "estimate": est });
        writeln!(out, "{doc}")?;
        Ok(Outcome::Ok)
    }

    fn mc(&self, allow_small_k: bool, out: &mut dyn Write) -> Result<Outcome> {
        let TargetState::Exact(s) = self.target()? else {
            return Err(Error::Param(
                "mc needs a state given by ring literals".into(),
            ));
        };
        let len = basis_bound(&s, &self.rc.machine)? as usize;
        let table = self.table(len)?;
        let mut cfg = self.rc.mc.clone();
        cfg.allow_small_k = allow_small_k;
        let (est, trace) = mc_approximate(&s, &table, &cfg)?;
        let k = cfg.resolve_trials(s.qubits())?;
        let doc = json!({
            "config_digest": self.rc.digest(),
            "estimate": est,
            "trials": k,
            "epsilon": cfg.epsilon,
            "alpha": cfg.alpha,
            "seed": cfg.seed,
            "table_digest": table.digest(),
        });
        writeln!(out, "{doc}")?;
        if let Some(p) = &self.rc.out {
            write_trace(&trace, std::fs::File::create(p)?)?;
        }
        Ok(Outcome::Ok)
    }

    fn simulate(&self, program: &BitString, out: &mut dyn Write) -> Result<Outcome> {
        let fuel = self
            .rc
            .fuel
            .unwrap_or_else(|| default_fuel(program.len(), &self.rc.cond));
        match run(&self.rc.machine, program, &self.rc.cond, fuel) {
            RunResult::Halted { output, steps } => {
                let probs: Vec<String> = measure_probs(&output)
                    .iter()
                    .map(|p| p.to_string())
                    .collect();
                writeln!(out, "result: halted")?;
                writeln!(out, "steps: {steps}")?;
                writeln!(out, "state: {output}")?;
                writeln!(out, "probs: [{}]", probs.join(", "))?;
            }
            RunResult::Invalid { reason } => writeln!(out, "result: invalid ({reason})")?,
            RunResult::FuelExhausted => writeln!(out, "result: fuel exhausted after {fuel} steps")?,
        }
        Ok(Outcome::Ok)
    }

    /// Longest direct basis program for the configured output width.
    fn basis_len(&self) -> usize {
        let n = self.rc.cond.output_width();
        BitString::all_of_length(n)
            .map(|x| basis_program(&x, &self.rc.machine).len())
            .max()
            .unwrap_or(0)
    }

    fn audit(
        &self,
        name: AuditName,
        delta: u64,
        c: u64,
        basis: BasisKind,
        x: Option<BitString>,
        other_w: Option<usize>,
    ) -> Result<AuditReport> {
        let n = self.rc.cond.output_width();
        match name {
            AuditName::UpperBound => audit_upper_bound(&self.table(self.basis_len())?, &[]),
            AuditName::IncompressibilityClassical => {
                audit_incompressibility_classical(&self.table(8)?, delta)
            }
            AuditName::IncompressibilityQuantum => {
                let table = self.table(8)?;
                let n = table.output_width();
                let vectors: Vec<Ray> = match basis {
                    BasisKind::Canonical => (0..1 << n)
                        .map(|i| Ray::from(PureState::basis(n, i)))
                        .collect(),
                    BasisKind::Hard => {
                        let short = (n as i64 - c as i64 - 1).max(0) as usize;
                        construct_hard_basis(&table.restricted(short))?.vectors()
                    }
                    BasisKind::Seeded => seeded_basis(n, self.rc.mc.seed, 6)?
                        .into_iter()
                        .map(Ray::from)
                        .collect(),
                };
                audit_incompressibility_quantum(&vectors, &table, c)
            }
            AuditName::HardBasis => audit_hard_basis(&self.table(8)?),
            AuditName::Consistency => audit_consistency(&self.table(self.basis_len())?),
            AuditName::Subadditivity => {
                let x = x.ok_or_else(|| Error::Config("--x is required".into()))?;
                subadditivity_witness(&x, &self.table(8)?)
            }
            AuditName::Multiples => audit_multiples(8, 8, 16, 1 << 10),
            AuditName::Cloning => {
                let m = self.rc.cond.m.unwrap_or(2);
                if self.rc.cond.aux.is_empty() {
                    return Err(Error::Config(
                        "--aux must give the program to replay".into(),
                    ));
                }
                cloning_check(
                    &self.rc.cond.aux,
                    self.rc.cond.n,
                    m,
                    self.rc.machine.workspace(),
                )
            }
            AuditName::Invariance => {
                let a = self.rc.machine;
                let b = MachineSpec::new(other_w.unwrap_or(a.workspace() + 1), a.mode())?;
                let table = self.table(8)?;
                let mut corpus: Vec<PureState> = shortest_programs(&table)
                    .into_iter()
                    .map(|r| r.output.clone())
                    .collect();
                for i in 0..1usize << n {
                    let e = PureState::basis(n, i);
                    if !corpus.contains(&e) {
                        corpus.push(e);
                    }
                }
                invariance_gap(&a, &b, &corpus, budget_from_env())
            }
            AuditName::SubadditiveRestricted => {
                let small = self.table(8)?;
                let big_cond = ConditionSpec::new(2 * n);
                let big_spec = MachineSpec::new(2 * n + 2, self.rc.machine.mode())?;
                let big = self.build(&big_spec, &big_cond, self.rc.max_len.unwrap_or(8))?;
                subadditive_restricted_audit(&small, &big)
            }
        }
    }

    fn emit_report(&self, report: &AuditReport, out: &mut dyn Write) -> Result<Outcome> {
        write!(out, "{}", report.render())?;
        writeln!(out, "config digest: {}", self.rc.digest())?;
        if let Some(p) = &self.rc.out {
            let doc = json!({
                "config": self.rc,
                "config_digest": self.rc.digest(),
                "report": report,
            });
            std::fs::write(p, format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
        }
        Ok(if report.passed() {
            Outcome::Ok
        } else {
            Outcome::AuditFailed
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("qkc").chain(args.iter().copied());
        let code = run_cli(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn codes_bar() {
        assert_eq!(
            call(&["codes", "bar", "010"]),
            (0, "1001101\n".into(), String::new())
        );
        assert_eq!(call(&["codes", "prime", "0"]).1, "1010\n");
        assert_eq!(call(&["codes", "pair", "0", "1"]).0, 0);
        assert_eq!(call(&["codes", "pair", "0"]).0, 2);
    }

    #[test]
    fn simulate_rotation() {
        let (code, out, _) = call(&["simulate", "--program", "0001111", "--n", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("state: 3/5|0⟩ + 4/5|1⟩"), "{out}");
        assert!(out.contains("probs: [9/25, 16/25]"), "{out}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["k"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn k_exact_from_state_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("zero.json");
        std::fs::write(
            &p,
            r#"{"n":1,"amps":[["1/1+0/1*r2","0/1+0/1*r2"],["0/1+0/1*r2","0/1+0/1*r2"]]}"#,
        )
        .unwrap();
        let (code, out, err) = call(&["k", "--state", p.to_str().unwrap(), "--exact"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains(r#""value":4"#));
        assert!(out.contains(r#""witness":"1111""#));
    }

    #[test]
    fn audit_exit_codes() {
        assert_eq!(call(&["audit", "multiples"]).0, 0);
        let (code, out, _) = call(&["audit", "consistency", "--n", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("result: PASS"));
    }

    #[test]
    fn audit_refuses_mismatched_table() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.jsonl");
        let ps = p.to_str().unwrap();
        assert_eq!(
            call(&["enumerate", "--n", "1", "--max-len", "8", "--out", ps]).0,
            0
        );
        assert_eq!(call(&["audit", "consistency", "--table", ps]).0, 0);
        let (code, _, err) = call(&["audit", "consistency", "--table", ps, "--machine-W", "4"]);
        assert_eq!(code, 2);
        assert!(err.contains("not the requested"), "{err}");
    }
}
