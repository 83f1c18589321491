//! The `downcat` command line.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::{Bounds, Profile};
use crate::down::{build_down, build_down_star, check_direct, strict_length_bound};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, SearchBudget};
use crate::io;
use crate::ladder::{hom_poset, LadderCategory, LadderVariant};
use crate::localization::{default_probes, weak_localization_report};
use crate::report::SuiteReport;
use crate::sset::endofunctors::endofunctor_suite;
use crate::sset::horns::{filling_schedule, Flavor};
use crate::{corpus, suites};

#[derive(Parser, Debug)]
#[command(name = "downcat", version, about = "Finite direct replacements of finite Reedy categories")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Bound profile.
    #[arg(long, value_enum, global = true, default_value = "default")]
    pub profile: Profile,
    /// Size bound for materialized categories, simplicial levels and searches.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

impl GlobalArgs {
    pub fn bounds(&self) -> Bounds {
        let mut b = Bounds::for_profile(self.profile);
        if let Some(n) = self.bound {
            b.max_morphisms = n;
            b.max_cells = n;
            b.search_nodes = n;
        }
        b
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the category laws and, if present, the Reedy axioms.
    Validate { input: String },
    /// Build Down(C).
    #[command(subcommand)]
    Down(DownCmd),
    /// Print hom-posets of a ladder category with Hasse edges and class maxima.
    Hom(HomArgs),
    /// 1-localization checks.
    #[command(subcommand)]
    Localize(LocalizeCmd),
    /// Simplicial checks.
    #[command(subcommand)]
    Sset(SsetCmd),
    /// Run every suite.
    Selftest,
    /// Write a category as JSON (stdout by default) or DOT.
    Export {
        input: String,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long = "out")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum DownCmd {
    Build {
        input: String,
        /// Build the bounded Down⁎(C) from chains in C₋ with identities allowed.
        #[arg(long)]
        star: bool,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write Down(C) with decode tables here.
        #[arg(long = "out")]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct HomArgs {
    pub input: String,
    #[arg(long, value_enum, default_value = "strict")]
    pub variant: LadderVariant,
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Source object label, e.g. `[0]:0`.
    #[arg(long)]
    pub src: Option<String>,
    /// Target object label, e.g. `[1]:g`.
    #[arg(long)]
    pub dst: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum LocalizeCmd {
    /// Probe report for last: Down(C) → C.
    Check {
        input: String,
        /// Directory of JSON categories used as probes instead of the defaults.
        #[arg(long)]
        probes: Option<PathBuf>,
    },
    /// The fixture where the strict ladder category is not a localization.
    Counterexample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SsetCheck {
    Endofunctors,
    Connecting,
    Horns,
    HornsI,
    Comparison,
    Cylinder,
}

#[derive(Subcommand, Debug)]
pub enum SsetCmd {
    Run {
        #[arg(value_enum)]
        check: SsetCheck,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
    },
}

/// What a command produced: reports to render and the exit code they imply.
struct Outcome {
    reports: Vec<SuiteReport>,
    text: Vec<String>,
    json: Option<String>,
    code: i32,
}

impl Outcome {
    fn reports(reports: Vec<SuiteReport>) -> Self {
        let code = if reports.iter().all(SuiteReport::passed) { 0 } else { 1 };
        Outcome { reports, text: Vec::new(), json: None, code }
    }

    fn text(text: Vec<String>, json: Option<String>, code: i32) -> Self {
        Outcome { reports: Vec::new(), text, json, code }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn validate(input: &str, bounds: &Bounds) -> Result<Outcome> {
    let (name, l) = io::load_spec(input, bounds)?;
    let cat_report = l.cat.validate();
    let mut text = vec![format!("{name}: {}", l.cat.summary()), format!("category: {}", cat_report.to_string().trim_end())];
    let mut ok = cat_report.is_empty();
    let mut reedy_json = None;
    if let Some(rc) = &l.reedy {
        if ok {
            let r = rc.validate();
            text.push(format!("reedy: {}", r.to_string().trim_end()));
            if let Ok(d) = rc.degree() {
                text.push(format!("degree: {d:?}"));
            }
            reedy_json = Some(r.entries.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            ok = r.is_empty();
        }
    } else {
        text.push("reedy: no structure given".into());
    }
    #[derive(Serialize)]
    struct J {
        name: String,
        category: Vec<String>,
        reedy: Option<Vec<String>>,
        valid: bool,
    }
    let j = J { name, category: cat_report.entries.iter().map(|v| v.to_string()).collect(), reedy: reedy_json, valid: ok };
    Ok(Outcome::text(text, Some(serde_json::to_string_pretty(&j).expect("json")), if ok { 0 } else { 1 }))
}

fn down(cmd: &DownCmd, bounds: &Bounds) -> Result<Outcome> {
    let DownCmd::Build { input, star, max_len, dot, out } = cmd;
    let e = io::load_entry(input, bounds)?;
    let rc = &e.data;
    let r = rc.validate();
    if !r.is_empty() {
        return Ok(Outcome::text(vec![format!("{} is not a Reedy category:", e.name), r.to_string()], None, 1));
    }
    let d = if *star {
        let Some(l) = max_len else {
            eprintln!("Down⁎({}) has ladders of every length once identities are allowed in chains.", e.name);
            eprintln!("Pass --max-len L to build the full subcategory on chains of length ≤ L.");
            return Ok(Outcome::text(Vec::new(), None, 3));
        };
        build_down_star(rc, *l, bounds.max_morphisms)?
    } else {
        build_down(rc, bounds.max_morphisms)?
    };
    let dc = check_direct(&d.cat);
    let kind = if *star { format!("Down⁎({}) with chains of length ≤ {}", e.name, max_len.unwrap_or(0)) } else { format!("Down({})", e.name) };
    let mut text = vec![
        kind,
        format!("objects: {}", d.cat.num_objects()),
        format!("morphisms: {}", d.cat.num_morphisms()),
        format!("direct: {}", if dc.direct { "yes" } else { "no" }),
    ];
    match (&dc.degree, &dc.cycle) {
        (Some(deg), _) if dc.direct => text.push(format!("degree: {deg:?}")),
        (_, Some(cycle)) => text.push(format!("witness cycle: {cycle:?}")),
        _ => {}
    }
    if let Some(p) = dot {
        write_file(p, &io::to_dot(&d.cat, "Down"))?;
    }
    let json = io::down_to_json(rc, &d);
    if let Some(p) = out {
        write_file(p, &json)?;
    }
    // Down⁎ is not expected to be direct; only Down(C) is judged.
    Ok(Outcome::text(text, Some(json), if dc.direct || *star { 0 } else { 1 }))
}

fn hom(a: &HomArgs, bounds: &Bounds) -> Result<Outcome> {
    let e = io::load_entry(&a.input, bounds)?;
    let rc = &e.data;
    let max_len = match (a.variant, a.max_len) {
        (_, Some(l)) => l,
        (LadderVariant::Strict, None) => strict_length_bound(rc),
        (_, None) => bounds.max_len,
    };
    let lc = LadderCategory::build(rc, a.variant, max_len, bounds.max_morphisms)?;
    let lad = lc.ladder(rc);
    let c = &rc.cat;
    let pick = |want: &Option<String>| -> Result<Vec<usize>> {
        let all: Vec<usize> = (0..lc.objects.len()).collect();
        match want {
            None => Ok(all),
            Some(w) => {
                let hit: Vec<usize> = all.into_iter().filter(|&i| lc.objects[i].label(c) == *w).collect();
                if hit.is_empty() {
                    let names: Vec<String> = lc.objects.iter().map(|o| o.label(c)).collect();
                    return Err(Error::Invalid(format!("no object {w}; objects are {}", names.join(" "))));
                }
                Ok(hit)
            }
        }
    };
    #[derive(Serialize)]
    struct Entry {
        src: String,
        dst: String,
        poset: crate::ladder::HomPoset,
    }
    let mut entries = Vec::new();
    let mut text = vec![format!("{:?} ladder category of {}, chains of length ≤ {max_len}", a.variant, e.name)];
    for i in pick(&a.src)? {
        for j in pick(&a.dst)? {
            let (x, y) = (&lc.objects[i], &lc.objects[j]);
            let p = hom_poset(&lad, x, y);
            if p.elements.is_empty() && (a.src.is_none() || a.dst.is_none()) {
                continue;
            }
            text.push(format!("Hom({}, {}): {} elements", x.label(c), y.label(c), p.elements.len()));
            for (k, el) in p.elements.iter().enumerate() {
                let mark = if p.max_of[k] == k { "  max" } else { "" };
                text.push(format!("  {k}: {el}{mark}"));
            }
            if !p.hasse.is_empty() {
                let hs: Vec<String> = p.hasse.iter().map(|(u, v)| format!("{u}<{v}")).collect();
                text.push(format!("  hasse: {}", hs.join(" ")));
            }
            let classes: Vec<String> = p.max_of.iter().enumerate().map(|(k, m)| format!("{k}→{m}")).collect();
            text.push(format!("  class maxima: {}", classes.join(" ")));
            entries.push(Entry { src: x.label(c), dst: y.label(c), poset: p });
        }
    }
    Ok(Outcome::text(text, Some(serde_json::to_string_pretty(&entries).expect("json")), 0))
}

fn load_probes(dir: &Path) -> Result<Vec<(String, FinCategory)>> {
    let rd = std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::Invalid(format!("no .json probes in {}", dir.display())));
    }
    paths
        .iter()
        .map(|p| {
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((name, io::load_file(p)?.cat))
        })
        .collect()
}

fn localize(cmd: &LocalizeCmd, bounds: &Bounds) -> Result<Outcome> {
    let budget = SearchBudget { max_nodes: bounds.search_nodes };
    match cmd {
        LocalizeCmd::Check { input, probes } => {
            let e = io::load_entry(input, bounds)?;
            let d = build_down(&e.data, bounds.max_morphisms)?;
            let probes = match probes {
                Some(dir) => load_probes(dir)?,
                None => default_probes(&e.data),
            };
            let mut r = weak_localization_report(&e.data, &d, &probes, budget);
            r.suite = format!("localize {}", e.name);
            Ok(Outcome::reports(vec![r]))
        }
        LocalizeCmd::Counterexample => Ok(Outcome::reports(vec![suites::counterexample(bounds)])),
    }
}

fn sset(cmd: &SsetCmd, bounds: &Bounds) -> Result<Outcome> {
    let SsetCmd::Run { check, n, dim } = cmd;
    let mut b = bounds.clone();
    let report = match check {
        SsetCheck::Endofunctors => {
            if let Some(d) = dim {
                b.endofunctor_dim = *d;
            }
            endofunctor_suite(&corpus::default_corpus(&b)?, &b, n.unwrap_or(3))
        }
        SsetCheck::Connecting => suites::connecting_suite(&b, n.unwrap_or(2), dim.unwrap_or(2)),
        SsetCheck::Horns | SsetCheck::HornsI => {
            let (flavor, default_n) = if *check == SsetCheck::Horns { (Flavor::Plain, b.horn_n) } else { (Flavor::I, b.horn_i_n) };
            let n = n.unwrap_or(default_n);
            let mut r = SuiteReport::new(format!("horns {flavor:?}"));
            r.run(format!("n={n}"), || suites::horn_check(n, flavor, b.max_cells));
            let cert = filling_schedule(n, flavor, b.max_cells)?;
            let mut text: Vec<String> = cert
                .steps
                .iter()
                .map(|s| format!("  dim {}: core ({}) periphery ({}) at {}", s.dim, s.core_label, s.periphery_label, s.position))
                .collect();
            text.insert(0, format!("schedule {flavor:?} n={n}: {} steps, complete: {}", cert.steps.len(), cert.complete));
            let code = if r.passed() { 0 } else { 1 };
            return Ok(Outcome { reports: vec![r], text, json: Some(serde_json::to_string_pretty(&cert).expect("json")), code });
        }
        SsetCheck::Comparison => {
            if let Some(d) = dim {
                b.comparison_dim = *d;
            }
            suites::comparison_suite(&b)
        }
        SsetCheck::Cylinder => suites::cylinder_suite(&b, dim.unwrap_or(2)),
    };
    Ok(Outcome::reports(vec![report]))
}

fn export(input: &str, dot: &Option<PathBuf>, out: &Option<PathBuf>, bounds: &Bounds) -> Result<Outcome> {
    let (name, l) = io::load_spec(input, bounds)?;
    let json = io::to_json(&l.cat, l.reedy.as_ref());
    let mut text = Vec::new();
    if let Some(p) = dot {
        write_file(p, &io::to_dot(&l.cat, &name))?;
        text.push(format!("wrote {}", p.display()));
    }
    match out {
        Some(p) => {
            write_file(p, &json)?;
            text.push(format!("wrote {}", p.display()));
        }
        None if dot.is_none() => text.push(json.clone()),
        None => {}
    }
    Ok(Outcome::text(text, Some(json), 0))
}

// Writes to stdout, ignoring a closed pipe.
macro_rules! emit {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

/// Runs a parsed command line, printing to stdout/stderr, and returns the
/// process exit code.
pub fn run(cli: &Cli) -> i32 {
    let bounds = cli.global.bounds();
    let out = match &cli.command {
        Command::Validate { input } => validate(input, &bounds),
        Command::Down(c) => down(c, &bounds),
        Command::Hom(a) => hom(a, &bounds),
        Command::Localize(c) => localize(c, &bounds),
        Command::Sset(c) => sset(c, &bounds),
        Command::Selftest => Ok(Outcome::reports(suites::all_suites(&bounds))),
        Command::Export { input, dot, out } => export(input, dot, out, &bounds),
    };
    match out {
        Ok(o) => {
            if cli.global.json {
                match (&o.json, o.reports.is_empty()) {
                    (Some(j), true) => emit!("{j}"),
                    (Some(j), false) => {
                        let v = serde_json::json!({ "reports": o.reports, "certificate": serde_json::from_str::<serde_json::Value>(j).ok() });
                        emit!("{}", serde_json::to_string_pretty(&v).expect("json"));
                    }
                    (None, _) => emit!("{}", serde_json::to_string_pretty(&o.reports).expect("json")),
                }
            } else {
                for t in &o.text {
                    emit!("{t}");
                }
                for r in &o.reports {
                    emit!("{}", r.to_string().trim_end());
                }
                if !o.reports.is_empty() {
                    let failed: usize = o.reports.iter().map(|r| r.counts().1).sum();
                    emit!("{}", if failed == 0 { "all checks passed".to_string() } else { format!("{failed} checks failed") });
                }
            }
            o.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    run(&Cli::parse())
}
