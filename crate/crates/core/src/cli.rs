//! Command-line front end. Exit codes: 0 success, 1 a property fails or an
//! outcome differs from the expected one, 2 usage or input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::catalog::{catalog, load, self_test};
use crate::construct::completion::{complete_form_qn, Branch, BranchChoice};
use crate::error::{Error, Result};
use crate::groupoid::format::serialize_table;
use crate::groupoid::{find_isomorphism, Groupoid};
use crate::properties::{check, check_assoc_boundary, is_quadratical, Method, PropertyKind};
use crate::report::run_report;
use crate::search::{
    classify_affine, detect_translatable, enumerate_quadratical, scan_translatable, spectrum_scan, write_enumeration,
};
use crate::structure::{branch_profile, cycle_decomposition, detect_form_qn, h_family, Quadratical};

#[derive(Parser, Debug)]
#[command(name = "quadlab", version, about = "Finite groupoids and quadratical quasigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    Complete,
    Contradiction,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide properties (all of them by default) and quadratical characterizations.
    Check {
        file: String,
        #[arg(long = "property", short = 'p')]
        properties: Vec<String>,
        #[arg(long, short)]
        method: Option<String>,
    },
    /// Write the dual (transposed) table.
    Dual {
        file: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the direct product of two tables.
    Product {
        left: String,
        right: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find an isomorphism between two tables.
    Iso { left: String, right: String },
    /// Decompose everything except the base into 4-cycles on it.
    Cycles {
        file: String,
        #[arg(long)]
        base: String,
    },
    /// Detect whether the table has form Qn.
    Form { file: String },
    /// Print the levels generated by a pair.
    Hfamily {
        file: String,
        /// Two elements, as `A,B`.
        #[arg(long, value_delimiter = ',')]
        pair: Vec<String>,
        #[arg(long)]
        depth: usize,
    },
    /// Complete the skeleton of form Qn for a choice of aba·a.
    Complete {
        #[arg(long)]
        form: usize,
        #[arg(long)]
        branch: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the deduction trace here instead of standard output.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Exit with 1 when the outcome differs.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Shifts k for which the table has a k-translatable ordering, or a scan of an order.
    Translatable {
        file: Option<String>,
        #[arg(long, conflicts_with = "file")]
        scan: Option<usize>,
    },
    /// All quadratical quasigroups of an order, up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Use the affine classification instead of exhaustive search.
        #[arg(long)]
        affine: bool,
        /// Write one table per class and an index file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Which orders up to a bound have a quadratical quasigroup.
    Spectrum {
        #[arg(long)]
        max: usize,
    },
    /// List the built-in tables, or print one after its self-test.
    Catalog {
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Regenerate the summary and count tables and compare with expectations.
    Report,
}

/// Runs the CLI on `args` (program name first), writing to `out`.
pub fn run_cli<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::MalformedHeader(_)
        | Error::EntryOutOfRange { .. }
        | Error::UnknownElement { .. }
        | Error::WrongRowCount { .. }
        | Error::WrongColumnCount { .. }
        | Error::DuplicateName(_)
        | Error::WrongNameCount { .. }
        | Error::EmptyGroupoid
        | Error::NotClosed { .. }
        | Error::IndexOutOfRange { .. }
        | Error::UnknownCatalogEntry(_)
        | Error::Precondition(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn element(g: &Groupoid, token: &str) -> Result<usize> {
    g.element(token).ok_or_else(|| Error::UnknownElement {
        line: 0,
        token: token.to_owned(),
    })
}

fn emit(g: &Groupoid, output: Option<PathBuf>, out: &mut dyn Write) -> Result<()> {
    let text = serialize_table(g);
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Check {
            file,
            properties,
            method,
        } => {
            let g = load(&file)?;
            let props: Vec<PropertyKind> = if properties.is_empty() && method.is_none() {
                PropertyKind::ALL.to_vec()
            } else {
                properties.iter().map(|p| p.parse()).collect::<Result<_>>()?
            };
            let mut ok = true;
            for p in props {
                match check(&g, p) {
                    Ok(()) => writeln!(out, "{p}: yes")?,
                    Err(w) => {
                        ok = false;
                        writeln!(out, "{p}: no ({})", w.describe(&g))?;
                    }
                }
            }
            if let Some(m) = method {
                let m: Method = m.parse()?;
                let methods: Vec<Method> = if m == Method::All { Method::EACH.to_vec() } else { vec![m] };
                for m in methods {
                    let v = is_quadratical(&g, m)?;
                    ok &= v;
                    writeln!(out, "quadratical by {m}: {}", if v { "yes" } else { "no" })?;
                }
                if m == Method::All {
                    // surfaces disagreement as an error
                    is_quadratical(&g, Method::All)?;
                    if ok {
                        let boundary = check_assoc_boundary(&g)?;
                        writeln!(out, "x·(y·z) = (x·y)·z exactly when x = z: {}", if boundary { "yes" } else { "no" })?;
                        ok &= boundary;
                    }
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Dual { file, output } => {
            emit(&load(&file)?.dual(), output, out)?;
            Ok(0)
        }
        Command::Product { left, right, output } => {
            emit(&load(&left)?.direct_product(&load(&right)?), output, out)?;
            Ok(0)
        }
        Command::Iso { left, right } => {
            let (g, h) = (load(&left)?, load(&right)?);
            match find_isomorphism(&g, &h) {
                Some(iso) => {
                    writeln!(out, "isomorphic")?;
                    for x in 0..g.order() {
                        writeln!(out, "{} -> {}", g.name(x), h.name(iso.apply(x)))?;
                    }
                    Ok(0)
                }
                None => {
                    writeln!(out, "not isomorphic")?;
                    Ok(1)
                }
            }
        }
        Command::Cycles { file, base } => {
            let g = load(&file)?;
            let base = element(&g, &base)?;
            let d = cycle_decomposition(&g, base)?;
            writeln!(out, "{} cycles based on {}", d.cycles.len(), g.name(base))?;
            for c in &d.cycles {
                let names: Vec<String> = c.members.iter().map(|&x| g.name(x)).collect();
                writeln!(out, "({})", names.join(", "))?;
            }
            Ok(0)
        }
        Command::Form { file } => {
            let g = load(&file)?;
            match detect_form_qn(&g)? {
                None => {
                    writeln!(out, "not of form Qn")?;
                    Ok(1)
                }
                Some(f) => {
                    writeln!(out, "form Q{} with a = {}, b = {}", f.depth, g.name(f.a), g.name(f.b))?;
                    if f.depth >= 2 {
                        let p = branch_profile(&g, f.a, f.b)?;
                        writeln!(out, "aba·a = {}", p.branch)?;
                    }
                    Ok(0)
                }
            }
        }
        Command::Hfamily { file, pair, depth } => {
            let g = load(&file)?;
            let [a, b] = pair.as_slice() else {
                return Err(Error::Precondition("--pair takes two elements, as A,B".into()));
            };
            let (a, b) = (element(&g, a)?, element(&g, b)?);
            let h = h_family(&g, a, b, depth)?;
            writeln!(out, "aba = {}", g.name(h.base.aba))?;
            for (i, level) in h.levels.iter().enumerate() {
                let names: Vec<String> = level.iter().map(|&x| g.name(x)).collect();
                writeln!(out, "H{} = ({})", i + 1, names.join(", "))?;
            }
            let q = Quadratical::new(&g)?;
            let stars = q.star_elements(a, b, depth)?;
            for (i, level) in stars.iter().enumerate() {
                let names: Vec<String> = level.iter().map(|&x| g.name(x)).collect();
                writeln!(out, "H{}* = ({})", i + 1, names.join(", "))?;
            }
            Ok(0)
        }
        Command::Complete {
            form,
            branch,
            output,
            trace,
            expect,
        } => {
            if form == 0 {
                return Err(Error::Precondition("form depth must be at least 1".into()));
            }
            let branch: Branch = branch.parse()?;
            let run = complete_form_qn(BranchChoice::new(form, branch))?;
            match trace {
                Some(path) => std::fs::write(path, run.trace())?,
                None => out.write_all(run.trace().as_bytes())?,
            }
            if let Err(e) = run.replay() {
                return Err(Error::StructureViolation(format!("trace does not replay: {e}")));
            }
            let got = match run.groupoid() {
                Some(g) => {
                    writeln!(out, "COMPLETED: form Q{form}, branch {branch}, order {}", g.order())?;
                    if output.is_some() {
                        emit(g, output, out)?;
                    }
                    Expect::Complete
                }
                None => {
                    writeln!(out, "CONTRADICTION: form Q{form} with aba·a = {branch} is impossible")?;
                    Expect::Contradiction
                }
            };
            Ok(if expect.is_some_and(|e| e != got) { 1 } else { 0 })
        }
        Command::Translatable { file, scan } => {
            if let Some(n) = scan {
                let r = scan_translatable(n)?;
                let shifts: Vec<String> = r.shifts().iter().map(|k| k.to_string()).collect();
                writeln!(out, "order {n}: quadratical for k in {{{}}}", shifts.join(", "))?;
                return Ok(0);
            }
            let Some(file) = file else {
                return Err(Error::Precondition("give a table or --scan N".into()));
            };
            let ks = detect_translatable(&load(&file)?)?;
            if ks.is_empty() {
                writeln!(out, "not translatable")?;
                Ok(1)
            } else {
                let ks: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
                writeln!(out, "k-translatable for k in {{{}}}", ks.join(", "))?;
                Ok(0)
            }
        }
        Command::Enumerate { order, affine, out: dir } => {
            let r = if affine { classify_affine(order)? } else { enumerate_quadratical(order)? };
            writeln!(out, "order {order}: {} classes", r.representatives.len())?;
            if let Some(raw) = r.raw_count {
                writeln!(out, "labeled tables: {raw}")?;
            }
            if !r.complete {
                writeln!(out, "incomplete: time budget exhausted")?;
            }
            if let Some(dir) = dir {
                let paths = write_enumeration(&r, &dir)?;
                writeln!(out, "wrote {} tables to {}", paths.len(), dir.display())?;
            } else {
                for g in &r.representatives {
                    writeln!(out)?;
                    out.write_all(serialize_table(g).as_bytes())?;
                }
            }
            Ok(if r.complete { 0 } else { 1 })
        }
        Command::Spectrum { max } => {
            for entry in spectrum_scan(max)? {
                writeln!(out, "{entry}")?;
            }
            Ok(0)
        }
        Command::Catalog { name, output } => match name {
            None => {
                for e in catalog() {
                    writeln!(out, "{:<14} {}", e.name, e.description)?;
                }
                Ok(0)
            }
            Some(name) => {
                let g = self_test(&name)?;
                emit(&g, output, out)?;
                Ok(0)
            }
        },
        Command::Report => {
            let r = run_report()?;
            out.write_all(r.text.as_bytes())?;
            Ok(if r.mismatches == 0 { 0 } else { 1 })
        }
    }
}
