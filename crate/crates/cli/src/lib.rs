//! The `unifrac` command line.
//!
//! Exit status: 0 on success, 1 on a domain or validation failure, 2 on a
//! usage error. Reports go to stdout as `key value` lines in a fixed order.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use unifrac::calculus::{equal_by_3x3, theorem_sweep};
use unifrac::denominators::check_axioms;
use unifrac::fraction::{build_fraction_category, compose_lax, compose_strict};
use unifrac::instances::{make_named, Instance};
use unifrac::io::{load_instance, localise_document, to_dot, write_instance};
use unifrac::three_arrow::{check_three_arrow, fraction_equivalence, normalise, ThreeArrow};
use unifrac::transport::{
    check_localisation_preserves_coproducts, check_localisation_preserves_products, sum_formula_check,
    validate_addition, validate_coproducts, validate_products,
};
use unifrac::{Error, UniFractionable};

#[derive(Parser, Debug)]
#[command(name = "unifrac", version, about = "Localise finite categories with denominators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the file describes a category with denominators.
    Validate { file: PathBuf },
    /// Report every uni-fractionability axiom.
    Axioms {
        file: PathBuf,
        #[arg(long)]
        witness: bool,
    },
    /// Build the fraction category and write it as an instance document.
    Localise {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide whether two parallel 3-arrows are fraction-equal.
    Equal {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        witness: bool,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
    },
    /// Compose two 3-arrows in the fraction category.
    Compose {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum, default_value_t = Mode::Strict)]
        mode: Mode,
    },
    /// Replace a 3-arrow by a normal one in the same class.
    Normalise {
        file: PathBuf,
        #[arg(long)]
        arrow: String,
    },
    /// Run a verification suite.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Write a built-in instance.
    Instance {
        name: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Oracle,
    #[value(name = "3x3")]
    ThreeByThree,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Strict,
    Lax,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    Axioms,
    Theorem,
    Transport,
    All,
}

/// Runs the command line with `args` (including the program name) and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn load(path: &Path) -> Result<Instance, Error> {
    load_instance(&fs::read_to_string(path)?)
}

fn arrow(inst: &Instance, text: &str) -> Result<ThreeArrow, Error> {
    let t = ThreeArrow::parse(inst.base(), text)?;
    check_three_arrow(&inst.dd, &t)?;
    Ok(t)
}

type Outcome = Result<bool, Error>;

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { file } => validate(&load(&file)?, out),
        Command::Axioms { file, witness } => {
            let inst = load(&file)?;
            let report = check_axioms(&inst.dd);
            write!(out, "{}", report.render(inst.base(), witness))?;
            Ok(report.holds())
        }
        Command::Localise { file, output, dot } => {
            let fc = build_fraction_category(load(&file)?.dd)?;
            fs::write(&output, localise_document(&fc).render())?;
            if let Some(dot) = dot {
                fs::write(dot, to_dot(&fc))?;
            }
            writeln!(out, "classes {}", fc.num_classes())?;
            Ok(true)
        }
        Command::Equal { file, left, right, witness, method } => {
            let inst = load(&file)?;
            equal(&inst, &arrow(&inst, &left)?, &arrow(&inst, &right)?, witness, method, out)
        }
        Command::Compose { file, left, right, mode } => {
            let inst = load(&file)?;
            let (t1, t2) = (arrow(&inst, &left)?, arrow(&inst, &right)?);
            let fc = build_fraction_category(inst.dd.clone())?;
            let composite = match mode {
                Mode::Strict => compose_strict(fc.uf(), &t1, &t2)?,
                Mode::Lax => compose_lax(fc.dd(), &t1, &t2)?,
            };
            writeln!(out, "composite {}", composite.render(fc.base()))?;
            writeln!(out, "class {}", fc.class_name(fc.class_of(&composite)?))?;
            Ok(true)
        }
        Command::Normalise { file, arrow: text } => {
            let inst = load(&file)?;
            let t = arrow(&inst, &text)?;
            let uf = UniFractionable::new(inst.dd)?;
            writeln!(out, "normal {}", normalise(&uf, &t)?.render(uf.base()))?;
            Ok(true)
        }
        Command::Check { file, suite } => check(&load(&file)?, suite, out),
        Command::Instance { name, output } => {
            let inst = make_named(&name.to_uppercase()).map_err(|_| Error::UnknownInstance(name))?;
            fs::write(output, write_instance(&inst))?;
            Ok(true)
        }
    }
}

fn validate(inst: &Instance, out: &mut dyn Write) -> Outcome {
    let c = inst.base();
    let mut problems: Vec<String> = c.validate().violations.iter().map(ToString::to_string).collect();
    if problems.is_empty() {
        let block = |label: &'static str, found: Vec<String>| found.into_iter().map(move |p| format!("{label}: {p}"));
        if let Some(cp) = &inst.coproducts {
            problems.extend(block("coproducts", validate_coproducts(c, cp)));
        }
        if let Some(pp) = &inst.products {
            problems.extend(block("products", validate_products(c, pp)));
        }
        if let Some(add) = &inst.addition {
            problems.extend(block("addition", validate_addition(c, add)));
        }
    }
    writeln!(out, "objects {}", c.num_objects())?;
    writeln!(out, "morphisms {}", c.num_morphisms())?;
    writeln!(out, "denominators {}", inst.dd.members(unifrac::Which::D).len())?;
    for p in &problems {
        writeln!(out, "violation {p}")?;
    }
    writeln!(out, "valid {}", problems.is_empty())?;
    Ok(problems.is_empty())
}

fn equal(inst: &Instance, t1: &ThreeArrow, t2: &ThreeArrow, witness: bool, method: Method, out: &mut dyn Write) -> Outcome {
    let c = inst.base();
    if !t1.is_parallel(t2, c) {
        return Err(Error::Precondition(format!(
            "3-arrows `{}` and `{}` are not parallel",
            t1.render(c),
            t2.render(c)
        )));
    }
    let oracle = match method {
        Method::ThreeByThree => None,
        _ => Some(fraction_equivalence(&inst.dd)?.same_class(t1, t2)),
    };
    let grid = match method {
        Method::Oracle => None,
        _ => Some(equal_by_3x3(&inst.dd, t1, t2)?),
    };
    let verdict = match (oracle, &grid) {
        (Some(o), Some(g)) if o != g.equal => {
            return Err(Error::Internal(format!(
                "divergence on `{}` vs `{}`: oracle {o}, 3x3 {}",
                t1.render(c),
                t2.render(c),
                g.equal
            )));
        }
        (Some(o), _) => o,
        (None, Some(g)) => g.equal,
        (None, None) => unreachable!("every method runs at least one decision"),
    };
    writeln!(out, "{}", if verdict { "equal" } else { "not equal" })?;
    if witness {
        match grid.as_ref().and_then(|g| g.witness) {
            Some(w) => write!(out, "{}", w.render(c))?,
            None if grid.is_none() => writeln!(out, "witness unavailable with --method oracle")?,
            None => {}
        }
    }
    Ok(true)
}

fn check(inst: &Instance, suite: Suite, out: &mut dyn Write) -> Outcome {
    let mut ok = true;
    let report = check_axioms(&inst.dd);
    if matches!(suite, Suite::Axioms | Suite::All) {
        let failed = report.failed();
        writeln!(out, "axioms {}", if failed.is_empty() { "PASS" } else { "FAIL" })?;
        for name in &failed {
            writeln!(out, "axioms failed {name}")?;
        }
        ok &= failed.is_empty();
    }
    if matches!(suite, Suite::Theorem | Suite::All) {
        if report.base.is_ok() {
            let sweep = theorem_sweep(&inst.dd)?;
            writeln!(out, "theorem pairs {}", sweep.pairs)?;
            writeln!(out, "theorem equal {}", sweep.equal_pairs)?;
            writeln!(out, "theorem divergences {}", sweep.divergences.len())?;
            for (t1, t2) in &sweep.divergences {
                writeln!(out, "theorem diverges {} {}", t1.render(inst.base()), t2.render(inst.base()))?;
            }
            ok &= sweep.divergences.is_empty();
        } else {
            writeln!(out, "theorem SKIPPED invalid category")?;
            ok = false;
        }
    }
    if matches!(suite, Suite::Transport | Suite::All) {
        ok &= transport(inst, report.holds(), out)?;
    }
    Ok(ok)
}

fn transport(inst: &Instance, uni_fractionable: bool, out: &mut dyn Write) -> Outcome {
    if inst.coproducts.is_none() && inst.products.is_none() && inst.addition.is_none() {
        writeln!(out, "transport SKIPPED no transport data")?;
        return Ok(true);
    }
    if !uni_fractionable {
        writeln!(out, "transport SKIPPED not uni-fractionable")?;
        return Ok(false);
    }
    let fc = build_fraction_category(inst.dd.clone())?;
    let mut ok = true;
    let mut verdict = |out: &mut dyn Write, label: &str, pass: bool, detail: String| -> std::io::Result<()> {
        ok &= pass;
        writeln!(out, "{label} {} {detail}", if pass { "PASS" } else { "FAIL" })
    };
    if let Some(cp) = &inst.coproducts {
        let r = check_localisation_preserves_coproducts(&fc, cp)?;
        verdict(out, "coproducts", r.passes(), format!("formula_pairs {}", r.formula_pairs))?;
    }
    if let Some(pp) = &inst.products {
        let r = check_localisation_preserves_products(&fc, pp)?;
        verdict(out, "products", r.passes(), format!("formula_pairs {}", r.formula_pairs))?;
    }
    if let Some(add) = &inst.addition {
        let r = sum_formula_check(&fc, add)?;
        verdict(out, "addition", r.passes(), format!("pairs {}", r.pairs_checked))?;
    }
    Ok(ok)
}
