use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use two_transit::diagram::{self, Context};
use two_transit::oracle;
use two_transit::search::DEFAULT_BUDGET;
use two_transit::transition1::{self, associate_bundle};
use two_transit::transition2::{classify2, semistrictify};
use two_transit::RightAction;

use crate::error::CliError;
use crate::wire::*;

pub const BUDGET_VAR: &str = "TWO_TRANSIT_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "two-transit", version, about = "Crossed modules and 2-transitions on finite cover nerves")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the validator matching a manifest's kind
    Validate { file: PathBuf },
    /// Classes of transitions on a shape
    Classify1 {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Classes of semistrict 2-transitions on a shape
    Classify2 {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        xm: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Compose two morphisms, or two 2-morphisms vertically
    Compose {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Replace a 2-transition by an equivalent one with trivial unit
    Semistrictify { file: PathBuf },
    /// Build the bundle associated to a transition and a fibre
    Associate {
        #[arg(long)]
        transition: PathBuf,
        #[arg(long)]
        fiber: PathBuf,
    },
    /// Evaluate a diagram term
    Eval {
        #[arg(long, conflicts_with = "text", required_unless_present = "text")]
        diagram: Option<PathBuf>,
        #[arg(long, requires = "xm")]
        text: Option<String>,
        /// Crossed module for --text
        #[arg(long)]
        xm: Option<PathBuf>,
        /// Object binding NAME=INDEX for --text
        #[arg(long = "object", value_parser = parse_binding)]
        objects: Vec<(String, usize)>,
        /// Generator binding NAME=INDEX for --text
        #[arg(long = "generator", value_parser = parse_binding)]
        generators: Vec<(String, usize)>,
    },
    /// Independent reference computations
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Number of conjugacy classes, by Burnside's lemma
    Conj {
        #[arg(long)]
        group: PathBuf,
    },
    /// Dimension of H² of a shape's complex over Z/p
    H2 {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long, default_value_t = 2)]
        prime: u32,
    },
}

fn parse_binding(s: &str) -> Result<(String, usize), String> {
    let (name, value) = s.split_once('=').ok_or("expected NAME=INDEX")?;
    let value = value.parse().map_err(|e| format!("bad index '{value}': {e}"))?;
    Ok((name.to_string(), value))
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    body: Value,
    summary: String,
}

fn read_manifest(path: &Path) -> Result<Manifest, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Manifest::parse(&text)
}

fn read<T: for<'de> serde::Deserialize<'de>>(path: &Path, kind: Kind) -> Result<T, CliError> {
    read_manifest(path)?.payload(kind)
}

fn budget(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| CliError::input(format!("{BUDGET_VAR}={v}: {e}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn validate(path: &Path) -> Result<Report, CliError> {
    let m = read_manifest(path)?;
    let kind = m.kind;
    let mut body = json!({ "kind": kind.name(), "ok": true });
    let extra = match kind {
        Kind::Group => {
            let g = m.payload::<GroupJson>(kind)?.decode()?;
            json!({ "order": g.order(), "abelian": g.is_abelian(), "conjugacy_classes": g.conjugacy_classes().len() })
        }
        Kind::Action => {
            let a = m.payload::<ActionJson>(kind)?.decode()?;
            json!({ "set_size": a.set_size(), "is_torsor": a.is_torsor() })
        }
        Kind::CrossedModule => {
            let xm = m.payload::<CrossedModuleJson>(kind)?.decode()?;
            json!({ "H": xm.h().order(), "D": xm.d_group().order() })
        }
        Kind::Shape => {
            let s = m.payload::<ShapeJson>(kind)?.decode()?;
            s.validate()?;
            json!({ "sizes": (1..=4).map(|k| s.size(k)).collect::<Vec<_>>() })
        }
        Kind::Transition1 => {
            m.payload::<Transition1Json>(kind)?.decode()?.validate()?;
            json!({})
        }
        Kind::Cocycle2 => {
            let c = m.payload::<Cocycle2Json>(kind)?.decode()?;
            c.validate()?;
            json!({ "semistrict": c.is_semistrict() })
        }
        Kind::Morphism1 => {
            let f = m.payload::<Morphism1Json>(kind)?.decode()?;
            f.source().validate()?;
            f.target().validate()?;
            f.validate()?;
            json!({})
        }
        Kind::Morphism2 => {
            let f = m.payload::<Morphism2Json>(kind)?.decode()?;
            f.source().validate()?;
            f.target().validate()?;
            f.validate()?;
            json!({})
        }
        Kind::TwoMorphism => {
            let w = m.payload::<TwoMorphismJson>(kind)?.decode()?;
            for f in [w.source(), w.target()] {
                f.source().validate()?;
                f.target().validate()?;
                f.validate()?;
            }
            w.validate()?;
            json!({})
        }
        Kind::Diagram => {
            let d = m.payload::<DiagramJson>(kind)?;
            eval_report(&d)?.body
        }
    };
    merge(&mut body, extra);
    Ok(Report {
        summary: format!("{}: ok", kind.name()),
        body,
    })
}

fn merge(into: &mut Value, extra: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, extra) {
        a.extend(b);
    }
}

fn classify1(shape: &Path, group: &Path, flag: Option<u64>) -> Result<Report, CliError> {
    let s = read::<ShapeJson>(shape, Kind::Shape)?.decode()?;
    let g = read::<GroupJson>(group, Kind::Group)?.decode()?;
    let c = transition1::classify1(&s, &g, budget(flag)?)?;
    let representatives: Vec<Value> = c
        .classes
        .iter()
        .map(|k| json!({ "g": PairValues::encode(&s, &k.representative), "size": k.size }))
        .collect();
    Ok(Report {
        summary: format!("classify1: {} classes among {} transitions", c.classes.len(), c.transitions),
        body: json!({
            "classes": c.classes.len(),
            "transitions": c.transitions,
            "representatives": representatives,
        }),
    })
}

fn classify2_report(shape: &Path, xm: &Path, flag: Option<u64>) -> Result<Report, CliError> {
    let s = Arc::new(read::<ShapeJson>(shape, Kind::Shape)?.decode()?);
    let xm = Arc::new(read::<CrossedModuleJson>(xm, Kind::CrossedModule)?.decode()?);
    let c = classify2(&s, &xm, budget(flag)?)?;
    let representatives: Vec<Value> = c
        .classes
        .iter()
        .map(|k| json!({ "lambda": k.lambda, "g": k.g, "size": k.size }))
        .collect();
    Ok(Report {
        summary: format!("classify2: {} classes ({})", c.classes.len(), c.method.name()),
        body: json!({
            "classes": c.classes.len(),
            "cocycles": c.cocycles,
            "method": c.method.name(),
            "representatives": representatives,
        }),
    })
}

fn compose(lhs: &Path, rhs: &Path) -> Result<Report, CliError> {
    let (a, b) = (read_manifest(lhs)?, read_manifest(rhs)?);
    if a.kind != b.kind {
        return Err(CliError::input(format!(
            "cannot compose a {} with a {}",
            a.kind.name(),
            b.kind.name()
        )));
    }
    let kind = a.kind;
    let out = match kind {
        Kind::Morphism1 => {
            let f = a.payload::<Morphism1Json>(kind)?.decode()?;
            let g = b.payload::<Morphism1Json>(kind)?.decode()?;
            f.validate()?;
            g.validate()?;
            Manifest::new(kind, &Morphism1Json::from(&f.compose(&g)?))
        }
        Kind::Morphism2 => {
            let f = a.payload::<Morphism2Json>(kind)?.decode()?;
            let g = b.payload::<Morphism2Json>(kind)?.decode()?;
            f.validate()?;
            g.validate()?;
            Manifest::new(kind, &Morphism2Json::from(&f.compose(&g)?))
        }
        Kind::TwoMorphism => {
            let f = a.payload::<TwoMorphismJson>(kind)?.decode()?;
            let g = b.payload::<TwoMorphismJson>(kind)?.decode()?;
            f.validate()?;
            g.validate()?;
            Manifest::new(kind, &TwoMorphismJson::from(&f.vcompose(&g)?))
        }
        other => {
            return Err(CliError::input(format!("{} manifests do not compose", other.name())));
        }
    };
    Ok(Report {
        summary: format!("compose: {}", kind.name()),
        body: serde_json::to_value(out).expect("manifests serialise"),
    })
}

fn semistrictify_report(path: &Path) -> Result<Report, CliError> {
    let c = read::<Cocycle2Json>(path, Kind::Cocycle2)?.decode()?;
    let s = semistrictify(&c)?;
    let body = json!({
        "cocycle": Manifest::new(Kind::Cocycle2, &Cocycle2Json::from(&s.cocycle)),
        "forward": Manifest::new(Kind::Morphism2, &Morphism2Json::from(&s.forward)),
        "backward": Manifest::new(Kind::Morphism2, &Morphism2Json::from(&s.backward)),
        "unit": Manifest::new(Kind::TwoMorphism, &TwoMorphismJson::from(&s.unit)),
        "counit": Manifest::new(Kind::TwoMorphism, &TwoMorphismJson::from(&s.counit)),
    });
    Ok(Report {
        summary: format!(
            "semistrictify: input was {}semistrict",
            if c.is_semistrict() { "already " } else { "not " }
        ),
        body,
    })
}

fn associate(transition: &Path, fiber: &Path) -> Result<Report, CliError> {
    let t = read::<Transition1Json>(transition, Kind::Transition1)?.decode()?;
    let f = read::<ActionJson>(fiber, Kind::Action)?.decode()?;
    t.validate()?;
    let b = associate_bundle(&t, &f)?;
    let mut body = json!({
        "base_size": b.base_size(),
        "total_size": b.total_size(),
        "proj": b.proj.values(),
        "jtilde": b.jtilde.values(),
    });
    if f == RightAction::regular(t.group()) {
        let torsors = (0..b.base_size())
            .map(|x| Ok(b.fibre_torsor(t.group(), x)?.is_torsor()))
            .collect::<Result<Vec<bool>, CliError>>()?;
        merge(&mut body, json!({ "fibres_are_torsors": torsors.iter().all(|&t| t) }));
    }
    Ok(Report {
        summary: format!("associate: {} points over {} base points", b.total_size(), b.base_size()),
        body,
    })
}

fn eval_report(d: &DiagramJson) -> Result<Report, CliError> {
    let xm = d.xm.decode()?;
    let program = diagram::parse_program(&d.program)?;
    let objects: HashMap<String, usize> = d.objects.clone().into_iter().collect();
    let generators: HashMap<String, usize> = d.generators.clone().into_iter().collect();
    let ctx = Context::from_program(&xm, &program, &objects, &generators)?;
    let (source, target) = ctx.typecheck(&program.term)?;
    let arrow = ctx.evaluate(&program.term)?;
    Ok(Report {
        summary: format!("eval: ({}, {}) : {source} -> {target}", arrow.h, arrow.y),
        body: json!({
            "term": program.term.to_string(),
            "source": source,
            "target": target,
            "arrow": { "h": arrow.h, "y": arrow.y },
        }),
    })
}

fn oracle_report(which: &OracleCommand) -> Result<Report, CliError> {
    match which {
        OracleCommand::Conj { group } => {
            let g = read::<GroupJson>(group, Kind::Group)?.decode()?;
            let n = oracle::conjugacy_class_count(&g);
            Ok(Report {
                summary: format!("oracle conj: {n} classes"),
                body: json!({ "conjugacy_classes": n }),
            })
        }
        OracleCommand::H2 { shape, prime } => {
            if *prime < 2 || !(2..*prime).all(|d| prime % d != 0) {
                return Err(CliError::input(format!("{prime} is not prime")));
            }
            let s = read::<ShapeJson>(shape, Kind::Shape)?.decode()?;
            let n = oracle::h2_dimension(&oracle::complex_of_shape(&s), *prime);
            Ok(Report {
                summary: format!("oracle h2: dimension {n} over Z/{prime}"),
                body: json!({ "h2_dimension": n, "prime": prime }),
            })
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Classify1 { shape, group, budget } => classify1(shape, group, *budget),
        Command::Classify2 { shape, xm, budget } => classify2_report(shape, xm, *budget),
        Command::Compose { lhs, rhs } => compose(lhs, rhs),
        Command::Semistrictify { file } => semistrictify_report(file),
        Command::Associate { transition, fiber } => associate(transition, fiber),
        Command::Eval {
            diagram,
            text,
            xm,
            objects,
            generators,
        } => {
            let d = match (diagram, text, xm) {
                (Some(path), _, _) => read::<DiagramJson>(path, Kind::Diagram)?,
                (None, Some(program), Some(xm)) => DiagramJson {
                    xm: read(xm, Kind::CrossedModule)?,
                    program: program.clone(),
                    objects: objects.iter().cloned().collect(),
                    generators: generators.iter().cloned().collect(),
                },
                _ => return Err(CliError::input("eval needs --diagram, or --text with --xm")),
            };
            eval_report(&d)
        }
        Command::Oracle { which } => oracle_report(which),
    }
}

fn render(body: &Value) -> String {
    let mut s = serde_json::to_string(body).expect("reports serialise");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    match dispatch(&cli) {
        Ok(r) => Outcome {
            code: 0,
            stdout: render(&r.body),
            stderr: format!("{}\n", r.summary),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: render(&json!({ "ok": false, "error": { "kind": e.kind(), "message": e.message() } })),
            stderr: format!("error: {e}\n"),
        },
    }
}
