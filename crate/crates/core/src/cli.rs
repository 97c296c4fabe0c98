//! Command-line front end. [`run`] is the whole program minus process exit.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::arc::{apply_functor, is_admissible, Arc, Functor, Weight};
use crate::closure::{is_torsion_class_with, symbolic_closure_with, DescriptorSet, Verdict, DEFAULT_WINDOW};
use crate::error::Error;
use crate::extension::{e_set, middle_term_multi, middle_terms, ptolemy_arcs};
use crate::hammock::{ext_dim, hom_dim};
use crate::io::{from_json, to_json, ArcSetDoc, DescriptorDoc, OrbitDoc, T1Doc};
use crate::orbit::{MDiagonal, OrbitCategory};
use crate::render::{render_arcs, render_polygon};
use crate::tube::{t1_classify, t1_ext_dim, t1_extensions, t1_hom_dim, T1Descriptor, TubeObject};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "sphtor", version, about = "Arc, tube and polygon models of w-spherical categories")]
struct Cli {
    /// Weight of the spherical object (arc commands).
    #[arg(long, global = true, allow_hyphen_values = true)]
    w: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Half-width of sampling windows and closure margins.
    #[arg(long, global = true, env = "SPHTOR_WINDOW")]
    window: Option<i64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FunctorArg {
    Sigma,
    Tau,
    Serre,
}

#[derive(Debug, Args)]
struct Pair {
    /// First arc as "t,u".
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Second arc as "t,u".
    #[arg(long, allow_hyphen_values = true)]
    b: String,
}

#[derive(Debug, Args)]
struct SetInput {
    /// JSON document file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Arcs as "t,u;t,u;...".
    #[arg(long, allow_hyphen_values = true)]
    arcs: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Is the pair an admissible arc?
    Admissible {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Apply Σ, τ or the Serre functor k times.
    Act {
        #[arg(long, value_enum)]
        functor: FunctorArg,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// dim Hom(a, b).
    Hom(Pair),
    /// dim Ext¹(b, a), i.e. extensions a -> E -> b.
    Ext(Pair),
    /// Middle terms of a -> E -> b; repeat --b for a direct sum.
    Middle {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true, required = true)]
        b: Vec<String>,
    },
    /// Middle terms of extensions in both directions.
    Eset(Pair),
    /// Ptolemy arcs by class.
    Ptolemy(Pair),
    /// Extension closure of a descriptor set.
    Closure(SetInput),
    /// Torsion-class check of a descriptor set.
    Torsion(SetInput),
    /// The tube category (w = 1).
    T1 {
        #[command(subcommand)]
        cmd: T1Cmd,
    },
    /// Orbit categories C_m(A_n).
    Orbit {
        #[command(subcommand)]
        cmd: OrbitCmd,
    },
    /// SVG drawing of arcs (--w) or m-diagonals (--n, --m).
    Render {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        arcs: Option<String>,
        /// Drawn dashed, e.g. Ptolemy arcs.
        #[arg(long, allow_hyphen_values = true)]
        dashed: Option<String>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        diagonals: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum T1Cmd {
    /// Objects are "shift,level".
    Hom {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    Ext {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Extensions X_r -> E -> target.
    Extensions {
        #[arg(long)]
        r: u64,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    Classify {
        #[arg(long, value_enum)]
        pattern: Option<PatternArg>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PatternArg {
    Empty,
    All,
    Upper,
}

#[derive(Debug, Args)]
struct Params {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    m: i64,
}

#[derive(Debug, Subcommand)]
enum OrbitCmd {
    /// Indecomposables with their m-diagonals.
    List(Params),
    /// Diagonals are "i,j".
    Hom {
        #[command(flatten)]
        p: Params,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Ext {
        #[command(flatten)]
        p: Params,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Middle {
        #[command(flatten)]
        p: Params,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Closure {
        #[command(flatten)]
        p: Params,
        /// "i,j;i,j;...".
        #[arg(long)]
        diagonals: String,
    },
    /// All torsion classes and a CSV summary.
    Enumerate {
        #[command(flatten)]
        p: Params,
        /// In text mode, list each class before the summary.
        #[arg(long)]
        classes: bool,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e)
    }
}

type Out = std::result::Result<String, Failure>;

fn parse_pair(s: &str) -> std::result::Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("expected two integers \"x,y\", got {s:?}"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    Ok((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?))
}

fn parse_list(s: &str) -> std::result::Result<Vec<(i64, i64)>, Failure> {
    s.split(';').map(str::trim).filter(|p| !p.is_empty()).map(parse_pair).collect()
}

fn read(path: &PathBuf) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

struct Ctx {
    w: Option<i64>,
    format: Format,
    window: Option<i64>,
}

impl Ctx {
    fn weight(&self) -> std::result::Result<Weight, Failure> {
        let w = self.w.ok_or_else(|| Failure::Usage("this command needs --w".into()))?;
        Ok(Weight::arc_model(w)?)
    }

    fn arc(&self, s: &str) -> std::result::Result<Arc, Failure> {
        let (x, y) = parse_pair(s)?;
        Ok(Arc::new(self.weight()?, x, y)?)
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> String {
        match self.format {
            Format::Json => to_json(value),
            Format::Text => text(),
        }
    }

    fn descriptors(&self, input: &SetInput) -> std::result::Result<DescriptorSet, Failure> {
        match (&input.input, &input.arcs) {
            (Some(path), None) => {
                let mut doc: DescriptorDoc = from_json(&read(path)?)?;
                if let Some(w) = self.w {
                    if w != doc.w {
                        return Err(Error::WeightMismatch(doc.w, w).into());
                    }
                }
                doc.w = Weight::arc_model(doc.w)?.0;
                Ok(DescriptorSet::try_from(doc)?)
            }
            (None, Some(list)) => {
                let w = self.weight()?;
                let arcs = parse_list(list)?
                    .into_iter()
                    .map(|(x, y)| Arc::new(w, x, y))
                    .collect::<crate::Result<Vec<_>>>()?;
                Ok(DescriptorSet::finite(w, arcs)?)
            }
            _ => Err(Failure::Usage("give exactly one of --input or --arcs".into())),
        }
    }
}

fn join<T: std::fmt::Display>(xs: impl IntoIterator<Item = T>, empty: &str) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        empty.to_string()
    } else {
        v.join(" ")
    }
}

fn pairs_of(arcs: &BTreeSet<Arc>) -> Vec<[i64; 2]> {
    arcs.iter().map(|a| [a.t(), a.u()]).collect()
}

fn descriptor_text(d: &DescriptorSet) -> String {
    let mut lines = vec![format!("w = {}", d.w.0), format!("arcs: {}", join(&d.arcs, "none"))];
    for f in &d.fountains {
        let side = match f.side {
            crate::closure::Side::Left => "left",
            crate::closure::Side::Right => "right",
        };
        lines.push(format!("fountain at {} ({side}) from {}", f.vertex, f.from));
    }
    lines.join("\n")
}

fn tube_object(s: &str) -> std::result::Result<TubeObject, Failure> {
    let (shift, level) = parse_pair(s)?;
    if level < 0 {
        return Err(Failure::Usage(format!("tube level must be >= 0, got {level}")));
    }
    Ok(TubeObject::new(shift, level as u64))
}

fn diagonal(cat: &OrbitCategory, s: &str) -> std::result::Result<MDiagonal, Failure> {
    let (i, j) = parse_pair(s)?;
    let d = MDiagonal::try_from([i, j]).map_err(Failure::Usage)?;
    cat.object(&d)?;
    Ok(d)
}

fn dispatch(cli: &Cli) -> Out {
    let ctx = Ctx { w: cli.w, format: cli.format, window: cli.window };
    match &cli.cmd {
        Cmd::Admissible { a } => {
            let (x, y) = parse_pair(a)?;
            let w = ctx.weight()?;
            let ok = is_admissible(w, x, y)?;
            Ok(ctx.emit(&json!({ "admissible": ok }), || {
                format!("{{{x},{y}}} is {}admissible for w = {}", if ok { "" } else { "not " }, w.0)
            }))
        }
        Cmd::Act { functor, k, a } => {
            let a = ctx.arc(a)?;
            let f = match functor {
                FunctorArg::Sigma => Functor::Suspend,
                FunctorArg::Tau => Functor::Tau,
                FunctorArg::Serre => Functor::Serre,
            };
            let b = apply_functor(f, *k, &a);
            Ok(ctx.emit(&json!({ "arc": [b.t(), b.u()] }), || b.to_string()))
        }
        Cmd::Hom(p) => {
            let (a, b) = (ctx.arc(&p.a)?, ctx.arc(&p.b)?);
            let d = hom_dim(&a, &b)?;
            Ok(ctx.emit(&json!({ "hom": d }), || d.to_string()))
        }
        Cmd::Ext(p) => {
            let (a, b) = (ctx.arc(&p.a)?, ctx.arc(&p.b)?);
            let d = ext_dim(&b, &a)?;
            Ok(ctx.emit(&json!({ "ext": d }), || d.to_string()))
        }
        Cmd::Middle { a, b } => {
            let a = ctx.arc(a)?;
            let bs = b.iter().map(|s| ctx.arc(s)).collect::<std::result::Result<Vec<_>, _>>()?;
            if bs.len() == 1 {
                let classes = middle_terms(&a, &bs[0])?;
                Ok(ctx.emit(&classes, || {
                    classes
                        .iter()
                        .map(|c| format!("{} -> {} -> {} [{:?}]", c.first, join(&c.middles, "0"), c.last, c.side))
                        .collect::<Vec<_>>()
                        .join("\n")
                }))
            } else {
                let multi = middle_term_multi(&a, &bs)?;
                Ok(ctx.emit(&multi, || {
                    let mut lines: Vec<String> = multi
                        .reductions
                        .iter()
                        .map(|r| format!("split off {} (factors through {})", r.split_off, r.through))
                        .collect();
                    for c in &multi.classes {
                        lines.push(format!("{:?}: {}", c.map, join(&c.middles, "0")));
                    }
                    lines.join("\n")
                }))
            }
        }
        Cmd::Eset(p) => {
            let (a, b) = (ctx.arc(&p.a)?, ctx.arc(&p.b)?);
            let set = e_set(&a, &b)?;
            Ok(ctx.emit(&ArcSetDoc::new(None, &set), || join(&set, "none")))
        }
        Cmd::Ptolemy(p) => {
            let (a, b) = (ctx.arc(&p.a)?, ctx.arc(&p.b)?);
            let pa = ptolemy_arcs(&a, &b)?;
            let doc = json!({
                "class_i": pairs_of(&pa.class_i),
                "class_ii": pairs_of(&pa.class_ii),
                "class_iii": pairs_of(&pa.class_iii),
            });
            Ok(ctx.emit(&doc, || {
                format!(
                    "I: {}\nII: {}\nIII: {}",
                    join(&pa.class_i, "none"),
                    join(&pa.class_ii, "none"),
                    join(&pa.class_iii, "none")
                )
            }))
        }
        Cmd::Closure(input) => {
            let x = ctx.descriptors(input)?;
            let c = symbolic_closure_with(&x, ctx.window)?;
            Ok(ctx.emit(&c, || descriptor_text(&c)))
        }
        Cmd::Torsion(input) => {
            let x = ctx.descriptors(input)?;
            let r = is_torsion_class_with(&x, ctx.window.unwrap_or(DEFAULT_WINDOW))?;
            Ok(ctx.emit(&r, || {
                let verdict = match &r.verdict {
                    Verdict::TorsionClass => "torsion class".to_string(),
                    Verdict::NotClosed { a, b, missing } => {
                        format!("not closed: {a} and {b} need {missing}")
                    }
                    Verdict::NotContravariantlyFinite { fountain } => {
                        format!("not contravariantly finite: fountain at {} lacks a partner", fountain.vertex)
                    }
                };
                let note = if r.windowed { " (checked on a window)" } else { "" };
                format!(
                    "{verdict}{note}\nperp sample in [{}, {}]: {}",
                    r.window.0,
                    r.window.1,
                    r.perp_sample.len()
                )
            }))
        }
        Cmd::T1 { cmd } => t1(&ctx, cmd),
        Cmd::Orbit { cmd } => orbit(&ctx, cmd),
        Cmd::Render { input, arcs, dashed, n, m, diagonals } => {
            if let Some(path) = input {
                let text = read(path)?;
                if let Ok(doc) = from_json::<OrbitDoc>(&text) {
                    let cat = OrbitCategory::new(doc.n, doc.m)?;
                    let ds = doc.validate(&cat)?;
                    return Ok(render_polygon(cat.params.big_n, &ds, &BTreeSet::new()));
                }
                let doc: ArcSetDoc = from_json(&text)?;
                let (_, set) = doc.arcs(ctx.w.map(Weight))?;
                return Ok(render_arcs(&set, &BTreeSet::new()));
            }
            if let (Some(n), Some(m)) = (n, m) {
                let cat = OrbitCategory::new(*n, *m)?;
                let parse = |s: &Option<String>| -> std::result::Result<BTreeSet<MDiagonal>, Failure> {
                    let list = s.as_deref().map(parse_list).transpose()?.unwrap_or_default();
                    list.iter().map(|(i, j)| diagonal(&cat, &format!("{i},{j}"))).collect()
                };
                return Ok(render_polygon(cat.params.big_n, &parse(diagonals)?, &parse(dashed)?));
            }
            let parse = |s: &Option<String>| -> std::result::Result<BTreeSet<Arc>, Failure> {
                let list = s.as_deref().map(parse_list).transpose()?.unwrap_or_default();
                list.iter().map(|(x, y)| ctx.arc(&format!("{x},{y}"))).collect()
            };
            Ok(render_arcs(&parse(arcs)?, &parse(dashed)?))
        }
    }
}

fn t1(ctx: &Ctx, cmd: &T1Cmd) -> Out {
    match cmd {
        T1Cmd::Hom { a, b } => {
            let d = t1_hom_dim(&tube_object(a)?, &tube_object(b)?);
            Ok(ctx.emit(&json!({ "hom": d }), || d.to_string()))
        }
        T1Cmd::Ext { a, b } => {
            let d = t1_ext_dim(&tube_object(b)?, &tube_object(a)?);
            Ok(ctx.emit(&json!({ "ext": d }), || d.to_string()))
        }
        T1Cmd::Extensions { r, target } => {
            let t = tube_object(target)?;
            let fam = t1_extensions(*r, &t)?;
            Ok(ctx.emit(&fam, || {
                fam.iter().map(|e| format!("X_{r} -> {} -> {t}", join(e, "0"))).collect::<Vec<_>>().join("\n")
            }))
        }
        T1Cmd::Classify { pattern, n, input } => {
            let d = match (pattern, input) {
                (Some(PatternArg::Empty), None) => T1Descriptor::Empty,
                (Some(PatternArg::All), None) => T1Descriptor::All,
                (Some(PatternArg::Upper), None) => T1Descriptor::Upper {
                    n: n.ok_or_else(|| Failure::Usage("--pattern upper needs --n".into()))?,
                },
                (None, Some(path)) => from_json::<T1Doc>(&read(path)?)?.descriptor()?.clone(),
                _ => return Err(Failure::Usage("give exactly one of --pattern or --input".into())),
            };
            let v = t1_classify(&d);
            Ok(ctx.emit(&json!({ "verdict": v, "descriptor": T1Doc::new(d) }), || v.to_string()))
        }
    }
}

fn orbit_doc(cat: &OrbitCategory, ds: impl IntoIterator<Item = MDiagonal>) -> OrbitDoc {
    OrbitDoc { n: cat.params.n, m: cat.params.m, diagonals: ds.into_iter().collect() }
}

fn orbit(ctx: &Ctx, cmd: &OrbitCmd) -> Out {
    let p = match cmd {
        OrbitCmd::List(p) | OrbitCmd::Enumerate { p, .. } => p,
        OrbitCmd::Hom { p, .. } | OrbitCmd::Ext { p, .. } | OrbitCmd::Middle { p, .. } => p,
        OrbitCmd::Closure { p, .. } => p,
    };
    let cat = OrbitCategory::new(p.n, p.m)?;
    match cmd {
        OrbitCmd::List(_) => {
            let rows: Vec<_> = cat.objects().iter().map(|o| (o.rep, cat.diagonal(o))).collect();
            let doc: Vec<_> = rows.iter().map(|(r, d)| json!({ "object": r, "diagonal": d })).collect();
            Ok(ctx.emit(&doc, || rows.iter().map(|(r, d)| format!("{r}\t{d}")).collect::<Vec<_>>().join("\n")))
        }
        OrbitCmd::Hom { a, b, .. } | OrbitCmd::Ext { a, b, .. } => {
            let (x, y) = (cat.object(&diagonal(&cat, a)?)?, cat.object(&diagonal(&cat, b)?)?);
            let (key, d) = match cmd {
                OrbitCmd::Hom { .. } => ("hom", cat.hom(&x, &y)?),
                _ => ("ext", cat.ext(&y, &x)?),
            };
            Ok(ctx.emit(&BTreeMap::from([(key, d)]), || d.to_string()))
        }
        OrbitCmd::Middle { a, b, .. } => {
            let (x, y) = (cat.object(&diagonal(&cat, a)?)?, cat.object(&diagonal(&cat, b)?)?);
            let mid: BTreeSet<MDiagonal> = cat.middle_term(&x, &y)?.iter().map(|o| cat.diagonal(o)).collect();
            Ok(ctx.emit(&orbit_doc(&cat, mid.iter().copied()), || join(&mid, "0")))
        }
        OrbitCmd::Closure { diagonals, .. } => {
            let mut s = BTreeSet::new();
            for (i, j) in parse_list(diagonals)? {
                s.insert(cat.object(&diagonal(&cat, &format!("{i},{j}"))?)?);
            }
            let c: BTreeSet<MDiagonal> = cat.closure(&s)?.iter().map(|o| cat.diagonal(o)).collect();
            Ok(ctx.emit(&orbit_doc(&cat, c.iter().copied()), || join(&c, "none")))
        }
        OrbitCmd::Enumerate { classes, .. } => {
            let all = cat.torsion_enumerate()?;
            let summary = format!("n,m,count\n{},{},{}", p.n, p.m, all.len());
            Ok(match ctx.format {
                Format::Json => all.iter().map(|c| to_json(&orbit_doc(&cat, c.iter().copied()))).collect::<Vec<_>>().join("\n"),
                Format::Text if *classes => {
                    let mut lines: Vec<String> = all.iter().map(|c| join(c, "none")).collect();
                    lines.push(summary);
                    lines.join("\n")
                }
                Format::Text => summary,
            })
        }
    }
}

/// Runs the program on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let (code, message) = match dispatch(&cli) {
        Ok(mut text) => {
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match &cli.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => return EXIT_OK,
                    Err(e) => (EXIT_DOMAIN, format!("cannot write {}: {e}", path.display())),
                },
                None => {
                    let _ = stdout.write_all(text.as_bytes());
                    return EXIT_OK;
                }
            }
        }
        Err(Failure::Usage(msg)) => (EXIT_USAGE, format!("usage error: {msg}\nrun `sphtor --help` for usage")),
        Err(Failure::Domain(e)) => (EXIT_DOMAIN, format!("error [{}]: {e}", e.code())),
        Err(Failure::Io(msg)) => (EXIT_DOMAIN, format!("error: {msg}")),
    };
    let _ = writeln!(stderr, "{message}");
    code
}
