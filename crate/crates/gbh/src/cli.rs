//! Command-line front end.
//!
//! Exit codes: 0 holds or success, 1 fails, 2 unknown, 3 input error.
//! JSON arguments accept either a file path or an inline document.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};

use crate::borelcodes::{self, canonical_tree, code_complement, code_intersection, code_union, interpret, project, CodeTree};
use crate::calculus::{
    self, collapse_criteria, compare, dual, function_hierarchy_order, normalize, translate_order, universal_exists, Answer,
    Base, Env, Evidence, FunctionTarget, ParamSpace, PointclassDesc, SetOp, Size, Verdict,
};
use crate::forcinglab::{
    build_generic, full_dense_list, interpret_generic, params_from_json, projection_check, Condition, DenseSet, Forcing, Lab,
    Template,
};
use crate::ordinals::{ord_add, ord_cmp, ord_cof, ord_double, ord_half, parse_ordinal, CofClass, OrdCmp, Ordinal};
use crate::spacelab::{build_universal, embed_into_cantor, FiniteSpace, PointSet, Stem, DEFAULT_POINT_CAP};
use crate::treemaps::{self, body_map, check_exists_perfect, check_order_props, closed_image_check, TreeMap};
use crate::verify;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gbh", version, about = "Generalized Borel hierarchy toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ordinal arithmetic.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// Pointclass calculus queries.
    #[command(subcommand)]
    Pointclass(PcCmd),
    /// Finite spaces and universal sets.
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Borel codes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Tree maps.
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// The finitized forcing poset.
    #[command(subcommand)]
    Forcing(ForcingCmd),
    /// Acceptance suites: `all` or a criterion number.
    Verify {
        which: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum OrdCmd {
    /// Parse and print in normal form.
    Show { a: String },
    Add { a: String, b: String },
    Double { a: String },
    Half { a: String },
    Cof { a: String },
    Cmp { a: String, b: String },
    Succ { a: String },
    Parity { a: String },
}

#[derive(Debug, Args)]
pub struct CtxArg {
    /// Context document (path or inline JSON); defaults to a regular kappa with no flags.
    #[arg(long)]
    ctx: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum PcCmd {
    Normalize {
        p: String,
        #[command(flatten)]
        ctx: CtxArg,
    },
    Dual { p: String },
    /// Verdict on `p ⊆ q`.
    Compare {
        p: String,
        q: String,
        #[command(flatten)]
        ctx: CtxArg,
    },
    /// Verdict on closure under an operation; size is `finite`, `card:<class>` or `below:<class>`.
    Closure {
        p: String,
        #[arg(long)]
        op: String,
        #[arg(long, default_value = "finite")]
        size: String,
        #[command(flatten)]
        ctx: CtxArg,
    },
    /// Verdict on the existence of a universal set; `--over cantor|space`.
    Universal {
        p: String,
        #[arg(long, default_value = "cantor")]
        over: String,
        #[command(flatten)]
        ctx: CtxArg,
    },
    /// Moves an order fact such as `{"ord":{"base":"k+","rel":"le","bound":"3"}}` to the other base.
    Translate {
        fact: String,
        #[command(flatten)]
        ctx: CtxArg,
    },
    /// Swaps a set-order fact with the function-order fact.
    Functions {
        fact: String,
        #[arg(long)]
        not_hausdorff: bool,
        #[arg(long)]
        one_point: bool,
    },
    /// Verdict on `ord_base ≤ target` from evidence.
    Collapse {
        #[arg(long, default_value = "k+")]
        base: String,
        target: String,
        /// `P=Q`, repeatable.
        #[arg(long = "equal")]
        equal: Vec<String>,
        /// `P:op:size`, repeatable.
        #[arg(long = "closed")]
        closed: Vec<String>,
        #[command(flatten)]
        ctx: CtxArg,
    },
    /// Lists the rule table.
    Rules,
}

#[derive(Debug, Args)]
pub struct SpaceArg {
    /// Space document (path or inline JSON).
    #[arg(long)]
    space: String,
    /// Point cap override.
    #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
    cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum SpaceCmd {
    Basic {
        stem: String,
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Indicator vectors for a basis given as comma-separated stems.
    Embed {
        #[arg(long)]
        basis: String,
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Sections of the level-1 or level-2 universal set over a stem basis.
    Universal {
        #[arg(long)]
        basis: String,
        #[arg(long, default_value_t = 1)]
        level: u8,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[command(flatten)]
        space: SpaceArg,
    },
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Code document (path or inline JSON).
    code: String,
    #[command(flatten)]
    space: SpaceArg,
    /// Comma-separated points of X; defaults to the whole space.
    #[arg(long)]
    x: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum CodeCmd {
    Interpret(CodeArgs),
    Rank { code: String },
    /// Canonical Suslin tree branches and their projection.
    Canonical(CodeArgs),
    Complement { code: String },
    Union { codes: Vec<String> },
    Intersection { codes: Vec<String> },
}

#[derive(Debug, Subcommand)]
pub enum EmbedCmd {
    /// Order properties, ∃-perfect characterizations and body map.
    Check { map: String },
    Closed { map: String },
}

#[derive(Debug, Args)]
pub struct PosetArgs {
    /// Space document; defaults to every length-d word over b letters, or to `--points`.
    #[arg(long)]
    space: Option<String>,
    /// Comma-separated points of X.
    #[arg(long)]
    points: Option<String>,
    #[arg(long, default_value_t = 2)]
    alpha: usize,
    /// Branching of the template and alphabet of the space.
    #[arg(long = "b", default_value_t = 3)]
    branching: u8,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long = "smax", default_value_t = 2)]
    s_max: usize,
    #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
    cap: usize,
    /// Comma-separated points of A.
    #[arg(long = "in-a", default_value = "")]
    in_a: String,
    /// Comma-separated points of B.
    #[arg(long = "in-b", default_value = "")]
    in_b: String,
}

#[derive(Debug, Subcommand)]
pub enum ForcingCmd {
    /// Checks the condition clauses; `A`/`B` in the document override the flags.
    Check {
        cond: String,
        #[command(flatten)]
        poset: PosetArgs,
    },
    Meet {
        p: String,
        q: String,
        #[command(flatten)]
        poset: PosetArgs,
    },
    /// With `--t`/`--x`: membership of a condition in `D_{t,x}` and a one-atom witness.
    /// Without: exhaustive density check over the bounded poset.
    Density {
        cond: Option<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        x: Option<String>,
        #[command(flatten)]
        poset: PosetArgs,
    },
    /// Runs the seeded generic-filter builder on the subtree at `--top`.
    Generic {
        #[arg(long, default_value = "")]
        top: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        poset: PosetArgs,
    },
    /// `restrict(p, H, β)` and the projection implication against the bounded poset.
    Project {
        cond: String,
        /// Comma-separated points of H.
        #[arg(long, default_value = "")]
        h: String,
        #[arg(long, default_value_t = 1)]
        beta: usize,
        #[command(flatten)]
        poset: PosetArgs,
    },
    /// Linked reduction `g_p`; with a second condition, the three compatibility notions.
    Link {
        p: String,
        q: Option<String>,
        #[command(flatten)]
        poset: PosetArgs,
    },
}

#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Res = Result<i32, InputError>;

fn load(arg: &str) -> Result<String, InputError> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| InputError(format!("{}: {}", arg, e)))
}

fn ordinal(s: &str) -> Result<Ordinal, InputError> {
    parse_ordinal(s).map_err(|e| InputError(format!("ordinal {:?}: {}", s, e)))
}

fn pointclass(s: &str) -> Result<PointclassDesc, InputError> {
    s.parse().map_err(|e: calculus::CalcError| InputError(format!("pointclass {:?}: {}", s, e)))
}

fn env(ctx: &CtxArg) -> Result<Env, InputError> {
    match &ctx.ctx {
        None => Ok(Env::from_json(r#"{"kappa":"regular"}"#)?),
        Some(a) => Env::from_json(&load(a)?).map_err(|e| InputError(format!("context: {}", e))),
    }
}

fn space(arg: &SpaceArg) -> Result<FiniteSpace, InputError> {
    let doc = load(&arg.space)?;
    let parsed = FiniteSpace::from_json(&doc)?;
    Ok(FiniteSpace::with_cap(parsed.b(), parsed.d(), parsed.points().to_vec(), arg.cap)?)
}

fn words(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|w| !w.is_empty()).collect()
}

fn size(s: &str) -> Result<Size, InputError> {
    if s == "finite" {
        return Ok(Size::Card(CofClass::Finite));
    }
    let (kind, class) = s.split_once(':').ok_or_else(|| InputError(format!("size {:?}: expected card:<class> or below:<class>", s)))?;
    let c = CofClass::parse(class).ok_or_else(|| InputError(format!("size {:?}: unknown class", s)))?;
    match kind {
        "card" => Ok(Size::Card(c)),
        "below" => Ok(Size::Below(c)),
        _ => Err(InputError(format!("size {:?}: expected card or below", s))),
    }
}

fn set_op(s: &str) -> Result<SetOp, InputError> {
    match s {
        "union" => Ok(SetOp::Union),
        "intersection" => Ok(SetOp::Intersection),
        "complement" => Ok(SetOp::Complement),
        _ => Err(InputError(format!("op {:?}: expected union, intersection or complement", s))),
    }
}

fn verdict(out: &mut dyn Write, v: &Verdict) -> Res {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(match v.answer {
        Answer::Holds => EXIT_HOLDS,
        Answer::Fails => EXIT_FAILS,
        Answer::Unknown => EXIT_UNKNOWN,
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_HOLDS };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(InputError(m)) => {
            let _ = writeln!(err, "error: {}", m);
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Res {
    match cmd {
        Command::Ord(c) => ord(c, out),
        Command::Pointclass(c) => pc(c, out),
        Command::Space(c) => space_cmd(c, out),
        Command::Code(c) => code_cmd(c, out),
        Command::Embed(c) => embed_cmd(c, out),
        Command::Forcing(c) => forcing_cmd(c, out),
        Command::Verify { which, seed } => {
            let reports = if which == "all" {
                verify::run_all(seed)
            } else {
                let id: u8 = which.parse().map_err(|_| InputError(format!("criterion {:?}: expected all or 1..10", which)))?;
                vec![verify::run(id, seed).ok_or_else(|| InputError(format!("no criterion {}", id)))?]
            };
            for r in &reports {
                writeln!(out, "{}", r.line())?;
            }
            Ok(if reports.iter().all(|r| r.passed) { EXIT_HOLDS } else { EXIT_FAILS })
        }
    }
}

fn ord(c: OrdCmd, out: &mut dyn Write) -> Res {
    let text = match c {
        OrdCmd::Show { a } => ordinal(&a)?.to_string(),
        OrdCmd::Add { a, b } => ord_add(&ordinal(&a)?, &ordinal(&b)?)?.to_string(),
        OrdCmd::Double { a } => ord_double(&ordinal(&a)?).to_string(),
        OrdCmd::Half { a } => ord_half(&ordinal(&a)?)?.to_string(),
        OrdCmd::Cof { a } => {
            let a = ordinal(&a)?;
            if a.is_zero() {
                return Err(InputError("cofinality needs a >= 1".into()));
            }
            ord_cof(&a).to_string()
        }
        OrdCmd::Cmp { a, b } => match ord_cmp(&ordinal(&a)?, &ordinal(&b)?) {
            OrdCmp::Lt => "lt",
            OrdCmp::Eq => "eq",
            OrdCmp::Gt => "gt",
            OrdCmp::Incomparable => "incomparable",
        }
        .to_string(),
        OrdCmd::Succ { a } => ordinal(&a)?.succ().to_string(),
        OrdCmd::Parity { a } => if ordinal(&a)?.is_even() { "even" } else { "odd" }.to_string(),
    };
    writeln!(out, "{}", text)?;
    Ok(EXIT_HOLDS)
}

fn pc(c: PcCmd, out: &mut dyn Write) -> Res {
    match c {
        PcCmd::Normalize { p, ctx } => {
            let e = env(&ctx)?;
            match normalize(&pointclass(&p)?, &e.ctx, &e.sa) {
                Ok(n) => {
                    writeln!(out, "{}", n)?;
                    Ok(EXIT_HOLDS)
                }
                Err(calculus::CalcError::MissingAssumption(m)) => {
                    writeln!(out, "unknown: missing {}", m)?;
                    Ok(EXIT_UNKNOWN)
                }
                Err(other) => Err(other.into()),
            }
        }
        PcCmd::Dual { p } => {
            writeln!(out, "{}", dual(&pointclass(&p)?))?;
            Ok(EXIT_HOLDS)
        }
        PcCmd::Compare { p, q, ctx } => verdict(out, &compare(&pointclass(&p)?, &pointclass(&q)?, &env(&ctx)?)),
        PcCmd::Closure { p, op, size: s, ctx } => {
            verdict(out, &calculus::closure(&pointclass(&p)?, set_op(&op)?, size(&s)?, &env(&ctx)?))
        }
        PcCmd::Universal { p, over, ctx } => {
            let over = match over.as_str() {
                "cantor" => ParamSpace::Cantor,
                "space" => ParamSpace::SpaceItself,
                _ => return Err(InputError(format!("over {:?}: expected cantor or space", over))),
            };
            verdict(out, &universal_exists(&pointclass(&p)?, over, &env(&ctx)?))
        }
        PcCmd::Translate { fact, ctx } => {
            let e = env(&ctx)?;
            let v: serde_json::Value = serde_json::from_str(&load(&fact)?)?;
            let f = calculus::fact_from_value(&v, "$")?;
            match translate_order(&f, &e.ctx, &e.sa) {
                Ok(g) => {
                    writeln!(out, "{}", g)?;
                    Ok(EXIT_HOLDS)
                }
                Err(calculus::CalcError::MissingAssumption(m)) => {
                    writeln!(out, "unknown: missing {}", m)?;
                    Ok(EXIT_UNKNOWN)
                }
                Err(other) => Err(other.into()),
            }
        }
        PcCmd::Functions { fact, not_hausdorff, one_point } => {
            let v: serde_json::Value = serde_json::from_str(&load(&fact)?)?;
            let f = calculus::fact_from_value(&v, "$")?;
            let target = FunctionTarget { hausdorff: !not_hausdorff, at_least_two_points: !one_point };
            match function_hierarchy_order(&f, target) {
                Ok(g) => {
                    writeln!(out, "{}", g)?;
                    Ok(EXIT_HOLDS)
                }
                Err(calculus::CalcError::MissingAssumption(m)) => {
                    writeln!(out, "unknown: missing {}", m)?;
                    Ok(EXIT_UNKNOWN)
                }
                Err(other) => Err(other.into()),
            }
        }
        PcCmd::Collapse { base, target, equal, closed, ctx } => {
            let base = Base::parse(&base).ok_or_else(|| InputError(format!("base {:?}: expected k or k+", base)))?;
            let mut evidence = Vec::new();
            for e in &equal {
                let (p, q) = e.split_once('=').ok_or_else(|| InputError(format!("equal {:?}: expected P=Q", e)))?;
                evidence.push(Evidence::Equal(pointclass(p)?, pointclass(q)?));
            }
            for c in &closed {
                // The class ends at its closing parenthesis; the size may contain ':'.
                let (p, op, s) = match c.splitn(2, ')').collect::<Vec<_>>()[..] {
                    [head, rest] => {
                        let rest = rest.trim_start_matches(':');
                        let (op, s) = rest.split_once(':').unwrap_or((rest, "finite"));
                        (format!("{})", head), op.to_string(), s.to_string())
                    }
                    _ => return Err(InputError(format!("closed {:?}: expected P:op:size", c))),
                };
                evidence.push(Evidence::Closed(pointclass(&p)?, set_op(&op)?, size(&s)?));
            }
            verdict(out, &collapse_criteria(&evidence, base, &ordinal(&target)?, &env(&ctx)?))
        }
        PcCmd::Rules => {
            for r in calculus::RULES {
                writeln!(out, "{}\t{}", r.id, r.citation)?;
            }
            Ok(EXIT_HOLDS)
        }
    }
}

fn stem_basis(space: &FiniteSpace, list: &str) -> Result<Vec<PointSet>, InputError> {
    words(list)
        .into_iter()
        .map(|w| {
            let s: Stem = if w == "-" { Stem::empty() } else { w.parse()? };
            Ok(space.basic(&s)?)
        })
        .collect()
}

fn space_cmd(c: SpaceCmd, out: &mut dyn Write) -> Res {
    match c {
        SpaceCmd::Basic { stem, space: s } => {
            let sp = space(&s)?;
            let set = sp.basic(&stem.parse()?)?;
            writeln!(out, "{}", serde_json::to_string(&sp.words_of(&set))?)?;
        }
        SpaceCmd::Embed { basis, space: s } => {
            let sp = space(&s)?;
            let rows = embed_into_cantor(&sp, &stem_basis(&sp, &basis)?)?;
            for (i, row) in rows.iter().enumerate() {
                let bits: String = row.iter().map(|&b| if b { '1' } else { '0' }).collect();
                writeln!(out, "{}\t{}", sp.point(i), bits)?;
            }
        }
        SpaceCmd::Universal { basis, level, m, space: s } => {
            let sp = space(&s)?;
            let u = build_universal(level, &sp, &stem_basis(&sp, &basis)?, m)?;
            for y in 0..u.rows() {
                let bits: String = (0..u.param_len()).map(|i| if y >> i & 1 == 1 { '1' } else { '0' }).collect();
                writeln!(out, "{}\t{}", bits, serde_json::to_string(&sp.words_of(u.section_by_code(y)))?)?;
            }
        }
    }
    Ok(EXIT_HOLDS)
}

fn code(arg: &str) -> Result<CodeTree, InputError> {
    CodeTree::from_json(&load(arg)?).map_err(|e| InputError(format!("code: {}", e)))
}

fn code_x(args: &CodeArgs) -> Result<(CodeTree, FiniteSpace, PointSet), InputError> {
    let sp = space(&args.space)?;
    let x = match &args.x {
        None => sp.whole(),
        Some(list) => sp.set_from_words(&words(list))?,
    };
    Ok((code(&args.code)?, sp, x))
}

fn code_cmd(c: CodeCmd, out: &mut dyn Write) -> Res {
    match c {
        CodeCmd::Interpret(a) => {
            let (c, sp, x) = code_x(&a)?;
            writeln!(out, "{}", serde_json::to_string(&sp.words_of(&interpret(&c, &sp, &x)?))?)?;
        }
        CodeCmd::Rank { code: c } => writeln!(out, "{}", borelcodes::root_rank(&code(&c)?))?,
        CodeCmd::Canonical(a) => {
            let (c, sp, x) = code_x(&a)?;
            let tree = canonical_tree(&c, &sp, &x)?;
            writeln!(out, "height {}, {} nodes", tree.height, tree.nodes.len())?;
            for b in tree.branches() {
                let cells: Vec<String> = b
                    .iter()
                    .map(|t| {
                        let x = t.x.map_or("-".to_string(), |v| v.to_string());
                        let y = t.y.map_or("-", |v| if v { "1" } else { "0" });
                        let z = t.z.map_or("-".to_string(), |v| v.to_string());
                        format!("({},{},{})", x, y, z)
                    })
                    .collect();
                writeln!(out, "{}", cells.join(" "))?;
            }
            writeln!(out, "projection {}", serde_json::to_string(&sp.words_of(&project(&tree, &sp)))?)?;
        }
        CodeCmd::Complement { code: c } => writeln!(out, "{}", code_complement(&code(&c)?).to_json())?,
        CodeCmd::Union { codes } => {
            let cs = codes.iter().map(|c| code(c)).collect::<Result<Vec<_>, _>>()?;
            writeln!(out, "{}", code_union(&cs).to_json())?;
        }
        CodeCmd::Intersection { codes } => {
            let cs = codes.iter().map(|c| code(c)).collect::<Result<Vec<_>, _>>()?;
            writeln!(out, "{}", code_intersection(&cs).to_json())?;
        }
    }
    Ok(EXIT_HOLDS)
}

fn tree_map(arg: &str) -> Result<TreeMap, InputError> {
    TreeMap::from_json(&load(arg)?).map_err(|e| InputError(format!("map: {}", e)))
}

fn embed_cmd(c: EmbedCmd, out: &mut dyn Write) -> Res {
    match c {
        EmbedCmd::Check { map } => {
            let phi = tree_map(&map)?;
            let props = check_order_props(&phi);
            writeln!(out, "{}", props)?;
            match check_exists_perfect(&phi) {
                Ok(e) => writeln!(
                    out,
                    "exists_perfect={} (strict+projection incompatible={}, projection embedding={}, both embeddings={})",
                    e.value, e.strict_and_projection_incompatible, e.projection_embedding, e.both_embeddings
                )?,
                Err(e @ treemaps::TreeError::CharacterizationMismatch(_)) => return Err(e.into()),
                Err(e) => writeln!(out, "exists_perfect: {}", e)?,
            }
            match body_map(&phi) {
                Ok(f) => {
                    for (x, y) in f {
                        writeln!(out, "f({}) = {}", phi.source.name(x), phi.target.name(y))?;
                    }
                }
                Err(e) => writeln!(out, "body map: {}", e)?,
            }
            Ok(if props.order_embedding { EXIT_HOLDS } else { EXIT_FAILS })
        }
        EmbedCmd::Closed { map } => {
            let ok = closed_image_check(&tree_map(&map)?)?;
            writeln!(out, "{}", ok)?;
            Ok(if ok { EXIT_HOLDS } else { EXIT_FAILS })
        }
    }
}

fn poset(args: &PosetArgs, doc: Option<&str>) -> Result<Forcing, InputError> {
    let sp = match (&args.space, &args.points) {
        (Some(text), _) => {
            let parsed = FiniteSpace::from_json(&load(text)?)?;
            FiniteSpace::with_cap(parsed.b(), parsed.d(), parsed.points().to_vec(), args.cap)?
        }
        (None, Some(list)) => {
            let points = words(list).into_iter().map(str::parse).collect::<Result<Vec<Stem>, _>>()?;
            FiniteSpace::with_cap(args.branching, args.d, points, args.cap)?
        }
        (None, None) => {
            let full = FiniteSpace::full(args.branching, args.d)?;
            FiniteSpace::with_cap(full.b(), full.d(), full.points().to_vec(), args.cap)?
        }
    };
    let (a, b) = match doc {
        Some(text) if text.contains("\"A\"") || text.contains("\"B\"") => params_from_json(&sp, text)?,
        _ => (sp.set_from_words(&words(&args.in_a))?, sp.set_from_words(&words(&args.in_b))?),
    };
    Ok(Forcing::new(Template::new(args.alpha, args.branching)?, sp, a, b, args.s_max)?)
}

fn condition(f: &Forcing, doc: &str, name: &str) -> Result<Condition, InputError> {
    let p = f.condition_from_json(doc)?;
    if let Err(v) = f.is_condition(&p) {
        return Err(InputError(format!("{} is not a condition: clause {}: {}", name, v.clause, v.detail)));
    }
    Ok(p)
}

fn point(f: &Forcing, x: &str) -> Result<usize, InputError> {
    let xs: Stem = x.parse()?;
    f.space.index_of(&xs.0).ok_or_else(|| InputError(format!("{} is not a point", x)))
}

fn lab_for(f: &Forcing) -> Result<Lab, InputError> {
    if (f.template.b() as usize) <= f.s_max {
        return Err(InputError(format!(
            "branching {} must exceed smax {}; the one-atom density argument needs a fresh successor",
            f.template.b(),
            f.s_max
        )));
    }
    Ok(Lab::new(f)?)
}

fn forcing_cmd(c: ForcingCmd, out: &mut dyn Write) -> Res {
    match c {
        ForcingCmd::Check { cond, poset: pa } => {
            let doc = load(&cond)?;
            let f = poset(&pa, Some(&doc))?;
            match f.is_condition(&f.condition_from_json(&doc)?) {
                Ok(()) => {
                    writeln!(out, "condition")?;
                    Ok(EXIT_HOLDS)
                }
                Err(v) => {
                    writeln!(out, "not a condition: clause {}: {}", v.clause, v.detail)?;
                    Ok(EXIT_FAILS)
                }
            }
        }
        ForcingCmd::Meet { p, q, poset: pa } => {
            let (dp, dq) = (load(&p)?, load(&q)?);
            let f = poset(&pa, Some(&dp))?;
            let (p, q) = (condition(&f, &dp, "p")?, condition(&f, &dq, "q")?);
            match f.meet(&p, &q) {
                Ok(m) => {
                    writeln!(out, "{}", f.condition_to_json(&m))?;
                    Ok(EXIT_HOLDS)
                }
                Err(e) => {
                    writeln!(out, "{}", e)?;
                    Ok(EXIT_FAILS)
                }
            }
        }
        ForcingCmd::Density { cond: Some(cond), t: Some(t), x: Some(x), poset: pa } => {
            let doc = load(&cond)?;
            let f = poset(&pa, Some(&doc))?;
            let p = condition(&f, &doc, "p")?;
            let node = f.template.parse_node(&t)?;
            if f.template.is_leaf(node) {
                return Err(InputError(format!("{} is a leaf", t)));
            }
            let d = DenseSet::Promise(node, point(&f, &x)?);
            if f.dense_contains(&d, &p) {
                writeln!(out, "in {}", d.name(&f))?;
                return Ok(EXIT_HOLDS);
            }
            match f.one_atom_extensions(&p).into_iter().find(|q| f.dense_contains(&d, q)) {
                Some(q) => {
                    writeln!(out, "not in {}; extension {}", d.name(&f), f.condition_to_json(&q))?;
                    Ok(EXIT_HOLDS)
                }
                None => {
                    writeln!(out, "not in {}; no one-atom extension", d.name(&f))?;
                    Ok(EXIT_FAILS)
                }
            }
        }
        ForcingCmd::Density { cond: None, t: None, x: None, poset: pa } => {
            let f = poset(&pa, None)?;
            let lab = lab_for(&f)?;
            writeln!(out, "{} atoms, {} conditions", lab.atoms.len(), lab.conditions.len())?;
            let mut missing = 0usize;
            for p in &lab.conditions {
                let pc = lab.to_condition(p);
                let ext = f.one_atom_extensions(&pc);
                for t in f.template.internal() {
                    for x in 0..f.space.len() {
                        let d = DenseSet::Promise(t, x);
                        if !f.dense_contains(&d, &pc) && !ext.iter().any(|q| f.dense_contains(&d, q)) {
                            missing += 1;
                            writeln!(out, "not dense: {} below {}", d.name(&f), f.condition_to_json(&pc))?;
                        }
                    }
                }
            }
            writeln!(out, "density: {}", if missing == 0 { "every D[t,x] met within one atom" } else { "violations found" })?;
            Ok(if missing == 0 { EXIT_HOLDS } else { EXIT_FAILS })
        }
        ForcingCmd::Density { .. } => Err(InputError("density takes a condition with both --t and --x, or none of them".into())),
        ForcingCmd::Generic { top, seed, poset: pa } => {
            let f = poset(&pa, None)?;
            let top = f.template.parse_node(&top)?;
            let list = full_dense_list(&f, top);
            let state = build_generic(&f, &list, seed)?;
            writeln!(out, "{} steps", state.chain.len() - 1)?;
            writeln!(out, "{}", f.condition_to_json(state.chain.last().expect("nonempty")))?;
            for t in f.template.subtree(top).into_iter().filter(|&t| !f.template.is_leaf(t)) {
                let g = interpret_generic(&f, &state.f_g, t)?;
                writeln!(out, "G[{}] = {}", f.template.name(t), serde_json::to_string(&f.space.words_of(&g))?)?;
            }
            Ok(EXIT_HOLDS)
        }
        ForcingCmd::Project { cond, h, beta, poset: pa } => {
            let doc = load(&cond)?;
            let f = poset(&pa, Some(&doc))?;
            let p = condition(&f, &doc, "p")?;
            if beta == 0 || beta >= f.template.alpha() {
                return Err(InputError(format!("beta must satisfy 0 < beta < alpha = {}", f.template.alpha())));
            }
            let h = f.space.set_from_words(&words(&h))?;
            writeln!(out, "crank {}", f.crank(&p, &h))?;
            writeln!(out, "restriction {}", f.condition_to_json(&f.restrict(&p, &h, beta)))?;
            let ok = projection_check(&f, &lab_for(&f)?, &p, &h, beta);
            writeln!(out, "projection {}", if ok { "holds" } else { "fails" })?;
            Ok(if ok { EXIT_HOLDS } else { EXIT_FAILS })
        }
        ForcingCmd::Link { p, q, poset: pa } => {
            let dp = load(&p)?;
            let f = poset(&pa, Some(&dp))?;
            let p = condition(&f, &dp, "p")?;
            let show = |c: &Condition| -> String {
                let (_, g) = f.linked_reduction(c);
                let parts: Vec<String> = g.iter().map(|(x, m)| format!("{}:{:b}", f.space.point(*x), m)).collect();
                format!("{{{}}}", parts.join(", "))
            };
            writeln!(out, "g_p = {}", show(&p))?;
            let Some(q) = q else { return Ok(EXIT_HOLDS) };
            let q = condition(&f, &load(&q)?, "q")?;
            writeln!(out, "g_q = {}", show(&q))?;
            let (gp, gq) = (f.linked_reduction(&p).1, f.linked_reduction(&q).1);
            let agree = gp.iter().all(|(x, m)| gq.get(x).is_none_or(|n| n == m));
            let star = f.compatible_star(&p, &q);
            let compat = f.compatible(&p, &q);
            writeln!(out, "reductions agree: {}\nstar compatible: {}\ncompatible: {}", agree, star, compat)?;
            Ok(if compat { EXIT_HOLDS } else { EXIT_FAILS })
        }
    }
}
