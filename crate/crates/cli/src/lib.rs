//! Command-line front end. `run_command` never prints; the binary writes
//! `stdout`/`stderr` and exits with `code`.

mod sweep;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gradalg::algebra::GradedAlgebra;
use gradalg::cohomology::{
    class_order, classes_equivalent_at, extend_class_using, h2_of_subgroup, is_cocycle, restrict, ExpCocycle,
};
use gradalg::embeddings::{build_tower, matrix_embed, matrix_iso, product_embed, twisted_embed, twisted_iso};
use gradalg::graded_matrix::{lambda_membership, regrade_iso, GradedMatrixAlgebra};
use gradalg::group::{enumerate_subgroups, normalizer, subgroup_relations, FiniteGroup, Subgroup};
use gradalg::io::{self, Config, ConfigJson, GroupRef, Workspace, WorkspaceJson};
use gradalg::pi::{identity_space, multilinear_containment_with, DegreeAssignment, PiConfig, DEFAULT_DEGREE_CAP};
use gradalg::twisted::TwistedGroupAlgebra;
use gradalg::{Error, Result};

pub const EXIT_YES: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO: i32 = 3;

/// Environment variable naming a config JSON (`order_cap`, `modulus`,
/// `degree_cap`, `budget`).
pub const CONFIG_ENV: &str = "GRADALG_CONFIG";

#[derive(Debug, Parser)]
#[command(name = "gradalg", version, about = "Graded embeddings of twisted group algebras and graded matrix algebras")]
struct Cli {
    /// Workspace JSON with named groups, cocycles and algebras.
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    /// Working modulus for cocycle equivalence and extension.
    #[arg(long, global = true)]
    modulus: Option<u64>,
    #[arg(long, global = true)]
    order_cap: Option<usize>,
    /// Largest identity degree considered.
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Work budget per degree assignment.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Multiplication table, subgroups and (optionally) subgroup relations.
    Group {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Second cohomology with values in the multiplicative group.
    H2 {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: Option<String>,
    },
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    #[command(subcommand)]
    Embed(EmbedCmd),
    #[command(subcommand)]
    Iso(IsoCmd),
    /// Whether `target` regrades the algebra, with the isomorphism.
    Lambda {
        #[arg(long)]
        a: String,
        #[arg(long)]
        target: String,
    },
    #[command(subcommand)]
    Pi(PiCmd),
    /// Extends a twisted group algebra along a chain of central subgroups.
    Tower {
        #[arg(long)]
        b: String,
        /// Chain members after the algebra's own subgroup, smallest first.
        #[arg(long = "chain", required = true)]
        chain: Vec<String>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Runs the catalog checks as one batch.
    Sweep,
}

#[derive(Debug, Subcommand)]
enum CocycleCmd {
    Check(OneCocycle),
    Equiv(TwoCocycles),
    Restrict {
        #[command(flatten)]
        c: OneCocycle,
        #[arg(long)]
        subgroup: String,
    },
    Extend {
        #[command(flatten)]
        c: OneCocycle,
        /// Target subgroup; the whole group when absent.
        #[arg(long)]
        to: Option<String>,
    },
    Order(OneCocycle),
}

#[derive(Debug, Args)]
struct OneCocycle {
    /// Workspace name or JSON file.
    #[arg(long)]
    cocycle: String,
}

#[derive(Debug, Args)]
struct TwoCocycles {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

#[derive(Debug, Args)]
struct TwoAlgebras {
    /// Domain (workspace name or JSON file).
    #[arg(long)]
    a: String,
    /// Codomain.
    #[arg(long)]
    b: String,
}

#[derive(Debug, Subcommand)]
enum EmbedCmd {
    Tga(TwoAlgebras),
    Matrix(TwoAlgebras),
    /// Componentwise embedding of a product into a product.
    Product {
        /// Domain components, comma separated.
        #[arg(long, value_delimiter = ',')]
        a: Vec<String>,
        /// Codomain components, comma separated.
        #[arg(long, value_delimiter = ',')]
        b: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
enum IsoCmd {
    Tga(TwoAlgebras),
    Matrix(TwoAlgebras),
}

#[derive(Debug, Subcommand)]
enum PiCmd {
    /// Multilinear identities of one algebra at a degree assignment.
    Space {
        #[arg(long)]
        a: String,
        #[arg(long)]
        degrees: String,
    },
    /// Whether the identities of `a` are identities of `b` up to `--nmax`.
    Contain(TwoAlgebras),
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::WitnessConstructionFailed(_) | Error::InvalidWitness(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let text = e.render().to_string();
            return if code == EXIT_YES {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match run(&cli) {
        Ok((yes, v)) => {
            Outcome { code: if yes { EXIT_YES } else { EXIT_NO }, stdout: io::to_pretty(&v), stderr: String::new() }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: io::to_pretty(&json!({ "error": error_kind(&e), "message": e.to_string() })),
        },
    }
}

fn load(cli: &Cli) -> Result<Workspace> {
    // precedence: defaults < GRADALG_CONFIG < workspace config < flags
    let mut base = Config::default();
    if let Some(path) = std::env::var_os(CONFIG_ENV) {
        let c: ConfigJson = io::read_json(PathBuf::from(path))?;
        base = base.overlay(&c);
    }
    let flags = ConfigJson {
        order_cap: cli.order_cap,
        modulus: cli.modulus,
        degree_cap: cli.nmax.map(|n| n.max(DEFAULT_DEGREE_CAP)),
        budget: cli.budget,
    };
    let mut raw: WorkspaceJson = match &cli.workspace {
        Some(p) => io::read_json(p)?,
        None => WorkspaceJson::default(),
    };
    raw.config = raw.config.merged(&flags);
    Workspace::from_json(&raw, base)
}

/// Element list such as `0,1` or `[0, 1]`.
pub fn parse_ids(text: &str) -> Result<Vec<usize>> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("`{s}` is not an element identifier"))))
        .collect()
}

fn parse_subgroup(g: &FiniteGroup, text: &str) -> Result<Subgroup> {
    Subgroup::new(g, parse_ids(text)?)
}

fn tga(a: &GradedMatrixAlgebra) -> Result<TwistedGroupAlgebra> {
    if a.k() != 1 || a.theta() != [0] {
        return Err(Error::Validation("expected a twisted group algebra (k = 1, theta = (e))".into()));
    }
    Ok(a.base().clone())
}

fn run(cli: &Cli) -> Result<(bool, Value)> {
    let ws = load(cli)?;
    let pi_config = PiConfig { degree_cap: ws.config.degree_cap, budget: ws.config.budget };
    match &cli.cmd {
        Cmd::Group { group, subgroup } => {
            let g = ws.group(&GroupRef::Name(group.clone()))?;
            let mut v = json!({
                "group": io::group_to_json(&g),
                "abelian": g.is_abelian(),
                "exponent": g.exponent(),
                "subgroups": enumerate_subgroups(&g).iter().map(|h| h.members().to_vec()).collect::<Vec<_>>(),
            });
            if let Some(s) = subgroup {
                let h = parse_subgroup(&g, s)?;
                let r = subgroup_relations(&g, &h)?;
                v["relations"] = json!({
                    "subgroup": h.members(),
                    "normal": r.is_normal,
                    "central": r.is_central,
                    "index": r.index,
                    "transversal": r.transversal,
                    "normalizer": normalizer(&g, &h)?.members(),
                });
            }
            Ok((true, v))
        }
        Cmd::H2 { group, subgroup } => {
            let g = ws.group(&GroupRef::Name(group.clone()))?;
            let h = match subgroup {
                Some(s) => parse_subgroup(&g, s)?,
                None => Subgroup::full(&g),
            };
            Ok((true, io::h2_to_json(&h2_of_subgroup(&g, &h, ws.config.order_cap)?)))
        }
        Cmd::Cocycle(c) => cocycle(&ws, c),
        Cmd::Embed(EmbedCmd::Tga(p)) => {
            let r = twisted_embed(&tga(&ws.algebra_named_or_file(&p.a)?)?, &tga(&ws.algebra_named_or_file(&p.b)?)?)?;
            Ok((r.is_yes(), io::report_to_json(&r)))
        }
        Cmd::Embed(EmbedCmd::Matrix(p)) => {
            let r = matrix_embed(&ws.algebra_named_or_file(&p.a)?, &ws.algebra_named_or_file(&p.b)?)?;
            Ok((r.is_yes(), io::report_to_json(&r)))
        }
        Cmd::Embed(EmbedCmd::Product { a, b }) => {
            let bs = a.iter().map(|n| ws.algebra_named_or_file(n)).collect::<Result<Vec<_>>>()?;
            let as_ = b.iter().map(|n| ws.algebra_named_or_file(n)).collect::<Result<Vec<_>>>()?;
            let r = product_embed(&bs, &as_)?;
            Ok((r.is_yes(), io::report_to_json(&r)))
        }
        Cmd::Iso(IsoCmd::Tga(p)) => {
            let r = twisted_iso(&tga(&ws.algebra_named_or_file(&p.a)?)?, &tga(&ws.algebra_named_or_file(&p.b)?)?)?;
            Ok((r.is_yes(), io::report_to_json(&r)))
        }
        Cmd::Iso(IsoCmd::Matrix(p)) => {
            let r = matrix_iso(&ws.algebra_named_or_file(&p.a)?, &ws.algebra_named_or_file(&p.b)?)?;
            Ok((r.is_yes(), io::report_to_json(&r)))
        }
        Cmd::Lambda { a, target } => {
            let a = ws.algebra_named_or_file(a)?;
            let target = parse_ids(target)?;
            match lambda_membership(&target, &a)? {
                Some(w) => {
                    let (b, map) = regrade_iso(&a, &w)?;
                    Ok((
                        true,
                        json!({
                            "member": true,
                            "witness": io::lambda_witness_to_json(&w),
                            "regraded": io::algebra_to_json(&b),
                            "map": io::map_to_json(&map),
                        }),
                    ))
                }
                None => Ok((false, json!({ "member": false, "witness": null }))),
            }
        }
        Cmd::Pi(PiCmd::Space { a, degrees }) => {
            let a = ws.algebra_named_or_file(a)?;
            let d = DegreeAssignment::with_cap(parse_ids(degrees)?, ws.config.degree_cap)?;
            Ok((true, io::identity_space_to_json(&identity_space(&a, &d)?)))
        }
        Cmd::Pi(PiCmd::Contain(p)) => {
            let a = ws.algebra_named_or_file(&p.a)?;
            let b = ws.algebra_named_or_file(&p.b)?;
            let n_max = cli.nmax.unwrap_or(3);
            let r = multilinear_containment_with(&a, &b, n_max, pi_config)?;
            Ok((r.contained, io::containment_to_json(&r)))
        }
        Cmd::Tower { b, chain, k, t } => {
            let b = tga(&ws.algebra_named_or_file(b)?)?;
            let g = b.ambient().clone();
            let mut subgroups = vec![b.subgroup().clone()];
            for s in chain {
                subgroups.push(parse_subgroup(&g, s)?);
            }
            let r = build_tower(&b, &subgroups, *k, *t)?;
            Ok((r.square.commutes, io::tower_to_json(&r)))
        }
        Cmd::Sweep => {
            let v = sweep::run(&ws)?;
            Ok((v["all_pass"].as_bool() == Some(true), v))
        }
    }
}

fn cocycle(ws: &Workspace, c: &CocycleCmd) -> Result<(bool, Value)> {
    match c {
        CocycleCmd::Check(c) => {
            // reads the raw table so a failing identity is reported, not rejected
            let sigma = match ws.cocycles.get(&c.cocycle) {
                Some(s) => s.clone(),
                None => {
                    let raw: io::CocycleJson = io::read_json(&c.cocycle)?;
                    let g = ws.group(&raw.group)?;
                    let h = match &raw.subgroup {
                        Some(m) => Subgroup::new(&g, m.iter().copied())?,
                        None => Subgroup::full(&g),
                    };
                    ExpCocycle::new(g, h, raw.modulus, raw.exponents)?
                }
            };
            let ok = is_cocycle(&sigma);
            Ok((ok, json!({ "is_cocycle": ok })))
        }
        CocycleCmd::Equiv(p) => {
            let a = ws.cocycle_named_or_file(&p.a)?;
            let b = ws.cocycle_named_or_file(&p.b)?;
            match classes_equivalent_at(&a, &b, ws.config.modulus)? {
                Some(f) => Ok((true, json!({ "equivalent": true, "f": io::function_to_json(&f) }))),
                None => Ok((false, json!({ "equivalent": false, "f": null }))),
            }
        }
        CocycleCmd::Restrict { c, subgroup } => {
            let s = ws.cocycle_named_or_file(&c.cocycle)?;
            let h = parse_subgroup(s.group(), subgroup)?;
            Ok((true, json!(io::cocycle_to_json_named(&restrict(&s, &h)?, s.group().name()))))
        }
        CocycleCmd::Extend { c, to } => {
            let s = ws.cocycle_named_or_file(&c.cocycle)?;
            let g = s.group().clone();
            let target = match to {
                Some(t) => parse_subgroup(&g, t)?,
                None => Subgroup::full(&g),
            };
            let h2 = h2_of_subgroup(&g, &target, ws.config.order_cap)?;
            match extend_class_using(&s, &h2, ws.config.modulus)? {
                Some(e) => Ok((true, json!({ "extended": true, "cocycle": io::cocycle_to_json_named(&e, g.name()) }))),
                None => Ok((false, json!({ "extended": false, "cocycle": null }))),
            }
        }
        CocycleCmd::Order(c) => {
            let s = ws.cocycle_named_or_file(&c.cocycle)?;
            Ok((true, json!({ "order": class_order(&s)? })))
        }
    }
}
