//! Command-line front end. All logic lives in [`run`] so that it can be driven from tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::json;

use crate::dynkin::{build, coxeter_exponents, coxeter_number, DynkinType, LoopyGraph};
use crate::enumerate::{enumerate_with, SearchBounds, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::io::{read_json, to_json, GraphFile, GroupFile, InvariantFile, ModuleFile, RingFile, RingRef};
use crate::minv::{self, check_claims, commutant_lattice, describe_blocks, enumerate_invariants_with};
use crate::module::{are_equivalent, is_based, is_indecomposable, is_irreducible, verify_module};
use crate::repg::{self, SmallGroup};
use crate::ring::ZPlusRing;
use crate::sl2::{
    classify_nimreps, essential_path_dims, fusion_ring, module_category_exists, module_exponents, nimrep_from_graph,
    render_seed_catalog, Sl2Level,
};

#[derive(Parser, Debug)]
#[command(name = "zplus", version, about = "Based rings, NIM-reps and sl(2) modular invariants in exact arithmetic")]
struct Cli {
    /// Print the existence table of module categories over the sl(2) categories and exit.
    #[arg(long)]
    seed_catalog: bool,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Z₊-ring axioms, fusion matrices and the entry bound
    #[command(subcommand)]
    Ring(RingCmd),
    /// Verify, compare and enumerate Z₊-modules
    #[command(subcommand)]
    Module(ModuleCmd),
    /// NIM-reps of the sl(2) fusion ring from graphs
    #[command(subcommand)]
    Nimrep(NimrepCmd),
    /// Modular invariants of sl(2) at a level
    #[command(subcommand)]
    Minv(MinvCmd),
    /// ADE-T graphs with Coxeter data
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Subgroups, fiber functors and module categories for Rep(G)
    #[command(subcommand)]
    Repg(RepgCmd),
}

/// A ring given by file or as the sl(2) fusion ring at a level.
#[derive(Args, Debug)]
struct RingSource {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    level: Option<u32>,
}

impl RingSource {
    fn load(&self) -> Result<ZPlusRing> {
        match (&self.input, self.level) {
            (Some(p), None) => read_json::<RingFile>(p)?.to_ring(),
            (None, Some(l)) => Ok(fusion_ring(Sl2Level::new(l)?)),
            _ => Err(Error::Parse("give exactly one of --in <ring.json> or --level <l>".into())),
        }
    }
}

/// A graph given by file or by Dynkin type.
#[derive(Args, Debug)]
struct GraphSource {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long = "type")]
    ty: Option<DynkinType>,
}

impl GraphSource {
    fn load(&self) -> Result<LoopyGraph> {
        match (&self.input, self.ty) {
            (Some(p), None) => read_json::<GraphFile>(p)?.to_graph(),
            (None, Some(t)) => build(t),
            _ => Err(Error::Parse("give exactly one of --in <graph.json> or --type <X>".into())),
        }
    }
}

#[derive(Args, Debug)]
struct GroupSource {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Built-in group name such as Z2xZ2, D8 or Q8.
    #[arg(long)]
    group: Option<String>,
}

impl GroupSource {
    fn load(&self) -> Result<SmallGroup> {
        match (&self.input, &self.group) {
            (Some(p), None) => read_json::<GroupFile>(p)?.to_group(),
            (None, Some(name)) => repg::builtin(name),
            _ => Err(Error::Parse("give exactly one of --in <group.json> or --group <name>".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum RingCmd {
    /// Check the Z+-ring axioms and look for a based structure.
    Verify(RingSource),
    /// Print N_i with (N_i)_{jk} = c_ij^k.
    FusionMatrices(RingSource),
    /// Default search bound for module enumeration.
    Bound(RingSource),
}

#[derive(Subcommand, Debug)]
enum ModuleCmd {
    /// Check compatibility, unit, based and irreducibility properties.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Decide equivalence of two modules and print a witnessing permutation.
    Equiv {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "with")]
        other: PathBuf,
    },
    /// Irreducible modules within the search bounds (default: the ring's bound).
    Enumerate {
        #[command(flatten)]
        ring: RingSource,
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long)]
        bound: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum NimrepCmd {
    /// Types whose graph gives a NIM-rep at the level.
    Classify {
        #[arg(long)]
        level: u32,
    },
    /// Build the NIM-rep M_1 = adjacency, M_i = Chebyshev polynomials.
    FromGraph {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        level: u32,
    },
    /// Exponents of the graph's NIM-rep at the level.
    Exponents {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        level: u32,
    },
    /// Graded dimensions of essential paths.
    Paths {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        level: u32,
    },
}

#[derive(Subcommand, Debug)]
enum MinvCmd {
    /// All physical invariants with entries up to the bound.
    Solve {
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = minv::DEFAULT_ENTRY_BOUND)]
        bound: u32,
    },
    /// Integer basis of the commutant of the modular data.
    Lattice {
        #[arg(long)]
        level: u32,
    },
    /// Compare an invariant with a module: trace against rank, exponents against exponents.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        against: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// Admissible types up to a rank with h and exponents.
    List {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// One type: graph, h, exponents and module category data.
    Show {
        #[arg(long = "type")]
        ty: DynkinType,
    },
}

#[derive(Subcommand, Debug)]
enum RepgCmd {
    /// Conjugacy classes of subgroups with type and Schur multiplier.
    Subgroups(GroupSource),
    /// Fiber functors on Rep(G), up to isomorphism.
    FiberCount(GroupSource),
    /// Indecomposable module categories over Rep(G).
    ModcatCount(GroupSource),
}

/// Parses `args` (including the program name), writes the report to `out` and diagnostics to
/// `err`, and returns the exit code: 0 success, 1 axiom violations found, 2 usage or input errors.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut report = Report { text: String::new(), code: 0 };
    let result = dispatch(&cli, &mut report);
    if out.write_all(report.text.as_bytes()).is_err() {
        return 2;
    }
    match result {
        Ok(()) => report.code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotNimRep { .. } => 1,
                _ => 2,
            }
        }
    }
}

struct Report {
    text: String,
    code: i32,
}

impl Report {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn json(&mut self, v: &impl serde::Serialize) -> Result<()> {
        let s = to_json(v)?;
        self.line(s);
        Ok(())
    }
}

fn dispatch(cli: &Cli, r: &mut Report) -> Result<()> {
    let json = cli.format == Format::Json;
    if cli.seed_catalog {
        r.text.push_str(&render_seed_catalog());
        return Ok(());
    }
    let Some(command) = &cli.command else {
        return Err(Error::Parse("no command given; see --help".into()));
    };
    match command {
        Command::Ring(c) => ring_cmd(c, json, r),
        Command::Module(c) => module_cmd(c, json, cli.jobs, r),
        Command::Nimrep(c) => nimrep_cmd(c, json, r),
        Command::Minv(c) => minv_cmd(c, json, cli.jobs, r),
        Command::Catalog(c) => catalog_cmd(c, json, r),
        Command::Repg(c) => repg_cmd(c, json, r),
    }
}

fn involution_text(ring: &ZPlusRing, inv: &[usize]) -> String {
    if inv.iter().enumerate().all(|(i, &j)| i == j) {
        return "identity".into();
    }
    let pairs: Vec<String> = inv.iter().enumerate().map(|(i, &j)| format!("{}->{}", ring.labels()[i], ring.labels()[j])).collect();
    pairs.join(", ")
}

fn ring_cmd(c: &RingCmd, json: bool, r: &mut Report) -> Result<()> {
    match c {
        RingCmd::Verify(src) => {
            let ring = src.load()?;
            let violations = ring.verify();
            let involution = if violations.is_empty() { ring.find_based_structure()? } else { None };
            if json {
                let v: Vec<String> = violations.iter().map(ToString::to_string).collect();
                r.json(&json!({"valid": violations.is_empty(), "violations": v, "based": involution.is_some(), "involution": involution}))?;
            } else if violations.is_empty() {
                match &involution {
                    Some(inv) => r.line(format!("valid Z+-ring; based; involution = {}", involution_text(&ring, inv))),
                    None => r.line("valid Z+-ring; not based"),
                }
            } else {
                r.line(format!("invalid Z+-ring: {} violation(s)", violations.len()));
                for v in &violations {
                    r.line(format!("  {v}"));
                }
            }
            if !violations.is_empty() {
                r.code = 1;
            }
        }
        RingCmd::FusionMatrices(src) => {
            let ring = src.load()?;
            let mats = ring.fusion_matrices();
            if json {
                let as_ints: Vec<Vec<Vec<i64>>> = mats
                    .iter()
                    .map(|m| m.to_i64_rows().ok_or_else(|| Error::Overflow("fusion coefficient".into())))
                    .collect::<Result<_>>()?;
                r.json(&as_ints)?;
            } else {
                for (i, m) in mats.iter().enumerate() {
                    r.line(format!("N_{} ({}):", i, ring.labels()[i]));
                    r.text.push_str(&m.to_string());
                }
            }
        }
        RingCmd::Bound(src) => {
            let ring = src.load()?;
            let b = ring.prop1_bound();
            if json {
                let b = b.to_u64().ok_or_else(|| Error::Overflow("search bound".into()))?;
                r.json(&json!({ "bound": b }))?;
            } else {
                r.line(b.to_string());
            }
        }
    }
    Ok(())
}

fn module_cmd(c: &ModuleCmd, json: bool, jobs: usize, r: &mut Report) -> Result<()> {
    match c {
        ModuleCmd::Verify { input } => {
            let file: ModuleFile = read_json(input)?;
            let ring = file.ring.resolve()?;
            let module = file.to_module()?;
            let violations = verify_module(&ring, &module)?;
            let based = if violations.is_empty() && ring.involution().is_some() { Some(is_based(&ring, &module)?) } else { None };
            let indec = is_indecomposable(&module);
            let irred = is_irreducible(&module);
            let based_mismatch = file.based && based != Some(true);
            if json {
                let v: Vec<String> = violations.iter().map(ToString::to_string).collect();
                r.json(&json!({
                    "valid": violations.is_empty(),
                    "violations": v,
                    "based": based,
                    "indecomposable": indec,
                    "irreducible": irred,
                }))?;
            } else if violations.is_empty() {
                let b = match based {
                    Some(true) => "based",
                    Some(false) => "not based",
                    None => "based structure undefined (ring has no involution)",
                };
                r.line(format!("valid Z+-module of rank {}; {b}", module.module_rank()));
                r.line(format!("indecomposable: {indec}; irreducible: {irred}"));
                if based_mismatch {
                    r.line("file declares the module based, but it is not");
                }
            } else {
                r.line(format!("invalid Z+-module: {} violation(s)", violations.len()));
                for v in &violations {
                    r.line(format!("  {v}"));
                }
            }
            if !violations.is_empty() || based_mismatch {
                r.code = 1;
            }
        }
        ModuleCmd::Equiv { input, other } => {
            let a: ModuleFile = read_json(input)?;
            let b: ModuleFile = read_json(other)?;
            let phi = are_equivalent(&a.to_module()?, &b.to_module()?);
            if json {
                r.json(&json!({"equivalent": phi.is_some(), "permutation": phi}))?;
            } else {
                match phi {
                    Some(p) => r.line(format!("equivalent; basis map {p:?}")),
                    None => r.line("not equivalent"),
                }
            }
        }
        ModuleCmd::Enumerate { ring: src, max_rank, bound } => {
            let ring = src.load()?;
            let defaults = SearchBounds::from_ring(&ring)?;
            let bounds = SearchBounds {
                max_rank: max_rank.unwrap_or(defaults.max_rank),
                max_entry: bound.unwrap_or(defaults.max_entry),
            };
            let modules = enumerate_with(&ring, bounds, DEFAULT_NODE_BUDGET, jobs)?;
            let ring_ref = match src.level {
                Some(l) => RingRef::Named(format!("sl2:{l}")),
                None => RingRef::Inline(RingFile::from_ring(&ring)?),
            };
            let based: Vec<Option<bool>> = modules
                .iter()
                .map(|m| if ring.involution().is_some() { is_based(&ring, m).map(Some) } else { Ok(None) })
                .collect::<Result<_>>()?;
            if json {
                let files: Vec<ModuleFile> = modules
                    .iter()
                    .zip(&based)
                    .map(|(m, b)| ModuleFile::from_module(ring_ref.clone(), m, b.unwrap_or(false)))
                    .collect::<Result<_>>()?;
                r.json(&files)?;
            } else {
                r.line(format!(
                    "{} irreducible module(s) with rank <= {} and entries <= {}",
                    modules.len(),
                    bounds.max_rank,
                    bounds.max_entry
                ));
                for (n, (m, b)) in modules.iter().zip(&based).enumerate() {
                    let tag = match b {
                        Some(true) => "based",
                        Some(false) => "not based",
                        None => "no involution",
                    };
                    r.line(format!("#{} rank {} ({tag})", n + 1, m.module_rank()));
                    for (i, a) in m.action().iter().enumerate() {
                        r.line(format!("M_{i}:"));
                        r.text.push_str(&a.to_string());
                    }
                }
            }
        }
    }
    Ok(())
}

fn nimrep_cmd(c: &NimrepCmd, json: bool, r: &mut Report) -> Result<()> {
    match c {
        NimrepCmd::Classify { level } => {
            let lv = Sl2Level::new(*level)?;
            let types: Vec<String> = classify_nimreps(lv).iter().map(ToString::to_string).collect();
            if json {
                r.json(&types)?;
            } else {
                r.line(format!("level {level} (h = {}):", lv.h()));
                for t in &types {
                    let ty: DynkinType = t.parse()?;
                    r.line(format!("  {t}\trank {}", ty.rank()));
                }
            }
        }
        NimrepCmd::FromGraph { graph, level } => {
            let lv = Sl2Level::new(*level)?;
            let g = graph.load()?;
            let module = nimrep_from_graph(&g, lv)?;
            if json {
                let f = ModuleFile::from_module(RingRef::Named(format!("sl2:{level}")), &module, true)?;
                r.json(&f)?;
            } else {
                r.line(format!("accepted: based module of rank {} at level {level}", module.module_rank()));
                for (i, a) in module.action().iter().enumerate() {
                    r.line(format!("M_{i}:"));
                    r.text.push_str(&a.to_string());
                }
            }
        }
        NimrepCmd::Exponents { graph, level } => {
            let lv = Sl2Level::new(*level)?;
            let module = nimrep_from_graph(&graph.load()?, lv)?;
            let exps = module_exponents(&module, lv)?;
            if json {
                r.json(&exps)?;
            } else {
                let s: Vec<String> = exps.iter().map(ToString::to_string).collect();
                r.line(format!("exponents: {}", s.join(" ")));
            }
        }
        NimrepCmd::Paths { graph, level } => {
            let lv = Sl2Level::new(*level)?;
            let paths = essential_path_dims(&graph.load()?, lv)?;
            let totals: Vec<String> = paths.grade_totals.iter().map(ToString::to_string).collect();
            if json {
                let small = |x: &num_bigint::BigInt| x.to_u64().ok_or_else(|| Error::Overflow("path count".into()));
                let grade_totals: Vec<u64> = paths.grade_totals.iter().map(small).collect::<Result<_>>()?;
                r.json(&json!({"grade_totals": grade_totals, "total": small(&paths.total)?}))?;
            } else {
                for (i, w) in paths.grades.iter().enumerate() {
                    r.line(format!("W^{i} (total {}):", totals[i]));
                    r.text.push_str(&w.to_string());
                }
                r.line(format!("total dimension {}", paths.total));
            }
        }
    }
    Ok(())
}

fn minv_cmd(c: &MinvCmd, json: bool, jobs: usize, r: &mut Report) -> Result<()> {
    match c {
        MinvCmd::Solve { level, bound } => {
            let lv = Sl2Level::new(*level)?;
            let invs = enumerate_invariants_with(&commutant_lattice(lv), *bound, minv::DEFAULT_NODE_BUDGET, jobs)?;
            if json {
                let files: Vec<InvariantFile> = invs.iter().map(InvariantFile::from_invariant).collect::<Result<_>>()?;
                r.json(&files)?;
            } else {
                r.line(format!("{} modular invariant(s) at level {level} with entries <= {bound}", invs.len()));
                for (n, inv) in invs.iter().enumerate() {
                    r.line(format!("#{} trace {}: {}", n + 1, inv.trace(), describe_blocks(inv)));
                    r.text.push_str(&inv.matrix().to_string());
                }
            }
        }
        MinvCmd::Lattice { level } => {
            let lat = commutant_lattice(Sl2Level::new(*level)?);
            let basis = lat.basis_matrices();
            if json {
                let files: Vec<Vec<Vec<i64>>> = basis
                    .iter()
                    .map(|m| m.to_i64_rows().ok_or_else(|| Error::Overflow("lattice basis entry".into())))
                    .collect::<Result<_>>()?;
                r.json(&files)?;
            } else {
                r.line(format!("commutant lattice of rank {} at level {level}", lat.rank()));
                for (n, m) in basis.iter().enumerate() {
                    r.line(format!("B_{n}:"));
                    r.text.push_str(&m.to_string());
                }
            }
        }
        MinvCmd::Check { input, against } => {
            let inv = read_json::<InvariantFile>(input)?.to_invariant()?;
            let mfile: ModuleFile = read_json(against)?;
            let report = check_claims(&inv, &mfile.to_module()?)?;
            if json {
                r.json(&json!({
                    "trace": report.trace.to_string(),
                    "module_rank": report.module_rank,
                    "trace_ok": report.trace_ok,
                    "exponents_ok": report.exponents_ok,
                    "cstar_simple_count": report.cstar_simple_count.to_string(),
                }))?;
            } else {
                r.line(format!("trace {} vs module rank {}: {}", report.trace, report.module_rank, ok(report.trace_ok)));
                r.line(format!("exponent multisets: {}", ok(report.exponents_ok)));
                r.line(format!("sum of squared entries: {}", report.cstar_simple_count));
            }
            if !report.trace_ok || !report.exponents_ok {
                r.code = 1;
            }
        }
    }
    Ok(())
}

fn ok(b: bool) -> &'static str {
    if b {
        "match"
    } else {
        "MISMATCH"
    }
}

fn catalog_cmd(c: &CatalogCmd, json: bool, r: &mut Report) -> Result<()> {
    match c {
        CatalogCmd::List { max_rank } => {
            let mut rows = Vec::new();
            for n in 1..=*max_rank {
                for ty in DynkinType::all_of_rank(n) {
                    rows.push((ty, coxeter_number(ty), coxeter_exponents(ty)?));
                }
            }
            if json {
                let v: Vec<serde_json::Value> =
                    rows.iter().map(|(t, h, e)| json!({"type": t.to_string(), "h": h, "exponents": e})).collect();
                r.json(&v)?;
            } else {
                r.line("type\th\texponents");
                for (t, h, e) in &rows {
                    let s: Vec<String> = e.iter().map(ToString::to_string).collect();
                    r.line(format!("{t}\t{h}\t{}", s.join(" ")));
                }
            }
        }
        CatalogCmd::Show { ty } => {
            let g = build(*ty)?;
            let h = coxeter_number(*ty);
            let exps = coxeter_exponents(*ty)?;
            let alg = module_category_exists(*ty);
            if json {
                r.json(&json!({
                    "type": ty.to_string(),
                    "h": h,
                    "exponents": exps,
                    "graph": GraphFile::from_graph(&g)?,
                    "level": alg.level,
                    "algebra_object": alg.weights,
                    "exists": alg.exists,
                }))?;
            } else {
                let e: Vec<String> = exps.iter().map(ToString::to_string).collect();
                let w: Vec<String> = alg.weights.iter().map(|x| format!("V_{x}")).collect();
                r.line(format!("{ty}: h = {h}, exponents {}", e.join(" ")));
                r.line(format!(
                    "module category over level {}: algebra {} ({})",
                    alg.level,
                    w.join("+"),
                    if alg.exists { "exists" } else { "does not exist" }
                ));
                r.line("adjacency:");
                r.text.push_str(&g.adjacency().to_string());
            }
        }
    }
    Ok(())
}

fn repg_cmd(c: &RepgCmd, json: bool, r: &mut Report) -> Result<()> {
    match c {
        RepgCmd::Subgroups(src) => {
            let g = src.load()?;
            let classes = repg::subgroup_classes(&g);
            if json {
                let v: Vec<serde_json::Value> = classes
                    .iter()
                    .map(|c| {
                        json!({
                            "representative": c.representative,
                            "class_size": c.class_size,
                            "type": c.isomorphism_type,
                            "schur_multiplier_order": c.schur_multiplier_order,
                        })
                    })
                    .collect();
                r.json(&v)?;
            } else {
                r.line(format!("{} of order {}: {} subgroup class(es)", g.isomorphism_type(), g.order(), classes.len()));
                r.line("order\ttype\tclass size\tmultiplier\trepresentative");
                for c in &classes {
                    let rep: Vec<&str> = c.representative.iter().map(|&e| g.labels()[e].as_str()).collect();
                    r.line(format!(
                        "{}\t{}\t{}\t{}\t{{{}}}",
                        c.order(),
                        c.isomorphism_type,
                        c.class_size,
                        c.schur_multiplier_order,
                        rep.join(", ")
                    ));
                }
            }
        }
        RepgCmd::FiberCount(src) => {
            let n = repg::fiber_functor_count(&src.load()?)?;
            if json {
                r.json(&json!({ "fiber_functors": n }))?;
            } else {
                r.line(n.to_string());
            }
        }
        RepgCmd::ModcatCount(src) => {
            let n = repg::module_category_count(&src.load()?)?;
            if json {
                r.json(&json!({ "module_categories": n }))?;
            } else {
                r.line(n.to_string());
            }
        }
    }
    Ok(())
}
