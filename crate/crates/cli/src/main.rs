use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spinorial::chain::{self, ChainKind};
use spinorial::clifford::{build_gammas, BetaSolution, CliffordRep};
use spinorial::equivalence::{self as eq, Reparam};
use spinorial::invariants::{invariant_tower, permutation_operator, PermutationMethod, SpinorPairSpace};
use spinorial::json as js;
use spinorial::matrix::SparsePolyMatrix;
use spinorial::rmatrix::{combined_checked, fundamental_r, spinor_parts, spinor_r, Chirality, RObject};
use spinorial::scalar::{parse_rational, Rational};
use spinorial::suite::{self, SuiteConfig};
use spinorial::verifier::{self, IdentityReport, RllLayout};

#[derive(Parser)]
#[command(name = "spinorial", version, about = "Exact spinorial and fundamental R-matrices for so(d) and sp(n)")]
struct Cli {
    /// Write the machine-readable result to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Suppress human-readable output.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gamma matrices and chirality element.
    Gamma {
        #[arg(long)]
        d: usize,
    },
    /// z, its spectral projectors, the permutation operator or the invariant tower.
    Invariants {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "z")]
        emit: Emit,
        /// Highest invariant for `--emit tower` (default d+1).
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Construct an R-matrix.
    Rmatrix(RmatrixArgs),
    /// Check one identity exactly.
    Verify(VerifyArgs),
    /// Equivalences between R-matrices.
    Equiv(EquivArgs),
    /// Monodromy and transfer matrices of small chains.
    Chain(ChainArgs),
    /// Run every acceptance check.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Z,
    Projectors,
    Permutation,
    Tower,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Sym {
    So,
    Sp,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Pair {
    Vv,
    Ss,
}

#[derive(Clone, Copy, ValueEnum)]
enum Chir {
    Plus,
    Minus,
    Full,
}

impl From<Chir> for Chirality {
    fn from(c: Chir) -> Self {
        match c {
            Chir::Plus => Chirality::Plus,
            Chir::Minus => Chirality::Minus,
            Chir::Full => Chirality::Full,
        }
    }
}

#[derive(Args)]
struct RmatrixArgs {
    #[arg(long, value_enum, default_value = "so")]
    symmetry: Sym,
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum, default_value = "vv")]
    pair: Pair,
    #[arg(long, value_enum)]
    chirality: Option<Chir>,
    /// Emit `Ř = 𝒫R` instead of `R`.
    #[arg(long)]
    checked: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Identity {
    Rrr,
    Rll,
    Inversion,
    Llr,
    Fusion,
    TraceFusion,
}

#[derive(Clone, Copy, ValueEnum)]
enum Layout {
    Vector,
    Spinor,
    SpinorCheck,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: Identity,
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum, default_value = "so")]
    symmetry: Sym,
    /// For `rrr`: which pair of representations.
    #[arg(long, value_enum, default_value = "vv")]
    pair: Pair,
    #[arg(long, value_enum)]
    chirality: Option<Chir>,
    #[arg(long, value_enum, default_value = "vector")]
    layout: Layout,
    #[arg(long = "N", default_value_t = 1)]
    sites: usize,
    /// Shift parameter; solved from the inversion relation when omitted.
    #[arg(long)]
    beta: Option<String>,
    /// Offset of the inverse monodromy in `trace-fusion`.
    #[arg(long, default_value = "3/2")]
    inverse_offset: String,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct EquivArgs {
    #[command(subcommand)]
    sub: Option<EquivCommand>,
    #[command(flatten)]
    map: MapArgs,
}

#[derive(Args)]
struct MapArgs {
    /// R-matrix spec: `so<d>:vv`, `sp<n>:vv`, `so<d>:ss[:plus|minus|full]` or `sl<n>`.
    #[arg(long)]
    left: Option<String>,
    #[arg(long)]
    right: Option<String>,
    /// `alpha,gamma`: compare left(u) with right(alpha·u + gamma).
    #[arg(long, default_value = "1,0")]
    reparam: String,
}

#[derive(Subcommand)]
enum EquivCommand {
    /// Block decomposition of a spinorial part.
    Blocks {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum)]
        chirality: Chir,
    },
    /// Entries of T forced to vanish by the RTT relation.
    RttPattern {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "minus")]
        chirality: Chir,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ChainOp {
    Monodromy,
    Transfer,
    Commute,
    Fusion,
}

#[derive(Clone, Copy, ValueEnum)]
enum Aux {
    Vector,
    Spinor,
}

#[derive(Args)]
struct ChainArgs {
    #[arg(value_enum)]
    op: ChainOp,
    #[arg(long)]
    d: usize,
    #[arg(long = "N", default_value_t = 1)]
    sites: usize,
    #[arg(long, value_enum, default_value = "spinor")]
    aux: Aux,
    /// With `--aux spinor`: build from the spinorial R of this part instead of L.
    #[arg(long, value_enum)]
    chirality: Option<Chir>,
    #[arg(long, default_value = "3/2")]
    inverse_offset: String,
}

#[derive(Args)]
struct SuiteArgs {
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4, 5, 6, 7, 8])]
    dims: Vec<usize>,
    #[arg(long)]
    include_so8_rrr: bool,
    #[arg(long, default_value_t = 1)]
    grid_scale: usize,
    /// Directory for per-criterion reports and `summary.txt`.
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Directory of replacement fixture files.
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

/// What a command produced: text for the terminal, JSON for `--json`, and a verdict.
struct Outcome {
    text: String,
    json: Value,
    pass: bool,
}

impl Outcome {
    fn info(text: String, json: Value) -> Self {
        Self { text, json, pass: true }
    }

    fn report(r: &IdentityReport) -> Self {
        Self { text: r.summary(), json: serde_json::to_value(r).unwrap_or(Value::Null), pass: r.pass }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if !cli.quiet && !out.text.is_empty() {
                println!("{}", out.text.trim_end());
            }
            if let Some(path) = &cli.json {
                if let Err(e) = write_json(path, &out.json) {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gamma { d } => gamma(*d),
        Command::Invariants { d, emit, k_max } => invariants(*d, *emit, *k_max),
        Command::Rmatrix(a) => rmatrix(a),
        Command::Verify(a) => verify(a),
        Command::Equiv(a) => equiv(a),
        Command::Chain(a) => chain_cmd(a),
        Command::Suite(a) => suite_cmd(a),
    }
}

fn gamma(d: usize) -> Result<Outcome> {
    let rep = build_gammas(d)?;
    let chirality = rep.chirality().ok().map(js::const_matrix);
    let json = json!({
        "d": d,
        "spinor_dim": rep.spinor_dim(),
        "gammas": rep.gammas().iter().map(js::const_matrix).collect::<Vec<_>>(),
        "chirality": chirality,
    });
    let bad = rep.clifford_violations();
    let text = format!("so({d}): {} gamma matrices of size {}, Clifford relations {}", d, rep.spinor_dim(), if bad.is_empty() { "hold" } else { "FAIL" });
    Ok(Outcome { text, json, pass: bad.is_empty() })
}

fn invariants(d: usize, emit: Emit, k_max: Option<usize>) -> Result<Outcome> {
    let rep = build_gammas(d)?;
    let space = SpinorPairSpace::new(&rep);
    Ok(match emit {
        Emit::Z => {
            let roots: Vec<String> = space.roots.iter().map(|r| r.to_string()).collect();
            Outcome::info(format!("z on S⊗S ({0}x{0}), eigenvalues {1}", space.dim(), roots.join(", ")), json!({ "d": d, "z": js::const_matrix(&space.z) }))
        }
        Emit::Projectors => {
            let mut text = String::new();
            let mut list = Vec::new();
            for r in &space.roots {
                let p = space.projector(r);
                text.push_str(&format!("z = {r}: rank {}\n", p.rank()));
                list.push(json!({ "eigenvalue": js::rational(r), "rank": p.rank(), "projector": js::const_matrix(p) }));
            }
            Outcome::info(text, json!({ "d": d, "projectors": list }))
        }
        Emit::Permutation => {
            let s = permutation_operator(&rep, PermutationMethod::Spectral);
            let g = permutation_operator(&rep, PermutationMethod::GammaSum);
            Outcome { text: format!("spectral and gamma-sum forms agree: {}", s == g), json: json!({ "d": d, "permutation": js::const_matrix(&s) }), pass: s == g }
        }
        Emit::Tower => {
            let k_max = k_max.unwrap_or(d + 1);
            let t = invariant_tower(&space, k_max);
            let text = (0..=k_max).map(|k| format!("I_{k}: {} nonzero entries", t.values[k].nnz())).collect::<Vec<_>>().join("\n");
            Outcome::info(text, json!({ "d": d, "tower": t.values.iter().map(js::const_matrix).collect::<Vec<_>>() }))
        }
    })
}

fn robject_json(r: &RObject) -> Value {
    json!({
        "label": r.label(),
        "symmetry": r.symmetry,
        "rep_pair": r.rep_pair,
        "chirality": r.chirality,
        "checked": r.checked,
        "degree": r.degree,
        "factor_dim": r.factor_dim,
        "matrix": js::poly_matrix(&r.matrix),
    })
}

fn build_r(sym: Sym, d: usize, pair: Pair, chirality: Option<Chir>, checked: bool) -> Result<Vec<RObject>> {
    let list = match (sym, pair) {
        (Sym::So, Pair::Vv) => vec![fundamental_r(1, d)?],
        (Sym::Sp, Pair::Vv) => vec![fundamental_r(-1, d)?],
        (Sym::Sp, Pair::Ss) => bail!("spinor pairs exist only for so(d)"),
        (Sym::So, Pair::Ss) => {
            let all = spinor_r(&build_gammas(d)?)?;
            let want: Option<Chirality> = chirality.map(Into::into);
            let picked: Vec<RObject> = all.into_iter().filter(|r| r.checked == checked && want.map_or(true, |c| r.chirality == c)).collect();
            if picked.is_empty() {
                bail!("so({d}) has no {} part", want.map_or("such", |c| c.as_str()));
            }
            return Ok(picked);
        }
    };
    Ok(list.into_iter().map(|r| if checked { r.toggled() } else { r }).collect())
}

fn rmatrix(a: &RmatrixArgs) -> Result<Outcome> {
    let rs = build_r(a.symmetry, a.d, a.pair, a.chirality, a.checked)?;
    let text = rs.iter().map(|r| format!("{}: degree {}, {} nonzero entries", r.label(), r.degree, r.matrix.nnz())).collect::<Vec<_>>().join("\n");
    let json = Value::Array(rs.iter().map(robject_json).collect());
    Ok(Outcome::info(text, json))
}

fn beta_for(rep: &CliffordRep, given: &Option<String>) -> Result<Rational> {
    if let Some(b) = given {
        return Ok(parse_rational(b)?);
    }
    match verifier::solve_inversion_beta(rep) {
        BetaSolution::Unique(b) => Ok(b),
        other => bail!("the inversion relation does not fix beta ({other:?})"),
    }
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let report = match a.identity {
        Identity::Rrr => {
            let rs = build_r(a.symmetry, a.d, a.pair, a.chirality, false)?;
            let mut reports = Vec::new();
            for r in &rs {
                reports.push(verifier::check_rrr(&r.matrix, r.factor_dim, &r.label())?);
            }
            return Ok(combine(&reports));
        }
        Identity::Rll => {
            let rep = build_gammas(a.d)?;
            match a.layout {
                Layout::Vector => verifier::check_rll(&rep, &fundamental_r(1, a.d)?.matrix, RllLayout::VectorAux, "vector")?,
                Layout::Spinor | Layout::SpinorCheck => {
                    let parts = spinor_parts(&SpinorPairSpace::new(&rep))?;
                    let checked = match a.chirality {
                        Some(c) => {
                            let c: Chirality = c.into();
                            parts.iter().find(|p| p.chirality == c).context("no such part")?.checked.matrix.clone()
                        }
                        None => combined_checked(&parts),
                    };
                    if matches!(a.layout, Layout::SpinorCheck) {
                        verifier::check_rll(&rep, &checked, RllLayout::SpinorAuxCheck, "spinor checked")?
                    } else {
                        let p = spinorial::invariants::swap_operator(rep.spinor_dim()).to_poly();
                        verifier::check_rll(&rep, &p.mul(&checked), RllLayout::SpinorAux, "spinor")?
                    }
                }
            }
        }
        Identity::Inversion => {
            let rep = build_gammas(a.d)?;
            verifier::check_inversion(&rep, &beta_for(&rep, &a.beta)?)?
        }
        Identity::Llr => {
            let rep = build_gammas(a.d)?;
            verifier::check_llr_fusion(&rep, &beta_for(&rep, &a.beta)?)?
        }
        Identity::Fusion => {
            let rep = build_gammas(a.d)?;
            verifier::check_monodromy_fusion(&rep, a.sites, &beta_for(&rep, &a.beta)?)?
        }
        Identity::TraceFusion => {
            let rep = build_gammas(a.d)?;
            chain::fusion_trace_identity(&rep, a.sites, &parse_rational(&a.inverse_offset)?)?
        }
    };
    Ok(Outcome::report(&report))
}

fn combine(reports: &[IdentityReport]) -> Outcome {
    Outcome {
        text: reports.iter().map(|r| r.summary()).collect::<Vec<_>>().join("\n"),
        json: serde_json::to_value(reports).unwrap_or(Value::Null),
        pass: reports.iter().all(|r| r.pass),
    }
}

/// Parses an R-matrix spec into the matrix and the dimension of one factor.
fn parse_spec(spec: &str) -> Result<(SparsePolyMatrix, usize)> {
    let fields: Vec<&str> = spec.split(':').collect();
    let head = fields[0];
    let num = |prefix: &str| -> Result<usize> { head[prefix.len()..].parse().with_context(|| format!("bad dimension in {spec:?}")) };
    if head.starts_with("sl") {
        let n = num("sl")?;
        return Ok((eq::sl_fundamental(n), n));
    }
    let sym = if head.starts_with("so") {
        Sym::So
    } else if head.starts_with("sp") {
        Sym::Sp
    } else {
        bail!("unknown algebra in {spec:?}");
    };
    let d = num("so")?;
    let pair = match fields.get(1).copied().unwrap_or("vv") {
        "vv" => Pair::Vv,
        "ss" => Pair::Ss,
        other => bail!("unknown pair {other:?}"),
    };
    let chirality = match fields.get(2).copied() {
        None => None,
        Some("plus") => Some(Chir::Plus),
        Some("minus") => Some(Chir::Minus),
        Some("full") => Some(Chir::Full),
        Some(other) => bail!("unknown chirality {other:?}"),
    };
    let rs = build_r(sym, d, pair, chirality, false)?;
    if rs.len() != 1 {
        bail!("{spec:?} names {} parts; add a chirality", rs.len());
    }
    Ok((rs[0].matrix.clone(), rs[0].factor_dim))
}

fn parse_reparam(s: &str) -> Result<Reparam> {
    let (a, g) = s.split_once(',').context("reparam must be alpha,gamma")?;
    Ok(Reparam { alpha: parse_rational(a)?, gamma0: parse_rational(g)? })
}

fn equiv(a: &EquivArgs) -> Result<Outcome> {
    match &a.sub {
        Some(EquivCommand::Blocks { d, chirality }) => blocks(*d, (*chirality).into()),
        Some(EquivCommand::RttPattern { d, chirality }) => rtt(*d, (*chirality).into()),
        None => {
            let (Some(l), Some(r)) = (&a.map.left, &a.map.right) else { bail!("equiv needs --left and --right, or a subcommand") };
            equiv_map(l, r, &parse_reparam(&a.map.reparam)?)
        }
    }
}

fn equiv_map(left: &str, right: &str, re: &Reparam) -> Result<Outcome> {
    let (ra, na) = parse_spec(left)?;
    let (rb, nb) = parse_spec(right)?;
    if na != nb {
        bail!("factor dimensions differ: {na} and {nb}");
    }
    let space = eq::intertwiner_space(&ra, &rb, re, &eq::default_samples(&ra, &rb))?;
    let monomial = eq::table_basis_match(&ra, &re.apply(&rb), na)?;
    let g = monomial.as_ref().map(|m| m.s.matrix());
    let holds = g.as_ref().is_some_and(|g| space.holds(&ra, &rb, &g.kron(g)));
    let mut text = format!("intertwiner space dimension {}, lambda = ({})/({})", space.dim(), space.lambda.0, space.lambda.1);
    match &monomial {
        Some(m) if holds => text.push_str(&format!("\nmonomial g⊗g with g = perm {:?} phases {:?}", m.s.perm, m.s.phase)),
        _ => text.push_str("\nno monomial g⊗g intertwiner"),
    }
    let json = json!({
        "left": left,
        "right": right,
        "reparam": re.to_json(),
        "lambda": { "numerator": space.lambda.0.to_string(), "denominator": space.lambda.1.to_string() },
        "intertwiner_dim": space.dim(),
        "g": g.as_ref().filter(|_| holds).map(js::const_matrix),
    });
    Ok(Outcome { text, json, pass: space.dim() > 0 })
}

fn spinor_part(d: usize, c: Chirality) -> Result<(CliffordRep, SparsePolyMatrix)> {
    let rep = build_gammas(d)?;
    let parts = spinor_parts(&SpinorPairSpace::new(&rep))?;
    let m = parts.into_iter().find(|p| p.chirality == c).with_context(|| format!("so({d}) has no {} part", c.as_str()))?.unchecked.matrix;
    Ok((rep, m))
}

fn blocks(d: usize, c: Chirality) -> Result<Outcome> {
    let (rep, r) = spinor_part(d, c)?;
    let v = match d {
        4 => Some(spinorial::fixtures::similarity("so4_similarity")?),
        6 => Some(spinorial::fixtures::similarity("so6_similarity")?),
        _ => None,
    };
    let dec = eq::block_decompose(&r, rep.spinor_dim(), v.as_ref())?;
    let mut text = format!("site blocks {:?}, block diagonal: {}", dec.site_blocks, dec.block_diagonal);
    for b in &dec.blocks {
        text.push_str(&format!("\n  {:?}: {}", b.sectors, b.form.name()));
    }
    Ok(Outcome { text, json: dec.to_json(), pass: dec.block_diagonal })
}

fn rtt(d: usize, c: Chirality) -> Result<Outcome> {
    let (rep, r) = spinor_part(d, c)?;
    let p = eq::rtt_pattern(&r, rep.spinor_dim())?;
    let one_based = |v: &[(usize, usize)]| v.iter().map(|&(a, b)| [a + 1, b + 1]).collect::<Vec<_>>();
    let zero: Vec<(usize, usize)> = p.zero.iter().copied().collect();
    let text = format!("{} entries of T forced to zero, diagonal: {}\nallowed (1-based): {:?}", zero.len(), p.is_diagonal(), one_based(&p.allowed()));
    let json = json!({ "d": d, "chirality": c, "zero": one_based(&zero), "allowed": one_based(&p.allowed()), "unresolved_products": p.unresolved_products.len() });
    Ok(Outcome::info(text, json))
}

fn chain_cmd(a: &ChainArgs) -> Result<Outcome> {
    let rep = build_gammas(a.d)?;
    if let ChainOp::Fusion = a.op {
        return Ok(Outcome::report(&chain::fusion_trace_identity(&rep, a.sites, &parse_rational(&a.inverse_offset)?)?));
    }
    let m = match (a.aux, a.chirality) {
        (Aux::Vector, _) => chain::vector_monodromy(a.d, a.sites)?,
        (Aux::Spinor, None) => chain::spinor_monodromy(&rep, a.sites, ChainKind::LChain)?,
        (Aux::Spinor, Some(c)) => chain::spinor_monodromy(&rep, a.sites, ChainKind::RChain(c.into()))?,
    };
    Ok(match a.op {
        ChainOp::Monodromy => Outcome::info(
            format!("{} chain, N={}: aux {} x quantum {}, degree {}, nonzero aux blocks {}", m.kind.label(), m.sites, m.aux_dim, m.quantum_dim(), m.degree(), m.nonzero_blocks().len()),
            m.to_json(),
        ),
        ChainOp::Transfer => {
            let t = chain::transfer(&m)?;
            Outcome::info(format!("transfer matrix of size {}, degree {}", m.quantum_dim(), t.degree()), t.to_json())
        }
        ChainOp::Commute => Outcome::report(&chain::check_commuting_family(&chain::transfer(&m)?)?),
        ChainOp::Fusion => unreachable!(),
    })
}

fn suite_cmd(a: &SuiteArgs) -> Result<Outcome> {
    let cfg = SuiteConfig { dims: a.dims.clone(), include_so8_rrr: a.include_so8_rrr, grid_scale: a.grid_scale, fixture_dir: a.fixtures.clone() };
    let report = suite::run_suite(&cfg)?;
    let table = report.summary_table();
    if let Some(dir) = &a.output_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for c in &report.criteria {
            write_json(&dir.join(format!("criterion_{:02}.json", c.id)), &serde_json::to_value(c)?)?;
        }
        fs::write(dir.join("summary.txt"), &table).with_context(|| format!("writing {}", dir.join("summary.txt").display()))?;
    }
    Ok(Outcome { text: table, json: suite::report_json(&report), pass: report.pass })
}
