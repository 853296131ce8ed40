mod cache;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use quizzy::classical::{FiniteAction, SignedPermutation};
use quizzy::duals::{orbital_classes, DualMode, DualSpec};
use quizzy::intertwiner::{liberation_level, twist_expansion, twist_via_mobius, xi_twisted, QuizzySpec};
use quizzy::linalg::{span_intersection_dim, ExactMatrix};
use quizzy::partition::{enumerate, CategoryId, SetPartition};
use quizzy::report::{
    self, classical_orbitals, dual_orbitals, explore_cube_exterior, quantum_orbitals, Terms,
    ExactValue, Method, OrbitalReport, SuiteContext,
};
use quizzy::symbolic::{evaluate_matrix, magic_character, magic_unitary, CharacterForm, NCPolynomial};
use quizzy::{Budget, Error};

use cache::{Cache, CacheError};
use output::{Format, Output};

#[derive(Parser)]
#[command(name = "quizzy", version, about = "Exact computations for easy and twisted quantum groups")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Emit one JSON object per report.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV rows (computation,group,N,k,method,value,num,den,ms).
    #[arg(long, global = true)]
    csv: bool,
    #[arg(long, global = true, default_value_t = 100_000_000)]
    max_index_space: u128,
    #[arg(long, global = true, default_value_t = 100_000)]
    max_group_order: u128,
    /// Enable the balanced categories P2*, P_even*.
    #[arg(long, global = true)]
    experimental: bool,
    /// Bypass the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Count (and list) the partitions of a category.
    Partitions {
        #[arg(long)]
        category: CategoryId,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        list: bool,
    },
    /// dim Fix(u^{⊗k}) at N, with N−1 and N+1 for context.
    Fixdim {
        #[arg(long)]
        category: CategoryId,
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        twisted: bool,
    },
    /// Orbital counts.
    Orbitals {
        #[command(subcommand)]
        kind: OrbitalKind,
    },
    /// Möbius expansion of a signed partition vector.
    Twist {
        #[arg(long)]
        partition: SetPartition,
        /// N used to cross-check the expansion against the signed vector.
        #[arg(long = "N", alias = "n", default_value_t = 3)]
        n: usize,
    },
    /// dim(span left ∩ span right) for two partition families on m points.
    SpanIntersect {
        #[arg(long)]
        left: CategoryId,
        #[arg(long)]
        left_twisted: bool,
        #[arg(long)]
        right: CategoryId,
        #[arg(long)]
        right_twisted: bool,
        #[arg(long)]
        m: usize,
        #[arg(long = "N", alias = "n")]
        n: usize,
    },
    /// The 2^N × 2^N magic unitary of the cube action.
    MagicUnitary {
        #[arg(long = "N", alias = "n")]
        n: usize,
        /// Evaluate at a signed permutation, e.g. "2,-1" sends e1 to e2 and e2 to −e1.
        #[arg(long)]
        at: Option<String>,
    },
    /// The magic character, split by r.
    Character {
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long, default_value = "final")]
        form: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        at: Option<String>,
    },
    /// Weingarten integral ∫ u_{a1 b1} … u_{am bm} (1-based indices) or the matrix itself.
    Weingarten {
        #[arg(long)]
        category: CategoryId,
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
        #[arg(long)]
        twisted: bool,
        /// Print W for category(m) instead of an integral.
        #[arg(long)]
        matrix: Option<usize>,
    },
    /// Liberation level of inner ⊂ outer.
    Level {
        #[arg(long)]
        inner: String,
        #[arg(long)]
        outer: String,
        #[arg(long = "N", alias = "n", default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        cap: usize,
    },
    /// Run a verification suite (or "all").
    Verify { suite: String },
    /// Cube moments of H_N beside the exterior-power expansion for barO_N.
    ExploreConjecture {
        #[arg(long = "N", alias = "n", value_delimiter = ',', default_values_t = vec![1, 2, 3])]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 2, 3])]
        k: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum OrbitalKind {
    /// Burnside count for a finite group action.
    Classical {
        #[arg(long)]
        group: ClassicalGroup,
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long, default_value = "segments")]
        space: Space,
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
    },
    /// Analytic count ∫χ^k for a quizzy group.
    Quantum {
        #[arg(long)]
        group: String,
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        #[arg(long, default_value = "constrained-rank")]
        method: String,
        /// Print the per-word breakdown.
        #[arg(long)]
        breakdown: bool,
    },
    /// Cayley-graph loops of a product or free product of cyclic groups.
    Dual {
        #[arg(long, value_delimiter = ',')]
        orders: Vec<usize>,
        #[arg(long, default_value = "direct")]
        mode: DualMode,
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        /// Also list orbital classes (k ≤ 3).
        #[arg(long)]
        classes: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassicalGroup {
    Hyperoctahedral,
    Symmetric,
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Segments,
    Cube,
    Points,
}

/// Failures mapped to exit codes.
enum Failure {
    Usage(String),
    Budget(String),
    Cache(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Cache(_) => 4,
            Failure::Other(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Budget(m) | Failure::Cache(m) | Failure::Other(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Invalid(_)
            | Error::Experimental(_)
            | Error::TwistNeedsEven(_)
            | Error::OrbitalOrder(_)
            | Error::LegOutOfRange { .. }
            | Error::PointMismatch(..)
            | Error::OddBlock(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<CacheError> for Failure {
    fn from(e: CacheError) -> Self {
        match e {
            CacheError::Corrupt(..) => Failure::Cache(e.to_string()),
            CacheError::Io(..) => Failure::Other(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    budget: Budget,
    experimental: bool,
    cache: Cache,
    out: Output,
}

impl Ctx {
    fn gate(&self, cat: CategoryId) -> Result<(), Failure> {
        cat.require_enabled(self.experimental).map_err(Failure::from)
    }

    /// Cached exact computation.
    fn cached<T>(
        &self,
        computation: &str,
        params: serde_json::Value,
        f: impl FnOnce() -> quizzy::Result<T>,
    ) -> Result<T, Failure>
    where
        T: serde::Serialize + serde::de::DeserializeOwned,
    {
        Ok(self.cache.get_or_compute(computation, params, f)??)
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T, Failure>) -> Result<(T, u64), Failure> {
    let start = std::time::Instant::now();
    let v = f()?;
    Ok((v, start.elapsed().as_millis() as u64))
}

fn parse_group(name: &str, n: usize, ctx: &Ctx) -> Result<QuizzySpec, Failure> {
    let base: QuizzySpec = name.parse()?;
    ctx.gate(base.category)?;
    Ok(QuizzySpec::new(base.category, base.twisted, n)?)
}

/// "2,-1": coordinate i goes to ±e_{|v_i|}.
fn parse_signed_perm(s: &str) -> Result<SignedPermutation, Failure> {
    let vals: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("bad signed permutation {s:?}")))?;
    if vals.contains(&0) {
        return Err(Failure::Usage("signed permutation entries are ±1..±N".into()));
    }
    let perm = vals.iter().map(|v| v.unsigned_abs() as usize - 1).collect();
    let signs = vals.iter().map(|v| v.signum() as i8).collect();
    Ok(SignedPermutation::new(perm, signs)?)
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    let mut ctx = Ctx {
        budget: Budget {
            max_index_space: g.max_index_space,
            max_group_order: g.max_group_order,
            ..Budget::default()
        },
        experimental: g.experimental,
        cache: if g.no_cache { Cache::disabled() } else { Cache::from_env() },
        out: Output::new(if g.json {
            Format::Json
        } else if g.csv {
            Format::Csv
        } else {
            Format::Human
        }),
    };
    let ok = match cli.command {
        Command::Partitions { category, m, list } => cmd_partitions(&mut ctx, category, m, list)?,
        Command::Fixdim { category, n, k, twisted } => cmd_fixdim(&mut ctx, category, n, k, twisted)?,
        Command::Orbitals { kind } => cmd_orbitals(&mut ctx, kind)?,
        Command::Twist { partition, n } => cmd_twist(&mut ctx, &partition, n)?,
        Command::SpanIntersect {
            left,
            left_twisted,
            right,
            right_twisted,
            m,
            n,
        } => cmd_span(&mut ctx, (left, left_twisted), (right, right_twisted), m, n)?,
        Command::MagicUnitary { n, at } => cmd_magic(&mut ctx, n, at.as_deref())?,
        Command::Character { n, form, r, at } => cmd_character(&mut ctx, n, &form, r, at.as_deref())?,
        Command::Weingarten {
            category,
            n,
            a,
            b,
            twisted,
            matrix,
        } => cmd_weingarten(&mut ctx, category, n, &a, &b, twisted, matrix)?,
        Command::Level { inner, outer, n, cap } => cmd_level(&mut ctx, &inner, &outer, n, cap)?,
        Command::Verify { suite } => cmd_verify(&mut ctx, &suite)?,
        Command::ExploreConjecture { n, k } => cmd_explore(&mut ctx, &n, &k)?,
    };
    ctx.out.finish();
    Ok(ok)
}

fn cmd_partitions(ctx: &mut Ctx, cat: CategoryId, m: usize, list: bool) -> Outcome {
    ctx.gate(cat)?;
    let ((parts, count), ms) = timed(|| {
        let parts = enumerate(cat, m);
        let count = parts.len();
        Ok((parts, count))
    })?;
    ctx.out.report(OrbitalReport::new("partitions", cat.to_string(), 0, m, Method::Symbolic, count, ms));
    if list {
        let strings: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
        ctx.out.object(json!({"category": cat, "m": m, "partitions": strings}), || strings.join("\n"));
    }
    Ok(true)
}

fn fixdim_cached(ctx: &Ctx, spec: &QuizzySpec, k: usize) -> Result<OrbitalReport, Failure> {
    let (v, ms) = timed(|| {
        ctx.cached::<ExactValue>("fixdim", json!({"spec": spec, "k": k}), || {
            Ok(report::fixdim_report(spec, k, &ctx.budget)?.value)
        })
    })?;
    Ok(OrbitalReport::new("fixdim", spec.group_name(), spec.n, k, Method::GramRank, v, ms))
}

fn cmd_fixdim(ctx: &mut Ctx, cat: CategoryId, n: usize, k: usize, twisted: bool) -> Outcome {
    ctx.gate(cat)?;
    let main = QuizzySpec::new(cat, twisted, n)?;
    for size in [n.saturating_sub(1), n, n + 1] {
        if size == 0 {
            continue;
        }
        let spec = QuizzySpec::new(cat, twisted, size)?;
        match fixdim_cached(ctx, &spec, k) {
            Ok(r) => ctx.out.report(r),
            // Neighbours are context only; the requested N must succeed.
            Err(Failure::Budget(msg)) if size != main.n => ctx.out.note(&format!("N={size}: {msg}")),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

fn cmd_orbitals(ctx: &mut Ctx, kind: OrbitalKind) -> Outcome {
    match kind {
        OrbitalKind::Classical { group, n, space, k } => {
            let (action, name) = match (group, space) {
                (ClassicalGroup::Hyperoctahedral, Space::Segments) => {
                    (FiniteAction::hyperoctahedral_segments(n, &ctx.budget)?, "H_N/segments")
                }
                (ClassicalGroup::Hyperoctahedral, Space::Cube) => {
                    (FiniteAction::hyperoctahedral_cube(n, &ctx.budget)?, "H_N/cube")
                }
                (ClassicalGroup::Symmetric, Space::Points) => (FiniteAction::symmetric(n, &ctx.budget)?, "S_N"),
                (ClassicalGroup::Symmetric, _) => {
                    return Err(Failure::Usage("the symmetric group acts on --space points".into()))
                }
                (ClassicalGroup::Hyperoctahedral, Space::Points) => {
                    return Err(Failure::Usage("the hyperoctahedral group acts on segments or cube".into()))
                }
            };
            for &kk in &k {
                let (v, ms) = timed(|| {
                    ctx.cached::<ExactValue>("orbitals-classical", json!({"group": name, "N": n, "k": kk}), || {
                        Ok(classical_orbitals(&action, name, n, kk).value)
                    })
                })?;
                ctx.out
                    .report(OrbitalReport::new("orbitals-classical", name, n, kk, Method::Burnside, v, ms));
            }
        }
        OrbitalKind::Quantum {
            group,
            n,
            k,
            method,
            breakdown,
        } => {
            let spec = parse_group(&group, n, ctx)?;
            let method: Method = method.parse()?;
            for &kk in &k {
                type Cached = (OrbitalReport, Option<Terms>);
                let ((mut r, terms), ms) = timed(|| {
                    ctx.cached::<Cached>(
                        "orbitals-quantum",
                        json!({"spec": spec, "k": kk, "method": method.tag()}),
                        || quantum_orbitals(&spec, kk, method, &ctx.budget),
                    )
                })?;
                r.ms = ms;
                ctx.out.report(r);
                if let (true, Some(terms)) = (breakdown, terms) {
                    let human = terms.iter().map(|(w, v)| format!("  {w:<10} {v}")).collect::<Vec<_>>().join("\n");
                    ctx.out.object(json!({"group": spec.group_name(), "N": n, "k": kk, "breakdown": terms}), || human);
                }
            }
        }
        OrbitalKind::Dual {
            orders,
            mode,
            k,
            classes,
        } => {
            let spec = DualSpec::new(orders, mode)?;
            for &kk in &k {
                let (v, ms) = timed(|| {
                    ctx.cached::<ExactValue>("orbitals-dual", json!({"spec": spec, "k": kk}), || {
                        Ok(dual_orbitals(&spec, kk).value)
                    })
                })?;
                ctx.out.report(OrbitalReport::new(
                    "orbitals-dual",
                    spec.group_name(),
                    spec.n(),
                    kk,
                    Method::LoopCount,
                    v,
                    ms,
                ));
                if classes {
                    let c = orbital_classes(&spec, kk)?;
                    let human = c
                        .groups
                        .iter()
                        .map(|g| format!("  pattern {:?}: {} classes", g.pattern, g.copies))
                        .chain([format!("  total classes: {}", c.total)])
                        .collect::<Vec<_>>()
                        .join("\n");
                    ctx.out.object(json!({"group": spec.group_name(), "classes": c}), || human);
                }
            }
        }
    }
    Ok(true)
}

fn cmd_twist(ctx: &mut Ctx, pi: &SetPartition, n: usize) -> Outcome {
    let terms = twist_expansion(pi)?;
    let agrees = twist_via_mobius(pi, n)? == xi_twisted(pi, n)?;
    let json_terms: Vec<_> = terms
        .iter()
        .map(|(p, c)| json!({"partition": p.to_string(), "coefficient": c.to_string()}))
        .collect();
    let human = format!(
        "T̄{pi} = {}\nexpansion matches the signed vector at N={n}: {agrees}",
        terms
            .iter()
            .map(|(p, c)| format!("{c:+}·T{p}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    ctx.out.object(
        json!({"partition": pi.to_string(), "N": n, "terms": json_terms, "matches_signed_vector": agrees}),
        || human,
    );
    Ok(agrees)
}

fn cmd_span(
    ctx: &mut Ctx,
    left: (CategoryId, bool),
    right: (CategoryId, bool),
    m: usize,
    n: usize,
) -> Outcome {
    ctx.gate(left.0)?;
    ctx.gate(right.0)?;
    let ls = QuizzySpec::new(left.0, left.1, n)?;
    let rs = QuizzySpec::new(right.0, right.1, n)?;
    let label = format!("{} & {}", ls.group_name(), rs.group_name());
    let (v, ms) = timed(|| {
        ctx.cached::<ExactValue>("span-intersect", json!({"left": ls, "right": rs, "m": m}), || {
            let a = quizzy::intertwiner::partition_vectors(&ls, m, &ctx.budget)?;
            let b = quizzy::intertwiner::partition_vectors(&rs, m, &ctx.budget)?;
            Ok(span_intersection_dim(&a, &b)?.into())
        })
    })?;
    ctx.out.report(OrbitalReport::new("span-intersect", label, n, m, Method::GramRank, v, ms));
    Ok(true)
}

fn matrix_rows(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

fn grid(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|r| r.iter().map(|s| format!("{s:>width$}")).collect::<Vec<_>>().join("  "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_magic(ctx: &mut Ctx, n: usize, at: Option<&str>) -> Outcome {
    let w = magic_unitary(n, &ctx.budget)?;
    match at {
        None => {
            let rows: Vec<Vec<String>> = w.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
            let human = rows
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(k, p)| format!("w[{i}][{k}] = {p}")))
                .collect::<Vec<_>>()
                .join("\n");
            ctx.out.object(json!({"N": n, "entries": rows}), || human);
        }
        Some(s) => {
            let g = parse_signed_perm(s)?;
            let wg = evaluate_matrix(&w, &g.matrix());
            let rows = matrix_rows(&wg);
            let human = grid(&rows);
            ctx.out.object(json!({"N": n, "at": s, "matrix": rows, "trace": wg.trace().to_string()}), || human);
        }
    }
    Ok(true)
}

fn cmd_character(ctx: &mut Ctx, n: usize, form: &str, r: Option<usize>, at: Option<&str>) -> Outcome {
    let form: CharacterForm = form.parse()?;
    let parts = magic_character(n, form, &ctx.budget)?;
    let poly = match r {
        Some(r) if form == CharacterForm::Trace => {
            return Err(Failure::Usage(format!("the trace form is not split by r (got r={r})")))
        }
        Some(r) => parts
            .get(r)
            .cloned()
            .ok_or_else(|| Failure::Usage(format!("r={r} exceeds N={n}")))?,
        None => NCPolynomial::sum(parts),
    };
    let text = poly.to_string();
    match at {
        None => ctx.out.object(json!({"N": n, "r": r, "character": text}), || text.clone()),
        Some(s) => {
            let g = parse_signed_perm(s)?;
            let v = ExactValue::from(poly.evaluate(&g.matrix()));
            ctx.out.report(OrbitalReport::new("character", "H_N", n, 1, Method::Symbolic, v, 0));
        }
    }
    Ok(true)
}

fn cmd_weingarten(
    ctx: &mut Ctx,
    cat: CategoryId,
    n: usize,
    a: &[usize],
    b: &[usize],
    twisted: bool,
    matrix: Option<usize>,
) -> Outcome {
    ctx.gate(cat)?;
    let spec = QuizzySpec::new(cat, twisted, n)?;
    if let Some(m) = matrix {
        let w = quizzy::intertwiner::weingarten(cat, m, n)?;
        let rows = matrix_rows(&w);
        let parts: Vec<String> = enumerate(cat, m).iter().map(|p| p.to_string()).collect();
        let human = format!("rows/columns: {}\n{}", parts.join(" "), grid(&rows));
        ctx.out.object(json!({"category": cat, "m": m, "N": n, "partitions": parts, "matrix": rows}), || human);
        return Ok(true);
    }
    if a.len() != b.len() || a.is_empty() {
        return Err(Failure::Usage("--a and --b must be nonempty and of equal length".into()));
    }
    if a.iter().chain(b).any(|&x| x == 0) {
        return Err(Failure::Usage("indices are 1-based".into()));
    }
    let a0: Vec<usize> = a.iter().map(|x| x - 1).collect();
    let b0: Vec<usize> = b.iter().map(|x| x - 1).collect();
    let (v, ms) = timed(|| {
        ctx.cached::<ExactValue>("weingarten", json!({"spec": spec, "a": a, "b": b}), || {
            Ok(quizzy::intertwiner::weingarten_integrate(&spec, &a0, &b0)?.into())
        })
    })?;
    ctx.out.report(OrbitalReport::new("weingarten", spec.group_name(), n, a.len(), Method::Weingarten, v, ms));
    Ok(true)
}

fn cmd_level(ctx: &mut Ctx, inner: &str, outer: &str, n: usize, cap: usize) -> Outcome {
    let i = parse_group(inner, n, ctx)?;
    let o = parse_group(outer, n, ctx)?;
    let r = liberation_level(&i, &o, cap, &ctx.budget)?;
    let human = format!(
        "{} ⊂ {} at N={n}: level {}\n  inner dims k=1..{cap}: {:?}\n  outer dims k=1..{cap}: {:?}",
        i.group_name(),
        o.group_name(),
        r.level.map_or_else(|| format!("> {cap}"), |l| l.to_string()),
        r.inner_dims,
        r.outer_dims
    );
    ctx.out.object(
        json!({"inner": i.group_name(), "outer": o.group_name(), "N": n, "cap": cap, "level": r.level,
               "inner_dims": r.inner_dims, "outer_dims": r.outer_dims}),
        || human,
    );
    for (k, (a, b)) in r.inner_dims.iter().zip(&r.outer_dims).enumerate() {
        ctx.out.csv_only(OrbitalReport::new("level-inner", i.group_name(), n, k + 1, Method::GramRank, *a, 0));
        ctx.out.csv_only(OrbitalReport::new("level-outer", o.group_name(), n, k + 1, Method::GramRank, *b, 0));
    }
    Ok(true)
}

fn cmd_verify(ctx: &mut Ctx, suite: &str) -> Outcome {
    let sctx = SuiteContext {
        budget: ctx.budget,
        experimental: ctx.experimental,
    };
    let outcomes = report::verify_suite(suite, &sctx)?;
    let mut all = true;
    for o in &outcomes {
        all &= o.passed();
        ctx.out.suite(o);
    }
    Ok(all)
}

fn cmd_explore(ctx: &mut Ctx, ns: &[usize], ks: &[usize]) -> Outcome {
    let mut consistent = true;
    for &n in ns {
        for &k in ks {
            let row = explore_cube_exterior(n, k, &ctx.budget)?;
            if row.consistency == Some(false) {
                consistent = false;
            }
            let human = format!(
                "N={n} k={k}: H_N cube (burnside) {}  barO_N exterior expansion {}  {}",
                row.cube_burnside,
                row.exterior_total,
                match row.consistency {
                    Some(true) => "consistent",
                    Some(false) => "INCONSISTENT",
                    None => "exploratory",
                }
            );
            ctx.out.csv_only(OrbitalReport::new(
                "explore-cube",
                "H_N",
                n,
                k,
                Method::Burnside,
                row.cube_burnside.clone(),
                0,
            ));
            ctx.out.csv_only(OrbitalReport::new(
                "explore-exterior",
                "barO_N",
                n,
                k,
                Method::ConstrainedRank,
                row.exterior_total.clone(),
                0,
            ));
            ctx.out.object(serde_json::to_value(&row).unwrap(), || human);
        }
    }
    Ok(consistent)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
