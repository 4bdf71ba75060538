//! Command-line surface. Exit codes: 0 success, 1 precondition or usage
//! failure, 2 integrality violation, 3 method disagreement under
//! `kernel --method all`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde_json::json;

use wittvec::error::{KernelError, LambdaError, RingError, WittError};
use wittvec::kernel::{
    KernelProblem, PolyMap, RingMap, SelfAugmentation, TableAugmentation, Verdict, ZsAlgebra,
};
use wittvec::lambda::{
    dwork_product, AdamsContext, FrobeniusLift, MonoidPowerLift, PolySubstitution,
};
use wittvec::parse::{
    eval_expr, parse_element, parse_problem, BaseSpec, EvalHooks, Expr, ParseError, ProblemSpec,
    TargetSpec,
};
use wittvec::rings::{
    Integers, MonoidAlgebra, PolynomialRing, RationalExtension, Residue, Ring, RingMulMonoid,
    SLocalIntegers, TableMonoid,
};
use wittvec::trunc::{PrimeSet, TruncationSet};
use wittvec::witt::{
    lambda_to_witt, phi_bar, phi_s_witt, witt_add, witt_frobenius, witt_mul, witt_to_lambda,
    witt_verschiebung, GhostVector, WittVector,
};

#[derive(Parser)]
#[command(name = "wittvec", version, about = "Exact arithmetic in truncated Witt vector rings")]
struct Cli {
    /// Emit machine-readable JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Witt vector arithmetic over the target ring of a problem file.
    Witt {
        #[command(subcommand)]
        op: WittCmd,
    },
    /// Lambda-ring operations over the base ring of a problem file.
    Lambda {
        #[command(subcommand)]
        op: LambdaCmd,
    },
    /// Kernel membership for alpha over the problem file's map.
    Kernel(KernelArgs),
}

#[derive(Args, Clone)]
struct ProblemArg {
    /// Problem file declaring primes, rings, lifts and named elements.
    #[arg(long)]
    problem: PathBuf,
}

#[derive(Subcommand)]
enum WittCmd {
    /// Witt sum of two vectors.
    Add {
        #[command(flatten)]
        problem: ProblemArg,
        /// Truncation set, e.g. "1,2,4".
        #[arg(long)]
        trunc: String,
        /// Component lists, e.g. "1,0,3".
        vecs: Vec<String>,
    },
    /// Witt product of two vectors.
    Mul {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        trunc: String,
        vecs: Vec<String>,
    },
    /// Ghost coordinates of a vector.
    Ghost {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        trunc: String,
        vec: String,
    },
    /// Unique preimage of ghost coordinates (errors when non-integral).
    FromGhost {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        trunc: String,
        vec: String,
    },
    /// Teichmueller representative of a ring element.
    Teichmuller {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        trunc: String,
        elem: String,
    },
    /// Frobenius F_k.
    Frobenius {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        trunc: String,
        #[arg(long)]
        k: u64,
        vec: String,
    },
    /// Verschiebung V_k into the given output truncation.
    Verschiebung {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        trunc: String,
        #[arg(long)]
        k: u64,
        #[arg(long, name = "out-trunc")]
        out_trunc: String,
        vec: String,
    },
    /// Idempotent projector phi_S (componentwise on ghost slots).
    PhiS {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        trunc: String,
        /// Interpret the input as ghost coordinates and emit ghost output.
        #[arg(long)]
        ghost: bool,
        vec: String,
    },
    /// Splitting W_{S_N} -> W_N of the projection.
    PhiBar {
        #[command(flatten)]
        problem: ProblemArg,
        /// Truncation bound N; the input lives over S_N.
        #[arg(long)]
        bound: u64,
        vec: String,
    },
    /// Lambda-series presentation of a vector over a full truncation.
    ToLambda {
        #[command(flatten)]
        problem: ProblemArg,
        vec: String,
    },
}

#[derive(Subcommand)]
enum LambdaCmd {
    /// Adams operation psi^n.
    Adams {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        n: u64,
        elem: String,
    },
    /// tau_k, in the rational extension of the base.
    Tau {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        k: u64,
        elem: String,
    },
    /// Lambda operation lambda^n.
    Op {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        n: u64,
        /// Also compute by the explicit formula and require agreement.
        #[arg(long, name = "check-dual")]
        check_dual: bool,
        elem: String,
    },
    /// The series lambda_S(x) mod t^N.
    Series {
        #[command(flatten)]
        problem: ProblemArg,
        /// Precision N; defaults to the problem file's bound.
        #[arg(long)]
        precision: Option<u64>,
        elem: String,
    },
    /// Coefficients of the Dwork product F(X,t) mod t^(degree+1).
    Dwork {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        degree: u64,
    },
}

#[derive(Args)]
struct KernelArgs {
    #[command(flatten)]
    problem: ProblemArg,
    #[arg(long, value_enum, default_value_t = Method::Lambda)]
    method: Method,
    /// Truncation bound N; defaults to the problem file's bound.
    #[arg(long)]
    bound: Option<u64>,
    elem: String,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Method {
    Lambda,
    Ghost,
    Direct,
    All,
}

/// Diagnostic with the exit code mandated for its class.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn pre(msg: impl Into<String>) -> Self {
        Failure {
            code: 1,
            msg: msg.into(),
        }
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        Failure {
            code: if e.is_integrality() { 2 } else { 1 },
            msg: e.to_string(),
        }
    }
}

impl From<WittError> for Failure {
    fn from(e: WittError) -> Self {
        match e {
            WittError::Ring(r) => r.into(),
            other => Failure::pre(other.to_string()),
        }
    }
}

impl From<LambdaError> for Failure {
    fn from(e: LambdaError) -> Self {
        match e {
            LambdaError::Ring(r) => r.into(),
            LambdaError::Witt(w) => w.into(),
            LambdaError::DualPath(msg) => Failure { code: 2, msg },
            other => Failure::pre(other.to_string()),
        }
    }
}

impl From<KernelError> for Failure {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::Ring(r) => r.into(),
            KernelError::Witt(w) => w.into(),
            KernelError::Lambda(l) => l.into(),
            other => Failure::pre(other.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::pre(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help and version are not failures
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if benign { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.cmd {
        Cmd::Witt { op } => run_witt(op, cli.json),
        Cmd::Lambda { op } => run_lambda(op, cli.json),
        Cmd::Kernel(args) => run_kernel(args, cli.json),
    }
}

// ---------------------------------------------------------------------------
// problem loading

struct Loaded {
    spec: ProblemSpec,
    primes: PrimeSet,
}

fn load(problem: &ProblemArg) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(&problem.problem)
        .map_err(|e| Failure::pre(format!("{}: {e}", problem.problem.display())))?;
    let spec = parse_problem(&text)?;
    let primes = PrimeSet::new(spec.primes.clone())?;
    Ok(Loaded { spec, primes })
}

/// Rings usable as CLI targets: they may expose named generators to the
/// expression evaluator.
trait CliRing: Ring {
    fn gen_named(&self, _name: &str) -> Option<Self::Elem> {
        None
    }
}

impl CliRing for Residue {}
impl CliRing for SLocalIntegers {}
impl CliRing for Integers {}
impl<C: Ring> CliRing for PolynomialRing<C> {
    fn gen_named(&self, name: &str) -> Option<Self::Elem> {
        self.var_named(name)
    }
}

enum Target {
    Residue(Residue),
    SLocal(SLocalIntegers),
    Integers(Integers),
    PolySLocal(PolynomialRing<SLocalIntegers>),
    PolyIntegers(PolynomialRing<Integers>),
}

fn build_target(loaded: &Loaded) -> Result<Target, Failure> {
    let spec = loaded
        .spec
        .target
        .as_ref()
        .ok_or_else(|| Failure::pre("problem file declares no target"))?;
    Ok(match spec {
        TargetSpec::Residue(m) => Target::Residue(Residue::new(*m)?),
        TargetSpec::SLocal => Target::SLocal(SLocalIntegers::new(loaded.primes.clone())),
        TargetSpec::Integers => Target::Integers(Integers),
        TargetSpec::Polynomial { vars, base } => match **base {
            TargetSpec::SLocal => Target::PolySLocal(PolynomialRing::new(
                SLocalIntegers::new(loaded.primes.clone()),
                vars.clone(),
            )),
            TargetSpec::Integers => {
                Target::PolyIntegers(PolynomialRing::new(Integers, vars.clone()))
            }
            _ => return Err(Failure::pre("unsupported polynomial coefficient ring")),
        },
    })
}

macro_rules! with_target {
    ($target:expr, $r:ident => $body:expr) => {
        match $target {
            Target::Residue($r) => $body,
            Target::SLocal($r) => $body,
            Target::Integers($r) => $body,
            Target::PolySLocal($r) => $body,
            Target::PolyIntegers($r) => $body,
        }
    };
}

// ---------------------------------------------------------------------------
// witt commands

fn parse_trunc(s: &str) -> Result<TruncationSet, Failure> {
    let members = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Failure::pre(format!("bad truncation entry '{}'", p.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruncationSet::new(members)?)
}

fn eval_components<R: CliRing>(ring: &R, s: &str) -> Result<Vec<R::Elem>, Failure> {
    s.split(',')
        .map(|part| {
            let expr = parse_element(part.trim())?;
            eval_one(ring, &expr)
        })
        .collect()
}

fn eval_one<R: CliRing>(ring: &R, expr: &Expr) -> Result<R::Elem, Failure> {
    let name = |n: &str| ring.gen_named(n);
    let bracket = |_: &str| None;
    Ok(eval_expr(
        ring,
        expr,
        &EvalHooks {
            name: &name,
            bracket: &bracket,
        },
    )?)
}

fn render_witt<R: Ring>(w: &WittVector<R>, ring: &R, json: bool) -> String {
    if json {
        let comps: Vec<String> = w.components().iter().map(|c| ring.render(c)).collect();
        json!({ "components": comps }).to_string()
    } else {
        w.render()
    }
}

fn render_ghost<R: Ring>(g: &GhostVector<R>, ring: &R, json: bool) -> String {
    if json {
        let entries: Vec<String> = g.entries().iter().map(|c| ring.render(c)).collect();
        json!({ "ghost": entries }).to_string()
    } else {
        g.render()
    }
}

fn run_witt(op: &WittCmd, json: bool) -> Result<String, Failure> {
    let problem = match op {
        WittCmd::Add { problem, .. }
        | WittCmd::Mul { problem, .. }
        | WittCmd::Ghost { problem, .. }
        | WittCmd::FromGhost { problem, .. }
        | WittCmd::Teichmuller { problem, .. }
        | WittCmd::Frobenius { problem, .. }
        | WittCmd::Verschiebung { problem, .. }
        | WittCmd::PhiS { problem, .. }
        | WittCmd::PhiBar { problem, .. }
        | WittCmd::ToLambda { problem, .. } => problem,
    };
    let loaded = load(problem)?;
    let target = build_target(&loaded)?;
    with_target!(&target, ring => witt_dispatch(ring, &loaded, op, json))
}

fn witt_dispatch<R: CliRing>(
    ring: &R,
    loaded: &Loaded,
    op: &WittCmd,
    json: bool,
) -> Result<String, Failure> {
    match op {
        WittCmd::Add { trunc, vecs, .. } | WittCmd::Mul { trunc, vecs, .. } => {
            if vecs.len() != 2 {
                return Err(Failure::pre("expected exactly two component lists"));
            }
            let t = parse_trunc(trunc)?;
            let u = WittVector::new(ring.clone(), t.clone(), eval_components(ring, &vecs[0])?)?;
            let v = WittVector::new(ring.clone(), t, eval_components(ring, &vecs[1])?)?;
            let w = if matches!(op, WittCmd::Add { .. }) {
                witt_add(&u, &v)?
            } else {
                witt_mul(&u, &v)?
            };
            Ok(render_witt(&w, ring, json))
        }
        WittCmd::Ghost { trunc, vec, .. } => {
            let t = parse_trunc(trunc)?;
            let u = WittVector::new(ring.clone(), t, eval_components(ring, vec)?)?;
            Ok(render_ghost(&u.ghost(), ring, json))
        }
        WittCmd::FromGhost { trunc, vec, .. } => {
            let t = parse_trunc(trunc)?;
            let g = GhostVector::new(ring.clone(), t, eval_components(ring, vec)?)?;
            Ok(render_witt(&g.to_witt()?, ring, json))
        }
        WittCmd::Teichmuller { trunc, elem, .. } => {
            let t = parse_trunc(trunc)?;
            let x = eval_one(ring, &parse_element(elem)?)?;
            Ok(render_witt(
                &WittVector::teichmuller(ring.clone(), t, x),
                ring,
                json,
            ))
        }
        WittCmd::Frobenius { trunc, k, vec, .. } => {
            let t = parse_trunc(trunc)?;
            let u = WittVector::new(ring.clone(), t, eval_components(ring, vec)?)?;
            Ok(render_witt(&witt_frobenius(*k, &u)?, ring, json))
        }
        WittCmd::Verschiebung {
            trunc,
            k,
            out_trunc,
            vec,
            ..
        } => {
            let t = parse_trunc(trunc)?;
            let out = parse_trunc(out_trunc)?;
            let u = WittVector::new(ring.clone(), t, eval_components(ring, vec)?)?;
            Ok(render_witt(&witt_verschiebung(*k, &u, &out)?, ring, json))
        }
        WittCmd::PhiS {
            trunc, ghost, vec, ..
        } => {
            let t = parse_trunc(trunc)?;
            if *ghost {
                let g = GhostVector::new(ring.clone(), t, eval_components(ring, vec)?)?;
                Ok(render_ghost(&g.phi_s(&loaded.primes), ring, json))
            } else {
                let u = WittVector::new(ring.clone(), t, eval_components(ring, vec)?)?;
                Ok(render_witt(&phi_s_witt(&u, &loaded.primes)?, ring, json))
            }
        }
        WittCmd::PhiBar { bound, vec, .. } => {
            let t = loaded.primes.s_truncation(*bound);
            let u = WittVector::new(ring.clone(), t, eval_components(ring, vec)?)?;
            Ok(render_witt(&phi_bar(&u, &loaded.primes, *bound)?, ring, json))
        }
        WittCmd::ToLambda { vec, .. } => {
            let comps = eval_components(ring, vec)?;
            let t = TruncationSet::full(comps.len() as u64 + 1);
            let u = WittVector::new(ring.clone(), t, comps)?;
            let s = witt_to_lambda(&u)?;
            // round-trip invariant: the rendered series determines the vector
            debug_assert_eq!(lambda_to_witt(&s), u);
            if json {
                let coeffs: Vec<String> = s.coeffs().iter().map(|c| ring.render(c)).collect();
                Ok(json!({ "series": s.render("t"), "coefficients": coeffs }).to_string())
            } else {
                Ok(s.render("t"))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// base contexts for lambda and kernel commands

enum BaseCtx {
    MonoidResidue {
        ctx: AdamsContext<MonoidAlgebra<SLocalIntegers, TableMonoid>, MonoidPowerLift>,
        target: Residue,
        values: Vec<u64>,
    },
    MonoidSelf {
        ctx: AdamsContext<MonoidAlgebra<SLocalIntegers, RingMulMonoid>, MonoidPowerLift>,
        target: SLocalIntegers,
    },
    Poly {
        ctx: AdamsContext<PolynomialRing<SLocalIntegers>, PolySubstitution<SLocalIntegers>>,
    },
}

fn build_base(loaded: &Loaded) -> Result<BaseCtx, Failure> {
    let base = loaded
        .spec
        .base
        .as_ref()
        .ok_or_else(|| Failure::pre("problem file declares no base"))?;
    match base {
        BaseSpec::MonoidAlgebraOfTarget => {
            match loaded
                .spec
                .target
                .as_ref()
                .ok_or_else(|| Failure::pre("monoid-algebra base needs a target"))?
            {
                TargetSpec::Residue(m) => {
                    let target = Residue::new(*m)?;
                    let (monoid, values) = TableMonoid::from_residue_ring(&target);
                    let ring =
                        MonoidAlgebra::new(SLocalIntegers::new(loaded.primes.clone()), monoid);
                    let witnesses: Vec<_> = (0..*m as usize).map(|i| ring.bracket(i)).collect();
                    let ctx =
                        AdamsContext::new(ring, loaded.primes.clone(), MonoidPowerLift, &witnesses)?;
                    Ok(BaseCtx::MonoidResidue {
                        ctx,
                        target,
                        values,
                    })
                }
                TargetSpec::SLocal => {
                    let zs = SLocalIntegers::new(loaded.primes.clone());
                    let ring = MonoidAlgebra::new(zs.clone(), RingMulMonoid { ring: zs.clone() });
                    let witnesses: Vec<_> = [0i64, 1, 2, -2]
                        .iter()
                        .map(|&i| ring.bracket(BigRational::from_integer(i.into())))
                        .collect();
                    let ctx =
                        AdamsContext::new(ring, loaded.primes.clone(), MonoidPowerLift, &witnesses)?;
                    Ok(BaseCtx::MonoidSelf { ctx, target: zs })
                }
                other => Err(Failure::pre(format!(
                    "monoid-algebra base unsupported over {other:?}"
                ))),
            }
        }
        BaseSpec::Polynomial { vars } => {
            let zs = SLocalIntegers::new(loaded.primes.clone());
            let ring = PolynomialRing::new(zs, vars.clone());
            let mut images = BTreeMap::new();
            for &p in loaded.primes.primes() {
                let Some((_, lines)) = loaded.spec.lifts.iter().find(|(q, _)| *q == p) else {
                    return Err(Failure::pre(format!("no lift declared for prime {p}")));
                };
                let mut per_var = Vec::new();
                for v in vars {
                    let Some((_, expr)) = lines.iter().find(|(name, _)| name == v) else {
                        return Err(Failure::pre(format!(
                            "lift for prime {p} misses variable {v}"
                        )));
                    };
                    per_var.push(eval_one(&ring, expr)?);
                }
                images.insert(p, per_var);
            }
            let lifts = PolySubstitution::new(images);
            let witnesses: Vec<_> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
            let ctx = AdamsContext::new(ring, loaded.primes.clone(), lifts, &witnesses)?;
            Ok(BaseCtx::Poly { ctx })
        }
    }
}

/// Evaluates the problem file's named elements in order, then the requested
/// expression, all against the same hooks.
fn eval_in_base<B: RationalExtension, L: FrobeniusLift<B>>(
    ctx: &AdamsContext<B, L>,
    spec: &ProblemSpec,
    gen: &dyn Fn(&B, &str) -> Option<B::Elem>,
    bracket: &dyn Fn(&B, &str) -> Option<B::Elem>,
    request: &str,
) -> Result<B::Elem, Failure> {
    let ring = &ctx.ring;
    let mut env: BTreeMap<String, B::Elem> = BTreeMap::new();
    for (name, expr) in &spec.elements {
        let value = {
            let lookup = |n: &str| env.get(n).cloned().or_else(|| gen(ring, n));
            let br = |l: &str| bracket(ring, l);
            eval_expr(
                ring,
                expr,
                &EvalHooks {
                    name: &lookup,
                    bracket: &br,
                },
            )?
        };
        env.insert(name.clone(), value);
    }
    let expr = parse_element(request)?;
    let lookup = |n: &str| env.get(n).cloned().or_else(|| gen(ring, n));
    let br = |l: &str| bracket(ring, l);
    Ok(eval_expr(
        ring,
        &expr,
        &EvalHooks {
            name: &lookup,
            bracket: &br,
        },
    )?)
}

fn residue_bracket(
    ring: &MonoidAlgebra<SLocalIntegers, TableMonoid>,
    label: &str,
) -> Option<<MonoidAlgebra<SLocalIntegers, TableMonoid> as Ring>::Elem> {
    ring.monoid.index_of(label).map(|i| ring.bracket(i))
}

fn rational_bracket(
    ring: &MonoidAlgebra<SLocalIntegers, RingMulMonoid>,
    label: &str,
) -> Option<<MonoidAlgebra<SLocalIntegers, RingMulMonoid> as Ring>::Elem> {
    let q: BigRational = label.parse().ok()?;
    if !ring.coeff.denominator_ok(&q) {
        return None;
    }
    Some(ring.bracket(q))
}

fn no_bracket<B: Ring>(_: &B, _: &str) -> Option<B::Elem> {
    None
}

macro_rules! with_base {
    ($base:expr, $ctx:ident, $gen:ident, $bracket:ident => $body:expr) => {
        match $base {
            BaseCtx::MonoidResidue { ctx: $ctx, .. } => {
                let $gen = |_: &MonoidAlgebra<SLocalIntegers, TableMonoid>, _: &str| None;
                let $bracket = residue_bracket;
                $body
            }
            BaseCtx::MonoidSelf { ctx: $ctx, .. } => {
                let $gen = |_: &MonoidAlgebra<SLocalIntegers, RingMulMonoid>, _: &str| None;
                let $bracket = rational_bracket;
                $body
            }
            BaseCtx::Poly { ctx: $ctx } => {
                let $gen =
                    |r: &PolynomialRing<SLocalIntegers>, n: &str| r.var_named(n);
                let $bracket = no_bracket::<PolynomialRing<SLocalIntegers>>;
                $body
            }
        }
    };
}

// ---------------------------------------------------------------------------
// lambda commands

fn run_lambda(op: &LambdaCmd, json: bool) -> Result<String, Failure> {
    if let LambdaCmd::Dwork { prime, degree } = op {
        let d = dwork_product(*prime, degree + 1)?;
        let ring = &d.ctx.ring;
        if json {
            let coeffs: Vec<String> = d
                .f_series
                .coeffs()
                .iter()
                .map(|c| ring.render(c))
                .collect();
            return Ok(json!({ "prime": prime, "coefficients": coeffs }).to_string());
        }
        let mut lines = Vec::new();
        for i in 1..=*degree {
            lines.push(format!("t^{i}: {}", ring.render(d.f_series.coeff(i))));
        }
        return Ok(lines.join("\n"));
    }
    let problem = match op {
        LambdaCmd::Adams { problem, .. }
        | LambdaCmd::Tau { problem, .. }
        | LambdaCmd::Op { problem, .. }
        | LambdaCmd::Series { problem, .. } => problem,
        LambdaCmd::Dwork { .. } => unreachable!(),
    };
    let loaded = load(problem)?;
    let base = build_base(&loaded)?;
    with_base!(&base, ctx, gen, bracket => lambda_dispatch(ctx, &loaded.spec, &gen, &bracket, op, json))
}

fn lambda_dispatch<B, L>(
    ctx: &AdamsContext<B, L>,
    spec: &ProblemSpec,
    gen: &dyn Fn(&B, &str) -> Option<B::Elem>,
    bracket: &dyn Fn(&B, &str) -> Option<B::Elem>,
    op: &LambdaCmd,
    json: bool,
) -> Result<String, Failure>
where
    B: RationalExtension,
    L: FrobeniusLift<B>,
{
    let ring = &ctx.ring;
    match op {
        LambdaCmd::Adams { n, elem, .. } => {
            let x = eval_in_base(ctx, spec, gen, bracket, elem)?;
            let v = ctx.adams(*n, &x);
            Ok(scalar_out(json, "adams", &ring.render(&v)))
        }
        LambdaCmd::Tau { k, elem, .. } => {
            let x = eval_in_base(ctx, spec, gen, bracket, elem)?;
            let ext = ring.rational_extension();
            let v = ctx.tau(*k, &x);
            Ok(scalar_out(json, "tau", &ext.render(&v)))
        }
        LambdaCmd::Op {
            n,
            check_dual,
            elem,
            ..
        } => {
            let x = eval_in_base(ctx, spec, gen, bracket, elem)?;
            let v = ctx.lambda_wilkerson(*n, &x)?;
            if *check_dual {
                let w = ctx.lambda_explicit(*n, &x)?;
                if v != w {
                    return Err(LambdaError::DualPath(format!(
                        "lambda^{n} disagrees between the recursion and the explicit formula"
                    ))
                    .into());
                }
            }
            Ok(scalar_out(json, "lambda", &ring.render(&v)))
        }
        LambdaCmd::Series {
            precision, elem, ..
        } => {
            let precision = precision
                .or(spec.bound)
                .ok_or_else(|| Failure::pre("no precision given and no bound in problem file"))?;
            let x = eval_in_base(ctx, spec, gen, bracket, elem)?;
            let s = ctx.lambda_series(&x, precision)?;
            if json {
                let coeffs: Vec<String> = s.coeffs().iter().map(|c| ring.render(c)).collect();
                Ok(json!({ "series": s.render("t"), "coefficients": coeffs }).to_string())
            } else {
                Ok(s.render("t"))
            }
        }
        LambdaCmd::Dwork { .. } => unreachable!(),
    }
}

fn scalar_out(json: bool, key: &str, rendered: &str) -> String {
    if json {
        json!({ key: rendered }).to_string()
    } else {
        rendered.to_string()
    }
}

// ---------------------------------------------------------------------------
// kernel command

fn run_kernel(args: &KernelArgs, json: bool) -> Result<String, Failure> {
    let loaded = load(&args.problem)?;
    let bound = args
        .bound
        .or(loaded.spec.bound)
        .ok_or_else(|| Failure::pre("no bound given and none in problem file"))?;
    let base = build_base(&loaded)?;
    match base {
        BaseCtx::MonoidResidue {
            ctx,
            target,
            values,
        } => {
            let gen = |_: &MonoidAlgebra<SLocalIntegers, TableMonoid>, _: &str| None;
            let x = eval_in_base(&ctx, &loaded.spec, &gen, &residue_bracket, &args.elem)?;
            let prob = KernelProblem::new(ctx, target, TableAugmentation { values }, bound)?;
            kernel_verdict(&prob, &x, args.method, json)
        }
        BaseCtx::MonoidSelf { ctx, target } => {
            let gen = |_: &MonoidAlgebra<SLocalIntegers, RingMulMonoid>, _: &str| None;
            let x = eval_in_base(&ctx, &loaded.spec, &gen, &rational_bracket, &args.elem)?;
            let prob = KernelProblem::new(ctx, target, SelfAugmentation, bound)?;
            kernel_verdict(&prob, &x, args.method, json)
        }
        BaseCtx::Poly { ctx } => {
            let gen = |r: &PolynomialRing<SLocalIntegers>, n: &str| r.var_named(n);
            let bracket = no_bracket::<PolynomialRing<SLocalIntegers>>;
            let x = eval_in_base(&ctx, &loaded.spec, &gen, &bracket, &args.elem)?;
            match loaded.spec.target.as_ref() {
                Some(TargetSpec::SLocal) => {
                    let target = SLocalIntegers::new(loaded.primes.clone());
                    let images = poly_pi_images(&ctx.ring, &target, &loaded.spec)?;
                    let prob =
                        KernelProblem::new(ctx, target, PolyMap { images }, bound)?;
                    kernel_verdict(&prob, &x, args.method, json)
                }
                Some(TargetSpec::Residue(m)) => {
                    let target = Residue::new(*m)?;
                    let images = poly_pi_images(&ctx.ring, &target, &loaded.spec)?;
                    let prob =
                        KernelProblem::new(ctx, target, PolyMap { images }, bound)?;
                    kernel_verdict(&prob, &x, args.method, json)
                }
                other => Err(Failure::pre(format!(
                    "kernel over a polynomial base needs an s-local or residue target, got {other:?}"
                ))),
            }
        }
    }
}

fn poly_pi_images<R: CliRing>(
    base: &PolynomialRing<SLocalIntegers>,
    target: &R,
    spec: &ProblemSpec,
) -> Result<Vec<R::Elem>, Failure> {
    let mut images = Vec::new();
    for v in &base.vars {
        let Some((_, expr)) = spec.pi.iter().find(|(name, _)| name == v) else {
            return Err(Failure::pre(format!("pi misses variable {v}")));
        };
        images.push(eval_one(target, expr)?);
    }
    Ok(images)
}

fn kernel_verdict<B, L, R, P>(
    prob: &KernelProblem<B, L, R, P>,
    x: &B::Elem,
    method: Method,
    json: bool,
) -> Result<String, Failure>
where
    B: RationalExtension,
    L: FrobeniusLift<B>,
    R: ZsAlgebra,
    P: RingMap<B, R>,
{
    let verdict = match method {
        Method::Lambda => prob.in_kernel_lambda(x)?,
        Method::Ghost => prob.in_kernel_ghost(x)?,
        Method::Direct => prob.in_kernel_direct(x)?,
        Method::All => {
            let lam = prob.in_kernel_lambda(x)?;
            let dir = prob.in_kernel_direct(x)?;
            let mut verdicts = vec![("lambda", lam.member), ("direct", dir.member)];
            if prob.target.is_torsion_free() {
                let gho = prob.in_kernel_ghost(x)?;
                verdicts.push(("ghost", gho.member));
            }
            if verdicts.iter().any(|(_, m)| *m != lam.member) {
                let detail: Vec<String> = verdicts
                    .iter()
                    .map(|(n, m)| format!("{n}={m}"))
                    .collect();
                return Err(Failure {
                    code: 3,
                    msg: format!("methods disagree: {}", detail.join(", ")),
                });
            }
            lam
        }
    };
    Ok(render_verdict(&verdict, &prob.target, json))
}

fn render_verdict<R: Ring>(v: &Verdict<R>, target: &R, json: bool) -> String {
    if json {
        match &v.witness {
            None => json!({ "member": v.member }).to_string(),
            Some((label, value)) => json!({
                "member": v.member,
                "witness": { "constraint": label, "value": target.render(value) }
            })
            .to_string(),
        }
    } else {
        match &v.witness {
            None => format!("member: {}", v.member),
            Some((label, value)) => format!(
                "member: false, witness: {label}, value={}",
                target.render(value)
            ),
        }
    }
}
