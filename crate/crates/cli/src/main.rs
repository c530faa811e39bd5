use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use rackcoh::cohomology::{
    act, primitive_for_translation, Cochain, Cohomology, Limits, Theory, DEFAULT_COCHAIN_CAP,
};
use rackcoh::freequandle::{
    ball_with, canonical, fq_distance_with, hat_phi, movers, quasimorphism_defect_with, FQElement,
    FqCaps, FreeWord,
};
use rackcoh::geometry::{
    check_extension_lipschitz, check_isometries, check_metric_quotient_equality, components,
    delta_f_defect, RackMetric,
};
use rackcoh::group::{inner_group_capped, word_norm, NormKind, DEFAULT_GROUP_CAP};
use rackcoh::io::{emit_rack_json, emit_rack_text, parse_group_spec, parse_rack};
use rackcoh::rack::{canonical_quandle_quotient, coset_rack, joyce_representation_capped};
use rackcoh::ratlinalg::kernel_basis;
use rackcoh::{Error, ErrorClass, Exec, FiniteRack, Permutation, Rational};

#[derive(Parser)]
#[command(
    name = "rackcoh",
    version,
    about = "Finite racks, their metrics and their cohomology"
)]
struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Cap on enumerated group elements.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_CAP)]
    cap: usize,
    /// Cap on cochain cells n^(k+1) for cohomology.
    #[arg(long, global = true, default_value_t = DEFAULT_COCHAIN_CAP)]
    cochain_cap: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run without data parallelism.
    #[arg(long, global = true)]
    sequential: bool,
    /// Include wall-clock timing in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a rack table.
    #[command(subcommand)]
    Gen(Gen),
    /// Validate a rack file.
    Verify { file: String },
    /// Connected components.
    Components { file: String },
    /// Rack metric: component diameters, distance tables, isometry check.
    Metric {
        file: String,
        #[arg(long)]
        diameters: bool,
        /// Emit full distance tables keyed by component representative.
        #[arg(long)]
        pairs: bool,
    },
    /// Inner automorphism group.
    Inn {
        file: String,
        /// Also compute the word norm with respect to ψ(X).
        #[arg(long)]
        norm: bool,
    },
    /// Compare the rack metric of a coset rack with the quotient word metric.
    QuotientCheck { groupspec: String },
    /// Canonical quandle quotient and its Lipschitz check.
    Extension { file: String },
    /// Betti numbers.
    Betti(CohomologyArgs),
    /// Betti numbers, invariant and complement parts, against |π0| counts.
    AmenableCheck(CohomologyArgs),
    /// Chain-level identities on random cochains and cocycles.
    Identities {
        file: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        cocycles: usize,
        #[arg(long, default_value_t = 3)]
        word_len: usize,
    },
    /// Coset-rack (Joyce) representation over the inner group.
    Joyce { file: String },
    /// Defect of f = distance to the component basepoint.
    Defect { file: String },
    /// Free quandles.
    #[command(subcommand)]
    Fq(Fq),
}

#[derive(Subcommand)]
enum Gen {
    Trivial {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    Dihedral {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    Cyclic {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    Product {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    Coset {
        groupspec: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct CohomologyArgs {
    file: String,
    #[arg(long, default_value = "rack", value_parser = parse_theory)]
    theory: Theory,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
}

fn parse_theory(s: &str) -> Result<Theory, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Clone)]
struct FqArgs {
    /// Number of free generators.
    #[arg(long, default_value_t = 2)]
    generators: usize,
    /// Search radius [default: 6 for distances, 4 otherwise].
    #[arg(long)]
    radius: Option<usize>,
    /// Moves use elements whose conjugator has at most this length.
    #[arg(long, default_value_t = FqCaps::default().conj_len)]
    conjlen: usize,
    #[arg(long, default_value_t = FqCaps::default().max_nodes)]
    max_nodes: usize,
}

impl FqArgs {
    fn caps(&self, default_radius: usize) -> FqCaps {
        FqCaps {
            radius: self.radius.unwrap_or(default_radius),
            conj_len: self.conjlen,
            max_nodes: self.max_nodes,
        }
    }
}

#[derive(Subcommand)]
enum Fq {
    /// Certified distance bracket between two elements.
    Distance {
        #[arg(long, default_value = "@x")]
        source: String,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        caps: FqArgs,
    },
    /// Ball around the basepoints.
    Ball {
        #[command(flatten)]
        caps: FqArgs,
    },
    /// The quasimorphism φ̂ along ((xy)^m, x) and its defect over a ball.
    Quasimorphism {
        #[arg(long, default_value_t = 6)]
        m: usize,
        /// Movers for the defect have conjugators up to this length.
        #[arg(long, default_value_t = 2)]
        mover_len: usize,
        #[command(flatten)]
        caps: FqArgs,
    },
}

struct Ctx {
    cap: usize,
    cochain_cap: usize,
    seed: u64,
    exec: Exec,
}

impl Ctx {
    fn limits(&self) -> Limits {
        Limits {
            cochain_cap: self.cochain_cap,
            group_cap: self.cap,
            exec: self.exec,
        }
    }
}

enum Output {
    /// A JSON report; `ok = false` marks a failed check.
    Report {
        input: Value,
        result: Value,
        ok: bool,
    },
    /// Raw text (generated rack files).
    Raw(String),
}

fn read_input(path: &str) -> rackcoh::Result<String> {
    let mut text = String::new();
    let res = if path == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn load_rack(path: &str) -> rackcoh::Result<FiniteRack> {
    parse_rack(&read_input(path)?)
}

fn describe(path: &str, rack: &FiniteRack) -> Value {
    json!({ "path": path, "size": rack.size(), "is_quandle": rack.is_quandle() })
}

fn emit(rack: &FiniteRack, format: Format) -> Output {
    Output::Raw(match format {
        Format::Json => emit_rack_json(rack),
        Format::Text => emit_rack_text(rack),
    })
}

fn int(q: &Rational) -> Value {
    if q.is_integer() {
        json!(q.to_integer().to_string().parse::<i64>().ok())
    } else {
        json!(q.to_string())
    }
}

fn run(command: Command, ctx: &Ctx) -> rackcoh::Result<Output> {
    Ok(match command {
        Command::Gen(gen) => match gen {
            Gen::Trivial { n, format } => emit(&FiniteRack::trivial(positive(n)?), format),
            Gen::Dihedral { n, format } => emit(&FiniteRack::dihedral(positive(n)?), format),
            Gen::Cyclic { n, format } => emit(&FiniteRack::cyclic(positive(n)?), format),
            Gen::Product { a, b, format } => emit(
                &FiniteRack::product(&load_rack(&a)?, &load_rack(&b)?),
                format,
            ),
            Gen::Coset { groupspec, format } => {
                let spec = parse_group_spec(&read_input(&groupspec)?)?.coset_spec(ctx.cap)?;
                emit(&coset_rack(&spec)?.rack, format)
            }
        },
        Command::Verify { file } => {
            let r = load_rack(&file)?;
            Output::Report {
                input: describe(&file, &r),
                result: json!({ "valid": true, "axioms": if r.is_quandle() { "A0 A1 A2" } else { "A0 A1" } }),
                ok: true,
            }
        }
        Command::Components { file } => {
            let r = load_rack(&file)?;
            let c = components(&r);
            let members: Vec<Vec<usize>> = (0..c.count).map(|i| c.members(i)).collect();
            Output::Report {
                input: describe(&file, &r),
                result: json!({
                    "count": c.count,
                    "component_of": c.component_of,
                    "representatives": c.representatives,
                    "members": members,
                }),
                ok: true,
            }
        }
        Command::Metric {
            file,
            diameters: _,
            pairs,
        } => {
            let r = load_rack(&file)?;
            let metric = RackMetric::new_with(&r, ctx.exec);
            let inn = inner_group_capped(&r, ctx.cap)?;
            let isometries = check_isometries(&r, &inn, ctx.exec)?;
            let mut result = json!({
                "components": metric.components.count,
                "diameters": metric.diameters(),
                "inner_automorphisms_are_isometries": isometries,
            });
            if pairs {
                let tables: serde_json::Map<String, Value> = metric
                    .tables
                    .iter()
                    .map(|t| {
                        (
                            t.representative.to_string(),
                            json!({ "members": t.members, "distances": t.distances }),
                        )
                    })
                    .collect();
                result["pairs"] = Value::Object(tables);
            }
            Output::Report {
                input: describe(&file, &r),
                result,
                ok: isometries,
            }
        }
        Command::Inn { file, norm } => {
            let r = load_rack(&file)?;
            let g = inner_group_capped(&r, ctx.cap)?;
            let mut result = json!({ "order": g.order(), "degree": g.degree() });
            if norm {
                let psi: Vec<usize> = (0..r.size())
                    .map(|x| {
                        g.index_of(&r.psi(x))
                            .expect("ψ_x generates the inner group")
                    })
                    .collect();
                let t = word_norm(&g, &psi, NormKind::ConjugationClosed)?;
                result["norm_diameter"] = json!(t.diameter());
                result["generating_set_size"] = json!(t.generating_set().len());
            }
            Output::Report {
                input: describe(&file, &r),
                result,
                ok: true,
            }
        }
        Command::QuotientCheck { groupspec } => {
            let spec = parse_group_spec(&read_input(&groupspec)?)?.coset_spec(ctx.cap)?;
            let cmp = check_metric_quotient_equality(&spec)?;
            Output::Report {
                input: json!({ "path": groupspec, "group_order": spec.group.order(), "reps": spec.reps.len() }),
                result: serde_json::to_value(&cmp).expect("serializable"),
                ok: cmp.equal,
            }
        }
        Command::Extension { file } => {
            let r = load_rack(&file)?;
            let q = canonical_quandle_quotient(&r)?;
            let lip = check_extension_lipschitz(&r)?;
            Output::Report {
                input: describe(&file, &r),
                result: json!({
                    "quotient_size": q.quandle.size(),
                    "projection": q.projection,
                    "quotient_table": q.quandle.rows(),
                    "lipschitz": lip,
                }),
                ok: lip.holds,
            }
        }
        Command::Betti(args) => {
            let r = load_rack(&args.file)?;
            let coh = Cohomology::with_limits(&r, args.theory, ctx.limits())?;
            let report = coh.verify_amenable_theorem(&args.file, args.max_degree)?;
            Output::Report {
                input: describe(&args.file, &r),
                result: serde_json::to_value(&report).expect("serializable"),
                ok: true,
            }
        }
        Command::AmenableCheck(args) => {
            let r = load_rack(&args.file)?;
            let coh = Cohomology::with_limits(&r, args.theory, ctx.limits())?;
            let report = coh.verify_amenable_theorem(&args.file, args.max_degree)?;
            let invariant_ok = report.invariant_betti == report.betti;
            let complement_ok = report.complement_betti.iter().all(|&b| b == 0);
            let verified = report.matches && invariant_ok && complement_ok;
            let mut result = serde_json::to_value(&report).expect("serializable");
            result["invariant_equals_full"] = json!(invariant_ok);
            result["complement_acyclic"] = json!(complement_ok);
            result["verified"] = json!(verified);
            Output::Report {
                input: describe(&args.file, &r),
                result,
                ok: verified,
            }
        }
        Command::Identities {
            file,
            samples,
            cocycles,
            word_len,
        } => {
            let r = load_rack(&file)?;
            let result = identities(&r, ctx, samples, cocycles, word_len)?;
            let ok = result["verified"] == json!(true);
            Output::Report {
                input: describe(&file, &r),
                result,
                ok,
            }
        }
        Command::Joyce { file } => {
            let r = load_rack(&file)?;
            let j = joyce_representation_capped(&r, ctx.cap)?;
            let reps: Vec<Value> = j
                .spec
                .reps
                .iter()
                .zip(&j.basepoints)
                .map(|(rep, &x)| {
                    json!({
                        "basepoint": x,
                        "psi": j.spec.group.element(rep.s).to_string(),
                        "stabilizer_order": rep.subgroup.order(),
                        "cosets": j.spec.group.order() / rep.subgroup.order(),
                    })
                })
                .collect();
            Output::Report {
                input: describe(&file, &r),
                result: json!({
                    "group_order": j.spec.group.order(),
                    "representatives": reps,
                    "map": j.map,
                    "isomorphism_verified": true,
                }),
                ok: true,
            }
        }
        Command::Defect { file } => {
            let r = load_rack(&file)?;
            let reps = components(&r).representatives;
            let d = delta_f_defect(&r, &reps)?;
            let holds = d <= Rational::from_integer(1.into());
            Output::Report {
                input: describe(&file, &r),
                result: json!({ "basepoints": reps, "defect": int(&d), "at_most_one": holds }),
                ok: holds,
            }
        }
        Command::Fq(fq) => run_fq(fq, ctx)?,
    })
}

fn positive(n: usize) -> rackcoh::Result<usize> {
    if n == 0 {
        Err(Error::InvalidArgument("size must be at least 1".into()))
    } else {
        Ok(n)
    }
}

fn fq_input(args: &FqArgs, caps: &FqCaps) -> Value {
    json!({
        "generators": args.generators,
        "radius": caps.radius,
        "conjlen": caps.conj_len,
        "max_nodes": caps.max_nodes,
    })
}

const BALL_RADIUS: usize = 4;

fn run_fq(fq: Fq, ctx: &Ctx) -> rackcoh::Result<Output> {
    Ok(match fq {
        Fq::Distance {
            source,
            target,
            caps: args,
        } => {
            let caps = args.caps(FqCaps::default().radius);
            let a = FQElement::parse(&source)?;
            let b = FQElement::parse(&target)?;
            let d = fq_distance_with(&a, &b, args.generators, caps, ctx.exec)?;
            let mut input = fq_input(&args, &caps);
            input["source"] = json!(a);
            input["target"] = json!(b);
            Output::Report {
                input,
                result: json!({ "lower": d.lower, "upper": d.upper, "exact": d.exact() }),
                ok: true,
            }
        }
        Fq::Ball { caps: args } => {
            let caps = args.caps(BALL_RADIUS);
            let b = ball_with(args.generators, caps, ctx.exec)?;
            let per_generator: Vec<Value> = (0..args.generators)
                .map(|g| {
                    json!({
                        "generator": FQElement::basepoint(g),
                        "size": b.elements.iter().filter(|e| e.generator() == g).count(),
                        "certified_radius": b.certified_radius(g),
                    })
                })
                .collect();
            Output::Report {
                input: fq_input(&args, &caps),
                result: json!({ "size": b.elements.len(), "components": per_generator }),
                ok: true,
            }
        }
        Fq::Quasimorphism {
            m,
            mover_len,
            caps: args,
        } => {
            let caps = args.caps(BALL_RADIUS);
            let xy = FreeWord::parse("xy")?;
            let growth: Vec<Value> = (1..=m)
                .map(|i| {
                    let a = canonical(&xy.repeat(i), 0);
                    json!({ "element": a, "hat_phi": hat_phi(&a) })
                })
                .collect();
            let sample = ball_with(args.generators, caps, ctx.exec)?.elements;
            let ms = movers(args.generators, mover_len);
            let defect = quasimorphism_defect_with(
                |a| Rational::from_integer(hat_phi(a).into()),
                &sample,
                &ms,
                ctx.exec,
            );
            let unbounded = (1..=m).all(|i| hat_phi(&canonical(&xy.repeat(i), 0)) == i as i64);
            let mut input = fq_input(&args, &caps);
            input["m"] = json!(m);
            input["mover_len"] = json!(mover_len);
            Output::Report {
                input,
                result: json!({
                    "growth": growth,
                    "linear_growth": unbounded,
                    "sample_size": sample.len(),
                    "movers": ms.len(),
                    "defect": int(&defect),
                }),
                ok: unbounded,
            }
        }
    })
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(
        rng.gen_range(-6i64..=6).into(),
        rng.gen_range(1i64..=4).into(),
    )
}

fn words_up_to(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..n).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// δ∘δ = 0, equivariance of δ, the averaging projection, and telescoping
/// primitives, all on seeded random data.
fn identities(
    r: &FiniteRack,
    ctx: &Ctx,
    samples: usize,
    cocycles: usize,
    word_len: usize,
) -> rackcoh::Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let n = r.size();
    let coh = Cohomology::with_limits(r, Theory::Rack, ctx.limits())?;
    let group = coh.inner_group()?;

    let mut dd = true;
    for k in 1..=2 {
        let m = coh
            .differential_matrix(k + 1)?
            .mul(&coh.differential_matrix(k)?)?;
        dd &= m.is_zero();
    }

    let mut equivariant = true;
    let mut projection = true;
    for i in 0..samples {
        let k = 1 + i % 2;
        let f = Cochain::from_fn(n, k, |_| random_rational(&mut rng));
        let df = f.delta(r);
        dd &= df.delta(r).is_zero();
        for alpha in group.elements() {
            equivariant &= act(r, &f, alpha)?.delta(r) == act(r, &df, alpha)?;
        }
        if i < 10 {
            let pf = coh.averaging_projection(&f)?;
            projection &= coh.averaging_projection(&pf)? == pf;
            projection &= coh.averaging_projection(&df)? == pf.delta(r);
            for g in group.generators() {
                projection &= act(r, &pf, g)? == pf;
            }
        }
    }

    let basis = kernel_basis(&coh.differential_matrix(2)?);
    let words = words_up_to(n, word_len);
    let mut primitives = true;
    let mut checked = 0usize;
    for _ in 0..cocycles {
        let mut values = vec![Rational::from_integer(0.into()); n * n];
        for v in &basis {
            let c = random_rational(&mut rng);
            for (acc, x) in values.iter_mut().zip(v) {
                *acc += &c * x;
            }
        }
        let f = Cochain::from_values(n, 2, values)?;
        for w in &words {
            let alpha = primitive_for_translation(r, &f, w)?;
            let g = w
                .iter()
                .fold(Permutation::identity(n), |g, &x| g.compose(&r.psi(x)));
            primitives &= f.sub(&act(r, &f, &g)?) == alpha.delta(r);
            checked += 1;
        }
    }
    let verified = dd && equivariant && projection && primitives;
    Ok(json!({
        "seed": ctx.seed,
        "delta_squared_zero": dd,
        "coboundary_equivariant": equivariant,
        "projection_idempotent_chain_map": projection,
        "primitives_checked": checked,
        "primitives_verified": primitives,
        "inner_group_order": group.order(),
        "verified": verified,
    }))
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Parse => 2,
        ErrorClass::Validation => 3,
        ErrorClass::Resource => 4,
        ErrorClass::Internal => 5,
    }
}

fn command_name(c: &Command) -> String {
    let name = match c {
        Command::Gen(_) => "gen",
        Command::Verify { .. } => "verify",
        Command::Components { .. } => "components",
        Command::Metric { .. } => "metric",
        Command::Inn { .. } => "inn",
        Command::QuotientCheck { .. } => "quotient-check",
        Command::Extension { .. } => "extension",
        Command::Betti(_) => "betti",
        Command::AmenableCheck(_) => "amenable-check",
        Command::Identities { .. } => "identities",
        Command::Joyce { .. } => "joyce",
        Command::Defect { .. } => "defect",
        Command::Fq(Fq::Distance { .. }) => "fq distance",
        Command::Fq(Fq::Ball { .. }) => "fq ball",
        Command::Fq(Fq::Quasimorphism { .. }) => "fq quasimorphism",
    };
    name.to_string()
}

fn write_out(path: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        cap: cli.cap,
        cochain_cap: cli.cochain_cap,
        seed: cli.seed,
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        },
    };
    let name = command_name(&cli.command);
    let start = Instant::now();
    let out = match run(cli.command, &ctx) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let (text, ok) = match out {
        Output::Raw(text) => (text, true),
        Output::Report { input, result, ok } => {
            let mut report = json!({
                "tool": "rackcoh",
                "version": env!("CARGO_PKG_VERSION"),
                "command": name,
                "input": input,
                "result": result,
                "ok": ok,
            });
            if cli.timing {
                report["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1000.0);
            }
            let mut text = serde_json::to_string_pretty(&report).expect("serializable");
            text.push('\n');
            (text, ok)
        }
    };
    if let Err(e) = write_out(cli.json.as_ref(), &text) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(5);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
