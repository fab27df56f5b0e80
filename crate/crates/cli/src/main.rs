use clap::{Parser, Subcommand};
use num::Zero;
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use torelli::dgn;
use torelli::lattice::CoefficientRing;
use torelli::obstruction::{self, GaloisProfile};
use torelli::scalar::{format_rat, parse_rat, Rat};
use torelli::SymplecticSpace;
use torelli_cli::config::Config;
use torelli_cli::exit_codes;
use torelli_cli::export;
use torelli_cli::verify::{self, SuiteError, SuiteParams};

#[derive(Parser)]
#[command(
    name = "torelli",
    about = "Exact calculator for symplectic characters, graded Lie quotients, section spaces and their obstructions",
    version
)]
struct Cli {
    /// emit canonical JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// TOML config file (g bounds, degree guards, seed)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// override the configured RNG seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose a character expression into irreducibles
    Decompose {
        #[arg(long)]
        g: usize,
        /// e.g. "wedge2(L30H)", "tensor(H, L30H)", "grp_4"
        input: String,
    },
    /// Lyndon basis counts and graded quotient data
    FreeLie {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        degree: usize,
        /// also emit the quotient coordinate matrices
        #[arg(long)]
        basis: bool,
    },
    /// Calibrate the equivariant projections and print the scalars
    Johnson {
        #[arg(long)]
        g: usize,
    },
    /// Classify the invariant sections and test integrality
    Sections {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        /// coefficient ring: "z", "z_loc=2,3" (localized), "z_inv=2" (inverted)
        #[arg(long, default_value = "z_loc=2")]
        ring: String,
    },
    /// Evaluate the connecting map at a rational point
    Delta {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        /// comma-separated rationals, e.g. "1/2,0,1"
        #[arg(long, default_value = "")]
        a: String,
    },
    /// List the zero fiber of the connecting map
    Fiber {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
    },
    /// Section-space profile over a Galois input file
    Profile {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        /// JSON file {"chi_infinite": true, "h1": {"3": 1, ...}}
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        r_max: usize,
    },
    /// Branched cover genus and locus codimension
    Rh {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        prime: u32,
        #[arg(long, default_value_t = 0)]
        branch_points: u32,
    },
    /// Run a verification suite ("all" runs every suite)
    Verify {
        suite: String,
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match Config::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(exit_codes::USAGE as u8);
        }
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    match run(&cli, &cfg) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("{msg}");
            ExitCode::from(exit_codes::USAGE as u8)
        }
    }
}

fn space_checked(g: usize, cfg: &Config) -> Result<SymplecticSpace, String> {
    if g > cfg.g_max {
        return Err(format!(
            "g = {g} exceeds the configured bound {}",
            cfg.g_max
        ));
    }
    SymplecticSpace::new(g).map_err(|e| e.to_string())
}

fn parse_ring(s: &str) -> Result<CoefficientRing, String> {
    let parse_primes = |list: &str| -> Result<Vec<u64>, String> {
        list.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("bad prime '{p}'"))
            })
            .collect()
    };
    if s == "z" || s == "Z" {
        Ok(CoefficientRing::integers())
    } else if let Some(rest) = s.strip_prefix("z_loc=") {
        Ok(CoefficientRing::local_at(&parse_primes(rest)?))
    } else if let Some(rest) = s.strip_prefix("z_inv=") {
        Ok(CoefficientRing::inverting(&parse_primes(rest)?))
    } else {
        Err(format!(
            "unknown ring '{s}' (use z, z_loc=<p,..>, z_inv=<p,..>)"
        ))
    }
}

fn emit(json_mode: bool, value: Value, human: String) {
    if json_mode {
        println!("{}", export::to_string_pretty(&value));
    } else {
        println!("{human}");
    }
}

fn run(cli: &Cli, cfg: &Config) -> Result<i32, String> {
    match &cli.cmd {
        Cmd::Decompose { g, input } => {
            let sp = space_checked(*g, cfg)?;
            let chi = torelli_cli::expr::parse(sp, input)?;
            let dec = chi.decompose().map_err(|e| e.to_string())?;
            let value = export::decomposition_value(*g, input, &dec, chi.motivic_weight());
            let human = {
                let mut s = format!("g={g} {input}: dim {}\n", chi.dim());
                for (p, m) in &dec {
                    s.push_str(&format!(
                        "  {p} x{m} (dim {})\n",
                        torelli::character::irrep_dimension_i64(p, *g).unwrap()
                    ));
                }
                s
            };
            emit(cli.json, value, human);
            Ok(exit_codes::PASS)
        }
        Cmd::FreeLie { g, degree, basis } => {
            let sp = space_checked(*g, cfg)?;
            if *degree == 0 || *degree > cfg.degree_max {
                return Err(format!("degree must be in 1..={}", cfg.degree_max));
            }
            let mut lab = torelli::freelie::Labute::new(sp);
            let piece = match lab.graded_piece(*degree) {
                Ok(p) => p,
                Err(torelli::freelie::LieError::ResourceGuard { .. }) => {
                    eprintln!("resource guard exceeded");
                    return Ok(exit_codes::RESOURCE_GUARD);
                }
                Err(e) => return Err(e.to_string()),
            };
            let chi = torelli::freelie::graded_p_character(sp, *degree, Some(&mut lab))
                .map_err(|e| e.to_string())?;
            let dec = chi.decompose().map_err(|e| e.to_string())?;
            let mut fields = Map::new();
            fields.insert("g".into(), json!(g));
            fields.insert("degree".into(), json!(degree));
            fields.insert("free_dim".into(), json!(piece.lie_dim));
            fields.insert("ideal_rank".into(), json!(piece.ideal_rank));
            fields.insert(
                "quotient_dim".into(),
                json!(piece.lie_dim - piece.ideal_rank),
            );
            fields.insert(
                "decomposition".into(),
                export::decomposition_value(
                    *g,
                    &format!("grp_{degree}"),
                    &dec,
                    chi.motivic_weight(),
                ),
            );
            if *basis {
                let words: Vec<String> = piece
                    .lyndon_words
                    .iter()
                    .map(|w| {
                        w.iter()
                            .map(|l| sp.letter_name(*l))
                            .collect::<Vec<_>>()
                            .join("")
                    })
                    .collect();
                fields.insert("lyndon_words".into(), json!(words));
                let rows: Vec<Value> = piece
                    .ideal_rows
                    .iter()
                    .map(|r| export::rats_value(r))
                    .collect();
                fields.insert("ideal_rows".into(), Value::Array(rows));
                fields.insert("quotient_basis".into(), json!(piece.quotient_basis));
            }
            let human = format!(
                "g={g} degree {degree}: free dim {}, ideal rank {}, quotient dim {}\n{}",
                piece.lie_dim,
                piece.ideal_rank,
                piece.lie_dim - piece.ideal_rank,
                dec.iter()
                    .map(|(p, m)| format!("  {p} x{m}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            );
            emit(cli.json, export::document("free-lie", fields), human);
            Ok(exit_codes::PASS)
        }
        Cmd::Johnson { g } => {
            let sp = space_checked(*g, cfg)?;
            let cal = torelli::Calibration::get(sp).map_err(|e| e.to_string())?;
            let report = cal.report();
            let value = {
                let mut fields = Map::new();
                fields.insert(
                    "calibration".into(),
                    serde_json::to_value(&report).expect("serializable"),
                );
                export::document("johnson-calibration", fields)
            };
            let human = format!(
                "g={g}: lambda_c = {}, lambda_d = {}, lambda_e = {}, c present: {}, pairs verified: {}",
                report.lambda_c, report.lambda_d, report.lambda_e, report.c_hom_dim, report.pairs_verified
            );
            emit(cli.json, value, human);
            Ok(exit_codes::PASS)
        }
        Cmd::Sections { g, n, ring } => {
            let sp = space_checked(*g, cfg)?;
            let ring = parse_ring(ring)?;
            let sections = dgn::solve_sections(sp, *n).map_err(|e| e.to_string())?;
            // the new trivector the section attaches to the first diagonal
            // lattice generator, in canonical element text; this is where
            // the genus-3 denominator becomes visible
            let sample = |s: &dgn::SectionCandidate| -> Result<String, String> {
                let w =
                    torelli::tensor::TensorElement::basis_wedge(sp, &[0, sp.genus() as u8, 1], 0);
                let lift = w.split_lambda3().map_err(|e| e.to_string())?;
                let mut total = Rat::zero();
                for a in &s.a {
                    total += a;
                }
                let mut u0 = lift.scale(&(torelli::scalar::rint(1) - &total));
                for a in &s.a {
                    u0 = u0.add(&w.scale(a)).map_err(|e| e.to_string())?;
                }
                Ok(u0.to_text())
            };
            let mut rows = Vec::new();
            let mut human = format!("g={g} n={n}: {} section(s)\n", sections.len());
            for s in &sections {
                let ok = dgn::integral_section_check(sp, *n, s, ring.clone())
                    .map_err(|e| e.to_string())?;
                let label = match s.label {
                    dgn::SectionLabel::Tautological(j) => format!("s_{j}"),
                    dgn::SectionLabel::Zeta => "zeta".into(),
                    dgn::SectionLabel::Other => "other".into(),
                };
                let image = sample(s)?;
                let mut m = Map::new();
                m.insert("a".into(), export::rats_value(&s.a));
                m.insert("t".into(), export::rats_value(&s.t));
                m.insert("label".into(), json!(label));
                let mut integral = Map::new();
                integral.insert("ring".into(), json!(ring.describe()));
                integral.insert("ok".into(), json!(ok));
                m.insert("integral".into(), Value::Object(integral));
                m.insert("image_of_first_generator".into(), json!(image));
                rows.push(Value::Object(m));
                human.push_str(&format!(
                    "  {label}: a = ({}), integral over {}: {}\n    new slot on the first generator: {}\n",
                    s.a.iter().map(format_rat).collect::<Vec<_>>().join(", "),
                    ring.describe(),
                    ok,
                    image
                ));
            }
            let mut fields = Map::new();
            fields.insert("g".into(), json!(g));
            fields.insert("n".into(), json!(n));
            fields.insert("sections".into(), Value::Array(rows));
            emit(cli.json, export::document("sections", fields), human);
            Ok(exit_codes::PASS)
        }
        Cmd::Delta { g, n, a } => {
            let _ = space_checked(*g, cfg)?;
            let avec: Vec<Rat> = if a.is_empty() {
                Vec::new()
            } else {
                a.split(',')
                    .map(|s| parse_rat(s).ok_or_else(|| format!("bad rational '{s}'")))
                    .collect::<Result<_, _>>()?
            };
            if avec.len() != *n {
                return Err(format!("expected {n} coefficients, got {}", avec.len()));
            }
            let (class, warn) = obstruction::delta_map(*g, *n, &avec).map_err(|e| e.to_string())?;
            let mut fields = Map::new();
            fields.insert("g".into(), json!(g));
            fields.insert("n".into(), json!(n));
            fields.insert("a".into(), export::rats_value(&avec));
            fields.insert("class".into(), export::numeric_class_value(&class));
            fields.insert(
                "point".into(),
                json!(format!("sum_j a_j kappa_j / {}", 2 * g - 2)),
            );
            fields.insert("formal_below_genus_5".into(), json!(warn));
            let human = format!(
                "delta at a = ({}): c = {}, e = ({}), zero: {}{}",
                avec.iter().map(format_rat).collect::<Vec<_>>().join(", "),
                format_rat(&class.c),
                class
                    .e
                    .iter()
                    .map(format_rat)
                    .collect::<Vec<_>>()
                    .join(", "),
                class.is_zero(),
                if warn { "  [formal: g < 5]" } else { "" }
            );
            emit(cli.json, export::document("delta", fields), human);
            Ok(exit_codes::PASS)
        }
        Cmd::Fiber { g, n } => {
            let _ = space_checked(*g, cfg)?;
            let (fiber, warn) = obstruction::delta_zero_fiber(*g, *n).map_err(|e| e.to_string())?;
            let mut fields = Map::new();
            fields.insert("g".into(), json!(g));
            fields.insert("n".into(), json!(n));
            fields.insert(
                "solutions".into(),
                Value::Array(fiber.iter().map(|a| export::rats_value(a)).collect()),
            );
            fields.insert("formal_below_genus_5".into(), json!(warn));
            let human = format!(
                "zero fiber (g={g}, n={n}): {}",
                if fiber.is_empty() {
                    "empty".to_string()
                } else {
                    fiber
                        .iter()
                        .map(|a| {
                            format!(
                                "({})",
                                a.iter().map(format_rat).collect::<Vec<_>>().join(",")
                            )
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            );
            emit(cli.json, export::document("fiber", fields), human);
            Ok(exit_codes::PASS)
        }
        Cmd::Profile {
            g,
            n,
            profile,
            r_max,
        } => {
            let sp = space_checked(*g, cfg)?;
            let prof: GaloisProfile = match profile {
                None => GaloisProfile::opaque(),
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                    serde_json::from_str(&text).map_err(|e| format!("bad profile: {e}"))?
                }
            };
            let (rows, warn) = obstruction::section_space_profile(sp, *n, *r_max, &prof)
                .map_err(|e| e.to_string())?;
            let mut fields = Map::new();
            fields.insert("g".into(), json!(g));
            fields.insert("n".into(), json!(n));
            fields.insert("chi_infinite".into(), json!(prof.chi_infinite));
            fields.insert(
                "levels".into(),
                Value::Array(rows.iter().map(export::profile_row_value).collect()),
            );
            fields.insert("formal_below_genus_5".into(), json!(warn));
            let mut human = format!("section spaces for g={g}, n={n}:\n");
            for row in &rows {
                human.push_str(&format!(
                    "  r={}: {}\n",
                    row.r,
                    match &row.kind {
                        obstruction::SectionSpaceKind::Affine { dim } =>
                            format!("affine {dim}-space"),
                        obstruction::SectionSpaceKind::Points { count } =>
                            format!("{count} tautological point(s)"),
                        obstruction::SectionSpaceKind::PointsTimesTorsor {
                            count,
                            t,
                            torsor_dim,
                        } => format!("{count} point(s) x torsor at t={t} of dim {torsor_dim:?}"),
                    }
                ));
            }
            emit(cli.json, export::document("profile", fields), human);
            Ok(exit_codes::PASS)
        }
        Cmd::Rh {
            g,
            prime,
            branch_points,
        } => match torelli_cli::rh::branched_cover_genus(*g, *prime, *branch_points) {
            Ok(r) => {
                let mut fields = Map::new();
                fields.insert("g".into(), json!(r.g));
                fields.insert("p".into(), json!(r.p));
                fields.insert("a".into(), json!(r.branch_points));
                fields.insert("quotient_genus".into(), json!(r.quotient_genus));
                fields.insert("codim".into(), export::rat_value(&r.codim));
                let human = format!(
                    "quotient genus h = {}, locus codimension = {}",
                    r.quotient_genus,
                    format_rat(&r.codim)
                );
                emit(cli.json, export::document("rh", fields), human);
                Ok(exit_codes::PASS)
            }
            Err(e) => Err(e.to_string()),
        },
        Cmd::Verify { suite, g, n } => {
            let params = SuiteParams { g: *g, n: *n };
            let ids: Vec<&str> = if suite == "all" {
                verify::suite_ids().to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut all_pass = true;
            let mut reports = Vec::new();
            for id in ids {
                match verify::run_suite(id, cfg, params) {
                    Ok(rep) => {
                        all_pass &= rep.pass();
                        if !cli.json {
                            print!("{}", rep.human());
                        }
                        reports.push(rep.to_json());
                    }
                    Err(SuiteError::UnknownSuite(s)) => {
                        return Err(format!(
                            "unknown suite '{s}'; available: {}",
                            verify::suite_ids().join(", ")
                        ));
                    }
                    Err(SuiteError::ResourceGuard(msg)) => {
                        eprintln!("resource guard exceeded in suite {id}: {msg}");
                        return Ok(exit_codes::RESOURCE_GUARD);
                    }
                    Err(SuiteError::Internal(msg)) => {
                        return Err(format!("suite {id} failed to run: {msg}"));
                    }
                }
            }
            if cli.json {
                let doc = export::document("verify", {
                    let mut m = Map::new();
                    m.insert("reports".into(), Value::Array(reports));
                    m.insert("pass".into(), json!(all_pass));
                    m
                });
                println!("{}", export::to_string_pretty(&doc));
            }
            Ok(if all_pass {
                exit_codes::PASS
            } else {
                exit_codes::VERIFICATION_FAILURE
            })
        }
    }
}
