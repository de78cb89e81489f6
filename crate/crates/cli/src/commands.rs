use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use aniso_core::acceptance;
use aniso_core::algebra::probe::ProbeQ;
use aniso_core::algebra::text::ratfunc_to_text;
use aniso_core::algebra::{Gf2k, Rational, Scalar, F101, F2, F3, F65521};
use aniso_core::certify::{
    aniso_char2_certificate, aniso_random_probe, degree_argument_experiment, diffop_experiment, diffop_fixture,
    identity_suite, lefschetz_check, suspension_experiment, verify_certificate, CertStatus, Certificate,
};
use aniso_core::complex::{
    boundary_simplex, cross_polytope, cyclic_polytope_boundary, is_homology_ball, is_homology_sphere, octahedron,
    reduced_betti, rp2, stacked_sphere, SimplicialComplex,
};
use aniso_core::corpus;
use aniso_core::lsop::{generic_lsop, normalized_lsop, LsopMatrix};
use aniso_core::moves::{random_walk, reduce_to_boundary_simplex, valid_moves};
use aniso_core::reduction::{pairing_matrix, select_basis, BasisRequest, Mode, PsiContext, VMono};
use aniso_core::algebra::MultiPoly;
use aniso_core::Error;

use crate::io::{emit, parse_faces, read_complex};
use crate::{AnisoAction, Cli, Command, CorpusAction, GenKind, LsopChoice, ModeArg, MovesAction, RunConfig, Suite};

const INCONCLUSIVE: u8 = 2;

/// Binds `$f` to the symbolic coefficient field and `$e` to the field of
/// random specializations for the configured characteristic.
macro_rules! with_fields {
    ($cfg:expr, |$f:ident, $e:ident| $body:block) => {{
        match $cfg.characteristic {
            0 => {
                type $f = Rational;
                #[allow(dead_code)]
                type $e = ProbeQ;
                $body
            }
            2 => with_bits!($cfg.field_bits, |BITS| {
                type $f = F2;
                #[allow(dead_code)]
                type $e = Gf2k<BITS>;
                $body
            }),
            3 => {
                type $f = F3;
                #[allow(dead_code)]
                type $e = F3;
                $body
            }
            101 => {
                type $f = F101;
                #[allow(dead_code)]
                type $e = F101;
                $body
            }
            65521 => {
                type $f = F65521;
                #[allow(dead_code)]
                type $e = F65521;
                $body
            }
            p => bail!("unsupported characteristic {p}; use 0, 2, 3, 101 or 65521"),
        }
    }};
}

macro_rules! with_bits {
    ($bits:expr, |$k:ident| $body:block) => {{
        match $bits {
            16 => {
                #[allow(dead_code)]
                const $k: u32 = 16;
                $body
            }
            20 => {
                #[allow(dead_code)]
                const $k: u32 = 20;
                $body
            }
            24 => {
                #[allow(dead_code)]
                const $k: u32 = 24;
                $body
            }
            32 => {
                #[allow(dead_code)]
                const $k: u32 = 32;
                $body
            }
            40 => {
                #[allow(dead_code)]
                const $k: u32 = 40;
                $body
            }
            48 => {
                #[allow(dead_code)]
                const $k: u32 = 48;
                $body
            }
            56 => {
                #[allow(dead_code)]
                const $k: u32 = 56;
                $body
            }
            63 => {
                #[allow(dead_code)]
                const $k: u32 = 63;
                $body
            }
            b => bail!("unsupported --field-bits {b}; use one of 16, 20, 24, 32, 40, 48, 56, 63"),
        }
    }};
}

pub fn run(cli: &Cli) -> Result<u8> {
    let cfg = &cli.cfg;
    match &cli.cmd {
        Command::Gen { kind } => {
            let k = generate(kind)?;
            emit(cfg, &serde_json::to_value(k.to_json())?)?;
            Ok(0)
        }
        Command::Inspect => {
            let k = read_complex(cfg)?;
            let fh = k.fh_vectors()?;
            emit(
                cfg,
                &json!({
                    "v": 1,
                    "complex": k.canonical_hash(),
                    "m": k.m(),
                    "d": k.d(),
                    "dim": k.dim(),
                    "facets": k.facets().len(),
                    "pure": k.is_pure(),
                    "f": fh.f,
                    "h": fh.h,
                }),
            )?;
            Ok(0)
        }
        Command::Homology => {
            let k = read_complex(cfg)?;
            let p = cfg.characteristic;
            emit(
                cfg,
                &json!({
                    "v": 1,
                    "complex": k.canonical_hash(),
                    "char": p,
                    "reduced_betti": reduced_betti(&k, p),
                    "homology_sphere": is_homology_sphere(&k, p)?,
                    "homology_ball": is_homology_ball(&k, p)?,
                }),
            )?;
            Ok(0)
        }
        Command::Moves { action } => moves(cfg, action),
        Command::Psi { monomial, lsop, mode } => {
            let k = read_complex(cfg)?;
            let mono = parse_monomial(monomial)?;
            let mode = match mode {
                ModeArg::Sphere => Mode::Sphere,
                ModeArg::Ball => Mode::Ball,
            };
            let value = with_fields!(cfg, |F, E| {
                let ctx = PsiContext::<F>::new(&k, build_lsop::<F>(&k, *lsop)?, mode)?;
                json!({
                    "v": 1,
                    "complex": k.canonical_hash(),
                    "char": cfg.characteristic,
                    "lsop": ctx.lsop().to_json(),
                    "monomial": monomial,
                    "value": ratfunc_to_text(&ctx.psi_monomial(&mono)?),
                })
            });
            emit(cfg, &value)?;
            Ok(0)
        }
        Command::Pairing { degree, lsop } => {
            let k = read_complex(cfg)?;
            let i = *degree;
            if i > k.d() {
                return Err(Error::DegreeOutOfRange(i).into());
            }
            let value = with_fields!(cfg, |F, E| {
                let ctx = PsiContext::<F>::sphere(&k, build_lsop::<F>(&k, *lsop)?)?;
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                let rows = select_basis::<F, E, _>(&ctx, &BasisRequest::new(i), &mut rng)?;
                let cols = select_basis::<F, E, _>(&ctx, &BasisRequest::new(k.d() - i), &mut rng)?;
                let pm = pairing_matrix(&ctx, &rows.faces, &cols.faces)?;
                json!({
                    "v": 1,
                    "complex": k.canonical_hash(),
                    "char": cfg.characteristic,
                    "seed": cfg.seed,
                    "error_bound": "none: bases are witnessed by nonzero minors",
                    "rows": faces(&pm.rows),
                    "cols": faces(&pm.cols),
                    "entries": pm.to_text_grid(),
                })
            });
            emit(cfg, &value)?;
            Ok(0)
        }
        Command::Basis { degree, lsop } => {
            let k = read_complex(cfg)?;
            let must = match &cfg.must_include {
                Some(s) => parse_faces(s)?,
                None => Vec::new(),
            };
            let (value, complete) = with_fields!(cfg, |F, E| {
                let ctx = PsiContext::<F>::sphere(&k, build_lsop::<F>(&k, *lsop)?)?;
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                let mut req = BasisRequest::new(*degree);
                req.must_include = must.clone();
                let b = select_basis::<F, E, _>(&ctx, &req, &mut rng)?;
                let complete = b.is_complete();
                (
                    json!({
                        "v": 1,
                        "complex": k.canonical_hash(),
                        "char": cfg.characteristic,
                        "seed": cfg.seed,
                        "error_bound": "none: the witness minor is exact",
                        "degree": b.degree,
                        "h": b.expected,
                        "complete": complete,
                        "faces": faces(&b.faces),
                        "witness": b.witness,
                    }),
                    complete,
                )
            });
            emit(cfg, &value)?;
            Ok(if complete { 0 } else { INCONCLUSIVE })
        }
        Command::Aniso { action } => aniso(cfg, action),
        Command::Lefschetz => {
            let k = read_complex(cfg)?;
            let report = with_fields!(cfg, |F, E| { lefschetz_check::<F, E>(&k, cfg.seed)? });
            let holds = report.holds;
            let mut v = serde_json::to_value(&report)?;
            annotate(&mut v, cfg.seed, "one-sided: full ranks are exact, a rank drop may be an unlucky point");
            emit(cfg, &v)?;
            Ok(if holds { 0 } else { INCONCLUSIVE })
        }
        Command::Reproduce { suite } => reproduce(cfg, *suite),
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                let list: Vec<Value> = corpus::spheres()?
                    .into_iter()
                    .map(|(name, k)| json!({"name": name, "complex": k.canonical_hash(), "m": k.m(), "d": k.d()}))
                    .collect();
                emit(cfg, &json!({"v": 1, "complexes": list}))?;
                Ok(0)
            }
            CorpusAction::Run => {
                let mut results = Vec::new();
                for id in 1..=10 {
                    let r = acceptance::run_criterion(id);
                    eprintln!("{}", r.line());
                    results.push(r);
                }
                let passed = results.iter().all(|r| r.passed);
                emit(cfg, &json!({"v": 1, "passed": passed, "criteria": results}))?;
                Ok(if passed { 0 } else { 1 })
            }
        },
    }
}

fn generate(kind: &GenKind) -> Result<SimplicialComplex> {
    Ok(match *kind {
        GenKind::BoundarySimplex { d } => boundary_simplex(d)?,
        GenKind::CrossPolytope { n } => cross_polytope(n)?,
        GenKind::Octahedron => octahedron(),
        GenKind::Cyclic { d, m } => cyclic_polytope_boundary(d, m)?,
        GenKind::Stacked { d, k, seed } => stacked_sphere(d, k, seed)?,
        GenKind::Rp2 => rp2(),
    })
}

fn build_lsop<F: Scalar>(k: &SimplicialComplex, choice: LsopChoice) -> Result<LsopMatrix<MultiPoly<F>>> {
    Ok(match choice {
        LsopChoice::Generic => generic_lsop::<F>(k),
        LsopChoice::Normalized => normalized_lsop::<F>(k, None)?,
    })
}

/// `"1^2,3"` is `x_1² x_3`.
fn parse_monomial(s: &str) -> Result<VMono> {
    let mut pairs = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (v, e) = match tok.split_once('^') {
            Some((v, e)) => (v, e.parse::<u32>().with_context(|| format!("bad exponent in {tok:?}"))?),
            None => (tok, 1),
        };
        pairs.push((v.parse::<usize>().with_context(|| format!("bad vertex in {tok:?}"))?, e));
    }
    Ok(VMono::new(pairs))
}

fn faces(fs: &[aniso_core::complex::Face]) -> Vec<Vec<usize>> {
    fs.iter().map(|f| f.vertices().to_vec()).collect()
}

fn annotate(v: &mut Value, seed: u64, bound: &str) {
    if let Value::Object(map) = v {
        map.insert("v".into(), json!(1));
        map.insert("seed".into(), json!(seed));
        map.insert("error_bound".into(), json!(bound));
    }
}

fn moves(cfg: &RunConfig, action: &MovesAction) -> Result<u8> {
    let k = read_complex(cfg)?;
    match action {
        MovesAction::List => {
            let mv = valid_moves(&k)?;
            emit(cfg, &json!({"v": 1, "complex": k.canonical_hash(), "count": mv.len(), "moves": mv}))?;
            Ok(0)
        }
        MovesAction::Walk { steps, vertex_cap } => {
            let (end, log) = random_walk(&k, *steps, cfg.seed, *vertex_cap)?;
            emit(cfg, &json!({"v": 1, "seed": cfg.seed, "log": log, "complex_json": end.to_json()}))?;
            Ok(0)
        }
        MovesAction::Reduce => match reduce_to_boundary_simplex(&k, cfg.budget, cfg.seed) {
            Ok(log) => {
                emit(cfg, &json!({"v": 1, "seed": cfg.seed, "budget": cfg.budget, "reached": true, "log": log}))?;
                Ok(0)
            }
            Err(Error::BudgetExhausted) => {
                emit(cfg, &json!({"v": 1, "seed": cfg.seed, "budget": cfg.budget, "reached": false}))?;
                Ok(INCONCLUSIVE)
            }
            Err(e) => Err(e.into()),
        },
    }
}

fn aniso(cfg: &RunConfig, action: &AnisoAction) -> Result<u8> {
    let k = read_complex(cfg)?;
    match action {
        AnisoAction::Cert => {
            if !is_homology_sphere(&k, cfg.characteristic)? {
                return Err(Error::NotHomologySphere.into());
            }
            if cfg.characteristic != 2 {
                bail!("exact certification is only available in characteristic 2; use `aniso probe`");
            }
            let cert = with_bits!(cfg.field_bits, |K| { aniso_char2_certificate::<K>(&k, cfg.seed)? });
            let v: Value = serde_json::from_str(&cert.to_json())?;
            emit(cfg, &v)?;
            Ok(if cert.status == CertStatus::Inconclusive { INCONCLUSIVE } else { 0 })
        }
        AnisoAction::Verify { cert } => {
            let text = std::fs::read_to_string(cert).with_context(|| format!("reading {}", cert.display()))?;
            let c: Certificate = serde_json::from_str(&text).context("not a certificate")?;
            let ok = with_bits!(c.field_bits, |K| { verify_certificate::<K>(&k, &c)? });
            emit(cfg, &json!({"v": 1, "complex": k.canonical_hash(), "status": c.status, "valid": ok}))?;
            Ok(if ok { 0 } else { 1 })
        }
        AnisoAction::Probe => {
            let report = with_fields!(cfg, |F, E| { aniso_random_probe::<F, E>(&k, cfg.trials, cfg.seed)? });
            let mut v = serde_json::to_value(&report)?;
            if let Value::Object(map) = &mut v {
                map.insert("verdict".into(), json!(report.verdict()));
            }
            annotate(&mut v, cfg.seed, "one-sided: every reported isotropic vector is confirmed symbolically");
            emit(cfg, &v)?;
            Ok(0)
        }
    }
}

fn reproduce(cfg: &RunConfig, suite: Suite) -> Result<u8> {
    let (v, ok) = match suite {
        Suite::Identities => {
            let checks = identity_suite()?;
            let ok = checks.iter().all(|c| c.holds);
            (json!({"v": 1, "suite": "identities", "passed": ok, "checks": checks}), ok)
        }
        Suite::Diffop => {
            let r = diffop_experiment(&diffop_fixture(), 1, 2, cfg.seed)?;
            (json!({"v": 1, "suite": "diffop", "seed": cfg.seed, "passed": r.holds, "report": r}), r.holds)
        }
        Suite::Degree => {
            let r = degree_argument_experiment(&octahedron(), cfg.seed)?;
            (json!({"v": 1, "suite": "degree", "seed": cfg.seed, "passed": r.holds, "report": r}), r.holds)
        }
        Suite::Suspension => {
            let r = suspension_experiment(&octahedron(), cfg.seed)?;
            (json!({"v": 1, "suite": "suspension", "seed": cfg.seed, "passed": r.holds, "report": r}), r.holds)
        }
    };
    emit(cfg, &v)?;
    if ok {
        Ok(0)
    } else {
        Err(anyhow!("suite {suite:?} failed"))
    }
}
