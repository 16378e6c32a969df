//! Command execution and the JSON report.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use skewci_core::coeff::{Field, RatFunc, Rational};
use skewci_core::conditions::{
    check_conditions, ConditionOptions, ConditionReport, IvMethod, Side, Status, Verdict,
};
use skewci_core::freealg::{MonomialOrder, NCPoly};
use skewci_core::geometry::{Annihilation, PointSequence, ProbeOptions};
use skewci_core::gsca::{
    build_gsca_relations, central_y_relations, certify_regular, eliminate_y, NotRegularReason,
    Regularity,
};
use skewci_core::rewrite::{
    classify_growth, complete_truncated, hilbert_function, GrowthKind, Presentation, RewriteSystem,
};
use skewci_core::skew::{
    base_point_free, is_normalizing_sequence, BasePointVerdict, NormalityReport, QuadricSystem,
};

use crate::manifest::{compile, Command, Compiled, Convert, FieldChoice, Manifest, ManifestError};

pub const SCHEMA_VERSION: u32 = 1;

/// Command-line settings that take precedence over the manifest.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub max_degree: Option<usize>,
    pub seed: Option<u64>,
    pub primes: Option<Vec<u64>>,
}

pub struct Outcome {
    pub report: Value,
    /// 0 on completion, 3 when a consistency alarm fired.
    pub exit_code: i32,
}

/// Runs every command of a validated manifest. `text` is the manifest
/// source, hashed into the report.
pub fn run_manifest(m: &Manifest, text: &str, ov: &Overrides) -> Result<Outcome, ManifestError> {
    match m.field_choice()? {
        FieldChoice::Rational => run_typed::<Rational>(m, text, ov, &|c: &RatFunc| c.to_rational()),
        FieldChoice::Specialized(v) => {
            run_typed::<Rational>(m, text, ov, &|c: &RatFunc| c.eval(&v))
        }
        FieldChoice::Generic => run_typed::<RatFunc>(m, text, ov, &|c: &RatFunc| Some(c.clone())),
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

struct Ctx<'a, F: Field> {
    c: &'a Compiled<F>,
    degree: usize,
    probe: ProbeOptions,
    ambient_skew: bool,
    families_exhaustive: bool,
    reduce_text: &'a [String],
    conditions: Option<Result<ConditionReport<F>, String>>,
}

impl<F: Field> Ctx<'_, F> {
    fn poly(&self, f: &NCPoly<F>) -> String {
        f.display_with(&self.c.names, &self.c.order)
    }

    fn z_poly(&self, f: &NCPoly<F>) -> String {
        let n = self.c.names.len();
        let z: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
        f.display_with(&z, &MonomialOrder::natural(n))
    }

    fn presentation(&self) -> Result<&Presentation<F>, String> {
        self.c.presentation.as_ref().map_err(Clone::clone)
    }

    fn system(&self) -> Result<RewriteSystem<F>, String> {
        let p = self.presentation()?;
        complete_truncated(p, self.degree, &self.c.order).map_err(|e| e.to_string())
    }
}

fn run_typed<F: Field>(
    m: &Manifest,
    text: &str,
    ov: &Overrides,
    conv: Convert<F>,
) -> Result<Outcome, ManifestError> {
    let c = compile(m, conv)?;
    let needed = c
        .sequence
        .iter()
        .map(|f| f.max_degree() + 1)
        .chain(c.presentation.as_ref().ok().map(Presentation::max_degree))
        .max()
        .unwrap_or(2);
    let degree = ov
        .max_degree
        .or(m.options.max_degree)
        .unwrap_or_else(|| {
            c.presentation
                .as_ref()
                .map_or(12, Presentation::default_truncation)
        })
        .max(needed);
    let mut probe = ProbeOptions::default();
    if let Some(p) = ov.primes.clone().or_else(|| m.options.primes.clone()) {
        probe.primes = p;
    }
    if let Some(s) = ov.seed.or(m.options.seed) {
        probe.seed = s;
    }
    if let Some(t) = m.options.trials {
        probe.trials = t;
    }
    if let Some(q) = m.options.q_image {
        probe.q_image = q;
    }
    let mut ctx = Ctx {
        c: &c,
        degree,
        probe,
        ambient_skew: m.ambient_skew,
        families_exhaustive: m.families_exhaustive,
        reduce_text: &m.reduce,
        conditions: None,
    };
    let mut commands = m.commands.clone();
    commands.sort();
    commands.dedup();
    let mut results = Vec::new();
    let mut alarms: Vec<String> = Vec::new();
    for cmd in commands {
        let body = match cmd {
            Command::Validate => Ok(json!({"status": "valid"})),
            Command::Gsca => gsca(&ctx),
            Command::CertifyRegular => certify(&ctx),
            Command::Hilbert => hilbert(&ctx),
            Command::Growth => growth(&ctx),
            Command::Normalizing => normalizing(&ctx),
            Command::BasePointFree => bpf(&ctx),
            Command::NormalForm => normal_forms(&ctx),
            Command::Conditions => {
                ensure_conditions(&mut ctx);
                cached(&ctx).map(|r| render_conditions(&ctx, r))
            }
            Command::CiVerdict => {
                ensure_conditions(&mut ctx);
                cached(&ctx).map(|r| {
                    json!({
                        "verdict": verdict_name(r.verdict),
                        "iv_required": r.iv_required,
                        "alarms": r.alarms,
                    })
                })
            }
        };
        let mut entry = serde_json::Map::new();
        entry.insert("command".into(), json!(cmd.name()));
        match body {
            Ok(Value::Object(obj)) => entry.extend(obj),
            Ok(v) => {
                entry.insert("result".into(), v);
            }
            Err(e) => {
                entry.insert("error".into(), json!(e));
            }
        }
        results.push(Value::Object(entry));
    }
    if let Some(Ok(r)) = &ctx.conditions {
        alarms.extend(r.alarms.iter().cloned());
    }
    let exit_code = if alarms.is_empty() { 0 } else { 3 };
    let algebra = match &c.presentation {
        Ok(p) => json!({
            "generators": c.names,
            "relations": p.relations().iter().map(|f| ctx.poly(f)).collect::<Vec<_>>(),
        }),
        Err(e) => json!({"generators": c.names, "error": e}),
    };
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "skewci", "version": env!("CARGO_PKG_VERSION")},
        "input": {"name": m.name, "sha256": hex(&Sha256::digest(text.as_bytes()))},
        "settings": {
            "field": m.field,
            "q": m.q.as_ref().map(ToString::to_string),
            "max_degree": degree,
            "order": c.order.precedence().iter().map(|&i| c.names[i].clone()).collect::<Vec<_>>(),
            "primes": ctx.probe.primes,
            "seed": ctx.probe.seed,
            "trials": ctx.probe.trials,
            "q_image": ctx.probe.q_image,
        },
        "algebra": algebra,
        "sequence": c.sequence.iter().map(|f| ctx.poly(f)).collect::<Vec<_>>(),
        "results": results,
        "alarms": alarms,
        "exit_code": exit_code,
    });
    Ok(Outcome { report, exit_code })
}

fn gsca<F: Field>(ctx: &Ctx<F>) -> Result<Value, String> {
    let input = ctx.c.gsca.as_ref().ok_or("needs `matrices`")?;
    let n = input.n();
    let ys: Vec<String> = (1..=n).map(|k| format!("y{k}")).collect();
    let rels: Vec<String> = build_gsca_relations(input)
        .iter()
        .map(|r| r.display_with(&ctx.c.names, &ys))
        .collect();
    let eliminated = match eliminate_y(input, ctx.c.names.clone()) {
        Ok(e) => {
            let central = central_y_relations(input, &e)
                .map(|v| v.iter().map(|f| ctx.poly(f)).collect::<Vec<_>>())
                .ok();
            json!({
                "relations": e.presentation.relations().iter().map(|f| ctx.poly(f)).collect::<Vec<_>>(),
                "y": e.y_solution.iter().zip(&ys).map(|(f, y)| format!("{y} = {}", ctx.poly(f))).collect::<Vec<_>>(),
                "central_y_relations": central,
            })
        }
        Err(e) => json!({"error": e.to_string()}),
    };
    Ok(json!({
        "relations": rels,
        "quadrics": input.quadric_system().quadrics().iter().map(|f| ctx.z_poly(f)).collect::<Vec<_>>(),
        "eliminated": eliminated,
    }))
}

fn normality_json<F: Field>(r: &NormalityReport<F>, show: impl Fn(&NCPoly<F>) -> String) -> Value {
    json!({
        "normal": r.is_normal,
        "checked_degree": r.checked_degree,
        "witness": r.witness.as_ref().map(show),
    })
}

fn coords<F: Field>(p: &[F]) -> Vec<String> {
    p.iter().map(ToString::to_string).collect()
}

fn bpf_json<F: Field>(v: &BasePointVerdict<F>) -> Value {
    match v {
        BasePointVerdict::Free { dimension } => json!({"verdict": "free", "dimension": dimension}),
        BasePointVerdict::NotFree { witness } => json!({
            "verdict": "not-free",
            "witness": witness.as_ref().map(|[a, b]| vec![coords(a), coords(b)]),
        }),
        BasePointVerdict::Inconclusive => json!({"verdict": "inconclusive"}),
    }
}

fn certify<F: Field>(ctx: &Ctx<F>) -> Result<Value, String> {
    let input = ctx.c.gsca.as_ref().ok_or("needs `matrices`")?;
    let cert = certify_regular(input, ctx.c.names.clone(), ctx.degree, &ctx.probe)
        .map_err(|e| e.to_string())?;
    let conclusion = match &cert.conclusion {
        Regularity::CertifiedRegular => json!({"status": "certified-regular"}),
        Regularity::NotRegular(NotRegularReason::NotNormalizing(k)) => {
            json!({"status": "not-regular", "reason": "not-normalizing", "quadric": k})
        }
        Regularity::NotRegular(NotRegularReason::BasePoint { witness }) => json!({
            "status": "not-regular",
            "reason": "base-point",
            "witness": witness.as_ref().map(|[a, b]| vec![coords(a), coords(b)]),
        }),
        Regularity::NotRegular(NotRegularReason::HilbertMismatch {
            degree,
            expected,
            found,
        }) => json!({
            "status": "not-regular",
            "reason": "hilbert-mismatch",
            "degree": degree,
            "expected": expected,
            "found": found,
        }),
        Regularity::Inconclusive(why) => json!({"status": "inconclusive", "reason": why}),
    };
    Ok(json!({
        "quadrics": input.quadric_system().quadrics().iter().map(|f| ctx.z_poly(f)).collect::<Vec<_>>(),
        "normalizing": cert.normalizing.iter().map(|r| normality_json(r, |f| ctx.z_poly(f))).collect::<Vec<_>>(),
        "base_point_free": cert.base_point_free.as_ref().map(bpf_json),
        "hilbert": cert.hilbert,
        "hilbert_match": cert.hilbert_match,
        "conclusion": conclusion,
        "consequences": cert.consequences,
    }))
}

fn hilbert<F: Field>(ctx: &Ctx<F>) -> Result<Value, String> {
    let p = ctx.presentation()?;
    let rs = ctx.system()?;
    let h = hilbert_function(&rs, ctx.degree).map_err(|e| e.to_string())?;
    let qp = p.quadratic_part();
    let quadratic = if qp.relations().is_empty() && !p.relations().is_empty() {
        false
    } else {
        let qrs = complete_truncated(&qp, ctx.degree, &ctx.c.order).map_err(|e| e.to_string())?;
        hilbert_function(&qrs, ctx.degree)
            .map_err(|e| e.to_string())?
            .values
            == h.values
    };
    Ok(json!({
        "values": h.values,
        "certified": rs.is_certified(),
        "max_rule_degree": rs.max_rule_degree(),
        "rules": rs.display_rules(),
        "quadratic_through_truncation": quadratic,
    }))
}

fn growth_json(kind: &GrowthKind) -> Value {
    match kind {
        GrowthKind::FiniteDimensional { dimension } => {
            json!({"kind": "finite-dimensional", "dimension": dimension})
        }
        GrowthKind::PolynomialGrowth { gk } => json!({"kind": "polynomial", "gk": gk}),
        GrowthKind::Exponential => json!({"kind": "exponential"}),
        GrowthKind::InconclusiveTruncated => json!({"kind": "inconclusive-truncated"}),
    }
}

fn growth<F: Field>(ctx: &Ctx<F>) -> Result<Value, String> {
    let rs = ctx.system()?;
    let g = classify_growth(&rs).map_err(|e| e.to_string())?;
    Ok(json!({"growth": growth_json(&g.kind), "hilbert": g.hilbert}))
}

fn normalizing<F: Field>(ctx: &Ctx<F>) -> Result<Value, String> {
    let p = ctx.presentation()?;
    let reps = is_normalizing_sequence(&ctx.c.sequence, p, ctx.degree, &ctx.c.order)
        .map_err(|e| e.to_string())?;
    Ok(json!({
        "normalizing": reps.iter().all(|r| r.is_normal),
        "elements": reps
            .iter()
            .zip(&ctx.c.sequence)
            .map(|(r, f)| {
                let mut v = normality_json(r, |g| ctx.poly(g));
                v["element"] = json!(ctx.poly(f));
                v
            })
            .collect::<Vec<_>>(),
    }))
}

fn bpf<F: Field>(ctx: &Ctx<F>) -> Result<Value, String> {
    let q = if let Some(input) = &ctx.c.gsca {
        input.quadric_system()
    } else if ctx.ambient_skew {
        QuadricSystem::from_elements(&ctx.c.mu, &ctx.c.sequence)
            .map_err(|e| format!("sequence: {e}"))?
    } else {
        return Err("needs `matrices` or a skew polynomial ambient ring".into());
    };
    let v = base_point_free(&q, ctx.degree, &ctx.probe).map_err(|e| e.to_string())?;
    let mut out = bpf_json(&v);
    out["quadrics"] = json!(q
        .quadrics()
        .iter()
        .map(|f| ctx.z_poly(f))
        .collect::<Vec<_>>());
    Ok(out)
}

fn normal_forms<F: Field>(ctx: &Ctx<F>) -> Result<Value, String> {
    let rs = ctx.system()?;
    let out = ctx
        .c
        .reduce
        .iter()
        .zip(ctx.reduce_text)
        .map(|(f, text)| match rs.normal_form(f) {
            Ok(nf) => {
                json!({"expression": text, "expanded": ctx.poly(f), "normal_form": ctx.poly(&nf)})
            }
            Err(e) => json!({"expression": text, "expanded": ctx.poly(f), "error": e.to_string()}),
        })
        .collect::<Vec<_>>();
    Ok(json!({"reductions": out}))
}

fn ensure_conditions<F: Field>(ctx: &mut Ctx<F>) {
    if ctx.conditions.is_none() {
        let r = (|| {
            let p = ctx.presentation()?;
            let mut o = ConditionOptions::new(ctx.degree, ctx.c.order.clone());
            o.families = ctx.c.families.clone();
            o.families_exhaustive = ctx.families_exhaustive;
            o.ambient_skew = ctx.ambient_skew;
            o.skew_model = ctx.c.skew_model.clone();
            o.probe = ctx.probe.clone();
            check_conditions(p, &ctx.c.sequence, &o).map_err(|e| e.to_string())
        })();
        ctx.conditions = Some(r);
    }
}

fn cached<'a, F: Field>(ctx: &'a Ctx<F>) -> Result<&'a ConditionReport<F>, String> {
    ctx.conditions
        .as_ref()
        .expect("computed first")
        .as_ref()
        .map_err(Clone::clone)
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Inconclusive => "inconclusive",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::CompleteIntersection => "complete-intersection",
        Verdict::Not => "not-complete-intersection",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn sequence_json<F: Field>(s: &PointSequence<F>) -> Value {
    json!(s.points.iter().map(|p| coords(p)).collect::<Vec<_>>())
}

fn render_conditions<F: Field>(ctx: &Ctx<F>, r: &ConditionReport<F>) -> Value {
    let mp = |m: &skewci_core::freealg::MultiPoly<F>| {
        m.display_with(&["a".to_string(), "b".to_string()])
    };
    let i = r.i.as_ref().map(|c| {
        json!({
            "status": status_name(c.status),
            "exact": c.exact,
            "witness": c.witness.as_ref().map(|w| json!({
                "stage": w.stage,
                "side": match w.side { Side::Right => "right", Side::Left => "left" },
                "degree": w.degree,
                "element": ctx.poly(&w.element),
            })),
            "factorization_through": c.factorization_through,
            "factorization_defect": c.factorization_defect.map(|(s, d)| json!({"stage": s, "degree": d})),
        })
    });
    let ii = r.ii.as_ref().map(|c| {
        json!({
            "status": status_name(c.status),
            "exact": c.exact,
            "growth": growth_json(&c.growth),
            "hilbert": c.hilbert,
        })
    });
    let iii = r.iii.as_ref().map(|c| {
        json!({
            "status": status_name(c.status),
            "exact": c.exact,
            "prefixes": c.prefixes.iter().map(|p| json!({
                "k": p.k,
                "target": p.target,
                "gk": p.gk,
                "certified": p.certified,
            })).collect::<Vec<_>>(),
        })
    });
    let iv = r.iv.as_ref().map(|c| {
        json!({
            "status": status_name(c.status),
            "exact": c.exact,
            "method": c.method.map(|m| match m {
                IvMethod::SkewAmbient => "skew-ambient",
                IvMethod::SkewModel => "skew-model",
                IvMethod::Families => "families",
                IvMethod::WitnessSearch => "witness-search",
            }),
            "witness": c.witness.as_ref().map(sequence_json),
            "families": c.families.iter().map(|f| json!({
                "family": f.family,
                "verified": f.failure.is_none(),
                "failure": f.failure.as_ref().map(|x| json!({
                    "relation": x.relation,
                    "window": x.window,
                    "residue": mp(&x.residue),
                })),
                "annihilation": f.annihilation.as_ref().map(|a| match a {
                    Annihilation::Identically => json!("identically"),
                    Annihilation::Nowhere => json!("nowhere"),
                    Annihilation::OnSubfamily(g) => json!({"on-subfamily": mp(g)}),
                }),
            })).collect::<Vec<_>>(),
            "notes": c.notes,
        })
    });
    json!({
        "truncation": r.truncation,
        "normalizing": r.normalizing.iter().map(|x| normality_json(x, |g| ctx.poly(g))).collect::<Vec<_>>(),
        "I": i,
        "II": ii,
        "III": iii,
        "IV": iv,
        "iv_required": r.iv_required,
        "verdict": verdict_name(r.verdict),
        "alarms": r.alarms,
    })
}
