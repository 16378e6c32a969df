//! Conditions I-IV for an algebra and a normalizing sequence, and the
//! complete-intersection verdict.
//!
//! * I: the sequence is regular (left and right multiplication injective).
//! * II: the full quotient is finite-dimensional.
//! * III: the `k`-th prefix quotient has GK dimension `n - k`.
//! * IV: no point module is annihilated by the whole sequence.

use thiserror::Error;

use crate::coeff::Field;
use crate::freealg::{MonomialOrder, NCPoly, Word};
use crate::geometry::{
    annihilates, search_annihilated_point, verify_family, Annihilation, FamilyFailure,
    GeometryError, ParametricPointFamily, PointSequence, ProbeOptions,
};
use crate::linalg::{Echelon, Inserted};
use crate::rewrite::{
    classify_growth, complete_truncated, exact_counts, recurrence_bound, GrowthKind, Presentation,
    RewriteError, RewriteSystem,
};
use crate::skew::{is_normal_in, MuData, NormalityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionsError {
    #[error("element {0} of the sequence is not normal modulo its predecessors")]
    NotNormalizing(usize),
    #[error("truncation degree {degree} is too low; at least {needed} is needed")]
    TruncationTooLow { degree: usize, needed: usize },
    #[error("sequence element {0} is zero or not homogeneous")]
    BadElement(usize),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionSet {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
    pub iv: bool,
}

impl ConditionSet {
    pub const ALL: ConditionSet = ConditionSet {
        i: true,
        ii: true,
        iii: true,
        iv: true,
    };
}

/// A skew polynomial ring `B` and sequence `G` with `B/<G>` expected to
/// coincide with the quotient under study.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewModel<F: Field> {
    pub mu: MuData<F>,
    pub sequence: Vec<NCPoly<F>>,
}

#[derive(Clone, Debug)]
pub struct ConditionOptions<F: Field> {
    pub degree: usize,
    pub order: MonomialOrder,
    pub families: Vec<ParametricPointFamily<F>>,
    /// The manifest asserts the families contain every point module.
    pub families_exhaustive: bool,
    /// The ambient algebra is a skew polynomial ring, so I-IV are
    /// equivalent and IV follows II.
    pub ambient_skew: bool,
    pub skew_model: Option<SkewModel<F>>,
    pub probe: ProbeOptions,
    pub which: ConditionSet,
}

impl<F: Field> ConditionOptions<F> {
    pub fn new(degree: usize, order: MonomialOrder) -> Self {
        ConditionOptions {
            degree,
            order,
            families: Vec::new(),
            families_exhaustive: false,
            ambient_skew: false,
            skew_model: None,
            probe: ProbeOptions::default(),
            which: ConditionSet::ALL,
        }
    }
}

/// `a -> a f` is right multiplication, `a -> f a` left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityWitness<F: Field> {
    /// 1-based stage: `f_stage` acting on the quotient by its predecessors.
    pub stage: usize,
    pub side: Side,
    pub degree: usize,
    /// Nonzero normal-form element killed by `f_stage`.
    pub element: NCPoly<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionI<F: Field> {
    pub status: Status,
    pub exact: bool,
    pub witness: Option<RegularityWitness<F>>,
    /// Largest degree through which the per-stage Hilbert factorization was
    /// confirmed, when every prefix system is certified.
    pub factorization_through: Option<usize>,
    /// `(stage, degree)` of the first factorization defect.
    pub factorization_defect: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionII {
    pub status: Status,
    pub exact: bool,
    pub growth: GrowthKind,
    pub hilbert: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixGk {
    pub k: usize,
    pub target: i64,
    pub gk: Option<usize>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionIII {
    pub status: Status,
    pub exact: bool,
    pub prefixes: Vec<PrefixGk>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IvMethod {
    /// Equivalence with II in a skew polynomial ring.
    SkewAmbient,
    /// Same quotient as a sequence in a skew polynomial ring.
    SkewModel,
    Families,
    WitnessSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyOutcome<F: Field> {
    pub family: usize,
    pub failure: Option<FamilyFailure<F>>,
    pub annihilation: Option<Annihilation<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionIV<F: Field> {
    pub status: Status,
    pub exact: bool,
    pub method: Option<IvMethod>,
    pub witness: Option<PointSequence<F>>,
    pub families: Vec<FamilyOutcome<F>>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CompleteIntersection,
    Not,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport<F: Field> {
    pub n: usize,
    pub truncation: usize,
    pub normalizing: Vec<NormalityReport<F>>,
    pub i: Option<ConditionI<F>>,
    pub ii: Option<ConditionII>,
    pub iii: Option<ConditionIII>,
    pub iv: Option<ConditionIV<F>>,
    /// IV counts towards the verdict (skew polynomial ambient ring).
    pub iv_required: bool,
    pub verdict: Verdict,
    pub alarms: Vec<String>,
}

pub fn check_conditions<F: Field>(
    p: &Presentation<F>,
    fs: &[NCPoly<F>],
    opts: &ConditionOptions<F>,
) -> Result<ConditionReport<F>, ConditionsError> {
    for (k, f) in fs.iter().enumerate() {
        if f.is_zero() || !f.is_homogeneous() || f.max_degree() == 0 {
            return Err(ConditionsError::BadElement(k + 1));
        }
    }
    let d = opts.degree;
    let needed = fs
        .iter()
        .map(|f| f.max_degree() + 1)
        .chain(std::iter::once(p.max_degree()))
        .max()
        .unwrap_or(0);
    if d < needed {
        return Err(ConditionsError::TruncationTooLow { degree: d, needed });
    }
    let n = p.n();
    let mut systems = Vec::with_capacity(fs.len() + 1);
    for k in 0..=fs.len() {
        let q = p.adjoin(&fs[..k])?;
        systems.push(complete_truncated(&q, d, &opts.order)?);
    }
    let mut normalizing = Vec::with_capacity(fs.len());
    for (k, f) in fs.iter().enumerate() {
        let rep = is_normal_in(f, &systems[k])?;
        if !rep.is_normal {
            return Err(ConditionsError::NotNormalizing(k + 1));
        }
        normalizing.push(rep);
    }

    let i = opts
        .which
        .i
        .then(|| condition_i(&systems, fs, d))
        .transpose()?;
    let last = systems.last().expect("at least the ambient system");
    let ii = if opts.which.ii || opts.which.iv {
        Some(condition_ii(last)?)
    } else {
        None
    };
    let iii = opts
        .which
        .iii
        .then(|| condition_iii(&systems, n))
        .transpose()?;
    let iv = opts
        .which
        .iv
        .then(|| condition_iv(p, fs, opts, last, ii.as_ref().expect("computed for IV")))
        .transpose()?;
    let mut report = ConditionReport {
        n,
        truncation: d,
        normalizing,
        i,
        ii: if opts.which.ii { ii } else { None },
        iii,
        iv,
        iv_required: opts.ambient_skew,
        verdict: Verdict::Inconclusive,
        alarms: Vec::new(),
    };
    let (verdict, alarms) = complete_intersection_verdict(&report);
    report.verdict = verdict;
    report.alarms.extend(alarms);
    Ok(report)
}

fn condition_i<F: Field>(
    systems: &[RewriteSystem<F>],
    fs: &[NCPoly<F>],
    d: usize,
) -> Result<ConditionI<F>, ConditionsError> {
    let mut witness = None;
    'stages: for (k, f) in fs.iter().enumerate() {
        let rs = &systems[k];
        let f = rs.normal_form(f)?;
        let deg = fs[k].max_degree();
        for m in 0..=d - deg {
            for side in [Side::Right, Side::Left] {
                if let Some(element) = kernel_element(rs, &f, m, side)? {
                    witness = Some(RegularityWitness {
                        stage: k + 1,
                        side,
                        degree: m,
                        element,
                    });
                    break 'stages;
                }
            }
        }
    }
    let certified = systems.iter().all(RewriteSystem::is_certified);
    let (through, defect) = if certified {
        factorization(systems, fs, d)?
    } else {
        (None, None)
    };
    let (status, exact) = match (&witness, defect, through) {
        (Some(_), _, _) | (None, Some(_), _) => (Status::Fails, true),
        (None, None, Some(_)) => (Status::Holds, true),
        (None, None, None) => (Status::Holds, false),
    };
    Ok(ConditionI {
        status,
        exact,
        witness,
        factorization_through: through,
        factorization_defect: defect,
    })
}

/// A nonzero element of degree `m` killed by multiplication with `f`, if
/// any. Monomials are tried first, in descending order.
fn kernel_element<F: Field>(
    rs: &RewriteSystem<F>,
    f: &NCPoly<F>,
    m: usize,
    side: Side,
) -> Result<Option<NCPoly<F>>, RewriteError> {
    let basis = rs.normal_words(m);
    let mut images = Vec::with_capacity(basis.len());
    for u in &basis {
        let w = NCPoly::word(u.clone());
        let img = match side {
            Side::Right => rs.normal_form(&w.mul(f))?,
            Side::Left => rs.normal_form(&f.mul(&w))?,
        };
        if img.is_zero() {
            return Ok(Some(w));
        }
        images.push(img);
    }
    let mut ech: Echelon<Word, F> = Echelon::new();
    for (t, img) in images.into_iter().enumerate() {
        if let Inserted::Dependent(combo) = ech.insert(img.into_map(), Some(t)) {
            let el = NCPoly::from_terms(combo.into_iter().map(|(t, c)| (basis[t].clone(), c)));
            return Ok(Some(el));
        }
    }
    Ok(None)
}

/// Checks `H_k(t) = H_{k-1}(t) (1 - t^{d_k})` at every stage far enough to
/// force the identity of the rational series: each side obeys a linear
/// recurrence of known order from a known index on.
fn factorization<F: Field>(
    systems: &[RewriteSystem<F>],
    fs: &[NCPoly<F>],
    degree: usize,
) -> Result<(Option<usize>, Option<(usize, usize)>), RewriteError> {
    let mut through = 0;
    for (k, f) in fs.iter().enumerate() {
        let deg = f.max_degree();
        let top =
            (recurrence_bound(&systems[k])? + recurrence_bound(&systems[k + 1])? + deg).max(degree);
        let prev = exact_counts(&systems[k], top)?;
        let next = exact_counts(&systems[k + 1], top)?;
        for m in 0..=top {
            let shifted = if m >= deg { prev[m - deg] as i128 } else { 0 };
            if prev[m] as i128 - shifted != next[m] as i128 {
                return Ok((None, Some((k + 1, m))));
            }
        }
        through = through.max(top);
    }
    Ok((Some(through), None))
}

fn condition_ii<F: Field>(rs: &RewriteSystem<F>) -> Result<ConditionII, RewriteError> {
    let report = classify_growth(rs)?;
    let (status, exact) = match report.kind {
        GrowthKind::FiniteDimensional { .. } => (Status::Holds, true),
        GrowthKind::PolynomialGrowth { .. } | GrowthKind::Exponential => (Status::Fails, true),
        GrowthKind::InconclusiveTruncated => (Status::Inconclusive, false),
    };
    Ok(ConditionII {
        status,
        exact,
        growth: report.kind,
        hilbert: report.hilbert,
    })
}

fn condition_iii<F: Field>(
    systems: &[RewriteSystem<F>],
    n: usize,
) -> Result<ConditionIII, RewriteError> {
    let mut prefixes = Vec::new();
    for (k, rs) in systems.iter().enumerate().skip(1) {
        let gk = if rs.is_certified() {
            classify_growth(rs)?.kind.gk()
        } else {
            None
        };
        prefixes.push(PrefixGk {
            k,
            target: n as i64 - k as i64,
            gk,
            certified: rs.is_certified(),
        });
    }
    // exponential growth has no finite GK value but is certified
    let fails = prefixes
        .iter()
        .any(|p| p.certified && p.gk.is_none_or(|g| g as i64 != p.target));
    let all = prefixes
        .iter()
        .all(|p| p.gk.is_some_and(|g| g as i64 == p.target));
    let status = if fails {
        Status::Fails
    } else if all {
        Status::Holds
    } else {
        Status::Inconclusive
    };
    Ok(ConditionIII {
        status,
        exact: status != Status::Inconclusive,
        prefixes,
    })
}

fn condition_iv<F: Field>(
    p: &Presentation<F>,
    fs: &[NCPoly<F>],
    opts: &ConditionOptions<F>,
    full: &RewriteSystem<F>,
    ii: &ConditionII,
) -> Result<ConditionIV<F>, ConditionsError> {
    let mut iv = ConditionIV {
        status: Status::Inconclusive,
        exact: false,
        method: None,
        witness: None,
        families: Vec::new(),
        notes: Vec::new(),
    };
    if opts.ambient_skew {
        iv.status = ii.status;
        iv.exact = ii.exact;
        iv.method = Some(IvMethod::SkewAmbient);
        iv.notes
            .push("equivalent to II in a skew polynomial ring".into());
    } else if let Some(model) = &opts.skew_model {
        match skew_model_growth(p, model, opts, full)? {
            Ok(status) => {
                iv.status = status;
                iv.exact = status != Status::Inconclusive;
                iv.method = Some(IvMethod::SkewModel);
                iv.notes
                    .push("quotient equals a sequence quotient of a skew polynomial ring".into());
            }
            Err(note) => iv.notes.push(note),
        }
    }
    if !opts.families.is_empty() {
        let mut all_verified = true;
        let mut any_annihilated = false;
        let mut all_nowhere = true;
        for (idx, fam) in opts.families.iter().enumerate() {
            let failure = verify_family(fam, p)?;
            let annihilation = if failure.is_none() {
                let a = annihilates(fam, fs, None);
                any_annihilated |= a != Annihilation::Nowhere;
                all_nowhere &= a == Annihilation::Nowhere;
                Some(a)
            } else {
                all_verified = false;
                iv.notes.push(format!(
                    "family {} is not a family of point modules",
                    idx + 1
                ));
                None
            };
            iv.families.push(FamilyOutcome {
                family: idx + 1,
                failure,
                annihilation,
            });
        }
        let from_families = if any_annihilated {
            Some(Status::Fails)
        } else if all_verified && all_nowhere && opts.families_exhaustive {
            Some(Status::Holds)
        } else {
            None
        };
        if let Some(s) = from_families {
            if iv.method.is_none() {
                iv.status = s;
                iv.exact = true;
                iv.method = Some(IvMethod::Families);
            } else if iv.exact && iv.status != s {
                iv.notes
                    .push("family certificate disagrees with the equivalence argument".into());
            }
        }
    }
    if !opts.probe.primes.is_empty() {
        iv.witness = search_annihilated_point(p, fs, None, &opts.probe);
        match (&iv.witness, iv.status, iv.exact) {
            (Some(_), Status::Holds, true) => {
                iv.notes
                    .push("exact witness contradicts the proof that IV holds".into());
            }
            (Some(_), _, _) => {
                if iv.method.is_none() {
                    iv.method = Some(IvMethod::WitnessSearch);
                }
                iv.status = Status::Fails;
                iv.exact = true;
            }
            (None, Status::Inconclusive, _) => {
                iv.method.get_or_insert(IvMethod::WitnessSearch);
                iv.notes
                    .push("no annihilated point found by the finite-field probe".into());
            }
            (None, _, _) => {}
        }
    }
    Ok(iv)
}

/// Status of `dim B/<G> < infinity` when `B/<G>` and the quotient under
/// study have the same reduced Gröbner basis; otherwise the reason the
/// model does not apply.
fn skew_model_growth<F: Field>(
    p: &Presentation<F>,
    model: &SkewModel<F>,
    opts: &ConditionOptions<F>,
    full: &RewriteSystem<F>,
) -> Result<Result<Status, String>, ConditionsError> {
    if model.mu.n() != p.n() {
        return Ok(Err("skew model has a different number of generators".into()));
    }
    let b = model.mu.skew_ring(p.names().to_vec());
    let mut systems = vec![complete_truncated(&b, opts.degree, &opts.order)?];
    for k in 0..model.sequence.len() {
        let q = b.adjoin(&model.sequence[..=k])?;
        systems.push(complete_truncated(
            &q,
            opts.degree.max(q.max_degree()),
            &opts.order,
        )?);
    }
    for (k, g) in model.sequence.iter().enumerate() {
        if g.max_degree() + 1 > opts.degree || !is_normal_in(g, &systems[k])?.is_normal {
            return Ok(Err(format!(
                "skew model element {} is not normalizing",
                k + 1
            )));
        }
    }
    let model_full = systems.last().expect("nonempty");
    if !(model_full.is_certified() && full.is_certified()) {
        return Ok(Err("skew model comparison needs certified bases".into()));
    }
    let key = |rs: &RewriteSystem<F>| {
        let mut r = rs.rules();
        r.sort_by(|a, b| a.lead.cmp(&b.lead));
        r
    };
    if key(model_full) != key(full) {
        return Ok(Err(
            "skew model quotient differs from the quotient under study".into(),
        ));
    }
    Ok(Ok(condition_ii(model_full)?.status))
}

/// Verdict from the statuses of I-III (and IV for skew polynomial ambient
/// rings), plus consistency alarms between exact statuses that are
/// provably equivalent.
pub fn complete_intersection_verdict<F: Field>(
    report: &ConditionReport<F>,
) -> (Verdict, Vec<String>) {
    let mut entries: Vec<(&str, Option<(Status, bool)>)> = vec![
        ("I", report.i.as_ref().map(|c| (c.status, c.exact))),
        ("II", report.ii.as_ref().map(|c| (c.status, c.exact))),
        ("III", report.iii.as_ref().map(|c| (c.status, c.exact))),
    ];
    if report.iv_required {
        entries.push(("IV", report.iv.as_ref().map(|c| (c.status, c.exact))));
    }
    let mut alarms = Vec::new();
    for (a, sa) in &entries {
        for (b, sb) in &entries {
            if let (Some((x, true)), Some((y, true))) = (sa, sb) {
                if a < b && x != y && *x != Status::Inconclusive && *y != Status::Inconclusive {
                    alarms.push(format!(
                        "CONSISTENCY ALARM: condition {a} is {x:?} but {b} is {y:?}"
                    ));
                }
            }
        }
    }
    if let Some(iv) = &report.iv {
        alarms.extend(
            iv.notes
                .iter()
                .filter(|n| n.contains("contradicts") || n.contains("disagrees"))
                .map(|n| format!("CONSISTENCY ALARM: condition IV: {n}")),
        );
    }
    let statuses: Vec<Option<Status>> = entries
        .iter()
        .map(|(_, s)| {
            s.map(|(st, exact)| {
                if st == Status::Holds && !exact {
                    Status::Inconclusive
                } else {
                    st
                }
            })
        })
        .collect();
    let verdict = if statuses.contains(&Some(Status::Fails)) {
        Verdict::Not
    } else if statuses.iter().all(|s| *s == Some(Status::Holds)) {
        Verdict::CompleteIntersection
    } else {
        Verdict::Inconclusive
    };
    (verdict, alarms)
}
