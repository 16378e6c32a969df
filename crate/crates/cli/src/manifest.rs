//! Manifest schema (TOML) and compilation into core objects.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use skewci_core::coeff::{Field, RatFunc, Rational};
use skewci_core::conditions::SkewModel;
use skewci_core::freealg::{
    parse_expr, parse_homogeneous, parse_scalar, MonomialOrder, MultiPoly, NCPoly,
};
use skewci_core::geometry::ParametricPointFamily;
use skewci_core::gsca::{central_y_relations, eliminate_y, GscaInput};
use skewci_core::rewrite::{complete_truncated, Presentation};
use skewci_core::skew::{validate_mu, MuData, MuSymMatrix, SkewError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManifestError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{field}: expression error at offset {offset}: {message}")]
    Expression {
        field: String,
        offset: usize,
        message: String,
    },
    #[error("{field}: mu_ij * mu_ji != 1 for (i, j) = ({i}, {j})")]
    MuAxiomViolation { field: String, i: usize, j: usize },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> ManifestError {
    ManifestError::Invalid {
        field: field.into(),
        message: message.into(),
    }
}

/// A scalar written either as an integer or as an expression string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl fmt::Display for ScalarText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarText::Int(v) => write!(f, "{v}"),
            ScalarText::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Validate,
    Gsca,
    CertifyRegular,
    Hilbert,
    Growth,
    Normalizing,
    BasePointFree,
    NormalForm,
    Conditions,
    CiVerdict,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Gsca => "gsca",
            Command::CertifyRegular => "certify-regular",
            Command::Hilbert => "hilbert",
            Command::Growth => "growth",
            Command::Normalizing => "normalizing",
            Command::BasePointFree => "base-point-free",
            Command::NormalForm => "normal-form",
            Command::Conditions => "conditions",
            Command::CiVerdict => "ci-verdict",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Image of `q` in the prime fields of the probe.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_image: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkewModelSpec {
    pub mu: Vec<Vec<ScalarText>>,
    /// Defaults to the main sequence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    /// Point vectors with entries polynomial in `a`, `b`.
    pub points: Vec<Vec<String>>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn default_field() -> String {
    "Q".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub name: String,
    #[serde(default = "default_field")]
    pub field: String,
    /// Specialization of the parameter for field `Q(q)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<ScalarText>,
    pub generators: Vec<String>,
    /// Precedence, smallest generator first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
    pub commands: Vec<Command>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<Vec<ScalarText>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<ScalarText>>>>,
    /// Adds relations making the degree-two generators central.
    #[serde(default, skip_serializing_if = "is_false")]
    pub central_y: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sequence: Vec<String>,
    /// The algebra is itself the skew polynomial ring on `mu`.
    #[serde(default, skip_serializing_if = "is_false")]
    pub ambient_skew: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub families_exhaustive: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reduce: Vec<String>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub options: Options,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skew_model: Option<SkewModelSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilySpec>,
}

fn is_default(o: &Options) -> bool {
    *o == Options::default()
}

/// Coefficient field selected by the manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    /// `Q(q)` with `q` specialized to a rational.
    Specialized(Rational),
    Generic,
}

impl Manifest {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }

    pub fn field_choice(&self) -> Result<FieldChoice, ManifestError> {
        match (self.field.as_str(), &self.q) {
            ("Q", None) => Ok(FieldChoice::Rational),
            ("Q", Some(_)) => Err(invalid("q", "a specialization needs field \"Q(q)\"")),
            ("Q(q)", None) => Ok(FieldChoice::Generic),
            ("Q(q)", Some(v)) => {
                let r = parse_scalar(&v.to_string()).map_err(|e| ManifestError::Expression {
                    field: "q".into(),
                    offset: e.offset,
                    message: e.message,
                })?;
                let r = r
                    .to_rational()
                    .ok_or_else(|| invalid("q", "the specialization must be a rational number"))?;
                Ok(FieldChoice::Specialized(r))
            }
            (other, _) => Err(invalid(
                "field",
                format!("unknown field {other:?}; use \"Q\" or \"Q(q)\""),
            )),
        }
    }
}

/// Parses and fully validates a manifest.
pub fn parse_manifest(text: &str) -> Result<Manifest, ManifestError> {
    let m: Manifest = toml::from_str(text).map_err(|e| ManifestError::Schema(e.to_string()))?;
    match m.field_choice()? {
        FieldChoice::Rational => {
            compile::<Rational>(&m, &|c: &RatFunc| c.to_rational())?;
        }
        FieldChoice::Specialized(v) => {
            compile::<Rational>(&m, &|c: &RatFunc| c.eval(&v))?;
        }
        FieldChoice::Generic => {
            compile::<RatFunc>(&m, &|c: &RatFunc| Some(c.clone()))?;
        }
    }
    Ok(m)
}

/// Conversion of parsed coefficients into the working field; `None` when the
/// coefficient has no image (a pole, or `q` in field `Q`).
pub type Convert<'a, F> = &'a dyn Fn(&RatFunc) -> Option<F>;

/// Everything a run needs, in the working field.
pub struct Compiled<F: Field> {
    pub names: Vec<String>,
    pub order: MonomialOrder,
    pub mu: MuData<F>,
    pub gsca: Option<GscaInput<F>>,
    /// The algebra under study; an error message when it cannot be formed
    /// (dependent matrices).
    pub presentation: Result<Presentation<F>, String>,
    pub sequence: Vec<NCPoly<F>>,
    pub skew_model: Option<SkewModel<F>>,
    pub families: Vec<ParametricPointFamily<F>>,
    pub reduce: Vec<NCPoly<F>>,
}

fn convert_poly<F: Field>(
    f: NCPoly<RatFunc>,
    conv: Convert<F>,
    field: &str,
) -> Result<NCPoly<F>, ManifestError> {
    f.map_coeffs(|c| {
        conv(c).ok_or_else(|| {
            invalid(
                field,
                format!("coefficient {c} has no value in the chosen field"),
            )
        })
    })
}

fn expr<F: Field>(
    text: &str,
    names: &[String],
    conv: Convert<F>,
    field: &str,
) -> Result<NCPoly<F>, ManifestError> {
    let f = parse_homogeneous(text, names).map_err(|e| ManifestError::Expression {
        field: field.into(),
        offset: e.offset,
        message: e.message,
    })?;
    convert_poly(f, conv, field)
}

fn scalar<F: Field>(v: &ScalarText, conv: Convert<F>, field: &str) -> Result<F, ManifestError> {
    let s = parse_scalar(&v.to_string()).map_err(|e| ManifestError::Expression {
        field: field.into(),
        offset: e.offset,
        message: e.message,
    })?;
    conv(&s).ok_or_else(|| invalid(field, format!("{s} has no value in the chosen field")))
}

fn matrix<F: Field>(
    rows: &[Vec<ScalarText>],
    n: usize,
    conv: Convert<F>,
    field: &str,
) -> Result<Vec<Vec<F>>, ManifestError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(invalid(field, format!("expected a {n}x{n} matrix")));
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, v)| scalar(v, conv, &format!("{field}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

fn mu_data<F: Field>(
    rows: &[Vec<ScalarText>],
    n: usize,
    conv: Convert<F>,
    field: &str,
) -> Result<MuData<F>, ManifestError> {
    let raw = matrix(rows, n, conv, field)?;
    validate_mu(raw).map_err(|e| match e {
        SkewError::MuAxiomViolation { i, j } => ManifestError::MuAxiomViolation {
            field: format!("{field}[{}][{}]", i - 1, j - 1),
            i,
            j,
        },
        SkewError::DiagonalNotOne(i) => invalid(
            format!("{field}[{}][{}]", i - 1, i - 1),
            "diagonal entries must be 1",
        ),
        other => invalid(field, other.to_string()),
    })
}

fn family<F: Field>(
    fam: &FamilySpec,
    n: usize,
    conv: Convert<F>,
    field: &str,
) -> Result<ParametricPointFamily<F>, ManifestError> {
    let params = vec!["a".to_string(), "b".to_string()];
    let mut points = Vec::new();
    for (s, pt) in fam.points.iter().enumerate() {
        if pt.len() != n {
            return Err(invalid(
                format!("{field}.points[{s}]"),
                format!("expected {n} coordinates"),
            ));
        }
        let mut coords = Vec::new();
        for (c, text) in pt.iter().enumerate() {
            let fname = format!("{field}.points[{s}][{c}]");
            let f = parse_expr(text, &params).map_err(|e| ManifestError::Expression {
                field: fname.clone(),
                offset: e.offset,
                message: e.message,
            })?;
            let f = convert_poly(f, conv, &fname)?;
            let mut m = MultiPoly::zero(2);
            for (w, coef) in f.terms() {
                let na = w.letters().iter().filter(|&&l| l == 0).count() as u32;
                m.add_term(vec![na, w.len() as u32 - na], coef);
            }
            coords.push(m);
        }
        points.push(coords);
    }
    ParametricPointFamily::new(points).map_err(|e| invalid(field, e.to_string()))
}

pub fn compile<F: Field>(m: &Manifest, conv: Convert<F>) -> Result<Compiled<F>, ManifestError> {
    let names = m.generators.clone();
    let n = names.len();
    if n == 0 || n > 64 {
        return Err(invalid(
            "generators",
            "between 1 and 64 generators are supported",
        ));
    }
    let mut seen = HashSet::new();
    for g in &names {
        let ok = g.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && g.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok || g == "q" || !seen.insert(g) {
            return Err(invalid(
                "generators",
                format!("bad or repeated generator name {g:?}"),
            ));
        }
    }
    if m.commands.is_empty() {
        return Err(invalid("commands", "at least one command is required"));
    }
    let order = match &m.order {
        None => MonomialOrder::natural(n),
        Some(prec) => {
            let idx = prec
                .iter()
                .map(|g| {
                    names
                        .iter()
                        .position(|x| x == g)
                        .ok_or_else(|| invalid("order", format!("unknown generator {g:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            MonomialOrder::from_precedence(&idx)
                .ok_or_else(|| invalid("order", "must list every generator once"))?
        }
    };
    let mu = match &m.mu {
        None => MuData::ones(n),
        Some(rows) => mu_data(rows, n, conv, "mu")?,
    };
    let (gsca, presentation) = match (&m.matrices, &m.relations) {
        (Some(_), Some(_)) | (None, None) => {
            return Err(invalid(
                "matrices",
                "give exactly one of `matrices` and `relations`",
            ));
        }
        (Some(mats), None) => {
            if mats.len() != n {
                return Err(invalid("matrices", format!("expected {n} matrices")));
            }
            let ms = mats
                .iter()
                .enumerate()
                .map(|(k, rows)| {
                    let field = format!("matrices[{k}]");
                    let raw = matrix(rows, n, conv, &field)?;
                    MuSymMatrix::new(raw, &mu).map_err(|e| invalid(field, e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let input =
                GscaInput::new(mu.clone(), ms).map_err(|e| invalid("matrices", e.to_string()))?;
            let pres = match eliminate_y(&input, names.clone()) {
                Ok(e) if m.central_y => {
                    let extra = central_y_relations(&input, &e)
                        .map_err(|err| invalid("central_y", err.to_string()))?;
                    Ok(e.presentation
                        .adjoin(&extra)
                        .map_err(|err| invalid("central_y", err.to_string()))?)
                }
                Ok(e) => Ok(e.presentation),
                Err(e) => Err(e.to_string()),
            };
            (Some(input), pres)
        }
        (None, Some(rels)) => {
            if m.central_y {
                return Err(invalid("central_y", "only meaningful with `matrices`"));
            }
            let rels = rels
                .iter()
                .enumerate()
                .map(|(k, s)| expr(s, &names, conv, &format!("relations[{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let p = Presentation::new(names.clone(), rels)
                .map_err(|e| invalid("relations", e.to_string()))?;
            (None, Ok(p))
        }
    };
    if m.ambient_skew {
        if let Ok(p) = &presentation {
            let s = mu.skew_ring(names.clone());
            let same = match (
                complete_truncated(p, 3, &order),
                complete_truncated(&s, 3, &order),
            ) {
                (Ok(a), Ok(b)) => a.rules() == b.rules(),
                _ => false,
            };
            if !same {
                return Err(invalid(
                    "ambient_skew",
                    "the relations do not present the skew polynomial ring of `mu`",
                ));
            }
        }
    }
    let sequence = m
        .sequence
        .iter()
        .enumerate()
        .map(|(k, s)| expr(s, &names, conv, &format!("sequence[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let skew_model = match &m.skew_model {
        None => None,
        Some(model) => {
            let mu = mu_data(&model.mu, n, conv, "skew_model.mu")?;
            let sequence = match &model.sequence {
                None => sequence.clone(),
                Some(seq) => seq
                    .iter()
                    .enumerate()
                    .map(|(k, s)| expr(s, &names, conv, &format!("skew_model.sequence[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            Some(SkewModel { mu, sequence })
        }
    };
    let families = m
        .families
        .iter()
        .enumerate()
        .map(|(k, f)| family(f, n, conv, &format!("families[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let reduce = m
        .reduce
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let f = parse_expr(s, &names).map_err(|e| ManifestError::Expression {
                field: format!("reduce[{k}]"),
                offset: e.offset,
                message: e.message,
            })?;
            convert_poly(f, conv, &format!("reduce[{k}]"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Compiled {
        names,
        order,
        mu,
        gsca,
        presentation,
        sequence,
        skew_model,
        families,
        reduce,
    })
}
