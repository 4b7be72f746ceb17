//! Model files: JSON documents describing one structure to verify.

use std::path::Path;

use pncalc_core::calculus::{Bivector, EndoField};
use pncalc_core::expr::{parse_poly, parse_rational, Chart, ExprError, Poly, Rational};
use pncalc_core::groupoid::{build_trivial_groupoid, DirectSumPN, TrivialGroupoid};
use pncalc_core::liealg::{AlgBivector, AlgEndo, LieAlgebra, StructureTable};
use pncalc_core::liegroup::{GroupLaw, PolyGroup};
use pncalc_core::oracle::SamplePlan;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error at `{pointer}`: {message}")]
    Schema { pointer: String, message: String },
    #[error("parse error in `{field}` at byte {position}: {message}")]
    Parse {
        field: String,
        position: usize,
        message: String,
    },
    #[error("invalid model: {0}")]
    Invariant(String),
}

pub type Result<T, E = LoadError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    ManifoldPn,
    LieAlgebra,
    LambdaN,
    PolyGroup,
    GroupPn,
    TrivialGroupoidPn,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::ManifoldPn,
        ModelKind::LieAlgebra,
        ModelKind::LambdaN,
        ModelKind::PolyGroup,
        ModelKind::GroupPn,
        ModelKind::TrivialGroupoidPn,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::ManifoldPn => "manifold_pn",
            ModelKind::LieAlgebra => "lie_algebra",
            ModelKind::LambdaN => "lambda_n",
            ModelKind::PolyGroup => "poly_group",
            ModelKind::GroupPn => "group_pn",
            ModelKind::TrivialGroupoidPn => "trivial_groupoid_pn",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

/// Validated model contents.
#[derive(Debug, Clone)]
pub enum Payload {
    ManifoldPn { p: Bivector, n: EndoField },
    /// Kept as a table: failing Jacobi is a verdict, not an input error.
    LieAlgebra { table: StructureTable },
    LambdaN { algebra: LieAlgebra, lambda: AlgBivector, n: AlgEndo },
    PolyGroup { law: GroupLaw },
    GroupPn { group: PolyGroup, lambda: AlgBivector, n: AlgEndo },
    TrivialGroupoidPn {
        groupoid: Box<TrivialGroupoid>,
        data: Box<DirectSumPN>,
        symmetric: bool,
    },
}

impl Payload {
    pub fn kind(&self) -> ModelKind {
        match self {
            Payload::ManifoldPn { .. } => ModelKind::ManifoldPn,
            Payload::LieAlgebra { .. } => ModelKind::LieAlgebra,
            Payload::LambdaN { .. } => ModelKind::LambdaN,
            Payload::PolyGroup { .. } => ModelKind::PolyGroup,
            Payload::GroupPn { .. } => ModelKind::GroupPn,
            Payload::TrivialGroupoidPn { .. } => ModelKind::TrivialGroupoidPn,
        }
    }
}

/// Per-model overrides of the sampling plan. The seed always comes from the command line.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleOverrides {
    pub samples: Option<usize>,
    pub fd_step: Option<String>,
    pub tolerance: Option<String>,
    pub range: Option<[String; 2]>,
}

#[derive(Debug, Clone)]
pub struct ModelFile {
    pub name: String,
    /// sha256 of the file bytes.
    pub digest: String,
    pub payload: Payload,
    oracle: Option<(Option<usize>, Option<Rational>, Option<Rational>, Option<(Rational, Rational)>)>,
}

impl ModelFile {
    pub fn kind(&self) -> ModelKind {
        self.payload.kind()
    }

    /// `base` with this model's overrides applied; the seed is left alone.
    pub fn plan(&self, base: &SamplePlan) -> SamplePlan {
        let mut plan = base.clone();
        if let Some((samples, step, tol, range)) = &self.oracle {
            if let Some(s) = samples {
                plan.count = *s;
            }
            if let Some(h) = step {
                plan.fd_step = h.clone();
            }
            if let Some(t) = tol {
                plan.tolerance = t.clone();
            }
            if let Some(r) = range {
                plan.range = r.clone();
            }
        }
        plan
    }
}

pub fn load_model(path: &Path) -> Result<ModelFile> {
    let bytes = std::fs::read(path).map_err(|e| LoadError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let fallback = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    parse_model(&bytes, &fallback)
}

/// Parses and validates a model document. `fallback_name` is used when the document has no `name`.
pub fn parse_model(bytes: &[u8], fallback_name: &str) -> Result<ModelFile> {
    let digest = hex::encode(Sha256::digest(bytes));
    let value: Value = serde_json::from_slice(bytes).map_err(|e| LoadError::Schema {
        pointer: String::new(),
        message: e.to_string(),
    })?;
    let Value::Object(mut obj) = value else {
        return Err(schema("", "a model must be a JSON object"));
    };
    let kind = match obj.remove("kind") {
        Some(Value::String(s)) => ModelKind::parse(&s).ok_or_else(|| {
            let known: Vec<_> = ModelKind::ALL.iter().map(|k| k.as_str()).collect();
            schema("/kind", &format!("unknown kind `{s}`, expected one of {}", known.join(", ")))
        })?,
        Some(_) => return Err(schema("/kind", "expected a string")),
        None => return Err(schema("/kind", "missing field")),
    };
    let name = match obj.remove("name") {
        Some(Value::String(s)) => s,
        Some(_) => return Err(schema("/name", "expected a string")),
        None => fallback_name.to_string(),
    };
    let oracle = match obj.remove("oracle") {
        Some(v) => Some(oracle_overrides(typed::<OracleOverrides>(v, "/oracle")?)?),
        None => None,
    };
    let payload = match kind {
        ModelKind::ManifoldPn => {
            let raw: RawManifold = typed(Value::Object(obj), "")?;
            let (p, n) = raw.build("")?;
            Payload::ManifoldPn { p, n }
        }
        ModelKind::LieAlgebra => {
            let raw: RawLieAlgebraModel = typed(Value::Object(obj), "")?;
            Payload::LieAlgebra {
                table: raw.algebra.table("/algebra")?,
            }
        }
        ModelKind::LambdaN => {
            let raw: RawLambdaN = typed(Value::Object(obj), "")?;
            let algebra = LieAlgebra::new(raw.algebra.table("/algebra")?)
                .map_err(|e| LoadError::Invariant(format!("/algebra: {e}")))?;
            let (lambda, n) = alg_pair(&raw.lambda, &raw.n, algebra.dim())?;
            Payload::LambdaN { algebra, lambda, n }
        }
        ModelKind::PolyGroup => {
            let raw: RawGroupModel = typed(Value::Object(obj), "")?;
            Payload::PolyGroup {
                law: raw.group.law("/group")?,
            }
        }
        ModelKind::GroupPn => {
            let raw: RawGroupPn = typed(Value::Object(obj), "")?;
            let group = verified_group(&raw.group)?;
            let (lambda, n) = alg_pair(&raw.lambda, &raw.n, group.dim())?;
            Payload::GroupPn { group, lambda, n }
        }
        ModelKind::TrivialGroupoidPn => {
            let raw: RawGroupoid = typed(Value::Object(obj), "")?;
            let (pi_m, n_m) = raw.base.build("/base")?;
            let group = verified_group(&raw.group)?;
            let (lambda_g, n_g) = alg_pair(&raw.lambda, &raw.n, group.dim())?;
            let groupoid = build_trivial_groupoid(pi_m.chart(), &group)
                .map_err(|e| LoadError::Invariant(format!("groupoid: {e}")))?;
            let data = DirectSumPN::new(&groupoid, pi_m, n_m, lambda_g, n_g)
                .map_err(|e| LoadError::Invariant(format!("direct-sum data: {e}")))?;
            Payload::TrivialGroupoidPn {
                groupoid: Box::new(groupoid),
                data: Box::new(data),
                symmetric: raw.symmetric_assembly,
            }
        }
    };
    Ok(ModelFile {
        name,
        digest,
        payload,
        oracle,
    })
}

fn schema(pointer: &str, message: &str) -> LoadError {
    LoadError::Schema {
        pointer: pointer.to_string(),
        message: message.to_string(),
    }
}

fn typed<T: DeserializeOwned>(v: Value, prefix: &str) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let mut pointer = prefix.to_string();
        for seg in e.path().iter() {
            use serde_path_to_error::Segment;
            match seg {
                Segment::Seq { index } => pointer.push_str(&format!("/{index}")),
                Segment::Map { key } | Segment::Enum { variant: key } => {
                    pointer.push('/');
                    pointer.push_str(&key.replace('~', "~0").replace('/', "~1"));
                }
                Segment::Unknown => {}
            }
        }
        LoadError::Schema {
            pointer,
            message: e.into_inner().to_string(),
        }
    })
}

fn expr_error(field: &str, text: &str, e: ExprError) -> LoadError {
    let (position, message) = match e {
        ExprError::Syntax { position, message } => (position, message),
        ExprError::UnknownVariable(v) => {
            let pos = find_identifier(text, &v).unwrap_or(0);
            (pos, format!("unknown variable `{v}`"))
        }
        other => (0, other.to_string()),
    };
    LoadError::Parse {
        field: field.to_string(),
        position,
        message,
    }
}

fn find_identifier(text: &str, name: &str) -> Option<usize> {
    let ident = |c: char| c.is_alphanumeric() || c == '_';
    text.match_indices(name).map(|(i, _)| i).find(|&i| {
        let before = text[..i].chars().next_back().is_none_or(|c| !ident(c));
        let after = text[i + name.len()..].chars().next().is_none_or(|c| !ident(c));
        before && after
    })
}

fn poly(text: &str, chart: &Chart, field: &str) -> Result<Poly> {
    parse_poly(text, chart).map_err(|e| expr_error(field, text, e))
}

fn rational(text: &str, field: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| expr_error(field, text, e))
}

fn oracle_overrides(
    o: OracleOverrides,
) -> Result<(Option<usize>, Option<Rational>, Option<Rational>, Option<(Rational, Rational)>)> {
    let step = o.fd_step.as_deref().map(|s| rational(s, "/oracle/fd_step")).transpose()?;
    let tol = o.tolerance.as_deref().map(|s| rational(s, "/oracle/tolerance")).transpose()?;
    let range = match &o.range {
        Some([a, b]) => Some((rational(a, "/oracle/range/0")?, rational(b, "/oracle/range/1")?)),
        None => None,
    };
    let mut probe = SamplePlan::default();
    if let Some(s) = o.samples {
        probe.count = s;
    }
    if let Some(h) = &step {
        probe.fd_step = h.clone();
    }
    if let Some(t) = &tol {
        probe.tolerance = t.clone();
    }
    if let Some(r) = &range {
        probe.range = r.clone();
    }
    probe.validate().map_err(|e| LoadError::Invariant(format!("/oracle: {e}")))?;
    Ok((o.samples, step, tol, range))
}

fn square<'a>(rows: &'a [Vec<String>], dim: usize, field: &str) -> Result<&'a [Vec<String>]> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(LoadError::Invariant(format!("{field} must be a {dim}×{dim} matrix")));
    }
    Ok(rows)
}

fn rat_matrix(rows: &[Vec<String>], dim: usize, field: &str) -> Result<Vec<Vec<Rational>>> {
    square(rows, dim, field)?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, s)| rational(s, &format!("{field}/{i}/{j}")))
                .collect()
        })
        .collect()
}

fn poly_matrix(rows: &[Vec<String>], chart: &Chart, field: &str) -> Result<Vec<Vec<Poly>>> {
    square(rows, chart.dim(), field)?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, s)| poly(s, chart, &format!("{field}/{i}/{j}")))
                .collect()
        })
        .collect()
}

fn chart(names: &[String], field: &str) -> Result<Chart> {
    Chart::new(names.iter().map(String::as_str)).map_err(|e| LoadError::Invariant(format!("{field}: {e}")))
}

fn alg_pair(lambda: &[Vec<String>], n: &[Vec<String>], dim: usize) -> Result<(AlgBivector, AlgEndo)> {
    let l = AlgBivector::new(rat_matrix(lambda, dim, "/lambda")?)
        .map_err(|e| LoadError::Invariant(format!("/lambda: {e}")))?;
    let n = AlgEndo::new(rat_matrix(n, dim, "/n")?).map_err(|e| LoadError::Invariant(format!("/n: {e}")))?;
    Ok((l, n))
}

fn verified_group(raw: &RawGroup) -> Result<PolyGroup> {
    PolyGroup::new(raw.law("/group")?).map_err(|e| LoadError::Invariant(format!("/group: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifold {
    chart: Vec<String>,
    bivector: Vec<Vec<String>>,
    endomorphism: Vec<Vec<String>>,
}

impl RawManifold {
    fn build(&self, prefix: &str) -> Result<(Bivector, EndoField)> {
        let c = chart(&self.chart, &format!("{prefix}/chart"))?;
        let pm = poly_matrix(&self.bivector, &c, &format!("{prefix}/bivector"))?;
        let p = Bivector::from_matrix(&c, &pm).map_err(|e| LoadError::Invariant(format!("{prefix}/bivector: {e}")))?;
        let nm = poly_matrix(&self.endomorphism, &c, &format!("{prefix}/endomorphism"))?;
        let n = EndoField::from_matrix(&c, nm).map_err(|e| LoadError::Invariant(format!("{prefix}/endomorphism: {e}")))?;
        Ok((p, n))
    }
}

/// `c` is `cᵏᵢⱼ` with one-based `i, j, k`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    i: usize,
    j: usize,
    k: usize,
    c: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    dim: usize,
    #[serde(default)]
    brackets: Vec<RawBracket>,
}

impl RawAlgebra {
    fn table(&self, field: &str) -> Result<StructureTable> {
        if self.dim == 0 {
            return Err(LoadError::Invariant(format!("{field}/dim must be at least 1")));
        }
        let mut entries = Vec::with_capacity(self.brackets.len());
        for (t, b) in self.brackets.iter().enumerate() {
            let at = format!("{field}/brackets/{t}");
            for idx in [b.i, b.j, b.k] {
                if idx == 0 || idx > self.dim {
                    return Err(LoadError::Invariant(format!("{at}: index {idx} outside 1..={}", self.dim)));
                }
            }
            entries.push((b.i - 1, b.j - 1, b.k - 1, rational(&b.c, &format!("{at}/c"))?));
        }
        StructureTable::from_brackets(self.dim, &entries).map_err(|e| LoadError::Invariant(format!("{field}: {e}")))
    }
}

/// Either `{"preset": "heisenberg"}`, `{"preset": "abelian", "dim": n}` or an explicit law
/// with `mu` on `x1..xn, y1..yn` and `inv` on `chart`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    preset: Option<String>,
    dim: Option<usize>,
    chart: Option<Vec<String>>,
    mu: Option<Vec<String>>,
    inv: Option<Vec<String>>,
}

impl RawGroup {
    fn law(&self, field: &str) -> Result<GroupLaw> {
        match (self.preset.as_deref(), &self.chart, &self.mu, &self.inv) {
            (Some("heisenberg"), None, None, None) if self.dim.is_none_or(|d| d == 3) => Ok(GroupLaw::heisenberg()),
            (Some("abelian"), None, None, None) => match self.dim {
                Some(d) if d > 0 => Ok(GroupLaw::abelian(d)),
                _ => Err(LoadError::Invariant(format!("{field}: abelian preset needs dim ≥ 1"))),
            },
            (Some(p), ..) => Err(schema(
                &format!("{field}/preset"),
                &format!("`{p}` is not `heisenberg` or `abelian`, or is mixed with explicit fields"),
            )),
            (None, Some(names), Some(mu), Some(inv)) => {
                let c = chart(names, &format!("{field}/chart"))?;
                let mc = GroupLaw::doubled_chart(c.dim());
                let mu = mu
                    .iter()
                    .enumerate()
                    .map(|(i, s)| poly(s, &mc, &format!("{field}/mu/{i}")))
                    .collect::<Result<Vec<_>>>()?;
                let inv = inv
                    .iter()
                    .enumerate()
                    .map(|(i, s)| poly(s, &c, &format!("{field}/inv/{i}")))
                    .collect::<Result<Vec<_>>>()?;
                GroupLaw::new(&c, &mc, mu, inv).map_err(|e| LoadError::Invariant(format!("{field}: {e}")))
            }
            _ => Err(schema(field, "expected `preset` or all of `chart`, `mu`, `inv`")),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLieAlgebraModel {
    algebra: RawAlgebra,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLambdaN {
    algebra: RawAlgebra,
    lambda: Vec<Vec<String>>,
    n: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupModel {
    group: RawGroup,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupPn {
    group: RawGroup,
    lambda: Vec<Vec<String>>,
    n: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupoid {
    base: RawManifold,
    group: RawGroup,
    lambda: Vec<Vec<String>>,
    n: Vec<Vec<String>>,
    #[serde(default)]
    symmetric_assembly: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_variable_names_the_field() {
        let doc = br#"{"kind":"manifold_pn","chart":["x1","x2"],
            "bivector":[["0","x9"],["-x9","0"]],"endomorphism":[["1","0"],["0","1"]]}"#;
        match parse_model(doc, "m") {
            Err(LoadError::Parse { field, position, .. }) => {
                assert_eq!(field, "/bivector/0/1");
                assert_eq!(position, 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_document_is_a_schema_error() {
        assert!(matches!(parse_model(b"", "m"), Err(LoadError::Schema { .. })));
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let doc = br#"{"kind":"lambda_n","algebra":{"dim":3,"brackets":[{"i":1,"j":2,"k":3,"c":5}]},"lambda":[],"n":[]}"#;
        match parse_model(doc, "m") {
            Err(LoadError::Schema { pointer, .. }) => assert_eq!(pointer, "/algebra/brackets/0/c"),
            other => panic!("{other:?}"),
        }
        let doc = br#"{"kind":"poly_group","group":{"preset":"heisenberg"},"extra":1}"#;
        assert!(matches!(parse_model(doc, "m"), Err(LoadError::Schema { .. })));
        let doc = br#"{"kind":"nope"}"#;
        match parse_model(doc, "m") {
            Err(LoadError::Schema { pointer, .. }) => assert_eq!(pointer, "/kind"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_report_positions() {
        let doc = br#"{"kind":"poly_group","group":{"chart":["g1"],"mu":["x1 + * y1"],"inv":["-g1"]}}"#;
        match parse_model(doc, "m") {
            Err(LoadError::Parse { field, position, .. }) => {
                assert_eq!(field, "/group/mu/0");
                assert_eq!(position, 5);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invariants_are_checked_eagerly() {
        let doc = br#"{"kind":"manifold_pn","chart":["x1","x2"],
            "bivector":[["0","1"],["1","0"]],"endomorphism":[["1","0"],["0","1"]]}"#;
        assert!(matches!(parse_model(doc, "m"), Err(LoadError::Invariant(_))));
        let doc = br#"{"kind":"lambda_n","algebra":{"dim":3},"lambda":[["0","1"],["-1","0"]],
            "n":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#;
        assert!(matches!(parse_model(doc, "m"), Err(LoadError::Invariant(_))));
    }
}
