//! Scenario files: a JSON schema of named declarations and check requests,
//! and the loader that resolves every reference.
//!
//! Declarations are arrays of objects so that declaration order is kept.
//! Scalars are `"p/q"` strings; spaces, points, elements, shapes, operators
//! and maps use the compact literal grammar of the library.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::continuity::{ClosedSample, FunctionSequence, FunctionSpaceEntry, ItemKind, SuiteItem, TestSuite};
use crate::error::{Error, Result};
use crate::literal::Cursor;
use crate::maps::{MapDescriptor, Side};
use crate::operators::{EquivalenceCertificate, MonotoneOperator};
use crate::point::{Point, PointSequence, PointSpace};
use crate::riesz::{RieszSpace, VectorElement};
use crate::scalar::Scalar;
use crate::sequence::{DecreasingWitness, Refusal, SymbolicSequence};
use crate::vmetric::{FunctionTable, Subset, VectorMetric};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub spaces: Vec<SpaceDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub metrics: Vec<MetricDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operators: Vec<OperatorDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sequences: Vec<SequenceDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteDecl>,
    #[serde(default)]
    pub checks: Vec<CheckDecl>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDecl {
    pub name: String,
    /// `line`, `plane`, `finite{a,b}`, `riesz:coord:2`, `product[line,plane]`.
    pub space: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricDecl {
    pub name: String,
    #[serde(flatten)]
    pub spec: MetricSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", rename_all_fields = "kebab-case")]
pub enum MetricSpec {
    /// `entries` are `[x, y, value]` rows over the named finite space.
    Tabulated {
        space: String,
        codomain: String,
        entries: Vec<(String, String, String)>,
    },
    WeightedAbs { a: String },
    PairAbs { b: String, c: String },
    WeightedSum { a: String, b: String },
    WeightedMax { a: String, b: String },
    CoordPair { c: String, e: String },
    AbsoluteValue { codomain: String },
    Biabsolute { left: String, right: String },
    Product { left: String, right: String },
    Double { left: String, right: String },
    Pullback { map: String, metric: String },
    /// `d∞` over the named maps, valued through `base`.
    Uniform { base: String, functions: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub operator: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDecl {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codomain: Option<String>,
    pub map: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceDecl {
    pub name: String,
    pub space: String,
    #[serde(flatten)]
    pub spec: SequenceSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", rename_all_fields = "kebab-case")]
pub enum SequenceSpec {
    Symbolic {
        offset: String,
        #[serde(default)]
        terms: Vec<(String, String)>,
    },
    EventuallyConstant {
        #[serde(default)]
        prefix: Vec<String>,
        tail: String,
    },
    Pair { left: String, right: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteKind {
    Convergent,
    Cauchy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteDecl {
    pub name: String,
    pub kind: SuiteKind,
    pub items: Vec<SuiteItemDecl>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteItemDecl {
    pub sequence: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckDecl {
    pub name: String,
    #[serde(flatten)]
    pub spec: CheckSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Positive,
    SigmaOrderContinuous,
    OrderBounded,
    LatticeHomomorphism,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolicDecl {
    pub offset: String,
    #[serde(default)]
    pub terms: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetDecl {
    pub point: String,
    pub sequences: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedDecl {
    #[serde(default)]
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ranges: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDecl {
    pub map: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundedDecl {
    pub points: Vec<String>,
    pub bound: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", rename_all_fields = "kebab-case")]
pub enum CheckSpec {
    Axioms {
        metric: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        sample: Vec<String>,
    },
    EConverges { metric: String, sequence: String, limit: String },
    ECauchy { metric: String, sequence: String },
    EClosed {
        metric: String,
        #[serde(default)]
        points: Vec<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        ranges: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        suite: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        horizon: Option<u64>,
    },
    Equivalence {
        d: String,
        rho: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        s: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta: Option<String>,
        points: Vec<String>,
    },
    Classify {
        operator: String,
        #[serde(default)]
        require: Vec<Property>,
    },
    Archimedean { space: String },
    Witness { space: String, terms: Vec<(String, String)> },
    VectorialContinuity { map: String, d: String, rho: String, suite: String },
    TopologicalContinuity { map: String, d: String, rho: String, tolerances: Vec<String> },
    VectorialUniform { map: String, d: String, rho: String, suite: String },
    CoincidenceClosed { f: String, g: String, d: String },
    DenseAgreement {
        f: String,
        g: String,
        d: String,
        rho: String,
        points: Vec<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        ranges: Vec<String>,
        suite: String,
    },
    Extension {
        map: String,
        d: String,
        rho: String,
        complete: bool,
        targets: Vec<TargetDecl>,
    },
    Isometry { map: String, operator: String, d: String, rho: String, points: Vec<String> },
    Homeomorphism {
        map: String,
        inverse: String,
        d: String,
        rho: String,
        forward: String,
        backward: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        closed: Vec<ClosedDecl>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        horizon: Option<u64>,
    },
    GraphClosed { map: String, d: String, rho: String, suite: String },
    UniformLimit {
        domain: String,
        codomain: String,
        slope: Vec<String>,
        intercepts: SymbolicDecl,
        limit: String,
        witness: Vec<(String, String)>,
        d: String,
        rho: String,
        suite: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        horizon: Option<u64>,
    },
    FunctionSpace { d: String, entries: Vec<EntryDecl> },
    VectorialBounded { map: String, operator: String, d: String, rho: String, sets: Vec<BoundedDecl> },
    MetricMap { d: String, xs: String, x: String, ys: String, y: String },
    Downarrow { map: String, d: String, rho: String, sequence: String, limit: String },
    SigmaContinuity { operator: String, witness: Vec<(String, String)> },
    Battery {
        battery: String,
        #[serde(default)]
        seed: u64,
    },
}

/// A resolved check, ready to run.
#[derive(Clone, Debug)]
pub enum Task {
    Axioms { metric: VectorMetric, sample: Vec<Point> },
    EConverges { metric: VectorMetric, sequence: PointSequence, limit: Point },
    ECauchy { metric: VectorMetric, sequence: PointSequence },
    EClosed { metric: VectorMetric, subset: Subset, suites: Vec<(PointSequence, Point)>, horizon: Option<u64> },
    Equivalence { d: VectorMetric, rho: VectorMetric, certificate: EquivalenceCertificate, points: Vec<Point> },
    Classify { operator: MonotoneOperator, require: Vec<Property> },
    Archimedean { space: RieszSpace },
    Witness { sequence: std::result::Result<SymbolicSequence, Refusal>, space: RieszSpace },
    VectorialContinuity { map: MapDescriptor, d: VectorMetric, rho: VectorMetric, suite: TestSuite },
    TopologicalContinuity { map: MapDescriptor, d: VectorMetric, rho: VectorMetric, tolerances: Vec<VectorElement> },
    VectorialUniform { map: MapDescriptor, d: VectorMetric, rho: VectorMetric, suite: TestSuite },
    CoincidenceClosed { f: MapDescriptor, g: MapDescriptor, d: VectorMetric },
    DenseAgreement {
        f: MapDescriptor,
        g: MapDescriptor,
        d: VectorMetric,
        rho: VectorMetric,
        subset: Subset,
        witnesses: Vec<(PointSequence, Point)>,
    },
    Extension {
        map: MapDescriptor,
        d: VectorMetric,
        rho: VectorMetric,
        complete: bool,
        targets: Vec<(Point, Vec<PointSequence>)>,
    },
    Isometry { map: MapDescriptor, operator: MonotoneOperator, d: VectorMetric, rho: VectorMetric, points: Vec<Point> },
    Homeomorphism {
        map: MapDescriptor,
        inverse: MapDescriptor,
        d: VectorMetric,
        rho: VectorMetric,
        forward: TestSuite,
        backward: TestSuite,
        closed: Vec<ClosedSample>,
        horizon: Option<u64>,
    },
    GraphClosed { map: MapDescriptor, d: VectorMetric, rho: VectorMetric, suite: Vec<(PointSequence, Point)> },
    UniformLimit {
        family: FunctionSequence,
        limit: MapDescriptor,
        witness: std::result::Result<DecreasingWitness, Refusal>,
        d: VectorMetric,
        rho: VectorMetric,
        suite: TestSuite,
        horizon: Option<u64>,
    },
    FunctionSpace { d: VectorMetric, entries: Vec<(String, FunctionSpaceEntry)> },
    VectorialBounded {
        map: MapDescriptor,
        operator: MonotoneOperator,
        d: VectorMetric,
        rho: VectorMetric,
        sets: Vec<(Vec<Point>, VectorElement)>,
    },
    MetricMap { d: VectorMetric, xs: PointSequence, x: Point, ys: PointSequence, y: Point },
    Downarrow { map: MapDescriptor, d: VectorMetric, rho: VectorMetric, sequence: PointSequence, limit: Point },
    SigmaContinuity { operator: MonotoneOperator, witness: std::result::Result<DecreasingWitness, Refusal> },
    Battery { battery: String, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct ResolvedCheck {
    pub name: String,
    pub task: Task,
}

/// A fully resolved scenario together with its normalized file form.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub checks: Vec<ResolvedCheck>,
}

impl Scenario {
    pub fn name(&self) -> &str {
        &self.file.name
    }

    /// Normalized JSON: literals re-rendered in canonical form.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.file).expect("scenario serializes")
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Load(format!("{}: {e}", path.display())))?;
    load_str(&text)
}

pub fn load_str(text: &str) -> Result<Scenario> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| Error::Load(format!("schema: {e}")))?;
    let mut r = Resolver::new(&file);
    let out = r.resolve_all().map_err(|e| r.locate(e, text))?;
    Ok(Scenario {
        file: out,
        checks: r.checks,
    })
}

fn line_of(text: &str, needle: &str) -> Option<usize> {
    let quoted = format!("\"{needle}\"");
    text.lines().position(|l| l.contains(&quoted)).map(|i| i + 1)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Section {
    Metric,
    Map,
    Sequence,
}

struct Resolver<'a> {
    file: &'a ScenarioFile,
    spaces: HashMap<String, PointSpace>,
    operators: HashMap<String, MonotoneOperator>,
    metrics: HashMap<String, VectorMetric>,
    maps: HashMap<String, (MapDescriptor, String)>,
    sequences: HashMap<String, PointSequence>,
    suites: HashMap<String, TestSuite>,
    stack: Vec<(Section, String)>,
    /// Declaration currently being resolved, for diagnostics.
    context: Option<String>,
    checks: Vec<ResolvedCheck>,
}

fn scalar(s: &str) -> Result<Scalar> {
    s.parse()
}

fn point(s: &str) -> Result<Point> {
    s.parse()
}

fn points(v: &[String]) -> Result<Vec<Point>> {
    v.iter().map(|p| point(p)).collect()
}

fn riesz(s: &str) -> Result<RieszSpace> {
    s.parse()
}

fn terms_in(space: &RieszSpace, terms: &[(String, String)]) -> Result<SymbolicSequence> {
    SymbolicSequence::parse(space, &space.zero().literal(), terms)
}

/// Splits on commas outside brackets; empty input gives no pieces.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '<' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '>' if !s[..i].ends_with('-') => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() {
        out.push(s[start..].trim());
    }
    out
}

fn norm_terms(s: &SymbolicSequence) -> Vec<(String, String)> {
    s.term_literals()
}

impl<'a> Resolver<'a> {
    fn new(file: &'a ScenarioFile) -> Self {
        Resolver {
            file,
            spaces: HashMap::new(),
            operators: HashMap::new(),
            metrics: HashMap::new(),
            maps: HashMap::new(),
            sequences: HashMap::new(),
            suites: HashMap::new(),
            stack: Vec::new(),
            context: None,
            checks: Vec::new(),
        }
    }

    fn locate(&self, e: Error, text: &str) -> Error {
        let (name, what) = match &e {
            Error::Unresolved(n) => (n.clone(), None),
            _ => match &self.context {
                Some(c) => (c.clone(), Some(c.clone())),
                None => return e,
            },
        };
        let line = line_of(text, &name).map(|l| format!(" (line {l})")).unwrap_or_default();
        match (e, what) {
            (Error::Unresolved(n), _) => {
                let inside = self.context.as_deref().map(|c| format!(" in `{c}`")).unwrap_or_default();
                Error::Load(format!("unresolved: {n}{inside}{line}"))
            }
            (other, Some(w)) => Error::Load(format!("`{w}`{line}: {other}")),
            (other, None) => other,
        }
    }

    fn space(&self, name: &str) -> Result<PointSpace> {
        self.spaces.get(name).cloned().ok_or_else(|| Error::Unresolved(name.to_string()))
    }

    fn operator(&self, name: &str) -> Result<MonotoneOperator> {
        self.operators.get(name).cloned().ok_or_else(|| Error::Unresolved(name.to_string()))
    }

    fn suite(&self, name: &str) -> Result<TestSuite> {
        self.suites.get(name).cloned().ok_or_else(|| Error::Unresolved(name.to_string()))
    }

    fn convergent_pairs(&self, name: &str) -> Result<Vec<(PointSequence, Point)>> {
        self.suite(name)?
            .items
            .into_iter()
            .map(|it| {
                let limit = it
                    .limit
                    .ok_or_else(|| Error::InvalidParameter(format!("suite `{name}` has an item without a limit")))?;
                Ok((it.sequence, limit))
            })
            .collect()
    }

    fn enter(&mut self, section: Section, name: &str) -> Result<()> {
        if let Some(at) = self.stack.iter().position(|(s, n)| *s == section && n == name) {
            let cycle: Vec<&str> = self.stack[at..].iter().map(|(_, n)| n.as_str()).collect();
            return Err(Error::Load(format!("cyclic reference: {} -> {name}", cycle.join(" -> "))));
        }
        self.stack.push((section, name.to_string()));
        Ok(())
    }

    fn metric(&mut self, name: &str) -> Result<VectorMetric> {
        if let Some(m) = self.metrics.get(name) {
            return Ok(m.clone());
        }
        let decl = self
            .file
            .metrics
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::Unresolved(name.to_string()))?;
        self.enter(Section::Metric, name)?;
        let (m, _) = self.build_metric(&decl.spec)?;
        self.stack.pop();
        self.metrics.insert(name.to_string(), m.clone());
        Ok(m)
    }

    fn map(&mut self, name: &str) -> Result<MapDescriptor> {
        if let Some((m, _)) = self.maps.get(name) {
            return Ok(m.clone());
        }
        let decl = self
            .file
            .maps
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::Unresolved(name.to_string()))?;
        self.enter(Section::Map, name)?;
        let built = self.build_map(decl)?;
        self.stack.pop();
        self.maps.insert(name.to_string(), built.clone());
        Ok(built.0)
    }

    fn sequence(&mut self, name: &str) -> Result<PointSequence> {
        if let Some(s) = self.sequences.get(name) {
            return Ok(s.clone());
        }
        let decl = self
            .file
            .sequences
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::Unresolved(name.to_string()))?;
        self.enter(Section::Sequence, name)?;
        let (s, _) = self.build_sequence(decl)?;
        self.stack.pop();
        self.sequences.insert(name.to_string(), s.clone());
        Ok(s)
    }

    fn sequences(&mut self, names: &[String]) -> Result<Vec<PointSequence>> {
        names.iter().map(|n| self.sequence(n)).collect()
    }

    fn build_metric(&mut self, spec: &MetricSpec) -> Result<(VectorMetric, MetricSpec)> {
        let norm = |s: &str| -> Result<String> { Ok(scalar(s)?.to_string()) };
        let m = match spec {
            MetricSpec::Tabulated { space, codomain, entries } => {
                let x = self.space(space)?;
                let e = riesz(codomain)?;
                let mut rows = Vec::new();
                let mut norm_rows = Vec::new();
                for (p, q, v) in entries {
                    let (p, q) = (point(p)?, point(q)?);
                    let v = VectorElement::parse(&e, v)?;
                    norm_rows.push((p.to_string(), q.to_string(), v.literal()));
                    rows.push((p, q, v));
                }
                let m = VectorMetric::tabulated(x, e.clone(), &rows)?;
                let spec = MetricSpec::Tabulated {
                    space: space.clone(),
                    codomain: e.to_string(),
                    entries: norm_rows,
                };
                return Ok((m, spec));
            }
            MetricSpec::WeightedAbs { a } => {
                return Ok((VectorMetric::weighted_abs(scalar(a)?)?, MetricSpec::WeightedAbs { a: norm(a)? }))
            }
            MetricSpec::PairAbs { b, c } => {
                return Ok((
                    VectorMetric::pair_abs(scalar(b)?, scalar(c)?)?,
                    MetricSpec::PairAbs { b: norm(b)?, c: norm(c)? },
                ))
            }
            MetricSpec::WeightedSum { a, b } => {
                return Ok((
                    VectorMetric::weighted_sum(scalar(a)?, scalar(b)?)?,
                    MetricSpec::WeightedSum { a: norm(a)?, b: norm(b)? },
                ))
            }
            MetricSpec::WeightedMax { a, b } => {
                return Ok((
                    VectorMetric::weighted_max(scalar(a)?, scalar(b)?)?,
                    MetricSpec::WeightedMax { a: norm(a)?, b: norm(b)? },
                ))
            }
            MetricSpec::CoordPair { c, e } => {
                return Ok((
                    VectorMetric::coord_pair(scalar(c)?, scalar(e)?)?,
                    MetricSpec::CoordPair { c: norm(c)?, e: norm(e)? },
                ))
            }
            MetricSpec::AbsoluteValue { codomain } => {
                let e = riesz(codomain)?;
                return Ok((
                    VectorMetric::absolute_value(e.clone()),
                    MetricSpec::AbsoluteValue { codomain: e.to_string() },
                ));
            }
            MetricSpec::Biabsolute { left, right } => {
                let (l, r) = (riesz(left)?, riesz(right)?);
                return Ok((
                    VectorMetric::biabsolute(l.clone(), r.clone()),
                    MetricSpec::Biabsolute {
                        left: l.to_string(),
                        right: r.to_string(),
                    },
                ));
            }
            MetricSpec::Product { left, right } => VectorMetric::product(self.metric(left)?, self.metric(right)?),
            MetricSpec::Double { left, right } => VectorMetric::double(self.metric(left)?, self.metric(right)?)?,
            MetricSpec::Pullback { map, metric } => VectorMetric::pullback(self.map(map)?, self.metric(metric)?)?,
            MetricSpec::Uniform { base, functions } => {
                let base = self.metric(base)?;
                let fs = functions.iter().map(|f| Ok((f.clone(), self.map(f)?))).collect::<Result<Vec<_>>>()?;
                let first = &fs.first().ok_or(Error::Empty("uniform metric over no functions"))?.1;
                let pts = first
                    .domain()
                    .enumerate()
                    .ok_or_else(|| Error::Unsupported(format!("uniform metric needs a finite domain, got {}", first.domain())))?;
                let rows = fs
                    .iter()
                    .map(|(n, f)| Ok((n.clone(), pts.iter().map(|p| f.apply(p)).collect::<Result<Vec<_>>>()?)))
                    .collect::<Result<Vec<_>>>()?;
                VectorMetric::uniform(base, FunctionTable { points: pts, rows })?
            }
        };
        Ok((m, spec.clone()))
    }

    fn build_map(&mut self, decl: &MapDecl) -> Result<(MapDescriptor, String)> {
        let domain = decl.domain.as_deref().map(|d| self.space(d)).transpose()?;
        let codomain = decl.codomain.as_deref().map(|d| self.space(d)).transpose()?;
        let need = |s: &Option<PointSpace>, what: &str| {
            s.clone()
                .ok_or_else(|| Error::InvalidParameter(format!("map `{}` needs a {what}", decl.name)))
        };
        let lit = decl.map.trim();
        let mut c = Cursor::new(lit);
        let two_names = |c: &mut Cursor<'_>| -> Result<(String, String)> {
            c.expect('(')?;
            let f = c.ident()?.to_string();
            c.expect(',')?;
            let g = c.ident()?.to_string();
            c.expect(')')?;
            c.finish()?;
            Ok((f, g))
        };
        let out = if c.eat_str("identity") {
            c.finish()?;
            (MapDescriptor::identity(need(&domain, "domain")?)?, "identity".to_string())
        } else if c.eat_str("affine:") {
            let (slope, intercept) = if c.eat('[') {
                let s = c.scalar_list(']')?;
                c.expect(']')?;
                c.expect(',')?;
                c.expect('[')?;
                let b = c.scalar_list(']')?;
                c.expect(']')?;
                (s, b)
            } else {
                let s = c.scalar()?;
                c.expect(',')?;
                (vec![s], vec![c.scalar()?])
            };
            c.finish()?;
            let m = MapDescriptor::affine(need(&domain, "domain")?, need(&codomain, "codomain")?, slope, intercept)?;
            let s = m.to_string();
            (m, s)
        } else if let Some(body) = lit.strip_prefix("table{").and_then(|b| b.strip_suffix('}')) {
            let mut pairs = Vec::new();
            for entry in split_top(body) {
                let (x, y) = entry
                    .split_once("->")
                    .ok_or_else(|| Error::Parse(format!("expected `x->y`, got `{entry}`")))?;
                pairs.push((point(x.trim())?, point(y.trim())?));
            }
            let m = MapDescriptor::table(need(&domain, "domain")?, need(&codomain, "codomain")?, pairs)?;
            let s = m.to_string();
            (m, s)
        } else if c.eat_str("pair") {
            let (f, g) = two_names(&mut c)?;
            let m = MapDescriptor::pair(self.map(&f)?, self.map(&g)?)?;
            (m, format!("pair({f},{g})"))
        } else if c.eat_str("product-map") {
            let (f, g) = two_names(&mut c)?;
            let m = MapDescriptor::product_map(self.map(&f)?, self.map(&g)?);
            (m, format!("product-map({f},{g})"))
        } else if c.eat_str("absdiff") {
            let (f, g) = two_names(&mut c)?;
            let m = MapDescriptor::abs_diff(self.map(&f)?, self.map(&g)?)?;
            (m, format!("absdiff({f},{g})"))
        } else if c.eat_str("dist-to-set[") {
            let mut set = Vec::new();
            if !c.eat(']') {
                loop {
                    set.push(Point::parse_from(&mut c)?);
                    if !c.eat(',') {
                        break;
                    }
                }
                c.expect(']')?;
            }
            c.finish()?;
            let metric = self.map_metric(decl)?;
            let m = MapDescriptor::distance_to_set(metric, set)?;
            let s = m.to_string();
            (m, s)
        } else if c.eat_str("dist-to:") {
            let y = Point::parse_from(&mut c)?;
            c.finish()?;
            let metric = self.map_metric(decl)?;
            let m = MapDescriptor::distance_to_point(metric, y)?;
            let s = m.to_string();
            (m, s)
        } else if c.eat_str("proj:") {
            let side = match c.ident()? {
                "left" => Side::Left,
                "right" => Side::Right,
                other => return Err(Error::Parse(format!("unknown projection side `{other}`"))),
            };
            c.finish()?;
            let m = MapDescriptor::projection(need(&domain, "domain")?, side)?;
            let s = m.to_string();
            (m, s)
        } else {
            return Err(Error::Parse(format!("unknown map literal `{lit}`")));
        };
        if let Some(d) = &domain {
            if out.0.domain() != d {
                return Err(Error::SpaceMismatch {
                    left: d.to_string(),
                    right: out.0.domain().to_string(),
                });
            }
        }
        if let Some(d) = &codomain {
            if !out.0.codomain().same_points(d) {
                return Err(Error::SpaceMismatch {
                    left: d.to_string(),
                    right: out.0.codomain().to_string(),
                });
            }
        }
        Ok(out)
    }

    fn map_metric(&mut self, decl: &MapDecl) -> Result<VectorMetric> {
        let name = decl
            .metric
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter(format!("map `{}` needs a metric", decl.name)))?;
        self.metric(name)
    }

    fn build_sequence(&mut self, decl: &SequenceDecl) -> Result<(PointSequence, SequenceSpec)> {
        let space = self.space(&decl.space)?;
        let (s, spec) = match &decl.spec {
            SequenceSpec::Symbolic { offset, terms } => {
                let e = space
                    .coordinate_space()
                    .ok_or_else(|| Error::Incompatible(format!("symbolic sequences need a coordinate space, got {space}")))?;
                let s = SymbolicSequence::parse(&e, offset, terms)?;
                let spec = SequenceSpec::Symbolic {
                    offset: s.offset().literal(),
                    terms: norm_terms(&s),
                };
                (PointSequence::Symbolic(s), spec)
            }
            SequenceSpec::EventuallyConstant { prefix, tail } => {
                let prefix = points(prefix)?;
                let tail = point(tail)?;
                let spec = SequenceSpec::EventuallyConstant {
                    prefix: prefix.iter().map(|p| p.to_string()).collect(),
                    tail: tail.to_string(),
                };
                (PointSequence::EventuallyConstant { prefix, tail }, spec)
            }
            SequenceSpec::Pair { left, right } => {
                let s = PointSequence::pair(self.sequence(left)?, self.sequence(right)?);
                (s, decl.spec.clone())
            }
        };
        s.check_in(&space)?;
        Ok((s, spec))
    }

    fn resolve_all(&mut self) -> Result<ScenarioFile> {
        let file = self.file;
        let mut out = ScenarioFile {
            name: file.name.clone(),
            description: file.description.clone(),
            spaces: Vec::new(),
            metrics: Vec::new(),
            operators: Vec::new(),
            maps: Vec::new(),
            sequences: Vec::new(),
            suites: Vec::new(),
            checks: Vec::new(),
        };
        let mut seen = std::collections::HashSet::new();
        let all_names = file
            .spaces
            .iter()
            .map(|d| &d.name)
            .chain(file.metrics.iter().map(|d| &d.name))
            .chain(file.operators.iter().map(|d| &d.name))
            .chain(file.maps.iter().map(|d| &d.name))
            .chain(file.sequences.iter().map(|d| &d.name))
            .chain(file.suites.iter().map(|d| &d.name))
            .chain(file.checks.iter().map(|d| &d.name));
        for n in all_names {
            if !seen.insert(n.clone()) {
                self.context = Some(n.clone());
                return Err(Error::InvalidParameter(format!("name `{n}` declared twice")));
            }
        }
        for d in &file.spaces {
            self.context = Some(d.name.clone());
            let s: PointSpace = d.space.parse()?;
            out.spaces.push(SpaceDecl {
                name: d.name.clone(),
                space: s.to_string(),
            });
            self.spaces.insert(d.name.clone(), s);
        }
        for d in &file.operators {
            self.context = Some(d.name.clone());
            let (src, tgt) = (riesz(&d.source)?, riesz(&d.target)?);
            let op = MonotoneOperator::parse(&src, &tgt, &d.operator)?;
            out.operators.push(OperatorDecl {
                name: d.name.clone(),
                source: src.to_string(),
                target: tgt.to_string(),
                operator: op.to_string(),
            });
            self.operators.insert(d.name.clone(), op);
        }
        for d in &file.metrics {
            self.context = Some(d.name.clone());
            self.enter(Section::Metric, &d.name)?;
            let (m, spec) = self.build_metric(&d.spec)?;
            self.stack.pop();
            self.metrics.insert(d.name.clone(), m);
            out.metrics.push(MetricDecl {
                name: d.name.clone(),
                spec,
            });
        }
        for d in &file.maps {
            self.context = Some(d.name.clone());
            self.enter(Section::Map, &d.name)?;
            let built = self.build_map(d)?;
            self.stack.pop();
            out.maps.push(MapDecl {
                map: built.1.clone(),
                ..d.clone()
            });
            self.maps.insert(d.name.clone(), built);
        }
        for d in &file.sequences {
            self.context = Some(d.name.clone());
            self.enter(Section::Sequence, &d.name)?;
            let (s, spec) = self.build_sequence(d)?;
            self.stack.pop();
            self.sequences.insert(d.name.clone(), s);
            out.sequences.push(SequenceDecl { spec, ..d.clone() });
        }
        for d in &file.suites {
            self.context = Some(d.name.clone());
            let mut items = Vec::new();
            let mut norm = Vec::new();
            for it in &d.items {
                let sequence = self.sequence(&it.sequence)?;
                let limit = it.limit.as_deref().map(point).transpose()?;
                let kind = match d.kind {
                    SuiteKind::Convergent => {
                        if limit.is_none() {
                            return Err(Error::InvalidParameter(format!(
                                "convergent item `{}` needs a limit",
                                it.sequence
                            )));
                        }
                        ItemKind::Convergent
                    }
                    SuiteKind::Cauchy => ItemKind::Cauchy,
                };
                norm.push(SuiteItemDecl {
                    sequence: it.sequence.clone(),
                    limit: limit.as_ref().map(|p| p.to_string()),
                });
                items.push(SuiteItem { sequence, limit, kind });
            }
            self.suites.insert(d.name.clone(), TestSuite { items });
            out.suites.push(SuiteDecl {
                items: norm,
                ..d.clone()
            });
        }
        for d in &file.checks {
            self.context = Some(d.name.clone());
            let task = self.build_check(&d.spec)?;
            self.checks.push(ResolvedCheck {
                name: d.name.clone(),
                task,
            });
            out.checks.push(d.clone());
        }
        self.context = None;
        Ok(out)
    }

    fn build_check(&mut self, spec: &CheckSpec) -> Result<Task> {
        Ok(match spec {
            CheckSpec::Axioms { metric, sample } => Task::Axioms {
                metric: self.metric(metric)?,
                sample: points(sample)?,
            },
            CheckSpec::EConverges { metric, sequence, limit } => Task::EConverges {
                metric: self.metric(metric)?,
                sequence: self.sequence(sequence)?,
                limit: point(limit)?,
            },
            CheckSpec::ECauchy { metric, sequence } => Task::ECauchy {
                metric: self.metric(metric)?,
                sequence: self.sequence(sequence)?,
            },
            CheckSpec::EClosed {
                metric,
                points: pts,
                ranges,
                suite,
                horizon,
            } => Task::EClosed {
                metric: self.metric(metric)?,
                subset: Subset {
                    points: points(pts)?,
                    ranges: self.sequences(ranges)?,
                },
                suites: suite.as_deref().map(|s| self.convergent_pairs(s)).transpose()?.unwrap_or_default(),
                horizon: *horizon,
            },
            CheckSpec::Equivalence {
                d,
                rho,
                t,
                s,
                alpha,
                beta,
                points: pts,
            } => {
                let certificate = match (t, s, alpha, beta) {
                    (Some(t), Some(s), None, None) => EquivalenceCertificate::Operators {
                        t: self.operator(t)?,
                        s: self.operator(s)?,
                    },
                    (None, None, Some(a), Some(b)) => EquivalenceCertificate::ScalarPair {
                        alpha: scalar(a)?,
                        beta: scalar(b)?,
                    },
                    _ => {
                        return Err(Error::InvalidParameter(
                            "equivalence needs either operators t and s or scalars alpha and beta".into(),
                        ))
                    }
                };
                Task::Equivalence {
                    d: self.metric(d)?,
                    rho: self.metric(rho)?,
                    certificate,
                    points: points(pts)?,
                }
            }
            CheckSpec::Classify { operator, require } => Task::Classify {
                operator: self.operator(operator)?,
                require: require.clone(),
            },
            CheckSpec::Archimedean { space } => Task::Archimedean { space: riesz(space)? },
            CheckSpec::Witness { space, terms } => {
                let e = riesz(space)?;
                let s = terms_in(&e, terms)?;
                Task::Witness {
                    sequence: DecreasingWitness::new(s).map(DecreasingWitness::into_sequence),
                    space: e,
                }
            }
            CheckSpec::VectorialContinuity { map, d, rho, suite } => Task::VectorialContinuity {
                map: self.map(map)?,
                d: self.metric(d)?,
                rho: self.metric(rho)?,
                suite: self.suite(suite)?,
            },
            CheckSpec::TopologicalContinuity { map, d, rho, tolerances } => {
                let rho = self.metric(rho)?;
                let tolerances = tolerances
                    .iter()
                    .map(|b| VectorElement::parse(rho.codomain(), b))
                    .collect::<Result<Vec<_>>>()?;
                Task::TopologicalContinuity {
                    map: self.map(map)?,
                    d: self.metric(d)?,
                    rho,
                    tolerances,
                }
            }
            CheckSpec::VectorialUniform { map, d, rho, suite } => Task::VectorialUniform {
                map: self.map(map)?,
                d: self.metric(d)?,
                rho: self.metric(rho)?,
                suite: self.suite(suite)?,
            },
            CheckSpec::CoincidenceClosed { f, g, d } => Task::CoincidenceClosed {
                f: self.map(f)?,
                g: self.map(g)?,
                d: self.metric(d)?,
            },
            CheckSpec::DenseAgreement {
                f,
                g,
                d,
                rho,
                points: pts,
                ranges,
                suite,
            } => Task::DenseAgreement {
                f: self.map(f)?,
                g: self.map(g)?,
                d: self.metric(d)?,
                rho: self.metric(rho)?,
                subset: Subset {
                    points: points(pts)?,
                    ranges: self.sequences(ranges)?,
                },
                witnesses: self.convergent_pairs(suite)?,
            },
            CheckSpec::Extension {
                map,
                d,
                rho,
                complete,
                targets,
            } => Task::Extension {
                map: self.map(map)?,
                d: self.metric(d)?,
                rho: self.metric(rho)?,
                complete: *complete,
                targets: targets
                    .iter()
                    .map(|t| Ok((point(&t.point)?, self.sequences(&t.sequences)?)))
                    .collect::<Result<Vec<_>>>()?,
            },
            CheckSpec::Isometry {
                map,
                operator,
                d,
                rho,
                points: pts,
            } => Task::Isometry {
                map: self.map(map)?,
                operator: self.operator(operator)?,
                d: self.metric(d)?,
                rho: self.metric(rho)?,
                points: points(pts)?,
            },
            CheckSpec::Homeomorphism {
                map,
                inverse,
                d,
                rho,
                forward,
                backward,
                closed,
                horizon,
            } => Task::Homeomorphism {
                map: self.map(map)?,
                inverse: self.map(inverse)?,
                d: self.metric(d)?,
                rho: self.metric(rho)?,
                forward: self.suite(forward)?,
                backward: self.suite(backward)?,
                closed: closed
                    .iter()
                    .map(|c| {
                        Ok(ClosedSample {
                            subset: Subset {
                                points: points(&c.points)?,
                                ranges: self.sequences(&c.ranges)?,
                            },
                            suites: c
                                .suite
                                .as_deref()
                                .map(|s| self.convergent_pairs(s))
                                .transpose()?
                                .unwrap_or_default(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
                horizon: *horizon,
            },
            CheckSpec::GraphClosed { map, d, rho, suite } => Task::GraphClosed {
                map: self.map(map)?,
                d: self.metric(d)?,
                rho: self.metric(rho)?,
                suite: self.convergent_pairs(suite)?,
            },
            CheckSpec::UniformLimit {
                domain,
                codomain,
                slope,
                intercepts,
                limit,
                witness,
                d,
                rho,
                suite,
                horizon,
            } => {
                let (x, y) = (self.space(domain)?, self.space(codomain)?);
                let ey = y
                    .coordinate_space()
                    .ok_or_else(|| Error::Incompatible(format!("function sequences need a coordinate codomain, got {y}")))?;
                let slope = slope.iter().map(|s| scalar(s)).collect::<Result<Vec<_>>>()?;
                let c = SymbolicSequence::parse(&ey, &intercepts.offset, &intercepts.terms)?;
                let rho = self.metric(rho)?;
                let a = terms_in(rho.codomain(), witness)?;
                Task::UniformLimit {
                    family: FunctionSequence::new(x, y, slope, c)?,
                    limit: self.map(limit)?,
                    witness: DecreasingWitness::new(a),
                    d: self.metric(d)?,
                    rho,
                    suite: self.suite(suite)?,
                    horizon: *horizon,
                }
            }
            CheckSpec::FunctionSpace { d, entries } => Task::FunctionSpace {
                d: self.metric(d)?,
                entries: entries
                    .iter()
                    .map(|e| {
                        Ok((
                            e.map.clone(),
                            FunctionSpaceEntry {
                                map: self.map(&e.map)?,
                                certificate: e.certificate.as_deref().map(|c| self.operator(c)).transpose()?,
                            },
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?,
            },
            CheckSpec::VectorialBounded {
                map,
                operator,
                d,
                rho,
                sets,
            } => {
                let d = self.metric(d)?;
                let sets = sets
                    .iter()
                    .map(|s| Ok((points(&s.points)?, VectorElement::parse(d.codomain(), &s.bound)?)))
                    .collect::<Result<Vec<_>>>()?;
                Task::VectorialBounded {
                    map: self.map(map)?,
                    operator: self.operator(operator)?,
                    d,
                    rho: self.metric(rho)?,
                    sets,
                }
            }
            CheckSpec::MetricMap { d, xs, x, ys, y } => Task::MetricMap {
                d: self.metric(d)?,
                xs: self.sequence(xs)?,
                x: point(x)?,
                ys: self.sequence(ys)?,
                y: point(y)?,
            },
            CheckSpec::Downarrow {
                map,
                d,
                rho,
                sequence,
                limit,
            } => Task::Downarrow {
                map: self.map(map)?,
                d: self.metric(d)?,
                rho: self.metric(rho)?,
                sequence: self.sequence(sequence)?,
                limit: point(limit)?,
            },
            CheckSpec::SigmaContinuity { operator, witness } => {
                let op = self.operator(operator)?;
                let a = terms_in(op.source(), witness)?;
                Task::SigmaContinuity {
                    operator: op,
                    witness: DecreasingWitness::new(a),
                }
            }
            CheckSpec::Battery { battery, seed } => {
                if !crate::battery::CATALOG.iter().any(|(n, _)| n == battery) {
                    return Err(Error::InvalidParameter(format!("unknown battery `{battery}`")));
                }
                Task::Battery {
                    battery: battery.clone(),
                    seed: *seed,
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
  "name": "minimal",
  "spaces": [{"name": "X", "space": "finite{p,q,r}"}],
  "metrics": [{"name": "d", "kind": "tabulated", "space": "X", "codomain": "reals",
               "entries": [["p","q","1"],["q","r","1"],["p","r","2/2"]]}],
  "checks": [{"name": "axioms", "kind": "axioms", "metric": "d"}]
}"#;

    #[test]
    fn minimal_loads() {
        let s = load_str(MINIMAL).unwrap();
        assert_eq!(s.checks.len(), 1);
        assert!(matches!(s.checks[0].task, Task::Axioms { .. }));
        assert_eq!(s.name(), "minimal");
    }

    #[test]
    fn unresolved_metric() {
        let text = MINIMAL.replace(r#""metric": "d""#, r#""metric": "rho2""#);
        let e = load_str(&text).unwrap_err().to_string();
        assert!(e.contains("unresolved: rho2"), "{e}");
        assert!(e.contains("line 6"), "{e}");
    }

    #[test]
    fn asymmetric_entry_names_the_pair() {
        let text = MINIMAL.replace(r#"["p","r","2/2"]"#, r#"["p","r","2"],["r","p","3"]"#);
        let e = load_str(&text).unwrap_err().to_string();
        assert!(e.contains("(p, r)") || e.contains("(r, p)"), "{e}");
    }

    #[test]
    fn normalization_is_idempotent() {
        let s = load_str(MINIMAL).unwrap();
        let once = s.to_json();
        assert!(once.contains(r#""1""#) && !once.contains("2/2"));
        let twice = load_str(&once).unwrap().to_json();
        assert_eq!(once, twice);
    }

    #[test]
    fn cycles_are_reported() {
        let text = r#"{
  "name": "cycle",
  "spaces": [{"name": "X", "space": "line"}],
  "metrics": [{"name": "d", "kind": "pullback", "map": "f", "metric": "d"}],
  "maps": [{"name": "f", "map": "dist-to:0", "metric": "d"}],
  "checks": []
}"#;
        let e = load_str(text).unwrap_err().to_string();
        assert!(e.contains("cyclic"), "{e}");
    }

    #[test]
    fn schema_errors_carry_line() {
        let e = load_str("{\n \"name\": 3\n}").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
    }

    #[test]
    fn map_literals() {
        let text = r#"{
  "name": "maps",
  "spaces": [{"name": "L", "space": "line"}, {"name": "P", "space": "product[line,line]"},
             {"name": "F", "space": "finite{a,b}"}],
  "metrics": [{"name": "abs", "kind": "absolute-value", "codomain": "reals"}],
  "maps": [
    {"name": "f", "domain": "L", "codomain": "L", "map": "affine:2,1"},
    {"name": "g", "domain": "L", "codomain": "L", "map": "identity"},
    {"name": "h", "map": "pair(f, g)"},
    {"name": "k", "map": "absdiff(f,g)"},
    {"name": "t", "domain": "F", "codomain": "F", "map": "table{a->b, b->a}"},
    {"name": "p", "domain": "P", "map": "proj:right"},
    {"name": "u", "map": "dist-to:0", "metric": "abs"}
  ]
}"#;
        let s = load_str(text).unwrap();
        let maps: Vec<&str> = s.file.maps.iter().map(|m| m.map.as_str()).collect();
        assert_eq!(maps, ["affine:2,1", "identity", "pair(f,g)", "absdiff(f,g)", "table{a->b,b->a}", "proj:right", "dist-to:0"]);
    }
}
