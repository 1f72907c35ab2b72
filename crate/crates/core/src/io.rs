//! JSON file formats for instances, direction oracles and witnesses.
//!
//! Files are compact canonical JSON (UTF-8, one line plus a trailing
//! newline) with keys in struct declaration order. Coordinates and dimension
//! indices are 1-based and free slice entries are the string `"*"`.
//!
//! Instance file keys: `format_version, n, k, representation, values, metadata`.
//! `values` lists the image of every point in canonical index order
//! `sum_i (x_i - 1) * n^(i-1)`.
//!
//! Oracle file keys: `format_version, n, k, representation, values, source_hash`,
//! with `representation = "direction-table"` and each value a list of `k`
//! strings from `"up"`, `"down"`, `"zero"`.
//!
//! Witness file keys: `format_version, problem, instance_hash, type`, then the
//! payload of the type: `x` (UT, O1), `x, y` (UTV1), `slice, x, y` (UTV2,
//! OV1), `slice, x, y, i` (OV2), `slice, x, i` (OV3).

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::generators::{GeneratorConfig, RNG_ALGORITHM};
use crate::lattice::{LatticeSpec, Point, Slice, SliceEntry};
use crate::opdc::{Direction, DirectionOracle, OpdcSolution};
use crate::tarski::{SutSolution, TarskiFunction};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("instance hash mismatch: witness was made for {witness}, instance is {instance}")]
    HashMismatch { witness: String, instance: String },
    #[error("{0}")]
    Unsupported(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field {
        field: field.into(),
        message: message.into(),
    }
}

fn to_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("file types always serialize");
    s.push('\n');
    s
}

/// Generator provenance stored alongside an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub kind: String,
    pub seed: u64,
    pub rng: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutations: Option<usize>,
}

impl Metadata {
    pub fn from_config(cfg: &GeneratorConfig) -> Self {
        use crate::generators::GeneratorKind as K;
        Self {
            kind: cfg.kind.as_str().to_string(),
            seed: cfg.seed,
            rng: RNG_ALGORITHM.to_string(),
            target: match cfg.kind {
                K::Attractor => cfg.target.as_ref().map(|t| t.coords().to_vec()),
                _ => None,
            },
            mutations: (cfg.kind == K::Mutated).then_some(cfg.mutations),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub format_version: u32,
    pub n: u32,
    pub k: usize,
    pub representation: String,
    pub values: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Serialize)]
struct HashView<'a, V> {
    n: u32,
    k: usize,
    values: &'a V,
}

fn content_hash<V: Serialize>(n: u32, k: usize, values: &V) -> String {
    let bytes = serde_json::to_vec(&HashView { n, k, values }).expect("serializable");
    let digest = Sha256::digest(&bytes);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn check_header(version: u32, n: u32, k: usize) -> Result<LatticeSpec, FormatError> {
    if version != FORMAT_VERSION {
        return Err(FormatError::Version(version));
    }
    LatticeSpec::new(n, k).map_err(|e| field_err("n/k", e.to_string()))
}

impl InstanceFile {
    /// Requires a table-backed function.
    pub fn from_function(f: &TarskiFunction, metadata: Option<Metadata>) -> Result<Self, FormatError> {
        let table = f
            .table()
            .ok_or_else(|| FormatError::Unsupported("only table-backed functions serialize".into()))?;
        Ok(Self {
            format_version: FORMAT_VERSION,
            n: f.spec().n(),
            k: f.spec().k(),
            representation: "table".into(),
            values: table.iter().map(|p| p.coords().to_vec()).collect(),
            metadata,
        })
    }

    /// Parses and validates every invariant of the format.
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: InstanceFile = serde_json::from_str(text)?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<LatticeSpec, FormatError> {
        let spec = check_header(self.format_version, self.n, self.k)?;
        if self.representation != "table" {
            return Err(field_err(
                "representation",
                format!("expected \"table\", found {:?}", self.representation),
            ));
        }
        if self.values.len() != spec.size() {
            return Err(field_err(
                "values",
                format!("expected n^k = {} entries, found {}", spec.size(), self.values.len()),
            ));
        }
        for (j, v) in self.values.iter().enumerate() {
            if let Err(e) = spec.check(&Point::new(v.clone())) {
                return Err(field_err(format!("values[{j}]"), e.to_string()));
            }
        }
        Ok(spec)
    }

    pub fn to_function(&self) -> Result<TarskiFunction, FormatError> {
        let spec = self.validate()?;
        let table = self.values.iter().cloned().map(Point::new).collect();
        TarskiFunction::from_table(spec, table).map_err(|e| field_err("values", e.to_string()))
    }

    pub fn to_text(&self) -> String {
        to_line(self)
    }

    /// `sha256:<hex>` over the compact JSON of `{n, k, values}`.
    pub fn content_hash(&self) -> String {
        content_hash(self.n, self.k, &self.values)
    }
}

/// Canonical text of a table-backed function, without metadata.
pub fn serialize_instance(f: &TarskiFunction) -> Result<String, FormatError> {
    Ok(InstanceFile::from_function(f, None)?.to_text())
}

pub fn parse_instance(text: &str) -> Result<TarskiFunction, FormatError> {
    InstanceFile::parse(text)?.to_function()
}

/// Content hash of a table-backed function, as recorded in witness files.
pub fn instance_hash(f: &TarskiFunction) -> Result<String, FormatError> {
    Ok(InstanceFile::from_function(f, None)?.content_hash())
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "up" => Ok(Direction::Up),
            "down" => Ok(Direction::Down),
            "zero" => Ok(Direction::Zero),
            other => Err(de::Error::custom(format!(
                "direction must be \"up\", \"down\" or \"zero\", found {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleFile {
    pub format_version: u32,
    pub n: u32,
    pub k: usize,
    pub representation: String,
    pub values: Vec<Vec<Direction>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_hash: Option<String>,
}

impl OracleFile {
    /// Materializes every row of `d`.
    pub fn from_oracle(d: &DirectionOracle, source_hash: Option<String>) -> Result<Self, FormatError> {
        let values = d.rows().map_err(|e| FormatError::Unsupported(e.to_string()))?;
        Ok(Self {
            format_version: FORMAT_VERSION,
            n: d.spec().n(),
            k: d.spec().k(),
            representation: "direction-table".into(),
            values,
            source_hash,
        })
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: OracleFile = serde_json::from_str(text)?;
        file.to_oracle()?;
        Ok(file)
    }

    pub fn to_oracle(&self) -> Result<DirectionOracle, FormatError> {
        let spec = check_header(self.format_version, self.n, self.k)?;
        if self.representation != "direction-table" {
            return Err(field_err(
                "representation",
                format!("expected \"direction-table\", found {:?}", self.representation),
            ));
        }
        if self.values.len() != spec.size() {
            return Err(field_err(
                "values",
                format!("expected n^k = {} entries, found {}", spec.size(), self.values.len()),
            ));
        }
        if let Some(j) = self.values.iter().position(|r| r.len() != spec.k()) {
            return Err(field_err(
                format!("values[{j}]"),
                format!("expected {} directions", spec.k()),
            ));
        }
        DirectionOracle::from_table(spec, self.values.clone()).map_err(|e| field_err("values", e.to_string()))
    }

    pub fn to_text(&self) -> String {
        to_line(self)
    }

    pub fn content_hash(&self) -> String {
        content_hash(self.n, self.k, &self.values)
    }
}

/// Either kind of problem file.
#[derive(Debug, Clone)]
pub enum LoadedInstance {
    Tarski(InstanceFile),
    Oracle(OracleFile),
}

#[derive(Deserialize)]
struct Probe {
    representation: Option<String>,
}

/// Loads an instance or oracle file, dispatching on `representation`.
pub fn parse_problem_file(text: &str) -> Result<LoadedInstance, FormatError> {
    let probe: Probe = serde_json::from_str(text)?;
    match probe.representation.as_deref() {
        Some("table") => Ok(LoadedInstance::Tarski(InstanceFile::parse(text)?)),
        Some("direction-table") => Ok(LoadedInstance::Oracle(OracleFile::parse(text)?)),
        Some(other) => Err(field_err("representation", format!("unknown representation {other:?}"))),
        None => Err(field_err("representation", "missing")),
    }
}

impl Serialize for SliceEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SliceEntry::Free => s.serialize_str("*"),
            SliceEntry::Fixed(v) => s.serialize_u32(*v),
        }
    }
}

impl<'de> Deserialize<'de> for SliceEntry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(SliceEntry::Fixed(v)),
            Raw::Str(s) if s == "*" => Ok(SliceEntry::Free),
            Raw::Str(s) => Err(de::Error::custom(format!(
                "slice entry must be an integer or \"*\", found {s:?}"
            ))),
        }
    }
}

impl Serialize for Slice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Slice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Slice::new(Vec::<SliceEntry>::deserialize(d)?))
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Point::new(Vec::<u32>::deserialize(d)?))
    }
}

/// A solution of either problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Sut(SutSolution),
    Opdc(OpdcSolution),
}

impl Witness {
    pub fn problem(&self) -> &'static str {
        match self {
            Witness::Sut(_) => "sut",
            Witness::Opdc(_) => "opdc",
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Witness::Sut(s) => s.tag(),
            Witness::Opdc(s) => s.tag(),
        }
    }
}

impl From<SutSolution> for Witness {
    fn from(s: SutSolution) -> Self {
        Witness::Sut(s)
    }
}

impl From<OpdcSolution> for Witness {
    fn from(s: OpdcSolution) -> Self {
        Witness::Opdc(s)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type")]
enum Payload {
    UT { x: Point },
    UTV1 { x: Point, y: Point },
    UTV2 { slice: Slice, x: Point, y: Point },
    O1 { x: Point },
    OV1 { slice: Slice, x: Point, y: Point },
    OV2 { slice: Slice, x: Point, y: Point, i: usize },
    OV3 { slice: Slice, x: Point, i: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawWitness {
    format_version: u32,
    problem: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    instance_hash: Option<String>,
    #[serde(flatten)]
    payload: Payload,
}

/// A witness with the hash of the instance it was produced for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFile {
    pub witness: Witness,
    pub instance_hash: Option<String>,
}

impl WitnessFile {
    pub fn new(witness: impl Into<Witness>, instance_hash: Option<String>) -> Self {
        Self {
            witness: witness.into(),
            instance_hash,
        }
    }

    pub fn to_text(&self) -> String {
        let payload = match self.witness.clone() {
            Witness::Sut(SutSolution::FixedPoint(x)) => Payload::UT { x },
            Witness::Sut(SutSolution::MonotonicityViolation { x, y }) => Payload::UTV1 { x, y },
            Witness::Sut(SutSolution::SliceUniquenessViolation { slice, x, y }) => Payload::UTV2 { slice, x, y },
            Witness::Opdc(OpdcSolution::AllZero(x)) => Payload::O1 { x },
            Witness::Opdc(OpdcSolution::TwoZeroPoints { slice, x, y }) => Payload::OV1 { slice, x, y },
            Witness::Opdc(OpdcSolution::AdjacentUpDown { slice, x, y, i }) => Payload::OV2 { slice, x, y, i },
            Witness::Opdc(OpdcSolution::BoundaryEscape { slice, x, i }) => Payload::OV3 { slice, x, i },
        };
        to_line(&RawWitness {
            format_version: FORMAT_VERSION,
            problem: self.witness.problem().to_string(),
            instance_hash: self.instance_hash.clone(),
            payload,
        })
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let raw: RawWitness = serde_json::from_str(text)?;
        if raw.format_version != FORMAT_VERSION {
            return Err(FormatError::Version(raw.format_version));
        }
        let witness = match raw.payload {
            Payload::UT { x } => Witness::Sut(SutSolution::FixedPoint(x)),
            Payload::UTV1 { x, y } => Witness::Sut(SutSolution::MonotonicityViolation { x, y }),
            Payload::UTV2 { slice, x, y } => Witness::Sut(SutSolution::SliceUniquenessViolation { slice, x, y }),
            Payload::O1 { x } => Witness::Opdc(OpdcSolution::AllZero(x)),
            Payload::OV1 { slice, x, y } => Witness::Opdc(OpdcSolution::TwoZeroPoints { slice, x, y }),
            Payload::OV2 { slice, x, y, i } => Witness::Opdc(OpdcSolution::AdjacentUpDown { slice, x, y, i }),
            Payload::OV3 { slice, x, i } => Witness::Opdc(OpdcSolution::BoundaryEscape { slice, x, i }),
        };
        if raw.problem != witness.problem() {
            return Err(field_err(
                "problem",
                format!(
                    "type {} belongs to problem {:?}, file says {:?}",
                    witness.tag(),
                    witness.problem(),
                    raw.problem
                ),
            ));
        }
        Ok(Self {
            witness,
            instance_hash: raw.instance_hash,
        })
    }

    /// Rejects a witness whose recorded hash differs from `hash`. Witnesses
    /// without a hash are accepted.
    pub fn check_hash(&self, hash: &str) -> Result<(), FormatError> {
        match &self.instance_hash {
            Some(h) if h != hash => Err(FormatError::HashMismatch {
                witness: h.clone(),
                instance: hash.to_string(),
            }),
            _ => Ok(()),
        }
    }
}
