//! The JSON job format. Every struct rejects unknown fields.

use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

fn default_field() -> String {
    "F32003".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    #[serde(default = "default_field")]
    pub field: String,
    pub variables: Vec<String>,
    /// Generators of `I` in `S/I`.
    #[serde(default)]
    pub ideal: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeSpec {
    Projective,
    AffineGraded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextSpec {
    pub w: String,
    pub mode: ModeSpec,
}

/// `e1: ⊕O(twists_1) -> ⊕O(twists_0)`, `e0: ⊕O(twists_0) -> ⊕O(twists_1)(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfSpec {
    pub twists_1: Vec<i64>,
    pub twists_0: Vec<i64>,
    pub e1: Vec<Vec<String>>,
    pub e0: Vec<Vec<String>>,
}

/// `coker(relations: ⊕R_Y(rel_twists) -> ⊕R_Y(gen_twists))` over `R_Y = R/(W)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub gen_twists: Vec<i64>,
    pub rel_twists: Vec<i64>,
    pub relations: Vec<Vec<String>>,
}

/// A map `⊕O(source) -> ⊕O(target)` over `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObjectSpec {
    Mf(MfSpec),
    Module(ModuleSpec),
    Map(MapSpec),
}

/// Named standard spaces: `P1` (`W = x0`), `P2` (`W = x2`), `A1` (`k[u,v]`, `W = uv`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum SpaceName {
    #[value(name = "P1", alias = "p1")]
    P1,
    #[value(name = "P2", alias = "p2")]
    P2,
    #[value(name = "A1", alias = "a1")]
    A1,
}

impl SpaceName {
    pub fn ring(self) -> RingSpec {
        let vars: &[&str] = match self {
            SpaceName::P1 => &["x0", "x1"],
            SpaceName::P2 => &["x0", "x1", "x2"],
            SpaceName::A1 => &["u", "v"],
        };
        RingSpec { field: default_field(), variables: vars.iter().map(|s| s.to_string()).collect(), ideal: vec![] }
    }

    pub fn context(self) -> ContextSpec {
        match self {
            SpaceName::P1 => ContextSpec { w: "x0".into(), mode: ModeSpec::Projective },
            SpaceName::P2 => ContextSpec { w: "x2".into(), mode: ModeSpec::Projective },
            SpaceName::A1 => ContextSpec { w: "u*v".into(), mode: ModeSpec::AffineGraded },
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModelSpec {
    Naive,
    #[default]
    Hyper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    P1Small,
    P2Small,
    A1Affine,
    Empty,
}

impl Profile {
    pub fn space(self) -> Option<SpaceName> {
        match self {
            Profile::P1Small => Some(SpaceName::P1),
            Profile::P2Small => Some(SpaceName::P2),
            Profile::A1Affine => Some(SpaceName::A1),
            Profile::Empty => None,
        }
    }
}

/// Options for commands that need the vanishing threshold of `X`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdFlags {
    /// Override `n0`.
    #[serde(default)]
    pub threshold: Option<i64>,
    /// Accept a scanned threshold on a ring that is not a polynomial ring.
    #[serde(default)]
    pub acknowledge_scanned: bool,
}

fn default_bound() -> u32 {
    6
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", content = "flags", rename_all = "kebab-case")]
pub enum Command {
    #[serde(rename_all = "kebab-case")]
    Verify { object: String },
    Hom(HomFlags),
    Compose(ComposeFlags),
    Cech(CechFlags),
    CechHh(CechHhFlags),
    Stabilize(StabilizeFlags),
    Contractible(PredicateFlags),
    Prop28(PredicateFlags),
    #[serde(rename_all = "kebab-case")]
    Coker { object: String },
    #[serde(rename_all = "kebab-case")]
    FromModule { map: String },
    ExtTable(ExtTableFlags),
    StableHom(StableHomFlags),
    RelPerfect(RelPerfectFlags),
    Suite(SuiteFlags),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Hom(_) => "hom",
            Command::Compose(_) => "compose",
            Command::Cech(_) => "cech",
            Command::CechHh(_) => "cech-hh",
            Command::Stabilize(_) => "stabilize",
            Command::Contractible(_) => "contractible",
            Command::Prop28(_) => "prop28",
            Command::Coker { .. } => "coker",
            Command::FromModule { .. } => "from-module",
            Command::ExtTable(_) => "ext-table",
            Command::StableHom(_) => "stable-hom",
            Command::RelPerfect(_) => "rel-perfect",
            Command::Suite(_) => "suite",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomFlags {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub model: ModelSpec,
    /// Replace the target by `F[shift](twist)`.
    #[serde(default)]
    pub shift: i64,
    #[serde(default)]
    pub twist: i64,
    #[serde(default)]
    pub threshold: ThresholdFlags,
}

/// `β∘α` for `α ∈ Hom(source, middle)`, `β ∈ Hom(middle, target)` given in
/// the canonical bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeFlags {
    pub source: String,
    pub middle: String,
    pub target: String,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    #[serde(default)]
    pub model: ModelSpec,
    #[serde(default)]
    pub threshold: ThresholdFlags,
}

/// `H^p(X, O(n))` for `n` in `twist..=twist_to` and `p` as given, or all `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CechFlags {
    pub twist: i64,
    #[serde(default)]
    pub twist_to: Option<i64>,
    #[serde(default)]
    pub p: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CechHhFlags {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub q: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilizeFlags {
    pub source: String,
    pub target: String,
    /// A fixed level instead of the least certified one.
    #[serde(default)]
    pub level: Option<u32>,
    #[serde(default)]
    pub threshold: ThresholdFlags,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredicateFlags {
    pub object: String,
    /// Cap on the irrelevant-power search.
    #[serde(default)]
    pub bound: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtTableFlags {
    pub source: String,
    pub module: String,
    pub q_from: i64,
    pub q_to: i64,
    /// Twist the module by `-⌊q/2⌋d` in row `q`.
    #[serde(default)]
    pub normalized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StableHomFlags {
    pub source: String,
    pub module: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelPerfectFlags {
    pub module: String,
    #[serde(default = "default_bound")]
    pub bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteFlags {
    pub profile: Profile,
    #[serde(default)]
    pub seed: u64,
}

/// One job: where it runs, the named inputs, and what to do with them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    /// Shorthand for `ring` and `context`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<ContextSpec>,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectSpec>,
    pub command: Command,
}

/// A single object on disk, with the ring and context it lives over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<ContextSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mf: Option<MfSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSpec>,
}
