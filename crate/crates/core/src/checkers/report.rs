use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cycle::Solution;
use crate::linear_flow::Point2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Property {
    Transitivity,
    NonMinimality,
    DensePeriodicity,
    NonSensitivity,
    NonEquicontinuity,
    UniformityAxioms,
}

impl Property {
    /// The five properties asserted about the shift action, in order.
    pub const CORE: [Property; 5] = [
        Property::Transitivity,
        Property::NonMinimality,
        Property::DensePeriodicity,
        Property::NonSensitivity,
        Property::NonEquicontinuity,
    ];
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Outcome of a checker for the property it is named after.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Falsified,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Falsified => "falsified",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// A typed value bound inside a witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Solution(Solution),
    /// An element of the acting group `(ℝ, +)`.
    Group(f64),
    /// The time index `t` of a gauge `d_t`.
    Gauge(f64),
    Distance(f64),
    Point(Point2),
    Real(f64),
}

impl Value {
    pub fn as_solution(&self) -> Option<Solution> {
        match self {
            Value::Solution(s) => Some(*s),
            _ => None,
        }
    }

    pub fn as_point(&self) -> Option<Point2> {
        match self {
            Value::Point(p) => Some(*p),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match *self {
            Value::Group(v) | Value::Gauge(v) | Value::Distance(v) | Value::Real(v) => Some(v),
            _ => None,
        }
    }
}

/// Named bindings that together witness one claim of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub bindings: BTreeMap<String, Value>,
}

impl Witness {
    pub fn new(label: impl Into<String>) -> Self {
        Witness {
            label: label.into(),
            bindings: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: Value) -> Self {
        self.bindings.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name)
    }
}

/// A sampling parameter recorded alongside a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(u64),
    Real(f64),
    Text(String),
}

impl From<u64> for Param {
    fn from(v: u64) -> Self {
        Param::Int(v)
    }
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as u64)
    }
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Real(v)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub property: Property,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub constants: BTreeMap<String, f64>,
    pub sampling: BTreeMap<String, Param>,
    pub flags: Vec<String>,
}

impl WitnessReport {
    pub fn new(property: Property, status: Status) -> Self {
        WitnessReport {
            property,
            status,
            witnesses: Vec::new(),
            constants: BTreeMap::new(),
            sampling: BTreeMap::new(),
            flags: Vec::new(),
        }
    }

    pub fn constant(&mut self, name: &str, value: f64) {
        self.constants.insert(name.to_string(), value);
    }

    pub fn sample(&mut self, name: &str, value: impl Into<Param>) {
        self.sampling.insert(name.to_string(), value.into());
    }

    pub fn get_constant(&self, name: &str) -> Option<f64> {
        self.constants.get(name).copied()
    }
}
