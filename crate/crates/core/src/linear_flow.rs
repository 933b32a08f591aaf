//! Radial stable-node vector fields `f(p) = λ (a* - p)` and their exact flows.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance used when deciding whether a point lies on a ray.
const RAY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum FlowError {
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("contraction rate must be positive, got {0}")]
    NonPositiveRate(f64),
    #[error("target point is not on the inward ray from the start point to the node")]
    NotOnInwardRay,
    #[error("start point coincides with the node")]
    AtNode,
}

/// A point of the Euclidean plane. Coordinates are always finite.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    x: f64,
    y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Result<Self, FlowError> {
        if !x.is_finite() {
            return Err(FlowError::NonFinite(x));
        }
        if !y.is_finite() {
            return Err(FlowError::NonFinite(y));
        }
        Ok(Point2 { x, y })
    }

    pub(crate) const fn raw(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn x(self) -> f64 {
        self.x
    }

    pub fn y(self) -> f64 {
        self.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Euclidean distance `d(p, q)`.
    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

impl TryFrom<[f64; 2]> for Point2 {
    type Error = FlowError;

    fn try_from(v: [f64; 2]) -> Result<Self, Self::Error> {
        Point2::new(v[0], v[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::raw(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::raw(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::raw(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::raw(-self.x, -self.y)
    }
}

/// A linear field with a radial stable node: `f(p) = rate * (node - p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableNodeField {
    node: Point2,
    rate: f64,
}

impl StableNodeField {
    pub fn new(node: Point2, rate: f64) -> Result<Self, FlowError> {
        if !rate.is_finite() {
            return Err(FlowError::NonFinite(rate));
        }
        if rate <= 0.0 {
            return Err(FlowError::NonPositiveRate(rate));
        }
        Ok(StableNodeField { node, rate })
    }

    pub fn node(&self) -> Point2 {
        self.node
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Velocity of the field at `p`.
    pub fn eval(&self, p: Point2) -> Point2 {
        (self.node - p) * self.rate
    }

    /// Exact flow `node + (p - node) e^{-λt}`. Negative `t` flows backward.
    pub fn flow(&self, t: f64, p: Point2) -> Point2 {
        if t == 0.0 {
            return p;
        }
        self.node + (p - self.node) * (-self.rate * t).exp()
    }

    /// Time needed to flow from `p` to `q`, where `q` lies on the segment
    /// `[p, node)`.
    pub fn hit_time(&self, p: Point2, q: Point2) -> Result<f64, FlowError> {
        let from = p - self.node;
        let r_p = from.norm();
        if r_p == 0.0 {
            return Err(FlowError::AtNode);
        }
        let to = q - self.node;
        let r_q = to.norm();
        if r_q == 0.0 || r_q > r_p * (1.0 + RAY_TOL) {
            return Err(FlowError::NotOnInwardRay);
        }
        // q must sit on the ray from the node through p, not merely at a
        // smaller radius.
        if from.dot(to) <= 0.0 || from.cross(to).abs() > RAY_TOL * r_p * r_p {
            return Err(FlowError::NotOnInwardRay);
        }
        let r_q = r_q.min(r_p);
        Ok((r_p / r_q).ln() / self.rate)
    }

    /// Speed `|f(p)| = λ |p - node|`.
    pub fn speed(&self, p: Point2) -> f64 {
        self.rate * p.dist(self.node)
    }
}
