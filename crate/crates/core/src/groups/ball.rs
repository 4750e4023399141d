use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::{GroupElement, GroupSpec};
use crate::error::{Error, Result};
use crate::orlicz::FiniteFunction;

pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;

const OUTSIDE: u32 = u32::MAX;

/// The radius-`R` ball around the identity in the Cayley graph, with edges
/// `x ~ s x` for `s ∈ S`.
///
/// Vertices are numbered in BFS order from the identity (index 0), expanding
/// each vertex through the generators in declaration order. All downstream
/// indexing relies on this order being reproducible.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    spec: GroupSpec,
    radius: usize,
    generators: Vec<GroupElement>,
    inverse_of: Vec<usize>,
    vertices: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    /// `neighbors[s][x]` = index of `s⁻¹ x`, or `OUTSIDE`.
    neighbors: Vec<Vec<u32>>,
    depth: Vec<usize>,
    /// `(parent, s)` with `x = s · parent`.
    parent: Vec<Option<(usize, usize)>>,
}

impl CayleyBall {
    pub fn build(spec: &GroupSpec, radius: usize) -> Result<Self> {
        Self::build_with_budget(spec, radius, DEFAULT_VERTEX_BUDGET)
    }

    pub fn build_with_budget(spec: &GroupSpec, radius: usize, budget: usize) -> Result<Self> {
        let generators = spec.generators();
        let inverse_of: Vec<usize> = generators
            .iter()
            .map(|s| {
                let inv = spec.inv(s);
                generators.iter().position(|t| *t == inv).expect("generating set is symmetric")
            })
            .collect();

        let identity = spec.identity();
        let mut vertices = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut depth = vec![0usize];
        let mut parent = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            if depth[x] == radius {
                continue;
            }
            for (si, s) in generators.iter().enumerate() {
                let y = spec.mul(s, &vertices[x]);
                if index.contains_key(&y) {
                    continue;
                }
                if vertices.len() >= budget || vertices.len() >= OUTSIDE as usize {
                    return Err(Error::Resource(format!(
                        "ball of radius {radius} in {spec} exceeds the vertex budget of {budget}"
                    )));
                }
                let j = vertices.len();
                index.insert(y.clone(), j);
                vertices.push(y);
                depth.push(depth[x] + 1);
                parent.push(Some((x, si)));
                queue.push_back(j);
            }
        }

        let neighbors = generators
            .iter()
            .map(|s| {
                let s_inv = spec.inv(s);
                vertices.iter().map(|x| index.get(&spec.mul(&s_inv, x)).map_or(OUTSIDE, |&j| j as u32)).collect()
            })
            .collect();

        Ok(CayleyBall { spec: spec.clone(), radius, generators, inverse_of, vertices, index, neighbors, depth, parent })
    }

    /// Identifier used to tag functions on this ball, e.g. `free:2/R3`.
    pub fn id(&self) -> String {
        format!("{}/R{}", self.spec, self.radius)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Index in the generator list of `s⁻¹`.
    pub fn inverse_generator(&self, s: usize) -> usize {
        self.inverse_of[s]
    }

    pub fn vertex(&self, x: usize) -> &GroupElement {
        &self.vertices[x]
    }

    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Index of `s⁻¹ x`, if it lies in the ball.
    #[inline]
    pub fn neighbor(&self, s: usize, x: usize) -> Option<usize> {
        let j = self.neighbors[s][x];
        (j != OUTSIDE).then_some(j as usize)
    }

    /// Index of `s x`, if it lies in the ball.
    #[inline]
    pub fn forward(&self, s: usize, x: usize) -> Option<usize> {
        self.neighbor(self.inverse_of[s], x)
    }

    pub fn depth(&self, x: usize) -> usize {
        self.depth[x]
    }

    /// Word length at most `R − 1`; all neighbors of an interior vertex are in the ball.
    pub fn is_interior(&self, x: usize) -> bool {
        self.depth[x] < self.radius
    }

    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&x| self.is_interior(x))
    }

    /// Vertices on the sphere of radius `R`.
    pub fn boundary(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&x| self.depth[x] == self.radius)
    }

    /// Generator indices `w` with `x = S[w_0] S[w_1] ⋯`, of length `depth(x)`.
    pub fn geodesic_word(&self, x: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.depth[x]);
        let mut cur = x;
        while let Some((p, s)) = self.parent[cur] {
            word.push(s);
            cur = p;
        }
        word
    }

    /// Vertices with a given depth, in index order.
    pub fn sphere(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&x| self.depth[x] == r)
    }

    pub fn zeros(&self) -> FiniteFunction {
        FiniteFunction::zeros(self.id(), self.len())
    }

    pub fn function(&self, values: Vec<f64>) -> Result<FiniteFunction> {
        if values.len() != self.len() {
            return Err(Error::Argument(format!(
                "function has {} values, ball {} has {} vertices",
                values.len(),
                self.id(),
                self.len()
            )));
        }
        FiniteFunction::new(self.id(), values)
    }

    pub fn function_from(&self, f: impl Fn(&GroupElement) -> f64) -> FiniteFunction {
        FiniteFunction { ball: self.id(), values: self.vertices.iter().map(f).collect() }
    }

    pub fn delta(&self, x: usize) -> FiniteFunction {
        FiniteFunction::delta(self.id(), self.len(), x)
    }

    /// Errors unless `f` is indexed by this ball.
    pub fn check(&self, f: &FiniteFunction) -> Result<()> {
        if f.len() != self.len() || f.ball != self.id() {
            return Err(Error::Argument(format!(
                "function on '{}' ({} values) used with ball '{}' ({} vertices)",
                f.ball,
                f.len(),
                self.id(),
                self.len()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&BallJson(self)).expect("ball serializes")
    }

    /// Parse a serialized ball. The ball is rebuilt from its group and radius
    /// and checked against the serialized vertices and neighbor maps.
    pub fn from_json(s: &str) -> Result<Self> {
        let rec: BallRecord = serde_json::from_str(s)?;
        let spec: GroupSpec = rec.group.parse()?;
        let ball = CayleyBall::build(&spec, rec.radius)?;
        let vertices: Vec<String> = ball.vertices.iter().map(ToString::to_string).collect();
        if vertices != rec.vertices {
            return Err(Error::Format("vertex list does not match the group and radius".into()));
        }
        let expected = ball.neighbor_table();
        if expected.len() != rec.neighbors.len() || expected.iter().any(|(k, v)| rec.neighbors.get(k) != Some(v)) {
            return Err(Error::Format("neighbor maps do not match the group and radius".into()));
        }
        Ok(ball)
    }

    fn neighbor_table(&self) -> Vec<(String, Vec<i64>)> {
        self.generators
            .iter()
            .zip(&self.neighbors)
            .map(|(s, nb)| {
                let idx = nb.iter().map(|&j| if j == OUTSIDE { -1 } else { j as i64 }).collect();
                (s.to_string(), idx)
            })
            .collect()
    }
}

/// Deserialized form of a ball file.
#[derive(Debug, Clone, Deserialize)]
pub struct BallRecord {
    pub group: String,
    pub radius: usize,
    pub vertices: Vec<String>,
    pub neighbors: BTreeMap<String, Vec<i64>>,
}

struct BallJson<'a>(&'a CayleyBall);

struct NeighborMap(Vec<(String, Vec<i64>)>);

impl Serialize for NeighborMap {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for BallJson<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let b = self.0;
        let mut map = ser.serialize_map(Some(4))?;
        map.serialize_entry("group", &b.spec.to_string())?;
        map.serialize_entry("radius", &b.radius)?;
        let vertices: Vec<String> = b.vertices.iter().map(ToString::to_string).collect();
        map.serialize_entry("vertices", &vertices)?;
        map.serialize_entry("neighbors", &NeighborMap(b.neighbor_table()))?;
        map.end()
    }
}

/// `(λ(g) f)(x) = f(g⁻¹ x)` where `g⁻¹ x` lies in the ball. Returns the
/// translated function (zero where undefined) and the validity mask.
pub fn act(ball: &CayleyBall, g: &GroupElement, f: &FiniteFunction) -> Result<(FiniteFunction, Vec<bool>)> {
    ball.check(f)?;
    if !ball.spec.contains(g) {
        return Err(Error::Argument(format!("{g} is not an element of {}", ball.spec)));
    }
    let g_inv = ball.spec.inv(g);
    let mut values = vec![0.0; ball.len()];
    let mut mask = vec![false; ball.len()];
    for (x, v) in ball.vertices.iter().enumerate() {
        if let Some(j) = ball.index_of(&ball.spec.mul(&g_inv, v)) {
            values[x] = f.values[j];
            mask[x] = true;
        }
    }
    Ok((FiniteFunction { ball: ball.id(), values }, mask))
}
