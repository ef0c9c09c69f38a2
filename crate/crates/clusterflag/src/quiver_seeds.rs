//! Quivers, exact Laurent expressions and seeds carrying three synchronized
//! tracks per vertex: Laurent expression, tableau class and weight.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::plucker_algebra::{
    add_mod, bigint_mod, evaluate, inv_mod, mul_mod, random_point, EvaluationPoint, PluckerError, PluckerPolynomial,
};
use crate::young_tableaux::{tableau_mutation, Tableau, TableauError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeedError {
    #[error("vertex {0} is frozen")]
    FrozenVertex(String),
    #[error("no vertex {0}")]
    NoSuchVertex(String),
    #[error("Laurent division failed at vertex {0}")]
    LaurentDivision(String),
    #[error("exchange relation at vertex {vertex} is not homogeneous: {incoming:?} vs {outgoing:?}")]
    Inhomogeneous {
        vertex: String,
        incoming: Vec<i64>,
        outgoing: Vec<i64>,
    },
    #[error("restriction is invalid, offending arrows: {0:?}")]
    InvalidRestriction(Vec<(String, String, i64)>),
    #[error("tableau exchange at vertex {0}: {1}")]
    Tableau(String, TableauError),
    #[error(transparent)]
    Plucker(#[from] PluckerError),
    #[error("seed data is inconsistent: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, SeedError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    /// Stable identifier, preserved by freezing and restriction.
    pub id: usize,
    pub frozen: bool,
    /// Display tag such as `(27)` or `{2,4,5}`.
    pub label: String,
    /// Grid position `(row, col)` when the vertex sits on a grid.
    pub pos: Option<(u32, u32)>,
}

/// Quiver stored as a skew-symmetric matrix, `b[u][v] > 0` counting arrows
/// `u → v`. Arrows between frozen vertices are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    b: Vec<Vec<i64>>,
}

impl Quiver {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        let n = vertices.len();
        Quiver {
            vertices,
            b: vec![vec![0; n]; n],
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|x| x.label == label)
    }

    pub fn find_pos(&self, pos: (u32, u32)) -> Option<usize> {
        self.vertices.iter().position(|x| x.pos == Some(pos))
    }

    pub fn find_id(&self, id: usize) -> Option<usize> {
        self.vertices.iter().position(|x| x.id == id)
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        self.vertices[v].frozen
    }

    pub fn mutable_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.is_frozen(v)).collect()
    }

    /// Signed arrow count `b_{uv}`.
    pub fn b(&self, u: usize, v: usize) -> i64 {
        self.b[u][v]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// Adds `m` arrows `u → v` (negative `m` reverses them). Frozen-frozen
    /// arrows are discarded.
    pub fn add_arrows(&mut self, u: usize, v: usize, m: i64) {
        if u == v || (self.is_frozen(u) && self.is_frozen(v)) {
            return;
        }
        self.b[u][v] += m;
        self.b[v][u] -= m;
    }

    /// Sets `b_{uv}` to exactly `m`.
    pub fn set_arrows(&mut self, u: usize, v: usize, m: i64) {
        let cur = self.b[u][v];
        self.add_arrows(u, v, m - cur);
    }

    pub fn incoming(&self, v: usize) -> Vec<(usize, i64)> {
        (0..self.len()).filter(|&u| self.b[u][v] > 0).map(|u| (u, self.b[u][v])).collect()
    }

    pub fn outgoing(&self, v: usize) -> Vec<(usize, i64)> {
        (0..self.len()).filter(|&w| self.b[v][w] > 0).map(|w| (w, self.b[v][w])).collect()
    }

    /// All arrows `(u, v, m)` with `m > 0`.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in 0..self.len() {
                if self.b[u][v] > 0 {
                    out.push((u, v, self.b[u][v]));
                }
            }
        }
        out
    }

    pub fn max_multiplicity(&self) -> i64 {
        self.b.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|u| self.b[u][u] == 0 && (0..n).all(|v| self.b[u][v] == -self.b[v][u]))
    }

    /// Fomin-Zelevinsky mutation at a mutable vertex.
    pub fn mutate(&self, v: usize) -> Result<Quiver> {
        if v >= self.len() {
            return Err(SeedError::NoSuchVertex(v.to_string()));
        }
        if self.is_frozen(v) {
            return Err(SeedError::FrozenVertex(self.vertices[v].label.clone()));
        }
        let n = self.len();
        let mut b = self.b.clone();
        for u in 0..n {
            for w in 0..n {
                if u == v || w == v {
                    b[u][w] = -self.b[u][w];
                } else {
                    let (buv, bvw) = (self.b[u][v], self.b[v][w]);
                    b[u][w] = self.b[u][w] + buv.signum() * (buv * bvw).max(0);
                }
            }
        }
        for u in 0..n {
            for w in 0..n {
                if self.is_frozen(u) && self.is_frozen(w) {
                    b[u][w] = 0;
                }
            }
        }
        Ok(Quiver {
            vertices: self.vertices.clone(),
            b,
        })
    }

    pub fn freeze(&self, vs: &[usize]) -> Quiver {
        let mut q = self.clone();
        for &v in vs {
            q.vertices[v].frozen = true;
        }
        for u in 0..q.len() {
            for w in 0..q.len() {
                if q.is_frozen(u) && q.is_frozen(w) {
                    q.b[u][w] = 0;
                }
            }
        }
        q
    }

    /// Arrows joining a kept mutable vertex to a deleted vertex.
    pub fn restriction_violations(&self, keep: &[usize]) -> Vec<(usize, usize, i64)> {
        let kept: Vec<bool> = (0..self.len()).map(|v| keep.contains(&v)).collect();
        let mut bad = Vec::new();
        for &u in keep {
            if self.is_frozen(u) {
                continue;
            }
            for w in 0..self.len() {
                if !kept[w] && self.b[u][w] != 0 {
                    bad.push((u, w, self.b[u][w]));
                }
            }
        }
        bad
    }

    /// Induced subquiver on `keep`, in the given order.
    pub fn induced(&self, keep: &[usize]) -> Quiver {
        Quiver {
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            b: keep.iter().map(|&u| keep.iter().map(|&w| self.b[u][w]).collect()).collect(),
        }
    }

    /// Graphviz rendering; frozen vertices are boxed.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "'"));
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if v.frozen { "box" } else { "ellipse" };
            let _ = writeln!(s, "  v{i} [label=\"{}\", shape={shape}];", v.label.replace('"', "'"));
        }
        for (u, w, m) in self.arrows() {
            if m == 1 {
                let _ = writeln!(s, "  v{u} -> v{w};");
            } else {
                let _ = writeln!(s, "  v{u} -> v{w} [label=\"{m}\"];");
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Sparse Laurent polynomial with integer coefficients in a fixed set of
/// variables. Keys are exponent vectors ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentExpr {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentExpr {
    pub fn zero(nvars: usize) -> Self {
        LaurentExpr {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, vec![0; nvars], BigInt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<i32>, c: BigInt) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentExpr { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    /// Whether the expression is a polynomial (no negative exponents).
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentExpr) -> LaurentExpr {
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (e, c) in &small.terms {
            big.add_term(e.clone(), c.clone());
        }
        big
    }

    pub fn mul(&self, other: &LaurentExpr) -> LaurentExpr {
        let mut acc: HashMap<Vec<i32>, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Vec<i32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        LaurentExpr {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentExpr {
        (0..k).fold(LaurentExpr::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Exact quotient `self / d`, or `None` when it is not a Laurent
    /// polynomial with integer coefficients.
    pub fn exact_div(&self, d: &LaurentExpr) -> Option<LaurentExpr> {
        let (d_lead_e, d_lead_c) = d.terms.iter().next_back()?;
        if self.is_zero() {
            return Some(LaurentExpr::zero(self.nvars));
        }
        if d.len() == 1 {
            let mut out = LaurentExpr::zero(self.nvars);
            for (e, c) in &self.terms {
                let (q, r) = c.div_rem(d_lead_c);
                if !r.is_zero() {
                    return None;
                }
                out.terms.insert(e.iter().zip(d_lead_e).map(|(x, y)| x - y).collect(), q);
            }
            return Some(out);
        }
        // Long division under lex order, which is compatible with
        // multiplication of Laurent monomials. Every quotient monomial lies
        // between low(self)/low(d) and lead(self)/lead(d).
        let d_low = d.terms.keys().next().expect("nonempty");
        let floor: Vec<i32> = self.terms.keys().next().expect("nonempty").iter().zip(d_low).map(|(x, y)| x - y).collect();
        let mut rem = self.clone();
        let mut quot = LaurentExpr::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let qe: Vec<i32> = e.iter().zip(d_lead_e).map(|(x, y)| x - y).collect();
            if qe < floor {
                return None;
            }
            let (qc, r) = c.div_rem(d_lead_c);
            if !r.is_zero() {
                return None;
            }
            for (de, dc) in &d.terms {
                let te: Vec<i32> = de.iter().zip(&qe).map(|(x, y)| x + y).collect();
                rem.add_term(te, -(dc * &qc));
            }
            quot.terms.insert(qe, qc);
        }
        Some(quot)
    }

    /// Value modulo `p` given the values of the variables (which must be
    /// invertible wherever a negative exponent occurs).
    pub fn eval_mod(&self, values: &[u64], inverses: &[u64], p: u64) -> u64 {
        let mut total = 0u64;
        for (e, c) in &self.terms {
            let mut v = bigint_mod(c, p);
            for (i, &x) in e.iter().enumerate() {
                let base = if x >= 0 { values[i] } else { inverses[i] };
                for _ in 0..x.unsigned_abs() {
                    v = mul_mod(v, base, p);
                }
            }
            total = add_mod(total, v, p);
        }
        total
    }

    /// SHA-256 digest of the canonical term listing.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for (e, c) in &self.terms {
            h.update(format!("{e:?}:{c};").as_bytes());
        }
        hex::encode(h.finalize())
    }
}

impl fmt::Display for LaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| if x == 1 { format!("x{j}") } else { format!("x{j}^{x}") })
                .collect();
            if vars.is_empty() || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            write!(f, "{}", vars.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    nvars: usize,
    terms: Vec<(Vec<i32>, String)>,
}

impl Serialize for LaurentExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentJson {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LaurentJson::deserialize(d)?;
        let mut out = LaurentExpr::zero(j.nvars);
        for (e, c) in j.terms {
            if e.len() != j.nvars {
                return Err(serde::de::Error::custom("exponent vector has wrong length"));
            }
            out.add_term(e, c.parse().map_err(serde::de::Error::custom)?);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarData {
    pub laurent: LaurentExpr,
    pub tableau: Tableau,
    /// Coefficients over the fundamental weights of the flag, or the single
    /// Grassmannian degree.
    pub weight: Vec<i64>,
}

/// Seed with a quiver and three tracks per vertex. Laurent expressions are
/// in the initial cluster, whose meaning as Plücker polynomials is kept in
/// `dictionary` (indexed by initial vertex id).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    pub quiver: Quiver,
    pub vars: Vec<VarData>,
    pub dictionary: Vec<PluckerPolynomial>,
    /// `(rows, cols)` of the matrices on which the dictionary is evaluated.
    pub ambient: (usize, usize),
}

fn sum_weights<'a>(it: impl Iterator<Item = (&'a [i64], i64)>, len: usize) -> Vec<i64> {
    let mut out = vec![0; len];
    for (w, m) in it {
        for (o, x) in out.iter_mut().zip(w) {
            *o += m * x;
        }
    }
    out
}

impl Seed {
    /// Initial seed: vertex `i` carries the `i`-th initial variable.
    pub fn initial(
        quiver: Quiver,
        tableaux: Vec<Tableau>,
        weights: Vec<Vec<i64>>,
        dictionary: Vec<PluckerPolynomial>,
        ambient: (usize, usize),
    ) -> Result<Self> {
        let n = quiver.len();
        if tableaux.len() != n || weights.len() != n || dictionary.len() != n {
            return Err(SeedError::Malformed("track lengths differ from vertex count".into()));
        }
        if quiver.vertices().iter().enumerate().any(|(i, v)| v.id != i) {
            return Err(SeedError::Malformed("initial vertex ids must be 0..n".into()));
        }
        let vars = tableaux
            .into_iter()
            .zip(weights)
            .enumerate()
            .map(|(i, (tableau, weight))| VarData {
                laurent: LaurentExpr::var(n, i),
                tableau,
                weight,
            })
            .collect();
        Ok(Seed {
            quiver,
            vars,
            dictionary,
            ambient,
        })
    }

    pub fn len(&self) -> usize {
        self.quiver.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quiver.is_empty()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.quiver.vertex(v).label
    }

    fn weight_len(&self) -> usize {
        self.vars.first().map_or(0, |x| x.weight.len())
    }

    pub fn in_weight(&self, v: usize) -> Vec<i64> {
        let inc = self.quiver.incoming(v);
        sum_weights(inc.iter().map(|&(u, m)| (self.vars[u].weight.as_slice(), m)), self.weight_len())
    }

    pub fn out_weight(&self, v: usize) -> Vec<i64> {
        let out = self.quiver.outgoing(v);
        sum_weights(out.iter().map(|&(w, m)| (self.vars[w].weight.as_slice(), m)), self.weight_len())
    }

    pub fn is_balanced(&self, v: usize) -> bool {
        self.in_weight(v) == self.out_weight(v)
    }

    /// The two exchange monomials `(Π_{u→v} x_u, Π_{v→w} x_w)`.
    pub fn exchange_monomials(&self, v: usize) -> (LaurentExpr, LaurentExpr) {
        let n = self.dictionary.len();
        let prod = |nbrs: Vec<(usize, i64)>| {
            nbrs.into_iter()
                .fold(LaurentExpr::one(n), |acc, (u, m)| acc.mul(&self.vars[u].laurent.pow(m as u32)))
        };
        (prod(self.quiver.incoming(v)), prod(self.quiver.outgoing(v)))
    }

    /// Mutation at `v`, updating all three tracks.
    pub fn mutate(&self, v: usize) -> Result<Seed> {
        let quiver = self.quiver.mutate(v)?;
        let label = self.label(v).to_string();
        let (m_in, m_out) = self.exchange_monomials(v);
        let laurent = m_in
            .add(&m_out)
            .exact_div(&self.vars[v].laurent)
            .ok_or_else(|| SeedError::LaurentDivision(label.clone()))?;

        let (w_in, w_out) = (self.in_weight(v), self.out_weight(v));
        if w_in != w_out {
            return Err(SeedError::Inhomogeneous {
                vertex: label,
                incoming: w_in,
                outgoing: w_out,
            });
        }
        let weight: Vec<i64> = w_in.iter().zip(&self.vars[v].weight).map(|(a, b)| a - b).collect();

        let expand = |nbrs: Vec<(usize, i64)>| -> Vec<&Tableau> {
            nbrs.into_iter()
                .flat_map(|(u, m)| std::iter::repeat(&self.vars[u].tableau).take(m as usize))
                .collect()
        };
        let ins = expand(self.quiver.incoming(v));
        let outs = expand(self.quiver.outgoing(v));
        let tableau = tableau_mutation(&self.vars[v].tableau, &ins, &outs)
            .map_err(|e| SeedError::Tableau(label.clone(), e))?
            .tableau;

        let mut vars = self.vars.clone();
        vars[v] = VarData {
            laurent,
            tableau,
            weight,
        };
        Ok(Seed {
            quiver,
            vars,
            dictionary: self.dictionary.clone(),
            ambient: self.ambient,
        })
    }

    pub fn freeze(&self, vs: &[usize]) -> Seed {
        Seed {
            quiver: self.quiver.freeze(vs),
            ..self.clone()
        }
    }

    /// Deletes every vertex outside `keep`; no kept mutable vertex may be
    /// joined to a deleted one.
    pub fn restrict_to(&self, keep: &[usize]) -> Result<Seed> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let bad = self.quiver.restriction_violations(&keep);
        if !bad.is_empty() {
            return Err(SeedError::InvalidRestriction(
                bad.into_iter()
                    .map(|(u, w, m)| (self.label(u).to_string(), self.label(w).to_string(), m))
                    .collect(),
            ));
        }
        Ok(Seed {
            quiver: self.quiver.induced(&keep),
            vars: keep.iter().map(|&v| self.vars[v].clone()).collect(),
            dictionary: self.dictionary.clone(),
            ambient: self.ambient,
        })
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.quiver.to_dot(name)
    }

    /// JSON document; Laurent expressions longer than `max_terms` are
    /// replaced by their size and digest.
    pub fn to_json(&self, max_terms: usize) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .quiver
            .vertices()
            .iter()
            .zip(&self.vars)
            .map(|(v, d)| {
                let laurent = if d.laurent.len() <= max_terms {
                    serde_json::to_value(&d.laurent).expect("serializable")
                } else {
                    serde_json::Value::Null
                };
                serde_json::json!({
                    "id": v.id,
                    "label": v.label,
                    "frozen": v.frozen,
                    "pos": v.pos,
                    "tableau": d.tableau,
                    "weight": d.weight,
                    "laurent": laurent,
                    "laurent_terms": d.laurent.len(),
                    "laurent_digest": d.laurent.digest(),
                })
            })
            .collect();
        let arrows: Vec<(usize, usize, i64)> = self.quiver.arrows();
        serde_json::json!({
            "vertices": vertices,
            "arrows": arrows,
            "dictionary": self.dictionary,
            "ambient": self.ambient,
        })
    }

    /// Inverse of [`Seed::to_json`] when nothing was truncated.
    pub fn from_json(value: &serde_json::Value) -> Result<Seed> {
        #[derive(Deserialize)]
        struct V {
            id: usize,
            label: String,
            frozen: bool,
            pos: Option<(u32, u32)>,
            tableau: Tableau,
            weight: Vec<i64>,
            laurent: Option<LaurentExpr>,
        }
        #[derive(Deserialize)]
        struct S {
            vertices: Vec<V>,
            arrows: Vec<(usize, usize, i64)>,
            dictionary: Vec<PluckerPolynomial>,
            ambient: (usize, usize),
        }
        let s: S = serde_json::from_value(value.clone()).map_err(|e| SeedError::Malformed(e.to_string()))?;
        let mut verts = Vec::new();
        let mut vars = Vec::new();
        for v in s.vertices {
            let laurent = v
                .laurent
                .ok_or_else(|| SeedError::Malformed(format!("Laurent data of {} was truncated", v.label)))?;
            if laurent.nvars() != s.dictionary.len() {
                return Err(SeedError::Malformed("Laurent variable count mismatch".into()));
            }
            verts.push(Vertex {
                id: v.id,
                label: v.label,
                frozen: v.frozen,
                pos: v.pos,
            });
            vars.push(VarData {
                laurent,
                tableau: v.tableau,
                weight: v.weight,
            });
        }
        let mut quiver = Quiver::new(verts);
        for (u, w, m) in s.arrows {
            if u >= quiver.len() || w >= quiver.len() || m <= 0 {
                return Err(SeedError::Malformed(format!("bad arrow ({u}, {w}, {m})")));
            }
            quiver.add_arrows(u, w, m);
        }
        Ok(Seed {
            quiver,
            vars,
            dictionary: s.dictionary,
            ambient: s.ambient,
        })
    }
}

/// Settings of the randomized identity oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub prime: u64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            prime: crate::plucker_algebra::DEFAULT_PRIME,
            trials: 20,
            seed: 0,
        }
    }
}

/// Random points together with the values of the initial cluster on them.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub config: OracleConfig,
    pub points: Vec<EvaluationPoint>,
    values: Vec<Vec<u64>>,
    inverses: Vec<Vec<u64>>,
}

impl Oracle {
    /// Samples `config.trials` points of the given ambient shape and
    /// evaluates `dictionary` on them. Points where an initial variable
    /// vanishes are resampled.
    pub fn new(dictionary: &[PluckerPolynomial], ambient: (usize, usize), config: OracleConfig) -> Result<Self> {
        let p = config.prime;
        let mut points = Vec::new();
        let mut values = Vec::new();
        let mut inverses = Vec::new();
        let mut stream = 0u64;
        while points.len() < config.trials {
            let pt = random_point(ambient.0, ambient.1, p, config.seed.wrapping_add(stream.wrapping_mul(0x9e37_79b9)));
            stream += 1;
            if stream > 100 * config.trials as u64 + 100 {
                return Err(SeedError::Malformed("initial variables vanish on every sampled point".into()));
            }
            let vals: Vec<u64> = dictionary.iter().map(|f| evaluate(f, &pt)).collect::<std::result::Result<_, _>>()?;
            let Some(invs) = vals.iter().map(|&x| inv_mod(x, p)).collect::<Option<Vec<u64>>>() else {
                continue;
            };
            points.push(pt);
            values.push(vals);
            inverses.push(invs);
        }
        Ok(Oracle {
            config,
            points,
            values,
            inverses,
        })
    }

    pub fn for_seed(seed: &Seed, config: OracleConfig) -> Result<Self> {
        Self::new(&seed.dictionary, seed.ambient, config)
    }

    pub fn trials(&self) -> usize {
        self.points.len()
    }

    pub fn prime(&self) -> u64 {
        self.config.prime
    }

    /// Value of a Laurent expression in the initial cluster at trial `t`.
    pub fn laurent_value(&self, f: &LaurentExpr, t: usize) -> u64 {
        f.eval_mod(&self.values[t], &self.inverses[t], self.config.prime)
    }

    pub fn seed_values(&self, seed: &Seed) -> Vec<Vec<u64>> {
        (0..self.trials())
            .map(|t| seed.vars.iter().map(|d| self.laurent_value(&d.laurent, t)).collect())
            .collect()
    }

    /// Checks `x_v x'_v = M_in + M_out` on every trial using the given
    /// values of the current cluster; returns the new values at `v`.
    pub fn check_exchange(&self, before: &Seed, v: usize, new_laurent: &LaurentExpr, values: &[Vec<u64>]) -> Option<Vec<u64>> {
        let p = self.config.prime;
        let mut out = Vec::with_capacity(self.trials());
        for (t, vals) in values.iter().enumerate() {
            let prod = |nbrs: Vec<(usize, i64)>| {
                nbrs.into_iter().fold(1u64, |acc, (u, m)| {
                    (0..m).fold(acc, |a, _| mul_mod(a, vals[u], p))
                })
            };
            let rhs = add_mod(prod(before.quiver.incoming(v)), prod(before.quiver.outgoing(v)), p);
            let xv = self.laurent_value(new_laurent, t);
            if mul_mod(vals[v], xv, p) != rhs || xv == 0 {
                return None;
            }
            out.push(xv);
        }
        Some(out)
    }
}

/// Outcome of comparing two seeds under a vertex bijection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedComparison {
    pub arrows_equal: bool,
    pub tableaux_equal: bool,
    pub laurent_equal: bool,
    pub mismatches: Vec<String>,
}

impl SeedComparison {
    pub fn all_pass(&self) -> bool {
        self.arrows_equal && self.tableaux_equal && self.laurent_equal
    }
}

/// Compares `s1` and `s2` where `map[i]` is the vertex of `s2` matched with
/// vertex `i` of `s1`. Both seeds are evaluated on the same random points of
/// their common ambient shape; each uses its own dictionary.
pub fn seeds_equal(s1: &Seed, s2: &Seed, map: &[usize], config: OracleConfig) -> Result<SeedComparison> {
    let mut mismatches = Vec::new();
    if s1.len() != s2.len() || map.len() != s1.len() {
        mismatches.push(format!("vertex counts differ: {} vs {}", s1.len(), s2.len()));
        return Ok(SeedComparison {
            arrows_equal: false,
            tableaux_equal: false,
            laurent_equal: false,
            mismatches,
        });
    }
    let mut seen = vec![false; s2.len()];
    for &j in map {
        if j >= s2.len() || std::mem::replace(&mut seen[j], true) {
            return Err(SeedError::Malformed("vertex map is not a bijection".into()));
        }
    }
    if s1.ambient != s2.ambient {
        return Err(SeedError::Malformed(format!("ambient shapes differ: {:?} vs {:?}", s1.ambient, s2.ambient)));
    }

    let mut arrows_equal = true;
    for u in 0..s1.len() {
        if s1.quiver.is_frozen(u) != s2.quiver.is_frozen(map[u]) {
            arrows_equal = false;
            mismatches.push(format!("frozen status differs at {}", s1.label(u)));
        }
        for w in 0..s1.len() {
            let (a, b) = (s1.quiver.b(u, w), s2.quiver.b(map[u], map[w]));
            if a != b && u < w {
                arrows_equal = false;
                mismatches.push(format!("b({}, {}) = {a} vs b({}, {}) = {b}", s1.label(u), s1.label(w), s2.label(map[u]), s2.label(map[w])));
            }
        }
    }

    let mut tableaux_equal = true;
    for u in 0..s1.len() {
        if !s1.vars[u].tableau.equivalent(&s2.vars[map[u]].tableau) {
            tableaux_equal = false;
            mismatches.push(format!("tableau differs at {}", s1.label(u)));
        }
    }

    // Both oracles share the point stream, so trial t is the same matrix.
    let o1 = Oracle::for_seed(s1, config)?;
    let o2 = Oracle::new(&s2.dictionary, s2.ambient, config)?;
    let mut laurent_equal = o1.points == o2.points;
    if !laurent_equal {
        mismatches.push("oracle point streams differ".into());
    }
    for u in 0..s1.len() {
        let ok = (0..o1.trials()).all(|t| {
            o1.laurent_value(&s1.vars[u].laurent, t) == o2.laurent_value(&s2.vars[map[u]].laurent, t)
        });
        if !ok {
            laurent_equal = false;
            mismatches.push(format!("cluster variable differs at {}", s1.label(u)));
        }
    }
    Ok(SeedComparison {
        arrows_equal,
        tableaux_equal,
        laurent_equal,
        mismatches,
    })
}

/// Matches each vertex of `target` with the unique vertex of `source` whose
/// tableau class agrees. Fails when a class is missing or ambiguous.
pub fn match_by_tableau(source: &Seed, target: &Seed) -> std::result::Result<Vec<usize>, String> {
    let mut classes: BTreeMap<Tableau, Vec<usize>> = BTreeMap::new();
    for (i, d) in source.vars.iter().enumerate() {
        classes.entry(d.tableau.reduce()).or_default().push(i);
    }
    let mut map = Vec::with_capacity(target.len());
    for (j, d) in target.vars.iter().enumerate() {
        match classes.get(&d.tableau.reduce()).map(Vec::as_slice) {
            Some([i]) => map.push(*i),
            Some(many) if many.len() > 1 => {
                return Err(format!("tableau of {} matches {} vertices", target.label(j), many.len()))
            }
            _ => return Err(format!("no vertex carries the tableau of {}", target.label(j))),
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vtx(id: usize, frozen: bool) -> Vertex {
        Vertex {
            id,
            frozen,
            label: format!("({id})"),
            pos: None,
        }
    }

    #[test]
    fn a2_mutation_reverses_arrow() {
        let mut q = Quiver::new(vec![vtx(0, false), vtx(1, false)]);
        q.add_arrows(0, 1, 1);
        let m = q.mutate(0).unwrap();
        assert_eq!(m.b(1, 0), 1);
        assert_eq!(m.mutate(0).unwrap(), q);
    }

    #[test]
    fn mutation_composes_paths() {
        let mut q = Quiver::new(vec![vtx(0, false), vtx(1, false), vtx(2, false)]);
        q.add_arrows(0, 1, 1);
        q.add_arrows(1, 2, 1);
        let m = q.mutate(1).unwrap();
        assert_eq!(m.b(0, 2), 1);
        assert_eq!(m.b(1, 0), 1);
        assert_eq!(m.b(2, 1), 1);
        assert!(q.freeze(&[0]).mutate(0).is_err());
    }

    #[test]
    fn laurent_division() {
        let x = LaurentExpr::var(2, 0);
        let y = LaurentExpr::var(2, 1);
        let s = x.add(&y);
        let prod = s.mul(&s).mul(&x);
        assert_eq!(prod.exact_div(&s).unwrap(), s.mul(&x));
        assert_eq!(prod.exact_div(&x).unwrap(), s.mul(&s));
        let one = LaurentExpr::one(2);
        assert!(one.add(&x).exact_div(&s).is_none());
        let inv = one.exact_div(&x).unwrap();
        assert_eq!(inv.mul(&x), one);
    }

    #[test]
    fn restriction_rule() {
        let mut q = Quiver::new(vec![vtx(0, false), vtx(1, true), vtx(2, false)]);
        q.add_arrows(0, 1, 1);
        q.add_arrows(1, 2, 1);
        assert!(q.restriction_violations(&[1, 2]).is_empty());
        assert_eq!(q.restriction_violations(&[0]), vec![(0, 1, 1)]);
    }

    #[test]
    fn dot_boxes_frozen() {
        let mut q = Quiver::new(vec![vtx(0, false), vtx(1, true)]);
        q.add_arrows(0, 1, 2);
        let dot = q.to_dot("q");
        assert!(dot.contains("shape=box"));
        assert!(dot.contains("[label=\"2\"]"));
    }
}
