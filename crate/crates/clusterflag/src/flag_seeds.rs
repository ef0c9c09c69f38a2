//! Initial seeds: the pseudoline arrangement and quiver of a partial flag
//! variety, closed-form index sets, lifts of initial minors, and the
//! rectangle seed of a Grassmannian.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plucker_algebra::{embed_phi_star, interval_minor_to_plucker, laplace_initial_minor, PluckerError, PluckerPolynomial};
use crate::quiver_seeds::{Quiver, Seed, SeedError, Vertex};
use crate::young_tableaux::{initial_tableau, interval_tableau, Tableau, TableauError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("invalid flag type: {0}")]
    InvalidFlag(String),
    #[error("index set {0:?} is not of initial form")]
    NotInitial(Vec<u32>),
    #[error(transparent)]
    Plucker(#[from] PluckerError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Seed(#[from] SeedError),
}

pub type Result<T> = std::result::Result<T, FlagError>;

/// `Fl_{d_1,...,d_k;n}` with `1 <= d_1 < ... < d_k < n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagType {
    pub n: u32,
    pub dims: Vec<u32>,
}

impl FlagType {
    pub fn new(n: u32, dims: Vec<u32>) -> Result<Self> {
        if dims.is_empty() {
            return Err(FlagError::InvalidFlag("no dimensions".into()));
        }
        if dims[0] == 0 || !dims.windows(2).all(|w| w[0] < w[1]) || *dims.last().unwrap() >= n {
            return Err(FlagError::InvalidFlag(format!("need 1 <= d_1 < ... < d_k < n, got {dims:?} with n = {n}")));
        }
        Ok(FlagType { n, dims })
    }

    pub fn grassmannian(k: u32, n: u32) -> Result<Self> {
        Self::new(n, vec![k])
    }

    pub fn k(&self) -> usize {
        self.dims.len()
    }

    /// `d_i` with `d_0 = 0` and `d_{k+1} = n`.
    pub fn d(&self, i: usize) -> u32 {
        match i {
            0 => 0,
            i if i <= self.k() => self.dims[i - 1],
            _ => self.n,
        }
    }

    pub fn top(&self) -> u32 {
        self.d(self.k())
    }

    /// `N = n + d_k - d_1`, the size of the Grassmannian `Gr_{d_k;N}`
    /// receiving the flag variety.
    pub fn big_n(&self) -> u32 {
        self.n + self.top() - self.d(1)
    }

    /// `σ = [n-d_1+1..n, n-d_2+1..n-d_1, ..., 1..n-d_k]`, whose descents sit
    /// exactly at `d_1, ..., d_k`.
    pub fn sigma(&self) -> Vec<u32> {
        let n = self.n;
        (1..=self.k() + 1).flat_map(|j| n - self.d(j) + 1..=n - self.d(j - 1)).collect()
    }

    /// The word `[d_k+1..n, d_{k-1}+1..d_k, ..., 1..d_1]`, the inverse of
    /// [`FlagType::sigma`]; the two agree when the dimensions are symmetric
    /// under `d ↦ n - d`.
    pub fn sigma_inverse(&self) -> Vec<u32> {
        (0..=self.k()).rev().flat_map(|j| self.d(j) + 1..=self.d(j + 1)).collect()
    }

    /// The fundamental weight `λ(I)`: `a_i = 1` iff `d_i ∈ I` and `d_i + 1 ∉ I`.
    pub fn weight_of_index_set(&self, set: &[u32]) -> Vec<i64> {
        self.dims
            .iter()
            .map(|&d| i64::from(set.contains(&d) && !set.contains(&(d + 1))))
            .collect()
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.dims.iter().map(u32::to_string).collect();
        write!(f, "Fl_{{{};{}}}", d.join(","), self.n)
    }
}

impl FromStr for FlagType {
    type Err = FlagError;

    /// Parses `n,d1,d2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| FlagError::InvalidFlag(format!("{s:?}: {e}")))?;
        match parts.split_first() {
            Some((&n, dims)) if !dims.is_empty() => FlagType::new(n, dims.to_vec()),
            _ => Err(FlagError::InvalidFlag(format!("{s:?}: expected n,d1,...,dk"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// Unit cells `(a, b)` covering `(a, a+1) x (b, b+1)`.
    pub cells: Vec<(u32, u32)>,
    pub index_set: Vec<u32>,
    pub frozen: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudolineArrangement {
    pub flag: FlagType,
    pub sigma: Vec<u32>,
    /// Frozen faces first, then mutable ones, each sorted by index set.
    pub faces: Vec<Face>,
    /// Arrows of types (a)-(c) between faces, frozen-frozen ones dropped.
    pub arrows: Vec<(usize, usize)>,
}

/// Faces of the arrangement of L-shaped lines `(i,0) → (i,σ(i)) → (0,σ(i))`,
/// with the arrows crossing vertical segments, horizontal segments and
/// crossings.
pub fn build_arrangement(flag: &FlagType) -> PseudolineArrangement {
    let n = flag.n as usize;
    let sigma = flag.sigma();
    let s = |i: usize| sigma[i - 1] as usize;
    let mut inv = vec![0usize; n + 1];
    for i in 1..=n {
        inv[s(i)] = i;
    }
    // (a, b) and (a+1, b) are separated by ℓ_{a+1} when it reaches above b.
    let v_sep = |a: usize, b: usize| s(a + 1) > b;
    // (a, b) and (a, b+1) are separated by the horizontal part of the line
    // at height b+1 when it extends past x = a.
    let h_sep = |a: usize, b: usize| inv[b + 1] > a;

    let mut comp = vec![vec![usize::MAX; n]; n];
    let mut regions: Vec<Vec<(u32, u32)>> = Vec::new();
    for a0 in 0..n {
        for b0 in 0..n {
            if comp[a0][b0] != usize::MAX {
                continue;
            }
            let id = regions.len();
            let mut cells = Vec::new();
            let mut queue = VecDeque::from([(a0, b0)]);
            comp[a0][b0] = id;
            while let Some((a, b)) = queue.pop_front() {
                cells.push((a as u32, b as u32));
                let mut nbrs = Vec::new();
                if a + 1 < n && !v_sep(a, b) {
                    nbrs.push((a + 1, b));
                }
                if a > 0 && !v_sep(a - 1, b) {
                    nbrs.push((a - 1, b));
                }
                if b + 1 < n && !h_sep(a, b) {
                    nbrs.push((a, b + 1));
                }
                if b > 0 && !h_sep(a, b - 1) {
                    nbrs.push((a, b - 1));
                }
                for (x, y) in nbrs {
                    if comp[x][y] == usize::MAX {
                        comp[x][y] = id;
                        queue.push_back((x, y));
                    }
                }
            }
            cells.sort_unstable();
            regions.push(cells);
        }
    }

    let index_set = |a: u32, b: u32| -> Vec<u32> { ((a + 1)..=flag.n).filter(|&i| sigma[i as usize - 1] > b).collect() };
    // Keep faces off the x-axis strip with a nonempty index set.
    let mut faces: Vec<(usize, Face)> = Vec::new();
    for (id, cells) in regions.into_iter().enumerate() {
        if cells.iter().any(|&(_, b)| b == 0) {
            continue;
        }
        let set = index_set(cells[0].0, cells[0].1);
        if set.is_empty() {
            continue;
        }
        debug_assert!(cells.iter().all(|&(a, b)| index_set(a, b) == set));
        let frozen = cells.iter().any(|&(a, _)| a == 0);
        faces.push((
            id,
            Face {
                cells,
                index_set: set,
                frozen,
            },
        ));
    }
    faces.sort_by(|x, y| (!x.1.frozen, &x.1.index_set).cmp(&(!y.1.frozen, &y.1.index_set)));
    let mut face_of_region = BTreeMap::new();
    for (pos, (id, _)) in faces.iter().enumerate() {
        face_of_region.insert(*id, pos);
    }
    let face_at = |a: usize, b: usize| face_of_region.get(&comp[a][b]).copied();

    let mut arrows = BTreeSet::new();
    let mut push = |u: Option<usize>, v: Option<usize>| {
        if let (Some(u), Some(v)) = (u, v) {
            if u != v {
                arrows.insert((u, v));
            }
        }
    };
    for a in 0..n {
        for b in 0..n {
            if a + 1 < n && v_sep(a, b) {
                push(face_at(a, b), face_at(a + 1, b));
            }
            if b + 1 < n && h_sep(a, b) {
                push(face_at(a, b + 1), face_at(a, b));
            }
        }
    }
    // Proper crossing at (x0, y0): ℓ_{x0} passes upward through height y0
    // while the horizontal line at y0 continues past x0.
    for x0 in 1..n {
        for y0 in 1..n {
            if s(x0) > y0 && inv[y0] > x0 {
                push(face_at(x0, y0 - 1), face_at(x0 - 1, y0));
            }
        }
    }
    let faces: Vec<Face> = faces.into_iter().map(|(_, f)| f).collect();
    let arrows = arrows
        .iter()
        .copied()
        .filter(|&(u, v)| !(faces[u].frozen && faces[v].frozen) && !arrows.contains(&(v, u)))
        .collect();
    PseudolineArrangement {
        flag: flag.clone(),
        sigma,
        faces,
        arrows,
    }
}

fn format_set(set: &[u32]) -> String {
    let parts: Vec<String> = set.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Quiver of the arrangement: one vertex per face, followed by the extra
/// frozen vertices `v_{d_i}` (labelled `ω{d_i}`), attached so that every
/// mutable vertex is balanced.
pub fn build_flag_quiver(arr: &PseudolineArrangement) -> Quiver {
    let flag = &arr.flag;
    let mut vertices: Vec<Vertex> = arr
        .faces
        .iter()
        .enumerate()
        .map(|(id, f)| Vertex {
            id,
            frozen: f.frozen,
            label: format_set(&f.index_set),
            pos: None,
        })
        .collect();
    let base = vertices.len();
    for (i, d) in flag.dims.iter().enumerate() {
        vertices.push(Vertex {
            id: base + i,
            frozen: true,
            label: format!("ω{d}"),
            pos: None,
        });
    }
    let mut q = Quiver::new(vertices);
    for &(u, v) in &arr.arrows {
        q.add_arrows(u, v, 1);
    }
    let weights: Vec<Vec<i64>> = arr.faces.iter().map(|f| flag.weight_of_index_set(&f.index_set)).collect();
    for v in 0..base {
        if arr.faces[v].frozen {
            continue;
        }
        let mut diff = vec![0i64; flag.k()];
        for (u, m) in q.incoming(v) {
            for (x, w) in diff.iter_mut().zip(&weights[u]) {
                *x += m * w;
            }
        }
        for (u, m) in q.outgoing(v) {
            for (x, w) in diff.iter_mut().zip(&weights[u]) {
                *x -= m * w;
            }
        }
        for (i, &excess) in diff.iter().enumerate() {
            // Surplus incoming weight is carried off by arrows to v_{d_i}.
            q.add_arrows(v, base + i, excess);
        }
    }
    q
}

/// Closed-form index sets of the initial minors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialIndexSets {
    pub frozen: Vec<Vec<u32>>,
    pub mutable: Vec<Vec<u32>>,
}

pub fn initial_index_sets(flag: &FlagType) -> InitialIndexSets {
    let (n, k) = (flag.n, flag.k());
    let d = |i: usize| flag.d(i);
    let mut frozen = Vec::new();
    for j in 1..=k {
        for s in 0..d(j) - d(j - 1) {
            frozen.push((1..=d(j - 1)).chain(d(j) - s..=d(j)).collect());
        }
    }
    for s in 0..(n - d(k)).saturating_sub(1) {
        frozen.push((1..=d(k)).chain(n - s..=n).collect());
    }
    let mut mutable: Vec<Vec<u32>> = Vec::new();
    for i in 2..=k {
        for s in 0..=d(i) - 2 {
            mutable.push((d(i) - s..=d(i)).collect());
        }
    }
    for i in 1..=k {
        for j in i + 1..=k + 1 {
            for t in 1..=d(i) - d(i - 1) {
                if d(i - 1) + t == 1 {
                    continue;
                }
                for s in 0..(d(j) - d(j - 1)).saturating_sub(1) {
                    mutable.push((d(i - 1) + t..=d(j - 1)).chain(d(j) - s..=d(j)).collect());
                }
            }
        }
    }
    frozen.sort();
    mutable.sort();
    InitialIndexSets { frozen, mutable }
}

/// Maximal runs of consecutive integers in a sorted set.
pub fn runs(set: &[u32]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &x in set {
        match out.last_mut() {
            Some((_, hi)) if *hi + 1 == x => *hi = x,
            _ => out.push((x, x)),
        }
    }
    out
}

enum InitialForm {
    Interval(u32, u32),
    TwoIntervals { i_j: u32, j: usize, i_next: u32 },
}

fn classify(set: &[u32], flag: &FlagType) -> Result<InitialForm> {
    let bad = || FlagError::NotInitial(set.to_vec());
    match runs(set)[..] {
        [(i, d)] if flag.dims.contains(&d) => Ok(InitialForm::Interval(i, d)),
        [(a, b), (c, e)] => {
            let j = flag.dims.iter().position(|&x| x == b).ok_or_else(bad)? + 1;
            if e != flag.d(j + 1) {
                return Err(bad());
            }
            Ok(InitialForm::TwoIntervals { i_j: a, j, i_next: c })
        }
        _ => Err(bad()),
    }
}

/// The lift of the minor `D_{I,[n-|I|+1,n]}` to Plücker coordinates.
pub fn lift_index_set(set: &[u32], flag: &FlagType) -> Result<PluckerPolynomial> {
    Ok(match classify(set, flag)? {
        InitialForm::Interval(i, d) => interval_minor_to_plucker(i, d, flag.n)?,
        InitialForm::TwoIntervals { i_j, j, i_next } => {
            laplace_initial_minor(i_j, flag.d(j), i_next, flag.d(j + 1), flag.n)?
        }
    })
}

/// Reduced initial tableau of an index set.
pub fn index_set_tableau(set: &[u32], flag: &FlagType) -> Result<Tableau> {
    Ok(match classify(set, flag)? {
        InitialForm::Interval(i, d) => interval_tableau(flag.n, i, d)?,
        InitialForm::TwoIntervals { i_j, j, i_next } => initial_tableau(flag.n, &flag.dims, i_j, j, i_next)?.reduce(),
    })
}

/// Seed of the flag variety: lifts at faces, `P_{[d_i]}` at `v_{d_i}`.
/// Points of the oracle are `d_k x n` matrices.
pub fn flag_initial_seed(flag: &FlagType) -> Result<Seed> {
    let arr = build_arrangement(flag);
    let quiver = build_flag_quiver(&arr);
    let mut tableaux = Vec::new();
    let mut weights = Vec::new();
    let mut dictionary = Vec::new();
    for f in &arr.faces {
        tableaux.push(index_set_tableau(&f.index_set, flag)?);
        weights.push(flag.weight_of_index_set(&f.index_set));
        dictionary.push(lift_index_set(&f.index_set, flag)?);
    }
    for (i, &d) in flag.dims.iter().enumerate() {
        let col: Vec<u32> = (1..=d).collect();
        tableaux.push(Tableau::column(&col)?);
        let mut w = vec![0; flag.k()];
        w[i] = 1;
        weights.push(w);
        dictionary.push(PluckerPolynomial::var(&col));
    }
    Ok(Seed::initial(quiver, tableaux, weights, dictionary, (flag.top() as usize, flag.n as usize))?)
}

/// The image of a flag seed in `Gr_{d_k;N}`: dictionary through `φ*`,
/// tableaux filled up, weights kept as metadata.
pub fn phi_star_seed(flag_seed: &Seed, flag: &FlagType) -> Result<Seed> {
    let mut s = flag_seed.clone();
    s.dictionary = s
        .dictionary
        .iter()
        .map(|f| embed_phi_star(f, flag.n, &flag.dims))
        .collect::<std::result::Result<_, _>>()?;
    for v in &mut s.vars {
        v.tableau = v.tableau.fill_up(flag.n, &flag.dims)?;
    }
    s.ambient = (flag.top() as usize, flag.big_n() as usize);
    Ok(s)
}

/// Label of grid position `(r, c)` in the rectangle seed of
/// `Gr_{k;n}`: columns are numbered from the right, bottom to top.
pub fn grid_label(k: u32, n: u32, r: u32, c: u32) -> u32 {
    let rows = n - k;
    (k - c) * rows + (rows - r + 1)
}

/// Index set at `(r, c)` of the rectangle seed: `[1, c-1] ∪ [n-k+c-r+1, n-r+1]`.
pub fn grid_index_set(k: u32, n: u32, r: u32, c: u32) -> Vec<u32> {
    (1..c).chain(n - k + c - r + 1..=n - r + 1).collect()
}

/// Rectangle seed of `Gr_{k;n}` on the grid `[1, n-k] x [1, k]`, row 1 and
/// column 1 frozen, plus the frozen `P_{[1,k]}` after the bottom-right
/// corner. Every variable has weight `[1]`.
pub fn grassmannian_initial_seed(k: u32, n: u32) -> Result<Seed> {
    if !(1 <= k && k < n) {
        return Err(FlagError::InvalidFlag(format!("need 1 <= k < n, got k = {k}, n = {n}")));
    }
    let rows = n - k;
    let mut vertices = Vec::new();
    let mut sets = Vec::new();
    for r in 1..=rows {
        for c in 1..=k {
            vertices.push(Vertex {
                id: vertices.len(),
                frozen: r == 1 || c == 1,
                label: format!("({})", grid_label(k, n, r, c)),
                pos: Some((r, c)),
            });
            sets.push(grid_index_set(k, n, r, c));
        }
    }
    let extra = vertices.len();
    vertices.push(Vertex {
        id: extra,
        frozen: true,
        label: format!("({})", k * rows + 1),
        pos: None,
    });
    sets.push((1..=k).collect());
    let at = |r: u32, c: u32| ((r - 1) * k + (c - 1)) as usize;
    let mut q = Quiver::new(vertices);
    for r in 1..=rows {
        for c in 1..=k {
            if c < k {
                q.add_arrows(at(r, c), at(r, c + 1), 1);
            }
            if r < rows {
                q.add_arrows(at(r, c), at(r + 1, c), 1);
            }
            if r > 1 && c > 1 {
                q.add_arrows(at(r, c), at(r - 1, c - 1), 1);
            }
        }
    }
    q.add_arrows(at(rows, k), extra, 1);
    let tableaux = sets.iter().map(|s| Tableau::column(s)).collect::<std::result::Result<Vec<_>, _>>()?;
    let dictionary = sets.iter().map(|s| PluckerPolynomial::var(s)).collect();
    let weights = vec![vec![1]; sets.len()];
    Ok(Seed::initial(q, tableaux, weights, dictionary, (k as usize, n as usize))?)
}
