//! Semistandard Young tableaux as a monoid under row-wise union.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("entries must be positive")]
    ZeroEntry,
    #[error("row {0} is not weakly increasing")]
    RowNotIncreasing(usize),
    #[error("column {0} is not strictly increasing")]
    ColumnNotIncreasing(usize),
    #[error("row lengths are not weakly decreasing")]
    NotAShape,
    #[error("not a factor")]
    NotAFactor,
    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch(Vec<usize>, Vec<usize>),
    #[error("dominance incomparable")]
    Incomparable,
    #[error("column of length {0} is not a flag dimension")]
    BadColumnLength(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, TableauError>;

/// A partition with trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub parts: Vec<usize>,
}

impl Shape {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauError::NotAShape);
        }
        Ok(Shape { parts })
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Dominance order via prefix sums; partitions of different size are
    /// compared the same way.
    pub fn dominated_by(&self, other: &Shape) -> bool {
        let len = self.parts.len().max(other.parts.len());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..len {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }

    /// Column lengths (the conjugate partition).
    pub fn conjugate(&self) -> Shape {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Shape { parts }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// A semistandard tableau stored by rows, canonical: rows sorted and no
/// trailing empty rows. The empty tableau has zero rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RawTableau {
    rows: Vec<Vec<u32>>,
}

impl TryFrom<RawTableau> for Tableau {
    type Error = TableauError;
    fn try_from(raw: RawTableau) -> Result<Self> {
        Tableau::new(raw.rows)
    }
}

fn validate(rows: &[Vec<u32>]) -> Result<()> {
    for (r, row) in rows.iter().enumerate() {
        if row.iter().any(|&x| x == 0) {
            return Err(TableauError::ZeroEntry);
        }
        if row.windows(2).any(|w| w[0] > w[1]) {
            return Err(TableauError::RowNotIncreasing(r));
        }
    }
    if rows.windows(2).any(|w| w[0].len() < w[1].len()) || rows.iter().any(|r| r.is_empty()) {
        return Err(TableauError::NotAShape);
    }
    for w in rows.windows(2) {
        for (c, &below) in w[1].iter().enumerate() {
            if w[0][c] >= below {
                return Err(TableauError::ColumnNotIncreasing(c));
            }
        }
    }
    Ok(())
}

fn multiset_remove(row: &[u32], remove: &[u32]) -> Option<Vec<u32>> {
    let mut out = Vec::with_capacity(row.len());
    let mut j = 0;
    for &x in row {
        if j < remove.len() && remove[j] == x {
            j += 1;
        } else {
            if j < remove.len() && remove[j] < x {
                return None;
            }
            out.push(x);
        }
    }
    (j == remove.len()).then_some(out)
}

fn merge_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Tableau {
    pub fn new(mut rows: Vec<Vec<u32>>) -> Result<Self> {
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        validate(&rows)?;
        Ok(Tableau { rows })
    }

    pub fn empty() -> Self {
        Tableau { rows: Vec::new() }
    }

    /// One-column tableau; entries must be strictly increasing.
    pub fn column(entries: &[u32]) -> Result<Self> {
        Tableau::new(entries.iter().map(|&x| vec![x]).collect())
    }

    /// The trivial column `{1, ..., p}`.
    pub fn trivial(p: usize) -> Self {
        Tableau {
            rows: (1..=p as u32).map(|x| vec![x]).collect(),
        }
    }

    /// Union of one-column tableaux.
    pub fn from_columns<C: AsRef<[u32]>>(columns: &[C]) -> Result<Self> {
        let mut t = Tableau::empty();
        for c in columns {
            t = t.union(&Tableau::column(c.as_ref())?);
        }
        Ok(t)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_columns(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn max_entry(&self) -> u32 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn shape(&self) -> Shape {
        Shape {
            parts: self.rows.iter().map(Vec::len).collect(),
        }
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.num_columns())
            .map(|c| {
                self.rows
                    .iter()
                    .take_while(|r| r.len() > c)
                    .map(|r| r[c])
                    .collect()
            })
            .collect()
    }

    pub fn is_semistandard(&self) -> bool {
        validate(&self.rows).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.num_columns() == 1 && self.rows.iter().enumerate().all(|(r, row)| row[0] == r as u32 + 1)
    }

    pub fn union(&self, other: &Tableau) -> Tableau {
        let len = self.rows.len().max(other.rows.len());
        let rows = (0..len)
            .map(|r| {
                merge_sorted(
                    self.rows.get(r).map_or(&[][..], |v| v),
                    other.rows.get(r).map_or(&[][..], |v| v),
                )
            })
            .collect();
        Tableau { rows }
    }

    /// `S` is a factor of `T` when every row of `S` is contained in the
    /// matching row of `T` and the row-wise difference is again semistandard.
    pub fn is_factor(s: &Tableau, t: &Tableau) -> bool {
        t.quotient(s).is_ok()
    }

    /// Row-wise multiset difference `self / s`.
    pub fn quotient(&self, s: &Tableau) -> Result<Tableau> {
        if s.rows.len() > self.rows.len() {
            return Err(TableauError::NotAFactor);
        }
        let mut rows = Vec::with_capacity(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            let remove = s.rows.get(r).map_or(&[][..], |v| v);
            rows.push(multiset_remove(row, remove).ok_or(TableauError::NotAFactor)?);
        }
        Tableau::new(rows).map_err(|_| TableauError::NotAFactor)
    }

    /// Removes trivial one-column factors `{1..p}` until none is left,
    /// always trying the longest one first.
    pub fn reduce(&self) -> Tableau {
        let mut t = self.clone();
        'outer: loop {
            for p in (1..=t.num_rows()).rev() {
                if let Ok(q) = t.quotient(&Tableau::trivial(p)) {
                    t = q;
                    continue 'outer;
                }
            }
            return t;
        }
    }

    pub fn equivalent(&self, other: &Tableau) -> bool {
        self.reduce() == other.reduce()
    }

    /// Keeps entries `<= i`.
    pub fn restrict(&self, i: u32) -> Tableau {
        let mut rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|r| r.iter().copied().take_while(|&x| x <= i).collect())
            .collect();
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        Tableau { rows }
    }

    pub fn dominance_compare(&self, other: &Tableau) -> Result<Dominance> {
        let (a, b) = (self.shape(), other.shape());
        if a != b {
            return Err(TableauError::ShapeMismatch(a.parts, b.parts));
        }
        if self == other {
            return Ok(Dominance::Equal);
        }
        let m = self.max_entry().max(other.max_entry());
        let (mut le, mut ge) = (true, true);
        for i in 1..=m {
            let (s, t) = (self.restrict(i).shape(), other.restrict(i).shape());
            le &= s.dominated_by(&t);
            ge &= t.dominated_by(&s);
        }
        Ok(match (le, ge) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::Less,
            (false, true) => Dominance::Greater,
            (false, false) => Dominance::Incomparable,
        })
    }

    /// The map φ: every column of length `d_i` gains `n+1, ..., n+d_k-d_i`.
    pub fn fill_up(&self, n: u32, dims: &[u32]) -> Result<Tableau> {
        let dk = *dims
            .last()
            .ok_or_else(|| TableauError::InvalidParameters("empty dimension list".into()))?;
        let mut cols = self.columns();
        for col in &mut cols {
            let len = col.len() as u32;
            if !dims.contains(&len) {
                return Err(TableauError::BadColumnLength(col.len()));
            }
            if col.iter().any(|&x| x > n) {
                return Err(TableauError::InvalidParameters(format!("entry exceeds n = {n}")));
            }
            col.extend(n + 1..=n + dk - len);
        }
        Tableau::from_columns(&cols)
    }

    /// Row contents shifted so that row `r` is indexed by `entry - r`.
    fn shifted_contents(&self, k: usize) -> Vec<BTreeMap<i64, i64>> {
        (0..k)
            .map(|r| {
                let mut m = BTreeMap::new();
                if let Some(row) = self.rows.get(r) {
                    for &x in row {
                        *m.entry(x as i64 - r as i64).or_insert(0) += 1;
                    }
                }
                m
            })
            .collect()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "()");
        }
        let width = self.max_entry().to_string().len();
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Two-column initial tableau of the minor with rows
/// `[i_j, d_j] ∪ [i_next, d_next]`, where `d_j = dims[j-1]` and `d_next` is
/// the next dimension (or `n` when `j = k`). Adjacent intervals collapse to the
/// single-interval column.
pub fn initial_tableau(n: u32, dims: &[u32], i_j: u32, j: usize, i_next: u32) -> Result<Tableau> {
    let k = dims.len();
    if j == 0 || j > k {
        return Err(TableauError::InvalidParameters(format!("j = {j} outside [1, {k}]")));
    }
    let d_j = dims[j - 1];
    let d_next = if j == k { n } else { dims[j] };
    if !(1 <= i_j && i_j <= d_j && d_j < i_next && i_next <= d_next && d_next <= n) {
        return Err(TableauError::InvalidParameters(format!(
            "need 1 <= {i_j} <= {d_j} < {i_next} <= {d_next} <= {n}"
        )));
    }
    if i_j == 1 && i_next == d_j + 1 {
        return interval_tableau(n, 1, d_next);
    }
    let col1: Vec<u32> = (1..i_next).chain(n - d_next + i_next..=n).collect();
    let lo = n + i_next + i_j - d_next - d_j - 1;
    let hi = n + i_next - d_next - 1;
    let col2: Vec<u32> = (1..i_j).chain(lo..=hi).collect();
    Tableau::from_columns(&[col1, col2])
}

/// One-column tableau `[1, i-1] ∪ [n-d+i, n]` of the interval minor `[i, d]`.
pub fn interval_tableau(n: u32, i: u32, d: u32) -> Result<Tableau> {
    if !(1 <= i && i <= d && d <= n) {
        return Err(TableauError::InvalidParameters(format!("need 1 <= {i} <= {d} <= {n}")));
    }
    let col: Vec<u32> = (1..i).chain(n - d + i..=n).collect();
    Tableau::column(&col)
}

/// Result of the tableau exchange rule together with the trivial columns
/// that were needed to equalize shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauExchange {
    pub tableau: Tableau,
    pub padding_in: Vec<usize>,
    pub padding_out: Vec<usize>,
}

fn column_length_counts(t: &Tableau) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for len in t.shape().conjugate().parts {
        *m.entry(len).or_insert(0) += 1;
    }
    m
}

/// `T'_r = reduce(max(∪ incoming, ∪ outgoing) / T_r)`.
pub fn tableau_mutation(t_r: &Tableau, incoming: &[&Tableau], outgoing: &[&Tableau]) -> Result<TableauExchange> {
    let mut u_in = incoming.iter().fold(Tableau::empty(), |acc, t| acc.union(t));
    let mut u_out = outgoing.iter().fold(Tableau::empty(), |acc, t| acc.union(t));
    let (c_in, c_out) = (column_length_counts(&u_in), column_length_counts(&u_out));
    let (mut padding_in, mut padding_out) = (Vec::new(), Vec::new());
    let lengths: std::collections::BTreeSet<usize> = c_in.keys().chain(c_out.keys()).copied().collect();
    for p in lengths {
        let (a, b) = (c_in.get(&p).copied().unwrap_or(0), c_out.get(&p).copied().unwrap_or(0));
        for _ in a..b {
            u_in = u_in.union(&Tableau::trivial(p));
            padding_in.push(p);
        }
        for _ in b..a {
            u_out = u_out.union(&Tableau::trivial(p));
            padding_out.push(p);
        }
    }
    let top = match u_in.dominance_compare(&u_out)? {
        Dominance::Greater => u_in,
        Dominance::Less => u_out,
        Dominance::Equal | Dominance::Incomparable => return Err(TableauError::Incomparable),
    };
    let tableau = top.quotient(t_r)?.reduce();
    Ok(TableauExchange {
        tableau,
        padding_in,
        padding_out,
    })
}

/// A fundamental column `[i, i+k] \ {j}` with `i < j < i+k`.
pub fn is_fundamental_column(col: &[u32], k: usize) -> bool {
    if col.len() != k || k < 2 {
        return false;
    }
    let i = col[0];
    let gaps: Vec<u32> = col.windows(2).map(|w| w[1] - w[0]).collect();
    i >= 1 && gaps.iter().filter(|&&g| g == 2).count() == 1 && gaps.iter().all(|&g| g == 1 || g == 2)
}

/// The representative of a rectangular tableau whose columns are all
/// fundamental, with the frozen-interval columns relating the two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalFactorization {
    pub columns: Vec<Vec<u32>>,
    pub tableau: Tableau,
    /// `interval_shift[i-1]` is the signed number of interval columns
    /// `[i, i+k-1]` with `tableau ∪ (negative part) = T ∪ (positive part)`.
    pub interval_shift: Vec<i64>,
}

/// Fundamental-column representative of a rectangular `k`-row tableau with
/// entries in `[n]`, up to frozen interval columns `[i, i+k-1]`.
pub fn fundamental_factorization_gr(t: &Tableau, k: usize, n: u32) -> Result<FundamentalFactorization> {
    if !t.is_empty() && (t.num_rows() != k || t.rows.iter().any(|r| r.len() != t.num_columns())) {
        return Err(TableauError::InvalidParameters(format!("tableau is not rectangular with {k} rows")));
    }
    if t.max_entry() > n {
        return Err(TableauError::InvalidParameters(format!("entry exceeds n = {n}")));
    }
    let u = t.shifted_contents(k);
    let mut columns = Vec::new();
    for r in 0..k.saturating_sub(1) {
        // acc counts fundamental columns starting at i whose gap lies
        // between rows r and r+1.
        let mut acc = 0i64;
        for i in 1..=(n as i64 - k as i64) {
            acc += u[r].get(&(i)).copied().unwrap_or(0) - u[r + 1].get(&(i)).copied().unwrap_or(0);
            debug_assert!(acc >= 0);
            let start = i as u32;
            for _ in 0..acc {
                let missing = start + r as u32 + 1;
                columns.push((start..=start + k as u32).filter(|&x| x != missing).collect::<Vec<u32>>());
            }
        }
    }
    columns.sort();
    let tableau = Tableau::from_columns(&columns)?;
    let v = tableau.shifted_contents(k);
    let intervals = (n as usize + 1).saturating_sub(k);
    let mut interval_shift = vec![0i64; intervals];
    for (idx, slot) in interval_shift.iter_mut().enumerate() {
        let key = idx as i64 + 1;
        *slot = v[0].get(&key).copied().unwrap_or(0) - u[0].get(&key).copied().unwrap_or(0);
    }
    Ok(FundamentalFactorization {
        columns,
        tableau,
        interval_shift,
    })
}

/// Equivalence of rectangular `k`-row tableaux modulo interval columns.
pub fn gr_equivalent(t: &Tableau, u: &Tableau, k: usize) -> bool {
    let (a, b) = (t.shifted_contents(k), u.shifted_contents(k));
    let diff = |r: usize| -> BTreeMap<i64, i64> {
        let mut d: BTreeMap<i64, i64> = a[r].clone();
        for (&key, &val) in &b[r] {
            *d.entry(key).or_insert(0) -= val;
        }
        d.retain(|_, v| *v != 0);
        d
    };
    let first = diff(0);
    (1..k).all(|r| diff(r) == first)
}

/// Partial order on tableaux of equal shape used by ordering helpers.
pub fn dominance_ordering(a: &Tableau, b: &Tableau) -> Option<Ordering> {
    match a.dominance_compare(b).ok()? {
        Dominance::Less => Some(Ordering::Less),
        Dominance::Equal => Some(Ordering::Equal),
        Dominance::Greater => Some(Ordering::Greater),
        Dominance::Incomparable => None,
    }
}
